use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::fares::{FareSystem, Price};
use crate::network::{Network, NodeIx, Ticket, Walk};
use crate::routing::{RouteResult, TicketResult};
use crate::verify::enumerate::for_each_walk;
use crate::verify::EnumBudget;

#[derive(Clone, Debug)]
struct Cover {
    price: Price,
    segment: Vec<NodeIx>,
}

/// Cheapest covering segment for every walk part within budget: a part may be
/// bought as any segment that extends it by at most `max_elongation` edges per end.
/// Built once per fare system and network, then queried per trip.
pub struct TicketOracle<'a> {
    net: &'a Network,
    budget: EnumBudget,
    covers: HashMap<Vec<NodeIx>, Cover>,
    // parts by start node: (part, price), shortest first
    by_start: Vec<Vec<(Vec<NodeIx>, Price)>>,
}

impl<'a> TicketOracle<'a> {
    pub fn new(fs: &FareSystem, net: &'a Network, budget: EnumBudget) -> Result<Self> {
        let e = budget.max_elongation_edges;
        let mut covers: HashMap<Vec<NodeIx>, Cover> = HashMap::new();
        let mut seen = 0usize;
        let mut failure = None;
        let flow = for_each_walk(
            &net.ptn,
            budget.max_edges + 2 * e,
            |v| net.may_stop_at(v),
            |h| {
                let last = h.len() - 1;
                if !net.may_stop_at(h[last]) {
                    return ControlFlow::Continue(());
                }
                seen += 1;
                if seen > budget.max_walks {
                    return ControlFlow::Break(());
                }
                let price = match fs.price(net, &Walk::new(h.to_vec()).expect("nonempty")) {
                    Ok(p) => p,
                    Err(err) => {
                        failure = Some(err);
                        return ControlFlow::Break(());
                    }
                };
                for i in 0..=e.min(last) {
                    if !net.may_stop_at(h[i]) {
                        continue;
                    }
                    for j in (i.max(last.saturating_sub(e))..=last).rev() {
                        if j - i > budget.max_edges || !net.may_stop_at(h[j]) {
                            continue;
                        }
                        let part = &h[i..=j];
                        match covers.get_mut(part) {
                            Some(c) if c.price <= price => {}
                            Some(c) => {
                                c.price = price;
                                c.segment = h.to_vec();
                            }
                            None => {
                                covers.insert(
                                    part.to_vec(),
                                    Cover {
                                        price,
                                        segment: h.to_vec(),
                                    },
                                );
                            }
                        }
                    }
                }
                ControlFlow::Continue(())
            },
        );
        if let Some(err) = failure {
            return Err(err);
        }
        let exhausted = flow.is_break();
        let mut by_start = vec![Vec::new(); net.ptn.node_count()];
        for (part, cover) in &covers {
            by_start[part[0]].push((part.clone(), cover.price));
        }
        for list in &mut by_start {
            list.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
        }
        let oracle = Self {
            net,
            budget,
            covers,
            by_start,
        };
        if exhausted {
            return Err(Error::ResourceLimit {
                message: format!("ticket enumeration exceeded {} walks", budget.max_walks),
                incumbent: None,
            });
        }
        Ok(oracle)
    }

    pub fn budget(&self) -> EnumBudget {
        self.budget
    }

    /// Cheapest single segment covering `part`, if `part` is within budget.
    pub fn cover_price(&self, part: &[NodeIx]) -> Option<Price> {
        self.covers.get(part).map(|c| c.price)
    }

    /// Cheapest ticket for the fixed walk `traveled`, over all splits into at most
    /// `max_segments` parts.
    pub fn cheapest_ticket_for(&self, traveled: &Walk) -> Option<(Ticket, Price)> {
        let w = traveled.nodes();
        let n = w.len();
        if n == 1 {
            let c = self.covers.get(w)?;
            return Some((
                Ticket {
                    segments: vec![Walk::new(c.segment.clone()).expect("nonempty")],
                    decomposition: vec![(0, 0)],
                },
                c.price,
            ));
        }
        let s_max = self.budget.max_segments;
        // best[s][p]: cheapest cover of w[0..=p] with exactly s parts
        let mut best: Vec<Vec<Option<(Price, usize)>>> = vec![vec![None; n]; s_max + 1];
        best[0][0] = Some((Price::ZERO, 0));
        for s in 0..s_max {
            for p in 0..n - 1 {
                let Some((cost, _)) = best[s][p] else { continue };
                for q in p + 1..n {
                    let Some(c) = self.covers.get(&w[p..=q]) else { continue };
                    let total = cost + c.price;
                    let slot = &mut best[s + 1][q];
                    if slot.is_none_or(|(old, _)| total < old) {
                        *slot = Some((total, p));
                    }
                }
            }
        }
        let (s, (price, _)) = (1..=s_max)
            .filter_map(|s| best[s][n - 1].map(|b| (s, b)))
            .min_by(|a, b| a.1 .0.cmp(&b.1 .0).then(a.0.cmp(&b.0)))?;
        let mut parts = Vec::with_capacity(s);
        let mut q = n - 1;
        for layer in (1..=s).rev() {
            let (_, p) = best[layer][q].expect("reachable");
            parts.push((p, q));
            q = p;
        }
        parts.reverse();
        let segments = parts
            .iter()
            .map(|&(p, q)| Walk::new(self.covers[&w[p..=q]].segment.clone()).expect("nonempty"))
            .collect();
        Some((
            Ticket {
                segments,
                decomposition: parts,
            },
            price,
        ))
    }

    /// Cheapest ticket over all `x`-`y` walks within budget.
    pub fn cheapest_ticket(&self, x: NodeIx, y: NodeIx) -> Option<TicketResult> {
        let m = self.budget.max_edges;
        let s_max = self.budget.max_segments;
        let n = self.net.ptn.node_count();
        let mut best_single: Option<TicketResult> = None;
        if x == y {
            if let Some(c) = self.covers.get(&vec![x]) {
                best_single = Some(TicketResult {
                    traveled: Walk::single(x),
                    ticket: Ticket {
                        segments: vec![Walk::new(c.segment.clone()).expect("nonempty")],
                        decomposition: vec![(0, 0)],
                    },
                    price: c.price,
                });
            }
        }
        type Back = (usize, usize, usize, usize);
        // state[s][e][v]: cheapest way to reach v with e edges and s parts
        let mut state: Vec<Vec<Vec<Option<(Price, Option<Back>)>>>> =
            vec![vec![vec![None; n]; m + 1]; s_max + 1];
        state[0][0][x] = Some((Price::ZERO, None));
        for e in 0..m {
            for s in 0..s_max {
                for v in 0..n {
                    let Some((cost, _)) = state[s][e][v] else { continue };
                    for (ix, (part, price)) in self.by_start[v].iter().enumerate() {
                        let k = part.len() - 1;
                        if k == 0 || e + k > m {
                            continue;
                        }
                        let end = *part.last().expect("nonempty");
                        let total = cost + *price;
                        let slot = &mut state[s + 1][e + k][end];
                        if slot.is_none_or(|(old, _)| total < old) {
                            *slot = Some((total, Some((s, e, v, ix))));
                        }
                    }
                }
            }
        }
        let mut best: Option<(Price, usize, usize, usize)> = None;
        for e in 1..=m {
            for s in 1..=s_max {
                if let Some((p, _)) = state[s][e][y] {
                    if best.is_none_or(|(bp, be, bs, _)| (p, e, s) < (bp, be, bs)) {
                        best = Some((p, e, s, y));
                    }
                }
            }
        }
        let compound = best.map(|(price, e, s, v)| {
            let mut pieces = Vec::new();
            let (mut s, mut e, mut v) = (s, e, v);
            while let Some((_, Some((ps, pe, pv, ix)))) = state[s][e][v] {
                pieces.push(self.by_start[pv][ix].0.clone());
                (s, e, v) = (ps, pe, pv);
            }
            pieces.reverse();
            let mut traveled = vec![x];
            let mut decomposition = Vec::new();
            let mut segments = Vec::new();
            for part in pieces {
                let start = traveled.len() - 1;
                traveled.extend_from_slice(&part[1..]);
                decomposition.push((start, traveled.len() - 1));
                segments.push(Walk::new(self.covers[&part].segment.clone()).expect("nonempty"));
            }
            TicketResult {
                traveled: Walk::new(traveled).expect("nonempty"),
                ticket: Ticket {
                    segments,
                    decomposition,
                },
                price,
            }
        });
        match (best_single, compound) {
            (Some(a), Some(b)) => Some(if b.price < a.price { b } else { a }),
            (a, b) => a.or(b),
        }
    }
}

/// Cheapest ticket from `x` to `y` over all walks, splits and elongations within the
/// budget. Exceeding the walk cap reports the cheapest standard ticket seen so far.
pub fn brute_force_cheapest_ticket(
    fs: &FareSystem,
    net: &Network,
    x: NodeIx,
    y: NodeIx,
    budget: EnumBudget,
) -> Result<TicketResult> {
    match TicketOracle::new(fs, net, budget) {
        Ok(oracle) => oracle.cheapest_ticket(x, y).ok_or_else(|| {
            Error::InvalidWalk(format!(
                "no ticket from `{}` to `{}` within {} edges",
                net.ptn.id(x),
                net.ptn.id(y),
                budget.max_edges
            ))
        }),
        Err(Error::ResourceLimit { message, .. }) => {
            let incumbent = standard_incumbent(fs, net, x, y, budget)?;
            Err(Error::ResourceLimit {
                message,
                incumbent: incumbent.map(Box::new),
            })
        }
        Err(e) => Err(e),
    }
}

fn standard_incumbent(
    fs: &FareSystem,
    net: &Network,
    x: NodeIx,
    y: NodeIx,
    budget: EnumBudget,
) -> Result<Option<RouteResult>> {
    let mut best: Option<RouteResult> = None;
    let mut seen = 0usize;
    let mut failure = None;
    let _ = for_each_walk(&net.ptn, budget.max_edges, |v| v == x, |w| {
        seen += 1;
        if seen > budget.max_walks {
            return ControlFlow::Break(());
        }
        if *w.last().expect("nonempty") != y {
            return ControlFlow::Continue(());
        }
        let walk = Walk::new(w.to_vec()).expect("nonempty");
        match fs.priced(net, &walk) {
            Ok(p) => {
                if best.as_ref().is_none_or(|b| p.price < b.price) {
                    best = Some(RouteResult::new(walk, p.price, p.tariff));
                }
                ControlFlow::Continue(())
            }
            Err(e) => {
                failure = Some(e);
                ControlFlow::Break(())
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(best),
    }
}
