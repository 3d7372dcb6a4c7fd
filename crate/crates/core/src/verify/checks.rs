use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::fares::{zone_count_basic, FareSystem, Price};
use crate::network::{Network, NodeIx, Walk};
use crate::verify::enumerate::for_each_walk;
use crate::verify::oracle::TicketOracle;
use crate::verify::{Counterexample, EnumBudget, Property, PropertyReport, Witness};

/// Memoized prices of walks, keyed by node sequence.
struct Prices<'a> {
    fs: &'a FareSystem,
    net: &'a Network,
    cache: HashMap<Vec<NodeIx>, Price>,
}

impl<'a> Prices<'a> {
    fn new(fs: &'a FareSystem, net: &'a Network) -> Self {
        Self {
            fs,
            net,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, nodes: &[NodeIx]) -> Result<Price> {
        if let Some(&p) = self.cache.get(nodes) {
            return Ok(p);
        }
        let p = self.fs.price(self.net, &walk(nodes))?;
        self.cache.insert(nodes.to_vec(), p);
        Ok(p)
    }
}

fn walk(nodes: &[NodeIx]) -> Walk {
    Walk::new(nodes.to_vec()).expect("enumerated walks are nonempty")
}

/// Runs `visit` on every walk within budget whose ends are valid stopping points,
/// stopping at the first counterexample.
fn scan<F>(fs: &FareSystem, net: &Network, budget: EnumBudget, property: Property, mut visit: F) -> Result<PropertyReport>
where
    F: FnMut(&mut Prices, &[NodeIx]) -> Result<Option<Counterexample>>,
{
    budget.validate()?;
    fs.validate(net)?;
    let mut prices = Prices::new(fs, net);
    let mut checked = 0usize;
    let mut outcome: Result<Option<Counterexample>> = Ok(None);
    let mut exhausted = false;
    let _ = for_each_walk(&net.ptn, budget.max_edges, |v| net.may_stop_at(v), |w| {
        if !net.may_stop_at(*w.last().expect("nonempty")) {
            return ControlFlow::Continue(());
        }
        checked += 1;
        if checked > budget.max_walks {
            exhausted = true;
            return ControlFlow::Break(());
        }
        match visit(&mut prices, w) {
            Ok(None) => ControlFlow::Continue(()),
            other => {
                outcome = other;
                ControlFlow::Break(())
            }
        }
    });
    if exhausted {
        return Err(Error::ResourceLimit {
            message: format!("property check exceeded {} walks", budget.max_walks),
            incumbent: None,
        });
    }
    let counterexample = outcome?;
    Ok(PropertyReport {
        property,
        holds: counterexample.is_none(),
        counterexample,
        budget,
        walks_checked: checked,
        seed: None,
    })
}

/// Splitting a walk at an interior stopping point never lowers the total price.
pub fn check_no_stopover(fs: &FareSystem, net: &Network, budget: EnumBudget) -> Result<PropertyReport> {
    check_no_stopover_filtered(fs, net, budget, |_| true)
}

/// [`check_no_stopover`] restricted to the walks accepted by `filter`.
pub fn check_no_stopover_filtered(
    fs: &FareSystem,
    net: &Network,
    budget: EnumBudget,
    filter: impl Fn(&[NodeIx]) -> bool,
) -> Result<PropertyReport> {
    scan(fs, net, budget, Property::NoStopover, |prices, w| {
        if w.len() < 3 || !filter(w) {
            return Ok(None);
        }
        let whole = prices.get(w)?;
        for at in 1..w.len() - 1 {
            if !net.may_stop_at(w[at]) {
                continue;
            }
            let parts = prices.get(&w[..=at])? + prices.get(&w[at..])?;
            if whole > parts {
                return Ok(Some(Counterexample {
                    walk: walk(w),
                    witness: Witness::Split { at },
                    price: whole,
                    alternative: parts,
                }));
            }
        }
        Ok(None)
    })
}

/// Accepts walks whose every maximal run inside the metropolitan zone crosses at most
/// `d - 1` zone borders.
pub fn metropolitan_within(net: &Network, d: usize) -> impl Fn(&[NodeIx]) -> bool + '_ {
    move |w| {
        let Ok(zones) = net.zones() else { return true };
        w.split(|&v| !zones.in_metropolitan(v))
            .filter(|run| !run.is_empty())
            .all(|run| zone_count_basic(zones, &walk(run)) <= d)
    }
}

/// Dropping the last (or first) edge of a walk never raises the price. Under
/// forbidden virtual endpoints the shorter walk is the longest proper prefix (suffix)
/// that ends (starts) at a station.
pub fn check_no_elongation(fs: &FareSystem, net: &Network, budget: EnumBudget) -> Result<PropertyReport> {
    scan(fs, net, budget, Property::NoElongation, |prices, w| {
        if w.len() < 2 {
            return Ok(None);
        }
        let whole = prices.get(w)?;
        let last = w.len() - 1;
        let end = (0..last).rev().find(|&j| net.may_stop_at(w[j])).expect("start is a stop");
        let start = (1..=last).find(|&j| net.may_stop_at(w[j])).expect("end is a stop");
        let candidates = [(&w[..=end], true), (&w[start..], false)];
        for (part, prefix) in candidates {
            let p = prices.get(part)?;
            if p > whole {
                let part = walk(part);
                return Ok(Some(Counterexample {
                    walk: walk(w),
                    witness: if prefix {
                        Witness::Prefix { part }
                    } else {
                        Witness::Suffix { part }
                    },
                    price: p,
                    alternative: whole,
                }));
            }
        }
        Ok(None)
    })
}

/// For every walk within budget, the standard ticket is a cheapest ticket for it.
pub fn check_standard_ticket_optimality(
    fs: &FareSystem,
    net: &Network,
    budget: EnumBudget,
) -> Result<PropertyReport> {
    budget.validate()?;
    fs.validate(net)?;
    let oracle = TicketOracle::new(fs, net, budget)?;
    scan(fs, net, budget, Property::StandardTicketOptimality, |prices, w| {
        let standard = prices.get(w)?;
        let traveled = walk(w);
        match oracle.cheapest_ticket_for(&traveled) {
            Some((ticket, price)) if price < standard => Ok(Some(Counterexample {
                walk: traveled,
                witness: Witness::Ticket(ticket),
                price: standard,
                alternative: price,
            })),
            _ => Ok(None),
        }
    })
}
