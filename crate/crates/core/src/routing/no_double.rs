use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::fares::{zone_count_no_double, Price};
use crate::network::{Network, Node, NodeIx, Ptn, Walk, ZoneIx, ZoneStructure};
use crate::network::Edge;
use crate::routing::dijkstra::shortest_path;
use crate::routing::zone::{arcs_by, min_border_walk, to_walk};
use crate::routing::RouteResult;

/// A walk and the number of distinct zones it visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MzpSolution {
    pub walk: Walk,
    pub zone_count: usize,
}

fn partition(net: &Network) -> Result<&ZoneStructure> {
    let zones = net.zones()?;
    zones.require_partition("zone tariff without double counting")?;
    Ok(zones)
}

/// Minimum distinct-zone walk when every zone is connected: a minimum-border walk.
pub fn cheapest_path_no_double_connected(net: &Network, x: NodeIx, y: NodeIx) -> Result<MzpSolution> {
    let zones = partition(net)?;
    let comps = zones.zone_components(&net.ptn);
    if let Some(z) = comps.iter().position(|&c| c > 1) {
        return Err(Error::Unsupported(format!(
            "zone `{}` is disconnected; use the one-disconnected or the exact solver",
            zones.name(z)
        )));
    }
    let walk = min_border_walk(&net.ptn, zones, x, y);
    let zone_count = zone_count_no_double(zones, &walk);
    Ok(MzpSolution { walk, zone_count })
}

/// Minimum distinct-zone walk when exactly one zone is disconnected. Entering that
/// zone from outside costs `1/k` for its `k` components, all other borders cost 1;
/// weights are exact rationals.
pub fn cheapest_path_one_disconnected(net: &Network, x: NodeIx, y: NodeIx) -> Result<MzpSolution> {
    let zones = partition(net)?;
    let comps = zones.zone_components(&net.ptn);
    let split: Vec<ZoneIx> = (0..comps.len()).filter(|&z| comps[z] > 1).collect();
    let (z, k) = match split.as_slice() {
        [z] => (*z, comps[*z] as i64),
        [] => {
            return Err(Error::Unsupported(
                "no zone is disconnected; use the connected-zone solver".into(),
            ))
        }
        _ => {
            return Err(Error::Unsupported(format!(
                "{} zones are disconnected; use the exact solver",
                split.len()
            )))
        }
    };
    let ptn = &net.ptn;
    let inside = |v: NodeIx| zones.zone_of(v) == z;
    let weight = |v: NodeIx, w: NodeIx| {
        if inside(w) && !inside(v) {
            Ratio::new(1, k)
        } else {
            Ratio::from_integer(i64::from(zones.border(v, w)))
        }
    };
    let label = shortest_path(ptn.node_count(), x, y, arcs_by(ptn, weight))
        .expect("network is connected");
    let m = label.cost;
    let zbar = if inside(x) {
        (m + Ratio::new(1, k)).ceil()
    } else {
        (m + 1).ceil()
    };
    Ok(MzpSolution {
        walk: to_walk(label),
        zone_count: zbar.to_integer() as usize,
    })
}

/// Exact minimum distinct-zone walk by best-first search over (node, visited zones).
/// Labels are ordered by zone count, then edges, then node sequence; a label is
/// dropped when a settled label at the same node has a subset of its zones and is
/// no later in (edges, sequence). Fails with a resource error after `max_states`
/// labels, carrying the minimum-border walk as incumbent.
pub fn mzp_exact(net: &Network, x: NodeIx, y: NodeIx, max_states: usize) -> Result<MzpSolution> {
    let zones = partition(net)?;
    if zones.zone_count() > 128 {
        return Err(Error::Unsupported(
            "exact search supports at most 128 zones".into(),
        ));
    }
    let ptn = &net.ptn;
    let bit = |v: NodeIx| 1u128 << zones.zone_of(v);
    let mut settled: Vec<Vec<(u128, usize, Vec<NodeIx>)>> = vec![Vec::new(); ptn.node_count()];
    let dominated = |settled: &[(u128, usize, Vec<NodeIx>)], set: u128, edges: usize, seq: &[NodeIx]| {
        settled
            .iter()
            .any(|(s, e, q)| s & !set == 0 && (*e, q.as_slice()) <= (edges, seq))
    };
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((1u32, 0usize, vec![x], bit(x))));
    let mut pushed = 1usize;
    while let Some(Reverse((size, edges, seq, set))) = heap.pop() {
        let v = *seq.last().expect("nonempty");
        if dominated(&settled[v], set, edges, &seq) {
            continue;
        }
        if v == y {
            return Ok(MzpSolution {
                walk: Walk::new(seq)?,
                zone_count: size as usize,
            });
        }
        settled[v].push((set, edges, seq.clone()));
        for &(w, _) in ptn.neighbors(v) {
            let next_set = set | bit(w);
            let mut next = seq.clone();
            next.push(w);
            if dominated(&settled[w], next_set, edges + 1, &next) {
                continue;
            }
            pushed += 1;
            if pushed > max_states {
                let walk = min_border_walk(ptn, zones, x, y);
                let z = zone_count_no_double(zones, &walk);
                return Err(Error::ResourceLimit {
                    message: format!("exact zone search exceeded {max_states} labels"),
                    incumbent: Some(Box::new(RouteResult::new(
                        walk,
                        Price::Finite(z as f64),
                        "zone-count",
                    ).with_zone_count(z))),
                });
            }
            heap.push(Reverse((next_set.count_ones(), edges + 1, next, next_set)));
        }
    }
    unreachable!("network is connected")
}

/// Is there an `x`-`y` walk visiting at most `k` distinct zones?
pub fn mzp_decide(net: &Network, x: NodeIx, y: NodeIx, k: usize, max_states: usize) -> Result<bool> {
    Ok(mzp_exact(net, x, y, max_states)?.zone_count <= k)
}

/// An edge-colored graph with two terminals and a color budget.
#[derive(Clone, Debug, PartialEq)]
pub struct McsipInstance {
    pub nodes: Vec<String>,
    /// `(a, b, color)` with node indices.
    pub edges: Vec<(usize, usize, String)>,
    pub source: usize,
    pub target: usize,
    pub budget: usize,
}

impl McsipInstance {
    pub fn validate(&self) -> Result<()> {
        let n = self.nodes.len();
        if self.source >= n || self.target >= n {
            return Err(Error::InvalidReference("terminal out of range".into()));
        }
        if self.source == self.target {
            return Err(Error::InvalidNetwork("terminals must differ".into()));
        }
        if let Some((a, b, _)) = self.edges.iter().find(|(a, b, _)| *a >= n || *b >= n) {
            return Err(Error::InvalidReference(format!("edge {{{a}, {b}}} out of range")));
        }
        Ok(())
    }

    pub fn colors(&self) -> Vec<&str> {
        let mut c: Vec<&str> = self.edges.iter().map(|(_, _, c)| c.as_str()).collect();
        c.sort_unstable();
        c.dedup();
        c
    }
}

/// The zone instance built from a colored graph, with the zone budget `k + 1`.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub network: Network,
    pub source: NodeIx,
    pub target: NodeIx,
    pub zone_budget: usize,
}

/// Subdivides every edge by a node whose zone is the edge's color; original nodes go
/// into one extra zone. A walk then visits at most `k + 1` zones iff it uses at most
/// `k` colors.
pub fn mcsip_to_mzp(inst: &McsipInstance) -> Result<Reduction> {
    inst.validate()?;
    let colors = inst.colors();
    let mut null = String::from("Null");
    while colors.contains(&null.as_str()) {
        null.push('\'');
    }
    let mut names: Vec<String> = vec![null];
    names.extend(colors.iter().map(|c| c.to_string()));
    let zone_ix: BTreeMap<&str, ZoneIx> = colors.iter().enumerate().map(|(i, &c)| (c, i + 1)).collect();

    let mut nodes: Vec<Node> = inst.nodes.iter().map(Node::station).collect();
    let mut membership: Vec<Vec<ZoneIx>> = vec![vec![0]; nodes.len()];
    let mut edges = Vec::with_capacity(2 * inst.edges.len());
    for (i, (a, b, c)) in inst.edges.iter().enumerate() {
        nodes.push(Node::station(format!("e{}:{}-{}", i, inst.nodes[*a], inst.nodes[*b])));
        let v = nodes.len() - 1;
        membership.push(vec![zone_ix[c.as_str()]]);
        edges.push(Edge { a: *a, b: v, length: 1.0 });
        edges.push(Edge { a: v, b: *b, length: 1.0 });
    }
    let ptn = Ptn::new(nodes, edges)?;
    let zones = ZoneStructure::new(names, membership, None)?;
    Ok(Reduction {
        network: Network::new(ptn, Some(zones))?,
        source: inst.source,
        target: inst.target,
        zone_budget: inst.budget + 1,
    })
}
