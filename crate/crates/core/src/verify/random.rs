//! Seeded generators for networks, zone structures and price functions.

use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fares::{PriceFunction, Tail};
use crate::network::{Edge, EdgeIx, Network, Node, Ptn, ZoneIx, ZoneStructure};

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct NetworkParams {
    pub stations: RangeInclusive<usize>,
    /// Edges beyond a spanning tree.
    pub extra_edges: RangeInclusive<usize>,
    /// Nonempty zones.
    pub zones: RangeInclusive<usize>,
    /// Probability that a station joins a second zone.
    pub overlap: f64,
    pub metropolitan: bool,
    /// Empty zones crossed by edges, each adding one virtual node.
    pub empty_zones: RangeInclusive<usize>,
    pub coordinates: bool,
}

impl Default for NetworkParams {
    fn default() -> Self {
        Self {
            stations: 5..=8,
            extra_edges: 0..=2,
            zones: 2..=4,
            overlap: 0.0,
            metropolitan: false,
            empty_zones: 0..=0,
            coordinates: false,
        }
    }
}

/// A connected network: a random tree plus extra edges, integer lengths in 1..=4 and
/// integer coordinates. Retries until the zone structure is valid.
pub fn random_network(rng: &mut TestRng, params: &NetworkParams) -> Network {
    loop {
        if let Some(net) = try_network(rng, params) {
            return net;
        }
    }
}

fn try_network(rng: &mut TestRng, params: &NetworkParams) -> Option<Network> {
    let n = rng.gen_range(params.stations.clone());
    let nodes: Vec<Node> = (0..n)
        .map(|v| {
            if params.coordinates {
                Node::at(format!("v{v}"), rng.gen_range(0..=8) as f64, rng.gen_range(0..=8) as f64)
            } else {
                Node::station(format!("v{v}"))
            }
        })
        .collect();
    let mut edges = Vec::new();
    let mut present = vec![vec![false; n]; n];
    for b in 1..n {
        let a = rng.gen_range(0..b);
        present[a][b] = true;
        edges.push(Edge { a, b, length: rng.gen_range(1..=4) as f64 });
    }
    let extra = rng.gen_range(params.extra_edges.clone());
    for _ in 0..extra {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let (a, b) = (a.min(b), a.max(b));
        if a != b && !present[a][b] {
            present[a][b] = true;
            edges.push(Edge { a, b, length: rng.gen_range(1..=4) as f64 });
        }
    }
    let ptn = Ptn::new(nodes, edges).ok()?;

    let z = rng.gen_range(params.zones.clone()).min(n);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut membership = vec![Vec::new(); n];
    for (j, &v) in order.iter().enumerate() {
        membership[v].push(if j < z { j } else { rng.gen_range(0..z) });
    }
    if params.overlap > 0.0 && z > 1 {
        for zones in membership.iter_mut() {
            if rng.gen_bool(params.overlap) {
                zones.push(rng.gen_range(0..z));
            }
        }
    }
    let empty = rng.gen_range(params.empty_zones.clone()).min(ptn.edge_count());
    let mut names: Vec<String> = (0..z).map(|j| format!("Z{j}")).collect();
    names.extend((0..empty).map(|j| format!("E{j}")));
    let metro = if params.metropolitan {
        let mut all: Vec<ZoneIx> = (0..z).collect();
        all.shuffle(rng);
        let take = rng.gen_range(1..=z);
        Some(all[..take].to_vec())
    } else {
        None
    };
    let zones = ZoneStructure::new(names, membership, metro).ok()?;

    if empty == 0 {
        return Network::new(ptn, Some(zones)).ok();
    }
    let mut picked: Vec<EdgeIx> = (0..ptn.edge_count()).collect();
    picked.shuffle(rng);
    let crossings: Vec<(EdgeIx, Vec<ZoneIx>)> = picked[..empty]
        .iter()
        .enumerate()
        .map(|(j, &e)| (e, vec![z + j]))
        .collect();
    Network::with_crossings(ptn, zones, &crossings).ok()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PriceFamily {
    /// `f + k * p` with small integer `f`, `p`.
    Affine,
    /// Increasing with nonincreasing increments, hence subadditive.
    Concave,
    /// Increasing with arbitrary increments.
    Increasing,
    /// Any nonnegative table.
    Arbitrary,
}

impl PriceFamily {
    pub const ALL: [PriceFamily; 4] = [
        PriceFamily::Affine,
        PriceFamily::Concave,
        PriceFamily::Increasing,
        PriceFamily::Arbitrary,
    ];
}

/// A price table of length 1..=6 with values that are multiples of 1/2, so sums and
/// comparisons are exact in floating point.
pub fn random_prices(rng: &mut TestRng, family: PriceFamily) -> PriceFunction {
    let half = |rng: &mut TestRng, hi: u32| f64::from(rng.gen_range(0..=hi)) / 2.0;
    let m = rng.gen_range(1..=6);
    match family {
        PriceFamily::Affine => {
            let base = half(rng, 6);
            let slope = half(rng, 4);
            PriceFunction::affine(base, slope).expect("valid affine prices")
        }
        PriceFamily::Concave => {
            let mut steps: Vec<f64> = (0..m).map(|_| half(rng, 8)).collect();
            steps[1..].sort_by(|a, b| b.total_cmp(a));
            let first = steps[0].max(steps.get(1).copied().unwrap_or(0.0));
            steps[0] = first;
            let table = prefix_sums(&steps);
            let tail = if rng.gen_bool(0.5) {
                Tail::Constant
            } else {
                Tail::Affine { slope: *steps.last().expect("nonempty") }
            };
            PriceFunction::new(table, tail).expect("valid concave prices")
        }
        PriceFamily::Increasing => {
            let steps: Vec<f64> = (0..m).map(|_| half(rng, 8)).collect();
            let tail = if rng.gen_bool(0.5) {
                Tail::Constant
            } else {
                Tail::Affine { slope: half(rng, 6) }
            };
            PriceFunction::new(prefix_sums(&steps), tail).expect("valid increasing prices")
        }
        PriceFamily::Arbitrary => {
            let table = (0..m).map(|_| half(rng, 16)).collect();
            PriceFunction::new(table, Tail::Constant).expect("valid prices")
        }
    }
}

fn prefix_sums(steps: &[f64]) -> Vec<f64> {
    steps
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_network() {
        let params = NetworkParams {
            empty_zones: 0..=2,
            metropolitan: true,
            ..NetworkParams::default()
        };
        let a = random_network(&mut rng(7), &params);
        let b = random_network(&mut rng(7), &params);
        assert_eq!(a.ptn.edges(), b.ptn.edges());
        assert_eq!(a.zones, b.zones);
    }

    #[test]
    fn concave_family_is_subadditive() {
        let mut r = rng(3);
        for _ in 0..200 {
            let p = random_prices(&mut r, PriceFamily::Concave);
            assert!(p.is_increasing());
            assert!(p.is_subadditive(p.default_horizon()), "{p:?}");
        }
    }
}
