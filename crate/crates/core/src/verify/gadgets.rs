use std::str::FromStr;

use crate::error::{Error, Result};
use crate::fares::ShortDistance;
use crate::network::{Edge, Network, Node, NodeIx, Ptn, TicketRules, Walk, ZoneStructure};
use crate::verify::conditions::{MetroWitness, SplitWitness, SumWitness, ZsdWitness};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    Eq2,
    Metropolitan,
    ZoaSubadditivity,
    ZsdCondition,
}

impl FromStr for ViolationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "eq2" => Ok(Self::Eq2),
            "metropolitan" => Ok(Self::Metropolitan),
            "zoa_subadd" | "zoa-subadd" => Ok(Self::ZoaSubadditivity),
            "zsd_cond" | "zsd-cond" => Ok(Self::ZsdCondition),
            other => Err(Error::Config(format!("unknown gadget kind `{other}`"))),
        }
    }
}

/// A violated condition, with what the gadget needs to realize it.
#[derive(Clone, Debug, PartialEq)]
pub enum Violation {
    Eq2(SplitWitness),
    Metropolitan(MetroWitness),
    ZoaSubadditivity(SumWitness),
    Zsd {
        witness: ZsdWitness,
        short: ShortDistance,
    },
}

impl Violation {
    pub fn kind(&self) -> ViolationKind {
        match self {
            Violation::Eq2(_) => ViolationKind::Eq2,
            Violation::Metropolitan(_) => ViolationKind::Metropolitan,
            Violation::ZoaSubadditivity(_) => ViolationKind::ZoaSubadditivity,
            Violation::Zsd { .. } => ViolationKind::ZsdCondition,
        }
    }
}

/// A network on which the split of `walk` at node position `split` is cheaper than
/// the walk itself.
#[derive(Clone, Debug)]
pub struct Gadget {
    pub network: Network,
    pub walk: Walk,
    pub split: usize,
}

pub fn gadget_from_violation(v: &Violation) -> Result<Gadget> {
    match v {
        Violation::Eq2(SplitWitness { k, i }) => {
            if !(*k >= 3 && (2..*k).contains(i)) {
                return Err(bad(v));
            }
            let names: Vec<String> = (1..=*k).map(|j| format!("Z{j}")).collect();
            chain_gadget(&names, None, i - 1)
        }
        Violation::Metropolitan(MetroWitness { d, k }) => {
            if *d == 0 || *k == 0 {
                return Err(bad(v));
            }
            let metro: Vec<String> = (1..=*d).map(|j| format!("M{j}")).collect();
            let outside = (1..=*k).map(|j| format!("O{j}"));
            let names: Vec<String> = metro.iter().cloned().chain(outside).collect();
            chain_gadget(&names, Some(&metro), d - 1)
        }
        Violation::ZoaSubadditivity(SumWitness { k1, k2 }) => {
            if *k1 == 0 || *k2 == 0 {
                return Err(bad(v));
            }
            zoa_gadget(*k1, *k2)
        }
        Violation::Zsd { witness, short } => zsd_gadget(*witness, short).ok_or_else(|| bad(v)),
    }
}

fn bad(v: &Violation) -> Error {
    Error::Config(format!("not a usable violation witness: {v:?}"))
}

/// Stations `x1..xn` on a unit-length path, `xj` in zone `names[j - 1]`.
fn chain_gadget(names: &[String], metro: Option<&[String]>, split: usize) -> Result<Gadget> {
    let n = names.len();
    let nodes: Vec<Node> = (1..=n).map(|j| Node::station(format!("x{j}"))).collect();
    let edges = (1..n).map(|j| Edge { a: j - 1, b: j, length: 1.0 }).collect();
    let ptn = Ptn::new(nodes, edges)?;
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut zones = ZoneStructure::partition(&refs)?;
    if let Some(m) = metro {
        let m: Vec<&str> = m.iter().map(String::as_str).collect();
        zones = zones.with_metropolitan(&m)?;
    }
    Ok(Gadget {
        network: Network::new(ptn, Some(zones))?,
        walk: Walk::new((0..n).collect())?,
        split,
    })
}

/// `x1..x{k1}` in `Z1..Z{k1}`, then `v` in both `Z{k1}` and `Y1`, then `y1..y{k2}` in
/// `Y1..Y{k2}`. Split at `v`.
fn zoa_gadget(k1: usize, k2: usize) -> Result<Gadget> {
    let mut ids: Vec<String> = (1..=k1).map(|j| format!("x{j}")).collect();
    ids.push("v".into());
    ids.extend((1..=k2).map(|j| format!("y{j}")));
    let mut per_node: Vec<Vec<String>> = (1..=k1).map(|j| vec![format!("Z{j}")]).collect();
    per_node.push(vec![format!("Z{k1}"), "Y1".into()]);
    per_node.extend((1..=k2).map(|j| vec![format!("Y{j}")]));
    let n = ids.len();
    let nodes = ids.iter().map(Node::station).collect();
    let edges = (1..n).map(|j| Edge { a: j - 1, b: j, length: 1.0 }).collect();
    let ptn = Ptn::new(nodes, edges)?;
    let owned: Vec<Vec<&str>> = per_node.iter().map(|z| z.iter().map(String::as_str).collect()).collect();
    let refs: Vec<&[&str]> = owned.iter().map(Vec::as_slice).collect();
    let zones = ZoneStructure::cover(&refs)?;
    Ok(Gadget {
        network: Network::new(ptn, Some(zones))?,
        walk: Walk::new((0..n).collect())?,
        split: k1,
    })
}

/// One leg between consecutive stations of a zone / short-distance gadget.
#[derive(Clone, Copy)]
struct Leg {
    zones: usize,
    hops: usize,
    length: f64,
}

/// Two legs `x1 -> x2 -> x3` with `i` and `k - i + 1` zones and lengths or hop counts
/// chosen so that each part and the whole are short or not as the condition needs.
fn zsd_gadget(w: ZsdWitness, sd: &ShortDistance) -> Option<Gadget> {
    let ZsdWitness { condition, k, i } = w;
    if i == 0 || i > k {
        return None;
    }
    let (a, b) = (i, k - i + 1);
    let s = sd.max_stations;
    let l = sd.max_length;
    // (long?, short?) shapes: a leg is long by length L + 1, or by S + 1 hops without L
    let long = |zones| match (l, s) {
        (Some(l), _) => Some(Leg { zones, hops: 1, length: l + 1.0 }),
        (None, Some(s)) => Some(Leg { zones, hops: s + 1, length: f64::NAN }),
        (None, None) => None,
    };
    let short_full = |zones| match (l, s) {
        (Some(l), _) => Some(Leg { zones, hops: 1, length: l }),
        (None, Some(s)) => Some(Leg { zones, hops: s, length: f64::NAN }),
        (None, None) => None,
    };
    let short_half = |zones| Leg {
        zones,
        hops: 1,
        length: l.map_or(f64::NAN, |l| l / 2.0),
    };
    let (first, second) = match condition {
        1 => (long(a)?, long(b)?),
        2 => (short_full(a)?, short_full(b)?),
        3 => (long(a)?, short_full(b)?),
        4 => {
            if s.is_some_and(|s| s < 2) {
                return None;
            }
            (short_half(a), short_half(b))
        }
        _ => return None,
    };
    let mut nodes = vec![Node::station("x1")];
    let mut membership = vec![vec![0]];
    let mut edges = Vec::new();
    let mut zone = 0;
    let x2 = push_leg(&mut nodes, &mut membership, &mut edges, &mut zone, first, "x1", "x2");
    push_leg(&mut nodes, &mut membership, &mut edges, &mut zone, second, "x2", "x3");
    let n = nodes.len();
    let ptn = Ptn::new(nodes, edges).ok()?;
    let names = (1..=zone + 1).map(|j| format!("Z{j}")).collect();
    let zones = ZoneStructure::new(names, membership, None).ok()?;
    let network = Network::new(ptn, Some(zones)).ok()?.with_rules(TicketRules {
        forbid_virtual_endpoints: true,
    });
    Some(Gadget {
        network,
        walk: Walk::new((0..n).collect()).ok()?,
        split: x2,
    })
}

/// Appends a leg from the last node: virtual nodes for the inner zones first, then
/// the extra stations, all inside the final zone. The leg length sits on its last
/// edge, the others get length 0; without a length, every edge has length 1.
fn push_leg(
    nodes: &mut Vec<Node>,
    membership: &mut Vec<Vec<usize>>,
    edges: &mut Vec<Edge>,
    zone: &mut usize,
    leg: Leg,
    from: &str,
    to: &str,
) -> NodeIx {
    let inner_zones = leg.zones.saturating_sub(2);
    let count = inner_zones + leg.hops;
    let unit = leg.length.is_nan();
    for j in 1..=count {
        let id = if j == count {
            to.to_string()
        } else {
            format!("{from}~{to}#{j}")
        };
        if j <= inner_zones {
            *zone += 1;
            nodes.push(Node::virtual_node(id));
        } else {
            if j == inner_zones + 1 && leg.zones >= 2 {
                *zone += 1;
            }
            nodes.push(Node::station(id));
        }
        membership.push(vec![*zone]);
        let b = nodes.len() - 1;
        let length = if unit {
            1.0
        } else if j == count {
            leg.length
        } else {
            0.0
        };
        edges.push(Edge { a: b - 1, b, length });
    }
    nodes.len() - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fares::{zone_count_basic, FareSystem, PriceFunction, Tail};
    use crate::verify::{check_no_stopover, EnumBudget};

    #[test]
    fn eq2_chain_for_one_two_five() {
        let g = gadget_from_violation(&Violation::Eq2(SplitWitness { k: 3, i: 2 })).unwrap();
        let p = PriceFunction::new(vec![1.0, 2.0, 5.0], Tail::Constant).unwrap();
        let fs = FareSystem::BasicZone { prices: p };
        let report = check_no_stopover(&fs, &g.network, EnumBudget::default()).unwrap();
        assert!(!report.holds);
        assert_eq!(g.split, 1);
    }

    #[test]
    fn zsd_legs_have_the_requested_zone_counts() {
        let sd = ShortDistance::new(2.0, Some(3), Some(4.0)).unwrap();
        let w = ZsdWitness { condition: 3, k: 5, i: 2 };
        let g = gadget_from_violation(&Violation::Zsd { witness: w, short: sd.clone() }).unwrap();
        let net = &g.network;
        let zones = net.zones().unwrap();
        let n = g.walk.len();
        assert_eq!(zone_count_basic(zones, &g.walk), 5);
        let first = g.walk.subwalk(0, g.split).unwrap();
        let second = g.walk.subwalk(g.split, n - 1).unwrap();
        assert_eq!(zone_count_basic(zones, &first), 2);
        assert_eq!(zone_count_basic(zones, &second), 4);
        assert!(!sd.admits(&net.ptn, &first));
        assert!(sd.admits(&net.ptn, &second));
        assert!(!sd.admits(&net.ptn, &g.walk));
    }

    #[test]
    fn zsd_hop_mode_without_length_bound() {
        let sd = ShortDistance::new(2.0, Some(2), None).unwrap();
        let w = ZsdWitness { condition: 2, k: 5, i: 2 };
        let g = gadget_from_violation(&Violation::Zsd { witness: w, short: sd.clone() }).unwrap();
        let n = g.walk.len();
        let ptn = &g.network.ptn;
        assert!(sd.admits(ptn, &g.walk.subwalk(0, g.split).unwrap()));
        assert!(sd.admits(ptn, &g.walk.subwalk(g.split, n - 1).unwrap()));
        assert_eq!(g.walk.station_count(ptn), 4);
    }

    #[test]
    fn unknown_kind_is_rejected() {
        assert!("eq2".parse::<ViolationKind>().is_ok());
        assert!("figure-9".parse::<ViolationKind>().is_err());
    }
}
