use ordered_float::OrderedFloat;

use crate::error::{Error, Result};
use crate::fares::{inside_metropolitan, zone_count_basic, Price, PriceFunction};
use crate::network::{Network, NodeIx, Ptn, Ticket, Walk, ZoneStructure};
use crate::routing::dijkstra::{shortest_path, shortest_paths, Label};

pub(crate) fn arcs_by<'a, W: Copy>(
    ptn: &'a Ptn,
    weight: impl Fn(NodeIx, NodeIx) -> W + 'a,
) -> impl FnMut(NodeIx) -> Vec<(NodeIx, W)> + 'a {
    move |v| ptn.neighbors(v).iter().map(|&(w, _)| (w, weight(v, w))).collect()
}

pub(crate) fn to_walk<W>(label: Label<W>) -> Walk {
    Walk::new(label.path).expect("shortest paths are nonempty")
}

/// Shortest walk by edge length.
pub fn shortest_by_length(ptn: &Ptn, x: NodeIx, y: NodeIx) -> Walk {
    let label = shortest_path(
        ptn.node_count(),
        x,
        y,
        arcs_by(ptn, |a, b| OrderedFloat(ptn.length(a, b).expect("adjacent"))),
    )
    .expect("network is connected");
    to_walk(label)
}

/// Walk with the fewest edges.
pub fn fewest_edges(ptn: &Ptn, x: NodeIx, y: NodeIx) -> Walk {
    let label = shortest_path(ptn.node_count(), x, y, arcs_by(ptn, |_, _| 1u32))
        .expect("network is connected");
    to_walk(label)
}

/// A walk crossing the fewest zone borders.
pub fn min_border_walk(ptn: &Ptn, zones: &ZoneStructure, x: NodeIx, y: NodeIx) -> Walk {
    let label = shortest_path(ptn.node_count(), x, y, arcs_by(ptn, |a, b| zones.border(a, b)))
        .expect("network is connected");
    to_walk(label)
}

/// Shortest border-weight paths from `x` to every node.
fn border_tree(ptn: &Ptn, zones: &ZoneStructure, x: NodeIx) -> Vec<Label<u32>> {
    shortest_paths(ptn.node_count(), x, None, arcs_by(ptn, |a, b| zones.border(a, b)))
        .into_iter()
        .map(|l| l.expect("network is connected"))
        .collect()
}

pub(crate) fn require_increasing(prices: &PriceFunction, what: &str) -> Result<()> {
    if prices.is_increasing() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "{what} routing needs an increasing price function"
        )))
    }
}

/// Cheapest path for a basic zone tariff: minimise crossed zone borders.
pub fn cheapest_path_basic_zone(net: &Network, x: NodeIx, y: NodeIx) -> Result<(Walk, usize)> {
    let zones = net.zones()?;
    zones.require_partition("basic zone tariff")?;
    let w = min_border_walk(&net.ptn, zones, x, y);
    let z = zone_count_basic(zones, &w);
    Ok((w, z))
}

fn metro_setup(net: &Network) -> Result<(&ZoneStructure, Vec<bool>)> {
    let zones = net.zones()?;
    zones.require_partition("metropolitan zone tariff")?;
    if zones.metropolitan().is_none() {
        return Err(Error::Config("no metropolitan zone declared".into()));
    }
    let mask = zones.metropolitan_mask();
    Ok((zones, mask))
}

/// Metropolitan routing with the inside-first rule: a walk inside the metropolitan
/// zone if one exists, else the minimum-border walk.
pub fn cheapest_path_metropolitan(net: &Network, x: NodeIx, y: NodeIx) -> Result<Walk> {
    let (zones, mask) = metro_setup(net)?;
    let ptn = &net.ptn;
    let outside = |a: NodeIx, b: NodeIx| u32::from(!(mask[a] && mask[b]));
    let label = shortest_path(ptn.node_count(), x, y, arcs_by(ptn, outside))
        .expect("network is connected");
    let w = to_walk(label);
    if inside_metropolitan(zones, &w) {
        Ok(w)
    } else {
        Ok(min_border_walk(ptn, zones, x, y))
    }
}

/// Both endpoints inside the metropolitan zone and a metropolitan price that may
/// exceed leaving routes: compare the inside walk with the best walk that leaves.
pub fn cheapest_path_metropolitan_pm_gt_p3(
    net: &Network,
    prices: &PriceFunction,
    metro_price: f64,
    x: NodeIx,
    y: NodeIx,
) -> Result<Walk> {
    let (zones, mask) = metro_setup(net)?;
    if !(mask[x] && mask[y]) {
        return Err(Error::Unsupported(
            "both endpoints must lie in the metropolitan zone".into(),
        ));
    }
    let ptn = &net.ptn;
    let inside = shortest_path(ptn.node_count(), x, y, |v| {
        ptn.neighbors(v)
            .iter()
            .filter(|&&(w, _)| mask[w])
            .map(|&(w, _)| (w, zones.border(v, w)))
            .collect::<Vec<_>>()
    })
    .map(to_walk)
    .expect("metropolitan zone is connected");

    let from_x = border_tree(ptn, zones, x);
    let from_y = border_tree(ptn, zones, y);
    let mut best: Option<(u32, Vec<NodeIx>)> = None;
    for e in ptn.edges() {
        for (a, b) in [(e.a, e.b), (e.b, e.a)] {
            if !(mask[a] && !mask[b]) {
                continue;
            }
            let cost = from_x[a].cost + zones.border(a, b) + from_y[b].cost;
            let mut seq = from_x[a].path.clone();
            seq.extend(from_y[b].path.iter().rev());
            let better = match &best {
                None => true,
                Some((c, s)) => (cost, seq.len(), &seq) < (*c, s.len(), s),
            };
            if better {
                best = Some((cost, seq));
            }
        }
    }
    Ok(match best {
        Some((cost, seq)) if prices.at(cost as usize + 1) < metro_price => {
            Walk::new(seq).expect("nonempty")
        }
        _ => inside,
    })
}

/// A ticket for travelling from `x` to `y`, with the walk it covers.
#[derive(Clone, Debug, PartialEq)]
pub struct TicketResult {
    pub traveled: Walk,
    pub ticket: Ticket,
    pub price: Price,
}

/// Standard ticket versus a minimum-border walk elongated at one end to the nearest
/// node outside the metropolitan zone. Returns the cheaper; ties keep the standard one.
pub fn metropolitan_elongated_ticket(
    net: &Network,
    prices: &PriceFunction,
    metro_price: f64,
    x: NodeIx,
    y: NodeIx,
) -> Result<TicketResult> {
    let (zones, mask) = metro_setup(net)?;
    if !(mask[x] && mask[y]) {
        return Err(Error::Unsupported(
            "both endpoints must lie in the metropolitan zone".into(),
        ));
    }
    let ptn = &net.ptn;
    let standard_walk = if metro_price > prices.at(3) {
        cheapest_path_metropolitan_pm_gt_p3(net, prices, metro_price, x, y)?
    } else {
        cheapest_path_metropolitan(net, x, y)?
    };
    let price_of = |w: &Walk| {
        if inside_metropolitan(zones, w) {
            metro_price
        } else {
            prices.at(zone_count_basic(zones, w))
        }
    };
    let standard = TicketResult {
        ticket: Ticket::standard(&standard_walk),
        price: Price::Finite(price_of(&standard_walk)),
        traveled: standard_walk,
    };

    let base = min_border_walk(ptn, zones, x, y);
    let nearest_exit = |from: NodeIx| -> Option<Label<u32>> {
        border_tree(ptn, zones, from)
            .into_iter()
            .enumerate()
            .filter(|&(v, _)| !mask[v] && net.may_stop_at(v))
            .map(|(_, l)| l)
            .min_by(|a, b| (a.cost, a.path.len(), &a.path).cmp(&(b.cost, b.path.len(), &b.path)))
    };
    let mut options = Vec::new();
    if let Some(ext) = nearest_exit(y) {
        let mut seq = base.nodes().to_vec();
        seq.extend_from_slice(&ext.path[1..]);
        options.push(seq);
    }
    if let Some(ext) = nearest_exit(x) {
        let mut seq: Vec<NodeIx> = ext.path.iter().rev().copied().collect();
        seq.extend_from_slice(&base.nodes()[1..]);
        options.push(seq);
    }
    let elongated = options
        .into_iter()
        .map(|seq| {
            let h = Walk::new(seq).expect("nonempty");
            (price_of(&h), h.len(), h)
        })
        .min_by(|a, b| a.0.partial_cmp(&b.0).expect("finite").then(a.1.cmp(&b.1)));
    Ok(match elongated {
        Some((p, _, h)) if Price::Finite(p) < standard.price => TicketResult {
            ticket: Ticket {
                segments: vec![h],
                decomposition: vec![(0, base.len() - 1)],
            },
            price: Price::Finite(p),
            traveled: base,
        },
        _ => standard,
    })
}

/// Largest, over station pairs in the metropolitan zone, of the least zone count of
/// a connecting walk that stays inside.
pub fn compute_d_max(net: &Network) -> Result<usize> {
    let (zones, mask) = metro_setup(net)?;
    let ptn = &net.ptn;
    if ptn.induced_components(&mask) != 1 {
        return Err(Error::Config(
            "metropolitan zone must be nonempty and connected".into(),
        ));
    }
    let mut d_max = 0;
    for x in ptn.stations().filter(|&v| mask[v]) {
        let tree = shortest_paths(ptn.node_count(), x, None, |v| {
            ptn.neighbors(v)
                .iter()
                .filter(|&&(w, _)| mask[w])
                .map(|&(w, _)| (w, zones.border(v, w)))
                .collect::<Vec<_>>()
        });
        for y in ptn.stations().filter(|&v| mask[v]) {
            let cost = tree[y].as_ref().expect("metropolitan zone is connected").cost;
            d_max = d_max.max(cost as usize + 1);
        }
    }
    if d_max == 0 {
        return Err(Error::Config("metropolitan zone contains no station".into()));
    }
    Ok(d_max)
}
