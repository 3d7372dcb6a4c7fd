//! Cheapest paths and tickets.

mod dijkstra;
mod no_double;
mod overlap;
mod short;
mod zone;

pub use dijkstra::{shortest_path, shortest_paths, Label, Weight};
pub use no_double::{
    cheapest_path_no_double_connected, cheapest_path_one_disconnected, mcsip_to_mzp, mzp_decide,
    mzp_exact, McsipInstance, MzpSolution, Reduction,
};
pub use overlap::{
    cheapest_path_zoa, minimal_assignment, Assigned, OverlapsResolvedGraph, ResolvedNode,
};
pub use short::short_distance_path;
pub use zone::{
    cheapest_path_basic_zone, cheapest_path_metropolitan, cheapest_path_metropolitan_pm_gt_p3,
    compute_d_max, fewest_edges, metropolitan_elongated_ticket, min_border_walk,
    shortest_by_length, TicketResult,
};

use crate::error::{Error, Result};
use crate::fares::{zone_count_basic, FareSystem, Price, PriceFunction, ShortDistance};
use crate::network::{Network, NodeIx, Walk, ZoneIx};
use zone::require_increasing;

/// A routed walk with its price and the tariff that set it.
#[derive(Clone, Debug, PartialEq)]
pub struct RouteResult {
    pub walk: Walk,
    pub price: Price,
    pub tariff: String,
    pub zone_count: Option<usize>,
    pub assignment: Option<Vec<ZoneIx>>,
}

impl RouteResult {
    pub fn new(walk: Walk, price: Price, tariff: impl Into<String>) -> Self {
        Self {
            walk,
            price,
            tariff: tariff.into(),
            zone_count: None,
            assignment: None,
        }
    }

    pub fn with_zone_count(mut self, z: usize) -> Self {
        self.zone_count = Some(z);
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RouteOptions {
    /// Compact the overlaps-resolved graph.
    pub compact: bool,
    /// Label budget of the exact zone search.
    pub max_states: usize,
}

impl Default for RouteOptions {
    fn default() -> Self {
        Self {
            compact: false,
            max_states: 1_000_000,
        }
    }
}

fn check_endpoint(net: &Network, v: NodeIx) -> Result<()> {
    if v >= net.ptn.node_count() {
        return Err(Error::InvalidReference(format!("unknown node index {v}")));
    }
    if !net.may_stop_at(v) {
        return Err(Error::InvalidWalk(format!(
            "virtual node `{}` cannot be a start or end point",
            net.ptn.id(v)
        )));
    }
    Ok(())
}

/// Cheapest `x`-`y` walk under `fs`, using the routine that fits the tariff. The
/// reported price is always `fs` applied to the returned walk.
pub fn cheapest_path(
    fs: &FareSystem,
    net: &Network,
    x: NodeIx,
    y: NodeIx,
    opts: &RouteOptions,
) -> Result<RouteResult> {
    check_endpoint(net, x)?;
    check_endpoint(net, y)?;
    fs.validate(net)?;
    let (walk, zone_count, assignment) = route_walk(fs, net, x, y, opts)?;
    let priced = fs.priced(net, &walk)?;
    Ok(RouteResult {
        walk,
        price: priced.price,
        tariff: priced.tariff.to_string(),
        zone_count,
        assignment,
    })
}

type Routed = (Walk, Option<usize>, Option<Vec<ZoneIx>>);

fn route_walk(fs: &FareSystem, net: &Network, x: NodeIx, y: NodeIx, opts: &RouteOptions) -> Result<Routed> {
    let ptn = &net.ptn;
    Ok(match fs {
        FareSystem::Distance { .. } => (shortest_by_length(ptn, x, y), None, None),
        // every walk between the same endpoints costs the same
        FareSystem::Beeline { .. } | FareSystem::Flat { .. } => (fewest_edges(ptn, x, y), None, None),
        FareSystem::BasicZone { prices } => {
            require_increasing(prices, "basic zone")?;
            let (w, z) = cheapest_path_basic_zone(net, x, y)?;
            (w, Some(z), None)
        }
        FareSystem::Metropolitan {
            prices,
            metro_price,
        } => {
            require_increasing(prices, "metropolitan zone")?;
            let zones = net.zones()?;
            let both_inside = zones.in_metropolitan(x) && zones.in_metropolitan(y);
            let w = if both_inside && *metro_price > prices.at(3) {
                cheapest_path_metropolitan_pm_gt_p3(net, prices, *metro_price, x, y)?
            } else {
                cheapest_path_metropolitan(net, x, y)?
            };
            (w, None, None)
        }
        FareSystem::Overlap { prices } => {
            require_increasing(prices, "overlap zone")?;
            let a = cheapest_path_zoa(net, x, y, opts.compact)?;
            (a.walk, Some(a.zone_count), Some(a.assignment))
        }
        FareSystem::NoDoubleCounting { prices } => {
            require_increasing(prices, "no-double-counting zone")?;
            let sol = no_double_route(net, x, y, opts)?;
            (sol.walk, Some(sol.zone_count), None)
        }
        FareSystem::ShortDistance(sd) => {
            let w = short_distance_path(ptn, sd.max_stations, sd.max_length, x, y)
                .unwrap_or_else(|| fewest_edges(ptn, x, y));
            (w, None, None)
        }
        FareSystem::Combined(left, right) => {
            if let Some((prices, sd)) = fs.as_zsd() {
                let (w, z) = cheapest_path_zsd(net, prices, sd, x, y)?;
                (w, Some(z), None)
            } else {
                let a = route_walk(left, net, x, y, opts)?;
                let b = route_walk(right, net, x, y, opts)?;
                if fs.price(net, &b.0)? < fs.price(net, &a.0)? {
                    b
                } else {
                    a
                }
            }
        }
    })
}

/// Picks the zone-count routine from the zone connectivity.
fn no_double_route(net: &Network, x: NodeIx, y: NodeIx, opts: &RouteOptions) -> Result<MzpSolution> {
    let zones = net.zones()?;
    let disconnected = zones.zone_components(&net.ptn).iter().filter(|&&c| c > 1).count();
    match disconnected {
        0 => cheapest_path_no_double_connected(net, x, y),
        1 => cheapest_path_one_disconnected(net, x, y),
        _ => mzp_exact(net, x, y, opts.max_states),
    }
}

/// Zone tariff with a short-distance option: the short-distance walk wins iff it
/// exists and its price is strictly below the zone price of the minimum-border walk.
pub fn cheapest_path_zsd(
    net: &Network,
    prices: &PriceFunction,
    sd: &ShortDistance,
    x: NodeIx,
    y: NodeIx,
) -> Result<(Walk, usize)> {
    require_increasing(prices, "zone / short-distance")?;
    let zones = net.zones()?;
    let (w2, z2) = cheapest_path_basic_zone(net, x, y)?;
    match short_distance_path(&net.ptn, sd.max_stations, sd.max_length, x, y) {
        Some(w1) if sd.price < prices.at(z2) => {
            let z1 = zone_count_basic(zones, &w1);
            Ok((w1, z1))
        }
        _ => Ok((w2, z2)),
    }
}

/// Cheapest path for a combination: the cheaper of the two children's cheapest paths,
/// the left one on ties.
pub fn cheapest_path_combined(
    fs: &FareSystem,
    net: &Network,
    x: NodeIx,
    y: NodeIx,
    opts: &RouteOptions,
) -> Result<RouteResult> {
    match fs {
        FareSystem::Combined(..) => cheapest_path(fs, net, x, y, opts),
        _ => Err(Error::Config(format!(
            "`{}` is not a combined fare system",
            fs.name()
        ))),
    }
}
