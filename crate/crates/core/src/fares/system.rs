use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fares::function::PriceFunction;
use crate::fares::price::Price;
use crate::network::{Network, Ptn, Walk, ZoneStructure};
use crate::routing::minimal_assignment;

/// Eligibility bounds and price of a short-distance tariff. `None` bounds are infinite.
#[derive(Clone, Debug, PartialEq)]
pub struct ShortDistance {
    pub price: f64,
    pub max_stations: Option<usize>,
    pub max_length: Option<f64>,
}

impl ShortDistance {
    pub fn new(price: f64, max_stations: Option<usize>, max_length: Option<f64>) -> Result<Self> {
        let sd = Self {
            price,
            max_stations,
            max_length,
        };
        sd.validate()?;
        Ok(sd)
    }

    fn validate(&self) -> Result<()> {
        non_negative("short-distance price", self.price)?;
        if self.max_stations.is_none() && self.max_length.is_none() {
            return Err(Error::Config(
                "short-distance tariff needs a finite station or length bound".into(),
            ));
        }
        if self.max_stations == Some(0) {
            return Err(Error::Config("station bound must be at least 1".into()));
        }
        if let Some(l) = self.max_length {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::Config(format!("invalid length bound {l}")));
            }
        }
        Ok(())
    }

    /// True iff `w` may use the short-distance ticket. Both bounds are inclusive.
    pub fn admits(&self, ptn: &Ptn, w: &Walk) -> bool {
        self.max_stations.is_none_or(|s| w.station_count(ptn) <= s)
            && self.max_length.is_none_or(|l| w.length(ptn) <= l)
    }
}

/// A fare system: a rule that prices every walk.
#[derive(Clone, Debug, PartialEq)]
pub enum FareSystem {
    /// `fixed + per_km * length`.
    Distance { fixed: f64, per_km: f64 },
    /// `fixed + per_km * beeline distance`.
    Beeline { fixed: f64, per_km: f64 },
    Flat { price: f64 },
    BasicZone { prices: PriceFunction },
    Metropolitan { prices: PriceFunction, metro_price: f64 },
    /// Zone tariff on a cover, each visit assigned to the cheapest zone.
    Overlap { prices: PriceFunction },
    /// Zone tariff counting each visited zone once.
    NoDoubleCounting { prices: PriceFunction },
    ShortDistance(ShortDistance),
    /// Cheaper of two tariffs; ties go to the left one.
    Combined(Box<FareSystem>, Box<FareSystem>),
}

/// Price of a walk together with the leaf tariff that produced it.
#[derive(Clone, Debug, PartialEq)]
pub struct Priced {
    pub price: Price,
    pub tariff: &'static str,
}

impl FareSystem {
    pub fn combined(left: FareSystem, right: FareSystem) -> FareSystem {
        FareSystem::Combined(Box::new(left), Box::new(right))
    }

    /// Distance tariff capped by a flat price.
    pub fn bounded_distance(fixed: f64, per_km: f64, cap: f64) -> FareSystem {
        Self::combined(
            FareSystem::Distance { fixed, per_km },
            FareSystem::Flat { price: cap },
        )
    }

    /// Basic zone tariff combined with a short-distance tariff.
    pub fn zsd(prices: PriceFunction, sd: ShortDistance) -> FareSystem {
        Self::combined(FareSystem::BasicZone { prices }, FareSystem::ShortDistance(sd))
    }

    pub fn name(&self) -> &'static str {
        match self {
            FareSystem::Distance { .. } => "distance",
            FareSystem::Beeline { .. } => "beeline",
            FareSystem::Flat { .. } => "flat",
            FareSystem::BasicZone { .. } => "basic-zone",
            FareSystem::Metropolitan { .. } => "metropolitan",
            FareSystem::Overlap { .. } => "overlap",
            FareSystem::NoDoubleCounting { .. } => "no-double-counting",
            FareSystem::ShortDistance(_) => "short-distance",
            FareSystem::Combined(..) => "combined",
        }
    }

    /// The parts of a basic zone / short-distance combination, in either order.
    pub fn as_zsd(&self) -> Option<(&PriceFunction, &ShortDistance)> {
        match self {
            FareSystem::Combined(l, r) => match (l.as_ref(), r.as_ref()) {
                (FareSystem::BasicZone { prices }, FareSystem::ShortDistance(sd))
                | (FareSystem::ShortDistance(sd), FareSystem::BasicZone { prices }) => {
                    Some((prices, sd))
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// Checks parameters and that the network carries what the tariff needs.
    pub fn validate(&self, net: &Network) -> Result<()> {
        match self {
            FareSystem::Distance { fixed, per_km } => {
                non_negative("fixed price", *fixed)?;
                non_negative("price per km", *per_km)
            }
            FareSystem::Beeline { fixed, per_km } => {
                non_negative("fixed price", *fixed)?;
                non_negative("price per km", *per_km)?;
                net.ptn.require_coordinates()
            }
            FareSystem::Flat { price } => non_negative("flat price", *price),
            FareSystem::BasicZone { .. } => net.zones()?.require_partition("basic zone tariff"),
            FareSystem::Metropolitan { metro_price, .. } => {
                non_negative("metropolitan price", *metro_price)?;
                let zones = net.zones()?;
                zones.require_partition("metropolitan zone tariff")?;
                if zones.metropolitan().is_none() {
                    return Err(Error::Config("no metropolitan zone declared".into()));
                }
                Ok(())
            }
            FareSystem::Overlap { .. } => net.zones().map(|_| ()),
            FareSystem::NoDoubleCounting { .. } => {
                net.zones()?.require_partition("zone tariff without double counting")
            }
            FareSystem::ShortDistance(sd) => sd.validate(),
            FareSystem::Combined(l, r) => {
                l.validate(net)?;
                r.validate(net)
            }
        }
    }

    pub fn price(&self, net: &Network, w: &Walk) -> Result<Price> {
        self.priced(net, w).map(|p| p.price)
    }

    /// Prices `w` and reports the leaf tariff that set the price.
    pub fn priced(&self, net: &Network, w: &Walk) -> Result<Priced> {
        let ptn = &net.ptn;
        let finite = |v: f64, tariff| Priced {
            price: Price::Finite(v),
            tariff,
        };
        Ok(match self {
            FareSystem::Distance { fixed, per_km } => {
                finite(fixed + per_km * w.length(ptn), "distance")
            }
            FareSystem::Beeline { fixed, per_km } => {
                finite(fixed + per_km * w.beeline(ptn)?, "beeline")
            }
            FareSystem::Flat { price } => finite(*price, "flat"),
            FareSystem::BasicZone { prices } => {
                let zones = net.zones()?;
                zones.require_partition("basic zone tariff")?;
                finite(prices.at(zone_count_basic(zones, w)), "basic-zone")
            }
            FareSystem::Metropolitan {
                prices,
                metro_price,
            } => finite(price_metropolitan(prices, *metro_price, net.zones()?, w)?, "metropolitan"),
            FareSystem::Overlap { prices } => {
                finite(prices.at(zone_count_zoa(net.zones()?, w)), "overlap")
            }
            FareSystem::NoDoubleCounting { prices } => {
                let zones = net.zones()?;
                zones.require_partition("zone tariff without double counting")?;
                finite(prices.at(zone_count_no_double(zones, w)), "no-double-counting")
            }
            FareSystem::ShortDistance(sd) => Priced {
                price: price_short_distance(sd, ptn, w),
                tariff: "short-distance",
            },
            FareSystem::Combined(l, r) => {
                let a = l.priced(net, w)?;
                let b = r.priced(net, w)?;
                if b.price < a.price {
                    b
                } else {
                    a
                }
            }
        })
    }
}

fn non_negative(what: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("{what} must be finite and nonnegative, got {v}")))
    }
}

/// `1 +` the number of zone borders crossed, counted with multiplicity.
pub fn zone_count_basic(zones: &ZoneStructure, w: &Walk) -> usize {
    1 + w.steps().map(|(a, b)| zones.border(a, b) as usize).sum::<usize>()
}

/// Zone count under the cheapest per-visit assignment of a cover.
pub fn zone_count_zoa(zones: &ZoneStructure, w: &Walk) -> usize {
    minimal_assignment(zones, w).1
}

/// Number of distinct zones visited.
pub fn zone_count_no_double(zones: &ZoneStructure, w: &Walk) -> usize {
    w.nodes()
        .iter()
        .flat_map(|&v| zones.zones_of(v).iter().copied())
        .collect::<BTreeSet<_>>()
        .len()
}

/// True iff every node of `w` lies in the metropolitan zone.
pub fn inside_metropolitan(zones: &ZoneStructure, w: &Walk) -> bool {
    w.nodes().iter().all(|&v| zones.in_metropolitan(v))
}

pub fn price_metropolitan(
    prices: &PriceFunction,
    metro_price: f64,
    zones: &ZoneStructure,
    w: &Walk,
) -> Result<f64> {
    zones.require_partition("metropolitan zone tariff")?;
    if zones.metropolitan().is_none() {
        return Err(Error::Config("no metropolitan zone declared".into()));
    }
    Ok(if inside_metropolitan(zones, w) {
        metro_price
    } else {
        prices.at(zone_count_basic(zones, w))
    })
}

pub fn price_short_distance(sd: &ShortDistance, ptn: &Ptn, w: &Walk) -> Price {
    if sd.admits(ptn, w) {
        Price::Finite(sd.price)
    } else {
        Price::Infinite
    }
}

/// The combined zone / short-distance price in threshold form: `P_S` when the walk is
/// short and visits more than `K` zones, where `P(K) <= P_S < P(K + 1)`.
pub fn price_zsd_threshold(
    prices: &PriceFunction,
    sd: &ShortDistance,
    net: &Network,
    w: &Walk,
) -> Result<f64> {
    let zones = net.zones()?;
    zones.require_partition("basic zone tariff")?;
    let z = zone_count_basic(zones, w);
    let above = prices.threshold(sd.price).is_some_and(|k| z > k);
    Ok(if above && sd.admits(&net.ptn, w) {
        sd.price
    } else {
        prices.at(z)
    })
}
