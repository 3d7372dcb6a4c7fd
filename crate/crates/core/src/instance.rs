//! TOML instance documents: network, zones, fare system and an optional query in one
//! file, plus the colored-graph input of the reduction.
//!
//! ```toml
//! metropolitan = ["A"]          # optional
//!
//! [[nodes]]
//! id = "x1"
//! kind = "station"              # or "virtual"; optional
//! x = 0.0                       # optional coordinates
//! y = 0.0
//!
//! [[edges]]
//! from = "x1"
//! to = "x2"
//! length = 1.5
//! empty_zones = ["B"]           # optional, in order from `from` to `to`
//!
//! [[zones]]
//! id = "A"
//! nodes = ["x1"]
//!
//! [rules]
//! forbid_virtual_endpoints = false
//!
//! [fare]
//! type = "basic-zone"           # see `FareDoc`
//! prices = [1.0, 2.0, 3.0]
//! tail = { kind = "affine", slope = 1.0 }
//!
//! [query]
//! walk = ["x1", "x2"]
//! from = "x1"
//! to = "x2"
//! ```

use std::collections::HashMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fares::{FareSystem, PriceFunction, ShortDistance, Tail};
use crate::network::{Edge, EdgeIx, Network, Node, NodeKind, Ptn, TicketRules, ZoneIx, ZoneStructure};
use crate::routing::McsipInstance;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metropolitan: Option<Vec<String>>,
    pub nodes: Vec<NodeDoc>,
    #[serde(default)]
    pub edges: Vec<EdgeDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub zones: Vec<ZoneDoc>,
    #[serde(default, skip_serializing_if = "RulesDoc::is_default")]
    pub rules: RulesDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fare: Option<FareDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub query: Option<QueryDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDoc {
    pub id: String,
    #[serde(default, skip_serializing_if = "is_station")]
    pub kind: KindDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<f64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindDoc {
    #[default]
    Station,
    Virtual,
}

fn is_station(k: &KindDoc) -> bool {
    *k == KindDoc::Station
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeDoc {
    pub from: String,
    pub to: String,
    pub length: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub empty_zones: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ZoneDoc {
    pub id: String,
    #[serde(default)]
    pub nodes: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RulesDoc {
    #[serde(default)]
    pub forbid_virtual_endpoints: bool,
}

impl RulesDoc {
    fn is_default(&self) -> bool {
        *self == Self::default()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QueryDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub walk: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to: Option<String>,
}

fn constant() -> Tail {
    Tail::Constant
}

fn is_constant(t: &Tail) -> bool {
    *t == Tail::Constant
}

/// The `[fare]` block. `combined` nests two blocks as `left` and `right`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FareDoc {
    Distance {
        fixed: f64,
        per_km: f64,
    },
    Beeline {
        fixed: f64,
        per_km: f64,
    },
    Flat {
        price: f64,
    },
    BasicZone {
        prices: Vec<f64>,
        #[serde(default = "constant", skip_serializing_if = "is_constant")]
        tail: Tail,
    },
    Metropolitan {
        prices: Vec<f64>,
        #[serde(default = "constant", skip_serializing_if = "is_constant")]
        tail: Tail,
        metro_price: f64,
    },
    Overlap {
        prices: Vec<f64>,
        #[serde(default = "constant", skip_serializing_if = "is_constant")]
        tail: Tail,
    },
    NoDoubleCounting {
        prices: Vec<f64>,
        #[serde(default = "constant", skip_serializing_if = "is_constant")]
        tail: Tail,
    },
    ShortDistance {
        price: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_stations: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        max_length: Option<f64>,
    },
    Combined {
        left: Box<FareDoc>,
        right: Box<FareDoc>,
    },
}

impl FareDoc {
    pub fn build(&self) -> Result<FareSystem> {
        let pf = |prices: &[f64], tail: &Tail| PriceFunction::new(prices.to_vec(), *tail);
        Ok(match self {
            FareDoc::Distance { fixed, per_km } => FareSystem::Distance {
                fixed: *fixed,
                per_km: *per_km,
            },
            FareDoc::Beeline { fixed, per_km } => FareSystem::Beeline {
                fixed: *fixed,
                per_km: *per_km,
            },
            FareDoc::Flat { price } => FareSystem::Flat { price: *price },
            FareDoc::BasicZone { prices, tail } => FareSystem::BasicZone {
                prices: pf(prices, tail)?,
            },
            FareDoc::Metropolitan {
                prices,
                tail,
                metro_price,
            } => FareSystem::Metropolitan {
                prices: pf(prices, tail)?,
                metro_price: *metro_price,
            },
            FareDoc::Overlap { prices, tail } => FareSystem::Overlap {
                prices: pf(prices, tail)?,
            },
            FareDoc::NoDoubleCounting { prices, tail } => FareSystem::NoDoubleCounting {
                prices: pf(prices, tail)?,
            },
            FareDoc::ShortDistance {
                price,
                max_stations,
                max_length,
            } => FareSystem::ShortDistance(ShortDistance::new(*price, *max_stations, *max_length)?),
            FareDoc::Combined { left, right } => FareSystem::combined(left.build()?, right.build()?),
        })
    }

    pub fn from_fare(fs: &FareSystem) -> Self {
        let table = |p: &PriceFunction| (p.table().to_vec(), p.tail());
        match fs {
            FareSystem::Distance { fixed, per_km } => FareDoc::Distance {
                fixed: *fixed,
                per_km: *per_km,
            },
            FareSystem::Beeline { fixed, per_km } => FareDoc::Beeline {
                fixed: *fixed,
                per_km: *per_km,
            },
            FareSystem::Flat { price } => FareDoc::Flat { price: *price },
            FareSystem::BasicZone { prices } => {
                let (prices, tail) = table(prices);
                FareDoc::BasicZone { prices, tail }
            }
            FareSystem::Metropolitan {
                prices,
                metro_price,
            } => {
                let (prices, tail) = table(prices);
                FareDoc::Metropolitan {
                    prices,
                    tail,
                    metro_price: *metro_price,
                }
            }
            FareSystem::Overlap { prices } => {
                let (prices, tail) = table(prices);
                FareDoc::Overlap { prices, tail }
            }
            FareSystem::NoDoubleCounting { prices } => {
                let (prices, tail) = table(prices);
                FareDoc::NoDoubleCounting { prices, tail }
            }
            FareSystem::ShortDistance(sd) => FareDoc::ShortDistance {
                price: sd.price,
                max_stations: sd.max_stations,
                max_length: sd.max_length,
            },
            FareSystem::Combined(l, r) => FareDoc::Combined {
                left: Box::new(Self::from_fare(l)),
                right: Box::new(Self::from_fare(r)),
            },
        }
    }
}

/// A loaded instance.
#[derive(Clone, Debug)]
pub struct Instance {
    pub network: Network,
    pub fare: Option<FareSystem>,
    pub query: Option<QueryDoc>,
}

impl Instance {
    pub fn fare(&self) -> Result<&FareSystem> {
        self.fare
            .as_ref()
            .ok_or_else(|| Error::Config("instance has no [fare] block".into()))
    }
}

impl InstanceDocument {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<Instance> {
        let nodes: Vec<Node> = self
            .nodes
            .iter()
            .map(|n| {
                let coords = match (n.x, n.y) {
                    (Some(x), Some(y)) => Ok(Some((x, y))),
                    (None, None) => Ok(None),
                    _ => Err(Error::Parse(format!("node `{}` needs both x and y", n.id))),
                }?;
                Ok(Node {
                    id: n.id.clone(),
                    kind: match n.kind {
                        KindDoc::Station => NodeKind::Station,
                        KindDoc::Virtual => NodeKind::Virtual,
                    },
                    coords,
                })
            })
            .collect::<Result<_>>()?;
        let node_ix: HashMap<&str, usize> = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, n)| (n.id.as_str(), i))
            .collect();
        let lookup = |id: &str| {
            node_ix
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidReference(format!("unknown node `{id}`")))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| {
                Ok(Edge {
                    a: lookup(&e.from)?,
                    b: lookup(&e.to)?,
                    length: e.length,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let ptn = Ptn::new(nodes, edges)?;

        let zones = if self.zones.is_empty() {
            if self.metropolitan.is_some() || self.edges.iter().any(|e| !e.empty_zones.is_empty()) {
                return Err(Error::InvalidReference("zone references without [[zones]]".into()));
            }
            None
        } else {
            let names: Vec<String> = self.zones.iter().map(|z| z.id.clone()).collect();
            let mut membership = vec![Vec::new(); self.nodes.len()];
            for (zi, z) in self.zones.iter().enumerate() {
                for id in &z.nodes {
                    membership[lookup(id)?].push(zi);
                }
            }
            let zone_ix = |id: &str| {
                names
                    .iter()
                    .position(|n| n == id)
                    .ok_or_else(|| Error::InvalidReference(format!("unknown zone `{id}`")))
            };
            let metro = self
                .metropolitan
                .as_ref()
                .map(|m| m.iter().map(|z| zone_ix(z)).collect::<Result<Vec<ZoneIx>>>())
                .transpose()?;
            let crossings = self
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.empty_zones.is_empty())
                .map(|(i, e)| {
                    let zs = e.empty_zones.iter().map(|z| zone_ix(z)).collect::<Result<Vec<_>>>()?;
                    Ok((i as EdgeIx, zs))
                })
                .collect::<Result<Vec<_>>>()?;
            Some((ZoneStructure::new(names, membership, metro)?, crossings))
        };

        let rules = TicketRules {
            forbid_virtual_endpoints: self.rules.forbid_virtual_endpoints,
        };
        let network = match zones {
            None => Network::new(ptn, None)?,
            Some((zs, crossings)) if crossings.is_empty() => Network::new(ptn, Some(zs))?,
            Some((zs, crossings)) => Network::with_crossings(ptn, zs, &crossings)?,
        }
        .with_rules(rules);
        let fare = self.fare.as_ref().map(FareDoc::build).transpose()?;
        if let Some(fs) = &fare {
            fs.validate(&network)?;
        }
        Ok(Instance {
            network,
            fare,
            query: self.query.clone(),
        })
    }

    /// Describes an expanded network node by node; virtual nodes are listed explicitly.
    pub fn from_network(net: &Network, fare: Option<&FareSystem>, query: Option<QueryDoc>) -> Self {
        let ptn = &net.ptn;
        let nodes = ptn
            .nodes()
            .iter()
            .map(|n| NodeDoc {
                id: n.id.clone(),
                kind: if n.is_virtual() { KindDoc::Virtual } else { KindDoc::Station },
                x: n.coords.map(|c| c.0),
                y: n.coords.map(|c| c.1),
            })
            .collect();
        let edges = ptn
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                from: ptn.id(e.a).to_string(),
                to: ptn.id(e.b).to_string(),
                length: e.length,
                empty_zones: Vec::new(),
            })
            .collect();
        let (zones, metropolitan) = match &net.zones {
            None => (Vec::new(), None),
            Some(zs) => {
                let zones = (0..zs.zone_count())
                    .map(|z| ZoneDoc {
                        id: zs.name(z).to_string(),
                        nodes: zs.members(z).map(|v| ptn.id(v).to_string()).collect(),
                    })
                    .collect();
                let metro = zs
                    .metropolitan()
                    .map(|m| m.iter().map(|&z| zs.name(z).to_string()).collect());
                (zones, metro)
            }
        };
        Self {
            metropolitan,
            nodes,
            edges,
            zones,
            rules: RulesDoc {
                forbid_virtual_endpoints: net.rules.forbid_virtual_endpoints,
            },
            fare: fare.map(FareDoc::from_fare),
            query,
        }
    }
}

/// A colored graph with terminals and a color budget.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct McsipDocument {
    pub nodes: Vec<String>,
    pub source: String,
    pub target: String,
    pub budget: usize,
    pub edges: Vec<ColoredEdgeDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColoredEdgeDoc {
    pub from: String,
    pub to: String,
    pub color: String,
}

impl McsipDocument {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn build(&self) -> Result<McsipInstance> {
        let ix = |id: &str| {
            self.nodes
                .iter()
                .position(|n| n == id)
                .ok_or_else(|| Error::InvalidReference(format!("unknown node `{id}`")))
        };
        let edges = self
            .edges
            .iter()
            .map(|e| Ok((ix(&e.from)?, ix(&e.to)?, e.color.clone())))
            .collect::<Result<Vec<_>>>()?;
        let inst = McsipInstance {
            nodes: self.nodes.clone(),
            edges,
            source: ix(&self.source)?,
            target: ix(&self.target)?,
            budget: self.budget,
        };
        inst.validate()?;
        Ok(inst)
    }

    pub fn from_instance(inst: &McsipInstance) -> Self {
        Self {
            nodes: inst.nodes.clone(),
            source: inst.nodes[inst.source].clone(),
            target: inst.nodes[inst.target].clone(),
            budget: inst.budget,
            edges: inst
                .edges
                .iter()
                .map(|(a, b, c)| ColoredEdgeDoc {
                    from: inst.nodes[*a].clone(),
                    to: inst.nodes[*b].clone(),
                    color: c.clone(),
                })
                .collect(),
        }
    }
}
