//! Networks, zones, walks and tickets.

mod expand;
mod ptn;
mod walk;
mod zones;

pub use expand::{expand_empty_zones, Chain};
pub use ptn::{Edge, EdgeIx, Node, NodeIx, NodeKind, Ptn};
pub use walk::{find_decomposition, is_ticket_of, Ticket, Walk, WalkDisplay};
pub use zones::{ZoneIx, ZoneMode, ZoneStructure};

use crate::error::{Error, Result};

/// Ticket rules that the model leaves open.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TicketRules {
    /// Disallow virtual nodes as walk endpoints and as stopover points.
    pub forbid_virtual_endpoints: bool,
}

/// A network with its zone structure, after empty-zone expansion.
#[derive(Clone, Debug)]
pub struct Network {
    pub ptn: Ptn,
    pub zones: Option<ZoneStructure>,
    pub chains: Vec<Chain>,
    pub rules: TicketRules,
}

impl Network {
    pub fn new(ptn: Ptn, zones: Option<ZoneStructure>) -> Result<Self> {
        if let Some(z) = &zones {
            z.validate(&ptn)?;
        }
        Ok(Self {
            ptn,
            zones,
            chains: Vec::new(),
            rules: TicketRules::default(),
        })
    }

    /// Expands the empty zones listed per edge, then validates the result.
    pub fn with_crossings(
        ptn: Ptn,
        zones: ZoneStructure,
        crossings: &[(EdgeIx, Vec<ZoneIx>)],
    ) -> Result<Self> {
        let (ptn, zones, chains) = expand_empty_zones(&ptn, &zones, crossings)?;
        zones.validate(&ptn)?;
        Ok(Self {
            ptn,
            zones: Some(zones),
            chains,
            rules: TicketRules::default(),
        })
    }

    pub fn with_rules(mut self, rules: TicketRules) -> Self {
        self.rules = rules;
        self
    }

    pub fn zones(&self) -> Result<&ZoneStructure> {
        self.zones
            .as_ref()
            .ok_or_else(|| Error::Config("fare system needs a zone structure".into()))
    }

    /// Nodes allowed as start, end or stopover.
    pub fn may_stop_at(&self, v: NodeIx) -> bool {
        !(self.rules.forbid_virtual_endpoints && self.ptn.is_virtual(v))
    }

    /// Resolves node ids to a walk. Consecutive stations joined by an expanded edge
    /// get the virtual nodes of that edge filled in.
    pub fn resolve_walk(&self, ids: &[&str]) -> Result<Walk> {
        let raw = Walk::from_ids(&self.ptn, ids)?;
        let mut nodes = vec![raw.first()];
        for (a, b) in raw.steps() {
            if self.ptn.edge_between(a, b).is_none() {
                if let Some(chain) = self
                    .chains
                    .iter()
                    .find(|c| (c.a == a && c.b == b) || (c.a == b && c.b == a))
                {
                    nodes.extend(chain.interior_from(a));
                }
            }
            nodes.push(b);
        }
        let walk = Walk::new(nodes)?;
        walk.require_valid(&self.ptn)?;
        Ok(walk)
    }
}
