use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::network::ptn::{NodeIx, Ptn};

pub type ZoneIx = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZoneMode {
    /// Every node lies in exactly one zone.
    Partition,
    /// Nodes may lie in several zones (overlap areas).
    Cover,
}

/// Assignment of nodes to tariff zones, plus an optional metropolitan zone.
#[derive(Clone, Debug, PartialEq)]
pub struct ZoneStructure {
    names: Vec<String>,
    index: HashMap<String, ZoneIx>,
    membership: Vec<Vec<ZoneIx>>,
    metropolitan: Option<Vec<ZoneIx>>,
}

impl ZoneStructure {
    /// `membership[v]` lists the zones of node `v`. Zones may still be empty here;
    /// [`ZoneStructure::validate`] enforces the full invariants.
    pub fn new(
        names: Vec<String>,
        mut membership: Vec<Vec<ZoneIx>>,
        metropolitan: Option<Vec<ZoneIx>>,
    ) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (ix, name) in names.iter().enumerate() {
            if index.insert(name.clone(), ix).is_some() {
                return Err(Error::InvalidNetwork(format!("duplicate zone id `{name}`")));
            }
        }
        for zones in &mut membership {
            zones.sort_unstable();
            zones.dedup();
            if let Some(&z) = zones.iter().find(|&&z| z >= names.len()) {
                return Err(Error::InvalidReference(format!("unknown zone index {z}")));
            }
        }
        let metropolitan = match metropolitan {
            Some(mut m) => {
                m.sort_unstable();
                m.dedup();
                if let Some(&z) = m.iter().find(|&&z| z >= names.len()) {
                    return Err(Error::InvalidReference(format!("unknown zone index {z}")));
                }
                Some(m)
            }
            None => None,
        };
        Ok(Self {
            names,
            index,
            membership,
            metropolitan,
        })
    }

    /// Builds a partition from one zone name per node.
    pub fn partition(per_node: &[&str]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut membership = Vec::with_capacity(per_node.len());
        for &name in per_node {
            let ix = match names.iter().position(|n| n == name) {
                Some(ix) => ix,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            };
            membership.push(vec![ix]);
        }
        Self::new(names, membership, None)
    }

    /// Builds a cover from a list of zone names per node.
    pub fn cover(per_node: &[&[&str]]) -> Result<Self> {
        let mut names: Vec<String> = Vec::new();
        let mut membership = Vec::with_capacity(per_node.len());
        for zones in per_node {
            let mut set = Vec::new();
            for &name in *zones {
                let ix = match names.iter().position(|n| n == name) {
                    Some(ix) => ix,
                    None => {
                        names.push(name.to_string());
                        names.len() - 1
                    }
                };
                set.push(ix);
            }
            membership.push(set);
        }
        Self::new(names, membership, None)
    }

    pub fn with_metropolitan(mut self, zones: &[&str]) -> Result<Self> {
        let mut m = zones
            .iter()
            .map(|z| self.zone_index(z))
            .collect::<Result<Vec<_>>>()?;
        m.sort_unstable();
        m.dedup();
        self.metropolitan = Some(m);
        Ok(self)
    }

    pub fn validate(&self, ptn: &Ptn) -> Result<()> {
        if self.membership.len() != ptn.node_count() {
            return Err(Error::InvalidNetwork(format!(
                "zone assignment covers {} nodes, network has {}",
                self.membership.len(),
                ptn.node_count()
            )));
        }
        for (v, zones) in self.membership.iter().enumerate() {
            if zones.is_empty() {
                return Err(Error::InvalidNetwork(format!(
                    "node `{}` belongs to no zone",
                    ptn.id(v)
                )));
            }
        }
        let mut populated = vec![false; self.names.len()];
        for zones in &self.membership {
            for &z in zones {
                populated[z] = true;
            }
        }
        if let Some(z) = populated.iter().position(|p| !p) {
            return Err(Error::InvalidNetwork(format!(
                "zone `{}` contains no node",
                self.names[z]
            )));
        }
        if self.metropolitan.is_some() {
            let inside = self.metropolitan_mask();
            if !inside.iter().any(|&b| b) {
                return Err(Error::InvalidNetwork("metropolitan zone is empty".into()));
            }
            if ptn.induced_components(&inside) != 1 {
                return Err(Error::InvalidNetwork(
                    "metropolitan zone is not connected".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn mode(&self) -> ZoneMode {
        if self.membership.iter().all(|z| z.len() <= 1) {
            ZoneMode::Partition
        } else {
            ZoneMode::Cover
        }
    }

    pub fn require_partition(&self, what: &str) -> Result<()> {
        match self.mode() {
            ZoneMode::Partition => Ok(()),
            ZoneMode::Cover => Err(Error::Config(format!(
                "{what} needs a zone partition, but some node lies in several zones"
            ))),
        }
    }

    pub fn zone_count(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, z: ZoneIx) -> &str {
        &self.names[z]
    }

    pub fn zone_index(&self, name: &str) -> Result<ZoneIx> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::InvalidReference(format!("unknown zone `{name}`")))
    }

    pub fn zones_of(&self, v: NodeIx) -> &[ZoneIx] {
        &self.membership[v]
    }

    /// The unique zone of `v` in partition mode.
    pub fn zone_of(&self, v: NodeIx) -> ZoneIx {
        self.membership[v][0]
    }

    pub fn membership(&self) -> &[Vec<ZoneIx>] {
        &self.membership
    }

    pub fn members(&self, z: ZoneIx) -> impl Iterator<Item = NodeIx> + '_ {
        self.membership
            .iter()
            .enumerate()
            .filter(move |(_, zs)| zs.contains(&z))
            .map(|(v, _)| v)
    }

    /// Zone border weight of the edge {a, b}: 0 iff both ends share their zone set.
    pub fn border(&self, a: NodeIx, b: NodeIx) -> u32 {
        u32::from(self.membership[a] != self.membership[b])
    }

    pub fn metropolitan(&self) -> Option<&[ZoneIx]> {
        self.metropolitan.as_deref()
    }

    pub fn in_metropolitan(&self, v: NodeIx) -> bool {
        match &self.metropolitan {
            Some(m) => self.membership[v].iter().all(|z| m.contains(z)),
            None => false,
        }
    }

    pub fn metropolitan_mask(&self) -> Vec<bool> {
        (0..self.membership.len())
            .map(|v| self.in_metropolitan(v))
            .collect()
    }

    /// Number of connected components of each zone's induced subgraph.
    pub fn zone_components(&self, ptn: &Ptn) -> Vec<usize> {
        (0..self.names.len())
            .map(|z| {
                let mask: Vec<bool> = self.membership.iter().map(|zs| zs.contains(&z)).collect();
                ptn.induced_components(&mask)
            })
            .collect()
    }

    pub(crate) fn push_node(&mut self, zones: Vec<ZoneIx>) {
        self.membership.push(zones);
    }
}
