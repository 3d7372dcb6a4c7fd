use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::network::ptn::{Edge, EdgeIx, Node, NodeIx, Ptn};
use crate::network::zones::{ZoneIx, ZoneStructure};

/// Virtual nodes inserted on one physical edge, listed from `a` towards `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub a: NodeIx,
    pub b: NodeIx,
    pub inner: Vec<NodeIx>,
}

impl Chain {
    /// Interior nodes when walking from `from` to the other end.
    pub fn interior_from(&self, from: NodeIx) -> Vec<NodeIx> {
        if from == self.a {
            self.inner.clone()
        } else {
            self.inner.iter().rev().copied().collect()
        }
    }
}

/// Subdivides every edge listed in `crossings` by one virtual node per crossed empty
/// zone, in order. Original nodes keep their indices; virtual nodes are appended. The
/// original length is split into equal parts.
pub fn expand_empty_zones(
    ptn: &Ptn,
    zones: &ZoneStructure,
    crossings: &[(EdgeIx, Vec<ZoneIx>)],
) -> Result<(Ptn, ZoneStructure, Vec<Chain>)> {
    let mut by_edge: HashMap<EdgeIx, &[ZoneIx]> = HashMap::new();
    for (e, list) in crossings {
        if *e >= ptn.edge_count() {
            return Err(Error::InvalidReference(format!(
                "crossing list on unknown edge {e}"
            )));
        }
        if let Some(&z) = list.iter().find(|&&z| z >= zones.zone_count()) {
            return Err(Error::InvalidReference(format!("unknown zone index {z}")));
        }
        if by_edge.insert(*e, list).is_some() {
            return Err(Error::InvalidNetwork(format!(
                "edge {e} has two crossing lists"
            )));
        }
    }

    let mut nodes = ptn.nodes().to_vec();
    let mut zs = zones.clone();
    let mut edges = Vec::with_capacity(ptn.edge_count());
    let mut chains = Vec::new();
    for (ix, edge) in ptn.edges().iter().enumerate() {
        let list = by_edge.get(&ix).copied().unwrap_or(&[]);
        if list.is_empty() {
            edges.push(*edge);
            continue;
        }
        let parts = list.len() + 1;
        let piece = edge.length / parts as f64;
        let (pa, pb) = (&ptn.node(edge.a).coords, &ptn.node(edge.b).coords);
        let mut prev = edge.a;
        let mut inner = Vec::with_capacity(list.len());
        for (i, &z) in list.iter().enumerate() {
            let id = format!("{}~{}#{}", ptn.id(edge.a), ptn.id(edge.b), i + 1);
            let mut node = Node::virtual_node(id);
            if let (Some((x1, y1)), Some((x2, y2))) = (pa, pb) {
                let t = (i + 1) as f64 / parts as f64;
                node.coords = Some((x1 + t * (x2 - x1), y1 + t * (y2 - y1)));
            }
            nodes.push(node);
            let v = nodes.len() - 1;
            zs.push_node(vec![z]);
            edges.push(Edge {
                a: prev,
                b: v,
                length: piece,
            });
            inner.push(v);
            prev = v;
        }
        // keep the total exact even when the division rounds
        let used = piece * list.len() as f64;
        edges.push(Edge {
            a: prev,
            b: edge.b,
            length: edge.length - used,
        });
        chains.push(Chain {
            a: edge.a,
            b: edge.b,
            inner,
        });
    }
    let expanded = Ptn::new(nodes, edges)?;
    Ok((expanded, zs, chains))
}
