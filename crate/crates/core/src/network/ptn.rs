use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};

/// Dense node index, in declaration order.
pub type NodeIx = usize;
pub type EdgeIx = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Station,
    /// A non-station node that marks an empty zone crossed by an edge.
    Virtual,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Node {
    pub id: String,
    pub kind: NodeKind,
    pub coords: Option<(f64, f64)>,
}

impl Node {
    pub fn station(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind: NodeKind::Station,
            coords: None,
        }
    }

    pub fn at(id: impl Into<String>, x: f64, y: f64) -> Self {
        Self {
            id: id.into(),
            kind: NodeKind::Station,
            coords: Some((x, y)),
        }
    }

    pub fn virtual_node(id: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            kind: NodeKind::Virtual,
            coords: None,
        }
    }

    pub fn is_virtual(&self) -> bool {
        self.kind == NodeKind::Virtual
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub a: NodeIx,
    pub b: NodeIx,
    pub length: f64,
}

impl Edge {
    pub fn other(&self, v: NodeIx) -> NodeIx {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }
}

/// A public transport network: an undirected, simple, connected graph with
/// nonnegative edge lengths.
#[derive(Clone, Debug)]
pub struct Ptn {
    nodes: Vec<Node>,
    edges: Vec<Edge>,
    // neighbours sorted by node index
    adjacency: Vec<Vec<(NodeIx, EdgeIx)>>,
    edge_lookup: HashMap<(NodeIx, NodeIx), EdgeIx>,
    ids: HashMap<String, NodeIx>,
}

impl Ptn {
    pub fn new(nodes: Vec<Node>, edges: Vec<Edge>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidNetwork("network has no nodes".into()));
        }
        let mut ids = HashMap::with_capacity(nodes.len());
        for (ix, node) in nodes.iter().enumerate() {
            if ids.insert(node.id.clone(), ix).is_some() {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate node id `{}`",
                    node.id
                )));
            }
            if let Some((x, y)) = node.coords {
                if !x.is_finite() || !y.is_finite() {
                    return Err(Error::InvalidNetwork(format!(
                        "node `{}` has non-finite coordinates",
                        node.id
                    )));
                }
            }
        }

        let mut adjacency = vec![Vec::new(); nodes.len()];
        let mut edge_lookup = HashMap::with_capacity(edges.len());
        for (ix, e) in edges.iter().enumerate() {
            if e.a >= nodes.len() || e.b >= nodes.len() {
                return Err(Error::InvalidReference(format!("edge {ix} has an unknown endpoint")));
            }
            if e.a == e.b {
                return Err(Error::InvalidNetwork(format!(
                    "loop at node `{}`",
                    nodes[e.a].id
                )));
            }
            if !(e.length.is_finite() && e.length >= 0.0) {
                return Err(Error::InvalidNetwork(format!(
                    "edge {{{}, {}}} has invalid length {}",
                    nodes[e.a].id, nodes[e.b].id, e.length
                )));
            }
            let key = (e.a.min(e.b), e.a.max(e.b));
            if edge_lookup.insert(key, ix).is_some() {
                return Err(Error::InvalidNetwork(format!(
                    "parallel edges between `{}` and `{}`",
                    nodes[e.a].id, nodes[e.b].id
                )));
            }
            adjacency[e.a].push((e.b, ix));
            adjacency[e.b].push((e.a, ix));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        let ptn = Self {
            nodes,
            edges,
            adjacency,
            edge_lookup,
            ids,
        };
        if !ptn.is_connected() {
            return Err(Error::InvalidNetwork("network is not connected".into()));
        }
        Ok(ptn)
    }

    /// Builds a network from string ids; nodes are created in order of first appearance.
    pub fn from_edge_list<'a>(edges: &[(&'a str, &'a str, f64)]) -> Result<Self> {
        let mut nodes: Vec<Node> = Vec::new();
        let mut ix: HashMap<&'a str, NodeIx> = HashMap::new();
        let mut out = Vec::with_capacity(edges.len());
        for &(a, b, length) in edges {
            let mut get = |id: &'a str| {
                *ix.entry(id).or_insert_with(|| {
                    nodes.push(Node::station(id));
                    nodes.len() - 1
                })
            };
            let (a, b) = (get(a), get(b));
            out.push(Edge { a, b, length });
        }
        Self::new(nodes, out)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node(&self, v: NodeIx) -> &Node {
        &self.nodes[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeIx) -> &Edge {
        &self.edges[e]
    }

    pub fn neighbors(&self, v: NodeIx) -> &[(NodeIx, EdgeIx)] {
        &self.adjacency[v]
    }

    pub fn edge_between(&self, a: NodeIx, b: NodeIx) -> Option<EdgeIx> {
        self.edge_lookup.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn length(&self, a: NodeIx, b: NodeIx) -> Option<f64> {
        self.edge_between(a, b).map(|e| self.edges[e].length)
    }

    pub fn index_of(&self, id: &str) -> Result<NodeIx> {
        self.ids
            .get(id)
            .copied()
            .ok_or_else(|| Error::InvalidReference(format!("unknown node `{id}`")))
    }

    pub fn id(&self, v: NodeIx) -> &str {
        &self.nodes[v].id
    }

    pub fn is_virtual(&self, v: NodeIx) -> bool {
        self.nodes[v].is_virtual()
    }

    pub fn stations(&self) -> impl Iterator<Item = NodeIx> + '_ {
        (0..self.nodes.len()).filter(|&v| !self.is_virtual(v))
    }

    pub fn max_edge_length(&self) -> f64 {
        self.edges.iter().map(|e| e.length).fold(0.0, f64::max)
    }

    /// Checks that every station carries planar coordinates.
    pub fn require_coordinates(&self) -> Result<()> {
        match self
            .nodes
            .iter()
            .find(|n| !n.is_virtual() && n.coords.is_none())
        {
            Some(n) => Err(Error::Config(format!(
                "station `{}` has no coordinates",
                n.id
            ))),
            None => Ok(()),
        }
    }

    fn is_connected(&self) -> bool {
        self.component_of(0, |_| true).iter().filter(|&&b| b).count() == self.nodes.len()
    }

    /// Marks the nodes reachable from `start` through nodes accepted by `keep`.
    pub fn component_of(&self, start: NodeIx, keep: impl Fn(NodeIx) -> bool) -> Vec<bool> {
        let mut seen = vec![false; self.nodes.len()];
        if !keep(start) {
            return seen;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &(w, _) in &self.adjacency[v] {
                if !seen[w] && keep(w) {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Number of connected components of the subgraph induced by `members`.
    pub fn induced_components(&self, members: &[bool]) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut count = 0;
        for v in 0..self.nodes.len() {
            if members[v] && !seen[v] {
                count += 1;
                let comp = self.component_of(v, |w| members[w]);
                for (w, inside) in comp.into_iter().enumerate() {
                    seen[w] |= inside;
                }
            }
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_parallel_edges_and_disconnection() {
        assert!(Ptn::from_edge_list(&[("a", "a", 1.0)]).is_err());
        assert!(Ptn::from_edge_list(&[("a", "b", 1.0), ("b", "a", 2.0)]).is_err());
        let nodes = vec![Node::station("a"), Node::station("b"), Node::station("c")];
        let edges = vec![Edge { a: 0, b: 1, length: 1.0 }];
        assert!(matches!(
            Ptn::new(nodes, edges),
            Err(Error::InvalidNetwork(_))
        ));
    }

    #[test]
    fn rejects_negative_lengths() {
        assert!(Ptn::from_edge_list(&[("a", "b", -1.0)]).is_err());
        assert!(Ptn::from_edge_list(&[("a", "b", f64::NAN)]).is_err());
    }

    #[test]
    fn neighbours_are_sorted() {
        let ptn = Ptn::from_edge_list(&[("a", "d", 1.0), ("a", "c", 1.0), ("a", "b", 1.0)]).unwrap();
        let ns: Vec<_> = ptn.neighbors(0).iter().map(|&(w, _)| w).collect();
        assert_eq!(ns, vec![1, 2, 3]);
        assert_eq!(ptn.length(2, 0), Some(1.0));
        assert_eq!(ptn.edge_between(1, 2), None);
    }

    #[test]
    fn induced_component_count() {
        let ptn = Ptn::from_edge_list(&[("a", "b", 1.0), ("b", "c", 1.0), ("c", "d", 1.0)]).unwrap();
        assert_eq!(ptn.induced_components(&[true, false, true, true]), 2);
        assert_eq!(ptn.induced_components(&[true, true, true, true]), 1);
    }
}
