use crate::error::Result;
use crate::network::{Network, NodeIx, Ptn, Walk, ZoneIx, ZoneStructure};
use crate::routing::dijkstra::shortest_path;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolvedNode {
    Station(NodeIx),
    Member(NodeIx, ZoneIx),
}

/// One node per station and one per (station, zone) membership. Station nodes attach
/// to their memberships at weight 1; memberships of adjacent stations are joined at
/// weight 0 for equal zones and 1 otherwise.
#[derive(Clone, Debug)]
pub struct OverlapsResolvedGraph {
    nodes: Vec<ResolvedNode>,
    adjacency: Vec<Vec<(usize, u32)>>,
    station: Vec<Option<usize>>,
    members: Vec<Vec<usize>>,
    attach_edges: usize,
    member_edges: usize,
}

impl OverlapsResolvedGraph {
    /// With `compact`, stations in a single zone are represented by their membership
    /// node alone.
    pub fn build(ptn: &Ptn, zones: &ZoneStructure, compact: bool) -> Self {
        let n = ptn.node_count();
        let mut nodes = Vec::new();
        let mut station = vec![None; n];
        let mut members = vec![Vec::new(); n];
        for v in 0..n {
            let zs = zones.zones_of(v);
            if !(compact && zs.len() == 1) {
                station[v] = Some(nodes.len());
                nodes.push(ResolvedNode::Station(v));
            }
            for &z in zs {
                members[v].push(nodes.len());
                nodes.push(ResolvedNode::Member(v, z));
            }
        }
        let mut adjacency = vec![Vec::new(); nodes.len()];
        let mut attach_edges = 0;
        for v in 0..n {
            if let Some(s) = station[v] {
                for &m in &members[v] {
                    adjacency[s].push((m, 1));
                    adjacency[m].push((s, 1));
                    attach_edges += 1;
                }
            }
        }
        let mut member_edges = 0;
        for e in ptn.edges() {
            for &ma in &members[e.a] {
                for &mb in &members[e.b] {
                    let w = u32::from(zone_of(nodes[ma]) != zone_of(nodes[mb]));
                    adjacency[ma].push((mb, w));
                    adjacency[mb].push((ma, w));
                    member_edges += 1;
                }
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Self {
            nodes,
            adjacency,
            station,
            members,
            attach_edges,
            member_edges,
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.attach_edges + self.member_edges
    }

    pub fn attach_edge_count(&self) -> usize {
        self.attach_edges
    }

    pub fn member_edge_count(&self) -> usize {
        self.member_edges
    }

    pub fn node(&self, i: usize) -> ResolvedNode {
        self.nodes[i]
    }

    pub fn neighbors(&self, i: usize) -> &[(usize, u32)] {
        &self.adjacency[i]
    }

    pub fn members_of(&self, v: NodeIx) -> &[usize] {
        &self.members[v]
    }

    /// Where searches from or to `v` start: its station node, or its only membership.
    fn terminal(&self, v: NodeIx) -> usize {
        self.station[v].unwrap_or(self.members[v][0])
    }
}

fn zone_of(node: ResolvedNode) -> ZoneIx {
    match node {
        ResolvedNode::Member(_, z) => z,
        ResolvedNode::Station(_) => unreachable!("only memberships carry zones"),
    }
}

/// A walk with a per-visit zone assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assigned {
    pub walk: Walk,
    pub assignment: Vec<ZoneIx>,
    pub zone_count: usize,
}

/// Cheapest path for a zone tariff with overlap areas: a shortest path in the
/// overlaps-resolved graph, projected back to the network.
pub fn cheapest_path_zoa(net: &Network, x: NodeIx, y: NodeIx, compact: bool) -> Result<Assigned> {
    let zones = net.zones()?;
    let g = OverlapsResolvedGraph::build(&net.ptn, zones, compact);
    let (s, t) = (g.terminal(x), g.terminal(y));
    let label = shortest_path(g.node_count(), s, t, |i| g.adjacency[i].clone())
        .expect("network is connected");
    let attach = label
        .path
        .windows(2)
        .filter(|p| {
            matches!(g.nodes[p[0]], ResolvedNode::Station(_))
                || matches!(g.nodes[p[1]], ResolvedNode::Station(_))
        })
        .count() as u32;
    let mut nodes = Vec::new();
    let mut assignment = Vec::new();
    for &i in &label.path {
        if let ResolvedNode::Member(v, z) = g.nodes[i] {
            debug_assert!(nodes.last() != Some(&v), "a visit is never split");
            nodes.push(v);
            assignment.push(z);
        }
    }
    if nodes.is_empty() {
        nodes.push(x);
        assignment.push(zones.zones_of(x)[0]);
    }
    Ok(Assigned {
        walk: Walk::new(nodes)?,
        assignment,
        zone_count: (label.cost - attach) as usize + 1,
    })
}

/// Cheapest zone assignment for a fixed walk. Each visit gets its own copy of the
/// station's memberships, so repeated visits are assigned independently; the search
/// runs layer by layer along the walk. Ties pick the smaller zone index.
pub fn minimal_assignment(zones: &ZoneStructure, w: &Walk) -> (Vec<ZoneIx>, usize) {
    let layers: Vec<&[ZoneIx]> = w.nodes().iter().map(|&v| zones.zones_of(v)).collect();
    let mut cost: Vec<u32> = vec![0; layers[0].len()];
    let mut back: Vec<Vec<usize>> = vec![vec![0; layers[0].len()]];
    for i in 1..layers.len() {
        let mut next = Vec::with_capacity(layers[i].len());
        let mut from = Vec::with_capacity(layers[i].len());
        for &z in layers[i] {
            let (j, c) = layers[i - 1]
                .iter()
                .enumerate()
                .map(|(j, &zp)| (j, cost[j] + u32::from(zp != z)))
                .min_by_key(|&(j, c)| (c, j))
                .expect("every node has a zone");
            next.push(c);
            from.push(j);
        }
        cost = next;
        back.push(from);
    }
    let (mut j, best) = cost
        .iter()
        .enumerate()
        .min_by_key(|&(j, &c)| (c, j))
        .map(|(j, &c)| (j, c))
        .expect("every node has a zone");
    let mut assignment = vec![0; layers.len()];
    for i in (0..layers.len()).rev() {
        assignment[i] = layers[i][j];
        j = back[i][j];
    }
    (assignment, best as usize + 1)
}
