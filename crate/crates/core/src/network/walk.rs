use std::fmt;

use crate::error::{Error, Result};
use crate::network::ptn::{NodeIx, Ptn};

/// A node sequence along edges. Nodes may repeat.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk(Vec<NodeIx>);

impl Walk {
    pub fn new(nodes: Vec<NodeIx>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidWalk("a walk needs at least one node".into()));
        }
        Ok(Self(nodes))
    }

    pub fn single(v: NodeIx) -> Self {
        Self(vec![v])
    }

    /// Resolves node ids. Does not check adjacency; see [`Walk::validate`].
    pub fn from_ids(ptn: &Ptn, ids: &[&str]) -> Result<Self> {
        let nodes = ids
            .iter()
            .map(|id| ptn.index_of(id))
            .collect::<Result<Vec<_>>>()?;
        Self::new(nodes)
    }

    pub fn nodes(&self) -> &[NodeIx] {
        &self.0
    }

    pub fn into_nodes(self) -> Vec<NodeIx> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edge_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn first(&self) -> NodeIx {
        self.0[0]
    }

    pub fn last(&self) -> NodeIx {
        self.0[self.0.len() - 1]
    }

    pub fn steps(&self) -> impl Iterator<Item = (NodeIx, NodeIx)> + '_ {
        self.0.windows(2).map(|w| (w[0], w[1]))
    }

    /// True iff every consecutive pair is joined by an edge.
    pub fn validate(&self, ptn: &Ptn) -> Result<bool> {
        if let Some(&v) = self.0.iter().find(|&&v| v >= ptn.node_count()) {
            return Err(Error::InvalidReference(format!("unknown node index {v}")));
        }
        Ok(self.steps().all(|(a, b)| ptn.edge_between(a, b).is_some()))
    }

    pub fn require_valid(&self, ptn: &Ptn) -> Result<()> {
        if self.validate(ptn)? {
            Ok(())
        } else {
            let (a, b) = self
                .steps()
                .find(|&(a, b)| ptn.edge_between(a, b).is_none())
                .expect("an invalid walk has a missing edge");
            Err(Error::InvalidWalk(format!(
                "no edge between `{}` and `{}`",
                ptn.id(a),
                ptn.id(b)
            )))
        }
    }

    /// Sum of traversed edge lengths, with multiplicity.
    pub fn length(&self, ptn: &Ptn) -> f64 {
        self.steps()
            .map(|(a, b)| ptn.length(a, b).expect("walk must be valid"))
            .sum()
    }

    /// Euclidean distance between the first and the last node.
    pub fn beeline(&self, ptn: &Ptn) -> Result<f64> {
        let coords = |v: NodeIx| {
            ptn.node(v).coords.ok_or_else(|| {
                Error::Config(format!("node `{}` has no coordinates", ptn.id(v)))
            })
        };
        let (x1, y1) = coords(self.first())?;
        let (x2, y2) = coords(self.last())?;
        Ok((x2 - x1).hypot(y2 - y1))
    }

    /// Number of stations after the start. Virtual nodes are not stations, so on
    /// networks without virtual nodes this is the edge count.
    pub fn station_count(&self, ptn: &Ptn) -> usize {
        self.0[1..].iter().filter(|&&v| !ptn.is_virtual(v)).count()
    }

    /// Contiguous slice `i..=j` (0-based, inclusive).
    pub fn subwalk(&self, i: usize, j: usize) -> Result<Walk> {
        if i > j || j >= self.0.len() {
            return Err(Error::InvalidWalk(format!(
                "subwalk {i}..={j} out of range for a walk of {} nodes",
                self.0.len()
            )));
        }
        Ok(Walk(self.0[i..=j].to_vec()))
    }

    /// Concatenation; the junction node is kept once.
    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if self.last() != other.first() {
            return Err(Error::InvalidWalk(
                "concatenated walks must meet at a common node".into(),
            ));
        }
        let mut nodes = self.0.clone();
        nodes.extend_from_slice(&other.0[1..]);
        Ok(Walk(nodes))
    }

    pub fn reversed(&self) -> Walk {
        let mut nodes = self.0.clone();
        nodes.reverse();
        Walk(nodes)
    }

    /// Position of `part` as a contiguous slice of `self`, if any.
    pub fn find_slice(&self, part: &[NodeIx]) -> Option<usize> {
        if part.len() > self.0.len() {
            return None;
        }
        self.0.windows(part.len()).position(|w| w == part)
    }

    pub fn display<'a>(&'a self, ptn: &'a Ptn) -> WalkDisplay<'a> {
        WalkDisplay { walk: self, ptn }
    }

    pub fn ids(&self, ptn: &Ptn) -> Vec<String> {
        self.0.iter().map(|&v| ptn.id(v).to_string()).collect()
    }
}

pub struct WalkDisplay<'a> {
    walk: &'a Walk,
    ptn: &'a Ptn,
}

impl fmt::Display for WalkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &v) in self.walk.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.ptn.id(v))?;
        }
        write!(f, ")")
    }
}

/// A ticket `(H_1, .., H_t)` together with the positions in the traveled walk where
/// each part `W_j` starts and ends (inclusive; consecutive parts share a node).
#[derive(Clone, Debug, PartialEq)]
pub struct Ticket {
    pub segments: Vec<Walk>,
    pub decomposition: Vec<(usize, usize)>,
}

impl Ticket {
    pub fn standard(w: &Walk) -> Self {
        Self {
            segments: vec![w.clone()],
            decomposition: vec![(0, w.len() - 1)],
        }
    }

    pub fn segment_count(&self) -> usize {
        self.segments.len()
    }

    /// Checks the stored decomposition against `traveled`.
    pub fn is_valid_for(&self, ptn: &Ptn, traveled: &Walk, forbid_virtual_endpoints: bool) -> Result<bool> {
        for h in &self.segments {
            if !h.validate(ptn)? {
                return Ok(false);
            }
        }
        if !traveled.validate(ptn)? {
            return Ok(false);
        }
        let t = self.segments.len();
        if t == 0 || self.decomposition.len() != t {
            return Ok(false);
        }
        let last = traveled.len() - 1;
        let mut expected_start = 0;
        for (j, &(a, b)) in self.decomposition.iter().enumerate() {
            if a != expected_start || a > b || b > last {
                return Ok(false);
            }
            let part = &traveled.nodes()[a..=b];
            if self.segments[j].find_slice(part).is_none() {
                return Ok(false);
            }
            expected_start = b;
        }
        if expected_start != last {
            return Ok(false);
        }
        if forbid_virtual_endpoints && !self.endpoints_allowed(ptn, traveled) {
            return Ok(false);
        }
        Ok(true)
    }

    fn endpoints_allowed(&self, ptn: &Ptn, traveled: &Walk) -> bool {
        let split_ok = self
            .decomposition
            .iter()
            .all(|&(a, b)| !ptn.is_virtual(traveled.nodes()[a]) && !ptn.is_virtual(traveled.nodes()[b]));
        let segments_ok = self
            .segments
            .iter()
            .all(|h| !ptn.is_virtual(h.first()) && !ptn.is_virtual(h.last()));
        split_ok && segments_ok
    }
}

/// Searches for a decomposition of `traveled` into consecutive parts, the j-th part a
/// contiguous slice of `segments[j]`. Dynamic program over (position, segment).
pub fn find_decomposition(segments: &[Walk], traveled: &Walk) -> Option<Vec<(usize, usize)>> {
    let n = traveled.len();
    let t = segments.len();
    if t == 0 {
        return None;
    }
    // reach[j][p]: the first j segments cover traveled[0..=p] exactly; stores the part start.
    let mut reach: Vec<Vec<Option<usize>>> = vec![vec![None; n]; t + 1];
    reach[0][0] = Some(0);
    for j in 0..t {
        let h = segments[j].nodes();
        for p in 0..n {
            if reach[j][p].is_none() {
                continue;
            }
            // part traveled[p..=q] must be h[o..=o + q - p] for some offset o
            for o in 0..h.len() {
                if h[o] != traveled.nodes()[p] {
                    continue;
                }
                let mut q = p;
                loop {
                    if reach[j + 1][q].is_none() {
                        reach[j + 1][q] = Some(p);
                    }
                    let next = o + (q - p) + 1;
                    if q + 1 >= n || next >= h.len() || h[next] != traveled.nodes()[q + 1] {
                        break;
                    }
                    q += 1;
                }
            }
        }
    }
    reach[t][n - 1]?;
    let mut parts = vec![(0, 0); t];
    let mut end = n - 1;
    for j in (1..=t).rev() {
        let start = reach[j][end].expect("reachable state has a start");
        parts[j - 1] = (start, end);
        end = start;
    }
    Some(parts)
}

/// True iff some decomposition makes `segments` a ticket of `traveled`.
pub fn is_ticket_of(ptn: &Ptn, segments: &[Walk], traveled: &Walk) -> Result<bool> {
    for h in segments {
        if !h.validate(ptn)? {
            return Ok(false);
        }
    }
    Ok(find_decomposition(segments, traveled).is_some())
}
