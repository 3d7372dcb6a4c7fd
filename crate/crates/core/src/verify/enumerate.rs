use std::ops::ControlFlow;

use crate::network::{NodeIx, Ptn};

/// Visits every walk with at most `max_edges` edges, shortest first; walks of equal
/// length come in lexicographic order of node indices. `start` filters first nodes.
pub fn for_each_walk<F>(ptn: &Ptn, max_edges: usize, start: impl Fn(NodeIx) -> bool, mut f: F) -> ControlFlow<()>
where
    F: FnMut(&[NodeIx]) -> ControlFlow<()>,
{
    let mut buf = Vec::with_capacity(max_edges + 1);
    for len in 0..=max_edges {
        for v in 0..ptn.node_count() {
            if !start(v) {
                continue;
            }
            buf.clear();
            buf.push(v);
            extend(ptn, len, &mut buf, &mut f)?;
        }
    }
    ControlFlow::Continue(())
}

fn extend<F>(ptn: &Ptn, len: usize, buf: &mut Vec<NodeIx>, f: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[NodeIx]) -> ControlFlow<()>,
{
    if buf.len() == len + 1 {
        return f(buf);
    }
    let v = *buf.last().expect("nonempty");
    for &(w, _) in ptn.neighbors(v) {
        buf.push(w);
        let flow = extend(ptn, len, buf, f);
        buf.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// All walks from `from` with at most `max_edges` edges, shortest first.
pub fn walks_from(ptn: &Ptn, from: NodeIx, max_edges: usize) -> Vec<Vec<NodeIx>> {
    let mut out = Vec::new();
    let _ = for_each_walk(ptn, max_edges, |v| v == from, |w| {
        out.push(w.to_vec());
        ControlFlow::Continue(())
    });
    out
}
