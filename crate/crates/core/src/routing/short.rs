use crate::network::{NodeIx, Ptn, Walk};

/// A shortest walk with at most `max_stations` station hops whose length is at most
/// `max_length`, by hop-layered Bellman-Ford. `None` bounds are infinite; both are
/// clamped first (stations to `|V| - 1`, length to the longest edge times `|V|`).
///
/// Entering a virtual node costs no hop, so such arcs are relaxed inside the current
/// layer. Predecessors carry forward from layer to layer and recovery walks back one
/// layer per station.
pub fn short_distance_path(
    ptn: &Ptn,
    max_stations: Option<usize>,
    max_length: Option<f64>,
    x: NodeIx,
    y: NodeIx,
) -> Option<Walk> {
    let n = ptn.node_count();
    let s_max = max_stations.map_or(n - 1, |s| s.min(n - 1));
    let cap = ptn.max_edge_length() * n as f64;
    let l_max = max_length.map_or(cap, |l| l.min(cap));

    let mut d = vec![vec![f64::INFINITY; n]; s_max + 1];
    let mut pi: Vec<Vec<Option<NodeIx>>> = vec![vec![None; n]; s_max + 1];
    d[0][x] = 0.0;
    relax_virtual(ptn, &mut d[0], &mut pi[0]);
    for s in 1..=s_max {
        let (done, rest) = d.split_at_mut(s);
        let (prev, cur) = (&done[s - 1], &mut rest[0]);
        cur.copy_from_slice(prev);
        pi[s] = pi[s - 1].clone();
        for v in ptn.stations() {
            for &(w, e) in ptn.neighbors(v) {
                let via = prev[w] + ptn.edge(e).length;
                if cur[v] > via {
                    cur[v] = via;
                    pi[s][v] = Some(w);
                }
            }
        }
        relax_virtual(ptn, &mut d[s], &mut pi[s]);
    }

    if d[s_max][y] > l_max {
        return None;
    }
    let mut rev = vec![y];
    let mut cur = y;
    let mut s = s_max;
    let mut guard = (s_max + 1) * n + 1;
    while cur != x {
        let station = !ptn.is_virtual(cur);
        cur = pi[s][cur].expect("finite distances have predecessors");
        rev.push(cur);
        if station {
            s -= 1;
        }
        guard -= 1;
        assert!(guard > 0, "predecessor recovery does not terminate");
    }
    rev.reverse();
    Some(Walk::new(rev).expect("nonempty"))
}

/// Zero-hop arcs into virtual nodes, relaxed to a fixpoint within one layer.
fn relax_virtual(ptn: &Ptn, d: &mut [f64], pi: &mut [Option<NodeIx>]) {
    let virtual_nodes: Vec<NodeIx> = (0..ptn.node_count()).filter(|&v| ptn.is_virtual(v)).collect();
    if virtual_nodes.is_empty() {
        return;
    }
    loop {
        let mut changed = false;
        for &v in &virtual_nodes {
            for &(w, e) in ptn.neighbors(v) {
                let via = d[w] + ptn.edge(e).length;
                if d[v] > via {
                    d[v] = via;
                    pi[v] = Some(w);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}
