use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::Add;

/// Edge weights usable by [`shortest_paths`]: nonnegative, totally ordered, additive.
pub trait Weight: Copy + Ord + Add<Output = Self> + Default {}

impl<T: Copy + Ord + Add<Output = T> + Default> Weight for T {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Label<W> {
    pub cost: W,
    pub path: Vec<usize>,
}

/// Single-source shortest paths. Ties are broken by fewer arcs, then by the
/// lexicographically smallest node sequence. Stops early once `target` is settled.
pub fn shortest_paths<W, F, I>(
    n: usize,
    source: usize,
    target: Option<usize>,
    mut arcs: F,
) -> Vec<Option<Label<W>>>
where
    W: Weight,
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = (usize, W)>,
{
    let mut done: Vec<Option<Label<W>>> = vec![None; n];
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((W::default(), 0usize, vec![source])));
    while let Some(Reverse((cost, hops, path))) = heap.pop() {
        let v = *path.last().expect("paths are nonempty");
        if done[v].is_some() {
            continue;
        }
        for (w, weight) in arcs(v) {
            if done[w].is_none() {
                let mut next = path.clone();
                next.push(w);
                heap.push(Reverse((cost + weight, hops + 1, next)));
            }
        }
        done[v] = Some(Label { cost, path });
        if target == Some(v) {
            break;
        }
    }
    done
}

pub fn shortest_path<W, F, I>(n: usize, source: usize, target: usize, arcs: F) -> Option<Label<W>>
where
    W: Weight,
    F: FnMut(usize) -> I,
    I: IntoIterator<Item = (usize, W)>,
{
    shortest_paths(n, source, Some(target), arcs).swap_remove(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(edges: &[(usize, usize, u32)], n: usize) -> Vec<Vec<(usize, u32)>> {
        let mut adj = vec![Vec::new(); n];
        for &(a, b, w) in edges {
            adj[a].push((b, w));
            adj[b].push((a, w));
        }
        adj
    }

    #[test]
    fn picks_the_cheaper_route() {
        // two routes 0 -> 3: via 1 (3) and via 2 (5)
        let adj = graph(&[(0, 1, 1), (1, 3, 2), (0, 2, 2), (2, 3, 3)], 4);
        let l = shortest_path(4, 0, 3, |v| adj[v].clone()).unwrap();
        assert_eq!((l.cost, l.path), (3, vec![0, 1, 3]));
    }

    #[test]
    fn ties_prefer_fewer_arcs_then_lexicographic() {
        let adj = graph(&[(0, 1, 0), (1, 3, 0), (0, 3, 0), (0, 2, 0), (2, 3, 0)], 4);
        assert_eq!(shortest_path(4, 0, 3, |v| adj[v].clone()).unwrap().path, vec![0, 3]);
        let adj = graph(&[(0, 2, 1), (2, 3, 1), (0, 1, 1), (1, 3, 1)], 4);
        assert_eq!(shortest_path(4, 0, 3, |v| adj[v].clone()).unwrap().path, vec![0, 1, 3]);
    }

    #[test]
    fn source_is_its_own_shortest_path() {
        let adj = graph(&[(0, 1, 4)], 2);
        let all = shortest_paths(2, 1, None, |v| adj[v].clone());
        assert_eq!(all[1].as_ref().unwrap().path, vec![1]);
        assert_eq!(all[0].as_ref().unwrap().cost, 4);
    }
}
