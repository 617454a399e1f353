//! Vertex-disjoint paths between the marginal levels of a cluster graph and
//! the matching minimum vertex separator.
//!
//! Unit node capacities are modelled by splitting each node into an in- and
//! an out-copy joined by a capacity-1 arc; augmenting paths are found by BFS.

use std::collections::{BTreeSet, VecDeque};

use super::cluster_graph::ClusterGraph;
use super::DecompError;

struct Network {
    head: Vec<usize>,
    cap: Vec<i32>,
    out: Vec<Vec<usize>>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network { head: Vec::new(), cap: Vec::new(), out: vec![Vec::new(); n] }
    }

    fn arc(&mut self, a: usize, b: usize, c: i32) {
        self.out[a].push(self.head.len());
        self.head.push(b);
        self.cap.push(c);
        self.out[b].push(self.head.len());
        self.head.push(a);
        self.cap.push(0);
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![usize::MAX; self.out.len()];
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &a in &self.out[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = a;
                    queue.push_back(y);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut y = t;
        while y != s {
            let a = via[y];
            self.cap[a] -= 1;
            self.cap[a ^ 1] += 1;
            y = self.head[a ^ 1];
        }
        true
    }

    fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.out.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &a in &self.out[x] {
                let y = self.head[a];
                if self.cap[a] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

/// A maximum set of disjoint paths and a minimum separator from one flow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathSystem {
    /// Node sequences from `top` to `bottom`, sorted by the position of
    /// their first node.
    pub paths: Vec<Vec<usize>>,
    pub separator: BTreeSet<usize>,
}

/// Disjoint paths between levels `top` and `bottom` of `bg`, and the
/// separator read off the residual network.
pub fn path_system(bg: &ClusterGraph, top: usize, bottom: usize) -> Result<PathSystem, DecompError> {
    let n = bg.nodes.len();
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = Network::new(2 * n + 2);
    // Only node arcs are finite, so every minimum cut consists of nodes.
    let inf = n as i32 + 1;
    for u in 0..n {
        net.arc(2 * u, 2 * u + 1, 1);
        if bg.nodes[u].level == top {
            net.arc(src, 2 * u, inf);
        }
        if bg.nodes[u].level == bottom {
            net.arc(2 * u + 1, sink, inf);
        }
    }
    for (u, nbrs) in bg.node_adjacency().iter().enumerate() {
        for &w in nbrs {
            net.arc(2 * u + 1, 2 * w, inf);
        }
    }
    let mut flow = 0;
    while net.augment(src, sink) {
        flow += 1;
    }
    // Walk saturated arcs from the source; each unit of flow is one path.
    let mut used: Vec<i32> = (0..net.head.len())
        .map(|a| if a % 2 == 0 { net.cap[a ^ 1] } else { 0 })
        .collect();
    let mut paths = Vec::new();
    for _ in 0..flow {
        let mut path = Vec::new();
        let mut x = src;
        while x != sink {
            let a = *net.out[x]
                .iter()
                .find(|&&a| a % 2 == 0 && used[a] > 0)
                .ok_or_else(|| DecompError::Internal("flow decomposition stalled".into()))?;
            used[a] -= 1;
            x = net.head[a];
            if x < 2 * n && x % 2 == 0 {
                path.push(x / 2);
            }
        }
        paths.push(path);
    }
    paths.sort_by_key(|p| (bg.nodes[p[0]].pos, p.len()));
    let reach = net.reachable(src);
    let separator: BTreeSet<usize> =
        (0..n).filter(|&u| reach[2 * u] && !reach[2 * u + 1]).collect();
    if separator.len() != paths.len() {
        return Err(DecompError::Internal(format!(
            "cut of size {} for {} paths",
            separator.len(),
            paths.len()
        )));
    }
    for p in &paths {
        if p.iter().filter(|u| separator.contains(u)).count() != 1 {
            return Err(DecompError::Internal("separator misses a path".into()));
        }
    }
    Ok(PathSystem { paths, separator })
}

/// Maximum number of disjoint `top`–`bottom` paths.
pub fn max_disjoint_paths(bg: &ClusterGraph, top: usize, bottom: usize) -> Result<Vec<Vec<usize>>, DecompError> {
    Ok(path_system(bg, top, bottom)?.paths)
}

/// Minimum vertex set meeting every `top`–`bottom` path.
pub fn min_separator(bg: &ClusterGraph, top: usize, bottom: usize) -> Result<BTreeSet<usize>, DecompError> {
    Ok(path_system(bg, top, bottom)?.separator)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::cluster_graph::build_bg;
    use crate::graph::path;
    use crate::uig::{canonical_partition, cell_id, generate_h, CanonicalPartition};

    fn rows(n: usize, m: usize) -> (crate::graph::Graph, CanonicalPartition) {
        let h = generate_h(n, m);
        let cp = CanonicalPartition {
            layers: (1..=n)
                .map(|i| (1..=m).map(|j| h.index_of(&cell_id(i, j)).unwrap()).collect())
                .collect(),
        };
        (h, cp)
    }

    #[test]
    fn columns_of_h() {
        for k in 2..=6 {
            let (h, cp) = rows(k, k);
            let bg = build_bg(&h, &cp).unwrap();
            let ps = path_system(&bg, 1, k - 1).unwrap();
            assert_eq!(ps.paths.len(), k);
            assert!(ps.paths.iter().all(|p| p.len() == k - 1));
            // One separator node per column.
            let cols: BTreeSet<usize> = ps.separator.iter().map(|&u| bg.nodes[u].pos).collect();
            assert_eq!(cols.len(), k);
        }
    }

    #[test]
    fn single_path() {
        let g = path(&["a", "b", "c", "d", "e"]);
        let cp = canonical_partition(&g).unwrap();
        let bg = build_bg(&g, &cp).unwrap();
        let ps = path_system(&bg, 1, 4).unwrap();
        assert_eq!(ps.paths, vec![vec![0, 1, 2, 3]]);
        assert_eq!(ps.separator.len(), 1);
        assert_eq!(max_disjoint_paths(&bg, 1, 4).unwrap().len(), 1);
        assert_eq!(min_separator(&bg, 1, 4).unwrap().len(), 1);
    }
}
