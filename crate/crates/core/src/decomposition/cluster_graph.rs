//! The cluster graph `B(G)`: one node per cluster of each co-chain graph
//! `G_j`, one edge per vertex of `G`.
//!
//! A vertex of an inner layer `Q_j` lies in exactly one cluster of `G_j` and
//! one of `G_{j+1}`, so it is the edge between those two nodes. Vertices of
//! the marginal layers become pendant edges. A vertex in a trivial cluster
//! has only one end and is kept as a dangling edge.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{Graph, Vx};
use crate::uig::CanonicalPartition;

use super::DecompError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClusterNode {
    /// 1-based: level `j` holds the clusters of `G_j`.
    pub level: usize,
    /// Position of the cluster within its level, left to right.
    pub pos: usize,
    pub members: Vec<Vx>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EdgeKind {
    Inner,
    TopPendant,
    BottomPendant,
    /// A vertex in a trivial cluster of one of its co-chain graphs.
    Dangling,
    /// The graph has a single layer and no levels.
    Isolated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BgEdge {
    pub vertex: Vx,
    pub upper: Option<usize>,
    pub lower: Option<usize>,
    pub kind: EdgeKind,
}

impl BgEdge {
    pub fn ends(&self) -> impl Iterator<Item = usize> {
        self.upper.into_iter().chain(self.lower)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClusterGraph {
    pub levels: usize,
    pub nodes: Vec<ClusterNode>,
    /// One edge per vertex of the graph, indexed by vertex.
    pub edges: Vec<BgEdge>,
    /// Layer of each vertex in the partition used.
    pub layer: Vec<usize>,
}

struct Clusters {
    /// Cluster index per part-1 vertex; `None` when its cross neighbourhood is empty.
    of1: BTreeMap<Vx, Option<usize>>,
    of2: BTreeMap<Vx, Option<usize>>,
    count: usize,
}

fn clusters(g: &Graph, p1: &[Vx], p2: &[Vx]) -> Clusters {
    let s2: BTreeSet<Vx> = p2.iter().copied().collect();
    let mut order: Vec<(BTreeSet<Vx>, Vx)> = p1
        .iter()
        .map(|&x| (g.neighbors(x).intersection(&s2).copied().collect(), x))
        .collect();
    order.sort_by_key(|(n, x)| (n.len(), *x));
    let mut chain: Vec<BTreeSet<Vx>> = Vec::new();
    let mut of1 = BTreeMap::new();
    for (n, x) in order {
        if n.is_empty() {
            of1.insert(x, None);
            continue;
        }
        if chain.last() != Some(&n) {
            chain.push(n);
        }
        of1.insert(x, Some(chain.len() - 1));
    }
    let of2 = p2
        .iter()
        .map(|&y| (y, chain.iter().position(|n| n.contains(&y))))
        .collect();
    Clusters { of1, of2, count: chain.len() }
}

/// Builds `B(G)` and refuses partitions with trivial clusters.
pub fn build_bg(g: &Graph, cp: &CanonicalPartition) -> Result<ClusterGraph, DecompError> {
    let bg = build_bg_lenient(g, cp);
    if let Some(e) = bg.edges.iter().find(|e| e.kind == EdgeKind::Dangling) {
        return Err(DecompError::TrivialCluster(g.id(e.vertex).to_string()));
    }
    Ok(bg)
}

/// Builds `B(G)`, keeping vertices of trivial clusters as dangling edges.
/// `cp` may cover only part of `g`; other vertices get no edge.
pub fn build_bg_lenient(g: &Graph, cp: &CanonicalPartition) -> ClusterGraph {
    let t = cp.layers.len();
    let mut nodes = Vec::new();
    let mut up: BTreeMap<Vx, usize> = BTreeMap::new();
    let mut down: BTreeMap<Vx, usize> = BTreeMap::new();
    for j in 1..t {
        let c = clusters(g, &cp.layers[j - 1], &cp.layers[j]);
        let base = nodes.len();
        let mut members = vec![Vec::new(); c.count];
        for (&x, &k) in &c.of1 {
            if let Some(k) = k {
                down.insert(x, base + k);
                members[k].push(x);
            }
        }
        for (&y, &k) in &c.of2 {
            if let Some(k) = k {
                up.insert(y, base + k);
                members[k].push(y);
            }
        }
        for (pos, mut m) in members.into_iter().enumerate() {
            m.sort_unstable();
            nodes.push(ClusterNode { level: j, pos, members: m });
        }
    }
    let mut layer = vec![usize::MAX; g.n()];
    let mut edges: Vec<BgEdge> = (0..g.n())
        .map(|v| BgEdge { vertex: v, upper: None, lower: None, kind: EdgeKind::Isolated })
        .collect();
    for (j, q) in cp.layers.iter().enumerate() {
        for &v in q {
            layer[v] = j;
            let (upper, lower) = (up.get(&v).copied(), down.get(&v).copied());
            let kind = if t == 1 {
                EdgeKind::Isolated
            } else if j == 0 {
                if lower.is_some() { EdgeKind::TopPendant } else { EdgeKind::Dangling }
            } else if j == t - 1 {
                if upper.is_some() { EdgeKind::BottomPendant } else { EdgeKind::Dangling }
            } else if upper.is_some() && lower.is_some() {
                EdgeKind::Inner
            } else {
                EdgeKind::Dangling
            };
            edges[v] = BgEdge { vertex: v, upper, lower, kind };
        }
    }
    ClusterGraph { levels: t.saturating_sub(1), nodes, edges, layer }
}

impl ClusterGraph {
    pub fn level_nodes(&self, level: usize) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&u| self.nodes[u].level == level).collect()
    }

    /// Node adjacency through inner edges, parallel edges merged.
    pub fn node_adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.nodes.len()];
        for e in &self.edges {
            if let (Some(a), Some(b)) = (e.upper, e.lower) {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        adj
    }

    /// Connected components of the node graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.node_adjacency();
        let mut seen = vec![false; self.nodes.len()];
        let mut out = Vec::new();
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                for &w in &adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Checks that member sets intersect exactly along edges and that every
    /// vertex of the partition owns exactly one edge.
    pub fn check(&self, g: &Graph) -> Result<(), DecompError> {
        let err = |m: String| Err(DecompError::Internal(m));
        for e in &self.edges {
            for u in e.ends() {
                if !self.nodes[u].members.contains(&e.vertex) {
                    return err(format!("`{}` is not in the cluster it touches", g.id(e.vertex)));
                }
            }
        }
        for (u, node) in self.nodes.iter().enumerate() {
            for &v in &node.members {
                if !self.edges[v].ends().any(|x| x == u) {
                    return err(format!("cluster member `{}` lacks its edge", g.id(v)));
                }
            }
        }
        Ok(())
    }

    /// DOT rendering with one rank per level.
    pub fn to_dot(&self, g: &Graph, name: &str) -> String {
        let mut out = format!("graph \"{name}\" {{\n  rankdir=TB;\n");
        for level in 1..=self.levels {
            out.push_str("  { rank=same;");
            for u in self.level_nodes(level) {
                out.push_str(&format!(" c{u};"));
            }
            out.push_str(" }\n");
        }
        for (u, node) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  c{u} [label=\"L{}.{}\"];\n", node.level, node.pos + 1));
        }
        for e in &self.edges {
            let id = g.id(e.vertex);
            match (e.upper, e.lower) {
                (Some(a), Some(b)) => out.push_str(&format!("  c{a} -- c{b} [label=\"{id}\"];\n")),
                (Some(a), None) | (None, Some(a)) => {
                    out.push_str(&format!("  p{} [shape=point];\n  c{a} -- p{} [label=\"{id}\"];\n", e.vertex, e.vertex))
                }
                (None, None) => {}
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uig::{canonical_partition, cell_id, generate_h, random_uig};

    fn rows(h: &Graph, n: usize, m: usize) -> CanonicalPartition {
        CanonicalPartition {
            layers: (1..=n)
                .map(|i| (1..=m).map(|j| h.index_of(&cell_id(i, j)).unwrap()).collect())
                .collect(),
        }
    }

    #[test]
    fn h_gives_disjoint_paths() {
        for n in 2..=6 {
            for m in 1..=6 {
                let h = generate_h(n, m);
                let bg = build_bg(&h, &rows(&h, n, m)).unwrap();
                bg.check(&h).unwrap();
                let comps = bg.components();
                assert_eq!(comps.len(), m);
                let adj = bg.node_adjacency();
                for c in comps {
                    assert_eq!(c.len(), n - 1);
                    let inner: usize = c.iter().map(|&u| adj[u].len()).sum::<usize>() / 2;
                    assert_eq!(inner, n - 2);
                }
            }
        }
    }

    #[test]
    fn single_cochain_graph() {
        let h = generate_h(2, 3);
        let bg = build_bg(&h, &rows(&h, 2, 3)).unwrap();
        assert_eq!(bg.nodes.len(), 3);
        assert!(bg.node_adjacency().iter().all(BTreeSet::is_empty));
        assert!(bg.edges.iter().all(|e| e.kind != EdgeKind::Inner));
    }

    #[test]
    fn every_vertex_is_one_edge() {
        for seed in 0..40 {
            let g = random_uig(20, 6.0, seed);
            if !g.is_connected() {
                continue;
            }
            let cp = canonical_partition(&g).unwrap();
            let bg = build_bg_lenient(&g, &cp);
            bg.check(&g).unwrap();
            assert_eq!(bg.edges.len(), g.n());
            let covered: usize = bg.nodes.iter().map(|u| u.members.len()).sum();
            let ends: usize = bg.edges.iter().map(|e| e.ends().count()).sum();
            assert_eq!(covered, ends);
        }
    }
}
