//! Co-chain graphs: two cliques whose cross neighbourhoods are nested.
//!
//! The complement of a co-chain graph is a bipartite chain graph, so a split
//! into two cliques is co-chain exactly when the cross edges contain no two
//! vertices of one side with incomparable neighbourhoods on the other.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Graph, Vx};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoChainError {
    #[error("the two parts do not partition the vertex set")]
    NotAPartition,
    #[error("part {part} is not a clique: `{a}` and `{b}` are non-adjacent")]
    NotClique { part: u8, a: String, b: String },
    /// `x1 y1` and `x2 y2` are cross edges while `x1 y2` and `x2 y1` are not:
    /// an induced 2K2 in the complement's bipartite part.
    #[error("cross neighbourhoods are not nested: {x1}-{y1} and {x2}-{y2} form a 2K2 in the complement")]
    ChainViolation { x1: String, x2: String, y1: String, y2: String },
}

/// A validated co-chain split. `part1` is ordered increasingly by cross
/// neighbourhood, `part2` decreasingly; ties keep the graph's vertex order.
#[derive(Debug, Clone)]
pub struct CoChain {
    pub host: Graph,
    pub part1: Vec<Vx>,
    pub part2: Vec<Vx>,
}

/// Clusters of a co-chain graph, in column order of a maximum induced
/// `H_{2,m}`, plus the vertices with no cross neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterPartition {
    /// `(W_1, W_2)` per cluster: members from part 1 and from part 2.
    pub clusters: Vec<(Vec<Vx>, Vec<Vx>)>,
    pub trivial1: Vec<Vx>,
    pub trivial2: Vec<Vx>,
}

impl ClusterPartition {
    pub fn members(&self, c: usize) -> Vec<Vx> {
        let (a, b) = &self.clusters[c];
        a.iter().chain(b).copied().collect()
    }
}

fn cross(g: &Graph, v: Vx, other: &BTreeSet<Vx>) -> BTreeSet<Vx> {
    g.neighbors(v).intersection(other).copied().collect()
}

/// Checks that `(p1, p2)` splits `g` into a co-chain graph and returns the
/// chain orderings.
pub fn check_cochain(g: &Graph, p1: &[Vx], p2: &[Vx]) -> Result<CoChain, CoChainError> {
    let s1: BTreeSet<Vx> = p1.iter().copied().collect();
    let s2: BTreeSet<Vx> = p2.iter().copied().collect();
    if s1.len() != p1.len()
        || s2.len() != p2.len()
        || !s1.is_disjoint(&s2)
        || s1.len() + s2.len() != g.n()
        || s1.iter().chain(&s2).any(|&v| v >= g.n())
    {
        return Err(CoChainError::NotAPartition);
    }
    for (part, set) in [(1u8, &s1), (2u8, &s2)] {
        for &a in set {
            if let Some(&b) = set.range(a + 1..).find(|&&b| !g.adjacent(a, b)) {
                return Err(CoChainError::NotClique {
                    part,
                    a: g.id(a).into(),
                    b: g.id(b).into(),
                });
            }
        }
    }
    let mut part1: Vec<Vx> = s1.iter().copied().collect();
    part1.sort_by_key(|&v| (cross(g, v, &s2).len(), v));
    for w in part1.windows(2) {
        let (na, nb) = (cross(g, w[0], &s2), cross(g, w[1], &s2));
        if !na.is_subset(&nb) {
            // Any two consecutive incomparable sets yield the witness.
            let y1 = *na.difference(&nb).next().unwrap();
            let y2 = *nb.difference(&na).next().unwrap();
            return Err(CoChainError::ChainViolation {
                x1: g.id(w[0]).into(),
                x2: g.id(w[1]).into(),
                y1: g.id(y1).into(),
                y2: g.id(y2).into(),
            });
        }
    }
    let mut part2: Vec<Vx> = s2.iter().copied().collect();
    part2.sort_by_key(|&v| (std::cmp::Reverse(cross(g, v, &s1).len()), v));
    Ok(CoChain { host: g.clone(), part1, part2 })
}

impl CoChain {
    pub fn cross1(&self, v: Vx) -> BTreeSet<Vx> {
        cross(&self.host, v, &self.part2.iter().copied().collect())
    }

    pub fn cross2(&self, v: Vx) -> BTreeSet<Vx> {
        cross(&self.host, v, &self.part1.iter().copied().collect())
    }

    /// Cluster partition. The distinct non-empty cross neighbourhoods of
    /// part 1 form a strict chain `N_1 ⊂ … ⊂ N_m`; column `j` of the maximum
    /// induced `H_{2,m}` pairs a part-1 vertex with neighbourhood `N_j` and a
    /// part-2 vertex of `N_j − N_{j−1}`.
    pub fn clusters(&self) -> ClusterPartition {
        let mut chain: Vec<BTreeSet<Vx>> = Vec::new();
        let mut w1: Vec<Vec<Vx>> = Vec::new();
        let mut trivial1 = Vec::new();
        for &x in &self.part1 {
            let nx = self.cross1(x);
            if nx.is_empty() {
                trivial1.push(x);
            } else if chain.last() == Some(&nx) {
                w1.last_mut().unwrap().push(x);
            } else {
                chain.push(nx);
                w1.push(vec![x]);
            }
        }
        let mut w2: Vec<Vec<Vx>> = vec![Vec::new(); chain.len()];
        let mut trivial2 = Vec::new();
        for &y in &self.part2 {
            match chain.iter().position(|n| n.contains(&y)) {
                Some(j) => w2[j].push(y),
                None => trivial2.push(y),
            }
        }
        ClusterPartition {
            clusters: w1.into_iter().zip(w2).collect(),
            trivial1,
            trivial2,
        }
    }

    /// Places the co-chain graph into `H_{2,n}`, `n = |V|`: part 1 on row 1,
    /// part 2 on row 2. Cluster `j` takes a block of consecutive columns,
    /// first its part-2 members then its part-1 members; trivial part-1
    /// vertices come before every block and trivial part-2 vertices after.
    /// The unused cells of each row are the padding vertices that complete
    /// the canonical graph. Returns `(row, column)` per vertex index.
    pub fn embed(&self) -> Vec<(usize, usize)> {
        let cp = self.clusters();
        let mut cells = vec![(0, 0); self.host.n()];
        let mut col = 0;
        let mut place = |v: Vx, row: usize, cells: &mut Vec<(usize, usize)>| {
            col += 1;
            cells[v] = (row, col);
        };
        for &x in &cp.trivial1 {
            place(x, 1, &mut cells);
        }
        for (w1, w2) in &cp.clusters {
            for &y in w2 {
                place(y, 2, &mut cells);
            }
            for &x in w1 {
                place(x, 1, &mut cells);
            }
        }
        for &y in &cp.trivial2 {
            place(y, 2, &mut cells);
        }
        cells
    }
}

/// Column-aligned brute force: the largest `m` such that `H_{2,m}` occurs
/// with its first row inside `p1` and its second row inside `p2`. Test
/// oracle; exponential.
pub fn max_h2m_bruteforce(g: &Graph, p1: &[Vx], p2: &[Vx]) -> usize {
    let mut best = 0;
    let mut rows1 = Vec::new();
    let mut rows2 = Vec::new();
    search_h2m(g, p1, p2, &mut rows1, &mut rows2, &mut best);
    best
}

fn search_h2m(
    g: &Graph,
    p1: &[Vx],
    p2: &[Vx],
    r1: &mut Vec<Vx>,
    r2: &mut Vec<Vx>,
    best: &mut usize,
) {
    *best = (*best).max(r1.len());
    for &x in p1 {
        if r1.contains(&x) {
            continue;
        }
        for &y in p2 {
            if r2.contains(&y) {
                continue;
            }
            // The new last column: x sees every chosen row-2 vertex, y is
            // seen by no earlier row-1 vertex.
            let ok = g.adjacent(x, y)
                && r2.iter().all(|&w| g.adjacent(x, w))
                && r1.iter().all(|&w| !g.adjacent(w, y));
            if ok {
                r1.push(x);
                r2.push(y);
                search_h2m(g, p1, p2, r1, r2, best);
                r1.pop();
                r2.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::uig::generate_h;

    fn idx(g: &Graph, ids: &[&str]) -> Vec<Vx> {
        ids.iter().map(|id| g.index_of(id).unwrap()).collect()
    }

    #[test]
    fn h22_rows() {
        let h = generate_h(2, 2);
        let cc = check_cochain(&h, &idx(&h, &["v1_1", "v1_2"]), &idx(&h, &["v2_1", "v2_2"])).unwrap();
        assert_eq!(cc.part1, idx(&h, &["v1_1", "v1_2"]));
        assert_eq!(cc.part2, idx(&h, &["v2_1", "v2_2"]));
        let cp = cc.clusters();
        assert_eq!(
            cp.clusters,
            vec![
                (idx(&h, &["v1_1"]), idx(&h, &["v2_1"])),
                (idx(&h, &["v1_2"]), idx(&h, &["v2_2"]))
            ]
        );
        assert!(cp.trivial1.is_empty() && cp.trivial2.is_empty());
    }

    #[test]
    fn k2_split() {
        let g = Graph::from_edges(&["a", "b"], &[("a", "b")]);
        let cc = check_cochain(&g, &[0], &[1]).unwrap();
        assert_eq!(cc.clusters().clusters, vec![(vec![0], vec![1])]);
    }

    #[test]
    fn two_k2_in_complement() {
        // Two cliques {x1,x2}, {y1,y2} with cross edges x1y1, x2y2 only:
        // the whole graph is C_4, whose complement is 2K_2.
        let g = Graph::from_edges(
            &["x1", "x2", "y1", "y2"],
            &[("x1", "x2"), ("y1", "y2"), ("x1", "y1"), ("x2", "y2")],
        );
        let err = check_cochain(&g, &[0, 1], &[2, 3]).unwrap_err();
        assert!(matches!(err, CoChainError::ChainViolation { .. }));
        assert!(matches!(
            check_cochain(&g, &[0, 3], &[1, 2]),
            Err(CoChainError::NotClique { .. })
        ));
        assert_eq!(check_cochain(&g, &[0], &[1, 2]).unwrap_err(), CoChainError::NotAPartition);
    }

    #[test]
    fn trivial_cluster() {
        let g = Graph::from_edges(
            &["u", "x", "y"],
            &[("u", "x"), ("x", "y")],
        );
        let cc = check_cochain(&g, &[0, 1], &[2]).unwrap();
        let cp = cc.clusters();
        assert_eq!(cp.trivial1, vec![0]);
        assert_eq!(cp.clusters.len(), 1);
    }

    #[test]
    fn embedding_of_h22() {
        let h = generate_h(2, 2);
        let cc = check_cochain(&h, &idx(&h, &["v1_1", "v1_2"]), &idx(&h, &["v2_1", "v2_2"])).unwrap();
        let cells = cc.embed();
        let host = generate_h(2, 4);
        for x in 0..h.n() {
            for y in x + 1..h.n() {
                let (a, b) = (cells[x], cells[y]);
                let ia = host.index_of(&crate::uig::cell_id(a.0, a.1)).unwrap();
                let ib = host.index_of(&crate::uig::cell_id(b.0, b.1)).unwrap();
                assert_eq!(h.adjacent(x, y), host.adjacent(ia, ib));
            }
        }
    }
}
