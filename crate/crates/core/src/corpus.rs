//! Test corpora: exhaustive small graphs and seeded random unit interval
//! graphs from restricted classes.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposition::find_induced_h;
use crate::graph::Graph;
use crate::uig::{random_hfree_uig, random_uig};

fn graph_from_masks(adj: &[u32]) -> Graph {
    let mut g = Graph::new();
    for i in 0..adj.len() {
        g.add_vertex(&format!("x{i}")).unwrap();
    }
    for i in 0..adj.len() {
        for j in i + 1..adj.len() {
            if adj[i] >> j & 1 == 1 {
                g.connect(i, j);
            }
        }
    }
    g
}

/// Smallest adjacency code over vertex orders that list vertices by
/// non-decreasing degree; equal for isomorphic graphs.
fn canonical_code(adj: &[u32]) -> u64 {
    let n = adj.len();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| adj[v].count_ones());
    let blocks: Vec<Vec<usize>> = by_degree
        .chunk_by(|&a, &b| adj[a].count_ones() == adj[b].count_ones())
        .map(<[usize]>::to_vec)
        .collect();
    let mut best = u64::MAX;
    let mut order = Vec::with_capacity(n);
    fn walk(adj: &[u32], blocks: &[Vec<usize>], bi: usize, used: &mut Vec<bool>, order: &mut Vec<usize>, best: &mut u64) {
        if bi == blocks.len() {
            let mut code = 0u64;
            for i in 0..order.len() {
                for j in i + 1..order.len() {
                    code = code << 1 | (adj[order[i]] >> order[j] & 1) as u64;
                }
            }
            *best = (*best).min(code);
            return;
        }
        let block = &blocks[bi];
        let placed = block.iter().filter(|&&v| used[v]).count();
        if placed == block.len() {
            return walk(adj, blocks, bi + 1, used, order, best);
        }
        for &v in block {
            if !used[v] {
                used[v] = true;
                order.push(v);
                walk(adj, blocks, bi, used, order, best);
                order.pop();
                used[v] = false;
            }
        }
    }
    walk(adj, &blocks, 0, &mut vec![false; n], &mut order, &mut best);
    best
}

/// One graph per isomorphism class on exactly `n` vertices (`n <= 8`), ids
/// `x0..`. Built by adding a vertex with every neighbourhood to each class on
/// `n − 1` vertices.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    let mut level: Vec<Vec<u32>> = vec![vec![]];
    for m in 1..=n {
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for adj in &level {
            for nbrs in 0u32..1 << (m - 1) {
                let mut a = adj.clone();
                for (i, row) in a.iter_mut().enumerate() {
                    if nbrs >> i & 1 == 1 {
                        *row |= 1 << (m - 1);
                    }
                }
                a.push(nbrs);
                if seen.insert(canonical_code(&a)) {
                    next.push(a);
                }
            }
        }
        level = next;
    }
    level.iter().map(|a| graph_from_masks(a)).collect()
}

pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(Graph::is_connected).collect()
}

/// Whether some four vertices induce a path.
pub fn has_induced_p4(g: &Graph) -> bool {
    let n = g.n();
    for b in 0..n {
        for c in g.neighbors(b).iter().copied() {
            for &a in g.neighbors(b) {
                if a == c || g.adjacent(a, c) {
                    continue;
                }
                for &d in g.neighbors(c) {
                    if d != b && !g.adjacent(d, b) && !g.adjacent(d, a) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Seeded `P_4`-free unit interval graphs by rejection sampling.
pub fn p4_free_uigs(count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(4..=14);
        let spread = rng.gen_range(0.5..3.0);
        let g = random_uig(n, spread, rng.gen());
        if !has_induced_p4(&g) {
            out.push(g);
        }
    }
    out
}

/// Seeded `H_{k,k}`-free unit interval graphs. Even entries are twin
/// blow-ups of clique-number-`k` graphs with 20 to 60 vertices; odd entries
/// are unrestricted random graphs with 12 to 22 vertices that a brute-force
/// search certifies `H_{k,k}`-free.
pub fn hfree_corpus(k: usize, count: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        if out.len() % 2 == 0 {
            let n = rng.gen_range(20..=60);
            out.push(random_hfree_uig(n, k, rng.gen()));
        } else {
            let n = rng.gen_range(12..=22);
            let spread = n as f64 / rng.gen_range(4.0..7.0);
            let g = random_uig(n, spread, rng.gen());
            if find_induced_h(&g, k).is_none() {
                out.push(g);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;

    #[test]
    fn class_counts() {
        // Graphs up to isomorphism on 1..=6 vertices, and connected ones.
        let all = [1, 2, 4, 11, 34, 156];
        let connected = [1, 1, 2, 6, 21, 112];
        for n in 1..=6 {
            assert_eq!(all_graphs(n).len(), all[n - 1], "n={n}");
            assert_eq!(all_connected_graphs(n).len(), connected[n - 1], "n={n}");
        }
    }

    #[test]
    fn p4_detection() {
        assert!(has_induced_p4(&path(&["a", "b", "c", "d"])));
        assert!(!has_induced_p4(&path(&["a", "b", "c"])));
        for g in p4_free_uigs(10, 3) {
            assert!(!has_induced_p4(&g));
        }
    }
}
