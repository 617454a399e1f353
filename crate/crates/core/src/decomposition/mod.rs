//! Bounded-width expressions for unit interval graphs without a large
//! canonical subgraph `H_{k,k}`.
//!
//! The graph is cut into parts `V_1, V_2, …` from left to right: each part is
//! the upper side `X` of a separator-based split of the first `k` layers of
//! what remains. Every part embeds into a canonical graph with at most `k`
//! rows, so it has an expression with at most `3k` labels, and the parts are
//! assembled by [`compose_partition`].

pub mod augment;
pub mod cluster_graph;
pub mod flow;
pub mod split;
pub mod twins;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::compose::{compose_partition, ComposeError, PartScheme};
use crate::embedding::embed_ordered;
use crate::expr::{restrict, union_all, CwExpr, ExprError};
use crate::graph::{mu, Graph, Vx};
use crate::uig::{
    canonical_partition, canonical_partition_from, canonical_partitions, cell_id, cells_adjacent,
    h_expression, CanonicalPartition, UigError, Violation,
};

pub use augment::{augment_trivial, trivial_vertices, Augmented};
pub use cluster_graph::{build_bg, build_bg_lenient, BgEdge, ClusterGraph, ClusterNode, EdgeKind};
pub use flow::{max_disjoint_paths, min_separator, path_system, PathSystem};
pub use split::{mu_bound, split_window, xy_split, Block, BlockKind, WindowSplit};
pub use twins::{collapse_twins, expand_twins, TwinMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompError {
    #[error(transparent)]
    NotUnitInterval(#[from] UigError),
    #[error("invalid canonical partition: {0}")]
    Partition(Violation),
    #[error("trivial cluster at `{0}`")]
    TrivialCluster(String),
    #[error("inconsistent twin map: {0}")]
    TwinMap(String),
    #[error("k must be at least 2, got {0}")]
    BadK(usize),
    #[error("window claim violated: {0}")]
    Claim(String),
    #[error("class count {mu} of {what} exceeds {bound}")]
    MuBound { what: String, mu: usize, bound: usize },
    #[error("width {width} exceeds the bound {bound}")]
    WidthBound { width: usize, bound: usize },
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error("synthesised expression does not evaluate to the input")]
    Mismatch,
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Final width bound `12k³ + 72k² − 36k + 96`.
pub fn width_bound(k: usize) -> usize {
    12 * k.pow(3) + 72 * k.pow(2) + 96 - 36 * k
}

/// The `k` with every `f`-free unit interval graph `H_{k,k}`-free: `f`
/// embeds in `H_{|f|,|f|}`.
pub fn forbidden_to_k(f: &Graph) -> Result<usize, DecompError> {
    canonical_partitions(f)?;
    Ok(f.n())
}

/// Searches for an induced `H_{k,k}` by backtracking over its cells in row
/// order. Exponential; meant for small graphs.
pub fn find_induced_h(g: &Graph, k: usize) -> Option<Vec<Vx>> {
    let cells: Vec<(usize, usize)> =
        (1..=k).flat_map(|i| (1..=k).map(move |j| (i, j))).collect();
    fn extend(g: &Graph, cells: &[(usize, usize)], chosen: &mut Vec<Vx>) -> bool {
        let at = chosen.len();
        if at == cells.len() {
            return true;
        }
        for v in 0..g.n() {
            if chosen.contains(&v) {
                continue;
            }
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(i, &w)| g.adjacent(v, w) == cells_adjacent(cells[i], cells[at]));
            if ok {
                chosen.push(v);
                if extend(g, cells, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    extend(g, &cells, &mut chosen).then_some(chosen)
}

#[derive(Debug, Clone, Serialize)]
pub struct Step {
    /// Layers of the residual component the step worked on.
    pub layers: usize,
    /// Whether the whole component was taken.
    pub whole: bool,
    pub s: usize,
    pub separator: usize,
    pub max_blocks: usize,
    pub window_mu_x: usize,
    pub window_mu_y: usize,
    pub part_size: usize,
    pub part_mu: usize,
    pub prefix_mu: usize,
}

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Parts `V_1..V_t` in order.
    pub parts: Vec<BTreeSet<Vx>>,
    /// For each part, its vertices grouped by the layer of the window it came
    /// from, each group in layer order; empty groups are kept so that group
    /// indices are layer indices.
    pub part_layers: Vec<Vec<Vec<Vx>>>,
    pub steps: Vec<Step>,
}

/// Decomposes `g` with windows of `k` layers.
pub fn decompose(g: &Graph, k: usize) -> Result<Decomposition, DecompError> {
    decompose_with(g, None, k)
}

/// As [`decompose`], using `first` as the canonical partition of `g` for
/// the first step when `g` is connected.
pub fn decompose_with(
    g: &Graph,
    first: Option<&CanonicalPartition>,
    k: usize,
) -> Result<Decomposition, DecompError> {
    if k < 2 {
        return Err(DecompError::BadK(k));
    }
    // Preferred start order: left to right along the first partition.
    let sigma: Vec<Vx> = match first {
        Some(cp) => cp.sequence(),
        None => canonical_partitions(g)?.iter().flat_map(|cp| cp.sequence()).collect(),
    };
    let rank: BTreeMap<Vx, usize> = sigma.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let bound = mu_bound(k);
    let mut remaining: BTreeSet<Vx> = (0..g.n()).collect();
    let mut prefix: BTreeSet<Vx> = BTreeSet::new();
    let mut out = Decomposition { parts: vec![], part_layers: vec![], steps: vec![] };
    let mut first = first.filter(|_| g.is_connected());
    while !remaining.is_empty() {
        let rest: Vec<Vx> = remaining.iter().copied().collect();
        let r = g.induced(&remaining);
        let cp_local = match first.take() {
            Some(cp) => cp.clone(),
            None => {
                let mut starts: Vec<usize> = (0..r.n()).collect();
                starts.sort_by_key(|&x| rank[&rest[x]]);
                let comp: BTreeSet<usize> = r.bfs_layers(starts[0]).into_iter().flatten().collect();
                starts
                    .into_iter()
                    .filter(|x| comp.contains(x))
                    .find_map(|x| canonical_partition_from(&r, x).ok())
                    .ok_or_else(|| DecompError::Internal("residual component is not unit interval".into()))?
            }
        };
        let to_g = |layers: &[Vec<usize>]| -> Vec<Vec<Vx>> {
            layers.iter().map(|l| l.iter().map(|&x| rest[x]).collect()).collect()
        };
        let (part_layers, mut step) = if cp_local.layers.len() < k {
            let layers = to_g(&cp_local.layers);
            let step = Step {
                layers: cp_local.layers.len(),
                whole: true,
                s: 0,
                separator: 0,
                max_blocks: 0,
                window_mu_x: 0,
                window_mu_y: 0,
                part_size: 0,
                part_mu: 0,
                prefix_mu: 0,
            };
            (layers, step)
        } else {
            let keep: BTreeSet<usize> = cp_local.layers[..k].iter().flatten().copied().collect();
            let w = r.induced(&keep);
            let wi: Vec<usize> = keep.iter().copied().collect();
            let to_w: BTreeMap<usize, usize> = wi.iter().enumerate().map(|(i, &x)| (x, i)).collect();
            let wcp = CanonicalPartition {
                layers: cp_local.layers[..k]
                    .iter()
                    .map(|l| l.iter().map(|x| to_w[x]).collect())
                    .collect(),
            };
            let split = split_window(&w, &wcp, k)?;
            let layers: Vec<Vec<Vx>> = wcp
                .layers
                .iter()
                .map(|l| {
                    l.iter()
                        .filter(|x| split.x_side.contains(x))
                        .map(|&x| rest[wi[x]])
                        .collect()
                })
                .collect();
            let step = Step {
                layers: cp_local.layers.len(),
                whole: false,
                s: split.s(),
                separator: split.separator.len(),
                max_blocks: split.max_blocks(),
                window_mu_x: split.mu_x,
                window_mu_y: split.mu_y,
                part_size: 0,
                part_mu: 0,
                prefix_mu: 0,
            };
            (layers, step)
        };
        let part: BTreeSet<Vx> = part_layers.iter().flatten().copied().collect();
        if part.is_empty() {
            return Err(DecompError::Internal("empty part".into()));
        }
        prefix.extend(&part);
        remaining.retain(|v| !part.contains(v));
        step.part_size = part.len();
        step.part_mu = mu(g, &part);
        step.prefix_mu = mu(g, &prefix);
        for (what, value) in [("part", step.part_mu), ("prefix", step.prefix_mu)] {
            if value > bound {
                return Err(DecompError::MuBound {
                    what: format!("{what} {}", out.parts.len() + 1),
                    mu: value,
                    bound,
                });
            }
        }
        out.parts.push(part);
        out.part_layers.push(part_layers);
        out.steps.push(step);
    }
    Ok(out)
}

/// Expression for `g[part]` through an embedding into a canonical graph
/// with one row per layer group.
pub fn part_expression(g: &Graph, layers: &[Vec<Vx>]) -> Result<CwExpr, DecompError> {
    let order: Vec<Vx> = layers.iter().flatten().copied().collect();
    let layer_of: BTreeMap<Vx, usize> = layers
        .iter()
        .enumerate()
        .flat_map(|(j, l)| l.iter().map(move |&v| (v, j)))
        .collect();
    let cells = embed_ordered(g, &order, &layer_of);
    let rows = cells.values().map(|c| c.0).max().unwrap_or(1);
    let cols = cells.values().map(|c| c.1).max().unwrap_or(1);
    let name: BTreeMap<String, String> =
        cells.iter().map(|(&v, &(r, c))| (cell_id(r, c), g.id(v).to_string())).collect();
    let keep: BTreeSet<String> = name.keys().cloned().collect();
    let e = restrict(&h_expression(rows, cols), &keep)?
        .ok_or_else(|| DecompError::Internal("empty part".into()))?;
    Ok(e.map_vertices(&|c| name[c].clone()))
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentReport {
    pub vertices: usize,
    pub collapsed: usize,
    pub added: usize,
    pub window: usize,
    pub steps: Vec<Step>,
    pub part_widths: Vec<usize>,
    pub label_budget: usize,
    pub class_bound: usize,
    pub width: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthesisReport {
    pub k: usize,
    pub bound: usize,
    pub width: usize,
    pub components: Vec<ComponentReport>,
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub expr: CwExpr,
    pub report: SynthesisReport,
}

/// Expression for an `H_{k,k}`-free unit interval graph.
///
/// Pipeline: collapse true twins; per component, pad trivial clusters
/// (which keeps the graph `H_{k+2,k+2}`-free), decompose with windows of
/// `k + 2` layers, express each part through its canonical embedding,
/// compose, drop the padding; then union the components and re-expand the
/// twins.
pub fn synthesize(g: &Graph, k: usize) -> Result<Synthesis, DecompError> {
    if k < 2 {
        return Err(DecompError::BadK(k));
    }
    canonical_partitions(g)?;
    let (small, twins) = collapse_twins(g);
    let window = k + 2;
    let mut exprs = Vec::new();
    let mut components = Vec::new();
    for comp in small.connected_components() {
        let keep: BTreeSet<Vx> = comp.iter().copied().collect();
        let c = small.induced(&keep);
        let cp = canonical_partition(&c)?;
        let aug = augment_trivial(&c, &cp)?;
        let dec = decompose_with(&aug.graph, Some(&aug.partition), window)?;
        let part_exprs = dec
            .part_layers
            .iter()
            .map(|layers| part_expression(&aug.graph, layers))
            .collect::<Result<Vec<_>, _>>()?;
        let part_widths = part_exprs.iter().map(CwExpr::width).collect();
        let parts = dec
            .parts
            .iter()
            .map(|p| p.iter().map(|&v| aug.graph.id(v).to_string()).collect())
            .collect();
        let composed =
            compose_partition(&PartScheme { host: aug.graph.clone(), parts, part_exprs })?;
        let ids: BTreeSet<String> = c.ids().iter().cloned().collect();
        let e = restrict(&composed.expr, &ids)?.ok_or(DecompError::Mismatch)?;
        components.push(ComponentReport {
            vertices: comp.iter().map(|&v| 1 + twins.get(small.id(v)).map_or(0, Vec::len)).sum(),
            collapsed: c.n(),
            added: aug.added.len(),
            window,
            steps: dec.steps,
            part_widths,
            label_budget: composed.k,
            class_bound: composed.l,
            width: e.width(),
        });
        exprs.push(e);
    }
    let expr = match union_all(exprs) {
        Some(e) => expand_twins(&e, &twins)?,
        None => return Err(DecompError::Internal("empty graph".into())),
    };
    if expr.eval()?.graph != *g {
        return Err(DecompError::Mismatch);
    }
    let width = expr.width();
    let bound = width_bound(k);
    if width > bound {
        return Err(DecompError::WidthBound { width, bound });
    }
    Ok(Synthesis { expr, report: SynthesisReport { k, bound, width, components } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};
    use crate::uig::{generate_h, random_hfree_uig};

    fn rows(h: &Graph, n: usize, m: usize) -> CanonicalPartition {
        CanonicalPartition {
            layers: (1..=n)
                .map(|i| (1..=m).map(|j| h.index_of(&cell_id(i, j)).unwrap()).collect())
                .collect(),
        }
    }

    #[test]
    fn bounds() {
        assert_eq!(width_bound(3), 960);
        assert_eq!(width_bound(4), 1872);
        assert_eq!(mu_bound(3), 21);
        assert_eq!(mu_bound(4), 44);
    }

    #[test]
    fn forbidden_graphs() {
        assert_eq!(forbidden_to_k(&path(&["a", "b", "c", "d"])).unwrap(), 4);
        assert_eq!(forbidden_to_k(&complete(3, "k")).unwrap(), 3);
        assert_eq!(forbidden_to_k(&generate_h(2, 2)).unwrap(), 4);
        let claw = Graph::from_edges(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]);
        assert!(forbidden_to_k(&claw).is_err());
    }

    #[test]
    fn induced_h_search() {
        assert!(find_induced_h(&generate_h(3, 3), 3).is_some());
        assert!(find_induced_h(&generate_h(3, 5), 3).is_some());
        assert!(find_induced_h(&generate_h(2, 5), 3).is_none());
        assert!(find_induced_h(&complete(6, "k"), 2).is_none());
    }

    #[test]
    fn canonical_graphs_have_no_twins_from_three_rows() {
        for k in 3..=5 {
            let h = generate_h(k, k);
            assert!(collapse_twins(&h).1.is_empty());
        }
    }

    #[test]
    fn short_graphs_are_one_part() {
        let h = generate_h(3, 5);
        let d = decompose_with(&h, Some(&rows(&h, 3, 5)), 4).unwrap();
        assert_eq!(d.parts.len(), 1);
        assert_eq!(d.parts[0].len(), 15);
        let k4 = complete(4, "k");
        assert_eq!(decompose(&k4, 3).unwrap().parts.len(), 1);
    }

    #[test]
    fn windows_of_h() {
        let h = generate_h(3, 6);
        let cp = rows(&h, 3, 6);
        // Six disjoint columns cross a three-layer window of H_{3,6}.
        let s = split_window(&h, &cp, 3).unwrap();
        assert_eq!(s.s(), 6);
        assert_eq!(s.separator.len(), 6);
        let h = generate_h(3, 2);
        let s = split_window(&h, &rows(&h, 3, 2), 3).unwrap();
        assert_eq!(s.s(), 2);
        assert_eq!(s.separator.len(), 2);
        assert!(s.max_blocks() <= 7);
        let p = path(&["a", "b", "c", "d"]);
        let cp = canonical_partition(&p).unwrap();
        let s = split_window(&p, &CanonicalPartition { layers: cp.layers[..3].to_vec() }, 3).unwrap();
        assert_eq!(s.s(), 1);
        assert!(s.max_blocks() <= 3);
        assert!(s.x_side.contains(&0));
    }

    #[test]
    fn decompose_random() {
        for seed in 0..20 {
            let g = random_hfree_uig(40, 3, seed);
            let (c, _) = collapse_twins(&g);
            let d = decompose(&c, 3).unwrap();
            let all: BTreeSet<Vx> = d.parts.iter().flatten().copied().collect();
            assert_eq!(all.len(), c.n());
            assert_eq!(d.parts.iter().map(BTreeSet::len).sum::<usize>(), c.n());
            assert!(d.steps.iter().all(|s| s.prefix_mu <= 21 && s.part_mu <= 21));
        }
    }

    #[test]
    fn synthesis_examples() {
        for n in 1..=6 {
            let s = synthesize(&complete(n, "k"), 2).unwrap();
            assert!(s.expr.width() <= 3);
        }
        let ids: Vec<String> = (0..9).map(|i| format!("p{i}")).collect();
        let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
        let p = path(&refs);
        let s = synthesize(&p, 3).unwrap();
        assert_eq!(s.expr.eval().unwrap().graph, p);
        let two = Graph::from_edges(&["a", "b", "c"], &[("a", "b")]);
        assert_eq!(synthesize(&two, 3).unwrap().expr.eval().unwrap().graph, two);
        assert!(matches!(synthesize(&p, 1), Err(DecompError::BadK(1))));
    }
}
