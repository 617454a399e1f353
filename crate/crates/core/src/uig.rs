//! Unit interval graphs: the canonical graphs `H_{n,m}`, recognition through
//! canonical partitions, interval-model synthesis and test-corpus
//! generators.
//!
//! A canonical partition splits a connected graph into clique layers
//! `Q_0..Q_t` such that
//! * (a) vertices of non-consecutive layers are non-adjacent,
//! * (b) consecutive layers induce co-chain graphs `G_j`,
//! * (c) every inner layer has an order that is decreasing in `G_j` and
//!   increasing in `G_{j+1}`.
//!
//! A connected graph has such a partition exactly when it is a unit interval
//! graph.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::bigint::BigInt;
use num::{BigRational, One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cochain::check_cochain;
use crate::compose::{compose_partition, PartScheme};
use crate::expr::{path_expression, CwExpr};
use crate::graph::{Graph, GraphError, Vx};

/// Vertex id of cell `(row, col)` of a canonical graph (1-based).
pub fn cell_id(row: usize, col: usize) -> String {
    format!("v{row}_{col}")
}

/// Ids of column `col` of `H_{rows,·}`, top to bottom.
pub fn column_ids(rows: usize, col: usize) -> Vec<String> {
    (1..=rows).map(|r| cell_id(r, col)).collect()
}

/// Adjacency of two cells in a canonical graph: rows are cliques and
/// `v_{i,j}` sees `v_{i+1,1..=j}`.
pub fn cells_adjacent(a: (usize, usize), b: (usize, usize)) -> bool {
    let ((r1, c1), (r2, c2)) = if a.0 <= b.0 { (a, b) } else { (b, a) };
    if a == b {
        return false;
    }
    match r2 - r1 {
        0 => true,
        1 => c2 <= c1,
        _ => false,
    }
}

/// The canonical graph `H_{n,m}` on ids `v{i}_{j}`, rows first.
pub fn generate_h(n: usize, m: usize) -> Graph {
    let mut g = Graph::new();
    let mut cells = Vec::new();
    for i in 1..=n {
        for j in 1..=m {
            g.add_vertex(&cell_id(i, j)).unwrap();
            cells.push((i, j));
        }
    }
    for x in 0..cells.len() {
        for y in x + 1..cells.len() {
            if cells_adjacent(cells[x], cells[y]) {
                g.connect(x, y);
            }
        }
    }
    g
}

/// Layers `Q_0..Q_t`, each listed in its chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalPartition {
    pub layers: Vec<Vec<Vx>>,
}

impl CanonicalPartition {
    pub fn vertices(&self) -> BTreeSet<Vx> {
        self.layers.iter().flatten().copied().collect()
    }

    pub fn layer_of(&self) -> BTreeMap<Vx, usize> {
        self.layers
            .iter()
            .enumerate()
            .flat_map(|(j, l)| l.iter().map(move |&v| (v, j)))
            .collect()
    }

    /// All vertices, layer by layer in chain order. For a valid partition
    /// this is an umbrella ordering.
    pub fn sequence(&self) -> Vec<Vx> {
        self.layers.iter().flatten().copied().collect()
    }

    pub fn to_ids(&self, g: &Graph) -> Vec<Vec<String>> {
        self.layers
            .iter()
            .map(|l| l.iter().map(|&v| g.id(v).to_string()).collect())
            .collect()
    }
}

/// The first condition a candidate partition breaks.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("partition does not cover the graph exactly")]
    Malformed,
    #[error("layer {layer} is not a clique (`{a}`, `{b}`)")]
    LayerNotClique { layer: usize, a: String, b: String },
    #[error("edge `{a}`-`{b}` joins non-consecutive layers")]
    NonConsecutiveEdge { a: String, b: String },
    #[error("layers {layer} and {} are not co-chain: {reason}", layer + 1)]
    NotCoChain { layer: usize, reason: String },
    #[error("layer {layer} has no order decreasing towards the previous layer and increasing towards the next (`{a}`, `{b}`)")]
    Ordering { layer: usize, a: String, b: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UigError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("not a unit interval graph: every start vertex fails; first failure: {0}")]
    NotUnitInterval(Violation),
    #[error("invalid canonical partition: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn count_into(g: &Graph, v: Vx, layer: &BTreeSet<Vx>) -> usize {
    g.neighbors(v).iter().filter(|w| layer.contains(w)).count()
}

fn nbrs_in(g: &Graph, v: Vx, layer: &BTreeSet<Vx>) -> BTreeSet<Vx> {
    g.neighbors(v).intersection(layer).copied().collect()
}

/// Sorts each layer by (neighbours in the previous layer, descending;
/// neighbours in the next layer, ascending; vertex index).
fn order_layers(g: &Graph, layers: &mut [Vec<Vx>]) {
    let sets: Vec<BTreeSet<Vx>> = layers.iter().map(|l| l.iter().copied().collect()).collect();
    let empty = BTreeSet::new();
    for j in 0..layers.len() {
        let prev = if j > 0 { &sets[j - 1] } else { &empty };
        let next = sets.get(j + 1).unwrap_or(&empty);
        layers[j].sort_by_key(|&v| {
            (
                std::cmp::Reverse(count_into(g, v, prev)),
                count_into(g, v, next),
                v,
            )
        });
    }
}

/// BFS layering from `start`, ordered and verified.
pub fn canonical_partition_from(g: &Graph, start: Vx) -> Result<CanonicalPartition, Violation> {
    let mut layers = g.bfs_layers(start);
    order_layers(g, &mut layers);
    let cp = CanonicalPartition { layers };
    check_layers(g, &cp, &cp.vertices())?;
    Ok(cp)
}

/// Canonical partition of a connected graph, trying start vertices in vertex
/// order and returning the first that passes.
pub fn canonical_partition(g: &Graph) -> Result<CanonicalPartition, UigError> {
    if !g.is_connected() {
        return Err(UigError::Disconnected);
    }
    if g.n() == 0 {
        return Ok(CanonicalPartition { layers: vec![] });
    }
    first_success(g, 0..g.n())
}

fn first_success(
    g: &Graph,
    starts: impl IntoIterator<Item = Vx>,
) -> Result<CanonicalPartition, UigError> {
    let mut first_err = None;
    for s in starts {
        match canonical_partition_from(g, s) {
            Ok(cp) => return Ok(cp),
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    Err(UigError::NotUnitInterval(first_err.unwrap_or(Violation::Malformed)))
}

/// One canonical partition per connected component, components in order of
/// their smallest vertex.
pub fn canonical_partitions(g: &Graph) -> Result<Vec<CanonicalPartition>, UigError> {
    g.connected_components()
        .into_iter()
        .map(|comp| first_success(g, comp))
        .collect()
}

pub fn is_unit_interval(g: &Graph) -> bool {
    canonical_partitions(g).is_ok()
}

/// Checks the clique and (a)(b)(c) conditions literally.
pub fn verify_canonical(g: &Graph, cp: &CanonicalPartition) -> Result<(), Violation> {
    let all: BTreeSet<Vx> = (0..g.n()).collect();
    check_layers(g, cp, &all)
}

/// Checks `cp` as a canonical partition of `g[scope]`.
fn check_layers(g: &Graph, cp: &CanonicalPartition, scope: &BTreeSet<Vx>) -> Result<(), Violation> {
    let covered: Vec<Vx> = cp.sequence();
    let set: BTreeSet<Vx> = covered.iter().copied().collect();
    if set.len() != covered.len() || &set != scope || cp.layers.iter().any(Vec::is_empty) {
        return Err(Violation::Malformed);
    }
    let layer_of = cp.layer_of();
    for (j, layer) in cp.layers.iter().enumerate() {
        for (i, &a) in layer.iter().enumerate() {
            if let Some(&b) = layer[i + 1..].iter().find(|&&b| !g.adjacent(a, b)) {
                return Err(Violation::LayerNotClique {
                    layer: j,
                    a: g.id(a).into(),
                    b: g.id(b).into(),
                });
            }
        }
    }
    for &a in &set {
        for &b in g.neighbors(a) {
            if a < b && set.contains(&b) && layer_of[&a].abs_diff(layer_of[&b]) > 1 {
                return Err(Violation::NonConsecutiveEdge { a: g.id(a).into(), b: g.id(b).into() });
            }
        }
    }
    let sets: Vec<BTreeSet<Vx>> = cp.layers.iter().map(|l| l.iter().copied().collect()).collect();
    for j in 1..cp.layers.len() {
        let pair: BTreeSet<Vx> = &sets[j - 1] | &sets[j];
        let sub = g.induced(&pair);
        let local = |vs: &Vec<Vx>| -> Vec<Vx> {
            vs.iter().map(|&v| sub.index_of(g.id(v)).unwrap()).collect()
        };
        if let Err(e) = check_cochain(&sub, &local(&cp.layers[j - 1]), &local(&cp.layers[j])) {
            return Err(Violation::NotCoChain { layer: j - 1, reason: e.to_string() });
        }
    }
    for j in 1..cp.layers.len().saturating_sub(1) {
        let layer = &cp.layers[j];
        for w in layer.windows(2) {
            let (a, b) = (w[0], w[1]);
            let prev_ok = nbrs_in(g, b, &sets[j - 1]).is_subset(&nbrs_in(g, a, &sets[j - 1]));
            let next_ok = nbrs_in(g, a, &sets[j + 1]).is_subset(&nbrs_in(g, b, &sets[j + 1]));
            if !prev_ok || !next_ok {
                return Err(Violation::Ordering { layer: j, a: g.id(a).into(), b: g.id(b).into() });
            }
        }
    }
    Ok(())
}

/// Unit-length intervals, one per vertex, given by exact left endpoints.
/// Two vertices are adjacent when their left endpoints differ by less than 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalModel {
    pub left: Vec<(String, BigRational)>,
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl IntervalModel {
    pub fn get(&self, id: &str) -> Option<&BigRational> {
        self.left.iter().find(|(v, _)| v == id).map(|(_, l)| l)
    }

    pub fn to_text(&self) -> String {
        self.left
            .iter()
            .map(|(v, l)| format!("i {v} {}/{}\n", l.numer(), l.denom()))
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<IntervalModel, GraphError> {
        let mut left = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| GraphError::Parse { line: no + 1, msg: msg.into() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            let ["i", id, value] = toks.as_slice() else {
                return Err(err("expected `i <id> <num>/<den>`"));
            };
            let (n, d) = value.split_once('/').ok_or_else(|| err("expected a fraction"))?;
            let n: BigInt = n.parse().map_err(|_| err("bad numerator"))?;
            let d: BigInt = d.parse().map_err(|_| err("bad denominator"))?;
            if d.is_zero() {
                return Err(err("zero denominator"));
            }
            left.push((id.to_string(), BigRational::new(n, d)));
        }
        Ok(IntervalModel { left })
    }
}

impl fmt::Display for IntervalModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Intersection graph of the model.
pub fn graph_from_model(im: &IntervalModel) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    for (v, _) in &im.left {
        g.add_vertex(v)?;
    }
    let one = BigRational::one();
    for x in 0..im.left.len() {
        for y in x + 1..im.left.len() {
            if (&im.left[x].1 - &im.left[y].1).abs() < one {
                g.connect(x, y);
            }
        }
    }
    Ok(g)
}

/// The rational with the smallest denominator strictly inside `(lo, hi)`.
fn simplest_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    debug_assert!(lo < hi);
    let fl = lo.floor();
    let next = &fl + BigRational::one();
    if &next < hi {
        return next;
    }
    // Both ends lie in [fl, fl + 1]; recurse on reciprocals of the offsets.
    let top = BigRational::one() / (hi - &fl);
    let frac = lo - &fl;
    let y = if frac.is_zero() {
        top.floor() + BigRational::one()
    } else {
        simplest_between(&top, &(BigRational::one() / frac))
    };
    fl + BigRational::one() / y
}

/// Interval model for a graph with a valid canonical partition.
///
/// Vertices are placed along the layer-by-layer sequence. Each vertex goes
/// strictly right of its predecessor, at or beyond the right end of its last
/// non-neighbour among earlier vertices, and strictly before the right end of
/// its first earlier neighbour. Inside a layer the left ends increase along
/// the chain order and stay within one unit.
pub fn build_model(g: &Graph, cp: &CanonicalPartition) -> Result<IntervalModel, UigError> {
    verify_canonical(g, cp).map_err(UigError::Invalid)?;
    Ok(model_along(g, &normalised(g, cp)))
}

/// Re-sorts the two marginal layers by their single chain.
pub(crate) fn normalised(g: &Graph, cp: &CanonicalPartition) -> Vec<Vx> {
    let mut layers = cp.layers.clone();
    let sets: Vec<BTreeSet<Vx>> = layers.iter().map(|l| l.iter().copied().collect()).collect();
    let t = layers.len();
    if t >= 2 {
        layers[0].sort_by_key(|&v| count_into(g, v, &sets[1]));
        layers[t - 1].sort_by_key(|&v| std::cmp::Reverse(count_into(g, v, &sets[t - 2])));
    }
    layers.concat()
}

/// Greedy placement along an umbrella ordering of (a subset of) `g`.
pub(crate) fn model_along(g: &Graph, order: &[Vx]) -> IntervalModel {
    let one = BigRational::one();
    let mut left: Vec<BigRational> = Vec::with_capacity(order.len());
    for (i, &v) in order.iter().enumerate() {
        if i == 0 {
            left.push(BigRational::zero());
            continue;
        }
        let first_nbr = (0..i).find(|&p| g.adjacent(order[p], v));
        let value = match first_nbr {
            None => &left[i - 1] + &one,
            Some(a) => {
                let strict = left[i - 1].clone();
                let lo = if a > 0 {
                    strict.max(&left[a - 1] + &one)
                } else {
                    strict
                };
                simplest_between(&lo, &(&left[a] + &one))
            }
        };
        left.push(value);
    }
    IntervalModel {
        left: order.iter().map(|&v| g.id(v).to_string()).zip(left).collect(),
    }
}

/// Graph on `n` random unit intervals with left ends uniform in
/// `[0, spread]`, rounded to thousandths. Ids `u0..`.
pub fn random_uig(n: usize, spread: f64, seed: u64) -> Graph {
    graph_from_model(&random_model(n, spread, seed)).expect("fresh ids")
}

pub fn random_model(n: usize, spread: f64, seed: u64) -> IntervalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = (spread.max(0.0) * 1000.0).round() as i64;
    IntervalModel {
        left: (0..n)
            .map(|i| {
                let x = if scale == 0 { 0 } else { rng.gen_range(0..=scale) };
                (format!("u{i}"), ratio(x, 1000))
            })
            .collect(),
    }
}

/// Expression for `H_{s,t}` with at most `3s` labels: one three-label path
/// expression per column, composed column by column.
pub fn h_expression(s: usize, t: usize) -> CwExpr {
    let host = generate_h(s, t);
    let parts = (1..=t).map(|j| column_ids(s, j).into_iter().collect()).collect();
    let part_exprs = (1..=t)
        .map(|j| path_expression(&column_ids(s, j)).expect("s >= 1"))
        .collect();
    compose_partition(&PartScheme { host, parts, part_exprs })
        .expect("columns of H satisfy the composition preconditions")
        .expr
}

/// Independent membership test for small graphs: searches every vertex
/// order for an umbrella ordering (for `u < v < w`, `uw ∈ E` implies
/// `uv, vw ∈ E`), which is what sorting a unit interval model by left
/// endpoint produces.
pub fn unit_interval_bruteforce(g: &Graph) -> bool {
    fn extend(g: &Graph, order: &mut Vec<Vx>, used: &mut [bool]) -> bool {
        if order.len() == g.n() {
            return true;
        }
        for w in 0..g.n() {
            if used[w] {
                continue;
            }
            // Adding w last: every earlier neighbour u must see everything
            // between u and w, and those in between must see w.
            let ok = order.iter().enumerate().all(|(pos, &u)| {
                !g.adjacent(u, w)
                    || order[pos + 1..]
                        .iter()
                        .all(|&x| g.adjacent(u, x) && g.adjacent(x, w))
            });
            if ok {
                used[w] = true;
                order.push(w);
                if extend(g, order, used) {
                    return true;
                }
                order.pop();
                used[w] = false;
            }
        }
        false
    }
    extend(g, &mut Vec::new(), &mut vec![false; g.n()])
}

/// Clique number of a unit interval graph, read off its model: the largest
/// number of left ends in a half-open window of length 1.
pub fn model_clique_number(im: &IntervalModel) -> usize {
    let mut ls: Vec<&BigRational> = im.left.iter().map(|(_, l)| l).collect();
    ls.sort();
    let one = BigRational::one();
    let mut best = 0;
    let mut lo = 0;
    for hi in 0..ls.len() {
        while ls[hi] - ls[lo] >= one {
            lo += 1;
        }
        best = best.max(hi - lo + 1);
    }
    best
}

/// Random unit interval graph with clique number at most `omega`; since
/// `H_{k,k}` contains `K_{k+1}`, `omega = k` gives an `H_{k,k}`-free graph.
pub fn random_sparse_uig(n: usize, omega: usize, seed: u64) -> Graph {
    graph_from_model(&random_sparse_model(n, omega, seed)).expect("fresh ids")
}

/// `H_{k,k}`-free unit interval graph with about `n` vertices and large
/// cliques: a clique-number-`k` graph whose vertices are then blown up into
/// classes of true twins (identical intervals). For `k >= 3` the canonical
/// graph `H_{k,k}` has no true twins, so an induced copy in the blow-up would
/// already lie in the base graph.
pub fn random_hfree_uig(n: usize, k: usize, seed: u64) -> Graph {
    let base_n = (n / 2).max(1);
    let base = random_sparse_model(base_n, k, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let mut left = base.left.clone();
    let mut next = base_n;
    while left.len() < n {
        let (_, l) = base.left[rng.gen_range(0..base_n)].clone();
        left.push((format!("u{next}"), l));
        next += 1;
    }
    graph_from_model(&IntervalModel { left }).expect("fresh ids")
}

fn random_sparse_model(n: usize, omega: usize, seed: u64) -> IntervalModel {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut left: Vec<i64> = Vec::new();
    let mut x: i64 = 0;
    while left.len() < n {
        x += rng.gen_range(50..=700);
        let window = left.iter().filter(|&&l| x - l < 1000).count();
        if window < omega {
            left.push(x);
        }
    }
    IntervalModel {
        left: left
            .into_iter()
            .enumerate()
            .map(|(i, l)| (format!("u{i}"), ratio(l, 1000)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};

    #[test]
    fn h_graphs() {
        let h = generate_h(2, 2);
        let expected = Graph::from_edges(
            &["v1_1", "v1_2", "v2_1", "v2_2"],
            &[("v1_1", "v1_2"), ("v2_1", "v2_2"), ("v1_1", "v2_1"), ("v1_2", "v2_1"), ("v1_2", "v2_2")],
        );
        assert_eq!(h, expected);
        let k = generate_h(1, 4);
        assert_eq!(k.edge_count(), 6);
        let h55 = generate_h(5, 5);
        assert_eq!(h55.n(), 25);
        let v11 = h55.index_of("v1_1").unwrap();
        let nbrs: BTreeSet<String> =
            h55.neighbors(v11).iter().map(|&w| h55.id(w).to_string()).collect();
        let want: BTreeSet<String> =
            ["v1_2", "v1_3", "v1_4", "v1_5", "v2_1"].iter().map(|s| s.to_string()).collect();
        assert_eq!(nbrs, want);
    }

    #[test]
    fn row_degrees() {
        for n in 1..=5 {
            for m in 1..=5 {
                let h = generate_h(n, m);
                for i in 1..=n {
                    for j in 1..=m {
                        let v = h.index_of(&cell_id(i, j)).unwrap();
                        let down = if i < n { j } else { 0 };
                        let up = if i > 1 { m - j + 1 } else { 0 };
                        assert_eq!(h.degree(v), m - 1 + down + up);
                    }
                }
            }
        }
    }

    #[test]
    fn partitions() {
        let p5 = path(&["a", "b", "c", "d", "e"]);
        let cp = canonical_partition(&p5).unwrap();
        assert_eq!(cp.layers, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);

        for (n, m) in [(3, 3), (4, 2), (2, 5)] {
            let h = generate_h(n, m);
            let cp = canonical_partition(&h).unwrap();
            assert_eq!(verify_canonical(&h, &cp), Ok(()));
            let rows = CanonicalPartition {
                layers: (1..=n)
                    .map(|i| (1..=m).map(|j| h.index_of(&cell_id(i, j)).unwrap()).collect())
                    .collect(),
            };
            assert_eq!(verify_canonical(&h, &rows), Ok(()));
            let mut swapped = rows.clone();
            if n >= 3 && m >= 2 {
                swapped.layers[1].swap(0, 1);
                assert!(matches!(
                    verify_canonical(&h, &swapped),
                    Err(Violation::Ordering { layer: 1, .. })
                ));
            }
        }

        let claw = Graph::from_edges(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]);
        assert!(matches!(canonical_partition(&claw), Err(UigError::NotUnitInterval(_))));
        for s in 0..4 {
            assert!(canonical_partition_from(&claw, s).is_err());
        }
        let two = Graph::from_edges(&["a", "b"], &[]);
        assert_eq!(canonical_partition(&two), Err(UigError::Disconnected));
    }

    #[test]
    fn verify_rejects_c4_splits() {
        let c4 = Graph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        );
        for mask in 1u32..15 {
            let l0: Vec<Vx> = (0..4).filter(|i| mask >> i & 1 == 1).collect();
            let l1: Vec<Vx> = (0..4).filter(|i| mask >> i & 1 == 0).collect();
            let cp = CanonicalPartition { layers: vec![l0, l1] };
            assert!(verify_canonical(&c4, &cp).is_err());
        }
    }

    #[test]
    fn models() {
        let p3 = path(&["a", "b", "c"]);
        let cp = canonical_partition(&p3).unwrap();
        let im = build_model(&p3, &cp).unwrap();
        assert_eq!(graph_from_model(&im).unwrap(), p3);

        let k4 = complete(4, "k");
        let im = build_model(&k4, &canonical_partition(&k4).unwrap()).unwrap();
        let ls: Vec<&BigRational> = im.left.iter().map(|(_, l)| l).collect();
        assert!(ls.windows(2).all(|w| w[0] < w[1]));
        assert!(ls[3] - ls[0] < BigRational::one());

        let h = generate_h(2, 2);
        let im = build_model(&h, &canonical_partition(&h).unwrap()).unwrap();
        assert_eq!(graph_from_model(&im).unwrap(), h);
        assert_eq!(IntervalModel::parse_text(&im.to_text()).unwrap(), im);
    }

    #[test]
    fn graph_from_literal_models() {
        let far = IntervalModel { left: vec![("a".into(), ratio(0, 1)), ("b".into(), ratio(2, 1))] };
        assert_eq!(graph_from_model(&far).unwrap().edge_count(), 0);
        let p3 = IntervalModel {
            left: vec![
                ("a".into(), ratio(0, 1)),
                ("b".into(), ratio(1, 2)),
                ("c".into(), ratio(5, 4)),
            ],
        };
        assert_eq!(graph_from_model(&p3).unwrap(), path(&["a", "b", "c"]));
        let same = IntervalModel { left: vec![("a".into(), ratio(0, 1)), ("b".into(), ratio(0, 1))] };
        assert_eq!(graph_from_model(&same).unwrap().edge_count(), 1);
        let touching = IntervalModel { left: vec![("a".into(), ratio(0, 1)), ("b".into(), ratio(1, 1))] };
        assert_eq!(graph_from_model(&touching).unwrap().edge_count(), 0);
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&ratio(0, 1), &ratio(2, 1)), ratio(1, 1));
        assert_eq!(simplest_between(&ratio(0, 1), &ratio(1, 1)), ratio(1, 2));
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(2, 5));
        assert_eq!(simplest_between(&ratio(-3, 2), &ratio(-1, 2)), ratio(-1, 1));
    }

    #[test]
    fn generators() {
        assert_eq!(random_uig(1, 3.0, 1).n(), 1);
        assert_eq!(random_uig(5, 0.0, 4), complete(5, "u"));
        let g = random_uig(20, 10.0, 7);
        assert!(canonical_partitions(&g).is_ok());
        assert_eq!(random_uig(12, 4.0, 3), random_uig(12, 4.0, 3));
        let s = random_sparse_uig(30, 3, 5);
        assert!(is_unit_interval(&s));
    }

    #[test]
    fn bruteforce_membership() {
        assert!(unit_interval_bruteforce(&generate_h(2, 3)));
        let claw = Graph::from_edges(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]);
        assert!(!unit_interval_bruteforce(&claw));
        let c4 = Graph::from_edges(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        );
        assert!(!unit_interval_bruteforce(&c4));
    }

    #[test]
    fn h_expressions() {
        let e = h_expression(1, 4);
        assert_eq!(e.eval().unwrap().graph, generate_h(1, 4));
        assert!(e.width() <= 3);
        let e = h_expression(3, 4);
        assert_eq!(e.eval().unwrap().graph, generate_h(3, 4));
        assert!(e.width() <= 9);
        let e = h_expression(5, 5);
        assert_eq!(e.eval().unwrap().graph, generate_h(5, 5));
        assert!(e.width() <= 15);
    }

    #[test]
    fn columns_are_paths_and_prefix_mu() {
        use crate::graph::{mu, path};
        for n in 1..=8 {
            for m in 1..=8 {
                let h = generate_h(n, m);
                for j in 1..=m {
                    let col = column_ids(n, j);
                    let sub = h.induced_subgraph(col.iter().map(String::as_str)).unwrap();
                    let refs: Vec<&str> = col.iter().map(String::as_str).collect();
                    assert_eq!(sub, path(&refs));
                }
            }
        }
        for s in 1..=6 {
            for t in 2..=6 {
                let h = generate_h(s, t);
                let mut prefix = BTreeSet::new();
                for i in 1..t {
                    prefix.extend(h.indices_of(column_ids(s, i).iter().map(String::as_str)).unwrap());
                    assert_eq!(mu(&h, &prefix), s, "s={s} t={t} i={i}");
                }
            }
        }
    }
}
