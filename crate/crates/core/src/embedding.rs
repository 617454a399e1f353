//! Embeddings of unit interval graphs into the canonical graphs `H_{n,m}`.
//!
//! For a connected graph with canonical partition `Q_0..Q_t`, layer `Q_i`
//! goes to row `i + 1`. A vertex `u` of row `r` and a vertex `w` of row
//! `r + 1` are adjacent in `H` exactly when `col(w) <= col(u)`, so all that is
//! needed is a column assignment that realises the cross edges of each
//! co-chain graph `G_i`. Taking an interval model along the canonical order
//! with left ends `l`, `u ∈ Q_i` and `w ∈ Q_{i+1}` are adjacent iff
//! `l(w) − (i+1) < l(u) − i`. Sorting vertices by `l(v) − layer(v)` therefore
//! lists every cross neighbour of `u` in the next layer before `u` and every
//! cross non-neighbour after it; columns are then assigned greedily along that
//! sequence, reusing a column whenever no constraint forbids it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num::BigRational;
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vx};
use crate::uig::{
    canonical_partitions, cells_adjacent, model_along, normalised, CanonicalPartition, UigError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error(transparent)]
    NotUnitInterval(#[from] UigError),
    #[error("vertex `{0}` has no cell")]
    Missing(String),
    #[error("embedding maps unknown vertex `{0}`")]
    Unknown(String),
    #[error("cell ({row}, {col}) of `{id}` lies outside the target")]
    OutOfRange { id: String, row: usize, col: usize },
    #[error("`{a}` and `{b}` share cell ({row}, {col})")]
    NotInjective { a: String, b: String, row: usize, col: usize },
    #[error("`{a}`-`{b}`: adjacent in the graph is {in_graph}, in the target {in_target}")]
    Adjacency { a: String, b: String, in_graph: bool, in_target: bool },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Dimensions of a canonical graph `H_{rows,cols}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalGraphSpec {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellEmbedding {
    pub target: CanonicalGraphSpec,
    pub map: BTreeMap<String, (usize, usize)>,
}

impl CellEmbedding {
    pub fn to_text(&self) -> String {
        let mut out = format!("target {} {}\n", self.target.rows, self.target.cols);
        for (v, (r, c)) in &self.map {
            out.push_str(&format!("map {v} {r} {c}\n"));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<CellEmbedding, EmbedError> {
        let mut target = None;
        let mut map = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| EmbedError::Parse { line: no + 1, msg: msg.into() };
            let num = |s: &str| s.parse::<usize>().map_err(|_| err("expected a number"));
            match line.split_whitespace().collect::<Vec<_>>().as_slice() {
                ["target", r, c] if target.is_none() => {
                    target = Some(CanonicalGraphSpec { rows: num(r)?, cols: num(c)? });
                }
                ["map", v, r, c] if target.is_some() => {
                    if map.insert(v.to_string(), (num(r)?, num(c)?)).is_some() {
                        return Err(err("vertex mapped twice"));
                    }
                }
                _ => return Err(err("expected `target <n> <n>` then `map <id> <row> <col>` lines")),
            }
        }
        let target = target.ok_or(EmbedError::Parse { line: 0, msg: "missing target".into() })?;
        Ok(CellEmbedding { target, map })
    }
}

impl fmt::Display for CellEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Cells for one connected component given by a valid canonical partition.
/// Rows and columns are 1-based and local to the component; at most
/// `|component|` of each are used.
pub fn embed_layers(g: &Graph, cp: &CanonicalPartition) -> BTreeMap<Vx, (usize, usize)> {
    embed_ordered(g, &normalised(g, cp), &cp.layer_of())
}

/// Cells for the vertices of `order`, an umbrella ordering of the subgraph
/// they induce in which `layer` is non-decreasing and every edge joins equal
/// or consecutive layers. Layer `i` goes to row `i + 1`; layers may be
/// skipped.
pub fn embed_ordered(
    g: &Graph,
    order: &[Vx],
    layer: &BTreeMap<Vx, usize>,
) -> BTreeMap<Vx, (usize, usize)> {
    let model = model_along(g, order);
    let mut keyed: Vec<(BigRational, usize, Vx)> = order
        .iter()
        .zip(&model.left)
        .map(|(&v, (_, l))| (l - BigRational::from_integer(layer[&v].into()), layer[&v], v))
        .collect();
    keyed.sort();
    let mut cells = BTreeMap::new();
    // Largest column used so far per layer.
    let mut top: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, i, v) in keyed {
        let get = |j: usize| top.get(&j).copied().unwrap_or(0);
        let below_prev = if i > 0 { get(i - 1) } else { 0 };
        let col = (get(i).max(below_prev) + 1).max(get(i + 1)).max(1);
        top.insert(i, col);
        cells.insert(v, (i + 1, col));
    }
    cells
}

/// Embeds a unit interval graph on `n` vertices into `H_{n,n}`. Components
/// are placed block-diagonally, largest first, ties by smallest vertex id.
pub fn embed_universal(g: &Graph) -> Result<CellEmbedding, EmbedError> {
    let mut parts = canonical_partitions(g)?;
    parts.sort_by_cached_key(|cp| {
        let min_id = cp.sequence().iter().map(|&v| g.id(v).to_string()).min();
        (std::cmp::Reverse(cp.vertices().len()), min_id)
    });
    let mut map = BTreeMap::new();
    let mut offset = 0;
    for cp in &parts {
        for (v, (r, c)) in embed_layers(g, cp) {
            map.insert(g.id(v).to_string(), (offset + r, offset + c));
        }
        offset += cp.vertices().len();
    }
    let n = g.n();
    Ok(CellEmbedding { target: CanonicalGraphSpec { rows: n, cols: n }, map })
}

/// Checks that `emb` is an induced-subgraph embedding of `g`.
pub fn verify_embedding(g: &Graph, emb: &CellEmbedding) -> Result<(), EmbedError> {
    for id in emb.map.keys() {
        if !g.contains(id) {
            return Err(EmbedError::Unknown(id.clone()));
        }
    }
    let mut cells: Vec<(usize, usize)> = Vec::with_capacity(g.n());
    let mut owner: BTreeMap<(usize, usize), &str> = BTreeMap::new();
    for v in 0..g.n() {
        let id = g.id(v);
        let &(row, col) = emb.map.get(id).ok_or_else(|| EmbedError::Missing(id.into()))?;
        if row == 0 || col == 0 || row > emb.target.rows || col > emb.target.cols {
            return Err(EmbedError::OutOfRange { id: id.into(), row, col });
        }
        if let Some(prev) = owner.insert((row, col), id) {
            return Err(EmbedError::NotInjective { a: prev.into(), b: id.into(), row, col });
        }
        cells.push((row, col));
    }
    for x in 0..g.n() {
        for y in x + 1..g.n() {
            let in_graph = g.adjacent(x, y);
            let in_target = cells_adjacent(cells[x], cells[y]);
            if in_graph != in_target {
                return Err(EmbedError::Adjacency {
                    a: g.id(x).into(),
                    b: g.id(y).into(),
                    in_graph,
                    in_target,
                });
            }
        }
    }
    Ok(())
}

/// The subgraph of `H_{rows,cols}` induced by the image, with the
/// embedded graph's ids.
pub fn image_graph(emb: &CellEmbedding) -> Result<Graph, GraphError> {
    let mut g = Graph::new();
    let entries: Vec<(&String, &(usize, usize))> = emb.map.iter().collect();
    for (v, _) in &entries {
        g.add_vertex(v)?;
    }
    for x in 0..entries.len() {
        for y in x + 1..entries.len() {
            if cells_adjacent(*entries[x].1, *entries[y].1) {
                g.connect(x, y);
            }
        }
    }
    Ok(g)
}

/// Ids of the cells used, grouped by row.
pub fn rows_used(emb: &CellEmbedding) -> BTreeMap<usize, BTreeSet<usize>> {
    let mut rows: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for &(r, c) in emb.map.values() {
        rows.entry(r).or_default().insert(c);
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};
    use crate::uig::{canonical_partition, generate_h, random_uig};

    fn cells(emb: &CellEmbedding) -> Vec<(&str, (usize, usize))> {
        emb.map.iter().map(|(v, &c)| (v.as_str(), c)).collect()
    }

    #[test]
    fn examples() {
        let k3 = complete(3, "k");
        let e = embed_universal(&k3).unwrap();
        // Layers are BFS distances from k0, so k1 and k2 share row 2.
        assert_eq!(cells(&e), vec![("k0", (1, 2)), ("k1", (2, 1)), ("k2", (2, 2))]);
        assert_eq!(verify_embedding(&k3, &e), Ok(()));

        let p3 = path(&["a", "b", "c"]);
        let e = embed_universal(&p3).unwrap();
        assert_eq!(cells(&e), vec![("a", (1, 1)), ("b", (2, 1)), ("c", (3, 1))]);
        assert_eq!(verify_embedding(&p3, &e), Ok(()));

        let two = Graph::from_edges(&["a", "b"], &[]);
        let e = embed_universal(&two).unwrap();
        assert_eq!(e.target, CanonicalGraphSpec { rows: 2, cols: 2 });
        assert_eq!(cells(&e), vec![("a", (1, 1)), ("b", (2, 2))]);
    }

    #[test]
    fn rejects_bad_embeddings() {
        let p3 = path(&["a", "b", "c"]);
        let row = CellEmbedding {
            target: CanonicalGraphSpec { rows: 3, cols: 3 },
            map: [("a", (1, 1)), ("b", (1, 2)), ("c", (1, 3))]
                .into_iter()
                .map(|(v, c)| (v.to_string(), c))
                .collect(),
        };
        assert!(matches!(verify_embedding(&p3, &row), Err(EmbedError::Adjacency { .. })));
        let mut clash = row.clone();
        clash.map.insert("c".into(), (1, 1));
        assert!(matches!(verify_embedding(&p3, &clash), Err(EmbedError::NotInjective { .. })));
        let mut far = row.clone();
        far.map.insert("c".into(), (4, 1));
        assert!(matches!(verify_embedding(&p3, &far), Err(EmbedError::OutOfRange { .. })));
        let mut short = row;
        short.map.remove("c");
        assert_eq!(verify_embedding(&p3, &short), Err(EmbedError::Missing("c".into())));
    }

    #[test]
    fn layers_go_to_rows() {
        for seed in 0..40 {
            let g = random_uig(14, 5.0, seed);
            let e = embed_universal(&g).unwrap();
            assert_eq!(verify_embedding(&g, &e), Ok(()), "seed {seed}");
            if g.is_connected() {
                let cp = canonical_partition(&g).unwrap();
                for (i, layer) in cp.layers.iter().enumerate() {
                    for &v in layer {
                        assert_eq!(e.map[g.id(v)].0, i + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn h_embeds_into_itself() {
        let h = generate_h(3, 4);
        let e = embed_universal(&h).unwrap();
        assert_eq!(verify_embedding(&h, &e), Ok(()));
        assert_eq!(image_graph(&e).unwrap(), h);
    }

    #[test]
    fn text_round_trip() {
        let g = random_uig(9, 3.0, 2);
        let e = embed_universal(&g).unwrap();
        assert_eq!(CellEmbedding::parse_text(&e.to_text()).unwrap(), e);
        assert!(CellEmbedding::parse_text("map a 1 1\n").is_err());
    }

    #[test]
    fn claw_is_refused() {
        let claw = Graph::from_edges(&["c", "x", "y", "z"], &[("c", "x"), ("c", "y"), ("c", "z")]);
        assert!(matches!(embed_universal(&claw), Err(EmbedError::NotUnitInterval(_))));
    }
}
