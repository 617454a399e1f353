//! Composition of clique-width expressions along a vertex partition.
//!
//! Given parts `V_1..V_t` of a host graph, an expression of width at most `k`
//! for each `G[V_i]`, and a bound `l` on the number of similarity classes of
//! every part and of every prefix union `V_1 ∪ … ∪ V_i`, the host is built
//! with at most `k·l` labels.
//!
//! Label layout (with `l` fixed for the whole run):
//! * class labels of the finished prefix live in `1..=l`;
//! * inside a part, the vertex of similarity class `c` carrying local label
//!   rank `r` gets `r·l + c + 1`, so classes never share a label;
//! * a finished part collapses every class onto its rank-1 label
//!   `l + c + 1`, which is disjoint from the prefix labels because `k ≥ 2`.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::expr::{join, relabel, union, CwExpr, ExprError, Label};
use crate::graph::{similarity_classes, Graph, Vx};

#[derive(Debug, Clone)]
pub struct PartScheme {
    pub host: Graph,
    pub parts: Vec<BTreeSet<String>>,
    pub part_exprs: Vec<CwExpr>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error("parts do not partition the host vertices: {0}")]
    NotAPartition(String),
    #[error("expression for part {part} does not evaluate to the induced subgraph")]
    PartMismatch { part: usize },
    #[error("part {part} expression is invalid: {err}")]
    BadPartExpr { part: usize, err: ExprError },
    #[error("part {part} uses {width} labels, above k = {k}")]
    WidthExceeded { part: usize, width: usize, k: usize },
    #[error("similarity class count {mu} exceeds l = {l} at part {part}")]
    MuExceeded { part: usize, mu: usize, l: usize },
    #[error("adjacency between a prefix class and a class of part {part} is not uniform")]
    NonUniform { part: usize },
    #[error("composed expression does not rebuild the host")]
    HostMismatch,
}

#[derive(Debug, Clone)]
pub struct Composition {
    pub expr: CwExpr,
    /// Label budget per part (at least 2).
    pub k: usize,
    /// Largest similarity-class count over parts and prefix unions.
    pub l: usize,
    pub part_mu: Vec<usize>,
    pub prefix_mu: Vec<usize>,
}

impl Composition {
    pub fn bound(&self) -> usize {
        self.k * self.l
    }
}

/// Composes with `k` and `l` measured from the scheme itself.
pub fn compose_partition(scheme: &PartScheme) -> Result<Composition, ComposeError> {
    compose_with_limits(scheme, None, None)
}

/// Composes, rejecting schemes whose part widths exceed `k_limit` or whose
/// class counts exceed `l_limit`.
pub fn compose_with_limits(
    scheme: &PartScheme,
    k_limit: Option<usize>,
    l_limit: Option<usize>,
) -> Result<Composition, ComposeError> {
    let host = &scheme.host;
    let parts = part_indices(scheme)?;
    if parts.len() != scheme.part_exprs.len() {
        return Err(ComposeError::NotAPartition(format!(
            "{} parts but {} expressions",
            parts.len(),
            scheme.part_exprs.len()
        )));
    }

    let mut k = 2;
    for (i, (part, e)) in parts.iter().zip(&scheme.part_exprs).enumerate() {
        let lg = e.eval().map_err(|err| ComposeError::BadPartExpr { part: i, err })?;
        if lg.graph != host.induced(part) {
            return Err(ComposeError::PartMismatch { part: i });
        }
        let w = e.width();
        if let Some(limit) = k_limit {
            if w > limit {
                return Err(ComposeError::WidthExceeded { part: i, width: w, k: limit });
            }
        }
        k = k.max(w);
    }

    let part_classes: Vec<Vec<BTreeSet<Vx>>> = parts
        .iter()
        .map(|p| similarity_classes(host, p).classes)
        .collect();
    let mut prefix = BTreeSet::new();
    let prefix_classes: Vec<Vec<BTreeSet<Vx>>> = parts
        .iter()
        .map(|p| {
            prefix.extend(p.iter().copied());
            similarity_classes(host, &prefix).classes
        })
        .collect();
    let part_mu: Vec<usize> = part_classes.iter().map(Vec::len).collect();
    let prefix_mu: Vec<usize> = prefix_classes.iter().map(Vec::len).collect();
    let l = part_mu.iter().chain(&prefix_mu).copied().max().unwrap_or(1);
    if let Some(limit) = l_limit {
        for i in 0..parts.len() {
            let mu = part_mu[i].max(prefix_mu[i]);
            if mu > limit {
                return Err(ComposeError::MuExceeded { part: i, mu, l: limit });
            }
        }
    }

    let l_lab = l as Label;
    let mut acc: Option<(CwExpr, Vec<BTreeSet<Vx>>, Vec<Label>)> = None;
    for (i, e) in scheme.part_exprs.iter().enumerate() {
        let classes = &part_classes[i];
        let class_of: BTreeMap<String, usize> = classes
            .iter()
            .enumerate()
            .flat_map(|(c, set)| set.iter().map(move |&v| (host.id(v).to_string(), c)))
            .collect();
        let ranks: BTreeMap<Label, Label> = e
            .labels()
            .into_iter()
            .enumerate()
            .map(|(r, lab)| (lab, r as Label))
            .collect();
        let enc = |c: usize, r: Label| r * l_lab + c as Label + 1;
        let (mut part_expr, present) = encode(e, &class_of, &ranks, &enc);
        for &(c, r) in &present {
            if r != 1 {
                part_expr = relabel(enc(c, r), enc(c, 1), part_expr);
            }
        }
        let b_label = |c: usize| enc(c, 1);

        acc = Some(match acc.take() {
            None => {
                // First part: class labels go straight into 1..=l.
                let mut e = part_expr;
                let mut labels = Vec::new();
                for c in 0..classes.len() {
                    e = relabel(b_label(c), c as Label + 1, e);
                    labels.push(c as Label + 1);
                }
                (e, classes.clone(), labels)
            }
            Some((prev_expr, prev_classes, prev_labels)) => {
                let mut e = union(prev_expr, part_expr);
                for (a, a_set) in prev_classes.iter().enumerate() {
                    for (b, b_set) in classes.iter().enumerate() {
                        let adjacent = a_set
                            .iter()
                            .flat_map(|&x| b_set.iter().map(move |&y| (x, y)))
                            .filter(|&(x, y)| host.adjacent(x, y))
                            .count();
                        if adjacent == a_set.len() * b_set.len() {
                            e = join(prev_labels[a], b_label(b), e);
                        } else if adjacent != 0 {
                            return Err(ComposeError::NonUniform { part: i });
                        }
                    }
                }
                let merged = &prefix_classes[i];
                let labels = merge_labels(
                    &mut e,
                    merged,
                    &prev_classes,
                    &prev_labels,
                    classes,
                    &b_label,
                    l,
                )
                .ok_or(ComposeError::NonUniform { part: i })?;
                (e, merged.clone(), labels)
            }
        });
    }

    let (expr, _, _) = acc.ok_or_else(|| ComposeError::NotAPartition("no parts".into()))?;
    let built = expr.eval().map_err(|_| ComposeError::HostMismatch)?;
    if built.graph != *host || expr.width() > k * l {
        return Err(ComposeError::HostMismatch);
    }
    Ok(Composition { expr, k, l, part_mu, prefix_mu })
}

fn part_indices(scheme: &PartScheme) -> Result<Vec<BTreeSet<Vx>>, ComposeError> {
    let host = &scheme.host;
    let mut seen = vec![false; host.n()];
    let mut out = Vec::new();
    for part in &scheme.parts {
        if part.is_empty() {
            return Err(ComposeError::NotAPartition("empty part".into()));
        }
        let mut idx = BTreeSet::new();
        for id in part {
            let v = host
                .index_of(id)
                .map_err(|e| ComposeError::NotAPartition(e.to_string()))?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(ComposeError::NotAPartition(format!("`{id}` in two parts")));
            }
            idx.insert(v);
        }
        out.push(idx);
    }
    if let Some(v) = seen.iter().position(|s| !s) {
        return Err(ComposeError::NotAPartition(format!("`{}` uncovered", host.id(v))));
    }
    Ok(out)
}

/// Rewrites a part expression onto (class, rank) labels. Returns the
/// rewritten tree and the (class, rank) pairs live at its root.
fn encode(
    e: &CwExpr,
    class_of: &BTreeMap<String, usize>,
    ranks: &BTreeMap<Label, Label>,
    enc: &dyn Fn(usize, Label) -> Label,
) -> (CwExpr, BTreeSet<(usize, Label)>) {
    match e {
        CwExpr::Create(lab, v) => {
            let (c, r) = (class_of[v], ranks[lab]);
            (CwExpr::Create(enc(c, r), v.clone()), [(c, r)].into())
        }
        CwExpr::Union(a, b) => {
            let (ea, pa) = encode(a, class_of, ranks, enc);
            let (eb, pb) = encode(b, class_of, ranks, enc);
            (union(ea, eb), &pa | &pb)
        }
        CwExpr::Join(i, j, child) => {
            let (mut inner, present) = encode(child, class_of, ranks, enc);
            let (ri, rj) = (ranks[i], ranks[j]);
            for &(c, _) in present.iter().filter(|p| p.1 == ri) {
                for &(d, _) in present.iter().filter(|p| p.1 == rj) {
                    inner = join(enc(c, ri), enc(d, rj), inner);
                }
            }
            (inner, present)
        }
        CwExpr::Relabel(i, j, child) => {
            let (mut inner, present) = encode(child, class_of, ranks, enc);
            let (ri, rj) = (ranks[i], ranks[j]);
            let mut next = BTreeSet::new();
            for &(c, r) in &present {
                if r == ri {
                    inner = relabel(enc(c, ri), enc(c, rj), inner);
                    next.insert((c, rj));
                } else {
                    next.insert((c, r));
                }
            }
            (inner, next)
        }
    }
}

/// Relabels prefix labels (in `1..=l`) and part labels onto the classes of
/// the enlarged prefix. Returns the class labels, or `None` when an old class
/// straddles two new ones.
fn merge_labels(
    e: &mut CwExpr,
    merged: &[BTreeSet<Vx>],
    prev_classes: &[BTreeSet<Vx>],
    prev_labels: &[Label],
    part_classes: &[BTreeSet<Vx>],
    b_label: &dyn Fn(usize) -> Label,
    l: usize,
) -> Option<Vec<Label>> {
    let home = |set: &BTreeSet<Vx>| -> Option<usize> {
        let first = set.iter().next()?;
        let c = merged.iter().position(|m| m.contains(first))?;
        set.is_subset(&merged[c]).then_some(c)
    };
    let mut a_members: Vec<Vec<Label>> = vec![Vec::new(); merged.len()];
    for (set, &lab) in prev_classes.iter().zip(prev_labels) {
        a_members[home(set)?].push(lab);
    }
    let mut b_members: Vec<Vec<Label>> = vec![Vec::new(); merged.len()];
    for (b, set) in part_classes.iter().enumerate() {
        b_members[home(set)?].push(b_label(b));
    }

    let mut target: Vec<Option<Label>> = vec![None; merged.len()];
    let wrap = |e: &mut CwExpr, from: Label, to: Label| {
        if from != to {
            *e = relabel(from, to, std::mem::replace(e, CwExpr::Create(1, String::new())));
        }
    };
    // Classes holding old prefix labels keep the smallest of them.
    for (c, labs) in a_members.iter().enumerate() {
        if let Some(&t) = labs.iter().min() {
            for &lab in labs {
                wrap(e, lab, t);
            }
            target[c] = Some(t);
        }
    }
    let used: BTreeSet<Label> = target.iter().flatten().copied().collect();
    let mut free = (1..=l as Label).filter(|x| !used.contains(x));
    for t in target.iter_mut().filter(|t| t.is_none()) {
        *t = Some(free.next()?);
    }
    let target: Vec<Label> = target.into_iter().map(Option::unwrap).collect();
    for (c, labs) in b_members.iter().enumerate() {
        for &lab in labs {
            wrap(e, lab, target[c]);
        }
    }
    Some(target)
}
