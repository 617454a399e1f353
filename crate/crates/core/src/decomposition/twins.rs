//! True-twin collapse and re-expansion.

use std::collections::{BTreeMap, BTreeSet};

use crate::expr::{create, join, relabel, union, CwExpr, Label};
use crate::graph::{Graph, Vx};

use super::DecompError;

/// Representative id → the other members of its true-twin class.
/// Representatives are the class members that come first in vertex order.
pub type TwinMap = BTreeMap<String, Vec<String>>;

/// Contracts every class of vertices with equal closed neighbourhoods.
pub fn collapse_twins(g: &Graph) -> (Graph, TwinMap) {
    let mut by_closed: BTreeMap<BTreeSet<Vx>, Vec<Vx>> = BTreeMap::new();
    for v in 0..g.n() {
        let mut closed = g.neighbors(v).clone();
        closed.insert(v);
        by_closed.entry(closed).or_default().push(v);
    }
    let mut keep = BTreeSet::new();
    let mut map = TwinMap::new();
    for class in by_closed.values() {
        keep.insert(class[0]);
        if class.len() > 1 {
            map.insert(
                g.id(class[0]).to_string(),
                class[1..].iter().map(|&v| g.id(v).to_string()).collect(),
            );
        }
    }
    (g.induced(&keep), map)
}

/// Replaces each representative's creation by a clique on its class. The
/// clique is built with the representative's label and one helper label
/// already used elsewhere in `e`, so the width only grows when `e` has a
/// single label.
pub fn expand_twins(e: &CwExpr, map: &TwinMap) -> Result<CwExpr, DecompError> {
    let created: BTreeSet<String> = e.vertices().into_iter().collect();
    for (rep, others) in map {
        if !created.contains(rep) {
            return Err(DecompError::TwinMap(format!("representative `{rep}` is not created")));
        }
        if let Some(dup) = others.iter().find(|o| created.contains(*o) || *o == rep) {
            return Err(DecompError::TwinMap(format!("twin `{dup}` already present")));
        }
    }
    if map.is_empty() {
        return Ok(e.clone());
    }
    let labels = e.labels();
    let helper = |l: Label| -> Label {
        labels.iter().copied().find(|&x| x != l).unwrap_or(if l == 1 { 2 } else { 1 })
    };
    Ok(expand(e, map, &helper))
}

fn expand(e: &CwExpr, map: &TwinMap, helper: &dyn Fn(Label) -> Label) -> CwExpr {
    match e {
        CwExpr::Create(l, v) => match map.get(v) {
            None => e.clone(),
            Some(others) => {
                let aux = helper(*l);
                others.iter().fold(e.clone(), |acc, t| {
                    relabel(aux, *l, join(*l, aux, union(acc, create(aux, t))))
                })
            }
        },
        CwExpr::Union(a, b) => union(expand(a, map, helper), expand(b, map, helper)),
        CwExpr::Join(i, j, c) => join(*i, *j, expand(c, map, helper)),
        CwExpr::Relabel(i, j, c) => relabel(*i, *j, expand(c, map, helper)),
    }
}
