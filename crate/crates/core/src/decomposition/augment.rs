//! Padding layers so that no co-chain graph has a trivial cluster.

use std::collections::BTreeSet;

use crate::graph::{Graph, Vx};
use crate::uig::{verify_canonical, CanonicalPartition};

use super::DecompError;

#[derive(Debug, Clone)]
pub struct Augmented {
    pub graph: Graph,
    pub partition: CanonicalPartition,
    /// Ids of the added vertices.
    pub added: Vec<String>,
}

fn fresh_id(g: &Graph, counter: &mut usize) -> String {
    loop {
        let id = format!("aug{}", *counter);
        *counter += 1;
        if !g.contains(&id) {
            return id;
        }
    }
}

fn has_nbr_in(g: &Graph, v: Vx, layer: &[Vx]) -> bool {
    layer.iter().any(|&w| g.adjacent(v, w))
}

/// Adds at most one vertex per layer for each side of each co-chain graph.
///
/// A part-2 vertex of `G_j` without neighbours in `Q_{j−1}` is fixed by a new
/// last vertex of `Q_{j−1}` that sees all of `Q_{j−1} ∪ Q_j` and copies the
/// previous-layer neighbourhood of the old last vertex. Symmetrically a
/// part-1 vertex without neighbours in `Q_j` is fixed by a new first vertex of
/// `Q_j` that sees `Q_{j−1} ∪ Q_j` and copies the next-layer neighbourhood of
/// the old first vertex. Copied neighbourhoods may be empty, which moves the
/// defect one layer further; the two sweeps run in the direction of that
/// cascade.
pub fn augment_trivial(g: &Graph, cp: &CanonicalPartition) -> Result<Augmented, DecompError> {
    verify_canonical(g, cp).map_err(DecompError::Partition)?;
    let mut g2 = g.clone();
    let mut layers = cp.layers.clone();
    let mut added = Vec::new();
    let mut counter = 0;
    let t = layers.len();
    let mut add = |g2: &mut Graph, added: &mut Vec<String>, nbrs: Vec<Vx>| -> Vx {
        let id = fresh_id(g2, &mut counter);
        let z = g2.add_vertex(&id).expect("fresh id");
        for w in nbrs {
            g2.connect(z, w);
        }
        added.push(id);
        z
    };
    for j in (1..t).rev() {
        if layers[j].iter().all(|&y| has_nbr_in(&g2, y, &layers[j - 1])) {
            continue;
        }
        let mut nbrs: Vec<Vx> = layers[j - 1].iter().chain(&layers[j]).copied().collect();
        if j >= 2 {
            let last = *layers[j - 1].last().unwrap();
            nbrs.extend(layers[j - 2].iter().filter(|&&w| g2.adjacent(last, w)));
        }
        let z = add(&mut g2, &mut added, nbrs);
        layers[j - 1].push(z);
    }
    for j in 1..t {
        if layers[j - 1].iter().all(|&x| has_nbr_in(&g2, x, &layers[j])) {
            continue;
        }
        let mut nbrs: Vec<Vx> = layers[j - 1].iter().chain(&layers[j]).copied().collect();
        if j + 1 < t {
            let first = layers[j][0];
            nbrs.extend(layers[j + 1].iter().filter(|&&w| g2.adjacent(first, w)));
        }
        let z = add(&mut g2, &mut added, nbrs);
        layers[j].insert(0, z);
    }
    let partition = CanonicalPartition { layers };
    verify_canonical(&g2, &partition).map_err(DecompError::Partition)?;
    Ok(Augmented { graph: g2, partition, added })
}

/// Vertices of `cp` lying in a trivial cluster of some co-chain graph.
pub fn trivial_vertices(g: &Graph, cp: &CanonicalPartition) -> BTreeSet<Vx> {
    let mut out = BTreeSet::new();
    for j in 1..cp.layers.len() {
        let (a, b) = (&cp.layers[j - 1], &cp.layers[j]);
        out.extend(a.iter().filter(|&&x| !has_nbr_in(g, x, b)));
        out.extend(b.iter().filter(|&&y| !has_nbr_in(g, y, a)));
    }
    out
}
