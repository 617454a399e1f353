//! Splitting a window of consecutive layers into an upper part `X` and a
//! lower part `Y` along a minimum separator of its cluster graph.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::graph::{mu, Graph, Vx};
use crate::uig::CanonicalPartition;

use super::cluster_graph::{build_bg_lenient, ClusterGraph, EdgeKind};
use super::flow::{path_system, PathSystem};
use super::DecompError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockKind {
    PathEdge,
    PathAdjacent,
    Stripe,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    pub kind: BlockKind,
    /// Consecutive vertices of one layer, in layer order.
    pub members: Vec<Vx>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WindowSplit {
    pub layers: usize,
    pub paths: Vec<Vec<usize>>,
    pub separator: BTreeSet<usize>,
    pub x_side: BTreeSet<Vx>,
    pub y_side: BTreeSet<Vx>,
    /// Blocks of each layer.
    pub blocks: Vec<Vec<Block>>,
    pub mu_x: usize,
    pub mu_y: usize,
}

impl WindowSplit {
    pub fn s(&self) -> usize {
        self.paths.len()
    }

    pub fn max_blocks(&self) -> usize {
        self.blocks.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// The bound `4k² − 5k` on both class counts.
pub fn mu_bound(k: usize) -> usize {
    (4 * k * k).saturating_sub(5 * k)
}

/// Builds the cluster graph and path system of the window, then splits it.
pub fn split_window(window: &Graph, cp: &CanonicalPartition, k: usize) -> Result<WindowSplit, DecompError> {
    let bg = build_bg_lenient(window, cp);
    let levels = bg.levels.max(1);
    let ps = path_system(&bg, 1, levels)?;
    xy_split(window, cp, &bg, &ps, k)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Tag {
    Path(usize),
    Touch(usize),
    Stripe(usize),
}

/// Assigns every vertex of the window to `X` (above the separator) or `Y`,
/// computes the blocks of each layer and checks the uniformity and
/// class-count claims, returning an error on the first failure.
///
/// Sides: a node component of `B* − S` belongs to `X` when it meets the top
/// level or neither marginal level, to `Y` when it meets the bottom level.
/// An edge takes the side of an end outside `S`; edges with both ends in `S`
/// go to `Y`, pendant edges at separator nodes go to the side of their
/// marginal level.
pub fn xy_split(
    window: &Graph,
    cp: &CanonicalPartition,
    bg: &ClusterGraph,
    ps: &PathSystem,
    k: usize,
) -> Result<WindowSplit, DecompError> {
    let levels = bg.levels.max(1);
    let sep = &ps.separator;
    if sep.len() != ps.paths.len() {
        return Err(DecompError::Internal("separator size differs from path count".into()));
    }
    // Sides of the nodes outside S.
    let adj = bg.node_adjacency();
    let mut side: BTreeMap<usize, bool> = BTreeMap::new();
    for start in 0..bg.nodes.len() {
        if sep.contains(&start) || side.contains_key(&start) {
            continue;
        }
        let mut comp = vec![start];
        let mut seen: BTreeSet<usize> = [start].into();
        let mut i = 0;
        while i < comp.len() {
            for &w in &adj[comp[i]] {
                if !sep.contains(&w) && seen.insert(w) {
                    comp.push(w);
                }
            }
            i += 1;
        }
        let top = comp.iter().any(|&u| bg.nodes[u].level == 1);
        let bottom = comp.iter().any(|&u| bg.nodes[u].level == levels);
        if top && bottom && levels > 1 {
            return Err(DecompError::Internal("separator leaves the levels connected".into()));
        }
        let is_x = !bottom || (top && levels == 1);
        for u in comp {
            side.insert(u, is_x);
        }
    }
    let mut x_side = BTreeSet::new();
    let mut y_side = BTreeSet::new();
    for v in cp.vertices() {
        let e = &bg.edges[v];
        let free = e.ends().find(|u| !sep.contains(u));
        let is_x = match (free, e.kind) {
            (Some(u), _) => side[&u],
            (None, EdgeKind::TopPendant) => true,
            (None, EdgeKind::Isolated) => true,
            (None, _) => false,
        };
        if is_x {
            x_side.insert(v);
        } else {
            y_side.insert(v);
        }
    }

    let signature = |v: Vx| -> BTreeSet<Vx> {
        window.neighbors(v).intersection(&y_side).copied().collect()
    };
    let blocks: Vec<Vec<Block>> = layer_blocks(cp, bg, &ps.paths)
        .into_iter()
        .map(|layer| coarsen(layer, &x_side, &signature))
        .collect();
    let s = ps.paths.len();
    let allowed = (4 * s).saturating_sub(1).max(1);
    for (i, layer) in blocks.iter().enumerate() {
        if layer.len() > allowed {
            return Err(DecompError::Claim(format!(
                "layer {i} splits into {} blocks, more than 4s-1 = {allowed}",
                layer.len()
            )));
        }
        for b in layer {
            let sigs: BTreeSet<BTreeSet<Vx>> = b
                .members
                .iter()
                .filter(|v| x_side.contains(v))
                .map(|&v| window.neighbors(v).intersection(&y_side).copied().collect())
                .collect();
            if sigs.len() > 1 {
                return Err(DecompError::Claim(format!(
                    "a {:?} block of layer {i} has {} distinct neighbourhoods into Y",
                    b.kind,
                    sigs.len()
                )));
            }
        }
    }
    let mu_x = mu(window, &x_side);
    let mu_y = mu(window, &y_side);
    let bound = mu_bound(k);
    if mu_x > bound || mu_y > bound {
        return Err(DecompError::Claim(format!(
            "class counts {mu_x} (X) and {mu_y} (Y) against the bound {bound}"
        )));
    }
    Ok(WindowSplit {
        layers: cp.layers.len(),
        paths: ps.paths.clone(),
        separator: sep.clone(),
        x_side,
        y_side,
        blocks,
        mu_x,
        mu_y,
    })
}

/// Merges neighbouring blocks whose `X` parts have one common neighbourhood
/// into `Y`. The regions outside the first and last path form blocks of
/// their own in the tagging and are absorbed here when they agree with the
/// adjacent block.
fn coarsen(
    layer: Vec<Block>,
    x_side: &BTreeSet<Vx>,
    signature: &dyn Fn(Vx) -> BTreeSet<Vx>,
) -> Vec<Block> {
    let sig_of = |b: &Block| -> BTreeSet<BTreeSet<Vx>> {
        b.members.iter().filter(|v| x_side.contains(v)).map(|&v| signature(v)).collect()
    };
    let mut out: Vec<Block> = Vec::new();
    for b in layer {
        if let Some(last) = out.last_mut() {
            let (a, c) = (sig_of(last), sig_of(&b));
            if a.len() <= 1 && c.len() <= 1 && (a.is_empty() || c.is_empty() || a == c) {
                last.members.extend(b.members);
                continue;
            }
        }
        out.push(b);
    }
    out
}

/// Maximal runs of equally tagged vertices in each layer. A path edge is its
/// own tag; edges sharing a node with path `p` are tagged with `p`; the rest
/// by the stripe they fall in. The regions left of the first path and right
/// of the last merge with the adjacent path's touching edges.
fn layer_blocks(cp: &CanonicalPartition, bg: &ClusterGraph, paths: &[Vec<usize>]) -> Vec<Vec<Block>> {
    let mut on_path: BTreeMap<usize, usize> = BTreeMap::new();
    for (p, nodes) in paths.iter().enumerate() {
        for &u in nodes {
            on_path.insert(u, p);
        }
    }
    let path_edge = |a: usize, b: usize| -> Option<usize> {
        let (&pa, &pb) = (on_path.get(&a)?, on_path.get(&b)?);
        let nodes = &paths[pa];
        let adjacent = nodes.windows(2).any(|w| (w[0] == a && w[1] == b) || (w[0] == b && w[1] == a));
        (pa == pb && adjacent).then_some(pa)
    };
    // Leftmost position of each path per level.
    let mut first_pos: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); paths.len()];
    for (p, nodes) in paths.iter().enumerate() {
        for &u in nodes {
            let n = &bg.nodes[u];
            let e = first_pos[p].entry(n.level).or_insert(n.pos);
            *e = (*e).min(n.pos);
        }
    }
    let tag_of = |v: Vx| -> Tag {
        let e = &bg.edges[v];
        if let (Some(a), Some(b)) = (e.upper, e.lower) {
            if let Some(p) = path_edge(a, b) {
                return Tag::Path(p);
            }
        }
        if let Some(p) = e.ends().filter_map(|u| on_path.get(&u).copied()).min() {
            return Tag::Touch(p);
        }
        let Some(u) = e.ends().next() else {
            return Tag::Stripe(0);
        };
        let node = &bg.nodes[u];
        let q = first_pos
            .iter()
            .filter(|m| m.get(&node.level).is_some_and(|&pos| pos < node.pos))
            .count();
        Tag::Stripe(q)
    };
    cp.layers
        .iter()
        .map(|layer| {
            let mut blocks: Vec<(Tag, Block)> = Vec::new();
            for &v in layer {
                let tag = tag_of(v);
                match blocks.last_mut() {
                    Some((t, b)) if *t == tag => b.members.push(v),
                    _ => {
                        let kind = match tag {
                            Tag::Path(_) => BlockKind::PathEdge,
                            Tag::Touch(_) => BlockKind::PathAdjacent,
                            Tag::Stripe(_) => BlockKind::Stripe,
                        };
                        blocks.push((tag, Block { kind, members: vec![v] }));
                    }
                }
            }
            blocks.into_iter().map(|(_, b)| b).collect()
        })
        .collect()
}
