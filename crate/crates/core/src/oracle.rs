//! Exact clique-width of very small graphs by exhaustive search.
//!
//! Any expression for `G` can be normalised so that each subexpression
//! builds exactly the induced subgraph `G[S]` on its vertex set: an edge of
//! `G[S]` that is added later could equally be added at `S` by joining the
//! two labels there. A search state is therefore a vertex set `S` plus the
//! partition of `S` into label classes, and it is viable only when every
//! class has a uniform neighbourhood outside `S`. Label names are
//! irrelevant, which merges many states.

use std::collections::HashSet;

use crate::graph::{Graph, GraphError};

pub const DEFAULT_ORACLE_CAP: usize = 6;

type State = Vec<u32>;

/// Exact clique-width, for graphs up to `cap` vertices (at most 16).
pub fn oracle_cliquewidth(g: &Graph, cap: usize) -> Result<usize, GraphError> {
    let n = g.n();
    if n > cap.min(16) {
        return Err(GraphError::TooLarge { n, cap: cap.min(16) });
    }
    if n == 0 {
        return Ok(0);
    }
    let nbr: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let search = Search { n, nbr };
    Ok((1..=n).find(|&k| search.reachable(k)).unwrap_or(n))
}

struct Search {
    n: usize,
    nbr: Vec<u32>,
}

impl Search {
    fn full(&self) -> u32 {
        ((1u64 << self.n) - 1) as u32
    }

    fn uniform_outside(&self, class: u32, s: u32) -> bool {
        let outside = !s & self.full();
        let mut bits = class;
        let first = bits.trailing_zeros() as usize;
        let sig = self.nbr[first] & outside;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.nbr[v] & outside != sig {
                return false;
            }
        }
        true
    }

    /// Every g-edge between `a` and `b`.
    fn complete_between(&self, a: u32, b: u32) -> bool {
        let mut bits = a;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.nbr[v] & b != b {
                return false;
            }
        }
        true
    }

    fn any_edge_between(&self, a: u32, b: u32) -> bool {
        let mut bits = a;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if self.nbr[v] & b != 0 {
                return true;
            }
        }
        false
    }

    fn reachable(&self, k: usize) -> bool {
        let mut seen: HashSet<State> = HashSet::new();
        let mut states: Vec<State> = Vec::new();
        let mut queue: Vec<State> = Vec::new();
        let push = |st: State, seen: &mut HashSet<State>, queue: &mut Vec<State>| {
            if seen.insert(st.clone()) {
                queue.push(st);
            }
        };
        for v in 0..self.n {
            push(vec![1 << v], &mut seen, &mut queue);
        }
        let full = self.full();
        while let Some(st) = queue.pop() {
            let s = st.iter().fold(0, |m, c| m | c);
            if s == full {
                return true;
            }
            // Relabel: merge two classes.
            for i in 0..st.len() {
                for j in i + 1..st.len() {
                    let merged = st[i] | st[j];
                    if self.uniform_outside(merged, s) {
                        let mut next: State = st
                            .iter()
                            .enumerate()
                            .filter(|&(x, _)| x != i && x != j)
                            .map(|(_, &c)| c)
                            .collect();
                        next.push(merged);
                        next.sort_unstable();
                        push(next, &mut seen, &mut queue);
                    }
                }
            }
            // Union with every known disjoint state, then the forced joins.
            for other in &states {
                let t = other.iter().fold(0, |m, c| m | c);
                if s & t != 0 {
                    continue;
                }
                let mut matching = vec![None; st.len()];
                let mut used = vec![false; other.len()];
                self.matchings(
                    &st, other, 0, &mut matching, &mut used, k, s | t,
                    &mut |next| push(next, &mut seen, &mut queue),
                );
            }
            states.push(st);
        }
        false
    }

    /// Enumerates partial matchings between the classes of two states and
    /// emits each union state that stays within `k` labels and is buildable.
    #[allow(clippy::too_many_arguments)]
    fn matchings(
        &self,
        left: &[u32],
        right: &[u32],
        at: usize,
        matching: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        k: usize,
        s: u32,
        emit: &mut dyn FnMut(State),
    ) {
        if at == left.len() {
            let matched = matching.iter().flatten().count();
            if left.len() + right.len() - matched > k {
                return;
            }
            // Each merged class keeps its left and right portions apart.
            let mut classes: Vec<(u32, u32)> = left
                .iter()
                .zip(matching.iter())
                .map(|(&l, m)| (l, m.map_or(0, |r| right[r])))
                .collect();
            classes.extend(
                right
                    .iter()
                    .enumerate()
                    .filter(|(r, _)| !used[*r])
                    .map(|(_, &c)| (0, c)),
            );
            for (i, &(xl, xr)) in classes.iter().enumerate() {
                if self.any_edge_between(xl, xr) {
                    return;
                }
                if !self.uniform_outside(xl | xr, s) {
                    return;
                }
                for &(yl, yr) in &classes[i + 1..] {
                    let crosses =
                        self.any_edge_between(xl, yr) || self.any_edge_between(xr, yl);
                    if crosses && !self.complete_between(xl | xr, yl | yr) {
                        return;
                    }
                }
            }
            let mut next: State = classes.iter().map(|&(a, b)| a | b).collect();
            next.sort_unstable();
            emit(next);
            return;
        }
        matching[at] = None;
        self.matchings(left, right, at + 1, matching, used, k, s, emit);
        for r in 0..right.len() {
            if !used[r] {
                used[r] = true;
                matching[at] = Some(r);
                self.matchings(left, right, at + 1, matching, used, k, s, emit);
                matching[at] = None;
                used[r] = false;
            }
        }
    }
}
