//! Finite simple undirected graphs with stable vertex identities.
//!
//! Vertices carry opaque string ids that survive every transformation in the
//! crate (induced subgraphs, embeddings, expression synthesis). Internally a
//! graph is an adjacency list over dense indices; indices are local to one
//! [`Graph`] value, ids are global.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

/// Dense vertex index, local to one graph.
pub type Vx = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),
    #[error("self-loop on `{0}`")]
    SelfLoop(String),
    #[error("invalid vertex id `{0}`")]
    InvalidId(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has {n} vertices, above the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
}

#[derive(Clone, Default)]
pub struct Graph {
    ids: Vec<String>,
    index: HashMap<String, Vx>,
    adj: Vec<BTreeSet<Vx>>,
}

/// Ids are tokens without whitespace and without the characters used by the
/// expression grammar.
pub fn valid_id(id: &str) -> bool {
    !id.is_empty()
        && !id
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '(' | ')' | ',' | '#'))
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from id lists. Panics on malformed input; meant for
    /// literals in tests and generators.
    pub fn from_edges(vertices: &[&str], edges: &[(&str, &str)]) -> Self {
        let mut g = Graph::new();
        for v in vertices {
            g.add_vertex(v).expect("vertex");
        }
        for (a, b) in edges {
            g.add_edge(a, b).expect("edge");
        }
        g
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<Vx, GraphError> {
        if !valid_id(id) {
            return Err(GraphError::InvalidId(id.to_string()));
        }
        if self.index.contains_key(id) {
            return Err(GraphError::DuplicateVertex(id.to_string()));
        }
        let v = self.ids.len();
        self.ids.push(id.to_string());
        self.index.insert(id.to_string(), v);
        self.adj.push(BTreeSet::new());
        Ok(v)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let x = self.index_of(a)?;
        let y = self.index_of(b)?;
        if x == y {
            return Err(GraphError::SelfLoop(a.to_string()));
        }
        self.connect(x, y);
        Ok(())
    }

    /// Index-level edge insertion. Re-adding an existing edge is a no-op.
    pub fn connect(&mut self, x: Vx, y: Vx) {
        assert_ne!(x, y, "self-loop");
        self.adj[x].insert(y);
        self.adj[y].insert(x);
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, v: Vx) -> &str {
        &self.ids[v]
    }

    pub fn index_of(&self, id: &str) -> Result<Vx, GraphError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(id.to_string()))
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn neighbors(&self, v: Vx) -> &BTreeSet<Vx> {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vx) -> usize {
        self.adj[v].len()
    }

    pub fn adjacent(&self, x: Vx, y: Vx) -> bool {
        self.adj[x].contains(&y)
    }

    pub fn adjacent_ids(&self, a: &str, b: &str) -> Result<bool, GraphError> {
        Ok(self.adjacent(self.index_of(a)?, self.index_of(b)?))
    }

    /// Edges as index pairs with `x < y`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vx, Vx)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(x, ns)| ns.range(x + 1..).map(move |&y| (x, y)))
    }

    /// Edges as sorted id pairs, sorted.
    pub fn edge_ids(&self) -> BTreeSet<(String, String)> {
        self.edges()
            .map(|(x, y)| {
                let (a, b) = (self.id(x).to_string(), self.id(y).to_string());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect()
    }

    pub fn indices_of<'a, I>(&self, ids: I) -> Result<BTreeSet<Vx>, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        ids.into_iter().map(|id| self.index_of(id)).collect()
    }

    pub fn is_clique(&self, vs: &[Vx]) -> bool {
        vs.iter()
            .enumerate()
            .all(|(i, &x)| vs[i + 1..].iter().all(|&y| self.adjacent(x, y)))
    }

    /// Subgraph induced by `keep` (ids preserved, vertex order inherited).
    pub fn induced(&self, keep: &BTreeSet<Vx>) -> Graph {
        let mut h = Graph::new();
        for &v in keep {
            h.add_vertex(self.id(v)).expect("ids already valid");
        }
        for &v in keep {
            for &w in self.adj[v].range(v + 1..) {
                if keep.contains(&w) {
                    let (a, b) = (h.index[self.id(v)], h.index[self.id(w)]);
                    h.connect(a, b);
                }
            }
        }
        h
    }

    pub fn induced_subgraph<'a, I>(&self, keep: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = &'a str>,
    {
        Ok(self.induced(&self.indices_of(keep)?))
    }

    /// Maximal connected vertex sets, each sorted, listed by smallest index.
    pub fn connected_components(&self) -> Vec<Vec<Vx>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// BFS distance layers from `start`; unreachable vertices are omitted.
    pub fn bfs_layers(&self, start: Vx) -> Vec<Vec<Vx>> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[start] = 0;
        let mut layers = vec![vec![start]];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    if layers.len() <= dist[w] {
                        layers.push(Vec::new());
                    }
                    layers[dist[w]].push(w);
                    queue.push_back(w);
                }
            }
        }
        for layer in &mut layers {
            layer.sort_unstable();
        }
        layers
    }

    /// Same vertex ids under a renaming; adjacency copied through the map.
    pub fn relabel_ids(&self, rename: impl Fn(&str) -> String) -> Result<Graph, GraphError> {
        let mut h = Graph::new();
        for id in &self.ids {
            h.add_vertex(&rename(id))?;
        }
        for (x, y) in self.edges() {
            h.connect(x, y);
        }
        Ok(h)
    }

    /// Parses the line format `graph <n> <m>` / `v <id>` / `e <id> <id>`.
    pub fn parse_text(text: &str) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        let mut header: Option<(usize, usize)> = None;
        let mut edges = 0usize;
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| GraphError::Parse { line: line_no, msg };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match (header, toks.as_slice()) {
                (None, ["graph", n, m]) => {
                    let n = n.parse().map_err(|_| err(format!("bad vertex count `{n}`")))?;
                    let m = m.parse().map_err(|_| err(format!("bad edge count `{m}`")))?;
                    header = Some((n, m));
                }
                (None, _) => return Err(err("expected `graph <n> <m>` header".into())),
                (Some(_), ["v", id]) => {
                    if edges > 0 {
                        return Err(err("vertex line after edge lines".into()));
                    }
                    g.add_vertex(id).map_err(|e| err(e.to_string()))?;
                }
                (Some(_), ["e", a, b]) => {
                    g.add_edge(a, b).map_err(|e| err(e.to_string()))?;
                    edges += 1;
                }
                (Some(_), _) => return Err(err(format!("unrecognised line `{line}`"))),
            }
        }
        let Some((n, m)) = header else {
            return Err(GraphError::Parse { line: 0, msg: "empty input".into() });
        };
        if g.n() != n || edges != m || g.edge_count() != m {
            return Err(GraphError::Parse {
                line: 0,
                msg: format!(
                    "header declares {n} vertices / {m} edges, body has {} / {}",
                    g.n(),
                    g.edge_count()
                ),
            });
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("graph {} {}\n", self.n(), self.edge_count());
        for id in &self.ids {
            s.push_str(&format!("v {id}\n"));
        }
        for (x, y) in self.edges() {
            s.push_str(&format!("e {} {}\n", self.id(x), self.id(y)));
        }
        s
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("graph {name} {{\n");
        for id in &self.ids {
            s.push_str(&format!("  \"{id}\";\n"));
        }
        for (x, y) in self.edges() {
            s.push_str(&format!("  \"{}\" -- \"{}\";\n", self.id(x), self.id(y)));
        }
        s.push_str("}\n");
        s
    }
}

/// Graphs are equal when they have the same vertex ids and the same edges
/// between ids; insertion order is irrelevant.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
            && self.ids.iter().all(|id| other.contains(id))
            && self.edge_count() == other.edge_count()
            && self.edges().all(|(x, y)| {
                other
                    .adjacent_ids(self.id(x), self.id(y))
                    .unwrap_or(false)
            })
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self
            .edges()
            .map(|(x, y)| format!("{}-{}", self.id(x), self.id(y)))
            .collect();
        write!(f, "Graph {{ V: {:?}, E: [{}] }}", self.ids, edges.join(", "))
    }
}

/// The partition of a vertex set U into U-similarity classes: vertices are
/// similar when they have the same neighbourhood outside U.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimilarityPartition {
    pub subject: BTreeSet<Vx>,
    pub classes: Vec<BTreeSet<Vx>>,
    /// Per class, the common neighbourhood outside the subject.
    pub signatures: Vec<BTreeSet<Vx>>,
}

impl SimilarityPartition {
    /// Number of similarity classes, written μ(U) in the literature.
    pub fn mu(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, v: Vx) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }
}

/// Classes ordered by sorted signature.
pub fn similarity_classes(g: &Graph, subject: &BTreeSet<Vx>) -> SimilarityPartition {
    let mut by_sig: BTreeMap<BTreeSet<Vx>, BTreeSet<Vx>> = BTreeMap::new();
    for &v in subject {
        let sig: BTreeSet<Vx> = g.neighbors(v).difference(subject).copied().collect();
        by_sig.entry(sig).or_default().insert(v);
    }
    let (signatures, classes) = by_sig.into_iter().unzip();
    SimilarityPartition {
        subject: subject.clone(),
        classes,
        signatures,
    }
}

pub fn similarity_classes_by_id<'a, I>(
    g: &Graph,
    subject: I,
) -> Result<SimilarityPartition, GraphError>
where
    I: IntoIterator<Item = &'a str>,
{
    Ok(similarity_classes(g, &g.indices_of(subject)?))
}

pub fn mu(g: &Graph, subject: &BTreeSet<Vx>) -> usize {
    similarity_classes(g, subject).mu()
}

const EXHAUSTIVE_MODULE_LIMIT: usize = 12;

/// Some module `U` with `1 < |U| < |V|`, or `None` when `g` is prime.
pub fn find_nontrivial_module(g: &Graph) -> Option<BTreeSet<Vx>> {
    let n = g.n();
    if n < 3 {
        return None;
    }
    if n <= EXHAUSTIVE_MODULE_LIMIT {
        // Smallest modules first, so the answer is deterministic and minimal.
        let mut masks: Vec<u32> = (1u32..(1 << n) - 1)
            .filter(|m| m.count_ones() >= 2)
            .collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        return masks.into_iter().find_map(|mask| {
            let u: BTreeSet<Vx> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            (mu(g, &u) == 1).then_some(u)
        });
    }
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .map(|(a, b)| module_closure(g, a, b))
        .filter(|m| m.len() < n)
        .min_by_key(|m| (m.len(), m.iter().copied().collect::<Vec<_>>()))
}

/// Smallest module containing both `a` and `b`: repeatedly absorb splitters.
fn module_closure(g: &Graph, a: Vx, b: Vx) -> BTreeSet<Vx> {
    let mut m: BTreeSet<Vx> = [a, b].into();
    loop {
        let splitter = (0..g.n()).filter(|z| !m.contains(z)).find(|&z| {
            let hits = m.iter().filter(|&&x| g.adjacent(z, x)).count();
            hits != 0 && hits != m.len()
        });
        match splitter {
            Some(z) => {
                m.insert(z);
            }
            None => return m,
        }
    }
}

pub fn is_prime(g: &Graph) -> bool {
    find_nontrivial_module(g).is_none()
}

/// Size guard for the backtracking isomorphism search.
pub const ISOMORPHISM_CAP: usize = 16;

/// Adjacency-preserving bijection from `g` to `h` (by id), if one exists.
///
/// Plain backtracking with degree pruning. Exponential; refuses graphs above
/// [`ISOMORPHISM_CAP`] vertices.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<Option<BTreeMap<String, String>>, GraphError> {
    for x in [g, h] {
        if x.n() > ISOMORPHISM_CAP {
            return Err(GraphError::TooLarge { n: x.n(), cap: ISOMORPHISM_CAP });
        }
    }
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(None);
    }
    // Map high-degree vertices first; they constrain the search most.
    let mut order: Vec<Vx> = (0..g.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut image = vec![usize::MAX; g.n()];
    let mut used = vec![false; h.n()];
    if extend_iso(g, h, &order, 0, &mut image, &mut used) {
        Ok(Some(
            (0..g.n())
                .map(|v| (g.id(v).to_string(), h.id(image[v]).to_string()))
                .collect(),
        ))
    } else {
        Ok(None)
    }
}

fn extend_iso(
    g: &Graph,
    h: &Graph,
    order: &[Vx],
    depth: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.n() {
        if used[w] || h.degree(w) != g.degree(v) {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.adjacent(u, v) == h.adjacent(image[u], w));
        if !consistent {
            continue;
        }
        image[v] = w;
        used[w] = true;
        if extend_iso(g, h, order, depth + 1, image, used) {
            return true;
        }
        used[w] = false;
        image[v] = usize::MAX;
    }
    false
}

/// Complete graph on ids `prefix0..prefix{n-1}`.
pub fn complete(n: usize, prefix: &str) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(&format!("{prefix}{i}")).unwrap();
    }
    for x in 0..n {
        for y in x + 1..n {
            g.connect(x, y);
        }
    }
    g
}

/// Chordless path on the given ids, in order.
pub fn path(ids: &[&str]) -> Graph {
    let edges: Vec<(&str, &str)> = ids.windows(2).map(|w| (w[0], w[1])).collect();
    Graph::from_edges(ids, &edges)
}
