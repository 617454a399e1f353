//! Clique-width expressions: the four-operation term algebra, its evaluator,
//! the label-width meter and restriction to induced subgraphs.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError, Vx};

pub type Label = u32;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CwExpr {
    /// `i(v)`: a new vertex `v` carrying label `i`.
    Create(Label, String),
    /// Disjoint union.
    Union(Box<CwExpr>, Box<CwExpr>),
    /// `η_{i,j}`: every `i`-labelled vertex joined to every `j`-labelled one.
    Join(Label, Label, Box<CwExpr>),
    /// `ρ_{i→j}`.
    Relabel(Label, Label, Box<CwExpr>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("vertex `{0}` is created more than once")]
    DuplicateVertex(String),
    #[error("label 0 is not allowed (labels are positive)")]
    ZeroLabel,
    #[error("operation uses the same label {0} twice")]
    SameLabel(Label),
    #[error("invalid vertex id `{0}`")]
    InvalidId(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
}

pub fn create(label: Label, v: &str) -> CwExpr {
    CwExpr::Create(label, v.to_string())
}

pub fn union(a: CwExpr, b: CwExpr) -> CwExpr {
    CwExpr::Union(Box::new(a), Box::new(b))
}

pub fn join(i: Label, j: Label, e: CwExpr) -> CwExpr {
    CwExpr::Join(i, j, Box::new(e))
}

pub fn relabel(i: Label, j: Label, e: CwExpr) -> CwExpr {
    CwExpr::Relabel(i, j, Box::new(e))
}

/// Left-leaning disjoint union of a non-empty list.
pub fn union_all(parts: impl IntoIterator<Item = CwExpr>) -> Option<CwExpr> {
    parts.into_iter().reduce(union)
}

/// A graph together with a label on every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    pub graph: Graph,
    pub label_of: BTreeMap<String, Label>,
}

impl CwExpr {
    pub fn children(&self) -> Vec<&CwExpr> {
        match self {
            CwExpr::Create(..) => vec![],
            CwExpr::Union(a, b) => vec![a, b],
            CwExpr::Join(_, _, e) | CwExpr::Relabel(_, _, e) => vec![e],
        }
    }

    /// Node count.
    pub fn size(&self) -> usize {
        let mut n = 0;
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            n += 1;
            stack.extend(e.children());
        }
        n
    }

    /// Vertex ids in creation order (left to right).
    pub fn vertices(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                CwExpr::Create(_, v) => out.push(v.clone()),
                CwExpr::Union(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                CwExpr::Join(_, _, c) | CwExpr::Relabel(_, _, c) => stack.push(c),
            }
        }
        out
    }

    /// Every label value occurring anywhere in the tree.
    pub fn labels(&self) -> BTreeSet<Label> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                CwExpr::Create(l, _) => {
                    out.insert(*l);
                }
                CwExpr::Join(i, j, _) | CwExpr::Relabel(i, j, _) => {
                    out.insert(*i);
                    out.insert(*j);
                }
                CwExpr::Union(..) => {}
            }
            stack.extend(e.children());
        }
        out
    }

    /// Number of distinct labels used; an upper bound on the clique-width
    /// of the graph the expression builds.
    pub fn width(&self) -> usize {
        self.labels().len()
    }

    pub fn validate(&self) -> Result<(), ExprError> {
        let mut seen = HashSet::new();
        let mut stack = vec![self];
        while let Some(e) = stack.pop() {
            match e {
                CwExpr::Create(l, v) => {
                    if *l == 0 {
                        return Err(ExprError::ZeroLabel);
                    }
                    if !crate::graph::valid_id(v) {
                        return Err(ExprError::InvalidId(v.clone()));
                    }
                    if !seen.insert(v.as_str()) {
                        return Err(ExprError::DuplicateVertex(v.clone()));
                    }
                }
                CwExpr::Join(i, j, _) | CwExpr::Relabel(i, j, _) => {
                    if *i == 0 || *j == 0 {
                        return Err(ExprError::ZeroLabel);
                    }
                    if i == j {
                        return Err(ExprError::SameLabel(*i));
                    }
                }
                CwExpr::Union(..) => {}
            }
            stack.extend(e.children());
        }
        Ok(())
    }

    /// Builds the labelled graph bottom-up. Iterative, so deep expressions
    /// do not exhaust the stack.
    pub fn eval(&self) -> Result<LabeledGraph, ExprError> {
        self.validate()?;
        let mut graph = Graph::new();
        for v in self.vertices() {
            graph.add_vertex(&v).map_err(|e| match e {
                GraphError::DuplicateVertex(v) => ExprError::DuplicateVertex(v),
                other => ExprError::InvalidId(other.to_string()),
            })?;
        }
        let mut label = vec![0 as Label; graph.n()];
        // Post-order walk; each finished node leaves its vertex list on `done`.
        enum Step<'a> {
            Enter(&'a CwExpr),
            Exit(&'a CwExpr),
        }
        let mut work = vec![Step::Enter(self)];
        let mut done: Vec<Vec<Vx>> = Vec::new();
        while let Some(step) = work.pop() {
            match step {
                Step::Enter(e) => {
                    work.push(Step::Exit(e));
                    for c in e.children().into_iter().rev() {
                        work.push(Step::Enter(c));
                    }
                }
                Step::Exit(e) => match e {
                    CwExpr::Create(l, v) => {
                        let x = graph.index_of(v).expect("registered above");
                        label[x] = *l;
                        done.push(vec![x]);
                    }
                    CwExpr::Union(..) => {
                        let right = done.pop().expect("right operand");
                        let mut left = done.pop().expect("left operand");
                        left.extend(right);
                        done.push(left);
                    }
                    CwExpr::Join(i, j, _) => {
                        let vs = done.last().expect("operand");
                        let (a, b): (Vec<Vx>, Vec<Vx>) = (
                            vs.iter().copied().filter(|&x| label[x] == *i).collect(),
                            vs.iter().copied().filter(|&x| label[x] == *j).collect(),
                        );
                        for &x in &a {
                            for &y in &b {
                                graph.connect(x, y);
                            }
                        }
                    }
                    CwExpr::Relabel(i, j, _) => {
                        for &x in done.last().expect("operand") {
                            if label[x] == *i {
                                label[x] = *j;
                            }
                        }
                    }
                },
            }
        }
        let label_of = (0..graph.n())
            .map(|x| (graph.id(x).to_string(), label[x]))
            .collect();
        Ok(LabeledGraph { graph, label_of })
    }

    /// Renames vertex ids through `rename`.
    pub fn map_vertices(&self, rename: &dyn Fn(&str) -> String) -> CwExpr {
        match self {
            CwExpr::Create(l, v) => CwExpr::Create(*l, rename(v)),
            CwExpr::Union(a, b) => union(a.map_vertices(rename), b.map_vertices(rename)),
            CwExpr::Join(i, j, e) => join(*i, *j, e.map_vertices(rename)),
            CwExpr::Relabel(i, j, e) => relabel(*i, *j, e.map_vertices(rename)),
        }
    }

    /// Replaces every label through `f`; `f` must keep Join/Relabel labels
    /// distinct.
    pub fn map_labels(&self, f: &dyn Fn(Label) -> Label) -> CwExpr {
        match self {
            CwExpr::Create(l, v) => CwExpr::Create(f(*l), v.clone()),
            CwExpr::Union(a, b) => union(a.map_labels(f), b.map_labels(f)),
            CwExpr::Join(i, j, e) => join(f(*i), f(*j), e.map_labels(f)),
            CwExpr::Relabel(i, j, e) => relabel(f(*i), f(*j), e.map_labels(f)),
        }
    }
}

/// Expression for `eval(e).graph[keep]`.
///
/// Tree surgery: dropped creations disappear, unions with an empty side
/// collapse, and joins/relabels that no longer touch a present label are
/// pruned. Never introduces a label, so the width cannot grow.
pub fn restrict(e: &CwExpr, keep: &BTreeSet<String>) -> Result<Option<CwExpr>, ExprError> {
    let created: HashSet<String> = e.vertices().into_iter().collect();
    if let Some(missing) = keep.iter().find(|v| !created.contains(*v)) {
        return Err(ExprError::UnknownVertex(missing.clone()));
    }
    Ok(restrict_rec(e, keep).map(|(e, _)| e))
}

fn restrict_rec(e: &CwExpr, keep: &BTreeSet<String>) -> Option<(CwExpr, BTreeSet<Label>)> {
    match e {
        CwExpr::Create(l, v) => keep.contains(v).then(|| (e.clone(), [*l].into())),
        CwExpr::Union(a, b) => match (restrict_rec(a, keep), restrict_rec(b, keep)) {
            (None, None) => None,
            (Some(x), None) | (None, Some(x)) => Some(x),
            (Some((x, lx)), Some((y, ly))) => Some((union(x, y), &lx | &ly)),
        },
        CwExpr::Join(i, j, c) => {
            let (inner, present) = restrict_rec(c, keep)?;
            if present.contains(i) && present.contains(j) {
                Some((join(*i, *j, inner), present))
            } else {
                Some((inner, present))
            }
        }
        CwExpr::Relabel(i, j, c) => {
            let (inner, mut present) = restrict_rec(c, keep)?;
            if present.remove(i) {
                present.insert(*j);
                Some((relabel(*i, *j, inner), present))
            } else {
                Some((inner, present))
            }
        }
    }
}

/// Canonical text: `create(1,a)`, `union(x, y)`, `eta(i,j, x)`, `rho(i,j, x)`.
pub fn render(e: &CwExpr) -> String {
    let mut out = String::new();
    render_into(e, &mut out);
    out
}

fn render_into(e: &CwExpr, out: &mut String) {
    match e {
        CwExpr::Create(l, v) => out.push_str(&format!("create({l},{v})")),
        CwExpr::Union(a, b) => {
            out.push_str("union(");
            render_into(a, out);
            out.push_str(", ");
            render_into(b, out);
            out.push(')');
        }
        CwExpr::Join(i, j, c) => {
            out.push_str(&format!("eta({i},{j}, "));
            render_into(c, out);
            out.push(')');
        }
        CwExpr::Relabel(i, j, c) => {
            out.push_str(&format!("rho({i},{j}, "));
            render_into(c, out);
            out.push(')');
        }
    }
}

impl fmt::Display for CwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

impl fmt::Debug for CwExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

/// Parses the expression grammar and validates the result.
pub fn parse(text: &str) -> Result<CwExpr, ExprError> {
    let mut p = Parser::new(text);
    let e = p.expr()?;
    p.skip_trivia();
    if p.pos < p.chars.len() {
        return Err(p.error("trailing input after expression"));
    }
    e.validate()?;
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        Parser { chars: text.chars().collect(), pos: 0 }
    }

    fn location(&self) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error(&self, msg: impl Into<String>) -> ExprError {
        let (line, col) = self.location();
        ExprError::Syntax { line, col, msg: msg.into() }
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '#' {
                while self.chars.get(self.pos).is_some_and(|&c| c != '\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ExprError> {
        self.skip_trivia();
        if self.chars.get(self.pos) == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{want}`")))
        }
    }

    fn token(&mut self) -> String {
        self.skip_trivia();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&c| !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | '#'))
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn label(&mut self) -> Result<Label, ExprError> {
        let tok = self.token();
        match tok.parse::<Label>() {
            Ok(0) => Err(self.error("labels must be positive")),
            Ok(l) => Ok(l),
            Err(_) => Err(self.error(format!("expected a positive integer label, found `{tok}`"))),
        }
    }

    fn expr(&mut self) -> Result<CwExpr, ExprError> {
        self.skip_trivia();
        let head = self.token();
        self.expect('(')?;
        let e = match head.as_str() {
            "create" => {
                let l = self.label()?;
                self.expect(',')?;
                let v = self.token();
                if v.is_empty() {
                    return Err(self.error("expected a vertex id"));
                }
                CwExpr::Create(l, v)
            }
            "union" => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                union(a, b)
            }
            "eta" | "rho" => {
                let i = self.label()?;
                self.expect(',')?;
                let j = self.label()?;
                self.expect(',')?;
                let c = self.expr()?;
                if head == "eta" {
                    join(i, j, c)
                } else {
                    relabel(i, j, c)
                }
            }
            "" => return Err(self.error("expected an operation")),
            other => return Err(self.error(format!("unknown operation `{other}`"))),
        };
        self.expect(')')?;
        Ok(e)
    }
}

/// Three-label expression for the chordless path on `ids`, in the style of
/// the classic `P_5` construction: each new end vertex is joined to the
/// previous end, which then retires to the inert label 1.
pub fn path_expression(ids: &[String]) -> Option<CwExpr> {
    let (first, rest) = ids.split_first()?;
    let mut e = create(1, first);
    let Some((second, rest)) = rest.split_first() else {
        return Some(e);
    };
    e = join(2, 1, union(create(2, second), e));
    for v in rest {
        e = join(3, 2, union(create(3, v), e));
        e = relabel(3, 2, relabel(2, 1, e));
    }
    Some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;

    pub(crate) const P5_TEXT: &str = "eta(3,2, union(create(3,e), rho(3,2, rho(2,1, eta(3,2, \
        union(create(3,d), rho(3,2, rho(2,1, eta(3,2, union(create(3,c), \
        eta(2,1, union(create(2,b), create(1,a)))))))))))))";

    #[test]
    fn eval_inner_term() {
        let e = join(2, 1, union(create(2, "b"), create(1, "a")));
        let lg = e.eval().unwrap();
        assert_eq!(lg.graph, path(&["a", "b"]));
        assert_eq!(lg.label_of["b"], 2);
        assert_eq!(lg.label_of["a"], 1);
        let single = create(1, "a").eval().unwrap();
        assert_eq!(single.graph.n(), 1);
        assert_eq!(single.label_of["a"], 1);
    }

    #[test]
    fn p5_expression() {
        let e = parse(P5_TEXT).unwrap();
        assert_eq!(e.eval().unwrap().graph, path(&["a", "b", "c", "d", "e"]));
        assert_eq!(e.width(), 3);
        assert_eq!(create(1, "a").width(), 1);
    }

    #[test]
    fn eval_errors() {
        let dup = union(create(1, "a"), create(2, "a"));
        assert_eq!(dup.eval(), Err(ExprError::DuplicateVertex("a".into())));
        let same = join(1, 1, create(1, "a"));
        assert_eq!(same.eval(), Err(ExprError::SameLabel(1)));
    }

    #[test]
    fn rejoin_is_noop() {
        let e = join(1, 2, join(1, 2, union(create(1, "a"), create(2, "b"))));
        assert_eq!(e.eval().unwrap().graph.edge_count(), 1);
        let empty_join = join(5, 6, create(1, "a"));
        assert_eq!(empty_join.eval().unwrap().graph.edge_count(), 0);
    }

    #[test]
    fn parse_and_render() {
        let e = parse("eta(2,1, union(create(2,b), create(1,a)))").unwrap();
        assert_eq!(e, join(2, 1, union(create(2, "b"), create(1, "a"))));
        assert_eq!(parse("create(1,a)").unwrap(), create(1, "a"));
        assert_eq!(render(&create(1, "a")), "create(1,a)");
        assert_eq!(render(&relabel(3, 2, create(3, "x"))), "rho(3,2, create(3,x))");
        let canon = render(&e);
        assert_eq!(render(&parse(&canon).unwrap()), canon);
        let spaced = parse("# comment\n eta ( 2 , 1 ,\n union( create(2, b),create(1,a) ) ) # tail").unwrap();
        assert_eq!(spaced, e);
    }

    #[test]
    fn parse_errors() {
        match parse("union(create(1,a),\n  crate(1,b))") {
            Err(ExprError::Syntax { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("create(0,a)"), Err(ExprError::Syntax { .. })));
        assert!(matches!(parse("create(1,a) x"), Err(ExprError::Syntax { .. })));
        assert_eq!(
            parse("union(create(1,a), create(1,a))"),
            Err(ExprError::DuplicateVertex("a".into()))
        );
        assert_eq!(parse("rho(2,2, create(2,a))"), Err(ExprError::SameLabel(2)));
    }

    #[test]
    fn restrict_path() {
        let e = parse(P5_TEXT).unwrap();
        let keep: BTreeSet<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let r = restrict(&e, &keep).unwrap().unwrap();
        assert_eq!(r.eval().unwrap().graph, path(&["a", "b", "c"]));
        assert!(r.width() <= 3);
        let all: BTreeSet<String> = e.vertices().into_iter().collect();
        let same = restrict(&e, &all).unwrap().unwrap();
        assert_eq!(same.eval().unwrap().graph, e.eval().unwrap().graph);
        let bad: BTreeSet<String> = ["zz".to_string()].into();
        assert_eq!(restrict(&e, &bad), Err(ExprError::UnknownVertex("zz".into())));
    }

    #[test]
    fn path_builder() {
        for n in 1..8 {
            let ids: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let e = path_expression(&ids).unwrap();
            let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
            assert_eq!(e.eval().unwrap().graph, path(&refs));
            assert!(e.width() <= 3);
        }
    }
}
