use std::collections::BTreeSet;

use cwkit::decomposition::{collapse_twins, expand_twins, synthesize};
use cwkit::expr::{create, join, parse, relabel, render, restrict, union, CwExpr};
use cwkit::graph::{similarity_classes, Graph};
use cwkit::uig::{build_model, canonical_partition, graph_from_model, random_uig};
use proptest::prelude::*;

#[derive(Debug, Clone)]
enum Op {
    Create(u32),
    Union,
    Join(u32, u32),
    Relabel(u32, u32),
}

fn op() -> impl Strategy<Value = Op> {
    prop_oneof![
        3 => (1u32..=4).prop_map(Op::Create),
        2 => Just(Op::Union),
        2 => (1u32..=4, 1u32..=4).prop_map(|(i, j)| Op::Join(i, j)),
        1 => (1u32..=4, 1u32..=4).prop_map(|(i, j)| Op::Relabel(i, j)),
    ]
}

/// Runs a small stack program; operations that do not apply are skipped.
fn build(ops: &[Op]) -> CwExpr {
    let mut stack: Vec<CwExpr> = vec![];
    let mut fresh = 0;
    for o in ops {
        match *o {
            Op::Create(l) => {
                stack.push(create(l, &format!("v{fresh}")));
                fresh += 1;
            }
            Op::Union if stack.len() >= 2 => {
                let b = stack.pop().unwrap();
                let a = stack.pop().unwrap();
                stack.push(union(a, b));
            }
            Op::Join(i, j) if i != j && !stack.is_empty() => {
                let a = stack.pop().unwrap();
                stack.push(join(i, j, a));
            }
            Op::Relabel(i, j) if i != j && !stack.is_empty() => {
                let a = stack.pop().unwrap();
                stack.push(relabel(i, j, a));
            }
            _ => {}
        }
    }
    if stack.is_empty() {
        stack.push(create(1, "v0"));
    }
    let mut e = stack.pop().unwrap();
    while let Some(a) = stack.pop() {
        e = union(a, e);
    }
    e
}

fn expression() -> impl Strategy<Value = CwExpr> {
    prop::collection::vec(op(), 1..40).prop_map(|ops| build(&ops))
}

proptest! {
    #[test]
    fn render_parse_round_trip(e in expression()) {
        let back = parse(&render(&e)).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn restrict_gives_induced_subgraph(e in expression(), mask in any::<u64>()) {
        let g = e.eval().unwrap().graph;
        let keep: BTreeSet<String> = g
            .ids()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> (i % 64) & 1 == 1)
            .map(|(_, id)| id.clone())
            .collect();
        match restrict(&e, &keep).unwrap() {
            None => prop_assert!(keep.is_empty()),
            Some(r) => {
                prop_assert!(r.width() <= e.width());
                let want = g.induced_subgraph(keep.iter().map(String::as_str)).unwrap();
                prop_assert_eq!(r.eval().unwrap().graph, want);
            }
        }
    }

    #[test]
    fn similarity_classes_partition_the_subject(e in expression(), mask in any::<u64>()) {
        let g = e.eval().unwrap().graph;
        let subject: BTreeSet<usize> = (0..g.n()).filter(|i| mask >> (i % 64) & 1 == 1).collect();
        let p = similarity_classes(&g, &subject);
        let union: BTreeSet<usize> = p.classes.iter().flatten().copied().collect();
        prop_assert_eq!(&union, &subject);
        prop_assert_eq!(p.classes.iter().map(BTreeSet::len).sum::<usize>(), subject.len());
        for (c, sig) in p.classes.iter().zip(&p.signatures) {
            for &v in c {
                let outside: BTreeSet<usize> = g.neighbors(v).difference(&subject).copied().collect();
                prop_assert_eq!(&outside, sig);
            }
        }
        prop_assert!(p.mu() <= subject.len());
        prop_assert_eq!(p.signatures.iter().collect::<BTreeSet<_>>().len(), p.mu());
    }

    #[test]
    fn twins_round_trip(n in 1usize..30, spread in 1.0f64..8.0, seed in any::<u64>()) {
        let g = random_uig(n, spread, seed);
        let (c, map) = collapse_twins(&g);
        prop_assert!(c.n() <= g.n());
        let e = synthesize(&c, 3).unwrap().expr;
        let full = expand_twins(&e, &map).unwrap();
        prop_assert_eq!(full.eval().unwrap().graph, g);
        prop_assert!(full.width() <= e.width().max(2));
    }

    #[test]
    fn models_reproduce_graphs(n in 1usize..40, spread in 1.0f64..10.0, seed in any::<u64>()) {
        let g = random_uig(n, spread, seed);
        if g.is_connected() {
            let cp = canonical_partition(&g).unwrap();
            let m = build_model(&g, &cp).unwrap();
            prop_assert_eq!(graph_from_model(&m).unwrap(), g);
        }
    }
}

#[test]
fn graph_text_round_trip() {
    for seed in 0..20 {
        let g = random_uig(15, 4.0, seed);
        assert_eq!(Graph::parse_text(&g.to_text()).unwrap(), g);
    }
}
