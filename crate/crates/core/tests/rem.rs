use std::collections::BTreeSet;

use datapath::graph::encode_undirected;
use datapath::query::{parse_rem, Cond, Rem, RemDialect};
use datapath::rem::{eval_condition, nesting_sets, path_parse, reach, rem_pairs, with_stores, witness_path};
use datapath::{DataGraph, DataValue, GraphBuilder, Path};

fn nrem(text: &str, k: usize) -> Rem {
    parse_rem(text, k, RemDialect::Nrem).unwrap()
}

/// A directed a-chain over nodes with the given values.
fn chain(values: &[i64]) -> DataGraph {
    let mut b = GraphBuilder::new();
    for (i, &v) in values.iter().enumerate() {
        b.node(&format!("v{i}"), Some(DataValue::Int(v))).unwrap();
    }
    for i in 1..values.len() {
        b.edge(i - 1, "a", i);
    }
    b.build()
}

fn directed_cycle(n: usize) -> DataGraph {
    let mut b = GraphBuilder::new();
    for i in 0..n {
        b.fresh(&format!("c{i}"));
    }
    for i in 0..n {
        b.edge(i, "a", (i + 1) % n);
    }
    b.build()
}

fn walk(g: &DataGraph, nodes: &[usize]) -> Path {
    let mut p = Path::single(nodes[0]);
    for w in nodes.windows(2) {
        let a = g.out(w[0]).iter().find(|e| e.1 == w[1]).unwrap().0;
        p.push(a, w[1]);
    }
    p
}

#[test]
fn conditions() {
    assert!(eval_condition(&Cond::Eq(1), 7, &[Some(7), None]));
    assert!(!eval_condition(&Cond::Eq(2), 7, &[Some(7), None]));
    assert!(eval_condition(&Cond::and(Cond::Eq(1), Cond::not(Cond::Eq(2))), 5, &[Some(5), Some(9)]));
}

#[test]
fn stores() {
    assert_eq!(with_stores(&[None, None], &[1], 4), vec![Some(4), None]);
    assert_eq!(with_stores(&[Some(4), None], &[], 9), vec![Some(4), None]);
    assert_eq!(with_stores(&[Some(4), Some(7)], &[1, 2], 1), vec![Some(1), Some(1)]);
}

#[test]
fn epsilon_and_letter() {
    let g = chain(&[1, 2]);
    let lam = [Some(g.kappa(1))];
    let id: BTreeSet<_> = [lam.to_vec()].into();
    assert_eq!(path_parse(&g, &Rem::Eps, 1, &Path::single(0), &lam).unwrap(), id);
    assert!(path_parse(&g, &Rem::Eps, 1, &walk(&g, &[0, 1]), &lam).unwrap().is_empty());
    assert_eq!(path_parse(&g, &Rem::letter("a"), 1, &walk(&g, &[0, 1]), &lam).unwrap(), id);
    assert!(path_parse(&g, &Rem::letter("a"), 1, &Path::single(0), &lam).unwrap().is_empty());
    assert!(path_parse(&g, &Rem::letter("b"), 1, &walk(&g, &[0, 1]), &lam).unwrap().is_empty());
}

#[test]
fn union_relation() {
    let g = chain(&[1, 2]);
    let e = Rem::union(Rem::Eps, Rem::letter("a"));
    assert_eq!(path_parse(&g, &e, 0, &Path::single(0), &[]).unwrap().len(), 1);
    assert_eq!(path_parse(&g, &e, 0, &walk(&g, &[0, 1]), &[]).unwrap().len(), 1);
}

#[test]
fn store_then_test() {
    let e = Rem::store(vec![1], Rem::test(Rem::plus(Rem::letter("a")), Cond::Eq(1)));
    let same = chain(&[1, 1]);
    let out = path_parse(&same, &e, 1, &walk(&same, &[0, 1]), &[None]).unwrap();
    assert_eq!(out, [vec![Some(same.kappa(0))]].into());
    let differ = chain(&[1, 2]);
    assert!(path_parse(&differ, &e, 1, &walk(&differ, &[0, 1]), &[None]).unwrap().is_empty());
}

#[test]
fn pairs() {
    let g = chain(&[1, 2]);
    assert_eq!(rem_pairs(&g, &Rem::letter("a"), 0).unwrap(), [(0, 1)].into());
    let same_value = nrem("any* . (!{r1}. any+ [=r1]) . any*", 1);
    assert!(rem_pairs(&chain(&[1, 2, 1]), &same_value, 1).unwrap().contains(&(0, 2)));
    assert!(!rem_pairs(&chain(&[1, 2, 3]), &same_value, 1).unwrap().contains(&(0, 2)));
}

#[test]
fn odd_cycles() {
    let e = nrem("!{r1}. a . (a . a)* [=r1]", 1);
    let c3 = directed_cycle(3);
    let diag: BTreeSet<_> = c3.nodes().map(|v| (v, v)).collect();
    assert_eq!(rem_pairs(&c3, &e, 1).unwrap(), diag);
    assert!(rem_pairs(&directed_cycle(4), &e, 1).unwrap().is_empty());
    let w = witness_path(&c3, &e, 1, 0, 0).unwrap().unwrap();
    assert_eq!(w.len(), 3);
}

#[test]
fn reach_examples() {
    let g = chain(&[1, 2]);
    let out = reach(&g, &Rem::Eps, 1, 0, &[None]).unwrap();
    assert_eq!(out, [(0, vec![None])].into());
    assert!(reach(&g, &Rem::letter("a"), 1, 1, &[None]).unwrap().is_empty());
}

#[test]
fn witnesses() {
    let g = chain(&[1, 2]);
    assert_eq!(witness_path(&g, &Rem::letter("a"), 0, 0, 1).unwrap(), Some(walk(&g, &[0, 1])));
    assert_eq!(witness_path(&g, &Rem::Eps, 0, 1, 1).unwrap(), Some(Path::single(1)));
    assert_eq!(witness_path(&g, &Rem::letter("a"), 0, 1, 0).unwrap(), None);
}

#[test]
fn nesting_tables() {
    let tri = encode_undirected(3, &[(0, 1), (1, 2), (2, 0)]);
    let u = &nesting_sets(&tri, &nrem("<a*[=r1]>", 1), 1).unwrap()[0];
    let want: BTreeSet<_> = tri.nodes().flat_map(|w| (0..3u32).map(move |d| (w, vec![Some(d)]))).collect();
    assert_eq!(*u, want);

    let u = &nesting_sets(&tri, &nrem("<eps[=r1]>", 1), 1).unwrap()[0];
    let want: BTreeSet<_> = tri.nodes().map(|w| (w, vec![Some(tri.kappa(w))])).collect();
    assert_eq!(*u, want);

    let g = chain(&[1, 2]);
    let sets = nesting_sets(&g, &nrem("<a . <eps[=r1]>>", 1), 1).unwrap();
    assert_eq!(sets[1], [(0, vec![Some(g.kappa(1))])].into());
}
