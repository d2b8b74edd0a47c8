//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p datapath --test acceptance`. A FAIL whose cause
//! is recorded in the decision log is marked `documented` and does not fail
//! the run; any other FAIL does.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use datapath::gadgets::pspace::{gadget_letters, gen_rl_pspace};
use datapath::gadgets::tm::samples;
use datapath::gadgets::{
    counter::sigma, counter_path, cycle_graph, gen_counter_formulas_k1, gen_counter_graph, parse_word, random_graph,
    tm_simulate, undirected_graphs, GadgetFormula, RandomSpec, TmOutcome, TuringMachine,
};
use datapath::graph::{encode_undirected, validate_path};
use datapath::logic::brute::{rl_eval_brute_witness, verify_witness};
use datapath::logic::exact::threshold;
use datapath::logic::{
    build_representative, count_paths_threshold, nrlplus_answers, nrlplus_eval, path_profile, rl_eval_brute,
    rl_eval_exact, wl_eval_bounded, BruteOptions, Valuation,
};
use datapath::oracles::{
    connected_parity, enum_paths, eulerian_trail_exists, hamiltonian_path_exists, is_bipartite, query_q_oracle, Parity,
};
use datapath::query::{corpus, Cond, Formula, Rem, Sort};
use datapath::rem::{config_bound, path_parse, rem_pairs, witness_path, Profile, Program};
use datapath::{DataGraph, DataValue, GraphBuilder, NodeId, Path};

struct Verdict {
    pass: bool,
    detail: String,
    /// Set when a failure is the known, logged discrepancy.
    documented: bool,
}

impl Verdict {
    fn new(pass: bool, detail: String) -> Self {
        Verdict { pass, detail, documented: false }
    }
}

fn rl(name: &str) -> (Formula, usize) {
    let q = corpus::get(name).unwrap().query();
    (q.rl().unwrap().clone(), q.registers)
}

fn secs(d: Duration) -> f64 {
    d.as_secs_f64()
}

// ---------------------------------------------------------------------------
// Criterion 1: REM denotations.

/// Endpoint relation of an REM over configurations (node, assignment),
/// built by structural recursion: composition for `·`, transitive closure
/// for `+`. Rows are bitsets over configuration indices.
struct Relational<'g> {
    g: &'g DataGraph,
    k: usize,
    /// d + 1 register values per register, 0 = ⊥.
    base: usize,
    size: usize,
}

impl<'g> Relational<'g> {
    fn new(g: &'g DataGraph, k: usize) -> Self {
        let base = g.value_count() + 1;
        let size = g.node_count() * base.pow(k as u32);
        assert!(size <= 128, "relational oracle supports at most 128 configurations");
        Relational { g, k, base, size }
    }

    fn regs(&self, c: usize) -> Vec<Option<u32>> {
        let mut code = c / self.g.node_count();
        (0..self.k)
            .map(|_| {
                let d = code % self.base;
                code /= self.base;
                (d as u32).checked_sub(1)
            })
            .collect()
    }

    fn config(&self, v: NodeId, regs: &[Option<u32>]) -> usize {
        let code = regs.iter().rev().fold(0, |acc, r| acc * self.base + r.map_or(0, |d| d as usize + 1));
        code * self.g.node_count() + v
    }

    fn node(&self, c: usize) -> NodeId {
        c % self.g.node_count()
    }

    fn identity(&self) -> Vec<u128> {
        (0..self.size).map(|c| 1u128 << c).collect()
    }

    fn compose(a: &[u128], b: &[u128]) -> Vec<u128> {
        a.iter()
            .map(|&row| (0..b.len()).filter(|&j| row >> j & 1 == 1).fold(0u128, |acc, j| acc | b[j]))
            .collect()
    }

    fn holds(&self, c: &Cond, value: u32, regs: &[Option<u32>]) -> bool {
        match c {
            Cond::Eq(i) => regs[i - 1] == Some(value),
            Cond::And(a, b) => self.holds(a, value, regs) && self.holds(b, value, regs),
            Cond::Not(a) => !self.holds(a, value, regs),
        }
    }

    fn rel(&self, e: &Rem) -> Vec<u128> {
        match e {
            Rem::Eps => self.identity(),
            Rem::Letter(_) | Rem::Any => {
                let want = match e {
                    Rem::Letter(a) => self.g.symbol(a),
                    _ => None,
                };
                (0..self.size)
                    .map(|c| {
                        let regs = self.regs(c);
                        self.g
                            .out(self.node(c))
                            .iter()
                            .filter(|(a, _)| matches!(e, Rem::Any) || Some(*a) == want)
                            .fold(0u128, |acc, &(_, w)| acc | 1u128 << self.config(w, &regs))
                    })
                    .collect()
            }
            Rem::Union(a, b) => self.rel(a).iter().zip(self.rel(b)).map(|(x, y)| x | y).collect(),
            Rem::Concat(a, b) => Self::compose(&self.rel(a), &self.rel(b)),
            Rem::Plus(a) => {
                let step = self.rel(a);
                let mut acc = step.clone();
                loop {
                    let next: Vec<u128> =
                        acc.iter().zip(Self::compose(&acc, &step)).map(|(x, y)| x | y).collect();
                    if next == acc {
                        return acc;
                    }
                    acc = next;
                }
            }
            Rem::Star(a) => self.rel(&Rem::Plus(a.clone())).iter().zip(self.identity()).map(|(x, y)| x | y).collect(),
            Rem::Test(a, cond) => self
                .rel(a)
                .into_iter()
                .map(|row| {
                    (0..self.size)
                        .filter(|&j| row >> j & 1 == 1)
                        .filter(|&j| self.holds(cond, self.g.kappa(self.node(j)), &self.regs(j)))
                        .fold(0u128, |acc, j| acc | 1u128 << j)
                })
                .collect(),
            Rem::Store(rs, a) => {
                let inner = self.rel(a);
                (0..self.size)
                    .map(|c| {
                        let v = self.node(c);
                        let mut regs = self.regs(c);
                        for &r in rs {
                            regs[r - 1] = Some(self.g.kappa(v));
                        }
                        inner[self.config(v, &regs)]
                    })
                    .collect()
            }
            Rem::Nest(a) => {
                let inner = self.rel(a);
                (0..self.size).map(|c| if inner[c] != 0 { 1u128 << c } else { 0 }).collect()
            }
        }
    }

    fn pairs(&self, e: &Rem) -> BTreeSet<(NodeId, NodeId)> {
        let r = self.rel(e);
        let bottom = vec![None; self.k];
        let mut out = BTreeSet::new();
        for u in self.g.nodes() {
            let row = r[self.config(u, &bottom)];
            for j in 0..self.size {
                if row >> j & 1 == 1 {
                    out.insert((u, self.node(j)));
                }
            }
        }
        out
    }
}

/// Number of paths with at most `bound` edges.
fn path_count(g: &DataGraph, bound: usize) -> u64 {
    let n = g.node_count();
    let mut ends = vec![1u64; n];
    let mut total = n as u64;
    for _ in 0..bound {
        let mut next = vec![0u64; n];
        for &(s, _, d) in g.edges() {
            next[d] = next[d].saturating_add(ends[s]);
        }
        ends = next;
        total = total.saturating_add(ends.iter().sum());
    }
    total
}

fn criterion_1() -> Verdict {
    const ENUM_CAP: u64 = 20_000;
    let rems = corpus::corpus_rems();
    let mut graphs = Vec::new();
    for seed in 0..40u64 {
        let labels: Vec<String> = if seed % 2 == 0 { vec!["a".into()] } else { vec!["a".into(), "b".into()] };
        let spec = RandomSpec { edge_prob: 0.3, labels, values: Some(3), ..RandomSpec::new(1 + seed as usize % 5, seed) };
        graphs.push(random_graph(&spec));
    }
    let (mut instances, mut relational_ok, mut enum_equal, mut enum_sound, mut witness_ok) = (0, 0, 0, 0, 0);
    let mut too_deep = 0;
    let mut max_l = 0;
    let mut problems = Vec::new();
    for (gi, g) in graphs.iter().enumerate() {
        let mut l_enum = 0;
        while path_count(g, l_enum + 1) <= ENUM_CAP && l_enum < 64 {
            l_enum += 1;
        }
        let paths: Vec<Path> = enum_paths(g, l_enum, None, None).collect();
        for (name, k, e) in &rems {
            instances += 1;
            let got = rem_pairs(g, e, *k).unwrap();
            let bound = config_bound(&Program::new(g, e, *k).unwrap());
            let l = l_enum.min(bound);
            max_l = max_l.max(l);
            let bottom = vec![None; *k];
            let enumerated: BTreeSet<(NodeId, NodeId)> = paths
                .iter()
                .filter(|p| p.len() <= l && !path_parse(g, e, *k, p, &bottom).unwrap().is_empty())
                .map(|p| (p.first(), p.last()))
                .collect();
            if Relational::new(g, *k).pairs(e) == got {
                relational_ok += 1;
            } else {
                problems.push(format!("relational g{gi} {name}"));
            }
            if enumerated.is_subset(&got) {
                enum_sound += 1;
            } else {
                problems.push(format!("enumeration g{gi} {name}"));
            }
            let mut longest = 0;
            let mut all_valid = true;
            for &(u, v) in &got {
                match witness_path(g, e, *k, u, v).unwrap() {
                    Some(w) if w.len() <= bound && !path_parse(g, e, *k, &w, &bottom).unwrap().is_empty() => {
                        longest = longest.max(w.len())
                    }
                    _ => all_valid = false,
                }
            }
            if all_valid {
                witness_ok += 1;
            } else {
                problems.push(format!("witness g{gi} {name}"));
            }
            // witnesses are shortest, so enumeration up to the longest one is exhaustive
            if longest <= l {
                if enumerated == got {
                    enum_equal += 1;
                } else {
                    problems.push(format!("enumeration-equality g{gi} {name}"));
                }
            } else {
                too_deep += 1;
            }
        }
    }
    let pass = problems.is_empty();
    Verdict::new(
        pass,
        format!(
            "{instances} (graph, REM) instances on {} graphs: relational oracle {relational_ok}, enumeration ⊆ {enum_sound}, \
             enumeration = {enum_equal} (skipped {too_deep} with a witness beyond the depth), witnesses {witness_ok}; \
             enumeration depth ≤ {max_l}{}",
            graphs.len(),
            if pass { String::new() } else { format!("; problems: {}", problems[..problems.len().min(5)].join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 2: corpus formulas against graph oracles.

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            for (x, y) in [(a, b), (b, a)] {
                if x == v && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every connected graph on 1..=5 nodes plus seeded connected graphs on 6.
fn connected_suite() -> Vec<DataGraph> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for edges in undirected_graphs(n) {
            if connected(n, &edges) {
                out.push(encode_undirected(n, &edges));
            }
        }
    }
    let mut seed = 0u64;
    let mut six = 0;
    while six < 120 {
        let spec = RandomSpec { edge_prob: 0.35, symmetric: true, ..RandomSpec::new(6, 1000 + seed) };
        seed += 1;
        let g = random_graph(&spec);
        let edges: Vec<(usize, usize)> = g.edges().iter().filter(|e| e.0 < e.2).map(|e| (e.0, e.2)).collect();
        if connected(6, &edges) {
            out.push(encode_undirected(6, &edges));
            six += 1;
        }
    }
    out
}

fn criterion_2() -> Verdict {
    let suite = connected_suite();
    let (ham, hk) = rl("rl_hamiltonian");
    let (odd, ok) = rl("rl_odd_cycle");
    let (even, ek) = rl("rl_even_hamiltonian");
    let (euler, uk) = rl("rl_eulerian");
    let none = Valuation::new();
    let (mut ham_ok, mut odd_ok, mut euler_ok, mut euler_n, mut lit_ok, mut sup_ok) = (0, 0, 0, 0, 0, 0);
    let mut lit_counter = None;
    let mut problems = Vec::new();
    for (i, g) in suite.iter().enumerate() {
        let n = g.node_count();
        // a path without repeated values has at most |V| − 1 edges
        let simple = BruteOptions::new(n - 1);
        let h = rl_eval_brute(g, &ham, hk, &none, &simple).unwrap();
        let oracle_h = hamiltonian_path_exists(g);
        if h == oracle_h {
            ham_ok += 1;
        } else {
            problems.push(format!("hamiltonian #{i}"));
        }
        if nrlplus_eval(g, &odd, ok, &none).unwrap().holds == !is_bipartite(g) {
            odd_ok += 1;
        } else {
            problems.push(format!("odd-cycle #{i}"));
        }
        let ev = rl_eval_brute(g, &even, ek, &none, &simple).unwrap();
        let (conn, parity) = connected_parity(g);
        if ev == (conn && parity == Parity::Odd) {
            lit_ok += 1;
        } else if lit_counter.is_none() {
            lit_counter = Some(format!("{n} nodes, {} edges, Hamiltonian path {oracle_h}", g.edge_count() / 2));
        }
        if ev == (oracle_h && parity == Parity::Odd) {
            sup_ok += 1;
        } else {
            problems.push(format!("even-hamiltonian #{i}"));
        }
        if n <= 5 {
            euler_n += 1;
            // a trail repeats no undirected edge
            let trail = BruteOptions::new(g.edge_count() / 2);
            if rl_eval_brute(g, &euler, uk, &none, &trail).unwrap() == eulerian_trail_exists(g).unwrap() {
                euler_ok += 1;
            } else {
                problems.push(format!("eulerian #{i}"));
            }
        }
    }
    let total = suite.len();
    let literal = lit_ok == total;
    let others = problems.is_empty();
    let mut detail = format!(
        "{total} connected graph databases: hamiltonian {ham_ok}/{total}, odd-cycle {odd_ok}/{total}, \
         eulerian {euler_ok}/{euler_n}, even-edge ⇔ connected ∧ |V| odd {lit_ok}/{total}, \
         even-edge ⇔ Hamiltonian path ∧ |V| odd {sup_ok}/{total}"
    );
    if let Some(c) = &lit_counter {
        detail.push_str(&format!("; literal even-edge clause refuted on: {c}"));
    }
    if !others {
        detail.push_str(&format!("; problems: {}", problems[..problems.len().min(5)].join(", ")));
    }
    Verdict { pass: literal && others, detail, documented: !literal && others }
}

// ---------------------------------------------------------------------------
// Criterion 3: query Q three ways.

fn query_q_suite() -> Vec<DataGraph> {
    (0..50u64).map(|seed| random_graph(&RandomSpec { edge_prob: 0.3, ..RandomSpec::new(2 + seed as usize % 5, 500 + seed) })).collect()
}

fn criterion_3() -> Verdict {
    let (rlq, rk) = rl("rl_query_q");
    let (nrlq, nk) = rl("nrl_query_q");
    let vars = ["x".to_string(), "y".to_string()];
    let mut agree = 0;
    let mut answers = 0;
    let mut problems = Vec::new();
    for (i, g) in query_q_suite().iter().enumerate() {
        let oracle = query_q_oracle(g);
        let nrl: BTreeSet<(NodeId, NodeId)> =
            nrlplus_answers(g, &nrlq, nk, &Valuation::new(), &vars).unwrap().into_iter().map(|t| (t[0], t[1])).collect();
        // shortest witnesses are simple paths, so L = |V| is exact
        let opts = BruteOptions::new(g.node_count());
        let mut brute = BTreeSet::new();
        for x in g.nodes() {
            for y in g.nodes() {
                if rl_eval_brute(g, &rlq, rk, &Valuation::new().node("x", x).node("y", y), &opts).unwrap() {
                    brute.insert((x, y));
                }
            }
        }
        answers += oracle.len();
        if brute == oracle && nrl == oracle {
            agree += 1;
        } else {
            problems.push(i);
        }
    }
    Verdict::new(
        problems.is_empty(),
        format!("{agree}/50 graphs with identical RL, NRL⁺ and oracle answer sets ({answers} pairs in total){}",
            if problems.is_empty() { String::new() } else { format!("; differing graphs {problems:?}") }),
    )
}

// ---------------------------------------------------------------------------
// Criterion 4: bounded WL.

fn criterion_4() -> Verdict {
    let wl = corpus::get("wl_hamiltonian").unwrap().query();
    let wl = wl.wl().unwrap();
    let mut graphs: Vec<DataGraph> = Vec::new();
    for n in 1..=5 {
        graphs.extend(undirected_graphs(n).map(|e| encode_undirected(n, &e)));
    }
    for seed in 0..40u64 {
        graphs.push(random_graph(&RandomSpec { edge_prob: 0.3, ..RandomSpec::new(5, 2000 + seed) }));
        graphs.push(random_graph(&RandomSpec { edge_prob: 0.3, ..RandomSpec::new(4, 3000 + seed) }));
    }
    let mut ham_ok = 0;
    for g in &graphs {
        if wl_eval_bounded(g, wl, &[], &Valuation::new(), g.node_count(), true).unwrap() == hamiltonian_path_exists(g) {
            ham_ok += 1;
        }
    }

    let mut checks = 0;
    let mut counter_ok = 0;
    for (n, f0) in [(1, 1), (2, 1), (3, 1), (1, 2), (1, 3)] {
        let bits = n * f0;
        let g = gen_counter_graph(1, n, f0, &sigma(1)).unwrap();
        let cf = gen_counter_formulas_k1(n, f0);
        let l = cf.path_len();
        let top = 1u64 << bits;
        let paths: Vec<Path> = (0..top).map(|v| counter_path(&g, bits, v).unwrap()).collect();
        let eval = |f, a: &Valuation| wl_eval_bounded(&g, &f, &[], a, l, true).unwrap();
        for i in 0..top {
            let a = Valuation::new().path("p", paths[i as usize].clone());
            let mut ok = eval(cf.last("p"), &a) == (i == top - 1) && eval(cf.num0("p"), &a) == (i == 0);
            checks += 2;
            for j in 0..top {
                let b = a.clone().path("q", paths[j as usize].clone());
                ok &= eval(cf.eq("p", "q"), &b) == (i == j);
                ok &= eval(cf.succ("p", "q"), &b) == (j == i + 1);
                ok &= eval(cf.num(j as usize, "p"), &a) == (i == j);
                checks += 3;
            }
            if ok {
                counter_ok += 1;
            }
        }
    }
    let counter_total: u64 = [1u64, 2, 3, 1, 1].iter().zip([1u64, 1, 1, 2, 3]).map(|(n, f)| 1u64 << (n * f)).sum();
    Verdict::new(
        ham_ok == graphs.len() && counter_ok == counter_total,
        format!(
            "WL Hamiltonicity {ham_ok}/{} graph databases (L = |V|); counter formulas {counter_ok}/{counter_total} \
             counter values ({checks} checks of num/last/eq/succ, f₀n ≤ 3)",
            graphs.len()
        ),
    )
}

// ---------------------------------------------------------------------------
// Criteria 5 and 6: exact RL against bounded RL, threshold counting.

/// Graphs with at most three nodes over {a} with at most two data values.
fn small_family() -> Vec<DataGraph> {
    let mut out = Vec::new();
    let build = |n: usize, values: &[i64], edges: &[(usize, usize)]| {
        let mut b = GraphBuilder::new();
        b.symbol("a");
        for (i, &v) in values.iter().enumerate().take(n) {
            b.node(&format!("v{i}"), Some(DataValue::Int(v))).unwrap();
        }
        for &(s, d) in edges {
            b.edge(s, "a", d);
        }
        b.build()
    };
    out.push(build(1, &[0], &[]));
    out.push(build(1, &[0], &[(0, 0)]));
    let pairs2 = [(0, 0), (0, 1), (1, 0), (1, 1)];
    for mask in 0u32..16 {
        let edges: Vec<_> = pairs2.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
        for values in [[0, 0], [0, 1]] {
            out.push(build(2, &values, &edges));
        }
    }
    let pairs3: Vec<(usize, usize)> = (0..3).flat_map(|s| (0..3).map(move |d| (s, d))).collect();
    for seed in 0..12u32 {
        // a fixed pseudo-random sparse edge set per seed
        let edges: Vec<_> =
            pairs3.iter().enumerate().filter(|(i, _)| (seed.wrapping_mul(2654435761) >> (i * 3 % 29)) & 3 == 0).map(|(_, &e)| e).collect();
        let values = if seed % 2 == 0 { [0, 1, 0] } else { [0, 1, 1] };
        out.push(build(3, &values, &edges));
    }
    out
}

fn small_rems() -> Vec<Rem> {
    let a = || Rem::letter("a");
    vec![
        a(),
        Rem::star(a()),
        Rem::concat(a(), a()),
        Rem::store(vec![1], Rem::test(Rem::plus(a()), Cond::Eq(1))),
        Rem::plus(Rem::test(a(), Cond::not(Cond::Eq(1)))),
    ]
}

/// Closed formulas over one REM atom and one register.
fn small_formulas(e: &Rem) -> Vec<Formula> {
    use Formula as F;
    let atom = |p: &str, l: &str, m: &str| F::atom(e.clone(), p, l, m);
    let ex = |s, v: &str, f| F::exists(s, v, f);
    let all = |s, v: &str, f| F::forall(s, v, f);
    let bot = |l: &str| F::RegBot(l.into());
    let ends = |x: &str, p: &str, y: &str| F::Endpoints(x.into(), p.into(), y.into());
    vec![
        ex(Sort::Path, "p", ex(Sort::Reg, "l", ex(Sort::Reg, "m", atom("p", "l", "m")))),
        ex(Sort::Path, "p", all(Sort::Reg, "l", all(Sort::Reg, "m", F::not(atom("p", "l", "m"))))),
        all(Sort::Path, "p", ex(Sort::Reg, "l", ex(Sort::Reg, "m", atom("p", "l", "m")))),
        all(Sort::Node, "x", ex(Sort::Path, "p", ex(Sort::Node, "y", F::and(ends("x", "p", "y"),
            F::not(ex(Sort::Reg, "l", F::and(bot("l"), ex(Sort::Reg, "m", atom("p", "l", "m"))))))))),
        ex(Sort::Node, "x", ex(Sort::Node, "y", ex(Sort::Path, "p", ex(Sort::Path, "q", F::and(
            F::and(ends("x", "p", "y"), ends("x", "q", "y")),
            F::and(F::not(F::PathEq("p".into(), "q".into())),
                ex(Sort::Reg, "l", F::and(bot("l"), ex(Sort::Reg, "m", F::and(atom("p", "l", "m"), atom("q", "l", "m"))))))))))),
        all(Sort::Path, "p", F::implies(ex(Sort::Reg, "l", ex(Sort::Reg, "m", atom("p", "l", "m"))),
            ex(Sort::Path, "q", F::and(F::not(F::PathEq("p".into(), "q".into())),
                ex(Sort::Reg, "l", ex(Sort::Reg, "m", atom("q", "l", "m"))))))),
    ]
}

fn criterion_5() -> Verdict {
    let (mut instances, mut agree, mut errors) = (0, 0, 0);
    let mut max_bound = 0;
    let mut problems = Vec::new();
    for (gi, g) in small_family().iter().enumerate() {
        for e in small_rems() {
            for (fi, f) in small_formulas(&e).iter().enumerate() {
                instances += 1;
                let m = match build_representative(g, f, 1, &Valuation::new()) {
                    Ok(m) => m,
                    Err(err) => {
                        errors += 1;
                        problems.push(format!("g{gi} f{fi}: {err}"));
                        continue;
                    }
                };
                let bound = m.completeness_bound();
                max_bound = max_bound.max(bound);
                let exact = rl_eval_exact(g, f, 1, &Valuation::new()).unwrap();
                let brute = rl_eval_brute(g, f, 1, &Valuation::new(), &BruteOptions::new(bound)).unwrap();
                if exact == brute {
                    agree += 1;
                } else {
                    problems.push(format!("g{gi} f{fi} e={e:?}"));
                }
            }
        }
    }
    Verdict::new(
        agree == instances && instances >= 200,
        format!(
            "{agree}/{instances} instances agree (|V| ≤ 3, one REM atom, k = 1, |D| ≤ 2; completeness bounds up to {max_bound}){}",
            if problems.is_empty() { String::new() } else { format!("; {errors} errors, problems: {}", problems[..problems.len().min(4)].join(", ")) }
        ),
    )
}

fn criterion_6() -> Verdict {
    let (mut checks, mut agree) = (0, 0);
    let mut problems = Vec::new();
    for (gi, g) in small_family().iter().enumerate() {
        for e in small_rems() {
            let f = &small_formulas(&e)[0];
            let t_max = threshold(f);
            let m = build_representative(g, f, 1, &Valuation::new()).unwrap();
            let bound = m.completeness_bound();
            let rems = vec![e.clone()];
            // every class has min(T, count) members within the completeness bound
            let mut counts: BTreeMap<(NodeId, NodeId, Profile), usize> = BTreeMap::new();
            for p in enum_paths(g, bound, None, None) {
                let prof = path_profile(g, &p, &rems, 1).unwrap();
                *counts.entry((p.first(), p.last(), prof)).or_default() += 1;
            }
            for ((u, v, prof), c) in &counts {
                for t in 1..=t_max {
                    checks += 1;
                    let got = count_paths_threshold(g, &rems, 1, *u, *v, prof, t).unwrap();
                    if got == t.min(*c) {
                        agree += 1;
                    } else {
                        problems.push(format!("g{gi} ({u},{v}) t={t}: {got} vs {}", t.min(*c)));
                    }
                }
            }
        }
    }

    // T + 2 parallel two-edge paths u → w_i → v with one shared profile
    let e = Rem::concat(Rem::letter("a"), Rem::letter("a"));
    let f = &small_formulas(&e)[0];
    let t = threshold(f);
    let mut b = GraphBuilder::new();
    let u = b.node("u", Some(DataValue::Int(0))).unwrap();
    let v = b.node("v", Some(DataValue::Int(1))).unwrap();
    for i in 0..t + 2 {
        let w = b.node(&format!("w{i}"), Some(DataValue::Int(2))).unwrap();
        b.edge(u, "a", w);
        b.edge(w, "a", v);
    }
    let g = b.build();
    let rho = enum_paths(&g, 2, Some(u), Some(v)).next().unwrap();
    let prof = path_profile(&g, &rho, &[e.clone()], 1).unwrap();
    let counted = count_paths_threshold(&g, &[e.clone()], 1, u, v, &prof, t).unwrap();
    let m = build_representative(&g, f, 1, &Valuation::new()).unwrap();
    let stored = m.classes.iter().find(|c| c.u == u && c.v == v && c.profile == prof).map(|c| (c.count, c.paths.len()));
    let cap_ok = counted == t && stored == Some((t, t));
    Verdict::new(
        agree == checks && cap_ok,
        format!(
            "{agree}/{checks} (u, v, profile, t) counts match capped enumeration; {} parallel same-profile paths give \
             count {counted} and {} stored representatives with T = {t}{}",
            t + 2,
            stored.map_or(0, |s| s.1),
            if problems.is_empty() { String::new() } else { format!("; problems: {}", problems[..problems.len().min(4)].join(", ")) }
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 7: PSPACE gadget end to end.

fn criterion_7() -> Verdict {
    let machines: Vec<(&str, TuringMachine)> = vec![
        ("immediate", samples::immediate()),
        ("two-step", samples::two_step()),
        ("looper", samples::looper()),
        ("runaway", samples::runaway()),
        ("first-is-one", samples::first_is_one()),
    ];
    let mut rows = Vec::new();
    let mut ok = true;
    for (name, m) in &machines {
        for w in ["01", "10"] {
            let word = parse_word(w);
            let bundle = gen_rl_pspace(m, &word, 1).unwrap();
            let Some(GadgetFormula::Rl { formula, registers }) = &bundle.formula else { unreachable!() };
            let bound = bundle.meta.bound.unwrap();
            let start = Instant::now();
            let got = rl_eval_brute(&bundle.graph, formula, *registers, &Valuation::new(), &BruteOptions::new(bound));
            let want = tm_simulate(m, &word, word.len(), 10_000).outcome == TmOutcome::Accept;
            let got = match got {
                Ok(b) => b.to_string(),
                Err(e) => format!("error ({e})"),
            };
            ok &= got == want.to_string();
            rows.push(format!("{name}/{w}: {got} vs {want} at L={bound} in {:.1}s", secs(start.elapsed())));
        }
    }
    Verdict::new(ok, rows.join("; "))
}

// ---------------------------------------------------------------------------
// Criterion 8: gadget structure.

fn criterion_8() -> Verdict {
    let mut problems = Vec::new();
    let mut counted = 0;
    for bits in 1..=6usize {
        for f0 in 1..=bits {
            if bits % f0 != 0 {
                continue;
            }
            let n = bits / f0;
            let g = gen_counter_graph(1, n, f0, &sigma(1)).unwrap();
            let count = |l: &str| g.edges().iter().filter(|e| g.symbol_name(e.1) == l).count();
            let stages = g
                .nodes()
                .filter(|&v| {
                    let labels: BTreeSet<&str> = g.out(v).iter().map(|e| g.symbol_name(e.0)).collect();
                    labels == BTreeSet::from(["a1", "b1"])
                })
                .count();
            counted += 1;
            if (g.node_count(), g.edge_count(), count("i1"), count("f1"), stages) != (3 * bits + 4, 4 * bits + 3, 1, 1, bits) {
                problems.push(format!("counter n={n} f0={f0}"));
            }
        }
    }
    let mut fans = 0;
    for m in [samples::immediate(), samples::two_step(), samples::first_is_one()] {
        for (w, f0) in [("01", 1), ("1", 2), ("011", 1)] {
            let cells = w.len() * f0;
            let g = gen_rl_pspace(&m, &parse_word(w), f0).unwrap().graph;
            let want: BTreeSet<String> = std::iter::once("$")
                .chain(m.states.iter().map(String::as_str))
                .flat_map(|q| m.sigma.iter().map(move |a| format!("{q}_{a}")))
                .collect();
            let positions: Vec<NodeId> = g.nodes().filter(|&v| g.name(v).starts_with("h_p")).collect();
            let full = positions
                .iter()
                .filter(|&&p| g.out(p).iter().map(|e| g.symbol_name(e.0).to_string()).collect::<BTreeSet<_>>() == want)
                .count();
            fans += 1;
            if positions.len() != cells || full != cells || gadget_letters(&m).delta.len() != want.len() {
                problems.push(format!("pspace w={w} f0={f0}"));
            }
        }
    }
    Verdict::new(
        problems.is_empty(),
        format!(
            "{counted} counter graphs with f₀n ≤ 6 and {fans} PSPACE H components checked{}",
            if problems.is_empty() { String::new() } else { format!("; problems: {problems:?}") }
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 9: data-complexity scaling.

/// Least-squares slope of log(time) against log(n).
fn loglog_slope(points: &[(usize, f64)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| (p.0 as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.max(1e-6).ln()).collect();
    let k = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / k, ys.iter().sum::<f64>() / k);
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    cov / var
}

fn criterion_9() -> Verdict {
    const MAX_SLOPE: f64 = 4.0;
    let (nrlq, nk) = rl("nrl_query_q");
    let vars = ["x".to_string(), "y".to_string()];
    let mut nrl = Vec::new();
    for n in [8, 16, 32, 64] {
        let g = cycle_graph(n);
        let start = Instant::now();
        let ans = nrlplus_answers(&g, &nrlq, nk, &Valuation::new(), &vars).unwrap();
        nrl.push((n, secs(start.elapsed())));
        assert_eq!(ans.len(), n * n, "every pair of a cycle is an answer");
    }
    let slope = loglog_slope(&nrl);

    // exhaustive bounded RL on one answer pair, L = |V|, until the budget or a
    // single run over 5 s, beyond which memory runs out on this machine
    let (rlq, rk) = rl("rl_query_q");
    let mut brute = Vec::new();
    let mut stopped = String::from("all sizes finished");
    let mut spent = 0.0;
    for n in (4..=64).step_by(2) {
        let g = cycle_graph(n);
        let alpha = Valuation::new().node("x", 0).node("y", n / 2);
        let opts = BruteOptions { budget: 5_000_000, ..BruteOptions::new(n).plain() };
        let start = Instant::now();
        let r = rl_eval_brute(&g, &rlq, rk, &alpha, &opts);
        let t = secs(start.elapsed());
        spent += t;
        match r {
            Ok(_) => brute.push((n, t)),
            Err(e) => {
                stopped = format!("stopped at n={n}: {e}");
                break;
            }
        }
        if t > 5.0 || spent > 60.0 {
            stopped = format!("stopped after n={n}: time cap");
            break;
        }
    }
    // log-log slope over the last three sizes against the first three
    let tail = &brute[brute.len().saturating_sub(3)..];
    let (first, local) = (loglog_slope(&brute[..brute.len().min(3)]), loglog_slope(tail));
    let super_poly = tail.len() >= 2 && local > first && local > MAX_SLOPE;
    let fmt = |pts: &[(usize, f64)]| pts.iter().map(|(n, t)| format!("{n}:{t:.4}")).collect::<Vec<_>>().join(" ");
    Verdict::new(
        slope <= MAX_SLOPE && super_poly,
        format!(
            "NRL⁺ query Q on cycles [{}] log-log slope {slope:.2} (≤ {MAX_SLOPE}); unpruned bounded RL [{}] slope {first:.2} rising to {local:.2}, {stopped}",
            fmt(&nrl),
            fmt(&brute)
        ),
    )
}

// ---------------------------------------------------------------------------
// Criterion 10: witness soundness.

fn criterion_10() -> Verdict {
    let (mut runs, mut sound) = (0, 0);
    let mut problems = Vec::new();
    let (nrlq, nk) = rl("nrl_query_q");
    for (i, g) in query_q_suite().iter().enumerate().take(25) {
        for x in g.nodes() {
            for y in g.nodes() {
                let alpha = Valuation::new().node("x", x).node("y", y);
                let r = nrlplus_eval(g, &nrlq, nk, &alpha).unwrap();
                if !r.holds {
                    continue;
                }
                runs += 1;
                let paths_ok = r.witness.as_ref().is_some_and(|w| {
                    w.paths.values().all(|p| validate_path(g, &p.nodes, &p.labels).is_ok())
                        && w.paths.values().all(|p| p.first() == x && p.last() == y)
                });
                if paths_ok && r.verify(g, nk, &alpha).unwrap() {
                    sound += 1;
                } else {
                    problems.push(format!("nrl g{i} ({x},{y})"));
                }
            }
        }
    }
    let suite = connected_suite();
    for name in ["rl_hamiltonian", "rl_odd_cycle", "rl_even_hamiltonian"] {
        let (f, k) = rl(name);
        for (i, g) in suite.iter().enumerate().step_by(7) {
            let opts = BruteOptions::new(g.node_count().max(2));
            let Some(w) = rl_eval_brute_witness(g, &f, k, &Valuation::new(), &opts).unwrap() else { continue };
            runs += 1;
            let p = &w.paths["p"];
            let mut ok = validate_path(g, &p.nodes, &p.labels).is_ok();
            // the witnessed path must parse the positive atoms it is required to
            if name == "rl_odd_cycle" {
                let e = match &f {
                    Formula::Exists(_, _, b) => match &**b {
                        Formula::Exists(_, _, b) => match &**b {
                            Formula::Exists(_, _, b) => match &**b {
                                Formula::Atom(e, ..) => e.clone(),
                                _ => unreachable!(),
                            },
                            _ => unreachable!(),
                        },
                        _ => unreachable!(),
                    },
                    _ => unreachable!(),
                };
                ok &= w.regs.get("l").is_some_and(|l| path_parse(g, &e, k, p, l).unwrap().contains(&w.regs["m"]));
            }
            ok &= verify_witness(g, &f, k, &Valuation::new(), &w, &opts).unwrap();
            if ok {
                sound += 1;
            } else {
                problems.push(format!("{name} #{i}"));
            }
        }
    }
    Verdict::new(
        runs > 0 && sound == runs,
        format!(
            "{sound}/{runs} witness bundles re-validated (NRL⁺ query Q answers, bounded RL Hamiltonian, odd-cycle, even-edge){}",
            if problems.is_empty() { String::new() } else { format!("; problems: {}", problems[..problems.len().min(5)].join(", ")) }
        ),
    )
}

fn main() {
    let criteria: Vec<(&str, fn() -> Verdict, Option<f64>)> = vec![
        ("REM denotations vs enumeration", criterion_1, Some(60.0)),
        ("corpus formulas vs oracles", criterion_2, Some(300.0)),
        ("query Q three ways", criterion_3, None),
        ("bounded WL", criterion_4, None),
        ("exact RL vs bounded RL", criterion_5, None),
        ("threshold counting", criterion_6, None),
        ("PSPACE gadget end to end", criterion_7, Some(600.0)),
        ("gadget structure", criterion_8, None),
        ("data-complexity scaling", criterion_9, None),
        ("witness soundness", criterion_10, None),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut hard_failures = 0;
    for (i, (title, run, limit)) in criteria.into_iter().enumerate() {
        let id = i + 1;
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let start = Instant::now();
        let mut v = run();
        let t = secs(start.elapsed());
        if let Some(limit) = limit {
            if t > limit {
                v.pass = false;
                v.documented = false;
                v.detail.push_str(&format!("; exceeded the {limit:.0} s limit"));
            }
        }
        let status = match (v.pass, v.documented) {
            (true, _) => "PASS",
            (false, true) => "FAIL (documented)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2}: {status} {title} [{t:.1}s] {}", v.detail);
        if !v.pass && !v.documented {
            hard_failures += 1;
        }
    }
    if hard_failures > 0 {
        eprintln!("{hard_failures} criteria failed");
        std::process::exit(1);
    }
}
