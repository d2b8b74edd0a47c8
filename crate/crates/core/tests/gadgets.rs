use datapath::gadgets::counter::sigma;
use datapath::gadgets::pspace::{chi, chi_rems, gen_rl_pspace};
use datapath::graph::{DataGraph, Path};
use datapath::rem::path_parse;
use datapath::gadgets::tm::samples;
use datapath::gadgets::{
    counter_path, gen_counter_formulas_k1, gen_counter_graph, gen_wl_hardness_k1, parse_word, tm_simulate, GadgetFormula,
    TmOutcome, TuringMachine,
};
use datapath::logic::{rl_eval_brute, wl_eval_bounded, BruteOptions, Valuation};
use datapath::query::{classify_rl, Formula, Fragment, Rem, WlFormula};

/// Depth-first search for a path from the start node of the I_w chain that
/// satisfies none of the χ REMs. Every REM other than `no-final` ends in
/// `any*`, so a prefix it matches can be dropped with all its extensions.
fn refuting_path(g: &DataGraph, m: &TuringMachine, bound: usize) -> Option<Path> {
    let rems = chi_rems(m);
    let matches = |e: &Rem, p: &Path| !path_parse(g, e, 1, p, &[None]).unwrap().is_empty();
    let mut stack = vec![Path::single(g.node_id("iw_i").unwrap())];
    while let Some(p) = stack.pop() {
        if rems.iter().any(|(name, e)| name != "no-final" && matches(e, &p)) {
            continue;
        }
        if !rems.iter().any(|(_, e)| matches(e, &p)) {
            return Some(p);
        }
        if p.len() < bound {
            for &(a, x) in g.out(p.last()) {
                let mut q = p.clone();
                q.push(a, x);
                stack.push(q);
            }
        }
    }
    None
}

fn pspace_agrees(m: &TuringMachine, w: &str) {
    let w = parse_word(w);
    let bundle = gen_rl_pspace(m, &w, 1).unwrap();
    let Some(GadgetFormula::Rl { formula, .. }) = &bundle.formula else { panic!("no formula") };
    assert_eq!(classify_rl(formula), Fragment::Rl);
    let bound = bundle.meta.bound.unwrap();
    let g = &bundle.graph;
    let witness = refuting_path(g, m, bound);
    if let Some(p) = &witness {
        let not_chi = Formula::not(chi(m, "p"));
        let alpha = Valuation::new().path("p", p.clone());
        assert!(rl_eval_brute(g, &not_chi, 1, &alpha, &BruteOptions::new(p.len())).unwrap());
    }
    let want = tm_simulate(m, &w, w.len(), 1000).outcome == TmOutcome::Accept;
    assert_eq!(witness.is_some(), want, "machine {} on {w:?} at L={bound}", m.to_text());
}

fn pspace_brute_agrees(m: &TuringMachine, w: &str) {
    let w = parse_word(w);
    let bundle = gen_rl_pspace(m, &w, 1).unwrap();
    let Some(GadgetFormula::Rl { formula, registers }) = &bundle.formula else { panic!("no formula") };
    let opts = BruteOptions::new(bundle.meta.bound.unwrap());
    let got = rl_eval_brute(&bundle.graph, formula, *registers, &Valuation::new(), &opts).unwrap();
    assert_eq!(got, tm_simulate(m, &w, w.len(), 1000).outcome == TmOutcome::Accept);
}

#[test]
fn pspace_brute_on_small_instances() {
    pspace_brute_agrees(&samples::immediate(), "01");
    pspace_brute_agrees(&samples::runaway(), "0");
    pspace_brute_agrees(&samples::first_is_one(), "1");
    pspace_brute_agrees(&samples::first_is_one(), "0");
}

#[test]
fn pspace_immediate_acceptor() {
    pspace_agrees(&samples::immediate(), "01");
    pspace_agrees(&samples::immediate(), "110");
}

#[test]
fn pspace_two_step_acceptor() {
    pspace_agrees(&samples::two_step(), "01");
    pspace_agrees(&samples::two_step(), "10");
}

#[test]
fn pspace_rejectors() {
    pspace_agrees(&samples::looper(), "01");
    pspace_agrees(&samples::runaway(), "10");
    pspace_agrees(&samples::two_step(), "1");
}

#[test]
fn pspace_input_sensitive() {
    pspace_agrees(&samples::first_is_one(), "10");
    pspace_agrees(&samples::first_is_one(), "01");
    pspace_agrees(&samples::first_is_one(), "011");
}

#[test]
fn pspace_accepting_run_avoids_chi() {
    // the immediate acceptor reads 0, moves right and writes 0 on landing
    let m = samples::immediate();
    let bundle = gen_rl_pspace(&m, &parse_word("01"), 1).unwrap();
    let g = &bundle.graph;
    let start = g.node_id("iw_i").unwrap();
    let good = ["s", "N", "q0_0", "N", "$_1", "#", "N", "$_0", "N", "qf_0"];
    let bad = ["s", "N", "q0_0", "N", "$_1", "#", "N", "$_0", "N", "qf_1"];
    let chi = chi(&m, "p");
    for (labels, expect) in [(&good, false), (&bad, true)] {
        let rho = datapath::gadgets::follow(g, start, labels).unwrap();
        let alpha = Valuation::new().path("p", rho);
        let got = rl_eval_brute(g, &chi, 1, &alpha, &BruteOptions::new(labels.len())).unwrap();
        assert_eq!(got, expect, "{labels:?}");
    }
}

#[test]
fn counter_formulas_match_arithmetic() {
    for bits in 1..=3usize {
        let g = gen_counter_graph(1, bits, 1, &sigma(1)).unwrap();
        let cf = gen_counter_formulas_k1(bits, 1);
        let l = cf.path_len();
        let top = 1u64 << bits;
        let paths: Vec<_> = (0..top).map(|v| counter_path(&g, bits, v).unwrap()).collect();
        let eval = |f: &WlFormula, alpha: &Valuation| wl_eval_bounded(&g, f, &[], alpha, l, true).unwrap();
        for i in 0..top {
            let a = Valuation::new().path("p", paths[i as usize].clone());
            assert!(eval(&cf.phi("p"), &a));
            assert_eq!(eval(&cf.last("p"), &a), i == top - 1, "last({i})");
            assert_eq!(eval(&cf.num0("p"), &a), i == 0, "num0({i})");
            for j in 0..top {
                let a = Valuation::new().path("p", paths[i as usize].clone()).path("q", paths[j as usize].clone());
                assert_eq!(eval(&cf.eq("p", "q"), &a), i == j, "eq({i},{j})");
                assert_eq!(eval(&cf.succ("p", "q"), &a), j == i + 1, "succ({i},{j})");
                assert_eq!(eval(&cf.num(j as usize, "p"), &Valuation::new().path("p", paths[i as usize].clone())), i == j, "num{j}({i})");
            }
        }
    }
}

#[test]
fn counter_formulas_print_and_parse() {
    let cf = gen_counter_formulas_k1(2, 1);
    let f = cf.num(2, "p");
    let text = datapath::query::print_wl(&f);
    let back = datapath::query::parse_wl(&text, &[]).unwrap();
    assert_eq!(back, f);
}

#[test]
fn counter_graph_structure() {
    for bits in 1..=6usize {
        let g = gen_counter_graph(1, bits, 1, &sigma(1)).unwrap();
        let count = |l: &str| g.edges().iter().filter(|e| g.symbol_name(e.1) == l).count();
        assert_eq!((count("i1"), count("f1")), (1, 1));
        let branching = g
            .nodes()
            .filter(|&v| {
                let labels: Vec<&str> = g.out(v).iter().map(|e| g.symbol_name(e.0)).collect();
                labels.contains(&"a1") && labels.contains(&"b1")
            })
            .count();
        assert_eq!(branching, bits);
    }
}

#[test]
fn wl_hardness_k0_label() {
    let m = samples::two_step();
    let b = gen_wl_hardness_k1(&m, &parse_word("10"), 1).unwrap();
    let g = &b.graph;
    let start = g.node_id("k0_in").unwrap();
    let rho = datapath::gadgets::follow(g, start, &["in", "#0", "i1", "N", "a1", "N", "a1", "N", "f1", "q0_1"]).unwrap();
    assert_eq!(rho.last(), g.node_id("k0_out").unwrap());
    // the counter copies in K₀ and H agree on ∼
    assert_eq!(g.kappa(g.node_id("k0_c1").unwrap()), g.kappa(g.node_id("h_c1").unwrap()));
}
