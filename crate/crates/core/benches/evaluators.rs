use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use datapath::gadgets::families::{random_graph, RandomSpec};
use datapath::gadgets::{complete_graph, cycle_graph};
use datapath::logic::exact::build_representative_with;
use datapath::logic::nrlplus::nrlplus_answers_with;
use datapath::logic::{rl_eval_brute, BruteOptions, Valuation};
use datapath::query::{corpus, Formula};

fn rl(name: &str) -> (Formula, usize) {
    let q = corpus::get(name).unwrap().query();
    (q.rl().unwrap().clone(), q.registers)
}

const STRATEGIES: [(&str, bool); 2] = [("parallel", true), ("sequential", false)];

fn brute(c: &mut Criterion) {
    let mut group = c.benchmark_group("brute");
    group.sample_size(10);
    for name in ["rl_hamiltonian", "rl_odd_cycle"] {
        let (f, k) = rl(name);
        let g = complete_graph(6);
        for (label, parallel) in STRATEGIES {
            let opts = BruteOptions { parallel, ..BruteOptions::new(5) };
            group.bench_function(BenchmarkId::new(label, name), |b| {
                b.iter(|| rl_eval_brute(&g, &f, k, &Valuation::new(), &opts).unwrap())
            });
        }
    }
    // unpruned, so the per-path work dominates
    let (f, k) = rl("rl_query_q");
    let g = cycle_graph(12);
    let alpha = Valuation::new().node("x", 0).node("y", 6);
    for (label, parallel) in STRATEGIES {
        let opts = BruteOptions { parallel, ..BruteOptions::new(12).plain() };
        group.bench_function(BenchmarkId::new(label, "rl_query_q/plain"), |b| {
            b.iter(|| rl_eval_brute(&g, &f, k, &alpha, &opts).unwrap())
        });
    }
    group.finish();
}

fn nrlplus(c: &mut Criterion) {
    let mut group = c.benchmark_group("nrlplus_answers");
    group.sample_size(10);
    let (f, k) = rl("nrl_query_q");
    let vars = ["x".to_string(), "y".to_string()];
    for n in [16, 32] {
        let g = cycle_graph(n);
        for (label, parallel) in STRATEGIES {
            group.bench_with_input(BenchmarkId::new(label, n), &g, |b, g| {
                b.iter(|| nrlplus_answers_with(g, &f, k, &Valuation::new(), &vars, parallel).unwrap())
            });
        }
    }
    group.finish();
}

fn exact(c: &mut Criterion) {
    let mut group = c.benchmark_group("exact_structure");
    group.sample_size(10);
    let (f, k) = rl("rl_odd_cycle");
    let g = random_graph(&RandomSpec { edge_prob: 0.4, symmetric: true, ..RandomSpec::new(6, 1) });
    for (label, parallel) in STRATEGIES {
        group.bench_function(BenchmarkId::new(label, "rl_odd_cycle"), |b| {
            b.iter(|| build_representative_with(&g, &f, k, &Valuation::new(), 2_000_000, parallel).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, brute, nrlplus, exact);
criterion_main!(benches);
