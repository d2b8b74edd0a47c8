//! Command-line front end: `eval`, `gen`, `oracle` and `bench`.
//!
//! Exit codes are 0 for true (or a nonempty answer set, or success), 1 for
//! false and 2 for errors, usage errors included.

pub mod report;

use std::fmt::Write as _;
use std::path::{Path as FsPath, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use datapath::gadgets::{
    self, counter::sigma, families, parse_word, tm::samples, GadgetBundle, TuringMachine,
};
use datapath::graph::{load_graph, save_graph};
use datapath::logic::exact::{build_representative_with, eval_on};
use datapath::logic::{
    brute::rl_eval_brute_witness, budget_from_env, nrlplus::nrlplus_answers_with, nrlplus_eval, rl_eval_brute,
    wl_eval_bounded, BruteOptions, Valuation, DEFAULT_BUDGET,
};
use datapath::oracles::{self, Parity};
use datapath::query::{classify, corpus, free_vars, parse_query, print_query, Formula, Fragment, Query, Var};
use datapath::{DataGraph, Error, NodeId};

pub use report::{Answer, Completeness, Format, ModeUsed, RunReport};

#[derive(Debug, Parser)]
#[command(name = "datapath", version, about = "Evaluate path queries over data graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a query file on a graph file.
    Eval(EvalArgs),
    /// Generate reduction gadgets and graph families.
    Gen(GenArgs),
    /// Run a reference oracle on a graph file.
    Oracle(OracleArgs),
    /// Time a query over a graph family.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Auto,
    Brute,
    Exact,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub graph: PathBuf,
    /// Query file, or `corpus:<name>` for a built-in query.
    pub query: String,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    /// Path-length bound for bounded evaluation (default |V|).
    #[arg(long)]
    pub bound: Option<usize>,
    /// Free node variables whose satisfying tuples are listed.
    #[arg(long, value_delimiter = ',')]
    pub answers: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Human)]
    pub format: Format,
    /// Run on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
    /// Report wall time (makes the output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(subcommand)]
    pub kind: GenKind,
    /// Write `<prefix>.graph` (and `<prefix>.query`) instead of printing.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MachineArgs {
    /// Turing machine file, or `sample:<name>`.
    #[arg(long)]
    pub tm: String,
    /// Input word, one symbol per character.
    #[arg(long, default_value = "")]
    pub w: String,
    #[arg(long, default_value_t = 1)]
    pub f0: usize,
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// k-counter graph.
    Counter {
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        f0: usize,
        /// Branch alphabet (default {a_k, b_k}).
        #[arg(long, value_delimiter = ',')]
        delta: Vec<String>,
    },
    /// Walk-logic hardness instance for 1-counters.
    WlHardness(MachineArgs),
    /// Register-logic instance for a polynomial-space machine.
    RlPspace(MachineArgs),
    /// Register-logic instance for an exponential-space machine.
    RlExpspace(MachineArgs),
    /// Seeded random data graph.
    Random {
        #[arg(long)]
        nodes: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.3)]
        edge_prob: f64,
        #[arg(long, value_delimiter = ',', default_value = "a")]
        labels: Vec<String>,
        /// Number of distinct data values (default: one per node).
        #[arg(long)]
        values: Option<usize>,
        #[arg(long)]
        symmetric: bool,
    },
    /// Undirected cycle.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Undirected complete graph.
    Complete {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Hamiltonian,
    Bipartite,
    Eulerian,
    Parity,
    QueryQ,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(value_enum)]
    pub kind: OracleKind,
    pub graph: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Cycle,
    Complete,
    Random,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Query file, or `corpus:<name>`.
    pub query: String,
    #[arg(long, value_enum, default_value_t = Family::Cycle)]
    pub family: Family,
    /// Comma-separated graph sizes.
    #[arg(long, value_parser = parse_sizes)]
    pub sizes: Sizes,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    pub mode: Mode,
    #[arg(long)]
    pub bound: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub answers: Vec<String>,
    /// Seed for the random family.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Runs per size; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub repeat: usize,
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sizes(pub Vec<usize>);

fn parse_sizes(s: &str) -> Result<Sizes, String> {
    let sizes: Result<Vec<usize>, _> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
    match sizes {
        Ok(v) if !v.is_empty() && v.iter().all(|&n| n > 0) => Ok(Sizes(v)),
        _ => Err(format!("expected comma-separated positive sizes, got `{s}`")),
    }
}

/// What to print and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

pub fn run(cli: Cli) -> anyhow::Result<Outcome> {
    match cli.command {
        Command::Eval(a) => cmd_eval(&a),
        Command::Gen(a) => cmd_gen(&a),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Bench(a) => cmd_bench(&a),
    }
}

pub fn read_graph(path: &FsPath) -> anyhow::Result<DataGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    load_graph(&text).with_context(|| format!("graph file {}", path.display()))
}

pub fn read_query(spec: &str) -> anyhow::Result<Query> {
    if let Some(name) = spec.strip_prefix("corpus:") {
        return corpus::get(name).map(|e| e.query()).ok_or_else(|| anyhow!("no corpus query named `{name}`"));
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("cannot read {spec}"))?;
    parse_query(&text).with_context(|| format!("query file {spec}"))
}

pub fn read_machine(spec: &str) -> anyhow::Result<TuringMachine> {
    if let Some(name) = spec.strip_prefix("sample:") {
        return Ok(match name {
            "immediate" => samples::immediate(),
            "two-step" | "two_step" => samples::two_step(),
            "looper" => samples::looper(),
            "runaway" => samples::runaway(),
            "first-is-one" | "first_is_one" => samples::first_is_one(),
            _ => bail!("no sample machine named `{name}`"),
        });
    }
    let text = std::fs::read_to_string(spec).with_context(|| format!("cannot read {spec}"))?;
    TuringMachine::parse(&text).with_context(|| format!("machine file {spec}"))
}

/// Evaluation settings shared by `eval` and `bench`.
#[derive(Debug, Clone)]
pub struct EvalOptions {
    pub mode: Mode,
    pub bound: Option<usize>,
    pub answers: Vec<String>,
    pub parallel: bool,
}

fn cmd_eval(a: &EvalArgs) -> anyhow::Result<Outcome> {
    let g = read_graph(&a.graph)?;
    let q = read_query(&a.query)?;
    let opts = EvalOptions { mode: a.mode, bound: a.bound, answers: a.answers.clone(), parallel: !a.sequential };
    let start = Instant::now();
    let mut report = evaluate(&g, &q, &opts)?;
    if a.timing {
        report.elapsed = Some(start.elapsed());
    }
    Ok(Outcome { stdout: report.render(a.format), code: report.exit_code() })
}

/// Dispatches on the fragment of `q` and the requested mode.
pub fn evaluate(g: &DataGraph, q: &Query, opts: &EvalOptions) -> Result<RunReport, Error> {
    let budget = budget_from_env(DEFAULT_BUDGET)?;
    let default_bound = opts.bound.unwrap_or(g.node_count());
    let Some(f) = q.rl() else {
        if opts.mode == Mode::Exact {
            return Err(Error::Mode("WL supports bounded mode only".into()));
        }
        if !opts.answers.is_empty() {
            return Err(Error::Mode("--answers needs free node variables of an RL query".into()));
        }
        let free = free_vars(q);
        if !free.is_empty() {
            return Err(Error::Unbound(names(&free)));
        }
        let holds = wl_eval_bounded(g, q.wl().unwrap(), &q.free_pos, &Valuation::new(), default_bound, opts.parallel)?;
        let mut notes = Vec::new();
        if opts.bound.is_none() {
            notes.push("bound defaults to |V|".to_string());
        }
        return Ok(RunReport {
            result: Answer::Bool(holds),
            mode: ModeUsed::WlBounded(default_bound),
            completeness: Completeness::Unknown,
            witness: Vec::new(),
            notes,
            elapsed: None,
        });
    };

    let free = free_vars(q);
    for v in &free {
        match v {
            Var::Node(x) if opts.answers.contains(x) => {}
            _ => return Err(Error::Unbound(format!("{} (list free node variables with --answers)", names(&free)))),
        }
    }
    if let Some(x) = opts.answers.iter().find(|x| !free.contains(&Var::Node((*x).clone()))) {
        return Err(Error::Invalid(format!("`{x}` is not a free node variable of the query")));
    }

    let job = Job { g, f, k: q.registers, vars: &opts.answers, parallel: opts.parallel, budget };
    let positive = matches!(classify(q), Fragment::RlPlus | Fragment::NrlPlus);
    match opts.mode {
        Mode::Auto if positive => job.nrlplus(),
        Mode::Auto => match job.exact() {
            Err(Error::ResourceLimit(msg)) => {
                let mut r = job.brute(default_bound)?;
                r.notes.insert(0, format!("exact evaluation exceeded the budget ({msg}); fell back to brute"));
                Ok(r)
            }
            other => other,
        },
        Mode::Exact => job.exact(),
        Mode::Brute => {
            let mut r = job.brute(default_bound)?;
            if opts.bound.is_none() {
                r.notes.push("bound defaults to |V|".to_string());
            }
            Ok(r)
        }
    }
}

fn names(vars: &std::collections::BTreeSet<Var>) -> String {
    vars.iter()
        .map(|v| match v {
            Var::Node(x) | Var::Path(x) | Var::Reg(x) => x.clone(),
            Var::Pos(t, _) => t.clone(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

struct Job<'a> {
    g: &'a DataGraph,
    f: &'a Formula,
    k: usize,
    vars: &'a [String],
    parallel: bool,
    budget: usize,
}

impl Job<'_> {
    fn tuples(&self) -> Vec<Vec<NodeId>> {
        let mut out: Vec<Vec<NodeId>> = vec![Vec::new()];
        for _ in self.vars {
            out = out.into_iter().flat_map(|t| self.g.nodes().map(move |v| [t.clone(), vec![v]].concat())).collect();
        }
        out
    }

    fn alpha(&self, t: &[NodeId]) -> Valuation {
        self.vars.iter().zip(t).fold(Valuation::new(), |a, (x, &v)| a.node(x, v))
    }

    fn rows(&self, hits: Vec<Vec<NodeId>>) -> Answer {
        let mut rows: Vec<Vec<String>> =
            hits.iter().map(|t| t.iter().map(|&v| self.g.name(v).to_string()).collect()).collect();
        rows.sort();
        Answer::Tuples { vars: self.vars.to_vec(), rows }
    }

    fn report(&self, result: Answer, mode: ModeUsed, completeness: Completeness) -> RunReport {
        RunReport { result, mode, completeness, witness: Vec::new(), notes: Vec::new(), elapsed: None }
    }

    fn nrlplus(&self) -> Result<RunReport, Error> {
        if !self.vars.is_empty() {
            let hits = nrlplus_answers_with(self.g, self.f, self.k, &Valuation::new(), self.vars, self.parallel)?;
            let answer = self.rows(hits.into_iter().map(|h| h.0).collect());
            return Ok(self.report(answer, ModeUsed::NrlPlus, Completeness::Exact));
        }
        let r = nrlplus_eval(self.g, self.f, self.k, &Valuation::new())?;
        let mut rep = self.report(Answer::Bool(r.holds), ModeUsed::NrlPlus, Completeness::Exact);
        if let Some(w) = &r.witness {
            rep.witness = report::witness_lines(self.g, w);
        }
        Ok(rep)
    }

    fn exact(&self) -> Result<RunReport, Error> {
        let mut hits = Vec::new();
        let mut last_bound = 0;
        for t in self.tuples() {
            let alpha = self.alpha(&t);
            let m = build_representative_with(self.g, self.f, self.k, &alpha, self.budget, self.parallel)?;
            last_bound = m.completeness_bound();
            if eval_on(self.g, self.f, &m, &alpha, self.parallel)? {
                hits.push(t);
            }
        }
        if !self.vars.is_empty() {
            return Ok(self.report(self.rows(hits), ModeUsed::Exact, Completeness::Exact));
        }
        let holds = !hits.is_empty();
        let mut rep = self.report(Answer::Bool(holds), ModeUsed::Exact, Completeness::Exact);
        if holds {
            // bounded search at the completeness bound sees every class, so it finds a witness
            match rl_eval_brute_witness(self.g, self.f, self.k, &Valuation::new(), &self.brute_opts(last_bound)) {
                Ok(Some(w)) => {
                    rep.witness = report::witness_lines(self.g, &w);
                    rep.notes.push(format!("witness from bounded search at L={last_bound}"));
                }
                Ok(None) => {}
                Err(e) => rep.notes.push(format!("no witness: {e}")),
            }
        }
        Ok(rep)
    }

    fn brute_opts(&self, bound: usize) -> BruteOptions {
        BruteOptions { bound, parallel: self.parallel, budget: self.budget, ..BruteOptions::new(bound) }
    }

    fn brute(&self, bound: usize) -> Result<RunReport, Error> {
        let opts = self.brute_opts(bound);
        let completeness = match build_representative_with(self.g, self.f, self.k, &self.alpha(&self.tuples()[0]), self.budget, self.parallel) {
            Ok(m) if bound >= m.completeness_bound() => Completeness::Reached(m.completeness_bound()),
            Ok(m) => Completeness::Below(m.completeness_bound()),
            Err(_) => Completeness::Unknown,
        };
        if !self.vars.is_empty() {
            let mut hits = Vec::new();
            for t in self.tuples() {
                if rl_eval_brute(self.g, self.f, self.k, &self.alpha(&t), &opts)? {
                    hits.push(t);
                }
            }
            return Ok(self.report(self.rows(hits), ModeUsed::Brute(bound), completeness));
        }
        let w = rl_eval_brute_witness(self.g, self.f, self.k, &Valuation::new(), &opts)?;
        let mut rep = self.report(Answer::Bool(w.is_some()), ModeUsed::Brute(bound), completeness);
        if let Some(w) = &w {
            rep.witness = report::witness_lines(self.g, w);
        }
        Ok(rep)
    }
}

fn machine_input(a: &MachineArgs) -> anyhow::Result<(TuringMachine, Vec<String>)> {
    Ok((read_machine(&a.tm)?, parse_word(&a.w)))
}

fn cmd_gen(a: &GenArgs) -> anyhow::Result<Outcome> {
    let bundle: Option<GadgetBundle> = match &a.kind {
        GenKind::Counter { k, n, f0, delta } => {
            let delta = if delta.is_empty() { sigma(*k) } else { delta.clone() };
            let g = gadgets::gen_counter_graph(*k, *n, *f0, &delta)?;
            return emit(a.out.as_deref(), &format!("# counter k={k} n={n} f0={f0}\n"), &g, None);
        }
        GenKind::WlHardness(m) => {
            let (tm, w) = machine_input(m)?;
            Some(gadgets::gen_wl_hardness_k1(&tm, &w, m.f0)?)
        }
        GenKind::RlPspace(m) => {
            let (tm, w) = machine_input(m)?;
            Some(gadgets::pspace::gen_rl_pspace(&tm, &w, m.f0)?)
        }
        GenKind::RlExpspace(m) => {
            let (tm, w) = machine_input(m)?;
            Some(gadgets::expspace::gen_rl_expspace(&tm, &w, m.f0)?)
        }
        GenKind::Random { nodes, seed, edge_prob, labels, values, symmetric } => {
            let spec = families::RandomSpec {
                nodes: *nodes,
                edge_prob: *edge_prob,
                labels: labels.clone(),
                values: *values,
                symmetric: *symmetric,
                seed: *seed,
            };
            let g = families::random_graph(&spec);
            return emit(a.out.as_deref(), &format!("# random nodes={nodes} seed={seed}\n"), &g, None);
        }
        GenKind::Cycle { n } => return emit(a.out.as_deref(), "", &families::cycle_graph(*n), None),
        GenKind::Complete { n } => return emit(a.out.as_deref(), "", &families::complete_graph(*n), None),
    };
    let b = bundle.unwrap();
    emit(a.out.as_deref(), &b.header(), &b.graph, b.query().as_ref())
}

fn emit(out: Option<&FsPath>, header: &str, g: &DataGraph, q: Option<&Query>) -> anyhow::Result<Outcome> {
    let graph_text = format!("{header}{}", save_graph(g));
    let query_text = q.map(|q| format!("{header}{}", print_query(q)));
    let Some(prefix) = out else {
        let mut s = graph_text;
        if let Some(qt) = query_text {
            s.push_str("# --- query ---\n");
            s.push_str(&qt);
        }
        return Ok(Outcome { stdout: s, code: 0 });
    };
    let mut s = String::new();
    let graph_path = prefix.with_extension("graph");
    std::fs::write(&graph_path, graph_text).with_context(|| format!("cannot write {}", graph_path.display()))?;
    writeln!(s, "wrote {} ({} nodes, {} edges)", graph_path.display(), g.node_count(), g.edge_count())?;
    if let Some(qt) = query_text {
        let query_path = prefix.with_extension("query");
        std::fs::write(&query_path, qt).with_context(|| format!("cannot write {}", query_path.display()))?;
        writeln!(s, "wrote {}", query_path.display())?;
    }
    Ok(Outcome { stdout: s, code: 0 })
}

fn cmd_oracle(a: &OracleArgs) -> anyhow::Result<Outcome> {
    let g = read_graph(&a.graph)?;
    let verdict = |b: bool| Outcome { stdout: format!("{b}\n"), code: i32::from(!b) };
    Ok(match a.kind {
        OracleKind::Hamiltonian => verdict(oracles::hamiltonian_path_exists(&g)),
        OracleKind::Bipartite => verdict(oracles::is_bipartite(&g)),
        OracleKind::Eulerian => verdict(oracles::eulerian_trail_exists(&g)?),
        OracleKind::Parity => {
            let (connected, parity) = oracles::connected_parity(&g);
            let p = if parity == Parity::Odd { "odd" } else { "even" };
            Outcome { stdout: format!("connected\t{connected}\nparity\t{p}\n"), code: 0 }
        }
        OracleKind::QueryQ => {
            let mut rows: Vec<(String, String)> =
                oracles::query_q_oracle(&g).into_iter().map(|(x, y)| (g.name(x).to_string(), g.name(y).to_string())).collect();
            rows.sort();
            let mut s = String::from("x\ty\n");
            for (x, y) in rows {
                writeln!(s, "{x}\t{y}")?;
            }
            Outcome { stdout: s, code: 0 }
        }
    })
}

pub fn family_graph(family: Family, n: usize, seed: u64) -> DataGraph {
    match family {
        Family::Cycle => families::cycle_graph(n),
        Family::Complete => families::complete_graph(n),
        Family::Random => families::random_graph(&families::RandomSpec::new(n, seed)),
    }
}

fn cmd_bench(a: &BenchArgs) -> anyhow::Result<Outcome> {
    let q = read_query(&a.query)?;
    let opts = EvalOptions { mode: a.mode, bound: a.bound, answers: a.answers.clone(), parallel: !a.sequential };
    let mut s = String::from("n\tseconds\tmode\tresult\n");
    for &n in &a.sizes.0 {
        let g = family_graph(a.family, n, a.seed);
        let mut best = f64::INFINITY;
        let mut last = None;
        for _ in 0..a.repeat.max(1) {
            let start = Instant::now();
            let r = evaluate(&g, &q, &opts).with_context(|| format!("size {n}"))?;
            best = best.min(start.elapsed().as_secs_f64());
            last = Some(r);
        }
        let r = last.unwrap();
        let result = match &r.result {
            Answer::Bool(b) => b.to_string(),
            Answer::Tuples { rows, .. } => format!("{} answers", rows.len()),
        };
        writeln!(s, "{n}\t{best:.6}\t{}\t{result}", r.mode)?;
    }
    Ok(Outcome { stdout: s, code: 0 })
}
