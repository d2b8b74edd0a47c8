//! Reduction gadgets: k-counter graphs and the k=1 counter formulas, the
//! walk-logic hardness graph, the PSPACE and EXPSPACE register-logic gadgets,
//! a Turing-machine simulator to check them against, and plain graph families.

pub mod counter;
pub mod expspace;
pub mod families;
pub mod pspace;
pub mod tm;
pub mod wl_hardness;

pub use counter::{counter_path, gen_counter_graph, gen_counter_formulas_k1, CounterFormulas};
pub use expspace::gen_rl_expspace;
pub use families::{complete_graph, cycle_graph, random_graph, undirected_graphs, RandomSpec};
pub use pspace::gen_rl_pspace;
pub use tm::{parse_word, tm_simulate, Move, TmOutcome, TmRun, TuringMachine};
pub use wl_hardness::gen_wl_hardness_k1;

use crate::error::{Error, Result};
use crate::graph::{DataGraph, NodeId, Path};
use crate::query::{Body, Dialect, Formula, Query, Rem, WlFormula};

/// Generators refuse to build graphs above this many nodes.
pub const MAX_GADGET_NODES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GadgetFormula {
    Rl { formula: Formula, registers: usize },
    Wl(WlFormula),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetMeta {
    pub tag: &'static str,
    pub k: usize,
    pub n: usize,
    pub f0: usize,
    /// Path-length bound at which bounded evaluation is complete for this instance.
    pub bound: Option<usize>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct GadgetBundle {
    pub graph: DataGraph,
    pub formula: Option<GadgetFormula>,
    pub meta: GadgetMeta,
}

impl GadgetBundle {
    pub fn query(&self) -> Option<Query> {
        let (dialect, registers, body) = match self.formula.as_ref()? {
            GadgetFormula::Rl { formula, registers } => (Dialect::Rl, *registers, Body::Rl(formula.clone())),
            GadgetFormula::Wl(f) => (Dialect::Wl, 0, Body::Wl(f.clone())),
        };
        Some(Query { dialect, registers, free: Vec::new(), free_pos: Vec::new(), body })
    }

    /// Metadata as `#` comment lines, suitable for prefixing either file.
    pub fn header(&self) -> String {
        let m = &self.meta;
        let mut s = format!("# gadget {} k={} n={} f0={}\n", m.tag, m.k, m.n, m.f0);
        if let Some(l) = m.bound {
            s.push_str(&format!("# bound {l}\n"));
        }
        for note in &m.notes {
            s.push_str(&format!("# {note}\n"));
        }
        s
    }
}

/// Label of a cell letter: state (or `$`) and tape symbol.
pub fn pair_label(q: &str, a: &str) -> String {
    format!("{q}_{a}")
}

pub(crate) fn letters(xs: &[String]) -> Rem {
    Rem::alt(xs.iter().map(|x| Rem::letter(x)))
}

pub(crate) fn minus(xs: &[String], drop: &[String]) -> Vec<String> {
    xs.iter().filter(|x| !drop.contains(x)).cloned().collect()
}

pub(crate) fn check_size(nodes: usize) -> Result<()> {
    if nodes > MAX_GADGET_NODES {
        return Err(Error::ResourceLimit(format!("gadget would have {nodes} nodes (limit {MAX_GADGET_NODES})")));
    }
    Ok(())
}

/// Follows `labels` from `start`; every step must have exactly one matching edge.
pub fn follow(g: &DataGraph, start: NodeId, labels: &[&str]) -> Result<Path> {
    let mut p = Path::single(start);
    for (i, l) in labels.iter().enumerate() {
        let a = g.symbol(l).ok_or_else(|| Error::Invalid(format!("unknown label `{l}`")))?;
        let next: Vec<NodeId> = g.out(p.last()).iter().filter(|e| e.0 == a).map(|e| e.1).collect();
        match next.as_slice() {
            [w] => p.push(a, *w),
            [] => return Err(Error::NotAWalk(i)),
            _ => return Err(Error::Invalid(format!("step {i}: label `{l}` is ambiguous"))),
        }
    }
    Ok(p)
}
