//! Evaluators for walk logic and register logic.
//!
//! * [`wl`]: WL with path quantifiers bounded by a length `L`.
//! * [`brute`]: RL with path quantifiers bounded by `L`.
//! * [`exact`]: RL over a finite representative structure (unbounded semantics).
//! * [`nrlplus`]: the positive nested fragment by automata intersection.

pub mod brute;
pub mod exact;
pub mod fo;
mod ir;
pub mod nrlplus;
pub mod wl;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{DataGraph, NodeId, Path};
use crate::rem::Assignment;

pub use brute::{rl_eval_brute, BruteOptions};
pub use exact::{build_representative, count_paths_threshold, path_profile, rl_eval_exact, RepresentativeStructure};
pub use fo::{fo_translate, FoFormula};
pub use nrlplus::{nrlplus_answers, nrlplus_eval, NrlResult};
pub use wl::wl_eval_bounded;

/// Values for free variables of every sort. Positions are 1-based.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Valuation {
    pub nodes: BTreeMap<String, NodeId>,
    pub paths: BTreeMap<String, Path>,
    pub regs: BTreeMap<String, Assignment>,
    pub pos: BTreeMap<String, usize>,
}

impl Valuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn node(mut self, x: &str, v: NodeId) -> Self {
        self.nodes.insert(x.into(), v);
        self
    }

    pub fn path(mut self, p: &str, rho: Path) -> Self {
        self.paths.insert(p.into(), rho);
        self
    }

    pub fn reg(mut self, l: &str, a: Assignment) -> Self {
        self.regs.insert(l.into(), a);
        self
    }

    pub fn pos(mut self, t: &str, i: usize) -> Self {
        self.pos.insert(t.into(), i);
        self
    }

    /// Union with `other`; entries of `other` win.
    pub fn merged(&self, other: &Valuation) -> Valuation {
        let mut out = self.clone();
        out.nodes.extend(other.nodes.clone());
        out.paths.extend(other.paths.clone());
        out.regs.extend(other.regs.clone());
        out.pos.extend(other.pos.clone());
        out
    }

    /// Longest assigned path, in edges.
    pub fn max_path_len(&self) -> usize {
        self.paths.values().map(Path::len).max().unwrap_or(0)
    }

    pub fn describe(&self, g: &DataGraph) -> String {
        let mut parts = Vec::new();
        for (x, v) in &self.nodes {
            parts.push(format!("{x}={}", g.name(*v)));
        }
        for (l, a) in &self.regs {
            let vals: Vec<String> = a.iter().map(|v| v.map_or("bot".to_string(), |d| g.value(d).to_string())).collect();
            parts.push(format!("{l}=({})", vals.join(",")));
        }
        for (p, rho) in &self.paths {
            parts.push(format!("{p}={}", g.format_path(rho)));
        }
        for (t, i) in &self.pos {
            parts.push(format!("{t}={i}"));
        }
        parts.join(" ")
    }
}

/// Resource budget from `DATAPATH_BUDGET`, or `default` when unset.
pub fn budget_from_env(default: usize) -> Result<usize> {
    match std::env::var("DATAPATH_BUDGET") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("DATAPATH_BUDGET must be a positive integer, got `{s}`"))),
        Err(_) => Ok(default),
    }
}

pub const DEFAULT_BUDGET: usize = 2_000_000;
