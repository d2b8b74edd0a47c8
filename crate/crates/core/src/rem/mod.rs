//! Semantics of conditions and (nested) REMs: register algebra, compilation to
//! register automata, path parsing, pair evaluation, reachability, witnesses
//! and nesting sets.

pub mod automaton;
pub mod eval;
pub mod product;
pub mod regs;

use std::collections::BTreeSet;

pub use automaton::{compile, Automaton, Guard, Nfa};
pub use eval::Program;
pub use product::{Product, Profile};
pub use regs::{eval_condition, with_stores, Assignment, Code, RegSpace, BOTTOM};

use crate::error::Result;
use crate::graph::{DataGraph, NodeId, Path};
use crate::query::Rem;

/// { λ′ : (first(ρ), λ, ρ, last(ρ), λ′) ∈ ⟦e⟧_G }
pub fn path_parse(g: &DataGraph, e: &Rem, k: usize, rho: &Path, lambda: &[Option<u32>]) -> Result<BTreeSet<Assignment>> {
    let p = Program::new(g, e, k)?;
    let out = p.path_parse(rho, p.space.encode(lambda));
    Ok(out.into_iter().map(|c| p.space.decode(c)).collect())
}

/// e(G)
pub fn rem_pairs(g: &DataGraph, e: &Rem, k: usize) -> Result<BTreeSet<(NodeId, NodeId)>> {
    Ok(Program::new(g, e, k)?.pairs(crate::par::DEFAULT_PARALLEL))
}

pub fn reach(g: &DataGraph, e: &Rem, k: usize, u: NodeId, lambda: &[Option<u32>]) -> Result<BTreeSet<(NodeId, Assignment)>> {
    let p = Program::new(g, e, k)?;
    let out = p.reach(u, p.space.encode(lambda));
    Ok(out.into_iter().map(|(v, c)| (v, p.space.decode(c))).collect())
}

/// A path certifying (u, v) ∈ e(G), if any.
pub fn witness_path(g: &DataGraph, e: &Rem, k: usize, u: NodeId, v: NodeId) -> Result<Option<Path>> {
    let p = Program::new(g, e, k)?;
    Ok(p.witness(u, BOTTOM, |w, _| w == v).map(|(path, _)| path))
}

/// U(e′) for every nest subexpression, bottom-up (inner nests first).
pub fn nesting_sets(g: &DataGraph, e: &Rem, k: usize) -> Result<Vec<BTreeSet<(NodeId, Assignment)>>> {
    let p = Program::new(g, e, k)?;
    Ok((0..p.aut.nests.len())
        .map(|i| p.nesting_set(i).into_iter().map(|(v, c)| (v, p.space.decode(c))).collect())
        .collect())
}

/// The pumping bound |V|·|Q|·(|D|+1)^k on witness lengths.
pub fn config_bound(p: &Program) -> usize {
    p.g.node_count() * p.aut.state_count() * p.space.size() as usize
}
