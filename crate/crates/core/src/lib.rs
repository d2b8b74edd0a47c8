//! Query evaluation over data graphs: regular expressions with memory, register
//! logic and its positive nested fragment, walk logic, reduction gadgets and
//! brute-force oracles.

pub mod error;
pub mod gadgets;
pub mod graph;
pub mod logic;
pub mod oracles;
pub mod query;

pub use error::{Error, Result};
pub use graph::{DataGraph, DataValue, GraphBuilder, NodeId, Path, SymId, ValueId};
pub mod par;
pub mod rem;
