//! Query language: syntax trees, concrete grammar, printer, fragment classifier
//! and the built-in query corpus.

pub mod ast;
pub mod corpus;
mod lexer;
pub mod parser;
pub mod printer;

use std::collections::BTreeSet;

pub use ast::*;
pub use parser::{parse_query, parse_rem, parse_rl, parse_wl, RemDialect};
pub use printer::{print_formula, print_query, print_rem, print_wl};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fragment {
    Wl,
    Rl,
    RlPlus,
    NrlPlus,
}

/// RL if negation occurs; otherwise NRL⁺ when nesting is used, else RL⁺.
pub fn classify(q: &Query) -> Fragment {
    match &q.body {
        Body::Wl(_) => Fragment::Wl,
        Body::Rl(f) => classify_rl(f),
    }
}

pub fn classify_rl(f: &Formula) -> Fragment {
    if f.has_negation() {
        Fragment::Rl
    } else if f.uses_nest() {
        Fragment::NrlPlus
    } else {
        Fragment::RlPlus
    }
}

/// A variable of any sort; WL positions remember their path variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Node(String),
    Path(String),
    Reg(String),
    Pos(String, String),
}

/// Free variables S_φ of an RL formula.
pub fn free_vars_rl(f: &Formula) -> BTreeSet<Var> {
    fn go(f: &Formula, bound: &mut Vec<(Sort, String)>, out: &mut BTreeSet<Var>) {
        let mut add = |s: Sort, v: &str, bound: &Vec<(Sort, String)>| {
            if !bound.iter().any(|(bs, bv)| *bs == s && bv == v) {
                out.insert(match s {
                    Sort::Node => Var::Node(v.into()),
                    Sort::Path => Var::Path(v.into()),
                    Sort::Reg => Var::Reg(v.into()),
                });
            }
        };
        match f {
            Formula::NodeEq(x, y) => {
                add(Sort::Node, x, bound);
                add(Sort::Node, y, bound);
            }
            Formula::PathEq(x, y) => {
                add(Sort::Path, x, bound);
                add(Sort::Path, y, bound);
            }
            Formula::RegEq(x, y) => {
                add(Sort::Reg, x, bound);
                add(Sort::Reg, y, bound);
            }
            Formula::RegBot(x) => add(Sort::Reg, x, bound),
            Formula::Endpoints(x, p, y) => {
                add(Sort::Node, x, bound);
                add(Sort::Path, p, bound);
                add(Sort::Node, y, bound);
            }
            Formula::Atom(_, p, l, m) => {
                add(Sort::Path, p, bound);
                add(Sort::Reg, l, bound);
                add(Sort::Reg, m, bound);
            }
            Formula::Not(a) => go(a, bound, out),
            Formula::Or(a, b) | Formula::And(a, b) => {
                go(a, bound, out);
                go(b, bound, out);
            }
            Formula::Exists(s, v, a) => {
                bound.push((*s, v.clone()));
                go(a, bound, out);
                bound.pop();
            }
        }
    }
    let mut out = BTreeSet::new();
    go(f, &mut Vec::new(), &mut out);
    out
}

/// Free variables S_φ of a WL formula. `declared` gives the path variable of each
/// position variable that is free in the whole formula.
pub fn free_vars_wl(f: &WlFormula, declared: &[(String, String)]) -> BTreeSet<Var> {
    fn go(f: &WlFormula, scope: &mut Vec<(String, String)>) -> BTreeSet<Var> {
        let pos = |t: &str, scope: &Vec<(String, String)>| {
            let p = scope.iter().rev().find(|(n, _)| n == t).map(|(_, p)| p.clone()).unwrap_or_default();
            [Var::Pos(t.to_string(), p.clone()), Var::Path(p)]
        };
        match f {
            WlFormula::Edge(_, a, b) | WlFormula::Less(a, b) | WlFormula::Sim(a, b) => {
                pos(a, scope).into_iter().chain(pos(b, scope)).collect()
            }
            WlFormula::Not(a) => go(a, scope),
            WlFormula::Or(a, b) | WlFormula::And(a, b) => {
                let mut s = go(a, scope);
                s.extend(go(b, scope));
                s
            }
            WlFormula::ExistsPos(t, p, a) => {
                scope.push((t.clone(), p.clone()));
                let mut s = go(a, scope);
                scope.pop();
                s.remove(&Var::Pos(t.clone(), p.clone()));
                if !s.iter().any(|v| matches!(v, Var::Pos(_, q) if q == p)) {
                    s.remove(&Var::Path(p.clone()));
                }
                s
            }
            WlFormula::ExistsPath(p, a) => {
                let mut s = go(a, scope);
                s.retain(|v| !matches!(v, Var::Path(q) | Var::Pos(_, q) if q == p));
                s
            }
        }
    }
    go(f, &mut declared.to_vec())
}

/// Free variables of a parsed query's formula.
pub fn free_vars(q: &Query) -> BTreeSet<Var> {
    match &q.body {
        Body::Rl(f) => free_vars_rl(f),
        Body::Wl(f) => free_vars_wl(f, &q.free_pos),
    }
}
