//! Slot-resolved form of RL formulas shared by the evaluators.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::query::{free_vars_rl, Formula, Rem, Sort, Var};

#[derive(Debug, Clone)]
pub(crate) enum Ir {
    NodeEq(usize, usize),
    PathEq(usize, usize),
    RegEq(usize, usize),
    RegBot(usize),
    Endpoints(usize, usize, usize),
    /// (REM index, path slot, start slot, end slot)
    Atom(usize, usize, usize, usize),
    Not(Box<Ir>),
    Or(Box<Ir>, Box<Ir>),
    And(Box<Ir>, Box<Ir>),
    Exists(Quant),
}

#[derive(Debug, Clone)]
pub(crate) struct Quant {
    pub sort: Sort,
    pub slot: usize,
    pub body: Box<Ir>,
    /// Dense index over all quantifiers of the formula.
    pub id: usize,
    /// Slots free in the quantified formula, for memo keys.
    pub free: Vec<usize>,
    /// Whether the bound variable occurs free in the body.
    pub occurs: bool,
}

#[derive(Debug, Clone)]
pub(crate) struct Compiled {
    pub ir: Ir,
    pub slot_sort: Vec<Sort>,
    pub slot_name: Vec<String>,
    /// Free variables and their slots.
    pub free: Vec<(String, Sort, usize)>,
    /// Distinct REMs, indexed by `Ir::Atom`.
    pub rems: Vec<Rem>,
    pub quantifiers: usize,
    /// Register slots bound by a pattern `∃ν (ν = ⊥ ∧ …)`: only ⊥ can make the body true.
    pub bot_only: Vec<bool>,
}

struct Ctx {
    scope: Vec<(String, Sort, usize)>,
    c: Compiled,
}

impl Ctx {
    fn slot(&self, v: &str, s: Sort) -> Result<usize> {
        self.scope
            .iter()
            .rev()
            .find(|(n, t, _)| n == v && *t == s)
            .map(|x| x.2)
            .ok_or_else(|| Error::UnassignedVariable(v.to_string()))
    }

    fn rem(&mut self, e: &Rem) -> usize {
        if let Some(i) = self.c.rems.iter().position(|x| x == e) {
            return i;
        }
        self.c.rems.push(e.clone());
        self.c.rems.len() - 1
    }

    fn new_slot(&mut self, v: &str, s: Sort) -> usize {
        self.c.slot_sort.push(s);
        self.c.slot_name.push(v.to_string());
        self.c.bot_only.push(false);
        self.c.slot_sort.len() - 1
    }

    /// Returns the IR and its free slots.
    fn go(&mut self, f: &Formula) -> Result<(Ir, BTreeSet<usize>)> {
        Ok(match f {
            Formula::NodeEq(x, y) => {
                let (a, b) = (self.slot(x, Sort::Node)?, self.slot(y, Sort::Node)?);
                (Ir::NodeEq(a, b), [a, b].into())
            }
            Formula::PathEq(x, y) => {
                let (a, b) = (self.slot(x, Sort::Path)?, self.slot(y, Sort::Path)?);
                (Ir::PathEq(a, b), [a, b].into())
            }
            Formula::RegEq(x, y) => {
                let (a, b) = (self.slot(x, Sort::Reg)?, self.slot(y, Sort::Reg)?);
                (Ir::RegEq(a, b), [a, b].into())
            }
            Formula::RegBot(x) => {
                let a = self.slot(x, Sort::Reg)?;
                (Ir::RegBot(a), [a].into())
            }
            Formula::Endpoints(x, p, y) => {
                let (a, b, c) = (self.slot(x, Sort::Node)?, self.slot(p, Sort::Path)?, self.slot(y, Sort::Node)?);
                (Ir::Endpoints(a, b, c), [a, b, c].into())
            }
            Formula::Atom(e, p, l, m) => {
                let i = self.rem(e);
                let (a, b, c) = (self.slot(p, Sort::Path)?, self.slot(l, Sort::Reg)?, self.slot(m, Sort::Reg)?);
                (Ir::Atom(i, a, b, c), [a, b, c].into())
            }
            Formula::Not(a) => {
                let (x, s) = self.go(a)?;
                (Ir::Not(Box::new(x)), s)
            }
            Formula::Or(a, b) | Formula::And(a, b) => {
                let (x, mut s) = self.go(a)?;
                let (y, t) = self.go(b)?;
                s.extend(t);
                let ir = if matches!(f, Formula::Or(..)) {
                    Ir::Or(Box::new(x), Box::new(y))
                } else {
                    Ir::And(Box::new(x), Box::new(y))
                };
                (ir, s)
            }
            Formula::Exists(sort, v, a) => {
                let slot = self.new_slot(v, *sort);
                let id = self.c.quantifiers;
                self.c.quantifiers += 1;
                self.scope.push((v.clone(), *sort, slot));
                let r = self.go(a);
                self.scope.pop();
                let (body, mut s) = r?;
                let occurs = s.remove(&slot);
                if *sort == Sort::Reg && conjuncts(&body).iter().any(|c| matches!(c, Ir::RegBot(x) if *x == slot)) {
                    self.c.bot_only[slot] = true;
                }
                let q = Quant { sort: *sort, slot, body: Box::new(body), id, free: s.iter().copied().collect(), occurs };
                (Ir::Exists(q), s)
            }
        })
    }
}

fn conjuncts(f: &Ir) -> Vec<&Ir> {
    match f {
        Ir::And(a, b) => {
            let mut v = conjuncts(a);
            v.extend(conjuncts(b));
            v
        }
        _ => vec![f],
    }
}

pub(crate) fn compile(f: &Formula) -> Result<Compiled> {
    let mut ctx = Ctx {
        scope: Vec::new(),
        c: Compiled {
            ir: Ir::RegBot(0),
            slot_sort: Vec::new(),
            slot_name: Vec::new(),
            free: Vec::new(),
            rems: Vec::new(),
            quantifiers: 0,
            bot_only: Vec::new(),
        },
    };
    for v in free_vars_rl(f) {
        let (name, sort) = match v {
            Var::Node(x) => (x, Sort::Node),
            Var::Path(x) => (x, Sort::Path),
            Var::Reg(x) => (x, Sort::Reg),
            Var::Pos(..) => unreachable!("RL formulas have no positions"),
        };
        let slot = ctx.new_slot(&name, sort);
        ctx.scope.push((name.clone(), sort, slot));
        ctx.c.free.push((name, sort, slot));
    }
    let (ir, _) = ctx.go(f)?;
    ctx.c.ir = ir;
    Ok(ctx.c)
}

/// Whether path slot `p` is used only as the path argument of REM and
/// endpoint atoms inside `f`.
pub(crate) fn path_only_in_atoms(f: &Ir, p: usize) -> bool {
    match f {
        Ir::PathEq(a, b) => *a != p && *b != p,
        Ir::NodeEq(..) | Ir::RegEq(..) | Ir::RegBot(_) | Ir::Endpoints(..) | Ir::Atom(..) => true,
        Ir::Not(a) => path_only_in_atoms(a, p),
        Ir::Or(a, b) | Ir::And(a, b) => path_only_in_atoms(a, p) && path_only_in_atoms(b, p),
        Ir::Exists(q) => path_only_in_atoms(&q.body, p),
    }
}

/// REM atoms on path slot `p`: (REM index, start slot).
pub(crate) fn atoms_on(f: &Ir, p: usize, out: &mut Vec<(usize, usize)>) {
    match f {
        Ir::Atom(i, q, l, _) if *q == p => out.push((*i, *l)),
        Ir::Not(a) => atoms_on(a, p, out),
        Ir::Or(a, b) | Ir::And(a, b) => {
            atoms_on(a, p, out);
            atoms_on(b, p, out);
        }
        Ir::Exists(q) => atoms_on(&q.body, p, out),
        _ => {}
    }
}

/// All quantifiers, in id order.
pub(crate) fn quantifiers(f: &Ir) -> Vec<&Quant> {
    fn go<'a>(f: &'a Ir, out: &mut Vec<&'a Quant>) {
        match f {
            Ir::Not(a) => go(a, out),
            Ir::Or(a, b) | Ir::And(a, b) => {
                go(a, out);
                go(b, out);
            }
            Ir::Exists(q) => {
                out.push(q);
                go(&q.body, out);
            }
            _ => {}
        }
    }
    let mut out = Vec::new();
    go(f, &mut out);
    out.sort_by_key(|q| q.id);
    out
}
