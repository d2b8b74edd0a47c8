//! First-order translation of RL formulas over the vocabulary
//! ⟨Nodes, Paths, Registers, Endpoints, e₁..e_m, ⊥̄⟩.

use std::fmt;

use crate::query::{Formula, Rem, Sort};

/// FO variable names carry their RL sort as a prefix (`n:`, `p:`, `r:`), so
/// RL variables of different sorts never collide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoFormula {
    Nodes(String),
    Paths(String),
    Registers(String),
    Endpoints(String, String, String),
    /// e_i(π, λ, λ′), indexing [`FoTranslation::rems`].
    Rel(usize, String, String, String),
    Eq(String, String),
    /// Equality with the constant ⊥̄.
    EqBot(String),
    Not(Box<FoFormula>),
    Or(Box<FoFormula>, Box<FoFormula>),
    And(Box<FoFormula>, Box<FoFormula>),
    Exists(String, Box<FoFormula>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoTranslation {
    pub formula: FoFormula,
    /// Distinct REM atoms e₁..e_m in order of first occurrence.
    pub rems: Vec<Rem>,
}

pub fn fo_var(sort: Sort, v: &str) -> String {
    let p = match sort {
        Sort::Node => 'n',
        Sort::Path => 'p',
        Sort::Reg => 'r',
    };
    format!("{p}:{v}")
}

/// Distinct REMs of `f`, in order of first occurrence.
pub fn distinct_rems(f: &Formula) -> Vec<Rem> {
    let mut all = Vec::new();
    f.rems(&mut all);
    let mut out: Vec<Rem> = Vec::new();
    for e in all {
        if !out.contains(e) {
            out.push(e.clone());
        }
    }
    out
}

/// φ_τ: quantifiers are relativized to their sort, endpoint atoms become
/// `Endpoints`, REM atoms become relations and `ν = ⊥` compares with ⊥̄.
pub fn fo_translate(f: &Formula) -> FoTranslation {
    let rems = distinct_rems(f);
    let formula = go(f, &rems);
    FoTranslation { formula, rems }
}

fn go(f: &Formula, rems: &[Rem]) -> FoFormula {
    let b = |x: &Formula| Box::new(go(x, rems));
    match f {
        Formula::NodeEq(x, y) => FoFormula::Eq(fo_var(Sort::Node, x), fo_var(Sort::Node, y)),
        Formula::PathEq(x, y) => FoFormula::Eq(fo_var(Sort::Path, x), fo_var(Sort::Path, y)),
        Formula::RegEq(x, y) => FoFormula::Eq(fo_var(Sort::Reg, x), fo_var(Sort::Reg, y)),
        Formula::RegBot(x) => FoFormula::EqBot(fo_var(Sort::Reg, x)),
        Formula::Endpoints(x, p, y) => {
            FoFormula::Endpoints(fo_var(Sort::Node, x), fo_var(Sort::Path, p), fo_var(Sort::Node, y))
        }
        Formula::Atom(e, p, l, m) => FoFormula::Rel(
            rems.iter().position(|x| x == e).expect("REM collected"),
            fo_var(Sort::Path, p),
            fo_var(Sort::Reg, l),
            fo_var(Sort::Reg, m),
        ),
        Formula::Not(a) => FoFormula::Not(b(a)),
        Formula::Or(x, y) => FoFormula::Or(b(x), b(y)),
        Formula::And(x, y) => FoFormula::And(b(x), b(y)),
        Formula::Exists(s, v, a) => {
            let x = fo_var(*s, v);
            let guard = match s {
                Sort::Node => FoFormula::Nodes(x.clone()),
                Sort::Path => FoFormula::Paths(x.clone()),
                Sort::Reg => FoFormula::Registers(x.clone()),
            };
            FoFormula::Exists(x, Box::new(FoFormula::And(Box::new(guard), b(a))))
        }
    }
}

impl FoFormula {
    pub fn quantifier_rank(&self) -> usize {
        match self {
            FoFormula::Not(a) => a.quantifier_rank(),
            FoFormula::Or(a, b) | FoFormula::And(a, b) => a.quantifier_rank().max(b.quantifier_rank()),
            FoFormula::Exists(_, a) => 1 + a.quantifier_rank(),
            _ => 0,
        }
    }

    /// Number of quantifiers: the quantifier rank of a prenex form.
    pub fn quantifier_count(&self) -> usize {
        match self {
            FoFormula::Not(a) => a.quantifier_count(),
            FoFormula::Or(a, b) | FoFormula::And(a, b) => a.quantifier_count() + b.quantifier_count(),
            FoFormula::Exists(_, a) => 1 + a.quantifier_count(),
            _ => 0,
        }
    }
}

impl fmt::Display for FoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FoFormula::Nodes(x) => write!(f, "Nodes({x})"),
            FoFormula::Paths(x) => write!(f, "Paths({x})"),
            FoFormula::Registers(x) => write!(f, "Registers({x})"),
            FoFormula::Endpoints(x, p, y) => write!(f, "Endpoints({x}, {p}, {y})"),
            FoFormula::Rel(i, p, l, m) => write!(f, "e{}({p}, {l}, {m})", i + 1),
            FoFormula::Eq(x, y) => write!(f, "{x} = {y}"),
            FoFormula::EqBot(x) => write!(f, "{x} = bot"),
            FoFormula::Not(a) => write!(f, "not ({a})"),
            FoFormula::Or(a, b) => write!(f, "({a} or {b})"),
            FoFormula::And(a, b) => write!(f, "({a} and {b})"),
            FoFormula::Exists(x, a) => write!(f, "exists {x} . {a}"),
        }
    }
}
