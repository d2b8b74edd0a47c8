//! Syntax trees for conditions, (nested) REMs, register logic and walk logic.

use std::collections::BTreeSet;

/// Boolean condition over registers; `Eq(i)` uses 1-based register indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Cond {
    Eq(usize),
    And(Box<Cond>, Box<Cond>),
    Not(Box<Cond>),
}

impl Cond {
    pub fn and(a: Cond, b: Cond) -> Cond {
        Cond::And(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Cond) -> Cond {
        Cond::Not(Box::new(a))
    }

    pub fn max_register(&self) -> usize {
        match self {
            Cond::Eq(i) => *i,
            Cond::And(a, b) => a.max_register().max(b.max_register()),
            Cond::Not(a) => a.max_register(),
        }
    }
}

/// Regular expression with memory. `Nest` only appears in NREMs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rem {
    Eps,
    Letter(String),
    /// Σ: any letter of the evaluated graph's alphabet.
    Any,
    Union(Box<Rem>, Box<Rem>),
    Concat(Box<Rem>, Box<Rem>),
    Plus(Box<Rem>),
    /// e* = ε ∪ e+
    Star(Box<Rem>),
    Test(Box<Rem>, Cond),
    /// ↓r̄.e with 1-based register indices, sorted and deduplicated.
    Store(Vec<usize>, Box<Rem>),
    Nest(Box<Rem>),
}

impl Rem {
    pub fn letter(s: &str) -> Rem {
        Rem::Letter(s.to_string())
    }

    pub fn union(a: Rem, b: Rem) -> Rem {
        Rem::Union(Box::new(a), Box::new(b))
    }

    pub fn concat(a: Rem, b: Rem) -> Rem {
        Rem::Concat(Box::new(a), Box::new(b))
    }

    pub fn plus(a: Rem) -> Rem {
        Rem::Plus(Box::new(a))
    }

    pub fn star(a: Rem) -> Rem {
        Rem::Star(Box::new(a))
    }

    pub fn test(a: Rem, c: Cond) -> Rem {
        Rem::Test(Box::new(a), c)
    }

    pub fn store(mut regs: Vec<usize>, a: Rem) -> Rem {
        regs.sort_unstable();
        regs.dedup();
        Rem::Store(regs, Box::new(a))
    }

    pub fn nest(a: Rem) -> Rem {
        Rem::Nest(Box::new(a))
    }

    /// Left-nested concatenation of a nonempty sequence.
    pub fn seq(parts: impl IntoIterator<Item = Rem>) -> Rem {
        let mut it = parts.into_iter();
        let first = it.next().expect("seq of nothing");
        it.fold(first, Rem::concat)
    }

    /// Left-nested union of a nonempty sequence.
    pub fn alt(parts: impl IntoIterator<Item = Rem>) -> Rem {
        let mut it = parts.into_iter();
        let first = it.next().expect("alt of nothing");
        it.fold(first, Rem::union)
    }

    pub fn max_register(&self) -> usize {
        match self {
            Rem::Eps | Rem::Letter(_) | Rem::Any => 0,
            Rem::Union(a, b) | Rem::Concat(a, b) => a.max_register().max(b.max_register()),
            Rem::Plus(a) | Rem::Star(a) | Rem::Nest(a) => a.max_register(),
            Rem::Test(a, c) => a.max_register().max(c.max_register()),
            Rem::Store(r, a) => a.max_register().max(r.iter().copied().max().unwrap_or(0)),
        }
    }

    pub fn nesting_depth(&self) -> usize {
        match self {
            Rem::Eps | Rem::Letter(_) | Rem::Any => 0,
            Rem::Union(a, b) | Rem::Concat(a, b) => a.nesting_depth().max(b.nesting_depth()),
            Rem::Plus(a) | Rem::Star(a) | Rem::Test(a, _) | Rem::Store(_, a) => a.nesting_depth(),
            Rem::Nest(a) => 1 + a.nesting_depth(),
        }
    }

    /// Number of `Nest` nodes in the tree.
    pub fn nest_count(&self) -> usize {
        match self {
            Rem::Eps | Rem::Letter(_) | Rem::Any => 0,
            Rem::Union(a, b) | Rem::Concat(a, b) => a.nest_count() + b.nest_count(),
            Rem::Plus(a) | Rem::Star(a) | Rem::Test(a, _) | Rem::Store(_, a) => a.nest_count(),
            Rem::Nest(a) => 1 + a.nest_count(),
        }
    }

    pub fn letters(&self, out: &mut BTreeSet<String>) {
        match self {
            Rem::Eps | Rem::Any => {}
            Rem::Letter(s) => {
                out.insert(s.clone());
            }
            Rem::Union(a, b) | Rem::Concat(a, b) => {
                a.letters(out);
                b.letters(out);
            }
            Rem::Plus(a) | Rem::Star(a) | Rem::Test(a, _) | Rem::Store(_, a) | Rem::Nest(a) => a.letters(out),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Node,
    Path,
    Reg,
}

impl Sort {
    pub fn keyword(self) -> &'static str {
        match self {
            Sort::Node => "node",
            Sort::Path => "path",
            Sort::Reg => "reg",
        }
    }
}

/// Register-logic formula (RL, RL⁺, NRL⁺).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    NodeEq(String, String),
    PathEq(String, String),
    RegEq(String, String),
    RegBot(String),
    Endpoints(String, String, String),
    /// e(π, ν₁, ν₂)
    Atom(Rem, String, String, String),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Exists(Sort, String, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn exists(s: Sort, v: &str, body: Formula) -> Formula {
        Formula::Exists(s, v.to_string(), Box::new(body))
    }

    pub fn forall(s: Sort, v: &str, body: Formula) -> Formula {
        Formula::not(Formula::exists(s, v, Formula::not(body)))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    pub fn atom(e: Rem, p: &str, l: &str, m: &str) -> Formula {
        Formula::Atom(e, p.into(), l.into(), m.into())
    }

    pub fn has_negation(&self) -> bool {
        match self {
            Formula::Not(_) => true,
            Formula::Or(a, b) | Formula::And(a, b) => a.has_negation() || b.has_negation(),
            Formula::Exists(_, _, a) => a.has_negation(),
            _ => false,
        }
    }

    /// Visits every REM atom.
    pub fn rems<'a>(&'a self, out: &mut Vec<&'a Rem>) {
        match self {
            Formula::Atom(e, ..) => out.push(e),
            Formula::Not(a) | Formula::Exists(_, _, a) => a.rems(out),
            Formula::Or(a, b) | Formula::And(a, b) => {
                a.rems(out);
                b.rems(out);
            }
            _ => {}
        }
    }

    pub fn uses_nest(&self) -> bool {
        let mut v = Vec::new();
        self.rems(&mut v);
        v.iter().any(|e| e.nest_count() > 0)
    }
}

/// Walk-logic formula. Position variables carry the path variable they range over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WlFormula {
    /// E_a(t₁, t₂)
    Edge(String, String, String),
    Less(String, String),
    Sim(String, String),
    Not(Box<WlFormula>),
    Or(Box<WlFormula>, Box<WlFormula>),
    And(Box<WlFormula>, Box<WlFormula>),
    /// ∃t^π
    ExistsPos(String, String, Box<WlFormula>),
    ExistsPath(String, Box<WlFormula>),
}

impl WlFormula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(a: WlFormula) -> WlFormula {
        WlFormula::Not(Box::new(a))
    }

    pub fn or(a: WlFormula, b: WlFormula) -> WlFormula {
        WlFormula::Or(Box::new(a), Box::new(b))
    }

    pub fn and(a: WlFormula, b: WlFormula) -> WlFormula {
        WlFormula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: WlFormula, b: WlFormula) -> WlFormula {
        WlFormula::or(WlFormula::not(a), b)
    }

    pub fn exists_pos(t: &str, p: &str, body: WlFormula) -> WlFormula {
        WlFormula::ExistsPos(t.into(), p.into(), Box::new(body))
    }

    pub fn forall_pos(t: &str, p: &str, body: WlFormula) -> WlFormula {
        WlFormula::not(WlFormula::exists_pos(t, p, WlFormula::not(body)))
    }

    pub fn exists_path(p: &str, body: WlFormula) -> WlFormula {
        WlFormula::ExistsPath(p.into(), Box::new(body))
    }

    pub fn forall_path(p: &str, body: WlFormula) -> WlFormula {
        WlFormula::not(WlFormula::exists_path(p, WlFormula::not(body)))
    }

    pub fn edge(a: &str, t1: &str, t2: &str) -> WlFormula {
        WlFormula::Edge(a.into(), t1.into(), t2.into())
    }

    pub fn less(t1: &str, t2: &str) -> WlFormula {
        WlFormula::Less(t1.into(), t2.into())
    }

    pub fn sim(t1: &str, t2: &str) -> WlFormula {
        WlFormula::Sim(t1.into(), t2.into())
    }

    /// t₁ = t₂ for positions of the same path: neither precedes the other.
    pub fn pos_eq(t1: &str, t2: &str) -> WlFormula {
        WlFormula::not(WlFormula::or(WlFormula::less(t1, t2), WlFormula::less(t2, t1)))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Rl,
    Wl,
    NrlPlus,
}

impl Dialect {
    pub fn keyword(self) -> &'static str {
        match self {
            Dialect::Rl => "RL",
            Dialect::Wl => "WL",
            Dialect::NrlPlus => "NRLPLUS",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Rl(Formula),
    Wl(WlFormula),
}

/// A parsed query file: dialect, register count, declared free variables and formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub dialect: Dialect,
    pub registers: usize,
    /// Free RL variables with their sorts, in declaration/first-use order.
    pub free: Vec<(String, Sort)>,
    /// Free WL position variables with their path variables.
    pub free_pos: Vec<(String, String)>,
    pub body: Body,
}

impl Query {
    pub fn rl(&self) -> Option<&Formula> {
        match &self.body {
            Body::Rl(f) => Some(f),
            Body::Wl(_) => None,
        }
    }

    pub fn wl(&self) -> Option<&WlFormula> {
        match &self.body {
            Body::Wl(f) => Some(f),
            Body::Rl(_) => None,
        }
    }
}
