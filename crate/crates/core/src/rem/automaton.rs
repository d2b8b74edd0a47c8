//! Compilation of (nested) REMs into register automata.
//!
//! Thompson construction with three kinds of silent guards, followed by
//! ε-elimination so that no two pure ε-moves are ever chained at run time.
//! Stores and tests stay as explicit silent steps: a store of `↓r̄.e` fires at
//! the node where the sub-parse of `e` starts and a test of `e[c]` at the node
//! where it ends.

use rustc_hash::FxHashSet;

use crate::graph::{DataGraph, SymId};
use crate::query::{Cond, Rem};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Guard {
    Test(Cond),
    Store(Vec<usize>),
    /// Index into [`Automaton::nests`].
    Nest(usize),
}

#[derive(Debug, Clone)]
pub struct Nfa {
    pub edges: Vec<Vec<(SymId, u32)>>,
    pub silent: Vec<Vec<(Guard, u32)>>,
    pub start: u32,
    pub accepting: Vec<bool>,
}

impl Nfa {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// States from which every continuation over `letters` symbols is
    /// accepted without touching the registers: accepting states that have,
    /// for every letter, an edge back into the set.
    pub fn universal(&self, letters: usize) -> Vec<bool> {
        let mut u = self.accepting.clone();
        loop {
            let mut changed = false;
            for q in 0..self.len() {
                if u[q] && !(0..letters).all(|a| self.edges[q].iter().any(|&(b, to)| b == a && u[to as usize])) {
                    u[q] = false;
                    changed = true;
                }
            }
            if !changed {
                return u;
            }
        }
    }
}

/// Compiled expression: the top-level automaton plus one automaton per `⟨·⟩`
/// subexpression. Nest automata are stored bottom-up: automaton `i` only
/// refers to nests with smaller indices.
#[derive(Debug, Clone)]
pub struct Automaton {
    pub main: Nfa,
    pub nests: Vec<Nfa>,
}

impl Automaton {
    pub fn state_count(&self) -> usize {
        self.main.len()
    }
}

enum Raw {
    Eps(u32),
    Edge(SymId, u32),
    Guard(Guard, u32),
}

struct Builder<'a> {
    g: &'a DataGraph,
    trans: Vec<Vec<Raw>>,
    nests: &'a mut Vec<Nfa>,
}

impl Builder<'_> {
    fn state(&mut self) -> u32 {
        self.trans.push(Vec::new());
        (self.trans.len() - 1) as u32
    }

    fn add(&mut self, from: u32, t: Raw) {
        self.trans[from as usize].push(t);
    }

    /// Returns (entry, exit) of the fragment for `e`.
    fn build(&mut self, e: &Rem) -> (u32, u32) {
        match e {
            Rem::Eps => {
                let s = self.state();
                (s, s)
            }
            Rem::Letter(a) => {
                let (s, f) = (self.state(), self.state());
                if let Some(a) = self.g.symbol(a) {
                    self.add(s, Raw::Edge(a, f));
                }
                (s, f)
            }
            Rem::Any => {
                let (s, f) = (self.state(), self.state());
                for a in 0..self.g.alphabet().len() {
                    self.add(s, Raw::Edge(a, f));
                }
                (s, f)
            }
            Rem::Union(a, b) => {
                let (s, f) = (self.state(), self.state());
                let (s1, f1) = self.build(a);
                let (s2, f2) = self.build(b);
                self.add(s, Raw::Eps(s1));
                self.add(s, Raw::Eps(s2));
                self.add(f1, Raw::Eps(f));
                self.add(f2, Raw::Eps(f));
                (s, f)
            }
            Rem::Concat(a, b) => {
                let (s1, f1) = self.build(a);
                let (s2, f2) = self.build(b);
                self.add(f1, Raw::Eps(s2));
                (s1, f2)
            }
            Rem::Plus(a) => {
                let (s, f) = (self.state(), self.state());
                let (s1, f1) = self.build(a);
                self.add(s, Raw::Eps(s1));
                self.add(f1, Raw::Eps(f));
                self.add(f1, Raw::Eps(s1));
                (s, f)
            }
            Rem::Star(a) => {
                let (s, f) = self.build(&Rem::Plus(a.clone()));
                self.add(s, Raw::Eps(f));
                (s, f)
            }
            Rem::Test(a, c) => {
                let (s1, f1) = self.build(a);
                let f = self.state();
                self.add(f1, Raw::Guard(Guard::Test(c.clone()), f));
                (s1, f)
            }
            Rem::Store(r, a) => {
                let s = self.state();
                let (s1, f1) = self.build(a);
                self.add(s, Raw::Guard(Guard::Store(r.clone()), s1));
                (s, f1)
            }
            Rem::Nest(a) => {
                let inner = compile_nfa(self.g, a, self.nests);
                self.nests.push(inner);
                let id = self.nests.len() - 1;
                let (s, f) = (self.state(), self.state());
                self.add(s, Raw::Guard(Guard::Nest(id), f));
                (s, f)
            }
        }
    }
}

fn compile_nfa(g: &DataGraph, e: &Rem, nests: &mut Vec<Nfa>) -> Nfa {
    let mut b = Builder { g, trans: Vec::new(), nests };
    let (start, accept) = b.build(e);
    eliminate_eps(&b.trans, start, accept)
}

fn eliminate_eps(trans: &[Vec<Raw>], start: u32, accept: u32) -> Nfa {
    let n = trans.len();
    let closure = |q: u32| -> Vec<u32> {
        let mut seen = vec![false; n];
        let mut stack = vec![q];
        let mut out = Vec::new();
        seen[q as usize] = true;
        while let Some(p) = stack.pop() {
            out.push(p);
            for t in &trans[p as usize] {
                if let Raw::Eps(r) = *t {
                    if !seen[r as usize] {
                        seen[r as usize] = true;
                        stack.push(r);
                    }
                }
            }
        }
        out.sort_unstable();
        out
    };

    // keep only states reachable from start through non-ε moves
    let mut index = vec![u32::MAX; n];
    let mut order = vec![start];
    index[start as usize] = 0;
    let mut edges = Vec::new();
    let mut silent = Vec::new();
    let mut accepting = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        i += 1;
        let mut e: Vec<(SymId, u32)> = Vec::new();
        let mut s: Vec<(Guard, u32)> = Vec::new();
        let mut acc = false;
        let mut seen_s = FxHashSet::default();
        for p in closure(q) {
            acc |= p == accept;
            for t in &trans[p as usize] {
                let (target, is_edge) = match t {
                    Raw::Eps(_) => continue,
                    Raw::Edge(_, r) => (*r, true),
                    Raw::Guard(_, r) => (*r, false),
                };
                if index[target as usize] == u32::MAX {
                    index[target as usize] = order.len() as u32;
                    order.push(target);
                }
                let to = index[target as usize];
                match t {
                    Raw::Edge(a, _) if is_edge => e.push((*a, to)),
                    Raw::Guard(gd, _) => {
                        if seen_s.insert((gd.clone(), to)) {
                            s.push((gd.clone(), to));
                        }
                    }
                    _ => {}
                }
            }
        }
        e.sort_unstable();
        e.dedup();
        edges.push(e);
        silent.push(s);
        accepting.push(acc);
    }
    Nfa { edges, silent, start: 0, accepting }
}

/// Compiles `e` against the alphabet of `g`. Letters absent from the graph
/// have no transitions; `any` stands for every letter of the graph.
pub fn compile(g: &DataGraph, e: &Rem) -> Automaton {
    let mut nests = Vec::new();
    let main = compile_nfa(g, e, &mut nests);
    Automaton { main, nests }
}
