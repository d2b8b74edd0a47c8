//! Evaluation of positive (nested) RL formulas.
//!
//! The formula is put in prenex form over renamed-apart variables and its
//! matrix in disjunctive normal form. For one disjunct, equalities merge
//! variables into classes, and every class of path variables becomes a
//! group: a set of endpoint constraints and REM atoms that one path must
//! satisfy at once. Node and register classes are guessed by backtracking;
//! a group is decided by a search over the synchronous product of the graph
//! with the automata of its atoms, cached per (group, start node, start
//! registers). For a fixed formula every step is polynomial in the graph.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use super::brute::{rl_eval_brute, BruteOptions};
use super::fo::fo_var;
use super::{budget_from_env, Valuation, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{validate_path, DataGraph, NodeId, Path, SymId};
use crate::par;
use crate::query::{free_vars_rl, Formula, Rem, Sort, Var};
use crate::rem::{Code, Program, RegSpace, BOTTOM};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Lit {
    NodeEq(String, String),
    PathEq(String, String),
    RegEq(String, String),
    RegBot(String),
    Endpoints(String, String, String),
    Atom(usize, String, String, String),
}

struct Flattener {
    used: BTreeSet<String>,
    scope: Vec<(String, String)>,
    rems: Vec<Rem>,
}

impl Flattener {
    fn name(&self, s: Sort, v: &str) -> String {
        let key = fo_var(s, v);
        self.scope.iter().rev().find(|(k, _)| *k == key).map(|x| x.1.clone()).unwrap_or_else(|| v.to_string())
    }

    fn rem(&mut self, e: &Rem) -> usize {
        if let Some(i) = self.rems.iter().position(|x| x == e) {
            return i;
        }
        self.rems.push(e.clone());
        self.rems.len() - 1
    }

    /// Disjuncts of the matrix, each with a flag telling whether a node or
    /// path quantifier encloses it.
    fn dnf(&mut self, f: &Formula) -> Result<Vec<(Vec<Lit>, bool)>> {
        use Sort::*;
        let one = |l: Lit| vec![(vec![l], false)];
        Ok(match f {
            Formula::NodeEq(x, y) => one(Lit::NodeEq(self.name(Node, x), self.name(Node, y))),
            Formula::PathEq(x, y) => one(Lit::PathEq(self.name(Path, x), self.name(Path, y))),
            Formula::RegEq(x, y) => one(Lit::RegEq(self.name(Reg, x), self.name(Reg, y))),
            Formula::RegBot(x) => one(Lit::RegBot(self.name(Reg, x))),
            Formula::Endpoints(x, p, y) => one(Lit::Endpoints(self.name(Node, x), self.name(Path, p), self.name(Node, y))),
            Formula::Atom(e, p, l, m) => {
                let i = self.rem(e);
                one(Lit::Atom(i, self.name(Path, p), self.name(Reg, l), self.name(Reg, m)))
            }
            Formula::Not(_) => {
                return Err(Error::FragmentViolation("negation is outside the positive fragment".into()));
            }
            Formula::Or(a, b) => {
                let mut x = self.dnf(a)?;
                x.extend(self.dnf(b)?);
                x
            }
            Formula::And(a, b) => {
                let x = self.dnf(a)?;
                let y = self.dnf(b)?;
                let mut out = Vec::with_capacity(x.len() * y.len());
                for (l1, n1) in &x {
                    for (l2, n2) in &y {
                        let mut l = l1.clone();
                        l.extend(l2.iter().cloned());
                        out.push((l, *n1 || *n2));
                    }
                }
                out
            }
            Formula::Exists(s, v, a) => {
                let mut fresh = v.clone();
                let mut i = 0;
                while self.used.contains(&fo_var(*s, &fresh)) {
                    i += 1;
                    fresh = format!("{v}_{i}");
                }
                self.used.insert(fo_var(*s, &fresh));
                self.scope.push((fo_var(*s, v), fresh));
                let r = self.dnf(a);
                self.scope.pop();
                let mut out = r?;
                if *s != Reg {
                    for d in &mut out {
                        d.1 = true;
                    }
                }
                out
            }
        })
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Variables of one sort merged by equality literals.
#[derive(Default)]
struct Classes {
    ids: BTreeMap<String, usize>,
    parent: Vec<usize>,
}

impl Classes {
    fn id(&mut self, v: &str) -> usize {
        if let Some(&i) = self.ids.get(v) {
            return i;
        }
        let i = self.parent.len();
        self.parent.push(i);
        self.ids.insert(v.to_string(), i);
        i
    }

    fn union(&mut self, a: &str, b: &str) {
        let (x, y) = (self.id(a), self.id(b));
        let (x, y) = (find(&mut self.parent, x), find(&mut self.parent, y));
        self.parent[x] = y;
    }

    /// Dense class index of every variable, and the number of classes.
    fn finish(mut self) -> (BTreeMap<String, usize>, usize) {
        let mut dense: FxHashMap<usize, usize> = FxHashMap::default();
        let mut out = BTreeMap::new();
        for (v, i) in self.ids.clone() {
            let r = find(&mut self.parent, i);
            let n = dense.len();
            let d = *dense.entry(r).or_insert(n);
            out.insert(v, d);
        }
        (out, dense.len())
    }
}

struct Group {
    /// Node classes that must equal the first node of the path.
    starts: Vec<usize>,
    ends: Vec<usize>,
    /// (REM index, start register class, end register class)
    atoms: Vec<(usize, usize, usize)>,
    /// The path assigned by α to a variable of the group.
    fixed: Option<Path>,
    vars: Vec<String>,
}

struct Disjunct {
    lits: Vec<Lit>,
    needs_node: bool,
    nodes: BTreeMap<String, usize>,
    regs: BTreeMap<String, usize>,
    node_init: Vec<Option<NodeId>>,
    reg_init: Vec<Option<Code>>,
    groups: Vec<Group>,
    consistent: bool,
}

type Reached = Arc<Vec<(NodeId, Vec<Code>)>>;

struct Solver<'g> {
    g: &'g DataGraph,
    space: RegSpace,
    progs: Vec<Program<'g>>,
    rems: Vec<Rem>,
    disjuncts: Vec<Disjunct>,
    cache: Mutex<FxHashMap<(usize, usize, NodeId, Vec<Code>), Reached>>,
    budget: usize,
}

/// The group choices of a solution: (start node, start tuples, end node, end tuples).
type Choice = (NodeId, Vec<Code>, NodeId, Vec<Code>);

struct Partial {
    nodes: Vec<Option<NodeId>>,
    regs: Vec<Option<Code>>,
    choices: Vec<Choice>,
}

fn bind<T: Copy + PartialEq>(slot: &mut Option<T>, v: T, trail: &mut Vec<usize>, idx: usize) -> bool {
    match *slot {
        Some(w) => w == v,
        None => {
            *slot = Some(v);
            trail.push(idx);
            true
        }
    }
}

impl<'g> Solver<'g> {
    fn new(g: &'g DataGraph, f: &Formula, k: usize, alpha: &Valuation, answers: &[String]) -> Result<Self> {
        let mut fl = Flattener { used: BTreeSet::new(), scope: Vec::new(), rems: Vec::new() };
        let free = free_vars_rl(f);
        for v in &free {
            let (s, x) = match v {
                Var::Node(x) => (Sort::Node, x),
                Var::Path(x) => (Sort::Path, x),
                Var::Reg(x) => (Sort::Reg, x),
                Var::Pos(..) => unreachable!("RL formulas have no positions"),
            };
            fl.used.insert(fo_var(s, x));
            let assigned = match s {
                Sort::Node => alpha.nodes.contains_key(x) || answers.contains(x),
                Sort::Path => alpha.paths.contains_key(x),
                Sort::Reg => alpha.regs.contains_key(x),
            };
            if !assigned {
                return Err(Error::UnassignedVariable(x.clone()));
            }
        }
        let flat = fl.dnf(f)?;
        let space = RegSpace::new(k, g.value_count())?;
        let progs = fl
            .rems
            .iter()
            .map(|e| {
                if e.max_register() > k {
                    return Err(Error::RegisterOutOfRange(e.max_register(), k));
                }
                Program::with_space(g, e, space)
            })
            .collect::<Result<Vec<_>>>()?;
        for a in alpha.regs.values() {
            if a.len() != k || a.iter().flatten().any(|&d| d as usize >= g.value_count()) {
                return Err(Error::Invalid(format!("register tuple is not over D ∪ {{⊥}}^{k}")));
            }
        }
        if alpha.nodes.values().any(|&v| v >= g.node_count()) {
            return Err(Error::Invalid("assigned node out of range".into()));
        }
        let mut disjuncts = Vec::new();
        for (lits, needs_node) in flat {
            disjuncts.push(Self::disjunct(g, &space, lits, needs_node, alpha)?);
        }
        Ok(Solver {
            g,
            space,
            progs,
            rems: fl.rems,
            disjuncts,
            cache: Mutex::new(FxHashMap::default()),
            budget: budget_from_env(DEFAULT_BUDGET)?,
        })
    }

    fn disjunct(g: &DataGraph, space: &RegSpace, lits: Vec<Lit>, needs_node: bool, alpha: &Valuation) -> Result<Disjunct> {
        let (mut n, mut r, mut p) = (Classes::default(), Classes::default(), Classes::default());
        for l in &lits {
            match l {
                Lit::NodeEq(x, y) => n.union(x, y),
                Lit::PathEq(x, y) => p.union(x, y),
                Lit::RegEq(x, y) => r.union(x, y),
                Lit::RegBot(x) => {
                    r.id(x);
                }
                Lit::Endpoints(x, q, y) => {
                    n.id(x);
                    p.id(q);
                    n.id(y);
                }
                Lit::Atom(_, q, a, b) => {
                    p.id(q);
                    r.id(a);
                    r.id(b);
                }
            }
        }
        let (nodes, nn) = n.finish();
        let (regs, nr) = r.finish();
        let (paths, np) = p.finish();
        let mut d = Disjunct {
            lits: Vec::new(),
            needs_node,
            node_init: vec![None; nn],
            reg_init: vec![None; nr],
            groups: (0..np)
                .map(|_| Group { starts: Vec::new(), ends: Vec::new(), atoms: Vec::new(), fixed: None, vars: Vec::new() })
                .collect(),
            nodes,
            regs,
            consistent: true,
        };
        let mut trail = Vec::new();
        for (x, &c) in &d.nodes {
            if let Some(&v) = alpha.nodes.get(x) {
                d.consistent &= bind(&mut d.node_init[c], v, &mut trail, c);
            }
        }
        for (x, &c) in &d.regs {
            if let Some(a) = alpha.regs.get(x) {
                d.consistent &= bind(&mut d.reg_init[c], space.encode(a), &mut trail, c);
            }
        }
        for (x, &c) in &paths {
            d.groups[c].vars.push(x.clone());
            if let Some(rho) = alpha.paths.get(x) {
                let rho = validate_path(g, &rho.nodes, &rho.labels)?;
                match &d.groups[c].fixed {
                    Some(other) => d.consistent &= *other == rho,
                    None => d.groups[c].fixed = Some(rho),
                }
            }
        }
        for l in &lits {
            match l {
                Lit::RegBot(x) => {
                    let c = d.regs[x];
                    d.consistent &= bind(&mut d.reg_init[c], BOTTOM, &mut trail, c);
                }
                Lit::Endpoints(x, q, y) => {
                    let grp = &mut d.groups[paths[q]];
                    grp.starts.push(d.nodes[x]);
                    grp.ends.push(d.nodes[y]);
                }
                Lit::Atom(i, q, a, b) => {
                    let (a, b) = (d.regs[a], d.regs[b]);
                    d.groups[paths[q]].atoms.push((*i, a, b));
                }
                _ => {}
            }
        }
        for grp in &mut d.groups {
            grp.starts.sort_unstable();
            grp.starts.dedup();
            grp.ends.sort_unstable();
            grp.ends.dedup();
        }
        d.lits = lits;
        Ok(d)
    }

    /// End configurations (v, λ̄′) of paths from `s` accepted by every atom of
    /// the group when started with λ̄.
    fn reach(&self, di: usize, gi: usize, s: NodeId, lambdas: &[Code]) -> Result<Reached> {
        let key = (di, gi, s, lambdas.to_vec());
        if let Some(r) = self.cache.lock().unwrap().get(&key) {
            return Ok(r.clone());
        }
        let grp = &self.disjuncts[di].groups[gi];
        let out = match &grp.fixed {
            Some(rho) => {
                let mut acc: Vec<Vec<Code>> = vec![Vec::new()];
                if rho.first() == s {
                    for (j, &(r, _, _)) in grp.atoms.iter().enumerate() {
                        let outs = self.progs[r].path_parse(rho, lambdas[j]);
                        acc = acc
                            .into_iter()
                            .flat_map(|pre| {
                                outs.iter().map(move |&m| {
                                    let mut x = pre.clone();
                                    x.push(m);
                                    x
                                })
                            })
                            .collect();
                    }
                    acc.into_iter().map(|m| (rho.last(), m)).collect()
                } else {
                    Vec::new()
                }
            }
            None => {
                let (states, _) = self.search(grp, s, lambdas, |_, _| false)?;
                let mut out: Vec<(NodeId, Vec<Code>)> = states
                    .into_iter()
                    .filter(|st| self.accepting(grp, st))
                    .map(|st| (st.0, st.2))
                    .collect();
                out.sort();
                out.dedup();
                out
            }
        };
        let out = Arc::new(out);
        self.cache.lock().unwrap().insert(key, out.clone());
        Ok(out)
    }

    fn accepting(&self, grp: &Group, st: &State) -> bool {
        grp.atoms.iter().enumerate().all(|(j, &(r, _, _))| self.progs[r].nfa().accepting[st.1[j] as usize])
    }

    /// Breadth-first search over (node, states, registers) from `s`. Stops
    /// early when `goal` holds for an accepting state; returns the visited
    /// states with their parents (previous state, edge label).
    #[allow(clippy::type_complexity)]
    fn search(
        &self,
        grp: &Group,
        s: NodeId,
        lambdas: &[Code],
        goal: impl Fn(NodeId, &[Code]) -> bool,
    ) -> Result<(Vec<State>, Vec<Option<(usize, Option<SymId>)>>)> {
        let start: State = (s, grp.atoms.iter().map(|&(r, _, _)| self.progs[r].nfa().start).collect(), lambdas.to_vec());
        let mut index: FxHashMap<State, usize> = FxHashMap::default();
        let mut states = vec![start.clone()];
        let mut parent = vec![None];
        index.insert(start, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let (v, qs, cs) = states[i].clone();
            if self.accepting(grp, &states[i]) && goal(v, &cs) {
                break;
            }
            let mut next: Vec<(State, Option<SymId>)> = Vec::new();
            for (j, &(r, _, _)) in grp.atoms.iter().enumerate() {
                let p = &self.progs[r];
                p.silent(p.nfa(), v, qs[j], cs[j], |q2, c2| {
                    let (mut qs2, mut cs2) = (qs.clone(), cs.clone());
                    qs2[j] = q2;
                    cs2[j] = c2;
                    next.push(((v, qs2, cs2), None));
                });
            }
            for &(a, w) in self.g.out(v) {
                let mut combos: Vec<Vec<u32>> = vec![Vec::new()];
                for (j, &(r, _, _)) in grp.atoms.iter().enumerate() {
                    let tos: Vec<u32> = self.progs[r].nfa().edges[qs[j] as usize]
                        .iter()
                        .filter(|(b, _)| *b == a)
                        .map(|x| x.1)
                        .collect();
                    combos = combos
                        .into_iter()
                        .flat_map(|pre| {
                            tos.iter().map(move |&t| {
                                let mut x = pre.clone();
                                x.push(t);
                                x
                            })
                        })
                        .collect();
                }
                for qs2 in combos {
                    next.push(((w, qs2, cs.clone()), Some(a)));
                }
            }
            for (st, label) in next {
                if !index.contains_key(&st) {
                    index.insert(st.clone(), states.len());
                    states.push(st);
                    parent.push(Some((i, label)));
                    queue.push_back(states.len() - 1);
                    if states.len() > self.budget {
                        return Err(Error::ResourceLimit(format!(
                            "intersection product exceeds {} states (raise DATAPATH_BUDGET)",
                            self.budget
                        )));
                    }
                }
            }
        }
        Ok((states, parent))
    }

    /// A path realizing the group choice `c`.
    fn witness_path(&self, grp: &Group, c: &Choice) -> Result<Path> {
        if let Some(rho) = &grp.fixed {
            return Ok(rho.clone());
        }
        let (states, parent) = self.search(grp, c.0, &c.1, |v, cs| v == c.2 && cs == c.3.as_slice())?;
        let hit = states
            .iter()
            .position(|st| st.0 == c.2 && st.2 == c.3 && self.accepting(grp, st))
            .expect("chosen end configuration is reachable");
        let mut nodes = vec![states[hit].0];
        let mut labels = Vec::new();
        let mut cur = hit;
        while let Some((prev, label)) = parent[cur] {
            if let Some(a) = label {
                labels.push(a);
                nodes.push(states[prev].0);
            }
            cur = prev;
        }
        nodes.reverse();
        labels.reverse();
        Ok(Path { nodes, labels })
    }

    fn solve(&self, di: usize, answers: &[(String, NodeId)]) -> Result<Option<Partial>> {
        let d = &self.disjuncts[di];
        if !d.consistent || (d.needs_node && self.g.node_count() == 0) {
            return Ok(None);
        }
        let mut st = Partial { nodes: d.node_init.clone(), regs: d.reg_init.clone(), choices: Vec::new() };
        let mut trail = Vec::new();
        for (x, v) in answers {
            if let Some(&c) = d.nodes.get(x) {
                if !bind(&mut st.nodes[c], *v, &mut trail, c) {
                    return Ok(None);
                }
            }
        }
        if self.groups(di, 0, &mut st)? {
            // classes no group constrains take any value
            if st.nodes.iter().any(Option::is_none) && self.g.node_count() == 0 {
                return Ok(None);
            }
            for n in &mut st.nodes {
                n.get_or_insert(0);
            }
            for r in &mut st.regs {
                r.get_or_insert(BOTTOM);
            }
            return Ok(Some(st));
        }
        Ok(None)
    }

    fn groups(&self, di: usize, gi: usize, st: &mut Partial) -> Result<bool> {
        let d = &self.disjuncts[di];
        if gi == d.groups.len() {
            return Ok(true);
        }
        let grp = &d.groups[gi];
        let bound_start = grp.starts.iter().find_map(|&c| st.nodes[c]);
        let starts: Vec<NodeId> = match (&grp.fixed, bound_start) {
            (Some(rho), Some(s)) if s != rho.first() => Vec::new(),
            (Some(rho), _) => vec![rho.first()],
            (None, Some(s)) => vec![s],
            (None, None) => self.g.nodes().collect(),
        };
        for s in starts {
            let mut trail = Vec::new();
            if grp.starts.iter().all(|&c| bind(&mut st.nodes[c], s, &mut trail, c)) && self.inputs(di, gi, s, 0, st)? {
                return Ok(true);
            }
            for c in trail {
                st.nodes[c] = None;
            }
        }
        Ok(false)
    }

    /// Chooses the start tuple of atom `j` onwards, then the end configuration.
    fn inputs(&self, di: usize, gi: usize, s: NodeId, j: usize, st: &mut Partial) -> Result<bool> {
        let grp = &self.disjuncts[di].groups[gi];
        if j < grp.atoms.len() {
            let c = grp.atoms[j].1;
            if st.regs[c].is_some() {
                return self.inputs(di, gi, s, j + 1, st);
            }
            for l in self.space.all() {
                st.regs[c] = Some(l);
                if self.inputs(di, gi, s, j + 1, st)? {
                    return Ok(true);
                }
            }
            st.regs[c] = None;
            return Ok(false);
        }
        let lambdas: Vec<Code> = grp.atoms.iter().map(|a| st.regs[a.1].unwrap()).collect();
        let reached = self.reach(di, gi, s, &lambdas)?;
        for (v, outs) in reached.iter() {
            let (mut tn, mut tr) = (Vec::new(), Vec::new());
            let ok = grp.ends.iter().all(|&c| bind(&mut st.nodes[c], *v, &mut tn, c))
                && grp.atoms.iter().zip(outs).all(|(a, &m)| bind(&mut st.regs[a.2], m, &mut tr, a.2));
            if ok {
                st.choices.push((s, lambdas.clone(), *v, outs.clone()));
                if self.groups(di, gi + 1, st)? {
                    return Ok(true);
                }
                st.choices.pop();
            }
            for c in tn {
                st.nodes[c] = None;
            }
            for c in tr {
                st.regs[c] = None;
            }
        }
        Ok(false)
    }

    fn result(&self, answers: &[(String, NodeId)]) -> Result<NrlResult> {
        for di in 0..self.disjuncts.len() {
            if let Some(st) = self.solve(di, answers)? {
                let d = &self.disjuncts[di];
                let mut w = Valuation::new();
                for (x, &c) in &d.nodes {
                    w.nodes.insert(x.clone(), st.nodes[c].unwrap());
                }
                for (x, &c) in &d.regs {
                    w.regs.insert(x.clone(), self.space.decode(st.regs[c].unwrap()));
                }
                for (grp, c) in d.groups.iter().zip(&st.choices) {
                    let rho = self.witness_path(grp, c)?;
                    for x in &grp.vars {
                        w.paths.insert(x.clone(), rho.clone());
                    }
                }
                for (x, v) in answers {
                    w.nodes.insert(x.clone(), *v);
                }
                let matrix = d.lits.iter().map(|l| lit_formula(l, &self.rems)).reduce(Formula::and);
                return Ok(NrlResult { holds: true, witness: Some(w), matrix });
            }
        }
        Ok(NrlResult { holds: false, witness: None, matrix: None })
    }
}

type State = (NodeId, Vec<u32>, Vec<Code>);

fn lit_formula(l: &Lit, rems: &[Rem]) -> Formula {
    match l {
        Lit::NodeEq(x, y) => Formula::NodeEq(x.clone(), y.clone()),
        Lit::PathEq(x, y) => Formula::PathEq(x.clone(), y.clone()),
        Lit::RegEq(x, y) => Formula::RegEq(x.clone(), y.clone()),
        Lit::RegBot(x) => Formula::RegBot(x.clone()),
        Lit::Endpoints(x, p, y) => Formula::Endpoints(x.clone(), p.clone(), y.clone()),
        Lit::Atom(i, p, a, b) => Formula::atom(rems[*i].clone(), p, a, b),
    }
}

/// Outcome of an NRL⁺ evaluation. When the formula holds, `witness` fixes
/// every variable of one satisfied disjunct `matrix` of the prenex DNF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NrlResult {
    pub holds: bool,
    pub witness: Option<Valuation>,
    pub matrix: Option<Formula>,
}

impl NrlResult {
    /// Re-checks the witness: paths are walks, registers range over D ∪ {⊥},
    /// and bounded RL evaluation of the disjunct under α ∪ witness holds.
    pub fn verify(&self, g: &DataGraph, k: usize, alpha: &Valuation) -> Result<bool> {
        let (Some(w), Some(m)) = (&self.witness, &self.matrix) else { return Ok(!self.holds) };
        for p in w.paths.values() {
            if validate_path(g, &p.nodes, &p.labels).is_err() {
                return Ok(false);
            }
        }
        if w.regs.values().any(|a| a.len() != k || a.iter().flatten().any(|&d| d as usize >= g.value_count())) {
            return Ok(false);
        }
        if w.nodes.values().any(|&v| v >= g.node_count()) {
            return Ok(false);
        }
        let opts = BruteOptions::new(w.max_path_len());
        rl_eval_brute(g, m, k, &alpha.merged(w), &opts)
    }
}

fn check_fragment(f: &Formula) -> Result<()> {
    if f.has_negation() {
        return Err(Error::FragmentViolation("negation is outside the positive fragment".into()));
    }
    Ok(())
}

/// Decides a positive formula under α, with a witness when it holds.
pub fn nrlplus_eval(g: &DataGraph, f: &Formula, k: usize, alpha: &Valuation) -> Result<NrlResult> {
    check_fragment(f)?;
    let s = Solver::new(g, f, k, alpha, &[])?;
    s.result(&[])
}

/// All tuples of nodes for the free node variables `vars` that satisfy the
/// formula together with α.
pub fn nrlplus_answers(
    g: &DataGraph,
    f: &Formula,
    k: usize,
    alpha: &Valuation,
    vars: &[String],
) -> Result<BTreeSet<Vec<NodeId>>> {
    Ok(nrlplus_answers_with(g, f, k, alpha, vars, par::DEFAULT_PARALLEL)?.into_iter().map(|(t, _)| t).collect())
}

/// Like [`nrlplus_answers`], with the evaluation result of every answer.
pub fn nrlplus_answers_with(
    g: &DataGraph,
    f: &Formula,
    k: usize,
    alpha: &Valuation,
    vars: &[String],
    parallel: bool,
) -> Result<Vec<(Vec<NodeId>, NrlResult)>> {
    check_fragment(f)?;
    let s = Solver::new(g, f, k, alpha, vars)?;
    let mut tuples: Vec<Vec<NodeId>> = vec![Vec::new()];
    for _ in vars {
        tuples = tuples.into_iter().flat_map(|t| g.nodes().map(move |v| [t.clone(), vec![v]].concat())).collect();
    }
    let results = par::map(&tuples, parallel, |t| {
        let bind: Vec<(String, NodeId)> = vars.iter().cloned().zip(t.iter().copied()).collect();
        s.result(&bind)
    });
    let mut out = Vec::new();
    for (t, r) in tuples.into_iter().zip(results) {
        let r = r?;
        if r.holds {
            out.push((t, r));
        }
    }
    Ok(out)
}
