//! Evaluation over the configuration space (node, state, registers).

use std::collections::{BTreeSet, VecDeque};

use rustc_hash::{FxHashMap, FxHashSet};

use super::automaton::{compile, Automaton, Guard, Nfa};
use super::regs::{Code, RegSpace, BOTTOM};
use crate::error::{Error, Result};
use crate::graph::{DataGraph, NodeId, Path};
use crate::par;
use crate::query::Rem;

/// A compiled expression bound to one graph, with its nesting tables.
pub struct Program<'g> {
    pub g: &'g DataGraph,
    pub space: RegSpace,
    pub aut: Automaton,
    /// `tables[i][v * |space| + λ]` holds iff (v, λ) ∈ U of nest `i`.
    tables: Vec<Vec<bool>>,
}

type Local = (u32, Code);

impl<'g> Program<'g> {
    pub fn new(g: &'g DataGraph, e: &Rem, k: usize) -> Result<Self> {
        let need = e.max_register();
        if need > k {
            return Err(Error::RegisterOutOfRange(need, k));
        }
        let space = RegSpace::new(k, g.value_count())?;
        Self::with_space(g, e, space)
    }

    pub fn with_space(g: &'g DataGraph, e: &Rem, space: RegSpace) -> Result<Self> {
        let aut = compile(g, e);
        let mut p = Program { g, space, aut, tables: Vec::new() };
        for i in 0..p.aut.nests.len() {
            let t = p.nest_table(i)?;
            p.tables.push(t);
        }
        Ok(p)
    }

    pub fn nfa(&self) -> &Nfa {
        &self.aut.main
    }

    pub fn in_nest(&self, id: usize, v: NodeId, code: Code) -> bool {
        self.tables[id][v * self.space.size() as usize + code as usize]
    }

    /// Silent successors of (v, q, λ) in `nfa`.
    pub fn silent(&self, nfa: &Nfa, v: NodeId, q: u32, code: Code, mut f: impl FnMut(u32, Code)) {
        let d = self.g.kappa(v);
        for (guard, to) in &nfa.silent[q as usize] {
            match guard {
                Guard::Test(c) => {
                    if self.space.test(c, d, code) {
                        f(*to, code)
                    }
                }
                Guard::Store(r) => f(*to, self.space.store(code, r, d)),
                Guard::Nest(id) => {
                    if self.in_nest(*id, v, code) {
                        f(*to, code)
                    }
                }
            }
        }
    }

    /// Closes a set of local states at node `v` under silent steps.
    pub fn close(&self, nfa: &Nfa, v: NodeId, seeds: impl IntoIterator<Item = Local>) -> FxHashSet<Local> {
        let mut seen: FxHashSet<Local> = FxHashSet::default();
        let mut stack: Vec<Local> = Vec::new();
        for s in seeds {
            if seen.insert(s) {
                stack.push(s);
            }
        }
        while let Some((q, c)) = stack.pop() {
            self.silent(nfa, v, q, c, |q2, c2| {
                if seen.insert((q2, c2)) {
                    stack.push((q2, c2));
                }
            });
        }
        seen
    }

    /// { λ′ : (first(ρ), λ, ρ, last(ρ), λ′) ∈ ⟦e⟧ } by dynamic programming over positions.
    pub fn path_parse(&self, rho: &Path, lambda: Code) -> BTreeSet<Code> {
        let nfa = self.nfa();
        let mut cur = self.close(nfa, rho.nodes[0], [(nfa.start, lambda)]);
        for (i, &a) in rho.labels.iter().enumerate() {
            let w = rho.nodes[i + 1];
            let mut next = Vec::new();
            for &(q, c) in &cur {
                for &(b, to) in &nfa.edges[q as usize] {
                    if b == a {
                        next.push((to, c));
                    }
                }
            }
            if next.is_empty() {
                return BTreeSet::new();
            }
            cur = self.close(nfa, w, next);
        }
        cur.into_iter().filter(|&(q, _)| nfa.accepting[q as usize]).map(|(_, c)| c).collect()
    }

    fn forward(&self, nfa: &Nfa, v: NodeId, q: u32, c: Code, mut f: impl FnMut(NodeId, u32, Code)) {
        self.silent(nfa, v, q, c, |q2, c2| f(v, q2, c2));
        let edges = &nfa.edges[q as usize];
        if edges.is_empty() {
            return;
        }
        for &(a, w) in self.g.out(v) {
            for &(b, to) in edges {
                if a == b {
                    f(w, to, c);
                }
            }
        }
    }

    /// All (v, λ′) reachable in accepting configurations from (u, start, λ).
    pub fn reach(&self, u: NodeId, lambda: Code) -> BTreeSet<(NodeId, Code)> {
        self.reach_in(self.nfa(), u, lambda)
    }

    fn reach_in(&self, nfa: &Nfa, u: NodeId, lambda: Code) -> BTreeSet<(NodeId, Code)> {
        let mut seen: FxHashSet<(NodeId, u32, Code)> = FxHashSet::default();
        let mut stack = vec![(u, nfa.start, lambda)];
        seen.insert((u, nfa.start, lambda));
        let mut out = BTreeSet::new();
        while let Some((v, q, c)) = stack.pop() {
            if nfa.accepting[q as usize] {
                out.insert((v, c));
            }
            self.forward(nfa, v, q, c, |w, q2, c2| {
                if seen.insert((w, q2, c2)) {
                    stack.push((w, q2, c2));
                }
            });
        }
        out
    }

    /// e(G): pairs linked by some path parsed from ⊥^k.
    pub fn pairs(&self, parallel: bool) -> BTreeSet<(NodeId, NodeId)> {
        let nodes: Vec<NodeId> = self.g.nodes().collect();
        let per = par::map(&nodes, parallel, |&u| {
            self.reach(u, BOTTOM).into_iter().map(|(v, _)| (u, v)).collect::<BTreeSet<_>>()
        });
        per.into_iter().flatten().collect()
    }

    /// Shortest-in-configurations run from (u, start, λ) to an accepting
    /// configuration satisfying `goal`; returns the path and final registers.
    pub fn witness(&self, u: NodeId, lambda: Code, goal: impl Fn(NodeId, Code) -> bool) -> Option<(Path, Code)> {
        let nfa = self.nfa();
        let start = (u, nfa.start, lambda);
        // parent: config -> (previous config, edge label if an edge was taken)
        let mut parent: FxHashMap<(NodeId, u32, Code), Option<((NodeId, u32, Code), Option<usize>)>> = FxHashMap::default();
        parent.insert(start, None);
        let mut queue = VecDeque::from([start]);
        while let Some(cfg @ (v, q, c)) = queue.pop_front() {
            if nfa.accepting[q as usize] && goal(v, c) {
                let mut nodes = vec![v];
                let mut labels = Vec::new();
                let mut cur = cfg;
                while let Some(Some((prev, label))) = parent.get(&cur) {
                    if let Some(a) = label {
                        labels.push(*a);
                        nodes.push(prev.0);
                    }
                    cur = *prev;
                }
                nodes.reverse();
                labels.reverse();
                return Some((Path { nodes, labels }, c));
            }
            self.silent(nfa, v, q, c, |q2, c2| {
                let next = (v, q2, c2);
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some((cfg, None)));
                    queue.push_back(next);
                }
            });
            for &(a, w) in self.g.out(v) {
                for &(b, to) in &nfa.edges[q as usize] {
                    if a == b {
                        let next = (w, to, c);
                        if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                            e.insert(Some((cfg, Some(a))));
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        None
    }

    /// U of nest `id`: the (w, λ) from which the nested automaton accepts
    /// some path. Backward search over the explicit configuration graph.
    fn nest_table(&self, id: usize) -> Result<Vec<bool>> {
        let nfa = &self.aut.nests[id];
        let s = self.space.size() as usize;
        let nq = nfa.len();
        let total = self
            .g
            .node_count()
            .checked_mul(nq)
            .and_then(|x| x.checked_mul(s))
            .filter(|&x| x <= 1 << 28)
            .ok_or_else(|| Error::ResourceLimit("nesting table exceeds 2^28 configurations".into()))?;
        let idx = |v: NodeId, q: u32, c: Code| (v * nq + q as usize) * s + c as usize;
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); total];
        for v in self.g.nodes() {
            for q in 0..nq as u32 {
                for c in self.space.all() {
                    let from = idx(v, q, c) as u32;
                    self.forward(nfa, v, q, c, |w, q2, c2| rev[idx(w, q2, c2)].push(from));
                }
            }
        }
        let mut good = vec![false; total];
        let mut stack = Vec::new();
        for v in self.g.nodes() {
            for q in 0..nq as u32 {
                if nfa.accepting[q as usize] {
                    for c in self.space.all() {
                        good[idx(v, q, c)] = true;
                        stack.push(idx(v, q, c));
                    }
                }
            }
        }
        while let Some(x) = stack.pop() {
            for &p in &rev[x] {
                if !good[p as usize] {
                    good[p as usize] = true;
                    stack.push(p as usize);
                }
            }
        }
        let mut table = vec![false; self.g.node_count() * s];
        for v in self.g.nodes() {
            for c in self.space.all() {
                table[v * s + c as usize] = good[idx(v, nfa.start, c)];
            }
        }
        Ok(table)
    }

    /// The nesting set of nest `id` as explicit pairs.
    pub fn nesting_set(&self, id: usize) -> BTreeSet<(NodeId, Code)> {
        let s = self.space.size();
        self.g
            .nodes()
            .flat_map(|v| self.space.all().filter(move |&c| self.tables[id][v * s as usize + c as usize]).map(move |c| (v, c)))
            .collect()
    }

    /// Direct definition of a nesting set: forward reachability from every (w, λ).
    pub fn nesting_set_direct(&self, id: usize) -> BTreeSet<(NodeId, Code)> {
        let nfa = &self.aut.nests[id];
        let mut out = BTreeSet::new();
        for v in self.g.nodes() {
            for c in self.space.all() {
                if !self.reach_in(nfa, v, c).is_empty() {
                    out.insert((v, c));
                }
            }
        }
        out
    }
}
