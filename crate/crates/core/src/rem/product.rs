//! Deterministic summary product of a graph with several compiled REMs.
//!
//! After reading a path from u to v, the summary records, for every REM `i`
//! and every tracked start tuple λ, the set of automaton states and register
//! tuples (q, λ′) reachable after silent closure at v. Two paths with the same
//! endpoints and summary satisfy exactly the same REM atoms, and the
//! accepting part of the summary is the path's profile.

use std::cmp::Ordering;

use rustc_hash::FxHashMap;

use super::eval::Program;
use super::regs::Code;
use crate::error::{Error, Result};
use crate::graph::{DataGraph, NodeId, Path, SymId};

/// (atom index, start tuple, state, current tuple)
pub type Entry = (u32, Code, u32, Code);

/// Sorted set of (atom index, λ, λ′) triples.
pub type Profile = Vec<(u32, Code, Code)>;

/// Canonical path order: fewer edges first, then lexicographic on node ids and labels.
pub fn canonical_cmp(a: &Path, b: &Path) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.nodes.cmp(&b.nodes)).then_with(|| a.labels.cmp(&b.labels))
}

pub struct Product<'p, 'g> {
    pub g: &'g DataGraph,
    progs: Vec<&'p Program<'g>>,
    starts: Vec<Vec<Code>>,
    sums: Vec<Vec<Entry>>,
    sum_index: FxHashMap<Vec<Entry>, u32>,
    steps: FxHashMap<(u32, SymId, NodeId), u32>,
    profiles: Vec<Option<Profile>>,
    /// universal states of every program
    universal: Vec<Vec<bool>>,
    budget: usize,
}

/// Product nodes reachable from one start node, with their successor lists.
pub struct Explored {
    pub start: NodeId,
    /// (current node, summary id); index 0 is the root.
    pub nodes: Vec<(NodeId, u32)>,
    pub succ: Vec<Vec<(SymId, NodeId, usize)>>,
}

impl<'p, 'g> Product<'p, 'g> {
    /// `starts[i]` lists the start tuples tracked for program `i`.
    pub fn new(g: &'g DataGraph, progs: Vec<&'p Program<'g>>, starts: Vec<Vec<Code>>, budget: usize) -> Self {
        assert_eq!(progs.len(), starts.len());
        let universal = progs.iter().map(|p| p.nfa().universal(g.alphabet().len())).collect();
        Product {
            g,
            progs,
            starts,
            sums: Vec::new(),
            sum_index: FxHashMap::default(),
            steps: FxHashMap::default(),
            profiles: Vec::new(),
            universal,
            budget,
        }
    }

    pub fn summary_count(&self) -> usize {
        self.sums.len()
    }

    pub fn tracks(&self, atom: usize, lambda: Code) -> bool {
        self.starts[atom].contains(&lambda)
    }

    fn intern(&mut self, mut s: Vec<Entry>) -> Result<u32> {
        s.sort_unstable();
        s.dedup();
        if let Some(&id) = self.sum_index.get(&s) {
            return Ok(id);
        }
        if self.sums.len() >= self.budget {
            return Err(Error::ResourceLimit(format!(
                "summary product exceeds the budget of {} states (raise DATAPATH_BUDGET)",
                self.budget
            )));
        }
        let id = self.sums.len() as u32;
        self.sums.push(s.clone());
        self.sum_index.insert(s, id);
        self.profiles.push(None);
        Ok(id)
    }

    fn close_group(&self, i: usize, v: NodeId, lambda: Code, seeds: Vec<(u32, Code)>, out: &mut Vec<Entry>) {
        let p = self.progs[i];
        for (q, c) in p.close(p.nfa(), v, seeds) {
            out.push((i as u32, lambda, q, c));
        }
    }

    /// Summary of the single-node path at `u`.
    pub fn init(&mut self, u: NodeId) -> Result<u32> {
        let mut out = Vec::new();
        for i in 0..self.progs.len() {
            let start = self.progs[i].nfa().start;
            for &l in &self.starts[i] {
                self.close_group(i, u, l, vec![(start, l)], &mut out);
            }
        }
        self.intern(out)
    }

    /// Summary after extending by an `a`-edge into `w`.
    pub fn step(&mut self, sid: u32, a: SymId, w: NodeId) -> Result<u32> {
        if let Some(&t) = self.steps.get(&(sid, a, w)) {
            return Ok(t);
        }
        let mut groups: FxHashMap<(u32, Code), Vec<(u32, Code)>> = FxHashMap::default();
        for &(i, l, q, c) in &self.sums[sid as usize] {
            for &(b, to) in &self.progs[i as usize].nfa().edges[q as usize] {
                if b == a {
                    groups.entry((i, l)).or_default().push((to, c));
                }
            }
        }
        let mut out = Vec::new();
        for ((i, l), seeds) in groups {
            self.close_group(i as usize, w, l, seeds, &mut out);
        }
        let t = self.intern(out)?;
        self.steps.insert((sid, a, w), t);
        Ok(t)
    }

    pub fn profile(&mut self, sid: u32) -> &Profile {
        if self.profiles[sid as usize].is_none() {
            let mut p: Profile = self.sums[sid as usize]
                .iter()
                .filter(|&&(i, _, q, _)| self.progs[i as usize].nfa().accepting[q as usize])
                .map(|&(i, l, _, c)| (i, l, c))
                .collect();
            p.sort_unstable();
            p.dedup();
            self.profiles[sid as usize] = Some(p);
        }
        self.profiles[sid as usize].as_ref().unwrap()
    }

    /// Whether (atom, λ, λ′) belongs to the profile of summary `sid`.
    pub fn holds(&mut self, sid: u32, atom: usize, lambda: Code, out: Code) -> bool {
        self.profile(sid).binary_search(&(atom as u32, lambda, out)).is_ok()
    }

    /// Every product node reachable from `u`.
    pub fn explore(&mut self, u: NodeId) -> Result<Explored> {
        self.explore_bounded(u, None)
    }

    /// The triples (atom index, λ, λ′) that hold on every extension of a path
    /// with summary `sid`: those carried by a thread in a universal state.
    pub fn forever(&self, sid: u32) -> Profile {
        let mut p: Profile = self.sums[sid as usize]
            .iter()
            .filter(|&&(i, _, q, _)| self.universal[i as usize][q as usize])
            .map(|&(i, l, _, c)| (i, l, c))
            .collect();
        p.sort_unstable();
        p.dedup();
        p
    }

    /// The (atom index, λ) pairs that still have a live thread. An atom
    /// started from any other λ is false on every extension.
    pub fn alive(&self, sid: u32) -> Vec<(u32, Code)> {
        let mut a: Vec<(u32, Code)> = self.sums[sid as usize].iter().map(|&(i, l, _, _)| (i, l)).collect();
        a.sort_unstable();
        a.dedup();
        a
    }

    /// Product nodes reachable from `u` by paths of at most `depth` edges.
    pub fn explore_bounded(&mut self, u: NodeId, depth: Option<usize>) -> Result<Explored> {
        self.explore_pruned(u, depth, |_, _| false)
    }

    /// Like [`Product::explore_bounded`], but product nodes whose summary
    /// satisfies `stop` are kept without being expanded.
    pub fn explore_pruned(
        &mut self,
        u: NodeId,
        depth: Option<usize>,
        mut stop: impl FnMut(&Self, u32) -> bool,
    ) -> Result<Explored> {
        let root = self.init(u)?;
        let mut dist = vec![0usize];
        let mut index: FxHashMap<(NodeId, u32), usize> = FxHashMap::default();
        let mut nodes = vec![(u, root)];
        index.insert((u, root), 0);
        let mut succ: Vec<Vec<(SymId, NodeId, usize)>> = Vec::new();
        let mut i = 0;
        while i < nodes.len() {
            let (v, sid) = nodes[i];
            let mut out = Vec::new();
            if depth.map_or(true, |d| dist[i] < d) && !stop(self, sid) {
                for &(a, w) in self.g.out(v) {
                    let t = self.step(sid, a, w)?;
                    let j = *index.entry((w, t)).or_insert_with(|| {
                        nodes.push((w, t));
                        dist.push(dist[i] + 1);
                        nodes.len() - 1
                    });
                    out.push((a, w, j));
                }
            }
            succ.push(out);
            i += 1;
            if nodes.len() > self.budget {
                return Err(Error::ResourceLimit(format!(
                    "product exploration exceeds the budget of {} nodes (raise DATAPATH_BUDGET)",
                    self.budget
                )));
            }
        }
        Ok(Explored { start: u, nodes, succ })
    }

    /// min(t, number of u⇝v paths whose profile is exactly `e`).
    pub fn count_paths_threshold(&mut self, u: NodeId, v: NodeId, e: &Profile, t: usize) -> Result<usize> {
        let ex = self.explore(u)?;
        let target: Vec<bool> = ex.nodes.iter().map(|&(w, sid)| w == v && self.profile(sid) == e).collect();
        Ok(count_capped(&ex, &target, t))
    }
}

/// Number of root walks ending in a target node, capped at `t`.
pub fn count_capped(ex: &Explored, target: &[bool], t: usize) -> usize {
    let n = ex.nodes.len();
    // nodes that can reach a target
    let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (x, s) in ex.succ.iter().enumerate() {
        for &(_, _, y) in s {
            rev[y].push(x);
        }
    }
    let mut useful = target.to_vec();
    let mut stack: Vec<usize> = (0..n).filter(|&x| target[x]).collect();
    while let Some(y) = stack.pop() {
        for &x in &rev[y] {
            if !useful[x] {
                useful[x] = true;
                stack.push(x);
            }
        }
    }
    if !useful[0] {
        return 0;
    }
    // iterative DFS over useful nodes; a back edge means unboundedly many walks
    let mut state = vec![0u8; n];
    let mut count = vec![0usize; n];
    let mut stack: Vec<(usize, usize)> = vec![(0, 0)];
    state[0] = 1;
    while let Some(top) = stack.len().checked_sub(1) {
        let (x, k) = stack[top];
        let s = &ex.succ[x];
        if k < s.len() {
            let y = s[k].2;
            stack[top].1 += 1;
            if !useful[y] {
                continue;
            }
            match state[y] {
                0 => {
                    state[y] = 1;
                    stack.push((y, 0));
                }
                1 => return t,
                _ => {}
            }
        } else {
            let mut c = usize::from(target[x]);
            for &(_, _, y) in s {
                if useful[y] {
                    c = (c + count[y]).min(t);
                }
            }
            count[x] = c;
            state[x] = 2;
            stack.pop();
        }
    }
    count[0].min(t)
}

/// For every product node, its `t` smallest paths in canonical order, optionally
/// only up to `max_len` edges. Level by level: the t smallest paths into a
/// node extend the t smallest paths into its predecessors.
pub fn top_paths(ex: &Explored, t: usize, max_len: Option<usize>) -> Vec<Vec<Path>> {
    let n = ex.nodes.len();
    let mut best: Vec<Vec<Path>> = vec![Vec::new(); n];
    if t == 0 {
        return best;
    }
    best[0].push(Path::single(ex.start));
    let mut frontier: Vec<(usize, Path)> = vec![(0, Path::single(ex.start))];
    let mut len = 0;
    while !frontier.is_empty() && max_len.map_or(true, |m| len < m) {
        len += 1;
        let mut cand: FxHashMap<usize, Vec<Path>> = FxHashMap::default();
        for (x, p) in &frontier {
            for &(a, w, y) in &ex.succ[*x] {
                if best[y].len() < t {
                    let mut q = p.clone();
                    q.push(a, w);
                    cand.entry(y).or_default().push(q);
                }
            }
        }
        let mut next = Vec::new();
        let mut keys: Vec<usize> = cand.keys().copied().collect();
        keys.sort_unstable();
        for y in keys {
            let mut ps = cand.remove(&y).unwrap();
            ps.sort_by(canonical_cmp);
            let room = t - best[y].len();
            for p in ps.into_iter().take(room) {
                best[y].push(p.clone());
                next.push((y, p));
            }
        }
        frontier = next;
    }
    best
}
