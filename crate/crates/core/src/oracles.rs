//! Ground truth for tests: exhaustive path enumeration and classical graph
//! predicates, written without any of the automata machinery.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{DataGraph, NodeId, Path};

/// Lazy enumeration of all paths with at most `bound` edges, shortest first,
/// then lexicographic on node ids and labels.
pub struct PathStream<'g> {
    g: &'g DataGraph,
    bound: usize,
    to: Option<NodeId>,
    level: Vec<Path>,
    len: usize,
    next: usize,
}

impl Iterator for PathStream<'_> {
    type Item = Path;

    fn next(&mut self) -> Option<Path> {
        loop {
            while self.next < self.level.len() {
                let p = &self.level[self.next];
                self.next += 1;
                if self.to.map_or(true, |t| p.last() == t) {
                    return Some(p.clone());
                }
            }
            if self.len >= self.bound || self.level.is_empty() {
                return None;
            }
            let mut next = Vec::new();
            for p in &self.level {
                for &(a, w) in self.g.out(p.last()) {
                    let mut q = p.clone();
                    q.push(a, w);
                    next.push(q);
                }
            }
            next.sort_by(|x, y| x.nodes.cmp(&y.nodes).then_with(|| x.labels.cmp(&y.labels)));
            self.level = next;
            self.len += 1;
            self.next = 0;
        }
    }
}

pub fn enum_paths(g: &DataGraph, bound: usize, from: Option<NodeId>, to: Option<NodeId>) -> PathStream<'_> {
    let level = match from {
        Some(u) if u < g.node_count() => vec![Path::single(u)],
        Some(_) => Vec::new(),
        None => g.nodes().map(Path::single).collect(),
    };
    PathStream { g, bound, to, level, len: 0, next: 0 }
}

fn adjacency(g: &DataGraph) -> Vec<Vec<bool>> {
    let n = g.node_count();
    let mut adj = vec![vec![false; n]; n];
    for &(s, _, d) in g.edges() {
        adj[s][d] = true;
    }
    adj
}

/// A directed path visiting every node exactly once, by trying every order.
pub fn hamiltonian_path_exists(g: &DataGraph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return false;
    }
    let adj = adjacency(g);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if perm.windows(2).all(|w| adj[w[0]][w[1]]) {
            return true;
        }
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}

/// Same question by dynamic programming over (visited set, last node).
pub fn hamiltonian_path_dp(g: &DataGraph) -> bool {
    let n = g.node_count();
    if n == 0 {
        return false;
    }
    assert!(n <= 20, "bitmask DP supports at most 20 nodes");
    let adj = adjacency(g);
    let full = (1usize << n) - 1;
    let mut ok = vec![vec![false; n]; 1 << n];
    for v in 0..n {
        ok[1 << v][v] = true;
    }
    for mask in 1..=full {
        for v in 0..n {
            if !ok[mask][v] {
                continue;
            }
            for w in 0..n {
                if mask & (1 << w) == 0 && adj[v][w] {
                    ok[mask | (1 << w)][w] = true;
                }
            }
        }
    }
    ok[full].iter().any(|&b| b)
}

fn undirected_components(g: &DataGraph) -> Vec<usize> {
    let n = g.node_count();
    let mut nb = vec![Vec::new(); n];
    for &(s, _, d) in g.edges() {
        nb[s].push(d);
        nb[d].push(s);
    }
    let mut comp = vec![usize::MAX; n];
    let mut c = 0;
    for r in 0..n {
        if comp[r] != usize::MAX {
            continue;
        }
        comp[r] = c;
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            for &w in &nb[v] {
                if comp[w] == usize::MAX {
                    comp[w] = c;
                    stack.push(w);
                }
            }
        }
        c += 1;
    }
    comp
}

/// A trail using every undirected edge exactly once. The graph must encode an
/// undirected graph (symmetric edges); every label pair {u,v} with u ≠ v is
/// one undirected edge. A graph without nodes has no path at all.
pub fn eulerian_trail_exists(g: &DataGraph) -> Result<bool> {
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if g.node_count() == 0 {
        return Ok(false);
    }
    let mut edges = BTreeSet::new();
    for &(s, a, d) in g.edges() {
        if s != d {
            edges.insert((s.min(d), a, s.max(d)));
        }
    }
    let mut deg = vec![0usize; g.node_count()];
    for &(x, _, y) in &edges {
        deg[x] += 1;
        deg[y] += 1;
    }
    let comp = undirected_components(g);
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for &(x, _, _) in &edges {
        used.insert(comp[x]);
    }
    let odd = deg.iter().filter(|&&d| d % 2 == 1).count();
    Ok(used.len() <= 1 && (odd == 0 || odd == 2))
}

/// Two-colourability of the underlying undirected graph.
pub fn is_bipartite(g: &DataGraph) -> bool {
    let n = g.node_count();
    let mut nb = vec![Vec::new(); n];
    for &(s, _, d) in g.edges() {
        nb[s].push(d);
        nb[d].push(s);
    }
    let mut colour: Vec<Option<bool>> = vec![None; n];
    for r in 0..n {
        if colour[r].is_some() {
            continue;
        }
        colour[r] = Some(false);
        let mut stack = vec![r];
        while let Some(v) = stack.pop() {
            let c = colour[v].unwrap();
            for &w in &nb[v] {
                match colour[w] {
                    None => {
                        colour[w] = Some(!c);
                        stack.push(w);
                    }
                    Some(d) if d == c => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Whether the underlying undirected graph is connected (and nonempty), and
/// the parity of its number of nodes.
pub fn connected_parity(g: &DataGraph) -> (bool, Parity) {
    let n = g.node_count();
    let parity = if n % 2 == 1 { Parity::Odd } else { Parity::Even };
    let comp = undirected_components(g);
    (n > 0 && comp.iter().all(|&c| c == 0), parity)
}

/// Pairs (x, y) such that some node z and some path from x to y exist where
/// every node w on the path has a node with w's data value that reaches z.
/// A shortest such path is simple, so a search over simple paths suffices.
pub fn query_q_oracle(g: &DataGraph) -> BTreeSet<(NodeId, NodeId)> {
    let n = g.node_count();
    // reach[u][v]: v is reachable from u
    let mut reach = vec![vec![false; n]; n];
    for u in 0..n {
        let mut stack = vec![u];
        reach[u][u] = true;
        while let Some(v) = stack.pop() {
            for &(_, w) in g.out(v) {
                if !reach[u][w] {
                    reach[u][w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    for z in 0..n {
        let good: Vec<bool> = (0..n).map(|w| (0..n).any(|z2| g.kappa(z2) == g.kappa(w) && reach[z2][z])).collect();
        for x in 0..n {
            if !good[x] {
                continue;
            }
            let mut on_path = vec![false; n];
            simple_paths(g, x, &good, &mut on_path, &mut |y| {
                out.insert((x, y));
            });
        }
    }
    out
}

fn simple_paths(g: &DataGraph, v: NodeId, good: &[bool], on: &mut Vec<bool>, emit: &mut impl FnMut(NodeId)) {
    on[v] = true;
    emit(v);
    for &(_, w) in g.out(v) {
        if good[w] && !on[w] {
            simple_paths(g, w, good, on, emit);
        }
    }
    on[v] = false;
}
