//! RL evaluation with path quantifiers restricted to paths of at most `L` edges.
//!
//! Quantified formulas without free path variables are memoized on the values
//! of their free variables. In `dedup` mode a path quantifier whose variable
//! is only used as the path argument of REM and endpoint atoms ranges over
//! one shortest path per (start, end, summary) class of the summary product
//! instead of over all paths. Paths in one class satisfy the same atoms, so
//! this is exact for the bounded semantics.

use std::hash::{Hash, Hasher};
use std::sync::Mutex;

use rustc_hash::{FxHashMap, FxHasher};

use super::ir::{self, Compiled, Ir, Quant};
use super::{budget_from_env, Valuation, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{validate_path, DataGraph, Path};
use crate::par;
use crate::query::{Formula, Sort};
use crate::rem::product::{canonical_cmp, top_paths};
use crate::rem::{Code, Product, Program, RegSpace, BOTTOM};

#[derive(Debug, Clone, Copy)]
pub struct BruteOptions {
    /// Maximal number of edges of a quantified path.
    pub bound: usize,
    pub parallel: bool,
    pub dedup: bool,
    /// Cap on enumerated paths and product states.
    pub budget: usize,
}

impl BruteOptions {
    pub fn new(bound: usize) -> Self {
        BruteOptions { bound, parallel: par::DEFAULT_PARALLEL, dedup: true, budget: DEFAULT_BUDGET }
    }

    /// Reads the budget from `DATAPATH_BUDGET`.
    pub fn from_env(bound: usize) -> Result<Self> {
        Ok(BruteOptions { budget: budget_from_env(DEFAULT_BUDGET)?, ..Self::new(bound) })
    }

    pub fn plain(mut self) -> Self {
        self.dedup = false;
        self
    }

    pub fn sequential(mut self) -> Self {
        self.parallel = false;
        self
    }
}

const SHARDS: usize = 64;

struct Brute<'g> {
    g: &'g DataGraph,
    space: RegSpace,
    progs: Vec<Program<'g>>,
    c: Compiled,
    arena: Vec<Path>,
    all_paths: Vec<u64>,
    domains: Vec<Option<Vec<u64>>>,
    memo: Vec<Option<Mutex<FxHashMap<Vec<u64>, bool>>>>,
    atoms: Vec<Mutex<FxHashMap<(usize, u64, Code), Vec<Code>>>>,
    parallel: bool,
}

/// What is settled about the atoms on one path slot for every extension of
/// a path: `truths` hold forever, atoms whose (REM, λ) is not `alive` never
/// hold, everything else is unknown.
struct Partial {
    slot: usize,
    truths: Vec<(usize, Code, Code)>,
    alive: Vec<(usize, Code)>,
}

/// All paths with at most `bound` edges, in canonical order.
fn enumerate_paths(g: &DataGraph, bound: usize, budget: usize) -> Result<Vec<Path>> {
    let mut out: Vec<Path> = g.nodes().map(Path::single).collect();
    let mut level: Vec<Path> = out.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &level {
            for &(a, w) in g.out(p.last()) {
                let mut q = p.clone();
                q.push(a, w);
                next.push(q);
            }
        }
        if out.len() + next.len() > budget {
            return Err(Error::ResourceLimit(format!(
                "more than {budget} paths of length <= {bound} (raise DATAPATH_BUDGET or lower the bound)"
            )));
        }
        out.extend(next.iter().cloned());
        level = next;
        if level.is_empty() {
            break;
        }
    }
    out.sort_by(canonical_cmp);
    Ok(out)
}

impl<'g> Brute<'g> {
    fn new(g: &'g DataGraph, f: &Formula, k: usize, opts: &BruteOptions) -> Result<Self> {
        let c = ir::compile(f)?;
        let space = RegSpace::new(k, g.value_count())?;
        let progs = c
            .rems
            .iter()
            .map(|e| {
                if e.max_register() > k {
                    return Err(Error::RegisterOutOfRange(e.max_register(), k));
                }
                Program::with_space(g, e, space)
            })
            .collect::<Result<Vec<_>>>()?;
        let quants: Vec<Quant> = ir::quantifiers(&c.ir).into_iter().cloned().collect();
        let mut b = Brute {
            g,
            space,
            progs,
            arena: Vec::new(),
            all_paths: Vec::new(),
            domains: vec![None; quants.len()],
            memo: Vec::new(),
            atoms: (0..SHARDS).map(|_| Mutex::new(FxHashMap::default())).collect(),
            parallel: opts.parallel,
            c,
        };
        for q in &quants {
            b.memo.push(
                (!q.free.iter().any(|&s| b.c.slot_sort[s] == Sort::Path)).then(|| Mutex::new(FxHashMap::default())),
            );
        }
        let walks = |q: &Quant| q.sort == Sort::Path && q.occurs;
        let dedup = |q: &Quant| opts.dedup && ir::path_only_in_atoms(&q.body, q.slot);
        if quants.iter().any(|q| walks(q) && !dedup(q)) {
            let paths = enumerate_paths(g, opts.bound, opts.budget)?;
            let base = b.arena.len() as u64;
            b.all_paths = (base..base + paths.len() as u64).collect();
            b.arena.extend(paths);
        }
        // inner domains first, since pruning an outer quantifier evaluates its body
        for q in quants.iter().rev() {
            if walks(q) && dedup(q) {
                let dom = b.class_representatives(q, opts)?;
                b.domains[q.id] = Some(dom);
            }
        }
        Ok(b)
    }

    fn class_representatives(&mut self, q: &Quant, opts: &BruteOptions) -> Result<Vec<u64>> {
        let mut occ = Vec::new();
        ir::atoms_on(&q.body, q.slot, &mut occ);
        let mut rems: Vec<usize> = occ.iter().map(|x| x.0).collect();
        rems.sort_unstable();
        rems.dedup();
        let starts: Vec<Vec<Code>> = rems
            .iter()
            .map(|&r| {
                if occ.iter().filter(|x| x.0 == r).all(|&(_, l)| self.c.bot_only[l]) {
                    vec![BOTTOM]
                } else {
                    self.space.all().collect()
                }
            })
            .collect();
        // Product nodes on which a closed body is false for every extension
        // are not expanded, and their paths are not representatives.
        let prune = q.free.is_empty();
        let mut verdicts: FxHashMap<u32, bool> = FxHashMap::default();
        let progs: Vec<&Program> = rems.iter().map(|&r| &self.progs[r]).collect();
        let mut prod = Product::new(self.g, progs, starts, opts.budget);
        let mut reps = Vec::new();
        for u in self.g.nodes() {
            let ex = prod.explore_pruned(u, Some(opts.bound), |prod, sid| {
                prune && *verdicts.entry(sid).or_insert_with(|| self.dead(q, &rems, prod, sid))
            })?;
            for (j, mut ps) in top_paths(&ex, 1, Some(opts.bound)).into_iter().enumerate() {
                if !verdicts.get(&ex.nodes[j].1).copied().unwrap_or(false) {
                    reps.append(&mut ps);
                }
            }
            if reps.len() > opts.budget {
                return Err(Error::ResourceLimit(format!("more than {} path classes", opts.budget)));
            }
        }
        reps.sort_by(canonical_cmp);
        let base = self.arena.len() as u64;
        let ids = (base..base + reps.len() as u64).collect();
        self.arena.extend(reps);
        Ok(ids)
    }

    /// Whether the body of `q` is false on every extension of a path whose
    /// product node is `sid`, by Kleene evaluation over a [`Partial`].
    fn dead(&self, q: &Quant, rems: &[usize], prod: &Product, sid: u32) -> bool {
        let mut truths: Vec<(usize, Code, Code)> =
            prod.forever(sid).into_iter().map(|(i, l, c)| (rems[i as usize], l, c)).collect();
        truths.sort_unstable();
        let mut alive: Vec<(usize, Code)> = prod.alive(sid).into_iter().map(|(i, l)| (rems[i as usize], l)).collect();
        alive.sort_unstable();
        let pt = Partial { slot: q.slot, truths, alive };
        let mut env = vec![0u64; self.c.slot_sort.len()];
        self.eval3(&q.body, &mut env, &pt) == Some(false)
    }

    /// `None` when the value still depends on how the path is extended.
    fn eval3(&self, f: &Ir, env: &mut Vec<u64>, pt: &Partial) -> Option<bool> {
        match f {
            Ir::Atom(r, p, l, m) if *p == pt.slot => {
                let (l, m) = (env[*l], env[*m]);
                if pt.truths.binary_search(&(*r, l, m)).is_ok() {
                    Some(true)
                } else if pt.alive.binary_search(&(*r, l)).is_err() {
                    Some(false)
                } else {
                    None
                }
            }
            Ir::Endpoints(_, p, _) if *p == pt.slot => None,
            Ir::PathEq(a, b) if *a == pt.slot || *b == pt.slot => None,
            Ir::Not(a) => self.eval3(a, env, pt).map(|b| !b),
            Ir::And(a, b) => match self.eval3(a, env, pt) {
                Some(false) => Some(false),
                x => match (x, self.eval3(b, env, pt)) {
                    (_, Some(false)) => Some(false),
                    (Some(true), y) => y,
                    _ => None,
                },
            },
            Ir::Or(a, b) => match self.eval3(a, env, pt) {
                Some(true) => Some(true),
                x => match (x, self.eval3(b, env, pt)) {
                    (_, Some(true)) => Some(true),
                    (Some(false), y) => y,
                    _ => None,
                },
            },
            Ir::Exists(q) if q.free.contains(&pt.slot) => {
                if !q.occurs {
                    return self.eval3(&q.body, env, pt);
                }
                let saved = env[q.slot];
                let mut out = Some(false);
                for val in self.domain(q) {
                    env[q.slot] = val;
                    match self.eval3(&q.body, env, pt) {
                        Some(true) => {
                            out = Some(true);
                            break;
                        }
                        None => out = None,
                        Some(false) => {}
                    }
                }
                env[q.slot] = saved;
                out
            }
            _ => Some(self.eval(f, env)),
        }
    }

    fn initial_env(&mut self, alpha: &Valuation) -> Result<Vec<u64>> {
        let mut env = vec![0u64; self.c.slot_sort.len()];
        for (name, sort, slot) in self.c.free.clone() {
            let missing = || Error::UnassignedVariable(name.clone());
            env[slot] = match sort {
                Sort::Node => {
                    let v = *alpha.nodes.get(&name).ok_or_else(missing)?;
                    if v >= self.g.node_count() {
                        return Err(Error::UndeclaredNode(v.to_string()));
                    }
                    v as u64
                }
                Sort::Path => {
                    let p = alpha.paths.get(&name).ok_or_else(missing)?;
                    let p = validate_path(self.g, &p.nodes, &p.labels)?;
                    self.arena.push(p);
                    (self.arena.len() - 1) as u64
                }
                Sort::Reg => {
                    let a = alpha.regs.get(&name).ok_or_else(missing)?;
                    if a.len() != self.space.k || a.iter().flatten().any(|&d| d as usize >= self.g.value_count()) {
                        return Err(Error::Invalid(format!("register tuple for `{name}` is not over D ∪ {{⊥}}^{}", self.space.k)));
                    }
                    self.space.encode(a)
                }
            };
        }
        Ok(env)
    }

    fn atom(&self, r: usize, path: u64, l: Code, m: Code) -> bool {
        let key = (r, path, l);
        let mut h = FxHasher::default();
        key.hash(&mut h);
        let shard = &self.atoms[h.finish() as usize % SHARDS];
        if let Some(v) = shard.lock().unwrap().get(&key) {
            return v.binary_search(&m).is_ok();
        }
        let out: Vec<Code> = self.progs[r].path_parse(&self.arena[path as usize], l).into_iter().collect();
        let hit = out.binary_search(&m).is_ok();
        shard.lock().unwrap().insert(key, out);
        hit
    }

    fn domain(&self, q: &Quant) -> Vec<u64> {
        match q.sort {
            Sort::Node => (0..self.g.node_count() as u64).collect(),
            Sort::Reg => self.space.all().collect(),
            Sort::Path => self.domains[q.id].clone().unwrap_or_else(|| self.all_paths.clone()),
        }
    }

    fn eval(&self, f: &Ir, env: &mut Vec<u64>) -> bool {
        match f {
            Ir::NodeEq(a, b) | Ir::PathEq(a, b) | Ir::RegEq(a, b) => {
                if matches!(f, Ir::PathEq(..)) {
                    self.arena[env[*a] as usize] == self.arena[env[*b] as usize]
                } else {
                    env[*a] == env[*b]
                }
            }
            Ir::RegBot(a) => env[*a] == BOTTOM,
            Ir::Endpoints(x, p, y) => {
                let rho = &self.arena[env[*p] as usize];
                rho.first() as u64 == env[*x] && rho.last() as u64 == env[*y]
            }
            Ir::Atom(r, p, l, m) => self.atom(*r, env[*p], env[*l], env[*m]),
            Ir::Not(a) => !self.eval(a, env),
            Ir::Or(a, b) => self.eval(a, env) || self.eval(b, env),
            Ir::And(a, b) => self.eval(a, env) && self.eval(b, env),
            Ir::Exists(q) => self.exists(q, env),
        }
    }

    fn exists(&self, q: &Quant, env: &mut Vec<u64>) -> bool {
        if !q.occurs {
            return self.eval(&q.body, env);
        }
        let key = self.memo[q.id].as_ref().map(|_| q.free.iter().map(|&s| env[s]).collect::<Vec<u64>>());
        if let (Some(m), Some(k)) = (&self.memo[q.id], &key) {
            if let Some(&v) = m.lock().unwrap().get(k) {
                return v;
            }
        }
        let dom = self.domain(q);
        let result = if self.parallel && q.sort == Sort::Path {
            let base = env.clone();
            par::any(&dom, true, |&val| {
                let mut e = base.clone();
                e[q.slot] = val;
                self.eval(&q.body, &mut e)
            })
        } else {
            let saved = env[q.slot];
            let mut found = false;
            for val in dom {
                env[q.slot] = val;
                if self.eval(&q.body, env) {
                    found = true;
                    break;
                }
            }
            env[q.slot] = saved;
            found
        };
        if let (Some(m), Some(k)) = (&self.memo[q.id], key) {
            m.lock().unwrap().insert(k, result);
        }
        result
    }

    /// Values for the leading existential block, if the formula holds.
    fn witness(&self, env: &[u64]) -> Option<Vec<u64>> {
        let mut prefix: Vec<&Quant> = Vec::new();
        let mut f = &self.c.ir;
        while let Ir::Exists(q) = f {
            prefix.push(q);
            f = &q.body;
        }
        self.search(&prefix, 0, f, env.to_vec())
    }

    fn search(&self, prefix: &[&Quant], i: usize, body: &Ir, mut env: Vec<u64>) -> Option<Vec<u64>> {
        if i == prefix.len() {
            return self.eval(body, &mut env).then_some(env);
        }
        let q = prefix[i];
        if !q.occurs {
            return self.search(prefix, i + 1, body, env);
        }
        let dom = self.domain(q);
        let par = self.parallel && q.sort == Sort::Path;
        par::find_map_first(&dom, par, |&val| {
            let mut e = env.clone();
            e[q.slot] = val;
            self.search(prefix, i + 1, body, e)
        })
    }

    fn valuation(&self, env: &[u64], slots: impl Iterator<Item = usize>) -> Valuation {
        let mut out = Valuation::new();
        for s in slots {
            let name = self.c.slot_name[s].clone();
            match self.c.slot_sort[s] {
                Sort::Node => {
                    out.nodes.insert(name, env[s] as usize);
                }
                Sort::Path => {
                    out.paths.insert(name, self.arena[env[s] as usize].clone());
                }
                Sort::Reg => {
                    out.regs.insert(name, self.space.decode(env[s]));
                }
            }
        }
        out
    }
}

/// (G, α) ⊨ φ with every path quantifier ranging over paths of at most
/// `opts.bound` edges and register quantifiers over (D ∪ {⊥})^k.
pub fn rl_eval_brute(g: &DataGraph, f: &Formula, k: usize, alpha: &Valuation, opts: &BruteOptions) -> Result<bool> {
    let mut b = Brute::new(g, f, k, opts)?;
    let mut env = b.initial_env(alpha)?;
    let ir = b.c.ir.clone();
    Ok(b.eval(&ir, &mut env))
}

/// Like [`rl_eval_brute`], and when the formula holds also returns values for
/// its leading block of existential quantifiers.
pub fn rl_eval_brute_witness(
    g: &DataGraph,
    f: &Formula,
    k: usize,
    alpha: &Valuation,
    opts: &BruteOptions,
) -> Result<Option<Valuation>> {
    let mut b = Brute::new(g, f, k, opts)?;
    let env = b.initial_env(alpha)?;
    let mut prefix = Vec::new();
    let mut cur = &b.c.ir;
    while let Ir::Exists(q) = cur {
        if q.occurs {
            prefix.push(q.slot);
        }
        cur = &q.body;
    }
    Ok(b.witness(&env).map(|e| b.valuation(&e, prefix.into_iter())))
}

/// Strips the leading existential block of `f`.
pub fn existential_prefix(f: &Formula) -> (Vec<(Sort, String)>, &Formula) {
    let mut vars = Vec::new();
    let mut cur = f;
    while let Formula::Exists(s, v, body) = cur {
        vars.push((*s, v.clone()));
        cur = body;
    }
    (vars, cur)
}

/// Independent re-check of a witness for the leading existential block:
/// every path must be a walk of `g`, every register tuple must range over
/// D ∪ {⊥}, and the matrix must hold under α extended by the witness.
pub fn verify_witness(
    g: &DataGraph,
    f: &Formula,
    k: usize,
    alpha: &Valuation,
    witness: &Valuation,
    opts: &BruteOptions,
) -> Result<bool> {
    for p in witness.paths.values() {
        if validate_path(g, &p.nodes, &p.labels).is_err() {
            return Ok(false);
        }
    }
    for a in witness.regs.values() {
        if a.len() != k || a.iter().flatten().any(|&d| d as usize >= g.value_count()) {
            return Ok(false);
        }
    }
    if witness.nodes.values().any(|&v| v >= g.node_count()) {
        return Ok(false);
    }
    let (vars, matrix) = existential_prefix(f);
    let mut wrapped = matrix.clone();
    // quantifiers of the prefix that the witness does not fix stay quantified
    for (s, v) in vars.iter().rev() {
        let fixed = match s {
            Sort::Node => witness.nodes.contains_key(v),
            Sort::Path => witness.paths.contains_key(v),
            Sort::Reg => witness.regs.contains_key(v),
        };
        if !fixed {
            wrapped = Formula::exists(*s, v, wrapped);
        }
    }
    let bound = opts.bound.max(witness.max_path_len());
    rl_eval_brute(g, &wrapped, k, &alpha.merged(witness), &BruteOptions { bound, ..*opts })
}
