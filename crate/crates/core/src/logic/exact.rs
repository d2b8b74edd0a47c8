//! Exact RL evaluation over a finite representative structure.
//!
//! Every path has one profile: the set of triples (i, λ, λ′) with
//! λ′ ∈ path_parse(e_i, ρ, λ). For every start u, end v and realized profile
//! E the structure keeps the T canonically smallest u⇝v paths with profile
//! E, where T is the quantifier count of φ_τ plus the number of free path
//! variables. Beyond T paths per class the first-order game on φ_τ cannot
//! tell the structure from the full path structure.

use rustc_hash::FxHashMap;

use super::fo::{fo_translate, fo_var, FoFormula};
use super::{budget_from_env, Valuation, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::graph::{validate_path, DataGraph, NodeId, Path};
use crate::par;
use crate::query::{free_vars_rl, Formula, Rem, Var};
use crate::rem::product::{canonical_cmp, top_paths};
use crate::rem::{Code, Product, Profile, Program, RegSpace, BOTTOM};

/// Paths from `u` to `v` sharing one profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Class {
    pub u: NodeId,
    pub v: NodeId,
    pub profile: Profile,
    /// min(T, number of paths in the class)
    pub count: usize,
    /// Indices into [`RepresentativeStructure::paths`], canonical order.
    pub paths: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RepresentativeStructure {
    pub space: RegSpace,
    pub rems: Vec<Rem>,
    pub threshold: usize,
    pub classes: Vec<Class>,
    pub paths: Vec<Path>,
    /// Profile of every path in `paths`.
    pub profiles: Vec<Profile>,
}

impl RepresentativeStructure {
    /// Length of the longest stored path. Bounded evaluation with this bound
    /// sees at least min(T, count) paths of every class, so it agrees with
    /// the exact semantics.
    pub fn completeness_bound(&self) -> usize {
        self.paths.iter().map(Path::len).max().unwrap_or(0)
    }

    fn path_index(&self, p: &Path) -> Option<usize> {
        self.paths.iter().position(|q| q == p)
    }
}

fn programs<'g>(g: &'g DataGraph, rems: &[Rem], space: RegSpace) -> Result<Vec<Program<'g>>> {
    rems.iter()
        .map(|e| {
            if e.max_register() > space.k {
                return Err(Error::RegisterOutOfRange(e.max_register(), space.k));
            }
            Program::with_space(g, e, space)
        })
        .collect()
}

/// The profile of ρ over `rems`, by parsing ρ once per atom and start tuple.
pub fn path_profile(g: &DataGraph, rho: &Path, rems: &[Rem], k: usize) -> Result<Profile> {
    let rho = validate_path(g, &rho.nodes, &rho.labels)?;
    let space = RegSpace::new(k, g.value_count())?;
    let progs = programs(g, rems, space)?;
    let mut out = Profile::new();
    for (i, p) in progs.iter().enumerate() {
        for l in space.all() {
            for m in p.path_parse(&rho, l) {
                out.push((i as u32, l, m));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

/// min(t, number of u⇝v paths whose profile over `rems` is exactly `e`).
pub fn count_paths_threshold(
    g: &DataGraph,
    rems: &[Rem],
    k: usize,
    u: NodeId,
    v: NodeId,
    e: &Profile,
    t: usize,
) -> Result<usize> {
    let space = RegSpace::new(k, g.value_count())?;
    let progs = programs(g, rems, space)?;
    let starts = vec![space.all().collect(); progs.len()];
    let mut prod = Product::new(g, progs.iter().collect(), starts, budget_from_env(DEFAULT_BUDGET)?);
    prod.count_paths_threshold(u, v, e, t)
}

/// T = quantifier count of φ_τ plus the number of free path variables.
pub fn threshold(f: &Formula) -> usize {
    let free_paths = free_vars_rl(f).iter().filter(|v| matches!(v, Var::Path(_))).count();
    (fo_translate(f).formula.quantifier_count() + free_paths).max(1)
}

/// Builds M′ for φ and α with the budget from `DATAPATH_BUDGET`.
pub fn build_representative(g: &DataGraph, f: &Formula, k: usize, alpha: &Valuation) -> Result<RepresentativeStructure> {
    build_representative_with(g, f, k, alpha, budget_from_env(DEFAULT_BUDGET)?, par::DEFAULT_PARALLEL)
}

pub fn build_representative_with(
    g: &DataGraph,
    f: &Formula,
    k: usize,
    alpha: &Valuation,
    budget: usize,
    parallel: bool,
) -> Result<RepresentativeStructure> {
    let rems = fo_translate(f).rems;
    let t = threshold(f);
    let space = RegSpace::new(k, g.value_count())?;
    let progs = programs(g, &rems, space)?;
    let nodes: Vec<NodeId> = g.nodes().collect();
    let per_start = par::map(&nodes, parallel, |&u| -> Result<Vec<(NodeId, Profile, Vec<Path>)>> {
        let starts = vec![space.all().collect(); progs.len()];
        let mut prod = Product::new(g, progs.iter().collect(), starts, budget);
        let ex = prod.explore(u)?;
        let tops = top_paths(&ex, t, None);
        let mut groups: FxHashMap<(NodeId, Profile), Vec<Path>> = FxHashMap::default();
        for (i, ps) in tops.into_iter().enumerate() {
            let (v, sid) = ex.nodes[i];
            let prof = prod.profile(sid).clone();
            groups.entry((v, prof)).or_default().extend(ps);
        }
        let mut out: Vec<(NodeId, Profile, Vec<Path>)> = groups
            .into_iter()
            .map(|((v, prof), mut ps)| {
                ps.sort_by(canonical_cmp);
                ps.truncate(t);
                (v, prof, ps)
            })
            .collect();
        out.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        Ok(out)
    });
    let mut m = RepresentativeStructure { space, rems, threshold: t, classes: Vec::new(), paths: Vec::new(), profiles: Vec::new() };
    for (u, groups) in nodes.iter().zip(per_start) {
        for (v, profile, ps) in groups? {
            let mut idx = Vec::new();
            for p in ps {
                m.paths.push(p);
                m.profiles.push(profile.clone());
                idx.push(m.paths.len() - 1);
            }
            if m.paths.len() > budget {
                return Err(Error::ResourceLimit(format!("representative structure exceeds {budget} paths")));
            }
            m.classes.push(Class { u: *u, v, profile, count: idx.len(), paths: idx });
        }
    }
    // the paths assigned by α belong to the structure as constants
    for rho in alpha.paths.values() {
        let rho = validate_path(g, &rho.nodes, &rho.labels)?;
        if m.path_index(&rho).is_none() {
            let prof = path_profile(g, &rho, &m.rems, k)?;
            m.paths.push(rho);
            m.profiles.push(prof);
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Elem {
    Node(NodeId),
    Path(usize),
    Reg(Code),
}

struct Eval<'a> {
    g: &'a DataGraph,
    m: &'a RepresentativeStructure,
    parallel: bool,
}

impl Eval<'_> {
    fn get(env: &[(String, Elem)], x: &str) -> Elem {
        env.iter().rev().find(|(n, _)| n == x).map(|e| e.1).expect("variables are bound")
    }

    fn holds(&self, f: &FoFormula, env: &mut Vec<(String, Elem)>) -> bool {
        match f {
            FoFormula::Nodes(x) => matches!(Self::get(env, x), Elem::Node(_)),
            FoFormula::Paths(x) => matches!(Self::get(env, x), Elem::Path(_)),
            FoFormula::Registers(x) => matches!(Self::get(env, x), Elem::Reg(_)),
            FoFormula::Endpoints(x, p, y) => match (Self::get(env, x), Self::get(env, p), Self::get(env, y)) {
                (Elem::Node(a), Elem::Path(i), Elem::Node(b)) => {
                    let rho = &self.m.paths[i];
                    rho.first() == a && rho.last() == b
                }
                _ => false,
            },
            FoFormula::Rel(r, p, l, n) => match (Self::get(env, p), Self::get(env, l), Self::get(env, n)) {
                (Elem::Path(i), Elem::Reg(a), Elem::Reg(b)) => {
                    self.m.profiles[i].binary_search(&(*r as u32, a, b)).is_ok()
                }
                _ => false,
            },
            FoFormula::Eq(x, y) => Self::get(env, x) == Self::get(env, y),
            FoFormula::EqBot(x) => Self::get(env, x) == Elem::Reg(BOTTOM),
            FoFormula::Not(a) => !self.holds(a, env),
            FoFormula::Or(a, b) => self.holds(a, env) || self.holds(b, env),
            FoFormula::And(a, b) => self.holds(a, env) && self.holds(b, env),
            FoFormula::Exists(x, body) => {
                let dom: Vec<Elem> = match &**body {
                    FoFormula::And(guard, _) => match &**guard {
                        FoFormula::Nodes(y) if y == x => self.nodes(),
                        FoFormula::Paths(y) if y == x => self.paths(),
                        FoFormula::Registers(y) if y == x => self.regs(),
                        _ => self.all(),
                    },
                    _ => self.all(),
                };
                let is_path = matches!(dom.first(), Some(Elem::Path(_)));
                if self.parallel && is_path {
                    let base = env.clone();
                    par::any(&dom, true, |&e| {
                        let mut env = base.clone();
                        env.push((x.clone(), e));
                        self.holds(body, &mut env)
                    })
                } else {
                    dom.into_iter().any(|e| {
                        env.push((x.clone(), e));
                        let r = self.holds(body, env);
                        env.pop();
                        r
                    })
                }
            }
        }
    }

    fn nodes(&self) -> Vec<Elem> {
        self.g.nodes().map(Elem::Node).collect()
    }

    fn paths(&self) -> Vec<Elem> {
        (0..self.m.paths.len()).map(Elem::Path).collect()
    }

    fn regs(&self) -> Vec<Elem> {
        self.m.space.all().map(Elem::Reg).collect()
    }

    fn all(&self) -> Vec<Elem> {
        let mut v = self.nodes();
        v.extend(self.paths());
        v.extend(self.regs());
        v
    }
}

/// (G, α) ⊨ φ under the unbounded semantics, decided as M′, α ⊨ φ_τ.
pub fn rl_eval_exact(g: &DataGraph, f: &Formula, k: usize, alpha: &Valuation) -> Result<bool> {
    let m = build_representative(g, f, k, alpha)?;
    eval_on(g, f, &m, alpha, par::DEFAULT_PARALLEL)
}

/// Evaluates φ_τ on a structure already built for φ and α.
pub fn eval_on(g: &DataGraph, f: &Formula, m: &RepresentativeStructure, alpha: &Valuation, parallel: bool) -> Result<bool> {
    let mut env = Vec::new();
    for v in free_vars_rl(f) {
        let missing = |x: &str| Error::UnassignedVariable(x.to_string());
        let (name, e) = match v {
            Var::Node(x) => {
                let n = *alpha.nodes.get(&x).ok_or_else(|| missing(&x))?;
                if n >= g.node_count() {
                    return Err(Error::UndeclaredNode(n.to_string()));
                }
                (fo_var(crate::query::Sort::Node, &x), Elem::Node(n))
            }
            Var::Path(x) => {
                let rho = alpha.paths.get(&x).ok_or_else(|| missing(&x))?;
                let i = m.path_index(rho).ok_or_else(|| Error::Invalid(format!("path `{x}` is not in the structure")))?;
                (fo_var(crate::query::Sort::Path, &x), Elem::Path(i))
            }
            Var::Reg(x) => {
                let a = alpha.regs.get(&x).ok_or_else(|| missing(&x))?;
                if a.len() != m.space.k || a.iter().flatten().any(|&d| d as usize >= g.value_count()) {
                    return Err(Error::Invalid(format!("register tuple for `{x}` is not over D ∪ {{⊥}}^{}", m.space.k)));
                }
                (fo_var(crate::query::Sort::Reg, &x), Elem::Reg(m.space.encode(a)))
            }
            Var::Pos(..) => unreachable!("RL formulas have no positions"),
        };
        env.push((name, e));
    }
    let tr = fo_translate(f);
    Ok(Eval { g, m, parallel }.holds(&tr.formula, &mut env))
}
