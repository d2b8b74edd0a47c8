//! Walk logic with path quantifiers bounded by a length `L`.

use super::Valuation;
use crate::error::{Error, Result};
use crate::graph::{validate_path, DataGraph, Path, SymId};
use crate::par;
use crate::query::{free_vars_wl, Var, WlFormula};

const UNSET: u64 = u64::MAX;

#[derive(Debug)]
enum W {
    Edge(Option<SymId>, usize, usize),
    Less(usize, usize),
    Sim(usize, usize),
    Not(Box<W>),
    Or(Box<W>, Box<W>),
    And(Box<W>, Box<W>),
    /// position slot, path slot, body, whether the position occurs free in the body
    ExistsPos(usize, usize, Box<W>, bool),
    /// path slot, body, whether the body mentions the path
    ExistsPath(usize, Box<W>, bool),
}

struct Ctx<'a> {
    g: &'a DataGraph,
    paths: Vec<(String, usize)>,
    positions: Vec<(String, usize)>,
    /// path slot of each position slot
    pos_path: Vec<usize>,
    nslots: usize,
}

impl Ctx<'_> {
    fn fresh(&mut self) -> usize {
        self.pos_path.push(usize::MAX);
        self.nslots += 1;
        self.nslots - 1
    }

    fn pos(&self, t: &str) -> Result<usize> {
        self.positions
            .iter()
            .rev()
            .find(|(n, _)| n == t)
            .map(|x| x.1)
            .ok_or_else(|| Error::UnassignedVariable(t.to_string()))
    }

    /// Returns the compiled formula and the position slots free in it.
    fn go(&mut self, f: &WlFormula) -> Result<(W, Vec<usize>)> {
        Ok(match f {
            WlFormula::Edge(a, t1, t2) => {
                let (x, y) = (self.pos(t1)?, self.pos(t2)?);
                (W::Edge(self.g.symbol(a), x, y), vec![x, y])
            }
            WlFormula::Less(t1, t2) => {
                let (x, y) = (self.pos(t1)?, self.pos(t2)?);
                (W::Less(x, y), vec![x, y])
            }
            WlFormula::Sim(t1, t2) => {
                let (x, y) = (self.pos(t1)?, self.pos(t2)?);
                (W::Sim(x, y), vec![x, y])
            }
            WlFormula::Not(a) => {
                let (w, s) = self.go(a)?;
                (W::Not(Box::new(w)), s)
            }
            WlFormula::Or(a, b) | WlFormula::And(a, b) => {
                let (x, mut s) = self.go(a)?;
                let (y, t) = self.go(b)?;
                s.extend(t);
                let w = if matches!(f, WlFormula::Or(..)) { W::Or(Box::new(x), Box::new(y)) } else { W::And(Box::new(x), Box::new(y)) };
                (w, s)
            }
            WlFormula::ExistsPos(t, p, a) => {
                // an unbound path name gets its own slot, filled by case 3
                let (ps, scoped) = match self.paths.iter().rev().find(|(n, _)| n == p) {
                    Some(&(_, s)) => (s, false),
                    None => {
                        let s = self.fresh();
                        self.paths.push((p.clone(), s));
                        (s, true)
                    }
                };
                let ts = self.fresh();
                self.pos_path[ts] = ps;
                self.positions.push((t.clone(), ts));
                let r = self.go(a);
                self.positions.pop();
                if scoped {
                    self.paths.pop();
                }
                let (body, mut s) = r?;
                let occurs = s.contains(&ts);
                s.retain(|&x| x != ts);
                (W::ExistsPos(ts, ps, Box::new(body), occurs), s)
            }
            WlFormula::ExistsPath(p, a) => {
                let ps = self.fresh();
                self.paths.push((p.clone(), ps));
                let r = self.go(a);
                self.paths.pop();
                let (body, mut s) = r?;
                // π occurs in ψ as soon as ψ quantifies a position of sort π
                let occurs = mentions(&body, ps);
                s.retain(|&x| self.pos_path[x] != ps);
                (W::ExistsPath(ps, Box::new(body), occurs), s)
            }
        })
    }
}

fn mentions(f: &W, p: usize) -> bool {
    match f {
        W::Edge(..) | W::Less(..) | W::Sim(..) => false,
        W::Not(a) | W::ExistsPath(_, a, _) => mentions(a, p),
        W::Or(a, b) | W::And(a, b) => mentions(a, p) || mentions(b, p),
        W::ExistsPos(_, q, a, _) => *q == p || mentions(a, p),
    }
}

struct Eval<'a> {
    g: &'a DataGraph,
    arena: Vec<Path>,
    /// ids of the paths with at most L edges
    domain: Vec<u64>,
    pos_path: Vec<usize>,
    parallel: bool,
}

impl Eval<'_> {
    fn node_at(&self, env: &[u64], t: usize) -> usize {
        let p = &self.arena[env[self.pos_path[t]] as usize];
        p.nodes[env[t] as usize]
    }

    fn eval(&self, f: &W, env: &mut Vec<u64>) -> bool {
        match f {
            W::Edge(a, x, y) => {
                let Some(a) = a else { return false };
                let p = &self.arena[env[self.pos_path[*x]] as usize];
                env[*y] == env[*x] + 1 && p.labels[env[*x] as usize] == *a
            }
            W::Less(x, y) => env[*x] < env[*y],
            W::Sim(x, y) => self.g.kappa(self.node_at(env, *x)) == self.g.kappa(self.node_at(env, *y)),
            W::Not(a) => !self.eval(a, env),
            W::Or(a, b) => self.eval(a, env) || self.eval(b, env),
            W::And(a, b) => self.eval(a, env) && self.eval(b, env),
            W::ExistsPos(t, p, body, occurs) => {
                if !occurs {
                    return self.eval(body, env);
                }
                if env[*p] != UNSET {
                    let n = self.arena[env[*p] as usize].positions() as u64;
                    let saved = env[*t];
                    let mut found = false;
                    for i in 0..n {
                        env[*t] = i;
                        if self.eval(body, env) {
                            found = true;
                            break;
                        }
                    }
                    env[*t] = saved;
                    found
                } else {
                    let base = env.clone();
                    par::any(&self.domain, self.parallel, |&id| {
                        let mut e = base.clone();
                        e[*p] = id;
                        (0..self.arena[id as usize].positions() as u64).any(|i| {
                            e[*t] = i;
                            self.eval(body, &mut e)
                        })
                    })
                }
            }
            W::ExistsPath(p, body, occurs) => {
                if !occurs {
                    return self.eval(body, env);
                }
                let base = env.clone();
                par::any(&self.domain, self.parallel, |&id| {
                    let mut e = base.clone();
                    e[*p] = id;
                    self.eval(body, &mut e)
                })
            }
        }
    }
}

/// The WL satisfaction relation with path quantifiers (`∃π`, and `∃t^π` when
/// π is unassigned) ranging over paths of at most `bound` edges. `declared`
/// names the path of every free position variable; α gives 1-based positions.
pub fn wl_eval_bounded(
    g: &DataGraph,
    f: &WlFormula,
    declared: &[(String, String)],
    alpha: &Valuation,
    bound: usize,
    parallel: bool,
) -> Result<bool> {
    let mut ctx = Ctx { g, paths: Vec::new(), positions: Vec::new(), pos_path: Vec::new(), nslots: 0 };
    let mut arena = Vec::new();
    let mut init: Vec<(usize, u64)> = Vec::new();
    let free = free_vars_wl(f, declared);
    for v in &free {
        if let Var::Path(p) = v {
            if !alpha.paths.contains_key(p) {
                return Err(Error::UnassignedVariable(p.clone()));
            }
        }
    }
    // a path assigned by α also binds `∃t in p` where p is not otherwise free
    for (p, rho) in &alpha.paths {
        let rho = validate_path(g, &rho.nodes, &rho.labels)?;
        if rho.len() > bound && free.contains(&Var::Path(p.clone())) {
            return Err(Error::Invalid(format!("assigned path `{p}` is longer than the bound {bound}")));
        }
        let s = ctx.fresh();
        ctx.paths.push((p.clone(), s));
        arena.push(rho);
        init.push((s, arena.len() as u64 - 1));
    }
    for v in free {
        if let Var::Pos(t, p) = v {
            let i = *alpha.pos.get(&t).ok_or_else(|| Error::UnassignedVariable(t.clone()))?;
            let ps = ctx.paths.iter().find(|(n, _)| *n == p).map(|x| x.1).ok_or_else(|| Error::UnassignedVariable(p.clone()))?;
            let len = arena[init.iter().find(|x| x.0 == ps).unwrap().1 as usize].positions();
            if i == 0 || i > len {
                return Err(Error::PositionOutOfRange(t));
            }
            let s = ctx.fresh();
            ctx.pos_path[s] = ps;
            ctx.positions.push((t, s));
            init.push((s, i as u64 - 1));
        }
    }
    let (w, _) = ctx.go(f)?;
    let mut domain_paths: Vec<Path> = g.nodes().map(Path::single).collect();
    let mut level = domain_paths.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &level {
            for &(a, x) in g.out(p.last()) {
                let mut q = p.clone();
                q.push(a, x);
                next.push(q);
            }
        }
        if next.is_empty() {
            break;
        }
        domain_paths.extend(next.iter().cloned());
        level = next;
    }
    let base = arena.len() as u64;
    let domain = (base..base + domain_paths.len() as u64).collect();
    arena.extend(domain_paths);
    let mut env = vec![UNSET; ctx.nslots];
    for (s, v) in init {
        env[s] = v;
    }
    let ev = Eval { g, arena, domain, pos_path: ctx.pos_path, parallel };
    Ok(ev.eval(&w, &mut env))
}
