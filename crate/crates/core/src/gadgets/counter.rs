//! k-counter graphs G^Δ_{k,n} and the walk-logic formulas over 1-counters.
//!
//! Level 1 is a chain of f₀·n stages. A counter path picks one Δ-labelled
//! branch per stage, so with Δ = {a1, b1} it spells an f₀n-bit number; the
//! first stage is the most significant bit and a1 is the digit 0. Level k > 1
//! wraps G^{Σ_{k−1}}_{k−1,n} (Σ_j = {a_j, b_j}) with an exit edge, a fan of
//! one edge per letter of Δ, and a back edge to the inner graph.

use crate::error::{Error, Result};
use crate::graph::{DataGraph, DataValue, GraphBuilder, NodeId, Path};
use crate::query::WlFormula;

use super::{check_size, follow};

/// Σ_k = {a_k, b_k}.
pub fn sigma(k: usize) -> Vec<String> {
    vec![format!("a{k}"), format!("b{k}")]
}

pub(crate) fn node_estimate(k: usize, bits: usize, delta: usize) -> usize {
    if k <= 1 {
        4 + bits * (1 + delta)
    } else {
        4 + node_estimate(k - 1, bits, 2)
    }
}

/// Adds a copy of G^Δ_{k,n} to `b` and returns its initial and final node.
/// Level-1 nodes take the value `shared` + their local name when `shared`
/// is given, so that all copies agree on ∼; every other node gets its own
/// name as value.
pub(crate) fn counter_into(
    b: &mut GraphBuilder,
    k: usize,
    bits: usize,
    delta: &[String],
    prefix: &str,
    shared: Option<&str>,
) -> (NodeId, NodeId) {
    let node = |b: &mut GraphBuilder, local: String, level1: bool| {
        let name = format!("{prefix}{local}");
        let value = match shared {
            Some(tag) if level1 => DataValue::Str(format!("{tag}{local}")),
            _ => DataValue::Str(name.clone()),
        };
        b.node(&name, Some(value)).expect("gadget node names are unique")
    };
    if k == 1 {
        let init = node(b, "i".into(), true);
        let s = node(b, "S".into(), true);
        b.edge(init, "i1", s);
        let mut prev = vec![s];
        for j in 1..=bits {
            let c = node(b, format!("c{j}"), true);
            for &p in &prev {
                b.edge(p, "N", c);
            }
            prev = delta
                .iter()
                .enumerate()
                .map(|(x, d)| {
                    let t = node(b, format!("c{j}_{x}"), true);
                    b.edge(c, d, t);
                    t
                })
                .collect();
        }
        let f = node(b, "F".into(), true);
        for &p in &prev {
            b.edge(p, "N", f);
        }
        let fin = node(b, "fin".into(), true);
        b.edge(f, "f1", fin);
        return (init, fin);
    }
    let s = node(b, format!("L{k}S"), false);
    let (ii, ifin) = counter_into(b, k - 1, bits, &sigma(k - 1), prefix, shared);
    let si = node(b, format!("L{k}Si"), false);
    let bb = node(b, format!("L{k}b"), false);
    let f = node(b, format!("L{k}F"), false);
    b.edge(s, &format!("i{k}"), ii);
    b.edge(ifin, &format!("x{k}"), si);
    for d in delta {
        b.edge(si, d, bb);
    }
    b.edge(bb, &format!("f{k}"), f);
    b.edge(bb, &format!("y{k}"), ii);
    (s, f)
}

/// G^Δ_{k,n}. Level-1 stages branch on Δ when k = 1 and on Σ₁ otherwise.
pub fn gen_counter_graph(k: usize, n: usize, f0: usize, delta: &[String]) -> Result<DataGraph> {
    if k == 0 || n == 0 || f0 == 0 || delta.is_empty() {
        return Err(Error::Invalid("counter graphs need k, n, f0 ≥ 1 and a nonempty alphabet".into()));
    }
    let bits = f0.checked_mul(n).ok_or_else(|| Error::ResourceLimit("f0·n overflows".into()))?;
    check_size(node_estimate(k, bits, delta.len()))?;
    let mut b = GraphBuilder::new();
    counter_into(&mut b, k, bits, delta, "", None);
    Ok(b.build())
}

/// The path of G^{Σ₁}_{1,n} (built by [`gen_counter_graph`]) encoding `value`.
pub fn counter_path(g: &DataGraph, bits: usize, value: u64) -> Result<Path> {
    if bits < 64 && value >> bits != 0 {
        return Err(Error::Invalid(format!("{value} does not fit in {bits} bits")));
    }
    let start = g.node_id("i").ok_or_else(|| Error::Invalid("not a counter graph".into()))?;
    let mut labels = vec!["i1", "N"];
    for j in (0..bits).rev() {
        labels.push(if (value >> j) & 1 == 1 { "b1" } else { "a1" });
        labels.push("N");
    }
    labels.push("f1");
    follow(g, start, &labels)
}

/// Walk-logic formulas over paths of G^{Σ₁}_{1,n}. Every builder takes the
/// names of the path variables it talks about; position variables are
/// derived from them so that formulas over different paths compose.
#[derive(Debug, Clone, Copy)]
pub struct CounterFormulas {
    pub bits: usize,
}

pub fn gen_counter_formulas_k1(n: usize, f0: usize) -> CounterFormulas {
    CounterFormulas { bits: n * f0 }
}

const LABELS: [&str; 5] = ["i1", "N", "a1", "b1", "f1"];

fn not(f: WlFormula) -> WlFormula {
    WlFormula::not(f)
}

fn and(a: WlFormula, b: WlFormula) -> WlFormula {
    WlFormula::and(a, b)
}

fn implies(a: WlFormula, b: WlFormula) -> WlFormula {
    WlFormula::implies(a, b)
}

fn conj(parts: Vec<WlFormula>) -> WlFormula {
    parts.into_iter().reduce(and).expect("nonempty conjunction")
}

impl CounterFormulas {
    /// E_*(t, u): some edge leads from position t to position u.
    fn step(t: &str, u: &str) -> WlFormula {
        LABELS.iter().map(|a| WlFormula::edge(a, t, u)).reduce(WlFormula::or).unwrap()
    }

    /// t is followed by an edge labelled `a` on `p`.
    fn out(a: &str, t: &str, p: &str) -> WlFormula {
        let u = format!("{t}_o");
        WlFormula::exists_pos(&u, p, WlFormula::edge(a, t, &u))
    }

    fn zero(t: &str, p: &str) -> WlFormula {
        Self::out("a1", t, p)
    }

    fn one(t: &str, p: &str) -> WlFormula {
        Self::out("b1", t, p)
    }

    /// φ_{1,n}(p): p starts with the i₁ edge and ends with the f₁ edge, so it
    /// is a full passage through the counter graph.
    pub fn phi(&self, p: &str) -> WlFormula {
        let (s, t, u) = (format!("{p}_s"), format!("{p}_t"), format!("{p}_u"));
        let first = WlFormula::exists_pos(
            &s,
            p,
            WlFormula::exists_pos(
                &t,
                p,
                and(WlFormula::edge("i1", &s, &t), not(WlFormula::exists_pos(&u, p, WlFormula::less(&u, &s)))),
            ),
        );
        let last = WlFormula::exists_pos(
            &s,
            p,
            WlFormula::exists_pos(
                &t,
                p,
                and(WlFormula::edge("f1", &s, &t), not(WlFormula::exists_pos(&u, p, WlFormula::less(&t, &u)))),
            ),
        );
        and(first, last)
    }

    /// last(p): no stage takes the a₁ branch, i.e. p encodes 2^{f₀n} − 1.
    pub fn last(&self, p: &str) -> WlFormula {
        let s = format!("{p}_s");
        not(WlFormula::exists_pos(&s, p, Self::zero(&s, p)))
    }

    /// num⁰(p): no stage takes the b₁ branch.
    pub fn num0(&self, p: &str) -> WlFormula {
        let s = format!("{p}_s");
        not(WlFormula::exists_pos(&s, p, Self::one(&s, p)))
    }

    /// numⁱ(p) = ∃p′ (φ(p′) ∧ succ(p′, p) ∧ numⁱ⁻¹(p′)).
    pub fn num(&self, i: usize, p: &str) -> WlFormula {
        if i == 0 {
            return self.num0(p);
        }
        let q = format!("{p}_{i}");
        WlFormula::exists_path(&q, conj(vec![self.phi(&q), self.succ(&q, p), self.num(i - 1, &q)]))
    }

    /// eq(p, q): positions on the same node are followed by the same node.
    pub fn eq(&self, p: &str, q: &str) -> WlFormula {
        let (t, t2) = (format!("{p}_e"), format!("{q}_e2"));
        let (u, u2) = (format!("{p}_n"), format!("{q}_n2"));
        let same_next = WlFormula::forall_pos(
            &u,
            p,
            WlFormula::forall_pos(
                &u2,
                q,
                implies(and(Self::step(&t, &u), Self::step(&t2, &u2)), WlFormula::sim(&u, &u2)),
            ),
        );
        WlFormula::forall_pos(&t, p, WlFormula::forall_pos(&t2, q, implies(WlFormula::sim(&t, &t2), same_next)))
    }

    /// succ(p, q): q encodes the successor of the number p encodes. A stage
    /// flips iff every later (less significant) stage of p is a 1.
    pub fn succ(&self, p: &str, q: &str) -> WlFormula {
        let (t, t2, s) = (format!("{p}_c"), format!("{q}_c2"), format!("{p}_r"));
        let flip = not(WlFormula::exists_pos(&s, p, and(WlFormula::less(&t, &s), Self::zero(&s, p))));
        let (z, o) = (Self::zero(&t, p), Self::one(&t, p));
        let (z2, o2) = (Self::zero(&t2, q), Self::one(&t2, q));
        let cases = conj(vec![
            implies(and(z.clone(), flip.clone()), o2.clone()),
            implies(and(o.clone(), flip.clone()), z2.clone()),
            implies(and(z.clone(), not(flip.clone())), z2),
            implies(and(o.clone(), not(flip)), o2),
        ]);
        let body = implies(and(WlFormula::sim(&t, &t2), WlFormula::or(z, o)), cases);
        and(not(self.last(p)), WlFormula::forall_pos(&t, p, WlFormula::forall_pos(&t2, q, body)))
    }

    /// Edges on one counter path: i₁, N, then two per stage, then f₁.
    pub fn path_len(&self) -> usize {
        2 * self.bits + 3
    }
}
