//! The single-register RL gadget for polynomial-space machines.
//!
//! A run C₀ C₁ … is spelled `s e_{C₀} # e_{C₁} # …`, with a configuration on
//! m = f₀·n cells written `N d₁ N d₂ … N d_m` and each d_i ∈ (Q ∪ {$}) × Σ.
//! I_w spells `s e_{C₀}`; H spells one configuration per pass and returns to
//! its start over `#`. The node before the i-th cell letter carries the data
//! value i in both I_w and H, so one register can find "the same cell" in the
//! next configuration. φ = ∃π ¬χ(π), where χ lists every way a label can
//! fail to start with an accepting run.

use crate::error::{Error, Result};
use crate::graph::{DataValue, GraphBuilder};
use crate::query::{Cond, Formula, Rem, Sort};

use super::tm::{tm_simulate, Move, TmOutcome, TuringMachine};
use super::{check_size, letters, minus, pair_label, GadgetBundle, GadgetFormula, GadgetMeta};

/// Alphabets of the gadget for a machine.
pub struct Letters {
    /// (Q ∪ {$}) × Σ
    pub delta: Vec<String>,
    /// {q_f} × Σ
    pub fin: Vec<String>,
    /// Δ ∪ {s, N, #}
    pub lambda: Vec<String>,
}

pub fn gadget_letters(m: &TuringMachine) -> Letters {
    let delta: Vec<String> = std::iter::once("$".to_string())
        .chain(m.states.iter().cloned())
        .flat_map(|q| m.sigma.iter().map(move |a| pair_label(&q, a)))
        .collect();
    let fin = m.sigma.iter().map(|a| pair_label(&m.accept, a)).collect();
    let mut lambda = delta.clone();
    lambda.extend(["s", "N", "#"].map(String::from));
    Letters { delta, fin, lambda }
}

/// Path length covering the encoding of `configs` configurations after C₀.
pub fn run_length(cells: usize, configs: usize) -> usize {
    1 + 2 * cells + configs * (2 * cells + 2)
}

/// The instance bound used for bounded evaluation: the encoding of the
/// simulated run, plus one more configuration when the run does not accept.
pub fn instance_bound(m: &TuringMachine, w: &[String], f0: usize) -> usize {
    let cells = f0 * w.len();
    let r = tm_simulate(m, w, cells, config_count(m, cells));
    match r.outcome {
        TmOutcome::Accept => run_length(cells, r.steps),
        _ => run_length(cells, r.steps + 1),
    }
}

/// Number of distinct configurations on `cells` cells; no accepting run is longer.
pub fn config_count(m: &TuringMachine, cells: usize) -> usize {
    let tapes = (m.sigma.len() as u64).checked_pow(cells as u32).unwrap_or(u64::MAX);
    tapes.saturating_mul((m.states.len() * cells) as u64).min(usize::MAX as u64) as usize
}

fn seq(parts: Vec<Rem>) -> Rem {
    Rem::seq(parts)
}

fn lit(s: &str) -> Rem {
    Rem::letter(s)
}

fn any_star() -> Rem {
    Rem::star(Rem::Any)
}

/// The REMs whose disjunction (each read from ⊥) is χ.
pub fn chi_rems(m: &TuringMachine) -> Vec<(String, Rem)> {
    let l = gadget_letters(m);
    let hash = vec!["#".to_string()];
    let pre = Rem::star(letters(&minus(&l.lambda, &l.fin)));
    let not_hash = Rem::star(letters(&minus(&l.lambda, &hash)));
    // rest of the current configuration (no final letter), #, then inside the next one
    let mid = || {
        let mut drop = l.fin.clone();
        drop.push("#".into());
        seq(vec![Rem::star(letters(&minus(&l.lambda, &drop))), lit("#"), not_hash.clone()])
    };
    let same = || Cond::Eq(1);
    let r_move = m.moving(Move::R).into_iter().map(|(q, a)| pair_label(&q, &a)).collect::<Vec<_>>();
    let l_move = m.moving(Move::L).into_iter().map(|(q, a)| pair_label(&q, &a)).collect::<Vec<_>>();

    let mut out = vec![
        ("start".to_string(), seq(vec![letters(&minus(&l.lambda, &["s".to_string()])), any_star()])),
        ("no-final".to_string(), pre.clone()),
    ];
    for ((q, a), (q2, b, mv)) in &m.delta {
        let qa = pair_label(q, a);
        let unscanned = pair_label("$", a);
        let target = pair_label(q2, b);
        // the scanned cell keeps its letter and loses the head
        out.push((
            format!("stay {qa}"),
            seq(vec![
                pre.clone(),
                Rem::store(vec![1], seq(vec![Rem::test(seq(vec![lit(&qa), mid()]), same()), letters(&minus(&l.delta, &[unscanned]))])),
                any_star(),
            ]),
        ));
        match mv {
            Move::R => {
                out.push((
                    format!("move {qa}"),
                    seq(vec![
                        pre.clone(),
                        Rem::store(vec![1], Rem::test(seq(vec![lit(&qa), mid()]), same())),
                        letters(&l.delta),
                        lit("N"),
                        letters(&minus(&l.delta, &[target])),
                        any_star(),
                    ]),
                ));
                out.push((
                    format!("edge {qa}"),
                    seq(vec![pre.clone(), lit(&qa), Rem::union(lit("N"), Rem::Eps), lit("#"), any_star()]),
                ));
            }
            Move::L => {
                out.push((
                    format!("move {qa}"),
                    seq(vec![
                        pre.clone(),
                        Rem::store(
                            vec![1],
                            Rem::test(seq(vec![letters(&minus(&l.delta, &l.fin)), lit("N"), lit(&qa), mid()]), same()),
                        ),
                        letters(&minus(&l.delta, &[target])),
                        any_star(),
                    ]),
                ));
                out.push((
                    format!("edge {qa}"),
                    seq(vec![pre.clone(), Rem::union(lit("s"), lit("#")), lit("N"), lit(&qa), any_star()]),
                ));
            }
        }
    }
    for a in &m.sigma {
        let unscanned = pair_label("$", a);
        let mut left_drop = r_move.clone();
        left_drop.extend(l.fin.iter().cloned());
        let mut right_drop = l_move.clone();
        right_drop.extend(l.fin.iter().cloned());
        let left = Rem::alt([letters(&minus(&l.delta, &left_drop)), lit("s"), lit("#")]);
        let right = Rem::union(
            seq(vec![lit("N"), letters(&minus(&l.delta, &right_drop)), mid()]),
            seq(vec![Rem::union(lit("N"), Rem::Eps), lit("#"), not_hash.clone()]),
        );
        out.push((
            format!("keep {a}"),
            seq(vec![
                pre.clone(),
                left,
                lit("N"),
                Rem::store(vec![1], Rem::test(seq(vec![lit(&unscanned), right]), same())),
                letters(&minus(&l.delta, &[unscanned])),
                any_star(),
            ]),
        ));
    }
    out
}

/// χ(π) as a disjunction of `∃ν e(π, ⊥, ν)` over [`chi_rems`].
pub fn chi(m: &TuringMachine, p: &str) -> Formula {
    let atoms = chi_rems(m).into_iter().map(|(_, e)| Formula::atom(e, p, "l", "m")).reduce(Formula::or).unwrap();
    Formula::exists(
        Sort::Reg,
        "l",
        Formula::and(Formula::RegBot("l".into()), Formula::exists(Sort::Reg, "m", atoms)),
    )
}

pub fn gen_rl_pspace(m: &TuringMachine, w: &[String], f0: usize) -> Result<GadgetBundle> {
    let n = w.len();
    if n == 0 || f0 == 0 {
        return Err(Error::Invalid("the PSPACE gadget needs a nonempty word and f0 ≥ 1".into()));
    }
    if let Some(a) = w.iter().find(|a| !m.sigma.contains(a)) {
        return Err(Error::Invalid(format!("input symbol `{a}` is not in the machine's alphabet")));
    }
    let cells = f0 * n;
    let l = gadget_letters(m);
    check_size(2 + 2 * cells + 2 + cells * (1 + l.delta.len()))?;

    let mut b = GraphBuilder::new();
    for x in &l.lambda {
        b.symbol(x);
    }
    let named = |b: &mut GraphBuilder, name: String| b.node(&name, Some(DataValue::Str(name.clone()))).unwrap();
    let cell = |b: &mut GraphBuilder, name: String, i: usize| b.node(&name, Some(DataValue::Int(i as i64))).unwrap();

    // I_w
    let init = named(&mut b, "iw_i".into());
    let mut at = named(&mut b, "iw_S".into());
    b.edge(init, "s", at);
    for i in 1..=cells {
        let p = cell(&mut b, format!("iw_p{i}"), i);
        b.edge(at, "N", p);
        let d = match (i, w.get(i - 1)) {
            (1, Some(a)) => pair_label(&m.initial, a),
            (_, Some(a)) => pair_label("$", a),
            _ => pair_label("$", super::tm::BLANK),
        };
        at = named(&mut b, format!("iw_v{i}"));
        b.edge(p, &d, at);
    }

    // H
    let hs = named(&mut b, "h_s".into());
    b.edge(at, "#", hs);
    let mut prev = vec![hs];
    for i in 1..=cells {
        let p = cell(&mut b, format!("h_p{i}"), i);
        for &x in &prev {
            b.edge(x, "N", p);
        }
        prev = l
            .delta
            .iter()
            .enumerate()
            .map(|(j, d)| {
                let x = named(&mut b, format!("h_x{i}_{j}"));
                b.edge(p, d, x);
                x
            })
            .collect();
    }
    let hf = named(&mut b, "h_f".into());
    for &x in &prev {
        b.edge(x, "N", hf);
    }
    b.edge(hf, "#", hs);

    let formula = Formula::exists(Sort::Path, "p", Formula::not(chi(m, "p")));
    Ok(GadgetBundle {
        graph: b.build(),
        formula: Some(GadgetFormula::Rl { formula, registers: 1 }),
        meta: GadgetMeta {
            tag: "rl-pspace",
            k: 1,
            n,
            f0,
            bound: Some(instance_bound(m, w, f0)),
            notes: vec![
                "cell nodes of I_w and H share the values 1..f0·n".into(),
                format!("complete bound for any machine run: {}", run_length(cells, config_count(m, cells))),
            ],
        },
    })
}
