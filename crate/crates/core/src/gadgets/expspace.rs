//! The RL gadget for exponential-space machines.
//!
//! Cells are addressed by m = f₀·n bits: cell i is spelled c(i) d with c(i)
//! the binary form of i − 1 (most significant bit first) and d ∈ (Q∪{$})×Σ.
//! Cells are separated by `&` and configurations by `#`. Bit nodes carry the
//! data values 1..m in H, in every K_i and in K.

use crate::error::{Error, Result};
use crate::graph::{DataValue, GraphBuilder};
use crate::query::{Cond, Formula, Rem, Sort};

use super::pspace::gadget_letters;
use super::tm::{Move, TuringMachine, BLANK};
use super::{check_size, letters, minus, pair_label, GadgetBundle, GadgetFormula, GadgetMeta};

fn seq(parts: Vec<Rem>) -> Rem {
    Rem::seq(parts)
}

fn lit(s: &str) -> Rem {
    Rem::letter(s)
}

fn any_star() -> Rem {
    Rem::star(Rem::Any)
}

fn bit() -> Rem {
    Rem::union(lit("0"), lit("1"))
}

struct Alpha {
    delta: Vec<String>,
    fin: Vec<String>,
    lambda: Vec<String>,
}

fn alpha(m: &TuringMachine) -> Alpha {
    let l = gadget_letters(m);
    let mut lambda = l.delta.clone();
    lambda.extend(["s", "0", "1", "&", "#"].map(String::from));
    Alpha { delta: l.delta, fin: l.fin, lambda }
}

/// The address-successor violations e₄₁ … e₄₄ (one register). Each stores
/// the value of the bit node k, reads to the next address and tests bit k.
pub fn successor_rems(m: &TuringMachine) -> Vec<(String, Rem)> {
    let a = alpha(m);
    let pre = Rem::star(letters(&minus(&a.lambda, &a.fin)));
    let ones = Rem::star(lit("1"));
    let bits = Rem::star(bit());
    let tail = |body: Vec<Rem>, wrong: &str| {
        let mut inner = body;
        inner.extend([letters(&a.delta), lit("&"), bits.clone()]);
        seq(vec![pre.clone(), Rem::store(vec![1], Rem::test(seq(inner), Cond::Eq(1))), lit(wrong), any_star()])
    };
    vec![
        ("e41".into(), tail(vec![ones.clone()], "1")),
        ("e42".into(), tail(vec![lit("0"), ones.clone()], "0")),
        ("e43".into(), tail(vec![lit("1"), ones.clone(), lit("0"), bits.clone()], "0")),
        ("e44".into(), tail(vec![lit("0"), ones, lit("0"), bits.clone()], "1")),
    ]
}

/// The head-movement REMs e^R_{(q,a)} with one register per address bit.
pub fn move_right_rems(m: &TuringMachine, bits_n: usize) -> Vec<(String, Rem)> {
    let a = alpha(m);
    let hash = vec!["#".to_string()];
    let nh = Rem::star(letters(&minus(&a.lambda, &hash)));
    let at_most_one_hash = seq(vec![nh.clone(), Rem::union(lit("#"), Rem::Eps), nh]);
    let mut out = Vec::new();
    for (q, x) in m.moving(Move::R) {
        let (q2, b, _) = m.step(&q, &x).unwrap().clone();
        let mut parts = vec![any_star()];
        for r in 1..=bits_n {
            parts.push(bit());
            parts.push(Rem::store(vec![r], Rem::Eps));
        }
        parts.push(lit(&pair_label(&q, &x)));
        parts.push(at_most_one_hash.clone());
        for r in 1..=bits_n {
            parts.push(Rem::test(bit(), Cond::Eq(r)));
        }
        parts.extend([
            letters(&a.delta),
            lit("&"),
            Rem::star(bit()),
            letters(&minus(&a.delta, &[pair_label(&q2, &b)])),
            any_star(),
        ]);
        out.push((format!("eR {}", pair_label(&q, &x)), seq(parts)));
    }
    out
}

/// χ₀ … χ₃: wrong first letter, no final letter, a configuration not opening
/// at cell 1, and the last cell followed by `&` instead of `#`.
pub fn shape_rems(m: &TuringMachine, bits_n: usize) -> Vec<(String, Rem)> {
    let a = alpha(m);
    let pre = Rem::star(letters(&minus(&a.lambda, &a.fin)));
    let all_ones = seq((0..bits_n).map(|_| lit("1")).collect());
    vec![
        ("chi0".into(), seq(vec![letters(&minus(&a.lambda, &["s".to_string()])), any_star()])),
        ("chi1".into(), pre.clone()),
        ("chi2".into(), seq(vec![pre.clone(), lit("#"), Rem::star(lit("0")), lit("1"), any_star()])),
        (
            "chi3".into(),
            seq(vec![
                pre,
                Rem::alt([lit("s"), lit("&"), lit("#")]),
                all_ones,
                letters(&a.delta),
                lit("&"),
                any_star(),
            ]),
        ),
    ]
}

pub fn gen_rl_expspace(m: &TuringMachine, w: &[String], f0: usize) -> Result<GadgetBundle> {
    let n = w.len();
    if n == 0 || f0 == 0 {
        return Err(Error::Invalid("the EXPSPACE gadget needs a nonempty word and f0 ≥ 1".into()));
    }
    let bits_n = f0 * n;
    if bits_n < 63 && (n as u64) > (1u64 << bits_n) {
        return Err(Error::Invalid("the input does not fit in 2^(f0·n) cells".into()));
    }
    let a = alpha(m);
    check_size(n * (bits_n + 2) + 2 * (bits_n + 3) + 1)?;

    let mut b = GraphBuilder::new();
    for x in &a.lambda {
        b.symbol(x);
    }
    let named = |b: &mut GraphBuilder, name: String| b.node(&name, Some(DataValue::Str(name.clone()))).unwrap();
    let bitnode = |b: &mut GraphBuilder, name: String, j: usize| b.node(&name, Some(DataValue::Int(j as i64))).unwrap();

    // a chain of bit nodes with both digits on every stage
    let chooser = |b: &mut GraphBuilder, prefix: &str| {
        let nodes: Vec<_> = (1..=bits_n).map(|j| bitnode(b, format!("{prefix}b{j}"), j)).collect();
        let end = named(b, format!("{prefix}f"));
        for j in 0..bits_n {
            let next = if j + 1 < bits_n { nodes[j + 1] } else { end };
            b.edge(nodes[j], "0", next);
            b.edge(nodes[j], "1", next);
        }
        (nodes[0], end)
    };

    let start = named(&mut b, "iw_s".into());
    let mut from = start;
    let mut via = "s";
    for (i, wi) in w.iter().enumerate() {
        let nodes: Vec<_> = (1..=bits_n).map(|j| bitnode(&mut b, format!("k{}_b{j}", i + 1), j)).collect();
        let y = named(&mut b, format!("k{}_y", i + 1));
        let f = named(&mut b, format!("k{}_f", i + 1));
        b.edge(from, via, nodes[0]);
        for j in 0..bits_n {
            let bit = (i >> (bits_n - 1 - j)) & 1;
            let next = if j + 1 < bits_n { nodes[j + 1] } else { y };
            b.edge(nodes[j], &bit.to_string(), next);
        }
        let q = if i == 0 { m.initial.as_str() } else { "$" };
        b.edge(y, &pair_label(q, wi), f);
        from = f;
        via = "&";
    }
    let (k1, kf) = chooser(&mut b, "kk_");
    let kd = named(&mut b, "kk_d".into());
    b.edge(from, "&", k1);
    b.edge(kf, &pair_label("$", BLANK), kd);
    b.edge(kd, "&", k1);

    let (h1, hf) = chooser(&mut b, "h_");
    let hg = named(&mut b, "h_g".into());
    for d in &a.delta {
        b.edge(hf, d, hg);
    }
    b.edge(hg, "&", h1);
    b.edge(hg, "#", h1);
    b.edge(kd, "#", h1);

    let mut rems = shape_rems(m, bits_n);
    rems.extend(successor_rems(m));
    rems.extend(move_right_rems(m, bits_n));
    let chi = rems.into_iter().map(|(_, e)| Formula::atom(e, "p", "l", "m")).reduce(Formula::or).unwrap();
    let chi = Formula::exists(Sort::Reg, "l", Formula::and(Formula::RegBot("l".into()), Formula::exists(Sort::Reg, "m", chi)));
    Ok(GadgetBundle {
        graph: b.build(),
        formula: Some(GadgetFormula::Rl { formula: Formula::exists(Sort::Path, "p", Formula::not(chi)), registers: bits_n }),
        meta: GadgetMeta {
            tag: "rl-expspace",
            k: 1,
            n,
            f0,
            bound: None,
            notes: vec![
                "χ contains the shape checks, the address-successor REMs e41..e44 and the right-move family only".into(),
                "e42..e44 are derived by analogy with e41".into(),
            ],
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::follow;
    use crate::gadgets::tm::{parse_word, samples};
    use crate::rem::path_parse;

    fn cell(bits: &str, d: &str) -> Vec<String> {
        let mut v: Vec<String> = bits.chars().map(|c| c.to_string()).collect();
        v.push(d.into());
        v
    }

    #[test]
    fn chooser_chain_and_k_cells() {
        let m = samples::immediate();
        let g = gen_rl_expspace(&m, &parse_word("01"), 2).unwrap().graph;
        for j in 1..=4 {
            assert_eq!(g.out(g.node_id(&format!("h_b{j}")).unwrap()).len(), 2);
        }
        // K₂ spells c(2) = 0001 then ($, 1)
        let p = follow(&g, g.node_id("iw_s").unwrap(), &["s", "0", "0", "0", "0", "q0_0", "&", "0", "0", "0", "1", "$_1"]);
        assert!(p.is_ok());
    }

    #[test]
    fn case_a_rem_on_increments() {
        let m = samples::immediate();
        let g = gen_rl_expspace(&m, &parse_word("01"), 2).unwrap().graph;
        let e41 = successor_rems(&m).remove(0).1;
        let h1 = g.node_id("h_b1").unwrap();
        let run = |a: &str, b: &str| {
            let mut labels = cell(a, "$_0");
            labels.push("&".into());
            labels.extend(cell(b, "$_0"));
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            let p = follow(&g, h1, &refs).unwrap();
            !path_parse(&g, &e41, 1, &p, &[None]).unwrap().is_empty()
        };
        for i in 0u32..15 {
            let a = format!("{i:04b}");
            assert!(!run(&a, &format!("{:04b}", i + 1)), "{i} → {}", i + 1);
        }
        // 0011 followed by 0111 keeps bit 2 at 1 after a carry into it
        assert!(run("0011", "0111"));
        assert!(run("0111", "0111"));
        assert!(!run("0011", "0000"));
    }
}
