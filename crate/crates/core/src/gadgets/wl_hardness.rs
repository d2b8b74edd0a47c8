//! The graph G_w of the walk-logic reduction for k = 1.
//!
//! I_w chains K₀, …, K_{n−1} and K; H is G^Δ_{2,n} closed by an edge from
//! its final node back to its initial node; one edge joins I_w to H. Cell
//! counters are copies of G^{Σ₁}_{1,n} whose corresponding nodes share data
//! values so that ∼ identifies them across copies. Connecting edges that the
//! construction leaves unlabelled carry `N`.

use crate::error::{Error, Result};
use crate::graph::{DataValue, GraphBuilder};

use super::counter::{counter_into, node_estimate, sigma};
use super::tm::{TuringMachine, BLANK};
use super::{check_size, pair_label, GadgetBundle, GadgetMeta};

const SHARED: &str = "ctr:";

pub fn gen_wl_hardness_k1(m: &TuringMachine, w: &[String], f0: usize) -> Result<GadgetBundle> {
    let n = w.len();
    if n == 0 || f0 == 0 {
        return Err(Error::Invalid("the WL gadget needs a nonempty word and f0 ≥ 1".into()));
    }
    let bits = f0 * n;
    let delta: Vec<String> = std::iter::once("$".to_string())
        .chain(m.states.iter().cloned())
        .flat_map(|q| m.sigma.iter().map(move |a| pair_label(&q, a)))
        .collect();
    check_size((n + 2) * node_estimate(1, bits, 2) + 8 + 3 * n)?;

    let mut b = GraphBuilder::new();
    let fresh = |b: &mut GraphBuilder, name: String| b.node(&name, Some(DataValue::Str(name.clone()))).unwrap();

    // K₀
    let start = fresh(&mut b, "k0_in".into());
    let e = fresh(&mut b, "k0_e".into());
    b.edge(start, "in", e);
    let (ci, cf) = counter_into(&mut b, 1, bits, &sigma(1), "k0_", Some(SHARED));
    b.edge(e, "#0", ci);
    let mut out = fresh(&mut b, "k0_out".into());
    b.edge(cf, &pair_label(&m.initial, &w[0]), out);

    // K₁ … K_{n−1}
    for (i, wi) in w.iter().enumerate().skip(1) {
        let t = fresh(&mut b, format!("k{i}_t"));
        b.edge(out, "N", t);
        let (ci, cf) = counter_into(&mut b, 1, bits, &sigma(1), &format!("k{i}_"), Some(SHARED));
        b.edge(t, &format!("#{i}"), ci);
        out = fresh(&mut b, format!("k{i}_out"));
        b.edge(cf, &pair_label("$", wi), out);
    }

    // K = G^{Δ_B}_{2,n}
    let (ks, kf) = counter_into(&mut b, 2, bits, &[pair_label("$", BLANK)], "kk_", Some(SHARED));
    b.edge(out, "N", ks);

    // H = G^Δ_{2,n} plus the back edge
    let (hs, hf) = counter_into(&mut b, 2, bits, &delta, "h_", Some(SHARED));
    b.edge(hf, "N", hs);
    b.edge(kf, "N", hs);

    Ok(GadgetBundle {
        graph: b.build(),
        formula: None,
        meta: GadgetMeta {
            tag: "wl-hardness",
            k: 1,
            n,
            f0,
            bound: None,
            notes: vec![
                "graph only: the formula of the reduction is only sketched".into(),
                format!("H fan size {}", delta.len()),
            ],
        },
    })
}
