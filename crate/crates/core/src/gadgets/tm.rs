//! Deterministic single-tape Turing machines and a bounded simulator.
//!
//! Runs use the write-on-move convention of the reductions: on
//! δ(q, a) = (q′, b, D) the scanned cell keeps `a`, the head moves one cell in
//! direction D, and the cell it lands on receives `b`.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};

pub const BLANK: &str = "B";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    L,
    R,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuringMachine {
    /// Tape alphabet, blank included.
    pub sigma: Vec<String>,
    pub states: Vec<String>,
    pub initial: String,
    pub accept: String,
    pub delta: BTreeMap<(String, String), (String, String, Move)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TmOutcome {
    Accept,
    Reject,
    Overflow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TmRun {
    pub outcome: TmOutcome,
    /// Transitions taken before the outcome was decided.
    pub steps: usize,
}

impl TuringMachine {
    /// Parses the `tm` text format:
    ///
    /// ```text
    /// states q0 qf q1      # initial state first, accepting state second
    /// alphabet 0 1         # optional; the blank B is always included
    /// delta q0 0 -> q1 1 R
    /// ```
    pub fn parse(text: &str) -> Result<TuringMachine> {
        let mut states: Vec<String> = Vec::new();
        let mut sigma: BTreeSet<String> = BTreeSet::from([BLANK.to_string()]);
        let mut delta = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let t = raw.split('#').next().unwrap_or("").trim();
            if t.is_empty() {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            match toks[0] {
                "states" => {
                    if toks.len() < 3 {
                        return Err(Error::Syntax { line, msg: "expected `states <initial> <final> ...`".into() });
                    }
                    states = toks[1..].iter().map(|s| s.to_string()).collect();
                }
                "alphabet" => sigma.extend(toks[1..].iter().map(|s| s.to_string())),
                "delta" => {
                    if toks.len() != 7 || toks[3] != "->" {
                        return Err(Error::Syntax { line, msg: "expected `delta q a -> q' b R|L`".into() });
                    }
                    let mv = match toks[6] {
                        "L" => Move::L,
                        "R" => Move::R,
                        m => return Err(Error::Syntax { line, msg: format!("bad move `{m}`") }),
                    };
                    sigma.insert(toks[2].to_string());
                    sigma.insert(toks[5].to_string());
                    let key = (toks[1].to_string(), toks[2].to_string());
                    if delta.insert(key, (toks[4].to_string(), toks[5].to_string(), mv)).is_some() {
                        return Err(Error::Syntax { line, msg: format!("duplicate transition for ({}, {})", toks[1], toks[2]) });
                    }
                }
                other => return Err(Error::Syntax { line, msg: format!("unknown directive `{other}`") }),
            }
        }
        if states.is_empty() {
            return Err(Error::Syntax { line: 0, msg: "missing `states` line".into() });
        }
        let tm = TuringMachine {
            initial: states[0].clone(),
            accept: states[1].clone(),
            states,
            sigma: sigma.into_iter().collect(),
            delta,
        };
        tm.check()?;
        Ok(tm)
    }

    /// δ must be total on non-final states, mention only declared states and
    /// have no transition out of the final state.
    pub fn check(&self) -> Result<()> {
        let known: HashSet<&String> = self.states.iter().collect();
        if known.len() != self.states.len() {
            return Err(Error::Invalid("duplicate state".into()));
        }
        for ((q, _), (q2, _, _)) in &self.delta {
            if !known.contains(q) || !known.contains(q2) {
                return Err(Error::Invalid(format!("transition mentions an undeclared state ({q} or {q2})")));
            }
            if *q == self.accept {
                return Err(Error::Invalid("the final state has no transitions".into()));
            }
        }
        for q in &self.states {
            if *q == self.accept {
                continue;
            }
            for a in &self.sigma {
                if !self.delta.contains_key(&(q.clone(), a.clone())) {
                    return Err(Error::Invalid(format!("δ is not total: no transition for ({q}, {a})")));
                }
            }
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut order = vec![self.initial.clone(), self.accept.clone()];
        order.extend(self.states.iter().filter(|q| **q != self.initial && **q != self.accept).cloned());
        let mut s = format!("states {}\n", order.join(" "));
        let letters: Vec<&String> = self.sigma.iter().filter(|a| *a != BLANK).collect();
        if !letters.is_empty() {
            s.push_str(&format!("alphabet {}\n", letters.iter().map(|a| a.as_str()).collect::<Vec<_>>().join(" ")));
        }
        for ((q, a), (q2, b, m)) in &self.delta {
            s.push_str(&format!("delta {q} {a} -> {q2} {b} {m:?}\n"));
        }
        s
    }

    pub fn step(&self, q: &str, a: &str) -> Option<&(String, String, Move)> {
        self.delta.get(&(q.to_string(), a.to_string()))
    }

    /// Pairs (q, a) whose transition moves the head in direction `m`.
    pub fn moving(&self, m: Move) -> Vec<(String, String)> {
        self.delta.iter().filter(|(_, v)| v.2 == m).map(|(k, _)| k.clone()).collect()
    }
}

/// Splits a word argument into tape symbols: whitespace- or comma-separated
/// when it contains either, one symbol per character otherwise.
pub fn parse_word(w: &str) -> Vec<String> {
    if w.contains([' ', ',']) {
        w.split([' ', ',']).filter(|s| !s.is_empty()).map(str::to_string).collect()
    } else {
        w.chars().map(|c| c.to_string()).collect()
    }
}

/// Runs `m` on `w` with at most `space_bound` cells and `step_bound`
/// transitions. Leaving the tape on the left rejects, leaving it on the right
/// or exceeding the step bound overflows, and a repeated configuration
/// rejects because the machine is deterministic.
pub fn tm_simulate(m: &TuringMachine, w: &[String], space_bound: usize, step_bound: usize) -> TmRun {
    if w.len() > space_bound || space_bound == 0 {
        return TmRun { outcome: TmOutcome::Overflow, steps: 0 };
    }
    let mut tape: Vec<String> = w.to_vec();
    tape.resize(space_bound, BLANK.to_string());
    let mut q = m.initial.clone();
    let mut h = 0usize;
    let mut seen = HashSet::new();
    for steps in 0.. {
        if q == m.accept {
            return TmRun { outcome: TmOutcome::Accept, steps };
        }
        if steps >= step_bound {
            return TmRun { outcome: TmOutcome::Overflow, steps };
        }
        if !seen.insert((q.clone(), h, tape.clone())) {
            return TmRun { outcome: TmOutcome::Reject, steps };
        }
        let Some((q2, b, mv)) = m.step(&q, &tape[h]) else {
            return TmRun { outcome: TmOutcome::Reject, steps };
        };
        let h2 = match mv {
            Move::L if h == 0 => return TmRun { outcome: TmOutcome::Reject, steps: steps + 1 },
            Move::L => h - 1,
            Move::R if h + 1 == space_bound => return TmRun { outcome: TmOutcome::Overflow, steps: steps + 1 },
            Move::R => h + 1,
        };
        tape[h2] = b.clone();
        q = q2.clone();
        h = h2;
    }
    unreachable!()
}

/// Small machines over {0, 1, B} used by tests and examples.
pub mod samples {
    use super::TuringMachine;

    fn all(q: &str, rhs: impl Fn(&str) -> String) -> String {
        ["0", "1", "B"].iter().map(|a| format!("delta {q} {a} -> {}\n", rhs(a))).collect()
    }

    /// Accepts after one step.
    pub fn immediate() -> TuringMachine {
        let text = format!("states q0 qf\nalphabet 0 1\n{}", all("q0", |a| format!("qf {a} R")));
        TuringMachine::parse(&text).unwrap()
    }

    /// Right, then left into the accepting state.
    pub fn two_step() -> TuringMachine {
        let text = format!(
            "states q0 qf q1\nalphabet 0 1\n{}{}",
            all("q0", |a| format!("q1 {a} R")),
            all("q1", |a| format!("qf {a} L"))
        );
        TuringMachine::parse(&text).unwrap()
    }

    /// Bounces between the first two cells forever.
    pub fn looper() -> TuringMachine {
        let text = format!(
            "states q0 qf q1\nalphabet 0 1\n{}{}",
            all("q0", |a| format!("q1 {a} R")),
            all("q1", |a| format!("q0 {a} L"))
        );
        TuringMachine::parse(&text).unwrap()
    }

    /// Walks off the right end of any bounded tape.
    pub fn runaway() -> TuringMachine {
        let text = format!("states q0 qf\nalphabet 0 1\n{}", all("q0", |a| format!("q0 {a} R")));
        TuringMachine::parse(&text).unwrap()
    }

    /// Accepts iff the first input symbol is 1; otherwise falls off the left end.
    pub fn first_is_one() -> TuringMachine {
        let text = "states q0 qf\nalphabet 0 1\n\
                    delta q0 1 -> qf 1 R\ndelta q0 0 -> q0 0 L\ndelta q0 B -> q0 B L\n";
        TuringMachine::parse(text).unwrap()
    }
}
