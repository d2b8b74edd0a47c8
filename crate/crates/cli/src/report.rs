use std::fmt::Write as _;
use std::time::Duration;

use datapath::logic::Valuation;
use datapath::DataGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Tsv,
}

/// Evaluator that produced a result.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeUsed {
    Brute(usize),
    Exact,
    NrlPlus,
    WlBounded(usize),
}

impl ModeUsed {
    pub fn name(self) -> &'static str {
        match self {
            ModeUsed::Brute(_) => "brute",
            ModeUsed::Exact => "exact",
            ModeUsed::NrlPlus => "nrl+",
            ModeUsed::WlBounded(_) => "wl-bounded",
        }
    }

    pub fn bound(self) -> Option<usize> {
        match self {
            ModeUsed::Brute(l) | ModeUsed::WlBounded(l) => Some(l),
            _ => None,
        }
    }
}

impl std::fmt::Display for ModeUsed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.bound() {
            Some(l) => write!(f, "{} L={l}", self.name()),
            None => f.write_str(self.name()),
        }
    }
}

/// Whether a bounded result coincides with the unbounded semantics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Completeness {
    /// Unbounded evaluator.
    Exact,
    /// The bound reaches the completeness bound of the instance.
    Reached(usize),
    /// The bound is below the completeness bound of the instance.
    Below(usize),
    Unknown,
}

impl std::fmt::Display for Completeness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Completeness::Exact => f.write_str("exact"),
            Completeness::Reached(c) => write!(f, "complete (completeness bound {c})"),
            Completeness::Below(c) => write!(f, "bounded only (completeness bound {c})"),
            Completeness::Unknown => f.write_str("bounded only (completeness bound unknown)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Bool(bool),
    /// Node-name tuples over `vars`, sorted.
    Tuples { vars: Vec<String>, rows: Vec<Vec<String>> },
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub result: Answer,
    pub mode: ModeUsed,
    pub completeness: Completeness,
    /// One `(variable, value)` line per witness entry.
    pub witness: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub elapsed: Option<Duration>,
}

impl RunReport {
    /// 0 for true or a nonempty answer set, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match &self.result {
            Answer::Bool(b) => i32::from(!b),
            Answer::Tuples { rows, .. } => i32::from(rows.is_empty()),
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Human => {
                match &self.result {
                    Answer::Bool(b) => writeln!(s, "result: {b}").unwrap(),
                    Answer::Tuples { vars, rows } => {
                        writeln!(s, "answers ({}): {}", vars.join(", "), rows.len()).unwrap();
                        for r in rows {
                            writeln!(s, "  {}", r.join(" ")).unwrap();
                        }
                    }
                }
                writeln!(s, "mode: {}", self.mode).unwrap();
                writeln!(s, "completeness: {}", self.completeness).unwrap();
                for (v, w) in &self.witness {
                    writeln!(s, "witness {v}: {w}").unwrap();
                }
                for n in &self.notes {
                    writeln!(s, "note: {n}").unwrap();
                }
                if let Some(t) = self.elapsed {
                    writeln!(s, "time: {:.6}s", t.as_secs_f64()).unwrap();
                }
            }
            Format::Tsv => {
                writeln!(s, "#mode\t{}", self.mode.name()).unwrap();
                writeln!(s, "#bound\t{}", self.mode.bound().map_or("-".into(), |l| l.to_string())).unwrap();
                writeln!(s, "#completeness\t{}", self.completeness).unwrap();
                for (v, w) in &self.witness {
                    writeln!(s, "#witness\t{v}\t{w}").unwrap();
                }
                for n in &self.notes {
                    writeln!(s, "#note\t{n}").unwrap();
                }
                if let Some(t) = self.elapsed {
                    writeln!(s, "#time\t{:.6}", t.as_secs_f64()).unwrap();
                }
                match &self.result {
                    Answer::Bool(b) => writeln!(s, "result\t{b}").unwrap(),
                    Answer::Tuples { vars, rows } => {
                        writeln!(s, "{}", vars.join("\t")).unwrap();
                        for r in rows {
                            writeln!(s, "{}", r.join("\t")).unwrap();
                        }
                    }
                }
            }
        }
        s
    }
}

/// Witness lines in a fixed order: nodes, registers, paths, positions.
pub fn witness_lines(g: &DataGraph, w: &Valuation) -> Vec<(String, String)> {
    let mut out = Vec::new();
    for (x, v) in &w.nodes {
        out.push((x.clone(), g.name(*v).to_string()));
    }
    for (l, a) in &w.regs {
        let vals: Vec<String> = a.iter().map(|v| v.map_or("bot".to_string(), |d| g.value(d).to_string())).collect();
        out.push((l.clone(), format!("({})", vals.join(","))));
    }
    for (p, rho) in &w.paths {
        out.push((p.clone(), g.format_path(rho)));
    }
    for (t, i) in &w.pos {
        out.push((t.clone(), i.to_string()));
    }
    out
}
