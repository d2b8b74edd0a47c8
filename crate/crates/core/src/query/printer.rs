//! Canonical printing. `parse(print(x)) == x` for every well-formed tree.

use super::ast::*;
use super::lexer::is_ident_char;
use super::parser::is_reserved;

pub fn print_symbol(s: &str) -> String {
    if !s.is_empty() && s.chars().all(is_ident_char) && !is_reserved(s) {
        s.to_string()
    } else {
        format!("'{}'", s.replace('\\', "\\\\").replace('\'', "\\'"))
    }
}

pub fn print_cond(c: &Cond) -> String {
    match c {
        Cond::Eq(i) => format!("=r{i}"),
        Cond::And(a, b) => {
            let rhs = match **b {
                Cond::And(..) => format!("({})", print_cond(b)),
                _ => print_cond(b),
            };
            format!("{} & {}", print_cond(a), rhs)
        }
        Cond::Not(a) => format!("!({})", print_cond(a)),
    }
}

fn rem_level(e: &Rem) -> u8 {
    match e {
        Rem::Union(..) => 0,
        Rem::Concat(..) => 1,
        Rem::Store(..) => 2,
        Rem::Plus(_) | Rem::Star(_) | Rem::Test(..) => 3,
        _ => 4,
    }
}

fn rem_at(e: &Rem, min: u8) -> String {
    let s = print_rem(e);
    if rem_level(e) < min {
        format!("({s})")
    } else {
        s
    }
}

pub fn print_rem(e: &Rem) -> String {
    match e {
        Rem::Eps => "eps".into(),
        Rem::Any => "any".into(),
        Rem::Letter(s) => print_symbol(s),
        Rem::Union(a, b) => format!("{} | {}", rem_at(a, 0), rem_at(b, 1)),
        Rem::Concat(a, b) => format!("{} . {}", rem_at(a, 1), rem_at(b, 2)),
        Rem::Plus(a) => format!("{}+", rem_at(a, 3)),
        Rem::Star(a) => format!("{}*", rem_at(a, 3)),
        Rem::Test(a, c) => format!("{}[{}]", rem_at(a, 3), print_cond(c)),
        Rem::Store(r, a) => {
            let regs: Vec<String> = r.iter().map(|i| format!("r{i}")).collect();
            format!("!{{{}}}.{}", regs.join(","), rem_at(a, 2))
        }
        Rem::Nest(a) => format!("<{}>", print_rem(a)),
    }
}

fn rl_level(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 0,
        Formula::And(..) => 1,
        _ => 2,
    }
}

/// `open` is true when nothing follows the printed text inside its enclosing scope,
/// so a quantifier body may extend to the right without parentheses.
fn rl_at(f: &Formula, min: u8, open: bool) -> String {
    if rl_level(f) < min {
        return format!("({})", rl(f, true));
    }
    rl(f, open)
}

fn rl(f: &Formula, open: bool) -> String {
    match f {
        Formula::NodeEq(x, y) | Formula::PathEq(x, y) | Formula::RegEq(x, y) => format!("{x} = {y}"),
        Formula::RegBot(x) => format!("{x} = bot"),
        Formula::Endpoints(x, p, y) => format!("({x}, {p}, {y})"),
        Formula::Atom(e, p, l, m) => format!("{{{}}}({p}, {l}, {m})", print_rem(e)),
        Formula::Not(a) => format!("not {}", rl_at(a, 2, open)),
        Formula::Or(a, b) => format!("{} or {}", rl_at(a, 0, false), rl_at(b, 1, open)),
        Formula::And(a, b) => format!("{} and {}", rl_at(a, 1, false), rl_at(b, 2, open)),
        Formula::Exists(s, v, a) => {
            let txt = format!("exists {} {v} . {}", s.keyword(), rl(a, true));
            if open {
                txt
            } else {
                format!("({txt})")
            }
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    rl(f, true)
}

fn wl_level(f: &WlFormula) -> u8 {
    match f {
        WlFormula::Or(..) => 0,
        WlFormula::And(..) => 1,
        _ => 2,
    }
}

fn wl_at(f: &WlFormula, min: u8, open: bool) -> String {
    if wl_level(f) < min {
        return format!("({})", wl(f, true));
    }
    wl(f, open)
}

fn wl(f: &WlFormula, open: bool) -> String {
    let quant = |txt: String| if open { txt } else { format!("({txt})") };
    match f {
        WlFormula::Edge(a, t1, t2) => format!("{}({t1}, {t2})", print_symbol(a)),
        WlFormula::Less(a, b) => format!("{a} < {b}"),
        WlFormula::Sim(a, b) => format!("{a} ~ {b}"),
        WlFormula::Not(a) => format!("not {}", wl_at(a, 2, open)),
        WlFormula::Or(a, b) => format!("{} or {}", wl_at(a, 0, false), wl_at(b, 1, open)),
        WlFormula::And(a, b) => format!("{} and {}", wl_at(a, 1, false), wl_at(b, 2, open)),
        WlFormula::ExistsPos(t, p, a) => quant(format!("exists pos {t} in {p} . {}", wl(a, true))),
        WlFormula::ExistsPath(p, a) => quant(format!("exists path {p} . {}", wl(a, true))),
    }
}

pub fn print_wl(f: &WlFormula) -> String {
    wl(f, true)
}

pub fn print_query(q: &Query) -> String {
    let mut s = format!("dialect {}\nregisters {}\n", q.dialect.keyword(), q.registers);
    for (v, sort) in &q.free {
        s.push_str(&format!("free {} {v}\n", sort.keyword()));
    }
    for (t, p) in &q.free_pos {
        s.push_str(&format!("free pos {t} in {p}\n"));
    }
    match &q.body {
        Body::Rl(f) => s.push_str(&print_formula(f)),
        Body::Wl(f) => s.push_str(&print_wl(f)),
    }
    s.push('\n');
    s
}
