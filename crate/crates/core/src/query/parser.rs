//! Recursive-descent parser for REMs, RL/NRL⁺ formulas, WL formulas and query files.

use super::ast::*;
use super::lexer::{lex, Tok};
use crate::error::{Error, Result};

/// Words that cannot be used as bare symbols or variable names.
pub const RESERVED: &[&str] = &[
    "eps", "any", "not", "and", "or", "exists", "forall", "node", "path", "reg", "pos", "in", "bot",
];

pub fn is_reserved(s: &str) -> bool {
    RESERVED.contains(&s)
}

/// Whether REM text may contain the nesting operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RemDialect {
    Rem,
    Nrem,
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    k: usize,
    allow_nest: bool,
    dialect: Dialect,
}

impl Parser {
    fn new(src: &str, k: usize, allow_nest: bool, dialect: Dialect) -> Result<Self> {
        Ok(Parser { toks: lex(src)?, at: 0, k, allow_nest, dialect })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}, found {:?}", self.peek()))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn eat_kw(&mut self, kw: &str) -> bool {
        if self.is_kw(kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn name(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !is_reserved(&s) => {
                self.bump();
                Ok(s)
            }
            t => self.err(format!("expected a variable name, found {t:?}")),
        }
    }

    fn finish(&self) -> Result<()> {
        if *self.peek() != Tok::Eof {
            return self.err(format!("unexpected trailing {:?}", self.peek()));
        }
        Ok(())
    }

    // ---- REMs ----

    fn rem(&mut self) -> Result<Rem> {
        let mut e = self.rem_cat()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let r = self.rem_cat()?;
            e = Rem::union(e, r);
        }
        Ok(e)
    }

    fn starts_unary(&self) -> bool {
        match self.peek() {
            Tok::Ident(s) => !matches!(s.as_str(), "not" | "and" | "or"),
            Tok::Quoted(_) | Tok::LParen | Tok::Lt => true,
            Tok::Bang => *self.peek2() == Tok::LBrace,
            _ => false,
        }
    }

    fn rem_cat(&mut self) -> Result<Rem> {
        let mut e = self.rem_unary()?;
        loop {
            if *self.peek() == Tok::Dot {
                self.bump();
            } else if !self.starts_unary() {
                break;
            }
            let r = self.rem_unary()?;
            e = Rem::concat(e, r);
        }
        Ok(e)
    }

    fn register(&mut self) -> Result<usize> {
        let pos = self.pos();
        match self.bump() {
            Tok::Ident(s) if s.len() > 1 && s.starts_with('r') && s[1..].chars().all(|c| c.is_ascii_digit()) => {
                let i: usize = s[1..].parse().map_err(|_| Error::Parse { pos, msg: "bad register".into() })?;
                if i == 0 || i > self.k {
                    return Err(Error::RegisterOutOfRange(i, self.k));
                }
                Ok(i)
            }
            t => Err(Error::Parse { pos, msg: format!("expected a register r1..r{}, found {t:?}", self.k) }),
        }
    }

    fn rem_unary(&mut self) -> Result<Rem> {
        if *self.peek() == Tok::Bang && *self.peek2() == Tok::LBrace {
            self.bump();
            self.bump();
            let mut regs = Vec::new();
            if *self.peek() != Tok::RBrace {
                regs.push(self.register()?);
                while *self.peek() == Tok::Comma {
                    self.bump();
                    regs.push(self.register()?);
                }
            }
            self.expect(Tok::RBrace, "`}`")?;
            self.expect(Tok::Dot, "`.` after register set")?;
            let body = self.rem_unary()?;
            return Ok(Rem::store(regs, body));
        }
        self.rem_postfix()
    }

    fn rem_postfix(&mut self) -> Result<Rem> {
        let mut e = self.rem_primary()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    e = Rem::plus(e);
                }
                Tok::Star => {
                    self.bump();
                    e = Rem::star(e);
                }
                Tok::LBrack => {
                    self.bump();
                    let c = self.cond()?;
                    self.expect(Tok::RBrack, "`]`")?;
                    e = Rem::test(e, c);
                }
                _ => return Ok(e),
            }
        }
    }

    fn rem_primary(&mut self) -> Result<Rem> {
        match self.peek().clone() {
            Tok::Ident(s) if s == "eps" => {
                self.bump();
                Ok(Rem::Eps)
            }
            Tok::Ident(s) if s == "any" => {
                self.bump();
                Ok(Rem::Any)
            }
            Tok::Ident(s) if !is_reserved(&s) => {
                self.bump();
                Ok(Rem::Letter(s))
            }
            Tok::Quoted(s) => {
                self.bump();
                Ok(Rem::Letter(s))
            }
            Tok::LParen => {
                self.bump();
                let e = self.rem()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Lt => {
                if !self.allow_nest {
                    return self.err("nesting operator <e> is not allowed in plain REMs");
                }
                self.bump();
                let e = self.rem()?;
                self.expect(Tok::Gt, "`>`")?;
                Ok(Rem::nest(e))
            }
            t => self.err(format!("expected a REM, found {t:?}")),
        }
    }

    fn cond(&mut self) -> Result<Cond> {
        let mut c = self.cond_unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let r = self.cond_unary()?;
            c = Cond::and(c, r);
        }
        Ok(c)
    }

    fn cond_unary(&mut self) -> Result<Cond> {
        match self.peek() {
            Tok::Eq => {
                self.bump();
                Ok(Cond::Eq(self.register()?))
            }
            Tok::NotEq => {
                self.bump();
                Ok(Cond::not(Cond::Eq(self.register()?)))
            }
            Tok::Bang => {
                self.bump();
                Ok(Cond::not(self.cond_unary()?))
            }
            Tok::LParen => {
                self.bump();
                let c = self.cond()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(c)
            }
            t => self.err(format!("expected a condition, found {t:?}")),
        }
    }

    // ---- shared connectives ----

    fn no_negation(&self, what: &str) -> Result<()> {
        if self.dialect == Dialect::NrlPlus {
            return Err(Error::FragmentViolation(format!("{what} is not allowed in NRLPLUS")));
        }
        Ok(())
    }

    // ---- RL ----

    fn rl(&mut self) -> Result<Raw> {
        let lhs = self.rl_or()?;
        if *self.peek() == Tok::Arrow {
            self.no_negation("`->`")?;
            self.bump();
            let rhs = self.rl()?;
            return Ok(Raw::Or(Box::new(Raw::Not(Box::new(lhs))), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn rl_or(&mut self) -> Result<Raw> {
        let mut f = self.rl_and()?;
        while self.eat_kw("or") {
            let r = self.rl_and()?;
            f = Raw::Or(Box::new(f), Box::new(r));
        }
        Ok(f)
    }

    fn rl_and(&mut self) -> Result<Raw> {
        let mut f = self.rl_unary()?;
        while self.eat_kw("and") {
            let r = self.rl_unary()?;
            f = Raw::And(Box::new(f), Box::new(r));
        }
        Ok(f)
    }

    fn rl_unary(&mut self) -> Result<Raw> {
        if self.is_kw("not") {
            self.no_negation("negation")?;
            self.bump();
            return Ok(Raw::Not(Box::new(self.rl_unary()?)));
        }
        if self.is_kw("exists") || self.is_kw("forall") {
            let universal = self.is_kw("forall");
            if universal {
                self.no_negation("`forall`")?;
            }
            self.bump();
            let binders = self.rl_binders()?;
            self.expect(Tok::Dot, "`.` after quantifier")?;
            let mut body = self.rl()?;
            for (s, v) in binders.into_iter().rev() {
                body = if universal {
                    Raw::Not(Box::new(Raw::Exists(s, v, Box::new(Raw::Not(Box::new(body))))))
                } else {
                    Raw::Exists(s, v, Box::new(body))
                };
            }
            return Ok(body);
        }
        match self.peek().clone() {
            Tok::LBrace => {
                self.bump();
                let e = self.rem()?;
                self.expect(Tok::RBrace, "`}` closing the REM")?;
                self.expect(Tok::LParen, "`(` after REM")?;
                let p = self.name()?;
                self.expect(Tok::Comma, "`,`")?;
                let l = self.name()?;
                self.expect(Tok::Comma, "`,`")?;
                let m = self.name()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Raw::Atom(e, p, l, m))
            }
            Tok::LParen => {
                // endpoint atom `(x, p, y)` or a parenthesised formula
                if matches!(self.peek2(), Tok::Ident(_)) && self.toks.get(self.at + 2).map(|t| &t.0) == Some(&Tok::Comma) {
                    self.bump();
                    let x = self.name()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let p = self.name()?;
                    self.expect(Tok::Comma, "`,`")?;
                    let y = self.name()?;
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Raw::Endpoints(x, p, y));
                }
                self.bump();
                let f = self.rl()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(_) => {
                let x = self.name()?;
                let neg = match self.bump() {
                    Tok::Eq => false,
                    Tok::NotEq => {
                        self.no_negation("`!=`")?;
                        true
                    }
                    t => return self.err(format!("expected `=` or `!=`, found {t:?}")),
                };
                let atom = if self.eat_kw("bot") { Raw::Bot(x) } else { Raw::Eq(x, self.name()?) };
                Ok(if neg { Raw::Not(Box::new(atom)) } else { atom })
            }
            t => self.err(format!("expected a formula, found {t:?}")),
        }
    }

    fn sort_kw(&self) -> Option<Sort> {
        match self.peek() {
            Tok::Ident(s) => match s.as_str() {
                "node" => Some(Sort::Node),
                "path" => Some(Sort::Path),
                "reg" => Some(Sort::Reg),
                _ => None,
            },
            _ => None,
        }
    }

    fn rl_binders(&mut self) -> Result<Vec<(Sort, String)>> {
        let mut out = Vec::new();
        let Some(mut sort) = self.sort_kw() else {
            return self.err("expected `node`, `path` or `reg` after quantifier");
        };
        self.bump();
        out.push((sort, self.name()?));
        while *self.peek() == Tok::Comma {
            self.bump();
            if let Some(s) = self.sort_kw() {
                sort = s;
                self.bump();
            }
            out.push((sort, self.name()?));
        }
        Ok(out)
    }

    // ---- WL ----

    fn wl(&mut self) -> Result<WlFormula> {
        let lhs = self.wl_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.wl()?;
            return Ok(WlFormula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn wl_or(&mut self) -> Result<WlFormula> {
        let mut f = self.wl_and()?;
        while self.eat_kw("or") {
            let r = self.wl_and()?;
            f = WlFormula::or(f, r);
        }
        Ok(f)
    }

    fn wl_and(&mut self) -> Result<WlFormula> {
        let mut f = self.wl_unary()?;
        while self.eat_kw("and") {
            let r = self.wl_unary()?;
            f = WlFormula::and(f, r);
        }
        Ok(f)
    }

    fn wl_unary(&mut self) -> Result<WlFormula> {
        if self.eat_kw("not") {
            return Ok(WlFormula::not(self.wl_unary()?));
        }
        if self.is_kw("exists") || self.is_kw("forall") {
            let universal = self.is_kw("forall");
            self.bump();
            let binders = self.wl_binders()?;
            self.expect(Tok::Dot, "`.` after quantifier")?;
            let mut body = self.wl()?;
            for (v, p) in binders.into_iter().rev() {
                body = match (p, universal) {
                    (None, false) => WlFormula::exists_path(&v, body),
                    (None, true) => WlFormula::forall_path(&v, body),
                    (Some(p), false) => WlFormula::exists_pos(&v, &p, body),
                    (Some(p), true) => WlFormula::forall_pos(&v, &p, body),
                };
            }
            return Ok(body);
        }
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.wl()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Quoted(a) => {
                self.bump();
                self.wl_edge(a)
            }
            Tok::Ident(a) if !is_reserved(&a) && *self.peek2() == Tok::LParen => {
                self.bump();
                self.wl_edge(a)
            }
            Tok::Ident(_) => {
                let t1 = self.name()?;
                let op = self.bump();
                let t2 = self.name()?;
                Ok(match op {
                    Tok::Lt => WlFormula::less(&t1, &t2),
                    Tok::Tilde => WlFormula::sim(&t1, &t2),
                    Tok::Eq => WlFormula::pos_eq(&t1, &t2),
                    Tok::NotEq => WlFormula::not(WlFormula::pos_eq(&t1, &t2)),
                    t => return self.err(format!("expected `<`, `~`, `=` or `!=`, found {t:?}")),
                })
            }
            t => self.err(format!("expected a WL formula, found {t:?}")),
        }
    }

    fn wl_edge(&mut self, a: String) -> Result<WlFormula> {
        self.expect(Tok::LParen, "`(`")?;
        let t1 = self.name()?;
        self.expect(Tok::Comma, "`,`")?;
        let t2 = self.name()?;
        self.expect(Tok::RParen, "`)`")?;
        Ok(WlFormula::Edge(a, t1, t2))
    }

    /// Binders `path p` and `pos t in p`; a bare name repeats the previous binder kind.
    fn wl_binders(&mut self) -> Result<Vec<(String, Option<String>)>> {
        let mut out = Vec::new();
        let mut kind: Option<Option<String>> = None;
        loop {
            if self.eat_kw("path") {
                kind = Some(None);
                out.push((self.name()?, None));
            } else if self.eat_kw("pos") {
                let t = self.name()?;
                if !self.eat_kw("in") {
                    return self.err("expected `in <path>` after position variable");
                }
                let p = self.name()?;
                kind = Some(Some(p.clone()));
                out.push((t, Some(p)));
            } else if let Some(k) = kind.clone() {
                let t = self.name()?;
                let k = if self.eat_kw("in") { Some(self.name()?) } else { k };
                out.push((t, k));
            } else {
                return self.err("expected `path` or `pos` after quantifier");
            }
            if *self.peek() != Tok::Comma {
                return Ok(out);
            }
            self.bump();
        }
    }
}

/// Formula before sort resolution: equality atoms are untyped.
#[derive(Debug, Clone)]
enum Raw {
    Eq(String, String),
    Bot(String),
    Endpoints(String, String, String),
    Atom(Rem, String, String, String),
    Not(Box<Raw>),
    Or(Box<Raw>, Box<Raw>),
    And(Box<Raw>, Box<Raw>),
    Exists(Sort, String, Box<Raw>),
}

struct Resolver {
    scope: Vec<(String, Sort)>,
    free: Vec<(String, Sort)>,
}

impl Resolver {
    fn lookup(&self, v: &str) -> Option<Sort> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .or_else(|| self.free.iter().find(|(n, _)| n == v))
            .map(|&(_, s)| s)
    }

    fn require(&mut self, v: &str, s: Sort) -> Result<()> {
        match self.lookup(v) {
            Some(t) if t == s => Ok(()),
            Some(t) => Err(Error::Sort(format!("`{v}` is a {} variable, used as {}", t.keyword(), s.keyword()))),
            None => {
                self.free.push((v.to_string(), s));
                Ok(())
            }
        }
    }

    /// First pass: infer sorts of free variables from typed positions.
    fn infer(&mut self, f: &Raw) -> Result<()> {
        match f {
            Raw::Eq(..) => Ok(()),
            Raw::Bot(x) => self.require(x, Sort::Reg),
            Raw::Endpoints(x, p, y) => {
                self.require(x, Sort::Node)?;
                self.require(p, Sort::Path)?;
                self.require(y, Sort::Node)
            }
            Raw::Atom(_, p, l, m) => {
                self.require(p, Sort::Path)?;
                self.require(l, Sort::Reg)?;
                self.require(m, Sort::Reg)
            }
            Raw::Not(a) => self.infer(a),
            Raw::Or(a, b) | Raw::And(a, b) => {
                self.infer(a)?;
                self.infer(b)
            }
            Raw::Exists(s, v, a) => {
                self.scope.push((v.clone(), *s));
                let r = self.infer(a);
                self.scope.pop();
                r
            }
        }
    }

    fn resolve(&mut self, f: Raw) -> Result<Formula> {
        Ok(match f {
            Raw::Eq(x, y) => {
                let s = match (self.lookup(&x), self.lookup(&y)) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(Error::Sort(format!("`{x} = {y}` compares a {} with a {}", a.keyword(), b.keyword())))
                    }
                    (Some(a), _) | (None, Some(a)) => a,
                    (None, None) => {
                        return Err(Error::Unbound(format!("{x}, {y} (declare their sort with a `free` header)")))
                    }
                };
                self.require(&x, s)?;
                self.require(&y, s)?;
                match s {
                    Sort::Node => Formula::NodeEq(x, y),
                    Sort::Path => Formula::PathEq(x, y),
                    Sort::Reg => Formula::RegEq(x, y),
                }
            }
            Raw::Bot(x) => Formula::RegBot(x),
            Raw::Endpoints(x, p, y) => Formula::Endpoints(x, p, y),
            Raw::Atom(e, p, l, m) => Formula::Atom(e, p, l, m),
            Raw::Not(a) => Formula::not(self.resolve(*a)?),
            Raw::Or(a, b) => Formula::or(self.resolve(*a)?, self.resolve(*b)?),
            Raw::And(a, b) => Formula::and(self.resolve(*a)?, self.resolve(*b)?),
            Raw::Exists(s, v, a) => {
                self.scope.push((v.clone(), s));
                let body = self.resolve(*a);
                self.scope.pop();
                Formula::Exists(s, v, Box::new(body?))
            }
        })
    }
}

/// Parses a standalone REM over registers r1..rk.
pub fn parse_rem(text: &str, k: usize, dialect: RemDialect) -> Result<Rem> {
    let mut p = Parser::new(text, k, dialect == RemDialect::Nrem, Dialect::Rl)?;
    let e = p.rem()?;
    p.finish()?;
    Ok(e)
}

/// Parses an RL or NRL⁺ formula; `declared` fixes sorts of free variables up front.
pub fn parse_rl(text: &str, dialect: Dialect, k: usize, declared: &[(String, Sort)]) -> Result<(Formula, Vec<(String, Sort)>)> {
    if dialect == Dialect::Wl {
        return Err(Error::Invalid("use parse_wl for WL formulas".into()));
    }
    let mut p = Parser::new(text, k, dialect == Dialect::NrlPlus, dialect)?;
    let raw = p.rl()?;
    p.finish()?;
    let mut r = Resolver { scope: Vec::new(), free: declared.to_vec() };
    r.infer(&raw)?;
    let f = r.resolve(raw)?;
    Ok((f, r.free))
}

/// Parses a WL formula; `declared` gives the path variables of free position variables.
pub fn parse_wl(text: &str, declared: &[(String, String)]) -> Result<WlFormula> {
    let mut p = Parser::new(text, 0, false, Dialect::Wl)?;
    let f = p.wl()?;
    p.finish()?;
    let mut scope: Vec<(String, String)> = declared.to_vec();
    check_wl(&f, &mut scope)?;
    Ok(f)
}

fn check_wl(f: &WlFormula, scope: &mut Vec<(String, String)>) -> Result<()> {
    let sort_of = |scope: &Vec<(String, String)>, t: &str| -> Result<String> {
        scope
            .iter()
            .rev()
            .find(|(n, _)| n == t)
            .map(|(_, p)| p.clone())
            .ok_or_else(|| Error::Unbound(format!("{t} (position variables need `pos {t} in <path>`)")))
    };
    match f {
        WlFormula::Edge(_, a, b) | WlFormula::Less(a, b) => {
            let (pa, pb) = (sort_of(scope, a)?, sort_of(scope, b)?);
            if pa != pb {
                return Err(Error::Sort(format!("`{a}` ranges over {pa} but `{b}` over {pb}")));
            }
            Ok(())
        }
        WlFormula::Sim(a, b) => {
            sort_of(scope, a)?;
            sort_of(scope, b)?;
            Ok(())
        }
        WlFormula::Not(a) => check_wl(a, scope),
        WlFormula::Or(a, b) | WlFormula::And(a, b) => {
            check_wl(a, scope)?;
            check_wl(b, scope)
        }
        WlFormula::ExistsPos(t, p, a) => {
            scope.push((t.clone(), p.clone()));
            let r = check_wl(a, scope);
            scope.pop();
            r
        }
        WlFormula::ExistsPath(_, a) => check_wl(a, scope),
    }
}

/// Parses a query file: header lines (`dialect`, `registers`, `free`) then one formula.
pub fn parse_query(text: &str) -> Result<Query> {
    let mut dialect = None;
    let mut k = 0usize;
    let mut free: Vec<(String, Sort)> = Vec::new();
    let mut free_pos: Vec<(String, String)> = Vec::new();
    let mut body = String::new();
    let mut starts: Vec<(usize, usize)> = Vec::new();
    let mut in_header = true;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let t = raw.trim();
        if t.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = t.split_whitespace().collect();
        if in_header {
            match words.first().copied() {
                None => continue,
                Some("dialect") => {
                    dialect = Some(match words.get(1).copied() {
                        Some("RL") => Dialect::Rl,
                        Some("WL") => Dialect::Wl,
                        Some("NRLPLUS") => Dialect::NrlPlus,
                        other => return Err(Error::Syntax { line, msg: format!("unknown dialect {other:?}") }),
                    });
                    continue;
                }
                Some("registers") => {
                    k = words
                        .get(1)
                        .and_then(|w| w.parse().ok())
                        .ok_or_else(|| Error::Syntax { line, msg: "expected `registers <k>`".into() })?;
                    continue;
                }
                Some("free") => {
                    let bad = || Error::Syntax { line, msg: "expected `free node|path|reg x ...` or `free pos t in p`".into() };
                    match words.get(1).copied() {
                        Some("pos") => {
                            if words.len() != 5 || words[3] != "in" {
                                return Err(bad());
                            }
                            free_pos.push((words[2].to_string(), words[4].to_string()));
                        }
                        Some(s) => {
                            let sort = match s {
                                "node" => Sort::Node,
                                "path" => Sort::Path,
                                "reg" => Sort::Reg,
                                _ => return Err(bad()),
                            };
                            for w in &words[2..] {
                                free.push((w.trim_end_matches(',').to_string(), sort));
                            }
                        }
                        None => return Err(bad()),
                    }
                    continue;
                }
                Some(_) => in_header = false,
            }
        }
        starts.push((body.len(), line));
        body.push_str(raw);
        body.push('\n');
    }
    // report body errors against the file's line numbers
    let located = |e: Error| match e {
        Error::Parse { pos, msg } => {
            let &(start, line) = starts.iter().rev().find(|(s, _)| *s <= pos).unwrap_or(&(0, 1));
            Error::Syntax { line, msg: format!("column {}: {msg}", pos - start + 1) }
        }
        other => other,
    };
    let dialect = dialect.ok_or(Error::Syntax { line: 1, msg: "missing `dialect` header".into() })?;
    match dialect {
        Dialect::Wl => {
            let f = parse_wl(&body, &free_pos).map_err(located)?;
            Ok(Query { dialect, registers: k, free: Vec::new(), free_pos, body: Body::Wl(f) })
        }
        _ => {
            let (f, free) = parse_rl(&body, dialect, k, &free).map_err(located)?;
            Ok(Query { dialect, registers: k, free, free_pos, body: Body::Rl(f) })
        }
    }
}
