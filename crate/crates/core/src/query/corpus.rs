//! Built-in named queries over the alphabet {a}.

use super::{classify, parse_query, parse_rem, Fragment, Query, Rem, RemDialect};

pub struct Entry {
    pub name: &'static str,
    pub fragment: Fragment,
    pub text: &'static str,
}

impl Entry {
    pub fn query(&self) -> Query {
        parse_query(self.text).unwrap_or_else(|e| panic!("corpus entry {} does not parse: {e}", self.name))
    }
}

pub const WL_HAMILTONIAN: &str = "\
dialect WL
exists path p . ((forall pos t1 in p, t2 . (t1 != t2 -> not t1 ~ t2))
  and (forall path p2 . forall pos t1 in p2 . exists pos t2 in p . t1 ~ t2))
";

pub const RL_HAMILTONIAN: &str = "\
dialect RL
registers 1
exists path p . ((forall reg l, m . not {a* . (!{r1}. a+ [=r1]) . a*}(p, l, m))
  and (forall reg l . (l != bot -> {a* [=r1] . a*}(p, l, l))))
";

/// Two registers remember an edge as the pair of its endpoint values: the trail
/// never traverses an undirected edge twice and covers every edge of the graph.
pub const RL_EULERIAN: &str = "\
dialect RL
registers 2
exists path p . ((forall reg l, m . not {any* . !{r1}.(a . !{r2}.(a* . (eps[=r1] . a . eps[=r2] | eps[=r2] . a . eps[=r1]))) . any*}(p, l, m))
  and (forall reg l . ((exists path q . {eps[=r1] . a . eps[=r2]}(q, l, l))
    -> {a* . (eps[=r1] . a . eps[=r2] | eps[=r2] . a . eps[=r1]) . a*}(p, l, l))))
";

pub const RL_ODD_CYCLE: &str = "\
dialect RL
registers 1
exists path p . exists reg l, m . {!{r1}. a . (a . a)* [=r1]}(p, l, m)
";

pub const RL_EVEN_HAMILTONIAN: &str = "\
dialect RL
registers 1
exists reg n, n2 . exists path p . ((forall reg l, m . not {a* . (!{r1}. a+ [=r1]) . a*}(p, l, m))
  and (forall reg l . (l != bot -> {a* [=r1] . a*}(p, l, l)))
  and {(a . a)*}(p, n, n2))
";

pub const RL_QUERY_Q: &str = "\
dialect RL
registers 1
free node x, y
exists path p . ((x, p, y) and exists node z . forall reg l .
  ({a* [=r1] . a*}(p, l, l) -> exists node z2 . exists path q . ((z2, q, z) and {eps[=r1] . a*}(q, l, l))))
";

pub const NRL_QUERY_Q: &str = "\
dialect NRLPLUS
registers 1
free node x, y
exists path p . exists reg l . ((x, p, y) and {(<a* [=r1]> . a)* . <a* [=r1]>}(p, l, l))
";

pub fn corpus() -> Vec<Entry> {
    vec![
        Entry { name: "wl_hamiltonian", fragment: Fragment::Wl, text: WL_HAMILTONIAN },
        Entry { name: "rl_hamiltonian", fragment: Fragment::Rl, text: RL_HAMILTONIAN },
        Entry { name: "rl_eulerian", fragment: Fragment::Rl, text: RL_EULERIAN },
        Entry { name: "rl_odd_cycle", fragment: Fragment::RlPlus, text: RL_ODD_CYCLE },
        Entry { name: "rl_even_hamiltonian", fragment: Fragment::Rl, text: RL_EVEN_HAMILTONIAN },
        Entry { name: "rl_query_q", fragment: Fragment::Rl, text: RL_QUERY_Q },
        Entry { name: "nrl_query_q", fragment: Fragment::NrlPlus, text: NRL_QUERY_Q },
    ]
}

pub fn get(name: &str) -> Option<Entry> {
    corpus().into_iter().find(|e| e.name == name)
}

/// Named standalone REMs: (name, registers, text).
pub const REMS: &[(&str, usize, &str)] = &[
    ("same_value", 1, "any* . (!{r1}. any+ [=r1]) . any*"),
    ("fresh_run", 1, "!{r1}.( a[ !(=r1) ] )+"),
    ("repeat", 1, "a* . (!{r1}. a+ [=r1]) . a*"),
    ("mentions", 1, "a* [=r1] . a*"),
    ("odd_cycle", 1, "!{r1}. a . (a . a)* [=r1]"),
    ("even", 0, "(a . a)*"),
    ("starts_at", 1, "eps[=r1] . a*"),
    ("edge_pair", 2, "eps[=r1] . a . eps[=r2]"),
    ("two_stores", 2, "!{r1}. a . !{r2}. a* [=r1 & !(=r2)]"),
];

pub fn corpus_rems() -> Vec<(&'static str, usize, Rem)> {
    REMS.iter()
        .map(|&(n, k, t)| (n, k, parse_rem(t, k, RemDialect::Rem).expect("corpus REM parses")))
        .collect()
}

pub fn check(e: &Entry) -> bool {
    classify(&e.query()) == e.fragment
}
