use std::collections::BTreeSet;

use datapath::query::{
    classify, classify_rl, corpus, free_vars, free_vars_wl, parse_query, parse_rem, parse_rl, print_query, print_rem, Cond,
    Dialect, Formula, Fragment, Rem, RemDialect, Sort, Var, WlFormula,
};
use datapath::Error;

fn any_star() -> Rem {
    Rem::star(Rem::Any)
}

#[test]
fn same_value_rem() {
    let e = parse_rem("any* . (!{r1}. any+ [=r1]) . any*", 1, RemDialect::Rem).unwrap();
    let mid = Rem::store(vec![1], Rem::test(Rem::plus(Rem::Any), Cond::Eq(1)));
    assert_eq!(e, Rem::seq([any_star(), mid, any_star()]));
}

#[test]
fn fresh_run_rem() {
    let e = parse_rem("!{r1}.( a[ !(=r1) ] )+", 1, RemDialect::Rem).unwrap();
    let inner = Rem::test(Rem::letter("a"), Cond::not(Cond::Eq(1)));
    assert_eq!(e, Rem::store(vec![1], Rem::plus(inner)));
}

#[test]
fn nest_needs_nrem() {
    assert!(parse_rem("< a*[=r1] >", 1, RemDialect::Rem).is_err());
    let e = parse_rem("< a*[=r1] >", 1, RemDialect::Nrem).unwrap();
    assert_eq!(e.nesting_depth(), 1);
}

#[test]
fn register_out_of_range() {
    assert!(parse_rem("!{r2}.a", 1, RemDialect::Rem).is_err());
    assert!(parse_rem("a[=r3]", 2, RemDialect::Rem).is_err());
}

#[test]
fn printer_is_canonical() {
    for text in ["a . b | c", "(a | b) . c", "!{r1,r2}.(a . b)[=r1 & !(=r2)]", "a+* . eps", "'any' . 'x y'"] {
        let e = parse_rem(text, 2, RemDialect::Rem).unwrap();
        let printed = print_rem(&e);
        assert_eq!(print_rem(&parse_rem(&printed, 2, RemDialect::Rem).unwrap()), printed);
        assert_eq!(parse_rem(&printed, 2, RemDialect::Rem).unwrap(), e);
    }
}

#[test]
fn not_equal_test_is_negated_equality() {
    assert_eq!(parse_rem("a[!=r1]", 1, RemDialect::Rem).unwrap(), parse_rem("a[!(=r1)]", 1, RemDialect::Rem).unwrap());
}

#[test]
fn wl_hamiltonian_is_closed() {
    let q = corpus::get("wl_hamiltonian").unwrap().query();
    assert!(matches!(q.wl().unwrap(), WlFormula::ExistsPath(..)));
    assert!(free_vars(&q).is_empty());
    assert_eq!(classify(&q), Fragment::Wl);
}

#[test]
fn rl_hamiltonian_embeds_both_rems() {
    let q = corpus::get("rl_hamiltonian").unwrap().query();
    let mut rems = Vec::new();
    q.rl().unwrap().rems(&mut rems);
    let e1 = parse_rem("a* . (!{r1}. a+ [=r1]) . a*", 1, RemDialect::Rem).unwrap();
    let e2 = parse_rem("a* [=r1] . a*", 1, RemDialect::Rem).unwrap();
    assert!(rems.contains(&&e1) && rems.contains(&&e2));
    assert_eq!(classify(&q), Fragment::Rl);
}

#[test]
fn nrl_rejects_negation_and_forall() {
    for body in ["exists path p . not (exists reg l . {a}(p, l, l))", "forall path p . exists reg l . {a}(p, l, l)"] {
        let text = format!("dialect NRLPLUS\nregisters 1\n{body}\n");
        assert!(parse_query(&text).is_err(), "{body}");
    }
}

#[test]
fn rl_rejects_nest() {
    assert!(parse_query("dialect RL\nregisters 1\nexists path p . exists reg l . {<a>}(p, l, l)\n").is_err());
}

#[test]
fn less_needs_equal_sorts() {
    let text = "dialect WL\nexists path p . exists path q . exists pos t in p . exists pos u in q . t < u\n";
    assert!(matches!(parse_query(text), Err(Error::Sort(_))));
}

#[test]
fn sim_free_variables() {
    let f = WlFormula::sim("t1", "t2");
    let declared = [("t1".to_string(), "pi".to_string()), ("t2".to_string(), "sigma".to_string())];
    let want: BTreeSet<Var> = [
        Var::Pos("t1".into(), "pi".into()),
        Var::Path("pi".into()),
        Var::Pos("t2".into(), "sigma".into()),
        Var::Path("sigma".into()),
    ]
    .into();
    assert_eq!(free_vars_wl(&f, &declared), want);
}

#[test]
fn query_q_free_variables() {
    for name in ["rl_query_q", "nrl_query_q"] {
        let q = corpus::get(name).unwrap().query();
        let want: BTreeSet<Var> = [Var::Node("x".into()), Var::Node("y".into())].into();
        assert_eq!(free_vars(&q), want, "{name}");
    }
}

#[test]
fn fragments() {
    assert_eq!(classify(&corpus::get("nrl_query_q").unwrap().query()), Fragment::NrlPlus);
    assert_eq!(classify(&corpus::get("rl_odd_cycle").unwrap().query()), Fragment::RlPlus);
    let bare = Formula::exists(Sort::Path, "p", Formula::exists(Sort::Reg, "l", Formula::atom(Rem::letter("a"), "p", "l", "l")));
    assert_eq!(classify_rl(&bare), Fragment::RlPlus);
    assert_eq!(classify_rl(&Formula::not(bare)), Fragment::Rl);
}

#[test]
fn corpus_round_trips() {
    for entry in corpus::corpus() {
        let q = entry.query();
        assert_eq!(classify(&q), entry.fragment, "{}", entry.name);
        assert_eq!(parse_query(&print_query(&q)).unwrap(), q, "{}", entry.name);
    }
}

#[test]
fn sorts_are_inferred() {
    let (f, free) = parse_rl("(x, p, y) and {a}(p, l, m)", Dialect::Rl, 0, &[]).unwrap();
    assert!(matches!(f, Formula::And(..)));
    let sorts: Vec<Sort> = free.iter().map(|x| x.1).collect();
    assert!(sorts.contains(&Sort::Node) && sorts.contains(&Sort::Path) && sorts.contains(&Sort::Reg));
    assert!(parse_rl("(x, p, y) and x = p", Dialect::Rl, 0, &[]).is_err());
}

#[test]
fn syntax_errors_carry_lines() {
    let err = parse_query("dialect RL\nregisters 1\n\nexists path p . {a .}(p, l, l)\n").unwrap_err();
    assert!(matches!(err, Error::Syntax { line: 4, .. }), "{err:?}");
}
