use kms_core::dsl::{compile_operator, parse, Expr};
use kms_core::scalar::{rat, Rational};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["curl", "sym", "dev", "skewtr", "tr", "inc", "myop", "q2"]).prop_map(String::from)
}

fn expr() -> impl Strategy<Value = Expr> {
    name().prop_map(Expr::Name).prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (name(), inner.clone()).prop_map(|(n, e)| Expr::Apply(n, Box::new(e))),
            prop::collection::vec(inner.clone(), 2..=3).prop_map(Expr::Sum),
            ((-5i64..=5).prop_filter("nonzero", |p| *p != 0), 1i64..=4, inner)
                .prop_map(|(p, q, e)| Expr::Scale(rat(p, q), Box::new(e))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_trees_reparse(e in expr()) {
        prop_assert_eq!(parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn whitespace_and_case_are_ignored(e in expr()) {
        let loud = e.to_string().to_uppercase().replace(' ', "").replace('(', " ( ");
        prop_assert_eq!(parse(&loud).unwrap(), e);
    }

    #[test]
    fn nested_part_maps_match_the_fused_name(xi in prop::collection::vec((-9i64..=9, 1i64..=4), 3)) {
        let xi: Vec<Rational> = xi.iter().map(|&(p, q)| rat(p, q)).collect();
        let nested = compile_operator("dev(sym(curl))", 3).unwrap();
        let fused = compile_operator("devsym(curl)", 3).unwrap();
        prop_assert_eq!(nested.symbol_eval(&xi).unwrap().matrix, fused.symbol_eval(&xi).unwrap().matrix);
    }
}

#[test]
fn corpus_round_trips() {
    for src in [
        "curl",
        "devsym(curl)",
        "dev(sym(curl))",
        "skew(curl) + tr(curl)",
        "sym(grad)",
        "tr(inc)",
        "1/2 * (curl + transpose(curl))",
        "dev(curl(transpose(curl)))",
        "-2 * div",
    ] {
        let e = parse(src).unwrap();
        assert_eq!(parse(&e.to_string()).unwrap(), e, "{src}");
    }
}
