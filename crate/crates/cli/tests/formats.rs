use algord::formats::{parse_grammar, parse_ordinal, parse_scheme};
use algord_core::grammar::GrammarBuilder;
use algord_core::scheme::{scheme_for_ordinal, scheme_geometric, scheme_product, scheme_sum};
use algord_core::translate::scheme_to_prefix_grammar;
use algord_core::{OrderedAlphabet, Ordinal, RecursionScheme};
use proptest::prelude::*;

fn ordinal(levels: u32) -> BoxedStrategy<Ordinal> {
    if levels == 0 {
        return (0u64..5).prop_map(Ordinal::finite).boxed();
    }
    prop::collection::vec((ordinal(levels - 1), 1u64..5), 0..4)
        .prop_map(|mut terms| {
            terms.sort_by(|a, b| b.0.cmp(&a.0));
            terms.dedup_by(|a, b| a.0 == b.0);
            Ordinal::from_terms(terms).unwrap()
        })
        .boxed()
}

fn scheme() -> impl Strategy<Value = RecursionScheme> {
    let leaf = prop_oneof![
        (0u64..4).prop_map(|n| scheme_for_ordinal(&Ordinal::finite(n)).unwrap()),
        Just(scheme_for_ordinal(&Ordinal::omega()).unwrap()),
    ];
    leaf.prop_recursive(3, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| scheme_sum(&a, &b).unwrap()),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| scheme_product(&a, &b).unwrap()),
            inner.prop_map(|a| scheme_geometric(&a).unwrap()),
        ]
    })
}

proptest! {
    #[test]
    fn ordinal_literals_round_trip(a in ordinal(3)) {
        prop_assert_eq!(parse_ordinal(&a.to_string()).unwrap(), a.clone());
        prop_assert_eq!(parse_ordinal(&format!(" ( {a} ) ")).unwrap(), a);
    }

    #[test]
    fn ordinal_arithmetic_in_literals(a in ordinal(2), b in ordinal(2)) {
        prop_assert_eq!(parse_ordinal(&format!("({a})+({b})")).unwrap(), a.add(&b));
        prop_assert_eq!(parse_ordinal(&format!("({a})*({b})")).unwrap(), a.mul(&b));
    }

    #[test]
    fn scheme_files_round_trip(s in scheme()) {
        let text = s.to_string();
        let back = parse_scheme(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        prop_assert_eq!(back, s);
    }

    #[test]
    fn grammar_files_round_trip(s in scheme()) {
        let t = scheme_to_prefix_grammar(&s);
        for g in [t.grammar.clone(), t.frontier().unwrap()] {
            // productions are printed grouped by left-hand side
            let text = g.to_string();
            let back = parse_grammar(&text).unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back.nonterminals(), g.nonterminals());
            prop_assert_eq!(back.productions().len(), g.productions().len());
        }
    }

    #[test]
    fn random_grammar_files_round_trip(rules in prop::collection::vec((0usize..3, prop::collection::vec(0usize..5, 0..4)), 1..8)) {
        let names = ["A", "B", "C"];
        let toks = ["0", "1", "A", "B", "C"];
        let mut b = GrammarBuilder::new(OrderedAlphabet::binary());
        for (lhs, rhs) in &rules {
            let rhs: Vec<&str> = rhs.iter().map(|&i| toks[i]).collect();
            b = b.rule(names[*lhs], &rhs);
        }
        for n in names {
            b.declare(n);
        }
        let g = b.build().unwrap();
        let back = parse_grammar(&g.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), g.to_string());
        prop_assert_eq!(back.start(), g.start());
    }
}

#[test]
fn hand_written_scheme_text() {
    let s = parse_scheme("F0 = G(1)\nG(x) = +(x, G(F(x)))\nF(x) = +(x, F(x))\n").unwrap();
    assert_eq!(s.to_string(), "F0 = G(1)\nG(x0) = +(x0, G(F(x0)))\nF(x0) = +(x0, F(x0))\n");
    let g = scheme_to_prefix_grammar(&s).grammar;
    assert!(g.to_string().contains("(G,0) -> 0 | 1 (G,0) (F,0)"));
}
