use proptest::prelude::*;

use wdta::fixtures::a_ex;
use wdta::format::{parse_typed, serialize_automaton};
use wdta::hyperminimize::hyper_minimize;
use wdta::minimize::minimize;
use wdta::oracle::{compare_languages, hyper_minimality_check, random_wdta, RandomSpec};
use wdta::{parse_term, MaxTimes, Rational, Semifield, Tree, Tropical, Wdta};

fn rational() -> impl Strategy<Value = Rational> {
    (-40i64..40, 1i64..12).prop_map(|(n, d)| Rational::new(n, d))
}

fn tropical() -> impl Strategy<Value = Tropical> {
    prop_oneof![
        1 => Just(Tropical::infinity()),
        6 => (-40i64..40, 1i64..12).prop_map(|(n, d)| Tropical::finite(n, d)),
    ]
}

fn max_times() -> impl Strategy<Value = MaxTimes> {
    (0i64..40, 1i64..12).prop_map(|(n, d)| MaxTimes::parse_weight(&format!("{n}/{d}")).unwrap())
}

fn laws<W: Semifield>(x: &W, y: &W, z: &W) {
    assert_eq!(x.plus(y), y.plus(x));
    assert_eq!(x.times(y), y.times(x));
    assert_eq!(x.plus(y).plus(z), x.plus(&y.plus(z)));
    assert_eq!(x.times(y).times(z), x.times(&y.times(z)));
    assert_eq!(x.times(&y.plus(z)), x.times(y).plus(&x.times(z)));
    assert_eq!(x.plus(&W::zero()), *x);
    assert_eq!(x.times(&W::one()), *x);
    assert!(x.times(&W::zero()).is_zero());
    if !x.is_zero() {
        assert!(x.times(&x.inverse().unwrap()).is_one());
    }
    assert_eq!(W::parse_weight(&x.to_string()).unwrap(), *x);
}

fn tree() -> impl Strategy<Value = Tree> {
    // Symbols of the fixture alphabet: a, b nullary; g, h unary.
    let leaf = prop_oneof![Just(Tree::leaf(0)), Just(Tree::leaf(1))];
    leaf.prop_recursive(6, 40, 1, |inner| {
        (2usize..4, inner).prop_map(|(s, t)| Tree::node(s, vec![t]))
    })
}

fn spec() -> RandomSpec {
    RandomSpec {
        clone_rate: 0.5,
        ..RandomSpec::default()
    }
}

proptest! {
    #[test]
    fn rational_laws(x in rational(), y in rational(), z in rational()) {
        laws(&x, &y, &z);
    }

    #[test]
    fn tropical_laws(x in tropical(), y in tropical(), z in tropical()) {
        laws(&x, &y, &z);
    }

    #[test]
    fn max_times_laws(x in max_times(), y in max_times(), z in max_times()) {
        laws(&x, &y, &z);
    }

    #[test]
    fn term_text_round_trips(t in tree()) {
        let a = a_ex();
        let text = t.display(a.alphabet(), a.state_names()).to_string();
        prop_assert_eq!(parse_term(&text, a.alphabet(), a.state_names()).unwrap(), t);
    }

    #[test]
    fn run_weight_matches_semantics(t in tree()) {
        let a = a_ex();
        let (q, w) = a.run(&t).unwrap();
        let expected = if a.is_final(q) { w } else { Rational::zero() };
        prop_assert_eq!(a.semantics(&t).unwrap(), expected);
    }

    #[test]
    fn serialization_round_trips(seed in 0u64..100_000) {
        let a: Wdta<Rational> = random_wdta(seed, &spec());
        let text = serialize_automaton(&a);
        let back: Wdta<Rational> = parse_typed(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(serialize_automaton(&back), text);
    }

    #[test]
    fn minimization_is_lossless(seed in 0u64..100_000) {
        let a: Wdta<Tropical> = random_wdta(seed, &spec());
        let m = minimize(&a).unwrap();
        prop_assert!(m.num_states() <= a.num_states());
        prop_assert!(m.validate().is_empty());
        prop_assert_eq!(compare_languages(&a, &m, 4, 0).unwrap().total(), 0);
        prop_assert_eq!(minimize(&m).unwrap(), m);
    }

    #[test]
    fn hyper_minimization_is_hyper_minimal(seed in 0u64..100_000) {
        let a: Wdta<Rational> = random_wdta(seed, &spec());
        let (h, report) = hyper_minimize(&a).unwrap();
        prop_assert!(h.num_states() <= report.minimal.num_states());
        prop_assert!(h.validate().is_empty());
        prop_assert!(hyper_minimality_check(&h).is_ok());
        let (again, _) = hyper_minimize(&h).unwrap();
        prop_assert_eq!(again.num_states(), h.num_states());
    }

    #[test]
    fn merging_a_scaled_copy_is_lossless(seed in 0u64..100_000, num in 1i64..9, den in 1i64..9) {
        // Add a copy of some state whose incoming weights are scaled by 1/s;
        // merging it back with factor s restores every tree weight.
        let a: Wdta<Rational> = random_wdta(seed, &spec());
        let q = (seed as usize) % a.num_states();
        let s = Rational::new(num, den);
        let inv = s.inverse().unwrap();
        let mut b = a.clone();
        let copy = b.add_state("copy");
        b.set_final(copy, a.is_final(q));
        let rules: Vec<_> = a.rules().map(|(l, r)| (l.clone(), r.clone())).collect();
        for (lhs, rule) in &rules {
            let children: Vec<usize> = lhs.children.iter().map(|&c| if c == q { copy } else { c }).collect();
            if children != lhs.children {
                b.set_rule(lhs.symbol, children, rule.target, rule.weight.clone());
            }
        }
        if let Some((lhs, rule)) = rules.iter().find(|(_, r)| r.target == q) {
            b.set_rule(lhs.symbol, lhs.children.clone(), copy, rule.weight.times(&inv));
        }
        let merged = b.weighted_merge(copy, &s, q).unwrap();
        prop_assert!(merged.validate().is_empty());
        prop_assert_eq!(compare_languages(&a, &merged, 4, 0).unwrap().total(), 0);
    }
}
