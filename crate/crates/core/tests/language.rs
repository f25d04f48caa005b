use std::collections::BTreeSet;

use proptest::prelude::*;
use subshift::lang::{check_primitive, FactorLanguage, PointGenerator, Source, Substitution};
use subshift::presets;
use subshift::word::{Alphabet, Word};

fn preset(name: &str, horizon: usize) -> FactorLanguage {
    FactorLanguage::build(&presets::preset(name).unwrap(), horizon).unwrap()
}

/// Factors of `x` up to length `k`, from a long iterate of the seed.
fn factors_of_iterate(sub: &Substitution, seed: u8, min_len: usize, k: usize) -> Vec<BTreeSet<Word>> {
    let mut w = vec![seed];
    while w.len() < min_len {
        w = w.iter().flat_map(|&l| sub.image(l).iter().copied()).collect();
    }
    (0..=k)
        .map(|len| {
            if len == 0 {
                BTreeSet::new()
            } else {
                w.windows(len).map(|f| Word(f.to_vec())).collect()
            }
        })
        .collect()
}

#[test]
fn spec_examples() {
    let fib = preset("fibonacci", 3);
    let names = |k| fib.level(k).unwrap().iter().map(|w| fib.render(w)).collect::<Vec<_>>();
    assert_eq!(names(1), ["a", "b"]);
    assert_eq!(names(2), ["aa", "ab", "ba"]);
    assert_eq!(names(3), ["aab", "aba", "baa", "bab"]);
    assert_eq!(fib.complexity(3).unwrap(), 4);

    let periodic = preset("periodic-ab", 5);
    assert_eq!(periodic.complexity(5).unwrap(), 2);
    let tm = preset("thue-morse", 2);
    assert_eq!(tm.complexity(2).unwrap(), 4);

    let fib = preset("fibonacci", 8);
    let aa = fib.parse("aa").unwrap();
    assert!(fib.check_uniform_recurrence(&aa, 6).unwrap().holds);
    assert!(!fib.check_uniform_recurrence(&aa, 2).unwrap().holds);
}

#[test]
fn primitivity_exponents() {
    let exp = |name: &str| match presets::preset(name).unwrap() {
        Source::Substitution(s) => check_primitive(&s).exponent,
        _ => unreachable!(),
    };
    assert_eq!(exp("fibonacci"), Some(2));
    assert_eq!(exp("tribonacci"), Some(3));
}

#[test]
fn sturmian_and_tribonacci_complexity() {
    let fib = preset("fibonacci", 20);
    let trib = preset("tribonacci", 20);
    for k in 1..=20 {
        assert_eq!(fib.complexity(k).unwrap(), k + 1);
        assert_eq!(trib.complexity(k).unwrap(), 2 * k + 1);
    }
}

#[test]
fn presets_match_long_iterates() {
    for name in presets::NAMES {
        let lang = preset(name, 12);
        if let PointGenerator::FixedPoint { substitution, seed, .. } = lang.generator() {
            let oracle = factors_of_iterate(substitution, *seed, 200_000, 12);
            for (k, expected) in oracle.iter().enumerate().skip(1) {
                let got: BTreeSet<Word> = lang.level(k).unwrap().iter().cloned().collect();
                assert_eq!(&got, expected, "{name} length {k}");
            }
        }
    }
}

/// Small random substitutions over two or three letters.
fn substitution() -> impl Strategy<Value = Substitution> {
    (2usize..=3)
        .prop_flat_map(|n| {
            let symbols: Vec<char> = "abc".chars().take(n).collect();
            let image = proptest::collection::vec(0..n as u8, 1..=3);
            (Just(symbols), proptest::collection::vec(image, n))
        })
        .prop_map(|(symbols, rules)| {
            Substitution::new(Alphabet::new(symbols).unwrap(), rules.into_iter().map(Word).collect()).unwrap()
        })
}

fn primitive_language(horizon: usize) -> impl Strategy<Value = FactorLanguage> {
    substitution()
        .prop_filter("primitive", |s| check_primitive(s).primitive)
        .prop_filter_map("generates", move |s| {
            FactorLanguage::build(&Source::Substitution(s), horizon).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn factorial_and_prolongable(lang in primitive_language(8)) {
        for k in 1..8 {
            for w in lang.level(k + 1).unwrap() {
                prop_assert!(lang.contains(&w[1..]).unwrap());
                prop_assert!(lang.contains(&w[..k]).unwrap());
            }
            for w in lang.level(k).unwrap() {
                let right = lang.letters().iter().any(|&a| lang.contains(&Word::concat(&[w, &[a]])).unwrap());
                let left = lang.letters().iter().any(|&a| lang.contains(&Word::concat(&[&[a], w])).unwrap());
                prop_assert!(right && left);
            }
        }
        prop_assert_eq!(lang.letters().len(), lang.level(1).unwrap().len());
    }

    #[test]
    fn horizon_monotone(lang in primitive_language(6)) {
        let source = match lang.generator() {
            PointGenerator::FixedPoint { substitution, .. } => Source::Substitution(substitution.clone()),
            PointGenerator::Periodic { .. } => unreachable!(),
        };
        let bigger = FactorLanguage::build(&source, 10).unwrap();
        for k in 1..=6 {
            prop_assert_eq!(lang.level(k).unwrap(), bigger.level(k).unwrap());
        }
    }

    #[test]
    fn substitution_invariant(lang in primitive_language(9)) {
        let PointGenerator::FixedPoint { substitution, .. } = lang.generator() else { unreachable!() };
        for k in 1..=3 {
            for w in lang.level(k).unwrap() {
                let image = substitution.apply(w);
                for len in 1..=image.len().min(9) {
                    for f in image.windows(len) {
                        prop_assert!(lang.contains(f).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn periodic_bound(period in "[ab]{1,6}", k in 1usize..12) {
        let lang = FactorLanguage::build(&Source::periodic(&period).unwrap(), 12).unwrap();
        prop_assert!(lang.complexity(k).unwrap() <= period.len());
    }
}
