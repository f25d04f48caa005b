use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subshift::freegroup::{determinant, FreeGroupWord, Gen};
use subshift::stallings::{fold, fold_shuffled, is_basis_of_full_group, subgroup_equals};
use subshift::verify::oracle::{has_half_cancellation_bound, member_by_enumeration};
use subshift::word::Word;

fn names() -> Vec<String> {
    ["a", "b", "c"].iter().map(|s| s.to_string()).collect()
}

fn w(text: &str) -> FreeGroupWord {
    FreeGroupWord::parse(text, &names()).unwrap()
}

fn gen() -> impl Strategy<Value = Gen> {
    (0u32..3, any::<bool>()).prop_map(|(index, inverse)| Gen { index, inverse })
}

fn raw_word(max: usize) -> impl Strategy<Value = Vec<Gen>> {
    prop::collection::vec(gen(), 0..=max)
}

fn is_reduced(word: &FreeGroupWord) -> bool {
    word.gens().windows(2).all(|p| p[0] != p[1].inv())
}

#[test]
fn parse_render_round_trip() {
    let x = w("a b^-1 b a c^-1");
    assert_eq!(x.render(&names()), "a a c^-1");
    assert_eq!(w("a a^-1").render(&names()), "1");
    assert!(FreeGroupWord::parse("d", &names()).is_err());
}

#[test]
fn membership_examples() {
    let h = [w("a a"), w("b")];
    let g = fold(&h);
    assert_eq!(g.rank(), 2);
    assert!(g.member(&w("a a b a^-1 a^-1")));
    assert!(!g.member(&w("a")));
    assert!(!g.member(&w("a b a")));
    let fib = [Word(vec![0, 1]), Word(vec![0])];
    assert!(is_basis_of_full_group(&fib, 2));
    assert!(!is_basis_of_full_group(&[Word(vec![0, 0]), Word(vec![1])], 2));
    assert!(!is_basis_of_full_group(&[Word(vec![0, 1]), Word(vec![0, 1])], 2));
}

#[test]
fn determinants() {
    assert_eq!(determinant(&[]), 1);
    assert_eq!(determinant(&[vec![1, 1], vec![1, 0]]), -1);
    assert_eq!(determinant(&[vec![0, 1], vec![0, 2]]), 0);
}

/// Leibniz expansion over all permutations.
fn determinant_by_permutations(m: &[Vec<i64>]) -> i128 {
    fn go(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i128, acc: i128) -> i128 {
        if row == m.len() {
            return sign * acc;
        }
        let mut total = 0;
        for col in 0..m.len() {
            if used[col] {
                continue;
            }
            let inversions = used[col + 1..].iter().filter(|&&u| u).count();
            let s = if inversions % 2 == 0 { sign } else { -sign };
            used[col] = true;
            total += go(m, row + 1, used, s, acc * i128::from(m[row][col]));
            used[col] = false;
        }
        total
    }
    go(m, 0, &mut vec![false; m.len()], 1, 1)
}

proptest! {
    #[test]
    fn determinant_matches_expansion(
        m in (1usize..=5).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-4i64..=4, n), n))
    ) {
        prop_assert_eq!(determinant(&m), determinant_by_permutations(&m));
    }

    #[test]
    fn reduce_is_idempotent(raw in raw_word(20)) {
        let r = FreeGroupWord::reduce(raw);
        prop_assert!(is_reduced(&r));
        prop_assert_eq!(FreeGroupWord::reduce(r.gens().to_vec()), r.clone());
        prop_assert!(r.mul(&r.inverse()).is_identity());
        prop_assert!(r.inverse().mul(&r).is_identity());
    }

    #[test]
    fn reduction_is_confluent(raw in raw_word(20), splits in prop::collection::vec(0usize..21, 0..5)) {
        // Reducing pieces first, in any grouping, gives the same result.
        let whole = FreeGroupWord::reduce(raw.clone());
        let mut cuts: Vec<usize> = splits.into_iter().map(|s| s.min(raw.len())).collect();
        cuts.sort();
        let mut pieces = Vec::new();
        let mut last = 0;
        for c in cuts.into_iter().chain([raw.len()]) {
            pieces.push(FreeGroupWord::reduce(raw[last..c].to_vec()));
            last = c;
        }
        let left = pieces.iter().fold(FreeGroupWord::identity(), |acc, p| acc.mul(p));
        let right = pieces.iter().rev().fold(FreeGroupWord::identity(), |acc, p| p.mul(&acc));
        prop_assert_eq!(&left, &whole);
        prop_assert_eq!(&right, &whole);
    }

    #[test]
    fn exponent_sums_are_additive(x in raw_word(10), y in raw_word(10)) {
        let (x, y) = (FreeGroupWord::reduce(x), FreeGroupWord::reduce(y));
        for i in 0..3 {
            prop_assert_eq!(x.mul(&y).exponent_sum(i), x.exponent_sum(i) + y.exponent_sum(i));
        }
    }

    #[test]
    fn fold_properties(gens in prop::collection::vec(raw_word(6), 1..=4), seed in any::<u64>()) {
        let gens: Vec<FreeGroupWord> = gens.into_iter().map(FreeGroupWord::reduce).collect();
        let g = fold(&gens);
        prop_assert!(g.rank() <= gens.len());
        for x in &gens {
            prop_assert!(g.member(x));
            prop_assert!(g.member(&x.inverse()));
        }
        for x in &gens {
            for y in &gens {
                prop_assert!(g.member(&x.mul(y)));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        prop_assert_eq!(fold_shuffled(&gens, &mut rng), g.clone());
        let mut reversed = gens.clone();
        reversed.reverse();
        prop_assert!(subgroup_equals(&gens, &reversed));
        // Folded graphs are deterministic: no two edges share source and label.
        let edges = g.edges();
        for (i, e) in edges.iter().enumerate() {
            for f in &edges[i + 1..] {
                prop_assert!(!(e.0 == f.0 && e.1 == f.1));
                prop_assert!(!(e.2 == f.2 && e.1 == f.1));
            }
        }
    }

    #[test]
    fn membership_matches_enumeration(gens in prop::collection::vec(raw_word(5), 1..=3), target in raw_word(8)) {
        let gens: Vec<FreeGroupWord> = gens.into_iter().map(FreeGroupWord::reduce).collect();
        prop_assume!(has_half_cancellation_bound(&gens));
        let target = FreeGroupWord::reduce(target);
        prop_assert_eq!(fold(&gens).member(&target), member_by_enumeration(&gens, &target, target.len()));
    }

    #[test]
    fn basis_letters_are_members(words in prop::collection::vec(prop::collection::vec(0u8..2, 1..=4), 2)) {
        let words: Vec<Word> = words.into_iter().map(Word).collect();
        if is_basis_of_full_group(&words, 2) {
            let gens: Vec<FreeGroupWord> = words.iter().map(|x| FreeGroupWord::from_letters(x)).collect();
            let g = fold(&gens);
            prop_assert!(g.member(&FreeGroupWord::generator(0)));
            prop_assert!(g.member(&FreeGroupWord::generator(1)));
        }
    }
}
