use std::collections::BTreeSet;

use proptest::prelude::*;
use subshift::lang::FactorLanguage;
use subshift::presets;
use subshift::rauzy::{is_locally_admissible, GraphPath, RauzyGraph};
use subshift::word::Word;

fn preset(name: &str, horizon: usize) -> FactorLanguage {
    FactorLanguage::build(&presets::preset(name).unwrap(), horizon).unwrap()
}

#[test]
fn dot_snapshots() {
    let cases = [
        ("fibonacci", 2, include_str!("golden/fibonacci_2.dot")),
        ("fibonacci", 1, include_str!("golden/fibonacci_1.dot")),
        ("periodic-ab", 1, include_str!("golden/periodic_ab_1.dot")),
    ];
    for (name, order, golden) in cases {
        let g = RauzyGraph::build(&preset(name, 6), order).unwrap();
        assert_eq!(g.to_dot(), golden, "{name} order {order}");
    }
}

#[test]
fn csv_export() {
    let g = RauzyGraph::build(&preset("fibonacci", 4), 2).unwrap();
    assert_eq!(
        g.to_csv(),
        "source,edge,target,central_label\naa,aab,ab,a\nab,aba,ba,b\nba,baa,aa,a\nba,bab,ab,a\n"
    );
}

#[test]
fn spec_examples() {
    let lang = preset("fibonacci", 6);
    let p = |s: &str| lang.parse(s).unwrap();
    let g2 = RauzyGraph::build(&lang, 2).unwrap();
    let g4 = RauzyGraph::build(&lang, 4).unwrap();
    assert_eq!(g2.central_label(&p("aab")).unwrap(), 0);
    assert_eq!(g2.central_label(&p("bab")).unwrap(), 0);
    assert_eq!(g4.central_label(&p("aabab")).unwrap(), 1);
    assert_eq!(g4.project(&p("aabab"), 2).unwrap(), p("aba"));
    assert_eq!(g4.project(&p("aaba"), 2).unwrap(), p("ab"));
    assert_eq!(g4.project(&p("aaba"), 4).unwrap(), p("aaba"));
    assert!(is_locally_admissible(&lang, &p("abaab"), 3).unwrap());
    assert!(!is_locally_admissible(&lang, &p("bb"), 2).unwrap());
    assert!(g2.is_strongly_connected());
}

/// Central-label words of all paths of length `len` in `Σ_{2n}`.
fn path_labels(g: &RauzyGraph, len: usize) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    let mut stack: Vec<GraphPath> = (0..g.vertices().len()).map(GraphPath::empty).collect();
    while let Some(path) = stack.pop() {
        if path.len() == len {
            out.insert(path.labels(g).unwrap());
            continue;
        }
        let end = path.end(g);
        for &e in g.out_edges(end) {
            stack.push(GraphPath::new(g, path.start(), [path.edges(), &[e]].concat()).unwrap());
        }
    }
    out
}

/// Words `u` of length `len` with some traced word `x u y` (`|x| = |y| = n`)
/// whose windows of length at most `2n + 1` are all factors.
fn admissible_labels(lang: &FactorLanguage, n: usize, len: usize) -> BTreeSet<Word> {
    let letters = lang.letters();
    let all = |k: usize| -> Vec<Vec<u8>> {
        (0..k).fold(vec![vec![]], |acc, _| {
            acc.iter()
                .flat_map(|w| letters.iter().map(move |&a| [w.as_slice(), &[a]].concat()))
                .collect()
        })
    };
    let mut out = BTreeSet::new();
    for traced in all(len + 2 * n) {
        if is_locally_admissible(lang, &traced, 2 * n + 1).unwrap() {
            out.insert(Word(traced[n..n + len].to_vec()));
        }
    }
    out
}

#[test]
fn path_labels_match_brute_force() {
    for name in ["fibonacci", "tribonacci", "thue-morse", "periodic-ab"] {
        let lang = preset(name, 8);
        for n in 1..=2 {
            let g = RauzyGraph::build(&lang, 2 * n).unwrap();
            for len in 1..=6 {
                assert_eq!(path_labels(&g, len), admissible_labels(&lang, n, len), "{name} n={n} len={len}");
            }
        }
    }
}

#[test]
fn lifting_round_trips() {
    let lang = preset("tribonacci", 12);
    for n in 1..=3 {
        let g = RauzyGraph::build(&lang, 2 * n).unwrap();
        for len in 1..=5 {
            for traced in lang.level(2 * n + len).unwrap() {
                let start = &traced[..2 * n];
                let end = &traced[len..];
                let u = &traced[n..n + len];
                let path = g.lift_word_to_path(&lang, start, u, end).unwrap();
                assert_eq!(path.labels(&g).unwrap().as_slice(), u);
                assert_eq!(path.traced_word(&g).as_slice(), traced.as_slice());
            }
        }
    }
}

proptest! {
    #[test]
    fn projections_cohere(preset_index in 0usize..5, m in 1usize..=4, k in 1usize..=4, n in 1usize..=4) {
        prop_assume!(n <= k && k <= m);
        let lang = preset(presets::NAMES[preset_index], 9);
        let gm = RauzyGraph::build(&lang, 2 * m).unwrap();
        let gk = RauzyGraph::build(&lang, 2 * k).unwrap();
        let gn = RauzyGraph::build(&lang, 2 * n).unwrap();
        for (i, e) in gm.edges().iter().enumerate() {
            let direct = gm.project(e, 2 * n).unwrap();
            let via = gk.project(&gm.project(e, 2 * k).unwrap(), 2 * n).unwrap();
            prop_assert_eq!(&direct, &via);
            prop_assert_eq!(gn.central_label(&direct).unwrap(), gm.central_label(e).unwrap());
            // Projection keeps incidence.
            let s = gm.project(&gm.vertices()[gm.source(i)], 2 * n).unwrap();
            let t = gm.project(&gm.vertices()[gm.target(i)], 2 * n).unwrap();
            let id = gn.edge_id(&direct).unwrap();
            prop_assert_eq!(&gn.vertices()[gn.source(id)], &s);
            prop_assert_eq!(&gn.vertices()[gn.target(id)], &t);
        }
    }

    #[test]
    fn counts_match_complexity(preset_index in 0usize..5, order in 1usize..=8) {
        let lang = preset(presets::NAMES[preset_index], 9);
        let g = RauzyGraph::build(&lang, order).unwrap();
        prop_assert_eq!(g.vertices().len(), lang.complexity(order).unwrap());
        prop_assert_eq!(g.edges().len(), lang.complexity(order + 1).unwrap());
        prop_assert!(g.is_strongly_connected());
    }
}
