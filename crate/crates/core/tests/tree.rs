use subshift::lang::FactorLanguage;
use subshift::presets;
use subshift::tree::{extension_graph, scan_tree_condition, TreeFailure, Verdict};
use subshift::verify::oracle::extension_is_tree_by_dfs;
use subshift::word::Word;

fn preset(name: &str, horizon: usize) -> FactorLanguage {
    FactorLanguage::build(&presets::preset(name).unwrap(), horizon).unwrap()
}

fn centers(lang: &FactorLanguage, max: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for k in 1..=max {
        out.extend(lang.level(k).unwrap().iter().cloned());
    }
    out
}

#[test]
fn vertices_and_edges_are_consistent() {
    for name in presets::NAMES {
        let lang = preset(name, 9);
        for w in centers(&lang, 7) {
            let g = extension_graph(&lang, &w).unwrap();
            for &(a, b) in &g.edges {
                assert!(g.left.contains(&a) && g.right.contains(&b));
                assert!(lang.contains(&Word::concat(&[&[a], &w, &[b]])).unwrap());
            }
            // Every vertex carries an edge, since the language is extendable.
            for &a in &g.left {
                assert!(g.edges.iter().any(|e| e.0 == a));
            }
            for &b in &g.right {
                assert!(g.edges.iter().any(|e| e.1 == b));
            }
        }
    }
}

#[test]
fn tree_test_matches_dfs() {
    for name in presets::NAMES {
        let lang = preset(name, 9);
        for w in centers(&lang, 7) {
            let g = extension_graph(&lang, &w).unwrap();
            assert_eq!(
                g.is_tree().unwrap().is_none(),
                extension_is_tree_by_dfs(&lang, &w).unwrap(),
                "{name} {}",
                lang.render(&w)
            );
        }
    }
}

#[test]
fn verdicts() {
    for (name, passes) in [
        ("fibonacci", true),
        ("tribonacci", true),
        ("thue-morse", false),
        ("paper-example", false),
        ("periodic-ab", false),
    ] {
        let lang = preset(name, 10);
        let report = scan_tree_condition(&lang, 8).unwrap();
        assert_eq!(report.passed(), passes, "{name}");
        assert_eq!(report.per_length.len(), 9);
        for stats in &report.per_length {
            assert_eq!(stats.centers, stats.trees + stats.disconnected + stats.cyclic);
        }
    }
}

#[test]
fn witnesses_reproduce() {
    for (name, reason) in [("thue-morse", TreeFailure::HasCycle), ("paper-example", TreeFailure::Disconnected)] {
        let lang = preset(name, 10);
        let report = scan_tree_condition(&lang, 8).unwrap();
        let w = report.witness.clone().unwrap();
        assert_eq!(extension_graph(&lang, &w).unwrap().is_tree().unwrap(), Some(reason));
        assert_eq!(
            report.verdict,
            Verdict::Fail {
                witness: "ε".into(),
                reason
            }
        );
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["verdict"], "fail");
        assert_eq!(json["witness"], "ε");
    }
}
