//! The preset verification harness: ten checks, each reporting what it
//! measured.

pub mod oracle;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;
use crate::freegroup::FreeGroupWord;
use crate::fundamental::{connecting_map, rank_profile, SpanningTreeBasis};
use crate::lang::FactorLanguage;
use crate::presets;
use crate::rauzy::RauzyGraph;
use crate::returns::{
    circular_ambiguity, default_window, delayed_return_words, is_code, lift_return_word,
    min_return_length_profile, return_set_at, return_words,
};
use crate::stallings::{fold, fold_shuffled, is_basis_of_full_group};
use crate::tree::{scan_tree_condition, Verdict};
use crate::word::Word;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub horizon: usize,
    pub scan_budget: usize,
    pub seed: u64,
    pub max_center: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            horizon: 40,
            scan_budget: 100_000,
            seed: 2013,
            max_center: 10,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub measured: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct PresetReport {
    pub preset: String,
    pub horizon: usize,
    pub scan_budget: usize,
    pub seed: u64,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "return sets are free bases"),
    (2, "tree-condition verdicts"),
    (3, "delayed return cardinality"),
    (4, "delayed return sets are codes"),
    (5, "central labeling identities"),
    (6, "connecting maps commute with projection"),
    (7, "rank profiles"),
    (8, "return cycles generate the fundamental group"),
    (9, "return lengths diverge"),
    (10, "oracle agreement"),
];

fn name_of(id: u8) -> &'static str {
    CRITERIA[usize::from(id) - 1].1
}

/// Which checks apply to a preset.
pub fn criteria_for(preset: &str) -> Vec<u8> {
    match preset {
        "fibonacci" => (1..=10).collect(),
        "tribonacci" => vec![1, 2, 3, 4, 5, 7, 8, 10],
        "thue-morse" | "paper-example" => vec![2, 3, 4, 5, 10],
        "periodic-ab" => vec![3, 4, 5, 7, 10],
        _ => Vec::new(),
    }
}

pub fn build_preset(preset: &str, config: &VerifyConfig) -> Result<FactorLanguage> {
    FactorLanguage::build(&presets::preset(preset)?, config.horizon)
}

pub fn verify_preset(preset: &str, config: &VerifyConfig) -> Result<PresetReport> {
    let lang = build_preset(preset, config)?;
    let mut criteria = Vec::new();
    for id in criteria_for(preset) {
        let (passed, measured) = if id == 10 {
            let (tree_ok, tree) = tree_oracle(&lang, config)?;
            let (fg_ok, fg) = free_group_oracles(config);
            (tree_ok && fg_ok, json!({ "tree": tree, "free_group": fg }))
        } else {
            run_criterion(id, preset, &lang, config)?
        };
        criteria.push(CriterionResult {
            id,
            name: name_of(id),
            passed,
            measured,
        });
    }
    Ok(PresetReport {
        preset: preset.to_string(),
        horizon: config.horizon,
        scan_budget: config.scan_budget,
        seed: config.seed,
        passed: criteria.iter().all(|c| c.passed),
        criteria,
    })
}

/// Every criterion over every preset it applies to, one result per
/// criterion.
pub fn acceptance(config: &VerifyConfig) -> Result<Vec<CriterionResult>> {
    let langs = presets::NAMES
        .iter()
        .map(|&p| Ok((p, build_preset(p, config)?)))
        .collect::<Result<Vec<_>>>()?;
    let mut results = Vec::new();
    for (id, name) in CRITERIA {
        let mut passed = true;
        let mut measured = serde_json::Map::new();
        for (preset, lang) in &langs {
            if !criteria_for(preset).contains(&id) {
                continue;
            }
            let (ok, value) = if id == 10 {
                tree_oracle(lang, config)?
            } else {
                run_criterion(id, preset, lang, config)?
            };
            passed &= ok;
            measured.insert(preset.to_string(), value);
        }
        if id == 10 {
            let (ok, value) = free_group_oracles(config);
            passed &= ok;
            measured.insert("free_group".into(), value);
        }
        results.push(CriterionResult {
            id,
            name,
            passed,
            measured: Value::Object(measured),
        });
    }
    Ok(results)
}

/// Runs one of criteria 1 to 9 on a preset.
pub fn run_criterion(id: u8, preset: &str, lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    match id {
        1 => return_bases(lang, config),
        2 => tree_verdict(preset, lang, config),
        3 => delayed_cardinality(lang, config),
        4 => delayed_codes(lang, config),
        5 => labeling(lang, config),
        6 => commutativity(lang, config),
        7 => ranks(preset, lang),
        8 => return_cycles_generate(lang, config),
        9 => return_length_growth(lang, config),
        _ => Ok((false, json!({ "error": format!("no criterion {id}") }))),
    }
}

fn render_all(lang: &FactorLanguage, words: &[Word]) -> Vec<String> {
    words.iter().map(|w| lang.render(w)).collect()
}

fn factors_up_to(lang: &FactorLanguage, max: usize) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for k in 1..=max.min(lang.horizon()) {
        out.extend(lang.level(k)?.iter().cloned());
    }
    Ok(out)
}

/// All `(u1, u2)` with both halves nonempty and `|u1 u2| <= max`.
fn splits(lang: &FactorLanguage, max: usize) -> Result<Vec<(Word, Word)>> {
    let mut out = Vec::new();
    for u in factors_up_to(lang, max)? {
        for cut in 1..u.len() {
            out.push((Word::from(&u[..cut]), Word::from(&u[cut..])));
        }
    }
    Ok(out)
}

fn return_bases(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let size = lang.alphabet().len();
    let mut checked = 0;
    let mut failures = Vec::new();
    for w in factors_up_to(lang, 8)? {
        let set = return_words(lang, &w, config.scan_budget)?;
        checked += 1;
        if set.len() != size || !is_basis_of_full_group(&set.words, size) {
            failures.push(json!({
                "word": lang.render(&w),
                "returns": render_all(lang, &set.words),
            }));
        }
    }
    Ok((
        failures.is_empty(),
        json!({ "words_checked": checked, "alphabet_size": size, "failures": failures }),
    ))
}

fn tree_verdict(preset: &str, lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let report = scan_tree_condition(lang, config.max_center)?;
    let expected = match preset {
        "fibonacci" | "tribonacci" => "pass",
        "thue-morse" => "fail with witness ε",
        _ => "fail",
    };
    let passed = match (preset, &report.verdict) {
        ("fibonacci" | "tribonacci", v) => *v == Verdict::PassUpToHorizon,
        ("thue-morse", Verdict::Fail { .. }) => report.witness.as_ref().is_some_and(|w| w.is_empty()),
        (_, Verdict::Fail { .. }) => report.witness.as_ref().is_some_and(|w| w.len() <= 10),
        _ => false,
    };
    Ok((passed, json!({ "expected": expected, "report": report })))
}

fn delayed_cardinality(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let text = lang.point_prefix(config.scan_budget)?;
    let mut checked = 0;
    let mut failures = Vec::new();
    for (u1, u2) in splits(lang, 6)? {
        let u = Word::concat(&[&u1, &u2]);
        let plain = return_words(lang, &u, config.scan_budget)?;
        let delayed = delayed_return_words(lang, &u1, &u2, config.scan_budget)?;
        let scanned = oracle::delayed_by_scan(&text, &u1, &u2);
        let library: BTreeSet<Word> = delayed.words.iter().cloned().collect();
        checked += 1;
        if delayed.len() != plain.len() || library != scanned {
            failures.push(json!({
                "u1": lang.render(&u1),
                "u2": lang.render(&u2),
                "plain": plain.len(),
                "delayed": delayed.len(),
                "scanned": scanned.len(),
            }));
        }
    }
    Ok((failures.is_empty(), json!({ "splits_checked": checked, "failures": failures })))
}

fn delayed_codes(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (u1, u2) in splits(lang, 6)? {
        let delayed = delayed_return_words(lang, &u1, &u2, config.scan_budget)?;
        let code = is_code(&delayed.words);
        let circular = circular_ambiguity(&delayed.words, 16);
        checked += 1;
        if !code.is_code || circular.is_some() {
            failures.push(json!({
                "u1": lang.render(&u1),
                "u2": lang.render(&u2),
                "is_code": code.is_code,
                "circular_witness": circular.map(|ws| render_all(lang, &ws)),
            }));
        }
    }
    Ok((failures.is_empty(), json!({ "sets_checked": checked, "failures": failures })))
}

fn labeling(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let graphs = (1..=4)
        .map(|m| RauzyGraph::build(lang, 2 * m))
        .collect::<Result<Vec<_>>>()?;
    let mut edges_checked = 0;
    let mut label_failures = Vec::new();
    for m in 1..=4 {
        let upper = &graphs[m - 1];
        for n in 1..=m {
            for e in upper.edges() {
                let image = upper.project(e, 2 * n)?;
                let lower = graphs[n - 1].central_label(&image)?;
                edges_checked += 1;
                if lower != upper.central_label(e)? || lower != e[m] {
                    label_failures.push(json!({ "edge": lang.render(e), "m": m, "n": n }));
                }
            }
        }
    }
    let mut returns_checked = 0;
    let mut lift_failures = Vec::new();
    for n in 1..=4 {
        let window = default_window(lang, n)?;
        let set = return_set_at(lang, &window, config.scan_budget)?;
        let g = &graphs[n - 1];
        for r in &set.words {
            let path = lift_return_word(g, lang, &window, r)?;
            returns_checked += 1;
            let traced = path.traced_word(g);
            let middle = &traced[n..traced.len() - n];
            if path.labels(g)? != *r || middle != r.as_slice() || path.end(g) != path.start() {
                lift_failures.push(json!({ "n": n, "r": lang.render(r) }));
            }
        }
    }
    Ok((
        label_failures.is_empty() && lift_failures.is_empty(),
        json!({
            "edges_checked": edges_checked,
            "return_words_checked": returns_checked,
            "projection_failures": label_failures,
            "lift_failures": lift_failures,
        }),
    ))
}

fn commutativity(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut rows = Vec::new();
    let mut passed = true;
    for (m, n) in [(2usize, 1usize), (3, 1), (3, 2)] {
        let gm = RauzyGraph::build(lang, 2 * m)?;
        let gn = RauzyGraph::build(lang, 2 * n)?;
        let window = default_window(lang, m)?;
        let upper = SpanningTreeBasis::new(&gm, &window)?;
        let lower = SpanningTreeBasis::new(&gn, &gm.project(&window, 2 * n)?)?;
        let map = connecting_map(&upper, &lower)?;
        let mut loops = oracle::closed_walks(&gm, upper.base(), 8);
        let exhaustive = loops.len();
        for _ in 0..200 {
            loops.push(oracle::random_loop(&gm, upper.base(), 40, &mut rng));
        }
        let mut mismatches = 0;
        for lp in &loops {
            let direct = lower.expand_loop(&gm.project_path(lp, &gn)?)?;
            let via_map = map.apply(&upper.expand_loop(lp)?);
            if direct != via_map {
                mismatches += 1;
            }
        }
        passed &= mismatches == 0;
        rows.push(json!({
            "m": m,
            "n": n,
            "short_loops": exhaustive,
            "random_loops": 200,
            "mismatches": mismatches,
            "map": map.to_json(),
        }));
    }
    Ok((passed, json!({ "levels": rows })))
}

fn ranks(preset: &str, lang: &FactorLanguage) -> Result<(bool, Value)> {
    let expected = match preset {
        "periodic-ab" => 1,
        _ => lang.alphabet().len(),
    };
    let profile = rank_profile(lang, 1..=5)?;
    let passed = profile.iter().all(|&(_, r)| r == expected);
    Ok((passed, json!({ "expected": expected, "profile": profile })))
}

fn return_cycles_generate(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut rows = Vec::new();
    let mut passed = true;
    for n in 1..=2 {
        let window = default_window(lang, n)?;
        let g = RauzyGraph::build(lang, 2 * n)?;
        let stb = SpanningTreeBasis::new(&g, &window)?;
        let set = return_set_at(lang, &window, config.scan_budget)?;
        let images = set
            .words
            .iter()
            .map(|r| stb.expand_loop(&lift_return_word(&g, lang, &window, r)?))
            .collect::<Result<Vec<_>>>()?;
        let rose: Vec<FreeGroupWord> = (0..stb.rank() as u32).map(FreeGroupWord::generator).collect();
        let full = fold(&images) == fold(&rose);
        passed &= full;
        let names = stb.generator_names();
        rows.push(json!({
            "n": n,
            "window": lang.render(&window),
            "rank": stb.rank(),
            "images": images.iter().map(|w| w.render(&names)).collect::<Vec<_>>(),
            "generates": full,
        }));
    }
    Ok((passed, json!({ "levels": rows })))
}

fn return_length_growth(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let profile = min_return_length_profile(lang, 1..=20, config.scan_budget)?;
    let monotone = profile.windows(2).all(|p| p[0].1 <= p[1].1);
    let (first, last) = (profile[0].1, profile[profile.len() - 1].1);
    Ok((
        monotone && last >= 5 * first,
        json!({ "profile": profile, "non_decreasing": monotone, "ratio": last as f64 / first as f64 }),
    ))
}

/// Library tree verdicts against the DFS oracle on every scanned center.
pub fn tree_oracle(lang: &FactorLanguage, config: &VerifyConfig) -> Result<(bool, Value)> {
    let mut centers = vec![Word::empty()];
    centers.extend(factors_up_to(lang, config.max_center)?);
    let mut disagreements = Vec::new();
    for w in &centers {
        let library = crate::tree::extension_graph(lang, w)?.is_tree()?.is_none();
        if library != oracle::extension_is_tree_by_dfs(lang, w)? {
            disagreements.push(lang.render(w));
        }
    }
    Ok((
        disagreements.is_empty(),
        json!({ "centers": centers.len(), "disagreements": disagreements }),
    ))
}

/// Stallings membership against product enumeration, and fold confluence.
///
/// Each case draws a generating set `X` with the half-cancellation bound,
/// for which enumerating products of `|w|` factors decides membership of
/// `w` exactly, and folds a scrambled presentation of the same subgroup.
pub fn free_group_oracles(config: &VerifyConfig) -> (bool, Value) {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut cases = Vec::new();
    while cases.len() < 1000 {
        let count = rng.gen_range(1..=3);
        let base: Vec<FreeGroupWord> = (0..count)
            .map(|_| {
                let len = rng.gen_range(1..=4);
                oracle::random_reduced_word(&mut rng, 2, len)
            })
            .collect();
        if !oracle::has_half_cancellation_bound(&base) {
            continue;
        }
        let presented = oracle::scramble(&base, &mut rng);
        // Half the targets are products of generators, half random words.
        let target = if rng.gen_bool(0.5) {
            (0..rng.gen_range(0..=3)).fold(FreeGroupWord::identity(), |acc, _| {
                let g = &presented[rng.gen_range(0..presented.len())];
                acc.mul(&if rng.gen_bool(0.5) { g.inverse() } else { g.clone() })
            })
        } else {
            let len = rng.gen_range(0..=6);
            oracle::random_reduced_word(&mut rng, 2, len)
        };
        cases.push((base, presented, target));
    }

    let mut member_disagreements = 0;
    let mut members = 0;
    for (base, presented, target) in &cases {
        let folded = fold(presented).member(target);
        members += usize::from(folded);
        if folded != oracle::member_by_enumeration(base, target, target.len()) {
            member_disagreements += 1;
        }
    }

    let mut confluence_failures = 0;
    for (_, presented, _) in cases.iter().take(200) {
        let reference = fold(presented);
        for _ in 0..20 {
            if fold_shuffled(presented, &mut rng) != reference {
                confluence_failures += 1;
            }
        }
    }
    (
        member_disagreements == 0 && confluence_failures == 0,
        json!({
            "membership_cases": cases.len(),
            "members": members,
            "membership_disagreements": member_disagreements,
            "confluence_cases": 200,
            "orders_per_case": 20,
            "confluence_failures": confluence_failures,
        }),
    )
}
