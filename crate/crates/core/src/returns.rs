//! Return words, delayed return words and the unique-decipherability checks
//! run on them.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::ops::RangeInclusive;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::FactorLanguage;
use crate::rauzy::{GraphPath, RauzyGraph};
use crate::word::{self, Letter, Word};

/// What a return set was computed for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReturnBase {
    Word(Word),
    Split { left: Word, right: Word },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ReturnKind {
    Plain,
    Delayed,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReturnWordSet {
    pub base: ReturnBase,
    pub kind: ReturnKind,
    /// Sorted lexicographically.
    pub words: Vec<Word>,
}

impl ReturnWordSet {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn min_len(&self) -> Option<usize> {
        self.words.iter().map(|w| w.len()).min()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.words.iter().map(|w| w.len()).max()
    }
}

/// Return words of `u`: the gaps between consecutive occurrences of `u` in a
/// prefix of the generating point.
///
/// For substitutive sources the scan covers `scan_budget` letters and fails
/// with [`Error::Incomplete`] unless the last quarter of the scan produced no
/// new word and the budget is at least four times the longest return seen.
/// Periodic sources are scanned over two periods, which is exact.
pub fn return_words(lang: &FactorLanguage, u: &[Letter], scan_budget: usize) -> Result<ReturnWordSet> {
    if u.is_empty() {
        return Err(Error::InvalidInput("return words of the empty word".into()));
    }
    lang.require(u)?;
    let incomplete = || Error::Incomplete {
        word: lang.render(u),
        budget: scan_budget,
    };

    let words: BTreeSet<Word> = if let crate::lang::PointGenerator::Periodic { period } =
        lang.generator()
    {
        let p = period.len();
        let text = lang.point_prefix(2 * p + u.len())?;
        let occ: Vec<usize> = word::occurrences(&text, u).collect();
        occ.windows(2)
            .filter(|pair| pair[0] < p)
            .map(|pair| Word::from(&text[pair[0]..pair[1]]))
            .collect()
    } else {
        let text = lang.point_prefix(scan_budget)?;
        let occ: Vec<usize> = word::occurrences(&text, u).collect();
        if occ.len() < 2 {
            return Err(incomplete());
        }
        // Discovery position = end of the occurrence closing the return.
        let mut first_seen: BTreeMap<Word, usize> = BTreeMap::new();
        for pair in occ.windows(2) {
            first_seen
                .entry(Word::from(&text[pair[0]..pair[1]]))
                .or_insert(pair[1] + u.len());
        }
        let last_new = first_seen.values().copied().max().unwrap_or(0);
        let longest = first_seen.keys().map(|w| w.len()).max().unwrap_or(0);
        if last_new * 4 > text.len() * 3 || text.len() < 4 * (longest + u.len()) {
            return Err(incomplete());
        }
        first_seen.into_keys().collect()
    };

    Ok(ReturnWordSet {
        base: ReturnBase::Word(Word::from(u)),
        kind: ReturnKind::Plain,
        words: words.into_iter().collect(),
    })
}

/// `u1^{-1} R(u1 u2) u1`: strip `u1` from the left of `v u1` for each return
/// word `v` of `u1 u2`.
pub fn delayed_return_words(
    lang: &FactorLanguage,
    u1: &[Letter],
    u2: &[Letter],
    scan_budget: usize,
) -> Result<ReturnWordSet> {
    if u1.is_empty() || u2.is_empty() {
        return Err(Error::EmptySplit);
    }
    let u = Word::concat(&[u1, u2]);
    let plain = return_words(lang, &u, scan_budget)?;
    let mut words: Vec<Word> = plain
        .words
        .iter()
        .map(|v| {
            let vu1 = Word::concat(&[v, u1]);
            Word::from(&vu1[u1.len()..])
        })
        .collect();
    words.sort();
    Ok(ReturnWordSet {
        base: ReturnBase::Split {
            left: Word::from(u1),
            right: Word::from(u2),
        },
        kind: ReturnKind::Delayed,
        words,
    })
}

/// The set `R_n` at a window of length `2n`, split into equal halves.
pub fn return_set_at(lang: &FactorLanguage, window: &[Letter], scan_budget: usize) -> Result<ReturnWordSet> {
    if window.is_empty() || !window.len().is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "window '{}' must have positive even length",
            lang.render(window)
        )));
    }
    lang.require(window)?;
    let half = window.len() / 2;
    delayed_return_words(lang, &window[..half], &window[half..], scan_budget)
}

/// The length-`2n` prefix of the generating point, used as the default window.
pub fn default_window(lang: &FactorLanguage, n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::InvalidInput("window half-length must be positive".into()));
    }
    lang.check_len(2 * n)?;
    lang.point_prefix(2 * n)
}

/// The cycle at `window` in `Σ_{2n}` whose central labels spell `r`.
pub fn lift_return_word(
    graph: &RauzyGraph,
    lang: &FactorLanguage,
    window: &[Letter],
    r: &[Letter],
) -> Result<GraphPath> {
    graph.lift_word_to_path(lang, window, r, window)
}

/// `(n, min |r|)` over `R_n` at the default windows.
pub fn min_return_length_profile(
    lang: &FactorLanguage,
    range: RangeInclusive<usize>,
    scan_budget: usize,
) -> Result<Vec<(usize, usize)>> {
    range
        .map(|n| {
            let window = default_window(lang, n)?;
            let set = return_set_at(lang, &window, scan_budget)?;
            Ok((n, set.min_len().unwrap_or(0)))
        })
        .collect()
}

/// Two distinct factorizations of one word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambiguity {
    pub word: Word,
    pub first: Vec<Word>,
    pub second: Vec<Word>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeCheck {
    pub is_code: bool,
    pub witness: Option<Ambiguity>,
}

/// Sardinas–Patterson test for unique decipherability.
pub fn is_code(words: &[Word]) -> CodeCheck {
    let code: Vec<Word> = words
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if code.iter().any(|w| w.is_empty()) {
        return CodeCheck {
            is_code: false,
            witness: Some(Ambiguity {
                word: Word::empty(),
                first: vec![Word::empty()],
                second: vec![Word::empty(), Word::empty()],
            }),
        };
    }

    // Each state: dangling suffix t with concat(ahead) = concat(behind) · t.
    struct State {
        suffix: Word,
        ahead: Vec<usize>,
        behind: Vec<usize>,
    }
    let mut queue = VecDeque::new();
    let mut seen = HashSet::new();
    for (i, x) in code.iter().enumerate() {
        for (j, y) in code.iter().enumerate() {
            if i != j && y.len() > x.len() && y.starts_with(x) {
                let suffix = Word::from(&y[x.len()..]);
                if seen.insert(suffix.clone()) {
                    queue.push_back(State {
                        suffix,
                        ahead: vec![j],
                        behind: vec![i],
                    });
                }
            }
        }
    }

    let words_of = |ids: &[usize]| ids.iter().map(|&i| code[i].clone()).collect::<Vec<_>>();
    while let Some(state) = queue.pop_front() {
        let t = &state.suffix;
        for (k, c) in code.iter().enumerate() {
            let mut behind = state.behind.clone();
            behind.push(k);
            if c == t {
                let first = words_of(&state.ahead);
                let word = Word(first.iter().flat_map(|w| w.iter().copied()).collect());
                return CodeCheck {
                    is_code: false,
                    witness: Some(Ambiguity {
                        word,
                        first,
                        second: words_of(&behind),
                    }),
                };
            }
            let next = if t.len() > c.len() && t.starts_with(c) {
                State {
                    suffix: Word::from(&t[c.len()..]),
                    ahead: state.ahead.clone(),
                    behind,
                }
            } else if c.len() > t.len() && c.starts_with(t) {
                State {
                    suffix: Word::from(&c[t.len()..]),
                    ahead: behind,
                    behind: state.ahead.clone(),
                }
            } else {
                continue;
            };
            if seen.insert(next.suffix.clone()) {
                queue.push_back(next);
            }
        }
    }
    CodeCheck {
        is_code: true,
        witness: None,
    }
}

/// Brute-force circular check: looks for a concatenation of code words of
/// total length at most `max_len` that admits two different sets of cut
/// points when read around a circle. Returns the offending sequence.
pub fn circular_ambiguity(words: &[Word], max_len: usize) -> Option<Vec<Word>> {
    let code: Vec<Word> = words
        .iter()
        .filter(|w| !w.is_empty())
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if code.is_empty() || max_len > 64 {
        return None;
    }
    let mut stack: Vec<usize> = Vec::new();
    let mut checked: HashSet<Word> = HashSet::new();
    search_circular(&code, max_len, &mut stack, 0, &mut checked)
}

fn search_circular(
    code: &[Word],
    max_len: usize,
    stack: &mut Vec<usize>,
    len: usize,
    checked: &mut HashSet<Word>,
) -> Option<Vec<Word>> {
    for (i, c) in code.iter().enumerate() {
        if len + c.len() > max_len {
            continue;
        }
        stack.push(i);
        let text = Word(stack.iter().flat_map(|&k| code[k].iter().copied()).collect());
        if checked.insert(text.clone()) && cyclic_cut_sets(code, &text) > 1 {
            return Some(stack.iter().map(|&k| code[k].clone()).collect());
        }
        if let Some(found) = search_circular(code, max_len, stack, len + c.len(), checked) {
            return Some(found);
        }
        stack.pop();
    }
    None
}

/// Number of distinct ways (as cut-point sets) to read `text` around a
/// circle as a sequence of code words; stops counting at 2.
fn cyclic_cut_sets(code: &[Word], text: &[Letter]) -> usize {
    let n = text.len();
    let mut found: HashSet<u64> = HashSet::new();
    for start in 0..n {
        let rotated: Vec<Letter> = text[start..].iter().chain(&text[..start]).copied().collect();
        let mut cuts = Vec::new();
        linear_factorizations(code, &rotated, 0, &mut cuts, &mut |cuts| {
            let mask = cuts
                .iter()
                .fold(0u64, |m, &c| m | 1 << ((c + start) % n));
            found.insert(mask);
            found.len() < 2
        });
        if found.len() > 1 {
            break;
        }
    }
    found.len()
}

fn linear_factorizations(
    code: &[Word],
    text: &[Letter],
    pos: usize,
    cuts: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if pos == text.len() {
        return visit(cuts);
    }
    for c in code {
        if text[pos..].starts_with(c) {
            cuts.push(pos);
            let go_on = linear_factorizations(code, text, pos + c.len(), cuts, visit);
            cuts.pop();
            if !go_on {
                return false;
            }
        }
    }
    true
}
