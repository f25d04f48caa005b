//! Extension graphs and the tree condition.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lang::FactorLanguage;
use crate::word::{Letter, Word};

/// Bipartite graph of one-letter extensions of `center`: left letters `a`
/// with `aw` a factor, right letters `b` with `wb` a factor, and an edge
/// `(a, b)` for every factor `awb`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionGraph {
    pub center: Word,
    pub left: Vec<Letter>,
    pub right: Vec<Letter>,
    pub edges: Vec<(Letter, Letter)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TreeFailure {
    Disconnected,
    HasCycle,
}

impl std::fmt::Display for TreeFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            TreeFailure::Disconnected => "disconnected",
            TreeFailure::HasCycle => "has-cycle",
        })
    }
}

pub fn extension_graph(lang: &FactorLanguage, w: &[Letter]) -> Result<ExtensionGraph> {
    lang.check_len(w.len() + 2)?;
    if !w.is_empty() {
        lang.require(w)?;
    }
    let letters = lang.letters();
    let with = |prefix: &[Letter], suffix: &[Letter]| Word::concat(&[prefix, w, suffix]);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for &x in &letters {
        if lang.contains(&with(&[x], &[]))? {
            left.push(x);
        }
        if lang.contains(&with(&[], &[x]))? {
            right.push(x);
        }
    }
    let mut edges = Vec::new();
    for &a in &left {
        for &b in &right {
            if lang.contains(&with(&[a], &[b]))? {
                edges.push((a, b));
            }
        }
    }
    Ok(ExtensionGraph {
        center: Word::from(w),
        left,
        right,
        edges,
    })
}

impl ExtensionGraph {
    pub fn vertex_count(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// `Ok(None)` for a tree, otherwise the first failed clause.
    pub fn is_tree(&self) -> Result<Option<TreeFailure>> {
        let n = self.vertex_count();
        if n == 0 {
            return Err(Error::EmptyGraph(format!("center {:?}", self.center.as_slice())));
        }
        let index = |side: &[Letter], x: Letter| side.iter().position(|&y| y == x).unwrap();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut components = n;
        for &(a, b) in &self.edges {
            let u = find(&mut parent, index(&self.left, a));
            let v = find(&mut parent, self.left.len() + index(&self.right, b));
            if u != v {
                parent[u] = v;
                components -= 1;
            }
        }
        Ok(if components > 1 {
            Some(TreeFailure::Disconnected)
        } else if self.edges.len() != n - 1 {
            Some(TreeFailure::HasCycle)
        } else {
            None
        })
    }

    pub fn to_dot(&self, lang: &FactorLanguage) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph extension {{");
        let _ = writeln!(out, "  label=\"{}\";", crate::word::Display(lang.alphabet(), &self.center));
        for &a in &self.left {
            let _ = writeln!(out, "  \"L{0}\" [label=\"{0}\"];", lang.alphabet().symbol(a));
        }
        for &b in &self.right {
            let _ = writeln!(out, "  \"R{0}\" [label=\"{0}\"];", lang.alphabet().symbol(b));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(
                out,
                "  \"L{}\" -- \"R{}\";",
                lang.alphabet().symbol(a),
                lang.alphabet().symbol(b)
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    PassUpToHorizon,
    Fail { witness: String, reason: TreeFailure },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthStats {
    pub length: usize,
    pub centers: usize,
    pub trees: usize,
    pub disconnected: usize,
    pub cyclic: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeConditionReport {
    pub horizon: usize,
    pub max_center: usize,
    #[serde(flatten)]
    pub verdict: Verdict,
    #[serde(skip)]
    pub witness: Option<Word>,
    pub per_length: Vec<LengthStats>,
}

impl TreeConditionReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::PassUpToHorizon
    }
}

/// Checks `G_w` for the empty word and every factor of length up to
/// `max_center`. The witness is the first failure, shortest then
/// lexicographic.
pub fn scan_tree_condition(lang: &FactorLanguage, max_center: usize) -> Result<TreeConditionReport> {
    lang.check_len(max_center + 2)?;
    let mut per_length = Vec::new();
    let mut witness: Option<(Word, TreeFailure)> = None;
    let empty = [Word::empty()];
    for length in 0..=max_center {
        let centers: &[Word] = if length == 0 { &empty } else { lang.level(length)? };
        let mut stats = LengthStats {
            length,
            centers: centers.len(),
            trees: 0,
            disconnected: 0,
            cyclic: 0,
        };
        for w in centers {
            match extension_graph(lang, w)?.is_tree()? {
                None => stats.trees += 1,
                Some(reason) => {
                    match reason {
                        TreeFailure::Disconnected => stats.disconnected += 1,
                        TreeFailure::HasCycle => stats.cyclic += 1,
                    }
                    if witness.is_none() {
                        witness = Some((w.clone(), reason));
                    }
                }
            }
        }
        per_length.push(stats);
    }
    let verdict = match &witness {
        None => Verdict::PassUpToHorizon,
        Some((w, reason)) => Verdict::Fail {
            witness: crate::word::Display(lang.alphabet(), w).to_string(),
            reason: *reason,
        },
    };
    Ok(TreeConditionReport {
        horizon: lang.horizon(),
        max_center,
        verdict,
        witness: witness.map(|(w, _)| w),
        per_length,
    })
}
