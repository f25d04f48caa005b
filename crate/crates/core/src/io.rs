//! Input files, run configurations and artifact formatting.
//!
//! Every artifact carries the SHA-256 digest of the configuration that
//! produced it: CSV and DOT as a leading comment line, JSON as a
//! `config_digest` field.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::lang::{FactorLanguage, Source, Substitution};
use crate::word::{Alphabet, Word};

#[derive(Deserialize)]
#[serde(untagged)]
enum SourceFile {
    Substitution {
        alphabet: Vec<String>,
        rules: BTreeMap<String, String>,
    },
    Periodic {
        periodic: String,
    },
}

fn single_char(s: &str) -> Result<char> {
    let mut chars = s.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Ok(c),
        _ => Err(Error::InvalidInput(format!("symbol '{s}' is not a single character"))),
    }
}

/// Parses `{"alphabet": [...], "rules": {...}}` or `{"periodic": "..."}`.
pub fn parse_source(text: &str) -> Result<Source> {
    let file: SourceFile = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("bad source file: {e}")))?;
    match file {
        SourceFile::Periodic { periodic } => Source::periodic(&periodic),
        SourceFile::Substitution { alphabet, rules } => {
            let symbols = alphabet
                .iter()
                .map(|s| single_char(s))
                .collect::<Result<Vec<_>>>()?;
            let alphabet = Alphabet::new(symbols)?;
            for key in rules.keys() {
                let c = single_char(key)?;
                if alphabet.letter(c).is_none() {
                    return Err(Error::InvalidInput(format!("rule for unknown letter '{key}'")));
                }
            }
            let images = alphabet
                .symbols()
                .iter()
                .map(|c| {
                    let image = rules
                        .get(&c.to_string())
                        .ok_or_else(|| Error::InvalidInput(format!("no rule for '{c}'")))?;
                    alphabet.parse(image)
                })
                .collect::<Result<Vec<_>>>()?;
            Substitution::new(alphabet, images).map(Source::Substitution)
        }
    }
}

pub fn load_source(path: &Path) -> Result<Source> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    parse_source(&text)
}

/// Canonical JSON form of a source, the inverse of [`parse_source`].
pub fn source_to_json(source: &Source) -> serde_json::Value {
    match source {
        Source::Periodic { alphabet, period } => {
            serde_json::json!({ "periodic": alphabet.render(period) })
        }
        Source::Substitution(sub) => {
            let a = sub.alphabet();
            let rules: BTreeMap<String, String> = a
                .letters()
                .map(|l| (a.symbol(l).to_string(), a.render(sub.image(l))))
                .collect();
            let alphabet: Vec<String> = a.symbols().iter().map(char::to_string).collect();
            serde_json::json!({ "alphabet": alphabet, "rules": rules })
        }
    }
}

/// Everything that determines the output of a run.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub source: serde_json::Value,
    pub horizon: usize,
    pub n: Option<usize>,
    pub n_range: Option<(usize, usize)>,
    pub scan_budget: usize,
    pub max_center: Option<usize>,
    pub seed: u64,
    pub format: String,
}

impl RunConfig {
    pub fn digest(&self) -> String {
        let canonical = serde_json::to_string(self).expect("config serializes");
        hex::encode(Sha256::digest(canonical.as_bytes()))
    }
}

pub fn comment_header(prefix: &str, digest: &str) -> String {
    format!("{prefix} config-digest: {digest}\n")
}

/// Adds the digest to a JSON object and pretty-prints it.
pub fn json_with_digest(mut value: serde_json::Value, digest: &str) -> String {
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("config_digest".into(), digest.into());
    }
    let mut out = serde_json::to_string_pretty(&value).expect("json serializes");
    out.push('\n');
    out
}

pub fn language_csv(lang: &FactorLanguage, digest: &str) -> String {
    let mut out = comment_header("#", digest);
    out.push_str("length,word\n");
    for k in 1..=lang.horizon() {
        for w in lang.level(k).expect("within horizon") {
            let _ = writeln!(out, "{k},{}", lang.render(w));
        }
    }
    out
}

/// One line of a return-word report.
#[derive(Clone, Debug, Serialize)]
pub struct ReturnRow {
    pub n: usize,
    pub window: String,
    pub size: usize,
    pub min_len: usize,
    pub max_len: usize,
    pub is_code: bool,
    pub words: Vec<String>,
}

impl ReturnRow {
    pub fn new(lang: &FactorLanguage, n: usize, window: &[u8], words: &[Word], is_code: bool) -> Self {
        ReturnRow {
            n,
            window: lang.render(window),
            size: words.len(),
            min_len: words.iter().map(|w| w.len()).min().unwrap_or(0),
            max_len: words.iter().map(|w| w.len()).max().unwrap_or(0),
            is_code,
            words: words.iter().map(|w| lang.render(w)).collect(),
        }
    }
}

pub fn returns_csv(rows: &[ReturnRow], digest: &str) -> String {
    let mut out = comment_header("#", digest);
    out.push_str("n,size,min_len,max_len,is_code\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{},{}", r.n, r.size, r.min_len, r.max_len, r.is_code);
    }
    out
}

pub fn returns_json(rows: &[ReturnRow], digest: &str) -> String {
    json_with_digest(serde_json::json!({ "return_sets": rows }), digest)
}

pub fn rank_csv(profile: &[(usize, usize)], digest: &str) -> String {
    let mut out = comment_header("#", digest);
    out.push_str("n,rank\n");
    for (n, r) in profile {
        let _ = writeln!(out, "{n},{r}");
    }
    out
}

pub fn matrix_csv(matrix: &[Vec<i64>], digest: &str) -> String {
    let mut out = comment_header("#", digest);
    for row in matrix {
        let cells: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_round_trip() {
        let text = r#"{"alphabet": ["a", "b"], "rules": {"a": "ab", "b": "a"}}"#;
        let source = parse_source(text).unwrap();
        let again = parse_source(&source_to_json(&source).to_string()).unwrap();
        assert_eq!(source, again);
        let p = parse_source(r#"{"periodic": "ab"}"#).unwrap();
        assert_eq!(source_to_json(&p), serde_json::json!({"periodic": "ab"}));
    }

    #[test]
    fn bad_sources() {
        for text in [
            "{}",
            r#"{"alphabet": ["a"], "rules": {}}"#,
            r#"{"alphabet": ["ab"], "rules": {"ab": "a"}}"#,
            r#"{"alphabet": ["a"], "rules": {"a": "a", "b": "a"}}"#,
            r#"{"alphabet": ["a"], "rules": {"a": ""}}"#,
            r#"{"alphabet": ["a"], "rules": {"a": "x"}}"#,
        ] {
            assert!(matches!(parse_source(text), Err(Error::InvalidInput(_))), "{text}");
        }
        assert!(load_source(Path::new("/definitely/missing.json")).is_err());
    }

    #[test]
    fn digest_is_stable() {
        let config = RunConfig {
            command: "lang".into(),
            source: serde_json::json!({"periodic": "ab"}),
            horizon: 4,
            n: None,
            n_range: None,
            scan_budget: 100,
            max_center: None,
            seed: 0,
            format: "csv".into(),
        };
        assert_eq!(config.digest(), config.clone().digest());
        assert_eq!(config.digest().len(), 64);
        let mut other = config.clone();
        other.horizon = 5;
        assert_ne!(config.digest(), other.digest());
    }
}
