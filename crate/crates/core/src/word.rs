//! Alphabets and finite words.
//!
//! Letters are stored as indices into their [`Alphabet`], so the
//! lexicographic order on [`Word`] is the order in which the symbols were
//! declared.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

pub type Letter = u8;

/// Ordered finite set of single-character symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, Letter>,
}

impl Alphabet {
    pub fn new(symbols: Vec<char>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidInput("alphabet is empty".into()));
        }
        if symbols.len() > usize::from(Letter::MAX) {
            return Err(Error::InvalidInput("alphabet is too large".into()));
        }
        let mut index = HashMap::new();
        for (i, &c) in symbols.iter().enumerate() {
            if c.is_whitespace() || c.is_control() || c == '^' {
                return Err(Error::InvalidInput(format!("unusable symbol {c:?}")));
            }
            if index.insert(c, i as Letter).is_some() {
                return Err(Error::InvalidInput(format!("duplicate symbol '{c}'")));
            }
        }
        Ok(Alphabet { symbols, index })
    }

    /// Alphabet made of the distinct characters of `text`, in order of first
    /// appearance.
    pub fn from_first_occurrence(text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for c in text.chars() {
            if !symbols.contains(&c) {
                symbols.push(c);
            }
        }
        Alphabet::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.symbols[usize::from(letter)]
    }

    pub fn letter(&self, symbol: char) -> Option<Letter> {
        self.index.get(&symbol).copied()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.symbols.len() as Letter
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        text.chars()
            .map(|c| {
                self.letter(c)
                    .ok_or_else(|| Error::InvalidInput(format!("symbol '{c}' not in alphabet")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    pub fn render(&self, word: &[Letter]) -> String {
        word.iter().map(|&l| self.symbol(l)).collect()
    }
}

/// A finite word over an alphabet, as letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(parts: &[&[Letter]]) -> Word {
        Word(parts.concat())
    }

    /// Every position where `pattern` occurs.
    pub fn occurrences<'a>(&'a self, pattern: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
        occurrences(&self.0, pattern)
    }
}

pub(crate) fn occurrences<'a>(
    text: &'a [Letter],
    pattern: &'a [Letter],
) -> impl Iterator<Item = usize> + 'a {
    let len = pattern.len();
    let last = (text.len() + 1).saturating_sub(len.max(1));
    (0..last).filter(move |&i| &text[i..i + len] == pattern)
}

pub(crate) fn contains(text: &[Letter], pattern: &[Letter]) -> bool {
    pattern.is_empty() || text.windows(pattern.len()).any(|w| w == pattern)
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl std::borrow::Borrow<[Letter]> for Word {
    fn borrow(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl From<&[Letter]> for Word {
    fn from(v: &[Letter]) -> Self {
        Word(v.to_vec())
    }
}

/// Pairs a word with its alphabet for display.
pub struct Display<'a>(pub &'a Alphabet, pub &'a [Letter]);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_empty() {
            return f.write_str("ε");
        }
        f.write_str(&self.0.render(self.1))
    }
}
