//! Reduced words in a free group on numbered generators.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::word::Letter;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gen {
    pub index: u32,
    pub inverse: bool,
}

impl Gen {
    pub fn new(index: u32) -> Self {
        Gen {
            index,
            inverse: false,
        }
    }

    pub fn inv(self) -> Self {
        Gen {
            index: self.index,
            inverse: !self.inverse,
        }
    }
}

/// A freely reduced word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeGroupWord(Vec<Gen>);

impl FreeGroupWord {
    pub fn identity() -> Self {
        FreeGroupWord(Vec::new())
    }

    pub fn generator(index: u32) -> Self {
        FreeGroupWord(vec![Gen::new(index)])
    }

    /// Free reduction of an arbitrary sequence of signed generators.
    pub fn reduce(raw: impl IntoIterator<Item = Gen>) -> Self {
        let mut out: Vec<Gen> = Vec::new();
        for g in raw {
            if out.last() == Some(&g.inv()) {
                out.pop();
            } else {
                out.push(g);
            }
        }
        FreeGroupWord(out)
    }

    /// A positive word over an alphabet, letters read as generators.
    pub fn from_letters(letters: &[Letter]) -> Self {
        Self::reduce(letters.iter().map(|&l| Gen::new(u32::from(l))))
    }

    pub fn gens(&self) -> &[Gen] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, other: &FreeGroupWord) -> FreeGroupWord {
        Self::reduce(self.0.iter().chain(&other.0).copied())
    }

    pub fn inverse(&self) -> FreeGroupWord {
        FreeGroupWord(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    /// Applies a homomorphism given by the images of the generators.
    pub fn substitute(&self, images: &[FreeGroupWord]) -> FreeGroupWord {
        Self::reduce(self.0.iter().flat_map(|g| {
            let image = &images[g.index as usize];
            let gens: Vec<Gen> = if g.inverse {
                image.inverse().0
            } else {
                image.0.clone()
            };
            gens
        }))
    }

    /// Signed number of occurrences of a generator.
    pub fn exponent_sum(&self, index: u32) -> i64 {
        self.0
            .iter()
            .filter(|g| g.index == index)
            .map(|g| if g.inverse { -1 } else { 1 })
            .sum()
    }

    /// Space separated names with `^-1` on inverses; `1` for the identity.
    pub fn render(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&names[g.index as usize]);
            if g.inverse {
                out.push_str("^-1");
            }
        }
        out
    }

    /// Inverse of [`render`](Self::render); the result is reduced.
    pub fn parse(text: &str, names: &[String]) -> Result<Self> {
        let lookup: HashMap<&str, u32> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i as u32))
            .collect();
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(stem) => (stem, true),
                None => (token, false),
            };
            let index = *lookup
                .get(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator '{name}'")))?;
            raw.push(Gen { index, inverse });
        }
        Ok(Self::reduce(raw))
    }
}

/// Determinant of a square integer matrix (fraction-free elimination).
pub fn determinant(matrix: &[Vec<i64>]) -> i128 {
    let n = matrix.len();
    if n == 0 {
        return 1;
    }
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}
