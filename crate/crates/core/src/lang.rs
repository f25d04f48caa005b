//! Factor languages of subshifts given by a primitive substitution or by a
//! periodic word.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::word::{self, Alphabet, Letter, Word};

/// Longest prefix we are willing to materialize while generating a language.
const MAX_GENERATED_LEN: usize = 1 << 27;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    rules: Vec<Word>,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, rules: Vec<Word>) -> Result<Self> {
        if rules.len() != alphabet.len() {
            return Err(Error::InvalidInput(format!(
                "{} rules for an alphabet of {} letters",
                rules.len(),
                alphabet.len()
            )));
        }
        for (letter, image) in alphabet.letters().zip(&rules) {
            if image.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "image of '{}' is empty",
                    alphabet.symbol(letter)
                )));
            }
            if image.iter().any(|&l| usize::from(l) >= alphabet.len()) {
                return Err(Error::InvalidInput("rule uses a foreign letter".into()));
            }
        }
        Ok(Substitution { alphabet, rules })
    }

    /// Builds a substitution from `(symbol, image)` pairs; the alphabet is
    /// the symbols in the order given.
    pub fn from_pairs(pairs: &[(char, &str)]) -> Result<Self> {
        let alphabet = Alphabet::new(pairs.iter().map(|p| p.0).collect())?;
        let rules = pairs
            .iter()
            .map(|(_, image)| alphabet.parse(image))
            .collect::<Result<Vec<_>>>()?;
        Substitution::new(alphabet, rules)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn image(&self, letter: Letter) -> &[Letter] {
        &self.rules[usize::from(letter)]
    }

    pub fn apply(&self, word: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(word.len() * self.max_image_len());
        for &l in word {
            out.extend_from_slice(self.image(l));
        }
        Word(out)
    }

    pub fn max_image_len(&self) -> usize {
        self.rules.iter().map(|r| r.len()).max().unwrap_or(0)
    }

    /// The `k`-th iterate of the substitution, `k >= 1`.
    pub fn power(&self, k: usize) -> Substitution {
        let rules = self
            .alphabet
            .letters()
            .map(|l| (1..k).fold(Word::from(self.image(l)), |w, _| self.apply(&w)))
            .collect();
        Substitution {
            alphabet: self.alphabet.clone(),
            rules,
        }
    }

    /// `m[i][j]` counts the occurrences of letter `j` in the image of `i`.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.alphabet.len();
        self.rules
            .iter()
            .map(|image| {
                let mut row = vec![0u64; n];
                for &l in image.iter() {
                    row[usize::from(l)] += 1;
                }
                row
            })
            .collect()
    }
}

/// Outcome of the primitivity test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// Smallest `k` with a positive `k`-th incidence power, when primitive.
    pub exponent: Option<usize>,
}

/// Searches for an entrywise positive power `M^k`, `k <= |A|^2`.
pub fn check_primitive(sub: &Substitution) -> Primitivity {
    let n = sub.alphabet().len();
    let base: Vec<Vec<bool>> = sub
        .incidence_matrix()
        .into_iter()
        .map(|row| row.into_iter().map(|c| c > 0).collect())
        .collect();
    let mut power = base.clone();
    for k in 1..=n * n {
        if power.iter().all(|row| row.iter().all(|&b| b)) {
            return Primitivity {
                primitive: true,
                exponent: Some(k),
            };
        }
        power = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).any(|t| power[i][t] && base[t][j]))
                    .collect()
            })
            .collect();
    }
    Primitivity {
        primitive: false,
        exponent: None,
    }
}

/// What a language is generated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Substitution(Substitution),
    Periodic { alphabet: Alphabet, period: Word },
}

impl Source {
    pub fn periodic(text: &str) -> Result<Self> {
        let alphabet = Alphabet::from_first_occurrence(text)?;
        let period = alphabet.parse(text)?;
        Ok(Source::Periodic { alphabet, period })
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Source::Substitution(s) => s.alphabet(),
            Source::Periodic { alphabet, .. } => alphabet,
        }
    }
}

/// How the one-sided point underlying a language is produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointGenerator {
    /// Fixed point of `power` (the smallest power of the substitution with a
    /// seed letter) starting at `seed`.
    FixedPoint {
        substitution: Substitution,
        power: Substitution,
        exponent: usize,
        seed: Letter,
    },
    Periodic { period: Word },
}

/// The sets `L_1(X), ..., L_N(X)` for an explicit horizon `N`.
#[derive(Clone, Debug)]
pub struct FactorLanguage {
    alphabet: Alphabet,
    horizon: usize,
    // levels[k] holds L_k sorted; levels[0] is unused.
    levels: Vec<Vec<Word>>,
    members: Vec<HashSet<Word>>,
    generator: PointGenerator,
}

/// Answer of [`FactorLanguage::check_uniform_recurrence`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub holds: bool,
    /// Least `k <= horizon` such that every word of `L_k` contains the word.
    pub bound: Option<usize>,
}

impl FactorLanguage {
    pub fn build(source: &Source, horizon: usize) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::InvalidInput("horizon must be at least 1".into()));
        }
        match source {
            Source::Substitution(sub) => Self::from_substitution(sub, horizon),
            Source::Periodic { alphabet, period } => {
                Self::from_periodic(alphabet.clone(), period.clone(), horizon)
            }
        }
    }

    fn from_substitution(sub: &Substitution, horizon: usize) -> Result<Self> {
        if !check_primitive(sub).primitive {
            return Err(Error::NonPrimitive);
        }
        let (exponent, seed) = seed_letter(sub)?;
        if sub.alphabet().len() == 1 {
            // a -> a^k: the fixed point is a^ω whatever k is.
            return Self::from_periodic(sub.alphabet().clone(), Word(vec![seed]), horizon);
        }
        let power = sub.power(exponent);

        // Iterate until the prefix is long enough, then keep iterating until
        // one more application adds no factor of length <= horizon.
        let target = horizon + power.max_image_len() * horizon;
        let mut prefix = Word(vec![seed]);
        while prefix.len() < target {
            prefix = grow(&power, &prefix)?;
        }
        let mut levels = collect_factors(&prefix, horizon, prefix.len());
        loop {
            let next = grow(&power, &prefix)?;
            let next_levels = collect_factors(&next, horizon, next.len());
            let stable = next_levels
                .iter()
                .zip(&levels)
                .all(|(a, b)| a.len() == b.len());
            prefix = next;
            levels = next_levels;
            if stable {
                break;
            }
        }

        Ok(Self::assemble(
            sub.alphabet().clone(),
            horizon,
            levels,
            PointGenerator::FixedPoint {
                substitution: sub.clone(),
                power,
                exponent,
                seed,
            },
        ))
    }

    fn from_periodic(alphabet: Alphabet, period: Word, horizon: usize) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidInput("periodic word is empty".into()));
        }
        let p = period.len();
        let text: Vec<Letter> = period.iter().copied().cycle().take(p + horizon).collect();
        let levels = collect_factors(&text, horizon, p);
        Ok(Self::assemble(
            alphabet,
            horizon,
            levels,
            PointGenerator::Periodic { period },
        ))
    }

    fn assemble(
        alphabet: Alphabet,
        horizon: usize,
        sets: Vec<BTreeSet<Word>>,
        generator: PointGenerator,
    ) -> Self {
        let levels: Vec<Vec<Word>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let members = levels.iter().map(|l| l.iter().cloned().collect()).collect();
        FactorLanguage {
            alphabet,
            horizon,
            levels,
            members,
            generator,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn generator(&self) -> &PointGenerator {
        &self.generator
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self.generator, PointGenerator::Periodic { .. })
    }

    pub fn check_len(&self, len: usize) -> Result<()> {
        if len > self.horizon {
            Err(Error::HorizonExceeded {
                requested: len,
                horizon: self.horizon,
            })
        } else {
            Ok(())
        }
    }

    /// `L_k`, sorted lexicographically.
    pub fn level(&self, k: usize) -> Result<&[Word]> {
        if k == 0 {
            return Err(Error::InvalidInput("L_0 is not stored".into()));
        }
        self.check_len(k)?;
        Ok(&self.levels[k])
    }

    /// Membership; the empty word counts as a member.
    pub fn contains(&self, word: &[Letter]) -> Result<bool> {
        if word.is_empty() {
            return Ok(true);
        }
        self.check_len(word.len())?;
        Ok(self.members[word.len()].contains(word))
    }

    /// Membership that turns a miss into [`Error::NotAFactor`].
    pub fn require(&self, word: &[Letter]) -> Result<()> {
        if self.contains(word)? {
            Ok(())
        } else {
            Err(Error::NotAFactor(self.render(word)))
        }
    }

    pub fn complexity(&self, k: usize) -> Result<usize> {
        self.level(k).map(<[Word]>::len)
    }

    /// Letters that actually occur, i.e. `L_1`.
    pub fn letters(&self) -> Vec<Letter> {
        self.levels[1].iter().map(|w| w[0]).collect()
    }

    pub fn render(&self, word: &[Letter]) -> String {
        self.alphabet.render(word)
    }

    pub fn parse(&self, text: &str) -> Result<Word> {
        self.alphabet.parse(text)
    }

    /// Does every word of `L_search_len` contain `u`?
    pub fn check_uniform_recurrence(&self, u: &[Letter], search_len: usize) -> Result<Recurrence> {
        self.check_len(search_len)?;
        self.require(u)?;
        let all_contain = |k: usize| self.levels[k].iter().all(|w| word::contains(w, u));
        let bound = (u.len().max(1)..=self.horizon).find(|&k| all_contain(k));
        Ok(Recurrence {
            holds: search_len >= 1 && all_contain(search_len),
            bound,
        })
    }

    /// The first `len` letters of the one-sided point generating the
    /// language (the fixed point, or the periodic word repeated).
    pub fn point_prefix(&self, len: usize) -> Result<Word> {
        match &self.generator {
            PointGenerator::Periodic { period } => {
                Ok(Word(period.iter().copied().cycle().take(len).collect()))
            }
            PointGenerator::FixedPoint { power, seed, .. } => {
                let mut w = Word(vec![*seed]);
                while w.len() < len {
                    w = grow(power, &w)?;
                }
                w.0.truncate(len);
                Ok(w)
            }
        }
    }
}

/// Smallest power admitting a letter `a` whose image starts with `a`, and the
/// first such letter in alphabet order.
fn seed_letter(sub: &Substitution) -> Result<(usize, Letter)> {
    let n = sub.alphabet().len();
    let first: Vec<Letter> = sub.alphabet().letters().map(|l| sub.image(l)[0]).collect();
    let limit = (1..=n).product::<usize>();
    let mut current: Vec<Letter> = sub.alphabet().letters().collect();
    for k in 1..=limit {
        current = current.iter().map(|&l| first[usize::from(l)]).collect();
        if let Some(seed) = sub.alphabet().letters().find(|&l| current[usize::from(l)] == l) {
            return Ok((k, seed));
        }
    }
    Err(Error::NoSeedLetter(limit))
}

fn grow(power: &Substitution, w: &Word) -> Result<Word> {
    let next = power.apply(w);
    if next.len() > MAX_GENERATED_LEN {
        return Err(Error::InvalidInput(
            "fixed point prefix grew past the generation limit".into(),
        ));
    }
    if next.len() <= w.len() {
        return Err(Error::InvalidInput("fixed point does not grow".into()));
    }
    Ok(next)
}

/// Factors of `text` of each length `1..=horizon` starting before `starts`.
fn collect_factors(text: &[Letter], horizon: usize, starts: usize) -> Vec<BTreeSet<Word>> {
    let mut levels = vec![BTreeSet::new(); horizon + 1];
    for i in 0..starts.min(text.len()) {
        let max = horizon.min(text.len() - i);
        for k in 1..=max {
            levels[k].insert(Word::from(&text[i..i + k]));
        }
    }
    levels
}
