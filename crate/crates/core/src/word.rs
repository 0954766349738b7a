//! Words over the non-negative integers, their standardisation, and general
//! pattern containment.
//!
//! Positions exposed through [`Occurrence`] are 1-based throughout the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u64;

/// A finite sequence of non-negative integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn max_value(&self) -> Option<Letter> {
        self.0.iter().copied().max()
    }

    /// Number of occurrences of every letter, keyed by letter.
    pub fn multiplicities(&self) -> BTreeMap<Letter, usize> {
        let mut counts = BTreeMap::new();
        for &letter in &self.0 {
            *counts.entry(letter).or_insert(0) += 1;
        }
        counts
    }

    pub fn distinct_count(&self) -> usize {
        self.multiplicities().len()
    }

    /// Relabels letters order-preservingly onto `0..=m`.
    pub fn standardise(&self) -> Pattern {
        let mut values = self.0.clone();
        values.sort_unstable();
        values.dedup();
        let letters = self
            .0
            .iter()
            .map(|letter| values.binary_search(letter).expect("letter is present") as Letter)
            .collect();
        Pattern(Word(letters))
    }

    /// Occurrences of letters that are not the first occurrence of their value.
    pub fn repeats(&self) -> usize {
        self.len() - self.distinct_count()
    }

    pub fn reverse(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn subword(&self, occurrence: &Occurrence) -> Result<Word> {
        occurrence.check_against(self.len())?;
        Ok(Word(occurrence.iter().map(|&i| self.0[i - 1]).collect()))
    }

    /// `true` iff the letter at every 1-based position `i` is smaller than `i`.
    pub fn is_inversion_sequence(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &letter)| letter < (i as Letter) + 1)
    }

    /// Positions (1-based) of every occurrence of every letter.
    pub(crate) fn positions_by_letter(&self) -> BTreeMap<Letter, Vec<usize>> {
        let mut positions: BTreeMap<Letter, Vec<usize>> = BTreeMap::new();
        for (i, &letter) in self.0.iter().enumerate() {
            positions.entry(letter).or_default().push(i + 1);
        }
        positions
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Digit-string form when every letter is a single digit, space-separated
/// decimal integers otherwise.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&letter| letter <= 9) {
            for letter in &self.0 {
                write!(f, "{letter}")?;
            }
        } else {
            for (i, letter) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{letter}")?;
            }
        }
        Ok(())
    }
}

/// Accepts either separated decimal integers (`13 14 15`, `13,14,15`) or a
/// compact digit string (`13043134`). A space or comma selects the first form.
impl FromStr for Word {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        let text = input.trim();
        let parse_error = |reason: String| Error::Parse {
            input: input.to_string(),
            reason,
        };
        if text.contains([' ', ',']) {
            text.split([' ', ','])
                .filter(|token| !token.is_empty())
                .map(|token| {
                    token
                        .parse::<Letter>()
                        .map_err(|_| parse_error(format!("{token:?} is not a non-negative integer")))
                })
                .collect()
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(Letter::from)
                        .ok_or_else(|| parse_error(format!("{c:?} is not a digit")))
                })
                .collect()
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// A standardised word: its distinct letters are exactly `0..=m`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Pattern(Word);

impl Pattern {
    pub fn new(word: Word) -> Result<Self> {
        let standard = word.standardise();
        if standard.0 == word {
            Ok(standard)
        } else {
            Err(Error::NotAPattern {
                word: word.to_string(),
            })
        }
    }

    pub fn word(&self) -> &Word {
        &self.0
    }

    pub fn into_word(self) -> Word {
        self.0
    }

    /// Positional reversal; a reversed pattern is still a pattern.
    pub fn reverse(&self) -> Pattern {
        Pattern(self.0.reverse())
    }
}

impl Deref for Pattern {
    type Target = Word;

    fn deref(&self) -> &Word {
        &self.0
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(input: &str) -> Result<Self> {
        Pattern::new(input.parse()?)
    }
}

/// Strictly increasing 1-based positions into a host word.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Occurrence(Vec<usize>);

impl Occurrence {
    /// Fails unless the positions are at least 1 and strictly increasing.
    pub fn new(indices: Vec<usize>) -> Result<Self> {
        if indices.first().is_some_and(|&first| first == 0) {
            return Err(Error::InvalidOccurrence("positions are 1-based".into()));
        }
        if indices.windows(2).any(|pair| pair[0] >= pair[1]) {
            return Err(Error::InvalidOccurrence(format!(
                "positions {indices:?} are not strictly increasing"
            )));
        }
        Ok(Occurrence(indices))
    }

    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(Occurrence::new(indices.clone()).is_ok());
        Occurrence(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn into_indices(self) -> Vec<usize> {
        self.0
    }

    /// `true` if every position is valid in a host of length `host_len`.
    pub fn fits(&self, host_len: usize) -> bool {
        self.check_against(host_len).is_ok()
    }

    fn check_against(&self, host_len: usize) -> Result<()> {
        Occurrence::new(self.0.clone())?;
        match self.0.last() {
            Some(&last) if last > host_len => Err(Error::InvalidOccurrence(format!(
                "position {last} exceeds host length {host_len}"
            ))),
            _ => Ok(()),
        }
    }
}

impl Deref for Occurrence {
    type Target = [usize];

    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Occurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, index) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{index}")?;
        }
        f.write_str("]")
    }
}

/// `true` when the subword of `host` at `occurrence` standardises to `pattern`.
pub fn is_occurrence_of(host: &Word, occurrence: &Occurrence, pattern: &Pattern) -> bool {
    host.subword(occurrence)
        .is_ok_and(|sub| sub.standardise() == *pattern)
}

/// Finds the lexicographically least occurrence of `pattern` in `word`.
///
/// Plain backtracking over host positions: each candidate position is
/// accepted only if its letter compares with every already chosen letter the
/// same way the pattern letters do. Exponential in the pattern length in the
/// worst case.
pub fn contains(word: &Word, pattern: &Pattern) -> Option<Occurrence> {
    let host = word.letters();
    let pat = pattern.letters();
    if pat.len() > host.len() {
        return None;
    }
    let mut chosen = Vec::with_capacity(pat.len());
    if extend(host, pat, &mut chosen, 0) {
        Some(Occurrence(chosen.into_iter().map(|i| i + 1).collect()))
    } else {
        None
    }
}

fn extend(host: &[Letter], pat: &[Letter], chosen: &mut Vec<usize>, start: usize) -> bool {
    let t = chosen.len();
    if t == pat.len() {
        return true;
    }
    let last_start = host.len() - (pat.len() - t);
    for i in start..=last_start {
        let fits = chosen
            .iter()
            .enumerate()
            .all(|(s, &j)| pat[s].cmp(&pat[t]) == host[j].cmp(&host[i]));
        if fits {
            chosen.push(i);
            if extend(host, pat, chosen, i + 1) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}
