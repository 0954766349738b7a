//! Exhaustive ground truth for tiny instances: Cayley permutations, balanced
//! words, and the largest repeat count of a word avoiding a family.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::patterns::{contains_any, family, family_mult};
use crate::word::{Letter, Pattern, Word};

pub const DEFAULT_CAYLEY_GUARD: u128 = 10;
pub const DEFAULT_BALANCED_GUARD: u128 = 16;
/// Cap on the number of candidate words examined by the avoider search.
pub const DEFAULT_SEARCH_GUARD: u128 = 2_000_000;

fn check_guard(what: &'static str, size: u128, guard: u128) -> Result<()> {
    if size > guard {
        Err(Error::SizeGuard { what, size, guard })
    } else {
        Ok(())
    }
}

/// Lexicographic stream of all standardised words of a fixed length.
#[derive(Clone, Debug)]
pub struct CayleyWords {
    word: Vec<Letter>,
    counts: Vec<usize>,
    pending: bool,
}

impl CayleyWords {
    fn new(len: usize) -> Self {
        let mut words = CayleyWords {
            word: Vec::with_capacity(len),
            counts: vec![0; len],
            pending: true,
        };
        words.fill(len);
        words
    }

    fn len(&self) -> usize {
        self.counts.len()
    }

    /// Whether placing `value` next keeps the prefix completable: every value
    /// below the running maximum that is still unused needs its own slot.
    fn feasible(&self, value: usize) -> bool {
        let remaining = self.len() - self.word.len() - 1;
        let top = self
            .counts
            .iter()
            .rposition(|&c| c > 0)
            .map_or(value, |m| m.max(value));
        let missing = (0..=top)
            .filter(|&x| x != value && self.counts[x] == 0)
            .count();
        missing <= remaining
    }

    fn place(&mut self, value: usize) {
        self.counts[value] += 1;
        self.word.push(value as Letter);
    }

    /// Completes the prefix with the least feasible letters.
    fn fill(&mut self, len: usize) {
        while self.word.len() < len {
            let value = (0..len).find(|&v| self.feasible(v)).expect("0 or a missing value fits");
            self.place(value);
        }
    }

    fn advance(&mut self) -> bool {
        let len = self.len();
        while let Some(last) = self.word.pop() {
            let last = last as usize;
            self.counts[last] -= 1;
            if let Some(value) = (last + 1..len).find(|&v| self.feasible(v)) {
                self.place(value);
                self.fill(len);
                return true;
            }
        }
        false
    }
}

impl Iterator for CayleyWords {
    type Item = Pattern;

    fn next(&mut self) -> Option<Pattern> {
        if !self.pending {
            return None;
        }
        let current = Pattern::new(Word::new(self.word.clone())).expect("generated words are standardised");
        self.pending = self.advance();
        Some(current)
    }
}

/// Every standardised word of length `len`, in lexicographic order.
pub fn enumerate_cayley(len: usize, guard: u128) -> Result<CayleyWords> {
    check_guard("Cayley permutation length", len as u128, guard)?;
    Ok(CayleyWords::new(len))
}

/// Rearranges `letters` into the next permutation in lexicographic order;
/// `false` once the last one is reached.
fn next_permutation(letters: &mut [Letter]) -> bool {
    let Some(pivot) = letters.windows(2).rposition(|pair| pair[0] < pair[1]) else {
        return false;
    };
    let successor = letters
        .iter()
        .rposition(|&x| x > letters[pivot])
        .expect("an element after the pivot is larger");
    letters.swap(pivot, successor);
    letters[pivot + 1..].reverse();
    true
}

/// Lexicographic stream of the distinct arrangements of a multiset.
#[derive(Clone, Debug)]
pub struct Arrangements {
    letters: Vec<Letter>,
    pending: bool,
}

impl Arrangements {
    pub fn new(mut letters: Vec<Letter>) -> Self {
        letters.sort_unstable();
        Arrangements {
            letters,
            pending: true,
        }
    }
}

impl Iterator for Arrangements {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if !self.pending {
            return None;
        }
        let current = Word::new(self.letters.clone());
        self.pending = next_permutation(&mut self.letters);
        Some(current)
    }
}

/// All words with exactly `mult` copies of each of `1..=values`.
pub fn enumerate_balanced(values: usize, mult: usize, guard: u128) -> Result<Arrangements> {
    check_guard("balanced word length values*mult", values as u128 * mult as u128, guard)?;
    let letters = (1..=values as Letter)
        .flat_map(|v| std::iter::repeat_n(v, mult))
        .collect();
    Ok(Arrangements::new(letters))
}

/// Writes one word per line in the shared text format.
pub fn write_words<W: Write>(out: &mut W, words: impl IntoIterator<Item = impl std::fmt::Display>) -> io::Result<()> {
    for word in words {
        writeln!(out, "{word}")?;
    }
    Ok(())
}

fn multinomial(counts: &[usize]) -> u128 {
    let mut total = 0u128;
    let mut result = 1u128;
    for &count in counts {
        for i in 1..=count as u128 {
            total += 1;
            result = result * total / i;
        }
    }
    result
}

/// Every vector in `[low, high]^len`, lexicographically.
fn count_vectors(len: usize, low: usize, high: usize) -> Vec<Vec<usize>> {
    (0..len).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                (low..=high).map(move |c| {
                    let mut next = prefix.clone();
                    next.push(c);
                    next
                })
            })
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxRepeats {
    /// Largest repeat count of a word avoiding the family, `m(n,k) - 1` when
    /// the search bound is not binding.
    pub repeats: usize,
    /// Lexicographically least standardised avoider with that many repeats;
    /// `None` when only the empty word avoids the family.
    pub witness: Option<Word>,
    pub candidates: u128,
}

/// Searches standardised words over at most `max_values` values, each value
/// occurring between 2 and `k + 1` times, for the most repeats among words
/// avoiding `family(n, k)`.
///
/// Letters occurring once are left out: removing them changes neither the
/// repeat count nor avoidance, and a value occurring `k + 2` times is already
/// the constant pattern. The answer is only a lower bound on `m(n,k) - 1`
/// unless `max_values` is large enough to cover every avoider.
pub fn max_repeats_avoiding(n: usize, k: usize, max_values: usize, guard: u128) -> Result<MaxRepeats> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let vectors: Vec<Vec<usize>> = (0..=max_values)
        .flat_map(|d| count_vectors(d, 2, k + 1))
        .collect();
    let candidates: u128 = vectors.iter().map(|v| multinomial(v)).sum();
    check_guard("avoider search candidates", candidates, guard)?;
    let members = family(n, k);

    // per count vector: the first avoider in lexicographic order
    let best = vectors
        .par_iter()
        .filter_map(|counts| {
            let letters = counts
                .iter()
                .enumerate()
                .flat_map(|(value, &c)| std::iter::repeat_n(value as Letter, c))
                .collect();
            Arrangements::new(letters)
                .find(|word| contains_any(word, &members).is_none())
                .map(|word| (word.repeats(), word))
        })
        .reduce_with(|a, b| {
            // more repeats first, then the smaller word
            if (a.0, std::cmp::Reverse(&a.1)) >= (b.0, std::cmp::Reverse(&b.1)) {
                a
            } else {
                b
            }
        });
    let (repeats, witness) = match best {
        Some((repeats, word)) if !word.is_empty() => (repeats, Some(word)),
        Some((repeats, _)) => (repeats, None),
        None => (0, None),
    };
    Ok(MaxRepeats {
        repeats,
        witness,
        candidates,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BalancedCheck {
    pub holds: bool,
    pub words_checked: u64,
    pub counterexample: Option<Word>,
}

/// Checks that every word with exactly `k + 1` copies of each of
/// `1..=n^6+1` contains a pattern of `family_mult(n, k)`.
pub fn check_unavoidability_balanced(n: usize, k: usize, guard: u128) -> Result<BalancedCheck> {
    let values = (n as u128)
        .checked_pow(6)
        .and_then(|v| v.checked_add(1))
        .filter(|&v| v <= usize::MAX as u128)
        .ok_or_else(|| Error::InvalidParameter(format!("n={n} is too large")))?;
    let values = values as usize;
    check_guard("balanced word length values*mult", values as u128 * (k as u128 + 1), guard)?;
    let members = family_mult(n, k);
    let mut words_checked = 0;
    for word in enumerate_balanced(values, k + 1, guard)? {
        words_checked += 1;
        if contains_any(&word, &members).is_none() {
            return Ok(BalancedCheck {
                holds: false,
                words_checked,
                counterexample: Some(word),
            });
        }
    }
    Ok(BalancedCheck {
        holds: true,
        words_checked,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strings<T: ToString>(items: impl Iterator<Item = T>) -> Vec<String> {
        items.map(|x| x.to_string()).collect()
    }

    #[test]
    fn cayley_small() {
        assert_eq!(strings(enumerate_cayley(1, 10).unwrap()), ["0"]);
        assert_eq!(strings(enumerate_cayley(2, 10).unwrap()), ["00", "01", "10"]);
        assert_eq!(enumerate_cayley(3, 10).unwrap().count(), 13);
        assert_eq!(strings(enumerate_cayley(0, 10).unwrap()), [""]);
        assert!(matches!(enumerate_cayley(11, 10), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn cayley_is_sorted_and_standardised() {
        let words: Vec<Pattern> = enumerate_cayley(5, 10).unwrap().collect();
        assert!(words.windows(2).all(|pair| pair[0] < pair[1]));
        assert!(words.iter().all(|p| p.standardise() == *p));
    }

    #[test]
    fn balanced_small() {
        assert_eq!(
            strings(enumerate_balanced(2, 2, 16).unwrap()),
            ["1122", "1212", "1221", "2112", "2121", "2211"]
        );
        assert_eq!(strings(enumerate_balanced(1, 3, 16).unwrap()), ["111"]);
        assert_eq!(strings(enumerate_balanced(2, 1, 16).unwrap()), ["12", "21"]);
        assert!(enumerate_balanced(5, 4, 16).is_err());
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial(&[2, 2]), 6);
        assert_eq!(multinomial(&[3, 3]), 20);
        assert_eq!(multinomial(&[]), 1);
        assert_eq!(multinomial(&[2, 2, 2]), 90);
    }

    #[test]
    fn max_repeats_examples() {
        let one = max_repeats_avoiding(1, 1, 3, DEFAULT_SEARCH_GUARD).unwrap();
        assert_eq!(one.repeats, 1);
        assert_eq!(one.witness.unwrap().to_string(), "00");

        let two = max_repeats_avoiding(1, 2, 2, DEFAULT_SEARCH_GUARD).unwrap();
        assert_eq!(two.repeats, 2);
        assert_eq!(two.witness.unwrap().to_string(), "000");

        let zero = max_repeats_avoiding(0, 1, 3, DEFAULT_SEARCH_GUARD).unwrap();
        assert_eq!((zero.repeats, zero.witness), (0, None));

        assert!(max_repeats_avoiding(1, 1, 8, 1000).is_err());
    }

    #[test]
    fn balanced_check_examples() {
        for (k, count) in [(1, 6), (2, 20), (3, 70)] {
            let check = check_unavoidability_balanced(1, k, DEFAULT_BALANCED_GUARD).unwrap();
            assert!(check.holds);
            assert_eq!(check.words_checked, count);
        }
    }

    #[test]
    fn writes_one_word_per_line() {
        let mut out = Vec::new();
        write_words(&mut out, enumerate_balanced(2, 1, 16).unwrap()).unwrap();
        assert_eq!(String::from_utf8(out).unwrap(), "12\n21\n");
    }
}
