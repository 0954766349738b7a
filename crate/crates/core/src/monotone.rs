//! Longest monotone subwords and the Erdős–Szekeres guarantee.
//!
//! The longest-subword searches run in `O(L log L)`: a patience pass over the
//! reversed word yields, for every position, the length of the longest
//! monotone subword starting there, and a single forward sweep then picks the
//! lexicographically least maximum-length occurrence.

use std::cmp::Reverse;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Occurrence;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotone {
    NonDecreasing,
    NonIncreasing,
}

impl Monotone {
    /// Whether `later` may follow `earlier` in a subword of this shape.
    pub fn allows<T: Ord>(self, earlier: &T, later: &T) -> bool {
        match self {
            Monotone::NonDecreasing => earlier <= later,
            Monotone::NonIncreasing => earlier >= later,
        }
    }

    pub fn holds_for<T: Ord>(self, letters: &[T]) -> bool {
        letters.windows(2).all(|pair| self.allows(&pair[0], &pair[1]))
    }
}

/// For each element of `seq`, the length of the longest non-decreasing
/// subsequence ending at it.
fn nondecreasing_lengths_ending<T: Ord>(seq: impl Iterator<Item = T>) -> Vec<usize> {
    // tails[l] is the smallest possible last element of such a subsequence of length l + 1
    let mut tails: Vec<T> = Vec::new();
    let mut lengths = Vec::new();
    for item in seq {
        let pos = tails.partition_point(|tail| *tail <= item);
        if pos == tails.len() {
            tails.push(item);
        } else {
            tails[pos] = item;
        }
        lengths.push(pos + 1);
    }
    lengths
}

fn lengths_starting<T: Ord>(letters: &[T], shape: Monotone) -> Vec<usize> {
    let mut lengths = match shape {
        // read backwards, a non-decreasing run becomes non-increasing
        Monotone::NonDecreasing => nondecreasing_lengths_ending(letters.iter().rev().map(Reverse)),
        Monotone::NonIncreasing => nondecreasing_lengths_ending(letters.iter().rev()),
    };
    lengths.reverse();
    lengths
}

/// Lexicographically least maximum-length occurrence of `shape` in `letters`.
pub fn longest_monotone<T: Ord>(letters: &[T], shape: Monotone) -> Occurrence {
    let lengths = lengths_starting(letters, shape);
    let Some(&best) = lengths.iter().max() else {
        return Occurrence::default();
    };
    let mut picked: Vec<usize> = Vec::with_capacity(best);
    let mut needed = best;
    for (i, &length) in lengths.iter().enumerate() {
        if needed == 0 {
            break;
        }
        let follows = picked
            .last()
            .is_none_or(|&prev| shape.allows(&letters[prev], &letters[i]));
        if length >= needed && follows {
            picked.push(i);
            needed -= 1;
        }
    }
    Occurrence::from_sorted(picked.into_iter().map(|i| i + 1).collect())
}

pub fn longest_nondecreasing<T: Ord>(letters: &[T]) -> Occurrence {
    longest_monotone(letters, Monotone::NonDecreasing)
}

pub fn longest_nonincreasing<T: Ord>(letters: &[T]) -> Occurrence {
    longest_monotone(letters, Monotone::NonIncreasing)
}

/// Returns a non-decreasing occurrence of length `r + 1` or, failing that, a
/// non-increasing occurrence of length `s + 1`.
///
/// Requires `letters.len() > r * s`, which guarantees one of the two exists.
pub fn es_extract<T: Ord>(letters: &[T], r: usize, s: usize) -> Result<(Monotone, Occurrence)> {
    let needed = r
        .checked_mul(s)
        .and_then(|rs| rs.checked_add(1))
        .ok_or_else(|| Error::InvalidParameter(format!("r={r}, s={s} overflow")))?;
    if letters.len() < needed {
        return Err(Error::GuaranteeUnavailable {
            len: letters.len(),
            r,
            s,
            needed,
        });
    }
    for (shape, want) in [(Monotone::NonDecreasing, r + 1), (Monotone::NonIncreasing, s + 1)] {
        let occ = longest_monotone(letters, shape);
        if occ.len() >= want {
            let mut indices = occ.into_indices();
            indices.truncate(want);
            return Ok((shape, Occurrence::from_sorted(indices)));
        }
    }
    unreachable!("a word of length {} > {r}*{s} has a long monotone subword", letters.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    /// Quadratic DP: longest subsequence ending at each index.
    fn dp_longest(letters: &[u64], shape: Monotone) -> usize {
        let mut best = vec![1usize; letters.len()];
        for i in 0..letters.len() {
            for j in 0..i {
                if shape.allows(&letters[j], &letters[i]) {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    fn check(letters: &[u64], occ: &Occurrence, shape: Monotone) {
        let word = Word::new(letters.to_vec());
        let sub = word.subword(occ).unwrap();
        assert!(shape.holds_for(&sub));
        assert_eq!(occ.len(), dp_longest(letters, shape));
    }

    #[test]
    fn nondecreasing_examples() {
        assert_eq!(longest_nondecreasing(&w("0123")).indices(), &[1, 2, 3, 4]);
        assert_eq!(longest_nondecreasing(&w("3210")).len(), 1);
        let occ = longest_nondecreasing(&w("13043134"));
        assert_eq!(occ.len(), 5);
        assert_eq!(occ.indices(), &[1, 2, 5, 7, 8]);
        assert_eq!(w("13043134").subword(&occ).unwrap(), w("13334"));
    }

    #[test]
    fn nonincreasing_examples() {
        assert_eq!(longest_nonincreasing(&w("3210")).indices(), &[1, 2, 3, 4]);
        assert_eq!(longest_nonincreasing(&w("0123")).len(), 1);
        let occ = longest_nonincreasing(&w("13043134"));
        assert_eq!(occ.len(), 3);
        check(&w("13043134"), &occ, Monotone::NonIncreasing);
    }

    #[test]
    fn empty_word() {
        assert!(longest_nondecreasing::<u64>(&[]).is_empty());
        assert!(longest_nonincreasing::<u64>(&[]).is_empty());
    }

    #[test]
    fn es_examples() {
        // non-decreasing is preferred: 112 sits at [2,4,5]
        let (shape, occ) = es_extract(&w("21012"), 2, 2).unwrap();
        assert_eq!(shape, Monotone::NonDecreasing);
        assert_eq!(occ.indices(), &[2, 4, 5]);

        let (shape, occ) = es_extract(&w("0123"), 3, 1).unwrap();
        assert_eq!((shape, occ.indices()), (Monotone::NonDecreasing, &[1, 2, 3, 4][..]));

        let (shape, occ) = es_extract(&w("43210"), 2, 2).unwrap();
        assert_eq!((shape, occ.indices()), (Monotone::NonIncreasing, &[1, 2, 3][..]));

        assert!(matches!(
            es_extract(&w("2101"), 2, 2),
            Err(Error::GuaranteeUnavailable { len: 4, needed: 5, .. })
        ));
    }

    #[test]
    fn patience_matches_dp_exhaustively() {
        // all words of length <= 6 over {0,1,2}
        for len in 0..=6u32 {
            for code in 0..3u64.pow(len) {
                let letters: Vec<u64> = (0..len).map(|i| code / 3u64.pow(i) % 3).collect();
                for shape in [Monotone::NonDecreasing, Monotone::NonIncreasing] {
                    check(&letters, &longest_monotone(&letters, shape), shape);
                }
            }
        }
    }
}
