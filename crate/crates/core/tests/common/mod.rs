#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;
use wordrepeats::{Letter, Word};

/// Uniform word over an alphabet of `alphabet` letters.
pub fn uniform_word(rng: &mut StdRng, len: usize, alphabet: Letter) -> Word {
    (0..len).map(|_| rng.gen_range(0..alphabet)).collect()
}

/// Appends uniformly drawn letters until the word has exactly `target`
/// repeats.
pub fn word_by_uniform_draws(rng: &mut StdRng, target: usize) -> Word {
    let alphabet = rng.gen_range(1..=3 * target as Letter + 2);
    let mut letters = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut repeats = 0;
    while repeats < target {
        let letter = rng.gen_range(0..alphabet);
        if !seen.insert(letter) {
            repeats += 1;
        }
        letters.push(letter);
    }
    Word::new(letters)
}

/// A word with exactly `target` repeats in which no value occurs more than
/// `max_mult` times, so the constant pattern `0^{max_mult+1}` is absent.
pub fn word_with_capped_multiplicity(rng: &mut StdRng, target: usize, max_mult: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::new();
    let mut counts: Vec<(Letter, usize)> = Vec::new();
    let mut repeats = 0;
    let fresh_bias = rng.gen_range(0.05..0.6);
    while repeats < target {
        let open: Vec<usize> = (0..counts.len()).filter(|&i| counts[i].1 < max_mult).collect();
        if open.is_empty() || rng.gen_bool(fresh_bias) {
            let value = loop {
                let candidate = rng.gen_range(0..10_000);
                if counts.iter().all(|&(v, _)| v != candidate) {
                    break candidate;
                }
            };
            counts.push((value, 1));
            letters.push(value);
        } else {
            let i = *open.choose(rng).unwrap();
            counts[i].1 += 1;
            letters.push(counts[i].0);
            repeats += 1;
        }
    }
    Word::new(letters)
}

/// A random arrangement of `values` distinct letters, each used `mult` times.
pub fn shuffled_multiset(rng: &mut StdRng, values: usize, mult: usize) -> Word {
    let mut letters: Vec<Letter> = (0..values as Letter)
        .flat_map(|v| std::iter::repeat_n(v, mult))
        .collect();
    letters.shuffle(rng);
    Word::new(letters)
}

/// Quadratic DP for the longest subsequence whose consecutive letters all
/// satisfy `ok`.
pub fn dp_longest(letters: &[Letter], ok: impl Fn(Letter, Letter) -> bool) -> usize {
    let mut best = vec![1usize; letters.len()];
    for i in 0..letters.len() {
        for j in 0..i {
            if ok(letters[j], letters[i]) {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// Ordered Bell numbers from `a(n) = sum_{i=1..n} C(n,i) a(n-i)`.
pub fn ordered_bell(len: usize) -> u64 {
    let mut a = vec![1u64];
    for n in 1..=len {
        let mut binom = 1u64;
        let mut total = 0;
        for i in 1..=n {
            binom = binom * (n - i + 1) as u64 / i as u64;
            total += binom * a[n - i];
        }
        a.push(total);
    }
    a[len]
}
