//! Constructive extraction of an unavoidable pattern from a word with at
//! least `k n^6 + 1` repeats.
//!
//! The extraction follows the counting argument step by step and records
//! every intermediate choice in a [`WitnessTrace`]:
//!
//! 1. A value occurring `k + 2` times gives `0^{k+2}` directly.
//! 2. Otherwise at least `n^6 + 1` distinct values repeat. The first
//!    `n^6 + 1` of them (by first occurrence) are kept, and `w'` is the
//!    subword made of their first two occurrences.
//! 3. The first occurrences `a` in `w'` have distinct values, so
//!    Erdős–Szekeres gives a strictly monotone `a'` of length `n^3 + 1`.
//! 4. `a'` is cut into `n` blocks of `n^2 + 1` entries starting at
//!    `j = (t-1) n^2`. If, in some block, every second occurrence comes after
//!    the first occurrence of the block's last entry, a second
//!    Erdős–Szekeres step on those second occurrences yields a double run.
//! 5. Otherwise every block has an entry whose two occurrences both precede
//!    the block's last entry, and these entries spell a doubled monotone
//!    pattern.
//!
//! All trace positions are 1-based. Positions into `w'` are kept alongside
//! the map back to the original word.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monotone::{es_extract, Monotone};
use crate::patterns::{contains_constant, Direction, FamilyId, FamilyMember};
use crate::word::{Letter, Occurrence, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessTrace {
    pub n: usize,
    pub k: usize,
    pub family: FamilyId,
    /// Positions in the original word.
    pub occurrence: Occurrence,
    /// Absent when step 1 already produced `0^{k+2}`.
    pub reduction: Option<Reduction>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// The `n^6 + 1` repeated values, in order of first occurrence.
    pub chosen_values: Vec<Letter>,
    pub w_prime: Word,
    /// Where each letter of `w'` sits in the original word.
    pub w_prime_positions: Occurrence,
    /// First occurrences in `w'` (`a_0 ⋯ a_{n^6}`).
    pub a_occ: Occurrence,
    /// The monotone selection `a'_0 ⋯ a'_{n^3}`, as positions in `w'`.
    pub a_prime_occ: Occurrence,
    pub a_prime_direction: Direction,
    pub branch: Branch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Branch {
    /// Step 5: `i_t` (0-based index into `a'`) for each block `t = 1..=n`.
    Blocks { i_t: Vec<usize> },
    /// Step 4 applied to the block starting at `a'_j` (0-based).
    Claim {
        j: usize,
        /// Second occurrences of `a'_j ⋯ a'_{j+n^2}`, positions in `w'`.
        b_occ: Occurrence,
        /// Monotone selection of `b_occ` of length `n + 1`.
        b_prime_occ: Occurrence,
        /// First occurrences of the values of `b_prime_occ`.
        a_dd_occ: Occurrence,
    },
}

struct Powers {
    n2: usize,
    n3: usize,
    n6: usize,
}

impl Powers {
    fn new(n: usize) -> Result<Self> {
        let overflow = || Error::InvalidParameter(format!("n={n} is too large"));
        let n2 = n.checked_mul(n).ok_or_else(overflow)?;
        let n3 = n2.checked_mul(n).ok_or_else(overflow)?;
        let n6 = n3.checked_mul(n3).ok_or_else(overflow)?;
        Ok(Powers { n2, n3, n6 })
    }
}

fn direction_of(shape: Monotone) -> Direction {
    match shape {
        Monotone::NonDecreasing => Direction::Id,
        Monotone::NonIncreasing => Direction::Rev,
    }
}

fn strictly(direction: Direction, letters: &[Letter]) -> bool {
    letters.windows(2).all(|pair| match direction {
        Direction::Id => pair[0] < pair[1],
        Direction::Rev => pair[0] > pair[1],
    })
}

fn block_for(family: FamilyId, k: usize) -> usize {
    match family {
        FamilyId::Constant => k + 2,
        _ => 2,
    }
}

/// Required repeat count `k n^6 + 1`.
pub fn required_repeats(n: usize, k: usize) -> Option<u128> {
    (n as u128).checked_pow(6)?.checked_mul(k as u128)?.checked_add(1)
}

/// Occurrence positions of each value inside `w'`: (first, second).
fn occurrence_pairs(w_prime: &Word) -> BTreeMap<Letter, (usize, usize)> {
    w_prime
        .positions_by_letter()
        .into_iter()
        .map(|(value, positions)| (value, (positions[0], positions[1])))
        .collect()
}

fn first_occurrences(word: &Word) -> Vec<usize> {
    let mut seen = BTreeSet::new();
    (1..=word.len())
        .filter(|&i| seen.insert(word[i - 1]))
        .collect()
}

/// The first `count` repeated values and the positions of their first two
/// occurrences.
fn select_values(word: &Word, count: usize) -> (Vec<Letter>, Vec<usize>) {
    let mut repeated: Vec<(usize, Letter, usize)> = word
        .positions_by_letter()
        .into_iter()
        .filter(|(_, positions)| positions.len() >= 2)
        .map(|(value, positions)| (positions[0], value, positions[1]))
        .collect();
    repeated.sort_unstable();
    assert!(
        repeated.len() >= count,
        "only {} repeated values, expected at least {count}",
        repeated.len()
    );
    repeated.truncate(count);
    let values = repeated.iter().map(|&(_, value, _)| value).collect();
    let mut positions: Vec<usize> = repeated
        .iter()
        .flat_map(|&(first, _, second)| [first, second])
        .collect();
    positions.sort_unstable();
    (values, positions)
}

/// Runs the extraction on `word`, which must have at least `k n^6 + 1`
/// repeats.
pub fn extract_witness(word: &Word, n: usize, k: usize) -> Result<(FamilyId, Occurrence, WitnessTrace)> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "witness extraction needs n >= 1 and k >= 1 (got n={n}, k={k})"
        )));
    }
    let need = required_repeats(n, k)
        .ok_or_else(|| Error::InvalidParameter(format!("n={n}, k={k} overflow")))?;
    let have = word.repeats();
    if (have as u128) < need {
        return Err(Error::InsufficientRepeats { have, need });
    }
    let pw = Powers::new(n)?;

    if let Some(occurrence) = contains_constant(word, k + 2) {
        let trace = WitnessTrace {
            n,
            k,
            family: FamilyId::Constant,
            occurrence: occurrence.clone(),
            reduction: None,
        };
        return Ok((FamilyId::Constant, occurrence, trace));
    }

    let (chosen_values, positions) = select_values(word, pw.n6 + 1);
    let w_prime_positions = Occurrence::from_sorted(positions);
    let w_prime = word.subword(&w_prime_positions)?;
    let pairs = occurrence_pairs(&w_prime);

    let a_occ = first_occurrences(&w_prime);
    let a_values: Vec<Letter> = a_occ.iter().map(|&i| w_prime[i - 1]).collect();
    let (shape, within_a) = es_extract(&a_values, pw.n3, pw.n3)?;
    let a_dir = direction_of(shape);
    let a_prime: Vec<usize> = within_a.iter().map(|&i| a_occ[i - 1]).collect();
    debug_assert!(strictly(a_dir, &a_prime.iter().map(|&i| w_prime[i - 1]).collect::<Vec<_>>()));
    // (value, first, second) of a'_0 ⋯ a'_{n^3}
    let entries: Vec<(Letter, usize, usize)> = a_prime
        .iter()
        .map(|&i| {
            let value = w_prime[i - 1];
            let (first, second) = pairs[&value];
            (value, first, second)
        })
        .collect();

    let to_word = |positions: &[usize]| -> Occurrence {
        Occurrence::from_sorted(positions.iter().map(|&i| w_prime_positions[i - 1]).collect())
    };

    for t in 1..=n {
        let j = (t - 1) * pw.n2;
        let block = &entries[j..=j + pw.n2];
        let pivot = block[pw.n2].1;
        if block.iter().all(|&(_, _, second)| second > pivot) {
            let mut seconds: Vec<usize> = block.iter().map(|&(_, _, second)| second).collect();
            seconds.sort_unstable();
            let b_values: Vec<Letter> = seconds.iter().map(|&i| w_prime[i - 1]).collect();
            let (b_shape, within_b) = es_extract(&b_values, n, n)?;
            let b_dir = direction_of(b_shape);
            let b_prime: Vec<usize> = within_b.iter().map(|&i| seconds[i - 1]).collect();
            let mut a_dd: Vec<usize> = b_prime.iter().map(|&i| pairs[&w_prime[i - 1]].0).collect();
            a_dd.sort_unstable();

            let family = FamilyId::DoubleRun(a_dir, b_dir);
            let mut result = a_dd.clone();
            result.extend(&b_prime);
            let occurrence = to_word(&result);
            let reduction = Reduction {
                chosen_values,
                w_prime: w_prime.clone(),
                w_prime_positions: w_prime_positions.clone(),
                a_occ: Occurrence::from_sorted(a_occ),
                a_prime_occ: Occurrence::from_sorted(a_prime),
                a_prime_direction: a_dir,
                branch: Branch::Claim {
                    j,
                    b_occ: Occurrence::from_sorted(seconds),
                    b_prime_occ: Occurrence::from_sorted(b_prime),
                    a_dd_occ: Occurrence::from_sorted(a_dd),
                },
            };
            let trace = WitnessTrace {
                n,
                k,
                family,
                occurrence: occurrence.clone(),
                reduction: Some(reduction),
            };
            return Ok((family, occurrence, trace));
        }
    }

    // every block has an entry closed off before the block's last entry opens
    let mut i_t = Vec::with_capacity(n);
    let mut result = Vec::with_capacity(2 * (n + 1));
    for t in 1..=n {
        let pivot = entries[t * pw.n2].1;
        let i = ((t - 1) * pw.n2..t * pw.n2)
            .find(|&i| entries[i].2 < pivot)
            .expect("the block hypothesis failed, so some entry closes before the pivot");
        i_t.push(i);
        result.extend([entries[i].1, entries[i].2]);
    }
    let (_, first, second) = entries[pw.n3];
    result.extend([first, second]);
    let family = FamilyId::DoubledMonotone(a_dir);
    let occurrence = to_word(&result);
    let reduction = Reduction {
        chosen_values,
        w_prime,
        w_prime_positions,
        a_occ: Occurrence::from_sorted(a_occ),
        a_prime_occ: Occurrence::from_sorted(a_prime),
        a_prime_direction: a_dir,
        branch: Branch::Blocks { i_t },
    };
    let trace = WitnessTrace {
        n,
        k,
        family,
        occurrence: occurrence.clone(),
        reduction: Some(reduction),
    };
    Ok((family, occurrence, trace))
}

/// Re-checks every recorded step of `trace` against `word`.
pub fn validate_trace(word: &Word, trace: &WitnessTrace) -> bool {
    check_trace(word, trace).is_ok()
}

/// Like [`validate_trace`], naming the first failed check.
pub fn check_trace(word: &Word, trace: &WitnessTrace) -> Result<(), String> {
    let (n, k) = (trace.n, trace.k);
    ensure(n >= 1 && k >= 1, "parameters must be positive")?;
    let pw = Powers::new(n).map_err(|e| e.to_string())?;
    let member = FamilyMember::new(trace.family, n, block_for(trace.family, k));
    let sub = word
        .subword(&trace.occurrence)
        .map_err(|e| format!("result occurrence: {e}"))?;
    ensure(
        sub.standardise() == member.pattern,
        "result does not standardise to the claimed pattern",
    )?;

    let constant_available = contains_constant(word, k + 2).is_some();
    let Some(red) = &trace.reduction else {
        return ensure(trace.family == FamilyId::Constant, "missing reduction for a non-constant witness");
    };
    ensure(!constant_available, "a value occurs k+2 times, step 1 should have applied")?;
    ensure(trace.family != FamilyId::Constant, "constant witness with a reduction")?;

    // step 2
    let (values, positions) = {
        let repeated = word.positions_by_letter().values().filter(|p| p.len() >= 2).count();
        ensure(repeated > pw.n6, "fewer than n^6+1 repeated values")?;
        select_values(word, pw.n6 + 1)
    };
    ensure(red.chosen_values == values, "chosen values are not the first n^6+1 repeated values")?;
    ensure(red.w_prime_positions.indices() == positions, "w' positions are not the first two occurrences")?;
    ensure(red.w_prime.len() == 2 * (pw.n6 + 1), "w' has the wrong length")?;
    ensure(
        word.subword(&red.w_prime_positions).ok().as_ref() == Some(&red.w_prime),
        "w' does not match its positions",
    )?;
    let w_prime = &red.w_prime;
    let pairs = occurrence_pairs(w_prime);

    // step 3
    ensure(red.a_occ.indices() == first_occurrences(w_prime), "a is not the first-occurrence subword")?;
    let a_set: BTreeSet<usize> = red.a_occ.iter().copied().collect();
    ensure(red.a_prime_occ.len() == pw.n3 + 1, "a' has the wrong length")?;
    ensure(red.a_prime_occ.fits(w_prime.len()), "a' positions out of range")?;
    ensure(red.a_prime_occ.iter().all(|i| a_set.contains(i)), "a' is not a subword of a")?;
    let a_prime_values: Vec<Letter> = red.a_prime_occ.iter().map(|&i| w_prime[i - 1]).collect();
    ensure(strictly(red.a_prime_direction, &a_prime_values), "a' is not strictly monotone")?;
    let entries: Vec<(usize, usize)> = a_prime_values.iter().map(|v| pairs[v]).collect();

    let map = |positions: &[usize]| -> Vec<usize> {
        positions.iter().map(|&i| red.w_prime_positions[i - 1]).collect()
    };

    match &red.branch {
        Branch::Claim {
            j,
            b_occ,
            b_prime_occ,
            a_dd_occ,
        } => {
            let j = *j;
            ensure(j % pw.n2 == 0 && j + pw.n2 <= pw.n3, "block start out of range")?;
            let block = &entries[j..=j + pw.n2];
            let pivot = block[pw.n2].0;
            ensure(block.iter().all(|&(_, second)| second > pivot), "block hypothesis does not hold")?;
            let mut seconds: Vec<usize> = block.iter().map(|&(_, second)| second).collect();
            seconds.sort_unstable();
            ensure(b_occ.indices() == seconds, "b is not the block's second occurrences")?;
            ensure(b_prime_occ.len() == n + 1, "b' has the wrong length")?;
            ensure(b_prime_occ.fits(w_prime.len()), "b' positions out of range")?;
            ensure(b_prime_occ.iter().all(|i| seconds.contains(i)), "b' is not a subword of b")?;
            let b_values: Vec<Letter> = b_prime_occ.iter().map(|&i| w_prime[i - 1]).collect();
            let b_dir = Direction::BOTH
                .into_iter()
                .find(|&d| strictly(d, &b_values))
                .ok_or("b' is not strictly monotone")?;
            let mut firsts: Vec<usize> = b_values.iter().map(|v| pairs[v].0).collect();
            firsts.sort_unstable();
            ensure(a_dd_occ.indices() == firsts, "a'' is not the first occurrences of b'")?;
            let a_dd_values: Vec<Letter> = a_dd_occ.iter().map(|&i| w_prime[i - 1]).collect();
            ensure(strictly(red.a_prime_direction, &a_dd_values), "a'' is not monotone like a'")?;
            ensure(
                trace.family == FamilyId::DoubleRun(red.a_prime_direction, b_dir),
                "family does not match the run directions",
            )?;
            let mut expected = a_dd_occ.to_vec();
            expected.extend(b_prime_occ.iter());
            ensure(trace.occurrence.indices() == map(&expected), "result is not a'' b' mapped back")
        }
        Branch::Blocks { i_t } => {
            ensure(i_t.len() == n, "need one index per block")?;
            // no block may satisfy the hypothesis
            for t in 1..=n {
                let j = (t - 1) * pw.n2;
                let pivot = entries[j + pw.n2].0;
                ensure(
                    !entries[j..=j + pw.n2].iter().all(|&(_, second)| second > pivot),
                    "a block satisfies the hypothesis, step 4 should have applied",
                )?;
            }
            let mut expected = Vec::with_capacity(2 * (n + 1));
            for (t, &i) in (1..=n).zip(i_t) {
                ensure((t - 1) * pw.n2 <= i && i < t * pw.n2, "i_t outside its block")?;
                ensure(entries[i].1 < entries[t * pw.n2].0, "a'_{i_t} is not closed before the pivot")?;
                expected.extend([entries[i].0, entries[i].1]);
            }
            expected.extend([entries[pw.n3].0, entries[pw.n3].1]);
            ensure(
                trace.family == FamilyId::DoubledMonotone(red.a_prime_direction),
                "family does not match the direction of a'",
            )?;
            ensure(trace.occurrence.indices() == map(&expected), "result is not the doubled entries mapped back")
        }
    }
}

fn ensure(condition: bool, message: &str) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message.to_string())
    }
}
