//! Concatenation, direct sum and skew sum of words with positive letters.
//!
//! The sums shift one operand by the maximum of the other, so operands must
//! be nonempty and free of the letter 0; otherwise the blocks would overlap.

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

fn positive_max(word: &Word) -> Result<Letter> {
    match word.max_value() {
        Some(max) if word.iter().all(|&letter| letter >= 1) => Ok(max),
        _ => Err(Error::NonPositiveOperand(word.to_string())),
    }
}

pub fn concat(pi: &Word, sigma: &Word) -> Word {
    pi.iter().chain(sigma.iter()).copied().collect()
}

/// `pi` followed by `sigma` shifted up by `max(pi)`.
pub fn direct_sum(pi: &Word, sigma: &Word) -> Result<Word> {
    let shift = positive_max(pi)?;
    positive_max(sigma)?;
    Ok(pi
        .iter()
        .copied()
        .chain(sigma.iter().map(|&letter| letter + shift))
        .collect())
}

/// `pi` shifted up by `max(sigma)`, followed by `sigma`.
pub fn skew_sum(pi: &Word, sigma: &Word) -> Result<Word> {
    positive_max(pi)?;
    let shift = positive_max(sigma)?;
    Ok(pi
        .iter()
        .map(|&letter| letter + shift)
        .chain(sigma.iter().copied())
        .collect())
}

fn power(pi: &Word, copies: usize, sum: fn(&Word, &Word) -> Result<Word>) -> Result<Word> {
    if copies == 0 {
        return Err(Error::ZeroPower);
    }
    positive_max(pi)?;
    (1..copies).try_fold(pi.clone(), |acc, _| sum(&acc, pi))
}

/// `pi ⊕ pi ⊕ ⋯ ⊕ pi` with `copies` operands, folded from the left.
pub fn direct_power(pi: &Word, copies: usize) -> Result<Word> {
    power(pi, copies, direct_sum)
}

/// `pi ⊖ pi ⊖ ⋯ ⊖ pi` with `copies` operands, folded from the left.
pub fn skew_power(pi: &Word, copies: usize) -> Result<Word> {
    power(pi, copies, skew_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&w("1"), &w("11")), w("111"));
        assert_eq!(concat(&Word::empty(), &w("2413")), w("2413"));
        assert_eq!(concat(&w("12"), &w("21")), w("1221"));
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(direct_sum(&w("31422"), &w("4132")).unwrap(), w("314228576"));
        assert_eq!(direct_sum(&w("1"), &w("1")).unwrap(), w("12"));
        assert_eq!(direct_sum(&w("21"), &w("21")).unwrap(), w("2143"));
    }

    #[test]
    fn skew_sum_examples() {
        assert_eq!(skew_sum(&w("2413"), &w("121")).unwrap(), w("4635121"));
        assert_eq!(skew_sum(&w("1"), &w("1")).unwrap(), w("21"));
        assert_eq!(skew_sum(&w("123"), &w("123")).unwrap(), w("456123"));
    }

    #[test]
    fn powers() {
        assert_eq!(direct_power(&w("21"), 3).unwrap(), w("214365"));
        assert_eq!(direct_power(&w("1"), 5).unwrap(), w("12345"));
        assert_eq!(direct_power(&w("2413"), 1).unwrap(), w("2413"));
        assert_eq!(skew_power(&w("12"), 3).unwrap(), w("563412"));
        assert_eq!(skew_power(&w("123"), 3).unwrap(), w("789456123"));
        assert_eq!(skew_power(&w("2413"), 1).unwrap(), w("2413"));
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(direct_sum(&w("01"), &w("1")), Err(Error::NonPositiveOperand(_))));
        assert!(matches!(skew_sum(&w("1"), &w("20")), Err(Error::NonPositiveOperand(_))));
        assert!(direct_sum(&Word::empty(), &w("1")).is_err());
        assert!(skew_sum(&w("1"), &Word::empty()).is_err());
        assert_eq!(direct_power(&w("1"), 0), Err(Error::ZeroPower));
        assert_eq!(skew_power(&w("1"), 0), Err(Error::ZeroPower));
        assert!(skew_power(&w("0"), 1).is_err());
    }

    #[test]
    fn multi_digit_letters() {
        assert_eq!(direct_sum(&w("9"), &w("3")).unwrap(), w("9 12"));
    }
}
