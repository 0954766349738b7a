//! Pattern containment for words with repeated letters.
//!
//! A word is a finite sequence of non-negative integers; a pattern is a
//! standardised word (a Cayley permutation). The crate provides
//!
//! * word basics and general containment ([`word`], [`render`]),
//! * direct and skew sums ([`algebra`]),
//! * longest monotone subwords and the Erdős–Szekeres guarantee ([`monotone`]),
//! * the seven unavoidable patterns and fast checks for them ([`patterns`]),
//! * the extremal construction with `n^6` repeats ([`construction`]),
//! * constructive witness extraction for words with `k n^6 + 1` repeats
//!   ([`witness`]),
//! * brute-force oracles for tiny instances ([`oracle`]).

pub mod algebra;
pub mod construction;
pub mod error;
pub mod monotone;
pub mod oracle;
pub mod patterns;
pub mod render;
pub mod witness;
pub mod word;

pub use error::{Error, Result};
pub use patterns::{Direction, FamilyId, FamilyMember};
pub use word::{contains, Letter, Occurrence, Pattern, Word};
