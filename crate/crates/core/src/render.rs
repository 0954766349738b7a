//! Monospace grid pictures of words: a point at `(i, w_i)` for each position.

use std::fmt::Write;

use crate::word::Word;

pub const POINT: char = '*';
pub const EMPTY: char = '.';
/// Marks the staircase `value = position` bounding an inversion sequence.
pub const STAIR: char = '-';

/// Draws `word` with one row per value from `max_value` down to 0 and one
/// column per position, followed by a row of position labels.
///
/// Inversion sequences get a staircase overlay: cells on the line
/// `value = position` are drawn with [`STAIR`] and cells above it are left
/// blank, so every point sits strictly under the stairs.
pub fn render_grid(word: &Word) -> String {
    let Some(max) = word.max_value() else {
        return String::new();
    };
    let staircase = word.is_inversion_sequence();
    let label_width = max.to_string().len();
    let cell_width = word.len().to_string().len();
    let mut out = String::new();
    for value in (0..=max).rev() {
        let _ = write!(out, "{value:>label_width$} |");
        for (i, &letter) in word.iter().enumerate() {
            let position = i as u64 + 1;
            let cell = if letter == value {
                POINT
            } else if staircase && value == position {
                STAIR
            } else if staircase && value > position {
                ' '
            } else {
                EMPTY
            };
            let _ = write!(out, " {cell:>cell_width$}");
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>label_width$}  ", "");
    for position in 1..=word.len() {
        let _ = write!(out, " {position:>cell_width$}");
    }
    out.push('\n');
    out
}
