//! The unavoidable pattern families and fast containment checks for them.
//!
//! Three shapes appear:
//!
//! * constant patterns `0^m`,
//! * multiplied monotone patterns `(0^m 1^m ⋯ n^m)^e`,
//! * double runs `(01⋯n)^{e1} (01⋯n)^{e2}`.
//!
//! Each shape has a polynomial checker built on a longest-chain DP over
//! "items" (a choice of positions for one value). The general backtracking
//! [`contains`](crate::word::contains) is the reference these are tested
//! against.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::word::{Letter, Occurrence, Pattern, Word};

/// Orientation of a run: as written (`id`) or reversed (`rev`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Id,
    Rev,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Id, Direction::Rev];

    pub fn flip(self) -> Direction {
        match self {
            Direction::Id => Direction::Rev,
            Direction::Rev => Direction::Id,
        }
    }

    /// Whether a value change from `earlier` to `later` goes the right way
    /// for a run in this direction (strictly).
    fn ascends<T: Ord>(self, earlier: &T, later: &T) -> bool {
        match self {
            Direction::Id => earlier < later,
            Direction::Rev => earlier > later,
        }
    }

    fn orient(self, mut letters: Vec<Letter>) -> Vec<Letter> {
        if self == Direction::Rev {
            letters.reverse();
        }
        letters
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Id => "id",
            Direction::Rev => "rev",
        })
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" => Ok(Direction::Id),
            "rev" => Ok(Direction::Rev),
            other => Err(Error::InvalidParameter(format!("unknown direction {other:?}"))),
        }
    }
}

/// Which of the seven unavoidable shapes a pattern (or witness) is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FamilyId {
    Constant,
    DoubledMonotone(Direction),
    DoubleRun(Direction, Direction),
}

impl FamilyId {
    /// All seven shapes, in dispatch order.
    pub const ALL: [FamilyId; 7] = [
        FamilyId::Constant,
        FamilyId::DoubledMonotone(Direction::Id),
        FamilyId::DoubledMonotone(Direction::Rev),
        FamilyId::DoubleRun(Direction::Id, Direction::Id),
        FamilyId::DoubleRun(Direction::Id, Direction::Rev),
        FamilyId::DoubleRun(Direction::Rev, Direction::Id),
        FamilyId::DoubleRun(Direction::Rev, Direction::Rev),
    ];
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyId::Constant => f.write_str("Constant"),
            FamilyId::DoubledMonotone(e) => write!(f, "DoubledMonotone({e})"),
            FamilyId::DoubleRun(e1, e2) => write!(f, "DoubleRun({e1},{e2})"),
        }
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FamilyId::ALL
            .into_iter()
            .find(|id| id.to_string() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

impl Serialize for FamilyId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FamilyId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// One concrete pattern of a family together with the parameters that
/// select its checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub id: FamilyId,
    /// Largest letter of the runs.
    pub n: usize,
    /// Length of the constant pattern, or the group size of a multiplied
    /// monotone pattern. Unused for double runs.
    pub block: usize,
    pub pattern: Pattern,
}

impl FamilyMember {
    pub fn new(id: FamilyId, n: usize, block: usize) -> Self {
        let letters = match id {
            FamilyId::Constant => vec![0; block],
            FamilyId::DoubledMonotone(e) => e.orient(
                (0..=n as Letter)
                    .flat_map(|v| std::iter::repeat_n(v, block))
                    .collect(),
            ),
            FamilyId::DoubleRun(e1, e2) => {
                let run: Vec<Letter> = (0..=n as Letter).collect();
                let mut letters = e1.orient(run.clone());
                letters.extend(e2.orient(run));
                letters
            }
        };
        let pattern = Pattern::new(Word::new(letters)).expect("family shapes are standardised");
        FamilyMember {
            id,
            n,
            block,
            pattern,
        }
    }

    /// Specialised containment check for this member.
    pub fn find(&self, word: &Word) -> Option<Occurrence> {
        match self.id {
            FamilyId::Constant => contains_constant(word, self.block),
            FamilyId::DoubledMonotone(e) => contains_multiplied_monotone(word, self.n, self.block, e),
            FamilyId::DoubleRun(e1, e2) => contains_double_run(word, self.n, e1, e2),
        }
    }
}

fn dedup_by_pattern(members: Vec<FamilyMember>) -> Vec<FamilyMember> {
    let mut kept: Vec<FamilyMember> = Vec::with_capacity(members.len());
    for member in members {
        if !kept.iter().any(|m| m.pattern == member.pattern) {
            kept.push(member);
        }
    }
    kept
}

fn build_family(n: usize, constant: Option<usize>, mult: usize) -> Vec<FamilyMember> {
    let members = FamilyId::ALL
        .into_iter()
        .filter_map(|id| match id {
            FamilyId::Constant => constant.map(|len| FamilyMember::new(id, n, len)),
            FamilyId::DoubledMonotone(_) => Some(FamilyMember::new(id, n, mult)),
            FamilyId::DoubleRun(..) => Some(FamilyMember::new(id, n, 1)),
        })
        .collect();
    dedup_by_pattern(members)
}

/// The seven patterns any word with `k n^6 + 1` repeats must contain:
/// `0^{k+2}`, `(0011⋯nn)^e` and the four double runs. Patterns that
/// coincide (at `n = 0`) are listed once, under the first id.
pub fn family(n: usize, k: usize) -> Vec<FamilyMember> {
    build_family(n, Some(k + 2), 2)
}

/// The six patterns forced in words where every value occurs exactly `k + 1`
/// times: `(0^{k+1}1^{k+1}⋯n^{k+1})^e` and the four double runs.
pub fn family_mult(n: usize, k: usize) -> Vec<FamilyMember> {
    build_family(n, None, k + 1)
}

/// The seven patterns avoided by the construction for parameter `k`:
/// `0^{k+2}`, `(0^{k+1}⋯n^{k+1})^e` and the four double runs. Equal to
/// [`family`] when `k = 1`.
pub fn construction_family(n: usize, k: usize) -> Vec<FamilyMember> {
    build_family(n, Some(k + 2), k + 1)
}

/// First member (in list order) that occurs in `word`, with its occurrence.
pub fn contains_any(word: &Word, members: &[FamilyMember]) -> Option<(FamilyId, Occurrence)> {
    members
        .iter()
        .find_map(|member| member.find(word).map(|occ| (member.id, occ)))
}

pub fn contains_any_family(word: &Word, n: usize, k: usize) -> Option<(FamilyId, Occurrence)> {
    contains_any(word, &family(n, k))
}

/// `m` equal letters: the value whose first occurrence is earliest among
/// those occurring at least `m` times, at its first `m` positions.
pub fn contains_constant(word: &Word, m: usize) -> Option<Occurrence> {
    if m == 0 {
        return Some(Occurrence::default());
    }
    word.positions_by_letter()
        .into_values()
        .filter(|positions| positions.len() >= m)
        .min_by_key(|positions| positions[0])
        .map(|mut positions| {
            positions.truncate(m);
            Occurrence::from_sorted(positions)
        })
}

/// Longest chain among `items` (already in an order compatible with
/// `precedes`), stopping at the first chain of length `target`. Returns item
/// indices in chain order.
fn chain_of_length<I>(items: &[I], target: usize, precedes: impl Fn(&I, &I) -> bool) -> Option<Vec<usize>> {
    if target == 0 {
        return Some(Vec::new());
    }
    let mut length = vec![1usize; items.len()];
    let mut parent: Vec<Option<usize>> = vec![None; items.len()];
    for b in 0..items.len() {
        for a in 0..b {
            if length[a] + 1 > length[b] && precedes(&items[a], &items[b]) {
                length[b] = length[a] + 1;
                parent[b] = Some(a);
            }
        }
        if length[b] >= target {
            let mut chain = vec![b];
            while let Some(prev) = parent[*chain.last().unwrap()] {
                chain.push(prev);
            }
            chain.reverse();
            // a longer chain's suffix is still a valid chain
            return Some(chain.split_off(chain.len() - target));
        }
    }
    None
}

struct Group<'a> {
    value: Letter,
    positions: &'a [usize],
}

/// `n + 1` groups of `mult` equal letters, groups left to right, values
/// strictly increasing (`Id`) or decreasing (`Rev`) from group to group.
///
/// Every item takes `mult` consecutive occurrences of one value, which
/// minimises the group's span for a given start.
pub fn contains_multiplied_monotone(word: &Word, n: usize, mult: usize, e: Direction) -> Option<Occurrence> {
    if mult == 0 {
        return Some(Occurrence::default());
    }
    let by_letter = word.positions_by_letter();
    let mut items: Vec<Group> = by_letter
        .iter()
        .flat_map(|(&value, positions)| {
            positions
                .windows(mult)
                .map(move |window| Group { value, positions: window })
        })
        .collect();
    items.sort_by_key(|g| g.positions[0]);
    let chain = chain_of_length(&items, n + 1, |a, b| {
        a.positions[mult - 1] < b.positions[0] && e.ascends(&a.value, &b.value)
    })?;
    Some(Occurrence::from_sorted(
        chain
            .into_iter()
            .flat_map(|i| items[i].positions.iter().copied())
            .collect(),
    ))
}

#[derive(Clone, Copy)]
struct Pair {
    value: Letter,
    first: usize,
    second: usize,
}

/// Two runs over the same `n + 1` values: every position of the first run
/// precedes every position of the second, and the values along run `i` are
/// increasing (`Id`) or decreasing (`Rev`) according to `e_i`.
///
/// For each split point `c` (the last position of the first run) the items
/// are pairs of positions `(x ≤ c < y)` of one value, and the runs form a
/// chain in the order "value increases, `x` ordered by `e1`, `y` by `e2`".
pub fn contains_double_run(word: &Word, n: usize, e1: Direction, e2: Direction) -> Option<Occurrence> {
    let by_letter = word.positions_by_letter();
    for split in 1..word.len() {
        // the first run ends at `split`, so its letter must recur later
        let letter = word[split - 1];
        if by_letter[&letter].last() == Some(&split) {
            continue;
        }
        let mut items = Vec::new();
        for (&value, positions) in &by_letter {
            let cut = positions.partition_point(|&p| p <= split);
            for &first in &positions[..cut] {
                for &second in &positions[cut..] {
                    items.push(Pair { value, first, second });
                }
            }
        }
        // items are grouped by ascending value already
        let chain = chain_of_length(&items, n + 1, |a, b| {
            a.value < b.value && e1.ascends(&a.first, &b.first) && e2.ascends(&a.second, &b.second)
        });
        if let Some(chain) = chain {
            let mut firsts: Vec<usize> = chain.iter().map(|&i| items[i].first).collect();
            let mut seconds: Vec<usize> = chain.iter().map(|&i| items[i].second).collect();
            firsts.sort_unstable();
            seconds.sort_unstable();
            firsts.extend(seconds);
            return Some(Occurrence::from_sorted(firsts));
        }
    }
    None
}
