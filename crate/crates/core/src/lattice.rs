//! Lattice paths in `k` dimensions and the prefix-count characterization of
//! configuration paths.
//!
//! Positions and axes are 1-indexed throughout: step `i` of a path is the
//! step taken by ball `i`, and axis `j` is bin `j`. For `k = 2` the text form
//! uses `N` for axis 1 and `E` for axis 2.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::flag::OrderedPartition;

/// A word over the axis alphabet `{1, .., k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StepSequence {
    k: usize,
    steps: Vec<u8>,
}

impl StepSequence {
    pub fn new(k: usize, steps: Vec<u8>) -> Result<Self> {
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::InvalidSpec(format!("dimension {k} out of range")));
        }
        if let Some(&bad) = steps.iter().find(|&&s| s == 0 || s as usize > k) {
            return Err(Error::Parse(format!("axis {bad} outside 1..={k}")));
        }
        Ok(StepSequence { k, steps })
    }

    pub fn empty(k: usize) -> Result<Self> {
        Self::new(k, Vec::new())
    }

    /// Parses the text form. `N`/`E` words are always two-dimensional; digit
    /// words take `k` from the argument, or from the largest digit present.
    pub fn parse(text: &str, k: Option<usize>) -> Result<Self> {
        let text = text.trim();
        if text.chars().any(|c| matches!(c, 'N' | 'E' | 'n' | 'e')) {
            if let Some(k) = k {
                if k != 2 {
                    return Err(Error::DimensionMismatch {
                        expected: k,
                        found: 2,
                    });
                }
            }
            let steps = text
                .chars()
                .map(|c| match c {
                    'N' | 'n' => Ok(1),
                    'E' | 'e' => Ok(2),
                    other => Err(Error::Parse(format!("unexpected character {other:?}"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            return StepSequence::new(2, steps);
        }
        let steps = text
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("unexpected character {c:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        let k = match k {
            Some(k) => k,
            None => steps.iter().copied().max().unwrap_or(1) as usize,
        };
        StepSequence::new(k, steps)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Axis indices, 1-based.
    pub fn steps(&self) -> &[u8] {
        &self.steps
    }

    /// Axis of step `position` (1-based).
    pub fn axis(&self, position: usize) -> Option<usize> {
        position
            .checked_sub(1)
            .and_then(|p| self.steps.get(p))
            .map(|&a| a as usize)
    }

    /// Number of steps along each axis.
    pub fn totals(&self) -> Vec<usize> {
        let mut totals = vec![0; self.k];
        for &s in &self.steps {
            totals[s as usize - 1] += 1;
        }
        totals
    }

    pub fn prefix_counts(&self) -> PrefixCounts {
        let mut counts = Vec::with_capacity(self.steps.len() + 1);
        let mut row = vec![0; self.k];
        counts.push(row.clone());
        for &s in &self.steps {
            row[s as usize - 1] += 1;
            counts.push(row.clone());
        }
        PrefixCounts { counts }
    }

    /// Set of positions whose step lies on `axis`.
    pub fn positions_of(&self, axis: usize) -> Vec<usize> {
        self.steps
            .iter()
            .enumerate()
            .filter(|(_, &s)| s as usize == axis)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Lattice points visited, starting at the origin.
    pub fn points(&self) -> Vec<Vec<usize>> {
        self.prefix_counts().counts
    }

    fn concat(&self, tail: impl IntoIterator<Item = u8>) -> StepSequence {
        let mut steps = self.steps.clone();
        steps.extend(tail);
        StepSequence { k: self.k, steps }
    }
}

impl fmt::Display for StepSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.steps {
            let c = match (self.k, s) {
                (2, 1) => 'N',
                (2, 2) => 'E',
                (_, s) if s <= 9 => char::from(b'0' + s),
                // multi-digit axes only arise for k > 9
                (_, s) => return write!(f, "[{s}]"),
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for StepSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        StepSequence::parse(s, None)
    }
}

/// Bin sizes `(l_1, .., l_k)` and number of turns `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinSpec {
    l: Vec<usize>,
    n: usize,
}

impl BinSpec {
    pub fn new(l: Vec<usize>, n: usize) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::InvalidSpec("no bins".into()));
        }
        if l.contains(&0) {
            return Err(Error::InvalidSpec(format!(
                "bin sizes must be positive: {l:?}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidSpec(
                "number of turns must be positive".into(),
            ));
        }
        Ok(BinSpec { l, n })
    }

    pub fn l(&self) -> &[usize] {
        &self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.l.len()
    }

    /// `L = l_1 + .. + l_k`, the number of balls added per turn.
    pub fn per_turn(&self) -> usize {
        self.l.iter().sum()
    }

    /// `nL`, the number of balls after the last turn.
    pub fn balls(&self) -> usize {
        self.n * self.per_turn()
    }

    /// `(n l_1, .., n l_k)`.
    pub fn totals(&self) -> Vec<usize> {
        self.l.iter().map(|&x| x * self.n).collect()
    }

    /// `l_1 + .. + l_i` for `i = 0..=k`.
    pub fn cumulative(&self) -> Vec<usize> {
        let mut acc = Vec::with_capacity(self.l.len() + 1);
        acc.push(0);
        for &x in &self.l {
            acc.push(acc.last().unwrap() + x);
        }
        acc
    }

    pub fn with_turns(&self, n: usize) -> Result<BinSpec> {
        BinSpec::new(self.l.clone(), n)
    }
}

impl fmt::Display for BinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l: Vec<String> = self.l.iter().map(|x| x.to_string()).collect();
        write!(f, "({}) n={}", l.join(","), self.n)
    }
}

/// Per-prefix step tallies; row `t` holds the axis counts among the first `t` steps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixCounts {
    pub counts: Vec<Vec<usize>>,
}

impl PrefixCounts {
    pub fn row(&self, t: usize) -> &[usize] {
        &self.counts[t]
    }

    /// Steps among the first `t` whose axis is at most `i`.
    pub fn lower(&self, t: usize, i: usize) -> usize {
        self.counts[t][..i].iter().sum()
    }
}

/// The block-boundary inequalities: for every full turn `t` covered by
/// `tallies`, at most `t (l_1 + .. + l_i)` steps of type `<= i`.
fn boundary_ok(cumulative: &[usize], counts: &PrefixCounts, per_turn: usize) -> bool {
    let k = cumulative.len() - 1;
    let len = counts.counts.len() - 1;
    (1..=len / per_turn).all(|t| {
        let row = counts.row(t * per_turn);
        let mut lower = 0;
        (1..k).all(|i| {
            lower += row[i - 1];
            lower <= t * cumulative[i]
        })
    })
}

/// Whether `path` encodes an `n`-configuration of the `spec` ball process.
///
/// Only the prefixes of length `tL` are inspected. A path with the wrong
/// step multiset is an error, so `Ok(false)` always means a valid multiset
/// that the process cannot produce.
pub fn is_configuration_path(path: &StepSequence, spec: &BinSpec) -> Result<bool> {
    if path.k() != spec.k() {
        return Err(Error::DimensionMismatch {
            expected: spec.k(),
            found: path.k(),
        });
    }
    let found = path.totals();
    let expected = spec.totals();
    if found != expected {
        return Err(Error::WrongStepMultiset { expected, found });
    }
    Ok(boundary_ok(
        &spec.cumulative(),
        &path.prefix_counts(),
        spec.per_turn(),
    ))
}

/// Exchanges steps `i < j` (1-based). Requires `axis(i) <= axis(j)`, which
/// keeps configuration paths configuration paths.
pub fn switch_steps(path: &StepSequence, i: usize, j: usize) -> Result<StepSequence> {
    let illegal = Error::IllegalSwitch { i, j };
    if i == 0 || i >= j || j > path.len() {
        return Err(illegal);
    }
    if path.steps[i - 1] > path.steps[j - 1] {
        return Err(illegal);
    }
    let mut steps = path.steps.clone();
    steps.swap(i - 1, j - 1);
    Ok(StepSequence { k: path.k, steps })
}

/// Completes `prefix` to a configuration path with `n' + n_extra` turns,
/// where `n'` is the fewest turns that can hold the prefix tallies. The
/// missing steps are appended from the highest axis down to axis 1.
pub fn complete_to_configuration(
    prefix: &StepSequence,
    l: &[usize],
    n_extra: usize,
) -> Result<StepSequence> {
    if prefix.k() != l.len() {
        return Err(Error::DimensionMismatch {
            expected: l.len(),
            found: prefix.k(),
        });
    }
    // validates l
    let unit = BinSpec::new(l.to_vec(), 1)?;
    let counts = prefix.prefix_counts();
    if !boundary_ok(&unit.cumulative(), &counts, unit.per_turn()) {
        return Err(Error::InfeasiblePrefix);
    }
    let tallies = prefix.totals();
    let min_turns = tallies
        .iter()
        .zip(l)
        .map(|(&t, &lj)| t.div_ceil(lj))
        .max()
        .unwrap_or(0);
    let turns = min_turns + n_extra;
    if turns == 0 {
        return Ok(prefix.clone());
    }
    let tail = (1..=l.len()).rev().flat_map(|axis| {
        let missing = turns * l[axis - 1] - tallies[axis - 1];
        std::iter::repeat_n(axis as u8, missing)
    });
    let completed = prefix.concat(tail);
    if !is_configuration_path(&completed, &unit.with_turns(turns)?)? {
        return Err(Error::InfeasiblePrefix);
    }
    Ok(completed)
}

/// Step `i` has axis `j` iff ball `i` lies in block `j`.
pub fn path_from_partition(partition: &OrderedPartition, spec: &BinSpec) -> Result<StepSequence> {
    if partition.k() != spec.k() {
        return Err(Error::DimensionMismatch {
            expected: spec.k(),
            found: partition.k(),
        });
    }
    if partition.ground_size() != spec.balls() {
        return Err(Error::NotAPartition(format!(
            "covers [{}], expected [{}]",
            partition.ground_size(),
            spec.balls()
        )));
    }
    StepSequence::new(spec.k(), partition.labels().to_vec())
}

/// Inverse of [`path_from_partition`]. Fails if some axis is never used,
/// since ordered partitions have non-empty blocks.
pub fn partition_from_path(path: &StepSequence) -> Result<OrderedPartition> {
    OrderedPartition::from_labels(path.k(), path.steps().to_vec())
}
