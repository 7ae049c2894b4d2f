//! Matroid oracles on small ground sets.
//!
//! [`NestedMatroid`] keeps only the prefix caps of its bounding path and
//! answers rank and independence queries for ground sets of any size.
//! [`ExplicitMatroid`] lists its bases. Everything that enumerates subsets
//! works on `u64` bitmasks (bit `e - 1` is element `e`) and is gated by
//! [`limits::BRUTE_FORCE_GROUND`].

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::StepSequence;
use crate::limits;

/// A subset of `[m]`, `m <= 64`, as a bitmask.
pub type Mask = u64;

pub fn mask_of(elements: &[usize], ground_size: usize) -> Result<Mask> {
    if ground_size > 64 {
        return Err(Error::GroundTooLarge {
            size: ground_size,
            limit: 64,
        });
    }
    let mut mask = 0;
    for &e in elements {
        if e == 0 || e > ground_size {
            return Err(Error::OutOfRange {
                element: e,
                ground_size,
            });
        }
        mask |= 1 << (e - 1);
    }
    Ok(mask)
}

/// Elements of `mask` in increasing order.
pub fn elements(mask: Mask) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize + 1);
        rest &= rest - 1;
    }
    out
}

pub(crate) fn full_mask(ground_size: usize) -> Mask {
    if ground_size == 64 {
        u64::MAX
    } else {
        (1u64 << ground_size) - 1
    }
}

/// Canonical order on subsets: by size, then lexicographically on the
/// sorted element lists.
pub fn canonical_sort(family: &mut [Mask]) {
    family.sort_by_cached_key(|&m| (m.count_ones(), elements(m)));
}

/// All `size`-subsets of `[ground_size]`, in increasing mask order.
pub(crate) fn subsets_of_size(ground_size: usize, size: usize) -> impl Iterator<Item = Mask> {
    let limit = full_mask(ground_size);
    let first: Mask = if size == 0 { 0 } else { full_mask(size) };
    let mut next = if size > ground_size {
        None
    } else {
        Some(first)
    };
    std::iter::from_fn(move || {
        let current = next?;
        next = if current == 0 {
            None
        } else {
            // Gosper's hack
            let c = current & current.wrapping_neg();
            let r = current.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let n = (((r ^ current) >> 2) / c) | r;
                (n & !limit == 0).then_some(n)
            }
        };
        Some(current)
    })
}

/// Common oracle interface for the brute-force routines.
pub trait Matroid {
    fn ground_size(&self) -> usize;

    /// Rank of the whole ground set.
    fn full_rank(&self) -> usize;

    fn rank_mask(&self, set: Mask) -> usize;

    fn is_independent_mask(&self, set: Mask) -> bool {
        self.rank_mask(set) == set.count_ones() as usize
    }

    /// Ranks of all `2^m` subsets, indexed by mask.
    fn dense_ranks(&self) -> Vec<u8> {
        (0..1u64 << self.ground_size())
            .map(|set| self.rank_mask(set) as u8)
            .collect()
    }

    /// Rank of a set of 1-based elements.
    fn rank(&self, set: &[usize]) -> Result<usize> {
        Ok(self.rank_mask(mask_of(set, self.ground_size())?))
    }

    fn is_independent(&self, set: &[usize]) -> Result<bool> {
        Ok(self.is_independent_mask(mask_of(set, self.ground_size())?))
    }
}

/// The matroid `M[P]` of a bounding path `P` with steps `N` and `E`.
///
/// `caps[t]` counts the `N` steps among the first `t` steps of `P`, with
/// `caps[0] = 0`. A set `A` is independent iff `|A ∩ [t]| <= caps[t]` for
/// every `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "NestedRepr", into = "NestedRepr")]
pub struct NestedMatroid {
    caps: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct NestedRepr {
    ground_size: usize,
    caps: Vec<usize>,
}

impl TryFrom<NestedRepr> for NestedMatroid {
    type Error = Error;

    fn try_from(repr: NestedRepr) -> Result<Self> {
        if repr.caps.len() != repr.ground_size {
            return Err(Error::Parse(format!(
                "{} caps for ground set of size {}",
                repr.caps.len(),
                repr.ground_size
            )));
        }
        NestedMatroid::from_caps(repr.caps)
    }
}

impl From<NestedMatroid> for NestedRepr {
    fn from(m: NestedMatroid) -> Self {
        NestedRepr {
            ground_size: m.ground_size(),
            caps: m.caps[1..].to_vec(),
        }
    }
}

impl NestedMatroid {
    /// `caps[t - 1]` is the number of `N` steps among the first `t` steps.
    pub fn from_caps(caps: Vec<usize>) -> Result<Self> {
        let mut full = Vec::with_capacity(caps.len() + 1);
        full.push(0);
        for (t, &c) in caps.iter().enumerate() {
            let prev = full[t];
            if c != prev && c != prev + 1 {
                return Err(Error::Parse(format!(
                    "caps must grow by 0 or 1 per step (position {})",
                    t + 1
                )));
            }
            full.push(c);
        }
        Ok(NestedMatroid { caps: full })
    }

    /// `M[P]` for a two-dimensional bounding path.
    pub fn from_path(path: &StepSequence) -> Result<Self> {
        if path.k() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: path.k(),
            });
        }
        let mut caps = Vec::with_capacity(path.len());
        let mut count = 0;
        for &s in path.steps() {
            if s == 1 {
                count += 1;
            }
            caps.push(count);
        }
        NestedMatroid::from_caps(caps)
    }

    /// Prefix caps, `caps()[t - 1]` for `t = 1..=ground_size`.
    pub fn caps(&self) -> &[usize] {
        &self.caps[1..]
    }

    pub fn bounding_path(&self) -> StepSequence {
        let steps = self
            .caps
            .windows(2)
            .map(|w| if w[1] > w[0] { 1 } else { 2 })
            .collect();
        StepSequence::new(2, steps).expect("N/E word")
    }

    /// `min_t (caps[t] + |A \ [t]|)`, taking `positions` sorted ascending.
    fn rank_sorted(&self, positions: &[usize]) -> usize {
        let mut best = positions.len();
        let mut inside = 0;
        let mut iter = positions.iter().peekable();
        for t in 1..self.caps.len() {
            while iter.next_if(|&&e| e <= t).is_some() {
                inside += 1;
            }
            best = best.min(self.caps[t] + positions.len() - inside);
        }
        best
    }

    /// Rank of an arbitrary set of 1-based elements; no size ceiling.
    pub fn rank_of(&self, set: &[usize]) -> Result<usize> {
        let mut sorted = self.checked(set)?;
        sorted.dedup();
        Ok(self.rank_sorted(&sorted))
    }

    pub fn is_independent_set(&self, set: &[usize]) -> Result<bool> {
        let mut sorted = self.checked(set)?;
        let len = sorted.len();
        sorted.dedup();
        if sorted.len() != len {
            return Ok(false);
        }
        Ok(self
            .caps
            .iter()
            .enumerate()
            .all(|(t, &cap)| sorted.partition_point(|&e| e <= t) <= cap))
    }

    pub fn is_basis_set(&self, set: &[usize]) -> Result<bool> {
        Ok(set.len() == self.full_rank() && self.is_independent_set(set)?)
    }

    fn checked(&self, set: &[usize]) -> Result<Vec<usize>> {
        let ground_size = self.ground_size();
        if let Some(&e) = set.iter().find(|&&e| e == 0 || e > ground_size) {
            return Err(Error::OutOfRange {
                element: e,
                ground_size,
            });
        }
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        Ok(sorted)
    }

    /// Number of bases, i.e. lattice paths not above the bounding path.
    pub fn basis_count(&self) -> BigUint {
        let r = self.full_rank();
        let mut ways = vec![BigUint::zero(); r + 1];
        ways[0] = BigUint::one();
        for t in 1..self.caps.len() {
            for j in (1..=self.caps[t].min(r)).rev() {
                let below = ways[j - 1].clone();
                ways[j] += below;
            }
        }
        ways.swap_remove(r)
    }

    /// All bases as bitmasks, in increasing mask order.
    pub fn bases(&self) -> Result<Vec<Mask>> {
        let m = self.ground_size();
        if m > 64 {
            return Err(Error::GroundTooLarge { size: m, limit: 64 });
        }
        let r = self.full_rank();
        let mut out = Vec::new();
        let mut stack = vec![(0usize, 0usize, 0 as Mask)];
        while let Some((t, count, mask)) = stack.pop() {
            if t == m {
                out.push(mask);
                continue;
            }
            let next = t + 1;
            // E at step `next`, if N steps can still be fitted afterwards
            if r - count < m - t {
                stack.push((next, count, mask));
            }
            if count < r && count < self.caps[next] {
                stack.push((next, count + 1, mask | (1 << t)));
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// Brute-force view with the same bases.
    pub fn to_explicit(&self) -> Result<ExplicitMatroid> {
        Ok(ExplicitMatroid {
            ground_size: self.ground_size(),
            bases: self.bases()?,
        })
    }

    /// Faster quotient test for two nested matroids on the same ground set.
    ///
    /// `self` is a quotient of `other` iff `r_other - r_self` never drops
    /// when an element is added. With `r(X) = |X| + min_t (caps[t] - |X ∩ [t]|)`
    /// a drop at `X + e` means every minimizer for `self` lies before `e`
    /// while some minimizer for `other` lies at or after `e`. The search runs
    /// over prefix and suffix Pareto fronts of the two running minima.
    pub fn is_quotient_of(&self, other: &NestedMatroid) -> Result<bool> {
        let m = self.ground_size();
        if other.ground_size() != m {
            return Err(Error::GroundMismatch {
                left: m,
                right: other.ground_size(),
            });
        }
        let u = |t: usize, p: usize| self.caps[t] as i64 - p as i64;
        let v = |t: usize, p: usize| other.caps[t] as i64 - p as i64;

        // forward[t][p]: fronts of (min u, min v) over s <= t, keeping small
        // u-minimum and large v-minimum
        let mut forward: Vec<Vec<Vec<(i64, i64)>>> = Vec::with_capacity(m + 1);
        forward.push(vec![vec![(0, 0)]]);
        for t in 1..=m {
            let mut layer = vec![Vec::new(); t + 1];
            for (p, front) in forward[t - 1].iter().enumerate() {
                for &(a, b) in front {
                    for q in [p, p + 1] {
                        layer[q].push((a.min(u(t, q)), b.min(v(t, q))));
                    }
                }
            }
            for front in &mut layer {
                prune(front, |x, y| x.0 <= y.0 && x.1 >= y.1);
            }
            forward.push(layer);
        }

        // backward[t][p]: fronts of (min u, min v) over s >= t given
        // |X ∩ [t]| = p, keeping large u-minimum and small v-minimum
        let mut backward: Vec<Vec<Vec<(i64, i64)>>> = vec![Vec::new(); m + 1];
        backward[m] = (0..=m).map(|p| vec![(u(m, p), v(m, p))]).collect();
        for t in (0..m).rev() {
            let mut layer = vec![Vec::new(); t + 1];
            for (p, front) in layer.iter_mut().enumerate() {
                for q in [p, p + 1] {
                    for &(c, d) in &backward[t + 1][q] {
                        front.push((c.min(u(t, p)), d.min(v(t, p))));
                    }
                }
                prune(front, |x, y| x.0 >= y.0 && x.1 <= y.1);
            }
            backward[t] = layer;
        }

        for e in 1..=m {
            for p in 0..e {
                let before = &forward[e - 1][p];
                let after = &backward[e][p];
                let violated = before
                    .iter()
                    .any(|&(a, b)| after.iter().any(|&(c, d)| a < c && d <= b));
                if violated {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Keeps the points of `front` that no other point dominates.
fn prune(front: &mut Vec<(i64, i64)>, dominates: impl Fn(&(i64, i64), &(i64, i64)) -> bool) {
    front.sort_unstable();
    front.dedup();
    let snapshot = front.clone();
    front.retain(|x| !snapshot.iter().any(|y| y != x && dominates(y, x)));
}

impl Matroid for NestedMatroid {
    fn ground_size(&self) -> usize {
        self.caps.len() - 1
    }

    fn full_rank(&self) -> usize {
        *self.caps.last().unwrap()
    }

    fn rank_mask(&self, set: Mask) -> usize {
        self.rank_sorted(&elements(set))
    }

    fn is_independent_mask(&self, set: Mask) -> bool {
        let mut inside = 0;
        (1..self.caps.len()).all(|t| {
            if set >> (t - 1) & 1 == 1 {
                inside += 1;
            }
            inside <= self.caps[t]
        })
    }

    fn rank(&self, set: &[usize]) -> Result<usize> {
        self.rank_of(set)
    }

    fn is_independent(&self, set: &[usize]) -> Result<bool> {
        self.is_independent_set(set)
    }
}

/// `M[(N^a E^b)^n]`.
pub fn tbp_matroid(a: usize, b: usize, n: usize) -> Result<NestedMatroid> {
    if a + b == 0 || n == 0 {
        return Err(Error::EmptyPath);
    }
    let block = std::iter::repeat_n(1u8, a).chain(std::iter::repeat_n(2u8, b));
    let steps: Vec<u8> = block.cycle().take((a + b) * n).collect();
    NestedMatroid::from_path(&StepSequence::new(2, steps)?)
}

/// The proper non-trivial cyclic flats of `M[P]`: the segments `[t]` where
/// step `t` of `P` is `E` and step `t + 1` is `N`. They form a chain.
pub fn cyclic_flats(m: &NestedMatroid) -> Vec<Vec<usize>> {
    let steps = m.bounding_path();
    steps
        .steps()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] == 2 && w[1] == 1)
        .map(|(i, _)| (1..=i + 1).collect())
        .collect()
}

/// A matroid given by its list of bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitMatroid {
    ground_size: usize,
    bases: Vec<Mask>,
}

impl ExplicitMatroid {
    /// Validates equicardinality and basis exchange.
    pub fn new(ground_size: usize, bases: Vec<Mask>) -> Result<Self> {
        match verify_matroid_axioms(ground_size, &bases)? {
            ExchangeVerdict::Ok => Ok(Self::from_verified(ground_size, bases)),
            violation => Err(Error::NotAMatroid(violation.to_string())),
        }
    }

    pub fn from_basis_lists(ground_size: usize, bases: &[Vec<usize>]) -> Result<Self> {
        let masks = bases
            .iter()
            .map(|b| mask_of(b, ground_size))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground_size, masks)
    }

    pub(crate) fn from_verified(ground_size: usize, mut bases: Vec<Mask>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        ExplicitMatroid { ground_size, bases }
    }

    pub fn free(ground_size: usize) -> Self {
        ExplicitMatroid {
            ground_size,
            bases: vec![full_mask(ground_size)],
        }
    }

    /// Bases as bitmasks in increasing mask order.
    pub fn bases(&self) -> &[Mask] {
        &self.bases
    }

    pub fn basis_lists(&self) -> Vec<Vec<usize>> {
        let mut sorted = self.bases.clone();
        canonical_sort(&mut sorted);
        sorted.into_iter().map(elements).collect()
    }

    pub fn is_basis_mask(&self, set: Mask) -> bool {
        self.bases.binary_search(&set).is_ok()
    }
}

impl Matroid for ExplicitMatroid {
    fn ground_size(&self) -> usize {
        self.ground_size
    }

    fn full_rank(&self) -> usize {
        self.bases.first().map_or(0, |b| b.count_ones() as usize)
    }

    fn rank_mask(&self, set: Mask) -> usize {
        self.bases
            .iter()
            .map(|b| (b & set).count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Independence by down-closure of the bases, then rank by recursion on
    /// dependent sets.
    fn dense_ranks(&self) -> Vec<u8> {
        let size = 1usize << self.ground_size;
        let mut independent = vec![false; size];
        for &b in &self.bases {
            independent[b as usize] = true;
        }
        // largest sets first
        for set in (0..size).rev() {
            if independent[set] {
                continue;
            }
            let mut outside = !set & (size - 1);
            while outside != 0 {
                let bit = outside & outside.wrapping_neg();
                if independent[set | bit] {
                    independent[set] = true;
                    break;
                }
                outside &= outside - 1;
            }
        }
        let mut ranks = vec![0u8; size];
        for set in 1..size {
            ranks[set] = if independent[set] {
                set.count_ones() as u8
            } else {
                let mut best = 0;
                let mut rest = set;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    best = best.max(ranks[set ^ bit]);
                    rest &= rest - 1;
                }
                best
            };
        }
        ranks
    }
}

/// Ranks of all `2^m` subsets, indexed by mask.
#[derive(Debug, Clone)]
pub struct RankTable {
    ground_size: usize,
    ranks: Vec<u8>,
}

impl RankTable {
    pub fn rank(&self, set: Mask) -> usize {
        self.ranks[set as usize] as usize
    }

    pub fn is_flat(&self, set: Mask) -> bool {
        let r = self.rank(set);
        let mut outside = !set & full_mask(self.ground_size);
        while outside != 0 {
            let bit = outside & outside.wrapping_neg();
            if self.rank(set | bit) == r {
                return false;
            }
            outside &= outside - 1;
        }
        true
    }

    /// A flat is cyclic iff removing any of its elements keeps the rank.
    pub fn is_cyclic(&self, set: Mask) -> bool {
        let r = self.rank(set);
        elements(set)
            .into_iter()
            .all(|e| self.rank(set & !(1 << (e - 1))) == r)
    }

    /// All flats in canonical order.
    pub fn flats(&self) -> Vec<Mask> {
        let mut out: Vec<Mask> = (0..1u64 << self.ground_size)
            .filter(|&set| self.is_flat(set))
            .collect();
        canonical_sort(&mut out);
        out
    }

    /// All cyclic flats, including the empty set and the ground set when
    /// they qualify.
    pub fn cyclic_flats(&self) -> Vec<Mask> {
        self.flats()
            .into_iter()
            .filter(|&f| self.is_cyclic(f))
            .collect()
    }
}

/// Every flat of `m` in canonical order; `m` must be within the brute-force limit.
pub fn flats<M: Matroid + ?Sized>(m: &M) -> Result<Vec<Mask>> {
    flats_with_limit(m, limits::BRUTE_FORCE_GROUND)
}

pub fn flats_with_limit<M: Matroid + ?Sized>(m: &M, limit: usize) -> Result<Vec<Mask>> {
    Ok(rank_table(m, limit)?.flats())
}

/// Dense rank table of `m`, refusing ground sets above `limit`.
pub fn rank_table<M: Matroid + ?Sized>(m: &M, limit: usize) -> Result<RankTable> {
    limits::check(m.ground_size(), limit.min(MAX_TABLE_BITS))?;
    Ok(RankTable {
        ground_size: m.ground_size(),
        ranks: m.dense_ranks(),
    })
}

// 2^28 bytes; beyond this a dense table is not a desk-scale object
const MAX_TABLE_BITS: usize = 28;

/// Brute-force quotient test: every flat of `m` is a flat of `n`.
pub fn is_quotient<M: Matroid + ?Sized, N: Matroid + ?Sized>(m: &M, n: &N) -> Result<bool> {
    if m.ground_size() != n.ground_size() {
        return Err(Error::GroundMismatch {
            left: m.ground_size(),
            right: n.ground_size(),
        });
    }
    let mt = rank_table(m, limits::BRUTE_FORCE_GROUND)?;
    let nt = rank_table(n, limits::BRUTE_FORCE_GROUND)?;
    Ok(first_non_flat(&mt, &nt).is_none())
}

/// First flat of `m` (canonical order) that is not a flat of `n`.
pub(crate) fn first_non_flat(m: &RankTable, n: &RankTable) -> Option<Mask> {
    m.flats().into_iter().find(|&f| !n.is_flat(f))
}

/// All independent sets of `m` of size `r`.
pub fn truncate<M: Matroid + ?Sized>(m: &M, r: usize) -> Result<ExplicitMatroid> {
    let max = m.full_rank();
    if r == 0 || r > max {
        return Err(Error::BadRank { rank: r, max });
    }
    if m.ground_size() > 64 {
        return Err(Error::GroundTooLarge {
            size: m.ground_size(),
            limit: 64,
        });
    }
    let bases: Vec<Mask> = subsets_of_size(m.ground_size(), r)
        .filter(|&set| m.is_independent_mask(set))
        .collect();
    Ok(ExplicitMatroid::from_verified(m.ground_size(), bases))
}

/// Outcome of the basis-exchange check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExchangeVerdict {
    Ok,
    /// Two members of different sizes.
    Unequal {
        first: Vec<usize>,
        second: Vec<usize>,
    },
    /// `first - {x} + {y}` is missing for every `y` in `second - first`.
    NoExchange {
        first: Vec<usize>,
        second: Vec<usize>,
        x: usize,
    },
}

impl ExchangeVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, ExchangeVerdict::Ok)
    }
}

impl std::fmt::Display for ExchangeVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExchangeVerdict::Ok => write!(f, "ok"),
            ExchangeVerdict::Unequal { first, second } => {
                write!(f, "bases {first:?} and {second:?} differ in size")
            }
            ExchangeVerdict::NoExchange { first, second, x } => write!(
                f,
                "no y in {second:?} \\ {first:?} replaces {x} in {first:?}"
            ),
        }
    }
}

/// Checks the basis axioms on `family`. The witness returned is the first
/// violation in canonical order of `(first, second, x)`.
pub fn verify_matroid_axioms(ground_size: usize, family: &[Mask]) -> Result<ExchangeVerdict> {
    verify_matroid_axioms_with_limit(ground_size, family, limits::BRUTE_FORCE_GROUND)
}

pub fn verify_matroid_axioms_with_limit(
    ground_size: usize,
    family: &[Mask],
    limit: usize,
) -> Result<ExchangeVerdict> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    limits::check(ground_size, limit)?;
    let outside = !full_mask(ground_size);
    if let Some(&bad) = family.iter().find(|&&b| b & outside != 0) {
        return Err(Error::OutOfRange {
            element: (64 - (bad & outside).leading_zeros()) as usize,
            ground_size,
        });
    }
    let mut sorted = family.to_vec();
    canonical_sort(&mut sorted);
    sorted.dedup();
    let size = sorted[0].count_ones();
    if let Some(&other) = sorted.iter().find(|b| b.count_ones() != size) {
        return Ok(ExchangeVerdict::Unequal {
            first: elements(sorted[0]),
            second: elements(other),
        });
    }
    let members: HashSet<Mask> = sorted.iter().copied().collect();
    for &first in &sorted {
        for &second in &sorted {
            let candidates = second & !first;
            for x in elements(first & !second) {
                let without = first & !(1 << (x - 1));
                let exchanged = elements(candidates)
                    .into_iter()
                    .any(|y| members.contains(&(without | 1 << (y - 1))));
                if !exchanged {
                    return Ok(ExchangeVerdict::NoExchange {
                        first: elements(first),
                        second: elements(second),
                        x,
                    });
                }
            }
        }
    }
    Ok(ExchangeVerdict::Ok)
}
