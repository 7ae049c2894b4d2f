//! Ordered partitions, flag matroids, and the k-bin ball process.
//!
//! Balls are labelled `1..=nL`. In turn `t` balls `(t-1)L+1..=tL` enter bin
//! 1; then, for each boundary `i = 1..k-1` in order, exactly
//! `L - (l_1 + .. + l_i)` balls move from bin `i` to bin `i + 1`. The final
//! bin contents after `n` turns form an ordered partition of `[nL]`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::enumeration;
use crate::error::{Error, Result};
use crate::lattice::{is_configuration_path, BinSpec, StepSequence};
use crate::limits;
use crate::matroid::{
    self, elements, first_non_flat, full_mask, verify_matroid_axioms_with_limit, ExchangeVerdict,
    ExplicitMatroid, Mask, NestedMatroid,
};

/// An ordered `k`-partition `(A_1, .., A_k)` of `[m]` with non-empty blocks.
///
/// Stored as the block label of each element, which is also the step word
/// of the corresponding lattice path. Ordering is lexicographic on labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    k: usize,
    labels: Vec<u8>,
}

impl OrderedPartition {
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let k = blocks.len();
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::NotAPartition(format!("{k} blocks")));
        }
        let m: usize = blocks.iter().map(Vec::len).sum();
        let mut labels = vec![0u8; m];
        for (j, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::NotAPartition(format!("block {} is empty", j + 1)));
            }
            for &e in block {
                if e == 0 || e > m {
                    return Err(Error::NotAPartition(format!("element {e} outside [{m}]")));
                }
                if labels[e - 1] != 0 {
                    return Err(Error::NotAPartition(format!("element {e} appears twice")));
                }
                labels[e - 1] = (j + 1) as u8;
            }
        }
        Ok(OrderedPartition { k, labels })
    }

    /// `labels[e - 1]` is the (1-based) block holding element `e`.
    pub fn from_labels(k: usize, labels: Vec<u8>) -> Result<Self> {
        if k == 0 || k > u8::MAX as usize {
            return Err(Error::NotAPartition(format!("{k} blocks")));
        }
        let mut seen = vec![false; k];
        for &b in &labels {
            if b == 0 || b as usize > k {
                return Err(Error::NotAPartition(format!(
                    "block label {b} outside 1..={k}"
                )));
            }
            seen[b as usize - 1] = true;
        }
        if let Some(j) = seen.iter().position(|s| !s) {
            return Err(Error::NotAPartition(format!("block {} is empty", j + 1)));
        }
        Ok(OrderedPartition { k, labels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ground_size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn block_of(&self, element: usize) -> usize {
        self.labels[element - 1] as usize
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.k];
        for (i, &b) in self.labels.iter().enumerate() {
            blocks[b as usize - 1].push(i + 1);
        }
        blocks
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &b in &self.labels {
            sizes[b as usize - 1] += 1;
        }
        sizes
    }

    /// `A_1 ∪ .. ∪ A_i` as element list.
    pub fn prefix_union(&self, i: usize) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &b)| b as usize <= i)
            .map(|(e, _)| e + 1)
            .collect()
    }

    /// `A_1 ∪ .. ∪ A_i` as bitmask; ground set at most 64.
    pub fn prefix_mask(&self, i: usize) -> Mask {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, &b)| b as usize <= i)
            .fold(0, |m, (e, _)| m | 1 << e)
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(|e| e.to_string()).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "({})", blocks.join(","))
    }
}

impl Serialize for OrderedPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrderedPartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let blocks = Vec::<Vec<usize>>::deserialize(d)?;
        OrderedPartition::from_blocks(blocks).map_err(serde::de::Error::custom)
    }
}

/// A set of ordered partitions sharing one flag rank `(r_1, .., r_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "FamilyRepr", into = "FamilyRepr")]
pub struct FlagBasisFamily {
    ground_size: usize,
    flag_rank: Vec<usize>,
    flags: BTreeSet<OrderedPartition>,
}

#[derive(Serialize, Deserialize)]
struct FamilyRepr {
    ground_size: usize,
    flag_rank: Vec<usize>,
    flags: Vec<OrderedPartition>,
}

impl TryFrom<FamilyRepr> for FlagBasisFamily {
    type Error = Error;

    fn try_from(repr: FamilyRepr) -> Result<Self> {
        FlagBasisFamily::new(repr.ground_size, repr.flag_rank, repr.flags)
    }
}

impl From<FlagBasisFamily> for FamilyRepr {
    fn from(f: FlagBasisFamily) -> Self {
        FamilyRepr {
            ground_size: f.ground_size,
            flag_rank: f.flag_rank,
            flags: f.flags.into_iter().collect(),
        }
    }
}

impl FlagBasisFamily {
    pub fn new(
        ground_size: usize,
        flag_rank: Vec<usize>,
        flags: impl IntoIterator<Item = OrderedPartition>,
    ) -> Result<Self> {
        if flag_rank.iter().sum::<usize>() != ground_size || flag_rank.contains(&0) {
            return Err(Error::NotAPartition(format!(
                "flag rank {flag_rank:?} is not a composition of {ground_size}"
            )));
        }
        let flags: BTreeSet<OrderedPartition> = flags.into_iter().collect();
        for flag in &flags {
            if flag.ground_size() != ground_size || flag.block_sizes() != flag_rank {
                return Err(Error::NotAPartition(format!(
                    "{flag} is not a {flag_rank:?}-partition of [{ground_size}]"
                )));
            }
        }
        Ok(FlagBasisFamily {
            ground_size,
            flag_rank,
            flags,
        })
    }

    pub fn ground_size(&self) -> usize {
        self.ground_size
    }

    pub fn flag_rank(&self) -> &[usize] {
        &self.flag_rank
    }

    pub fn k(&self) -> usize {
        self.flag_rank.len()
    }

    pub fn flags(&self) -> &BTreeSet<OrderedPartition> {
        &self.flags
    }

    pub fn len(&self) -> usize {
        self.flags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flags.is_empty()
    }

    pub fn contains(&self, flag: &OrderedPartition) -> bool {
        self.flags.contains(flag)
    }

    /// `{A_1 ∪ .. ∪ A_i}` over all members.
    pub fn prefix_family(&self, i: usize) -> Vec<Mask> {
        let set: BTreeSet<Mask> = self.flags.iter().map(|f| f.prefix_mask(i)).collect();
        set.into_iter().collect()
    }
}

/// A verified flag matroid together with its constituents `M_1, .., M_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlagMatroid {
    pub family: FlagBasisFamily,
    pub constituents: Vec<ExplicitMatroid>,
}

/// The first flag-matroid axiom that fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlagViolation {
    /// The `i`-th prefix family is not the basis family of a matroid.
    F1 {
        index: usize,
        witness: ExchangeVerdict,
    },
    /// A flat of `M_i` that is not a flat of `M_{i+1}`.
    F2 { index: usize, flat: Vec<usize> },
    /// A partition whose prefix unions are all bases, missing from the family.
    F3 { missing: OrderedPartition },
}

impl fmt::Display for FlagViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FlagViolation::F1 { index, witness } => {
                write!(f, "F1 fails at i={index}: {witness}")
            }
            FlagViolation::F2 { index, flat } => write!(
                f,
                "F2 fails at i={index}: flat {flat:?} of M_{index} is not a flat of M_{}",
                index + 1
            ),
            FlagViolation::F3 { missing } => {
                write!(
                    f,
                    "F3 fails: {missing} has basis prefix unions but is not a flag basis"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FlagVerdict {
    Ok(FlagMatroid),
    Violation(FlagViolation),
}

impl FlagVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, FlagVerdict::Ok(_))
    }
}

/// Checks axioms F1, F2 and F3 by brute force.
pub fn is_flag_matroid(family: &FlagBasisFamily) -> Result<FlagVerdict> {
    is_flag_matroid_with_limit(family, limits::BRUTE_FORCE_GROUND)
}

pub fn is_flag_matroid_with_limit(family: &FlagBasisFamily, limit: usize) -> Result<FlagVerdict> {
    if family.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let m = family.ground_size();
    limits::check(m, limit.min(64))?;
    let k = family.k();

    let mut constituents = Vec::with_capacity(k);
    for i in 1..=k {
        let bases = family.prefix_family(i);
        let verdict = verify_matroid_axioms_with_limit(m, &bases, limit)?;
        if !verdict.is_ok() {
            return Ok(FlagVerdict::Violation(FlagViolation::F1 {
                index: i,
                witness: verdict,
            }));
        }
        constituents.push(ExplicitMatroid::from_verified(m, bases));
    }

    let tables = constituents
        .iter()
        .map(|c| matroid::rank_table(c, limit))
        .collect::<Result<Vec<_>>>()?;
    for i in 1..k {
        if let Some(flat) = first_non_flat(&tables[i - 1], &tables[i]) {
            return Ok(FlagVerdict::Violation(FlagViolation::F2 {
                index: i,
                flat: elements(flat),
            }));
        }
    }

    // F3: extend bases of M_1 blockwise through the bases of M_2, .., M_k
    let mut prefixes: Vec<(Mask, Vec<u8>)> = vec![(0, vec![0; m])];
    for (i, constituent) in constituents.iter().enumerate() {
        let label = (i + 1) as u8;
        let mut next = Vec::new();
        for (covered, labels) in &prefixes {
            for &basis in constituent.bases() {
                if basis & covered != *covered {
                    continue;
                }
                let mut extended = labels.clone();
                for e in elements(basis & !covered) {
                    extended[e - 1] = label;
                }
                next.push((basis, extended));
            }
        }
        prefixes = next;
    }
    let missing = prefixes
        .into_iter()
        .filter(|(covered, _)| *covered == full_mask(m))
        .filter_map(|(_, labels)| OrderedPartition::from_labels(k, labels).ok())
        .filter(|p| !family.contains(p))
        .min();
    if let Some(missing) = missing {
        return Ok(FlagVerdict::Violation(FlagViolation::F3 { missing }));
    }

    Ok(FlagVerdict::Ok(FlagMatroid {
        family: family.clone(),
        constituents,
    }))
}

/// The flag matroid of the `spec` ball process, kept implicit: membership is
/// the configuration-path predicate and constituent `i` is the `n`-th
/// `(l_1 + .. + l_i, l_{i+1} + .. + l_k)`-tbp matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TbpFlagMatroid {
    spec: BinSpec,
    constituents: Vec<NestedMatroid>,
}

pub fn tbp_flag(spec: &BinSpec) -> TbpFlagMatroid {
    let total = spec.per_turn();
    let constituents = spec.cumulative()[1..]
        .iter()
        .map(|&a| matroid::tbp_matroid(a, total - a, spec.n()).expect("a + b = L >= 1"))
        .collect();
    TbpFlagMatroid {
        spec: spec.clone(),
        constituents,
    }
}

impl TbpFlagMatroid {
    pub fn spec(&self) -> &BinSpec {
        &self.spec
    }

    pub fn flag_rank(&self) -> Vec<usize> {
        self.spec.totals()
    }

    pub fn constituents(&self) -> &[NestedMatroid] {
        &self.constituents
    }

    pub fn contains(&self, flag: &OrderedPartition) -> Result<bool> {
        if flag.block_sizes() != self.spec.totals() {
            return Ok(false);
        }
        let path = StepSequence::new(flag.k(), flag.labels().to_vec())?;
        is_configuration_path(&path, &self.spec)
    }

    /// Number of flag bases, by the counting DP.
    pub fn count(&self) -> BigUint {
        enumeration::count_configurations(&self.spec)
    }

    /// The explicit family; refused above [`limits::EXPLICIT_BALLS`] balls.
    pub fn family(&self) -> Result<FlagBasisFamily> {
        self.family_with_limit(limits::EXPLICIT_BALLS)
    }

    pub fn family_with_limit(&self, limit: usize) -> Result<FlagBasisFamily> {
        let paths = enumeration::configuration_paths_with_limit(&self.spec, limit)?;
        let flags = paths
            .into_iter()
            .map(|p| OrderedPartition::from_labels(self.spec.k(), p.steps().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        FlagBasisFamily::new(self.spec.balls(), self.spec.totals(), flags)
    }
}

/// One turn: `moves[i - 1]` holds the balls moved across boundary `i`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Turn {
    pub moves: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct MoveSchedule {
    pub turns: Vec<Turn>,
}

/// Replays `schedule` and returns the final bin contents.
pub fn simulate(spec: &BinSpec, schedule: &MoveSchedule) -> Result<OrderedPartition> {
    let k = spec.k();
    let per_turn = spec.per_turn();
    let cumulative = spec.cumulative();
    if schedule.turns.len() != spec.n() {
        return Err(Error::MalformedSchedule(format!(
            "{} turns, expected {}",
            schedule.turns.len(),
            spec.n()
        )));
    }
    // bin_of[ball - 1], 1-based bins
    let mut bin_of = vec![0u8; spec.balls()];
    for (t, turn) in schedule.turns.iter().enumerate() {
        let turn_no = t + 1;
        if turn.moves.len() != k - 1 {
            return Err(Error::MalformedSchedule(format!(
                "turn {turn_no} has {} boundary moves, expected {}",
                turn.moves.len(),
                k - 1
            )));
        }
        for slot in &mut bin_of[t * per_turn..turn_no * per_turn] {
            *slot = 1;
        }
        for (i, moved) in turn.moves.iter().enumerate() {
            let boundary = i + 1;
            let expected = per_turn - cumulative[boundary];
            if moved.len() != expected {
                return Err(Error::WrongCardinality {
                    turn: turn_no,
                    boundary,
                    expected,
                    found: moved.len(),
                });
            }
            for &ball in moved {
                let here = ball
                    .checked_sub(1)
                    .and_then(|b| bin_of.get(b))
                    .copied()
                    .unwrap_or(0);
                if here as usize != boundary {
                    return Err(Error::IllegalMove {
                        turn: turn_no,
                        bin: boundary,
                        ball,
                    });
                }
                bin_of[ball - 1] = (boundary + 1) as u8;
            }
        }
    }
    OrderedPartition::from_labels(k, bin_of)
}

/// Greedy schedule reaching `target`.
///
/// Balls crossing into bin `i + 1` must lie outside `C_i = A_1 ∪ .. ∪ A_i`;
/// among those, balls whose target bin is higher go first, and ties go to
/// the lowest label.
pub fn realize(spec: &BinSpec, target: &OrderedPartition) -> Result<MoveSchedule> {
    let k = spec.k();
    if target.k() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: target.k(),
        });
    }
    if target.ground_size() != spec.balls() || target.block_sizes() != spec.totals() {
        return Err(Error::NotAPartition(format!(
            "{target} is not a {:?}-partition of [{}]",
            spec.totals(),
            spec.balls()
        )));
    }
    let flag = tbp_flag(spec);
    for (i, constituent) in flag.constituents().iter().enumerate().take(k - 1) {
        if !constituent.is_basis_set(&target.prefix_union(i + 1))? {
            return Err(Error::NotAFlagBasis { index: i + 1 });
        }
    }

    let per_turn = spec.per_turn();
    let cumulative = spec.cumulative();
    let mut bins: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
    let mut turns = Vec::with_capacity(spec.n());
    for t in 1..=spec.n() {
        bins[0].extend((t - 1) * per_turn + 1..=t * per_turn);
        let mut moves = Vec::with_capacity(k - 1);
        for i in 1..k {
            let needed = per_turn - cumulative[i];
            let mut eligible: Vec<usize> = bins[i - 1]
                .iter()
                .copied()
                .filter(|&b| target.block_of(b) > i)
                .collect();
            if eligible.len() < needed {
                return Err(Error::NotAFlagBasis { index: i });
            }
            eligible.sort_by_key(|&b| (std::cmp::Reverse(target.block_of(b)), b));
            eligible.truncate(needed);
            eligible.sort_unstable();
            for b in &eligible {
                bins[i - 1].remove(b);
                bins[i].insert(*b);
            }
            moves.push(eligible);
        }
        turns.push(Turn { moves });
    }
    Ok(MoveSchedule { turns })
}

/// Reachable configurations with the number of distinct move sequences
/// that produce each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reachability {
    pub family: FlagBasisFamily,
    pub schedule_counts: BTreeMap<OrderedPartition, BigUint>,
}

/// Every `n`-configuration, by breadth-first replay of all legal moves.
pub fn reachable_configurations(spec: &BinSpec) -> Result<FlagBasisFamily> {
    Ok(reachable_with_limit(spec, limits::REACHABLE_BALLS)?.family)
}

pub fn reachable_with_limit(spec: &BinSpec, limit: usize) -> Result<Reachability> {
    limits::check(spec.balls(), limit.min(64))?;
    let k = spec.k();
    let per_turn = spec.per_turn();
    let cumulative = spec.cumulative();

    let mut layer: HashMap<Vec<Mask>, BigUint> = HashMap::new();
    layer.insert(vec![0; k], BigUint::one());
    for t in 1..=spec.n() {
        let arrivals = full_mask(t * per_turn) & !full_mask((t - 1) * per_turn);
        let mut current: HashMap<Vec<Mask>, BigUint> = HashMap::new();
        for (mut bins, ways) in layer {
            bins[0] |= arrivals;
            *current.entry(bins).or_default() += ways;
        }
        for i in 1..k {
            let moving = per_turn - cumulative[i];
            let mut next: HashMap<Vec<Mask>, BigUint> = HashMap::new();
            for (bins, ways) in &current {
                let source = elements(bins[i - 1]);
                for pick in matroid::subsets_of_size(source.len(), moving) {
                    let moved = elements(pick)
                        .into_iter()
                        .fold(0, |acc, idx| acc | 1 << (source[idx - 1] - 1));
                    let mut after = bins.clone();
                    after[i - 1] &= !moved;
                    after[i] |= moved;
                    *next.entry(after).or_default() += ways;
                }
            }
            current = next;
        }
        layer = current;
    }

    let mut schedule_counts = BTreeMap::new();
    for (bins, ways) in layer {
        let blocks = bins.iter().map(|&b| elements(b)).collect();
        schedule_counts.insert(OrderedPartition::from_blocks(blocks)?, ways);
    }
    let family =
        FlagBasisFamily::new(spec.balls(), spec.totals(), schedule_counts.keys().cloned())?;
    Ok(Reachability {
        family,
        schedule_counts,
    })
}

/// All `(r_1, .., r_k)`-partitions of `[m]`, in label order.
pub fn all_partitions(flag_rank: &[usize]) -> Vec<OrderedPartition> {
    let k = flag_rank.len();
    let m: usize = flag_rank.iter().sum();
    let mut out = Vec::new();
    let mut labels = Vec::with_capacity(m);
    let mut remaining = flag_rank.to_vec();
    fn go(
        labels: &mut Vec<u8>,
        remaining: &mut [usize],
        m: usize,
        k: usize,
        out: &mut Vec<OrderedPartition>,
    ) {
        if labels.len() == m {
            out.push(OrderedPartition {
                k,
                labels: labels.clone(),
            });
            return;
        }
        for j in 0..k {
            if remaining[j] > 0 {
                remaining[j] -= 1;
                labels.push((j + 1) as u8);
                go(labels, remaining, m, k, out);
                labels.pop();
                remaining[j] += 1;
            }
        }
    }
    if flag_rank.iter().all(|&r| r > 0) {
        go(&mut labels, &mut remaining, m, k, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(l: &[usize], n: usize) -> BinSpec {
        BinSpec::new(l.to_vec(), n).unwrap()
    }

    fn part(blocks: &[&[usize]]) -> OrderedPartition {
        OrderedPartition::from_blocks(blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn schedule(turns: &[&[&[usize]]]) -> MoveSchedule {
        MoveSchedule {
            turns: turns
                .iter()
                .map(|t| Turn {
                    moves: t.iter().map(|m| m.to_vec()).collect(),
                })
                .collect(),
        }
    }

    #[test]
    fn partition_validation() {
        assert!(OrderedPartition::from_blocks(vec![vec![1, 2], vec![2, 3]]).is_err());
        assert!(OrderedPartition::from_blocks(vec![vec![1], vec![3]]).is_err());
        assert!(OrderedPartition::from_blocks(vec![vec![1, 2], vec![]]).is_err());
        let p = part(&[&[5, 6], &[3, 4], &[1, 2]]);
        assert_eq!(p.labels(), &[3, 3, 2, 2, 1, 1]);
        assert_eq!(p.prefix_union(2), vec![3, 4, 5, 6]);
        assert_eq!(p.to_string(), "({5,6},{3,4},{1,2})");
    }

    #[test]
    fn simulate_examples() {
        let out = simulate(&spec(&[1, 1, 1], 1), &schedule(&[&[&[2, 3], &[3]]])).unwrap();
        assert_eq!(out, part(&[&[1], &[2], &[3]]));
        let out = simulate(&spec(&[1, 1], 1), &schedule(&[&[&[1]]])).unwrap();
        assert_eq!(out, part(&[&[2], &[1]]));
        let greedy = schedule(&[&[&[1, 2], &[1]], &[&[3, 4], &[2]]]);
        assert_eq!(
            simulate(&spec(&[1, 1, 1], 2), &greedy).unwrap(),
            part(&[&[5, 6], &[3, 4], &[1, 2]])
        );
    }

    #[test]
    fn simulate_rejects_bad_schedules() {
        let s = spec(&[1, 1, 1], 1);
        assert_eq!(
            simulate(&s, &schedule(&[&[&[2, 3], &[1]]])),
            Err(Error::IllegalMove {
                turn: 1,
                bin: 2,
                ball: 1
            })
        );
        assert_eq!(
            simulate(&s, &schedule(&[&[&[2], &[2]]])),
            Err(Error::WrongCardinality {
                turn: 1,
                boundary: 1,
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            simulate(&s, &schedule(&[&[&[2, 3]]])),
            Err(Error::MalformedSchedule(_))
        ));
        assert!(matches!(
            simulate(&s, &MoveSchedule::default()),
            Err(Error::MalformedSchedule(_))
        ));
        assert!(matches!(
            simulate(&s, &schedule(&[&[&[2, 9], &[2]]])),
            Err(Error::IllegalMove { ball: 9, .. })
        ));
    }

    #[test]
    fn realize_examples() {
        assert_eq!(
            realize(&spec(&[1, 1, 1], 1), &part(&[&[3], &[2], &[1]])).unwrap(),
            schedule(&[&[&[1, 2], &[1]]])
        );
        assert_eq!(
            realize(&spec(&[1, 1, 1], 2), &part(&[&[5, 6], &[3, 4], &[1, 2]])).unwrap(),
            schedule(&[&[&[1, 2], &[1]], &[&[3, 4], &[2]]])
        );
        assert_eq!(
            realize(&spec(&[1, 1, 1], 2), &part(&[&[1, 2], &[3, 4], &[5, 6]])),
            Err(Error::NotAFlagBasis { index: 1 })
        );
    }

    #[test]
    fn reachable_examples() {
        assert_eq!(
            reachable_configurations(&spec(&[1, 1, 1], 1))
                .unwrap()
                .len(),
            6
        );
        assert_eq!(
            reachable_configurations(&spec(&[1, 1], 2)).unwrap().len(),
            5
        );
        assert_eq!(
            reachable_configurations(&spec(&[1, 1, 1], 2))
                .unwrap()
                .len(),
            63
        );
        assert!(matches!(
            reachable_configurations(&spec(&[1, 1, 1], 5)),
            Err(Error::GroundTooLarge {
                size: 15,
                limit: 12
            })
        ));
    }

    #[test]
    fn schedule_counts_cover_all_move_sequences() {
        // turn 1 of (1,1): 2 choices; turn 2: 3 balls in A, choose 1
        let r = reachable_with_limit(&spec(&[1, 1], 2), 12).unwrap();
        let total: BigUint = r.schedule_counts.values().sum();
        assert_eq!(total, BigUint::from(6u32));
    }

    #[test]
    fn tbp_flag_examples() {
        let uniform = tbp_flag(&spec(&[1, 1, 1], 1)).family().unwrap();
        assert_eq!(
            uniform.flags().iter().cloned().collect::<Vec<_>>(),
            all_partitions(&[1, 1, 1])
        );

        let two = tbp_flag(&spec(&[1, 1], 2));
        assert_eq!(two.flag_rank(), vec![2, 2]);
        assert_eq!(two.family().unwrap().len(), 5);
        assert_eq!(
            two.constituents()[0],
            matroid::tbp_matroid(1, 1, 2).unwrap()
        );

        let three = tbp_flag(&spec(&[1, 1, 1], 2));
        assert_eq!(three.family().unwrap().len(), 63);
        assert_eq!(three.count(), BigUint::from(63u32));
        assert_eq!(
            three.constituents()[0],
            matroid::tbp_matroid(1, 2, 2).unwrap()
        );
        assert_eq!(
            three.constituents()[1],
            matroid::tbp_matroid(2, 1, 2).unwrap()
        );
        assert_eq!(three.constituents()[2].bases().unwrap(), vec![0b111111]);
    }

    #[test]
    fn flag_checker_examples() {
        let family = tbp_flag(&spec(&[1, 1, 1], 2)).family().unwrap();
        assert!(is_flag_matroid(&family).unwrap().is_ok());

        let uniform = FlagBasisFamily::new(3, vec![1, 1, 1], all_partitions(&[1, 1, 1])).unwrap();
        match is_flag_matroid(&uniform).unwrap() {
            FlagVerdict::Ok(fm) => {
                assert_eq!(fm.constituents.len(), 3);
                assert_eq!(fm.constituents[2], ExplicitMatroid::free(3));
            }
            other => panic!("{other:?}"),
        }

        // B_2 = {{1,2},{2,3}} is a matroid; M_1 has loop 3, so {3} is a flat
        // of M_1 but not of M_2
        let pair = FlagBasisFamily::new(
            3,
            vec![1, 1, 1],
            vec![part(&[&[1], &[2], &[3]]), part(&[&[2], &[3], &[1]])],
        )
        .unwrap();
        assert_eq!(
            is_flag_matroid(&pair).unwrap(),
            FlagVerdict::Violation(FlagViolation::F2 {
                index: 1,
                flat: vec![3]
            })
        );

        let broken = FlagBasisFamily::new(
            4,
            vec![2, 2],
            vec![part(&[&[1, 2], &[3, 4]]), part(&[&[3, 4], &[1, 2]])],
        )
        .unwrap();
        assert!(matches!(
            is_flag_matroid(&broken).unwrap(),
            FlagVerdict::Violation(FlagViolation::F1 { index: 1, .. })
        ));

        // F1 and F2 hold (uniform constituents) but one flag is missing
        let mut most = all_partitions(&[1, 1, 1]);
        most.pop();
        let partial = FlagBasisFamily::new(3, vec![1, 1, 1], most).unwrap();
        assert_eq!(
            is_flag_matroid(&partial).unwrap(),
            FlagVerdict::Violation(FlagViolation::F3 {
                missing: part(&[&[3], &[2], &[1]])
            })
        );

        let empty = FlagBasisFamily::new(3, vec![1, 1, 1], vec![]).unwrap();
        assert_eq!(is_flag_matroid(&empty), Err(Error::EmptyFamily));
    }

    #[test]
    fn family_json_schema() {
        let family = FlagBasisFamily::new(
            3,
            vec![1, 2],
            vec![part(&[&[1], &[2, 3]]), part(&[&[2], &[1, 3]])],
        )
        .unwrap();
        let text = serde_json::to_string(&family).unwrap();
        assert_eq!(
            text,
            r#"{"ground_size":3,"flag_rank":[1,2],"flags":[[[1],[2,3]],[[2],[1,3]]]}"#
        );
        let back: FlagBasisFamily = serde_json::from_str(&text).unwrap();
        assert_eq!(back, family);
        assert!(serde_json::from_str::<FlagBasisFamily>(
            r#"{"ground_size":3,"flag_rank":[2,1],"flags":[[[1],[2,3]]]}"#
        )
        .is_err());
    }

    #[test]
    fn schedule_json_schema() {
        let s = schedule(&[&[&[1, 2], &[1]]]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"turns":[{"moves":[[1,2],[1]]}]}"#);
    }
}
