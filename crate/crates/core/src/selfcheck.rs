//! Cross-oracle agreement checks at desk scale.
//!
//! Each check compares a closed-form or dynamic-programming routine with an
//! independent brute-force one and reports the first disagreement.

use std::fmt;

use num_bigint::BigUint;

use crate::diagram::{
    brute_force_matrix, diagram_matrix, diagram_matrix_ramped, paths_in_diagram_are_configurations,
    DiagramMatrix,
};
use crate::enumeration::{bounds, count_by_filter, count_configurations, tbp_count};
use crate::error::Result;
use crate::flag::{is_flag_matroid, reachable_configurations, realize, simulate, tbp_flag};
use crate::lattice::{BinSpec, StepSequence};
use crate::limits;
use crate::matroid::{full_mask, is_quotient, tbp_matroid, Matroid, NestedMatroid};

/// All specs with `k >= 2` bins and at most `max_balls` balls, ordered by
/// ball count, then `k`, then `l` lexicographically, then `n`.
pub fn specs_up_to(max_balls: usize) -> Vec<BinSpec> {
    let mut out = Vec::new();
    for per_turn in 2..=max_balls {
        let mut comps = Vec::new();
        compositions(per_turn, &mut Vec::new(), &mut comps);
        comps.retain(|c| c.len() >= 2);
        for l in comps {
            for n in 1..=max_balls / per_turn {
                out.push(BinSpec::new(l.clone(), n).expect("positive parts"));
            }
        }
    }
    out.sort_by(|a, b| (a.balls(), a.k(), a.l(), a.n()).cmp(&(b.balls(), b.k(), b.l(), b.n())));
    out
}

fn compositions(rest: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in 1..=rest {
        prefix.push(part);
        compositions(rest - part, prefix, out);
        prefix.pop();
    }
}

/// All N/E words of length at most `max_len`.
pub fn bounding_paths_up_to(max_len: usize) -> Vec<StepSequence> {
    let mut out = Vec::new();
    for len in 1..=max_len {
        for bits in 0..1u32 << len {
            let steps = (0..len).map(|i| 1 + ((bits >> i) & 1) as u8).collect();
            out.push(StepSequence::new(2, steps).expect("axes 1 and 2"));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// First disagreement, if any.
    pub failure: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "PASS {} ({} cases)", self.name, self.cases),
            Some(why) => write!(f, "FAIL {} ({} cases): {why}", self.name, self.cases),
        }
    }
}

type Check = fn() -> Result<(usize, Option<String>)>;

const CHECKS: &[(&str, Check)] = &[
    ("nested independence vs bases", nested_independence),
    ("nested quotient fast vs flats", nested_quotients),
    ("counting dp vs filter vs process", counting),
    ("k=2 counts vs nested bases", two_bins),
    ("bounds sandwich", sandwich),
    ("tbp flag family is a flag matroid", flag_axioms),
    ("realize then simulate", round_trip),
    ("diagram recursion vs feasibility", recursion_diagrams),
    ("diagram ramped recursion vs feasibility", ramped_diagrams),
    ("diagram paths are configurations", diagram_paths),
    (
        "ramped diagram paths are configurations",
        ramped_diagram_paths,
    ),
];

/// Runs every check; errors from the library count as failures.
pub fn run() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check() {
            Ok((cases, failure)) => CheckOutcome {
                name,
                cases,
                failure,
            },
            Err(e) => CheckOutcome {
                name,
                cases: 0,
                failure: Some(format!("{}: {e}", e.name())),
            },
        })
        .collect()
}

fn nested_independence() -> Result<(usize, Option<String>)> {
    let paths = bounding_paths_up_to(10);
    for path in &paths {
        let m = NestedMatroid::from_path(path)?;
        let bases = m.bases()?;
        for set in 0..=full_mask(path.len()) {
            let covered = bases.iter().any(|&b| b & set == set);
            if covered != m.is_independent_mask(set) {
                return Ok((paths.len(), Some(format!("{path}: set {set:#b}"))));
            }
        }
    }
    Ok((paths.len(), None))
}

fn nested_quotients() -> Result<(usize, Option<String>)> {
    let mut tbp = Vec::new();
    for a in 0..=10 {
        for b in 0..=10 - a {
            for n in 1..=10 {
                if a + b >= 1 && (a + b) * n <= 10 {
                    tbp.push(((a, b, n), tbp_matroid(a, b, n)?));
                }
            }
        }
    }
    let mut cases = 0;
    for (p, m) in &tbp {
        for (q, other) in &tbp {
            if m.ground_size() != other.ground_size() {
                continue;
            }
            cases += 1;
            if m.is_quotient_of(other)? != is_quotient(m, other)? {
                return Ok((cases, Some(format!("tbp {p:?} against tbp {q:?}"))));
            }
        }
    }
    Ok((cases, None))
}

fn counting() -> Result<(usize, Option<String>)> {
    let specs = specs_up_to(8);
    for spec in &specs {
        let dp = count_configurations(spec);
        let filter = count_by_filter(spec)?;
        let reached = reachable_configurations(spec)?;
        let family = tbp_flag(spec).family()?;
        if dp != filter || BigUint::from(reached.len()) != dp || reached != family {
            return Ok((
                specs.len(),
                Some(format!(
                    "{spec}: dp {dp}, filter {filter}, process {}",
                    reached.len()
                )),
            ));
        }
    }
    Ok((specs.len(), None))
}

fn two_bins() -> Result<(usize, Option<String>)> {
    let mut cases = 0;
    for a in 1..=3 {
        for b in 1..=4 - a {
            for n in 1..=4 {
                cases += 1;
                let spec = BinSpec::new(vec![a, b], n)?;
                let dp = count_configurations(&spec);
                let closed = tbp_count(a, b, n)?;
                let listed = tbp_matroid(a, b, n)?.bases()?.len();
                if dp != closed || BigUint::from(listed) != dp {
                    return Ok((cases, Some(format!("{spec}: {dp} {closed} {listed}"))));
                }
            }
        }
    }
    Ok((cases, None))
}

fn sandwich() -> Result<(usize, Option<String>)> {
    let specs = specs_up_to(10);
    for spec in &specs {
        let report = bounds(spec, true);
        if !report.is_consistent() {
            return Ok((specs.len(), Some(spec.to_string())));
        }
    }
    Ok((specs.len(), None))
}

fn flag_axioms() -> Result<(usize, Option<String>)> {
    let specs = specs_up_to(6);
    for spec in &specs {
        let verdict = is_flag_matroid(&tbp_flag(spec).family()?)?;
        if !verdict.is_ok() {
            return Ok((specs.len(), Some(spec.to_string())));
        }
    }
    Ok((specs.len(), None))
}

fn round_trip() -> Result<(usize, Option<String>)> {
    let specs = specs_up_to(7);
    let mut cases = 0;
    for spec in &specs {
        for target in tbp_flag(spec).family()?.flags() {
            cases += 1;
            if simulate(spec, &realize(spec, target)?)? != *target {
                return Ok((cases, Some(format!("{spec}: {target}"))));
            }
        }
    }
    Ok((cases, None))
}

type Builder = fn([usize; 3], usize) -> Result<DiagramMatrix>;

fn compare_diagrams(build: Builder) -> Result<(usize, Option<String>)> {
    let mut cases = 0;
    for l1 in 1..=3 {
        for l2 in 1..=3 {
            for l3 in 1..=3 {
                for n in 1..=3 {
                    let spec = BinSpec::new(vec![l1, l2, l3], n)?;
                    if spec.balls() > limits::DIAGRAM_BALLS {
                        continue;
                    }
                    cases += 1;
                    if build([l1, l2, l3], n)? != brute_force_matrix(&spec)? {
                        return Ok((cases, Some(spec.to_string())));
                    }
                }
            }
        }
    }
    Ok((cases, None))
}

fn recursion_diagrams() -> Result<(usize, Option<String>)> {
    compare_diagrams(diagram_matrix)
}

fn ramped_diagrams() -> Result<(usize, Option<String>)> {
    compare_diagrams(diagram_matrix_ramped)
}

fn compare_paths(build: Builder, cases: &[([usize; 3], usize)]) -> Result<(usize, Option<String>)> {
    for &(l, n) in cases {
        let spec = BinSpec::new(l.to_vec(), n)?;
        let verdict = paths_in_diagram_are_configurations(&build(l, n)?, &spec)?;
        if !verdict.is_ok() {
            return Ok((cases.len(), Some(format!("{spec}: {verdict:?}"))));
        }
    }
    Ok((cases.len(), None))
}

const PATH_CASES: &[([usize; 3], usize)] = &[
    ([1, 1, 1], 1),
    ([1, 1, 1], 2),
    ([2, 1, 1], 2),
    ([1, 2, 1], 2),
    ([1, 1, 1], 3),
    ([1, 2, 1], 3),
];

fn diagram_paths() -> Result<(usize, Option<String>)> {
    compare_paths(diagram_matrix, PATH_CASES)
}

fn ramped_diagram_paths() -> Result<(usize, Option<String>)> {
    compare_paths(diagram_matrix_ramped, PATH_CASES)
}
