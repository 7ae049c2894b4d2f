//! Three-bin diagrams: the set of lattice points lying on some configuration
//! path, described by minimum heights over the `(x, y)` grid.
//!
//! Entry `(x, y)` of a [`DiagramMatrix`] (row `x + 1`, column `y + 1`) is the
//! least `z` with `(x, y, z)` in the diagram, or `None` (printed `*`) when no
//! such `z` exists.

use std::fmt::Write as _;

use serde::Serialize;

use crate::enumeration::for_each_word;
use crate::error::{Error, Result};
use crate::flag::{is_flag_matroid, FlagBasisFamily, FlagVerdict, FlagViolation, OrderedPartition};
use crate::lattice::{is_configuration_path, BinSpec, StepSequence};
use crate::limits;

/// Minimum height, `None` for the unreachable marker.
pub type Height = Option<usize>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Point3 {
    pub x: usize,
    pub y: usize,
    pub z: usize,
}

impl Point3 {
    pub fn new(x: usize, y: usize, z: usize) -> Self {
        Point3 { x, y, z }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramMatrix {
    l: [usize; 3],
    n: usize,
    entries: Vec<Vec<Height>>,
}

impl DiagramMatrix {
    /// Wraps an explicit table; its shape must be `(n l_1 + 1) × (n l_2 + 1)`
    /// with finite entries at most `n l_3`.
    pub fn from_entries(l: [usize; 3], n: usize, entries: Vec<Vec<Height>>) -> Result<Self> {
        BinSpec::new(l.to_vec(), n)?;
        let rows = n * l[0] + 1;
        let cols = n * l[1] + 1;
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidSpec(format!("matrix must be {rows}x{cols}")));
        }
        if entries.iter().flatten().flatten().any(|&z| z > n * l[2]) {
            return Err(Error::InvalidSpec(format!(
                "heights must not exceed {}",
                n * l[2]
            )));
        }
        Ok(DiagramMatrix { l, n, entries })
    }

    pub fn l(&self) -> [usize; 3] {
        self.l
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Vec<Height>] {
        &self.entries
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    /// Top of the bounding box, `n l_3`.
    pub fn height_limit(&self) -> usize {
        self.n * self.l[2]
    }

    /// Overwrites one entry; used to build corrupted copies in tests.
    pub fn set(&mut self, x: usize, y: usize, value: Height) -> Result<()> {
        self.check(x, y)?;
        self.entries[x][y] = value;
        Ok(())
    }

    fn check(&self, x: usize, y: usize) -> Result<()> {
        if x >= self.rows() {
            return Err(Error::OutOfRange {
                element: x,
                ground_size: self.rows() - 1,
            });
        }
        if y >= self.cols() {
            return Err(Error::OutOfRange {
                element: y,
                ground_size: self.cols() - 1,
            });
        }
        Ok(())
    }

    /// The top-left `rows × cols` block.
    pub fn block(&self, rows: usize, cols: usize) -> Vec<Vec<Height>> {
        self.entries[..rows]
            .iter()
            .map(|r| r[..cols].to_vec())
            .collect()
    }

    /// CSV with a header of `y` values and a leading column of `x` values.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x\\y");
        for y in 0..self.cols() {
            write!(out, ",{y}").unwrap();
        }
        out.push('\n');
        for (x, row) in self.entries.iter().enumerate() {
            write!(out, "{x}").unwrap();
            for h in row {
                match h {
                    Some(z) => write!(out, ",{z}").unwrap(),
                    None => out.push_str(",*"),
                }
            }
            out.push('\n');
        }
        out
    }

    /// `{"l": [..], "n": .., "entries": [[..]]}` with `null` for the marker.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data")
    }

    /// Rows top to bottom, right-aligned columns.
    pub fn to_ascii(&self) -> String {
        let width = self.height_limit().to_string().len();
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|h| {
                    let s = h.map_or_else(|| "*".to_string(), |z| z.to_string());
                    format!("{s:>width$}")
                })
                .collect();
            out.push_str(cells.join(" ").trim_end());
            out.push('\n');
        }
        out
    }
}

/// The height matrix built block by block from the one for `n - 1` turns.
///
/// For `n >= 2` the top-left block is the previous matrix. The top-right
/// block has diagonal stripes of width `l_1 + l_2` with heights that are
/// multiples of `l_3`; the bottom-left block ramps from `(n-1) l_3` in its
/// last column up by one per column until `n l_3`, then turns unreachable;
/// the bottom-right block is constant `(n-1) l_3`.
pub fn diagram_matrix(l: [usize; 3], n: usize) -> Result<DiagramMatrix> {
    BinSpec::new(l.to_vec(), n)?;
    let [l1, l2, l3] = l;
    let mut entries: Vec<Vec<Height>> = vec![vec![Some(0); l2 + 1]; l1 + 1];
    for m in 2..=n {
        let old_rows = (m - 1) * l1 + 1;
        let old_cols = (m - 1) * l2 + 1;
        let period = l1 + l2;
        let mut next = vec![vec![None; m * l2 + 1]; m * l1 + 1];
        for (x, row) in entries.iter().enumerate() {
            next[x][..old_cols].clone_from_slice(row);
        }
        // top-right stripes: (m - s) = ceil(v / period) - 1
        for i in 1..=old_rows {
            for j in 1..=l2 {
                let v = i - 1 + j + (m - 1) * l2;
                next[i - 1][old_cols - 1 + j] = Some((v.div_ceil(period) - 1) * l3);
            }
        }
        let base = (m - 1) * l3;
        for row in next.iter_mut().skip(old_rows) {
            for (c, cell) in row.iter_mut().enumerate().take(old_cols) {
                let h = base + (old_cols - 1 - c);
                *cell = (h <= m * l3).then_some(h);
            }
            for cell in row.iter_mut().skip(old_cols) {
                *cell = Some(base);
            }
        }
        entries = next;
    }
    DiagramMatrix::from_entries(l, n, entries)
}

/// The block recursion with each `*` that sits just left of a finite entry
/// replaced by that entry plus one, repeatedly, while the value stays at
/// most `n l_3`.
///
/// Inside `A_n` the recursion keeps markers inherited from `M_{n-1}` whose
/// ramp was cut off at height `(n-1) l_3`; with the taller box of `n` turns
/// the ramp continues.
pub fn diagram_matrix_ramped(l: [usize; 3], n: usize) -> Result<DiagramMatrix> {
    let mut d = diagram_matrix(l, n)?;
    let cap = n * l[2];
    for row in d.entries.iter_mut() {
        for y in (0..row.len() - 1).rev() {
            if row[y].is_none() {
                row[y] = row[y + 1].map(|h| h + 1).filter(|&h| h <= cap);
            }
        }
    }
    Ok(d)
}

pub fn min_height(d: &DiagramMatrix, x: usize, y: usize) -> Result<Height> {
    d.check(x, y)?;
    Ok(d.entries[x][y])
}

pub fn contains_point(d: &DiagramMatrix, p: Point3) -> Result<bool> {
    let top = d.height_limit();
    if p.z > top {
        return Err(Error::OutOfRange {
            element: p.z,
            ground_size: top,
        });
    }
    Ok(min_height(d, p.x, p.y)?.is_some_and(|m| m <= p.z))
}

/// Turn-boundary point test: at step counts `tL`, at most `t l_1` steps of
/// type 1 and at most `t (l_1 + l_2)` of types 1 and 2.
fn point_allowed(l: [usize; 3], x: usize, y: usize, z: usize) -> bool {
    let per_turn = l[0] + l[1] + l[2];
    let s = x + y + z;
    if !s.is_multiple_of(per_turn) {
        return true;
    }
    let t = s / per_turn;
    x <= t * l[0] && x + y <= t * (l[0] + l[1])
}

/// Points lying on some configuration path, as a dense
/// `(nl_1+1) × (nl_2+1) × (nl_3+1)` boolean grid. Forward reachability from
/// the origin meets backward reachability from the far corner.
fn diagram_points(l: [usize; 3], n: usize) -> Vec<Vec<Vec<bool>>> {
    let (a, b, c) = (n * l[0], n * l[1], n * l[2]);
    let mut forward = vec![vec![vec![false; c + 1]; b + 1]; a + 1];
    for x in 0..=a {
        for y in 0..=b {
            for z in 0..=c {
                if !point_allowed(l, x, y, z) {
                    continue;
                }
                forward[x][y][z] = (x == 0 && y == 0 && z == 0)
                    || (x > 0 && forward[x - 1][y][z])
                    || (y > 0 && forward[x][y - 1][z])
                    || (z > 0 && forward[x][y][z - 1]);
            }
        }
    }
    let mut backward = vec![vec![vec![false; c + 1]; b + 1]; a + 1];
    for x in (0..=a).rev() {
        for y in (0..=b).rev() {
            for z in (0..=c).rev() {
                if !point_allowed(l, x, y, z) {
                    continue;
                }
                backward[x][y][z] = (x == a && y == b && z == c)
                    || (x < a && backward[x + 1][y][z])
                    || (y < b && backward[x][y + 1][z])
                    || (z < c && backward[x][y][z + 1]);
            }
        }
    }
    for x in 0..=a {
        for y in 0..=b {
            for z in 0..=c {
                forward[x][y][z] &= backward[x][y][z];
            }
        }
    }
    forward
}

/// Minimum heights computed from path feasibility rather than the block
/// recursion.
pub fn brute_force_matrix(spec: &BinSpec) -> Result<DiagramMatrix> {
    brute_force_matrix_with_limit(spec, limits::DIAGRAM_BALLS)
}

pub fn brute_force_matrix_with_limit(spec: &BinSpec, limit: usize) -> Result<DiagramMatrix> {
    let l = three(spec)?;
    limits::check(spec.balls(), limit)?;
    let points = diagram_points(l, spec.n());
    let entries = points
        .iter()
        .map(|plane| {
            plane
                .iter()
                .map(|column| column.iter().position(|&inside| inside))
                .collect()
        })
        .collect();
    DiagramMatrix::from_entries(l, spec.n(), entries)
}

fn three(spec: &BinSpec) -> Result<[usize; 3]> {
    <[usize; 3]>::try_from(spec.l()).map_err(|_| Error::DimensionMismatch {
        expected: 3,
        found: spec.k(),
    })
}

/// Whether every point of `path` lies in `d`.
pub fn path_in_diagram(d: &DiagramMatrix, path: &StepSequence) -> bool {
    path.points()
        .iter()
        .all(|p| contains_point(d, Point3::new(p[0], p[1], p[2])).unwrap_or(false))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagramPathVerdict {
    Ok,
    /// A path on which diagram containment and the configuration predicate
    /// disagree.
    Counterexample {
        path: StepSequence,
        in_diagram: bool,
        configuration: bool,
    },
}

impl DiagramPathVerdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, DiagramPathVerdict::Ok)
    }
}

/// Enumerates all monotone paths to `(nl_1, nl_2, nl_3)` and checks that the
/// ones inside `d` are exactly the configuration paths. Returns the first
/// disagreement in lexicographic order.
pub fn paths_in_diagram_are_configurations(
    d: &DiagramMatrix,
    spec: &BinSpec,
) -> Result<DiagramPathVerdict> {
    paths_in_diagram_with_limit(d, spec, limits::DIAGRAM_PATH_BALLS)
}

pub fn paths_in_diagram_with_limit(
    d: &DiagramMatrix,
    spec: &BinSpec,
    limit: usize,
) -> Result<DiagramPathVerdict> {
    let l = three(spec)?;
    if d.l != l || d.n != spec.n() {
        return Err(Error::InvalidSpec(format!(
            "diagram is for {:?} n={}, spec is {spec}",
            d.l, d.n
        )));
    }
    limits::check(spec.balls(), limit)?;
    let mut verdict = DiagramPathVerdict::Ok;
    for_each_word(&spec.totals(), &mut |word| {
        if !verdict.is_ok() {
            return;
        }
        let path = StepSequence::new(3, word.to_vec()).expect("axes in range");
        let in_diagram = path_in_diagram(d, &path);
        let configuration = is_configuration_path(&path, spec).expect("multiset fixed");
        if in_diagram != configuration {
            verdict = DiagramPathVerdict::Counterexample {
                path,
                in_diagram,
                configuration,
            };
        }
    });
    Ok(verdict)
}

/// Flag family read off the paths contained in `d`: ball `i` goes to block
/// `j` when step `i` has axis `j`.
pub fn diagram_family(d: &DiagramMatrix) -> Result<FlagBasisFamily> {
    let totals: Vec<usize> = d.l.iter().map(|&x| x * d.n).collect();
    let mut flags = Vec::new();
    for_each_word(&totals, &mut |word| {
        let path = StepSequence::new(3, word.to_vec()).expect("axes in range");
        if path_in_diagram(d, &path) {
            flags.push(OrderedPartition::from_labels(3, word.to_vec()).expect("non-empty blocks"));
        }
    });
    FlagBasisFamily::new(totals.iter().sum(), totals, flags)
}

/// A diagram whose path family is not a flag matroid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonFlagExhibit {
    pub diagram: DiagramMatrix,
    pub family: FlagBasisFamily,
    pub violation: FlagViolation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramSearch {
    /// Candidate diagrams with at least one path.
    pub examined: usize,
    /// Of those, how many fail the flag axioms.
    pub non_flag: usize,
    /// First failing diagram in search order.
    pub first: Option<NonFlagExhibit>,
    /// First failing diagram whose third blocks contain `{2,6}` and `{4,5}`
    /// but neither `{4,6}` nor `{5,6}`.
    pub exhibit: Option<NonFlagExhibit>,
}

/// Whether the third blocks of `family` contain `{2,6}` and `{4,5}` but
/// neither `{4,6}` nor `{5,6}`, so 2 cannot be exchanged out of `{2,6}`.
pub fn has_blocked_exchange(family: &FlagBasisFamily) -> bool {
    let k = family.k();
    let has = |s: &[usize]| family.flags().iter().any(|f| f.blocks()[k - 1] == s);
    has(&[2, 6]) && has(&[4, 5]) && !has(&[4, 6]) && !has(&[5, 6])
}

/// Non-decreasing sequences of `len` heights over `0 <= .. <= top`, then `*`.
fn monotone_columns(len: usize, top: usize) -> Vec<Vec<Height>> {
    let values: Vec<Height> = (0..=top).map(Some).chain([None]).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(len);
    fn go(
        start: usize,
        len: usize,
        values: &[Height],
        current: &mut Vec<Height>,
        out: &mut Vec<Vec<Height>>,
    ) {
        if current.len() == len {
            out.push(current.clone());
            return;
        }
        for i in start..values.len() {
            current.push(values[i]);
            go(i, len, values, current, out);
            current.pop();
        }
    }
    go(0, len, &values, &mut current, &mut out);
    out
}

/// Exhaustive search over height matrices on the box `[0,a] × [0,b] × [0,c]`
/// (ground set `[a+b+c]`, flag rank `(a,b,c)`) that are closed downward in
/// `x` and upward in `z`, i.e. heights non-decreasing down each column.
pub fn search_non_flag_diagrams(dims: [usize; 3]) -> Result<DiagramSearch> {
    let [a, b, c] = dims;
    limits::check(a + b + c, limits::BRUTE_FORCE_GROUND)?;
    let columns = monotone_columns(a + 1, c);
    let mut search = DiagramSearch {
        examined: 0,
        non_flag: 0,
        first: None,
        exhibit: None,
    };
    let mut choice = vec![0usize; b + 1];
    loop {
        let entries: Vec<Vec<Height>> = (0..=a)
            .map(|x| (0..=b).map(|y| columns[choice[y]][x]).collect())
            .collect();
        let d = DiagramMatrix::from_entries(dims, 1, entries)?;
        let family = diagram_family(&d)?;
        if !family.is_empty() {
            search.examined += 1;
            if let FlagVerdict::Violation(violation) = is_flag_matroid(&family)? {
                search.non_flag += 1;
                let found = NonFlagExhibit {
                    diagram: d,
                    family,
                    violation,
                };
                if search.exhibit.is_none() && has_blocked_exchange(&found.family) {
                    search.exhibit = Some(found.clone());
                }
                search.first.get_or_insert(found);
            }
        }
        // odometer over the columns
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return Ok(search);
            }
            choice[pos] += 1;
            if choice[pos] < columns.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}
