//! Python bindings for the `flagpath` crate.
//!
//! Specs are passed as `(l, n)` with `l` a list of positive ints. Sets and
//! blocks use 1-based elements. Errors raise `FlagpathError` whose message
//! starts with the error variant name.

use num_bigint::BigUint;
use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use flagpath::diagram::{self, DiagramMatrix};
use flagpath::enumeration::{self, Series};
use flagpath::flag::{self, FlagBasisFamily, FlagVerdict, MoveSchedule, Turn};
use flagpath::lattice::{self, BinSpec, StepSequence};
use flagpath::matroid::{self, Matroid as _};
use flagpath::OrderedPartition;

create_exception!(flagpath_py, FlagpathError, PyException);

fn wrap(e: flagpath::Error) -> PyErr {
    FlagpathError::new_err(format!("{}: {e}", e.name()))
}

trait OrRaise<T> {
    fn or_raise(self) -> PyResult<T>;
}

impl<T> OrRaise<T> for flagpath::Result<T> {
    fn or_raise(self) -> PyResult<T> {
        self.map_err(wrap)
    }
}

fn spec(l: Vec<usize>, n: usize) -> PyResult<BinSpec> {
    BinSpec::new(l, n).or_raise()
}

fn three(l: &[usize]) -> PyResult<[usize; 3]> {
    l.try_into().map_err(|_| {
        wrap(flagpath::Error::DimensionMismatch {
            expected: 3,
            found: l.len(),
        })
    })
}

fn partition(blocks: Vec<Vec<usize>>) -> PyResult<OrderedPartition> {
    OrderedPartition::from_blocks(blocks).or_raise()
}

/// Configurations of the `l` ball process after `n` turns.
#[pyfunction]
fn count_configurations(l: Vec<usize>, n: usize) -> PyResult<BigUint> {
    Ok(enumeration::count_configurations(&spec(l, n)?))
}

/// Same count by filtering every word; refuses more than `limit` balls.
#[pyfunction]
#[pyo3(signature = (l, n, limit = None))]
fn count_by_filter(l: Vec<usize>, n: usize, limit: Option<usize>) -> PyResult<BigUint> {
    let s = spec(l, n)?;
    match limit {
        Some(limit) => enumeration::count_by_filter_with_limit(&s, limit),
        None => enumeration::count_by_filter(&s),
    }
    .or_raise()
}

/// Counts for `n = 1..=n_max`.
#[pyfunction]
fn count_series(l: Vec<usize>, n_max: usize) -> PyResult<Vec<BigUint>> {
    enumeration::count_series(&l, n_max).or_raise()
}

#[pyfunction]
fn tbp_count(a: usize, b: usize, n: usize) -> PyResult<BigUint> {
    enumeration::tbp_count(a, b, n).or_raise()
}

/// Dict with `upper_multinomial`, `lower_hook` (None unless `l` is
/// non-decreasing), `lower_product` and `exact`.
#[pyfunction]
#[pyo3(signature = (l, n, exact = true))]
fn bounds<'py>(
    py: Python<'py>,
    l: Vec<usize>,
    n: usize,
    exact: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let report = enumeration::bounds(&spec(l, n)?, exact);
    let out = PyDict::new(py);
    out.set_item("upper_multinomial", report.upper_multinomial)?;
    out.set_item("lower_hook", report.lower_hook)?;
    out.set_item("hook_is_lower_bound", report.hook_is_lower_bound)?;
    out.set_item("lower_product", report.lower_product)?;
    out.set_item("exact", report.exact)?;
    Ok(out)
}

/// Least-squares exponent of `n` in a count series: `exact`, `hook` or
/// `multinomial`.
#[pyfunction]
#[pyo3(signature = (l, n_max, series = "exact"))]
fn exponent_estimate(l: Vec<usize>, n_max: usize, series: &str) -> PyResult<f64> {
    let series = match series {
        "exact" => Series::Exact,
        "hook" => Series::HookLowerBound,
        "multinomial" => Series::MultinomialUpperBound,
        other => {
            return Err(FlagpathError::new_err(format!(
                "InvalidSpec: unknown series {other:?}"
            )))
        }
    };
    enumeration::exponent_estimate(&l, n_max, series).or_raise()
}

/// Whether a step word (digits `1..k`, or `N`/`E` when `k = 2`) is an
/// `n`-configuration path.
#[pyfunction]
fn is_configuration_path(path: &str, l: Vec<usize>, n: usize) -> PyResult<bool> {
    let s = spec(l, n)?;
    let p = StepSequence::parse(path, Some(s.k())).or_raise()?;
    lattice::is_configuration_path(&p, &s).or_raise()
}

/// All configurations as lists of blocks.
#[pyfunction]
fn configurations(l: Vec<usize>, n: usize) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let family = flag::tbp_flag(&spec(l, n)?).family().or_raise()?;
    Ok(family.flags().iter().map(|f| f.blocks()).collect())
}

/// Checks the flag-matroid axioms. Returns `(True, None)` or
/// `(False, message)` naming the failing axiom.
#[pyfunction]
fn is_flag_matroid(
    ground_size: usize,
    flag_rank: Vec<usize>,
    flags: Vec<Vec<Vec<usize>>>,
) -> PyResult<(bool, Option<String>)> {
    let flags = flags
        .into_iter()
        .map(partition)
        .collect::<PyResult<Vec<_>>>()?;
    let family = FlagBasisFamily::new(ground_size, flag_rank, flags).or_raise()?;
    Ok(match flag::is_flag_matroid(&family).or_raise()? {
        FlagVerdict::Ok(_) => (true, None),
        FlagVerdict::Violation(v) => (false, Some(v.to_string())),
    })
}

/// Greedy schedule producing `target`: per turn, the balls moved out of
/// bins `1..k-1`.
#[pyfunction]
fn realize(l: Vec<usize>, n: usize, target: Vec<Vec<usize>>) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let schedule = flag::realize(&spec(l, n)?, &partition(target)?).or_raise()?;
    Ok(schedule.turns.into_iter().map(|t| t.moves).collect())
}

/// Replays a schedule and returns the final bins.
#[pyfunction]
fn simulate(l: Vec<usize>, n: usize, schedule: Vec<Vec<Vec<usize>>>) -> PyResult<Vec<Vec<usize>>> {
    let schedule = MoveSchedule {
        turns: schedule.into_iter().map(|moves| Turn { moves }).collect(),
    };
    Ok(flag::simulate(&spec(l, n)?, &schedule).or_raise()?.blocks())
}

/// Minimum-height matrix for three bins; `None` marks `*`. The
/// construction is `recursion`, `ramped` or `feasibility`.
#[pyfunction]
#[pyo3(signature = (l, n, construction = "recursion"))]
fn diagram_matrix(
    l: Vec<usize>,
    n: usize,
    construction: &str,
) -> PyResult<Vec<Vec<Option<usize>>>> {
    let arr = three(&l)?;
    let d: DiagramMatrix = match construction {
        "recursion" => diagram::diagram_matrix(arr, n),
        "ramped" => diagram::diagram_matrix_ramped(arr, n),
        "feasibility" => diagram::brute_force_matrix(&spec(l, n)?),
        other => {
            return Err(FlagpathError::new_err(format!(
                "InvalidSpec: unknown construction {other:?}"
            )))
        }
    }
    .or_raise()?;
    Ok(d.entries().to_vec())
}

/// Nested matroid of a bounding path of `N` and `E` steps.
#[pyclass(module = "flagpath_py", frozen)]
struct NestedMatroid {
    inner: matroid::NestedMatroid,
}

#[pymethods]
impl NestedMatroid {
    #[new]
    fn new(path: &str) -> PyResult<Self> {
        let p = StepSequence::parse(path, Some(2)).or_raise()?;
        Ok(Self {
            inner: matroid::NestedMatroid::from_path(&p).or_raise()?,
        })
    }

    /// `M[(N^a E^b)^n]`.
    #[staticmethod]
    fn tbp(a: usize, b: usize, n: usize) -> PyResult<Self> {
        Ok(Self {
            inner: matroid::tbp_matroid(a, b, n).or_raise()?,
        })
    }

    #[getter]
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    #[getter]
    fn full_rank(&self) -> usize {
        self.inner.full_rank()
    }

    fn rank(&self, set: Vec<usize>) -> PyResult<usize> {
        self.inner.rank_of(&set).or_raise()
    }

    fn is_independent(&self, set: Vec<usize>) -> PyResult<bool> {
        self.inner.is_independent_set(&set).or_raise()
    }

    fn is_basis(&self, set: Vec<usize>) -> PyResult<bool> {
        self.inner.is_basis_set(&set).or_raise()
    }

    fn basis_count(&self) -> BigUint {
        self.inner.basis_count()
    }

    fn bases(&self) -> PyResult<Vec<Vec<usize>>> {
        Ok(self
            .inner
            .bases()
            .or_raise()?
            .into_iter()
            .map(matroid::elements)
            .collect())
    }

    fn cyclic_flats(&self) -> Vec<Vec<usize>> {
        matroid::cyclic_flats(&self.inner)
    }

    fn is_quotient_of(&self, other: &NestedMatroid) -> PyResult<bool> {
        self.inner.is_quotient_of(&other.inner).or_raise()
    }

    fn __repr__(&self) -> String {
        format!("NestedMatroid('{}')", self.inner.bounding_path())
    }
}

#[pymodule]
pub fn flagpath_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("FlagpathError", m.py().get_type::<FlagpathError>())?;
    m.add_class::<NestedMatroid>()?;
    m.add_function(wrap_pyfunction!(count_configurations, m)?)?;
    m.add_function(wrap_pyfunction!(count_by_filter, m)?)?;
    m.add_function(wrap_pyfunction!(count_series, m)?)?;
    m.add_function(wrap_pyfunction!(tbp_count, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(exponent_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(is_configuration_path, m)?)?;
    m.add_function(wrap_pyfunction!(configurations, m)?)?;
    m.add_function(wrap_pyfunction!(is_flag_matroid, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    m.add_function(wrap_pyfunction!(diagram_matrix, m)?)?;
    Ok(())
}
