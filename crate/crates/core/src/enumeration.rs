//! Exact counting of configurations and the classical bounds around it.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{is_configuration_path, BinSpec, StepSequence};
use crate::limits;
use crate::matroid::tbp_matroid;

/// Counts for `n = 1..=n_max` turns of the `l` ball process.
///
/// One pass of a DP over step tallies `(c_1, .., c_{k-1})` (`c_k` is
/// implied by the step index). The prefix inequalities are imposed only at
/// step indices that are multiples of `L`; they do not depend on `n`, so
/// the count for `n` turns is the weight at tally `(n l_1, .., n l_k)` after
/// `nL` steps.
pub fn count_series(l: &[usize], n_max: usize) -> Result<Vec<BigUint>> {
    let spec = BinSpec::new(l.to_vec(), n_max)?;
    let k = spec.k();
    let per_turn = spec.per_turn();
    let cumulative = spec.cumulative();
    let caps = spec.totals();
    if k == 1 {
        return Ok(vec![BigUint::one(); n_max]);
    }

    // mixed radix over the first k - 1 tallies
    let radix: Vec<usize> = caps[..k - 1].iter().map(|c| c + 1).collect();
    let mut stride = vec![1usize; k - 1];
    for j in 1..k - 1 {
        stride[j] = stride[j - 1] * radix[j - 1];
    }
    let size = stride[k - 2] * radix[k - 2];
    let decode = |mut idx: usize| {
        let mut tallies = vec![0usize; k - 1];
        for j in 0..k - 1 {
            tallies[j] = idx % radix[j];
            idx /= radix[j];
        }
        tallies
    };

    let mut weights = vec![BigUint::zero(); size];
    weights[0] = BigUint::one();
    let mut live = vec![0usize];
    let mut series = Vec::with_capacity(n_max);
    for step in 1..=spec.balls() {
        let mut next = vec![BigUint::zero(); size];
        let mut next_live = Vec::new();
        for &idx in &live {
            let tallies = decode(idx);
            let placed: usize = tallies.iter().sum();
            let last = step - 1 - placed;
            for axis in 0..k {
                let target = if axis + 1 == k {
                    if last + 1 > caps[k - 1] {
                        continue;
                    }
                    idx
                } else {
                    if tallies[axis] + 1 > caps[axis] {
                        continue;
                    }
                    idx + stride[axis]
                };
                if step % per_turn == 0 {
                    let t = step / per_turn;
                    let mut lower = 0;
                    let ok = (0..k - 1).all(|i| {
                        lower += tallies[i] + usize::from(i == axis);
                        lower <= t * cumulative[i + 1]
                    });
                    if !ok {
                        continue;
                    }
                }
                if next[target].is_zero() {
                    next_live.push(target);
                }
                let w = weights[idx].clone();
                next[target] += w;
            }
        }
        weights = next;
        live = next_live;
        if step % per_turn == 0 {
            let t = step / per_turn;
            let idx: usize = (0..k - 1).map(|j| t * l[j] * stride[j]).sum();
            series.push(weights[idx].clone());
        }
    }
    Ok(series)
}

/// Number of `n`-configurations of the `spec` ball process.
pub fn count_configurations(spec: &BinSpec) -> BigUint {
    count_series(spec.l(), spec.n())
        .expect("spec already validated")
        .pop()
        .expect("n >= 1")
}

/// Every configuration path of `spec`, in lexicographic order of the step
/// word. Refused above [`limits::EXPLICIT_BALLS`] balls.
pub fn configuration_paths(spec: &BinSpec) -> Result<Vec<StepSequence>> {
    configuration_paths_with_limit(spec, limits::EXPLICIT_BALLS)
}

pub fn configuration_paths_with_limit(spec: &BinSpec, limit: usize) -> Result<Vec<StepSequence>> {
    limits::check(spec.balls(), limit)?;
    let k = spec.k();
    let per_turn = spec.per_turn();
    let cumulative = spec.cumulative();
    let caps = spec.totals();
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(spec.balls());
    let mut tallies = vec![0usize; k];

    struct Ctx<'a> {
        k: usize,
        per_turn: usize,
        cumulative: &'a [usize],
        caps: &'a [usize],
        total: usize,
    }

    fn go(ctx: &Ctx, word: &mut Vec<u8>, tallies: &mut [usize], out: &mut Vec<StepSequence>) {
        let step = word.len();
        if step > 0 && step.is_multiple_of(ctx.per_turn) {
            let t = step / ctx.per_turn;
            let mut lower = 0;
            for (i, &tally) in tallies[..ctx.k - 1].iter().enumerate() {
                lower += tally;
                if lower > t * ctx.cumulative[i + 1] {
                    return;
                }
            }
        }
        if step == ctx.total {
            out.push(StepSequence::new(ctx.k, word.clone()).expect("axes in range"));
            return;
        }
        for axis in 0..ctx.k {
            if tallies[axis] < ctx.caps[axis] {
                tallies[axis] += 1;
                word.push((axis + 1) as u8);
                go(ctx, word, tallies, out);
                word.pop();
                tallies[axis] -= 1;
            }
        }
    }

    let ctx = Ctx {
        k,
        per_turn,
        cumulative: &cumulative,
        caps: &caps,
        total: spec.balls(),
    };
    go(&ctx, &mut word, &mut tallies, &mut out);
    Ok(out)
}

/// Brute-force count: every word with the right step multiset, filtered by
/// the configuration-path predicate.
pub fn count_by_filter(spec: &BinSpec) -> Result<BigUint> {
    count_by_filter_with_limit(spec, limits::EXPLICIT_BALLS)
}

pub fn count_by_filter_with_limit(spec: &BinSpec, limit: usize) -> Result<BigUint> {
    limits::check(spec.balls(), limit)?;
    let mut count = 0u64;
    for_each_word(&spec.totals(), &mut |word| {
        let path = StepSequence::new(spec.k(), word.to_vec()).expect("axes in range");
        if is_configuration_path(&path, spec).expect("multiset fixed") {
            count += 1;
        }
    });
    Ok(BigUint::from(count))
}

/// Calls `f` on every word with `totals[j]` copies of axis `j + 1`, in
/// lexicographic order.
pub fn for_each_word(totals: &[usize], f: &mut dyn FnMut(&[u8])) {
    fn go(remaining: &mut [usize], word: &mut Vec<u8>, len: usize, f: &mut dyn FnMut(&[u8])) {
        if word.len() == len {
            f(word);
            return;
        }
        for j in 0..remaining.len() {
            if remaining[j] > 0 {
                remaining[j] -= 1;
                word.push((j + 1) as u8);
                go(remaining, word, len, f);
                word.pop();
                remaining[j] += 1;
            }
        }
    }
    let len = totals.iter().sum();
    let mut remaining = totals.to_vec();
    go(&mut remaining, &mut Vec::with_capacity(len), len, f);
}

/// `t(a, b, n)`: bases of the nested matroid `M[(N^a E^b)^n]`, which count
/// the configurations of the two-bin `(a, b)` process.
pub fn tbp_count(a: usize, b: usize, n: usize) -> Result<BigUint> {
    Ok(tbp_matroid(a, b, n)?.basis_count())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// `(Σ parts)! / Π parts!`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let total: usize = parts.iter().sum();
    parts
        .iter()
        .fold(factorial(total), |acc, &p| acc / factorial(p))
}

/// Standard Young tableaux of the given shape, by the hook-length formula.
/// Zero rows are ignored; rows must be non-increasing.
pub fn hook_length_count(shape: &[usize]) -> Result<BigUint> {
    let rows: Vec<usize> = shape.iter().copied().filter(|&r| r > 0).collect();
    if rows.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidSpec(format!(
            "shape {shape:?} is not a partition"
        )));
    }
    let cells: usize = rows.iter().sum();
    let mut hooks = BigUint::one();
    for (i, &len) in rows.iter().enumerate() {
        for j in 0..len {
            let arm = len - j - 1;
            let leg = rows[i + 1..].iter().take_while(|&&r| r > j).count();
            hooks *= BigUint::from(arm + leg + 1);
        }
    }
    Ok(factorial(cells) / hooks)
}

pub(crate) fn serialize_big<S: Serializer>(
    v: &BigUint,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let number: serde_json::Number = v.to_string().parse().map_err(serde::ser::Error::custom)?;
    number.serialize(s)
}

pub(crate) fn serialize_big_opt<S: Serializer>(
    v: &Option<BigUint>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize_big(v, s),
        None => s.serialize_none(),
    }
}

/// Upper and lower bounds on the number of configurations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    /// Multinomial `(nL)! / Π (n l_j)!`: all partitions with the right sizes.
    #[serde(serialize_with = "serialize_big")]
    pub upper_multinomial: BigUint,
    /// Tableaux of shape `(n l_k, .., n l_1)`; only when `l` is non-decreasing.
    #[serde(serialize_with = "serialize_big_opt")]
    pub lower_hook: Option<BigUint>,
    /// Whether `lower_hook` really bounds the count: ballot words satisfy
    /// the turn-boundary inequalities only when all `l_i` are equal. For
    /// `(1,2)`, `n = 4` the tableaux number 275 against 273 configurations.
    #[serde(skip)]
    pub hook_is_lower_bound: bool,
    /// `Π_i t(l_i, l_{i+1} + .. + l_k, n)`.
    #[serde(serialize_with = "serialize_big")]
    pub lower_product: BigUint,
    #[serde(serialize_with = "serialize_big_opt")]
    pub exact: Option<BigUint>,
}

impl BoundsReport {
    /// `lower_product <= exact <= upper_multinomial`, and the hook bound
    /// below `exact` when `hook_is_lower_bound`. Vacuous without an exact
    /// count.
    pub fn is_consistent(&self) -> bool {
        let Some(exact) = &self.exact else {
            return true;
        };
        let hook_ok =
            !self.hook_is_lower_bound || self.lower_hook.as_ref().is_none_or(|h| h <= exact);
        self.lower_product <= *exact && *exact <= self.upper_multinomial && hook_ok
    }
}

pub fn bounds(spec: &BinSpec, with_exact: bool) -> BoundsReport {
    let l = spec.l();
    let n = spec.n();
    let upper_multinomial = multinomial(&spec.totals());
    let lower_hook = if l.windows(2).all(|w| w[0] <= w[1]) {
        let shape: Vec<usize> = spec.totals().into_iter().rev().collect();
        Some(hook_length_count(&shape).expect("non-increasing shape"))
    } else {
        None
    };
    let lower_product = (0..l.len().saturating_sub(1))
        .map(|i| {
            let rest: usize = l[i + 1..].iter().sum();
            tbp_count(l[i], rest, n).expect("l_i >= 1")
        })
        .fold(BigUint::one(), |acc, t| acc * t);
    let exact = with_exact.then(|| count_configurations(spec));
    BoundsReport {
        upper_multinomial,
        hook_is_lower_bound: lower_hook.is_some() && l.windows(2).all(|w| w[0] == w[1]),
        lower_hook,
        lower_product,
        exact,
    }
}

/// Natural logarithm of a positive big integer.
pub fn ln_big(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 1000 {
        return v.to_f64().expect("finite below 2^1000").ln();
    }
    let shift = bits - 64;
    let top = (v >> shift).to_f64().expect("64-bit head");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Which sequence to fit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Series {
    Exact,
    HookLowerBound,
    MultinomialUpperBound,
}

/// Least-squares slope of `ln(count(n) / g^n)` against `ln n` over
/// `n in [n_max / 2, n_max]`, where `g = L^L / Π l_j^{l_j}` is the growth
/// rate of the multinomial (27 for `(1,1,1)`). Floating point is confined
/// to this function.
pub fn exponent_estimate(l: &[usize], n_max: usize, series: Series) -> Result<f64> {
    if n_max < 8 {
        return Err(Error::InvalidSpec(format!("n_max = {n_max} < 8")));
    }
    let spec = BinSpec::new(l.to_vec(), n_max)?;
    let values: Vec<BigUint> = match series {
        Series::Exact => count_series(l, n_max)?,
        Series::HookLowerBound | Series::MultinomialUpperBound => (1..=n_max)
            .map(|n| {
                let b = bounds(&spec.with_turns(n).expect("n >= 1"), false);
                match series {
                    Series::HookLowerBound => b.lower_hook.ok_or_else(|| {
                        Error::InvalidSpec("hook bound needs non-decreasing l".into())
                    }),
                    _ => Ok(b.upper_multinomial),
                }
            })
            .collect::<Result<_>>()?,
    };
    let total = spec.per_turn() as f64;
    let ln_growth = total * total.ln() - l.iter().map(|&x| x as f64 * (x as f64).ln()).sum::<f64>();
    let points: Vec<(f64, f64)> = (n_max / 2..=n_max)
        .map(|n| {
            let y = ln_big(&values[n - 1]) - n as f64 * ln_growth;
            ((n as f64).ln(), y)
        })
        .collect();
    let count = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / count;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / count;
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    Ok(sxy / sxx)
}
