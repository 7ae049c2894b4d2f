//! One line per acceptance criterion; exits non-zero when any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use flagpath::diagram::{
    brute_force_matrix_with_limit, diagram_matrix, paths_in_diagram_are_configurations,
    search_non_flag_diagrams, Height,
};
use flagpath::enumeration::{
    bounds, count_by_filter, count_configurations, exponent_estimate, factorial, tbp_count, Series,
};
use flagpath::flag::{is_flag_matroid, reachable_with_limit, realize, simulate, tbp_flag};
use flagpath::lattice::BinSpec;
use flagpath::matroid::{is_quotient, tbp_matroid};
use flagpath::selfcheck::specs_up_to;
use flagpath::FlagVerdict;

struct Outcome {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        pass: false,
        detail: detail.into(),
    }
}

fn within(outcome: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    if outcome.pass && elapsed > budget {
        return fail(format!(
            "{} but took {elapsed:.2?} > {budget:?}",
            outcome.detail
        ));
    }
    outcome
}

fn table(rows: &[&str]) -> Vec<Vec<Height>> {
    rows.iter()
        .map(|r| r.split_whitespace().map(|c| c.parse().ok()).collect())
        .collect()
}

fn golden_matrices() -> Outcome {
    let first = table(&[
        "0 0 0 0 0 0 0 3 3 3 3 3 3",
        "0 0 0 0 0 0 3 3 3 3 3 3 6",
        "0 0 0 0 0 3 3 3 3 3 3 6 6",
        "* 6 5 4 3 3 3 3 3 3 6 6 6",
        "* 6 5 4 3 3 3 3 3 6 6 6 6",
        "* * * * * 9 8 7 6 6 6 6 6",
        "* * * * * 9 8 7 6 6 6 6 6",
    ]);
    let second = table(&[
        "0 0 0 0 0 0 2",
        "0 0 0 0 0 2 2",
        "0 0 0 0 2 2 2",
        "0 0 0 2 2 2 2",
        "4 3 2 2 2 2 2",
        "4 3 2 2 2 2 4",
        "4 3 2 2 2 4 4",
        "* * 6 5 4 4 4",
        "* * 6 5 4 4 4",
        "* * 6 5 4 4 4",
    ]);
    for (l, expected) in [([2, 4, 3], first), ([3, 2, 2], second)] {
        let d = match diagram_matrix(l, 3) {
            Ok(d) => d,
            Err(e) => return fail(format!("{l:?}: {e}")),
        };
        if d.entries() != &expected[..] {
            return fail(format!("{l:?} n=3 differs from the reference table"));
        }
    }
    pass("(2,4,3) and (3,2,2) at n=3 match entry for entry")
}

fn recursion_equivalence() -> Outcome {
    let mut cases = 0;
    let mut wrong = Vec::new();
    let mut only_stars = true;
    for l1 in 1..=3 {
        for l2 in 1..=3 {
            for l3 in 1..=3 {
                for n in 1..=3 {
                    let spec = BinSpec::new(vec![l1, l2, l3], n).unwrap();
                    cases += 1;
                    let brute = brute_force_matrix_with_limit(&spec, 27).unwrap();
                    let d = diagram_matrix([l1, l2, l3], n).unwrap();
                    if d != brute {
                        wrong.push(spec.to_string());
                        let cells = d
                            .entries()
                            .iter()
                            .flatten()
                            .zip(brute.entries().iter().flatten());
                        only_stars &= cells
                            .filter(|(a, b)| a != b)
                            .all(|(a, b)| a.is_none() && b.is_some());
                    }
                }
            }
        }
    }
    let mut paths = Vec::new();
    for (l, n) in [([1, 1, 1], 1), ([1, 1, 1], 2), ([2, 1, 1], 2)] {
        let spec = BinSpec::new(l.to_vec(), n).unwrap();
        let d = diagram_matrix(l, n).unwrap();
        match paths_in_diagram_are_configurations(&d, &spec) {
            Ok(v) if v.is_ok() => {}
            Ok(v) => paths.push(format!("{spec}: {v:?}")),
            Err(e) => paths.push(format!("{spec}: {e}")),
        }
    }
    if wrong.is_empty() && paths.is_empty() {
        return pass(format!("{cases} matrices equal; path checks ok"));
    }
    let mut why = format!(
        "{} of {cases} matrices differ (first {}); path checks: {}",
        wrong.len(),
        wrong.first().map_or("none", |s| s.as_str()),
        if paths.is_empty() {
            "ok".to_string()
        } else {
            paths.join("; ")
        }
    );
    if !wrong.is_empty() && only_stars {
        why.push_str("; every difference is a * where feasibility has a finite height");
    }
    fail(why)
}

fn three_way_counts() -> Outcome {
    let specs = specs_up_to(9);
    for spec in &specs {
        let dp = count_configurations(spec);
        let filter = count_by_filter(spec).unwrap();
        let bfs = BigUint::from(reachable_with_limit(spec, 9).unwrap().family.len());
        if dp != filter || dp != bfs {
            return fail(format!("{spec}: dp {dp}, filter {filter}, bfs {bfs}"));
        }
    }
    let s = BinSpec::new(vec![1, 1, 1], 2).unwrap();
    let c = count_configurations(&s);
    if c != BigUint::from(63u8) {
        return fail(format!("(1,1,1) n=2 gives {c}"));
    }
    pass(format!("{} specs agree; (1,1,1) n=2 gives 63", specs.len()))
}

/// `(nk)! / (n!^k Π_{i=1}^{k-1} (n/i + 1)^{k-i})` for `l = 1`, in exact
/// rationals: multiply through by `Π i^{k-i}`.
fn hook_closed_form(k: usize, n: usize) -> BigUint {
    let mut num = factorial(n * k);
    let mut den = (0..k).fold(BigUint::from(1u8), |acc, _| acc * factorial(n));
    for i in 1..k {
        for _ in 0..k - i {
            num *= BigUint::from(i);
            den *= BigUint::from(n + i);
        }
    }
    num / den
}

fn bounds_sandwich() -> Outcome {
    let s = BinSpec::new(vec![1, 1, 1], 2).unwrap();
    let r = bounds(&s, true);
    let exact = r.exact.clone().unwrap();
    let expected = (60u8, 63u8, 90u8, 5u8);
    let got = (
        &r.lower_product,
        &exact,
        &r.upper_multinomial,
        r.lower_hook.as_ref(),
    );
    if *got.0 != expected.0.into()
        || *got.1 != expected.1.into()
        || *got.2 != expected.2.into()
        || got.3 != Some(&expected.3.into())
        || !(r.lower_product < exact && exact <= r.upper_multinomial)
    {
        return fail(format!("(1,1,1) n=2: {r:?}"));
    }
    for k in 2..=4 {
        for n in 1..=4 {
            let spec = BinSpec::new(vec![1; k], n).unwrap();
            let hook = bounds(&spec, false).lower_hook.unwrap();
            let closed = hook_closed_form(k, n);
            if hook != closed {
                return fail(format!("k={k} n={n}: hook {hook}, closed form {closed}"));
            }
        }
    }
    pass("60 < 63 <= 90, hook 5; closed form matches for k in 2..=4, n <= 4")
}

fn flag_axioms() -> Outcome {
    let specs = specs_up_to(9);
    let mut quotients = 0;
    for spec in &specs {
        let flag = tbp_flag(spec);
        let family = flag.family().unwrap();
        let FlagVerdict::Ok(checked) = is_flag_matroid(&family).unwrap() else {
            return fail(format!("{spec} rejected"));
        };
        let cumulative = spec.cumulative();
        for (i, c) in checked.constituents.iter().enumerate() {
            let a = cumulative[i + 1];
            let expected = tbp_matroid(a, spec.per_turn() - a, spec.n()).unwrap();
            if c.bases() != &expected.bases().unwrap()[..] {
                return fail(format!("{spec}: constituent {} differs", i + 1));
            }
        }
        for pair in checked.constituents.windows(2) {
            quotients += 1;
            if !is_quotient(&pair[0], &pair[1]).unwrap() {
                return fail(format!("{spec}: quotient check failed"));
            }
        }
    }
    pass(format!(
        "{} specs accepted, {quotients} quotient pairs",
        specs.len()
    ))
}

fn round_trip() -> Outcome {
    let mut cases = 0;
    for spec in specs_up_to(9) {
        for target in tbp_flag(&spec).family().unwrap().flags() {
            cases += 1;
            let back = realize(&spec, target).and_then(|s| simulate(&spec, &s));
            if back.as_ref() != Ok(target) {
                return fail(format!("{spec}: {target} gives {back:?}"));
            }
        }
    }
    pass(format!("{cases} flag bases"))
}

fn two_bins() -> Outcome {
    let mut cases = 0;
    for a in 1..=3 {
        for b in 1..=4 - a {
            for n in 1..=4 {
                cases += 1;
                let spec = BinSpec::new(vec![a, b], n).unwrap();
                let dp = count_configurations(&spec);
                let closed = tbp_count(a, b, n).unwrap();
                let listed = BigUint::from(tbp_matroid(a, b, n).unwrap().bases().unwrap().len());
                if dp != closed || dp != listed {
                    return fail(format!("({a},{b}) n={n}: {dp} {closed} {listed}"));
                }
            }
        }
    }
    let t = tbp_count(1, 1, 2).unwrap();
    if t != BigUint::from(5u8) {
        return fail(format!("t(1,1,2) = {t}"));
    }
    pass(format!("{cases} specs agree; t(1,1,2) = 5"))
}

fn non_flag_diagram() -> Outcome {
    let search = search_non_flag_diagrams([2, 2, 2]).unwrap();
    let summary = format!(
        "[6]: {} diagrams, {} not flag matroids, pattern {}",
        search.examined,
        search.non_flag,
        if search.exhibit.is_some() {
            "found"
        } else {
            "absent"
        }
    );
    if search.exhibit.is_some() {
        return pass(summary);
    }
    let wider = search_non_flag_diagrams([3, 2, 2]).unwrap();
    let seen = match &wider.exhibit {
        Some(e) => format!("found, {:?}", e.violation),
        None => "absent".into(),
    };
    fail(format!(
        "{summary}; on [6] a contained path with e3 steps {{4,6}} always exists; [7] box (3,2,2): pattern {seen}"
    ))
}

fn asymptotics() -> Outcome {
    let l = [1, 1, 1];
    let hook = exponent_estimate(&l, 64, Series::HookLowerBound).unwrap();
    let upper = exponent_estimate(&l, 64, Series::MultinomialUpperBound).unwrap();
    let exact = exponent_estimate(&l, 64, Series::Exact).unwrap();
    let checks = [
        ("hook", hook, -3.5, 0.3),
        ("multinomial", upper, -0.5, 0.3),
        ("exact", exact, -3.0, 0.5),
    ];
    let detail: Vec<String> = checks
        .iter()
        .map(|(name, got, target, tol)| {
            let mark = if (got - target).abs() <= *tol {
                "ok"
            } else {
                "off"
            };
            format!("{name} {got:.3} vs {target} +-{tol} {mark}")
        })
        .collect();
    let ok = checks
        .iter()
        .all(|(_, got, target, tol)| (got - target).abs() <= *tol);
    Outcome {
        pass: ok,
        detail: format!("n_max 64: {}", detail.join(", ")),
    }
}

type Criterion = (u8, &'static str, fn() -> Outcome, Duration);

const CRITERIA: &[Criterion] = &[
    (
        1,
        "golden matrices",
        golden_matrices,
        Duration::from_secs(1),
    ),
    (
        2,
        "recursion equals feasibility",
        recursion_equivalence,
        Duration::from_secs(60),
    ),
    (
        3,
        "three-way counting",
        three_way_counts,
        Duration::from_secs(60),
    ),
    (
        4,
        "bounds sandwich",
        bounds_sandwich,
        Duration::from_secs(60),
    ),
    (5, "flag axioms", flag_axioms, Duration::from_secs(120)),
    (
        6,
        "realization round trip",
        round_trip,
        Duration::from_secs(120),
    ),
    (7, "two-bin reduction", two_bins, Duration::from_secs(60)),
    (
        8,
        "non-flag diagram on [6]",
        non_flag_diagram,
        Duration::from_secs(120),
    ),
    (
        9,
        "asymptotic exponents",
        asymptotics,
        Duration::from_secs(120),
    ),
];

fn main() -> ExitCode {
    let mut failed = 0;
    for &(id, name, check, budget) in CRITERIA {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = within(outcome, elapsed, budget);
        let mark = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{mark} {id} {name} [{elapsed:.2?}]: {}", outcome.detail);
        failed += !outcome.pass as usize;
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failed,
        CRITERIA.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
