use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module(code: &str) {
    Python::attach(|py| {
        let m = PyModule::new(py, "flagpath_py").unwrap();
        flagpath_py::flagpath_py(&m).unwrap();
        let globals = pyo3::types::PyDict::new(py);
        globals.set_item("fp", m).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None).unwrap();
    });
}

#[test]
fn counts_and_bounds() {
    with_module(
        r#"
assert fp.count_configurations([1, 1, 1], 2) == 63
assert fp.count_configurations([1, 1, 1], 30) > 2**64
b = fp.bounds([1, 1, 1], 2)
assert (b["lower_product"], b["exact"], b["upper_multinomial"], b["lower_hook"]) == (60, 63, 90, 5)
assert fp.tbp_count(1, 1, 2) == 5
"#,
    );
}

#[test]
fn flags_and_schedules() {
    with_module(
        r#"
flags = fp.configurations([1, 1, 1], 2)
assert len(flags) == 63
assert fp.is_flag_matroid(6, [2, 2, 2], flags) == (True, None)
target = [[5, 6], [3, 4], [1, 2]]
assert fp.simulate([1, 1, 1], 2, fp.realize([1, 1, 1], 2, target)) == target
"#,
    );
}

#[test]
fn errors_carry_the_variant() {
    with_module(
        r#"
try:
    fp.diagram_matrix([1, 1], 2)
except fp.FlagpathError as e:
    assert str(e).startswith("DimensionMismatch"), str(e)
else:
    raise AssertionError
m = fp.NestedMatroid("NENE")
try:
    m.rank([9])
except fp.FlagpathError as e:
    assert str(e).startswith("OutOfRange"), str(e)
else:
    raise AssertionError
"#,
    );
}
