use pyo3::prelude::*;
use pyo3::types::PyDict;

fn with_module<F: FnOnce(Python<'_>, &Bound<'_, PyModule>)>(f: F) {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(pyvii::pyvii)(py).into_bound(py);
        f(py, m.cast::<PyModule>().unwrap());
    });
}

fn run(py: Python<'_>, m: &Bound<'_, PyModule>, code: &str) {
    let globals = PyDict::new(py);
    globals.set_item("pyvii", m).unwrap();
    let code = std::ffi::CString::new(code).unwrap();
    if let Err(e) = py.run(&code, Some(&globals), None) {
        e.print(py);
        panic!("python assertion failed");
    }
}

#[test]
fn classify_and_enumerate_through_python() {
    with_module(|py, m| {
        run(
            py,
            m,
            r#"
c = pyvii.singrat(3, 2)
r = c.classify()
assert r["nac"]["coeffs"] == ["3/2", "1", "1/2"], r["nac"]
assert c.index() == 2
assert c.determinant() == "-4"
assert c.definiteness() == "definite"
e = c.enumerate()
assert e["count"] == 1
assert pyvii.CurveConfig.from_json(c.to_json()) == c
"#,
        );
    });
}

#[test]
fn errors_map_to_exceptions() {
    with_module(|py, m| {
        run(
            py,
            m,
            r#"
try:
    pyvii.CurveConfig(20, [(i, "smooth_rational", -2) for i in range(20)]).enumerate()
    raise AssertionError("expected cap refusal")
except pyvii.CapExceededError:
    pass
try:
    pyvii.CurveConfig(1, [(0, "smooth_rational", 0)]).classify()
    raise AssertionError("expected invalid input")
except ValueError:
    pass
try:
    pyvii.CurveConfig(1, [(0, "cuspidal", -1)])
    raise AssertionError("expected unknown kind")
except ValueError:
    pass
"#,
        );
    });
}

#[test]
fn germs_accept_numbers_and_lists() {
    with_module(|py, m| {
        run(
            py,
            m,
            r#"
g = pyvii.germ("hopf-primary", alpha1="1/4", alpha2="1/2", s=1, m=2)
assert g["verdict"]["trace"] == "3/4", g
e = pyvii.germ("enoki", t="2/5", n=3, a=[0, "1/2", 0])
assert e["flags"]["has_nac"] is False
assert pyvii.intersect([1, 0], [1, 0]) == -1
"#,
        );
    });
}
