use pyo3::prelude::*;
use pyo3::types::{PyDict, PyModule};

fn with_module<R>(f: impl FnOnce(Python<'_>, &Bound<'_, PyModule>) -> PyResult<R>) -> R {
    pyo3::prepare_freethreaded_python();
    Python::with_gil(|py| {
        let m = PyModule::new_bound(py, "_native").unwrap();
        concentric_casimir_py::_native(&m).unwrap();
        f(py, &m).unwrap()
    })
}

#[test]
fn energy_matches_core() {
    let (value, te, tm) = with_module(|py, m| {
        let g = m.getattr("Geometry")?.call_method1("from_eps", (0.2, 3))?;
        let kw = PyDict::new_bound(py);
        kw.set_item("policy", m.getattr("TruncationPolicy")?.call1((1e-10,))?)?;
        let r = m.getattr("energy")?.call((g, "pc,ip"), Some(&kw))?;
        Ok((
            r.getattr("value")?.extract::<f64>()?,
            r.getattr("te")?.extract::<f64>()?,
            r.getattr("tm")?.extract::<f64>()?,
        ))
    });
    let core = concentric_casimir::energy::energy(
        &concentric_casimir::energy::Geometry::from_eps(0.2, 3).unwrap(),
        "pc,ip".parse().unwrap(),
        concentric_casimir::ChannelSelection::Total,
        0.0,
        &concentric_casimir::energy::TruncationPolicy::with_rel_tol(1e-10),
    )
    .unwrap();
    assert_eq!(value, core.value);
    assert_eq!((te, tm), (core.te.unwrap(), core.tm.unwrap()));
}

#[test]
fn errors_map_to_exception_types() {
    with_module(|py, m| {
        let bad = m.getattr("Geometry")?.call1((1.0, 0.5, 3)).unwrap_err();
        assert!(bad.is_instance_of::<pyo3::exceptions::PyValueError>(py));
        let bad = m.getattr("high_t_expansion")?.call1((3, "pc,pc", "total", "sideways")).unwrap_err();
        assert!(bad.is_instance_of::<pyo3::exceptions::PyValueError>(py));

        let g = m.getattr("Geometry")?.call_method1("from_eps", (0.02, 3))?;
        let kw = PyDict::new_bound(py);
        kw.set_item("l_max_hard", 10)?;
        let policy = m.getattr("TruncationPolicy")?.call((), Some(&kw))?;
        let kw = PyDict::new_bound(py);
        kw.set_item("policy", policy)?;
        let err = m.getattr("energy")?.call((g, "pc,pc"), Some(&kw)).unwrap_err();
        assert!(err.is_instance_of::<pyo3::exceptions::PyRuntimeError>(py));
        assert!(err.get_type_bound(py).name()?.to_string().contains("NonConvergence"));
        Ok(())
    })
}

#[test]
fn series_terms_round_trip() {
    let (first, n) = with_module(|_, m| {
        let s = m.getattr("zero_t_expansion")?.call1((4, "pc,pc"))?;
        let terms: Vec<(u32, bool, f64, String)> = s.getattr("terms")?.extract()?;
        Ok((terms[0].clone(), terms.len()))
    });
    assert_eq!(first, (0, false, 1.0, "pfa".to_string()));
    assert!(n >= 3);
}
