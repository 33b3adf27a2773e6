//! Python bindings for `concentric_casimir`.
//!
//! Boundary pairs are strings such as `"pc,ip"` (inner first), channels are
//! `"te"`, `"tm"` or `"total"`, regimes `"zeroT"` or `"highT"`.

use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use concentric_casimir::asymptotics::{self as asy, LnEpsReading, Regime};
use concentric_casimir::energy::{self as en};
use concentric_casimir::{selftest as st, specfun, BoundaryCondition, BoundaryPair, ChannelSelection, Error};

create_exception!(concentric_casimir, NonConvergenceError, PyRuntimeError);
create_exception!(concentric_casimir, PrecisionLossError, PyArithmeticError);

fn err(e: Error) -> PyErr {
    match e {
        Error::NonConvergence { .. } => NonConvergenceError::new_err(e.to_string()),
        Error::PrecisionLoss { .. } | Error::Cancellation { .. } | Error::Quadrature(_) => {
            PrecisionLossError::new_err(e.to_string())
        }
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn pair(s: &str) -> PyResult<BoundaryPair> {
    s.parse().map_err(err)
}

fn channel(s: &str) -> PyResult<ChannelSelection> {
    s.parse().map_err(err)
}

fn regime(s: &str) -> PyResult<Regime> {
    match s {
        "zeroT" | "zero" => Ok(Regime::ZeroT),
        "highT" | "high" | "classical" => Ok(Regime::HighT),
        other => Err(PyValueError::new_err(format!("unknown regime '{other}' (zeroT or highT)"))),
    }
}

fn inner_bc(s: &str) -> PyResult<BoundaryCondition> {
    s.parse().map_err(err)
}

#[pyclass(frozen, module = "concentric_casimir")]
#[derive(Clone, Copy)]
struct Geometry(en::Geometry);

#[pymethods]
impl Geometry {
    #[new]
    fn new(a1: f64, a2: f64, dim: u32) -> PyResult<Self> {
        en::Geometry::new(a1, a2, dim).map(Self).map_err(err)
    }

    /// `a1 = 1`, `a2 = 1 + eps`.
    #[staticmethod]
    fn from_eps(eps: f64, dim: u32) -> PyResult<Self> {
        en::Geometry::from_eps(eps, dim).map(Self).map_err(err)
    }

    #[getter]
    fn a1(&self) -> f64 {
        self.0.a1
    }

    #[getter]
    fn a2(&self) -> f64 {
        self.0.a2
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.0.dim
    }

    #[getter]
    fn eps(&self) -> f64 {
        self.0.eps()
    }

    #[getter]
    fn gap(&self) -> f64 {
        self.0.gap()
    }

    fn __repr__(&self) -> String {
        format!("Geometry(a1={}, a2={}, dim={})", self.0.a1, self.0.a2, self.0.dim)
    }
}

#[pyclass(module = "concentric_casimir")]
#[derive(Clone, Copy)]
struct TruncationPolicy(en::TruncationPolicy);

#[pymethods]
impl TruncationPolicy {
    #[new]
    #[pyo3(signature = (rel_tol=1e-9, l_max_hard=None, p_max_hard=None, tail_extrapolation=false))]
    fn new(rel_tol: f64, l_max_hard: Option<u32>, p_max_hard: Option<u32>, tail_extrapolation: bool) -> PyResult<Self> {
        let mut p = en::TruncationPolicy::with_rel_tol(rel_tol);
        if let Some(l) = l_max_hard {
            p.l_max_hard = l;
        }
        if let Some(n) = p_max_hard {
            p.p_max_hard = n;
        }
        p.tail_extrapolation = tail_extrapolation;
        p.validate().map_err(err)?;
        Ok(Self(p))
    }

    #[getter]
    fn rel_tol(&self) -> f64 {
        self.0.rel_tol
    }

    #[getter]
    fn l_max_hard(&self) -> u32 {
        self.0.l_max_hard
    }

    #[getter]
    fn p_max_hard(&self) -> u32 {
        self.0.p_max_hard
    }

    fn __repr__(&self) -> String {
        format!(
            "TruncationPolicy(rel_tol={:e}, l_max_hard={}, p_max_hard={})",
            self.0.rel_tol, self.0.l_max_hard, self.0.p_max_hard
        )
    }
}

fn policy_or_default(p: Option<TruncationPolicy>) -> en::TruncationPolicy {
    p.map(|p| p.0).unwrap_or_default()
}

#[pyclass(frozen, get_all, module = "concentric_casimir")]
struct EnergyResult {
    value: f64,
    te: Option<f64>,
    tm: Option<f64>,
    l_used: u32,
    p_used: u32,
    error_estimate: f64,
    temperature: f64,
    warnings: Vec<String>,
}

impl From<en::EnergyResult> for EnergyResult {
    fn from(r: en::EnergyResult) -> Self {
        Self {
            value: r.value,
            te: r.te,
            tm: r.tm,
            l_used: r.l_used,
            p_used: r.p_used,
            error_estimate: r.error_estimate,
            temperature: r.temperature,
            warnings: r.warnings,
        }
    }
}

#[pymethods]
impl EnergyResult {
    fn __repr__(&self) -> String {
        format!(
            "EnergyResult(value={:e}, error_estimate={:e}, l_used={}, p_used={})",
            self.value, self.error_estimate, self.l_used, self.p_used
        )
    }
}

#[pyclass(frozen, get_all, module = "concentric_casimir")]
struct ForceResult {
    value: f64,
    te: Option<f64>,
    tm: Option<f64>,
    error_estimate: f64,
    step: f64,
    warnings: Vec<String>,
}

#[pymethods]
impl ForceResult {
    fn __repr__(&self) -> String {
        format!("ForceResult(value={:e}, error_estimate={:e})", self.value, self.error_estimate)
    }
}

type EnergyFn = fn(&en::Geometry, BoundaryPair, ChannelSelection, &en::TruncationPolicy) -> concentric_casimir::Result<en::EnergyResult>;

fn run(
    py: Python<'_>,
    f: impl FnOnce() -> concentric_casimir::Result<en::EnergyResult> + Send,
) -> PyResult<EnergyResult> {
    py.allow_threads(f).map(Into::into).map_err(err)
}

/// Free energy at temperature `temperature` (zero-temperature energy for 0).
#[pyfunction]
#[pyo3(signature = (geometry, bc, channel="total", temperature=0.0, policy=None))]
fn energy(
    py: Python<'_>,
    geometry: Geometry,
    bc: &str,
    channel: &str,
    temperature: f64,
    policy: Option<TruncationPolicy>,
) -> PyResult<EnergyResult> {
    let (p, c, pol) = (pair(bc)?, self::channel(channel)?, policy_or_default(policy));
    run(py, move || en::energy(&geometry.0, p, c, temperature, &pol))
}

#[pyfunction]
#[pyo3(signature = (geometry, bc, channel="total", policy=None))]
fn zero_t_energy(
    py: Python<'_>,
    geometry: Geometry,
    bc: &str,
    channel: &str,
    policy: Option<TruncationPolicy>,
) -> PyResult<EnergyResult> {
    let f: EnergyFn = en::zero_T_energy;
    let (p, c, pol) = (pair(bc)?, self::channel(channel)?, policy_or_default(policy));
    run(py, move || f(&geometry.0, p, c, &pol))
}

/// The `p = 0` Matsubara term per unit temperature.
#[pyfunction]
#[pyo3(signature = (geometry, bc, channel="total", policy=None))]
fn classical_term(
    py: Python<'_>,
    geometry: Geometry,
    bc: &str,
    channel: &str,
    policy: Option<TruncationPolicy>,
) -> PyResult<EnergyResult> {
    let f: EnergyFn = en::classical_term;
    let (p, c, pol) = (pair(bc)?, self::channel(channel)?, policy_or_default(policy));
    run(py, move || f(&geometry.0, p, c, &pol))
}

#[pyfunction]
#[pyo3(signature = (geometry, bc, temperature, channel="total", policy=None))]
fn free_energy(
    py: Python<'_>,
    geometry: Geometry,
    bc: &str,
    temperature: f64,
    channel: &str,
    policy: Option<TruncationPolicy>,
) -> PyResult<EnergyResult> {
    let (p, c, pol) = (pair(bc)?, self::channel(channel)?, policy_or_default(policy));
    run(py, move || en::free_energy(&geometry.0, p, c, temperature, &pol))
}

/// `F(T) - E(0)`, subtracted mode by mode.
#[pyfunction]
#[pyo3(signature = (geometry, bc, temperature, channel="total", policy=None))]
fn thermal_correction(
    py: Python<'_>,
    geometry: Geometry,
    bc: &str,
    temperature: f64,
    channel: &str,
    policy: Option<TruncationPolicy>,
) -> PyResult<EnergyResult> {
    let (p, c, pol) = (pair(bc)?, self::channel(channel)?, policy_or_default(policy));
    run(py, move || en::thermal_correction(&geometry.0, p, c, temperature, &pol))
}

/// `-∂E/∂(a2 - a1)`; negative is attractive.
#[pyfunction]
#[pyo3(signature = (geometry, bc, channel="total", temperature=0.0, policy=None))]
fn force(
    py: Python<'_>,
    geometry: Geometry,
    bc: &str,
    channel: &str,
    temperature: f64,
    policy: Option<TruncationPolicy>,
) -> PyResult<ForceResult> {
    let (p, c, pol) = (pair(bc)?, self::channel(channel)?, policy_or_default(policy));
    let r = py.allow_threads(move || en::force(&geometry.0, p, c, temperature, &pol)).map_err(err)?;
    Ok(ForceResult {
        value: r.value,
        te: r.te,
        tm: r.tm,
        error_estimate: r.error_estimate,
        step: r.step,
        warnings: r.warnings,
    })
}

/// Small-gap series `prefactor · ε^leading_power · Σ terms`.
#[pyclass(frozen, module = "concentric_casimir")]
struct ExpansionSeries(asy::ExpansionSeries);

#[pymethods]
impl ExpansionSeries {
    #[getter]
    fn prefactor(&self) -> f64 {
        self.0.prefactor
    }

    #[getter]
    fn leading_power(&self) -> i32 {
        self.0.leading_power
    }

    #[getter]
    fn regime(&self) -> &'static str {
        self.0.regime.name()
    }

    #[getter]
    fn dim(&self) -> u32 {
        self.0.dim
    }

    /// `(power, ln_eps, coefficient, label)` per term, starting with `(0, False, 1.0, "pfa")`.
    #[getter]
    fn terms(&self) -> Vec<(u32, bool, f64, &'static str)> {
        self.0.terms.iter().map(|t| (t.power, t.ln_eps, t.coefficient, t.label)).collect()
    }

    #[pyo3(signature = (power, ln_eps=false))]
    fn coefficient(&self, power: u32, ln_eps: bool) -> f64 {
        self.0.coefficient(power, ln_eps)
    }

    /// `E a1` at zero temperature, `E / T` in the classical regime.
    fn evaluate(&self, eps: f64) -> PyResult<f64> {
        self.0.evaluate(eps).map_err(err)
    }

    #[pyo3(signature = (a1, eps, temperature=0.0))]
    fn energy(&self, a1: f64, eps: f64, temperature: f64) -> PyResult<f64> {
        self.0.energy(a1, eps, temperature).map_err(err)
    }

    #[pyo3(signature = (a1, eps, temperature=0.0))]
    fn force(&self, a1: f64, eps: f64, temperature: f64) -> PyResult<f64> {
        self.0.force(a1, eps, temperature).map_err(err)
    }

    fn without(&self, label: &str) -> Self {
        Self(self.0.without(label))
    }

    fn __repr__(&self) -> String {
        format!(
            "ExpansionSeries(D={}, {}, {}, {}, {} terms)",
            self.0.dim,
            self.0.pair,
            self.0.channel,
            self.0.regime,
            self.0.terms.len()
        )
    }
}

/// `reading` only matters for `D = 3` mixed pairs: `"eps^2 ln(eps)"`
/// (default) or `"ln(eps)"`.
#[pyfunction]
#[pyo3(signature = (dim, bc, channel="total", reading="eps^2 ln(eps)"))]
fn high_t_expansion(dim: u32, bc: &str, channel: &str, reading: &str) -> PyResult<ExpansionSeries> {
    let r = match reading {
        "eps^2 ln(eps)" | "eps2" => LnEpsReading::EpsSquared,
        "ln(eps)" | "bare" => LnEpsReading::Bare,
        other => return Err(PyValueError::new_err(format!("unknown reading '{other}'"))),
    };
    asy::high_T_expansion_with(dim, pair(bc)?, self::channel(channel)?, r).map(ExpansionSeries).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (dim, bc, channel="total"))]
fn zero_t_expansion(dim: u32, bc: &str, channel: &str) -> PyResult<ExpansionSeries> {
    asy::zero_T_expansion(dim, pair(bc)?, self::channel(channel)?).map(ExpansionSeries).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (dim, bc, regime, d, temperature=0.0))]
fn parallel_plate_density(dim: u32, bc: &str, regime: &str, d: f64, temperature: f64) -> PyResult<f64> {
    asy::parallel_plate_density(dim, pair(bc)?, self::regime(regime)?, d, temperature).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (geometry, bc, regime, temperature=0.0))]
fn pfa_energy(geometry: Geometry, bc: &str, regime: &str, temperature: f64) -> PyResult<f64> {
    asy::pfa_energy(&geometry.0, pair(bc)?, self::regime(regime)?, temperature).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (geometry, bc, regime, temperature=0.0))]
fn pfa_force(geometry: Geometry, bc: &str, regime: &str, temperature: f64) -> PyResult<f64> {
    asy::pfa_force(&geometry.0, pair(bc)?, self::regime(regime)?, temperature).map_err(err)
}

/// Leading low-temperature term of `F(T) - E(0)`; depends only on the inner boundary.
#[pyfunction]
#[pyo3(signature = (dim, inner, channel, a1, temperature))]
fn thermal_leading(dim: u32, inner: &str, channel: &str, a1: f64, temperature: f64) -> PyResult<f64> {
    asy::thermal_leading(dim, inner_bc(inner)?, self::channel(channel)?, a1, temperature).map_err(err)
}

#[pyfunction]
fn pfa_thermal_force(dim: u32, a1: f64, temperature: f64) -> PyResult<f64> {
    asy::pfa_thermal_force(dim, a1, temperature).map_err(err)
}

#[pyfunction]
fn exact_thermal_force_leading(dim: u32, inner: &str, a1: f64, temperature: f64) -> PyResult<f64> {
    asy::exact_thermal_force_leading(dim, inner_bc(inner)?, a1, temperature).map_err(err)
}

/// `(ln I_ν(z), ln K_ν(z), z I'/I, z K'/K)`.
#[pyfunction]
fn bessel_log(nu: f64, z: f64) -> PyResult<(f64, f64, f64, f64)> {
    let b = specfun::bessel_log(nu, z).map_err(err)?;
    Ok((b.ln_i, b.ln_k, b.zdi, b.zdk))
}

#[pyfunction]
fn riemann_zeta(s: f64) -> PyResult<f64> {
    specfun::riemann_zeta(s).map_err(err)
}

#[pyfunction]
fn dirichlet_eta(s: f64) -> PyResult<f64> {
    specfun::dirichlet_eta(s).map_err(err)
}

#[pyfunction]
fn gamma(x: f64) -> PyResult<f64> {
    specfun::gamma_fn(x).map_err(err)
}

/// Run the invariant suites; returns `(passed, report)`.
#[pyfunction]
fn selftest(py: Python<'_>) -> (bool, String) {
    let r = py.allow_threads(st::run);
    (r.passed(), st::render(&r))
}

#[pymodule]
pub fn _native(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("NonConvergenceError", m.py().get_type_bound::<NonConvergenceError>())?;
    m.add("PrecisionLossError", m.py().get_type_bound::<PrecisionLossError>())?;
    m.add_class::<Geometry>()?;
    m.add_class::<TruncationPolicy>()?;
    m.add_class::<EnergyResult>()?;
    m.add_class::<ForceResult>()?;
    m.add_class::<ExpansionSeries>()?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(zero_t_energy, m)?)?;
    m.add_function(wrap_pyfunction!(free_energy, m)?)?;
    m.add_function(wrap_pyfunction!(classical_term, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_correction, m)?)?;
    m.add_function(wrap_pyfunction!(force, m)?)?;
    m.add_function(wrap_pyfunction!(high_t_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(zero_t_expansion, m)?)?;
    m.add_function(wrap_pyfunction!(parallel_plate_density, m)?)?;
    m.add_function(wrap_pyfunction!(pfa_energy, m)?)?;
    m.add_function(wrap_pyfunction!(pfa_force, m)?)?;
    m.add_function(wrap_pyfunction!(thermal_leading, m)?)?;
    m.add_function(wrap_pyfunction!(pfa_thermal_force, m)?)?;
    m.add_function(wrap_pyfunction!(exact_thermal_force_leading, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_log, m)?)?;
    m.add_function(wrap_pyfunction!(riemann_zeta, m)?)?;
    m.add_function(wrap_pyfunction!(dirichlet_eta, m)?)?;
    m.add_function(wrap_pyfunction!(gamma, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
