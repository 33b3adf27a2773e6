//! Invariant suites shared by the CLI `selftest` mode and the acceptance
//! tests, plus the fit that decides how the logarithm in the `D = 3` mixed
//! classical series is read.

use std::fmt::{self, Write as _};

use num_traits::Zero;

use crate::asymptotics::{
    assembly_residual, high_T_expansion, high_T_expansion_with, pfa_energy, zero_T_expansion, LnEpsReading, Regime,
};
use crate::energy::{classical_term, energy, Geometry, TruncationPolicy};
use crate::error::Result;
use crate::modes::{degeneracy, degeneracy_polynomial, BoundaryPair, ChannelSelection, Polarization};
use crate::specfun::debye::{debye_d, debye_m};
use crate::specfun::{bessel_log, bessel_log_direct, bessel_log_uniform, rational, RationalPolynomial};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub module: &'static str,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Residuals of both readings of the `D = 3` mixed classical series.
#[derive(Debug, Clone, PartialEq)]
pub struct LnEpsFit {
    pub pair: BoundaryPair,
    pub eps: Vec<f64>,
    /// `exact / prefactor·ε^{1-D} - bracket`, per `ε`, for the bare `ln ε` reading.
    pub residual_bare: Vec<f64>,
    pub residual_eps_squared: Vec<f64>,
    /// Least-squares fit of `(r - 1 - c1 ε)/ε² = a ln ε + b` to the exact
    /// ratio `r`: `(a, b)`.
    pub fitted: (f64, f64),
    /// `a` as given by the series.
    pub series_coefficient: f64,
    pub selected: LnEpsReading,
    /// Ratio of the worst residuals, rejected over selected.
    pub improvement: f64,
}

impl LnEpsFit {
    pub fn clean(&self) -> bool {
        self.improvement >= 10.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
    pub ln_eps: Vec<LnEpsFit>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.ln_eps.iter().all(LnEpsFit::clean)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed).count() + self.ln_eps.iter().filter(|f| !f.clean()).count()
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.checks.iter().map(|c| c.module.len() + c.name.len() + 1).max().unwrap_or(10);
        for c in &self.checks {
            let name = format!("{}.{}", c.module, c.name);
            writeln!(f, "{:<4} {name:<w$}  {}", if c.passed { "PASS" } else { "FAIL" }, c.detail)?;
        }
        for fit in &self.ln_eps {
            writeln!(f)?;
            writeln!(f, "D=3 mixed classical series, {}: reading of the logarithm", fit.pair)?;
            writeln!(f, "  {:>8}  {:>14}  {:>14}", "eps", "res[ln]", "res[eps^2 ln]")?;
            for (k, e) in fit.eps.iter().enumerate() {
                writeln!(f, "  {e:>8.1e}  {:>14.6e}  {:>14.6e}", fit.residual_bare[k], fit.residual_eps_squared[k])?;
            }
            writeln!(
                f,
                "  fit: {:.6} eps^2 ln(eps) {:+.6} eps^2 (series: {:.6} eps^2 ln(eps))",
                fit.fitted.0, fit.fitted.1, fit.series_coefficient
            )?;
            writeln!(
                f,
                "  selected: {}, residual improvement {:.3e}x: {}",
                fit.selected.name(),
                fit.improvement,
                if fit.clean() { "PASS" } else { "FAIL" }
            )?;
        }
        Ok(())
    }
}

fn check(module: &'static str, name: &'static str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult {
        module,
        name,
        passed,
        detail: detail.into(),
    }
}

fn from_result(module: &'static str, name: &'static str, r: Result<(bool, String)>) -> CheckResult {
    match r {
        Ok((ok, detail)) => check(module, name, ok, detail),
        Err(e) => check(module, name, false, format!("error: {e}")),
    }
}

const PAIRS: [BoundaryPair; 4] = BoundaryPair::ALL;
const CHANNELS: [ChannelSelection; 3] = [ChannelSelection::TE, ChannelSelection::TM, ChannelSelection::Total];

pub fn wronskian() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for nu in [0.5, 1.5, 5.0, 50.5, 500.0] {
        for z in [0.01, 1.0, 10.0, 100.0] {
            worst = worst.max(bessel_log(nu, z)?.wronskian_residual().abs());
        }
    }
    Ok((worst <= 1e-11, format!("max relative residual {worst:.2e}")))
}

pub fn debye_explicit() -> (bool, String) {
    let d1 = RationalPolynomial::from_ratios(&[(0, 1), (1, 8), (0, 1), (-5, 24)]);
    let mut ok = debye_d(1) == d1;
    for (n, d) in [(0, 1), (1, 2), (3, 2), (-1, 2), (7, 3)] {
        let a = rational(n, d);
        let m1 = RationalPolynomial::new(vec![rational(0, 1), &a - rational(3, 8), rational(0, 1), rational(7, 24)]);
        ok &= debye_m(1, &a) == m1;
    }
    (ok, format!("D_1 = {}, exact rational comparison", debye_d(1)))
}

pub fn bessel_overlap() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for nu in [50.0, 60.5, 80.0, 120.0] {
        for w in [1e-3, 0.1, 1.0, 3.0, 20.0] {
            let a = bessel_log_direct(nu, nu * w)?;
            let b = bessel_log_uniform(nu, nu * w, 8)?;
            for (x, y) in [(a.ln_i, b.ln_i), (a.ln_k, b.ln_k), (a.zdi, b.zdi), (a.zdk, b.zdk)] {
                worst = worst.max((x - y).abs() / y.abs().max(1.0));
            }
        }
    }
    Ok((worst <= 1e-9, format!("max relative difference {worst:.2e}")))
}

pub fn degeneracy_identities() -> Result<(bool, String)> {
    let mut ok = true;
    for dim in 3..=10u32 {
        for pol in Polarization::BOTH {
            let p = degeneracy_polynomial(pol, dim)?;
            for l in 1..=50u32 {
                let nu = rational(2 * i64::from(l) + i64::from(dim) - 2, 2);
                ok &= p.eval(&nu) == degeneracy(pol, l, dim)?;
            }
            let top = (dim - 2) as usize;
            ok &= !p.coefficient(top).is_zero() && p.coefficient(top - 1).is_zero();
        }
        let d = i64::from(dim);
        ok &= degeneracy(Polarization::TM, 1, dim)? == rational(d, 1);
        ok &= degeneracy(Polarization::TE, 1, dim)? == rational(d * (d - 1), 2);
    }
    Ok((ok, "D in 3..=10, l in 1..=50, exact".into()))
}

fn prefactor_consistency() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for dim in 3..=16 {
        let g = Geometry::from_eps(0.01, dim)?;
        for pair in PAIRS {
            let hi = high_T_expansion(dim, pair, ChannelSelection::Total)?;
            let lo = zero_T_expansion(dim, pair, ChannelSelection::Total)?;
            let a = hi.prefactor * 0.01f64.powi(hi.leading_power) / pfa_energy(&g, pair, Regime::HighT, 1.0)?;
            let b = lo.prefactor * 0.01f64.powi(lo.leading_power) / pfa_energy(&g, pair, Regime::ZeroT, 0.0)?;
            worst = worst.max((a - 1.0).abs()).max((b - 1.0).abs());
        }
    }
    Ok((worst <= 1e-12, format!("max relative deviation {worst:.2e}")))
}

fn channel_weights() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for dim in 3..=16 {
        let d = f64::from(dim);
        for pair in PAIRS {
            let t = zero_T_expansion(dim, pair, ChannelSelection::Total)?.prefactor;
            let te = zero_T_expansion(dim, pair, ChannelSelection::TE)?.prefactor;
            let tm = high_T_expansion(dim, pair, ChannelSelection::TM)?.prefactor
                / high_T_expansion(dim, pair, ChannelSelection::Total)?.prefactor;
            worst = worst.max((te / t - (d - 2.0) / (d - 1.0)).abs()).max((tm - 1.0 / (d - 1.0)).abs());
        }
    }
    Ok((worst <= 1e-14, format!("max deviation {worst:.2e}")))
}

fn first_correction() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for dim in 3..=16 {
        for pair in [BoundaryPair::PC_PC, BoundaryPair::IP_IP] {
            for ch in CHANNELS {
                for s in [high_T_expansion(dim, pair, ch)?, zero_T_expansion(dim, pair, ch)?] {
                    worst = worst.max((s.coefficient(1, false) - 0.5 * (f64::from(dim) - 1.0)).abs());
                }
            }
        }
    }
    Ok((worst <= 1e-14, format!("max deviation from (D-1)/2: {worst:.2e}")))
}

fn mixed_ordering() -> Result<(bool, String)> {
    let mut ok = true;
    for dim in 4..=16 {
        for eps in [0.01, 0.05, 0.1] {
            for series in [high_T_expansion, zero_T_expansion] {
                let a = series(dim, BoundaryPair::PC_IP, ChannelSelection::Total)?.evaluate(eps)?;
                let b = series(dim, BoundaryPair::IP_PC, ChannelSelection::Total)?.evaluate(eps)?;
                ok &= a > b && b > 0.0;
            }
        }
    }
    Ok((ok, "PC inner stronger, D in 4..=16".into()))
}

/// Real dimensions at which the assembly gate is evaluated.
pub const GATE_DIMENSIONS: [f64; 10] = [3.5, 4.0, 4.5, 5.0, 5.75, 6.0, 7.0, 8.25, 10.0, 13.5];

pub fn assembly_gate() -> Result<(bool, String)> {
    let mut worst: f64 = 0.0;
    for d in GATE_DIMENSIONS {
        for pair in PAIRS {
            for ch in CHANNELS {
                worst = worst.max(assembly_residual(d, pair, ch)?);
            }
        }
    }
    Ok((worst <= 1e-10, format!("max relative residual {worst:.2e} over 10 real D")))
}

fn duality() -> Result<(bool, String)> {
    let mut ok = true;
    for (a, b) in [(BoundaryPair::PC_PC, BoundaryPair::IP_IP), (BoundaryPair::PC_IP, BoundaryPair::IP_PC)] {
        for series in [high_T_expansion, zero_T_expansion] {
            let x = series(3, a, ChannelSelection::TE)?;
            let y = series(3, b, ChannelSelection::TM)?;
            for (p, ln) in [(1, false), (2, false), (2, true)] {
                ok &= x.coefficient(p, ln) == y.coefficient(p, ln);
            }
            ok &= x.prefactor == y.prefactor;
        }
    }
    Ok((ok, "TE <-> TM under inner/outer swap".into()))
}

fn energy_signs() -> Result<(bool, String)> {
    let policy = TruncationPolicy::with_rel_tol(1e-6);
    let mut ok = true;
    let mut n = 0;
    for dim in [3, 4] {
        for pair in PAIRS {
            for t in [0.0, 0.5] {
                let mut last = f64::INFINITY;
                for eps in [0.3, 1.0] {
                    let e = energy(&Geometry::from_eps(eps, dim)?, pair, ChannelSelection::Total, t, &policy)?.value;
                    ok &= (e < 0.0) == pair.is_homogeneous() && e.abs() < last;
                    last = e.abs();
                    n += 1;
                }
            }
        }
    }
    Ok((ok, format!("{n} points: sign by boundary type, |E| decreasing in eps")))
}

fn scale_invariance() -> Result<(bool, String)> {
    let policy = TruncationPolicy::with_rel_tol(1e-10);
    let g = Geometry::new(1.0, 1.5, 4)?;
    let e = energy(&g, BoundaryPair::PC_IP, ChannelSelection::Total, 0.3, &policy)?.value;
    let s = energy(&g.scaled(2.0)?, BoundaryPair::PC_IP, ChannelSelection::Total, 0.15, &policy)?.value;
    let dev = (2.0 * s / e - 1.0).abs();
    Ok((dev < 1e-8, format!("E(λa, T/λ) λ / E(a, T) - 1 = {dev:.1e}")))
}

/// Fit the exact classical term of a mixed pair at `D = 3` against both
/// readings of the logarithm.
pub fn ln_eps_fit(pair: BoundaryPair, eps: &[f64]) -> Result<LnEpsFit> {
    let policy = TruncationPolicy {
        l_max_hard: 2_000_000,
        ..TruncationPolicy::with_rel_tol(1e-14)
    };
    let ch = ChannelSelection::Total;
    let bare = high_T_expansion_with(3, pair, ch, LnEpsReading::Bare)?;
    let sq = high_T_expansion_with(3, pair, ch, LnEpsReading::EpsSquared)?;
    let mut out = LnEpsFit {
        pair,
        eps: eps.to_vec(),
        residual_bare: Vec::new(),
        residual_eps_squared: Vec::new(),
        fitted: (0.0, 0.0),
        series_coefficient: sq.coefficient(2, true),
        selected: LnEpsReading::EpsSquared,
        improvement: 0.0,
    };
    let mut ys = Vec::new();
    for &e in eps {
        let exact = classical_term(&Geometry::from_eps(e, 3)?, pair, ch, &policy)?.value;
        let r = exact / (sq.prefactor * e.powi(sq.leading_power));
        out.residual_bare.push(r - bare.relative(e)?);
        out.residual_eps_squared.push(r - sq.relative(e)?);
        ys.push((r - 1.0 - sq.coefficient(1, false) * e) / (e * e));
    }
    let xs: Vec<f64> = eps.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    out.fitted = (slope, my - slope * mx);
    let worst = |v: &[f64]| v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let (b, s) = (worst(&out.residual_bare), worst(&out.residual_eps_squared));
    if b < s {
        out.selected = LnEpsReading::Bare;
        out.improvement = s / b;
    } else {
        out.improvement = b / s;
    }
    Ok(out)
}

/// Gaps used for the logarithm fit.
pub const LN_EPS_GRID: [f64; 3] = [1e-2, 1e-3, 1e-4];

/// Run every suite.
pub fn run() -> SelftestReport {
    let mut checks = vec![
        from_result("specfun", "wronskian", wronskian()),
        {
            let (ok, d) = debye_explicit();
            check("specfun", "debye_explicit", ok, d)
        },
        from_result("specfun", "uniform_overlap", bessel_overlap()),
        from_result("modes", "degeneracy_identities", degeneracy_identities()),
        from_result("energy", "signs", energy_signs()),
        from_result("energy", "scale_invariance", scale_invariance()),
        from_result("asymptotics", "prefactor_consistency", prefactor_consistency()),
        from_result("asymptotics", "channel_weights", channel_weights()),
        from_result("asymptotics", "first_correction", first_correction()),
        from_result("asymptotics", "mixed_ordering", mixed_ordering()),
        from_result("asymptotics", "assembly_gate", assembly_gate()),
        from_result("asymptotics", "duality", duality()),
    ];
    let mut ln_eps = Vec::new();
    for pair in [BoundaryPair::PC_IP, BoundaryPair::IP_PC] {
        match ln_eps_fit(pair, &LN_EPS_GRID) {
            Ok(f) => ln_eps.push(f),
            Err(e) => checks.push(check("asymptotics", "ln_eps_fit", false, format!("error: {e}"))),
        }
    }
    SelftestReport { checks, ln_eps }
}

/// The report as text, one line per check.
pub fn render(report: &SelftestReport) -> String {
    let mut s = String::new();
    let _ = write!(s, "{report}");
    let _ = writeln!(s, "\n{} checks, {} failures", report.checks.len() + report.ln_eps.len(), report.failures());
    s
}
