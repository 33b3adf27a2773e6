//! Acceptance criteria, one test each.  Every test prints a single
//! `criterion N: PASS|FAIL ...` line (visible with `--nocapture`).

use std::f64::consts::PI;

use concentric_casimir::asymptotics::{
    assembly_residual, high_T_expansion, pfa_energy, thermal_leading, zero_T_expansion, Regime,
};
use concentric_casimir::energy::{classical_term, energy, force, thermal_correction, zero_T_energy, Geometry, TruncationPolicy};
use concentric_casimir::selftest;
use concentric_casimir::specfun::riemann_zeta;
use concentric_casimir::{BoundaryCondition, BoundaryPair, ChannelSelection};
use rayon::prelude::*;

const CHANNELS: [ChannelSelection; 3] = [ChannelSelection::TE, ChannelSelection::TM, ChannelSelection::Total];

fn report(n: u32, ok: bool, detail: impl AsRef<str>) {
    println!("criterion {n}: {} {}", if ok { "PASS" } else { "FAIL" }, detail.as_ref());
    assert!(ok, "criterion {n} failed: {}", detail.as_ref());
}

/// Value at 0 of the quadratic through three points.
fn extrapolate(x: [f64; 3], y: [f64; 3]) -> f64 {
    let mut s = 0.0;
    for i in 0..3 {
        let mut w = 1.0;
        for j in 0..3 {
            if j != i {
                w *= x[j] / (x[j] - x[i]);
            }
        }
        s += w * y[i];
    }
    s
}

/// Least-squares slope through the origin.
fn slope(x: &[f64], y: &[f64]) -> f64 {
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    let sxx: f64 = x.iter().map(|a| a * a).sum();
    sxy / sxx
}

fn zero_t_scaled(pair: BoundaryPair, ch: ChannelSelection, eps: f64) -> f64 {
    let g = Geometry::from_eps(eps, 3).unwrap();
    let e = zero_T_energy(&g, pair, ch, &TruncationPolicy::with_rel_tol(1e-8)).unwrap();
    e.value * eps.powi(3)
}

const GAPS: [f64; 3] = [0.2, 0.1, 0.05];

#[test]
fn criterion_01_zero_temperature_leading_term() {
    let mut ok = true;
    let mut parts = Vec::new();
    for (ch, want) in [
        (ChannelSelection::Total, -PI.powi(3) / 180.0),
        (ChannelSelection::TE, -PI.powi(3) / 360.0),
        (ChannelSelection::TM, -PI.powi(3) / 360.0),
    ] {
        let y = GAPS.par_iter().map(|&e| zero_t_scaled(BoundaryPair::PC_PC, ch, e)).collect::<Vec<_>>();
        let c0 = extrapolate(GAPS, [y[0], y[1], y[2]]);
        let dev = c0 / want - 1.0;
        ok &= dev.abs() < 0.01;
        parts.push(format!("{ch} {c0:.6} ({dev:+.1e})"));
    }
    report(1, ok, parts.join(", "));
}

fn corrected_ratio(series: &concentric_casimir::asymptotics::ExpansionSeries, exact: f64, eps: f64) -> f64 {
    let known: f64 = series.terms.iter().filter(|t| t.power >= 2).map(|t| t.eval(eps)).sum();
    exact / series.evaluate(eps).unwrap() * series.relative(eps).unwrap() - 1.0 - known
}

#[test]
fn criterion_02_first_correction_slope() {
    let xs = [0.02, 0.05, 0.1];
    let policy = TruncationPolicy::with_rel_tol(1e-9);
    let cases: Vec<(u32, BoundaryPair, Regime)> = [3, 4, 5]
        .into_iter()
        .flat_map(|d| {
            [BoundaryPair::PC_PC, BoundaryPair::IP_IP]
                .into_iter()
                .flat_map(move |p| [Regime::HighT, Regime::ZeroT].map(|r| (d, p, r)))
        })
        .collect();
    let fits: Vec<_> = cases
        .par_iter()
        .map(|&(dim, pair, regime)| {
            let ch = ChannelSelection::Total;
            let series = match regime {
                Regime::HighT => high_T_expansion(dim, pair, ch).unwrap(),
                Regime::ZeroT => zero_T_expansion(dim, pair, ch).unwrap(),
            };
            let r: Vec<f64> = xs
                .iter()
                .map(|&eps| {
                    let g = Geometry::from_eps(eps, dim).unwrap();
                    let exact = match regime {
                        Regime::HighT => classical_term(&g, pair, ch, &policy).unwrap().value,
                        Regime::ZeroT => zero_T_energy(&g, pair, ch, &policy).unwrap().value,
                    };
                    corrected_ratio(&series, exact, eps)
                })
                .collect();
            let c1 = slope(&xs, &r);
            let want = 0.5 * (f64::from(dim) - 1.0);
            (dim, pair, regime, c1, (c1 / want - 1.0).abs())
        })
        .collect();
    let worst = fits.iter().map(|f| f.4).fold(0.0, f64::max);
    let detail = fits
        .iter()
        .map(|(d, p, r, c1, _)| format!("D={d} {p} {r} {c1:.4}"))
        .collect::<Vec<_>>()
        .join("; ");
    report(2, worst < 0.05, format!("max relative deviation {worst:.2e}: {detail}"));
}

#[test]
fn criterion_03_classical_three_dimensions() {
    let eps: f64 = 1e-2;
    let g = Geometry::from_eps(eps, 3).unwrap();
    let policy = TruncationPolicy::with_rel_tol(1e-12);
    let c = classical_term(&g, BoundaryPair::PC_PC, ChannelSelection::Total, &policy).unwrap().value;
    let z3 = riemann_zeta(3.0).unwrap();
    let lhs = 2.0 * eps * eps * c / -z3;
    let rhs = 1.0 + eps + 11.0 / (6.0 * z3) * eps * eps * eps.ln();
    let dev = (lhs - rhs).abs();
    report(3, dev <= 1e-3, format!("|difference| = {dev:.2e} at eps = 0.01"));
}

#[test]
fn criterion_04_mixed_zero_temperature() {
    let pair = BoundaryPair::PC_IP;
    let y = GAPS.par_iter().map(|&e| zero_t_scaled(pair, ChannelSelection::Total, e)).collect::<Vec<_>>();
    let c0 = extrapolate(GAPS, [y[0], y[1], y[2]]);
    let want = 7.0 * PI.powi(3) / 1440.0;
    let dev = c0 / want - 1.0;

    let series = zero_T_expansion(3, pair, ChannelSelection::Total).unwrap();
    let r: Vec<f64> = GAPS
        .iter()
        .zip(&y)
        .map(|(&eps, &v)| corrected_ratio(&series, v / eps.powi(3), eps))
        .collect();
    let c1 = slope(&GAPS, &r);
    let ok = dev.abs() < 0.01 && (c1 - 1.0).abs() < 0.05;
    report(4, ok, format!("eps^3 E -> {c0:.6} ({dev:+.1e}), eps coefficient {c1:.4}"));
}

const TEMPS: [f64; 3] = [0.05, 0.08, 0.12];

/// Fit of `c0 + c2 T² + c4 T⁴` to `ΔE/T⁴`, returning `c0`.
fn thermal_limit(y: [f64; 3]) -> f64 {
    extrapolate(TEMPS.map(|t| t * t), y)
}

fn thermal_points(pair: BoundaryPair) -> Vec<(f64, f64, f64)> {
    let g = Geometry::from_eps(0.1, 3).unwrap();
    let policy = TruncationPolicy::with_rel_tol(1e-7);
    TEMPS
        .par_iter()
        .map(|&t| {
            let e = thermal_correction(&g, pair, ChannelSelection::Total, t, &policy).unwrap();
            let t4 = t.powi(4);
            (e.value / t4, e.te.unwrap() / t4, e.tm.unwrap() / t4)
        })
        .collect()
}

#[test]
fn criterion_05_and_06_thermal_correction() {
    let want = PI.powi(3) / 15.0;
    assert!((thermal_leading(3, BoundaryCondition::PerfectlyConducting, ChannelSelection::Total, 1.0, 1.0).unwrap() / want - 1.0).abs() < 1e-14);
    let results: Vec<_> = BoundaryPair::ALL.par_iter().map(|&p| (p, thermal_points(p))).collect();
    let mut ok5 = true;
    let mut parts = Vec::new();
    let mut ratio_detail = Vec::new();
    let mut ok6 = true;
    for (pair, pts) in &results {
        let pick = |k: usize| [0, 1, 2].map(|i| [pts[i].0, pts[i].1, pts[i].2][k]);
        let c0 = thermal_limit(pick(0));
        let dev = c0 / want - 1.0;
        ok5 &= dev.abs() < 0.02;
        parts.push(format!("{pair} {c0:.5} ({dev:+.1e})"));
        if pair.inner == BoundaryCondition::PerfectlyConducting {
            let ratio = thermal_limit(pick(2)) / thermal_limit(pick(1));
            ok6 &= (ratio / -2.0 - 1.0).abs() < 0.05;
            ratio_detail.push(format!("{pair} TM/TE {ratio:.4}"));
        }
    }
    report(5, ok5, format!("(F(T) - E0)/T^4 -> {}", parts.join(", ")));
    report(6, ok6, ratio_detail.join(", "));
}

#[test]
fn criterion_07_signs_and_monotonicity() {
    let policy = TruncationPolicy::with_rel_tol(1e-6);
    let mut grid = Vec::new();
    for dim in [3, 4, 5] {
        for pair in BoundaryPair::ALL {
            for t in [0.0, 0.5, 10.0] {
                grid.push((dim, pair, t));
            }
        }
    }
    let failures: Vec<String> = grid
        .par_iter()
        .flat_map_iter(|&(dim, pair, t)| {
            let mut bad = Vec::new();
            let mut last = f64::INFINITY;
            for eps in [0.05, 0.3, 1.0] {
                let g = Geometry::from_eps(eps, dim).unwrap();
                let e = energy(&g, pair, ChannelSelection::Total, t, &policy).unwrap().value;
                let f = force(&g, pair, ChannelSelection::Total, t, &policy).unwrap().value;
                let sign = if pair.is_homogeneous() { -1.0 } else { 1.0 };
                if !(sign * e > 0.0 && sign * f > 0.0 && e.abs() < last) {
                    bad.push(format!("D={dim} {pair} T={t} eps={eps}: E={e:e} F={f:e}"));
                }
                last = e.abs();
            }
            bad
        })
        .collect();
    report(7, failures.is_empty(), format!("{} points, {} failures {failures:?}", grid.len() * 3, failures.len()));
}

#[test]
fn criterion_08_special_functions() {
    let (w, wd) = selftest::wronskian().unwrap();
    let (d, dd) = selftest::debye_explicit();
    let (o, od) = selftest::bessel_overlap().unwrap();
    report(8, w && d && o, format!("Wronskian {wd}; {dd}; uniform vs direct {od}"));
}

#[test]
fn criterion_09_degeneracy_identities() {
    let (ok, detail) = selftest::degeneracy_identities().unwrap();
    report(9, ok, detail);
}

#[test]
fn criterion_10_assembly_gate() {
    let mut worst: f64 = 0.0;
    for dim in [4.0, 6.0, 7.0] {
        for pair in BoundaryPair::ALL {
            for ch in CHANNELS {
                worst = worst.max(assembly_residual(dim, pair, ch).unwrap());
            }
        }
    }
    let mut finite = true;
    for pair in [BoundaryPair::PC_IP, BoundaryPair::IP_PC] {
        for ch in CHANNELS {
            for s in [high_T_expansion(5, pair, ch).unwrap(), zero_T_expansion(5, pair, ch).unwrap()] {
                finite &= s.terms.iter().all(|t| t.coefficient.is_finite()) && s.evaluate(0.1).unwrap().is_finite();
            }
        }
    }
    let g = Geometry::from_eps(0.1, 5).unwrap();
    let pfa = pfa_energy(&g, BoundaryPair::PC_IP, Regime::ZeroT, 0.0).unwrap();
    report(10, worst <= 1e-10 && finite && pfa > 0.0, format!("max relative residual {worst:.2e}, D=5 mixed series finite: {finite}"));
}

#[test]
fn criterion_11_log_reading() {
    let fits: Vec<_> = [BoundaryPair::PC_IP, BoundaryPair::IP_PC]
        .par_iter()
        .map(|&p| selftest::ln_eps_fit(p, &selftest::LN_EPS_GRID).unwrap())
        .collect();
    let ok = fits.iter().all(|f| f.clean()) && fits[0].selected == fits[1].selected;
    let detail = fits
        .iter()
        .map(|f| format!("{} selects {} (improvement {:.1e})", f.pair, f.selected.name(), f.improvement))
        .collect::<Vec<_>>()
        .join(", ");
    report(11, ok, detail);
}
