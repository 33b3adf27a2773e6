//! Per-`l` building blocks: the Matsubara sum over `p` and the frequency
//! integral at zero temperature.

use std::f64::consts::PI;

use super::ModeFunction;
use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::summation::CompensatedSum;

const MAX_SEGMENTS: usize = 100_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Partial {
    pub value: f64,
    pub error: f64,
    pub count: u32,
}

/// `½ f_l(0) + Σ_{p≥1} f_l(2πpT)`, to relative accuracy `tol`.
pub(crate) fn matsubara_sum(
    mode: &ModeFunction,
    l: u32,
    temperature: f64,
    tol: f64,
    p_max: u32,
    fixed_p: Option<u32>,
) -> Result<Partial> {
    let step = 2.0 * PI * temperature;
    let mut acc = CompensatedSum::new();
    acc.add(0.5 * mode.f_zero(l)?);
    let mut prev = f64::NAN;
    let cap = fixed_p.unwrap_or(p_max);
    for p in 1..=cap {
        let xi = step * f64::from(p);
        let t = mode.f(l, xi)?;
        acc.add(t);
        if fixed_p.is_some() {
            continue;
        }
        let mag = t.abs();
        if mag == 0.0 {
            return Ok(Partial {
                value: acc.value(),
                error: 0.0,
                count: p,
            });
        }
        let model = (-mode.decay_rate(l, xi) * step).exp();
        let q = if prev.is_nan() { model } else { model.max(mag / prev) };
        prev = mag;
        if q < 1.0 {
            let tail = mag * q / (1.0 - q);
            if tail < tol * acc.value().abs() {
                return Ok(Partial {
                    value: acc.value(),
                    error: tail,
                    count: p,
                });
            }
        }
    }
    if fixed_p.is_some() {
        return Ok(Partial {
            value: acc.value(),
            error: 0.0,
            count: cap,
        });
    }
    Err(Error::NonConvergence {
        what: "matsubara sum",
        detail: format!("p reached the hard cap {p_max} at l = {l}, T = {temperature}"),
        partial: None,
    })
}

/// `∫_0^∞ f_l(ξ) dξ`, to relative accuracy `tol`.
///
/// The half line is cut into panels of width `max(ν/a1, 1/d)`; integration
/// stops once the exponential tail beyond the last panel is negligible.
pub(crate) fn frequency_integral(mode: &ModeFunction, l: u32, tol: f64) -> Result<Partial> {
    let g = mode.geometry;
    let width = (mode.nu(l) / g.a1).max(1.0 / g.gap());
    let mut acc = CompensatedSum::new();
    let mut err = CompensatedSum::new();
    let mut evaluations = 0usize;
    let mut a = 0.0;
    for _ in 0..MAX_SEGMENTS {
        let b = a + width;
        let opts = QuadratureOptions {
            abs_tol: 0.05 * tol * acc.value().abs(),
            rel_tol: 0.1 * tol,
            ..Default::default()
        };
        let r = integrate(|xi| mode.f(l, xi), a, b, &opts)?;
        acc.add(r.value);
        err.add(r.error);
        evaluations += r.evaluations;
        let fb = mode.f(l, b)?.abs();
        let tail = if fb == 0.0 { 0.0 } else { fb / mode.decay_rate(l, b) };
        if tail < 0.1 * tol * acc.value().abs() || fb == 0.0 {
            return Ok(Partial {
                value: acc.value(),
                error: err.value() + tail,
                count: u32::try_from(evaluations).unwrap_or(u32::MAX),
            });
        }
        a = b;
    }
    Err(Error::Quadrature(format!(
        "frequency integral at l = {l} did not decay after {MAX_SEGMENTS} panels"
    )))
}
