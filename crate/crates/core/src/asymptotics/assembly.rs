//! Independent reconstruction of the zero-temperature coefficients from the
//! Mellin-space building blocks `𝒜, ℬ, 𝒞, 𝒢`.
//!
//! The degeneracy is expanded as `Σ_j w_j ν^j` and only `j = D-2, D-4`
//! contribute up to relative order `ε²`.  The uniform expansion of the Robin
//! factors enters through `P₁ = λt + γt³` on each sphere; for mixed pairs the
//! difference of the outer and inner factors is `𝒯 = δt + κt³`.

use std::f64::consts::PI;

use super::zero_t;
use crate::error::{Error, Result};
use crate::modes::{BoundaryCondition, BoundaryPair, ChannelSelection, Polarization};
use crate::specfun::{dirichlet_eta, gamma_fn, recip_gamma, riemann_zeta};

/// The four coefficient functions at one `z`.
///
/// `𝒜(z) = a0 (1 + a1 ε + a2 ε² + ...)` and `𝒞(z) = c_inv / ε + c0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientFunctions {
    pub a0: f64,
    pub a1: f64,
    pub a2: f64,
    pub b: f64,
    pub c_inv: f64,
    pub c0: f64,
    pub g: f64,
}

/// `√π/2 · Γ(x)/Γ(y)`.
fn half_beta(x: f64, y: f64) -> Result<f64> {
    Ok(0.5 * PI.sqrt() * gamma_fn(x)? * recip_gamma(y))
}

fn a0(z: f64) -> Result<f64> {
    if z <= 1.0 {
        return Err(Error::Pole(format!("𝒜(z) needs z > 1, got {z}")));
    }
    half_beta(0.5 * (z - 1.0), 0.5 * z)
}

fn b_fn(z: f64, lam: f64, gam: f64) -> Result<f64> {
    let r1 = (z + 1.0) / (z + 2.0);
    let r2 = r1 * (z + 3.0) / (z + 4.0);
    Ok(half_beta(0.5 * (z + 1.0), 0.5 * (z + 2.0))? * (-lam + (lam - 3.0 * gam) * r1 + 3.0 * gam * r2))
}

fn c0_fn(z: f64, lam: f64, gam: f64, de: f64, ka: f64) -> Result<f64> {
    let r1 = (z + 1.0) / (z + 2.0);
    let r2 = r1 * (z + 3.0) / (z + 4.0);
    let h = 0.5 * (z + 1.0);
    Ok(half_beta(h, 0.5 * (z + 2.0))? * (-lam + (lam - 3.0 * gam + h * de) * r1 + (3.0 * gam + h * ka) * r2))
}

fn c_inv_fn(z: f64, de: f64, ka: f64) -> Result<f64> {
    Ok(half_beta(0.5 * (z + 1.0), 0.5 * (z + 2.0))? * (de + ka * (z + 1.0) / (z + 2.0)))
}

fn g_fn(z: f64, de: f64, ka: f64) -> Result<f64> {
    let r1 = (z + 3.0) / (z + 4.0);
    let r2 = r1 * (z + 5.0) / (z + 6.0);
    Ok(half_beta(0.5 * (z + 3.0), 0.5 * (z + 4.0))? * (de * de + 2.0 * de * ka * r1 + ka * ka * r2))
}

/// `𝒜, ℬ, 𝒞, 𝒢` at `z` for the parameters `(λ, γ)` and `(δ, κ)`.
///
/// Fails with a pole error for `z ≤ 1`, where `𝒜` is singular.
pub fn expansion_coefficient_functions(z: f64, lam: f64, gam: f64, de: f64, ka: f64) -> Result<CoefficientFunctions> {
    Ok(CoefficientFunctions {
        a0: a0(z)?,
        a1: 0.5 * (z - 1.0),
        a2: (z - 1.0) * (3.0 * z * z - 2.0 * z - 17.0) / (24.0 * (z + 2.0)),
        b: b_fn(z, lam, gam)?,
        c_inv: c_inv_fn(z, de, ka)?,
        c0: c0_fn(z, lam, gam, de, ka)?,
        g: g_fn(z, de, ka)?,
    })
}

/// `(λ, γ)` of `P₁` for one polarization and boundary condition.
fn robin_parameters(pol: Polarization, bc: BoundaryCondition, d: f64) -> (f64, f64) {
    let dirichlet = (1.0 / 8.0, -5.0 / 24.0);
    let robin = |a: f64| (a - 3.0 / 8.0, 7.0 / 24.0);
    match (pol, bc) {
        (Polarization::TE, BoundaryCondition::PerfectlyConducting) => dirichlet,
        (Polarization::TE, BoundaryCondition::InfinitelyPermeable) => robin(0.5 * (4.0 - d)),
        (Polarization::TM, BoundaryCondition::PerfectlyConducting) => robin(0.5 * (d - 2.0)),
        (Polarization::TM, BoundaryCondition::InfinitelyPermeable) => dirichlet,
    }
}

/// Coefficients `w_{D-2}, w_{D-4}` of the degeneracy polynomial in `ν`.
fn weights(pol: Polarization, d: f64) -> (f64, f64) {
    match pol {
        Polarization::TE => (2.0 * recip_gamma(d - 2.0), -(d * d - 6.0 * d + 32.0) / 12.0 * recip_gamma(d - 3.0)),
        Polarization::TM => (2.0 * recip_gamma(d - 1.0), -recip_gamma(d - 4.0) / 12.0),
    }
}

/// Absolute coefficients of `ε^{-D}, ε^{1-D}, ε^{2-D}` (times `2π`) for one
/// polarization, at real `D > 3`.
fn channel(d: f64, pair: BoundaryPair, pol: Polarization) -> Result<[f64; 3]> {
    let (w2, w4) = weights(pol, d);
    let p = robin_parameters(pol, pair.inner, d);
    let q = robin_parameters(pol, pair.outer, d);
    let (lam, gam) = q;
    let (de, ka) = (q.0 - p.0, q.1 - p.1);
    let top = expansion_coefficient_functions(d, lam, gam, de, ka)?;
    let low = expansion_coefficient_functions(d - 2.0, lam, gam, de, ka)?;
    let p2 = 2f64.powf(d - 2.0);
    let g2 = gamma_fn(d - 2.0)?;
    let g1 = gamma_fn(d - 1.0)?;
    if pair.is_homogeneous() {
        let z1 = riemann_zeta(d - 1.0)?;
        let lead = -w2 / 2f64.powf(d) * gamma_fn(d)? * riemann_zeta(d + 1.0)? * top.a0;
        let c2 = lead * top.a2 - w4 / p2 * g2 * z1 * low.a0 + w2 / p2 * g1 * z1 * low.b;
        return Ok([lead, lead * top.a1, c2]);
    }
    let e1 = dirichlet_eta(d - 1.0)?;
    let lead = w2 / 2f64.powf(d) * gamma_fn(d)? * dirichlet_eta(d + 1.0)? * top.a0;
    let c1 = lead * top.a1 - w2 / p2 * g1 * e1 * low.c_inv;
    let g = g_fn(d - 4.0, de, ka)?;
    let c2 = lead * top.a2 + w4 / p2 * g2 * e1 * low.a0 - w2 / p2 * g1 * e1 * low.c0
        + 2.0 * w2 / p2 * g2 * dirichlet_eta(d - 3.0)? * g;
    Ok([lead, c1, c2])
}

/// Relative coefficients `(c1, c2)` of the zero-temperature series at real
/// `D > 3`, assembled from the coefficient functions.
#[allow(non_snake_case)]
pub fn assembled_zero_T(dim: f64, pair: BoundaryPair, selection: ChannelSelection) -> Result<[f64; 2]> {
    if !(dim > 3.0) {
        return Err(Error::domain("assembled_zero_T", format!("needs real D > 3, got {dim}")));
    }
    let mut acc = [0.0; 3];
    for &pol in selection.polarizations() {
        let c = channel(dim, pair, pol)?;
        for (a, v) in acc.iter_mut().zip(c) {
            *a += v;
        }
    }
    Ok([acc[1] / acc[0], acc[2] / acc[0]])
}

/// Largest relative deviation between the assembled and the closed-form
/// `ε¹`, `ε²` coefficients at real `D > 3`.
pub fn assembly_residual(dim: f64, pair: BoundaryPair, selection: ChannelSelection) -> Result<f64> {
    let [a1, a2] = assembled_zero_T(dim, pair, selection)?;
    let terms = zero_t::general(dim, pair, selection)?;
    let sum = |k: u32| terms.iter().filter(|t| t.power == k).map(|t| t.coefficient).sum::<f64>();
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1e-300);
    Ok(rel(a1, sum(1)).max(rel(a2, sum(2))))
}
