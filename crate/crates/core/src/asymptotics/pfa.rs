use std::f64::consts::PI;

use super::Regime;
use crate::energy::Geometry;
use crate::error::{Error, Result};
use crate::modes::{check_dim, BoundaryPair, ChannelSelection};
use crate::specfun::{dirichlet_eta, gamma_fn, riemann_zeta};

/// Leading free energy per unit area of two parallel plates at distance `d`.
///
/// Zero temperature: `-(D-1) Γ((D+1)/2) ζ(D+1) / (2^{D+1} π^{(D+1)/2} d^D)`;
/// classical regime: `-(D-1) Γ(D/2) ζ(D) T / (2^D π^{D/2} d^{D-1})`.  One
/// conducting and one permeable plate replace `ζ(s)` by `-η(s)`.
pub fn parallel_plate_density(dim: u32, pair: BoundaryPair, regime: Regime, d: f64, temperature: f64) -> Result<f64> {
    check_dim(dim)?;
    if !(d > 0.0 && d.is_finite()) {
        return Err(Error::domain("parallel_plate_density", format!("separation must be positive, got {d}")));
    }
    let dd = f64::from(dim);
    let s = match regime {
        Regime::ZeroT => dd + 1.0,
        Regime::HighT => {
            if !(temperature >= 0.0 && temperature.is_finite()) {
                return Err(Error::domain("parallel_plate_density", format!("bad temperature {temperature}")));
            }
            dd
        }
    };
    let z = if pair.is_homogeneous() { riemann_zeta(s)? } else { -dirichlet_eta(s)? };
    let base = -(dd - 1.0) * gamma_fn(0.5 * s)? * z / (2f64.powf(s) * PI.powf(0.5 * s) * d.powf(s - 1.0));
    Ok(match regime {
        Regime::ZeroT => base,
        Regime::HighT => base * temperature,
    })
}

/// Area of the sphere of radius `a` in `D` dimensions.
pub fn sphere_area(dim: u32, a: f64) -> Result<f64> {
    let h = 0.5 * f64::from(dim);
    Ok(2.0 * PI.powf(h) / gamma_fn(h)? * a.powi(dim as i32 - 1))
}

/// Parallel-plate density at the gap `a2 - a1` times the inner sphere's area.
pub fn pfa_energy(geometry: &Geometry, pair: BoundaryPair, regime: Regime, temperature: f64) -> Result<f64> {
    let density = parallel_plate_density(geometry.dim, pair, regime, geometry.gap(), temperature)?;
    Ok(density * sphere_area(geometry.dim, geometry.a1)?)
}

/// `-∂E/∂d` of [`pfa_energy`] at fixed `a1`.
pub fn pfa_force(geometry: &Geometry, pair: BoundaryPair, regime: Regime, temperature: f64) -> Result<f64> {
    let e = pfa_energy(geometry, pair, regime, temperature)?;
    let power = match regime {
        Regime::ZeroT => f64::from(geometry.dim),
        Regime::HighT => f64::from(geometry.dim) - 1.0,
    };
    Ok(power * e / geometry.gap())
}

/// PFA coefficient of `ε^{-D}` (or `T ε^{1-D}`) at `a1 = 1` for one selection.
pub(crate) fn prefactor(dim: u32, pair: BoundaryPair, regime: Regime, channel: ChannelSelection) -> Result<f64> {
    let total = parallel_plate_density(dim, pair, regime, 1.0, 1.0)? * sphere_area(dim, 1.0)?;
    Ok(total * channel.pfa_weight(dim))
}
