//! Exact interaction free energy between the two spheres.
//!
//! Every routine works one polarization at a time: the `l`-sum of
//! degeneracy-weighted terms is driven by [`lsum`], the inner `p`-sum or
//! frequency integral by [`inner`].  Totals are TE + TM.

mod force;
mod geometry;
mod inner;
mod lsum;
mod mode;
mod policy;
mod result;

use std::f64::consts::PI;

pub use force::{force, ForceResult};
pub use geometry::Geometry;
pub use mode::{ModeFunction, ONE_MINUS_M_FLOOR};
pub use policy::TruncationPolicy;
pub use result::EnergyResult;

use crate::error::{Error, Result};
use crate::modes::{BoundaryPair, ChannelSelection, Polarization};
use inner::{frequency_integral, matsubara_sum};
use lsum::{sum_over_l, LSum, LTerm};

/// Relative accuracy of each inner sum or integral, as a fraction of `rel_tol`.
const INNER_FRACTION: f64 = 0.1;
/// Inner accuracy used on both sides of the thermal subtraction.
pub const THERMAL_INNER_TOL: f64 = 1e-13;

/// `M_l(ξ)` for `ξ > 0`.
pub fn m_ratio(l: u32, geometry: &Geometry, pair: BoundaryPair, pol: Polarization, xi: f64) -> Result<f64> {
    ModeFunction::new(*geometry, pair, pol).m_ratio(l, xi)
}

/// `f_l(ξ) = ln(1 - M_l(ξ))` for `ξ ≥ 0`.
pub fn f_l(l: u32, geometry: &Geometry, pair: BoundaryPair, pol: Polarization, xi: f64) -> Result<f64> {
    if xi < 0.0 || xi.is_nan() {
        return Err(Error::domain("f_l", format!("ξ must be non-negative, got {xi}")));
    }
    ModeFunction::new(*geometry, pair, pol).f(l, xi)
}

fn check_temperature(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::Config(format!("temperature must be positive and finite, got {t}")))
    }
}

/// Run `per_channel` for each polarization in `channel` and combine.
fn combine<F>(channel: ChannelSelection, temperature: f64, per_channel: F) -> Result<EnergyResult>
where
    F: Fn(Polarization) -> Result<LSum>,
{
    let mut out = EnergyResult {
        temperature,
        ..Default::default()
    };
    for &pol in channel.polarizations() {
        let s = per_channel(pol)?;
        out.value += s.value;
        out.error_estimate += s.error;
        out.l_used = out.l_used.max(s.l_used);
        out.p_used = out.p_used.max(s.p_used);
        match pol {
            Polarization::TE => out.te = Some(s.value),
            Polarization::TM => out.tm = Some(s.value),
        }
    }
    Ok(out)
}

fn scale_sum(mut s: LSum, factor: f64) -> LSum {
    s.value *= factor;
    s.error *= factor.abs();
    s
}

/// Exact free energy at `T > 0` from the Matsubara sum.
pub fn free_energy(
    geometry: &Geometry,
    pair: BoundaryPair,
    channel: ChannelSelection,
    temperature: f64,
    policy: &TruncationPolicy,
) -> Result<EnergyResult> {
    policy.validate()?;
    check_temperature(temperature)?;
    let inner_tol = INNER_FRACTION * policy.rel_tol;
    combine(channel, temperature, |pol| {
        let mode = ModeFunction::new(*geometry, pair, pol);
        let s = sum_over_l("free energy", policy, |l| {
            let d = mode.degeneracy(l);
            let p = matsubara_sum(&mode, l, temperature, inner_tol, policy.p_max_hard, policy.fixed_p)?;
            Ok(LTerm::new(d * p.value, d * p.error, p.count))
        })
        .map_err(|e| rescale_partial(e, temperature, temperature))?;
        Ok(scale_sum(s, temperature))
    })
}

/// The `p = 0` Matsubara term per unit temperature, `½ Σ_l d_l f_l(0)`.
pub fn classical_term(
    geometry: &Geometry,
    pair: BoundaryPair,
    channel: ChannelSelection,
    policy: &TruncationPolicy,
) -> Result<EnergyResult> {
    policy.validate()?;
    combine(channel, 0.0, |pol| {
        let mode = ModeFunction::new(*geometry, pair, pol);
        let s = sum_over_l("classical term", policy, |l| {
            let v = 0.5 * mode.degeneracy(l) * mode.f_zero(l)?;
            Ok(LTerm::new(v, 4.0 * f64::EPSILON * v.abs(), 0))
        })?;
        Ok(s)
    })
}

/// Zero-temperature energy `(1/2π) Σ_l d_l ∫_0^∞ f_l(ξ) dξ`.
#[allow(non_snake_case)]
pub fn zero_T_energy(
    geometry: &Geometry,
    pair: BoundaryPair,
    channel: ChannelSelection,
    policy: &TruncationPolicy,
) -> Result<EnergyResult> {
    policy.validate()?;
    let inner_tol = INNER_FRACTION * policy.rel_tol;
    combine(channel, 0.0, |pol| {
        let mode = ModeFunction::new(*geometry, pair, pol);
        let s = sum_over_l("zero-temperature energy", policy, |l| {
            let d = mode.degeneracy(l);
            let j = frequency_integral(&mode, l, inner_tol)?;
            Ok(LTerm::new(d * j.value, d * j.error, 0))
        })
        .map_err(|e| rescale_partial(e, 0.0, 1.0 / (2.0 * PI)))?;
        Ok(scale_sum(s, 1.0 / (2.0 * PI)))
    })
}

/// Zero temperature for `T = 0`, the Matsubara sum otherwise.
pub fn energy(
    geometry: &Geometry,
    pair: BoundaryPair,
    channel: ChannelSelection,
    temperature: f64,
    policy: &TruncationPolicy,
) -> Result<EnergyResult> {
    if temperature == 0.0 {
        zero_T_energy(geometry, pair, channel, policy)
    } else {
        free_energy(geometry, pair, channel, temperature, policy)
    }
}

/// `E(T) - E(0)`, subtracted term by term in `l`.
///
/// Both inner computations run at [`THERMAL_INNER_TOL`]; `rel_tol` then
/// applies to the correction itself.  The `l`-sum stops on the tail of
/// `|T S_l| + |J_l|/2π`, which dominates the differences.
pub fn thermal_correction(
    geometry: &Geometry,
    pair: BoundaryPair,
    channel: ChannelSelection,
    temperature: f64,
    policy: &TruncationPolicy,
) -> Result<EnergyResult> {
    policy.validate()?;
    check_temperature(temperature)?;
    let mut out = combine(channel, temperature, |pol| {
        let mode = ModeFunction::new(*geometry, pair, pol);
        sum_over_l("thermal correction", policy, |l| {
            let d = mode.degeneracy(l);
            let s = matsubara_sum(&mode, l, temperature, THERMAL_INNER_TOL, policy.p_max_hard, policy.fixed_p)?;
            let j = frequency_integral(&mode, l, THERMAL_INNER_TOL)?;
            let hot = temperature * s.value;
            let cold = j.value / (2.0 * PI);
            Ok(LTerm {
                value: d * (hot - cold),
                error: d * (temperature * s.error + j.error / (2.0 * PI)),
                p_used: s.count,
                bound: d * (hot.abs() + cold.abs()),
            })
        })
        .map_err(|e| rescale_partial(e, temperature, 1.0))
    })?;
    if out.value.abs() < 10.0 * out.error_estimate {
        out.warnings.push(format!(
            "thermal correction {:e} is within 10x of its error estimate {:e}; digits are not trustworthy",
            out.value, out.error_estimate
        ));
    }
    Ok(out)
}

/// Put the partial sum carried by a non-convergence error in the same units
/// as the successful result.
fn rescale_partial(e: Error, temperature: f64, factor: f64) -> Error {
    match e {
        Error::NonConvergence { what, detail, partial } => Error::NonConvergence {
            what,
            detail,
            partial: partial.map(|p| {
                let mut p = Box::new(p.scale(factor));
                p.temperature = temperature;
                p
            }),
        },
        other => other,
    }
}
