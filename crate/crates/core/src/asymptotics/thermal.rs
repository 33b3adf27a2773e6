//! Leading low-temperature thermal correction, `T → 0` with `a2 T ≪ 1`.
//!
//! Only `l = 1` contributes at order `T^{D+1}`, and the result depends on the
//! inner sphere alone.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::modes::{bc_coefficients_f64, check_dim, degeneracy_f64, BoundaryCondition, ChannelSelection};
use crate::specfun::{gamma_fn, riemann_zeta};

fn check(a1: f64, temperature: f64) -> Result<()> {
    if !(a1 > 0.0 && a1.is_finite()) {
        return Err(Error::domain("thermal_leading", format!("a1 must be positive, got {a1}")));
    }
    if !(temperature >= 0.0 && temperature.is_finite()) {
        return Err(Error::domain("thermal_leading", format!("temperature must be non-negative, got {temperature}")));
    }
    Ok(())
}

/// `Γ((D+1)/2)/Γ(D/2) · ζ(D+1) (a1 T)^{D+1} / (√π a1)`.
fn scale(dim: u32, a1: f64, temperature: f64) -> Result<f64> {
    let d = f64::from(dim);
    let ratio = gamma_fn(0.5 * (d + 1.0))? / gamma_fn(0.5 * d)?;
    Ok(ratio * riemann_zeta(d + 1.0)? * (a1 * temperature).powi(dim as i32 + 1) / (PI.sqrt() * a1))
}

/// Leading term of `E(T) - E(0)`:
/// `-d_1/(√π a1) · Γ((D+1)/2)/Γ(D/2) · (2α+βD)/(2α-βD) · ζ(D+1) (a1T)^{D+1}`
/// summed over the selected channels, with `(α, β)` the inner Robin coefficients.
pub fn thermal_leading(
    dim: u32,
    inner: BoundaryCondition,
    channel: ChannelSelection,
    a1: f64,
    temperature: f64,
) -> Result<f64> {
    check_dim(dim)?;
    check(a1, temperature)?;
    let d = f64::from(dim);
    let s = scale(dim, a1, temperature)?;
    Ok(channel
        .polarizations()
        .iter()
        .map(|&pol| {
            let (a, b) = bc_coefficients_f64(pol, inner, dim);
            -degeneracy_f64(pol, 1, dim) * (2.0 * a + b * d) / (2.0 * a - b * d) * s
        })
        .sum())
}

/// PFA estimate of the leading thermal force: the parallel-plate force
/// density times the inner sphere's area.
pub fn pfa_thermal_force(dim: u32, a1: f64, temperature: f64) -> Result<f64> {
    check_dim(dim)?;
    check(a1, temperature)?;
    Ok(-2.0 * (f64::from(dim) - 1.0) * scale(dim, a1, temperature)? / a1)
}

/// `-∂/∂a1` of the total [`thermal_leading`].  The leading term does not
/// depend on `a2`, so the force on the outer sphere vanishes at this order.
pub fn exact_thermal_force_leading(dim: u32, inner: BoundaryCondition, a1: f64, temperature: f64) -> Result<f64> {
    let e = thermal_leading(dim, inner, ChannelSelection::Total, a1, temperature)?;
    Ok(-f64::from(dim) * e / a1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use BoundaryCondition::{InfinitelyPermeable as IP, PerfectlyConducting as PC};

    #[test]
    fn three_dimensions_any_inner() {
        let want = PI.powi(3) / 15.0;
        for inner in [PC, IP] {
            let e = thermal_leading(3, inner, ChannelSelection::Total, 1.0, 1.0).unwrap();
            assert!((e / want - 1.0).abs() < 1e-14, "{inner:?}");
        }
    }

    #[test]
    fn conducting_inner_closed_forms() {
        for dim in 3..=10 {
            let d = f64::from(dim);
            let s = scale(dim, 1.3, 0.2).unwrap();
            let te = thermal_leading(dim, PC, ChannelSelection::TE, 1.3, 0.2).unwrap();
            let tm = thermal_leading(dim, PC, ChannelSelection::TM, 1.3, 0.2).unwrap();
            let tot = thermal_leading(dim, PC, ChannelSelection::Total, 1.3, 0.2).unwrap();
            assert!((te / (-d * (d - 1.0) / 2.0 * s) - 1.0).abs() < 1e-13);
            assert!((tm / te + 2.0).abs() < 1e-13);
            assert!((tot / (d * (d - 1.0) / 2.0 * s) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn permeable_inner_closed_forms() {
        for dim in 4..=10 {
            let d = f64::from(dim);
            let s = scale(dim, 0.8, 0.1).unwrap();
            let te = thermal_leading(dim, IP, ChannelSelection::TE, 0.8, 0.1).unwrap();
            let tm = thermal_leading(dim, IP, ChannelSelection::TM, 0.8, 0.1).unwrap();
            assert!((te / (d * (d - 1.0) / (d - 2.0) * s) - 1.0).abs() < 1e-13);
            assert!((tm / (-d * s) - 1.0).abs() < 1e-13);
            assert!(((te + tm) / (d / (d - 2.0) * s) - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn four_dimensions_numeric() {
        // 4·3/(2√π) · Γ(5/2)/Γ(2) · ζ(5)
        let zeta5 = 1.036_927_755_143_369_9;
        let want = 6.0 / PI.sqrt() * (0.75 * PI.sqrt()) * zeta5;
        let e = thermal_leading(4, PC, ChannelSelection::Total, 1.0, 1.0).unwrap();
        assert!((e / want - 1.0).abs() < 1e-14);
    }

    #[test]
    fn force_ratio() {
        for dim in 3..=8 {
            let exact = exact_thermal_force_leading(dim, PC, 1.0, 0.3).unwrap();
            let pfa = pfa_thermal_force(dim, 1.0, 0.3).unwrap();
            let d = f64::from(dim);
            assert!((exact / pfa - d * d / 4.0).abs() < 1e-13);
            assert!(exact < 0.0);
        }
        let e3 = exact_thermal_force_leading(3, PC, 1.0, 1.0).unwrap();
        assert!((e3 / (-3.0 * PI.powi(3) / 15.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn independent_of_scale_form() {
        let a = thermal_leading(5, IP, ChannelSelection::Total, 2.0, 0.05).unwrap();
        let b = thermal_leading(5, IP, ChannelSelection::Total, 1.0, 0.1).unwrap();
        // (a1 T)^{D+1} / a1 at equal a1 T
        assert!((a * 2.0 / b - 1.0).abs() < 1e-13);
        assert!(thermal_leading(3, PC, ChannelSelection::Total, -1.0, 0.1).is_err());
    }
}
