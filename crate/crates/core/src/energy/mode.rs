use super::Geometry;
use crate::error::{Error, Result};
use crate::modes::{bc_coefficients_f64, degeneracy_f64, nu, BoundaryPair, Polarization};
use crate::specfun::bessel::{bessel_log, robin_from, BesselKind};
use crate::specfun::SignedLog;

/// `1 - M_l` below this is treated as unresolvable.
pub const ONE_MINUS_M_FLOOR: f64 = 1e-12;

/// `ln(1 - e^x)` for `x < 0`, accurate at both ends.
fn ln_one_minus_exp(x: f64, l: u32, xi: f64) -> Result<f64> {
    if x < -std::f64::consts::LN_2 {
        return Ok((-x.exp()).ln_1p());
    }
    let one_minus = -x.exp_m1();
    if one_minus < ONE_MINUS_M_FLOOR {
        return Err(Error::PrecisionLoss {
            l,
            xi,
            one_minus_m: one_minus,
        });
    }
    Ok(one_minus.ln())
}

/// The scattering data of one polarization between the two spheres.
#[derive(Debug, Clone, Copy)]
pub struct ModeFunction {
    pub geometry: Geometry,
    pub pair: BoundaryPair,
    pub polarization: Polarization,
    inner: (f64, f64),
    outer: (f64, f64),
}

impl ModeFunction {
    pub fn new(geometry: Geometry, pair: BoundaryPair, polarization: Polarization) -> Self {
        Self {
            geometry,
            pair,
            polarization,
            inner: bc_coefficients_f64(polarization, pair.inner, geometry.dim),
            outer: bc_coefficients_f64(polarization, pair.outer, geometry.dim),
        }
    }

    pub fn nu(&self, l: u32) -> f64 {
        nu(l, self.geometry.dim)
    }

    pub fn degeneracy(&self, l: u32) -> f64 {
        degeneracy_f64(self.polarization, l, self.geometry.dim)
    }

    /// `M_l(ξ)` in signed-log form, for `ξ > 0`.
    pub fn log_m(&self, l: u32, xi: f64) -> Result<SignedLog> {
        if !(xi > 0.0 && xi.is_finite()) {
            return Err(Error::domain("m_ratio", format!("ξ must be positive and finite, got {xi}")));
        }
        let v = self.nu(l);
        let b1 = bessel_log(v, self.geometry.a1 * xi)?;
        let b2 = bessel_log(v, self.geometry.a2 * xi)?;
        let (al1, be1) = self.inner;
        let (al2, be2) = self.outer;
        let num = robin_from(&b1, al1, be1, BesselKind::I)? * robin_from(&b2, al2, be2, BesselKind::K)?;
        let den = robin_from(&b1, al1, be1, BesselKind::K)? * robin_from(&b2, al2, be2, BesselKind::I)?;
        Ok(num / den)
    }

    pub fn m_ratio(&self, l: u32, xi: f64) -> Result<f64> {
        Ok(self.log_m(l, xi)?.to_f64())
    }

    /// `f_l(ξ) = ln(1 - M_l(ξ))`; the closed form is used at `ξ = 0`.
    pub fn f(&self, l: u32, xi: f64) -> Result<f64> {
        if xi == 0.0 {
            return self.f_zero(l);
        }
        let m = self.log_m(l, xi)?;
        match m.sign() {
            0 => Ok(0.0),
            1 => ln_one_minus_exp(m.log_magnitude(), l, xi),
            _ => Ok(m.log_magnitude().exp().ln_1p()),
        }
    }

    /// `(α1+β1ν)(α2-β2ν) / ((α1-β1ν)(α2+β2ν))`
    pub fn zero_frequency_factor(&self, l: u32) -> f64 {
        let v = self.nu(l);
        let (al1, be1) = self.inner;
        let (al2, be2) = self.outer;
        (al1 + be1 * v) * (al2 - be2 * v) / ((al1 - be1 * v) * (al2 + be2 * v))
    }

    /// `f_l(0) = ln(1 - c (a1/a2)^{2ν})`.
    pub fn f_zero(&self, l: u32) -> Result<f64> {
        let c = self.zero_frequency_factor(l);
        let q = -2.0 * self.nu(l) * self.geometry.alpha_log();
        if c == 1.0 {
            ln_one_minus_exp(q, l, 0.0)
        } else {
            Ok((-c * q.exp()).ln_1p())
        }
    }

    /// Lower bound on the exponential decay rate of `|f_l(ξ)|` beyond `ξ`.
    pub(crate) fn decay_rate(&self, l: u32, xi: f64) -> f64 {
        let v = self.nu(l) / xi;
        let (a1, a2) = (self.geometry.a1, self.geometry.a2);
        // 2(√(a2²+ν²/ξ²) - √(a1²+ν²/ξ²)) written without cancellation
        2.0 * (a2 * a2 - a1 * a1) / (a2.hypot(v) + a1.hypot(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modes::BoundaryPair;
    use std::f64::consts::PI;

    fn i32_closed(z: f64) -> f64 {
        (2.0 / (PI * z)).sqrt() * (z.cosh() - z.sinh() / z)
    }

    fn k32_closed(z: f64) -> f64 {
        (PI / (2.0 * z)).sqrt() * (-z).exp() * (1.0 + 1.0 / z)
    }

    #[test]
    fn half_integer_m_ratio() {
        let g = Geometry::new(1.0, 2.0, 3).unwrap();
        let m = ModeFunction::new(g, BoundaryPair::PC_PC, Polarization::TE);
        let expected = i32_closed(1.0) * k32_closed(2.0) / (i32_closed(2.0) * k32_closed(1.0));
        assert!((m.m_ratio(1, 1.0).unwrap() - expected).abs() < 1e-14 * expected);
    }

    #[test]
    fn zero_frequency_closed_form() {
        let g = Geometry::new(1.0, 2.0, 3).unwrap();
        let hom = ModeFunction::new(g, BoundaryPair::PC_PC, Polarization::TM);
        assert!((hom.f_zero(1).unwrap() - (1.0 - 0.125f64).ln()).abs() < 1e-15);
        let mixed = ModeFunction::new(g, BoundaryPair::PC_IP, Polarization::TM);
        assert!((mixed.f_zero(1).unwrap() - 1.25f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn small_frequency_approaches_closed_form() {
        let g = Geometry::new(1.0, 1.3, 4).unwrap();
        for pair in BoundaryPair::ALL {
            for pol in Polarization::BOTH {
                let m = ModeFunction::new(g, pair, pol);
                for l in [1, 3, 9] {
                    let a = m.f(l, 1e-7).unwrap();
                    let b = m.f_zero(l).unwrap();
                    assert!((a - b).abs() < 1e-9 * b.abs(), "{pair} {pol} l={l}: {a} {b}");
                }
            }
        }
    }

    #[test]
    fn signs_and_decay() {
        let g = Geometry::new(1.0, 1.2, 5).unwrap();
        for pair in BoundaryPair::ALL {
            for pol in Polarization::BOTH {
                let m = ModeFunction::new(g, pair, pol);
                for &xi in &[0.0, 0.3, 4.0, 40.0] {
                    let f = m.f(2, xi).unwrap();
                    if pair.is_homogeneous() {
                        assert!(f < 0.0);
                    } else {
                        assert!(f > 0.0);
                    }
                }
                assert!(m.f(2, 2000.0).unwrap().abs() < 1e-100);
            }
        }
    }

    #[test]
    fn infinite_outer_radius() {
        let g = Geometry::new(1.0, 1e3, 3).unwrap();
        let m = ModeFunction::new(g, BoundaryPair::PC_PC, Polarization::TE);
        assert!(m.m_ratio(1, 1.0).unwrap() < 1e-300);
    }

    #[test]
    fn precision_loss_reported() {
        let g = Geometry::from_eps(1e-14, 3).unwrap();
        let m = ModeFunction::new(g, BoundaryPair::PC_PC, Polarization::TE);
        assert!(matches!(m.f_zero(1), Err(Error::PrecisionLoss { .. })));
    }
}
