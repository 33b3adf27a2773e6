use crate::error::{Error, Result};
use crate::quadrature::{integrate, QuadratureOptions};

/// λ_{μ,ν} = ∫₀^∞ u^μ / (e^u + 1)^ν du.
///
/// The range is cut where the bound `∫_X^∞ u^μ e^{-νu} du` drops below 1e-17
/// of the (lower-bounded) value, and the remainder integrated adaptively.
pub fn lambda_integral(mu: u32, nu: u32) -> Result<f64> {
    if nu == 0 {
        return Err(Error::domain("lambda_integral", "ν must be at least 1"));
    }
    let (m, n) = (f64::from(mu), f64::from(nu));
    // the integrand is at least u^μ e^{-νu} 2^{-ν}, so Γ(μ+1)/(2^ν ν^{μ+1}) is a lower bound
    let lower = super::gamma::ln_gamma(m + 1.0)? - n * 2f64.ln() - (m + 1.0) * n.ln();
    let mut cut = (m + 1.0) / n + 1.0;
    while tail_bound_ln(m, n, cut) > lower + (1e-17f64).ln() {
        cut *= 1.25;
    }
    let opts = QuadratureOptions {
        rel_tol: 1e-14,
        ..Default::default()
    };
    let integrand = |u: f64| -> Result<f64> {
        let log_den = n * (u + (-u).exp().ln_1p());
        Ok(if u == 0.0 {
            if mu == 0 { 2f64.powf(-n) } else { 0.0 }
        } else {
            (m * u.ln() - log_den).exp()
        })
    };
    // split at the peak of u^μ e^{-νu} to help the adaptive scheme
    let peak = (m / n).clamp(0.0, cut);
    let mut value = 0.0;
    for (a, b) in [(0.0, peak), (peak, cut)] {
        if b > a {
            value += integrate(integrand, a, b, &opts)?.value;
        }
    }
    Ok(value)
}

/// ln of an upper bound for ∫_X^∞ u^μ e^{-νu} du, valid for X > μ/ν.
fn tail_bound_ln(m: f64, n: f64, x: f64) -> f64 {
    // u^μ e^{-νu} ≤ X^μ e^{-νX} e^{-(ν - μ/X)(u - X)}
    let rate = n - m / x;
    if rate <= 0.0 {
        return f64::INFINITY;
    }
    m * x.ln() - n * x - rate.ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn closed_forms() {
        assert_relative_eq!(lambda_integral(0, 1).unwrap(), 2f64.ln(), max_relative = 1e-13);
        assert_relative_eq!(lambda_integral(1, 1).unwrap(), PI * PI / 12.0, max_relative = 1e-13);
        // ∫ du/(e^u+1)^2 = ln 2 - 1/2
        assert_relative_eq!(lambda_integral(0, 2).unwrap(), 2f64.ln() - 0.5, max_relative = 1e-13);
    }

    #[test]
    fn mu2_nu2() {
        // closed form 3ζ(3)/2 - π²/6
        let zeta3 = 1.202_056_903_159_594_3;
        assert_relative_eq!(lambda_integral(2, 2).unwrap(), 1.5 * zeta3 - PI * PI / 6.0, max_relative = 1e-12);
    }

    #[test]
    fn rejects_zero_power() {
        assert!(lambda_integral(1, 0).is_err());
    }
}
