//! Small-gap asymptotics: proximity-force approximations, the three-term
//! expansions of the classical and zero-temperature energies, and the
//! low-temperature leading thermal terms.
//!
//! An expansion is stored as a PFA prefactor times a list of relative terms
//! `c ε^k` or `c ε^k ln ε`.  Coefficients that involve ratios of zeta
//! functions are written with the Dirichlet eta function, which keeps them
//! finite at the dimensions where `ζ(s)` alone would hit its pole
//! (`(2^D - 32) ζ(D-4)` at `D = 5`, for instance).

mod assembly;
mod high_t;
mod pfa;
mod thermal;
mod zero_t;

use std::fmt;

pub use assembly::{assembled_zero_T, assembly_residual, expansion_coefficient_functions, CoefficientFunctions};
pub use high_t::{high_T_expansion, high_T_expansion_with, LnEpsReading};
pub use pfa::{parallel_plate_density, pfa_energy, pfa_force, sphere_area};
pub use thermal::{exact_thermal_force_leading, pfa_thermal_force, thermal_leading};
pub use zero_t::zero_T_expansion;

use crate::error::{Error, Result};
use crate::modes::{BoundaryPair, ChannelSelection};

/// Largest gap at which a series is evaluated.
pub const MAX_EPS: f64 = 0.5;

/// Label of the `ε²` term coming from the `z = 1` pole at `D = 3`.
pub const POLE_TERM: &str = "z = 1 pole";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// The `p = 0` Matsubara term, `E ≈ T × classical`.
    HighT,
    ZeroT,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::HighT => "highT",
            Regime::ZeroT => "zeroT",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `coefficient · ε^power`, times `ln ε` when `ln_eps` is set.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesTerm {
    pub power: u32,
    pub ln_eps: bool,
    pub coefficient: f64,
    /// Where the term comes from, e.g. `"ζ(D-2)/ζ(D)"`.
    pub label: &'static str,
}

impl SeriesTerm {
    pub(crate) fn new(power: u32, coefficient: f64, label: &'static str) -> Self {
        Self {
            power,
            ln_eps: false,
            coefficient,
            label,
        }
    }

    pub(crate) fn log(power: u32, coefficient: f64, label: &'static str) -> Self {
        Self {
            power,
            ln_eps: true,
            coefficient,
            label,
        }
    }

    pub fn eval(&self, eps: f64) -> f64 {
        let v = self.coefficient * eps.powi(self.power as i32);
        if self.ln_eps {
            v * eps.ln()
        } else {
            v
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionSeries {
    /// Coefficient of `ε^leading_power` at `a1 = 1`; per unit temperature in
    /// the high-temperature regime.
    pub prefactor: f64,
    /// `-D` at zero temperature, `1 - D` in the classical regime.
    pub leading_power: i32,
    /// Starts with `1 · ε⁰`.
    pub terms: Vec<SeriesTerm>,
    pub regime: Regime,
    pub pair: BoundaryPair,
    pub channel: ChannelSelection,
    pub dim: u32,
}

impl ExpansionSeries {
    pub(crate) fn new(
        prefactor: f64,
        regime: Regime,
        pair: BoundaryPair,
        channel: ChannelSelection,
        dim: u32,
        mut terms: Vec<SeriesTerm>,
    ) -> Self {
        terms.insert(0, SeriesTerm::new(0, 1.0, "pfa"));
        let leading_power = match regime {
            Regime::ZeroT => -(dim as i32),
            Regime::HighT => 1 - dim as i32,
        };
        Self {
            prefactor,
            leading_power,
            terms,
            regime,
            pair,
            channel,
            dim,
        }
    }

    /// Sum of the coefficients of `ε^power` (or `ε^power ln ε`).
    pub fn coefficient(&self, power: u32, ln_eps: bool) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.power == power && t.ln_eps == ln_eps)
            .map(|t| t.coefficient)
            .sum()
    }

    /// The bracket `1 + c1 ε + ...`, without the prefactor.
    pub fn relative(&self, eps: f64) -> Result<f64> {
        check_eps(eps)?;
        Ok(self.terms.iter().map(|t| t.eval(eps)).sum())
    }

    /// Dimensionless value: `E a1` at zero temperature, `E / T` in the
    /// classical regime.
    pub fn evaluate(&self, eps: f64) -> Result<f64> {
        Ok(self.prefactor * eps.powi(self.leading_power) * self.relative(eps)?)
    }

    /// Energy at inner radius `a1` and temperature `temperature` (ignored at
    /// zero temperature).
    pub fn energy(&self, a1: f64, eps: f64, temperature: f64) -> Result<f64> {
        let v = self.evaluate(eps)?;
        Ok(match self.regime {
            Regime::ZeroT => v / a1,
            Regime::HighT => v * temperature,
        })
    }

    /// `-∂E/∂d` at fixed `a1`, differentiating the truncated series.
    pub fn force(&self, a1: f64, eps: f64, temperature: f64) -> Result<f64> {
        check_eps(eps)?;
        let mut slope = 0.0;
        for t in &self.terms {
            let q = f64::from(self.leading_power) + f64::from(t.power);
            let base = t.coefficient * eps.powf(q - 1.0);
            slope += if t.ln_eps { base * (q * eps.ln() + 1.0) } else { base * q };
        }
        let dv = self.prefactor * slope;
        Ok(-match self.regime {
            Regime::ZeroT => dv / (a1 * a1),
            Regime::HighT => dv * temperature / a1,
        })
    }

    /// The same series with every term carrying `label` removed.
    pub fn without(&self, label: &str) -> Self {
        let mut out = self.clone();
        out.terms.retain(|t| t.label != label);
        out
    }
}

fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0) {
        return Err(Error::domain("ExpansionSeries", format!("ε must be positive, got {eps}")));
    }
    if eps > MAX_EPS {
        return Err(Error::OutOfRegime { eps, max: MAX_EPS });
    }
    Ok(())
}

/// `η(a)/η(b)`.
pub(crate) fn eta_ratio(a: f64, b: f64) -> Result<f64> {
    use crate::specfun::dirichlet_eta;
    Ok(dirichlet_eta(a)? / dirichlet_eta(b)?)
}

#[cfg(test)]
mod tests;
