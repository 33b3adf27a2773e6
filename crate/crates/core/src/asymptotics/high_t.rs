//! Small-gap expansion of the classical (`p = 0`) term.

use super::pfa::prefactor;
use super::{eta_ratio, ExpansionSeries, Regime, SeriesTerm};
use crate::error::Result;
use crate::modes::{check_dim, BoundaryCondition, BoundaryPair, ChannelSelection};
use crate::specfun::riemann_zeta;

/// Power of `ε` multiplying the logarithm in the `D = 3` mixed series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LnEpsReading {
    /// `ln ε` at order `ε⁰`.
    Bare,
    /// `ε² ln ε`, as in the homogeneous case.  Matches the exact classical term.
    #[default]
    EpsSquared,
}

impl LnEpsReading {
    pub fn name(self) -> &'static str {
        match self {
            LnEpsReading::Bare => "ln(eps)",
            LnEpsReading::EpsSquared => "eps^2 ln(eps)",
        }
    }

    fn power(self) -> u32 {
        match self {
            LnEpsReading::Bare => 0,
            LnEpsReading::EpsSquared => 2,
        }
    }
}

/// Three-term expansion of the classical term, per unit temperature.
#[allow(non_snake_case)]
pub fn high_T_expansion(dim: u32, pair: BoundaryPair, channel: ChannelSelection) -> Result<ExpansionSeries> {
    high_T_expansion_with(dim, pair, channel, LnEpsReading::default())
}

/// As [`high_T_expansion`], choosing how the logarithm of the `D = 3` mixed
/// series is read.  The reading is ignored elsewhere.
#[allow(non_snake_case)]
pub fn high_T_expansion_with(
    dim: u32,
    pair: BoundaryPair,
    channel: ChannelSelection,
    reading: LnEpsReading,
) -> Result<ExpansionSeries> {
    check_dim(dim)?;
    let pre = prefactor(dim, pair, Regime::HighT, channel)?;
    let terms = if dim == 3 {
        three_dim(pair, channel, reading)?
    } else if pair.is_homogeneous() {
        homogeneous(f64::from(dim), channel)?
    } else {
        mixed(f64::from(dim), pair.inner, channel)?
    };
    Ok(ExpansionSeries::new(pre, Regime::HighT, pair, channel, dim, terms))
}

fn universal(d: f64) -> [SeriesTerm; 2] {
    [
        SeriesTerm::new(1, 0.5 * (d - 1.0), "universal"),
        SeriesTerm::new(2, (3.0 * d - 8.0) * (d - 1.0) / 24.0, "universal"),
    ]
}

fn homogeneous(d: f64, channel: ChannelSelection) -> Result<Vec<SeriesTerm>> {
    let h = match channel {
        ChannelSelection::TE => (d * d - 6.0 * d + 32.0) / (6.0 * (d - 2.0)),
        ChannelSelection::TM => (d - 4.0) / 6.0,
        ChannelSelection::Total => (d * d - 5.0 * d + 28.0) / (6.0 * (d - 1.0)),
    };
    let r = riemann_zeta(d - 2.0)? / riemann_zeta(d)?;
    let mut t = universal(d).to_vec();
    t.push(SeriesTerm::new(2, -h * r, "ζ(D-2)/ζ(D)"));
    Ok(t)
}

fn mixed(d: f64, inner: BoundaryCondition, channel: ChannelSelection) -> Result<Vec<SeriesTerm>> {
    // (2^D - 8) ζ(D-2) / ((2^D - 2) ζ(D)) and the same with 32, D-4
    let r2 = eta_ratio(d - 2.0, d)?;
    let r4 = eta_ratio(d - 4.0, d)?;
    let pc = inner == BoundaryCondition::PerfectlyConducting;
    let s = if pc { 1.0 } else { -1.0 };
    let (b0, c1, c0) = match channel {
        ChannelSelection::TE => (
            2.0 * (d - 4.0) / (d - 2.0),
            if pc {
                (5.0 * d * d - 30.0 * d + 16.0) / (6.0 * (d - 2.0))
            } else {
                -(7.0 * d * d - 42.0 * d + 80.0) / (6.0 * (d - 2.0))
            },
            2.0 * (d - 4.0).powi(2) / ((d - 2.0) * (d - 3.0)),
        ),
        ChannelSelection::TM => (
            2.0,
            if pc { (5.0 * d - 8.0) / 6.0 } else { -(7.0 * d - 16.0) / 6.0 },
            2.0 * (d - 2.0) / (d - 3.0),
        ),
        ChannelSelection::Total => (
            2.0 * (d - 3.0) / (d - 1.0),
            if pc {
                (5.0 * d * d - 25.0 * d + 8.0) / (6.0 * (d - 1.0))
            } else {
                -(7.0 * d * d - 35.0 * d + 64.0) / (6.0 * (d - 1.0))
            },
            2.0 * (d * d - 7.0 * d + 14.0) / ((d - 1.0) * (d - 3.0)),
        ),
    };
    let mut t = universal(d).to_vec();
    t.push(SeriesTerm::new(1, s * b0 * r2, "η(D-2)/η(D)"));
    t.push(SeriesTerm::new(2, c1 * r2, "η(D-2)/η(D)"));
    t.push(SeriesTerm::new(2, c0 * r4, "η(D-4)/η(D)"));
    Ok(t)
}

fn three_dim(pair: BoundaryPair, channel: ChannelSelection, reading: LnEpsReading) -> Result<Vec<SeriesTerm>> {
    let z3 = riemann_zeta(3.0)?;
    let mut t = vec![SeriesTerm::new(1, 1.0, "universal")];
    if pair.is_homogeneous() {
        t.push(SeriesTerm::log(2, 11.0 / (6.0 * z3), "log"));
        return Ok(t);
    }
    // TE of a conducting inner sphere and TM of a permeable one share a series
    let te_like = matches!(
        (channel, pair.inner),
        (ChannelSelection::TE, BoundaryCondition::PerfectlyConducting)
            | (ChannelSelection::TM, BoundaryCondition::InfinitelyPermeable)
    );
    let shift = 8.0 * std::f64::consts::LN_2 / (3.0 * z3);
    match channel {
        ChannelSelection::Total => {}
        _ => t.push(SeriesTerm::new(1, if te_like { -shift } else { shift }, "η(D-2)/η(D)")),
    }
    t.push(SeriesTerm::log(reading.power(), -2.0 / (3.0 * z3), "log"));
    Ok(t)
}
