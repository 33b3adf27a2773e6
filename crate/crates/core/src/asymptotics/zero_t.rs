//! Small-gap expansion of the zero-temperature energy.

use std::f64::consts::PI;

use super::pfa::prefactor;
use super::{eta_ratio, ExpansionSeries, Regime, SeriesTerm, POLE_TERM};
use crate::error::Result;
use crate::modes::{check_dim, BoundaryCondition, BoundaryPair, ChannelSelection};
use crate::specfun::riemann_zeta;

/// Three-term expansion of the zero-temperature energy at `a1 = 1`.
///
/// At `D = 3` the `ε²` coefficient contains a contribution from the pole of
/// the `ν`-sum at `z = 1`, stored as a separate term labelled
/// [`POLE_TERM`](super::POLE_TERM).
#[allow(non_snake_case)]
pub fn zero_T_expansion(dim: u32, pair: BoundaryPair, channel: ChannelSelection) -> Result<ExpansionSeries> {
    check_dim(dim)?;
    let pre = prefactor(dim, pair, Regime::ZeroT, channel)?;
    let terms = if dim == 3 {
        three_dim(pair, channel)
    } else {
        general(f64::from(dim), pair, channel)?
    };
    Ok(ExpansionSeries::new(pre, Regime::ZeroT, pair, channel, dim, terms))
}

/// Relative terms for real `D > 3`.
pub(crate) fn general(d: f64, pair: BoundaryPair, channel: ChannelSelection) -> Result<Vec<SeriesTerm>> {
    let mut t = vec![
        SeriesTerm::new(1, 0.5 * (d - 1.0), "universal"),
        SeriesTerm::new(2, (d - 1.0) * (3.0 * d * d - 2.0 * d - 17.0) / (24.0 * (d + 2.0)), "universal"),
    ];
    let d2 = d * d;
    let d3 = d2 * d;
    let d4 = d3 * d;
    let pc = pair.inner == BoundaryCondition::PerfectlyConducting;
    if pair.is_homogeneous() {
        let x = match (pc, channel) {
            (true, ChannelSelection::TE) => (d4 - 4.0 * d3 + 20.0 * d2 + 76.0 * d - 21.0) / (6.0 * d * (d - 1.0) * (d + 2.0)),
            (true, ChannelSelection::TM) => (d4 - 4.0 * d3 - 16.0 * d2 + 4.0 * d + 87.0) / (6.0 * d * (d + 2.0) * (d - 1.0)),
            (true, ChannelSelection::Total) => {
                (d4 - 4.0 * d3 + 20.0 * d2 + 40.0 * d - 129.0) / (6.0 * d * (d + 2.0) * (d - 1.0))
            }
            (false, ChannelSelection::TE) => (d3 - 3.0 * d2 + 29.0 * d + 57.0) / (6.0 * d * (d + 2.0)),
            (false, ChannelSelection::TM) => (d2 - 7.0) * (d - 3.0) / (6.0 * d * (d + 2.0)),
            (false, ChannelSelection::Total) => {
                (d4 - 4.0 * d3 + 32.0 * d2 - 8.0 * d - 93.0) / (6.0 * d * (d + 2.0) * (d - 1.0))
            }
        };
        let r = riemann_zeta(d - 1.0)? / riemann_zeta(d + 1.0)?;
        t.push(SeriesTerm::new(2, -x * r, "ζ(D-1)/ζ(D+1)"));
        return Ok(t);
    }

    let s = if pc { 1.0 } else { -1.0 };
    let dd = d * (d - 1.0) * (d + 2.0);
    let (b0, c1, c0) = match channel {
        ChannelSelection::TE => (
            2.0 * (d2 - 4.0 * d + 1.0) / (d * (d - 1.0)),
            if pc {
                (5.0 * d3 - 15.0 * d2 - 59.0 * d - 15.0) / (6.0 * d * (d + 2.0))
            } else {
                -(7.0 * d4 - 28.0 * d3 + 8.0 * d2 + 148.0 * d - 63.0) / (6.0 * dd)
            },
            2.0 * (d4 - 6.0 * d3 + 2.0 * d2 + 28.0 * d - 13.0) / (dd * (d - 2.0)),
        ),
        ChannelSelection::TM => (
            2.0 * (d2 - 2.0 * d - 1.0) / (d * (d - 1.0)),
            if pc {
                (5.0 * d3 - 3.0 * d2 - 23.0 * d + 9.0) / (6.0 * d * (d + 2.0))
            } else {
                -(7.0 * d4 - 16.0 * d3 - 40.0 * d2 + 64.0 * d + 57.0) / (6.0 * dd)
            },
            2.0 * (d + 1.0) * (d3 - 3.0 * d2 - 3.0 * d + 11.0) / (dd * (d - 2.0)),
        ),
        ChannelSelection::Total => (
            2.0 * (d - 3.0) / d,
            if pc {
                (5.0 * d4 - 20.0 * d3 - 32.0 * d2 + 80.0 * d + 39.0) / (6.0 * dd)
            } else {
                -(7.0 * d4 - 28.0 * d3 + 20.0 * d2 + 112.0 * d - 183.0) / (6.0 * dd)
            },
            2.0 * (d4 - 6.0 * d3 + 6.0 * d2 + 24.0 * d - 37.0) / (dd * (d - 2.0)),
        ),
    };
    // (2^D - 4) ζ(D-1) / ((2^D - 1) ζ(D+1)) and the same with 16, D-3
    let r = eta_ratio(d - 1.0, d + 1.0)?;
    let r3 = eta_ratio(d - 3.0, d + 1.0)?;
    t.push(SeriesTerm::new(1, s * b0 * r, "η(D-1)/η(D+1)"));
    t.push(SeriesTerm::new(2, c1 * r, "η(D-1)/η(D+1)"));
    t.push(SeriesTerm::new(2, c0 * r3, "η(D-3)/η(D+1)"));
    Ok(t)
}

fn three_dim(pair: BoundaryPair, channel: ChannelSelection) -> Vec<SeriesTerm> {
    let pi2 = PI * PI;
    let mut t = Vec::new();
    if pair.is_homogeneous() {
        // TE with conducting walls behaves like TM with permeable ones
        let c = match (channel, pair.inner) {
            (ChannelSelection::Total, _) => 7.0 / 4.0,
            (ChannelSelection::TE, BoundaryCondition::PerfectlyConducting)
            | (ChannelSelection::TM, BoundaryCondition::InfinitelyPermeable) => -5.0 / 4.0,
            _ => 19.0 / 4.0,
        };
        t.push(SeriesTerm::new(1, 1.0, "universal"));
        t.push(SeriesTerm::new(2, 1.0 / 15.0, "universal"));
        t.push(SeriesTerm::new(2, c / pi2, "ζ(D-1)/ζ(D+1)"));
        t.push(SeriesTerm::new(2, -55.0 / (4.0 * pi2), POLE_TERM));
        return t;
    }
    let te_like = matches!(
        (channel, pair.inner),
        (ChannelSelection::TE, BoundaryCondition::PerfectlyConducting)
            | (ChannelSelection::TM, BoundaryCondition::InfinitelyPermeable)
    );
    let (b, c) = match channel {
        ChannelSelection::Total => (0.0, 1.0),
        _ if te_like => (-40.0 / 7.0, -13.0 / 7.0),
        _ => (40.0 / 7.0, 27.0 / 7.0),
    };
    t.push(SeriesTerm::new(1, 1.0, "universal"));
    if b != 0.0 {
        t.push(SeriesTerm::new(1, b / pi2, "η(D-1)/η(D+1)"));
    }
    t.push(SeriesTerm::new(2, 1.0 / 15.0, "universal"));
    t.push(SeriesTerm::new(2, c / pi2, "η(D-1)/η(D+1)"));
    t.push(SeriesTerm::new(2, 192.0 / (7.0 * pi2 * pi2), "η(D-3)/η(D+1)"));
    t.push(SeriesTerm::new(2, -55.0 / (7.0 * pi2), POLE_TERM));
    t
}
