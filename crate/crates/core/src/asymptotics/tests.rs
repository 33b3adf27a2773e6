use std::f64::consts::{LN_2, PI};

use super::*;
use crate::energy::{classical_term, Geometry, TruncationPolicy};
use crate::specfun::riemann_zeta;

const CHANNELS: [ChannelSelection; 3] = [ChannelSelection::TE, ChannelSelection::TM, ChannelSelection::Total];

#[allow(non_snake_case)]
fn both(dim: u32, pair: BoundaryPair, ch: ChannelSelection) -> [ExpansionSeries; 2] {
    [
        high_T_expansion(dim, pair, ch).unwrap(),
        zero_T_expansion(dim, pair, ch).unwrap(),
    ]
}

#[test]
fn prefactors_match_pfa() {
    for dim in 3..=16 {
        for pair in BoundaryPair::ALL {
            let g = Geometry::from_eps(0.01, dim).unwrap();
            let [hi, lo] = both(dim, pair, ChannelSelection::Total);
            let e = pfa_energy(&g, pair, Regime::HighT, 0.7).unwrap();
            let s = hi.prefactor * 0.7 * 0.01f64.powi(hi.leading_power);
            assert!((s / e - 1.0).abs() < 1e-12, "D={dim} {pair}");
            let e = pfa_energy(&g, pair, Regime::ZeroT, 0.0).unwrap();
            let s = lo.prefactor * 0.01f64.powi(lo.leading_power);
            assert!((s / e - 1.0).abs() < 1e-12, "D={dim} {pair}");
            for series in [&hi, &lo] {
                assert_eq!(series.terms[0], SeriesTerm::new(0, 1.0, "pfa"));
                assert!(series.terms.iter().all(|t| t.coefficient.is_finite()), "{series:?}");
            }
        }
    }
}

#[test]
fn channel_weights() {
    for dim in 3..=9 {
        for pair in BoundaryPair::ALL {
            let [t, _] = both(dim, pair, ChannelSelection::Total);
            let [te, _] = both(dim, pair, ChannelSelection::TE);
            let [tm, _] = both(dim, pair, ChannelSelection::TM);
            let d = f64::from(dim);
            assert!((te.prefactor / t.prefactor - (d - 2.0) / (d - 1.0)).abs() < 1e-14);
            assert!((tm.prefactor / t.prefactor - 1.0 / (d - 1.0)).abs() < 1e-14);
        }
    }
}

#[test]
fn totals_are_weighted_channel_sums() {
    for dim in 3..=12 {
        let d = f64::from(dim);
        let (wte, wtm) = ((d - 2.0) / (d - 1.0), 1.0 / (d - 1.0));
        for pair in BoundaryPair::ALL {
            for k in 0..2 {
                let [te, tm, tot] = CHANNELS.map(|c| both(dim, pair, c)[k].clone());
                for (p, ln) in [(0, true), (1, false), (2, false), (2, true)] {
                    let want = wte * te.coefficient(p, ln) + wtm * tm.coefficient(p, ln);
                    let got = tot.coefficient(p, ln);
                    assert!((got - want).abs() < 1e-12 * (1.0 + want.abs()), "D={dim} {pair} k={k} ε^{p}: {got} {want}");
                }
            }
        }
    }
}

#[test]
fn first_correction_is_universal_for_homogeneous() {
    for dim in 3..=16 {
        for pair in [BoundaryPair::PC_PC, BoundaryPair::IP_IP] {
            for ch in CHANNELS {
                for s in both(dim, pair, ch) {
                    assert!((s.coefficient(1, false) - 0.5 * (f64::from(dim) - 1.0)).abs() < 1e-14);
                }
            }
        }
    }
}

#[test]
fn conducting_inner_mixed_is_stronger() {
    let ch = ChannelSelection::Total;
    for dim in 4..=16 {
        let pc = both(dim, BoundaryPair::PC_IP, ch);
        let ip = both(dim, BoundaryPair::IP_PC, ch);
        for k in 0..2 {
            for eps in [0.01, 0.05, 0.1] {
                let a = pc[k].evaluate(eps).unwrap();
                let b = ip[k].evaluate(eps).unwrap();
                assert!(a > b && b > 0.0, "D={dim} k={k} ε={eps}");
            }
        }
    }
}

#[test]
fn duality_at_three_dimensions() {
    for (a, b) in [(BoundaryPair::PC_PC, BoundaryPair::IP_IP), (BoundaryPair::PC_IP, BoundaryPair::IP_PC)] {
        for k in 0..2 {
            let x = both(3, a, ChannelSelection::TE)[k].clone();
            let y = both(3, b, ChannelSelection::TM)[k].clone();
            assert_eq!(x.prefactor, y.prefactor);
            for (p, ln) in [(1, false), (2, false), (2, true)] {
                assert_eq!(x.coefficient(p, ln), y.coefficient(p, ln));
            }
        }
    }
}

#[test]
fn four_dimensional_classical_homogeneous() {
    let s = high_T_expansion(4, BoundaryPair::PC_PC, ChannelSelection::Total).unwrap();
    let z = riemann_zeta(2.0).unwrap() / riemann_zeta(4.0).unwrap();
    assert!((s.coefficient(1, false) - 1.5).abs() < 1e-15);
    assert!((s.coefficient(2, false) - (0.5 - 4.0 / 3.0 * z)).abs() < 1e-14);
}

#[test]
fn five_dimensional_mixed_uses_log_two() {
    let s = high_T_expansion(5, BoundaryPair::PC_IP, ChannelSelection::TM).unwrap();
    let z5 = riemann_zeta(5.0).unwrap();
    let c = s.terms.iter().find(|t| t.label == "η(D-4)/η(D)").unwrap().coefficient;
    // 2(D-2)/(D-3) · 32 ln 2 / ((2^D - 2) ζ(D))
    assert!((c - 3.0 * 32.0 * LN_2 / (30.0 * z5)).abs() < 1e-14);
}

#[test]
fn three_dimensional_zero_temperature_forms() {
    let eps: f64 = 0.1;
    let te = zero_T_expansion(3, BoundaryPair::PC_PC, ChannelSelection::TE).unwrap().without(POLE_TERM);
    let want = -PI.powi(3) / (360.0 * eps.powi(3)) * (1.0 + eps + eps * eps / 15.0 - 5.0 * eps * eps / (4.0 * PI * PI));
    assert!((te.evaluate(eps).unwrap() / want - 1.0).abs() < 1e-14);

    let tot = zero_T_expansion(3, BoundaryPair::PC_IP, ChannelSelection::Total).unwrap();
    let c2 = 1.0 / 15.0 + 1.0 / (PI * PI) + 192.0 / (7.0 * PI.powi(4));
    let want = 7.0 * PI.powi(3) / (1440.0 * eps.powi(3)) * (1.0 + eps + c2 * eps * eps);
    assert!((tot.without(POLE_TERM).evaluate(eps).unwrap() / want - 1.0).abs() < 1e-14);
    assert!((tot.coefficient(2, false) - (c2 - 55.0 / (7.0 * PI * PI))).abs() < 1e-14);

    let hom = zero_T_expansion(3, BoundaryPair::IP_IP, ChannelSelection::Total).unwrap();
    assert!((hom.coefficient(2, false) - (1.0 / 15.0 - 12.0 / (PI * PI))).abs() < 1e-14);
}

#[test]
fn evaluation_is_limited_to_small_gaps() {
    let s = zero_T_expansion(4, BoundaryPair::PC_PC, ChannelSelection::Total).unwrap();
    assert!(matches!(s.evaluate(0.6), Err(Error::OutOfRegime { .. })));
    assert!(s.evaluate(0.0).is_err());
    assert!(s.evaluate(0.5).is_ok());
    assert!(zero_T_expansion(17, BoundaryPair::PC_PC, ChannelSelection::Total).is_err());
    assert!(high_T_expansion(2, BoundaryPair::PC_PC, ChannelSelection::Total).is_err());
}

fn classical_ratio(dim: u32, pair: BoundaryPair, ch: ChannelSelection, eps: f64) -> f64 {
    let g = Geometry::from_eps(eps, dim).unwrap();
    let exact = classical_term(&g, pair, ch, &TruncationPolicy::with_rel_tol(1e-13)).unwrap().value;
    let s = high_T_expansion(dim, pair, ch).unwrap();
    exact / s.evaluate(eps).unwrap()
}

#[test]
fn classical_series_matches_exact_sum() {
    // the remainder is O(ε³)
    for dim in [4, 5, 6] {
        for pair in BoundaryPair::ALL {
            for ch in CHANNELS {
                let r1 = classical_ratio(dim, pair, ch, 0.01) - 1.0;
                let r2 = classical_ratio(dim, pair, ch, 0.005) - 1.0;
                assert!(r1.abs() < 2e-5, "D={dim} {pair} {ch}: {r1}");
                assert!((r1 / r2).abs() > 5.0, "D={dim} {pair} {ch}: {r1} {r2}");
            }
        }
    }
}

#[test]
fn three_dimensional_classical_log_reading() {
    for pair in [BoundaryPair::PC_IP, BoundaryPair::IP_PC, BoundaryPair::PC_PC] {
        for ch in CHANNELS {
            let r = classical_ratio(3, pair, ch, 1e-3) - 1.0;
            assert!(r.abs() < 1e-5, "{pair} {ch}: {r}");
        }
    }
    let bare = high_T_expansion_with(3, BoundaryPair::PC_IP, ChannelSelection::Total, LnEpsReading::Bare).unwrap();
    assert!((bare.coefficient(0, true) + 2.0 / (3.0 * riemann_zeta(3.0).unwrap())).abs() < 1e-15);
    let sq = high_T_expansion(3, BoundaryPair::IP_IP, ChannelSelection::TM).unwrap();
    assert_eq!(sq, high_T_expansion_with(3, BoundaryPair::IP_IP, ChannelSelection::TM, LnEpsReading::Bare).unwrap());
}

#[test]
fn three_dimensional_zero_temperature_remainder_is_cubic() {
    use crate::energy::zero_T_energy;
    let p = TruncationPolicy::with_rel_tol(1e-9);
    for pair in [BoundaryPair::PC_PC, BoundaryPair::PC_IP] {
        for ch in CHANNELS {
            let s = zero_T_expansion(3, pair, ch).unwrap();
            let r = [0.05, 0.025].map(|eps: f64| {
                let e = zero_T_energy(&Geometry::from_eps(eps, 3).unwrap(), pair, ch, &p).unwrap().value;
                (e / s.evaluate(eps).unwrap() - 1.0) / eps.powi(3)
            });
            assert!(r[0].abs() < 2.0 && (r[0] - r[1]).abs() < 0.1, "{pair} {ch}: {r:?}");
        }
    }
}

#[test]
fn series_force_matches_finite_difference() {
    let h = 1e-6;
    for (dim, pair) in [(3, BoundaryPair::PC_IP), (4, BoundaryPair::IP_IP), (3, BoundaryPair::PC_PC)] {
        for s in both(dim, pair, ChannelSelection::Total) {
            let (a1, eps, t) = (2.0, 0.08, 0.4);
            let fd = -(s.energy(a1, eps + h / a1, t).unwrap() - s.energy(a1, eps - h / a1, t).unwrap()) / (2.0 * h);
            let f = s.force(a1, eps, t).unwrap();
            assert!((f / fd - 1.0).abs() < 1e-7, "D={dim} {pair} {}: {f} {fd}", s.regime);
        }
    }
}
