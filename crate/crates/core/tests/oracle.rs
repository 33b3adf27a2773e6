//! Comparison against golden values from `tests/oracle/generate.py`
//! (30-digit mpmath evaluations of the defining formulas).

use std::fs;
use std::path::PathBuf;

use concentric_casimir::energy::{classical_term, energy, f_l, m_ratio, Geometry, TruncationPolicy};
use concentric_casimir::specfun::{bessel_log, dirichlet_eta, gamma_fn, recip_gamma, riemann_zeta};
use concentric_casimir::{BoundaryPair, ChannelSelection, Polarization};

fn table(name: &str) -> Vec<Vec<String>> {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    text.lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::to_owned).collect())
        .collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or_else(|_| panic!("bad number {s}"))
}

fn pol(s: &str) -> Polarization {
    if s == "te" {
        Polarization::TE
    } else {
        Polarization::TM
    }
}

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs().max(1e-300)
}

#[test]
fn constants() {
    for row in table("constants.csv") {
        let x = num(&row[1]);
        let want = num(&row[2]);
        let got = match row[0].as_str() {
            "zeta" => riemann_zeta(x).unwrap(),
            "eta" => dirichlet_eta(x).unwrap(),
            "gamma" => gamma_fn(x).unwrap(),
            "rgamma" => recip_gamma(x),
            other => panic!("unknown function {other}"),
        };
        assert!((got - want).abs() <= 1e-14 * want.abs(), "{}({x}) = {got}, want {want}", row[0]);
    }
}

#[test]
fn bessel_logs() {
    for row in table("bessel.csv") {
        let (nu, z) = (num(&row[0]), num(&row[1]));
        let b = bessel_log(nu, z).unwrap();
        // absolute in the logarithm is relative in the function
        for (got, want, what) in [(b.ln_i, num(&row[2]), "ln I"), (b.ln_k, num(&row[3]), "ln K")] {
            assert!((got - want).abs() <= 1e-13 * want.abs().max(1.0), "{what} ν={nu} z={z}: {got} {want}");
        }
        for (got, want, what) in [(b.zdi, num(&row[4]), "zI'/I"), (b.zdk, num(&row[5]), "zK'/K")] {
            assert!((got - want).abs() <= 1e-13 * want.abs().max(1e-3), "{what} ν={nu} z={z}: {got} {want}");
        }
    }
}

#[test]
fn mode_function() {
    let mut n = 0;
    for row in table("f_l.csv") {
        let dim: u32 = row[0].parse().unwrap();
        let pair: BoundaryPair = row[1].parse().unwrap();
        let p = pol(&row[2]);
        let g = Geometry::from_eps(num(&row[3]), dim).unwrap();
        let l: u32 = row[4].parse().unwrap();
        let xi = num(&row[5]);
        let (m, f) = (num(&row[6]), num(&row[7]));
        let got = f_l(l, &g, pair, p, xi).unwrap();
        assert!(close(got, f, 1e-11), "f D={dim} {pair} {p} {row:?}: {got}");
        if xi > 0.0 {
            let got = m_ratio(l, &g, pair, p, xi).unwrap();
            assert!(close(got, m, 1e-11), "M D={dim} {pair} {p} {row:?}: {got}");
        }
        n += 1;
    }
    assert!(n > 500);
}

#[test]
fn classical_sums() {
    let policy = TruncationPolicy::with_rel_tol(1e-13);
    for row in table("classical.csv") {
        let dim: u32 = row[0].parse().unwrap();
        let pair: BoundaryPair = row[1].parse().unwrap();
        let g = Geometry::from_eps(num(&row[2]), dim).unwrap();
        let r = classical_term(&g, pair, ChannelSelection::Total, &policy).unwrap();
        let (te, tm) = (num(&row[3]), num(&row[4]));
        assert!(close(r.te.unwrap(), te, 1e-12), "TE {row:?}: {r:?}");
        assert!(close(r.tm.unwrap(), tm, 1e-12), "TM {row:?}: {r:?}");
        assert!((r.value - te - tm).abs() <= r.error_estimate + 1e-14 * r.value.abs());
    }
}

#[test]
fn energies() {
    let policy = TruncationPolicy::with_rel_tol(1e-11);
    for row in table("energy.csv") {
        let dim: u32 = row[0].parse().unwrap();
        let pair: BoundaryPair = row[1].parse().unwrap();
        let g = Geometry::from_eps(num(&row[2]), dim).unwrap();
        let t = num(&row[3]);
        let r = energy(&g, pair, ChannelSelection::Total, t, &policy).unwrap();
        let (te, tm) = (num(&row[4]), num(&row[5]));
        assert!(close(r.te.unwrap(), te, 1e-10), "TE {row:?}: {r:?}");
        assert!(close(r.tm.unwrap(), tm, 1e-10), "TM {row:?}: {r:?}");
        assert!((r.value - (te + tm)).abs() <= 3.0 * r.error_estimate + 1e-12 * r.value.abs(), "{row:?}: {r:?}");
    }
}
