//! Evaluation of each mode over the configured grid.

use std::f64::consts::PI;

use concentric_casimir::asymptotics::{
    high_T_expansion, pfa_energy, pfa_force, zero_T_expansion, ExpansionSeries, Regime, MAX_EPS,
};
use concentric_casimir::energy::{energy, force, EnergyResult, Geometry, TruncationPolicy};
use concentric_casimir::{BoundaryPair, ChannelSelection, Error};
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::rows::{CompareRow, ConvergenceRow, Method, Point, ResultRow, NONCONVERGED, OK};

/// Rows plus the diagnostics that go to standard error.
#[derive(Debug)]
pub struct Outcome<R> {
    pub rows: Vec<R>,
    pub notes: Vec<String>,
    /// Some value did not converge or could not be computed.
    pub numerical_failure: bool,
}

impl<R> Default for Outcome<R> {
    fn default() -> Self {
        Self {
            rows: Vec::new(),
            notes: Vec::new(),
            numerical_failure: false,
        }
    }
}

impl<R> Outcome<R> {
    fn merge(mut self, other: Self) -> Self {
        self.rows.extend(other.rows);
        self.notes.extend(other.notes);
        self.numerical_failure |= other.numerical_failure;
        self
    }

    fn fail(&mut self, at: &Case, what: &str, e: &Error) {
        self.notes.push(format!("{}: {what}: {e}", at.label()));
        self.numerical_failure = true;
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Case {
    pub dim: u32,
    pub eps: f64,
    pub temperature: f64,
    pub pair: BoundaryPair,
    pub channel: ChannelSelection,
}

impl Case {
    fn label(&self) -> String {
        format!(
            "D={} eps={} T={} {} {}",
            self.dim, self.eps, self.temperature, self.pair, self.channel
        )
    }

    fn point(&self, g: &Geometry) -> Point {
        Point {
            dim: self.dim,
            a1: g.a1,
            a2: g.a2,
            eps: self.eps,
            temperature: self.temperature,
            bc_inner: self.pair.inner.to_string(),
            bc_outer: self.pair.outer.to_string(),
            channel: self.channel.name().to_string(),
        }
    }
}

pub fn cases(cfg: &RunConfig) -> Vec<Case> {
    let mut out = Vec::new();
    for &dim in &cfg.dims {
        for &eps in &cfg.eps {
            for &temperature in &cfg.temps {
                for &pair in &cfg.pairs {
                    for &channel in &cfg.channels {
                        out.push(Case {
                            dim,
                            eps,
                            temperature,
                            pair,
                            channel,
                        });
                    }
                }
            }
        }
    }
    out
}

/// Zero temperature, or thermal wavelength long against the gap, selects the
/// zero-temperature approximations; otherwise the classical ones.
pub fn regime(gap: f64, temperature: f64) -> Regime {
    if temperature == 0.0 || 2.0 * PI * gap * temperature < 1.0 {
        Regime::ZeroT
    } else {
        Regime::HighT
    }
}

fn series(case: &Case, regime: Regime) -> concentric_casimir::Result<ExpansionSeries> {
    match regime {
        Regime::ZeroT => zero_T_expansion(case.dim, case.pair, case.channel),
        Regime::HighT => high_T_expansion(case.dim, case.pair, case.channel),
    }
}

/// Converged result, or the partial sum of a non-converged one.
fn exact(g: &Geometry, case: &Case, policy: &TruncationPolicy) -> Result<(EnergyResult, bool), Error> {
    match energy(g, case.pair, case.channel, case.temperature, policy) {
        Ok(r) => Ok((r, true)),
        Err(Error::NonConvergence { partial: Some(p), .. }) => Ok((*p, false)),
        Err(e) => Err(e),
    }
}

fn approximations(cfg: &RunConfig, case: &Case, g: &Geometry, out: &mut Outcome<ResultRow>) {
    let regime = regime(g.gap(), case.temperature);
    let weight = case.channel.pfa_weight(case.dim);
    let row = |method, energy, force| ResultRow {
        point: case.point(g),
        method,
        energy,
        force,
        l_used: None,
        p_used: None,
        error_estimate: None,
        status: OK.into(),
    };
    match pfa_energy(g, case.pair, regime, case.temperature) {
        Ok(e) => {
            let f = if cfg.force {
                pfa_force(g, case.pair, regime, case.temperature).ok().map(|f| f * weight)
            } else {
                None
            };
            out.rows.push(row(Method::Pfa, e * weight, f));
        }
        Err(e) => out.fail(case, "pfa", &e),
    }
    if case.eps > MAX_EPS {
        return;
    }
    let s = series(case, regime);
    match s.and_then(|s| Ok((s.energy(g.a1, case.eps, case.temperature)?, s))) {
        Ok((e, s)) => {
            let f = if cfg.force { s.force(g.a1, case.eps, case.temperature).ok() } else { None };
            out.rows.push(row(Method::Expansion, e, f));
        }
        Err(e) => out.fail(case, "expansion", &e),
    }
}

fn result_rows(cfg: &RunConfig, case: &Case) -> Outcome<ResultRow> {
    let mut out = Outcome::default();
    let g = match Geometry::with_radius(cfg.a1, case.eps, case.dim) {
        Ok(g) => g,
        Err(e) => {
            out.fail(case, "geometry", &e);
            return out;
        }
    };
    match exact(&g, case, &cfg.policy) {
        Ok((r, converged)) => {
            let mut status = if converged { OK } else { NONCONVERGED };
            if !converged {
                out.notes.push(format!("{}: exact energy did not converge; partial sum reported", case.label()));
                out.numerical_failure = true;
            }
            for w in &r.warnings {
                out.notes.push(format!("{}: {w}", case.label()));
            }
            let mut f = None;
            if cfg.force && converged {
                match force(&g, case.pair, case.channel, case.temperature, &cfg.policy) {
                    Ok(fr) => f = Some(fr.value),
                    Err(e) => {
                        out.fail(case, "force", &e);
                        status = NONCONVERGED;
                    }
                }
            }
            out.rows.push(ResultRow {
                point: case.point(&g),
                method: Method::Exact,
                energy: r.value,
                force: f,
                l_used: Some(r.l_used),
                p_used: Some(r.p_used),
                error_estimate: Some(r.error_estimate),
                status: status.into(),
            });
        }
        Err(e) => out.fail(case, "exact", &e),
    }
    approximations(cfg, case, &g, &mut out);
    out
}

fn sorted<R: crate::rows::Row>(mut o: Outcome<R>) -> Outcome<R> {
    o.rows.sort_by(|a, b| a.order(b));
    o.notes.sort();
    o
}

/// Exact, PFA and expansion rows for every grid point.
pub fn results(cfg: &RunConfig) -> Outcome<ResultRow> {
    let o = cases(cfg)
        .par_iter()
        .map(|c| result_rows(cfg, c))
        .reduce(Outcome::default, Outcome::merge);
    sorted(o)
}

fn compare_row(cfg: &RunConfig, case: &Case) -> Outcome<CompareRow> {
    let mut out = Outcome::default();
    let inner = result_rows(&RunConfig { force: false, ..cfg.clone() }, case);
    out.notes = inner.notes;
    out.numerical_failure = inner.numerical_failure;
    let pick = |m: Method| inner.rows.iter().find(|r| r.method == m);
    let (Some(ex), Some(pfa)) = (pick(Method::Exact), pick(Method::Pfa)) else {
        return out;
    };
    let expansion = pick(Method::Expansion).map(|r| r.energy);
    let ratio = ex.energy / pfa.energy;
    out.rows.push(CompareRow {
        point: ex.point.clone(),
        regime: regime(ex.point.a2 - ex.point.a1, case.temperature).to_string(),
        exact: ex.energy,
        pfa: pfa.energy,
        expansion,
        exact_over_pfa: ratio,
        first_correction: (ratio - 1.0) / case.eps,
        exact_over_expansion: expansion.map(|e| ex.energy / e),
        error_estimate: ex.error_estimate.unwrap_or(0.0),
        status: ex.status.clone(),
    });
    out
}

pub fn compare(cfg: &RunConfig) -> Outcome<CompareRow> {
    let o = cases(cfg)
        .par_iter()
        .map(|c| compare_row(cfg, c))
        .reduce(Outcome::default, Outcome::merge);
    sorted(o)
}

/// Tolerances `1e-3, 5e-4, ...`, halving down to `target`.
pub fn tolerance_ladder(target: f64) -> Vec<f64> {
    let mut out = vec![];
    let mut t = 1e-3;
    while t > target * (1.0 + 1e-9) {
        out.push(t);
        t *= 0.5;
    }
    out.push(target);
    out
}

fn convergence_rows(cfg: &RunConfig, case: &Case) -> Outcome<ConvergenceRow> {
    let mut out = Outcome::default();
    let g = match Geometry::with_radius(cfg.a1, case.eps, case.dim) {
        Ok(g) => g,
        Err(e) => {
            out.fail(case, "geometry", &e);
            return out;
        }
    };
    let levels: Vec<_> = tolerance_ladder(cfg.policy.rel_tol)
        .into_par_iter()
        .map(|tol| (tol, exact(&g, case, &TruncationPolicy { rel_tol: tol, ..cfg.policy })))
        .collect();
    let mut prev: Option<EnergyResult> = None;
    for (tol, r) in levels {
        match r {
            Ok((r, converged)) => {
                if !converged {
                    out.notes.push(format!("{}: no convergence at rel_tol {tol:e}", case.label()));
                    out.numerical_failure = true;
                }
                let change = prev.as_ref().map(|p| r.value - p.value);
                let within_bound = prev.as_ref().map(|p| (r.value - p.value).abs() <= 3.0 * p.error_estimate);
                out.rows.push(ConvergenceRow {
                    point: case.point(&g),
                    rel_tol: tol,
                    energy: r.value,
                    l_used: r.l_used,
                    p_used: r.p_used,
                    error_estimate: r.error_estimate,
                    change,
                    within_bound,
                    status: if converged { OK } else { NONCONVERGED }.into(),
                });
                prev = Some(r);
            }
            Err(e) => out.fail(case, &format!("rel_tol {tol:e}"), &e),
        }
    }
    out
}

pub fn convergence(cfg: &RunConfig) -> Outcome<ConvergenceRow> {
    let o = cases(cfg)
        .par_iter()
        .map(|c| convergence_rows(cfg, c))
        .reduce(Outcome::default, Outcome::merge);
    sorted(o)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Cli, RunConfig};
    use clap::Parser;

    fn cfg(args: &[&str]) -> RunConfig {
        RunConfig::resolve(&Cli::try_parse_from(std::iter::once("casimir").chain(args.iter().copied())).unwrap()).unwrap()
    }

    #[test]
    fn regime_rule() {
        assert_eq!(regime(0.1, 0.0), Regime::ZeroT);
        assert_eq!(regime(0.1, 1.0), Regime::ZeroT);
        assert_eq!(regime(0.1, 2.0), Regime::HighT);
    }

    #[test]
    fn ladder_halves_down_to_target() {
        let l = tolerance_ladder(1e-4);
        assert_eq!(l.first(), Some(&1e-3));
        assert_eq!(l.last(), Some(&1e-4));
        assert!(l.windows(2).all(|w| w[1] < w[0] && w[1] >= 0.5 * w[0]));
        assert_eq!(tolerance_ladder(1e-3), vec![1e-3]);
    }

    #[test]
    fn point_gives_three_methods() {
        let o = results(&cfg(&["--rel-tol", "1e-6"]));
        let methods: Vec<Method> = o.rows.iter().map(|r| r.method).collect();
        assert_eq!(methods, vec![Method::Exact, Method::Pfa, Method::Expansion]);
        assert!(!o.numerical_failure);
        let e = o.rows[0].energy;
        let s = o.rows[2].energy;
        // the expansion is good to O(ε³) relative
        assert!((e / s - 1.0).abs() < 2e-3, "{e} {s}");
    }

    #[test]
    fn large_gaps_have_no_expansion_row() {
        let o = results(&cfg(&["--eps", "0.8", "--rel-tol", "1e-6"]));
        assert_eq!(o.rows.len(), 2);
    }

    #[test]
    fn channel_rows_add_up() {
        let o = results(&cfg(&["--mode", "sweep", "--channel", "te,tm,total", "--temp", "0.5", "--rel-tol", "1e-8"]));
        let get = |ch: &str, m: Method| o.rows.iter().find(|r| r.point.channel == ch && r.method == m).unwrap().energy;
        for m in [Method::Exact, Method::Pfa, Method::Expansion] {
            let (te, tm, tot) = (get("te", m), get("tm", m), get("total", m));
            assert!((te + tm - tot).abs() < 1e-7 * tot.abs(), "{m:?}");
        }
    }

    #[test]
    fn hard_cap_marks_rows() {
        let o = results(&cfg(&["--eps", "0.02", "--l-max", "5"]));
        assert!(o.numerical_failure);
        assert_eq!(o.rows[0].status, NONCONVERGED);
        assert!(o.rows[0].energy.is_finite());
    }
}
