//! Output records.  CSV columns follow the field order; floats are written
//! in scientific notation with 17 significant digits.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Pfa,
    Expansion,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Pfa => "pfa",
            Method::Expansion => "expansion",
        }
    }
}

pub const OK: &str = "ok";
pub const NONCONVERGED: &str = "nonconverged";

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt<T>(x: Option<T>, f: impl Fn(T) -> String) -> String {
    x.map(f).unwrap_or_default()
}

/// The parameter point a row belongs to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Point {
    #[serde(rename = "D")]
    pub dim: u32,
    pub a1: f64,
    pub a2: f64,
    pub eps: f64,
    #[serde(rename = "T")]
    pub temperature: f64,
    pub bc_inner: String,
    pub bc_outer: String,
    pub channel: String,
}

impl Point {
    const HEADER: [&'static str; 8] = ["D", "a1", "a2", "eps", "T", "bc_inner", "bc_outer", "channel"];

    fn record(&self) -> Vec<String> {
        vec![
            self.dim.to_string(),
            real(self.a1),
            real(self.a2),
            real(self.eps),
            real(self.temperature),
            self.bc_inner.clone(),
            self.bc_outer.clone(),
            self.channel.clone(),
        ]
    }

    fn order(&self, other: &Self) -> Ordering {
        self.dim
            .cmp(&other.dim)
            .then(self.eps.total_cmp(&other.eps))
            .then(self.temperature.total_cmp(&other.temperature))
            .then_with(|| self.bc_inner.cmp(&other.bc_inner))
            .then_with(|| self.bc_outer.cmp(&other.bc_outer))
            .then_with(|| self.channel.cmp(&other.channel))
            .then(self.a1.total_cmp(&other.a1))
    }
}

pub trait Row: Serialize {
    fn header() -> Vec<&'static str>;
    fn record(&self) -> Vec<String>;
    fn order(&self, other: &Self) -> Ordering;
    /// Name of the document kind in JSON output.
    const KIND: &'static str;
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRow {
    #[serde(flatten)]
    pub point: Point,
    pub method: Method,
    pub energy: f64,
    pub force: Option<f64>,
    pub l_used: Option<u32>,
    pub p_used: Option<u32>,
    pub error_estimate: Option<f64>,
    pub status: String,
}

impl Row for ResultRow {
    const KIND: &'static str = "results";

    fn header() -> Vec<&'static str> {
        let mut h = Point::HEADER.to_vec();
        h.extend(["method", "energy", "force", "l_used", "p_used", "error_estimate", "status"]);
        h
    }

    fn record(&self) -> Vec<String> {
        let mut r = self.point.record();
        r.extend([
            self.method.name().to_string(),
            real(self.energy),
            opt(self.force, real),
            opt(self.l_used, |v| v.to_string()),
            opt(self.p_used, |v| v.to_string()),
            opt(self.error_estimate, real),
            self.status.clone(),
        ]);
        r
    }

    fn order(&self, other: &Self) -> Ordering {
        self.point.order(&other.point).then(self.method.cmp(&other.method))
    }
}

/// Exact against PFA and the small-gap expansion at one point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    #[serde(flatten)]
    pub point: Point,
    /// `zeroT` or `highT`: which PFA and expansion were used.
    pub regime: String,
    pub exact: f64,
    pub pfa: f64,
    pub expansion: Option<f64>,
    pub exact_over_pfa: f64,
    /// `(exact/pfa - 1)/eps`, which tends to the first-order coefficient.
    pub first_correction: f64,
    pub exact_over_expansion: Option<f64>,
    pub error_estimate: f64,
    pub status: String,
}

impl Row for CompareRow {
    const KIND: &'static str = "compare";

    fn header() -> Vec<&'static str> {
        let mut h = Point::HEADER.to_vec();
        h.extend([
            "regime",
            "exact",
            "pfa",
            "expansion",
            "exact_over_pfa",
            "first_correction",
            "exact_over_expansion",
            "error_estimate",
            "status",
        ]);
        h
    }

    fn record(&self) -> Vec<String> {
        let mut r = self.point.record();
        r.extend([
            self.regime.clone(),
            real(self.exact),
            real(self.pfa),
            opt(self.expansion, real),
            real(self.exact_over_pfa),
            real(self.first_correction),
            opt(self.exact_over_expansion, real),
            real(self.error_estimate),
            self.status.clone(),
        ]);
        r
    }

    fn order(&self, other: &Self) -> Ordering {
        self.point.order(&other.point)
    }
}

/// One tolerance level of a convergence study.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    #[serde(flatten)]
    pub point: Point,
    pub rel_tol: f64,
    pub energy: f64,
    pub l_used: u32,
    pub p_used: u32,
    /// Includes the certified bound on the neglected `l`-tail.
    pub error_estimate: f64,
    /// Change from the previous (looser) level.
    pub change: Option<f64>,
    /// `|change| <= 3 x` the previous level's error estimate.
    pub within_bound: Option<bool>,
    pub status: String,
}

impl Row for ConvergenceRow {
    const KIND: &'static str = "convergence";

    fn header() -> Vec<&'static str> {
        let mut h = Point::HEADER.to_vec();
        h.extend([
            "rel_tol",
            "energy",
            "l_used",
            "p_used",
            "error_estimate",
            "change",
            "within_bound",
            "status",
        ]);
        h
    }

    fn record(&self) -> Vec<String> {
        let mut r = self.point.record();
        r.extend([
            real(self.rel_tol),
            real(self.energy),
            self.l_used.to_string(),
            self.p_used.to_string(),
            real(self.error_estimate),
            opt(self.change, real),
            opt(self.within_bound, |b| b.to_string()),
            self.status.clone(),
        ]);
        r
    }

    fn order(&self, other: &Self) -> Ordering {
        self.point.order(&other.point).then(other.rel_tol.total_cmp(&self.rel_tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point() -> Point {
        Point {
            dim: 3,
            a1: 1.0,
            a2: 1.1,
            eps: 0.1,
            temperature: 0.0,
            bc_inner: "pc".into(),
            bc_outer: "ip".into(),
            channel: "total".into(),
        }
    }

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(real(0.1), "1.0000000000000001e-1");
        assert_eq!(real(-172.25), "-1.7225000000000000e2");
        let x = 0.123_456_789_012_345_68;
        assert_eq!(real(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn header_matches_fields() {
        let row = ResultRow {
            point: point(),
            method: Method::Pfa,
            energy: 1.5,
            force: None,
            l_used: None,
            p_used: None,
            error_estimate: None,
            status: OK.into(),
        };
        assert_eq!(ResultRow::header().len(), row.record().len());
        let json = serde_json::to_value(&row).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
        let mut want = ResultRow::header();
        want.sort_unstable();
        let mut keys = keys;
        keys.sort_unstable();
        assert_eq!(keys, want);
        assert_eq!(row.record()[8], "pfa");
        assert_eq!(row.record()[10], "");
    }

    #[test]
    fn sort_order() {
        let mut a = ResultRow {
            point: point(),
            method: Method::Expansion,
            energy: 0.0,
            force: None,
            l_used: None,
            p_used: None,
            error_estimate: None,
            status: OK.into(),
        };
        let mut b = a.clone();
        b.method = Method::Exact;
        assert_eq!(a.order(&b), Ordering::Greater);
        b.point.eps = 0.2;
        assert_eq!(a.order(&b), Ordering::Less);
        a.point.dim = 4;
        assert_eq!(a.order(&b), Ordering::Greater);
    }
}
