//! CSV and JSON writers, and the golden-file comparison.

use std::collections::HashMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::{Format, RunConfig};
use crate::rows::{Method, Point, ResultRow, Row};

pub const GENERATOR: &str = concat!("casimir ", env!("CARGO_PKG_VERSION"));

/// Expansion regime rule, recorded in every header.
const REGIME_NOTE: &str = "approximations use the zero-temperature forms when T = 0 or 2 pi (a2 - a1) T < 1, \
                           the classical forms otherwise; expansions only for eps <= 0.5";

pub fn render<R: Row>(cfg: &RunConfig, rows: &[R]) -> io::Result<Vec<u8>> {
    match cfg.format {
        Format::Csv => csv_bytes(cfg, rows),
        Format::Json => json_bytes(cfg, rows),
    }
}

fn csv_bytes<R: Row>(cfg: &RunConfig, rows: &[R]) -> io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    writeln!(buf, "# {GENERATOR}")?;
    writeln!(buf, "# kind = {}", R::KIND)?;
    writeln!(buf, "# {REGIME_NOTE}")?;
    for (k, v) in cfg.metadata() {
        writeln!(buf, "# {k} = {v}")?;
    }
    let mut w = csv::Writer::from_writer(buf);
    w.write_record(R::header())?;
    for r in rows {
        w.write_record(r.record())?;
    }
    w.into_inner().map_err(|e| e.into_error())
}

fn json_bytes<R: Row>(cfg: &RunConfig, rows: &[R]) -> io::Result<Vec<u8>> {
    let config: Map<String, Value> = cfg.metadata().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let doc = json!({
        "generator": GENERATOR,
        "kind": R::KIND,
        "note": REGIME_NOTE,
        "config": config,
        "columns": R::header(),
        "rows": rows,
    });
    let mut buf = serde_json::to_vec_pretty(&doc)?;
    buf.push(b'\n');
    Ok(buf)
}

pub fn emit(cfg: &RunConfig, bytes: &[u8]) -> io::Result<()> {
    match &cfg.out {
        Some(p) => fs::write(p, bytes),
        None => io::stdout().lock().write_all(bytes),
    }
}

fn parse_csv_rows(text: &str) -> Result<Vec<ResultRow>, String> {
    let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers().map_err(|e| e.to_string())?.iter().map(str::to_owned).collect();
    if header != ResultRow::header() {
        return Err(format!("unexpected columns {header:?}"));
    }
    let mut out = Vec::new();
    for (i, rec) in rd.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let at = |k: usize| rec.get(k).unwrap_or("");
        let line = i + 1;
        let f = |k: usize| at(k).parse::<f64>().map_err(|_| format!("row {line}: bad number '{}'", at(k)));
        let of = |k: usize| if at(k).is_empty() { Ok(None) } else { f(k).map(Some) };
        let ou = |k: usize| {
            if at(k).is_empty() {
                Ok(None)
            } else {
                at(k).parse::<u32>().map(Some).map_err(|_| format!("row {line}: bad integer '{}'", at(k)))
            }
        };
        let method = match at(8) {
            "exact" => Method::Exact,
            "pfa" => Method::Pfa,
            "expansion" => Method::Expansion,
            other => return Err(format!("row {line}: unknown method '{other}'")),
        };
        out.push(ResultRow {
            point: Point {
                dim: at(0).parse().map_err(|_| format!("row {line}: bad D '{}'", at(0)))?,
                a1: f(1)?,
                a2: f(2)?,
                eps: f(3)?,
                temperature: f(4)?,
                bc_inner: at(5).to_owned(),
                bc_outer: at(6).to_owned(),
                channel: at(7).to_owned(),
            },
            method,
            energy: f(9)?,
            force: of(10)?,
            l_used: ou(11)?,
            p_used: ou(12)?,
            error_estimate: of(13)?,
            status: at(14).to_owned(),
        });
    }
    Ok(out)
}

/// Rows of a previous `point` or `sweep` output, CSV or JSON.
pub fn load_golden(path: &Path) -> Result<Vec<ResultRow>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let rows = if text.trim_start().starts_with('{') {
        let doc: Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
        if doc["kind"] != "results" {
            return Err("not a results document".into());
        }
        serde_json::from_value(doc["rows"].clone()).map_err(|e| e.to_string())?
    } else {
        parse_csv_rows(&text)?
    };
    Ok(rows)
}

type Key = (u32, u64, u64, u64, String, String, String, Method);

fn key(r: &ResultRow) -> Key {
    let p = &r.point;
    (
        p.dim,
        p.a1.to_bits(),
        p.eps.to_bits(),
        p.temperature.to_bits(),
        p.bc_inner.clone(),
        p.bc_outer.clone(),
        p.channel.clone(),
        r.method,
    )
}

/// Energy tolerance: three combined error estimates for exact rows, rounding
/// level for the closed forms.
fn tolerance(golden: &ResultRow, new: &ResultRow) -> f64 {
    let scale = golden.energy.abs().max(new.energy.abs());
    let est = golden.error_estimate.unwrap_or(0.0) + new.error_estimate.unwrap_or(0.0);
    3.0 * est + 1e-12 * scale
}

/// Human-readable mismatches; empty when everything agrees.
pub fn compare_golden(golden: &[ResultRow], new: &[ResultRow]) -> Vec<String> {
    let mut out = Vec::new();
    let stored: HashMap<Key, &ResultRow> = golden.iter().map(|r| (key(r), r)).collect();
    let mut seen = 0;
    for r in new {
        let label = || {
            let p = &r.point;
            format!("D={} eps={} T={} {}-{} {} {}", p.dim, p.eps, p.temperature, p.bc_inner, p.bc_outer, p.channel, r.method.name())
        };
        let Some(g) = stored.get(&key(r)) else {
            out.push(format!("{}: not in golden file", label()));
            continue;
        };
        seen += 1;
        let diff = (r.energy - g.energy).abs();
        let tol = tolerance(g, r);
        if !(diff <= tol) {
            out.push(format!("{}: energy {:e} vs golden {:e} (|diff| {diff:.2e} > {tol:.2e})", label(), r.energy, g.energy));
        }
        if let (Some(a), Some(b)) = (r.force, g.force) {
            if !((a - b).abs() <= 1e-6 * a.abs().max(b.abs())) {
                out.push(format!("{}: force {a:e} vs golden {b:e}", label()));
            }
        }
        if r.status != g.status {
            out.push(format!("{}: status {} vs golden {}", label(), r.status, g.status));
        }
    }
    if seen < golden.len() {
        out.push(format!("{} golden rows were not produced", golden.len() - seen));
    }
    out
}
