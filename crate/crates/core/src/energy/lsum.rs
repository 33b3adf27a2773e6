//! Adaptive summation over the angular momentum `l`.
//!
//! Terms are evaluated in parallel blocks, then accumulated strictly in
//! ascending `l` so that the result does not depend on the thread count.

use rayon::prelude::*;

use super::{EnergyResult, TruncationPolicy};
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

const BLOCK: u32 = 16;
const WINDOW: usize = 5;

/// Contribution of one `l`, already multiplied by its degeneracy.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct LTerm {
    pub value: f64,
    pub error: f64,
    pub p_used: u32,
    /// Dominates `|value|` and decays smoothly in `l`; drives the tail test.
    pub bound: f64,
}

impl LTerm {
    pub fn new(value: f64, error: f64, p_used: u32) -> Self {
        Self {
            value,
            error,
            p_used,
            bound: value.abs(),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct LSum {
    pub value: f64,
    pub error: f64,
    pub l_used: u32,
    pub p_used: u32,
}

impl LSum {
    pub fn into_result(self, temperature: f64) -> EnergyResult {
        EnergyResult {
            value: self.value,
            l_used: self.l_used,
            p_used: self.p_used,
            error_estimate: self.error,
            temperature,
            ..Default::default()
        }
    }
}

/// Geometric bound on the tail beyond the last (non-negative) term, from the
/// largest ratio of consecutive entries in the trailing window.
fn geometric_tail(terms: &[f64]) -> Option<f64> {
    let n = terms.len();
    if n < WINDOW {
        return None;
    }
    let window = &terms[n - WINDOW..];
    let last = window[WINDOW - 1];
    if last == 0.0 {
        return Some(0.0);
    }
    let mut ratio: f64 = 0.0;
    for pair in window.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        if a == 0.0 {
            return None;
        }
        ratio = ratio.max(b / a);
    }
    if ratio >= 1.0 {
        None
    } else {
        Some(last * ratio / (1.0 - ratio))
    }
}

pub(crate) fn sum_over_l<F>(what: &'static str, policy: &TruncationPolicy, term: F) -> Result<LSum>
where
    F: Fn(u32) -> Result<LTerm> + Sync,
{
    let mut acc = CompensatedSum::new();
    let mut err = CompensatedSum::new();
    let mut bounds: Vec<f64> = Vec::new();
    let mut p_used = 0;
    let mut next = 1u32;
    let cap = policy.fixed_l.unwrap_or(policy.l_max_hard);
    loop {
        let end = (next + BLOCK - 1).min(cap);
        let block: Vec<Result<LTerm>> = (next..=end).into_par_iter().map(&term).collect();
        for (offset, t) in block.into_iter().enumerate() {
            let t = t?;
            acc.add(t.value);
            err.add(t.error);
            bounds.push(t.bound);
            p_used = p_used.max(t.p_used);
            let l = next + offset as u32;
            if policy.fixed_l.is_some() {
                if l == cap {
                    return Ok(LSum {
                        value: acc.value(),
                        error: err.value(),
                        l_used: l,
                        p_used,
                    });
                }
                continue;
            }
            let total = acc.value();
            let n = bounds.len();
            if n < WINDOW {
                continue;
            }
            let recent: f64 = bounds[n - WINDOW..].iter().sum();
            // terms below the accumulated error of the inner sums cannot matter
            let threshold = (policy.rel_tol * total.abs()).max(err.value());
            if recent > threshold && recent > 0.0 {
                continue;
            }
            if let Some(tail) = geometric_tail(&bounds) {
                if tail <= 0.5 * threshold || tail == 0.0 {
                    let sign = t.value.signum();
                    let value = if policy.tail_extrapolation { total + sign * tail } else { total };
                    return Ok(LSum {
                        value,
                        error: err.value() + tail,
                        l_used: l,
                        p_used,
                    });
                }
            }
        }
        if end >= cap {
            let partial = LSum {
                value: acc.value(),
                error: err.value() + bounds.last().copied().unwrap_or(0.0),
                l_used: end,
                p_used,
            };
            return Err(Error::NonConvergence {
                what,
                detail: format!("l reached the hard cap {cap} before rel_tol {:e} was met", policy.rel_tol),
                partial: Some(Box::new(partial.into_result(0.0))),
            });
        }
        next = end + 1;
    }
}
