use crate::error::{Error, Result};

/// Truncation of the doubly infinite mode sums.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    /// Target relative accuracy of the returned value.
    pub rel_tol: f64,
    pub l_max_hard: u32,
    pub p_max_hard: u32,
    /// Add the geometric estimate of the neglected `l`-tail to the value
    /// (it is always counted in the error estimate).
    pub tail_extrapolation: bool,
    /// Sum exactly `l = 1..=fixed_l`, bypassing the adaptive stopping rule.
    pub fixed_l: Option<u32>,
    /// Sum exactly `p = 1..=fixed_p` for every `l`.
    pub fixed_p: Option<u32>,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            l_max_hard: 20_000,
            p_max_hard: 1_000_000,
            tail_extrapolation: false,
            fixed_l: None,
            fixed_p: None,
        }
    }
}

impl TruncationPolicy {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Self {
            rel_tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol <= 1e-3) {
            return Err(Error::Config(format!("rel_tol must lie in (0, 1e-3], got {}", self.rel_tol)));
        }
        if self.l_max_hard == 0 || self.p_max_hard == 0 {
            return Err(Error::Config("hard truncation caps must be positive".into()));
        }
        if self.fixed_l == Some(0) {
            return Err(Error::Config("fixed_l must be at least 1".into()));
        }
        Ok(())
    }
}
