use crate::error::{Error, Result};
use crate::modes::check_dim;

/// Two concentric spheres of radii `a1 < a2` in `D` spatial dimensions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub a1: f64,
    pub a2: f64,
    pub dim: u32,
}

impl Geometry {
    pub fn new(a1: f64, a2: f64, dim: u32) -> Result<Self> {
        check_dim(dim)?;
        if !(a1.is_finite() && a1 > 0.0) {
            return Err(Error::Config(format!("a1 must be positive and finite, got {a1}")));
        }
        if !(a2.is_finite() && a2 > a1) {
            return Err(Error::Config(format!("a2 must be finite and larger than a1 = {a1}, got {a2}")));
        }
        Ok(Self { a1, a2, dim })
    }

    /// Inner radius 1 and outer radius `1 + eps`.
    pub fn from_eps(eps: f64, dim: u32) -> Result<Self> {
        Self::with_radius(1.0, eps, dim)
    }

    pub fn with_radius(a1: f64, eps: f64, dim: u32) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Config(format!("eps must be positive and finite, got {eps}")));
        }
        Self::new(a1, a1 * (1.0 + eps), dim)
    }

    /// `(a2 - a1)/a1`
    pub fn eps(&self) -> f64 {
        (self.a2 - self.a1) / self.a1
    }

    pub fn gap(&self) -> f64 {
        self.a2 - self.a1
    }

    /// `ln(a2/a1)`, computed without cancellation for small gaps.
    pub fn alpha_log(&self) -> f64 {
        self.eps().ln_1p()
    }

    /// The same geometry with both radii multiplied by `lambda`.
    pub fn scaled(&self, lambda: f64) -> Result<Self> {
        Self::new(self.a1 * lambda, self.a2 * lambda, self.dim)
    }

    pub fn with_a2(&self, a2: f64) -> Result<Self> {
        Self::new(self.a1, a2, self.dim)
    }
}
