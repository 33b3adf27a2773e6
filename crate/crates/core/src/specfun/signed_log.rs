use std::fmt;
use std::ops::{Div, Mul};

/// A real number stored as `sign * exp(log_magnitude)`.
///
/// Zero is represented by `sign == 0` together with `log_magnitude == -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedLog {
    sign: i8,
    log_magnitude: f64,
}

impl SignedLog {
    pub const ZERO: SignedLog = SignedLog {
        sign: 0,
        log_magnitude: f64::NEG_INFINITY,
    };

    pub const ONE: SignedLog = SignedLog {
        sign: 1,
        log_magnitude: 0.0,
    };

    /// Build from a sign and the natural log of the magnitude.  A zero sign or
    /// a `-inf` magnitude both produce [`SignedLog::ZERO`].
    pub fn new(sign: i8, log_magnitude: f64) -> Self {
        if sign == 0 || log_magnitude == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            Self {
                sign: sign.signum(),
                log_magnitude,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        if x == 0.0 {
            Self::ZERO
        } else {
            Self::new(if x > 0.0 { 1 } else { -1 }, x.abs().ln())
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn log_magnitude(&self) -> f64 {
        self.log_magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    /// Convert back to a float; overflows to `±inf` and underflows to `±0`.
    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * self.log_magnitude.exp()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero SignedLog");
        Self {
            sign: self.sign,
            log_magnitude: -self.log_magnitude,
        }
    }

    pub fn scale_log(&self, log_factor: f64) -> Self {
        Self::new(self.sign, self.log_magnitude + log_factor)
    }
}

impl Mul for SignedLog {
    type Output = SignedLog;

    fn mul(self, rhs: SignedLog) -> SignedLog {
        if self.is_zero() || rhs.is_zero() {
            return SignedLog::ZERO;
        }
        SignedLog {
            sign: self.sign * rhs.sign,
            log_magnitude: self.log_magnitude + rhs.log_magnitude,
        }
    }
}

impl Div for SignedLog {
    type Output = SignedLog;

    fn div(self, rhs: SignedLog) -> SignedLog {
        self * rhs.recip()
    }
}

impl fmt::Display for SignedLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            0 => write!(f, "0"),
            1 => write!(f, "+exp({})", self.log_magnitude),
            _ => write!(f, "-exp({})", self.log_magnitude),
        }
    }
}
