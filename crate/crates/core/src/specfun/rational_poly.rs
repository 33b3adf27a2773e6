use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coefficients[i]` multiplies `x^i`.  Trailing zeros are always trimmed, so
/// two equal polynomials have identical coefficient vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPolynomial {
    coefficients: Vec<BigRational>,
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl RationalPolynomial {
    pub fn new(mut coefficients: Vec<BigRational>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    /// `c * x^power`
    pub fn monomial(c: BigRational, power: usize) -> Self {
        let mut v = vec![BigRational::zero(); power + 1];
        v[power] = c;
        Self::new(v)
    }

    /// Build from `(numerator, denominator)` pairs, lowest power first.
    pub fn from_ratios(pairs: &[(i64, i64)]) -> Self {
        Self::new(pairs.iter().map(|&(n, d)| rational(n, d)).collect())
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn coefficient(&self, power: usize) -> BigRational {
        self.coefficients
            .get(power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coefficients
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    /// Antiderivative vanishing at zero.
    pub fn integral(&self) -> Self {
        let mut v = Vec::with_capacity(self.coefficients.len() + 1);
        v.push(BigRational::zero());
        for (i, a) in self.coefficients.iter().enumerate() {
            v.push(a / BigRational::from_integer(BigInt::from(i + 1)));
        }
        Self::new(v)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, a| acc * x + a)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.to_f64_coefficients()
            .iter()
            .rev()
            .fold(0.0, |acc, a| acc * x + a)
    }

    pub fn to_f64_coefficients(&self) -> Vec<f64> {
        self.coefficients
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    /// `p(x + shift)`
    pub fn shifted(&self, shift: &BigRational) -> Self {
        // Horner in polynomial arithmetic: p(x+s) = (((a_n)(x+s) + a_{n-1})(x+s) + ...)
        let linear = Self::new(vec![shift.clone(), BigRational::one()]);
        self.coefficients
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| &(&acc * &linear) + &Self::constant(a.clone()))
    }

    /// Polynomial long division, returning `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coefficients[dd].clone();
        let mut rem = self.coefficients.clone();
        let n = rem.len();
        if n <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); n - dd];
        for k in (0..n - dd).rev() {
            let q = &rem[k + dd] / &lead;
            if !q.is_zero() {
                for (j, b) in divisor.coefficients.iter().enumerate() {
                    rem[k + j] -= &q * b;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monomials `t^i` with a non-zero coefficient.
    pub fn support(&self) -> Vec<usize> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }
}

impl Add for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn add(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) + rhs.coefficient(i)).collect())
    }
}

impl Sub for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn sub(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        RationalPolynomial::new((0..n).map(|i| self.coefficient(i) - rhs.coefficient(i)).collect())
    }
}

impl Mul for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn mul(self, rhs: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut v = vec![BigRational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RationalPolynomial::new(v)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;

    fn neg(self) -> RationalPolynomial {
        RationalPolynomial::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*t")?,
                _ => write!(f, "{a}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::new(c.iter().map(|&n| rational(n, 1)).collect())
    }

    #[test]
    fn trims_trailing_zeros() {
        assert_eq!(poly(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(poly(&[0, 0]).is_zero());
    }

    #[test]
    fn calculus_round_trip() {
        let p = RationalPolynomial::from_ratios(&[(3, 24), (0, 1), (-5, 24)]);
        assert_eq!(p.integral().derivative(), p);
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = poly(&[1, -3, 0, 2]);
        let s = rational(-1, 2);
        let q = p.shifted(&s);
        for x in [-2i64, 0, 3, 7] {
            let xr = rational(x, 1);
            assert_eq!(q.eval(&xr), p.eval(&(&xr + &s)));
        }
    }

    #[test]
    fn exact_division() {
        let a = poly(&[1, 1]);
        let b = poly(&[-2, 0, 3]);
        let (q, r) = (&a * &b).div_rem(&a);
        assert_eq!(q, b);
        assert!(r.is_zero());
        let (_, r) = poly(&[1, 0, 1]).div_rem(&poly(&[1, 1]));
        assert_eq!(r, poly(&[2]));
    }

    #[test]
    fn display_is_readable() {
        let p = RationalPolynomial::from_ratios(&[(0, 1), (1, 8), (0, 1), (-5, 24)]);
        assert_eq!(p.to_string(), "1/8*t - 5/24*t^3");
    }

    proptest! {
        #[test]
        fn ring_operations_agree_with_evaluation(
            a in proptest::collection::vec(-20i64..20, 0..6),
            b in proptest::collection::vec(-20i64..20, 0..6),
            x in -9i64..9,
        ) {
            let (p, q) = (poly(&a), poly(&b));
            let xr = rational(x, 3);
            prop_assert_eq!((&p * &q).eval(&xr), p.eval(&xr) * q.eval(&xr));
            prop_assert_eq!((&p + &q).eval(&xr), p.eval(&xr) + q.eval(&xr));
            prop_assert_eq!((&p - &q).eval(&xr), p.eval(&xr) - q.eval(&xr));
        }
    }
}
