//! Mode bookkeeping: degeneracies of the TE and TM multiplets, the order map
//! `ν = l + (D-2)/2` and the Robin coefficients `(α, β)` of each boundary.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::specfun::rational_poly::{rational, RationalPolynomial};

/// Smallest and largest supported spatial dimension.
pub const MIN_DIM: u32 = 3;
pub const MAX_DIM: u32 = 16;

pub fn check_dim(dim: u32) -> Result<()> {
    if (MIN_DIM..=MAX_DIM).contains(&dim) {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryCondition {
    PerfectlyConducting,
    InfinitelyPermeable,
}

impl BoundaryCondition {
    pub fn short_name(self) -> &'static str {
        match self {
            BoundaryCondition::PerfectlyConducting => "pc",
            BoundaryCondition::InfinitelyPermeable => "ip",
        }
    }

    pub fn dual(self) -> Self {
        match self {
            BoundaryCondition::PerfectlyConducting => BoundaryCondition::InfinitelyPermeable,
            BoundaryCondition::InfinitelyPermeable => BoundaryCondition::PerfectlyConducting,
        }
    }
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "pc" | "perfectly-conducting" | "conductor" => Ok(BoundaryCondition::PerfectlyConducting),
            "ip" | "infinitely-permeable" | "permeable" => Ok(BoundaryCondition::InfinitelyPermeable),
            other => Err(Error::Config(format!("unknown boundary condition '{other}' (expected pc or ip)"))),
        }
    }
}

/// Boundary conditions on the inner (`r = a1`) and outer (`r = a2`) sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryPair {
    pub inner: BoundaryCondition,
    pub outer: BoundaryCondition,
}

impl BoundaryPair {
    pub const PC_PC: BoundaryPair = BoundaryPair::new(BoundaryCondition::PerfectlyConducting, BoundaryCondition::PerfectlyConducting);
    pub const IP_IP: BoundaryPair = BoundaryPair::new(BoundaryCondition::InfinitelyPermeable, BoundaryCondition::InfinitelyPermeable);
    pub const PC_IP: BoundaryPair = BoundaryPair::new(BoundaryCondition::PerfectlyConducting, BoundaryCondition::InfinitelyPermeable);
    pub const IP_PC: BoundaryPair = BoundaryPair::new(BoundaryCondition::InfinitelyPermeable, BoundaryCondition::PerfectlyConducting);

    pub const ALL: [BoundaryPair; 4] = [Self::PC_PC, Self::IP_IP, Self::PC_IP, Self::IP_PC];

    pub const fn new(inner: BoundaryCondition, outer: BoundaryCondition) -> Self {
        Self { inner, outer }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.inner == self.outer
    }

    /// Both boundary conditions exchanged for their duals.
    pub fn dual(&self) -> Self {
        Self::new(self.inner.dual(), self.outer.dual())
    }
}

impl fmt::Display for BoundaryPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.inner, self.outer)
    }
}

impl FromStr for BoundaryPair {
    type Err = Error;

    /// Parses `pc,ip` or `pc-ip`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split([',', '-', '/']).collect();
        if parts.len() != 2 {
            return Err(Error::Config(format!("boundary pair '{s}' must look like 'pc,ip'")));
        }
        Ok(Self::new(parts[0].parse()?, parts[1].parse()?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    TE,
    TM,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TE, Polarization::TM];

    pub fn name(self) -> &'static str {
        match self {
            Polarization::TE => "te",
            Polarization::TM => "tm",
        }
    }

    pub fn other(self) -> Self {
        match self {
            Polarization::TE => Polarization::TM,
            Polarization::TM => Polarization::TE,
        }
    }
}

impl fmt::Display for Polarization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A single polarization or the sum of both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChannelSelection {
    TE,
    TM,
    Total,
}

impl ChannelSelection {
    pub fn polarizations(self) -> &'static [Polarization] {
        match self {
            ChannelSelection::TE => &[Polarization::TE],
            ChannelSelection::TM => &[Polarization::TM],
            ChannelSelection::Total => &Polarization::BOTH,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChannelSelection::TE => "te",
            ChannelSelection::TM => "tm",
            ChannelSelection::Total => "total",
        }
    }

    /// Fraction of the total proximity-force value carried by this selection.
    pub fn pfa_weight(self, dim: u32) -> f64 {
        let d = f64::from(dim);
        match self {
            ChannelSelection::TE => (d - 2.0) / (d - 1.0),
            ChannelSelection::TM => 1.0 / (d - 1.0),
            ChannelSelection::Total => 1.0,
        }
    }
}

impl From<Polarization> for ChannelSelection {
    fn from(p: Polarization) -> Self {
        match p {
            Polarization::TE => ChannelSelection::TE,
            Polarization::TM => ChannelSelection::TM,
        }
    }
}

impl fmt::Display for ChannelSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ChannelSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "te" => Ok(ChannelSelection::TE),
            "tm" => Ok(ChannelSelection::TM),
            "total" | "all" | "both" => Ok(ChannelSelection::Total),
            other => Err(Error::Config(format!("unknown channel '{other}' (expected te, tm or total)"))),
        }
    }
}

/// `ν = l + (D-2)/2`.
pub fn nu(l: u32, dim: u32) -> f64 {
    f64::from(l) + 0.5 * (f64::from(dim) - 2.0)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Exact degeneracy `h_l(D)` (TE) or `b_l(D)` (TM).
pub fn degeneracy(pol: Polarization, l: u32, dim: u32) -> Result<BigRational> {
    if l < 1 {
        return Err(Error::domain("degeneracy", "l must be at least 1"));
    }
    if dim < MIN_DIM {
        return Err(Error::domain("degeneracy", format!("D must be at least 3, got {dim}")));
    }
    let big = |n: u32| BigRational::from_integer(BigInt::from(n));
    let value = match pol {
        Polarization::TM => {
            // (2l+D-2)(l+D-3)! / ((D-2)! l!)
            big(2 * l + dim - 2) * BigRational::new(factorial(l + dim - 3), factorial(dim - 2) * factorial(l))
        }
        Polarization::TE => {
            // l(l+D-2)(2l+D-2)(l+D-4)! / ((D-3)! (l+1)!)
            big(l) * big(l + dim - 2) * big(2 * l + dim - 2)
                * BigRational::new(factorial(l + dim - 4), factorial(dim - 3) * factorial(l + 1))
        }
    };
    Ok(value)
}

/// Degeneracy in floating point, for use inside the mode sums.
pub fn degeneracy_f64(pol: Polarization, l: u32, dim: u32) -> f64 {
    let lf = f64::from(l);
    let mut v = 2.0 * lf + f64::from(dim) - 2.0;
    match pol {
        Polarization::TM => {
            for k in 1..=dim - 3 {
                v *= (lf + f64::from(k)) / f64::from(k);
            }
            v / f64::from(dim - 2)
        }
        Polarization::TE => match dim {
            3 => v,
            4 => 2.0 * lf * (lf + 2.0) * v / (2.0 * lf + 2.0),
            _ => {
                v *= lf * (lf + f64::from(dim) - 2.0);
                // (l+D-4)!/(l+1)! / (D-3)!  =  Π_{k=2}^{D-4} (l+k) / (D-3)!
                for k in 2..=dim - 4 {
                    v *= (lf + f64::from(k)) / f64::from(k);
                }
                v / f64::from(dim - 3)
            }
        },
    }
}

/// Robin coefficients `(α, β)` of the boundary value problem for one
/// polarization on one sphere.
pub fn bc_coefficients(pol: Polarization, bc: BoundaryCondition, dim: u32) -> (BigRational, BigRational) {
    let d = i64::from(dim);
    match (pol, bc) {
        (Polarization::TE, BoundaryCondition::PerfectlyConducting) => (rational(1, 1), rational(0, 1)),
        (Polarization::TM, BoundaryCondition::PerfectlyConducting) => (rational(d - 2, 2), rational(1, 1)),
        (Polarization::TE, BoundaryCondition::InfinitelyPermeable) => (rational(4 - d, 2), rational(1, 1)),
        (Polarization::TM, BoundaryCondition::InfinitelyPermeable) => (rational(1, 1), rational(0, 1)),
    }
}

/// `(α, β)` as floats.
pub fn bc_coefficients_f64(pol: Polarization, bc: BoundaryCondition, dim: u32) -> (f64, f64) {
    let (a, b) = bc_coefficients(pol, bc, dim);
    (a.to_f64().unwrap_or(f64::NAN), b.to_f64().unwrap_or(f64::NAN))
}

/// The degeneracy written as an exact polynomial in `ν`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyPolynomial {
    pub dim: u32,
    pub polarization: Polarization,
    poly: RationalPolynomial,
}

impl DegeneracyPolynomial {
    /// Coefficient of `ν^j`.
    pub fn coefficient(&self, j: usize) -> BigRational {
        self.poly.coefficient(j)
    }

    pub fn polynomial(&self) -> &RationalPolynomial {
        &self.poly
    }

    pub fn eval(&self, nu: &BigRational) -> BigRational {
        self.poly.eval(nu)
    }
}

fn linear(c: i64) -> RationalPolynomial {
    // l + c
    RationalPolynomial::from_ratios(&[(c, 1), (1, 1)])
}

pub fn degeneracy_polynomial(pol: Polarization, dim: u32) -> Result<DegeneracyPolynomial> {
    check_dim(dim)?;
    let d = i64::from(dim);
    let two_l_plus = RationalPolynomial::from_ratios(&[(d - 2, 1), (2, 1)]);
    let in_l = match pol {
        Polarization::TM => {
            let mut p = two_l_plus;
            for k in 1..=d - 3 {
                p = &p * &linear(k);
            }
            p.scale(&BigRational::new(BigInt::one(), factorial(dim - 2)))
        }
        Polarization::TE => {
            // (l+D-4)!/(l+1)! is Π_{k=2}^{D-4}(l+k) for D ≥ 5, 1/(l+1) at D = 4 and 1/(l(l+1)) at D = 3
            let mut num = &(&linear(0) * &linear(d - 2)) * &two_l_plus;
            for k in 2..=d - 4 {
                num = &num * &linear(k);
            }
            let den = match dim {
                3 => &linear(0) * &linear(1),
                4 => linear(1),
                _ => RationalPolynomial::one(),
            };
            let (q, r) = num.div_rem(&den);
            debug_assert!(r.is_zero());
            q.scale(&BigRational::new(BigInt::one(), factorial(dim - 3)))
        }
    };
    let shift = rational(-(d - 2), 2);
    Ok(DegeneracyPolynomial {
        dim,
        polarization: pol,
        poly: in_l.shifted(&shift),
    })
}
