//! Uniform (Debye) asymptotics of I_ν(νz) and K_ν(νz).
//!
//! The polynomials `u_k`, `v_k` are generated by their recursions in exact
//! rational arithmetic.  `D_k` and `M_{k,α}` are the coefficients of the
//! formal logarithms of `1 + Σ u_k/ν^k` and `1 + Σ (v_k + α t u_{k-1})/ν^k`.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;

use super::rational_poly::{rational, RationalPolynomial};

/// Highest order kept in the floating-point coefficient tables.
pub const MAX_TABLE_ORDER: usize = 16;

/// Default truncation order of the uniform expansion.
pub const DEFAULT_MAX_ORDER: usize = 8;

fn u_cache() -> &'static Mutex<Vec<RationalPolynomial>> {
    static CACHE: OnceLock<Mutex<Vec<RationalPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![RationalPolynomial::one()]))
}

/// `t²(1-t²)`
fn t2_one_minus_t2() -> RationalPolynomial {
    RationalPolynomial::from_ratios(&[(0, 1), (0, 1), (1, 1), (0, 1), (-1, 1)])
}

/// `u_k(t)`.
pub fn debye_u(k: usize) -> RationalPolynomial {
    let mut cache = u_cache().lock().expect("debye cache poisoned");
    while cache.len() <= k {
        let prev = cache.last().expect("u_0 present").clone();
        let half = rational(1, 2);
        let first = (&t2_one_minus_t2() * &prev.derivative()).scale(&half);
        let weight = RationalPolynomial::from_ratios(&[(1, 1), (0, 1), (-5, 1)]);
        let second = (&weight * &prev).integral().scale(&rational(1, 8));
        cache.push(&first + &second);
    }
    cache[k].clone()
}

/// `v_k(t)`.
pub fn debye_v(k: usize) -> RationalPolynomial {
    if k == 0 {
        return RationalPolynomial::one();
    }
    let prev = debye_u(k - 1);
    let a = &t2_one_minus_t2() * &prev.derivative();
    let t_one_minus_t2 = RationalPolynomial::from_ratios(&[(0, 1), (1, 2), (0, 1), (-1, 2)]);
    let b = &t_one_minus_t2 * &prev;
    &(&debye_u(k) - &a) - &b
}

/// Coefficients `L_1..=L_n` of `ln(1 + Σ_{k≥1} a_k x^k)`, given `a[k-1] = a_k`.
fn formal_log(a: &[RationalPolynomial]) -> Vec<RationalPolynomial> {
    let mut out: Vec<RationalPolynomial> = Vec::with_capacity(a.len());
    for k in 1..=a.len() {
        let mut acc = RationalPolynomial::zero();
        for j in 1..k {
            let term = &out[j - 1] * &a[k - j - 1];
            acc = &acc + &term.scale(&rational(j as i64, 1));
        }
        let correction = acc.scale(&rational(1, k as i64));
        out.push(&a[k - 1] - &correction);
    }
    out
}

fn d_cache() -> &'static Mutex<Vec<RationalPolynomial>> {
    static CACHE: OnceLock<Mutex<Vec<RationalPolynomial>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(Vec::new()))
}

/// `D_k(t)` for `k ≥ 1`; `D_0 = 0` by convention.
pub fn debye_d(k: usize) -> RationalPolynomial {
    if k == 0 {
        return RationalPolynomial::zero();
    }
    let mut cache = d_cache().lock().expect("debye cache poisoned");
    if cache.len() < k {
        let a: Vec<_> = (1..=k).map(debye_u).collect();
        *cache = formal_log(&a);
    }
    cache[k - 1].clone()
}

type MCache = HashMap<BigRational, Vec<RationalPolynomial>>;

fn m_cache() -> &'static Mutex<MCache> {
    static CACHE: OnceLock<Mutex<MCache>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `M_{k,α}(t)` for `k ≥ 1`; `M_{0,α} = 0` by convention.
pub fn debye_m(k: usize, alpha: &BigRational) -> RationalPolynomial {
    if k == 0 {
        return RationalPolynomial::zero();
    }
    let mut cache = m_cache().lock().expect("debye cache poisoned");
    let entry = cache.entry(alpha.clone()).or_default();
    if entry.len() < k {
        let t_alpha = RationalPolynomial::monomial(alpha.clone(), 1);
        let a: Vec<_> = (1..=k)
            .map(|j| &debye_v(j) + &(&t_alpha * &debye_u(j - 1)))
            .collect();
        *entry = formal_log(&a);
    }
    entry[k - 1].clone()
}

/// t(z) = 1/√(1+z²).
pub fn debye_t(z: f64) -> f64 {
    1.0 / z.hypot(1.0)
}

/// η(z) = √(1+z²) + ln(z/(1+√(1+z²))).
pub fn debye_eta(z: f64) -> f64 {
    let s = z.hypot(1.0);
    s + (z / (1.0 + s)).ln()
}

/// η'(z) = √(1+z²)/z.
pub fn debye_eta_prime(z: f64) -> f64 {
    z.hypot(1.0) / z
}

/// Floating-point coefficient tables of `u_k` and `v_k`, built once.
pub struct DebyeTables {
    u: Vec<Vec<f64>>,
    v: Vec<Vec<f64>>,
}

impl DebyeTables {
    pub fn get() -> &'static DebyeTables {
        static TABLES: OnceLock<DebyeTables> = OnceLock::new();
        TABLES.get_or_init(|| DebyeTables {
            u: (0..=MAX_TABLE_ORDER).map(|k| debye_u(k).to_f64_coefficients()).collect(),
            v: (0..=MAX_TABLE_ORDER).map(|k| debye_v(k).to_f64_coefficients()).collect(),
        })
    }

    pub fn u(&self, k: usize, t: f64) -> f64 {
        horner(&self.u[k], t)
    }

    pub fn v(&self, k: usize, t: f64) -> f64 {
        horner(&self.v[k], t)
    }
}

fn horner(c: &[f64], t: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, a| acc * t + a)
}

/// Partial sums of the four uniform series at fixed `(ν, t)`:
/// `Σ u_k/ν^k`, `Σ (-1)^k u_k/ν^k`, `Σ v_k/ν^k`, `Σ (-1)^k v_k/ν^k`.
///
/// Terms are added until they fall below `1e-17` of the running sums or
/// `max_order` is reached; the number of orders used is returned as well.
pub fn uniform_sums(nu: f64, t: f64, max_order: usize) -> ([f64; 4], usize) {
    let tables = DebyeTables::get();
    let max_order = max_order.min(MAX_TABLE_ORDER);
    let mut sums = [1.0; 4];
    let inv = 1.0 / nu;
    let mut pow = 1.0;
    let mut used = 0;
    for k in 1..=max_order {
        pow *= inv;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let uk = tables.u(k, t) * pow;
        let vk = tables.v(k, t) * pow;
        sums[0] += uk;
        sums[1] += sign * uk;
        sums[2] += vk;
        sums[3] += sign * vk;
        used = k;
        if uk.abs().max(vk.abs()) < 1e-17 {
            break;
        }
    }
    (sums, used)
}
