//! Modified Bessel functions I_ν, K_ν of real order and positive argument,
//! carried as logarithms together with the logarithmic derivatives
//! `z I'_ν/I_ν` and `z K'_ν/K_ν`.
//!
//! Below the uniform-expansion threshold the pair is computed the classical
//! way: K_μ and K_{μ+1} for |μ| ≤ 1/2 (Temme's series for z < 2, Steed's
//! continued fraction otherwise), upward recurrence in ratio form, the
//! continued fraction for I_{ν+1}/I_ν and finally the Wronskian for ln I_ν.
//! Large arguments use the Hankel expansion and large orders the uniform
//! (Debye) expansion.

use std::f64::consts::PI;

use super::debye::{uniform_sums, DEFAULT_MAX_ORDER};
use super::signed_log::SignedLog;
use crate::error::{Error, Result};

/// Orders at or above this use the uniform expansion by default.
pub const DEFAULT_UNIFORM_THRESHOLD: f64 = 50.0;

/// Digits of cancellation tolerated in a Robin combination.
pub const MAX_CANCELLATION_DIGITS: f64 = 6.0;

const MAX_ITER: usize = 100_000;

/// Taylor coefficients of 1/Γ(1+x) about 0.
#[allow(clippy::excessive_precision)]
const RECIP_GAMMA_TAYLOR: [f64; 31] = [
    1.0,
    5.772_156_649_015_328_655_49e-01,
    -6.558_780_715_202_539_024_49e-01,
    -4.200_263_503_409_523_702_10e-02,
    1.665_386_113_822_914_793_13e-01,
    -4.219_773_455_554_433_339_02e-02,
    -9.621_971_527_876_973_032_11e-03,
    7.218_943_246_663_099_902_46e-03,
    -1.165_167_591_859_065_168_71e-03,
    -2.152_416_741_149_509_751_92e-04,
    1.280_502_823_881_161_955_12e-04,
    -2.013_485_478_078_823_868_62e-05,
    -1.250_493_482_142_670_630_72e-06,
    1.133_027_231_981_695_928_60e-06,
    -2.056_338_416_977_607_073_39e-07,
    6.116_095_104_481_416_087_21e-09,
    5.002_007_644_469_222_945_44e-09,
    -1.181_274_570_487_020_044_06e-09,
    1.043_426_711_691_100_539_79e-10,
    7.782_263_439_905_070_814_32e-12,
    -3.696_805_618_642_205_978_69e-12,
    5.100_370_287_454_475_753_72e-13,
    -2.058_326_053_566_506_635_75e-14,
    -5.348_122_539_423_017_820_29e-15,
    1.226_778_628_238_260_840_89e-15,
    -1.181_259_301_697_458_833_74e-16,
    1.186_692_254_751_600_374_62e-18,
    1.412_380_655_318_031_857_33e-18,
    -2.298_745_684_435_370_219_93e-19,
    1.714_406_321_927_337_428_15e-20,
    1.337_351_730_493_693_088_43e-22,
];

/// Logarithmic data of the pair (I_ν(z), K_ν(z)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselLog {
    pub ln_i: f64,
    pub ln_k: f64,
    /// z I'_ν(z) / I_ν(z)
    pub zdi: f64,
    /// z K'_ν(z) / K_ν(z)
    pub zdk: f64,
}

impl BesselLog {
    /// `ln(z (I K' - I' K) · (-1))`, which vanishes identically.
    pub fn wronskian_residual(&self) -> f64 {
        self.ln_i + self.ln_k + (self.zdi - self.zdk).ln()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselKind {
    I,
    K,
}

#[derive(Debug, Clone, Copy)]
pub struct BesselOptions {
    pub uniform_threshold: f64,
    pub max_uniform_order: usize,
}

impl Default for BesselOptions {
    fn default() -> Self {
        Self {
            uniform_threshold: DEFAULT_UNIFORM_THRESHOLD,
            max_uniform_order: DEFAULT_MAX_ORDER,
        }
    }
}

fn check_args(function: &'static str, nu: f64, z: f64) -> Result<()> {
    if !nu.is_finite() || nu < 0.0 {
        return Err(Error::domain(function, format!("order must be finite and non-negative, got {nu}")));
    }
    if !z.is_finite() || z <= 0.0 {
        return Err(Error::domain(function, format!("argument must be finite and positive, got {z}")));
    }
    Ok(())
}

/// Evaluate with the default algorithm selection.
pub fn bessel_log(nu: f64, z: f64) -> Result<BesselLog> {
    bessel_log_with(nu, z, &BesselOptions::default())
}

pub fn bessel_log_with(nu: f64, z: f64, opts: &BesselOptions) -> Result<BesselLog> {
    check_args("bessel_log", nu, z)?;
    if nu >= opts.uniform_threshold {
        Ok(uniform(nu, z, opts.max_uniform_order))
    } else {
        direct(nu, z)
    }
}

/// ln I_ν(z).
pub fn log_bessel_i(nu: f64, z: f64) -> Result<f64> {
    check_args("log_bessel_i", nu, z)?;
    Ok(bessel_log(nu, z)?.ln_i)
}

/// ln K_ν(z).
pub fn log_bessel_k(nu: f64, z: f64) -> Result<f64> {
    check_args("log_bessel_k", nu, z)?;
    Ok(bessel_log(nu, z)?.ln_k)
}

/// Evaluate without the uniform expansion, whatever the order.
pub fn bessel_log_direct(nu: f64, z: f64) -> Result<BesselLog> {
    check_args("bessel_log_direct", nu, z)?;
    direct(nu, z)
}

/// Evaluate with the uniform expansion truncated after `max_order` terms.
pub fn bessel_log_uniform(nu: f64, z: f64, max_order: usize) -> Result<BesselLog> {
    check_args("bessel_log_uniform", nu, z)?;
    if nu == 0.0 {
        return Err(Error::domain("bessel_log_uniform", "uniform expansion needs ν > 0"));
    }
    Ok(uniform(nu, z, max_order))
}

/// `α B_ν(z) + β z B'_ν(z)` for `B = I` or `K`, in signed-log form.
pub fn robin_combination(alpha: f64, beta: f64, nu: f64, z: f64, kind: BesselKind) -> Result<SignedLog> {
    if alpha == 0.0 && beta == 0.0 {
        return Err(Error::domain("robin_combination", "(α, β) must not both vanish"));
    }
    let b = bessel_log(nu, z)?;
    robin_from(&b, alpha, beta, kind)
}

/// Robin combination from precomputed Bessel data.
pub fn robin_from(b: &BesselLog, alpha: f64, beta: f64, kind: BesselKind) -> Result<SignedLog> {
    let (ln_b, zd) = match kind {
        BesselKind::I => (b.ln_i, b.zdi),
        BesselKind::K => (b.ln_k, b.zdk),
    };
    let (factor, lost) = robin_factor(alpha, beta, zd);
    if lost > MAX_CANCELLATION_DIGITS {
        return Err(Error::Cancellation {
            function: "robin_combination",
            digits: lost,
        });
    }
    Ok(SignedLog::from_f64(factor).scale_log(ln_b))
}

/// `α + β·zd` evaluated with an error-free product, plus the number of decimal
/// digits lost to cancellation.
fn robin_factor(alpha: f64, beta: f64, zd: f64) -> (f64, f64) {
    if beta == 0.0 {
        return (alpha, 0.0);
    }
    let p = beta * zd;
    let p_err = beta.mul_add(zd, -p);
    let s = alpha + p;
    // two-sum error
    let bb = s - alpha;
    let s_err = (alpha - (s - bb)) + (p - bb);
    let value = s + (s_err + p_err);
    let scale = alpha.abs() + p.abs();
    let lost = if value == 0.0 {
        f64::INFINITY
    } else {
        (scale / value.abs()).log10().max(0.0)
    };
    (value, lost)
}

fn uniform(nu: f64, z: f64, max_order: usize) -> BesselLog {
    let w = z / nu;
    let s = w.hypot(1.0);
    let t = 1.0 / s;
    let eta = s + (w / (1.0 + s)).ln();
    let ([u_i, u_k, v_i, v_k], _) = uniform_sums(nu, t, max_order);
    let half_ln_t = 0.5 * t.ln();
    BesselLog {
        ln_i: -0.5 * (2.0 * PI * nu).ln() + half_ln_t + nu * eta + u_i.ln(),
        ln_k: 0.5 * (PI / (2.0 * nu)).ln() + half_ln_t - nu * eta + u_k.ln(),
        zdi: nu * s * v_i / u_i,
        zdk: -nu * s * v_k / u_k,
    }
}

fn direct(nu: f64, x: f64) -> Result<BesselLog> {
    if x > (nu * nu).max(40.0) {
        return Ok(hankel(nu, x));
    }
    recurrence(nu, x)
}

fn recurrence(nu: f64, x: f64) -> Result<BesselLog> {
    let nl = (nu + 0.5).floor();
    let mu = nu - nl;
    let (ln_kmu, r_kmu) = if x < 2.0 { temme(mu, x)? } else { steed(mu, x)? };
    let mut ln_k = ln_kmu;
    let mut r_k = r_kmu;
    for i in 1..=nl as usize {
        ln_k += r_k.ln();
        r_k = 2.0 * (mu + i as f64) / x + 1.0 / r_k;
    }
    let r_i = ratio_i(nu, x)?;
    Ok(BesselLog {
        ln_i: -x.ln() - ln_k - (r_i + r_k).ln(),
        ln_k,
        zdi: nu + x * r_i,
        zdk: nu - x * r_k,
    })
}

/// I_{ν+1}(x)/I_ν(x) by the modified Lentz method.
fn ratio_i(nu: f64, x: f64) -> Result<f64> {
    const TINY: f64 = 1e-300;
    let mut f = TINY;
    let mut c = f;
    let mut d = 0.0;
    for k in 1..MAX_ITER {
        let b = 2.0 * (nu + k as f64) / x;
        d = b + d;
        if d == 0.0 {
            d = TINY;
        }
        d = 1.0 / d;
        c = b + 1.0 / c;
        if c == 0.0 {
            c = TINY;
        }
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            return Ok(f);
        }
    }
    Err(Error::domain("bessel_log", format!("I-ratio continued fraction did not converge (ν={nu}, x={x})")))
}

/// `(ln K_μ(x), K_{μ+1}(x)/K_μ(x))` for `|μ| ≤ 1/2`, `x < 2`.
fn temme(mu: f64, x: f64) -> Result<(f64, f64)> {
    let x2 = 0.5 * x;
    let pimu = PI * mu;
    let fact = if pimu.abs() < 1e-15 { 1.0 } else { pimu / pimu.sin() };
    let d = -x2.ln();
    let e = mu * d;
    let fact2 = if e.abs() < 1e-15 { 1.0 } else { e.sinh() / e };

    let (gampl, gammi) = recip_gamma_pair(mu);
    let mut gam1 = 0.0;
    let mut pow = 1.0;
    for g in RECIP_GAMMA_TAYLOR.iter().skip(1).step_by(2) {
        gam1 -= g * pow;
        pow *= mu * mu;
    }
    let gam2 = 0.5 * (gampl + gammi);

    let mut ff = fact * (gam1 * e.cosh() + gam2 * fact2 * d);
    let mut sum = ff;
    let ee = e.exp();
    let mut p = 0.5 * ee / gampl;
    let mut q = 0.5 / (ee * gammi);
    let mut c = 1.0;
    let dd = x2 * x2;
    let mut sum1 = p;
    let mu2 = mu * mu;
    for i in 1..MAX_ITER {
        let fi = i as f64;
        ff = (fi * ff + p + q) / (fi * fi - mu2);
        c *= dd / fi;
        p /= fi - mu;
        q /= fi + mu;
        let del = c * ff;
        sum += del;
        sum1 += c * (p - fi * ff);
        if del.abs() < sum.abs() * 1e-17 {
            return Ok((sum.ln(), sum1 * 2.0 / x / sum));
        }
    }
    Err(Error::domain("bessel_log", format!("Temme series did not converge (μ={mu}, x={x})")))
}

/// `(1/Γ(1+μ), 1/Γ(1-μ))` from the Taylor series.
fn recip_gamma_pair(mu: f64) -> (f64, f64) {
    let mut plus = 0.0;
    let mut minus = 0.0;
    for g in RECIP_GAMMA_TAYLOR.iter().rev() {
        plus = plus * mu + g;
        minus = minus * -mu + g;
    }
    (plus, minus)
}

/// `(ln K_μ(x), K_{μ+1}(x)/K_μ(x))` for `|μ| ≤ 1/2`, `x ≥ 2`, by Steed's method.
fn steed(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mut b = 2.0 * (1.0 + x);
    let mut d = 1.0 / b;
    let mut h = d;
    let mut delh = d;
    let mut q1 = 0.0;
    let mut q2 = 1.0;
    let a1 = 0.25 - mu * mu;
    let mut q = a1;
    let mut c = a1;
    let mut a = -a1;
    let mut s = 1.0 + q * delh;
    for i in 2..MAX_ITER {
        let fi = i as f64;
        a -= 2.0 * (fi - 1.0);
        c = -a * c / fi;
        let qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh *= b * d - 1.0;
        h += delh;
        let dels = q * delh;
        s += dels;
        if (dels / s).abs() < 1e-17 {
            let h = a1 * h;
            let ln_k = 0.5 * (PI / (2.0 * x)).ln() - x - s.ln();
            return Ok((ln_k, (mu + x + 0.5 - h) / x));
        }
    }
    Err(Error::domain("bessel_log", format!("Steed continued fraction did not converge (μ={mu}, x={x})")))
}

/// Hankel expansion for large argument.  The exponentially small second
/// solution in I_ν is below double precision for x > 40.
fn hankel(nu: f64, x: f64) -> BesselLog {
    let (sk0, si0) = hankel_sums(nu, x);
    let (sk1, si1) = hankel_sums(nu + 1.0, x);
    let ln_k = 0.5 * (PI / (2.0 * x)).ln() - x + sk0.ln();
    let ln_i = x - 0.5 * (2.0 * PI * x).ln() + si0.ln();
    BesselLog {
        ln_i,
        ln_k,
        zdi: nu + x * si1 / si0,
        zdk: nu - x * sk1 / sk0,
    }
}

/// `(Σ a_k/x^k, Σ (-1)^k a_k/x^k)` with `a_k = Π_{j≤k}(4ν² - (2j-1)²)/(k! 8^k)`.
fn hankel_sums(nu: f64, x: f64) -> (f64, f64) {
    let m = 4.0 * nu * nu;
    let mut term = 1.0;
    let mut sk = 1.0;
    let mut si = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let j = (2 * k - 1) as f64;
        term *= (m - j * j) / (k as f64 * 8.0 * x);
        if term.abs() >= prev || term == 0.0 {
            break;
        }
        sk += term;
        si += if k % 2 == 0 { term } else { -term };
        prev = term.abs();
        if prev < 1e-17 * sk.abs().min(si.abs()) {
            break;
        }
    }
    (sk, si)
}
