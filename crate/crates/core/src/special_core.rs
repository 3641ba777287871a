//! Real-argument Gamma and log-Gamma, Bernoulli numbers and the Stirling
//! series for `ln Γ`.

use std::f64::consts::PI;
use std::ops::{Div, Mul};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `ln(2π) / 2`
pub const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Largest Bernoulli index that [`bernoulli_numbers`] will produce.
pub const MAX_BERNOULLI_INDEX: usize = 60;

const LANCZOS_G: f64 = 7.0;

// g = 7, n = 9 (Godfrey / Numerical Recipes set).
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// A real number stored as a sign and the natural log of its magnitude.
///
/// Zero is `sign == 0` with `log_abs == -inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub sign: i8,
    pub log_abs: f64,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        sign: 0,
        log_abs: f64::NEG_INFINITY,
    };

    pub const ONE: LogValue = LogValue {
        sign: 1,
        log_abs: 0.0,
    };

    /// A positive value given by its logarithm.
    pub fn from_log(log_abs: f64) -> Self {
        LogValue { sign: 1, log_abs }
    }

    pub fn from_f64(value: f64) -> Self {
        if value == 0.0 {
            Self::ZERO
        } else {
            LogValue {
                sign: if value > 0.0 { 1 } else { -1 },
                log_abs: value.abs().ln(),
            }
        }
    }

    /// Linear-scale value. Saturates to `±inf` (or `0`) outside `f64` range.
    pub fn to_f64(self) -> f64 {
        match self.sign {
            0 => 0.0,
            s => f64::from(s) * self.log_abs.exp(),
        }
    }

    /// Linear-scale value, or `None` if it does not fit in a finite `f64`.
    pub fn to_finite_f64(self) -> Option<f64> {
        let v = self.to_f64();
        v.is_finite().then_some(v)
    }

    pub fn is_zero(self) -> bool {
        self.sign == 0
    }

    pub fn recip(self) -> Self {
        assert!(self.sign != 0, "reciprocal of zero LogValue");
        LogValue {
            sign: self.sign,
            log_abs: -self.log_abs,
        }
    }

    pub fn powf(self, exponent: f64) -> Self {
        assert!(self.sign > 0, "real power of a non-positive LogValue");
        LogValue::from_log(self.log_abs * exponent)
    }
}

impl Mul for LogValue {
    type Output = LogValue;

    fn mul(self, rhs: LogValue) -> LogValue {
        if self.sign == 0 || rhs.sign == 0 {
            return LogValue::ZERO;
        }
        LogValue {
            sign: self.sign * rhs.sign,
            log_abs: self.log_abs + rhs.log_abs,
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;

    fn div(self, rhs: LogValue) -> LogValue {
        assert!(rhs.sign != 0, "division by zero LogValue");
        if self.sign == 0 {
            return LogValue::ZERO;
        }
        LogValue {
            sign: self.sign * rhs.sign,
            log_abs: self.log_abs - rhs.log_abs,
        }
    }
}

fn check_finite(x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("argument must be finite, got {x}")))
    }
}

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// `sin(πx)` with the argument reduced before multiplying by π, so that
/// integers give exactly zero and half-integers exactly ±1.
pub fn sin_pi(x: f64) -> f64 {
    let twice = (2.0 * x).round();
    let r = x - 0.5 * twice;
    let quadrant = (twice as i64).rem_euclid(4);
    match quadrant {
        0 => (PI * r).sin(),
        1 => (PI * r).cos(),
        2 => -(PI * r).sin(),
        _ => -(PI * r).cos(),
    }
}

fn lanczos_log_gamma(x: f64) -> f64 {
    debug_assert!(x >= 0.5);
    let z = x - 1.0;
    let series = LANCZOS_COEFFS[1..]
        .iter()
        .enumerate()
        .rev()
        .fold(0.0, |acc, (i, &c)| acc + c / (z + (i + 1) as f64))
        + LANCZOS_COEFFS[0];
    let t = z + LANCZOS_G + 0.5;
    HALF_LN_2PI + (z + 0.5) * t.ln() - t + series.ln()
}

/// Natural log of `Γ(x)` for `x > 0`.
///
/// Uses the Lanczos approximation on `[0.5, ∞)`; below that the argument is
/// shifted up by one with `ln Γ(x) = ln Γ(x + 1) − ln x`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_finite(x)?;
    if x <= 0.0 {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    if x < 0.5 {
        Ok(lanczos_log_gamma(x + 1.0) - x.ln())
    } else {
        Ok(lanczos_log_gamma(x))
    }
}

/// `Γ(x)` for every finite `x` that is not zero or a negative integer.
///
/// Below `1/2` the value comes from the reflection formula
/// `Γ(x) Γ(1 − x) = π / sin(πx)`.
pub fn gamma(x: f64) -> Result<f64> {
    check_finite(x)?;
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x >= 0.5 {
        Ok(log_gamma(x)?.exp())
    } else {
        Ok(PI / (sin_pi(x) * log_gamma(1.0 - x)?.exp()))
    }
}

/// `Γ(x)` as a [`LogValue`], valid off the poles for any finite `x`.
///
/// Unlike [`gamma`] this does not overflow for large arguments.
pub fn gamma_log_value(x: f64) -> Result<LogValue> {
    check_finite(x)?;
    if is_pole(x) {
        return Err(Error::Pole(x));
    }
    if x > 0.0 {
        return Ok(LogValue::from_log(log_gamma(x)?));
    }
    let s = sin_pi(x);
    Ok(LogValue {
        sign: if s > 0.0 { 1 } else { -1 },
        log_abs: PI.ln() - s.abs().ln() - log_gamma(1.0 - x)?,
    })
}

/// Bernoulli numbers `B_0 ..= B_max_index` with `B_1 = −1/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    max_index: usize,
    values: Vec<f64>,
}

impl BernoulliTable {
    pub fn max_index(&self) -> usize {
        self.max_index
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, index: usize) -> Option<f64> {
        self.values.get(index).copied()
    }

    /// Number of Stirling correction terms the table can feed.
    pub fn max_stirling_terms(&self) -> usize {
        self.max_index / 2
    }

    /// Relative residual of `Σ_{j=0}^{m} C(m+1, j) B_j = 0`, scaled by the
    /// sum of the absolute values of the terms.
    pub fn recurrence_residual(&self, m: usize) -> Option<f64> {
        if m == 0 || m > self.max_index {
            return None;
        }
        let mut binom = 1.0_f64;
        let mut sum = 0.0;
        let mut scale = 0.0;
        for j in 0..=m {
            let term = binom * self.values[j];
            sum += term;
            scale += term.abs();
            binom = binom * (m + 1 - j) as f64 / (j + 1) as f64;
        }
        Some(if scale == 0.0 { 0.0 } else { sum.abs() / scale })
    }

    /// The Stirling series for `ln Γ(x)` truncated after `terms` Bernoulli
    /// corrections:
    ///
    /// `(x − 1/2) ln x − x + ln(2π)/2 + Σ_{j=1}^{terms} B_{2j} / (2j (2j − 1) x^{2j−1})`
    pub fn stirling_log_gamma(&self, x: f64, terms: usize) -> Result<f64> {
        let correction = self.stirling_correction(x, terms)?;
        Ok((x - 0.5) * x.ln() - x + HALF_LN_2PI + correction)
    }

    /// Only the Bernoulli part `Σ_{j=1}^{terms} B_{2j} / (2j (2j − 1) x^{2j−1})`
    /// of the Stirling series.
    pub fn stirling_correction(&self, x: f64, terms: usize) -> Result<f64> {
        check_finite(x)?;
        if x < 1.0 {
            return Err(Error::Domain(format!(
                "Stirling series requires x >= 1, got {x}"
            )));
        }
        if terms > self.max_stirling_terms() {
            return Err(Error::Argument(format!(
                "{terms} Stirling terms requested but the Bernoulli table supports {}",
                self.max_stirling_terms()
            )));
        }
        let inv_x2 = 1.0 / (x * x);
        let mut powers = Vec::with_capacity(terms);
        let mut p = 1.0 / x;
        for _ in 0..terms {
            powers.push(p);
            p *= inv_x2;
        }
        // smallest terms first
        Ok((1..=terms).rev().fold(0.0, |acc, j| {
            let n = (2 * j) as f64;
            acc + self.values[2 * j] / (n * (n - 1.0)) * powers[j - 1]
        }))
    }
}

/// Bernoulli numbers up to `max_index` (even, at most 60).
///
/// The recurrence `B_m = −1/(m+1) Σ_{j<m} C(m+1, j) B_j` is run in exact
/// rational arithmetic; each entry is rounded to `f64` once at the end.
pub fn bernoulli_numbers(max_index: usize) -> Result<BernoulliTable> {
    if max_index == 0 || !max_index.is_multiple_of(2) || max_index > MAX_BERNOULLI_INDEX {
        return Err(Error::Argument(format!(
            "Bernoulli max_index must be even and in 2..={MAX_BERNOULLI_INDEX}, got {max_index}"
        )));
    }
    let exact = exact_bernoulli(max_index);
    let values = exact
        .iter()
        .map(|b| b.to_f64().expect("Bernoulli numbers up to B_60 fit in f64"))
        .collect();
    Ok(BernoulliTable { max_index, values })
}

fn exact_bernoulli(max_index: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(max_index + 1);
    b.push(BigRational::one());
    for m in 1..=max_index {
        if m > 1 && !m.is_multiple_of(2) {
            b.push(BigRational::zero());
            continue;
        }
        // binomial row C(m+1, j), j = 0..m
        let mut binom = BigInt::one();
        let mut sum = BigRational::zero();
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                sum += bj * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        b.push(-sum / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

/// Shared table of the largest supported size.
pub fn default_bernoulli_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| bernoulli_numbers(MAX_BERNOULLI_INDEX).expect("maximum index is valid"))
}

/// Stirling series for `ln Γ(x)` with `terms` corrections, `x ≥ 1`.
///
/// See [`BernoulliTable::stirling_log_gamma`].
pub fn stirling_log_gamma(x: f64, terms: usize) -> Result<f64> {
    default_bernoulli_table().stirling_log_gamma(x, terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn log_gamma_integer_points() {
        assert!(log_gamma(1.0).unwrap().abs() < 1e-15);
        assert!(log_gamma(2.0).unwrap().abs() < 1e-15);
        assert!((log_gamma(5.0).unwrap() - 3.178_053_830_347_945_8).abs() < 1e-14);
    }

    #[test]
    fn log_gamma_half() {
        // ln √π; frozen from the quadrature oracle in tests/special_core.rs
        assert!((log_gamma(0.5).unwrap() - 0.572_364_942_924_700_1).abs() < 1e-15);
    }

    #[test]
    fn log_gamma_rejects_bad_input() {
        for x in [0.0, -1.5, f64::NAN, f64::INFINITY, f64::NEG_INFINITY] {
            assert!(matches!(log_gamma(x), Err(Error::Domain(_))), "{x}");
        }
    }

    #[test]
    fn log_gamma_tiny_and_huge() {
        // reference values from a 30-digit evaluation
        let v = log_gamma(1e-6).unwrap();
        assert!((v - 13.815_509_980_749_432).abs() / v < 1e-13);
        let v = log_gamma(1e6).unwrap();
        assert!(rel(v, 12_815_504.569_147_612) < 1e-14);
    }

    #[test]
    fn gamma_spot_values() {
        assert!((gamma(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!(rel(gamma(0.5).unwrap(), 1.772_453_850_905_516) < 1e-14);
        assert!(rel(gamma(-0.5).unwrap(), -3.544_907_701_811_032) < 1e-14);
        assert!(rel(gamma(-1.5).unwrap(), 2.363_271_801_207_355) < 1e-14);
        assert!(rel(gamma(171.0).unwrap(), 7.257_415_615_307_999e306) < 1e-13);
    }

    #[test]
    fn gamma_poles() {
        for x in [0.0, -1.0, -2.0, -17.0] {
            assert_eq!(gamma(x), Err(Error::Pole(x)));
            assert_eq!(gamma_log_value(x), Err(Error::Pole(x)));
        }
        assert!(matches!(gamma(f64::NAN), Err(Error::Domain(_))));
    }

    #[test]
    fn gamma_log_value_signs() {
        let v = gamma_log_value(-0.5).unwrap();
        assert_eq!(v.sign, -1);
        assert!(rel(v.to_f64(), -3.544_907_701_811_032) < 1e-14);
        assert_eq!(gamma_log_value(-1.5).unwrap().sign, 1);
        let big = gamma_log_value(500.0).unwrap();
        assert!(big.to_finite_f64().is_none());
        assert!(rel(big.log_abs, 2_605.115_850_361_734) < 1e-15);
    }

    #[test]
    fn sin_pi_exact_points() {
        assert_eq!(sin_pi(3.0), 0.0);
        assert_eq!(sin_pi(-2.0), 0.0);
        assert_eq!(sin_pi(0.5), 1.0);
        assert_eq!(sin_pi(-0.5), -1.0);
        assert_eq!(sin_pi(1.5), -1.0);
        assert!((sin_pi(1.0 / 6.0) - 0.5).abs() < 1e-16);
    }

    #[test]
    fn bernoulli_small_values() {
        let t = bernoulli_numbers(4).unwrap();
        assert_eq!(t.values().len(), 5);
        assert_eq!(t.get(0), Some(1.0));
        assert_eq!(t.get(1), Some(-0.5));
        assert_eq!(t.get(2), Some(1.0 / 6.0));
        assert_eq!(t.get(3), Some(0.0));
        let t = bernoulli_numbers(8).unwrap();
        assert_eq!(t.get(8), Some(-1.0 / 30.0));
    }

    #[test]
    fn bernoulli_bad_index() {
        for m in [0, 3, 61, 62, 100] {
            assert!(
                matches!(bernoulli_numbers(m), Err(Error::Argument(_))),
                "{m}"
            );
        }
    }

    #[test]
    fn bernoulli_odd_entries_vanish() {
        let t = bernoulli_numbers(60).unwrap();
        for i in (3..=60).step_by(2) {
            assert_eq!(t.get(i), Some(0.0));
        }
    }

    #[test]
    fn bernoulli_recurrence_holds() {
        let t = bernoulli_numbers(60).unwrap();
        for m in 1..=60 {
            let r = t.recurrence_residual(m).unwrap();
            assert!(r <= 1e-15, "m = {m}: residual {r}");
        }
    }

    #[test]
    fn stirling_against_lanczos() {
        let lg10 = log_gamma(10.0).unwrap();
        assert!((stirling_log_gamma(10.0, 5).unwrap() - lg10).abs() < 1e-10);
        let lg = log_gamma(1e6).unwrap();
        assert!(rel(stirling_log_gamma(1e6, 1).unwrap(), lg) < 1e-12);
    }

    #[test]
    fn stirling_leading_term_ratio_tends_to_one() {
        let mut prev = f64::INFINITY;
        for x in [10.0, 100.0, 1000.0, 10000.0] {
            let d = (stirling_log_gamma(x, 0).unwrap() - log_gamma(x).unwrap()).exp();
            let err = (d - 1.0).abs();
            assert!(err < prev);
            prev = err;
        }
        assert!(prev < 1e-5);
    }

    #[test]
    fn stirling_truncation_bounded_by_first_omitted_term() {
        let t = default_bernoulli_table();
        for &x in &[3.0, 7.5, 12.0, 40.0] {
            let exact = log_gamma(x).unwrap();
            for terms in 0..6 {
                let approx = t.stirling_log_gamma(x, terms).unwrap();
                let j = (terms + 1) as f64;
                let omitted = t.get(2 * terms + 2).unwrap()
                    / (2.0 * j * (2.0 * j - 1.0) * x.powf(2.0 * j - 1.0));
                assert!(
                    (approx - exact).abs() <= omitted.abs() + 1e-13,
                    "x={x} terms={terms}"
                );
            }
        }
    }

    #[test]
    fn stirling_errors() {
        assert!(matches!(stirling_log_gamma(0.5, 2), Err(Error::Domain(_))));
        assert!(matches!(
            stirling_log_gamma(5.0, 31),
            Err(Error::Argument(_))
        ));
        let small = bernoulli_numbers(4).unwrap();
        assert!(matches!(
            small.stirling_log_gamma(5.0, 3),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn log_value_arithmetic() {
        let a = LogValue::from_f64(-3.0);
        let b = LogValue::from_f64(4.0);
        assert!(((a * b).to_f64() + 12.0).abs() < 1e-13);
        assert!(((a / b).to_f64() + 0.75).abs() < 1e-15);
        assert!((a * LogValue::ZERO).is_zero());
        assert_eq!(LogValue::from_f64(0.0), LogValue::ZERO);
        assert_eq!(LogValue::ZERO.to_f64(), 0.0);
        assert!((b.powf(0.5).to_f64() - 2.0).abs() < 1e-15);
    }
}
