//! Euler's three generalized factorials.
//!
//! For `a, b > 0` and a positive integer `n`:
//!
//! * `Γ_E(n) = a (a + b) (a + 2b) ⋯ (a + (n − 1) b)`
//! * `Δ(n)   = a (a + 2b) (a + 4b) ⋯ (a + (2n − 2) b)`
//! * `Θ(n)   = (a + b) (a + 3b) ⋯ (a + (2n − 1) b)`
//!
//! Each is a Gamma ratio in disguise, `Γ_E(x) = b^x Γ(x + a/b) / Γ(a/b)`,
//! which carries the definition to real `x`. `Δ` is `Γ_E` with `b ↦ 2b`
//! and `Θ` is `Γ_E` with `a ↦ a + b, b ↦ 2b`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::special_core::{log_gamma, LogValue};

/// Tolerance used to decide that a real argument is an integer.
pub const INTEGER_TOLERANCE: f64 = 1e-9;

/// The pair `(a, b)` of positive reals that fixes a family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Parameters {
    a: f64,
    b: f64,
}

impl Parameters {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Argument(format!(
                    "parameter {name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(Parameters { a, b })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// `a / b`, the offset of the Gamma argument in the continuation.
    pub fn ratio(&self) -> f64 {
        self.a / self.b
    }
}

/// Selects one of the three product families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    GammaE,
    Delta,
    Theta,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 3] = [FamilyKind::GammaE, FamilyKind::Delta, FamilyKind::Theta];

    /// Parameters `(a', b')` such that this family at `(a, b)` is `Γ_E` at `(a', b')`.
    pub fn as_gamma_e(self, params: Parameters) -> Parameters {
        let (a, b) = (params.a, params.b);
        match self {
            FamilyKind::GammaE => params,
            FamilyKind::Delta => Parameters { a, b: 2.0 * b },
            FamilyKind::Theta => Parameters {
                a: a + b,
                b: 2.0 * b,
            },
        }
    }

    /// The `j`-th factor (zero based) of the integer product.
    pub fn factor(self, params: Parameters, j: u64) -> f64 {
        let (a, b) = (params.a, params.b);
        let j = j as f64;
        match self {
            FamilyKind::GammaE => a + j * b,
            FamilyKind::Delta => a + 2.0 * j * b,
            FamilyKind::Theta => a + (2.0 * j + 1.0) * b,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::GammaE => "gammaE",
            FamilyKind::Delta => "delta",
            FamilyKind::Theta => "theta",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gammaE" | "gamma_e" | "gammae" => Ok(FamilyKind::GammaE),
            "delta" => Ok(FamilyKind::Delta),
            "theta" => Ok(FamilyKind::Theta),
            other => Err(Error::Argument(format!("unknown family '{other}'"))),
        }
    }
}

/// Nearest integer to `x` if it lies within [`INTEGER_TOLERANCE`].
pub fn as_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() <= INTEGER_TOLERANCE).then_some(r as i64)
}

/// The exact product of the first `n` factors, accumulated in log space
/// with compensated summation.
pub fn product_oracle(kind: FamilyKind, params: Parameters, n: u64) -> Result<LogValue> {
    if n < 1 {
        return Err(Error::Argument(
            "product_oracle needs at least one factor (n >= 1)".into(),
        ));
    }
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for j in 0..n {
        let term = kind.factor(params, j).ln();
        let t = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - t) + term
        } else {
            (term - t) + sum
        };
        sum = t;
    }
    Ok(LogValue::from_log(sum + comp))
}

/// `b^x Γ(x + a/b) / Γ(a/b)` in log space.
fn continuation(params: Parameters, x: f64, label: &str) -> Result<LogValue> {
    let offset = params.ratio();
    let shifted = x + offset;
    if !x.is_finite() || shifted <= 0.0 {
        return Err(Error::Domain(format!(
            "{label}({x}) needs x + {offset} > 0"
        )));
    }
    Ok(LogValue::from_log(
        x * params.b.ln() + log_gamma(shifted)? - log_gamma(offset)?,
    ))
}

/// Real-argument continuation of any of the three families.
pub fn evaluate(kind: FamilyKind, params: Parameters, x: f64) -> Result<LogValue> {
    continuation(kind.as_gamma_e(params), x, kind.name())
}

/// `Γ_E(x) = b^x Γ(x + a/b) / Γ(a/b)`.
pub fn gamma_e(params: Parameters, x: f64) -> Result<LogValue> {
    evaluate(FamilyKind::GammaE, params, x)
}

/// `Δ(x) = (2b)^x Γ(x + a/(2b)) / Γ(a/(2b))`.
pub fn delta(params: Parameters, x: f64) -> Result<LogValue> {
    evaluate(FamilyKind::Delta, params, x)
}

/// `Θ(x) = (2b)^x Γ(x + (a+b)/(2b)) / Γ((a+b)/(2b))`.
pub fn theta(params: Parameters, x: f64) -> Result<LogValue> {
    evaluate(FamilyKind::Theta, params, x)
}
