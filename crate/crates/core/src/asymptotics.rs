//! Leading-order growth laws of the three families and their constants.
//!
//! ```text
//! Γ_E(x) ~ A e^{-x} (a − b + bx)^{a/b + x − 1/2}
//! Δ(x)   ~ B e^{-x} (a − 2b + 2bx)^{a/(2b) + x − 1/2}
//! Θ(x)   ~ C e^{-x} (a − b + 2bx)^{a/(2b) + x}
//! ```
//!
//! The constants obey `A = BC/√e` and `B = Ck√e` with `k = Δ(1/2)`.
//! Eliminating `C` gives `A = B²/(ek)`, which after substituting the closed
//! forms of `A`, `B` and `k` is the Legendre duplication formula at `x = a/b`.

use crate::error::{Error, Result};
use crate::euler_family::{self, product_oracle, FamilyKind, Parameters};
use crate::special_core::{default_bernoulli_table, log_gamma, LogValue, HALF_LN_2PI};

/// Residual bound above which [`assemble_constants`] reports a bug.
pub const CONSISTENCY_TOLERANCE: f64 = 1e-11;

/// Smallest product length accepted by [`estimate_constant`].
pub const MIN_ESTIMATE_TERMS: u64 = 10;

/// `ln A = ln √(2π) − ln Γ(a/b) + (1 − a/b) + (1/2 − a/b) ln b`
pub fn log_constant_a(params: Parameters) -> Result<f64> {
    let r = params.ratio();
    Ok(HALF_LN_2PI - log_gamma(r)? + (1.0 - r) + (0.5 - r) * params.b().ln())
}

/// `ln B`, which is `ln A` with `b ↦ 2b`.
pub fn log_constant_b(params: Parameters) -> Result<f64> {
    log_constant_a(FamilyKind::Delta.as_gamma_e(params))
}

/// `ln k = ln Δ(1/2)`.
pub fn log_constant_k(params: Parameters) -> Result<f64> {
    Ok(euler_family::delta(params, 0.5)?.log_abs)
}

/// `ln C = ln B − ln k − 1/2`.
pub fn log_constant_c(params: Parameters) -> Result<f64> {
    Ok(log_constant_b(params)? - log_constant_k(params)? - 0.5)
}

pub fn constant_a(params: Parameters) -> Result<f64> {
    log_constant_a(params).map(f64::exp)
}

pub fn constant_b(params: Parameters) -> Result<f64> {
    log_constant_b(params).map(f64::exp)
}

pub fn constant_k(params: Parameters) -> Result<f64> {
    log_constant_k(params).map(f64::exp)
}

pub fn constant_c(params: Parameters) -> Result<f64> {
    log_constant_c(params).map(f64::exp)
}

/// `k = √(2b) Γ(1/2 + a/(2b)) / Γ(a/(2b))`, written out instead of going
/// through the `Δ` continuation.
pub fn constant_k_closed_form(params: Parameters) -> Result<f64> {
    let c = params.a() / (2.0 * params.b());
    Ok((0.5 * (2.0 * params.b()).ln() + log_gamma(0.5 + c)? - log_gamma(c)?).exp())
}

/// `C = √(2π) (2b)^{−a/(2b)} e^{1/2 − a/(2b)} / Γ(1/2 + a/(2b))`.
pub fn constant_c_closed_form(params: Parameters) -> Result<f64> {
    let c = params.a() / (2.0 * params.b());
    Ok((HALF_LN_2PI - c * (2.0 * params.b()).ln() + 0.5 - c - log_gamma(0.5 + c)?).exp())
}

/// The constant in the growth law of `kind`.
pub fn log_constant(kind: FamilyKind, params: Parameters) -> Result<f64> {
    match kind {
        FamilyKind::GammaE => log_constant_a(params),
        FamilyKind::Delta => log_constant_b(params),
        FamilyKind::Theta => log_constant_c(params),
    }
}

/// The four constants belonging to one parameter pair.
///
/// `a`, `b`, `c` hold the growth constants `A`, `B`, `C` of `Γ_E`, `Δ`, `Θ`
/// (not the family parameters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticConstants {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub k: f64,
}

fn relative(lhs: f64, rhs: f64) -> f64 {
    ((lhs - rhs) / lhs).abs()
}

impl AsymptoticConstants {
    /// `|A − BC/√e| / A`
    pub fn product_relation_residual(&self) -> f64 {
        relative(self.a, self.b * self.c / 0.5_f64.exp())
    }

    /// `|B − Ck√e| / B`
    pub fn bridge_relation_residual(&self) -> f64 {
        relative(self.b, self.c * self.k * 0.5_f64.exp())
    }

    /// `|A − B²/(ek)| / A`
    pub fn squared_relation_residual(&self) -> f64 {
        relative(self.a, self.b * self.b / (std::f64::consts::E * self.k))
    }

    pub fn max_residual(&self) -> f64 {
        self.product_relation_residual()
            .max(self.bridge_relation_residual())
            .max(self.squared_relation_residual())
    }
}

/// Computes `A`, `B`, `C`, `k` and checks the three relations among them.
pub fn assemble_constants(params: Parameters) -> Result<AsymptoticConstants> {
    let constants = AsymptoticConstants {
        a: constant_a(params)?,
        b: constant_b(params)?,
        c: constant_c(params)?,
        k: constant_k(params)?,
    };
    let checks = [
        ("A = BC/sqrt(e)", constants.product_relation_residual()),
        ("B = Ck sqrt(e)", constants.bridge_relation_residual()),
        ("A = B^2/(e k)", constants.squared_relation_residual()),
    ];
    for (name, residual) in checks {
        if residual.is_nan() || residual > CONSISTENCY_TOLERANCE {
            return Err(Error::Consistency(format!(
                "{name} violated for a={}, b={}: residual {residual:e}",
                params.a(),
                params.b()
            )));
        }
    }
    Ok(constants)
}

/// Base and exponent of the power in the growth law of `kind`:
/// `(a' − b' + b'x, a'/b' + x − 1/2)` where `(a', b')` are the equivalent
/// `Γ_E` parameters.
fn power_law(kind: FamilyKind, params: Parameters, x: f64) -> Result<(f64, f64)> {
    let eff = kind.as_gamma_e(params);
    let base = eff.a() - eff.b() + eff.b() * x;
    if !x.is_finite() || base <= 0.0 {
        return Err(Error::Domain(format!(
            "asymptote of {kind} at x = {x} has non-positive base {base}"
        )));
    }
    Ok((base, eff.ratio() + x - 0.5))
}

/// `ln(e^{-x} base^{exponent})`, the growth law without its constant.
fn log_growth(kind: FamilyKind, params: Parameters, x: f64) -> Result<f64> {
    let (base, exponent) = power_law(kind, params, x)?;
    Ok(-x + exponent * base.ln())
}

/// The leading-order asymptote of `kind` at `x`, constant included.
pub fn leading_asymptote(kind: FamilyKind, params: Parameters, x: f64) -> Result<LogValue> {
    let growth = log_growth(kind, params, x)?;
    Ok(LogValue::from_log(log_constant(kind, params)? + growth))
}

/// A constant recovered from the exact product and compared with its closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantEstimate {
    pub n_used: u64,
    pub estimate: f64,
    pub closed_form: f64,
    pub relative_error: f64,
}

/// Divides the exact `n`-term product by the growth law without its
/// constant. The quotient tends to the constant with error `O(1/n)`.
pub fn estimate_constant(kind: FamilyKind, params: Parameters, n: u64) -> Result<ConstantEstimate> {
    if n < MIN_ESTIMATE_TERMS {
        return Err(Error::Argument(format!(
            "estimate_constant needs n >= {MIN_ESTIMATE_TERMS}, got {n}"
        )));
    }
    let product = product_oracle(kind, params, n)?;
    let estimate = (product.log_abs - log_growth(kind, params, n as f64)?).exp();
    let closed_form = log_constant(kind, params)?.exp();
    Ok(ConstantEstimate {
        n_used: n,
        estimate,
        closed_form,
        relative_error: (estimate - closed_form).abs() / closed_form,
    })
}

/// Leading asymptote plus `terms` Bernoulli corrections.
///
/// With `(a', b')` the equivalent `Γ_E` parameters and `z = x + a'/b' − 1`,
/// the family equals `b'^x z Γ(z) / Γ(a'/b')`; the leading asymptote is this
/// with `ln Γ(z)` replaced by the bare Stirling term, so the corrections are
/// the Stirling series tail at `z`. Requires `z ≥ 1`.
pub fn em_corrected_log(
    kind: FamilyKind,
    params: Parameters,
    x: f64,
    terms: usize,
) -> Result<LogValue> {
    let leading = leading_asymptote(kind, params, x)?;
    let eff = kind.as_gamma_e(params);
    let z = x + eff.ratio() - 1.0;
    if z < 1.0 {
        return Err(Error::Domain(format!(
            "correction series for {kind} at x = {x} needs x + {} >= 2",
            eff.ratio()
        )));
    }
    let correction = default_bernoulli_table().stirling_correction(z, terms)?;
    Ok(LogValue::from_log(leading.log_abs + correction))
}
