//! Residual checks for the Gamma duplication and multiplication formulas
//! and for the chain of constant relations that leads to duplication.
//!
//! Every comparison is made between logarithms; a residual is
//! `|1 − exp(ln rhs − ln lhs)|`.

use std::f64::consts::{LN_2, PI};
use std::fmt;

use rayon::prelude::*;

use crate::asymptotics::{log_constant_a, log_constant_b, log_constant_k};
use crate::error::{Error, Result};
use crate::euler_family::Parameters;
use crate::special_core::{log_gamma, HALF_LN_2PI};

pub const DUPLICATION_TOLERANCE: f64 = 1e-11;
pub const CHAIN_TOLERANCE: f64 = 1e-11;
pub const MULTIPLICATION_TOLERANCE: f64 = 1e-10;

pub const MIN_MULTIPLICATION_ORDER: u32 = 2;
pub const MAX_MULTIPLICATION_ORDER: u32 = 12;

/// Grid points closer than this to a pole are moved by [`POLE_NUDGE`].
pub const POLE_PROXIMITY: f64 = 1e-9;
pub const POLE_NUDGE: f64 = 1e-6;

fn log_residual(log_lhs: f64, log_rhs: f64) -> f64 {
    (log_rhs - log_lhs).exp_m1().abs()
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} requires finite x > 0, got {x}"
        )))
    }
}

/// Relative residual of `Γ(x) = 2^{x−1} / √π · Γ(x/2) Γ((x+1)/2)`.
pub fn duplication_residual(x: f64) -> Result<f64> {
    check_positive(x, "duplication_residual")?;
    let lhs = log_gamma(x)?;
    let rhs = (x - 1.0) * LN_2 - 0.5 * PI.ln() + log_gamma(0.5 * x)? + log_gamma(0.5 * (x + 1.0))?;
    Ok(log_residual(lhs, rhs))
}

/// Relative residual of the Gauss multiplication formula of order `n`:
/// `Γ(x) = √(n / (2π)^{n−1}) · n^{x−1} · Π_{j=0}^{n−1} Γ((x + j)/n)`.
///
/// `n = 2` is delegated to [`duplication_residual`].
pub fn multiplication_residual(n: u32, x: f64) -> Result<f64> {
    if !(MIN_MULTIPLICATION_ORDER..=MAX_MULTIPLICATION_ORDER).contains(&n) {
        return Err(Error::Domain(format!(
            "multiplication order must be in {MIN_MULTIPLICATION_ORDER}..={MAX_MULTIPLICATION_ORDER}, got {n}"
        )));
    }
    check_positive(x, "multiplication_residual")?;
    if n == 2 {
        return duplication_residual(x);
    }
    let nf = f64::from(n);
    let ln_n = nf.ln();
    let lhs = log_gamma(x)?;
    let mut rhs = 0.5 * ln_n - (nf - 1.0) * HALF_LN_2PI + (x - 1.0) * ln_n;
    for j in 0..n {
        rhs += log_gamma((x + f64::from(j)) / nf)?;
    }
    Ok(log_residual(lhs, rhs))
}

/// The identity evaluated by [`verify_grid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Duplication,
    Multiplication(u32),
}

impl Identity {
    pub fn residual(self, x: f64) -> Result<f64> {
        match self {
            Identity::Duplication => duplication_residual(x),
            Identity::Multiplication(n) => multiplication_residual(n, x),
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Identity::Duplication => DUPLICATION_TOLERANCE,
            Identity::Multiplication(_) => MULTIPLICATION_TOLERANCE,
        }
    }

    /// Arguments handed to the Gamma function when checking at `x`.
    fn gamma_arguments(self, x: f64) -> Vec<f64> {
        let n = match self {
            Identity::Duplication => 2,
            Identity::Multiplication(n) => n,
        };
        let nf = f64::from(n);
        std::iter::once(x)
            .chain((0..n).map(|j| (x + f64::from(j)) / nf))
            .collect()
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity::Duplication => f.write_str("duplication"),
            Identity::Multiplication(n) => write!(f, "multiplication(n={n})"),
        }
    }
}

/// Residuals of one identity over a set of points.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub identity_name: String,
    pub grid: Vec<f64>,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    pub mean_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(identity_name: String, grid: Vec<f64>, residuals: Vec<f64>, tolerance: f64) -> Self {
        assert_eq!(grid.len(), residuals.len(), "one residual per grid point");
        let max_residual = residuals.iter().copied().fold(0.0, f64::max);
        let mean_residual = if residuals.is_empty() {
            0.0
        } else {
            residuals.iter().sum::<f64>() / residuals.len() as f64
        };
        // NaN residuals must fail the check
        let passed = residuals.iter().all(|r| !r.is_nan()) && max_residual <= tolerance;
        VerificationReport {
            identity_name,
            grid,
            residuals,
            max_residual,
            mean_residual,
            tolerance,
            passed,
        }
    }
}

fn nudge_off_poles(identity: Identity, x: f64) -> f64 {
    let near_pole = identity.gamma_arguments(x).into_iter().any(|t| {
        let r = t.round();
        r <= 0.0 && (t - r).abs() <= POLE_PROXIMITY
    });
    if near_pole {
        x + POLE_NUDGE
    } else {
        x
    }
}

/// `steps` evenly spaced points from `x_min` to `x_max` inclusive.
pub fn uniform_grid(x_min: f64, x_max: f64, steps: usize) -> Result<Vec<f64>> {
    if !(x_min.is_finite() && x_max.is_finite()) || !(0.0 < x_min && x_min < x_max) {
        return Err(Error::Argument(format!(
            "grid needs 0 < x_min < x_max, got [{x_min}, {x_max}]"
        )));
    }
    if steps < 2 {
        return Err(Error::Argument(format!(
            "grid needs at least 2 steps, got {steps}"
        )));
    }
    let h = (x_max - x_min) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                x_max
            } else {
                x_min + i as f64 * h
            }
        })
        .collect())
}

/// Evaluates `identity` on a uniform grid.
///
/// Points are evaluated in parallel; the report does not depend on the
/// evaluation order.
pub fn verify_grid(
    identity: Identity,
    x_min: f64,
    x_max: f64,
    steps: usize,
    tolerance: f64,
) -> Result<VerificationReport> {
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(Error::Argument(format!(
            "tolerance must be finite and >= 0, got {tolerance}"
        )));
    }
    if let Identity::Multiplication(n) = identity {
        if !(MIN_MULTIPLICATION_ORDER..=MAX_MULTIPLICATION_ORDER).contains(&n) {
            return Err(Error::Argument(format!(
                "multiplication order must be in {MIN_MULTIPLICATION_ORDER}..={MAX_MULTIPLICATION_ORDER}, got {n}"
            )));
        }
    }
    let grid: Vec<f64> = uniform_grid(x_min, x_max, steps)?
        .into_iter()
        .map(|x| nudge_off_poles(identity, x))
        .collect();
    let residuals = grid
        .par_iter()
        .map(|&x| identity.residual(x))
        .collect::<Result<Vec<f64>>>()?;
    Ok(VerificationReport::new(
        identity.to_string(),
        grid,
        residuals,
        tolerance,
    ))
}

/// Residual of `A = B² e^{-1} / k` with the closed forms of `A`, `B`, `k`.
pub fn constant_relation_residual(params: Parameters) -> Result<f64> {
    let lhs = log_constant_a(params)?;
    let rhs = 2.0 * log_constant_b(params)? - 1.0 - log_constant_k(params)?;
    Ok(log_residual(lhs, rhs))
}

/// Residual of what remains of `A = B² e^{-1} / k` after cancelling common
/// factors: `1/Γ(x) = √(2π) 2^{1/2 − x} / (Γ(x/2) Γ(1/2 + x/2))` with `x = a/b`.
pub fn cancelled_relation_residual(params: Parameters) -> Result<f64> {
    let x = params.ratio();
    let half = params.a() / (2.0 * params.b());
    let lhs = -log_gamma(x)?;
    let rhs = HALF_LN_2PI + (0.5 - x) * LN_2 - log_gamma(half)? - log_gamma(0.5 + half)?;
    Ok(log_residual(lhs, rhs))
}

/// Replays the reduction of the constant relations to the duplication
/// formula for one parameter pair. The report holds three residuals, all
/// at `x = a/b`: the relation `A = B²/(ek)`, its cancelled form, and the
/// duplication formula itself.
pub fn derivation_chain_check(params: Parameters) -> Result<VerificationReport> {
    let x = params.ratio();
    let residuals = vec![
        constant_relation_residual(params)?,
        cancelled_relation_residual(params)?,
        duplication_residual(x)?,
    ];
    Ok(VerificationReport::new(
        format!("derivation_chain(a={}, b={})", params.a(), params.b()),
        vec![x; 3],
        residuals,
        CHAIN_TOLERANCE,
    ))
}
