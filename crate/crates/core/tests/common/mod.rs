//! Test-only oracles that do not share code paths with the library.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Nodes and weights of `n`-point Gauss–Legendre quadrature on `[-1, 1]`,
/// found by Newton iteration on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut rule = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(x) and P_n'(x) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let step = p1 / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        rule.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    rule
}

fn gauss_panel<F: Fn(f64) -> f64>(f: &F, rule: &[(f64, f64)], lo: f64, hi: f64) -> f64 {
    let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    half * rule
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum::<f64>()
}

/// Adaptive bisection with a 20-point Gauss–Legendre rule on each panel.
/// A panel is accepted when its two halves agree with it to within its
/// share of `rel_tol · |estimate|`.
pub fn adaptive_gauss<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, rel_tol: f64) -> f64 {
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        rule: &[(f64, f64)],
        lo: f64,
        hi: f64,
        whole: f64,
        abs_tol: f64,
        depth: u32,
    ) -> f64 {
        let mid = 0.5 * (lo + hi);
        let left = gauss_panel(f, rule, lo, mid);
        let right = gauss_panel(f, rule, mid, hi);
        let both = left + right;
        if depth == 0 || (both - whole).abs() <= abs_tol {
            return both;
        }
        recurse(f, rule, lo, mid, left, 0.5 * abs_tol, depth - 1)
            + recurse(f, rule, mid, hi, right, 0.5 * abs_tol, depth - 1)
    }

    let rule = gauss_legendre(20);
    let whole = gauss_panel(f, &rule, lo, hi);
    recurse(f, &rule, lo, hi, whole, rel_tol * whole.abs(), 20)
}

/// `Γ(x) = ∫_0^∞ e^{-t} t^{x-1} dt` by adaptive quadrature, `x > 0`.
///
/// The integral is split at `t = 1`. On `[0, 1]` the substitution
/// `t = u^{1/x}` turns it into `(1/x) ∫_0^1 exp(−u^{1/x}) du`, which has no
/// endpoint singularity. The tail is cut where the integrand drops below
/// `1e-18` of its peak.
pub fn gamma_quadrature(x: f64) -> f64 {
    assert!(x > 0.0);
    let inv = 1.0 / x;
    let head = inv * adaptive_gauss(&|u: f64| (-u.powf(inv)).exp(), 0.0, 1.0, 1e-14);

    let integrand = |t: f64| (-t).exp() * t.powf(x - 1.0);
    let peak_at = (x - 1.0).max(1.0);
    let peak = integrand(peak_at);
    let mut cutoff = peak_at + 1.0;
    while integrand(cutoff) >= 1e-18 * peak {
        cutoff *= 1.25;
    }
    // split the tail at the peak so each piece is monotone
    let tail = if peak_at > 1.0 {
        adaptive_gauss(&integrand, 1.0, peak_at, 1e-14)
            + adaptive_gauss(&integrand, peak_at, cutoff, 1e-14)
    } else {
        adaptive_gauss(&integrand, 1.0, cutoff, 1e-14)
    };
    head + tail
}

/// Bernoulli numbers by the Akiyama–Tanigawa algorithm in exact rationals,
/// converted to the `B_1 = −1/2` convention.
pub fn bernoulli_akiyama_tanigawa(max_index: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(max_index + 1);
    let mut row: Vec<BigRational> = Vec::new();
    for m in 0..=max_index {
        row.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        let mut b = row[0].clone();
        if m == 1 {
            b = -b;
        }
        out.push(b.to_f64().unwrap());
    }
    out
}

/// Checks `Σ_{j=0}^{m} C(m+1, j) B_j = 0` exactly on the Akiyama–Tanigawa numbers.
pub fn exact_recurrence_is_zero(max_index: usize) -> bool {
    let mut b: Vec<BigRational> = Vec::new();
    let mut row: Vec<BigRational> = Vec::new();
    for m in 0..=max_index {
        row.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &row[j - 1] - &row[j];
            row[j - 1] = diff * BigRational::from_integer(BigInt::from(j));
        }
        b.push(if m == 1 {
            -row[0].clone()
        } else {
            row[0].clone()
        });
    }
    (1..=max_index).all(|m| {
        let mut binom = BigInt::one();
        let mut sum = BigRational::zero();
        for (j, bj) in b.iter().enumerate().take(m + 1) {
            sum += bj * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        sum.abs().is_zero()
    })
}

pub fn relative(value: f64, reference: f64) -> f64 {
    ((value - reference) / reference).abs()
}

/// `ln Γ(x)` to 20 digits from an independent 30-digit evaluation.
#[allow(clippy::excessive_precision)]
pub const LOG_GAMMA_REFERENCE: [(f64, f64); 18] = [
    (1e-6, 13.815509980749431669),
    (1e-3, 6.9071788853838536825),
    (0.1, 2.2527126517342059599),
    (0.3, 1.0957979948180755217),
    (0.5, 0.57236494292470008707),
    (0.75, 0.20328095143129537148),
    (1.5, -0.12078223763524522235),
    (2.5, 0.28468287047291915963),
    (3.7, 1.4280723266653879219),
    (7.2, 6.9568480798883399731),
    (10.0, 12.801827480081469611),
    (33.3, 82.603723581654952928),
    (50.0, 144.56574394634488601),
    (100.0, 359.13420536957539878),
    (170.5, 704.00442773420467079),
    (1000.0, 5905.2204232091812118),
    (12345.6, 103959.18506616845558),
    (1e6, 12815504.56914761166),
];
