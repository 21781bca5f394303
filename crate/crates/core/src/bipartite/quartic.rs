//! Real solutions `(k, i)` of
//!
//! ```text
//! m = k - 1 + C(i - 1, 2)
//! n = k - 1 + C(k - i - 1, 2)
//! ```
//!
//! and the distance `e(m, n)` from `sg(K_{n,m})` to the nearest such `k`.
//!
//! With `a = i - 1`, `b = k - i - 1` the system reads `a(a-1) = 2(m-k+1)`,
//! `b(b-1) = 2(n-k+1)`, `a + b = k - 2`. Subtracting gives
//! `(a - b)(k - 3) = 2(m - n)`, so for `k != 3`
//! `a = ((k-2)(k-3) + 2(m-n)) / (2(k-3))`, and substituting back yields
//!
//! ```text
//! ((k-2)(k-3) + 2D) ((k-4)(k-3) + 2D) = 8 (k-3)^2 (m - k + 1),   D = m - n
//! ```
//!
//! a quartic in `k` with integer coefficients.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{binom2, sg_bipartite, BipartiteError};
use crate::scalar::Real;

/// Integer polynomial, coefficients in ascending degree.
fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    let len = a.len().max(b.len());
    (0..len)
        .map(|i| a.get(i).copied().unwrap_or(0) - b.get(i).copied().unwrap_or(0))
        .collect()
}

/// Coefficients `[c0, c1, c2, c3, c4]` of the quartic in `k`, exact.
pub fn system_quartic(n: u64, m: u64) -> [i128; 5] {
    let d = i128::from(m) - i128::from(n);
    let m1 = i128::from(m) + 1;
    // (k-2)(k-3) + 2D and (k-4)(k-3) + 2D
    let left = poly_mul(&[6 + 2 * d, -5, 1], &[12 + 2 * d, -7, 1]);
    // 8 (k-3)^2 (m + 1 - k)
    let right = poly_mul(&poly_mul(&[9, -6, 1], &[m1, -1]), &[8]);
    let p = poly_sub(&left, &right);
    [p[0], p[1], p[2], p[3], p[4]]
}

fn horner<F: Real>(coeffs: &[F], x: F) -> F {
    coeffs.iter().rev().fold(F::zero(), |acc, &c| acc * x + c)
}

fn horner_complex<F: Real>(coeffs: &[F], z: Complex<F>) -> Complex<F> {
    coeffs
        .iter()
        .rev()
        .fold(Complex::new(F::zero(), F::zero()), |acc, &c| acc * z + c)
}

/// All complex roots of a polynomial (ascending coefficients, nonzero
/// leading term) by Aberth-Ehrlich simultaneous iteration.
pub fn polynomial_roots<F: Real>(coeffs: &[F]) -> Vec<Complex<F>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    let degree = coeffs.len() - 1;
    if degree == 0 {
        return Vec::new();
    }
    let lead = coeffs[degree];
    let monic: Vec<F> = coeffs.iter().map(|&c| c / lead).collect();
    let deriv: Vec<F> = (1..=degree)
        .map(|i| monic[i] * F::count(i as u64))
        .collect();

    // Cauchy bound on root moduli
    let radius = F::one()
        + monic[..degree]
            .iter()
            .fold(F::zero(), |acc, c| acc.max(c.abs()));
    let start = F::lit(0.4);
    let mut z: Vec<Complex<F>> = (0..degree)
        .map(|j| {
            let theta = F::TAU() * F::count(j as u64) / F::count(degree as u64) + start;
            Complex::from_polar(radius * F::lit(0.5), theta)
        })
        .collect();

    let tol = F::epsilon() * F::lit(4.0);
    for _ in 0..500 {
        let mut max_step = F::zero();
        for j in 0..degree {
            let p = horner_complex(&monic, z[j]);
            let dp = horner_complex(&deriv, z[j]);
            if p.norm().is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion = (0..degree)
                .filter(|&l| l != j)
                .fold(Complex::new(F::zero(), F::zero()), |acc, l| {
                    acc + (z[j] - z[l]).finv()
                });
            let step = ratio / (Complex::new(F::one(), F::zero()) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[j] = z[j] - step;
                max_step = max_step.max(step.norm() / (F::one() + z[j].norm()));
            }
        }
        if max_step <= tol {
            break;
        }
    }
    z
}

/// Newton iterations on a real polynomial, stopped when they stop helping.
fn polish<F: Real>(coeffs: &[F], mut x: F) -> F {
    let deriv: Vec<F> = (1..coeffs.len())
        .map(|i| coeffs[i] * F::count(i as u64))
        .collect();
    let mut best = horner(coeffs, x).abs();
    for _ in 0..60 {
        let dp = horner(&deriv, x);
        if dp.is_zero() {
            break;
        }
        let next = x - horner(coeffs, x) / dp;
        let val = horner(coeffs, next).abs();
        if val.partial_cmp(&best) != Some(std::cmp::Ordering::Less) {
            break;
        }
        best = val;
        x = next;
    }
    x
}

/// A real solution of the system, with its back-substituted `i` and the
/// larger of the two equation residuals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticRoot<F> {
    pub k: F,
    pub i: F,
    pub residual: F,
}

fn half_binom<F: Real>(x: F) -> F {
    x * (x - F::one()) / F::lit(2.0)
}

/// Residuals `(m-side, n-side)` of the system at `(k, i)`.
pub fn system_residuals<F: Real>(n: u64, m: u64, k: F, i: F) -> (F, F) {
    let one = F::one();
    let rm = F::count(m) - (k - one + half_binom(i - one));
    let rn = F::count(n) - (k - one + half_binom(k - i - one));
    (rm.abs(), rn.abs())
}

/// `i` recovered from `k`. At `k = 3` the elimination degenerates; then a
/// solution exists only when `m = n`, with `i - 1` a root of `a(a-1) = 2(m-2)`.
fn back_substitute<F: Real>(n: u64, m: u64, k: F) -> Option<F> {
    let three = F::lit(3.0);
    let two = F::lit(2.0);
    let d = F::count(m) - F::count(n);
    let denom = two * (k - three);
    if denom.abs() > F::epsilon().sqrt() * (F::one() + k.abs()) {
        let a = ((k - two) * (k - three) + two * d) / denom;
        return Some(a + F::one());
    }
    if m != n {
        return None;
    }
    let disc = F::one() + F::lit(8.0) * (F::count(m) - two);
    (disc >= F::zero()).then(|| (F::one() + disc.sqrt()) / two + F::one())
}

/// Real solutions `k` of the system, ascending, each with residual at most
/// `tol`. Roots of the quartic whose imaginary part is not negligible, or
/// that fail the residual check, are dropped.
pub fn quartic_roots_with_tol<F: Real>(n: u64, m: u64, tol: F) -> Vec<QuarticRoot<F>> {
    let exact = system_quartic(n, m);
    let coeffs: Vec<F> = exact
        .iter()
        .map(|&c| F::from_i128(c).expect("coefficient fits"))
        .collect();
    let mut out: Vec<QuarticRoot<F>> = Vec::new();
    for z in polynomial_roots(&coeffs) {
        let scale = F::one() + z.re.abs();
        if z.im.abs() > F::epsilon().sqrt() * F::lit(16.0) * scale {
            continue;
        }
        let k = polish(&coeffs, z.re);
        let Some(i) = back_substitute(n, m, k) else {
            continue;
        };
        let (rm, rn) = system_residuals(n, m, k, i);
        let residual = rm.max(rn);
        if residual <= tol
            && !out
                .iter()
                .any(|r| (r.k - k).abs() <= F::epsilon().sqrt() * scale)
        {
            out.push(QuarticRoot { k, i, residual });
        }
    }
    out.sort_by(|a, b| a.k.partial_cmp(&b.k).expect("finite roots"));
    out
}

/// [`quartic_roots_with_tol`] with the default residual tolerance `1e-6`.
pub fn quartic_roots<F: Real>(n: u64, m: u64) -> Vec<QuarticRoot<F>> {
    quartic_roots_with_tol(n, m, F::lit(1e-6))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureSample<F> {
    pub n: u64,
    pub m: u64,
    pub sg: u64,
    pub roots: Vec<F>,
    /// `None` when the system has no real solution.
    pub e: Option<F>,
}

/// `e(m, n)`: distance from `sg(K_{n,m})` to the nearest real solution `k`.
pub fn conjecture_sample<F: Real>(n: u64, m: u64) -> Result<ConjectureSample<F>, BipartiteError> {
    let sg = sg_bipartite(n, m)?.k;
    let roots: Vec<F> = quartic_roots::<F>(n, m).into_iter().map(|r| r.k).collect();
    let target = F::count(sg);
    let e = roots
        .iter()
        .map(|&k| (target - k).abs())
        .fold(None, |acc: Option<F>, d| Some(acc.map_or(d, |a| a.min(d))));
    Ok(ConjectureSample { n, m, sg, roots, e })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureScan<F> {
    pub n: u64,
    /// Largest finite `e(m, n)` over `n <= m <= C(n, 2)`.
    pub max_e: F,
    pub argmax_m: u64,
    /// Values of `m` for which the system had no real solution.
    pub rootless: Vec<u64>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjectureError {
    #[error("the scan needs n >= 4")]
    TooSmall,
    #[error(transparent)]
    Bipartite(#[from] BipartiteError),
}

/// Maximum of `e(m, n)` over `n <= m <= C(n, 2)`; ties go to the smaller `m`.
pub fn conjecture_scan<F: Real>(n: u64) -> Result<ConjectureScan<F>, ConjectureError> {
    if n < 4 {
        return Err(ConjectureError::TooSmall);
    }
    let top = binom2(n).ok_or(BipartiteError::TooLarge(n))?;
    let samples: Vec<(u64, Option<F>)> = (n..=top)
        .into_par_iter()
        .map(|m| conjecture_sample::<F>(n, m).map(|s| (m, s.e)))
        .collect::<Result<_, _>>()?;
    let mut best: Option<(F, u64)> = None;
    let mut rootless = Vec::new();
    for (m, e) in samples {
        match e {
            None => rootless.push(m),
            Some(e) => {
                if best.is_none_or(|(b, _)| e > b) {
                    best = Some((e, m));
                }
            }
        }
    }
    let (max_e, argmax_m) = best.unwrap_or((F::infinity(), n));
    Ok(ConjectureScan {
        n,
        max_e,
        argmax_m,
        rootless,
    })
}
