//! Leading-order growth of `sg(K_{n,m})` when `m` is a function of `n`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Real;

/// How `m` grows with `n` (always `m >= n`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum Regime<F> {
    /// `m = alpha n^beta`, `beta > 2`.
    SuperQuadratic { alpha: F, beta: F },
    /// `m = alpha n^2`, `alpha > 1/2`.
    QuadraticAboveHalf { alpha: F },
    /// `m = n^2/2 + gamma n`, `gamma > -1/2`.
    HalfSquareAbove { gamma: F },
    /// `m = n^2/2 + gamma n`, `gamma <= -1/2`.
    HalfSquareBelow { gamma: F },
    /// `m = alpha n^2`, `0 < alpha < 1/2`.
    QuadraticBelowHalf { alpha: F },
    /// `m = alpha n^beta`, `1 < beta < 2`.
    SubQuadratic { alpha: F, beta: F },
    /// `m = alpha n`, `alpha >= 1`.
    Linear { alpha: F },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("regime parameters out of range: {0}")]
pub struct RegimeError(pub &'static str);

impl<F: Real> Regime<F> {
    /// Case number in the usual listing, 1 through 7.
    pub fn case(&self) -> u8 {
        match self {
            Self::SuperQuadratic { .. } => 1,
            Self::QuadraticAboveHalf { .. } => 2,
            Self::HalfSquareAbove { .. } => 3,
            Self::HalfSquareBelow { .. } => 4,
            Self::QuadraticBelowHalf { .. } => 5,
            Self::SubQuadratic { .. } => 6,
            Self::Linear { .. } => 7,
        }
    }

    pub fn validate(&self) -> Result<(), RegimeError> {
        let half = F::lit(0.5);
        let ok = match *self {
            Self::SuperQuadratic { alpha, beta } => alpha > F::zero() && beta > F::lit(2.0),
            Self::QuadraticAboveHalf { alpha } => alpha > half,
            Self::HalfSquareAbove { gamma } => gamma > -half,
            Self::HalfSquareBelow { gamma } => gamma <= -half,
            Self::QuadraticBelowHalf { alpha } => alpha > F::zero() && alpha < half,
            Self::SubQuadratic { alpha, beta } => {
                alpha > F::zero() && beta > F::one() && beta < F::lit(2.0)
            }
            Self::Linear { alpha } => alpha >= F::one(),
        };
        if ok {
            Ok(())
        } else {
            Err(RegimeError(match self.case() {
                1 => "need alpha > 0 and beta > 2",
                2 => "need alpha > 1/2",
                3 => "need gamma > -1/2",
                4 => "need gamma <= -1/2",
                5 => "need 0 < alpha < 1/2",
                6 => "need alpha > 0 and 1 < beta < 2",
                _ => "need alpha >= 1",
            }))
        }
    }

    /// The `m` this regime prescribes for a given `n`, before rounding.
    pub fn m_of(&self, n: F) -> F {
        let half = F::lit(0.5);
        match *self {
            Self::SuperQuadratic { alpha, beta } | Self::SubQuadratic { alpha, beta } => {
                alpha * n.powf(beta)
            }
            Self::QuadraticAboveHalf { alpha } | Self::QuadraticBelowHalf { alpha } => {
                alpha * n * n
            }
            Self::HalfSquareAbove { gamma } | Self::HalfSquareBelow { gamma } => {
                half * n * n + gamma * n
            }
            Self::Linear { alpha } => alpha * n,
        }
    }

    /// `m_of(n)` rounded to the nearest integer.
    pub fn sample_m(&self, n: u64) -> u64 {
        let m = self.m_of(F::count(n)).round();
        m.to_u64().unwrap_or(0)
    }

    /// Leading term of `sg(K_{n,m})` for this regime.
    pub fn estimate(&self, n: F) -> Result<F, RegimeError> {
        self.validate()?;
        let half = F::lit(0.5);
        let two = F::lit(2.0);
        Ok(match *self {
            Self::SuperQuadratic { alpha, beta } => alpha * n.powf(beta),
            Self::QuadraticAboveHalf { alpha } => (alpha - half) * n * n,
            Self::HalfSquareAbove { gamma } => (gamma + F::lit(1.5)) * n,
            Self::HalfSquareBelow { .. } => n,
            Self::QuadraticBelowHalf { alpha } => (two * alpha).sqrt() * n,
            Self::SubQuadratic { alpha, beta } => (two * alpha).sqrt() * n.powf(beta / two),
            Self::Linear { alpha } => F::SQRT_2() * (F::one() + alpha.sqrt()) * n.sqrt(),
        })
    }
}

impl<F: Real> Regime<F> {
    /// [`Regime::estimate`] plus the `sqrt(n)` term that the leading term
    /// misses when `m = alpha n^2`, `alpha < 1/2`: after `sqrt(2m)` vertices
    /// on the `m`-side, the `(1 - sqrt(2 alpha)) n` vertices left on the
    /// `n`-side need about `sqrt(2 (1 - sqrt(2 alpha)) n)` more. Other
    /// regimes are returned unchanged.
    pub fn refined_estimate(&self, n: F) -> Result<F, RegimeError> {
        let lead = self.estimate(n)?;
        Ok(match *self {
            Self::QuadraticBelowHalf { alpha } => {
                let two = F::lit(2.0);
                lead + (two * (F::one() - (two * alpha).sqrt()) * n).sqrt()
            }
            _ => lead,
        })
    }
}

/// Free-function form of [`Regime::estimate`].
pub fn asymptotic_estimate<F: Real>(regime: &Regime<F>, n: F) -> Result<F, RegimeError> {
    regime.estimate(n)
}
