//! Strong geodetic number of complete bipartite graphs `K_{n,m}`.
//!
//! A set with `s1` vertices on the `n`-side and `s2` on the `m`-side is a
//! strong geodetic set iff `C(s2, 2) >= n - s1` and `C(s1, 2) >= m - s2`:
//! the only geodesics of length two join two vertices of one side and pass
//! through a single vertex of the other.

pub mod asymptotic;
pub mod classify;
pub mod quartic;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::graph::{complete_multipartite_from_blocks, Graph};
use crate::multipartite::selection_certificate;

/// Inputs above this are rejected outright.
pub const MAX_SIDE: u64 = 1_000_000_000;
/// The exact solver scans one side; that side must not exceed this.
pub const SCAN_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BipartiteError {
    #[error("part sizes must be positive")]
    ZeroPart,
    #[error("part size {0} exceeds the supported maximum {MAX_SIDE}")]
    TooLarge(u64),
    #[error("both sides exceed {SCAN_LIMIT} and ({n}, {m}) is outside the closed-form regime")]
    ScanTooLong { n: u64, m: u64 },
    #[error("({n}, {m}) is outside the domain: {reason}")]
    OutOfDomain { n: u64, m: u64, reason: &'static str },
}

/// `C(s, 2)`, `None` on overflow.
pub fn binom2(s: u64) -> Option<u64> {
    if s < 2 {
        return Some(0);
    }
    let (a, b) = if s.is_multiple_of(2) { (s / 2, s - 1) } else { (s, (s - 1) / 2) };
    a.checked_mul(b)
}

/// Smallest `s` with `C(s, 2) >= t`; `0` for `t = 0`.
pub fn inv_binom_ceil(t: u64) -> u64 {
    if t == 0 {
        return 0;
    }
    let disc = 1 + 8 * u128::from(t);
    let mut s = disc.isqrt().div_ceil(2) as u64;
    let enough = |s: u64| binom2(s).is_none_or(|c| c >= t);
    while !enough(s) {
        s += 1;
    }
    while s > 0 && enough(s - 1) {
        s -= 1;
    }
    s
}

/// Optimal selection for `K_{n,m}`: `s1` vertices on the `n`-side, `s2` on
/// the `m`-side, `k = s1 + s2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BipartiteSolution {
    pub n: u64,
    pub m: u64,
    pub k: u64,
    pub s1: u64,
    pub s2: u64,
}

impl BipartiteSolution {
    /// Whether `(s1, s2)` satisfies both covering constraints.
    pub fn is_feasible(&self) -> bool {
        is_feasible_pair(self.n, self.m, self.s1, self.s2)
    }

    /// `K_{n,m}` with the `n`-side on vertices `0..n`, plus an explicit
    /// certificate for this selection.
    pub fn certificate(&self) -> Option<(Graph, Certificate)> {
        let blocks = [usize::try_from(self.n).ok()?, usize::try_from(self.m).ok()?];
        let sel = [self.s1 as usize, self.s2 as usize];
        let cert = selection_certificate(&blocks, &sel)?;
        Some((complete_multipartite_from_blocks(&blocks), cert))
    }
}

pub fn is_feasible_pair(n: u64, m: u64, s1: u64, s2: u64) -> bool {
    s1 <= n
        && s2 <= m
        && binom2(s2).is_none_or(|c| c >= n - s1)
        && binom2(s1).is_none_or(|c| c >= m - s2)
}

/// Least `s2` that pairs with `s1`, or `None` if no `s2 <= m` works.
fn min_partner(n: u64, m: u64, s1: u64) -> Option<u64> {
    let cover_n = inv_binom_ceil(n - s1);
    let cover_m = m.saturating_sub(binom2(s1).unwrap_or(u64::MAX));
    let s2 = cover_n.max(cover_m);
    (s2 <= m).then_some(s2)
}

/// Exact `sg(K_{n,m})` by scanning the smaller admissible side.
///
/// Among optimal pairs the one with the smallest `s1` is returned.
pub fn sg_bipartite(n: u64, m: u64) -> Result<BipartiteSolution, BipartiteError> {
    if n == 0 || m == 0 {
        return Err(BipartiteError::ZeroPart);
    }
    for side in [n, m] {
        if side > MAX_SIDE {
            return Err(BipartiteError::TooLarge(side));
        }
    }
    if n <= SCAN_LIMIT {
        let mut best: Option<(u64, u64)> = None;
        for s1 in 0..=n {
            if let Some(s2) = min_partner(n, m, s1) {
                if best.is_none_or(|(a, b)| s1 + s2 < a + b) {
                    best = Some((s1, s2));
                }
            }
        }
        let (s1, s2) = best.expect("s1 = n, s2 = m is feasible");
        return Ok(BipartiteSolution { n, m, k: s1 + s2, s1, s2 });
    }
    if m <= SCAN_LIMIT {
        // scan the m-side instead; among ties keep the smallest s1
        let mut best: Option<(u64, u64)> = None;
        for s2 in 0..=m {
            if let Some(s1) = min_partner(m, n, s2) {
                let better = match best {
                    None => true,
                    Some((a, b)) => s1 + s2 < a + b || (s1 + s2 == a + b && s1 < a),
                };
                if better {
                    best = Some((s1, s2));
                }
            }
        }
        let (s1, s2) = best.expect("s1 = n, s2 = m is feasible");
        return Ok(BipartiteSolution { n, m, k: s1 + s2, s1, s2 });
    }
    // Both sides huge: only the closed form of the lopsided regime is offered.
    if n >= 3 && binom2(n).is_some_and(|c| m > c) {
        let c = binom2(n).unwrap();
        return Ok(BipartiteSolution { n, m, k: n + m - c, s1: n, s2: m - c });
    }
    if m >= 3 && binom2(m).is_some_and(|c| n > c) {
        let c = binom2(m).unwrap();
        return Ok(BipartiteSolution { n, m, k: m + n - c, s1: n - c, s2: m });
    }
    Err(BipartiteError::ScanTooLong { n, m })
}

/// Closed form for `sg(K_{n,n})`, `n >= 6`, in integer arithmetic.
pub fn sg_balanced(n: u64) -> Result<u64, BipartiteError> {
    if n < 6 {
        return Err(BipartiteError::OutOfDomain {
            n,
            m: n,
            reason: "the balanced closed form needs n >= 6",
        });
    }
    if n > MAX_SIDE {
        return Err(BipartiteError::TooLarge(n));
    }
    // ceil((-1 + sqrt(8n + 1)) / 2) is the least c with c(c + 1)/2 >= n
    let c = inv_binom_ceil(n) - 1;
    let k = 2 * c;
    Ok(if is_perfect_square(8 * n - 7) { k - 1 } else { k })
}

pub fn is_perfect_square(x: u64) -> bool {
    let r = x.isqrt();
    r * r == x
}

/// `sg(K_{n,m})` when one side dominates: `m + 1 - C(n-1, 2)` for `n >= 3`,
/// `m > C(n, 2)`; plain `m` for `n <= 3`, `m > n`.
pub fn sg_large_m(n: u64, m: u64) -> Result<u64, BipartiteError> {
    if n == 0 || m == 0 {
        return Err(BipartiteError::ZeroPart);
    }
    if n >= 3 && binom2(n).is_some_and(|c| m > c) {
        return Ok(m + 1 - binom2(n - 1).unwrap());
    }
    if n <= 3 && m > n {
        return Ok(m);
    }
    Err(BipartiteError::OutOfDomain {
        n,
        m,
        reason: "needs n >= 3 and m > C(n,2), or n <= 3 and m > n",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;
    use proptest::prelude::*;

    #[test]
    fn inverse_binomial() {
        assert_eq!(inv_binom_ceil(0), 0);
        assert_eq!(inv_binom_ceil(1), 2);
        assert_eq!(inv_binom_ceil(4), 4);
        assert_eq!(inv_binom_ceil(3), 3);
        assert_eq!(inv_binom_ceil(6), 4);
        assert_eq!(inv_binom_ceil(7), 5);
    }

    #[test]
    fn inverse_binomial_large() {
        for t in [u64::MAX / 4, 10u64.pow(17), 123_456_789_012] {
            let s = inv_binom_ceil(t);
            assert!(binom2(s).unwrap() >= t);
            assert!(binom2(s - 1).unwrap() < t);
        }
    }

    #[test]
    fn exact_small_values() {
        assert_eq!(sg_bipartite(5, 5).unwrap().k, 5);
        assert_eq!(sg_bipartite(2, 2).unwrap().k, 3);
        assert_eq!(sg_bipartite(1, 1).unwrap().k, 2);
        assert_eq!(sg_bipartite(6, 4).unwrap().k, 4);
        assert_eq!(sg_bipartite(3, 10).unwrap().k, 10);
        assert_eq!(sg_bipartite(0, 3), Err(BipartiteError::ZeroPart));
        assert_eq!(sg_bipartite(MAX_SIDE + 1, 3), Err(BipartiteError::TooLarge(MAX_SIDE + 1)));
    }

    #[test]
    fn tie_break_prefers_small_s1() {
        // (2,2): both (1,2) and (2,1) are optimal
        let sol = sg_bipartite(2, 2).unwrap();
        assert_eq!((sol.s1, sol.s2), (1, 2));
    }

    #[test]
    fn huge_sides() {
        let m = 5 * SCAN_LIMIT;
        let a = sg_bipartite(10, m).unwrap();
        let b = sg_bipartite(m, 10).unwrap();
        assert_eq!(a.k, b.k);
        assert_eq!(a.k, sg_large_m(10, m).unwrap());
        assert!(b.is_feasible());

        let n = 2_000_000;
        let big = sg_bipartite(n, MAX_SIDE).unwrap_err();
        assert_eq!(big, BipartiteError::ScanTooLong { n, m: MAX_SIDE });
        let c = sg_bipartite(3 * SCAN_LIMIT / 2, MAX_SIDE);
        assert!(c.is_err());
    }

    #[test]
    fn balanced_examples() {
        assert_eq!(sg_balanced(6).unwrap(), 6);
        assert_eq!(sg_balanced(7).unwrap(), 7);
        assert_eq!(sg_balanced(9).unwrap(), 8);
        assert!(sg_balanced(5).is_err());
    }

    #[test]
    fn large_m_examples() {
        assert_eq!(sg_large_m(4, 7).unwrap(), 5);
        assert_eq!(sg_large_m(3, 10).unwrap(), 10);
        assert_eq!(sg_large_m(5, 11).unwrap(), 6);
        assert_eq!(sg_large_m(1, 5).unwrap(), 5);
        assert!(sg_large_m(4, 6).is_err());
        assert!(sg_large_m(2, 2).is_err());
    }

    #[test]
    fn certificates_verify() {
        for n in 1..=7 {
            for m in 1..=7 {
                let sol = sg_bipartite(n, m).unwrap();
                let (g, cert) = sol.certificate().expect("feasible selection");
                assert_eq!(cert.size() as u64, sol.k);
                assert_eq!(verify_certificate(&g, &cert), Ok(()), "({n},{m})");
            }
        }
    }

    proptest! {
        #[test]
        fn symmetric_and_feasible(n in 1u64..400, m in 1u64..400) {
            let a = sg_bipartite(n, m).unwrap();
            let b = sg_bipartite(m, n).unwrap();
            prop_assert_eq!(a.k, b.k);
            prop_assert!(a.is_feasible());
            prop_assert_eq!(a.s1 + a.s2, a.k);
        }

        #[test]
        fn nothing_smaller_is_feasible(n in 1u64..60, m in 1u64..60) {
            let k = sg_bipartite(n, m).unwrap().k;
            for s1 in 0..=n.min(k - 1) {
                prop_assert!(!is_feasible_pair(n, m, s1, k - 1 - s1));
            }
        }
    }
}
