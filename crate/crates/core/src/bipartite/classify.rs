//! Characterisation of the triples `(n, m, k)` with `sg(K_{n,m}) = k`, and
//! the level sets it describes.

use super::{sg_bipartite, BipartiteError};

/// `alpha - 1 + C(max(beta - 1, 2), 2)`.
pub fn f(alpha: i64, beta: i64) -> i64 {
    let t = (beta - 1).max(2);
    alpha - 1 + t * (t - 1) / 2
}

/// Evaluates the three-clause characterisation of `sg(K_{n,m}) = k`,
/// with `K_{1,1}` and `K_{2,2}` as the two exceptions.
pub fn classify_sg_eq_k(n: u64, m: u64, k: u64) -> bool {
    match (n, m) {
        (1, 1) => return k == 2,
        (2, 2) => return k == 3,
        _ => {}
    }
    let (n, m, k) = (n as i64, m as i64, k as i64);
    if n < k && m == f(k, n) {
        return true;
    }
    if m < k && n == f(k, m) {
        return true;
    }
    (0..=k).any(|i| {
        f(k, i - 1) <= m && m <= f(k, i) && f(k, k - i - 1) <= n && n <= f(k, k - i)
    })
}

/// Largest coordinate that can occur in a level set of `k`.
pub fn level_set_bound(k: u64) -> u64 {
    let k = k as i64;
    (f(k, k) + k) as u64
}

/// All `(n, m)` with `sg(K_{n,m}) = k`, sorted.
pub fn level_set(k: u64) -> Result<Vec<(u64, u64)>, BipartiteError> {
    if k < 2 {
        return Ok(Vec::new());
    }
    let bound = level_set_bound(k);
    let mut out = Vec::new();
    for n in 1..=bound {
        for m in 1..=bound {
            if sg_bipartite(n, m)?.k == k {
                out.push((n, m));
            }
        }
    }
    Ok(out)
}

/// ASCII picture of a level set: one row per `m` (top row `m = 1`), one
/// column per `n`, `#` marking members.
pub fn level_set_grid(pairs: &[(u64, u64)]) -> String {
    let width = pairs.iter().map(|p| p.0).max().unwrap_or(0);
    let height = pairs.iter().map(|p| p.1).max().unwrap_or(0);
    let mut out = String::new();
    for m in 1..=height {
        for n in 1..=width {
            out.push(if pairs.binary_search(&(n, m)).is_ok() { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}
