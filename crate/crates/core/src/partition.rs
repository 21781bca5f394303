//! Integer partitions describing complete multipartite graphs.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Multiset of part sizes, stored sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("a partition needs at least one part")]
    NoParts,
    #[error("part sizes must be positive")]
    ZeroPart,
    #[error("cannot parse partition token `{0}`")]
    BadToken(String),
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self, PartitionError> {
        if parts.is_empty() {
            return Err(PartitionError::NoParts);
        }
        if parts.contains(&0) {
            return Err(PartitionError::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    /// `count` parts of size `size`.
    pub fn uniform(size: usize, count: usize) -> Result<Self, PartitionError> {
        Self::new(vec![size; count])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts.
    pub fn r(&self) -> usize {
        self.0.len()
    }

    /// Number of vertices.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn largest(&self) -> usize {
        self.0[0]
    }

    /// `(size, multiplicity)` pairs, largest size first.
    pub fn classes(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((size, count)) if *size == s => *count += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// Multiplicity of parts of size `size`.
    pub fn multiplicity(&self, size: usize) -> usize {
        self.0.iter().filter(|&&s| s == size).count()
    }

    /// Every partition of `n`, in reverse lexicographic order of the sorted parts.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for s in (1..=max.min(rest)).rev() {
                cur.push(s);
                rec(rest - s, s, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            rec(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

/// Compact multiset notation, smallest size first: `1^2,3`.
impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut classes = self.classes();
        classes.reverse();
        for (i, (size, count)) in classes.into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if count == 1 {
                write!(f, "{size}")?;
            } else {
                write!(f, "{size}^{count}")?;
            }
        }
        Ok(())
    }
}

/// Accepts plain sizes separated by whitespace or commas, and `size^count`
/// tokens, e.g. `3 3`, `1,2,3` or `1^2,3^4`.
impl FromStr for Partition {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = Vec::new();
        for token in s.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let bad = || PartitionError::BadToken(token.to_string());
            let (size, count) = match token.split_once('^') {
                Some((a, b)) => (
                    a.parse::<usize>().map_err(|_| bad())?,
                    b.parse::<usize>().map_err(|_| bad())?,
                ),
                None => (token.parse::<usize>().map_err(|_| bad())?, 1),
            };
            if count == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(size, count));
        }
        Self::new(parts)
    }
}
