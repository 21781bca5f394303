//! Complete multipartite graphs `K_{n_1, ..., n_r}`.
//!
//! In such a graph the only geodesics of length two join two vertices of the
//! same part and may pass through any single vertex of another part. So a
//! selection with `s_p` vertices in part `p` is a strong geodetic set iff the
//! `P = sum C(s_p, 2)` same-part pairs can be matched to the uncovered
//! vertices, no pair covering a vertex of its own part. By Hall's theorem
//! that holds iff `U <= P` and `U_p + C(s_p, 2) <= P` for every part, where
//! `U_p = n_p - s_p` and `U = sum U_p`.
//!
//! Optimal sets can be taken to meet every part but two in either nothing or
//! the whole part, which bounds the exact search.

use std::cmp::Ordering;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::graph::Geodesic;
use crate::partition::Partition;

/// Configuration budget of the exact and whole-part searches: the product of
/// `(multiplicity + 1)` over part sizes. Any partition with at most 22 parts
/// fits.
pub const MAX_CONFIGURATIONS: u64 = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MultipartiteError {
    #[error("selection has {got} entries, partition has {want} parts")]
    LengthMismatch { got: usize, want: usize },
    #[error("selection picks {count} vertices from part {index} of size {size}")]
    CountExceedsPart {
        index: usize,
        count: usize,
        size: usize,
    },
    #[error("search space of {0} configurations exceeds the budget")]
    OverBudget(u64),
    #[error("({k} + 1) does not divide 2 * {m}")]
    NotDivisible { k: u64, m: u64 },
}

/// Per-part chosen counts, aligned with [`Partition::parts`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Selection(pub Vec<usize>);

impl Selection {
    pub fn full(p: &Partition) -> Self {
        Self(p.parts().to_vec())
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn validate(&self, p: &Partition) -> Result<(), MultipartiteError> {
        if self.0.len() != p.r() {
            return Err(MultipartiteError::LengthMismatch {
                got: self.0.len(),
                want: p.r(),
            });
        }
        for (index, (&count, &size)) in self.0.iter().zip(p.parts()).enumerate() {
            if count > size {
                return Err(MultipartiteError::CountExceedsPart { index, count, size });
            }
        }
        Ok(())
    }

    /// Number of parts met partially (neither empty nor whole).
    pub fn partial_parts(&self, p: &Partition) -> usize {
        self.0
            .iter()
            .zip(p.parts())
            .filter(|(&s, &n)| s > 0 && s < n)
            .count()
    }

    /// At most two parts met partially.
    pub fn is_normal_form(&self, p: &Partition) -> bool {
        self.partial_parts(p) <= 2
    }
}

fn c2(s: usize) -> u64 {
    let s = s as u64;
    s * s.saturating_sub(1) / 2
}

/// The counting criterion on raw block sizes and counts.
fn counting_criterion(blocks: &[usize], sel: &[usize]) -> bool {
    if blocks.len() == 1 {
        return sel[0] == blocks[0];
    }
    let pairs: u64 = sel.iter().map(|&s| c2(s)).sum();
    let mut uncovered = 0u64;
    for (&n, &s) in blocks.iter().zip(sel) {
        let u = (n - s) as u64;
        if u + c2(s) > pairs {
            return false;
        }
        uncovered += u;
    }
    uncovered <= pairs
}

/// Whether the selection is a strong geodetic set of `K_p`, by the counting
/// criterion. With a single part the graph is edgeless and only the whole
/// part works.
pub fn coverage_feasible(p: &Partition, sel: &Selection) -> Result<bool, MultipartiteError> {
    sel.validate(p)?;
    Ok(counting_criterion(p.parts(), &sel.0))
}

/// Same-part pairs of the selection as `(part, first, second)` vertex ids,
/// plus the uncovered vertices, for the canonical vertex layout.
struct Layout {
    part_of: Vec<usize>,
    chosen: Vec<usize>,
    uncovered: Vec<usize>,
    pairs: Vec<(usize, usize, usize)>,
}

fn layout(blocks: &[usize], sel: &[usize]) -> Layout {
    let mut part_of = Vec::new();
    let mut chosen = Vec::new();
    let mut uncovered = Vec::new();
    let mut pairs = Vec::new();
    for (q, (&n, &s)) in blocks.iter().zip(sel).enumerate() {
        let base = part_of.len();
        part_of.extend(std::iter::repeat_n(q, n));
        chosen.extend(base..base + s);
        uncovered.extend(base + s..base + n);
        for a in base..base + s {
            for b in a + 1..base + s {
                pairs.push((q, a, b));
            }
        }
    }
    Layout {
        part_of,
        chosen,
        uncovered,
        pairs,
    }
}

/// Maximum matching of uncovered vertices into compatible pairs, by
/// augmenting paths. Entry `v` holds the pair index covering `uncovered[v]`.
fn match_uncovered(l: &Layout) -> Vec<Option<usize>> {
    let mut pair_owner: Vec<Option<usize>> = vec![None; l.pairs.len()];
    let mut matched: Vec<Option<usize>> = vec![None; l.uncovered.len()];

    fn augment(
        v: usize,
        l: &Layout,
        seen: &mut [bool],
        pair_owner: &mut [Option<usize>],
        matched: &mut [Option<usize>],
    ) -> bool {
        let part = l.part_of[l.uncovered[v]];
        for (pi, &(q, _, _)) in l.pairs.iter().enumerate() {
            if q == part || seen[pi] {
                continue;
            }
            seen[pi] = true;
            let free = match pair_owner[pi] {
                None => true,
                Some(w) => augment(w, l, seen, pair_owner, matched),
            };
            if free {
                pair_owner[pi] = Some(v);
                matched[v] = Some(pi);
                return true;
            }
        }
        false
    }

    for v in 0..l.uncovered.len() {
        let mut seen = vec![false; l.pairs.len()];
        augment(v, l, &mut seen, &mut pair_owner, &mut matched);
    }
    matched
}

/// Coverage decided by an explicit bipartite matching between same-part
/// pairs and uncovered vertices. Independent of the counting criterion.
pub fn coverage_feasible_matching(
    p: &Partition,
    sel: &Selection,
) -> Result<bool, MultipartiteError> {
    sel.validate(p)?;
    if p.r() == 1 {
        return Ok(sel.0[0] == p.parts()[0]);
    }
    let l = layout(p.parts(), &sel.0);
    Ok(match_uncovered(&l).iter().all(Option::is_some))
}

/// Explicit certificate for a selection on the complete multipartite graph
/// with the given blocks (selected vertices are the first `s_p` of each
/// block). `None` if the selection does not cover the graph.
pub fn selection_certificate(blocks: &[usize], sel: &[usize]) -> Option<Certificate> {
    if blocks.len() != sel.len() || blocks.iter().zip(sel).any(|(&n, &s)| s > n) {
        return None;
    }
    let l = layout(blocks, sel);
    let mut cert = Certificate::new(l.chosen.clone());
    if cert.set.is_empty() {
        return None;
    }
    if blocks.len() == 1 {
        // edgeless: no pair is connected
        return l.uncovered.is_empty().then_some(cert);
    }
    let matched = match_uncovered(&l);
    if matched.iter().any(Option::is_none) {
        return None;
    }
    let mut middle: Vec<Option<usize>> = vec![None; l.pairs.len()];
    for (v, pi) in matched.iter().enumerate() {
        middle[pi.unwrap()] = Some(l.uncovered[v]);
    }
    for (pi, &(q, a, b)) in l.pairs.iter().enumerate() {
        let mid = middle[pi].unwrap_or_else(|| {
            (0..l.part_of.len())
                .find(|&w| l.part_of[w] != q)
                .expect("at least two parts")
        });
        cert.choose(Geodesic(vec![a, mid, b]));
    }
    for (i, &a) in l.chosen.iter().enumerate() {
        for &b in &l.chosen[i + 1..] {
            if l.part_of[a] != l.part_of[b] {
                cert.choose(Geodesic(vec![a, b]));
            }
        }
    }
    Some(cert)
}

/// Enumerates every `(full count per class)` vector, calling `visit` with
/// the counts; stops early if `visit` returns `false`.
fn for_each_full_counts(classes: &[(usize, usize)], visit: &mut dyn FnMut(&[usize])) {
    fn rec(
        classes: &[(usize, usize)],
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if cur.len() == classes.len() {
            visit(cur);
            return;
        }
        let count = classes[cur.len()].1;
        for f in 0..=count {
            cur.push(f);
            rec(classes, cur, visit);
            cur.pop();
        }
    }
    rec(classes, &mut Vec::with_capacity(classes.len()), visit);
}

fn configuration_count(classes: &[(usize, usize)]) -> u64 {
    classes
        .iter()
        .fold(1u64, |acc, &(_, c)| acc.saturating_mul(c as u64 + 1))
}

/// A part met partially: `(class index, chosen count)`.
type Partial = (usize, usize);

/// Counting criterion on class-level data: `full[c]` whole parts of class
/// `c`, the listed partial parts, everything else empty.
fn class_feasible(classes: &[(usize, usize)], full: &[usize], partials: &[Partial]) -> bool {
    let mut pairs = 0u64;
    let mut chosen = 0u64;
    for (&(size, _), &f) in classes.iter().zip(full) {
        pairs += f as u64 * c2(size);
        chosen += (f * size) as u64;
    }
    for &(_, v) in partials {
        pairs += c2(v);
        chosen += v as u64;
    }
    let total: u64 = classes.iter().map(|&(s, c)| (s * c) as u64).sum();
    if total - chosen > pairs {
        return false;
    }
    for (ci, (&(size, count), &f)) in classes.iter().zip(full).enumerate() {
        let partial_here = partials.iter().filter(|p| p.0 == ci).count();
        if f > 0 && c2(size) > pairs {
            return false;
        }
        if count > f + partial_here && size as u64 > pairs {
            return false;
        }
    }
    partials
        .iter()
        .all(|&(c, v)| (classes[c].0 - v) as u64 + c2(v) <= pairs)
}

/// Expands class-level data into a selection aligned with the partition.
/// Within each block of equal sizes the counts ascend, which is the
/// lexicographically smallest arrangement.
fn expand(classes: &[(usize, usize)], full: &[usize], partials: &[Partial]) -> Selection {
    let mut out = Vec::new();
    for (ci, (&(size, count), &f)) in classes.iter().zip(full).enumerate() {
        let mut here: Vec<usize> = partials.iter().filter(|p| p.0 == ci).map(|p| p.1).collect();
        here.sort_unstable();
        let empty = count - f - here.len();
        out.extend(std::iter::repeat_n(0, empty));
        out.extend(here);
        out.extend(std::iter::repeat_n(size, f));
    }
    Selection(out)
}

fn better(cand: &Selection, best: &Option<Selection>) -> bool {
    match best {
        None => true,
        Some(b) => match cand.total().cmp(&b.total()) {
            Ordering::Less => true,
            Ordering::Equal => cand.0 < b.0,
            Ordering::Greater => false,
        },
    }
}

/// Exact `sg(K_p)` over normal-form selections (at most two partial parts).
///
/// Parts of equal size are interchangeable, so the search runs over how many
/// parts of each size are taken whole, plus the partial parts. Among optimal
/// selections the lexicographically smallest is returned.
pub fn sg_multipartite(p: &Partition) -> Result<(usize, Selection), MultipartiteError> {
    if p.r() == 1 {
        return Ok((p.total(), Selection::full(p)));
    }
    let classes = p.classes();
    let configs = configuration_count(&classes);
    if configs > MAX_CONFIGURATIONS {
        return Err(MultipartiteError::OverBudget(configs));
    }

    // every admissible (class, value) for a partial part
    let options: Vec<Partial> = classes
        .iter()
        .enumerate()
        .flat_map(|(c, &(size, _))| (1..size).map(move |v| (c, v)))
        .collect();

    let mut best: Option<Selection> = None;
    for_each_full_counts(&classes, &mut |full| {
        let base: usize = classes.iter().zip(full).map(|(&(s, _), &f)| s * f).sum();
        if best.as_ref().is_some_and(|b| base > b.total()) {
            return;
        }
        let free = |c: usize, used: usize| classes[c].1 - full[c] > used;
        let mut consider = |partials: &[Partial]| {
            if class_feasible(&classes, full, partials) {
                let cand = expand(&classes, full, partials);
                if better(&cand, &best) {
                    best = Some(cand);
                }
            }
        };
        consider(&[]);
        for (x, &a) in options.iter().enumerate() {
            if !free(a.0, 0) {
                continue;
            }
            consider(&[a]);
            for &b in &options[x..] {
                let used = usize::from(b.0 == a.0);
                if free(b.0, used) {
                    consider(&[a, b]);
                }
            }
        }
    });
    let sel = best.expect("taking every part is feasible");
    Ok((sel.total(), sel))
}

/// Smallest strong geodetic set made of whole parts only.
pub fn whole_parts_upper_bound(p: &Partition) -> usize {
    whole_parts_selection(p).total()
}

/// The selection behind [`whole_parts_upper_bound`]: exhaustive over the
/// number of whole parts per size when within budget, otherwise greedy from
/// the largest part down.
pub fn whole_parts_selection(p: &Partition) -> Selection {
    if p.r() == 1 {
        return Selection::full(p);
    }
    let classes = p.classes();
    if configuration_count(&classes) <= MAX_CONFIGURATIONS {
        let mut best: Option<Selection> = None;
        for_each_full_counts(&classes, &mut |full| {
            if class_feasible(&classes, full, &[]) {
                let cand = expand(&classes, full, &[]);
                if better(&cand, &best) {
                    best = Some(cand);
                }
            }
        });
        return best.expect("taking every part is feasible");
    }
    let mut sel = vec![0; p.r()];
    for (i, &size) in p.parts().iter().enumerate() {
        if counting_criterion(p.parts(), &sel) {
            break;
        }
        sel[i] = size;
    }
    Selection(sel)
}

/// Result of the relaxed covering program used for the lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LpRelaxation {
    /// Parts larger than `l` are taken whole; parts of size `l` fractionally.
    pub l: usize,
    /// Fractional number of size-`l` parts taken whole.
    pub a_ll: (i128, i128),
    /// Relaxation optimum, rounded up.
    pub value: u64,
    /// Set when `a_ll` had to be clamped into `[0, m_l]`; the value then
    /// comes from the integer program instead.
    pub clamped: bool,
}

/// Multiplicities `m_j` indexed by part size `j`, `0..=largest`.
fn multiplicities(p: &Partition) -> Vec<i128> {
    let mut m = vec![0i128; p.largest() + 1];
    for &s in p.parts() {
        m[s] += 1;
    }
    m
}

fn c2i(j: usize) -> i128 {
    let j = j as i128;
    j * (j - 1) / 2
}

/// `l` from `sum_{j <= l} j m_j >= sum_{j > l} C(j, 2) m_j`, smallest `l >= 1`.
pub fn lp_split_index(p: &Partition) -> usize {
    let m = multiplicities(p);
    let holds = |l: usize| {
        let low: i128 = (1..=l).map(|j| j as i128 * m[j]).sum();
        let high: i128 = (l + 1..m.len()).map(|j| c2i(j) * m[j]).sum();
        low >= high
    };
    let mut l = p.largest();
    while l > 1 && holds(l - 1) {
        l -= 1;
    }
    l
}

/// `l` from `sum_{j > l} C(j + 1, 2) m_j <= n`, smallest `l >= 1`.
pub fn lp_split_index_by_capacity(p: &Partition) -> usize {
    let m = multiplicities(p);
    let n = p.total() as i128;
    (1..=p.largest())
        .find(|&l| (l + 1..m.len()).map(|j| c2i(j + 1) * m[j]).sum::<i128>() <= n)
        .expect("l = largest part always qualifies")
}

/// Greedy optimum of the relaxed program: whole parts from the largest size
/// down, then a fractional share of the parts of size `l`.
pub fn lp_relaxation(p: &Partition) -> LpRelaxation {
    let m = multiplicities(p);
    let l = lp_split_index(p);
    let whole: i128 = (l + 1..m.len()).map(|j| j as i128 * m[j]).sum();
    let low: i128 = (1..=l).map(|j| j as i128 * m[j]).sum();
    let high: i128 = (l + 1..m.len()).map(|j| c2i(j) * m[j]).sum();
    let mut a_ll = Ratio::new(low - high, c2i(l + 1));
    let lo = Ratio::from_integer(0);
    let hi = Ratio::from_integer(m[l]);
    let clamped = a_ll < lo || a_ll > hi;
    if clamped {
        a_ll = a_ll.clamp(lo, hi);
        return LpRelaxation {
            l,
            a_ll: (*a_ll.numer(), *a_ll.denom()),
            value: relaxation_integer_optimum(p),
            clamped,
        };
    }
    let objective = Ratio::from_integer(whole) + a_ll * Ratio::from_integer(l as i128);
    LpRelaxation {
        l,
        a_ll: (*a_ll.numer(), *a_ll.denom()),
        value: objective.ceil().to_integer() as u64,
        clamped,
    }
}

/// Lower bound on `sg(K_p)` from the relaxed covering program.
pub fn lp_lower_bound(p: &Partition) -> u64 {
    lp_relaxation(p).value
}

/// Integer optimum of the same relaxation: each part of size `j` contributes
/// some `i in 0..=j` chosen vertices at cost `i` and value `C(i + 1, 2)`
/// (zero for `i = 0`); total value must reach `n`. Solved as a knapsack.
pub fn relaxation_integer_optimum(p: &Partition) -> u64 {
    let n = p.total();
    let inf = u64::MAX;
    // cost[v] = least cost reaching value min(v, n)
    let mut cost = vec![inf; n + 1];
    cost[0] = 0;
    for &j in p.parts() {
        let mut next = cost.clone();
        for (v, &c) in cost.iter().enumerate() {
            if c == inf {
                continue;
            }
            for i in 1..=j {
                let w = (v + (i * (i + 1)) / 2).min(n);
                next[w] = next[w].min(c + i as u64);
            }
        }
        cost = next;
    }
    cost[n]
}

/// `sg(K_{<k^m>}) = 2mk / (k + 1)` when `(k + 1)` divides `2m`.
pub fn sg_uniform(k: u64, m: u64) -> Result<u64, MultipartiteError> {
    if k == 0 || m == 0 || !(2 * m).is_multiple_of(k + 1) {
        return Err(MultipartiteError::NotDivisible { k, m });
    }
    Ok(2 * m * k / (k + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultipartiteBounds {
    pub lp_lower: u64,
    pub whole_parts_upper: u64,
    pub exact: Option<u64>,
}

impl MultipartiteBounds {
    pub fn compute(p: &Partition, exact: Option<u64>) -> Self {
        Self {
            lp_lower: lp_lower_bound(p),
            whole_parts_upper: whole_parts_upper_bound(p) as u64,
            exact,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.lp_lower <= self.whole_parts_upper
            && self
                .exact
                .is_none_or(|k| self.lp_lower <= k && k <= self.whole_parts_upper)
    }
}
