//! Young diagrams and k-colored multiple partitions.
//!
//! A multiple partition is a k-tuple of Young diagrams whose sizes add up to
//! `n`; these index both the conjugacy classes and the irreducible
//! representations of `G ~ S(n)`. This module also carries the transition
//! kernel of multiple partition structures (delete one ball uniformly at
//! random) and the projection preimage counts.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::{factorial, Rat};
use crate::DefectReport;

/// A partition with weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    parts: Vec<u64>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram { parts: Vec::new() }
    }

    /// Canonicalizes: sorts descending and strips zero parts.
    pub fn from_parts(mut parts: Vec<u64>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        YoungDiagram { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn size(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// Number of rows `l(λ)`.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// `r_j(λ)`: number of rows of length `j`.
    pub fn rows_of_len(&self, j: u64) -> usize {
        self.parts.iter().filter(|&&p| p == j).count()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn conjugate(&self) -> YoungDiagram {
        if self.parts.is_empty() {
            return YoungDiagram::empty();
        }
        let cols = self.parts[0];
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u64)
            .collect();
        YoungDiagram { parts }
    }

    /// Row-major `(content, hook)` pairs: `c = j - i`,
    /// `h = λ_i - j + λ'_j - i - 1` in zero-based coordinates.
    pub fn hooks_contents(&self) -> Vec<(i64, u64)> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let content = j as i64 - i as i64;
                let hook = row - j + conj.parts[j as usize] - i as u64 - 1;
                out.push((content, hook));
            }
        }
        out
    }

    /// Number of standard Young tableaux, by the hook length formula.
    pub fn dim(&self) -> BigUint {
        let n = self.size() as usize;
        let mut denom = BigUint::one();
        for (_, h) in self.hooks_contents() {
            denom *= BigUint::from(h);
        }
        let num = factorial(n);
        debug_assert!((&num % &denom).is_zero());
        num / denom
    }

    /// Diagrams obtained by removing one box (corners removed).
    pub fn shrink_by_one(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if i + 1 == self.parts.len() || self.parts[i] > self.parts[i + 1] {
                let mut p = self.parts.clone();
                p[i] -= 1;
                out.push(YoungDiagram::from_parts(p));
            }
        }
        out
    }

    /// Diagrams obtained by adding one box.
    pub fn grow_by_one(&self) -> Vec<YoungDiagram> {
        let mut out = Vec::new();
        for i in 0..self.parts.len() {
            if i == 0 || self.parts[i] < self.parts[i - 1] {
                let mut p = self.parts.clone();
                p[i] += 1;
                out.push(YoungDiagram { parts: p });
            }
        }
        let mut p = self.parts.clone();
        p.push(1);
        out.push(YoungDiagram { parts: p });
        out
    }

    /// True when `self` is obtained from `smaller` by adding exactly one box.
    pub fn covers(&self, smaller: &YoungDiagram) -> bool {
        if self.size() != smaller.size() + 1 {
            return false;
        }
        self.shrink_by_one().iter().any(|d| d == smaller)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// A k-tuple of Young diagrams with total size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPartition {
    components: Vec<YoungDiagram>,
}

impl MultiPartition {
    pub fn new(components: Vec<YoungDiagram>) -> Self {
        assert!(!components.is_empty(), "need at least one color");
        MultiPartition { components }
    }

    pub fn empty(k: usize) -> Self {
        MultiPartition::new(vec![YoungDiagram::empty(); k])
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn n(&self) -> u64 {
        self.components.iter().map(YoungDiagram::size).sum()
    }

    pub fn component(&self, l: usize) -> &YoungDiagram {
        &self.components[l]
    }

    pub fn components(&self) -> &[YoungDiagram] {
        &self.components
    }

    pub fn with_component(&self, l: usize, d: YoungDiagram) -> MultiPartition {
        let mut c = self.components.clone();
        c[l] = d;
        MultiPartition::new(c)
    }

    /// Text form `"(2,1)|()|(1)"`: components separated by `|`, empty as `()`.
    pub fn parse(s: &str) -> Result<MultiPartition> {
        let mut components = Vec::new();
        for chunk in s.split('|') {
            let chunk = chunk.trim();
            let inner = chunk
                .strip_prefix('(')
                .and_then(|c| c.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("component {chunk:?} not parenthesized")))?;
            let parts = if inner.trim().is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<u64>()
                            .map_err(|_| Error::Parse(format!("bad part {p:?}")))
                    })
                    .collect::<Result<Vec<u64>>>()?
            };
            for w in parts.windows(2) {
                if w[0] < w[1] {
                    return Err(Error::Parse(format!(
                        "parts not weakly decreasing in {chunk:?}"
                    )));
                }
            }
            if parts.iter().any(|&p| p == 0) {
                return Err(Error::Parse(format!("zero part in {chunk:?}")));
            }
            components.push(YoungDiagram::from_parts(parts));
        }
        Ok(MultiPartition::new(components))
    }

    /// All multipartitions covering `self` (adding one box in one color).
    pub fn grow_by_one(&self) -> Vec<(usize, MultiPartition)> {
        let mut out = Vec::new();
        for (l, comp) in self.components.iter().enumerate() {
            for d in comp.grow_by_one() {
                out.push((l, self.with_component(l, d)));
            }
        }
        out
    }

    /// The unique color where `self` (of size n+1) grows out of `smaller`
    /// (of size n), or None when not a covering pair.
    pub fn growth_color(&self, smaller: &MultiPartition) -> Option<usize> {
        if self.k() != smaller.k() || self.n() != smaller.n() + 1 {
            return None;
        }
        let mut color = None;
        for l in 0..self.k() {
            if self.components[l] == smaller.components[l] {
                continue;
            }
            if color.is_some() || !self.components[l].covers(&smaller.components[l]) {
                return None;
            }
            color = Some(l);
        }
        color
    }
}

impl fmt::Display for MultiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Partitions of `n` in reverse-lexicographic order: `(n)` first, `(1^n)` last.
pub fn partitions_of(n: u64) -> Vec<YoungDiagram> {
    fn rec(remaining: u64, max_part: u64, prefix: &mut Vec<u64>, out: &mut Vec<YoungDiagram>) {
        if remaining == 0 {
            out.push(YoungDiagram {
                parts: prefix.clone(),
            });
            return;
        }
        let hi = remaining.min(max_part);
        for p in (1..=hi).rev() {
            prefix.push(p);
            rec(remaining - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n.max(1), &mut Vec::new(), &mut out);
    out
}

/// Compositions of `n` into `k` ordered parts, lexicographically descending:
/// `(n,0,...,0)` first, `(0,...,0,n)` last.
fn compositions_desc(n: u64, k: usize) -> Vec<Vec<u64>> {
    fn rec(remaining: u64, slots: usize, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            rec(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// The set `Y_n^{(k)}` of multiple partitions of `n` into `k` components, in
/// a deterministic order: compositions `(n_1..n_k)` lexicographically
/// descending, each component running through `partitions_of` order.
pub fn enumerate_multipartitions(n: u64, k: usize) -> Vec<MultiPartition> {
    assert!(k >= 1);
    let mut out = Vec::new();
    for comp in compositions_desc(n, k) {
        let choices: Vec<Vec<YoungDiagram>> = comp.iter().map(|&m| partitions_of(m)).collect();
        let mut idx = vec![0usize; k];
        loop {
            out.push(MultiPartition::new(
                idx.iter()
                    .enumerate()
                    .map(|(l, &i)| choices[l][i].clone())
                    .collect(),
            ));
            // odometer over the per-color partition lists
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < choices[pos].len() {
                    break;
                }
                idx[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if pos == usize::MAX {
                break;
            }
        }
    }
    out
}

/// Transition kernel of multiple partition structures: the probability that
/// deleting one uniformly random ball from `next` leaves `cur`. For fixed
/// `next` the values over all `cur` sum to one.
pub fn down_transition(next: &MultiPartition, cur: &MultiPartition) -> Result<Rat> {
    if next.k() != cur.k() || next.n() != cur.n() + 1 {
        return Err(Error::SizeMismatch(format!(
            "down transition needs sizes (n+1, n), got ({}, {})",
            next.n(),
            cur.n()
        )));
    }
    let Some(l) = next.growth_color(cur) else {
        return Ok(Rat::zero());
    };
    // the grown row has length L in next's l-th component
    let grown_len = grown_row_len(next.component(l), cur.component(l));
    let r = next.component(l).rows_of_len(grown_len) as u64;
    Ok(Rat::new(
        BigInt::from(r * grown_len),
        BigInt::from(next.n()),
    ))
}

/// Length of the row of `next_comp` that grew out of `cur_comp`.
fn grown_row_len(next_comp: &YoungDiagram, cur_comp: &YoungDiagram) -> u64 {
    // compare row-length multisets
    let max = next_comp.parts().first().copied().unwrap_or(0);
    for j in (1..=max).rev() {
        if next_comp.rows_of_len(j) > cur_comp.rows_of_len(j) {
            return j;
        }
    }
    unreachable!("next does not cover cur");
}

/// Number of elements in the class of `next` that project onto a fixed
/// element of the class of `cur` under the letter-deleting projection.
pub fn preimage_count(
    next: &MultiPartition,
    cur: &MultiPartition,
    g: &FiniteGroup,
) -> Result<BigUint> {
    if next.k() != cur.k() || next.n() != cur.n() + 1 {
        return Err(Error::SizeMismatch(format!(
            "preimage count needs sizes (n+1, n), got ({}, {})",
            next.n(),
            cur.n()
        )));
    }
    let Some(l) = next.growth_color(cur) else {
        return Ok(BigUint::zero());
    };
    let grown_len = grown_row_len(next.component(l), cur.component(l));
    if grown_len == 1 {
        Ok(BigUint::from(g.class_len(l)))
    } else {
        let r = cur.component(l).rows_of_len(grown_len - 1) as u64;
        Ok(BigUint::from(g.order as u64) * BigUint::from(grown_len - 1) * BigUint::from(r))
    }
}

/// Consistency check for a run of measure tables `M_1..M_N` under the
/// ball-deletion kernel: `M_n(Λ) = Σ_next Prob(Λ|next) M_{n+1}(next)`.
pub fn check_mps(tables: &[crate::measures::MeasureTable]) -> Result<DefectReport> {
    let mut max_abs = 0.0f64;
    let mut location = None;
    let mut exact = true;
    let mut checked = 0usize;
    for w in tables.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        if next.level != cur.level + 1 || next.k != cur.k {
            return Err(Error::SupportMismatch(format!(
                "consecutive levels required, got {} and {}",
                cur.level, next.level
            )));
        }
        for mp in enumerate_multipartitions(cur.level as u64, cur.k) {
            let mut acc = crate::scalar::Scalar::zero();
            for (_, bigger) in mp.grow_by_one() {
                let p = down_transition(&bigger, &mp)?;
                let weight = crate::scalar::Scalar::from_rat(p);
                acc = &acc + &(&weight * &next.get(&bigger));
            }
            let diff = &acc - &cur.get(&mp);
            let abs = diff.abs_f64();
            checked += 1;
            if !diff.is_zero() {
                exact = false;
            }
            if abs > max_abs {
                max_abs = abs;
                location = Some(format!("level {} at {}", cur.level, mp));
            }
        }
    }
    Ok(DefectReport {
        max_abs,
        location,
        exact_zero: exact,
        checked,
    })
}

/// `p(n)` for small n, used as an enumeration cross-check.
pub fn partition_count(n: u64) -> usize {
    partitions_of(n).len()
}
