//! The algebra of `G ~ S(n)`: elements are a weight vector in `G^n` together
//! with a permutation, multiplied by the twisted rule
//! `((g_1..g_n), s)((h_1..h_n), t) = ((g_i h_{s^{-1}(i)}), s t)`.
//!
//! Cycle products are read right-to-left along each cycle of the permutation;
//! their conjugacy classes in `G` are the cycle colors, and the colored
//! multiset of cycle lengths is the element's cycle type — a multiple
//! partition indexing its conjugacy class.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::multipartition::MultiPartition;
use crate::scalar::factorial;
use crate::YoungDiagram;

/// Default cap on `|G|^n n!` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u128 = 10_000_000;

/// An element of `G ~ S(n)`: weight indices into the ambient group plus a
/// zero-based one-line permutation (`perm[i]` is the image of letter `i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub weights: Vec<usize>,
    pub perm: Vec<usize>,
}

/// One cycle of an element: positions in cycle order starting from the
/// minimal one, the cycle product `g_{i_r} ... g_{i_1}`, and its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleRecord {
    pub cycle: Vec<usize>,
    pub product: usize,
    pub class: usize,
}

impl WreathElement {
    pub fn identity(n: usize) -> Self {
        WreathElement {
            weights: vec![0; n],
            perm: (0..n).collect(),
        }
    }

    pub fn new(weights: Vec<usize>, perm: Vec<usize>) -> Result<Self> {
        if weights.len() != perm.len() {
            return Err(Error::SizeMismatch(format!(
                "{} weights vs {} permutation entries",
                weights.len(),
                perm.len()
            )));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Parse(format!("not a permutation of 0..{n}")));
            }
            seen[p] = true;
        }
        Ok(WreathElement { weights, perm })
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.weights.iter().all(|&w| w == 0) && self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// Validity against an ambient group (weights in range).
    pub fn check_weights(&self, g: &FiniteGroup) -> Result<()> {
        if let Some(&w) = self.weights.iter().find(|&&w| w >= g.order) {
            return Err(Error::IndexOutOfRange(format!(
                "weight {w} outside group of order {}",
                g.order
            )));
        }
        Ok(())
    }

    /// Text form `"[g1,g2,...|s1,s2,...]"` with one-based one-line images.
    pub fn parse(s: &str) -> Result<WreathElement> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("element {s:?} not bracketed")))?;
        let (w_str, p_str) = inner
            .split_once('|')
            .ok_or_else(|| Error::Parse("missing '|' separator".into()))?;
        let parse_list = |part: &str| -> Result<Vec<usize>> {
            if part.trim().is_empty() {
                return Ok(Vec::new());
            }
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad index {x:?}")))
                })
                .collect()
        };
        let weights = parse_list(w_str)?;
        let perm_one_based = parse_list(p_str)?;
        if perm_one_based.iter().any(|&p| p == 0) {
            return Err(Error::Parse("one-line permutation is one-based".into()));
        }
        WreathElement::new(weights, perm_one_based.iter().map(|&p| p - 1).collect())
    }
}

impl fmt::Display for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ws: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        let ps: Vec<String> = self.perm.iter().map(|p| (p + 1).to_string()).collect();
        write!(f, "[{}|{}]", ws.join(","), ps.join(","))
    }
}

/// `x · y` in `G ~ S(n)`.
pub fn multiply(g: &FiniteGroup, x: &WreathElement, y: &WreathElement) -> Result<WreathElement> {
    if x.n() != y.n() {
        return Err(Error::SizeMismatch(format!(
            "levels {} and {}",
            x.n(),
            y.n()
        )));
    }
    let n = x.n();
    // s^{-1}
    let mut s_inv = vec![0usize; n];
    for (i, &p) in x.perm.iter().enumerate() {
        s_inv[p] = i;
    }
    let weights = (0..n)
        .map(|i| g.mul(x.weights[i], y.weights[s_inv[i]]))
        .collect();
    let perm = (0..n).map(|i| x.perm[y.perm[i]]).collect();
    Ok(WreathElement { weights, perm })
}

pub fn inverse(g: &FiniteGroup, x: &WreathElement) -> WreathElement {
    let n = x.n();
    let mut perm = vec![0usize; n];
    for (i, &p) in x.perm.iter().enumerate() {
        perm[p] = i;
    }
    let weights = (0..n).map(|j| g.inv(x.weights[x.perm[j]])).collect();
    WreathElement { weights, perm }
}

/// Cycle decomposition with cycle products, cycles led by their minimal
/// position and sorted by leader.
pub fn cycle_products(g: &FiniteGroup, x: &WreathElement) -> Vec<CycleRecord> {
    let n = x.n();
    let mut visited = vec![false; n];
    let mut records = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut pos = start;
        let mut product = 0usize; // identity
        loop {
            visited[pos] = true;
            cycle.push(pos);
            // accumulate right-to-left: g_{i_r} ... g_{i_1}
            product = g.mul(x.weights[pos], product);
            pos = x.perm[pos];
            if pos == start {
                break;
            }
        }
        let class = g.class_of[product];
        records.push(CycleRecord {
            cycle,
            product,
            class,
        });
    }
    records
}

/// Cycle counts per color: `[x]_{c_l}`.
pub fn cycle_counts(g: &FiniteGroup, x: &WreathElement) -> Vec<usize> {
    let mut counts = vec![0usize; g.k()];
    for rec in cycle_products(g, x) {
        counts[rec.class] += 1;
    }
    counts
}

/// Cycle type of `x` as a multiple partition: color `l` collects the lengths
/// of the cycles whose product lies in class `c_l`.
pub fn cycle_type(g: &FiniteGroup, x: &WreathElement) -> MultiPartition {
    let mut per_color: Vec<Vec<u64>> = vec![Vec::new(); g.k()];
    for rec in cycle_products(g, x) {
        per_color[rec.class].push(rec.cycle.len() as u64);
    }
    MultiPartition::new(
        per_color
            .into_iter()
            .map(YoungDiagram::from_parts)
            .collect(),
    )
}

/// The canonical projection `G ~ S(n+1) -> G ~ S(n)`: if the last letter is
/// fixed it is dropped together with its weight; otherwise the letter is
/// removed from its cycle and its weight is folded into the image position,
/// `g_{s(n+1)} <- g_{s(n+1)} g_{n+1}`. Cycle types of surviving cycles are
/// preserved.
pub fn project(g: &FiniteGroup, x: &WreathElement) -> Result<WreathElement> {
    let m = x.n();
    if m < 2 {
        return Err(Error::SizeTooSmall);
    }
    let last = m - 1;
    let mut weights = x.weights.clone();
    let mut perm = x.perm.clone();
    let image = perm[last];
    if image != last {
        let pre = (0..m).find(|&i| perm[i] == last).expect("bijection");
        weights[image] = g.mul(weights[image], weights[last]);
        perm[pre] = image;
    }
    weights.truncate(last);
    perm.truncate(last);
    Ok(WreathElement { weights, perm })
}

/// The canonical inclusion `G ~ S(p) -> G ~ S(n)`: identity weights on the
/// new letters, which stay fixed points.
pub fn embed(x: &WreathElement, n: usize) -> Result<WreathElement> {
    if n < x.n() {
        return Err(Error::SizeShrink {
            have: x.n(),
            target: n,
        });
    }
    let mut weights = x.weights.clone();
    let mut perm = x.perm.clone();
    for i in x.n()..n {
        weights.push(0);
        perm.push(i);
    }
    Ok(WreathElement { weights, perm })
}

/// Fundamental cocycle `C_l(x, W) = [w_2^{-1} x w_1]_{c_l} - [x]_{c_l}` for a
/// pair `W = (w_1, w_2)` living at some level at most `x.n()`. The value does
/// not depend on which level `x` represents its projective sequence at, as
/// long as the pair fits.
pub fn cocycle(
    g: &FiniteGroup,
    x: &WreathElement,
    w1: &WreathElement,
    w2: &WreathElement,
    l: usize,
) -> Result<i64> {
    if l >= g.k() {
        return Err(Error::IndexOutOfRange(format!("color {l} vs k={}", g.k())));
    }
    if w1.n() > x.n() || w2.n() > x.n() {
        return Err(Error::LevelMismatch {
            detail: format!("pair at levels ({}, {})", w1.n(), w2.n()),
            level: x.n(),
        });
    }
    let w1 = embed(w1, x.n())?;
    let w2 = embed(w2, x.n())?;
    let moved = multiply(g, &multiply(g, &inverse(g, &w2), x)?, &w1)?;
    Ok(cycle_counts(g, &moved)[l] as i64 - cycle_counts(g, x)[l] as i64)
}

/// `|K_Λ|`: the exact size of the conjugacy class of cycle type `Λ`,
/// `n! |G|^n / (Π_l Π_j j^{r_j} r_j! · Π_l ζ_{c_l}^{rows})`.
pub fn class_size(mp: &MultiPartition, g: &FiniteGroup) -> Result<BigUint> {
    if mp.k() != g.k() {
        return Err(Error::SizeMismatch(format!(
            "{} colors vs k={}",
            mp.k(),
            g.k()
        )));
    }
    let n = mp.n() as usize;
    let mut numer = factorial(n) * BigUint::from(g.order as u64).pow(n as u32);
    let mut denom = BigUint::one();
    for l in 0..g.k() {
        let comp = mp.component(l);
        for j in 1..=comp.size() {
            let r = comp.rows_of_len(j);
            if r > 0 {
                denom *= BigUint::from(j).pow(r as u32) * factorial(r);
            }
        }
        denom *= BigUint::from(g.zeta_u64(l)).pow(comp.rows() as u32);
    }
    if (&numer % &denom) != BigUint::zero() {
        return Err(Error::NonIntegerResult);
    }
    numer /= denom;
    Ok(numer)
}

/// A canonical element of the class with cycle type `mp`: cycles laid out
/// consecutively, each carrying the minimal representative of its color as
/// the weight of its first position.
pub fn class_representative(mp: &MultiPartition, g: &FiniteGroup) -> WreathElement {
    let n = mp.n() as usize;
    let mut x = WreathElement::identity(n);
    let mut pos = 0usize;
    for l in 0..mp.k() {
        let rep = g.class_representative(l);
        for &len in mp.component(l).parts() {
            let len = len as usize;
            x.weights[pos] = rep;
            for i in 0..len {
                x.perm[pos + i] = if i + 1 < len { pos + i + 1 } else { pos };
            }
            pos += len;
        }
    }
    x
}

/// Total number of elements of `G ~ S(n)`.
pub fn wreath_order(g: &FiniteGroup, n: usize) -> u128 {
    let mut total: u128 = 1;
    for i in 1..=n {
        total *= i as u128;
    }
    total * (g.order as u128).pow(n as u32)
}

/// Exhaustive enumeration of `G ~ S(n)` in a deterministic order: rank
/// `r = weight_rank * n! + perm_rank` with weights read as big-endian base
/// `|G|` digits and permutations unranked through the factorial number
/// system.
pub struct WreathEnumeration {
    order: usize,
    n: usize,
    total: u128,
    next: u128,
}

impl WreathEnumeration {
    pub fn new(g: &FiniteGroup, n: usize, cap: Option<u128>) -> Result<Self> {
        let total = wreath_order(g, n);
        let cap = cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
        if total > cap {
            return Err(Error::TooLarge { size: total, cap });
        }
        Ok(WreathEnumeration {
            order: g.order,
            n,
            total,
            next: 0,
        })
    }

    pub fn len(&self) -> u128 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Element at a given rank, independent of iteration state.
    pub fn unrank(&self, rank: u128) -> WreathElement {
        let fact: u128 = (1..=self.n as u128).product();
        let mut wr = rank / fact;
        let pr = rank % fact;
        let mut weights = vec![0usize; self.n];
        for i in (0..self.n).rev() {
            weights[i] = (wr % self.order as u128) as usize;
            wr /= self.order as u128;
        }
        // factorial number system -> lexicographic permutation
        let mut digits = vec![0usize; self.n];
        let mut p = pr;
        for i in (0..self.n).rev() {
            let base = (self.n - i) as u128;
            digits[i] = (p % base) as usize;
            p /= base;
        }
        let mut pool: Vec<usize> = (0..self.n).collect();
        let perm = digits.iter().map(|&d| pool.remove(d)).collect();
        WreathElement { weights, perm }
    }
}

impl Iterator for WreathEnumeration {
    type Item = WreathElement;

    fn next(&mut self) -> Option<WreathElement> {
        if self.next >= self.total {
            return None;
        }
        let x = self.unrank(self.next);
        self.next += 1;
        Some(x)
    }
}
