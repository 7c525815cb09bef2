//! Probability measures on multiple partitions: Ewens measures on
//! `G ~ S(n)` and their pushforwards, z-measures and multiple z-measures,
//! irreducible dimensions, branching multiplicities, and the coherency check
//! for measure sequences.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::multipartition::{enumerate_multipartitions, MultiPartition, YoungDiagram};
use crate::scalar::{factorial, pochhammer, Backend, Scalar, FLOAT_TOL};
use crate::wreath::{self, WreathElement};
use crate::DefectReport;

/// A finite measure on `Y_n^{(k)}`, exact or float depending on its inputs.
#[derive(Debug, Clone)]
pub struct MeasureTable {
    pub level: usize,
    pub k: usize,
    pub backend: Backend,
    entries: BTreeMap<MultiPartition, Scalar>,
}

impl MeasureTable {
    pub fn new(level: usize, k: usize, backend: Backend) -> Self {
        MeasureTable {
            level,
            k,
            backend,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, mp: MultiPartition, value: Scalar) {
        debug_assert_eq!(mp.n() as usize, self.level);
        debug_assert_eq!(mp.k(), self.k);
        if !value.is_exact() {
            self.backend = Backend::Float;
        }
        self.entries.insert(mp, value);
    }

    pub fn get(&self, mp: &MultiPartition) -> Scalar {
        self.entries.get(mp).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> Scalar {
        self.entries
            .values()
            .fold(Scalar::zero(), |acc, v| &acc + v)
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        self.total().approx_eq(&Scalar::one(), tol)
    }

    /// Entries in the deterministic enumeration order of `Y_n^{(k)}`.
    pub fn entries_in_order(&self) -> Vec<(MultiPartition, Scalar)> {
        enumerate_multipartitions(self.level as u64, self.k)
            .into_iter()
            .filter_map(|mp| self.entries.get(&mp).cloned().map(|v| (mp, v)))
            .collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&MultiPartition, &Scalar)> {
        self.entries.iter()
    }

    /// JSON document with exact values rendered as rational strings.
    pub fn to_json_string(&self) -> String {
        let entries: Vec<serde_json::Value> = self
            .entries_in_order()
            .into_iter()
            .map(|(mp, v)| {
                let value = match &v {
                    Scalar::Exact(_) => serde_json::Value::String(v.to_string()),
                    Scalar::Float(z) => {
                        if z.im == 0.0 {
                            serde_json::json!(z.re)
                        } else {
                            serde_json::Value::String(v.to_string())
                        }
                    }
                };
                serde_json::json!({ "mp": mp.to_string(), "value": value })
            })
            .collect();
        serde_json::to_string_pretty(&serde_json::json!({
            "level": self.level,
            "k": self.k,
            "backend": self.backend,
            "entries": entries,
        }))
        .expect("serializable")
    }

    pub fn from_json_str(text: &str) -> Result<MeasureTable> {
        let doc: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("measure table: {e}")))?;
        let level = doc["level"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing level".into()))? as usize;
        let k = doc["k"]
            .as_u64()
            .ok_or_else(|| Error::Parse("missing k".into()))? as usize;
        let backend = match doc["backend"].as_str() {
            Some("exact") => Backend::Exact,
            Some("float") => Backend::Float,
            other => return Err(Error::Parse(format!("bad backend {other:?}"))),
        };
        let mut table = MeasureTable::new(level, k, backend);
        for e in doc["entries"]
            .as_array()
            .ok_or_else(|| Error::Parse("missing entries".into()))?
        {
            let mp = MultiPartition::parse(
                e["mp"]
                    .as_str()
                    .ok_or_else(|| Error::Parse("entry without mp".into()))?,
            )?;
            let value = match &e["value"] {
                serde_json::Value::String(s) => crate::scalar::parse_scalar(s)?,
                serde_json::Value::Number(n) => Scalar::from_f64(
                    n.as_f64()
                        .ok_or_else(|| Error::Parse("bad value number".into()))?,
                ),
                other => return Err(Error::Parse(format!("bad value {other}"))),
            };
            table.entries.insert(mp, value);
        }
        Ok(table)
    }
}

fn require_positive_real(s: &Scalar, what: &str) -> Result<()> {
    let ok = match s {
        Scalar::Exact(g) => g.is_real() && g.re > num_rational::BigRational::zero(),
        Scalar::Float(z) => z.im.abs() <= FLOAT_TOL && z.re > 0.0,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::NonPositiveParameter(format!("{what} = {s}")))
    }
}

/// Per-color Ewens parameters `T_l = t_l / ζ_{c_l}`.
fn ewens_t_over_zeta(g: &FiniteGroup, t: &[Scalar]) -> Result<Vec<Scalar>> {
    if t.len() != g.k() {
        return Err(Error::SizeMismatch(format!(
            "{} parameters vs k={}",
            t.len(),
            g.k()
        )));
    }
    for (l, tl) in t.iter().enumerate() {
        require_positive_real(tl, &format!("t_{}", l + 1))?;
    }
    Ok((0..g.k())
        .map(|l| t[l].clone() / Scalar::from_rat(g.zeta(l).expect("valid class")))
        .collect())
}

/// Ewens probability of a single element of `G ~ S(n)`:
/// `t_1^{[x]_1} ... t_k^{[x]_k} / (|G|^n (t_1/ζ_1 + ... + t_k/ζ_k)_n)`.
pub fn ewens_element_prob(g: &FiniteGroup, x: &WreathElement, t: &[Scalar]) -> Result<Scalar> {
    let big_t = ewens_t_over_zeta(g, t)?;
    let n = x.n();
    let counts = wreath::cycle_counts(g, x);
    let mut numer = Scalar::one();
    for (l, &c) in counts.iter().enumerate() {
        numer = &numer * &t[l].pow_i(c as i64);
    }
    let total_t = big_t.iter().fold(Scalar::zero(), |acc, v| &acc + v);
    let denom = &Scalar::from_biguint(&BigUint::from(g.order as u64).pow(n as u32))
        * &pochhammer(&total_t, n);
    Ok(&numer / &denom)
}

/// The Ewens measure on Young diagrams with `|λ|` boxes:
/// `M_{T,m}(λ) = m!/(T)_m · T^{l(λ)} / Π_j j^{r_j} r_j!`.
pub fn sym_ewens_measure(t: &Scalar, lambda: &YoungDiagram) -> Scalar {
    let m = lambda.size() as usize;
    let mut denom = BigUint::one();
    for j in 1..=lambda.size() {
        let r = lambda.rows_of_len(j);
        if r > 0 {
            denom *= BigUint::from(j).pow(r as u32) * factorial(r);
        }
    }
    let prefactor = &Scalar::from_biguint(&factorial(m)) / &pochhammer(t, m);
    let cycle_weight = &t.pow_i(lambda.rows() as i64) / &Scalar::from_biguint(&denom);
    &prefactor * &cycle_weight
}

/// Pushforward of the Ewens measure to `Y_n^{(k)}` through the closed product
/// formula: a multinomial Pochhammer prefactor in the `T_l` times independent
/// symmetric-group Ewens factors.
pub fn ewens_pushforward(g: &FiniteGroup, n: usize, t: &[Scalar]) -> Result<MeasureTable> {
    let big_t = ewens_t_over_zeta(g, t)?;
    let total_t = big_t.iter().fold(Scalar::zero(), |acc, v| &acc + v);
    let denom = pochhammer(&total_t, n);
    let mut table = MeasureTable::new(n, g.k(), g.backend);
    for mp in enumerate_multipartitions(n as u64, g.k()) {
        let mut value = &Scalar::from_biguint(&factorial(n)) / &denom;
        for l in 0..g.k() {
            let comp = mp.component(l);
            let m = comp.size() as usize;
            value = &value * &(&pochhammer(&big_t[l], m) / &Scalar::from_biguint(&factorial(m)));
            value = &value * &sym_ewens_measure(&big_t[l], comp);
        }
        table.insert(mp, value);
    }
    Ok(table)
}

/// Same pushforward computed element-wise: class size times the Ewens
/// probability of one representative. Kept as the independent second route;
/// it must agree with [`ewens_pushforward`] exactly.
pub fn ewens_pushforward_via_class_sizes(
    g: &FiniteGroup,
    n: usize,
    t: &[Scalar],
) -> Result<MeasureTable> {
    let mut table = MeasureTable::new(n, g.k(), g.backend);
    for mp in enumerate_multipartitions(n as u64, g.k()) {
        let rep = wreath::class_representative(&mp, g);
        let p = ewens_element_prob(g, &rep, t)?;
        let size = Scalar::from_biguint(&wreath::class_size(&mp, g)?);
        table.insert(mp, &size * &p);
    }
    Ok(table)
}

fn z_measure_factor(z: &Scalar, zbar: &Scalar, lambda: &YoungDiagram) -> Scalar {
    let mut acc = Scalar::one();
    for (c, h) in lambda.hooks_contents() {
        let c = Scalar::from_int(c);
        let h2 = Scalar::from_int((h * h) as i64);
        acc = &acc * &(&(&(z + &c) * &(zbar + &c)) / &h2);
    }
    acc
}

fn z_measure_with(n: usize, z: &Scalar, zbar: &Scalar) -> Result<MeasureTable> {
    if z.is_zero() || zbar.is_zero() {
        return Err(Error::ZeroParameter("z-measure parameter".into()));
    }
    let t = z * zbar;
    let poch = pochhammer(&t, n);
    if poch.is_zero_tol(0.0) {
        return Err(Error::PochhammerZero(format!("(z z')_n with z z' = {t}")));
    }
    let prefactor = &Scalar::from_biguint(&factorial(n)) / &poch;
    let mut table = MeasureTable::new(n, 1, z.backend());
    for mp in enumerate_multipartitions(n as u64, 1) {
        let value = &prefactor * &z_measure_factor(z, zbar, mp.component(0));
        table.insert(mp, value);
    }
    Ok(table)
}

/// The z-measure `M_z^{(n)}(λ) = n!/(z z̄)_n Π (z+c)(z̄+c)/h²` on `Y_n`.
pub fn z_measure(n: usize, z: &Scalar) -> Result<MeasureTable> {
    z_measure_with(n, z, &z.conj())
}

/// Exploration variant with independently chosen second parameter in place of
/// the conjugate. No positivity is asserted for the entries.
pub fn z_measure_decoupled(n: usize, z: &Scalar, z_prime: &Scalar) -> Result<MeasureTable> {
    z_measure_with(n, z, z_prime)
}

/// The parameters `a_l = Σ_i (z_i/ζ_{c_i}) conj(γ^l(c_i))` of the multiple
/// z-measures.
pub fn a_params(g: &FiniteGroup, z: &[Scalar]) -> Result<Vec<Scalar>> {
    if z.len() != g.k() {
        return Err(Error::SizeMismatch(format!(
            "{} parameters vs k={}",
            z.len(),
            g.k()
        )));
    }
    let mut a = Vec::with_capacity(g.k());
    for l in 0..g.k() {
        let mut acc = Scalar::zero();
        for i in 0..g.k() {
            let zeta = Scalar::from_rat(g.zeta(i).expect("valid class"));
            acc = &acc + &(&(&z[i] / &zeta) * &g.character(l, i).conj());
        }
        a.push(acc);
    }
    Ok(a)
}

/// The multiple z-measure on `Y_n^{(k)}`, evaluated through the telescoped
/// product
/// `M(Λ) = n!/(Σ_l a_l ā_l)_n · Π_l Π_{□ ∈ λ^{(l)}} (a_l+c)(ā_l+c)/h²`,
/// which agrees with the prefactor-times-z-measures form and stays finite
/// when some `a_l` vanishes (the measure then concentrates on multipartitions
/// with empty `l`-th component).
pub fn multiple_z_measure(g: &FiniteGroup, n: usize, z: &[Scalar]) -> Result<MeasureTable> {
    for (i, zi) in z.iter().enumerate() {
        if zi.is_zero() {
            return Err(Error::ZeroParameter(format!("z_{}", i + 1)));
        }
    }
    let a = a_params(g, z)?;
    let tau: Vec<Scalar> = a.iter().map(Scalar::norm_sqr).collect();
    let total_tau = tau.iter().fold(Scalar::zero(), |acc, v| &acc + v);
    let poch = pochhammer(&total_tau, n);
    if poch.is_zero_tol(0.0) {
        return Err(Error::PochhammerZero(format!(
            "(Σ a_l ā_l)_n with Σ = {total_tau}"
        )));
    }
    let prefactor = &Scalar::from_biguint(&factorial(n)) / &poch;
    let mut table = MeasureTable::new(n, g.k(), g.backend);
    for mp in enumerate_multipartitions(n as u64, g.k()) {
        let mut value = prefactor.clone();
        for l in 0..g.k() {
            value = &value * &z_measure_factor(&a[l], &a[l].conj(), mp.component(l));
        }
        table.insert(mp, value);
    }
    Ok(table)
}

/// Dimension of the irreducible representation of `G ~ S(n)` indexed by `Λ`:
/// `n!/Π m_l! · Π d_l^{m_l} dim λ^{(l)}`.
pub fn dim_irrep(mp: &MultiPartition, g: &FiniteGroup) -> Result<BigUint> {
    if mp.k() != g.k() {
        return Err(Error::SizeMismatch(format!(
            "{} colors vs k={}",
            mp.k(),
            g.k()
        )));
    }
    let n = mp.n() as usize;
    let mut result = factorial(n);
    for l in 0..g.k() {
        let comp = mp.component(l);
        let m = comp.size() as usize;
        debug_assert!((&result % &factorial(m)).is_zero());
        result /= factorial(m);
        result *= BigUint::from(g.dims[l]).pow(m as u32);
        result *= comp.dim();
    }
    Ok(result)
}

/// Branching multiplicity `Υ(Λ_prev, Λ)`: `d_l` when `Λ` grows out of
/// `Λ_prev` in color `l`, zero otherwise.
pub fn branching_multiplicity(
    prev: &MultiPartition,
    next: &MultiPartition,
    g: &FiniteGroup,
) -> Result<u64> {
    if next.n() != prev.n() + 1 || next.k() != prev.k() {
        return Err(Error::SizeMismatch(format!(
            "branching needs sizes (n-1, n), got ({}, {})",
            prev.n(),
            next.n()
        )));
    }
    Ok(match next.growth_color(prev) {
        Some(l) => g.dims[l],
        None => 0,
    })
}

/// Coherency check for consecutive tables: for every `Λ` at the lower level,
/// `M_n(Λ)/DIM(Λ) = Σ_j d_j Σ_{Λ̃ = Λ + box_j} M_{n+1}(Λ̃)/DIM(Λ̃)`.
pub fn check_coherency(
    cur: &MeasureTable,
    next: &MeasureTable,
    g: &FiniteGroup,
) -> Result<DefectReport> {
    if next.level != cur.level + 1 || next.k != cur.k || cur.k != g.k() {
        return Err(Error::SupportMismatch(format!(
            "levels ({}, {}) with k ({}, {})",
            cur.level, next.level, cur.k, next.k
        )));
    }
    let mut max_abs = 0.0f64;
    let mut location = None;
    let mut exact = true;
    let mut checked = 0usize;
    for mp in enumerate_multipartitions(cur.level as u64, cur.k) {
        let lhs = &cur.get(&mp) / &Scalar::from_biguint(&dim_irrep(&mp, g)?);
        let mut rhs = Scalar::zero();
        for (color, bigger) in mp.grow_by_one() {
            let d = Scalar::from_int(g.dims[color] as i64);
            let term = &next.get(&bigger) / &Scalar::from_biguint(&dim_irrep(&bigger, g)?);
            rhs = &rhs + &(&d * &term);
        }
        let diff = &lhs - &rhs;
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
    Ok(DefectReport {
        max_abs,
        location,
        exact_zero: exact,
        checked,
    })
}
