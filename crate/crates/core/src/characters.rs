//! Symmetric-group and wreath-product characters.
//!
//! `S(n)` characters come from the Murnaghan–Nakayama recursion over border
//! strips (computed through beta-numbers). Characters of `G ~ S(n)` come from
//! the Frobenius-type formula: the colored power sum of a conjugacy class,
//! rewritten through the change of variables
//! `p_r(c_i) = Σ_l conj(γ^l(c_i)) p_r(γ^l)`, expands over products of Schur
//! functions with the conjugated character values as coefficients.

use num_bigint::BigUint;
use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::measures::{dim_irrep, multiple_z_measure};
use crate::multipartition::{enumerate_multipartitions, MultiPartition, YoungDiagram};
use crate::scalar::{factorial, Scalar};
use crate::DefectReport;

/// An element of `Sym(G)` written in the colored power-sum basis: a finite
/// map from colored exponent partitions to coefficients.
pub type PowerSumExpansion = HashMap<MultiPartition, Scalar>;

fn mn_memo() -> &'static Mutex<HashMap<(YoungDiagram, Vec<u64>), i64>> {
    static MEMO: OnceLock<Mutex<HashMap<(YoungDiagram, Vec<u64>), i64>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Removals of a border strip of size `r`, as `(resulting diagram, height)`.
fn strip_removals(mu: &YoungDiagram, r: u64) -> Vec<(YoungDiagram, u32)> {
    let m = mu.rows();
    let betas: Vec<i64> = (0..m)
        .map(|i| mu.parts()[i] as i64 + (m - 1 - i) as i64)
        .collect();
    let mut out = Vec::new();
    for i in 0..m {
        let target = betas[i] - r as i64;
        if target < 0 || betas.contains(&target) {
            continue;
        }
        let height = betas
            .iter()
            .filter(|&&b| target < b && b < betas[i])
            .count() as u32;
        let mut new_betas = betas.clone();
        new_betas[i] = target;
        new_betas.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u64> = new_betas
            .iter()
            .enumerate()
            .map(|(j, &b)| (b - (m - 1 - j) as i64) as u64)
            .collect();
        out.push((YoungDiagram::from_parts(parts), height));
    }
    out
}

fn mn_recurse(mu: &YoungDiagram, rho: &[u64]) -> i64 {
    if rho.is_empty() {
        return if mu.is_empty() { 1 } else { 0 };
    }
    let key = (mu.clone(), rho.to_vec());
    if let Some(&v) = mn_memo().lock().unwrap().get(&key) {
        return v;
    }
    let r = rho[0];
    let rest = &rho[1..];
    let mut acc = 0i64;
    for (smaller, height) in strip_removals(mu, r) {
        let sign = if height % 2 == 0 { 1 } else { -1 };
        acc += sign * mn_recurse(&smaller, rest);
    }
    mn_memo().lock().unwrap().insert(key, acc);
    acc
}

/// The irreducible character `χ^μ_ρ` of the symmetric group.
pub fn sym_group_character(mu: &YoungDiagram, rho: &YoungDiagram) -> Result<i64> {
    if mu.size() != rho.size() {
        return Err(Error::SizeMismatch(format!(
            "|μ| = {} vs |ρ| = {}",
            mu.size(),
            rho.size()
        )));
    }
    Ok(mn_recurse(mu, rho.parts()))
}

/// `z_ρ = Π_j j^{r_j} r_j!`, the centralizer order of the class `C_ρ`.
pub fn z_rho(rho: &YoungDiagram) -> BigUint {
    let mut acc = BigUint::from(1u32);
    for j in 1..=rho.size() {
        let r = rho.rows_of_len(j);
        if r > 0 {
            acc *= BigUint::from(j).pow(r as u32) * factorial(r);
        }
    }
    acc
}

/// Colored power-sum expansion of the class function attached to the class
/// `Λ̃`: expand `Π_i p_{μ^{(i)}}(c_i)` in the `p(γ^l)` basis.
pub fn class_power_sum_expansion(g: &FiniteGroup, class: &MultiPartition) -> PowerSumExpansion {
    let k = g.k();
    let mut expansion: PowerSumExpansion = HashMap::new();
    expansion.insert(MultiPartition::empty(k), Scalar::one());
    for i in 0..k {
        for &r in class.component(i).parts() {
            let mut next: PowerSumExpansion = HashMap::new();
            for (mono, coef) in &expansion {
                for l in 0..k {
                    let mut parts = mono.component(l).parts().to_vec();
                    parts.push(r);
                    let grown = mono.with_component(l, YoungDiagram::from_parts(parts));
                    let term = coef * &g.character(l, i).conj();
                    next.entry(grown)
                        .and_modify(|acc| *acc = &*acc + &term)
                        .or_insert(term);
                }
            }
            expansion = next;
        }
    }
    expansion
}

fn schur_coefficient(expansion: &PowerSumExpansion, irrep: &MultiPartition) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    'mono: for (rho, coef) in expansion {
        let mut chi_prod = 1i64;
        for l in 0..irrep.k() {
            if rho.component(l).size() != irrep.component(l).size() {
                continue 'mono;
            }
            chi_prod *= sym_group_character(irrep.component(l), rho.component(l))?;
        }
        acc = &acc + &(coef * &Scalar::from_int(chi_prod));
    }
    Ok(acc)
}

/// The irreducible character of `G ~ S(n)` indexed by `irrep`, at the class
/// indexed by `class`.
pub fn wreath_character(
    g: &FiniteGroup,
    irrep: &MultiPartition,
    class: &MultiPartition,
) -> Result<Scalar> {
    if irrep.n() != class.n() {
        return Err(Error::SizeMismatch(format!(
            "irrep size {} vs class size {}",
            irrep.n(),
            class.n()
        )));
    }
    let expansion = class_power_sum_expansion(g, class);
    Ok(schur_coefficient(&expansion, irrep)?.conj())
}

/// Full character table at level `n`: `table[row][col]` with rows = irreps
/// and columns = classes, both in enumeration order.
pub fn wreath_character_table(
    g: &FiniteGroup,
    n: usize,
) -> Result<(Vec<MultiPartition>, Vec<Vec<Scalar>>)> {
    let index = enumerate_multipartitions(n as u64, g.k());
    let mut table = vec![Vec::with_capacity(index.len()); index.len()];
    for class in &index {
        let expansion = class_power_sum_expansion(g, class);
        for (row, irrep) in index.iter().enumerate() {
            table[row].push(schur_coefficient(&expansion, irrep)?.conj());
        }
    }
    Ok((index, table))
}

/// Restriction of the character `χ_{z_1..z_k}` to `G ~ S(n)`, evaluated at a
/// class: `Σ_Λ M_{z}^{(n)}(Λ) χ^Λ(class) / DIM(Λ)`.
pub fn chi_z_restriction(g: &FiniteGroup, class: &MultiPartition, z: &[Scalar]) -> Result<Scalar> {
    let n = class.n() as usize;
    let measure = multiple_z_measure(g, n, z)?;
    let expansion = class_power_sum_expansion(g, class);
    let mut acc = Scalar::zero();
    for irrep in enumerate_multipartitions(n as u64, g.k()) {
        let m = measure.get(&irrep);
        if m.is_zero() {
            continue;
        }
        let chi = schur_coefficient(&expansion, &irrep)?.conj();
        let dim = Scalar::from_biguint(&dim_irrep(&irrep, g)?);
        acc = &acc + &(&(&m * &chi) / &dim);
    }
    Ok(acc)
}

/// Checks the expansion of `x -> z_1^{[x]_1} ... z_k^{[x]_k}` over the
/// irreducible characters with hook/content-product coefficients in the
/// `a_l`; the defect must vanish identically.
pub fn verify_z_cycle_expansion(g: &FiniteGroup, n: usize, z: &[Scalar]) -> Result<DefectReport> {
    let a = crate::measures::a_params(g, z)?;
    let mut max_abs = 0.0f64;
    let mut location = None;
    let mut exact = true;
    let mut checked = 0usize;
    let index = enumerate_multipartitions(n as u64, g.k());
    // coefficient of χ^Λ: Π_l Π_box (a_l + c)/h
    let mut coefs = Vec::with_capacity(index.len());
    for irrep in &index {
        let mut coef = Scalar::one();
        for l in 0..g.k() {
            for (c, h) in irrep.component(l).hooks_contents() {
                coef = &coef * &(&(&a[l] + &Scalar::from_int(c)) / &Scalar::from_int(h as i64));
            }
        }
        coefs.push(coef);
    }
    for class in &index {
        let mut lhs = Scalar::one();
        for l in 0..g.k() {
            lhs = &lhs * &z[l].pow_i(class.component(l).rows() as i64);
        }
        let expansion = class_power_sum_expansion(g, class);
        let mut rhs = Scalar::zero();
        for (irrep, coef) in index.iter().zip(coefs.iter()) {
            let chi = schur_coefficient(&expansion, irrep)?.conj();
            rhs = &rhs + &(coef * &chi);
        }
        let diff = &lhs - &rhs;
        let abs = diff.abs_f64();
        checked += 1;
        if !diff.is_zero() {
            exact = false;
        }
        if abs > max_abs {
            max_abs = abs;
            location = Some(format!("class {class}"));
        }
    }
    Ok(DefectReport {
        max_abs,
        location,
        exact_zero: exact,
        checked,
    })
}
