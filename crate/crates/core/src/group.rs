//! Finite-group context: multiplication table, conjugacy classes and the
//! character table. Everything downstream treats a loaded [`FiniteGroup`] as
//! immutable shared data.
//!
//! Groups are loaded from a JSON document with fields `order`, `name`, `mul`
//! (row-major table of element indices, index 0 the identity), `char_table`
//! (rows = irreducible characters, columns = conjugacy classes in canonical
//! order) and optionally `classes`. Character entries may be integers, `"p/q"`
//! rationals, `"a+bi"` Gaussian rationals, decimal floats, or `"zeta(m)^j"`
//! root-of-unity literals. Entries outside the Gaussian rationals downgrade
//! the backend to float; the downgrade is recorded in the validation report.

use num_traits::{One, Signed};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, Backend, Rat, Scalar, FLOAT_TOL};

/// A validated finite group with `k` conjugacy classes.
///
/// Conventions: element 0 is the identity; the class of the identity is
/// `classes[0]`; the remaining classes are ordered by (size, minimal element
/// index). This ordering fixes the color indices of multiple partitions.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    pub name: String,
    pub order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `char_table[l][i]` is the value of the `l`-th irreducible character on
    /// class `i`.
    pub char_table: Vec<Vec<Scalar>>,
    /// Dimensions `d_l` of the irreducible representations of `G`.
    pub dims: Vec<u64>,
    pub backend: Backend,
}

/// What `load_group` observed while validating a group document.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub name: String,
    pub order: usize,
    pub k: usize,
    pub class_sizes: Vec<usize>,
    pub dims: Vec<u64>,
    pub backend: Backend,
    pub downgraded_to_float: bool,
    pub max_orthogonality_defect: f64,
    pub notes: Vec<String>,
}

#[derive(Deserialize)]
struct GroupDoc {
    #[serde(default)]
    name: Option<String>,
    order: usize,
    mul: Vec<Vec<usize>>,
    char_table: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    classes: Option<Vec<Vec<usize>>>,
}

impl FiniteGroup {
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// Number of conjugacy classes.
    #[inline]
    pub fn k(&self) -> usize {
        self.classes.len()
    }

    pub fn class_len(&self, l: usize) -> usize {
        self.classes[l].len()
    }

    /// `ζ_{c_l} = |G| / |c_l|` as an exact rational (always an integer).
    pub fn zeta(&self, l: usize) -> Result<Rat> {
        if l >= self.k() {
            return Err(Error::IndexOutOfRange(format!(
                "class index {l} out of range for k={}",
                self.k()
            )));
        }
        Ok(Rat::new(self.order.into(), self.classes[l].len().into()))
    }

    pub fn zeta_u64(&self, l: usize) -> u64 {
        (self.order / self.classes[l].len()) as u64
    }

    /// Character value `γ^l(c_i)`.
    pub fn character(&self, l: usize, i: usize) -> &Scalar {
        &self.char_table[l][i]
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Minimal-index representative of class `l`.
    pub fn class_representative(&self, l: usize) -> usize {
        self.classes[l][0]
    }

    /// Load and validate a group from its JSON document.
    pub fn load_from_str(text: &str) -> Result<(FiniteGroup, ValidationReport)> {
        let doc: GroupDoc =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("group document: {e}")))?;
        validate(doc)
    }
}

fn check_table(order: usize, mul: &[usize]) -> Result<Vec<usize>> {
    for (pos, &v) in mul.iter().enumerate() {
        if v >= order {
            return Err(Error::NonGroupTable {
                reason: format!("entry {v} at position {pos} exceeds order {order}"),
                witness: None,
            });
        }
    }
    // identity row and column
    for j in 0..order {
        if mul[j] != j {
            return Err(Error::NonGroupTable {
                reason: "index 0 is not a left identity".into(),
                witness: Some((0, j, mul[j])),
            });
        }
        if mul[j * order] != j {
            return Err(Error::NonGroupTable {
                reason: "index 0 is not a right identity".into(),
                witness: Some((j, 0, mul[j * order])),
            });
        }
    }
    // two-sided inverses
    let mut inv = vec![usize::MAX; order];
    for a in 0..order {
        match (0..order).find(|&b| mul[a * order + b] == 0) {
            Some(b) if mul[b * order + a] == 0 => inv[a] = b,
            _ => {
                return Err(Error::NonGroupTable {
                    reason: format!("element {a} has no two-sided inverse"),
                    witness: None,
                })
            }
        }
    }
    // exhaustive associativity; desk-scale orders make the cubic loop cheap
    for a in 0..order {
        for b in 0..order {
            let ab = mul[a * order + b];
            for c in 0..order {
                if mul[ab * order + c] != mul[a * order + mul[b * order + c]] {
                    return Err(Error::NonGroupTable {
                        reason: "associativity fails".into(),
                        witness: Some((a, b, c)),
                    });
                }
            }
        }
    }
    Ok(inv)
}

/// Conjugation orbits, ordered identity-class first and then by
/// (size, minimal element index).
pub fn compute_conjugacy_classes(
    order: usize,
    mul: &[usize],
    inv: &[usize],
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let mut seen = vec![false; order];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for x in 0..order {
        if seen[x] {
            continue;
        }
        let mut orbit: Vec<usize> = (0..order)
            .map(|g| mul[mul[g * order + x] * order + inv[g]])
            .collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &y in &orbit {
            seen[y] = true;
        }
        classes.push(orbit);
    }
    classes.sort_by_key(|c| (!c.contains(&0), c.len(), c[0]));
    let mut class_of = vec![0usize; order];
    for (l, c) in classes.iter().enumerate() {
        for &x in c {
            class_of[x] = l;
        }
    }
    (classes, class_of)
}

fn parse_char_entry(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_int(i))
            } else {
                Ok(Scalar::from_f64(n.as_f64().ok_or_else(|| {
                    Error::Parse(format!("bad numeric character entry {n}"))
                })?))
            }
        }
        serde_json::Value::String(s) => parse_scalar(s),
        other => Err(Error::Parse(format!(
            "character entry must be a number or string, got {other}"
        ))),
    }
}

fn validate(doc: GroupDoc) -> Result<(FiniteGroup, ValidationReport)> {
    let order = doc.order;
    if order == 0 {
        return Err(Error::NonGroupTable {
            reason: "order must be positive".into(),
            witness: None,
        });
    }
    if doc.mul.len() != order || doc.mul.iter().any(|row| row.len() != order) {
        return Err(Error::NonGroupTable {
            reason: format!("mul table is not {order}x{order}"),
            witness: None,
        });
    }
    let mul: Vec<usize> = doc.mul.into_iter().flatten().collect();
    let inv = check_table(order, &mul)?;
    let (classes, class_of) = compute_conjugacy_classes(order, &mul, &inv);
    let k = classes.len();

    if let Some(declared) = &doc.classes {
        let mut declared: Vec<Vec<usize>> = declared
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        declared.sort_by_key(|c| (!c.contains(&0), c.len(), c.first().copied().unwrap_or(0)));
        if declared != classes {
            return Err(Error::ClassMismatch(format!(
                "declared {declared:?}, recomputed {classes:?}"
            )));
        }
    }

    if doc.char_table.len() != k || doc.char_table.iter().any(|row| row.len() != k) {
        return Err(Error::BadCharacterTable(format!(
            "expected a {k}x{k} table matching the {k} conjugacy classes"
        )));
    }
    let mut notes = Vec::new();
    let mut char_table: Vec<Vec<Scalar>> = Vec::with_capacity(k);
    for (l, row) in doc.char_table.iter().enumerate() {
        let mut out = Vec::with_capacity(k);
        for (i, v) in row.iter().enumerate() {
            let s = parse_char_entry(v)?;
            if !s.is_exact() {
                notes.push(format!(
                    "character entry ({l},{i}) is not a Gaussian rational; backend downgraded to float"
                ));
            }
            out.push(s);
        }
        char_table.push(out);
    }
    let downgraded = !notes.is_empty();
    let backend = if downgraded {
        Backend::Float
    } else {
        Backend::Exact
    };

    // dimensions from the identity column
    let mut dims = Vec::with_capacity(k);
    for (l, row) in char_table.iter().enumerate() {
        let d = &row[0];
        let ok = match d {
            Scalar::Exact(g) => g.is_real() && g.re.denom().is_one() && g.re.numer().is_positive(),
            Scalar::Float(z) => {
                z.im.abs() < FLOAT_TOL && z.re > 0.0 && (z.re - z.re.round()).abs() < FLOAT_TOL
            }
        };
        if !ok {
            return Err(Error::BadCharacterTable(format!(
                "dimension of irreducible {l} (value {d}) is not a positive integer"
            )));
        }
        dims.push(d.re_f64().round() as u64);
    }
    let sum_sq: u64 = dims.iter().map(|d| d * d).sum();
    if sum_sq != order as u64 {
        return Err(Error::BadCharacterTable(format!(
            "sum of squared dimensions {sum_sq} differs from |G| = {order}"
        )));
    }

    // row orthogonality with class-size weights
    let mut max_defect: f64 = 0.0;
    for l in 0..k {
        for m in 0..k {
            let mut acc = Scalar::zero();
            for (i, class) in classes.iter().enumerate() {
                let w = Scalar::from_int(class.len() as i64);
                acc = &acc + &(&w * &(&char_table[l][i] * &char_table[m][i].conj()));
            }
            let expected = Scalar::from_int(if l == m { order as i64 } else { 0 });
            let defect = (&acc - &expected).abs_f64();
            max_defect = max_defect.max(defect);
            let pass = match backend {
                Backend::Exact => defect == 0.0 && acc.approx_eq(&expected, 0.0),
                Backend::Float => defect <= FLOAT_TOL * order as f64,
            };
            if !pass {
                return Err(Error::BadCharacterTable(format!(
                    "row orthogonality defect {defect:.3e} for rows ({l},{m})"
                )));
            }
        }
    }

    let name = doc.name.unwrap_or_else(|| format!("order{order}"));
    let report = ValidationReport {
        name: name.clone(),
        order,
        k,
        class_sizes: classes.iter().map(Vec::len).collect(),
        dims: dims.clone(),
        backend,
        downgraded_to_float: downgraded,
        max_orthogonality_defect: max_defect,
        notes,
    };
    Ok((
        FiniteGroup {
            name,
            order,
            mul,
            inv,
            classes,
            class_of,
            char_table,
            dims,
            backend,
        },
        report,
    ))
}

/// Bundled group documents (also shipped as files under `groups/`).
pub mod bundled {
    use super::FiniteGroup;

    pub const TRIVIAL: &str = include_str!("../../../groups/trivial.group");
    pub const Z2: &str = include_str!("../../../groups/z2.group");
    pub const Z3: &str = include_str!("../../../groups/z3.group");
    pub const Z2XZ2: &str = include_str!("../../../groups/z2xz2.group");
    pub const S3: &str = include_str!("../../../groups/s3.group");

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::load_from_str(TRIVIAL)
            .expect("bundled group")
            .0
    }

    pub fn z2() -> FiniteGroup {
        FiniteGroup::load_from_str(Z2).expect("bundled group").0
    }

    pub fn z3() -> FiniteGroup {
        FiniteGroup::load_from_str(Z3).expect("bundled group").0
    }

    pub fn z2xz2() -> FiniteGroup {
        FiniteGroup::load_from_str(Z2XZ2).expect("bundled group").0
    }

    pub fn s3() -> FiniteGroup {
        FiniteGroup::load_from_str(S3).expect("bundled group").0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn trivial_group() {
        let g = bundled::trivial();
        assert_eq!(g.order, 1);
        assert_eq!(g.k(), 1);
        assert_eq!(g.char_table[0][0], Scalar::from_int(1));
        assert_eq!(g.zeta(0).unwrap(), Rat::from_integer(BigInt::from(1)));
    }

    #[test]
    fn z2_group() {
        let g = bundled::z2();
        assert_eq!(g.k(), 2);
        assert_eq!(g.classes, vec![vec![0], vec![1]]);
        assert_eq!(g.char_table[1][1], Scalar::from_int(-1));
        assert_eq!(g.zeta(1).unwrap(), Rat::from_integer(BigInt::from(2)));
        assert_eq!(g.backend, Backend::Exact);
    }

    #[test]
    fn s3_group() {
        let g = bundled::s3();
        assert_eq!(g.k(), 3);
        // identity class first, then by (size, min index)
        assert_eq!(
            g.classes.iter().map(Vec::len).collect::<Vec<_>>(),
            vec![1, 2, 3]
        );
        assert_eq!(g.dims, vec![1, 1, 2]);
        // zeta of the transposition class is 6/3 = 2
        assert_eq!(g.zeta(2).unwrap(), Rat::from_integer(BigInt::from(2)));
        // class equation
        let total: usize = g.classes.iter().map(Vec::len).sum();
        assert_eq!(total, g.order);
    }

    #[test]
    fn z3_downgrades_to_float() {
        let (g, report) = FiniteGroup::load_from_str(bundled::Z3).unwrap();
        assert_eq!(g.backend, Backend::Float);
        assert!(report.downgraded_to_float);
        assert!(report.max_orthogonality_defect < 1e-12);
        assert_eq!(g.k(), 3);
    }

    #[test]
    fn z2xz2_exact() {
        let g = bundled::z2xz2();
        assert_eq!(g.k(), 4);
        assert_eq!(g.backend, Backend::Exact);
        assert_eq!(g.dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn rejects_non_associative_table() {
        // swap two entries of the z2xz2 table to break associativity
        let doc =
            r#"{"order":3,"mul":[[0,1,2],[1,2,0],[2,1,0]],"char_table":[[1,1,1],[1,1,1],[1,1,1]]}"#;
        let err = FiniteGroup::load_from_str(doc).unwrap_err();
        match err {
            Error::NonGroupTable { .. } => {}
            other => panic!("expected NonGroupTable, got {other}"),
        }
    }

    #[test]
    fn rejects_bad_character_table() {
        let doc = r#"{"order":2,"mul":[[0,1],[1,0]],"char_table":[[1,1],[1,1]]}"#;
        let err = FiniteGroup::load_from_str(doc).unwrap_err();
        match err {
            Error::BadCharacterTable(_) => {}
            other => panic!("expected BadCharacterTable, got {other}"),
        }
    }

    #[test]
    fn rejects_class_mismatch() {
        let doc =
            r#"{"order":2,"mul":[[0,1],[1,0]],"classes":[[0,1]],"char_table":[[1,1],[1,-1]]}"#;
        let err = FiniteGroup::load_from_str(doc).unwrap_err();
        match err {
            Error::ClassMismatch(_) => {}
            other => panic!("expected ClassMismatch, got {other}"),
        }
    }

    #[test]
    fn relabeling_preserves_class_size_multiset() {
        // permute the non-identity elements of S3 and recompute classes
        let g = bundled::s3();
        let perm = [0usize, 3, 5, 1, 2, 4]; // fixes 0
        let mut mul = vec![0usize; 36];
        let inv_perm = {
            let mut p = [0usize; 6];
            for (i, &v) in perm.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        for a in 0..6 {
            for b in 0..6 {
                mul[a * 6 + b] = perm[g.mul(inv_perm[a], inv_perm[b])];
            }
        }
        let inv: Vec<usize> = (0..6)
            .map(|a| (0..6).find(|&b| mul[a * 6 + b] == 0).unwrap())
            .collect();
        let (classes, _) = compute_conjugacy_classes(6, &mul, &inv);
        let mut sizes: Vec<usize> = classes.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(classes[0].contains(&0));
    }
}
