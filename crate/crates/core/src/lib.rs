//! Exact-arithmetic and Monte Carlo engine for harmonic analysis on the
//! wreath products `G ~ S(n)` of a finite group `G` with symmetric groups.
//!
//! The crate provides:
//!
//! * [`group`] — loading and validating a finite group with its conjugacy
//!   classes and character table;
//! * [`wreath`] — the algebra of `G ~ S(n)`: multiplication, cycle products,
//!   cycle types, the canonical projection that deletes the last letter,
//!   cocycles of the two-sided action, conjugacy-class sizes and exhaustive
//!   enumeration at desk scale;
//! * [`multipartition`] — Young diagrams and k-colored multiple partitions,
//!   the down-transition kernel of multiple partition structures and
//!   projection preimage counts;
//! * [`measures`] — Ewens measures on `G ~ S(n)` and their pushforwards,
//!   z-measures and multiple z-measures, irreducible dimensions, branching
//!   multiplicities, consistency/coherency checks;
//! * [`thoma`] — the generalized Thoma set and the kernel expressing harmonic
//!   functions through extended Schur functions;
//! * [`characters`] — Murnaghan–Nakayama for `S(n)` and the Frobenius-type
//!   character formula for `G ~ S(n)`;
//! * [`sampler`] — seeded random generation: Ewens growth sampling,
//!   multiple Poisson–Dirichlet sampling and gamma lifting.
//!
//! All measure-level computations run either in an exact backend (Gaussian
//! rationals over `BigInt`) or in `f64`, chosen per computation; see
//! [`scalar::Scalar`].

pub mod characters;
pub mod error;
pub mod group;
pub mod measures;
pub mod multipartition;
pub mod sampler;
pub mod scalar;
pub mod thoma;
pub mod wreath;

pub use error::{Error, Result};
pub use group::FiniteGroup;
pub use multipartition::{MultiPartition, YoungDiagram};
pub use scalar::{Backend, Scalar};
pub use wreath::WreathElement;

/// Outcome of a defect-style check: the worst absolute deviation found,
/// where it occurred, and whether every deviation was exactly zero
/// (meaningful in the exact backend).
#[derive(Debug, Clone)]
pub struct DefectReport {
    pub max_abs: f64,
    pub location: Option<String>,
    pub exact_zero: bool,
    pub checked: usize,
}

impl DefectReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.exact_zero || self.max_abs <= tol
    }
}

impl std::fmt::Display for DefectReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "max defect {:.3e} over {} checks{}{}",
            self.max_abs,
            self.checked,
            if self.exact_zero { " (exact zero)" } else { "" },
            match &self.location {
                Some(loc) => format!(", worst at {loc}"),
                None => String::new(),
            }
        )
    }
}
