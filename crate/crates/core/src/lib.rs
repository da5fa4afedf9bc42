//! Exact computational algebra for graded nilpotent Lie algebras.
//!
//! The crate is organized around a handful of small, exact building blocks:
//!
//! - [`bigpoly`]: integer-coefficient polynomials (sparse multivariate and a
//!   dense univariate fast path), the length functional `L(p)` and the
//!   substitution used by grading collapse.
//! - [`linalg`]: exact rational matrices, reduced echelon forms, kernels and
//!   a fraction-free sparse elimination for the larger systems.
//! - [`liealg`]: Lie algebras given by rational structure constants, with
//!   the Jacobi checker, center and lower central series.
//! - [`grading`]: `Z_+^d`-gradings, associated polynomials and the
//!   length-preserving collapse down to a single-variable grading.
//! - [`family`]: the explicit family `n(n)` of 3-step nilpotent algebras,
//!   its canonical and fine gradings, and dimension formulas.
//! - [`derivations`]: the derivation algebra, the `gl(E)` lift, the Levi-type
//!   split and the triangularity/diagonal checks for the family.
//! - [`cohomology`]: Chevalley-Eilenberg cohomology of small algebras.
//! - [`verify`]: the big-integer inequality sweeps and induction checks, with
//!   machine-readable reports.
//!
//! Everything is computed over exact integers or rationals; no floating
//! point is used anywhere.

pub mod bigpoly;
pub mod cohomology;
pub mod derivations;
mod error;
pub mod family;
pub mod grading;
pub mod liealg;
pub mod linalg;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Capacity limits for sparse polynomial expansion.
///
/// Fine-grading expansions grow like `2^(#factors)`, so every operation that
/// can enlarge a sparse polynomial takes a limit and fails cleanly instead of
/// exhausting memory.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of stored sparse terms.
    pub max_terms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_terms: 1 << 24,
        }
    }
}

impl Limits {
    /// A limit read from the `GNL_MAX_TERMS` environment variable, falling
    /// back to the default when unset or unparsable.
    pub fn from_env() -> Self {
        match std::env::var("GNL_MAX_TERMS") {
            Ok(v) => v
                .parse::<usize>()
                .map(|max_terms| Limits { max_terms })
                .unwrap_or_default(),
            Err(_) => Limits::default(),
        }
    }
}
