//! Split/division classification of quaternion algebras over `Q` and `Q(i)`
//! and of prime-degree symbol algebras over cyclotomic fields `Q(zeta_q)`.
//!
//! The global verdict is always decided by local symbols: Hilbert symbols
//! over `Q`, quadratic Hasse invariants at the Gaussian primes of `Q(i)`,
//! and tame norm-residue symbols at the unramified primes of `Q(zeta_q)`.
//! The [`oracle`] module provides independent brute-force certificates
//! (conic points, norm-equation witnesses, isotropic vectors, relative norms
//! in Kummer extensions) used to cross-check those verdicts.

pub mod classify;
mod error;
pub mod gaussian;
pub mod local;
pub mod oracle;
pub mod rational;

pub use classify::{
    brown_parry_alpha_set, classify, classify_quaternion_q, classify_quaternion_qi, classify_symbol, fast_path,
    AlgebraSpec, FastPath, LocalEvidence, Status, Verdict,
};
pub use error::{Error, Result};
pub use gaussian::{GaussianInt, GaussianPrime, PrimeKind};
pub use local::{Place, QTriviality, QuadSymbol};
pub use oracle::{CycloElt, CycloPoly, Field, SearchBound};
pub use rational::FactoredInt;
