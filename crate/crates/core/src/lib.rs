//! Hypergeometric orthogonal polynomials of continuous (Hermite, Laguerre)
//! and discrete (Kravchuk, Meixner) variable: three-term recurrences, raising
//! and lowering relations, orthonormal functions including the Wigner
//! d-functions, ladder-operator algebras, and the discrete-to-continuous
//! limits, all validated against an exact arbitrary-precision rational
//! oracle.
//!
//! The crate runs every polynomial construction in two numeric modes behind
//! one generic interface ([`scalar::Scalar`]): `f64`, and exact rationals
//! when the family parameters are rational. Contracts that the theory makes
//! exact (route equalities, defining-equation residuals, Gram diagonality on
//! lattice supports) are asserted *exactly* in rational mode; float results
//! are measured against the rational ones ([`certify`]).

pub mod certify;
pub mod dd;
pub mod error;
pub mod family;
pub mod gram;
pub mod ladder;
pub mod limits;
pub mod normalized;
pub mod poly;
pub mod quadrature;
pub mod report;
pub mod scalar;
pub mod sequence;
pub mod special;
pub mod wigner;

pub use error::{Error, Result};
pub use family::{Family, FamilyName, Kind, Params, Recurrence, Support};
pub use poly::Poly;
pub use scalar::{NumberArg, Rational, Scalar};
pub use sequence::{build_by_raising, build_by_recurrence, equation_residual, lower, PolySeq};
