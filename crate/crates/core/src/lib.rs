#![no_std]
//! Centers of universal enveloping algebras of nilpotent Lie algebras of
//! dimension at most six over fields of prime characteristic.
//!
//! The crate provides exact F_p arithmetic, sparse polynomials, a catalog of
//! the small nilpotent Lie algebras, PBW normal forms in the enveloping
//! algebra, and checks of the center and of the invariants of the adjoint
//! action on the symmetric algebra.

extern crate alloc;

pub mod catalog;
pub mod center;
pub mod enveloping;
pub mod error;
pub mod expr;
pub mod field;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod report;

pub use center::{PCenterFrame, VerifyOptions};
pub use enveloping::{Envelope, OrderingPolicy, PbwElement};
pub use error::{Error, Result};
pub use field::{FpElement, PrimeField};
pub use lie::{GVector, LieAlgebra, LieAlgebraSpec, ParamKind};
pub use linalg::{poly_matrix_rank, FpMatrix, PolyMatrix};
pub use monomial::Monomial;
pub use poly::Poly;
pub use report::{Claim, ClaimStatus, VerificationReport};
