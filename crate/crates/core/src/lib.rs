//! Exact computations around the 2-power torsion of generic hyperelliptic
//! Jacobians: symplectic congruence quotients over ℤ/2ᵏ, symmetric-group
//! modules over 𝔽₂ and ℤ/4, pure-braid monodromy on the homology of the
//! double cover, and iterated square-root towers over ℚ.

pub mod braid;
pub mod congruence;
pub mod error;
pub mod linalg;
pub mod ring;
pub mod sd_rep;
pub mod symplectic;
pub mod tower;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use ring::{abelian_type_from_census, AbelianType, ModMatrix, ModScalar, OrderCensus};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Integer matrices.
pub type IntMatrix = Matrix<BigInt>;
/// Rational matrices.
pub type RatMatrix = Matrix<BigRational>;
