//! Spectral sequences over finitely generated abelian groups.
//!
//! Exact integer linear algebra, filtered complexes and exact couples,
//! cosimplicial abelian and finite groups, the comparison of the skeletal and
//! truncation spectral sequences of a cosimplicial chain complex, and a
//! finite-site Čech model of a twisted two-layer descent tower.

pub mod cech_brauer;
pub mod complexes;
pub mod cosimplicial;
pub mod error;
pub mod exact_couple;
pub mod generate;
pub mod ss_compare;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{AbHom, FgAbGroup, Invariants, Lattice, Matrix, Order, Subquotient};
pub use scalar::Scalar;

/// The integer type used throughout.
pub type Int = num_bigint::BigInt;
pub type IntMatrix = Matrix<Int>;
