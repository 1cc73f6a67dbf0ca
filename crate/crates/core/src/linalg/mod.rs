//! Exact integer linear algebra.

pub mod group;
pub mod lattice;
pub mod matrix;
pub mod normal_form;

pub use group::{AbHom, FgAbGroup, Invariants, Order, Subquotient};
pub use lattice::{congruence_kernel, kernel_basis, left_kernel, Lattice};
pub use matrix::Matrix;
pub use normal_form::{hermite, hermite_normal_form, smith, smith_normal_form, solve, Hermite, Smith, Solver};
