//! Cosimplicial abelian groups, cosimplicial finite groups and the replacement `Π`.

pub mod abelian;
pub mod cobar;
pub mod fingroup;
pub mod replacement;

pub use abelian::{CosimplicialAbGroup, CosimplicialMap};
pub use cobar::{circle_cochains, cobar, GroupModule};
pub use fingroup::{CosimplicialFinGroup, FiniteGroup, PointedOrbits};
pub use replacement::{check_pi_quasi_iso, cosimplicial_replacement, nerve_chains, NerveSimplex, PiVerdict, Replacement};
