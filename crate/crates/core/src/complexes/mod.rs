//! Cochain complexes, double complexes, filtrations and pages.

pub mod cochain;
pub mod double;
pub mod filtered;
pub mod page;

pub use cochain::{cone, ChainMap, CochainComplex};
pub use double::{Block, DoubleComplex};
pub use filtered::{filtration_coords, skeletal_filtration, tower_coords, truncation_filtration, FilteredComplex};
pub use page::{pages_agree, Page};
