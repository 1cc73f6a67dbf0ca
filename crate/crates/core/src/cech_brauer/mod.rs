//! Čech cohomology on finite sites, Brauer-type classes from gluing data, and the
//! two-layer twisted tower with its `d₂`, period and étale index.

pub mod cech;
pub mod hypercover;
pub mod presheaf;
pub mod site;
pub mod tower;

pub use cech::{
    cech_cohomology, cech_complex, cech_level, check_cocycle, coboundary, cocycle_from_gluing, period, torsion_lift, CechLevel,
    Cocycle2, Gluing, SecondCohomology,
};
pub use hypercover::{Edge, OneHypercover, Tetrahedron, Triangle};
pub use presheaf::AbPresheaf;
pub use site::FiniteSite;
pub use tower::{check_divisibility, d2_on_rank, eti_model, twisted_tower, Divisibility, TwistedTower};
