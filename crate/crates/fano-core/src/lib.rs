//! Exact-arithmetic toolkit for certifying the automorphism, lattice, and
//! smoothness claims about genus-2 curve configurations on the Fano surfaces
//! of smooth cubic threefolds.

pub mod exact;
pub mod families;
pub mod gamma;
pub mod group;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod rng;
pub mod surface;

pub use exact::{Cyclo, Field, Rat};
pub use poly::{parse_poly, MPoly};
