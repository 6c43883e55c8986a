//! Simplicial complexes, cochains, the star cover and product complexes.

mod chain;
mod cochain;
mod complex;
mod local;
mod product;

pub use chain::Chain;
pub use cochain::{coboundary, indicator, Cochain, Coefficients};
pub use complex::{build_complex, Complex, Simplex, SimplicialComplex};
pub use local::{local_model, restrict, LocalModel, StarCover};
pub use product::{product_complex, pullback_cochain, ProductComplex, SimplicialMap};
