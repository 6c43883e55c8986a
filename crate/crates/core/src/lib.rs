//! Exact gerbe obstruction theory on finite simplicial complexes.

pub mod cech;
pub mod cohomology;
pub mod error;
pub mod exactalg;
pub mod fixtures;
pub mod gerbe_builder;
pub mod holonomy;
pub mod io;
pub mod prequant;
pub mod random;
pub mod reduction;
pub mod simplicial;
pub mod verify;

pub use error::{GerbeError, Result};
