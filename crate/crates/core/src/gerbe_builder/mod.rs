//! The zig-zag from closed cochains to classifying cocycles, integrality and
//! the Kostant–Weil transition data.

mod integrality;
mod line_bundle;
mod zigzag;

pub use integrality::{
    bockstein_obstruction, bockstein_of_reduction, integrality_test, period_witness, reduce_mod_lattice,
    reduction_sequence, tower_connecting, IntegralityCertificate, IntegralityVerdict,
};
pub use line_bundle::{kostant_weil, LineBundleData};
pub use zigzag::{
    zigzag_gerbe, zigzag_gerbe_with_cover, zigzag_two_gerbe, zigzag_two_gerbe_with_cover, GerbeData, TwoGerbeData,
};

pub(crate) use zigzag::as_rational;
