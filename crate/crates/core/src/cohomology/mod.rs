//! Simplicial cohomology, class arithmetic, periods and connecting maps.

mod classes;
mod group;

pub use classes::{
    class_equal, class_order, connecting_from_lift, connecting_hom, is_coboundary, periods, CoefficientSES,
    CohomologyClass,
};
pub use group::{betti_numbers, cohomology_group, CohomologyGroup};

