//! Exact linear algebra over ℤ and ℚ.
//!
//! Everything downstream (cohomology, the zig-zag, holonomy, reduction) turns
//! into calls to the routines here: Smith normal form for integral questions,
//! reduced row echelon form for rational ones, and Hermite bases for lattices
//! Λ ⊂ ℚˡ and quotient arithmetic in ℚˡ/Λ.

mod lattice;
mod matrix;
mod smith;
mod solve;

pub use lattice::{hermite_normal_form, Lattice, LatticeKind};
pub use matrix::{
    common_denominator, frac, int_rat, rat, rational_gcd, IntMatrix, Integer, Matrix, RatMatrix,
    Rational,
};
pub use smith::{smith_normal_form, SmithForm};
pub use solve::{kernel_image, solve_linear, solve_mixed, IntegerSystem, MixedSolution, RationalSolver, Ring};

/// Canonical coset representative of `v` in ℚˡ/Λ.
pub fn canonical_rep(v: &[Rational], lattice: &Lattice) -> Vec<Rational> {
    lattice.canonical_rep(v)
}
