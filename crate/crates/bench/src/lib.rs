//! Benchmark inputs, built once per benchmark from the default seed.

use gerbe_core::exactalg::IntMatrix;
use gerbe_core::fixtures::load_fixture;
use gerbe_core::prequant::Poly;
use gerbe_core::random::{closed_cochain, int_matrix, poly, rng, DEFAULT_SEED};
use gerbe_core::simplicial::{Cochain, Complex};

pub fn fixture(name: &str) -> Complex {
    load_fixture(name).expect("bundled fixture")
}

/// A seeded closed cochain on a fixture.
pub fn closed(name: &str, degree: usize) -> (Complex, Cochain) {
    let k = fixture(name);
    let w = closed_cochain(&mut rng(DEFAULT_SEED), &k, degree);
    (k, w)
}

pub fn square_matrix(n: usize) -> IntMatrix {
    int_matrix(&mut rng(DEFAULT_SEED ^ n as u64), n, n, 9)
}

pub fn poly_pair(degree: u32) -> (Poly, Poly) {
    let mut r = rng(DEFAULT_SEED);
    (poly(&mut r, degree), poly(&mut r, degree))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inputs_are_valid() {
        let (_, w) = closed("T2", 2);
        assert!(w.is_cocycle());
        assert_eq!(square_matrix(5).rows(), 5);
        let (f, g) = poly_pair(3);
        assert!(!f.has_tau() && !g.has_tau());
    }
}
