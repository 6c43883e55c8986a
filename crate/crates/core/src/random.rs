//! Seeded generators for property tests and the verify suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cohomology::cohomology_group;
use crate::exactalg::{IntMatrix, Integer, Rational, Ring};
use crate::prequant::Poly;
use crate::simplicial::{Cochain, Coefficients, Complex};

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// p/q with |p| ≤ num_bound and 1 ≤ q ≤ den_bound.
pub fn small_rational(rng: &mut impl Rng, num_bound: i64, den_bound: i64) -> Rational {
    let p = rng.gen_range(-num_bound..=num_bound);
    let q = rng.gen_range(1..=den_bound);
    Rational::new(p.into(), q.into())
}

/// δ of a random (n−1)-cochain plus a random rational combination of
/// cohomology generators.
pub fn closed_cochain(rng: &mut impl Rng, k: &Complex, degree: usize) -> Cochain {
    let mut c = if degree == 0 {
        Cochain::zero(k, 0, Coefficients::Rational)
    } else {
        let values: Vec<Rational> = (0..k.count(degree - 1)).map(|_| small_rational(rng, 5, 4)).collect();
        Cochain::from_scalars(k, degree - 1, Coefficients::Rational, values)
            .expect("one value per simplex")
            .coboundary()
    };
    for g in cohomology_group(k, degree, Ring::Rationals).free_generators {
        c = c.add(&g.scale(&small_rational(rng, 7, 5)));
    }
    c
}

/// A rows × cols integer matrix with entries in [−bound, bound].
pub fn int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, Integer::from(rng.gen_range(-bound..=bound)));
        }
    }
    m
}

/// A matrix of random shape up to max × max.
pub fn int_matrix_up_to(rng: &mut impl Rng, max: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max);
    let cols = rng.gen_range(1..=max);
    int_matrix(rng, rows, cols, bound)
}

/// A τ-free polynomial of total degree ≤ `degree`.
pub fn poly(rng: &mut impl Rng, degree: u32) -> Poly {
    let mut terms = Vec::new();
    for dx in 0..=degree {
        for dy in 0..=degree - dx {
            if rng.gen_bool(0.6) {
                terms.push(((dx, dy, 0), small_rational(rng, 6, 3)));
            }
        }
    }
    Poly::from_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::load_fixture;

    #[test]
    fn closed_cochains_are_closed_and_reproducible() {
        let k = load_fixture("T2").unwrap();
        let a = closed_cochain(&mut rng(7), &k, 2);
        let b = closed_cochain(&mut rng(7), &k, 2);
        assert_eq!(a, b);
        assert!(a.is_cocycle());
        assert!(closed_cochain(&mut rng(8), &k, 1).is_cocycle());
    }

    #[test]
    fn polys_are_tau_free_and_bounded() {
        let mut r = rng(3);
        for _ in 0..20 {
            let p = poly(&mut r, 4);
            assert!(!p.has_tau());
            assert!(p.degree().map_or(true, |d| d <= 4));
        }
    }
}
