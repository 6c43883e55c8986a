use num_traits::{One, Zero};

use crate::exactalg::{IntMatrix, Integer, Rational, Ring};
use crate::simplicial::{Cochain, Coefficients, Complex};

/// Hᵏ(K; R) for R = ℤ or ℚ, with cocycle representatives.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub ring: Ring,
    pub free_rank: usize,
    /// Invariant factors > 1, in divisibility order.
    pub torsion: Vec<Integer>,
    pub free_generators: Vec<Cochain>,
    /// Torsion generators with their annihilating factor.
    pub torsion_generators: Vec<(Cochain, Integer)>,
}

impl CohomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// All generators, free ones first.
    pub fn generators(&self) -> Vec<Cochain> {
        self.free_generators
            .iter()
            .cloned()
            .chain(self.torsion_generators.iter().map(|(c, _)| c.clone()))
            .collect()
    }
}

/// ker δ_k / im δ_{k−1}.
pub fn cohomology_group(k: &Complex, degree: usize, ring: Ring) -> CohomologyGroup {
    match ring {
        Ring::Integers => integral(k, degree),
        Ring::Rationals => rational(k, degree),
    }
}

fn integer_cochain(k: &Complex, degree: usize, v: Vec<Integer>) -> Cochain {
    let values = v.into_iter().map(Rational::from_integer).collect();
    Cochain::from_flat(k, degree, Coefficients::Integer, values).expect("integral values")
}

fn integral(k: &Complex, degree: usize) -> CohomologyGroup {
    let n = k.count(degree);
    let from = k.coboundary_from(degree);
    let into = k.coboundary_into(degree);
    let r = from.smith.rank();
    // kernel basis of δ_k: columns r.. of V
    let kernel: Vec<Vec<Integer>> = from.smith.kernel_basis();
    let m = kernel.len();
    // coordinates of im δ_{k−1} in that basis: rows r.. of V⁻¹·δ_{k−1}
    let coords = from.smith.v_inv.mul(&into.matrix);
    let mut mat = IntMatrix::zeros(m, coords.cols());
    for i in 0..m {
        for j in 0..coords.cols() {
            mat.set(i, j, coords.get(r + i, j).clone());
        }
    }
    let s = crate::exactalg::smith_normal_form(&mat);
    let combine = |col: Vec<Integer>| -> Vec<Integer> {
        let mut out = vec![Integer::zero(); n];
        for (c, b) in col.iter().zip(&kernel) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    };
    let mut torsion = Vec::new();
    let mut torsion_generators = Vec::new();
    let mut free_generators = Vec::new();
    for j in 0..m {
        let g = combine(s.u_inv.column(j));
        if j < s.rank() {
            let d = s.factors[j].clone();
            if d > Integer::one() {
                torsion.push(d.clone());
                torsion_generators.push((integer_cochain(k, degree, g), d));
            }
        } else {
            free_generators.push(integer_cochain(k, degree, g));
        }
    }
    CohomologyGroup {
        degree,
        ring: Ring::Integers,
        free_rank: free_generators.len(),
        torsion,
        free_generators,
        torsion_generators,
    }
}

fn rational(k: &Complex, degree: usize) -> CohomologyGroup {
    let from = k.coboundary_from(degree);
    let into = k.coboundary_into(degree);
    let kernel = from.rational.kernel_basis();
    let mut span = EchelonBasis::default();
    for j in 0..into.matrix.cols() {
        span.insert(into.matrix.column(j).into_iter().map(Rational::from_integer).collect());
    }
    let target = kernel.len() - span.rank();
    // greedy: keep kernel vectors independent of the image and of earlier picks
    let mut free_generators = Vec::new();
    for v in kernel {
        if free_generators.len() == target {
            break;
        }
        if span.insert(v.clone()) {
            free_generators.push(Cochain::from_flat(k, degree, Coefficients::Rational, v).expect("rational values"));
        }
    }
    CohomologyGroup {
        degree,
        ring: Ring::Rationals,
        free_rank: free_generators.len(),
        torsion: Vec::new(),
        free_generators,
        torsion_generators: Vec::new(),
    }
}

/// Incrementally built row echelon basis of a subspace of ℚⁿ.
#[derive(Clone, Debug, Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis.
    pub(crate) fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether it enlarged the span.
    pub(crate) fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // keep earlier rows reduced at the new pivot
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// Betti numbers b₀ … b_dim over ℚ.
pub fn betti_numbers(k: &Complex) -> Vec<usize> {
    (0..=k.dim()).map(|d| rational(k, d).free_rank).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::build_complex;

    #[test]
    fn sphere_top_degree() {
        let k = build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        let h2 = cohomology_group(&k, 2, Ring::Integers);
        assert_eq!(h2.free_rank, 1);
        assert!(h2.torsion.is_empty());
        assert!(h2.free_generators[0].is_cocycle());
        assert_eq!(cohomology_group(&k, 1, Ring::Integers).free_rank, 0);
        assert_eq!(cohomology_group(&k, 0, Ring::Integers).free_rank, 1);
        assert!(cohomology_group(&k, 3, Ring::Integers).is_trivial());
        assert_eq!(betti_numbers(&k), vec![1, 0, 1]);
    }

    #[test]
    fn circle_degree_one() {
        let k = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        for ring in [Ring::Integers, Ring::Rationals] {
            let h1 = cohomology_group(&k, 1, ring);
            assert_eq!(h1.free_rank, 1);
            assert!(h1.free_generators[0].is_cocycle());
        }
    }
}
