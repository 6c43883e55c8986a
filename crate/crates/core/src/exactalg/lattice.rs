use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{common_denominator, frac, Integer, RatMatrix, Rational};
use super::solve::RationalSolver;
use crate::error::{GerbeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// Finitely generated subgroup of ℚˡ.
    FinitelyGenerated,
    /// All of ℚˡ.
    Divisible,
    /// ℤˡ with the standard basis.
    IntegralStandard,
}

impl LatticeKind {
    pub fn tag(self) -> &'static str {
        match self {
            LatticeKind::FinitelyGenerated => "fg",
            LatticeKind::Divisible => "divisible",
            LatticeKind::IntegralStandard => "Zl",
        }
    }
}

/// A subgroup Λ ⊂ ℚˡ that is either finitely generated or all of ℚˡ.
///
/// Finitely generated lattices are kept as the rows of their Hermite normal
/// form, so two lattices are equal iff their stored bases are equal.
#[derive(Clone)]
pub struct Lattice {
    dim: usize,
    basis: Option<Vec<Vec<Rational>>>,
    // rows: Hermite basis followed by unit vectors completing it to a basis of ℚˡ
    frame: RatMatrix,
    frame_inv: RatMatrix,
}

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.basis == other.basis
    }
}

impl Eq for Lattice {}

impl fmt::Debug for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.basis {
            None => write!(f, "Lattice(Q^{})", self.dim),
            Some(b) => {
                let rows: Vec<String> = b
                    .iter()
                    .map(|r| {
                        let xs: Vec<String> = r.iter().map(ToString::to_string).collect();
                        format!("({})", xs.join(", "))
                    })
                    .collect();
                write!(f, "Lattice<{}>[{}]", self.dim, rows.join(", "))
            }
        }
    }
}

impl Lattice {
    /// The subgroup of ℚˡ generated by `generators`.
    pub fn generated(dim: usize, generators: &[Vec<Rational>]) -> Result<Self> {
        if generators.iter().any(|g| g.len() != dim) {
            return Err(GerbeError::MalformedInput(format!(
                "lattice generator length differs from ambient dimension {dim}"
            )));
        }
        let basis = rational_hermite_basis(dim, generators);
        Ok(Self::from_basis(dim, Some(basis)))
    }

    /// ℤˡ.
    pub fn integral(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::from_basis(dim, Some(basis))
    }

    /// ℚˡ itself.
    pub fn divisible(dim: usize) -> Self {
        Self::from_basis(dim, None)
    }

    /// The zero subgroup.
    pub fn zero(dim: usize) -> Self {
        Self::from_basis(dim, Some(Vec::new()))
    }

    fn from_basis(dim: usize, basis: Option<Vec<Vec<Rational>>>) -> Self {
        let frame_rows: Vec<Vec<Rational>> = match &basis {
            None => unit_rows(dim, 0..dim),
            Some(b) => {
                let mut pivots = vec![false; dim];
                for row in b {
                    if let Some(p) = row.iter().position(|x| !x.is_zero()) {
                        pivots[p] = true;
                    }
                }
                let mut rows = b.clone();
                rows.extend(unit_rows(dim, (0..dim).filter(|&j| !pivots[j])));
                rows
            }
        };
        let frame = RatMatrix::from_rows_with_cols(frame_rows, dim);
        let frame_inv = invert(&frame);
        Lattice {
            dim,
            basis,
            frame,
            frame_inv,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> LatticeKind {
        match &self.basis {
            None => LatticeKind::Divisible,
            Some(_) if *self == Lattice::integral(self.dim) => LatticeKind::IntegralStandard,
            Some(_) => LatticeKind::FinitelyGenerated,
        }
    }

    pub fn is_divisible(&self) -> bool {
        self.basis.is_none()
    }

    /// Hermite basis rows; `None` for a divisible lattice.
    pub fn basis(&self) -> Option<&[Vec<Rational>]> {
        self.basis.as_deref()
    }

    /// Rank of a finitely generated lattice, `dim` for ℚˡ.
    pub fn rank(&self) -> usize {
        self.basis.as_ref().map_or(self.dim, Vec::len)
    }

    /// Coordinates of `v` in the frame (Hermite basis, then completing unit
    /// vectors).
    pub fn frame_coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        self.frame_inv.transpose().mul_vec(v)
    }

    pub fn from_frame_coordinates(&self, c: &[Rational]) -> Vec<Rational> {
        self.frame.transpose().mul_vec(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.lattice_coordinates(v).is_some()
    }

    /// Integer coordinates of `v` in the Hermite basis when `v ∈ Λ` and Λ is
    /// finitely generated. For ℚˡ every vector is a member and the rational
    /// coordinates are returned as-is, so this is `None` only on non-members.
    pub fn lattice_coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if self.is_divisible() {
            return Some(v.to_vec());
        }
        let c = self.frame_coordinates(v);
        let r = self.rank();
        if c[..r].iter().all(|x| x.is_integer()) && c[r..].iter().all(Zero::is_zero) {
            Some(c[..r].to_vec())
        } else {
            None
        }
    }

    /// The vector with the given lattice coordinates.
    pub fn from_lattice_coordinates(&self, c: &[Rational]) -> Vec<Rational> {
        match &self.basis {
            None => c.to_vec(),
            Some(b) => {
                let mut v = vec![Rational::zero(); self.dim];
                for (row, ci) in b.iter().zip(c) {
                    for (vj, bj) in v.iter_mut().zip(row) {
                        *vj += bj * ci;
                    }
                }
                v
            }
        }
    }

    /// Canonical representative of `v + Λ`.
    pub fn canonical_rep(&self, v: &[Rational]) -> Vec<Rational> {
        if self.is_divisible() {
            return vec![Rational::zero(); self.dim];
        }
        let mut c = self.frame_coordinates(v);
        for x in c.iter_mut().take(self.rank()) {
            *x = frac(x);
        }
        self.from_frame_coordinates(&c)
    }

    /// Image of Λ under the scalar inclusion ℚ ⊂ ℚˡ when `dim == 1`, as a
    /// single non-negative generator (zero for the zero lattice). `None` for
    /// ℚ itself.
    pub fn scalar_generator(&self) -> Option<Rational> {
        assert_eq!(self.dim, 1, "scalar generator of a vector lattice");
        self.basis
            .as_ref()
            .map(|b| b.first().map_or(Rational::zero(), |r| r[0].clone()))
    }
}

fn unit_rows(dim: usize, which: impl Iterator<Item = usize>) -> Vec<Vec<Rational>> {
    which
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

fn invert(m: &RatMatrix) -> RatMatrix {
    let n = m.rows();
    let solver = RationalSolver::new(m);
    let cols: Vec<Vec<Rational>> = (0..n)
        .map(|j| {
            let e: Vec<Rational> = (0..n)
                .map(|i| if i == j { Rational::one() } else { Rational::zero() })
                .collect();
            solver.solve(&e).expect("lattice frame is invertible")
        })
        .collect();
    RatMatrix::from_columns(&cols, n)
}

/// Row Hermite normal form of an integer matrix, zero rows dropped.
pub fn hermite_normal_form(rows: &[Vec<Integer>], cols: usize) -> Vec<Vec<Integer>> {
    let mut a: Vec<Vec<Integer>> = rows.to_vec();
    let mut pr = 0;
    for col in 0..cols {
        loop {
            let candidates: Vec<usize> = (pr..a.len()).filter(|&i| !a[i][col].is_zero()).collect();
            if candidates.is_empty() {
                break;
            }
            let p = *candidates
                .iter()
                .min_by(|&&i, &&j| a[i][col].abs().cmp(&a[j][col].abs()).then(i.cmp(&j)))
                .expect("nonempty");
            a.swap(p, pr);
            let mut done = true;
            for i in pr + 1..a.len() {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[pr][col]);
                sub_row(&mut a, i, pr, &q);
                done &= a[i][col].is_zero();
            }
            if done {
                break;
            }
        }
        if pr == a.len() || a[pr][col].is_zero() {
            continue;
        }
        if a[pr][col].is_negative() {
            for x in a[pr].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..pr {
            let q = a[i][col].div_floor(&a[pr][col]);
            sub_row(&mut a, i, pr, &q);
        }
        pr += 1;
    }
    a.truncate(pr);
    a
}

fn sub_row(a: &mut [Vec<Integer>], target: usize, source: usize, q: &Integer) {
    if q.is_zero() {
        return;
    }
    let src = a[source].clone();
    for (t, s) in a[target].iter_mut().zip(&src) {
        *t -= q * s;
    }
}

fn rational_hermite_basis(dim: usize, generators: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = common_denominator(generators.iter().flatten());
    let dr = Rational::from_integer(d.clone());
    let scaled: Vec<Vec<Integer>> = generators
        .iter()
        .map(|g| g.iter().map(|x| (x * &dr).to_integer()).collect())
        .collect();
    hermite_normal_form(&scaled, dim)
        .into_iter()
        .map(|row| row.into_iter().map(|x| Rational::new(x, d.clone())).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::{int_rat, rat};

    #[test]
    fn canonical_rep_examples() {
        let z = Lattice::integral(1);
        assert_eq!(z.canonical_rep(&[rat(7, 2)]), vec![rat(1, 2)]);
        let q = Lattice::divisible(2);
        assert_eq!(q.canonical_rep(&[rat(7, 2), rat(-9, 5)]), vec![int_rat(0), int_rat(0)]);
        let z2 = Lattice::integral(2);
        assert_eq!(
            z2.canonical_rep(&[rat(5, 3), rat(-1, 4)]),
            vec![rat(2, 3), rat(3, 4)]
        );
    }

    #[test]
    fn hermite_form_is_generator_order_independent() {
        let a = Lattice::generated(2, &[vec![int_rat(2), int_rat(1)], vec![int_rat(0), int_rat(3)]]).unwrap();
        let b = Lattice::generated(
            2,
            &[
                vec![int_rat(0), int_rat(3)],
                vec![int_rat(2), int_rat(4)],
                vec![int_rat(2), int_rat(1)],
            ],
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.kind(), LatticeKind::FinitelyGenerated);
        assert_eq!(
            Lattice::generated(2, &[vec![int_rat(1), int_rat(1)], vec![int_rat(0), int_rat(1)]])
                .unwrap()
                .kind(),
            LatticeKind::IntegralStandard
        );
    }

    #[test]
    fn dependent_generators_collapse() {
        let l = Lattice::generated(1, &[vec![rat(5, 3)], vec![rat(10, 3)], vec![rat(-5, 3)]]).unwrap();
        assert_eq!(l.rank(), 1);
        assert_eq!(l.scalar_generator(), Some(rat(5, 3)));
        assert!(l.contains(&[rat(-10, 1) / int_rat(3)]));
        assert!(!l.contains(&[rat(1, 3)]));
    }

    #[test]
    fn rank_deficient_lattice_keeps_free_directions() {
        // Λ = ℤ·(1, 1) in ℚ²
        let l = Lattice::generated(2, &[vec![int_rat(1), int_rat(1)]]).unwrap();
        let v = vec![rat(3, 2), rat(1, 2)];
        let r = l.canonical_rep(&v);
        let diff: Vec<Rational> = v.iter().zip(&r).map(|(a, b)| a - b).collect();
        assert!(l.contains(&diff));
        assert_eq!(l.canonical_rep(&r), r);
    }
}
