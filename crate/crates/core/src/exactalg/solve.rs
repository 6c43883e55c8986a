use num_traits::{One, Zero};

use super::matrix::{common_denominator, IntMatrix, Integer, RatMatrix, Rational};
use super::smith::{smith_normal_form, SmithForm};
use crate::error::{GerbeError, Result};

/// Coefficient ring of a linear problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    Rationals,
}

/// Reduced row echelon factorisation `T·A = R` over ℚ.
///
/// Built once per matrix and reused for many right-hand sides.
#[derive(Clone, Debug)]
pub struct RationalSolver {
    transform: RatMatrix,
    rref: RatMatrix,
    pivots: Vec<usize>,
}

impl RationalSolver {
    pub fn new(a: &RatMatrix) -> Self {
        let m = a.rows();
        let n = a.cols();
        let mut r = a.clone();
        let mut t = RatMatrix::identity(m);
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == m {
                break;
            }
            let Some(p) = (row..m).find(|&i| !r.get(i, col).is_zero()) else {
                continue;
            };
            r.swap_rows(p, row);
            t.swap_rows(p, row);
            let inv = r.get(row, col).recip();
            if !inv.is_one() {
                scale_row(&mut r, row, &inv);
                scale_row(&mut t, row, &inv);
            }
            for i in 0..m {
                if i == row || r.get(i, col).is_zero() {
                    continue;
                }
                let f = r.get(i, col).clone();
                r.row_axpy(i, row, &f);
                t.row_axpy(i, row, &f);
            }
            pivots.push(col);
            row += 1;
        }
        RationalSolver {
            transform: t,
            rref: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> usize {
        self.rref.rows()
    }

    pub fn cols(&self) -> usize {
        self.rref.cols()
    }

    /// Some `x` with `A·x = b`; free variables are set to zero.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows(), "rhs length mismatch");
        let c = self.transform.mul_vec(b);
        let r = self.rank();
        if c[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols()];
        for (i, &p) in self.pivots.iter().enumerate() {
            x[p] = c[i].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let n = self.cols();
        let mut is_pivot = vec![false; n];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..n)
            .filter(|&j| !is_pivot[j])
            .map(|free| {
                let mut v = vec![Rational::zero(); n];
                v[free] = Rational::one();
                for (i, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.rref.get(i, free).clone();
                }
                v
            })
            .collect()
    }

    /// Rows spanning the left kernel `{y : yᵀA = 0}`.
    pub fn left_kernel_basis(&self) -> Vec<Vec<Rational>> {
        (self.rank()..self.rows())
            .map(|i| self.transform.row(i).to_vec())
            .collect()
    }
}

fn scale_row(m: &mut RatMatrix, i: usize, f: &Rational) {
    for j in 0..m.cols() {
        let x = m.get(i, j);
        if !x.is_zero() {
            let v = x * f;
            m.set(i, j, v);
        }
    }
}

/// Solves `A·x = b` over `ring`.
///
/// Over ℤ every entry of `A` and `b` must be integral; a `None` is then a
/// certificate (via the Smith form) that `b` is outside the image.
pub fn solve_linear(a: &RatMatrix, b: &[Rational], ring: Ring) -> Result<Option<Vec<Rational>>> {
    if b.len() != a.rows() {
        return Err(GerbeError::MalformedInput(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.len(),
            a.rows()
        )));
    }
    match ring {
        Ring::Rationals => Ok(RationalSolver::new(a).solve(b)),
        Ring::Integers => {
            let ai = a.to_integer().ok_or_else(|| {
                GerbeError::MalformedInput("integral solve with non-integral matrix".into())
            })?;
            if b.iter().any(|x| !x.is_integer()) {
                return Ok(None);
            }
            let bi: Vec<Integer> = b.iter().map(|x| x.to_integer()).collect();
            Ok(smith_normal_form(&ai)
                .solve_integer(&bi)
                .map(|x| x.into_iter().map(Rational::from_integer).collect()))
        }
    }
}

/// Kernel and image bases of `A` over `ring`.
pub fn kernel_image(a: &RatMatrix, ring: Ring) -> Result<(Vec<Vec<Rational>>, Vec<Vec<Rational>>)> {
    match ring {
        Ring::Rationals => {
            let s = RationalSolver::new(a);
            let image = s.pivots().iter().map(|&j| a.column(j)).collect();
            Ok((s.kernel_basis(), image))
        }
        Ring::Integers => {
            let ai = a.to_integer().ok_or_else(|| {
                GerbeError::MalformedInput("integral kernel of non-integral matrix".into())
            })?;
            let s = smith_normal_form(&ai);
            let lift = |v: Vec<Integer>| v.into_iter().map(Rational::from_integer).collect();
            Ok((
                s.kernel_basis().into_iter().map(lift).collect(),
                s.image_basis().into_iter().map(lift).collect(),
            ))
        }
    }
}

/// Solution of the mixed system `A·x + z = b` with `x` rational and `z`
/// integral.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedSolution {
    pub rational: Vec<Rational>,
    pub integral: Vec<Integer>,
}

/// Mixed ℚ/ℤ solve through the left kernel of `A`.
///
/// With `P` an integral basis of the left kernel, a solution exists iff
/// `P·z = P·b` has an integral solution `z`; `x` is then recovered from
/// `A·x = b − z` over ℚ.
pub fn solve_mixed(a: &RatMatrix, b: &[Rational]) -> Option<MixedSolution> {
    let solver = RationalSolver::new(a);
    let left: Vec<Vec<Integer>> = solver
        .left_kernel_basis()
        .into_iter()
        .map(|row| {
            let d = common_denominator(row.iter());
            row.into_iter()
                .map(|x| (x * Rational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    let p = IntMatrix::from_rows_with_cols(left, a.rows());
    let pb = p.to_rational().mul_vec(b);
    if pb.iter().any(|x| !x.is_integer()) {
        return None;
    }
    let pb: Vec<Integer> = pb.into_iter().map(|x| x.to_integer()).collect();
    let z = smith_normal_form(&p).solve_integer(&pb)?;
    let rhs: Vec<Rational> = b
        .iter()
        .zip(&z)
        .map(|(bi, zi)| bi - Rational::from_integer(zi.clone()))
        .collect();
    let x = solver.solve(&rhs)?;
    Some(MixedSolution {
        rational: x,
        integral: z,
    })
}

/// Convenience wrapper bundling both factorisations of an integer matrix.
#[derive(Clone, Debug)]
pub struct IntegerSystem {
    pub matrix: IntMatrix,
    pub smith: SmithForm,
    pub rational: RationalSolver,
}

impl IntegerSystem {
    pub fn new(matrix: IntMatrix) -> Self {
        let smith = smith_normal_form(&matrix);
        let rational = RationalSolver::new(&matrix.to_rational());
        IntegerSystem {
            matrix,
            smith,
            rational,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::matrix::{int_rat, rat};

    fn ratm(rows: &[Vec<i64>]) -> RatMatrix {
        IntMatrix::from_i64(rows).unwrap().to_rational()
    }

    #[test]
    fn parity_obstruction() {
        let a = ratm(&[vec![2]]);
        assert_eq!(solve_linear(&a, &[int_rat(3)], Ring::Integers).unwrap(), None);
        assert_eq!(
            solve_linear(&a, &[int_rat(3)], Ring::Rationals).unwrap(),
            Some(vec![rat(3, 2)])
        );
    }

    #[test]
    fn circle_coboundary_solve() {
        // δ₀ of the 3-cycle with edges [0,1],[0,2],[1,2] in lexicographic order.
        let d0 = ratm(&[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]);
        // edge values (δc)([0,1])=1, ([0,2])=2, ([1,2])=1
        let b = vec![int_rat(1), int_rat(2), int_rat(1)];
        for ring in [Ring::Integers, Ring::Rationals] {
            let x = solve_linear(&d0, &b, ring).unwrap().unwrap();
            assert_eq!(d0.mul_vec(&x), b);
            // any translate of (0,1,2)
            assert_eq!(&x[1] - &x[0], int_rat(1));
            assert_eq!(&x[2] - &x[0], int_rat(2));
        }
        // inconsistent right-hand side
        let bad = vec![int_rat(1), int_rat(1), int_rat(1)];
        assert_eq!(solve_linear(&d0, &bad, Ring::Rationals).unwrap(), None);
    }

    #[test]
    fn kernel_image_examples() {
        let (k, im) = kernel_image(&ratm(&[vec![1, 1]]), Ring::Rationals).unwrap();
        assert_eq!(k, vec![vec![int_rat(-1), int_rat(1)]]);
        assert_eq!(im, vec![vec![int_rat(1)]]);
        let (k, im) = kernel_image(&RatMatrix::zeros(2, 2), Ring::Integers).unwrap();
        assert_eq!(k.len(), 2);
        assert!(im.is_empty());
    }

    #[test]
    fn mixed_solve_matches_smith_route() {
        // A = [[2],[2]]: x ∈ ℚ, z ∈ ℤ² with 2x + z = b  ⇔  b₀ − b₁ ∈ ℤ.
        let a = ratm(&[vec![2], vec![2]]);
        let ok = solve_mixed(&a, &[rat(1, 3), rat(4, 3)]).unwrap();
        let lhs: Vec<Rational> = a
            .mul_vec(&ok.rational)
            .into_iter()
            .zip(&ok.integral)
            .map(|(x, z)| x + Rational::from_integer(z.clone()))
            .collect();
        assert_eq!(lhs, vec![rat(1, 3), rat(4, 3)]);
        assert!(solve_mixed(&a, &[rat(1, 3), rat(1, 2)]).is_none());
        let s = smith_normal_form(&a.to_integer().unwrap());
        assert!(s.solve_mod_integers(&[rat(1, 3), rat(4, 3)]).is_some());
        assert!(s.solve_mod_integers(&[rat(1, 3), rat(1, 2)]).is_none());
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = ratm(&[vec![1, 2], vec![2, 4], vec![0, 1]]);
        let s = RationalSolver::new(&a);
        let lk = s.left_kernel_basis();
        assert_eq!(lk.len(), 1);
        let at = a.transpose();
        assert!(at.mul_vec(&lk[0]).iter().all(Zero::is_zero));
    }
}
