//! Smith normal form over ℤ with full transform tracking.
//!
//! `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
//! `d₁ | d₂ | … | d_r`, all `dᵢ > 0`. Both transforms are kept together with
//! their inverses, which lets the same factorisation answer integral solves,
//! solves modulo ℤ, kernel bases and cokernel presentations.

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, Integer, Rational};

#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// The nonzero invariant factors, in divisibility order.
    pub factors: Vec<Integer>,
    rows: usize,
    cols: usize,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// The diagonal matrix `D`.
    pub fn d(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.rows, self.cols);
        for (i, f) in self.factors.iter().enumerate() {
            d.set(i, i, f.clone());
        }
        d
    }

    /// Some `x ∈ ℤⁿ` with `A·x = b`, or `None` when `b ∉ A·ℤⁿ`.
    pub fn solve_integer(&self, b: &[Integer]) -> Option<Vec<Integer>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let c = self.u.mul_vec(b);
        let r = self.rank();
        if c[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![Integer::zero(); self.cols];
        for i in 0..r {
            let (q, rem) = c[i].div_rem(&self.factors[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.v.mul_vec(&y))
    }

    /// Some `x ∈ ℚⁿ` with `A·x − b ∈ ℤᵐ`, or `None` when no such `x` exists.
    pub fn solve_mod_integers(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let c = self.u.to_rational().mul_vec(b);
        let r = self.rank();
        if c[r..].iter().any(|x| !x.is_integer()) {
            return None;
        }
        let mut y = vec![Rational::zero(); self.cols];
        for i in 0..r {
            y[i] = &c[i] / Rational::from_integer(self.factors[i].clone());
        }
        Some(self.v.to_rational().mul_vec(&y))
    }

    /// Order of `b` in the cokernel `ℤᵐ / A·ℤⁿ`; `None` if it has infinite
    /// order.
    pub fn cokernel_order(&self, b: &[Integer]) -> Option<Integer> {
        assert_eq!(b.len(), self.rows, "rhs length mismatch");
        let c = self.u.mul_vec(b);
        let r = self.rank();
        if c[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut order = Integer::one();
        for i in 0..r {
            let g = c[i].gcd(&self.factors[i]);
            let need = &self.factors[i] / g;
            order = order.lcm(&need);
        }
        Some(order)
    }

    /// A ℤ-basis of `ker A` (saturated).
    pub fn kernel_basis(&self) -> Vec<Vec<Integer>> {
        (self.rank()..self.cols).map(|j| self.v.column(j)).collect()
    }

    /// A ℤ-basis of `im A`.
    pub fn image_basis(&self) -> Vec<Vec<Integer>> {
        (0..self.rank())
            .map(|i| {
                self.u_inv
                    .column(i)
                    .into_iter()
                    .map(|x| x * &self.factors[i])
                    .collect()
            })
            .collect()
    }
}

/// Computes the Smith normal form of `a`.
///
/// Pivot rule: the smallest nonzero absolute value in the active block, ties
/// broken by row-major position.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let m = a.rows();
    let n = a.cols();
    let mut a = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);

    // row[target] -= q * row[source]
    let row_op = |a: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, t: usize, s: usize, q: &Integer| {
        a.row_axpy(t, s, q);
        u.row_axpy(t, s, q);
        // inverse: col[s] += q * col[t]
        u_inv.col_axpy(s, t, &-q.clone());
    };
    // col[target] -= q * col[source]
    let col_op = |a: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, t: usize, s: usize, q: &Integer| {
        a.col_axpy(t, s, q);
        v.col_axpy(t, s, q);
        v_inv.row_axpy(s, t, &-q.clone());
    };

    let mut rank = 0;
    for t in 0..m.min(n) {
        loop {
            let Some((pi, pj)) = find_pivot(&a, t) else {
                break;
            };
            if pi != t {
                a.swap_rows(pi, t);
                u.swap_rows(pi, t);
                u_inv.swap_cols(pi, t);
            }
            if pj != t {
                a.swap_cols(pj, t);
                v.swap_cols(pj, t);
                v_inv.swap_rows(pj, t);
            }
            let pivot = a.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..m {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(&pivot);
                row_op(&mut a, &mut u, &mut u_inv, i, t, &q);
                dirty |= !a.get(i, t).is_zero();
            }
            for j in t + 1..n {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(&pivot);
                col_op(&mut a, &mut v, &mut v_inv, j, t, &q);
                dirty |= !a.get(t, j).is_zero();
            }
            if dirty {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row and retry.
            let offending = (t + 1..m).find(|&i| {
                (t + 1..n).any(|j| !a.get(i, j).is_zero() && !a.get(i, j).is_multiple_of(&pivot))
            });
            match offending {
                Some(i) => {
                    row_op(&mut a, &mut u, &mut u_inv, t, i, &-Integer::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_zero() {
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        rank += 1;
    }

    let factors = (0..rank).map(|i| a.get(i, i).clone()).collect();
    SmithForm {
        u,
        u_inv,
        v,
        v_inv,
        factors,
        rows: m,
        cols: n,
    }
}

fn find_pivot(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Integer)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| ax < *b) {
                let unit = ax.is_one();
                best = Some((i, j, ax));
                if unit {
                    return best.map(|(i, j, _)| (i, j));
                }
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_postconditions(a: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d());
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(a.cols()));
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        for w in s.factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
        assert!(s.factors.iter().all(|f| f.is_positive()));
        s
    }

    #[test]
    fn two_by_two_example() {
        let a = IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]).unwrap();
        let s = check_postconditions(&a);
        assert_eq!(s.factors, vec![Integer::from(2), Integer::from(4)]);
    }

    #[test]
    fn identity_and_zero() {
        let s = check_postconditions(&IntMatrix::identity(4));
        assert_eq!(s.factors, vec![Integer::one(); 4]);
        let s = check_postconditions(&IntMatrix::zeros(3, 5));
        assert!(s.factors.is_empty());
        let s = check_postconditions(&IntMatrix::zeros(0, 3));
        assert_eq!(s.kernel_basis().len(), 3);
    }

    #[test]
    fn divisibility_fix_up() {
        // diag(2, 3) must become diag(1, 6)
        let a = IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]).unwrap();
        let s = check_postconditions(&a);
        assert_eq!(s.factors, vec![Integer::from(1), Integer::from(6)]);
    }

    #[test]
    fn integer_and_modular_solves() {
        let a = IntMatrix::from_i64(&[vec![2]]).unwrap();
        let s = smith_normal_form(&a);
        assert!(s.solve_integer(&[Integer::from(3)]).is_none());
        assert_eq!(s.solve_integer(&[Integer::from(4)]), Some(vec![Integer::from(2)]));
        // 2x ≡ 3/2 (mod ℤ) has a rational solution
        let x = s.solve_mod_integers(&[super::super::matrix::rat(3, 2)]).unwrap();
        assert!((&x[0] * Rational::from_integer(Integer::from(2)) - super::super::matrix::rat(3, 2)).is_integer());
        // 0·x ≡ 1/2 has none
        let z = smith_normal_form(&IntMatrix::zeros(1, 1));
        assert!(z.solve_mod_integers(&[super::super::matrix::rat(1, 2)]).is_none());
    }
}
