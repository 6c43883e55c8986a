//! Reference computations written directly from the definitions, sharing no
//! code with the library beyond reading its data.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use gerbe_core::exactalg::{Integer, Rational};
use gerbe_core::simplicial::{Chain, Cochain, Complex, Simplex};

pub type Verts = Vec<usize>;

pub fn without(v: &[usize], j: usize) -> Verts {
    let mut w = v.to_vec();
    w.remove(j);
    w
}

fn sign(j: usize) -> Rational {
    if j % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn simplices(k: &Complex, d: usize) -> Vec<Verts> {
    if d > k.dim() {
        return Vec::new();
    }
    k.simplices(d).iter().map(|s| s.vertices().to_vec()).collect()
}

/// Value of a scalar cochain on a vertex list; `None` off its complex.
pub fn at(c: &Cochain, v: &[usize]) -> Option<Rational> {
    c.scalar_at(&Simplex::new(v.to_vec()).ok()?).cloned()
}

/// (δc)(σ) = Σⱼ (−1)ʲ c(σ without vⱼ).
pub fn delta_at(c: &Cochain, sigma: &[usize]) -> Option<Rational> {
    let mut acc = Rational::zero();
    for j in 0..sigma.len() {
        acc += sign(j) * at(c, &without(sigma, j))?;
    }
    Some(acc)
}

/// Matrix of δ: C^d → C^{d+1}, rows indexed by (d+1)-simplices.
pub fn delta_matrix(k: &Complex, d: usize) -> Vec<Vec<Rational>> {
    let cols: BTreeMap<Verts, usize> = simplices(k, d).into_iter().enumerate().map(|(i, s)| (s, i)).collect();
    simplices(k, d + 1)
        .iter()
        .map(|t| {
            let mut row = vec![Rational::zero(); cols.len()];
            for j in 0..t.len() {
                row[cols[&without(t, j)]] += sign(j);
            }
            row
        })
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn rank(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let x = &f * &m[r][j];
                    m[i][j] -= x;
                }
            }
        }
        r += 1;
    }
    r
}

/// Values of a scalar cochain in the complex's simplex order.
pub fn values(c: &Cochain) -> Vec<Rational> {
    simplices(c.complex(), c.degree())
        .iter()
        .map(|s| at(c, s).expect("simplex of its own complex"))
        .collect()
}

/// c = δb for some rational b.
pub fn is_rational_coboundary(c: &Cochain) -> bool {
    let v = values(c);
    if c.degree() == 0 {
        return v.iter().all(Zero::is_zero);
    }
    let m = delta_matrix(c.complex(), c.degree() - 1);
    let augmented: Vec<Vec<Rational>> = m
        .iter()
        .zip(&v)
        .map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect())
        .collect();
    rank(m) == rank(augmented)
}

pub fn rational_cohomologous(a: &Cochain, b: &Cochain) -> bool {
    let diff = a.sub(b);
    is_rational_coboundary(&diff)
}

/// Whether A·x = b has an integer solution, by diagonalising A with row and
/// column operations while carrying b along the row operations.
pub fn integer_solvable(a: &[Vec<Integer>], b: &[Integer]) -> bool {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Integer>> = a.to_vec();
    let mut b: Vec<Integer> = b.to_vec();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        b.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = m[i][t].div_floor(&m[t][t]);
            if !q.is_zero() {
                for j in t..cols {
                    let x = &q * &m[t][j];
                    m[i][j] -= x;
                }
                let x = &q * &b[t];
                b[i] -= x;
            }
            clean &= m[i][t].is_zero();
        }
        for j in t + 1..cols {
            let q = m[t][j].div_floor(&m[t][t]);
            if !q.is_zero() {
                for row in m.iter_mut() {
                    let x = &q * &row[t];
                    row[j] -= x;
                }
            }
            clean &= m[t][j].is_zero();
        }
        if clean {
            t += 1;
        }
    }
    (0..rows).all(|i| {
        if i < t {
            b[i].is_multiple_of(&m[i][i])
        } else {
            b[i].is_zero()
        }
    })
}

/// c = δb for some integer b; c must be integer-valued.
pub fn is_integral_coboundary(c: &Cochain) -> bool {
    let v = values(c);
    if v.iter().any(|x| !x.is_integer()) {
        return false;
    }
    let b: Vec<Integer> = v.iter().map(|x| x.to_integer()).collect();
    if c.degree() == 0 {
        return b.iter().all(Zero::is_zero);
    }
    let m: Vec<Vec<Integer>> = delta_matrix(c.complex(), c.degree() - 1)
        .into_iter()
        .map(|row| row.into_iter().map(|x| x.to_integer()).collect())
        .collect();
    integer_solvable(&m, &b)
}

/// Closed star of a simplex: every face of every simplex containing it.
pub fn closed_star(k: &Complex, s: &[usize]) -> BTreeSet<Verts> {
    let mut out = BTreeSet::new();
    for d in 0..=k.dim() {
        for t in simplices(k, d) {
            if s.iter().all(|v| t.contains(v)) {
                let n = t.len();
                for mask in 1u32..(1 << n) {
                    out.insert((0..n).filter(|i| mask & (1 << i) != 0).map(|i| t[i]).collect());
                }
            }
        }
    }
    out
}

pub fn all_simplices(k: &Complex) -> BTreeSet<Verts> {
    (0..=k.dim()).flat_map(|d| simplices(k, d)).collect()
}

/// A ±1 top-dimensional cycle found by propagating orientations across
/// codimension-one faces, with `first` oriented positively. `None` when the
/// complex is not an orientable pseudomanifold.
pub fn orientation(k: &Complex, first: &[usize]) -> Option<BTreeMap<Verts, i64>> {
    let n = k.dim();
    let tops = simplices(k, n);
    let mut by_face: BTreeMap<Verts, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, t) in tops.iter().enumerate() {
        for j in 0..t.len() {
            by_face.entry(without(t, j)).or_default().push((i, j));
        }
    }
    if by_face.values().any(|v| v.len() != 2) {
        return None;
    }
    let start = tops.iter().position(|t| t == first)?;
    let mut o: Vec<i64> = vec![0; tops.len()];
    o[start] = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(i) = queue.pop_front() {
        for j in 0..tops[i].len() {
            let induced = o[i] * if j % 2 == 0 { 1 } else { -1 };
            for &(other, oj) in &by_face[&without(&tops[i], j)] {
                if other == i {
                    continue;
                }
                // the neighbour must induce the opposite orientation
                let want = -induced * if oj % 2 == 0 { 1 } else { -1 };
                if o[other] == 0 {
                    o[other] = want;
                    queue.push_back(other);
                } else if o[other] != want {
                    return None;
                }
            }
        }
    }
    if o.contains(&0) {
        return None;
    }
    Some(tops.into_iter().zip(o).collect())
}

pub fn pair_oriented(c: &Cochain, cycle: &BTreeMap<Verts, i64>) -> Rational {
    cycle
        .iter()
        .fold(Rational::zero(), |acc, (s, n)| acc + at(c, s).expect("top simplex") * Rational::from_integer((*n).into()))
}

/// ⟨c, z⟩ for an integral chain.
pub fn pair_chain(c: &Cochain, z: &Chain) -> Rational {
    z.entries().fold(Rational::zero(), |acc, (s, n)| {
        acc + at(c, s.vertices()).expect("simplex of the complex") * Rational::from_integer(n.clone())
    })
}

/// ∂z computed from vertex lists.
pub fn boundary(z: &Chain) -> BTreeMap<Verts, Integer> {
    let mut out: BTreeMap<Verts, Integer> = BTreeMap::new();
    for (s, n) in z.entries() {
        let v = s.vertices();
        for j in 0..v.len() {
            let term = if j % 2 == 0 { n.clone() } else { -n.clone() };
            *out.entry(without(v, j)).or_insert_with(Integer::zero) += term;
        }
    }
    out.retain(|_, n| !n.is_zero());
    out
}

pub fn int_det(m: &[Vec<Integer>]) -> Integer {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return Integer::one();
    }
    let mut a = m.to_vec();
    let mut prev = Integer::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Integer::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

pub fn int_mul(a: &[Vec<Integer>], b: &[Vec<Integer>]) -> Vec<Vec<Integer>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Integer::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

/// Polynomials in x, y, τ keyed by exponent triples.
pub type OPoly = BTreeMap<(u32, u32, u32), Rational>;

pub fn o_add(a: &OPoly, b: &OPoly) -> OPoly {
    let mut out = a.clone();
    for (m, c) in b {
        *out.entry(*m).or_insert_with(Rational::zero) += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn o_neg(a: &OPoly) -> OPoly {
    a.iter().map(|(m, c)| (*m, -c.clone())).collect()
}

pub fn o_sub(a: &OPoly, b: &OPoly) -> OPoly {
    o_add(a, &o_neg(b))
}

pub fn o_mul(a: &OPoly, b: &OPoly) -> OPoly {
    let mut out = OPoly::new();
    for ((i, j, k), c) in a {
        for ((p, q, r), d) in b {
            *out.entry((i + p, j + q, k + r)).or_insert_with(Rational::zero) += c * d;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

pub fn o_dx(a: &OPoly) -> OPoly {
    a.iter()
        .filter(|((i, _, _), _)| *i > 0)
        .map(|((i, j, k), c)| ((i - 1, *j, *k), c * Rational::from_integer((*i).into())))
        .collect()
}

pub fn o_dy(a: &OPoly) -> OPoly {
    a.iter()
        .filter(|((_, j, _), _)| *j > 0)
        .map(|((i, j, k), c)| ((*i, j - 1, *k), c * Rational::from_integer((*j).into())))
        .collect()
}

pub fn o_mono(i: u32, j: u32, k: u32) -> OPoly {
    [((i, j, k), Rational::one())].into_iter().collect()
}

/// {f, g} = f_x g_y − f_y g_x.
pub fn o_bracket(f: &OPoly, g: &OPoly) -> OPoly {
    o_sub(&o_mul(&o_dx(f), &o_dy(g)), &o_mul(&o_dy(f), &o_dx(g)))
}

/// L_f φ = −f_y φ_x + f_x φ_y − τ·x·f_x·φ + τ·f·φ.
pub fn o_apply(f: &OPoly, phi: &OPoly) -> OPoly {
    let tau = o_mono(0, 0, 1);
    let x = o_mono(1, 0, 0);
    let field = o_sub(&o_mul(&o_dx(f), &o_dy(phi)), &o_mul(&o_dy(f), &o_dx(phi)));
    let potential = o_mul(&tau, &o_sub(f, &o_mul(&x, &o_dx(f))));
    o_add(&field, &o_mul(&potential, phi))
}
