use std::fmt;
use num_traits::{One, Zero};

use super::complex::{Complex, Simplex};
use crate::error::{GerbeError, Result};
use crate::exactalg::{Integer, Lattice, Rational};

/// Coefficient group of a cochain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// ℤ
    Integer,
    /// ℚ
    Rational,
    /// ℚˡ
    Vector(usize),
    /// Λ ⊂ ℚˡ itself (values are vectors lying in Λ).
    Lattice(Lattice),
    /// ℚˡ/Λ (values are canonical representatives).
    Quotient(Lattice),
}

impl Coefficients {
    /// Number of rational components per value.
    pub fn width(&self) -> usize {
        match self {
            Coefficients::Integer | Coefficients::Rational => 1,
            Coefficients::Vector(l) => *l,
            Coefficients::Lattice(lat) | Coefficients::Quotient(lat) => lat.dim(),
        }
    }

    /// The ambient rational vector space the values live in.
    pub fn ambient(&self) -> Coefficients {
        match self {
            Coefficients::Integer | Coefficients::Rational => Coefficients::Rational,
            other => Coefficients::Vector(other.width()),
        }
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, Coefficients::Integer | Coefficients::Rational)
    }

    pub fn label(&self) -> String {
        match self {
            Coefficients::Integer => "Z".into(),
            Coefficients::Rational => "Q".into(),
            Coefficients::Vector(l) => format!("Q^{l}"),
            Coefficients::Lattice(lat) => format!("{lat:?}"),
            Coefficients::Quotient(lat) => format!("Q^{}/{lat:?}", lat.dim()),
        }
    }

    fn admits(&self, v: &[Rational]) -> bool {
        match self {
            Coefficients::Integer => v[0].is_integer(),
            Coefficients::Lattice(lat) => lat.contains(v),
            _ => true,
        }
    }

    fn normalise(&self, v: &mut [Rational]) {
        if let Coefficients::Quotient(lat) = self {
            let rep = lat.canonical_rep(v);
            v.clone_from_slice(&rep);
        }
    }
}

/// A k-cochain: a value per k-simplex of its carrier complex.
#[derive(Clone)]
pub struct Cochain {
    complex: Complex,
    degree: usize,
    coefficients: Coefficients,
    // row-major: values[i * width .. (i + 1) * width]
    values: Vec<Rational>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cochain(deg {}, {}) {{", self.degree, self.coefficients.label())?;
        let w = self.width();
        for (i, s) in self.complex.simplices(self.degree).iter().enumerate() {
            let v = &self.values[i * w..(i + 1) * w];
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            write!(f, " {s}: {}", parts.join(","))?;
        }
        write!(f, " }}")
    }
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && self.coefficients == other.coefficients
            && *self.complex == *other.complex
            && self.values == other.values
    }
}

impl Cochain {
    pub fn zero(complex: &Complex, degree: usize, coefficients: Coefficients) -> Self {
        let n = complex.count(degree) * coefficients.width();
        Cochain {
            complex: complex.clone(),
            degree,
            coefficients,
            values: vec![Rational::zero(); n],
        }
    }

    /// Builds from a flat row-major value vector, validating membership and
    /// canonicalising quotient values.
    pub fn from_flat(
        complex: &Complex,
        degree: usize,
        coefficients: Coefficients,
        mut values: Vec<Rational>,
    ) -> Result<Self> {
        let w = coefficients.width();
        let n = complex.count(degree);
        if values.len() != n * w {
            return Err(GerbeError::MalformedInput(format!(
                "expected {} values for a degree-{degree} cochain of width {w}, got {}",
                n * w,
                values.len()
            )));
        }
        if w > 0 {
            for chunk in values.chunks_mut(w) {
                if !coefficients.admits(chunk) {
                    return Err(GerbeError::MalformedInput(format!(
                        "value {:?} is not in the coefficient group {}",
                        chunk.iter().map(ToString::to_string).collect::<Vec<_>>(),
                        coefficients.label()
                    )));
                }
                coefficients.normalise(chunk);
            }
        }
        Ok(Cochain {
            complex: complex.clone(),
            degree,
            coefficients,
            values,
        })
    }

    /// Scalar (ℤ or ℚ) cochain from one value per simplex.
    pub fn from_scalars(
        complex: &Complex,
        degree: usize,
        coefficients: Coefficients,
        values: Vec<Rational>,
    ) -> Result<Self> {
        assert!(coefficients.is_scalar(), "from_scalars needs scalar coefficients");
        Self::from_flat(complex, degree, coefficients, values)
    }

    /// Rational cochain from a function of the simplex.
    pub fn rational_from_fn(complex: &Complex, degree: usize, f: impl Fn(&Simplex) -> Rational) -> Self {
        let values = complex.simplices(degree).iter().map(f).collect();
        Cochain {
            complex: complex.clone(),
            degree,
            coefficients: Coefficients::Rational,
            values,
        }
    }

    /// Cochain from sparse `(simplex, value)` entries; missing simplices are zero.
    pub fn from_entries(
        complex: &Complex,
        degree: usize,
        coefficients: Coefficients,
        entries: impl IntoIterator<Item = (Simplex, Vec<Rational>)>,
    ) -> Result<Self> {
        let w = coefficients.width();
        let mut flat = vec![Rational::zero(); complex.count(degree) * w];
        let mut seen = vec![false; complex.count(degree)];
        for (s, v) in entries {
            if s.dim() != degree {
                return Err(GerbeError::MalformedInput(format!(
                    "simplex {s} does not have degree {degree}"
                )));
            }
            let i = complex
                .index_of(&s)
                .ok_or_else(|| GerbeError::MalformedInput(format!("simplex {s} is not in the complex")))?;
            if v.len() != w {
                return Err(GerbeError::MalformedInput(format!(
                    "value for {s} has {} components, expected {w}",
                    v.len()
                )));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(GerbeError::MalformedInput(format!("duplicate entry for {s}")));
            }
            flat[i * w..(i + 1) * w].clone_from_slice(&v);
        }
        Self::from_flat(complex, degree, coefficients, flat)
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn width(&self) -> usize {
        self.coefficients.width()
    }

    pub fn len(&self) -> usize {
        self.complex.count(self.degree)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn flat_values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &[Rational] {
        let w = self.width();
        &self.values[i * w..(i + 1) * w]
    }

    /// Value of a scalar cochain on its `i`-th simplex.
    pub fn scalar(&self, i: usize) -> &Rational {
        debug_assert_eq!(self.width(), 1);
        &self.values[i]
    }

    pub fn value_at(&self, s: &Simplex) -> Option<&[Rational]> {
        if s.dim() != self.degree {
            return None;
        }
        self.complex.index_of(s).map(|i| self.value(i))
    }

    pub fn scalar_at(&self, s: &Simplex) -> Option<&Rational> {
        self.value_at(s).map(|v| &v[0])
    }

    /// Component `c` as a scalar rational cochain.
    pub fn component(&self, c: usize) -> Vec<Rational> {
        let w = self.width();
        (0..self.len()).map(|i| self.values[i * w + c].clone()).collect()
    }

    /// Nonzero entries in simplex order.
    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, &[Rational])> + '_ {
        self.complex
            .simplices(self.degree)
            .iter()
            .enumerate()
            .map(|(i, s)| (s, self.value(i)))
            .filter(|(_, v)| v.iter().any(|x| !x.is_zero()))
    }

    /// Zero as an element of the coefficient group.
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn same_carrier(&self, other: &Cochain) -> bool {
        self.degree == other.degree
            && self.coefficients == other.coefficients
            && *self.complex == *other.complex
    }

    fn check_carrier(&self, other: &Cochain) -> Result<()> {
        if !self.same_carrier(other) {
            return Err(GerbeError::Precondition(format!(
                "mismatched cochains: degree {} over {} vs degree {} over {}",
                self.degree,
                self.coefficients.label(),
                other.degree,
                other.coefficients.label()
            )));
        }
        Ok(())
    }

    fn rebuilt(&self, values: Vec<Rational>) -> Cochain {
        let mut c = Cochain {
            complex: self.complex.clone(),
            degree: self.degree,
            coefficients: self.coefficients.clone(),
            values,
        };
        c.renormalise();
        c
    }

    fn renormalise(&mut self) {
        let w = self.width();
        if w > 0 && matches!(self.coefficients, Coefficients::Quotient(_)) {
            let coeffs = self.coefficients.clone();
            for chunk in self.values.chunks_mut(w) {
                coeffs.normalise(chunk);
            }
        }
    }

    pub fn try_add(&self, other: &Cochain) -> Result<Cochain> {
        self.check_carrier(other)?;
        Ok(self.rebuilt(self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect()))
    }

    pub fn try_sub(&self, other: &Cochain) -> Result<Cochain> {
        self.check_carrier(other)?;
        Ok(self.rebuilt(self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect()))
    }

    /// Panicking addition for callers that already know the carriers agree.
    pub fn add(&self, other: &Cochain) -> Cochain {
        self.try_add(other).expect("cochain carriers differ")
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.try_sub(other).expect("cochain carriers differ")
    }

    pub fn neg(&self) -> Cochain {
        self.rebuilt(self.values.iter().map(|a| -a.clone()).collect())
    }

    /// Multiplication by an integer (stays in any coefficient group).
    pub fn scale_int(&self, n: &Integer) -> Cochain {
        let f = Rational::from_integer(n.clone());
        self.rebuilt(self.values.iter().map(|a| a * &f).collect())
    }

    /// Multiplication by a rational; the result is reinterpreted in the
    /// ambient rational space.
    pub fn scale(&self, f: &Rational) -> Cochain {
        Cochain {
            complex: self.complex.clone(),
            degree: self.degree,
            coefficients: self.coefficients.ambient(),
            values: self.values.iter().map(|a| a * f).collect(),
        }
    }

    /// Reinterprets the values in another coefficient group of the same width.
    pub fn with_coefficients(&self, coefficients: Coefficients) -> Result<Cochain> {
        if coefficients.width() != self.width() {
            return Err(GerbeError::Precondition(format!(
                "cannot reinterpret width-{} values over {}",
                self.width(),
                coefficients.label()
            )));
        }
        Cochain::from_flat(&self.complex, self.degree, coefficients, self.values.clone())
    }

    /// The underlying rational lift (ambient vector space coefficients).
    pub fn lift(&self) -> Cochain {
        Cochain {
            complex: self.complex.clone(),
            degree: self.degree,
            coefficients: self.coefficients.ambient(),
            values: self.values.clone(),
        }
    }

    /// δ applied to the stored values: (δc)(v₀…v_{k+1}) = Σⱼ (−1)ʲ c(…v̂ⱼ…).
    ///
    /// Coefficients are kept; for quotient coefficients this is the coboundary
    /// in ℚˡ/Λ.
    pub fn coboundary(&self) -> Cochain {
        let values = self.raw_coboundary();
        self.with_raw(self.degree + 1, values)
    }

    /// δ of the rational lift, in the ambient vector space.
    pub fn lift_coboundary(&self) -> Cochain {
        Cochain {
            complex: self.complex.clone(),
            degree: self.degree + 1,
            coefficients: self.coefficients.ambient(),
            values: self.raw_coboundary(),
        }
    }

    fn with_raw(&self, degree: usize, values: Vec<Rational>) -> Cochain {
        let mut c = Cochain {
            complex: self.complex.clone(),
            degree,
            coefficients: self.coefficients.clone(),
            values,
        };
        c.renormalise();
        c
    }

    fn raw_coboundary(&self) -> Vec<Rational> {
        let k = self.degree;
        let w = self.width();
        let n = self.complex.count(k + 1);
        let mut out = vec![Rational::zero(); n * w];
        for i in 0..n {
            for (j, &f) in self.complex.face_indices(k + 1, i).iter().enumerate() {
                for c in 0..w {
                    let v = &self.values[f * w + c];
                    if v.is_zero() {
                        continue;
                    }
                    if j % 2 == 0 {
                        out[i * w + c] += v;
                    } else {
                        out[i * w + c] -= v;
                    }
                }
            }
        }
        out
    }

    /// Cocycle test in the coefficient group.
    pub fn is_cocycle(&self) -> bool {
        self.coboundary().is_zero()
    }

    /// Restriction to a subcomplex with the same vertex labels.
    pub fn restrict_to(&self, sub: &Complex) -> Result<Cochain> {
        let w = self.width();
        let mut values = Vec::with_capacity(sub.count(self.degree) * w);
        for s in sub.simplices(self.degree) {
            let i = self.complex.index_of(s).ok_or_else(|| {
                GerbeError::Precondition(format!("simplex {s} is outside the cochain's carrier"))
            })?;
            values.extend_from_slice(self.value(i));
        }
        Ok(Cochain {
            complex: sub.clone(),
            degree: self.degree,
            coefficients: self.coefficients.clone(),
            values,
        })
    }

    /// Extension by zero from a subcomplex to `ambient`.
    pub fn extend_by_zero(&self, ambient: &Complex) -> Result<Cochain> {
        let w = self.width();
        let mut values = vec![Rational::zero(); ambient.count(self.degree) * w];
        for (i, s) in self.complex.simplices(self.degree).iter().enumerate() {
            let j = ambient
                .index_of(s)
                .ok_or_else(|| GerbeError::Precondition(format!("simplex {s} missing from ambient complex")))?;
            values[j * w..(j + 1) * w].clone_from_slice(self.value(i));
        }
        Ok(Cochain {
            complex: ambient.clone(),
            degree: self.degree,
            coefficients: self.coefficients.clone(),
            values,
        })
    }

    /// The common value of a 0-cochain when it is constant.
    pub fn constant_value(&self) -> Option<Vec<Rational>> {
        if self.degree != 0 || self.is_empty() {
            return None;
        }
        let first = self.value(0).to_vec();
        (1..self.len()).all(|i| self.value(i) == first.as_slice()).then_some(first)
    }

    /// Constant 0-cochain on `complex`.
    pub fn constant(complex: &Complex, coefficients: Coefficients, value: &[Rational]) -> Result<Cochain> {
        let n = complex.count(0);
        let flat = (0..n).flat_map(|_| value.iter().cloned()).collect();
        Cochain::from_flat(complex, 0, coefficients, flat)
    }

    /// Sum of the values, weighted by an integer chain.
    pub fn pair(&self, chain: &super::Chain) -> Result<Vec<Rational>> {
        if chain.degree() != self.degree || **chain.complex() != *self.complex {
            return Err(GerbeError::Precondition("chain and cochain carriers differ".into()));
        }
        let w = self.width();
        let mut acc = vec![Rational::zero(); w];
        for (i, c) in chain.coefficients().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let f = Rational::from_integer(c.clone());
            for (a, v) in acc.iter_mut().zip(self.value(i)) {
                *a += v * &f;
            }
        }
        Ok(acc)
    }

    /// Sum over all simplices of a scalar cochain.
    pub fn total(&self) -> Rational {
        self.values.iter().fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// The indicator cochain of one simplex (rational coefficients).
pub fn indicator(complex: &Complex, s: &Simplex) -> Result<Cochain> {
    Cochain::from_entries(complex, s.dim(), Coefficients::Rational, [(s.clone(), vec![Rational::one()])])
}

/// δ as a free function.
pub fn coboundary(c: &Cochain) -> Cochain {
    c.coboundary()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int_rat, rat};
    use crate::simplicial::build_complex;

    fn s1() -> Complex {
        build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn s2() -> Complex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn circle_coboundary_example() {
        let k = s1();
        let c = Cochain::rational_from_fn(&k, 0, |s| int_rat(s.vertices()[0] as i64));
        let d = c.coboundary();
        let at = |v: Vec<usize>| d.scalar_at(&Simplex::new(v).unwrap()).unwrap().clone();
        assert_eq!(at(vec![0, 1]), int_rat(1));
        assert_eq!(at(vec![1, 2]), int_rat(1));
        assert_eq!(at(vec![0, 2]), int_rat(2));
    }

    #[test]
    fn zero_maps_to_zero() {
        let k = s2();
        for deg in 0..2 {
            assert!(Cochain::zero(&k, deg, Coefficients::Integer).coboundary().is_zero());
        }
    }

    #[test]
    fn edge_indicator_on_sphere() {
        let k = s2();
        let e = indicator(&k, &Simplex::new(vec![0, 1]).unwrap()).unwrap();
        let d = e.coboundary();
        let expect = |v: Vec<usize>, x: i64| {
            assert_eq!(d.scalar_at(&Simplex::new(v).unwrap()).unwrap(), &int_rat(x));
        };
        expect(vec![0, 1, 2], 1);
        expect(vec![0, 1, 3], 1);
        expect(vec![0, 2, 3], 0);
        expect(vec![1, 2, 3], 0);
    }

    #[test]
    fn quotient_values_are_canonical() {
        let k = s1();
        let q = Coefficients::Quotient(Lattice::integral(1));
        let c = Cochain::from_scalars_any(&k, 1, q, vec![rat(7, 2), rat(-1, 3), int_rat(2)]);
        assert_eq!(c.flat_values(), &[rat(1, 2), rat(2, 3), int_rat(0)]);
        assert!(!c.is_zero());
        assert!(c.scale_int(&Integer::from(6)).is_zero());
    }

    #[test]
    fn integer_coefficients_reject_fractions() {
        let k = s1();
        assert!(Cochain::from_scalars(&k, 0, Coefficients::Integer, vec![rat(1, 2), int_rat(0), int_rat(0)]).is_err());
    }

    impl Cochain {
        fn from_scalars_any(k: &Complex, d: usize, c: Coefficients, v: Vec<Rational>) -> Cochain {
            Cochain::from_flat(k, d, c, v).unwrap()
        }
    }
}
