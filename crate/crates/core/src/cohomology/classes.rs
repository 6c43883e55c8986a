use num_traits::{One, Zero};

use crate::error::{GerbeError, Result};
use crate::exactalg::{Integer, Lattice, Rational};
use crate::simplicial::{Cochain, Coefficients, Complex};

/// A cohomology class, held through a cocycle representative.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    representative: Cochain,
}

impl CohomologyClass {
    /// Wraps a cocycle; fails if `c` is not closed in its coefficient group.
    pub fn new(c: Cochain) -> Result<Self> {
        if !c.is_cocycle() {
            return Err(GerbeError::Precondition(format!(
                "degree-{} cochain over {} is not a cocycle",
                c.degree(),
                c.coefficients().label()
            )));
        }
        Ok(CohomologyClass { representative: c })
    }

    pub fn representative(&self) -> &Cochain {
        &self.representative
    }

    pub fn into_representative(self) -> Cochain {
        self.representative
    }

    pub fn degree(&self) -> usize {
        self.representative.degree()
    }

    pub fn coefficients(&self) -> &Coefficients {
        self.representative.coefficients()
    }

    pub fn complex(&self) -> &Complex {
        self.representative.complex()
    }

    pub fn is_zero(&self) -> bool {
        is_coboundary(&self.representative)
            .expect("representative is a cocycle")
            .is_some()
    }

    pub fn equals(&self, other: &CohomologyClass) -> Result<bool> {
        class_equal(&self.representative, &other.representative)
    }

    /// Order in Hᵏ(K; A); `None` for infinite order.
    pub fn order(&self) -> Option<Integer> {
        class_order(&self.representative)
    }
}

/// A primitive `b` with `δb = c`, or `None` if `c` is not a coboundary.
///
/// In degree 0 the only coboundary is zero, and its primitive is reported
/// as the zero 0-cochain.
pub fn is_coboundary(c: &Cochain) -> Result<Option<Cochain>> {
    if !c.is_cocycle() {
        return Err(GerbeError::Precondition(format!(
            "degree-{} cochain is not a cocycle",
            c.degree()
        )));
    }
    let k = c.degree();
    let complex = c.complex();
    if k == 0 {
        return Ok(c.is_zero().then(|| Cochain::zero(complex, 0, c.coefficients().clone())));
    }
    let system = complex.coboundary_into(k);
    let n = complex.count(k - 1);
    let coeffs = c.coefficients().clone();
    let w = coeffs.width();
    let assemble = |columns: Vec<Vec<Rational>>| -> Result<Cochain> {
        let mut flat = vec![Rational::zero(); n * w];
        for (ci, col) in columns.into_iter().enumerate() {
            for (i, x) in col.into_iter().enumerate() {
                flat[i * w + ci] = x;
            }
        }
        Cochain::from_flat(complex, k - 1, coeffs.clone(), flat)
    };
    match c.coefficients() {
        Coefficients::Integer => {
            let b: Vec<Integer> = c.flat_values().iter().map(|x| x.to_integer()).collect();
            Ok(match system.smith.solve_integer(&b) {
                Some(x) => Some(assemble(vec![x.into_iter().map(Rational::from_integer).collect()])?),
                None => None,
            })
        }
        Coefficients::Rational | Coefficients::Vector(_) => {
            let mut cols = Vec::with_capacity(w);
            for ci in 0..w {
                match system.rational.solve(&c.component(ci)) {
                    Some(x) => cols.push(x),
                    None => return Ok(None),
                }
            }
            assemble(cols).map(Some)
        }
        Coefficients::Lattice(lat) => {
            if lat.is_divisible() {
                let mut cols = Vec::with_capacity(w);
                for ci in 0..w {
                    match system.rational.solve(&c.component(ci)) {
                        Some(x) => cols.push(x),
                        None => return Ok(None),
                    }
                }
                return assemble(cols).map(Some);
            }
            let r = lat.rank();
            let coords: Vec<Vec<Rational>> = (0..c.len())
                .map(|i| lat.lattice_coordinates(c.value(i)).expect("values lie in the lattice"))
                .collect();
            let mut per_coord = Vec::with_capacity(r);
            for ci in 0..r {
                let b: Vec<Integer> = coords.iter().map(|v| v[ci].to_integer()).collect();
                match system.smith.solve_integer(&b) {
                    Some(x) => per_coord.push(x),
                    None => return Ok(None),
                }
            }
            let flat: Vec<Rational> = (0..n)
                .flat_map(|i| {
                    let lc: Vec<Rational> = per_coord.iter().map(|x| Rational::from_integer(x[i].clone())).collect();
                    lat.from_lattice_coordinates(&lc)
                })
                .collect();
            Cochain::from_flat(complex, k - 1, coeffs.clone(), flat).map(Some)
        }
        Coefficients::Quotient(lat) => {
            if lat.is_divisible() {
                return Ok(Some(Cochain::zero(complex, k - 1, coeffs.clone())));
            }
            let r = lat.rank();
            let frames: Vec<Vec<Rational>> = (0..c.len()).map(|i| lat.frame_coordinates(c.value(i))).collect();
            let mut per_coord = Vec::with_capacity(w);
            for ci in 0..w {
                let b: Vec<Rational> = frames.iter().map(|v| v[ci].clone()).collect();
                let x = if ci < r {
                    system.smith.solve_mod_integers(&b)
                } else {
                    system.rational.solve(&b)
                };
                match x {
                    Some(x) => per_coord.push(x),
                    None => return Ok(None),
                }
            }
            let flat: Vec<Rational> = (0..n)
                .flat_map(|i| {
                    let fc: Vec<Rational> = per_coord.iter().map(|x| x[i].clone()).collect();
                    lat.from_frame_coordinates(&fc)
                })
                .collect();
            Cochain::from_flat(complex, k - 1, coeffs.clone(), flat).map(Some)
        }
    }
}

/// Whether `c1 − c2` is a coboundary.
pub fn class_equal(c1: &Cochain, c2: &Cochain) -> Result<bool> {
    let diff = c1.try_sub(c2)?;
    Ok(is_coboundary(&diff)?.is_some())
}

/// Order of the class of a cocycle; `None` if infinite.
///
/// Rational and vector classes have order 1 or ∞; classes over ℚˡ/Λ with Λ
/// divisible are zero.
pub fn class_order(c: &Cochain) -> Option<Integer> {
    let k = c.degree();
    let complex = c.complex();
    let system = complex.coboundary_into(k);
    let one = Some(Integer::one());
    match c.coefficients() {
        Coefficients::Integer => {
            let b: Vec<Integer> = c.flat_values().iter().map(|x| x.to_integer()).collect();
            system.smith.cokernel_order(&b)
        }
        Coefficients::Lattice(lat) if !lat.is_divisible() => {
            let coords: Vec<Vec<Rational>> = (0..c.len())
                .map(|i| lat.lattice_coordinates(c.value(i)).expect("values lie in the lattice"))
                .collect();
            let mut order = Integer::one();
            for ci in 0..lat.rank() {
                let b: Vec<Integer> = coords.iter().map(|v| v[ci].to_integer()).collect();
                let o = system.smith.cokernel_order(&b)?;
                order = num_integer::Integer::lcm(&order, &o);
            }
            Some(order)
        }
        Coefficients::Quotient(lat) if lat.is_divisible() => one,
        Coefficients::Quotient(_) => {
            // ℚˡ/Λ-classes: multiply until zero; orders divide the common
            // denominator of the frame coordinates when they are finite
            let mut n = Integer::one();
            let bound = quotient_order_bound(c);
            while n <= bound {
                if is_coboundary(&c.scale_int(&n)).ok()?.is_some() {
                    return Some(n);
                }
                n += 1;
            }
            None
        }
        _ => {
            if is_coboundary(c).ok()?.is_some() {
                one
            } else {
                None
            }
        }
    }
}

fn quotient_order_bound(c: &Cochain) -> Integer {
    let Coefficients::Quotient(lat) = c.coefficients() else {
        unreachable!()
    };
    let frames: Vec<Rational> = (0..c.len()).flat_map(|i| lat.frame_coordinates(c.value(i))).collect();
    crate::exactalg::common_denominator(frames.iter())
}

/// The subgroup of ℚ generated by the values of `omega` on integral cycles.
pub fn periods(omega: &Cochain) -> Result<Lattice> {
    if !omega.coefficients().is_scalar() {
        return Err(GerbeError::Precondition("periods need a scalar cochain".into()));
    }
    if !omega.is_cocycle() {
        return Err(GerbeError::Precondition("periods of a non-closed cochain".into()));
    }
    let k = omega.degree();
    let cycles = omega.complex().boundary(k).smith.kernel_basis();
    let values: Vec<Vec<Rational>> = cycles
        .iter()
        .map(|z| {
            let v = z
                .iter()
                .zip(omega.flat_values())
                .fold(Rational::zero(), |acc, (n, x)| acc + x * Rational::from_integer(n.clone()));
            vec![v]
        })
        .collect();
    Lattice::generated(1, &values)
}

/// A short exact coefficient sequence `Λ → ℚˡ → ℚˡ/Λ`.
///
/// The scalar instance ℤ → ℚ → ℚ/ℤ uses plain integer and rational
/// coefficients for the first two terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientSES {
    lattice: Lattice,
    scalar: bool,
}

impl CoefficientSES {
    /// ℤ → ℚ → ℚ/ℤ.
    pub fn integers() -> Self {
        CoefficientSES {
            lattice: Lattice::integral(1),
            scalar: true,
        }
    }

    /// Λ → ℚˡ → ℚˡ/Λ.
    pub fn lattice(lattice: Lattice) -> Self {
        CoefficientSES { lattice, scalar: false }
    }

    pub fn lattice_ref(&self) -> &Lattice {
        &self.lattice
    }

    pub fn sub(&self) -> Coefficients {
        if self.scalar {
            Coefficients::Integer
        } else {
            Coefficients::Lattice(self.lattice.clone())
        }
    }

    pub fn middle(&self) -> Coefficients {
        if self.scalar {
            Coefficients::Rational
        } else {
            Coefficients::Vector(self.lattice.dim())
        }
    }

    pub fn quotient(&self) -> Coefficients {
        Coefficients::Quotient(self.lattice.clone())
    }

    /// Checks the sequence on the lattice generators: they are members of
    /// the middle term, nonzero when Λ ≠ 0, and project to zero.
    pub fn verify(&self) -> bool {
        match self.lattice.basis() {
            None => true,
            Some(b) => b.iter().all(|g| {
                g.iter().any(|x| !x.is_zero())
                    && self.lattice.contains(g)
                    && self.lattice.canonical_rep(g).iter().all(Zero::is_zero)
            }),
        }
    }

    /// Projection of a middle-term cochain.
    pub fn project(&self, c: &Cochain) -> Result<Cochain> {
        if *c.coefficients() != self.middle() {
            return Err(GerbeError::Precondition("cochain is not over the middle term".into()));
        }
        c.with_coefficients(self.quotient())
    }

    /// Inclusion of a sub-term cochain.
    pub fn include(&self, c: &Cochain) -> Result<Cochain> {
        if *c.coefficients() != self.sub() {
            return Err(GerbeError::Precondition("cochain is not over the sub term".into()));
        }
        c.with_coefficients(self.middle())
    }
}

/// The connecting homomorphism Hᵏ(A″) → Hᵏ⁺¹(A′) via the canonical lift.
pub fn connecting_hom(ses: &CoefficientSES, c: &Cochain) -> Result<CohomologyClass> {
    if *c.coefficients() != ses.quotient() {
        return Err(GerbeError::Precondition(format!(
            "connecting map expects {} coefficients, got {}",
            ses.quotient().label(),
            c.coefficients().label()
        )));
    }
    if !c.is_cocycle() {
        return Err(GerbeError::Precondition("input is not a cocycle".into()));
    }
    connecting_from_lift(ses, &c.lift().with_coefficients(ses.middle())?)
}

/// The connecting homomorphism computed from an explicit middle-term lift.
pub fn connecting_from_lift(ses: &CoefficientSES, lift: &Cochain) -> Result<CohomologyClass> {
    if *lift.coefficients() != ses.middle() {
        return Err(GerbeError::Precondition("lift is not over the middle term".into()));
    }
    let d = lift.coboundary();
    let sub = d.with_coefficients(ses.sub()).map_err(|_| {
        GerbeError::Precondition("lift does not reduce to a cocycle: its coboundary leaves the sub term".into())
    })?;
    CohomologyClass::new(sub)
}
