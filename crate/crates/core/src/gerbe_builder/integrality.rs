use super::zigzag::as_rational;
use crate::cohomology::{connecting_hom, CoefficientSES, CohomologyClass};
use crate::error::{GerbeError, Result};
use crate::exactalg::{solve_mixed, Lattice, Rational};
use crate::simplicial::{Chain, Cochain, Coefficients};

/// Evidence for an integrality verdict.
#[derive(Clone, Debug)]
pub enum IntegralityCertificate {
    /// ω = z + δb with z integral.
    Decomposition { integral: Cochain, primitive: Cochain },
    /// An integral cycle on which ω is not an integer.
    PeriodWitness { cycle: Chain, period: Rational },
}

#[derive(Clone, Debug)]
pub struct IntegralityVerdict {
    pub integral: bool,
    pub certificate: IntegralityCertificate,
}

impl IntegralityVerdict {
    pub fn decomposition(&self) -> Option<(&Cochain, &Cochain)> {
        match &self.certificate {
            IntegralityCertificate::Decomposition { integral, primitive } => Some((integral, primitive)),
            IntegralityCertificate::PeriodWitness { .. } => None,
        }
    }
}

fn closed_rational(omega: &Cochain) -> Result<Cochain> {
    let omega = as_rational(omega)?;
    if omega.degree() == 0 {
        return Err(GerbeError::Precondition("integrality of a 0-cochain".into()));
    }
    if !omega.is_cocycle() {
        return Err(GerbeError::Precondition("integrality test of a non-closed cochain".into()));
    }
    Ok(omega)
}

/// Decides whether [ω] comes from H^n(K; ℤ) by a mixed ℤ/ℚ solve.
///
/// Integral verdicts carry `(z, b)` with ω = z + δb; non-integral ones carry
/// an integral cycle with a non-integral period.
pub fn integrality_test(omega: &Cochain) -> Result<IntegralityVerdict> {
    let omega = closed_rational(omega)?;
    let k = omega.complex();
    let n = omega.degree();
    let a = k.coboundary_into(n).matrix.to_rational();
    if let Some(sol) = solve_mixed(&a, omega.flat_values()) {
        let integral = Cochain::from_flat(
            k,
            n,
            Coefficients::Integer,
            sol.integral.into_iter().map(Rational::from_integer).collect(),
        )?;
        let primitive = Cochain::from_flat(k, n - 1, Coefficients::Rational, sol.rational)?;
        return Ok(IntegralityVerdict {
            integral: true,
            certificate: IntegralityCertificate::Decomposition { integral, primitive },
        });
    }
    let (cycle, period) = period_witness(&omega)?.ok_or_else(|| {
        GerbeError::Internal("mixed solve failed but every period is integral".into())
    })?;
    Ok(IntegralityVerdict {
        integral: false,
        certificate: IntegralityCertificate::PeriodWitness { cycle, period },
    })
}

/// An integral cycle whose ω-period is not an integer, if any.
pub fn period_witness(omega: &Cochain) -> Result<Option<(Chain, Rational)>> {
    let omega = closed_rational(omega)?;
    let k = omega.complex();
    let n = omega.degree();
    for z in k.boundary(n).smith.kernel_basis() {
        let chain = Chain::from_coefficients(k, n, z)?;
        let period = omega.pair(&chain)?.remove(0);
        if !period.is_integer() {
            return Ok(Some((chain, period)));
        }
    }
    Ok(None)
}

/// The coefficient sequence used to reduce `c` modulo `lattice`.
pub fn reduction_sequence(c: &Cochain, lattice: &Lattice) -> Result<CoefficientSES> {
    if c.width() != lattice.dim() {
        return Err(GerbeError::Precondition(format!(
            "cochain of width {} reduced modulo a lattice in dimension {}",
            c.width(),
            lattice.dim()
        )));
    }
    if c.coefficients().is_scalar() && *lattice == Lattice::integral(1) {
        Ok(CoefficientSES::integers())
    } else {
        Ok(CoefficientSES::lattice(lattice.clone()))
    }
}

fn middle_term(c: &Cochain, ses: &CoefficientSES) -> Result<Cochain> {
    match c.coefficients() {
        Coefficients::Integer | Coefficients::Rational | Coefficients::Vector(_) => c.with_coefficients(ses.middle()),
        other => Err(GerbeError::Precondition(format!(
            "expected rational coefficients, got {}",
            other.label()
        ))),
    }
}

/// The image of a rational class in H^n(K; ℚˡ/Λ).
pub fn reduce_mod_lattice(c: &Cochain, lattice: &Lattice) -> Result<CohomologyClass> {
    if !c.is_cocycle() {
        return Err(GerbeError::Precondition("reduction of a non-closed cochain".into()));
    }
    let ses = reduction_sequence(c, lattice)?;
    let mid = middle_term(c, &ses)?;
    CohomologyClass::new(ses.project(&mid)?)
}

/// The Λ-valued obstruction read off from `c` directly: with λ = c − rep(c)
/// Λ-valued, δ(rep c) = −δλ.
pub fn bockstein_obstruction(c: &Cochain, lattice: &Lattice) -> Result<CohomologyClass> {
    if !c.is_cocycle() {
        return Err(GerbeError::Precondition("obstruction of a non-closed cochain".into()));
    }
    let ses = reduction_sequence(c, lattice)?;
    let mid = middle_term(c, &ses)?;
    let rep = ses.project(&mid)?.lift().with_coefficients(ses.middle())?;
    let lambda = mid.sub(&rep).with_coefficients(ses.sub())?;
    CohomologyClass::new(lambda.coboundary().neg())
}

/// connecting_hom ∘ reduce_mod_lattice.
pub fn bockstein_of_reduction(c: &Cochain, lattice: &Lattice) -> Result<CohomologyClass> {
    let ses = reduction_sequence(c, lattice)?;
    let reduced = reduce_mod_lattice(c, lattice)?;
    connecting_hom(&ses, reduced.representative())
}

/// The tower relation: the degree-3 class attached to a degree-2 class over
/// the quotient is its connecting image.
pub fn tower_connecting(c1: &Cochain, ses: &CoefficientSES) -> Result<CohomologyClass> {
    connecting_hom(ses, c1)
}

/// Whether every value of `c` is an integer.
pub(crate) fn is_integral(c: &Cochain) -> bool {
    c.flat_values().iter().all(|x| x.is_integer())
}
