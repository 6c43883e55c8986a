use crate::cohomology::{class_equal, CohomologyClass};
use crate::error::{GerbeError, Result};
use crate::gerbe_builder::as_rational;
use crate::simplicial::{pullback_cochain, Cochain, ProductComplex};

/// The class on N of the difference Ω′ − Ω of two closed 2-cochains on N × F that
/// agree on every fibre, pushed down along the section at `point`.
pub fn extension_delta(
    product: &ProductComplex,
    omega: &Cochain,
    omega_prime: &Cochain,
    point: usize,
) -> Result<CohomologyClass> {
    for c in [omega, omega_prime] {
        if c.degree() != 2 || **c.complex() != *product.complex {
            return Err(GerbeError::Precondition("expected 2-cochains on the product".into()));
        }
        if !c.is_cocycle() {
            return Err(GerbeError::Precondition("extension data must be closed".into()));
        }
    }
    let d = as_rational(omega_prime)?.try_sub(&as_rational(omega)?)?;
    if let Some((s, _)) = d
        .entries()
        .find(|(s, v)| product.is_vertical(s) && v.iter().any(|x| !num_traits::Zero::is_zero(x)))
    {
        return Err(GerbeError::Precondition(format!("the cochains differ on the fibre simplex {s}")));
    }
    let section = product.section(point)?;
    let pushed = pullback_cochain(&section, &d)?;
    let back = pullback_cochain(&product.left, &pushed)?;
    if !class_equal(&back, &d)? {
        return Err(GerbeError::Precondition("the difference does not come from the base".into()));
    }
    CohomologyClass::new(pushed)
}
