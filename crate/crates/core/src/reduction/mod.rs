//! Quotient-valued transition cocycles, their Chern classes, and the
//! extension class of two closed forms on a product.

mod extension;
mod quotient;

pub use extension::extension_delta;
pub use quotient::{
    chern_class, has_reduction, reducing_correction, torsion_lift, torsion_vanishing, ChernClass, QuotientCocycle,
    TorsionLift, TorsionVerdict,
};

use crate::error::{GerbeError, Result};
use crate::exactalg::Rational;
use crate::gerbe_builder::{integrality_test, kostant_weil, zigzag_gerbe_with_cover};
use crate::simplicial::{Cochain, Coefficients, Complex, Simplex, StarCover};

/// The ℚ/ℤ transitions of the line bundle whose curvature has mass `n` on
/// one triangle of `k`.
pub fn twisted_cocycle(k: &Complex, triangle: &Simplex, n: i64) -> Result<QuotientCocycle> {
    let omega = Cochain::from_entries(
        k,
        2,
        Coefficients::Rational,
        [(triangle.clone(), vec![Rational::from_integer(n.into())])],
    )?;
    let cover = std::sync::Arc::new(StarCover::new(k));
    let g = zigzag_gerbe_with_cover(&cover, &omega)?;
    let verdict = integrality_test(&omega)?;
    if !verdict.integral {
        return Err(GerbeError::Internal("integer mass judged non-integral".into()));
    }
    let bundle = kostant_weil(&g, &verdict)?;
    QuotientCocycle::from_line_bundle(&bundle)
}
