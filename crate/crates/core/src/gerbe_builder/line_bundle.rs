use std::sync::Arc;

use super::integrality::{is_integral, IntegralityVerdict};
use super::zigzag::{oriented_transitions, GerbeData};
use crate::cech::{cech_coboundary, constants, constants_to_cochain};
use crate::cohomology::{class_equal, is_coboundary, CohomologyClass};
use crate::error::{GerbeError, Result};
use crate::exactalg::Lattice;
use crate::simplicial::{Cochain, Coefficients, Complex, StarCover};

/// Line bundle transition data from an integral gerbe.
///
/// Transitions are kept through their rational lifts: on the closed star of
/// edge ij the lift is a 0-cochain `t_ij` whose reduction mod ℤ is the
/// transition function. The certificate `z = δ_Č t` is integral.
#[derive(Clone, Debug)]
pub struct LineBundleData {
    pub base: Complex,
    pub cover: Arc<StarCover>,
    /// Constant shift per edge that makes the classifying cocycle integral.
    pub shift: Cochain,
    /// Rational lifts of the transition functions, indexed like the edges.
    pub transitions: Vec<Cochain>,
    /// The integral 2-cocycle δ_Č(transitions).
    pub certificate: Cochain,
}

impl LineBundleData {
    /// Transition functions with values in ℚ/ℤ.
    pub fn reduced_transitions(&self) -> Result<Vec<Cochain>> {
        let q = Coefficients::Quotient(Lattice::integral(1));
        self.transitions.iter().map(|t| t.with_coefficients(q.clone())).collect()
    }

    /// The Čech coboundary of the lifts, which must be integral and constant.
    pub fn connecting_class(&self) -> Result<CohomologyClass> {
        let d = cech_coboundary(&self.cover, 1, &self.transitions)?;
        let values = constants(&d).ok_or_else(|| GerbeError::Internal("transition defect is not constant".into()))?;
        let z = constants_to_cochain(&self.base, 2, Coefficients::Rational, &values)?;
        if !is_integral(&z) {
            return Err(GerbeError::Internal("transition defect is not integral".into()));
        }
        CohomologyClass::new(z.with_coefficients(Coefficients::Integer)?)
    }

    /// Re-derives the certificate and checks the cocycle condition mod ℤ.
    pub fn verify(&self) -> Result<()> {
        let z = self.connecting_class()?;
        if *z.representative() != self.certificate {
            return Err(GerbeError::Internal("stored certificate is stale".into()));
        }
        let reduced = self.reduced_transitions()?;
        let d = cech_coboundary(&self.cover, 1, &reduced)?;
        if !d.iter().all(Cochain::is_zero) {
            return Err(GerbeError::Internal("reduced transitions fail the cocycle condition".into()));
        }
        Ok(())
    }

    /// Whether the bundle is trivial: its certificate is an integral coboundary.
    pub fn is_trivial(&self) -> bool {
        matches!(is_coboundary(&self.certificate), Ok(Some(_)))
    }
}

/// Shifts the transitions by constants so the classifying cocycle becomes
/// integral.
pub fn kostant_weil(g: &GerbeData, verdict: &IntegralityVerdict) -> Result<LineBundleData> {
    let (z, _) = verdict
        .decomposition()
        .filter(|_| verdict.integral)
        .ok_or_else(|| GerbeError::Precondition("the gerbe is not integral".into()))?;
    if **z.complex() != *g.base {
        return Err(GerbeError::Precondition("certificate lives on another complex".into()));
    }
    let z_rat = z.with_coefficients(Coefficients::Rational)?;
    if !class_equal(&z_rat, &g.omega)? {
        return Err(GerbeError::Precondition("certificate does not represent the gerbe's class".into()));
    }
    let beta = is_coboundary(&g.c.sub(&z_rat))?
        .ok_or_else(|| GerbeError::Internal("classifying cocycle and certificate differ in class".into()))?;
    let oriented = oriented_transitions(g);
    let transitions: Vec<Cochain> = oriented
        .iter()
        .zip(beta.flat_values())
        .map(|(t, b)| {
            let shift = Cochain::constant(t.complex(), Coefficients::Rational, std::slice::from_ref(b))?;
            t.try_sub(&shift)
        })
        .collect::<Result<_>>()?;
    let mut bundle = LineBundleData {
        base: g.base.clone(),
        cover: g.cover.clone(),
        shift: beta,
        transitions,
        certificate: Cochain::zero(&g.base, 2, Coefficients::Integer),
    };
    bundle.certificate = bundle.connecting_class()?.into_representative();
    Ok(bundle)
}
