use std::sync::Arc;

use crate::cech::{cech_coboundary, constants, constants_to_cochain, restrict_global};
use crate::cohomology::{class_equal, is_coboundary};
use crate::error::{GerbeError, Result};
use crate::simplicial::{Cochain, Coefficients, Complex, Simplex, StarCover};

/// Local primitives of every level plus the classifying cocycle.
#[derive(Clone, Debug)]
pub(crate) struct Transcript {
    pub levels: Vec<Vec<Cochain>>,
    pub classifying: Cochain,
}

// The raw alternating sums produce (−1)^{n(n+1)/2}·[ω] in degree n; the
// final step flips the sign where needed so that [c] = [ω].
fn flips_sign(n: usize) -> bool {
    (n * (n + 1) / 2) % 2 == 1
}

pub(crate) fn as_rational(omega: &Cochain) -> Result<Cochain> {
    match omega.coefficients() {
        Coefficients::Rational => Ok(omega.clone()),
        Coefficients::Integer => omega.with_coefficients(Coefficients::Rational),
        other => Err(GerbeError::Precondition(format!(
            "the zig-zag needs a rational cochain, got {}",
            other.label()
        ))),
    }
}

fn local_solve(overlap: &Complex, rhs: &Cochain, at: &Simplex) -> Result<Cochain> {
    match is_coboundary(rhs) {
        Ok(Some(x)) => Ok(x),
        Ok(None) | Err(_) => Err(GerbeError::Internal(format!(
            "no local primitive on the closed star of {at} (overlap f-vector {:?})",
            overlap.f_vector()
        ))),
    }
}

/// Runs the zig-zag for a closed n-cochain, n ≥ 1.
pub(crate) fn run_zigzag(cover: &StarCover, omega: &Cochain) -> Result<Transcript> {
    let base = cover.base();
    if **omega.complex() != **base {
        return Err(GerbeError::Precondition("cochain does not live on the cover's base".into()));
    }
    let omega = as_rational(omega)?;
    let n = omega.degree();
    if n == 0 {
        return Err(GerbeError::Precondition("the zig-zag starts in degree ≥ 1".into()));
    }
    if !omega.is_cocycle() {
        return Err(GerbeError::Precondition(format!("the degree-{n} input is not closed")));
    }
    let mut levels: Vec<Vec<Cochain>> = Vec::with_capacity(n);
    let mut rhs = restrict_global(cover, 0, &omega)?;
    for p in 0..n {
        let simplices = base.simplices(p);
        let mut level = Vec::with_capacity(simplices.len());
        for (s, r) in simplices.iter().zip(&rhs) {
            level.push(local_solve(cover.overlap(s)?, r, s)?);
        }
        rhs = cech_coboundary(cover, p, &level)?;
        levels.push(level);
    }
    let values = constants(&rhs).ok_or_else(|| {
        GerbeError::Internal("final Čech coboundary is not constant on some overlap".into())
    })?;
    let mut c = constants_to_cochain(base, n, Coefficients::Rational, &values)?;
    if flips_sign(n) {
        c = c.neg();
    }
    Ok(Transcript { levels, classifying: c })
}

/// Checks every equation of a transcript.
pub(crate) fn check_transcript(cover: &StarCover, omega: &Cochain, t: &Transcript) -> Result<()> {
    let omega = as_rational(omega)?;
    let n = omega.degree();
    if t.levels.len() != n {
        return Err(GerbeError::Internal("transcript has the wrong number of levels".into()));
    }
    let mut rhs = restrict_global(cover, 0, &omega)?;
    for (p, level) in t.levels.iter().enumerate() {
        for ((x, r), s) in level.iter().zip(&rhs).zip(cover.base().simplices(p)) {
            if x.coboundary() != *r {
                return Err(GerbeError::Internal(format!("level-{p} equation fails on the star of {s}")));
            }
        }
        rhs = cech_coboundary(cover, p, level)?;
    }
    let values = constants(&rhs).ok_or_else(|| GerbeError::Internal("classifying data is not constant".into()))?;
    let mut c = constants_to_cochain(cover.base(), n, Coefficients::Rational, &values)?;
    if flips_sign(n) {
        c = c.neg();
    }
    if c != t.classifying {
        return Err(GerbeError::Internal("classifying cocycle does not match the transcript".into()));
    }
    if !c.is_cocycle() {
        return Err(GerbeError::Internal("classifying cochain is not closed".into()));
    }
    if !class_equal(&c, &omega)? {
        return Err(GerbeError::Internal("classifying class differs from the input class".into()));
    }
    Ok(())
}

/// The gerbe transcript of a closed 2-cochain.
#[derive(Clone, Debug)]
pub struct GerbeData {
    pub base: Complex,
    pub cover: Arc<StarCover>,
    pub omega: Cochain,
    /// α_i on the closed star of vertex i, indexed like the base's vertices.
    pub alpha: Vec<Cochain>,
    /// u_ij on the closed star of edge ij, indexed like the base's edges.
    pub u: Vec<Cochain>,
    /// The classifying 2-cocycle.
    pub c: Cochain,
}

impl GerbeData {
    fn transcript(&self) -> Transcript {
        Transcript {
            levels: vec![self.alpha.clone(), self.u.clone()],
            classifying: self.c.clone(),
        }
    }

    /// Re-verifies every transcript equation and [c] = [ω].
    pub fn verify(&self) -> Result<()> {
        check_transcript(&self.cover, &self.omega, &self.transcript())
    }

    pub fn alpha_at(&self, vertex: usize) -> Option<&Cochain> {
        let i = self.base.index_of(&Simplex::new(vec![vertex]).ok()?)?;
        self.alpha.get(i)
    }

    pub fn u_at(&self, edge: &Simplex) -> Option<&Cochain> {
        (edge.dim() == 1).then(|| self.base.index_of(edge)).flatten().map(|i| &self.u[i])
    }
}

/// The 2-gerbe transcript of a closed 3-cochain.
#[derive(Clone, Debug)]
pub struct TwoGerbeData {
    pub base: Complex,
    pub cover: Arc<StarCover>,
    pub omega: Cochain,
    /// 2-cochains per vertex.
    pub alpha: Vec<Cochain>,
    /// 1-cochains per edge.
    pub u: Vec<Cochain>,
    /// 0-cochains per triangle.
    pub v: Vec<Cochain>,
    /// The classifying 3-cocycle.
    pub c: Cochain,
}

impl TwoGerbeData {
    pub fn verify(&self) -> Result<()> {
        let t = Transcript {
            levels: vec![self.alpha.clone(), self.u.clone(), self.v.clone()],
            classifying: self.c.clone(),
        };
        check_transcript(&self.cover, &self.omega, &t)
    }
}

fn expect_degree(omega: &Cochain, n: usize) -> Result<()> {
    if omega.degree() != n {
        return Err(GerbeError::Precondition(format!(
            "expected a degree-{n} cochain, got degree {}",
            omega.degree()
        )));
    }
    Ok(())
}

/// The transitions u_ij, negated when the sign normalisation flipped c, so
/// that δ_Č of the result is exactly c.
pub(crate) fn oriented_transitions(g: &GerbeData) -> Vec<Cochain> {
    if flips_sign(2) {
        g.u.iter().map(Cochain::neg).collect()
    } else {
        g.u.clone()
    }
}

/// Zig-zag of a closed 2-cochain.
pub fn zigzag_gerbe(k: &Complex, omega: &Cochain) -> Result<GerbeData> {
    zigzag_gerbe_with_cover(&Arc::new(StarCover::new(k)), omega)
}

/// As [`zigzag_gerbe`], reusing a prebuilt cover.
pub fn zigzag_gerbe_with_cover(cover: &Arc<StarCover>, omega: &Cochain) -> Result<GerbeData> {
    expect_degree(omega, 2)?;
    let t = run_zigzag(cover, omega)?;
    let mut levels = t.levels.into_iter();
    Ok(GerbeData {
        base: cover.base().clone(),
        cover: cover.clone(),
        omega: as_rational(omega)?,
        alpha: levels.next().expect("level 0"),
        u: levels.next().expect("level 1"),
        c: t.classifying,
    })
}

/// Zig-zag of a closed 3-cochain.
pub fn zigzag_two_gerbe(k: &Complex, omega: &Cochain) -> Result<TwoGerbeData> {
    zigzag_two_gerbe_with_cover(&Arc::new(StarCover::new(k)), omega)
}

pub fn zigzag_two_gerbe_with_cover(cover: &Arc<StarCover>, omega: &Cochain) -> Result<TwoGerbeData> {
    expect_degree(omega, 3)?;
    let t = run_zigzag(cover, omega)?;
    let mut levels = t.levels.into_iter();
    Ok(TwoGerbeData {
        base: cover.base().clone(),
        cover: cover.clone(),
        omega: as_rational(omega)?,
        alpha: levels.next().expect("level 0"),
        u: levels.next().expect("level 1"),
        v: levels.next().expect("level 2"),
        c: t.classifying,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{int_rat, rat, Rational};
    use crate::simplicial::build_complex;

    fn s2() -> Complex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    // orientation-coherent constant form: the boundary of [0123] has signs + − + −
    fn coherent(k: &Complex, n: usize, each: Rational) -> Cochain {
        let top: Vec<usize> = (0..=n + 1).collect();
        let whole = Simplex::new(top).unwrap();
        Cochain::rational_from_fn(k, n, |s| {
            let missing = (0..=n + 1).position(|j| whole.face(j).as_ref() == Some(s)).unwrap();
            if missing % 2 == 0 {
                each.clone()
            } else {
                -each.clone()
            }
        })
    }

    #[test]
    fn sphere_gerbe_has_the_input_class() {
        let k = s2();
        let w = coherent(&k, 2, rat(1, 4));
        assert!(w.is_cocycle());
        let g = zigzag_gerbe(&k, &w).unwrap();
        g.verify().unwrap();
        assert!(class_equal(&g.c, &w).unwrap());
    }

    #[test]
    fn three_sphere_two_gerbe() {
        let k = build_complex(&(0..5).map(|j| (0..5).filter(|&v| v != j).collect()).collect::<Vec<_>>()).unwrap();
        let w = coherent(&k, 3, rat(1, 5));
        assert!(w.is_cocycle());
        let g = zigzag_two_gerbe(&k, &w).unwrap();
        g.verify().unwrap();
    }

    #[test]
    fn exact_input_gives_exact_output() {
        let k = s2();
        let b = Cochain::rational_from_fn(&k, 1, |s| int_rat(s.vertices()[1] as i64 * 2 - 1));
        let g = zigzag_gerbe(&k, &b.coboundary()).unwrap();
        assert!(is_coboundary(&g.c).unwrap().is_some());
    }

    #[test]
    fn non_closed_input_is_rejected() {
        let k = build_complex(&[vec![0, 1, 2, 3]]).unwrap();
        let w = Cochain::rational_from_fn(&k, 2, |s| int_rat(i64::from(s.vertices() == [0, 1, 2])));
        assert!(matches!(zigzag_gerbe(&k, &w), Err(GerbeError::Precondition(_))));
    }
}
