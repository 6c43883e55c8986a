use std::collections::HashMap;
use std::sync::Arc;

use super::cochain::Cochain;
use super::complex::{Complex, Simplex, SimplicialComplex};
use crate::error::{GerbeError, Result};

/// The overlap model attached to a vertex set `S`.
///
/// `star` lists the simplices of the base containing `S`; cochains on the
/// model live on `closure`, the closed star (every face of a simplex in
/// `star`). The closed star is the join of `S` with its link, hence a cone.
#[derive(Clone, Debug)]
pub struct LocalModel {
    base: Complex,
    core: Vec<usize>,
    star: Vec<Simplex>,
    closure: Option<Complex>,
}

/// All simplices of `base` containing the vertex set `core`.
pub fn local_model(base: &Complex, core: &[usize]) -> LocalModel {
    let mut sorted = core.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let as_simplex = Simplex::new(sorted.clone()).ok().filter(|s| base.contains(s));
    let (star, closure) = match as_simplex {
        Some(s) => {
            let star = base.cofaces(&s);
            let closure = Arc::new(SimplicialComplex::from_generators(star.clone()));
            (star, Some(closure))
        }
        None => (Vec::new(), None),
    };
    LocalModel {
        base: base.clone(),
        core: sorted,
        star,
        closure,
    }
}

impl LocalModel {
    pub fn base(&self) -> &Complex {
        &self.base
    }

    pub fn core(&self) -> &[usize] {
        &self.core
    }

    /// Simplices containing the core.
    pub fn star(&self) -> &[Simplex] {
        &self.star
    }

    pub fn is_empty(&self) -> bool {
        self.closure.is_none()
    }

    /// The closed star as a complex; `None` for an empty model.
    pub fn complex(&self) -> Option<&Complex> {
        self.closure.as_ref()
    }

    /// Star simplices of dimension `k`.
    pub fn star_simplices(&self, k: usize) -> impl Iterator<Item = &Simplex> + '_ {
        self.star.iter().filter(move |s| s.dim() == k)
    }

    fn require(&self) -> Result<&Complex> {
        self.closure.as_ref().ok_or_else(|| {
            GerbeError::EmptyOverlap(format!("{:?} does not span a simplex", self.core))
        })
    }

    /// Restriction of a global cochain to the model.
    pub fn restrict_global(&self, c: &Cochain) -> Result<Cochain> {
        c.restrict_to(self.require()?)
    }
}

/// Restriction of a cochain on the model of `S` to the model of `S′ ⊇ S`.
pub fn restrict(c: &Cochain, from: &LocalModel, to: &LocalModel) -> Result<Cochain> {
    let target = to.require()?;
    if !from.core.iter().all(|v| to.core.binary_search(v).is_ok()) {
        return Err(GerbeError::Precondition(format!(
            "{:?} does not contain {:?}",
            to.core, from.core
        )));
    }
    c.restrict_to(target)
}

/// The vertex-star cover together with every nonempty overlap model.
///
/// The nerve of this cover is the base complex itself, so overlaps are
/// indexed by the simplices of the base.
#[derive(Clone, Debug)]
pub struct StarCover {
    base: Complex,
    models: HashMap<Simplex, LocalModel>,
}

impl StarCover {
    pub fn new(base: &Complex) -> Self {
        let models = (0..=base.dim())
            .flat_map(|k| base.simplices(k).iter())
            .map(|s| (s.clone(), local_model(base, s.vertices())))
            .collect();
        StarCover {
            base: base.clone(),
            models,
        }
    }

    pub fn base(&self) -> &Complex {
        &self.base
    }

    /// Overlap model of a simplex of the base.
    pub fn model(&self, s: &Simplex) -> Result<&LocalModel> {
        self.models
            .get(s)
            .ok_or_else(|| GerbeError::EmptyOverlap(format!("{s} is not a simplex of the base")))
    }

    /// Closed star complex of a simplex of the base.
    pub fn overlap(&self, s: &Simplex) -> Result<&Complex> {
        self.model(s)?.require()
    }

    /// Restricts a cochain on the overlap of `s` to the overlap of `t ⊇ s`.
    pub fn restrict(&self, c: &Cochain, t: &Simplex) -> Result<Cochain> {
        c.restrict_to(self.overlap(t)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int_rat;
    use crate::simplicial::{build_complex, Coefficients};

    fn s2() -> Complex {
        build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn vertex_star_on_sphere() {
        let m = local_model(&s2(), &[0]);
        assert_eq!(m.star_simplices(0).count(), 1);
        assert_eq!(m.star_simplices(1).count(), 3);
        assert_eq!(m.star_simplices(2).count(), 3);
        // the closed star is a disk: all four vertices, six edges, three triangles
        assert_eq!(m.complex().unwrap().f_vector(), vec![4, 6, 3]);
    }

    #[test]
    fn non_simplex_gives_empty_model() {
        let m = local_model(&s2(), &[0, 1, 2, 3]);
        assert!(m.is_empty());
        assert!(m.star().is_empty());
    }

    #[test]
    fn edge_model_on_circle() {
        let k = build_complex(&[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let m = local_model(&k, &[0, 1]);
        assert_eq!(m.star().len(), 1);
        assert_eq!(m.complex().unwrap().maximal_simplices(), &[Simplex::new(vec![0, 1]).unwrap()]);
    }

    #[test]
    fn restriction_to_an_edge_overlap() {
        let k = s2();
        let cover = StarCover::new(&k);
        let v0 = Simplex::new(vec![0]).unwrap();
        let e01 = Simplex::new(vec![0, 1]).unwrap();
        let star0 = cover.overlap(&v0).unwrap();
        let c = Cochain::rational_from_fn(star0, 2, |s| int_rat(s.vertices().iter().sum::<usize>() as i64));
        let r = cover.restrict(&c, &e01).unwrap();
        let m = cover.model(&e01).unwrap();
        assert_eq!(m.star_simplices(2).count(), 2);
        assert_eq!(m.star_simplices(1).count(), 1);
        for s in m.star_simplices(2) {
            assert_eq!(r.scalar_at(s), c.scalar_at(s));
        }
        // restricting to the same model is the identity
        assert_eq!(cover.restrict(&c, &v0).unwrap(), c);
        let z = Cochain::zero(star0, 1, Coefficients::Rational);
        assert!(cover.restrict(&z, &e01).unwrap().is_zero());
    }

    #[test]
    fn restriction_outside_the_base_is_an_error() {
        let k = s2();
        let cover = StarCover::new(&k);
        let full = Simplex::new(vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(cover.overlap(&full), Err(GerbeError::EmptyOverlap(_))));
    }
}
