use std::sync::Arc;

use crate::cech::{cech_coboundary, constants, constants_to_cochain};
use crate::cohomology::{class_order, is_coboundary, CoefficientSES, CohomologyClass};
use crate::error::{GerbeError, Result};
use crate::exactalg::{smith_normal_form, solve_linear, IntMatrix, Integer, Lattice, RatMatrix, Rational, Ring};
use crate::gerbe_builder::LineBundleData;
use crate::simplicial::{Cochain, Coefficients, Complex, Simplex, SimplicialMap, StarCover};

/// Transition data of a ℚˡ/Λ-bundle over the vertex-star cover.
///
/// The lift on edge ij is a ℚˡ-valued 0-cochain on the closed star of ij;
/// the transition itself is its image mod Λ, and it must be locally
/// constant there, so δ_Č of the lifts is a constant Λ-valued 2-cochain.
#[derive(Clone, Debug)]
pub struct QuotientCocycle {
    cover: Arc<StarCover>,
    lattice: Lattice,
    ses: CoefficientSES,
    lifts: Vec<Cochain>,
    certificate: Cochain,
}

/// The Λ-valued class δ_Č(lifts).
#[derive(Clone, Debug)]
pub struct ChernClass {
    pub class: CohomologyClass,
    pub torsion_order: Option<Integer>,
}

fn sequence_for(lattice: &Lattice) -> CoefficientSES {
    if *lattice == Lattice::integral(1) {
        CoefficientSES::integers()
    } else {
        CoefficientSES::lattice(lattice.clone())
    }
}

fn malformed(e: GerbeError) -> GerbeError {
    match e {
        GerbeError::MalformedCocycle(_) => e,
        other => GerbeError::MalformedCocycle(other.to_string()),
    }
}

impl QuotientCocycle {
    /// Validates the lifts and their certificate.
    pub fn new(cover: &Arc<StarCover>, lattice: Lattice, lifts: Vec<Cochain>) -> Result<Self> {
        let base = cover.base();
        let ses = sequence_for(&lattice);
        if lifts.len() != base.count(1) {
            return Err(GerbeError::MalformedCocycle(format!(
                "{} lifts for {} edges",
                lifts.len(),
                base.count(1)
            )));
        }
        let mut converted = Vec::with_capacity(lifts.len());
        for (e, t) in base.simplices(1).iter().zip(lifts) {
            if t.degree() != 0 || **t.complex() != **cover.overlap(e)? {
                return Err(GerbeError::MalformedCocycle(format!(
                    "the lift on {e} is not a 0-cochain on its closed star"
                )));
            }
            if !matches!(t.coefficients(), Coefficients::Integer | Coefficients::Rational | Coefficients::Vector(_)) {
                return Err(GerbeError::MalformedCocycle(format!(
                    "lift on {e} has {} coefficients",
                    t.coefficients().label()
                )));
            }
            converted.push(t.with_coefficients(ses.middle()).map_err(malformed)?);
        }
        let certificate = certificate_of(cover, &ses, &converted)?;
        Ok(QuotientCocycle {
            cover: cover.clone(),
            lattice,
            ses,
            lifts: converted,
            certificate,
        })
    }

    /// Constant transitions: one vector in ℚˡ per edge.
    pub fn from_constants(cover: &Arc<StarCover>, lattice: Lattice, values: &Cochain) -> Result<Self> {
        let base = cover.base();
        if values.degree() != 1 || **values.complex() != **base {
            return Err(GerbeError::MalformedCocycle("edge values must be a 1-cochain on the base".into()));
        }
        let lifts = base
            .simplices(1)
            .iter()
            .enumerate()
            .map(|(i, e)| Cochain::constant(cover.overlap(e)?, values.coefficients().ambient(), values.value(i)))
            .collect::<Result<_>>()?;
        QuotientCocycle::new(cover, lattice, lifts)
    }

    /// The ℚ/ℤ transitions of a line bundle.
    pub fn from_line_bundle(bundle: &LineBundleData) -> Result<Self> {
        QuotientCocycle::new(&bundle.cover, Lattice::integral(1), bundle.transitions.clone())
    }

    pub fn base(&self) -> &Complex {
        self.cover.base()
    }

    pub fn cover(&self) -> &Arc<StarCover> {
        &self.cover
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn sequence(&self) -> &CoefficientSES {
        &self.ses
    }

    pub fn lifts(&self) -> &[Cochain] {
        &self.lifts
    }

    /// δ_Č(lifts) over Λ.
    pub fn certificate(&self) -> &Cochain {
        &self.certificate
    }

    /// The same transitions with the lift on `edge` moved by λ ∈ Λ.
    pub fn shift_lift(&self, edge: &Simplex, lambda: &[Rational]) -> Result<Self> {
        if !self.lattice.contains(lambda) {
            return Err(GerbeError::Precondition("shift is not a lattice vector".into()));
        }
        let i = self
            .base()
            .index_of(edge)
            .filter(|_| edge.dim() == 1)
            .ok_or_else(|| GerbeError::Precondition(format!("{edge} is not an edge of the base")))?;
        let mut lifts = self.lifts.clone();
        let shift = Cochain::constant(lifts[i].complex(), self.ses.middle(), lambda)?;
        lifts[i] = lifts[i].try_add(&shift)?;
        QuotientCocycle::new(&self.cover, self.lattice.clone(), lifts)
    }

    /// Pullback along a simplicial map into the base.
    pub fn pull_back(&self, f: &SimplicialMap) -> Result<Self> {
        if **f.target() != **self.base() {
            return Err(GerbeError::MalformedMap("map does not land in the base".into()));
        }
        let cover = Arc::new(StarCover::new(f.source()));
        let middle = self.ses.middle();
        let w = middle.width();
        let mut lifts = Vec::with_capacity(f.source().count(1));
        for e in f.source().simplices(1) {
            let overlap = cover.overlap(e)?;
            let piece = match f.oriented_image(e) {
                None => Cochain::zero(overlap, 0, middle.clone()),
                Some((image, odd)) => {
                    let j = self.base().index_of(&image).expect("image edge");
                    let t = &self.lifts[j];
                    let mut flat = Vec::with_capacity(overlap.count(0) * w);
                    for v in overlap.simplices(0) {
                        let fv = Simplex::new(vec![f.apply(v.vertices()[0])])?;
                        let x = t
                            .value_at(&fv)
                            .ok_or_else(|| GerbeError::Internal(format!("{fv} left the star of {image}")))?;
                        flat.extend(x.iter().map(|a| if odd { -a.clone() } else { a.clone() }));
                    }
                    Cochain::from_flat(overlap, 0, middle.clone(), flat)?
                }
            };
            lifts.push(piece);
        }
        QuotientCocycle::new(&cover, self.lattice.clone(), lifts)
    }
}

fn certificate_of(cover: &StarCover, ses: &CoefficientSES, lifts: &[Cochain]) -> Result<Cochain> {
    let base = cover.base();
    let d = cech_coboundary(cover, 1, lifts)?;
    let values = constants(&d).ok_or_else(|| {
        GerbeError::MalformedCocycle("transitions are not locally constant mod the lattice".into())
    })?;
    let z = constants_to_cochain(base, 2, ses.middle(), &values)?;
    z.with_coefficients(ses.sub())
        .map_err(|_| GerbeError::MalformedCocycle("the cocycle condition fails mod the lattice".into()))
}

/// The class of δ_Č(lifts) in H²(K; Λ).
pub fn chern_class(q: &QuotientCocycle) -> Result<ChernClass> {
    let z = q.certificate.clone();
    let torsion_order = class_order(&z);
    Ok(ChernClass {
        class: CohomologyClass::new(z)?,
        torsion_order,
    })
}

/// Whether the Chern class vanishes.
pub fn has_reduction(q: &QuotientCocycle) -> Result<bool> {
    Ok(chern_class(q)?.class.is_zero())
}

/// Λ-valued edge constants λ with δ_Č(lifts − λ) = 0, by a direct solve
/// against the edge-triangle incidence; `None` if there are none.
pub fn reducing_correction(q: &QuotientCocycle) -> Result<Option<Vec<Cochain>>> {
    let base = q.base();
    let edges = base.simplices(1);
    let triangles = base.simplices(2);
    let lat = &q.lattice;
    let w = lat.dim();
    let incidence = |t: &Simplex, e: usize| -> i64 {
        (0..3)
            .find(|&j| t.face(j).as_ref() == Some(&edges[e]))
            .map_or(0, |j| if j % 2 == 0 { 1 } else { -1 })
    };
    let z = &q.certificate;
    let lambda: Vec<Vec<Rational>> = if lat.is_divisible() {
        let mut a = RatMatrix::zeros(triangles.len(), edges.len());
        for (ti, t) in triangles.iter().enumerate() {
            for e in 0..edges.len() {
                a.set(ti, e, Rational::from_integer(incidence(t, e).into()));
            }
        }
        let mut cols = Vec::with_capacity(w);
        for c in 0..w {
            let rhs: Vec<Rational> = (0..triangles.len()).map(|t| z.value(t)[c].clone()).collect();
            match solve_linear(&a, &rhs, Ring::Rationals)? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        (0..edges.len()).map(|e| cols.iter().map(|x| x[e].clone()).collect()).collect()
    } else {
        let r = lat.rank();
        let mut a = IntMatrix::zeros(triangles.len() * r, edges.len() * r);
        for (ti, t) in triangles.iter().enumerate() {
            for e in 0..edges.len() {
                let x = incidence(t, e);
                for c in 0..r {
                    a.set(ti * r + c, e * r + c, Integer::from(x));
                }
            }
        }
        let mut rhs = Vec::with_capacity(triangles.len() * r);
        for t in 0..triangles.len() {
            let coords = lat
                .lattice_coordinates(z.value(t))
                .ok_or_else(|| GerbeError::Internal("certificate left the lattice".into()))?;
            rhs.extend(coords.iter().map(Rational::to_integer));
        }
        let Some(x) = smith_normal_form(&a).solve_integer(&rhs) else {
            return Ok(None);
        };
        (0..edges.len())
            .map(|e| {
                let c: Vec<Rational> = x[e * r..(e + 1) * r].iter().cloned().map(Rational::from_integer).collect();
                lat.from_lattice_coordinates(&c)
            })
            .collect()
    };
    let corrected: Vec<Cochain> = q
        .lifts
        .iter()
        .zip(&lambda)
        .map(|(t, l)| t.try_sub(&Cochain::constant(t.complex(), q.ses.middle(), l)?))
        .collect::<Result<_>>()?;
    let d = cech_coboundary(&q.cover, 1, &corrected)?;
    if !d.iter().all(Cochain::is_zero) {
        return Err(GerbeError::Internal("corrected lifts are not a cocycle".into()));
    }
    Ok(Some(corrected))
}

/// Outcome of the torsion argument.
#[derive(Clone, Debug)]
pub struct TorsionVerdict {
    /// Order over the lattice generated by the class's values (over Λ
    /// itself when Λ is finitely generated).
    pub order: Option<Integer>,
    pub is_zero: bool,
    /// A Λ-valued primitive when the class vanishes.
    pub primitive: Option<Cochain>,
}

/// Orders the class, and over a divisible Λ kills a torsion class by
/// dividing a primitive of its multiple.
pub fn torsion_vanishing(c: &ChernClass) -> Result<TorsionVerdict> {
    let z = c.class.representative();
    let lat = match z.coefficients() {
        Coefficients::Integer => None,
        Coefficients::Lattice(l) => Some(l.clone()),
        other => {
            return Err(GerbeError::Precondition(format!(
                "torsion argument over {} coefficients",
                other.label()
            )))
        }
    };
    match lat {
        Some(l) if l.is_divisible() => {
            // the values span a finitely generated Λ₀ ⊂ Λ; order there, then divide
            let values: Vec<Vec<Rational>> = (0..z.len()).map(|i| z.value(i).to_vec()).collect();
            let sub = Lattice::generated(l.dim(), &values)?;
            let z0 = z.with_coefficients(Coefficients::Lattice(sub))?;
            let order = class_order(&z0);
            let primitive = match &order {
                None => None,
                Some(m) => {
                    let e = is_coboundary(&z0.scale_int(m))?
                        .ok_or_else(|| GerbeError::Internal("multiple of a torsion class is not exact".into()))?;
                    let p = e
                        .lift()
                        .scale(&Rational::from_integer(m.clone()).recip())
                        .with_coefficients(Coefficients::Lattice(l.clone()))?;
                    if p.coboundary() != *z {
                        return Err(GerbeError::Internal("divided primitive does not bound".into()));
                    }
                    Some(p)
                }
            };
            Ok(TorsionVerdict {
                order,
                is_zero: primitive.is_some(),
                primitive,
            })
        }
        _ => {
            let primitive = is_coboundary(z)?;
            Ok(TorsionVerdict {
                order: c.torsion_order.clone(),
                is_zero: primitive.is_some(),
                primitive,
            })
        }
    }
}

/// Lift data of the first torsion class in degree 2: a rational 1-cochain
/// t with δt = g, where g generates a cyclic summand of order m.
#[derive(Clone, Debug)]
pub struct TorsionLift {
    pub lift: Cochain,
    pub generator: Cochain,
    pub order: Integer,
}

pub fn torsion_lift(k: &Complex) -> Result<Option<TorsionLift>> {
    let h = crate::cohomology::cohomology_group(k, 2, Ring::Integers);
    let Some((g, m)) = h.torsion_generators.first().cloned() else {
        return Ok(None);
    };
    let e = is_coboundary(&g.scale_int(&m))?
        .ok_or_else(|| GerbeError::Internal("torsion generator is not torsion".into()))?;
    let lift = e.lift().scale(&Rational::from_integer(m.clone()).recip());
    Ok(Some(TorsionLift {
        lift,
        generator: g,
        order: m,
    }))
}
