use crate::cech::{cech_coboundary, constants, constants_to_cochain, local_coboundary, restrict_global};
use crate::cohomology::is_coboundary;
use crate::error::{GerbeError, Result};
use crate::gerbe_builder::GerbeData;
use crate::simplicial::{Cochain, Coefficients};

/// Connection data on a gerbe: 1-cochains per edge overlap and a curving
/// per vertex star.
#[derive(Clone, Debug)]
pub struct GerbeConnection {
    pub gerbe: GerbeData,
    /// h_ij on the closed star of edge ij.
    pub h: Vec<Cochain>,
    /// L_i on the closed star of vertex i.
    pub curving: Vec<Cochain>,
}

/// The flat holonomy 2-cocycle.
#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyCocycle {
    pub values: Cochain,
}

impl GerbeConnection {
    /// Checks δ_Č h = 0 on triple overlaps and L_j − L_i = δh_ij on double
    /// overlaps.
    pub fn verify(&self) -> Result<()> {
        let cover = &self.gerbe.cover;
        let base = &self.gerbe.base;
        if self.h.len() != base.count(1) || self.curving.len() != base.count(0) {
            return Err(GerbeError::InvalidConnection("connection data has the wrong shape".into()));
        }
        for (i, h) in self.h.iter().enumerate() {
            if h.degree() != 1 || **h.complex() != **cover.overlap(&base.simplices(1)[i])? {
                return Err(GerbeError::InvalidConnection(format!(
                    "h on {} is not a 1-cochain on its overlap",
                    base.simplices(1)[i]
                )));
            }
        }
        for (i, l) in self.curving.iter().enumerate() {
            if l.degree() != 2 || **l.complex() != **cover.overlap(&base.simplices(0)[i])? {
                return Err(GerbeError::InvalidConnection(format!(
                    "curving on {} is not a 2-cochain on its star",
                    base.simplices(0)[i]
                )));
            }
        }
        let dh = cech_coboundary(cover, 1, &self.h)?;
        if let Some((t, _)) = base.simplices(2).iter().zip(&dh).find(|(_, x)| !x.is_zero()) {
            return Err(GerbeError::InvalidConnection(format!("δ_Č h does not vanish on {t}")));
        }
        let dl = cech_coboundary(cover, 0, &self.curving)?;
        let local = local_coboundary(&self.h);
        for ((e, a), b) in base.simplices(1).iter().zip(&dl).zip(&local) {
            if a != b {
                return Err(GerbeError::InvalidConnection(format!("L_j − L_i ≠ δh on {e}")));
            }
        }
        Ok(())
    }

    /// Gauge move: h_ij + δ(f_j − f_i) + (κ_j − κ_i) and L_i + δκ_i, for
    /// 0-cochains f_i and 1-cochains κ_i on the vertex stars.
    pub fn gauge(&self, f: &[Cochain], kappa: &[Cochain]) -> Result<GerbeConnection> {
        let cover = &self.gerbe.cover;
        let df = cech_coboundary(cover, 0, f)?;
        let dk = cech_coboundary(cover, 0, kappa)?;
        let h = self
            .h
            .iter()
            .zip(&df)
            .zip(&dk)
            .map(|((h, a), b)| h.try_add(&a.coboundary())?.try_add(b))
            .collect::<Result<_>>()?;
        let curving = self
            .curving
            .iter()
            .zip(kappa)
            .map(|(l, k)| l.try_add(&k.coboundary()))
            .collect::<Result<_>>()?;
        Ok(GerbeConnection {
            gerbe: self.gerbe.clone(),
            h,
            curving,
        })
    }
}

/// h_ij := α_j| − α_i| and L_i := ω|.
pub fn canonical_connection(g: &GerbeData) -> Result<GerbeConnection> {
    let h = cech_coboundary(&g.cover, 0, &g.alpha)?;
    let curving = restrict_global(&g.cover, 0, &g.omega)?;
    Ok(GerbeConnection {
        gerbe: g.clone(),
        h,
        curving,
    })
}

/// The global 3-cochain restricting to δL_i on every vertex star.
pub fn curvature(conn: &GerbeConnection) -> Result<Cochain> {
    let base = &conn.gerbe.base;
    let pieces = local_coboundary(&conn.curving);
    let mut values = Vec::with_capacity(base.count(3));
    for s in base.simplices(3) {
        let v = s.vertices()[0];
        let i = base
            .index_of(&crate::simplicial::Simplex::new(vec![v])?)
            .expect("vertex of the base");
        values.push(pieces[i].scalar_at(s).expect("a simplex lies in the stars of its vertices").clone());
    }
    let glued = Cochain::from_flat(base, 3, Coefficients::Rational, values)?;
    for (i, piece) in pieces.iter().enumerate() {
        if glued.restrict_to(piece.complex())? != *piece {
            return Err(GerbeError::InvalidConnection(format!(
                "local curvatures disagree on the star of {}",
                base.simplices(0)[i]
            )));
        }
    }
    Ok(glued)
}

/// The constant 2-cocycle c′ = c + δ_Č h′ of a flat connection, where
/// L_i = δL′_i and h_ij − (L′_j − L′_i) = δh′_ij.
pub fn holonomy_cocycle(conn: &GerbeConnection) -> Result<HolonomyCocycle> {
    conn.verify()?;
    if !curvature(conn)?.is_zero() {
        return Err(GerbeError::Precondition("holonomy of a connection with nonzero curvature".into()));
    }
    let g = &conn.gerbe;
    let primitive = |c: &Cochain| -> Result<Cochain> {
        is_coboundary(c)?.ok_or_else(|| GerbeError::Internal("a closed local cochain has no primitive".into()))
    };
    let l_prime: Vec<Cochain> = conn.curving.iter().map(primitive).collect::<Result<_>>()?;
    let dl = cech_coboundary(&g.cover, 0, &l_prime)?;
    let h_prime: Vec<Cochain> = conn
        .h
        .iter()
        .zip(&dl)
        .map(|(h, d)| primitive(&h.try_sub(d)?))
        .collect::<Result<_>>()?;
    let dh = cech_coboundary(&g.cover, 1, &h_prime)?;
    let values = constants(&dh).ok_or_else(|| GerbeError::Internal("holonomy correction is not constant".into()))?;
    let correction = constants_to_cochain(&g.base, 2, Coefficients::Rational, &values)?;
    Ok(HolonomyCocycle {
        values: g.c.try_add(&correction)?,
    })
}
