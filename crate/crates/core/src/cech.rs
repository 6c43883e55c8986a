//! Čech cochains of the vertex-star cover.
//!
//! A Čech cochain of level `p` assigns to every `p`-simplex `S` of the base a
//! simplicial cochain on the closed star of `S`. Since the nerve of the star
//! cover is the base itself, levels are indexed by the base's simplices.

use crate::error::{GerbeError, Result};
use crate::exactalg::Rational;
use crate::simplicial::{Cochain, Coefficients, Complex, StarCover};

/// (δ_Č t)_T = Σⱼ (−1)ʲ t_{T∖vⱼ}|T for every (p+1)-simplex T.
pub fn cech_coboundary(cover: &StarCover, level: usize, pieces: &[Cochain]) -> Result<Vec<Cochain>> {
    let base = cover.base();
    if pieces.len() != base.count(level) {
        return Err(GerbeError::Internal(format!(
            "level-{level} Čech cochain has {} pieces, expected {}",
            pieces.len(),
            base.count(level)
        )));
    }
    let mut out = Vec::with_capacity(base.count(level + 1));
    for (ti, t) in base.simplices(level + 1).iter().enumerate() {
        let overlap = cover.overlap(t)?;
        let mut acc: Option<Cochain> = None;
        for (j, &f) in base.face_indices(level + 1, ti).iter().enumerate() {
            let r = pieces[f].restrict_to(overlap)?;
            let term = if j % 2 == 0 { r } else { r.neg() };
            acc = Some(match acc {
                None => term,
                Some(a) => a.try_add(&term)?,
            });
        }
        out.push(acc.expect("a simplex has at least two faces"));
    }
    Ok(out)
}

/// Applies δ to every piece.
pub fn local_coboundary(pieces: &[Cochain]) -> Vec<Cochain> {
    pieces.iter().map(Cochain::coboundary).collect()
}

/// Restrictions of a global cochain to every overlap of a given level.
pub fn restrict_global(cover: &StarCover, level: usize, c: &Cochain) -> Result<Vec<Cochain>> {
    cover
        .base()
        .simplices(level)
        .iter()
        .map(|s| c.restrict_to(cover.overlap(s)?))
        .collect()
}

/// The common constant of each 0-cochain piece, if every piece is constant.
pub fn constants(pieces: &[Cochain]) -> Option<Vec<Vec<Rational>>> {
    pieces.iter().map(Cochain::constant_value).collect()
}

/// The global `level`-cochain with the given per-simplex constants.
pub fn constants_to_cochain(
    base: &Complex,
    level: usize,
    coefficients: Coefficients,
    values: &[Vec<Rational>],
) -> Result<Cochain> {
    let flat = values.iter().flatten().cloned().collect();
    Cochain::from_flat(base, level, coefficients, flat)
}

/// Whether two Čech cochains agree piece by piece.
pub fn pieces_equal(a: &[Cochain], b: &[Cochain]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::int_rat;
    use crate::simplicial::build_complex;

    #[test]
    fn cech_coboundary_squares_to_zero() {
        let k = build_complex(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        let cover = StarCover::new(&k);
        let pieces: Vec<Cochain> = k
            .simplices(0)
            .iter()
            .map(|s| {
                let v = s.vertices()[0] as i64;
                Cochain::rational_from_fn(cover.overlap(s).unwrap(), 1, |e| {
                    int_rat(v * e.vertices()[0] as i64 + 3 * e.vertices()[1] as i64 - v)
                })
            })
            .collect();
        let d1 = cech_coboundary(&cover, 0, &pieces).unwrap();
        let d2 = cech_coboundary(&cover, 1, &d1).unwrap();
        assert!(d2.iter().all(Cochain::is_zero));
    }
}
