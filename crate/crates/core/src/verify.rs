//! The invariant suite behind `gerbe verify`.

use num_traits::{One, Signed, Zero};

use crate::cohomology::{class_equal, connecting_hom, CoefficientSES};
use crate::error::{GerbeError, Result};
use crate::exactalg::{int_rat, rat, smith_normal_form, IntMatrix, Lattice, Rational};
use crate::fixtures::{check_fixture, read_fixture, FIXTURE_NAMES};
use crate::gerbe_builder::{
    bockstein_obstruction, bockstein_of_reduction, integrality_test, kostant_weil, period_witness,
    reduce_mod_lattice, zigzag_gerbe, zigzag_two_gerbe,
};
use crate::holonomy::{canonical_connection, surface_holonomy, Surface};
use crate::prequant::commutator_identity;
use crate::random::{closed_cochain, int_matrix_up_to, poly, rng};
use crate::reduction::{chern_class, has_reduction, reducing_correction, twisted_cocycle};
use crate::simplicial::{local_model, Cochain, Coefficients, Complex, SimplicialMap};

/// Outcome of one property.
#[derive(Clone, Debug)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GerbeError::Internal(msg()))
    }
}

fn fixture(name: &str) -> Result<Complex> {
    crate::fixtures::load_fixture(name)
}

fn coboundary_squared() -> Result<String> {
    let mut checked = 0usize;
    for name in FIXTURE_NAMES {
        let k = fixture(name)?;
        let mut complexes = vec![k.clone()];
        for d in 0..=k.dim() {
            for s in k.simplices(d) {
                if let Some(c) = local_model(&k, s.vertices()).complex() {
                    complexes.push(c.clone());
                }
            }
        }
        for c in &complexes {
            for d in 0..c.dim().saturating_sub(1) {
                let a = c.coboundary_matrix(d);
                let b = c.coboundary_matrix(d + 1);
                ensure(b.mul(&a).is_zero(), || format!("δδ ≠ 0 in degree {d} on {name}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} composites"))
}

/// U·A·V = D, U and V unimodular, d₁ | d₂ | ….
pub fn smith_postconditions(a: &IntMatrix) -> bool {
    let s = smith_normal_form(a);
    let unimodular = |m: &IntMatrix| m.determinant().abs().is_one();
    let chain = s.factors.windows(2).all(|w| (&w[1] % &w[0]).is_zero()) && s.factors.iter().all(|f| f.is_positive());
    s.u.mul(a).mul(&s.v) == s.d()
        && unimodular(&s.u)
        && unimodular(&s.v)
        && s.u.mul(&s.u_inv) == IntMatrix::identity(a.rows())
        && s.v.mul(&s.v_inv) == IntMatrix::identity(a.cols())
        && chain
}

fn smith(seed: u64) -> Result<String> {
    let mut r = rng(seed);
    for i in 0..100 {
        let a = int_matrix_up_to(&mut r, 12, 9);
        ensure(smith_postconditions(&a), || format!("matrix #{i} fails"))?;
    }
    Ok("100 matrices".into())
}

fn zigzag(seed: u64) -> Result<String> {
    let mut r = rng(seed);
    for name in ["S2", "T2", "RP2"] {
        let k = fixture(name)?;
        for _ in 0..5 {
            let w = closed_cochain(&mut r, &k, 2);
            let g = zigzag_gerbe(&k, &w)?;
            g.verify()?;
            ensure(class_equal(&g.c, &w)?, || format!("[c] ≠ [ω] on {name}"))?;
        }
    }
    let k = fixture("S3")?;
    for _ in 0..3 {
        let w = closed_cochain(&mut r, &k, 3);
        zigzag_two_gerbe(&k, &w)?.verify()?;
    }
    Ok("15 gerbes, 3 two-gerbes".into())
}

fn mass(k: &Complex, a: Rational) -> Result<Cochain> {
    Cochain::from_entries(k, 2, Coefficients::Rational, [(k.simplices(2)[0].clone(), vec![a])])
}

fn integrality() -> Result<String> {
    let k = fixture("S2")?;
    for a in [int_rat(-2), int_rat(0), int_rat(1), rat(3, 2), rat(22, 7)] {
        let w = mass(&k, a.clone())?;
        let v = integrality_test(&w)?;
        let witness = period_witness(&w)?.is_some();
        let reduced = reduce_mod_lattice(&w, &Lattice::integral(1))?.is_zero();
        ensure(v.integral == a.is_integer() && v.integral == !witness && v.integral == reduced, || {
            format!("verdicts disagree for mass {a}")
        })?;
        let direct = bockstein_obstruction(&w, &Lattice::integral(1))?;
        let via = bockstein_of_reduction(&w, &Lattice::integral(1))?;
        ensure(direct.equals(&via)?, || format!("Bockstein mismatch for mass {a}"))?;
        if v.integral {
            kostant_weil(&zigzag_gerbe(&k, &w)?, &v)?.verify()?;
        }
    }
    let rp2 = fixture("RP2")?;
    let t = crate::reduction::torsion_lift(&rp2)?
        .ok_or_else(|| GerbeError::Internal("no torsion on RP2".into()))?;
    let q = t.lift.with_coefficients(Coefficients::Quotient(Lattice::integral(1)))?;
    ensure(!connecting_hom(&CoefficientSES::integers(), &q)?.is_zero(), || {
        "the order-2 class has zero Bockstein".into()
    })?;
    Ok("5 masses and the RP2 class".into())
}

fn holonomy(seed: u64) -> Result<String> {
    let k = fixture("T2")?;
    let s = Surface::new(&k)?;
    let id = SimplicialMap::identity(&k);
    let mut r = rng(seed);
    for _ in 0..5 {
        let w = closed_cochain(&mut r, &k, 2);
        let g = zigzag_gerbe(&k, &w)?;
        let h = surface_holonomy(&s, &id, &canonical_connection(&g)?)?;
        let total = w.pair(&s.fundamental_cycle())?.remove(0);
        ensure(h == crate::exactalg::frac(&total), || "holonomy ≠ mass mod 1".into())?;
    }
    Ok("5 torus holonomies".into())
}

fn reduction() -> Result<String> {
    let k = fixture("S2")?;
    let s = Surface::new(&k)?;
    let first = k.simplices(2)[0].clone();
    for n in [-1i64, 0, 1, 3] {
        let signed = if s.orientation()[0] > 0 { n } else { -n };
        let q = twisted_cocycle(&k, &first, signed)?;
        let c = chern_class(&q)?;
        let number = c.class.representative().pair(&s.fundamental_cycle())?.remove(0);
        ensure(number == int_rat(n), || format!("Chern number {number} for n = {n}"))?;
        ensure(has_reduction(&q)? == (n == 0), || format!("reducibility wrong for n = {n}"))?;
        ensure(reducing_correction(&q)?.is_some() == (n == 0), || format!("direct solve disagrees for n = {n}"))?;
    }
    Ok("n ∈ {−1, 0, 1, 3}".into())
}

fn prequant(seed: u64) -> Result<String> {
    let mut r = rng(seed);
    for _ in 0..20 {
        let (f, g) = (poly(&mut r, 4), poly(&mut r, 4));
        ensure(commutator_identity(&f, &g)?, || format!("identity fails for {f}, {g}"))?;
    }
    Ok("20 pairs".into())
}

/// Runs every property; failures are reported, not raised.
pub fn run_suite(seed: u64) -> Vec<PropertyResult> {
    let mut out = Vec::new();
    for name in FIXTURE_NAMES {
        let (passed, detail) = match read_fixture(name, None) {
            Ok(f) => {
                let bad: Vec<String> = check_fixture(&f)
                    .into_iter()
                    .filter(|c| !c.passed())
                    .map(|c| format!("{}: expected {} got {}", c.property, c.expected, c.actual))
                    .collect();
                (bad.is_empty(), if bad.is_empty() { "ok".into() } else { bad.join("; ") })
            }
            Err(e) => (false, e.to_string()),
        };
        out.push(PropertyResult {
            name: format!("fixture:{name}"),
            passed,
            detail,
        });
    }
    let checks: Vec<(&str, Box<dyn Fn() -> Result<String>>)> = vec![
        ("coboundary_squared", Box::new(coboundary_squared)),
        ("smith_postconditions", Box::new(move || smith(seed))),
        ("zigzag", Box::new(move || zigzag(seed))),
        ("integrality_and_bockstein", Box::new(integrality)),
        ("surface_holonomy", Box::new(move || holonomy(seed))),
        ("reduction", Box::new(reduction)),
        ("prequant_identity", Box::new(move || prequant(seed))),
    ];
    for (name, f) in checks {
        let (passed, detail) = match f() {
            Ok(d) => (true, d),
            Err(e) => (false, e.to_string()),
        };
        out.push(PropertyResult {
            name: name.to_string(),
            passed,
            detail,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for r in run_suite(crate::random::DEFAULT_SEED) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }
}
