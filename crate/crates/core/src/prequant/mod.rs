//! Symbolic prequantization on the plane with ω = dx∧dy.
//!
//! Conventions: X_f = −f_y ∂x + f_x ∂y, {f,g} = f_x g_y − f_y g_x, and
//! L_f = X_f − τ·α(X_f) + τ·f with α = x dy.

mod poly;

pub use poly::{parse_poly, Monomial, Poly};

use crate::error::{GerbeError, Result};

/// a·∂x + b·∂y + m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrequantOp {
    pub a: Poly,
    pub b: Poly,
    pub m: Poly,
}

impl PrequantOp {
    pub fn zero() -> Self {
        PrequantOp {
            a: Poly::zero(),
            b: Poly::zero(),
            m: Poly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.m.is_zero()
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        &(&(&self.a * &p.dx()) + &(&self.b * &p.dy())) + &(&self.m * p)
    }

    fn derive(&self, p: &Poly) -> Poly {
        &(&self.a * &p.dx()) + &(&self.b * &p.dy())
    }

    /// The commutator, again a first-order operator.
    pub fn commutator(&self, other: &PrequantOp) -> PrequantOp {
        PrequantOp {
            a: &self.derive(&other.a) - &other.derive(&self.a),
            b: &self.derive(&other.b) - &other.derive(&self.b),
            m: &self.derive(&other.m) - &other.derive(&self.m),
        }
    }

    pub fn sub(&self, other: &PrequantOp) -> PrequantOp {
        PrequantOp {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            m: &self.m - &other.m,
        }
    }

    pub fn add(&self, other: &PrequantOp) -> PrequantOp {
        PrequantOp {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            m: &self.m + &other.m,
        }
    }

    pub fn scale(&self, c: &crate::exactalg::Rational) -> PrequantOp {
        PrequantOp {
            a: self.a.scale(c),
            b: self.b.scale(c),
            m: self.m.scale(c),
        }
    }
}

fn tau_free(f: &Poly) -> Result<()> {
    if f.has_tau() {
        return Err(GerbeError::MalformedObservable(format!("observable {f} involves tau")));
    }
    Ok(())
}

/// Components (a, b) of X_f = a ∂x + b ∂y.
pub fn hamiltonian_field(f: &Poly) -> Result<(Poly, Poly)> {
    tau_free(f)?;
    Ok((-&f.dy(), f.dx()))
}

pub fn poisson_bracket(f: &Poly, g: &Poly) -> Result<Poly> {
    tau_free(f)?;
    tau_free(g)?;
    Ok(&(&f.dx() * &g.dy()) - &(&f.dy() * &g.dx()))
}

fn prequant_op_signed(f: &Poly, alpha_sign: i64) -> Result<PrequantOp> {
    let (a, b) = hamiltonian_field(f)?;
    // α(X_f) = x·b
    let alpha = &Poly::x() * &b;
    let tau = Poly::tau();
    let sign = crate::exactalg::int_rat(alpha_sign);
    let m = &(&tau * &alpha).scale(&sign) + &(&tau * f);
    Ok(PrequantOp { a, b, m })
}

pub fn prequant_op(f: &Poly) -> Result<PrequantOp> {
    prequant_op_signed(f, -1)
}

/// [L_f, L_g] − L_{f,g}.
pub fn commutator_defect(f: &Poly, g: &Poly) -> Result<PrequantOp> {
    let lhs = prequant_op(f)?.commutator(&prequant_op(g)?);
    let rhs = prequant_op(&poisson_bracket(f, g)?)?;
    Ok(lhs.sub(&rhs))
}

pub fn commutator_identity(f: &Poly, g: &Poly) -> Result<bool> {
    Ok(commutator_defect(f, g)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn fields() {
        assert_eq!(hamiltonian_field(&p("x")).unwrap(), (Poly::zero(), p("1")));
        assert_eq!(hamiltonian_field(&p("7/2")).unwrap(), (Poly::zero(), Poly::zero()));
        assert_eq!(hamiltonian_field(&p("x^2 + y^2")).unwrap(), (p("-2*y"), p("2*x")));
        assert!(matches!(hamiltonian_field(&p("tau*x")), Err(GerbeError::MalformedObservable(_))));
    }

    #[test]
    fn brackets() {
        assert_eq!(poisson_bracket(&p("x"), &p("y")).unwrap(), p("1"));
        assert_eq!(poisson_bracket(&p("x^2"), &p("y^2")).unwrap(), p("4*x*y"));
        let f = p("x^3 - x*y + 2");
        assert!(poisson_bracket(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn operators() {
        let one = prequant_op(&p("1")).unwrap();
        assert_eq!(one, PrequantOp { a: Poly::zero(), b: Poly::zero(), m: Poly::tau() });
        assert!(prequant_op(&Poly::zero()).unwrap().is_zero());
        let lx = prequant_op(&p("x")).unwrap();
        assert_eq!(lx.apply(&p("1")), Poly::zero());
        assert_eq!(lx.apply(&p("y")), p("1"));
        let ly = prequant_op(&p("y")).unwrap();
        assert_eq!(lx.commutator(&ly), one);
    }

    #[test]
    fn identity_pins_the_alpha_sign() {
        let (f, g) = (p("x"), p("y"));
        assert!(commutator_identity(&f, &g).unwrap());
        let lhs = prequant_op_signed(&f, 1).unwrap().commutator(&prequant_op_signed(&g, 1).unwrap());
        assert_ne!(lhs, prequant_op_signed(&p("1"), 1).unwrap());
    }

    #[test]
    fn listed_pairs() {
        for (f, g) in [("x", "y"), ("x^2", "y^2"), ("x^2+y", "x*y"), ("x*y^3 - 1/2", "x*y^3 - 1/2")] {
            assert!(commutator_identity(&p(f), &p(g)).unwrap(), "{f}, {g}");
        }
    }

    #[test]
    fn linearity() {
        let (f, g) = (p("x^2*y - 3"), p("y^4 + 2/3*x"));
        let c = rat(-5, 7);
        let combo = &f.scale(&c) + &g;
        let lhs = prequant_op(&combo).unwrap();
        let rhs = prequant_op(&f).unwrap().scale(&c).add(&prequant_op(&g).unwrap());
        assert_eq!(lhs, rhs);
    }
}
