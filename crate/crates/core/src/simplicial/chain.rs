use num_traits::Zero;

use super::complex::{Complex, Simplex};
use crate::error::{GerbeError, Result};
use crate::exactalg::Integer;

/// An integral k-chain.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain {
    complex: Complex,
    degree: usize,
    coefficients: Vec<Integer>,
}

impl Chain {
    pub fn zero(complex: &Complex, degree: usize) -> Self {
        Chain {
            complex: complex.clone(),
            degree,
            coefficients: vec![Integer::zero(); complex.count(degree)],
        }
    }

    pub fn from_coefficients(complex: &Complex, degree: usize, coefficients: Vec<Integer>) -> Result<Self> {
        if coefficients.len() != complex.count(degree) {
            return Err(GerbeError::MalformedInput(format!(
                "expected {} coefficients for a {degree}-chain, got {}",
                complex.count(degree),
                coefficients.len()
            )));
        }
        Ok(Chain {
            complex: complex.clone(),
            degree,
            coefficients,
        })
    }

    /// Sparse construction; repeated simplices accumulate.
    pub fn from_entries<N: Into<Integer>>(
        complex: &Complex,
        degree: usize,
        entries: impl IntoIterator<Item = (Simplex, N)>,
    ) -> Result<Self> {
        let mut chain = Chain::zero(complex, degree);
        for (s, n) in entries {
            let i = complex
                .index_of(&s)
                .filter(|_| s.dim() == degree)
                .ok_or_else(|| GerbeError::MalformedInput(format!("{s} is not a {degree}-simplex of the complex")))?;
            chain.coefficients[i] += n.into();
        }
        Ok(chain)
    }

    /// The sum of all `degree`-simplices with coefficient 1.
    pub fn all_ones(complex: &Complex, degree: usize) -> Self {
        Chain {
            complex: complex.clone(),
            degree,
            coefficients: vec![Integer::from(1); complex.count(degree)],
        }
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[Integer] {
        &self.coefficients
    }

    pub fn coefficient_of(&self, s: &Simplex) -> Integer {
        self.complex
            .index_of(s)
            .filter(|_| s.dim() == self.degree)
            .map_or_else(Integer::zero, |i| self.coefficients[i].clone())
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Simplex, &Integer)> + '_ {
        self.complex
            .simplices(self.degree)
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, n)| !n.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    /// ∂(v₀…v_k) = Σⱼ (−1)ʲ (…v̂ⱼ…). The boundary of a 0-chain is the empty
    /// (−1)-chain, represented as a zero 0-chain.
    pub fn boundary(&self) -> Chain {
        if self.degree == 0 {
            return Chain::zero(&self.complex, 0);
        }
        let mut out = vec![Integer::zero(); self.complex.count(self.degree - 1)];
        for (i, n) in self.coefficients.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            for (j, &f) in self.complex.face_indices(self.degree, i).iter().enumerate() {
                if j % 2 == 0 {
                    out[f] += n;
                } else {
                    out[f] -= n;
                }
            }
        }
        Chain {
            complex: self.complex.clone(),
            degree: self.degree - 1,
            coefficients: out,
        }
    }

    pub fn is_cycle(&self) -> bool {
        self.degree == 0 || self.boundary().is_zero()
    }

    fn check(&self, other: &Chain) -> Result<()> {
        if self.degree != other.degree || *self.complex != *other.complex {
            return Err(GerbeError::Precondition("chains live on different carriers".into()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Chain) -> Result<Chain> {
        self.check(other)?;
        Ok(Chain {
            complex: self.complex.clone(),
            degree: self.degree,
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Chain) -> Result<Chain> {
        self.check(other)?;
        Ok(Chain {
            complex: self.complex.clone(),
            degree: self.degree,
            coefficients: self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn neg(&self) -> Chain {
        Chain {
            complex: self.complex.clone(),
            degree: self.degree,
            coefficients: self.coefficients.iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simplicial::build_complex;

    #[test]
    fn boundary_of_boundary_vanishes() {
        let k = build_complex(&[vec![0, 1, 2, 3]]).unwrap();
        for d in 1..=3 {
            let c = Chain::all_ones(&k, d);
            assert!(c.boundary().boundary().is_zero());
        }
    }

    #[test]
    fn triangle_boundary() {
        let k = build_complex(&[vec![0, 1, 2]]).unwrap();
        let t = Chain::all_ones(&k, 2);
        let b = t.boundary();
        let e = |v: Vec<usize>| b.coefficient_of(&Simplex::new(v).unwrap());
        assert_eq!(e(vec![1, 2]), Integer::from(1));
        assert_eq!(e(vec![0, 2]), Integer::from(-1));
        assert_eq!(e(vec![0, 1]), Integer::from(1));
    }
}
