//! Polynomial arithmetic: univariate and bivariate rings, real-root isolation
//! and resultant elimination.

mod bivariate;
mod roots;
mod univariate;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use bivariate::{resultant, resultant_eliminate, resultant_exact, BiPoly, Var};
pub use roots::{
    cubic_real_root_count, real_roots, real_roots_with, squarefree_part, Root, RootConfig,
    RootList,
};
pub use univariate::{Coeff, UPoly};

use crate::error::{Error, Result};

/// A monic polynomial `t^d + a_1 t^{d-1} + ... + a_{d-1} t` with zero constant
/// term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Poly {
    degree: usize,
    coeffs: Vec<f64>,
}

impl Poly {
    /// `coeffs` are `a_1, ..., a_{d-1}`.
    pub fn new(degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidDegree {
                found: 0,
                reason: "degree must be positive",
            });
        }
        if coeffs.len() != degree - 1 {
            return Err(Error::InvalidDegree {
                found: degree,
                reason: "expected degree - 1 coefficients",
            });
        }
        Ok(Poly { degree, coeffs })
    }

    /// Infers the degree from the coefficient count.
    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        Poly {
            degree: coeffs.len() + 1,
            coeffs: coeffs.to_vec(),
        }
    }

    pub fn monomial(degree: usize) -> Result<Self> {
        Self::new(degree, vec![0.0; degree.saturating_sub(1)])
    }

    /// `t^4 + a t^2 + b t`
    pub fn quartic(a: f64, b: f64) -> Self {
        Poly {
            degree: 4,
            coeffs: vec![0.0, a, b],
        }
    }

    /// `t^3 + alpha t^2 + beta t`
    pub fn cubic(alpha: f64, beta: f64) -> Self {
        Poly {
            degree: 3,
            coeffs: vec![alpha, beta],
        }
    }

    pub fn from_upoly(f: &UPoly<f64>) -> Result<Self> {
        let d = f.degree().ok_or(Error::ZeroPolynomial)?;
        if d == 0 || f.coeff(d) != 1.0 || f.coeff(0) != 0.0 {
            return Err(Error::NotNormalized);
        }
        Ok(Poly {
            degree: d,
            coeffs: (1..d).map(|k| f.coeff(d - k)).collect(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// `a_1, ..., a_{d-1}`
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// `a_k`, the coefficient of `t^{d-k}`; `a_0 = 1`, `a_d = 0`.
    pub fn a(&self, k: usize) -> f64 {
        match k {
            0 => 1.0,
            k if k < self.degree => self.coeffs[k - 1],
            _ => 0.0,
        }
    }

    pub fn a1(&self) -> f64 {
        self.a(1)
    }

    /// Coefficient of `t^k`.
    pub fn coeff_of(&self, k: usize) -> f64 {
        if k > self.degree {
            0.0
        } else {
            self.a(self.degree - k)
        }
    }

    pub fn to_upoly(&self) -> UPoly<f64> {
        UPoly::new((0..=self.degree).map(|k| self.coeff_of(k)).collect())
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.to_upoly().evalf(t)
    }

    pub fn derivative(&self) -> UPoly<f64> {
        self.to_upoly().derivative()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_upoly().fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_layout() {
        let f = Poly::quartic(-14.0, 24.0);
        assert_eq!(f.coeffs(), &[0.0, -14.0, 24.0]);
        assert_eq!(f.eval(0.0), 0.0);
        assert_eq!(f.to_upoly().coeffs(), &[0.0, 24.0, -14.0, 0.0, 1.0]);
        assert_eq!(Poly::from_upoly(&f.to_upoly()).unwrap(), f);
        assert_eq!(f.to_string(), "t^4 - 14t^2 + 24t");
    }

    #[test]
    fn poly_validation() {
        assert!(Poly::new(0, vec![]).is_err());
        assert!(Poly::new(3, vec![1.0]).is_err());
        assert_eq!(Poly::monomial(1).unwrap().to_upoly(), UPoly::monomial(1.0, 1));
        let not_monic = UPoly::new(vec![0.0, 1.0, 2.0]);
        assert_eq!(Poly::from_upoly(&not_monic), Err(Error::NotNormalized));
    }
}
