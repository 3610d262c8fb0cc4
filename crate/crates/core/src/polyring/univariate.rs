use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

/// Ring operations needed by the polynomial layer. Implemented by `f64` and by
/// exact rationals, which back the rescue path of the eliminator.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Dense univariate polynomial, coefficients in ascending order.
///
/// Trailing zero coefficients are always trimmed, so the zero polynomial has
/// an empty coefficient vector.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct UPoly<T = f64> {
    coeffs: Vec<T>,
}

impl<T: Coeff> UPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * t^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        let mut v = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        let mut k = T::one();
        for c in self.coeffs.iter().skip(1) {
            v.push(c.clone() * k.clone());
            k = k + T::one();
        }
        Self::new(v)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// `f(t + t0)`, by repeated synthetic division.
    pub fn shift(&self, t0: &T) -> Self {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                c[j] = c[j].clone() + t0.clone() * c[j + 1].clone();
            }
        }
        Self::new(c)
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> UPoly<U> {
        UPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Coeff> Add for &UPoly<T> {
    type Output = UPoly<T>;
    fn add(self, rhs: &UPoly<T>) -> UPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Sub for &UPoly<T> {
    type Output = UPoly<T>;
    fn sub(self, rhs: &UPoly<T>) -> UPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Coeff> Mul for &UPoly<T> {
    type Output = UPoly<T>;
    fn mul(self, rhs: &UPoly<T>) -> UPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] = v[i + j].clone() + a.clone() * b.clone();
            }
        }
        UPoly::new(v)
    }
}

impl<T: Coeff> Neg for &UPoly<T> {
    type Output = UPoly<T>;
    fn neg(self) -> UPoly<T> {
        UPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl UPoly<f64> {
    /// Polynomial with the given real roots and leading coefficient.
    pub fn from_roots(lead: f64, roots: &[f64]) -> Self {
        roots.iter().fold(UPoly::constant(lead), |acc, &r| {
            &acc * &UPoly::new(vec![-r, 1.0])
        })
    }

    pub fn evalf(&self, x: f64) -> f64 {
        self.eval(&x)
    }

    /// `sum |c_k| |x|^k`, the natural scale for rounding error in `eval(x)`.
    pub fn eval_scale(&self, x: f64) -> f64 {
        let ax = x.abs();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * ax + c.abs())
    }

    /// Largest coefficient magnitude.
    pub fn norm_inf(&self) -> f64 {
        self.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    /// Zeroes coefficients below `rel * norm_inf` and trims.
    pub fn chop(&self, rel: f64) -> Self {
        let cut = rel * self.norm_inf();
        UPoly::new(
            self.coeffs
                .iter()
                .map(|&c| if c.abs() <= cut { 0.0 } else { c })
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(&l) => self.scale(&(1.0 / l)),
            None => UPoly::zero(),
        }
    }

    /// Euclidean division `self = q * d + r`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd];
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![0.0; r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd] / lead;
            q[k] = c;
            for (j, dc) in d.coeffs.iter().enumerate() {
                r[k + j] -= c * dc;
            }
            r[k + dd] = 0.0;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    /// Monic gcd by the Euclidean algorithm; remainders whose coefficients fall
    /// below `rel` times the running scale are treated as zero.
    pub fn gcd_tol(&self, other: &Self, rel: f64) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            let r = if r.norm_inf() <= rel * a.norm_inf().max(1.0) {
                UPoly::zero()
            } else {
                r
            };
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

impl fmt::Display for UPoly<f64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0.0 {
                continue;
            }
            let sign = if c < 0.0 { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || (mag - 1.0).abs() > 0.0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{k}")?,
            }
        }
        Ok(())
    }
}
