use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::univariate::{Coeff, UPoly};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Var {
    P,
    Q,
}

/// Polynomial in the symmetric coordinates, `sum c[i][j] p^i q^j`.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<T = f64> {
    // grid[i][j] is the coefficient of p^i q^j
    grid: Vec<Vec<T>>,
}

impl<T: Coeff> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly { grid: Vec::new() }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, T)>) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in terms {
            out.add_term(i, j, c);
        }
        out
    }

    fn add_term(&mut self, i: usize, j: usize, c: T) {
        if self.grid.len() <= i {
            self.grid.resize(i + 1, Vec::new());
        }
        let row = &mut self.grid[i];
        if row.len() <= j {
            row.resize(j + 1, T::zero());
        }
        row[j] = row[j].clone() + c;
    }

    fn trimmed(mut self) -> Self {
        for row in &mut self.grid {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.grid.last().is_some_and(|r| r.is_empty()) {
            self.grid.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    pub fn coeff(&self, i: usize, j: usize) -> T {
        self.grid
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Nonzero terms as `(i, j, c)` for `c p^i q^j`.
    pub fn terms(&self) -> Vec<(usize, usize, T)> {
        let mut v = Vec::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    v.push((i, j, c.clone()));
                }
            }
        }
        v
    }

    /// Largest `i + 2j`, the degree in `(t, s)` once `p = t+s`, `q = ts`.
    pub fn weighted_degree(&self) -> Option<usize> {
        self.terms().iter().map(|(i, j, _)| i + 2 * j).max()
    }

    pub fn degree_in(&self, var: Var) -> Option<usize> {
        self.terms()
            .iter()
            .map(|(i, j, _)| if var == Var::P { *i } else { *j })
            .max()
    }

    pub fn eval(&self, p: &T, q: &T) -> T {
        let mut acc = T::zero();
        for row in self.grid.iter().rev() {
            let mut inner = T::zero();
            for c in row.iter().rev() {
                inner = inner * q.clone() + c.clone();
            }
            acc = acc * p.clone() + inner;
        }
        acc
    }

    /// Coefficients as polynomials in the other variable, ascending in `var`.
    pub fn as_univariate_in(&self, var: Var) -> Vec<UPoly<T>> {
        let n = self.degree_in(var).map_or(0, |d| d + 1);
        let mut cols: Vec<Vec<T>> = vec![Vec::new(); n];
        for (i, j, c) in self.terms() {
            let (k, other) = if var == Var::P { (i, j) } else { (j, i) };
            let col = &mut cols[k];
            if col.len() <= other {
                col.resize(other + 1, T::zero());
            }
            col[other] = col[other].clone() + c;
        }
        cols.into_iter().map(UPoly::new).collect()
    }

    /// Substitutes a value for `var`, leaving a polynomial in the other one.
    pub fn specialize(&self, var: Var, value: &T) -> UPoly<T> {
        let parts = self.as_univariate_in(var);
        let mut acc = UPoly::zero();
        for c in parts.iter().rev() {
            acc = &acc.scale(value) + c;
        }
        acc
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> BiPoly<U> {
        BiPoly {
            grid: self
                .grid
                .iter()
                .map(|r| r.iter().map(&f).collect())
                .collect(),
        }
        .trimmed()
    }

    /// `(f(t) - f(s)) / (t - s)` written in `p = t+s`, `q = ts`, for `f` given
    /// by ascending coefficients.
    pub fn divided_difference(f: &UPoly<T>) -> Self {
        // h_0 = 0, h_1 = 1, h_k = p h_{k-1} - q h_{k-2}
        let mut h_prev = Self::zero();
        let mut h = Self::from_terms([(0, 0, T::one())]);
        let mut out = Self::zero();
        for k in 1..f.coeffs().len() {
            if k > 1 {
                let next = &(&h * &Self::p()) - &(&h_prev * &Self::q());
                h_prev = std::mem::replace(&mut h, next);
            }
            out = &out + &h.scale(&f.coeff(k));
        }
        out.trimmed()
    }

    pub fn p() -> Self {
        Self::from_terms([(1, 0, T::one())])
    }

    pub fn q() -> Self {
        Self::from_terms([(0, 1, T::one())])
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|c| c.clone() * s.clone())
    }

    pub fn derivative(&self, var: Var) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            let (k, di, dj) = if var == Var::P { (i, 1, 0) } else { (j, 0, 1) };
            if k > 0 {
                let mut m = T::zero();
                for _ in 0..k {
                    m = m + T::one();
                }
                out.add_term(i - di, j - dj, c * m);
            }
        }
        out.trimmed()
    }
}

impl<T: Coeff> std::ops::Add for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, c);
        }
        out.trimmed()
    }
}

impl<T: Coeff> std::ops::Sub for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (i, j, c) in rhs.terms() {
            out.add_term(i, j, -c);
        }
        out.trimmed()
    }
}

impl<T: Coeff> std::ops::Mul for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (i, j, a) in self.terms() {
            for (k, l, b) in rhs.terms() {
                out.add_term(i + k, j + l, a.clone() * b);
            }
        }
        out.trimmed()
    }
}

impl BiPoly<f64> {
    pub fn evalf(&self, p: f64, q: f64) -> f64 {
        self.eval(&p, &q)
    }

    /// `sum |c| |p|^i |q|^j`, the rounding scale of `evalf(p, q)`.
    pub fn eval_scale(&self, p: f64, q: f64) -> f64 {
        self.terms()
            .iter()
            .map(|(i, j, c)| c.abs() * p.abs().powi(*i as i32) * q.abs().powi(*j as i32))
            .sum()
    }

    pub fn norm_inf(&self) -> f64 {
        self.terms().iter().fold(0.0f64, |m, (_, _, c)| m.max(c.abs()))
    }

    pub fn to_exact(&self) -> BiPoly<BigRational> {
        self.map(|&c| to_rational(c))
    }
}

pub(crate) fn to_rational(x: f64) -> BigRational {
    BigRational::from_float(x).unwrap_or_else(|| BigRational::from_integer(BigInt::zero()))
}

pub(crate) fn from_rational(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Resultant of `a` and `b` with respect to `var`, as a polynomial in the
/// other variable. Computed over `T` without any rounding decisions.
pub fn resultant<T: Coeff>(a: &BiPoly<T>, b: &BiPoly<T>, var: Var) -> Result<UPoly<T>> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ca = a.as_univariate_in(var);
    let cb = b.as_univariate_in(var);
    let (m, n) = (ca.len() - 1, cb.len() - 1);
    if m == 0 || n == 0 {
        return Err(Error::DegenerateElimination);
    }
    let size = m + n;
    let mut rows: Vec<Vec<UPoly<T>>> = Vec::with_capacity(size);
    for r in 0..n {
        let mut row = vec![UPoly::zero(); size];
        for (k, c) in ca.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    for r in 0..m {
        let mut row = vec![UPoly::zero(); size];
        for (k, c) in cb.iter().rev().enumerate() {
            row[r + k] = c.clone();
        }
        rows.push(row);
    }
    Ok(determinant(&rows))
}

/// Determinant of a small matrix of polynomials by Laplace expansion along
/// rows, memoized on the set of columns already used.
fn determinant<T: Coeff>(rows: &[Vec<UPoly<T>>]) -> UPoly<T> {
    fn go<T: Coeff>(
        rows: &[Vec<UPoly<T>>],
        r: usize,
        used: u32,
        memo: &mut HashMap<u32, UPoly<T>>,
    ) -> UPoly<T> {
        if r == rows.len() {
            return UPoly::constant(T::one());
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = UPoly::zero();
        let mut sign_neg = false;
        for (c, entry) in rows[r].iter().enumerate() {
            if used & (1 << c) != 0 {
                continue;
            }
            if !entry.is_zero() {
                let minor = go(rows, r + 1, used | (1 << c), memo);
                let term = entry * &minor;
                acc = if sign_neg { &acc - &term } else { &acc + &term };
            }
            sign_neg = !sign_neg;
        }
        memo.insert(used, acc.clone());
        acc
    }
    assert!(rows.len() < 32, "Sylvester matrix too large");
    go(rows, 0, 0, &mut HashMap::new())
}

/// Floating resultant with an exact rational recomputation whenever the
/// floating result is close to losing its leading coefficient. An
/// identically zero return value means the inputs share a component.
pub fn resultant_eliminate(a: &BiPoly<f64>, b: &BiPoly<f64>, var: Var) -> Result<UPoly<f64>> {
    let approx = resultant(a, b, var)?;
    let scale = resultant_scale(a, b, var);
    let lead = approx.leading().copied().unwrap_or(0.0).abs();
    if approx.is_zero() || lead < 1e-10 * scale {
        let exact = resultant(&a.to_exact(), &b.to_exact(), var)?;
        return Ok(exact.map(from_rational));
    }
    Ok(approx)
}

/// Same as [`resultant_eliminate`] but always exact.
pub fn resultant_exact(a: &BiPoly<f64>, b: &BiPoly<f64>, var: Var) -> Result<UPoly<f64>> {
    Ok(resultant(&a.to_exact(), &b.to_exact(), var)?.map(from_rational))
}

fn resultant_scale(a: &BiPoly<f64>, b: &BiPoly<f64>, var: Var) -> f64 {
    let (m, n) = (
        a.degree_in(var).unwrap_or(0) as i32,
        b.degree_in(var).unwrap_or(0) as i32,
    );
    a.norm_inf().max(1e-300).powi(n) * b.norm_inf().max(1e-300).powi(m)
}
