//! Relation curves `r(f) = {(t, s) : f(t) = f(s)}` in the symmetric
//! coordinates `p = t + s`, `q = ts`.

use serde::Serialize;

use crate::cells::{self, CellLabel};
use crate::error::{Error, Result};
use crate::polyring::{real_roots, BiPoly, Poly, RootList, UPoly};

/// `|phi(p, q)| <= ON_CURVE_TOL * (1 + |p|^3)` counts as on the curve.
pub const ON_CURVE_TOL: f64 = 1e-9;
/// `p^2 - 4q >= -DIAGONAL_TOL` counts as real.
pub const DIAGONAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RelationCurve {
    pub source: Poly,
    pub phi: BiPoly,
    /// `a_1`, present for even degree.
    pub exceptional: Option<f64>,
}

pub fn relation_curve(f: &Poly) -> Result<RelationCurve> {
    if f.degree() < 2 {
        return Err(Error::InvalidDegree {
            found: f.degree(),
            reason: "relation curves need degree at least 2",
        });
    }
    Ok(RelationCurve {
        source: f.clone(),
        phi: BiPoly::divided_difference(&f.to_upoly()),
        exceptional: f.degree().is_multiple_of(2).then(|| f.a1()),
    })
}

impl RelationCurve {
    pub fn eval(&self, p: f64, q: f64) -> f64 {
        self.phi.evalf(p, q)
    }

    pub fn residual(&self, p: f64, q: f64) -> f64 {
        self.eval(p, q).abs() / (1.0 + p.abs().powi(3))
    }

    pub fn on_curve(&self, p: f64, q: f64) -> bool {
        self.residual(p, q) <= ON_CURVE_TOL
    }

    pub fn is_real(p: f64, q: f64) -> bool {
        p * p - 4.0 * q >= -DIAGONAL_TOL
    }

    /// The real points of the curve over `t`: every `s != t` with
    /// `f(s) = f(t)`, plus `s = t` when `f'(t) = 0`.
    pub fn partners(&self, t: f64) -> Result<RootList> {
        // (f(s) - f(t)) / (s - t) = sum_j s^j sum_{k > j} c_k t^{k-1-j}
        let f = self.source.to_upoly();
        let d = self.source.degree();
        let coeffs = (0..d)
            .map(|j| {
                (j + 1..=d)
                    .map(|k| f.coeff(k) * t.powi((k - 1 - j) as i32))
                    .sum()
            })
            .collect();
        real_roots(&UPoly::new(coeffs), None)
    }

    /// Diagonal points `(2x, x^2)` of the curve, one per real root of `f'`.
    pub fn diagonal_points(&self) -> Result<Vec<(f64, f64)>> {
        Ok(real_roots(&self.source.derivative(), None)?
            .values()
            .into_iter()
            .map(|x| (2.0 * x, x * x))
            .collect())
    }

    /// Samples of real curve points as `(t, s)` pairs with `t <= s`, for `t`
    /// on a uniform grid over `[lo, hi]`.
    pub fn sample_ts(&self, lo: f64, hi: f64, n: usize) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for i in 0..n {
            let t = lo + (hi - lo) * i as f64 / (n.max(2) - 1) as f64;
            if let Ok(r) = self.partners(t) {
                out.extend(r.values().into_iter().filter(|&s| s >= t).map(|s| (t, s)));
            }
        }
        out
    }
}

/// `(t, s)` with `t <= s` for a real point; `None` when `p^2 < 4q` beyond tolerance.
pub fn to_ts(p: f64, q: f64) -> Option<(f64, f64)> {
    let disc = p * p - 4.0 * q;
    if disc < -DIAGONAL_TOL * (1.0 + p * p) {
        return None;
    }
    let r = disc.max(0.0).sqrt();
    Some(((p - r) / 2.0, (p + r) / 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CubicCurveClass {
    Empty,
    SinglePoint,
    HalfEllipse,
}

/// Shape of `r(t^3 + alpha t^2 + beta t)`, decided by the sign of `alpha^2 - 3 beta`.
pub fn classify_cubic_curve(alpha: f64, beta: f64) -> CubicCurveClass {
    let d = alpha * alpha - 3.0 * beta;
    if d.abs() <= 1e-12 * (alpha * alpha + 3.0 * beta.abs()) {
        CubicCurveClass::SinglePoint
    } else if d < 0.0 {
        CubicCurveClass::Empty
    } else {
        CubicCurveClass::HalfEllipse
    }
}

/// Diagonal endpoints `(2x, x^2)` of the half ellipse, `x` the roots of
/// `3t^2 + 2 alpha t + beta`.
pub fn cubic_curve_endpoints(alpha: f64, beta: f64) -> Option<[(f64, f64); 2]> {
    if classify_cubic_curve(alpha, beta) != CubicCurveClass::HalfEllipse {
        return None;
    }
    let r = (alpha * alpha - 3.0 * beta).sqrt();
    let (x1, x2) = ((-alpha - r) / 3.0, (-alpha + r) / 3.0);
    Some([(2.0 * x1, x1 * x1), (2.0 * x2, x2 * x2)])
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum CurveComponent {
    Irreducible,
    /// `{t + s = p}`
    Segment { p: f64 },
    /// `{(t - t0)^2 + (s - t0)^2 + lambda = 0}`
    Circle { center: f64, lambda: f64, imaginary: bool },
}

/// Splits `r(f)` for a quartic symmetric about some `t0` into its segment and
/// circle; any other quartic has an irreducible relation curve.
pub fn decompose_quartic(f: &Poly) -> Result<Vec<CurveComponent>> {
    let nf = cells::normalize(f)?;
    let tol = 1e-12 * (1.0 + nf.a.abs().powi(3) + nf.b * nf.b).sqrt();
    if nf.b.abs() > tol {
        return Ok(vec![CurveComponent::Irreducible]);
    }
    Ok(vec![
        CurveComponent::Segment { p: 2.0 * nf.t0 },
        CurveComponent::Circle {
            center: nf.t0,
            lambda: nf.a,
            imaginary: nf.a > 0.0,
        },
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchTag {
    Finite,
    Infinite,
    Endpoint,
}

/// Which branch of `r(f)` a real point lies on, for normalized `f` in `B` or
/// `B'`. In `B` the unbounded branch lies in `p < 0`; `B'` is mirrored by
/// `p -> -p`. Undefined at the exceptional point at infinity.
pub fn branch_of(f: &Poly, point: (f64, f64)) -> Result<BranchTag> {
    if f.degree() != 4 || f.a1() != 0.0 {
        return Err(Error::NotNormalized);
    }
    let (a, b) = (f.a(2), f.a(3));
    let cell = cells::classify(a, b);
    if cell != CellLabel::B && cell != CellLabel::BPrime {
        return Err(Error::WrongCell {
            expected: "B or B'",
            found: cell.to_string(),
        });
    }
    branch_tag(a, b, point.0, point.1)
}

pub(crate) fn branch_tag(a: f64, b: f64, p: f64, q: f64) -> Result<BranchTag> {
    let phi = p * (p * p - 2.0 * q) + a * p + b;
    let residual = phi.abs() / (1.0 + p.abs().powi(3));
    let disc = p * p - 4.0 * q;
    if residual > ON_CURVE_TOL || disc < -DIAGONAL_TOL * (1.0 + p * p) {
        return Err(Error::NotOnCurve { residual });
    }
    if disc.abs() <= DIAGONAL_TOL * (1.0 + p * p) {
        return Ok(BranchTag::Endpoint);
    }
    let p = if b > 0.0 { p } else { -p };
    Ok(if p < 0.0 {
        BranchTag::Infinite
    } else {
        BranchTag::Finite
    })
}

/// The exceptional value `a_1` attached to the unbounded branch.
pub fn asymptote(f: &Poly) -> Result<f64> {
    if f.degree() % 2 == 1 {
        return Err(Error::OddDegree);
    }
    Ok(f.a1())
}

/// Limit of `t + s` along the unbounded branch, `-2 a_1 / d`.
pub fn asymptote_sum(f: &Poly) -> Result<f64> {
    if f.degree() % 2 == 1 {
        return Err(Error::OddDegree);
    }
    Ok(-2.0 * f.a1() / f.degree() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_equations() {
        let rc = relation_curve(&Poly::quartic(-14.0, 24.0)).unwrap();
        let want = BiPoly::from_terms([(3, 0, 1.0), (1, 1, -2.0), (1, 0, -14.0), (0, 0, 24.0)]);
        assert_eq!(rc.phi, want);
        assert_eq!(rc.exceptional, Some(0.0));

        let rc = relation_curve(&Poly::cubic(0.5, -2.0)).unwrap();
        let want = BiPoly::from_terms([(2, 0, 1.0), (0, 1, -1.0), (1, 0, 0.5), (0, 0, -2.0)]);
        assert_eq!(rc.phi, want);
        assert_eq!(rc.exceptional, None);

        let rc = relation_curve(&Poly::monomial(2).unwrap()).unwrap();
        assert_eq!(rc.phi, BiPoly::p());
        assert!(relation_curve(&Poly::monomial(1).unwrap()).is_err());
    }

    #[test]
    fn cubic_classes() {
        assert_eq!(classify_cubic_curve(0.0, 1.0), CubicCurveClass::Empty);
        assert_eq!(classify_cubic_curve(0.0, 0.0), CubicCurveClass::SinglePoint);
        assert_eq!(classify_cubic_curve(0.0, -1.0), CubicCurveClass::HalfEllipse);
        let [e1, e2] = cubic_curve_endpoints(0.0, -1.0).unwrap();
        let x = 1.0 / 3f64.sqrt();
        assert!((e1.0 + 2.0 * x).abs() < 1e-15 && (e2.0 - 2.0 * x).abs() < 1e-15);
    }

    #[test]
    fn symmetric_quartics_split() {
        let parts = decompose_quartic(&Poly::quartic(-2.0, 0.0)).unwrap();
        assert_eq!(
            parts,
            vec![
                CurveComponent::Segment { p: 0.0 },
                CurveComponent::Circle { center: 0.0, lambda: -2.0, imaginary: false }
            ]
        );
        let parts = decompose_quartic(&Poly::quartic(1.0, 0.0)).unwrap();
        assert!(matches!(parts[1], CurveComponent::Circle { imaginary: true, .. }));
        let parts = decompose_quartic(&Poly::quartic(-14.0, 24.0)).unwrap();
        assert_eq!(parts, vec![CurveComponent::Irreducible]);
    }

    #[test]
    fn branches_of_reference_quartic() {
        let f = Poly::quartic(-14.0, 24.0);
        assert_eq!(branch_of(&f, (2.0, 1.0)).unwrap(), BranchTag::Endpoint);
        // finite branch point with p = 3: q = (27 - 42 + 24) / 6
        assert_eq!(branch_of(&f, (3.0, 1.5)).unwrap(), BranchTag::Finite);
        // infinite branch point with p = -1: q = (-1 + 14 + 24) / -2
        assert_eq!(branch_of(&f, (-1.0, -18.5)).unwrap(), BranchTag::Infinite);
        assert!(matches!(branch_of(&f, (3.0, 0.0)), Err(Error::NotOnCurve { .. })));
        assert!(matches!(
            branch_of(&Poly::quartic(1.0, 1.0), (0.0, 0.0)),
            Err(Error::WrongCell { .. })
        ));
    }

    #[test]
    fn asymptote_values() {
        let f = Poly::new(4, vec![5.0, 0.0, 1.0]).unwrap();
        assert_eq!(asymptote(&f).unwrap(), 5.0);
        assert_eq!(asymptote_sum(&f).unwrap(), -2.5);
        assert_eq!(asymptote(&Poly::quartic(-2.0, 0.0)).unwrap(), 0.0);
        assert_eq!(asymptote(&Poly::cubic(0.0, 1.0)), Err(Error::OddDegree));
    }
}
