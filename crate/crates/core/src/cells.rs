//! Normal form `t^4 + a t^2 + b t` of quartics and the nine-cell atlas of the
//! `(a, b)`-plane cut out by the semicubical parabola `27b^2 + 8a^3 = 0` and
//! the line `b = 0`.
//!
//! Naming convention: the unprimed cell of each pair (`A`, `B`, `E`) is the one
//! with `b > 0`. For `B` this is the component with critical points
//! `x1 < 0 < x2 < x3`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{real_roots, Poly, RootList, UPoly};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticNormalForm {
    pub t0: f64,
    pub a: f64,
    pub b: f64,
}

impl QuarticNormalForm {
    pub fn new(a: f64, b: f64) -> Self {
        QuarticNormalForm { t0: 0.0, a, b }
    }

    /// `t^4 + a t^2 + b t`
    pub fn to_poly(&self) -> Poly {
        Poly::quartic(self.a, self.b)
    }

    /// The polynomial this form was taken from, constant term dropped.
    pub fn original(&self) -> Poly {
        let g = self.to_poly().to_upoly().shift(&(-self.t0));
        let mut c = g.coeffs().to_vec();
        c[0] = 0.0;
        Poly::from_upoly(&UPoly::new(c)).expect("shift keeps the quartic monic")
    }

    pub fn cell(&self) -> CellLabel {
        classify(self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CellLabel {
    A,
    APrime,
    B,
    BPrime,
    C,
    D,
    E,
    EPrime,
    O,
}

impl CellLabel {
    pub const ALL: [CellLabel; 9] = [
        CellLabel::A,
        CellLabel::APrime,
        CellLabel::B,
        CellLabel::BPrime,
        CellLabel::C,
        CellLabel::D,
        CellLabel::E,
        CellLabel::EPrime,
        CellLabel::O,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CellLabel::A => "A",
            CellLabel::APrime => "A'",
            CellLabel::B => "B",
            CellLabel::BPrime => "B'",
            CellLabel::C => "C",
            CellLabel::D => "D",
            CellLabel::E => "E",
            CellLabel::EPrime => "E'",
            CellLabel::O => "O",
        }
    }

    pub fn parse(s: &str) -> Option<CellLabel> {
        let s = s.trim().replace('′', "'");
        CellLabel::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(&s))
    }

    /// Number of distinct real critical points of members of the cell.
    pub fn critical_point_count(self) -> usize {
        match self {
            CellLabel::B | CellLabel::BPrime | CellLabel::D => 3,
            CellLabel::E | CellLabel::EPrime => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for CellLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Translates `f` so that its `t^3` coefficient vanishes.
pub fn normalize(f: &Poly) -> Result<QuarticNormalForm> {
    if f.degree() != 4 {
        return Err(Error::InvalidDegree {
            found: f.degree(),
            reason: "the normal form is defined for quartics",
        });
    }
    let t0 = -f.a1() / 4.0;
    let g = f.to_upoly().shift(&t0);
    Ok(QuarticNormalForm {
        t0,
        a: g.coeff(2),
        b: g.coeff(1),
    })
}

fn boundary_tol(a: f64, b: f64) -> f64 {
    1e-12 * (1.0 + a.abs().powi(3) + b * b)
}

/// `27b^2 + 8a^3`
pub fn parabola(a: f64, b: f64) -> f64 {
    27.0 * b * b + 8.0 * a * a * a
}

pub fn classify(a: f64, b: f64) -> CellLabel {
    classify_with_margin(a, b).0
}

/// The cell together with the scaled distance `min(|b|, |27b^2 + 8a^3|) /
/// (1 + |a|^3 + b^2)` to the nearest boundary curve.
pub fn classify_with_margin(a: f64, b: f64) -> (CellLabel, f64) {
    let tol = boundary_tol(a, b);
    let disc = parabola(a, b);
    let margin = b.abs().min(disc.abs()) / (1.0 + a.abs().powi(3) + b * b);
    let b_zero = b.abs() <= tol;
    let disc_zero = disc.abs() <= tol;
    let label = match (b_zero, disc_zero) {
        (true, true) => CellLabel::O,
        (true, false) if a > 0.0 => CellLabel::C,
        (true, false) => CellLabel::D,
        (false, true) if b > 0.0 => CellLabel::E,
        (false, true) => CellLabel::EPrime,
        _ if disc < 0.0 && b > 0.0 => CellLabel::B,
        _ if disc < 0.0 => CellLabel::BPrime,
        _ if b > 0.0 => CellLabel::A,
        _ => CellLabel::APrime,
    };
    (label, margin)
}

/// Real roots of `f' = 4t^3 + 2at + b`, sorted, with multiplicities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalRoots {
    pub roots: RootList,
}

impl CriticalRoots {
    pub fn values(&self) -> Vec<f64> {
        self.roots.values()
    }

    pub fn distinct(&self) -> usize {
        self.roots.len()
    }

    /// `(x1, x2, x3)` when there are three distinct roots.
    pub fn triple(&self) -> Option<(f64, f64, f64)> {
        match self.values()[..] {
            [x1, x2, x3] => Some((x1, x2, x3)),
            _ => None,
        }
    }
}

pub fn critical_roots(nf: &QuarticNormalForm) -> CriticalRoots {
    let df = UPoly::new(vec![nf.b, 2.0 * nf.a, 0.0, 4.0]);
    CriticalRoots {
        roots: real_roots(&df, None).expect("derivative of a quartic is nonzero"),
    }
}

/// Sample of a cell point. Open cells are rejection sampled with the relative
/// margin; points of the boundary curves are placed on them, with `|a|`
/// above the margin.
pub fn sample_cell<R: Rng + ?Sized>(rng: &mut R, label: CellLabel, margin: f64) -> (f64, f64) {
    if let CellLabel::E | CellLabel::EPrime = label {
        let a: f64 = -rng.random_range(margin.max(0.05)..6.0);
        let b = (-8.0 * a * a * a / 27.0).sqrt();
        return (a, if label == CellLabel::E { b } else { -b });
    }
    loop {
        let a: f64 = rng.random_range(-12.0..6.0);
        let b = match label {
            CellLabel::C | CellLabel::D | CellLabel::O => 0.0,
            _ => rng.random_range(-30.0..30.0),
        };
        let a = if label == CellLabel::O { 0.0 } else { a };
        let (got, m) = classify_with_margin(a, b);
        let interior = matches!(label, CellLabel::C | CellLabel::D | CellLabel::O)
            || m > margin;
        if got == label && interior && (a.abs() > margin || label == CellLabel::O) {
            return (a, b);
        }
    }
}

/// Rejection sample of `f` in `B` with `27b^2 + 8a^3 < -margin * 8|a|^3` and
/// `b > margin |a|^{3/2}`, so that all three critical points are well separated.
pub fn sample_b<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> QuarticNormalForm {
    loop {
        let a: f64 = rng.random_range(-10.0..-0.5);
        let b: f64 = rng.random_range(0.0..30.0);
        let scale = a.abs().powi(3);
        if parabola(a, b) < -margin * 8.0 * scale && b > margin * scale.sqrt() {
            return QuarticNormalForm::new(a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_examples() {
        let nf = normalize(&Poly::quartic(-2.0, 0.0)).unwrap();
        assert_eq!((nf.t0, nf.a, nf.b), (0.0, -2.0, 0.0));
        let f = Poly::new(4, vec![4.0, 0.0, 0.0]).unwrap();
        let nf = normalize(&f).unwrap();
        assert_eq!((nf.t0, nf.a, nf.b), (-1.0, -6.0, 8.0));
        assert_eq!(nf.original(), f);
        assert!(normalize(&Poly::cubic(0.0, 1.0)).is_err());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(-14.0, 24.0), CellLabel::B);
        assert_eq!(classify(-14.0, -24.0), CellLabel::BPrime);
        assert_eq!(classify(-2.0, 0.0), CellLabel::D);
        assert_eq!(classify(1.0, 0.0), CellLabel::C);
        assert_eq!(classify(0.0, 0.0), CellLabel::O);
        assert_eq!(classify(1.0, 1.0), CellLabel::A);
        assert_eq!(classify(1.0, -1.0), CellLabel::APrime);
        assert_eq!(classify(-6.0, 8.0), CellLabel::E);
        assert_eq!(classify(-6.0, -8.0), CellLabel::EPrime);
    }

    #[test]
    fn critical_root_examples() {
        let r = critical_roots(&QuarticNormalForm::new(-14.0, 24.0));
        let v = r.values();
        for (x, e) in v.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((x - e).abs() < 1e-12);
        }
        let r = critical_roots(&QuarticNormalForm::new(-2.0, 0.0));
        assert_eq!(r.distinct(), 3);
        assert!((r.values()[0] + 1.0).abs() < 1e-12);
        let r = critical_roots(&QuarticNormalForm::new(1.0, 0.0));
        assert_eq!(r.values(), vec![0.0]);
        let e = critical_roots(&QuarticNormalForm::new(-6.0, 8.0));
        assert_eq!(e.distinct(), 2);
        assert_eq!(e.roots.total_multiplicity(), 3);
    }

    #[test]
    fn label_parsing() {
        assert_eq!(CellLabel::parse("b'"), Some(CellLabel::BPrime));
        assert_eq!(CellLabel::parse("B′"), Some(CellLabel::BPrime));
        assert_eq!(CellLabel::parse("x"), None);
    }
}
