//! Families of cubic directions through a fixed quartic and the structure of
//! the sets of lines meeting it in exactly three conditions.
//!
//! For `f = t^4 + a t^2 + b t` in `B`, the relation curve is the graph
//! `q = (p^3 + a p + b) / 2p` over `p ∈ [2x1, 0)` (unbounded branch) and
//! `p ∈ [2x2, 2x3]` (bounded branch). The cubic `g = t^3 - 3∇t^2 + βt` has
//! relation curve `{F_∇ = -β}` with `F_∇ = p^2 - q - 3∇p`, so every
//! question about `r(f) ∩ r(g)` reduces to level sets of
//! `φ(p) = p^2/2 - a/2 - b/2p - 3∇p` on those two intervals.

mod oracle;
mod summary;

use serde::Serialize;

pub use oracle::{
    circle_has_interior_extremum, d_cell_threshold, fiber_components, fiber_oracle,
    fiber_oracle_multi, membership_pieces, DThreshold, FiberTarget, Piece, Sweep,
};
pub use summary::{lines_through_summary, CellSummary, ExpectedStructure, SummaryOptions};

use crate::cells::{classify, critical_roots, CellLabel, QuarticNormalForm};
use crate::error::{Error, Result};
use crate::polyring::{real_roots, UPoly};

/// Distance from a breakpoint below which a fiber is reported as ambiguous.
pub const BOUNDARY_TOL: f64 = 1e-6;
/// Absolute bisection tolerance on `∇`.
pub const BISECT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiberType {
    Empty,
    Point,
    ClosedSegment,
    HalfOpenInterval,
    OpenInterval,
    HalfOpenMinusPoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum FiberVerdict {
    Fiber(FiberType),
    Ambiguous { near: String, distance: f64 },
}

impl FiberVerdict {
    pub fn fiber(&self) -> Option<FiberType> {
        match self {
            FiberVerdict::Fiber(t) => Some(*t),
            FiberVerdict::Ambiguous { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Breakpoints {
    pub omega1: f64,
    pub omega2: f64,
    pub omega3: f64,
    pub tau: f64,
    pub mu: f64,
    pub xi: f64,
    pub kappa: f64,
    pub nu: f64,
    pub c: f64,
    pub m23: f64,
    pub x: [f64; 3],
}

impl Breakpoints {
    /// Each ordering as `(name, margin)`; a positive margin means it holds.
    pub fn orderings(&self) -> Vec<(&'static str, f64)> {
        let [_, x2, _] = self.x;
        vec![
            ("omega1 < tau", self.tau - self.omega1),
            ("tau < mu", self.mu - self.tau),
            ("mu < xi", self.xi - self.mu),
            ("m23 < omega2", self.omega2 - self.m23),
            ("m23 < omega3", self.omega3 - self.m23),
            ("x2 < c", self.c - x2),
            ("c < m23", self.m23 - self.c),
            ("c < kappa", self.kappa - self.c),
            ("kappa < m23", self.m23 - self.kappa),
            ("c < nu", self.nu - self.c),
            ("nu < m23", self.m23 - self.nu),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetamorphosisRecord {
    pub beta1: f64,
    pub beta2: f64,
    pub beta3: f64,
    pub beta4: Option<f64>,
    pub beta_sup1: Option<f64>,
    pub beta_sup2: Option<f64>,
    pub beta_sup3: Option<f64>,
    pub beta_sup4: Option<f64>,
}

/// Quartic in `B` with its critical points, the common input of this module.
#[derive(Debug, Clone, Copy)]
struct BQuartic {
    a: f64,
    b: f64,
    x: [f64; 3],
}

impl BQuartic {
    fn new(nf: &QuarticNormalForm) -> Result<Self> {
        let cell = classify(nf.a, nf.b);
        if cell != CellLabel::B {
            return Err(Error::WrongCell {
                expected: "B",
                found: cell.to_string(),
            });
        }
        let (x1, x2, x3) = critical_roots(nf)
            .triple()
            .ok_or(Error::WrongCell {
                expected: "B",
                found: "a polynomial without three critical points".into(),
            })?;
        Ok(BQuartic {
            a: nf.a,
            b: nf.b,
            x: [x1, x2, x3],
        })
    }

    /// `F_∇` restricted to the curve, as a function of `p`.
    fn phi(&self, nabla: f64, p: f64) -> f64 {
        p * p / 2.0 - self.a / 2.0 - self.b / (2.0 * p) - 3.0 * nabla * p
    }

    /// `6∇x - 3x^2`, minus the value of `F_∇` at the diagonal point over `x`.
    fn diagonal_beta(nabla: f64, x: f64) -> f64 {
        6.0 * nabla * x - 3.0 * x * x
    }

    /// Roots of `p^3 - 3∇p^2 + b/2`, the critical points of `φ`.
    fn critical_ps(&self, nabla: f64) -> Vec<(f64, u32)> {
        let h = UPoly::new(vec![self.b / 2.0, 0.0, -3.0 * nabla, 1.0]);
        real_roots(&h, None)
            .expect("monic cubic")
            .roots()
            .iter()
            .map(|r| (r.value, r.multiplicity))
            .collect()
    }

    fn beta4(&self, nabla: f64) -> Option<f64> {
        let p_star = self
            .critical_ps(nabla)
            .into_iter()
            .find(|&(p, _)| p < 0.0)?
            .0;
        (p_star > 2.0 * self.x[0]).then(|| -self.phi(nabla, p_star))
    }

    /// Largest `β` whose level set still meets the unbounded branch.
    fn beta_inf(&self, nabla: f64) -> f64 {
        let b1 = Self::diagonal_beta(nabla, self.x[0]);
        self.beta4(nabla).map_or(b1, |b4| b4.max(b1))
    }

    /// The local maximum `p_a` and local minimum `p_b` of `φ` on `p > 0`,
    /// equal when they have merged.
    fn positive_pair(&self, nabla: f64) -> Option<(f64, f64)> {
        let pos: Vec<(f64, u32)> = self
            .critical_ps(nabla)
            .into_iter()
            .filter(|&(p, _)| p > 0.0)
            .collect();
        match pos[..] {
            [(pa, _), (pb, _)] => Some((pa, pb)),
            [(p, m)] if m >= 2 => Some((p, p)),
            _ => None,
        }
    }

    /// `(β¹, β², β³, β⁴)`: minus the values of `φ` at `2x2`, `p_b`, `2x3`, `p_a`.
    fn finite_betas(&self, nabla: f64) -> Option<[f64; 4]> {
        let (pa, pb) = self.positive_pair(nabla)?;
        Some([
            -self.phi(nabla, 2.0 * self.x[1]),
            -self.phi(nabla, pb),
            -self.phi(nabla, 2.0 * self.x[2]),
            -self.phi(nabla, pa),
        ])
    }

    fn c(&self) -> f64 {
        self.b.cbrt() / 2.0
    }

    fn m23(&self) -> f64 {
        (self.x[1] + self.x[2]) / 2.0
    }
}

pub fn focal_values(nf: &QuarticNormalForm) -> Result<(f64, f64, f64)> {
    let q = BQuartic::new(nf)?;
    let w = |x: f64| (6.0 * x * x - q.a) / (12.0 * x);
    Ok((w(q.x[0]), w(q.x[1]), w(q.x[2])))
}

pub fn metamorphoses(nf: &QuarticNormalForm, nabla: f64) -> Result<MetamorphosisRecord> {
    let q = BQuartic::new(nf)?;
    let sup = if nabla > q.c() && nabla <= q.m23() {
        q.finite_betas(nabla)
    } else {
        None
    };
    Ok(MetamorphosisRecord {
        beta1: BQuartic::diagonal_beta(nabla, q.x[0]),
        beta2: BQuartic::diagonal_beta(nabla, q.x[1]),
        beta3: BQuartic::diagonal_beta(nabla, q.x[2]),
        beta4: q.beta4(nabla),
        beta_sup1: sup.map(|s| s[0]),
        beta_sup2: sup.map(|s| s[1]),
        beta_sup3: sup.map(|s| s[2]),
        beta_sup4: sup.map(|s| s[3]),
    })
}

/// Critical points of `F_∇` restricted to the bounded branch, strictly inside it.
pub fn interior_finite_critical_points(nf: &QuarticNormalForm, nabla: f64) -> Result<Vec<f64>> {
    let q = BQuartic::new(nf)?;
    let (lo, hi) = (2.0 * q.x[1], 2.0 * q.x[2]);
    Ok(q
        .critical_ps(nabla)
        .into_iter()
        .filter(|&(p, m)| m == 1 && p > lo && p < hi)
        .map(|(p, _)| p)
        .collect())
}

/// Sign-change bisection on `[lo, hi]` to absolute tolerance `tol`.
pub fn bisect(mut g: impl FnMut(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64> {
    let (glo, ghi) = (g(lo), g(hi));
    if glo == 0.0 {
        return Ok(lo);
    }
    if ghi == 0.0 {
        return Ok(hi);
    }
    if glo.signum() == ghi.signum() || glo.is_nan() || ghi.is_nan() {
        return Err(Error::BadBracket { lo, hi });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol {
            return Ok(mid);
        }
        let gm = g(mid);
        if gm == 0.0 {
            return Ok(mid);
        }
        if gm.signum() == glo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Err(Error::NonConvergence { lo, hi })
}

pub fn breakpoints(nf: &QuarticNormalForm) -> Result<Breakpoints> {
    let q = BQuartic::new(nf)?;
    let [x1, x2, x3] = q.x;
    let (omega1, omega2, omega3) = focal_values(nf)?;
    let tau = (x1 + x2) / 2.0;
    let c = q.c();
    let m23 = q.m23();

    // the largest ellipse centre whose level through (x_i, x_i) still meets
    // the unbounded branch
    let reach = |xi: f64| {
        let g = |n: f64| q.beta_inf(n) - BQuartic::diagonal_beta(n, xi);
        let mut hi = xi.max(tau + 1.0);
        let mut k = 0;
        while g(hi) > 0.0 && k < 60 {
            hi += (hi - tau).max(1.0);
            k += 1;
        }
        bisect(g, tau, hi, BISECT_TOL)
    };
    let mu = reach(x2)?;
    let xi = reach(x3)?;

    let lo = c + 1e-9 * (1.0 + c);
    let sup = |n: f64| q.finite_betas(n).unwrap_or([f64::NAN; 4]);
    let kappa = bisect(|n| sup(n)[2] - sup(n)[3], lo, m23, BISECT_TOL)?;
    let nu = bisect(|n| sup(n)[0] - sup(n)[1], lo, m23, BISECT_TOL)?;

    let bp = Breakpoints {
        omega1,
        omega2,
        omega3,
        tau,
        mu,
        xi,
        kappa,
        nu,
        c,
        m23,
        x: q.x,
    };
    if let Some((name, m)) = bp.orderings().into_iter().find(|(_, m)| *m <= 0.0) {
        return Err(Error::OrderingViolated(format!("{name} (margin {m:e})")));
    }
    Ok(bp)
}

fn near(nabla: f64, marks: &[(&str, f64)]) -> Option<FiberVerdict> {
    marks
        .iter()
        .map(|(n, v)| (n, (nabla - v).abs()))
        .filter(|(_, d)| *d < BOUNDARY_TOL)
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(n, d)| FiberVerdict::Ambiguous {
            near: n.to_string(),
            distance: d,
        })
}

fn exactly(nabla: f64, v: f64) -> bool {
    (nabla - v).abs() <= 1e-12 * (1.0 + v.abs())
}

/// Slice of the two-infinite-one-finite set over the family with centre `∇`.
pub fn heart_fiber(nf: &QuarticNormalForm, nabla: f64) -> Result<FiberVerdict> {
    Ok(heart_fiber_with(&breakpoints(nf)?, nabla))
}

pub fn heart_fiber_with(bp: &Breakpoints, nabla: f64) -> FiberVerdict {
    use FiberType::*;
    if exactly(nabla, bp.tau) {
        return FiberVerdict::Fiber(Point);
    }
    if let Some(v) = near(nabla, &[("tau", bp.tau), ("mu", bp.mu), ("xi", bp.xi)]) {
        return v;
    }
    FiberVerdict::Fiber(if nabla < bp.tau {
        Empty
    } else if nabla < bp.mu {
        ClosedSegment
    } else if nabla < bp.xi {
        HalfOpenInterval
    } else {
        Empty
    })
}

/// Slice of the three-finite set over the family with centre `∇`.
pub fn diamond_fiber(nf: &QuarticNormalForm, nabla: f64) -> Result<FiberVerdict> {
    Ok(diamond_fiber_with(&breakpoints(nf)?, nabla))
}

pub fn diamond_fiber_with(bp: &Breakpoints, nabla: f64) -> FiberVerdict {
    use FiberType::*;
    if exactly(nabla, bp.m23) {
        return FiberVerdict::Fiber(Point);
    }
    let marks = [
        ("c", bp.c),
        ("kappa", bp.kappa),
        ("nu", bp.nu),
        ("m23", bp.m23),
    ];
    if let Some(v) = near(nabla, &marks) {
        return v;
    }
    let (lo, hi) = (bp.kappa.min(bp.nu), bp.kappa.max(bp.nu));
    FiberVerdict::Fiber(if nabla <= bp.c || nabla > bp.m23 {
        Empty
    } else if nabla > hi {
        ClosedSegment
    } else if nabla > lo {
        HalfOpenInterval
    } else {
        OpenInterval
    })
}

/// Slice over `∇` of the three-condition set of `t^4 - 2t^2`.
pub fn d_cell_fiber(nabla: f64) -> FiberVerdict {
    use FiberType::*;
    let x = nabla.abs();
    if x == 0.0 {
        return FiberVerdict::Ambiguous {
            near: "0".into(),
            distance: 0.0,
        };
    }
    FiberVerdict::Fiber(if x > 0.5 {
        Empty
    } else if x == 0.5 {
        Point
    } else if x > 2f64.sqrt() / 3.0 {
        ClosedSegment
    } else if x > 1.0 / 3.0 {
        HalfOpenInterval
    } else {
        HalfOpenMinusPoint
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fb() -> QuarticNormalForm {
        QuarticNormalForm::new(-14.0, 24.0)
    }

    #[test]
    fn reference_focal_values() {
        let (w1, w2, w3) = focal_values(&fb()).unwrap();
        assert!((w1 + 17.0 / 9.0).abs() < 1e-12);
        assert!((w2 - 5.0 / 3.0).abs() < 1e-12);
        assert!((w3 - 19.0 / 12.0).abs() < 1e-12);
        assert!(w3 < 2.0);
        assert!(focal_values(&QuarticNormalForm::new(1.0, 1.0)).is_err());
    }

    #[test]
    fn reference_breakpoints() {
        let bp = breakpoints(&fb()).unwrap();
        assert!((bp.tau + 1.0).abs() < 1e-12);
        assert!((bp.m23 - 1.5).abs() < 1e-12);
        assert!((bp.c - 24f64.cbrt() / 2.0).abs() < 1e-15);
        assert!(bp.omega1 < bp.tau && bp.tau < bp.mu && bp.mu < bp.xi);
        assert!(bp.kappa > bp.c && bp.kappa < bp.m23);
        assert!(bp.nu > bp.c && bp.nu < bp.m23);
    }

    #[test]
    fn diagonal_betas() {
        let r = metamorphoses(&fb(), 1.0).unwrap();
        assert!((r.beta2 - 3.0).abs() < 1e-12);
        assert!(r.beta_sup1.is_none());
        let r = metamorphoses(&fb(), 1.49).unwrap();
        let s = [r.beta_sup1, r.beta_sup2, r.beta_sup3, r.beta_sup4].map(Option::unwrap);
        assert!(s[0].min(s[1]) > s[2].max(s[3]));
        assert_eq!(interior_finite_critical_points(&fb(), 1.5).unwrap().len(), 2);
        assert!(interior_finite_critical_points(&fb(), 1.0).unwrap().is_empty());
    }

    #[test]
    fn reference_fibers() {
        use FiberType::*;
        let f = fb();
        assert_eq!(heart_fiber(&f, -1.0).unwrap(), FiberVerdict::Fiber(Point));
        assert_eq!(heart_fiber(&f, -10.0).unwrap(), FiberVerdict::Fiber(Empty));
        assert_eq!(diamond_fiber(&f, 1.5).unwrap(), FiberVerdict::Fiber(Point));
        assert_eq!(diamond_fiber(&f, 1.0).unwrap(), FiberVerdict::Fiber(Empty));
        let bp = breakpoints(&f).unwrap();
        assert_eq!(heart_fiber_with(&bp, bp.mu), FiberVerdict::Ambiguous {
            near: "mu".into(),
            distance: 0.0
        });
    }

    #[test]
    fn d_cell_list() {
        use FiberType::*;
        assert_eq!(d_cell_fiber(0.5), FiberVerdict::Fiber(Point));
        assert_eq!(d_cell_fiber(-0.49), FiberVerdict::Fiber(ClosedSegment));
        assert_eq!(d_cell_fiber(0.4), FiberVerdict::Fiber(HalfOpenInterval));
        assert_eq!(d_cell_fiber(0.3), FiberVerdict::Fiber(HalfOpenMinusPoint));
        assert_eq!(d_cell_fiber(0.7), FiberVerdict::Fiber(Empty));
        assert!(d_cell_fiber(0.0).fiber().is_none());
    }
}
