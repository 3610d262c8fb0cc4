//! Certified real-root isolation for low-degree polynomials.
//!
//! The real line is cut at the real roots of the derivative (found
//! recursively), so the polynomial is monotone on every piece. A piece whose
//! ends have opposite signs holds exactly one simple root, which is bracketed
//! by safeguarded Newton/bisection until the bracket is narrower than the
//! configured tolerance. A derivative root at which the polynomial itself is
//! zero to within `zero_tol` is reported as a multiple root.

use serde::Serialize;

use super::univariate::UPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootConfig {
    /// Enclosure width, relative to `max(1, |root|)`.
    pub rel_tol: f64,
    /// `|f(c)| <= zero_tol * sum|a_k||c|^k` marks a derivative root `c` as a
    /// multiple root of `f`.
    pub zero_tol: f64,
    pub max_iter: usize,
}

impl Default for RootConfig {
    fn default() -> Self {
        RootConfig {
            rel_tol: 1e-12,
            zero_tol: 1e-11,
            max_iter: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Root {
    pub value: f64,
    pub multiplicity: u32,
    pub enclosure: (f64, f64),
    /// Set when the multiplicity came from merging a derivative root, i.e. the
    /// root may be a cluster of roots closer than the tolerance.
    pub merged: bool,
}

/// Sorted real roots with multiplicities.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct RootList {
    roots: Vec<Root>,
}

impl RootList {
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn values(&self) -> Vec<f64> {
        self.roots.iter().map(|r| r.value).collect()
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn total_multiplicity(&self) -> u32 {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    fn restrict(mut self, lo: f64, hi: f64) -> Self {
        self.roots.retain(|r| r.value >= lo && r.value <= hi);
        self
    }
}

/// All real roots of `f` inside `window` (default: the whole line).
pub fn real_roots(f: &UPoly<f64>, window: Option<(f64, f64)>) -> Result<RootList> {
    real_roots_with(f, window, &RootConfig::default())
}

pub fn real_roots_with(
    f: &UPoly<f64>,
    window: Option<(f64, f64)>,
    cfg: &RootConfig,
) -> Result<RootList> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.coeffs().iter().any(|c| !c.is_finite()) {
        return Err(Error::NonConvergence {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        });
    }
    // exact zeros at the origin
    let k = f.coeffs().iter().take_while(|c| **c == 0.0).count();
    let rest = UPoly::new(f.coeffs()[k..].to_vec()).monic();
    let bound = cauchy_bound(&rest);
    let mut roots = isolate(&rest, -bound, bound, cfg)?;
    if k > 0 {
        roots.push(Root {
            value: 0.0,
            multiplicity: k as u32,
            enclosure: (0.0, 0.0),
            merged: false,
        });
        roots.sort_by(|a, b| a.value.total_cmp(&b.value));
        // a root of `rest` that landed at the origin within tolerance joins it
        roots = merge_coincident(roots);
    }
    let list = RootList { roots };
    Ok(match window {
        Some((lo, hi)) => list.restrict(lo, hi),
        None => list,
    })
}

/// Product of the distinct irreducible factors: `f / gcd(f, f')`, made monic.
pub fn squarefree_part(f: &UPoly<f64>) -> Result<UPoly<f64>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.degree() == Some(0) {
        return Ok(UPoly::constant(1.0));
    }
    let g = f.gcd_tol(&f.derivative(), 1e-9);
    let (q, _) = f.monic().div_rem(&g);
    Ok(q.monic())
}

/// Number of distinct real roots of `t^3 + p t + q`.
pub fn cubic_real_root_count(p: f64, q: f64) -> u32 {
    if p == 0.0 && q == 0.0 {
        return 1;
    }
    let disc = -4.0 * p * p * p - 27.0 * q * q;
    let scale = 4.0 * (p * p * p).abs() + 27.0 * q * q;
    if disc.abs() <= 1e-12 * scale {
        2
    } else if disc > 0.0 {
        3
    } else {
        1
    }
}

fn cauchy_bound(monic: &UPoly<f64>) -> f64 {
    let c = monic.coeffs();
    let n = c.len() - 1;
    1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

fn merge_coincident(roots: Vec<Root>) -> Vec<Root> {
    let mut out: Vec<Root> = Vec::with_capacity(roots.len());
    for r in roots {
        if let Some(last) = out.last_mut() {
            if r.enclosure.0 <= last.enclosure.1 {
                last.multiplicity += r.multiplicity;
                last.merged = true;
                continue;
            }
        }
        out.push(r);
    }
    out
}

fn isolate(f: &UPoly<f64>, lo: f64, hi: f64, cfg: &RootConfig) -> Result<Vec<Root>> {
    match f.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => {
            let x = -f.coeff(0) / f.coeff(1);
            Ok(if x >= lo && x <= hi {
                vec![Root {
                    value: x,
                    multiplicity: 1,
                    enclosure: (x, x),
                    merged: false,
                }]
            } else {
                Vec::new()
            })
        }
        Some(_) => {
            let df = f.derivative().monic();
            let crit = isolate(&df, lo, hi, cfg)?;
            let mut out = Vec::new();
            let is_root: Vec<bool> = crit
                .iter()
                .map(|c| f.evalf(c.value).abs() <= cfg.zero_tol * f.eval_scale(c.value))
                .collect();
            for (c, &r) in crit.iter().zip(&is_root) {
                if r {
                    out.push(Root {
                        value: c.value,
                        multiplicity: c.multiplicity + 1,
                        enclosure: c.enclosure,
                        merged: true,
                    });
                }
            }
            let mut cuts = Vec::with_capacity(crit.len() + 2);
            cuts.push((lo, false));
            cuts.extend(crit.iter().zip(&is_root).map(|(c, &r)| (c.value, r)));
            cuts.push((hi, false));
            for w in cuts.windows(2) {
                let ((a, ra), (b, rb)) = (w[0], w[1]);
                if ra || rb || a >= b {
                    continue;
                }
                let (fa, fb) = (f.evalf(a), f.evalf(b));
                if fa == 0.0 {
                    out.push(point_root(a));
                    continue;
                }
                if fa.signum() * fb.signum() < 0.0 {
                    out.push(refine(f, a, b, fa, cfg)?);
                }
            }
            out.sort_by(|x, y| x.value.total_cmp(&y.value));
            Ok(out)
        }
    }
}

fn point_root(x: f64) -> Root {
    Root {
        value: x,
        multiplicity: 1,
        enclosure: (x, x),
        merged: false,
    }
}

/// Bracketed Newton with bisection fallback on a sign-changing interval.
fn refine(f: &UPoly<f64>, mut a: f64, mut b: f64, fa: f64, cfg: &RootConfig) -> Result<Root> {
    let df = f.derivative();
    let sa = fa.signum();
    let mut x = 0.5 * (a + b);
    for _ in 0..cfg.max_iter {
        let fx = f.evalf(x);
        if fx == 0.0 {
            return Ok(point_root(x));
        }
        if fx.signum() == sa {
            a = x;
        } else {
            b = x;
        }
        if b - a <= cfg.rel_tol * x.abs().max(1.0) {
            let v = 0.5 * (a + b);
            return Ok(Root {
                value: v,
                multiplicity: 1,
                enclosure: (a, b),
                merged: false,
            });
        }
        let d = df.evalf(x);
        let newton = x - fx / d;
        // damped step: accept Newton only when it stays well inside the bracket
        x = if d != 0.0 && newton > a && newton < b {
            let lo = a + 0.01 * (b - a);
            let hi = b - 0.01 * (b - a);
            newton.clamp(lo, hi)
        } else {
            0.5 * (a + b)
        };
    }
    Err(Error::NonConvergence { lo: a, hi: b })
}
