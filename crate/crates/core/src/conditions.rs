//! Elementary conditions shared by all polynomials of an affine line in `P_4`.
//!
//! A line is stored canonically as `(f, g)` with `g` monic of lower degree and
//! the `t^{deg g}` coefficient of `f` equal to zero. The conditions shared by
//! the whole line are the points of `r(f) ∩ r(g)`, plus the exceptional
//! condition when `a_1` is constant along the line.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{real_roots, resultant_eliminate, BiPoly, Poly, RootList, UPoly, Var};
use crate::symcurve::{to_ts, DIAGONAL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ElementaryCondition {
    /// `f(t) = f(s)`, `t < s`
    PairPoint { t: f64, s: f64 },
    /// `f'(t) = 0`
    CriticalPoint { t: f64 },
    /// `a_1 = alpha`
    Exceptional { alpha: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub condition: ElementaryCondition,
    /// Symmetric coordinates of a geometric witness.
    pub point: Option<(f64, f64)>,
    /// Intersection multiplicity read off the eliminant.
    pub multiplicity: u32,
    /// The intersection is tangential or a cluster within tolerance.
    pub tangential: bool,
    /// The witness sits on the diagonal `t = s`.
    pub endpoint: bool,
}

impl Witness {
    pub fn is_geometric(&self) -> bool {
        self.point.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum ConditionCount {
    Finite { count: usize, witnesses: Vec<Witness> },
    Infinite,
}

impl ConditionCount {
    pub fn count(&self) -> Option<usize> {
        match self {
            ConditionCount::Finite { count, .. } => Some(*count),
            ConditionCount::Infinite => None,
        }
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            ConditionCount::Finite { witnesses, .. } => witnesses,
            ConditionCount::Infinite => &[],
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ConditionCount::Infinite)
    }

    /// Exactly three geometric conditions, all transversal.
    pub fn is_exactly_three(&self) -> bool {
        match self {
            ConditionCount::Finite { count: 3, witnesses } => {
                witnesses.iter().all(|w| w.is_geometric() && !w.tangential)
            }
            _ => false,
        }
    }
}

/// Canonical pair `(f, g)` spanning an affine line in `P_d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PencilLine {
    f: Poly,
    g: Poly,
}

impl PencilLine {
    pub fn new(f: Poly, g: Poly) -> Result<Self> {
        let (d, k) = (f.degree(), g.degree());
        if k == 0 || k >= d {
            return Err(Error::NonCanonical("direction degree must lie in 1..deg f"));
        }
        if f.coeff_of(k) != 0.0 {
            return Err(Error::NonCanonical(
                "base point has a nonzero coefficient at the direction's leading power",
            ));
        }
        Ok(PencilLine { f, g })
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn g(&self) -> &Poly {
        &self.g
    }

    /// `f + lambda g`
    pub fn member(&self, lambda: f64) -> Poly {
        let h = &self.f.to_upoly() + &self.g.to_upoly().scale(&lambda);
        Poly::from_upoly(&h).expect("lower-degree direction keeps the member monic")
    }
}

pub fn canonical_line(f1: &Poly, f2: &Poly) -> Result<PencilLine> {
    if f1.degree() != f2.degree() {
        return Err(Error::UnequalDegrees);
    }
    let diff = &f2.to_upoly() - &f1.to_upoly();
    let k = match diff.degree() {
        None => return Err(Error::NotALine),
        Some(k) => k,
    };
    let g = diff.monic();
    let mut gc = g.coeffs().to_vec();
    gc[k] = 1.0;
    gc[0] = 0.0;
    let g = UPoly::new(gc);
    let c = f1.coeff_of(k);
    let mut fc = (&f1.to_upoly() - &g.scale(&c)).coeffs().to_vec();
    fc[k] = 0.0;
    let f = Poly::from_upoly(&UPoly::new(fc))?;
    PencilLine::new(f, Poly::from_upoly(&g)?)
}

/// Shared conditions of a line in `P_4`.
pub fn common_conditions(line: &PencilLine) -> Result<ConditionCount> {
    let (f, g) = (&line.f, &line.g);
    if f.degree() != 4 {
        return Err(Error::InvalidDegree {
            found: f.degree(),
            reason: "condition counting is implemented for quartics",
        });
    }
    PencilLine::new(f.clone(), g.clone())?;
    let phi_f = BiPoly::divided_difference(&f.to_upoly());
    let phi_g = BiPoly::divided_difference(&g.to_upoly());
    let mut witnesses = match g.degree() {
        1 => Vec::new(),
        2 => {
            // phi_g = p + c does not involve q: eliminate p
            let p = -g.coeff_of(1);
            let on_line = phi_f.specialize(Var::P, &p);
            let tol = 1e-10 * phi_f.eval_scale(p, 1.0);
            if on_line.coeffs().iter().all(|c| c.abs() <= tol) {
                return Ok(ConditionCount::Infinite);
            }
            let res = resultant_eliminate(&phi_g, &phi_f, Var::P)?;
            if res.is_zero() {
                return Ok(ConditionCount::Infinite);
            }
            roots_or_empty(&res)?
                .roots()
                .iter()
                .filter_map(|r| {
                    let sing = singular_on(&phi_f, p, r.value);
                    make_witness(p, r.value, r.multiplicity, sing)
                })
                .collect()
        }
        _ => {
            let res = resultant_eliminate(&phi_f, &phi_g, Var::Q)?;
            if res.is_zero() {
                return Ok(ConditionCount::Infinite);
            }
            let mut out = Vec::new();
            for r in roots_or_empty(&res)?.roots() {
                let q_poly = phi_g.specialize(Var::P, &r.value);
                for q in solve_q(&q_poly, &phi_f, r.value)? {
                    let sing = singular_on(&phi_f, r.value, q) || singular_on(&phi_g, r.value, q);
                    if let Some(w) = make_witness(r.value, q, r.multiplicity, sing) {
                        out.push(w);
                    }
                }
            }
            out
        }
    };
    if g.degree() + 2 <= f.degree() {
        witnesses.push(Witness {
            condition: ElementaryCondition::Exceptional { alpha: f.a1() },
            point: None,
            multiplicity: 1,
            tangential: false,
            endpoint: false,
        });
    }
    Ok(ConditionCount::Finite {
        count: witnesses.len(),
        witnesses,
    })
}

fn roots_or_empty(res: &UPoly) -> Result<RootList> {
    if res.degree() == Some(0) {
        return Ok(RootList::default());
    }
    real_roots(res, None)
}

/// Real `q` with `phi_g(p, q) = 0`, keeping the one that best satisfies
/// `phi_f` when several exist.
fn solve_q(q_poly: &UPoly, phi_f: &BiPoly, p: f64) -> Result<Vec<f64>> {
    match q_poly.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![-q_poly.coeff(0) / q_poly.coeff(1)]),
        Some(_) => {
            let qs = real_roots(q_poly, None)?.values();
            Ok(qs
                .into_iter()
                .filter(|&q| phi_f.evalf(p, q).abs() <= 1e-7 * (1.0 + phi_f.eval_scale(p, q)))
                .collect())
        }
    }
}

/// Whether `(p, q)` is a singular point of the curve `phi = 0`.
fn singular_on(phi: &BiPoly, p: f64, q: f64) -> bool {
    let tol = 1e-7 * (1.0 + phi.eval_scale(p, q));
    let dp = phi.derivative(Var::P);
    let dq = phi.derivative(Var::Q);
    phi.evalf(p, q).abs() <= tol && dp.evalf(p, q).abs() <= tol && dq.evalf(p, q).abs() <= tol
}

/// A root of the eliminant through a double point of either curve has
/// multiplicity two without any tangency.
fn make_witness(p: f64, q: f64, multiplicity: u32, singular: bool) -> Option<Witness> {
    let (t, s) = to_ts(p, q)?;
    let endpoint = (p * p - 4.0 * q).abs() <= DIAGONAL_TOL * (1.0 + p * p);
    let condition = if endpoint {
        ElementaryCondition::CriticalPoint { t: p / 2.0 }
    } else {
        ElementaryCondition::PairPoint { t, s }
    };
    Some(Witness {
        condition,
        point: Some((p, q)),
        multiplicity,
        tangential: multiplicity > if singular { 2 } else { 1 },
        endpoint,
    })
}

/// Whether `p^3 - p(a + 2) - b = 0` has three distinct real roots in `p^2 <= 4/3`:
/// the line through `t^4 + a t^2 + b t` in direction `t^3 - t` shares exactly
/// three conditions.
pub fn lemma7_region_test(a: f64, b: f64) -> bool {
    let c = UPoly::new(vec![-b, -(a + 2.0), 0.0, 1.0]);
    let roots = real_roots(&c, None).expect("monic cubic");
    roots.len() == 3
        && roots
            .roots()
            .iter()
            .all(|r| r.multiplicity == 1 && r.value * r.value <= 4.0 / 3.0)
}

fn rescale(f: &Poly, lambda: f64) -> Poly {
    let d = f.degree() as i32;
    let c = f
        .to_upoly()
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, &c)| c * lambda.powi(k as i32 - d))
        .collect();
    let mut out = UPoly::new(c).coeffs().to_vec();
    out[d as usize] = 1.0;
    Poly::from_upoly(&UPoly::new(out)).expect("rescaling keeps the form")
}

/// `(lambda^-d f(lambda t), lambda^-k g(lambda t))`; witnesses scale by `1/lambda`.
pub fn scale_line(line: &PencilLine, lambda: f64) -> Result<PencilLine> {
    if lambda <= 0.0 || lambda.is_nan() {
        return Err(Error::NonPositiveScale(lambda));
    }
    PencilLine::new(rescale(&line.f, lambda), rescale(&line.g, lambda))
}

/// `f(t + t0) - f(t0)`.
pub fn translate(f: &Poly, t0: f64) -> Poly {
    let mut c = f.to_upoly().shift(&t0).coeffs().to_vec();
    c[0] = 0.0;
    c[f.degree()] = 1.0;
    Poly::from_upoly(&UPoly::new(c)).expect("translation keeps the form")
}

/// The line through the translates of its points; witnesses shift by `-t0`.
pub fn translate_line(line: &PencilLine, t0: f64) -> Result<PencilLine> {
    let f = translate(&line.f, t0);
    let fg = translate(&line.member(1.0), t0);
    canonical_line(&f, &fg)
}
