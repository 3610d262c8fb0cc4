//! Maps `t -> (x_1(t), ..., x_n(t))` with polynomial components and their
//! discriminant: multiple points, singular points and, for even degree, the
//! stratum where all first coefficients agree.

mod crossing;
mod linking;

use serde::Serialize;

pub use crossing::{disk_families, singular_crossing_count, singular_crossings, Crossing, DiskFamily};
pub use linking::{
    a1_spread, canonicalize_s1, degree_linking, degree_linking_with, orbit_loop, orbit_sphere, rotate_s1,
    winding_linking, LoopSample, SphereSample,
};

use crate::error::{Error, Result};
use crate::polyring::{real_roots, resultant_eliminate, BiPoly, Poly, UPoly, Var};
use crate::symcurve::{relation_curve, to_ts, DIAGONAL_TOL};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KnotMap {
    components: Vec<Poly>,
}

impl KnotMap {
    pub fn new(components: Vec<Poly>) -> Result<Self> {
        if components.len() < 3 {
            return Err(Error::WrongArity {
                expected: 3,
                found: components.len(),
            });
        }
        let d = &components[0];
        if components.iter().any(|c| c.degree() != d.degree()) {
            return Err(Error::UnequalDegrees);
        }
        Ok(KnotMap { components })
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components[0].degree()
    }

    pub fn a1(&self, i: usize) -> f64 {
        self.components[i].a1()
    }

    pub fn a1s(&self) -> Vec<f64> {
        self.components.iter().map(Poly::a1).collect()
    }

    pub fn eval(&self, t: f64) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(t)).collect()
    }

    pub fn derivative_at(&self, t: f64) -> Vec<f64> {
        self.components
            .iter()
            .map(|c| c.derivative().evalf(t))
            .collect()
    }

    /// `x(t + t0)` with constant terms dropped.
    pub fn translate(&self, t0: f64) -> KnotMap {
        KnotMap {
            components: self
                .components
                .iter()
                .map(|c| crate::conditions::translate(c, t0))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SigmaWitness {
    Multiple { t: f64, s: f64 },
    Singular { t: f64 },
    ExceptionalStratum { alpha: f64 },
}

impl SigmaWitness {
    pub fn is_geometric(&self) -> bool {
        !matches!(self, SigmaWitness::ExceptionalStratum { .. })
    }
}

/// Relative tolerance for equal first coefficients.
pub const A1_TOL: f64 = 1e-10;
const SYSTEM_TOL: f64 = 1e-7;

/// The first witness of `sigma_witnesses`, geometric ones first.
pub fn sigma_test(map: &KnotMap) -> Result<Option<SigmaWitness>> {
    let w = sigma_witnesses(map)?;
    Ok(w.iter()
        .find(|w| w.is_geometric())
        .or_else(|| w.first())
        .copied())
}

/// Every real common point of the relation curves of the components, plus
/// the exceptional stratum for even degree. When the components share a
/// whole curve, one multiple point and all singular points on it are listed.
pub fn sigma_witnesses(map: &KnotMap) -> Result<Vec<SigmaWitness>> {
    let d = map.degree();
    if d < 2 {
        return Err(Error::InvalidDegree {
            found: d,
            reason: "maps need degree at least 2",
        });
    }
    let phis: Vec<BiPoly> = map
        .components
        .iter()
        .map(|c| BiPoly::divided_difference(&c.to_upoly()))
        .collect();
    let base = &phis[0];
    let scale = base.norm_inf().max(1.0);
    let rest: Vec<BiPoly> = phis[1..]
        .iter()
        .map(|h| h - base)
        .filter(|h| h.norm_inf() > 1e-12 * scale)
        .collect();

    let mut out = match common_points(base, &rest)? {
        Some(points) => points
            .into_iter()
            .filter_map(|(p, q)| witness_at(p, q))
            .collect(),
        None => shared_curve_witnesses(map, &phis)?,
    };
    dedup_witnesses(&mut out);

    if d.is_multiple_of(2) {
        let a1 = map.a1s();
        let spread = a1_spread_of(&a1);
        if spread <= A1_TOL * (1.0 + a1[0].abs()) {
            out.push(SigmaWitness::ExceptionalStratum { alpha: a1[0] });
        }
    }
    Ok(out)
}

pub(super) fn a1_spread_of(a1: &[f64]) -> f64 {
    let lo = a1.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = a1.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    hi - lo
}

fn witness_at(p: f64, q: f64) -> Option<SigmaWitness> {
    let (t, s) = to_ts(p, q)?;
    if (p * p - 4.0 * q).abs() <= DIAGONAL_TOL * (1.0 + p * p) {
        Some(SigmaWitness::Singular { t: p / 2.0 })
    } else {
        Some(SigmaWitness::Multiple { t, s })
    }
}

fn dedup_witnesses(w: &mut Vec<SigmaWitness>) {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * (1.0 + a.abs());
    let mut out: Vec<SigmaWitness> = Vec::new();
    for x in w.drain(..) {
        let dup = out.iter().any(|y| match (x, *y) {
            (SigmaWitness::Multiple { t, s }, SigmaWitness::Multiple { t: t2, s: s2 }) => {
                close(t, t2) && close(s, s2)
            }
            (SigmaWitness::Singular { t }, SigmaWitness::Singular { t: t2 }) => close(t, t2),
            _ => false,
        });
        if !dup {
            out.push(x);
        }
    }
    *w = out;
}

fn satisfies_all(base: &BiPoly, rest: &[BiPoly], p: f64, q: f64) -> bool {
    std::iter::once(base)
        .chain(rest)
        .all(|h| h.evalf(p, q).abs() <= SYSTEM_TOL * (1.0 + h.eval_scale(p, q)))
}

/// Real solutions of `base = 0` and `rest = 0`, or `None` when no pair of
/// equations cuts the curve down to finitely many points.
fn common_points(base: &BiPoly, rest: &[BiPoly]) -> Result<Option<Vec<(f64, f64)>>> {
    if rest.is_empty() {
        return Ok(None);
    }
    // the first pair of equations without a common component
    let all: Vec<&BiPoly> = std::iter::once(base).chain(rest).collect();
    let mut pair = None;
    'outer: for i in 0..all.len() {
        for j in i + 1..all.len() {
            if let Some(res) = eliminant(all[i], all[j])? {
                pair = Some((all[i].clone(), all[j].clone(), res));
                break 'outer;
            }
        }
    }
    let Some((a, b, res)) = pair else {
        return Ok(None);
    };
    let mut out = Vec::new();
    if res.degree() == Some(0) {
        return Ok(Some(out));
    }
    for p in real_roots(&res, None)?.values() {
        let mut qs = q_roots(&a.specialize(Var::P, &p))?;
        if qs.is_empty() {
            qs = q_roots(&b.specialize(Var::P, &p))?;
        }
        for q in qs {
            let (p, q) = polish(&a, &b, p, q);
            if satisfies_all(base, rest, p, q) {
                out.push((p, q));
            }
        }
    }
    Ok(Some(out))
}

fn eliminant(a: &BiPoly, b: &BiPoly) -> Result<Option<UPoly>> {
    // a polynomial in p alone: its roots are the candidates
    for h in [a, b] {
        if h.degree_in(Var::Q).unwrap_or(0) == 0 {
            return Ok(Some(h.specialize(Var::Q, &0.0)));
        }
    }
    let res = resultant_eliminate(a, b, Var::Q)?;
    Ok((!res.is_zero()).then_some(res))
}

fn q_roots(u: &UPoly) -> Result<Vec<f64>> {
    match u.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![-u.coeff(0) / u.coeff(1)]),
        Some(_) => Ok(real_roots(u, None)?.values()),
    }
}

/// A few Newton steps on `a = b = 0`.
fn polish(a: &BiPoly, b: &BiPoly, mut p: f64, mut q: f64) -> (f64, f64) {
    let (ap, aq) = (a.derivative(Var::P), a.derivative(Var::Q));
    let (bp, bq) = (b.derivative(Var::P), b.derivative(Var::Q));
    for _ in 0..8 {
        let (fa, fb) = (a.evalf(p, q), b.evalf(p, q));
        let (j11, j12, j21, j22) = (ap.evalf(p, q), aq.evalf(p, q), bp.evalf(p, q), bq.evalf(p, q));
        let det = j11 * j22 - j12 * j21;
        if det.abs() < 1e-14 * (1.0 + j11.abs() * j22.abs() + j12.abs() * j21.abs()) {
            break;
        }
        let dp = (fa * j22 - fb * j12) / det;
        let dq = (j11 * fb - j21 * fa) / det;
        if !dp.is_finite() || !dq.is_finite() {
            break;
        }
        p -= dp;
        q -= dq;
        if dp.abs() + dq.abs() <= 1e-15 * (1.0 + p.abs() + q.abs()) {
            break;
        }
    }
    (p, q)
}

/// All components vanish together along a curve: report its singular points
/// and the first multiple point met on a scan of `t`.
fn shared_curve_witnesses(map: &KnotMap, phis: &[BiPoly]) -> Result<Vec<SigmaWitness>> {
    let curve = relation_curve(&map.components[0])?;
    let mut out = Vec::new();
    for (p, q) in curve.diagonal_points()? {
        if satisfies_all(&phis[0], &phis[1..], p, q) {
            out.push(SigmaWitness::Singular { t: p / 2.0 });
        }
    }
    let n = 4001;
    for k in 0..n {
        let t = -4.0 + 8.0 * k as f64 / (n - 1) as f64;
        let partners = curve.partners(t)?;
        let hit = partners.values().into_iter().find(|&s| {
            (s - t).abs() > 1e-6 && satisfies_all(&phis[0], &phis[1..], t + s, t * s)
        });
        if let Some(s) = hit {
            out.push(SigmaWitness::Multiple {
                t: t.min(s),
                s: t.max(s),
            });
            break;
        }
    }
    Ok(out)
}
