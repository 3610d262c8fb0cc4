//! Brute-force referee for the fiber classification: sweep `β` along a family,
//! count shared conditions with the generic elimination code and read the
//! fiber off the membership indicator.

use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use super::{bisect, FiberType, FiberVerdict};
use crate::cells::{classify, critical_roots, CellLabel, QuarticNormalForm};
use crate::conditions::{common_conditions, ConditionCount, PencilLine};
use crate::error::{Error, Result};
use crate::par::{map_collect, ExecMode};
use crate::polyring::{real_roots, resultant_eliminate, BiPoly, Poly, Var};
use crate::symcurve::DIAGONAL_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FiberTarget {
    /// Two conditions on the unbounded branch, one on the bounded one.
    Heart,
    /// Three conditions on the bounded branch.
    Diamond,
    /// Exactly three conditions, wherever they lie.
    DCell,
}

impl FiberTarget {
    fn admits(self, cell: CellLabel) -> bool {
        match self {
            FiberTarget::Heart | FiberTarget::Diamond => cell == CellLabel::B,
            FiberTarget::DCell => true,
        }
    }
}

/// Interval of `β` values; infinite ends are open.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Piece {
    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        (x > self.lo || (self.lo_closed && x == self.lo))
            && (x < self.hi || (self.hi_closed && x == self.hi))
    }

    /// Whether the two sets share a point.
    pub fn intersects(&self, other: &Piece) -> bool {
        let (lo, lo_closed) = if self.lo > other.lo {
            (self.lo, self.lo_closed)
        } else if other.lo > self.lo {
            (other.lo, other.lo_closed)
        } else {
            (self.lo, self.lo_closed && other.lo_closed)
        };
        let (hi, hi_closed) = if self.hi < other.hi {
            (self.hi, self.hi_closed)
        } else if other.hi < self.hi {
            (other.hi, other.hi_closed)
        } else {
            (self.hi, self.hi_closed && other.hi_closed)
        };
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }
}

/// What a single `β` looks like: geometric witnesses split by the sign of
/// `p` (relative to the sign of `b`), and whether any is tangential.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Signature {
    infinite: bool,
    count: usize,
    neg: usize,
    pos: usize,
    tangential: bool,
}

impl Signature {
    fn member(&self, target: FiberTarget) -> bool {
        if self.infinite || self.tangential || self.count != 3 {
            return false;
        }
        match target {
            FiberTarget::Heart => self.neg == 2 && self.pos == 1,
            FiberTarget::Diamond => self.pos == 3,
            FiberTarget::DCell => true,
        }
    }
}

struct Family {
    f: Poly,
    orient: f64,
    nabla: f64,
}

impl Family {
    fn line(&self, beta: f64) -> PencilLine {
        PencilLine::new(self.f.clone(), Poly::cubic(-3.0 * self.nabla, beta))
            .expect("cubic direction through a normalized quartic")
    }

    /// With `strict`, witnesses accepted on the diagonal only by tolerance are
    /// dropped: inside an open gap between events no intersection can sit
    /// exactly on the diagonal.
    fn signature(&self, beta: f64, strict: bool) -> Result<Signature> {
        let cc = common_conditions(&self.line(beta))?;
        let mut s = Signature {
            infinite: cc.is_infinite(),
            count: 0,
            neg: 0,
            pos: 0,
            tangential: false,
        };
        if let ConditionCount::Finite { witnesses, .. } = cc {
            for w in witnesses.iter().filter(|w| w.is_geometric()) {
                let (p, q) = w.point.expect("geometric");
                if strict && p * p - 4.0 * q < 0.0 {
                    continue;
                }
                let p = p * self.orient;
                s.count += 1;
                s.tangential |= w.tangential;
                if p < 0.0 {
                    s.neg += 1;
                } else if p > 0.0 {
                    s.pos += 1;
                }
            }
        }
        Ok(s)
    }

    /// `β` values where the picture can change: level sets through the
    /// diagonal points over critical points of `f`, and level sets tangent to
    /// `r(f)`.
    fn events(&self) -> Result<Vec<f64>> {
        let fpoly = self.f.to_upoly();
        let n = self.nabla;
        let mut out: Vec<f64> = real_roots(&fpoly.derivative(), None)?
            .values()
            .into_iter()
            .map(|x| 6.0 * n * x - 3.0 * x * x)
            .collect();

        let phi = BiPoly::divided_difference(&fpoly);
        // F = p^2 - q - 3∇p; tangency when grad F is parallel to grad phi
        let big_f = BiPoly::from_terms([(2, 0, 1.0), (0, 1, -1.0), (1, 0, -3.0 * n)]);
        let j = &(&big_f.derivative(Var::P) * &phi.derivative(Var::Q))
            - &(&big_f.derivative(Var::Q) * &phi.derivative(Var::P));
        let res = resultant_eliminate(&phi, &j, Var::Q)?;
        if res.is_zero() || res.degree() == Some(0) {
            return Ok(out);
        }
        for p in real_roots(&res, None)?.values() {
            let mut qs = real_roots_or_all(&phi.specialize(Var::P, &p))?;
            if qs.is_empty() {
                qs = real_roots_or_all(&j.specialize(Var::P, &p))?;
            }
            for q in qs {
                let tol = 1e-7 * (1.0 + j.eval_scale(p, q) + phi.eval_scale(p, q));
                let real = p * p - 4.0 * q >= -DIAGONAL_TOL * (1.0 + p * p);
                if real && j.evalf(p, q).abs() <= tol && phi.evalf(p, q).abs() <= tol {
                    out.push(-big_f.evalf(p, q));
                }
            }
        }
        Ok(out)
    }
}

/// Roots in `q`; the empty list both for constants and for the zero polynomial.
fn real_roots_or_all(u: &crate::polyring::UPoly) -> Result<Vec<f64>> {
    match u.degree() {
        None | Some(0) => Ok(Vec::new()),
        Some(1) => Ok(vec![-u.coeff(0) / u.coeff(1)]),
        Some(_) => Ok(real_roots(u, None)?.values()),
    }
}

fn merge_tol(x: f64) -> f64 {
    1e-12 * (1.0 + x.abs())
}

fn dedup_sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.retain(|x| x.is_finite());
    v.sort_by(f64::total_cmp);
    let mut out: Vec<f64> = Vec::with_capacity(v.len());
    for x in v {
        match out.last() {
            Some(&l) if x - l <= merge_tol(l) => {}
            _ => out.push(x),
        }
    }
    out
}

/// One pass of the oracle over a family: the event points and the open gaps
/// between them, each with its signature.
pub struct Sweep {
    pub nabla: f64,
    events: Vec<(f64, Signature)>,
    /// `gaps[i]` lies just below `events[i]`; the last one is above every event.
    gaps: Vec<Signature>,
    /// Samples inside a gap kept disagreeing after refinement.
    unresolved: bool,
}

impl Sweep {
    pub fn run(nf: &QuarticNormalForm, nabla: f64, resolution: usize) -> Result<Sweep> {
        if resolution < 16 {
            return Err(Error::ResolutionTooLow(resolution));
        }
        let fam = Family {
            f: nf.to_poly(),
            orient: if nf.b < 0.0 { -1.0 } else { 1.0 },
            nabla,
        };
        let mut events = dedup_sorted(fam.events()?);
        if events.is_empty() {
            return Err(Error::Unsupported("family without events"));
        }
        let lo = events[0] - 1.0;
        let hi = events[events.len() - 1].max(3.0 * nabla * nabla) + 1.0;
        let mut cache: HashMap<(u64, bool), Signature> = HashMap::new();
        let mut sig = |b: f64, strict: bool| -> Result<Signature> {
            if let Some(s) = cache.get(&(b.to_bits(), strict)) {
                return Ok(*s);
            }
            let s = fam.signature(b, strict)?;
            cache.insert((b.to_bits(), strict), s);
            Ok(s)
        };
        let grid: Vec<f64> = (0..resolution)
            .map(|k| lo + (hi - lo) * k as f64 / (resolution - 1) as f64)
            .collect();

        let mut unresolved = false;
        for pass in 0..4 {
            let mut found = Vec::new();
            for g in 0..=events.len() {
                let below = if g == 0 { f64::NEG_INFINITY } else { events[g - 1] };
                let above = events.get(g).copied().unwrap_or(f64::INFINITY);
                let mut samples: Vec<f64> = grid
                    .iter()
                    .copied()
                    .filter(|&x| x - below > merge_tol(below) && above - x > merge_tol(above))
                    .collect();
                samples.push(gap_mid(below, above));
                samples.sort_by(f64::total_cmp);
                for w in samples.windows(2) {
                    let (s0, s1) = (sig(w[0], true)?, sig(w[1], true)?);
                    if s0 != s1 {
                        let (mut a, mut b) = (w[0], w[1]);
                        for _ in 0..80 {
                            if b - a <= merge_tol(a) {
                                break;
                            }
                            let m = 0.5 * (a + b);
                            if fam.signature(m, true)? == s0 {
                                a = m;
                            } else {
                                b = m;
                            }
                        }
                        found.push(0.5 * (a + b));
                    }
                }
            }
            if found.is_empty() {
                break;
            }
            if pass == 3 {
                unresolved = true;
            }
            events.extend(found);
            events = dedup_sorted(events);
        }

        let mut ev = Vec::with_capacity(events.len());
        let mut gaps = Vec::with_capacity(events.len() + 1);
        for g in 0..=events.len() {
            let below = if g == 0 { f64::NEG_INFINITY } else { events[g - 1] };
            let above = events.get(g).copied().unwrap_or(f64::INFINITY);
            gaps.push(sig(gap_mid(below, above), true)?);
            if let Some(&e) = events.get(g) {
                ev.push((e, sig(e, false)?));
            }
        }
        Ok(Sweep {
            nabla,
            events: ev,
            gaps,
            unresolved,
        })
    }

    /// Largest finite number of geometric conditions seen anywhere on the family.
    pub fn max_count(&self) -> usize {
        self.events
            .iter()
            .map(|e| &e.1)
            .chain(&self.gaps)
            .filter(|s| !s.infinite)
            .map(|s| s.count)
            .max()
            .unwrap_or(0)
    }

    pub fn event_values(&self) -> Vec<f64> {
        self.events.iter().map(|e| e.0).collect()
    }

    /// Maximal runs of member events and gaps.
    pub fn pieces(&self, target: FiberTarget) -> Vec<Piece> {
        let mut out = Vec::new();
        let mut cur: Option<Piece> = None;
        let n = self.events.len();
        for g in 0..=n {
            let below = if g == 0 { f64::NEG_INFINITY } else { self.events[g - 1].0 };
            if self.gaps[g].member(target) {
                match cur.as_mut() {
                    Some(p) => p.hi = below,
                    None => {
                        cur = Some(Piece {
                            lo: below,
                            hi: below,
                            lo_closed: false,
                            hi_closed: false,
                        })
                    }
                }
                let p = cur.as_mut().expect("just set");
                p.hi = self.events.get(g).map_or(f64::INFINITY, |e| e.0);
                p.hi_closed = false;
            } else if let Some(p) = cur.take() {
                out.push(p);
            }
            if let Some(&(e, s)) = self.events.get(g) {
                if s.member(target) {
                    match cur.as_mut() {
                        Some(p) => {
                            p.hi = e;
                            p.hi_closed = true;
                        }
                        None => {
                            cur = Some(Piece {
                                lo: e,
                                hi: e,
                                lo_closed: true,
                                hi_closed: true,
                            })
                        }
                    }
                } else if let Some(p) = cur.take() {
                    out.push(p);
                }
            }
        }
        out.extend(cur);
        out
    }

    pub fn verdict(&self, target: FiberTarget) -> FiberVerdict {
        let ambiguous = |what: &str, d: f64| FiberVerdict::Ambiguous {
            near: format!("oracle: {what}"),
            distance: d,
        };
        if self.unresolved {
            return ambiguous("unresolved gap", 0.0);
        }
        let pieces = self.pieces(target);
        for p in &pieces {
            if !p.lo.is_finite() || !p.hi.is_finite() {
                return ambiguous("unbounded piece", f64::INFINITY);
            }
            let len = p.hi - p.lo;
            if !p.is_point() && len < 1e-9 * (1.0 + p.lo.abs()) {
                return ambiguous("sliver piece", len);
            }
        }
        use FiberType::*;
        let t = match pieces[..] {
            [] => Empty,
            [p] if p.is_point() => Point,
            [p] => match (p.lo_closed, p.hi_closed) {
                (true, true) => ClosedSegment,
                (false, false) => OpenInterval,
                _ => HalfOpenInterval,
            },
            [p, q]
                if p.hi == q.lo
                    && !p.hi_closed
                    && !q.lo_closed
                    && !p.is_point()
                    && !q.is_point()
                    && p.lo_closed != q.hi_closed =>
            {
                HalfOpenMinusPoint
            }
            _ => return ambiguous("unrecognized shape", 0.0),
        };
        FiberVerdict::Fiber(t)
    }
}

fn gap_mid(below: f64, above: f64) -> f64 {
    match (below.is_finite(), above.is_finite()) {
        (true, true) => 0.5 * (below + above),
        (true, false) => below + 1.0,
        (false, true) => above - 1.0,
        (false, false) => 0.0,
    }
}

fn check_target(nf: &QuarticNormalForm, target: FiberTarget) -> Result<()> {
    let cell = classify(nf.a, nf.b);
    if !target.admits(cell) {
        return Err(Error::WrongCell {
            expected: "B",
            found: cell.to_string(),
        });
    }
    Ok(())
}

pub fn fiber_oracle(
    nf: &QuarticNormalForm,
    nabla: f64,
    target: FiberTarget,
    resolution: usize,
) -> Result<FiberVerdict> {
    check_target(nf, target)?;
    Ok(Sweep::run(nf, nabla, resolution)?.verdict(target))
}

/// Several targets read off one sweep.
pub fn fiber_oracle_multi(
    nf: &QuarticNormalForm,
    nabla: f64,
    targets: &[FiberTarget],
    resolution: usize,
) -> Result<Vec<FiberVerdict>> {
    for &t in targets {
        check_target(nf, t)?;
    }
    let sweep = Sweep::run(nf, nabla, resolution)?;
    Ok(targets.iter().map(|&t| sweep.verdict(t)).collect())
}

pub fn membership_pieces(
    nf: &QuarticNormalForm,
    nabla: f64,
    target: FiberTarget,
    resolution: usize,
) -> Result<Vec<Piece>> {
    check_target(nf, target)?;
    Ok(Sweep::run(nf, nabla, resolution)?.pieces(target))
}

/// Whether `F_∇` restricted to the arc `θ ∈ (π/4, 5π/4)` of the circle
/// `t = √2 cos θ, s = √2 sin θ` has an extremum strictly inside the arc.
pub fn circle_has_interior_extremum(nabla: f64, samples: usize) -> bool {
    let r = 2f64.sqrt();
    let f = |th: f64| {
        let (t, s) = (r * th.cos(), r * th.sin());
        t * t + t * s + s * s - 3.0 * nabla * (t + s)
    };
    let (a, b) = (PI / 4.0, 5.0 * PI / 4.0);
    let h = (b - a) / samples as f64;
    let df = |th: f64| f(th + 1e-7) - f(th - 1e-7);
    let mut prev = df(a + 0.5 * h);
    for k in 1..samples {
        let d = df(a + (k as f64 + 0.5) * h);
        if d.signum() != prev.signum() && d != 0.0 && prev != 0.0 {
            return true;
        }
        prev = d;
    }
    false
}

/// Thresholds of the `t^4 - 2t^2` fiber list, each located from oracle output.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DThreshold {
    /// Beyond it the arc of the circle carries no extremum of `F_∇`.
    Circle,
    /// Beyond it the fiber is empty.
    Nonempty,
    /// Below it the fiber stops being closed.
    Closed,
    /// Below it an interior point is missing.
    Punctured,
}

pub fn d_cell_threshold(which: DThreshold, resolution: usize) -> Result<f64> {
    let nf = QuarticNormalForm::new(-2.0, 0.0);
    let fiber = |n: f64| -> FiberVerdict {
        fiber_oracle(&nf, n, FiberTarget::DCell, resolution)
            .unwrap_or(FiberVerdict::Ambiguous {
                near: "error".into(),
                distance: 0.0,
            })
    };
    let is = |n: f64, t: FiberType| fiber(n).fiber() == Some(t);
    let pred = |n: f64| -> f64 {
        let yes = match which {
            DThreshold::Circle => circle_has_interior_extremum(n, 4 * resolution),
            DThreshold::Nonempty => !is(n, FiberType::Empty),
            DThreshold::Closed => {
                is(n, FiberType::ClosedSegment) || is(n, FiberType::Point) || is(n, FiberType::Empty)
            }
            DThreshold::Punctured => is(n, FiberType::HalfOpenMinusPoint),
        };
        if yes {
            1.0
        } else {
            -1.0
        }
    };
    let (lo, hi) = match which {
        DThreshold::Circle => (0.55, 0.8),
        DThreshold::Nonempty => (0.45, 0.6),
        DThreshold::Closed => (0.4, 0.49),
        DThreshold::Punctured => (0.2, 0.45),
    };
    bisect(pred, lo, hi, 1e-9)
}

/// Connected components of the union over `∇ ∈ grid` of the fibers, linking
/// pieces of neighbouring slices when they overlap and subdividing the `∇`
/// step where a piece finds no partner. Pieces of the extra slices only act
/// as bridges; a component is counted when it holds a piece of the grid.
/// Single-point fibers of neighbouring slices are joined when their `β`
/// values differ by at most the largest slope `6|x|` of a diagonal passage,
/// with a safety factor of two.
pub fn fiber_components(
    nf: &QuarticNormalForm,
    targets: &[FiberTarget],
    grid: &[f64],
    resolution: usize,
    mode: ExecMode,
) -> Result<usize> {
    for &t in targets {
        check_target(nf, t)?;
    }
    let slice = |n: f64| -> Result<Vec<Piece>> {
        let sw = Sweep::run(nf, n, resolution)?;
        Ok(targets.iter().flat_map(|&t| sw.pieces(t)).collect())
    };
    let slices: Vec<Vec<Piece>> = map_collect(grid, mode, |&n| slice(n))
        .into_iter()
        .collect::<Result<_>>()?;

    let mut uf = UnionFind::default();
    let ids: Vec<Vec<usize>> = slices
        .iter()
        .map(|s| s.iter().map(|_| uf.add()).collect())
        .collect();
    let originals = uf.parent.len();
    let xmax = critical_roots(nf).values().iter().fold(1.0f64, |m, x| m.max(x.abs()));
    let ctx = LinkCtx {
        slice: &slice,
        slope: 12.0 * xmax,
    };
    for k in 1..grid.len() {
        link(
            &mut uf,
            (grid[k - 1], &slices[k - 1], &ids[k - 1]),
            (grid[k], &slices[k], &ids[k]),
            &ctx,
            3,
            8,
        )?;
    }
    let mut roots: Vec<usize> = (0..originals).map(|x| uf.find(x)).collect();
    roots.sort_unstable();
    roots.dedup();
    Ok(roots.len())
}

type Slice<'a> = (f64, &'a [Piece], &'a [usize]);

struct LinkCtx<'a> {
    slice: &'a dyn Fn(f64) -> Result<Vec<Piece>>,
    slope: f64,
}

/// Links pieces of two slices. The first `forced` levels always go through
/// a middle slice, so that two overlapping pieces are only joined when the
/// set between them is actually there; after that, overlapping pieces are
/// joined and lonely ones trigger up to `depth` further subdivisions.
fn link(
    uf: &mut UnionFind,
    left: Slice,
    right: Slice,
    ctx: &LinkCtx,
    forced: usize,
    depth: usize,
) -> Result<()> {
    if left.1.is_empty() && right.1.is_empty() {
        return Ok(());
    }
    let mut lonely = true;
    if forced == 0 {
        let mut matched_l = vec![false; left.1.len()];
        let mut matched_r = vec![false; right.1.len()];
        for (i, a) in left.1.iter().enumerate() {
            for (j, b) in right.1.iter().enumerate() {
                let close = a.is_point()
                    && b.is_point()
                    && (a.lo - b.lo).abs() <= ctx.slope * (right.0 - left.0).abs();
                if a.intersects(b) || close {
                    uf.union(left.2[i], right.2[j]);
                    matched_l[i] = true;
                    matched_r[j] = true;
                }
            }
        }
        lonely = matched_l.iter().chain(&matched_r).any(|m| !m);
    }
    if forced > 0 || (lonely && depth > 0) {
        let mid = 0.5 * (left.0 + right.0);
        let pieces = (ctx.slice)(mid)?;
        let ids: Vec<usize> = pieces.iter().map(|_| uf.add()).collect();
        let (forced, depth) = if forced > 0 { (forced - 1, depth) } else { (0, depth - 1) };
        link(uf, left, (mid, &pieces, &ids), ctx, forced, depth)?;
        link(uf, (mid, &pieces, &ids), right, ctx, forced, depth)?;
    }
    Ok(())
}

#[derive(Default)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn add(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scanner::{breakpoints, diamond_fiber_with, heart_fiber_with};

    fn fb() -> QuarticNormalForm {
        QuarticNormalForm::new(-14.0, 24.0)
    }

    #[test]
    fn piece_intersections() {
        let a = Piece { lo: 0.0, hi: 1.0, lo_closed: true, hi_closed: false };
        let b = Piece { lo: 1.0, hi: 2.0, lo_closed: true, hi_closed: true };
        let c = Piece { lo: 0.5, hi: 0.5, lo_closed: true, hi_closed: true };
        assert!(!a.intersects(&b));
        assert!(a.intersects(&c));
        assert!(c.intersects(&a));
        assert!(a.contains(0.0) && !a.contains(1.0));
    }

    #[test]
    fn heart_oracle_on_reference() {
        let f = fb();
        let bp = breakpoints(&f).unwrap();
        for n in [-10.0, -1.0, 0.5 * (bp.tau + bp.mu), 0.5 * (bp.mu + bp.xi), 0.0] {
            let o = fiber_oracle(&f, n, FiberTarget::Heart, 64).unwrap();
            assert_eq!(o, heart_fiber_with(&bp, n), "nabla = {n}");
        }
    }

    #[test]
    fn diamond_oracle_on_reference() {
        let f = fb();
        let bp = breakpoints(&f).unwrap();
        let (lo, hi) = (bp.kappa.min(bp.nu), bp.kappa.max(bp.nu));
        for n in [1.0, 0.5 * (bp.c + lo), 0.5 * (lo + hi), 0.5 * (hi + bp.m23), 1.5, 1.6] {
            let o = fiber_oracle(&f, n, FiberTarget::Diamond, 64).unwrap();
            assert_eq!(o, diamond_fiber_with(&bp, n), "nabla = {n}");
        }
    }

    #[test]
    fn d_cell_oracle() {
        let f = QuarticNormalForm::new(-2.0, 0.0);
        for n in [0.7, 0.5, 0.45, 0.4, 0.3, -0.3, -0.45] {
            let o = fiber_oracle(&f, n, FiberTarget::DCell, 64).unwrap();
            assert_eq!(o, super::super::d_cell_fiber(n), "nabla = {n}");
        }
        assert!(fiber_oracle(&f, 0.0, FiberTarget::Heart, 64).is_err());
        assert!(fiber_oracle(&f, 0.3, FiberTarget::DCell, 8).is_err());
    }

    #[test]
    fn circle_extremum_switches_at_two_thirds() {
        assert!(circle_has_interior_extremum(0.6, 2000));
        assert!(!circle_has_interior_extremum(0.7, 2000));
    }
}
