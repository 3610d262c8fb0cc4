use polyknot::cells::{classify, sample_b, sample_cell, CellLabel, QuarticNormalForm};
use polyknot::conditions::{
    canonical_line, common_conditions, scale_line, translate_line, ConditionCount,
    ElementaryCondition, PencilLine,
};
use polyknot::discriminant::{
    degree_linking_with, disk_families, orbit_loop, orbit_sphere, sigma_test, sigma_witnesses,
    singular_crossing_count, winding_linking, KnotMap, SigmaWitness,
};
use polyknot::par::map_range;
use polyknot::polyring::{real_roots, Poly, UPoly};
use polyknot::scanner::{
    breakpoints, fiber_oracle, interior_finite_critical_points, FiberTarget, FiberType,
    FiberVerdict,
};
use polyknot::symcurve::{classify_cubic_curve, CubicCurveClass};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::context::Ctx;
use crate::report::Report;
use crate::scan::{b_table, d_table, d_thresholds, summaries, FIBER_RESOLUTION, SUMMARY_RESOLUTION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Orderings,
    Constants,
    Bezout,
    Infinite,
    Cubic,
    Equivariance,
    Oracle,
    Dcell,
    Cells,
    Critical,
    Linking,
    Sigma,
    All,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, value_enum)]
    pub suite: Suite,
    /// Number of components for the linking suite.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
}

type SuiteFn = fn(&Ctx, &Args, &mut Report) -> Result<(), String>;

const SUITES: [(Suite, &str, SuiteFn); 12] = [
    (Suite::Orderings, "orderings", orderings),
    (Suite::Constants, "constants", constants),
    (Suite::Bezout, "bezout", bezout),
    (Suite::Infinite, "infinite", infinite),
    (Suite::Cubic, "cubic", cubic),
    (Suite::Equivariance, "equivariance", equivariance),
    (Suite::Oracle, "oracle", oracle),
    (Suite::Dcell, "dcell", dcell),
    (Suite::Cells, "cells", cells),
    (Suite::Critical, "critical", critical),
    (Suite::Linking, "linking", linking),
    (Suite::Sigma, "sigma", sigma),
];

pub fn run(ctx: &Ctx, args: &Args) -> Result<Report, String> {
    let mut rep = Report::new("verify", json!({ "suite": format!("{:?}", args.suite).to_lowercase(), "seed": ctx.seed }));
    for (suite, name, f) in SUITES {
        if args.suite == suite || args.suite == Suite::All {
            rep.record("suite", json!({ "name": name }));
            f(ctx, args, &mut rep)?;
        }
    }
    Ok(rep)
}

/// Per-sample generator: stream `suite * 2^32 + i`.
fn rng_for(ctx: &Ctx, suite: u64, i: usize) -> ChaCha8Rng {
    ctx.rng((suite << 32) + i as u64)
}

fn random_poly(r: &mut impl Rng, degree: usize, span: f64) -> Poly {
    let c = (0..degree - 1).map(|_| r.random_range(-span..span)).collect();
    Poly::new(degree, c).expect("monic by construction")
}

/// A random line in `P_4` with direction degree 1, 2 or 3.
pub fn random_line(r: &mut impl Rng) -> PencilLine {
    let f = random_poly(r, 4, 4.0);
    let k = r.random_range(1..=3);
    let g = if k == 1 {
        UPoly::new(vec![0.0, 1.0])
    } else {
        random_poly(r, k, 3.0).to_upoly()
    };
    let lam = r.random_range(0.5..2.0);
    let h = Poly::from_upoly(&(&f.to_upoly() + &g.scale(&lam))).expect("monic quartic");
    canonical_line(&f, &h).expect("distinct quartics span a line")
}

fn geometric_pairs(c: &ConditionCount) -> Vec<(f64, f64)> {
    let mut v: Vec<_> = c
        .witnesses()
        .iter()
        .filter_map(|w| match w.condition {
            ElementaryCondition::PairPoint { t, s } => Some((t, s)),
            ElementaryCondition::CriticalPoint { t } => Some((t, t)),
            ElementaryCondition::Exceptional { .. } => None,
        })
        .collect();
    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    v
}

fn condition_residual(f: &Poly, (t, s): (f64, f64)) -> f64 {
    let scale = 1.0 + t.abs().powi(f.degree() as i32) + s.abs().powi(f.degree() as i32);
    if t == s {
        f.derivative().evalf(t).abs() / scale
    } else {
        (f.eval(t) - f.eval(s)).abs() / scale
    }
}

fn orderings(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let n = ctx.samples(200);
    let tol = ctx.tol(1e-9);
    let mut r = rng_for(ctx, 1, 0);
    let forms: Vec<_> = (0..n).map(|_| sample_b(&mut r, 1e-3)).collect();
    let mut worst: Vec<(&str, f64)> = Vec::new();
    for nf in &forms {
        let bp = breakpoints(nf).map_err(|e| e.to_string())?;
        for (i, (name, m)) in bp.orderings().into_iter().enumerate() {
            if i == worst.len() {
                worst.push((name, m));
            }
            worst[i].1 = worst[i].1.min(m);
        }
    }
    for (name, m) in worst {
        rep.check(&format!("ordering {name}"), json!({ "samples": n, "tolerance": tol }), Some(m), m > tol);
    }
    Ok(())
}

fn constants(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let tol = ctx.tol(1e-12);
    let (a, b) = (-14.0, 24.0);
    let bp = breakpoints(&QuarticNormalForm::new(a, b)).map_err(|e| e.to_string())?;
    let focal = |t: f64| (6.0 * t * t - a) / (12.0 * t);
    // critical points of t^4 - 14t^2 + 24t are -3, 1, 2
    let x = [-3.0, 1.0, 2.0];
    for (name, got, formula, closed) in [
        ("omega1", bp.omega1, focal(x[0]), -17.0 / 9.0),
        ("omega2", bp.omega2, focal(x[1]), 5.0 / 3.0),
        ("omega3", bp.omega3, focal(x[2]), 19.0 / 12.0),
        ("tau", bp.tau, (x[0] + x[1]) / 2.0, -1.0),
        ("m23", bp.m23, (x[1] + x[2]) / 2.0, 1.5),
        ("cbrt(b)/2", bp.c, 24f64.cbrt() / 2.0, 24f64.cbrt() / 2.0),
    ] {
        let err = (got - formula).abs().max((got - closed).abs());
        rep.check(
            &format!("reference constant {name}"),
            json!({ "a": a, "b": b, "value": got, "closed_form": closed, "tolerance": tol }),
            Some(tol - err),
            err <= tol,
        );
    }
    Ok(())
}

fn bezout(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let n = ctx.samples(10_000);
    let tol = ctx.tol(1e-6);
    let res = map_range(n, ctx.mode, |i| {
        let line = random_line(&mut rng_for(ctx, 2, i));
        let c = common_conditions(&line)?;
        let resid = geometric_pairs(&c)
            .iter()
            .map(|&p| condition_residual(line.f(), p).max(condition_residual(line.g(), p)))
            .fold(0.0, f64::max);
        Ok::<_, polyknot::Error>((c.count(), resid))
    });
    let mut hist = [0usize; 5];
    let mut over = 0;
    let mut worst = 0.0f64;
    for r in res {
        let (count, resid) = r.map_err(|e| e.to_string())?;
        match count {
            None => hist[4] += 1,
            Some(k) if k <= 3 => hist[k] += 1,
            Some(_) => over += 1,
        }
        worst = worst.max(resid);
    }
    rep.record("histogram", json!({ "zero": hist[0], "one": hist[1], "two": hist[2], "three": hist[3], "infinite": hist[4] }));
    rep.check("bezout bound", json!({ "lines": n, "violations": over }), None, over == 0);
    rep.check("witness residual", json!({ "lines": n, "tolerance": tol, "worst": worst }), Some(tol - worst), worst < tol);
    Ok(())
}

/// `(t - t0)^4 + A (t - t0)^2` with its constant term dropped.
fn symmetric_quartic(t0: f64, a: f64) -> Poly {
    let c = vec![-4.0 * t0, 6.0 * t0 * t0 + a, -4.0 * t0.powi(3) - 2.0 * a * t0];
    Poly::new(4, c).expect("monic quartic")
}

/// Whether `f` is even about the centre of the quadratic `g`.
fn centres_agree(line: &PencilLine) -> bool {
    let (f, g) = (line.f(), line.g());
    let cg = -g.a1() / 2.0;
    let cf = -f.a1() / 4.0;
    let size = 1.0 + f.coeffs().iter().map(|c| c.abs()).sum::<f64>();
    (cf - cg).abs() <= 1e-8 * (1.0 + cg.abs()) && f.to_upoly().shift(&cf).coeff(1).abs() <= 1e-8 * size
}

fn infinite(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let n = ctx.samples(1_000);
    let res = map_range(n, ctx.mode, |i| -> polyknot::Result<(bool, bool, bool)> {
        let mut r = rng_for(ctx, 3, i);
        let f = symmetric_quartic(r.random_range(-3.0..3.0), r.random_range(-5.0..5.0));
        let t0 = -f.a1() / 4.0;
        let lam = r.random_range(0.2..3.0);
        let along = |centre: f64| Poly::new(4, vec![f.a1(), f.a(2) + lam, f.a(3) - 2.0 * centre * lam]);
        let sym = common_conditions(&canonical_line(&f, &along(t0)?)?)?.is_infinite();
        let shift = r.random_range(0.05..1.0) * if r.random_bool(0.5) { 1.0 } else { -1.0 };
        let moved_line = canonical_line(&f, &along(t0 + shift)?)?;
        let moved = common_conditions(&moved_line)?.is_infinite();
        let line = random_line(&mut r);
        let rand_inf = common_conditions(&line)?.is_infinite();
        let mut converse = true;
        for (l, inf) in [(moved_line, moved), (line, rand_inf)] {
            if inf {
                converse &= l.g().degree() == 2 && centres_agree(&l);
            }
        }
        Ok((sym, moved, converse))
    });
    let (mut missed, mut moved_inf, mut off) = (0, 0, 0);
    for r in res {
        let (sym, moved, converse) = r.map_err(|e| e.to_string())?;
        missed += !sym as usize;
        moved_inf += moved as usize;
        off += !converse as usize;
    }
    rep.check("symmetric pair shares infinitely many", json!({ "pairs": n, "violations": missed }), None, missed == 0);
    rep.check("moved centre shares finitely many", json!({ "pairs": n, "violations": moved_inf }), None, moved_inf == 0);
    rep.check("infinite only on the symmetric locus", json!({ "lines": 2 * n, "violations": off }), None, off == 0);
    Ok(())
}

fn cubic(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let n = ctx.samples(10_000);
    let mut r = rng_for(ctx, 4, 0);
    let mut bad = 0;
    let mut seen = [0usize; 3];
    for _ in 0..n {
        let (al, be) = (r.random_range(-6.0..6.0), r.random_range(-12.0..12.0));
        let roots = real_roots(&UPoly::new(vec![be, 2.0 * al, 3.0]), None).map_err(|e| e.to_string())?;
        let cls = classify_cubic_curve(al, be);
        let expected = match roots.len() {
            0 => CubicCurveClass::Empty,
            1 => CubicCurveClass::SinglePoint,
            _ => CubicCurveClass::HalfEllipse,
        };
        let by_sign = (al * al < 3.0 * be) == (cls == CubicCurveClass::Empty);
        bad += (cls != expected || !by_sign) as usize;
        seen[cls as usize] += 1;
    }
    rep.record("histogram", json!({ "empty": seen[0], "point": seen[1], "half_ellipse": seen[2] }));
    rep.check("cubic curve classification", json!({ "pairs": n, "violations": bad }), None, bad == 0);
    Ok(())
}

fn equivariance(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let n = ctx.samples(1_000);
    let tol = ctx.tol(1e-7);
    let res = map_range(n, ctx.mode, |i| -> polyknot::Result<(usize, f64)> {
        let line = random_line(&mut rng_for(ctx, 5, i));
        let base = common_conditions(&line)?;
        let bw = geometric_pairs(&base);
        let mut bad = 0;
        let mut err = 0.0f64;
        let mut compare = |c: ConditionCount, map: &dyn Fn((f64, f64)) -> (f64, f64)| {
            let w = geometric_pairs(&c);
            if c.count() != base.count() || w.len() != bw.len() {
                bad += 1;
                return;
            }
            for (a, b) in bw.iter().zip(&w) {
                let (et, es) = map(*a);
                err = err.max((et - b.0).abs().max((es - b.1).abs()) / (1.0 + et.abs().max(es.abs())));
            }
        };
        for lam in [0.5, 2.0] {
            compare(common_conditions(&scale_line(&line, lam)?)?, &|(t, s)| (t / lam, s / lam));
        }
        for t0 in [-1.0, 1.0] {
            compare(common_conditions(&translate_line(&line, t0)?)?, &|(t, s)| (t - t0, s - t0));
        }
        Ok((bad, err))
    });
    let (mut bad, mut err) = (0, 0.0f64);
    for r in res {
        let (b, e) = r.map_err(|e| e.to_string())?;
        bad += b;
        err = err.max(e);
    }
    rep.check("count invariance", json!({ "lines": n, "transforms": 4, "violations": bad }), None, bad == 0);
    rep.check("witness covariance", json!({ "lines": n, "tolerance": tol, "worst": err }), Some(tol - err), err < tol);
    Ok(())
}

fn collapse(v: &[FiberType]) -> Vec<FiberType> {
    let mut out: Vec<FiberType> = Vec::new();
    for &t in v {
        if out.last() != Some(&t) {
            out.push(t);
        }
    }
    out
}

fn oracle(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    use FiberType::*;
    let n = ctx.samples(10);
    let res = FIBER_RESOLUTION;
    let mut r = rng_for(ctx, 6, 0);
    let forms: Vec<_> = (0..n).map(|_| sample_b(&mut r, 0.05)).collect();
    let ag = b_table(ctx, &forms, 40, res, None)?;
    rep.record("agreement", ag.to_json());
    rep.check(
        "fiber agreement heart/diamond",
        json!({ "quartics": n, "per": 40, "resolution": res }),
        None,
        ag.disagree == 0 && ag.agree > 0,
    );

    let nf = QuarticNormalForm::new(-14.0, 24.0);
    let bp = breakpoints(&nf).map_err(|e| e.to_string())?;
    let mut grid: Vec<f64> = (0..=1200).map(|k| -3.0 + 6.0 * k as f64 / 1200.0).collect();
    grid.extend([bp.tau, bp.m23]);
    grid.sort_by(f64::total_cmp);
    for (target, name, want) in [
        (FiberTarget::Heart, "heart", vec![Empty, Point, ClosedSegment, HalfOpenInterval, Empty]),
        (FiberTarget::Diamond, "diamond", vec![Empty, OpenInterval, HalfOpenInterval, ClosedSegment, Point, Empty]),
    ] {
        let v = map_range(grid.len(), ctx.mode, |i| fiber_oracle(&nf, grid[i], target, res));
        let v: Vec<FiberVerdict> = v.into_iter().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let seq = collapse(&v.iter().filter_map(FiberVerdict::fiber).collect::<Vec<_>>());
        rep.check(
            &format!("reference sequence {name}"),
            json!({ "a": -14.0, "b": 24.0, "found": format!("{seq:?}"), "expected": format!("{want:?}") }),
            None,
            seq == want,
        );
    }
    Ok(())
}

fn dcell(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    d_thresholds(ctx, FIBER_RESOLUTION, rep)?;
    let ag = d_table(ctx, ctx.samples(40), FIBER_RESOLUTION, None)?;
    rep.record("agreement", ag.to_json());
    rep.check("fiber agreement dcell", json!({ "resolution": FIBER_RESOLUTION }), None, ag.disagree == 0 && ag.flagged == 0);
    Ok(())
}

fn cells(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let k = ctx.samples(1);
    let mut r = rng_for(ctx, 7, 0);
    let mut forms = Vec::new();
    for label in [CellLabel::A, CellLabel::APrime, CellLabel::B, CellLabel::BPrime, CellLabel::D, CellLabel::E, CellLabel::EPrime] {
        for _ in 0..k {
            let (a, b) = sample_cell(&mut r, label, 0.05);
            forms.push(QuarticNormalForm::new(a, b));
        }
    }
    summaries(ctx, &forms, SUMMARY_RESOLUTION, rep)?;
    let m = 20 * k;
    let mut good = 0;
    for _ in 0..m {
        let (a, _) = sample_cell(&mut r, CellLabel::C, 0.05);
        let f = Poly::quartic(a, 0.0);
        let h = Poly::quartic(a + r.random_range(0.5..2.0), 0.0);
        let line = canonical_line(&f, &h).map_err(|e| e.to_string())?;
        let inf = line.g().degree() == 2 && common_conditions(&line).map_err(|e| e.to_string())?.is_infinite();
        good += inf as usize;
    }
    rep.check(
        "cell C infinite along t^2",
        json!({ "samples": m, "violations": m - good }),
        None,
        good == m && classify(1.0, 0.0) == CellLabel::C && classify(0.0, 0.0) == CellLabel::O,
    );
    Ok(())
}

fn critical(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let n = ctx.samples(50);
    let mut r = rng_for(ctx, 8, 0);
    let mut bad = 0;
    let mut total = 0;
    let mut closest = f64::INFINITY;
    for _ in 0..n {
        let nf = sample_b(&mut r, 0.05);
        let bp = breakpoints(&nf).map_err(|e| e.to_string())?;
        let mut grid: Vec<f64> = (1..=10).map(|k| bp.c + (bp.m23 - bp.c) * k as f64 / 10.0).collect();
        grid.extend((1..=10).map(|k| bp.c - (1.0 + bp.c.abs()) * k as f64 / 8.0));
        for nabla in grid {
            total += 1;
            closest = closest.min((nabla - bp.c).abs());
            let want = if nabla > bp.c { 2 } else { 0 };
            let got = interior_finite_critical_points(&nf, nabla).map_err(|e| e.to_string())?.len();
            bad += (got != want) as usize;
        }
    }
    rep.check(
        "two interior critical points beyond cbrt(b)/2",
        json!({ "pairs": total, "violations": bad, "closest": closest }),
        None,
        bad == 0,
    );
    Ok(())
}

fn linking(ctx: &Ctx, args: &Args, rep: &mut Report) -> Result<(), String> {
    if args.n < 3 {
        return Err(format!("--n must be at least 3, got {}", args.n));
    }
    let w = winding_linking(&orbit_loop(4, 64)).map_err(|e| e.to_string())?;
    rep.check("orbit loop winding", json!({ "n": 3, "d": 4, "winding": w }), None, w.abs() == 1);
    let sphere = orbit_sphere(args.n, 4).map_err(|e| e.to_string())?;
    let deg = degree_linking_with(&sphere, ctx.seed, ctx.mode).map_err(|e| e.to_string())?;
    rep.check("orbit sphere degree", json!({ "n": args.n, "d": 4, "degree": deg }), None, deg.abs() == 1);
    for fam in disk_families() {
        let wb = winding_linking(&fam.boundary(256).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let c = singular_crossing_count(&fam, 24).map_err(|e| e.to_string())?;
        rep.check(
            &format!("disk {} crossings match boundary winding", fam.name),
            json!({ "crossings": c, "winding": wb }),
            None,
            c.abs() == wb.abs(),
        );
    }
    Ok(())
}

/// `h + c t` with `c` chosen so that the planted condition holds.
fn plant(h: &Poly, t0: f64, s0: Option<f64>) -> Poly {
    let c = match s0 {
        Some(s0) => (h.eval(s0) - h.eval(t0)) / (t0 - s0),
        None => -h.derivative().evalf(t0),
    };
    let mut coeffs = h.coeffs().to_vec();
    *coeffs.last_mut().expect("degree at least 2") += c;
    Poly::new(h.degree(), coeffs).expect("monic")
}

fn sigma(ctx: &Ctx, _: &Args, rep: &mut Report) -> Result<(), String> {
    let tol = ctx.tol(1e-6);
    let line = Poly::cubic(0.0, 1.0);
    let embedded = KnotMap::new(vec![line.clone(), line.clone(), line]).map_err(|e| e.to_string())?;
    let clean = sigma_test(&embedded).map_err(|e| e.to_string())?.is_none();
    rep.check("embedded cubic map has no witness", json!({}), None, clean);

    let n = ctx.samples(1_000);
    let res = map_range(n, ctx.mode, |i| -> polyknot::Result<(bool, f64)> {
        let mut r = rng_for(ctx, 9, i);
        let d = r.random_range(3..=5);
        let comps = r.random_range(3..=4);
        let t0 = r.random_range(-1.5..1.5);
        let s0 = r.random_bool(0.7).then(|| t0 + r.random_range(0.3..2.0));
        let map = KnotMap::new((0..comps).map(|_| plant(&random_poly(&mut r, d, 2.0), t0, s0)).collect())?;
        let err = sigma_witnesses(&map)?
            .iter()
            .filter_map(|w| match (*w, s0) {
                (SigmaWitness::Multiple { t, s }, Some(s0)) => Some((t - t0).abs().max((s - s0).abs())),
                (SigmaWitness::Singular { t }, None) => Some((t - t0).abs()),
                _ => None,
            })
            .fold(f64::INFINITY, f64::min);
        Ok((sigma_test(&map)?.is_some(), err))
    });
    let (mut found, mut worst) = (0, 0.0f64);
    for r in res {
        let (hit, err) = r.map_err(|e| e.to_string())?;
        found += (hit && err < tol) as usize;
        worst = worst.max(err);
    }
    rep.check(
        "planted witnesses recovered",
        json!({ "maps": n, "missed": n - found, "tolerance": tol, "worst": worst }),
        Some(tol - worst),
        found == n,
    );

    let m = (n / 10).max(1);
    let exc = map_range(m, ctx.mode, |i| -> polyknot::Result<bool> {
        let mut r = rng_for(ctx, 10, i);
        let d = if i % 2 == 0 { 4 } else { 6 };
        let x1 = random_poly(&mut r, d, 2.0);
        let add = |k: usize| {
            let mut c = x1.coeffs().to_vec();
            c[d - 1 - k] += 1.0;
            Poly::new(d, c)
        };
        let map = KnotMap::new(vec![x1.clone(), add(1)?, add(2)?])?;
        let w = sigma_witnesses(&map)?;
        Ok(w.iter().all(|w| !w.is_geometric())
            && w.iter().any(|w| matches!(w, SigmaWitness::ExceptionalStratum { alpha } if (alpha - x1.a1()).abs() < 1e-12)))
    });
    let mut good = 0;
    for e in exc {
        good += e.map_err(|e| e.to_string())? as usize;
    }
    rep.check("exceptional stratum detected", json!({ "maps": m, "missed": m - good }), None, good == m);
    Ok(())
}
