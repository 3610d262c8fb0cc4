use std::fs;
use std::path::PathBuf;

use polyknot::cells::{critical_roots, CellLabel, QuarticNormalForm};
use polyknot::conditions::lemma7_region_test;
use polyknot::par::map_collect;
use polyknot::scanner::{breakpoints, membership_pieces, FiberTarget, Piece};
use polyknot::symcurve::relation_curve;
use polyknot::Poly;
use serde_json::json;

use crate::context::{parse_list, Ctx};
use crate::report::Report;
use crate::scan::FIBER_RESOLUTION;
use crate::svg::{Stroke, Svg};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Figure {
    /// The cell atlas of the `(a, b)` plane.
    Cells,
    /// `r(f)` with the half ellipses of a cubic family.
    Rcurves,
    /// Where the line in direction `t^3 - t` shares exactly three conditions.
    #[value(alias = "lemma7")]
    Region,
    /// ♥ fibers over `∇` for a quartic in `B`.
    Heart,
    /// ♦ fibers over `∇` for a quartic in `B`.
    Diamond,
    /// Three-condition fibers of `t^4 - 2t^2`.
    Dcell,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long, value_enum)]
    pub figure: Figure,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    /// `∇` of the cubic family `t^3 - 3∇t^2 + βt` drawn over `r(f)`.
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.5)]
    pub nabla: f64,
    /// Comma separated `β` values of the drawn family members.
    #[arg(long, allow_hyphen_values = true)]
    pub betas: Option<String>,
    /// Destination of the SVG; defaults to `<figure>.svg`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Columns of the `∇` grid for fiber figures.
    #[arg(long, default_value_t = 300)]
    pub slices: usize,
}

const W: f64 = 640.0;
const H: f64 = 480.0;

fn cells_figure() -> (String, usize) {
    let mut s = Svg::new(W, H, (-6.0, 3.0), (-8.0, 8.0));
    let curve = |sign: f64| -> Vec<(f64, f64)> {
        (0..=300)
            .map(|k| {
                let a = -6.0 + 6.0 * k as f64 / 300.0;
                (a, sign * (-8.0 * a * a * a / 27.0).sqrt())
            })
            .collect()
    };
    s.polyline(&curve(1.0), Stroke::solid("crimson", 2.0));
    s.polyline(&curve(-1.0), Stroke::solid("crimson", 2.0));
    s.line((-6.0, 0.0), (0.0, 0.0), Stroke::solid("navy", 2.0));
    s.line((0.0, 0.0), (3.0, 0.0), Stroke::solid("seagreen", 2.0));
    s.dot(0.0, 0.0, 4.0, "black", true);
    let mut n = 5;
    for (a, b, label) in [
        (-1.5, 5.0, "A"),
        (-1.5, -5.0, "A'"),
        (-4.5, 2.0, "B"),
        (-4.5, -2.0, "B'"),
        (1.5, 0.5, "C"),
        (-3.0, 0.5, "D"),
        (-5.0, 7.0, "E"),
        (-5.0, -6.5, "E'"),
        (0.3, -0.9, "O"),
    ] {
        s.text(a, b, label, 16.0);
        n += 1;
    }
    (s.finish("cells of t^4 + a t^2 + b t", "a", "b"), n)
}

fn rcurves_figure(nf: &QuarticNormalForm, nabla: f64, betas: &[f64]) -> Result<(String, usize), String> {
    let xs = critical_roots(nf).values();
    let span = 1.5 + 1.5 * xs.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut s = Svg::new(W, W, (-span, span), (-span, span));
    let mut n = 0;
    s.line((-span, -span), (span, span), Stroke::dashed("gray", 1.0));
    let rf = relation_curve(&nf.to_poly()).map_err(|e| e.to_string())?;
    for (t, u) in rf.sample_ts(-span, span, 1200) {
        s.dot(t, u, 1.2, "navy", true);
        n += 1;
    }
    let colors = ["crimson", "darkorange", "seagreen", "purple"];
    for (i, &beta) in betas.iter().enumerate() {
        let rg = relation_curve(&Poly::cubic(-3.0 * nabla, beta)).map_err(|e| e.to_string())?;
        for (t, u) in rg.sample_ts(-span, span, 600) {
            s.dot(t, u, 1.0, colors[i % colors.len()], true);
            n += 1;
        }
    }
    for x in xs {
        s.dot(x, x, 4.0, "black", true);
    }
    let title = format!("r(f) for f = {}, family at nabla = {nabla}", nf.to_poly());
    Ok((s.finish(&title, "t", "s"), n))
}

fn region_figure() -> (String, usize) {
    let (ax, bx) = ((-3.0, 2.0), (-3.0, 3.0));
    let mut s = Svg::new(W, H, ax, bx);
    let m = 160;
    let (da, db) = ((ax.1 - ax.0) / m as f64, (bx.1 - bx.0) / m as f64);
    let mut n = 0;
    for i in 0..m {
        for j in 0..m {
            let a = ax.0 + (i as f64 + 0.5) * da;
            let b = bx.0 + (j as f64 + 0.5) * db;
            if lemma7_region_test(a, b) {
                s.rect((a - da / 2.0, b - db / 2.0), (a + da / 2.0, b + db / 2.0), "steelblue", 0.5);
                n += 1;
            }
        }
    }
    // double roots of p^3 - (a + 2)p - b are excluded
    let disc = |sign: f64| -> Vec<(f64, f64)> {
        (0..=300)
            .map(|k| {
                let a = -2.0 + (ax.1 + 2.0) * k as f64 / 300.0;
                (a, sign * (4.0 * (a + 2.0).powi(3) / 27.0).sqrt())
            })
            .collect()
    };
    s.polyline(&disc(1.0), Stroke::dashed("crimson", 1.5));
    s.polyline(&disc(-1.0), Stroke::dashed("crimson", 1.5));
    // a root at p = ±2/√3 is allowed
    let p0 = 2.0 / 3f64.sqrt();
    for p in [p0, -p0] {
        let b = |a: f64| p * p * p - (a + 2.0) * p;
        s.line((ax.0, b(ax.0)), (ax.1, b(ax.1)), Stroke::solid("navy", 1.5));
    }
    (s.finish("three conditions along t^3 - t", "a", "b"), n)
}

/// One end of one piece followed across slices of the same shape.
struct Trace {
    piece: usize,
    upper: bool,
    closed: bool,
    pts: Vec<(f64, f64)>,
}

/// Fiber pieces over a grid of `∇`, drawn as vertical strokes with their
/// endpoint traces solid where closed and dashed where open.
fn fiber_figure(
    ctx: &Ctx,
    nf: &QuarticNormalForm,
    targets: &[(FiberTarget, &'static str)],
    window: (f64, f64),
    slices: usize,
    title: &str,
) -> Result<(String, usize), String> {
    let grid: Vec<f64> = (0..slices)
        .map(|k| window.0 + (window.1 - window.0) * (k as f64 + 0.5) / slices as f64)
        .collect();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut all = Vec::new();
    for &(t, color) in targets {
        let pieces = map_collect(&grid, ctx.mode, |&x| membership_pieces(nf, x, t, FIBER_RESOLUTION));
        let pieces: Vec<Vec<Piece>> = pieces.into_iter().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for p in pieces.iter().flatten() {
            lo = lo.min(p.lo);
            hi = hi.max(p.hi);
        }
        all.push((pieces, color));
    }
    if !lo.is_finite() {
        lo = -1.0;
        hi = 1.0;
    }
    let pad = 0.1 * (hi - lo).max(1e-3);
    let mut s = Svg::new(W, H, window, (lo - pad, hi + pad));
    let mut n = 0;
    for (pieces, color) in &all {
        let mut traces: Vec<Trace> = Vec::new();
        let flush = |s: &mut Svg, tr: &mut Vec<Trace>| {
            for t in tr.drain(..) {
                let stroke = if t.closed { Stroke::solid(color, 1.5) } else { Stroke::dashed(color, 1.5) };
                if t.pts.len() >= 2 {
                    s.polyline(&t.pts, stroke);
                }
            }
        };
        let mut prev_shape: Vec<(bool, bool)> = Vec::new();
        for (x, ps) in grid.iter().zip(pieces) {
            let shape: Vec<(bool, bool)> = ps.iter().map(|p| (p.lo_closed, p.hi_closed)).collect();
            if shape != prev_shape {
                flush(&mut s, &mut traces);
                for (j, p) in ps.iter().enumerate() {
                    traces.push(Trace { piece: j, upper: false, closed: p.lo_closed, pts: Vec::new() });
                    traces.push(Trace { piece: j, upper: true, closed: p.hi_closed, pts: Vec::new() });
                }
                prev_shape = shape;
            }
            for tr in traces.iter_mut() {
                let p = ps[tr.piece];
                tr.pts.push((*x, if tr.upper { p.hi } else { p.lo }));
            }
            for p in ps {
                if p.is_point() {
                    s.dot(*x, p.lo, 1.5, color, true);
                } else {
                    s.line((*x, p.lo), (*x, p.hi), Stroke::solid(color, 0.6));
                }
                n += 1;
            }
        }
        flush(&mut s, &mut traces);
    }
    Ok((s.finish(title, "nabla", "beta"), n))
}

pub fn run(ctx: &Ctx, args: &Args) -> Result<Report, String> {
    if args.slices < 2 {
        return Err("--slices must be at least 2".into());
    }
    let name = format!("{:?}", args.figure).to_lowercase();
    let out = args.out.clone().unwrap_or_else(|| PathBuf::from(format!("{name}.svg")));
    let form = |default: (f64, f64)| QuarticNormalForm::new(args.a.unwrap_or(default.0), args.b.unwrap_or(default.1));
    let (svg, elements) = match args.figure {
        Figure::Cells => cells_figure(),
        Figure::Rcurves => {
            let nf = form((-14.0, 24.0));
            let betas = match &args.betas {
                Some(s) => parse_list(s)?,
                None => vec![-10.0, -4.0, 0.0],
            };
            rcurves_figure(&nf, args.nabla, &betas)?
        }
        Figure::Region => region_figure(),
        Figure::Heart | Figure::Diamond => {
            let nf = form((-14.0, 24.0));
            if nf.cell() != CellLabel::B {
                return Err(format!("fiber figures need a quartic in B, got {}", nf.cell()));
            }
            let bp = breakpoints(&nf).map_err(|e| e.to_string())?;
            let (target, lo, hi) = if args.figure == Figure::Heart {
                (FiberTarget::Heart, bp.omega1.min(bp.tau), bp.xi)
            } else {
                (FiberTarget::Diamond, bp.c, bp.m23)
            };
            let pad = 0.2 * (hi - lo);
            let title = format!("{name} fibers of {}", nf.to_poly());
            fiber_figure(ctx, &nf, &[(target, "navy")], (lo - pad, hi + pad), args.slices, &title)?
        }
        Figure::Dcell => {
            let nf = QuarticNormalForm::new(-2.0, 0.0);
            fiber_figure(ctx, &nf, &[(FiberTarget::DCell, "navy")], (-0.8, 0.8), args.slices, "three-condition fibers of t^4 - 2t^2")?
        }
    };
    fs::write(&out, &svg).map_err(|e| format!("{}: {e}", out.display()))?;
    let mut rep = Report::new("plot", json!({ "figure": name, "a": args.a, "b": args.b, "nabla": args.nabla }));
    rep.record("figure", json!({ "figure": name, "path": out.display().to_string(), "bytes": svg.len(), "elements": elements }));
    rep.check("figure has content", json!({ "figure": name }), None, elements > 0);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use polyknot::cells::classify;

    #[test]
    fn static_figures_are_deterministic() {
        assert_eq!(cells_figure().0, cells_figure().0);
        let (a, n) = region_figure();
        assert!(n > 0);
        assert_eq!(a, region_figure().0);
        assert!(a.contains("stroke-dasharray"));
    }

    #[test]
    fn cell_labels_sit_in_their_cells() {
        for (a, b, c) in [(-1.5, 5.0, CellLabel::A), (-4.5, 2.0, CellLabel::B), (-4.5, -2.0, CellLabel::BPrime)] {
            assert_eq!(classify(a, b), c);
        }
    }
}
