use std::collections::BTreeMap;

use polyknot::cells::{classify, sample_b, sample_cell, CellLabel, QuarticNormalForm};
use polyknot::par::map_range;
use polyknot::scanner::{
    breakpoints, d_cell_fiber, d_cell_threshold, diamond_fiber_with, fiber_oracle,
    fiber_oracle_multi, heart_fiber_with, lines_through_summary, DThreshold, FiberTarget,
    FiberVerdict, SummaryOptions,
};
use rand::Rng;
use serde_json::{json, Value};

use crate::context::{parse_cell, Ctx};
use crate::report::{to_value, Report};

pub const FIBER_RESOLUTION: usize = 512;
pub const SUMMARY_RESOLUTION: usize = 64;

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Cell to sample from (A, A', B, B', C, D, E, E', O).
    #[arg(long, conflicts_with_all = ["a", "b"])]
    pub cell: Option<String>,
    #[arg(long, allow_hyphen_values = true, requires = "b")]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub b: Option<f64>,
    /// Samples per gap of the oracle sweep (at least 16).
    #[arg(long)]
    pub resolution: Option<usize>,
    /// `∇` values per sampled quartic in the fiber table.
    #[arg(long, default_value_t = 40)]
    pub per: usize,
}

pub fn verdict_name(v: &FiberVerdict) -> String {
    match v {
        FiberVerdict::Fiber(t) => format!("{t:?}"),
        FiberVerdict::Ambiguous { near, .. } => format!("Ambiguous({near})"),
    }
}

/// Analytic against oracle verdicts, keyed by target.
#[derive(Default)]
pub struct Agreement {
    matrix: BTreeMap<&'static str, BTreeMap<String, BTreeMap<String, usize>>>,
    pub agree: usize,
    pub disagree: usize,
    pub flagged: usize,
}

impl Agreement {
    pub fn add(&mut self, target: &'static str, analytic: &FiberVerdict, oracle: &FiberVerdict) -> Option<bool> {
        *self
            .matrix
            .entry(target)
            .or_default()
            .entry(verdict_name(analytic))
            .or_default()
            .entry(verdict_name(oracle))
            .or_default() += 1;
        match (analytic.fiber(), oracle.fiber()) {
            (None, _) => {
                self.flagged += 1;
                None
            }
            (Some(x), Some(y)) if x == y => {
                self.agree += 1;
                Some(true)
            }
            _ => {
                self.disagree += 1;
                Some(false)
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "matrix": self.matrix,
            "agree": self.agree,
            "disagree": self.disagree,
            "flagged": self.flagged,
        })
    }
}

fn resolution(args: &Args, default: usize) -> Result<usize, String> {
    let r = args.resolution.unwrap_or(default);
    if r < 16 {
        return Err(format!("resolution {r} is below the minimum of 16"));
    }
    Ok(r)
}

/// `∇` values for a quartic in `B`: half around the ♥ range, half around the ♦ range.
pub fn b_nablas(nf: &QuarticNormalForm, per: usize, r: &mut impl Rng) -> Result<Vec<f64>, String> {
    let bp = breakpoints(nf).map_err(|e| e.to_string())?;
    Ok((0..per)
        .map(|k| {
            if k < per / 2 {
                let pad = 0.2 * (bp.xi - bp.tau);
                r.random_range(bp.tau - pad..bp.xi + pad)
            } else {
                let pad = 0.2 * (bp.m23 - bp.c);
                r.random_range(bp.c - pad..bp.m23 + pad)
            }
        })
        .collect())
}

/// Fiber rows for quartics in `B`, compared with the analytic lists.
pub fn b_table(
    ctx: &Ctx,
    forms: &[QuarticNormalForm],
    per: usize,
    res: usize,
    rep: Option<&mut Report>,
) -> Result<Agreement, String> {
    let mut jobs = Vec::new();
    for (i, nf) in forms.iter().enumerate() {
        let mut r = ctx.rng(1_000 + i as u64);
        for n in b_nablas(nf, per, &mut r)? {
            jobs.push((*nf, n));
        }
    }
    let out = map_range(jobs.len(), ctx.mode, |k| {
        let (nf, n) = jobs[k];
        let bp = breakpoints(&nf)?;
        let oracle = fiber_oracle_multi(&nf, n, &[FiberTarget::Heart, FiberTarget::Diamond], res)?;
        Ok::<_, polyknot::Error>([
            (heart_fiber_with(&bp, n), oracle[0].clone()),
            (diamond_fiber_with(&bp, n), oracle[1].clone()),
        ])
    });
    let mut agreement = Agreement::default();
    let mut rows = Vec::new();
    for ((nf, n), o) in jobs.iter().zip(out) {
        let o = o.map_err(|e| e.to_string())?;
        for ((analytic, oracle), target) in o.iter().zip(["heart", "diamond"]) {
            let ok = agreement.add(target, analytic, oracle);
            rows.push(json!({
                "a": nf.a, "b": nf.b, "nabla": n, "target": target,
                "analytic": verdict_name(analytic), "oracle": verdict_name(oracle), "agree": ok,
            }));
        }
    }
    if let Some(rep) = rep {
        for row in rows {
            rep.record("fiber", row);
        }
    }
    Ok(agreement)
}

/// `∇` grid for `t^4 - 2t^2`, symmetric and off the thresholds.
pub fn d_grid(per: usize) -> Vec<f64> {
    let half = per.div_ceil(2).max(1);
    (0..half)
        .map(|k| 0.0137 + 0.7 * k as f64 / half as f64)
        .flat_map(|x| [x, -x])
        .collect()
}

pub fn d_table(ctx: &Ctx, per: usize, res: usize, rep: Option<&mut Report>) -> Result<Agreement, String> {
    let nf = QuarticNormalForm::new(-2.0, 0.0);
    let grid = d_grid(per);
    let out = map_range(grid.len(), ctx.mode, |i| fiber_oracle(&nf, grid[i], FiberTarget::DCell, res));
    let mut agreement = Agreement::default();
    let mut rows = Vec::new();
    for (&n, o) in grid.iter().zip(out) {
        let o = o.map_err(|e| e.to_string())?;
        let analytic = d_cell_fiber(n);
        let ok = agreement.add("dcell", &analytic, &o);
        rows.push(json!({
            "a": -2.0, "b": 0.0, "nabla": n, "target": "dcell",
            "analytic": verdict_name(&analytic), "oracle": verdict_name(&o), "agree": ok,
        }));
    }
    if let Some(rep) = rep {
        for row in rows {
            rep.record("fiber", row);
        }
    }
    Ok(agreement)
}

pub const D_THRESHOLDS: [(DThreshold, &str, f64); 4] = [
    (DThreshold::Circle, "circle extremum", 2.0 / 3.0),
    (DThreshold::Nonempty, "nonempty", 0.5),
    (DThreshold::Closed, "closed", std::f64::consts::SQRT_2 / 3.0),
    (DThreshold::Punctured, "punctured", 1.0 / 3.0),
];

/// Locates each threshold of the `t^4 - 2t^2` fiber list and checks it
/// against its closed form.
pub fn d_thresholds(ctx: &Ctx, res: usize, rep: &mut Report) -> Result<(), String> {
    let tol = ctx.tol(1e-6);
    for (which, name, exact) in D_THRESHOLDS {
        let x = d_cell_threshold(which, res).map_err(|e| e.to_string())?;
        let err = (x - exact).abs();
        rep.record("threshold", json!({ "name": name, "located": x, "closed_form": exact }));
        rep.check(
            &format!("dcell threshold {name}"),
            json!({ "resolution": res, "tolerance": tol }),
            Some(tol - err),
            err <= tol,
        );
    }
    Ok(())
}

pub fn summary_opts(ctx: &Ctx, res: usize) -> SummaryOptions {
    SummaryOptions {
        resolution: res,
        mode: ctx.mode,
        ..SummaryOptions::default()
    }
}

/// Per-cell summaries for quartics off `B` and `D`.
pub fn summaries(ctx: &Ctx, forms: &[QuarticNormalForm], res: usize, rep: &mut Report) -> Result<(), String> {
    let opts = summary_opts(ctx, res);
    for nf in forms {
        let s = lines_through_summary(nf, opts).map_err(|e| e.to_string())?;
        let pass = s.consistent();
        rep.record("summary", json!({ "a": nf.a, "b": nf.b, "summary": to_value(&s) }));
        rep.check(
            &format!("cell {} structure", s.cell),
            json!({ "a": nf.a, "b": nf.b, "expected": to_value(&s.expected) }),
            None,
            pass,
        );
    }
    Ok(())
}

fn agreement_check(rep: &mut Report, ag: &Agreement, id: &str, inputs: Value) {
    rep.record("agreement", ag.to_json());
    rep.check(id, inputs, None, ag.disagree == 0 && ag.agree > 0);
}

pub fn run(ctx: &Ctx, args: &Args) -> Result<Report, String> {
    if args.per == 0 {
        return Err("--per must be at least 1".into());
    }
    let (cell, forms): (CellLabel, Vec<QuarticNormalForm>) = match (&args.cell, args.a, args.b) {
        (Some(c), None, None) => {
            let cell = parse_cell(c)?;
            let n = ctx.samples(if cell == CellLabel::D { 1 } else { 5 });
            let mut r = ctx.rng(1);
            let forms = (0..n)
                .map(|_| match cell {
                    CellLabel::B => sample_b(&mut r, 0.05),
                    CellLabel::BPrime => {
                        let nf = sample_b(&mut r, 0.05);
                        QuarticNormalForm::new(nf.a, -nf.b)
                    }
                    c => {
                        let (a, b) = sample_cell(&mut r, c, 0.05);
                        QuarticNormalForm::new(a, b)
                    }
                })
                .collect();
            (cell, forms)
        }
        (None, Some(a), Some(b)) => (classify(a, b), vec![QuarticNormalForm::new(a, b)]),
        _ => return Err("give either --cell or --a and --b".into()),
    };
    let mut rep = Report::new(
        "scan",
        json!({ "cell": cell.name(), "samples": forms.len(), "per": args.per, "seed": ctx.seed }),
    );
    match cell {
        CellLabel::B | CellLabel::BPrime => {
            let res = resolution(args, FIBER_RESOLUTION)?;
            // t -> -t carries B' to B
            let b_forms: Vec<_> = forms.iter().map(|nf| QuarticNormalForm::new(nf.a, nf.b.abs())).collect();
            if cell == CellLabel::BPrime {
                rep.record("note", json!({ "mirrored": true, "text": "B' is scanned through its mirror image in B" }));
            }
            let ag = b_table(ctx, &b_forms, args.per, res, Some(&mut rep))?;
            agreement_check(&mut rep, &ag, "fiber agreement heart/diamond", json!({ "resolution": res }));
        }
        CellLabel::D => {
            let res = resolution(args, FIBER_RESOLUTION)?;
            for nf in &forms {
                // t^4 + a t^2 is t^4 - 2t^2 after t -> lambda t
                let lambda = (-nf.a / 2.0).sqrt();
                rep.record("reference", json!({ "a": nf.a, "lambda": lambda, "nabla_scale": lambda }));
            }
            let ag = d_table(ctx, args.per, res, Some(&mut rep))?;
            agreement_check(&mut rep, &ag, "fiber agreement dcell", json!({ "resolution": res }));
            d_thresholds(ctx, res, &mut rep)?;
        }
        _ => {
            let res = resolution(args, SUMMARY_RESOLUTION)?;
            summaries(ctx, &forms, res, &mut rep)?;
        }
    }
    Ok(rep)
}
