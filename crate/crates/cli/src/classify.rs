use polyknot::cells::{classify_with_margin, CellLabel, critical_roots, normalize, QuarticNormalForm};
use polyknot::conditions::{canonical_line, common_conditions};
use polyknot::scanner::breakpoints;
use polyknot::symcurve::decompose_quartic;
use polyknot::Poly;
use serde_json::json;

use crate::context::{parse_list, Ctx};
use crate::report::{to_value, Report};

#[derive(clap::Args, Debug)]
pub struct Args {
    /// `t^2` coefficient of the normal form `t^4 + a t^2 + b t`.
    #[arg(long, allow_hyphen_values = true, requires = "b", conflicts_with = "coeffs")]
    pub a: Option<f64>,
    /// `t` coefficient of the normal form.
    #[arg(long, allow_hyphen_values = true, requires = "a")]
    pub b: Option<f64>,
    /// `a1,a2,a3` of a monic quartic `t^4 + a1 t^3 + a2 t^2 + a3 t`.
    #[arg(long, allow_hyphen_values = true)]
    pub coeffs: Option<String>,
    /// A second quartic `a1,a2,a3`; reports the conditions shared by the line
    /// through both.
    #[arg(long, allow_hyphen_values = true)]
    pub line: Option<String>,
}

fn quartic(s: &str) -> Result<Poly, String> {
    let c = parse_list(s)?;
    Poly::new(4, c).map_err(|e| format!("{s:?}: {e}"))
}

/// The polynomial named by `--a/--b` or `--coeffs`.
pub fn input_poly(a: Option<f64>, b: Option<f64>, coeffs: Option<&str>) -> Result<Poly, String> {
    match (a, b, coeffs) {
        (Some(a), Some(b), None) => Ok(Poly::quartic(a, b)),
        (None, None, Some(c)) => quartic(c),
        _ => Err("give either --a and --b or --coeffs".into()),
    }
}

pub fn run(ctx: &Ctx, args: &Args) -> Result<Report, String> {
    let f = input_poly(args.a, args.b, args.coeffs.as_deref())?;
    let nf = normalize(&f).map_err(|e| e.to_string())?;
    let mut rep = Report::new("classify", json!({ "poly": f.to_string(), "coeffs": f.coeffs() }));
    rep.record("normal_form", json!({ "t0": nf.t0 + 0.0, "a": nf.a, "b": nf.b, "poly": nf.to_poly().to_string() }));

    // the normal form translated back must reproduce the input
    let back = nf.original();
    let err = f
        .coeffs()
        .iter()
        .zip(back.coeffs())
        .map(|(x, y)| (x - y).abs() / (1.0 + x.abs()))
        .fold(0.0, f64::max);
    let tol = ctx.tol(1e-9);
    rep.check("normal-form round trip", json!({ "tolerance": tol }), Some(tol - err), err <= tol);

    let (cell, margin) = classify_with_margin(nf.a, nf.b);
    rep.record("cell", json!({ "cell": cell.name(), "boundary_margin": margin }));
    let crit = critical_roots(&nf);
    rep.record(
        "critical_roots",
        json!({
            "values": crit.values(),
            "multiplicities": crit.roots.roots().iter().map(|r| r.multiplicity).collect::<Vec<_>>(),
            "distinct": crit.distinct(),
        }),
    );
    let comps = decompose_quartic(&f).map_err(|e| e.to_string())?;
    rep.record("relation_curve", json!({ "components": to_value(&comps) }));

    match cell {
        CellLabel::B => {
            let bp = breakpoints(&nf).map_err(|e| e.to_string())?;
            rep.record("breakpoints", json!({ "mirrored": false, "values": to_value(&bp) }));
        }
        CellLabel::BPrime => {
            // t -> -t carries B' to B
            let bp = breakpoints(&QuarticNormalForm::new(nf.a, -nf.b)).map_err(|e| e.to_string())?;
            rep.record("breakpoints", json!({ "mirrored": true, "values": to_value(&bp) }));
        }
        _ => {}
    }

    if let Some(h) = &args.line {
        let h = quartic(h)?;
        let line = canonical_line(&f, &h).map_err(|e| e.to_string())?;
        let c = common_conditions(&line).map_err(|e| e.to_string())?;
        rep.record(
            "conditions",
            json!({
                "through": h.to_string(),
                "base": line.f().to_string(),
                "direction": line.g().to_string(),
                "count": c.count(),
                "infinite": c.is_infinite(),
                "exactly_three": c.is_exactly_three(),
                "witnesses": to_value(&c.witnesses()),
            }),
        );
    }
    Ok(rep)
}
