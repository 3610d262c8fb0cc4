//! Signed count of singular maps inside a disk of maps.

use serde::Serialize;

use super::linking::{diagonal_complement, LoopSample};
use super::KnotMap;
use crate::error::{Error, Result};
use crate::par::{map_collect, ExecMode};
use crate::polyring::{real_roots, Poly, UPoly};

type MapFn = dyn Fn(f64, f64) -> KnotMap + Send + Sync;

/// A map of the unit disk `u^2 + v^2 <= 1` into three-component maps.
pub struct DiskFamily {
    pub name: &'static str,
    map: Box<MapFn>,
}

impl DiskFamily {
    pub fn new(name: &'static str, map: impl Fn(f64, f64) -> KnotMap + Send + Sync + 'static) -> Self {
        DiskFamily {
            name,
            map: Box::new(map),
        }
    }

    pub fn at(&self, u: f64, v: f64) -> KnotMap {
        (self.map)(u, v)
    }

    pub fn boundary(&self, samples: usize) -> Result<LoopSample> {
        LoopSample::new(
            (0..samples)
                .map(|k| {
                    let th = std::f64::consts::TAU * k as f64 / samples as f64;
                    self.at(th.cos(), th.sin())
                })
                .collect(),
        )
    }
}

/// Quartic maps `x_i = t^4 + c_i t^3 + c_i t` with
/// `c = (1/3)(1, 1, 1) + sqrt(2/3) (Re w, Im w)` in the orthonormal basis of
/// the diagonal complement, `w = P(u + iv)`. Such a map is singular exactly
/// when `w = 0`; `P(z) = z` spans the orbit loop.
fn complex_family(name: &'static str, pz: impl Fn(f64, f64) -> (f64, f64) + Send + Sync + 'static) -> DiskFamily {
    let basis = diagonal_complement(3);
    let r = (2.0f64 / 3.0).sqrt();
    DiskFamily::new(name, move |u, v| {
        let (re, im) = pz(u, v);
        let c: Vec<f64> = (0..3)
            .map(|i| 1.0 / 3.0 + r * (re * basis[0][i] + im * basis[1][i]))
            .collect();
        KnotMap::new(c.iter().map(|&ci| Poly::new(4, vec![ci, 0.0, ci]).expect("quartic")).collect())
            .expect("equal degrees")
    })
}

fn cmul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Test disks: the orbit-spanning disk, a doubly winding disk, its mirror
/// image, a disk with three singular maps of mixed sign, and a disk far from
/// singular maps.
pub fn disk_families() -> Vec<DiskFamily> {
    vec![
        complex_family("orbit", |u, v| (u, v)),
        complex_family("double", |u, v| {
            let z2 = cmul((u, v), (u, v));
            (z2.0 - 0.09, z2.1)
        }),
        complex_family("mirror", |u, v| (u, -v)),
        complex_family("mixed", |u, v| {
            let a = cmul((u - 0.2, v - 0.1), (u + 0.4, v));
            cmul(a, (u, -(v - 0.5)))
        }),
        DiskFamily::new("far", |u, v| {
            KnotMap::new(vec![
                Poly::new(4, vec![0.0, 0.0, 1.0]).expect("quartic"),
                Poly::new(4, vec![1.0, 0.0, u + 3.0]).expect("quartic"),
                Poly::new(4, vec![0.0, 0.0, v + 3.0]).expect("quartic"),
            ])
            .expect("equal degrees")
        }),
    ]
}

fn derivs(m: &KnotMap) -> Vec<UPoly<f64>> {
    m.components().iter().map(Poly::derivative).collect()
}

fn system(fam: &DiskFamily, x: [f64; 3]) -> [f64; 3] {
    let d = fam.at(x[0], x[1]).derivative_at(x[2]);
    [d[0], d[1], d[2]]
}

fn jacobian(fam: &DiskFamily, x: [f64; 3]) -> [[f64; 3]; 3] {
    let mut j = [[0.0; 3]; 3];
    for k in 0..3 {
        let h = 1e-6 * (1.0 + x[k].abs());
        let (mut a, mut b) = (x, x);
        a[k] += h;
        b[k] -= h;
        let (fa, fb) = (system(fam, a), system(fam, b));
        for i in 0..3 {
            j[i][k] = (fa[i] - fb[i]) / (2.0 * h);
        }
    }
    j
}

fn det3(j: &[[f64; 3]; 3]) -> f64 {
    j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) - j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0])
        + j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0])
}

fn solve3(j: &[[f64; 3]; 3], f: [f64; 3]) -> Option<[f64; 3]> {
    let d = det3(j);
    if d == 0.0 || !d.is_finite() {
        return None;
    }
    let mut out = [0.0; 3];
    for k in 0..3 {
        let mut m = *j;
        for i in 0..3 {
            m[i][k] = f[i];
        }
        out[k] = det3(&m) / d;
    }
    Some(out)
}

fn newton(fam: &DiskFamily, mut x: [f64; 3]) -> Option<[f64; 3]> {
    for _ in 0..40 {
        let f = system(fam, x);
        let step = solve3(&jacobian(fam, x), f)?;
        for k in 0..3 {
            x[k] -= step[k];
        }
        if step.iter().map(|s| s.abs()).sum::<f64>() <= 1e-13 * (1.0 + x[2].abs()) {
            let f = system(fam, x);
            let ok = f.iter().all(|v| v.abs() <= 1e-9 * (1.0 + x[2].abs().powi(3)));
            return ok.then_some(x);
        }
        if x.iter().any(|v| !v.is_finite()) || x[0].abs() > 2.0 || x[1].abs() > 2.0 {
            return None;
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Crossing {
    pub u: f64,
    pub v: f64,
    pub t: f64,
    pub sign: i64,
}

/// Signed count of `(u, v, t)` with `x_i'(t; u, v) = 0` for all three
/// components, inside the unit disk. Candidates come from a triangulated
/// `grid x grid` scan of `[-1, 1]^2`: along each real root of `x_1'`, a
/// triangle whose values of `(x_2', x_3')` surround the origin seeds Newton's
/// method. Each solution counts with the sign of the Jacobian determinant in
/// the order `(u, v, t)` against `(x_1', x_2', x_3')`.
pub fn singular_crossing_count(fam: &DiskFamily, grid: usize) -> Result<i64> {
    Ok(singular_crossings(fam, grid, ExecMode::Parallel)?
        .iter()
        .map(|c| c.sign)
        .sum())
}

pub fn singular_crossings(fam: &DiskFamily, grid: usize, mode: ExecMode) -> Result<Vec<Crossing>> {
    let g = grid.max(4);
    let coord = |k: usize| -1.0 + 2.0 * k as f64 / g as f64;
    let roots: Vec<Vec<f64>> = (0..(g + 1) * (g + 1))
        .map(|idx| {
            let (i, j) = (idx / (g + 1), idx % (g + 1));
            let m = fam.at(coord(i), coord(j));
            real_roots(&derivs(&m)[0], None).map(|r| r.values()).unwrap_or_default()
        })
        .collect();
    let mut tris = Vec::with_capacity(2 * g * g);
    for i in 0..g {
        for j in 0..g {
            let v = |a: usize, b: usize| (a, b);
            tris.push([v(i, j), v(i + 1, j), v(i + 1, j + 1)]);
            tris.push([v(i, j), v(i + 1, j + 1), v(i, j + 1)]);
        }
    }
    let seeds = map_collect(&tris, mode, |tri| {
        let mut out = Vec::new();
        let rs: Vec<&Vec<f64>> = tri.iter().map(|&(a, b)| &roots[a * (g + 1) + b]).collect();
        if rs.iter().any(|r| r.is_empty()) {
            return out;
        }
        let uv: Vec<(f64, f64)> = tri.iter().map(|&(a, b)| (coord(a), coord(b))).collect();
        for &t0 in rs[0] {
            let nearest = |r: &Vec<f64>| {
                r.iter()
                    .copied()
                    .min_by(|a, b| (a - t0).abs().total_cmp(&(b - t0).abs()))
                    .expect("nonempty")
            };
            let ts = [t0, nearest(rs[1]), nearest(rs[2])];
            let e: Vec<(f64, f64)> = (0..3)
                .map(|k| {
                    let d = fam.at(uv[k].0, uv[k].1).derivative_at(ts[k]);
                    (d[1], d[2])
                })
                .collect();
            if let Some(lam) = barycentric_origin(&e) {
                let u = (0..3).map(|k| lam[k] * uv[k].0).sum();
                let v = (0..3).map(|k| lam[k] * uv[k].1).sum();
                let t = (0..3).map(|k| lam[k] * ts[k]).sum();
                out.push([u, v, t]);
            }
        }
        out
    });

    let mut sols: Vec<Crossing> = Vec::new();
    for seed in seeds.into_iter().flatten() {
        let Some(x) = newton(fam, seed) else { continue };
        let r = x[0].hypot(x[1]);
        if r > 1.0 + 1e-6 {
            continue;
        }
        if (r - 1.0).abs() <= 1e-6 {
            return Err(Error::DegenerateCrossing { u: x[0], v: x[1], t: x[2] });
        }
        if sols
            .iter()
            .any(|c| (c.u - x[0]).abs() + (c.v - x[1]).abs() + (c.t - x[2]).abs() < 1e-7)
        {
            continue;
        }
        let j = jacobian(fam, x);
        let det = det3(&j);
        let scale: f64 = j.iter().flatten().map(|v| v.abs()).fold(0.0, f64::max).max(1e-300);
        if det.abs() <= 1e-9 * scale.powi(3) {
            return Err(Error::DegenerateCrossing { u: x[0], v: x[1], t: x[2] });
        }
        sols.push(Crossing {
            u: x[0],
            v: x[1],
            t: x[2],
            sign: det.signum() as i64,
        });
    }
    sols.sort_by(|a, b| a.u.total_cmp(&b.u).then(a.v.total_cmp(&b.v)));
    Ok(sols)
}

/// Barycentric weights of the origin in the triangle `e`, slightly widened,
/// when it lies inside.
fn barycentric_origin(e: &[(f64, f64)]) -> Option<[f64; 3]> {
    let (a, b, c) = (e[0], e[1], e[2]);
    let det = (b.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (b.1 - a.1);
    if det == 0.0 || !det.is_finite() {
        return None;
    }
    let l1 = ((0.0 - a.0) * (c.1 - a.1) - (c.0 - a.0) * (0.0 - a.1)) / det;
    let l2 = ((b.0 - a.0) * (0.0 - a.1) - (0.0 - a.0) * (b.1 - a.1)) / det;
    let l0 = 1.0 - l1 - l2;
    let tol = -1e-6;
    (l0 >= tol && l1 >= tol && l2 >= tol).then_some([l0, l1, l2])
}
