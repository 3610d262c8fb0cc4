//! Rotations about the diagonal, orbit cycles and their linking numbers with
//! the stratum of maps whose first coefficients all agree.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::KnotMap;
use crate::error::{Error, Result};
use crate::par::{map_collect, ExecMode};
use crate::polyring::Poly;

/// Smallest `max - min` of the first coefficients allowed on a linking cycle.
pub const STRATUM_MARGIN: f64 = 1e-6;

pub fn a1_spread(map: &KnotMap) -> f64 {
    super::a1_spread_of(&map.a1s())
}

/// Coefficient vectors `(a_j^1, ..., a_j^n)` for `j = 1..d-1`.
fn coefficient_vectors(map: &KnotMap) -> Vec<Vec<f64>> {
    (1..map.degree())
        .map(|j| map.components.iter().map(|c| c.a(j)).collect())
        .collect()
}

fn from_coefficient_vectors(d: usize, cols: &[Vec<f64>]) -> KnotMap {
    let n = cols.first().map_or(0, Vec::len);
    let comps = (0..n)
        .map(|i| Poly::new(d, cols.iter().map(|v| v[i]).collect()).expect("degree matches"))
        .collect();
    KnotMap { components: comps }
}

/// Rotation of `R^3` about `(1, 1, 1)` by `theta`, applied to every
/// coefficient triple.
pub fn rotate_s1(map: &KnotMap, theta: f64) -> Result<KnotMap> {
    if map.n() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            found: map.n(),
        });
    }
    let r = rotation_about_diagonal(theta);
    let cols: Vec<Vec<f64>> = coefficient_vectors(map)
        .iter()
        .map(|v| (0..3).map(|i| (0..3).map(|k| r[i][k] * v[k]).sum()).collect())
        .collect();
    Ok(from_coefficient_vectors(map.degree(), &cols))
}

fn rotation_about_diagonal(theta: f64) -> [[f64; 3]; 3] {
    let (c, s) = (theta.cos(), theta.sin());
    let n = 1.0 / 3f64.sqrt();
    let k = [[0.0, -n, n], [n, 0.0, -n], [-n, n, 0.0]];
    let mut r = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let id = if i == j { 1.0 } else { 0.0 };
            r[i][j] = c * id + s * k[i][j] + (1.0 - c) * n * n;
        }
    }
    r
}

/// The `theta` in `[0, 2pi)` whose rotation makes `a_1^1 = a_1^2` and
/// `a_1^1 + a_1^2 - 2 a_1^3 > 0`, with the rotated map.
pub fn canonicalize_s1(map: &KnotMap) -> Result<(f64, KnotMap)> {
    if map.n() != 3 {
        return Err(Error::WrongArity {
            expected: 3,
            found: map.n(),
        });
    }
    let a = map.a1s();
    // coordinates in the basis (1,-1,0)/sqrt2, (1,1,-2)/sqrt6 of the plane
    // orthogonal to the axis; the rotation adds theta to the polar angle
    let x = (a[0] - a[1]) / 2f64.sqrt();
    let y = (a[0] + a[1] - 2.0 * a[2]) / 6f64.sqrt();
    if x.hypot(y) <= super::A1_TOL * (1.0 + a[0].abs()) {
        return Err(Error::FixedAxis);
    }
    let mut theta = (PI / 2.0 - y.atan2(x)).rem_euclid(2.0 * PI);
    if theta >= 2.0 * PI - 1e-15 {
        theta = 0.0;
    }
    if theta.abs() <= 1e-15 {
        return Ok((0.0, map.clone()));
    }
    Ok((theta, rotate_s1(map, theta)?))
}

/// Closed loop of maps; the last sample connects back to the first.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopSample {
    pub maps: Vec<KnotMap>,
}

impl LoopSample {
    /// Drops a repeated closing sample.
    pub fn new(mut maps: Vec<KnotMap>) -> Result<Self> {
        if maps.len() > 1 && maps.first() == maps.last() {
            maps.pop();
        }
        if maps.len() < 3 {
            return Err(Error::OpenLoop);
        }
        Ok(LoopSample { maps })
    }
}

/// Winding number of `(a_1^1 - a_1^2, a_1^2 - a_1^3)` around the origin.
pub fn winding_linking(lp: &LoopSample) -> Result<i64> {
    let pts: Vec<(f64, f64)> = lp
        .maps
        .iter()
        .map(|m| {
            if m.n() != 3 {
                return Err(Error::WrongArity {
                    expected: 3,
                    found: m.n(),
                });
            }
            let spread = a1_spread(m);
            if spread < STRATUM_MARGIN {
                return Err(Error::StratumMargin { spread });
            }
            let a = m.a1s();
            Ok((a[0] - a[1], a[1] - a[2]))
        })
        .collect::<Result<_>>()?;
    let mut total = 0.0;
    for k in 0..pts.len() {
        let (x0, y0) = pts[k];
        let (x1, y1) = pts[(k + 1) % pts.len()];
        let step = (x0 * y1 - y0 * x1).atan2(x0 * x1 + y0 * y1);
        total += step;
    }
    let w = total / (2.0 * PI);
    let r = w.round();
    if (w - r).abs() >= 0.1 {
        return Err(Error::OpenLoop);
    }
    Ok(r as i64)
}

/// Oriented triangulated `(n-2)`-sphere of maps: each simplex lists `n - 1`
/// vertex indices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereSample {
    pub n: usize,
    pub vertices: Vec<KnotMap>,
    pub simplices: Vec<Vec<usize>>,
}

/// Orthonormal basis of the complement of `(1, ..., 1)` in `R^n`, the first
/// vector pointing along `e_n - (1/n)(1, ..., 1)`.
pub(crate) fn diagonal_complement(n: usize) -> Vec<Vec<f64>> {
    // Helmert vectors h_k = (1, ..., 1, -k, 0, ...) / sqrt(k(k+1)), reversed
    // so that the last coordinate comes first
    let mut out = Vec::with_capacity(n - 1);
    for k in (1..n).rev() {
        let norm = ((k * (k + 1)) as f64).sqrt();
        let mut v = vec![0.0; n];
        for x in v.iter_mut().take(k) {
            *x = -1.0 / norm;
        }
        v[k] = k as f64 / norm;
        out.push(v);
    }
    out
}

/// The base map `x_1 = ... = x_{n-1} = t^d`, `x_n = t^d + t^{d-1} + t` moved
/// so that its coefficient vectors point along `u` (a unit vector written in
/// the basis of the diagonal complement).
pub(crate) fn orbit_point(n: usize, d: usize, u: &[f64]) -> KnotMap {
    let basis = diagonal_complement(n);
    let radius = (1.0 - 1.0 / n as f64).sqrt();
    let mut v = vec![1.0 / n as f64; n];
    for (b, c) in basis.iter().zip(u) {
        for i in 0..n {
            v[i] += radius * c * b[i];
        }
    }
    let mut cols = vec![vec![0.0; n]; d - 1];
    cols[0] = v.clone();
    cols[d - 2] = v;
    if d == 2 {
        // t^{d-1} and t coincide
        let twice: Vec<f64> = cols[0].iter().map(|x| 2.0 * x).collect();
        cols[0] = twice;
    }
    from_coefficient_vectors(d, &cols)
}

/// The `n = 3` orbit as a loop of `samples` maps.
pub fn orbit_loop(d: usize, samples: usize) -> LoopSample {
    let maps = (0..samples)
        .map(|k| {
            let th = 2.0 * PI * k as f64 / samples as f64;
            orbit_point(3, d, &[th.cos(), th.sin()])
        })
        .collect();
    LoopSample { maps }
}

/// The orbit of the base map under rotations fixing the diagonal. For
/// `n = 3` a 64-gon; otherwise the boundary of the cross-polytope in the
/// diagonal complement, with its vertices on the orbit.
pub fn orbit_sphere(n: usize, d: usize) -> Result<SphereSample> {
    if n < 3 || d < 2 {
        return Err(Error::Unsupported("orbit spheres need n >= 3 and d >= 2"));
    }
    let m = n - 1;
    if n == 3 {
        let lp = orbit_loop(d, 64);
        let k = lp.maps.len();
        return Ok(SphereSample {
            n,
            vertices: lp.maps,
            simplices: (0..k).map(|i| vec![i, (i + 1) % k]).collect(),
        });
    }
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for k in 0..m {
        for s in [1.0, -1.0] {
            let mut v = vec![0.0; m];
            v[k] = s;
            dirs.push(v);
        }
    }
    let vertex = |k: usize, s: f64| 2 * k + usize::from(s < 0.0);
    let mut simplices = Vec::new();
    for mask in 0..(1usize << m) {
        let signs: Vec<f64> = (0..m)
            .map(|k| if mask >> k & 1 == 1 { -1.0 } else { 1.0 })
            .collect();
        let mut s: Vec<usize> = (0..m).map(|k| vertex(k, signs[k])).collect();
        if signs.iter().product::<f64>() < 0.0 {
            s.swap(0, 1);
        }
        simplices.push(s);
    }
    let vertices = dirs.iter().map(|u| orbit_point(n, d, u)).collect();
    Ok(SphereSample {
        n,
        vertices,
        simplices,
    })
}

/// Coordinates `a_1^k - a_1^{k+1}` on the diagonal complement; for `n = 3`
/// the plane of the winding number.
fn projected(map: &KnotMap) -> Vec<f64> {
    map.a1s().windows(2).map(|w| w[0] - w[1]).collect()
}

/// Solves `m x = y` by Gaussian elimination with partial pivoting, returning
/// `x` and `det m`.
fn solve(mut m: Vec<Vec<f64>>, mut y: Vec<f64>) -> Option<(Vec<f64>, f64)> {
    let k = y.len();
    let mut det = 1.0;
    for c in 0..k {
        let piv = (c..k).max_by(|&a, &b| m[a][c].abs().total_cmp(&m[b][c].abs()))?;
        if m[piv][c] == 0.0 {
            return None;
        }
        if piv != c {
            m.swap(piv, c);
            y.swap(piv, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..k {
            let f = m[r][c] / m[c][c];
            let (top, rest) = m.split_at_mut(r);
            for (x, p) in rest[0][c..k].iter_mut().zip(&top[c][c..k]) {
                *x -= f * p;
            }
            y[r] -= f * y[c];
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|j| m[r][j] * x[j]).sum();
        x[r] = (y[r] - s) / m[r][r];
    }
    Some((x, det))
}

/// Degree of the first-coefficient vector, projected to the diagonal
/// complement and normalized, on the sphere: signed count of simplices whose cone holds a random regular
/// direction.
pub fn degree_linking(sphere: &SphereSample) -> Result<i64> {
    degree_linking_with(sphere, 0, ExecMode::Parallel)
}

pub fn degree_linking_with(sphere: &SphereSample, seed: u64, mode: ExecMode) -> Result<i64> {
    let m = sphere.n - 1;
    let mut pts = Vec::with_capacity(sphere.vertices.len());
    for v in &sphere.vertices {
        let spread = a1_spread(v);
        if spread < STRATUM_MARGIN {
            return Err(Error::StratumMargin { spread });
        }
        pts.push(projected(v));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let retries = 16;
    'attempt: for _ in 0..retries {
        let y: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
        let hits = map_collect(&sphere.simplices, mode, |s| -> Option<i64> {
            // y = sum lambda_k v_k, columns v_k
            let mat: Vec<Vec<f64>> = (0..m).map(|r| s.iter().map(|&i| pts[i][r]).collect()).collect();
            let (lam, det) = solve(mat, y.clone())?;
            let scale = lam.iter().fold(0.0f64, |a, l| a.max(l.abs())).max(1e-300);
            if lam.iter().any(|l| l.abs() <= 1e-9 * scale) {
                return None;
            }
            Some(if lam.iter().all(|&l| l > 0.0) {
                det.signum() as i64
            } else {
                0
            })
        });
        let mut total = 0;
        for h in hits {
            match h {
                Some(v) => total += v,
                None => continue 'attempt,
            }
        }
        return Ok(total);
    }
    Err(Error::DegenerateSimplex { retries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn map3(a: [f64; 3]) -> KnotMap {
        KnotMap::new(a.iter().map(|&x| Poly::new(4, vec![x, 0.3 * x, -x]).unwrap()).collect())
            .unwrap()
    }

    #[test]
    fn rotation_identities() {
        let m = map3([1.0, -2.0, 0.5]);
        assert_eq!(rotate_s1(&m, 0.0).unwrap(), m);
        let full = rotate_s1(&m, 2.0 * PI).unwrap();
        for (x, y) in full.a1s().iter().zip(m.a1s()) {
            assert!((x - y).abs() < 1e-12);
        }
        let r = rotation_about_diagonal(0.7);
        let sum: f64 = r[0].iter().sum();
        assert!((sum - 1.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_representative() {
        let m = map3([1.0, 0.0, 0.0]);
        let (th, c) = canonicalize_s1(&m).unwrap();
        let a = c.a1s();
        assert!((a[0] - a[1]).abs() < 1e-10);
        assert!(a[0] + a[1] - 2.0 * a[2] > 0.0);
        let (th2, _) = canonicalize_s1(&c).unwrap();
        assert_eq!(th2, 0.0);
        assert!((0.0..2.0 * PI).contains(&th));
        assert_eq!(canonicalize_s1(&map3([0.5; 3])), Err(Error::FixedAxis));
    }

    #[test]
    fn orbit_linking_numbers() {
        let lp = orbit_loop(4, 64);
        assert_eq!(winding_linking(&lp).unwrap().abs(), 1);
        let s3 = orbit_sphere(3, 4).unwrap();
        assert_eq!(degree_linking(&s3).unwrap(), winding_linking(&lp).unwrap());
        assert_eq!(degree_linking(&orbit_sphere(4, 4).unwrap()).unwrap().abs(), 1);
        assert_eq!(degree_linking(&orbit_sphere(5, 4).unwrap()).unwrap().abs(), 1);
    }

    #[test]
    fn doubled_and_constant_loops() {
        let lp = orbit_loop(4, 32);
        let mut twice = lp.maps.clone();
        twice.extend(lp.maps.clone());
        let w = winding_linking(&LoopSample::new(twice).unwrap()).unwrap();
        assert_eq!(w, 2 * winding_linking(&lp).unwrap());
        let c = LoopSample::new(vec![map3([1.0, 0.0, 0.0]); 5]).unwrap();
        assert_eq!(winding_linking(&c).unwrap(), 0);
    }
}
