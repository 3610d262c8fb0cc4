use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyknot::cells::QuarticNormalForm;
use polyknot::conditions::{canonical_line, common_conditions};
use polyknot::par::{map_range, ExecMode};
use polyknot::scanner::{fiber_components, FiberTarget, Sweep};
use polyknot::Poly;

const MODES: [(&str, ExecMode); 2] = [("sequential", ExecMode::Sequential), ("parallel", ExecMode::Parallel)];

fn sweeps(c: &mut Criterion) {
    let nf = QuarticNormalForm::new(-14.0, 24.0);
    let grid: Vec<f64> = (0..64).map(|k| -3.0 + 6.0 * k as f64 / 63.0).collect();
    let mut g = c.benchmark_group("oracle sweeps");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| {
                map_range(grid.len(), mode, |i| {
                    Sweep::run(&nf, grid[i], 128).map(|s| s.max_count()).unwrap_or(0)
                })
            })
        });
    }
    g.finish();
}

fn components(c: &mut Criterion) {
    let nf = QuarticNormalForm::new(-2.0, 0.0);
    let grid: Vec<f64> = (0..48).map(|k| -0.8 + 1.6 * (k as f64 + 0.5) / 48.0).collect();
    let mut g = c.benchmark_group("fiber components");
    g.sample_size(10);
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| fiber_components(black_box(&nf), &[FiberTarget::DCell], &grid, 64, mode).unwrap())
        });
    }
    g.finish();
}

fn condition_counts(c: &mut Criterion) {
    let lines: Vec<_> = (0..512)
        .map(|k| {
            let x = k as f64 * 0.618;
            let f = Poly::new(4, vec![x.sin(), 2.0 * x.cos(), (3.0 * x).sin()]).unwrap();
            let h = Poly::new(4, vec![x.sin() + 0.5, 2.0 * x.cos() - 1.0, (3.0 * x).sin() + 0.25]).unwrap();
            canonical_line(&f, &h).unwrap()
        })
        .collect();
    let mut g = c.benchmark_group("condition counts");
    for (name, mode) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &mode, |b, &mode| {
            b.iter(|| map_range(lines.len(), mode, |i| common_conditions(&lines[i]).map(|c| c.count())))
        });
    }
    g.finish();
}

criterion_group!(benches, sweeps, components, condition_counts);
criterion_main!(benches);
