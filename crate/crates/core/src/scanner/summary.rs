use serde::Serialize;

use super::oracle::{fiber_components, FiberTarget, Sweep};
use crate::cells::{classify, critical_roots, CellLabel, QuarticNormalForm};
use crate::conditions::{canonical_line, common_conditions};
use crate::error::Result;
use crate::par::{map_collect, ExecMode};
use crate::polyring::Poly;

/// What the set of three-condition lines through `f` should look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExpectedStructure {
    Empty,
    TwoComponents,
    HalfOpenInterval,
    ThreeComponents,
    InfinitePencil,
}

impl ExpectedStructure {
    pub fn for_cell(cell: CellLabel) -> Self {
        match cell {
            CellLabel::A | CellLabel::APrime => ExpectedStructure::Empty,
            CellLabel::B | CellLabel::BPrime => ExpectedStructure::TwoComponents,
            CellLabel::E | CellLabel::EPrime => ExpectedStructure::HalfOpenInterval,
            CellLabel::D => ExpectedStructure::ThreeComponents,
            CellLabel::C | CellLabel::O => ExpectedStructure::InfinitePencil,
        }
    }

    pub fn components(self) -> Option<usize> {
        match self {
            ExpectedStructure::Empty => Some(0),
            ExpectedStructure::TwoComponents => Some(2),
            ExpectedStructure::HalfOpenInterval => Some(1),
            ExpectedStructure::ThreeComponents => Some(3),
            ExpectedStructure::InfinitePencil => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub cell: CellLabel,
    pub expected: ExpectedStructure,
    /// `∇` window and slice count of the sweep.
    pub window: (f64, f64),
    pub slices: usize,
    /// Largest finite number of shared conditions met on the sampled lines.
    pub max_count: usize,
    /// Slices whose fiber of three-condition lines is nonempty.
    pub slices_with_three: usize,
    pub components: Option<usize>,
    /// Whether the pencil through `f` in direction `t^2` shares infinitely
    /// many conditions; checked on `C` and `O`.
    pub infinite_pencil: Option<bool>,
}

impl CellSummary {
    pub fn consistent(&self) -> bool {
        match self.expected {
            ExpectedStructure::InfinitePencil => self.infinite_pencil == Some(true),
            ExpectedStructure::Empty => self.slices_with_three == 0 && self.max_count <= 2,
            e => self.components == e.components(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SummaryOptions {
    pub slices: usize,
    pub resolution: usize,
    /// Extra slices between each pair of neighbouring critical points, where
    /// the fibers over the bounded branch live.
    pub dense: usize,
    pub mode: ExecMode,
}

impl Default for SummaryOptions {
    fn default() -> Self {
        SummaryOptions {
            slices: 256,
            resolution: 64,
            dense: 256,
            mode: ExecMode::Parallel,
        }
    }
}

/// Window of `∇` values that contains every family meeting `r(f)` three
/// times: the centre of such an ellipse lies within the span of the critical
/// points, widened by one unit.
fn window(nf: &QuarticNormalForm) -> (f64, f64) {
    let xs = critical_roots(nf).values();
    let lo = xs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let pad = 1.0 + 0.25 * (hi - lo);
    (lo - pad, hi + pad)
}

pub fn lines_through_summary(
    nf: &QuarticNormalForm,
    opts: SummaryOptions,
) -> Result<CellSummary> {
    let cell = classify(nf.a, nf.b);
    let expected = ExpectedStructure::for_cell(cell);
    let (lo, hi) = window(nf);
    let n = opts.slices.max(2);
    let mut grid: Vec<f64> = (0..n)
        .map(|k| lo + (hi - lo) * (k as f64 + 0.5) / n as f64)
        .collect();
    let xs = critical_roots(nf).values();
    for w in xs.windows(2) {
        let m = opts.dense;
        grid.extend((0..m).map(|k| w[0] + (w[1] - w[0]) * (k as f64 + 0.5) / m as f64));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let infinite_pencil = match cell {
        CellLabel::C | CellLabel::O => {
            let f = nf.to_poly();
            let g = Poly::quartic(nf.a + 1.0, nf.b);
            Some(common_conditions(&canonical_line(&f, &g)?)?.is_infinite())
        }
        _ => None,
    };

    let target = [FiberTarget::DCell];
    let sweeps = map_collect(&grid, opts.mode, |&x| -> Result<(usize, bool)> {
        let sw = Sweep::run(nf, x, opts.resolution)?;
        Ok((sw.max_count(), !sw.pieces(FiberTarget::DCell).is_empty()))
    });
    let mut max_count = 0;
    let mut slices_with_three = 0;
    for s in sweeps {
        let (m, three) = s?;
        max_count = max_count.max(m);
        slices_with_three += three as usize;
    }
    let components = if infinite_pencil.is_some() {
        None
    } else {
        Some(fiber_components(nf, &target, &grid, opts.resolution, opts.mode)?)
    };
    Ok(CellSummary {
        cell,
        expected,
        window: (lo, hi),
        slices: grid.len(),
        max_count,
        slices_with_three,
        components,
        infinite_pencil,
    })
}
