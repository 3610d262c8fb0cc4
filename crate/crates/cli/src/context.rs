//! Global options shared by the subcommands.

use polyknot::cells::CellLabel;
use polyknot::par::ExecMode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Ctx {
    pub seed: u64,
    tolerance: Option<f64>,
    samples: Option<usize>,
    pub mode: ExecMode,
}

impl Ctx {
    pub fn new(seed: u64, tolerance: Option<f64>, samples: Option<usize>) -> Result<Self, String> {
        if let Some(t) = tolerance {
            if !(t.is_finite() && t > 0.0) {
                return Err(format!("tolerance must be positive, got {t}"));
            }
        }
        if samples == Some(0) {
            return Err("samples must be at least 1".into());
        }
        Ok(Ctx { seed, tolerance, samples, mode: ExecMode::Parallel })
    }

    /// Independent generator for one named stream of the run.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(stream);
        r
    }

    pub fn samples(&self, default: usize) -> usize {
        self.samples.unwrap_or(default)
    }

    pub fn tol(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }
}

pub fn parse_cell(s: &str) -> Result<CellLabel, String> {
    CellLabel::parse(s).ok_or_else(|| {
        let names: Vec<&str> = CellLabel::ALL.iter().map(|c| c.name()).collect();
        format!("unknown cell {s:?}; expected one of {}", names.join(", "))
    })
}

/// Comma or whitespace separated numbers.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect()
}
