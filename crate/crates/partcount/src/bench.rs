//! Random-instance sweep over instance size `n` and bit width `b`.
//!
//! Values are drawn uniformly from `[1, 2^b − 1]` with ChaCha8 (the
//! `rand_chacha` 0.3 implementation) seeded by `seed` on stream
//! `(n << 32) | b`, using `rand` 0.8's `gen_range`. Each cell is therefore
//! reproducible on its own, independent of which other cells are run.

use std::time::Instant;

use partcount_core::emulator::Emulator;
use partcount_core::instance::{MAX_SUM, MAX_VALUES};
use partcount_core::Instance;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backend::{count, CountMethod};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    pub n_values: Vec<usize>,
    pub b_values: Vec<u32>,
    pub instances_per_cell: usize,
    pub seed: u64,
    #[serde(default = "default_backend")]
    pub backend: CountMethod,
}

fn default_backend() -> CountMethod {
    CountMethod::Dp
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid bench config: {0}")]
    Config(String),
    #[error("instance n={n} b={b} #{idx}: {source}")]
    Count {
        n: usize,
        b: u32,
        idx: usize,
        source: partcount_core::Error,
    },
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |m: String| Err(BenchError::Config(m));
        if self.instances_per_cell == 0 {
            return bad("instances_per_cell must be at least 1".into());
        }
        if self.n_values.is_empty() || self.b_values.is_empty() {
            return bad("n_values and b_values must be non-empty".into());
        }
        for &n in &self.n_values {
            if n == 0 || n > MAX_VALUES {
                return bad(format!("n = {n} outside 1..={MAX_VALUES}"));
            }
        }
        for &b in &self.b_values {
            if b == 0 || b > 32 {
                return bad(format!("b = {b} outside 1..=32"));
            }
            let max_n = *self.n_values.iter().max().expect("non-empty");
            if max_n as u128 * ((1u128 << b) - 1) >= MAX_SUM as u128 {
                return bad(format!("n = {max_n}, b = {b} can exceed the 2^32 sum limit"));
            }
        }
        Ok(())
    }

    /// Cells in `(n, b)` order, duplicates removed.
    pub fn cells(&self) -> Vec<(usize, u32)> {
        let mut ns = self.n_values.clone();
        let mut bs = self.b_values.clone();
        ns.sort_unstable();
        ns.dedup();
        bs.sort_unstable();
        bs.dedup();
        ns.iter().flat_map(|&n| bs.iter().map(move |&b| (n, b))).collect()
    }
}

pub fn cell_rng(seed: u64, n: usize, b: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((n as u64) << 32) | b as u64);
    rng
}

/// `n` values uniform in `[1, max]`.
pub fn random_values<R: Rng + ?Sized>(rng: &mut R, n: usize, max: u64) -> Vec<u64> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}

pub fn cell_instances(seed: u64, n: usize, b: u32, count: usize) -> Vec<Instance> {
    let mut rng = cell_rng(seed, n, b);
    let max = (1u64 << b) - 1;
    (0..count)
        .map(|_| Instance::new(random_values(&mut rng, n, max)).expect("validated config"))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub b: u32,
    pub idx: usize,
    pub n_s: u64,
    pub solvable: bool,
    pub elapsed_ns: u64,
}

/// Runs every cell. With `timing` off, `elapsed_ns` is written as 0 so the
/// output depends on the seed alone.
pub fn run(config: &BenchConfig, emulator: &Emulator, timing: bool) -> Result<Vec<BenchRecord>, BenchError> {
    config.validate()?;
    let mut records = Vec::new();
    for (n, b) in config.cells() {
        for (idx, inst) in cell_instances(config.seed, n, b, config.instances_per_cell).iter().enumerate() {
            let start = Instant::now();
            let outcome = count(inst, config.backend, emulator).map_err(|source| BenchError::Count { n, b, idx, source })?;
            let elapsed = start.elapsed().as_nanos() as u64;
            let n_s = outcome.result.count;
            records.push(BenchRecord {
                n,
                b,
                idx,
                n_s,
                solvable: n_s > 0,
                elapsed_ns: if timing { elapsed } else { 0 },
            });
        }
    }
    Ok(records)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub b: u32,
    pub instances: usize,
    pub solvable_fraction: f64,
    pub median_elapsed_ns: u64,
}

/// Per-cell summary; `records` must be grouped by cell as [`run`] emits them.
pub fn summarize(records: &[BenchRecord]) -> Vec<CellSummary> {
    records
        .chunk_by(|x, y| (x.n, x.b) == (y.n, y.b))
        .map(|cell| {
            let mut times: Vec<u64> = cell.iter().map(|r| r.elapsed_ns).collect();
            times.sort_unstable();
            let mid = times.len() / 2;
            let median = if times.len() % 2 == 1 {
                times[mid]
            } else {
                (times[mid - 1] + times[mid]) / 2
            };
            CellSummary {
                n: cell[0].n,
                b: cell[0].b,
                instances: cell.len(),
                solvable_fraction: cell.iter().filter(|r| r.solvable).count() as f64 / cell.len() as f64,
                median_elapsed_ns: median,
            }
        })
        .collect()
}
