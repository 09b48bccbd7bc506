//! Partition extraction by fixing one spin at a time.
//!
//! Starting from a positive total count, spin `l` is tentatively set up and
//! the restricted count of the extended prefix is evaluated. A zero count
//! means every remaining solution has that spin down, so it is flipped
//! without a second evaluation.

use alloc::vec::Vec;

use crate::counting::{count_restricted, PrefixAssignment, RestrictedMethod};
use crate::error::Result;
use crate::instance::{Instance, Spin, SpinConfig};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionStep {
    /// 1-based spin position.
    pub position: usize,
    pub guess: Spin,
    /// Restricted count of the prefix ending in `guess`.
    pub observed: u64,
    pub flipped: bool,
}

impl ExtractionStep {
    pub fn chosen(&self) -> Spin {
        if self.flipped {
            self.guess.flipped()
        } else {
            self.guess
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtractionTrace {
    /// Total number of solutions, evaluated before any spin is fixed.
    pub total: u64,
    pub steps: Vec<ExtractionStep>,
    pub result: Option<SpinConfig>,
}

impl ExtractionTrace {
    /// Backend evaluations made, including the initial full count.
    pub fn evaluations(&self) -> usize {
        1 + self.steps.len()
    }
}

pub fn extract_partition(inst: &Instance, backend: RestrictedMethod) -> Result<ExtractionTrace> {
    let mut prefix = PrefixAssignment::empty();
    let total = count_restricted(inst, &prefix, backend)?.count;
    if total == 0 {
        return Ok(ExtractionTrace {
            total,
            steps: Vec::new(),
            result: None,
        });
    }
    let mut steps = Vec::with_capacity(inst.len());
    for position in 1..=inst.len() {
        let guess = Spin::Up;
        let candidate = prefix.extended(guess);
        let observed = count_restricted(inst, &candidate, backend)?.count;
        let flipped = observed == 0;
        prefix = if flipped {
            prefix.extended(guess.flipped())
        } else {
            candidate
        };
        steps.push(ExtractionStep {
            position,
            guess,
            observed,
            flipped,
        });
    }
    let cfg = SpinConfig::new(prefix.spins().to_vec());
    debug_assert!(inst.verify(&cfg).unwrap_or(false));
    Ok(ExtractionTrace {
        total,
        steps,
        result: Some(cfg),
    })
}
