//! Uniform dispatch over every counting backend.

use partcount_core::counting::{count_bruteforce, count_dp, count_formula, count_formula_constrained};
use partcount_core::emulator::Emulator;
use partcount_core::spectral::zero_freq_estimate;
use partcount_core::{CountResult, Error, Instance, Method, RestrictedMethod};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CountMethod {
    Bruteforce,
    Formula,
    Dp,
    /// Emulator, `|0…0⟩` amplitude readout.
    Quantum,
    /// Emulator, readout qubit after the AND network.
    Physical,
    /// Zero-frequency average of the correlation function.
    Spectral,
}

impl CountMethod {
    pub const ALL: [CountMethod; 6] = [
        CountMethod::Bruteforce,
        CountMethod::Formula,
        CountMethod::Dp,
        CountMethod::Quantum,
        CountMethod::Physical,
        CountMethod::Spectral,
    ];

    /// Backends usable for partition extraction.
    pub fn restricted(self) -> Option<RestrictedMethod> {
        match self {
            CountMethod::Bruteforce => Some(RestrictedMethod::Bruteforce),
            CountMethod::Formula => Some(RestrictedMethod::Formula),
            CountMethod::Dp => Some(RestrictedMethod::Dp),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountOutcome {
    pub result: CountResult,
    /// Readout-qubit expectation, physical mode only.
    pub expectation: Option<f64>,
}

pub fn count(inst: &Instance, method: CountMethod, emulator: &Emulator) -> Result<CountOutcome, Error> {
    let plain = |result| CountOutcome {
        result,
        expectation: None,
    };
    match method {
        CountMethod::Bruteforce => count_bruteforce(inst).map(plain),
        CountMethod::Formula if inst.constraint().is_some() => count_formula_constrained(inst).map(plain),
        CountMethod::Formula => count_formula(inst).map(plain),
        CountMethod::Dp => count_dp(inst).map(plain),
        CountMethod::Quantum => emulator.amplitude(inst).map(plain),
        CountMethod::Physical => {
            let readout = emulator.physical(inst)?;
            Ok(CountOutcome {
                result: readout.result,
                expectation: Some(readout.expectation),
            })
        }
        CountMethod::Spectral => {
            if inst.constraint().is_some() {
                return Err(Error::ConstraintUnsupported {
                    method: Method::Spectral,
                });
            }
            let z = zero_freq_estimate(inst, inst.params().modulus)?;
            let estimate = z * 2f64.powi(inst.len() as i32);
            CountResult::from_estimate(estimate, 0.0, Method::Spectral).map(plain)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_backend_on_worked_examples() {
        let emulator = Emulator::default();
        for (values, expected) in [(&[1u64, 2, 3, 4][..], 2), (&[1, 1, 1, 4], 1), (&[2, 2, 2, 4], 0)] {
            let inst = Instance::new(values.to_vec()).unwrap();
            for method in CountMethod::ALL {
                let out = count(&inst, method, &emulator).unwrap();
                assert_eq!(out.result.count, expected, "{method:?} on {values:?}");
                assert_eq!(out.expectation.is_some(), method == CountMethod::Physical);
            }
        }
    }

    #[test]
    fn constrained_support() {
        let emulator = Emulator::default();
        let inst = Instance::with_constraint(vec![1, 2, 3, 4], 0).unwrap();
        for method in [CountMethod::Bruteforce, CountMethod::Formula, CountMethod::Dp, CountMethod::Quantum] {
            assert_eq!(count(&inst, method, &emulator).unwrap().result.count, 2);
        }
        assert!(count(&inst, CountMethod::Physical, &emulator).is_err());
        assert!(count(&inst, CountMethod::Spectral, &emulator).is_err());
    }
}
