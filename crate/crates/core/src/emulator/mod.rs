//! State-vector emulation of the one-step counting algorithm.
//!
//! The register holds `n` spin qubits followed by a `p`-qubit number
//! register. Preparing the uniform superposition, evolving once under the
//! Ising Hamiltonian and undoing the preparation leaves `n_s/2^n` as the
//! amplitude of `|0…0⟩`. Physical mode adds a Toffoli AND tree that flips a
//! readout qubit `κ` exactly on that basis state, so `P(κ = 1) = (n_s/2^n)²`.

mod circuit;
mod ising;
mod state;

use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand_core::RngCore;

pub use circuit::{Circuit, Gate, KindCounts};
pub use ising::{apply_diag_evolution, IsingCoefficients};
pub use state::{Matrix2, QuantumState};

use crate::counting::{CountResult, Method};
use crate::error::{Error, Result};
use crate::instance::Instance;

pub const DEFAULT_QUBIT_BUDGET: usize = 26;

/// Wire assignment: spins, number register, cardinality register, AND-tree
/// ancillas, then the readout qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    pub n_spins: usize,
    pub p_number: usize,
    /// Cardinality register width; zero for unconstrained runs.
    pub q_card: usize,
    pub ancillas: usize,
    pub kappa: Option<usize>,
}

impl RegisterLayout {
    pub fn amplitude(n: usize, p: usize) -> Self {
        Self {
            n_spins: n,
            p_number: p,
            q_card: 0,
            ancillas: 0,
            kappa: None,
        }
    }

    pub fn constrained(n: usize, p: usize, q: usize) -> Self {
        Self {
            q_card: q,
            ..Self::amplitude(n, p)
        }
    }

    /// Adds the ancillas a balanced AND tree over the prepared qubits needs,
    /// plus `κ`.
    pub fn physical(n: usize, p: usize) -> Self {
        let inputs = n + p;
        let ancillas = inputs.saturating_sub(2);
        Self {
            ancillas,
            kappa: Some(inputs + ancillas),
            ..Self::amplitude(n, p)
        }
    }

    /// Qubits put into uniform superposition.
    pub fn prepared(&self) -> usize {
        self.n_spins + self.p_number + self.q_card
    }

    pub fn spin_qubit(&self, j: usize) -> usize {
        j
    }

    pub fn number_qubit(&self, l: usize) -> usize {
        self.n_spins + l
    }

    pub fn card_qubit(&self, k: usize) -> usize {
        self.n_spins + self.p_number + k
    }

    pub fn ancilla_qubit(&self, i: usize) -> usize {
        self.prepared() + i
    }

    pub fn total_qubits(&self) -> usize {
        self.prepared() + self.ancillas + self.kappa.is_some() as usize
    }
}

/// `RY_PREP` on every prepared qubit.
pub fn preparation(layout: &RegisterLayout) -> Circuit {
    Circuit::from_gates((0..layout.prepared()).map(Gate::RyPrep).collect())
}

/// Inverse of [`preparation`].
pub fn unpreparation(layout: &RegisterLayout) -> Circuit {
    Circuit::from_gates((0..layout.prepared()).rev().map(Gate::RyUnprep).collect())
}

/// Prepares the uniform superposition over the first `layout.prepared()`
/// qubits of a state that must be `|0…0⟩`.
pub fn prepare_uniform(state: &mut QuantumState, layout: &RegisterLayout) -> Result<()> {
    let norm_sqr = state.norm_sqr();
    if libm::fabs(norm_sqr - 1.0) > 1e-10 {
        return Err(Error::NotNormalized { norm_sqr });
    }
    if (state.amplitude(0) - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::NotInitialState);
    }
    preparation(layout).apply(state)
}

/// NOT on every prepared qubit, then a balanced Toffoli tree whose root
/// flips `κ`. Unpaired operands move up a level unchanged; ancillas are not
/// uncomputed.
pub fn build_and_network(layout: &RegisterLayout) -> Result<Circuit> {
    let kappa = layout.kappa.ok_or(Error::NoReadout)?;
    let inputs = layout.prepared();
    let needed = inputs.saturating_sub(2);
    if inputs < 2 || layout.ancillas < needed {
        return Err(Error::InsufficientAncillas {
            inputs,
            needed,
            declared: layout.ancillas,
        });
    }
    let mut circuit = Circuit::from_gates((0..inputs).map(Gate::Not).collect());
    let mut level: Vec<usize> = (0..inputs).collect();
    let mut next_ancilla = 0;
    while level.len() > 2 {
        let mut next = Vec::with_capacity(level.len() / 2 + 1);
        for pair in level.chunks(2) {
            match *pair {
                [a, b] => {
                    let target = layout.ancilla_qubit(next_ancilla);
                    next_ancilla += 1;
                    circuit.push(Gate::Toffoli { c0: a, c1: b, target });
                    next.push(target);
                }
                [a] => next.push(a),
                _ => unreachable!(),
            }
        }
        level = next;
    }
    circuit.push(Gate::Toffoli {
        c0: level[0],
        c1: level[1],
        target: kappa,
    });
    Ok(circuit)
}

/// Readout-qubit statistics of a physical-mode run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalReadout {
    /// `⟨(1 − κ^z)/2⟩`, the probability of reading `κ = 1`.
    pub expectation: f64,
    pub result: CountResult,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Emulator {
    pub qubit_budget: usize,
}

impl Default for Emulator {
    fn default() -> Self {
        Self {
            qubit_budget: DEFAULT_QUBIT_BUDGET,
        }
    }
}

impl Emulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_budget(qubit_budget: usize) -> Self {
        Self { qubit_budget }
    }

    fn check_budget(&self, layout: &RegisterLayout) -> Result<()> {
        let needed = layout.total_qubits();
        if needed > self.qubit_budget {
            return Err(Error::QubitBudget {
                needed,
                budget: self.qubit_budget,
            });
        }
        Ok(())
    }

    /// Unconstrained layout and evolution coefficients.
    pub fn plan(inst: &Instance, physical: bool) -> Result<(RegisterLayout, IsingCoefficients)> {
        if inst.constraint().is_some() {
            return Err(Error::ConstraintUnsupported {
                method: if physical { Method::QuantumPhysical } else { Method::QuantumAmplitude },
            });
        }
        let params = inst.params();
        let p = params.register_bits;
        let layout = if physical {
            RegisterLayout::physical(inst.len(), p as usize)
        } else {
            RegisterLayout::amplitude(inst.len(), p as usize)
        };
        Ok((layout, IsingCoefficients::for_values(inst.values(), params.delta, p)))
    }

    /// Constrained layout with the number-register and cardinality-register
    /// evolutions.
    pub fn plan_constrained(inst: &Instance) -> Result<(RegisterLayout, [IsingCoefficients; 2])> {
        let c = inst.constraint().ok_or(Error::ConstraintRequired {
            method: Method::QuantumAmplitude,
        })?;
        let params = inst.params();
        let n = inst.len();
        let p = params.register_bits;
        let q = params.card_register_bits().expect("constrained");
        let layout = RegisterLayout::constrained(n, p as usize, q as usize);
        let number = IsingCoefficients::for_values(inst.values(), params.delta, p);
        let card = IsingCoefficients::new(alloc::vec![1; n], c, q, layout.card_qubit(0));
        Ok((layout, [number, card]))
    }

    /// Full circuit: preparation, evolution, inverse preparation and, in
    /// physical mode, the AND network. `decomposed` replaces the evolution
    /// by its phase-gate factorization.
    pub fn circuit(inst: &Instance, physical: bool, decomposed: bool) -> Result<(RegisterLayout, Circuit)> {
        let (layout, evolutions) = if inst.constraint().is_some() && !physical {
            let (layout, coeffs) = Self::plan_constrained(inst)?;
            (layout, Vec::from(coeffs))
        } else {
            let (layout, coeffs) = Self::plan(inst, physical)?;
            (layout, alloc::vec![coeffs])
        };
        let mut circuit = preparation(&layout);
        for coeffs in evolutions {
            if decomposed {
                circuit.extend(coeffs.decompose());
            } else {
                circuit.push(Gate::DiagEvolution(coeffs));
            }
        }
        circuit.extend(unpreparation(&layout));
        if physical {
            circuit.extend(build_and_network(&layout)?);
        }
        Ok((layout, circuit))
    }

    /// Final state of the amplitude-mode pipeline.
    pub fn amplitude_state(&self, inst: &Instance) -> Result<QuantumState> {
        let (layout, circuit) = Self::circuit(inst, false, false)?;
        self.check_budget(&layout)?;
        let mut state = QuantumState::new(layout.total_qubits());
        circuit.apply(&mut state)?;
        Ok(state)
    }

    /// `n_s = 2^n ⟨0…0|Φ⟩`. Handles constrained instances with the second
    /// register.
    pub fn amplitude(&self, inst: &Instance) -> Result<CountResult> {
        let state = self.amplitude_state(inst)?;
        let scaled = state.amplitude(0) * libm::ldexp(1.0, inst.len() as i32);
        CountResult::from_estimate(scaled.re, scaled.im, Method::QuantumAmplitude)
    }

    /// Final state of the physical-mode pipeline, with its layout.
    pub fn physical_state(&self, inst: &Instance) -> Result<(RegisterLayout, QuantumState)> {
        let (layout, circuit) = Self::circuit(inst, true, false)?;
        self.check_budget(&layout)?;
        let mut state = QuantumState::new(layout.total_qubits());
        circuit.apply(&mut state)?;
        Ok((layout, state))
    }

    /// `n_s = 2^n √⟨(1 − κ^z)/2⟩`.
    pub fn physical(&self, inst: &Instance) -> Result<PhysicalReadout> {
        let (layout, state) = self.physical_state(inst)?;
        let expectation = state.probability_one(layout.kappa.expect("physical layout"));
        let estimate = libm::ldexp(libm::sqrt(expectation), inst.len() as i32);
        Ok(PhysicalReadout {
            expectation,
            result: CountResult::from_estimate(estimate, 0.0, Method::QuantumPhysical)?,
        })
    }

    /// Runs physical mode and measures `shots` times; returns how many shots
    /// read `κ = 1`.
    pub fn sample_kappa<R: RngCore + ?Sized>(&self, inst: &Instance, shots: usize, rng: &mut R) -> Result<usize> {
        let (layout, state) = self.physical_state(inst)?;
        let kappa = layout.kappa.expect("physical layout");
        Ok(state
            .sample(shots, rng)?
            .into_iter()
            .filter(|i| i >> kappa & 1 == 1)
            .count())
    }
}

pub fn run_amplitude_mode(inst: &Instance) -> Result<CountResult> {
    Emulator::default().amplitude(inst)
}

pub fn run_amplitude_mode_constrained(inst: &Instance) -> Result<CountResult> {
    if inst.constraint().is_none() {
        return Err(Error::ConstraintRequired {
            method: Method::QuantumAmplitude,
        });
    }
    Emulator::default().amplitude(inst)
}

pub fn run_physical_mode(inst: &Instance) -> Result<PhysicalReadout> {
    Emulator::default().physical(inst)
}

/// Abstract operation count of the algorithm: `n + p` preparations, one
/// evolution step, `n + p` inverse preparations, counted as `2n + 2p + 1`.
pub fn abstract_step_count(n: usize, p: usize) -> usize {
    2 * n + 2 * p + 1
}

/// Checks `e^{−iaσ^z}|U⟩ = cos(a)|U⟩ − i sin(a)|Ū⟩` and `⟨U|Ū⟩ = 0` on a
/// single qubit, where `|U⟩` is the prepared state and
/// `|Ū⟩ = (|0⟩ − |1⟩)/√2`.
pub fn rotation_convention_check() -> bool {
    const TOL: f64 = 1e-12;
    let mut u = QuantumState::new(1);
    u.apply_ry_prep(0);
    let u_bar = QuantumState::from_amplitudes(alloc::vec![
        Complex64::new(FRAC_1_SQRT_2, 0.0),
        Complex64::new(-FRAC_1_SQRT_2, 0.0),
    ])
    .expect("two amplitudes");
    if u.inner(&u_bar).norm() > TOL {
        return false;
    }
    [0.0, core::f64::consts::PI / 7.0, core::f64::consts::FRAC_PI_4, 1.0]
        .iter()
        .all(|&a| {
            let mut rotated = u.clone();
            rotated.apply_zphase(0, a);
            let along = u.inner(&rotated);
            let across = u_bar.inner(&rotated);
            (along - Complex64::new(libm::cos(a), 0.0)).norm() <= TOL
                && (across - Complex64::new(0.0, -libm::sin(a))).norm() <= TOL
        })
}
