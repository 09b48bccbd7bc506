use alloc::vec::Vec;

use super::ising::{apply_diag_evolution, IsingCoefficients};
use super::state::QuantumState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    /// `e^{−iπσ^y/4}`
    RyPrep(usize),
    /// `e^{+iπσ^y/4}`
    RyUnprep(usize),
    Not(usize),
    Toffoli { c0: usize, c1: usize, target: usize },
    /// `e^{−iθσ^z}`
    ZPhase { q: usize, theta: f64 },
    /// `e^{−iθσ^zσ^z}`
    ZZPhase { q0: usize, q1: usize, theta: f64 },
    /// `e^{−iθ}`
    GlobalPhase { theta: f64 },
    /// One evolution step of a whole-register diagonal Hamiltonian.
    DiagEvolution(IsingCoefficients),
}

impl Gate {
    pub fn name(&self) -> &'static str {
        match self {
            Gate::RyPrep(_) => "RY_PREP",
            Gate::RyUnprep(_) => "RY_UNPREP",
            Gate::Not(_) => "NOT",
            Gate::Toffoli { .. } => "TOFFOLI",
            Gate::ZPhase { .. } => "ZPHASE",
            Gate::ZZPhase { .. } => "ZZPHASE",
            Gate::GlobalPhase { .. } => "GLOBALPHASE",
            Gate::DiagEvolution(_) => "DIAG_EVOLUTION",
        }
    }

    /// Largest qubit index touched, if any.
    pub fn max_qubit(&self) -> Option<usize> {
        match self {
            Gate::RyPrep(q) | Gate::RyUnprep(q) | Gate::Not(q) | Gate::ZPhase { q, .. } => Some(*q),
            Gate::Toffoli { c0, c1, target } => Some(*c0.max(c1).max(target)),
            Gate::ZZPhase { q0, q1, .. } => Some(*q0.max(q1)),
            Gate::GlobalPhase { .. } => None,
            Gate::DiagEvolution(c) => c.span().checked_sub(1),
        }
    }

    pub fn apply(&self, state: &mut QuantumState) -> Result<()> {
        if self.max_qubit().is_some_and(|q| q >= state.num_qubits()) {
            return Err(Error::LayoutMismatch);
        }
        match *self {
            Gate::RyPrep(q) => state.apply_ry_prep(q),
            Gate::RyUnprep(q) => state.apply_ry_unprep(q),
            Gate::Not(q) => state.apply_not(q),
            Gate::Toffoli { c0, c1, target } => state.apply_toffoli(c0, c1, target),
            Gate::ZPhase { q, theta } => state.apply_zphase(q, theta),
            Gate::ZZPhase { q0, q1, theta } => state.apply_zzphase(q0, q1, theta),
            Gate::GlobalPhase { theta } => state.apply_global_phase(theta),
            Gate::DiagEvolution(ref c) => apply_diag_evolution(state, c)?,
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct KindCounts {
    pub ry_prep: usize,
    pub ry_unprep: usize,
    pub not: usize,
    pub toffoli: usize,
    pub z_phase: usize,
    pub zz_phase: usize,
    pub global_phase: usize,
    pub diag_evolution: usize,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Circuit {
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_gates(gates: Vec<Gate>) -> Self {
        Self { gates }
    }

    pub fn push(&mut self, gate: Gate) {
        self.gates.push(gate);
    }

    pub fn extend(&mut self, other: Circuit) {
        self.gates.extend(other.gates);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn kind_counts(&self) -> KindCounts {
        let mut k = KindCounts::default();
        for g in &self.gates {
            match g {
                Gate::RyPrep(_) => k.ry_prep += 1,
                Gate::RyUnprep(_) => k.ry_unprep += 1,
                Gate::Not(_) => k.not += 1,
                Gate::Toffoli { .. } => k.toffoli += 1,
                Gate::ZPhase { .. } => k.z_phase += 1,
                Gate::ZZPhase { .. } => k.zz_phase += 1,
                Gate::GlobalPhase { .. } => k.global_phase += 1,
                Gate::DiagEvolution(_) => k.diag_evolution += 1,
            }
        }
        k
    }

    /// Checks qubit bounds and Toffoli distinctness.
    pub fn validate(&self, total_qubits: usize) -> Result<()> {
        for g in &self.gates {
            if g.max_qubit().is_some_and(|q| q >= total_qubits) {
                return Err(Error::LayoutMismatch);
            }
            match *g {
                Gate::Toffoli { c0, c1, target } if c0 == c1 || c0 == target || c1 == target => {
                    return Err(Error::LayoutMismatch)
                }
                Gate::ZZPhase { q0, q1, .. } if q0 == q1 => return Err(Error::LayoutMismatch),
                _ => {}
            }
        }
        Ok(())
    }

    /// Applies the gates in order. Consecutive gates confined to the low
    /// [`BLOCK_QUBITS`] qubits are applied one cache-sized block at a time.
    pub fn apply(&self, state: &mut QuantumState) -> Result<()> {
        self.validate(state.num_qubits())?;
        if state.num_qubits() <= BLOCK_QUBITS {
            return self.gates.iter().try_for_each(|g| g.apply(state));
        }
        let is_local = |g: &Gate| g.max_qubit().is_none_or(|q| q < BLOCK_QUBITS);
        let mut block = QuantumState::new(BLOCK_QUBITS);
        let mut rest = &self.gates[..];
        while let Some(first) = rest.first() {
            let run = rest.iter().take_while(|g| is_local(g)).count();
            if run < 2 {
                first.apply(state)?;
                rest = &rest[1..];
                continue;
            }
            for chunk in state.amplitudes_mut().chunks_exact_mut(1 << BLOCK_QUBITS) {
                block.amplitudes_mut().copy_from_slice(chunk);
                rest[..run].iter().try_for_each(|g| g.apply(&mut block))?;
                chunk.copy_from_slice(block.amplitudes());
            }
            rest = &rest[run..];
        }
        Ok(())
    }
}

/// Qubits per block in [`Circuit::apply`].
pub const BLOCK_QUBITS: usize = 12;
