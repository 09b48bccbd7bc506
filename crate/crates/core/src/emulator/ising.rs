//! The number-register Ising Hamiltonian and its one-step evolution.
//!
//! For field strengths `a_j` on the spins `σ_j` (qubits `0..n`) and a
//! `p`-qubit register `μ_l` holding `x = Σ_l 2^{l−1} (1 − μ_l)/2`, the
//! Hamiltonian
//!
//! ```text
//! H = − Σ_{j,l} J_{jl} σ_j μ_l − Σ_j b_j σ_j − Σ_l c_l μ_l + d
//! J_{jl} = −a_j 2^{l−2},  b_j = a_j (2^p − 1)/2,  c_l = Δ 2^{l−2},  d = Δ (2^p − 1)/2
//! ```
//!
//! is diagonal with energy `(Δ − Σ_j a_j S_j)·x`. One evolution step
//! `exp(−iπH/2^{p−1})` therefore multiplies each basis amplitude by
//! `exp(−2πi x (Δ − Σ a_j S_j)/2^p)`.
//!
//! The same structure with unit fields, offset `C` and a second register
//! encodes the cardinality constraint.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use super::circuit::{Circuit, Gate};
use super::state::QuantumState;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct IsingCoefficients {
    fields: Vec<i64>,
    offset: i64,
    register_bits: u32,
    register_start: usize,
    /// `J[j][l]`
    pub coupling: Vec<Vec<f64>>,
    pub spin_field: Vec<f64>,
    pub register_field: Vec<f64>,
    pub constant: f64,
}

impl IsingCoefficients {
    /// Coefficients for spins `0..fields.len()` coupled to the register of
    /// `register_bits` qubits starting at `register_start`.
    pub fn new(fields: Vec<i64>, offset: i64, register_bits: u32, register_start: usize) -> Self {
        assert!(register_bits >= 1);
        assert!(register_start >= fields.len());
        let half_span = (libm::ldexp(1.0, register_bits as i32) - 1.0) / 2.0;
        // 2^{l−2} for l = 1..=p
        let weight = |l: u32| libm::ldexp(1.0, l as i32 - 2);
        let coupling = fields
            .iter()
            .map(|&a| (1..=register_bits).map(|l| -(a as f64) * weight(l)).collect())
            .collect();
        let spin_field = fields.iter().map(|&a| a as f64 * half_span).collect();
        let register_field = (1..=register_bits).map(|l| offset as f64 * weight(l)).collect();
        Self {
            constant: offset as f64 * half_span,
            fields,
            offset,
            register_bits,
            register_start,
            coupling,
            spin_field,
            register_field,
        }
    }

    /// Main number register directly after `values.len()` spin qubits.
    pub fn for_values(values: &[u64], delta: u64, register_bits: u32) -> Self {
        let fields = values.iter().map(|&a| a as i64).collect::<Vec<_>>();
        let n = fields.len();
        Self::new(fields, delta as i64, register_bits, n)
    }

    pub fn fields(&self) -> &[i64] {
        &self.fields
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn register_bits(&self) -> u32 {
        self.register_bits
    }

    pub fn register_start(&self) -> usize {
        self.register_start
    }

    pub fn num_spins(&self) -> usize {
        self.fields.len()
    }

    /// Qubits the evolution acts on, counting the gap before the register.
    pub fn span(&self) -> usize {
        self.register_start + self.register_bits as usize
    }

    /// Evolution time `π/2^{p−1}`.
    pub fn step(&self) -> f64 {
        PI / libm::ldexp(1.0, self.register_bits as i32 - 1)
    }

    /// Energy of a basis state, evaluated from the coefficients.
    pub fn energy(&self, basis: usize) -> f64 {
        let sigma = |q: usize| if basis >> q & 1 == 0 { 1.0 } else { -1.0 };
        let mut e = self.constant;
        for (j, row) in self.coupling.iter().enumerate() {
            let s = sigma(j);
            e -= self.spin_field[j] * s;
            for (l, &jl) in row.iter().enumerate() {
                e -= jl * s * sigma(self.register_start + l);
            }
        }
        for (l, &c) in self.register_field.iter().enumerate() {
            e -= c * sigma(self.register_start + l);
        }
        e
    }

    /// Gate-level factorization of the evolution step: `n·p` ZZ phases,
    /// `n + p` single-qubit Z phases and one global phase. All factors commute.
    pub fn decompose(&self) -> Circuit {
        let tau = self.step();
        let mut gates = Vec::with_capacity(self.fields.len() * (self.register_bits as usize + 1) + self.register_bits as usize + 1);
        for (j, row) in self.coupling.iter().enumerate() {
            for (l, &jl) in row.iter().enumerate() {
                gates.push(Gate::ZZPhase {
                    q0: j,
                    q1: self.register_start + l,
                    theta: -tau * jl,
                });
            }
        }
        for (j, &b) in self.spin_field.iter().enumerate() {
            gates.push(Gate::ZPhase { q: j, theta: -tau * b });
        }
        for (l, &c) in self.register_field.iter().enumerate() {
            gates.push(Gate::ZPhase {
                q: self.register_start + l,
                theta: -tau * c,
            });
        }
        gates.push(Gate::GlobalPhase {
            theta: tau * self.constant,
        });
        Circuit::from_gates(gates)
    }
}

/// Multiplies each amplitude by `exp(−iπE/2^{p−1})`, with `E` evaluated from
/// the coefficients. Qubits above the register are spectators.
pub fn apply_diag_evolution(state: &mut QuantumState, coeffs: &IsingCoefficients) -> Result<()> {
    if coeffs.span() > state.num_qubits() {
        return Err(Error::LayoutMismatch);
    }
    let n = coeffs.num_spins();
    let p = coeffs.register_bits as usize;
    let period = libm::ldexp(1.0, p as i32);
    let reg_mask = (1usize << p) - 1;

    // Split E = Σ_j S_j h_j(x) + g(x) per register value x, and tabulate the
    // spin sum over the low and high halves of the spin qubits.
    let n_lo = n / 2;
    let (lo_len, hi_len) = (1usize << n_lo, 1usize << (n - n_lo));
    let mut lo_table = vec![0.0; (1 << p) * lo_len];
    let mut hi_table = vec![0.0; (1 << p) * hi_len];
    let mut h = vec![0.0; n];
    for x in 0..1usize << p {
        let mu = |l: usize| if x >> l & 1 == 0 { 1.0 } else { -1.0 };
        for (j, hj) in h.iter_mut().enumerate() {
            *hj = -coeffs.spin_field[j]
                - coeffs.coupling[j].iter().enumerate().map(|(l, &jl)| jl * mu(l)).sum::<f64>();
        }
        let g = coeffs.constant
            - coeffs.register_field.iter().enumerate().map(|(l, &c)| c * mu(l)).sum::<f64>();
        fill_spin_sums(&h[..n_lo], g, &mut lo_table[x * lo_len..(x + 1) * lo_len]);
        fill_spin_sums(&h[n_lo..], 0.0, &mut hi_table[x * hi_len..(x + 1) * hi_len]);
    }

    // With half-integer coefficients 2E is an integer and the phase takes
    // 2^{p+1} values.
    let half_integral = coeffs
        .coupling
        .iter()
        .flatten()
        .chain(&coeffs.spin_field)
        .chain(&coeffs.register_field)
        .chain(core::iter::once(&coeffs.constant))
        .all(|&c| libm::fabs(c) < 1e15 && 2.0 * c == libm::rint(2.0 * c));
    let phase_count = 2usize << p;
    let phases: Vec<Complex64> = if half_integral {
        (0..phase_count)
            .map(|k| Complex64::from_polar(1.0, -TAU * k as f64 / phase_count as f64))
            .collect()
    } else {
        Vec::new()
    };

    for (i, amp) in state.amplitudes_mut().iter_mut().enumerate() {
        let x = (i >> coeffs.register_start) & reg_mask;
        let lo = i & (lo_len - 1);
        let hi = (i >> n_lo) & (hi_len - 1);
        let e = lo_table[x * lo_len + lo] + hi_table[x * hi_len + hi];
        *amp *= if half_integral {
            let k = (libm::rint(2.0 * e) as i64).rem_euclid(phase_count as i64);
            phases[k as usize]
        } else {
            // exp(−iπE/2^{p−1}) = exp(−2πi E/2^p); reduce E modulo 2^p first
            let mut r = e % period;
            if r < 0.0 {
                r += period;
            }
            Complex64::from_polar(1.0, -TAU * r / period)
        };
    }
    Ok(())
}

/// `out[s] = g + Σ_j ±h_j`, with `+` where bit `j` of `s` is clear.
fn fill_spin_sums(h: &[f64], g: f64, out: &mut [f64]) {
    out[0] = g + h.iter().sum::<f64>();
    for s in 1..out.len() {
        let j = s.trailing_zeros() as usize;
        out[s] = out[s & (s - 1)] - 2.0 * h[j];
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Energy straight from the defining product `(Δ − Σ a_j S_j)·x`.
    fn product_energy(values: &[i64], offset: i64, p: u32, start: usize, basis: usize) -> f64 {
        let s: i64 = values
            .iter()
            .enumerate()
            .map(|(j, &a)| if basis >> j & 1 == 0 { a } else { -a })
            .sum();
        let x = (basis >> start) & ((1 << p) - 1);
        ((offset - s) * x as i64) as f64
    }

    #[test]
    fn coefficients_for_single_value() {
        let c = IsingCoefficients::for_values(&[1], 1, 1);
        assert_eq!(c.coupling, vec![vec![-0.5]]);
        assert_eq!(c.spin_field, vec![0.5]);
        assert_eq!(c.register_field, vec![0.5]);
        assert_eq!(c.constant, 0.5);
        let circuit = c.decompose();
        let kinds = circuit.kind_counts();
        assert_eq!((kinds.zz_phase, kinds.z_phase, kinds.global_phase), (1, 2, 1));
    }

    #[test]
    fn decomposition_gate_count() {
        let c = IsingCoefficients::for_values(&[1, 2, 3, 4], 0, 4);
        let kinds = c.decompose().kind_counts();
        assert_eq!(kinds.zz_phase, 16);
        assert_eq!(kinds.z_phase, 8);
        assert_eq!(kinds.global_phase, 1);
        assert_eq!(c.decompose().len(), 25);
    }

    #[test]
    fn zero_register_and_solutions_get_no_phase() {
        let c = IsingCoefficients::for_values(&[1, 2, 3, 4], 0, 4);
        let mut s = QuantumState::new(8);
        for q in 0..8 {
            s.apply_ry_prep(q);
        }
        let before = s.clone();
        apply_diag_evolution(&mut s, &c).unwrap();
        for i in 0..256usize {
            let x = i >> 4;
            let spins = i & 15;
            // +1 −1 −1 +1 is bits 0110
            if x == 0 || spins == 0b0110 || spins == 0b1001 {
                assert!((s.amplitude(i) - before.amplitude(i)).norm() < 1e-14, "basis {i}");
            }
        }
    }

    #[test]
    fn rejects_too_small_state() {
        let c = IsingCoefficients::for_values(&[1, 2], 1, 2);
        let mut s = QuantumState::new(3);
        assert_eq!(apply_diag_evolution(&mut s, &c), Err(Error::LayoutMismatch));
    }

    proptest! {
        #[test]
        fn energy_matches_product_form(
            values in prop::collection::vec(-20i64..=20, 1..5),
            offset in -5i64..=5,
            p in 1u32..5,
            gap in 0usize..2,
            basis in any::<usize>(),
        ) {
            let start = values.len() + gap;
            let c = IsingCoefficients::new(values.clone(), offset, p, start);
            let basis = basis & ((1 << c.span()) - 1);
            prop_assert_eq!(c.energy(basis), product_energy(&values, offset, p, start, basis));
        }

        #[test]
        fn direct_evolution_uses_energy(
            values in prop::collection::vec(1i64..=20, 1..4),
            offset in 0i64..=1,
            p in 1u32..4,
        ) {
            let n = values.len();
            let c = IsingCoefficients::new(values, offset, p, n);
            let q = c.span();
            let mut s = QuantumState::new(q);
            for k in 0..q {
                s.apply_ry_prep(k);
            }
            let before = s.clone();
            apply_diag_evolution(&mut s, &c).unwrap();
            for i in 0..1usize << q {
                let expected = before.amplitude(i) * Complex64::from_polar(1.0, -c.step() * c.energy(i));
                prop_assert!((s.amplitude(i) - expected).norm() < 1e-12);
            }
            prop_assert!(s.is_normalized(1e-10));
        }
    }
}
