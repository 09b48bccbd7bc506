use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand_core::RngCore;

use crate::error::{Error, Result};

/// 2×2 complex matrix, row major.
pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Dense state vector. Bit `q` of a basis index is qubit `q`; bit 0 is `|0⟩`
/// (spin up).
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

impl QuantumState {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn new(num_qubits: usize) -> Self {
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { num_qubits, amps }
    }

    /// Wraps raw amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Option<Self> {
        if !amps.len().is_power_of_two() {
            return None;
        }
        Some(Self {
            num_qubits: amps.len().trailing_zeros() as usize,
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amps[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        libm::fabs(self.norm_sqr() - 1.0) <= tol
    }

    pub fn inner(&self, other: &QuantumState) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Largest componentwise distance to `other`.
    pub fn max_deviation(&self, other: &QuantumState) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_single(&mut self, q: usize, m: &Matrix2) {
        for_pairs(&mut self.amps, q, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = m[0][0] * x + m[0][1] * y;
            *a1 = m[1][0] * x + m[1][1] * y;
        });
    }

    /// `e^{−iπσ^y/4}`: takes `|0⟩` to `(|0⟩ + |1⟩)/√2`.
    pub fn apply_ry_prep(&mut self, q: usize) {
        self.apply_real_rotation(q, FRAC_1_SQRT_2, FRAC_1_SQRT_2);
    }

    /// `e^{+iπσ^y/4}`, the inverse of [`apply_ry_prep`](Self::apply_ry_prep).
    pub fn apply_ry_unprep(&mut self, q: usize) {
        self.apply_real_rotation(q, FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
    }

    /// `[[c, −s], [s, c]]`
    fn apply_real_rotation(&mut self, q: usize, c: f64, s: f64) {
        for_pairs(&mut self.amps, q, |a0, a1| {
            let (x, y) = (*a0, *a1);
            *a0 = x * c - y * s;
            *a1 = x * s + y * c;
        });
    }

    pub fn apply_not(&mut self, q: usize) {
        for_pairs(&mut self.amps, q, core::mem::swap);
    }

    pub fn apply_toffoli(&mut self, c0: usize, c1: usize, target: usize) {
        let controls = (1usize << c0) | (1usize << c1);
        let half = 1usize << target;
        for (block, chunk) in self.amps.chunks_exact_mut(2 * half).enumerate() {
            let base = block * 2 * half;
            let (lo, hi) = chunk.split_at_mut(half);
            for (k, (a0, a1)) in lo.iter_mut().zip(hi).enumerate() {
                if (base + k) & controls == controls {
                    core::mem::swap(a0, a1);
                }
            }
        }
    }

    /// `e^{−iθσ^z}`.
    pub fn apply_zphase(&mut self, q: usize, theta: f64) {
        let down = Complex64::from_polar(1.0, theta);
        let up = down.conj();
        let mask = 1usize << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            *a *= if i & mask == 0 { up } else { down };
        }
    }

    /// `e^{−iθσ^z_{q0}σ^z_{q1}}`.
    pub fn apply_zzphase(&mut self, q0: usize, q1: usize, theta: f64) {
        let odd = Complex64::from_polar(1.0, theta);
        let even = odd.conj();
        for (i, a) in self.amps.iter_mut().enumerate() {
            let parity = ((i >> q0) ^ (i >> q1)) & 1;
            *a *= if parity == 0 { even } else { odd };
        }
    }

    /// Multiplies every amplitude by `e^{−iθ}`.
    pub fn apply_global_phase(&mut self, theta: f64) {
        let z = Complex64::from_polar(1.0, -theta);
        for a in &mut self.amps {
            *a *= z;
        }
    }

    /// Probability that qubit `q` reads `|1⟩`.
    pub fn probability_one(&self, q: usize) -> f64 {
        let mask = 1usize << q;
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & mask != 0)
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }

    /// Draws `shots` computational-basis outcomes.
    pub fn sample<R: RngCore + ?Sized>(&self, shots: usize, rng: &mut R) -> Result<Vec<usize>> {
        let norm = self.norm_sqr();
        if libm::fabs(norm - 1.0) > 1e-10 {
            return Err(Error::NotNormalized { norm_sqr: norm });
        }
        let mut cumulative = Vec::with_capacity(self.amps.len());
        let mut acc = 0.0;
        for a in &self.amps {
            acc += a.norm_sqr();
            cumulative.push(acc);
        }
        Ok((0..shots)
            .map(|_| {
                let u = unit_f64(rng) * acc;
                cumulative
                    .partition_point(|&c| c <= u)
                    .min(self.amps.len() - 1)
            })
            .collect())
    }

    /// `(basis index, amplitude)` for every amplitude with magnitude above
    /// `threshold`.
    pub fn nonzero(&self, threshold: f64) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        self.amps
            .iter()
            .copied()
            .enumerate()
            .filter(move |(_, a)| a.norm() > threshold)
    }
}

/// Calls `f` on every amplitude pair differing only in bit `q`, low index first.
fn for_pairs(amps: &mut [Complex64], q: usize, mut f: impl FnMut(&mut Complex64, &mut Complex64)) {
    let half = 1usize << q;
    for chunk in amps.chunks_exact_mut(2 * half) {
        let (lo, hi) = chunk.split_at_mut(half);
        for (a0, a1) in lo.iter_mut().zip(hi) {
            f(a0, a1);
        }
    }
}

/// Uniform in `[0, 1)` from the top 53 bits.
fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}
