//! The n-spin correlation function `C(t) = ⟨Φ|e^{iH_x t} Z e^{−iH_x t} Z|Φ⟩`,
//! with `Z = σ_1^z…σ_n^z` and `H_x = −Σ a_j σ_j^x / 2`, and its zero-frequency
//! content.
//!
//! For integer `a_j`, `C(t) = Π cos(a_j t)` is `2π`-periodic and its average
//! over a period is `n_s/2^n` (for even totals). Sampling at `M′ ≥ M`
//! equally spaced times reproduces that average exactly.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::emulator::QuantumState;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::sum::{cos_turns, unit_phase, ComplexSum, KahanSum};

/// `Π_j cos(a_j t)`.
pub fn correlation_closed(inst: &Instance, t: f64) -> Complex64 {
    let re = inst.values().iter().map(|&a| libm::cos(a as f64 * t)).product();
    Complex64::new(re, 0.0)
}

/// Evaluates the correlation function on an `n`-qubit state vector starting
/// from all spins up.
pub fn correlation_emulated(inst: &Instance, t: f64, qubit_budget: usize) -> Result<Complex64> {
    let n = inst.len();
    if n > qubit_budget {
        return Err(Error::QubitBudget {
            needed: n,
            budget: qubit_budget,
        });
    }
    let phi = QuantumState::new(n);
    let mut psi = phi.clone();
    apply_parity(&mut psi);
    evolve_transverse(&mut psi, inst.values(), t);
    apply_parity(&mut psi);
    evolve_transverse(&mut psi, inst.values(), -t);
    Ok(phi.inner(&psi))
}

/// `σ_1^z…σ_n^z`.
fn apply_parity(state: &mut QuantumState) {
    for (i, a) in state.amplitudes_mut().iter_mut().enumerate() {
        if i.count_ones() % 2 == 1 {
            *a = -*a;
        }
    }
}

/// `e^{−iH_x t} = Π_j e^{i a_j t σ_j^x / 2}`.
fn evolve_transverse(state: &mut QuantumState, values: &[u64], t: f64) {
    for (q, &a) in values.iter().enumerate() {
        let half = a as f64 * t / 2.0;
        let c = Complex64::new(libm::cos(half), 0.0);
        let s = Complex64::new(0.0, libm::sin(half));
        state.apply_single(q, &[[c, s], [s, c]]);
    }
}

/// Discrete zero-frequency average
/// `(1/M′) Σ_m e^{−2πimΔ/M′} C(2πm/M′)`, equal to `n_s/2^n` whenever
/// `M′ ≥ M`.
pub fn zero_freq_estimate(inst: &Instance, m_prime: u64) -> Result<f64> {
    let params = inst.params();
    if m_prime < params.modulus {
        return Err(Error::ModulusTooSmall {
            m_prime,
            m: params.modulus,
        });
    }
    let mut acc = ComplexSum::default();
    for m in 0..m_prime {
        // C(2πm/M′) with each cosine argument reduced exactly
        let corr: f64 = inst
            .values()
            .iter()
            .map(|&a| cos_turns(m as i128 * a as i128, m_prime))
            .product();
        acc.add(unit_phase(-(m as i128) * params.delta as i128, m_prime) * corr);
    }
    Ok(acc.value().re / m_prime as f64)
}

/// Observation time `2^n π` needed to tell `n_s = 0` from `n_s = 1`.
pub fn observation_bound(n: usize) -> f64 {
    libm::ldexp(PI, n as i32)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub times: Vec<f64>,
    pub values: Vec<Complex64>,
    /// Mean of the samples.
    pub zero_freq: f64,
    /// `(ω, |S(ω)|)`
    pub omega_grid: Vec<(f64, f64)>,
}

/// Samples `C(t)` at `n_t` uniform times on `[0, T]` and evaluates the
/// rectangular-window transform `|Σ_k e^{iωt_k} C(t_k) δt|` on `n_omega`
/// uniform frequencies in `[0, ω_max]`.
pub fn spectrum_scan(inst: &Instance, omega_max: f64, n_omega: usize, t_max: f64, n_t: usize) -> Result<Spectrum> {
    if t_max.is_nan() || t_max <= 0.0 || !t_max.is_finite() {
        return Err(Error::InvalidGrid("observation time must be positive"));
    }
    if n_t < 2 {
        return Err(Error::InvalidGrid("need at least two time samples"));
    }
    if n_omega < 1 {
        return Err(Error::InvalidGrid("need at least one frequency"));
    }
    if omega_max.is_nan() || omega_max < 0.0 || !omega_max.is_finite() || (n_omega > 1 && omega_max == 0.0) {
        return Err(Error::InvalidGrid("frequency range must be positive"));
    }
    let dt = t_max / (n_t - 1) as f64;
    let times: Vec<f64> = (0..n_t).map(|k| k as f64 * dt).collect();
    let values: Vec<Complex64> = times.iter().map(|&t| correlation_closed(inst, t)).collect();
    let mut mean = KahanSum::default();
    values.iter().for_each(|v| mean.add(v.re));
    let d_omega = if n_omega > 1 { omega_max / (n_omega - 1) as f64 } else { 0.0 };
    let omega_grid = (0..n_omega)
        .map(|i| {
            let omega = i as f64 * d_omega;
            let mut acc = ComplexSum::default();
            for (&t, v) in times.iter().zip(&values) {
                acc.add(Complex64::from_polar(1.0, (omega * t) % TAU) * v);
            }
            (omega, (acc.value() * dt).norm())
        })
        .collect();
    Ok(Spectrum {
        times,
        values,
        zero_freq: mean.value() / n_t as f64,
        omega_grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::{count_bruteforce, count_formula};
    use alloc::vec;
    use core::f64::consts::FRAC_PI_2;
    use proptest::prelude::*;

    fn inst(values: &[u64]) -> Instance {
        Instance::new(values.to_vec()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(correlation_closed(&inst(&[3, 7]), 0.0), Complex64::new(1.0, 0.0));
        assert!((correlation_closed(&inst(&[1, 2, 3, 4]), PI).re - 1.0).abs() < 1e-12);
        assert!(correlation_closed(&inst(&[1]), FRAC_PI_2).re.abs() < 1e-15);
    }

    #[test]
    fn emulated_examples() {
        let c = correlation_emulated(&inst(&[1, 2, 3, 4]), 0.0, 26).unwrap();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        let c = correlation_emulated(&inst(&[1, 2, 3, 4]), PI, 26).unwrap();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(correlation_emulated(&inst(&[1, 2, 3]), 1.0, 2).is_err());
    }

    #[test]
    fn zero_frequency_examples() {
        assert!((zero_freq_estimate(&inst(&[1, 2, 3, 4]), 11).unwrap() - 0.125).abs() < 1e-12);
        assert!(zero_freq_estimate(&inst(&[2, 2, 2, 4]), 11).unwrap().abs() < 1e-12);
        assert!((zero_freq_estimate(&inst(&[1, 1, 1, 4]), 9).unwrap() - 0.0625).abs() < 1e-12);
        assert!(matches!(
            zero_freq_estimate(&inst(&[1, 2, 3, 4]), 10),
            Err(Error::ModulusTooSmall { m_prime: 10, m: 11 })
        ));
    }

    #[test]
    fn observation_bounds() {
        assert_eq!(observation_bound(1), 2.0 * PI);
        assert!((observation_bound(4) - 50.265).abs() < 1e-3);
        assert_eq!(observation_bound(10), 1024.0 * PI);
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let i = inst(&[1, 2]);
        assert!(spectrum_scan(&i, 3.0, 10, 10.0, 1).is_err());
        assert!(spectrum_scan(&i, 3.0, 0, 10.0, 10).is_err());
        assert!(spectrum_scan(&i, 3.0, 10, 0.0, 10).is_err());
        assert!(spectrum_scan(&i, 3.0, 10, 10.0, 2).is_ok());
    }

    #[test]
    fn scan_samples_are_bounded() {
        let s = spectrum_scan(&inst(&[1, 2, 3, 4]), 4.0, 41, 64.0, 2048).unwrap();
        assert_eq!(s.values[0], Complex64::new(1.0, 0.0));
        assert!(s.values.iter().all(|v| v.norm() <= 1.0));
        assert_eq!(s.omega_grid.len(), 41);
        assert_eq!(s.omega_grid[0].0, 0.0);
    }

    #[test]
    fn zero_frequency_peak_tracks_solution_count() {
        let t_max = observation_bound(4);
        let solvable = spectrum_scan(&inst(&[1, 2, 3, 4]), 5.0, 101, t_max, 4096).unwrap();
        let unsolvable = spectrum_scan(&inst(&[2, 2, 2, 4]), 5.0, 101, t_max, 4096).unwrap();
        let s0 = solvable.omega_grid[0].1;
        // weight n_s/2^n = 1/8 accumulated over the window
        assert!((s0 / t_max - 0.125).abs() < 0.01 * 0.125);
        assert!(s0 > 5.0 * unsolvable.omega_grid[0].1);
        // ω = 2 carries the same weight 2/16 for this instance, so zero is
        // not a strict maximum
        let at_two = solvable.omega_grid.iter().find(|(w, _)| (w - 2.0).abs() < 1e-9).unwrap().1;
        assert!((at_two / s0 - 1.0).abs() < 0.02);
    }

    #[test]
    fn spin_equation_of_motion() {
        // single spin: e^{iH t} σ^z e^{−iH t} = σ^z cos(at) − σ^y sin(at)
        let sigma_z = |s: &QuantumState| {
            let a = s.amplitudes();
            Complex64::from(a[0].norm_sqr() - a[1].norm_sqr())
        };
        let sigma_y = |s: &QuantumState| {
            let a = s.amplitudes();
            // ⟨ψ|σ^y|ψ⟩ with σ^y = [[0, −i], [i, 0]]
            a[0].conj() * Complex64::new(0.0, -1.0) * a[1] + a[1].conj() * Complex64::new(0.0, 1.0) * a[0]
        };
        let states = [
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            vec![Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)],
            vec![Complex64::new(0.5, 0.5), Complex64::new(-0.5, 0.5)],
        ];
        for amps in states {
            let psi = QuantumState::from_amplitudes(amps).unwrap();
            for (a, t) in [(1u64, 0.3), (3, 1.7), (5, -2.2)] {
                let mut evolved = psi.clone();
                evolve_transverse(&mut evolved, &[a], t);
                let lhs = sigma_z(&evolved);
                let angle = a as f64 * t;
                let rhs = sigma_z(&psi) * libm::cos(angle) - sigma_y(&psi) * libm::sin(angle);
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn emulated_matches_closed(values in prop::collection::vec(1u64..=20, 1..=8), t in 0.0f64..TAU) {
            let i = inst(&values);
            let e = correlation_emulated(&i, t, 26).unwrap();
            prop_assert!((e - correlation_closed(&i, t)).norm() < 1e-12);
        }

        #[test]
        fn zero_frequency_reproduces_formula(values in prop::collection::vec(1u64..=40, 1..=10)) {
            let i = inst(&values);
            let params = i.params();
            let count = count_formula(&i).unwrap().count as f64;
            prop_assert_eq!(count as u64, count_bruteforce(&i).unwrap().count);
            for m_prime in [params.modulus, params.modulus + 1, 2 * params.modulus, 1 << params.register_bits] {
                let z = zero_freq_estimate(&i, m_prime).unwrap();
                prop_assert!((libm::ldexp(z, i.len() as i32) - count).abs() < 1e-10);
            }
        }

        #[test]
        fn correlation_is_bounded_and_periodic(values in prop::collection::vec(1u64..=50, 1..=10), t in -20.0f64..20.0) {
            let i = inst(&values);
            let c = correlation_closed(&i, t).re;
            prop_assert!(c.abs() <= 1.0);
            prop_assert!((correlation_closed(&i, t + TAU).re - c).abs() < 1e-9);
        }
    }
}
