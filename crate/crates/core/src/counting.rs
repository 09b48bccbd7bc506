//! Exact solution counts by enumeration, trace formula and dynamic programming.
//!
//! Every backend also answers the restricted question used by the extractor:
//! how many solutions agree with a fixed prefix `S_1..S_l`.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::instance::{signed_sum, Instance, Spin};
use crate::sum::{cos_turns, unit_phase, ComplexSum};

/// Floating-point estimates whose distance to the nearest integer reaches
/// this are rejected instead of rounded.
pub const RESIDUAL_TOLERANCE: f64 = 1e-6;

/// Default cap on the number of live dynamic-programming states.
pub const DEFAULT_DP_BUDGET: usize = 1 << 26;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Bruteforce,
    Formula,
    Dp,
    QuantumAmplitude,
    QuantumPhysical,
    Spectral,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::Formula => "formula",
            Method::Dp => "dp",
            Method::QuantumAmplitude => "quantum_amplitude",
            Method::QuantumPhysical => "quantum_physical",
            Method::Spectral => "spectral",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Backends that can count completions of a fixed prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RestrictedMethod {
    Formula,
    Dp,
    Bruteforce,
}

impl From<RestrictedMethod> for Method {
    fn from(m: RestrictedMethod) -> Self {
        match m {
            RestrictedMethod::Formula => Method::Formula,
            RestrictedMethod::Dp => Method::Dp,
            RestrictedMethod::Bruteforce => Method::Bruteforce,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CountResult {
    pub count: u64,
    pub method: Method,
    /// Distance of the floating-point estimate from `count`; zero for exact
    /// backends.
    pub residual: f64,
}

impl CountResult {
    pub fn exact(count: u64, method: Method) -> Self {
        Self {
            count,
            method,
            residual: 0.0,
        }
    }

    /// Rounds a real estimate. `imag` is any part of the estimate that should
    /// vanish exactly and is folded into the residual.
    pub fn from_estimate(estimate: f64, imag: f64, method: Method) -> Result<Self> {
        if !estimate.is_finite() || !imag.is_finite() {
            return Err(Error::Precision {
                method,
                residual: f64::INFINITY,
            });
        }
        let rounded = libm::round(estimate);
        let mut residual = libm::fabs(estimate - rounded).max(libm::fabs(imag));
        if rounded < 0.0 {
            // a count below zero is as wrong as a half-integer
            residual = residual.max(libm::fabs(estimate));
        }
        if residual >= RESIDUAL_TOLERANCE {
            return Err(Error::Precision { method, residual });
        }
        Ok(Self {
            count: rounded as u64,
            method,
            residual,
        })
    }
}

/// Spins `S_1..S_l` held fixed while counting.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixAssignment {
    fixed: Vec<Spin>,
}

impl PrefixAssignment {
    pub fn new(fixed: Vec<Spin>) -> Self {
        Self { fixed }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn spins(&self) -> &[Spin] {
        &self.fixed
    }

    pub fn len(&self) -> usize {
        self.fixed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fixed.is_empty()
    }

    pub fn extended(&self, s: Spin) -> Self {
        let mut fixed = self.fixed.clone();
        fixed.push(s);
        Self { fixed }
    }
}

/// The instance with its first `l` spins absorbed into shifted targets:
/// count `S` over `rest` with `Σ a S = sum_target` and `Σ S = mag_target`.
struct Reduced<'a> {
    rest: &'a [u64],
    sum_target: i64,
    mag_target: Option<i64>,
    delta: u64,
    modulus: u64,
    /// `(K, C)` for constrained instances.
    card: Option<(u64, i64)>,
    /// Fixed-prefix contributions.
    prefix_sum: i64,
    prefix_mag: i64,
}

fn reduce<'a>(inst: &'a Instance, prefix: &PrefixAssignment) -> Result<Reduced<'a>> {
    let n = inst.len();
    let l = prefix.len();
    if l > n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: l,
        });
    }
    let params = inst.params();
    let prefix_sum = signed_sum(&inst.values()[..l], prefix.spins());
    let prefix_mag: i64 = prefix.spins().iter().map(|s| s.sign()).sum();
    Ok(Reduced {
        rest: &inst.values()[l..],
        sum_target: params.delta as i64 - prefix_sum,
        mag_target: inst.constraint().map(|c| c - prefix_mag),
        delta: params.delta,
        modulus: params.modulus,
        card: params.card_modulus.zip(inst.constraint()),
        prefix_sum,
        prefix_mag,
    })
}

/// Exhaustive enumeration over all `2^n` configurations.
pub fn count_bruteforce(inst: &Instance) -> Result<CountResult> {
    count_restricted(inst, &PrefixAssignment::empty(), RestrictedMethod::Bruteforce)
}

fn bruteforce_reduced(r: &Reduced<'_>) -> u64 {
    // Gray-code walk: one spin flips per step.
    let total: i64 = r.rest.iter().map(|&a| a as i64).sum();
    let mut sum = total;
    let mut mag = r.rest.len() as i64;
    let hits = |sum: i64, mag: i64| sum == r.sum_target && r.mag_target.is_none_or(|c| c == mag);
    let mut count = hits(sum, mag) as u64;
    let mut bits = 0u64;
    for i in 1u64..(1u64 << r.rest.len()) {
        let j = i.trailing_zeros() as usize;
        bits ^= 1 << j;
        let a = r.rest[j] as i64;
        if bits >> j & 1 == 1 {
            sum -= 2 * a;
            mag -= 2;
        } else {
            sum += 2 * a;
            mag += 2;
        }
        count += hits(sum, mag) as u64;
    }
    count
}

/// Cosine-product trace sum over `m = 0..M−1`, rounded to the nearest integer.
pub fn count_formula(inst: &Instance) -> Result<CountResult> {
    if inst.constraint().is_some() {
        return Err(Error::ConstraintUnsupported {
            method: Method::Formula,
        });
    }
    count_restricted(inst, &PrefixAssignment::empty(), RestrictedMethod::Formula)
}

/// Unconstrained trace sum evaluated with any modulus `m_prime ≥ M`.
pub fn count_formula_with_modulus(inst: &Instance, m_prime: u64) -> Result<CountResult> {
    if inst.constraint().is_some() {
        return Err(Error::ConstraintUnsupported {
            method: Method::Formula,
        });
    }
    let mut r = reduce(inst, &PrefixAssignment::empty())?;
    if m_prime < r.modulus {
        return Err(Error::ModulusTooSmall {
            m_prime,
            m: r.modulus,
        });
    }
    r.modulus = m_prime;
    let z = formula_reduced(&r);
    CountResult::from_estimate(z.re, z.im, Method::Formula)
}

/// Double trace sum over `m = 0..M−1` and `k = 0..K−1` for a constrained
/// instance.
pub fn count_formula_constrained(inst: &Instance) -> Result<CountResult> {
    if inst.constraint().is_none() {
        return Err(Error::ConstraintRequired {
            method: Method::Formula,
        });
    }
    count_restricted(inst, &PrefixAssignment::empty(), RestrictedMethod::Formula)
}

/// Raw complex value of the (restricted) trace sum, before rounding.
fn formula_reduced(r: &Reduced<'_>) -> num_complex::Complex64 {
    let m_mod = r.modulus;
    let scale = libm::ldexp(1.0, r.rest.len() as i32);
    let shift = r.prefix_sum as i128 - r.delta as i128;
    match r.card {
        None => {
            let mut acc = ComplexSum::default();
            for m in 0..m_mod {
                let mut prod = unit_phase(m as i128 * shift, m_mod);
                for &a in r.rest {
                    prod *= cos_turns(m as i128 * a as i128, m_mod);
                }
                acc.add(prod);
            }
            acc.value() * (scale / m_mod as f64)
        }
        Some((k_mod, c)) => {
            let den = m_mod * k_mod;
            let card_shift = r.prefix_mag as i128 - c as i128;
            let mut acc = ComplexSum::default();
            for k in 0..k_mod {
                for m in 0..m_mod {
                    // m·shift/M + k·card_shift/K over the common denominator MK
                    let num = m as i128 * shift * k_mod as i128 + k as i128 * card_shift * m_mod as i128;
                    let mut prod = unit_phase(num, den);
                    for &a in r.rest {
                        let arg = m as i128 * a as i128 * k_mod as i128 + k as i128 * m_mod as i128;
                        prod *= cos_turns(arg, den);
                    }
                    acc.add(prod);
                }
            }
            acc.value() * (scale / den as f64)
        }
    }
}

/// Pseudo-polynomial count over the achievable values of `Σ a_j S_j` (and
/// `Σ S_j` when constrained).
pub fn count_dp(inst: &Instance) -> Result<CountResult> {
    count_dp_with_budget(inst, DEFAULT_DP_BUDGET)
}

pub fn count_dp_with_budget(inst: &Instance, budget: usize) -> Result<CountResult> {
    let r = reduce(inst, &PrefixAssignment::empty())?;
    Ok(CountResult::exact(dp_reduced(&r, budget)?, Method::Dp))
}

/// Upper bound on the number of distinct `(Σ a S, Σ S)` states.
fn dp_state_bound(r: &Reduced<'_>) -> usize {
    let len = r.rest.len();
    let total: u64 = r.rest.iter().sum();
    let sums = 2 * total as u128 + 1;
    let cells = if r.mag_target.is_some() {
        sums * (len as u128 + 1)
    } else {
        sums
    };
    cells.min(1u128 << len).min(usize::MAX as u128) as usize
}

fn dp_reduced(r: &Reduced<'_>, budget: usize) -> Result<u64> {
    let cells = dp_state_bound(r);
    if cells > budget {
        return Err(Error::DpBudget { cells, budget });
    }
    let track_mag = r.mag_target.is_some();
    // Sorted by (sum, mag); shifting every key by the same amount keeps order,
    // so each step is a linear merge of the two shifted copies.
    let mut states: Vec<(i64, i64, u64)> = alloc::vec![(0, 0, 1)];
    let mut next = Vec::new();
    for &a in r.rest {
        let a = a as i64;
        let dm = track_mag as i64;
        next.clear();
        next.reserve(states.len() * 2);
        let (mut i, mut j) = (0, 0);
        while i < states.len() || j < states.len() {
            let down = states.get(i).map(|&(s, c, w)| (s - a, c - dm, w));
            let up = states.get(j).map(|&(s, c, w)| (s + a, c + dm, w));
            let item = match (down, up) {
                (Some(d), Some(u)) if (d.0, d.1) == (u.0, u.1) => {
                    i += 1;
                    j += 1;
                    (d.0, d.1, d.2 + u.2)
                }
                (Some(d), Some(u)) if (d.0, d.1) < (u.0, u.1) => {
                    i += 1;
                    d
                }
                (Some(_), Some(u)) => {
                    j += 1;
                    u
                }
                (Some(d), None) => {
                    i += 1;
                    d
                }
                (None, Some(u)) => {
                    j += 1;
                    u
                }
                (None, None) => unreachable!(),
            };
            next.push(item);
        }
        core::mem::swap(&mut states, &mut next);
    }
    let key = (r.sum_target, r.mag_target.unwrap_or(0));
    Ok(states
        .binary_search_by(|&(s, c, _)| (s, c).cmp(&key))
        .map(|idx| states[idx].2)
        .unwrap_or(0))
}

/// Number of solutions whose first `prefix.len()` spins equal `prefix`.
pub fn count_restricted(
    inst: &Instance,
    prefix: &PrefixAssignment,
    method: RestrictedMethod,
) -> Result<CountResult> {
    let r = reduce(inst, prefix)?;
    match method {
        RestrictedMethod::Bruteforce => Ok(CountResult::exact(bruteforce_reduced(&r), Method::Bruteforce)),
        RestrictedMethod::Dp => Ok(CountResult::exact(dp_reduced(&r, DEFAULT_DP_BUDGET)?, Method::Dp)),
        RestrictedMethod::Formula => {
            let z = formula_reduced(&r);
            CountResult::from_estimate(z.re, z.im, Method::Formula)
        }
    }
}
