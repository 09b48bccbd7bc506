//! Problem instances, their derived parameters, and partition checking.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest supported number of values. Keeps every count below 2^53 and
/// exhaustive enumeration feasible.
pub const MAX_VALUES: usize = 30;

/// Values must sum to less than this.
pub const MAX_SUM: u64 = 1 << 32;

/// A multiset of positive integers in a fixed order, optionally with a fixed
/// cardinality difference `C = |A_1| − |A_2|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    values: Vec<u64>,
    constraint: Option<i64>,
}

impl Instance {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        Self::build(values, None)
    }

    pub fn with_constraint(values: Vec<u64>, constraint: i64) -> Result<Self> {
        Self::build(values, Some(constraint))
    }

    fn build(values: Vec<u64>, constraint: Option<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if values.len() > MAX_VALUES {
            return Err(Error::TooManyValues {
                n: values.len(),
                max: MAX_VALUES,
            });
        }
        if let Some(index) = values.iter().position(|&a| a == 0) {
            return Err(Error::NonPositive { index });
        }
        // at most 30 terms below 2^64 each cannot overflow u128
        let total: u128 = values.iter().map(|&a| a as u128).sum();
        if total >= MAX_SUM as u128 {
            return Err(Error::SumTooLarge);
        }
        if let Some(c) = constraint {
            if c.unsigned_abs() > values.len() as u64 {
                return Err(Error::ConstraintOutOfRange {
                    c,
                    n: values.len(),
                });
            }
        }
        Ok(Self { values, constraint })
    }

    /// Same values, constraint replaced (or removed).
    pub fn reconstrained(&self, constraint: Option<i64>) -> Result<Self> {
        Self::build(self.values.clone(), constraint)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn constraint(&self) -> Option<i64> {
        self.constraint
    }

    pub fn sum(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn params(&self) -> DerivedParams {
        derive_params(self)
    }

    /// `Σ a_j S_j` for a configuration of matching length.
    pub fn signed_sum(&self, cfg: &SpinConfig) -> Result<i64> {
        self.check_len(cfg)?;
        Ok(signed_sum(&self.values, cfg.spins()))
    }

    /// True iff `cfg` solves the instance, including the cardinality constraint
    /// when one is present.
    pub fn verify(&self, cfg: &SpinConfig) -> Result<bool> {
        verify_partition(self, cfg)
    }

    fn check_len(&self, cfg: &SpinConfig) -> Result<()> {
        if cfg.len() != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found: cfg.len(),
            });
        }
        Ok(())
    }
}

pub(crate) fn signed_sum(values: &[u64], spins: &[Spin]) -> i64 {
    values
        .iter()
        .zip(spins)
        .map(|(&a, s)| s.sign() * a as i64)
        .sum()
}

/// Parameters fixed by the values (and the constraint, for `K`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DerivedParams {
    /// `B = Σ a_j`.
    pub total: u64,
    /// `Δ = B mod 2`, the target of `Σ a_j S_j`.
    pub delta: u64,
    /// Modulus of the trace sum, `M = B + Δ + 1`.
    pub modulus: u64,
    /// Number-register width: smallest `p ≥ 1` with `M ≤ 2^p`.
    pub register_bits: u32,
    /// Cardinality modulus `K = n + |C| + 1`, constrained instances only.
    pub card_modulus: Option<u64>,
}

impl DerivedParams {
    /// Width of the cardinality register: smallest `q ≥ 1` with `K ≤ 2^q`.
    pub fn card_register_bits(&self) -> Option<u32> {
        self.card_modulus.map(bits_for)
    }
}

/// Smallest `p ≥ 1` with `m ≤ 2^p`.
pub(crate) fn bits_for(m: u64) -> u32 {
    if m <= 2 {
        1
    } else {
        64 - (m - 1).leading_zeros()
    }
}

pub fn derive_params(inst: &Instance) -> DerivedParams {
    let total = inst.sum();
    let delta = total % 2;
    let modulus = total + delta + 1;
    DerivedParams {
        total,
        delta,
        modulus,
        register_bits: bits_for(modulus),
        card_modulus: inst
            .constraint
            .map(|c| inst.len() as u64 + c.unsigned_abs() + 1),
    }
}

pub fn verify_partition(inst: &Instance, cfg: &SpinConfig) -> Result<bool> {
    let s = inst.signed_sum(cfg)?;
    if s != inst.params().delta as i64 {
        return Ok(false);
    }
    Ok(match inst.constraint {
        Some(c) => cfg.magnetization() == c,
        None => true,
    })
}

/// Eigenvalue of `σ^z`. `Up` (`+1`, qubit `|0⟩`) places the value in `A_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    pub fn sign(self) -> i64 {
        match self {
            Spin::Up => 1,
            Spin::Down => -1,
        }
    }

    pub fn flipped(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }

    pub fn from_sign(sign: i64) -> Option<Spin> {
        match sign {
            1 => Some(Spin::Up),
            -1 => Some(Spin::Down),
            _ => None,
        }
    }

    /// Computational basis bit: 0 for up, 1 for down.
    pub fn bit(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpinConfig {
    spins: Vec<Spin>,
}

impl SpinConfig {
    pub fn new(spins: Vec<Spin>) -> Self {
        Self { spins }
    }

    /// From `±1` signs; `None` if any entry is something else.
    pub fn from_signs(signs: &[i64]) -> Option<Self> {
        signs
            .iter()
            .map(|&s| Spin::from_sign(s))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    /// Configuration whose `j`-th spin is down iff bit `j` of `bits` is set.
    pub fn from_bits(bits: u64, n: usize) -> Self {
        Self::new(
            (0..n)
                .map(|j| if bits >> j & 1 == 1 { Spin::Down } else { Spin::Up })
                .collect(),
        )
    }

    pub fn spins(&self) -> &[Spin] {
        &self.spins
    }

    pub fn signs(&self) -> Vec<i64> {
        self.spins.iter().map(|s| s.sign()).collect()
    }

    pub fn len(&self) -> usize {
        self.spins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spins.is_empty()
    }

    /// `Σ S_j = |A_1| − |A_2|`.
    pub fn magnetization(&self) -> i64 {
        self.spins.iter().map(|s| s.sign()).sum()
    }

    pub fn flipped(&self) -> Self {
        Self::new(self.spins.iter().map(|s| s.flipped()).collect())
    }

    /// Splits `values` into `(A_1, A_2)` in their original order.
    pub fn split(&self, values: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let mut first = Vec::new();
        let mut second = Vec::new();
        for (&a, s) in values.iter().zip(&self.spins) {
            match s {
                Spin::Up => first.push(a),
                Spin::Down => second.push(a),
            }
        }
        (first, second)
    }
}
