//! Debug dump of a state vector.

use std::fmt::Write as _;

use partcount_core::emulator::QuantumState;

pub const DUMP_THRESHOLD: f64 = 1e-12;

/// One line per amplitude above [`DUMP_THRESHOLD`]: the basis index as a
/// binary string (highest qubit first), then the real and imaginary parts.
pub fn dump_state(state: &QuantumState) -> String {
    let width = state.num_qubits().max(1);
    let mut out = String::new();
    for (index, amp) in state.nonzero(DUMP_THRESHOLD) {
        writeln!(out, "{index:0width$b} {:?} {:?}", amp.re, amp.im).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dumps_nonzero_amplitudes_msb_first() {
        let mut s = QuantumState::new(3);
        s.apply_not(0);
        s.apply_ry_prep(2);
        let text = dump_state(&s);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("001 0.7071067811865476 0.0"));
        assert!(lines[1].starts_with("101 "));
    }
}
