//! Line-oriented circuit export.
//!
//! ```text
//! # qubits 15
//! # layout n=4 p=4 anc=6 kappa=14
//! # steps abstract=17 gates=56
//! RY_PREP 0
//! ZZPHASE 0 4 0.19634954084936207
//! GLOBALPHASE 0.0
//! TOFFOLI 0 1 8
//! DIAG_EVOLUTION 4 0/4/1,2,3,4
//! ```
//!
//! A constrained layout adds `q=<bits>` after `p=`; a layout without a
//! readout qubit prints `kappa=none`. `DIAG_EVOLUTION` takes the register's
//! first qubit and `offset/bits/field,field,…`. Angles use Rust's shortest
//! round-trip float formatting, so parsing and re-emitting is byte-identical.

use std::fmt::Write as _;

use partcount_core::emulator::{abstract_step_count, Circuit, Gate, IsingCoefficients, RegisterLayout};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CircuitParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `# {0}` header")]
    MissingHeader(&'static str),
    #[error("header declares {declared} qubits, layout needs {layout}")]
    QubitMismatch { declared: usize, layout: usize },
    #[error("gate out of range for the declared register")]
    OutOfRange,
}

pub fn emit(layout: &RegisterLayout, circuit: &Circuit) -> String {
    let mut out = String::new();
    writeln!(out, "# qubits {}", layout.total_qubits()).unwrap();
    write!(out, "# layout n={} p={}", layout.n_spins, layout.p_number).unwrap();
    if layout.q_card > 0 {
        write!(out, " q={}", layout.q_card).unwrap();
    }
    write!(out, " anc={} kappa=", layout.ancillas).unwrap();
    match layout.kappa {
        Some(k) => writeln!(out, "{k}").unwrap(),
        None => writeln!(out, "none").unwrap(),
    }
    writeln!(
        out,
        "# steps abstract={} gates={}",
        abstract_step_count(layout.n_spins, layout.p_number + layout.q_card),
        circuit.len()
    )
    .unwrap();
    for gate in circuit.gates() {
        out.push_str(gate.name());
        match gate {
            Gate::RyPrep(q) | Gate::RyUnprep(q) | Gate::Not(q) => write!(out, " {q}"),
            Gate::Toffoli { c0, c1, target } => write!(out, " {c0} {c1} {target}"),
            Gate::ZPhase { q, theta } => write!(out, " {q} {theta:?}"),
            Gate::ZZPhase { q0, q1, theta } => write!(out, " {q0} {q1} {theta:?}"),
            Gate::GlobalPhase { theta } => write!(out, " {theta:?}"),
            Gate::DiagEvolution(c) => {
                let fields: Vec<String> = c.fields().iter().map(i64::to_string).collect();
                write!(
                    out,
                    " {} {}/{}/{}",
                    c.register_start(),
                    c.offset(),
                    c.register_bits(),
                    fields.join(",")
                )
            }
        }
        .unwrap();
        out.push('\n');
    }
    out
}

pub fn parse(text: &str) -> Result<(RegisterLayout, Circuit), CircuitParseError> {
    let mut qubits = None;
    let mut layout = None;
    let mut circuit = Circuit::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let syntax = |message: String| CircuitParseError::Syntax { line, message };
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(header) = l.strip_prefix('#') {
            let mut words = header.split_whitespace();
            match words.next() {
                Some("qubits") => {
                    let n = words.next().ok_or_else(|| syntax("missing qubit count".into()))?;
                    qubits = Some(parse_num::<usize>(n).map_err(syntax)?);
                }
                Some("layout") => layout = Some(parse_layout(words).map_err(syntax)?),
                // derived from the gates; recomputed on emit
                _ => {}
            }
            continue;
        }
        let mut words = l.split_whitespace();
        let name = words.next().expect("non-empty line");
        let args: Vec<&str> = words.collect();
        let want = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(syntax(format!("{name} takes {k} arguments, found {}", args.len())))
            }
        };
        let q = |i: usize| parse_num::<usize>(args[i]).map_err(syntax);
        let angle = |i: usize| parse_num::<f64>(args[i]).map_err(syntax);
        let gate = match name {
            "RY_PREP" => {
                want(1)?;
                Gate::RyPrep(q(0)?)
            }
            "RY_UNPREP" => {
                want(1)?;
                Gate::RyUnprep(q(0)?)
            }
            "NOT" => {
                want(1)?;
                Gate::Not(q(0)?)
            }
            "TOFFOLI" => {
                want(3)?;
                Gate::Toffoli {
                    c0: q(0)?,
                    c1: q(1)?,
                    target: q(2)?,
                }
            }
            "ZPHASE" => {
                want(2)?;
                Gate::ZPhase {
                    q: q(0)?,
                    theta: angle(1)?,
                }
            }
            "ZZPHASE" => {
                want(3)?;
                Gate::ZZPhase {
                    q0: q(0)?,
                    q1: q(1)?,
                    theta: angle(2)?,
                }
            }
            "GLOBALPHASE" => {
                want(1)?;
                Gate::GlobalPhase { theta: angle(0)? }
            }
            "DIAG_EVOLUTION" => {
                want(2)?;
                Gate::DiagEvolution(parse_diag(q(0)?, args[1]).map_err(syntax)?)
            }
            other => return Err(syntax(format!("unknown gate {other:?}"))),
        };
        circuit.push(gate);
    }
    let qubits = qubits.ok_or(CircuitParseError::MissingHeader("qubits"))?;
    let layout = layout.ok_or(CircuitParseError::MissingHeader("layout"))?;
    if layout.total_qubits() != qubits {
        return Err(CircuitParseError::QubitMismatch {
            declared: qubits,
            layout: layout.total_qubits(),
        });
    }
    circuit.validate(qubits).map_err(|_| CircuitParseError::OutOfRange)?;
    Ok((layout, circuit))
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Result<T, String> {
    s.parse().map_err(|_| format!("invalid number {s:?}"))
}

fn parse_layout<'a>(words: impl Iterator<Item = &'a str>) -> Result<RegisterLayout, String> {
    let mut layout = RegisterLayout::amplitude(0, 0);
    let mut seen = [false; 4];
    for word in words {
        let (key, value) = word.split_once('=').ok_or_else(|| format!("expected key=value, found {word:?}"))?;
        match key {
            "n" => (layout.n_spins, seen[0]) = (parse_num(value)?, true),
            "p" => (layout.p_number, seen[1]) = (parse_num(value)?, true),
            "q" => layout.q_card = parse_num(value)?,
            "anc" => (layout.ancillas, seen[2]) = (parse_num(value)?, true),
            "kappa" => {
                layout.kappa = if value == "none" { None } else { Some(parse_num(value)?) };
                seen[3] = true;
            }
            _ => return Err(format!("unknown layout key {key:?}")),
        }
    }
    if seen.iter().any(|s| !s) {
        return Err("layout needs n, p, anc and kappa".into());
    }
    if let Some(k) = layout.kappa {
        if k != layout.prepared() + layout.ancillas {
            return Err(format!("kappa must follow the ancillas (expected {})", layout.prepared() + layout.ancillas));
        }
    }
    Ok(layout)
}

fn parse_diag(start: usize, spec: &str) -> Result<IsingCoefficients, String> {
    let mut parts = spec.split('/');
    let (Some(offset), Some(bits), Some(fields), None) = (parts.next(), parts.next(), parts.next(), parts.next()) else {
        return Err(format!("expected offset/bits/fields, found {spec:?}"));
    };
    let offset: i64 = parse_num(offset)?;
    let bits: u32 = parse_num(bits)?;
    let fields = fields.split(',').map(parse_num::<i64>).collect::<Result<Vec<_>, _>>()?;
    if bits == 0 || bits > 40 || start < fields.len() {
        return Err("register must have 1..=40 bits and start after the spins".into());
    }
    Ok(IsingCoefficients::new(fields, offset, bits, start))
}
