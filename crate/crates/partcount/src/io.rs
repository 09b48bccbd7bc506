//! Instance files.
//!
//! JSON: `{"a": [1, 2, 3, 4], "constraint": 0}`; `constraint` is optional and
//! other keys are rejected.
//!
//! Plain: one line of whitespace-separated positive integers, optionally
//! followed by a line `C=<integer>`.

use std::path::Path;
use std::str::FromStr;

use partcount_core::Instance;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

impl Format {
    /// `.json` files are JSON, everything else plain.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Plain,
        }
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("input is not valid UTF-8")]
    Utf8,
    #[error("malformed JSON instance: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("value {token:?} is not a positive integer")]
    NotPositiveInteger { token: String },
    #[error(transparent)]
    Instance(#[from] partcount_core::Error),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonInstance {
    a: Vec<serde_json::Number>,
    #[serde(default)]
    constraint: Option<i64>,
}

pub fn parse_instance(text: &[u8], format: Format) -> Result<Instance, ParseError> {
    let text = std::str::from_utf8(text).map_err(|_| ParseError::Utf8)?;
    match format {
        Format::Json => parse_json(text),
        Format::Plain => parse_plain(text),
    }
}

fn parse_json(text: &str) -> Result<Instance, ParseError> {
    let raw: JsonInstance = serde_json::from_str(text)?;
    let values = raw
        .a
        .iter()
        .map(|num| match num.as_u64() {
            Some(v) if v > 0 => Ok(v),
            _ => Err(ParseError::NotPositiveInteger {
                token: num.to_string(),
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    build(values, raw.constraint)
}

fn parse_plain(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (_, first) = lines.next().ok_or(partcount_core::Error::Empty)?;
    let values = first
        .split_whitespace()
        .map(|token| match u64::from_str(token) {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(ParseError::NotPositiveInteger {
                token: token.to_owned(),
            }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let constraint = match lines.next() {
        None => None,
        Some((line, l)) => {
            let rest = l.strip_prefix("C=").ok_or_else(|| ParseError::Syntax {
                line,
                message: format!("expected C=<integer>, found {l:?}"),
            })?;
            Some(i64::from_str(rest.trim()).map_err(|e| ParseError::Syntax {
                line,
                message: format!("bad constraint: {e}"),
            })?)
        }
    };
    if let Some((line, l)) = lines.next() {
        return Err(ParseError::Syntax {
            line,
            message: format!("unexpected content {l:?}"),
        });
    }
    build(values, constraint)
}

fn build(values: Vec<u64>, constraint: Option<i64>) -> Result<Instance, ParseError> {
    Ok(match constraint {
        Some(c) => Instance::with_constraint(values, c)?,
        None => Instance::new(values)?,
    })
}

/// Reads an instance file, inferring the format from the extension unless
/// one is given.
pub fn read_instance(path: &Path, format: Option<Format>) -> Result<Instance, ReadError> {
    let bytes = std::fs::read(path).map_err(|source| ReadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_instance(&bytes, format.unwrap_or_else(|| Format::from_path(path)))?)
}

#[derive(Debug, Error)]
pub enum ReadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Renders an instance in the given format.
pub fn write_instance(inst: &Instance, format: Format) -> String {
    match format {
        Format::Json => {
            let mut obj = serde_json::json!({ "a": inst.values() });
            if let Some(c) = inst.constraint() {
                obj["constraint"] = c.into();
            }
            obj.to_string()
        }
        Format::Plain => {
            let mut s = inst
                .values()
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            s.push('\n');
            if let Some(c) = inst.constraint() {
                s.push_str(&format!("C={c}\n"));
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn plain_examples() {
        let i = parse_instance(b"1 2 3 4", Format::Plain).unwrap();
        assert_eq!(i.values(), &[1, 2, 3, 4]);
        assert_eq!(i.constraint(), None);
        let i = parse_instance(b"  5\t6 7\nC=-1\n\n", Format::Plain).unwrap();
        assert_eq!(i.values(), &[5, 6, 7]);
        assert_eq!(i.constraint(), Some(-1));
    }

    #[test]
    fn plain_errors() {
        assert!(matches!(
            parse_instance(b"0 3", Format::Plain),
            Err(ParseError::NotPositiveInteger { .. })
        ));
        assert!(matches!(
            parse_instance(b"-1 3", Format::Plain),
            Err(ParseError::NotPositiveInteger { .. })
        ));
        assert!(matches!(
            parse_instance(b"1.5 3", Format::Plain),
            Err(ParseError::NotPositiveInteger { .. })
        ));
        assert!(matches!(
            parse_instance(b"", Format::Plain),
            Err(ParseError::Instance(partcount_core::Error::Empty))
        ));
        assert!(matches!(
            parse_instance(b"1 2\nD=3", Format::Plain),
            Err(ParseError::Syntax { line: 2, .. })
        ));
        assert!(matches!(
            parse_instance(b"1 2\nC=1\n3", Format::Plain),
            Err(ParseError::Syntax { line: 3, .. })
        ));
        assert!(matches!(
            parse_instance(b"1 2\nC=3", Format::Plain),
            Err(ParseError::Instance(partcount_core::Error::ConstraintOutOfRange { .. }))
        ));
    }

    #[test]
    fn json_examples() {
        let i = parse_instance(br#"{"a":[1,1,1,4]}"#, Format::Json).unwrap();
        assert_eq!(i.values(), &[1, 1, 1, 4]);
        let i = parse_instance(br#"{"a":[1,2,3,4],"constraint":0}"#, Format::Json).unwrap();
        assert_eq!(i.constraint(), Some(0));
    }

    #[test]
    fn json_errors() {
        for bad in [
            &br#"{"a":[1,0]}"#[..],
            br#"{"a":[1,-2]}"#,
            br#"{"a":[1,2.5]}"#,
        ] {
            assert!(matches!(
                parse_instance(bad, Format::Json),
                Err(ParseError::NotPositiveInteger { .. })
            ));
        }
        assert!(matches!(
            parse_instance(br#"{"a":[1],"b":2}"#, Format::Json),
            Err(ParseError::Json(_))
        ));
        assert!(matches!(parse_instance(br#"{"a":[1"#, Format::Json), Err(ParseError::Json(_))));
        assert!(matches!(parse_instance(br#"{}"#, Format::Json), Err(ParseError::Json(_))));
        assert!(matches!(
            parse_instance(br#"{"a":[]}"#, Format::Json),
            Err(ParseError::Instance(partcount_core::Error::Empty))
        ));
        assert!(matches!(parse_instance(&[0xff, 0xfe], Format::Json), Err(ParseError::Utf8)));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(Format::from_path(Path::new("x.JSON")), Format::Json);
        assert_eq!(Format::from_path(Path::new("x.txt")), Format::Plain);
        assert_eq!(Format::from_path(Path::new("x")), Format::Plain);
    }

    proptest! {
        #[test]
        fn write_then_parse(values in prop::collection::vec(1u64..100_000, 1..30), c in prop::option::of(-1i64..=1)) {
            let inst = match c {
                Some(c) => Instance::with_constraint(values, c).unwrap(),
                None => Instance::new(values).unwrap(),
            };
            for format in [Format::Json, Format::Plain] {
                prop_assert_eq!(&parse_instance(write_instance(&inst, format).as_bytes(), format).unwrap(), &inst);
            }
        }
    }
}
