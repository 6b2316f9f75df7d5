//! Matrix and chain-complex file formats.
//!
//! A matrix file reads
//!
//! ```text
//! ring int
//! 2 2
//! 2 0
//! 0 3
//! ```
//!
//! with `ring <int|qpoly|fppoly:<p>>` on the first line, the dimensions on
//! the second and one line of whitespace-separated entries per row. Lines
//! starting with `#` and blank lines are ignored. Polynomial entries are
//! coefficient lists `[c0,c1,...]` without spaces, constant term first;
//! a bare coefficient stands for a constant. A matrix with no columns
//! has no row lines.

use std::fmt;
use std::str::FromStr;

use edr_core::{BezoutDomain, FpPoly, Integers, Matrix, QPoly, RingError};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    Int,
    QPoly,
    FpPoly(u64),
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingTag::Int => f.write_str("int"),
            RingTag::QPoly => f.write_str("qpoly"),
            RingTag::FpPoly(p) => write!(f, "fppoly:{p}"),
        }
    }
}

impl FromStr for RingTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "int" => Ok(RingTag::Int),
            "qpoly" => Ok(RingTag::QPoly),
            _ => {
                let p = s.strip_prefix("fppoly:").ok_or_else(|| {
                    format!("unknown ring tag {s:?} (expected int, qpoly or fppoly:<p>)")
                })?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| format!("invalid modulus in ring tag {s:?}"))?;
                FpPoly::new(p).map_err(|e| e.to_string())?;
                Ok(RingTag::FpPoly(p))
            }
        }
    }
}

/// A ring instance selected by a file header.
#[derive(Debug, Clone)]
pub enum AnyRing {
    Int(Integers),
    QPoly(QPoly),
    FpPoly(FpPoly),
}

impl RingTag {
    pub fn instantiate(&self) -> Result<AnyRing, RingError> {
        Ok(match self {
            RingTag::Int => AnyRing::Int(Integers),
            RingTag::QPoly => AnyRing::QPoly(QPoly::new()),
            RingTag::FpPoly(p) => AnyRing::FpPoly(FpPoly::new(*p)?),
        })
    }

    /// Name of the ring in module descriptions: `Z`, `Q[x]`, `F5[x]`.
    pub fn symbol(&self) -> String {
        match self {
            RingTag::Int => "Z".to_string(),
            RingTag::QPoly => "Q[x]".to_string(),
            RingTag::FpPoly(p) => format!("F{p}[x]"),
        }
    }
}

/// Runs `$body` with `$r` bound to the concrete ring behind an [`AnyRing`].
#[macro_export]
macro_rules! with_ring {
    ($ring:expr, |$r:ident| $body:expr) => {
        match $ring {
            $crate::input::AnyRing::Int($r) => $body,
            $crate::input::AnyRing::QPoly($r) => $body,
            $crate::input::AnyRing::FpPoly($r) => $body,
        }
    };
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token {
    text: String,
    line: usize,
    col: usize,
}

/// A matrix file with its entries not yet interpreted in the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawMatrix {
    pub ring: RingTag,
    pub rows: usize,
    pub cols: usize,
    tokens: Vec<Token>,
}

fn syntax(line: usize, col: usize, msg: impl fmt::Display) -> CliError {
    CliError::Input(format!("line {line}, column {col}: {msg}"))
}

/// Significant lines with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim_start();
            !t.is_empty() && !t.starts_with('#')
        })
}

/// Whitespace-separated words with 1-based character columns.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((pos, byte)),
            (true, Some((p, b))) => {
                out.push((p + 1, &line[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((p, b)) = start {
        out.push((p + 1, &line[b..]));
    }
    out
}

pub fn parse_raw(text: &str) -> Result<RawMatrix, CliError> {
    let mut it = lines(text);
    let (ln, header) = it
        .next()
        .ok_or_else(|| CliError::Input("empty matrix file".into()))?;
    let ring = match words(header).as_slice() {
        [(_, "ring"), (col, tag)] => tag.parse::<RingTag>().map_err(|e| syntax(ln, *col, e))?,
        _ => return Err(syntax(ln, 1, "expected `ring <int|qpoly|fppoly:<p>>`")),
    };
    let (ln, dims) = it
        .next()
        .ok_or_else(|| CliError::Input("missing dimension line `<m> <n>`".into()))?;
    let (rows, cols) = match words(dims).as_slice() {
        [(c1, m), (c2, n)] => (
            m.parse::<usize>()
                .map_err(|_| syntax(ln, *c1, format!("invalid row count {m:?}")))?,
            n.parse::<usize>()
                .map_err(|_| syntax(ln, *c2, format!("invalid column count {n:?}")))?,
        ),
        _ => return Err(syntax(ln, 1, "expected dimension line `<m> <n>`")),
    };
    let mut tokens = Vec::with_capacity(rows * cols);
    let listed = if cols == 0 { 0 } else { rows };
    for i in 0..listed {
        let (ln, row) = it
            .next()
            .ok_or_else(|| CliError::Input(format!("expected {rows} rows, found {i}")))?;
        let ws = words(row);
        if ws.len() != cols {
            let col = ws.get(cols).map_or(row.chars().count() + 1, |w| w.0);
            return Err(syntax(
                ln,
                col,
                format!("expected {cols} entries, found {}", ws.len()),
            ));
        }
        tokens.extend(ws.into_iter().map(|(col, t)| Token {
            text: t.to_string(),
            line: ln,
            col,
        }));
    }
    if let Some((ln, _)) = it.next() {
        return Err(syntax(
            ln,
            1,
            format!("unexpected content after {listed} rows"),
        ));
    }
    Ok(RawMatrix {
        ring,
        rows,
        cols,
        tokens,
    })
}

impl RawMatrix {
    pub fn build<R: BezoutDomain>(&self, r: &R) -> Result<Matrix<R::Elem>, CliError> {
        let entries = self
            .tokens
            .iter()
            .map(|t| r.parse(&t.text).map_err(|e| syntax(t.line, t.col, e)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_vec(self.rows, self.cols, entries).expect("token count checked"))
    }
}

/// Matrix file text; reparses to an equal matrix.
pub fn print_matrix<R: BezoutDomain>(r: &R, m: &Matrix<R::Elem>) -> String {
    let mut out = format!("ring {}\n{} {}\n", r.tag(), m.rows(), m.cols());
    if m.cols() == 0 {
        return out;
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|e| r.format(e)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// JSON form of a matrix: `{"m": .., "n": .., "entries": [row-major]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<Value>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub ring: String,
    pub boundaries: Vec<MatrixJson>,
}

fn value_token(v: &Value) -> Result<String, CliError> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(CliError::Input(format!(
            "matrix entry {other} is neither a number nor a string"
        ))),
    }
}

impl MatrixJson {
    pub fn build<R: BezoutDomain>(&self, r: &R) -> Result<Matrix<R::Elem>, CliError> {
        if self.entries.len() != self.m * self.n {
            return Err(CliError::Input(format!(
                "{}x{} matrix needs {} entries, found {}",
                self.m,
                self.n,
                self.m * self.n,
                self.entries.len()
            )));
        }
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let tok = value_token(v)?;
                r.parse(&tok).map_err(|e| {
                    CliError::Input(format!(
                        "entry ({}, {}): {e}",
                        k / self.n.max(1),
                        k % self.n.max(1)
                    ))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_vec(self.m, self.n, entries).expect("entry count checked"))
    }

    pub fn from_matrix<R: BezoutDomain>(r: &R, m: &Matrix<R::Elem>) -> Self {
        MatrixJson {
            m: m.rows(),
            n: m.cols(),
            entries: m
                .entries()
                .iter()
                .map(|e| Value::String(r.format(e)))
                .collect(),
        }
    }
}

impl ComplexFile {
    pub fn parse(text: &str) -> Result<(RingTag, ComplexFile), CliError> {
        let file: ComplexFile = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("complex file: {e}")))?;
        let tag = file.ring.parse::<RingTag>().map_err(CliError::Input)?;
        Ok((tag, file))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use edr_core::Ring;

    #[test]
    fn parses_the_grammar() {
        let raw = parse_raw("ring int\n2 2\n2 0\n0 3\n").unwrap();
        assert_eq!((raw.ring, raw.rows, raw.cols), (RingTag::Int, 2, 2));
        let m = raw.build(&Integers).unwrap();
        assert_eq!(m, Matrix::from_i64(&Integers, 2, 2, &[2, 0, 0, 3]));
        let raw = parse_raw("ring qpoly\n1 1\n[0,1]\n").unwrap();
        let q = QPoly::new();
        assert_eq!(raw.build(&q).unwrap()[(0, 0)], q.x());
    }

    #[test]
    fn comments_and_blank_lines() {
        let raw = parse_raw("# a comment\n\nring fppoly:5\n  # another\n1 2\n\n[1,7] 3\n").unwrap();
        assert_eq!(raw.ring, RingTag::FpPoly(5));
        let r = FpPoly::new(5).unwrap();
        let m = raw.build(&r).unwrap();
        assert_eq!(r.format(&m[(0, 0)]), "[1,2]");
    }

    #[test]
    fn reports_positions() {
        let err = parse_raw("ring int\n2 2\n1 2 3\n").unwrap_err().to_string();
        assert!(
            err.contains("line 3, column 5") && err.contains("expected 2 entries"),
            "{err}"
        );
        let err = parse_raw("ring int\n1 2\n1 x2\n")
            .unwrap()
            .build(&Integers)
            .unwrap_err()
            .to_string();
        assert!(err.contains("line 3, column 3"), "{err}");
        let err = parse_raw("ring fppoly:6\n1 1\n1\n")
            .unwrap_err()
            .to_string();
        assert!(err.contains("not prime"), "{err}");
        let err = parse_raw("ring reals\n1 1\n1\n").unwrap_err().to_string();
        assert!(err.contains("unknown ring tag"), "{err}");
        assert!(parse_raw("ring int\n2 1\n1\n").is_err());
        assert!(parse_raw("ring int\n1 1\n1\n2\n").is_err());
        assert!(parse_raw("").is_err());
        assert!(parse_raw("ring int\n-1 2\n").is_err());
    }

    #[test]
    fn print_round_trips() {
        let text = "ring qpoly\n2 2\n[1/2,0,3] [0]\n[-1] [0,1]\n";
        let q = QPoly::new();
        let m = parse_raw(text).unwrap().build(&q).unwrap();
        assert_eq!(print_matrix(&q, &m), text);
        let empty = "ring int\n3 0\n";
        let m = parse_raw(empty).unwrap().build(&Integers).unwrap();
        assert_eq!(m.shape(), (3, 0));
        assert_eq!(print_matrix(&Integers, &m), empty);
        let empty = "ring int\n0 3\n";
        let m = parse_raw(empty).unwrap().build(&Integers).unwrap();
        assert_eq!(print_matrix(&Integers, &m), empty);
    }

    #[test]
    fn complex_file_accepts_numbers_and_strings() {
        let (tag, file) = ComplexFile::parse(
            r#"{"ring": "int", "boundaries": [{"m": 1, "n": 2, "entries": [-1, "1"]}]}"#,
        )
        .unwrap();
        assert_eq!(tag, RingTag::Int);
        let m = file.boundaries[0].build(&Integers).unwrap();
        assert_eq!(m, Matrix::from_i64(&Integers, 1, 2, &[-1, 1]));
        assert!(ComplexFile::parse(r#"{"ring": "int"}"#).is_err());
        let (_, bad) = ComplexFile::parse(
            r#"{"ring": "int", "boundaries": [{"m": 1, "n": 2, "entries": [1]}]}"#,
        )
        .unwrap();
        assert!(bad.boundaries[0].build(&Integers).is_err());
    }
}
