//! Plain-text program files.
//!
//! ```text
//! # the (1-3-1) diamond
//! strands 6
//! diamond 1
//! B 3
//! W 2 4
//! B 3
//! ```
//!
//! `strands` must come before any row. Each row line is a colour letter
//! followed by the strand positions of its sites, in any order; a bare letter is an empty
//! row. Everything after `#` is ignored.

use std::fmt::Write as _;
use std::path::Path;

use kolam_core::{Color, MorseProgram, Row, Violation};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `strands` line")]
    MissingStrands,
    #[error("invalid program: {}", join(.0))]
    Invalid(Vec<Violation>),
    #[error("diamond {n} does not match the rows of this file")]
    DiamondMismatch { n: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn join(violations: &[Violation]) -> String {
    violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn syntax(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, message: message.into() }
}

fn number(line: usize, word: &str) -> Result<usize, ParseError> {
    word.parse().map_err(|_| syntax(line, format!("expected a number, found `{word}`")))
}

pub fn parse_program(text: &str) -> Result<MorseProgram, ParseError> {
    let mut strands = None;
    let mut diamond = None;
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(head) = words.next() else { continue };
        match head {
            "strands" | "diamond" => {
                let value = number(line, words.next().ok_or_else(|| syntax(line, format!("`{head}` needs a value")))?)?;
                if let Some(extra) = words.next() {
                    return Err(syntax(line, format!("unexpected `{extra}`")));
                }
                let slot = if head == "strands" { &mut strands } else { &mut diamond };
                if slot.replace(value).is_some() {
                    return Err(syntax(line, format!("duplicate `{head}` line")));
                }
                if head == "strands" && !rows.is_empty() {
                    return Err(syntax(line, "`strands` must precede the rows"));
                }
            }
            "B" | "b" | "W" | "w" => {
                if strands.is_none() {
                    return Err(syntax(line, "row before `strands`"));
                }
                let color = if head.eq_ignore_ascii_case("b") { Color::Black } else { Color::White };
                let positions = words.map(|w| number(line, w)).collect::<Result<Vec<_>, _>>()?;
                rows.push(Row::new(color, positions));
            }
            other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
        }
    }
    let strands = strands.ok_or(ParseError::MissingStrands)?;
    let program = MorseProgram::new(strands, rows);
    program.validate().map_err(ParseError::Invalid)?;
    if let Some(n) = diamond {
        if n == 0 || MorseProgram::diamond(n).rows() != program.rows() || 4 * n + 2 != strands {
            return Err(ParseError::DiamondMismatch { n });
        }
    }
    Ok(program.with_diamond(diamond))
}

pub fn read_program(path: &Path) -> Result<MorseProgram, ParseError> {
    parse_program(&std::fs::read_to_string(path)?)
}

/// Serializes a program; [`parse_program`] reads the result back unchanged.
pub fn write_program(program: &MorseProgram) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "strands {}", program.strands());
    if let Some(n) = program.diamond_parameter() {
        let _ = writeln!(out, "diamond {n}");
    }
    for row in program.rows() {
        out.push(row.color().letter());
        for p in row.positions() {
            let _ = write!(out, " {p}");
        }
        out.push('\n');
    }
    out
}
