//! OEIS b-file reading and writing.
//!
//! A b-file is ASCII text with one `index value` pair per line, separated by a
//! single space. Downloaded files may also carry `#` comment lines and blank
//! lines; the reader skips both and tolerates CRLF endings and runs of
//! whitespace. The writer always emits the canonical form.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};

use crate::counting::SequenceTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfileEntry {
    pub index: i64,
    pub value: BigInt,
}

pub fn parse_bfile(input: &str) -> Result<Vec<BfileEntry>> {
    let mut entries = Vec::new();
    for (lineno, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse {
            line: lineno + 1,
            message,
        };
        let mut fields = line.split_whitespace();
        let (Some(index), Some(value), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected \"index value\", got {line:?}")));
        };
        let index = parse_signed_decimal(index)
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| err(format!("bad index {index:?}")))?;
        let value = parse_signed_decimal(value).ok_or_else(|| err(format!("bad value {value:?}")))?;
        entries.push(BfileEntry { index, value });
    }
    Ok(entries)
}

fn parse_signed_decimal(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical b-file text: `"index value\n"` per term.
pub fn format_bfile(table: &SequenceTable) -> String {
    let mut out = String::new();
    for (index, value) in &table.terms {
        let _ = writeln!(out, "{index} {value}");
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfileMismatch {
    pub index: i64,
    pub expected: BigUint,
    pub found: BigInt,
}

/// Result of checking a user-supplied b-file against generated terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfileDiff {
    /// Entries whose index falls inside the generated range.
    pub compared: usize,
    /// Entries outside the generated range, left unchecked.
    pub skipped: usize,
    pub mismatches: usize,
    pub first_mismatch: Option<BfileMismatch>,
}

impl BfileDiff {
    pub fn matches(&self) -> bool {
        self.mismatches == 0
    }
}

pub fn diff_bfile(generated: &SequenceTable, entries: &[BfileEntry]) -> BfileDiff {
    let mut diff = BfileDiff {
        compared: 0,
        skipped: 0,
        mismatches: 0,
        first_mismatch: None,
    };
    for entry in entries {
        let term = usize::try_from(entry.index)
            .ok()
            .and_then(|i| i.checked_sub(1))
            .and_then(|i| generated.terms.get(i));
        let Some((_, expected)) = term else {
            diff.skipped += 1;
            continue;
        };
        diff.compared += 1;
        if BigInt::from(expected.clone()) != entry.value {
            diff.mismatches += 1;
            diff.first_mismatch.get_or_insert_with(|| BfileMismatch {
                index: entry.index,
                expected: expected.clone(),
                found: entry.value.clone(),
            });
        }
    }
    diff
}
