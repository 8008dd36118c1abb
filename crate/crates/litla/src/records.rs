//! Line-delimited JSON record input and canonical output.

use std::fmt;
use std::io::{self, BufRead, Write};

use litla_core::PaperRecord;

/// A line that could not be turned into a record.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParsedRecords {
    pub records: Vec<PaperRecord>,
    pub errors: Vec<ParseError>,
}

/// Reads one record per line. Blank lines are skipped; malformed lines and
/// records that break a value constraint become [`ParseError`]s. The first
/// record carrying an embedding fixes the corpus embedding dimension.
///
/// Only a failing reader aborts.
pub fn parse_records(reader: impl BufRead) -> io::Result<ParsedRecords> {
    let mut out = ParsedRecords::default();
    let mut dim = None;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let error = |message: String| ParseError { line: i + 1, message };
        match serde_json::from_str::<PaperRecord>(&line) {
            Ok(record) => match record.validate(dim) {
                Ok(()) => {
                    if dim.is_none() {
                        dim = record.embedding.as_ref().map(Vec::len);
                    }
                    out.records.push(record);
                }
                Err(v) => out.errors.push(error(v.to_string())),
            },
            Err(e) => out.errors.push(error(e.to_string())),
        }
    }
    Ok(out)
}

/// Canonical form: one compact JSON object per line, fields in schema
/// order.
pub fn write_records(records: &[PaperRecord], mut writer: impl Write) -> io::Result<()> {
    for r in records {
        serde_json::to_writer(&mut writer, r)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}
