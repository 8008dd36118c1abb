//! Regenerates `fixtures/records.jsonl`.
//!
//! cargo run -p litla --example gen_fixture -- crates/litla/fixtures/records.jsonl

use std::fs::File;
use std::io::BufWriter;

use litla::records::write_records;
use litla::synth::{synthetic_corpus, SynthConfig};

fn main() -> anyhow::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "records.jsonl".into());
    let records = synthetic_corpus(&SynthConfig::default());
    write_records(&records, BufWriter::new(File::create(&path)?))?;
    eprintln!("wrote {} records to {path}", records.len());
    Ok(())
}
