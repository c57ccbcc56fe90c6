//! Convert a corpus to the unified JSONL format and read it back.

use edx::ingest::{ingest, ingest_reader, write_unified, Format};

fn main() -> edx::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/maven_sample.jsonl");
    let (corpus, _) = ingest(path, Format::Maven)?;

    let mut buf = Vec::new();
    let docs = write_unified(&corpus, &mut buf)?;
    let text = String::from_utf8(buf).expect("unified output is UTF-8");
    let mut lines = text.lines();
    println!("header: {}", lines.next().unwrap_or_default());
    println!("first document: {:.160}...", lines.next().unwrap_or_default());
    println!("{docs} documents written");

    let (back, _) = ingest_reader(text.as_bytes(), Format::Unified, "unused")?;
    assert_eq!(back, corpus);
    println!("re-ingested corpus is identical");
    Ok(())
}
