//! Versioned single-file snapshot of a corpus and its index.
//!
//! The file is one JSON object `{"format": "edx-snapshot", "schema_version",
//! "corpus", "index"}`. All maps are ordered, so saving the same snapshot
//! twice yields identical bytes.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{build_index, TriggerIndex};
use crate::error::{Error, Result};
use crate::model::Corpus;

const SNAPSHOT_FORMAT: &str = "edx-snapshot";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub corpus: Corpus,
    pub index: TriggerIndex,
}

#[derive(Serialize)]
struct FileRef<'a> {
    format: &'a str,
    schema_version: u32,
    corpus: &'a Corpus,
    index: &'a TriggerIndex,
}

#[derive(Deserialize)]
struct Preamble {
    format: String,
    schema_version: u32,
}

#[derive(Deserialize)]
struct FileOwned {
    corpus: Corpus,
    index: TriggerIndex,
}

impl Snapshot {
    pub fn build(corpus: Corpus) -> Result<Snapshot> {
        let index = build_index(&corpus)?;
        Ok(Snapshot { corpus, index })
    }

    pub fn name(&self) -> &str {
        &self.corpus.name
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        Ok(serde_json::to_vec(&FileRef {
            format: SNAPSHOT_FORMAT,
            schema_version: SNAPSHOT_VERSION,
            corpus: &self.corpus,
            index: &self.index,
        })?)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Snapshot> {
        let pre: Preamble = serde_json::from_slice(bytes)?;
        if pre.format != SNAPSHOT_FORMAT {
            return Err(Error::InvalidArgument(format!("not a snapshot file (format {:?})", pre.format)));
        }
        if pre.schema_version != SNAPSHOT_VERSION {
            return Err(Error::SchemaVersion {
                what: "snapshot",
                found: pre.schema_version,
                expected: SNAPSHOT_VERSION,
            });
        }
        let file: FileOwned = serde_json::from_slice(bytes)?;
        if file.index.corpus_ref != file.corpus.name {
            return Err(Error::InvalidArgument(format!(
                "snapshot index belongs to {:?}, corpus is {:?}",
                file.index.corpus_ref, file.corpus.name
            )));
        }
        Ok(Snapshot {
            corpus: file.corpus,
            index: file.index,
        })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_bytes()?).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Snapshot> {
        let path = path.as_ref();
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        Self::from_bytes(&bytes)
    }
}
