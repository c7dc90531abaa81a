use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::itemset::ItemSet;

/// Failure to read a transaction file.
#[derive(Debug, Error)]
pub enum LoadError {
    #[error("read failed: {0}")]
    Io(#[from] io::Error),
    #[error("line {line}: `{token}` is not a nonnegative integer item label")]
    Parse { line: usize, token: String },
}

/// A breach of the structural preconditions on [`crate::LevelFamilies`].
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FamilyViolation {
    #[error("{set} in the size-{size} frequent level has the wrong size")]
    FrequentSize { set: ItemSet, size: usize },
    #[error("{set} in the size-{size} infrequent level has the wrong size")]
    InfrequentSize { set: ItemSet, size: usize },
    #[error("frequent {set}: subset {missing} is not in the frequent level below")]
    FrequentNotClosed { set: ItemSet, missing: ItemSet },
    #[error("infrequent {set}: subset {missing} is not in the frequent level below")]
    InfrequentNotClosed { set: ItemSet, missing: ItemSet },
    #[error("{set} is listed both as frequent and as infrequent")]
    NotDisjoint { set: ItemSet },
}

/// Errors surfaced by the mining engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}
