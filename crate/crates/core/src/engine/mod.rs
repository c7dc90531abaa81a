//! The levelwise miner: ingestion, per-pass support counting on the pattern
//! trie, per-level bound reports and bound-guarded merging of the final
//! passes.

mod db;
mod miner;
mod stats;

pub use db::{assign_ids, load_transactions, Label, TransactionDb};
pub use miner::{mine, BoundKind, MineOutcome, MinerConfig, Pattern};
pub use stats::{write_stats, write_stats_to, BoundReport, STATS_HEADER};
