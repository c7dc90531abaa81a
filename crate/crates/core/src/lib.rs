//! Levelwise frequent-itemset mining with exact upper bounds on the number of
//! candidate patterns every future pass can still generate.
//!
//! The bound family, from coarsest to tightest:
//!
//! * [`combinatorics`]: `KK`, `mu`, `KK_total`, computed from `|L_k|` alone.
//! * [`trie`]: `KK*`, `mu*`, `KK*_total`, which also use the prefix
//!   structure of `L_k`.
//! * [`generalized`]: `gKK`, `gKK*` and their `mu`/total companions, which
//!   additionally subtract known frequent and known infrequent larger sets.
//!
//! [`oracle`] holds the brute-force ground truth the bounds are tested
//! against, and [`engine`] the Apriori-style miner that reports all bounds
//! after every pass and uses them to merge the final passes into one scan.

pub mod combinatorics;
pub mod engine;
pub mod error;
pub mod generalized;
pub mod itemset;
pub mod oracle;
pub mod trie;

pub use combinatorics::{binomial, canonical_rep, kk_bound, kk_total, mu, CanonicalRep, Count, Term};
pub use engine::{
    assign_ids, load_transactions, mine, write_stats, BoundKind, BoundReport, MineOutcome,
    MinerConfig, Pattern, TransactionDb,
};
pub use error::{Error, FamilyViolation, LoadError};
pub use generalized::{
    brute_force_gen_candidates, g_mu, g_mu_star, gkk_bound, gkk_profile, gkk_star,
    gkk_star_profile, gkk_star_total, gkk_total, recursive_gen_candidates, LevelFamilies,
};
pub use itemset::{ItemId, ItemSet};
pub use oracle::{brute_force_candidates, colex_family, maxsize};
pub use trie::{BoundSet, NodeId, NodeState, PatternTrie, TrieView};
