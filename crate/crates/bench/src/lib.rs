//! Deterministic fixtures shared by the benchmarks.

use levelwise::{assign_ids, load_transactions, ItemId, PatternTrie, TransactionDb};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A trie holding `size` distinct random `level`-sets over `0..universe`.
pub fn random_trie(seed: u64, level: usize, universe: ItemId, size: usize) -> PatternTrie {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut trie = PatternTrie::new();
    let mut inserted = 0;
    while inserted < size {
        let mut items: Vec<ItemId> = (0..level).map(|_| rng.random_range(0..universe)).collect();
        items.sort_unstable();
        items.dedup();
        if items.len() == level && !trie.contains(&items) {
            trie.insert(&items);
            inserted += 1;
        }
    }
    trie
}

/// `rows` transactions over `items` labels, each planted with one of a few
/// shared cores so that multi-item patterns become frequent.
pub fn synthetic_db(seed: u64, rows: usize, items: u64) -> TransactionDb {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cores: Vec<Vec<u64>> = (0..8)
        .map(|_| (0..6).map(|_| rng.random_range(0..items)).collect())
        .collect();
    let mut text = String::new();
    for _ in 0..rows {
        let mut row: Vec<u64> = cores[rng.random_range(0..cores.len())]
            .iter()
            .copied()
            .filter(|_| rng.random_bool(0.8))
            .collect();
        row.extend((0..5).map(|_| rng.random_range(0..items)));
        let line: Vec<String> = row.iter().map(u64::to_string).collect();
        text.push_str(&line.join(" "));
        text.push('\n');
    }
    assign_ids(load_transactions(text.as_bytes()).expect("generated text parses"), false)
}
