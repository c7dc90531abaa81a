use std::collections::BTreeMap;
use std::io::BufRead;

use crate::error::LoadError;
use crate::itemset::ItemId;

/// Raw item label as it appears in the input.
pub type Label = u64;

/// Transactions over dense ids plus the id to label dictionary.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransactionDb {
    /// Each strictly increasing under the current ids.
    transactions: Vec<Vec<ItemId>>,
    /// `labels[id]` is the raw label of `id`.
    labels: Vec<Label>,
    /// `counts[id]`: number of transactions containing `id`.
    counts: Vec<u64>,
}

impl TransactionDb {
    pub fn transactions(&self) -> &[Vec<ItemId>] {
        &self.transactions
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn item_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, id: ItemId) -> Label {
        self.labels[id as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn count(&self, id: ItemId) -> u64 {
        self.counts[id as usize]
    }

    /// Per-label transaction counts.
    pub fn label_counts(&self) -> BTreeMap<Label, u64> {
        self.labels.iter().copied().zip(self.counts.iter().copied()).collect()
    }

    /// Total number of item occurrences.
    pub fn size(&self) -> usize {
        self.transactions.iter().map(Vec::len).sum()
    }
}

/// Reads one transaction per line of whitespace-separated labels. Repeated
/// labels within a line collapse; blank lines are skipped. Ids follow
/// ascending label order.
pub fn load_transactions<R: BufRead>(reader: R) -> Result<TransactionDb, LoadError> {
    let mut rows: Vec<Vec<Label>> = Vec::new();
    let mut counts: BTreeMap<Label, u64> = BTreeMap::new();
    for (index, line) in reader.lines().enumerate() {
        let line = line?;
        let mut row = Vec::new();
        for token in line.split_whitespace() {
            let label: Label = token.parse().map_err(|_| LoadError::Parse {
                line: index + 1,
                token: token.to_string(),
            })?;
            row.push(label);
        }
        if row.is_empty() {
            continue;
        }
        row.sort_unstable();
        row.dedup();
        for &label in &row {
            *counts.entry(label).or_default() += 1;
        }
        rows.push(row);
    }
    let labels: Vec<Label> = counts.keys().copied().collect();
    let transactions = rows
        .into_iter()
        .map(|row| {
            row.iter()
                .map(|l| labels.binary_search(l).expect("label counted") as ItemId)
                .collect()
        })
        .collect();
    Ok(TransactionDb {
        transactions,
        counts: counts.into_values().collect(),
        labels,
    })
}

/// Reassigns dense ids. With `reorder`, less frequent items get smaller ids,
/// ties by ascending label; otherwise ids follow ascending label order.
pub fn assign_ids(db: TransactionDb, reorder: bool) -> TransactionDb {
    let mut order: Vec<ItemId> = (0..db.labels.len() as ItemId).collect();
    if reorder {
        order.sort_by_key(|&id| (db.counts[id as usize], db.labels[id as usize]));
    } else {
        order.sort_by_key(|&id| db.labels[id as usize]);
    }
    // remap[old] = new
    let mut remap = vec![0 as ItemId; order.len()];
    for (new, &old) in order.iter().enumerate() {
        remap[old as usize] = new as ItemId;
    }
    let transactions = db
        .transactions
        .into_iter()
        .map(|t| {
            let mut t: Vec<ItemId> = t.into_iter().map(|id| remap[id as usize]).collect();
            t.sort_unstable();
            t
        })
        .collect();
    TransactionDb {
        transactions,
        labels: order.iter().map(|&old| db.labels[old as usize]).collect(),
        counts: order.iter().map(|&old| db.counts[old as usize]).collect(),
    }
}
