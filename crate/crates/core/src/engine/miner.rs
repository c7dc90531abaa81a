use std::cmp::Ordering;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_traits::Zero;

use super::db::{Label, TransactionDb};
use super::stats::BoundReport;
use crate::combinatorics::{canonical_rep_u64, Count};
use crate::error::Error;
use crate::generalized::{gkk_profile, gkk_star_profile, LevelFamilies};
use crate::itemset::{ItemId, ItemSet};
use crate::trie::{NodeId, NodeState, PatternTrie};

/// Which bound family drives termination and the combine decision. Cheaper
/// kinds leave the columns of the tighter ones unevaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum BoundKind {
    Kk,
    KkStar,
    Gkk,
    #[default]
    GkkStar,
}

impl BoundKind {
    fn uses_structure(self) -> bool {
        self != BoundKind::Kk
    }
}

impl FromStr for BoundKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "kk" => Ok(BoundKind::Kk),
            "kk_star" => Ok(BoundKind::KkStar),
            "gkk" => Ok(BoundKind::Gkk),
            "gkk_star" => Ok(BoundKind::GkkStar),
            other => Err(format!("unknown bound kind `{other}` (expected kk, kk_star, gkk or gkk_star)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinerConfig {
    /// Absolute support threshold, in transactions.
    pub minsup: u64,
    /// Require support strictly above `minsup` instead of at least `minsup`.
    pub strict: bool,
    pub reorder: bool,
    pub bound_kind: BoundKind,
    /// Merge all remaining passes into one scan once the selected total bound
    /// drops to this many candidates.
    pub combine_limit: Option<Count>,
    /// Most candidates a merged scan may materialize; past it the run
    /// continues level by level.
    pub memory_budget: Option<usize>,
}

impl MinerConfig {
    pub fn new(minsup: u64) -> Self {
        MinerConfig {
            minsup,
            strict: false,
            reorder: false,
            bound_kind: BoundKind::default(),
            combine_limit: None,
            memory_budget: None,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.minsup == 0 {
            return Err(Error::Config("minsup must be at least 1".into()));
        }
        Ok(())
    }

    fn is_frequent(&self, support: u64) -> bool {
        if self.strict {
            support > self.minsup
        } else {
            support >= self.minsup
        }
    }
}

/// A frequent pattern under raw labels, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub labels: Vec<Label>,
    pub support: u64,
}

impl Pattern {
    /// Size first, then colex on the labels.
    pub fn output_cmp(&self, other: &Pattern) -> Ordering {
        self.labels.len().cmp(&other.labels.len()).then_with(|| {
            for (a, b) in self.labels.iter().rev().zip(other.labels.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    ord => return ord,
                }
            }
            Ordering::Equal
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MineOutcome {
    /// Sorted by [`Pattern::output_cmp`].
    pub patterns: Vec<Pattern>,
    pub reports: Vec<BoundReport>,
    /// Database scans performed.
    pub passes: usize,
    /// Level after which all remaining passes were merged into one.
    pub combined_after: Option<usize>,
    /// A merge was attempted but exceeded the memory budget.
    pub fell_back: bool,
}

impl MineOutcome {
    /// One `item ... item (support)` line per pattern.
    pub fn write_patterns<W: Write>(&self, mut out: W) -> io::Result<()> {
        for p in &self.patterns {
            let mut line = String::new();
            for (i, l) in p.labels.iter().enumerate() {
                if i > 0 {
                    line.push(' ');
                }
                line.push_str(&l.to_string());
            }
            writeln!(out, "{line} ({})", p.support)?;
        }
        out.flush()
    }
}

struct Evaluation {
    report: BoundReport,
    next: Count,
    total: Count,
}

/// Bounds for the size-`level` frequent patterns in `trie`, with `infrequent`
/// the size-`level` sets counted infrequent.
fn evaluate(trie: &PatternTrie, level: usize, infrequent: &[ItemSet], kind: BoundKind) -> Evaluation {
    let start = Instant::now();
    let mut report = BoundReport {
        level,
        ..Default::default()
    };
    let (next, total);
    if kind.uses_structure() {
        let b = trie.view().bounds(level);
        report.frequent = b.family_size;
        report.kk_next = b.kk_at(1);
        report.mu = b.mu;
        report.kk_total = b.kk_total.clone();
        report.kk_star_next = Some(b.kk_star_at(1));
        report.mu_star = Some(b.mu_star);
        report.kk_star_total = Some(b.kk_star_total.clone());
        match kind {
            BoundKind::KkStar => {
                next = b.kk_star_at(1);
                total = b.kk_star_total;
            }
            BoundKind::Gkk => {
                let g = gkk_profile(&[b.family_size], &[infrequent.len() as u64], level);
                next = g.first().cloned().unwrap_or_default();
                total = g.iter().sum();
            }
            _ => {
                let families =
                    LevelFamilies::new(level, vec![trie.patterns_at(level)], vec![infrequent.to_vec()]);
                let g = gkk_star_profile(&families);
                next = g.first().cloned().unwrap_or_default();
                total = g.iter().sum();
                report.gkk_star_next = Some(next.clone());
                report.gkk_star_total = Some(total.clone());
            }
        }
    } else {
        let n = trie.len_at(level) as u64;
        let rep = canonical_rep_u64(n, level);
        report.frequent = n;
        report.kk_next = rep.kk(1);
        report.mu = rep.mu();
        report.kk_total = rep.kk_total();
        next = report.kk_next.clone();
        total = report.kk_total.clone();
    }
    report.bound_time = start.elapsed();
    Evaluation { report, next, total }
}

struct Run<'a> {
    config: &'a MinerConfig,
    trie: PatternTrie,
    transactions: Vec<Vec<ItemId>>,
    passes: usize,
}

impl Run<'_> {
    fn scan(&mut self) -> Duration {
        let start = Instant::now();
        self.trie.count_candidates(self.transactions.iter().map(Vec::as_slice));
        self.passes += 1;
        start.elapsed()
    }

    /// Marks counted candidates at `depth` frequent; removes the rest and
    /// returns them.
    fn settle_level(&mut self, depth: usize) -> Vec<ItemSet> {
        let mut infrequent = Vec::new();
        for node in self.trie.nodes_at_depth(depth) {
            if self.trie.state(node) != NodeState::Candidate {
                continue;
            }
            if self.config.is_frequent(self.trie.support(node)) {
                self.trie.set_state(node, NodeState::Frequent);
            } else {
                infrequent.push(self.trie.path(node));
                self.trie.remove(node);
            }
        }
        infrequent.sort();
        infrequent
    }

    fn clear_candidates(&mut self) {
        for node in self.trie.nodes_in_state(NodeState::Candidate) {
            if self.trie.find(self.trie.path(node).items()).is_some() {
                self.trie.remove(node);
            }
        }
    }

    /// Generates every remaining level from `level` up without counting.
    /// `None` when the memory budget is exceeded; the trie is then restored.
    fn generate_all(&mut self, level: usize) -> Option<usize> {
        let mut total = 0usize;
        let mut j = level;
        loop {
            let added = if j == level {
                self.trie.extend_candidates(j, |s| s == NodeState::Frequent)
            } else {
                self.trie
                    .extend_candidates(j, |s| matches!(s, NodeState::Frequent | NodeState::Candidate))
            };
            total += added;
            if self.config.memory_budget.is_some_and(|b| total > b) {
                self.clear_candidates();
                return None;
            }
            if added == 0 {
                return Some(j);
            }
            j += 1;
        }
    }

    /// Keeps a merged candidate only if it is frequent and all of its
    /// immediate subsets were kept, level by level from the smallest.
    fn settle_top_down(&mut self, from_depth: usize, to_depth: usize) -> Vec<Vec<ItemSet>> {
        let mut rejected = Vec::new();
        let mut doomed: Vec<NodeId> = Vec::new();
        for depth in from_depth..=to_depth {
            let mut level_rejected = Vec::new();
            for node in self.trie.nodes_at_depth(depth) {
                if self.trie.state(node) != NodeState::Candidate {
                    continue;
                }
                let path = self.trie.path(node);
                let keep = self.config.is_frequent(self.trie.support(node))
                    && (0..path.len()).all(|i| self.trie.contains(path.without_index(i).items()));
                if keep {
                    self.trie.set_state(node, NodeState::Frequent);
                } else {
                    level_rejected.push(path);
                    doomed.push(node);
                }
            }
            level_rejected.sort();
            rejected.push(level_rejected);
        }
        // deepest first, so no node is removed twice through an ancestor
        doomed.sort_by_key(|&n| std::cmp::Reverse(self.trie.depth(n)));
        for node in doomed {
            self.trie.remove(node);
        }
        rejected
    }
}

/// Levelwise mining with a bound evaluation after every pass.
pub fn mine(db: &TransactionDb, config: &MinerConfig) -> Result<MineOutcome, Error> {
    config.validate()?;
    let mut run = Run {
        config,
        trie: PatternTrie::new(),
        transactions: Vec::new(),
        passes: 0,
    };
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut combined_after = None;
    let mut fell_back = false;

    let start = Instant::now();
    let mut counts = vec![0u64; db.item_count()];
    for t in db.transactions() {
        for &id in t {
            counts[id as usize] += 1;
        }
    }
    run.passes += 1;
    let mut infrequent = Vec::new();
    for (id, &support) in counts.iter().enumerate() {
        if config.is_frequent(support) {
            run.trie.insert_with(&[id as ItemId], NodeState::Frequent, support);
        } else {
            infrequent.push(ItemSet::from_sorted(vec![id as ItemId]));
        }
    }
    run.transactions = db
        .transactions()
        .iter()
        .map(|t| t.iter().copied().filter(|&id| config.is_frequent(counts[id as usize])).collect::<Vec<_>>())
        .filter(|t| t.len() >= 2)
        .collect();
    let mut pass_time = start.elapsed();

    let mut level = 1;
    loop {
        let eval = evaluate(&run.trie, level, &infrequent, config.bound_kind);
        let mut report = eval.report;
        report.pass_time = pass_time;
        if eval.next.is_zero() {
            reports.push(report);
            break;
        }
        let merge = !fell_back && config.combine_limit.as_ref().is_some_and(|limit| eval.total <= *limit);
        if merge {
            match run.generate_all(level) {
                Some(last) => {
                    report.actual_next = run.trie.len_at_state(level + 1, NodeState::Candidate) as u64;
                    reports.push(report);
                    if last == level {
                        break;
                    }
                    combined_after = Some(level);
                    let merged_time = run.scan();
                    let rejected = run.settle_top_down(level + 1, last);
                    for (offset, rejected_here) in rejected.iter().enumerate() {
                        let j = level + 1 + offset;
                        if run.trie.len_at(j) == 0 {
                            break;
                        }
                        let eval = evaluate(&run.trie, j, rejected_here, config.bound_kind);
                        let mut r = eval.report;
                        r.actual_next = run.trie.generate_candidates(j).len() as u64;
                        if offset == 0 {
                            r.pass_time = merged_time;
                        }
                        reports.push(r);
                    }
                    break;
                }
                None => fell_back = true,
            }
        }
        let generated = run.trie.extend_candidates(level, |s| s == NodeState::Frequent);
        report.actual_next = generated as u64;
        reports.push(report);
        if generated == 0 {
            break;
        }
        pass_time = run.scan();
        infrequent = run.settle_level(level + 1);
        level += 1;
    }

    let mut patterns: Vec<Pattern> = run
        .trie
        .nodes_in_state(NodeState::Frequent)
        .into_iter()
        .map(|node| {
            let mut labels: Vec<Label> = run.trie.path(node).iter().map(|&id| db.label(id)).collect();
            labels.sort_unstable();
            Pattern {
                labels,
                support: run.trie.support(node),
            }
        })
        .collect();
    patterns.sort_by(Pattern::output_cmp);
    Ok(MineOutcome {
        patterns,
        reports,
        passes: run.passes,
        combined_after,
        fell_back,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::db::load_transactions;

    fn tiny() -> TransactionDb {
        load_transactions("1 2 3\n1 2 3\n1 2\n".as_bytes()).unwrap()
    }

    #[test]
    fn all_subsets_frequent() {
        let out = mine(&tiny(), &MinerConfig::new(2)).unwrap();
        let lines: Vec<(Vec<Label>, u64)> = out.patterns.iter().map(|p| (p.labels.clone(), p.support)).collect();
        assert_eq!(
            lines,
            vec![
                (vec![1], 3),
                (vec![2], 3),
                (vec![3], 2),
                (vec![1, 2], 3),
                (vec![1, 3], 2),
                (vec![2, 3], 2),
                (vec![1, 2, 3], 2),
            ]
        );
        let mut buf = Vec::new();
        out.write_patterns(&mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().ends_with("1 2 3 (2)\n"));
    }

    #[test]
    fn strict_threshold() {
        let mut config = MinerConfig::new(2);
        config.strict = true;
        let out = mine(&tiny(), &config).unwrap();
        assert_eq!(out.patterns.len(), 3);
    }

    #[test]
    fn zero_minsup_rejected() {
        assert!(matches!(mine(&tiny(), &MinerConfig::new(0)), Err(Error::Config(_))));
    }

    #[test]
    fn merged_run_matches() {
        let plain = mine(&tiny(), &MinerConfig::new(2)).unwrap();
        let mut config = MinerConfig::new(2);
        config.combine_limit = Some(Count::from(100u32));
        let merged = mine(&tiny(), &config).unwrap();
        assert_eq!(merged.patterns, plain.patterns);
        assert!(merged.passes < plain.passes);
        assert_eq!(merged.combined_after, Some(1));
    }

    #[test]
    fn budget_forces_fallback() {
        let plain = mine(&tiny(), &MinerConfig::new(2)).unwrap();
        let mut config = MinerConfig::new(2);
        config.combine_limit = Some(Count::from(100u32));
        config.memory_budget = Some(1);
        let out = mine(&tiny(), &config).unwrap();
        assert!(out.fell_back);
        assert_eq!(out.patterns, plain.patterns);
        assert_eq!(out.passes, plain.passes);
    }
}
