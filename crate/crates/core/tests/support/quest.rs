//! Quest-style synthetic basket data: transactions are unions of corrupted
//! copies of weighted "potentially large" patterns.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp, Normal, Poisson};

#[derive(Clone, Copy, Debug)]
pub struct QuestParams {
    pub transactions: usize,
    pub avg_transaction: f64,
    pub avg_pattern: f64,
    pub patterns: usize,
    pub items: u32,
    pub correlation: f64,
    pub seed: u64,
}

impl QuestParams {
    /// The T40I10D100K shape.
    pub fn t40_i10_d100k(seed: u64) -> Self {
        QuestParams {
            transactions: 100_000,
            avg_transaction: 40.0,
            avg_pattern: 10.0,
            patterns: 2_000,
            items: 1_000,
            correlation: 0.5,
            seed,
        }
    }
}

struct Source {
    items: Vec<u32>,
    corruption: f64,
}

fn poisson_at_least_one(rng: &mut ChaCha8Rng, mean: f64) -> usize {
    let d = Poisson::new(mean).expect("positive mean");
    (d.sample(rng) as usize).max(1)
}

fn sources(p: &QuestParams, rng: &mut ChaCha8Rng) -> (Vec<Source>, Vec<f64>) {
    let reuse = Exp::new(1.0 / p.correlation).expect("positive rate");
    let weight = Exp::new(1.0).expect("positive rate");
    let corruption = Normal::new(0.5, 0.1).expect("positive sd");
    let mut out: Vec<Source> = Vec::with_capacity(p.patterns);
    let mut weights = Vec::with_capacity(p.patterns);
    for _ in 0..p.patterns {
        let size = poisson_at_least_one(rng, p.avg_pattern).min(p.items as usize);
        let mut items: Vec<u32> = Vec::with_capacity(size);
        if let Some(prev) = out.last() {
            let share: f64 = reuse.sample(rng);
            let take = ((share.min(1.0) * size as f64) as usize).min(prev.items.len());
            for _ in 0..take {
                let x = prev.items[rng.random_range(0..prev.items.len())];
                if !items.contains(&x) {
                    items.push(x);
                }
            }
        }
        while items.len() < size {
            let x = rng.random_range(1..=p.items);
            if !items.contains(&x) {
                items.push(x);
            }
        }
        let c: f64 = corruption.sample(rng);
        out.push(Source {
            items,
            corruption: c.clamp(0.0, 1.0),
        });
        weights.push(weight.sample(rng));
    }
    (out, weights)
}

/// Transactions as whitespace-separated label lines.
pub fn generate(p: &QuestParams) -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let (sources, weights) = sources(p, &mut rng);
    let pick = WeightedIndex::new(&weights).expect("positive weights");
    let mut text = String::new();
    let mut carried: Option<Vec<u32>> = None;
    for _ in 0..p.transactions {
        let size = poisson_at_least_one(&mut rng, p.avg_transaction);
        let mut t: Vec<u32> = Vec::with_capacity(size + 16);
        let mut guard = 0;
        while t.len() < size && guard < 1_000 {
            guard += 1;
            let chunk = carried.take().unwrap_or_else(|| {
                let s = &sources[pick.sample(&mut rng)];
                let mut items = s.items.clone();
                // drop items while a uniform draw stays below the corruption level
                while !items.is_empty() && rng.random::<f64>() < s.corruption {
                    let i = rng.random_range(0..items.len());
                    items.swap_remove(i);
                }
                items
            });
            if t.len() + chunk.len() > size && !t.is_empty() && rng.random_bool(0.5) {
                carried = Some(chunk);
                break;
            }
            t.extend(chunk);
        }
        t.sort_unstable();
        t.dedup();
        for (i, x) in t.iter().enumerate() {
            if i > 0 {
                text.push(' ');
            }
            text.push_str(&x.to_string());
        }
        text.push('\n');
    }
    text
}
