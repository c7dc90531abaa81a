#![allow(dead_code)]

pub mod quest;

use std::collections::HashSet;
use std::path::PathBuf;

use levelwise::{brute_force_candidates, ItemId, ItemSet, LevelFamilies};
use rand::seq::IndexedRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn sets(raw: &[&[ItemId]]) -> Vec<ItemSet> {
    raw.iter().map(|s| ItemSet::from(*s)).collect()
}

pub fn all_subsets(items: &[ItemId], k: usize) -> Vec<ItemSet> {
    let mut out = Vec::new();
    levelwise::itemset::for_each_subset(items, k, |s| out.push(ItemSet::from(s)));
    out
}

/// The first thirteen 3-sets in colex order.
pub fn thirteen() -> Vec<ItemSet> {
    sets(&[
        &[1, 2, 3],
        &[1, 2, 4],
        &[1, 3, 4],
        &[2, 3, 4],
        &[1, 2, 5],
        &[1, 3, 5],
        &[2, 3, 5],
        &[1, 4, 5],
        &[2, 4, 5],
        &[3, 4, 5],
        &[1, 2, 6],
        &[1, 3, 6],
        &[2, 3, 6],
    ])
}

/// {5,7,8}, {5,8,9} and every 3-subset of {1..5} and of {3..7}: 21 sets.
pub fn twenty_one() -> Vec<ItemSet> {
    let mut family = sets(&[&[5, 7, 8], &[5, 8, 9]]);
    family.extend(all_subsets(&[1, 2, 3, 4, 5], 3));
    family.extend(all_subsets(&[3, 4, 5, 6, 7], 3));
    family.sort();
    family.dedup();
    family
}

/// All 3-subsets of {1..6} with {1,2,3,4} and {3,4,5,6} known infrequent.
pub fn six_choose_three_with_side_information() -> LevelFamilies {
    LevelFamilies::new(
        3,
        vec![all_subsets(&[1, 2, 3, 4, 5, 6], 3)],
        vec![vec![], sets(&[&[1, 2, 3, 4], &[3, 4, 5, 6]])],
    )
}

/// Random family of `k`-sets over `1..=universe`, at most `max_sets` sets.
pub fn random_family(rng: &mut ChaCha8Rng, k: usize, universe: ItemId, max_sets: usize) -> Vec<ItemSet> {
    let target = rng.random_range(1..=max_sets);
    let pool: Vec<ItemId> = (1..=universe).collect();
    let mut family: Vec<ItemSet> = (0..target)
        .map(|_| ItemSet::new(pool.choose_multiple(rng, k).copied().collect()))
        .collect();
    family.sort();
    family.dedup();
    family
}

/// Splits `pool` at random into (frequent, infrequent, unknown).
fn split(rng: &mut ChaCha8Rng, pool: Vec<ItemSet>) -> (Vec<ItemSet>, Vec<ItemSet>) {
    let (mut frequent, mut infrequent) = (Vec::new(), Vec::new());
    for s in pool {
        match rng.random_range(0..10) {
            0..=3 => frequent.push(s),
            4..=6 => infrequent.push(s),
            _ => {}
        }
    }
    (frequent, infrequent)
}

/// A valid random extension of `base` by up to two known levels above it and
/// a few known-infrequent base-size sets.
pub fn random_extension(rng: &mut ChaCha8Rng, k: usize, base: Vec<ItemSet>, universe: ItemId) -> LevelFamilies {
    let members: HashSet<ItemSet> = base.iter().cloned().collect();
    let pool: Vec<ItemId> = (1..=universe).collect();
    let mut base_infrequent = Vec::new();
    for _ in 0..rng.random_range(0..4) {
        let s = ItemSet::new(pool.choose_multiple(rng, k).copied().collect());
        if !members.contains(&s) {
            base_infrequent.push(s);
        }
    }
    let (l1, i1) = split(rng, brute_force_candidates(&base, 1));
    let (l2, i2) = if l1.is_empty() {
        (Vec::new(), Vec::new())
    } else {
        split(rng, brute_force_candidates(&l1, 1))
    };
    LevelFamilies::new(k, vec![base, l1, l2], vec![base_infrequent, i1, i2])
}

pub fn data_file(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}
