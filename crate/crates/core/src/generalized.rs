//! Bounds that also subtract what is already known about larger sets: the
//! frequent levels `L_{k+1}..L_{k+q}` and the infrequent levels
//! `I_k..I_{k+q}`.
//!
//! A generalized candidate of size `k+p` is a set outside `L_{k+p}` and
//! `I_{k+p}` whose `k`-subsets are all in `L_k` and none of whose subsets of
//! size above `k` is known infrequent.

use std::collections::HashSet;

use num_traits::Zero;

use crate::combinatorics::{kk_bound, Count};
use crate::error::FamilyViolation;
use crate::itemset::{any_subset, for_each_subset, ItemId, ItemSet};
use crate::trie::{at, PatternTrie};

/// Known frequent and infrequent levels above a base level `k`. Index `j` of
/// either list holds sets of size `k + j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LevelFamilies {
    k: usize,
    frequent: Vec<Vec<ItemSet>>,
    infrequent: Vec<Vec<ItemSet>>,
}

impl LevelFamilies {
    /// Levels are sorted and deduplicated; structure is not checked here, see
    /// [`LevelFamilies::validate`].
    pub fn new(k: usize, frequent: Vec<Vec<ItemSet>>, infrequent: Vec<Vec<ItemSet>>) -> Self {
        assert!(k >= 1, "base level must be at least 1");
        let tidy = |mut levels: Vec<Vec<ItemSet>>| {
            for level in &mut levels {
                level.sort();
                level.dedup();
            }
            levels
        };
        LevelFamilies {
            k,
            frequent: tidy(frequent),
            infrequent: tidy(infrequent),
        }
    }

    /// Only the base level, no side information.
    pub fn base(k: usize, family: Vec<ItemSet>) -> Self {
        LevelFamilies::new(k, vec![family], Vec::new())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `L_{k+j}`; empty past the known levels.
    pub fn frequent(&self, j: usize) -> &[ItemSet] {
        self.frequent.get(j).map_or(&[], Vec::as_slice)
    }

    /// `I_{k+j}`; empty past the known levels.
    pub fn infrequent(&self, j: usize) -> &[ItemSet] {
        self.infrequent.get(j).map_or(&[], Vec::as_slice)
    }

    /// Number of levels carried, `q + 1`.
    pub fn depth(&self) -> usize {
        self.frequent.len().max(self.infrequent.len()).max(1)
    }

    pub fn frequent_sizes(&self) -> Vec<u64> {
        (0..self.depth()).map(|j| self.frequent(j).len() as u64).collect()
    }

    pub fn infrequent_sizes(&self) -> Vec<u64> {
        (0..self.depth()).map(|j| self.infrequent(j).len() as u64).collect()
    }

    /// Checks set sizes, downward closure of every level above `k` into the
    /// frequent level below, and disjointness of `L_{k+j}` and `I_{k+j}`.
    /// Reports the first offending set.
    pub fn validate(&self) -> Result<(), FamilyViolation> {
        for j in 0..self.depth() {
            let size = self.k + j;
            if let Some(s) = self.frequent(j).iter().find(|s| s.len() != size) {
                return Err(FamilyViolation::FrequentSize { set: s.clone(), size });
            }
            if let Some(s) = self.infrequent(j).iter().find(|s| s.len() != size) {
                return Err(FamilyViolation::InfrequentSize { set: s.clone(), size });
            }
        }
        for j in 1..self.depth() {
            let below: HashSet<&[ItemId]> = self.frequent(j - 1).iter().map(|s| s.items()).collect();
            let missing = |s: &ItemSet| {
                (0..s.len())
                    .rev()
                    .map(|i| s.without_index(i))
                    .find(|sub| !below.contains(sub.items()))
            };
            for s in self.frequent(j) {
                if let Some(m) = missing(s) {
                    return Err(FamilyViolation::FrequentNotClosed { set: s.clone(), missing: m });
                }
            }
            for s in self.infrequent(j) {
                if let Some(m) = missing(s) {
                    return Err(FamilyViolation::InfrequentNotClosed { set: s.clone(), missing: m });
                }
            }
        }
        for j in 0..self.depth() {
            let frequent: HashSet<&ItemSet> = self.frequent(j).iter().collect();
            if let Some(s) = self.infrequent(j).iter().find(|s| frequent.contains(s)) {
                return Err(FamilyViolation::NotDisjoint { set: s.clone() });
            }
        }
        Ok(())
    }
}

fn size_at(sizes: &[u64], j: usize) -> Count {
    Count::from(sizes.get(j).copied().unwrap_or(0))
}

fn clamped_sub(a: Count, b: Count) -> Count {
    if a > b {
        a - b
    } else {
        Count::zero()
    }
}

/// `[gKK^{k+1}, gKK^{k+2}, ...]` from level sizes alone, up to the last
/// nonzero entry. `sizes_l[j]` and `sizes_i[j]` are `|L_{k+j}|`, `|I_{k+j}|`;
/// missing entries count as 0. Entries can be 0 before a later nonzero one
/// when a known level is exhausted exactly.
pub fn gkk_profile(sizes_l: &[u64], sizes_i: &[u64], k: usize) -> Vec<Count> {
    assert!(k >= 1, "base level must be at least 1");
    let known = sizes_l.len().max(sizes_i.len());
    let mut out: Vec<Count> = Vec::new();
    let mut prev = Count::zero();
    for p in 1.. {
        let known_here = size_at(sizes_l, p) + size_at(sizes_i, p);
        let value = if p == 1 {
            kk_bound(&size_at(sizes_l, 0), k, 1)
        } else {
            kk_bound(&(prev + size_at(sizes_l, p - 1)), k + p - 1, 1)
        };
        let value = clamped_sub(value, known_here);
        // past the known levels a zero can only repeat
        if p >= known && value.is_zero() {
            break;
        }
        prev = value.clone();
        out.push(value);
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// `gKK_k^{k+p}(|L|, |I|)`.
pub fn gkk_bound(sizes_l: &[u64], sizes_i: &[u64], k: usize, p: usize) -> Count {
    at(&gkk_profile(sizes_l, sizes_i, k), p)
}

/// `k` plus the index of the first zero entry, minus one; `k - 1` when
/// `L_k` is empty.
fn first_zero_mu(profile: &[Count], k: usize, base_empty: bool) -> usize {
    if base_empty {
        return k - 1;
    }
    let first_zero = profile.iter().position(Zero::is_zero).unwrap_or(profile.len());
    k + first_zero
}

/// `gmu`: `k + min{p | gKK^{k+p} = 0} - 1`.
pub fn g_mu(sizes_l: &[u64], sizes_i: &[u64], k: usize) -> usize {
    let profile = gkk_profile(sizes_l, sizes_i, k);
    first_zero_mu(&profile, k, sizes_l.first().copied().unwrap_or(0) == 0)
}

/// `gKK_total`: the sum of every `gKK^{k+p}`.
pub fn gkk_total(sizes_l: &[u64], sizes_i: &[u64], k: usize) -> Count {
    gkk_profile(sizes_l, sizes_i, k).iter().sum()
}

type Levels<'a> = Vec<Vec<&'a [ItemId]>>;

/// `[gKK*_{k+1}, gKK*_{k+2}, ...]` up to the last nonzero entry.
///
/// The projection by `x` carries, besides `I^x`, every infrequent set of
/// the parent whose minimum exceeds `x`, unchanged and one level higher:
/// a candidate through `x` cannot contain it either. A carried set is kept
/// only when subtracting it stays sound, i.e. all its base-size subsets are
/// in the projected base level and none of its proper subsets above the base
/// is already an infrequent set of the projection.
pub fn gkk_star_profile(families: &LevelFamilies) -> Vec<Count> {
    let depth = families.depth();
    let l: Levels<'_> = (0..depth)
        .map(|j| families.frequent(j).iter().map(|s| s.items()).collect())
        .collect();
    let i: Levels<'_> = (0..depth)
        .map(|j| families.infrequent(j).iter().map(|s| s.items()).collect())
        .collect();
    star_profile(families.k, &l, &i)
}

fn star_profile(base: usize, l: &[Vec<&[ItemId]>], i: &[Vec<&[ItemId]>]) -> Vec<Count> {
    let sizes = |levels: &[Vec<&[ItemId]>]| levels.iter().map(|v| v.len() as u64).collect::<Vec<_>>();
    let g = gkk_profile(&sizes(l), &sizes(i), base);
    if base == 1 || g.is_empty() {
        return g;
    }
    let mut sums = vec![Count::zero(); g.len()];
    let roots = &l[0];
    let mut start = 0;
    while start < roots.len() {
        let x = roots[start][0];
        start += roots[start..].partition_point(|s| s[0] == x);
        let (child_l, child_i) = project(base, l, i, x);
        let child = star_profile(base - 1, &child_l, &child_i);
        for (sum, v) in sums.iter_mut().zip(&child) {
            *sum += v;
        }
    }
    let mut out: Vec<Count> = g.into_iter().zip(sums).map(|(a, b)| a.min(b)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn slice_range<'a, 'b>(level: &'b [&'a [ItemId]], x: ItemId) -> &'b [&'a [ItemId]] {
    let lo = level.partition_point(|s| s[0] < x);
    let hi = lo + level[lo..].partition_point(|s| s[0] == x);
    &level[lo..hi]
}

fn project<'a>(
    base: usize,
    l: &[Vec<&'a [ItemId]>],
    i: &[Vec<&'a [ItemId]>],
    x: ItemId,
) -> (Levels<'a>, Levels<'a>) {
    let child_l: Levels<'a> = l
        .iter()
        .map(|level| slice_range(level, x).iter().map(|s| &s[1..]).collect())
        .collect();
    let mut raw: Levels<'a> = vec![Vec::new(); i.len() + 1];
    for (j, level) in i.iter().enumerate() {
        if j >= 1 {
            raw[j].extend(slice_range(level, x).iter().map(|s| &s[1..]));
        }
        // a carried set is only admissible if its first base-1 items form a
        // member of the projected base level, so look it up by that prefix
        for prefix in &child_l[0] {
            let lo = level.partition_point(|t| t[..prefix.len()] < **prefix);
            let hi = lo + level[lo..].partition_point(|t| t.starts_with(prefix));
            raw[j + 1].extend_from_slice(&level[lo..hi]);
        }
    }
    let child_base = base - 1;
    let mut accepted: Levels<'a> = vec![Vec::new(); raw.len()];
    let empty = Vec::new();
    for j in 1..raw.len() {
        let mut level = std::mem::take(&mut raw[j]);
        level.sort_unstable();
        level.dedup();
        let frequent_here = child_l.get(j).unwrap_or(&empty);
        let kept: Vec<&'a [ItemId]> = level
            .into_iter()
            .filter(|t| {
                frequent_here.binary_search(t).is_err()
                    && !any_subset(t, child_base, |s| child_l[0].binary_search(&s).is_err())
                    && !(1..j).any(|m| {
                        !accepted[m].is_empty()
                            && any_subset(t, child_base + m, |s| accepted[m].binary_search(&s).is_ok())
                    })
            })
            .collect();
        accepted[j] = kept;
    }
    while accepted.len() > 1 && accepted.last().is_some_and(Vec::is_empty) {
        accepted.pop();
    }
    (child_l, accepted)
}

/// `gKK*_{k+p}(L, I)`.
pub fn gkk_star(families: &LevelFamilies, p: usize) -> Count {
    at(&gkk_star_profile(families), p)
}

/// `gmu*`: `k + min{p | gKK*_{k+p} = 0} - 1`.
pub fn g_mu_star(families: &LevelFamilies) -> usize {
    let profile = gkk_star_profile(families);
    first_zero_mu(&profile, families.k, families.frequent(0).is_empty())
}

/// `gKK*_total`: the sum of every `gKK*_{k+p}`.
pub fn gkk_star_total(families: &LevelFamilies) -> Count {
    gkk_star_profile(families).iter().sum()
}

/// `C_{k+p}(L, I)` by the level recursion: join and prune the previous
/// candidates together with the known frequent level, then drop what is
/// already known.
pub fn recursive_gen_candidates(families: &LevelFamilies, p: usize) -> Vec<ItemSet> {
    assert!(p >= 1, "bound levels start at p = 1");
    let k = families.k;
    let mut current: Vec<ItemSet> = Vec::new();
    for step in 1..=p {
        let mut seed: Vec<ItemSet> = families.frequent(step - 1).to_vec();
        if step > 1 {
            seed.extend(current.iter().cloned());
        }
        let generated = PatternTrie::from_family(&seed).generate_candidates(k + step - 1);
        let known: HashSet<&ItemSet> = families
            .frequent(step)
            .iter()
            .chain(families.infrequent(step))
            .collect();
        current = generated.into_iter().filter(|c| !known.contains(c)).collect();
    }
    current.sort();
    current
}

/// `C_{k+p}(L, I)` straight from the definition, over the items of `L_k`.
/// Exponential; for small instances only.
pub fn brute_force_gen_candidates(families: &LevelFamilies, p: usize) -> Vec<ItemSet> {
    assert!(p >= 1, "bound levels start at p = 1");
    let k = families.k;
    let mut universe: Vec<ItemId> = families.frequent(0).iter().flat_map(|s| s.iter().copied()).collect();
    universe.sort_unstable();
    universe.dedup();
    let base: HashSet<&[ItemId]> = families.frequent(0).iter().map(|s| s.items()).collect();
    let infrequent: Vec<HashSet<&[ItemId]>> = (0..=p)
        .map(|j| families.infrequent(j).iter().map(|s| s.items()).collect())
        .collect();
    let frequent_top: HashSet<&[ItemId]> = families.frequent(p).iter().map(|s| s.items()).collect();
    let mut out = Vec::new();
    for_each_subset(&universe, k + p, |c| {
        if frequent_top.contains(c) {
            return;
        }
        if any_subset(c, k, |s| !base.contains(s)) {
            return;
        }
        let hits_infrequent = (1..=p).any(|j| {
            !infrequent[j].is_empty() && any_subset(c, k + j, |s| infrequent[j].contains(s))
        });
        if !hits_infrequent {
            out.push(ItemSet::from_sorted(c.to_vec()));
        }
    });
    out
}
