//! Brute-force ground truth. Deliberately naive: nothing here shares code
//! with the trie or the bound recursions.

use std::collections::HashSet;

use crate::itemset::ItemSet;

/// The first `n` `k`-subsets of `{1, 2, ...}` in colex order.
pub fn colex_family(n: u64, k: usize) -> Vec<ItemSet> {
    assert!(k >= 1, "colex family needs k >= 1");
    let mut out = Vec::with_capacity(n as usize);
    let mut current: Vec<u32> = (1..=k as u32).collect();
    for _ in 0..n {
        out.push(ItemSet::from_sorted(current.clone()));
        // successor: bump the lowest position that can move, reset the rest
        let i = (0..k)
            .find(|&i| i + 1 == k || current[i] + 1 < current[i + 1])
            .expect("last position can always move");
        current[i] += 1;
        for (j, slot) in current.iter_mut().enumerate().take(i) {
            *slot = j as u32 + 1;
        }
    }
    out
}

/// Bitmask encoding of sets over at most 64 distinct items.
struct Universe {
    items: Vec<u32>,
}

impl Universe {
    fn of(family: &[ItemSet]) -> Self {
        let mut items: Vec<u32> = family.iter().flat_map(|s| s.iter().copied()).collect();
        items.sort_unstable();
        items.dedup();
        assert!(items.len() <= 64, "brute force supports at most 64 distinct items");
        Universe { items }
    }

    fn mask(&self, set: &[u32]) -> u64 {
        set.iter()
            .map(|x| 1u64 << self.items.binary_search(x).expect("item in universe"))
            .fold(0, |a, b| a | b)
    }

    fn decode(&self, mask: u64) -> ItemSet {
        let items = (0..self.items.len())
            .filter(|&b| mask >> b & 1 == 1)
            .map(|b| self.items[b])
            .collect();
        ItemSet::from_sorted(items)
    }
}

/// Calls `f` with each `size`-subset of the bit positions `0..n`, as a mask,
/// until `f` returns `false`. Returns `false` if stopped early.
fn combinations(n: usize, size: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    if size > n {
        return true;
    }
    if size == 0 {
        return f(0);
    }
    // Gosper's hack over n-bit words
    let limit: u128 = 1u128 << n;
    let mut m: u128 = (1u128 << size) - 1;
    while m < limit {
        if !f(m as u64) {
            return false;
        }
        let c = m & m.wrapping_neg();
        let r = m + c;
        m = (((r ^ m) >> 2) / c) | r;
    }
    true
}

/// Every `size`-subset of the set bits of `mask`.
fn sub_masks(mask: u64, size: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    let bits: Vec<u32> = (0..64).filter(|&b| mask >> b & 1 == 1).collect();
    combinations(bits.len(), size, |m| {
        let mut sub = 0u64;
        for (i, &b) in bits.iter().enumerate() {
            if m >> i & 1 == 1 {
                sub |= 1 << b;
            }
        }
        f(sub)
    })
}

/// `C_{k+p}(L)` by definition: every `(k+p)`-set over the items of `L` whose
/// `k`-subsets all lie in `L`. Sorted ascending.
pub fn brute_force_candidates(family: &[ItemSet], p: usize) -> Vec<ItemSet> {
    assert!(p >= 1, "candidate levels start at p = 1");
    let Some(k) = family.first().map(|s| s.len()) else {
        return Vec::new();
    };
    let universe = Universe::of(family);
    let members: HashSet<u64> = family.iter().map(|s| universe.mask(s)).collect();
    let mut out = Vec::new();
    combinations(universe.items.len(), k + p, |c| {
        if sub_masks(c, k, |s| members.contains(&s)) {
            out.push(universe.decode(c));
        }
        true
    });
    out.sort();
    out
}

/// Largest `k + p` with `C_{k+p}(L)` nonempty, or `k` when there is none.
/// `k` is taken from `family`; an empty family yields 0.
pub fn maxsize(family: &[ItemSet]) -> usize {
    let Some(k) = family.first().map(|s| s.len()) else {
        return 0;
    };
    let mut p = 1;
    while !brute_force_candidates(family, p).is_empty() {
        p += 1;
    }
    k + p - 1
}
