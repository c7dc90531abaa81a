use std::cmp::Ordering;
use std::fmt;
use std::ops::Deref;

/// Dense item identifier assigned by the item dictionary.
pub type ItemId = u32;

/// A pattern: a strictly increasing, duplicate-free sequence of item ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemSet(Vec<ItemId>);

impl ItemSet {
    /// Builds an itemset from arbitrary ids, sorting and removing duplicates.
    pub fn new(mut items: Vec<ItemId>) -> Self {
        items.sort_unstable();
        items.dedup();
        ItemSet(items)
    }

    /// Wraps ids that are already strictly increasing.
    pub fn from_sorted(items: Vec<ItemId>) -> Self {
        debug_assert!(
            items.windows(2).all(|w| w[0] < w[1]),
            "items not strictly increasing: {items:?}"
        );
        ItemSet(items)
    }

    pub fn items(&self) -> &[ItemId] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<ItemId> {
        self.0
    }

    pub fn min(&self) -> Option<ItemId> {
        self.0.first().copied()
    }

    /// `true` when every item of `self` occurs in `other`.
    pub fn is_subset_of(&self, other: &[ItemId]) -> bool {
        is_sorted_subset(&self.0, other)
    }

    /// Returns `self` with `item` added.
    pub fn with(&self, item: ItemId) -> ItemSet {
        let mut items = self.0.clone();
        match items.binary_search(&item) {
            Ok(_) => {}
            Err(pos) => items.insert(pos, item),
        }
        ItemSet(items)
    }

    /// Returns `self` with the item at `index` removed.
    pub fn without_index(&self, index: usize) -> ItemSet {
        let mut items = self.0.clone();
        items.remove(index);
        ItemSet(items)
    }

    /// Colexicographic comparison: compares the decreasing-sorted member
    /// strings lexicographically. Sets of different sizes compare by their
    /// largest differing element first, which makes this a total order.
    pub fn colex_cmp(&self, other: &ItemSet) -> Ordering {
        colex_cmp(&self.0, &other.0)
    }
}

/// Colex comparison on sorted slices.
pub fn colex_cmp(a: &[ItemId], b: &[ItemId]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return ord,
        }
    }
    a.len().cmp(&b.len())
}

/// Subset test for two strictly increasing slices.
pub fn is_sorted_subset(small: &[ItemId], big: &[ItemId]) -> bool {
    if small.len() > big.len() {
        return false;
    }
    let mut it = big.iter();
    'outer: for x in small {
        for y in it.by_ref() {
            match y.cmp(x) {
                Ordering::Less => continue,
                Ordering::Equal => continue 'outer,
                Ordering::Greater => return false,
            }
        }
        return false;
    }
    true
}

impl Deref for ItemSet {
    type Target = [ItemId];

    fn deref(&self) -> &[ItemId] {
        &self.0
    }
}

impl From<Vec<ItemId>> for ItemSet {
    fn from(items: Vec<ItemId>) -> Self {
        ItemSet::new(items)
    }
}

impl<const N: usize> From<[ItemId; N]> for ItemSet {
    fn from(items: [ItemId; N]) -> Self {
        ItemSet::new(items.to_vec())
    }
}

impl From<&[ItemId]> for ItemSet {
    fn from(items: &[ItemId]) -> Self {
        ItemSet::new(items.to_vec())
    }
}

impl FromIterator<ItemId> for ItemSet {
    fn from_iter<I: IntoIterator<Item = ItemId>>(iter: I) -> Self {
        ItemSet::new(iter.into_iter().collect())
    }
}

impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, item) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{item}")?;
        }
        write!(f, "}}")
    }
}

/// Calls `f` with every `size`-subset of `items`, in lexicographic order.
pub fn for_each_subset<F: FnMut(&[ItemId])>(items: &[ItemId], size: usize, mut f: F) {
    any_subset(items, size, |s| {
        f(s);
        false
    });
}

/// `true` as soon as `pred` holds for some `size`-subset of `items`; subsets
/// are visited in lexicographic order.
pub fn any_subset<F: FnMut(&[ItemId]) -> bool>(items: &[ItemId], size: usize, mut pred: F) -> bool {
    let n = items.len();
    if size > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..size).collect();
    let mut buf: Vec<ItemId> = idx.iter().map(|&i| items[i]).collect();
    loop {
        if pred(&buf) {
            return true;
        }
        // advance the rightmost index that still has room
        let mut i = size;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - size + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..size {
            idx[j] = idx[j - 1] + 1;
        }
        for j in i..size {
            buf[j] = items[idx[j]];
        }
    }
}
