//! Prefix-trie storage of patterns and the structure-aware bounds computed on
//! it.
//!
//! Root-to-node paths are strictly increasing id sequences, so every node at
//! depth `d` stands for one `d`-pattern. The subtrie under a top-level child
//! `x` is exactly the projection `L^x = { s - {x} : s in L, x = min s }`, and
//! the recursive bounds (`KK*`, `mu*`, the obvious join bound) are evaluated
//! in one depth-first traversal.

use std::cmp::{self, Ordering};

use num_traits::Zero;

use crate::combinatorics::{binomial, canonical_rep, canonical_rep_u64, Count};
use crate::itemset::{ItemId, ItemSet};

pub type NodeId = u32;

const ROOT: NodeId = 0;

/// What a node stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeState {
    /// Only a path to deeper patterns.
    Prefix,
    /// A stored (known frequent) pattern.
    Frequent,
    /// A generated candidate whose support is not yet known.
    Candidate,
}

#[derive(Clone, Debug)]
struct Node {
    item: ItemId,
    depth: u32,
    state: NodeState,
    support: u64,
    parent: NodeId,
    /// Sorted by item.
    children: Vec<(ItemId, NodeId)>,
}

/// Prefix trie of itemsets. Single writer; bound evaluation only reads.
#[derive(Clone, Debug)]
pub struct PatternTrie {
    nodes: Vec<Node>,
    detached: usize,
}

impl Default for PatternTrie {
    fn default() -> Self {
        Self::new()
    }
}

impl PatternTrie {
    pub fn new() -> Self {
        PatternTrie {
            nodes: vec![Node {
                item: 0,
                depth: 0,
                state: NodeState::Prefix,
                support: 0,
                parent: ROOT,
                children: Vec::new(),
            }],
            detached: 0,
        }
    }

    /// Builds a trie holding every set of `family` as a stored pattern.
    pub fn from_family<'a, I>(family: I) -> Self
    where
        I: IntoIterator<Item = &'a ItemSet>,
    {
        let mut trie = PatternTrie::new();
        for s in family {
            trie.insert(s);
        }
        trie
    }

    /// Stores `items` (strictly increasing) as a frequent pattern. Inserting
    /// the same set again leaves the trie unchanged.
    pub fn insert(&mut self, items: &[ItemId]) -> NodeId {
        let node = self.ensure_path(items);
        if node != ROOT {
            self.nodes[node as usize].state = NodeState::Frequent;
        }
        node
    }

    /// Stores `items` with a state and support, creating the path if needed.
    pub fn insert_with(&mut self, items: &[ItemId], state: NodeState, support: u64) -> NodeId {
        let node = self.ensure_path(items);
        let n = &mut self.nodes[node as usize];
        n.state = state;
        n.support = support;
        node
    }

    fn ensure_path(&mut self, items: &[ItemId]) -> NodeId {
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        let mut node = ROOT;
        for &item in items {
            node = match self.child(node, item) {
                Some(c) => c,
                None => self.push_child(node, item, NodeState::Prefix),
            };
        }
        node
    }

    fn push_child(&mut self, parent: NodeId, item: ItemId, state: NodeState) -> NodeId {
        let id = self.nodes.len() as NodeId;
        let depth = self.nodes[parent as usize].depth + 1;
        self.nodes.push(Node {
            item,
            depth,
            state,
            support: 0,
            parent,
            children: Vec::new(),
        });
        let children = &mut self.nodes[parent as usize].children;
        match children.binary_search_by_key(&item, |&(i, _)| i) {
            Ok(_) => unreachable!("duplicate child {item}"),
            Err(pos) => children.insert(pos, (item, id)),
        }
        id
    }

    fn child(&self, node: NodeId, item: ItemId) -> Option<NodeId> {
        let children = &self.nodes[node as usize].children;
        children
            .binary_search_by_key(&item, |&(i, _)| i)
            .ok()
            .map(|pos| children[pos].1)
    }

    /// Node for the path `items`, whatever its state.
    pub fn find(&self, items: &[ItemId]) -> Option<NodeId> {
        let mut node = ROOT;
        for &item in items {
            node = self.child(node, item)?;
        }
        Some(node)
    }

    /// `true` when `items` is stored as a frequent pattern.
    pub fn contains(&self, items: &[ItemId]) -> bool {
        !items.is_empty()
            && self
                .find(items)
                .is_some_and(|n| self.nodes[n as usize].state == NodeState::Frequent)
    }

    pub fn root(&self) -> NodeId {
        ROOT
    }

    pub fn item(&self, node: NodeId) -> ItemId {
        self.nodes[node as usize].item
    }

    pub fn depth(&self, node: NodeId) -> usize {
        self.nodes[node as usize].depth as usize
    }

    pub fn state(&self, node: NodeId) -> NodeState {
        self.nodes[node as usize].state
    }

    pub fn support(&self, node: NodeId) -> u64 {
        self.nodes[node as usize].support
    }

    pub fn set_support(&mut self, node: NodeId, support: u64) {
        self.nodes[node as usize].support = support;
    }

    pub fn set_state(&mut self, node: NodeId, state: NodeState) {
        self.nodes[node as usize].state = state;
    }

    pub fn children(&self, node: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes[node as usize].children.iter().map(|&(_, c)| c)
    }

    /// The itemset spelled by the path to `node`.
    pub fn path(&self, node: NodeId) -> ItemSet {
        let mut items = Vec::with_capacity(self.depth(node));
        let mut n = node;
        while n != ROOT {
            items.push(self.nodes[n as usize].item);
            n = self.nodes[n as usize].parent;
        }
        items.reverse();
        ItemSet::from_sorted(items)
    }

    /// Number of live nodes, root excluded.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1 - self.detached
    }

    /// Items of the top-level children, ascending.
    pub fn top_level_items(&self) -> Vec<ItemId> {
        self.nodes[ROOT as usize].children.iter().map(|&(i, _)| i).collect()
    }

    /// Live nodes at `depth`, in lexicographic path order.
    pub fn nodes_at_depth(&self, depth: usize) -> Vec<NodeId> {
        let mut out = Vec::new();
        self.collect_at_depth(ROOT, depth, &mut out);
        out
    }

    fn collect_at_depth(&self, node: NodeId, depth: usize, out: &mut Vec<NodeId>) {
        let n = &self.nodes[node as usize];
        if n.depth as usize == depth {
            out.push(node);
            return;
        }
        for &(_, c) in &n.children {
            self.collect_at_depth(c, depth, out);
        }
    }

    /// Stored patterns of size `level`.
    pub fn patterns_at(&self, level: usize) -> Vec<ItemSet> {
        self.view().patterns_at(level)
    }

    /// Number of stored patterns of size `level`.
    pub fn len_at(&self, level: usize) -> usize {
        self.view().len_at(level)
    }

    /// Number of nodes at `depth` in `state`.
    pub fn len_at_state(&self, depth: usize, state: NodeState) -> usize {
        self.nodes_at_depth(depth)
            .into_iter()
            .filter(|&n| self.nodes[n as usize].state == state)
            .count()
    }

    /// Every node in the given state, in depth-first order.
    pub fn nodes_in_state(&self, state: NodeState) -> Vec<NodeId> {
        let mut out = Vec::new();
        let mut stack = vec![ROOT];
        while let Some(n) = stack.pop() {
            let node = &self.nodes[n as usize];
            if n != ROOT && node.state == state {
                out.push(n);
            }
            stack.extend(node.children.iter().rev().map(|&(_, c)| c));
        }
        out
    }

    /// Whole-trie view.
    pub fn view(&self) -> TrieView<'_> {
        TrieView {
            trie: self,
            node: Some(ROOT),
        }
    }

    /// `L^x`: the subtrie under top-level child `x`; empty when `x` is not the
    /// minimum of any stored path.
    pub fn project(&self, x: ItemId) -> TrieView<'_> {
        self.view().project(x)
    }

    /// Detaches `node` and its whole subtree.
    pub fn remove(&mut self, node: NodeId) {
        assert_ne!(node, ROOT, "cannot remove the root");
        let parent = self.nodes[node as usize].parent;
        let item = self.nodes[node as usize].item;
        let children = &mut self.nodes[parent as usize].children;
        if let Ok(pos) = children.binary_search_by_key(&item, |&(i, _)| i) {
            children.remove(pos);
        }
        let mut stack = vec![node];
        while let Some(n) = stack.pop() {
            self.detached += 1;
            let taken = std::mem::take(&mut self.nodes[n as usize].children);
            stack.extend(taken.into_iter().map(|(_, c)| c));
        }
    }

    /// The Apriori candidates of size `level + 1` over the stored `level`-patterns:
    /// join siblings sharing their first `level - 1` items, then drop any union
    /// with a `level`-subset that is not stored.
    pub fn generate_candidates(&self, level: usize) -> Vec<ItemSet> {
        let mut out = Vec::new();
        self.for_each_join(level, |s| s == NodeState::Frequent, |trie, a, b| {
            let mut items = trie.path(a).into_vec();
            items.push(b);
            out.push(ItemSet::from_sorted(items));
        });
        out
    }

    /// Adds every `(level + 1)`-candidate as a `Candidate` node. Nodes whose
    /// state satisfies `member` count as the `level`-family being joined.
    /// Returns the number of candidates added.
    pub fn extend_candidates<F>(&mut self, level: usize, member: F) -> usize
    where
        F: Fn(NodeState) -> bool,
    {
        let mut pending = Vec::new();
        self.for_each_join(level, &member, |_, a, b| pending.push((a, b)));
        for &(a, b) in &pending {
            self.push_child(a, b, NodeState::Candidate);
        }
        pending.len()
    }

    fn for_each_join<M, F>(&self, level: usize, member: M, mut emit: F)
    where
        M: Fn(NodeState) -> bool,
        F: FnMut(&PatternTrie, NodeId, ItemId),
    {
        if level == 0 {
            return;
        }
        let mut path = Vec::with_capacity(level + 1);
        let mut buf = Vec::with_capacity(level);
        for parent in self.nodes_at_depth(level - 1) {
            let members: Vec<(ItemId, NodeId)> = self.nodes[parent as usize]
                .children
                .iter()
                .copied()
                .filter(|&(_, c)| member(self.nodes[c as usize].state))
                .collect();
            if members.len() < 2 {
                continue;
            }
            path.clear();
            path.extend_from_slice(self.path(parent).items());
            for (i, &(_, a)) in members.iter().enumerate() {
                let a_item = self.nodes[a as usize].item;
                for &(b_item, _) in &members[i + 1..] {
                    path.push(a_item);
                    path.push(b_item);
                    // the two subsets dropping the last or second-to-last
                    // item are the joined patterns themselves
                    let all_present = (0..level.saturating_sub(1)).all(|skip| {
                        buf.clear();
                        buf.extend(path.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x));
                        self.find(&buf)
                            .is_some_and(|n| member(self.nodes[n as usize].state))
                    });
                    path.truncate(path.len() - 2);
                    if all_present {
                        emit(self, a, b_item);
                    }
                }
            }
        }
    }

    /// Counts one pass over `transactions`: every `Candidate` node whose
    /// pattern is contained in a transaction gains one support per
    /// containing transaction.
    pub fn count_candidates<'t, I>(&mut self, transactions: I)
    where
        I: IntoIterator<Item = &'t [ItemId]>,
    {
        // reach[n]: smallest depth of a candidate at or below n
        let mut reach = vec![u32::MAX; self.nodes.len()];
        for n in (0..self.nodes.len()).rev() {
            let node = &self.nodes[n];
            let mut r = if node.state == NodeState::Candidate {
                node.depth
            } else {
                u32::MAX
            };
            for &(_, c) in &node.children {
                r = r.min(reach[c as usize]);
            }
            reach[n] = r;
        }
        if reach[ROOT as usize] == u32::MAX {
            return;
        }
        // direct-index child tables for wide live nodes
        let mut dense: Vec<Option<DenseChildren>> = vec![None; self.nodes.len()];
        for (n, node) in self.nodes.iter().enumerate() {
            let children = &node.children;
            if reach[n] == u32::MAX || children.len() < DENSE_MIN_CHILDREN {
                continue;
            }
            let first = children[0].0;
            let span = (children[children.len() - 1].0 - first) as usize + 1;
            if span > 4 * children.len() {
                continue;
            }
            let mut table = vec![NO_NODE; span];
            for &(item, c) in children {
                if reach[c as usize] != u32::MAX {
                    table[(item - first) as usize] = c;
                }
            }
            dense[n] = Some(DenseChildren {
                first,
                table: table.into_boxed_slice(),
            });
        }
        let counter = Counter {
            trie: self,
            reach: &reach,
            dense: &dense,
        };
        let mut counts = vec![0u64; self.nodes.len()];
        for t in transactions {
            counter.walk(ROOT, t, &mut counts);
        }
        for (node, count) in self.nodes.iter_mut().zip(counts) {
            if node.state == NodeState::Candidate {
                node.support += count;
            }
        }
    }
}

const DENSE_MIN_CHILDREN: usize = 64;
const NO_NODE: NodeId = NodeId::MAX;

#[derive(Clone)]
struct DenseChildren {
    first: ItemId,
    table: Box<[NodeId]>,
}

struct Counter<'a> {
    trie: &'a PatternTrie,
    /// Smallest candidate depth in each subtree; `u32::MAX` when none.
    reach: &'a [u32],
    dense: &'a [Option<DenseChildren>],
}

impl Counter<'_> {
    fn walk(&self, node: NodeId, items: &[ItemId], counts: &mut [u64]) {
        let children = &self.trie.nodes[node as usize].children;
        if children.is_empty() || items.is_empty() {
            return;
        }
        if let Some(d) = &self.dense[node as usize] {
            let start = items.partition_point(|&x| x < d.first);
            for (pos, &item) in items.iter().enumerate().skip(start) {
                let idx = (item - d.first) as usize;
                if idx >= d.table.len() {
                    break;
                }
                let c = d.table[idx];
                if c != NO_NODE {
                    self.visit(items, pos, c, counts);
                }
            }
        } else if children.len() > 8 * items.len() {
            for (pos, &item) in items.iter().enumerate() {
                if let Ok(ci) = children.binary_search_by_key(&item, |&(i, _)| i) {
                    let c = children[ci].1;
                    if self.reach[c as usize] != u32::MAX {
                        self.visit(items, pos, c, counts);
                    }
                }
            }
        } else {
            let (mut i, mut j) = (0, 0);
            while i < items.len() && j < children.len() {
                match items[i].cmp(&children[j].0) {
                    Ordering::Less => i += 1,
                    Ordering::Greater => j += 1,
                    Ordering::Equal => {
                        let c = children[j].1;
                        if self.reach[c as usize] != u32::MAX {
                            self.visit(items, i, c, counts);
                        }
                        i += 1;
                        j += 1;
                    }
                }
            }
        }
    }

    /// `c` matched `items[pos]`.
    fn visit(&self, items: &[ItemId], pos: usize, c: NodeId, counts: &mut [u64]) {
        let node = &self.trie.nodes[c as usize];
        if node.state == NodeState::Candidate {
            counts[c as usize] += 1;
        }
        let rest = &items[pos + 1..];
        let need = self.reach[c as usize].saturating_sub(node.depth) as usize;
        if rest.len() >= need.max(1) {
            self.walk(c, rest, counts);
        }
    }
}

/// Bounds for one pattern family of size `level`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundSet {
    pub level: usize,
    /// `|L|`.
    pub family_size: u64,
    /// `KK_k^{k+p}(|L|)` for `p = 1..`, nonzero entries only.
    pub kk: Vec<Count>,
    /// `KK*_{k+p}(L)` for `p = 1..`, nonzero entries only.
    pub kk_star: Vec<Count>,
    pub mu: usize,
    pub mu_star: usize,
    pub kk_total: Count,
    pub kk_star_total: Count,
}

impl BoundSet {
    pub fn kk_at(&self, p: usize) -> Count {
        at(&self.kk, p)
    }

    pub fn kk_star_at(&self, p: usize) -> Count {
        at(&self.kk_star, p)
    }
}

/// Entry `p` (1-based) of a bound profile; zero past its end.
pub(crate) fn at(profile: &[Count], p: usize) -> Count {
    assert!(p >= 1, "bound levels start at p = 1");
    profile.get(p - 1).cloned().unwrap_or_default()
}

/// A read-only subtrie, interpreted as a pattern family relative to its root.
#[derive(Clone, Copy, Debug)]
pub struct TrieView<'a> {
    trie: &'a PatternTrie,
    node: Option<NodeId>,
}

struct StarProfile {
    count: u64,
    star: Vec<Count>,
}

impl<'a> TrieView<'a> {
    pub fn is_empty(&self) -> bool {
        self.node.is_none()
    }

    /// Projection by the child item `x`.
    pub fn project(&self, x: ItemId) -> TrieView<'a> {
        TrieView {
            trie: self.trie,
            node: self.node.and_then(|n| self.trie.child(n, x)),
        }
    }

    /// Stored patterns `level` steps below the view root, relative to it.
    pub fn patterns_at(&self, level: usize) -> Vec<ItemSet> {
        let Some(root) = self.node else {
            return Vec::new();
        };
        let base = self.trie.depth(root);
        let mut out = Vec::new();
        let mut nodes = Vec::new();
        self.trie.collect_at_depth(root, base + level, &mut nodes);
        for n in nodes {
            if self.trie.state(n) == NodeState::Frequent {
                let full = self.trie.path(n);
                out.push(ItemSet::from_sorted(full[base..].to_vec()));
            }
        }
        out
    }

    pub fn len_at(&self, level: usize) -> usize {
        match self.node {
            Some(root) => self.count_members(root, self.trie.depth(root) + level) as usize,
            None => 0,
        }
    }

    fn count_members(&self, node: NodeId, depth: usize) -> u64 {
        let n = &self.trie.nodes[node as usize];
        if n.depth as usize == depth {
            return u64::from(n.state == NodeState::Frequent);
        }
        n.children
            .iter()
            .map(|&(_, c)| self.count_members(c, depth))
            .sum()
    }

    /// All bounds for the size-`level` family of this view.
    pub fn bounds(&self, level: usize) -> BoundSet {
        assert!(level >= 1, "bounds need level >= 1");
        let profile = match self.node {
            Some(root) => self.star_profile(root, level),
            None => StarProfile {
                count: 0,
                star: Vec::new(),
            },
        };
        let rep = canonical_rep_u64(profile.count, level);
        let kk = rep.kk_profile(usize::MAX);
        let mu_star = if profile.count == 0 {
            level - 1
        } else {
            level + profile.star.len()
        };
        BoundSet {
            level,
            family_size: profile.count,
            mu: rep.mu(),
            mu_star,
            kk_total: kk.iter().sum(),
            kk_star_total: profile.star.iter().sum(),
            kk,
            kk_star: profile.star,
        }
    }

    /// `KK*_{level+p}` of the size-`level` family.
    pub fn kk_star(&self, level: usize, p: usize) -> Count {
        at(&self.bounds(level).kk_star, p)
    }

    pub fn mu_star(&self, level: usize) -> usize {
        self.bounds(level).mu_star
    }

    pub fn kk_star_total(&self, level: usize) -> Count {
        self.bounds(level).kk_star_total
    }

    /// The join-only bound on `|C_{level+1}|`, ignoring the prune step.
    pub fn obvious_bound(&self, level: usize) -> Count {
        assert!(level >= 1, "bounds need level >= 1");
        match self.node {
            Some(root) => self.obvious(root, level),
            None => Count::zero(),
        }
    }

    fn obvious(&self, node: NodeId, remaining: usize) -> Count {
        let n = &self.trie.nodes[node as usize];
        if remaining == 1 {
            let members = self.member_children(n);
            return binomial(members, 2);
        }
        n.children
            .iter()
            .map(|&(_, c)| self.obvious(c, remaining - 1))
            .sum()
    }

    fn member_children(&self, n: &Node) -> u64 {
        n.children
            .iter()
            .filter(|&&(_, c)| self.trie.nodes[c as usize].state == NodeState::Frequent)
            .count() as u64
    }

    /// Depth-first `KK*` evaluation. `remaining` is the size of the family
    /// rooted at `node`, i.e. the distance to the member depth.
    fn star_profile(&self, node: NodeId, remaining: usize) -> StarProfile {
        let n = &self.trie.nodes[node as usize];
        if remaining == 1 {
            let count = self.member_children(n);
            // KK_1^{1+p}(n) = C(n, p+1)
            let star = canonical_rep_u64(count, 1).kk_profile(usize::MAX);
            return StarProfile { count, star };
        }
        let children: Vec<StarProfile> = n
            .children
            .iter()
            .map(|&(_, c)| self.star_profile(c, remaining - 1))
            .filter(|p| p.count > 0)
            .collect();
        let count: u64 = children.iter().map(|c| c.count).sum();
        if count == 0 {
            return StarProfile {
                count,
                star: Vec::new(),
            };
        }
        let longest = children.iter().map(|c| c.star.len()).max().unwrap_or(0);
        let kk_arm = canonical_rep(&Count::from(count), remaining).kk_profile(longest);
        let mut star = Vec::with_capacity(kk_arm.len());
        for (p, cap) in kk_arm.into_iter().enumerate() {
            let mut sum = Count::zero();
            let mut capped = false;
            for child in &children {
                if let Some(v) = child.star.get(p) {
                    sum += v;
                    if sum >= cap {
                        capped = true;
                        break;
                    }
                }
            }
            let value = if capped { cap } else { cmp::min(sum, cap) };
            if value.is_zero() {
                break;
            }
            star.push(value);
        }
        StarProfile { count, star }
    }
}
