mod support;

use std::collections::{BTreeSet, HashSet};

use levelwise::{
    binomial, brute_force_candidates, brute_force_gen_candidates, canonical_rep, colex_family, g_mu, g_mu_star,
    gkk_bound, gkk_star, gkk_star_total, gkk_total, kk_bound, kk_total, maxsize, mu, recursive_gen_candidates,
    Count, ItemId, ItemSet, LevelFamilies, PatternTrie,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(n: u64) -> Count {
    Count::from(n)
}

fn sub_clamped(a: Count, b: usize) -> Count {
    let b = c(b as u64);
    if a > b {
        a - b
    } else {
        Count::zero()
    }
}

/// Family parameters: `(seed, k, universe)` with at most 12 items.
fn family_params() -> impl Strategy<Value = (u64, usize, ItemId)> {
    (any::<u64>(), 2usize..=4).prop_flat_map(|(seed, k)| (Just(seed), Just(k), (k as ItemId + 1)..=12))
}

fn family(seed: u64, k: usize, universe: ItemId) -> Vec<ItemSet> {
    support::random_family(&mut ChaCha8Rng::seed_from_u64(seed), k, universe, 80)
}

fn extension(seed: u64, k: usize, universe: ItemId) -> LevelFamilies {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = support::random_family(&mut rng, k, universe, 60);
    support::random_extension(&mut rng, k, base, universe)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_rep_reconstructs(n in 0u64..=1_000_000, k in 1usize..=10) {
        let rep = canonical_rep(&c(n), k);
        let total: Count = rep.terms().iter().map(|t| binomial(t.upper, t.lower as u64)).sum();
        prop_assert_eq!(total, c(n));
        for w in rep.terms().windows(2) {
            prop_assert!(w[0].upper > w[1].upper);
            prop_assert_eq!(w[0].lower, w[1].lower + 1);
        }
        for t in rep.terms() {
            prop_assert!(t.upper >= t.lower as u64 && t.lower >= 1);
        }
        if let Some(first) = rep.terms().first() {
            prop_assert_eq!(first.lower, k);
        }
    }

    #[test]
    fn kk_is_monotone_in_n(a in 0u64..100_000, b in 0u64..100_000, k in 1usize..=8, p in 1usize..=5) {
        let (lo, hi) = (a.min(b), a.max(b));
        prop_assert!(kk_bound(&c(lo), k, p) <= kk_bound(&c(hi), k, p));
    }

    #[test]
    fn kk_composes_levelwise(n in 0u64..100_000, k in 1usize..=8, p in 2usize..=5) {
        let step = kk_bound(&c(n), k, p - 1);
        prop_assert_eq!(kk_bound(&c(n), k, p), kk_bound(&step, k + p - 1, 1));
    }

    #[test]
    fn mu_is_last_nonzero_level(n in 1u64..100_000, k in 2usize..=8) {
        let first_zero = (1..).find(|&p| kk_bound(&c(n), k, p).is_zero()).unwrap();
        prop_assert_eq!(mu(&c(n), k), k + first_zero - 1);
        let sum: Count = (1..first_zero).map(|p| kk_bound(&c(n), k, p)).sum();
        prop_assert_eq!(kk_total(&c(n), k), sum);
    }

    #[test]
    fn kk_star_sandwich((seed, k, universe) in family_params()) {
        let l = family(seed, k, universe);
        let b = PatternTrie::from_family(&l).view().bounds(k);
        for p in 1..=4 {
            let actual = c(brute_force_candidates(&l, p).len() as u64);
            prop_assert!(actual <= b.kk_star_at(p), "p={} |C|={} KK*={}", p, actual, b.kk_star_at(p));
            prop_assert!(b.kk_star_at(p) <= b.kk_at(p));
            prop_assert_eq!(b.kk_at(p), kk_bound(&c(l.len() as u64), k, p));
        }
        prop_assert!(maxsize(&l) <= b.mu_star && b.mu_star <= b.mu);
    }

    #[test]
    fn candidates_come_from_projections((seed, k, universe) in family_params()) {
        let l = family(seed, k, universe);
        let trie = PatternTrie::from_family(&l);
        for p in 1..=3 {
            let mut union = BTreeSet::new();
            for x in trie.top_level_items() {
                let lx = trie.project(x).patterns_at(k - 1);
                for s in brute_force_candidates(&lx, p) {
                    union.insert(s.with(x));
                }
            }
            for s in brute_force_candidates(&l, p) {
                prop_assert!(union.contains(&s), "{:?} missing from projections", s);
            }
        }
    }

    #[test]
    fn generated_candidates_match_definition((seed, k, universe) in family_params()) {
        let l = family(seed, k, universe);
        let generated = PatternTrie::from_family(&l).generate_candidates(k);
        prop_assert_eq!(generated, brute_force_candidates(&l, 1));
    }

    #[test]
    fn relabeling_never_drops_below_enumeration((seed, k, universe) in family_params(), perm_seed in any::<u64>()) {
        let l = family(seed, k, universe);
        let mut perm: Vec<ItemId> = (1..=universe).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let relabeled: Vec<ItemSet> = l
            .iter()
            .map(|s| ItemSet::new(s.items().iter().map(|&x| perm[x as usize - 1]).collect()))
            .collect();
        let b = PatternTrie::from_family(&relabeled).view().bounds(k);
        for p in 1..=4 {
            let actual = brute_force_candidates(&l, p).len() as u64;
            prop_assert_eq!(brute_force_candidates(&relabeled, p).len() as u64, actual);
            prop_assert!(c(actual) <= b.kk_star_at(p));
        }
    }

    #[test]
    fn generalized_chains((seed, k, universe) in family_params()) {
        let f = extension(seed, k, universe);
        prop_assert!(f.validate().is_ok());
        let base = f.frequent(0).to_vec();
        let b = PatternTrie::from_family(&base).view().bounds(k);
        let (sl, si) = (f.frequent_sizes(), f.infrequent_sizes());
        for p in 1..=4 {
            let known = f.frequent(p).len() + f.infrequent(p).len();
            let actual = c(brute_force_gen_candidates(&f, p).len() as u64);
            let star = gkk_star(&f, p);
            prop_assert!(actual <= star, "p={} |C|={} gKK*={}", p, actual, star);
            prop_assert!(star <= sub_clamped(b.kk_star_at(p), known));
            prop_assert!(actual <= gkk_bound(&sl, &si, k, p));
            prop_assert!(gkk_bound(&sl, &si, k, p) <= sub_clamped(b.kk_at(p), known));
        }
        prop_assert!(g_mu_star(&f) <= b.mu_star);
        prop_assert!(g_mu(&sl, &si, k) <= b.mu);
    }

    #[test]
    fn recursion_matches_direct_enumeration(seed in any::<u64>(), k in 1usize..=3) {
        let universe = k as ItemId + 5;
        let f = extension(seed, k, universe);
        for p in 1..=4 {
            prop_assert_eq!(recursive_gen_candidates(&f, p), brute_force_gen_candidates(&f, p));
        }
    }

    #[test]
    fn generalized_reduces_without_side_information((seed, k, universe) in family_params()) {
        let l = family(seed, k, universe);
        let f = LevelFamilies::base(k, l.clone());
        let n = l.len() as u64;
        let b = PatternTrie::from_family(&l).view().bounds(k);
        for p in 1..=4 {
            prop_assert_eq!(gkk_bound(&[n], &[], k, p), kk_bound(&c(n), k, p));
            prop_assert_eq!(gkk_star(&f, p), b.kk_star_at(p));
            prop_assert_eq!(brute_force_gen_candidates(&f, p), brute_force_candidates(&l, p));
        }
        prop_assert_eq!(g_mu(&[n], &[], k), mu(&c(n), k));
        prop_assert_eq!(gkk_total(&[n], &[], k), kk_total(&c(n), k));
        prop_assert_eq!(g_mu_star(&f), b.mu_star);
        prop_assert_eq!(gkk_star_total(&f), b.kk_star_total);
    }

    #[test]
    fn enumeration_is_monotone_in_family((seed, k, universe) in family_params(), extra in any::<u64>()) {
        let l = family(seed, k, universe);
        let more: HashSet<ItemSet> = l.iter().cloned().chain(family(extra, k, universe)).collect();
        let mut more: Vec<ItemSet> = more.into_iter().collect();
        more.sort();
        for p in 1..=3 {
            let small: HashSet<ItemSet> = brute_force_candidates(&l, p).into_iter().collect();
            let large: HashSet<ItemSet> = brute_force_candidates(&more, p).into_iter().collect();
            prop_assert!(small.is_subset(&large));
        }
    }
}

#[test]
fn singletons_reach_their_count() {
    for n in 1..=40u64 {
        assert_eq!(mu(&c(n), 1), n as usize);
        assert_eq!(kk_bound(&c(n), 1, 1), binomial(n, 2));
    }
}

#[test]
fn colex_families_are_extremal() {
    for k in 2..=4 {
        for n in 1..=60u64 {
            let l = colex_family(n, k);
            assert_eq!(l.len() as u64, n);
            for p in 1..=3 {
                assert_eq!(c(brute_force_candidates(&l, p).len() as u64), kk_bound(&c(n), k, p), "n={n} k={k} p={p}");
            }
            assert_eq!(maxsize(&l), mu(&c(n), k));
        }
    }
}
