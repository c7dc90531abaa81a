//! Exact binomial arithmetic, k-canonical representations and the
//! cardinality-only Kruskal–Katona bounds.
//!
//! Every count is an arbitrary-precision [`Count`]. Upper indices of binomial
//! terms are machine words: a count would have to exceed `C(2^64, k)` before
//! that becomes a limitation.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

/// A dimensionless, arbitrary-precision count of patterns.
pub type Count = BigUint;

/// `C(n, k)`, exact at any magnitude; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> Count {
    if k > n {
        return Count::zero();
    }
    let k = k.min(n - k);
    // After step i, acc == C(n, i); acc * (n - i) is divisible by i + 1.
    let mut acc: u128 = 1;
    for i in 0..k {
        match acc.checked_mul(u128::from(n - i)) {
            Some(v) => acc = v / u128::from(i + 1),
            None => {
                let mut big = Count::from(acc);
                for j in i..k {
                    big *= n - j;
                    big /= j + 1;
                }
                return big;
            }
        }
    }
    Count::from(acc)
}

/// One binomial term `C(upper, lower)` of a canonical representation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub upper: u64,
    pub lower: usize,
}

impl Term {
    pub fn value(&self) -> Count {
        binomial(self.upper, self.lower as u64)
    }
}

/// The k-canonical representation
/// `n = C(m_k, k) + C(m_{k-1}, k-1) + ... + C(m_r, r)`
/// with `m_k > m_{k-1} > ... > m_r` and `m_i >= i >= r >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalRep {
    level: usize,
    terms: Vec<Term>,
}

impl CanonicalRep {
    pub fn level(&self) -> usize {
        self.level
    }

    /// Terms ordered by descending lower index.
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(m_i, i)` pairs, as written in the representation.
    pub fn pairs(&self) -> Vec<(u64, usize)> {
        self.terms.iter().map(|t| (t.upper, t.lower)).collect()
    }

    /// Sum of all terms; equals the represented count.
    pub fn value(&self) -> Count {
        self.terms.iter().map(Term::value).sum()
    }

    /// `m_k`, the upper index of the leading term.
    pub fn leading_upper(&self) -> Option<u64> {
        self.terms.first().map(|t| t.upper)
    }

    /// Largest candidate size the represented family can reach; `level - 1`
    /// for the empty family.
    pub fn mu(&self) -> usize {
        match self.leading_upper() {
            Some(m) => m as usize,
            None => self.level - 1,
        }
    }

    /// `KK_k^{k+p}`: the terms `C(m_i, i+p)` down to the first one whose upper
    /// index falls below `i + p`. Since `m_i - i` never increases along the
    /// representation, every later term is zero as well.
    pub fn kk(&self, p: usize) -> Count {
        let mut sum = Count::zero();
        for t in &self.terms {
            if t.upper < (t.lower + p) as u64 {
                break;
            }
            sum += binomial(t.upper, (t.lower + p) as u64);
        }
        sum
    }

    /// `[KK^{k+1}, KK^{k+2}, ...]` up to the last nonzero value, truncated to
    /// at most `max_len` entries.
    pub fn kk_profile(&self, max_len: usize) -> Vec<Count> {
        let len = self.mu().saturating_sub(self.level).min(max_len);
        let mut profile = vec![Count::zero(); len];
        for t in &self.terms {
            let upper = t.upper as usize;
            if upper <= t.lower {
                continue;
            }
            let span = (upper - t.lower).min(len);
            // C(upper, lower + p) for p = 1..=span, by running ratio
            let mut c = binomial(t.upper, (t.lower + 1) as u64);
            for (p, slot) in profile.iter_mut().enumerate().take(span) {
                let lower = t.lower + p + 1;
                if p > 0 {
                    c *= (upper - lower + 1) as u64;
                    c /= lower as u64;
                }
                *slot += &c;
            }
        }
        profile
    }

    /// `KK_k^total`: sum of `KK_k^{k+p}` over all `p >= 1`.
    pub fn kk_total(&self) -> Count {
        let mut sum = Count::zero();
        for t in &self.terms {
            for lower in t.lower + 1..=t.upper as usize {
                sum += binomial(t.upper, lower as u64);
            }
        }
        sum
    }
}

/// Greedy k-canonical decomposition of `n`. `n = 0` yields no terms.
///
/// Panics if `level == 0`.
pub fn canonical_rep(n: &Count, level: usize) -> CanonicalRep {
    assert!(level >= 1, "canonical representation needs level >= 1");
    let mut rem = n.clone();
    let mut terms = Vec::new();
    let mut ceiling: Option<u64> = None;
    for lower in (1..=level).rev() {
        if rem.is_zero() {
            break;
        }
        let upper = largest_upper(&rem, lower, ceiling);
        rem -= binomial(upper, lower as u64);
        terms.push(Term { upper, lower });
        ceiling = Some(upper);
    }
    debug_assert!(rem.is_zero());
    CanonicalRep { level, terms }
}

/// Canonical representation of a machine-sized count.
pub fn canonical_rep_u64(n: u64, level: usize) -> CanonicalRep {
    canonical_rep(&Count::from(n), level)
}

/// Largest `m >= lower` with `C(m, lower) <= rem`, strictly below `ceiling`.
/// Requires `rem >= 1`.
fn largest_upper(rem: &Count, lower: usize, ceiling: Option<u64>) -> u64 {
    if lower == 1 {
        return rem
            .to_u64()
            .expect("level-1 canonical term exceeds the u64 upper-index range");
    }
    let k = lower as u64;
    let fits = |m: u64| binomial(m, k) <= *rem;
    let mut lo = k;
    let mut hi = match ceiling {
        Some(c) => c,
        None => {
            let mut step = 1u64;
            let mut hi = k + step;
            while fits(hi) {
                lo = hi;
                step = step.saturating_mul(2);
                hi = hi.saturating_add(step);
            }
            hi
        }
    };
    // invariant: fits(lo), !fits(hi)
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// `KK_k^{k+p}(n)`: the largest possible number of `(k+p)`-candidates over a
/// family of `n` k-patterns.
pub fn kk_bound(n: &Count, level: usize, p: usize) -> Count {
    if n.is_zero() {
        return Count::zero();
    }
    canonical_rep(n, level).kk(p)
}

/// `mu_k(n)`: upper bound on the size of any candidate; `k - 1` when `n = 0`.
pub fn mu(n: &Count, level: usize) -> usize {
    canonical_rep(n, level).mu()
}

/// `KK_k^total(n)`: bound on the number of candidates over all future levels.
pub fn kk_total(n: &Count, level: usize) -> Count {
    canonical_rep(n, level).kk_total()
}
