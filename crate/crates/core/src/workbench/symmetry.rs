//! The hyperoctahedral group acting on `J`.

use itertools::Itertools;

use crate::signed::MAX_N;

/// A signed permutation: `i ↦ perm[i]`, starred when `flip` has bit `i`.
/// Always commutes with star, so it preserves admissibility.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    n: usize,
    perm: Vec<usize>,
    flip: u64,
}

impl SignedPermutation {
    pub fn new(perm: Vec<usize>, flip: u64) -> Option<SignedPermutation> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        (n <= MAX_N && flip >> n == 0).then_some(SignedPermutation { n, perm, flip })
    }

    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation {
            n,
            perm: (0..n).collect(),
            flip: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Image of a subset of `J`.
    pub fn apply(&self, mask: u64) -> u64 {
        let n = self.n;
        let mut out = 0u64;
        for i in 0..n {
            let f = self.flip >> i & 1;
            let (lo, hi) = (mask >> i & 1, mask >> (n + i) & 1);
            let (to_lo, to_hi) = if f == 1 { (hi, lo) } else { (lo, hi) };
            out |= to_lo << self.perm[i] | to_hi << (n + self.perm[i]);
        }
        out
    }

    /// Image of a family, sorted.
    pub fn apply_family(&self, family: &[u64]) -> Vec<u64> {
        let mut v: Vec<u64> = family.iter().map(|&m| self.apply(m)).collect();
        v.sort_unstable();
        v
    }
}

/// All `2^n · n!` signed permutations, in a fixed order.
pub fn group(n: usize) -> Vec<SignedPermutation> {
    (0..n)
        .permutations(n)
        .flat_map(|perm| {
            (0..1u64 << n).map(move |flip| SignedPermutation {
                n,
                perm: perm.clone(),
                flip,
            })
        })
        .collect()
}

/// The lexicographically least sorted image of `family` under the group.
pub fn canonical_form(family: &[u64], group: &[SignedPermutation]) -> Vec<u64> {
    group.iter().map(|g| g.apply_family(family)).min().unwrap_or_else(|| {
        let mut v = family.to_vec();
        v.sort_unstable();
        v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::{admissible_bits, star_bits, SignedSet};

    #[test]
    fn group_sizes() {
        assert_eq!(group(1).len(), 2);
        assert_eq!(group(2).len(), 8);
        assert_eq!(group(3).len(), 48);
    }

    #[test]
    fn commutes_with_star() {
        for n in 1..=3 {
            for g in group(n) {
                for m in 0..1u64 << (2 * n) {
                    assert_eq!(g.apply(star_bits(m, n)), star_bits(g.apply(m), n));
                    assert_eq!(admissible_bits(g.apply(m), n), admissible_bits(m, n));
                }
            }
        }
    }

    #[test]
    fn a_flip_swaps_one_pair() {
        let g = SignedPermutation::new(vec![1, 0], 0b01).unwrap();
        let s = SignedSet::parse(2, &["1", "2"]).unwrap().bits();
        assert_eq!(g.apply(s), SignedSet::parse(2, &["2*", "1"]).unwrap().bits());
        assert!(SignedPermutation::new(vec![0, 0], 0).is_none());
    }

    #[test]
    fn canonical_form_is_an_invariant() {
        let g = group(2);
        let fam = [0u64, 0b0001, 0b1111];
        let c = canonical_form(&fam, &g);
        for h in &g {
            assert_eq!(canonical_form(&h.apply_family(&fam), &g), c);
        }
    }
}
