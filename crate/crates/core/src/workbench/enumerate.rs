//! Exhaustive enumeration of small C_n lattices and symplectic matroids,
//! up to signed permutations of `J`.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use crate::bits::{is_subset, ones, popcount};
use crate::lattice::{is_cn_lattice, Ground, SetLattice};
use crate::par;
use crate::signed::{admissible_bits, admissible_subsets, full_mask, star_bits};
use crate::symplectic::{is_symplectic, BasisFamily};

use super::symmetry::{canonical_form, group};

/// The result of a possibly time-limited enumeration.
#[derive(Clone, Debug)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    /// Set when the budget ran out; `items` is then a partial list.
    pub truncated: bool,
}

/// Number of leading decisions that are fanned out across workers.
const FAN_OUT_DEPTH: usize = 8;

struct Search<'a> {
    n: usize,
    j: u64,
    /// Nonempty admissible sets, largest first.
    sets: &'a [u64],
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
}

impl Search<'_> {
    fn out_of_time(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.expired.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    /// Covers of `a` among the chosen sets (plus `J`).
    fn covers(&self, a: u64, chosen: &[u64]) -> Vec<u64> {
        let above: Vec<u64> = chosen
            .iter()
            .copied()
            .chain(std::iter::once(self.j))
            .filter(|&b| b != a && is_subset(a, b))
            .collect();
        above
            .iter()
            .copied()
            .filter(|&b| !above.iter().any(|&c| c != b && is_subset(c, b)))
            .collect()
    }

    /// The cover axiom at `a`, which is final once every superset of `a`
    /// has been decided.
    fn cover_axiom(&self, a: u64, chosen: &[u64]) -> bool {
        let covers = self.covers(a, chosen);
        if covers.contains(&self.j) {
            return true;
        }
        let pairwise = covers
            .iter()
            .enumerate()
            .all(|(k, &b)| covers[k + 1..].iter().all(|&c| b & c == a));
        let union = covers.iter().fold(a, |acc, &b| acc | b);
        pairwise && union == self.j & !star_bits(a, self.n)
    }

    /// Decides `sets[k..]`; `chosen` holds the included sets, `required` the
    /// intersections that must still be included.
    fn go(&self, k: usize, chosen: &mut Vec<u64>, required: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if self.out_of_time() {
            return;
        }
        if k == self.sets.len() {
            if self.cover_axiom(0, chosen) {
                out.push(chosen.clone());
            }
            return;
        }
        let x = self.sets[k];
        let forced = required.contains(&x);
        // Include x.
        if self.cover_axiom(x, chosen) {
            let before = required.len();
            for &y in chosen.iter() {
                let m = x & y;
                if m != 0 && !required.contains(&m) {
                    required.push(m);
                }
            }
            chosen.push(x);
            self.go(k + 1, chosen, required, out);
            chosen.pop();
            required.truncate(before);
        }
        // Exclude x.
        if !forced {
            self.go(k + 1, chosen, required, out);
        }
    }
}

fn nonempty_admissible(n: usize) -> Vec<u64> {
    let mut sets: Vec<u64> = admissible_subsets(full_mask(n), n).filter(|&m| m != 0).collect();
    sets.sort_by_key(|&m| (std::cmp::Reverse(popcount(m)), m));
    sets
}

/// Canonical representatives, sorted by canonical form.
fn dedupe(families: Vec<Vec<u64>>, n: usize) -> Vec<Vec<u64>> {
    let g = group(n);
    let canon = par::map(&families, |f| canonical_form(f, &g));
    let unique: BTreeMap<Vec<u64>, ()> = canon.into_iter().map(|c| (c, ())).collect();
    unique.into_keys().collect()
}

/// All C_n lattices on `J` up to signed permutations, in canonical-form
/// order. The search decides admissible sets from largest to smallest,
/// enforcing closure under intersection and the cover axiom as soon as they
/// become decidable; leading decisions are split across workers.
pub fn enumerate_cn(n: usize, budget: Option<Duration>) -> Enumeration<SetLattice> {
    assert!((1..=3).contains(&n), "enumeration supports n = 1, 2, 3");
    let sets = nonempty_admissible(n);
    let expired = AtomicBool::new(false);
    let search = Search {
        n,
        j: full_mask(n),
        sets: &sets,
        deadline: budget.map(|b| Instant::now() + b),
        expired: &expired,
    };
    let depth = FAN_OUT_DEPTH.min(sets.len());
    // Prefixes are include/exclude patterns on the first `depth` sets.
    let prefixes: Vec<u64> = (0..1u64 << depth).collect();
    let found: Vec<Vec<Vec<u64>>> = par::map(&prefixes, |&pattern| {
        let mut chosen = Vec::new();
        let mut required = Vec::new();
        for (k, &x) in sets[..depth].iter().enumerate() {
            let include = pattern >> k & 1 == 1;
            if include {
                if !search.cover_axiom(x, &chosen) {
                    return Vec::new();
                }
                for &y in &chosen {
                    let m = x & y;
                    if m != 0 && !required.contains(&m) {
                        required.push(m);
                    }
                }
                chosen.push(x);
            } else if required.contains(&x) {
                return Vec::new();
            }
        }
        let mut out = Vec::new();
        search.go(depth, &mut chosen, &mut required, &mut out);
        out
    });
    let families: Vec<Vec<u64>> = found
        .into_iter()
        .flatten()
        .map(|mut f| {
            f.push(0);
            f.push(full_mask(n));
            f
        })
        .collect();
    let items = dedupe(families, n)
        .into_iter()
        .map(|f| SetLattice::build(Ground::signed(n), f).expect("bounded family"))
        .filter(|l| is_cn_lattice(l).is_ok())
        .collect();
    Enumeration {
        items,
        truncated: expired.load(Ordering::Relaxed),
    }
}

/// All symplectic matroids of rank `k` on `J`, up to signed permutations.
pub fn enumerate_symplectic(n: usize, k: usize) -> Vec<BasisFamily> {
    assert!((1..=3).contains(&n) && k <= n, "needs n ≤ 3 and k ≤ n");
    let candidates: Vec<u64> = admissible_subsets(full_mask(n), n)
        .filter(|&m| popcount(m) == k)
        .collect();
    let picks: Vec<u64> = (1u64..1 << candidates.len()).collect();
    let families: Vec<Vec<u64>> = par::map(&picks, |&pick| {
        let bases: Vec<u64> = ones(pick).map(|b| candidates[b as usize]).collect();
        let family = BasisFamily::new(n, bases.iter().copied()).expect("admissible bases");
        is_symplectic(&family).is_ok().then_some(bases)
    })
    .into_iter()
    .flatten()
    .collect();
    dedupe(families, n)
        .into_iter()
        .map(|f| BasisFamily::new(n, f).expect("admissible bases"))
        .collect()
}

/// Bounded, atomistic, graded lattices formed by an intersection-closed
/// family of admissible subsets (containing `∅`) topped with `J`, with at
/// most `max_atoms` atoms, up to signed permutations.
pub fn admissible_lattices(n: usize, max_atoms: usize) -> Vec<SetLattice> {
    assert!((1..=2).contains(&n), "needs n ≤ 2");
    let sets = nonempty_admissible(n);
    let picks: Vec<u64> = (0u64..1 << sets.len()).collect();
    let families: Vec<Vec<u64>> = par::map(&picks, |&pick| {
        let chosen: Vec<u64> = ones(pick).map(|b| sets[b as usize]).collect();
        let closed = chosen
            .iter()
            .all(|&x| chosen.iter().all(|&y| x & y == 0 || chosen.contains(&(x & y))));
        closed.then(|| {
            let mut f = chosen;
            f.push(0);
            f.push(full_mask(n));
            f
        })
    })
    .into_iter()
    .flatten()
    .collect();
    dedupe(families, n)
        .into_iter()
        .map(|f| SetLattice::build(Ground::signed(n), f).expect("bounded family"))
        .filter(|l| l.check_bag().is_ok() && l.atoms().len() <= max_atoms)
        .collect()
}

/// Whether `family` consists of admissible sets only.
pub fn all_admissible(family: &[u64], n: usize) -> bool {
    family.iter().all(|&m| admissible_bits(m, n))
}
