//! Independence families and ordinary matroids on small ground sets.
//!
//! Ground sets are bitmasks (atoms of a lattice, or `J`); all tables are
//! indexed through a [`Compressor`] so that sparse ground sets cost no more
//! than dense ones.

use std::collections::HashSet;

use crate::bits::{is_subset, ones, popcount, submasks, Compressor};
use crate::error::{Diagnostic, Error, Result, Verdict};

/// Largest ground set for which rank tables are materialised.
pub const MAX_TABLE_WIDTH: usize = 24;

/// A family of subsets of a ground mask. Usually downward closed, but the
/// type does not insist on it so that malformed inputs can be diagnosed.
#[derive(Clone, Debug)]
pub struct IndependenceFamily {
    ground: u64,
    members: Vec<u64>,
    lookup: HashSet<u64>,
}

impl PartialEq for IndependenceFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for IndependenceFamily {}

impl IndependenceFamily {
    /// Members are deduplicated and sorted by size, then mask.
    pub fn new<I: IntoIterator<Item = u64>>(ground: u64, members: I) -> Result<Self> {
        let lookup: HashSet<u64> = members.into_iter().collect();
        if let Some(&stray) = lookup.iter().find(|&&m| !is_subset(m, ground)) {
            return Err(Error::Precondition(format!(
                "member {stray:#b} is not a subset of the ground set {ground:#b}"
            )));
        }
        let mut members: Vec<u64> = lookup.iter().copied().collect();
        members.sort_by_key(|&m| (popcount(m), m));
        Ok(IndependenceFamily {
            ground,
            members,
            lookup,
        })
    }

    /// The downward closure of `generators`.
    pub fn closure_of<I: IntoIterator<Item = u64>>(ground: u64, generators: I) -> Result<Self> {
        let mut all = HashSet::new();
        for g in generators {
            if all.contains(&g) {
                continue;
            }
            all.extend(submasks(g));
        }
        if all.is_empty() {
            all.insert(0);
        }
        IndependenceFamily::new(ground, all)
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: u64) -> bool {
        self.lookup.contains(&set)
    }

    pub fn max_size(&self) -> usize {
        self.members.last().map_or(0, |&m| popcount(m))
    }

    /// Members of a given size.
    pub fn of_size(&self, k: usize) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied().filter(move |&m| popcount(m) == k)
    }

    /// Inclusion-maximal members.
    pub fn maximal(&self) -> Vec<u64> {
        self.members
            .iter()
            .copied()
            .filter(|&m| {
                ones(self.ground & !m).all(|b| !self.contains(m | 1 << b))
                    && !self.members.iter().any(|&o| o != m && is_subset(m, o))
            })
            .collect()
    }

    /// First member with a missing immediate subset: `(member, subset)`.
    pub fn closure_defect(&self) -> Option<(u64, u64)> {
        if !self.contains(0) {
            return Some((self.members.first().copied().unwrap_or(0), 0));
        }
        self.members.iter().find_map(|&m| {
            ones(m)
                .map(|b| m & !(1 << b))
                .find(|s| !self.contains(*s))
                .map(|s| (m, s))
        })
    }

    pub fn is_downward_closed(&self) -> bool {
        self.closure_defect().is_none()
    }

    /// Members contained in `mask`, on the ground set `mask`.
    pub fn restrict(&self, mask: u64) -> IndependenceFamily {
        IndependenceFamily::new(
            self.ground & mask,
            self.members.iter().copied().filter(|&m| is_subset(m, mask)),
        )
        .expect("restriction stays inside the ground set")
    }

    /// `{ I ∩ mask | I ∈ self }` on the ground set `mask`.
    pub fn trace(&self, mask: u64) -> IndependenceFamily {
        IndependenceFamily::new(self.ground & mask, self.members.iter().map(|&m| m & mask))
            .expect("trace stays inside the ground set")
    }

    pub fn filter<F: Fn(u64) -> bool>(&self, keep: F) -> IndependenceFamily {
        IndependenceFamily::new(self.ground, self.members.iter().copied().filter(|&m| keep(m)))
            .expect("filtering keeps the ground set")
    }

    /// Checks the independence axioms: nonempty, downward closed, and the
    /// exchange property. Exchange is only tested between sizes `k` and
    /// `k + 1`, which implies it for all size gaps in a downward-closed family.
    pub fn check_matroid_axioms(&self) -> Verdict {
        if !self.contains(0) {
            return Err(Diagnostic::new("I1", "the empty set is not independent"));
        }
        if let Some((m, s)) = self.closure_defect() {
            return Err(
                Diagnostic::new("I2", "not closed under subsets").with_witness([format!("{m:#b}"), format!("{s:#b}")])
            );
        }
        let by_size: Vec<Vec<u64>> = (0..=self.max_size()).map(|k| self.of_size(k).collect()).collect();
        for k in 0..by_size.len().saturating_sub(1) {
            for &small in &by_size[k] {
                for &big in &by_size[k + 1] {
                    if !ones(big & !small).any(|b| self.contains(small | 1 << b)) {
                        return Err(Diagnostic::new("I3", "exchange fails")
                            .with_witness([format!("{small:#b}"), format!("{big:#b}")]));
                    }
                }
            }
        }
        Ok(())
    }
}

/// An ordinary matroid stored as a full rank table over its ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: u64,
    comp: Compressor,
    rank: Vec<u8>,
}

fn table_compressor(ground: u64) -> Result<Compressor> {
    let comp = Compressor::new(ground);
    if comp.width() > MAX_TABLE_WIDTH {
        return Err(Error::TooLarge(format!("rank table over {} elements", comp.width())));
    }
    Ok(comp)
}

impl Matroid {
    /// Validates the independence axioms and tabulates
    /// `r(S) = max { |I| : I ⊆ S independent }`.
    pub fn from_family(family: &IndependenceFamily) -> Result<Matroid, Diagnostic> {
        family.check_matroid_axioms()?;
        let comp = table_compressor(family.ground()).map_err(|e| Diagnostic::new("size", e.to_string()))?;
        Ok(Matroid::tabulate(family, comp))
    }

    /// Maximum independent subset size, without checking the axioms.
    pub(crate) fn tabulate(family: &IndependenceFamily, comp: Compressor) -> Matroid {
        let mut rank = vec![0u8; comp.table_len()];
        for idx in 1..rank.len() {
            let s = comp.expand(idx);
            rank[idx] = if family.contains(s) {
                popcount(s) as u8
            } else {
                (0..comp.width())
                    .filter(|&p| idx >> p & 1 == 1)
                    .map(|p| rank[idx & !(1 << p)])
                    .max()
                    .unwrap_or(0)
            };
        }
        Matroid {
            ground: family.ground(),
            comp,
            rank,
        }
    }

    /// Builds a matroid from a rank function after checking the rank axioms.
    pub fn from_rank_fn<F: Fn(u64) -> usize>(ground: u64, r: F) -> Result<Matroid, Diagnostic> {
        let comp = table_compressor(ground).map_err(|e| Diagnostic::new("size", e.to_string()))?;
        let rank: Vec<u8> = (0..comp.table_len()).map(|i| r(comp.expand(i)) as u8).collect();
        let m = Matroid { ground, comp, rank };
        check_rank_axioms(ground, |s| m.rank(s))?;
        Ok(m)
    }

    pub fn ground(&self) -> u64 {
        self.ground
    }

    pub fn rank(&self, set: u64) -> usize {
        self.rank[self.comp.compress(set & self.ground)] as usize
    }

    pub fn full_rank(&self) -> usize {
        self.rank(self.ground)
    }

    pub fn is_independent(&self, set: u64) -> bool {
        self.rank(set) == popcount(set)
    }

    pub fn closure(&self, set: u64) -> u64 {
        let r = self.rank(set);
        ones(self.ground).fold(set, |acc, b| {
            if self.rank(set | 1 << b) == r {
                acc | 1 << b
            } else {
                acc
            }
        })
    }

    pub fn is_flat(&self, set: u64) -> bool {
        self.closure(set) == set
    }

    /// All flats, sorted by size then mask.
    pub fn flats(&self) -> Vec<u64> {
        let mut out: Vec<u64> = (0..self.comp.table_len())
            .map(|i| self.comp.expand(i))
            .filter(|&s| self.is_flat(s))
            .collect();
        out.sort_by_key(|&m| (popcount(m), m));
        out
    }

    pub fn independents(&self) -> IndependenceFamily {
        IndependenceFamily::new(
            self.ground,
            (0..self.comp.table_len())
                .map(|i| self.comp.expand(i))
                .filter(|&s| self.is_independent(s)),
        )
        .expect("subsets of the ground set")
    }

    pub fn bases(&self) -> Vec<u64> {
        let r = self.full_rank();
        self.independents().of_size(r).collect()
    }
}

/// Matroid rank axioms over every subset of `ground`: `r(∅) = 0`, unit
/// increase `r(S) ≤ r(S + x) ≤ r(S) + 1`, and local submodularity
/// `r(S + x) + r(S + y) ≥ r(S) + r(S + x + y)`, which together with unit
/// increase is equivalent to full submodularity.
pub fn check_rank_axioms<F: Fn(u64) -> usize>(ground: u64, r: F) -> Verdict {
    check_rank_axioms_with(ground, r, |s| format!("{s:#b}"))
}

/// [`check_rank_axioms`] with witnesses rendered by `show`.
pub fn check_rank_axioms_with<F, S>(ground: u64, r: F, show: S) -> Verdict
where
    F: Fn(u64) -> usize,
    S: Fn(u64) -> String,
{
    if r(0) != 0 {
        return Err(Diagnostic::new("normalization", format!("r(∅) = {}", r(0))));
    }
    // Unit increase is checked everywhere first so that a function which
    // jumps is reported as such rather than as a submodularity failure.
    let comp = Compressor::new(ground);
    for idx in 0..comp.table_len() {
        let s = comp.expand(idx);
        let rs = r(s);
        for x in ones(ground & !s) {
            let rsx = r(s | 1 << x);
            if rsx < rs || rsx > rs + 1 {
                return Err(
                    Diagnostic::new("unit-increase", format!("r(S) = {rs}, r(S + x) = {rsx}"))
                        .with_witness([show(s), show(1u64 << x)]),
                );
            }
        }
    }
    for idx in 0..comp.table_len() {
        let s = comp.expand(idx);
        let rs = r(s);
        let outside: Vec<u32> = ones(ground & !s).collect();
        for (i, &x) in outside.iter().enumerate() {
            for &y in &outside[i + 1..] {
                let lhs = r(s | 1 << x) + r(s | 1 << y);
                let rhs = rs + r(s | 1 << x | 1 << y);
                if lhs < rhs {
                    return Err(Diagnostic::new(
                        "submodularity",
                        format!("r(S+x) + r(S+y) = {lhs} < {rhs} = r(S) + r(S+x+y)"),
                    )
                    .with_witness([show(s), show(1u64 << x), show(1u64 << y)]));
                }
            }
        }
    }
    Ok(())
}

/// `U_{k,m}` on the given ground mask.
pub fn uniform(ground: u64, k: usize) -> IndependenceFamily {
    IndependenceFamily::new(ground, submasks(ground).filter(|&s| popcount(s) <= k)).expect("subsets of the ground set")
}
