//! Spikes with no tip: the doubled n-cycle as a biased graph.
//!
//! Edge `i` and its parallel copy `i*` join vertices `i` and `i + 1 (mod n)`.
//! The simple cycles are the digons `{i, i*}` and the `2^n` transversals,
//! so everything here works on that census rather than on an explicit graph.

use crate::bits::{ones, popcount, submasks};
use crate::error::{Diagnostic, Error, Result, Verdict};
use crate::lattice::SetLattice;
use crate::matroid::IndependenceFamily;
use crate::signed::{admissible_bits, full_mask, star_bits, transversals, SignedSet};
use crate::symplectic::{remark_4_11_check, show, symplectic_to_lattice, BasisFamily};

/// A doubled n-cycle with a family of balanced transversal cycles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SpikeGraph {
    n: usize,
    balanced: Vec<u64>,
}

impl SpikeGraph {
    pub fn new<I: IntoIterator<Item = u64>>(n: usize, balanced: I) -> Result<SpikeGraph> {
        if !(2..=16).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let mut v: Vec<u64> = balanced.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if let Some(&m) = v
            .iter()
            .find(|&&m| popcount(m) != n || !admissible_bits(m, n) || m & !full_mask(n) != 0)
        {
            return Err(Error::Precondition(format!(
                "balanced cycle {} is not a transversal",
                show(n, m)
            )));
        }
        Ok(SpikeGraph { n, balanced: v })
    }

    pub fn from_sets(n: usize, balanced: &[SignedSet]) -> Result<SpikeGraph> {
        SpikeGraph::new(n, balanced.iter().map(|s| s.bits()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn balanced(&self) -> &[u64] {
        &self.balanced
    }

    pub fn is_balanced(&self, cycle: u64) -> bool {
        self.balanced.binary_search(&cycle).is_ok()
    }

    /// Every simple cycle: the digons, then the transversals.
    pub fn cycles(&self) -> Vec<u64> {
        let n = self.n;
        let digons = (0..n).map(|i| 1u64 << i | 1u64 << (n + i));
        digons.chain(transversals(n).map(|t| t.bits())).collect()
    }
}

/// When two balanced cycles count as "meeting in a nonempty path".
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ThetaReading {
    /// Their union is a theta graph: the transversals differ in exactly one
    /// position and share the remaining `n − 1` edges as one path. The third
    /// cycle is then the digon at the differing position.
    #[default]
    Graph,
    /// The positions where the two transversals pick the same edge contain a
    /// nonempty arc (any single shared position qualifies). The third cycle
    /// is read as the symmetric difference, which is never a transversal.
    Arc,
}

/// The theta property under the default reading.
pub fn theta_check(g: &SpikeGraph) -> Verdict {
    theta_check_with(g, ThetaReading::Graph)
}

pub fn theta_check_with(g: &SpikeGraph, reading: ThetaReading) -> Verdict {
    let n = g.n;
    let low = (1u64 << n) - 1;
    for (k, &c1) in g.balanced.iter().enumerate() {
        for &c2 in &g.balanced[k + 1..] {
            let shared = popcount(c1 & c2);
            let qualifies = match reading {
                ThetaReading::Graph => shared == n - 1,
                ThetaReading::Arc => shared >= 1,
            };
            if !qualifies {
                continue;
            }
            let third = c1 ^ c2;
            if !g.is_balanced(third) {
                let differ = (third | star_bits(third, n)) & low;
                return Err(Diagnostic::new(
                    "theta",
                    format!(
                        "third cycle {} of the union is not balanced (differing positions {:?})",
                        show(n, third),
                        ones(differ).map(|b| b + 1).collect::<Vec<_>>()
                    ),
                )
                .with_witness([show(n, c1), show(n, c2), show(n, third)]));
            }
        }
    }
    Ok(())
}

/// Edge sets containing at most one cycle, which is unbalanced.
pub fn lift_independents(g: &SpikeGraph) -> Result<IndependenceFamily> {
    theta_check(g).map_err(|d| Error::Precondition(format!("theta property fails: {d}")))?;
    Ok(lift_independents_unchecked(g))
}

pub(crate) fn lift_independents_unchecked(g: &SpikeGraph) -> IndependenceFamily {
    let cycles = g.cycles();
    let j = full_mask(g.n);
    IndependenceFamily::new(
        j,
        submasks(j).filter(|&x| {
            let mut inside = cycles.iter().filter(|&&c| c & !x == 0);
            match (inside.next(), inside.next()) {
                (None, _) => true,
                (Some(&c), None) => !g.is_balanced(c),
                _ => false,
            }
        }),
    )
    .expect("subsets of J")
}

/// The admissible-flat C_n lattice and admissible bases of the lift matroid.
pub fn spike_to_symplectic(g: &SpikeGraph) -> Result<(SetLattice, BasisFamily)> {
    let lift = lift_independents(g)?;
    let bases = match remark_4_11_check(&lift, g.n)? {
        Ok(b) => b,
        Err(d) => {
            return Err(Error::Internal(format!(
                "lift matroid rank differs from the induced symplectic rank: {d}"
            )))
        }
    };
    let admissible = lift.filter(|s| admissible_bits(s, g.n));
    let lattice = symplectic_to_lattice(&admissible, g.n, None)?;
    Ok((lattice, bases))
}

/// Every balanced-cycle family on the doubled n-cycle that satisfies the
/// theta property under `reading`.
pub fn all_spikes(n: usize, reading: ThetaReading) -> Vec<SpikeGraph> {
    let ts: Vec<u64> = transversals(n).map(|t| t.bits()).collect();
    (0u64..1 << ts.len())
        .filter_map(|pick| {
            let g = SpikeGraph::new(n, ones(pick).map(|k| ts[k as usize])).ok()?;
            theta_check_with(&g, reading).is_ok().then_some(g)
        })
        .collect()
}
