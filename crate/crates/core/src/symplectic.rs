//! Symplectic matroids and their correspondence with C_n lattices.
//!
//! A symplectic matroid is a family of equal-size admissible bases with a
//! unique Gale-maximal member under every admissible order of `J`. A C_n
//! lattice yields one through ground-level NBB independence; the inverse map
//! takes the admissible flats of the matroid whose rank function is built
//! from the admissible independent sets.

use itertools::Itertools;

use crate::bits::{is_subset, ones, popcount, submasks};
use crate::error::{Diagnostic, Error, Result, Verdict};
use crate::lattice::{is_cn_lattice, Ground, SetLattice};
use crate::matroid::{check_rank_axioms_with, IndependenceFamily, Matroid};
use crate::nbb::{Engine, Strategy};
use crate::par;
use crate::signed::{
    admissible_bits, admissible_orders, full_mask, gale_leq_bits, star_bits, transversals, SignedSet, MAX_N,
};

pub(crate) fn show(n: usize, mask: u64) -> String {
    SignedSet::from_bits(n, mask)
        .map(|s| s.to_string())
        .unwrap_or_else(|_| format!("{mask:#b}"))
}

/// A family of subsets of `J` proposed as the bases of a symplectic matroid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisFamily {
    n: usize,
    bases: Vec<u64>,
}

impl BasisFamily {
    /// Bases are sorted by mask; duplicates and members outside `J` are
    /// rejected. Equal size and admissibility are *not* required here so that
    /// [`is_symplectic`] can report them.
    pub fn new<I: IntoIterator<Item = u64>>(n: usize, bases: I) -> Result<BasisFamily> {
        if !(1..=MAX_N).contains(&n) {
            return Err(Error::UnsupportedSize(n));
        }
        let mut v: Vec<u64> = bases.into_iter().collect();
        v.sort_unstable();
        if let Some((a, _)) = v.iter().tuple_windows().find(|(a, b)| a == b) {
            return Err(Error::Duplicate(show(n, *a)));
        }
        if let Some(&m) = v.iter().find(|&&m| !is_subset(m, full_mask(n))) {
            return Err(Error::OutOfRange {
                element: format!("{m:#b}"),
                n,
            });
        }
        Ok(BasisFamily { n, bases: v })
    }

    pub fn from_sets(n: usize, sets: &[SignedSet]) -> Result<BasisFamily> {
        BasisFamily::new(n, sets.iter().map(|s| s.bits()))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bases(&self) -> &[u64] {
        &self.bases
    }

    pub fn rank(&self) -> Option<usize> {
        self.bases.first().map(|&b| popcount(b))
    }

    pub fn render(&self) -> Vec<String> {
        self.bases.iter().map(|&b| show(self.n, b)).collect()
    }

    /// Every subset of some basis.
    pub fn independents(&self) -> IndependenceFamily {
        IndependenceFamily::closure_of(full_mask(self.n), self.bases.iter().copied()).expect("bases lie inside J")
    }
}

/// Gale-maximal bases under `order`; stops as soon as two incomparable
/// maxima are known.
fn gale_maxima(bases: &[u64], order: &crate::signed::GroundOrder) -> Vec<u64> {
    let mut maxima: Vec<u64> = Vec::new();
    for &b in bases {
        if maxima.iter().any(|&m| gale_leq_bits(b, m, order)) {
            continue;
        }
        maxima.retain(|&m| !gale_leq_bits(m, b, order));
        maxima.push(b);
    }
    maxima
}

/// Definition check: nonempty, equinumerous, admissible, and a unique Gale
/// maximum under each of the `2^n·n!` admissible orders.
pub fn is_symplectic(b: &BasisFamily) -> Verdict {
    let n = b.n;
    if b.bases.is_empty() {
        return Err(Diagnostic::new("nonempty", "no bases"));
    }
    let k = popcount(b.bases[0]);
    if let Some(&m) = b.bases.iter().find(|&&m| popcount(m) != k) {
        return Err(
            Diagnostic::new("equinumerous", "bases of different sizes").with_witness([show(n, b.bases[0]), show(n, m)])
        );
    }
    if let Some(&m) = b.bases.iter().find(|&&m| !admissible_bits(m, n)) {
        return Err(Diagnostic::new("admissible", "basis contains a star pair").with_witness([show(n, m)]));
    }
    let orders: Vec<_> = admissible_orders(n).collect();
    match par::find_map_first(&orders, |w| {
        let maxima = gale_maxima(&b.bases, w);
        (maxima.len() != 1).then(|| (w.to_string(), maxima))
    }) {
        None => Ok(()),
        Some((w, maxima)) => Err(Diagnostic::new(
            "unique-maximum",
            format!("{} Gale-maximal bases under {w}", maxima.len()),
        )
        .with_witness(std::iter::once(w).chain(maxima.iter().map(|&m| show(n, m))))),
    }
}

/// Every element of `J` lies in some basis.
pub fn is_loop_free(b: &BasisFamily) -> bool {
    b.bases.iter().fold(0, |acc, &m| acc | m) == full_mask(b.n)
}

/// Chow's independence axioms for a family of admissible subsets of `J`.
///
/// Inputs that are not downward closed or contain an inadmissible member are
/// rejected as errors; a negative verdict means the axioms fail.
pub fn chow_check(f: &IndependenceFamily, n: usize) -> Result<Verdict> {
    if f.ground() != full_mask(n) {
        return Err(Error::Precondition("the family must live on J".into()));
    }
    if let Some(&m) = f.members().iter().find(|&&m| !admissible_bits(m, n)) {
        return Err(Error::Precondition(format!("{} is not admissible", show(n, m))));
    }
    if let Some((m, s)) = f.closure_defect() {
        return Err(Error::Precondition(format!(
            "not closed under subsets: {} is missing below {}",
            show(n, s),
            show(n, m)
        )));
    }
    for t in transversals(n) {
        if let Err(d) = f.trace(t.bits()).check_matroid_axioms() {
            return Ok(Err(Diagnostic::new(
                "transversal-matroid",
                format!("restriction to {t} is not a matroid: {}", d.detail),
            )
            .with_witness(std::iter::once(t.to_string()))));
        }
    }
    let j = full_mask(n);
    let members = f.members();
    for &big in members {
        for &small in members.iter().take_while(|&&s| popcount(s) < popcount(big)) {
            let direct = ones(big & !small).any(|x| f.contains(small | 1 << x));
            if direct {
                continue;
            }
            let swapped = ones(j & !(big | small)).any(|x| {
                let xs = star_bits(1 << x, n);
                f.contains(small | 1 << x) && f.contains((small | xs) & !star_bits(big, n))
            });
            if !swapped {
                return Ok(Err(Diagnostic::new(
                    "augmentation",
                    "neither augmentation case applies",
                )
                .with_witness([show(n, big), show(n, small)])));
            }
        }
    }
    Ok(Ok(()))
}

/// Reading of "disjoint in L" for ground-level bounded-below sets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Disjointness {
    /// Elements lie in pairwise distinct atoms; a set with two elements in
    /// one atom is dependent outright.
    #[default]
    DistinctAtoms,
    /// The set meets every atom of the lattice.
    AllAtoms,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroundOptions {
    pub disjointness: Disjointness,
    pub strategy: Strategy,
}

/// Number of atoms of `l` that meet `x`.
pub fn atoms_meeting(l: &SetLattice, x: u64) -> usize {
    l.atoms().iter().filter(|&&a| l.element(a) & x != 0).count()
}

/// Ground-level NBB independence on any lattice of subsets: items are the
/// elements of the ground set and `a` lies below `∨D` when `a` belongs to the
/// smallest member containing `D`.
pub fn ground_family(l: &SetLattice, opts: GroundOptions) -> Result<IndependenceFamily> {
    l.is_lattice()
        .map_err(|_| Error::Precondition("ground-level independence needs a lattice".into()))?;
    let support = l.ground().support();
    let comp = crate::bits::Compressor::new(support);
    let atom_masks: Vec<u64> = l.atoms().iter().map(|&a| l.element(a)).collect();
    let total_atoms = atom_masks.len();
    let meeting = |x: u64| atom_masks.iter().filter(|&&a| a & x != 0).count();
    let engine = Engine::new(
        comp.width(),
        |d| {
            let set = comp.expand(d as usize);
            let top = l.closure(set).expect("intersection-closed family");
            comp.compress(l.element(top)) as u32
        },
        |d| {
            let set = comp.expand(d as usize);
            match opts.disjointness {
                Disjointness::DistinctAtoms => distinct_atoms(&atom_masks, set),
                Disjointness::AllAtoms => meeting(set) == total_atoms,
            }
        },
        |b| match opts.disjointness {
            Disjointness::DistinctAtoms => !distinct_atoms(&atom_masks, comp.expand(b as usize)),
            Disjointness::AllAtoms => false,
        },
    )?;
    let indicator = engine.family(opts.strategy)?;
    IndependenceFamily::new(
        support,
        indicator
            .iter()
            .enumerate()
            .filter(|&(_, &v)| v)
            .map(|(i, _)| comp.expand(i)),
    )
}

/// Every element of `set` lies in exactly one atom and no atom holds two.
fn distinct_atoms(atoms: &[u64], set: u64) -> bool {
    let mut used = 0u64;
    for b in ones(set) {
        let mut hits = atoms.iter().enumerate().filter(|(_, &a)| a >> b & 1 == 1);
        match (hits.next(), hits.next()) {
            (Some((k, _)), None) if used >> k & 1 == 0 => used |= 1 << k,
            _ => return false,
        }
    }
    true
}

fn require_cn(l: &SetLattice) -> Result<usize> {
    is_cn_lattice(l).map_err(|d| Error::Precondition(format!("not a C_n lattice: {d}")))?;
    Ok(l.ground().signed_n().expect("C_n lattices are signed"))
}

/// Ground-level independent subsets of `J` for a C_n lattice.
pub fn ground_independents(l: &SetLattice) -> Result<IndependenceFamily> {
    ground_independents_with(l, GroundOptions::default())
}

pub fn ground_independents_with(l: &SetLattice, opts: GroundOptions) -> Result<IndependenceFamily> {
    require_cn(l)?;
    ground_family(l, opts)
}

/// The admissible members of [`ground_independents`].
pub fn admissible_independents(l: &SetLattice) -> Result<IndependenceFamily> {
    let n = require_cn(l)?;
    Ok(ground_independents(l)?.filter(|m| admissible_bits(m, n)))
}

/// The lattice of all admissible subsets of `J` plus `J` itself.
pub fn is_full_lattice(l: &SetLattice) -> bool {
    match l.ground() {
        Ground::Signed { n, support } if support == full_mask(n as usize) => {
            let n = n as usize;
            l.len() == 3usize.pow(n as u32) + 1
                && l.contains(support)
                && l.elements().iter().filter(|&&m| admissible_bits(m, n)).count() == 3usize.pow(n as u32)
        }
        _ => false,
    }
}

/// Bases of the symplectic matroid of a C_n lattice: the maximal admissible
/// independent sets. The full lattice is rejected because it produces the
/// same matroid as the lattice of admissible sets of size at most `n − 1`.
pub fn lattice_to_symplectic(l: &SetLattice) -> Result<BasisFamily> {
    let n = require_cn(l)?;
    if is_full_lattice(l) {
        return Err(Error::FullLattice);
    }
    let fam = admissible_independents(l)?;
    BasisFamily::new(n, fam.maximal())
}

/// Adds, for every admissible independent `I` and `a ∈ I`, the set
/// `I ∪ {a*}` whenever `|I| < |A(I ∪ {a*})| ≤ rank_l`, where `A(X)` is the
/// set of atoms of `l` meeting `X`.
pub fn nonadmissible_extension(
    l: &SetLattice,
    admissible: &IndependenceFamily,
    rank_l: usize,
) -> Result<IndependenceFamily> {
    let n = l
        .ground()
        .signed_n()
        .ok_or_else(|| Error::Precondition("needs a signed ground set".into()))?;
    if let Some(&m) = admissible.members().iter().find(|&&m| !admissible_bits(m, n)) {
        return Err(Error::Precondition(format!("{} is not admissible", show(n, m))));
    }
    let mut out: Vec<u64> = admissible.members().to_vec();
    for &i in admissible.members() {
        for a in ones(i) {
            let ext = i | star_bits(1 << a, n);
            let touched = atoms_meeting(l, ext);
            if popcount(i) < touched && touched <= rank_l {
                out.push(ext);
            }
        }
    }
    IndependenceFamily::new(admissible.ground(), out)
}

/// How the `+1` branch of the rank formula is scoped.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RankForm {
    /// The branch needs the star partner `a*` to lie in the evaluated set.
    #[default]
    Amended,
    /// The branch as printed, without that requirement.
    Literal,
}

/// A rank function on `P(J)` tabulated over all `4^n` subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticRank {
    n: usize,
    d: usize,
    table: Vec<u8>,
}

impl SymplecticRank {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn rank(&self, set: u64) -> usize {
        self.table[set as usize] as usize
    }

    pub fn check_axioms(&self) -> Verdict {
        check_rank_axioms_with(full_mask(self.n), |s| self.rank(s), |s| show(self.n, s))
    }

    /// First element of rank zero, if any.
    pub fn loop_element(&self) -> Option<u32> {
        ones(full_mask(self.n)).find(|&x| self.rank(1 << x) != 1)
    }

    pub fn to_matroid(&self) -> Result<Matroid, Diagnostic> {
        Matroid::from_rank_fn(full_mask(self.n), |s| self.rank(s))
    }
}

/// Largest `n` for which rank functions are tabulated.
pub const RANK_TABLE_MAX_N: usize = 8;

fn check_rank_input(f: &IndependenceFamily, n: usize, d: Option<usize>) -> Result<usize> {
    if n > RANK_TABLE_MAX_N {
        return Err(Error::TooLarge(format!("rank table over 4^{n} sets")));
    }
    if f.ground() != full_mask(n) {
        return Err(Error::Precondition("the family must live on J".into()));
    }
    let d = d.unwrap_or_else(|| f.max_size());
    if d < f.max_size() {
        return Err(Error::Precondition(format!(
            "rank {d} is smaller than an independent set of size {}",
            f.max_size()
        )));
    }
    Ok(d)
}

/// `r(A) = min(d, max over independent I ⊆ A of |I| + δ(I, A))`, where
/// `δ = 1` iff some `a ∈ I` has `{a*, b}` independent for every other
/// `b ∈ I` (and, in the amended form, `a* ∈ A`).
pub fn symplectic_rank(f: &IndependenceFamily, n: usize, d: Option<usize>, form: RankForm) -> Result<SymplecticRank> {
    let d = check_rank_input(f, n, d)?;
    // For each independent set, the elements a that may carry the +1.
    let carriers: Vec<(u64, u64)> = f
        .members()
        .iter()
        .map(|&i| {
            let good = ones(i)
                .filter(|&a| {
                    let astar = star_bits(1 << a, n);
                    ones(i & !(1 << a)).all(|b| f.contains(astar | 1 << b))
                })
                .fold(0u64, |acc, a| acc | 1 << a);
            (i, good)
        })
        .collect();
    let table = par::map_range(1usize << (2 * n), |set| {
        let set = set as u64;
        let best = carriers
            .iter()
            .filter(|(i, _)| is_subset(*i, set))
            .map(|&(i, good)| {
                let bonus = match form {
                    RankForm::Amended => star_bits(good, n) & set != 0,
                    RankForm::Literal => good != 0,
                };
                popcount(i) + bonus as usize
            })
            .max()
            .unwrap_or(0);
        best.min(d) as u8
    });
    Ok(SymplecticRank { n, d, table })
}

/// The short form for simple families: the largest independent subset on
/// admissible sets, one more (capped at `d`) elsewhere.
pub fn simple_symplectic_rank(f: &IndependenceFamily, n: usize, d: Option<usize>) -> Result<SymplecticRank> {
    let d = check_rank_input(f, n, d)?;
    let table = par::map_range(1usize << (2 * n), |set| {
        let set = set as u64;
        let best = f
            .members()
            .iter()
            .filter(|&&i| is_subset(i, set))
            .map(|&i| popcount(i))
            .max()
            .unwrap_or(0);
        if admissible_bits(set, n) {
            best as u8
        } else {
            (best + 1).min(d) as u8
        }
    });
    Ok(SymplecticRank { n, d, table })
}

/// Every admissible dependent set has at least three elements.
pub fn is_simple(f: &IndependenceFamily, n: usize) -> bool {
    submasks(full_mask(n))
        .filter(|&s| popcount(s) <= 2 && admissible_bits(s, n))
        .all(|s| f.contains(s))
}

/// Whether the (amended) rank function is the rank function of a loop-free
/// ordinary matroid on `J`.
pub fn is_ranked_symplectic(f: &IndependenceFamily, n: usize, d: Option<usize>) -> Result<Verdict> {
    is_ranked_symplectic_with(f, n, d, RankForm::Amended)
}

pub fn is_ranked_symplectic_with(
    f: &IndependenceFamily,
    n: usize,
    d: Option<usize>,
    form: RankForm,
) -> Result<Verdict> {
    let r = symplectic_rank(f, n, d, form)?;
    if let Err(diag) = r.check_axioms() {
        return Ok(Err(diag));
    }
    Ok(match r.loop_element() {
        None => Ok(()),
        Some(x) => Err(Diagnostic::new("loop-free", "an element has rank 0").with_witness([show(n, 1 << x)])),
    })
}

/// Admissible flats of the matroid with the symplectic rank function, plus `J`.
pub fn symplectic_to_lattice(f: &IndependenceFamily, n: usize, d: Option<usize>) -> Result<SetLattice> {
    if let Err(diag) = is_ranked_symplectic(f, n, d)? {
        return Err(Error::Precondition(format!("not a ranked symplectic matroid: {diag}")));
    }
    let r = symplectic_rank(f, n, d, RankForm::Amended)?;
    let m = r
        .to_matroid()
        .map_err(|diag| Error::Internal(format!("rank axioms re-check failed: {diag}")))?;
    let j = full_mask(n);
    let mut family: Vec<u64> = m.flats().into_iter().filter(|&x| admissible_bits(x, n)).collect();
    family.push(j);
    SetLattice::build(Ground::signed(n), family)
}

/// An ordinary matroid on `J` whose rank function agrees with the symplectic
/// rank function of its own admissible independent sets; on success its
/// admissible bases form a symplectic matroid.
pub fn remark_4_11_check(m: &IndependenceFamily, n: usize) -> Result<std::result::Result<BasisFamily, Diagnostic>> {
    let matroid = Matroid::from_family(m).map_err(|d| Error::Precondition(format!("not an ordinary matroid: {d}")))?;
    let admissible = m.filter(|s| admissible_bits(s, n));
    let r = symplectic_rank(&admissible, n, None, RankForm::Amended)?;
    if let Some(s) = submasks(full_mask(n)).find(|&s| matroid.rank(s) != r.rank(s)) {
        return Ok(Err(Diagnostic::new(
            "rank-agreement",
            format!(
                "matroid rank {} differs from induced rank {}",
                matroid.rank(s),
                r.rank(s)
            ),
        )
        .with_witness([show(n, s)])));
    }
    let bases = admissible.maximal();
    Ok(Ok(BasisFamily::new(n, bases)?))
}
