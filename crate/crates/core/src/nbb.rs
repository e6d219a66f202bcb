//! Bounded-below sets and NBB independence.
//!
//! A nonempty set `D` of items is *bounded below* under a linear order `ω`
//! if some item `a`, strictly `ω`-before every member of `D`, lies below the
//! join of `D`. A set is *NBB* if none of its nonempty subsets is bounded
//! below, and *independent* if it is NBB for at least one linear order.
//!
//! Both the atom-level notion (items are the atoms of a lattice) and the
//! ground-level notion used for C_n lattices (items are elements of `J`)
//! reduce to the same data: for every candidate `D`, the set of items that
//! lie below `∨D`, and whether `D` may be bounded below at all. [`Engine`]
//! holds that table and computes the independence family in two ways.

use itertools::Itertools;

use crate::bits::{is_subset, ones, popcount};
use crate::error::{Diagnostic, Error, Result, Verdict};
use crate::lattice::{Ground, SetLattice};
use crate::matroid::{IndependenceFamily, Matroid};
use crate::par;

/// How the family of sets that are NBB for some linear order is computed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Every linear order on all items.
    Oracle,
    /// For each candidate `B`, only the orders that list `B` first, permuted
    /// internally. Items outside `B` then never precede a member of `B`, so
    /// they cannot witness a bounded-below subset of `B`; moving `B` to the
    /// front can therefore only remove witnesses.
    #[default]
    Fast,
}

/// Largest item count for which all linear orders are enumerated.
pub const ORACLE_MAX_ITEMS: usize = 9;
/// Largest item count for any independence computation.
pub const MAX_ITEMS: usize = 20;

/// Precomputed bounded-below data over `width` items, indexed by item mask.
#[derive(Clone, Debug)]
pub(crate) struct Engine {
    width: usize,
    /// Items below the join of `D`.
    below: Vec<u32>,
    /// `D` is allowed to be bounded below.
    eligible: Vec<bool>,
    /// `B` is dependent regardless of the order (closed upward).
    excluded: Vec<bool>,
}

impl Engine {
    pub(crate) fn new(
        width: usize,
        below: impl Fn(u32) -> u32 + Sync,
        eligible: impl Fn(u32) -> bool + Sync,
        excluded: impl Fn(u32) -> bool,
    ) -> Result<Engine> {
        if width > MAX_ITEMS {
            return Err(Error::TooLarge(format!("{width} items")));
        }
        let len = 1usize << width;
        let below = par::map_range(len, |d| below(d as u32));
        let eligible = par::map_range(len, |d| d != 0 && eligible(d as u32));
        let mut excl = vec![false; len];
        for b in 1..len {
            excl[b] = excluded(b as u32) || ones(b as u64).any(|x| excl[b & !(1 << x)]);
        }
        Ok(Engine {
            width,
            below,
            eligible,
            excluded: excl,
        })
    }

    pub(crate) fn width(&self) -> usize {
        self.width
    }

    /// `pos[i]` is the position of item `i`; `usize::MAX` for items placed
    /// after everything that matters.
    fn bounded_below(&self, d: u32, pos: &[usize]) -> bool {
        if !self.eligible[d as usize] {
            return false;
        }
        let first = ones(d as u64).map(|i| pos[i as usize]).min().unwrap_or(usize::MAX);
        ones(self.below[d as usize] as u64).any(|a| pos[a as usize] < first)
    }

    fn nbb(&self, b: u32, pos: &[usize]) -> bool {
        !self.excluded[b as usize]
            && crate::bits::submasks(b as u64)
                .filter(|&d| d != 0)
                .all(|d| !self.bounded_below(d as u32, pos))
    }

    /// Independence indicator over all item masks.
    pub(crate) fn family(&self, strategy: Strategy) -> Result<Vec<bool>> {
        match strategy {
            Strategy::Oracle => self.family_oracle(),
            Strategy::Fast => Ok(self.family_fast()),
        }
    }

    fn family_oracle(&self) -> Result<Vec<bool>> {
        if self.width > ORACLE_MAX_ITEMS {
            return Err(Error::TooLarge(format!(
                "{}! orders in the exhaustive independence search",
                self.width
            )));
        }
        let len = 1usize << self.width;
        let orders: Vec<Vec<usize>> = (0..self.width).permutations(self.width).collect();
        let per_order = par::map(&orders, |order| {
            let mut pos = vec![0usize; self.width];
            for (p, &item) in order.iter().enumerate() {
                pos[item] = p;
            }
            let mut nbb = vec![false; len];
            nbb[0] = true;
            for b in 1..len {
                nbb[b] = !self.excluded[b]
                    && ones(b as u64).all(|x| nbb[b & !(1 << x)])
                    && !self.bounded_below(b as u32, &pos);
            }
            nbb
        });
        let mut out = vec![false; len];
        for nbb in per_order {
            for (o, v) in out.iter_mut().zip(nbb) {
                *o |= v;
            }
        }
        Ok(out)
    }

    fn family_fast(&self) -> Vec<bool> {
        let len = 1usize << self.width;
        let mut out = vec![false; len];
        out[0] = true;
        for k in 1..=self.width {
            let level: Vec<u32> = (1..len as u32).filter(|&b| popcount(b as u64) == k).collect();
            let verdicts = par::map(&level, |&b| {
                ones(b as u64).all(|x| out[(b & !(1 << x)) as usize]) && self.nbb_for_some_internal_order(b)
            });
            let mut any = false;
            for (&b, v) in level.iter().zip(verdicts) {
                out[b as usize] = v;
                any |= v;
            }
            if !any {
                break;
            }
        }
        out
    }

    fn nbb_for_some_internal_order(&self, b: u32) -> bool {
        if self.excluded[b as usize] {
            return false;
        }
        let members: Vec<usize> = ones(b as u64).map(|i| i as usize).collect();
        let mut pos = vec![usize::MAX; self.width];
        members.iter().copied().permutations(members.len()).any(|order| {
            for (p, &item) in order.iter().enumerate() {
                pos[item] = p;
            }
            self.nbb(b, &pos)
        })
    }
}

fn check_order(order: &[usize], width: usize) -> Result<Vec<usize>> {
    let mut pos = vec![usize::MAX; width];
    if order.len() != width {
        return Err(Error::Precondition(format!(
            "an order must list all {width} items, got {}",
            order.len()
        )));
    }
    for (p, &item) in order.iter().enumerate() {
        if item >= width || pos[item] != usize::MAX {
            return Err(Error::Precondition(format!("invalid or repeated item {item} in order")));
        }
        pos[item] = p;
    }
    Ok(pos)
}

/// Atom sets as masks over positions in [`SetLattice::atoms`].
fn atom_engine(l: &SetLattice) -> Result<Engine> {
    l.check_bag()?;
    let atoms = l.atoms();
    Engine::new(
        atoms.len(),
        |d| {
            let join = atom_join(l, d as u64);
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| l.leq(a, join))
                .fold(0u32, |acc, (k, _)| acc | 1 << k)
        },
        |_| true,
        |_| false,
    )
}

/// Join of the atoms selected by `set` (positions in [`SetLattice::atoms`]).
pub fn atom_join(l: &SetLattice, set: u64) -> usize {
    l.join_all(ones(set).map(|k| l.atoms()[k as usize]))
        .expect("joins exist in a lattice")
}

/// `rank(∨D)` for an atom set `D`.
pub fn atom_rank(l: &SetLattice, set: u64) -> usize {
    l.height(atom_join(l, set))
}

/// Atom positions below element `x`.
pub fn atoms_of(l: &SetLattice, x: usize) -> u64 {
    l.atoms()
        .iter()
        .enumerate()
        .filter(|&(_, &a)| l.leq(a, x))
        .fold(0u64, |acc, (k, _)| acc | 1 << k)
}

/// Whether the atom set `d` is bounded below under the linear order `order`
/// (a permutation of atom positions).
pub fn is_bounded_below(l: &SetLattice, d: u64, order: &[usize]) -> Result<bool> {
    if d == 0 {
        return Err(Error::Precondition("a bounded-below set is nonempty".into()));
    }
    let e = atom_engine(l)?;
    let pos = check_order(order, e.width())?;
    Ok(e.bounded_below(d as u32, &pos))
}

/// Whether no nonempty subset of the atom set `b` is bounded below.
pub fn is_nbb(l: &SetLattice, b: u64, order: &[usize]) -> Result<bool> {
    let e = atom_engine(l)?;
    let pos = check_order(order, e.width())?;
    Ok(e.nbb(b as u32, &pos))
}

/// Atom sets that are NBB for at least one linear order on the atoms, over
/// the ground mask of atom positions.
pub fn independence_family_atoms(l: &SetLattice, strategy: Strategy) -> Result<IndependenceFamily> {
    let e = atom_engine(l)?;
    let indicator = e.family(strategy)?;
    let ground = (1u64 << e.width()) - 1;
    IndependenceFamily::new(
        ground,
        indicator.iter().enumerate().filter(|&(_, &v)| v).map(|(m, _)| m as u64),
    )
}

/// Validates the independence axioms and returns the rank oracle.
pub fn matroid_from_family(family: &IndependenceFamily) -> Result<Matroid, Diagnostic> {
    Matroid::from_family(family)
}

/// The induced geometric lattice together with the position of every
/// original element inside it.
#[derive(Clone, Debug)]
pub struct Induced {
    pub lattice: SetLattice,
    /// `embedding[i]` is the index in `lattice` of element `i` of the input.
    pub embedding: Vec<usize>,
}

/// When the atoms of `l` are pairwise disjoint and cover the ground set,
/// atom sets are written back as unions of atoms so that the result lives on
/// the same ground set; otherwise the result is over atom positions.
fn atom_set_encoder(l: &SetLattice) -> (Ground, Box<dyn Fn(u64) -> u64 + '_>) {
    let atoms: Vec<u64> = l.atoms().iter().map(|&a| l.element(a)).collect();
    let disjoint = atoms.iter().tuple_combinations().all(|(a, b)| a & b == 0);
    let covers = atoms.iter().fold(0, |acc, a| acc | a) == l.ground().support();
    if disjoint && covers {
        (
            l.ground(),
            Box::new(move |set| ones(set).fold(0, |acc, k| acc | atoms[k as usize])),
        )
    } else {
        (Ground::plain(atoms.len()), Box::new(|set| set))
    }
}

/// The lattice of flats of the matroid of NBB-independent atom sets, with
/// each element of `l` identified with the atoms below it.
pub fn induce_geometric(l: &SetLattice) -> Result<Induced> {
    let family = independence_family_atoms(l, Strategy::Fast)?;
    let matroid = matroid_from_family(&family)
        .map_err(|d| Error::Precondition(format!("independent atom sets are not a matroid: {d}")))?;
    let (ground, encode) = atom_set_encoder(l);
    let lattice = SetLattice::build(ground, matroid.flats().into_iter().map(&encode))?;
    let embedding = (0..l.len())
        .map(|i| {
            lattice
                .index_of(encode(atoms_of(l, i)))
                .ok_or_else(|| Error::Internal(format!("{} is not a flat", l.render(i))))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Induced { lattice, embedding })
}

/// Renders an atom set as the list of its atoms.
pub fn render_atom_set(l: &SetLattice, set: u64) -> String {
    format!("{{{}}}", ones(set).map(|k| l.render(l.atoms()[k as usize])).join(","))
}

/// Ok iff every independent atom set `I` has `|I| = rank(∨I)`.
pub fn is_geometric_by_independents(l: &SetLattice) -> Result<Verdict> {
    let family = independence_family_atoms(l, Strategy::Fast)?;
    Ok(
        match family.members().iter().find(|&&i| popcount(i) != atom_rank(l, i)) {
            None => Ok(()),
            Some(&i) => Err(Diagnostic::new(
                "geometric-independents",
                format!("independent set of size {} has rank {}", popcount(i), atom_rank(l, i)),
            )
            .with_witness([render_atom_set(l, i)])),
        },
    )
}

/// Atom sets whose members are all below the element `x`.
pub fn spanning_sets(l: &SetLattice, family: &IndependenceFamily, x: usize) -> Vec<u64> {
    family
        .members()
        .iter()
        .copied()
        .filter(|&i| atom_join(l, i) == x)
        .collect()
}

/// True iff `set` is a subset of the atoms below `x`.
pub fn below(l: &SetLattice, set: u64, x: usize) -> bool {
    is_subset(set, atoms_of(l, x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::submasks;
    use crate::lattice::is_geometric_lattice;
    use crate::workbench::fixtures;

    fn atom_pos(l: &SetLattice, label: &str) -> usize {
        l.atoms()
            .iter()
            .position(|&a| l.render(a) == label)
            .unwrap_or_else(|| panic!("no atom {label}"))
    }

    fn order(l: &SetLattice, labels: &[&str]) -> Vec<usize> {
        labels.iter().map(|s| atom_pos(l, s)).collect()
    }

    fn set(l: &SetLattice, labels: &[&str]) -> u64 {
        labels.iter().fold(0, |acc, s| acc | 1 << atom_pos(l, s))
    }

    #[test]
    fn bounded_below_examples() {
        let a = fixtures::fix_a();
        let w = order(&a, &["{1}", "{2}", "{2*}", "{1*}"]);
        let d = set(&a, &["{2}", "{2*}"]);
        assert!(is_bounded_below(&a, d, &w).unwrap());
        assert!(!is_bounded_below(&a, set(&a, &["{1}"]), &w).unwrap());
        assert!(!is_bounded_below(&a, 0b1111, &w).unwrap());
        assert!(is_bounded_below(&a, 0, &w).is_err());
    }

    #[test]
    fn nbb_examples() {
        let a = fixtures::fix_a();
        let b = set(&a, &["{2}", "{2*}"]);
        assert!(is_nbb(&a, b, &order(&a, &["{2}", "{2*}", "{1}", "{1*}"])).unwrap());
        assert!(!is_nbb(&a, b, &order(&a, &["{1}", "{2}", "{2*}", "{1*}"])).unwrap());
        for w in (0..4).permutations(4) {
            assert!(is_nbb(&a, 0, &w).unwrap());
        }
    }

    #[test]
    fn full_c2_lattice_gives_u34() {
        let a = fixtures::fix_a();
        for strategy in [Strategy::Oracle, Strategy::Fast] {
            let f = independence_family_atoms(&a, strategy).unwrap();
            let expected: Vec<u64> = submasks(0b1111).filter(|&s| popcount(s) <= 3).collect();
            assert_eq!(f.len(), expected.len());
            assert!(expected.iter().all(|&s| f.contains(s)));
            let m = matroid_from_family(&f).unwrap();
            assert_eq!(m.full_rank(), 3);
        }
    }

    #[test]
    fn pairs_are_always_independent() {
        for fx in fixtures::all() {
            let l = &fx.lattice;
            if l.check_bag().is_err() {
                continue;
            }
            let f = independence_family_atoms(l, Strategy::Fast).unwrap();
            let t = l.atoms().len() as u64;
            for s in submasks((1 << t) - 1).filter(|&s| popcount(s) <= 2) {
                assert!(f.contains(s), "{}: {s:#b}", fx.name);
            }
        }
    }

    #[test]
    fn small_matroids() {
        let free = IndependenceFamily::new(0b111, submasks(0b111)).unwrap();
        let m = matroid_from_family(&free).unwrap();
        assert!(submasks(0b111).all(|s| m.rank(s) == popcount(s)));
        let u12 = IndependenceFamily::new(0b11, [0, 1, 2]).unwrap();
        assert_eq!(matroid_from_family(&u12).unwrap().full_rank(), 1);
    }

    #[test]
    fn induced_lattice_of_full_c2_is_u34_flats() {
        let a = fixtures::fix_a();
        let induced = induce_geometric(&a).unwrap();
        let p = &induced.lattice;
        assert_eq!(p.len(), 12);
        assert!(is_geometric_lattice(p).is_ok());
        // Admissible flats are exactly the proper elements of FIX-A.
        let admissible: Vec<u64> = p
            .elements()
            .iter()
            .copied()
            .filter(|&m| crate::signed::admissible_bits(m, 2))
            .collect();
        let mut original = a.elements().to_vec();
        original.pop();
        assert_eq!(admissible, original);
    }

    #[test]
    fn fix_d_gains_one_flat() {
        let d = fixtures::fix_d();
        let induced = induce_geometric(&d).unwrap();
        let p = &induced.lattice;
        assert_eq!(p.len(), d.len() + 1);
        assert!(is_geometric_lattice(p).is_ok());
        let new: Vec<u64> = p.elements().iter().copied().filter(|m| !d.contains(*m)).collect();
        assert_eq!(new.len(), 1);
        assert_eq!(popcount(new[0]), 3);
        let fix_e = fixtures::fix_e();
        assert_eq!(p.elements(), fix_e.elements());
    }

    #[test]
    fn geometric_by_independents() {
        assert!(is_geometric_by_independents(&fixtures::fix_e()).unwrap().is_ok());
        let w = is_geometric_by_independents(&fixtures::fix_d()).unwrap().unwrap_err();
        assert_eq!(w.witness.len(), 1);
        assert!(is_geometric_by_independents(&fixtures::fix_b()).unwrap().is_ok());
        assert!(is_geometric_by_independents(&fixtures::fix_c()).unwrap().is_ok());
    }

    #[test]
    fn fix_e_pair_is_independent_of_rank_two() {
        let e = fixtures::fix_e();
        let f = independence_family_atoms(&e, Strategy::Oracle).unwrap();
        // Atoms of the dual partition lattice are singletons, listed in bit order.
        let pair = fixtures::dual_partition_atoms(&["124/3", "13/24"]);
        assert!(f.contains(pair));
        assert_eq!(atom_rank(&e, pair), 2);
    }

    #[test]
    fn strategies_agree_on_fixtures() {
        for fx in fixtures::all() {
            let l = &fx.lattice;
            if l.check_bag().is_err() || l.atoms().len() > 7 {
                continue;
            }
            assert_eq!(
                independence_family_atoms(l, Strategy::Oracle).unwrap(),
                independence_family_atoms(l, Strategy::Fast).unwrap(),
                "{}",
                fx.name
            );
        }
    }
}
