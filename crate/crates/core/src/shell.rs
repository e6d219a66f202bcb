//! Shellings of order complexes and recursive atom orderings.
//!
//! An atom ordering `A_1, …, A_t` of a graded lattice is *recursive* when
//! (1) every interval `[A_j, 1̂]` admits a recursive ordering that lists
//! first exactly the atoms covering some earlier `A_i`, and (2) whenever
//! `A_i, A_j < B` with `i < j`, some `C ≤ B` covers both `A_j` and an earlier
//! atom `A_k`. Condition (1) is existential, so checking it is a search:
//! [`RaoSearch`] memoises, per interval and required prefix, the first
//! ordering found (or its absence).

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex};

use itertools::Itertools;

use crate::bits::{ones, popcount};
use crate::error::{Diagnostic, Error, Result, Verdict};
use crate::lattice::{is_cn_lattice, order_complex, ChainComplex, Ground, SetLattice};
use crate::matroid::IndependenceFamily;
use crate::nbb::{atom_join, atom_rank, independence_family_atoms, render_atom_set, Strategy};
use crate::par;

/// Verifies that `order` (a permutation of facet indices of `k`) is a
/// shelling: every facet after the first meets the union of the earlier ones
/// in a pure complex of codimension one.
pub fn is_shelling(k: &ChainComplex, order: &[usize]) -> Result<Verdict> {
    if !k.is_pure() {
        return Err(Error::Precondition("shelling needs a pure complex".into()));
    }
    let mut seen = vec![false; k.facets.len()];
    if order.len() != k.facets.len()
        || order
            .iter()
            .any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true))
    {
        return Err(Error::Precondition("order must be a permutation of the facets".into()));
    }
    let sets: Vec<HashSet<usize>> = k.facets.iter().map(|f| f.iter().copied().collect()).collect();
    for j in 1..order.len() {
        if let Some(i) = shelling_defect(&sets, &order[..j], order[j]) {
            return Ok(Err(Diagnostic::new(
                "shelling",
                format!(
                    "facet {} meets earlier facet {} outside a codimension-one face",
                    order[j], i
                ),
            )
            .with_witness([
                format!("{:?}", k.facets[order[j]]),
                format!("{:?}", k.facets[i]),
            ])));
        }
    }
    Ok(Ok(()))
}

/// The earlier facet whose intersection with `next` is not contained in a
/// codimension-one intersection with some earlier facet.
fn shelling_defect(sets: &[HashSet<usize>], earlier: &[usize], next: usize) -> Option<usize> {
    let f = &sets[next];
    let ridges: Vec<HashSet<usize>> = earlier
        .iter()
        .map(|&i| f.intersection(&sets[i]).copied().collect::<HashSet<usize>>())
        .filter(|m| m.len() + 1 == f.len())
        .collect();
    earlier.iter().copied().find(|&i| {
        let meet: HashSet<usize> = f.intersection(&sets[i]).copied().collect();
        !ridges.iter().any(|r| meet.is_subset(r))
    })
}

/// Depth-first search for a shelling order, memoising dead facet subsets.
/// Gives up with [`Error::TooLarge`] above `max_facets` facets.
pub fn find_shelling(k: &ChainComplex, max_facets: usize) -> Result<Option<Vec<usize>>> {
    if !k.is_pure() {
        return Err(Error::Precondition("shelling needs a pure complex".into()));
    }
    let t = k.facets.len();
    if t > max_facets || t > 63 {
        return Err(Error::TooLarge(format!("{t} facets")));
    }
    let sets: Vec<HashSet<usize>> = k.facets.iter().map(|f| f.iter().copied().collect()).collect();
    let mut dead: HashSet<u64> = HashSet::new();
    let mut order = Vec::with_capacity(t);
    fn go(sets: &[HashSet<usize>], order: &mut Vec<usize>, used: u64, dead: &mut HashSet<u64>) -> bool {
        if order.len() == sets.len() {
            return true;
        }
        if dead.contains(&used) {
            return false;
        }
        for next in 0..sets.len() {
            if used >> next & 1 == 1 || (!order.is_empty() && shelling_defect(sets, order, next).is_some()) {
                continue;
            }
            order.push(next);
            if go(sets, order, used | 1 << next, dead) {
                return true;
            }
            order.pop();
        }
        dead.insert(used);
        false
    }
    Ok(go(&sets, &mut order, 0, &mut dead).then_some(order))
}

type Ordering = Arc<Vec<usize>>;

/// Memoised search for recursive atom orderings of the upper intervals of a
/// fixed lattice. Intervals are named by their bottom element; a required
/// prefix is a mask over the covers of that element.
pub struct RaoSearch<'a> {
    l: &'a SetLattice,
    memo: Mutex<HashMap<(usize, u64), Option<Ordering>>>,
}

impl<'a> RaoSearch<'a> {
    pub fn new(l: &'a SetLattice) -> Result<RaoSearch<'a>> {
        if !l.is_graded() {
            return Err(Error::Precondition(
                "recursive atom orderings need a graded poset".into(),
            ));
        }
        if l.upper_covers(l.bottom()).len() > 63 {
            return Err(Error::TooLarge("more than 63 atoms".into()));
        }
        Ok(RaoSearch {
            l,
            memo: Mutex::new(HashMap::new()),
        })
    }

    fn interval_rank(&self, x: usize) -> usize {
        self.l.height(self.l.top()) - self.l.height(x)
    }

    /// Covers of `y` (inside `[y, 1̂]`) that lie above some atom of `placed`.
    fn covers_above(&self, y: usize, placed: &[usize]) -> u64 {
        let covers = self.l.upper_covers(y);
        covers
            .iter()
            .enumerate()
            .filter(|&(_, &c)| placed.iter().any(|&a| self.l.leq(a, c)))
            .fold(0u64, |acc, (k, _)| acc | 1 << k)
    }

    /// Condition (2) for placing `next` after `placed`, inside `[x, 1̂]`:
    /// returns an offending `(earlier atom, B)` pair.
    fn condition_two(&self, placed: &[usize], next: usize) -> Option<(usize, usize)> {
        let l = self.l;
        if placed.is_empty() {
            return None;
        }
        let good_covers: Vec<usize> = l
            .upper_covers(next)
            .iter()
            .copied()
            .filter(|&c| placed.iter().any(|&a| l.leq(a, c)))
            .collect();
        for b in 0..l.len() {
            if b == next || !l.leq(next, b) {
                continue;
            }
            if let Some(&ai) = placed.iter().find(|&&a| l.leq(a, b)) {
                if !good_covers.iter().any(|&c| l.leq(c, b)) {
                    return Some((ai, b));
                }
            }
        }
        None
    }

    /// Condition (1) for placing `next` after `placed`: the required ordering
    /// of `[next, 1̂]`, if one exists.
    fn condition_one(&self, placed: &[usize], next: usize) -> Option<Ordering> {
        let required = self.covers_above(next, placed);
        self.find(next, required)
    }

    /// A recursive atom ordering of `[x, 1̂]` whose first atoms are exactly
    /// the covers selected by `required`.
    pub fn find(&self, x: usize, required: u64) -> Option<Ordering> {
        if let Some(hit) = self.memo.lock().expect("memo lock").get(&(x, required)) {
            return hit.clone();
        }
        let result = self.search(x, required, None);
        // Inserts are idempotent: the search is deterministic.
        self.memo
            .lock()
            .expect("memo lock")
            .entry((x, required))
            .or_insert(result)
            .clone()
    }

    fn search(&self, x: usize, required: u64, first: Option<usize>) -> Option<Ordering> {
        let atoms = self.l.upper_covers(x);
        if self.interval_rank(x) <= 1 {
            let mut order: Vec<usize> = ones(required).map(|k| atoms[k as usize]).collect();
            order.extend(
                atoms
                    .iter()
                    .enumerate()
                    .filter(|&(k, _)| required >> k & 1 == 0)
                    .map(|(_, &a)| a),
            );
            return Some(Arc::new(order));
        }
        let mut dead: HashSet<u64> = HashSet::new();
        let mut order: Vec<usize> = Vec::with_capacity(atoms.len());
        self.extend(atoms, required, first, 0, &mut order, &mut dead)
            .then(|| Arc::new(order))
    }

    fn extend(
        &self,
        atoms: &[usize],
        required: u64,
        first: Option<usize>,
        used: u64,
        order: &mut Vec<usize>,
        dead: &mut HashSet<u64>,
    ) -> bool {
        if order.len() == atoms.len() {
            return true;
        }
        if dead.contains(&used) {
            return false;
        }
        let in_prefix = used & required != required;
        for (k, &c) in atoms.iter().enumerate() {
            if used >> k & 1 == 1 || (in_prefix && required >> k & 1 == 0) {
                continue;
            }
            if order.is_empty() && first.is_some_and(|f| f != c) {
                continue;
            }
            if self.condition_two(order, c).is_some() || self.condition_one(order, c).is_none() {
                continue;
            }
            order.push(c);
            if self.extend(atoms, required, first, used | 1 << k, order, dead) {
                return true;
            }
            order.pop();
        }
        dead.insert(used);
        false
    }

    /// A recursive atom ordering of the whole lattice, trying the possible
    /// first atoms in parallel.
    pub fn find_any(&self) -> Option<Vec<usize>> {
        let l = self.l;
        if self.interval_rank(l.bottom()) <= 1 {
            return self.find(l.bottom(), 0).map(|o| o.to_vec());
        }
        let atoms = l.upper_covers(l.bottom()).to_vec();
        par::find_map_first(&atoms, |&a| self.search(l.bottom(), 0, Some(a))).map(|o| o.to_vec())
    }

    /// Checks `order` (a permutation of the covers of `x`) against both
    /// conditions.
    pub fn check(&self, x: usize, order: &[usize]) -> Verdict {
        let l = self.l;
        if self.interval_rank(x) <= 1 {
            return Ok(());
        }
        for j in 0..order.len() {
            let (placed, next) = (&order[..j], order[j]);
            if let Some((ai, b)) = self.condition_two(placed, next) {
                return Err(Diagnostic::new(
                    "condition-2",
                    "no earlier atom shares a cover with this atom below the common upper bound",
                )
                .with_witness([l.render(ai), l.render(next), l.render(b)]));
            }
            if self.condition_one(placed, next).is_none() {
                let required = self.covers_above(next, placed);
                return Err(Diagnostic::new(
                    "condition-1",
                    "the interval above this atom has no recursive ordering starting with the required covers",
                )
                .with_witness(
                    std::iter::once(l.render(next))
                        .chain(ones(required).map(|k| l.render(l.upper_covers(next)[k as usize]))),
                ));
            }
        }
        Ok(())
    }

    /// For `[x, 1̂]` ordered by `order`, the ordering of `[c, 1̂]` that
    /// witnesses condition (1) at each atom `c`.
    pub fn witness_orders(&self, order: &[usize]) -> Vec<Option<Ordering>> {
        (0..order.len())
            .map(|j| self.condition_one(&order[..j], order[j]))
            .collect()
    }
}

fn check_atom_permutation(l: &SetLattice, order: &[usize]) -> Result<()> {
    let mut got = order.to_vec();
    got.sort_unstable();
    let mut want = l.atoms().to_vec();
    want.sort_unstable();
    if got != want {
        return Err(Error::Precondition("ordering must list every atom exactly once".into()));
    }
    Ok(())
}

/// Checks both conditions of a recursive atom ordering for `order` (lattice
/// indices of the atoms). Condition (1) is required at every position,
/// including the first.
pub fn is_recursive_atom_ordering(l: &SetLattice, order: &[usize]) -> Result<Verdict> {
    let search = RaoSearch::new(l)?;
    check_atom_permutation(l, order)?;
    Ok(search.check(l.bottom(), order))
}

/// Lexicographic order of the maximal chains induced by a recursive atom
/// ordering: a chain `0̂ ⋖ x1 ⋖ x2 ⋖ …` is keyed by the position of `x1`
/// among the atoms, then of `x2` in the witness ordering of `[x1, 1̂]`, and
/// so on. Returns a permutation of the facets of `order_complex(l, false)`.
pub fn chain_order(l: &SetLattice, order: &[usize]) -> Result<Vec<usize>> {
    let search = RaoSearch::new(l)?;
    check_atom_permutation(l, order)?;
    if let Err(d) = search.check(l.bottom(), order) {
        return Err(Error::Precondition(format!("not a recursive atom ordering: {d}")));
    }
    let complex = order_complex(l, false);
    let mut keyed: Vec<(Vec<usize>, usize)> = complex
        .facets
        .iter()
        .enumerate()
        .map(|(f, chain)| (chain_key(&search, order, chain), f))
        .collect();
    keyed.sort();
    Ok(keyed.into_iter().map(|(_, f)| f).collect())
}

fn chain_key(search: &RaoSearch<'_>, top_order: &[usize], chain: &[usize]) -> Vec<usize> {
    let mut key = Vec::with_capacity(chain.len());
    let mut current: Vec<usize> = top_order.to_vec();
    for &next in &chain[1..] {
        let pos = current.iter().position(|&a| a == next).expect("chain steps are covers");
        key.push(pos);
        let witness = search.condition_one(&current[..pos], next);
        current = witness.map(|o| o.to_vec()).unwrap_or_default();
    }
    key
}

/// Pairs each atom with its star partner when the partner is itself an atom.
pub fn atom_star(l: &SetLattice) -> Vec<Option<usize>> {
    let Ground::Signed { n, .. } = l.ground() else {
        return vec![None; l.atoms().len()];
    };
    l.atoms()
        .iter()
        .map(|&a| {
            let s = crate::signed::star_bits(l.element(a), n as usize);
            l.atoms().iter().position(|&b| l.element(b) == s)
        })
        .collect()
}

/// Positions in [`SetLattice::atoms`] of an admissible atom ordering: an
/// admissible independent atom set of size `rank − 1` first, then the
/// remaining atoms, with no atom directly after its star (when that is
/// impossible in rank 2, where every ordering is recursive, the separation
/// is dropped).
pub fn admissible_atom_ordering(l: &SetLattice) -> Result<Vec<usize>> {
    let identity: Vec<usize> = (0..l.atoms().len()).collect();
    admissible_atom_ordering_by(l, &identity)
}

/// As [`admissible_atom_ordering`], with ties broken by `preference` (a
/// permutation of atom positions, most preferred first) instead of by
/// position.
pub fn admissible_atom_ordering_by(l: &SetLattice, preference: &[usize]) -> Result<Vec<usize>> {
    is_cn_lattice(l).map_err(|d| Error::Precondition(format!("not a C_n lattice: {d}")))?;
    let t = l.atoms().len();
    let mut rank_of = vec![usize::MAX; t];
    for (r, &p) in preference.iter().enumerate() {
        if p < t {
            rank_of[p] = r;
        }
    }
    if preference.len() != t || rank_of.contains(&usize::MAX) {
        return Err(Error::Precondition(
            "preference must be a permutation of the atoms".into(),
        ));
    }
    let d = l.lattice_rank().expect("C_n lattices are graded");
    let star = atom_star(l);
    let family = independence_family_atoms(l, Strategy::Fast)?;
    let pair_free = |s: u64| ones(s).all(|k| star[k as usize].is_none_or(|p| s >> p & 1 == 0));
    let by_preference = |s: u64| {
        let mut v: Vec<usize> = ones(s).map(|k| k as usize).collect();
        v.sort_by_key(|&k| rank_of[k]);
        v
    };
    let seed = family
        .of_size(d.saturating_sub(1))
        .filter(|&s| pair_free(s))
        .min_by_key(|&s| by_preference(s).into_iter().map(|k| rank_of[k]).collect::<Vec<_>>())
        .ok_or_else(|| Error::Internal("no admissible independent set of size rank − 1".into()))?;
    let head = by_preference(seed);
    let rest = by_preference(((1u64 << t) - 1) & !seed);
    match star_separated_extension(&head, &rest, &star) {
        Some(order) => Ok(order),
        // In rank 2 every ordering is recursive, and two atoms that are each
        // other's star cannot be separated.
        None if d <= 2 => Ok(head.into_iter().chain(rest).collect()),
        None => Err(Error::Internal("no star-separated extension exists".into())),
    }
}

/// Orders `rest` after `head` (both permuted as needed) so that no atom
/// directly follows its star partner. Deterministic backtracking.
fn star_separated_extension(head: &[usize], rest: &[usize], star: &[Option<usize>]) -> Option<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, pools: &mut [Vec<usize>], star: &[Option<usize>]) -> bool {
        let Some(pool) = pools.iter().position(|p| !p.is_empty()) else {
            return true;
        };
        for k in 0..pools[pool].len() {
            let c = pools[pool][k];
            if prefix.last().is_some_and(|&p| star[p] == Some(c)) {
                continue;
            }
            pools[pool].remove(k);
            prefix.push(c);
            if go(prefix, pools, star) {
                return true;
            }
            prefix.pop();
            pools[pool].insert(k, c);
        }
        false
    }
    let mut pools = [head.to_vec(), rest.to_vec()];
    let mut prefix = Vec::new();
    go(&mut prefix, &mut pools, star).then_some(prefix)
}

/// Converts atom positions to lattice indices.
pub fn positions_to_atoms(l: &SetLattice, positions: &[usize]) -> Vec<usize> {
    positions.iter().map(|&p| l.atoms()[p]).collect()
}

/// Ordering of the atoms of `[A_i, 1̂]` induced by an ordering of the atoms
/// of `l`: a cover `B` ranks by the earliest atom other than `A_i` below it;
/// ties are broken by lattice index. `order` holds atom positions.
pub fn induced_interval_order(l: &SetLattice, order: &[usize], i: usize) -> Vec<usize> {
    let ai = l.atoms()[order[i]];
    let mut covers: Vec<(usize, usize)> = l
        .upper_covers(ai)
        .iter()
        .map(|&b| {
            let key = order
                .iter()
                .enumerate()
                .filter(|&(p, &a)| p != i && l.leq(l.atoms()[a], b))
                .map(|(p, _)| p)
                .min()
                .unwrap_or(usize::MAX);
            (key, b)
        })
        .collect();
    covers.sort();
    covers.into_iter().map(|(_, b)| b).collect()
}

/// All perfect matchings of `0..t`, as partner tables.
pub fn perfect_matchings(t: usize) -> Vec<Vec<usize>> {
    fn go(free: &[usize], partner: &mut [usize], out: &mut Vec<Vec<usize>>) {
        let Some(&a) = free.first() else {
            out.push(partner.to_vec());
            return;
        };
        for k in 1..free.len() {
            let b = free[k];
            let rest: Vec<usize> = free.iter().copied().filter(|&x| x != a && x != b).collect();
            partner[a] = b;
            partner[b] = a;
            go(&rest, partner, out);
        }
    }
    let mut out = Vec::new();
    if t.is_multiple_of(2) {
        let free: Vec<usize> = (0..t).collect();
        go(&free, &mut vec![usize::MAX; t], &mut out);
    }
    out
}

fn pair_free(s: u64, partner: &[usize]) -> bool {
    ones(s).all(|k| s >> partner[k as usize] & 1 == 0)
}

/// Outcome of a search over star pairings of the atoms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingSearch {
    /// A pairing (partner table over atom positions) for which the property
    /// holds.
    Found(Vec<usize>),
    /// No pairing works; `odd` when the atom count alone rules it out.
    NotFound { odd: bool },
}

impl PairingSearch {
    pub fn holds(&self) -> bool {
        matches!(self, PairingSearch::Found(_))
    }
}

struct AtomData {
    family: IndependenceFamily,
    ranks: HashMap<u64, usize>,
    rank_l: usize,
}

fn atom_data(l: &SetLattice) -> Result<AtomData> {
    l.check_bag()?;
    let family = independence_family_atoms(l, Strategy::Fast)?;
    let ranks = family.members().iter().map(|&i| (i, atom_rank(l, i))).collect();
    Ok(AtomData {
        family,
        ranks,
        rank_l: l.lattice_rank().expect("graded"),
    })
}

/// Some pairing makes the non-maximal geometric independent atom sets
/// (`|I| = rank(I) < rank(L)`) coincide with the non-maximal admissible
/// independent ones (`|I| < rank(L)`, no pair inside).
pub fn theorem_6_1_check(l: &SetLattice) -> Result<PairingSearch> {
    let data = atom_data(l)?;
    let t = l.atoms().len();
    if t % 2 == 1 {
        return Ok(PairingSearch::NotFound { odd: true });
    }
    let non_max: Vec<u64> = data
        .family
        .members()
        .iter()
        .copied()
        .filter(|&i| popcount(i) < data.rank_l)
        .collect();
    let geometric: Vec<bool> = non_max.iter().map(|i| popcount(*i) == data.ranks[i]).collect();
    let matchings = perfect_matchings(t);
    Ok(
        match par::find_map_first(&matchings, |p| {
            non_max
                .iter()
                .zip(&geometric)
                .all(|(&i, &g)| g == pair_free(i, p))
                .then(|| p.clone())
        }) {
            Some(p) => PairingSearch::Found(p),
            None => PairingSearch::NotFound { odd: false },
        },
    )
}

/// Every star-separated linear order of the atoms beginning with an
/// admissible independent set of size `d − 1` (`d` the largest admissible
/// independent size) is a recursive atom ordering, for some pairing.
pub fn theorem_6_2_check(l: &SetLattice) -> Result<PairingSearch> {
    let data = atom_data(l)?;
    let t = l.atoms().len();
    if t % 2 == 1 {
        return Ok(PairingSearch::NotFound { odd: true });
    }
    let search = RaoSearch::new(l)?;
    let matchings = perfect_matchings(t);
    for p in matchings {
        if pairing_satisfies_6_2(l, &data, &search, &p) {
            return Ok(PairingSearch::Found(p));
        }
    }
    Ok(PairingSearch::NotFound { odd: false })
}

fn pairing_satisfies_6_2(l: &SetLattice, data: &AtomData, search: &RaoSearch<'_>, partner: &[usize]) -> bool {
    let t = l.atoms().len();
    let admissible: Vec<u64> = data
        .family
        .members()
        .iter()
        .copied()
        .filter(|&i| pair_free(i, partner))
        .collect();
    let d = admissible.iter().map(|&i| popcount(i)).max().unwrap_or(0);
    let seeds: Vec<u64> = admissible
        .into_iter()
        .filter(|&i| popcount(i) + 1 == d.max(1))
        .collect();
    let orders: Vec<Vec<usize>> = seeds
        .iter()
        .flat_map(|&seed| {
            let head: Vec<usize> = ones(seed).map(|k| k as usize).collect();
            let rest: Vec<usize> = (0..t).filter(|&k| seed >> k & 1 == 0).collect();
            let hl = head.len();
            head.into_iter()
                .permutations(hl)
                .cartesian_product(rest.clone().into_iter().permutations(rest.len()).collect::<Vec<_>>())
                .map(|(h, r)| h.into_iter().chain(r).collect::<Vec<usize>>())
                .filter(|o| o.windows(2).all(|w| partner[w[0]] != w[1]))
                .collect::<Vec<_>>()
        })
        .unique()
        .collect();
    par::all(&orders, |o| search.check(l.bottom(), &positions_to_atoms(l, o)).is_ok())
}

/// Relabels `l` by atoms: element `x` becomes the set of atoms below it,
/// with atom `k` of the pairing's `i`-th pair sent to `i` and its partner
/// to `i*`.
pub fn relabel_by_atoms(l: &SetLattice, partner: &[usize]) -> Result<SetLattice> {
    let t = l.atoms().len();
    let k = t / 2;
    let mut image = vec![0u32; t];
    let mut next = 0usize;
    for a in 0..t {
        if a < partner[a] {
            image[a] = next as u32;
            image[partner[a]] = (k + next) as u32;
            next += 1;
        }
    }
    let family =
        (0..l.len()).map(|x| ones(crate::nbb::atoms_of(l, x)).fold(0u64, |acc, a| acc | 1 << image[a as usize]));
    SetLattice::build(Ground::signed(k), family)
}

/// Some pairing of the atoms makes the atom relabelling a C_n lattice.
pub fn cn_up_to_relabeling(l: &SetLattice) -> Result<PairingSearch> {
    l.check_bag()?;
    let t = l.atoms().len();
    if t % 2 == 1 || t == 0 {
        return Ok(PairingSearch::NotFound { odd: true });
    }
    for p in perfect_matchings(t) {
        if is_cn_lattice(&relabel_by_atoms(l, &p)?).is_ok() {
            return Ok(PairingSearch::Found(p));
        }
    }
    Ok(PairingSearch::NotFound { odd: false })
}

/// For every geometric independent atom set `I` and `a ∈ I`, the joins
/// `{b ∨ a : b ∈ I ∖ {a}}` form a geometric independent atom set of
/// `[a, 1̂]`.
pub fn corollary_5_9_check(l: &SetLattice) -> Result<Verdict> {
    let data = atom_data(l)?;
    let intervals: Vec<(SetLattice, IndependenceFamily)> = l
        .atoms()
        .iter()
        .map(|&a| {
            let up = l.interval(a);
            let fam = independence_family_atoms(&up, Strategy::Fast)?;
            Ok((up, fam))
        })
        .collect::<Result<_>>()?;
    for &i in data.family.members() {
        if popcount(i) != data.ranks[&i] {
            continue;
        }
        for a in ones(i) {
            let (up, fam) = &intervals[a as usize];
            let mut image = 0u64;
            let mut ok = true;
            for b in ones(i & !(1 << a)) {
                let join = atom_join(l, 1 << a | 1 << b);
                match up
                    .index_of(l.element(join))
                    .and_then(|j| up.atoms().iter().position(|&x| x == j))
                {
                    Some(k) if image >> k & 1 == 0 => image |= 1 << k,
                    _ => ok = false,
                }
            }
            ok = ok && fam.contains(image) && atom_rank(up, image) == popcount(image);
            if !ok {
                return Ok(Err(Diagnostic::new(
                    "interval-geometric",
                    "joins with a member are not geometric independent above it",
                )
                .with_witness([render_atom_set(l, i), l.render(l.atoms()[a as usize])])));
            }
        }
    }
    Ok(Ok(()))
}
