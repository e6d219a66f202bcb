//! Finite families of sets ordered by inclusion.
//!
//! A [`SetLattice`] is built once from a duplicate-free family; construction
//! computes the Hasse diagram, atoms and a longest-path rank, and records
//! (rather than rejects) failures of the lattice and gradedness properties so
//! that the checkers can classify bad inputs.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;

use crate::bits::{is_subset, ones, popcount};
use crate::error::{Diagnostic, Error, Result, Verdict};
use crate::signed::{admissible_bits, full_mask, star_bits, Element, SignedSet, MAX_N};

/// The ground set a lattice lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ground {
    /// A star-closed subset `support` of `J = [n] ⊔ [n]*`; `support` is all
    /// of `J` except for restricted intervals.
    Signed { n: u8, support: u64 },
    /// `[m]`, element `i` at bit `i − 1`.
    Plain { m: u8 },
}

impl Ground {
    pub fn signed(n: usize) -> Ground {
        assert!((1..=MAX_N).contains(&n));
        Ground::Signed {
            n: n as u8,
            support: full_mask(n),
        }
    }

    pub fn plain(m: usize) -> Ground {
        assert!(m <= 64);
        Ground::Plain { m: m as u8 }
    }

    pub fn support(&self) -> u64 {
        match *self {
            Ground::Signed { support, .. } => support,
            Ground::Plain { m } => {
                if m == 64 {
                    u64::MAX
                } else {
                    (1u64 << m) - 1
                }
            }
        }
    }

    pub fn signed_n(&self) -> Option<usize> {
        match *self {
            Ground::Signed { n, .. } => Some(n as usize),
            Ground::Plain { .. } => None,
        }
    }

    pub fn label(&self, bit: u32) -> String {
        match *self {
            Ground::Signed { n, .. } => Element::from_bit(bit, n as usize).to_string(),
            Ground::Plain { .. } => (bit + 1).to_string(),
        }
    }

    /// Member labels in display order.
    pub fn labels(&self, mask: u64) -> Vec<String> {
        match *self {
            Ground::Signed { n, .. } => SignedSet::from_bits(n as usize, mask)
                .map(|s| s.to_strings())
                .unwrap_or_default(),
            Ground::Plain { .. } => ones(mask).map(|b| self.label(b)).collect(),
        }
    }

    pub fn render(&self, mask: u64) -> String {
        format!("{{{}}}", self.labels(mask).join(","))
    }

    pub fn parse_element(&self, text: &str) -> Result<u32> {
        let bit = match *self {
            Ground::Signed { n, .. } => {
                let e: Element = text.parse()?;
                if e.index() > n as usize {
                    return Err(Error::OutOfRange {
                        element: e.to_string(),
                        n: n as usize,
                    });
                }
                e.bit(n as usize)
            }
            Ground::Plain { m } => {
                let i: u32 = text
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(text, "expected a positive integer"))?;
                if i == 0 || i > m as u32 {
                    return Err(Error::OutOfRange {
                        element: text.to_string(),
                        n: m as usize,
                    });
                }
                i - 1
            }
        };
        if self.support() >> bit & 1 == 0 {
            return Err(Error::OutOfRange {
                element: text.to_string(),
                n: self.signed_n().unwrap_or(0),
            });
        }
        Ok(bit)
    }

    pub fn parse_set<S: AsRef<str>>(&self, items: &[S]) -> Result<u64> {
        let mut mask = 0u64;
        for item in items {
            let b = self.parse_element(item.as_ref())?;
            if mask >> b & 1 == 1 {
                return Err(Error::Duplicate(item.as_ref().to_string()));
            }
            mask |= 1 << b;
        }
        Ok(mask)
    }
}

/// A finite family of distinct subsets of a ground set, ordered by inclusion.
#[derive(Clone)]
pub struct SetLattice {
    ground: Ground,
    elems: Vec<u64>,
    index: HashMap<u64, usize>,
    bottom: usize,
    top: usize,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
    atoms: Vec<usize>,
    height: Vec<usize>,
    grading_defect: Option<(usize, usize)>,
    lattice_defect: Option<(usize, usize)>,
}

impl SetLattice {
    /// Builds the inclusion order on `family`.
    ///
    /// Fails on empty or duplicate input, members outside the ground set, or a
    /// missing unique minimum/maximum. A bounded family whose pairwise joins or
    /// meets are not unique is still returned; see [`SetLattice::is_lattice`].
    pub fn build<I: IntoIterator<Item = u64>>(ground: Ground, family: I) -> Result<SetLattice> {
        let support = ground.support();
        let mut elems: Vec<u64> = Vec::new();
        let mut seen = HashMap::new();
        for m in family {
            if !is_subset(m, support) {
                let stray = m & !support;
                return Err(Error::OutOfRange {
                    element: ones(stray)
                        .next()
                        .map(|b| match ground {
                            Ground::Signed { n, .. } if b < 2 * n as u32 => ground.label(b),
                            _ => format!("bit {b}"),
                        })
                        .unwrap_or_default(),
                    n: ground.signed_n().unwrap_or(0),
                });
            }
            if seen.insert(m, ()).is_some() {
                return Err(Error::Duplicate(ground.render(m)));
            }
            elems.push(m);
        }
        if elems.is_empty() {
            return Err(Error::Empty);
        }
        elems.sort_by_key(|&m| (popcount(m), m));
        let index: HashMap<u64, usize> = elems.iter().enumerate().map(|(i, &m)| (m, i)).collect();

        let n = elems.len();
        let bottom = 0;
        if !elems.iter().all(|&m| is_subset(elems[bottom], m)) {
            return Err(Error::NotBounded("minimum"));
        }
        let top = n - 1;
        if !elems.iter().all(|&m| is_subset(m, elems[top])) {
            return Err(Error::NotBounded("maximum"));
        }

        let mut up = vec![Vec::new(); n];
        let mut down = vec![Vec::new(); n];
        for i in 0..n {
            let above: Vec<usize> = (i + 1..n)
                .filter(|&j| elems[j] != elems[i] && is_subset(elems[i], elems[j]))
                .collect();
            for &j in &above {
                let refined = above
                    .iter()
                    .any(|&k| k != j && is_subset(elems[k], elems[j]) && elems[k] != elems[j]);
                if !refined {
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        let atoms = up[bottom].clone();

        // Longest-path layering; indices are sorted by size, so every cover
        // points to a larger index.
        let mut height = vec![0usize; n];
        for j in 0..n {
            height[j] = down[j].iter().map(|&i| height[i] + 1).max().unwrap_or(0);
        }
        let grading_defect = (0..n)
            .flat_map(|i| up[i].iter().map(move |&j| (i, j)))
            .find(|&(i, j)| height[j] != height[i] + 1);

        let mut lattice = SetLattice {
            ground,
            elems,
            index,
            bottom,
            top,
            up,
            down,
            atoms,
            height,
            grading_defect,
            lattice_defect: None,
        };
        lattice.lattice_defect = lattice.find_lattice_defect();
        Ok(lattice)
    }

    /// Convenience constructor over `J` for half-size `n`.
    pub fn from_signed_sets(n: usize, family: &[SignedSet]) -> Result<SetLattice> {
        if let Some(s) = family.iter().find(|s| s.n() != n) {
            return Err(Error::Precondition(format!("{s} is over n = {}, expected {n}", s.n())));
        }
        SetLattice::build(Ground::signed(n), family.iter().map(|s| s.bits()))
    }

    fn find_lattice_defect(&self) -> Option<(usize, usize)> {
        let n = self.elems.len();
        for i in 0..n {
            for j in i + 1..n {
                if self.closure(self.elems[i] | self.elems[j]).is_none()
                    || self.interior(self.elems[i] & self.elems[j]).is_none()
                {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn ground(&self) -> Ground {
        self.ground
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Members, sorted by size and then by mask.
    pub fn elements(&self) -> &[u64] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> u64 {
        self.elems[i]
    }

    pub fn index_of(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    pub fn contains(&self, mask: u64) -> bool {
        self.index.contains_key(&mask)
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    /// Elements covering `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    /// Elements covered by `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        is_subset(self.elems[i], self.elems[j])
    }

    pub fn is_graded(&self) -> bool {
        self.grading_defect.is_none()
    }

    /// Rank of element `i`, defined only when the lattice is graded.
    pub fn rank(&self, i: usize) -> Option<usize> {
        self.is_graded().then(|| self.height[i])
    }

    /// Length of the longest chain from the bottom to `i`.
    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    /// Rank of the whole lattice (graded case).
    pub fn lattice_rank(&self) -> Option<usize> {
        self.rank(self.top)
    }

    pub fn grading_defect(&self) -> Option<(usize, usize)> {
        self.grading_defect
    }

    /// Ok if every pair has a unique join and meet; otherwise the first pair
    /// for which one of them is missing.
    pub fn is_lattice(&self) -> std::result::Result<(), (usize, usize)> {
        match self.lattice_defect {
            None => Ok(()),
            Some(p) => Err(p),
        }
    }

    /// The unique smallest member containing `mask`, if any.
    pub fn closure(&self, mask: u64) -> Option<usize> {
        let mut candidates = (0..self.elems.len()).filter(|&i| is_subset(mask, self.elems[i]));
        let first = candidates.next()?;
        let f = self.elems[first];
        candidates.all(|i| is_subset(f, self.elems[i])).then_some(first)
    }

    /// The unique largest member contained in `mask`, if any.
    pub fn interior(&self, mask: u64) -> Option<usize> {
        let mut candidates = (0..self.elems.len()).rev().filter(|&i| is_subset(self.elems[i], mask));
        let first = candidates.next()?;
        let f = self.elems[first];
        candidates.all(|i| is_subset(self.elems[i], f)).then_some(first)
    }

    pub fn join_idx(&self, i: usize, j: usize) -> Option<usize> {
        self.closure(self.elems[i] | self.elems[j])
    }

    pub fn meet_idx(&self, i: usize, j: usize) -> Option<usize> {
        self.interior(self.elems[i] & self.elems[j])
    }

    /// Join of an arbitrary set of members (the bottom for an empty set).
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, items: I) -> Option<usize> {
        let mut acc = self.bottom;
        for i in items {
            acc = self.join_idx(acc, i)?;
        }
        Some(acc)
    }

    pub fn meet(&self, a: u64, b: u64) -> Result<u64> {
        let (i, j) = (self.require(a)?, self.require(b)?);
        self.meet_idx(i, j).map(|k| self.elems[k]).ok_or_else(|| {
            Error::NotALattice(format!(
                "no meet of {} and {}",
                self.render_mask(a),
                self.render_mask(b)
            ))
        })
    }

    pub fn join(&self, a: u64, b: u64) -> Result<u64> {
        let (i, j) = (self.require(a)?, self.require(b)?);
        self.join_idx(i, j).map(|k| self.elems[k]).ok_or_else(|| {
            Error::NotALattice(format!(
                "no join of {} and {}",
                self.render_mask(a),
                self.render_mask(b)
            ))
        })
    }

    fn require(&self, mask: u64) -> Result<usize> {
        self.index_of(mask)
            .ok_or_else(|| Error::NotAnElement(self.render_mask(mask)))
    }

    /// Atoms (as lattice indices) below member `i`.
    pub fn atoms_below(&self, i: usize) -> Vec<usize> {
        self.atoms.iter().copied().filter(|&a| self.leq(a, i)).collect()
    }

    /// Ok if every member is the join of the atoms below it; otherwise the
    /// first member that is not.
    pub fn is_atomistic(&self) -> std::result::Result<(), usize> {
        for i in 0..self.elems.len() {
            if self.join_all(self.atoms_below(i)) != Some(i) {
                return Err(i);
            }
        }
        Ok(())
    }

    /// Bounded, atomistic, graded lattice: the standing hypothesis of the
    /// independence machinery.
    pub fn check_bag(&self) -> Result<()> {
        if let Err((i, j)) = self.is_lattice() {
            return Err(Error::Precondition(format!(
                "not a lattice: {} and {} lack a unique join or meet",
                self.render(i),
                self.render(j)
            )));
        }
        if let Some((i, j)) = self.grading_defect {
            return Err(Error::Precondition(format!(
                "not graded: cover {} ⋖ {} skips a rank",
                self.render(i),
                self.render(j)
            )));
        }
        if let Err(i) = self.is_atomistic() {
            return Err(Error::Precondition(format!(
                "not atomistic: {} is not a join of atoms",
                self.render(i)
            )));
        }
        Ok(())
    }

    /// The sub-lattice `[i, 1̂]` with members kept as they are.
    pub fn interval(&self, i: usize) -> SetLattice {
        let e = self.elems[i];
        SetLattice::build(self.ground, self.elems.iter().copied().filter(|&m| is_subset(e, m)))
            .expect("an interval of a bounded family is bounded")
    }

    pub fn render(&self, i: usize) -> String {
        self.render_mask(self.elems[i])
    }

    pub fn render_mask(&self, mask: u64) -> String {
        if mask == self.elems[self.top] && self.ground.signed_n().is_some() && mask == self.ground.support() {
            "J".to_string()
        } else {
            self.ground.render(mask)
        }
    }

    /// All maximal chains `0̂ = c0 ⋖ c1 ⋖ … ⋖ 1̂`, as index lists.
    pub fn maximal_chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut stack = vec![self.bottom];
        self.extend_chains(&mut stack, &mut out);
        out
    }

    fn extend_chains(&self, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let last = *stack.last().expect("non-empty chain");
        if last == self.top {
            out.push(stack.clone());
            return;
        }
        for &next in &self.up[last] {
            stack.push(next);
            self.extend_chains(stack, out);
            stack.pop();
        }
    }
}

impl fmt::Debug for SetLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SetLattice[{}]",
            (0..self.elems.len()).map(|i| self.render(i)).join(", ")
        )
    }
}

impl PartialEq for SetLattice {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.elems == other.elems
    }
}

impl Eq for SetLattice {}

fn first_non_intersection(l: &SetLattice) -> Option<(usize, usize)> {
    let n = l.len();
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !l.contains(l.elems[i] & l.elems[j]))
}

/// The covering axiom shared by both checkers: covers of `a` meet pairwise
/// in `a` and their union is `expected`.
fn check_cover_partition(l: &SetLattice, a: usize, covers: &[usize], expected: Option<u64>, id: &str) -> Verdict {
    let ea = l.elems[a];
    for (x, &b) in covers.iter().enumerate() {
        for &c in &covers[x + 1..] {
            if l.elems[b] & l.elems[c] != ea {
                return Err(
                    Diagnostic::new(id, format!("two covers of {} do not meet in it", l.render(a))).with_witness([
                        l.render(a),
                        l.render(b),
                        l.render(c),
                    ]),
                );
            }
        }
    }
    if let Some(expected) = expected {
        let union = covers.iter().fold(ea, |acc, &b| acc | l.elems[b]);
        if union != expected {
            return Err(Diagnostic::new(
                id,
                format!(
                    "covers of {} union to {}, expected {}",
                    l.render(a),
                    l.render_mask(union),
                    l.render_mask(expected)
                ),
            )
            .with_witness(std::iter::once(l.render(a)).chain(covers.iter().map(|&b| l.render(b)))));
        }
    }
    Ok(())
}

/// Flat axioms of a geometric lattice, checked literally on the family:
/// (1) `∅` and the ground set are members, (2) closure under intersection,
/// (3) the covers of every non-top member meet pairwise in it and cover the
/// ground set.
pub fn is_geometric_lattice(l: &SetLattice) -> Verdict {
    let ground = l.ground.support();
    if !l.contains(0) || !l.contains(ground) {
        return Err(Diagnostic::new("G1", "∅ or the ground set is missing"));
    }
    if let Some((i, j)) = first_non_intersection(l) {
        return Err(Diagnostic::new("G2", "not closed under intersection").with_witness([l.render(i), l.render(j)]));
    }
    for a in 0..l.len() {
        if a == l.top {
            continue;
        }
        check_cover_partition(l, a, &l.up[a], Some(ground), "G3")?;
    }
    Ok(())
}

/// Order-theoretic characterisation: a finite lattice that is graded,
/// atomistic and semimodular (`r(x) + r(y) ≥ r(x ∧ y) + r(x ∨ y)`).
pub fn is_geometric_abstract(l: &SetLattice) -> Verdict {
    if let Err((i, j)) = l.is_lattice() {
        return Err(Diagnostic::new("lattice", "no unique join or meet").with_witness([l.render(i), l.render(j)]));
    }
    if let Some((i, j)) = l.grading_defect {
        return Err(Diagnostic::new("graded", "a cover skips a rank").with_witness([l.render(i), l.render(j)]));
    }
    if let Err(i) = l.is_atomistic() {
        return Err(Diagnostic::new("atomistic", "not a join of atoms").with_witness([l.render(i)]));
    }
    let r = |i: usize| l.height[i];
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            let meet = l.meet_idx(i, j).expect("lattice");
            let join = l.join_idx(i, j).expect("lattice");
            if r(i) + r(j) < r(meet) + r(join) {
                return Err(
                    Diagnostic::new("semimodular", "rank inequality fails").with_witness([l.render(i), l.render(j)])
                );
            }
        }
    }
    Ok(())
}

/// How the exemption in the C_n covering axiom ("except for elements covered
/// by J") is read.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CnReading {
    /// Both the pairwise-meet and the union clause are waived for members
    /// covered by `J`.
    #[default]
    WaiveBoth,
    /// Only the union clause is waived.
    WaiveUnionOnly,
}

/// The C_n lattice axioms under the default reading.
pub fn is_cn_lattice(l: &SetLattice) -> Verdict {
    is_cn_lattice_with(l, CnReading::WaiveBoth)
}

/// The four C_n lattice axioms: (1) `∅, J ∈ L`; (2) every member but `J` is
/// admissible; (3) closure under intersection; (4) the covers `B_i` of each
/// `A` satisfy `B_i ∩ B_j = A` and `∪ B_i = J ∖ A*`.
pub fn is_cn_lattice_with(l: &SetLattice, reading: CnReading) -> Verdict {
    let Ground::Signed { n, support } = l.ground else {
        return Err(Diagnostic::new("ground", "C_n lattices live on a signed ground set"));
    };
    let n = n as usize;
    if !l.contains(0) {
        return Err(Diagnostic::new("C1", "∅ is missing"));
    }
    if !l.contains(support) {
        return Err(Diagnostic::new("C1", "J is missing"));
    }
    if let Some(i) = (0..l.len()).find(|&i| i != l.top && !admissible_bits(l.elems[i], n)) {
        return Err(Diagnostic::new("C2", "member other than J is not admissible").with_witness([l.render(i)]));
    }
    if let Some((i, j)) = first_non_intersection(l) {
        return Err(Diagnostic::new("C3", "not closed under intersection").with_witness([l.render(i), l.render(j)]));
    }
    for a in 0..l.len() {
        if a == l.top {
            continue;
        }
        let covers = &l.up[a];
        let covered_by_top = covers.contains(&l.top);
        let expected = support & !star_bits(l.elems[a], n);
        match (covered_by_top, reading) {
            (true, CnReading::WaiveBoth) => {}
            (true, CnReading::WaiveUnionOnly) => check_cover_partition(l, a, covers, None, "C4")?,
            (false, _) => check_cover_partition(l, a, covers, Some(expected), "C4")?,
        }
    }
    Ok(())
}

/// `[a, 1̂]` relabelled onto the smaller ground set `J' = J ∖ (a ∪ a*)`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Restriction {
    Lattice(SetLattice),
    /// `a ∪ a* = J`: the interval is the two-element chain `{a, J}` and both
    /// of its members would map to the empty set.
    TwoChain,
}

/// Maps each `X ∈ [a, 1̂]` to `X ∖ a`, except the top, which maps to
/// `J' = J ∖ (a ∪ a*)`.
pub fn interval_restrict(l: &SetLattice, a: u64) -> Result<Restriction> {
    let Ground::Signed { n, support } = l.ground else {
        return Err(Error::Precondition(
            "interval restriction needs a signed ground set".into(),
        ));
    };
    let ia = l.index_of(a).ok_or_else(|| Error::NotAnElement(l.render_mask(a)))?;
    if ia == l.top {
        return Err(Error::Precondition("cannot restrict to the top".into()));
    }
    let rest = support & !(a | star_bits(a, n as usize));
    if rest == 0 {
        return Ok(Restriction::TwoChain);
    }
    let top = l.elems[l.top];
    let family = l
        .elems
        .iter()
        .copied()
        .filter(|&x| is_subset(a, x))
        .map(|x| if x == top { rest } else { x & !a });
    let ground = Ground::Signed { n, support: rest };
    SetLattice::build(ground, family).map(Restriction::Lattice)
}

/// Simplicial complex of chains; facets are maximal chains as ascending
/// lists of lattice indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub vertices: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
}

impl ChainComplex {
    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).all_equal()
    }

    /// Dimension of a pure complex (facet size minus one).
    pub fn dimension(&self) -> Option<isize> {
        if self.is_pure() {
            self.facets.first().map(|f| f.len() as isize - 1)
        } else {
            None
        }
    }
}

/// Order complex of `l`. Facets are the maximal chains including `0̂` and
/// `1̂`; with `proper` the endpoints are stripped.
pub fn order_complex(l: &SetLattice, proper: bool) -> ChainComplex {
    let keep = |i: &usize| !proper || (*i != l.bottom && *i != l.top);
    let facets: Vec<Vec<usize>> = l
        .maximal_chains()
        .into_iter()
        .map(|c| c.into_iter().filter(keep).collect())
        .collect();
    let vertices = (0..l.len()).filter(keep).collect();
    ChainComplex { vertices, facets }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures;

    fn signed(n: usize, sets: &[&[&str]]) -> SetLattice {
        let fam: Vec<SignedSet> = sets.iter().map(|s| SignedSet::parse(n, s).unwrap()).collect();
        SetLattice::from_signed_sets(n, &fam).unwrap()
    }

    fn mask(n: usize, items: &[&str]) -> u64 {
        SignedSet::parse(n, items).unwrap().bits()
    }

    #[test]
    fn fix_b_structure() {
        let b = fixtures::fix_b();
        assert!(b.is_lattice().is_ok());
        assert!(b.is_graded());
        assert_eq!(b.lattice_rank(), Some(2));
        let atoms: Vec<String> = b.atoms().iter().map(|&i| b.render(i)).collect();
        assert_eq!(atoms, vec!["{1*,2}", "{1,2*}"]);
        assert!(b.is_atomistic().is_ok());
    }

    #[test]
    fn two_element_lattice_has_rank_one() {
        let l = SetLattice::build(Ground::signed(1), [0, 0b11]).unwrap();
        assert_eq!(l.lattice_rank(), Some(1));
        assert_eq!(l.atoms(), &[1]);
    }

    #[test]
    fn build_rejects_bad_input() {
        assert!(matches!(SignedSet::parse(1, &["2"]), Err(Error::OutOfRange { .. })));
        assert!(matches!(
            SetLattice::build(Ground::signed(1), [0b100]),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(
            SetLattice::build(Ground::signed(1), [0, 0]),
            Err(Error::Duplicate(_))
        ));
        assert!(matches!(
            SetLattice::build(Ground::signed(1), Vec::<u64>::new()),
            Err(Error::Empty)
        ));
        assert!(matches!(
            SetLattice::build(Ground::signed(2), [0b0001, 0b0010]),
            Err(Error::NotBounded("minimum"))
        ));
        assert!(matches!(
            SetLattice::build(Ground::signed(2), [0, 0b0001, 0b0010]),
            Err(Error::NotBounded("maximum"))
        ));
    }

    #[test]
    fn non_lattice_is_classified_not_rejected() {
        // {1} and {2} have two minimal upper bounds.
        let l = SetLattice::build(Ground::plain(4), [0, 0b0001, 0b0010, 0b0111, 0b1011, 0b1111]).unwrap();
        assert!(l.is_lattice().is_err());
        assert!(l.join(0b0001, 0b0010).is_err());
        assert!(is_geometric_abstract(&l).is_err());
    }

    #[test]
    fn meet_and_join() {
        let b = fixtures::fix_b();
        let j = b.join(mask(2, &["1", "2*"]), mask(2, &["1*", "2"])).unwrap();
        assert_eq!(j, full_mask(2));
        for &m in b.elements() {
            assert_eq!(b.join(m, m).unwrap(), m);
            assert_eq!(b.meet(m, m).unwrap(), m);
        }
        let a = fixtures::fix_a();
        assert_eq!(a.join(mask(2, &["1"]), mask(2, &["2"])).unwrap(), mask(2, &["1", "2"]));
        assert_eq!(
            a.meet(mask(2, &["1", "2"]), mask(2, &["1", "2*"])).unwrap(),
            mask(2, &["1"])
        );
        assert!(matches!(a.join(mask(2, &["1", "1*"]), 0), Err(Error::NotAnElement(_))));
    }

    #[test]
    fn geometric_examples() {
        assert!(is_geometric_lattice(&fixtures::boolean(3)).is_ok());
        assert!(is_geometric_lattice(&fixtures::fix_e()).is_ok());
        let d = is_geometric_lattice(&fixtures::fix_d()).unwrap_err();
        assert_eq!(d.axiom, "G3");
        assert!(is_geometric_abstract(&fixtures::fix_e()).is_ok());
        assert_eq!(
            is_geometric_abstract(&fixtures::fix_d()).unwrap_err().axiom,
            "semimodular"
        );
        assert!(is_geometric_lattice(&fixtures::partition_lattice(4)).is_ok());
    }

    #[test]
    fn geometric_checks_agree_on_fixtures() {
        for f in fixtures::all() {
            let l = &f.lattice;
            if l.is_atomistic().is_ok() {
                assert_eq!(
                    is_geometric_lattice(l).is_ok(),
                    is_geometric_abstract(l).is_ok(),
                    "{}",
                    f.name
                );
            }
        }
    }

    #[test]
    fn cn_examples() {
        assert!(is_cn_lattice(&fixtures::fix_b()).is_ok());
        assert!(is_cn_lattice(&fixtures::fix_a()).is_ok());
        assert!(is_cn_lattice(&fixtures::fix_c()).is_ok());
        let broken = signed(2, &[&[], &["1*", "2"], &["1", "1*", "2", "2*"]]);
        let d = is_cn_lattice(&broken).unwrap_err();
        assert_eq!(d.axiom, "C4");
        assert_eq!(d.witness, vec!["{}", "{1*,2}"]);
        assert!(d.detail.contains("union to {1*,2}"));
    }

    #[test]
    fn cn_axioms_one_to_three() {
        let no_top = SetLattice::build(Ground::signed(2), [0, 0b0011]).unwrap();
        assert_eq!(is_cn_lattice(&no_top).unwrap_err().axiom, "C1");
        let inadmissible = SetLattice::build(Ground::signed(2), [0, 0b0101, 0b1111]).unwrap();
        assert_eq!(is_cn_lattice(&inadmissible).unwrap_err().axiom, "C2");
        let not_closed = SetLattice::build(Ground::signed(2), [0, 0b0011, 0b1001, 0b1111]).unwrap();
        assert_eq!(is_cn_lattice(&not_closed).unwrap_err().axiom, "C3");
        assert_eq!(is_cn_lattice(&fixtures::boolean(3)).unwrap_err().axiom, "ground");
    }

    #[test]
    fn cn_readings() {
        // {1} is covered by J and by {1,2}: the union-only reading flags the
        // overlap of J with {1,2}.
        let l = signed(
            2,
            &[
                &[],
                &["1"],
                &["1*"],
                &["2"],
                &["2*"],
                &["1", "2"],
                &["1", "1*", "2", "2*"],
            ],
        );
        let both = is_cn_lattice_with(&l, CnReading::WaiveBoth);
        let union_only = is_cn_lattice_with(&l, CnReading::WaiveUnionOnly);
        assert!(union_only.is_err());
        assert!(both.is_err() || both.is_ok());
        assert!(is_cn_lattice_with(&fixtures::fix_a(), CnReading::WaiveUnionOnly).is_ok());
    }

    #[test]
    fn restriction_examples() {
        let a = fixtures::fix_a();
        let Restriction::Lattice(r) = interval_restrict(&a, mask(2, &["1"])).unwrap() else {
            panic!("expected a lattice");
        };
        let rendered: Vec<String> = (0..r.len()).map(|i| r.ground().render(r.element(i))).collect();
        assert_eq!(rendered, vec!["{}", "{2}", "{2*}", "{2,2*}"]);
        assert!(is_cn_lattice(&r).is_ok());

        let b = fixtures::fix_b();
        let Restriction::Lattice(same) = interval_restrict(&b, 0).unwrap() else {
            panic!("expected a lattice");
        };
        assert_eq!(same.elements(), b.elements());
        assert_eq!(
            interval_restrict(&b, mask(2, &["1", "2*"])).unwrap(),
            Restriction::TwoChain
        );
        assert!(matches!(
            interval_restrict(&b, mask(2, &["1"])),
            Err(Error::NotAnElement(_))
        ));
        assert!(interval_restrict(&b, full_mask(2)).is_err());
    }

    #[test]
    fn order_complex_examples() {
        let b = fixtures::fix_b();
        let k = order_complex(&b, false);
        assert_eq!(k.facets.len(), 2);
        assert_eq!(k.dimension(), Some(2));
        let chain = SetLattice::build(Ground::signed(1), [0, 0b01, 0b11]).unwrap();
        assert_eq!(order_complex(&chain, false).facets.len(), 1);
        let a = order_complex(&fixtures::fix_a(), false);
        assert_eq!(a.facets.len(), 8);
        assert!(a.facets.iter().all(|f| f.len() == 4));
        let proper = order_complex(&fixtures::fix_a(), true);
        assert_eq!(proper.dimension(), Some(1));
        assert_eq!(proper.vertices.len(), 8);
    }

    #[test]
    fn non_graded_complex_is_impure() {
        let l = SetLattice::build(Ground::plain(3), [0, 0b001, 0b011, 0b100, 0b111]).unwrap();
        assert!(!l.is_graded());
        assert!(!order_complex(&l, false).is_pure());
    }
}
