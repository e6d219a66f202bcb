//! The signed ground set `J = [n] ⊔ [n]*`.
//!
//! Element `i` lives at bit `i − 1` and `i*` at bit `n + i − 1`, so the star
//! involution on a set is a swap of the low and high halves of the mask.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::bits::{is_subset, ones, popcount};
use crate::error::{Error, Result};

pub const MAX_N: usize = 32;

/// Mask of the full ground set `J` for half-size `n`.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if 2 * n >= 64 {
        u64::MAX
    } else {
        (1u64 << (2 * n)) - 1
    }
}

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Elementwise star of a mask over `J`.
#[inline]
pub fn star_bits(bits: u64, n: usize) -> u64 {
    let low = low_mask(n);
    ((bits & low) << n) | ((bits >> n) & low)
}

#[inline]
pub fn admissible_bits(bits: u64, n: usize) -> bool {
    bits & star_bits(bits, n) == 0
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedSize(n))
    }
}

/// An element of `J`: an index in `1..=n`, possibly starred.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    index: u8,
    starred: bool,
}

impl Element {
    pub fn new(index: usize, starred: bool) -> Self {
        assert!((1..=MAX_N).contains(&index), "element index {index} out of range");
        Element {
            index: index as u8,
            starred,
        }
    }

    pub fn plain(index: usize) -> Self {
        Element::new(index, false)
    }

    pub fn starred(index: usize) -> Self {
        Element::new(index, true)
    }

    pub fn index(self) -> usize {
        self.index as usize
    }

    pub fn is_starred(self) -> bool {
        self.starred
    }

    pub fn star(self) -> Self {
        Element {
            index: self.index,
            starred: !self.starred,
        }
    }

    pub fn bit(self, n: usize) -> u32 {
        let base = self.index as u32 - 1;
        if self.starred {
            base + n as u32
        } else {
            base
        }
    }

    pub fn from_bit(bit: u32, n: usize) -> Self {
        let bit = bit as usize;
        if bit < n {
            Element::plain(bit + 1)
        } else {
            Element::starred(bit - n + 1)
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.starred {
            write!(f, "{}*", self.index)
        } else {
            write!(f, "{}", self.index)
        }
    }
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (digits, starred) = match t.strip_suffix('*') {
            Some(d) => (d, true),
            None => (t, false),
        };
        let index: usize = digits
            .parse()
            .map_err(|_| Error::parse(s, "expected a positive integer with optional trailing `*`"))?;
        if !(1..=MAX_N).contains(&index) {
            return Err(Error::parse(s, "element index must lie in 1..=32"));
        }
        Ok(Element::new(index, starred))
    }
}

/// A subset of `J` for a fixed half-size `n`, stored as a `2n`-bit mask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedSet {
    n: u8,
    bits: u64,
}

impl SignedSet {
    pub fn empty(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n));
        SignedSet { n: n as u8, bits: 0 }
    }

    /// The full ground set `J`.
    pub fn full(n: usize) -> Self {
        assert!((1..=MAX_N).contains(&n));
        SignedSet {
            n: n as u8,
            bits: full_mask(n),
        }
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<Self> {
        check_n(n)?;
        if !is_subset(bits, full_mask(n)) {
            return Err(Error::OutOfRange {
                element: format!("bit mask {bits:#x}"),
                n,
            });
        }
        Ok(SignedSet { n: n as u8, bits })
    }

    pub fn from_elements<I: IntoIterator<Item = Element>>(n: usize, elements: I) -> Result<Self> {
        check_n(n)?;
        let mut bits = 0u64;
        for e in elements {
            if e.index() > n {
                return Err(Error::OutOfRange {
                    element: e.to_string(),
                    n,
                });
            }
            bits |= 1 << e.bit(n);
        }
        Ok(SignedSet { n: n as u8, bits })
    }

    /// Parses element strings such as `["1", "2*"]`.
    pub fn parse<S: AsRef<str>>(n: usize, items: &[S]) -> Result<Self> {
        let mut set = SignedSet::empty(n);
        for item in items {
            let e: Element = item.as_ref().parse()?;
            if e.index() > n {
                return Err(Error::OutOfRange {
                    element: e.to_string(),
                    n,
                });
            }
            let bit = 1u64 << e.bit(n);
            if set.bits & bit != 0 {
                return Err(Error::Duplicate(e.to_string()));
            }
            set.bits |= bit;
        }
        Ok(set)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn len(&self) -> usize {
        popcount(self.bits)
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: Element) -> bool {
        e.index() <= self.n() && self.bits >> e.bit(self.n()) & 1 == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        let n = self.n();
        ones(self.bits).map(move |b| Element::from_bit(b, n))
    }

    fn same_n(&self, other: &SignedSet) {
        assert_eq!(self.n, other.n, "sets over different ground sets");
    }

    pub fn union(&self, other: &SignedSet) -> SignedSet {
        self.same_n(other);
        SignedSet {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &SignedSet) -> SignedSet {
        self.same_n(other);
        SignedSet {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &SignedSet) -> SignedSet {
        self.same_n(other);
        SignedSet {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    pub fn is_subset(&self, other: &SignedSet) -> bool {
        self.same_n(other);
        is_subset(self.bits, other.bits)
    }

    pub fn star(&self) -> SignedSet {
        SignedSet {
            n: self.n,
            bits: star_bits(self.bits, self.n()),
        }
    }

    pub fn is_admissible(&self) -> bool {
        admissible_bits(self.bits, self.n())
    }

    /// Members sorted by index, unstarred before starred.
    pub fn sorted_elements(&self) -> Vec<Element> {
        let mut v: Vec<Element> = self.elements().collect();
        v.sort();
        v
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.sorted_elements().iter().map(|e| e.to_string()).collect()
    }
}

impl fmt::Display for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.sorted_elements().iter().join(","))
    }
}

impl fmt::Debug for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All `2^n` transversals (maximal admissible sets) of `J`.
pub fn transversals(n: usize) -> impl Iterator<Item = SignedSet> {
    assert!((1..=MAX_N).contains(&n) && n < 32);
    (0u64..1 << n).map(move |signs| {
        let low = low_mask(n) & !signs;
        SignedSet {
            n: n as u8,
            bits: low | (signs << n),
        }
    })
}

/// Admissible subsets of the mask `support` (which should be star-closed).
pub fn admissible_subsets(support: u64, n: usize) -> impl Iterator<Item = u64> {
    crate::bits::submasks(support).filter(move |&s| admissible_bits(s, n))
}

/// A linear order on `J`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroundOrder {
    n: u8,
    sequence: Vec<Element>,
    position: Vec<u8>,
}

impl GroundOrder {
    pub fn new(n: usize, sequence: Vec<Element>) -> Result<Self> {
        check_n(n)?;
        if sequence.len() != 2 * n {
            return Err(Error::SizeMismatch {
                left: sequence.len(),
                right: 2 * n,
            });
        }
        let mut position = vec![u8::MAX; 2 * n];
        for (i, e) in sequence.iter().enumerate() {
            if e.index() > n {
                return Err(Error::OutOfRange {
                    element: e.to_string(),
                    n,
                });
            }
            let b = e.bit(n) as usize;
            if position[b] != u8::MAX {
                return Err(Error::Duplicate(e.to_string()));
            }
            position[b] = i as u8;
        }
        Ok(GroundOrder {
            n: n as u8,
            sequence,
            position,
        })
    }

    /// Parses a whitespace- or `<`-separated sequence such as `1<2<2*<1*`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let seq = text
            .split(|c: char| c == '<' || c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Element>>>()?;
        GroundOrder::new(n, seq)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn sequence(&self) -> &[Element] {
        &self.sequence
    }

    pub fn position(&self, e: Element) -> usize {
        self.position[e.bit(self.n()) as usize] as usize
    }

    pub fn position_of_bit(&self, bit: u32) -> usize {
        self.position[bit as usize] as usize
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.position(a) <= self.position(b)
    }

    /// The members of `set` in ascending order.
    pub fn sorted(&self, set: &SignedSet) -> Vec<Element> {
        let mut v: Vec<Element> = set.elements().collect();
        v.sort_by_key(|&e| self.position(e));
        v
    }

    /// The star-reversal law `i ≤ j ⇒ j* ≤ i*`. Star is then an
    /// order-reversing involution of a `2n`-chain, which forces
    /// `pos(e) + pos(e*) = 2n − 1`.
    pub fn is_admissible(&self) -> bool {
        let last = 2 * self.n() - 1;
        self.sequence
            .iter()
            .all(|&e| self.position(e) + self.position(e.star()) == last)
    }
}

impl fmt::Display for GroundOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sequence.iter().join("<"))
    }
}

impl fmt::Debug for GroundOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A linear order on `J` obeying the star-reversal law.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AdmissibleOrder(GroundOrder);

impl AdmissibleOrder {
    pub fn as_order(&self) -> &GroundOrder {
        &self.0
    }
}

impl TryFrom<GroundOrder> for AdmissibleOrder {
    type Error = Error;

    fn try_from(order: GroundOrder) -> Result<Self> {
        if order.is_admissible() {
            Ok(AdmissibleOrder(order))
        } else {
            Err(Error::Precondition(format!("{order} violates i ≤ j ⇒ j* ≤ i*")))
        }
    }
}

impl std::ops::Deref for AdmissibleOrder {
    type Target = GroundOrder;

    fn deref(&self) -> &GroundOrder {
        &self.0
    }
}

impl fmt::Display for AdmissibleOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Every admissible order on `J`, each exactly once: a permutation of `[n]`
/// times a sign vector, laid out as `σ1 < … < σn < σn* < … < σ1*`.
pub fn admissible_orders(n: usize) -> impl Iterator<Item = AdmissibleOrder> {
    assert!((1..=MAX_N).contains(&n) && n < 32);
    (1..=n).permutations(n).flat_map(move |perm| {
        (0u64..1 << n).map(move |signs| {
            let front: Vec<Element> = perm
                .iter()
                .enumerate()
                .map(|(k, &i)| Element::new(i, signs >> k & 1 == 1))
                .collect();
            let mut seq = front.clone();
            seq.extend(front.iter().rev().map(|e| e.star()));
            AdmissibleOrder(GroundOrder::new(n, seq).expect("valid permutation"))
        })
    })
}

/// Gale (componentwise) comparison of equal-size sets under `order`.
pub fn gale_leq(a: &SignedSet, b: &SignedSet, order: &GroundOrder) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::SizeMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    Ok(gale_leq_bits(a.bits(), b.bits(), order))
}

pub(crate) fn gale_leq_bits(a: u64, b: u64, order: &GroundOrder) -> bool {
    let mut pa: Vec<usize> = ones(a).map(|x| order.position_of_bit(x)).collect();
    let mut pb: Vec<usize> = ones(b).map(|x| order.position_of_bit(x)).collect();
    pa.sort_unstable();
    pb.sort_unstable();
    pa.iter().zip(&pb).all(|(x, y)| x <= y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn set(n: usize, items: &[&str]) -> SignedSet {
        SignedSet::parse(n, items).unwrap()
    }

    #[test]
    fn element_text_form() {
        assert_eq!("3".parse::<Element>().unwrap(), Element::plain(3));
        assert_eq!("3*".parse::<Element>().unwrap(), Element::starred(3));
        assert_eq!(Element::starred(12).to_string(), "12*");
        assert!("0".parse::<Element>().is_err());
        assert!("x*".parse::<Element>().is_err());
        assert!("33".parse::<Element>().is_err());
    }

    #[test]
    fn star_examples() {
        assert_eq!(set(2, &["1", "2*"]).star(), set(2, &["1*", "2"]));
        assert_eq!(SignedSet::empty(2).star(), SignedSet::empty(2));
        assert_eq!(SignedSet::full(3).star(), SignedSet::full(3));
    }

    #[test]
    fn admissibility_examples() {
        assert!(set(2, &["1", "2*"]).is_admissible());
        assert!(!set(2, &["1", "1*"]).is_admissible());
        assert!(SignedSet::empty(2).is_admissible());
    }

    #[test]
    fn out_of_range_and_duplicates_rejected() {
        assert!(matches!(SignedSet::parse(1, &["2"]), Err(Error::OutOfRange { .. })));
        assert!(matches!(SignedSet::parse(2, &["1", "1"]), Err(Error::Duplicate(_))));
    }

    #[test]
    fn transversal_examples() {
        let t2: Vec<String> = transversals(2).map(|t| t.to_string()).collect();
        assert_eq!(t2, vec!["{1,2}", "{1*,2}", "{1,2*}", "{1*,2*}"]);
        let t1: Vec<SignedSet> = transversals(1).collect();
        assert_eq!(t1, vec![set(1, &["1"]), set(1, &["1*"])]);
        let t3: Vec<SignedSet> = transversals(3).collect();
        assert_eq!(t3.len(), 8);
        assert!(t3.iter().all(|t| t.len() == 3 && t.is_admissible()));
    }

    #[test]
    fn transversals_are_maximal_admissible() {
        for n in 1..=4 {
            for t in transversals(n) {
                for e in SignedSet::full(n).difference(&t).elements() {
                    let bigger = SignedSet::from_bits(n, t.bits() | 1 << e.bit(n)).unwrap();
                    assert!(!bigger.is_admissible());
                }
            }
        }
    }

    #[test]
    fn admissible_order_counts() {
        let o2: Vec<AdmissibleOrder> = admissible_orders(2).collect();
        assert_eq!(o2.len(), 8);
        let texts: HashSet<String> = o2.iter().map(|o| o.to_string()).collect();
        assert_eq!(texts.len(), 8);
        assert!(texts.contains("1<2<2*<1*"));
        assert!(!texts.contains("1<2<1*<2*"));
        assert_eq!(admissible_orders(3).count(), 48);
        let o4: HashSet<AdmissibleOrder> = admissible_orders(4).collect();
        assert_eq!(o4.len(), 16 * 24);
        assert!(o4.iter().all(|o| o.is_admissible()));
    }

    #[test]
    fn star_reversal_law_checked_elementwise() {
        for o in admissible_orders(3) {
            for &a in o.sequence() {
                for &b in o.sequence() {
                    if o.leq(a, b) {
                        assert!(o.leq(b.star(), a.star()));
                    }
                }
            }
        }
        let bad = GroundOrder::parse(2, "1<2<1*<2*").unwrap();
        assert!(!bad.is_admissible());
        assert!(AdmissibleOrder::try_from(bad).is_err());
    }

    #[test]
    fn gale_examples() {
        let w = GroundOrder::parse(2, "1<2<2*<1*").unwrap();
        let a = set(2, &["1", "2"]);
        assert!(gale_leq(&a, &set(2, &["1", "2*"]), &w).unwrap());
        assert!(gale_leq(&a, &a, &w).unwrap());
        let b = set(2, &["1*", "2*"]);
        assert!(gale_leq(&a, &b, &w).unwrap());
        assert!(!gale_leq(&b, &a, &w).unwrap());
        assert!(gale_leq(&a, &set(2, &["1"]), &w).is_err());
    }

    #[test]
    fn gale_is_a_partial_order_on_admissible_sets() {
        for n in 1..=3 {
            let sets: Vec<SignedSet> = admissible_subsets(full_mask(n), n)
                .map(|b| SignedSet::from_bits(n, b).unwrap())
                .collect();
            for o in admissible_orders(n) {
                for a in &sets {
                    assert!(gale_leq(a, a, &o).unwrap());
                    for b in sets.iter().filter(|b| b.len() == a.len()) {
                        let ab = gale_leq(a, b, &o).unwrap();
                        let ba = gale_leq(b, a, &o).unwrap();
                        if ab && ba {
                            assert_eq!(a, b);
                        }
                        if !ab {
                            continue;
                        }
                        for c in sets.iter().filter(|c| c.len() == a.len()) {
                            if gale_leq(b, c, &o).unwrap() {
                                assert!(gale_leq(a, c, &o).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn star_is_an_involution(n in 1usize..=32, raw in proptest::prelude::any::<u64>()) {
            let s = SignedSet::from_bits(n, raw & full_mask(n)).unwrap();
            proptest::prop_assert_eq!(s.star().star(), s);
            proptest::prop_assert_eq!(s.is_admissible(), s.star().is_admissible());
            proptest::prop_assert_eq!(s.is_admissible(), s.intersection(&s.star()).is_empty());
        }
    }
}
