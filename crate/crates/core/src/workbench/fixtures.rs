//! Named example lattices.
//!
//! The signed fixtures live on `J` for `n = 2`. The dual partition lattice
//! of `[4]` lives on a plain ground of seven points, one per two-block
//! partition (its atoms); every other element is the set of two-block
//! partitions it coarsens, so inclusion is the lattice order.

use crate::bits::ones;
use crate::lattice::{Ground, SetLattice};
use crate::signed::{admissible_subsets, full_mask};

/// A named lattice with a one-line description.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub lattice: SetLattice,
    pub note: &'static str,
}

fn signed2(sets: &[&[&str]]) -> SetLattice {
    let ground = Ground::signed(2);
    SetLattice::build(
        ground,
        sets.iter().map(|s| ground.parse_set(s).expect("fixture element")),
    )
    .expect("fixture lattice")
}

/// The full C_2 lattice: every admissible subset of `J`, plus `J`.
pub fn fix_a() -> SetLattice {
    full_cn(2)
}

/// All admissible subsets of `J` together with `J`.
pub fn full_cn(n: usize) -> SetLattice {
    let j = full_mask(n);
    SetLattice::build(Ground::signed(n), admissible_subsets(j, n).chain(std::iter::once(j))).expect("full lattice")
}

/// `{∅, {1,2*}, {1*,2}, J}`.
pub fn fix_b() -> SetLattice {
    signed2(&[&[], &["1", "2*"], &["1*", "2"], &["1", "1*", "2", "2*"]])
}

/// `{∅, {1}, {2}, {1*}, {2*}, J}`.
pub fn fix_c() -> SetLattice {
    signed2(&[&[], &["1"], &["2"], &["1*"], &["2*"], &["1", "1*", "2", "2*"]])
}

/// Two-block partitions of `[4]`, in bit order.
pub const TWO_BLOCK: [&str; 7] = ["14/23", "1/234", "124/3", "13/24", "123/4", "134/2", "12/34"];

/// Three-block partitions of `[4]` with the two-block partitions they
/// refine.
pub const THREE_BLOCK: [(&str, [&str; 3]); 6] = [
    ("1/23/4", ["14/23", "1/234", "123/4"]),
    ("14/2/3", ["14/23", "124/3", "134/2"]),
    ("1/24/3", ["1/234", "124/3", "13/24"]),
    ("13/2/4", ["13/24", "123/4", "134/2"]),
    ("12/3/4", ["124/3", "123/4", "12/34"]),
    ("1/2/34", ["1/234", "134/2", "12/34"]),
];

/// Mask of the named two-block partitions.
pub fn dual_partition_atoms(names: &[&str]) -> u64 {
    names.iter().fold(0, |acc, name| {
        let k = TWO_BLOCK
            .iter()
            .position(|p| p == name)
            .unwrap_or_else(|| panic!("{name} is not a two-block partition of [4]"));
        acc | 1 << k
    })
}

/// Partition-style name of an element of the dual partition lattice or its
/// geometric extension; unnamed sets are listed by their atoms.
pub fn dual_partition_label(mask: u64) -> String {
    if mask == 0 {
        return "1234".into();
    }
    if mask == (1 << TWO_BLOCK.len()) - 1 {
        return "1/2/3/4".into();
    }
    if mask.count_ones() == 1 {
        return TWO_BLOCK[mask.trailing_zeros() as usize].into();
    }
    if let Some((name, _)) = THREE_BLOCK
        .iter()
        .find(|(_, below)| dual_partition_atoms(below) == mask)
    {
        return (*name).into();
    }
    format!(
        "[{}]",
        ones(mask).map(|k| TWO_BLOCK[k as usize]).collect::<Vec<_>>().join(",")
    )
}

fn dual_partition_family() -> Vec<u64> {
    let mut v = vec![0];
    v.extend((0..TWO_BLOCK.len()).map(|k| 1u64 << k));
    v.extend(THREE_BLOCK.iter().map(|(_, below)| dual_partition_atoms(below)));
    v.push((1 << TWO_BLOCK.len()) - 1);
    v
}

/// The dual of the partition lattice of `[4]`: 15 elements, rank 3, not
/// semimodular (the three 2+2 partitions pairwise join only at the top).
pub fn fix_d() -> SetLattice {
    SetLattice::build(Ground::plain(7), dual_partition_family()).expect("dual partition lattice")
}

/// The geometric lattice induced by [`fix_d`]: one extra rank-2 element
/// covering the three 2+2 partitions, making it the Fano plane.
pub fn fix_e() -> SetLattice {
    let mut v = dual_partition_family();
    v.push(dual_partition_atoms(&["14/23", "13/24", "12/34"]));
    SetLattice::build(Ground::plain(7), v).expect("Fano plane")
}

/// [`fix_d`] with an extra element over `{124/3, 13/24, 123/4}`, as an
/// alternative candidate for the extension. It is not a lattice:
/// `124/3 ∨ 13/24` has two minimal upper bounds.
pub fn fix_e_alternative() -> SetLattice {
    let mut v = dual_partition_family();
    v.push(dual_partition_atoms(&["124/3", "13/24", "123/4"]));
    SetLattice::build(Ground::plain(7), v).expect("bounded family")
}

/// The Boolean lattice of subsets of `[k]`.
pub fn boolean(k: usize) -> SetLattice {
    SetLattice::build(Ground::plain(k), 0..1u64 << k).expect("Boolean lattice")
}

/// The partition lattice of `[m]` (finest partition at the bottom), each
/// partition encoded by the set of pairs `{i, j}` it puts in one block.
pub fn partition_lattice(m: usize) -> SetLattice {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    let mut blocks = vec![0usize; m];
    set_partitions(1, 1, &mut blocks, &mut |b| {
        out.push(
            pairs
                .iter()
                .enumerate()
                .filter(|(_, &(i, j))| b[i] == b[j])
                .fold(0u64, |acc, (k, _)| acc | 1 << k),
        );
    });
    SetLattice::build(Ground::plain(pairs.len()), out).expect("partition lattice")
}

/// Restricted growth strings: `blocks[i]` is the block of element `i`.
fn set_partitions(i: usize, used: usize, blocks: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if blocks.is_empty() || i == blocks.len() {
        emit(blocks);
        return;
    }
    for b in 0..=used {
        blocks[i] = b;
        set_partitions(i + 1, used.max(b + 1), blocks, emit);
    }
}

/// Every fixture, in a fixed order.
pub fn all() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "fix-a",
            lattice: fix_a(),
            note: "full C_2 lattice: every admissible subset plus J",
        },
        Fixture {
            name: "fix-b",
            lattice: fix_b(),
            note: "two atoms {1,2*} and {1*,2} below J",
        },
        Fixture {
            name: "fix-c",
            lattice: fix_c(),
            note: "the four singletons below J",
        },
        Fixture {
            name: "fix-d",
            lattice: fix_d(),
            note: "dual of the partition lattice of [4]",
        },
        Fixture {
            name: "fix-e",
            lattice: fix_e(),
            note: "its induced geometric lattice (Fano plane)",
        },
        Fixture {
            name: "boolean-3",
            lattice: boolean(3),
            note: "subsets of [3]",
        },
        Fixture {
            name: "boolean-4",
            lattice: boolean(4),
            note: "subsets of [4]",
        },
        Fixture {
            name: "partition-4",
            lattice: partition_lattice(4),
            note: "partitions of [4] by shared pairs",
        },
    ]
}

/// Looks a fixture up by name.
pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}
