//! Property suite: every cross-module invariant, evaluated over a corpus.

use std::collections::HashMap;

use serde::Serialize;

use crate::bits::popcount;
use crate::error::Diagnostic;
use crate::lattice::{
    interval_restrict, is_cn_lattice, is_geometric_abstract, is_geometric_lattice, order_complex, Ground, Restriction,
    SetLattice,
};
use crate::nbb::{atom_rank, independence_family_atoms, induce_geometric, Strategy, ORACLE_MAX_ITEMS};
use crate::par;
use crate::shell::{
    admissible_atom_ordering, chain_order, cn_up_to_relabeling, find_shelling, is_recursive_atom_ordering, is_shelling,
    positions_to_atoms, theorem_6_1_check, theorem_6_2_check,
};
use crate::signed::{admissible_bits, star_bits};
use crate::symplectic::{
    admissible_independents, chow_check, ground_family, ground_independents, is_full_lattice, is_symplectic,
    lattice_to_symplectic, nonadmissible_extension, symplectic_to_lattice, GroundOptions,
};

use super::enumerate::enumerate_cn;
use super::fixtures;

/// One invariant evaluated on one corpus item.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Entry {
    pub invariant: String,
    pub item: String,
    pub pass: bool,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

/// Which lattices to run the suite on.
#[derive(Clone, Debug)]
pub enum Corpus {
    Fixtures,
    /// Every C_n lattice for the given `n`, up to symmetry.
    Enumerated(usize),
    Custom(Vec<(String, SetLattice)>),
}

impl Corpus {
    pub fn items(&self) -> Vec<(String, SetLattice)> {
        match self {
            Corpus::Fixtures => fixtures::all()
                .into_iter()
                .map(|f| (f.name.to_string(), f.lattice))
                .collect(),
            Corpus::Enumerated(n) => enumerate_cn(*n, None)
                .items
                .into_iter()
                .enumerate()
                .map(|(k, l)| (format!("cn{n}-{k}"), l))
                .collect(),
            Corpus::Custom(items) => items.clone(),
        }
    }
}

type Outcome = Option<Result<(), Vec<String>>>;

fn from_verdict(v: Result<(), Diagnostic>) -> Result<(), Vec<String>> {
    v.map_err(|d| {
        std::iter::once(format!("[{}] {}", d.axiom, d.detail))
            .chain(d.witness)
            .collect()
    })
}

fn fail(msg: impl Into<String>) -> Outcome {
    Some(Err(vec![msg.into()]))
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    Some(if ok { Ok(()) } else { Err(vec![msg()]) })
}

fn is_signed(l: &SetLattice) -> bool {
    matches!(l.ground(), Ground::Signed { .. })
}

fn is_cn(l: &SetLattice) -> bool {
    is_cn_lattice(l).is_ok()
}

/// Lattice-level invariants, each returning `None` when it does not apply.
type Invariant = (&'static str, fn(&SetLattice) -> Outcome);

const INVARIANTS: &[Invariant] = &[
    ("cn-axioms", |l| is_signed(l).then(|| from_verdict(is_cn_lattice(l)))),
    ("cn-graded-atomistic", |l| {
        is_cn(l).then(|| l.check_bag().map_err(|e| vec![e.to_string()]))
    }),
    ("geometric-checkers-agree", |l| {
        if l.check_bag().is_err() {
            return None;
        }
        let (a, b) = (is_geometric_lattice(l), is_geometric_abstract(l));
        check(a.is_ok() == b.is_ok(), || format!("literal: {a:?}, abstract: {b:?}"))
    }),
    ("restriction-is-cn", |l| {
        if !is_cn(l) {
            return None;
        }
        for i in 0..l.len() {
            if i == l.top() {
                continue;
            }
            match interval_restrict(l, l.element(i)) {
                Ok(Restriction::Lattice(r)) => {
                    if let Err(d) = is_cn_lattice(&r) {
                        return Some(Err(vec![l.render(i), d.to_string()]));
                    }
                }
                Ok(Restriction::TwoChain) => {}
                Err(e) => return fail(e.to_string()),
            }
        }
        Some(Ok(()))
    }),
    ("restriction-loses-two-atoms", |l| {
        if !is_cn(l) {
            return None;
        }
        let t = l.atoms().len();
        for &a in l.atoms() {
            if let Ok(Restriction::Lattice(r)) = interval_restrict(l, l.element(a)) {
                if r.atoms().len() + 2 > t {
                    return fail(format!("{}: {} atoms above, {t} in all", l.render(a), r.atoms().len()));
                }
            }
        }
        Some(Ok(()))
    }),
    ("atoms-star-closed", |l| {
        if !is_cn(l) || l.lattice_rank().is_some_and(|r| r < 3) {
            return None;
        }
        let n = l.ground().signed_n().expect("signed");
        let bad = l.atoms().iter().find(|&&a| !l.contains(star_bits(l.element(a), n)));
        check(bad.is_none(), || l.render(*bad.expect("bad atom")))
    }),
    ("nbb-fast-equals-oracle", |l| {
        if l.check_bag().is_err() || l.atoms().len() > ORACLE_MAX_ITEMS {
            return None;
        }
        let fast = independence_family_atoms(l, Strategy::Fast);
        let oracle = independence_family_atoms(l, Strategy::Oracle);
        check(fast.is_ok() && fast == oracle, || "families differ".into())
    }),
    ("independent-rank-at-least-size", |l| {
        if l.check_bag().is_err() {
            return None;
        }
        let f = independence_family_atoms(l, Strategy::Fast).ok()?;
        let bad = f.members().iter().find(|&&i| atom_rank(l, i) < popcount(i));
        check(bad.is_none(), || format!("{:#b}", bad.expect("bad set")))
    }),
    ("induced-admissible-part", |l| {
        if !is_cn(l) {
            return None;
        }
        let n = l.ground().signed_n().expect("signed");
        let induced = match induce_geometric(l) {
            Ok(p) => p,
            Err(e) => return fail(e.to_string()),
        };
        if induced.lattice.ground() != l.ground() {
            return fail("induced lattice is not on J");
        }
        let admissible: Vec<u64> = induced
            .lattice
            .elements()
            .iter()
            .copied()
            .filter(|&m| admissible_bits(m, n))
            .collect();
        let mut original = l.elements().to_vec();
        original.pop();
        check(admissible == original, || {
            format!("admissible flats {admissible:?} vs proper elements {original:?}")
        })
    }),
    ("admissible-independents-are-geometric", |l| {
        if !is_cn(l) {
            return None;
        }
        let f = admissible_independents(l).ok()?;
        let rank = l.lattice_rank().expect("graded");
        let bad = f.members().iter().find(|&&i| {
            let top = l.closure(i).expect("closed");
            l.height(top) != popcount(i)
        });
        if let Some(&i) = bad {
            return fail(format!("rank differs from size at {}", l.ground().render(i)));
        }
        // The full lattice has no admissible independent set of full rank.
        if is_full_lattice(l) {
            return Some(Ok(()));
        }
        let maximal = f.maximal();
        check(maximal.iter().all(|&b| popcount(b) == rank), || {
            format!(
                "maximal sizes {:?}, rank {rank}",
                maximal.iter().map(|&b| popcount(b)).collect::<Vec<_>>()
            )
        })
    }),
    ("restriction-to-admissible-sets", |l| {
        if !is_cn(l) {
            return None;
        }
        let Ground::Signed { n, .. } = l.ground() else {
            return None;
        };
        let all = ground_independents(l).ok()?;
        for t in crate::signed::transversals(n as usize) {
            let a = t.bits();
            let traced: Vec<u64> = {
                let mut v: Vec<u64> = l.elements().iter().map(|&x| x & a).collect();
                v.sort_unstable();
                v.dedup();
                v
            };
            let Ok(sub) = SetLattice::build(Ground::Signed { n, support: a }, traced) else {
                return fail(format!("trace on {} is not bounded", l.ground().render(a)));
            };
            if sub.check_bag().is_err() {
                continue;
            }
            let Ok(local) = ground_family(&sub, GroundOptions::default()) else {
                return fail("ground family failed on a trace");
            };
            if all.restrict(a).members() != local.members() {
                return fail(format!("independents differ on {}", l.ground().render(a)));
            }
        }
        Some(Ok(()))
    }),
    ("correspondence-is-symplectic", |l| {
        if !is_cn(l) || is_full_lattice(l) {
            return None;
        }
        let n = l.ground().signed_n().expect("signed");
        let b = match lattice_to_symplectic(l) {
            Ok(b) => b,
            Err(e) => return fail(e.to_string()),
        };
        if let Err(d) = is_symplectic(&b) {
            return Some(from_verdict(Err(d)));
        }
        let adm = admissible_independents(l).ok()?;
        match chow_check(&adm, n) {
            Ok(v) => Some(from_verdict(v)),
            Err(e) => fail(e.to_string()),
        }
    }),
    ("closed-form-extension", |l| {
        if !is_cn(l) {
            return None;
        }
        let adm = admissible_independents(l).ok()?;
        let rank = l.lattice_rank().expect("graded");
        let ext = nonadmissible_extension(l, &adm, rank).ok()?;
        let full = ground_independents(l).ok()?;
        check(ext == full, || {
            let extra: Vec<String> = ext
                .members()
                .iter()
                .filter(|&&m| !full.contains(m))
                .map(|&m| l.ground().render(m))
                .collect();
            let missing: Vec<String> = full
                .members()
                .iter()
                .filter(|&&m| !ext.contains(m))
                .map(|&m| l.ground().render(m))
                .collect();
            format!("extra {extra:?}, missing {missing:?}")
        })
    }),
    ("round-trip", |l| {
        if !is_cn(l) || is_full_lattice(l) {
            return None;
        }
        let n = l.ground().signed_n().expect("signed");
        let adm = admissible_independents(l).ok()?;
        match symplectic_to_lattice(&adm, n, l.lattice_rank()) {
            Ok(back) => check(&back == l, || format!("got {back:?}")),
            Err(e) => fail(e.to_string()),
        }
    }),
    ("admissible-ordering-is-recursive", |l| {
        if !is_cn(l) {
            return None;
        }
        let pos = match admissible_atom_ordering(l) {
            Ok(p) => p,
            Err(e) => return fail(e.to_string()),
        };
        match is_recursive_atom_ordering(l, &positions_to_atoms(l, &pos)) {
            Ok(v) => Some(from_verdict(v)),
            Err(e) => fail(e.to_string()),
        }
    }),
    ("chain-order-is-shelling", |l| {
        if !is_cn(l) || l.lattice_rank().is_none_or(|r| r > 3) {
            return None;
        }
        let order = positions_to_atoms(l, &admissible_atom_ordering(l).ok()?);
        let k = order_complex(l, false);
        let chains = match chain_order(l, &order) {
            Ok(c) => c,
            Err(e) => return fail(e.to_string()),
        };
        match is_shelling(&k, &chains) {
            Ok(v) => Some(from_verdict(v)),
            Err(e) => fail(e.to_string()),
        }
    }),
    ("shelling-exists", |l| {
        if !is_cn(l) || l.lattice_rank().is_none_or(|r| r > 3) {
            return None;
        }
        let k = order_complex(l, false);
        match find_shelling(&k, 60) {
            Ok(found) => check(found.is_some(), || "no shelling order".into()),
            Err(_) => None,
        }
    }),
    ("independent-sets-characterise-cn", |l| {
        if l.check_bag().is_err() || l.atoms().len() > 8 {
            return None;
        }
        let cn = cn_up_to_relabeling(l).ok()?.holds();
        let t = theorem_6_1_check(l).ok()?.holds();
        check(cn == t, || {
            format!("C_n up to relabelling: {cn}, independent-set criterion: {t}")
        })
    }),
    ("atom-orderings-characterise-cn", |l| {
        if l.check_bag().is_err() || l.atoms().len() > 8 {
            return None;
        }
        let cn = cn_up_to_relabeling(l).ok()?.holds();
        let t = theorem_6_2_check(l).ok()?.holds();
        check(cn == t, || {
            format!("C_n up to relabelling: {cn}, atom-ordering criterion: {t}")
        })
    }),
];

/// Names of every lattice-level invariant, in evaluation order.
pub fn invariant_names() -> Vec<&'static str> {
    INVARIANTS.iter().map(|(name, _)| *name).collect()
}

/// Evaluates every applicable invariant on every item, plus injectivity of
/// the lattice-to-matroid map across the corpus.
pub fn run_property_suite(corpus: &Corpus) -> Report {
    let items = corpus.items();
    let per_item: Vec<Vec<Entry>> = par::map(&items, |(name, l)| {
        INVARIANTS
            .iter()
            .filter_map(|(id, f)| {
                f(l).map(|outcome| Entry {
                    invariant: (*id).to_string(),
                    item: name.clone(),
                    pass: outcome.is_ok(),
                    witness: outcome.err().unwrap_or_default(),
                })
            })
            .collect()
    });
    let mut entries: Vec<Entry> = per_item.into_iter().flatten().collect();
    entries.push(injectivity(&items));
    Report { entries }
}

fn injectivity(items: &[(String, SetLattice)]) -> Entry {
    let mut seen: HashMap<(usize, Vec<u64>), &str> = HashMap::new();
    let mut witness = Vec::new();
    for (name, l) in items {
        if !is_cn(l) || is_full_lattice(l) {
            continue;
        }
        let Ok(b) = lattice_to_symplectic(l) else { continue };
        if let Some(prev) = seen.insert((b.n(), b.bases().to_vec()), name) {
            witness = vec![prev.to_string(), name.clone()];
            break;
        }
    }
    Entry {
        invariant: "correspondence-injective".into(),
        item: "corpus".into(),
        pass: witness.is_empty(),
        witness,
    }
}
