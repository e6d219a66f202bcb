//! Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
//! time bound. Run with `cargo test -p cnlat --test acceptance -- --nocapture`
//! to see the report.
//!
//! Criteria that fail for reasons outside the implementation are listed in
//! `KNOWN_FAILURES`; the test asserts the failing set is exactly that list,
//! so a regression or an unexpected pass both show up.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use cnlat::bits::{ones, popcount, submasks};
use cnlat::lattice::{is_cn_lattice, is_geometric_lattice, order_complex};
use cnlat::matroid::IndependenceFamily;
use cnlat::nbb::{independence_family_atoms, induce_geometric, Strategy};
use cnlat::shell::{
    admissible_atom_ordering, chain_order, cn_up_to_relabeling, is_recursive_atom_ordering, is_shelling,
    positions_to_atoms, theorem_6_1_check, theorem_6_2_check,
};
use cnlat::signed::{full_mask, transversals, SignedSet};
use cnlat::spike::{spike_to_symplectic, theta_check, SpikeGraph};
use cnlat::symplectic::{
    admissible_independents, chow_check, ground_independents, is_full_lattice, is_ranked_symplectic, is_symplectic,
    lattice_to_symplectic, nonadmissible_extension, symplectic_rank, symplectic_to_lattice, RankForm, SymplecticRank,
};
use cnlat::workbench::{admissible_lattices, enumerate_cn, fixtures, group};
use cnlat::{Ground, SetLattice};

/// Criteria expected to fail, with the reason. See the README.
const KNOWN_FAILURES: &[(u32, &str)] = &[
    (
        1,
        "the added element must cover 14/23, 13/24, 12/34 (the only choice that yields a lattice); \
         the stated cover set 124/3, 13/24, 123/4 does not give a lattice",
    ),
    (
        8,
        "the matroid whose bases are all eight transversals has the rank function of U_{3,6} \
         from its admissible independents, which is submodular, so it is ranked symplectic",
    ),
];

type Outcome = Result<String, String>;

struct Line {
    id: u32,
    pass: bool,
}

fn criterion(id: u32, name: &str, bound: Duration, body: impl FnOnce() -> Outcome) -> Line {
    let start = Instant::now();
    let outcome = body();
    let took = start.elapsed();
    let (pass, detail) = match outcome {
        Ok(d) if took <= bound => (true, d),
        Ok(d) => (false, format!("{d}; too slow")),
        Err(d) => (false, d),
    };
    println!(
        "{} criterion {id}: {name} — {detail} ({:.1} ms, bound {} s)",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64() * 1e3,
        bound.as_secs()
    );
    Line { id, pass }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn signed(n: usize, items: &[&str]) -> u64 {
    SignedSet::parse(n, items).unwrap().bits()
}

/// Every lattice of the n = 2 enumeration, expanded over the symmetry orbits.
fn cn2_stream() -> Vec<SetLattice> {
    let reps = enumerate_cn(2, None);
    assert!(!reps.truncated);
    let g = group(2);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for l in &reps.items {
        for p in &g {
            let image = p.apply_family(l.elements());
            if seen.insert(image.clone()) {
                out.push(SetLattice::build(Ground::signed(2), image).unwrap());
            }
        }
    }
    out
}

fn figure_3_4() -> Outcome {
    let d = fixtures::fix_d();
    let induced = induce_geometric(&d).map_err(|e| e.to_string())?;
    let p = &induced.lattice;
    let mut hit = vec![false; p.len()];
    induced.embedding.iter().for_each(|&i| hit[i] = true);
    let new: Vec<usize> = (0..p.len()).filter(|&i| !hit[i]).collect();
    ensure(new.len() == 1, || format!("{} new elements", new.len()))?;
    let x = new[0];
    let mut covers: Vec<String> = p
        .lower_covers(x)
        .iter()
        .map(|&c| fixtures::dual_partition_label(p.element(c)))
        .collect();
    covers.sort();
    ensure(p.upper_covers(x) == [p.top()], || "not covered by the top alone".into())?;
    ensure(is_geometric_lattice(p).is_ok(), || "output is not geometric".into())?;
    ensure(is_geometric_lattice(&d).is_err(), || "input is geometric".into())?;
    let mut want = vec!["124/3", "13/24", "123/4"];
    want.sort();
    ensure(covers == want, || {
        format!("new element covers {covers:?}, expected {want:?}")
    })?;
    Ok(format!("new element covers {covers:?}"))
}

fn figure_4_14() -> Outcome {
    let g = SpikeGraph::new(2, [signed(2, &["1", "2*"]), signed(2, &["1*", "2"])]).map_err(|e| e.to_string())?;
    ensure(theta_check(&g).is_ok(), || "theta property fails".into())?;
    let (l, b) = spike_to_symplectic(&g).map_err(|e| e.to_string())?;
    ensure(l == fixtures::fix_b(), || format!("lattice {l:?}"))?;
    ensure(b.render() == ["{1,2}", "{1*,2*}"], || format!("bases {:?}", b.render()))?;
    Ok(format!("lattice FIX-B, bases {:?}", b.render()))
}

fn correspondence() -> Outcome {
    let stream: Vec<SetLattice> = cn2_stream().into_iter().filter(|l| !is_full_lattice(l)).collect();
    let mut images = HashSet::new();
    for l in &stream {
        let b = lattice_to_symplectic(l).map_err(|e| e.to_string())?;
        is_symplectic(&b).map_err(|d| format!("{l:?}: {d}"))?;
        chow_check(&b.independents(), 2)
            .map_err(|e| e.to_string())?
            .map_err(|d| format!("{l:?}: {d}"))?;
        let back = symplectic_to_lattice(&b.independents(), 2, l.lattice_rank()).map_err(|e| e.to_string())?;
        ensure(&back == l, || format!("{l:?} came back as {back:?}"))?;
        ensure(images.insert(b.bases().to_vec()), || format!("{l:?} shares its bases"))?;
    }
    Ok(format!(
        "{} lattices, {} distinct basis families",
        stream.len(),
        images.len()
    ))
}

fn nbb_differential() -> Outcome {
    let mut corpus: Vec<(String, SetLattice)> = fixtures::all()
        .into_iter()
        .map(|f| (f.name.to_string(), f.lattice))
        .collect();
    corpus.extend(cn2_stream().into_iter().map(|l| (format!("{:?}", l.elements()), l)));
    let (mut compared, mut extended) = (0, 0);
    for (name, l) in &corpus {
        if l.atoms().len() > 6 && !name.starts_with("fix") && !name.contains('-') {
            continue;
        }
        let fast = independence_family_atoms(l, Strategy::Fast).map_err(|e| e.to_string())?;
        let oracle = independence_family_atoms(l, Strategy::Oracle).map_err(|e| e.to_string())?;
        ensure(fast == oracle, || format!("{name}: fast and oracle differ"))?;
        compared += 1;
        if is_cn_lattice(l).is_ok() {
            let adm = admissible_independents(l).map_err(|e| e.to_string())?;
            let rank = l.lattice_rank().expect("graded");
            let ext = nonadmissible_extension(l, &adm, rank).map_err(|e| e.to_string())?;
            let full = ground_independents(l).map_err(|e| e.to_string())?;
            ensure(ext == full, || {
                format!("{name}: extension differs from ground independents")
            })?;
            extended += 1;
        }
    }
    Ok(format!("{compared} lattices compared, {extended} extensions checked"))
}

fn shellability() -> Outcome {
    let mut corpus: Vec<SetLattice> = fixtures::all()
        .into_iter()
        .map(|f| f.lattice)
        .filter(|l| is_cn_lattice(l).is_ok())
        .collect();
    corpus.extend(cn2_stream());
    corpus.extend(enumerate_cn(3, None).items);
    let mut shelled = 0;
    for l in &corpus {
        let order = positions_to_atoms(l, &admissible_atom_ordering(l).map_err(|e| e.to_string())?);
        is_recursive_atom_ordering(l, &order)
            .map_err(|e| e.to_string())?
            .map_err(|d| format!("{:?}: {d}", l.elements()))?;
        if l.lattice_rank().is_some_and(|r| r <= 3) {
            let chains = chain_order(l, &order).map_err(|e| e.to_string())?;
            is_shelling(&order_complex(l, false), &chains)
                .map_err(|e| e.to_string())?
                .map_err(|d| format!("{:?}: {d}", l.elements()))?;
            shelled += 1;
        }
    }
    Ok(format!(
        "{} lattices with recursive orderings, {shelled} chain orders shell",
        corpus.len()
    ))
}

fn characterisation() -> Outcome {
    let corpus = admissible_lattices(2, 6);
    let mut mismatches = Vec::new();
    let (mut cn, mut literal_odd) = (0, 0);
    for l in &corpus {
        literal_odd += (is_cn_lattice(l).is_ok() && l.atoms().len() % 2 == 1) as usize;
        let is_cn = cn_up_to_relabeling(l).map_err(|e| e.to_string())?.holds();
        cn += is_cn as usize;
        let first = theorem_6_1_check(l).map_err(|e| e.to_string())?.holds();
        let second = theorem_6_2_check(l).map_err(|e| e.to_string())?.holds();
        if first != is_cn || second != is_cn {
            mismatches.push(format!(
                "{} atoms, rank {:?}: C_n {is_cn}, pairing {first}, ordering {second}",
                l.atoms().len(),
                l.lattice_rank()
            ));
        }
    }
    let summary = format!(
        "{} lattices, {cn} of C_n type up to relabeling, {literal_odd} C_n with an odd atom count",
        corpus.len()
    );
    ensure(mismatches.is_empty(), || {
        format!("{summary}; mismatches: {mismatches:?}")
    })?;
    Ok(summary)
}

/// Graphic-matroid independents of K_m on the partition lattice's atoms.
fn forests(l: &SetLattice, m: usize) -> Vec<u64> {
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
    let edge = |atom: usize| pairs[l.element(atom).trailing_zeros() as usize];
    let k = l.atoms().len();
    (0u64..1 << k)
        .filter(|&s| {
            let mut root: Vec<usize> = (0..m).collect();
            fn find(r: &mut [usize], x: usize) -> usize {
                if r[x] != x {
                    r[x] = find(r, r[x]);
                }
                r[x]
            }
            ones(s).all(|a| {
                let (u, v) = edge(l.atoms()[a as usize]);
                let (ru, rv) = (find(&mut root, u), find(&mut root, v));
                root[ru] = rv;
                ru != rv
            })
        })
        .collect()
}

fn sanity_anchors() -> Outcome {
    let cases = [
        ("boolean-3", fixtures::boolean(3), None),
        ("boolean-4", fixtures::boolean(4), None),
        ("partition-4", fixtures::partition_lattice(4), Some(4)),
    ];
    for (name, l, partition) in cases {
        let k = l.atoms().len();
        let known: Vec<u64> = match partition {
            None => (0u64..1 << k).collect(),
            Some(m) => forests(&l, m),
        };
        let known = IndependenceFamily::new((1u64 << k) - 1, known).unwrap();
        let got = independence_family_atoms(&l, Strategy::Fast).map_err(|e| e.to_string())?;
        ensure(got == known, || format!("{name}: independents differ"))?;
        let induced = induce_geometric(&l).map_err(|e| e.to_string())?;
        ensure(induced.lattice == l, || format!("{name}: induced lattice differs"))?;
    }
    Ok("B_3, B_4, partitions of [4]".into())
}

/// Rank-3 matroids on J (n = 3) all of whose bases are transversals.
fn transversal_matroids() -> Vec<IndependenceFamily> {
    let ts: Vec<u64> = transversals(3).map(|t| t.bits()).collect();
    (1u64..1 << ts.len())
        .filter_map(|pick| {
            let bases: Vec<u64> = ones(pick).map(|k| ts[k as usize]).collect();
            let f = IndependenceFamily::closure_of(full_mask(3), bases).ok()?;
            f.check_matroid_axioms().is_ok().then_some(f)
        })
        .collect()
}

/// A pair with `r(A) + r(B) < r(A ∪ B) + r(A ∩ B)`, searched directly so
/// the answer does not depend on which axiom the checker reports first.
fn submodularity_witness(r: &SymplecticRank, n: usize) -> Option<(u64, u64)> {
    let all: Vec<u64> = submasks(full_mask(n)).collect();
    all.iter()
        .flat_map(|&a| all.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| r.rank(a) + r.rank(b) < r.rank(a | b) + r.rank(a & b))
}

fn rank_function_scan() -> Outcome {
    let matroids = transversal_matroids();
    ensure(!matroids.is_empty(), || "no matroids to scan".into())?;
    let mut first_reported = std::collections::BTreeMap::new();
    let mut counterexamples = Vec::new();
    for m in &matroids {
        let r = symplectic_rank(m, 3, Some(3), RankForm::Amended).map_err(|e| e.to_string())?;
        let ranked = is_ranked_symplectic(m, 3, Some(3)).map_err(|e| e.to_string())?;
        match (ranked, submodularity_witness(&r, 3)) {
            (Err(d), Some(_)) => *first_reported.entry(d.axiom).or_insert(0) += 1,
            _ => counterexamples.push(
                m.of_size(3)
                    .map(|b| SignedSet::from_bits(3, b).unwrap().to_string())
                    .collect::<Vec<_>>(),
            ),
        }
    }
    let summary = format!(
        "{} matroids, {} with a submodularity witness (checker reports first: {first_reported:?})",
        matroids.len(),
        matroids.len() - counterexamples.len()
    );
    ensure(counterexamples.is_empty(), || {
        format!("{summary}; ranked symplectic with bases {counterexamples:?}")
    })?;
    Ok(summary)
}

#[test]
fn acceptance() {
    // The spike and uniform families of rank 3 on J always contain a basis
    // with both i and i*, so the scan below covers every matroid instead.
    assert!(submasks(full_mask(3)).any(|s| popcount(s) == 3 && s & (s >> 3) != 0));

    let lines = [
        criterion(
            1,
            "induced geometric lattice of the dual partition lattice",
            secs(1),
            figure_3_4,
        ),
        criterion(2, "spike with balanced {1,2*}, {1*,2}", secs(1), figure_4_14),
        criterion(
            3,
            "lattice/symplectic correspondence over n = 2",
            secs(60),
            correspondence,
        ),
        criterion(
            4,
            "NBB fast vs oracle and the closed-form extension",
            secs(60),
            nbb_differential,
        ),
        criterion(
            5,
            "recursive atom orderings and chain shellings",
            secs(120),
            shellability,
        ),
        criterion(6, "pairing and ordering characterisations", secs(300), characterisation),
        criterion(7, "geometric sanity anchors", secs(10), sanity_anchors),
        criterion(
            8,
            "transversal-basis matroids are not ranked symplectic",
            secs(120),
            rank_function_scan,
        ),
    ];
    let failed: Vec<u32> = lines.iter().filter(|l| !l.pass).map(|l| l.id).collect();
    let expected: Vec<u32> = KNOWN_FAILURES.iter().map(|&(id, _)| id).collect();
    for &(id, why) in KNOWN_FAILURES {
        println!("note: criterion {id} is expected to fail: {why}");
    }
    assert_eq!(failed, expected, "failing criteria changed");
}
