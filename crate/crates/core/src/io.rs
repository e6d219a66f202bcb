//! JSON file formats.
//!
//! Sets are arrays of element strings (`"3"`, `"3*"`). A lattice file may
//! write the whole ground set as the string `"J"`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{Ground, SetLattice};
use crate::matroid::IndependenceFamily;
use crate::signed::{full_mask, MAX_N};
use crate::spike::SpikeGraph;
use crate::symplectic::BasisFamily;

#[derive(Deserialize)]
#[serde(untagged)]
enum SetSpec {
    Named(String),
    Items(Vec<String>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeFile {
    n: Option<usize>,
    /// Size of a plain ground set `[m]`, for lattices not on `J`.
    m: Option<usize>,
    elements: Vec<SetSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyFile {
    n: usize,
    #[serde(default)]
    bases: Option<Vec<Vec<String>>>,
    #[serde(default)]
    independents: Option<Vec<Vec<String>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SpikeFile {
    n: usize,
    balanced: Vec<Vec<String>>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::parse(truncate(text), e.to_string()))
}

fn truncate(text: &str) -> String {
    let t: String = text.chars().take(60).collect();
    if t.len() < text.len() {
        format!("{t}…")
    } else {
        t
    }
}

fn check_n(n: usize) -> Result<()> {
    if (1..=MAX_N).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedSize(n))
    }
}

fn signed_ground(n: usize) -> Result<Ground> {
    check_n(n)?;
    Ok(Ground::signed(n))
}

fn parse_sets(ground: Ground, sets: &[Vec<String>]) -> Result<Vec<u64>> {
    sets.iter().map(|s| ground.parse_set(s)).collect()
}

/// Parses a lattice file. Duplicate members are rejected by name.
pub fn parse_lattice(text: &str) -> Result<SetLattice> {
    let file: LatticeFile = from_json(text)?;
    let ground = match (file.n, file.m) {
        (Some(n), None) => signed_ground(n)?,
        (None, Some(m)) if m <= 64 => Ground::plain(m),
        (None, Some(m)) => return Err(Error::UnsupportedSize(m)),
        _ => return Err(Error::parse(truncate(text), "give exactly one of \"n\" or \"m\"")),
    };
    let members = file
        .elements
        .iter()
        .map(|spec| match spec {
            SetSpec::Named(s) if s == "J" && ground.signed_n().is_some() => Ok(ground.support()),
            SetSpec::Named(s) => Err(Error::parse(s.clone(), "expected an array of elements or \"J\"")),
            SetSpec::Items(items) => ground.parse_set(items),
        })
        .collect::<Result<Vec<u64>>>()?;
    SetLattice::build(ground, members)
}

fn set_json(ground: Ground, mask: u64) -> Value {
    json!(ground.labels(mask))
}

/// Serialises a lattice in the file format, writing `J` for the full ground.
pub fn lattice_json(l: &SetLattice) -> Value {
    let g = l.ground();
    let elements: Vec<Value> = l
        .elements()
        .iter()
        .map(|&m| match g {
            Ground::Signed { n, .. } if m == full_mask(n as usize) => json!("J"),
            _ => set_json(g, m),
        })
        .collect();
    match g {
        Ground::Signed { n, .. } => json!({ "n": n, "elements": elements }),
        Ground::Plain { m } => json!({ "m": m, "elements": elements }),
    }
}

/// Parses a basis-family file.
pub fn parse_bases(text: &str) -> Result<BasisFamily> {
    let file: FamilyFile = from_json(text)?;
    let ground = signed_ground(file.n)?;
    let bases = file
        .bases
        .ok_or_else(|| Error::parse(truncate(text), "missing \"bases\""))?;
    BasisFamily::new(file.n, parse_sets(ground, &bases)?)
}

pub fn bases_json(b: &BasisFamily) -> Value {
    let g = Ground::signed(b.n());
    json!({ "n": b.n(), "bases": b.bases().iter().map(|&m| set_json(g, m)).collect::<Vec<_>>() })
}

/// An independence family read from a file, with the number of sets that
/// had to be added to make it closed under subsets.
#[derive(Clone, Debug)]
pub struct LoadedFamily {
    pub n: usize,
    pub family: IndependenceFamily,
    pub added: usize,
}

/// Parses an independent-set file (or a basis file, whose bases generate
/// the family), completing it downward.
pub fn parse_independents(text: &str) -> Result<LoadedFamily> {
    let file: FamilyFile = from_json(text)?;
    let ground = signed_ground(file.n)?;
    let listed = match (file.independents, file.bases) {
        (Some(sets), None) | (None, Some(sets)) => parse_sets(ground, &sets)?,
        _ => {
            return Err(Error::parse(
                truncate(text),
                "give exactly one of \"independents\" or \"bases\"",
            ))
        }
    };
    let mut distinct = listed.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let family = IndependenceFamily::closure_of(full_mask(file.n), distinct.iter().copied())?;
    let added = family.len() - distinct.len();
    Ok(LoadedFamily {
        n: file.n,
        family,
        added,
    })
}

pub fn independents_json(n: usize, f: &IndependenceFamily) -> Value {
    let g = Ground::signed(n);
    json!({ "n": n, "independents": f.members().iter().map(|&m| set_json(g, m)).collect::<Vec<_>>() })
}

/// The matroid output format, keyed by the ground set.
pub fn matroid_json(ground: Ground, f: &IndependenceFamily, bases_only: bool) -> Value {
    let sets: Vec<Value> = if bases_only {
        f.maximal().iter().map(|&m| set_json(ground, m)).collect()
    } else {
        f.members().iter().map(|&m| set_json(ground, m)).collect()
    };
    let key = if bases_only { "bases" } else { "independents" };
    json!({ "ground": ground.labels(ground.support()), key: sets })
}

pub fn parse_spike(text: &str) -> Result<SpikeGraph> {
    let file: SpikeFile = from_json(text)?;
    let ground = signed_ground(file.n)?;
    SpikeGraph::new(file.n, parse_sets(ground, &file.balanced)?)
}

pub fn spike_json(g: &SpikeGraph) -> Value {
    let ground = Ground::signed(g.n());
    json!({ "n": g.n(), "balanced": g.balanced().iter().map(|&m| set_json(ground, m)).collect::<Vec<_>>() })
}

/// Parses an atom ordering (a JSON array of atom sets) into lattice indices.
pub fn parse_atom_order(text: &str, l: &SetLattice) -> Result<Vec<usize>> {
    let sets: Vec<SetSpec> = from_json(text)?;
    let g = l.ground();
    sets.iter()
        .map(|spec| {
            let mask = match spec {
                SetSpec::Items(items) => g.parse_set(items)?,
                SetSpec::Named(s) => return Err(Error::parse(s.clone(), "expected an array of elements")),
            };
            let i = l.index_of(mask).ok_or_else(|| Error::NotAnElement(g.render(mask)))?;
            if !l.atoms().contains(&i) {
                return Err(Error::Precondition(format!("{} is not an atom", g.render(mask))));
            }
            Ok(i)
        })
        .collect()
}

pub fn atom_order_json(l: &SetLattice, order: &[usize]) -> Value {
    json!(order
        .iter()
        .map(|&i| set_json(l.ground(), l.element(i)))
        .collect::<Vec<_>>())
}

/// Serialisable view of a diagnostic-bearing verdict.
#[derive(Serialize)]
pub struct VerdictJson<'a> {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<&'a crate::error::Diagnostic>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::workbench::fixtures;

    #[test]
    fn lattice_round_trip() {
        for f in fixtures::all() {
            let text = lattice_json(&f.lattice).to_string();
            assert_eq!(parse_lattice(&text).unwrap(), f.lattice, "{}", f.name);
        }
    }

    #[test]
    fn j_literal_and_duplicates() {
        let l = parse_lattice(r#"{"n": 2, "elements": [[], ["1","2*"], ["1*","2"], "J"]}"#).unwrap();
        assert_eq!(l, fixtures::fix_b());
        let dup = parse_lattice(r#"{"n": 2, "elements": [[], ["1","2*"], ["2*","1"], "J"]}"#);
        assert!(matches!(dup, Err(Error::Duplicate(s)) if s == "{1,2*}"));
        assert!(matches!(
            parse_lattice(r#"{"n": 2, "elements": [["3"]]}"#),
            Err(Error::OutOfRange { .. })
        ));
        assert!(matches!(parse_lattice("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn independents_are_closed_on_load() {
        let f = parse_independents(r#"{"n": 2, "independents": [["1","2"]]}"#).unwrap();
        assert_eq!(f.family.len(), 4);
        assert_eq!(f.added, 3);
    }

    #[test]
    fn bases_and_spikes() {
        let b = parse_bases(r#"{"n": 2, "bases": [["1","2"],["1*","2*"]]}"#).unwrap();
        assert_eq!(b.render(), vec!["{1,2}", "{1*,2*}"]);
        assert_eq!(parse_bases(&bases_json(&b).to_string()).unwrap(), b);
        let g = parse_spike(r#"{"n": 2, "balanced": [["1","2*"],["1*","2"]]}"#).unwrap();
        assert_eq!(parse_spike(&spike_json(&g).to_string()).unwrap(), g);
        assert!(parse_spike(r#"{"n": 2, "balanced": [["1","1*"]]}"#).is_err());
    }

    #[test]
    fn atom_orders() {
        let a = fixtures::fix_a();
        let o = parse_atom_order(r#"[["1"],["2"],["1*"],["2*"]]"#, &a).unwrap();
        assert_eq!(atom_order_json(&a, &o).to_string(), r#"[["1"],["2"],["1*"],["2*"]]"#);
        assert!(parse_atom_order(r#"[["1","2"]]"#, &a).is_err());
    }
}
