//! Command-line front end: checkers, conversions, enumeration and the
//! property suite. Results are JSON on stdout. Exit status is 0 when the
//! checked property holds, 1 when it fails (the diagnostic is printed), and
//! 2 on unreadable input or bad usage.

use std::io::{Read, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use cnlat::error::{Diagnostic, Verdict};
use cnlat::lattice::{is_cn_lattice_with, is_geometric_lattice, order_complex, CnReading};
use cnlat::nbb::{independence_family_atoms, induce_geometric, render_atom_set, Strategy};
use cnlat::shell::{
    admissible_atom_ordering_by, find_shelling, is_recursive_atom_ordering, is_shelling, positions_to_atoms,
};
use cnlat::signed::full_mask;
use cnlat::spike::{spike_to_symplectic, theta_check_with, ThetaReading};
use cnlat::symplectic::{
    chow_check, ground_independents_with, is_ranked_symplectic_with, is_symplectic, lattice_to_symplectic,
    simple_symplectic_rank, symplectic_rank, symplectic_to_lattice, Disjointness, GroundOptions, RankForm,
};
use cnlat::workbench::{enumerate_cn, enumerate_symplectic, fixtures, run_property_suite, Corpus};
use cnlat::{io, Error, SetLattice};

#[derive(Parser)]
#[command(name = "cnlat", version, about = "C_n lattices and ranked symplectic matroids")]
struct Cli {
    /// Cap on worker threads.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Seed for every randomised choice.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

/// Inputs are a file path, `-` for stdin, inline JSON, or `fixture:NAME`.
#[derive(Subcommand)]
enum Command {
    /// Check a property and exit 0 (holds) or 1 (fails).
    Check {
        #[command(subcommand)]
        what: Check,
    },
    /// Independent sets of a lattice.
    Independents {
        input: String,
        /// `atoms` for NBB sets of atoms, `ground` for subsets of J.
        #[arg(long, value_enum, default_value_t = Level::Atoms)]
        level: Level,
        #[arg(long, value_enum, default_value_t = StrategyArg::Fast)]
        strategy: StrategyArg,
        /// Reading of "disjoint in L" for ground-level independence.
        #[arg(long, value_enum, default_value_t = DisjointArg::Distinct)]
        disjointness: DisjointArg,
    },
    /// The induced geometric lattice.
    InduceGeometric { input: String },
    /// Bases of the symplectic matroid of a C_n lattice.
    ToSymplectic { input: String },
    /// The C_n lattice of a ranked symplectic matroid (independents or bases file).
    FromSymplectic {
        input: String,
        #[arg(long)]
        rank: Option<usize>,
    },
    /// Tabulate the symplectic rank function and check the matroid rank axioms.
    RankFn {
        input: String,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = FormArg::Amended)]
        form: FormArg,
    },
    /// Lattice and bases of a spike with no tip.
    Spike {
        /// Spike file; alternatively give --n and --balanced.
        file: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        /// JSON array of balanced transversals, e.g. '[["1","2*"],["1*","2"]]'.
        #[arg(long)]
        balanced: Option<String>,
        #[arg(long, value_enum, default_value_t = ThetaArg::Graph)]
        reading: ThetaArg,
    },
    /// An admissible atom ordering (recursive) of a C_n lattice.
    AtomOrder { input: String },
    /// Enumerate up to signed permutations.
    Enumerate {
        #[command(subcommand)]
        what: Enumerate,
    },
    /// Run every invariant over a corpus: fixtures, cn1, cn2, cn3, or a lattice input.
    Suite {
        #[arg(long, default_value = "fixtures")]
        corpus: String,
    },
}

#[derive(Subcommand)]
enum Check {
    Cn {
        input: String,
        #[arg(long, value_enum, default_value_t = ReadingArg::WaiveBoth)]
        reading: ReadingArg,
    },
    Geometric {
        input: String,
    },
    /// Basis family file.
    Symplectic {
        input: String,
    },
    /// Independent-set file.
    Chow {
        input: String,
    },
    AtomOrder {
        input: String,
        /// JSON array of atom sets.
        #[arg(long)]
        order: String,
    },
    /// Shelling of the order complex; searches for one when no order is given.
    Shelling {
        input: String,
        /// JSON array of facet indices (maximal chains in enumeration order).
        #[arg(long)]
        order: Option<String>,
        /// Drop the bottom and top from every chain.
        #[arg(long)]
        proper: bool,
    },
}

#[derive(Subcommand)]
enum Enumerate {
    Cn {
        #[arg(long)]
        n: usize,
        /// Time budget in seconds; the output is marked truncated when hit.
        #[arg(long)]
        budget_secs: Option<u64>,
    },
    Symplectic {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Atoms,
    Ground,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Fast,
    Oracle,
}

#[derive(Clone, Copy, ValueEnum)]
enum DisjointArg {
    Distinct,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    Amended,
    Literal,
    Simple,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThetaArg {
    Graph,
    Arc,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReadingArg {
    WaiveBoth,
    WaiveUnionOnly,
}

enum Outcome {
    Pass(Value),
    Fail(Value),
}

type Run = Result<Outcome, Error>;

fn read_input(input: &str) -> Result<String, Error> {
    let trimmed = input.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(input.to_string());
    }
    if input == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Precondition(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(input).map_err(|e| Error::Precondition(format!("{input}: {e}")))
}

fn load_lattice(input: &str) -> Result<SetLattice, Error> {
    if let Some(name) = input.strip_prefix("fixture:") {
        return fixtures::by_name(name)
            .map(|f| f.lattice)
            .ok_or_else(|| Error::Precondition(format!("unknown fixture {name}")));
    }
    io::parse_lattice(&read_input(input)?)
}

/// Element names: partition names for the dual partition fixtures.
fn labeller(input: &str) -> impl Fn(&SetLattice, u64) -> String {
    let partitions = matches!(input, "fixture:fix-d" | "fixture:fix-e");
    move |l: &SetLattice, m: u64| {
        if partitions {
            fixtures::dual_partition_label(m)
        } else {
            l.render_mask(m)
        }
    }
}

fn verdict(v: Verdict) -> Outcome {
    match v {
        Ok(()) => Outcome::Pass(json!({ "pass": true })),
        Err(d) => Outcome::Fail(json!({ "pass": false, "diagnostic": d })),
    }
}

fn verdict_with(v: Verdict, extra: Value) -> Outcome {
    let mut out = extra;
    out["pass"] = json!(v.is_ok());
    match v {
        Ok(()) => Outcome::Pass(out),
        Err(d) => {
            out["diagnostic"] = json!(d);
            Outcome::Fail(out)
        }
    }
}

fn check(what: Check) -> Run {
    Ok(match what {
        Check::Cn { input, reading } => {
            let reading = match reading {
                ReadingArg::WaiveBoth => CnReading::WaiveBoth,
                ReadingArg::WaiveUnionOnly => CnReading::WaiveUnionOnly,
            };
            verdict(is_cn_lattice_with(&load_lattice(&input)?, reading))
        }
        Check::Geometric { input } => verdict(is_geometric_lattice(&load_lattice(&input)?)),
        Check::Symplectic { input } => verdict(is_symplectic(&io::parse_bases(&read_input(&input)?)?)),
        Check::Chow { input } => {
            let loaded = load_family(&input)?;
            verdict(chow_check(&loaded.family, loaded.n)?)
        }
        Check::AtomOrder { input, order } => {
            let l = load_lattice(&input)?;
            let order = io::parse_atom_order(&read_input(&order)?, &l)?;
            verdict(is_recursive_atom_ordering(&l, &order)?)
        }
        Check::Shelling { input, order, proper } => {
            let l = load_lattice(&input)?;
            let k = order_complex(&l, proper);
            match order {
                Some(order) => {
                    let order: Vec<usize> = serde_json::from_str(&read_input(&order)?)
                        .map_err(|e| Error::Precondition(format!("facet order: {e}")))?;
                    verdict(is_shelling(&k, &order)?)
                }
                None => match find_shelling(&k, 64)? {
                    Some(order) => Outcome::Pass(json!({ "pass": true, "order": order })),
                    None => Outcome::Fail(json!({
                        "pass": false,
                        "diagnostic": Diagnostic::new("shelling", "no facet order is a shelling"),
                    })),
                },
            }
        }
    })
}

fn load_family(input: &str) -> Result<io::LoadedFamily, Error> {
    let loaded = io::parse_independents(&read_input(input)?)?;
    if loaded.added > 0 {
        eprintln!("warning: added {} subsets to close the family downward", loaded.added);
    }
    Ok(loaded)
}

fn independents(input: &str, level: Level, strategy: StrategyArg, disjointness: DisjointArg) -> Run {
    let l = load_lattice(input)?;
    let strategy = match strategy {
        StrategyArg::Fast => Strategy::Fast,
        StrategyArg::Oracle => Strategy::Oracle,
    };
    Ok(Outcome::Pass(match level {
        Level::Atoms => {
            let f = independence_family_atoms(&l, strategy)?;
            json!({
                "atoms": l.atoms().iter().map(|&a| l.render(a)).collect::<Vec<_>>(),
                "independents": f.members().iter().map(|&s| render_atom_set(&l, s)).collect::<Vec<_>>(),
            })
        }
        Level::Ground => {
            let opts = GroundOptions {
                disjointness: match disjointness {
                    DisjointArg::Distinct => Disjointness::DistinctAtoms,
                    DisjointArg::All => Disjointness::AllAtoms,
                },
                strategy,
            };
            let f = ground_independents_with(&l, opts)?;
            io::matroid_json(l.ground(), &f, false)
        }
    }))
}

fn induce(input: &str) -> Run {
    let l = load_lattice(input)?;
    let label = labeller(input);
    let induced = induce_geometric(&l)?;
    let p = &induced.lattice;
    let mut hit = vec![false; p.len()];
    for &i in &induced.embedding {
        hit[i] = true;
    }
    let new: Vec<Value> = (0..p.len())
        .filter(|&i| !hit[i])
        .map(|i| {
            json!({
                "element": label(p, p.element(i)),
                "covers": p.lower_covers(i).iter().map(|&c| label(p, p.element(c))).collect::<Vec<_>>(),
                "covered_by": p.upper_covers(i).iter().map(|&c| label(p, p.element(c))).collect::<Vec<_>>(),
            })
        })
        .collect();
    let geometric = is_geometric_lattice(p);
    Ok(Outcome::Pass(json!({
        "lattice": io::lattice_json(p),
        "new_elements": new,
        "geometric": geometric.is_ok(),
        "input_geometric": is_geometric_lattice(&l).is_ok(),
    })))
}

fn rank_fn(input: &str, rank: Option<usize>, form: FormArg) -> Run {
    let loaded = load_family(input)?;
    let (n, f) = (loaded.n, &loaded.family);
    let r = match form {
        FormArg::Amended => symplectic_rank(f, n, rank, RankForm::Amended)?,
        FormArg::Literal => symplectic_rank(f, n, rank, RankForm::Literal)?,
        FormArg::Simple => simple_symplectic_rank(f, n, rank)?,
    };
    let ground = cnlat::Ground::signed(n);
    let table: Vec<Value> = (0..=full_mask(n))
        .map(|s| json!({ "set": ground.labels(s), "rank": r.rank(s) }))
        .collect();
    let v = match form {
        FormArg::Amended => is_ranked_symplectic_with(f, n, rank, RankForm::Amended)?,
        FormArg::Literal => is_ranked_symplectic_with(f, n, rank, RankForm::Literal)?,
        FormArg::Simple => r.check_axioms(),
    };
    Ok(verdict_with(v, json!({ "n": n, "d": r.d(), "ranks": table })))
}

fn spike(file: Option<String>, n: Option<usize>, balanced: Option<String>, reading: ThetaArg) -> Run {
    let g = match (file, n) {
        (Some(file), None) => io::parse_spike(&read_input(&file)?)?,
        (None, Some(n)) => {
            let text = format!(r#"{{"n": {n}, "balanced": {}}}"#, balanced.as_deref().unwrap_or("[]"));
            io::parse_spike(&text)?
        }
        _ => return Err(Error::Precondition("give a spike file or --n (with --balanced)".into())),
    };
    let reading = match reading {
        ThetaArg::Graph => ThetaReading::Graph,
        ThetaArg::Arc => ThetaReading::Arc,
    };
    if let Err(d) = theta_check_with(&g, reading) {
        return Ok(Outcome::Fail(json!({ "pass": false, "diagnostic": d })));
    }
    let (lattice, bases) = spike_to_symplectic(&g)?;
    Ok(Outcome::Pass(json!({
        "pass": true,
        "spike": io::spike_json(&g),
        "lattice": io::lattice_json(&lattice),
        "bases": io::bases_json(&bases),
    })))
}

fn atom_order(input: &str, seed: Option<u64>) -> Run {
    let l = load_lattice(input)?;
    let mut preference: Vec<usize> = (0..l.atoms().len()).collect();
    if let Some(seed) = seed {
        preference.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let positions = admissible_atom_ordering_by(&l, &preference)?;
    Ok(Outcome::Pass(io::atom_order_json(
        &l,
        &positions_to_atoms(&l, &positions),
    )))
}

fn enumerate(what: Enumerate) -> Run {
    Ok(Outcome::Pass(match what {
        Enumerate::Cn { n, budget_secs } => {
            if !(1..=3).contains(&n) {
                return Err(Error::UnsupportedSize(n));
            }
            let e = enumerate_cn(n, budget_secs.map(Duration::from_secs));
            json!({
                "n": n,
                "count": e.items.len(),
                "truncated": e.truncated,
                "lattices": e.items.iter().map(io::lattice_json).collect::<Vec<_>>(),
            })
        }
        Enumerate::Symplectic { n, k } => {
            if !(1..=3).contains(&n) || k > n {
                return Err(Error::Precondition("needs 1 ≤ n ≤ 3 and k ≤ n".into()));
            }
            let fams = enumerate_symplectic(n, k);
            json!({
                "n": n,
                "k": k,
                "count": fams.len(),
                "families": fams.iter().map(io::bases_json).collect::<Vec<_>>(),
            })
        }
    }))
}

fn suite(corpus: &str) -> Run {
    let corpus = match corpus {
        "fixtures" => Corpus::Fixtures,
        "cn1" => Corpus::Enumerated(1),
        "cn2" => Corpus::Enumerated(2),
        "cn3" => Corpus::Enumerated(3),
        other => Corpus::Custom(vec![(other.to_string(), load_lattice(other)?)]),
    };
    let report = run_property_suite(&corpus);
    let value = json!({
        "pass": report.passed(),
        "entries": report.entries,
    });
    Ok(if report.passed() {
        Outcome::Pass(value)
    } else {
        Outcome::Fail(value)
    })
}

fn run(cli: Cli) -> Run {
    if let Some(t) = cli.threads {
        cnlat::set_threads(t)?;
    }
    match cli.command {
        Command::Check { what } => check(what),
        Command::Independents {
            input,
            level,
            strategy,
            disjointness,
        } => independents(&input, level, strategy, disjointness),
        Command::InduceGeometric { input } => induce(&input),
        Command::ToSymplectic { input } => {
            let b = lattice_to_symplectic(&load_lattice(&input)?)?;
            Ok(Outcome::Pass(io::bases_json(&b)))
        }
        Command::FromSymplectic { input, rank } => {
            let loaded = load_family(&input)?;
            let l = symplectic_to_lattice(&loaded.family, loaded.n, rank)?;
            Ok(Outcome::Pass(io::lattice_json(&l)))
        }
        Command::RankFn { input, rank, form } => rank_fn(&input, rank, form),
        Command::Spike {
            file,
            n,
            balanced,
            reading,
        } => spike(file, n, balanced, reading),
        Command::AtomOrder { input } => atom_order(&input, cli.seed),
        Command::Enumerate { what } => enumerate(what),
        Command::Suite { corpus } => suite(&corpus),
    }
}

/// A closed pipe downstream is not an error worth a panic.
fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialise");
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Pass(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::Fail(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
