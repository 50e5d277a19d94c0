//! Thin command-line front end over the cextkit library.
//!
//! Exit codes: 0 pass/true, 1 checked-false, 2 parse error, 3 budget
//! exceeded, 4 precondition violated.

use cextkit::caps::Caps;
use cextkit::centrality::{check_product_decomposition, is_h_central};
use cextkit::classify;
use cextkit::corpus;
use cextkit::error::Error;
use cextkit::group::{self, FiniteGroup};
use cextkit::io::{self, DiagramFile, GroupFile, SimplicialFile};
use cextkit::linalg::FinAbGroup;
use cextkit::report::Report;
use cextkit::simplicial::torsor_check;
use cextkit::verify;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "cextkit", about = "Higher central extensions, torsors and cohomology over finite groups")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Candidate budget for enumerations and limits.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Worker threads for the verification suites.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    /// Emit the canonical JSON report instead of the human summary.
    #[arg(long, global = true)]
    json: bool,
    /// Directory of extra diagram files for the verification suites.
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    /// JSON file overriding the enumeration caps.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(serde::Deserialize, Default)]
struct CapsFile {
    max_group_order: Option<usize>,
    max_intermediate_order: Option<usize>,
    limit_budget: Option<u64>,
    classify_order: Option<usize>,
    cochain_base: Option<usize>,
    cochain_coeff: Option<usize>,
    cocycle_count: Option<u64>,
}

fn load_caps(cli: &Cli) -> Result<Caps, Error> {
    let mut caps = Caps::default();
    if let Some(path) = &cli.config {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let file: CapsFile = io::parse_json(&text)?;
        if let Some(v) = file.max_group_order { caps.max_group_order = v; }
        if let Some(v) = file.max_intermediate_order { caps.max_intermediate_order = v; }
        if let Some(v) = file.limit_budget { caps.limit_budget = v; }
        if let Some(v) = file.classify_order { caps.classify_order = v; }
        if let Some(v) = file.cochain_base { caps.cochain_base = v; }
        if let Some(v) = file.cochain_coeff { caps.cochain_coeff = v; }
        if let Some(v) = file.cocycle_count { caps.cocycle_count = v; }
    }
    if let Some(c) = cli.cap {
        caps.limit_budget = c;
    }
    Ok(caps)
}

#[derive(Subcommand)]
enum Cmd {
    /// Cohomology of Z with coefficients in A at the given degree (1..=3).
    Cohomology { z: String, a: String, degree: usize },
    /// Centrality of a cubic extension diagram file.
    CheckCentral { file: PathBuf },
    /// Classify one-fold central extensions of Z by A with the Baer sum.
    Classify { z: String, a: String },
    /// Centralise a diagram: divide the top object by the obstruction.
    Centralise {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify the torsor axioms for a truncated simplicial group file.
    TorsorCheck { file: PathBuf },
    /// Run a verification suite: n1, n2 or all.
    Verify { suite: String },
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) => 2,
        Error::BudgetExceeded { .. } | Error::OrderCapExceeded { .. } | Error::CapExceeded(_) => 3,
        _ => 4,
    }
}

fn parse_group_spec(spec: &str, caps: &Caps) -> Result<Arc<FiniteGroup>, Error> {
    if let Some(g) = corpus::zoo_by_name(spec) {
        return Ok(g);
    }
    if spec.ends_with(".json") {
        let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
        let gf: GroupFile = io::parse_json(&text)?;
        return gf.to_group(caps);
    }
    Err(Error::Parse(format!("unknown group {spec}; use a zoo name (C1..C8, C2xC2, C2xC4, D4, D6, Q8, S3, A4) or a .json file")))
}

fn parse_coeff_spec(spec: &str, caps: &Caps) -> Result<FinAbGroup, Error> {
    // invariant factors like "2", "2x4"; or an abelian zoo group name
    if spec.chars().next().map(|c| c.is_ascii_digit()).unwrap_or(false) {
        let factors = spec
            .split('x')
            .map(|p| p.parse::<u64>().map_err(|e| Error::Parse(format!("coefficients {spec}: {e}"))))
            .collect::<Result<Vec<u64>, Error>>()?;
        return FinAbGroup::new(factors);
    }
    let g = parse_group_spec(spec, caps)?;
    FinAbGroup::from_abelian_group(&g)
}

fn read_diagram(path: &PathBuf, caps: &Caps) -> Result<cextkit::cubic::CubicExtensionDiagram, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let df: DiagramFile = io::parse_json(&text)?;
    df.to_cubic(caps)
}

fn friendly_name(g: &Arc<FiniteGroup>) -> String {
    for z in corpus::group_zoo() {
        if z.order() == g.order() && group::find_isomorphism(&z, g).is_some() {
            return z.name().to_string();
        }
    }
    format!("{} (order {})", g.name(), g.order())
}

fn emit(report: &Report, json: bool) {
    if json {
        print!("{}", report.canonical_json());
    } else {
        print!("{}", report.human());
    }
}

fn run(cli: &Cli, caps: &Caps) -> Result<i32, Error> {
    match &cli.cmd {
        Cmd::Cohomology { z, a, degree } => {
            let zg = parse_group_spec(z, caps)?;
            let ag = parse_coeff_spec(a, caps)?;
            let h = classify::cohomology_group(&zg, &ag, *degree, caps)?;
            let mut rep = Report::new("cohomology");
            rep.input("Z", zg.name()).input("A", ag.display()).input("degree", degree);
            rep.verdict("invariant_factors", true, h.display());
            emit(&rep, cli.json);
            if !cli.json {
                println!("{}", h.display());
            }
            Ok(0)
        }
        Cmd::CheckCentral { file } => {
            let cube = read_diagram(file, caps)?;
            let ext = cube.is_extension(caps)?;
            if !ext.is_extension {
                let (mask, missed) = ext.failure.unwrap_or((0, vec![]));
                let mut rep = Report::new("check-central");
                rep.verdict("extension", false, format!("comparison at {} misses {:?}", io::format_mask(mask, cube.degree()), missed));
                emit(&rep, cli.json);
                return Err(Error::NotAnExtension { subset: mask });
            }
            let verdict = is_h_central(&cube);
            let mut rep = Report::new("check-central");
            rep.input("file", file.display());
            rep.verdict("extension", true, "all comparisons surjective");
            if verdict.central {
                rep.verdict("central", true, "all kernel commutators vanish");
                let cert = check_product_decomposition(&cube, 0, caps)?;
                rep.verdict(
                    "product_decomposition",
                    cert.pass(),
                    format!("{} = {} x {}", cert.diamond_count, cert.direction_order, cert.punctured_count),
                );
            } else {
                let (mask, k, l) = verdict.witness.expect("witness on failure");
                rep.verdict("central", false, format!("[{k}, {l}] != 1 at subset {}", io::format_mask(mask, cube.degree())));
                rep.witness(format!("commutator {}", cube.top().comm(k, l)));
            }
            let pass = verdict.central;
            emit(&rep, cli.json);
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::Classify { z, a } => {
            let zg = parse_group_spec(z, caps)?;
            let ag = parse_coeff_spec(a, caps)?;
            let cg = classify::classify_centr1(&zg, &ag, caps)?;
            let mut rep = Report::new("classify");
            rep.input("Z", zg.name()).input("A", ag.display());
            let reps: Vec<String> =
                cg.classes.iter().map(|c| friendly_name(&c.representative.group)).collect();
            rep.verdict(
                "classes",
                true,
                format!("{} classes; group {}; representatives {}", cg.class_count(), cg.invariant_factors()?.display(), reps.join(", ")),
            );
            emit(&rep, cli.json);
            Ok(0)
        }
        Cmd::Centralise { file, output } => {
            let cube = read_diagram(file, caps)?;
            let ext = cube.is_extension(caps)?;
            if !ext.is_extension {
                return Err(Error::NotAnExtension { subset: ext.failure.map(|f| f.0).unwrap_or(0) });
            }
            let central = cube.centralise()?;
            let out = DiagramFile::from_cubic(&central);
            let text = io::to_canonical_json(&out)?;
            match output {
                Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?,
                None => print!("{text}"),
            }
            Ok(0)
        }
        Cmd::TorsorCheck { file } => {
            let text = std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            let sf: SimplicialFile = io::parse_json(&text)?;
            let t = sf.to_truncation(caps)?;
            let cert = torsor_check(&t, caps)?;
            let mut rep = Report::new("torsor-check");
            rep.input("file", file.display()).input("n", cert.n).input("base", cert.base.name());
            rep.verdict("extension_T3", true, "underlying arrow is an extension");
            rep.verdict("direction_abelian", cert.direction_abelian, format!("direction of order {}", cert.direction.order()));
            rep.verdict("h_central", cert.h_central, match cert.h_central_witness {
                Some((mask, k, l)) => format!("violating pair ({k}, {l}) at subset {mask:#b}"),
                None => "all kernel commutators vanish".into(),
            });
            rep.verdict("varsigma_hom", cert.varsigma_is_hom, "ς = pr_A ∘ s_n is a homomorphism");
            rep.verdict("exact_fibration", cert.kernel_iso_ok.iter().all(|&b| b), "kernel isomorphism criterion for every horn");
            rep.verdict("sum_condition", cert.sum_condition_ok, cert.sum_witness.clone().unwrap_or_else(|| "single commuting square holds".into()));
            let pass = cert.pass();
            emit(&rep, cli.json);
            Ok(if pass { 0 } else { 1 })
        }
        Cmd::Verify { suite } => {
            let outcomes = if cli.jobs > 1 {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(cli.jobs)
                    .build()
                    .map_err(|e| Error::Precondition(e.to_string()))?;
                pool.install(|| -> Result<Vec<verify::CriterionOutcome>, Error> {
                    use rayon::prelude::*;
                    let ids: Vec<usize> = match suite.as_str() {
                        "n1" => vec![1],
                        "n2" => vec![2, 3],
                        "all" => (1..=10).collect(),
                        other => return Err(Error::Precondition(format!("unknown suite {other}"))),
                    };
                    let mut results = ids
                        .par_iter()
                        .map(|&id| run_criterion(id, caps))
                        .collect::<Result<Vec<_>, Error>>()?;
                    results.sort_by_key(|o| o.id);
                    Ok(results)
                })?
            } else {
                verify::run_suite(suite, caps)?
            };
            let mut rep = Report::new("verify");
            rep.input("suite", suite);
            if let Some(dir) = &cli.corpus {
                let extra = verify_corpus_dir(dir, caps)?;
                rep.verdict("corpus_dir", extra.0, extra.1);
            }
            let mut all = true;
            for o in &outcomes {
                all &= o.pass;
                rep.verdict(&format!("criterion_{}", o.id), o.pass, &o.description);
                for d in &o.details {
                    if !o.pass || cli.json {
                        rep.witness(format!("criterion {}: {d}", o.id));
                    }
                }
            }
            emit(&rep, cli.json);
            if !cli.json {
                for o in &outcomes {
                    println!("criterion {:>2}: {}  {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.description);
                }
            }
            Ok(if all && rep.all_pass() { 0 } else { 1 })
        }
    }
}

fn run_criterion(id: usize, caps: &Caps) -> Result<verify::CriterionOutcome, Error> {
    match id {
        1 => verify::criterion_1_main_theorem(caps),
        2 => verify::criterion_2_torsor_equivalence(caps),
        3 => verify::criterion_3_higher_centrality(caps),
        4 => verify::criterion_4_centrality_sum(caps),
        5 => verify::criterion_5_centralisation(caps),
        6 => verify::criterion_6_k_objects(caps),
        7 => verify::criterion_7_direction_calculus(caps),
        8 => verify::criterion_8_simplicial_approximation(caps),
        9 => verify::criterion_9_composition_identities(caps),
        10 => verify::criterion_10_oracle_selfcheck(caps),
        _ => Err(Error::Precondition(format!("unknown criterion {id}"))),
    }
}

/// Checks every diagram file in a directory: parse, extension certificate,
/// direction consistency.
fn verify_corpus_dir(dir: &PathBuf, caps: &Caps) -> Result<(bool, String), Error> {
    let mut count = 0usize;
    let mut pass = true;
    let mut entries: Vec<_> = std::fs::read_dir(dir)
        .map_err(|e| Error::Parse(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().map(|x| x == "json").unwrap_or(false))
        .collect();
    entries.sort();
    for path in entries {
        let text = std::fs::read_to_string(&path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if let Ok(df) = io::parse_json::<DiagramFile>(&text) {
            let cube = df.to_cubic(caps)?;
            if cube.direction(caps).is_err() {
                pass = false;
            }
            count += 1;
        } else if let Ok(sf) = io::parse_json::<SimplicialFile>(&text) {
            let t = sf.to_truncation(caps)?;
            if t.is_resolution(caps).is_err() {
                pass = false;
            }
            count += 1;
        }
    }
    Ok((pass, format!("{count} corpus files checked")))
}

fn main() {
    let cli = Cli::parse();
    let caps = match load_caps(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    };
    let started = std::time::Instant::now();
    match run(&cli, &caps) {
        Ok(code) => {
            eprintln!("elapsed: {:?}", started.elapsed());
            std::process::exit(code);
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code(&e));
        }
    }
}
