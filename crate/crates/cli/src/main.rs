use std::io::Read as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use torsam::fuzz;
use torsam::report::VerificationReport;
use torsam::scenarios::{run_scenario, ScenarioConfig, SCENARIOS};
use torsam::textio::{
    parse_document, parse_polynomial, print_instance, print_module, print_ring, Document,
};
use torsam_core::error::Error;
use torsam_core::field::FieldSpec;
use torsam_core::homology::{tor_table, TorFamily};
use torsam_core::invariants::{hs_polynomial, invariant_report};
use torsam_core::resolution::minimal_resolution;
use torsam_core::ring::ModulePresentation;

/// Hilbert-Samuel functions of Tor modules over graded quotient rings.
#[derive(Parser)]
#[command(name = "torsam", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Input file in the torsam text format; '-' or omitted reads stdin.
    #[arg(value_name = "FILE")]
    file: Option<String>,
    /// Field characteristic (prime); overrides TORSAM_FIELD.
    #[arg(long)]
    field: Option<u64>,
    /// Largest n for n-indexed computations.
    #[arg(long)]
    n_max: Option<u32>,
    /// Largest homological degree.
    #[arg(long)]
    i_max: Option<usize>,
    /// Largest power index for inclusion maps.
    #[arg(long)]
    s_max: Option<u32>,
    /// Seed for all randomized searches.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Number of fuzz instances / search trials.
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Write output to this file instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an input file and echo its canonical form.
    Parse(Common),
    /// Numerical invariants of the first module (or the ring itself).
    Invariants(Common),
    /// Minimal free resolution of the first module.
    Resolve(Common),
    /// Table of ell Tor_i(M, R/m^(n+1)).
    TorTable(Common),
    /// Fit the Hilbert-Samuel function n -> ell(M / m^(n+1) M).
    Fit(Common),
    /// Build named example rings and modules.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Run a named verification scenario.
    Verify {
        /// Scenario name; see `torsam verify --help` for the list.
        #[arg(value_parser = SCENARIOS.to_vec())]
        scenario: String,
        #[command(flatten)]
        common: Common,
    },
    /// Print the deterministic fuzz corpus for a seed.
    Fuzz(Common),
}

#[derive(Subcommand)]
enum ConstructKind {
    /// Trivial extension (idealization) R = S |x L from a document with a
    /// ring S and a module L.
    Trivext(Common),
    /// The non-Cohen-Macaulay idealization family R(p, q).
    Noncm {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Hypersurface P/(f) from a document with a polynomial ring P.
    Hypersurface {
        /// The defining equation, e.g. "x^2 + x*y".
        #[arg(long)]
        equation: String,
        #[command(flatten)]
        common: Common,
    },
}

fn default_field(flag: Option<u64>) -> Result<FieldSpec, Error> {
    if let Some(p) = flag {
        return FieldSpec::new(p);
    }
    if let Ok(v) = std::env::var("TORSAM_FIELD") {
        let p: u64 = v.parse().map_err(|_| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("TORSAM_FIELD must be a prime, got '{}'", v),
        })?;
        return FieldSpec::new(p);
    }
    Ok(FieldSpec::default())
}

fn read_input(file: &Option<String>) -> std::io::Result<String> {
    match file.as_deref() {
        None | Some("-") => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
        Some(path) => std::fs::read_to_string(path),
    }
}

fn load_document(common: &Common) -> Result<Document, Error> {
    let text = read_input(&common.file).map_err(|e| Error::Parse {
        line: 0,
        col: 0,
        msg: format!("cannot read input: {}", e),
    })?;
    let field = default_field(common.field)?;
    parse_document(&text, field)
}

fn first_module(doc: &Document) -> Result<ModulePresentation, Error> {
    if let Some(m) = doc.first_module() {
        return Ok(m.clone());
    }
    let ring = doc.first_ring().ok_or(Error::Parse {
        line: 0,
        col: 0,
        msg: "input declares no ring".into(),
    })?;
    Ok(ModulePresentation::ring_module(ring))
}

fn emit(common: &Common, text: &str) -> Result<(), Error> {
    match &common.out {
        None => {
            print!("{}", text);
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Parse {
            line: 0,
            col: 0,
            msg: format!("cannot write {}: {}", path, e),
        }),
    }
}

fn to_sorted_json<T: serde::Serialize>(value: &T) -> String {
    fn sort(v: serde_json::Value) -> serde_json::Value {
        match v {
            serde_json::Value::Object(map) => {
                let sorted: std::collections::BTreeMap<_, _> =
                    map.into_iter().map(|(k, val)| (k, sort(val))).collect();
                serde_json::to_value(sorted).unwrap()
            }
            serde_json::Value::Array(items) => {
                serde_json::Value::Array(items.into_iter().map(sort).collect())
            }
            other => other,
        }
    }
    let v = serde_json::to_value(value).expect("serializable");
    serde_json::to_string_pretty(&sort(v)).expect("stringifies")
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Parse(common) => {
            let doc = load_document(&common)?;
            let mut out = format!("field {}\n", doc.field.characteristic());
            for (name, ring) in &doc.rings {
                out.push_str(&print_ring(name, ring));
                out.push('\n');
            }
            for (name, ring_name, m) in &doc.modules {
                out.push_str(&print_module(name, ring_name, m));
                out.push('\n');
            }
            emit(&common, &out)?;
            Ok(0)
        }
        Command::Invariants(common) => {
            let doc = load_document(&common)?;
            let m = first_module(&doc)?;
            let rep = invariant_report(&m, common.seed, common.trials)?;
            let text = match common.format {
                Format::Json | Format::Csv => to_sorted_json(&rep),
                Format::Text => format!(
                    "dim = {}\ndepth = {}\nmultiplicity = {}\nembdim = {}\n\
                     postulation = {}\nhs polynomial = {}\npolyreg = {:?}\n\
                     avramov index = {:?}\nlevin index = {:?}\n",
                    rep.dim,
                    rep.depth,
                    rep.multiplicity,
                    rep.embdim,
                    rep.postulation,
                    rep.hs_polynomial.display(),
                    rep.polyreg,
                    rep.avramov.as_ref().map(|b| b.value),
                    rep.levin.as_ref().map(|b| b.value),
                ),
            };
            emit(&common, &text)?;
            Ok(0)
        }
        Command::Resolve(common) => {
            let doc = load_document(&common)?;
            let m = first_module(&doc)?;
            let steps = common.i_max.unwrap_or(m.ring().depth() + 4);
            let res = minimal_resolution(&m, steps);
            let graded = res.graded_betti();
            let text = match common.format {
                Format::Json | Format::Csv => to_sorted_json(&graded),
                Format::Text => {
                    let mut out = String::new();
                    for i in 0..=res.len() {
                        out.push_str(&format!(
                            "step {}: rank {} twists {:?}\n",
                            i,
                            res.betti(i),
                            res.twists(i)
                        ));
                    }
                    out.push_str(&format!("complete: {}\n", res.is_complete()));
                    out
                }
            };
            emit(&common, &text)?;
            Ok(0)
        }
        Command::TorTable(common) => {
            let doc = load_document(&common)?;
            let m = first_module(&doc)?;
            let ring = m.ring().clone();
            let i_max = common.i_max.unwrap_or(ring.depth() + 2);
            let n_max = common.n_max.unwrap_or(6);
            let i_values: Vec<usize> = (0..=i_max).collect();
            let family = TorFamily::QuotientPowers(ModulePresentation::ring_module(&ring));
            let table = tor_table(&m, &family, &i_values, n_max)?;
            let text = match common.format {
                Format::Csv | Format::Text => table.to_csv(),
                Format::Json => to_sorted_json(&table),
            };
            emit(&common, &text)?;
            Ok(0)
        }
        Command::Fit(common) => {
            let doc = load_document(&common)?;
            let m = first_module(&doc)?;
            let n_max = common.n_max.unwrap_or(8);
            let fit = hs_polynomial(&m, n_max)?;
            let text = match common.format {
                Format::Json | Format::Csv => to_sorted_json(&fit),
                Format::Text => format!(
                    "polynomial = {}\ndegree = {}\nvalid for n >= {}\nchecked on {:?}\n",
                    fit.display(),
                    fit.degree,
                    fit.n0,
                    fit.window
                ),
            };
            emit(&common, &text)?;
            Ok(0)
        }
        Command::Construct { kind } => {
            let (common, out): (Common, String) = match kind {
                ConstructKind::Trivext(common) => {
                    let doc = load_document(&common)?;
                    let s = doc
                        .first_ring()
                        .ok_or_else(|| Error::Construction("input declares no ring".into()))?
                        .clone();
                    let l = first_module(&doc)?;
                    let ext = torsam_core::constructions::trivial_extension(&s, &l)?;
                    let text = print_instance(&ext.ring, &ext.s_module);
                    (common, text)
                }
                ConstructKind::Noncm { p, q, common } => {
                    let field = default_field(common.field)?;
                    let (ext, m) = torsam_core::constructions::noncm_example(p, q, field)?;
                    let text = print_instance(&ext.ring, &m);
                    (common, text)
                }
                ConstructKind::Hypersurface { equation, common } => {
                    let doc = load_document(&common)?;
                    let ambient = doc
                        .first_ring()
                        .ok_or_else(|| Error::Construction("input declares no ring".into()))?
                        .clone();
                    let f = parse_polynomial(&equation, ambient.field(), ambient.var_names())?;
                    let (ring, e) = torsam_core::constructions::hypersurface(&ambient, &f)?;
                    let text = format!(
                        "field {}\n{}\n# multiplicity e(R) = {}\n",
                        ring.field().characteristic(),
                        print_ring("R", &ring),
                        e
                    );
                    (common, text)
                }
            };
            emit(&common, &out)?;
            Ok(0)
        }
        Command::Verify { scenario, common } => {
            let cfg = ScenarioConfig {
                field: default_field(common.field)?,
                seed: common.seed,
                trials: common.trials,
                n_max: common.n_max,
                i_max: common.i_max,
                s_max: common.s_max,
            };
            let report: VerificationReport = run_scenario(&scenario, &cfg)?;
            let text = match common.format {
                Format::Json | Format::Csv => report.to_canonical_json(),
                Format::Text => report.to_text(),
            };
            emit(&common, &text)?;
            Ok(report.exit_code())
        }
        Command::Fuzz(common) => {
            let field = default_field(common.field)?;
            let instances = fuzz::corpus(common.seed, common.trials, field);
            let mut out = String::new();
            for inst in &instances {
                out.push_str(&format!("# instance {}\n{}\n", inst.index, inst.text));
            }
            emit(&common, &out)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // Bad command lines are input errors (exit 3), not clap's default 2,
    // which this tool reserves for inconclusive verification results.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if e.use_stderr() => {
            eprint!("{}", e);
            return ExitCode::from(3);
        }
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(Error::Inconclusive(msg)) => {
            eprintln!("inconclusive: {}", msg);
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(3)
        }
    }
}
