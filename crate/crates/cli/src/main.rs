use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use shiftlab_core::counterexample;
use shiftlab_core::io::{canonical_encoding, complex_from_json, ComplexJson};
use shiftlab_core::shifting::ShiftSequence;
use shiftlab_core::{
    delta_lex, enumerate_shifted, gin, hochster_betti, shift_to_shifted, shifted_betti, verify_theorems, GinOptions,
    PrimeField, SimplicialComplex, Strategy, DEFAULT_PRIME,
};

/// Shifting, exterior shifting and Betti numbers of simplicial complexes.
///
/// Complexes are read as JSON `{"n": 4, "facets": [[1,2],[2,3,4]], "mode": "strict"}`
/// from a file, or from standard input when the path is `-`.
#[derive(Parser)]
#[command(name = "shiftlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Hochster,
    Shifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Auto {
    Sweep,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Phase {
    Build,
    Classify,
    Negatives,
}

#[derive(Subcommand)]
enum Command {
    /// Print the f-vector as a JSON array.
    Fvector { complex: PathBuf },
    /// Print graded Betti numbers as `i<TAB>j<TAB>beta` rows.
    Betti {
        complex: PathBuf,
        #[arg(long, value_enum, default_value = "hochster")]
        method: Method,
        /// Characteristic for homology.
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        field: u32,
    },
    /// Shift a complex, either along given pairs or until it is shifted.
    Shift {
        complex: PathBuf,
        /// Pairs to replay, e.g. "1,3 2,5".
        #[arg(long, conflicts_with = "auto")]
        pairs: Option<String>,
        #[arg(long, value_enum, alias = "strategy", default_value = "sweep")]
        auto: Auto,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print every reachable shifted complex, one canonical encoding per line.
    Enumerate {
        complex: PathBuf,
        #[arg(long, alias = "state-limit", default_value_t = 100_000)]
        limit: usize,
    },
    /// Exterior algebraic shifting with a per-degree pivot report.
    Gin {
        complex: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        retries: usize,
    },
    /// The lexsegment complex with the same f-vector.
    Lex { complex: PathBuf },
    /// Check the Betti inequalities and shifting axioms on random complexes.
    Verify {
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
    },
    /// The 15-vertex complex whose shiftings have incomparable Betti tables.
    #[command(name = "section4", alias = "counterexample")]
    Section4 {
        #[arg(long, value_enum, default_value = "build")]
        phase: Phase,
        /// Also compute the exterior shifting in the negatives phase.
        #[arg(long)]
        slow: bool,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 1_000_000)]
        limit: usize,
    },
}

fn read_complex(path: &PathBuf) -> Result<SimplicialComplex> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        buf
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    complex_from_json(&text).with_context(|| format!("parsing {}", path.display()))
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    text.split_whitespace()
        .map(|tok| {
            let (a, b) = tok.split_once(',').with_context(|| format!("pair {tok:?} is not i,j"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn emit(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

fn print_json(value: &impl Serialize) -> Result<()> {
    emit(&(serde_json::to_string(value)? + "\n"))
}

/// Runs a command; `Ok(false)` means it completed but reported failures.
fn execute(command: Command) -> Result<bool> {
    match command {
        Command::Fvector { complex } => {
            print_json(&read_complex(&complex)?.f_vector())?;
        }
        Command::Betti { complex, method, field } => {
            let c = read_complex(&complex)?;
            let table = match method {
                Method::Hochster => hochster_betti(&c, PrimeField::new(field)?),
                Method::Shifted => shifted_betti(&c).context("the closed formula needs a shifted complex; run `shift` first")?,
            };
            emit(&table.to_tsv())?;
        }
        Command::Shift { complex, pairs, auto, seed } => {
            let c = read_complex(&complex)?;
            let (result, seq) = match pairs {
                Some(p) => {
                    let seq = ShiftSequence(parse_pairs(&p)?);
                    (seq.replay(&c)?, seq)
                }
                None => {
                    let strategy = match auto {
                        Auto::Sweep => Strategy::Sweep,
                        Auto::Random => Strategy::Random(seed),
                    };
                    shift_to_shifted(&c, strategy)?
                }
            };
            print_json(&json!({
                "complex": ComplexJson::from(&result),
                "sequence": seq,
                "shifted": result.is_shifted(),
            }))?;
        }
        Command::Enumerate { complex, limit } => {
            let lines: String =
                enumerate_shifted(&read_complex(&complex)?, limit)?.iter().map(|s| canonical_encoding(s) + "\n").collect();
            emit(&lines)?;
        }
        Command::Gin { complex, prime, seed, retries } => {
            let c = read_complex(&complex)?;
            let outcome = gin(&c, GinOptions { prime, seed, retries })?;
            print_json(&json!({
                "complex": ComplexJson::from(&outcome.complex),
                "report": {
                    "prime": prime,
                    "seeds": [outcome.seeds.0, outcome.seeds.1],
                    "draws": outcome.draws,
                    "degrees": outcome.reports,
                },
            }))?;
        }
        Command::Lex { complex } => {
            let c = read_complex(&complex)?;
            print_json(&ComplexJson::from(&delta_lex(&c.f_vector(), c.n())?))?;
        }
        Command::Verify { n, trials, seed, prime } => {
            let report = verify_theorems(n, trials, prime, seed)?;
            print_json(&report)?;
            return Ok(report.passed());
        }
        Command::Section4 { phase, slow, prime, seed, limit } => return section4(phase, slow, prime, seed, limit),
    }
    Ok(true)
}

fn section4(phase: Phase, slow: bool, prime: u32, seed: u64, limit: usize) -> Result<bool> {
    let complex = counterexample::build();
    if let Phase::Build = phase {
        print_json(&json!({
            "complex": ComplexJson::from(&complex),
            "f_vector": complex.f_vector(),
            "slice_mismatches": counterexample::slice_mismatches(&complex, |i| &counterexample::H[i - 3]),
        }))?;
        return Ok(true);
    }
    let classification = counterexample::enumerate_and_classify(&complex, limit)?;
    let words: Vec<String> = classification.words().iter().map(|q| q.to_string()).collect();
    let matches = classification.words() == counterexample::expected_table();
    if let Phase::Classify = phase {
        print_json(&json!({
            "states": classification.states,
            "words": words,
            "matches_expected_table": matches,
            "other_pairs_inert": classification.other_pairs_inert,
        }))?;
        return Ok(matches && classification.other_pairs_inert);
    }
    let options = slow.then_some(GinOptions { prime, seed, retries: 3 });
    let neg = counterexample::negative_results(&complex, &classification, options);
    print_json(&json!({
        "words": neg.words.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
        "dominance": neg.dominance,
        "upper_bounds": neg.upper_bounds,
        "lower_bounds": neg.lower_bounds,
        "witnesses": neg.witnesses,
        "exterior": neg.exterior.as_ref().map(ComplexJson::from),
        "exterior_word": neg.exterior.as_ref().map(|e| counterexample::classify(e).map(|q| q.to_string()).ok()),
        "report": neg.report,
    }))?;
    Ok(neg.report.passed())
}

fn configure_threads() -> Result<()> {
    if let Ok(value) = std::env::var("SHIFTLAB_THREADS") {
        let threads: usize = value.parse().with_context(|| format!("SHIFTLAB_THREADS={value:?}"))?;
        if threads == 0 {
            bail!("SHIFTLAB_THREADS must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|_| execute(cli.command)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
