use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use bruhat_forge::cache::{cache_path_from_env, KlCache};
use bruhat_forge::closedform::{kl_basis_closed, kl_fast_laurent};
use bruhat_forge::hecke::{kl_basis, kl_polynomial};
use bruhat_forge::regions::classify;
use bruhat_forge::render::{render_interval, render_regions};
use bruhat_forge::verify::{iso_class_census, run_suite, DEFAULT_CONJECTURE_BOUND};
use bruhat_forge::{Element, Interval, LaurentPoly, Word};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_FAILED: u8 = 2;

/// Kazhdan-Lusztig polynomials and Bruhat intervals in the affine Weyl group Ã₂.
///
/// Words are digit strings read as labels mod 3 ("1234" is s1 s2 s0 s1);
/// pass "" for the identity. Set BRUHAT_FORGE_CACHE to a file path to keep
/// computed KL polynomials between runs.
#[derive(Parser)]
#[command(name = "bruhat-forge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print h_{x,y}(v) and P_{x,y}(q).
    Kl {
        x: String,
        y: String,
        #[arg(long, value_enum, default_value_t = Via::Formula)]
        via: Via,
    },
    /// Region of an element, as JSON.
    Classify { word: String },
    /// The Bruhat interval [x, y].
    Interval {
        x: String,
        y: String,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite: conjecture, closed-forms, lemmas,
    /// monotonicity, partition, symmetry or all.
    Verify {
        suite: String,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Isomorphism classes of intervals per height, as CSV.
    Census {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Draw the alcove picture as SVG.
    Render {
        #[arg(long, num_args = 2, value_names = ["X", "Y"], conflicts_with = "regions")]
        interval: Option<Vec<String>>,
        #[arg(long)]
        regions: bool,
        #[arg(long)]
        radius: Option<u32>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    max_length: Option<u32>,
    /// Worker threads; 0 picks one per core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Via {
    Formula,
    Recursion,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<bruhat_forge::Error> for Failure {
    fn from(e: bruhat_forge::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(EXIT_FAILED)
        }
    }
}

fn element(word: &str) -> Result<Element, Failure> {
    let parsed: Word = word.parse()?;
    let w = Element::from_word(&parsed);
    if w.length() as usize != parsed.len() {
        eprintln!("warning: {word:?} is not reduced; using {w:?}");
    }
    Ok(w)
}

fn open_cache() -> Result<Option<(PathBuf, KlCache)>, Failure> {
    let Some(path) = cache_path_from_env() else {
        return Ok(None);
    };
    let cache = KlCache::open(&path)?;
    cache.preload();
    Ok(Some((path, cache)))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Kl { x, y, via } => kl(&element(&x)?, &element(&y)?, via),
        Command::Classify { word } => {
            println!("{}", classify(&element(&word)?)?.to_json());
            Ok(())
        }
        Command::Interval { x, y, json } => interval(&element(&x)?, &element(&y)?, json),
        Command::Verify { suite, run, format } => {
            let report = run_suite(&suite, run.max_length, run.jobs)?;
            match format {
                Format::Json => println!("{:#}", report.to_json()),
                Format::Csv => print!("{}", report.to_csv()),
            }
            if report.passed() {
                Ok(())
            } else {
                let failed: Vec<_> = report.suites.iter().filter(|s| !s.passed).map(|s| s.name.as_str()).collect();
                Err(Failure::Verification(format!("failed: {}", failed.join(", "))))
            }
        }
        Command::Census { run } => {
            let rows = iso_class_census(run.max_length.unwrap_or(DEFAULT_CONJECTURE_BOUND), run.jobs)?;
            println!("height,intervals,classes,buckets,collisions");
            for r in rows {
                println!("{},{},{},{},{}", r.height, r.intervals, r.classes, r.buckets, r.collisions);
            }
            Ok(())
        }
        Command::Render {
            interval,
            regions,
            radius,
            output,
        } => {
            let rendered = match interval {
                Some(words) => render_interval(&element(&words[0])?, &element(&words[1])?, radius)?,
                None if regions => render_regions(radius.unwrap_or(6))?,
                None => return Err(Failure::Usage("render needs --interval X Y or --regions".into())),
            };
            fs::write(&output, &rendered.svg)?;
            let counts: Vec<String> = rendered.summary.counts.iter().map(|(k, n)| format!("{k}={n}")).collect();
            eprintln!(
                "wrote {} alcoves to {} ({})",
                rendered.summary.alcoves,
                output.display(),
                counts.join(", ")
            );
            Ok(())
        }
    }
}

fn kl(x: &Element, y: &Element, via: Via) -> Result<(), Failure> {
    let mut cache = open_cache()?;
    let formula = match via {
        Via::Recursion => None,
        _ => Some(kl_fast_laurent(x, y)?),
    };
    let recursion = match via {
        Via::Formula => None,
        _ => Some(kl_polynomial(x, y)?.0),
    };
    if let (Some(a), Some(b)) = (&formula, &recursion) {
        if a != b {
            return Err(Failure::Verification(format!(
                "formula gives {a}, recursion gives {b}"
            )));
        }
    }
    let h: LaurentPoly = formula.or(recursion).unwrap_or_default();
    let p = if x.length() <= y.length() {
        h.to_q(y.length() - x.length())?
    } else {
        Default::default()
    };
    println!("h = {h}");
    println!("P = {p}");
    if let Some((path, cache)) = cache.as_mut() {
        let basis = match via {
            Via::Formula => kl_basis_closed(y)?,
            _ => kl_basis(y)?,
        };
        cache.record_element(y, &basis)?;
        cache.save(path)?;
    }
    Ok(())
}

fn interval(x: &Element, y: &Element, as_json: bool) -> Result<(), Failure> {
    let iv = Interval::build(x, y)?;
    if as_json {
        let mut v = iv.to_json();
        v["size"] = json!(iv.len());
        v["height"] = json!(iv.height());
        v["rank_sizes"] = json!(iv.rank_sizes());
        println!("{v:#}");
        return Ok(());
    }
    println!(
        "[{}, {}]: {} members, height {}, {} covers",
        display_word(x),
        display_word(y),
        iv.len(),
        iv.height(),
        iv.cover_count()
    );
    for r in 0..=iv.height() {
        let row: Vec<String> = (0..iv.len())
            .filter(|&i| iv.rank(i) == r)
            .map(|i| display_word(&iv.member(i)))
            .collect();
        println!("  rank {r:>2}: {}", row.join(" "));
    }
    Ok(())
}

fn display_word(w: &Element) -> String {
    if w.is_identity() {
        "e".into()
    } else {
        w.to_string()
    }
}
