mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use hochlie_core::derlie::{hh1, loop_criterion};
use hochlie_core::dsl::parse_presentation;
use hochlie_core::error::{DeltaError, Error};
use hochlie_core::kronecker::chain_report;
use hochlie_core::oracle;
use hochlie_core::report::{
    analyze_algebra, build_with, oracle_report, septype_report, AlgebraStats, AnalyzeOptions, LieReport,
};
use hochlie_core::FieldDescriptor;

#[derive(Parser)]
#[command(name = "hochlie", version, about = "First Hochschild cohomology of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Full report; a directory argument analyzes every presentation in it.
    Analyze(Common),
    /// HH^1 and HH^1_rad as Lie algebras.
    Hh1(Common),
    /// Kronecker pairs, maximal chains and the count m.
    Chains(Common),
    /// Classification of the separated quiver.
    Septype(Common),
    /// HH^1 dimension from the Hochschild cochain complex.
    Oracle(Common),
}

#[derive(Args, Clone)]
struct Common {
    /// Presentation file (text format or JSON).
    path: PathBuf,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
    /// Override the ground field (`Q` or `fp:<p>`).
    #[arg(long)]
    field: Option<FieldDescriptor>,
    /// Cross-check HH^1 against the cochain complex.
    #[arg(long)]
    oracle: bool,
    /// Require the sl_2 decomposition (refused in characteristic 2).
    #[arg(long)]
    decompose: bool,
    /// Declare the algebra to be of non-wild representation type.
    #[arg(long)]
    assert_nonwild: bool,
    /// Length cap for the finite-dimensionality certificate.
    #[arg(long, value_name = "N")]
    max_length: Option<usize>,
}

impl Common {
    fn options(&self) -> AnalyzeOptions {
        AnalyzeOptions {
            field: self.field,
            oracle: self.oracle,
            decompose: self.decompose,
            assert_nonwild: self.assert_nonwild,
            max_length: self.max_length,
        }
    }
}

enum Failure {
    Io(String),
    Core(Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 2,
            Failure::Core(e) if e.is_input_error() => 2,
            Failure::Core(_) => 3,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

#[derive(Clone, Copy)]
enum Kind {
    Analyze,
    Hh1,
    Chains,
    Septype,
    Oracle,
}

/// Runs one subcommand on one file, returning JSON and text renderings.
fn run_file(kind: Kind, path: &Path, c: &Common) -> Result<(Value, String), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let opts = c.options();
    let p = parse_presentation(&text, opts.field)?;
    let a = build_with(&p, &opts)?;
    match kind {
        Kind::Analyze => {
            let r = analyze_algebra(&a, &opts)?;
            Ok((r.to_json(), render::analysis(&r)))
        }
        Kind::Hh1 => {
            let (all, rad) = (hh1(&a, false), hh1(&a, true));
            let (la, lr) = (LieReport::new(&all), LieReport::new(&rad));
            let lc = loop_criterion(&a);
            let stats = AlgebraStats::new(&a);
            let text = format!(
                "{}{}{}{}",
                render::algebra(&stats),
                render::lie("HH^1", &la),
                render::lie("HH^1_rad", &lr),
                render::loops(&lc)
            );
            Ok((json!({"algebra": stats, "hh1": la, "hh1_rad": lr, "loop_criterion": lc}), text))
        }
        Kind::Chains => {
            let ch = a.field().characteristic();
            if opts.decompose && ch == 2 {
                return Err(Error::from(DeltaError::UnsupportedCharacteristic(ch)).into());
            }
            let r = chain_report(&a, &hh1(&a, true), opts.assert_nonwild);
            Ok((json!({"chains": r, "m": r.m}), render::chains(&r)))
        }
        Kind::Septype => {
            let s = septype_report(&a);
            Ok((json!({"septype": s}), render::septype(&s)))
        }
        Kind::Oracle => {
            oracle::check_dim(a.dim()).map_err(Error::from)?;
            let o = oracle_report(&a, hh1(&a, false).dim())?;
            Ok((json!({"oracle": o}), render::oracle(&o)))
        }
    }
}

fn is_presentation(path: &Path) -> bool {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("");
    path.is_file() && !name.starts_with('.') && !name.ends_with(".expected.json")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, c) = match &cli.command {
        Command::Analyze(c) => (Kind::Analyze, c),
        Command::Hh1(c) => (Kind::Hh1, c),
        Command::Chains(c) => (Kind::Chains, c),
        Command::Septype(c) => (Kind::Septype, c),
        Command::Oracle(c) => (Kind::Oracle, c),
    };

    if matches!(kind, Kind::Analyze) && c.path.is_dir() {
        let mut files: Vec<PathBuf> = match fs::read_dir(&c.path) {
            Ok(rd) => rd.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| is_presentation(p)).collect(),
            Err(e) => {
                eprintln!("error: {}: {e}", c.path.display());
                return ExitCode::from(2);
            }
        };
        files.sort();
        let results: Vec<_> = files.par_iter().map(|f| (f.clone(), run_file(kind, f, c))).collect();
        let mut code = 0;
        let mut out = serde_json::Map::new();
        for (f, r) in results {
            let name = f.file_name().unwrap().to_string_lossy().to_string();
            match r {
                Ok((j, t)) => {
                    if c.json {
                        out.insert(name, j);
                    } else {
                        println!("== {name}\n{t}");
                    }
                }
                Err(e) => {
                    code = code.max(e.code());
                    if c.json {
                        out.insert(name, json!({"error": e.message(), "exit_code": e.code()}));
                    } else {
                        println!("== {name}\nerror: {}\n", e.message());
                    }
                }
            }
        }
        if c.json {
            println!("{}", serde_json::to_string_pretty(&Value::Object(out)).unwrap());
        }
        return ExitCode::from(code);
    }

    match run_file(kind, &c.path, c) {
        Ok((j, t)) => {
            if c.json {
                println!("{}", serde_json::to_string_pretty(&j).unwrap());
            } else {
                print!("{t}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
