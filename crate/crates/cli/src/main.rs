mod builtin;
mod commands;
mod error;
mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{Budgets, CoverArgs, LazyMode};
use error::CliError;
use report::{Input, Outcome, RunReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Homology, edge-path groups, coverings and connectedness of exhausted
/// simplicial complexes.
///
/// INPUT arguments are file paths or names of built-in fixtures (see
/// `ldtopo fixture --list`).
#[derive(Parser, Debug)]
#[command(name = "ldtopo", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    /// Coset enumeration budget.
    #[arg(long, env = "LDTOPO_COSETS", default_value_t = 10_000, global = true)]
    cosets: usize,
    /// Stage budget for colimits and lazy covers.
    #[arg(long, env = "LDTOPO_STAGES", default_value_t = 16, global = true)]
    stages: usize,
    /// Largest number of pieces in a connectedness witness.
    #[arg(long = "grammar-k", env = "LDTOPO_GRAMMAR_K", default_value_t = 3, global = true)]
    grammar_k: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology of a complex, a pair, or an exhaustion.
    Homology {
        input: String,
        #[arg(long)]
        dim: Option<usize>,
        /// Subcomplex A for relative homology H(K, A).
        #[arg(long)]
        relative: Option<String>,
        /// Direct limit over the stages of an exhaustion.
        #[arg(long)]
        colimit: bool,
    },
    /// Edge-path presentation of the fundamental group.
    Pi1 {
        input: String,
        #[arg(long)]
        base: Option<u32>,
    },
    /// Compare the abelianized fundamental group with H_1, and pi_2 with H_2.
    Hurewicz {
        input: String,
        #[arg(long)]
        base: Option<u32>,
    },
    /// Covering complex of a subgroup given by generating words.
    Cover {
        input: String,
        /// Subgroup generator, e.g. "a a" (uppercase letters are inverses).
        #[arg(long)]
        subgroup: Vec<String>,
        #[arg(long)]
        base: Option<u32>,
        /// Generate an infinite cover lazily, deciding coset equality this way.
        #[arg(long, value_enum)]
        lazy: Option<LazyMode>,
        /// Radius of the lazy cover prefix; defaults to the stage budget.
        #[arg(long)]
        radius: Option<usize>,
        /// Write the total complex to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Connectedness of a union of stages, with separating witnesses.
    Connect { input: String },
    /// Glue complexes along vertex identifications.
    Glue { input: String },
    /// Whitehead test for a simplicial map.
    Whitehead {
        input: String,
        #[arg(long)]
        base: Option<u32>,
    },
    /// Print a built-in fixture.
    Fixture {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

fn read_input(name: &str) -> Result<Input, CliError> {
    let path = Path::new(name);
    let text = if path.exists() {
        std::fs::read_to_string(path).map_err(|e| CliError::Input {
            name: name.to_string(),
            message: e.to_string(),
        })?
    } else if let Some(b) = builtin::lookup(name) {
        (b.render)()
    } else {
        return Err(CliError::Input {
            name: name.to_string(),
            message: "no such file or built-in fixture".into(),
        });
    };
    Ok(Input {
        name: name.to_string(),
        text,
    })
}

fn run(cli: &Cli) -> Result<Option<RunReport>, CliError> {
    let budgets = Budgets {
        cosets: cli.cosets,
        stages: cli.stages,
        grammar_k: cli.grammar_k,
    };
    let start = Instant::now();
    let (command, inputs, outcome): (&'static str, Vec<Input>, Outcome) = match &cli.command {
        Command::Fixture { name, list } => {
            if *list || name.is_none() {
                for b in builtin::BUILTINS {
                    println!("{}.{}", b.name, b.extension);
                }
            } else {
                let name = name.as_deref().unwrap_or_default();
                let b = builtin::lookup(name.rsplit_once('.').map_or(name, |(n, _)| n))
                    .ok_or_else(|| CliError::Usage(format!("unknown fixture `{name}`")))?;
                print!("{}", (b.render)());
            }
            return Ok(None);
        }
        Command::Homology {
            input,
            dim,
            relative,
            colimit,
        } => {
            let i = read_input(input)?;
            let rel = relative.as_deref().map(read_input).transpose()?;
            let out = commands::homology_cmd(&i, rel.as_ref(), *dim, *colimit, budgets)?;
            ("homology", std::iter::once(i).chain(rel).collect(), out)
        }
        Command::Pi1 { input, base } => {
            let i = read_input(input)?;
            let out = commands::pi1_cmd(&i, *base, budgets)?;
            ("pi1", vec![i], out)
        }
        Command::Hurewicz { input, base } => {
            let i = read_input(input)?;
            let out = commands::hurewicz_cmd(&i, *base, budgets)?;
            ("hurewicz", vec![i], out)
        }
        Command::Cover {
            input,
            subgroup,
            base,
            lazy,
            radius,
            emit,
        } => {
            let i = read_input(input)?;
            let args = CoverArgs {
                subgroup,
                base: *base,
                lazy: *lazy,
                radius: *radius,
            };
            let (out, c) = commands::cover_cmd(&i, &args, budgets)?;
            if let Some(path) = emit {
                std::fs::write(path, commands::annotated_total(&c)).map_err(|e| CliError::Input {
                    name: path.display().to_string(),
                    message: e.to_string(),
                })?;
            }
            ("cover", vec![i], out)
        }
        Command::Connect { input } => {
            let i = read_input(input)?;
            let out = commands::connect_cmd(&i, budgets)?;
            ("connect", vec![i], out)
        }
        Command::Glue { input } => {
            let i = read_input(input)?;
            let out = commands::glue_cmd(&i)?;
            ("glue", vec![i], out)
        }
        Command::Whitehead { input, base } => {
            let i = read_input(input)?;
            let out = commands::whitehead_cmd(&i, *base, budgets)?;
            ("whitehead", vec![i], out)
        }
    };
    Ok(Some(RunReport {
        command,
        inputs: inputs.iter().map(|i| (i.name.clone(), i.digest())).collect(),
        outcome,
        timing_ms: cli.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(report)) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("serializable"))
                }
                Format::Text => print!("{}", report.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
