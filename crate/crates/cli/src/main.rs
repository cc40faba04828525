use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};

use ksnake_core::chain::build_all_chains;
use ksnake_core::graph::build_chain_graph;
use ksnake_core::{
    assemble_extended_snake, assemble_he_snake, build_merge_tree, check_upper_bounds,
    missing_codewords, verify_snake, Error, SnakeFile, VerifyMode,
};

const INVALID_ARGS: u8 = 2;
const UNRESOLVED: u8 = 3;

#[derive(Parser)]
#[command(name = "ksnake", version, about = "Build and check K-snakes over the alternating group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    He,
    Extended,
}

impl Construction {
    fn id(self) -> &'static str {
        match self {
            Self::He => "he",
            Self::Extended => "extended",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Structural,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Build a snake in S_{2n+1} and write it as a snake file.
    Generate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "he")]
        construction: Construction,
        #[arg(long)]
        out: PathBuf,
        /// Write the he snake instead when the extended search fails.
        #[arg(long)]
        fallback_he: bool,
        /// Search budget for the extended construction, n >= 4.
        #[arg(long, default_value_t = 1800)]
        budget_secs: u64,
        /// Write the merge tree, one edge `x y z` per line.
        #[arg(long)]
        dump_tree: Option<PathBuf>,
        /// Write the chain graph (vertices, then `M[x] label a b` edges).
        #[arg(long)]
        dump_graph: Option<PathBuf>,
    },
    /// Check a snake file; exits 1 on any failed check.
    Verify {
        input: PathBuf,
        /// Defaults to full below S_9, structural otherwise.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Print size, transition histogram and missing codewords.
    Stats { input: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::InvalidParameter(_)) => ExitCode::from(INVALID_ARGS),
                _ => ExitCode::FAILURE,
            }
        }
    }
}

fn run(cmd: Command) -> anyhow::Result<ExitCode> {
    match cmd {
        Command::Generate { n, construction, out, fallback_he, budget_secs, dump_tree, dump_graph } => {
            if let Some(path) = dump_tree {
                fs::write(&path, build_merge_tree(n)?.dump())
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            if let Some(path) = dump_graph {
                let graph = build_chain_graph(&build_all_chains(n)?)?;
                fs::write(&path, graph.dump()).with_context(|| format!("writing {}", path.display()))?;
            }
            let start = Instant::now();
            let (id, snake) = match construction {
                Construction::He => (construction.id(), assemble_he_snake(n)?),
                Construction::Extended => match assemble_extended_snake(n, Duration::from_secs(budget_secs)) {
                    Ok(s) => (construction.id(), s),
                    Err(Error::ConjectureUnresolved(report)) => {
                        eprintln!("{report}");
                        if !fallback_he {
                            return Ok(ExitCode::from(UNRESOLVED));
                        }
                        eprintln!("falling back to the he construction");
                        (Construction::He.id(), assemble_he_snake(n)?)
                    }
                    Err(e) => return Err(e.into()),
                },
            };
            let file = SnakeFile::new(id, snake);
            fs::write(&out, file.serialize()).with_context(|| format!("writing {}", out.display()))?;
            println!(
                "n={} construction={} size={} time={:.2?}",
                file.snake.degree(),
                id,
                file.snake.len(),
                start.elapsed()
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { input, mode } => {
            let file = read(&input)?;
            let mode = match mode {
                Some(Mode::Structural) => VerifyMode::Structural,
                Some(Mode::Full) => VerifyMode::Full,
                None => VerifyMode::default_for(file.snake.degree()),
            };
            let report = verify_snake(&file.snake, Some(file.declared_size), mode);
            println!("{report}");
            let bounds = check_upper_bounds(&file.snake);
            match bounds.strict {
                Some(b) => println!("bounds: {} <= {} and <= {b:.3}: {}", bounds.size, bounds.half, ok(bounds.passed)),
                None => println!("bounds: {} <= {}: {}", bounds.size, bounds.half, ok(bounds.passed)),
            }
            Ok(if report.passed() && bounds.passed { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Stats { input } => {
            let file = read(&input)?;
            let s = &file.snake;
            println!("n={} construction={} size={}", s.degree(), file.construction, s.len());
            let hist: Vec<String> = s.histogram().iter().map(|(i, c)| format!("t{i}:{c}")).collect();
            println!("transitions: {}", hist.join(" "));
            let missing = missing_codewords(s);
            println!("missing: {}", missing.len());
            if s.degree() <= 7 {
                for w in &missing {
                    println!("  {w}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn ok(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

fn read(path: &PathBuf) -> anyhow::Result<SnakeFile> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(SnakeFile::parse(&text)?)
}
