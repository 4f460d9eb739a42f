use std::io::{stdin, stdout, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stray_cli::bench::{self, BenchConfig};
use stray_cli::input::Mode;
use stray_cli::report::QueryFlags;
use stray_cli::stream::Session;

#[derive(Parser)]
#[command(
    name = "stray",
    version,
    about = "Suffix tray and suffix trist text indexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
#[group(multiple = false)]
struct ModeArgs {
    /// every byte of the input is a symbol (default)
    #[arg(long)]
    byte: bool,
    /// whitespace separated positive integers
    #[arg(long)]
    token: bool,
}

impl ModeArgs {
    fn mode(self) -> Mode {
        if self.token {
            Mode::Token
        } else {
            Mode::Byte
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Index a file
    Build {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        mode: ModeArgs,
    },
    /// Look up a pattern in an index
    Query {
        #[arg(long)]
        index: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        pattern: String,
        /// print every occurrence
        #[arg(long)]
        all: bool,
        #[arg(long)]
        count_comparisons: bool,
    },
    /// Node class counts of an index
    Stats {
        #[arg(long)]
        index: PathBuf,
    },
    /// Build an index online from stdin commands
    Stream {
        #[arg(long, default_value_t = 16)]
        sigma_hint: usize,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        count_comparisons: bool,
        /// verify internal invariants after every step (slow)
        #[arg(long)]
        check: bool,
    },
    /// Symbol comparison counts as CSV
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        sigma: Vec<usize>,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 200)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let mut out = stdout().lock();
    match cli.command {
        Command::Build {
            input,
            output,
            mode,
        } => stray_cli::cmd_build(&input, &output, mode.mode(), &mut out)?,
        Command::Query {
            index,
            pattern,
            all,
            count_comparisons,
        } => {
            let flags = QueryFlags {
                all,
                count_comparisons,
            };
            return stray_cli::cmd_query(&index, &pattern, flags, &mut out);
        }
        Command::Stats { index } => stray_cli::cmd_stats(&index, &mut out)?,
        Command::Stream {
            sigma_hint,
            mode,
            all,
            count_comparisons,
            check,
        } => {
            let flags = QueryFlags {
                all,
                count_comparisons,
            };
            Session::new(mode.mode(), sigma_hint, flags, check).run(stdin().lock(), &mut out)?;
        }
        Command::Bench {
            n,
            sigma,
            m,
            queries,
            seed,
        } => {
            let rows = bench::run(&BenchConfig {
                ns: n,
                sigmas: sigma,
                m,
                queries,
                seed,
            })?;
            out.write_all(bench::render_csv(&rows).as_bytes())?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
