use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use prequant_cli::commands::{
    cmd_basic_level, cmd_classify, cmd_pairing, cmd_table, cmd_verify, Outcome, EXIT_USAGE,
};
use prequant_cli::Format;

/// Basic levels and pre-quantization of moduli spaces of flat G'-bundles.
#[derive(Parser)]
#[command(name = "prequant", version)]
struct Cli {
    /// Output format: text, json or csv (csv only for `table`).
    #[arg(long, global = true, default_value = "text")]
    format: String,
    /// Largest rank of the simply connected cover to include in `table`.
    #[arg(long, global = true, default_value_t = 8, allow_negative_numbers = true)]
    max_rank: i64,
    /// Level (a positive integer).
    #[arg(long, global = true, allow_negative_numbers = true)]
    level: Option<i64>,
    /// Quadrature grid size for `verify`.
    #[arg(long, global = true, default_value_t = 64, allow_negative_numbers = true)]
    grid: i64,
    /// Seed for the perturbed maps in `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form versus lattice basic levels for the named groups.
    Table,
    /// Basic level and lattice data for one group.
    BasicLevel { group: String },
    /// Commutator pairing on Z x Z.
    Pairing { group: String },
    /// Splitting decision and line bundle count.
    Classify { group: String },
    /// Quadrature cross-check of the pairing.
    Verify { group: String },
}

fn run(cli: Cli) -> Outcome {
    let format: Format = match cli.format.parse() {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    match cli.command {
        Command::Table => {
            if cli.max_rank < 2 {
                return Outcome::usage(format!("--max-rank must be at least 2, got {}", cli.max_rank));
            }
            cmd_table(cli.max_rank as usize, format)
        }
        Command::BasicLevel { group } => cmd_basic_level(&group, format),
        Command::Pairing { group } => cmd_pairing(&group, cli.level, format),
        Command::Classify { group } => cmd_classify(&group, cli.level, format),
        Command::Verify { group } => {
            if cli.grid < 0 {
                return Outcome::usage(format!("--grid must be at least 4, got {}", cli.grid));
            }
            cmd_verify(&group, cli.level, cli.grid as usize, cli.seed, format)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let out = run(cli);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.status as u8)
}
