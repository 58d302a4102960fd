use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use commands::{DiagramAction, Method, Move};

#[derive(Debug, Parser)]
#[command(
    name = "surflap",
    version,
    about = "Laplacian invariants of signed graphs in surfaces"
)]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Append wall-clock time to the report (makes output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Laplacian polynomial by determinant, skein recursion or forest sum.
    Poly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Integer presentation matrix and abelian invariants of the module.
    Module { file: PathBuf },
    /// Symplectic ranks and virtual genus certificate.
    Genus {
        file: PathBuf,
        #[arg(long)]
        dual: Option<PathBuf>,
    },
    /// Apply a Reidemeister graph move and check invariance.
    Moves {
        file: PathBuf,
        /// Write the transformed graph here instead of into the report.
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[command(subcommand)]
        mv: MoveCommand,
    },
    /// Checkerboard colorability or medial graph of a diagram.
    Diagram {
        file: PathBuf,
        #[arg(value_enum)]
        action: DiagramAction,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Seeded random self-check of the core identities.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: u32,
    },
}

#[derive(Debug, Subcommand)]
enum MoveCommand {
    Rg1 {
        #[command(subcommand)]
        direction: Rg1Direction,
    },
    Rg2 {
        #[command(subcommand)]
        direction: Rg2Direction,
    },
    /// Replace the degree-3 star at VERTEX by a triangle.
    Rg3 { vertex: u32 },
}

#[derive(Debug, Subcommand)]
enum Rg1Direction {
    /// Attach a new pendant vertex to ANCHOR.
    Add {
        anchor: u32,
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        sign: i64,
        #[arg(long)]
        connection: Option<String>,
    },
    /// Delete the pendant VERTEX and its edge.
    Remove { vertex: u32 },
}

#[derive(Debug, Subcommand)]
enum Rg2Direction {
    /// Add a cancelling pair of edges U1 -> U2.
    Add {
        u1: u32,
        u2: u32,
        #[arg(long)]
        connection: Option<String>,
    },
    /// Remove a cancelling pair of edges between U1 and U2.
    Remove { u1: u32, u2: u32 },
}

impl MoveCommand {
    fn to_move(&self) -> Move {
        match self {
            MoveCommand::Rg1 {
                direction:
                    Rg1Direction::Add {
                        anchor,
                        sign,
                        connection,
                    },
            } => Move::Rg1Add {
                anchor: *anchor,
                sign: *sign,
                connection: connection.clone(),
            },
            MoveCommand::Rg1 {
                direction: Rg1Direction::Remove { vertex },
            } => Move::Rg1Remove { vertex: *vertex },
            MoveCommand::Rg2 {
                direction: Rg2Direction::Add { u1, u2, connection },
            } => Move::Rg2Add {
                u1: *u1,
                u2: *u2,
                connection: connection.clone(),
            },
            MoveCommand::Rg2 {
                direction: Rg2Direction::Remove { u1, u2 },
            } => Move::Rg2Remove { u1: *u1, u2: *u2 },
            MoveCommand::Rg3 { vertex } => Move::Rg3 { vertex: *vertex },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let machine = cli.format == Format::Machine;
    let start = Instant::now();
    let result = match &cli.command {
        Command::Poly { file, method } => commands::cmd_poly(file, *method),
        Command::Module { file } => commands::cmd_module(file),
        Command::Genus { file, dual } => commands::cmd_genus(file, dual.as_deref()),
        Command::Moves { file, output, mv } => {
            commands::cmd_moves(file, &mv.to_move(), output.as_deref())
        }
        Command::Diagram {
            file,
            action,
            output,
        } => commands::cmd_diagram(file, *action, output.as_deref(), machine),
        Command::Selftest { seed, count } => commands::cmd_selftest(*seed, *count),
    };
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = if machine {
                report.render_machine()
            } else {
                report.render_human()
            };
            print!("{text}");
            ExitCode::from(report.status.exit_code() as u8)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
