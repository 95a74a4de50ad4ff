//! Command-line front end for the finite-group cobordism invariants.

use clap::{Parser, Subcommand};

use gcob_cli::commands::{self, parse_import, GlobalOpts, SequenceFamily, VerifyKind};
use gcob_cli::report::Format;

#[derive(Parser)]
#[command(
    name = "gcob",
    about = "Finite-group censuses and genus-graded orbit counts for the 1+1 cobordism invariants",
    version
)]
struct Cli {
    /// Output format for tabular results
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,

    /// Highest genus to compute (census/table cap at 2; rank accepts 3 for
    /// groups of order at most 8)
    #[arg(long, global = true, default_value_t = 2)]
    max_genus: usize,

    /// Raw-tuple cap per enumeration
    #[arg(long, global = true, default_value_t = gcob::monoid::DEFAULT_TUPLE_BUDGET)]
    budget: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute subgroup counts and genus-graded generator counts for groups
    Census {
        /// Group specs, e.g. "Z4", "Z2^3", "D8 x Z3", "file:PATH"
        #[arg(required = true)]
        specs: Vec<String>,
    },
    /// Reproduce the reference table and flag MATCH/MISMATCH per row
    Table {
        /// Largest group order to include
        #[arg(long, default_value_t = 28)]
        max_order: u64,
        /// Cayley table files for non-builtin rows, as NAME=PATH
        #[arg(long, value_parser = parse_import)]
        import: Vec<(String, std::path::PathBuf)>,
    },
    /// Per-genus generator counts of one group
    Rank {
        /// Group spec
        spec: String,
    },
    /// Cross-check computed values against the closed-form results
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// List the cylinder morphism classes from g to h
    Cylinders {
        /// Group spec
        spec: String,
        /// Source circle label (element index)
        g: usize,
        /// Target circle label (element index)
        h: usize,
    },
    /// Print closed-form value sequences
    Sequence {
        #[command(subcommand)]
        family: SequenceCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// r1(Z_n) = tau(n) = number of subgroups, for n up to --max-n
    Cyclic {
        #[arg(long, default_value_t = 30)]
        max_n: u64,
    },
    /// Orbit count, matrix-orbit oracle, and closed form agree on Z_p^n
    Elementary {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 4)]
        max_n: u32,
    },
    /// r1(D_2n) equals the abelian subgroup count; census matches tau(n)+sigma(n)
    Dihedral {
        #[arg(long, default_value_t = 7)]
        max_n: u64,
    },
    /// r1(Dic_n) equals the abelian subgroup count; census matches tau(2n)+sigma(n)
    Dicyclic {
        #[arg(long, default_value_t = 7)]
        max_n: u64,
    },
    /// F(n) = p F(n-1) + p^(2n-2)(p-1) and telescoping to the closed form
    Recurrence {
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
}

#[derive(Subcommand)]
enum SequenceCommand {
    /// 2, 5, 15, 51, 187, 715, ...
    Z2 {
        #[arg(long, default_value_t = 6)]
        max_n: u32,
    },
    /// The general elementary abelian closed form for a chosen prime
    Zp {
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        max_n: u32,
    },
}

fn main() {
    let cli = Cli::parse();
    let opts = GlobalOpts {
        format: cli.format,
        max_genus: cli.max_genus,
        budget: cli.budget,
    };
    let code = match cli.command {
        Command::Census { specs } => commands::cmd_census(&opts, &specs),
        Command::Table { max_order, import } => commands::cmd_table(&opts, max_order, &import),
        Command::Rank { spec } => commands::cmd_rank(&opts, &spec),
        Command::Verify { check } => {
            let kind = match check {
                VerifyCommand::Cyclic { max_n } => VerifyKind::Cyclic { max_n },
                VerifyCommand::Elementary { p, max_n } => VerifyKind::Elementary { p, max_n },
                VerifyCommand::Dihedral { max_n } => VerifyKind::Dihedral { max_n },
                VerifyCommand::Dicyclic { max_n } => VerifyKind::Dicyclic { max_n },
                VerifyCommand::Recurrence { max_n } => VerifyKind::Recurrence { max_n },
            };
            commands::cmd_verify(&opts, kind)
        }
        Command::Cylinders { spec, g, h } => commands::cmd_cylinders(&opts, &spec, g, h),
        Command::Sequence { family } => {
            let family = match family {
                SequenceCommand::Z2 { max_n } => SequenceFamily::Z2 { max_n },
                SequenceCommand::Zp { p, max_n } => SequenceFamily::Zp { p, max_n },
            };
            commands::cmd_sequence(&opts, family)
        }
    };
    std::process::exit(code);
}
