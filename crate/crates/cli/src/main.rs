//! `tree-status`: batch front end for status sequences of trees.
//!
//! Exit codes: 0 for a positive answer, 1 for a well-formed negative answer,
//! 2 for an input error.

mod checks;
mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::report::{CliError, Report};

#[derive(Debug, Parser)]
#[command(
    name = "tree-status",
    version,
    about = "Status sequences of trees and graphs"
)]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Status of every vertex and the status sequence of a tree.
    Status { tree: PathBuf },
    /// Rebuild the unique tree with a given injective status sequence.
    RealizeInjective { sequence: PathBuf },
    /// All trees with a given status sequence, by enumeration (n <= 20).
    RealizeExhaustive { sequence: PathBuf },
    /// Whether no other tree shares this tree's status sequence (n <= 20).
    StatusUnique { tree: PathBuf },
    /// Status sequence produced from a 3-Partition instance.
    Reduce {
        instance: PathBuf,
        /// Add the padding constant to every element first.
        #[arg(long)]
        pad: bool,
    },
    /// Gadget tree of an instance and a partition (one triple of 0-based
    /// element indices per line).
    Gadget {
        instance: PathBuf,
        partition: PathBuf,
    },
    /// Recover the triple partition from a gadget tree.
    Extract { tree: PathBuf, instance: PathBuf },
    /// Depth-3 realization around a root of degree at most `delta`.
    SrtD3 {
        sequence: PathBuf,
        #[arg(long)]
        delta: usize,
    },
    /// Generate a named tree family member.
    Family {
        /// One of path, star, double-star, balanced-double-star,
        /// family-t-star, family-t-double-star, spider.
        kind: String,
        params: Vec<usize>,
    },
    /// The graph G_m with its hub partition.
    Gm { m: usize },
    /// Status, orbit and equitable partitions of a graph.
    Partitions {
        graph: PathBuf,
        #[arg(long, default_value = "adjacency")]
        base: tree_status::partitions::Base,
    },
    /// Run a verification sweep.
    Check {
        id: checks::CheckId,
        /// Largest order (or number of triples for reduction-roundtrip).
        #[arg(long)]
        max_n: Option<usize>,
        /// Seed for the randomized part of a sweep.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn dispatch(command: Command) -> Result<Report, CliError> {
    match command {
        Command::Status { tree } => commands::status(&tree),
        Command::RealizeInjective { sequence } => commands::realize_injective(&sequence),
        Command::RealizeExhaustive { sequence } => commands::realize_exhaustive(&sequence),
        Command::StatusUnique { tree } => commands::status_unique(&tree),
        Command::Reduce { instance, pad } => commands::reduce(&instance, pad),
        Command::Gadget {
            instance,
            partition,
        } => commands::gadget(&instance, &partition),
        Command::Extract { tree, instance } => commands::extract(&tree, &instance),
        Command::SrtD3 { sequence, delta } => commands::srt_d3(&sequence, delta),
        Command::Family { kind, params } => commands::family(&kind, &params),
        Command::Gm { m } => commands::gm(m),
        Command::Partitions { graph, base } => commands::partitions(&graph, base),
        Command::Check { id, max_n, seed } => checks::run(id, max_n, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(report) => {
            report.print(cli.json);
            ExitCode::from(report.exit_code())
        }
        Err(err) => {
            err.print(cli.json);
            ExitCode::from(2)
        }
    }
}
