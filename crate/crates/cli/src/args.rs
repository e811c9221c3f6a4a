use std::path::PathBuf;

use clap::{Parser, Subcommand};
use quasigroup::ParastropheIndex;

#[derive(Debug, Parser)]
#[command(name = "qg", version, about = "Finite quasigroup analysis")]
pub struct Cli {
    /// Print a JSON run report instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Maximum number of worker threads for isotopy searches.
    #[arg(long, global = true, value_name = "K", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: u64,

    /// Include wall-clock timing in the JSON report (makes output non-reproducible).
    #[arg(long, global = true)]
    pub timing: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a file holds a Latin square.
    Validate { file: PathBuf },
    /// Print one of the six parastrophes.
    Parastrophe {
        file: PathBuf,
        /// p1..p6, or star, linv, rinv, linv-star, rinv-star.
        #[arg(long, value_parser = parse_index)]
        index: ParastropheIndex,
    },
    /// Check the translation-map identities between parastrophes.
    Translations { file: PathBuf },
    /// List every subquasigroup.
    Subs { file: PathBuf },
    /// Look for a proper associative subquasigroup of size at least two.
    Smarandache { file: PathBuf },
    /// Search for an isotopism from the first table onto the second.
    Isotopic {
        first: PathBuf,
        second: PathBuf,
        /// Maximum number of search nodes.
        #[arg(long, default_value_t = quasigroup::isotopy::DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Decide whether the table is isotopic to a group.
    GroupIsotope { file: PathBuf },
    /// Check the isotopism triples on a subquasigroup for all six parastrophes.
    Verify {
        file: PathBuf,
        /// Comma-separated subset, e.g. "0,2,4". Defaults to the smallest
        /// Smarandache certificate, else the whole table.
        #[arg(long)]
        sub: Option<String>,
    },
    /// Sample a random Latin square.
    Generate {
        order: usize,
        #[arg(long)]
        seed: u64,
        /// Number of moves before the first proper square is taken (default 10·n³).
        #[arg(long)]
        burnin: Option<u64>,
    },
    /// Enumerate every Latin square of a small order (at most 5).
    Enumerate {
        order: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Exploratory: count squares of order N isotopic to their (θ⁻¹)* parastrophe.
    Converse {
        order: usize,
        #[arg(long, default_value_t = quasigroup::isotopy::DEFAULT_BUDGET)]
        budget: u64,
    },
}

fn parse_index(s: &str) -> Result<ParastropheIndex, String> {
    s.parse().map_err(|e: quasigroup::Error| e.to_string())
}
