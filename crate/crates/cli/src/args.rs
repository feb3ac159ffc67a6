use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use padic_spherical::CaseTag;

#[derive(Debug, Parser)]
#[command(name = "spherical", version, about = "Spherical functions on p-adic spaces of forms")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Fixture directory used by --record and --verify.
    #[arg(long, global = true, value_name = "DIR")]
    pub fixtures: Option<PathBuf>,

    /// Write each output document into the fixture store.
    #[arg(long, global = true, conflicts_with = "verify")]
    pub record: bool,

    /// Compare each output document with the fixture store; mismatches exit 1.
    #[arg(long, global = true)]
    pub verify: bool,

    /// Also write the JSON document to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,

    /// Report enumeration progress on stderr.
    #[arg(long, global = true)]
    pub progress: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hall-Littlewood polynomial and its monomial expansion.
    Hl(HlArgs),
    /// Closed form of the spherical function.
    Spherical(SphericalArgs),
    /// Functional equation factor for one Weyl element.
    Feq(FeqArgs),
    /// Symmetrization identity for one weight.
    Reconstruct(CaseLambdaArgs),
    /// Finite-level enumeration compared with the closed form.
    Oracle(LevelArgs),
    /// Hecke eigen-relation at a finite level.
    Hecke(LevelArgs),
    /// Gamma factor of the one-dimensional zeta integral.
    Tate(TateArgs),
    /// Run every invariant suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct HlArgs {
    /// Weight, comma separated and nonincreasing.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Number of variables; defaults to the length of the weight.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CaseLambdaArgs {
    #[arg(long)]
    pub case: CaseTag,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SphericalArgs {
    #[command(flatten)]
    pub base: CaseLambdaArgs,
    /// Expand in u_i = q^-s_i to this total order (needs --p).
    #[arg(long)]
    pub order: Option<i32>,
    #[arg(long)]
    pub p: Option<u64>,
}

#[derive(Debug, Args)]
pub struct FeqArgs {
    #[arg(long)]
    pub case: CaseTag,
    #[arg(long)]
    pub n: usize,
    /// Permutation as one-based images, e.g. 2,1.
    #[arg(long)]
    pub sigma: String,
}

#[derive(Debug, Args)]
pub struct LevelArgs {
    #[command(flatten)]
    pub base: CaseLambdaArgs,
    #[arg(long, default_value_t = 3)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
}

#[derive(Debug, Args)]
pub struct TateArgs {
    #[arg(long, default_value_t = 3)]
    pub p: u64,
}
