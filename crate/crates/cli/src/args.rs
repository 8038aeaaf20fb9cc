//! Command-line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Exact analyses of metric Lie algebra representations.
#[derive(Debug, Parser)]
#[command(name = "holtor", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run selected analyses on one representation.
    Analyze(AnalyzeArgs),
    /// Sweep the fixed desk-scale instance list against the classical
    /// expectation table, PASS/FAIL per cell.
    Table1(Table1Args),
    /// Build homogeneous-model candidates from an invariant three-form and
    /// either check one (λ, κ) pair or solve for all closing pairs.
    Infmodel(InfmodelArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Md,
}

/// The analyses `analyze` can run, in their fixed execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum OpName {
    /// Dimension (and basis) of the curvature space 𝒦.
    Curvature,
    /// Span of curvature evaluations, its ideal check, and the holonomy
    /// verdict for irreducible modules.
    Berger,
    /// Factorwise analysis of a reducible module.
    BergerDecomposition,
    /// Invariant torsion spaces and their skewness.
    Torsion,
    /// Verdict for invariant skew torsion on an irreducible module.
    Classify,
    /// Einstein conditions and the parallel-torsion criterion for a chosen
    /// torsion module.
    Conditions,
    /// Homogeneous-model candidate for given (λ, κ) or `--solve`.
    Infmodel,
}

impl OpName {
    pub fn as_str(self) -> &'static str {
        match self {
            OpName::Curvature => "curvature",
            OpName::Berger => "berger",
            OpName::BergerDecomposition => "berger-decomposition",
            OpName::Torsion => "torsion",
            OpName::Classify => "classify",
            OpName::Conditions => "conditions",
            OpName::Infmodel => "infmodel",
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Representation: a catalog key (g2, spin7, su3, adjoint:su3,
    /// sum:so3,so4, diag:so3:2, sp1+u1, …) or file:PATH to a JSON file.
    #[arg(long)]
    pub rep: String,

    /// Comma-separated analyses to run.
    #[arg(long, value_delimiter = ',', required = true)]
    pub ops: Vec<OpName>,

    /// Torsion module for `conditions`: full, invariant, or file:PATH.
    #[arg(long, default_value = "invariant")]
    pub w_mode: String,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Include basis vectors in the report (dimension summaries otherwise).
    #[arg(long)]
    pub emit_bases: bool,

    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct InfmodelArgs {
    /// Representation: a catalog key or file:PATH.
    #[arg(long)]
    pub rep: String,

    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Include the parameter defect table in the report.
    #[arg(long)]
    pub emit_bases: bool,

    #[command(flatten)]
    pub model: ModelArgs,
}

/// Parameters shared by the `infmodel` subcommand and the `infmodel` op of
/// `analyze`.
#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Three-form choice: `invariant` or `invariant:INDEX` into the basis of
    /// the invariant three-form space.
    #[arg(long, default_value = "invariant")]
    pub eta: String,

    /// Torsion scale λ as an exact rational `p/q`.
    #[arg(long, conflicts_with = "solve")]
    pub lambda: Option<String>,

    /// Curvature scale κ as an exact rational `p/q`.
    #[arg(long, conflicts_with = "solve")]
    pub kappa: Option<String>,

    /// Solve for all (λ, κ) that close the bracket instead of checking one.
    #[arg(long)]
    pub solve: bool,
}
