use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Debug, Parser)]
#[command(name = "confmodel", version, about = "Exact checks for models of configuration spaces of points on manifolds")]
pub struct Cli {
    /// Emit the structured JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    /// Lift the default arity and size caps.
    #[arg(long, global = true)]
    pub no_caps: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone, Default)]
pub struct Source {
    /// Built-in algebra: point, sphere:N, cp:M, product:X,Y.
    #[arg(long, conflicts_with = "file")]
    pub builtin: Option<String>,
    /// Algebra file (JSON).
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Poincaré duality algebras.
    Pd {
        #[arg(value_enum)]
        action: PdAction,
        #[command(flatten)]
        source: Source,
    },
    /// The Lambrechts–Stanley model G_A(k).
    Ls {
        #[arg(value_enum)]
        action: LsAction,
        #[command(flatten)]
        source: Source,
        /// Number of points.
        #[arg(short, default_value_t = 2)]
        k: usize,
    },
    /// Graph complexes, truncated by vertex and edge counts.
    Graphs(GraphArgs),
    /// The framed model for S².
    Framed {
        #[arg(value_enum)]
        action: FramedAction,
        #[command(flatten)]
        source: Source,
        #[arg(short, default_value_t = 2)]
        k: usize,
    },
    /// Chevalley–Eilenberg complexes and the pairing with G_A(k).
    Ce {
        #[arg(value_enum)]
        action: CeAction,
        #[command(flatten)]
        source: Source,
        #[arg(short, default_value_t = 2)]
        k: usize,
        /// Built-in Lie algebra: abelian:N, affine, sl2.
        #[arg(long, conflicts_with = "lie_file")]
        lie: Option<String>,
        /// Lie algebra file (JSON).
        #[arg(long)]
        lie_file: Option<PathBuf>,
        /// Word-length cap for the truncated CE complex.
        #[arg(long, default_value_t = 4)]
        cap: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PdAction {
    Verify,
    Diagonal,
    Euler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LsAction {
    Betti,
    D2check,
    ComoduleCheck,
    S3check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphAction {
    D2,
    Chainmap,
    Audit,
    Export,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FramedAction {
    Betti,
    D2,
    Comodule,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CeAction {
    PairCheck,
    Homology,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[arg(value_enum)]
    pub action: GraphAction,
    #[command(flatten)]
    pub source: Source,
    /// Dimension; defaults to the dimension of the algebra.
    #[arg(long)]
    pub n: Option<i32>,
    /// graphs_n or graphs_A; defaults to graphs_A when an algebra is given.
    #[arg(long)]
    pub flavor: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub max_internal: u8,
    #[arg(long, default_value_t = 6)]
    pub max_edges: usize,
    /// Checks run for 0..=max-externals external vertices.
    #[arg(long, default_value_t = 3)]
    pub max_externals: u8,
    /// Export: the number of external vertices.
    #[arg(long, default_value_t = 2)]
    pub externals: u8,
    /// Audit: largest internal graph.
    #[arg(long, default_value_t = 6)]
    pub max_vertices: u8,
    /// Export: write the complex to this file instead of the report.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
