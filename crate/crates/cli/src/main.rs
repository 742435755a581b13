//! `idcodes` command-line tool.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(
    name = "idcodes",
    version,
    about = "Constant-weight identification codes: build, verify, bound"
)]
pub struct Cli {
    /// Fractional bits used for logarithms and rates.
    #[arg(long, global = true, default_value_t = 96)]
    pub precision_bits: u32,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Finite field inspection.
    Field {
        #[command(subcommand)]
        action: FieldCmd,
    },
    /// Build an inner constant-weight code and write it as JSON.
    Construct(ConstructArgs),
    /// Check a family file against its claimed parameters.
    Verify(VerifyArgs),
    /// Reed-Solomon encoding.
    Rs {
        #[command(subcommand)]
        action: RsCmd,
    },
    /// Parameters and metrics of a concatenated scheme.
    Params(SchemeArgs),
    /// Support of one identifier's codeword.
    Codeword(CodewordArgs),
    /// Size bounds, or the distance bound with --invert.
    Bound(BoundArgs),
    /// Rate and exponent metrics.
    Metrics(MetricsArgs),
    /// Monte-Carlo type-I/II error estimates for one identifier pair.
    Simulate(SimulateArgs),
    /// Rate/exponent sweep over outer-code dimensions.
    Sweep(SweepArgs),
}

#[derive(Subcommand, Debug)]
pub enum FieldCmd {
    Info {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        m: u32,
        /// Modulus coefficients, constant term first (e.g. 1,1,0,0,1).
        #[arg(long, value_delimiter = ',')]
        modulus: Option<Vec<u64>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum RsCmd {
    Encode {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, default_value = "standard")]
        variant: String,
        #[arg(long, value_delimiter = ',', required = true)]
        message: Vec<u64>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InnerScheme {
    Prime,
    ModifiedPrime,
    Construction2,
    Ppm,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub scheme: InnerScheme,
    /// Prime p (or q for ppm).
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub truncate: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Also report cyclic auto/cross-correlation.
    #[arg(long)]
    pub cyclic: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OuterScheme {
    C1,
    C2,
    PpmBench,
}

#[derive(Args, Debug, Clone)]
pub struct SchemeArgs {
    #[arg(long, value_enum)]
    pub scheme: OuterScheme,
    /// p for c1/c2, q for ppm-bench.
    #[arg(long)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub ko: u64,
    #[arg(long)]
    pub koo: u64,
    /// rs | ext | dext; defaults to rs, or ext for ppm-bench.
    #[arg(long)]
    pub variant: Option<String>,
    /// Shrink the c2 inner code to this many codewords.
    #[arg(long)]
    pub truncate: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CodewordArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    /// Identifier in [0, N), decimal.
    #[arg(long)]
    pub id: String,
}

#[derive(Args, Debug)]
#[allow(non_snake_case)]
pub struct BoundArgs {
    #[arg(long = "S")]
    pub S: u64,
    #[arg(long = "W")]
    pub W: u64,
    #[arg(long = "K")]
    pub K: Option<u64>,
    #[arg(long = "N")]
    pub N: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub ell_max: u64,
    /// Lower-bound the minimum distance for given (S, N, W).
    #[arg(long)]
    pub invert: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
#[allow(non_snake_case)]
pub struct MetricsArgs {
    #[arg(long, value_enum)]
    pub scheme: Option<OuterScheme>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    #[arg(long)]
    pub ko: Option<u64>,
    #[arg(long)]
    pub koo: Option<u64>,
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long)]
    pub truncate: Option<u64>,
    /// Direct parameters instead of a scheme: S, N as base^exp or integer, W, K.
    #[arg(long = "S")]
    pub S: Option<u64>,
    #[arg(long = "N")]
    pub N: Option<String>,
    #[arg(long = "W")]
    pub W: Option<u64>,
    #[arg(long = "K")]
    pub K: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long)]
    pub i: String,
    #[arg(long)]
    pub iprime: String,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Comma-separated subset of c1,c2,ppm-bench.
    #[arg(long, value_delimiter = ',', default_value = "c1,c2,ppm-bench")]
    pub schemes: Vec<String>,
    #[arg(long, default_value_t = 23)]
    pub c1_p: u64,
    #[arg(long, default_value_t = 5)]
    pub c2_p: u64,
    #[arg(long, default_value_t = 2)]
    pub c2_m: u32,
    #[arg(long)]
    pub c2_truncate: Option<u64>,
    #[arg(long, default_value_t = 23)]
    pub ppm_q: u64,
    #[arg(long, default_value = "rs")]
    pub variant: String,
    #[arg(long, value_delimiter = ',', default_value = "1,2,3,4,5")]
    pub ko: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "2,4,8,16,32,64")]
    pub koo: Vec<u64>,
    /// CSV output path; the manifest is written beside it.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = commands::run(&cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
