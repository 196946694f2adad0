//! Command line grammar.

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "tcrcalc",
    version,
    about = "Exact homotopy group computations for real topological cyclic homology"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Additive group of the truncated Witt vectors W_n(A;p).
    Witt(WittArgs),
    /// Bredon homotopy of Σ^{kρ}HM for C₂-Mackey functors.
    Bredon(BredonArgs),
    /// Geometric fixed points of TCR.
    #[command(subcommand)]
    Tcr(TcrCommand),
    /// Geometric fixed points of the TRR tower of a perfect field of characteristic 2.
    #[command(subcommand)]
    Trr(TrrCommand),
    /// Whether μ: A^{Z/2} ⊗_N A^{Z/2} → A^{Z/2} is an isomorphism.
    Mu(RingArg),
    /// π₀ of TRR as a Green functor, and the Mittag-Leffler check.
    #[command(subcommand)]
    Green(GreenCommand),
    /// Components of the bar construction of a discrete group with anti-involution.
    Bar(BarArgs),
    /// Run the built-in fixture suite.
    Fixtures(FixtureArgs),
}

#[derive(Args, Debug)]
pub struct RingArg {
    /// Ring spec, e.g. `GF(2,x^2+x+1) with galois`.
    #[arg(long)]
    pub ring: String,
}

#[derive(Args, Debug)]
pub struct WindowArg {
    /// Inclusive degree window `lo:hi`.
    #[arg(long, allow_hyphen_values = true, default_value = "-2:8")]
    pub window: String,
}

#[derive(Args, Debug)]
pub struct WittArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub prime: u64,
    /// Witt length n.
    #[arg(long)]
    pub level: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MackeyKind {
    /// Constant Mackey functor on the additive group of `--ring`.
    Constant,
    /// Fixed point functor of ℤ⊕ℤ/2 with w(a,x) = (a,[a]+x).
    NormPair,
    /// Cofibre of the norm map into constant ℤ.
    Cofiber,
}

#[derive(Args, Debug)]
pub struct BredonArgs {
    #[arg(long, value_enum)]
    pub mackey: MackeyKind,
    /// Even weight k of S^{kρ}.
    #[arg(long)]
    pub weight: i64,
    #[arg(long, default_value = "Z")]
    pub ring: String,
}

#[derive(Subcommand, Debug)]
pub enum TcrCommand {
    /// TCR(A;p)^{φZ/2}, dispatched on the ring and the prime.
    Phi {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 2)]
        prime: u64,
        #[command(flatten)]
        window: WindowArg,
    },
    /// TCR of a perfect field at an odd prime, truncated at depth N.
    OddField {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[command(flatten)]
        window: WindowArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum TrrCommand {
    /// Level l of the tower, checked against the Mayer-Vietoris oracle.
    Tower {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        level: usize,
        #[command(flatten)]
        window: WindowArg,
    },
    /// Limit along R with the induced Frobenius.
    Limit {
        #[arg(long)]
        ring: String,
        #[command(flatten)]
        window: WindowArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum GreenCommand {
    /// The Green functor W_{n+1}(A;2) over W_{n+1}(A^{Z/2};2).
    Pi0 {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        level: usize,
    },
    /// Whether R: W_{n+1}(A^{Z/2})/tr → W_n(A^{Z/2})/tr is an isomorphism for n ≤ depth.
    Ml {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
}

#[derive(Args, Debug)]
pub struct BarArgs {
    /// Group spec, e.g. `C2 with inv`, `Z`, `ZxZ`, `S3 with inv`.
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug)]
pub struct FixtureArgs {
    /// Run only the fixture with this id.
    #[arg(long)]
    pub fixture: Option<String>,
    /// Read fixtures from a file instead of the built-in suite.
    #[arg(long)]
    pub file: Option<String>,
}
