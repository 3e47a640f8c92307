use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "tmcf", version, about = "Generalized Thue–Morse sequences and their continued fractions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the first terms of TM_m.
    Gen(GenArgs),
    /// Run every verification suite and exit non-zero on the first failure.
    VerifyAll(VerifyArgs),
    /// Convergents and certified decimal digits of [0; f(t_0), f(t_1), …].
    Cf(CfArgs),
    /// Subword complexity profile and the ratio p(n)/n.
    Complexity(ComplexityArgs),
    /// Search for an eventual period x_{a+n} = x_{a+n+b}.
    Period(PeriodArgs),
    /// Palindromic prefixes.
    Palindrome(PrefixArgs),
    /// Pattern occurrences and the predicted positions of 011.
    Patterns(PatternArgs),
    /// Preimage coverage of the factor map behind the complexity bound.
    Surjection(SurjectionArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    JsonLines,
    Csv,
    Plain,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructionArg {
    DigitSum,
    Morphic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RoundingArg {
    Truncate,
    HalfEven,
}

/// Flags shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Modulus m ≥ 2.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    pub m: u32,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub run: RunConfig,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    pub len: u64,
    #[arg(long, value_enum, default_value_t = ConstructionArg::DigitSum)]
    pub construction: ConstructionArg,
    /// Also emit partial quotients under this map (`symbol:value,…`).
    #[arg(long)]
    pub map: Option<String>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub run: RunConfig,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(16..))]
    pub len: u64,
    #[arg(long, default_value_t = 1000)]
    pub n_max: usize,
    #[arg(long, default_value_t = 100)]
    pub a_max: usize,
    #[arg(long, default_value_t = 1000)]
    pub b_max: usize,
    #[arg(long, default_value_t = 1000)]
    pub convergents: usize,
    /// Flip the term at this index before checking.
    #[arg(long, hide = true)]
    pub inject_fault: Option<usize>,
}

#[derive(Args, Debug)]
pub struct CfArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Alphabet map `symbol:value,…`; unlisted symbols map to symbol + 1.
    #[arg(long, default_value = "")]
    pub map: String,
    #[arg(long)]
    pub digits: Option<usize>,
    #[arg(long)]
    pub convergents: Option<usize>,
    #[arg(long, value_enum, default_value_t = RoundingArg::Truncate)]
    pub rounding: RoundingArg,
}

#[derive(Args, Debug)]
pub struct ComplexityArgs {
    #[command(flatten)]
    pub run: RunConfig,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub len: u64,
    #[arg(long, default_value_t = 100)]
    pub n_max: usize,
}

#[derive(Args, Debug)]
pub struct PeriodArgs {
    #[command(flatten)]
    pub run: RunConfig,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub len: u64,
    #[arg(long, default_value_t = 100)]
    pub a_max: usize,
    #[arg(long, default_value_t = 1000)]
    pub b_max: usize,
}

#[derive(Args, Debug)]
pub struct PrefixArgs {
    #[command(flatten)]
    pub run: RunConfig,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub len: u64,
}

#[derive(Args, Debug)]
pub struct PatternArgs {
    #[command(flatten)]
    pub run: RunConfig,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub len: u64,
    /// Comma-separated symbols.
    #[arg(long, default_value = "0,1,1")]
    pub pattern: String,
    /// Largest k for the predicted 011 positions; defaults to m + 4.
    #[arg(long)]
    pub k_max: Option<u32>,
}

#[derive(Args, Debug)]
pub struct SurjectionArgs {
    #[command(flatten)]
    pub run: RunConfig,
    /// Factor length; r is the least exponent with n < m^r.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    /// Check a random sample of this many factors instead of all.
    #[arg(long)]
    pub sample: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}
