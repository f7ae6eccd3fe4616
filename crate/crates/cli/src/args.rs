//! Command-line surface and the serializable run configuration.
//!
//! Every flag set resolves into a [`RunConfig`] — defaults included — and
//! the executed computation depends only on that value. `--emit-config`
//! writes it as JSON; `--config` replays one, reproducing the original
//! output byte for byte. The same types derive both the `clap` parser and
//! the `serde` form so the two surfaces cannot drift apart.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use cfdim_core::constructions::{CoefFn, FillerPolicy, WindowPolicy, WindowSpec};
use cfdim_core::dimension::{Figure1Family, LogDigitGrowth, Subsequence, TypicalCylinder};
use cfdim_core::numerics::{format_rational, parse_rational, GrowthFunction, PsiSpec};
use cfdim_core::{Error, Result};

// ---------------------------------------------------------------------------
// Scalar argument types
// ---------------------------------------------------------------------------

/// Exact rational flag value: `3/5`, `0.55`, or `2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rat(pub BigRational);

impl FromStr for Rat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Rat)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_rational(&self.0))
    }
}

impl Serialize for Rat {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map(Rat).map_err(serde::de::Error::custom)
    }
}

/// A digit word flag value: comma-separated positive integers, `3,1,4`.
/// Digits may exceed machine range; they stay as decimal strings in JSON.
#[derive(Clone, Debug, PartialEq)]
pub struct WordArg(pub Vec<num_bigint::BigUint>);

impl FromStr for WordArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<num_bigint::BigUint>()
                    .map_err(|_| Error::Domain(format!("bad digit {part:?} in word")))
            })
            .collect::<Result<Vec<_>>>()?;
        // Delegate the >= 1 check to the word constructor.
        cfdim_core::cf::DigitWord::new(digits.clone())?;
        Ok(WordArg(digits))
    }
}

impl fmt::Display for WordArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl WordArg {
    pub fn to_word(&self) -> Result<cfdim_core::cf::DigitWord> {
        cfdim_core::cf::DigitWord::new(self.0.clone())
    }
}

impl Serialize for WordArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WordArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<String>::deserialize(d)?;
        let digits = parts
            .iter()
            .map(|p| {
                p.parse::<num_bigint::BigUint>()
                    .map_err(|_| serde::de::Error::custom(format!("bad digit {p:?} in word")))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        cfdim_core::cf::DigitWord::new(digits.clone()).map_err(serde::de::Error::custom)?;
        Ok(WordArg(digits))
    }
}

/// Inclusive rational grid `start:end:step`, e.g. `0.1:2.0:0.1`.
#[derive(Clone, Debug, PartialEq)]
pub struct GridArg {
    pub start: BigRational,
    pub end: BigRational,
    pub step: BigRational,
}

/// Guards against configs that would tabulate unboundedly many rows.
const GRID_LIMIT: usize = 100_000;

impl GridArg {
    /// The grid points `start, start+step, ...` up to and including `end`
    /// (exact rational stepping, so decimal grids land exactly on `end`).
    pub fn values(&self) -> Result<Vec<BigRational>> {
        let mut out = Vec::new();
        let mut v = self.start.clone();
        while v <= self.end {
            out.push(v.clone());
            if out.len() > GRID_LIMIT {
                return Err(Error::Domain(format!(
                    "grid {self} has more than {GRID_LIMIT} points"
                )));
            }
            v += &self.step;
        }
        Ok(out)
    }
}

impl FromStr for GridArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::Domain(format!(
                "grid {s:?} must be start:end:step"
            )));
        }
        let start = parse_rational(parts[0])?;
        let end = parse_rational(parts[1])?;
        let step = parse_rational(parts[2])?;
        if step <= BigRational::new(0.into(), 1.into()) {
            return Err(Error::Domain(format!("grid step must be positive in {s:?}")));
        }
        if end < start {
            return Err(Error::Domain(format!("grid end below start in {s:?}")));
        }
        Ok(GridArg { start, end, step })
    }
}

impl fmt::Display for GridArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            format_rational(&self.start),
            format_rational(&self.end),
            format_rational(&self.step)
        )
    }
}

impl Serialize for GridArg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GridArg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        GridArg::from_str(&text).map_err(serde::de::Error::custom)
    }
}

/// Window coefficient: `const:3/4`, `successive-diff`, `successive-diff-upper`,
/// `alpha-ramp:1`, or `const-plus-exp-neg:1/2`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CoefArg(pub CoefFn);

impl FromStr for CoefArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let coef = match s {
            "successive-diff" => CoefFn::SuccessiveDiff,
            "successive-diff-upper" => CoefFn::SuccessiveDiffUpper,
            other => {
                if let Some(v) = other.strip_prefix("const-plus-exp-neg:") {
                    CoefFn::ConstPlusExpNeg { base: parse_rational(v)? }
                } else if let Some(v) = other.strip_prefix("const:") {
                    CoefFn::Const { value: parse_rational(v)? }
                } else if let Some(v) = other.strip_prefix("alpha-ramp:") {
                    CoefFn::AlphaRamp { alpha: parse_rational(v)? }
                } else {
                    return Err(Error::Domain(format!(
                        "unknown coefficient {other:?} (const:<r>, successive-diff, \
                         successive-diff-upper, alpha-ramp:<r>, const-plus-exp-neg:<r>)"
                    )));
                }
            }
        };
        coef.validate()?;
        Ok(CoefArg(coef))
    }
}

impl fmt::Display for CoefArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            CoefFn::Const { value } => write!(f, "const:{}", format_rational(value)),
            CoefFn::SuccessiveDiff => write!(f, "successive-diff"),
            CoefFn::SuccessiveDiffUpper => write!(f, "successive-diff-upper"),
            CoefFn::AlphaRamp { alpha } => write!(f, "alpha-ramp:{}", format_rational(alpha)),
            CoefFn::ConstPlusExpNeg { base } => {
                write!(f, "const-plus-exp-neg:{}", format_rational(base))
            }
        }
    }
}

/// Cover subsequence: `power-gamma`, `square-over-l:<L>`, `largest-quotient`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubseqArg(pub Subsequence);

impl FromStr for SubseqArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "power-gamma" => Ok(SubseqArg(Subsequence::PowerGamma)),
            "largest-quotient" => Ok(SubseqArg(Subsequence::LargestQuotient)),
            other => {
                if let Some(v) = other.strip_prefix("square-over-l:") {
                    Ok(SubseqArg(Subsequence::SquareOverL { l: parse_rational(v)? }))
                } else {
                    Err(Error::Domain(format!(
                        "unknown subsequence {other:?} (power-gamma, square-over-l:<L>, \
                         largest-quotient)"
                    )))
                }
            }
        }
    }
}

impl fmt::Display for SubseqArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Subsequence::PowerGamma => write!(f, "power-gamma"),
            Subsequence::SquareOverL { l } => write!(f, "square-over-l:{}", format_rational(l)),
            Subsequence::LargestQuotient => write!(f, "largest-quotient"),
        }
    }
}

/// Digit-log growth law: `power:<gamma>`, `geometric:<gamma>`, `exponential`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GrowthLawArg(pub LogDigitGrowth);

impl FromStr for GrowthLawArg {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exponential" => Ok(GrowthLawArg(LogDigitGrowth::Exponential)),
            other => {
                if let Some(v) = other.strip_prefix("power:") {
                    Ok(GrowthLawArg(LogDigitGrowth::Power { gamma: parse_rational(v)? }))
                } else if let Some(v) = other.strip_prefix("geometric:") {
                    Ok(GrowthLawArg(LogDigitGrowth::Geometric { gamma: parse_rational(v)? }))
                } else {
                    Err(Error::Domain(format!(
                        "unknown growth law {other:?} (power:<g>, geometric:<g>, exponential)"
                    )))
                }
            }
        }
    }
}

impl fmt::Display for GrowthLawArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            LogDigitGrowth::Power { gamma } => write!(f, "power:{}", format_rational(gamma)),
            LogDigitGrowth::Geometric { gamma } => {
                write!(f, "geometric:{}", format_rational(gamma))
            }
            LogDigitGrowth::Exponential => write!(f, "exponential"),
        }
    }
}

// clap value-parser entry points for the custom scalar types.

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s)
}

pub fn parse_word(s: &str) -> Result<WordArg> {
    WordArg::from_str(s)
}

pub fn parse_grid(s: &str) -> Result<GridArg> {
    GridArg::from_str(s)
}

pub fn parse_coef(s: &str) -> Result<CoefArg> {
    CoefArg::from_str(s)
}

pub fn parse_subseq(s: &str) -> Result<SubseqArg> {
    SubseqArg::from_str(s)
}

pub fn parse_growth_law(s: &str) -> Result<GrowthLawArg> {
    GrowthLawArg::from_str(s)
}

pub fn parse_growth(s: &str) -> Result<GrowthFunction> {
    GrowthFunction::parse(s)
}

pub fn parse_psi(s: &str) -> Result<PsiSpec> {
    PsiSpec::parse(s)
}

// ---------------------------------------------------------------------------
// Closed-vocabulary flags
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FormatArg {
    Csv,
    Json,
}

/// Digit choice inside a window; `random` draws per index from `--seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PolicyArg {
    Min,
    Mid,
    Random,
}

impl PolicyArg {
    pub fn to_policy(self, seed: u64) -> WindowPolicy {
        match self {
            PolicyArg::Min => WindowPolicy::Min,
            PolicyArg::Mid => WindowPolicy::Mid,
            PolicyArg::Random => WindowPolicy::Random { seed },
        }
    }
}

/// Filler digits of the sparse-index construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FillerArg {
    Cycle,
    Random,
}

impl FillerArg {
    pub fn to_policy(self, seed: u64) -> FillerPolicy {
        match self {
            FillerArg::Cycle => FillerPolicy::Cycle,
            FillerArg::Random => FillerPolicy::Random { seed },
        }
    }
}

/// Which d-decaying system to instantiate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelArg {
    /// Affine branches with weights `i^-d / zeta(d)`; needs `--d`.
    Affine,
    /// The Gauss-map branches `x -> 1/(i+x)` (`d = 2` fixed).
    Gauss,
}

/// Normalizing cylinder for finite-depth estimates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TypicalArg {
    Midpoint,
    Sampled,
}

/// Growth family filter for the dimension table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyArg {
    ExpPower,
    Polynomial,
    ExpGeometric,
}

impl FamilyArg {
    pub fn from_figure1(family: Figure1Family) -> Self {
        match family {
            Figure1Family::ExpPower => FamilyArg::ExpPower,
            Figure1Family::Polynomial => FamilyArg::Polynomial,
            Figure1Family::ExpGeometric => FamilyArg::ExpGeometric,
        }
    }
}

// ---------------------------------------------------------------------------
// Shared parameter blocks
// ---------------------------------------------------------------------------

/// Constant-window set: digits in `(c1 e^(n^gamma), c2 e^(n^gamma))`.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AParams {
    /// Window exponent gamma in e^(n^gamma).
    #[arg(long, value_parser = parse_rat)]
    pub gamma: Rat,
    /// Lower window coefficient c1 (0 < c1 < c2).
    #[arg(long, value_parser = parse_rat)]
    pub c1: Rat,
    /// Upper window coefficient c2.
    #[arg(long, value_parser = parse_rat)]
    pub c2: Rat,
    /// First index the window constrains; earlier digits are 1.
    #[arg(long, default_value_t = 1)]
    pub start: u64,
    /// Digit choice inside each window.
    #[arg(long, value_enum, default_value_t = PolicyArg::Min)]
    pub policy: PolicyArg,
    /// Seed for the random policy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Variable-window set over an arbitrary coefficient pair.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BParams {
    /// Window exponent gamma in e^(n^gamma).
    #[arg(long, value_parser = parse_rat)]
    pub gamma: Rat,
    /// Lower coefficient function c1(n).
    #[arg(long, value_parser = parse_coef)]
    pub lower: CoefArg,
    /// Upper coefficient function c2(n).
    #[arg(long, value_parser = parse_coef)]
    pub upper: CoefArg,
    /// First index the window constrains; earlier digits are 1.
    #[arg(long, default_value_t = 1)]
    pub start: u64,
    /// Digit choice inside each window.
    #[arg(long, value_enum, default_value_t = PolicyArg::Min)]
    pub policy: PolicyArg,
    /// Seed for the random policy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl BParams {
    pub fn to_spec(&self) -> WindowSpec {
        WindowSpec {
            gamma: self.gamma.0.clone(),
            lower: self.lower.0.clone(),
            upper: self.upper.0.clone(),
            start: self.start,
        }
    }
}

/// Sparse-index set: prescribed large digits where phi first grows by
/// `1 + psi(k)`, bounded filler digits elsewhere.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmParams {
    /// Growth target phi (e.g. exp-sqrt-psi:invlog).
    #[arg(long, value_parser = parse_growth)]
    pub phi: GrowthFunction,
    /// Tolerance sequence psi (invlog or const:<r>).
    #[arg(long, value_parser = parse_psi, default_value = "invlog")]
    pub psi: PsiSpec,
    /// Upper bound M for filler digits.
    #[arg(long, default_value_t = 2)]
    pub filler_bound: u64,
    /// How to fill the unconstrained indices.
    #[arg(long, value_enum, default_value_t = FillerArg::Cycle)]
    pub filler: FillerArg,
    /// Seed for the random filler.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl EmParams {
    pub fn to_spec(&self) -> cfdim_core::constructions::EmSpec {
        cfdim_core::constructions::EmSpec {
            phi: self.phi.clone(),
            psi: self.psi.clone(),
            filler_bound: self.filler_bound,
            filler: self.filler.to_policy(self.seed),
        }
    }
}

/// Ramp-window set: digits in `(alpha(1 - 1/n) e^(n^gamma), alpha e^(n^gamma))`,
/// so the running maximum tracks `alpha e^(n^gamma)`.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FParams {
    /// Window exponent gamma in e^(n^gamma).
    #[arg(long, value_parser = parse_rat)]
    pub gamma: Rat,
    /// Limit ratio alpha of the running maximum.
    #[arg(long, value_parser = parse_rat)]
    pub alpha: Rat,
    /// First constrained index (at least 2; the ramp vanishes at 1).
    #[arg(long, default_value_t = 2)]
    pub start: u64,
    /// Digit choice inside each window.
    #[arg(long, value_enum, default_value_t = PolicyArg::Min)]
    pub policy: PolicyArg,
    /// Seed for the random policy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// One sample of the uniform measure on constant windows.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuParams {
    /// Window exponent gamma in e^(n^gamma).
    #[arg(long, value_parser = parse_rat)]
    pub gamma: Rat,
    /// Lower window coefficient c1 (0 < c1 < c2).
    #[arg(long, value_parser = parse_rat)]
    pub c1: Rat,
    /// Upper window coefficient c2.
    #[arg(long, value_parser = parse_rat)]
    pub c2: Rat,
    /// First index the window constrains; earlier digits are 1.
    #[arg(long, default_value_t = 1)]
    pub start: u64,
    /// Sample seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Ratio diagnostics shared by the `diagnose` variants.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagArgs {
    /// Growth target phi for S_n / phi(n).
    #[arg(long, value_parser = parse_growth)]
    pub phi: GrowthFunction,
    /// Optional exponent gamma for the largest-quotient ratio T_n / e^(n^gamma).
    #[arg(long, value_parser = parse_rat)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_gamma: Option<Rat>,
    /// Strictly increasing depths at which to evaluate the ratios.
    #[arg(long, value_delimiter = ',', required = true)]
    pub depths: Vec<u64>,
}

/// Diagnostics flags for the sparse-index set, whose phi is the
/// construction's own.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmDiagArgs {
    /// Optional exponent gamma for the largest-quotient ratio T_n / e^(n^gamma).
    #[arg(long, value_parser = parse_rat)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_gamma: Option<Rat>,
    /// Strictly increasing depths at which to evaluate the ratios.
    #[arg(long, value_delimiter = ',', required = true)]
    pub depths: Vec<u64>,
}

/// System selector shared by the `ifs` variants.
#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SysArgs {
    /// System model.
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Decay exponent d > 1 (affine model only).
    #[arg(long, value_parser = parse_rat)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Rat>,
    /// Working precision in bits (affine model only; default 192).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub precision: Option<u64>,
}

// ---------------------------------------------------------------------------
// Per-subcommand argument blocks
// ---------------------------------------------------------------------------

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpandArgs {
    /// Point of (0,1) to expand, as an exact rational (`2/5`, `0.55`).
    #[arg(long, value_parser = parse_rat)]
    pub x: Rat,
    /// Number of partial quotients to produce.
    #[arg(long)]
    pub depth: u64,
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CylinderArgs {
    /// Digit word, comma-separated (`3,1,4`).
    #[arg(long, value_parser = parse_word)]
    pub word: WordArg,
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaVerifyArgs {
    /// Grid mode: largest composition total m.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u64>,
    /// Grid mode: largest part count n.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_max: Option<u64>,
    /// Point mode: composition total m.
    #[arg(long, conflicts_with = "m_max")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    /// Point mode: part count n.
    #[arg(long, conflicts_with = "n_max")]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u64>,
    /// Hoelder exponents s, comma-separated.
    #[arg(
        long,
        value_parser = parse_rat,
        value_delimiter = ',',
        default_values = ["11/20", "13/20", "3/4", "17/20", "19/20"]
    )]
    pub s: Vec<Rat>,
    /// Decay exponent d: check the generalized bound with t = d*s
    /// instead of t = 2s.
    #[arg(long, value_parser = parse_rat)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Rat>,
    /// Working precision in bits for point-mode enclosures.
    #[arg(long, default_value_t = 128)]
    pub precision: u64,
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverSumArgs {
    /// Growth exponent gamma of the index ladder.
    #[arg(long, value_parser = parse_rat)]
    pub gamma: Rat,
    /// Window half-width parameter (0 < eps < (e-1)/(e+1)).
    #[arg(long, value_parser = parse_rat, default_value = "1/4")]
    pub epsilon: Rat,
    /// Hoelder exponent s in (1/2, 1).
    #[arg(long, value_parser = parse_rat)]
    pub s: Rat,
    /// Index ladder driving the cover.
    #[arg(long, value_parser = parse_subseq, default_value = "power-gamma")]
    pub subsequence: SubseqArg,
    /// Number of product terms to tabulate.
    #[arg(long, default_value_t = 200)]
    pub k_max: u64,
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveSlArgs {
    /// Slope parameters L, comma-separated.
    #[arg(long, value_parser = parse_rat, value_delimiter = ',', required = true)]
    pub l: Vec<Rat>,
    /// Bracket width target 2^-bits.
    #[arg(long, default_value_t = 30)]
    pub precision_bits: u32,
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileArgs {
    /// Digit-log growth law (power:<g>, geometric:<g>, exponential).
    #[arg(long, value_parser = parse_growth_law)]
    pub growth: GrowthLawArg,
    /// Decay exponent d > 1 of the system.
    #[arg(long, value_parser = parse_rat, default_value = "2")]
    pub d: Rat,
    /// Tabulate rho(n) for n = 1..=n_max.
    #[arg(long)]
    pub n_max: u64,
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionEstimateArgs {
    /// Window exponent gamma in e^(n^gamma).
    #[arg(long, value_parser = parse_rat)]
    pub gamma: Rat,
    /// Lower coefficient function c1(n).
    #[arg(long, value_parser = parse_coef)]
    pub lower: CoefArg,
    /// Upper coefficient function c2(n).
    #[arg(long, value_parser = parse_coef)]
    pub upper: CoefArg,
    /// First index the window constrains.
    #[arg(long, default_value_t = 1)]
    pub start: u64,
    /// Depths at which to evaluate the estimate, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub depths: Vec<u64>,
    /// Normalizing cylinder choice.
    #[arg(long, value_enum, default_value_t = TypicalArg::Midpoint)]
    pub typical: TypicalArg,
    /// Sample count for the sampled normalizer.
    #[arg(long, default_value_t = 8)]
    pub samples: u64,
    /// Seed for the sampled normalizer.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl DimensionEstimateArgs {
    pub fn to_spec(&self) -> WindowSpec {
        WindowSpec {
            gamma: self.gamma.0.clone(),
            lower: self.lower.0.clone(),
            upper: self.upper.0.clone(),
            start: self.start,
        }
    }

    pub fn to_typical(&self) -> TypicalCylinder {
        match self.typical {
            TypicalArg::Midpoint => TypicalCylinder::Midpoint,
            TypicalArg::Sampled => TypicalCylinder::SampledGeometricMean {
                samples: self.samples,
                seed: self.seed,
            },
        }
    }
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Figure1Args {
    /// Inclusive gamma grid start:end:step (e.g. 0.1:2.0:0.1).
    #[arg(long, value_parser = parse_grid)]
    pub gamma_grid: GridArg,
    /// Growth families to tabulate, comma-separated.
    #[arg(long, value_enum, value_delimiter = ',', default_values = ["exp-power"])]
    pub families: Vec<FamilyArg>,
}

#[derive(clap::Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KhintchineArgs {
    /// Number of sampled points.
    #[arg(long, default_value_t = 1000)]
    pub samples: u64,
    /// Expansion depths, comma-separated (one row per depth).
    #[arg(long, value_delimiter = ',', default_values = ["1000"])]
    pub depth: Vec<u64>,
    /// Sampling seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

// ---------------------------------------------------------------------------
// Subcommand trees
// ---------------------------------------------------------------------------

/// Digit-stream constructions.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "set", rename_all = "kebab-case")]
pub enum ConstructCmd {
    /// Constant-window set (digits near c * e^(n^gamma)).
    A {
        #[command(flatten)]
        #[serde(flatten)]
        params: AParams,
        /// Number of digits to emit.
        #[arg(long, default_value_t = 40)]
        count: u64,
    },
    /// Variable-window set over a coefficient pair.
    B {
        #[command(flatten)]
        #[serde(flatten)]
        params: BParams,
        /// Number of digits to emit.
        #[arg(long, default_value_t = 40)]
        count: u64,
        /// Also evaluate the window-admissibility trends up to this
        /// horizon (0 skips the check).
        #[arg(long, default_value_t = 0)]
        check_horizon: u64,
    },
    /// Sparse-index set with prescribed large digits.
    Em {
        #[command(flatten)]
        #[serde(flatten)]
        params: EmParams,
        /// Number of digits to emit.
        #[arg(long, default_value_t = 40)]
        count: u64,
    },
    /// Ramp-window set tracking the running maximum.
    F {
        #[command(flatten)]
        #[serde(flatten)]
        params: FParams,
        /// Number of digits to emit.
        #[arg(long, default_value_t = 40)]
        count: u64,
    },
    /// One sample of the uniform window measure.
    Mu {
        #[command(flatten)]
        #[serde(flatten)]
        params: MuParams,
        /// Number of digits to sample.
        #[arg(long, default_value_t = 40)]
        count: u64,
    },
}

/// Membership diagnostics `S_n/phi(n)` (and optionally `T_n/e^(n^gamma)`)
/// for a constructed stream.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "set", rename_all = "kebab-case")]
pub enum DiagnoseCmd {
    /// Constant-window set.
    A {
        #[command(flatten)]
        #[serde(flatten)]
        params: AParams,
        #[command(flatten)]
        #[serde(flatten)]
        diag: DiagArgs,
    },
    /// Variable-window set.
    B {
        #[command(flatten)]
        #[serde(flatten)]
        params: BParams,
        #[command(flatten)]
        #[serde(flatten)]
        diag: DiagArgs,
    },
    /// Sparse-index set (ratios against its own phi).
    Em {
        #[command(flatten)]
        #[serde(flatten)]
        params: EmParams,
        #[command(flatten)]
        #[serde(flatten)]
        diag: EmDiagArgs,
    },
    /// Ramp-window set.
    F {
        #[command(flatten)]
        #[serde(flatten)]
        params: FParams,
        #[command(flatten)]
        #[serde(flatten)]
        diag: DiagArgs,
    },
    /// Uniform window-measure sample.
    Mu {
        #[command(flatten)]
        #[serde(flatten)]
        params: MuParams,
        #[command(flatten)]
        #[serde(flatten)]
        diag: DiagArgs,
    },
}

/// d-decaying Gauss-like systems.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum IfsCmd {
    /// Build a system and certify its branch conditions.
    Build {
        #[command(flatten)]
        #[serde(flatten)]
        sys: SysArgs,
        /// Check branches i <= max_branch.
        #[arg(long, default_value_t = 1000)]
        max_branch: u64,
        /// Decay-envelope offsets epsilon, comma-separated.
        #[arg(long, value_parser = parse_rat, value_delimiter = ',', default_values = ["1/2"])]
        epsilon: Vec<Rat>,
    },
    /// Project a digit word to its point.
    Project {
        #[command(flatten)]
        #[serde(flatten)]
        sys: SysArgs,
        /// Digit word, comma-separated.
        #[arg(long, value_parser = parse_word)]
        word: WordArg,
    },
    /// Expand a point into system digits.
    Expand {
        #[command(flatten)]
        #[serde(flatten)]
        sys: SysArgs,
        /// Exact rational point of (0,1].
        #[arg(long, value_parser = parse_rat)]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x: Option<Rat>,
        /// Expand the exact projection of this word instead of --x.
        #[arg(long, value_parser = parse_word, conflicts_with = "x")]
        #[serde(default, skip_serializing_if = "Option::is_none")]
        word: Option<WordArg>,
        /// Number of digits to produce.
        #[arg(long)]
        depth: u64,
    },
    /// Dimension prediction for a digit-growth law, with profile.
    Predict {
        #[command(flatten)]
        #[serde(flatten)]
        sys: SysArgs,
        /// Growth function phi (exp-power:<g> or exp-geom:<g>).
        #[arg(long, value_parser = parse_growth)]
        phi: GrowthFunction,
        /// Profile length.
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
    },
}

/// The full subcommand set.
#[derive(Subcommand, Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Continued-fraction expansion and digit statistics of a point.
    Expand(ExpandArgs),
    /// Exact cylinder interval and convergents of a digit word.
    Cylinder(CylinderArgs),
    /// Composition-sum bound: verify a grid or evaluate one point.
    LemmaVerify(LemmaVerifyArgs),
    /// Digit streams for the constructed sets.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Membership ratios of a constructed stream at chosen depths.
    #[command(subcommand)]
    Diagnose(DiagnoseCmd),
    /// Cover-product tabulation with a certified trend verdict.
    CoverSum(CoverSumArgs),
    /// Certified root s_L of the pressure-type equation.
    SolveSl(SolveSlArgs),
    /// Local dimension profile rho(n).
    Profile(ProfileArgs),
    /// Finite-depth count-over-length dimension estimates.
    DimensionEstimate(DimensionEstimateArgs),
    /// Dimension-vs-gamma table at d = 2.
    Figure1(Figure1Args),
    /// d-decaying Gauss-like systems.
    #[command(subcommand)]
    Ifs(IfsCmd),
    /// Monte Carlo distribution of S_n / (n ln n).
    Khintchine(KhintchineArgs),
}

impl Command {
    /// Subcommand path as typed on the command line.
    pub fn title(&self) -> String {
        match self {
            Command::Expand(_) => "expand".into(),
            Command::Cylinder(_) => "cylinder".into(),
            Command::LemmaVerify(_) => "lemma-verify".into(),
            Command::Construct(c) => format!("construct {}", construct_variant(c)),
            Command::Diagnose(c) => format!("diagnose {}", diagnose_variant(c)),
            Command::CoverSum(_) => "cover-sum".into(),
            Command::SolveSl(_) => "solve-sl".into(),
            Command::Profile(_) => "profile".into(),
            Command::DimensionEstimate(_) => "dimension-estimate".into(),
            Command::Figure1(_) => "figure1".into(),
            Command::Ifs(c) => format!("ifs {}", ifs_variant(c)),
            Command::Khintchine(_) => "khintchine".into(),
        }
    }
}

fn construct_variant(c: &ConstructCmd) -> &'static str {
    match c {
        ConstructCmd::A { .. } => "a",
        ConstructCmd::B { .. } => "b",
        ConstructCmd::Em { .. } => "em",
        ConstructCmd::F { .. } => "f",
        ConstructCmd::Mu { .. } => "mu",
    }
}

fn diagnose_variant(c: &DiagnoseCmd) -> &'static str {
    match c {
        DiagnoseCmd::A { .. } => "a",
        DiagnoseCmd::B { .. } => "b",
        DiagnoseCmd::Em { .. } => "em",
        DiagnoseCmd::F { .. } => "f",
        DiagnoseCmd::Mu { .. } => "mu",
    }
}

fn ifs_variant(c: &IfsCmd) -> &'static str {
    match c {
        IfsCmd::Build { .. } => "build",
        IfsCmd::Project { .. } => "project",
        IfsCmd::Expand { .. } => "expand",
        IfsCmd::Predict { .. } => "predict",
    }
}

// ---------------------------------------------------------------------------
// Top level
// ---------------------------------------------------------------------------

/// Continued-fraction digit statistics and dimension estimation.
#[derive(Parser, Clone, Debug)]
#[command(
    name = "cfdim",
    version,
    about = "Continued-fraction digit statistics and dimension estimation",
    subcommand_negates_reqs = true
)]
pub struct Cli {
    /// Replay a previously emitted run configuration (JSON).
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write the resolved run configuration (JSON) to this path.
    #[arg(long, global = true, value_name = "FILE")]
    pub emit_config: Option<PathBuf>,
    /// Output format (default csv).
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    /// Output path (stdout if omitted).
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

/// Everything that determines a run's output. Re-running an emitted config
/// reproduces the output byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub format: FormatArg,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

/// Structural cross-flag validation, applied to flag-built and file-loaded
/// configs alike. Value-domain violations (e.g. `gamma <= 0`) are left to
/// the computation layer, which reports them with exit status 3.
pub fn validate(config: &RunConfig) -> std::result::Result<(), String> {
    match &config.command {
        Command::LemmaVerify(args) => {
            let grid = args.m_max.is_some() || args.n_max.is_some();
            let point = args.m.is_some() || args.n.is_some();
            if grid && point {
                return Err("lemma-verify takes either --m-max/--n-max or --m/--n, not both".into());
            }
            if grid && (args.m_max.is_none() || args.n_max.is_none()) {
                return Err("lemma-verify grid mode needs both --m-max and --n-max".into());
            }
            if point && (args.m.is_none() || args.n.is_none()) {
                return Err("lemma-verify point mode needs both --m and --n".into());
            }
            if !grid && !point {
                return Err(
                    "lemma-verify needs --m-max/--n-max (grid) or --m/--n (one point)".into(),
                );
            }
            if args.s.is_empty() {
                return Err("lemma-verify needs at least one --s value".into());
            }
        }
        Command::SolveSl(args) => {
            if args.l.is_empty() {
                return Err("solve-sl needs at least one --l value".into());
            }
        }
        Command::Khintchine(args) => {
            if args.depth.is_empty() {
                return Err("khintchine needs at least one --depth value".into());
            }
        }
        Command::Figure1(args) => {
            if args.families.is_empty() {
                return Err("figure1 needs at least one family".into());
            }
        }
        Command::Ifs(cmd) => {
            let sys = match cmd {
                IfsCmd::Build { sys, .. }
                | IfsCmd::Project { sys, .. }
                | IfsCmd::Expand { sys, .. }
                | IfsCmd::Predict { sys, .. } => sys,
            };
            match sys.model {
                ModelArg::Affine => {
                    if sys.d.is_none() {
                        return Err("--model affine needs --d".into());
                    }
                }
                ModelArg::Gauss => {
                    if sys.d.is_some() || sys.precision.is_some() {
                        return Err("--model gauss fixes d = 2; drop --d/--precision".into());
                    }
                }
            }
            if let IfsCmd::Build { epsilon, .. } = cmd {
                if epsilon.is_empty() {
                    return Err("ifs build needs at least one --epsilon value".into());
                }
            }
            if let IfsCmd::Expand { x, word, .. } = cmd {
                if x.is_some() == word.is_some() {
                    return Err("ifs expand takes exactly one of --x or --word".into());
                }
            }
        }
        _ => {}
    }
    Ok(())
}
