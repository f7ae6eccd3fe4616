//! Digit-stream constructions: points whose partial quotients are confined
//! to prescribed windows `(c1(n) e^{n^gamma}, c2(n) e^{n^gamma})`, the
//! sparse-index construction with prescribed large digits at indices `n_k`,
//! a uniform measure sampler over window digits, and membership diagnostics
//! for the target ratios `S_n / phi(n)` and `T_n / e^{n^gamma}`.
//!
//! Everything a stream produces is certified: window endpoints are located
//! by certified floors, index thresholds by certified comparisons, and the
//! exact-rational path is used whenever the growth function admits one (so
//! true threshold equalities resolve instead of stalling escalation).

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::RngCore;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cf::DigitWord;
use crate::error::{Error, Result};
use crate::numerics::{
    certified_floor_with, pow_rational, rational_string, BigReal, GrowthFunction, PsiSpec,
    MAX_PRECISION,
};

/// Domain-separation salts for the per-index ChaCha streams, so a window
/// draw and a filler draw with the same (seed, index) never correlate.
const SALT_WINDOW: u64 = 0;
const SALT_FILLER: u64 = 1;

/// Scan limit for `n_zero`: the width `(c2-c1) e^{n^gamma}` grows at least
/// like `e^{n^gamma}`, so any remotely sane parameters cross one long before
/// this.
const N_ZERO_SCAN_LIMIT: u64 = 1_000_000;

// ---------------------------------------------------------------------------
// Coefficient functions and window specifications
// ---------------------------------------------------------------------------

/// Coefficient function `n -> c(n)` bounding digit windows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoefFn {
    /// Constant positive value.
    Const {
        #[serde(with = "rational_string")]
        value: BigRational,
    },
    /// `(e^{n^gamma} - e^{(n-1)^gamma}) e^{-n^gamma}`: the relative gap
    /// between successive exponentials, so that consecutive window floors
    /// nearly telescope.
    SuccessiveDiff,
    /// `(n+1)/n` times [`CoefFn::SuccessiveDiff`].
    SuccessiveDiffUpper,
    /// `alpha (1 - 1/n)`: ramps up to `alpha`; vanishes at `n = 1`.
    AlphaRamp {
        #[serde(with = "rational_string")]
        alpha: BigRational,
    },
    /// `base + e^{-n}`: an upper coefficient whose gap to a constant lower
    /// coefficient collapses exponentially fast.
    ConstPlusExpNeg {
        #[serde(with = "rational_string")]
        base: BigRational,
    },
}

impl CoefFn {
    /// Structural parameter checks (positivity of constants). Pointwise
    /// positivity and ordering of a coefficient pair are enforced where the
    /// windows are actually computed.
    pub fn validate(&self) -> Result<()> {
        match self {
            CoefFn::Const { value } if !value.is_positive() => Err(Error::Domain(format!(
                "constant coefficient must be positive, got {value}"
            ))),
            CoefFn::AlphaRamp { alpha } if !alpha.is_positive() => Err(Error::Domain(format!(
                "ramp limit must be positive, got {alpha}"
            ))),
            CoefFn::ConstPlusExpNeg { base } if base.is_negative() => Err(Error::Domain(
                format!("coefficient base must be nonnegative, got {base}"),
            )),
            _ => Ok(()),
        }
    }

    /// Certified value of `c(n)`; `gamma` feeds the exponential variants.
    pub fn eval(&self, n: u64, gamma: &BigRational, prec: u64) -> Result<BigReal> {
        if n == 0 {
            return Err(Error::Domain("coefficient functions start at n = 1".into()));
        }
        match self {
            CoefFn::Const { value } => Ok(BigReal::from_rational(value, prec)),
            CoefFn::SuccessiveDiff => successive_diff(n, gamma, prec),
            CoefFn::SuccessiveDiffUpper => {
                let scale = BigRational::new(BigInt::from(n) + 1, BigInt::from(n));
                Ok(successive_diff(n, gamma, prec)?.mul(&BigReal::from_rational(&scale, prec)))
            }
            CoefFn::AlphaRamp { alpha } => {
                let ramp = BigRational::new(BigInt::from(n) - 1, BigInt::from(n));
                Ok(BigReal::from_rational(&(alpha * ramp), prec))
            }
            CoefFn::ConstPlusExpNeg { base } => {
                let decay = BigReal::from_i64(-(n as i64), prec).exp();
                Ok(BigReal::from_rational(base, prec).add(&decay))
            }
        }
    }

    /// Exact rational value where one exists (the purely rational variants).
    pub fn eval_rational(&self, n: u64) -> Option<BigRational> {
        if n == 0 {
            return None;
        }
        match self {
            CoefFn::Const { value } => Some(value.clone()),
            CoefFn::AlphaRamp { alpha } => {
                Some(alpha * BigRational::new(BigInt::from(n) - 1, BigInt::from(n)))
            }
            _ => None,
        }
    }
}

/// `(e^{n^g} - e^{(n-1)^g}) e^{-n^g} = 1 - e^{(n-1)^g - n^g}`. At `n = 1`
/// the previous exponent is `0^g = 0`, giving `1 - e^{-1}` for every `g`.
fn successive_diff(n: u64, gamma: &BigRational, prec: u64) -> Result<BigReal> {
    let cur = pow_rational(&BigReal::from_u64(n, prec), gamma, prec)?;
    let prev = if n == 1 {
        BigReal::zero(prec)
    } else {
        pow_rational(&BigReal::from_u64(n - 1, prec), gamma, prec)?
    };
    Ok(BigReal::one(prec).sub(&prev.sub(&cur).exp()))
}

/// Digit-window specification: admissible digits at index `n >= start` are
/// the integers strictly inside `(c1(n) e^{n^gamma}, c2(n) e^{n^gamma})`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowSpec {
    #[serde(with = "rational_string")]
    pub gamma: BigRational,
    pub lower: CoefFn,
    pub upper: CoefFn,
    pub start: u64,
}

impl WindowSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.gamma.is_positive() {
            return Err(Error::Domain(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        if self.start == 0 {
            return Err(Error::Domain("window start must be at least 1".into()));
        }
        self.lower.validate()?;
        self.upper.validate()
    }
}

/// The admissible digits at one index: every integer in `lo..=hi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DigitWindow {
    pub index: u64,
    pub lo: BigUint,
    pub hi: BigUint,
}

impl DigitWindow {
    /// Number of admissible digits.
    pub fn count(&self) -> BigUint {
        &self.hi - &self.lo + 1u32
    }

    pub fn contains(&self, digit: &BigUint) -> bool {
        &self.lo <= digit && digit <= &self.hi
    }
}

/// Working-precision hint: `e^{n^gamma}` occupies about `n^gamma log2(e)`
/// bits before the point, and a certified floor must resolve all of them.
fn exp_power_bits_hint(gamma: &BigRational, n: u64) -> u64 {
    let g = gamma.to_f64().unwrap_or(1.0);
    let bits = (n as f64).powf(g) * std::f64::consts::LOG2_E;
    if bits.is_finite() {
        bits.min(1e15) as u64
    } else {
        u64::MAX / 4
    }
}

fn exp_power(gamma: &BigRational, n: u64, prec: u64) -> Result<BigReal> {
    GrowthFunction::ExpPower {
        gamma: gamma.clone(),
    }
    .eval(n, prec)
}

/// The exact set of admissible digits at index `n`: integers strictly
/// between the window endpoints, located by certified floors. Endpoints in
/// the provided coefficient families are irrational (Lindemann-Weierstrass:
/// no rational combination of `e^{n^gamma}` terms hits an integer), so the
/// floors always terminate.
pub fn digit_window(spec: &WindowSpec, n: u64) -> Result<DigitWindow> {
    spec.validate()?;
    if n < spec.start {
        return Err(Error::Domain(format!(
            "index {n} below window start {}",
            spec.start
        )));
    }
    let start_prec = 96 + exp_power_bits_hint(&spec.gamma, n);
    // Smallest integer strictly above L is floor(L) + 1; largest strictly
    // below U is -floor(-U) - 1 (correct even if U were an integer).
    let lo_floor = certified_floor_with(start_prec, |w| {
        Ok(spec.lower.eval(n, &spec.gamma, w)?.mul(&exp_power(&spec.gamma, n, w)?))
    })?;
    let neg_hi_floor = certified_floor_with(start_prec, |w| {
        Ok(spec
            .upper
            .eval(n, &spec.gamma, w)?
            .mul(&exp_power(&spec.gamma, n, w)?)
            .neg())
    })?;
    let lo = (&lo_floor + BigInt::one()).max(BigInt::one());
    let hi = -neg_hi_floor - BigInt::one();
    if lo > hi {
        return Err(Error::EmptyWindow { index: n });
    }
    Ok(DigitWindow {
        index: n,
        lo: lo.to_biguint().expect("positive by clamp"),
        hi: hi.to_biguint().expect("at least lo"),
    })
}

/// Certified comparison of `eval(prec)` against the rational `q`, escalating
/// until the enclosure separates from `q`.
fn certified_cmp_rational(
    start: u64,
    q: &BigRational,
    mut eval: impl FnMut(u64) -> Result<BigReal>,
) -> Result<Ordering> {
    let mut w = start.max(32);
    loop {
        if let Some(ord) = eval(w)?.cmp_rational(q) {
            return Ok(ord);
        }
        if w >= MAX_PRECISION {
            return Err(Error::PrecisionExhausted(format!(
                "value indistinguishable from {q} at {w} bits"
            )));
        }
        w = (w * 2).min(MAX_PRECISION);
    }
}

/// Smallest `n >= 1` with `(c2 - c1) e^{n^gamma} > 1`: from there on, every
/// constant-coefficient window has width above one and hence contains a
/// digit (an open interval longer than one always contains an integer, and
/// the width is increasing in `n`).
pub fn n_zero(gamma: &BigRational, c1: &BigRational, c2: &BigRational) -> Result<u64> {
    if !gamma.is_positive() {
        return Err(Error::Domain(format!("gamma must be positive, got {gamma}")));
    }
    if !c1.is_positive() || c2 <= c1 {
        return Err(Error::Domain(format!(
            "need 0 < c1 < c2, got c1 = {c1}, c2 = {c2}"
        )));
    }
    let diff = c2 - c1;
    let one = BigRational::one();
    for n in 1..=N_ZERO_SCAN_LIMIT {
        let start = 64 + exp_power_bits_hint(gamma, n);
        let ord = certified_cmp_rational(start, &one, |w| {
            Ok(exp_power(gamma, n, w)?.mul(&BigReal::from_rational(&diff, w)))
        })?;
        if ord == Ordering::Greater {
            return Ok(n);
        }
    }
    Err(Error::NoRoot(format!(
        "no window of width above one up to n = {N_ZERO_SCAN_LIMIT}"
    )))
}

/// All indices in `start..=max_n` whose window width `(c2(n)-c1(n)) e^{n^gamma}`
/// is certified at most one. Useful for locating the threshold index past
/// which windows of a non-constant specification stay wide.
pub fn narrow_indices(spec: &WindowSpec, max_n: u64) -> Result<Vec<u64>> {
    spec.validate()?;
    let one = BigRational::one();
    let mut narrow = Vec::new();
    for n in spec.start..=max_n {
        let start = 64 + exp_power_bits_hint(&spec.gamma, n);
        let ord = certified_cmp_rational(start, &one, |w| {
            let width = spec
                .upper
                .eval(n, &spec.gamma, w)?
                .sub(&spec.lower.eval(n, &spec.gamma, w)?);
            Ok(width.mul(&exp_power(&spec.gamma, n, w)?))
        })?;
        if ord != Ordering::Greater {
            narrow.push(n);
        }
    }
    Ok(narrow)
}

// ---------------------------------------------------------------------------
// Trend report for the window admissibility conditions
// ---------------------------------------------------------------------------

/// One evaluated trend sequence with its settledness heuristic.
#[derive(Debug, Clone, Serialize)]
pub struct TrendSeries {
    /// `(n, value)` at each checkpoint.
    pub values: Vec<(u64, f64)>,
    /// Signed change from the middle checkpoint to the last.
    pub drift: f64,
    pub last: f64,
    pub passes: bool,
}

impl TrendSeries {
    fn new(values: Vec<(u64, f64)>, passes: impl Fn(f64, f64) -> bool) -> Self {
        let last = values.last().map(|&(_, v)| v).unwrap_or(0.0);
        let mid = values[values.len() / 2].1;
        let drift = last - mid;
        let passes = passes(last, drift);
        TrendSeries {
            values,
            drift,
            last,
            passes,
        }
    }
}

/// Numerical evidence for the three conditions under which windowed
/// constructions carry full lower-bound dimension: the relative window gap
/// decays subexponentially, and both coefficients are polynomially bounded
/// away from zero and infinity. Heuristic and report-only: checkpoints are
/// geometric, and "passes" means the sequence has visibly settled.
#[derive(Debug, Clone, Serialize)]
pub struct WindowTrendReport {
    pub checkpoints: Vec<u64>,
    /// `ln(c2(n) - c1(n)) / n^gamma`, which must tend to zero.
    pub diff_decay: TrendSeries,
    /// `ln c1(n) / ln n`, which must stay bounded below.
    pub lower_log_ratio: TrendSeries,
    /// `ln c2(n) / ln n`, which must stay bounded above.
    pub upper_log_ratio: TrendSeries,
    pub all_pass: bool,
}

/// Settledness slack for the trend heuristics, in trend units.
const TREND_DRIFT_TOL: f64 = 0.5;
/// How close to zero the gap-decay trend must end up.
const TREND_ZERO_TOL: f64 = 0.25;

/// `ln(value) / scale` with `value` certified positive and evaluated to at
/// least 20 relative bits before taking the logarithm.
fn certified_log_ratio(
    start: u64,
    mut value: impl FnMut(u64) -> Result<BigReal>,
    mut scale: impl FnMut(u64) -> Result<BigReal>,
) -> Result<f64> {
    let mut w = start.max(64);
    loop {
        let v = value(w)?;
        let settled = v.is_positive_certain() == Some(true)
            && v.radius().cmp_val(&v.mag_lower().mul_pow2(-20)) != Ordering::Greater;
        if settled {
            return Ok(v.ln()?.div(&scale(w)?)?.to_f64());
        }
        if v.is_positive_certain() == Some(false) {
            return Err(Error::Domain(
                "trend value is not positive; coefficients out of order".into(),
            ));
        }
        if w >= MAX_PRECISION {
            return Err(Error::PrecisionExhausted(format!(
                "trend value sign or width unresolved at {w} bits"
            )));
        }
        w = (w * 2).min(MAX_PRECISION);
    }
}

/// Evaluate the three admissibility trends at geometric checkpoints up to
/// `horizon` (which must be at least 10 and at least the window start).
pub fn check_b_assumptions(spec: &WindowSpec, horizon: u64) -> Result<WindowTrendReport> {
    spec.validate()?;
    if horizon < 10 {
        return Err(Error::Domain(format!("horizon must be at least 10, got {horizon}")));
    }
    let first = spec.start.max(2);
    if horizon < first {
        return Err(Error::Domain(format!(
            "horizon {horizon} below first usable index {first}"
        )));
    }
    let mut checkpoints = Vec::new();
    let mut n = first;
    while n < horizon {
        checkpoints.push(n);
        n = n.saturating_mul(2);
    }
    checkpoints.push(horizon);

    let mut diff = Vec::new();
    let mut lower = Vec::new();
    let mut upper = Vec::new();
    for &n in &checkpoints {
        let g = &spec.gamma;
        diff.push((
            n,
            certified_log_ratio(
                128,
                |w| Ok(spec.upper.eval(n, g, w)?.sub(&spec.lower.eval(n, g, w)?)),
                |w| pow_rational(&BigReal::from_u64(n, w), g, w),
            )?,
        ));
        lower.push((
            n,
            certified_log_ratio(
                128,
                |w| spec.lower.eval(n, g, w),
                |w| BigReal::from_u64(n, w).ln(),
            )?,
        ));
        upper.push((
            n,
            certified_log_ratio(
                128,
                |w| spec.upper.eval(n, g, w),
                |w| BigReal::from_u64(n, w).ln(),
            )?,
        ));
    }
    let diff_decay = TrendSeries::new(diff, |last, drift| {
        drift.abs() <= TREND_DRIFT_TOL && last.abs() <= TREND_ZERO_TOL
    });
    let lower_log_ratio = TrendSeries::new(lower, |_, drift| drift >= -TREND_DRIFT_TOL);
    let upper_log_ratio = TrendSeries::new(upper, |_, drift| drift <= TREND_DRIFT_TOL);
    let all_pass = diff_decay.passes && lower_log_ratio.passes && upper_log_ratio.passes;
    Ok(WindowTrendReport {
        checkpoints,
        diff_decay,
        lower_log_ratio,
        upper_log_ratio,
        all_pass,
    })
}

// ---------------------------------------------------------------------------
// Streams
// ---------------------------------------------------------------------------

/// How to pick one digit out of a window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum WindowPolicy {
    /// Smallest admissible digit.
    Min,
    /// Floor midpoint of the window.
    Mid,
    /// Uniform over the window, keyed per index (clone- and order-stable).
    Random { seed: u64 },
}

/// How to fill the unconstrained indices of the sparse-index construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FillerPolicy {
    /// Deterministic cycle `1, 2, ..., M, 1, 2, ...` over filler positions.
    Cycle,
    /// Uniform in `1..=M`, keyed per index.
    Random { seed: u64 },
}

/// Parameters of the sparse-index construction: large digits at the indices
/// `n_k` where `phi` first grows by the factor `1 + psi(k-1)`, small filler
/// digits elsewhere.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmSpec {
    pub phi: GrowthFunction,
    pub psi: PsiSpec,
    /// Upper bound `M` for filler digits.
    pub filler_bound: u64,
    pub filler: FillerPolicy,
}

impl EmSpec {
    pub fn validate(&self) -> Result<()> {
        self.phi.validate()?;
        if let PsiSpec::Const { value } = &self.psi {
            if !value.is_positive() {
                return Err(Error::Domain(format!(
                    "psi must be positive, got constant {value}"
                )));
            }
        }
        if self.filler_bound == 0 {
            return Err(Error::Domain("filler bound must be at least 1".into()));
        }
        Ok(())
    }
}

/// Which constructed set a stream's digits realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StreamKind {
    SetA,
    SetB,
    SetEm,
    SetF,
    MeasureMu,
}

impl std::fmt::Display for StreamKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StreamKind::SetA => "set-a",
            StreamKind::SetB => "set-b",
            StreamKind::SetEm => "set-em",
            StreamKind::SetF => "set-f",
            StreamKind::MeasureMu => "measure-mu",
        };
        write!(f, "{name}")
    }
}

/// Canonical, serializable snapshot of everything that determines a stream.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "set", rename_all = "kebab-case")]
pub enum StreamParams {
    SetA {
        #[serde(with = "rational_string")]
        gamma: BigRational,
        #[serde(with = "rational_string")]
        c1: BigRational,
        #[serde(with = "rational_string")]
        c2: BigRational,
        start: u64,
        policy: WindowPolicy,
    },
    SetB {
        spec: WindowSpec,
        policy: WindowPolicy,
    },
    SetEm {
        spec: EmSpec,
    },
    SetF {
        #[serde(with = "rational_string")]
        gamma: BigRational,
        #[serde(with = "rational_string")]
        alpha: BigRational,
        start: u64,
        policy: WindowPolicy,
    },
    MeasureMu {
        #[serde(with = "rational_string")]
        gamma: BigRational,
        #[serde(with = "rational_string")]
        c1: BigRational,
        #[serde(with = "rational_string")]
        c2: BigRational,
        start: u64,
        seed: u64,
    },
}

impl StreamParams {
    pub fn kind(&self) -> StreamKind {
        match self {
            StreamParams::SetA { .. } => StreamKind::SetA,
            StreamParams::SetB { .. } => StreamKind::SetB,
            StreamParams::SetEm { .. } => StreamKind::SetEm,
            StreamParams::SetF { .. } => StreamKind::SetF,
            StreamParams::MeasureMu { .. } => StreamKind::MeasureMu,
        }
    }
}

/// One prescribed entry of the sparse-index construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrescribedDigit {
    /// 1-based rank `k`.
    pub k: u64,
    /// The index `n_k` carrying the large digit.
    pub index: u64,
    /// The digit `a_{n_k}`.
    pub digit: BigUint,
    /// `F_k = floor((1 + psi(k)) phi(n_k))`; digits are the successive
    /// differences `F_k - F_{k-1} + 1` (with `F_0 = 0`), so the partial sums
    /// over prescribed indices telescope to `F_k + k` exactly.
    pub floor_term: BigInt,
}

#[derive(Debug, Clone)]
struct WindowGen {
    spec: WindowSpec,
    policy: WindowPolicy,
}

#[derive(Debug, Clone)]
struct EmGen {
    spec: EmSpec,
    /// Exact-rational comparisons: available when `phi` has exact rational
    /// values and `psi` is a rational constant. The ball path certifies the
    /// same decisions but would stall on a threshold met with equality;
    /// exact mode decides those instantly.
    exact: bool,
    emitted: Vec<PrescribedDigit>,
    /// Next prescribed entry, always precomputed.
    upcoming: PrescribedDigit,
    filler_count: u64,
}

#[derive(Debug, Clone)]
enum Gen {
    Window(Box<WindowGen>),
    Em(Box<EmGen>),
}

/// A reproducible digit generator for one constructed point (or one sample
/// of the window measure). Digits are produced for indices `1, 2, ...`;
/// indices below a window start are fixed to 1. Cloning preserves all
/// state, and randomized policies are keyed per index, so a clone advanced
/// separately produces the same digits.
#[derive(Debug, Clone)]
pub struct DigitStream {
    params: StreamParams,
    next_index: u64,
    gen: Gen,
}

impl DigitStream {
    /// The parameter snapshot this stream was built from.
    pub fn params(&self) -> &StreamParams {
        &self.params
    }

    pub fn kind(&self) -> StreamKind {
        self.params.kind()
    }

    /// Index of the next digit `next_digit` will produce (1-based).
    pub fn next_index(&self) -> u64 {
        self.next_index
    }

    /// The digit at the current index, advancing the stream.
    pub fn next_digit(&mut self) -> Result<BigUint> {
        let n = self.next_index;
        let digit = match &mut self.gen {
            Gen::Window(g) => window_digit(&g.spec, &g.policy, n)?,
            Gen::Em(g) => g.digit_at(n)?,
        };
        self.next_index += 1;
        Ok(digit)
    }

    /// The next `count` digits.
    pub fn take_digits(&mut self, count: u64) -> Result<Vec<BigUint>> {
        (0..count).map(|_| self.next_digit()).collect()
    }

    /// Prescribed entries emitted so far (empty for window streams).
    pub fn prescribed(&self) -> &[PrescribedDigit] {
        match &self.gen {
            Gen::Em(g) => &g.emitted,
            _ => &[],
        }
    }

    /// `r(n)`: how many prescribed indices are `<= n`. `None` for window
    /// streams, and for indices the stream has not yet decided (advance it
    /// past `n` first).
    pub fn r_of(&self, n: u64) -> Option<u64> {
        match &self.gen {
            Gen::Em(g) if g.upcoming.index > n => {
                Some(g.emitted.iter().filter(|p| p.index <= n).count() as u64)
            }
            _ => None,
        }
    }
}

fn keyed_rng(seed: u64, index: u64, salt: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16..24].copy_from_slice(&salt.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Uniform draw in `[0, bound)` by rejection on `bound.bits()`-bit draws.
fn uniform_below(rng: &mut ChaCha8Rng, bound: &BigUint) -> BigUint {
    let bits = bound.bits();
    let n_bytes = bits.div_ceil(8) as usize;
    let excess = (8 * n_bytes) as u64 - bits;
    loop {
        let mut buf = vec![0u8; n_bytes];
        rng.fill_bytes(&mut buf);
        let mut draw = BigUint::from_bytes_le(&buf);
        draw >>= excess;
        if &draw < bound {
            return draw;
        }
    }
}

fn window_digit(spec: &WindowSpec, policy: &WindowPolicy, n: u64) -> Result<BigUint> {
    if n < spec.start {
        return Ok(BigUint::one());
    }
    let w = digit_window(spec, n)?;
    Ok(match policy {
        WindowPolicy::Min => w.lo,
        WindowPolicy::Mid => (&w.lo + &w.hi) >> 1,
        WindowPolicy::Random { seed } => {
            let mut rng = keyed_rng(*seed, n, SALT_WINDOW);
            &w.lo + uniform_below(&mut rng, &w.count())
        }
    })
}

impl EmGen {
    fn new(spec: EmSpec) -> Result<Self> {
        let exact = spec.phi.eval_rational(1).is_some()
            && matches!(spec.psi, PsiSpec::Const { .. });
        let upcoming = next_prescribed(&spec, exact, None)?;
        Ok(EmGen {
            spec,
            exact,
            emitted: Vec::new(),
            upcoming,
            filler_count: 0,
        })
    }

    fn digit_at(&mut self, n: u64) -> Result<BigUint> {
        if n == self.upcoming.index {
            let next = next_prescribed(&self.spec, self.exact, Some(&self.upcoming))?;
            let entry = std::mem::replace(&mut self.upcoming, next);
            let digit = entry.digit.clone();
            self.emitted.push(entry);
            return Ok(digit);
        }
        let digit = match &self.spec.filler {
            FillerPolicy::Cycle => self.filler_count % self.spec.filler_bound + 1,
            FillerPolicy::Random { seed } => {
                let mut rng = keyed_rng(*seed, n, SALT_FILLER);
                let bound = BigUint::from(self.spec.filler_bound);
                (uniform_below(&mut rng, &bound) + 1u32)
                    .to_u64()
                    .expect("filler bound fits u64")
            }
        };
        self.filler_count += 1;
        Ok(BigUint::from(digit))
    }
}

/// The exact rational constant `psi(k)` in exact mode.
fn psi_rational(psi: &PsiSpec) -> BigRational {
    match psi {
        PsiSpec::Const { value } => value.clone(),
        PsiSpec::InvLog => unreachable!("exact mode requires a constant psi"),
    }
}

/// Compute the entry after `prev` (or the first one): the least index whose
/// `phi` value reaches the growth threshold, its floor term, and its digit.
/// The linear scan certifies minimality of every index it settles on.
fn next_prescribed(
    spec: &EmSpec,
    exact: bool,
    prev: Option<&PrescribedDigit>,
) -> Result<PrescribedDigit> {
    let k = prev.map_or(1, |p| p.k + 1);
    let index = match prev {
        // First index: the least n with phi(n) >= 1. Every family except
        // the linear one has phi(1) >= 1 (exponentials of a positive
        // argument, or 1^gamma), and the linear family has exact rational
        // values, so no ball search is ever needed here.
        None => match &spec.phi {
            GrowthFunction::Linear { .. } => {
                let one = BigRational::one();
                let mut n = 1;
                while spec.phi.eval_rational(n).expect("linear is exact") < one {
                    n += 1;
                }
                n
            }
            _ => 1,
        },
        Some(p) => {
            if exact {
                let threshold = (BigRational::one() + psi_rational(&spec.psi))
                    * spec.phi.eval_rational(p.index).expect("exact mode");
                let mut n = p.index + 1;
                while spec.phi.eval_rational(n).expect("exact mode") < threshold {
                    n += 1;
                }
                n
            } else {
                scan_log_threshold(spec, k, p.index)?
            }
        }
    };
    let floor_term = if exact {
        let value =
            (BigRational::one() + psi_rational(&spec.psi)) * spec.phi.eval_rational(index).expect("exact mode");
        value.floor().to_integer()
    } else {
        let hint = 64 + phi_bits_hint(&spec.phi, index);
        certified_floor_with(hint, |w| {
            let eps = spec.psi.eval(k, w)?;
            Ok(BigReal::one(w).add(&eps).mul(&spec.phi.eval(index, w)?))
        })?
    };
    let f_prev = prev.map_or_else(BigInt::zero, |p| p.floor_term.clone());
    let digit = (&floor_term - &f_prev + BigInt::one())
        .to_biguint()
        .expect("floor terms are nondecreasing by construction");
    assert!(!digit.is_zero(), "prescribed digits are positive by construction");
    Ok(PrescribedDigit {
        k,
        index,
        digit,
        floor_term,
    })
}

/// Least `n > n_prev` with `phi(n) >= (1 + psi(k-1)) phi(n_prev)`, decided
/// in the log domain: `ln phi(n) >= R` with the per-candidate-independent
/// threshold `R = ln(1 + psi(k-1)) + ln phi(n_prev)` computed once per
/// precision level. For `exp(n^{p/q})` growth the candidate side is `n^{p/q}`,
/// so `n^p >= R^q` (both sides positive) decides each candidate with one
/// exact integer power against a cached ball — no elementary functions in
/// the scan loop at all.
fn scan_log_threshold(spec: &EmSpec, k: u64, n_prev: u64) -> Result<u64> {
    let log_threshold = |w: u64| -> Result<BigReal> {
        let eps = spec.psi.eval(k - 1, w)?;
        Ok(BigReal::one(w)
            .add(&eps)
            .ln()?
            .add(&spec.phi.eval_log(n_prev, w)?))
    };
    // gamma = p/q with small machine-word parts enables the integer path.
    let pq = match &spec.phi {
        GrowthFunction::ExpPower { gamma } => u32::try_from(gamma.numer())
            .ok()
            .zip(i64::try_from(gamma.denom()).ok())
            .filter(|&(p, q)| p > 0 && (1..=1_000_000).contains(&q)),
        _ => None,
    };
    let mut w: u64 = 96;
    let mut thr = log_threshold(w)?;
    debug_assert_eq!(thr.is_positive_certain(), Some(true));
    let mut thr_pow = match pq {
        Some((_, q)) => Some(thr.powi(q)?),
        None => None,
    };
    let mut n = n_prev + 1;
    loop {
        let decided = match pq {
            Some((p, _)) => {
                let cand = BigRational::from_integer(BigInt::from(n).pow(p));
                match thr_pow.as_ref().expect("set with pq").cmp_rational(&cand) {
                    Some(Ordering::Greater) => Some(false),
                    Some(_) => Some(true),
                    None => None,
                }
            }
            None => {
                let a = spec.phi.eval_log(n, w)?;
                if a.lo().cmp_val(&thr.hi()) != Ordering::Less {
                    Some(true)
                } else if a.hi().cmp_val(&thr.lo()) == Ordering::Less {
                    Some(false)
                } else {
                    None
                }
            }
        };
        match decided {
            Some(true) => return Ok(n),
            Some(false) => n += 1,
            None => {
                if w >= MAX_PRECISION {
                    return Err(Error::PrecisionExhausted(format!(
                        "growth threshold at rank {k} undecidable at {w} bits"
                    )));
                }
                w = (w * 2).min(MAX_PRECISION);
                thr = log_threshold(w)?;
                if let Some((_, q)) = pq {
                    thr_pow = Some(thr.powi(q)?);
                }
            }
        }
    }
}

/// Magnitude hint (bits before the point) for `phi(n)`.
fn phi_bits_hint(phi: &GrowthFunction, n: u64) -> u64 {
    let log2e = std::f64::consts::LOG2_E;
    let est = match phi {
        GrowthFunction::ExpPower { gamma } => {
            (n as f64).powf(gamma.to_f64().unwrap_or(1.0)) * log2e
        }
        GrowthFunction::ExpSqrtPsi { psi } => {
            let top = match psi {
                PsiSpec::InvLog => 1.0,
                PsiSpec::Const { value } => value.to_f64().unwrap_or(1.0).max(1.0),
            };
            (n as f64).sqrt() * top * log2e
        }
        GrowthFunction::ExpGeometric { gamma } => {
            let g = gamma.to_f64().unwrap_or(2.0);
            (n as f64) * g.ln() * log2e
        }
        GrowthFunction::Polynomial { gamma } => {
            gamma.to_f64().unwrap_or(1.0) * (n as f64).log2()
        }
        GrowthFunction::Linear { gamma } => {
            (gamma.to_f64().unwrap_or(1.0) * n as f64).log2().max(0.0)
        }
    };
    if est.is_finite() {
        est.clamp(0.0, 1e15) as u64
    } else {
        u64::MAX / 4
    }
}

// ---------------------------------------------------------------------------
// Stream constructors
// ---------------------------------------------------------------------------

/// Constant-window stream: digits confined to `(c1 e^{n^gamma}, c2 e^{n^gamma})`
/// for all `n >= start`.
pub fn stream_a(
    gamma: BigRational,
    c1: BigRational,
    c2: BigRational,
    start: u64,
    policy: WindowPolicy,
) -> Result<DigitStream> {
    if c2 <= c1 {
        return Err(Error::Domain(format!(
            "need c1 < c2, got c1 = {c1}, c2 = {c2}"
        )));
    }
    let spec = WindowSpec {
        gamma: gamma.clone(),
        lower: CoefFn::Const { value: c1.clone() },
        upper: CoefFn::Const { value: c2.clone() },
        start,
    };
    spec.validate()?;
    Ok(DigitStream {
        params: StreamParams::SetA {
            gamma,
            c1,
            c2,
            start,
            policy: policy.clone(),
        },
        next_index: 1,
        gen: Gen::Window(Box::new(WindowGen { spec, policy })),
    })
}

/// Variable-window stream over an arbitrary coefficient pair. Windows are
/// computed lazily; an empty one surfaces as `EmptyWindow` at its index.
pub fn stream_b(spec: WindowSpec, policy: WindowPolicy) -> Result<DigitStream> {
    spec.validate()?;
    Ok(DigitStream {
        params: StreamParams::SetB {
            spec: spec.clone(),
            policy: policy.clone(),
        },
        next_index: 1,
        gen: Gen::Window(Box::new(WindowGen { spec, policy })),
    })
}

/// Ramp-window stream: digits confined to `(alpha(1-1/n) e^{n^gamma},
/// alpha e^{n^gamma})`, so the running maximum `T_n` satisfies
/// `alpha(1-1/n) < T_n e^{-n^gamma} < alpha` by construction. The ramp
/// vanishes at `n = 1`, so the start must be at least 2.
pub fn stream_f(
    gamma: BigRational,
    alpha: BigRational,
    start: u64,
    policy: WindowPolicy,
) -> Result<DigitStream> {
    if start < 2 {
        return Err(Error::Domain(
            "ramp windows start at n = 2 (the lower coefficient vanishes at 1)".into(),
        ));
    }
    let spec = WindowSpec {
        gamma: gamma.clone(),
        lower: CoefFn::AlphaRamp {
            alpha: alpha.clone(),
        },
        upper: CoefFn::Const {
            value: alpha.clone(),
        },
        start,
    };
    spec.validate()?;
    Ok(DigitStream {
        params: StreamParams::SetF {
            gamma,
            alpha,
            start,
            policy: policy.clone(),
        },
        next_index: 1,
        gen: Gen::Window(Box::new(WindowGen { spec, policy })),
    })
}

/// Sparse-index stream: prescribed large digits at the indices `n_k`,
/// filler digits in `1..=M` elsewhere.
pub fn stream_em(spec: EmSpec) -> Result<DigitStream> {
    spec.validate()?;
    let gen = EmGen::new(spec.clone())?;
    Ok(DigitStream {
        params: StreamParams::SetEm { spec },
        next_index: 1,
        gen: Gen::Em(Box::new(gen)),
    })
}

/// One sample of the uniform measure on constant windows: every digit drawn
/// uniformly and independently from its window, deterministically in
/// `(parameters, seed)`. Digits below `start` are fixed to 1.
pub fn sample_mu(
    gamma: BigRational,
    c1: BigRational,
    c2: BigRational,
    start: u64,
    depth: u64,
    seed: u64,
) -> Result<DigitWord> {
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let mut stream = stream_a(
        gamma.clone(),
        c1.clone(),
        c2.clone(),
        start,
        WindowPolicy::Random { seed },
    )?;
    stream.params = StreamParams::MeasureMu {
        gamma,
        c1,
        c2,
        start,
        seed,
    };
    DigitWord::new(stream.take_digits(depth)?)
}

// ---------------------------------------------------------------------------
// Membership diagnostics
// ---------------------------------------------------------------------------

/// Certified ratio data at one depth.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipRow {
    pub depth: u64,
    /// `S_n`, decimal (digits can vastly exceed machine range).
    pub digit_sum: String,
    /// `T_n = max digit`, decimal.
    pub max_digit: String,
    /// `S_n / phi(n)`.
    pub s_over_phi: f64,
    /// `S_n / phi(n) - 1`, computed in ball arithmetic before rounding so
    /// deviations far below f64 epsilon survive.
    pub s_ratio_minus_one: f64,
    /// `T_n / e^{n^gamma}` when a maximum-growth exponent was supplied.
    pub t_over_exp: Option<f64>,
}

/// Evaluate `S_n / phi(n)` (and optionally `T_n / e^{n^gamma}`) at each
/// depth. The stream must be fresh: depths are absolute digit indices.
pub fn membership_diagnostics(
    stream: &mut DigitStream,
    phi: &GrowthFunction,
    t_gamma: Option<&BigRational>,
    depths: &[u64],
) -> Result<Vec<MembershipRow>> {
    if depths.is_empty() || depths[0] == 0 {
        return Err(Error::Domain("depths must be positive".into()));
    }
    if depths.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Domain("depths must be strictly increasing".into()));
    }
    if stream.next_index() != 1 {
        return Err(Error::Domain(
            "diagnostics need a fresh stream (depths are absolute indices)".into(),
        ));
    }
    let mut rows = Vec::with_capacity(depths.len());
    let mut sum = BigUint::zero();
    let mut max_digit = BigUint::zero();
    let mut idx = 0u64;
    for &depth in depths {
        while idx < depth {
            idx += 1;
            let a = stream.next_digit()?;
            sum += &a;
            if a > max_digit {
                max_digit = a;
            }
        }
        // Exact rational ratio when phi admits one (so a ratio that is
        // exactly 1 reports as exactly 1); certified ball otherwise.
        let (s_over_phi, s_ratio_minus_one) = match phi.eval_rational(depth) {
            Some(q) => {
                let ratio = BigRational::from_integer(BigInt::from(sum.clone())) / q;
                let minus_one = &ratio - BigRational::one();
                (
                    ratio.to_f64().unwrap_or(f64::NAN),
                    minus_one.to_f64().unwrap_or(f64::NAN),
                )
            }
            None => {
                let w = sum.bits() + 96;
                let s = BigReal::from_bigint(&BigInt::from(sum.clone()), w);
                let ratio = s.div(&phi.eval(depth, w)?)?;
                let minus_one = ratio.sub(&BigReal::one(w));
                (ratio.to_f64(), minus_one.to_f64())
            }
        };
        let t_over_exp = match t_gamma {
            Some(g) => {
                let wt = max_digit.bits() + exp_power_bits_hint(g, depth) + 96;
                let t = BigReal::from_bigint(&BigInt::from(max_digit.clone()), wt);
                Some(t.div(&exp_power(g, depth, wt)?)?.to_f64())
            }
            None => None,
        };
        rows.push(MembershipRow {
            depth,
            digit_sum: sum.to_string(),
            max_digit: max_digit.to_string(),
            s_over_phi,
            s_ratio_minus_one,
            t_over_exp,
        });
    }
    Ok(rows)
}
