//! Dimension diagnostics for sets defined by partial-quotient growth.
//!
//! Four instruments live here, all built on the certified ball arithmetic
//! from [`crate::numerics`]:
//!
//! * [`cover_sum_terms`]: per-term logs of the natural cover products used
//!   in upper-bound arguments, together with a certified verdict on whether
//!   the per-term log increment is eventually negative (products stay
//!   bounded) or eventually positive (products diverge).
//! * [`solve_sl`]: the root `s_L` of `(9/2)(2 + zeta(2s)) = exp((2s-1)L/2)`
//!   on `(1/2, 1)`, bracketed to a requested width by bisection with
//!   certified signs.
//! * [`local_dimension_profile`] / [`piecewise_dimension`] /
//!   [`figure1_data`]: the ratio `rho(n)` of prefix digit-log sums that
//!   governs local covering exponents, its exact limits, and the resulting
//!   piecewise-constant dimension-vs-growth table.
//! * [`finite_depth_dimension`]: a log-count over log-length estimate read
//!   off a finite depth of a window construction.
//!
//! All rational inputs are exact; every floating-point field in a report is
//! a rounding of a certified enclosure, with the enclosure radius reported
//! alongside where it matters.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cf::{self, DigitWord};
use crate::compsum::generalized_bound_constant;
use crate::constructions::{digit_window, stream_b, WindowPolicy, WindowSpec};
use crate::error::{Error, Result};
use crate::numerics::{
    certified_floor_with, format_rational, pow_rational, rational_string, BigReal,
    GrowthFunction, DEFAULT_PRECISION, MAX_PRECISION,
};

/// Working precision for one-shot report tabulation (bits).
const REPORT_PRECISION: u64 = 192;

/// Hard ceiling for the doubling search over indices in trend
/// certification; reached only if an envelope argument is wrong.
const MAX_TREND_INDEX: u64 = 1 << 45;

// ---------------------------------------------------------------------------
// helpers: certified signs and escalating searches
// ---------------------------------------------------------------------------

/// Strict sign of a ball: `Greater`/`Less` only when the whole ball is on
/// one side of zero, `Equal` only for the exact point zero.
fn ball_sign(v: &BigReal) -> Option<Ordering> {
    if v.lo().signum() > 0 {
        Some(Ordering::Greater)
    } else if v.hi().signum() < 0 {
        Some(Ordering::Less)
    } else if v.is_exact() && v.lo().signum() == 0 {
        Some(Ordering::Equal)
    } else {
        None
    }
}

/// Evaluate `eval` at doubling precision until its sign is certified.
fn certified_sign<F>(mut eval: F) -> Result<Ordering>
where
    F: FnMut(u64) -> Result<BigReal>,
{
    let mut prec = DEFAULT_PRECISION;
    loop {
        let v = eval(prec)?;
        if let Some(sign) = ball_sign(&v) {
            return Ok(sign);
        }
        if prec >= MAX_PRECISION {
            return Err(Error::PrecisionExhausted(
                "could not separate an expression's sign from zero".into(),
            ));
        }
        prec = (prec * 2).min(MAX_PRECISION);
    }
}

/// Smallest index of the form `start * 2^j` where `value(index)` has the
/// certified sign `want`. Correct only when the caller knows the sign is
/// monotone-stable past its first occurrence on this index ladder.
fn first_certified<F>(start: u64, want: Ordering, mut value: F) -> Result<u64>
where
    F: FnMut(u64, u64) -> Result<BigReal>,
{
    let mut ell = start.max(1);
    loop {
        if certified_sign(|p| value(ell, p))? == want {
            return Ok(ell);
        }
        ell = ell
            .checked_mul(2)
            .filter(|&e| e <= MAX_TREND_INDEX)
            .ok_or_else(|| {
                Error::PrecisionExhausted(
                    "no certified sign change within the trend search range".into(),
                )
            })?;
    }
}

fn rational_half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn rational_two() -> BigRational {
    BigRational::from_integer(BigInt::from(2))
}

/// f64 view of a rational via a certified 64-bit enclosure (safe for
/// rationals whose numerator and denominator both overflow f64).
fn rational_to_f64(q: &BigRational) -> f64 {
    BigReal::from_rational(q, 64).to_f64()
}

// ---------------------------------------------------------------------------
// cover sums
// ---------------------------------------------------------------------------

/// Trend of the per-term log increments of a cover product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    /// Increments are eventually negative: the partial products are
    /// uniformly bounded.
    BoundedTrend,
    /// Increments are eventually positive: the partial products diverge.
    DivergingTrend,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::BoundedTrend => write!(f, "bounded-trend"),
            Verdict::DivergingTrend => write!(f, "diverging-trend"),
        }
    }
}

/// Which subsequence `n_ell` drives the cover: where the prescribed digit
/// windows sit along the expansion.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Subsequence {
    /// `n_ell = ell^(1/gamma)`, the natural ladder for `exp(n^gamma)` growth.
    PowerGamma,
    /// `n_ell = ell^2 / L^2`, the ladder for `exp(sqrt(n) * L)` growth.
    SquareOverL {
        #[serde(with = "rational_string")]
        l: BigRational,
    },
    /// `n_ell = ell^(1/gamma) (ln ell)^(1/gamma^2)`, the ladder when only
    /// the largest quotient carries the sum.
    LargestQuotient,
}

/// Parameters of one cover-product diagnostic run.
///
/// The product under study is
/// `prod_ell r1 * e^(slope-part) * C^(n_ell - n_(ell-1)) * r2^(2s)` where
/// `C = (9/2)(2 + zeta(2s))`, `r1 = 2 eps (1 - 1/e)`, and
/// `r2 = (e - 1 - eps(e + 1)) / e`; everything is tracked in logs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverScheme {
    /// Growth exponent `gamma > 0` for the index-power subsequences.
    #[serde(with = "rational_string")]
    pub gamma: BigRational,
    /// Window half-width parameter; needs `0 < eps < (e-1)/(e+1)` so that
    /// both contraction ratios stay positive.
    #[serde(with = "rational_string")]
    pub epsilon: BigRational,
    /// Hoelder exponent `s` in `(1/2, 1)`.
    #[serde(with = "rational_string")]
    pub s: BigRational,
    pub subsequence: Subsequence,
    /// Number of product terms to tabulate.
    pub k_max: u64,
}

impl CoverScheme {
    pub fn validate(&self) -> Result<()> {
        if !self.gamma.is_positive() {
            return Err(Error::Domain(format!(
                "gamma must be positive, got {}",
                format_rational(&self.gamma)
            )));
        }
        let half = rational_half();
        if self.s <= half || self.s >= BigRational::one() {
            return Err(Error::Domain(format!(
                "s must lie in (1/2, 1), got {}",
                format_rational(&self.s)
            )));
        }
        if !self.epsilon.is_positive() {
            return Err(Error::Domain(format!(
                "epsilon must be positive, got {}",
                format_rational(&self.epsilon)
            )));
        }
        // eps < (e-1)/(e+1), i.e. eps*(e+1) - (e-1) < 0, checked on balls.
        let eps = self.epsilon.clone();
        let sign = certified_sign(move |p| {
            let e = BigReal::one(p).exp();
            let one = BigReal::one(p);
            Ok(BigReal::from_rational(&eps, p)
                .mul(&e.add(&one))
                .sub(&e.sub(&one)))
        })?;
        if sign != Ordering::Less {
            return Err(Error::Domain(format!(
                "epsilon must stay below (e-1)/(e+1) ~ 0.4621, got {}",
                format_rational(&self.epsilon)
            )));
        }
        if let Subsequence::SquareOverL { l } = &self.subsequence {
            if !l.is_positive() {
                return Err(Error::Domain(format!(
                    "L must be positive, got {}",
                    format_rational(l)
                )));
            }
        }
        if self.k_max == 0 {
            return Err(Error::Domain("k_max must be at least 1".into()));
        }
        Ok(())
    }

    /// The integer cover depths: `n_ell` rounded to the nearest integer,
    /// clamped to `>= 1`, strictly increasing (duplicates dropped).
    pub fn indices(&self) -> Result<Vec<u64>> {
        self.validate()?;
        let mut out = Vec::new();
        let mut prev: u64 = 0;
        for k in 1..=self.k_max {
            let rounded = self.rounded_index(k)?;
            if rounded < BigInt::one() {
                continue;
            }
            let v = rounded.to_u64().ok_or_else(|| {
                Error::Domain(format!("cover index n_{k} does not fit in 64 bits"))
            })?;
            if v > prev {
                out.push(v);
                prev = v;
            }
        }
        Ok(out)
    }

    /// Nearest integer to `n_k`, computed exactly where the value is
    /// rational and by certified floor of `n_k + 1/2` otherwise. The floor
    /// terminates because `n_k + 1/2` is never an integer: for rational
    /// ladders the half survives, and for irrational `k^(1/gamma)` (or the
    /// log-corrected variant) the value itself is irrational.
    fn rounded_index(&self, k: u64) -> Result<BigInt> {
        let half = rational_half();
        match &self.subsequence {
            Subsequence::SquareOverL { l } => {
                let q = BigRational::from_integer(BigInt::from(k) * BigInt::from(k)) / (l * l);
                Ok((q + half).floor().to_integer())
            }
            Subsequence::PowerGamma => {
                let inv_g = self.gamma.recip();
                if inv_g.is_integer() {
                    let m = inv_g.to_integer().to_u32().ok_or_else(|| {
                        Error::Domain("1/gamma is too large an integer exponent".into())
                    })?;
                    Ok(BigInt::from(k).pow(m))
                } else {
                    let hint = power_bits_hint(&inv_g, k);
                    certified_floor_with(hint, |p| {
                        let v = pow_rational(&BigReal::from_u64(k, p), &inv_g, p)?;
                        Ok(v.add(&BigReal::from_rational(&half, p)))
                    })
                }
            }
            Subsequence::LargestQuotient => {
                if k == 1 {
                    // n_1 = 1 * (ln 1)^(1/gamma^2) = 0.
                    return Ok(BigInt::zero());
                }
                let inv_g = self.gamma.recip();
                let hint = power_bits_hint(&inv_g, k) + 32;
                certified_floor_with(hint, |p| {
                    let v = largest_quotient_value(&self.gamma, k, p)?;
                    Ok(v.add(&BigReal::from_rational(&half, p)))
                })
            }
        }
    }
}

/// Precision headroom for floors of `k^(1/gamma)`-sized values.
fn power_bits_hint(inv_g: &BigRational, k: u64) -> u64 {
    let exp = rational_to_f64(inv_g).abs().max(1.0);
    96 + (exp * ((k.max(2)) as f64).log2()).ceil() as u64
}

/// `ell^(1/gamma) * (ln ell)^(1/gamma^2)` as a ball; zero for `ell <= 1`.
fn largest_quotient_value(gamma: &BigRational, ell: u64, prec: u64) -> Result<BigReal> {
    if ell <= 1 {
        return Ok(BigReal::zero(prec));
    }
    let inv_g = gamma.recip();
    let inv_g2 = &inv_g * &inv_g;
    let base = BigReal::from_u64(ell, prec);
    let p1 = pow_rational(&base, &inv_g, prec)?;
    let p2 = pow_rational(&base.ln()?, &inv_g2, prec)?;
    Ok(p1.mul(&p2))
}

/// `n_ell` for the scheme's subsequence, as a ball at precision `prec`.
fn subsequence_value(scheme: &CoverScheme, ell: u64, prec: u64) -> Result<BigReal> {
    match &scheme.subsequence {
        Subsequence::PowerGamma => {
            if ell == 0 {
                return Ok(BigReal::zero(prec));
            }
            pow_rational(&BigReal::from_u64(ell, prec), &scheme.gamma.recip(), prec)
        }
        Subsequence::SquareOverL { l } => {
            let q = BigRational::from_integer(BigInt::from(ell) * BigInt::from(ell)) / (l * l);
            Ok(BigReal::from_rational(&q, prec))
        }
        Subsequence::LargestQuotient => largest_quotient_value(&scheme.gamma, ell, prec),
    }
}

/// Precision-indexed constants of the per-term log model
/// `t(ell) = c0 + slope * ell + (n_ell - n_(ell-1)) * log_c`.
struct FactorModel {
    log_c: BigReal,
    log_r1: BigReal,
    log_r2: BigReal,
    c0: BigReal,
    slope: BigReal,
}

fn factor_model(scheme: &CoverScheme, prec: u64) -> Result<FactorModel> {
    let two_s = &scheme.s * rational_two();
    let log_c = generalized_bound_constant(&two_s, prec)?.ln()?;
    let e = BigReal::one(prec).exp();
    let one = BigReal::one(prec);
    let eps = BigReal::from_rational(&scheme.epsilon, prec);
    // r1 = 2 eps (1 - 1/e), r2 = (e - 1 - eps(e + 1)) / e.
    let r1 = eps.mul_u64(2).mul(&one.sub(&e.recip()?));
    let r2 = e.sub(&one).sub(&eps.mul(&e.add(&one))).div(&e)?;
    let log_r1 = r1.ln()?;
    let log_r2 = r2.ln()?;
    let c0 = log_r1.add(&BigReal::from_rational(&two_s, prec).mul(&log_r2));
    let one_minus_two_s = BigRational::one() - &two_s;
    let slope_q = match &scheme.subsequence {
        Subsequence::SquareOverL { l } => one_minus_two_s / l,
        _ => one_minus_two_s,
    };
    Ok(FactorModel {
        log_c,
        log_r1,
        log_r2,
        c0,
        slope: BigReal::from_rational(&slope_q, prec),
    })
}

/// The per-term log increment `t(ell)` as a ball.
fn log_increment(scheme: &CoverScheme, ell: u64, prec: u64) -> Result<BigReal> {
    let model = factor_model(scheme, prec)?;
    let n_cur = subsequence_value(scheme, ell, prec)?;
    let n_prev = subsequence_value(scheme, ell - 1, prec)?;
    Ok(model
        .c0
        .add(&model.slope.mul_u64(ell))
        .add(&n_cur.sub(&n_prev).mul(&model.log_c)))
}

/// One row of the cover-sum tabulation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverTermRow {
    /// Term index `ell >= 1`.
    pub ell: u64,
    /// Subsequence value `n_ell` (before integer rounding).
    pub n_ell: f64,
    /// Exponent increment `n_ell - n_(ell-1)` applied to the constant `C`.
    pub delta: f64,
    /// Log of the `ell`-th product factor.
    pub log_factor: f64,
    /// Enclosure radius of `log_factor`.
    pub log_factor_radius: f64,
    /// Partial sum of log factors up to `ell`.
    pub running_log_product: f64,
    /// Enclosure radius of the partial sum.
    pub running_radius: f64,
}

/// Full cover-sum diagnostic: the tabulated rows plus the certified trend.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverSumReport {
    pub scheme: CoverScheme,
    /// `ln((9/2)(2 + zeta(2s)))`.
    pub log_c: f64,
    /// `ln(2 eps (1 - 1/e))`.
    pub log_r1: f64,
    /// `ln((e - 1 - eps(e + 1)) / e)`.
    pub log_r2: f64,
    pub rows: Vec<CoverTermRow>,
    /// Certified eventual sign of the per-term log increments.
    pub verdict: Verdict,
    /// An index past which the increment sign is certified to agree with
    /// the verdict (a witness from the monotone-envelope argument, not
    /// necessarily the first crossing).
    pub certified_from: u64,
    /// Finite-run heuristic: whether every increment in the last fifth of
    /// the tabulated range is certifiably negative. Can disagree with a
    /// `bounded-trend` verdict when `k_max` sits before the crossover.
    pub tail_window_negative: bool,
}

/// Tabulate the per-term logs of the cover product and certify the
/// eventual trend of the increments.
///
/// The verdict comes from monotone envelopes around the increment
/// `t(ell) = c0 + slope*ell + (n_ell - n_(ell-1)) ln C` rather than from
/// the finite rows: for index-power ladders the mean-value bounds
/// `(1/g) (ell-1)^(1/g - 1) <= n_ell - n_(ell-1) <= (1/g) ell^(1/g - 1)`
/// (direction depending on `1/g - 1`) squeeze `t` between functions whose
/// eventual sign is decidable, and a doubling search returns a certified
/// witness index.
pub fn cover_sum_terms(scheme: &CoverScheme) -> Result<CoverSumReport> {
    scheme.validate()?;
    let prec = REPORT_PRECISION;
    let model = factor_model(scheme, prec)?;

    let mut rows = Vec::with_capacity(scheme.k_max as usize);
    let mut increments: Vec<BigReal> = Vec::with_capacity(scheme.k_max as usize);
    let mut prev_n = subsequence_value(scheme, 0, prec)?;
    let mut running = BigReal::zero(prec);
    for ell in 1..=scheme.k_max {
        let n_ell = subsequence_value(scheme, ell, prec)?;
        let delta = n_ell.sub(&prev_n);
        let t = model
            .c0
            .add(&model.slope.mul_u64(ell))
            .add(&delta.mul(&model.log_c));
        running = running.add(&t);
        rows.push(CoverTermRow {
            ell,
            n_ell: n_ell.to_f64(),
            delta: delta.to_f64(),
            log_factor: t.to_f64(),
            log_factor_radius: t.radius_f64(),
            running_log_product: running.to_f64(),
            running_radius: running.radius_f64(),
        });
        increments.push(t);
        prev_n = n_ell;
    }

    // Last-fifth window heuristic on the tabulated increments.
    let tail_len = (scheme.k_max / 5).max(1);
    let tail_start = scheme.k_max - tail_len + 1;
    let mut tail_window_negative = true;
    for ell in tail_start..=scheme.k_max {
        let stored = &increments[(ell - 1) as usize];
        let sign = match ball_sign(stored) {
            Some(sign) => sign,
            None => certified_sign(|p| log_increment(scheme, ell, p))?,
        };
        if sign != Ordering::Less {
            tail_window_negative = false;
            break;
        }
    }

    let (verdict, certified_from) = eventual_trend(scheme)?;
    Ok(CoverSumReport {
        scheme: scheme.clone(),
        log_c: model.log_c.to_f64(),
        log_r1: model.log_r1.to_f64(),
        log_r2: model.log_r2.to_f64(),
        rows,
        verdict,
        certified_from,
        tail_window_negative,
    })
}

/// Certified eventual sign of the per-term log increments, with a witness
/// index past which the sign holds.
fn eventual_trend(scheme: &CoverScheme) -> Result<(Verdict, u64)> {
    let two_s_minus_one = &scheme.s * rational_two() - BigRational::one();
    debug_assert!(two_s_minus_one.is_positive());
    match &scheme.subsequence {
        Subsequence::SquareOverL { l } => {
            // Exactly linear: t(ell) = sigma*ell + tau with
            // sigma = (1-2s)/L + 2 ln C / L^2, tau = c0 - ln C / L^2.
            let l2 = l * l;
            let sigma_coeff = rational_two() / &l2;
            let tau_coeff = BigRational::one() / &l2;
            let sigma = |p: u64| -> Result<BigReal> {
                let m = factor_model(scheme, p)?;
                Ok(m.slope
                    .add(&BigReal::from_rational(&sigma_coeff, p).mul(&m.log_c)))
            };
            let t_at = |ell: u64, p: u64| -> Result<BigReal> {
                let m = factor_model(scheme, p)?;
                let tau = m
                    .c0
                    .sub(&BigReal::from_rational(&tau_coeff, p).mul(&m.log_c));
                let sig = m
                    .slope
                    .add(&BigReal::from_rational(&sigma_coeff, p).mul(&m.log_c));
                Ok(tau.add(&sig.mul_u64(ell)))
            };
            match certified_sign(sigma)? {
                Ordering::Less => Ok((
                    Verdict::BoundedTrend,
                    first_certified(1, Ordering::Less, t_at)?,
                )),
                Ordering::Greater => Ok((
                    Verdict::DivergingTrend,
                    first_certified(1, Ordering::Greater, t_at)?,
                )),
                Ordering::Equal => Err(Error::PrecisionExhausted(
                    "per-term log increment has exactly zero slope".into(),
                )),
            }
        }
        Subsequence::PowerGamma => {
            let half = rational_half();
            match scheme.gamma.cmp(&half) {
                Ordering::Greater => power_gamma_bounded(scheme, &two_s_minus_one),
                Ordering::Equal => {
                    // n_ell = ell^2 exactly; delta = 2 ell - 1 grows, so the
                    // increment slope (1-2s) + 2 ln C is positive (ln C > 2.5
                    // while 2s - 1 < 1).
                    let t_at = |ell: u64, p: u64| log_increment_exact_square(scheme, ell, p);
                    Ok((
                        Verdict::DivergingTrend,
                        first_certified(1, Ordering::Greater, t_at)?,
                    ))
                }
                Ordering::Less => power_gamma_diverging(scheme, &two_s_minus_one),
            }
        }
        Subsequence::LargestQuotient => {
            let half = rational_half();
            if scheme.gamma > half {
                largest_quotient_bounded(scheme, &two_s_minus_one)
            } else {
                largest_quotient_diverging(scheme, &two_s_minus_one)
            }
        }
    }
}

/// `t(ell)` when `n_ell = ell^2` exactly (gamma = 1/2 power ladder).
fn log_increment_exact_square(scheme: &CoverScheme, ell: u64, p: u64) -> Result<BigReal> {
    let m = factor_model(scheme, p)?;
    let delta = BigReal::from_u64(2 * ell - 1, p);
    Ok(m.c0.add(&m.slope.mul_u64(ell)).add(&delta.mul(&m.log_c)))
}

/// Bounded-trend certificate for `gamma > 1/2` power ladders.
///
/// With `a = 1/gamma < 2` and `beta = a - 1 < 1`, the mean-value theorem
/// gives `delta_ell <= a * ell^beta` (for `beta <= 0` even `delta_ell <= 1`
/// by concavity), so `t(ell) <= g(ell)` with `g` eventually decreasing and
/// `-> -infinity`. We first certify a point where `g` decreases, then a
/// point where `g < 0`; past it, `t < 0` forever.
fn power_gamma_bounded(
    scheme: &CoverScheme,
    two_s_minus_one: &BigRational,
) -> Result<(Verdict, u64)> {
    let inv_g = scheme.gamma.recip();
    let beta = &inv_g - BigRational::one();
    if beta <= BigRational::zero() {
        // gamma >= 1: increments of the concave ladder never exceed 1.
        let g = |ell: u64, p: u64| -> Result<BigReal> {
            let m = factor_model(scheme, p)?;
            Ok(m.c0.add(&m.slope.mul_u64(ell)).add(&m.log_c))
        };
        return Ok((
            Verdict::BoundedTrend,
            first_certified(1, Ordering::Less, g)?,
        ));
    }
    // 0 < beta < 1: envelope g(ell) = (1-2s) ell + a ln C ell^beta + c0.
    // g'(ell) = (1-2s) + a beta ln C ell^(beta-1) is increasing toward
    // (1-2s) < 0 from above? No: ell^(beta-1) decreases, so g' decreases
    // toward (1-2s) < 0; find ell0 with (2s-1) - a beta ln C ell^(beta-1) > 0.
    let beta_minus_one = &beta - BigRational::one();
    let a_beta = &inv_g * &beta;
    let decreasing_past = |ell: u64, p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        let pw = pow_rational(&BigReal::from_u64(ell, p), &beta_minus_one, p)?;
        Ok(BigReal::from_rational(two_s_minus_one, p)
            .sub(&BigReal::from_rational(&a_beta, p).mul(&m.log_c).mul(&pw)))
    };
    let ell0 = first_certified(1, Ordering::Greater, decreasing_past)?;
    let g = |ell: u64, p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        let pw = pow_rational(&BigReal::from_u64(ell, p), &beta, p)?;
        Ok(m.c0
            .add(&m.slope.mul_u64(ell))
            .add(&BigReal::from_rational(&inv_g, p).mul(&m.log_c).mul(&pw)))
    };
    Ok((
        Verdict::BoundedTrend,
        first_certified(ell0, Ordering::Less, g)?,
    ))
}

/// Diverging-trend certificate for `gamma < 1/2` power ladders: with
/// `a = 1/gamma > 2`, `delta_ell >= a (ell-1)^(a-1) / ... >= a (ell-1)^beta`
/// by the mean value theorem (`beta = a - 1 > 1`, derivative increasing),
/// so `t(ell) >= h(ell) = (1-2s) ell + a ln C (ell-1)^beta + c0` with `h`
/// eventually increasing to `+infinity`.
fn power_gamma_diverging(
    scheme: &CoverScheme,
    two_s_minus_one: &BigRational,
) -> Result<(Verdict, u64)> {
    let inv_g = scheme.gamma.recip();
    let beta = &inv_g - BigRational::one();
    debug_assert!(beta > BigRational::one());
    let beta_minus_one = &beta - BigRational::one();
    let a_beta = &inv_g * &beta;
    // h'(ell) = (1-2s) + a beta ln C (ell-1)^(beta-1), increasing in ell.
    let increasing_past = |ell: u64, p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        let pw = pow_rational(&BigReal::from_u64(ell - 1, p), &beta_minus_one, p)?;
        Ok(BigReal::from_rational(&a_beta, p)
            .mul(&m.log_c)
            .mul(&pw)
            .sub(&BigReal::from_rational(two_s_minus_one, p)))
    };
    let ell0 = first_certified(2, Ordering::Greater, increasing_past)?;
    let h = |ell: u64, p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        let pw = pow_rational(&BigReal::from_u64(ell - 1, p), &beta, p)?;
        Ok(m.c0
            .add(&m.slope.mul_u64(ell))
            .add(&BigReal::from_rational(&inv_g, p).mul(&m.log_c).mul(&pw)))
    };
    Ok((
        Verdict::DivergingTrend,
        first_certified(ell0, Ordering::Greater, h)?,
    ))
}

/// Bounded-trend certificate for `gamma > 1/2` largest-quotient ladders.
///
/// Write `a = 1/gamma`, `b = 1/gamma^2`. For `ell >= 4`,
/// `delta_ell <= (7/4) (a + b) (ln ell)^b ell^(a-1)` (interval bounds on
/// the derivative factors), and `ln x <= x^c / c` with
/// `c = gamma(2gamma - 1)/2 > 0` turns the log power into `ell^(cb)` with
/// `a - 1 + cb = a/2 < 1`. So `t(ell) <= slope*ell + K ln C ell^(a/2) + c0`
/// with `K = (7/4)(a+b) c^(-b)`, which is eventually decreasing and
/// negative.
fn largest_quotient_bounded(
    scheme: &CoverScheme,
    two_s_minus_one: &BigRational,
) -> Result<(Verdict, u64)> {
    let a = scheme.gamma.recip();
    let b = &a * &a;
    // c = gamma (2 gamma - 1) / 2 > 0 since gamma > 1/2.
    let c = (&scheme.gamma * (&scheme.gamma * rational_two() - BigRational::one()))
        / rational_two();
    debug_assert!(c.is_positive());
    let q = &a / rational_two();
    let q_minus_one = &q - BigRational::one();
    let k_rat = (&a + &b) * BigRational::new(BigInt::from(7), BigInt::from(4));
    let neg_b = -&b;
    let envelope_coeff = move |p: u64| -> Result<BigReal> {
        let c_pow = pow_rational(&BigReal::from_rational(&c, p), &neg_b, p)?;
        Ok(BigReal::from_rational(&k_rat, p).mul(&c_pow))
    };
    // Envelope decreasing once (2s-1) - q K ln C ell^(q-1) > 0.
    let decreasing_past = |ell: u64, p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        let coeff = envelope_coeff(p)?;
        let pw = pow_rational(&BigReal::from_u64(ell, p), &q_minus_one, p)?;
        Ok(BigReal::from_rational(two_s_minus_one, p).sub(
            &BigReal::from_rational(&q, p)
                .mul(&coeff)
                .mul(&m.log_c)
                .mul(&pw),
        ))
    };
    let ell0 = first_certified(4, Ordering::Greater, decreasing_past)?;
    let g = |ell: u64, p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        let coeff = envelope_coeff(p)?;
        let pw = pow_rational(&BigReal::from_u64(ell, p), &q, p)?;
        Ok(m.c0
            .add(&m.slope.mul_u64(ell))
            .add(&coeff.mul(&m.log_c).mul(&pw)))
    };
    Ok((
        Verdict::BoundedTrend,
        first_certified(ell0, Ordering::Less, g)?,
    ))
}

/// Diverging-trend certificate for `gamma <= 1/2` largest-quotient
/// ladders: with `a = 1/gamma >= 2`, every derivative factor of the ladder
/// is increasing and for `ell >= 4` one has `delta_ell >= (a/2) ell`, so
/// `t(ell) >= ((1-2s) + (a/2) ln C) ell + c0` with a certifiably positive
/// linear coefficient (`ln C > 2.5`, `a >= 2`, `2s - 1 < 1`).
fn largest_quotient_diverging(
    scheme: &CoverScheme,
    two_s_minus_one: &BigRational,
) -> Result<(Verdict, u64)> {
    let a_half = scheme.gamma.recip() / rational_two();
    let slope_hat = |p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        Ok(BigReal::from_rational(&a_half, p)
            .mul(&m.log_c)
            .sub(&BigReal::from_rational(two_s_minus_one, p)))
    };
    if certified_sign(slope_hat)? != Ordering::Greater {
        return Err(Error::PrecisionExhausted(
            "lower envelope slope could not be certified positive".into(),
        ));
    }
    let t_lower = |ell: u64, p: u64| -> Result<BigReal> {
        let m = factor_model(scheme, p)?;
        let lin = BigReal::from_rational(&a_half, p)
            .mul(&m.log_c)
            .sub(&BigReal::from_rational(two_s_minus_one, p))
            .mul_u64(ell);
        Ok(m.c0.add(&lin))
    };
    Ok((
        Verdict::DivergingTrend,
        first_certified(4, Ordering::Greater, t_lower)?,
    ))
}

// ---------------------------------------------------------------------------
// the root s_L
// ---------------------------------------------------------------------------

/// A certified bracket around the root `s_L` of
/// `(9/2)(2 + zeta(2s)) = exp((2s-1) L / 2)` in `(1/2, 1)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SlBracket {
    #[serde(with = "rational_string")]
    pub l: BigRational,
    /// Lower bracket endpoint: the gap is certified positive here.
    #[serde(with = "rational_string")]
    pub lo: BigRational,
    /// Upper bracket endpoint: the gap is certified negative here.
    #[serde(with = "rational_string")]
    pub hi: BigRational,
    /// Requested width: `hi - lo <= 2^-precision_bits`.
    pub precision_bits: u32,
}

impl SlBracket {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.hi + &self.lo) / rational_two()
    }

    pub fn midpoint_f64(&self) -> f64 {
        rational_to_f64(&self.midpoint())
    }
}

/// The gap `ln((9/2)(2 + zeta(2s))) - (2s-1) L / 2`, strictly decreasing
/// in `s` on `(1/2, 1)`; its root is `s_L`.
pub fn sl_equation_gap(s: &BigRational, l: &BigRational, prec: u64) -> Result<BigReal> {
    let half = rational_half();
    if *s <= half || *s >= BigRational::one() {
        return Err(Error::Domain(format!(
            "s must lie in (1/2, 1), got {}",
            format_rational(s)
        )));
    }
    if !l.is_positive() {
        return Err(Error::Domain(format!(
            "L must be positive, got {}",
            format_rational(l)
        )));
    }
    let two_s = s * rational_two();
    let log_c = generalized_bound_constant(&two_s, prec)?.ln()?;
    let lin = (&two_s - BigRational::one()) * l / rational_two();
    Ok(log_c.sub(&BigReal::from_rational(&lin, prec)))
}

/// Bisect the gap to a bracket of width `2^-precision_bits`.
///
/// Endpoint scans walk dyadic ladders `1/2 + 2^-k` and `1 - 2^-k`
/// (`k = 2..60`) for certified signs; if either scan fails the gap does
/// not change sign on the sampled interval and there is no usable root —
/// for small `L` (below `2 ln((9/2)(2 + zeta(2)))  ~ 5.6`) the gap is
/// positive on all of `(1/2, 1)`.
pub fn solve_sl(l: &BigRational, precision_bits: u32) -> Result<SlBracket> {
    if !l.is_positive() {
        return Err(Error::Domain(format!(
            "L must be positive, got {}",
            format_rational(l)
        )));
    }
    if precision_bits == 0 || precision_bits > 256 {
        return Err(Error::Domain(
            "precision_bits must lie in 1..=256".into(),
        ));
    }
    let half = rational_half();
    let one = BigRational::one();

    let mut lo: Option<BigRational> = None;
    for k in 2..=60u32 {
        let cand = &half + BigRational::new(BigInt::one(), BigInt::one() << k);
        match certified_sign(|p| sl_equation_gap(&cand, l, p))? {
            Ordering::Greater => {
                lo = Some(cand);
                break;
            }
            Ordering::Less => continue,
            Ordering::Equal => {
                return Err(Error::PrecisionExhausted(
                    "gap vanished exactly at a probe point".into(),
                ))
            }
        }
    }
    let mut lo = lo.ok_or_else(|| {
        Error::NoRoot(format!(
            "gap is negative down to 1/2 + 2^-60 for L = {}",
            format_rational(l)
        ))
    })?;

    let mut hi: Option<BigRational> = None;
    for k in 2..=60u32 {
        let cand = &one - BigRational::new(BigInt::one(), BigInt::one() << k);
        if cand <= lo {
            continue;
        }
        match certified_sign(|p| sl_equation_gap(&cand, l, p))? {
            Ordering::Less => {
                hi = Some(cand);
                break;
            }
            Ordering::Greater => continue,
            Ordering::Equal => {
                return Err(Error::PrecisionExhausted(
                    "gap vanished exactly at a probe point".into(),
                ))
            }
        }
    }
    let mut hi = hi.ok_or_else(|| {
        Error::NoRoot(format!(
            "gap stays positive up to 1 - 2^-60 for L = {}; L is below the root threshold",
            format_rational(l)
        ))
    })?;

    let target = BigRational::new(BigInt::one(), BigInt::one() << precision_bits);
    while &hi - &lo > target {
        let mid = (&hi + &lo) / rational_two();
        match certified_sign(|p| sl_equation_gap(&mid, l, p))? {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => {
                return Err(Error::PrecisionExhausted(
                    "gap vanished exactly at a bisection midpoint".into(),
                ))
            }
        }
    }
    Ok(SlBracket {
        l: l.clone(),
        lo,
        hi,
        precision_bits,
    })
}

// ---------------------------------------------------------------------------
// local dimension profiles
// ---------------------------------------------------------------------------

/// Growth law for the digit logs `L(j) = ln B(j)` entering the profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LogDigitGrowth {
    /// `L(j) = j^gamma`, `gamma > 0`.
    Power {
        #[serde(with = "rational_string")]
        gamma: BigRational,
    },
    /// `L(j) = gamma^j`, `gamma > 1`.
    Geometric {
        #[serde(with = "rational_string")]
        gamma: BigRational,
    },
    /// `L(j) = e^j`.
    Exponential,
}

/// Query for a local dimension profile
/// `rho(n) = sum_(j<n) L(j) / (d sum_(j<=n) L(j) - (d-1) L(n))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileQuery {
    pub growth: LogDigitGrowth,
    /// Denominator weight `d > 1` (the decay exponent of the system).
    #[serde(with = "rational_string")]
    pub d: BigRational,
    pub n_max: u64,
}

impl ProfileQuery {
    pub fn validate(&self) -> Result<()> {
        if self.d <= BigRational::one() {
            return Err(Error::Domain(format!(
                "d must exceed 1, got {}",
                format_rational(&self.d)
            )));
        }
        if self.n_max == 0 {
            return Err(Error::Domain("n_max must be at least 1".into()));
        }
        match &self.growth {
            LogDigitGrowth::Power { gamma } => {
                if !gamma.is_positive() {
                    return Err(Error::Domain(format!(
                        "power exponent must be positive, got {}",
                        format_rational(gamma)
                    )));
                }
            }
            LogDigitGrowth::Geometric { gamma } => {
                if *gamma <= BigRational::one() {
                    return Err(Error::Domain(format!(
                        "geometric ratio must exceed 1, got {}",
                        format_rational(gamma)
                    )));
                }
            }
            LogDigitGrowth::Exponential => {}
        }
        Ok(())
    }
}

/// One profile row; `exact` is set when the whole computation stayed in
/// rational arithmetic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub n: u64,
    pub value: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactRational>,
}

/// Serde-friendly exact rational wrapper for optional row fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactRational(#[serde(with = "rational_string")] pub BigRational);

/// Tabulate `rho(n)` for `n = 1..=n_max`. Integer power exponents and all
/// geometric ratios run exactly in rationals; other laws run on balls.
pub fn local_dimension_profile(query: &ProfileQuery) -> Result<Vec<ProfileRow>> {
    query.validate()?;
    let exact_gamma = match &query.growth {
        LogDigitGrowth::Power { gamma } if gamma.is_integer() => Some(gamma.clone()),
        LogDigitGrowth::Geometric { gamma } => Some(gamma.clone()),
        _ => None,
    };
    if let Some(gamma) = exact_gamma {
        return profile_exact(query, &gamma);
    }
    profile_ball(query)
}

fn profile_exact(query: &ProfileQuery, gamma: &BigRational) -> Result<Vec<ProfileRow>> {
    let d = &query.d;
    let d_minus_one = d - BigRational::one();
    let geometric = matches!(query.growth, LogDigitGrowth::Geometric { .. });
    let power_exp = if geometric {
        0u32
    } else {
        gamma
            .to_integer()
            .to_u32()
            .ok_or_else(|| Error::Domain("power exponent too large for exact profile".into()))?
    };
    let mut rows = Vec::with_capacity(query.n_max as usize);
    let mut sum_prev = BigRational::zero();
    let mut term = BigRational::one();
    for n in 1..=query.n_max {
        let l_n = if geometric {
            term *= gamma;
            term.clone()
        } else {
            BigRational::from_integer(BigInt::from(n).pow(power_exp))
        };
        let sum_cur = &sum_prev + &l_n;
        let denom = d * &sum_cur - &d_minus_one * &l_n;
        let rho = &sum_prev / denom;
        rows.push(ProfileRow {
            n,
            value: rational_to_f64(&rho),
            exact: Some(ExactRational(rho)),
        });
        sum_prev = sum_cur;
    }
    Ok(rows)
}

fn profile_ball(query: &ProfileQuery) -> Result<Vec<ProfileRow>> {
    let prec = DEFAULT_PRECISION;
    let d_ball = BigReal::from_rational(&query.d, prec);
    let d_minus_one =
        BigReal::from_rational(&(&query.d - BigRational::one()), prec);
    let e = BigReal::one(prec).exp();
    let mut rows = Vec::with_capacity(query.n_max as usize);
    let mut sum_prev = BigReal::zero(prec);
    let mut exp_term = BigReal::one(prec);
    for n in 1..=query.n_max {
        let l_n = match &query.growth {
            LogDigitGrowth::Power { gamma } => {
                pow_rational(&BigReal::from_u64(n, prec), gamma, prec)?
            }
            LogDigitGrowth::Exponential => {
                exp_term = exp_term.mul(&e);
                exp_term.clone()
            }
            LogDigitGrowth::Geometric { .. } => {
                unreachable!("geometric profiles run exactly")
            }
        };
        let sum_cur = sum_prev.add(&l_n);
        let denom = d_ball.mul(&sum_cur).sub(&d_minus_one.mul(&l_n));
        let rho = sum_prev.div(&denom)?;
        rows.push(ProfileRow {
            n,
            value: rho.to_f64(),
            exact: None,
        });
        sum_prev = sum_cur;
    }
    Ok(rows)
}

/// Exact limit of `rho(n)` where one exists: `1/d` for power laws,
/// `1/(gamma + d - 1)` for geometric laws; `None` for the `e^j` law whose
/// limit `1/(e + d - 1)` is irrational.
pub fn profile_limit(growth: &LogDigitGrowth, d: &BigRational) -> Option<BigRational> {
    match growth {
        LogDigitGrowth::Power { .. } => Some(d.recip()),
        LogDigitGrowth::Geometric { gamma } => Some((gamma + d - BigRational::one()).recip()),
        LogDigitGrowth::Exponential => None,
    }
}

// ---------------------------------------------------------------------------
// piecewise dimension table
// ---------------------------------------------------------------------------

/// Closed-form Hausdorff dimension of the growth-rate level set for the
/// supported growth families, as a function of the decay exponent `d`:
///
/// * `exp(n^gamma)`: `1` for `gamma < 1/d`, `1/d` for `gamma >= 1/d` (the
///   value at the jump belongs to the lower branch);
/// * `exp(gamma^n)`, `gamma > 1`: `1/(gamma + d - 1)`;
/// * polynomial `n^gamma`, `gamma > 1`, at `d = 2` only: full dimension `1`.
pub fn piecewise_dimension(d: &BigRational, growth: &GrowthFunction) -> Result<BigRational> {
    if *d <= BigRational::one() {
        return Err(Error::Domain(format!(
            "decay exponent d must exceed 1, got {}",
            format_rational(d)
        )));
    }
    growth.validate()?;
    match growth {
        GrowthFunction::ExpPower { gamma } => {
            if *gamma < d.recip() {
                Ok(BigRational::one())
            } else {
                Ok(d.recip())
            }
        }
        GrowthFunction::ExpGeometric { gamma } => {
            Ok((gamma + d - BigRational::one()).recip())
        }
        GrowthFunction::Polynomial { gamma } => {
            if *d == rational_two() && *gamma > BigRational::one() {
                Ok(BigRational::one())
            } else {
                Err(Error::Unsupported(format!(
                    "no closed-form dimension for polynomial growth {} at d = {}",
                    format_rational(gamma),
                    format_rational(d)
                )))
            }
        }
        other => Err(Error::Unsupported(format!(
            "no closed-form dimension for growth {other}"
        ))),
    }
}

/// Growth family tags for the dimension-vs-gamma table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Figure1Family {
    ExpPower,
    Polynomial,
    ExpGeometric,
}

impl fmt::Display for Figure1Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Figure1Family::ExpPower => write!(f, "exp-power"),
            Figure1Family::Polynomial => write!(f, "polynomial"),
            Figure1Family::ExpGeometric => write!(f, "exp-geometric"),
        }
    }
}

/// One row of the dimension table at `d = 2`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Figure1Row {
    #[serde(with = "rational_string")]
    pub gamma: BigRational,
    pub family: Figure1Family,
    #[serde(with = "rational_string")]
    pub dim: BigRational,
    /// Marks the exp-power row at the jump point `gamma = 1/2`.
    pub at_jump: bool,
}

/// Dimension-vs-gamma table at `d = 2`, family-major in the order
/// exp-power, polynomial, exp-geometric. Gammas outside a family's domain
/// (polynomial and geometric need `gamma > 1`) are skipped, not errors.
pub fn figure1_data(grid: &[BigRational]) -> Result<Vec<Figure1Row>> {
    if grid.is_empty() {
        return Err(Error::Domain("gamma grid must be non-empty".into()));
    }
    for gamma in grid {
        if !gamma.is_positive() {
            return Err(Error::Domain(format!(
                "gamma grid entries must be positive, got {}",
                format_rational(gamma)
            )));
        }
    }
    let two = rational_two();
    let half = rational_half();
    let one = BigRational::one();
    let mut rows = Vec::new();
    for family in [
        Figure1Family::ExpPower,
        Figure1Family::Polynomial,
        Figure1Family::ExpGeometric,
    ] {
        for gamma in grid {
            let growth = match family {
                Figure1Family::ExpPower => GrowthFunction::ExpPower {
                    gamma: gamma.clone(),
                },
                Figure1Family::Polynomial => {
                    if *gamma <= one {
                        continue;
                    }
                    GrowthFunction::Polynomial {
                        gamma: gamma.clone(),
                    }
                }
                Figure1Family::ExpGeometric => {
                    if *gamma <= one {
                        continue;
                    }
                    GrowthFunction::ExpGeometric {
                        gamma: gamma.clone(),
                    }
                }
            };
            let dim = piecewise_dimension(&two, &growth)?;
            rows.push(Figure1Row {
                gamma: gamma.clone(),
                family,
                dim,
                at_jump: family == Figure1Family::ExpPower && *gamma == half,
            });
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// finite-depth estimates
// ---------------------------------------------------------------------------

/// How to pick the "typical" cylinder whose length normalizes the count.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TypicalCylinder {
    /// Deterministic: the midpoint digit of every window.
    Midpoint,
    /// Geometric mean of lengths over uniformly sampled window digits.
    SampledGeometricMean { samples: u64, seed: u64 },
}

/// Finite-depth dimension estimate
/// `sum_j ln #window(j) / (-ln |typical depth-n cylinder|)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DepthDimensionEstimate {
    pub depth: u64,
    /// `sum_(j<=depth) ln #window(j)` (indices before the window start
    /// contribute a single forced digit, count 1).
    pub log_cylinder_count: f64,
    /// `-ln` of the typical cylinder length at this depth.
    pub neg_log_typical_length: f64,
    pub estimate: f64,
}

/// Count-over-length estimate at a finite depth of a window construction.
///
/// These converge slowly (the window at index `j` has about
/// `log B(j) ~ j^gamma` bits, so the truncation error decays like `1/n`
/// at gamma = 1), which is exactly what the estimate is for: watching the
/// drift toward the limiting exponent.
pub fn finite_depth_dimension(
    spec: &WindowSpec,
    depth: u64,
    typical: &TypicalCylinder,
) -> Result<DepthDimensionEstimate> {
    spec.validate()?;
    if depth == 0 {
        return Err(Error::Domain("depth must be at least 1".into()));
    }
    let prec = REPORT_PRECISION;
    let one = BigUint::one();
    let mut log_count = BigReal::zero(prec);
    let mut mid_digits: Vec<BigUint> = Vec::with_capacity(depth as usize);
    for j in 1..=depth {
        if j < spec.start {
            mid_digits.push(one.clone());
            continue;
        }
        let window = digit_window(spec, j)?;
        let count = window.count();
        if count > one {
            let count_real = BigReal::from_bigint(&BigInt::from(count), prec);
            log_count = log_count.add(&count_real.ln()?);
        }
        mid_digits.push((&window.lo + &window.hi) >> 1);
    }
    let neg_log_len = match typical {
        TypicalCylinder::Midpoint => neg_log_cylinder_length(&mid_digits, prec)?,
        TypicalCylinder::SampledGeometricMean { samples, seed } => {
            if *samples == 0 {
                return Err(Error::Domain("sample count must be at least 1".into()));
            }
            let mut acc = BigReal::zero(prec);
            for r in 0..*samples {
                let mut stream = stream_b(
                    spec.clone(),
                    WindowPolicy::Random {
                        seed: seed.wrapping_add(r),
                    },
                )?;
                let digits = stream.take_digits(depth)?;
                acc = acc.add(&neg_log_cylinder_length(&digits, prec)?);
            }
            acc.div(&BigReal::from_u64(*samples, prec))?
        }
    };
    let estimate = log_count.div(&neg_log_len)?;
    Ok(DepthDimensionEstimate {
        depth,
        log_cylinder_count: log_count.to_f64(),
        neg_log_typical_length: neg_log_len.to_f64(),
        estimate: estimate.to_f64(),
    })
}

fn neg_log_cylinder_length(digits: &[BigUint], prec: u64) -> Result<BigReal> {
    let word = DigitWord::new(digits.to_vec())?;
    let length = cf::cylinder(&word).length();
    Ok(BigReal::from_rational(&length, prec).ln()?.neg())
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::CoefFn;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn scheme(
        gamma: BigRational,
        s: BigRational,
        subsequence: Subsequence,
        k_max: u64,
    ) -> CoverScheme {
        CoverScheme {
            gamma,
            epsilon: rat(1, 10),
            s,
            subsequence,
            k_max,
        }
    }

    #[test]
    fn cover_scheme_validation_bounds() {
        let base = scheme(rat(3, 4), rat(3, 5), Subsequence::PowerGamma, 10);
        assert!(base.validate().is_ok());

        let mut bad = base.clone();
        bad.s = rat(1, 2);
        assert!(matches!(bad.validate(), Err(Error::Domain(_))));
        bad.s = rat(1, 1);
        assert!(matches!(bad.validate(), Err(Error::Domain(_))));

        // (e-1)/(e+1) = 0.46211...: 0.47 is out, 0.46 is in.
        let mut eps = base.clone();
        eps.epsilon = rat(47, 100);
        assert!(matches!(eps.validate(), Err(Error::Domain(_))));
        eps.epsilon = rat(23, 50);
        assert!(eps.validate().is_ok());

        let mut gamma = base.clone();
        gamma.gamma = rat(0, 1);
        assert!(matches!(gamma.validate(), Err(Error::Domain(_))));

        let mut k = base.clone();
        k.k_max = 0;
        assert!(matches!(k.validate(), Err(Error::Domain(_))));

        let mut sub = base;
        sub.subsequence = Subsequence::SquareOverL { l: rat(0, 1) };
        assert!(matches!(sub.validate(), Err(Error::Domain(_))));
    }

    #[test]
    fn cover_scheme_indices_round_and_dedup() {
        // gamma = 1: n_k = k exactly.
        let s = scheme(rat(1, 1), rat(3, 4), Subsequence::PowerGamma, 10);
        assert_eq!(s.indices().unwrap(), (1..=10).collect::<Vec<u64>>());

        // gamma = 2: n_k = sqrt(k), rounded: 1,1,2,2,2,2,3,3,3,3 -> [1,2,3].
        let s = scheme(rat(2, 1), rat(3, 4), Subsequence::PowerGamma, 10);
        assert_eq!(s.indices().unwrap(), vec![1, 2, 3]);

        // gamma = 1/3: n_k = k^3 exactly (integer inverse exponent path).
        let s = scheme(rat(1, 3), rat(3, 4), Subsequence::PowerGamma, 4);
        assert_eq!(s.indices().unwrap(), vec![1, 8, 27, 64]);

        // L = 10: k^2/100 rounds to 0 through k = 7, then 1, 1, 1, ...
        let s = scheme(
            rat(1, 2),
            rat(3, 4),
            Subsequence::SquareOverL { l: rat(10, 1) },
            16,
        );
        assert_eq!(s.indices().unwrap(), vec![1, 2, 3]);

        // Largest quotient, gamma = 1: n_ell = ell (ln ell); ell = 1 gives 0
        // and is skipped, ell = 2 gives 2 ln 2 = 1.386 -> 1, ell = 3 gives
        // 3.296 -> 3, ell = 4 -> 5.545 -> 6.
        let s = scheme(rat(1, 1), rat(3, 4), Subsequence::LargestQuotient, 4);
        assert_eq!(s.indices().unwrap(), vec![1, 3, 6]);
    }

    #[test]
    fn cover_sum_factors_match_closed_forms() {
        // Square ladder: delta_ell = (2 ell - 1)/L^2 exactly.
        let s = scheme(
            rat(1, 2),
            rat(9, 10),
            Subsequence::SquareOverL { l: rat(10, 1) },
            20,
        );
        let report = cover_sum_terms(&s).unwrap();
        for row in &report.rows {
            let expected = (2 * row.ell - 1) as f64 / 100.0;
            assert!(
                (row.delta - expected).abs() < 1e-12,
                "delta at ell = {}: {} vs {}",
                row.ell,
                row.delta,
                expected
            );
        }

        // gamma = 1 power ladder: delta = 1 exactly, and the running log
        // product is the cumulative sum of the log factors.
        let s = scheme(rat(1, 1), rat(3, 4), Subsequence::PowerGamma, 50);
        let report = cover_sum_terms(&s).unwrap();
        let mut acc = 0.0;
        for row in &report.rows {
            assert_eq!(row.delta, 1.0);
            acc += row.log_factor;
            assert!(
                (row.running_log_product - acc).abs() < 1e-9,
                "running product drifted at ell = {}",
                row.ell
            );
        }
        // ln C(1.5) = ln(4.5 * (2 + 2.6123...)) = 3.033; c0 = ln r1 +
        // 1.5 ln r2 = -2.068 - 1.054 = -3.122; t(1) = -0.5 + 3.033 - 3.122
        // < 0, so the whole run is negative and certified from index 1.
        assert_eq!(report.verdict, Verdict::BoundedTrend);
        assert_eq!(report.certified_from, 1);
        assert!(report.tail_window_negative);
        assert!(report.rows[0].log_factor < 0.0);
        assert!((report.log_c - 3.0327).abs() < 1e-3);
        assert!((report.log_r1 - (-2.0684)).abs() < 1e-3);
        assert!((report.log_r2 - (-0.7026)).abs() < 1e-3);
    }

    #[test]
    fn cover_sum_verdicts_certified_by_envelopes() {
        // gamma = 3/4, s = 3/5: crossover near ell = 92, so at k_max = 200
        // the tail window is already negative.
        let report = cover_sum_terms(&scheme(
            rat(3, 4),
            rat(3, 5),
            Subsequence::PowerGamma,
            200,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::BoundedTrend);
        assert!(report.tail_window_negative);
        assert!(report.rows.last().unwrap().log_factor < 0.0);

        // Same ladder, s barely above 1/2: still bounded, but the finite
        // run only shows growth (crossover near ell = 7000).
        let report = cover_sum_terms(&scheme(
            rat(3, 4),
            rat(51, 100),
            Subsequence::PowerGamma,
            50,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::BoundedTrend);
        assert!(!report.tail_window_negative);
        assert!(report.rows[0].log_factor > 0.0);
        assert!(report.rows.last().unwrap().log_factor > 0.0);

        // gamma = 3/5, s = 11/20 at k_max = 500: bounded trend even though
        // every tabulated increment is still positive (crossover ~ 3e5).
        let report = cover_sum_terms(&scheme(
            rat(3, 5),
            rat(11, 20),
            Subsequence::PowerGamma,
            500,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::BoundedTrend);
        assert!(!report.tail_window_negative);
        assert!(report.rows.last().unwrap().log_factor > 0.0);
        assert!(report.certified_from > 500);

        // gamma = 9/10, s = 11/20: crossover near ell = 72.
        let report = cover_sum_terms(&scheme(
            rat(9, 10),
            rat(11, 20),
            Subsequence::PowerGamma,
            500,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::BoundedTrend);
        assert!(report.tail_window_negative);

        // gamma < 1/2 and gamma = 1/2 power ladders diverge: the C-exponent
        // grows at least linearly while the favorable slope is only linear
        // with a smaller constant.
        let report = cover_sum_terms(&scheme(
            rat(2, 5),
            rat(3, 4),
            Subsequence::PowerGamma,
            20,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::DivergingTrend);
        assert!(!report.tail_window_negative);

        let report = cover_sum_terms(&scheme(
            rat(1, 2),
            rat(3, 4),
            Subsequence::PowerGamma,
            20,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::DivergingTrend);

        // Square ladder over L = 10: slope sigma = (1-2s)/L + 2 ln C / L^2.
        // s = 9/10: sigma = -0.08 + 0.0572 < 0 -> bounded from the start.
        let report = cover_sum_terms(&scheme(
            rat(1, 2),
            rat(9, 10),
            Subsequence::SquareOverL { l: rat(10, 1) },
            100,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::BoundedTrend);
        assert_eq!(report.certified_from, 1);
        assert!(report.tail_window_negative);

        // s = 11/20: sigma = -0.01 + 0.0807 > 0 -> diverging.
        let report = cover_sum_terms(&scheme(
            rat(1, 2),
            rat(11, 20),
            Subsequence::SquareOverL { l: rat(10, 1) },
            100,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::DivergingTrend);
        assert!(!report.tail_window_negative);

        // Largest-quotient ladders: gamma = 1 bounded, gamma <= 1/2 diverging.
        let report = cover_sum_terms(&scheme(
            rat(1, 1),
            rat(3, 4),
            Subsequence::LargestQuotient,
            50,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::BoundedTrend);

        let report = cover_sum_terms(&scheme(
            rat(1, 2),
            rat(3, 4),
            Subsequence::LargestQuotient,
            20,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::DivergingTrend);

        let report = cover_sum_terms(&scheme(
            rat(2, 5),
            rat(3, 4),
            Subsequence::LargestQuotient,
            20,
        ))
        .unwrap();
        assert_eq!(report.verdict, Verdict::DivergingTrend);
    }

    #[test]
    fn solve_sl_brackets_shrink_and_decrease() {
        let ls = [20i64, 50, 100, 1000, 10000];
        let target = BigRational::new(BigInt::one(), BigInt::one() << 30);
        let mut brackets = Vec::new();
        for l in ls {
            let b = solve_sl(&rat(l, 1), 30).unwrap();
            assert!(b.width() <= target, "bracket too wide for L = {l}");
            // Residual at the midpoint: |gap| <= sup|gap'| * width / 2, and
            // |gap'| <= L + zeta pole term, comfortably below 1e-4 here.
            let mid = b.midpoint();
            let residual = sl_equation_gap(&mid, &rat(l, 1), 160).unwrap().to_f64();
            assert!(
                residual.abs() < 1e-4,
                "midpoint residual {residual} too large for L = {l}"
            );
            brackets.push(b);
        }
        // s_20 ~ 0.66 sits inside (0.55, 0.9).
        assert!(brackets[0].lo > rat(11, 20));
        assert!(brackets[0].hi < rat(9, 10));
        // Strictly decreasing in L, with disjoint brackets.
        for pair in brackets.windows(2) {
            assert!(
                pair[0].lo > pair[1].hi,
                "s_L not strictly decreasing between L = {} and L = {}",
                format_rational(&pair[0].l),
                format_rational(&pair[1].l)
            );
        }
        // s_10000 has dropped below 0.51.
        assert!(brackets[4].hi < rat(51, 100));
    }

    #[test]
    fn solve_sl_reports_no_root_below_threshold() {
        // The threshold is L = 2 ln((9/2)(2 + zeta(2))) ~ 5.595: below it
        // the gap is positive on all of (1/2, 1).
        assert!(matches!(solve_sl(&rat(5, 1), 30), Err(Error::NoRoot(_))));
        assert!(matches!(solve_sl(&rat(1, 1), 30), Err(Error::NoRoot(_))));
        assert!(matches!(solve_sl(&rat(-3, 1), 30), Err(Error::Domain(_))));
        assert!(matches!(solve_sl(&rat(20, 1), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn profile_rows_match_exact_rationals() {
        // Power gamma = 1, d = 2: rho(n) = (sum_(j<n) j) / (2 sum_(j<=n) j - n)
        // = (n(n-1)/2) / (n^2 + n - ... ) simplifies to (n-1)/(2n).
        let query = ProfileQuery {
            growth: LogDigitGrowth::Power { gamma: rat(1, 1) },
            d: rat(2, 1),
            n_max: 100,
        };
        let rows = local_dimension_profile(&query).unwrap();
        assert_eq!(rows.len(), 100);
        assert_eq!(rows[0].exact.as_ref().unwrap().0, rat(0, 1));
        assert_eq!(rows[1].exact.as_ref().unwrap().0, rat(1, 4));
        // n = 100: 4950 / (2 * 5050 - 100) = 4950/10000.
        assert_eq!(rows[99].exact.as_ref().unwrap().0, rat(4950, 10000));
        for row in &rows {
            let expected = rat(row.n as i64 - 1, 2 * row.n as i64);
            assert_eq!(row.exact.as_ref().unwrap().0, expected);
        }

        // Geometric gamma = 2, d = 2, n = 20:
        // numerator sum_(j=1)^(19) 2^j = 2^20 - 2, denominator
        // 2 (2^21 - 2) - 2^20 = 3 * 2^20 - 4.
        let query = ProfileQuery {
            growth: LogDigitGrowth::Geometric { gamma: rat(2, 1) },
            d: rat(2, 1),
            n_max: 20,
        };
        let rows = local_dimension_profile(&query).unwrap();
        assert_eq!(
            rows[19].exact.as_ref().unwrap().0,
            rat(1_048_574, 3_145_724)
        );
    }

    #[test]
    fn profile_tracks_known_limits() {
        // Power law at d = 2: |rho(n) - 1/2| = 1/(2n) <= 1/n for all n.
        let query = ProfileQuery {
            growth: LogDigitGrowth::Power { gamma: rat(1, 1) },
            d: rat(2, 1),
            n_max: 2000,
        };
        let limit = profile_limit(&query.growth, &query.d).unwrap();
        assert_eq!(limit, rat(1, 2));
        for row in local_dimension_profile(&query).unwrap() {
            let gap = (&row.exact.as_ref().unwrap().0 - &limit).abs();
            assert!(gap <= rat(1, row.n as i64));
        }

        // Non-integer power exponent on the ball path: gamma = 3/2, d = 2.
        // The deviation |rho(n) - 1/2| looks like C/n; fit C on n in
        // [10, 1000] and check the bound holds through n = 10000.
        let query = ProfileQuery {
            growth: LogDigitGrowth::Power { gamma: rat(3, 2) },
            d: rat(2, 1),
            n_max: 10_000,
        };
        let rows = local_dimension_profile(&query).unwrap();
        let mut c_fit: f64 = 0.0;
        for row in &rows[9..1000] {
            c_fit = c_fit.max((row.value - 0.5).abs() * row.n as f64);
        }
        for row in &rows {
            if row.n >= 10 {
                let bound = 1.05 * c_fit / row.n as f64;
                assert!(
                    (row.value - 0.5).abs() <= bound,
                    "1/n envelope violated at n = {}",
                    row.n
                );
            }
        }

        // Generalized d: power laws approach 1/d, geometric laws approach
        // 1/(gamma + d - 1), all within 1e-2 by n = 1000.
        for (growth, d) in [
            (LogDigitGrowth::Power { gamma: rat(1, 1) }, rat(3, 1)),
            (LogDigitGrowth::Power { gamma: rat(3, 2) }, rat(3, 1)),
            (LogDigitGrowth::Geometric { gamma: rat(2, 1) }, rat(2, 1)),
            (LogDigitGrowth::Geometric { gamma: rat(3, 2) }, rat(2, 1)),
            (LogDigitGrowth::Geometric { gamma: rat(3, 2) }, rat(3, 1)),
        ] {
            let query = ProfileQuery {
                growth: growth.clone(),
                d: d.clone(),
                n_max: 1000,
            };
            let limit = rational_to_f64(&profile_limit(&growth, &d).unwrap());
            let rows = local_dimension_profile(&query).unwrap();
            assert!(
                (rows.last().unwrap().value - limit).abs() < 1e-2,
                "profile far from limit for {growth:?}, d = {}",
                format_rational(&d)
            );
        }

        // e^j growth: limit 1/(e + 1) = 0.26894..., irrational, reached
        // geometrically fast.
        let query = ProfileQuery {
            growth: LogDigitGrowth::Exponential,
            d: rat(2, 1),
            n_max: 60,
        };
        assert!(profile_limit(&query.growth, &query.d).is_none());
        let rows = local_dimension_profile(&query).unwrap();
        assert!((rows.last().unwrap().value - 0.268_941_421_369_995).abs() < 1e-9);

        // Validation.
        let bad = ProfileQuery {
            growth: LogDigitGrowth::Geometric { gamma: rat(1, 1) },
            d: rat(2, 1),
            n_max: 5,
        };
        assert!(matches!(
            local_dimension_profile(&bad),
            Err(Error::Domain(_))
        ));
        let bad = ProfileQuery {
            growth: LogDigitGrowth::Power { gamma: rat(1, 1) },
            d: rat(1, 1),
            n_max: 5,
        };
        assert!(matches!(
            local_dimension_profile(&bad),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn piecewise_dimension_table_and_jump() {
        let two = rat(2, 1);
        // exp(n^gamma) at d = 2: dimension 1 below gamma = 1/2, then 1/2,
        // with the jump value on the lower branch.
        for (gamma, expected) in [
            (rat(3, 10), rat(1, 1)),
            (rat(1, 2), rat(1, 2)),
            (rat(7, 10), rat(1, 2)),
            (rat(3, 2), rat(1, 2)),
        ] {
            let growth = GrowthFunction::ExpPower { gamma };
            assert_eq!(piecewise_dimension(&two, &growth).unwrap(), expected);
        }
        // exp(gamma^n): 1/(gamma + 1) at d = 2.
        for (gamma, expected) in [(rat(2, 1), rat(1, 3)), (rat(3, 1), rat(1, 4))] {
            let growth = GrowthFunction::ExpGeometric { gamma };
            assert_eq!(piecewise_dimension(&two, &growth).unwrap(), expected);
        }
        // Polynomial growth keeps full dimension at d = 2 only.
        let poly = GrowthFunction::Polynomial { gamma: rat(2, 1) };
        assert_eq!(piecewise_dimension(&two, &poly).unwrap(), rat(1, 1));
        assert!(matches!(
            piecewise_dimension(&rat(3, 1), &poly),
            Err(Error::Unsupported(_))
        ));
        // At d = 3 the jump moves to gamma = 1/3.
        let growth = GrowthFunction::ExpPower { gamma: rat(1, 4) };
        assert_eq!(piecewise_dimension(&rat(3, 1), &growth).unwrap(), rat(1, 1));
        let growth = GrowthFunction::ExpPower { gamma: rat(1, 3) };
        assert_eq!(piecewise_dimension(&rat(3, 1), &growth).unwrap(), rat(1, 3));
        // Unsupported families.
        let lin = GrowthFunction::Linear { gamma: rat(1, 1) };
        assert!(matches!(
            piecewise_dimension(&two, &lin),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn figure1_table_has_single_jump() {
        // Fine grid gamma = k/10, k = 1..20: the exp-power branch changes
        // value exactly once, between gamma = 0.4 and gamma = 0.5.
        let grid: Vec<BigRational> = (1..=20).map(|k| rat(k, 10)).collect();
        let rows = figure1_data(&grid).unwrap();
        let exp_power: Vec<&Figure1Row> = rows
            .iter()
            .filter(|r| r.family == Figure1Family::ExpPower)
            .collect();
        assert_eq!(exp_power.len(), 20);
        let mut changes = Vec::new();
        for pair in exp_power.windows(2) {
            if pair[0].dim != pair[1].dim {
                changes.push((pair[0].gamma.clone(), pair[1].gamma.clone()));
            }
        }
        assert_eq!(changes, vec![(rat(4, 10), rat(5, 10))]);
        for row in &exp_power {
            assert_eq!(row.at_jump, row.gamma == rat(1, 2));
        }
        // Polynomial and geometric branches exist only for gamma > 1 and
        // are constant-in-shape: 1 and 1/(gamma + 1).
        let poly: Vec<&Figure1Row> = rows
            .iter()
            .filter(|r| r.family == Figure1Family::Polynomial)
            .collect();
        assert_eq!(poly.len(), 10); // gamma = 1.1 .. 2.0
        assert!(poly.iter().all(|r| r.dim == rat(1, 1)));
        let geo: Vec<&Figure1Row> = rows
            .iter()
            .filter(|r| r.family == Figure1Family::ExpGeometric)
            .collect();
        assert_eq!(geo.len(), 10);
        for row in &geo {
            assert_eq!(row.dim, (&row.gamma + rat(1, 1)).recip());
        }
        // Family-major ordering: all exp-power rows come first.
        assert!(rows[..20]
            .iter()
            .all(|r| r.family == Figure1Family::ExpPower));
    }

    fn window_spec(gamma: BigRational, lower: CoefFn, upper: CoefFn) -> WindowSpec {
        WindowSpec {
            gamma,
            lower,
            upper,
            start: 1,
        }
    }

    #[test]
    fn finite_depth_estimates_drift_toward_half() {
        // Windows (e^(n), 2 e^(n)): counts ~ e^n, lengths ~ e^(-2 sum),
        // so the estimate climbs toward 1/2 like 1 - c/n.
        let spec = window_spec(
            rat(1, 1),
            CoefFn::Const { value: rat(1, 1) },
            CoefFn::Const { value: rat(2, 1) },
        );
        let d15 = finite_depth_dimension(&spec, 15, &TypicalCylinder::Midpoint).unwrap();
        let d30 = finite_depth_dimension(&spec, 30, &TypicalCylinder::Midpoint).unwrap();
        let d60 = finite_depth_dimension(&spec, 60, &TypicalCylinder::Midpoint).unwrap();
        assert!(d30.estimate > 0.45 && d30.estimate < 0.5);
        assert!(d60.estimate < 0.5);
        assert!((d60.estimate - 0.5).abs() < (d15.estimate - 0.5).abs());
        assert!(d15.estimate < d30.estimate && d30.estimate < d60.estimate);

        // Sampled geometric mean stays close to the midpoint estimate.
        let sampled = finite_depth_dimension(
            &spec,
            20,
            &TypicalCylinder::SampledGeometricMean {
                samples: 10,
                seed: 7,
            },
        )
        .unwrap();
        let mid = finite_depth_dimension(&spec, 20, &TypicalCylinder::Midpoint).unwrap();
        assert!((sampled.estimate - mid.estimate).abs() < 0.05);
        assert!(sampled.estimate > 0.4);
    }

    #[test]
    fn finite_depth_degenerate_and_empty_windows() {
        // Windows (e^n, e^n + 1) contain exactly one integer, so the count
        // sum is exactly zero and the estimate is exactly 0.
        let spec = window_spec(
            rat(1, 1),
            CoefFn::Const { value: rat(1, 1) },
            CoefFn::ConstPlusExpNeg { base: rat(1, 1) },
        );
        let est = finite_depth_dimension(&spec, 12, &TypicalCylinder::Midpoint).unwrap();
        assert_eq!(est.log_cylinder_count, 0.0);
        assert_eq!(est.estimate, 0.0);

        // A window too thin to hold any integer reports which index failed.
        let spec = window_spec(
            rat(1, 1),
            CoefFn::Const { value: rat(1, 1) },
            CoefFn::Const {
                value: rat(1001, 1000),
            },
        );
        match finite_depth_dimension(&spec, 5, &TypicalCylinder::Midpoint) {
            Err(Error::EmptyWindow { index }) => assert_eq!(index, 1),
            other => panic!("expected EmptyWindow, got {other:?}"),
        }

        // Depth zero is rejected.
        let spec = window_spec(
            rat(1, 1),
            CoefFn::Const { value: rat(1, 1) },
            CoefFn::Const { value: rat(2, 1) },
        );
        assert!(matches!(
            finite_depth_dimension(&spec, 0, &TypicalCylinder::Midpoint),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn dimension_params_roundtrip_as_json() {
        let s = scheme(
            rat(3, 4),
            rat(3, 5),
            Subsequence::SquareOverL { l: rat(10, 1) },
            25,
        );
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<CoverScheme>(&json).unwrap(), s);

        let q = ProfileQuery {
            growth: LogDigitGrowth::Geometric { gamma: rat(5, 2) },
            d: rat(3, 1),
            n_max: 40,
        };
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(serde_json::from_str::<ProfileQuery>(&json).unwrap(), q);

        let t = TypicalCylinder::SampledGeometricMean {
            samples: 8,
            seed: 11,
        };
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<TypicalCylinder>(&json).unwrap(), t);
        assert!(json.contains("sampled-geometric-mean"));
    }
}
