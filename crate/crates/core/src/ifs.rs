//! d-decaying Gauss-like infinite iterated function systems on the unit
//! interval: an explicit affine model with weights `i^{-d}/zeta(d)`, the
//! Gauss-map branches `x -> 1/(i+x)` as the 2-decaying prototype, certified
//! checks of the decay/contraction/tiling conditions, projection of digit
//! words to points, symbolic expansion of points back to digit words, and
//! the dimension predicted for prescribed digit growth.
//!
//! Branch order is decreasing: `f_i(x) > f_j(x)` for `i < j`, so the branch
//! images `[T_{i+1}, T_i]` tile `(0, 1]` from the right, exactly as the
//! Gauss branches `1/(i+x)` do. (Some accounts state the opposite
//! inequality for decaying systems; it contradicts the Gauss prototype
//! those systems generalize, so the prototype wins and the discrepancy is
//! noted here instead of being silently resolved.)
//!
//! Projection folds a word right to left starting from the exact point 1,
//! so the projected point of a finite word always lands on a branch-image
//! endpoint: `f_i(1)` is both the bottom of the image of `f_i` and the top
//! of the image of `f_{i+1}`. Interval arithmetic alone can therefore never
//! certify the final digit of such a point. Expansion resolves endpoint
//! ties toward the branch whose preimage is exactly 1 — the lower digit —
//! which reads off the dual endpoint representation
//! `[a_1, ..., a_{k-1}, a_k - 1, 1]` of a terminating word and makes the
//! projection/expansion roundtrip exact whenever the input is exact: any
//! rational or projected word under the Gauss system, and the same under
//! affine systems with integer `d`, where every coordinate lives in the
//! ring of Laurent polynomials in `u = 1/zeta(d)` with rational
//! coefficients (a tie is then literally the zero polynomial). Points
//! supplied as plain enclosures get one certified pass and report
//! [`Error::AmbiguousBoundary`] when a branch boundary cannot be separated
//! from the enclosure.
//!
//! The union of branch images is `(0, 1]`: the top point 1 is `f_1(0)` and
//! expands as the single digit 1 after which the expansion terminates,
//! while 0 is the unattained limit of the branch tails.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cf::DigitWord;
use crate::compsum::{
    composition_sum_table, generalized_bound_constant, LemmaReport, LemmaViolation, RationalParam,
};
use crate::dimension::{
    local_dimension_profile, piecewise_dimension, LogDigitGrowth, ProfileQuery, ProfileRow,
};
use crate::error::{Error, Result};
use crate::numerics::{
    pow_rational, rational_string, zeta, BigReal, GrowthFunction, MAX_PRECISION,
};

/// Default ball precision (bits) for system tables and projection.
pub const DEFAULT_IFS_PRECISION: u64 = 192;

/// Branch-condition checks run up to this index when a system is built.
const BUILD_CHECK_BRANCHES: u64 = 1_000;

/// Weight/tail tables are precomputed up to this branch index; beyond it,
/// tails fall back to the integral-remainder enclosure (wider but still
/// certified) and weights are computed on demand.
const PREFIX_TABLE_LEN: u64 = 1_024;

/// The exact expansion kernel refuses branch indices beyond this (its
/// rational prefix sums grow linearly with the index).
const EXACT_PREFIX_LIMIT: u64 = 100_000;

/// The galloping branch search gives up past this index: a point that far
/// into the tail is indistinguishable from 0 at any supported precision.
const MAX_BRANCH_INDEX: u64 = 1 << 40;

/// Starting precision for sign evaluation of exact Laurent coordinates.
/// Coefficient magnitudes stay below `(i^d (1 + P_i))^depth`, so this rung
/// already separates every non-tie that occurs for moderate words; genuine
/// ties short-circuit earlier as the zero polynomial.
const SIGN_START_PRECISION: u64 = 448;

fn rat_u64(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rational_half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Default `eps` grid for the decay-envelope check at build time.
pub fn default_epsilons() -> Vec<BigRational> {
    vec![rational_half()]
}

// ---------------------------------------------------------------------------
// System specification (serializable)
// ---------------------------------------------------------------------------

/// Serializable system choice, in the same JSON style as the construction
/// configs: a model tag plus its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "kebab-case")]
pub enum SystemSpec {
    /// Affine Gauss-like model with weights `i^{-d}/zeta(d)`.
    AffineZeta {
        #[serde(with = "rational_string")]
        d: BigRational,
        precision: u64,
    },
    /// The Gauss-map branches `x -> 1/(i+x)`.
    Gauss,
}

impl SystemSpec {
    pub fn build(&self) -> Result<DDecayingSystem> {
        match self {
            SystemSpec::AffineZeta { d, precision } => {
                Ok(build_affine(d, *precision)?.into_system())
            }
            SystemSpec::Gauss => gauss_as_ddecaying(),
        }
    }
}

// ---------------------------------------------------------------------------
// The affine model
// ---------------------------------------------------------------------------

/// The explicit affine d-decaying model: branch `i` has constant slope
/// magnitude `w_i = i^{-d}/zeta(d)` and maps `[0, 1]` onto `[T_{i+1}, T_i]`
/// by `f_i(x) = T_{i+1} + w_i (1 - x)`, where `T_i = sum_{j >= i} w_j`.
/// The weights sum to exactly 1, so `T_1 = 1` and the images tile `(0, 1]`
/// in decreasing order. Every derivative bound is attained (`|f_i'| = w_i`),
/// which makes each decay condition certifiable rather than merely
/// plausible.
#[derive(Clone, Debug)]
pub struct AffineGaussLike {
    d: BigRational,
    precision: u64,
    zeta_d: BigReal,
    /// `ipow[i]` encloses `i^{-d}` for `1 <= i <= PREFIX_TABLE_LEN`
    /// (entry 0 is an unused placeholder).
    ipow: Vec<BigReal>,
    /// `prefix[k]` encloses `sum_{j <= k} j^{-d}`; `prefix[0]` is exactly 0.
    prefix: Vec<BigReal>,
    /// `1/zeta(d)` at [`SIGN_START_PRECISION`], precomputed when `d` is an
    /// integer so the exact expansion kernel does not re-evaluate zeta on
    /// every call.
    sign_u: Option<BigReal>,
    contraction: BigReal,
    conditions: ConditionReport,
}

impl AffineGaussLike {
    pub fn d(&self) -> &BigRational {
        &self.d
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    pub fn zeta_d(&self) -> &BigReal {
        &self.zeta_d
    }

    /// The branch-condition report certified at build time.
    pub fn conditions(&self) -> &ConditionReport {
        &self.conditions
    }

    /// `w_i = i^{-d}/zeta(d)`.
    pub fn weight(&self, i: u64) -> Result<BigReal> {
        self.ipow_ball(i)?.div(&self.zeta_d)
    }

    /// `T_i = sum_{j >= i} w_j = 1 - (sum_{j < i} j^{-d})/zeta(d)`.
    ///
    /// For `i` beyond the precomputed table the partial sum is replaced by
    /// the integral-remainder enclosure
    /// `sum_{k >= i} k^{-d} in [i^{1-d}/(d-1), i^{1-d}/(d-1) + i^{-d}]`,
    /// which is wider (width about `i^{-d}`) but still certified.
    pub fn tail(&self, i: u64) -> Result<BigReal> {
        if i == 0 {
            return Err(Error::Domain("branch indices start at 1".into()));
        }
        let prec = self.precision;
        if i - 1 < self.prefix.len() as u64 {
            let partial = self.prefix[(i - 1) as usize].div(&self.zeta_d)?;
            return Ok(BigReal::one(prec).sub(&partial));
        }
        let d_minus_one = &self.d - BigRational::one();
        let integral = pow_rational(&BigReal::from_u64(i, prec), &-d_minus_one.clone(), prec)?
            .div(&BigReal::from_rational(&d_minus_one, prec))?;
        let rest = integral.hull(&integral.add(&self.ipow_ball(i)?));
        rest.div(&self.zeta_d)
    }

    /// `f_i(x) = T_{i+1} + w_i (1 - x)`.
    pub fn apply(&self, i: u64, x: &BigReal) -> Result<BigReal> {
        let prec = self.precision;
        let spread = BigReal::one(prec).sub(x);
        Ok(self.tail(i + 1)?.add(&self.weight(i)?.mul(&spread)))
    }

    /// Wraps the model as a [`DDecayingSystem`] with `m = 1`, `A = w_1`.
    pub fn into_system(self) -> DDecayingSystem {
        DDecayingSystem {
            d: self.d.clone(),
            m: 1,
            precision: self.precision,
            contraction: self.contraction.clone(),
            conditions: self.conditions.clone(),
            model: Model::Affine(Box::new(self)),
        }
    }

    fn ipow_ball(&self, i: u64) -> Result<BigReal> {
        if i == 0 {
            return Err(Error::Domain("branch indices start at 1".into()));
        }
        if i < self.ipow.len() as u64 {
            return Ok(self.ipow[i as usize].clone());
        }
        ipow_ball_raw(&self.d, i, self.precision)
    }
}

fn integer_exponent(d: &BigRational) -> Option<u32> {
    if d.is_integer() {
        d.to_integer().to_u32()
    } else {
        None
    }
}

fn ipow_ball_raw(d: &BigRational, i: u64, prec: u64) -> Result<BigReal> {
    match integer_exponent(d) {
        Some(k) => BigReal::from_bigint(&BigInt::from(i).pow(k), prec).recip(),
        None => pow_rational(&BigReal::from_u64(i, prec), &-d.clone(), prec),
    }
}

fn affine_tables(d: &BigRational, prec: u64) -> Result<(BigReal, Vec<BigReal>, Vec<BigReal>)> {
    let zeta_d = zeta(&BigReal::from_rational(d, prec + 16), prec)?;
    let mut ipow = Vec::with_capacity(PREFIX_TABLE_LEN as usize + 1);
    let mut prefix = Vec::with_capacity(PREFIX_TABLE_LEN as usize + 1);
    ipow.push(BigReal::zero(prec));
    prefix.push(BigReal::zero(prec));
    for i in 1..=PREFIX_TABLE_LEN {
        let p = ipow_ball_raw(d, i, prec)?;
        prefix.push(prefix.last().expect("nonempty").add(&p));
        ipow.push(p);
    }
    Ok((zeta_d, ipow, prefix))
}

/// Builds the affine model at the given ball precision and certifies the
/// decay/contraction/tiling conditions on branches `i <= 1000` with
/// contraction step `m = 1` and `A = w_1`.
pub fn build_affine(d: &BigRational, precision: u64) -> Result<AffineGaussLike> {
    if *d <= BigRational::one() {
        return Err(Error::Domain(format!(
            "affine model needs decay exponent d > 1 (the weights i^-d must be summable), got d = {d}"
        )));
    }
    if precision == 0 || precision > MAX_PRECISION {
        return Err(Error::Domain(format!(
            "precision must lie in 1..={MAX_PRECISION}, got {precision}"
        )));
    }
    let (zeta_d, ipow, prefix) = affine_tables(d, precision)?;
    let sign_u = if integer_exponent(d).is_some() {
        let z = zeta(
            &BigReal::from_rational(d, SIGN_START_PRECISION + 16),
            SIGN_START_PRECISION,
        )?;
        Some(z.recip()?)
    } else {
        None
    };
    let mut model = AffineGaussLike {
        d: d.clone(),
        precision,
        zeta_d,
        ipow,
        prefix,
        sign_u,
        contraction: BigReal::zero(precision),
        conditions: empty_report(),
    };
    let (conditions, contraction) = run_condition_checks(
        Branches::Affine(&model),
        d,
        1,
        precision,
        BUILD_CHECK_BRANCHES,
        &default_epsilons(),
    )?;
    model.contraction = contraction;
    model.conditions = conditions;
    Ok(model)
}

/// Rebuilds the affine tables at a higher precision without re-running the
/// (precision-independent) condition checks; used by expansion escalation.
fn affine_model_raw(template: &AffineGaussLike, precision: u64) -> Result<AffineGaussLike> {
    let (zeta_d, ipow, prefix) = affine_tables(&template.d, precision)?;
    let contraction = ipow[1].div(&zeta_d)?;
    Ok(AffineGaussLike {
        d: template.d.clone(),
        precision,
        zeta_d,
        ipow,
        prefix,
        sign_u: template.sign_u.clone(),
        contraction,
        conditions: template.conditions.clone(),
    })
}

// ---------------------------------------------------------------------------
// d-decaying systems
// ---------------------------------------------------------------------------

/// A d-decaying Gauss-like system: countably many decreasing branches with
/// certified derivative bounds `0 < xi_i <= |f_i'| <= lambda_i <= 1`,
/// branch images with pairwise-disjoint interiors tiling `(0, 1]`, an
/// `m`-step contraction constant `A < 1`, and decay envelopes
/// `c1 i^{-(d+eps)} <= xi_i` and `lambda_i <= c2 i^{-(d-eps)}`.
#[derive(Clone, Debug)]
pub struct DDecayingSystem {
    d: BigRational,
    m: u32,
    precision: u64,
    contraction: BigReal,
    conditions: ConditionReport,
    model: Model,
}

#[derive(Clone, Debug)]
enum Model {
    Affine(Box<AffineGaussLike>),
    Gauss,
}

impl DDecayingSystem {
    pub fn d(&self) -> &BigRational {
        &self.d
    }

    /// Number of composition steps after which every branch product
    /// contracts by at least the [`contraction`](Self::contraction) bound.
    pub fn contraction_step(&self) -> u32 {
        self.m
    }

    pub fn precision(&self) -> u64 {
        self.precision
    }

    /// Certified upper bound `A < 1` for `|(f_{a_1} o ... o f_{a_m})'|`.
    pub fn contraction(&self) -> &BigReal {
        &self.contraction
    }

    /// The branch-condition report certified at build time.
    pub fn conditions(&self) -> &ConditionReport {
        &self.conditions
    }

    /// Lower derivative bound `xi_i`.
    pub fn xi(&self, i: u64) -> Result<BigReal> {
        self.view().xi(i)
    }

    /// Upper derivative bound `lambda_i`.
    pub fn lambda(&self, i: u64) -> Result<BigReal> {
        self.view().lambda(i)
    }

    /// Image interval `f_i([0, 1])` as `(lower, upper)` endpoints.
    pub fn image(&self, i: u64) -> Result<(BigReal, BigReal)> {
        self.view().image(i)
    }

    /// Evaluates the branch map `f_i` on an enclosure.
    pub fn apply(&self, i: u64, x: &BigReal) -> Result<BigReal> {
        self.view().apply(i, x)
    }

    /// Re-runs the condition checks on a caller-chosen branch range and
    /// `eps` grid, returning a fresh report.
    pub fn verify_conditions(
        &self,
        max_branch: u64,
        epsilons: &[BigRational],
    ) -> Result<ConditionReport> {
        let (report, _) = run_condition_checks(
            self.view(),
            &self.d,
            self.m,
            self.precision,
            max_branch,
            epsilons,
        )?;
        Ok(report)
    }

    fn view(&self) -> Branches<'_> {
        match &self.model {
            Model::Affine(model) => Branches::Affine(model),
            Model::Gauss => Branches::Gauss {
                precision: self.precision,
            },
        }
    }
}

/// The Gauss map as a 2-decaying system: branches `f_i(x) = 1/(i+x)` with
/// `xi_i = (i+1)^{-2}`, `lambda_i = i^{-2}`, `d = 2`, and contraction step
/// `m = 2` (single branches reach slope 1, pairs contract to
/// `|(f_a o f_b)'(x)| = (a(b+x)+1)^{-2} <= 1/4`).
pub fn gauss_as_ddecaying() -> Result<DDecayingSystem> {
    let precision = DEFAULT_IFS_PRECISION;
    let d = rat_u64(2);
    let (conditions, contraction) = run_condition_checks(
        Branches::Gauss { precision },
        &d,
        2,
        precision,
        BUILD_CHECK_BRANCHES,
        &default_epsilons(),
    )?;
    Ok(DDecayingSystem {
        d,
        m: 2,
        precision,
        contraction,
        conditions,
        model: Model::Gauss,
    })
}

/// Borrowing view over the branch data of either model, so the condition
/// checks can run before a [`DDecayingSystem`] exists.
enum Branches<'a> {
    Affine(&'a AffineGaussLike),
    Gauss { precision: u64 },
}

impl Branches<'_> {
    fn xi(&self, i: u64) -> Result<BigReal> {
        match self {
            Branches::Affine(m) => m.weight(i),
            Branches::Gauss { precision } => {
                Ok(BigReal::from_rational(&gauss_xi_rat(i), *precision))
            }
        }
    }

    fn lambda(&self, i: u64) -> Result<BigReal> {
        match self {
            Branches::Affine(m) => m.weight(i),
            Branches::Gauss { precision } => {
                Ok(BigReal::from_rational(&gauss_lambda_rat(i), *precision))
            }
        }
    }

    fn image(&self, i: u64) -> Result<(BigReal, BigReal)> {
        match self {
            Branches::Affine(m) => Ok((m.tail(i + 1)?, m.tail(i)?)),
            Branches::Gauss { precision } => Ok((
                BigReal::from_rational(&inv_rat(i + 1), *precision),
                BigReal::from_rational(&inv_rat(i), *precision),
            )),
        }
    }

    fn apply(&self, i: u64, x: &BigReal) -> Result<BigReal> {
        if i == 0 {
            return Err(Error::Domain("branch indices start at 1".into()));
        }
        match self {
            Branches::Affine(m) => m.apply(i, x),
            Branches::Gauss { precision } => {
                BigReal::from_u64(i, *precision).add(x).recip()
            }
        }
    }
}

fn inv_rat(i: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(i))
}

fn gauss_xi_rat(i: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(i + 1).pow(2))
}

fn gauss_lambda_rat(i: u64) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(i).pow(2))
}

/// `|(f_a o f_b)'(x)| = (a(b+x)+1)^{-2}` for the Gauss branches.
fn gauss_pair_derivative(a: u64, b: u64, x: &BigRational) -> BigRational {
    let inner = BigRational::from_integer(BigInt::from(a))
        * (BigRational::from_integer(BigInt::from(b)) + x)
        + BigRational::one();
    (&inner * &inner).recip()
}

// ---------------------------------------------------------------------------
// Condition checks
// ---------------------------------------------------------------------------

/// Certified results of the three branch-condition checks (derivative
/// sandwich, image ordering/tiling, contraction) plus the decay envelopes,
/// on branches `i <= max_branch`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub max_branch: u64,
    /// Contraction step: compositions of this many branches contract.
    pub m: u32,
    /// Certified upper bound for `sup |(f_{a_1} o ... o f_{a_m})'|`.
    pub contraction_upper: f64,
    /// Branches whose sandwich `0 < xi_i <= |f_i'| <= lambda_i <= 1`
    /// was certified.
    pub sandwich_checked: u64,
    /// Adjacent image pairs certified nonempty and decreasingly ordered.
    pub images_checked: u64,
    /// Radius of the enclosure of `sum_{i <= max_branch} w_i +
    /// T_{max_branch+1}`, which must contain 1 (affine model; exactly 0 for
    /// the Gauss system, whose images adjoin algebraically at `1/(i+1)`).
    pub tiling_defect: f64,
    pub decay: Vec<DecayConstants>,
}

/// Decay-envelope constants for one value of `eps`:
/// `c1 i^{-(d+eps)} <= xi_i` and `lambda_i <= c2 i^{-(d-eps)}` over the
/// checked range, plus the scaled endpoint values showing the two trends
/// (`xi_i i^{d+eps}` rising, `lambda_i i^{d-eps}` falling).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecayConstants {
    pub epsilon: RationalParam,
    pub c1: f64,
    pub c2: f64,
    pub lower_scaled_first: f64,
    pub lower_scaled_last: f64,
    pub upper_scaled_first: f64,
    pub upper_scaled_last: f64,
}

fn empty_report() -> ConditionReport {
    ConditionReport {
        max_branch: 0,
        m: 0,
        contraction_upper: 0.0,
        sandwich_checked: 0,
        images_checked: 0,
        tiling_defect: 0.0,
        decay: Vec::new(),
    }
}

fn run_condition_checks(
    view: Branches<'_>,
    d: &BigRational,
    m: u32,
    prec: u64,
    max_branch: u64,
    epsilons: &[BigRational],
) -> Result<(ConditionReport, BigReal)> {
    if max_branch == 0 {
        return Err(Error::Domain("condition checks need max_branch >= 1".into()));
    }
    for eps in epsilons {
        if *eps <= BigRational::zero() {
            return Err(Error::Domain(format!(
                "decay envelopes need eps > 0, got {eps}"
            )));
        }
    }

    // Condition: derivative sandwich 0 < xi_i <= |f_i'| <= lambda_i <= 1.
    let mut sandwich_checked = 0u64;
    let derivative_grid: Vec<BigRational> = [(0i64, 1i64), (1, 4), (1, 2), (3, 4), (1, 1)]
        .iter()
        .map(|(n, q)| BigRational::new(BigInt::from(*n), BigInt::from(*q)))
        .collect();
    for i in 1..=max_branch {
        let xi = view.xi(i)?;
        if xi.lo().signum() <= 0 {
            return Err(Error::Domain(format!(
                "xi_{i} is not certified positive at {prec} bits"
            )));
        }
        match &view {
            // |f_i'| = w_i = xi_i = lambda_i identically: nothing between
            // the bounds to separate; lambda_i <= 1 reduces to w_1 < 1,
            // checked once below with the contraction bound.
            Branches::Affine(_) => {}
            Branches::Gauss { .. } => {
                let xi_q = gauss_xi_rat(i);
                let la_q = gauss_lambda_rat(i);
                if la_q > BigRational::one() {
                    return Err(Error::Domain(format!("lambda_{i} exceeds 1")));
                }
                for x in &derivative_grid {
                    let der = {
                        let ix = BigRational::from_integer(BigInt::from(i)) + x;
                        (&ix * &ix).recip()
                    };
                    if der < xi_q || der > la_q {
                        return Err(Error::Domain(format!(
                            "|f_{i}'({x})| = {der} escapes [xi_{i}, lambda_{i}]"
                        )));
                    }
                }
            }
        }
        sandwich_checked += 1;
    }

    // Condition: images nonempty and decreasingly ordered (adjacent images
    // share exactly one endpoint by construction in both models, so
    // interiors are disjoint once the ordering is certified).
    let mut images_checked = 0u64;
    let order_grid: Vec<BigReal> = [(0i64, 1i64), (1, 2), (1, 1)]
        .iter()
        .map(|(n, q)| {
            BigReal::from_rational(&BigRational::new(BigInt::from(*n), BigInt::from(*q)), prec)
        })
        .collect();
    for i in 1..=max_branch {
        let (lo, hi) = view.image(i)?;
        if hi.sub(&lo).lo().signum() <= 0 {
            return Err(Error::Domain(format!(
                "image of branch {i} is not certified nonempty"
            )));
        }
        for x in &order_grid {
            match view.apply(i, x)?.cmp_certain(&view.apply(i + 1, x)?) {
                Some(Ordering::Greater) => {}
                _ => {
                    return Err(Error::PrecisionExhausted(format!(
                        "could not certify f_{i}(x) > f_{}(x) at x = {}",
                        i + 1,
                        x.to_f64()
                    )));
                }
            }
        }
        images_checked += 1;
    }

    // Tiling identity (affine): sum of the first weights plus the next tail
    // must enclose 1. The Gauss images adjoin algebraically at 1/(i+1).
    let tiling_defect = match &view {
        Branches::Affine(model) => {
            let mut sum = BigReal::zero(prec);
            for i in 1..=max_branch {
                sum = sum.add(&model.weight(i)?);
            }
            sum = sum.add(&model.tail(max_branch + 1)?);
            if !sum.contains_rational(&BigRational::one()) {
                return Err(Error::Domain(format!(
                    "tiling identity failed: weights 1..={max_branch} plus tail miss 1"
                )));
            }
            sum.radius_f64()
        }
        Branches::Gauss { .. } => 0.0,
    };

    // Condition: m-step contraction A < 1.
    let contraction = match &view {
        Branches::Affine(model) => {
            let a = model.weight(1)?;
            if a.sub(&BigReal::one(prec)).hi().signum() >= 0 {
                return Err(Error::Domain(
                    "contraction failed: w_1 is not certified below 1".into(),
                ));
            }
            // w_i <= w_1 holds exactly (i^{-d} <= 1), so A = w_1.
            a
        }
        Branches::Gauss { precision } => {
            // |(f_a o f_b)'| = (a(b+x)+1)^{-2} <= 1/4 since a, b >= 1 and
            // x >= 0; the grid re-derives the bound and its attainment.
            let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
            let mut attained = BigRational::zero();
            for a in 1..=8u64 {
                for b in 1..=8u64 {
                    for x in &derivative_grid {
                        let der = gauss_pair_derivative(a, b, x);
                        if der > quarter {
                            return Err(Error::Domain(format!(
                                "pair contraction violated at a={a}, b={b}, x={x}"
                            )));
                        }
                        if der > attained {
                            attained = der;
                        }
                    }
                }
            }
            if attained != quarter {
                return Err(Error::Domain(
                    "pair-contraction grid failed to attain the 1/4 bound".into(),
                ));
            }
            BigReal::from_rational(&quarter, *precision)
        }
    };
    let contraction_upper = contraction.hi().to_f64();

    // Decay envelopes per eps.
    let mut decay = Vec::with_capacity(epsilons.len());
    for eps in epsilons {
        let d_plus = d + eps;
        let d_minus = d - eps;
        let mut c1 = f64::INFINITY;
        let mut c2 = f64::NEG_INFINITY;
        let mut lower_scaled_first = 0.0;
        let mut lower_scaled_last = 0.0;
        let mut upper_scaled_first = 0.0;
        let mut upper_scaled_last = 0.0;
        for i in 1..=max_branch {
            let base = BigReal::from_u64(i, prec);
            let scale_lo = pow_rational(&base, &d_plus, prec)?;
            let scale_hi = pow_rational(&base, &d_minus, prec)?;
            let lower = view.xi(i)?.mul(&scale_lo);
            let upper = view.lambda(i)?.mul(&scale_hi);
            c1 = c1.min(lower.lo().to_f64());
            c2 = c2.max(upper.hi().to_f64());
            if i == 1 {
                lower_scaled_first = lower.to_f64();
                upper_scaled_first = upper.to_f64();
            }
            if i == max_branch {
                lower_scaled_last = lower.to_f64();
                upper_scaled_last = upper.to_f64();
            }
        }
        if c1.is_nan() || c1 <= 0.0 {
            return Err(Error::PrecisionExhausted(format!(
                "decay lower constant not certified positive for eps = {eps}"
            )));
        }
        decay.push(DecayConstants {
            epsilon: RationalParam(eps.clone()),
            c1,
            c2,
            lower_scaled_first,
            lower_scaled_last,
            upper_scaled_first,
            upper_scaled_last,
        });
    }

    let report = ConditionReport {
        max_branch,
        m,
        contraction_upper,
        sandwich_checked,
        images_checked,
        tiling_defect,
        decay,
    };
    Ok((report, contraction))
}

// ---------------------------------------------------------------------------
// Projection
// ---------------------------------------------------------------------------

/// Projects a digit word to its point: the composition
/// `f_{a_1} o ... o f_{a_k}` evaluated at the exact point 1, as a certified
/// enclosure at the system precision. The enclosure width is bounded by the
/// product of the `lambda_{a_j}` (each branch maps an interval to one at
/// most `lambda` times as long).
pub fn project(system: &DDecayingSystem, word: &DigitWord) -> Result<BigReal> {
    let mut x = BigReal::one(system.precision);
    for digit in word.digits().iter().rev() {
        let i = digit.to_u64().ok_or_else(|| {
            Error::Domain(format!("digit {digit} exceeds the supported branch range"))
        })?;
        x = system.apply(i, &x)?;
    }
    Ok(x)
}

// ---------------------------------------------------------------------------
// Symbolic expansion
// ---------------------------------------------------------------------------

/// A point to expand: an exact rational, a plain enclosure, or the exactly
/// projected image of a word (the roundtrip case, which always ends on a
/// branch endpoint and therefore needs an exact kernel).
#[derive(Clone, Debug)]
pub enum ExpandPoint {
    Rational(BigRational),
    Numeric(BigReal),
    Projected(DigitWord),
}

/// Expands a point of `(0, 1]` into its first `n` digits under the system's
/// branch inverses.
///
/// Exact inputs (`Rational`, `Projected`) run on an exact kernel when the
/// model admits one (the Gauss system over the rationals; affine systems
/// with integer `d` over Laurent polynomials in `1/zeta(d)`), where
/// endpoint ties are detected exactly and resolved toward the lower digit
/// (the dual endpoint representation, whose remainder is exactly 1).
/// Affine systems with non-integer `d` retry a certified interval pass at
/// doubling precision. `Numeric` inputs get a single certified pass at the
/// system precision and report [`Error::AmbiguousBoundary`] when a branch
/// boundary cannot be separated from the enclosure.
pub fn symbolic_expand(system: &DDecayingSystem, point: &ExpandPoint, n: u64) -> Result<DigitWord> {
    if n == 0 {
        return Err(Error::Domain("expansion needs at least one digit".into()));
    }
    match (&system.model, point) {
        (Model::Gauss, ExpandPoint::Rational(x)) => gauss_expand_exact(x.clone(), n),
        (Model::Gauss, ExpandPoint::Projected(word)) => {
            gauss_expand_exact(gauss_project_exact(word), n)
        }
        (Model::Gauss, ExpandPoint::Numeric(x)) => {
            check_numeric_entry(x)?;
            gauss_expand_ball(x, system.precision, n)
        }
        (Model::Affine(model), ExpandPoint::Numeric(x)) => {
            check_numeric_entry(x)?;
            affine_expand_ball(model, x, n)
        }
        (Model::Affine(model), point) => match integer_exponent(&model.d) {
            Some(dk) => affine_expand_exact(model, dk, point, n),
            None => affine_expand_escalating(model, point, n),
        },
    }
}

fn check_rational_entry(x: &BigRational) -> Result<()> {
    if *x <= BigRational::zero() || *x > BigRational::one() {
        return Err(Error::Domain(format!(
            "the branch images cover (0, 1]; got x = {x}"
        )));
    }
    Ok(())
}

fn check_numeric_entry(x: &BigReal) -> Result<()> {
    if x.lo().signum() <= 0 {
        return Err(Error::Domain(format!(
            "expansion needs an enclosure certified inside (0, 1], got one reaching down to {:.6e}",
            x.lo().to_f64()
        )));
    }
    if x.sub(&BigReal::one(x.precision())).lo().signum() > 0 {
        return Err(Error::Domain(
            "the enclosure is certified above 1; the branch images cover (0, 1]".into(),
        ));
    }
    Ok(())
}

/// Galloping-plus-bisection search for the smallest branch index whose
/// predicate holds; `covered(j)` must be monotone in `j`.
fn locate_branch(mut covered: impl FnMut(u64) -> Result<bool>) -> Result<u64> {
    if covered(1)? {
        return Ok(1);
    }
    let mut hi = 2u64;
    while !covered(hi)? {
        hi = hi.saturating_mul(2);
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if covered(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

// --- Gauss exact kernel ----------------------------------------------------

fn gauss_project_exact(word: &DigitWord) -> BigRational {
    let mut x = BigRational::one();
    for digit in word.digits().iter().rev() {
        x = (BigRational::from_integer(BigInt::from(digit.clone())) + x).recip();
    }
    x
}

fn gauss_expand_exact(mut x: BigRational, n: u64) -> Result<DigitWord> {
    check_rational_entry(&x)?;
    let mut digits = Vec::with_capacity(n as usize);
    for depth in 0..n {
        if x.is_zero() {
            return Err(Error::AmbiguousBoundary(format!(
                "the expansion terminated after {depth} digits; deeper digits are not defined"
            )));
        }
        // x = p/q in (0, 1], so 1/x = q/p >= 1. An exact integer quotient
        // means the point is the shared endpoint of two branch images; the
        // dual representation continues through the lower digit with
        // remainder exactly 1 (the branch whose preimage is 1).
        let (p, q) = (x.numer().clone(), x.denom().clone());
        let (a, r) = q.div_rem(&p);
        if r.is_zero() {
            if a.is_one() {
                // x == 1 lies only in the image of branch 1 (preimage 0):
                // emit the digit and terminate.
                digits.push(BigUint::one());
                x = BigRational::zero();
            } else {
                digits.push((a - BigInt::one()).to_biguint().expect("digit >= 1"));
                x = BigRational::one();
            }
        } else {
            digits.push(a.to_biguint().expect("digit >= 1"));
            x = BigRational::new(r, p);
        }
    }
    DigitWord::new(digits)
}

// --- Gauss certified interval kernel ----------------------------------------

fn gauss_expand_ball(x0: &BigReal, prec: u64, n: u64) -> Result<DigitWord> {
    let mut x = x0.clone().with_precision(prec);
    let mut digits = Vec::with_capacity(n as usize);
    for depth in 0..n {
        let recip = x.recip().map_err(|_| {
            Error::AmbiguousBoundary(format!(
                "the enclosure at depth {depth} straddles 0; the expansion may have terminated"
            ))
        })?;
        let a = recip.floor_certified().ok_or_else(|| {
            Error::AmbiguousBoundary(format!(
                "the enclosure at depth {depth} straddles a branch boundary at {prec} bits"
            ))
        })?;
        if a.sign() != num_bigint::Sign::Plus {
            return Err(Error::Domain(format!(
                "the enclosure at depth {depth} escapes (0, 1]"
            )));
        }
        digits.push(a.to_biguint().expect("positive digit"));
        x = recip.sub(&BigReal::from_bigint(&a, prec));
    }
    DigitWord::new(digits)
}

// --- Affine exact kernel (integer d) -----------------------------------------

/// Laurent polynomial in `u = 1/zeta(d)` with rational coefficients: the
/// exact coordinate ring for affine expansion at integer `d`. Branch maps,
/// inverses, and image endpoints all have coefficients built from `i^{d}`,
/// `i^{-d}`, and the rational prefix sums `P_k = sum_{j <= k} j^{-d}`:
///
/// * `f_i(X)      = 1 + (i^{-d} - P_i) u - i^{-d} u X`
/// * `f_i^{-1}(Y) = (1 - i^{d} P_i) + i^{d} u^{-1} - i^{d} u^{-1} Y`
/// * `T_j         = 1 - P_{j-1} u`
///
/// A tie with a boundary is exactly the zero polynomial; a nonzero sign is
/// certified by ball evaluation at escalating precision.
#[derive(Clone, Debug, Default)]
struct UPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl UPoly {
    fn constant(q: BigRational) -> Self {
        let mut p = UPoly::default();
        p.add_assign_term(0, &q);
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_assign_term(&mut self, k: i64, q: &BigRational) {
        if q.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_insert_with(BigRational::zero);
        *entry += q;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    /// `c * u^shift * self`.
    fn scale_shift(&self, c: &BigRational, shift: i64) -> Self {
        let mut out = UPoly::default();
        if c.is_zero() {
            return out;
        }
        for (k, q) in &self.terms {
            out.terms.insert(k + shift, q * c);
        }
        out
    }

    fn eval(&self, u: &BigReal, prec: u64) -> Result<BigReal> {
        let mut acc = BigReal::zero(prec);
        for (k, q) in &self.terms {
            let term = BigReal::from_rational(q, prec).mul(&u.powi(*k)?);
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

struct AffineExact {
    dk: u32,
    d: BigRational,
    /// `prefix[k] = sum_{j <= k} j^{-d}` as exact rationals; `prefix[0] = 0`.
    prefix: Vec<BigRational>,
    u_cache: Vec<(u64, BigReal)>,
}

impl AffineExact {
    fn new(dk: u32, d: BigRational, seed_u: Option<BigReal>) -> Self {
        let mut u_cache = Vec::new();
        if let Some(u) = seed_u {
            u_cache.push((SIGN_START_PRECISION, u));
        }
        AffineExact {
            dk,
            d,
            prefix: vec![BigRational::zero()],
            u_cache,
        }
    }

    fn prefix_to(&mut self, k: u64) -> Result<BigRational> {
        if k > EXACT_PREFIX_LIMIT {
            return Err(Error::Unsupported(format!(
                "branch index {k} exceeds the exact expansion table limit {EXACT_PREFIX_LIMIT}"
            )));
        }
        while self.prefix.len() <= k as usize {
            let j = self.prefix.len() as u64;
            let term = BigRational::new(BigInt::one(), BigInt::from(j).pow(self.dk));
            let next = self.prefix.last().expect("nonempty") + term;
            self.prefix.push(next);
        }
        Ok(self.prefix[k as usize].clone())
    }

    fn ipow_neg(&self, i: u64) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(i).pow(self.dk))
    }

    fn ipow_pos(&self, i: u64) -> BigRational {
        BigRational::from_integer(BigInt::from(i).pow(self.dk))
    }

    fn u_at(&mut self, prec: u64) -> Result<BigReal> {
        if let Some((_, u)) = self.u_cache.iter().find(|(p, _)| *p == prec) {
            return Ok(u.clone());
        }
        let u = zeta(&BigReal::from_rational(&self.d, prec + 16), prec)?.recip()?;
        self.u_cache.push((prec, u.clone()));
        Ok(u)
    }

    fn sign(&mut self, p: &UPoly) -> Result<Ordering> {
        if p.is_zero() {
            return Ok(Ordering::Equal);
        }
        let mut prec = SIGN_START_PRECISION;
        loop {
            let u = self.u_at(prec)?;
            let v = p.eval(&u, prec)?;
            if v.lo().signum() > 0 {
                return Ok(Ordering::Greater);
            }
            if v.hi().signum() < 0 {
                return Ok(Ordering::Less);
            }
            if prec >= MAX_PRECISION {
                return Err(Error::PrecisionExhausted(format!(
                    "could not certify the sign of an exact affine coordinate at {MAX_PRECISION} bits"
                )));
            }
            prec = (prec * 2).min(MAX_PRECISION);
        }
    }

    /// `f_i(X) = 1 + (i^{-d} - P_i) u - i^{-d} u X`.
    fn forward(&mut self, i: u64, x: &UPoly) -> Result<UPoly> {
        let c = self.ipow_neg(i);
        let p_i = self.prefix_to(i)?;
        let mut out = x.scale_shift(&-c.clone(), 1);
        out.add_assign_term(0, &BigRational::one());
        out.add_assign_term(1, &(c - p_i));
        Ok(out)
    }

    /// `f_i^{-1}(Y) = (1 - i^{d} P_i) + i^{d} u^{-1} - i^{d} u^{-1} Y`.
    fn inverse(&mut self, i: u64, y: &UPoly) -> Result<UPoly> {
        let c = self.ipow_pos(i);
        let p_i = self.prefix_to(i)?;
        let mut out = y.scale_shift(&-c.clone(), -1);
        out.add_assign_term(0, &(BigRational::one() - &c * p_i));
        out.add_assign_term(-1, &c);
        Ok(out)
    }
}

fn affine_expand_exact(
    model: &AffineGaussLike,
    dk: u32,
    point: &ExpandPoint,
    n: u64,
) -> Result<DigitWord> {
    let mut ctx = AffineExact::new(dk, model.d.clone(), model.sign_u.clone());
    let mut x = match point {
        ExpandPoint::Rational(q) => {
            check_rational_entry(q)?;
            UPoly::constant(q.clone())
        }
        ExpandPoint::Projected(word) => {
            let mut x = UPoly::constant(BigRational::one());
            for digit in word.digits().iter().rev() {
                let i = digit
                    .to_u64()
                    .filter(|i| *i <= EXACT_PREFIX_LIMIT)
                    .ok_or_else(|| {
                        Error::Unsupported(format!(
                            "digit {digit} exceeds the exact expansion table limit {EXACT_PREFIX_LIMIT}"
                        ))
                    })?;
                x = ctx.forward(i, &x)?;
            }
            x
        }
        ExpandPoint::Numeric(_) => unreachable!("numeric points use the interval kernel"),
    };
    let mut digits = Vec::with_capacity(n as usize);
    for depth in 0..n {
        if x.is_zero() {
            return Err(Error::AmbiguousBoundary(format!(
                "the expansion terminated after {depth} digits; deeper digits are not defined"
            )));
        }
        let digit = {
            let x_ref = &x;
            let ctx_ref = &mut ctx;
            locate_branch(move |j| {
                // covered(j): x >= T_{j+1}, i.e. sign(x - 1 + P_j u) != Less.
                // Equality is the endpoint tie and resolves to this j, the
                // lower of the two adjoining digits.
                let p_j = ctx_ref.prefix_to(j)?;
                let mut diff = x_ref.clone();
                diff.add_assign_term(0, &-BigRational::one());
                diff.add_assign_term(1, &p_j);
                Ok(ctx_ref.sign(&diff)? != Ordering::Less)
            })?
        };
        digits.push(BigUint::from(digit));
        x = ctx.inverse(digit, &x)?;
    }
    DigitWord::new(digits)
}

// --- Affine certified interval kernel ----------------------------------------

fn affine_expand_ball(model: &AffineGaussLike, x0: &BigReal, n: u64) -> Result<DigitWord> {
    let prec = model.precision;
    let mut x = x0.clone().with_precision(prec);
    let mut digits = Vec::with_capacity(n as usize);
    for depth in 0..n {
        let digit = locate_branch(|j| {
            if j > MAX_BRANCH_INDEX {
                return Err(Error::AmbiguousBoundary(format!(
                    "no branch certified at depth {depth}: the point is within enclosure error of 0"
                )));
            }
            match x.cmp_certain(&model.tail(j + 1)?) {
                Some(Ordering::Less) => Ok(false),
                Some(_) => Ok(true),
                None => Err(Error::AmbiguousBoundary(format!(
                    "the enclosure at depth {depth} straddles the branch boundary T_{} at {prec} bits",
                    j + 1
                ))),
            }
        })?;
        digits.push(BigUint::from(digit));
        // f_digit^{-1}(x) = 1 - (x - T_{digit+1}) / w_digit.
        let step = x
            .sub(&model.tail(digit + 1)?)
            .div(&model.weight(digit)?)?;
        x = BigReal::one(prec).sub(&step);
    }
    DigitWord::new(digits)
}

fn affine_expand_escalating(
    model: &AffineGaussLike,
    point: &ExpandPoint,
    n: u64,
) -> Result<DigitWord> {
    if let ExpandPoint::Rational(q) = point {
        check_rational_entry(q)?;
    }
    let mut rebuilt: Option<AffineGaussLike> = None;
    loop {
        let current = rebuilt.as_ref().unwrap_or(model);
        let prec = current.precision;
        let x = match point {
            ExpandPoint::Rational(q) => BigReal::from_rational(q, prec),
            ExpandPoint::Projected(word) => {
                let mut x = BigReal::one(prec);
                for digit in word.digits().iter().rev() {
                    let i = digit.to_u64().ok_or_else(|| {
                        Error::Domain(format!(
                            "digit {digit} exceeds the supported branch range"
                        ))
                    })?;
                    x = current.apply(i, &x)?;
                }
                x
            }
            ExpandPoint::Numeric(_) => unreachable!("numeric points use a single pass"),
        };
        match affine_expand_ball(current, &x, n) {
            Err(Error::AmbiguousBoundary(msg)) => {
                if prec >= MAX_PRECISION {
                    return Err(Error::PrecisionExhausted(format!(
                        "{msg}; escalation reached {MAX_PRECISION} bits — the point may lie exactly on a branch boundary"
                    )));
                }
                rebuilt = Some(affine_model_raw(model, (prec * 2).min(MAX_PRECISION))?);
            }
            other => return other,
        }
    }
}

// ---------------------------------------------------------------------------
// Predicted dimension
// ---------------------------------------------------------------------------

/// The piecewise dimension value for digit growth under a d-decaying
/// system, together with the finite-depth local-dimension profile
/// demonstrating convergence to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictedDimension {
    #[serde(with = "rational_string")]
    pub dim: BigRational,
    pub profile: Vec<ProfileRow>,
}

/// Maps the growth family to the system's dimension formula (`1` below the
/// `gamma = 1/d` threshold, `1/d` above it for `exp(n^gamma)`, and
/// `1/(gamma + d - 1)` for `exp(gamma^n)`), with the local-dimension
/// profile out to `n_max` as finite-depth evidence.
pub fn predicted_dimension(
    system: &DDecayingSystem,
    growth: &GrowthFunction,
    n_max: u64,
) -> Result<PredictedDimension> {
    let profile_growth = match growth {
        GrowthFunction::ExpPower { gamma } => LogDigitGrowth::Power {
            gamma: gamma.clone(),
        },
        GrowthFunction::ExpGeometric { gamma } => LogDigitGrowth::Geometric {
            gamma: gamma.clone(),
        },
        other => {
            return Err(Error::Unsupported(format!(
                "predicted dimension covers exp-power and exp-geometric digit growth, not {other}"
            )));
        }
    };
    let dim = piecewise_dimension(&system.d, growth)?;
    let profile = local_dimension_profile(&ProfileQuery {
        growth: profile_growth,
        d: system.d.clone(),
        n_max,
    })?;
    Ok(PredictedDimension { dim, profile })
}

// ---------------------------------------------------------------------------
// Generalized composition-sum bound
// ---------------------------------------------------------------------------

/// Checks the composition-sum bound with exponent `t = d * s` (the
/// d-decaying analog of the `t = 2s` case) on the full grid: every
/// truncated composition sum must stay below `C^n m^{-t}` with
/// `C = (9/2)(2 + zeta(t))`. The constant is carried over from the
/// 2-decaying case and verified empirically here, so a certified violation
/// is reported as data rather than an error.
pub fn verify_generalized_lemma(
    d: &BigRational,
    s_values: &[RationalParam],
    m_max: u64,
    n_max: u64,
) -> Result<LemmaReport> {
    if m_max < n_max || n_max == 0 {
        return Err(Error::Domain(format!(
            "grid needs 1 <= n_max <= m_max, got n_max {n_max}, m_max {m_max}"
        )));
    }
    if *d <= BigRational::one() {
        return Err(Error::Domain(format!(
            "d-decaying bound needs d > 1, got d = {d}"
        )));
    }
    for s in s_values {
        if s.0 <= BigRational::zero() || &s.0 * d <= BigRational::one() {
            return Err(Error::Domain(format!(
                "the bound constant needs t = d*s > 1, i.e. s > 1/d; got s = {} at d = {d}",
                s.0
            )));
        }
    }
    let per_s: Vec<(u64, Vec<LemmaViolation>, f64)> = s_values
        .par_iter()
        .map(|s| verify_generalized_for_s(d, &s.0, m_max, n_max))
        .collect::<Result<Vec<_>>>()?;
    let mut report = LemmaReport {
        points_checked: 0,
        violations: Vec::new(),
        max_ratio: f64::NEG_INFINITY,
    };
    for (checked, violations, ratio) in per_s {
        report.points_checked += checked;
        report.violations.extend(violations);
        report.max_ratio = report.max_ratio.max(ratio);
    }
    Ok(report)
}

fn verify_generalized_for_s(
    d: &BigRational,
    s: &BigRational,
    m_max: u64,
    n_max: u64,
) -> Result<(u64, Vec<LemmaViolation>, f64)> {
    let t = s * d;
    let mut prec = 96u64;
    'escalate: loop {
        let table = composition_sum_table(m_max, n_max, &t, prec)?;
        let c = generalized_bound_constant(&t, prec)?;
        let minus_t = BigReal::from_rational(&t, prec + 16).neg();
        let mut checked = 0u64;
        let mut violations = Vec::new();
        let mut max_ratio = f64::NEG_INFINITY;
        for n in 1..=n_max {
            let c_pow = c.powi(n as i64)?;
            for m in n..=m_max {
                let lhs = &table[n as usize][m as usize];
                let m_pow = BigReal::from_u64(m, prec + 16).pow(&minus_t)?;
                let rhs = c_pow.mul(&m_pow);
                match lhs.cmp_certain(&rhs) {
                    Some(Ordering::Less) | Some(Ordering::Equal) => {}
                    Some(Ordering::Greater) => violations.push(LemmaViolation {
                        m,
                        n,
                        s: s.clone(),
                    }),
                    None => {
                        prec *= 2;
                        if prec > MAX_PRECISION {
                            return Err(Error::PrecisionExhausted(format!(
                                "generalized bound comparison stayed indeterminate at m={m}, n={n}, s={s}, d={d}"
                            )));
                        }
                        continue 'escalate;
                    }
                }
                checked += 1;
                let ratio = lhs.hi().to_f64() / rhs.lo().to_f64();
                if ratio.is_finite() {
                    max_ratio = max_ratio.max(ratio);
                }
            }
        }
        return Ok((checked, violations, max_ratio));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::OnceLock;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn word(digits: &[u64]) -> DigitWord {
        DigitWord::from_u64s(digits).unwrap()
    }

    fn affine3() -> &'static DDecayingSystem {
        static SYS: OnceLock<DDecayingSystem> = OnceLock::new();
        SYS.get_or_init(|| build_affine(&rat(3, 1), 192).unwrap().into_system())
    }

    fn gauss() -> &'static DDecayingSystem {
        static SYS: OnceLock<DDecayingSystem> = OnceLock::new();
        SYS.get_or_init(|| gauss_as_ddecaying().unwrap())
    }

    const ZETA_3: f64 = 1.2020569031595943;
    const W1_D3: f64 = 1.0 / ZETA_3; // 0.8319073725807...

    #[test]
    fn affine_weights_match_zeta_oracles() {
        let s3 = affine3();
        assert!((s3.xi(1).unwrap().to_f64() - W1_D3).abs() < 1e-10);
        let (t2, t1) = {
            let (lo, hi) = s3.image(1).unwrap();
            (lo, hi)
        };
        assert!(t1.is_exact(), "T_1 should be exactly 1");
        assert_eq!(t1.to_f64(), 1.0);
        assert!((t2.to_f64() - (1.0 - W1_D3)).abs() < 1e-10);

        // d = 2: w_1 = 6/pi^2.
        let s2 = build_affine(&rat(2, 1), 128).unwrap();
        assert!((s2.weight(1).unwrap().to_f64() - 0.6079271018540267).abs() < 1e-12);

        // Non-integer d works too.
        let s52 = build_affine(&rat(5, 2), 96).unwrap();
        let z52 = s52.zeta_d().to_f64(); // zeta(5/2)
        assert!((z52 - 1.341487257250917).abs() < 1e-12);
        assert!((s52.weight(2).unwrap().to_f64() - 2f64.powf(-2.5) / z52).abs() < 1e-12);

        assert!(matches!(
            build_affine(&rat(1, 1), 96),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            build_affine(&rat(1, 2), 96),
            Err(Error::Domain(_))
        ));
        assert!(matches!(build_affine(&rat(3, 1), 0), Err(Error::Domain(_))));
    }

    #[test]
    fn affine_tiling_and_tail_integral_cross_check() {
        let s3 = affine3();
        let one = BigRational::one();
        for max_i in [1u64, 10, 100, 1000] {
            let mut sum = BigReal::zero(192);
            for i in 1..=max_i {
                sum = sum.add(&s3.xi(i).unwrap());
            }
            sum = sum.add(&s3.image(max_i).unwrap().0);
            assert!(
                sum.contains_rational(&one),
                "tiling sum at {max_i} misses 1"
            );
            assert!(sum.radius_f64() < 1e-40, "tiling radius {}", sum.radius_f64());
        }
        assert!(s3.conditions().tiling_defect < 1e-40);

        // Table-backed tail against the integral estimate:
        // sum_{k >= i} k^-3 = i^-2/2 + O(i^-3).
        let t1000 = s3.image(1000).unwrap().1;
        let oracle = 1000f64.powi(-2) / 2.0 / ZETA_3;
        assert!((t1000.to_f64() - oracle).abs() < 2e-9 / ZETA_3);

        // Beyond the table the tail switches to the integral-remainder
        // hull, which stays certified and tight to about i^-d.
        let t2001 = s3.image(2001).unwrap().1;
        let oracle = 2001f64.powi(-2) / 2.0 / ZETA_3;
        assert!((t2001.to_f64() - oracle).abs() < 1e-9);
        assert!(t2001.radius_f64() < 1e-9);
        assert!(t2001.radius_f64() > 1e-12, "hull width should be about i^-d");
    }

    #[test]
    fn affine_condition_report_and_decay_trends() {
        let report = affine3().conditions();
        assert_eq!(report.max_branch, 1000);
        assert_eq!(report.m, 1);
        assert_eq!(report.sandwich_checked, 1000);
        assert_eq!(report.images_checked, 1000);
        assert!(report.contraction_upper < 1.0);
        assert!((report.contraction_upper - W1_D3).abs() < 1e-10);
        assert_eq!(report.decay.len(), 1);

        let decay = &report.decay[0];
        assert_eq!(decay.epsilon.0, rat(1, 2));
        // xi_i i^{3.5} = i^0.5/zeta(3): minimum at i = 1, rising to
        // 1000^0.5/zeta(3) = 26.3; lambda_i i^{2.5} = i^-0.5/zeta(3):
        // maximum at i = 1, falling by the same factor.
        assert!(decay.c1 > 0.83 && decay.c1 < 0.84);
        assert!(decay.c2 > 0.83 && decay.c2 < 0.84);
        assert!((decay.lower_scaled_last - 1000f64.sqrt() / ZETA_3).abs() < 1e-6);
        assert!(decay.lower_scaled_last > 10.0 * decay.lower_scaled_first);
        assert!(decay.upper_scaled_last < decay.upper_scaled_first / 10.0);

        // Custom grid re-verification.
        let custom = affine3().verify_conditions(50, &[rat(1, 4)]).unwrap();
        assert_eq!(custom.max_branch, 50);
        assert_eq!(custom.decay[0].epsilon.0, rat(1, 4));
        assert!(custom.decay[0].c1 > 0.0);
        assert!(custom.decay[0].lower_scaled_last > 2.0 * custom.decay[0].lower_scaled_first);

        assert!(matches!(
            affine3().verify_conditions(10, &[rat(0, 1)]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            affine3().verify_conditions(0, &[rat(1, 2)]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn gauss_registration_and_pair_contraction() {
        let g = gauss();
        assert_eq!(*g.d(), rat(2, 1));
        assert_eq!(g.contraction_step(), 2);
        assert!(g.contraction().is_exact());
        assert_eq!(g.contraction().to_f64(), 0.25);
        assert_eq!(g.conditions().contraction_upper, 0.25);
        assert_eq!(g.conditions().tiling_defect, 0.0);

        // xi_3 = 1/16 (exactly representable), lambda_3 = 1/9.
        let xi3 = g.xi(3).unwrap();
        assert!(xi3.is_exact());
        assert_eq!(xi3.to_f64(), 0.0625);
        assert!(g.lambda(3).unwrap().contains_rational(&rat(1, 9)));
        let la1 = g.lambda(1).unwrap();
        assert!(la1.is_exact());
        assert_eq!(la1.to_f64(), 1.0);

        // Image of branch 3 is [1/4, 1/3].
        let (lo, hi) = g.image(3).unwrap();
        assert!(lo.contains_rational(&rat(1, 4)));
        assert!(hi.contains_rational(&rat(1, 3)));

        // Pair derivative (a(b+x)+1)^{-2}: the sup over the grid is exactly
        // 1/4, attained at a = b = 1, x = 0.
        let quarter = rat(1, 4);
        let mut attained = BigRational::zero();
        for a in 1..=8u64 {
            for b in 1..=8u64 {
                for x in [rat(0, 1), rat(1, 4), rat(1, 2), rat(1, 1)] {
                    let der = gauss_pair_derivative(a, b, &x);
                    assert!(der <= quarter, "pair ({a},{b}) at {x} exceeds 1/4");
                    if der > attained {
                        attained = der;
                    }
                }
            }
        }
        assert_eq!(attained, quarter);

        // eps = 0 envelope with exact constants: (1/4) i^{-2} <= (i+1)^{-2}
        // and i^{-2} <= i^{-2}.
        for i in 1..=1000u64 {
            assert!(&quarter * gauss_lambda_rat(i) <= gauss_xi_rat(i));
        }
    }

    #[test]
    fn branch_order_decreasing_in_both_models() {
        for sys in [affine3(), gauss()] {
            for i in [1u64, 2, 7, 31] {
                for x in [rat(0, 1), rat(1, 2), rat(1, 1)] {
                    let xb = BigReal::from_rational(&x, sys.precision());
                    let hi = sys.apply(i, &xb).unwrap();
                    let lo = sys.apply(i + 1, &xb).unwrap();
                    assert_eq!(
                        hi.cmp_certain(&lo),
                        Some(Ordering::Greater),
                        "f_{i} should exceed f_{} at {x}",
                        i + 1
                    );
                }
            }
        }
    }

    #[test]
    fn projection_fixed_points_and_containment() {
        let s3 = affine3();
        let w1 = s3.xi(1).unwrap().to_f64();

        // f_1(x) = 1 - w_1 x has fixed point 1/(1+w_1); the word [1; k]
        // converges to it at rate w_1^k.
        let p30 = project(s3, &word(&[1; 30])).unwrap();
        assert!((p30.to_f64() - 1.0 / (1.0 + w1)).abs() < 2e-3);
        let p60 = project(s3, &word(&[1; 60])).unwrap();
        assert!((p60.to_f64() - 1.0 / (1.0 + w1)).abs() < 1e-5);

        // Containment in the image of the first branch.
        let (lo, hi) = s3.image(1).unwrap();
        assert!(lo.lo().to_f64() <= p30.to_f64() + 1e-15);
        assert!(p30.to_f64() <= hi.hi().to_f64() + 1e-15);

        // Gauss [2; 5] approximates the periodic point sqrt(2) - 1.
        let g5 = project(gauss(), &word(&[2; 5])).unwrap();
        assert!((g5.to_f64() - (2f64.sqrt() - 1.0)).abs() < 1e-3);
    }

    #[test]
    fn projection_enclosures_respect_cylinder_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for sys in [affine3(), gauss()] {
            for _ in 0..25 {
                let len = rng.gen_range(1..=8usize);
                let digits: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=40u64)).collect();
                let w = word(&digits);

                let mut x0 = BigReal::zero(sys.precision());
                let mut x1 = BigReal::one(sys.precision());
                for digit in digits.iter().rev() {
                    x0 = sys.apply(*digit, &x0).unwrap();
                    x1 = sys.apply(*digit, &x1).unwrap();
                }
                let width = x0.sub(&x1);
                let mut prod_xi = 1.0f64;
                let mut prod_la = 1.0f64;
                for digit in &digits {
                    prod_xi *= sys.xi(*digit).unwrap().lo().to_f64();
                    prod_la *= sys.lambda(*digit).unwrap().hi().to_f64();
                }
                // Exact enclosure endpoints (mag_upper/mag_lower round to
                // coarse radius granularity, too loose to compare against
                // an equality-tight product).
                let (a, b) = (
                    width.lo().to_f64().abs(),
                    width.hi().to_f64().abs(),
                );
                let wid_hi = a.max(b);
                let wid_lo = a.min(b);
                assert!(
                    wid_hi <= prod_la * (1.0 + 1e-9) + 1e-50,
                    "width {wid_hi} above lambda product {prod_la} for {digits:?}"
                );
                assert!(
                    wid_lo >= prod_xi * (1.0 - 1e-9) - 1e-50,
                    "width {wid_lo} below xi product {prod_xi} for {digits:?}"
                );

                // The projected enclosure itself is at least as tight.
                let p = project(sys, &w).unwrap();
                assert!(2.0 * p.radius_f64() <= prod_la * (1.0 + 1e-9) + 1e-50);
            }
        }
    }

    #[test]
    fn roundtrip_exact_affine_d3() {
        let s3 = affine3();
        let mut words: Vec<Vec<u64>> = Vec::new();
        for a in 1..=50u64 {
            words.push(vec![a]);
        }
        for a in 1..=20u64 {
            for b in 1..=20u64 {
                words.push(vec![a, b]);
            }
        }
        words.push(vec![50; 8]);
        words.push(vec![1; 8]);
        words.push(vec![1, 50, 1, 50, 1, 50, 1, 50]);
        words.push(vec![50, 1, 50, 1, 50, 1, 50, 1]);
        words.push(vec![49, 50, 49, 50, 49, 50]);
        words.push(vec![2, 1, 1, 1, 1, 1, 1, 50]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for len in 3..=8usize {
            for _ in 0..30 {
                words.push((0..len).map(|_| rng.gen_range(1..=50u64)).collect());
            }
        }
        for digits in &words {
            let w = word(digits);
            let back = symbolic_expand(
                s3,
                &ExpandPoint::Projected(w.clone()),
                digits.len() as u64,
            )
            .unwrap();
            assert_eq!(back, w, "roundtrip failed for {digits:?}");
        }

        // Same kernel on d = 2.
        let s2 = build_affine(&rat(2, 1), 128).unwrap().into_system();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut small: Vec<Vec<u64>> = Vec::new();
        for a in 1..=12u64 {
            small.push(vec![a]);
            for b in 1..=12u64 {
                small.push(vec![a, b]);
            }
        }
        for _ in 0..10 {
            small.push((0..5).map(|_| rng.gen_range(1..=50u64)).collect());
        }
        for digits in &small {
            let w = word(digits);
            let back = symbolic_expand(
                &s2,
                &ExpandPoint::Projected(w.clone()),
                digits.len() as u64,
            )
            .unwrap();
            assert_eq!(back, w, "d=2 roundtrip failed for {digits:?}");
        }
    }

    #[test]
    fn roundtrip_and_rational_agreement_gauss() {
        let g = gauss();
        let mut words: Vec<Vec<u64>> = Vec::new();
        for a in 1..=30u64 {
            words.push(vec![a]);
        }
        for a in 1..=15u64 {
            for b in 1..=15u64 {
                words.push(vec![a, b]);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for len in 3..=8usize {
            for _ in 0..30 {
                words.push((0..len).map(|_| rng.gen_range(1..=50u64)).collect());
            }
        }
        for digits in &words {
            let w = word(digits);
            let back = symbolic_expand(
                g,
                &ExpandPoint::Projected(w.clone()),
                digits.len() as u64,
            )
            .unwrap();
            assert_eq!(back, w, "gauss roundtrip failed for {digits:?}");
        }

        // Agreement with the canonical continued-fraction expansion on
        // random rationals. A terminating canonical word [a_1..a_k] shares
        // its first k-1 digits with the dual form the expansion emits, so
        // only those are compared.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut compared = 0usize;
        for _ in 0..100 {
            let q = rng.gen_range(10_000..1_000_000_000u64);
            let p = rng.gen_range(1..q);
            let x = BigRational::new(BigInt::from(p), BigInt::from(q));
            let (canon, terminated) = crate::cf::expand_rational(&x, 14).unwrap();
            let depth = if terminated {
                canon.len().saturating_sub(1).min(12)
            } else {
                12
            };
            if depth == 0 {
                continue;
            }
            let ours = symbolic_expand(g, &ExpandPoint::Rational(x), depth as u64).unwrap();
            assert_eq!(
                ours.digits()[..depth],
                canon.digits()[..depth],
                "digit mismatch for {p}/{q}"
            );
            compared += 1;
        }
        assert!(compared >= 90, "only {compared} rationals compared");

        // Exact dual forms: 2/5 = [2,2] canonically = [2,1,1] dually;
        // 1/3 = [3] = [2,1].
        let dual = symbolic_expand(g, &ExpandPoint::Rational(rat(2, 5)), 3).unwrap();
        assert_eq!(dual, word(&[2, 1, 1]));
        let dual = symbolic_expand(g, &ExpandPoint::Rational(rat(1, 3)), 2).unwrap();
        assert_eq!(dual, word(&[2, 1]));
        assert!(matches!(
            symbolic_expand(g, &ExpandPoint::Rational(rat(1, 3)), 3),
            Err(Error::AmbiguousBoundary(_))
        ));
    }

    #[test]
    fn expansion_boundaries_and_numeric_points() {
        let s3 = affine3();

        // Projected words expand past their own length into the dual tail.
        let w37 = word(&[3, 7]);
        assert_eq!(
            symbolic_expand(s3, &ExpandPoint::Projected(w37.clone()), 2).unwrap(),
            w37
        );
        assert_eq!(
            symbolic_expand(s3, &ExpandPoint::Projected(w37.clone()), 3).unwrap(),
            word(&[3, 7, 1])
        );
        assert!(matches!(
            symbolic_expand(s3, &ExpandPoint::Projected(w37), 4),
            Err(Error::AmbiguousBoundary(_))
        ));

        // The top point 1 is the single terminated digit 1 in both models.
        for sys in [affine3(), gauss()] {
            assert_eq!(
                symbolic_expand(sys, &ExpandPoint::Rational(rat(1, 1)), 1).unwrap(),
                word(&[1])
            );
            assert!(matches!(
                symbolic_expand(sys, &ExpandPoint::Rational(rat(1, 1)), 2),
                Err(Error::AmbiguousBoundary(_))
            ));
            for bad in [rat(0, 1), rat(-1, 3), rat(7, 5)] {
                assert!(matches!(
                    symbolic_expand(sys, &ExpandPoint::Rational(bad), 1),
                    Err(Error::Domain(_))
                ));
            }
        }
        assert!(matches!(
            symbolic_expand(s3, &ExpandPoint::Rational(rat(1, 2)), 0),
            Err(Error::Domain(_))
        ));

        // d = 2: x = 9/10 > T_2 = 1 - 6/pi^2, so the first digit is 1.
        let s2 = build_affine(&rat(2, 1), 128).unwrap().into_system();
        let first = symbolic_expand(&s2, &ExpandPoint::Rational(rat(9, 10)), 1).unwrap();
        assert_eq!(first, word(&[1]));

        // Numeric mid-cylinder point agrees with the exact kernel.
        let exact = symbolic_expand(s3, &ExpandPoint::Rational(rat(7, 10)), 4).unwrap();
        let numeric = symbolic_expand(
            s3,
            &ExpandPoint::Numeric(BigReal::from_rational(&rat(7, 10), 192)),
            4,
        )
        .unwrap();
        assert_eq!(exact, numeric);

        // A numeric enclosure straddling the T_2 boundary cannot commit to
        // a first digit.
        let t2 = s3.image(1).unwrap().0;
        let wide = t2.hull(&t2.add(&BigReal::from_rational(&rat(1, 100_000), 192)));
        assert!(matches!(
            symbolic_expand(s3, &ExpandPoint::Numeric(wide), 1),
            Err(Error::AmbiguousBoundary(_))
        ));

        // Gauss numeric kernel: 5/13 = [2,1,1,2]. The enclosure of 5/13 is
        // inexact (13 is not a power of two), so the certified pass
        // recovers the interior digits but cannot commit to the exact
        // final one: its orbit lands within enclosure error of the
        // boundary 1/2.
        let x = BigReal::from_rational(&rat(5, 13), 192);
        let three = symbolic_expand(gauss(), &ExpandPoint::Numeric(x.clone()), 3).unwrap();
        assert_eq!(three, word(&[2, 1, 1]));
        assert!(matches!(
            symbolic_expand(gauss(), &ExpandPoint::Numeric(x), 4),
            Err(Error::AmbiguousBoundary(_))
        ));
        // The exact kernel resolves the same point completely.
        let full = symbolic_expand(gauss(), &ExpandPoint::Rational(rat(5, 13)), 4).unwrap();
        assert_eq!(full, word(&[2, 1, 1, 1]));

        // Non-integer d: the escalating interval kernel expands interior
        // rationals and the result projects back onto the point.
        let s52 = build_affine(&rat(5, 2), 96).unwrap().into_system();
        let w52 = symbolic_expand(&s52, &ExpandPoint::Rational(rat(1, 2)), 3).unwrap();
        let cyl = project(&s52, &w52).unwrap();
        let mut prod_la = 1.0f64;
        for digit in w52.digits() {
            prod_la *= s52.lambda(digit.to_u64().unwrap()).unwrap().hi().to_f64();
        }
        assert!((cyl.to_f64() - 0.5).abs() <= prod_la * (1.0 + 1e-9));
    }

    #[test]
    fn predicted_dimension_matches_piecewise_values() {
        let pd = predicted_dimension(
            affine3(),
            &GrowthFunction::ExpPower { gamma: rat(1, 1) },
            1000,
        )
        .unwrap();
        assert_eq!(pd.dim, rat(1, 3));
        assert_eq!(pd.profile.len(), 1000);
        let last = pd.profile.last().unwrap();
        assert_eq!(last.n, 1000);
        assert!((last.value - 1.0 / 3.0).abs() < 1e-2);

        let pd = predicted_dimension(
            gauss(),
            &GrowthFunction::ExpGeometric { gamma: rat(2, 1) },
            10,
        )
        .unwrap();
        assert_eq!(pd.dim, rat(1, 3));

        let s2 = build_affine(&rat(2, 1), 96).unwrap().into_system();
        let pd = predicted_dimension(
            &s2,
            &GrowthFunction::ExpPower { gamma: rat(3, 10) },
            10,
        )
        .unwrap();
        assert_eq!(pd.dim, rat(1, 1));

        assert!(matches!(
            predicted_dimension(
                affine3(),
                &GrowthFunction::Linear { gamma: rat(2, 1) },
                10
            ),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn generalized_lemma_grid_holds_at_d3() {
        let s_values = vec![
            RationalParam(rat(2, 5)),
            RationalParam(rat(3, 5)),
            RationalParam(rat(9, 10)),
        ];
        let report = verify_generalized_lemma(&rat(3, 1), &s_values, 60, 12).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        let expected: u64 = 3 * (1..=12u64).map(|n| 60 - n + 1).sum::<u64>();
        assert_eq!(report.points_checked, expected);
        assert!(report.max_ratio > 0.0 && report.max_ratio < 1.0);

        // s <= 1/d lacks a summable bound constant.
        assert!(matches!(
            verify_generalized_lemma(&rat(3, 1), &[RationalParam(rat(1, 4))], 10, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            verify_generalized_lemma(&rat(1, 1), &[RationalParam(rat(3, 5))], 10, 3),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            verify_generalized_lemma(&rat(3, 1), &[RationalParam(rat(3, 5))], 3, 10),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn system_spec_and_reports_roundtrip_as_json() {
        let spec = SystemSpec::AffineZeta {
            d: rat(3, 1),
            precision: 96,
        };
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"model\":\"affine-zeta\""));
        assert!(json.contains("\"d\":\"3\""));
        let back: SystemSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let sys = spec.build().unwrap();
        assert_eq!(*sys.d(), rat(3, 1));
        assert_eq!(sys.contraction_step(), 1);

        let spec = SystemSpec::Gauss;
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"model\":\"gauss\""));
        let back: SystemSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);

        let report = affine3().conditions().clone();
        let json = serde_json::to_string(&report).unwrap();
        let back: ConditionReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);

        let pd = predicted_dimension(
            affine3(),
            &GrowthFunction::ExpPower { gamma: rat(1, 1) },
            3,
        )
        .unwrap();
        let json = serde_json::to_string(&pd).unwrap();
        assert!(json.contains("\"dim\":\"1/3\""));
        let back: PredictedDimension = serde_json::from_str(&json).unwrap();
        assert_eq!(back, pd);
    }
}
