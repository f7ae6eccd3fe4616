//! The composition-sum bound and its d-decaying generalization.
//!
//! For `A(m,n) = {(i_1,...,i_n) in {1..m}^n : sum i_k = m}` and `t = 2s`
//! with `s in (1/2, 1)`, the sum `sum_{A(m,n)} prod i_k^{-t}` is bounded by
//! `((9/2)(2 + zeta(t)))^n * m^{-t}`. This module evaluates the left-hand
//! side exactly (as a certified enclosure) by dynamic programming, the
//! right-hand side from the certified zeta evaluator, and verifies the
//! inequality over parameter grids with no false positives: a violation is
//! reported only when the certified lower bound of the left side exceeds
//! the certified upper bound of the right side.

use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::rational_string;
use crate::numerics::{zeta, BigFloat, BigReal, MAX_PRECISION};

/// A single composition-sum evaluation request; `t` plays the role of `2s`
/// (or `d*s` for the d-decaying generalization).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompositionSumQuery {
    pub m: u64,
    pub n: u64,
    #[serde(with = "rational_string")]
    pub t: BigRational,
}

impl CompositionSumQuery {
    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n == 0 {
            return Err(Error::Domain(
                "composition sums need m >= 1 and n >= 1".into(),
            ));
        }
        if !self.t.is_positive() {
            return Err(Error::Domain(format!(
                "composition sums need a positive exponent, got t = {}",
                self.t
            )));
        }
        Ok(())
    }
}

/// Certified enclosure of `sum_{A(m,n)} prod_k i_k^{-t}`.
///
/// Empty index sets (`n > m`) sum to exactly zero; the full-ones
/// composition (`n = m`) gives exactly one.
pub fn composition_sum(q: &CompositionSumQuery, prec: u64) -> Result<BigReal> {
    q.validate()?;
    if q.n > q.m {
        return Ok(BigReal::zero(prec));
    }
    let table = composition_sum_table(q.m, q.n, &q.t, prec)?;
    Ok(table[q.n as usize][q.m as usize].clone())
}

/// The DP table `g[k][j] = sum over compositions of j into k parts of
/// prod i^{-t}` for `k <= n_max`, `j <= m_max` (entries with `j < k` are
/// exact zeros). `g[1][j] = j^{-t}`; each row is the truncated convolution
/// of the previous row with the weights. O(n_max * m_max^2) ball ops.
pub fn composition_sum_table(
    m_max: u64,
    n_max: u64,
    t: &BigRational,
    prec: u64,
) -> Result<Vec<Vec<BigReal>>> {
    let m_max = m_max as usize;
    let n_max = n_max as usize;
    let w = prec + 16;
    let minus_t = BigReal::from_rational(t, w).neg();
    // weights[i] = i^{-t}; weights[1] = 1 exactly (ln 1 = 0, exp 0 = 1).
    let mut weights = vec![BigReal::zero(w); m_max + 1];
    for (i, slot) in weights.iter_mut().enumerate().skip(1) {
        *slot = BigReal::from_u64(i as u64, w).pow(&minus_t)?;
    }
    let zero = BigReal::zero(w);
    let mut table = vec![vec![zero.clone(); m_max + 1]; n_max + 1];
    table[1].clone_from_slice(&weights);
    table[1][0] = zero.clone();
    for k in 2..=n_max {
        for j in k..=m_max {
            let mut acc = zero.clone();
            // last part i >= 1, leaving j - i >= k - 1
            for i in 1..=(j - k + 1) {
                acc = acc.add(&weights[i].mul(&table[k - 1][j - i]));
            }
            table[k][j] = acc;
        }
    }
    let prec_out = prec;
    Ok(table
        .into_iter()
        .map(|row| row.into_iter().map(|b| b.with_precision(prec_out)).collect())
        .collect())
}

/// The lemma constant `(9/2)(2 + zeta(t))` as a certified enclosure;
/// requires `t > 1` (at `t <= 1` the zeta bound fails, i.e. `s <= 1/d`).
pub fn generalized_bound_constant(t: &BigRational, prec: u64) -> Result<BigReal> {
    if *t <= BigRational::one() {
        return Err(Error::Domain(format!(
            "bound constant needs t > 1, got t = {t} (exponent at or past the zeta pole)"
        )));
    }
    let w = prec + 16;
    let z = zeta(&BigReal::from_rational(t, w), w)?;
    let two = BigReal::from_u64(2, w);
    // 9/2 is exactly dyadic.
    let nine_halves = BigFloat::from_f64(4.5).expect("finite");
    Ok(two.add(&z).mul_dyadic(&nine_halves).with_precision(prec))
}

/// Right-hand side of the lemma: `((9/2)(2 + zeta(t)))^n * m^{-t}`.
pub fn lemma_bound(q: &CompositionSumQuery, prec: u64) -> Result<BigReal> {
    q.validate()?;
    let w = prec + 16;
    let c = generalized_bound_constant(&q.t, w)?;
    let minus_t = BigReal::from_rational(&q.t, w).neg();
    let m_pow = BigReal::from_u64(q.m, w).pow(&minus_t)?;
    Ok(c.powi(q.n as i64)?.mul(&m_pow).with_precision(prec))
}

/// Verification grid: all `(m, n)` with `n <= n_max`, `n <= m <= m_max`,
/// crossed with the given values of `s` (each in `(1/2, 1)`; `t = 2s`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaGrid {
    pub m_max: u64,
    pub n_max: u64,
    pub s_values: Vec<RationalParam>,
}

/// Serde-friendly rational wrapper ("3/5", "0.55", "2").
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalParam(#[serde(with = "rational_string")] pub BigRational);

/// A certified violation: the lower bound of the left side exceeded the
/// upper bound of the right side.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaViolation {
    pub m: u64,
    pub n: u64,
    #[serde(with = "rational_string")]
    pub s: BigRational,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub points_checked: u64,
    pub violations: Vec<LemmaViolation>,
    /// Largest observed LHS/RHS (upper bound of the certified ratio).
    pub max_ratio: f64,
}

/// Checks `composition_sum <= lemma_bound` at every grid point. An
/// indeterminate interval comparison doubles the working precision for that
/// value of `s` and retries; only certified crossings count as violations.
pub fn verify_lemma(grid: &LemmaGrid) -> Result<LemmaReport> {
    if grid.m_max < grid.n_max || grid.n_max == 0 {
        return Err(Error::Domain(format!(
            "grid needs 1 <= n_max <= m_max, got n_max {}, m_max {}",
            grid.n_max, grid.m_max
        )));
    }
    let half = BigRational::new(1.into(), 2.into());
    for s in &grid.s_values {
        if s.0 <= half || s.0 >= BigRational::one() {
            return Err(Error::Domain(format!(
                "lemma verification needs 1/2 < s < 1, got s = {}",
                s.0
            )));
        }
    }
    let per_s: Vec<(u64, Vec<LemmaViolation>, f64)> = grid
        .s_values
        .par_iter()
        .map(|s| verify_lemma_for_s(grid.m_max, grid.n_max, &s.0))
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

fn verify_lemma_for_s(
    m_max: u64,
    n_max: u64,
    s: &BigRational,
) -> Result<(u64, Vec<LemmaViolation>, f64)> {
    let t = s * BigRational::from_integer(2.into());
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
                    Some(std::cmp::Ordering::Less) | Some(std::cmp::Ordering::Equal) => {}
                    Some(std::cmp::Ordering::Greater) => violations.push(LemmaViolation {
                        m,
                        n,
                        s: s.clone(),
                    }),
                    None => {
                        // Indeterminate: the enclosures overlap. Retry the
                        // whole s-slice at doubled precision.
                        prec *= 2;
                        if prec > MAX_PRECISION {
                            return Err(Error::PrecisionExhausted(format!(
                                "lemma comparison stayed indeterminate at m={m}, n={n}, s={s}"
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
