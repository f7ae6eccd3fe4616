//! Certified real arithmetic: midpoint-radius balls over dyadic bigfloats.
//!
//! A [`BigReal`] is an enclosure `center ± radius`. Every operation rounds
//! the center *and* accounts for the rounding in the radius, so the true
//! result of the corresponding exact operation on enclosed values is always
//! contained in the output ball. Transcendental functions carry explicit
//! truncation bounds for their series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use std::cmp::Ordering;
use std::sync::Mutex;

use super::dyadic::{BigFloat, Round};
use crate::error::{Error, Result};

/// Mantissa bits kept for radii; radii only ever need a sound order of
/// magnitude, not precision.
const RADIUS_BITS: u64 = 24;

/// Hard ceiling for the precision-escalation schedule.
pub const MAX_PRECISION: u64 = 8192;

/// Default starting precision for escalating computations.
pub const DEFAULT_PRECISION: u64 = 128;

#[derive(Debug, Clone)]
pub struct BigReal {
    center: BigFloat,
    radius: BigFloat, // >= 0
    prec: u64,
}

fn round_up_radius(r: &BigFloat) -> BigFloat {
    debug_assert!(r.signum() >= 0);
    let (out, err) = r.round_to_bits(RADIUS_BITS, Round::Ceil);
    debug_assert!(err.is_none() || out.cmp_val(r) != Ordering::Less);
    out
}

/// `a + b` for radii, rounded up.
fn rad_add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    round_up_radius(&a.add(b))
}

/// `a * b` for radii, rounded up.
fn rad_mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    round_up_radius(&a.mul(b))
}

/// Upper bound for `a / b` with `b > 0`.
fn rad_div(a: &BigFloat, b: &BigFloat) -> BigFloat {
    let (q, err) = a.div_round(b, RADIUS_BITS);
    let q = match err {
        Some(e) => q.add(&BigFloat::new(BigInt::one(), e)),
        None => q,
    };
    round_up_radius(&q)
}

impl BigReal {
    // ---------- constructors ----------

    pub fn exact_dyadic(c: BigFloat, prec: u64) -> Self {
        BigReal { center: c, radius: BigFloat::zero(), prec }
    }

    pub fn zero(prec: u64) -> Self {
        Self::exact_dyadic(BigFloat::zero(), prec)
    }

    pub fn one(prec: u64) -> Self {
        Self::exact_dyadic(BigFloat::one(), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: u64) -> Self {
        Self::exact_dyadic(BigFloat::from_bigint(n), prec)
    }

    pub fn from_u64(n: u64, prec: u64) -> Self {
        Self::exact_dyadic(BigFloat::from_u64(n), prec)
    }

    pub fn from_i64(n: i64, prec: u64) -> Self {
        Self::exact_dyadic(BigFloat::from_i64(n), prec)
    }

    /// Enclose an exact rational. Exact (radius zero) when the reduced
    /// denominator is a power of two.
    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        let num = BigFloat::from_bigint(q.numer());
        let den = BigFloat::from_bigint(q.denom());
        let (c, err) = num.div_round(&den, prec + 8);
        let radius = match err {
            Some(e) => BigFloat::new(BigInt::one(), e),
            None => BigFloat::zero(),
        };
        BigReal { center: c, radius, prec }.normalized()
    }

    /// Ball from explicit interval endpoints (`lo <= hi`).
    pub fn from_interval(lo: &BigFloat, hi: &BigFloat, prec: u64) -> Self {
        debug_assert!(lo.cmp_val(hi) != Ordering::Greater);
        let c = lo.add(hi).mul_pow2(-1);
        let r = hi.sub(lo).mul_pow2(-1);
        BigReal { center: c, radius: round_up_radius(&r), prec }.normalized()
    }

    /// Smallest ball containing both inputs.
    pub fn hull(&self, other: &Self) -> Self {
        let lo = if self.lo().cmp_val(&other.lo()) == Ordering::Less { self.lo() } else { other.lo() };
        let hi = if self.hi().cmp_val(&other.hi()) == Ordering::Greater { self.hi() } else { other.hi() };
        Self::from_interval(&lo, &hi, self.prec.max(other.prec))
    }

    /// Round the center down to the working precision, folding the rounding
    /// error into the radius. Exact values (small mantissas) pass through.
    fn normalized(mut self) -> Self {
        let limit = self.prec + 8;
        if self.center.mantissa_bits() > limit {
            let (c, err) = self.center.round_to_bits(limit, Round::Nearest);
            self.center = c;
            if let Some(e) = err {
                self.radius = rad_add(&self.radius, &BigFloat::new(BigInt::one(), e));
            }
        }
        self.radius = round_up_radius(&self.radius);
        debug_assert!(self.radius.signum() >= 0);
        self
    }

    // ---------- accessors ----------

    pub fn precision(&self) -> u64 {
        self.prec
    }

    pub fn with_precision(mut self, prec: u64) -> Self {
        self.prec = prec;
        self.normalized()
    }

    pub fn center(&self) -> &BigFloat {
        &self.center
    }

    pub fn radius(&self) -> &BigFloat {
        &self.radius
    }

    pub fn is_exact(&self) -> bool {
        self.radius.is_zero()
    }

    /// Exact lower endpoint of the enclosure.
    pub fn lo(&self) -> BigFloat {
        self.center.sub(&self.radius)
    }

    /// Exact upper endpoint of the enclosure.
    pub fn hi(&self) -> BigFloat {
        self.center.add(&self.radius)
    }

    /// Upper bound on `|x|` over the ball.
    pub fn mag_upper(&self) -> BigFloat {
        round_up_radius(&self.center.abs().add(&self.radius))
    }

    /// Lower bound on `|x|` over the ball (zero if the ball straddles zero).
    pub fn mag_lower(&self) -> BigFloat {
        let m = self.center.abs().sub(&self.radius);
        if m.signum() < 0 {
            BigFloat::zero()
        } else {
            // round toward zero to stay a valid lower bound
            m.round_to_bits(RADIUS_BITS, Round::Floor).0
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.center.to_f64()
    }

    pub fn radius_f64(&self) -> f64 {
        self.radius.to_f64()
    }

    // ---------- ring operations ----------

    pub fn neg(&self) -> Self {
        BigReal { center: self.center.neg(), radius: self.radius.clone(), prec: self.prec }
    }

    pub fn add(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        BigReal {
            center: self.center.add(&other.center),
            radius: rad_add(&self.radius, &other.radius),
            prec,
        }
        .normalized()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec.max(other.prec);
        let center = self.center.mul(&other.center);
        // |a||rb| + |b||ra| + ra rb
        let amag = round_up_radius(&self.center.abs());
        let bmag = round_up_radius(&other.center.abs());
        let mut radius = rad_mul(&amag, &other.radius);
        radius = rad_add(&radius, &rad_mul(&bmag, &self.radius));
        radius = rad_add(&radius, &rad_mul(&self.radius, &other.radius));
        BigReal { center, radius, prec }.normalized()
    }

    /// Exact scaling by `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        BigReal {
            center: self.center.mul_pow2(k),
            radius: self.radius.mul_pow2(k),
            prec: self.prec,
        }
    }

    /// Multiply by an exact dyadic value.
    pub fn mul_dyadic(&self, k: &BigFloat) -> Self {
        BigReal {
            center: self.center.mul(k),
            radius: rad_mul(&self.radius, &k.abs()),
            prec: self.prec,
        }
        .normalized()
    }

    pub fn mul_u64(&self, k: u64) -> Self {
        self.mul_dyadic(&BigFloat::from_u64(k))
    }

    /// Certified reciprocal. Fails if the ball contains zero.
    pub fn recip(&self) -> Result<Self> {
        let mlo = self.mag_lower();
        if mlo.is_zero() {
            return Err(Error::Domain("reciprocal of an interval containing zero".into()));
        }
        let (c, err) = BigFloat::one().div_round(&self.center, self.prec + 8);
        let mut radius = match err {
            Some(e) => BigFloat::new(BigInt::one(), e),
            None => BigFloat::zero(),
        };
        // |1/y - 1/yc| <= r / (|y| |yc|) <= r / (mlo * |yc|)
        let denom = mlo.mul(&self.center.abs());
        radius = rad_add(&radius, &rad_div(&self.radius, &denom));
        Ok(BigReal { center: c, radius, prec: self.prec }.normalized())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power by repeated squaring (negative exponents via `recip`).
    pub fn powi(&self, n: i64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::one(self.prec));
        }
        let mut base = if n < 0 { self.recip()? } else { self.clone() };
        let mut k = n.unsigned_abs();
        let mut acc: Option<BigReal> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.unwrap())
    }

    // ---------- comparisons ----------

    /// Certified three-way comparison; `None` when the enclosures overlap.
    pub fn cmp_certain(&self, other: &Self) -> Option<Ordering> {
        if self.is_exact() && other.is_exact() {
            return Some(self.center.cmp_val(&other.center));
        }
        if self.hi().cmp_val(&other.lo()) == Ordering::Less {
            return Some(Ordering::Less);
        }
        if self.lo().cmp_val(&other.hi()) == Ordering::Greater {
            return Some(Ordering::Greater);
        }
        None
    }

    pub fn lt_certain(&self, other: &Self) -> Option<bool> {
        match self.cmp_certain(other) {
            Some(Ordering::Less) => Some(true),
            Some(_) => Some(false),
            None => None,
        }
    }

    pub fn is_positive_certain(&self) -> Option<bool> {
        if self.lo().signum() > 0 {
            Some(true)
        } else if self.hi().signum() <= 0 {
            Some(false)
        } else {
            None
        }
    }

    /// Exact comparison of the ball against a rational:
    /// `Some(Less)` means every point of the ball is `< q`.
    pub fn cmp_rational(&self, q: &BigRational) -> Option<Ordering> {
        let lo = dyadic_to_rational(&self.lo());
        let hi = dyadic_to_rational(&self.hi());
        if &hi < q {
            Some(Ordering::Less)
        } else if &lo > q {
            Some(Ordering::Greater)
        } else if lo == hi && &lo == q {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Certified floor: `None` when the enclosure straddles an integer.
    pub fn floor_certified(&self) -> Option<BigInt> {
        let flo = self.lo().floor_int();
        let fhi = self.hi().floor_int();
        if flo == fhi {
            Some(flo)
        } else {
            None
        }
    }

    /// True if the exact rational lies inside the enclosure.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        let lo = dyadic_to_rational(&self.lo());
        let hi = dyadic_to_rational(&self.hi());
        &lo <= q && q <= &hi
    }

    // ---------- elementary functions ----------

    /// Certified `exp`.
    pub fn exp(&self) -> Self {
        let prec = self.prec;
        if self.is_exact() {
            return exp_point(&self.center, prec);
        }
        // Small radius: exp(c ± r) = exp(c) * (1 ± (r + r^2)) for r <= 1/2.
        let half = BigFloat::new(BigInt::one(), -1);
        if self.radius.cmp_val(&half) != Ordering::Greater {
            let base = exp_point(&self.center, prec);
            let rr = rad_add(&self.radius, &rad_mul(&self.radius, &self.radius));
            let unit = BigReal { center: BigFloat::one(), radius: rr, prec };
            return base.mul(&unit);
        }
        // Wide ball: use monotonicity.
        let lo = exp_point(&self.lo(), prec);
        let hi = exp_point(&self.hi(), prec);
        lo.hull(&hi)
    }

    /// Certified natural logarithm; the ball must be strictly positive.
    pub fn ln(&self) -> Result<Self> {
        let prec = self.prec;
        let lo = self.lo();
        if lo.signum() <= 0 {
            return Err(Error::Domain("ln of an interval touching (-inf, 0]".into()));
        }
        let base = ln_point(&self.center, prec);
        if self.is_exact() {
            return Ok(base);
        }
        // |ln(x) - ln(c)| <= r / lo  (mean value theorem)
        let extra = rad_div(&self.radius, &lo);
        Ok(BigReal { center: base.center, radius: rad_add(&base.radius, &extra), prec }
            .normalized())
    }

    /// Certified `self^y` for strictly positive `self`.
    pub fn pow(&self, y: &Self) -> Result<Self> {
        Ok(self.ln()?.mul(y).exp())
    }
}

/// Exact conversion of a dyadic float to a rational.
pub fn dyadic_to_rational(x: &BigFloat) -> BigRational {
    let e = x.exponent();
    if e >= 0 {
        BigRational::from_integer(x.mantissa() << e as u64)
    } else {
        BigRational::new(x.mantissa().clone(), BigInt::one() << (-e) as u64)
    }
}

// ---------- point-valued elementary functions ----------

/// Certified `exp` of an exact dyadic argument.
fn exp_point(d: &BigFloat, prec: u64) -> BigReal {
    if d.is_zero() {
        return BigReal::one(prec);
    }
    // Argument reduction: t = d / 2^k with |t| <= 1/4.
    let k = (d.top_exp().unwrap() + 2).max(0) as u64;
    let w = prec + 2 * k + 48;
    let mut t = BigReal::exact_dyadic(d.clone(), w).normalized();
    t = t.mul_pow2(-(k as i64));

    // Taylor series sum_{i>=0} t^i / i!
    let mut sum = BigReal::one(w);
    let mut term = BigReal::one(w);
    let mut i: u64 = 1;
    loop {
        term = term.mul(&t);
        term = term
            .div(&BigReal::from_u64(i, w))
            .expect("division by a positive integer");
        sum = sum.add(&term);
        let mag = term.mag_upper();
        if mag.is_zero() || mag.top_exp().unwrap() < -(w as i64 + 2) {
            break;
        }
        i += 1;
    }
    // Tail of the series is at most the magnitude of the last term
    // (ratio between consecutive terms is <= 1/4 / 1 < 1/3).
    let tail = term.mag_upper();
    let mut out = BigReal {
        center: sum.center,
        radius: rad_add(&sum.radius, &tail),
        prec: w,
    };
    for _ in 0..k {
        out = out.mul(&out);
    }
    out.with_precision(prec)
}

/// Certified `ln` of an exact, strictly positive dyadic argument.
fn ln_point(x: &BigFloat, prec: u64) -> BigReal {
    assert!(x.signum() > 0, "ln_point requires a positive argument");
    let w = prec + 48;
    // Write x = u * 2^s with u in [1/2, 1), then shift u into
    // [~0.7071, ~1.4142) so the atanh series converges quickly.
    let mut s = x.top_exp().unwrap();
    let mut u = x.mul_pow2(-s);
    // if u^2 < 1/2, double u
    let half = BigFloat::new(BigInt::one(), -1);
    if u.mul(&u).cmp_val(&half) == Ordering::Less {
        u = u.mul_pow2(1);
        s -= 1;
    }
    // ln u = 2 atanh((u-1)/(u+1))
    let u = BigReal::exact_dyadic(u, w).normalized();
    let one = BigReal::one(w);
    let t = u.sub(&one).div(&u.add(&one)).expect("u + 1 > 0");
    let ln_u = atanh_small(&t, w).mul_pow2(1);
    if s == 0 {
        return ln_u.with_precision(prec);
    }
    let ln2 = ln2_cached(w);
    ln_u.add(&ln2.mul_dyadic(&BigFloat::from_i64(s))).with_precision(prec)
}

/// `atanh(t)` for `|t| < 1/2` via the odd series, with a certified tail.
fn atanh_small(t: &BigReal, w: u64) -> BigReal {
    debug_assert!(
        t.mag_upper().cmp_val(&BigFloat::new(BigInt::one(), -1)) == Ordering::Less,
        "atanh_small requires |t| < 1/2"
    );
    let t2 = t.mul(t);
    let mut sum = t.clone();
    let mut tp = t.clone(); // t^(2k+1)
    let mut k: u64 = 1;
    loop {
        tp = tp.mul(&t2);
        let term = tp
            .div(&BigReal::from_u64(2 * k + 1, w))
            .expect("division by odd integer");
        sum = sum.add(&term);
        let mag = term.mag_upper();
        if mag.is_zero() || mag.top_exp().unwrap() < -(w as i64 + 2) {
            break;
        }
        k += 1;
    }
    // Tail: sum_{j>k} |t|^(2j+1)/(2j+1) <= |t|^(2k+3) / (1 - t^2) <= 2 |tp_next|
    let tail = rad_mul(&tp.mag_upper(), &t2.mag_upper()).mul_pow2(1);
    BigReal {
        center: sum.center,
        radius: rad_add(&sum.radius, &round_up_radius(&tail)),
        prec: w,
    }
    .normalized()
}

static LN2_CACHE: Mutex<Option<(u64, BigFloat, BigFloat)>> = Mutex::new(None);

/// `ln 2 = 2 atanh(1/3)`, cached per precision.
fn ln2_cached(prec: u64) -> BigReal {
    {
        let guard = LN2_CACHE.lock().unwrap();
        if let Some((p, c, r)) = guard.as_ref() {
            if *p >= prec {
                return BigReal { center: c.clone(), radius: r.clone(), prec }.normalized();
            }
        }
    }
    let w = prec + 32;
    let third = BigReal::from_u64(1, w)
        .div(&BigReal::from_u64(3, w))
        .expect("1/3");
    let val = atanh_small(&third, w).mul_pow2(1).with_precision(prec);
    let mut guard = LN2_CACHE.lock().unwrap();
    *guard = Some((prec, val.center.clone(), val.radius.clone()));
    val
}

/// Escalating certified floor: re-evaluates `eval` at doubling precision
/// until the floor is unambiguous, starting from `start_prec` and giving up
/// beyond [`MAX_PRECISION`].
pub fn certified_floor_with<F>(start_prec: u64, mut eval: F) -> Result<BigInt>
where
    F: FnMut(u64) -> Result<BigReal>,
{
    let mut p = start_prec.max(8);
    loop {
        let x = eval(p)?;
        if let Some(f) = x.floor_certified() {
            return Ok(f);
        }
        if p >= MAX_PRECISION {
            return Err(Error::PrecisionExhausted(format!(
                "floor undecidable at {} bits (enclosure straddles an integer)",
                p
            )));
        }
        p = (p * 2).min(MAX_PRECISION);
    }
}
