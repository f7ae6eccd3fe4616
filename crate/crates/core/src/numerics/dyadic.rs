//! Exact dyadic numbers `m * 2^e` with arbitrary-precision mantissa.
//!
//! Addition, subtraction and multiplication are exact; rounding is an
//! explicit, separate operation that reports its own error bound. This is
//! the substrate for the certified ball arithmetic in [`crate::numerics::real`].

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

/// Rounding direction for [`BigFloat::round_to_bits`] and friends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    /// Toward negative infinity.
    Floor,
    /// Toward positive infinity.
    Ceil,
    /// To nearest (ties away from zero is fine here; only the half-ulp error
    /// bound matters).
    Nearest,
}

/// An exact dyadic rational `m * 2^e`, normalized so that `m` is odd or zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    m: BigInt,
    e: i64,
}

impl BigFloat {
    pub fn new(m: BigInt, e: i64) -> Self {
        let mut f = BigFloat { m, e };
        f.normalize();
        f
    }

    fn normalize(&mut self) {
        if self.m.is_zero() {
            self.e = 0;
            return;
        }
        let tz = self.m.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.m >>= tz;
            self.e += tz as i64;
        }
    }

    pub fn zero() -> Self {
        BigFloat { m: BigInt::zero(), e: 0 }
    }

    pub fn one() -> Self {
        BigFloat { m: BigInt::one(), e: 0 }
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self::new(n.clone(), 0)
    }

    pub fn from_biguint(n: &BigUint) -> Self {
        Self::new(BigInt::from_biguint(Sign::Plus, n.clone()), 0)
    }

    pub fn from_u64(n: u64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::new(BigInt::from(n), 0)
    }

    /// Exact conversion; every finite `f64` is a dyadic rational.
    pub fn from_f64(x: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        if x == 0.0 {
            return Some(Self::zero());
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_field == 0 {
            (frac, -1074) // subnormal
        } else {
            (frac | (1u64 << 52), exp_field - 1075)
        };
        Some(Self::new(BigInt::from(sign * mant as i64), exp))
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    /// -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        match self.m.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// Number of bits in the mantissa (0 for zero).
    pub fn mantissa_bits(&self) -> u64 {
        self.m.magnitude().bits()
    }

    /// Smallest `t` with `|self| < 2^t`; `None` for zero.
    /// Since the mantissa is odd, `2^(t-1) <= |self| < 2^t`.
    pub fn top_exp(&self) -> Option<i64> {
        if self.m.is_zero() {
            None
        } else {
            Some(self.e + self.mantissa_bits() as i64)
        }
    }

    /// Exact `self * 2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.m.is_zero() {
            return self.clone();
        }
        BigFloat { m: self.m.clone(), e: self.e + k }
    }

    pub fn neg(&self) -> Self {
        BigFloat { m: -&self.m, e: self.e }
    }

    pub fn abs(&self) -> Self {
        BigFloat { m: self.m.abs(), e: self.e }
    }

    /// Exact sum.
    pub fn add(&self, other: &Self) -> Self {
        if self.m.is_zero() {
            return other.clone();
        }
        if other.m.is_zero() {
            return self.clone();
        }
        let e = self.e.min(other.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &other.m << (other.e - e) as u64;
        Self::new(a + b, e)
    }

    /// Exact difference.
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Exact product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.m.is_zero() || other.m.is_zero() {
            return Self::zero();
        }
        // product of odd mantissas is odd: no renormalization needed
        BigFloat { m: &self.m * &other.m, e: self.e + other.e }
    }

    pub fn cmp_val(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        // Same nonzero sign: a quick magnitude check avoids large shifts.
        let (ta, tb) = (self.top_exp().unwrap(), other.top_exp().unwrap());
        if ta != tb {
            let mag = ta.cmp(&tb); // compares |self| vs |other|
            return if sa > 0 { mag } else { mag.reverse() };
        }
        // Same top exponent: align (shift is at most max mantissa width + 1).
        let e = self.e.min(other.e);
        let a = &self.m << (self.e - e) as u64;
        let b = &other.m << (other.e - e) as u64;
        a.cmp(&b)
    }

    /// Exact floor to an integer.
    pub fn floor_int(&self) -> BigInt {
        if self.e >= 0 {
            &self.m << self.e as u64
        } else {
            // BigInt >> is an arithmetic shift: rounds toward -inf.
            &self.m >> (-self.e) as u64
        }
    }

    /// Exact ceiling to an integer.
    pub fn ceil_int(&self) -> BigInt {
        -self.neg().floor_int()
    }

    /// True if the value is an exact integer.
    pub fn is_integer(&self) -> bool {
        self.m.is_zero() || self.e >= 0
    }

    /// Round the mantissa to at most `bits` bits in direction `dir`.
    ///
    /// Returns `(rounded, err_exp)` where the rounding error is at most
    /// `2^err_exp` (strictly less for `Nearest`); `err_exp == None` means the
    /// result is exact.
    pub fn round_to_bits(&self, bits: u64, dir: Round) -> (Self, Option<i64>) {
        let nbits = self.mantissa_bits();
        if nbits <= bits {
            return (self.clone(), None);
        }
        let shift = nbits - bits;
        let cut = self.e + shift as i64;
        let rounded = match dir {
            Round::Floor => Self::new(&self.m >> shift, cut),
            Round::Ceil => Self::new(-((-&self.m) >> shift), cut),
            Round::Nearest => {
                let half = BigInt::one() << (shift - 1);
                Self::new((&self.m + half) >> shift, cut)
            }
        };
        let err = match dir {
            Round::Nearest => cut - 1,
            _ => cut,
        };
        (rounded, Some(err))
    }

    /// `self / other` to about `bits` significant bits, rounded toward zero.
    ///
    /// Returns `(quotient, err_exp)`: the true quotient lies within
    /// `2^err_exp` of the result (on the side away from zero).
    pub fn div_round(&self, other: &Self, bits: u64) -> (Self, Option<i64>) {
        assert!(!other.is_zero(), "division by zero BigFloat");
        if self.is_zero() {
            return (Self::zero(), None);
        }
        let na = self.mantissa_bits() as i64;
        let nb = other.mantissa_bits() as i64;
        // Scale so the integer quotient has ~bits+2 bits.
        let k = bits as i64 + 2 + nb - na;
        let (num, den, res_exp) = if k >= 0 {
            (&self.m << k as u64, other.m.clone(), self.e - other.e - k)
        } else {
            (self.m.clone(), &other.m << (-k) as u64, self.e - other.e - k)
        };
        let q = &num / &den; // BigInt division truncates toward zero
        let exact = (&q * &den) == num;
        let out = Self::new(q, res_exp);
        if exact {
            (out, None)
        } else {
            (out, Some(res_exp))
        }
    }

    /// Best-effort conversion for display; saturates on overflow.
    pub fn to_f64(&self) -> f64 {
        if self.m.is_zero() {
            return 0.0;
        }
        let nbits = self.mantissa_bits();
        let (take, extra) = if nbits > 53 { (53u64, nbits - 53) } else { (nbits, 0) };
        let _ = take;
        let top: BigInt = self.m.abs() >> extra;
        // top has <= 53 bits, fits in i64/f64 exactly
        let top_i = i64::try_from(&top).unwrap_or(i64::MAX) as f64;
        let exp = self.e + extra as i64;
        let val = top_i * pow2_f64(exp);
        if self.signum() < 0 {
            -val
        } else {
            val
        }
    }
}

fn pow2_f64(e: i64) -> f64 {
    if e >= 1024 {
        f64::INFINITY
    } else if e <= -1075 {
        0.0
    } else {
        // exact: f64 can represent all powers of two in this range
        let (mut v, mut k) = (1.0f64, e);
        while k >= 512 {
            v *= 2f64.powi(512);
            k -= 512;
        }
        while k <= -512 {
            v *= 2f64.powi(-512);
            k += 512;
        }
        v * 2f64.powi(k as i32)
    }
}
