//! Continued-fraction engine: Gauss-map expansion, convergents, exact
//! cylinder intervals, and partial-quotient statistics.
//!
//! A point `x` in `(0,1)` has the expansion `x = 1/(a_1 + 1/(a_2 + ...))`
//! with positive integer partial quotients `a_k`. The rank-`n` cylinder
//! `I_n(a_1,...,a_n)` is the set of points whose expansion starts with the
//! given digits; its endpoints are the `n`-th convergent `p_n/q_n` and the
//! mediant `(p_n+p_{n-1})/(q_n+q_{n-1})`, and its length is exactly
//! `1/(q_n (q_n + q_{n-1}))`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numerics::{BigReal, DEFAULT_PRECISION, MAX_PRECISION};

/// A finite word of partial quotients; every digit is at least 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DigitWord {
    digits: Vec<BigUint>,
}

impl DigitWord {
    pub fn new(digits: Vec<BigUint>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::Domain("digit word must be non-empty".into()));
        }
        if digits.iter().any(|d| d.is_zero()) {
            return Err(Error::Domain("partial quotients must be >= 1".into()));
        }
        Ok(DigitWord { digits })
    }

    pub fn from_u64s(digits: &[u64]) -> Result<Self> {
        Self::new(digits.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: length >= 1
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    /// The word extended by one more digit (`digit >= 1`).
    pub fn extended(&self, digit: &BigUint) -> Result<Self> {
        let mut digits = self.digits.clone();
        digits.push(digit.clone());
        Self::new(digits)
    }

    /// True if `other`'s digits start with this word.
    pub fn is_prefix_of(&self, other: &DigitWord) -> bool {
        other.digits.len() >= self.digits.len()
            && other.digits[..self.digits.len()] == self.digits[..]
    }
}

impl std::fmt::Display for DigitWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "]")
    }
}

/// The rank-`n` cylinder of a digit word, with exact rational endpoints.
#[derive(Clone, Debug)]
pub struct Cylinder {
    pub word: DigitWord,
    /// Open-interval endpoints, `left < right`.
    pub left: BigRational,
    pub right: BigRational,
    /// `(p_n, q_n)`.
    pub convergent: (BigInt, BigInt),
    /// `(p_{n-1}, q_{n-1})`.
    pub previous: (BigInt, BigInt),
}

impl Cylinder {
    /// Exact length `right - left = 1/(q_n (q_n + q_{n-1}))`.
    pub fn length(&self) -> BigRational {
        &self.right - &self.left
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.left + &self.right) / BigRational::from_integer(BigInt::from(2))
    }

    /// Strict interior membership (the endpoint set is countable and
    /// measure-zero; callers that care about endpoints handle them
    /// explicitly).
    pub fn contains_open(&self, x: &BigRational) -> bool {
        *x > self.left && *x < self.right
    }
}

/// Running sums `S_n` and running maxima `T_n` of a digit word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStats {
    pub word: DigitWord,
    /// `S_n = a_1 + ... + a_n` for each prefix.
    pub sums: Vec<BigUint>,
    /// `T_n = max(a_1, ..., a_n)` for each prefix.
    pub maxima: Vec<BigUint>,
}

/// Gauss-map expansion of an exact rational `x` in `(0,1)`: up to `n`
/// digits, stopping early (with the flag set) if the expansion terminates.
/// The terminating expansion is canonical: its last digit is >= 2.
pub fn expand_rational(x: &BigRational, n: usize) -> Result<(DigitWord, bool)> {
    if n == 0 {
        return Err(Error::Domain("expansion depth must be >= 1".into()));
    }
    if !(x.is_positive() && *x < BigRational::one()) {
        return Err(Error::Domain(format!("expansion needs 0 < x < 1, got {x}")));
    }
    // x = p/q in lowest terms; 1/x = q/p, digit = floor(q/p), tail = (q mod p)/p.
    let mut p = x.numer().magnitude().clone();
    let mut q = x.denom().magnitude().clone();
    let mut digits = Vec::new();
    let mut terminated = false;
    for _ in 0..n {
        let (a, r) = num_integer::Integer::div_rem(&q, &p);
        digits.push(a);
        if r.is_zero() {
            terminated = true;
            break;
        }
        q = p;
        p = r;
    }
    Ok((DigitWord::new(digits)?, terminated))
}

/// Gauss-map expansion of a ball enclosure `x` in `(0,1)`: each digit is a
/// certified floor of the current reciprocal, re-deriving the whole chain at
/// higher working precision when a floor cannot be certified.
///
/// Exact (radius-zero) inputs are dyadic rationals: they take the exact
/// Euclid path, which is the only way to certify the terminating step
/// (there `1/y` is exactly an integer, and no finite ball precision can
/// place a floor on either side of it). Inexact enclosures never terminate.
pub fn expand_real(x: &BigReal, n: usize) -> Result<(DigitWord, bool)> {
    if n == 0 {
        return Err(Error::Domain("expansion depth must be >= 1".into()));
    }
    if x.is_positive_certain() != Some(true)
        || x.lt_certain(&BigReal::one(x.precision())) != Some(true)
    {
        return Err(Error::Domain(format!(
            "expansion needs 0 < x < 1 certified, got center {}",
            x.to_f64()
        )));
    }
    if x.is_exact() {
        return expand_rational(&crate::numerics::dyadic_to_rational(x.center()), n);
    }
    let mut prec = x.precision().max(DEFAULT_PRECISION);
    loop {
        match expand_real_attempt(x, n, prec) {
            Some(out) => return out,
            None => {
                prec *= 2;
                if prec > MAX_PRECISION {
                    return Err(Error::PrecisionExhausted(format!(
                        "could not certify {n} partial quotients at any precision up to {MAX_PRECISION}"
                    )));
                }
            }
        }
    }
}

/// One pass at fixed working precision; `None` requests escalation.
fn expand_real_attempt(x: &BigReal, n: usize, prec: u64) -> Option<Result<(DigitWord, bool)>> {
    let mut y = x.clone().with_precision(prec);
    let mut digits: Vec<BigUint> = Vec::new();
    for _ in 0..n {
        let r = match y.recip() {
            Ok(r) => r,
            Err(_) => return None, // straddles zero: not certifiable here
        };
        let a = r.floor_certified()?;
        if !a.is_positive() {
            return None; // ball slop pushed the floor below 1
        }
        y = r.sub(&BigReal::from_bigint(&a, prec));
        digits.push(a.magnitude().clone());
    }
    Some(DigitWord::new(digits).map(|w| (w, false)))
}

/// All convergents `(p_k, q_k)` for `k = 1..=n`, via the standard
/// recurrence `p_k = a_k p_{k-1} + p_{k-2}` with `p_{-1} = 1, p_0 = 0`
/// (and `q_{-1} = 0, q_0 = 1`).
pub fn convergents(word: &DigitWord) -> Vec<(BigInt, BigInt)> {
    let mut out = Vec::with_capacity(word.len());
    let (mut p_prev, mut p) = (BigInt::one(), BigInt::zero());
    let (mut q_prev, mut q) = (BigInt::zero(), BigInt::one());
    for a in word.digits() {
        let a = BigInt::from(a.clone());
        let p_next = &a * &p + &p_prev;
        let q_next = &a * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        out.push((p.clone(), q.clone()));
    }
    out
}

/// The rank-`n` cylinder of a word: endpoints are `p_n/q_n` and the mediant
/// `(p_n+p_{n-1})/(q_n+q_{n-1})`, ordered by the parity of `n` (even rank
/// keeps the convergent on the left).
pub fn cylinder(word: &DigitWord) -> Cylinder {
    let convs = convergents(word);
    let n = convs.len();
    let (p, q) = convs[n - 1].clone();
    let (p_prev, q_prev) = if n >= 2 {
        convs[n - 2].clone()
    } else {
        (BigInt::zero(), BigInt::one())
    };
    let conv = BigRational::new(p.clone(), q.clone());
    let mediant = BigRational::new(&p + &p_prev, &q + &q_prev);
    let (left, right) = if n.is_multiple_of(2) {
        (conv, mediant)
    } else {
        (mediant, conv)
    };
    Cylinder {
        word: word.clone(),
        left,
        right,
        convergent: (p, q),
        previous: (p_prev, q_prev),
    }
}

/// Running sums and maxima of the partial quotients.
pub fn stats(word: &DigitWord) -> QuotientStats {
    let mut sums = Vec::with_capacity(word.len());
    let mut maxima = Vec::with_capacity(word.len());
    let mut s = BigUint::zero();
    let mut t = BigUint::zero();
    for a in word.digits() {
        s += a;
        if *a > t {
            t = a.clone();
        }
        sums.push(s.clone());
        maxima.push(t.clone());
    }
    QuotientStats {
        word: word.clone(),
        sums,
        maxima,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn word(digits: &[u64]) -> DigitWord {
        DigitWord::from_u64s(digits).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn expand_terminating_rationals() {
        let (w, term) = expand_rational(&rat(2, 5), 5).unwrap();
        assert_eq!(w, word(&[2, 2]));
        assert!(term);

        let (w, term) = expand_rational(&rat(1, 2), 5).unwrap();
        assert_eq!(w, word(&[2]));
        assert!(term);

        // Canonical form: the Gauss map never emits a trailing 1 on a
        // terminating expansion.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        for _ in 0..200 {
            let q: u64 = rng.gen_range(2..10_000);
            let p: u64 = rng.gen_range(1..q);
            let x = rat(p as i64, q as i64);
            let (w, term) = expand_rational(&x, 10_000).unwrap();
            assert!(term);
            let last = w.digits().last().unwrap();
            assert!(
                w.len() == 1 || *last >= BigUint::from(2u32),
                "non-canonical tail for {p}/{q}: {w}"
            );
        }
    }

    #[test]
    fn expand_truncates_without_termination() {
        // 355/113 - 3 = 16/113 = [7, 16]; ask for only one digit.
        let (w, term) = expand_rational(&rat(16, 113), 1).unwrap();
        assert_eq!(w, word(&[7]));
        assert!(!term);
    }

    #[test]
    fn expand_rejects_domain() {
        assert!(expand_rational(&rat(0, 1), 3).is_err());
        assert!(expand_rational(&rat(1, 1), 3).is_err());
        assert!(expand_rational(&rat(-1, 2), 3).is_err());
        assert!(expand_rational(&rat(1, 2), 0).is_err());
    }

    #[test]
    fn expand_quadratic_fixed_point() {
        // x = sqrt(2) - 1 satisfies x = 1/(2 + x): all digits are 2. Build a
        // certified enclosure from an interval bracketing sqrt(2) - 1.
        // 0.41421356237309504 < sqrt(2)-1 < 0.41421356237309515
        let lo = BigReal::from_rational(&rat(41421356237309504, 100000000000000000), 128).lo();
        let hi = BigReal::from_rational(&rat(41421356237309515, 100000000000000000), 128).hi();
        let x = BigReal::from_interval(&lo, &hi, 128);
        let (w, term) = expand_real(&x, 5).unwrap();
        assert_eq!(w, word(&[2, 2, 2, 2, 2]));
        assert!(!term);
    }

    #[test]
    fn expand_e_minus_two() {
        // Independent oracle: e = [2; 1,2,1,1,4,1,1,6,...], so e-2 expands
        // as [1,2,1,1,4,1,...]. Compute e-2 from the certified exponential.
        let e = BigReal::one(192).exp();
        let x = e.sub(&BigReal::from_u64(2, 192));
        let (w, term) = expand_real(&x, 6).unwrap();
        assert_eq!(w, word(&[1, 2, 1, 1, 4, 1]));
        assert!(!term);

        let st = stats(&w);
        assert_eq!(st.sums.last().unwrap().to_u64(), Some(10));
        assert_eq!(st.maxima.last().unwrap().to_u64(), Some(4));
    }

    #[test]
    fn expand_real_terminates_on_exact_dyadics() {
        // 3/8 = [2, 1, 2] terminates; the ball path must detect the exact
        // zero tail rather than attempt 1/0.
        let x = BigReal::from_rational(&rat(3, 8), 96);
        assert!(x.is_exact());
        let (w, term) = expand_real(&x, 10).unwrap();
        assert_eq!(w, word(&[2, 1, 2]));
        assert!(term);
        let (w2, term2) = expand_rational(&rat(3, 8), 10).unwrap();
        assert_eq!(w, w2);
        assert!(term2);
    }

    #[test]
    fn convergent_recurrence_matches_direct_evaluation() {
        // Fibonacci ratios for all-ones words.
        let convs = convergents(&word(&[1, 1, 1, 1, 1]));
        let expect = [(1, 1), (1, 2), (2, 3), (3, 5), (5, 8)];
        for ((p, q), (ep, eq)) in convs.iter().zip(expect) {
            assert_eq!((p.to_i64().unwrap(), q.to_i64().unwrap()), (ep, eq));
        }

        let convs = convergents(&word(&[2, 2]));
        assert_eq!(convs[0], (BigInt::from(1), BigInt::from(2)));
        assert_eq!(convs[1], (BigInt::from(2), BigInt::from(5)));

        // Last convergent of the e-2 prefix approximates e-2 within 1/q^2.
        let convs = convergents(&word(&[1, 2, 1, 1, 4, 1]));
        let (p6, q6) = convs.last().unwrap().clone();
        assert_eq!((p6.clone(), q6.clone()), (BigInt::from(28), BigInt::from(39)));
        let e = BigReal::one(192).exp();
        let x = e.sub(&BigReal::from_u64(2, 192));
        let approx = BigReal::from_rational(&BigRational::new(p6, q6.clone()), 192);
        let err = x.sub(&approx).mag_upper().to_f64().abs();
        let q6f = q6.to_f64().unwrap();
        assert!(err < 1.0 / (q6f * q6f), "err {err} vs 1/q^2 {}", 1.0 / (q6f * q6f));
    }

    #[test]
    fn cylinder_examples_and_exact_length() {
        let c = cylinder(&word(&[1]));
        assert_eq!(c.left, rat(1, 2));
        assert_eq!(c.right, rat(1, 1));

        let c = cylinder(&word(&[2]));
        assert_eq!(c.left, rat(1, 3));
        assert_eq!(c.right, rat(1, 2));

        let c = cylinder(&word(&[1, 1]));
        assert_eq!(c.left, rat(1, 2));
        assert_eq!(c.right, rat(2, 3));
        assert_eq!(c.length(), rat(1, 6));
    }

    /// Independent oracle for cylinder endpoints: the image of (0,1) under
    /// the Moebius composition x -> 1/(a_1 + 1/(a_2 + ... + 1/(a_n + x))).
    fn moebius_image(digits: &[u64]) -> (BigRational, BigRational) {
        let at = |mut x: BigRational| {
            for &a in digits.iter().rev() {
                x = BigRational::new(BigInt::one(), BigInt::one())
                    / (BigRational::from_integer(BigInt::from(a)) + x);
            }
            x
        };
        let zero = at(BigRational::zero());
        let one = at(BigRational::one());
        if zero < one {
            (zero, one)
        } else {
            (one, zero)
        }
    }

    #[test]
    fn cylinder_matches_moebius_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        for _ in 0..300 {
            let len = rng.gen_range(1..=6);
            let digits: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=8)).collect();
            let c = cylinder(&word(&digits));
            let (lo, hi) = moebius_image(&digits);
            assert_eq!((c.left.clone(), c.right.clone()), (lo, hi), "digits {digits:?}");
            // Exact length identity.
            let (_, q) = &c.convergent;
            let (_, q_prev) = &c.previous;
            assert_eq!(
                c.length(),
                BigRational::new(BigInt::one(), q * (q + q_prev)),
                "length identity for {digits:?}"
            );
            // Digit-product bounds.
            let prod_upper: BigRational = digits
                .iter()
                .map(|&a| rat(1, (a * a) as i64))
                .product();
            let prod_lower: BigRational = digits
                .iter()
                .map(|&a| rat(1, ((a + 1) * (a + 1)) as i64))
                .product();
            assert!(c.length() <= prod_upper, "upper bound for {digits:?}");
            assert!(c.length() >= prod_lower, "lower bound for {digits:?}");
        }
    }

    #[test]
    fn cylinders_nest_and_partition() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
        for _ in 0..100 {
            let len = rng.gen_range(1..=5);
            let digits: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=6)).collect();
            let w = word(&digits);
            let parent = cylinder(&w);
            let mut children = Vec::new();
            for a in 1..=10u64 {
                let child = cylinder(&w.extended(&BigUint::from(a)).unwrap());
                // Nesting: child inside parent.
                assert!(child.left >= parent.left && child.right <= parent.right);
                children.push(child);
            }
            // Pairwise disjoint(as open intervals), and consecutive children
            // share an endpoint: they tile a sub-interval.
            children.sort_by(|a, b| a.left.cmp(&b.left));
            for pair in children.windows(2) {
                assert!(pair[0].right <= pair[1].left);
                assert_eq!(pair[0].right, pair[1].left, "children tile contiguously");
            }
            // The union accumulates at one endpoint of the parent: the
            // digit-1 child touches one parent endpoint, and as a -> oo the
            // children approach the other.
            let touches_left = children.iter().any(|c| c.left == parent.left);
            let touches_right = children.iter().any(|c| c.right == parent.right);
            assert!(touches_left || touches_right);
        }
    }

    #[test]
    fn roundtrip_midpoint_recovers_word_exhaustively() {
        // Every word with length <= 6 over digits 1..=8 (299,592 words):
        // the cylinder midpoint must re-expand starting with the word.
        for len in 1..=6usize {
            for code in 0..8u64.pow(len as u32) {
                let mut c = code;
                let digits: Vec<u64> = (0..len)
                    .map(|_| {
                        let d = c % 8 + 1;
                        c /= 8;
                        d
                    })
                    .collect();
                let w = word(&digits);
                let mid = cylinder(&w).midpoint();
                let (got, _) = expand_rational(&mid, len).unwrap();
                assert!(w.is_prefix_of(&got), "midpoint of {w} re-expanded to {got}");
            }
        }
    }

    #[test]
    fn stats_running_sums_and_maxima() {
        let st = stats(&word(&[3, 1, 4]));
        let as_u64 = |v: &[BigUint]| v.iter().map(|x| x.to_u64().unwrap()).collect::<Vec<_>>();
        assert_eq!(as_u64(&st.sums), vec![3, 4, 8]);
        assert_eq!(as_u64(&st.maxima), vec![3, 3, 4]);

        let st = stats(&word(&[1, 1, 1]));
        assert_eq!(as_u64(&st.sums), vec![1, 2, 3]);
        assert_eq!(as_u64(&st.maxima), vec![1, 1, 1]);

        // S strictly increasing, T non-decreasing on random words.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
        for _ in 0..50 {
            let digits: Vec<u64> = (0..20).map(|_| rng.gen_range(1..=100)).collect();
            let st = stats(&word(&digits));
            for i in 1..st.sums.len() {
                assert!(st.sums[i] > st.sums[i - 1]);
                assert!(st.maxima[i] >= st.maxima[i - 1]);
            }
        }
    }

    #[test]
    fn digit_word_rejects_invalid() {
        assert!(DigitWord::new(vec![]).is_err());
        assert!(DigitWord::from_u64s(&[1, 0, 2]).is_err());
    }
}
