//! Monte Carlo diagnostic for the Khintchine-type sum law: for Lebesgue
//! almost-independent sampling, `S_n(x)/(n ln n)` concentrates near
//! `1/ln 2 = 1.4427...` in measure as `n` grows (convergence in measure
//! only; the almost-sure limsup is infinite).

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distribution summary of `S_n/(n ln n)` over the sampled points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KhintchineSummary {
    pub samples: u64,
    pub depth: u64,
    pub seed: u64,
    /// Lower quartile (sorted index `samples/4`).
    pub q1: f64,
    /// Median (sorted index `samples/2`).
    pub median: f64,
    /// Upper quartile (sorted index `3*samples/4`).
    pub q3: f64,
}

/// Samples `samples` uniform points of `(0,1)` as dyadic rationals with
/// `4*depth` random bits, expands each to `depth` partial quotients, and
/// summarizes the distribution of `S_depth/(depth * ln depth)`.
///
/// Deterministic for a fixed seed: every sample derives its own generator
/// from `(seed, index, retry)`, so the result is independent of the
/// parallel schedule.
pub fn khintchine_mc(samples: u64, depth: u64, seed: u64) -> Result<KhintchineSummary> {
    if samples < 100 {
        return Err(Error::Domain(format!(
            "need at least 100 samples, got {samples}"
        )));
    }
    if depth < 100 {
        return Err(Error::Domain(format!("need depth >= 100, got {depth}")));
    }
    let mut stats = (0..samples)
        .into_par_iter()
        .map(|i| sample_statistic(seed, i, depth))
        .collect::<Result<Vec<f64>>>()?;
    stats.sort_by(|a, b| a.partial_cmp(b).expect("statistics are finite"));
    let n = stats.len();
    Ok(KhintchineSummary {
        samples,
        depth,
        seed,
        q1: stats[n / 4],
        median: stats[n / 2],
        q3: stats[3 * n / 4],
    })
}

/// `S_depth/(depth ln depth)` for one sampled point.
fn sample_statistic(seed: u64, index: u64, depth: u64) -> Result<f64> {
    let bits = 4 * depth;
    for retry in 0..4u64 {
        let p = draw_bits(seed, index, retry, bits);
        if p.is_zero() {
            continue;
        }
        // x = p / 2^bits, uniform over the dyadic grid of (0,1).
        let q = BigUint::from(1u32) << bits;
        if let Some(s) = digit_sum_to_depth(&p, &q, depth) {
            let nf = depth as f64;
            return Ok(s.to_f64().expect("digit sum is finite") / (nf * nf.ln()));
        }
        // Expansion terminated before `depth` digits (the sample had too
        // little arithmetic depth); redraw deterministically.
    }
    Err(Error::PrecisionExhausted(format!(
        "sample {index} kept terminating before depth {depth} at {bits} bits"
    )))
}

/// ChaCha stream keyed by (seed, index, retry); yields `bits` random bits.
fn draw_bits(seed: u64, index: u64, retry: u64, bits: u64) -> BigUint {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&index.to_le_bytes());
    key[16..24].copy_from_slice(&retry.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    let n_bytes = bits.div_ceil(8) as usize;
    let mut buf = vec![0u8; n_bytes];
    rng.fill_bytes(&mut buf);
    let mut p = BigUint::from_bytes_le(&buf);
    let excess = (8 * n_bytes) as u64 - bits;
    p >>= excess;
    p
}

/// Sum of the first `depth` partial quotients of `p/q`, or `None` if the
/// expansion terminates strictly before `depth` digits. The digits agree
/// with `cf::expand_rational`; only the sum is accumulated.
///
/// Bignum divisions dominate the plain Euclid loop, so this uses Lehmer's
/// batching: continued-fraction steps run in machine words on the top 96
/// bits of the pair, each digit certified by interval agreement (the true
/// ratio lies in `[u1/(v1+1), (u1+1)/v1]`; a digit is emitted only when
/// both endpoints share the same floor), and the accumulated coefficient
/// rows are applied to the big pair exactly once per batch.
fn digit_sum_to_depth(p: &BigUint, q: &BigUint, depth: u64) -> Option<BigUint> {
    let mut u = q.clone(); // digit chain on the ratio u/v > 1, starting q/p
    let mut v = p.clone();
    let mut s = BigUint::zero();
    let mut k: u64 = 0;
    while k < depth {
        if v.is_zero() {
            return None; // terminated strictly before `depth`
        }
        if u.bits() <= 127 {
            // Endgame: the whole pair fits in machine words.
            let mut uu = u.to_u128().expect("bits checked");
            let mut vv = v.to_u128().expect("v < u");
            while k < depth {
                if vv == 0 {
                    return None;
                }
                let a = uu / vv;
                s += BigUint::from(a);
                k += 1;
                let r = uu % vv;
                uu = vv;
                vv = r;
            }
            return Some(s);
        }
        if u.bits() - v.bits() > 48 {
            // Huge quotient: a window would not certify it; one exact step.
            let (a, r) = u.div_rem(&v);
            s += a;
            k += 1;
            u = std::mem::replace(&mut v, r);
            continue;
        }
        // Lehmer batch on the top 96 bits. Bounds on the true ratio:
        // lu/lv <= u/v <= hu/hv.
        let shift = u.bits() - 96;
        let u1 = (&u >> shift).to_u128().expect("96-bit window");
        let v1 = (&v >> shift).to_u128().expect("bit gap <= 48");
        let (mut lu, mut lv, mut hu, mut hv) = (u1, v1 + 1, u1 + 1, v1);
        // Coefficient rows: current remainders are (c00*U + c01*V, c10*U + c11*V).
        let (mut c00, mut c01): (i128, i128) = (1, 0);
        let (mut c10, mut c11): (i128, i128) = (0, 1);
        let mut batch_sum: u128 = 0;
        let mut m: u64 = 0;
        while k + m < depth {
            if lv == 0 || hv == 0 {
                break; // a bound went infinite: window exhausted
            }
            let a = lu / lv;
            if a != hu / hv || a == 0 || a > (1 << 30) {
                break; // endpoints disagree (or digit too large to batch)
            }
            let n10 = c00 - (a as i128) * c10;
            let n11 = c01 - (a as i128) * c11;
            if n10.abs() > (1 << 62) || n11.abs() > (1 << 62) {
                break; // keep every product exactly representable
            }
            // Tail x' = 1/(x - a): the bounds swap sides.
            let (nlu, nlv) = (hv, hu - a * hv);
            let (nhu, nhv) = (lv, lu - a * lv);
            batch_sum += a;
            m += 1;
            c00 = c10;
            c01 = c11;
            c10 = n10;
            c11 = n11;
            lu = nlu;
            lv = nlv;
            hu = nhu;
            hv = nhv;
        }
        if m == 0 {
            let (a, r) = u.div_rem(&v);
            s += a;
            k += 1;
            u = std::mem::replace(&mut v, r);
            continue;
        }
        // Apply the batch to the big pair exactly (results are >= 0 because
        // they are the true remainders of the chain).
        let ub = BigInt::from(u);
        let vb = BigInt::from(v);
        let nu = &ub * BigInt::from(c00) + &vb * BigInt::from(c01);
        let nv = &ub * BigInt::from(c10) + &vb * BigInt::from(c11);
        u = nu.magnitude().clone();
        v = nv.magnitude().clone();
        s += BigUint::from(batch_sum);
        k += m;
    }
    Some(s)
}

/// Reference implementation: the plain Euclid loop (used as the oracle for
/// the batched version).
#[cfg(test)]
fn digit_sum_naive(p: &BigUint, q: &BigUint, depth: u64) -> Option<BigUint> {
    let mut p = p.clone();
    let mut q = q.clone();
    let mut s = BigUint::zero();
    for k in 0..depth {
        let (a, r) = q.div_rem(&p);
        s += a;
        if r.is_zero() {
            return if k + 1 == depth { Some(s) } else { None };
        }
        q = p;
        p = r;
    }
    Some(s)
}
