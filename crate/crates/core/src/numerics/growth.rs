//! Growth families `phi(n)` for the target ratio `S_n / phi(n) -> 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};
use std::fmt;

use super::rational::{format_rational, parse_rational, rational_string};
use super::real::BigReal;
use crate::error::{Error, Result};

/// Largest allowed top exponent of an `exp` argument: keeps results
/// representable (the result's binary exponent must fit an `i64`).
const MAX_EXP_ARG_TOP: i64 = 48;

/// A slowly varying factor used inside `exp(sqrt(n) * psi(n))` and as the
/// tolerance sequence `eps_k = psi(k)` of prescribed-digit constructions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PsiSpec {
    /// `psi(x) = 1 / ln(x + e)`: positive, decreasing, tends to zero.
    InvLog,
    /// Constant positive value.
    Const {
        #[serde(with = "rational_string")]
        value: BigRational,
    },
}

impl PsiSpec {
    pub fn eval(&self, k: u64, prec: u64) -> Result<BigReal> {
        match self {
            PsiSpec::InvLog => {
                let e = BigReal::one(prec).exp();
                let x = BigReal::from_u64(k, prec).add(&e);
                x.ln()?.recip()
            }
            PsiSpec::Const { value } => {
                if !value.is_positive() {
                    return Err(Error::Domain("psi constant must be positive".into()));
                }
                Ok(BigReal::from_rational(value, prec))
            }
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "invlog" => Ok(PsiSpec::InvLog),
            other => {
                if let Some(v) = other.strip_prefix("const:") {
                    Ok(PsiSpec::Const { value: parse_rational(v)? })
                } else {
                    Err(Error::Domain(format!(
                        "unknown psi spec {other:?} (expected `invlog` or `const:<r>`)"
                    )))
                }
            }
        }
    }
}

impl fmt::Display for PsiSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiSpec::InvLog => write!(f, "invlog"),
            PsiSpec::Const { value } => write!(f, "const:{}", format_rational(value)),
        }
    }
}

/// Growth function families, tagged by their asymptotic regime.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GrowthFunction {
    /// `exp(n^gamma)`, `gamma > 0`.
    ExpPower {
        #[serde(with = "rational_string")]
        gamma: BigRational,
    },
    /// `exp(sqrt(n) * psi(n))` with slowly varying `psi`.
    ExpSqrtPsi { psi: PsiSpec },
    /// `exp(gamma^n)`, `gamma > 1`.
    ExpGeometric {
        #[serde(with = "rational_string")]
        gamma: BigRational,
    },
    /// `n^gamma`, `gamma > 0`.
    Polynomial {
        #[serde(with = "rational_string")]
        gamma: BigRational,
    },
    /// `gamma * n`, `gamma > 0`.
    Linear {
        #[serde(with = "rational_string")]
        gamma: BigRational,
    },
}

/// `base^gamma` as a certified ball; exact when `gamma` is a small integer.
pub fn pow_rational(base: &BigReal, gamma: &BigRational, prec: u64) -> Result<BigReal> {
    if gamma.is_integer() {
        if let Ok(k) = i64::try_from(gamma.numer()) {
            return base.powi(k);
        }
    }
    base.pow(&BigReal::from_rational(gamma, prec))
}

impl GrowthFunction {
    /// Validate family-specific parameter ranges.
    pub fn validate(&self) -> Result<()> {
        match self {
            GrowthFunction::ExpPower { gamma }
            | GrowthFunction::Polynomial { gamma }
            | GrowthFunction::Linear { gamma } => {
                if !gamma.is_positive() {
                    return Err(Error::Domain(format!(
                        "gamma must be positive, got {}",
                        format_rational(gamma)
                    )));
                }
            }
            GrowthFunction::ExpGeometric { gamma } => {
                if gamma <= &BigRational::one() {
                    return Err(Error::Domain(format!(
                        "geometric base must exceed 1, got {}",
                        format_rational(gamma)
                    )));
                }
            }
            GrowthFunction::ExpSqrtPsi { .. } => {}
        }
        Ok(())
    }

    /// Certified `phi(n)` for `n >= 1`.
    pub fn eval(&self, n: u64, prec: u64) -> Result<BigReal> {
        if n == 0 {
            return Err(Error::Domain("growth functions are defined for n >= 1".into()));
        }
        self.validate()?;
        match self {
            GrowthFunction::ExpPower { gamma } => {
                let base = BigReal::from_u64(n, prec);
                let arg = pow_rational(&base, gamma, prec)?;
                checked_exp(&arg)
            }
            GrowthFunction::ExpSqrtPsi { psi } => {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let root = pow_rational(&BigReal::from_u64(n, prec), &half, prec)?;
                let arg = root.mul(&psi.eval(n, prec)?);
                checked_exp(&arg)
            }
            GrowthFunction::ExpGeometric { gamma } => {
                // gamma^n exactly as a rational, then exp
                let g = num_traits::pow(gamma.clone(), n as usize);
                let arg = BigReal::from_rational(&g, prec);
                checked_exp(&arg)
            }
            GrowthFunction::Polynomial { gamma } => {
                pow_rational(&BigReal::from_u64(n, prec), gamma, prec)
            }
            GrowthFunction::Linear { gamma } => {
                Ok(BigReal::from_rational(gamma, prec).mul_u64(n))
            }
        }
    }

    /// Certified `ln(phi(n))` for `n >= 1`: the bare exponent for the
    /// exponential families. Comparisons between `phi` values are cheaper
    /// and better conditioned in the log domain (no outer `exp`, and no
    /// representability ceiling for the geometric family).
    pub fn eval_log(&self, n: u64, prec: u64) -> Result<BigReal> {
        if n == 0 {
            return Err(Error::Domain("growth functions are defined for n >= 1".into()));
        }
        self.validate()?;
        match self {
            GrowthFunction::ExpPower { gamma } => {
                pow_rational(&BigReal::from_u64(n, prec), gamma, prec)
            }
            GrowthFunction::ExpSqrtPsi { psi } => {
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                let root = pow_rational(&BigReal::from_u64(n, prec), &half, prec)?;
                Ok(root.mul(&psi.eval(n, prec)?))
            }
            GrowthFunction::ExpGeometric { gamma } => {
                let g = num_traits::pow(gamma.clone(), n as usize);
                Ok(BigReal::from_rational(&g, prec))
            }
            GrowthFunction::Polynomial { gamma } => {
                let g = BigReal::from_rational(gamma, prec);
                Ok(BigReal::from_u64(n, prec).ln()?.mul(&g))
            }
            GrowthFunction::Linear { gamma } => {
                let v = gamma * BigRational::from_integer(BigInt::from(n));
                BigReal::from_rational(&v, prec).ln()
            }
        }
    }

    /// The exact rational value of `phi(n)`, when the family admits one for
    /// every `n` (linear always; polynomial with integer exponent). Callers
    /// use this to keep comparisons exact where ball certification could
    /// stall on true equalities.
    pub fn eval_rational(&self, n: u64) -> Option<BigRational> {
        if n == 0 {
            return None;
        }
        match self {
            GrowthFunction::Linear { gamma } => {
                Some(gamma * BigRational::from_integer(BigInt::from(n)))
            }
            GrowthFunction::Polynomial { gamma } if gamma.is_integer() => {
                let e = gamma.to_integer().to_u64()?;
                let base = BigRational::from_integer(BigInt::from(n));
                Some(num_traits::pow(base, e as usize))
            }
            _ => None,
        }
    }

    /// Parse the CLI syntax: `exp-power:0.6`, `exp-sqrt-psi:invlog`,
    /// `exp-geom:2` (or `exp-geometric:2`), `polynomial:1.5`, `linear:1`.
    pub fn parse(s: &str) -> Result<Self> {
        let (family, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Domain(format!("growth spec {s:?} needs `family:params`")))?;
        let out = match family {
            "exp-power" => GrowthFunction::ExpPower { gamma: parse_rational(rest)? },
            "exp-sqrt-psi" => GrowthFunction::ExpSqrtPsi { psi: PsiSpec::parse(rest)? },
            "exp-geometric" | "exp-geom" => {
                GrowthFunction::ExpGeometric { gamma: parse_rational(rest)? }
            }
            "polynomial" => GrowthFunction::Polynomial { gamma: parse_rational(rest)? },
            "linear" => GrowthFunction::Linear { gamma: parse_rational(rest)? },
            other => {
                return Err(Error::Domain(format!("unknown growth family {other:?}")));
            }
        };
        out.validate()?;
        Ok(out)
    }
}

impl fmt::Display for GrowthFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrowthFunction::ExpPower { gamma } => write!(f, "exp-power:{}", format_rational(gamma)),
            GrowthFunction::ExpSqrtPsi { psi } => write!(f, "exp-sqrt-psi:{psi}"),
            GrowthFunction::ExpGeometric { gamma } => {
                write!(f, "exp-geometric:{}", format_rational(gamma))
            }
            GrowthFunction::Polynomial { gamma } => {
                write!(f, "polynomial:{}", format_rational(gamma))
            }
            GrowthFunction::Linear { gamma } => write!(f, "linear:{}", format_rational(gamma)),
        }
    }
}

/// `exp` with a representability guard on the argument magnitude.
fn checked_exp(arg: &BigReal) -> Result<BigReal> {
    if let Some(t) = arg.mag_upper().top_exp() {
        if t > MAX_EXP_ARG_TOP {
            return Err(Error::Unsupported(format!(
                "exp argument magnitude ~2^{t} exceeds representable range"
            )));
        }
    }
    Ok(arg.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn eval_log_is_the_logarithm_of_eval() {
        let families = [
            GrowthFunction::ExpPower { gamma: rat(3, 5) },
            GrowthFunction::ExpSqrtPsi { psi: PsiSpec::InvLog },
            GrowthFunction::ExpGeometric { gamma: rat(3, 2) },
            GrowthFunction::Polynomial { gamma: rat(3, 2) },
            GrowthFunction::Linear { gamma: rat(7, 3) },
        ];
        for phi in families {
            for n in [1u64, 2, 10, 30] {
                let direct = phi.eval(n, 128).unwrap();
                let via_log = phi.eval_log(n, 128).unwrap().exp();
                assert!(
                    direct.lo().cmp_val(&via_log.hi()) != std::cmp::Ordering::Greater
                        && via_log.lo().cmp_val(&direct.hi()) != std::cmp::Ordering::Greater,
                    "{phi}: enclosures disagree at n={n}"
                );
            }
        }
    }

    #[test]
    fn eval_rational_agrees_with_ball_eval() {
        let cases = [
            (GrowthFunction::Linear { gamma: rat(7, 3) }, true),
            (GrowthFunction::Polynomial { gamma: rat(3, 1) }, true),
            (GrowthFunction::Polynomial { gamma: rat(3, 2) }, false),
            (GrowthFunction::ExpPower { gamma: rat(3, 5) }, false),
        ];
        for (phi, has_exact) in cases {
            for n in [1u64, 2, 17, 1000] {
                match phi.eval_rational(n) {
                    Some(q) => {
                        assert!(has_exact, "{phi}: unexpected exact value at n={n}");
                        let ball = phi.eval(n, 128).unwrap();
                        assert!(
                            ball.contains_rational(&q),
                            "{phi}: exact {q} outside ball at n={n}"
                        );
                    }
                    None => assert!(!has_exact, "{phi}: missing exact value at n={n}"),
                }
            }
        }
        assert_eq!(
            GrowthFunction::Polynomial { gamma: rat(3, 1) }.eval_rational(10),
            Some(rat(1000, 1))
        );
        assert!(GrowthFunction::Linear { gamma: rat(1, 2) }.eval_rational(0).is_none());
    }

    #[test]
    fn exp_power_matches_f64() {
        let phi = GrowthFunction::ExpPower { gamma: rat(3, 5) };
        for n in [1u64, 2, 10, 100] {
            let v = phi.eval(n, 96).unwrap().to_f64();
            // The f64 oracle itself carries a few ulp of powf/exp error.
            let expected = ((n as f64).powf(0.6)).exp();
            assert!((v - expected).abs() / expected < 5e-15, "n={n}: {v} vs {expected}");
        }
    }

    #[test]
    fn families_evaluate() {
        let cases: Vec<(GrowthFunction, f64)> = vec![
            (GrowthFunction::ExpSqrtPsi { psi: PsiSpec::InvLog }, {
                let x = 9.0f64;
                (x.sqrt() / (x + std::f64::consts::E).ln()).exp()
            }),
            (GrowthFunction::ExpGeometric { gamma: rat(2, 1) }, (2f64.powi(9)).exp()),
            (GrowthFunction::Polynomial { gamma: rat(5, 2) }, 9f64.powf(2.5)),
            (GrowthFunction::Linear { gamma: rat(3, 2) }, 13.5),
        ];
        for (phi, expected) in cases {
            let v = phi.eval(9, 96).unwrap().to_f64();
            assert!(
                (v - expected).abs() / expected < 1e-13,
                "{phi}: {v} vs {expected}"
            );
        }
    }

    #[test]
    fn integer_gamma_paths_are_exact() {
        let phi = GrowthFunction::Polynomial { gamma: rat(3, 1) };
        let v = phi.eval(7, 64).unwrap();
        assert!(v.is_exact());
        assert_eq!(v.to_f64(), 343.0);
        let lin = GrowthFunction::Linear { gamma: rat(2, 1) };
        assert!(lin.eval(21, 64).unwrap().is_exact());
    }

    #[test]
    fn monotone_on_samples() {
        for phi in [
            GrowthFunction::ExpPower { gamma: rat(2, 5) },
            GrowthFunction::ExpSqrtPsi { psi: PsiSpec::InvLog },
            GrowthFunction::ExpGeometric { gamma: rat(3, 2) },
            GrowthFunction::Polynomial { gamma: rat(11, 10) },
            GrowthFunction::Linear { gamma: rat(1, 1) },
        ] {
            // The geometric family overflows the representability guard past
            // n ~ 60 for gamma = 3/2, so cap its samples lower.
            let max_n = if matches!(phi, GrowthFunction::ExpGeometric { .. }) {
                55
            } else {
                144
            };
            let mut prev = phi.eval(1, 96).unwrap();
            for n in [2u64, 3, 5, 8, 13, 21, 55, 144] {
                if n > max_n {
                    break;
                }
                let cur = phi.eval(n, 96).unwrap();
                assert_eq!(
                    prev.cmp_certain(&cur),
                    Some(std::cmp::Ordering::Less),
                    "{phi} not certified increasing at n={n}"
                );
                prev = cur;
            }
        }
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in [
            "exp-power:3/5",
            "exp-sqrt-psi:invlog",
            "exp-sqrt-psi:const:1/2",
            "exp-geometric:2",
            "polynomial:3/2",
            "linear:1",
        ] {
            let g = GrowthFunction::parse(s).unwrap();
            assert_eq!(g.to_string(), s);
        }
        assert_eq!(
            GrowthFunction::parse("exp-geom:2").unwrap(),
            GrowthFunction::parse("exp-geometric:2").unwrap()
        );
        assert!(GrowthFunction::parse("exp-power:-1").is_err());
        assert!(GrowthFunction::parse("exp-geometric:1").is_err());
        assert!(GrowthFunction::parse("mystery:1").is_err());
    }

    #[test]
    fn geometric_blowup_is_a_clean_error() {
        let phi = GrowthFunction::ExpGeometric { gamma: rat(2, 1) };
        // exp(2^4000) is far beyond representable range
        assert!(matches!(phi.eval(4000, 64), Err(Error::Unsupported(_))));
    }

    #[test]
    fn serde_roundtrip() {
        let phi = GrowthFunction::ExpPower { gamma: rat(3, 5) };
        let json = serde_json::to_string(&phi).unwrap();
        assert_eq!(json, r#"{"family":"exp-power","gamma":"3/5"}"#);
        let back: GrowthFunction = serde_json::from_str(&json).unwrap();
        assert_eq!(back, phi);
    }
}
