//! Parsing, formatting and serde helpers for exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Parse `"p/q"`, a plain integer, or a decimal string (`"0.55"`, `"-1.25"`)
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Domain("empty rational literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad numerator in {s:?}")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad denominator in {s:?}")))?;
        if d.is_zero() {
            return Err(Error::Domain(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let sign = if int.trim_start().starts_with('-') { -1 } else { 1 };
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse()
                .map_err(|_| Error::Domain(format!("bad integer part in {s:?}")))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Domain(format!("bad fractional part in {s:?}")));
        }
        let frac_num: BigInt = frac
            .parse()
            .map_err(|_| Error::Domain(format!("bad fractional part in {s:?}")))?;
        let den = BigInt::from(10u8).pow(frac.len() as u32);
        let magnitude = BigRational::from_integer(int_part.abs())
            + BigRational::new(frac_num, den);
        return Ok(if sign < 0 { -magnitude } else { magnitude });
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Domain(format!("bad rational literal {s:?}")))?;
    Ok(BigRational::from_integer(n))
}

/// Canonical short form: integer as `"3"`, otherwise `"p/q"` reduced.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// serde adapter: (de)serialize a `BigRational` as its canonical string.
pub mod rational_string {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("5").unwrap(), rat(5, 1));
        assert_eq!(parse_rational("0.55").unwrap(), rat(11, 20));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational("2.0").unwrap(), rat(2, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2e3").is_err());
    }

    #[test]
    fn format_roundtrips() {
        for s in ["3/4", "-3/4", "5", "11/20"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s.to_string());
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
    }
}
