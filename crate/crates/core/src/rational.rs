//! Helpers for exact rational arithmetic and its `"p/q"` wire format.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Parse a rational from a `"p/q"` or `"p"` string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Config(format!("invalid rational {s:?}")))?;
    let d: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Config(format!("invalid rational {s:?}")))?,
        None => BigInt::from(1),
    };
    if d.is_zero() {
        return Err(Error::Config(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(n, d))
}

/// Render a rational in the canonical `"p/q"` (or `"p"`) form.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Exact embedding of a finite f64 into the rationals.
pub fn rational_from_f64(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite value {x}")))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer power with negative exponents allowed (rational result).
pub fn pow_i(q: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        num::traits::Pow::pow(q.clone(), e as u64)
    } else {
        num::traits::Pow::pow(q.clone().recip(), (-e) as u64)
    }
}

pub fn abs(q: &BigRational) -> BigRational {
    q.abs()
}

/// Serde adapter: an optional rational as a `"p/q"` string or `null`.
pub mod q_string_opt {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        q: &Option<BigRational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format_rational(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<BigRational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse_rational(&s).map_err(de::Error::custom))
            .transpose()
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod q_string {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_forms() {
        assert_eq!(parse_rational("2/3").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("-7").unwrap(), int(-7));
        assert_eq!(parse_rational(" 4/6 ").unwrap(), ratio(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn canonical_round_trip() {
        for s in ["2/3", "-5", "0", "7/12"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(format_rational(&q), s);
        }
    }

    #[test]
    fn exact_float_embedding() {
        let q = rational_from_f64(0.375).unwrap();
        assert_eq!(q, ratio(3, 8));
        assert!(rational_from_f64(f64::INFINITY).is_err());
    }

    #[test]
    fn integer_powers() {
        let q = ratio(3, 2);
        assert_eq!(pow_i(&q, 3), ratio(27, 8));
        assert_eq!(pow_i(&q, -2), ratio(4, 9));
        assert_eq!(pow_i(&q, 0), int(1));
    }
}
