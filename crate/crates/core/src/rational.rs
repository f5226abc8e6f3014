//! Exact rational scalars and their textual forms.
//!
//! Every length in the crate is a [`Rational`]. Text input accepts integers,
//! finite decimals (`"-1.25"`) and fractions (`"7/2"`); output uses the
//! `p/q` form, with the denominator omitted for integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn half(r: &Rational) -> Rational {
    r / int(2)
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<Rational> {
    values.into_iter().max().cloned()
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses an integer, a finite decimal or a `p/q` fraction exactly.
pub fn parse(text: &str) -> Result<Rational> {
    let s = text.trim();
    let fail = |message: &str| Error::Parse {
        position: 0,
        message: format!("{message}: {s:?}"),
    };
    if s.is_empty() {
        return Err(fail("empty number"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_decimal(num.trim()).ok_or_else(|| fail("bad numerator"))?;
        let den = parse_decimal(den.trim()).ok_or_else(|| fail("bad denominator"))?;
        if den.is_zero() {
            return Err(fail("zero denominator"));
        }
        return Ok(num / den);
    }
    parse_decimal(s).ok_or_else(|| fail("not a number"))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = match digits.split_once('.') {
        Some((w, f)) => (w, f),
        None => (digits, ""),
    };
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut numer: BigInt = if whole.is_empty() {
        BigInt::zero()
    } else {
        whole.parse().ok()?
    };
    let mut denom = BigInt::one();
    for c in frac.chars() {
        numer = numer * 10 + BigInt::from(c.to_digit(10)?);
        denom *= 10;
    }
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}

/// Serde adapters writing rationals as strings.
pub mod serde_str {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = NumberOrString::deserialize(d)?;
        raw.into_rational().map_err(D::Error::custom)
    }

    /// JSON inputs may carry plain numbers as well as strings.
    #[derive(Deserialize)]
    #[serde(untagged)]
    pub enum NumberOrString {
        Int(i64),
        Text(String),
        Float(serde_json::Number),
    }

    impl NumberOrString {
        pub fn into_rational(self) -> Result<Rational, crate::Error> {
            match self {
                NumberOrString::Int(n) => Ok(super::int(n)),
                NumberOrString::Text(t) => super::parse(&t),
                NumberOrString::Float(n) => super::parse(&n.to_string()),
            }
        }
    }

    pub mod vec {
        use serde::de::Error as _;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::{NumberOrString, Rational};

        pub fn serialize<S: Serializer>(values: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&super::super::format(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<NumberOrString>::deserialize(d)?
                .into_iter()
                .map(|v| v.into_rational().map_err(D::Error::custom))
                .collect()
        }
    }

    pub mod matrix {
        use serde::de::Error as _;
        use serde::ser::SerializeSeq;
        use serde::{Deserialize, Deserializer, Serializer};

        use super::{NumberOrString, Rational};

        pub fn serialize<S: Serializer>(rows: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(rows.len()))?;
            for row in rows {
                let row: Vec<String> = row.iter().map(super::super::format).collect();
                seq.serialize_element(&row)?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Vec<Vec<Rational>>, D::Error> {
            Vec::<Vec<NumberOrString>>::deserialize(d)?
                .into_iter()
                .map(|row| {
                    row.into_iter()
                        .map(|v| v.into_rational().map_err(D::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!(parse("3").unwrap(), int(3));
        assert_eq!(parse(" 7/2 ").unwrap(), ratio(7, 2));
        assert_eq!(parse("1.25").unwrap(), ratio(5, 4));
        assert_eq!(parse("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse("6/4").unwrap(), ratio(3, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "abc", "1/0", "1.2.3", "--1", "1e3", "."] {
            assert!(parse(bad).is_err(), "{bad:?} should not parse");
        }
    }

    #[test]
    fn formats_as_fraction() {
        assert_eq!(format(&ratio(7, 2)), "7/2");
        assert_eq!(format(&int(5)), "5");
        assert_eq!(format(&ratio(-3, 6)), "-1/2");
    }
}
