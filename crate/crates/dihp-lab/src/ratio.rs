//! Exact rational arithmetic helpers. All probabilities and LP data in the lab
//! are `BigRational`; floats only enter on the Fourier side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_u128(n: u128) -> Rat {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders a rational as the canonical `p/q` string (`q` omitted when 1).
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q`, or a plain integer string into an exact rational.
pub fn rat_from_string(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational numerator `{num}`")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational denominator `{den}`")))?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(BigRational::new(n, d))
}

/// Least common multiple of the denominators of `rs`.
pub fn lcm_of_denominators<'a>(rs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    let mut acc = BigInt::one();
    for r in rs {
        acc = acc.lcm(r.denom());
    }
    acc
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of lossy conversions for extreme magnitudes.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY * r.numer().signum().to_f64().unwrap());
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Serde adapter serializing `BigRational` as a `p/q` string, bit-exact on
/// round-trip.
pub mod serde_rat {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        rat_from_string(&s).map_err(serde::de::Error::custom)
    }
}

/// Same adapter for `Vec<Rat>` fields.
pub mod serde_rat_vec {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(rat_to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| rat_from_string(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["1/2", "-3/7", "0", "5", "22/7"] {
            let r = rat_from_string(s).unwrap();
            assert_eq!(rat_from_string(&rat_to_string(&r)).unwrap(), r);
        }
    }

    #[test]
    fn lcm_denominators() {
        let rs = [rat(1, 2), rat(1, 3), rat(5, 6)];
        assert_eq!(lcm_of_denominators(rs.iter()), BigInt::from(6));
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(rat_from_string("1/0").is_err());
    }
}
