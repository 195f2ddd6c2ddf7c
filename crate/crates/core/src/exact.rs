//! Arbitrary-precision scalars and the handful of combinatorial primitives the
//! rest of the crate is written in terms of.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

pub fn int(v: i64) -> ExactInt {
    BigInt::from(v)
}

pub fn rat(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(v: i64) -> ExactRat {
    BigRational::from_integer(BigInt::from(v))
}

/// Binomial coefficient with the lattice-path convention: zero whenever the
/// lower index is negative or exceeds the upper one, and zero for a negative
/// upper index.
pub fn binom(n: i64, k: i64) -> ExactInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}

pub fn factorial(n: u64) -> ExactInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// Rising factorial `(a)_m = a (a+1) ... (a+m-1)`.
pub fn pochhammer(a: &ExactRat, m: u64) -> ExactRat {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// Converts an exact integer ratio that must be integral, failing loudly if it
/// is not.
pub fn to_integer(r: &ExactRat) -> Result<ExactInt> {
    if r.is_integer() {
        Ok(r.to_integer())
    } else {
        Err(Error::Domain(format!("expected an integer, got {}", format_rat(r))))
    }
}

/// Formats as `num/den`, always with an explicit denominator.
pub fn format_rat(r: &ExactRat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rat(s: &str) -> Result<ExactRat> {
    let s = s.trim();
    let bad = || Error::Usage(format!("not a rational number: {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Float value of a rational whose numerator and denominator may each be far
/// outside the `f64` range.
pub fn rat_to_f64(r: &ExactRat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let n = r.numer().abs();
    let d = r.denom().clone();
    let shift = n.bits() as i64 - d.bits() as i64;
    let (n, d) = if shift > 0 {
        (n, d << (shift as usize))
    } else {
        (n << ((-shift) as usize), d)
    };
    let mantissa = BigRational::new(n, d).to_f64().unwrap_or(f64::NAN);
    let v = mantissa * 2f64.powi(shift as i32);
    if r.is_negative() {
        -v
    } else {
        v
    }
}

/// Serde adapter writing an [`ExactInt`] as a decimal string.
pub mod int_string {
    use super::ExactInt;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &ExactInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ExactInt, D::Error> {
        let s = String::deserialize(d)?;
        s.trim().parse().map_err(|_| D::Error::custom(format!("not an integer: {s:?}")))
    }
}

/// Serde adapter writing rationals as `"num/den"` strings.
pub mod rat_string {
    use super::{format_rat, parse_rat, ExactRat};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &ExactRat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<ExactRat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(D::Error::custom)
    }
}

pub fn abs_rat(r: ExactRat) -> ExactRat {
    if r.is_negative() {
        -r
    } else {
        r
    }
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a ExactRat>) -> ExactInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn sign(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `%.12g`: twelve significant digits, trailing zeros dropped, scientific
/// notation outside `1e-5 .. 1e12`.
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..12).contains(&exp) {
        trim(&format!("{:.*}", (11 - exp).max(0) as usize, x))
    } else {
        format!("{}e{exp}", trim(mant))
    }
}
