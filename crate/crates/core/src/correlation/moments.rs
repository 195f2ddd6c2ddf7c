//! Moment sums and the single-integral form of the correlation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::CorrelationParams;
use crate::exact::{abs_rat, common_denominator, pochhammer, rat, rat_int, rat_to_f64};
use crate::{Error, ExactInt, ExactRat, Result};

/// `T^{(k)}(R, v; x)` as a polynomial in `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentPolynomial {
    pub k: u32,
    pub r: i64,
    pub v: i64,
    /// coefficient of `x^a` at index `a`
    pub coeffs: Vec<ExactRat>,
}

impl MomentPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, x: &ExactRat) -> ExactRat {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Float value, evaluated exactly first since the coefficients alternate
    /// and cancel heavily.
    pub fn eval_f64(&self, x: &ExactRat) -> f64 {
        rat_to_f64(&self.eval(x))
    }
}

/// The `a`-th weight of the moment sum without the `a^k` factor and `x^a`,
/// straight from the Pochhammer symbols.
pub fn moment_weight(r: i64, v: i64, a: i64) -> ExactRat {
    let a_u = a as u64;
    let m = (v + a) as u64;
    let num = pochhammer(&rat_int(-r), a_u) * pochhammer(&rat_int(r), a_u) * pochhammer(&rat(3, 2), m);
    let den = pochhammer(&rat_int(1), a_u) * pochhammer(&rat(1, 2), a_u) * pochhammer(&rat_int(2), m);
    num / den / BigRational::from_integer(BigInt::from(r) * (BigInt::one() << (2 * a_u as usize)))
}

fn weights(r: i64, v: i64) -> Vec<ExactRat> {
    // consecutive ratio of the Pochhammer products, starting from a = 0
    let mut w = Vec::with_capacity(r as usize + 1);
    let mut cur = moment_weight(r, v, 0);
    for a in 0..=r {
        w.push(cur.clone());
        let step = rat(-r + a, 1) * rat(r + a, 1) * rat(2 * (v + a) + 3, 2)
            / (rat(a + 1, 1) * rat(2 * a + 1, 2) * rat(v + a + 2, 1) * rat_int(4));
        cur *= step;
    }
    w
}

pub fn moment_polynomial(k: u32, r: i64, v: i64) -> Result<MomentPolynomial> {
    if r < 1 {
        return Err(Error::Domain(format!("moment sums need R >= 1 (the 1/R prefactor), got R={r}")));
    }
    if v < 0 {
        return Err(Error::Validation(format!("moment sums need v >= 0, got v={v}")));
    }
    let coeffs = weights(r, v)
        .into_iter()
        .enumerate()
        .map(|(a, w)| w * BigRational::from_integer(BigInt::from(a).pow(k)))
        .collect();
    Ok(MomentPolynomial { k, r, v, coeffs })
}

/// Integer numerators over one common denominator.
fn scaled(p: &MomentPolynomial) -> (Vec<ExactInt>, ExactInt) {
    let den = common_denominator(p.coeffs.iter());
    let nums = p
        .coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    (nums, den)
}

fn convolve(a: &[ExactInt], b: &[ExactInt]) -> Vec<ExactInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `int_0^1 (T2 T0 - T1^2) x^{2v'+1} dx`, by multiplying the polynomials and
/// integrating monomials.
pub fn moment_integral(t0: &MomentPolynomial, t1: &MomentPolynomial, t2: &MomentPolynomial, vprime: i64) -> ExactRat {
    let (n0, d0) = scaled(t0);
    let (n1, d1) = scaled(t1);
    let (n2, d2) = scaled(t2);
    let p20 = convolve(&n2, &n0);
    let p11 = convolve(&n1, &n1);
    let (s20, s11) = (&d2 * &d0, &d1 * &d1);
    // bring both products over s20 * s11
    let mut total = BigRational::zero();
    for m in 0..p20.len() {
        let c = &p20[m] * &s11 - &p11[m] * &s20;
        if !c.is_zero() {
            total += BigRational::new(c, BigInt::from(m as i64 + 2 * vprime + 2));
        }
    }
    total / BigRational::from_integer(s20 * s11)
}

pub fn correlation_via_moments(p: &CorrelationParams) -> ExactRat {
    let (r, v) = (p.r, p.vprime);
    let t: Vec<MomentPolynomial> =
        (0..3).map(|k| moment_polynomial(k, r, v).expect("parameters validated")).collect();
    abs_rat(moment_integral(&t[0], &t[1], &t[2], v) * BigRational::from_integer(BigInt::from(8 * r)))
}
