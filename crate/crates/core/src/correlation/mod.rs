//! The gap-corner correlation and its asymptotics.

mod finite;
mod moments;

pub use finite::{
    dented_count_ratio, finite_n_correlation, finite_n_numerator, finite_n_numerator_literal, limit_ratio_general,
    limit_ratio_pair,
};
pub use moments::{correlation_via_moments, moment_polynomial, MomentPolynomial};

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{abs_rat, factorial, rat_to_f64};
use crate::{Error, ExactInt, ExactRat, Result};

/// `(R, v')` coordinates of a gap: `R = beta`, `v' = alpha - 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrelationParams {
    pub r: i64,
    pub vprime: i64,
    pub q: ExactRat,
}

impl CorrelationParams {
    pub fn new(r: i64, vprime: i64) -> Result<Self> {
        if r < 1 || vprime < 0 {
            return Err(Error::Validation(format!("need R >= 1 and v' >= 0 (R={r}, v'={vprime})")));
        }
        let q = BigRational::new(BigInt::from(vprime + 1), BigInt::from(r));
        Ok(CorrelationParams { r, vprime, q })
    }

    pub fn from_gap(alpha: i64, beta: i64) -> Result<Self> {
        if alpha < 1 || beta < 1 {
            return Err(Error::Validation(format!("gap coordinates must be positive (alpha={alpha}, beta={beta})")));
        }
        Self::new(beta, alpha - 1)
    }

    /// Along the ray `alpha = q beta`; `q R` must be an integer.
    pub fn on_ray(q: &ExactRat, r: i64) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Validation(format!("q must be positive, got {q}")));
        }
        let alpha = q * BigInt::from(r);
        if !alpha.is_integer() {
            return Err(Error::Validation(format!("q R = {alpha} is not an integer")));
        }
        let alpha: i64 = alpha.to_integer().try_into().map_err(|_| Error::Validation("alpha out of range".into()))?;
        Self::from_gap(alpha, r)
    }

    pub fn alpha(&self) -> i64 {
        self.vprime + 1
    }

    pub fn beta(&self) -> i64 {
        self.r
    }
}

/// `n!` for `n` in `0..=max`.
pub(crate) fn factorial_table(max: usize) -> Vec<ExactInt> {
    let mut t = Vec::with_capacity(max + 1);
    t.push(BigInt::from(1));
    for i in 1..=max {
        let next = &t[i - 1] * i;
        t.push(next);
    }
    t
}

/// The two factorial ratios of the double sum, `F(a)` and `G(a)`, as exact
/// rationals for `a = 0..=R`.
pub(crate) fn double_sum_factors(r: i64, vprime: i64) -> (Vec<ExactRat>, Vec<ExactRat>) {
    let fact = factorial_table((2 * vprime + 2 * r + 2).max(2 * r) as usize);
    let f = |k: i64| &fact[k as usize];
    let big_f = (0..=r)
        .map(|a| BigRational::new(f(r + a - 1).clone(), f(2 * a) * f(r - a)))
        .collect();
    let big_g = (0..=r)
        .map(|a| {
            let m = vprime + a;
            BigRational::new(
                f(2 * m + 1).clone(),
                (BigInt::from(1) << (2 * m as usize)) * f(m) * f(m + 1),
            )
        })
        .collect();
    (big_f, big_g)
}

/// The correlation by the full-square double sum with the `4R` prefactor.
pub fn correlation_double_sum(p: &CorrelationParams) -> ExactRat {
    let (r, v) = (p.r, p.vprime);
    let (big_f, big_g) = double_sum_factors(r, v);
    let w: Vec<ExactRat> = (0..=r as usize).map(|a| &big_f[a] * &big_g[a]).collect();
    // scale to integers so the O(R^2) inner work is integer arithmetic
    let den = crate::exact::common_denominator(w.iter());
    let h: Vec<ExactInt> = w
        .iter()
        .enumerate()
        .map(|(a, wa)| {
            let v = (wa * BigRational::from_integer(den.clone())).to_integer();
            if a % 2 == 0 {
                v
            } else {
                -v
            }
        })
        .collect();
    let mut by_sum = vec![BigInt::zero(); 2 * r as usize + 1];
    for a in 0..=r as usize {
        for b in 0..=r as usize {
            if a != b {
                let d = (b as i64 - a as i64).pow(2);
                by_sum[a + b] += &h[a] * &h[b] * d;
            }
        }
    }
    let mut total = BigRational::zero();
    for (m, s) in by_sum.into_iter().enumerate() {
        if !s.is_zero() {
            total += BigRational::new(s, BigInt::from(2 * v + m as i64 + 2));
        }
    }
    let total = total / BigRational::from_integer(&den * &den);
    abs_rat(total * BigRational::from_integer(BigInt::from(4 * r)))
}

/// Term-by-term evaluation of the full square with the summand written out as
/// printed; quadratic in rational operations, for small parameters.
pub fn correlation_double_sum_literal(p: &CorrelationParams) -> ExactRat {
    let (r, v) = (p.r, p.vprime);
    let f = |k: i64| BigRational::from_integer(factorial(k as u64));
    let mut total = BigRational::zero();
    for a in 0..=r {
        for b in 0..=r {
            let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
            let num = f(r + a - 1) * f(r + b - 1) * f(2 * v + 2 * a + 1) * f(2 * v + 2 * b + 1);
            let den = f(2 * a)
                * f(r - a)
                * f(2 * b)
                * f(r - b)
                * BigRational::from_integer(BigInt::from(1) << (2 * (2 * v + a + b)) as usize)
                * f(v + a)
                * f(v + a + 1)
                * f(v + b)
                * f(v + b + 1);
            let tail = BigRational::new(BigInt::from(sign * (b - a) * (b - a)), BigInt::from(2 * v + a + b + 2));
            total += num / den * tail;
        }
    }
    abs_rat(total * BigRational::from_integer(BigInt::from(4 * r)))
}

/// The `a < b` half of the double sum with the `8R` prefactor.
pub fn correlation_half_sum(p: &CorrelationParams) -> ExactRat {
    let (r, v) = (p.r, p.vprime);
    let (big_f, big_g) = double_sum_factors(r, v);
    let mut total = BigRational::zero();
    for a in 0..=r {
        for b in a + 1..=r {
            let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
            let (ia, ib) = (a as usize, b as usize);
            total += &big_f[ia] * &big_f[ib] * &big_g[ia] * &big_g[ib]
                * BigRational::new(BigInt::from(sign * (b - a) * (b - a)), BigInt::from(2 * v + a + b + 2));
        }
    }
    abs_rat(total * BigRational::from_integer(BigInt::from(8 * r)))
}

/// `16 / (3 pi R q sqrt(q^2 + 1/3))`.
pub fn asymptotic_prediction(q: f64, r: f64) -> Result<f64> {
    if !(q > 0.0) || !(r >= 1.0) {
        return Err(Error::Validation(format!("need q > 0 and R >= 1 (q={q}, R={r})")));
    }
    Ok(16.0 / (3.0 * PI * r * q * (q * q + 1.0 / 3.0).sqrt()))
}

/// `omega_c` over the asymptotic prediction; tends to 1 along a ray.
pub fn prediction_ratio(p: &CorrelationParams, omega: &ExactRat) -> Result<f64> {
    let pred = asymptotic_prediction(rat_to_f64(&p.q), p.r as f64)?;
    Ok(rat_to_f64(omega) / pred)
}

/// The cosine approximant of `T^{(n)}(R, qR - 1; x)`.
pub fn moment_approximant(n: u32, r: f64, q: f64, x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 1.0) {
        return Err(Error::Domain(format!("the approximant is defined for x in (0, 1], got {x}")));
    }
    if !(r >= 1.0) || !(q > 0.0) {
        return Err(Error::Validation(format!("need R >= 1 and q > 0 (R={r}, q={q})")));
    }
    let s = (x / (4.0 - x)).sqrt();
    let amplitude = 2.0 / PI.sqrt() / (q * q + s * s).powf(0.25) / r.powf(1.5) * (r * s).powi(n as i32);
    let phase = r * (1.0 - x / 2.0).acos() - 0.5 * (s / q).atan() + n as f64 * PI / 2.0;
    Ok(amplitude * phase.cos())
}
