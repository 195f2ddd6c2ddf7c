//! Finite-size counts behind the correlation and their `n -> infinity`
//! ratios.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::double_sum_factors;
use crate::exact::{abs_rat, binom, to_integer};
use crate::exactcount::product_formula_count;
use crate::regions::validate_labels;
use crate::{Error, ExactInt, ExactRat, Result};

fn central(i: i64) -> ExactRat {
    // C(2i-1, i-1) / 4^i
    BigRational::new(binom(2 * i - 1, i - 1), BigInt::one() << (2 * i as usize))
}

fn pair(a: i64, b: i64) -> ExactRat {
    BigRational::new(BigInt::from(b - a), BigInt::from(b + a))
}

/// Limit of `M_f(D_{n,n,0}^{[n]-{i,j}}) / M_f(D_{n,n,0}^{[n]-{1,2}})`.
pub fn limit_ratio_pair(i: i64, j: i64) -> Result<ExactRat> {
    if !(1 <= i && i < j) {
        return Err(Error::Validation(format!("need 1 <= i < j (i={i}, j={j})")));
    }
    let four = BigRational::from_integer(BigInt::from(4));
    Ok(four * pair(i, j) * BigRational::new(binom(2 * i - 1, i - 1), BigInt::one() << (2 * i as usize - 2))
        * BigRational::new(binom(2 * j - 1, j - 1), BigInt::one() << (2 * j as usize - 2)))
}

/// Limit of `M_f(D_{n,n,0}^{[n]-dents}) / M_f(D_{n,n,0}^{[n]-{1..k}})`, where
/// `dents` are the `k` removed bump labels.
pub fn limit_ratio_general(dents: &[i64]) -> Result<ExactRat> {
    validate_labels(dents, i64::MAX, "dent")?;
    let mut acc = BigRational::one();
    for (a, &i) in dents.iter().enumerate() {
        acc *= central(i) / central(a as i64 + 1);
    }
    for a in 0..dents.len() {
        for b in a + 1..dents.len() {
            acc *= pair(dents[a], dents[b]) / pair(a as i64 + 1, b as i64 + 1);
        }
    }
    Ok(acc)
}

/// Product-formula factors of `D_{n,x,y}`: the weight of a single kept label
/// and of a kept pair.
struct Factors {
    n: i64,
    x: i64,
    y: i64,
}

impl Factors {
    fn single(&self, a: i64) -> ExactRat {
        BigRational::from_integer(binom(self.x + self.y + self.n + a, self.y + 2 * a))
    }

    fn pair(&self, a: i64, b: i64) -> ExactRat {
        let (a, b) = (a.min(b), a.max(b));
        BigRational::new(BigInt::from(b - a), BigInt::from(self.y + a + b))
    }

    /// Everything the labels in `dents` contribute to the undented product.
    fn removed(&self, dents: &[i64]) -> ExactRat {
        let mut acc = BigRational::one();
        for &a in dents {
            acc *= self.single(a);
            for b in 1..=self.n {
                if b != a {
                    acc *= self.pair(a, b);
                }
            }
        }
        // pairs inside `dents` were counted twice
        for (k, &a) in dents.iter().enumerate() {
            for &b in &dents[k + 1..] {
                acc /= self.pair(a, b);
            }
        }
        acc
    }
}

/// `M_f(D_{n,x,y}^{[n]-dents_num}) / M_f(D_{n,x,y}^{[n]-dents_den})` in
/// `O(n (|dents_num| + |dents_den|))` operations.
pub fn dented_count_ratio(n: i64, x: i64, y: i64, dents_num: &[i64], dents_den: &[i64]) -> Result<ExactRat> {
    if n < 0 || x < 0 || y < -1 {
        return Err(Error::Validation(format!("need n, x >= 0 and y >= -1 (n={n}, x={x}, y={y})")));
    }
    validate_labels(dents_num, n, "dent")?;
    validate_labels(dents_den, n, "dent")?;
    let f = Factors { n, x, y };
    Ok(f.removed(dents_den) / f.removed(dents_num))
}

fn check_gap(n: i64, alpha: i64, beta: i64) -> Result<()> {
    if alpha < 1 || beta < 1 {
        return Err(Error::Validation(format!("gap coordinates must be positive (alpha={alpha}, beta={beta})")));
    }
    if (alpha + beta) % 2 != 0 {
        return Err(Error::Domain(format!(
            "alpha + beta = {} is odd: the change of variables alpha = 2v - R, beta = R needs an integer v",
            alpha + beta
        )));
    }
    if alpha + beta > n {
        return Err(Error::Validation(format!(
            "the bumps {}..={} reached by paths into the gap exceed n = {n}",
            alpha,
            alpha + beta
        )));
    }
    Ok(())
}

fn numerator_from_dets(n: i64, alpha: i64, beta: i64, det: impl Fn(i64, i64) -> ExactRat) -> Result<ExactInt> {
    check_gap(n, alpha, beta)?;
    let r = beta;
    let labels: Vec<i64> = (1..=n).collect();
    let full = product_formula_count(n, n, 0, &labels)?;
    let f = Factors { n, x: n, y: 0 };
    let full = BigRational::from_integer(full);
    let mut total = BigRational::zero();
    for a in 0..=r {
        for b in a + 1..=r {
            let dents = [alpha + a, alpha + b];
            let count = &full / f.removed(&dents);
            let term = det(a, b) * count;
            if (a + b) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    to_integer(&abs_rat(total))
}

/// Tilings of `D_{n,n,0}` with the gap at `(alpha, beta)`, from the Laplace
/// expansion along the two gap columns.
pub fn finite_n_numerator(n: i64, alpha: i64, beta: i64) -> Result<ExactInt> {
    let r = beta;
    let (big_f, _) = double_sum_factors(r, 0);
    numerator_from_dets(n, alpha, beta, |a, b| {
        BigRational::from_integer(BigInt::from(2 * r * (b - a))) * &big_f[a as usize] * &big_f[b as usize]
    })
}

/// Same, with each 2x2 minor evaluated from its binomial entries and the
/// dented counts taken straight from the product formula.
pub fn finite_n_numerator_literal(n: i64, alpha: i64, beta: i64) -> Result<ExactInt> {
    check_gap(n, alpha, beta)?;
    let r = beta;
    let mut total = BigInt::zero();
    for a in 0..=r {
        for b in a + 1..=r {
            let det = binom(r + a - 1, 2 * a) * binom(r + b - 1, 2 * b - 1)
                - binom(r + b - 1, 2 * b) * binom(r + a - 1, 2 * a - 1);
            let kept: Vec<i64> = (1..=n).filter(|&i| i != alpha + a && i != alpha + b).collect();
            let term = det * product_formula_count(n, n, 0, &kept)?;
            if (a + b) % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(if total < BigInt::zero() { -total } else { total })
}

/// `M_f(D_{n,n,0}(alpha, beta)) / M_f(D_{n,n,0}(1, 1))`.
pub fn finite_n_correlation(n: i64, alpha: i64, beta: i64) -> Result<ExactRat> {
    let num = finite_n_numerator(n, alpha, beta)?;
    let den = finite_n_numerator(n, 1, 1)?;
    Ok(BigRational::new(num, den))
}
