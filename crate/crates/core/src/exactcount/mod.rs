//! Closed-form counts and the identities behind them.

pub mod pfaffian;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{binom, to_integer};
use crate::regions::{quarter_reduction, validate_labels, HexagonSpec};
use crate::{Error, ExactInt, ExactRat, Result};

pub use pfaffian::{determinant, pfaffian, pfaffian_by_crossings, pfaffian_elimination, pfaffian_expansion, SkewArray};

fn check_count_args(n: i64, x: i64, y: i64, kept: &[i64]) -> Result<()> {
    if n < 0 || x < 0 || y < -1 {
        return Err(Error::Validation(format!("need n, x >= 0 and y >= -1 (n={n}, x={x}, y={y})")));
    }
    validate_labels(kept, n, "kept bump")
}

fn ratio(num: i64, den: i64) -> ExactRat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Tilings of `D_{n,x,y}^{kept}` with free eastern side, by the product
/// formula.
pub fn product_formula_count(n: i64, x: i64, y: i64, kept: &[i64]) -> Result<ExactInt> {
    check_count_args(n, x, y, kept)?;
    let mut acc = BigRational::one();
    for &i in kept {
        acc *= BigRational::from_integer(binom(x + y + n + i, y + 2 * i));
    }
    for (a, &ia) in kept.iter().enumerate() {
        for &ib in &kept[a + 1..] {
            acc *= ratio(ib - ia, y + ib + ia);
        }
    }
    to_integer(&acc)
}

/// Number of lattice paths from the start of bump `i` to the `s`-th end
/// segment on the free side.
fn path_weight(y: i64, i: i64, s: i64) -> ExactInt {
    binom(y + i + s - 1, y + 2 * i - 1)
}

/// `Q_{a,b}` as the literal double sum over end segments `s < t`.
pub fn lgv_entry_literal(n: i64, x: i64, y: i64, ia: i64, ib: i64) -> ExactInt {
    let ends = n + x;
    let fa: Vec<ExactInt> = (1..=ends).map(|s| path_weight(y, ia, s)).collect();
    let fb: Vec<ExactInt> = (1..=ends).map(|s| path_weight(y, ib, s)).collect();
    // sum_{s<t} fa(s) fb(t) - fa(t) fb(s), with running prefix sums
    let mut total = BigInt::zero();
    let (mut pa, mut pb) = (BigInt::zero(), BigInt::zero());
    for t in 0..fa.len() {
        total += &pa * &fb[t] - &fa[t] * &pb;
        pa += &fa[t];
        pb += &fb[t];
    }
    total
}

/// Augmenting entry `Q_{0,b}`: all paths from bump `i` to the free side.
pub fn lgv_augment_literal(n: i64, x: i64, y: i64, i: i64) -> ExactInt {
    (1..=n + x).map(|s| path_weight(y, i, s)).sum()
}

pub fn lgv_entry_closed(n: i64, x: i64, y: i64, ia: i64, ib: i64) -> ExactRat {
    let m = n + x;
    ratio(ib - ia, y + ia + ib)
        * BigRational::from_integer(binom(y + m + ia, m - ia) * binom(y + m + ib, m - ib))
}

pub fn lgv_augment_closed(n: i64, x: i64, y: i64, i: i64) -> ExactInt {
    binom(y + n + x + i, y + 2 * i)
}

/// The path-family array: `Q_{a,b}` for kept labels, with the extra index-0
/// row in front when the number of paths is odd.
pub fn lgv_array(n: i64, x: i64, y: i64, kept: &[i64]) -> SkewArray {
    let odd = kept.len() % 2 == 1;
    let off = usize::from(odd);
    SkewArray::from_fn(kept.len() + off, |a, b| {
        if odd && a == 0 {
            BigRational::from_integer(lgv_augment_literal(n, x, y, kept[b - 1]))
        } else {
            BigRational::from_integer(lgv_entry_literal(n, x, y, kept[a - off], kept[b - off]))
        }
    })
}

/// Tilings of `D_{n,x,y}^{kept}` as a Pfaffian of nonintersecting path counts.
pub fn lgv_pfaffian_count(n: i64, x: i64, y: i64, kept: &[i64]) -> Result<ExactInt> {
    check_count_args(n, x, y, kept)?;
    to_integer(&pfaffian(&lgv_array(n, x, y, kept))?)
}

fn schur_pair(xs: &[ExactRat], i: usize, j: usize) -> Result<ExactRat> {
    let den = &xs[i] + &xs[j];
    if den.is_zero() {
        return Err(Error::Domain(format!("x_{} + x_{} = 0", i + 1, j + 1)));
    }
    Ok((&xs[j] - &xs[i]) / den)
}

fn schur_array(xs: &[ExactRat]) -> Result<SkewArray> {
    let mut a = SkewArray::zeros(xs.len());
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            a.set(i, j, schur_pair(xs, i, j)?);
        }
    }
    Ok(a)
}

/// `Pf[(x_j - x_i)/(x_j + x_i)]`.
pub fn schur_pfaffian_lhs(xs: &[ExactRat]) -> Result<ExactRat> {
    pfaffian(&schur_array(xs)?)
}

/// `prod_{i<j} (x_j - x_i)/(x_j + x_i)`.
pub fn schur_pfaffian_rhs(xs: &[ExactRat]) -> Result<ExactRat> {
    if xs.len() % 2 == 1 {
        return Err(Error::Usage(format!("Schur's identity needs an even number of variables, got {}", xs.len())));
    }
    let mut acc = BigRational::one();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            acc *= schur_pair(xs, i, j)?;
        }
    }
    Ok(acc)
}

/// `xs` with a zero prepended, turning an odd tuple into an even one.
pub fn with_zero_prepended(xs: &[ExactRat]) -> Vec<ExactRat> {
    std::iter::once(BigRational::zero()).chain(xs.iter().cloned()).collect()
}

/// `sum_{i=0}^m C(i,k)` evaluated in closed form, `C(m+1, k+1)`.
pub fn lemma_sum_a(m: i64, k: i64) -> Result<ExactInt> {
    if m < 0 || k < 0 {
        return Err(Error::Validation(format!("need m, k >= 0 (m={m}, k={k})")));
    }
    Ok(binom(m + 1, k + 1))
}

pub fn lemma_sum_a_literal(m: i64, k: i64) -> ExactInt {
    (0..=m).map(|i| binom(i, k)).sum()
}

fn check_lemma_b(k: i64, l: i64, m: i64, y: i64) -> Result<()> {
    if !(1 <= k && k < l && l <= m) || y < 0 {
        return Err(Error::Validation(format!("need 1 <= k < l <= m and y >= 0 (k={k}, l={l}, m={m}, y={y})")));
    }
    Ok(())
}

/// Closed form of the antisymmetrized double binomial sum.
pub fn lemma_sum_b(k: i64, l: i64, m: i64, y: i64) -> Result<ExactInt> {
    check_lemma_b(k, l, m, y)?;
    let v = ratio(l - k, y + l + k + 1)
        * BigRational::from_integer(binom(y + m + k + 1, m - k) * binom(y + m + l + 1, m - l));
    to_integer(&v)
}

/// The intermediate closed form with the two extra linear factors.
pub fn lemma_sum_b_expanded(k: i64, l: i64, m: i64, y: i64) -> Result<ExactRat> {
    check_lemma_b(k, l, m, y)?;
    Ok(ratio(l - k, y + l + k + 1)
        * ratio(m - k + 1, y + 2 * k + 1)
        * ratio(m - l + 1, y + 2 * l + 1)
        * BigRational::from_integer(binom(y + m + k + 1, y + 2 * k) * binom(y + m + l + 1, y + 2 * l)))
}

pub fn lemma_sum_b_literal(k: i64, l: i64, m: i64, y: i64) -> Result<ExactInt> {
    check_lemma_b(k, l, m, y)?;
    let mut total = BigInt::zero();
    for i in 1..=m {
        for j in i + 1..=m {
            total += binom(y + k + i, y + 2 * k) * binom(y + l + j, y + 2 * l)
                - binom(y + k + j, y + 2 * k) * binom(y + l + i, y + 2 * l);
        }
    }
    Ok(total)
}

/// Tilings of the hexagon with slots that are symmetric in both axes.
pub fn ssc_hexagon_count(spec: &HexagonSpec) -> Result<ExactInt> {
    let d = quarter_reduction(spec)?;
    product_formula_count(d.n, d.x, d.y, &d.kept_bumps)
}

/// Plane partitions in an `a x b x c` box.
pub fn macmahon_box(a: i64, b: i64, c: i64) -> Result<ExactInt> {
    if a < 0 || b < 0 || c < 0 {
        return Err(Error::Validation(format!("box dimensions must be non-negative ({a}, {b}, {c})")));
    }
    let mut acc = BigRational::one();
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                acc *= ratio(i + j + k - 1, i + j + k - 2);
            }
        }
    }
    to_integer(&acc)
}

/// Literal count of `a x b` arrays with entries in `0..=c`, weakly decreasing
/// along rows and columns.
pub fn plane_partitions_brute(a: usize, b: usize, c: u32) -> u64 {
    fn fill(grid: &mut Vec<u32>, b: usize, pos: usize, c: u32) -> u64 {
        if pos == grid.len() {
            return 1;
        }
        let (r, col) = (pos / b, pos % b);
        let mut cap = c;
        if r > 0 {
            cap = cap.min(grid[pos - b]);
        }
        if col > 0 {
            cap = cap.min(grid[pos - 1]);
        }
        (0..=cap)
            .map(|v| {
                grid[pos] = v;
                fill(grid, b, pos + 1, c)
            })
            .sum()
    }
    fill(&mut vec![0; a * b], b, 0, c)
}
