//! Pfaffians of skew-symmetric arrays with exact rational entries.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, ExactRat, Result};

/// Sizes up to this use the matching expansion by default.
pub const EXPANSION_LIMIT: usize = 8;

/// Upper triangle `a_{ij}, i < j` of a skew-symmetric matrix, stored row by
/// row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkewArray {
    size: usize,
    upper: Vec<ExactRat>,
}

impl SkewArray {
    pub fn zeros(size: usize) -> Self {
        SkewArray { size, upper: vec![BigRational::zero(); size * size.saturating_sub(1) / 2] }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> ExactRat) -> Self {
        let mut a = Self::zeros(size);
        for i in 0..size {
            for j in i + 1..size {
                a.set(i, j, f(i, j));
            }
        }
        a
    }

    pub fn size(&self) -> usize {
        self.size
    }

    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.size);
        i * self.size - i * (i + 1) / 2 + (j - i - 1)
    }

    /// Entry `(i, j)` of the skew completion (0-based).
    pub fn get(&self, i: usize, j: usize) -> ExactRat {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.upper[self.slot(i, j)].clone(),
            Greater => -self.upper[self.slot(j, i)].clone(),
            Equal => BigRational::zero(),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactRat) {
        assert!(i < j, "only the upper triangle is stored");
        let s = self.slot(i, j);
        self.upper[s] = v;
    }

    pub fn to_matrix(&self) -> Vec<Vec<ExactRat>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j)).collect()).collect()
    }
}

/// Pfaffian, by expansion for small sizes and elimination otherwise.
pub fn pfaffian(a: &SkewArray) -> Result<ExactRat> {
    if a.size() <= EXPANSION_LIMIT {
        pfaffian_expansion(a)
    } else {
        pfaffian_elimination(a)
    }
}

fn require_even(a: &SkewArray) -> Result<()> {
    if a.size() % 2 == 1 {
        return Err(Error::Usage(format!(
            "Pfaffian of odd size {} needs an augmenting row first",
            a.size()
        )));
    }
    Ok(())
}

/// Signed sum over perfect matchings of the product of matched entries,
/// the sign being `(-1)^(number of crossings)`.
pub fn pfaffian_expansion(a: &SkewArray) -> Result<ExactRat> {
    require_even(a)?;
    let mut free: Vec<usize> = (0..a.size()).collect();
    Ok(expand(a, &mut free))
}

// Expansion along the first remaining index.
fn expand(a: &SkewArray, free: &mut Vec<usize>) -> ExactRat {
    if free.is_empty() {
        return BigRational::one();
    }
    let i = free.remove(0);
    let mut total = BigRational::zero();
    for p in 0..free.len() {
        let j = free.remove(p);
        let entry = a.get(i, j);
        if !entry.is_zero() {
            let rest = expand(a, free);
            if p % 2 == 0 {
                total += entry * rest;
            } else {
                total -= entry * rest;
            }
        }
        free.insert(p, j);
    }
    free.insert(0, i);
    total
}

/// Literal crossing-count definition; exponential, for cross-checks only.
pub fn pfaffian_by_crossings(a: &SkewArray) -> Result<ExactRat> {
    require_even(a)?;
    let mut total = BigRational::zero();
    for_each_matching(a.size(), &mut Vec::new(), &mut vec![false; a.size()], &mut |m| {
        let crossings = m
            .iter()
            .enumerate()
            .flat_map(|(e, &(i, j))| m[e + 1..].iter().map(move |&(k, l)| (i, j, k, l)))
            .filter(|&(i, j, k, l)| (i < k && k < j && j < l) || (k < i && i < l && l < j))
            .count();
        let mut term = BigRational::one();
        for &(i, j) in m {
            term *= a.get(i, j);
        }
        if crossings % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    Ok(total)
}

fn for_each_matching(
    size: usize,
    edges: &mut Vec<(usize, usize)>,
    used: &mut Vec<bool>,
    visit: &mut impl FnMut(&[(usize, usize)]),
) {
    let Some(i) = (0..size).find(|&i| !used[i]) else {
        visit(edges);
        return;
    };
    used[i] = true;
    for j in i + 1..size {
        if !used[j] {
            used[j] = true;
            edges.push((i, j));
            for_each_matching(size, edges, used, visit);
            edges.pop();
            used[j] = false;
        }
    }
    used[i] = false;
}

/// Skew Gaussian elimination: `Pf(A) = a_12 Pf(S)` with `S` the Schur
/// complement of the leading 2x2 block, pivoting by simultaneous row and
/// column swaps.
pub fn pfaffian_elimination(a: &SkewArray) -> Result<ExactRat> {
    require_even(a)?;
    let mut m = a.to_matrix();
    let n = m.len();
    let mut result = BigRational::one();
    let mut k = 0;
    while k < n {
        let Some(p) = (k + 1..n).find(|&j| !m[k][j].is_zero()) else {
            return Ok(BigRational::zero());
        };
        if p != k + 1 {
            m.swap(p, k + 1);
            for row in m.iter_mut() {
                row.swap(p, k + 1);
            }
            result = -result;
        }
        let pivot = m[k][k + 1].clone();
        result *= &pivot;
        for i in k + 2..n {
            for j in i + 1..n {
                let update = (&m[k][j] * &m[k + 1][i] - &m[k][i] * &m[k + 1][j]) / &pivot;
                let v = &m[i][j] + update;
                m[j][i] = -v.clone();
                m[i][j] = v;
            }
        }
        k += 2;
    }
    Ok(result)
}

/// Exact determinant by fraction Gaussian elimination.
pub fn determinant(matrix: &[Vec<ExactRat>]) -> ExactRat {
    let mut m = matrix.to_vec();
    let n = m.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let pivot = m[c][c].clone();
        det *= &pivot;
        for r in c + 1..n {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..n {
                let d = &f * &m[c][k];
                m[r][k] -= d;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_array(rng: &mut ChaCha8Rng, size: usize) -> SkewArray {
        SkewArray::from_fn(size, |_, _| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
    }

    #[test]
    fn small_sizes() {
        let a = SkewArray::from_fn(2, |_, _| rat(3, 7));
        assert_eq!(pfaffian(&a).unwrap(), rat(3, 7));
        assert_eq!(pfaffian(&SkewArray::zeros(0)).unwrap(), rat_int(1));
        let v = |i: usize, j: usize| rat_int((10 * (i + 1) + j + 1) as i64);
        let a = SkewArray::from_fn(4, v);
        let expect = v(0, 1) * v(2, 3) - v(0, 2) * v(1, 3) + v(0, 3) * v(1, 2);
        assert_eq!(pfaffian(&a).unwrap(), expect);
        assert_eq!(pfaffian_elimination(&a).unwrap(), expect);
        assert_eq!(pfaffian_by_crossings(&a).unwrap(), expect);
    }

    #[test]
    fn odd_size_is_a_usage_error() {
        assert!(matches!(pfaffian(&SkewArray::zeros(3)), Err(Error::Usage(_))));
        assert!(matches!(pfaffian_elimination(&SkewArray::zeros(9)), Err(Error::Usage(_))));
    }

    #[test]
    fn square_is_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for size in [2, 4, 6, 8] {
            for _ in 0..5 {
                let a = random_array(&mut rng, size);
                let pf = pfaffian(&a).unwrap();
                assert_eq!(&pf * &pf, determinant(&a.to_matrix()));
                assert_eq!(pfaffian_elimination(&a).unwrap(), pf);
                assert_eq!(pfaffian_by_crossings(&a).unwrap(), pf);
            }
        }
    }

    #[test]
    fn elimination_needs_pivoting() {
        // a_12 = 0 forces a swap
        let a = SkewArray::from_fn(4, |i, j| if (i, j) == (0, 1) { rat_int(0) } else { rat_int((i + 2 * j) as i64) });
        assert_eq!(pfaffian_elimination(&a).unwrap(), pfaffian_expansion(&a).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..3 {
            let a = random_array(&mut rng, 10);
            let pf = pfaffian_elimination(&a).unwrap();
            assert_eq!(&pf * &pf, determinant(&a.to_matrix()));
        }
    }

    #[test]
    fn determinant_basics() {
        let m = vec![vec![rat_int(0), rat_int(2)], vec![rat_int(3), rat_int(4)]];
        assert_eq!(determinant(&m), rat_int(-6));
        assert_eq!(determinant(&[]), rat_int(1));
    }
}
