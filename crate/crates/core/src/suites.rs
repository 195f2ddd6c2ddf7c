//! Named invariant checks at fixed grids, run by `gapcorner verify`.

use std::fmt::Display;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::correlation::{
    asymptotic_prediction, correlation_double_sum, correlation_double_sum_literal, correlation_half_sum,
    correlation_via_moments, CorrelationParams,
};
use crate::exact::format_rat;
use crate::exactcount::{
    lemma_sum_a, lemma_sum_a_literal, lemma_sum_b, lemma_sum_b_expanded, lemma_sum_b_literal, lgv_pfaffian_count,
    macmahon_box, plane_partitions_brute, product_formula_count, schur_pfaffian_lhs, schur_pfaffian_rhs,
    ssc_hexagon_count, with_zero_prepended,
};
use crate::images::{build_images_90_mixed, conjecture_ratio, distance_product_prediction};
use crate::oracle::{count_symmetric_tilings, count_tilings};
use crate::regions::{build_hexagon, build_region, HexagonSpec, Parity, RegionSpec};
use crate::{Error, ExactRat, Result};

pub const SUITES: [&str; 7] = ["routes", "schur", "lemma33", "ssc", "factorization", "moments", "conjecture"];

/// Seed of the random tuples in the `schur` suite.
pub const SCHUR_SEED: u64 = 0x5c4u64;

#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }

    fn equal<T: PartialEq + Display>(&mut self, name: String, values: &[Result<T>]) {
        let shown: Vec<String> =
            values.iter().map(|v| v.as_ref().map_or_else(|e| format!("error: {e}"), |v| v.to_string())).collect();
        let passed = values.iter().all(|v| v.is_ok()) && shown.windows(2).all(|w| w[0] == w[1]);
        self.cases.push(CaseResult { name, passed, detail: shown.join(" = ") });
    }

    fn check(&mut self, name: String, passed: bool, detail: String) {
        self.cases.push(CaseResult { name, passed, detail });
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let mut rep = SuiteReport { suite: name.to_string(), cases: Vec::new() };
    match name {
        "routes" => routes(&mut rep),
        "schur" => schur(&mut rep),
        "lemma33" => lemma33(&mut rep),
        "ssc" => ssc(&mut rep),
        "factorization" => factorization(&mut rep),
        "moments" => moments(&mut rep),
        "conjecture" => conjecture(&mut rep)?,
        _ => {
            return Err(Error::Usage(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", "))));
        }
    }
    Ok(rep)
}

/// All subsets of `1..=n`, increasing.
pub fn subsets(n: i64) -> Vec<Vec<i64>> {
    (0u32..1 << n).map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect()).collect()
}

fn oracle_count(spec: &RegionSpec) -> Result<BigInt> {
    count_tilings(&build_region(spec)?)
}

fn routes(rep: &mut SuiteReport) {
    for n in 0..=3 {
        for x in 0..=2 {
            for y in -1..=2 {
                for kept in subsets(n) {
                    rep.equal(
                        format!("count n={n} x={x} y={y} kept={kept:?}"),
                        &[
                            product_formula_count(n, x, y, &kept),
                            lgv_pfaffian_count(n, x, y, &kept),
                            oracle_count(&RegionSpec::dented(n, x, y, &kept)),
                        ],
                    );
                }
            }
        }
    }
    for r in 1..=5 {
        for v in 0..=5 {
            let p = CorrelationParams::new(r, v).expect("positive R");
            let mut vals = vec![correlation_double_sum(&p), correlation_half_sum(&p), correlation_via_moments(&p)];
            if r <= 3 && v <= 3 {
                vals.push(correlation_double_sum_literal(&p));
            }
            let vals: Vec<Result<String>> = vals.iter().map(|v| Ok(format_rat(v))).collect();
            rep.equal(format!("omega R={r} v'={v}"), &vals);
        }
    }
}

fn random_tuple(rng: &mut ChaCha8Rng, len: usize) -> Vec<ExactRat> {
    // positive entries keep every x_i + x_j away from zero
    (0..len)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(1..=40)), BigInt::from(rng.gen_range(1..=9))))
        .collect()
}

fn show(xs: &[ExactRat]) -> String {
    xs.iter().map(format_rat).collect::<Vec<_>>().join(",")
}

fn schur(rep: &mut SuiteReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(SCHUR_SEED);
    for len in [2, 4, 6, 8] {
        for _ in 0..50 {
            let xs = random_tuple(&mut rng, len);
            let name = format!("schur [{}]", show(&xs));
            rep.equal(name, &[schur_pfaffian_lhs(&xs).map(|v| format_rat(&v)), schur_pfaffian_rhs(&xs).map(|v| format_rat(&v))]);
        }
    }
    for len in [1, 3, 5, 7] {
        for _ in 0..10 {
            let xs = with_zero_prepended(&random_tuple(&mut rng, len));
            let name = format!("schur odd [{}]", show(&xs));
            rep.equal(name, &[schur_pfaffian_lhs(&xs).map(|v| format_rat(&v)), schur_pfaffian_rhs(&xs).map(|v| format_rat(&v))]);
        }
    }
}

fn lemma33(rep: &mut SuiteReport) {
    for m in 0..=8 {
        for k in 0..=8 {
            rep.equal(format!("sum_a m={m} k={k}"), &[lemma_sum_a(m, k), Ok(lemma_sum_a_literal(m, k))]);
        }
    }
    for m in 2..=8 {
        for l in 2..=m {
            for k in 1..l {
                for y in 0..=4 {
                    rep.equal(
                        format!("sum_b k={k} l={l} m={m} y={y}"),
                        &[
                            lemma_sum_b(k, l, m, y).map(|v| format_rat(&BigRational::from_integer(v))),
                            lemma_sum_b_expanded(k, l, m, y).map(|v| format_rat(&v)),
                            lemma_sum_b_literal(k, l, m, y).map(|v| format_rat(&BigRational::from_integer(v))),
                        ],
                    );
                }
            }
        }
    }
}

/// Hexagons with at most `max_cells` triangles, `n <= 2`, `x <= 1`, every
/// slot set, both parities.
pub fn small_hexagons(max_cells: i64) -> Vec<HexagonSpec> {
    let mut out = Vec::new();
    for parity in [Parity::Even, Parity::Odd] {
        for n in 0..=2 {
            for x in 0..=1 {
                for slots in subsets(n) {
                    let h = HexagonSpec::new(parity, n, x, &slots);
                    if h.cell_count() <= max_cells {
                        out.push(h);
                    }
                }
            }
        }
    }
    out
}

fn oracle_doubly_symmetric(h: &HexagonSpec) -> Result<BigInt> {
    count_symmetric_tilings(&build_hexagon(h)?, true, true)
}

fn ssc(rep: &mut SuiteReport) {
    for h in small_hexagons(60) {
        rep.equal(
            format!("hexagon {:?} n={} x={} slots={:?}", h.parity, h.n, h.x, h.slots),
            &[ssc_hexagon_count(&h), oracle_doubly_symmetric(&h)],
        );
    }
    // H_{2n,2n,2x} without slots is the n x n x x box
    for n in 0..=3 {
        for x in 0..=3 {
            let h = HexagonSpec::new(Parity::Even, n, x, &[]);
            rep.equal(format!("box {n}x{n}x{x}"), &[ssc_hexagon_count(&h), macmahon_box(n, n, x)]);
        }
    }
    for (a, c) in [(1, 1), (2, 2)] {
        rep.equal(
            format!("plane partitions {a}x{a}x{c}"),
            &[macmahon_box(a, a, c), Ok(BigInt::from(plane_partitions_brute(a as usize, a as usize, c as u32)))],
        );
    }
}

/// Hexagons with slots on which `M = M_- M_|` is checked.
pub fn factorization_instances() -> Vec<HexagonSpec> {
    vec![
        HexagonSpec::new(Parity::Even, 2, 1, &[1]),
        HexagonSpec::new(Parity::Even, 2, 1, &[2]),
        HexagonSpec::new(Parity::Even, 2, 1, &[1, 2]),
        HexagonSpec::new(Parity::Odd, 1, 1, &[1]),
        HexagonSpec::new(Parity::Odd, 2, 0, &[2]),
    ]
}

/// `(M, M_- * M_|)` by the oracle.
pub fn factorization_sides(h: &HexagonSpec) -> Result<(BigInt, BigInt)> {
    let region = build_hexagon(h)?;
    let all = count_tilings(&region)?;
    let horizontal = count_symmetric_tilings(&region, true, false)?;
    let vertical = count_symmetric_tilings(&region, false, true)?;
    Ok((all, horizontal * vertical))
}

fn factorization(rep: &mut SuiteReport) {
    for h in factorization_instances() {
        let name = format!("M = M_- M_| {:?} n={} x={} slots={:?}", h.parity, h.n, h.x, h.slots);
        match factorization_sides(&h) {
            Ok((a, b)) => rep.equal(name, &[Ok(a), Ok(b)]),
            Err(e) => rep.check(name, false, format!("error: {e}")),
        }
    }
}

fn moments(rep: &mut SuiteReport) {
    for r in 1..=8 {
        for v in 0..=8 {
            let p = CorrelationParams::new(r, v).expect("positive R");
            rep.equal(
                format!("double sum = moments R={r} v'={v}"),
                &[Ok(format_rat(&correlation_double_sum(&p))), Ok(format_rat(&correlation_via_moments(&p)))],
            );
        }
    }
}

fn conjecture(rep: &mut SuiteReport) -> Result<()> {
    let gaps = [(1, 1), (2, 2), (2, 4), (4, 4), (3, 7)];
    let cfgs: Vec<_> = gaps.iter().map(|&(a, b)| build_images_90_mixed(a, b)).collect::<Result<_>>()?;
    for (g, c) in gaps.iter().zip(&cfgs) {
        let r = conjecture_ratio(c, c)?;
        rep.check(format!("self ratio {g:?}"), r == 1.0, r.to_string());
    }
    for i in 0..cfgs.len() {
        for j in 0..cfgs.len() {
            for k in 0..cfgs.len() {
                let chained = conjecture_ratio(&cfgs[i], &cfgs[j])? * conjecture_ratio(&cfgs[j], &cfgs[k])?;
                let direct = conjecture_ratio(&cfgs[i], &cfgs[k])?;
                rep.check(
                    format!("chain {:?} {:?} {:?}", gaps[i], gaps[j], gaps[k]),
                    (chained / direct - 1.0).abs() < 1e-12,
                    format!("{chained} vs {direct}"),
                );
            }
        }
    }
    // distance form against the closed form, and against the exact correlation far out
    for (a, b) in [(1, 1), (3, 7), (10, 10), (50, 13)] {
        let d = distance_product_prediction(&build_images_90_mixed(a, b)?)?;
        let c = asymptotic_prediction(a as f64 / b as f64, b as f64)?;
        rep.check(format!("two forms ({a},{b})"), (d / c - 1.0).abs() < 1e-10, format!("{d} vs {c}"));
    }
    for (a, b) in [(60, 120), (120, 120), (240, 120)] {
        let omega = correlation_via_moments(&CorrelationParams::from_gap(a, b)?);
        let d = distance_product_prediction(&build_images_90_mixed(a, b)?)?;
        let ratio = crate::exact::rat_to_f64(&omega) / d;
        rep.check(format!("exact / images ({a},{b})"), (ratio - 1.0).abs() <= 0.05, ratio.to_string());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_a_usage_error() {
        assert!(matches!(run_suite("unknown"), Err(Error::Usage(_))));
    }

    #[test]
    fn subsets_of_three() {
        let s = subsets(3);
        assert_eq!(s.len(), 8);
        assert!(s.contains(&vec![1, 3]) && s.contains(&vec![]));
    }

    #[test]
    fn cheap_suites_pass() {
        for name in ["schur", "lemma33", "moments", "conjecture"] {
            let rep = run_suite(name).unwrap();
            assert!(rep.passed(), "{name}: {:?}", rep.cases.iter().find(|c| !c.passed));
            assert!(!rep.cases.is_empty());
        }
    }

    #[test]
    fn equal_flags_errors_and_mismatches() {
        let mut rep = SuiteReport { suite: "t".into(), cases: vec![] };
        rep.equal("ok".into(), &[Ok(1), Ok(1)]);
        rep.equal("bad".into(), &[Ok(1), Ok(2)]);
        rep.equal("err".into(), &[Ok(1), Err(Error::Domain("x".into()))]);
        assert_eq!(rep.failures(), 2);
        assert_eq!(rep.cases[1].detail, "1 = 2");
    }
}
