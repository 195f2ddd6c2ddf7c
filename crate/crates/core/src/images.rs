//! Signed image charges of gaps near straight boundaries, and the
//! distance-product predictions built from them.
//!
//! Positions live in `Q(sqrt 3)`: a gap at horizontal distance `alpha sqrt 3`
//! and height `beta` has coordinates `(alpha sqrt 3, beta)`. Free boundaries
//! are vertical lattice lines, constrained ones horizontal zig-zags (or
//! lattice directions at 60 degrees to them).

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{rat, rat_int, rat_string, rat_to_f64};
use crate::{Error, ExactRat, Result};

/// `r + s sqrt 3`, serialized as the pair `["r", "s"]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sqrt3(#[serde(with = "rat_string")] pub ExactRat, #[serde(with = "rat_string")] pub ExactRat);

impl Sqrt3 {
    pub fn rational(r: ExactRat) -> Self {
        Sqrt3(r, BigRational::zero())
    }

    pub fn surd(s: ExactRat) -> Self {
        Sqrt3(BigRational::zero(), s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }

    /// Sign of the real number, decided exactly.
    pub fn signum(&self) -> i32 {
        let sr = sign_of(&self.0);
        let ss = sign_of(&self.1);
        if sr == 0 || ss == 0 || sr == ss {
            return if sr != 0 { sr } else { ss };
        }
        // opposite signs: compare r^2 with 3 s^2
        let r2 = &self.0 * &self.0;
        let s2 = &self.1 * &self.1 * rat_int(3);
        match r2.cmp(&s2) {
            std::cmp::Ordering::Greater => sr,
            std::cmp::Ordering::Less => ss,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.0) + rat_to_f64(&self.1) * 3f64.sqrt()
    }
}

fn sign_of(r: &ExactRat) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for Sqrt3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt3", self.0, self.1)
    }
}

impl Add for &Sqrt3 {
    type Output = Sqrt3;
    fn add(self, o: &Sqrt3) -> Sqrt3 {
        Sqrt3(&self.0 + &o.0, &self.1 + &o.1)
    }
}

impl Sub for &Sqrt3 {
    type Output = Sqrt3;
    fn sub(self, o: &Sqrt3) -> Sqrt3 {
        Sqrt3(&self.0 - &o.0, &self.1 - &o.1)
    }
}

impl Mul for &Sqrt3 {
    type Output = Sqrt3;
    fn mul(self, o: &Sqrt3) -> Sqrt3 {
        Sqrt3(&self.0 * &o.0 + &self.1 * &o.1 * rat_int(3), &self.0 * &o.1 + &self.1 * &o.0)
    }
}

impl Neg for &Sqrt3 {
    type Output = Sqrt3;
    fn neg(self) -> Sqrt3 {
        Sqrt3(-&self.0, -&self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: Sqrt3,
    pub y: Sqrt3,
}

impl Point {
    /// The reference point of a gap: `(alpha sqrt 3, beta)`.
    pub fn lattice(alpha: i64, beta: i64) -> Self {
        Point { x: Sqrt3::surd(rat_int(alpha)), y: Sqrt3::rational(rat_int(beta)) }
    }

    /// Exact squared distance.
    pub fn dist2(&self, o: &Point) -> Sqrt3 {
        let dx = &self.x - &o.x;
        let dy = &self.y - &o.y;
        &(&dx * &dx) + &(&dy * &dy)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChargePoint {
    pub position: Point,
    pub charge: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Geometry {
    HalfPlaneConstrained,
    HalfPlaneFree,
    #[serde(rename = "angle-90-mixed")]
    Angle90Mixed,
    #[serde(rename = "angle-60-constrained")]
    Angle60Constrained,
    #[serde(rename = "angle-120-constrained")]
    Angle120Constrained,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Boundary {
    Constrained,
    Free,
}

/// A mirror line through the origin, given by a unit normal `n`; the region
/// lies on the side where `n . p > 0`.
struct Mirror {
    normal: (Sqrt3, Sqrt3),
    kind: Boundary,
}

impl Mirror {
    fn side(&self, p: &Point) -> i32 {
        (&(&self.normal.0 * &p.x) + &(&self.normal.1 * &p.y)).signum()
    }

    /// `p - 2 (n . p) n`.
    fn reflect(&self, p: &Point) -> Point {
        let dot = &(&self.normal.0 * &p.x) + &(&self.normal.1 * &p.y);
        let two_dot = &dot + &dot;
        Point { x: &p.x - &(&two_dot * &self.normal.0), y: &p.y - &(&two_dot * &self.normal.1) }
    }
}

fn half() -> ExactRat {
    rat(1, 2)
}

impl Geometry {
    fn mirrors(self) -> Vec<Mirror> {
        let horizontal = |kind| Mirror { normal: (Sqrt3::rational(rat_int(0)), Sqrt3::rational(rat_int(1))), kind };
        let vertical = |kind| Mirror { normal: (Sqrt3::rational(rat_int(1)), Sqrt3::rational(rat_int(0))), kind };
        match self {
            Geometry::HalfPlaneConstrained => vec![horizontal(Boundary::Constrained)],
            Geometry::HalfPlaneFree => vec![vertical(Boundary::Free)],
            Geometry::Angle90Mixed => vec![horizontal(Boundary::Constrained), vertical(Boundary::Free)],
            // second side along direction 60 degrees, region below it
            Geometry::Angle60Constrained => vec![
                horizontal(Boundary::Constrained),
                Mirror { normal: (Sqrt3::surd(half()), Sqrt3::rational(-half())), kind: Boundary::Constrained },
            ],
            // second side along direction 120 degrees, region to its right
            Geometry::Angle120Constrained => vec![
                horizontal(Boundary::Constrained),
                Mirror { normal: (Sqrt3::surd(half()), Sqrt3::rational(half())), kind: Boundary::Constrained },
            ],
        }
    }

    /// Number of copies of the region tiling the plane under the reflections.
    pub fn copies(self) -> Result<usize> {
        match self {
            Geometry::HalfPlaneConstrained | Geometry::HalfPlaneFree => Ok(2),
            Geometry::Angle90Mixed => Ok(4),
            Geometry::Angle60Constrained => Ok(6),
            Geometry::Angle120Constrained => Err(unsupported()),
        }
    }

    /// Overall constant of the prediction, where one is known.
    pub fn constant(self) -> f64 {
        match self {
            Geometry::Angle90Mixed => 32.0 / PI,
            _ => 1.0,
        }
    }

    pub fn contains(self, p: &Point) -> bool {
        self.mirrors().iter().all(|m| m.side(p) > 0)
    }
}

fn unsupported() -> Error {
    Error::Validation(
        "a 120 degree angle has no consistent finite image set: reflected copies overlap the region".into(),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageConfig {
    pub geometry: Geometry,
    pub originals: Vec<ChargePoint>,
    pub images: Vec<ChargePoint>,
}

impl ImageConfig {
    pub fn points(&self) -> impl Iterator<Item = &ChargePoint> {
        self.originals.iter().chain(&self.images)
    }

    pub fn charges(&self) -> Vec<i64> {
        let mut c: Vec<i64> = self.points().map(|p| p.charge).collect();
        c.sort();
        c
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("configurations always serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Usage(format!("bad image configuration: {e}")))
    }
}

/// Closes the originals under the geometry's reflections, flipping the
/// charge across free lines and keeping it across constrained ones.
pub fn build_images(geometry: Geometry, originals: Vec<ChargePoint>) -> Result<ImageConfig> {
    let copies = geometry.copies()?;
    let mirrors = geometry.mirrors();
    for o in &originals {
        if o.charge == 0 {
            return Err(Error::Validation("charges must be nonzero".into()));
        }
        if !geometry.contains(&o.position) {
            return Err(Error::Validation(format!("({}, {}) is not inside the region", o.position.x, o.position.y)));
        }
    }
    let mut images = Vec::new();
    for o in &originals {
        let mut seen: BTreeMap<Point, i64> = BTreeMap::from([(o.position.clone(), o.charge)]);
        let mut frontier = vec![(o.position.clone(), o.charge)];
        while let Some((p, q)) = frontier.pop() {
            for m in &mirrors {
                let image = m.reflect(&p);
                let charge = match m.kind {
                    Boundary::Constrained => q,
                    Boundary::Free => -q,
                };
                match seen.get(&image) {
                    Some(&c) if c != charge => {
                        return Err(Error::Degenerate("image reached with two different charges".into()));
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(image.clone(), charge);
                        frontier.push((image, charge));
                    }
                }
            }
            if seen.len() > copies {
                return Err(unsupported());
            }
        }
        let mut orbit: Vec<ChargePoint> = seen
            .into_iter()
            .filter(|(p, _)| *p != o.position)
            .map(|(position, charge)| ChargePoint { position, charge })
            .collect();
        orbit.sort_by_key(|c| image_rank(geometry, &o.position, &c.position));
        images.extend(orbit);
    }
    Ok(ImageConfig { geometry, originals, images })
}

/// Orders images by how many reflections produce them, then by position.
fn image_rank(geometry: Geometry, origin: &Point, p: &Point) -> (usize, Point) {
    let mirrors = geometry.mirrors();
    let mut layer = vec![origin.clone()];
    for depth in 1..=6 {
        layer = layer.iter().flat_map(|q| mirrors.iter().map(move |m| m.reflect(q))).collect();
        if layer.contains(p) {
            return (depth, p.clone());
        }
    }
    (usize::MAX, p.clone())
}

/// `O_1 = (alpha sqrt 3, beta)` with charge `-2`, its reflections in the
/// constrained horizontal side (`O_2`) and the free vertical side (`O_3`), and
/// the double reflection `O_4`.
pub fn build_images_90_mixed(alpha: i64, beta: i64) -> Result<ImageConfig> {
    if alpha < 1 || beta < 1 {
        return Err(Error::Validation(format!("need alpha, beta >= 1 (alpha={alpha}, beta={beta})")));
    }
    let o1 = ChargePoint { position: Point::lattice(alpha, beta), charge: -2 };
    let cfg = build_images(Geometry::Angle90Mixed, vec![o1])?;
    let at = |a: i64, b: i64| cfg.images.iter().find(|c| c.position == Point::lattice(a, b)).cloned();
    let images = [at(alpha, -beta), at(-alpha, beta), at(-alpha, -beta)]
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Degenerate("image orbit is not the expected four points".into()))?;
    Ok(ImageConfig { images, ..cfg })
}

/// Pairwise distances, keyed by indices into `originals ++ images`.
pub fn distances(config: &ImageConfig) -> Result<BTreeMap<(usize, usize), f64>> {
    let pts: Vec<&ChargePoint> = config.points().collect();
    let mut out = BTreeMap::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let d2 = pts[i].position.dist2(&pts[j].position);
            if d2.is_zero() {
                return Err(Error::Degenerate(format!("points {i} and {j} coincide")));
            }
            out.insert((i, j), d2.to_f64().sqrt());
        }
    }
    Ok(out)
}

/// `log` of `prod_{i<j} d_ij^{q_i q_j / 2}` taken to the power `1/copies`.
fn log_interaction(config: &ImageConfig) -> Result<f64> {
    let copies = config.geometry.copies()? as f64;
    let charges: Vec<i64> = config.points().map(|p| p.charge).collect();
    let d = distances(config)?;
    let total: f64 = d.iter().map(|(&(i, j), &dij)| (charges[i] * charges[j]) as f64 / 2.0 * dij.ln()).sum();
    Ok(total / copies)
}

/// `c * (prod_{i<j} d_ij^{q_i q_j / 2})^{1/copies}`, with `c = 32/pi` for the
/// mixed right angle and `1` for the others.
pub fn distance_product_prediction(config: &ImageConfig) -> Result<f64> {
    Ok(config.geometry.constant() * log_interaction(config)?.exp())
}

/// Predicted ratio of the correlations of two configurations of the same kind.
pub fn conjecture_ratio(a: &ImageConfig, b: &ImageConfig) -> Result<f64> {
    if a.geometry != b.geometry {
        return Err(Error::Validation(format!("geometries differ: {:?} vs {:?}", a.geometry, b.geometry)));
    }
    if a.charges() != b.charges() {
        return Err(Error::Validation("charge multisets differ".into()));
    }
    Ok((log_interaction(a)? - log_interaction(b)?).exp())
}

/// Exact squared distance as `(r, s)` meaning `r + s sqrt 3`.
pub fn exact_dist2(a: &ChargePoint, b: &ChargePoint) -> (ExactRat, ExactRat) {
    let d = a.position.dist2(&b.position);
    (d.0, d.1)
}
