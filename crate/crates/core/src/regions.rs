//! Lattice regions on the triangular lattice drawn with one family of lattice
//! lines vertical.
//!
//! Coordinates: vertical lattice line `k` sits at abscissa `k * sqrt(3)/2`, and
//! its lattice points are at heights `k/2 + Z`. A unit triangle lives in
//! column `col` (between lines `col` and `col + 1`) and is identified by
//! `row`, twice the height of the midpoint of its vertical side. Triangles with
//! `col + row` odd point right (vertical side on line `col`); the others point
//! left (vertical side on line `col + 1`). All heights below are stored
//! doubled so that every boundary vertex is an integer.
//!
//! For `D_{n,x,y}` the free eastern side lies on line 0 and runs from height 0
//! (the corner of the angle) up to height `n + x`; the line through that
//! corner and the tops of the bottom zig-zag is the horizontal side of the
//! angle.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Orientation {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub col: i32,
    pub row: i32,
}

/// The three sides of a unit triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    Vertical,
    Upper,
    Lower,
}

impl Side {
    pub const ALL: [Side; 3] = [Side::Vertical, Side::Upper, Side::Lower];

    fn index(self) -> usize {
        match self {
            Side::Vertical => 0,
            Side::Upper => 1,
            Side::Lower => 2,
        }
    }
}

impl Cell {
    pub const fn new(col: i32, row: i32) -> Self {
        Cell { col, row }
    }

    pub fn orientation(self) -> Orientation {
        if (self.col + self.row).rem_euclid(2) == 1 {
            Orientation::Right
        } else {
            Orientation::Left
        }
    }

    /// The triangle sharing the given side.
    pub fn across(self, side: Side) -> Cell {
        match side {
            Side::Upper => Cell::new(self.col, self.row + 1),
            Side::Lower => Cell::new(self.col, self.row - 1),
            Side::Vertical => match self.orientation() {
                Orientation::Right => Cell::new(self.col - 1, self.row),
                Orientation::Left => Cell::new(self.col + 1, self.row),
            },
        }
    }

    /// Doubled abscissa of the vertical side, in units of `sqrt(3)/2`.
    pub fn vertical_line(self) -> i32 {
        match self.orientation() {
            Orientation::Right => self.col,
            Orientation::Left => self.col + 1,
        }
    }
}

/// A finite set of unit triangles with its adjacency and free boundary edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionLattice {
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
    adjacency: Vec<[Option<usize>; 3]>,
    free_edges: BTreeSet<(usize, Side)>,
}

impl RegionLattice {
    /// Builds a lattice from a cell set. Free edges must be boundary edges.
    pub fn new(cells: impl IntoIterator<Item = Cell>, free: impl IntoIterator<Item = (Cell, Side)>) -> Result<Self> {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        let cells: Vec<Cell> = set.into_iter().collect();
        let index: HashMap<Cell, usize> = cells.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let adjacency = cells
            .iter()
            .map(|c| Side::ALL.map(|s| index.get(&c.across(s)).copied()))
            .collect();
        let mut free_edges = BTreeSet::new();
        for (cell, side) in free {
            let i = *index
                .get(&cell)
                .ok_or_else(|| Error::Validation(format!("free edge on missing cell {cell:?}")))?;
            if index.contains_key(&cell.across(side)) {
                return Err(Error::Validation(format!("free edge {side:?} of {cell:?} is interior")));
            }
            free_edges.insert((i, side));
        }
        Ok(RegionLattice { cells, index, adjacency, free_edges })
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, cell: Cell) -> Option<usize> {
        self.index.get(&cell).copied()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.index.contains_key(&cell)
    }

    pub fn neighbor(&self, i: usize, side: Side) -> Option<usize> {
        self.adjacency[i][side.index()]
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[i].iter().flatten().copied()
    }

    pub fn free_edges(&self) -> &BTreeSet<(usize, Side)> {
        &self.free_edges
    }

    pub fn free_sides(&self, i: usize) -> impl Iterator<Item = Side> + '_ {
        Side::ALL.into_iter().filter(move |s| self.free_edges.contains(&(i, *s)))
    }

    /// Right-pointing minus left-pointing triangles.
    pub fn imbalance(&self) -> i64 {
        self.cells
            .iter()
            .map(|c| match c.orientation() {
                Orientation::Right => 1,
                Orientation::Left => -1,
            })
            .sum()
    }

    pub fn count_orientation(&self, o: Orientation) -> usize {
        self.cells.iter().filter(|c| c.orientation() == o).count()
    }

    /// True when every free edge is a vertical side on one common line.
    pub fn free_edges_on_one_vertical_line(&self) -> bool {
        let mut lines = self.free_edges.iter().map(|&(i, side)| (side, self.cells[i].vertical_line()));
        match lines.next() {
            None => true,
            Some((Side::Vertical, line)) => lines.all(|(s, l)| s == Side::Vertical && l == line),
            Some(_) => false,
        }
    }

    /// Same region with the given cells removed; free edges of removed cells
    /// are dropped, free edges of surviving cells are kept.
    pub fn without(&self, removed: &BTreeSet<Cell>) -> Result<Self> {
        let cells = self.cells.iter().copied().filter(|c| !removed.contains(c));
        let free: Vec<(Cell, Side)> = self
            .free_edges
            .iter()
            .map(|&(i, s)| (self.cells[i], s))
            .filter(|(c, _)| !removed.contains(c))
            .collect();
        RegionLattice::new(cells, free)
    }

    /// Same cells, constrained boundary everywhere.
    pub fn constrained(&self) -> Self {
        RegionLattice { free_edges: BTreeSet::new(), ..self.clone() }
    }

    /// Image of the region under reflection in the horizontal line through
    /// the midpoints of triangles of row `axis_row`.
    pub fn reflect_horizontal(&self, axis_row: i32) -> Result<Self> {
        let map = |c: Cell| Cell::new(c.col, 2 * axis_row - c.row);
        let flip = |s: Side| match s {
            Side::Upper => Side::Lower,
            Side::Lower => Side::Upper,
            Side::Vertical => Side::Vertical,
        };
        RegionLattice::new(
            self.cells.iter().map(|&c| map(c)),
            self.free_edges.iter().map(|&(i, s)| (map(self.cells[i]), flip(s))),
        )
    }

    /// Image under reflection in the vertical lattice line `line`.
    pub fn reflect_vertical(&self, line: i32) -> Result<Self> {
        let map = |c: Cell| Cell::new(2 * line - 1 - c.col, c.row);
        RegionLattice::new(
            self.cells.iter().map(|&c| map(c)),
            self.free_edges.iter().map(|&(i, s)| (map(self.cells[i]), s)),
        )
    }

    /// Row of the horizontal axis and line of the vertical axis of the
    /// bounding box, when they are lattice-compatible.
    pub fn bounding_axes(&self) -> Option<(i32, i32)> {
        let (min_r, max_r) = min_max(self.cells.iter().map(|c| c.row))?;
        let (min_c, max_c) = min_max(self.cells.iter().map(|c| c.col))?;
        if (min_r + max_r) % 2 != 0 || (min_c + max_c + 1) % 2 != 0 {
            return None;
        }
        Some(((min_r + max_r) / 2, (min_c + max_c + 1) / 2))
    }
}

fn min_max(it: impl Iterator<Item = i32>) -> Option<(i32, i32)> {
    it.fold(None, |acc, v| match acc {
        None => Some((v, v)),
        Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
    })
}

/// Collects the triangles of a region that is a union of columns, each column
/// bounded below and above by a single lattice segment. `bottom(k)` and
/// `top(k)` give doubled heights on vertical line `k`.
fn column_cells(first: i32, last: i32, bottom: impl Fn(i32) -> i32, top: impl Fn(i32) -> i32) -> Vec<Cell> {
    let mut cells = Vec::new();
    for col in first..=last {
        // right-pointing triangles stand on line `col`, left-pointing on `col + 1`
        for (line, lo, hi) in [(col, bottom(col), top(col)), (col + 1, bottom(col + 1), top(col + 1))] {
            debug_assert_eq!((lo - line).rem_euclid(2), 0, "boundary off lattice at line {line}");
            let mut h = lo;
            while h + 2 <= hi {
                cells.push(Cell::new(col, h + 1));
                h += 2;
            }
        }
    }
    cells
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gap {
    pub alpha: i64,
    pub beta: i64,
}

/// Symbolic description of `D_{n,x,y}` with dents and an optional gap.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionSpec {
    pub n: i64,
    pub x: i64,
    pub y: i64,
    pub kept_bumps: Vec<i64>,
    #[serde(default)]
    pub gap: Option<Gap>,
    #[serde(default = "default_true")]
    pub free_east: bool,
}

fn default_true() -> bool {
    true
}

impl RegionSpec {
    /// `D_{n,x,y}` with every bump kept and no gap.
    pub fn full(n: i64, x: i64, y: i64) -> Self {
        RegionSpec { n, x, y, kept_bumps: (1..=n).collect(), gap: None, free_east: true }
    }

    pub fn dented(n: i64, x: i64, y: i64, kept: &[i64]) -> Self {
        RegionSpec { kept_bumps: kept.to_vec(), ..Self::full(n, x, y) }
    }

    pub fn with_gap(mut self, alpha: i64, beta: i64) -> Self {
        self.gap = Some(Gap { alpha, beta });
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 0 || self.x < 0 {
            return Err(Error::Validation(format!("n and x must be non-negative (n={}, x={})", self.n, self.x)));
        }
        if self.y < -1 {
            return Err(Error::Validation(format!("y must be at least -1 (y={})", self.y)));
        }
        validate_labels(&self.kept_bumps, self.n, "kept bump")?;
        if let Some(g) = self.gap {
            if g.alpha < 1 || g.beta < 1 {
                return Err(Error::Validation(format!("gap coordinates must be positive ({}, {})", g.alpha, g.beta)));
            }
        }
        Ok(())
    }

    /// Bump labels (right to left, starting at 1) that are dented.
    pub fn dents(&self) -> Vec<i64> {
        (1..=self.n).filter(|i| !self.kept_bumps.contains(i)).collect()
    }

    /// Number of columns between the western side and the free side.
    pub fn width(&self) -> i64 {
        2 * self.n + self.y + 1
    }
}

pub(crate) fn validate_labels(labels: &[i64], n: i64, what: &str) -> Result<()> {
    if let Some(&bad) = labels.iter().find(|&&i| i < 1 || i > n) {
        return Err(Error::Validation(format!("{what} label {bad} outside [1, {n}]")));
    }
    if labels.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation(format!("{what} labels must be strictly increasing: {labels:?}")));
    }
    Ok(())
}

/// The triangle removed to dent bump `label` of `D_{n,x,y}`: the
/// left-pointing triangle standing on the down-step of that bump.
pub fn dent_cell(y: i64, label: i64) -> Cell {
    Cell::new(-(y + 2 * label) as i32, -y as i32)
}

/// The four triangles of the side-2 left-pointing gap whose top side has its
/// midpoint at horizontal distance `alpha * sqrt(3)` from the free side and
/// height `beta` above the corner.
pub fn gap_cells(alpha: i64, beta: i64) -> [Cell; 4] {
    let apex_col = (-2 * alpha - 1) as i32;
    let b = (2 * beta) as i32;
    [
        Cell::new(apex_col, b - 1),
        Cell::new(apex_col + 1, b - 2),
        Cell::new(apex_col + 1, b - 1),
        Cell::new(apex_col + 1, b),
    ]
}

/// Materializes `D_{n,x,y}^{kept}(alpha, beta)`.
pub fn build_region(spec: &RegionSpec) -> Result<RegionLattice> {
    spec.validate()?;
    let (n, x, y) = (spec.n as i32, spec.x as i32, spec.y as i32);
    let width = 2 * n + y + 1;
    let valley = -(y + 1);
    let bottom = |k: i32| {
        if k >= valley {
            k
        } else if (k - valley).rem_euclid(2) == 0 {
            valley
        } else {
            valley + 1
        }
    };
    let top = |k: i32| 2 * (x + n) + k;
    let mut cells: BTreeSet<Cell> = column_cells(-width, -1, bottom, top).into_iter().collect();

    for label in spec.dents() {
        let c = dent_cell(spec.y, label);
        if !cells.remove(&c) {
            return Err(Error::Placement(format!("dent at bump {label} does not lie in the region")));
        }
    }
    if let Some(g) = spec.gap {
        for c in gap_cells(g.alpha, g.beta) {
            if !cells.remove(&c) {
                return Err(Error::Placement(format!(
                    "gap at ({}, {}) does not fit inside D_{{{},{},{}}} with the given dents",
                    g.alpha, g.beta, spec.n, spec.x, spec.y
                )));
            }
        }
    }
    let free: Vec<(Cell, Side)> = if spec.free_east {
        cells
            .iter()
            .filter(|c| c.col == -1 && c.orientation() == Orientation::Left)
            .map(|&c| (c, Side::Vertical))
            .collect()
    } else {
        Vec::new()
    };
    RegionLattice::new(cells, free)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// `H_{2n,2n,2x}(slots)` (even) or `H_{2n+1,2n+1,2x}(slots)` (odd).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HexagonSpec {
    pub parity: Parity,
    pub n: i64,
    pub x: i64,
    pub slots: Vec<i64>,
}

impl HexagonSpec {
    pub fn new(parity: Parity, n: i64, x: i64, slots: &[i64]) -> Self {
        HexagonSpec { parity, n, x, slots: slots.to_vec() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 0 || self.x < 0 {
            return Err(Error::Validation(format!("n and x must be non-negative (n={}, x={})", self.n, self.x)));
        }
        validate_labels(&self.slots, self.n, "slot")
    }

    /// Length of the four slanted sides.
    pub fn side(&self) -> i64 {
        match self.parity {
            Parity::Even => 2 * self.n,
            Parity::Odd => 2 * self.n + 1,
        }
    }

    /// Row of the horizontal symmetry axis.
    pub fn axis_row(&self) -> i32 {
        match self.parity {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    /// Total number of unit triangles once the holes are cut out.
    pub fn cell_count(&self) -> i64 {
        let a = self.side();
        let c = 2 * self.x;
        2 * (a * a + 2 * a * c) - 8 * self.slots.len() as i64
    }
}

/// The four triangles of the hole in slot `k`, left of the vertical axis.
pub fn slot_cells(parity: Parity, axis_row: i32, k: i64) -> [Cell; 4] {
    let line = match parity {
        Parity::Even => -(2 * k - 1),
        Parity::Odd => -2 * k,
    } as i32;
    [
        Cell::new(line - 1, axis_row),
        Cell::new(line, axis_row),
        Cell::new(line, axis_row - 1),
        Cell::new(line, axis_row + 1),
    ]
}

/// Materializes the hexagon with mirrored holes; the vertical axis is line 0.
pub fn build_hexagon(spec: &HexagonSpec) -> Result<RegionLattice> {
    spec.validate()?;
    let side = spec.side() as i32;
    let axis = spec.axis_row();
    let x2 = 2 * spec.x as i32;
    let top = |k: i32| axis + x2 + (side - k.abs());
    let bottom = |k: i32| axis - x2 - (side - k.abs());
    let mut cells: BTreeSet<Cell> = column_cells(-side, side - 1, bottom, top).into_iter().collect();
    for &k in &spec.slots {
        for c in slot_cells(spec.parity, axis, k) {
            let mirror = Cell::new(-1 - c.col, c.row);
            if !cells.remove(&c) || !cells.remove(&mirror) {
                return Err(Error::Validation(format!("slot {k} overlaps another hole or leaves the hexagon")));
            }
        }
    }
    RegionLattice::new(cells, std::iter::empty())
}

/// Length `t` of the initial run `1, 2, ..., t` of the slot labels.
pub fn leading_run(slots: &[i64]) -> i64 {
    slots.iter().zip(1..).take_while(|(&k, i)| k == *i).count() as i64
}

/// The free-boundary region whose tilings are in bijection with the tilings of
/// the hexagon that are symmetric in both axes: the upper-left quarter, with
/// the slots turned into dents along its zig-zag.
///
/// When slots `1..=t` are all filled, the first `t` dents sit next to the
/// free side and merge into a longer south-eastern side; they are absorbed
/// into `y`, leaving `n - t` bumps relabelled by `-t`.
pub fn quarter_reduction(spec: &HexagonSpec) -> Result<RegionSpec> {
    spec.validate()?;
    let t = leading_run(&spec.slots);
    let y = match spec.parity {
        Parity::Even => 2 * t - 1,
        Parity::Odd => 2 * t,
    };
    let kept: Vec<i64> = (t + 1..=spec.n).filter(|i| !spec.slots.contains(i)).map(|i| i - t).collect();
    Ok(RegionSpec::dented(spec.n - t, spec.x, y, &kept))
}
