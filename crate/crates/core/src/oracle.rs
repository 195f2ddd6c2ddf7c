//! Brute-force ground truth for tiling counts.
//!
//! Counting sweeps the region column by column, west to east. The profile
//! carried between columns is the set of triangles of the next column that
//! are already covered by a horizontal lozenge reaching across the shared
//! vertical line. Inside a column the triangles form vertical chains and are
//! resolved by a small recursion. A triangle with a free side may instead be
//! covered by half a lozenge protruding through that side.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::regions::{Cell, Orientation, RegionLattice, Side};
use crate::{Error, ExactInt, Result};

pub const MAX_CELLS_ENV: &str = "GAPCORNER_ORACLE_MAX_CELLS";

/// Explicit resource guards. Exceeding one is an error, never a truncation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimits {
    pub max_cells: usize,
    pub max_profile: usize,
    pub max_tilings: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits { max_cells: 20_000, max_profile: 64, max_tilings: 2_000_000 }
    }
}

impl OracleLimits {
    /// Defaults, with `max_cells` overridable through the environment.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(v) = std::env::var(MAX_CELLS_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            limits.max_cells = v;
        }
        limits
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tiling {
    /// Pairs of adjacent triangles, each pair ordered and the list sorted.
    pub lozenges: Vec<(Cell, Cell)>,
    /// Triangles covered by a lozenge sticking out through the given side.
    pub protrusions: Vec<(Cell, Side)>,
}

impl Tiling {
    fn normalized(mut self) -> Self {
        for l in &mut self.lozenges {
            if l.1 < l.0 {
                *l = (l.1, l.0);
            }
        }
        self.lozenges.sort();
        self.protrusions.sort();
        self
    }

    pub fn map(&self, cell: impl Fn(Cell) -> Cell, side: impl Fn(Side) -> Side) -> Tiling {
        Tiling {
            lozenges: self.lozenges.iter().map(|&(a, b)| (cell(a), cell(b))).collect(),
            protrusions: self.protrusions.iter().map(|&(c, s)| (cell(c), side(s))).collect(),
        }
        .normalized()
    }
}

/// Column-by-column view of a region.
struct Columns<'a> {
    region: &'a RegionLattice,
    /// cell indices of each column, sorted by row
    cols: Vec<Vec<usize>>,
    /// (column, position within column) of each cell
    slot: Vec<(usize, usize)>,
}

impl<'a> Columns<'a> {
    fn new(region: &'a RegionLattice, limits: &OracleLimits) -> Result<Self> {
        if region.len() > limits.max_cells {
            return Err(Error::ResourceGuard(format!(
                "region has {} triangles, guard is {}",
                region.len(),
                limits.max_cells
            )));
        }
        let mut by_col: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
        for (i, c) in region.cells().iter().enumerate() {
            by_col.entry(c.col).or_default().push(i);
        }
        let (first, last) = match (by_col.keys().next(), by_col.keys().next_back()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return Ok(Columns { region, cols: Vec::new(), slot: Vec::new() }),
        };
        let mut cols = Vec::new();
        let mut slot = vec![(0, 0); region.len()];
        for col in first..=last {
            let mut members = by_col.remove(&col).unwrap_or_default();
            members.sort_by_key(|&i| region.cells()[i].row);
            if members.len() > limits.max_profile {
                return Err(Error::ResourceGuard(format!(
                    "column {col} has {} triangles, profile guard is {}",
                    members.len(),
                    limits.max_profile
                )));
            }
            for (p, &i) in members.iter().enumerate() {
                slot[i] = (cols.len(), p);
            }
            cols.push(members);
        }
        Ok(Columns { region, cols, slot })
    }

    /// Position in the following column of the horizontal partner of a
    /// left-pointing triangle, if that partner is in the region.
    fn east_partner(&self, cell: usize) -> Option<usize> {
        let c = self.region.cells()[cell];
        if c.orientation() != Orientation::Left {
            return None;
        }
        self.region.neighbor(cell, Side::Vertical).map(|j| self.slot[j].1)
    }

    fn upper_partner(&self, cell: usize) -> Option<usize> {
        self.region.neighbor(cell, Side::Upper)
    }
}

/// Exact number of tilings, protrusions through free sides included.
pub fn count_tilings(region: &RegionLattice) -> Result<ExactInt> {
    count_tilings_with(region, &OracleLimits::from_env())
}

pub fn count_tilings_with(region: &RegionLattice, limits: &OracleLimits) -> Result<ExactInt> {
    let columns = Columns::new(region, limits)?;
    let mut profiles: HashMap<u64, BigInt> = HashMap::from([(0, BigInt::one())]);
    for members in &columns.cols {
        let mut next: HashMap<u64, BigInt> = HashMap::new();
        for (mask, ways) in &profiles {
            let mut out: HashMap<u64, u64> = HashMap::new();
            fill_column(&columns, members, *mask, 0, false, 0, 1, &mut out);
            for (m, mult) in out {
                *next.entry(m).or_insert_with(BigInt::zero) += ways * BigInt::from(mult);
            }
        }
        profiles = next;
        if profiles.is_empty() {
            return Ok(BigInt::zero());
        }
    }
    Ok(profiles.remove(&0).unwrap_or_else(BigInt::zero))
}

/// Resolves one column. `covered` marks positions already taken from the
/// west, `pending` says the previous position waits for a vertical partner.
#[allow(clippy::too_many_arguments)]
fn fill_column(
    columns: &Columns,
    members: &[usize],
    covered: u64,
    pos: usize,
    pending: bool,
    east: u64,
    mult: u64,
    out: &mut HashMap<u64, u64>,
) {
    if pos == members.len() {
        if !pending {
            *out.entry(east).or_insert(0) += mult;
        }
        return;
    }
    let cell = members[pos];
    let taken = covered >> pos & 1 == 1;
    if pending {
        // the previous triangle needs this one as its upper partner
        if !taken {
            fill_column(columns, members, covered, pos + 1, false, east, mult, out);
        }
        return;
    }
    if taken {
        fill_column(columns, members, covered, pos + 1, false, east, mult, out);
        return;
    }
    if columns.upper_partner(cell).is_some() && pos + 1 < members.len() {
        fill_column(columns, members, covered, pos + 1, true, east, mult, out);
    }
    if let Some(p) = columns.east_partner(cell) {
        fill_column(columns, members, covered, pos + 1, false, east | 1 << p, mult, out);
    }
    let free = columns.region.free_sides(cell).count() as u64;
    if free > 0 {
        fill_column(columns, members, covered, pos + 1, false, east, mult * free, out);
    }
}

/// Every tiling, in a deterministic order.
pub fn enumerate_tilings(region: &RegionLattice, cap: usize) -> Result<Vec<Tiling>> {
    let limits = OracleLimits { max_tilings: cap, ..OracleLimits::from_env() };
    if region.len() > limits.max_cells {
        return Err(Error::ResourceGuard(format!(
            "region has {} triangles, guard is {}",
            region.len(),
            limits.max_cells
        )));
    }
    // sweep order: column, then row
    let mut order: Vec<usize> = (0..region.len()).collect();
    order.sort_by_key(|&i| region.cells()[i]);
    let mut state = Enumeration {
        region,
        order,
        covered: vec![false; region.len()],
        lozenges: Vec::new(),
        protrusions: Vec::new(),
        out: Vec::new(),
        cap,
    };
    state.run(0)?;
    Ok(state.out)
}

struct Enumeration<'a> {
    region: &'a RegionLattice,
    order: Vec<usize>,
    covered: Vec<bool>,
    lozenges: Vec<(Cell, Cell)>,
    protrusions: Vec<(Cell, Side)>,
    out: Vec<Tiling>,
    cap: usize,
}

impl Enumeration<'_> {
    fn run(&mut self, from: usize) -> Result<()> {
        let Some(k) = (from..self.order.len()).find(|&k| !self.covered[self.order[k]]) else {
            if self.out.len() >= self.cap {
                return Err(Error::ResourceGuard(format!("more than {} tilings", self.cap)));
            }
            let t = Tiling { lozenges: self.lozenges.clone(), protrusions: self.protrusions.clone() };
            self.out.push(t.normalized());
            return Ok(());
        };
        let i = self.order[k];
        let cells = self.region.cells();
        self.covered[i] = true;
        for j in self.region.neighbors(i).collect::<Vec<_>>() {
            if !self.covered[j] {
                self.covered[j] = true;
                self.lozenges.push((cells[i], cells[j]));
                self.run(k + 1)?;
                self.lozenges.pop();
                self.covered[j] = false;
            }
        }
        for side in self.region.free_sides(i).collect::<Vec<_>>() {
            self.protrusions.push((cells[i], side));
            self.run(k + 1)?;
            self.protrusions.pop();
        }
        self.covered[i] = false;
        Ok(())
    }
}

/// Number of tilings fixed by the requested reflections about the axes of the
/// region's bounding box.
pub fn count_symmetric_tilings(region: &RegionLattice, horizontal: bool, vertical: bool) -> Result<ExactInt> {
    count_symmetric_tilings_capped(region, horizontal, vertical, OracleLimits::from_env().max_tilings)
}

pub fn count_symmetric_tilings_capped(
    region: &RegionLattice,
    horizontal: bool,
    vertical: bool,
    cap: usize,
) -> Result<ExactInt> {
    if (!horizontal && !vertical) || region.is_empty() {
        return count_tilings(region);
    }
    let (axis_row, axis_line) = region
        .bounding_axes()
        .ok_or_else(|| Error::Validation("region has no lattice symmetry axes".into()))?;
    if horizontal && region.reflect_horizontal(axis_row)? != *region {
        return Err(Error::Validation("region is not symmetric about its horizontal axis".into()));
    }
    if vertical && region.reflect_vertical(axis_line)? != *region {
        return Err(Error::Validation("region is not symmetric about its vertical axis".into()));
    }
    let flip_h = |c: Cell| Cell::new(c.col, 2 * axis_row - c.row);
    let side_h = |s: Side| match s {
        Side::Upper => Side::Lower,
        Side::Lower => Side::Upper,
        Side::Vertical => Side::Vertical,
    };
    let flip_v = |c: Cell| Cell::new(2 * axis_line - 1 - c.col, c.row);
    let tilings = enumerate_tilings(region, cap)?;
    let fixed = tilings
        .iter()
        .filter(|t| !horizontal || t.map(flip_h, side_h) == **t)
        .filter(|t| !vertical || t.map(flip_v, |s| s) == **t)
        .count();
    Ok(BigInt::from(fixed))
}
