//! Odd-sided grid graphs and the parity obstruction that blocks partitions
//! there.
//!
//! The grid `P_l^n` has vertex set `{0,...,l-1}^n` with edges between points
//! at L1 distance 1. For odd `l` the even-parity class outnumbers the odd
//! class by exactly one, so the even count is never divisible by `l`. A
//! connected pattern with `l` even and `l^2 - l` odd vertices therefore can
//! never tile any `P_l^n`: every induced copy contributes a multiple of `l`
//! to the even side. This module builds such patterns and exposes the
//! counting tools used to check the obstruction.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso;

/// Sides are odd and single-digit so points print as digit strings.
pub const MIN_SIDE: usize = 3;
pub const MAX_SIDE: usize = 9;

/// Cap on materialized grid vertices (snake paths, host graphs).
pub const MAX_GRID_VERTICES: u64 = 1_000_000;

/// Default cap on enumerated induced maps before giving up.
pub const DEFAULT_MAP_CAP: usize = 1_000_000;

pub fn validate_side(side: usize) -> Result<()> {
    if side < MIN_SIDE || side > MAX_SIDE || side % 2 == 0 {
        return Err(Error::BadGridSide(side));
    }
    Ok(())
}

/// A vertex of `{0,...,side-1}^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GridPoint {
    side: u8,
    digits: Vec<u8>,
}

impl GridPoint {
    pub fn new(side: usize, digits: Vec<u8>) -> Result<Self> {
        validate_side(side)?;
        if digits.is_empty() || digits.iter().any(|&d| d as usize >= side) {
            let shown: String = digits.iter().map(|d| d.to_string()).collect();
            return Err(Error::BadGridPointString(shown, side as u8));
        }
        Ok(GridPoint {
            side: side as u8,
            digits,
        })
    }

    pub fn parse(s: &str, side: usize) -> Result<Self> {
        validate_side(side)?;
        let mut digits = Vec::with_capacity(s.len());
        for c in s.chars() {
            match c.to_digit(10) {
                Some(d) if (d as usize) < side => digits.push(d as u8),
                _ => return Err(Error::BadGridPointString(s.to_string(), side as u8)),
            }
        }
        GridPoint::new(side, digits)
    }

    pub fn side(&self) -> usize {
        self.side as usize
    }

    pub fn dimension(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn is_even(&self) -> bool {
        self.digits.iter().map(|&d| d as u32).sum::<u32>() % 2 == 0
    }

    /// L1 (taxicab) distance.
    pub fn l1_distance(&self, other: &GridPoint) -> Result<usize> {
        if self.dimension() != other.dimension() || self.side != other.side {
            return Err(Error::DimensionMismatch {
                left: self.dimension(),
                right: other.dimension(),
            });
        }
        Ok(self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| (a as i32 - b as i32).unsigned_abs() as usize)
            .sum())
    }

    pub fn is_adjacent(&self, other: &GridPoint) -> Result<bool> {
        Ok(self.l1_distance(other)? == 1)
    }

    /// Grid neighbours in canonical order.
    pub fn neighbours(&self) -> Vec<GridPoint> {
        let mut out = Vec::with_capacity(2 * self.dimension());
        for i in 0..self.digits.len() {
            for delta in [-1i32, 1] {
                let v = self.digits[i] as i32 + delta;
                if v >= 0 && v < self.side as i32 {
                    let mut digits = self.digits.clone();
                    digits[i] = v as u8;
                    out.push(GridPoint {
                        side: self.side,
                        digits,
                    });
                }
            }
        }
        out.sort();
        out
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridPoint({self})")
    }
}

impl Serialize for GridPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// A deduplicated set of grid points sharing one side and dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridSet {
    side: u8,
    dim: usize,
    points: Vec<GridPoint>,
}

impl GridSet {
    pub fn new(side: usize, dim: usize, points: impl IntoIterator<Item = GridPoint>) -> Result<Self> {
        validate_side(side)?;
        let mut points: Vec<GridPoint> = points.into_iter().collect();
        for p in &points {
            if p.side() != side || p.dimension() != dim {
                return Err(Error::DimensionMismatch {
                    left: p.dimension(),
                    right: dim,
                });
            }
        }
        points.sort();
        points.dedup();
        Ok(GridSet {
            side: side as u8,
            dim,
            points,
        })
    }

    pub fn side(&self) -> usize {
        self.side as usize
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    pub fn contains(&self, p: &GridPoint) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.points.iter().map(|p| p.to_string()).collect()
    }

    /// `(even, odd)` vertex counts by digit-sum parity.
    pub fn parity_profile(&self) -> (usize, usize) {
        let even = self.points.iter().filter(|p| p.is_even()).count();
        (even, self.points.len() - even)
    }

    /// Connectivity of the induced subgraph, by breadth-first search.
    pub fn is_connected(&self) -> bool {
        if self.points.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.points.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(i) = queue.pop_front() {
            for n in self.points[i].neighbours() {
                if let Ok(j) = self.points.binary_search(&n) {
                    if !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        queue.push_back(j);
                    }
                }
            }
        }
        reached == self.points.len()
    }
}

impl Serialize for GridSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.points.len()))?;
        for p in &self.points {
            seq.serialize_element(&p.to_string())?;
        }
        seq.end()
    }
}

fn checked_power(side: usize, dim: usize) -> Result<u64> {
    let mut total: u64 = 1;
    for _ in 0..dim {
        total = total
            .checked_mul(side as u64)
            .filter(|&t| t <= MAX_GRID_VERTICES.max(u64::MAX / 2))
            .ok_or(Error::DimensionOutOfRange {
                dim,
                min: 1,
                max: 20,
            })?;
    }
    Ok(total)
}

/// `(even, odd)` counts over all of `{0,...,side-1}^n`. For odd sides the
/// total is odd and the classes differ by exactly one, even on top:
/// `(side^n + 1) / 2` versus `(side^n - 1) / 2`.
pub fn parity_counts(side: usize, dim: usize) -> Result<(u64, u64)> {
    validate_side(side)?;
    if dim == 0 || dim > 20 {
        return Err(Error::DimensionOutOfRange {
            dim,
            min: 1,
            max: 20,
        });
    }
    let total = checked_power(side, dim)?;
    Ok((total / 2 + 1, total / 2))
}

/// All vertices of `{0,...,side-1}^n` in canonical order.
pub fn all_grid_points(side: usize, dim: usize) -> Result<Vec<GridPoint>> {
    validate_side(side)?;
    let total = checked_power(side, dim)?;
    if total > MAX_GRID_VERTICES {
        return Err(Error::DimensionOutOfRange {
            dim,
            min: 1,
            max: 20,
        });
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut digits = vec![0u8; dim];
    loop {
        out.push(GridPoint {
            side: side as u8,
            digits: digits.clone(),
        });
        let mut i = dim;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if (digits[i] as usize) + 1 < side {
                digits[i] += 1;
                digits[i + 1..].fill(0);
                break;
            }
        }
    }
}

/// The boustrophedon Hamiltonian path on `{0,...,side-1}^n`: coordinate 1
/// moves slowest, each deeper block is traversed forward or backward in
/// alternation. Consecutive vertices are grid-adjacent, so parities
/// alternate along the path.
pub fn snake_path(side: usize, dim: usize) -> Result<Vec<GridPoint>> {
    validate_side(side)?;
    if dim == 0 {
        return Err(Error::DimensionOutOfRange {
            dim: 0,
            min: 1,
            max: 20,
        });
    }
    let total = checked_power(side, dim)?;
    if total > MAX_GRID_VERTICES {
        return Err(Error::DimensionOutOfRange {
            dim,
            min: 1,
            max: 20,
        });
    }
    let mut path: Vec<Vec<u8>> = (0..side as u8).map(|d| vec![d]).collect();
    for _ in 1..dim {
        let mut next = Vec::with_capacity(path.len() * side);
        for d in 0..side as u8 {
            let forward = d % 2 == 0;
            let block: Box<dyn Iterator<Item = &Vec<u8>>> = if forward {
                Box::new(path.iter())
            } else {
                Box::new(path.iter().rev())
            };
            for tail in block {
                let mut digits = Vec::with_capacity(tail.len() + 1);
                digits.push(d);
                digits.extend_from_slice(tail);
                next.push(digits);
            }
        }
        path = next;
    }
    Ok(path
        .into_iter()
        .map(|digits| GridPoint {
            side: side as u8,
            digits,
        })
        .collect())
}

/// The induced graph on a whole grid, vertices indexed canonically.
fn grid_graph(side: usize, dim: usize) -> Result<(Vec<GridPoint>, iso::Graph)> {
    let vertices = all_grid_points(side, dim)?;
    let mut g = iso::Graph::new(vertices.len());
    for (i, p) in vertices.iter().enumerate() {
        // A +1 step in one digit moves exactly side^(dim-1-coord) forward in
        // canonical order, but recomputing by search keeps this simple.
        for n in p.neighbours() {
            let j = vertices.binary_search(&n).unwrap();
            if i < j {
                g.add_edge(i, j);
            }
        }
    }
    Ok((vertices, g))
}

fn induced_set_graph(set: &GridSet) -> iso::Graph {
    let mut g = iso::Graph::new(set.len());
    for (i, p) in set.points().iter().enumerate() {
        for (j, q) in set.points().iter().enumerate().skip(i + 1) {
            if p.l1_distance(q).unwrap() == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// All vertex sets of `P_side^dim` inducing a subgraph isomorphic to the one
/// induced by `pattern` in its own grid. `map_cap` bounds the raw embedding
/// count before deduplication.
pub fn find_induced_copies(
    pattern: &GridSet,
    dim: usize,
    map_cap: usize,
) -> Result<Vec<GridSet>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let side = pattern.side();
    let (vertices, host) = grid_graph(side, dim)?;
    if pattern.len() > vertices.len() {
        return Ok(Vec::new());
    }
    let maps = iso::induced_maps(&induced_set_graph(pattern), &host, map_cap)?;
    let mut images: BTreeSet<Vec<usize>> = BTreeSet::new();
    for m in maps {
        let mut image = m;
        image.sort_unstable();
        images.insert(image);
    }
    images
        .into_iter()
        .map(|idxs| GridSet::new(side, dim, idxs.into_iter().map(|i| vertices[i].clone())))
        .collect()
}

/// Checks whether `candidate` induces the same graph as `pattern` does.
pub fn is_induced_copy(pattern: &GridSet, candidate: &GridSet) -> Result<bool> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if pattern.len() != candidate.len() {
        return Ok(false);
    }
    Ok(iso::induced_embedding_exists(
        &induced_set_graph(pattern),
        &induced_set_graph(candidate),
    ))
}

/// Searches dimensions `1..=max_dim` for the canonical obstruction pattern:
/// a connected set with exactly `side` even and `side^2 - side` odd
/// vertices. Returns the first hit.
///
/// A `None` for a given dimension is definitive whenever the parity counts
/// alone rule it out (too few odd vertices in the whole grid); otherwise it
/// only means the canonical construction does not fit, since no exhaustive
/// search is attempted.
pub fn find_counterexample(side: usize, max_dim: usize) -> Result<Option<GridSet>> {
    validate_side(side)?;
    let need_even = side;
    let need_odd = side * side - side;
    for dim in 1..=max_dim {
        let (even, odd) = parity_counts(side, dim)?;
        if (even as usize) < need_even || (odd as usize) < need_odd {
            continue;
        }
        if let Some(set) = construct_counterexample(side, dim)? {
            debug_assert_eq!(set.parity_profile(), (need_even, need_odd));
            debug_assert!(set.is_connected());
            return Ok(Some(set));
        }
    }
    Ok(None)
}

// Takes the first 2*side - 1 vertices of the snake path (side even vertices
// linked by side - 1 odd ones), then pads with odd leaves adjacent to the
// even vertices until the odd count reaches side^2 - side.
fn construct_counterexample(side: usize, dim: usize) -> Result<Option<GridSet>> {
    let prefix_len = 2 * side - 1;
    let total = checked_power(side, dim)?;
    if (total as usize) < prefix_len {
        return Ok(None);
    }
    let path = snake_path(side, dim)?;
    let base: Vec<GridPoint> = path[..prefix_len].to_vec();
    let evens: Vec<GridPoint> = base.iter().filter(|p| p.is_even()).cloned().collect();
    debug_assert_eq!(evens.len(), side);
    let in_base: BTreeSet<&GridPoint> = base.iter().collect();
    let mut candidates: BTreeSet<GridPoint> = BTreeSet::new();
    for e in &evens {
        for n in e.neighbours() {
            if !in_base.contains(&n) {
                candidates.insert(n);
            }
        }
    }
    let quota = (side * side - side) - (side - 1);
    if candidates.len() < quota {
        return Ok(None);
    }
    let mut points = base;
    points.extend(candidates.into_iter().take(quota));
    Ok(Some(GridSet::new(side, dim, points)?))
}

/// The counting facts behind the impossibility argument for one dimension:
/// every induced copy of the obstruction pattern covers a multiple of `side`
/// even vertices, but the grid's even class is never such a multiple.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub side: usize,
    pub dim: usize,
    pub total_vertices: u64,
    pub even_vertices: u64,
    pub even_vertices_mod_side: u64,
    pub copy_even_counts: [usize; 2],
    pub partition_impossible: bool,
}

pub fn obstruction_report(side: usize, dim: usize) -> Result<ObstructionReport> {
    let (even, odd) = parity_counts(side, dim)?;
    let even_mod = even % side as u64;
    Ok(ObstructionReport {
        side,
        dim,
        total_vertices: even + odd,
        even_vertices: even,
        even_vertices_mod_side: even_mod,
        copy_even_counts: [side, side * side - side],
        partition_impossible: even_mod != 0,
    })
}
