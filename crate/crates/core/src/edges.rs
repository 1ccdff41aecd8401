//! Partitioning the edge set of the cube into paths.
//!
//! Every vertex of even parity starts one antipodal path: flip coordinate 1,
//! then coordinate 2, and so on through coordinate `n`, ending at the
//! complementary vertex. The `2^(n-1)` paths so produced use every edge of
//! the cube exactly once. Cutting each into segments of `k` edges (possible
//! whenever `k` divides `n`) partitions the edges into paths of `k` edges
//! apiece. For odd `n` a sharper criterion is known: such a partition exists
//! precisely when `k <= n` and `k` divides `n * 2^(n-1)`. Even `n` is out of
//! scope here.

use std::collections::BTreeSet;

use crate::cube::{all_points, hamming_distance, parity, Parity, Point};
use crate::error::{Error, Result};

/// Largest cube dimension for which paths are materialized.
pub const MAX_PATH_DIM: usize = 20;

/// A walk in the cube whose consecutive vertices are adjacent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CubePath {
    vertices: Vec<Point>,
}

impl CubePath {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptyPattern);
        }
        for (i, pair) in vertices.windows(2).enumerate() {
            if hamming_distance(&pair[0], &pair[1])? != 1 {
                return Err(Error::NotAdjacent(i, i + 1));
            }
        }
        Ok(CubePath { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Number of edges, one less than the number of vertices.
    pub fn edge_len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().unwrap()
    }

    /// Edges in path order, endpoints normalized to (smaller, larger).
    pub fn edges(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.vertices.windows(2).map(|pair| {
            if pair[0] <= pair[1] {
                (pair[0].clone(), pair[1].clone())
            } else {
                (pair[1].clone(), pair[0].clone())
            }
        })
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.vertices.iter().map(|p| p.to_string()).collect()
    }

    /// Cuts the path into consecutive pieces of `segment` edges each.
    pub fn split_into_segments(&self, segment: usize) -> Result<Vec<CubePath>> {
        if segment == 0 || self.edge_len() % segment != 0 {
            return Err(Error::SegmentDoesNotDivide {
                segment,
                path: self.edge_len(),
            });
        }
        Ok(self
            .vertices
            .windows(segment + 1)
            .step_by(segment)
            .map(|w| CubePath {
                vertices: w.to_vec(),
            })
            .collect())
    }
}

/// Number of edges of the `n`-cube: `n * 2^(n-1)`.
pub fn cube_edge_count(n: usize) -> Result<u64> {
    if n == 0 || n > 63 {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: 63,
        });
    }
    Ok((n as u64) << (n - 1))
}

/// The antipodal path family: one path per even-parity vertex, flipping
/// coordinates in increasing order, in vertex order of the starts.
pub fn antipodal_paths(n: usize) -> Result<Vec<CubePath>> {
    if n == 0 || n > MAX_PATH_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: MAX_PATH_DIM,
        });
    }
    let mut paths = Vec::with_capacity(1 << (n - 1));
    for start in all_points(n) {
        if parity(&start) != Parity::Even {
            continue;
        }
        let mut vertices = Vec::with_capacity(n + 1);
        let mut current = start;
        vertices.push(current.clone());
        for i in 1..=n {
            current = current.flip_coordinate(i)?;
            vertices.push(current.clone());
        }
        paths.push(CubePath { vertices });
    }
    Ok(paths)
}

/// Checks that `paths` together use every edge of the `n`-cube exactly once.
pub fn is_edge_decomposition(n: usize, paths: &[CubePath]) -> Result<bool> {
    let expected = cube_edge_count(n)?;
    let mut seen: BTreeSet<(Point, Point)> = BTreeSet::new();
    let mut used: u64 = 0;
    for path in paths {
        for (a, b) in path.edges() {
            if a.dimension() != n {
                return Err(Error::DimensionMismatch {
                    left: a.dimension(),
                    right: n,
                });
            }
            if !seen.insert((a, b)) {
                return Ok(false);
            }
            used += 1;
        }
    }
    Ok(used == expected)
}

/// Partitions the edges of the `n`-cube into paths of `segment` edges by
/// cutting every antipodal path; requires `segment` to divide `n`.
pub fn segment_decomposition(n: usize, segment: usize) -> Result<Vec<CubePath>> {
    let paths = antipodal_paths(n)?;
    if segment == 0 || n % segment != 0 {
        return Err(Error::SegmentDoesNotDivide { segment, path: n });
    }
    let mut out = Vec::with_capacity(paths.len() * (n / segment));
    for p in &paths {
        out.extend(p.split_into_segments(segment)?);
    }
    Ok(out)
}

/// For odd `n`, whether the edges of the `n`-cube split into paths of `k`
/// edges: true exactly when `k <= n` and `k` divides `n * 2^(n-1)`. Returns
/// `None` for even `n`, which this criterion does not cover.
pub fn path_decomposition_feasible(n: usize, k: usize) -> Result<Option<bool>> {
    if k == 0 {
        return Err(Error::SegmentDoesNotDivide {
            segment: 0,
            path: n,
        });
    }
    let edges = cube_edge_count(n)?;
    if n % 2 == 0 {
        return Ok(None);
    }
    Ok(Some(k <= n && edges % (k as u64) == 0))
}
