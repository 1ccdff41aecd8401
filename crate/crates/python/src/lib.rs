//! Python bindings: the main operations of the cubecover library with
//! plain-data signatures. Points are binary strings, point sets are lists
//! of binary strings, certificates are JSON strings in the library's
//! self-describing container format.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use cubecover::certificate::Certificate;
use cubecover::covers::build_translation_rpart as rpart_family;
use cubecover::cube::{self, Point, PointSet};
use cubecover::edges;
use cubecover::grid;
use cubecover::isometry;
use cubecover::modpart;
use cubecover::solver::{self, CopyMode, PartitionOutcome};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_set(words: Vec<String>) -> PyResult<PointSet> {
    PointSet::parse(&words).map_err(value_err)
}

fn parse_point(word: &str) -> PyResult<Point> {
    word.parse().map_err(value_err)
}

fn sets_to_strings(sets: Vec<PointSet>) -> Vec<Vec<String>> {
    sets.into_iter().map(|s| s.to_strings()).collect()
}

/// Number of coordinates in which two binary words differ.
#[pyfunction]
fn hamming_distance(a: &str, b: &str) -> PyResult<usize> {
    cube::hamming_distance(&parse_point(a)?, &parse_point(b)?).map_err(value_err)
}

/// 0 for an even number of ones, 1 for an odd number.
#[pyfunction]
fn parity(a: &str) -> PyResult<u8> {
    Ok(match cube::parity(&parse_point(a)?) {
        cube::Parity::Even => 0,
        cube::Parity::Odd => 1,
    })
}

/// Splits a point set by its last coordinate into (ending in 0, ending in
/// 1), both with that coordinate removed.
#[pyfunction]
fn layer_split(points: Vec<String>) -> PyResult<(Vec<String>, Vec<String>)> {
    let set = parse_set(points)?;
    let (minus, plus) = cube::layer_split(&set).map_err(value_err)?;
    Ok((minus.to_strings(), plus.to_strings()))
}

/// Number of isometric embeddings of the k-cube into the n-cube:
/// 2^n * n! / (n-k)!.
#[pyfunction]
fn count_embeddings(k: usize, n: usize) -> PyResult<u128> {
    isometry::count_embeddings(k, n).map_err(value_err)
}

/// All distinct isometric copies of a pattern in the n-cube.
#[pyfunction]
fn isometric_copies(pattern: Vec<String>, n: usize) -> PyResult<Vec<Vec<String>>> {
    let set = parse_set(pattern)?;
    Ok(sets_to_strings(
        isometry::enumerate_isometric_copies(&set, n).map_err(value_err)?,
    ))
}

/// All vertex sets of the n-cube inducing the same subgraph as the pattern.
#[pyfunction]
#[pyo3(signature = (pattern, n, max_maps = 1 << 22))]
fn induced_copies(pattern: Vec<String>, n: usize, max_maps: usize) -> PyResult<Vec<Vec<String>>> {
    let set = parse_set(pattern)?;
    Ok(sets_to_strings(
        isometry::enumerate_induced_copies(&set, n, max_maps).map_err(value_err)?,
    ))
}

/// Whether candidate is a distance-preserving image of pattern.
#[pyfunction]
fn is_isometric_copy(pattern: Vec<String>, candidate: Vec<String>) -> PyResult<bool> {
    isometry::is_isometric_copy(&parse_set(pattern)?, &parse_set(candidate)?).map_err(value_err)
}

/// Whether candidate induces the same subgraph as pattern (weaker than an
/// isometric copy).
#[pyfunction]
fn is_h_set(pattern: Vec<String>, candidate: Vec<String>) -> PyResult<bool> {
    isometry::is_h_set(&parse_set(pattern)?, &parse_set(candidate)?).map_err(value_err)
}

/// Certificate (JSON) for the translation family: every point of the
/// n-cube is covered exactly len(pattern) times.
#[pyfunction]
#[pyo3(signature = (pattern, n = 0))]
fn build_rpart(pattern: Vec<String>, n: usize) -> PyResult<String> {
    let set = parse_set(pattern)?;
    let n = if n == 0 { set.dimension() } else { n };
    let r = set.len() as u64;
    let wf = rpart_family(&set, n).map_err(value_err)?;
    Ok(Certificate::from_rpart(&wf, r).map_err(value_err)?.to_json())
}

/// Certificate (JSON) for a cover of the (k-1)(d+1)+1 cube in which every
/// multiplicity is congruent to 1 mod r, for r = 2^d.
#[pyfunction]
fn build_modpart(pattern: Vec<String>, r: u64) -> PyResult<String> {
    let set = parse_set(pattern)?;
    let wf = modpart::build_mod_part(&set, r).map_err(value_err)?;
    Ok(Certificate::from_modpart(&wf, r)
        .map_err(value_err)?
        .to_json())
}

/// Target dimension of build_modpart for a k-dimensional pattern.
#[pyfunction]
fn modpart_dimension(k: usize, r: u64) -> PyResult<usize> {
    modpart::mod_part_dimension(k, r).map_err(value_err)
}

/// Re-checks a certificate JSON string. Returns (ok, violations).
#[pyfunction]
fn verify_certificate(text: &str) -> PyResult<(bool, Vec<String>)> {
    let cert = Certificate::from_json(text).map_err(value_err)?;
    let report = cert.verify().map_err(value_err)?;
    Ok((report.ok, report.violations))
}

/// Searches for a partition of the n-cube into copies of the pattern.
/// Returns the blocks, or None when no partition exists. Raises
/// RuntimeError when the node budget runs out first.
#[pyfunction]
#[pyo3(signature = (pattern, n, mode = "isometric", budget = solver::DEFAULT_BUDGET))]
fn solve_partition(
    pattern: Vec<String>,
    n: usize,
    mode: &str,
    budget: u64,
) -> PyResult<Option<Vec<Vec<String>>>> {
    let set = parse_set(pattern)?;
    let mode = match mode {
        "isometric" => CopyMode::Isometric,
        "induced" => CopyMode::Induced,
        other => return Err(value_err(format!("unknown mode {other:?}"))),
    };
    match solver::solve_cube_partition_mode(&set, n, budget, mode).map_err(value_err)? {
        PartitionOutcome::Partition(blocks) => Ok(Some(sets_to_strings(blocks))),
        PartitionOutcome::None => Ok(None),
        PartitionOutcome::BudgetExhausted { nodes } => Err(PyRuntimeError::new_err(format!(
            "node budget exhausted after {nodes} nodes"
        ))),
    }
}

/// (even, odd) vertex counts of the grid {0..side-1}^dim.
#[pyfunction]
fn grid_parity_counts(side: usize, dim: usize) -> PyResult<(u64, u64)> {
    grid::parity_counts(side, dim).map_err(value_err)
}

/// Connected grid set with side even and side^2 - side odd vertices, as
/// digit strings, or None if none is found up to max_dim.
#[pyfunction]
fn grid_counterexample(side: usize, max_dim: usize) -> PyResult<Option<Vec<String>>> {
    Ok(grid::find_counterexample(side, max_dim)
        .map_err(value_err)?
        .map(|s| s.to_strings()))
}

/// The antipodal path family: one path per even-parity vertex, covering
/// every edge of the n-cube exactly once.
#[pyfunction]
fn antipodal_paths(n: usize) -> PyResult<Vec<Vec<String>>> {
    Ok(edges::antipodal_paths(n)
        .map_err(value_err)?
        .iter()
        .map(|p| p.to_strings())
        .collect())
}

/// Antipodal paths cut into segments of k edges (k must divide n).
#[pyfunction]
fn segment_paths(n: usize, k: usize) -> PyResult<Vec<Vec<String>>> {
    Ok(edges::segment_decomposition(n, k)
        .map_err(value_err)?
        .iter()
        .map(|p| p.to_strings())
        .collect())
}

/// For odd n: whether the n-cube's edges split into k-edge paths. None for
/// even n, which the criterion does not cover.
#[pyfunction]
fn edge_feasible(n: usize, k: usize) -> PyResult<Option<bool>> {
    edges::path_decomposition_feasible(n, k).map_err(value_err)
}

#[pymodule]
fn cubecover_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(hamming_distance, m)?)?;
    m.add_function(wrap_pyfunction!(parity, m)?)?;
    m.add_function(wrap_pyfunction!(layer_split, m)?)?;
    m.add_function(wrap_pyfunction!(count_embeddings, m)?)?;
    m.add_function(wrap_pyfunction!(isometric_copies, m)?)?;
    m.add_function(wrap_pyfunction!(induced_copies, m)?)?;
    m.add_function(wrap_pyfunction!(is_isometric_copy, m)?)?;
    m.add_function(wrap_pyfunction!(is_h_set, m)?)?;
    m.add_function(wrap_pyfunction!(build_rpart, m)?)?;
    m.add_function(wrap_pyfunction!(build_modpart, m)?)?;
    m.add_function(wrap_pyfunction!(modpart_dimension, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(solve_partition, m)?)?;
    m.add_function(wrap_pyfunction!(grid_parity_counts, m)?)?;
    m.add_function(wrap_pyfunction!(grid_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(antipodal_paths, m)?)?;
    m.add_function(wrap_pyfunction!(segment_paths, m)?)?;
    m.add_function(wrap_pyfunction!(edge_feasible, m)?)?;
    Ok(())
}
