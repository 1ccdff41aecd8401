//! Inductive construction of weight functions whose every multiplicity is
//! congruent to 1 modulo a power of two.
//!
//! Given a non-empty pattern `X` in `{0,1}^k` and `r = 2^d`, `build_mod_part`
//! produces a weight function on isometric copies of `X` in `{0,1}^n` with
//! `n = (k-1)(d+1) + 1` such that every point of the target cube is covered
//! a number of times congruent to 1 mod `r`. Together with the translation
//! family (an `|X|`-part), this is the pair of certificates that drives the
//! partition result for patterns of power-of-two size.
//!
//! The construction recurses on `k`:
//!
//! * `k = 1`: the pattern is a point or the whole edge, and `{0,1}` splits
//!   into genuine copies, a partition, which is 1 mod anything.
//! * `k >= 2`: split `X` by its last coordinate. After reflecting if needed
//!   so the bottom part is non-empty, recursively build a family for the
//!   bottom part in `{0,1}^m` and lift each embedding by one coordinate.
//!   The lifted family covers the bottom layer of `{0,1}^{m+1}` correctly;
//!   the top layer picks up an uncontrolled residue. Copies of the lifted
//!   family are then stacked along directed distance-2 edges of an auxiliary
//!   cube `{0,1}^{d+1}`: for an edge from `u` to `v` with common neighbour
//!   `z`, one copy puts its controlled layer on `v` and residue on `z`, and
//!   a second copy, scaled by `r - 1`, puts its controlled layer on `u` and
//!   residue on `z`. The residues add up to `r` times something, vanishing
//!   mod `r`, while `v` gains 1 and `u` gains `-1`. Choosing the edge family
//!   so in-degree minus out-degree is 1 mod `r` at every auxiliary vertex
//!   makes every multiplicity congruent to 1.

use crate::covers::{translation_family, WeightFunction};
use crate::cube::{all_points, hamming_distance, layer_split, parity, Parity, Point, PointSet, MAX_DIM};
use crate::error::{Error, Result};
use crate::isometry::Embedding;

/// A directed step between two points at Hamming distance exactly 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedEdge {
    tail: Point,
    head: Point,
}

impl DirectedEdge {
    pub fn new(tail: Point, head: Point) -> Result<Self> {
        let d = hamming_distance(&tail, &head)?;
        if d != 2 {
            return Err(Error::NotDistanceTwo(d));
        }
        Ok(DirectedEdge { tail, head })
    }

    pub fn tail(&self) -> &Point {
        &self.tail
    }

    pub fn head(&self) -> &Point {
        &self.head
    }

    /// The two 1-based positions where tail and head differ, ascending.
    pub fn differing_positions(&self) -> (usize, usize) {
        let dim = self.tail.dimension();
        let mut diff = (1..=dim).filter(|&i| self.tail.coordinate(i) != self.head.coordinate(i));
        let i = diff.next().unwrap();
        let j = diff.next().unwrap();
        (i, j)
    }

    /// The canonical common neighbour: the tail with the smaller differing
    /// position flipped. It is adjacent to both endpoints.
    pub fn common_neighbour(&self) -> Point {
        let (i, _) = self.differing_positions();
        self.tail.flip_coordinate(i).unwrap()
    }
}

/// The canonical directed path from `start` to `target` moving two
/// coordinates per step: differing positions are fixed in ascending order,
/// two at a time. Requires equal parities; a path of distance-2 steps cannot
/// change parity.
pub fn canonical_path(start: &Point, target: &Point) -> Result<Vec<DirectedEdge>> {
    if parity(start) != parity(target) {
        return Err(Error::ParityMismatch);
    }
    let dim = start.dimension();
    if target.dimension() != dim {
        return Err(Error::DimensionMismatch {
            left: dim,
            right: target.dimension(),
        });
    }
    let differing: Vec<usize> = (1..=dim)
        .filter(|&i| start.coordinate(i) != target.coordinate(i))
        .collect();
    let mut edges = Vec::with_capacity(differing.len() / 2);
    let mut current = *start;
    for pair in differing.chunks(2) {
        let next = current.flip_coordinate(pair[0])?.flip_coordinate(pair[1])?;
        edges.push(DirectedEdge::new(current, next)?);
        current = next;
    }
    debug_assert_eq!(current, *target);
    Ok(edges)
}

/// The canonical family of directed distance-2 edges on `{0,1}^{d+1}` whose
/// in-degree minus out-degree is congruent to 1 mod `2^d` at every vertex:
/// one canonical path from `(0,...,0)` to every other even-parity vertex and
/// one from `(1,0,...,0)` to every other odd-parity vertex. The two sources
/// each lose `2^d - 1`, which is `1` mod `2^d`.
pub fn edge_family(d: u32) -> Result<Vec<DirectedEdge>> {
    let dim = d as usize + 1;
    if dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim,
            min: 1,
            max: MAX_DIM,
        });
    }
    let x_star = Point::zero(dim)?;
    let y_star = Point::unit(dim, 1)?;
    let mut edges = Vec::new();
    for v in all_points(dim) {
        let source = match parity(&v) {
            Parity::Even => x_star,
            Parity::Odd => y_star,
        };
        if v != source {
            edges.extend(canonical_path(&source, &v)?);
        }
    }
    Ok(edges)
}

/// Target dimension of the constructed family: `(k-1)(d+1) + 1` for a
/// pattern dimension `k` and modulus `2^d`.
pub fn mod_part_dimension(k: usize, r: u64) -> Result<usize> {
    if k == 0 {
        return Err(Error::DimensionOutOfRange {
            dim: 0,
            min: 1,
            max: MAX_DIM,
        });
    }
    let d = power_of_two_exponent(r)?;
    let n = (k - 1) * (d as usize + 1) + 1;
    if n > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: k,
            max: MAX_DIM,
        });
    }
    Ok(n)
}

fn power_of_two_exponent(r: u64) -> Result<u32> {
    if r == 0 || !r.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(r));
    }
    Ok(r.trailing_zeros())
}

/// Builds a weight function on isometric copies of `pattern` in
/// `{0,1}^{(k-1)(d+1)+1}` whose every multiplicity is congruent to
/// 1 mod `r`, where `r = 2^d`.
///
/// For `r = 1` the congruence is vacuous and the translation family is
/// returned, which lives in the same dimension `k` the formula gives.
pub fn build_mod_part(pattern: &PointSet, r: u64) -> Result<WeightFunction> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let d = power_of_two_exponent(r)?;
    mod_part_dimension(pattern.dimension(), r)?;
    if r == 1 {
        return translation_family(pattern);
    }
    build_recursive(pattern, d, r)
}

fn build_recursive(pattern: &PointSet, d: u32, r: u64) -> Result<WeightFunction> {
    let k = pattern.dimension();
    if k == 1 {
        return base_partition(pattern);
    }
    let (minus, _) = layer_split(pattern)?;
    if minus.is_empty() {
        // Reflect the last coordinate so the bottom part is non-empty, build
        // for the reflected pattern, then reinterpret the same copies as
        // copies of the original pattern.
        let e_k = Point::unit(k, k)?;
        let reflected = pattern.translate(&e_k)?;
        let wf = build_recursive(&reflected, d, r)?;
        return wf.precompose_translation(&e_k);
    }
    let sub = build_recursive(&minus, d, r)?;
    let lifted = lift_over_new_coordinate(&sub, pattern)?;
    stack_along_edges(&lifted, d, r)
}

// A pattern in {0,1}^1 is a point or the whole edge; either way {0,1} is
// partitioned by copies: the two translates of a point, or the edge itself.
fn base_partition(pattern: &PointSet) -> Result<WeightFunction> {
    let mut wf = WeightFunction::new(pattern.clone(), 1)?;
    if pattern.len() == 2 {
        wf.add(Embedding::identity(1)?, 1)?;
    } else {
        wf.add(Embedding::new(&[1], Point::zero(1)?)?, 1)?;
        wf.add(Embedding::new(&[1], Point::unit(1, 1)?)?, 1)?;
    }
    Ok(wf)
}

// Extends a family over the bottom part of `pattern` to a family of
// embeddings of `pattern` itself, one dimension up: each embedding keeps its
// coordinate placements and routes the new last source coordinate into the
// new last target coordinate. Bottom-layer multiplicities are exactly those
// of `sub`; top-layer multiplicities are unconstrained residues.
fn lift_over_new_coordinate(
    sub: &WeightFunction,
    pattern: &PointSet,
) -> Result<WeightFunction> {
    let m = sub.target_dim();
    let mut out = WeightFunction::new(pattern.clone(), m + 1)?;
    for (phi, w) in sub.entries() {
        let mut coords = phi.coords();
        coords.push(m + 1);
        let translation = phi.translation().append(0)?;
        out.add(Embedding::new(&coords, translation)?, w)?;
    }
    Ok(out)
}

// Stacks the lifted family along the canonical edge family of {0,1}^{d+1}.
// For each directed edge u -> v with common neighbour z, the lifted family
// is placed once with controlled layer on v and residue on z, and r - 1
// times with controlled layer on u and residue on z. Both placements route
// the residue onto the same layer, so residues cancel mod r and the edge
// transfers exactly +1 to v and -1 to u.
fn stack_along_edges(lifted: &WeightFunction, d: u32, r: u64) -> Result<WeightFunction> {
    let m = lifted.target_dim() - 1;
    let block = d as usize + 1;
    let n = m + block;
    let zero_m = Point::zero(m)?;
    let mut out = WeightFunction::new(lifted.pattern().clone(), n)?;
    let mut coords: Vec<usize> = (1..=m).collect();
    coords.push(0); // placeholder for the block coordinate
    for edge in edge_family(d)? {
        let (i, j) = edge.differing_positions();

        coords[m] = m + j;
        let head_map = Embedding::new(&coords, zero_m.concat(edge.head())?)?;
        out.merge(&lifted.push_forward(&head_map)?)?;

        coords[m] = m + i;
        let tail_map = Embedding::new(&coords, zero_m.concat(edge.tail())?)?;
        let mut tail_copy = lifted.push_forward(&tail_map)?;
        tail_copy.scale(r - 1)?;
        out.merge(&tail_copy)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn set(words: &[&str]) -> PointSet {
        PointSet::parse(words).unwrap()
    }

    fn edge(tail: &str, head: &str) -> DirectedEdge {
        DirectedEdge::new(pt(tail), pt(head)).unwrap()
    }

    #[test]
    fn directed_edge_geometry() {
        let e = edge("100", "001");
        assert_eq!(e.differing_positions(), (1, 3));
        assert_eq!(e.common_neighbour(), pt("000"));
        assert!(matches!(
            DirectedEdge::new(pt("00"), pt("01")),
            Err(Error::NotDistanceTwo(1))
        ));
    }

    #[test]
    fn canonical_path_fixes_positions_in_pairs() {
        assert_eq!(canonical_path(&pt("00"), &pt("11")).unwrap(), vec![edge("00", "11")]);
        assert_eq!(
            canonical_path(&pt("0000"), &pt("1111")).unwrap(),
            vec![edge("0000", "1100"), edge("1100", "1111")]
        );
        assert!(canonical_path(&pt("000"), &pt("000")).unwrap().is_empty());
        assert!(matches!(
            canonical_path(&pt("00"), &pt("01")),
            Err(Error::ParityMismatch)
        ));
    }

    #[test]
    fn edge_family_small_cases() {
        assert_eq!(edge_family(1).unwrap(), vec![edge("10", "01"), edge("00", "11")]);
        assert_eq!(
            edge_family(2).unwrap(),
            vec![
                edge("100", "001"),
                edge("100", "010"),
                edge("000", "011"),
                edge("000", "101"),
                edge("000", "110"),
                edge("100", "111"),
            ]
        );
    }

    #[test]
    fn edge_family_degree_balance() {
        // In-degree minus out-degree is 1 mod 2^d at every vertex; the two
        // path sources make up their deficit exactly mod 2^d.
        for d in 1..=4u32 {
            let r = 1i64 << d;
            let dim = d as usize + 1;
            let mut net = vec![0i64; 1 << dim];
            for e in edge_family(d).unwrap() {
                net[e.head().bits() as usize] += 1;
                net[e.tail().bits() as usize] -= 1;
            }
            for v in all_points(dim) {
                let value = net[v.bits() as usize];
                assert_eq!(value.rem_euclid(r), 1, "d={d} v={v}");
            }
        }
    }

    #[test]
    fn lift_extends_families_upward() {
        let sub = base_partition(&set(&["0"])).unwrap();
        let lifted = lift_over_new_coordinate(&sub, &set(&["00", "01"])).unwrap();
        let images: Vec<PointSet> = lifted.image_weights().unwrap().into_keys().collect();
        assert_eq!(images, vec![set(&["00", "01"]), set(&["10", "11"])]);
        // Bottom layer multiplicities equal the sub-family's; the top layer
        // carries whatever residue falls out.
        let mult = lifted.multiplicities().unwrap();
        assert_eq!(mult, vec![1, 1, 1, 1]);
    }

    #[test]
    fn base_partitions() {
        for words in [vec!["0"], vec!["1"], vec!["0", "1"]] {
            let wf = base_partition(&PointSet::parse(&words).unwrap()).unwrap();
            assert!(wf.is_partition().unwrap());
        }
    }

    #[test]
    fn dimension_formula() {
        assert_eq!(mod_part_dimension(1, 2).unwrap(), 1);
        assert_eq!(mod_part_dimension(2, 2).unwrap(), 3);
        assert_eq!(mod_part_dimension(3, 4).unwrap(), 7);
        assert_eq!(mod_part_dimension(4, 8).unwrap(), 13);
        assert_eq!(mod_part_dimension(3, 1).unwrap(), 3);
        assert!(matches!(mod_part_dimension(5, 256), Err(Error::DimensionOutOfRange { .. })));
        assert!(matches!(mod_part_dimension(2, 3), Err(Error::NotPowerOfTwo(3))));
        assert!(matches!(mod_part_dimension(2, 0), Err(Error::NotPowerOfTwo(0))));
    }

    #[test]
    fn small_mod_parts_verify() {
        let cases: Vec<(Vec<&str>, u64)> = vec![
            (vec!["0"], 2),
            (vec!["0", "1"], 4),
            (vec!["00", "01"], 2),
            (vec!["00", "11"], 2),
            (vec!["01", "11"], 2), // bottom part empty: exercises reflection
            (vec!["00", "01", "10", "11"], 4),
            (vec!["000", "011", "101", "110"], 2),
        ];
        for (words, r) in cases {
            let x = PointSet::parse(&words).unwrap();
            let wf = build_mod_part(&x, r).unwrap();
            assert_eq!(
                wf.target_dim(),
                mod_part_dimension(x.dimension(), r).unwrap(),
                "dimension for {words:?} r={r}"
            );
            assert_eq!(wf.pattern(), &x);
            assert!(!wf.is_empty());
            assert!(wf.is_mod_r_part(r).unwrap(), "not 1 mod {r} for {words:?}");
        }
    }

    #[test]
    fn mod_part_of_square_mod_four_in_detail() {
        // k = 2, d = 2: n = 4. All multiplicities congruent to 1 mod 4,
        // and the pattern is preserved through the recursion.
        let x = set(&["00", "01", "10", "11"]);
        let wf = build_mod_part(&x, 4).unwrap();
        assert_eq!(wf.target_dim(), 4);
        for m in wf.multiplicities().unwrap() {
            assert_eq!(m % 4, 1);
        }
    }

    #[test]
    fn trivial_modulus_returns_translation_family() {
        let x = set(&["00", "11"]);
        let wf = build_mod_part(&x, 1).unwrap();
        assert_eq!(wf.target_dim(), 2);
        assert_eq!(wf.len(), 4);
        assert!(wf.is_mod_r_part(1).unwrap());
        assert_eq!(wf.r_part_value().unwrap(), Some(2));
    }

    #[test]
    fn rejects_bad_moduli_and_oversized_targets() {
        let x = set(&["00", "01"]);
        assert!(matches!(build_mod_part(&x, 6), Err(Error::NotPowerOfTwo(6))));
        // k = 4, r = 2^8: n = 3 * 9 + 1 = 28 > 24.
        let big = set(&["0000", "0001", "0010", "0100"]);
        assert!(matches!(
            build_mod_part(&big, 256),
            Err(Error::DimensionOutOfRange { .. })
        ));
    }
}
