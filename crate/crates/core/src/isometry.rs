//! Isometric embeddings `{0,1}^k -> {0,1}^n` and the copy relations they
//! induce.
//!
//! Every isometric embedding of a smaller cube into a larger one is an
//! injective placement of the source coordinates followed by a translation;
//! `x` maps to `t XOR sigma(x)` where `sigma` routes source coordinate `i`
//! into target coordinate `coords[i-1]`. The unit tests confirm by brute
//! force that these maps are exactly the distance-preserving injections, so
//! enumerating them enumerates all isometric copies.

use std::collections::BTreeSet;
use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::cube::{hamming_distance, Point, PointSet};
use crate::error::{Error, Result};
use crate::iso;

/// Largest target dimension for exhaustive copy enumeration.
pub const MAX_ENUMERATION_DIM: usize = 16;

/// An isometric embedding `{0,1}^k -> {0,1}^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding {
    // Ord picks up fields in declaration order, giving the canonical
    // enumeration order: coordinate map first, translation second.
    coord_map: Vec<u8>,
    translation: Point,
}

impl Embedding {
    /// Builds an embedding from 1-based target coordinates (one per source
    /// coordinate, pairwise distinct) and a translation in the target cube.
    pub fn new(coords: &[usize], translation: Point) -> Result<Self> {
        let k = coords.len();
        let n = translation.dimension();
        if k == 0 || k > n {
            return Err(Error::SourceExceedsTarget {
                pattern: k,
                target: n,
            });
        }
        let mut seen = 0u32;
        for &c in coords {
            if c == 0 || c > n {
                return Err(Error::DimensionOutOfRange {
                    dim: c,
                    min: 1,
                    max: n,
                });
            }
            if seen >> (c - 1) & 1 == 1 {
                return Err(Error::DuplicateCoordinate(c));
            }
            seen |= 1 << (c - 1);
        }
        Ok(Embedding {
            coord_map: coords.iter().map(|&c| c as u8).collect(),
            translation,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let coords: Vec<usize> = (1..=n).collect();
        Embedding::new(&coords, Point::zero(n)?)
    }

    pub fn source_dim(&self) -> usize {
        self.coord_map.len()
    }

    pub fn target_dim(&self) -> usize {
        self.translation.dimension()
    }

    pub fn coords(&self) -> Vec<usize> {
        self.coord_map.iter().map(|&c| c as usize).collect()
    }

    pub fn translation(&self) -> &Point {
        &self.translation
    }

    pub fn apply(&self, x: &Point) -> Result<Point> {
        if x.dimension() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                left: x.dimension(),
                right: self.source_dim(),
            });
        }
        let n = self.target_dim();
        let mut bits = self.translation.bits();
        for (i, &c) in self.coord_map.iter().enumerate() {
            if x.coordinate(i + 1) == 1 {
                bits ^= 1 << (n - c as usize);
            }
        }
        Point::new(n, bits)
    }

    /// Image of a whole set; embeddings are injective, so sizes are kept.
    pub fn apply_set(&self, set: &PointSet) -> Result<PointSet> {
        if set.dimension() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                left: set.dimension(),
                right: self.source_dim(),
            });
        }
        let images: Vec<Point> = set
            .iter()
            .map(|p| self.apply(p))
            .collect::<Result<_>>()?;
        PointSet::new(self.target_dim(), images)
    }

    /// Inverts the embedding on its image: `Some(x)` with `apply(x) == p`
    /// when `p` lies in the image cube, `None` otherwise.
    pub fn preimage(&self, p: &Point) -> Result<Option<Point>> {
        if p.dimension() != self.target_dim() {
            return Err(Error::DimensionMismatch {
                left: p.dimension(),
                right: self.target_dim(),
            });
        }
        let n = self.target_dim();
        let mut rest = p.bits() ^ self.translation.bits();
        let mut src = 0u32;
        let k = self.source_dim();
        for (i, &c) in self.coord_map.iter().enumerate() {
            let mask = 1 << (n - c as usize);
            if rest & mask != 0 {
                src |= 1 << (k - 1 - i);
                rest &= !mask;
            }
        }
        if rest != 0 {
            return Ok(None);
        }
        Ok(Some(Point::new(k, src)?))
    }

    /// Composition `self after inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Embedding) -> Result<Self> {
        if inner.target_dim() != self.source_dim() {
            return Err(Error::DimensionMismatch {
                left: inner.target_dim(),
                right: self.source_dim(),
            });
        }
        let coords: Vec<usize> = inner
            .coord_map
            .iter()
            .map(|&c| self.coord_map[c as usize - 1] as usize)
            .collect();
        Embedding::new(&coords, self.apply(&inner.translation)?)
    }
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding(coords={:?}, t={})", self.coords(), self.translation)
    }
}

impl Serialize for Embedding {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Embedding", 2)?;
        s.serialize_field("coords", &self.coords())?;
        s.serialize_field("translation", &self.translation.to_string())?;
        s.end()
    }
}

#[derive(Deserialize)]
struct EmbeddingRepr {
    coords: Vec<usize>,
    translation: String,
}

impl<'de> Deserialize<'de> for Embedding {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = EmbeddingRepr::deserialize(deserializer)?;
        let translation: Point = repr.translation.parse().map_err(de::Error::custom)?;
        Embedding::new(&repr.coords, translation).map_err(de::Error::custom)
    }
}

/// Number of isometric embeddings `{0,1}^k -> {0,1}^n`:
/// `2^n * n * (n-1) * ... * (n-k+1)`.
pub fn count_embeddings(k: usize, n: usize) -> Result<u128> {
    if k == 0 || k > n {
        return Err(Error::SourceExceedsTarget {
            pattern: k,
            target: n,
        });
    }
    if n > crate::cube::MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: k,
            max: crate::cube::MAX_DIM,
        });
    }
    let mut count: u128 = 1 << n;
    for j in 0..k {
        count *= (n - j) as u128;
    }
    Ok(count)
}

/// Streams every embedding `{0,1}^k -> {0,1}^n` in canonical order:
/// coordinate maps in lexicographic order, translations in numeric order
/// within each map.
pub fn enumerate_embeddings(k: usize, n: usize) -> Result<Embeddings> {
    count_embeddings(k, n)?;
    Ok(Embeddings {
        k,
        n,
        coord_map: (1..=k as u8).collect(),
        used: (1u32 << k) - 1,
        translation: 0,
        done: false,
    })
}

pub struct Embeddings {
    k: usize,
    n: usize,
    coord_map: Vec<u8>,
    used: u32,
    translation: u64,
    done: bool,
}

impl Embeddings {
    // Lexicographic successor of the current injective coordinate map.
    fn advance_map(&mut self) -> bool {
        let mut i = self.k;
        while i > 0 {
            i -= 1;
            let cur = self.coord_map[i] as usize;
            self.used &= !(1 << (cur - 1));
            if let Some(next) = (cur + 1..=self.n).find(|&v| self.used >> (v - 1) & 1 == 0) {
                self.coord_map[i] = next as u8;
                self.used |= 1 << (next - 1);
                for j in i + 1..self.k {
                    let v = (1..=self.n)
                        .find(|&v| self.used >> (v - 1) & 1 == 0)
                        .unwrap();
                    self.coord_map[j] = v as u8;
                    self.used |= 1 << (v - 1);
                }
                return true;
            }
        }
        false
    }
}

impl Iterator for Embeddings {
    type Item = Embedding;

    fn next(&mut self) -> Option<Embedding> {
        if self.done {
            return None;
        }
        let item = Embedding {
            coord_map: self.coord_map.clone(),
            translation: Point::new(self.n, self.translation as u32).unwrap(),
        };
        self.translation += 1;
        if self.translation == 1 << self.n {
            self.translation = 0;
            if !self.advance_map() {
                self.done = true;
            }
        }
        Some(item)
    }
}

/// All distinct images of `pattern` under isometric embeddings into
/// `{0,1}^n`, in canonical order. Exhaustive, so the target dimension is
/// capped at `MAX_ENUMERATION_DIM`.
pub fn enumerate_isometric_copies(pattern: &PointSet, n: usize) -> Result<Vec<PointSet>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let k = pattern.dimension();
    if k > n {
        return Err(Error::SourceExceedsTarget {
            pattern: k,
            target: n,
        });
    }
    if n > MAX_ENUMERATION_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: k,
            max: MAX_ENUMERATION_DIM,
        });
    }
    let mut images: BTreeSet<Vec<u32>> = BTreeSet::new();
    for phi in enumerate_embeddings(k, n)? {
        let mut image: Vec<u32> = pattern
            .iter()
            .map(|p| phi.apply(p).unwrap().bits())
            .collect();
        image.sort_unstable();
        images.insert(image);
    }
    images
        .into_iter()
        .map(|bits| {
            PointSet::new(n, bits.into_iter().map(|b| Point::new(n, b).unwrap()))
        })
        .collect()
}

/// Largest target dimension for induced-copy enumeration; the host graph
/// has `2^n` vertices and the search cost grows much faster.
pub const MAX_INDUCED_DIM: usize = 12;

/// All vertex sets of the `n`-cube whose induced subgraph is isomorphic to
/// the one induced by `pattern`. This is the weaker copy notion: every
/// isometric copy qualifies, but a set may qualify without preserving
/// distances above 1. `max_maps` bounds the raw embedding count before
/// images are deduplicated.
pub fn enumerate_induced_copies(
    pattern: &PointSet,
    n: usize,
    max_maps: usize,
) -> Result<Vec<PointSet>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if n == 0 || n > MAX_INDUCED_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: MAX_INDUCED_DIM,
        });
    }
    let host_size = 1usize << n;
    if pattern.len() > host_size {
        return Ok(Vec::new());
    }
    let mut host = iso::Graph::new(host_size);
    for v in 0..host_size {
        for i in 0..n {
            let u = v ^ (1 << i);
            if v < u {
                host.add_edge(v, u);
            }
        }
    }
    let maps = iso::induced_maps(&induced_graph(pattern)?, &host, max_maps)?;
    let mut images: BTreeSet<Vec<u32>> = BTreeSet::new();
    for m in maps {
        let mut image: Vec<u32> = m.into_iter().map(|v| v as u32).collect();
        image.sort_unstable();
        images.insert(image);
    }
    images
        .into_iter()
        .map(|bits| {
            PointSet::new(n, bits.into_iter().map(|b| Point::new(n, b).unwrap()))
        })
        .collect()
}

/// Searches for an isometric embedding carrying `pattern` exactly onto
/// `candidate`. Returns the first one in canonical coordinate-map order, or
/// `None` when `candidate` is not a copy of `pattern`.
pub fn find_isometry(pattern: &PointSet, candidate: &PointSet) -> Result<Option<Embedding>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let k = pattern.dimension();
    let n = candidate.dimension();
    if k > n {
        return Err(Error::SourceExceedsTarget {
            pattern: k,
            target: n,
        });
    }
    if pattern.len() != candidate.len() {
        return Ok(None);
    }
    if distance_multiset(pattern)? != distance_multiset(candidate)? {
        return Ok(None);
    }
    let x0 = pattern.points()[0];
    // Differences from the anchors; sigma must carry one set onto the other.
    let src: Vec<u32> = pattern.iter().map(|p| p.bits() ^ x0.bits()).collect();
    for &a0 in candidate.points() {
        let dst: Vec<u32> = candidate.iter().map(|p| p.bits() ^ a0.bits()).collect();
        if let Some(coords) = match_coordinates(&src, &dst, k, n) {
            let sigma = Embedding::new(&coords, Point::zero(n)?)?;
            let translation = sigma.apply(&x0)?.xor(&a0)?;
            let phi = Embedding::new(&coords, translation)?;
            debug_assert_eq!(&phi.apply_set(pattern)?, candidate);
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

pub fn is_isometric_copy(pattern: &PointSet, candidate: &PointSet) -> Result<bool> {
    Ok(find_isometry(pattern, candidate)?.is_some())
}

fn distance_multiset(set: &PointSet) -> Result<Vec<usize>> {
    let pts = set.points();
    let mut dists = Vec::with_capacity(pts.len() * (pts.len().saturating_sub(1)) / 2);
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            dists.push(hamming_distance(p, q)?);
        }
    }
    dists.sort_unstable();
    Ok(dists)
}

// Backtracking over target coordinates for source coordinates 1..k, pruning
// with projection multisets: after assigning a prefix, the source differences
// restricted to assigned coordinates must match the candidate differences
// restricted to their targets.
fn match_coordinates(src: &[u32], dst: &[u32], k: usize, n: usize) -> Option<Vec<usize>> {
    fn projections(words: &[u32], shifts: &[u32]) -> Vec<u32> {
        let mut out: Vec<u32> = words
            .iter()
            .map(|&w| {
                shifts
                    .iter()
                    .fold(0u32, |acc, &s| (acc << 1) | (w >> s & 1))
            })
            .collect();
        out.sort_unstable();
        out
    }

    let mut chosen: Vec<usize> = Vec::with_capacity(k);
    let mut src_shifts: Vec<u32> = Vec::with_capacity(k);
    let mut dst_shifts: Vec<u32> = Vec::with_capacity(k);
    let mut next_try: Vec<usize> = vec![1; k + 1];
    loop {
        let depth = chosen.len();
        if depth == k {
            return Some(chosen);
        }
        let mut advanced = false;
        for c in next_try[depth]..=n {
            if chosen.contains(&c) {
                continue;
            }
            src_shifts.push((k - 1 - depth) as u32);
            dst_shifts.push((n - c) as u32);
            if projections(src, &src_shifts) == projections(dst, &dst_shifts) {
                chosen.push(c);
                next_try[depth] = c + 1;
                next_try[depth + 1] = 1;
                advanced = true;
                break;
            }
            src_shifts.pop();
            dst_shifts.pop();
        }
        if !advanced {
            if depth == 0 {
                return None;
            }
            chosen.pop();
            src_shifts.pop();
            dst_shifts.pop();
        }
    }
}

/// Tests whether `candidate` induces the same abstract graph in its cube as
/// `pattern` does in its own. This is strictly weaker than being an
/// isometric copy: only edges matter, longer distances may disagree.
pub fn is_h_set(pattern: &PointSet, candidate: &PointSet) -> Result<bool> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if pattern.len() != candidate.len() {
        return Ok(false);
    }
    Ok(iso::induced_embedding_exists(
        &induced_graph(pattern)?,
        &induced_graph(candidate)?,
    ))
}

fn induced_graph(set: &PointSet) -> Result<iso::Graph> {
    let pts = set.points();
    let mut g = iso::Graph::new(pts.len());
    for (i, p) in pts.iter().enumerate() {
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            if hamming_distance(p, q)? == 1 {
                g.add_edge(i, j);
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::all_points;
    use proptest::prelude::*;

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn set(words: &[&str]) -> PointSet {
        PointSet::parse(words).unwrap()
    }

    #[test]
    fn apply_routes_coordinates_and_translates() {
        let phi = Embedding::new(&[2, 3], pt("100")).unwrap();
        assert_eq!(phi.apply(&pt("00")).unwrap(), pt("100"));
        assert_eq!(phi.apply(&pt("10")).unwrap(), pt("110"));
        assert_eq!(phi.apply(&pt("01")).unwrap(), pt("101"));
        assert_eq!(phi.apply(&pt("11")).unwrap(), pt("111"));
        assert_eq!(
            phi.apply_set(&set(&["00", "11"])).unwrap(),
            set(&["100", "111"])
        );
    }

    #[test]
    fn constructor_validation() {
        assert!(Embedding::new(&[1, 1], pt("00")).is_err());
        assert!(Embedding::new(&[3], pt("00")).is_err());
        assert!(Embedding::new(&[1, 2, 3], pt("00")).is_err());
        assert!(Embedding::new(&[], pt("00")).is_err());
        assert!(Embedding::new(&[0], pt("00")).is_err());
    }

    #[test]
    fn embedding_counts() {
        let cases = [
            (1usize, 1usize, 2u128),
            (1, 2, 8),
            (2, 2, 8),
            (1, 3, 24),
            (2, 3, 48),
            (3, 3, 48),
        ];
        for (k, n, expected) in cases {
            assert_eq!(count_embeddings(k, n).unwrap(), expected, "k={k} n={n}");
            let listed: Vec<Embedding> = enumerate_embeddings(k, n).unwrap().collect();
            assert_eq!(listed.len() as u128, expected);
            let mut sorted = listed.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), listed.len(), "duplicates for k={k} n={n}");
            assert_eq!(sorted, listed, "order not canonical for k={k} n={n}");
        }
        assert!(count_embeddings(3, 2).is_err());
        assert!(count_embeddings(0, 2).is_err());
    }

    // Ground truth by brute force: enumerate every injective map between the
    // cubes' vertex sets, keep the distance-preserving ones, and compare
    // against the structured enumeration. This proves the coordinate-map +
    // translation form is complete for these sizes.
    fn distance_preserving_injections(k: usize, n: usize) -> BTreeSet<Vec<u32>> {
        let src: Vec<Point> = all_points(k).collect();
        let dst: Vec<Point> = all_points(n).collect();
        let mut found = BTreeSet::new();
        let mut image: Vec<u32> = Vec::with_capacity(src.len());
        fn go(
            src: &[Point],
            dst: &[Point],
            image: &mut Vec<u32>,
            found: &mut BTreeSet<Vec<u32>>,
        ) {
            if image.len() == src.len() {
                found.insert(image.clone());
                return;
            }
            let i = image.len();
            'cand: for q in dst {
                if image.contains(&q.bits()) {
                    continue;
                }
                for j in 0..i {
                    let want = hamming_distance(&src[i], &src[j]).unwrap();
                    let have =
                        (q.bits() ^ image[j]).count_ones() as usize;
                    if want != have {
                        continue 'cand;
                    }
                }
                image.push(q.bits());
                go(src, dst, image, found);
                image.pop();
            }
        }
        go(&src, &dst, &mut image, &mut found);
        found
    }

    #[test]
    fn enumeration_is_complete_for_small_cubes() {
        for (k, n) in [(1usize, 1usize), (1, 2), (2, 2), (2, 3), (3, 3)] {
            let brute = distance_preserving_injections(k, n);
            let structured: BTreeSet<Vec<u32>> = enumerate_embeddings(k, n)
                .unwrap()
                .map(|phi| {
                    all_points(k)
                        .map(|p| phi.apply(&p).unwrap().bits())
                        .collect()
                })
                .collect();
            assert_eq!(structured, brute, "k={k} n={n}");
        }
    }

    #[test]
    fn copies_of_small_patterns() {
        // An edge placed anywhere in the square: the 4 edges of the square.
        let edges = enumerate_isometric_copies(&set(&["0", "1"]), 2).unwrap();
        assert_eq!(edges.len(), 4);
        // An antipodal pair in the square: the two diagonals.
        let diagonals = enumerate_isometric_copies(&set(&["00", "11"]), 2).unwrap();
        assert_eq!(diagonals.len(), 2);
        assert_eq!(diagonals[0], set(&["00", "11"]));
        assert_eq!(diagonals[1], set(&["01", "10"]));
        // A radius-1 ball in the 3-cube: one copy per center.
        let ball = set(&["000", "001", "010", "100"]);
        assert_eq!(enumerate_isometric_copies(&ball, 3).unwrap().len(), 8);
        // A single point: one copy per vertex.
        assert_eq!(enumerate_isometric_copies(&set(&["0"]), 3).unwrap().len(), 8);
    }

    #[test]
    fn induced_copies_extend_isometric_copies() {
        // Independent pairs of the 3-cube: all 16 non-adjacent 2-subsets.
        // Only the 12 distance-2 pairs are isometric copies of a diagonal;
        // the 4 antipodal pairs are induced copies that stretch the metric.
        let diagonal = set(&["00", "11"]);
        let induced = enumerate_induced_copies(&diagonal, 3, 1 << 20).unwrap();
        assert_eq!(induced.len(), 16);
        let isometric = enumerate_isometric_copies(&diagonal, 3).unwrap();
        assert_eq!(isometric.len(), 12);
        assert!(isometric.iter().all(|c| induced.contains(c)));
        let stretched: Vec<&PointSet> =
            induced.iter().filter(|c| !isometric.contains(c)).collect();
        assert_eq!(stretched.len(), 4);
        for c in stretched {
            let pts = c.points();
            assert_eq!(hamming_distance(&pts[0], &pts[1]).unwrap(), 3);
        }

        // The radius-1 ball is rigid: induced and isometric copies agree.
        let ball = set(&["000", "001", "010", "100"]);
        let induced = enumerate_induced_copies(&ball, 3, 1 << 20).unwrap();
        assert_eq!(induced, enumerate_isometric_copies(&ball, 3).unwrap());

        // A cap of zero maps trips the enumeration guard.
        assert!(matches!(
            enumerate_induced_copies(&ball, 3, 0),
            Err(Error::InducedCopyLimit { .. })
        ));
    }

    #[test]
    fn copy_detection_distinguishes_metric_from_graph_structure() {
        let pair2 = set(&["00", "11"]);
        let pair3 = set(&["000", "111"]);
        // Same induced graph (two isolated vertices), different diameters.
        assert!(!is_isometric_copy(&pair2, &pair3).unwrap());
        assert!(is_h_set(&pair2, &pair3).unwrap());
        assert!(is_h_set(&pair3, &pair2).unwrap());

        // A genuine copy is both.
        assert!(is_isometric_copy(&pair2, &set(&["011", "101"])).unwrap());
        assert!(is_h_set(&pair2, &set(&["011", "101"])).unwrap());

        // A path and an independent pair are not even H-equivalent.
        assert!(!is_h_set(&set(&["00", "01"]), &pair3).unwrap());
    }

    #[test]
    fn find_isometry_returns_exact_witness() {
        let pattern = set(&["000", "001", "010", "100"]);
        let copy = set(&["111", "110", "101", "011"]);
        let phi = find_isometry(&pattern, &copy).unwrap().unwrap();
        assert_eq!(phi.apply_set(&pattern).unwrap(), copy);
        assert!(find_isometry(&pattern, &set(&["000", "001", "010", "111"]))
            .unwrap()
            .is_none());
    }

    #[test]
    fn every_enumerated_image_is_a_copy() {
        let pattern = set(&["00", "01", "11"]);
        let copies = enumerate_isometric_copies(&pattern, 3).unwrap();
        for c in &copies {
            assert!(is_isometric_copy(&pattern, c).unwrap());
        }
        // Count check: paths of two edges in the 3-cube, one per choice of
        // middle vertex and unordered pair of directions.
        assert_eq!(copies.len(), 24);
    }

    #[test]
    fn preimage_inverts_apply() {
        let phi = Embedding::new(&[3, 1], pt("0110")).unwrap();
        for x in all_points(2) {
            let image = phi.apply(&x).unwrap();
            assert_eq!(phi.preimage(&image).unwrap(), Some(x));
        }
        // Points differing from the image cube in an unplaced coordinate
        // (2 or 4) have no preimage.
        assert_eq!(phi.preimage(&pt("0010")).unwrap(), None);
        assert_eq!(phi.preimage(&pt("0111")).unwrap(), None);
    }

    #[test]
    fn compose_matches_sequential_application() {
        let inner = Embedding::new(&[2, 1], pt("010")).unwrap();
        let outer = Embedding::new(&[4, 1, 3], pt("1000")).unwrap();
        let both = outer.compose(&inner).unwrap();
        for x in all_points(2) {
            assert_eq!(
                both.apply(&x).unwrap(),
                outer.apply(&inner.apply(&x).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn embedding_serde_round_trip() {
        let phi = Embedding::new(&[3, 1], pt("0110")).unwrap();
        let json = serde_json::to_string(&phi).unwrap();
        assert_eq!(json, r#"{"coords":[3,1],"translation":"0110"}"#);
        let back: Embedding = serde_json::from_str(&json).unwrap();
        assert_eq!(back, phi);
        assert!(serde_json::from_str::<Embedding>(
            r#"{"coords":[3,3],"translation":"0110"}"#
        )
        .is_err());
    }

    proptest! {
        #[test]
        fn apply_preserves_distances(
            seed in 0u64..u64::MAX,
            k in 1usize..4,
            extra in 0usize..3,
            a in 0u32..16,
            b in 0u32..16,
        ) {
            let n = k + extra;
            let idx = (seed % count_embeddings(k, n).unwrap() as u64) as usize;
            let phi = enumerate_embeddings(k, n).unwrap().nth(idx).unwrap();
            let x = Point::new(k, a & ((1 << k) - 1)).unwrap();
            let y = Point::new(k, b & ((1 << k) - 1)).unwrap();
            let d = hamming_distance(&x, &y).unwrap();
            let dd = hamming_distance(&phi.apply(&x).unwrap(), &phi.apply(&y).unwrap()).unwrap();
            prop_assert_eq!(d, dd);
        }

        #[test]
        fn composition_is_closed(
            s1 in 0u64..u64::MAX,
            s2 in 0u64..u64::MAX,
            x in 0u32..4,
        ) {
            let inner_count = count_embeddings(2, 3).unwrap() as u64;
            let outer_count = count_embeddings(3, 4).unwrap() as u64;
            let inner = enumerate_embeddings(2, 3).unwrap().nth((s1 % inner_count) as usize).unwrap();
            let outer = enumerate_embeddings(3, 4).unwrap().nth((s2 % outer_count) as usize).unwrap();
            let both = outer.compose(&inner).unwrap();
            prop_assert_eq!(both.source_dim(), 2);
            prop_assert_eq!(both.target_dim(), 4);
            let p = Point::new(2, x).unwrap();
            prop_assert_eq!(
                both.apply(&p).unwrap(),
                outer.apply(&inner.apply(&p).unwrap()).unwrap()
            );
        }
    }
}
