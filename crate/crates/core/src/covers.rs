//! Weight functions on isometric embeddings and the cover notions built on
//! them.
//!
//! A weight function assigns a positive integer weight to finitely many
//! embeddings of a fixed pattern into a fixed target cube. The multiplicity
//! of a target point is the total weight of entries whose image contains it.
//! Constant multiplicity `r` makes the family an `r`-fold cover; constant
//! multiplicity congruent to 1 makes it a cover "mod r"; constant
//! multiplicity 1 is exactly a partition into copies of the pattern.

use std::collections::BTreeMap;

use crate::cube::{all_points, Point, PointSet, MAX_DIM};
use crate::error::{Error, Result};
use crate::isometry::Embedding;

/// Weights and multiplicities stay at or below this bound so that no checked
/// sum silently saturates.
pub const MAX_WEIGHT: u64 = (1 << 63) - 1;

/// Largest target dimension for which full multiplicity vectors are
/// materialized.
pub const MAX_MULTIPLICITY_DIM: usize = 20;

/// A finitely supported weight function on embeddings of one pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFunction {
    pattern: PointSet,
    target_dim: usize,
    entries: BTreeMap<Embedding, u64>,
}

impl WeightFunction {
    pub fn new(pattern: PointSet, target_dim: usize) -> Result<Self> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if pattern.dimension() > target_dim {
            return Err(Error::SourceExceedsTarget {
                pattern: pattern.dimension(),
                target: target_dim,
            });
        }
        if target_dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange {
                dim: target_dim,
                min: pattern.dimension(),
                max: MAX_DIM,
            });
        }
        Ok(WeightFunction {
            pattern,
            target_dim,
            entries: BTreeMap::new(),
        })
    }

    pub fn pattern(&self) -> &PointSet {
        &self.pattern
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical embedding order.
    pub fn entries(&self) -> impl Iterator<Item = (&Embedding, u64)> {
        self.entries.iter().map(|(phi, &w)| (phi, w))
    }

    pub fn weight_of(&self, phi: &Embedding) -> u64 {
        self.entries.get(phi).copied().unwrap_or(0)
    }

    /// Adds `weight` to the entry for `phi`, creating it if needed.
    pub fn add(&mut self, phi: Embedding, weight: u64) -> Result<()> {
        if weight == 0 {
            return Err(Error::ZeroWeight);
        }
        if phi.source_dim() != self.pattern.dimension()
            || phi.target_dim() != self.target_dim
        {
            return Err(Error::DimensionMismatch {
                left: phi.source_dim(),
                right: self.pattern.dimension(),
            });
        }
        let slot = self.entries.entry(phi).or_insert(0);
        *slot = checked_add(*slot, weight)?;
        Ok(())
    }

    /// Multiplies every weight by `factor`.
    pub fn scale(&mut self, factor: u64) -> Result<()> {
        if factor == 0 {
            return Err(Error::ZeroWeight);
        }
        for w in self.entries.values_mut() {
            *w = checked_mul(*w, factor)?;
        }
        Ok(())
    }

    /// Pointwise sum with another weight function over the same pattern and
    /// target.
    pub fn merge(&mut self, other: &WeightFunction) -> Result<()> {
        if self.pattern != other.pattern || self.target_dim != other.target_dim {
            return Err(Error::PatternMismatch);
        }
        for (phi, w) in other.entries() {
            self.add(phi.clone(), w)?;
        }
        Ok(())
    }

    /// Transports the family along `outer`, replacing each entry `phi` by
    /// `outer . phi`. Weights and pattern are unchanged; images move into
    /// the larger cube.
    pub fn push_forward(&self, outer: &Embedding) -> Result<WeightFunction> {
        if outer.source_dim() != self.target_dim {
            return Err(Error::DimensionMismatch {
                left: outer.source_dim(),
                right: self.target_dim,
            });
        }
        let mut out = WeightFunction::new(self.pattern.clone(), outer.target_dim())?;
        for (phi, w) in self.entries() {
            out.add(outer.compose(phi)?, w)?;
        }
        Ok(out)
    }

    /// Reinterprets a family over pattern `Y` as a family over `Y + s` with
    /// identical images: each entry keeps its coordinate map and absorbs
    /// `s` into the translation.
    pub fn precompose_translation(&self, s: &Point) -> Result<WeightFunction> {
        if s.dimension() != self.pattern.dimension() {
            return Err(Error::DimensionMismatch {
                left: s.dimension(),
                right: self.pattern.dimension(),
            });
        }
        let mut out =
            WeightFunction::new(self.pattern.translate(s)?, self.target_dim)?;
        for (phi, w) in self.entries() {
            let shifted = Embedding::new(&phi.coords(), phi.apply(s)?)?;
            out.add(shifted, w)?;
        }
        Ok(out)
    }

    /// Total weight of entries whose image contains `p`.
    pub fn multiplicity(&self, p: &Point) -> Result<u64> {
        if p.dimension() != self.target_dim {
            return Err(Error::DimensionMismatch {
                left: p.dimension(),
                right: self.target_dim,
            });
        }
        let mut total = 0u64;
        for (phi, w) in self.entries() {
            if let Some(x) = phi.preimage(p)? {
                if self.pattern.contains(&x) {
                    total = checked_add(total, w)?;
                }
            }
        }
        Ok(total)
    }

    /// The full multiplicity vector, indexed by packed point value.
    pub fn multiplicities(&self) -> Result<Vec<u64>> {
        if self.target_dim > MAX_MULTIPLICITY_DIM {
            return Err(Error::DimensionOutOfRange {
                dim: self.target_dim,
                min: self.pattern.dimension(),
                max: MAX_MULTIPLICITY_DIM,
            });
        }
        let mut mult = vec![0u64; 1 << self.target_dim];
        for (phi, w) in self.entries() {
            for x in self.pattern.iter() {
                let slot = &mut mult[phi.apply(x)?.bits() as usize];
                *slot = checked_add(*slot, w)?;
            }
        }
        Ok(mult)
    }

    /// `Some(r)` when every point of the target cube has multiplicity
    /// exactly `r >= 1`.
    pub fn r_part_value(&self) -> Result<Option<u64>> {
        let mult = self.multiplicities()?;
        let first = mult[0];
        if first >= 1 && mult.iter().all(|&m| m == first) {
            Ok(Some(first))
        } else {
            Ok(None)
        }
    }

    pub fn is_r_part(&self, r: u64) -> Result<bool> {
        if r == 0 {
            return Err(Error::ZeroWeight);
        }
        Ok(self.multiplicities()?.iter().all(|&m| m == r))
    }

    /// True when every multiplicity is congruent to 1 mod `r`.
    pub fn is_mod_r_part(&self, r: u64) -> Result<bool> {
        if r == 0 {
            return Err(Error::ZeroModulus);
        }
        Ok(self.multiplicities()?.iter().all(|&m| m % r == 1 % r))
    }

    /// A 1-part is the same thing as a partition into copies of the pattern.
    pub fn is_partition(&self) -> Result<bool> {
        Ok(self.r_part_value()? == Some(1))
    }

    /// Merges entries with equal image, the canonical exported form.
    pub fn image_weights(&self) -> Result<BTreeMap<PointSet, u64>> {
        let mut out: BTreeMap<PointSet, u64> = BTreeMap::new();
        for (phi, w) in self.entries() {
            let image = phi.apply_set(&self.pattern)?;
            let slot = out.entry(image).or_insert(0);
            *slot = checked_add(*slot, w)?;
        }
        Ok(out)
    }

    pub fn total_weight(&self) -> Result<u64> {
        let mut total = 0u64;
        for (_, w) in self.entries() {
            total = checked_add(total, w)?;
        }
        Ok(total)
    }
}

/// The family of all translates `X + p` of a pattern `X` in its own cube,
/// each with weight 1. Every point then lies in exactly `|X|` translates, so
/// the result is an `|X|`-part of the cube.
pub fn translation_family(pattern: &PointSet) -> Result<WeightFunction> {
    build_translation_rpart(pattern, pattern.dimension())
}

/// Includes the pattern into the first `k` coordinates of the `n`-cube and
/// weighs every one of the `2^n` translates of that image with 1. Each point
/// lies in `|X|` translates (count the pairs (translate, contained point):
/// the translate of `x` by `p` contains `q` exactly when `p = x + q`), so
/// the result is an `|X|`-part of the `n`-cube.
pub fn build_translation_rpart(pattern: &PointSet, n: usize) -> Result<WeightFunction> {
    let k = pattern.dimension();
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: MAX_DIM,
        });
    }
    if k > n {
        return Err(Error::SourceExceedsTarget {
            pattern: k,
            target: n,
        });
    }
    let coords: Vec<usize> = (1..=k).collect();
    let mut wf = WeightFunction::new(pattern.clone(), n)?;
    for p in all_points(n) {
        wf.add(Embedding::new(&coords, p)?, 1)?;
    }
    Ok(wf)
}

/// Outcome of a full multiplicity sweep against a target value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverReport {
    /// `true` for the exact-`r` check, `false` for the mod-`r` check.
    pub exact: bool,
    pub r: u64,
    pub ok: bool,
    /// Points whose multiplicity fails the check, with that multiplicity.
    pub violations: Vec<(Point, u64)>,
}

/// Checks that every point of the target cube has multiplicity exactly `r`.
pub fn verify_rpart(wf: &WeightFunction, r: u64) -> Result<CoverReport> {
    if r == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut violations = Vec::new();
    for (p, m) in all_points(wf.target_dim()).zip(wf.multiplicities()?) {
        if m != r {
            violations.push((p, m));
        }
    }
    Ok(CoverReport {
        exact: true,
        r,
        ok: violations.is_empty(),
        violations,
    })
}

/// Checks that every point of the target cube has multiplicity congruent to
/// 1 modulo `r`.
pub fn verify_modpart(wf: &WeightFunction, r: u64) -> Result<CoverReport> {
    if r == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut violations = Vec::new();
    for (p, m) in all_points(wf.target_dim()).zip(wf.multiplicities()?) {
        if m % r != 1 % r {
            violations.push((p, m));
        }
    }
    Ok(CoverReport {
        exact: false,
        r,
        ok: violations.is_empty(),
        violations,
    })
}

fn checked_add(a: u64, b: u64) -> Result<u64> {
    match a.checked_add(b) {
        Some(s) if s <= MAX_WEIGHT => Ok(s),
        _ => Err(Error::WeightOverflow),
    }
}

fn checked_mul(a: u64, b: u64) -> Result<u64> {
    match a.checked_mul(b) {
        Some(s) if s <= MAX_WEIGHT => Ok(s),
        _ => Err(Error::WeightOverflow),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometry::{count_embeddings, enumerate_embeddings, find_isometry};
    use proptest::prelude::*;

    fn set(words: &[&str]) -> PointSet {
        PointSet::parse(words).unwrap()
    }

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    #[test]
    fn translation_family_is_a_size_part() {
        let x = set(&["00", "01"]);
        let wf = translation_family(&x).unwrap();
        assert_eq!(wf.len(), 4);
        assert_eq!(wf.r_part_value().unwrap(), Some(2));
        assert!(wf.is_r_part(2).unwrap());
        assert!(!wf.is_r_part(1).unwrap());

        let single = set(&["0"]);
        let wf = translation_family(&single).unwrap();
        assert!(wf.is_partition().unwrap());

        let triple = set(&["000", "011", "101"]);
        assert_eq!(translation_family(&triple).unwrap().r_part_value().unwrap(), Some(3));
    }

    #[test]
    fn two_balls_partition_the_three_cube() {
        let ball = set(&["000", "001", "010", "100"]);
        let other = set(&["011", "101", "110", "111"]);
        let mut wf = WeightFunction::new(ball.clone(), 3).unwrap();
        wf.add(find_isometry(&ball, &ball).unwrap().unwrap(), 1).unwrap();
        wf.add(find_isometry(&ball, &other).unwrap().unwrap(), 1).unwrap();
        assert!(wf.is_partition().unwrap());
        assert_eq!(wf.r_part_value().unwrap(), Some(1));
        assert!(wf.is_mod_r_part(5).unwrap());

        let blocks = wf.image_weights().unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.values().all(|&w| w == 1));
    }

    #[test]
    fn multiplicity_agrees_with_vector() {
        let x = set(&["00", "01", "11"]);
        let mut wf = WeightFunction::new(x.clone(), 3).unwrap();
        for (i, phi) in enumerate_embeddings(2, 3).unwrap().enumerate() {
            if i % 7 == 0 {
                wf.add(phi, (i as u64 % 3) + 1).unwrap();
            }
        }
        let mult = wf.multiplicities().unwrap();
        for p in all_points(3) {
            assert_eq!(wf.multiplicity(&p).unwrap(), mult[p.bits() as usize]);
        }
    }

    #[test]
    fn mod_part_recognition() {
        // Weight the identity embedding 3 times and a disjoint translate 1
        // time: multiplicities are 3 on one edge, 1 on the other.
        let x = set(&["0", "1"]);
        let mut wf = WeightFunction::new(x.clone(), 1).unwrap();
        let id = Embedding::identity(1).unwrap();
        wf.add(id.clone(), 3).unwrap();
        assert!(wf.is_r_part(3).unwrap());
        assert!(wf.is_mod_r_part(2).unwrap());
        assert!(!wf.is_mod_r_part(3).unwrap());
        // Modulus 1 is vacuous.
        assert!(wf.is_mod_r_part(1).unwrap());
        assert!(matches!(wf.is_mod_r_part(0), Err(Error::ZeroModulus)));

        wf.add(id, 1).unwrap();
        assert_eq!(wf.weight_of(&Embedding::identity(1).unwrap()), 4);
    }

    #[test]
    fn arithmetic_guard_rails() {
        let x = set(&["0"]);
        let mut wf = WeightFunction::new(x.clone(), 1).unwrap();
        let id = Embedding::identity(1).unwrap();
        assert!(matches!(wf.add(id.clone(), 0), Err(Error::ZeroWeight)));
        wf.add(id.clone(), MAX_WEIGHT).unwrap();
        assert!(matches!(wf.add(id.clone(), 1), Err(Error::WeightOverflow)));
        assert!(matches!(wf.scale(2), Err(Error::WeightOverflow)));
        assert!(matches!(wf.scale(0), Err(Error::ZeroWeight)));

        let y = set(&["0", "1"]);
        let other = WeightFunction::new(y, 1).unwrap();
        assert!(matches!(wf.merge(&other), Err(Error::PatternMismatch)));
    }

    #[test]
    fn push_forward_moves_images() {
        let x = set(&["0", "1"]);
        let mut wf = WeightFunction::new(x.clone(), 1).unwrap();
        wf.add(Embedding::identity(1).unwrap(), 5).unwrap();
        let outer = Embedding::new(&[2], pt("10")).unwrap();
        let pushed = wf.push_forward(&outer).unwrap();
        assert_eq!(pushed.target_dim(), 2);
        let images = pushed.image_weights().unwrap();
        assert_eq!(images.len(), 1);
        assert_eq!(images.get(&set(&["10", "11"])), Some(&5));
    }

    #[test]
    fn precompose_translation_keeps_images() {
        let y = set(&["10", "11"]);
        let mut wf = WeightFunction::new(y.clone(), 3).unwrap();
        for (i, phi) in enumerate_embeddings(2, 3).unwrap().enumerate() {
            if i % 5 == 0 {
                wf.add(phi, 1 + (i as u64 % 2)).unwrap();
            }
        }
        let shifted = wf.precompose_translation(&pt("10")).unwrap();
        assert_eq!(shifted.pattern(), &set(&["00", "01"]));
        assert_eq!(shifted.image_weights().unwrap(), wf.image_weights().unwrap());
        assert_eq!(shifted.multiplicities().unwrap(), wf.multiplicities().unwrap());
    }

    #[test]
    fn translation_rpart_in_a_larger_cube() {
        // A single point includes as {0}; the translates are the two
        // singletons, weight 1 each.
        let single = set(&["0"]);
        let wf = build_translation_rpart(&single, 1).unwrap();
        let images = wf.image_weights().unwrap();
        assert_eq!(images.len(), 2);
        assert!(images.values().all(|&w| w == 1));

        // The full segment has only one translate image, carrying both
        // translation weights.
        let segment = set(&["0", "1"]);
        let wf = build_translation_rpart(&segment, 1).unwrap();
        let images = wf.image_weights().unwrap();
        assert_eq!(images.len(), 1);
        assert_eq!(images.get(&segment), Some(&2));

        // Three corners of the square: every point of the square is in 3
        // translates.
        let corners = set(&["00", "01", "10"]);
        let wf = build_translation_rpart(&corners, 2).unwrap();
        assert_eq!(wf.r_part_value().unwrap(), Some(3));

        // Every non-empty pattern in the square is an |X|-part of every
        // cube up to dimension 4.
        for mask in 1u32..16 {
            let points: Vec<Point> = (0..4)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| Point::new(2, i).unwrap())
                .collect();
            let x = PointSet::new(2, points).unwrap();
            for n in 2..=4 {
                let wf = build_translation_rpart(&x, n).unwrap();
                let report = verify_rpart(&wf, x.len() as u64).unwrap();
                assert!(report.ok, "mask={mask} n={n}");
            }
        }

        assert!(matches!(
            build_translation_rpart(&set(&["00"]), 1),
            Err(Error::SourceExceedsTarget { .. })
        ));
    }

    #[test]
    fn verification_reports_list_failing_points() {
        let full = PointSet::full_cube(2).unwrap();
        let mut wf = WeightFunction::new(full.clone(), 2).unwrap();
        wf.add(Embedding::identity(2).unwrap(), 1).unwrap();
        assert!(verify_rpart(&wf, 1).unwrap().ok);
        assert!(verify_modpart(&wf, 2).unwrap().ok);
        assert!(verify_modpart(&wf, 1).unwrap().ok);

        let empty = WeightFunction::new(full, 2).unwrap();
        let report = verify_rpart(&empty, 1).unwrap();
        assert!(!report.ok);
        assert_eq!(report.violations.len(), 4);
        assert!(report.violations.iter().all(|(_, m)| *m == 0));
        // Mod 1 every multiplicity is congruent to 1.
        assert!(verify_modpart(&empty, 1).unwrap().ok);

        assert_eq!(verify_rpart(&empty, 0), Err(Error::ZeroModulus));
    }

    proptest! {
        // Double counting: summing multiplicities over the cube equals
        // summing weight times pattern size over entries.
        #[test]
        fn double_counting_identity(seeds in prop::collection::vec((0u64..u64::MAX, 1u64..20), 1..12)) {
            let x = set(&["00", "01", "11"]);
            let mut wf = WeightFunction::new(x.clone(), 4).unwrap();
            let total = count_embeddings(2, 4).unwrap() as u64;
            for (seed, w) in seeds {
                let phi = enumerate_embeddings(2, 4).unwrap().nth((seed % total) as usize).unwrap();
                wf.add(phi, w).unwrap();
            }
            let mult_sum: u64 = wf.multiplicities().unwrap().iter().sum();
            let weight_sum = wf.total_weight().unwrap() * x.len() as u64;
            prop_assert_eq!(mult_sum, weight_sum);
        }
    }
}
