//! Vertices of the Hamming cube `{0,1}^n` and the basic metric operations.
//!
//! Points are binary words stored in a fixed-width machine word, coordinate 1
//! in the most significant position of the `n`-bit window. With that layout
//! the numeric order of the stored word equals lexicographic order on the
//! coordinate sequence, which is the canonical order used for all set
//! iteration and serialized output.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported cube dimension.
pub const MAX_DIM: usize = 24;

/// A vertex of `{0,1}^n`, with 1-based coordinate indexing in all interfaces.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    dim: u8,
    bits: u32,
}

impl Point {
    /// Builds a point from its packed coordinate word. Bit `dim - i` of
    /// `bits` holds coordinate `i`.
    pub fn new(dim: usize, bits: u32) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 0,
                max: MAX_DIM,
            });
        }
        if dim < 32 && bits >> dim != 0 {
            return Err(Error::BadPointString(format!("{bits:b} exceeds {dim} bits")));
        }
        Ok(Point {
            dim: dim as u8,
            bits,
        })
    }

    pub fn zero(dim: usize) -> Result<Self> {
        Point::new(dim, 0)
    }

    /// The `i`-th standard unit vector (single 1 in coordinate `i`).
    pub fn unit(dim: usize, i: usize) -> Result<Self> {
        if i == 0 || i > dim {
            return Err(Error::DimensionOutOfRange {
                dim: i,
                min: 1,
                max: dim,
            });
        }
        Point::new(dim, 1 << (dim - i))
    }

    pub fn dimension(&self) -> usize {
        self.dim as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Coordinate `i` (1-based), as 0 or 1.
    pub fn coordinate(&self, i: usize) -> u8 {
        debug_assert!(i >= 1 && i <= self.dim as usize);
        ((self.bits >> (self.dim as usize - i)) & 1) as u8
    }

    pub fn flip_coordinate(&self, i: usize) -> Result<Self> {
        if i == 0 || i > self.dim as usize {
            return Err(Error::DimensionOutOfRange {
                dim: i,
                min: 1,
                max: self.dim as usize,
            });
        }
        Ok(Point {
            dim: self.dim,
            bits: self.bits ^ (1 << (self.dim as usize - i)),
        })
    }

    /// Coordinate-wise addition mod 2.
    pub fn xor(&self, other: &Point) -> Result<Self> {
        check_same_dim(self.dimension(), other.dimension())?;
        Ok(Point {
            dim: self.dim,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn complement(&self) -> Self {
        let mask = if self.dim == 0 {
            0
        } else {
            u32::MAX >> (32 - self.dim as u32)
        };
        Point {
            dim: self.dim,
            bits: self.bits ^ mask,
        }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    /// Appends one coordinate, producing a point of dimension `n + 1` whose
    /// last coordinate is `last`.
    pub fn append(&self, last: u8) -> Result<Self> {
        Point::new(self.dimension() + 1, (self.bits << 1) | u32::from(last & 1))
    }

    /// Splits off the last coordinate: `(a, c)` with `a` of dimension `n - 1`.
    pub fn split_last(&self) -> Result<(Self, u8)> {
        if self.dim == 0 {
            return Err(Error::DimensionOutOfRange {
                dim: 0,
                min: 1,
                max: MAX_DIM,
            });
        }
        let last = (self.bits & 1) as u8;
        Ok((
            Point {
                dim: self.dim - 1,
                bits: self.bits >> 1,
            },
            last,
        ))
    }

    /// Concatenation `(self, tail)` in `{0,1}^{m+d}`.
    pub fn concat(&self, tail: &Point) -> Result<Self> {
        Point::new(
            self.dimension() + tail.dimension(),
            (self.bits << tail.dimension()) | tail.bits,
        )
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.dimension() {
            write!(f, "{}", self.coordinate(i))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({self})")
    }
}

impl FromStr for Point {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() || s.len() > MAX_DIM {
            return Err(Error::BadPointString(s.to_string()));
        }
        let mut bits = 0u32;
        for c in s.chars() {
            bits <<= 1;
            match c {
                '0' => {}
                '1' => bits |= 1,
                _ => return Err(Error::BadPointString(s.to_string())),
            }
        }
        Point::new(s.len(), bits)
    }
}

impl Serialize for Point {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

/// Hamming distance: the number of entries where `x` and `y` differ.
pub fn hamming_distance(x: &Point, y: &Point) -> Result<usize> {
    check_same_dim(x.dimension(), y.dimension())?;
    Ok((x.bits ^ y.bits).count_ones() as usize)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Parity of the coordinate sum.
pub fn parity(x: &Point) -> Parity {
    if x.weight() % 2 == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Iterates all `2^n` points of `{0,1}^n` in canonical order.
pub fn all_points(dim: usize) -> impl Iterator<Item = Point> {
    let count: u64 = 1 << dim;
    (0..count).map(move |bits| Point {
        dim: dim as u8,
        bits: bits as u32,
    })
}

/// A deduplicated finite subset of `{0,1}^n`, kept in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointSet {
    dim: u8,
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(dim: usize, points: impl IntoIterator<Item = Point>) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 0,
                max: MAX_DIM,
            });
        }
        let mut points: Vec<Point> = points.into_iter().collect();
        for p in &points {
            check_same_dim(p.dimension(), dim)?;
        }
        points.sort();
        points.dedup();
        Ok(PointSet {
            dim: dim as u8,
            points,
        })
    }

    pub fn empty(dim: usize) -> Result<Self> {
        PointSet::new(dim, std::iter::empty())
    }

    /// The whole cube `{0,1}^n`.
    pub fn full_cube(dim: usize) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::DimensionOutOfRange {
                dim,
                min: 0,
                max: MAX_DIM,
            });
        }
        Ok(PointSet {
            dim: dim as u8,
            points: all_points(dim).collect(),
        })
    }

    /// Parses a set from binary strings; all words must share one length.
    pub fn parse(words: &[impl AsRef<str>]) -> Result<Self> {
        let mut points = Vec::with_capacity(words.len());
        for w in words {
            points.push(w.as_ref().parse::<Point>()?);
        }
        let dim = match points.first() {
            Some(p) => p.dimension(),
            None => return Err(Error::EmptyPattern),
        };
        PointSet::new(dim, points)
    }

    pub fn dimension(&self) -> usize {
        self.dim as usize
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Point> {
        self.points.iter()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.points.iter().map(|p| p.to_string()).collect()
    }

    /// Translate by `p`: coordinate-wise addition mod 2.
    pub fn translate(&self, p: &Point) -> Result<Self> {
        check_same_dim(self.dimension(), p.dimension())?;
        PointSet::new(self.dimension(), self.points.iter().map(|q| q.xor(p).unwrap()))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.points.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for PointSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.points.len()))?;
        for p in &self.points {
            seq.serialize_element(&p.to_string())?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = PointSet;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-empty array of binary strings")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<PointSet, A::Error> {
                let mut words: Vec<String> = Vec::new();
                while let Some(w) = seq.next_element::<String>()? {
                    words.push(w);
                }
                PointSet::parse(&words).map_err(de::Error::custom)
            }
        }
        deserializer.deserialize_seq(V)
    }
}

/// Splits a set by the value of the last coordinate:
/// `minus = {a : (a,0) in A}`, `plus = {a : (a,1) in A}`, both of dimension
/// `n - 1`.
pub fn layer_split(set: &PointSet) -> Result<(PointSet, PointSet)> {
    let n = set.dimension();
    if n == 0 {
        return Err(Error::DimensionOutOfRange {
            dim: 0,
            min: 1,
            max: MAX_DIM,
        });
    }
    let mut minus = Vec::new();
    let mut plus = Vec::new();
    for p in set.iter() {
        let (a, c) = p.split_last()?;
        if c == 0 {
            minus.push(a);
        } else {
            plus.push(a);
        }
    }
    Ok((PointSet::new(n - 1, minus)?, PointSet::new(n - 1, plus)?))
}

fn check_same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}
