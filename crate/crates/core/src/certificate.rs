//! Self-describing certificates for covers, partitions, and edge
//! decompositions, with a single verification entry point.
//!
//! A certificate is a JSON document with a `version` field ("1") and a
//! `kind` field naming one of four claims: an exact `r`-fold cover
//! ("rpart"), a cover with every multiplicity congruent to 1 modulo `r`
//! ("modpart"), a partition into copies of a pattern ("partition"), or a
//! partition of the cube's edges into paths ("edge-decomposition"). The
//! verifier rechecks each claim from first principles: copies must be
//! genuine isometric copies of the pattern, multiplicities are recounted at
//! every point, and edge coverage is recounted per edge. Serialization is
//! byte-stable: fixed key order, sorted entries, two-space indentation, one
//! trailing newline.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::covers::{WeightFunction, MAX_MULTIPLICITY_DIM};
use crate::cube::{all_points, Point, PointSet};
use crate::edges::{cube_edge_count, CubePath, MAX_PATH_DIM};
use crate::error::{Error, Result};
use crate::isometry::find_isometry;

/// The claim a certificate makes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateKind {
    RPart,
    ModPart,
    Partition,
    EdgeDecomposition,
}

impl CertificateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CertificateKind::RPart => "rpart",
            CertificateKind::ModPart => "modpart",
            CertificateKind::Partition => "partition",
            CertificateKind::EdgeDecomposition => "edge-decomposition",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "rpart" => Ok(CertificateKind::RPart),
            "modpart" => Ok(CertificateKind::ModPart),
            "partition" => Ok(CertificateKind::Partition),
            "edge-decomposition" => Ok(CertificateKind::EdgeDecomposition),
            other => Err(Error::MalformedCertificate(format!(
                "unknown kind {other:?}"
            ))),
        }
    }
}

impl fmt::Display for CertificateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A parsed certificate, ready to verify or serialize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    RPart {
        pattern: PointSet,
        n: usize,
        r: u64,
        entries: Vec<(PointSet, u64)>,
    },
    ModPart {
        pattern: PointSet,
        n: usize,
        r: u64,
        entries: Vec<(PointSet, u64)>,
    },
    Partition {
        pattern: PointSet,
        n: usize,
        blocks: Vec<PointSet>,
    },
    EdgeDecomposition {
        n: usize,
        segment: Option<usize>,
        paths: Vec<Vec<Point>>,
    },
}

/// Result of re-checking a certificate, with one line per violation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub kind: CertificateKind,
    pub ok: bool,
    pub violations: Vec<String>,
}

// On-disk shape shared by all kinds; field order here is the canonical key
// order in the emitted JSON.
#[derive(Serialize, Deserialize)]
struct Doc {
    version: String,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    r: Option<u64>,
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pattern: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    entries: Option<Vec<DocEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    segment: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    paths: Option<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize)]
struct DocEntry {
    copy: Vec<String>,
    weight: u64,
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::MalformedCertificate(msg.into())
}

fn parse_point_list(words: &[String], dim: usize, what: &str) -> Result<PointSet> {
    let set = PointSet::parse(words)
        .map_err(|e| malformed(format!("{what}: {e}")))?;
    if set.dimension() != dim {
        return Err(malformed(format!(
            "{what}: dimension {} does not match n = {dim}",
            set.dimension()
        )));
    }
    Ok(set)
}

impl Certificate {
    /// Packages a weight function as an exact-cover claim; entries are
    /// merged by image and sorted.
    pub fn from_rpart(wf: &WeightFunction, r: u64) -> Result<Self> {
        Ok(Certificate::RPart {
            pattern: wf.pattern().clone(),
            n: wf.target_dim(),
            r,
            entries: wf.image_weights()?.into_iter().collect(),
        })
    }

    /// Packages a weight function as a mod-`r` claim; entries are merged by
    /// image and sorted.
    pub fn from_modpart(wf: &WeightFunction, r: u64) -> Result<Self> {
        Ok(Certificate::ModPart {
            pattern: wf.pattern().clone(),
            n: wf.target_dim(),
            r,
            entries: wf.image_weights()?.into_iter().collect(),
        })
    }

    pub fn from_partition(pattern: PointSet, n: usize, blocks: Vec<PointSet>) -> Result<Self> {
        let mut blocks = blocks;
        blocks.sort();
        for b in &blocks {
            if b.dimension() != n {
                return Err(Error::DimensionMismatch {
                    left: b.dimension(),
                    right: n,
                });
            }
        }
        Ok(Certificate::Partition { pattern, n, blocks })
    }

    pub fn from_edge_decomposition(
        n: usize,
        segment: Option<usize>,
        paths: &[CubePath],
    ) -> Result<Self> {
        Ok(Certificate::EdgeDecomposition {
            n,
            segment,
            paths: paths.iter().map(|p| p.vertices().to_vec()).collect(),
        })
    }

    pub fn kind(&self) -> CertificateKind {
        match self {
            Certificate::RPart { .. } => CertificateKind::RPart,
            Certificate::ModPart { .. } => CertificateKind::ModPart,
            Certificate::Partition { .. } => CertificateKind::Partition,
            Certificate::EdgeDecomposition { .. } => CertificateKind::EdgeDecomposition,
        }
    }

    /// The `r` recorded in the certificate, if its kind carries one.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            Certificate::RPart { r, .. } | Certificate::ModPart { r, .. } => Some(*r),
            _ => None,
        }
    }

    pub fn target_dim(&self) -> usize {
        match self {
            Certificate::RPart { n, .. }
            | Certificate::ModPart { n, .. }
            | Certificate::Partition { n, .. }
            | Certificate::EdgeDecomposition { n, .. } => *n,
        }
    }

    fn to_doc(&self) -> Doc {
        let mut doc = Doc {
            version: "1".to_string(),
            kind: self.kind().as_str().to_string(),
            k: None,
            r: None,
            n: self.target_dim(),
            pattern: None,
            entries: None,
            blocks: None,
            segment: None,
            paths: None,
        };
        match self {
            Certificate::RPart {
                pattern, r, entries, ..
            }
            | Certificate::ModPart {
                pattern, r, entries, ..
            } => {
                doc.k = Some(pattern.dimension());
                doc.r = Some(*r);
                doc.pattern = Some(pattern.to_strings());
                doc.entries = Some(
                    entries
                        .iter()
                        .map(|(copy, weight)| DocEntry {
                            copy: copy.to_strings(),
                            weight: *weight,
                        })
                        .collect(),
                );
            }
            Certificate::Partition {
                pattern, blocks, ..
            } => {
                doc.k = Some(pattern.dimension());
                doc.pattern = Some(pattern.to_strings());
                doc.blocks = Some(blocks.iter().map(|b| b.to_strings()).collect());
            }
            Certificate::EdgeDecomposition { segment, paths, .. } => {
                doc.segment = *segment;
                doc.paths = Some(
                    paths
                        .iter()
                        .map(|p| p.iter().map(|v| v.to_string()).collect())
                        .collect(),
                );
            }
        }
        doc
    }

    /// Canonical JSON form: fixed key order, two-space indent, trailing
    /// newline. Parsing this output reproduces the certificate exactly.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Doc =
            serde_json::from_str(text).map_err(|e| malformed(e.to_string()))?;
        if doc.version != "1" {
            return Err(malformed(format!(
                "unsupported version {:?}",
                doc.version
            )));
        }
        let kind = CertificateKind::parse(&doc.kind)?;
        let n = doc.n;
        match kind {
            CertificateKind::RPart | CertificateKind::ModPart => {
                let pattern_words = doc
                    .pattern
                    .ok_or_else(|| malformed("missing pattern"))?;
                let pattern = PointSet::parse(&pattern_words)
                    .map_err(|e| malformed(format!("pattern: {e}")))?;
                if let Some(k) = doc.k {
                    if k != pattern.dimension() {
                        return Err(malformed(format!(
                            "k = {k} does not match pattern dimension {}",
                            pattern.dimension()
                        )));
                    }
                }
                let r = doc.r.ok_or_else(|| malformed("missing r"))?;
                if r == 0 {
                    return Err(malformed("r must be at least 1"));
                }
                let raw = doc.entries.ok_or_else(|| malformed("missing entries"))?;
                let mut entries = Vec::with_capacity(raw.len());
                for (i, e) in raw.iter().enumerate() {
                    if e.weight == 0 {
                        return Err(malformed(format!("entry {i}: weight must be positive")));
                    }
                    entries.push((
                        parse_point_list(&e.copy, n, &format!("entry {i}"))?,
                        e.weight,
                    ));
                }
                entries.sort();
                if kind == CertificateKind::RPart {
                    Ok(Certificate::RPart {
                        pattern,
                        n,
                        r,
                        entries,
                    })
                } else {
                    Ok(Certificate::ModPart {
                        pattern,
                        n,
                        r,
                        entries,
                    })
                }
            }
            CertificateKind::Partition => {
                let pattern_words = doc
                    .pattern
                    .ok_or_else(|| malformed("missing pattern"))?;
                let pattern = PointSet::parse(&pattern_words)
                    .map_err(|e| malformed(format!("pattern: {e}")))?;
                let raw = doc.blocks.ok_or_else(|| malformed("missing blocks"))?;
                let mut blocks = Vec::with_capacity(raw.len());
                for (i, b) in raw.iter().enumerate() {
                    blocks.push(parse_point_list(b, n, &format!("block {i}"))?);
                }
                blocks.sort();
                Ok(Certificate::Partition { pattern, n, blocks })
            }
            CertificateKind::EdgeDecomposition => {
                let raw = doc.paths.ok_or_else(|| malformed("missing paths"))?;
                let mut paths = Vec::with_capacity(raw.len());
                for (i, p) in raw.iter().enumerate() {
                    let mut vertices = Vec::with_capacity(p.len());
                    for w in p {
                        let v: Point = w
                            .parse()
                            .map_err(|e| malformed(format!("path {i}: {e}")))?;
                        if v.dimension() != n {
                            return Err(malformed(format!(
                                "path {i}: vertex {w} does not have dimension {n}"
                            )));
                        }
                        vertices.push(v);
                    }
                    if vertices.is_empty() {
                        return Err(malformed(format!("path {i} is empty")));
                    }
                    paths.push(vertices);
                }
                Ok(Certificate::EdgeDecomposition { n, segment: doc.segment, paths })
            }
        }
    }

    /// Re-checks the certificate's claim from first principles.
    pub fn verify(&self) -> Result<VerificationReport> {
        let violations = match self {
            Certificate::RPart {
                pattern, n, r, entries,
            } => verify_cover(pattern, *n, entries, CoverGoal::Exact(*r))?,
            Certificate::ModPart {
                pattern, n, r, entries,
            } => verify_cover(pattern, *n, entries, CoverGoal::Congruent(*r))?,
            Certificate::Partition { pattern, n, blocks } => {
                let entries: Vec<(PointSet, u64)> =
                    blocks.iter().map(|b| (b.clone(), 1)).collect();
                verify_cover(pattern, *n, &entries, CoverGoal::Exact(1))?
            }
            Certificate::EdgeDecomposition { n, segment, paths } => {
                verify_edges(*n, *segment, paths)?
            }
        };
        Ok(VerificationReport {
            kind: self.kind(),
            ok: violations.is_empty(),
            violations,
        })
    }
}

enum CoverGoal {
    Exact(u64),
    Congruent(u64),
}

fn verify_cover(
    pattern: &PointSet,
    n: usize,
    entries: &[(PointSet, u64)],
    goal: CoverGoal,
) -> Result<Vec<String>> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    if n > MAX_MULTIPLICITY_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: MAX_MULTIPLICITY_DIM,
        });
    }
    let mut violations = Vec::new();
    let mut mult = vec![0u128; 1usize << n];
    for (copy, weight) in entries {
        if copy.dimension() != n {
            return Err(Error::DimensionMismatch {
                left: copy.dimension(),
                right: n,
            });
        }
        if find_isometry(pattern, copy)?.is_none() {
            violations.push(format!(
                "copy {{{}}} is not an isometric copy of the pattern",
                copy.to_strings().join(",")
            ));
        }
        for p in copy.iter() {
            mult[p.bits() as usize] += *weight as u128;
        }
    }
    for p in all_points(n) {
        let m = mult[p.bits() as usize];
        match goal {
            CoverGoal::Exact(r) => {
                if m != r as u128 {
                    violations.push(format!("point {p} has multiplicity {m}, expected {r}"));
                }
            }
            CoverGoal::Congruent(r) => {
                if m % r as u128 != 1 % r as u128 {
                    violations.push(format!(
                        "point {p} has multiplicity {m}, expected 1 mod {r}"
                    ));
                }
            }
        }
    }
    Ok(violations)
}

fn verify_edges(n: usize, segment: Option<usize>, paths: &[Vec<Point>]) -> Result<Vec<String>> {
    if n == 0 || n > MAX_PATH_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: MAX_PATH_DIM,
        });
    }
    let mut violations = Vec::new();
    let mut counts: BTreeMap<(Point, Point), u64> = BTreeMap::new();
    for (i, vertices) in paths.iter().enumerate() {
        match CubePath::new(vertices.clone()) {
            Ok(path) => {
                if let Some(s) = segment {
                    if path.edge_len() != s {
                        violations.push(format!(
                            "path {i} has {} edges, expected {s}",
                            path.edge_len()
                        ));
                    }
                }
                for e in path.edges() {
                    *counts.entry(e).or_insert(0) += 1;
                }
            }
            Err(Error::NotAdjacent(a, b)) => {
                violations.push(format!(
                    "path {i}: vertices at positions {a} and {b} are not adjacent"
                ));
            }
            Err(e) => return Err(e),
        }
    }
    for ((a, b), c) in &counts {
        if *c > 1 {
            violations.push(format!("edge {{{a},{b}}} is covered {c} times"));
        }
    }
    let covered = counts.len() as u64;
    let expected = cube_edge_count(n)?;
    if covered < expected {
        for p in all_points(n) {
            for i in 1..=n {
                let q = p.flip_coordinate(i)?;
                if p < q && !counts.contains_key(&(p.clone(), q.clone())) {
                    violations.push(format!("edge {{{p},{q}}} is not covered"));
                }
            }
        }
    }
    Ok(violations)
}
