//! Exact cover instances and a dancing-links solver.
//!
//! An instance is a finite universe of named elements plus named blocks
//! (subsets). A solution is a set of blocks that hits every element exactly
//! once. The search is Algorithm X over a doubly linked sparse matrix,
//! written iteratively with an explicit trail so deep instances cannot
//! overflow the call stack, with a node budget that turns runaway searches
//! into an explicit inconclusive outcome instead of an endless spin.
//!
//! Determinism: the column with the fewest remaining rows is chosen first,
//! ties broken by lexicographically smallest element id; rows are tried in
//! block insertion order. The first solution found is therefore a pure
//! function of the instance.

use std::collections::HashMap;

use crate::cube::PointSet;
use crate::error::{Error, Result};
use crate::isometry::{enumerate_induced_copies, enumerate_isometric_copies};

/// Default node budget: one hundred million row trials.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Default cap on raw induced-copy maps when that family supplies blocks.
pub const MAX_INDUCED_MAPS: usize = 4_000_000;

/// Outcome of an exact cover search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Block ids forming an exact cover, in the order the search chose them.
    Solution(Vec<String>),
    /// The whole search space was exhausted; no exact cover exists.
    NoSolution,
    /// The node budget ran out first; existence is undecided.
    BudgetExhausted { nodes: u64 },
}

/// An exact cover instance under construction.
#[derive(Clone, Debug, Default)]
pub struct ExactCover {
    elements: Vec<String>,
    element_index: HashMap<String, usize>,
    blocks: Vec<(String, Vec<usize>)>,
    block_ids: HashMap<String, usize>,
}

impl ExactCover {
    pub fn new() -> Self {
        ExactCover::default()
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn add_element(&mut self, id: &str) -> Result<()> {
        if self.element_index.contains_key(id) {
            return Err(Error::DuplicateElement(id.to_string()));
        }
        self.element_index
            .insert(id.to_string(), self.elements.len());
        self.elements.push(id.to_string());
        Ok(())
    }

    /// Adds a named block. Elements must exist and may not repeat within the
    /// block; block ids may not repeat (equal contents under distinct ids
    /// are allowed and act as independent rows).
    pub fn add_block(&mut self, id: &str, members: &[impl AsRef<str>]) -> Result<()> {
        if self.block_ids.contains_key(id) {
            return Err(Error::DuplicateBlock(id.to_string()));
        }
        if members.is_empty() {
            return Err(Error::EmptyBlock);
        }
        let mut indices = Vec::with_capacity(members.len());
        for m in members {
            let m = m.as_ref();
            let idx = *self
                .element_index
                .get(m)
                .ok_or_else(|| Error::UnknownElement(m.to_string()))?;
            if indices.contains(&idx) {
                return Err(Error::DuplicateElement(m.to_string()));
            }
            indices.push(idx);
        }
        indices.sort_unstable();
        self.block_ids.insert(id.to_string(), self.blocks.len());
        self.blocks.push((id.to_string(), indices));
        Ok(())
    }

    pub fn solve_default(&self) -> SolveOutcome {
        self.solve(DEFAULT_BUDGET)
    }

    pub fn solve(&self, budget: u64) -> SolveOutcome {
        Dlx::build(self).search(budget, &self.blocks)
    }
}

// Array-based dancing links: node 0 is the root, nodes 1..=C are column
// headers, row nodes follow. All links are indices.
struct Dlx {
    left: Vec<u32>,
    right: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
    col: Vec<u32>,
    row_id: Vec<u32>,
    size: Vec<u32>,
    rank: Vec<u32>,
}

impl Dlx {
    fn build(instance: &ExactCover) -> Dlx {
        let c = instance.elements.len();
        let node_total = 1 + c + instance.blocks.iter().map(|(_, m)| m.len()).sum::<usize>();
        let mut dlx = Dlx {
            left: Vec::with_capacity(node_total),
            right: Vec::with_capacity(node_total),
            up: Vec::with_capacity(node_total),
            down: Vec::with_capacity(node_total),
            col: Vec::with_capacity(node_total),
            row_id: Vec::with_capacity(node_total),
            size: vec![0; c + 1],
            rank: vec![0; c + 1],
        };
        for i in 0..=c {
            dlx.left.push(if i == 0 { c as u32 } else { i as u32 - 1 });
            dlx.right.push(if i == c { 0 } else { i as u32 + 1 });
            dlx.up.push(i as u32);
            dlx.down.push(i as u32);
            dlx.col.push(i as u32);
            dlx.row_id.push(u32::MAX);
        }
        let mut order: Vec<usize> = (0..c).collect();
        order.sort_by(|&a, &b| instance.elements[a].cmp(&instance.elements[b]));
        for (pos, &elem) in order.iter().enumerate() {
            dlx.rank[elem + 1] = pos as u32;
        }
        for (row, (_, members)) in instance.blocks.iter().enumerate() {
            let first = dlx.left.len() as u32;
            for (offset, &elem) in members.iter().enumerate() {
                let node = dlx.left.len() as u32;
                let header = elem as u32 + 1;
                dlx.left.push(if offset == 0 { node } else { node - 1 });
                dlx.right.push(first);
                if offset > 0 {
                    dlx.right[node as usize - 1] = node;
                    dlx.left[first as usize] = node;
                }
                dlx.up.push(dlx.up[header as usize]);
                dlx.down.push(header);
                let above = dlx.up[header as usize];
                dlx.down[above as usize] = node;
                dlx.up[header as usize] = node;
                dlx.col.push(header);
                dlx.row_id.push(row as u32);
                dlx.size[header as usize] += 1;
            }
        }
        dlx
    }

    fn cover(&mut self, c: u32) {
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = r;
        self.left[r as usize] = l;
        let mut i = self.down[c as usize];
        while i != c {
            let mut j = self.right[i as usize];
            while j != i {
                let (u, d) = (self.up[j as usize], self.down[j as usize]);
                self.down[u as usize] = d;
                self.up[d as usize] = u;
                self.size[self.col[j as usize] as usize] -= 1;
                j = self.right[j as usize];
            }
            i = self.down[i as usize];
        }
    }

    fn uncover(&mut self, c: u32) {
        let mut i = self.up[c as usize];
        while i != c {
            let mut j = self.left[i as usize];
            while j != i {
                self.size[self.col[j as usize] as usize] += 1;
                self.down[self.up[j as usize] as usize] = j;
                self.up[self.down[j as usize] as usize] = j;
                j = self.left[j as usize];
            }
            i = self.up[i as usize];
        }
        let (l, r) = (self.left[c as usize], self.right[c as usize]);
        self.right[l as usize] = c;
        self.left[r as usize] = c;
    }

    fn apply_row(&mut self, r: u32) {
        let mut j = self.right[r as usize];
        while j != r {
            self.cover(self.col[j as usize]);
            j = self.right[j as usize];
        }
    }

    fn unapply_row(&mut self, r: u32) {
        let mut j = self.left[r as usize];
        while j != r {
            self.uncover(self.col[j as usize]);
            j = self.left[j as usize];
        }
    }

    fn choose_column(&self) -> u32 {
        let mut best = self.right[0];
        let mut c = best;
        while c != 0 {
            let better = (self.size[c as usize], self.rank[c as usize])
                < (self.size[best as usize], self.rank[best as usize]);
            if better {
                best = c;
            }
            c = self.right[c as usize];
        }
        best
    }

    fn search(&mut self, budget: u64, blocks: &[(String, Vec<usize>)]) -> SolveOutcome {
        let mut trail: Vec<(u32, u32)> = Vec::new();
        let mut nodes: u64 = 0;
        let mut retreating = false;
        loop {
            if !retreating {
                if self.right[0] == 0 {
                    let ids = trail
                        .iter()
                        .map(|&(_, r)| blocks[self.row_id[r as usize] as usize].0.clone())
                        .collect();
                    return SolveOutcome::Solution(ids);
                }
                let c = self.choose_column();
                self.cover(c);
                let r = self.down[c as usize];
                if r == c {
                    self.uncover(c);
                    retreating = true;
                    continue;
                }
                if nodes == budget {
                    self.uncover(c);
                    return SolveOutcome::BudgetExhausted { nodes };
                }
                nodes += 1;
                self.apply_row(r);
                trail.push((c, r));
            } else {
                let Some((c, r)) = trail.pop() else {
                    return SolveOutcome::NoSolution;
                };
                self.unapply_row(r);
                let next = self.down[r as usize];
                if next == c {
                    self.uncover(c);
                    continue;
                }
                if nodes == budget {
                    self.uncover(c);
                    return SolveOutcome::BudgetExhausted { nodes };
                }
                nodes += 1;
                self.apply_row(next);
                trail.push((c, next));
                retreating = false;
            }
        }
    }
}

/// Which copy notion supplies the candidate blocks of the search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CopyMode {
    /// Distance-preserving placements of the pattern.
    Isometric,
    /// Vertex sets inducing the same subgraph as the pattern; a strictly
    /// larger family in general.
    Induced,
}

/// Outcome of a partition search over copies of a pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PartitionOutcome {
    /// Pairwise disjoint copies of the pattern covering the whole cube, in
    /// canonical order.
    Partition(Vec<PointSet>),
    /// Proven impossible over the chosen copy family in this dimension.
    None,
    /// Node budget ran out; existence is undecided.
    BudgetExhausted { nodes: u64 },
}

/// Searches for a partition of `{0,1}^n` into isometric copies of `pattern`
/// by exact cover over all copies.
pub fn solve_cube_partition(
    pattern: &PointSet,
    n: usize,
    budget: u64,
) -> Result<PartitionOutcome> {
    solve_cube_partition_mode(pattern, n, budget, CopyMode::Isometric)
}

/// Searches for a partition of `{0,1}^n` into copies of `pattern` under the
/// chosen copy notion.
pub fn solve_cube_partition_mode(
    pattern: &PointSet,
    n: usize,
    budget: u64,
    mode: CopyMode,
) -> Result<PartitionOutcome> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    // A partition forces |X| to divide 2^n; skip the search when it cannot.
    if (1u64 << n) % pattern.len() as u64 != 0 {
        return Ok(PartitionOutcome::None);
    }
    let copies = match mode {
        CopyMode::Isometric => enumerate_isometric_copies(pattern, n)?,
        CopyMode::Induced => enumerate_induced_copies(pattern, n, MAX_INDUCED_MAPS)?,
    };
    let mut instance = ExactCover::new();
    let width = n.max(1);
    for p in crate::cube::all_points(n) {
        let mut id = p.to_string();
        if id.len() < width {
            id = "0".repeat(width - id.len()) + &id;
        }
        instance.add_element(&id)?;
    }
    for (i, copy) in copies.iter().enumerate() {
        let members = copy.to_strings();
        instance.add_block(&format!("c{i:06}"), &members)?;
    }
    match instance.solve(budget) {
        SolveOutcome::Solution(ids) => {
            let mut blocks: Vec<PointSet> = ids
                .iter()
                .map(|id| copies[id[1..].parse::<usize>().unwrap()].clone())
                .collect();
            blocks.sort();
            Ok(PartitionOutcome::Partition(blocks))
        }
        SolveOutcome::NoSolution => Ok(PartitionOutcome::None),
        SolveOutcome::BudgetExhausted { nodes } => {
            Ok(PartitionOutcome::BudgetExhausted { nodes })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(words: &[&str]) -> PointSet {
        PointSet::parse(words).unwrap()
    }

    #[test]
    fn builder_validation() {
        let mut inst = ExactCover::new();
        inst.add_element("a").unwrap();
        assert!(matches!(
            inst.add_element("a"),
            Err(Error::DuplicateElement(_))
        ));
        inst.add_element("b").unwrap();
        inst.add_block("blk", &["a"]).unwrap();
        assert!(matches!(
            inst.add_block("blk", &["b"]),
            Err(Error::DuplicateBlock(_))
        ));
        assert!(matches!(
            inst.add_block("x", &["zz"]),
            Err(Error::UnknownElement(_))
        ));
        assert!(matches!(
            inst.add_block("y", &["a", "a"]),
            Err(Error::DuplicateElement(_))
        ));
        let empty: [&str; 0] = [];
        assert!(matches!(inst.add_block("z", &empty), Err(Error::EmptyBlock)));
    }

    #[test]
    fn small_instance_first_solution_is_deterministic() {
        let mut inst = ExactCover::new();
        for e in ["a", "b", "c"] {
            inst.add_element(e).unwrap();
        }
        inst.add_block("A", &["a", "b"]).unwrap();
        inst.add_block("B", &["c"]).unwrap();
        inst.add_block("C", &["a"]).unwrap();
        inst.add_block("D", &["b", "c"]).unwrap();
        // Both {A,B} and {C,D} are solutions; the search commits to column
        // "a" first and row A before row C.
        assert_eq!(
            inst.solve_default(),
            SolveOutcome::Solution(vec!["A".into(), "B".into()])
        );
    }

    #[test]
    fn unsolvable_and_empty_instances() {
        let mut inst = ExactCover::new();
        inst.add_element("a").unwrap();
        inst.add_element("b").unwrap();
        inst.add_block("only", &["a"]).unwrap();
        assert_eq!(inst.solve_default(), SolveOutcome::NoSolution);

        let empty = ExactCover::new();
        assert_eq!(empty.solve_default(), SolveOutcome::Solution(vec![]));
    }

    #[test]
    fn budget_cuts_off_search() {
        let mut inst = ExactCover::new();
        for e in ["a", "b", "c"] {
            inst.add_element(e).unwrap();
        }
        // The edges of a triangle: any two overlap, so no exact cover
        // exists, but the search has rows to try. A zero budget stops it
        // before the first row trial.
        inst.add_block("1", &["a", "b"]).unwrap();
        inst.add_block("2", &["b", "c"]).unwrap();
        inst.add_block("3", &["c", "a"]).unwrap();
        assert_eq!(
            inst.solve(0),
            SolveOutcome::BudgetExhausted { nodes: 0 }
        );
        assert_eq!(inst.solve_default(), SolveOutcome::NoSolution);
    }

    #[test]
    fn cube_partition_by_balls_picks_antipodal_centres() {
        let ball = set(&["000", "001", "010", "100"]);
        let outcome = solve_cube_partition(&ball, 3, DEFAULT_BUDGET).unwrap();
        let expected = vec![
            set(&["000", "001", "010", "100"]),
            set(&["011", "101", "110", "111"]),
        ];
        assert_eq!(outcome, PartitionOutcome::Partition(expected));
    }

    #[test]
    fn cube_partition_small_cases() {
        // Edges tile every cube.
        let edge = set(&["0", "1"]);
        match solve_cube_partition(&edge, 3, DEFAULT_BUDGET).unwrap() {
            PartitionOutcome::Partition(blocks) => assert_eq!(blocks.len(), 4),
            other => panic!("expected partition, got {other:?}"),
        }
        // Diagonals tile the square.
        let diag = set(&["00", "11"]);
        match solve_cube_partition(&diag, 2, DEFAULT_BUDGET).unwrap() {
            PartitionOutcome::Partition(blocks) => {
                assert_eq!(blocks, vec![set(&["00", "11"]), set(&["01", "10"])]);
            }
            other => panic!("expected partition, got {other:?}"),
        }
        // Three points cannot divide a 16-point cube.
        let path = set(&["00", "01", "11"]);
        assert_eq!(
            solve_cube_partition(&path, 4, DEFAULT_BUDGET).unwrap(),
            PartitionOutcome::None
        );
    }

    #[test]
    fn induced_mode_searches_the_larger_family() {
        // Independent pairs (the induced family of a diagonal) tile the
        // 3-cube with four blocks.
        let diagonal = set(&["00", "11"]);
        match solve_cube_partition_mode(&diagonal, 3, DEFAULT_BUDGET, CopyMode::Induced).unwrap() {
            PartitionOutcome::Partition(blocks) => {
                assert_eq!(blocks.len(), 4);
                let mut seen = std::collections::BTreeSet::new();
                for b in &blocks {
                    let pts = b.points();
                    assert!(crate::cube::hamming_distance(&pts[0], &pts[1]).unwrap() >= 2);
                    for p in b.iter() {
                        assert!(seen.insert(*p), "overlap at {p}");
                    }
                }
                assert_eq!(seen.len(), 8);
            }
            other => panic!("expected partition, got {other:?}"),
        }
        // The rigid ball gives the same partition under either notion.
        let ball = set(&["000", "001", "010", "100"]);
        assert_eq!(
            solve_cube_partition_mode(&ball, 3, DEFAULT_BUDGET, CopyMode::Induced).unwrap(),
            solve_cube_partition(&ball, 3, DEFAULT_BUDGET).unwrap()
        );
    }

    #[test]
    fn partition_blocks_are_verified_copies_and_disjoint() {
        let pattern = set(&["00", "01"]);
        match solve_cube_partition(&pattern, 3, DEFAULT_BUDGET).unwrap() {
            PartitionOutcome::Partition(blocks) => {
                let mut seen = std::collections::BTreeSet::new();
                for b in &blocks {
                    assert!(crate::isometry::is_isometric_copy(&pattern, b).unwrap());
                    for p in b.iter() {
                        assert!(seen.insert(*p), "overlap at {p}");
                    }
                }
                assert_eq!(seen.len(), 8);
            }
            other => panic!("expected partition, got {other:?}"),
        }
    }

    // Reference search: pick the lowest uncovered element, try every block
    // containing it that avoids covered elements. Complete for existence.
    fn oracle_has_cover(universe: u32, blocks: &[u32]) -> bool {
        fn go(remaining: u32, blocks: &[u32]) -> bool {
            if remaining == 0 {
                return true;
            }
            let lowest = remaining & remaining.wrapping_neg();
            blocks
                .iter()
                .any(|&b| b & lowest != 0 && b & !remaining == 0 && go(remaining & !b, blocks))
        }
        go(universe, blocks)
    }

    proptest! {
        #[test]
        fn agrees_with_reference_search(
            n_elems in 1usize..7,
            masks in prop::collection::vec(1u32..128, 1..10),
        ) {
            let universe = (1u32 << n_elems) - 1;
            let masks: Vec<u32> = masks
                .into_iter()
                .map(|m| m & universe)
                .filter(|&m| m != 0)
                .collect();
            prop_assume!(!masks.is_empty());

            let mut inst = ExactCover::new();
            let names: Vec<String> = (0..n_elems).map(|i| format!("e{i}")).collect();
            for name in &names {
                inst.add_element(name).unwrap();
            }
            for (i, &mask) in masks.iter().enumerate() {
                let members: Vec<&String> = (0..n_elems)
                    .filter(|&e| mask >> e & 1 == 1)
                    .map(|e| &names[e])
                    .collect();
                inst.add_block(&format!("b{i}"), &members).unwrap();
            }
            match inst.solve_default() {
                SolveOutcome::Solution(ids) => {
                    prop_assert!(oracle_has_cover(universe, &masks));
                    // The returned blocks must cover each element once.
                    let mut covered = 0u32;
                    for id in ids {
                        let mask = masks[id[1..].parse::<usize>().unwrap()];
                        prop_assert_eq!(covered & mask, 0);
                        covered |= mask;
                    }
                    prop_assert_eq!(covered, universe);
                }
                SolveOutcome::NoSolution => {
                    prop_assert!(!oracle_has_cover(universe, &masks));
                }
                SolveOutcome::BudgetExhausted { .. } => {
                    prop_assert!(false, "budget should not trigger on tiny instances");
                }
            }
        }
    }
}
