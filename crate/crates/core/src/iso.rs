//! Generic induced-subgraph isomorphism search, shared by the cube and grid
//! hosts. Works on plain adjacency structures so callers can bring any
//! vertex-indexed graph.

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n` with bitset adjacency rows.
#[derive(Clone, Debug)]
pub(crate) struct Graph {
    n: usize,
    rows: Vec<Vec<u64>>,
    degrees: Vec<usize>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Graph {
            n,
            rows: vec![vec![0u64; words]; n],
            degrees: vec![0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if !self.adjacent(u, v) {
            self.rows[u][v / 64] |= 1 << (v % 64);
            self.rows[v][u / 64] |= 1 << (u % 64);
            self.degrees[u] += 1;
            self.degrees[v] += 1;
        }
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u][v / 64] >> (v % 64) & 1 == 1
    }

    pub fn degree(&self, u: usize) -> usize {
        self.degrees[u]
    }
}

/// Orders pattern vertices so each one (after the first) touches as many
/// already-placed vertices as possible, which keeps the search tree narrow.
fn search_order(pattern: &Graph) -> Vec<usize> {
    let n = pattern.len();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let back = (0..n)
                    .filter(|&u| placed[u] && pattern.adjacent(u, v))
                    .count();
                (back, pattern.degree(v))
            })
            .unwrap();
        placed[best] = true;
        order.push(best);
    }
    order
}

/// Enumerates vertex maps `pattern -> host` that preserve both adjacency and
/// non-adjacency (induced embeddings). Stops after `max_maps` maps with an
/// error so a combinatorial blow-up cannot run away silently.
pub(crate) fn induced_maps(
    pattern: &Graph,
    host: &Graph,
    max_maps: usize,
) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    search(pattern, host, Some(max_maps), &mut out)?;
    Ok(out)
}

/// True when at least one induced embedding exists.
pub(crate) fn induced_embedding_exists(pattern: &Graph, host: &Graph) -> bool {
    let mut out = Vec::new();
    // Capping at one map cannot hit the limit error: the search stops first.
    search(pattern, host, None, &mut out).unwrap();
    !out.is_empty()
}

fn search(
    pattern: &Graph,
    host: &Graph,
    max_maps: Option<usize>,
    out: &mut Vec<Vec<usize>>,
) -> Result<()> {
    let pn = pattern.len();
    if pn == 0 || pn > host.len() {
        return Ok(());
    }
    let order = search_order(pattern);
    let mut image = vec![usize::MAX; pn];
    let mut used = vec![false; host.len()];
    // Iterative backtracking: frame i holds the host candidate tried next for
    // order[i].
    let mut next_candidate = vec![0usize; pn + 1];
    let mut depth = 0usize;
    loop {
        if depth == pn {
            out.push(image.clone());
            if max_maps.is_none() {
                return Ok(());
            }
            if let Some(cap) = max_maps {
                if out.len() > cap {
                    return Err(Error::InducedCopyLimit {
                        got: out.len(),
                        max: cap,
                    });
                }
            }
            depth -= 1;
            let v = order[depth];
            used[image[v]] = false;
            image[v] = usize::MAX;
            continue;
        }
        let v = order[depth];
        let mut found = None;
        for cand in next_candidate[depth]..host.len() {
            if used[cand] || host.degree(cand) < pattern.degree(v) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| {
                pattern.adjacent(u, v) == host.adjacent(image[u], cand)
            });
            if consistent {
                found = Some(cand);
                break;
            }
        }
        match found {
            Some(cand) => {
                image[v] = cand;
                used[cand] = true;
                next_candidate[depth + 1] = 0;
                next_candidate[depth] = cand + 1;
                depth += 1;
            }
            None => {
                if depth == 0 {
                    return Ok(());
                }
                depth -= 1;
                let u = order[depth];
                used[image[u]] = false;
                image[u] = usize::MAX;
            }
        }
    }
}
