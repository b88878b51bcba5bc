//! Hypergraphs on `[n]`, colorings, and exact multi-color discrepancy.
//!
//! Vertices are 1-based (`1..=n`) and colors are 1-based (`1..=c`).
//! Discrepancies are kept as [`DiscValue`]s: every attainable value is an
//! integer multiple of `1/c`, so only the scaled numerator `c * disc` is stored.

use std::cmp::Ordering;
use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::binomial;
use crate::error::{argument, Error, Result};

/// Default vertex cap for [`disc_exact`].
pub const DEFAULT_EXACT_CAP: usize = 14;

/// Exact discrepancy value `numerator / colors`.
///
/// Equality and ordering compare the rational values, so `2/2 == 3/3`.
#[derive(Clone, Copy, Debug)]
pub struct DiscValue {
    numerator: u64,
    colors: u32,
}

impl DiscValue {
    pub fn new(numerator: u64, colors: u32) -> Self {
        assert!(colors > 0, "denominator must be positive");
        Self { numerator, colors }
    }

    pub fn zero(colors: u32) -> Self {
        Self::new(0, colors)
    }

    /// `c * disc`.
    pub fn numerator(&self) -> u64 {
        self.numerator
    }

    /// The color count `c`, which is also the denominator.
    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn to_ratio(&self) -> Ratio<i128> {
        Ratio::new(i128::from(self.numerator), i128::from(self.colors))
    }
}

impl PartialEq for DiscValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for DiscValue {}

impl PartialOrd for DiscValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiscValue {
    fn cmp(&self, other: &Self) -> Ordering {
        let lhs = u128::from(self.numerator) * u128::from(other.colors);
        let rhs = u128::from(other.numerator) * u128::from(self.colors);
        lhs.cmp(&rhs)
    }
}

/// Rendered unreduced as `<numerator>/<c>`.
impl fmt::Display for DiscValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator, self.colors)
    }
}

/// `| c * count - size |`, the scaled deviation of one color class inside one edge.
pub fn scaled_deviation(count: u64, size: u64, colors: u32) -> u64 {
    (count * u64::from(colors)).abs_diff(size)
}

/// A hypergraph on the vertex set `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Vec<u32>>,
}

impl Hypergraph {
    /// Builds a hypergraph, sorting every edge. Edges must be nonempty subsets
    /// of `[n]` without repeated vertices.
    pub fn new(n: usize, edges: Vec<Vec<u32>>) -> Result<Self> {
        if n == 0 {
            return Err(argument("hypergraph needs at least one vertex"));
        }
        let mut sorted = Vec::with_capacity(edges.len());
        for (idx, mut edge) in edges.into_iter().enumerate() {
            if edge.is_empty() {
                return Err(argument(format!("edge {} is empty", idx + 1)));
            }
            edge.sort_unstable();
            if let Some(&v) = edge.iter().find(|&&v| v == 0 || v as usize > n) {
                return Err(argument(format!(
                    "edge {} has vertex {v} outside [{n}]",
                    idx + 1
                )));
            }
            if edge.windows(2).any(|w| w[0] == w[1]) {
                return Err(argument(format!("edge {} repeats a vertex", idx + 1)));
            }
            sorted.push(edge);
        }
        Ok(Self { n, edges: sorted })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    /// Indices of edges that repeat an earlier edge.
    pub fn duplicate_edges(&self) -> Vec<usize> {
        let mut seen = std::collections::HashSet::new();
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| !seen.insert(e.as_slice()))
            .map(|(i, _)| i)
            .collect()
    }

    /// Removes repeated edges, keeping first occurrences. Returns the number removed.
    pub fn normalize(&mut self) -> usize {
        let dups = self.duplicate_edges();
        let mut idx = 0;
        self.edges.retain(|_| {
            let keep = dups.binary_search(&idx).is_err();
            idx += 1;
            keep
        });
        dups.len()
    }
}

/// A total map `[n] -> [c]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    colors: u32,
    assignment: Vec<u32>,
}

impl Coloring {
    /// `assignment[v - 1]` is the color of vertex `v`.
    pub fn new(colors: u32, assignment: Vec<u32>) -> Result<Self> {
        if colors < 2 {
            return Err(argument(format!("need at least 2 colors, got {colors}")));
        }
        if let Some(pos) = assignment.iter().position(|&x| x == 0 || x > colors) {
            return Err(argument(format!(
                "vertex {} has color {} outside [{colors}]",
                pos + 1,
                assignment[pos]
            )));
        }
        Ok(Self { colors, assignment })
    }

    pub fn constant(colors: u32, n: usize, color: u32) -> Result<Self> {
        Self::new(colors, vec![color; n])
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn color_of(&self, vertex: u32) -> u32 {
        self.assignment[vertex as usize - 1]
    }

    pub fn assignment(&self) -> &[u32] {
        &self.assignment
    }

    /// Per-color counts (index `i - 1` for color `i`) among the given vertices.
    pub fn class_counts(&self, vertices: &[u32]) -> Vec<u64> {
        let mut counts = vec![0u64; self.colors as usize];
        for &v in vertices {
            counts[self.color_of(v) as usize - 1] += 1;
        }
        counts
    }
}

/// `max_E max_i | |chi^-1(i) ∩ E| - |E|/c |`. An empty edge set gives 0.
pub fn disc_of_coloring(h: &Hypergraph, chi: &Coloring) -> Result<DiscValue> {
    if chi.n() != h.n() {
        return Err(argument(format!(
            "coloring covers {} vertices but hypergraph has {}",
            chi.n(),
            h.n()
        )));
    }
    let c = chi.colors();
    let numerator = h
        .edges()
        .iter()
        .map(|edge| {
            chi.class_counts(edge)
                .into_iter()
                .map(|cnt| scaled_deviation(cnt, edge.len() as u64, c))
                .max()
                .unwrap_or(0)
        })
        .max()
        .unwrap_or(0);
    Ok(DiscValue::new(numerator, c))
}

/// Smallest scaled deviation any coloring can reach on an edge of this size.
fn edge_floor(size: u64, c: u32) -> u64 {
    let r = size % u64::from(c);
    if r == 0 {
        0
    } else {
        r.max(u64::from(c) - r)
    }
}

/// Depth-first exact solver for `disc(H, c)`.
#[derive(Clone, Copy, Debug)]
pub struct ExactSolver {
    pub vertex_cap: usize,
}

impl Default for ExactSolver {
    fn default() -> Self {
        Self {
            vertex_cap: DEFAULT_EXACT_CAP,
        }
    }
}

struct Search<'a> {
    c: u32,
    sizes: Vec<u64>,
    incident: &'a [Vec<usize>],
    counts: Vec<Vec<u64>>,
    remaining: Vec<u64>,
    current: Vec<u32>,
    best: u64,
    best_coloring: Option<Vec<u32>>,
    floor: u64,
}

impl Search<'_> {
    /// Lower bound on the final scaled deviation of edge `e` given the partial coloring.
    fn edge_bound(&self, e: usize) -> u64 {
        let c = u64::from(self.c);
        let size = self.sizes[e];
        let rem = self.remaining[e];
        self.counts[e]
            .iter()
            .map(|&cnt| {
                (cnt * c)
                    .saturating_sub(size)
                    .max(size.saturating_sub((cnt + rem) * c))
            })
            .max()
            .unwrap_or(0)
    }

    fn leaf_value(&self) -> u64 {
        (0..self.sizes.len())
            .map(|e| self.edge_bound(e))
            .max()
            .unwrap_or(0)
    }

    fn done(&self) -> bool {
        self.best_coloring.is_some() && self.best <= self.floor
    }

    fn descend(&mut self, vertex: usize, max_used: u32) {
        let n = self.current.len();
        if vertex == n {
            let value = self.leaf_value();
            if value < self.best || self.best_coloring.is_none() {
                self.best = value;
                self.best_coloring = Some(self.current.clone());
            }
            return;
        }
        // vertex k may use colors up to one more than the largest used so far
        let limit = (max_used + 1).min(self.c);
        for color in 1..=limit {
            let ci = color as usize - 1;
            for &e in &self.incident[vertex] {
                self.counts[e][ci] += 1;
                self.remaining[e] -= 1;
            }
            let viable = self.best_coloring.is_none()
                || self.incident[vertex]
                    .iter()
                    .all(|&e| self.edge_bound(e) < self.best);
            if viable {
                self.current[vertex] = color;
                self.descend(vertex + 1, max_used.max(color));
            }
            for &e in &self.incident[vertex] {
                self.counts[e][ci] -= 1;
                self.remaining[e] += 1;
            }
            if self.done() {
                return;
            }
        }
    }
}

impl ExactSolver {
    /// Minimum discrepancy over all `c^n` colorings with a witness.
    ///
    /// Color permutations are factored out (vertex 1 gets color 1, vertex k may
    /// only use colors up to one more than the largest used before it). The
    /// witness is the lexicographically least optimal coloring.
    pub fn solve(&self, h: &Hypergraph, c: u32) -> Result<(DiscValue, Coloring)> {
        if c < 2 {
            return Err(argument(format!("need at least 2 colors, got {c}")));
        }
        let n = h.n();
        if n > self.vertex_cap {
            return Err(Error::Size {
                what: format!("exact search over n = {n} vertices"),
                cap: self.vertex_cap as u64,
            });
        }
        if h.edges().is_empty() {
            return Ok((DiscValue::zero(c), Coloring::constant(c, n, 1)?));
        }
        let mut incident = vec![Vec::new(); n];
        for (e, edge) in h.edges().iter().enumerate() {
            for &v in edge {
                incident[v as usize - 1].push(e);
            }
        }
        let sizes: Vec<u64> = h.edges().iter().map(|e| e.len() as u64).collect();
        let floor = sizes.iter().map(|&s| edge_floor(s, c)).max().unwrap_or(0);
        let mut search = Search {
            c,
            remaining: sizes.clone(),
            counts: vec![vec![0; c as usize]; sizes.len()],
            sizes,
            incident: &incident,
            current: vec![0; n],
            best: u64::MAX,
            best_coloring: None,
            floor,
        };
        search.descend(0, 0);
        let witness = search
            .best_coloring
            .expect("search visits at least one complete coloring");
        Ok((DiscValue::new(search.best, c), Coloring::new(c, witness)?))
    }
}

/// [`ExactSolver::solve`] with the default vertex cap.
pub fn disc_exact(h: &Hypergraph, c: u32) -> Result<(DiscValue, Coloring)> {
    ExactSolver::default().solve(h, c)
}

/// All `m`-subsets of `[n]` as edges, in lexicographic order.
pub fn complete_uniform(n: usize, m: usize) -> Result<Hypergraph> {
    if m == 0 || m > n {
        return Err(argument(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    let edges = (1..=n as u32).combinations(m).collect();
    Hypergraph::new(n, edges)
}

/// Seeded random hypergraph.
///
/// Generator: a ChaCha8 stream keyed by the seed's 8 little-endian bytes
/// followed by 24 zero bytes. For each edge one `u64` word `w` is drawn and
/// `r = w mod N`, where `N = sum_{s=1..max} C(n, s)` counts the admissible
/// subsets. The edge is the `r`-th subset when subsets are ordered first by
/// size, then lexicographically.
pub fn random_hypergraph(
    n: usize,
    edge_count: usize,
    max_edge_size: usize,
    seed: u64,
) -> Result<Hypergraph> {
    if n == 0 || edge_count == 0 || max_edge_size == 0 || max_edge_size > n {
        return Err(argument(format!(
            "need n >= 1, edge_count >= 1 and 1 <= max_edge_size <= n; got n = {n}, edge_count = {edge_count}, max_edge_size = {max_edge_size}"
        )));
    }
    if n > 62 {
        return Err(argument(format!(
            "random generator supports n <= 62, got {n}"
        )));
    }
    let by_size: Vec<u64> = (1..=max_edge_size)
        .map(|s| binomial(n as u64, s as u64) as u64)
        .collect();
    let total: u64 = by_size.iter().sum();

    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);

    let edges = (0..edge_count)
        .map(|_| {
            let mut r = rng.next_u64() % total;
            let mut size = 1;
            for &count in &by_size {
                if r < count {
                    break;
                }
                r -= count;
                size += 1;
            }
            unrank_subset(n as u64, size, r)
        })
        .collect();
    Hypergraph::new(n, edges)
}

/// The `rank`-th `k`-subset of `[n]` in lexicographic order.
fn unrank_subset(n: u64, k: u64, mut rank: u64) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut next = 1u64;
    for slot in 0..k {
        let left = k - slot - 1;
        loop {
            let with_next = binomial(n - next, left) as u64;
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        out.push(next as u32);
        next += 1;
    }
    out
}
