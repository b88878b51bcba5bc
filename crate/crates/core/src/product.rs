//! Products of hypergraphs and colorings of the grid `[n]^d`.
//!
//! Grid points are 1-based `d`-tuples. Where a point needs an integer id it is
//! ranked in mixed radix with coordinate 1 most significant:
//! `rank(x) = sum_j (x_j - 1) * n^(d - j)`, and vertex `rank + 1` of an
//! explicit product hypergraph is the point `x`.

use std::collections::{BTreeMap, HashSet};

use itertools::Itertools;

use crate::arith::{binomial, checked_pow};
use crate::constructions::{eval_block, eval_shift};
use crate::error::{argument, Error, Result};
use crate::hypergraph::{scaled_deviation, Coloring, DiscValue, Hypergraph};
use crate::simplex::{classify_point, enumerate_simplices};

/// Default cap on explicitly enumerated grid points.
pub const DEFAULT_PRODUCT_CAP: u64 = 100_000;

/// Largest ambient dimension for which simplex tables are materialized.
/// The number of tables entries is the ordered Bell number of `d`
/// (545 835 at `d = 8`).
pub const MAX_TABLE_DIMENSION: usize = 8;

pub fn point_rank(x: &[u32], n: usize) -> u64 {
    x.iter()
        .fold(0u64, |acc, &v| acc * n as u64 + u64::from(v - 1))
}

pub fn point_unrank(mut rank: u64, n: usize, d: usize) -> Vec<u32> {
    let mut x = vec![0u32; d];
    for slot in x.iter_mut().rev() {
        *slot = (rank % n as u64) as u32 + 1;
        rank /= n as u64;
    }
    x
}

fn grid_size(n: usize, d: usize, cap: u64, what: &str) -> Result<u64> {
    let size = checked_pow(n as u64, d).map_err(|_| Error::Size {
        what: format!("{what} {n}^{d}"),
        cap,
    })?;
    if size > cap {
        return Err(Error::Size {
            what: format!("{what} {n}^{d} = {size}"),
            cap,
        });
    }
    Ok(size)
}

/// Every point of `edge^d`, lexicographically.
pub fn edge_power_points(edge: &[u32], d: usize) -> impl Iterator<Item = Vec<u32>> + '_ {
    std::iter::repeat_n(edge.iter().copied(), d).multi_cartesian_product()
}

/// `Δ^d H` on `n^d` rank-indexed vertices, one edge `E^d` per base edge.
pub fn symmetric_product_explicit(h: &Hypergraph, d: usize, cap: u64) -> Result<Hypergraph> {
    if d == 0 {
        return Err(argument("dimension must be at least 1"));
    }
    let size = grid_size(h.n(), d, cap, "grid")?;
    let edges = h
        .edges()
        .iter()
        .map(|e| {
            edge_power_points(e, d)
                .map(|x| point_rank(&x, h.n()) as u32 + 1)
                .collect()
        })
        .collect();
    Hypergraph::new(size as usize, edges)
}

/// `H^d`: every product `E_1 x ... x E_d`, deduplicated by vertex set and kept
/// in order of first appearance over lexicographic edge-index tuples.
pub fn direct_product(h: &Hypergraph, d: usize, cap: u64) -> Result<Hypergraph> {
    if d == 0 {
        return Err(argument("dimension must be at least 1"));
    }
    let size = grid_size(h.n(), d, cap, "grid")?;
    grid_size(h.edges().len().max(1), d, cap, "edge tuples")?;
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for tuple in std::iter::repeat_n(h.edges().iter(), d).multi_cartesian_product() {
        let mut ranks: Vec<u32> = tuple
            .iter()
            .map(|e| e.iter().copied())
            .multi_cartesian_product()
            .map(|x| point_rank(&x, h.n()) as u32 + 1)
            .collect();
        ranks.sort_unstable();
        if seen.insert(ranks.clone()) {
            edges.push(ranks);
        }
    }
    Hypergraph::new(size as usize, edges)
}

/// Colors assigned to simplices of dimensions `2..=d`, with per-dimension tallies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexAssignment {
    d: usize,
    map: BTreeMap<crate::simplex::SimplexId, u32>,
    /// `tallies[k][i - 1]`: number of `k`-dimensional simplices with color `i`.
    tallies: Vec<Vec<u64>>,
}

impl SimplexAssignment {
    /// Every simplex of dimension `2..=d` in `[n]^d` must be assigned exactly once.
    pub fn new(
        d: usize,
        colors: u32,
        map: BTreeMap<crate::simplex::SimplexId, u32>,
    ) -> Result<Self> {
        if d > MAX_TABLE_DIMENSION {
            return Err(Error::Size {
                what: format!("simplex table for dimension {d}"),
                cap: MAX_TABLE_DIMENSION as u64,
            });
        }
        let mut tallies = vec![vec![0u64; colors as usize]; d + 1];
        let expected = enumerate_simplices(d, &(2..=d).collect::<Vec<_>>())?;
        if expected.len() != map.len() {
            return Err(argument(format!(
                "simplex table has {} entries, dimension {d} needs {}",
                map.len(),
                expected.len()
            )));
        }
        for id in &expected {
            let color = *map
                .get(id)
                .ok_or_else(|| argument(format!("simplex {id} has no color")))?;
            if color == 0 || color > colors {
                return Err(argument(format!(
                    "simplex {id} has color {color} outside [{colors}]"
                )));
            }
            tallies[id.dim()][color as usize - 1] += 1;
        }
        Ok(Self { d, map, tallies })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn map(&self) -> &BTreeMap<crate::simplex::SimplexId, u32> {
        &self.map
    }

    /// Number of `k`-dimensional simplices per color (index `i - 1`).
    pub fn tally(&self, k: usize) -> &[u64] {
        &self.tallies[k]
    }

    /// Color of the simplex containing the non-diagonal point `x`.
    fn color_at(&self, x: &[u32]) -> u32 {
        let (id, _) = classify_point(x).expect("nonempty point");
        self.map[&id]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColoringKind {
    /// Table indexed by point rank.
    Explicit(Vec<u32>),
    /// Monochromatic simplices off the diagonal, base coloring on it.
    SimplexAssigned {
        assignment: SimplexAssignment,
        base: Coloring,
    },
    /// Rainbow coloring of full cyclic-shift orbits, `inner` on the rest.
    ShiftReduced {
        p: u32,
        q: u32,
        inner: Box<ProductColoring>,
    },
    /// Balanced simplex coloring of the first `block_dim` coordinates, `inner`
    /// on points whose first `block_dim` coordinates coincide.
    BlockReduced {
        block_dim: usize,
        assignment: SimplexAssignment,
        inner: Box<ProductColoring>,
    },
}

/// A `c`-coloring of `[n]^d`, stored explicitly or structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductColoring {
    n: usize,
    d: usize,
    colors: u32,
    kind: ColoringKind,
}

impl ProductColoring {
    pub fn explicit(n: usize, d: usize, colors: u32, table: Vec<u32>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(argument("grid needs n >= 1 and d >= 1"));
        }
        if colors < 2 {
            return Err(argument(format!("need at least 2 colors, got {colors}")));
        }
        let size = checked_pow(n as u64, d)?;
        if table.len() as u64 != size {
            return Err(argument(format!(
                "table has {} entries, [{n}]^{d} has {size}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&x| x == 0 || x > colors) {
            return Err(argument(format!("color {bad} outside [{colors}]")));
        }
        Ok(Self {
            n,
            d,
            colors,
            kind: ColoringKind::Explicit(table),
        })
    }

    /// Tabulates any evaluator over `[n]^d`.
    pub fn tabulate(
        n: usize,
        d: usize,
        colors: u32,
        cap: u64,
        f: impl Fn(&[u32]) -> u32,
    ) -> Result<Self> {
        let size = grid_size(n, d, cap, "grid")?;
        let table = (0..size).map(|r| f(&point_unrank(r, n, d))).collect();
        Self::explicit(n, d, colors, table)
    }

    /// The base coloring viewed as a coloring of `[n]^1`.
    pub fn from_base(base: &Coloring) -> Self {
        Self {
            n: base.n(),
            d: 1,
            colors: base.colors(),
            kind: ColoringKind::Explicit(base.assignment().to_vec()),
        }
    }

    pub fn simplex_assigned(
        base: Coloring,
        d: usize,
        assignment: SimplexAssignment,
    ) -> Result<Self> {
        if assignment.dimension() != d {
            return Err(argument("assignment dimension differs from d"));
        }
        if assignment
            .tallies
            .get(2)
            .is_some_and(|t| t.len() != base.colors() as usize)
        {
            return Err(argument("assignment and base use different color counts"));
        }
        Ok(Self {
            n: base.n(),
            d,
            colors: base.colors(),
            kind: ColoringKind::SimplexAssigned { assignment, base },
        })
    }

    pub(crate) fn from_kind(n: usize, d: usize, colors: u32, kind: ColoringKind) -> Self {
        Self { n, d, colors, kind }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn colors(&self) -> u32 {
        self.colors
    }

    pub fn kind(&self) -> &ColoringKind {
        &self.kind
    }

    /// Color of `x`, after checking `x ∈ [n]^d`.
    pub fn evaluate(&self, x: &[u32]) -> Result<u32> {
        if x.len() != self.d {
            return Err(argument(format!(
                "point has {} coordinates, expected {}",
                x.len(),
                self.d
            )));
        }
        if let Some(&v) = x.iter().find(|&&v| v == 0 || v as usize > self.n) {
            return Err(argument(format!("coordinate {v} outside [{}]", self.n)));
        }
        Ok(self.eval(x))
    }

    pub(crate) fn eval(&self, x: &[u32]) -> u32 {
        match &self.kind {
            ColoringKind::Explicit(table) => table[point_rank(x, self.n) as usize],
            ColoringKind::SimplexAssigned { assignment, base } => {
                if x.iter().all(|&v| v == x[0]) {
                    base.color_of(x[0])
                } else {
                    assignment.color_at(x)
                }
            }
            ColoringKind::ShiftReduced { p, q, inner } => eval_shift(x, *p, *q, inner),
            ColoringKind::BlockReduced {
                block_dim,
                assignment,
                inner,
            } => eval_block(x, *block_dim, assignment, inner),
        }
    }

    /// Explicit coloring of the `n^d` rank-indexed vertices of `Δ^d H`.
    pub fn flatten(&self, cap: u64) -> Result<Coloring> {
        let size = grid_size(self.n, self.d, cap, "grid")?;
        let table = (0..size)
            .map(|r| self.eval(&point_unrank(r, self.n, self.d)))
            .collect();
        Coloring::new(self.colors, table)
    }

    /// Same coloring stored as an explicit table.
    pub fn to_explicit(&self, cap: u64) -> Result<Self> {
        let flat = self.flatten(cap)?;
        Self::explicit(self.n, self.d, self.colors, flat.assignment().to_vec())
    }
}

/// Per-color counts of a coloring on `E^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePowerCounts {
    /// `counts[i - 1] = |chi^-1(i) ∩ E^d|`.
    pub counts: Vec<u64>,
    /// `|E|^d`.
    pub total: u64,
}

impl EdgePowerCounts {
    /// Signed `c * count_i - |E|^d` per color.
    pub fn scaled_deviations(&self) -> Vec<i128> {
        let c = self.counts.len() as i128;
        self.counts
            .iter()
            .map(|&k| c * i128::from(k) - i128::from(self.total))
            .collect()
    }

    /// `max_i | c * count_i - |E|^d |`.
    pub fn max_scaled_deviation(&self) -> u64 {
        let c = self.counts.len() as u32;
        self.counts
            .iter()
            .map(|&k| scaled_deviation(k, self.total, c))
            .max()
            .unwrap_or(0)
    }
}

fn check_edge(chi: &ProductColoring, edge: &[u32]) -> Result<()> {
    if edge.is_empty() {
        return Err(argument("edge must be nonempty"));
    }
    if let Some(&v) = edge.iter().find(|&&v| v == 0 || v as usize > chi.n()) {
        return Err(argument(format!("vertex {v} outside [{}]", chi.n())));
    }
    Ok(())
}

/// Counts by evaluating every point of `E^d`.
pub fn edge_power_counts_slow(
    chi: &ProductColoring,
    edge: &[u32],
    cap: u64,
) -> Result<EdgePowerCounts> {
    check_edge(chi, edge)?;
    let total = grid_size(edge.len(), chi.d(), cap, "edge power")?;
    let mut counts = vec![0u64; chi.colors() as usize];
    for x in edge_power_points(edge, chi.d()) {
        counts[chi.eval(&x) as usize - 1] += 1;
    }
    Ok(EdgePowerCounts { counts, total })
}

/// Closed-form counts for a simplex-assigned coloring: a `k`-dimensional
/// simplex meets `E^d` in `C(|E|, k)` points, and the diagonal of `E^d` is
/// colored by the base coloring.
pub fn edge_power_counts_fast(chi: &ProductColoring, edge: &[u32]) -> Result<EdgePowerCounts> {
    check_edge(chi, edge)?;
    let ColoringKind::SimplexAssigned { assignment, base } = chi.kind() else {
        return Err(argument(
            "closed-form counting needs a simplex-assigned coloring",
        ));
    };
    let size = edge.len() as u64;
    let total = checked_pow(size, chi.d())?;
    let mut counts = base.class_counts(edge);
    for k in 2..=chi.d() {
        let per_simplex = binomial(size, k as u64) as u64;
        for (slot, &n_simplices) in counts.iter_mut().zip(assignment.tally(k)) {
            *slot += n_simplices * per_simplex;
        }
    }
    Ok(EdgePowerCounts { counts, total })
}

/// Uses the closed form when available, enumeration otherwise.
pub fn edge_power_counts(chi: &ProductColoring, edge: &[u32], cap: u64) -> Result<EdgePowerCounts> {
    match chi.kind() {
        ColoringKind::SimplexAssigned { .. } => edge_power_counts_fast(chi, edge),
        _ => edge_power_counts_slow(chi, edge, cap),
    }
}

/// `disc(Δ^d H, chi)`, exact.
pub fn product_disc_of_coloring(
    h: &Hypergraph,
    chi: &ProductColoring,
    cap: u64,
) -> Result<DiscValue> {
    if h.n() != chi.n() {
        return Err(argument(format!(
            "coloring is on [{}]^d but hypergraph has {} vertices",
            chi.n(),
            h.n()
        )));
    }
    let mut numerator = 0;
    for edge in h.edges() {
        numerator = numerator.max(edge_power_counts(chi, edge, cap)?.max_scaled_deviation());
    }
    Ok(DiscValue::new(numerator, chi.colors()))
}
