//! Simplex decomposition of a grid `T^d`.
//!
//! An `l`-dimensional simplex is named by an ordered partition `J_1 | ... | J_l`
//! of `[d]` (blocks ordered by their least element) and a permutation `sigma`
//! of `[l]`. Given values `a_1 < ... < a_l` drawn from `T`, its point writes
//! `a_{sigma(i)}` on every coordinate of block `J_i`. Over all simplices these
//! points partition `T^d`, and there are `l! * S(d, l)` simplices of dimension `l`.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::arith::{binomial, factorial};
use crate::error::{argument, Error, Result};

/// Largest dimension for which Stirling numbers are computed (exact in `u128`).
pub const MAX_DIMENSION: usize = 20;

fn check_dimension(d: usize) -> Result<()> {
    if d > MAX_DIMENSION {
        return Err(argument(format!(
            "dimension {d} exceeds supported maximum {MAX_DIMENSION}"
        )));
    }
    Ok(())
}

/// Stirling number of the second kind by the alternating sum
/// `S(d,l) = (1/l!) * sum_{j=0..l} (-1)^j C(l,j) (l-j)^d`.
///
/// The sum is accumulated over the integers and divided by `l!` once at the
/// end, so no intermediate fraction appears. `0^0` is taken as 1, so the
/// `j = l` term vanishes for `d >= 1`. Returns 0 for `l > d`.
pub fn stirling2(d: usize, l: usize) -> Result<u128> {
    check_dimension(d)?;
    if l > d {
        return Ok(0);
    }
    let mut sum: i128 = 0;
    for j in 0..=l {
        let term = binomial(l as u64, j as u64) as i128 * ((l - j) as i128).pow(d as u32);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let lf = factorial(l as u64)? as i128;
    debug_assert_eq!(sum % lf, 0);
    Ok((sum / lf) as u128)
}

/// `S(d,l)` from the triangle `S(d,l) = l*S(d-1,l) + S(d-1,l-1)`.
pub fn stirling2_recurrence(d: usize, l: usize) -> Result<u128> {
    check_dimension(d)?;
    if l > d {
        return Ok(0);
    }
    let mut row = vec![0u128; d + 1];
    row[0] = 1;
    for _ in 1..=d {
        for k in (1..=d).rev() {
            row[k] = k as u128 * row[k] + row[k - 1];
        }
        row[0] = 0;
    }
    Ok(row[l])
}

/// Number of `l`-dimensional simplices of `T^d`: `l! * S(d, l)`.
pub fn simplex_count(d: usize, l: usize) -> Result<u128> {
    let s = stirling2(d, l)?;
    factorial(l as u64)?
        .checked_mul(s)
        .ok_or_else(|| Error::Overflow(format!("{l}! * S({d},{l})")))
}

/// A partition of `[d]` into nonempty blocks ordered by their least element.
///
/// Stored as a restricted growth string: `labels[j]` is the 0-based index of
/// the block holding coordinate `j + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedPartition {
    labels: Vec<usize>,
    block_count: usize,
}

impl OrderedPartition {
    /// From a restricted growth string (first label 0, each label at most one
    /// above the running maximum).
    pub fn from_labels(labels: Vec<usize>) -> Result<Self> {
        if labels.is_empty() {
            return Err(argument("partition of an empty ground set"));
        }
        let mut next = 0;
        for &l in &labels {
            if l > next {
                return Err(argument(format!(
                    "labels {labels:?} are not a restricted growth string"
                )));
            }
            if l == next {
                next += 1;
            }
        }
        Ok(Self {
            labels,
            block_count: next,
        })
    }

    /// From explicit 1-based blocks in any order; they must partition `[d]`.
    pub fn from_blocks(d: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut owner = vec![usize::MAX; d];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(argument("partition has an empty block"));
            }
            for &j in block {
                if j == 0 || j > d {
                    return Err(argument(format!("coordinate {j} outside [{d}]")));
                }
                if owner[j - 1] != usize::MAX {
                    return Err(argument(format!("coordinate {j} appears in two blocks")));
                }
                owner[j - 1] = b;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(argument(format!("blocks do not cover [{d}]")));
        }
        // relabel blocks by first appearance
        let mut relabel = vec![usize::MAX; blocks.len()];
        let mut next = 0;
        let labels = owner
            .into_iter()
            .map(|b| {
                if relabel[b] == usize::MAX {
                    relabel[b] = next;
                    next += 1;
                }
                relabel[b]
            })
            .collect();
        Self::from_labels(labels)
    }

    /// Ambient dimension `d`.
    pub fn dimension(&self) -> usize {
        self.labels.len()
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Blocks as ascending 1-based coordinate lists, ordered by least element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count];
        for (j, &b) in self.labels.iter().enumerate() {
            blocks[b].push(j + 1);
        }
        blocks
    }
}

impl fmt::Display for OrderedPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.blocks().iter().map(|b| b.iter().join(",")).join("|");
        f.write_str(&s)
    }
}

/// All partitions of `[d]` into exactly `l` blocks, in lexicographic order of
/// their restricted growth strings.
pub fn enumerate_partitions(d: usize, l: usize) -> Result<Vec<OrderedPartition>> {
    if l == 0 || l > d {
        return Err(argument(format!("need 1 <= l <= d, got l = {l}, d = {d}")));
    }
    fn extend(
        d: usize,
        l: usize,
        prefix: &mut Vec<usize>,
        used: usize,
        out: &mut Vec<OrderedPartition>,
    ) {
        let pos = prefix.len();
        if pos == d {
            if used == l {
                out.push(OrderedPartition {
                    labels: prefix.clone(),
                    block_count: l,
                });
            }
            return;
        }
        // not enough coordinates left to open the missing blocks
        if l - used > d - pos {
            return;
        }
        for label in 0..=used.min(l - 1) {
            prefix.push(label);
            extend(d, l, prefix, used.max(label + 1), out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    let mut prefix = vec![0];
    extend(d, l, &mut prefix, 1, &mut out);
    Ok(out)
}

/// Identifies one simplex: an ordered partition and a permutation of its blocks.
///
/// Canonical text form: `k=<l>;J=<block>|<block>...;sigma=<images>`, e.g.
/// `k=2;J=1,2|3;sigma=2,1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    partition: OrderedPartition,
    sigma: Vec<usize>,
}

impl SimplexId {
    /// `sigma` lists the 1-based images `sigma(1), ..., sigma(l)`.
    pub fn new(partition: OrderedPartition, sigma: Vec<usize>) -> Result<Self> {
        let l = partition.block_count();
        if sigma.len() != l {
            return Err(argument(format!(
                "sigma has {} entries for {l} blocks",
                sigma.len()
            )));
        }
        let mut seen = vec![false; l];
        for &s in &sigma {
            if s == 0 || s > l || std::mem::replace(&mut seen[s - 1], true) {
                return Err(argument(format!(
                    "sigma {sigma:?} is not a permutation of [{l}]"
                )));
            }
        }
        Ok(Self { partition, sigma })
    }

    pub fn partition(&self) -> &OrderedPartition {
        &self.partition
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    /// Simplex dimension `l`.
    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    /// Ambient dimension `d`.
    pub fn ambient(&self) -> usize {
        self.partition.dimension()
    }

    /// The point of this simplex built from ascending values `alpha`.
    pub fn point(&self, alpha: &[u32]) -> Vec<u32> {
        debug_assert_eq!(alpha.len(), self.dim());
        self.partition
            .labels()
            .iter()
            .map(|&b| alpha[self.sigma[b] - 1])
            .collect()
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={};J={};sigma={}",
            self.dim(),
            self.partition,
            self.sigma.iter().join(",")
        )
    }
}

impl FromStr for SimplexId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || argument(format!("malformed simplex id `{s}`"));
        let mut parts = s.split(';');
        let k = parts
            .next()
            .and_then(|p| p.strip_prefix("k="))
            .ok_or_else(bad)?;
        let blocks = parts
            .next()
            .and_then(|p| p.strip_prefix("J="))
            .ok_or_else(bad)?;
        let sigma = parts
            .next()
            .and_then(|p| p.strip_prefix("sigma="))
            .ok_or_else(bad)?;
        if parts.next().is_some() {
            return Err(bad());
        }
        let k: usize = k.parse().map_err(|_| bad())?;
        let parse_list = |text: &str| -> Result<Vec<usize>> {
            text.split(',')
                .map(|t| t.parse().map_err(|_| bad()))
                .collect()
        };
        let blocks = blocks
            .split('|')
            .map(parse_list)
            .collect::<Result<Vec<_>>>()?;
        let d = blocks.iter().map(Vec::len).sum();
        let partition = OrderedPartition::from_blocks(d, &blocks)?;
        // the canonical form lists blocks ascending and by least element
        if partition.blocks() != blocks {
            return Err(bad());
        }
        let id = SimplexId::new(partition, parse_list(sigma)?)?;
        if id.dim() != k {
            return Err(bad());
        }
        Ok(id)
    }
}

/// All simplices of `T^d` whose dimension is in `dims`, dimension by
/// dimension in ascending order, then partition order, then lexicographic
/// order of `sigma`.
pub fn enumerate_simplices(d: usize, dims: &[usize]) -> Result<Vec<SimplexId>> {
    check_dimension(d)?;
    let mut dims = dims.to_vec();
    dims.sort_unstable();
    dims.dedup();
    let mut out = Vec::new();
    for l in dims {
        for partition in enumerate_partitions(d, l)? {
            for sigma in (1..=l).permutations(l) {
                out.push(SimplexId {
                    partition: partition.clone(),
                    sigma,
                });
            }
        }
    }
    Ok(out)
}

fn check_values(t: &[u32]) -> Result<()> {
    if t.contains(&0) || t.windows(2).any(|w| w[0] >= w[1]) {
        return Err(argument(format!(
            "values {t:?} must be positive and strictly ascending"
        )));
    }
    Ok(())
}

/// Points of the simplex `id` in `T^d`, one per `l`-subset of `T` in
/// lexicographic subset order. Empty when `|T| < l`.
pub fn simplex_points(id: &SimplexId, t: &[u32]) -> Result<Vec<Vec<u32>>> {
    check_values(t)?;
    Ok(t.iter()
        .copied()
        .combinations(id.dim())
        .map(|alpha| id.point(&alpha))
        .collect())
}

/// Number of points of an `l`-dimensional simplex in `T^d` with `|T| = t`.
pub fn simplex_size(t: usize, l: usize) -> u128 {
    binomial(t as u64, l as u64)
}

/// The simplex containing `x` and the ascending value sequence that produces it.
pub fn classify_point(x: &[u32]) -> Result<(SimplexId, Vec<u32>)> {
    if x.is_empty() {
        return Err(argument("cannot classify an empty tuple"));
    }
    let mut block_values: Vec<u32> = Vec::new();
    let labels = x
        .iter()
        .map(|v| match block_values.iter().position(|b| b == v) {
            Some(i) => i,
            None => {
                block_values.push(*v);
                block_values.len() - 1
            }
        })
        .collect();
    let mut alpha = block_values.clone();
    alpha.sort_unstable();
    let sigma = block_values
        .iter()
        .map(|v| alpha.binary_search(v).expect("value present") + 1)
        .collect();
    let partition = OrderedPartition {
        labels,
        block_count: block_values.len(),
    };
    Ok((SimplexId { partition, sigma }, alpha))
}
