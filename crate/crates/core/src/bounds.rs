//! Lower-bound arithmetic for symmetric products, monochromatic-simplex
//! subgrids and small exhaustive Ramsey-type searches.

use itertools::Itertools;
use num_rational::Ratio;
use serde::Serialize;

use crate::arith::{binomial, factorial};
use crate::error::{argument, Error, Result};
use crate::hypergraph::{complete_uniform, DiscValue, ExactSolver};
use crate::product::{point_unrank, ProductColoring};
use crate::simplex::{enumerate_simplices, simplex_count, simplex_points, SimplexId};

/// Upper end of the scan in [`min_m_for_lower_bound`].
pub const MAX_THRESHOLD_SCAN: u64 = 1_000_000;

fn overflow(what: &str) -> Error {
    Error::Overflow(what.to_string())
}

fn to_i128(x: u128, what: &str) -> Result<i128> {
    i128::try_from(x).map_err(|_| overflow(what))
}

/// `C(m,κ)/2 - sum_{l<κ} l! S(d,l) C(m,l) - m^k / (3 k!)`, exact.
///
/// The threshold inequality for `(k, d)` at `m` holds for a given `κ` iff this
/// margin is nonnegative. `S(d, 0) = 0` for `d >= 1`.
pub fn lower_bound_margin(k: usize, d: usize, m: u64, kappa: usize) -> Result<Ratio<i128>> {
    if k < 2 || k > d || kappa < k || kappa > d {
        return Err(argument(format!(
            "need 2 <= k <= κ <= d, got k = {k}, κ = {kappa}, d = {d}"
        )));
    }
    // everything scaled by 6 k! to stay in the integers
    let kf = to_i128(factorial(k as u64)?, "k!")?;
    let scale = 6 * kf;
    let mut acc = to_i128(binomial(m, kappa as u64), "C(m,κ)")?
        .checked_mul(3 * kf)
        .ok_or_else(|| overflow("C(m,κ) scaled"))?;
    for l in 0..kappa {
        let term = to_i128(simplex_count(d, l)?, "l! S(d,l)")?
            .checked_mul(to_i128(binomial(m, l as u64), "C(m,l)")?)
            .and_then(|t| t.checked_mul(scale))
            .ok_or_else(|| overflow("simplex sum"))?;
        acc = acc.checked_sub(term).ok_or_else(|| overflow("margin"))?;
    }
    let mk = (m as i128)
        .checked_pow(k as u32)
        .and_then(|x| x.checked_mul(2))
        .ok_or_else(|| overflow("m^k"))?;
    acc = acc.checked_sub(mk).ok_or_else(|| overflow("margin"))?;
    Ok(Ratio::new(acc, scale))
}

/// Whether the threshold inequality holds at `m` for every `κ ∈ {k..d}`.
pub fn lower_bound_holds(k: usize, d: usize, m: u64) -> Result<bool> {
    for kappa in k..=d {
        if lower_bound_margin(k, d, m, kappa)? < Ratio::from_integer(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Smallest `m >= 1` at which the threshold inequality holds for all
/// `κ ∈ {k..d}`.
pub fn min_m_for_lower_bound(k: usize, d: usize) -> Result<u64> {
    if k < 2 || k > d {
        return Err(argument(format!("need 2 <= k <= d, got k = {k}, d = {d}")));
    }
    for m in 1..=MAX_THRESHOLD_SCAN {
        if lower_bound_holds(k, d, m)? {
            return Ok(m);
        }
    }
    Err(Error::Size {
        what: format!("threshold scan for k = {k}, d = {d}"),
        cap: MAX_THRESHOLD_SCAN,
    })
}

/// Colors of the simplices of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimensionCensus {
    pub dim: usize,
    /// Monochromatic simplices per color (index `i - 1`).
    pub counts: Vec<u64>,
    /// Simplices that are not monochromatic.
    pub mixed: u64,
}

impl DimensionCensus {
    pub fn is_balanced(&self) -> bool {
        self.mixed == 0 && self.counts.iter().all_equal()
    }
}

/// Per-dimension, per-color tally of monochromatic simplices of `T^d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplexColorCensus {
    pub d: usize,
    pub c: u32,
    /// `|T|`.
    pub m: usize,
    /// `dims[l - 1]` describes dimension `l`.
    pub dims: Vec<DimensionCensus>,
}

impl SimplexColorCensus {
    pub fn dimension(&self, l: usize) -> &DimensionCensus {
        &self.dims[l - 1]
    }

    /// Largest dimension whose simplices are not evenly spread over the colors.
    pub fn kappa(&self) -> Option<usize> {
        self.dims
            .iter()
            .rev()
            .find(|dc| !dc.is_balanced())
            .map(|dc| dc.dim)
    }

    pub fn all_monochromatic(&self) -> bool {
        self.dims.iter().all(|dc| dc.mixed == 0)
    }
}

fn simplex_color(chi: &ProductColoring, id: &SimplexId, t: &[u32]) -> Result<Option<u32>> {
    let mut colors = simplex_points(id, t)?.into_iter().map(|x| chi.eval(&x));
    let Some(first) = colors.next() else {
        return Ok(None);
    };
    Ok(colors.all(|c| c == first).then_some(first))
}

/// Tallies every simplex of `T^d` under `chi`.
pub fn census(chi: &ProductColoring, t: &[u32]) -> Result<SimplexColorCensus> {
    if t.iter().any(|&v| v as usize > chi.n()) {
        return Err(argument(format!("values {t:?} must lie in [{}]", chi.n())));
    }
    let d = chi.d();
    let mut dims = Vec::with_capacity(d);
    for l in 1..=d {
        let mut dc = DimensionCensus {
            dim: l,
            counts: vec![0; chi.colors() as usize],
            mixed: 0,
        };
        for id in enumerate_simplices(d, &[l])? {
            match simplex_color(chi, &id, t)? {
                Some(color) => dc.counts[color as usize - 1] += 1,
                None if t.len() >= l => dc.mixed += 1,
                // empty simplex
                None => {}
            }
        }
        dims.push(dc);
    }
    Ok(SimplexColorCensus {
        d,
        c: chi.colors(),
        m: t.len(),
        dims,
    })
}

/// `max_i |n_i C(m,κ) - (κ! S(d,κ)/c) C(m,κ)| - ((c-1)/c) (m^d - sum_{l=κ..d} l! S(d,l) C(m,l))`
/// where `n_i` is the number of `κ`-dimensional simplices in color `i`.
///
/// Bounds the single-edge imbalance of `T^d` from below whenever all
/// dimensions above `κ` are balanced. The value may be negative and is
/// returned unclamped.
pub fn imbalance_lower_bound(census: &SimplexColorCensus, kappa: usize) -> Result<Ratio<i128>> {
    let (d, m) = (census.d, census.m as u64);
    if kappa == 0 || kappa > d {
        return Err(argument(format!("κ = {kappa} outside [1, {d}]")));
    }
    for l in kappa..=d {
        let dc = census.dimension(l);
        let total: u64 = dc.counts.iter().sum();
        // dimensions above m have no points and contribute nothing
        let complete = m < l as u64 || u128::from(total) == simplex_count(d, l)?;
        if dc.mixed > 0 || !complete {
            return Err(argument(format!(
                "census is incomplete in dimension {l}: every simplex of dimension >= κ must be monochromatic"
            )));
        }
    }
    let c = i128::from(census.c);
    let per_simplex = to_i128(binomial(m, kappa as u64), "C(m,κ)")?;
    let share = Ratio::new(to_i128(simplex_count(d, kappa)?, "κ! S(d,κ)")?, c);
    let first = census
        .dimension(kappa)
        .counts
        .iter()
        .map(|&n_i| {
            let diff = (Ratio::from_integer(i128::from(n_i)) - share) * per_simplex;
            if diff < Ratio::from_integer(0) {
                -diff
            } else {
                diff
            }
        })
        .max()
        .unwrap_or_default();
    let mut rest = (m as i128)
        .checked_pow(d as u32)
        .ok_or_else(|| overflow("m^d"))?;
    for l in kappa..=d {
        rest -=
            to_i128(simplex_count(d, l)?, "l! S(d,l)")? * to_i128(binomial(m, l as u64), "C(m,l)")?;
    }
    Ok(first - Ratio::new((c - 1) * rest, c))
}

fn check_grid(chi: &ProductColoring, cap: u64) -> Result<()> {
    let size = (chi.n() as u64).checked_pow(chi.d() as u32);
    match size {
        Some(s) if s <= cap => Ok(()),
        _ => Err(Error::Size {
            what: format!("grid [{}]^{}", chi.n(), chi.d()),
            cap,
        }),
    }
}

/// Whether every simplex of `T^d` is monochromatic under `chi`.
pub fn subgrid_is_monochromatic(chi: &ProductColoring, t: &[u32]) -> Result<bool> {
    let all_dims: Vec<usize> = (1..=chi.d()).collect();
    let ids = enumerate_simplices(chi.d(), &all_dims)?;
    monochromatic_with(chi, t, &ids)
}

fn monochromatic_with(chi: &ProductColoring, t: &[u32], ids: &[SimplexId]) -> Result<bool> {
    for id in ids {
        if id.dim() <= t.len() && simplex_color(chi, id, t)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// First `T ⊆ [n]` with `|T| = m` (lexicographic subset order) such that every
/// simplex of `T^d` is monochromatic.
pub fn find_monochromatic_subgrid(
    chi: &ProductColoring,
    m: usize,
    cap: u64,
) -> Result<Option<Vec<u32>>> {
    check_grid(chi, cap)?;
    if m == 0 || m > chi.n() {
        return Err(argument(format!(
            "need 1 <= m <= n, got m = {m}, n = {}",
            chi.n()
        )));
    }
    let all_dims: Vec<usize> = (1..=chi.d()).collect();
    let ids = enumerate_simplices(chi.d(), &all_dims)?;
    for t in (1..=chi.n() as u32).combinations(m) {
        if monochromatic_with(chi, &t, &ids)? {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug)]
pub struct RamseyQuery {
    pub c: u32,
    pub d: usize,
    pub m: usize,
    pub n_max: usize,
    /// Maximum number of colorings examined over the whole search.
    pub budget: u64,
    /// Cap on grid points `n^d`.
    pub cap: u64,
}

impl RamseyQuery {
    pub fn new(c: u32, d: usize, m: usize, n_max: usize) -> Self {
        Self {
            c,
            d,
            m,
            n_max,
            budget: 10_000_000,
            cap: crate::product::DEFAULT_PRODUCT_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum RamseyStatus {
    /// Every coloring of `[n]^d` has a good subgrid and `n - 1` admits a counterexample.
    Determined { n: usize },
    /// Counterexamples exist for every `n <= n_max`.
    Unknown { n_max: usize },
    /// The coloring budget ran out while deciding `at_n`.
    BudgetExceeded { at_n: usize },
}

#[derive(Clone, Debug)]
pub struct RamseyReport {
    pub status: RamseyStatus,
    /// Counterexample for the largest `n` refuted so far.
    pub counterexample: Option<ProductColoring>,
    /// Colorings examined.
    pub checked: u64,
}

/// Smallest `n <= n_max` such that every `c`-coloring of `[n]^d` contains an
/// `m`-point `T` with all simplices of `T^d` monochromatic.
///
/// Only points with fewer than `m` distinct coordinates can lie in a
/// simplex of `T^d` with two or more points, so colorings are enumerated on
/// those cells alone (the rest get color 1), up to permutation of the colors.
pub fn ramsey_search(q: &RamseyQuery) -> Result<RamseyReport> {
    if q.c < 2 || q.d == 0 || q.m == 0 {
        return Err(argument(format!(
            "need c >= 2, d >= 1, m >= 1; got c = {}, d = {}, m = {}",
            q.c, q.d, q.m
        )));
    }
    let all_dims: Vec<usize> = (1..=q.d).collect();
    let ids = enumerate_simplices(q.d, &all_dims)?;
    let mut checked = 0u64;
    let mut counterexample = None;
    for n in 1..=q.n_max {
        let size = (n as u64)
            .checked_pow(q.d as u32)
            .filter(|&s| s <= q.cap)
            .ok_or_else(|| Error::Size {
                what: format!("grid [{n}]^{}", q.d),
                cap: q.cap,
            })?;
        if n < q.m {
            counterexample = Some(ProductColoring::explicit(
                n,
                q.d,
                q.c,
                vec![1; size as usize],
            )?);
            continue;
        }
        let relevant: Vec<usize> = (0..size)
            .filter(|&r| point_unrank(r, n, q.d).iter().unique().count() < q.m)
            .map(|r| r as usize)
            .collect();
        let mut table = vec![1u32; size as usize];
        let mut search = CounterexampleSearch {
            n,
            q,
            ids: &ids,
            relevant: &relevant,
            table: &mut table,
            checked: &mut checked,
        };
        match search.run(0, 0)? {
            Outcome::Found(chi) => counterexample = Some(chi),
            Outcome::Exhausted => {
                return Ok(RamseyReport {
                    status: RamseyStatus::Determined { n },
                    counterexample,
                    checked,
                })
            }
            Outcome::OutOfBudget => {
                return Ok(RamseyReport {
                    status: RamseyStatus::BudgetExceeded { at_n: n },
                    counterexample,
                    checked,
                })
            }
        }
    }
    Ok(RamseyReport {
        status: RamseyStatus::Unknown { n_max: q.n_max },
        counterexample,
        checked,
    })
}

enum Outcome {
    Found(ProductColoring),
    Exhausted,
    OutOfBudget,
}

struct CounterexampleSearch<'a> {
    n: usize,
    q: &'a RamseyQuery,
    ids: &'a [SimplexId],
    relevant: &'a [usize],
    table: &'a mut Vec<u32>,
    checked: &'a mut u64,
}

impl CounterexampleSearch<'_> {
    fn run(&mut self, pos: usize, max_used: u32) -> Result<Outcome> {
        if pos == self.relevant.len() {
            if *self.checked >= self.q.budget {
                return Ok(Outcome::OutOfBudget);
            }
            *self.checked += 1;
            let chi = ProductColoring::explicit(self.n, self.q.d, self.q.c, self.table.clone())?;
            for t in (1..=self.n as u32).combinations(self.q.m) {
                if monochromatic_with(&chi, &t, self.ids)? {
                    return Ok(Outcome::Exhausted);
                }
            }
            return Ok(Outcome::Found(chi));
        }
        let limit = (max_used + 1).min(self.q.c);
        for color in 1..=limit {
            self.table[self.relevant[pos]] = color;
            match self.run(pos + 1, max_used.max(color))? {
                Outcome::Exhausted => {}
                other => return Ok(other),
            }
        }
        self.table[self.relevant[pos]] = 1;
        Ok(Outcome::Exhausted)
    }
}

/// `(1 - 1/c) m` when `n >= c (m - 1) + 1`: some color then holds `m`
/// vertices, so some edge is monochromatic, and no `m`-edge deviates more.
pub fn complete_disc_formula(n: usize, m: usize, c: u32) -> Option<DiscValue> {
    (n > c as usize * (m - 1)).then(|| DiscValue::new(u64::from(c - 1) * m as u64, c))
}

/// `disc(([n], C([n], m)), c)`: the closed form when it applies, exact search otherwise.
pub fn complete_disc_value(n: usize, m: usize, c: u32, solver: &ExactSolver) -> Result<DiscValue> {
    if m == 0 || m > n {
        return Err(argument(format!("need 1 <= m <= n, got m = {m}, n = {n}")));
    }
    if c < 2 {
        return Err(argument(format!("need at least 2 colors, got {c}")));
    }
    match complete_disc_formula(n, m, c) {
        Some(v) => Ok(v),
        None => Ok(solver.solve(&complete_uniform(n, m)?, c)?.0),
    }
}
