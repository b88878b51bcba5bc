//! Named invariant suites, run by `symdisc verify <suite>`.

use itertools::Itertools;
use num_rational::Ratio;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::Serialize;

use crate::arith::binomial;
use crate::bounds::{
    census, complete_disc_formula, imbalance_lower_bound, lower_bound_holds, min_m_for_lower_bound,
    ramsey_search, RamseyQuery, RamseyStatus,
};
use crate::constructions::{
    block_reduced_coloring, divisibility_gate, shift_orbit, shift_projection,
    shift_reduced_coloring, simplex_balanced_coloring,
};
use crate::error::{argument, Result};
use crate::hypergraph::{
    complete_uniform, disc_exact, disc_of_coloring, random_hypergraph, Coloring, Hypergraph,
};
use crate::product::{
    direct_product, edge_power_counts_fast, edge_power_counts_slow, edge_power_points,
    product_disc_of_coloring, symmetric_product_explicit, ProductColoring, DEFAULT_PRODUCT_CAP,
};
use crate::simplex::{
    classify_point, enumerate_partitions, enumerate_simplices, simplex_count, simplex_points,
    stirling2, stirling2_recurrence,
};

pub const SUITES: &[&str] = &[
    "partition-identity",
    "simplex-partition",
    "stirling",
    "gate-corollaries",
    "transfer-equality",
    "prime-power",
    "block-reduction",
    "lower-bound",
    "ramsey",
    "product-bound",
    "complete-disc",
];

#[derive(Clone, Debug, Serialize)]
pub struct PropertyTally {
    pub property: String,
    pub cases: u64,
    pub failures: u64,
    /// Free-form result line, e.g. `n = 3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl PropertyTally {
    fn new(property: &str) -> Self {
        Self {
            property: property.to_string(),
            cases: 0,
            failures: 0,
            note: None,
        }
    }

    fn check(&mut self, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyTally>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failures == 0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Parameters of the `ramsey` suite.
    pub c: u32,
    pub d: usize,
    pub m: usize,
    pub n_max: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            c: 2,
            d: 2,
            m: 2,
            n_max: 6,
        }
    }
}

pub fn run_suite(name: &str, opts: &VerifyOptions) -> Result<SuiteReport> {
    let properties = match name {
        "partition-identity" => partition_identity(),
        "simplex-partition" => simplex_partition()?,
        "stirling" => stirling()?,
        "gate-corollaries" => gate_corollaries()?,
        "transfer-equality" => transfer_equality(opts.seed)?,
        "prime-power" => prime_power(opts.seed)?,
        "block-reduction" => block_reduction(opts.seed)?,
        "lower-bound" => lower_bound()?,
        "ramsey" => ramsey(opts)?,
        "product-bound" => product_bound()?,
        "complete-disc" => complete_disc()?,
        other => {
            return Err(argument(format!(
                "unknown suite `{other}`; available: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        seed: opts.seed,
        properties,
    })
}

fn partition_identity() -> Vec<PropertyTally> {
    let mut tally = PropertyTally::new("sum_l l! S(d,l) C(t,l) = t^d");
    for t in 1..=6u64 {
        for d in 1..=6usize {
            let lhs: u128 = (1..=d)
                .map(|l| simplex_count(d, l).unwrap() * binomial(t, l as u64))
                .sum();
            tally.check(lhs == u128::from(t).pow(d as u32));
        }
    }
    vec![tally]
}

fn simplex_partition() -> Result<Vec<PropertyTally>> {
    let mut cover = PropertyTally::new("simplices partition T^d");
    let mut round = PropertyTally::new("classify inverts simplex_points");
    for d in 1..=4 {
        let ids = enumerate_simplices(d, &(1..=d).collect::<Vec<_>>())?;
        for t in [
            vec![1],
            vec![1, 2],
            vec![2, 5, 7],
            vec![1, 2, 3, 4],
            vec![3, 4, 8, 9],
        ] {
            let mut seen = std::collections::HashSet::new();
            let mut disjoint = true;
            for id in &ids {
                for x in simplex_points(id, &t)? {
                    disjoint &= seen.insert(x.clone());
                    let (back, alpha) = classify_point(&x)?;
                    round.check(&back == id && id.point(&alpha) == x);
                }
            }
            cover.check(disjoint && seen.len() == t.len().pow(d as u32));
        }
    }
    Ok(vec![cover, round])
}

fn stirling() -> Result<Vec<PropertyTally>> {
    let mut routes = PropertyTally::new("formula = recurrence = enumeration");
    for d in 1..=8 {
        for l in 1..=d {
            let f = stirling2(d, l)?;
            routes.check(
                f == stirling2_recurrence(d, l)? && f == enumerate_partitions(d, l)?.len() as u128,
            );
        }
    }
    let mut pairs = PropertyTally::new("S(d,2) = 2^(d-1) - 1");
    for d in 2..=12 {
        pairs.check(stirling2(d, 2)? == (1u128 << (d - 1)) - 1);
    }
    Ok(vec![routes, pairs])
}

fn gate_corollaries() -> Result<Vec<PropertyTally>> {
    let gate = |c, d| divisibility_gate(c, d).map(|r| r.pass);
    let mut two = PropertyTally::new("gate(2,d) passes");
    let mut three = PropertyTally::new("gate(3,d) iff d odd");
    let mut four = PropertyTally::new("gate(4l,d) fails");
    let mut doubling = PropertyTally::new("gate(c,d) iff gate(2c,d), c odd");
    for d in 2..=12 {
        two.check(gate(2, d)?);
        three.check(gate(3, d)? == (d % 2 == 1));
        for l in [1, 2] {
            four.check(!gate(4 * l, d)?);
        }
        for c in [3, 5, 7] {
            doubling.check(gate(c, d)? == gate(2 * c, d)?);
        }
    }
    Ok(vec![two, three, four, doubling])
}

/// `n` cycles through 1..=4 and the edge count through 1..=3.
fn sample_hypergraphs(seed: u64, count: usize, max_n: usize) -> Result<Vec<Hypergraph>> {
    (0..count)
        .map(|i| {
            let n = 1 + i % max_n;
            random_hypergraph(
                n,
                1 + i % 3,
                n,
                seed.wrapping_mul(1_000).wrapping_add(i as u64),
            )
        })
        .collect()
}

fn transfer_equality(seed: u64) -> Result<Vec<PropertyTally>> {
    let mut equal = PropertyTally::new("per-color deviation on E^d equals deviation of psi on E");
    let mut disc = PropertyTally::new("product discrepancy equals disc(H, psi)");
    let mut paths = PropertyTally::new("closed-form counts equal enumeration");
    for (c, d) in [(2u32, 2usize), (2, 3), (3, 3), (2, 4)] {
        for h in sample_hypergraphs(seed, 24, 4)? {
            let (_, psi) = disc_exact(&h, c)?;
            let chi = simplex_balanced_coloring(&psi, d)?;
            for edge in h.edges() {
                let fast = edge_power_counts_fast(&chi, edge)?;
                let base: Vec<i128> = psi
                    .class_counts(edge)
                    .iter()
                    .map(|&k| i128::from(c) * i128::from(k) - edge.len() as i128)
                    .collect();
                equal.check(fast.scaled_deviations() == base);
                if (h.n() as u64).pow(d as u32) <= 3000 {
                    paths.check(fast == edge_power_counts_slow(&chi, edge, DEFAULT_PRODUCT_CAP)?);
                }
            }
            disc.check(
                product_disc_of_coloring(&h, &chi, DEFAULT_PRODUCT_CAP)?
                    == disc_of_coloring(&h, &psi)?,
            );
        }
    }
    Ok(vec![equal, disc, paths])
}

fn random_explicit(n: usize, d: usize, c: u32, rng: &mut ChaCha8Rng) -> Result<ProductColoring> {
    let size = n.pow(d as u32);
    let table = (0..size).map(|_| 1 + rng.next_u32() % c).collect();
    ProductColoring::explicit(n, d, c, table)
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn prime_power(seed: u64) -> Result<Vec<PropertyTally>> {
    let mut per_edge = PropertyTally::new("per-edge imbalance on E^d <= inner imbalance on E^s");
    let mut bijection = PropertyTally::new("short orbits in E^d project bijectively onto E^s");
    let mut rng = rng_for(seed);
    for (p, q, d) in [(2u32, 1u32, 2usize), (2, 1, 3), (2, 2, 4)] {
        let c = p.pow(q);
        let s = d - ((p - 1) * p.pow(q - 1)) as usize;
        for h in sample_hypergraphs(seed, 12, 3)? {
            let inner = random_explicit(h.n(), s, c, &mut rng)?;
            let chi = shift_reduced_coloring(inner.clone(), p, q, d)?;
            for edge in h.edges() {
                let outer = edge_power_counts_slow(&chi, edge, DEFAULT_PRODUCT_CAP)?;
                let base = edge_power_counts_slow(&inner, edge, DEFAULT_PRODUCT_CAP)?;
                per_edge.check(outer.max_scaled_deviation() <= base.max_scaled_deviation());

                let mut images: Vec<Vec<u32>> = edge_power_points(edge, d)
                    .filter(|x| {
                        shift_orbit(x, c as usize)
                            .map(|o| o.period < c as usize)
                            .unwrap_or(false)
                    })
                    .map(|x| shift_projection(&x, p, q))
                    .collect();
                images.sort();
                let target: Vec<Vec<u32>> = edge_power_points(edge, s).collect();
                bijection.check(images == target);
            }
        }
    }
    Ok(vec![per_edge, bijection])
}

fn block_reduction(seed: u64) -> Result<Vec<PropertyTally>> {
    let mut bound = PropertyTally::new("disc(Δ^3 H, block coloring) <= disc(H, 6)");
    for h in sample_hypergraphs(seed, 12, 3)? {
        let (best, psi) = disc_exact(&h, 6)?;
        let chi = block_reduced_coloring(ProductColoring::from_base(&psi), 3, 3)?;
        bound.check(product_disc_of_coloring(&h, &chi, DEFAULT_PRODUCT_CAP)? <= best);
    }
    let mut reject = PropertyTally::new("c = 4, d' = 3 rejected");
    let psi = Coloring::new(4, vec![1, 2, 3])?;
    reject.check(block_reduced_coloring(ProductColoring::from_base(&psi), 3, 3).is_err());
    Ok(vec![bound, reject])
}

fn lower_bound() -> Result<Vec<PropertyTally>> {
    let mut minimal = PropertyTally::new("threshold m holds at m, fails at m - 1");
    for d in 2..=5 {
        for k in 2..=d {
            let m = min_m_for_lower_bound(k, d)?;
            minimal
                .check(lower_bound_holds(k, d, m)? && (m == 1 || !lower_bound_holds(k, d, m - 1)?));
        }
    }
    let mut imbalance = PropertyTally::new("census bound <= single-edge imbalance of [m]^2");
    for c in [2u32, 3] {
        for m in 1..=4usize {
            for colors in std::iter::repeat_n(1..=c, 3).multi_cartesian_product() {
                // colors: diagonal, x < y, x > y
                let chi = ProductColoring::tabulate(m, 2, c, DEFAULT_PRODUCT_CAP, |x| {
                    match x[0].cmp(&x[1]) {
                        std::cmp::Ordering::Equal => colors[0],
                        std::cmp::Ordering::Less => colors[1],
                        std::cmp::Ordering::Greater => colors[2],
                    }
                })?;
                let t: Vec<u32> = (1..=m as u32).collect();
                let cen = census(&chi, &t)?;
                let Some(kappa) = cen.kappa() else { continue };
                let bound = imbalance_lower_bound(&cen, kappa)?;
                let actual =
                    edge_power_counts_slow(&chi, &t, DEFAULT_PRODUCT_CAP)?.max_scaled_deviation();
                imbalance.check(bound <= Ratio::new(i128::from(actual), i128::from(c)));
            }
        }
    }
    Ok(vec![minimal, imbalance])
}

fn ramsey(opts: &VerifyOptions) -> Result<Vec<PropertyTally>> {
    let report = ramsey_search(&RamseyQuery::new(opts.c, opts.d, opts.m, opts.n_max))?;
    let mut tally = PropertyTally::new("minimal n");
    match report.status {
        RamseyStatus::Determined { n } => {
            let cex_ok = match &report.counterexample {
                Some(chi) => {
                    crate::bounds::find_monochromatic_subgrid(chi, opts.m, DEFAULT_PRODUCT_CAP)
                        .map(|t| t.is_none())
                        .unwrap_or(chi.n() < opts.m)
                }
                None => n == 1,
            };
            tally.check(cex_ok);
            tally.note = Some(format!("n = {n}"));
        }
        RamseyStatus::Unknown { n_max } => {
            tally.check(false);
            tally.note = Some(format!("unknown up to n = {n_max}"));
        }
        RamseyStatus::BudgetExceeded { at_n } => {
            tally.check(false);
            tally.note = Some(format!("budget exceeded at n = {at_n}"));
        }
    }
    Ok(vec![tally])
}

/// Every hypergraph on `[n]`, `n <= max_n`, with 1 or 2 edges (as multisets).
pub fn small_hypergraphs(max_n: usize) -> Vec<Hypergraph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let subsets: Vec<Vec<u32>> = (1..=n)
            .flat_map(|s| (1..=n as u32).combinations(s))
            .collect();
        for i in 0..subsets.len() {
            out.push(Hypergraph::new(n, vec![subsets[i].clone()]).expect("valid"));
            for j in i..subsets.len() {
                out.push(
                    Hypergraph::new(n, vec![subsets[i].clone(), subsets[j].clone()])
                        .expect("valid"),
                );
            }
        }
    }
    out
}

fn product_bound() -> Result<Vec<PropertyTally>> {
    let mut tally = PropertyTally::new("disc(H^2, c) <= c disc(H, c)^2");
    for h in small_hypergraphs(3) {
        for c in [2u32, 3] {
            let (base, _) = disc_exact(&h, c)?;
            let (prod, _) = disc_exact(&direct_product(&h, 2, DEFAULT_PRODUCT_CAP)?, c)?;
            // prod.num / c <= c * (base.num / c)^2  <=>  prod.num <= base.num^2
            let base_sq = base.to_ratio() * base.to_ratio() * i128::from(c);
            tally.check(prod.to_ratio() <= base_sq);
        }
    }
    let mut sym = PropertyTally::new("explicit Δ^2 H matches implicit evaluation");
    for h in small_hypergraphs(2) {
        let chi = ProductColoring::tabulate(h.n(), 2, 2, DEFAULT_PRODUCT_CAP, |x| {
            1 + (x[0] + 2 * x[1]) % 2
        })?;
        let flat = disc_of_coloring(
            &symmetric_product_explicit(&h, 2, DEFAULT_PRODUCT_CAP)?,
            &chi.flatten(DEFAULT_PRODUCT_CAP)?,
        )?;
        sym.check(flat == product_disc_of_coloring(&h, &chi, DEFAULT_PRODUCT_CAP)?);
    }
    Ok(vec![tally, sym])
}

fn complete_disc() -> Result<Vec<PropertyTally>> {
    let mut tally = PropertyTally::new("closed form equals exact search");
    for n in 1..=6 {
        for m in 1..=n {
            for c in [2u32, 3] {
                if let Some(formula) = complete_disc_formula(n, m, c) {
                    let (exact, _) = disc_exact(&complete_uniform(n, m)?, c)?;
                    tally.check(formula == exact);
                }
            }
        }
    }
    Ok(vec![tally])
}
