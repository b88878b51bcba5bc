//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
//!
//! Every check compares library output against an oracle written here from
//! first principles (brute-force enumeration, direct counting).

use std::collections::{BTreeMap, BTreeSet};
use std::panic;
use std::process::ExitCode;

use itertools::Itertools;
use num_rational::Ratio;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use symdisc::bounds::{
    census, complete_disc_formula, complete_disc_value, imbalance_lower_bound, lower_bound_holds,
    min_m_for_lower_bound, ramsey_search, RamseyQuery, RamseyStatus,
};
use symdisc::constructions::{
    block_reduced_coloring, divisibility_gate, shift_projection, shift_reduced_coloring,
    shift_reduced_dimension, simplex_balanced_coloring,
};
use symdisc::hypergraph::{disc_exact, disc_of_coloring, random_hypergraph, ExactSolver};
use symdisc::product::{
    direct_product, edge_power_counts_fast, edge_power_counts_slow, product_disc_of_coloring,
    DEFAULT_PRODUCT_CAP,
};
use symdisc::simplex::{
    classify_point, enumerate_partitions, enumerate_simplices, simplex_count, simplex_points,
    stirling2, stirling2_recurrence,
};
use symdisc::verify::small_hypergraphs;
use symdisc::{Coloring, Error, Hypergraph, ProductColoring};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: symdisc::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

// ---------------------------------------------------------------- oracles

fn binom(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

fn fact(n: u64) -> u128 {
    (1..=u128::from(n)).product()
}

/// Set partitions of `[d]` into exactly `l` blocks, counted by generating
/// restricted growth strings.
fn partitions_by_rgs(d: usize, l: usize) -> u128 {
    fn go(pos: usize, d: usize, max: usize, l: usize) -> u128 {
        if pos == d {
            return u128::from(max == l);
        }
        (1..=(max + 1).min(l))
            .map(|v| go(pos + 1, d, max.max(v), l))
            .sum()
    }
    if d == 0 {
        return u128::from(l == 0);
    }
    go(1, d, 1, l)
}

fn all_points(t: &[u32], d: usize) -> Vec<Vec<u32>> {
    (0..d)
        .map(|_| t.iter().copied())
        .multi_cartesian_product()
        .collect()
}

fn distinct(x: &[u32]) -> usize {
    x.iter().collect::<BTreeSet<_>>().len()
}

/// `c * max_i |count_i - size/c|` for one multiset of colors.
fn scaled_imbalance(colors: impl Iterator<Item = u32>, c: u32) -> u64 {
    let mut counts = vec![0i128; c as usize];
    let mut size = 0i128;
    for col in colors {
        counts[col as usize - 1] += 1;
        size += 1;
    }
    counts
        .iter()
        .map(|&k| (i128::from(c) * k - size).unsigned_abs() as u64)
        .max()
        .unwrap_or(0)
}

/// Per-color `c * count_i - |E|` on one edge, in color order.
fn scaled_deviations(colors: impl Iterator<Item = u32>, c: u32) -> Vec<i128> {
    let mut counts = vec![0i128; c as usize];
    let mut size = 0i128;
    for col in colors {
        counts[col as usize - 1] += 1;
        size += 1;
    }
    counts.iter().map(|&k| i128::from(c) * k - size).collect()
}

/// `c * disc(Δ^d H, χ)` by visiting every point of every `E^d`.
fn brute_product_disc(h: &Hypergraph, chi: &ProductColoring) -> u64 {
    h.edges()
        .iter()
        .map(|e| {
            scaled_imbalance(
                all_points(e, chi.d())
                    .iter()
                    .map(|x| chi.evaluate(x).unwrap()),
                chi.colors(),
            )
        })
        .max()
        .unwrap_or(0)
}

fn brute_disc_of(h: &Hypergraph, assignment: &[u32], c: u32) -> u64 {
    h.edges()
        .iter()
        .map(|e| scaled_imbalance(e.iter().map(|&v| assignment[v as usize - 1]), c))
        .max()
        .unwrap_or(0)
}

/// `c * disc(H, c)` over all `c^n` colorings.
fn brute_disc(h: &Hypergraph, c: u32) -> u64 {
    (0..h.n())
        .map(|_| 1..=c)
        .multi_cartesian_product()
        .map(|a| brute_disc_of(h, &a, c))
        .min()
        .unwrap_or(0)
}

/// Every simplex of `T^d` monochromatic, checked from the definition: the
/// points of `T^d` sharing a simplex are exactly those whose coordinates
/// induce the same ordered pattern (ties and ranks of the values).
fn oracle_monochromatic(chi: &ProductColoring, t: &[u32]) -> bool {
    let mut seen: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
    for x in all_points(t, chi.d()) {
        let vals: Vec<u32> = x
            .iter()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let pattern: Vec<usize> = x.iter().map(|v| vals.binary_search(v).unwrap()).collect();
        let color = chi.evaluate(&x).unwrap();
        if *seen.entry(pattern).or_insert(color) != color {
            return false;
        }
    }
    true
}

fn oracle_has_mono_subgrid(chi: &ProductColoring, m: usize) -> bool {
    (1..=chi.n() as u32)
        .combinations(m)
        .any(|t| oracle_monochromatic(chi, &t))
}

fn random_coloring(rng: &mut ChaCha8Rng, n: usize, c: u32) -> Coloring {
    Coloring::new(c, (0..n).map(|_| 1 + (rng.next_u32() % c)).collect()).unwrap()
}

// --------------------------------------------------------------- criteria

fn counting_identity() -> Outcome {
    let mut cases = 0;
    for t in 1..=6u32 {
        for d in 1..=6usize {
            let points = all_points(&(1..=t).collect::<Vec<_>>(), d);
            let mut by_dim = vec![0u128; d + 1];
            for x in &points {
                by_dim[distinct(x)] += 1;
            }
            let mut sum = 0u128;
            for (l, &points_at_l) in by_dim.iter().enumerate().skip(1) {
                let term = lib(simplex_count(d, l))? * binom(u64::from(t), l as u64);
                ensure!(
                    term == points_at_l,
                    "t={t} d={d} l={l}: {term} vs {points_at_l} points"
                );
                sum += term;
            }
            ensure!(sum == u128::from(t).pow(d as u32), "t={t} d={d}: sum {sum}");
            cases += 1;
        }
    }
    Ok(format!("{cases} (t,d) pairs"))
}

fn partition_property() -> Outcome {
    let sets: [&[u32]; 6] = [
        &[1],
        &[2, 5],
        &[1, 2, 3],
        &[1, 3, 4, 7],
        &[2, 3, 4, 5],
        &[1, 2, 3, 4],
    ];
    let mut points_checked = 0;
    for d in 1..=4usize {
        let ids = lib(enumerate_simplices(d, &(1..=d).collect::<Vec<_>>()))?;
        for t in sets {
            let mut covered = BTreeSet::new();
            for id in &ids {
                for x in lib(simplex_points(id, t))? {
                    ensure!(
                        covered.insert(x.clone()),
                        "d={d} T={t:?}: {x:?} in two simplices"
                    );
                    let (back, alpha) = lib(classify_point(&x))?;
                    ensure!(
                        &back == id && back.point(&alpha) == x,
                        "d={d}: classify round trip at {x:?}"
                    );
                }
            }
            let all: BTreeSet<_> = all_points(t, d).into_iter().collect();
            ensure!(covered == all, "d={d} T={t:?}: simplices miss points");
            points_checked += all.len();
        }
    }
    Ok(format!("{points_checked} points"))
}

fn stirling_cross_check() -> Outcome {
    for d in 1..=8usize {
        for l in 1..=d {
            let f = lib(stirling2(d, l))?;
            let r = lib(stirling2_recurrence(d, l))?;
            let e = lib(enumerate_partitions(d, l))?.len() as u128;
            let o = partitions_by_rgs(d, l);
            ensure!(
                f == r && r == e && e == o,
                "S({d},{l}): formula {f}, recurrence {r}, enumeration {e}, oracle {o}"
            );
        }
    }
    for d in 2..=12usize {
        let s = lib(stirling2(d, 2))?;
        ensure!(s == (1u128 << (d - 1)) - 1, "S({d},2) = {s}");
    }
    Ok("d <= 8, S(d,2) for d <= 12".into())
}

fn oracle_gate(c: u32, d: usize) -> bool {
    (2..=d).all(|k| (fact(k as u64) * partitions_by_rgs(d, k)).is_multiple_of(u128::from(c)))
}

fn gate_corollaries() -> Outcome {
    let gate = |c: u32, d: usize| lib(divisibility_gate(c, d)).map(|g| g.pass);
    let mut checks = 0;
    for d in 2..=12usize {
        for c in 2..=12u32 {
            ensure!(
                gate(c, d)? == oracle_gate(c, d),
                "gate({c},{d}) disagrees with oracle"
            );
        }
        ensure!(gate(2, d)?, "gate(2,{d}) fails");
        ensure!(gate(3, d)? == (d % 2 == 1), "gate(3,{d}) parity");
        for l in [1, 2] {
            ensure!(!gate(4 * l, d)?, "gate({},{d}) passes", 4 * l);
        }
        for c in [3, 5, 7] {
            ensure!(
                gate(c, d)? == gate(2 * c, d)?,
                "gate({c},{d}) vs gate({},{d})",
                2 * c
            );
        }
        checks += 1;
    }
    Ok(format!("d = 2..12 ({checks} dimensions)"))
}

fn transfer_equality() -> Outcome {
    let mut instances = 0;
    let mut fast_checked = 0;
    for (c, d) in [(2u32, 2usize), (2, 3), (3, 3), (2, 4)] {
        for seed in 0..24u64 {
            let n = 1 + (seed % 4) as usize;
            let h = lib(random_hypergraph(n, 1 + (seed % 3) as usize, n, seed))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let psi = if seed % 2 == 0 {
                lib(disc_exact(&h, c))?.1
            } else {
                random_coloring(&mut rng, n, c)
            };
            let chi = lib(simplex_balanced_coloring(&psi, d))?;
            for e in h.edges() {
                let on_power =
                    scaled_deviations(all_points(e, d).iter().map(|x| chi.evaluate(x).unwrap()), c);
                let on_edge = scaled_deviations(e.iter().map(|&v| psi.color_of(v)), c);
                ensure!(
                    on_power == on_edge,
                    "c={c} d={d} seed={seed} edge {e:?}: {on_power:?} vs {on_edge:?}"
                );
                if n.pow(d as u32) <= 3000 {
                    let fast = lib(edge_power_counts_fast(&chi, e))?;
                    let slow = lib(edge_power_counts_slow(&chi, e, DEFAULT_PRODUCT_CAP))?;
                    ensure!(fast == slow, "c={c} d={d} seed={seed}: fast path differs");
                    fast_checked += 1;
                }
            }
            let left = lib(product_disc_of_coloring(&h, &chi, DEFAULT_PRODUCT_CAP))?;
            let right = lib(disc_of_coloring(&h, &psi))?;
            ensure!(
                left == right && left.numerator() == brute_disc_of(&h, psi.assignment(), c),
                "c={c} d={d} seed={seed}: {left} vs {right}"
            );
            instances += 1;
        }
    }
    Ok(format!(
        "{instances} instances, {fast_checked} edges fast = slow"
    ))
}

fn prime_power_reduction() -> Outcome {
    let hs = small_hypergraphs(3);
    let mut edges_checked = 0;
    for (p, q, d) in [(2u32, 1u32, 2usize), (2, 1, 3), (2, 2, 4)] {
        let c = p.pow(q);
        let s = shift_reduced_dimension(c, d).ok_or("no reduced dimension")?;
        ensure!(
            s == d - ((p - 1) * p.pow(q - 1)) as usize,
            "s for ({p},{q},{d})"
        );
        for (i, h) in hs.iter().enumerate() {
            let n = h.n();
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let table: Vec<u32> = (0..n.pow(s as u32))
                .map(|_| 1 + rng.next_u32() % c)
                .collect();
            let inner = lib(ProductColoring::explicit(n, s, c, table))?;
            let chi = lib(shift_reduced_coloring(inner.clone(), p, q, d))?;
            for e in h.edges() {
                let outer =
                    scaled_imbalance(all_points(e, d).iter().map(|x| chi.evaluate(x).unwrap()), c);
                let base = scaled_imbalance(
                    all_points(e, s).iter().map(|x| inner.evaluate(x).unwrap()),
                    c,
                );
                ensure!(
                    outer <= base,
                    "({p},{q},{d}) edge {e:?}: {outer}/{c} > {base}/{c}"
                );
                // points fixed by rotating the first c coordinates p^(q-1) times
                let short_len = p.pow(q - 1) as usize;
                let short: Vec<Vec<u32>> = all_points(e, d)
                    .into_iter()
                    .filter(|x| (0..c as usize).all(|j| x[j] == x[(j + short_len) % c as usize]))
                    .collect();
                let images: BTreeSet<Vec<u32>> = short
                    .iter()
                    .map(|x| {
                        let y: Vec<u32> = x[..short_len]
                            .iter()
                            .chain(&x[c as usize..])
                            .copied()
                            .collect();
                        assert_eq!(y, shift_projection(x, p, q));
                        y
                    })
                    .collect();
                let target: BTreeSet<Vec<u32>> = all_points(e, s).into_iter().collect();
                ensure!(
                    images.len() == short.len() && images == target,
                    "({p},{q},{d}) edge {e:?}: projection not bijective"
                );
                edges_checked += 1;
            }
        }
    }
    Ok(format!("{edges_checked} edges"))
}

fn block_reduction() -> Outcome {
    let hs = small_hypergraphs(3);
    for h in &hs {
        let best = brute_disc(h, 6);
        let (value, psi) = lib(disc_exact(h, 6))?;
        ensure!(
            value.numerator() == best,
            "disc_exact(H,6) = {value} vs brute {best}/6"
        );
        let chi = lib(block_reduced_coloring(
            ProductColoring::from_base(&psi),
            3,
            3,
        ))?;
        let left = brute_product_disc(h, &chi);
        ensure!(left <= best, "H {:?}: {left}/6 > {best}/6", h.edges());
    }
    let psi = Coloring::new(4, vec![1, 2, 3]).unwrap();
    match block_reduced_coloring(ProductColoring::from_base(&psi), 3, 3) {
        Err(Error::Precondition(_)) => {}
        other => return Err(format!("c=4, d'=3 not rejected: {other:?}")),
    }
    Ok(format!("{} hypergraphs, c=4 rejected", hs.len()))
}

fn oracle_margin(k: usize, d: usize, m: u64, kappa: usize) -> Ratio<i128> {
    let mut v = Ratio::new(binom(m, kappa as u64) as i128, 2);
    for l in 1..kappa {
        v -= Ratio::from_integer(
            (fact(l as u64) * partitions_by_rgs(d, l) * binom(m, l as u64)) as i128,
        );
    }
    v - Ratio::new((m as i128).pow(k as u32), 3 * fact(k as u64) as i128)
}

fn lower_bound_arithmetic() -> Outcome {
    let holds =
        |k, d, m| (k..=d).all(|kappa| oracle_margin(k, d, m, kappa) >= Ratio::from_integer(0));
    let mut found = Vec::new();
    for d in 2..=5usize {
        for k in 2..=d {
            let m = lib(min_m_for_lower_bound(k, d))?;
            ensure!(
                holds(k, d, m) && lib(lower_bound_holds(k, d, m))?,
                "(k={k},d={d}): fails at m={m}"
            );
            ensure!(
                (1..m).all(|mm| !holds(k, d, mm)),
                "(k={k},d={d}): m={m} not minimal"
            );
            found.push(format!("{k}/{d}:{m}"));
        }
    }
    let mut colorings = 0;
    for c in [2u32, 3] {
        for m in 1..=4usize {
            let t: Vec<u32> = (1..=m as u32).collect();
            // any coloring of [m]^2 with monochromatic simplices is fixed by
            // its colors on the diagonal, above it and below it
            for cols in (0..3).map(|_| 1..=c).multi_cartesian_product() {
                let chi = lib(ProductColoring::tabulate(
                    m,
                    2,
                    c,
                    DEFAULT_PRODUCT_CAP,
                    |x| {
                        cols[match x[0].cmp(&x[1]) {
                            std::cmp::Ordering::Equal => 0,
                            std::cmp::Ordering::Less => 1,
                            std::cmp::Ordering::Greater => 2,
                        }]
                    },
                ))?;
                ensure!(
                    oracle_monochromatic(&chi, &t),
                    "tabulated coloring not monochromatic"
                );
                let cen = lib(census(&chi, &t))?;
                let kappa = cen.kappa().ok_or("no unbalanced dimension")?;
                let bound = lib(imbalance_lower_bound(&cen, kappa))?;
                let actual = scaled_imbalance(
                    all_points(&t, 2).iter().map(|x| chi.evaluate(x).unwrap()),
                    c,
                );
                ensure!(
                    bound <= Ratio::new(i128::from(actual), i128::from(c)),
                    "c={c} m={m} {cols:?}: bound {bound} > {actual}/{c}"
                );
                colorings += 1;
            }
        }
    }
    Ok(format!("min m {}; {colorings} colorings", found.join(" ")))
}

fn ramsey_desk() -> Outcome {
    for (c, expect) in [(2u32, 3usize), (3, 4)] {
        let report = lib(ramsey_search(&RamseyQuery::new(c, 2, 2, 6)))?;
        ensure!(
            report.status == RamseyStatus::Determined { n: expect },
            "({c},2,2): {:?}",
            report.status
        );
        let cex = report.counterexample.ok_or("no counterexample")?;
        ensure!(
            cex.n() == expect - 1 && !oracle_has_mono_subgrid(&cex, 2),
            "({c},2,2): counterexample has a monochromatic subgrid"
        );
    }
    // c = 2: all 2^9 colorings of [3]^2 contain one, some coloring of [2]^2 avoids it
    let forced = (0..9)
        .map(|_| 1..=2u32)
        .multi_cartesian_product()
        .all(|table| {
            oracle_has_mono_subgrid(&ProductColoring::explicit(3, 2, 2, table).unwrap(), 2)
        });
    let avoidable = (0..4)
        .map(|_| 1..=2u32)
        .multi_cartesian_product()
        .any(|table| {
            !oracle_has_mono_subgrid(&ProductColoring::explicit(2, 2, 2, table).unwrap(), 2)
        });
    ensure!(
        forced && avoidable,
        "oracle: c=2 forced {forced}, avoidable {avoidable}"
    );
    // c = 3: for |T| = 2 the off-diagonal simplices are single points, so
    // only the diagonal colors matter
    let forced3 = (0..4)
        .map(|_| 1..=3u32)
        .multi_cartesian_product()
        .all(|diag| {
            let chi = ProductColoring::tabulate(4, 2, 3, 100, |x| {
                if x[0] == x[1] {
                    diag[x[0] as usize - 1]
                } else {
                    1
                }
            })
            .unwrap();
            oracle_has_mono_subgrid(&chi, 2)
        });
    let avoidable3 = (0..9)
        .map(|_| 1..=3u32)
        .multi_cartesian_product()
        .any(|table| {
            !oracle_has_mono_subgrid(&ProductColoring::explicit(3, 2, 3, table).unwrap(), 2)
        });
    ensure!(
        forced3 && avoidable3,
        "oracle: c=3 forced {forced3}, avoidable {avoidable3}"
    );
    Ok("(2,2,2) = 3, (3,2,2) = 4".into())
}

fn product_bound() -> Outcome {
    let hs = small_hypergraphs(3);
    let solver = ExactSolver { vertex_cap: 9 };
    let mut cases = 0;
    for h in &hs {
        let square = lib(direct_product(h, 2, DEFAULT_PRODUCT_CAP))?;
        for c in [2u32, 3] {
            let base = brute_disc(h, c);
            let prod = brute_disc(&square, c);
            let (lib_prod, _) = lib(solver.solve(&square, c))?;
            ensure!(
                lib_prod.numerator() == prod,
                "disc_exact(H^2,{c}) {lib_prod} vs brute {prod}/{c}"
            );
            // prod/c <= c (base/c)^2  <=>  prod <= base^2
            ensure!(
                prod <= base * base,
                "H {:?} c={c}: {prod}/{c} > c ({base}/{c})^2",
                h.edges()
            );
            cases += 1;
        }
    }
    Ok(format!("{cases} (H, c) pairs"))
}

fn complete_disc() -> Outcome {
    let solver = ExactSolver::default();
    let mut compared = 0;
    for n in 1..=6usize {
        for m in 1..=n {
            let h = lib(symdisc::hypergraph::complete_uniform(n, m))?;
            for c in [2u32, 3] {
                let brute = brute_disc(&h, c);
                let value = lib(complete_disc_value(n, m, c, &solver))?;
                ensure!(
                    value.numerator() == brute,
                    "K({n},{m}) c={c}: {value} vs brute {brute}/{c}"
                );
                if let Some(f) = complete_disc_formula(n, m, c) {
                    ensure!(
                        f.numerator() == brute,
                        "K({n},{m}) c={c}: formula {f} vs brute {brute}/{c}"
                    );
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} formula cases"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("counting identity", counting_identity),
        ("simplices partition T^d", partition_property),
        ("Stirling cross-check", stirling_cross_check),
        ("gate corollaries", gate_corollaries),
        ("transfer equality", transfer_equality),
        ("prime-power reduction", prime_power_reduction),
        ("block reduction", block_reduction),
        ("lower-bound arithmetic", lower_bound_arithmetic),
        ("Ramsey desk scale", ramsey_desk),
        ("product bound", product_bound),
        ("complete hypergraph discrepancy", complete_disc),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
