//! Colorings of `[n]^d` built from lower-dimensional colorings, and the
//! divisibility condition `c | k! S(d,k)` that decides when simplices can be
//! colored evenly.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{argument, Error, Result};
use crate::hypergraph::Coloring;
use crate::product::{ColoringKind, ProductColoring, SimplexAssignment};
use crate::simplex::{classify_point, enumerate_simplices, simplex_count, MAX_DIMENSION};

/// Divisibility of `k! S(d,k)` by `c` for one `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateRow {
    pub k: usize,
    /// `k! * S(d, k)`, the number of `k`-dimensional simplices.
    pub simplices: u128,
    pub residue: u128,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GateReport {
    pub c: u32,
    pub d: usize,
    /// One row per `k` in `2..=d`.
    pub rows: Vec<GateRow>,
    pub pass: bool,
}

impl GateReport {
    pub fn first_failure(&self) -> Option<&GateRow> {
        self.rows.iter().find(|r| !r.pass)
    }
}

/// Checks `c | k! S(d,k)` for every `k` in `2..=d`. Passes vacuously for `d = 1`.
pub fn divisibility_gate(c: u32, d: usize) -> Result<GateReport> {
    if c < 2 || d == 0 {
        return Err(argument(format!(
            "need c >= 2 and d >= 1, got c = {c}, d = {d}"
        )));
    }
    if d > MAX_DIMENSION {
        return Err(argument(format!(
            "dimension {d} exceeds supported maximum {MAX_DIMENSION}"
        )));
    }
    let rows = (2..=d)
        .map(|k| {
            let simplices = simplex_count(d, k)?;
            let residue = simplices % u128::from(c);
            Ok(GateRow {
                k,
                simplices,
                residue,
                pass: residue == 0,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let pass = rows.iter().all(|r| r.pass);
    Ok(GateReport { c, d, rows, pass })
}

fn require_gate(c: u32, d: usize) -> Result<()> {
    let report = divisibility_gate(c, d)?;
    match report.first_failure() {
        None => Ok(()),
        Some(row) => Err(Error::Precondition(format!(
            "{c} does not divide {k}! * S({d},{k}) = {} (residue {}) at k = {k}",
            row.simplices,
            row.residue,
            k = row.k
        ))),
    }
}

/// Round-robin assignment of the simplices of dimensions `2..=d`: within each
/// dimension the `j`-th simplex in enumeration order gets color `1 + (j mod c)`.
/// Each color receives exactly `k! S(d,k) / c` simplices of dimension `k`
/// whenever the gate passes.
pub fn balanced_assignment(d: usize, c: u32) -> Result<SimplexAssignment> {
    let mut map = BTreeMap::new();
    for k in 2..=d {
        for (j, id) in enumerate_simplices(d, &[k])?.into_iter().enumerate() {
            map.insert(id, 1 + (j as u32 % c));
        }
    }
    SimplexAssignment::new(d, c, map)
}

/// Colors every simplex of dimension `>= 2` monochromatically and evenly,
/// and the diagonal by `psi`. Requires the divisibility gate for `(c, d)`.
pub fn simplex_balanced_coloring(psi: &Coloring, d: usize) -> Result<ProductColoring> {
    if d == 0 {
        return Err(argument("dimension must be at least 1"));
    }
    require_gate(psi.colors(), d)?;
    ProductColoring::simplex_assigned(psi.clone(), d, balanced_assignment(d, psi.colors())?)
}

/// Orbit of a point under cyclic left shift of its first `c` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftOrbit {
    /// `points[j]` is `S^j x`.
    pub points: Vec<Vec<u32>>,
    /// Least `k >= 1` with `S^k x = x`; always divides `c`.
    pub period: usize,
}

fn shift_left(x: &mut [u32], c: usize) {
    x[..c].rotate_left(1);
}

pub fn shift_orbit(x: &[u32], c: usize) -> Result<ShiftOrbit> {
    if c == 0 || x.len() < c {
        return Err(argument(format!(
            "shift of the first {c} coordinates needs d >= c, got d = {}",
            x.len()
        )));
    }
    let mut points = vec![x.to_vec()];
    let mut cur = x.to_vec();
    loop {
        shift_left(&mut cur, c);
        if cur == x {
            break;
        }
        points.push(cur.clone());
    }
    let period = points.len();
    Ok(ShiftOrbit { points, period })
}

/// `Some(p, q)` when `c = p^q` for a prime `p`.
pub fn prime_power(c: u32) -> Option<(u32, u32)> {
    if c < 2 {
        return None;
    }
    let p = (2..=c).find(|p| c.is_multiple_of(*p))?;
    let mut rest = c;
    let mut q = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        q += 1;
    }
    (rest == 1).then_some((p, q))
}

/// Target dimension `s = d - (p - 1) p^(q - 1)` of one shift reduction, when
/// `c = p^q` is a prime power and `d >= c`.
pub fn shift_reduced_dimension(c: u32, d: usize) -> Option<usize> {
    let (p, q) = prime_power(c)?;
    if d < c as usize {
        return None;
    }
    Some(d - ((p - 1) * p.pow(q - 1)) as usize)
}

/// Rainbow-colors every full orbit of the cyclic shift on the first `c = p^q`
/// coordinates and delegates the remaining points to `inner`, which lives in
/// dimension `s = d - (p - 1) p^(q - 1)`.
///
/// On a full orbit with lexicographically least element `r`, the point
/// `S^i r` gets color `1 + (i mod c)`. A point with a shorter orbit is
/// `p^(q-1)`-periodic in its first `c` coordinates and is sent to `inner` at
/// `(x_1, ..., x_{p^(q-1)}, x_{c+1}, ..., x_d)`.
pub fn shift_reduced_coloring(
    inner: ProductColoring,
    p: u32,
    q: u32,
    d: usize,
) -> Result<ProductColoring> {
    if q == 0 || prime_power(p) != Some((p, 1)) {
        return Err(argument(format!(
            "need a prime p and q >= 1, got p = {p}, q = {q}"
        )));
    }
    let c = p.checked_pow(q).ok_or_else(|| argument("p^q overflows"))?;
    if inner.colors() != c {
        return Err(argument(format!(
            "inner coloring uses {} colors, p^q = {c}",
            inner.colors()
        )));
    }
    let s = shift_reduced_dimension(c, d)
        .ok_or_else(|| argument(format!("need d >= c = {c}, got d = {d}")))?;
    if inner.d() != s {
        return Err(argument(format!(
            "inner coloring has dimension {}, expected s = {s}",
            inner.d()
        )));
    }
    Ok(ProductColoring::from_kind(
        inner.n(),
        d,
        c,
        ColoringKind::ShiftReduced {
            p,
            q,
            inner: Box::new(inner),
        },
    ))
}

/// The projection of a short-orbit point to dimension `s`.
pub fn shift_projection(x: &[u32], p: u32, q: u32) -> Vec<u32> {
    let c = p.pow(q) as usize;
    let head = p.pow(q - 1) as usize;
    x[..head].iter().chain(&x[c..]).copied().collect()
}

pub(crate) fn eval_shift(x: &[u32], p: u32, q: u32, inner: &ProductColoring) -> u32 {
    let c = p.pow(q) as usize;
    let orbit = shift_orbit(x, c).expect("d >= c checked at construction");
    if orbit.period == c {
        let (j0, _) = orbit
            .points
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("orbit is nonempty");
        // x = S^i r with r = S^j0 x
        let i = (c - j0) % c;
        1 + i as u32
    } else {
        inner.eval(&shift_projection(x, p, q))
    }
}

/// Colors `z = (x, y)` with `x` the first `d'` coordinates: if `x` is
/// constant `ζ` the color is `inner(ζ, y)`, otherwise it is the color of the
/// simplex of `[n]^d'` containing `x` under the round-robin balanced
/// assignment, regardless of `y`. Requires the gate for `(c, d')`.
pub fn block_reduced_coloring(
    inner: ProductColoring,
    d: usize,
    block_dim: usize,
) -> Result<ProductColoring> {
    if block_dim < 2 || block_dim > d {
        return Err(argument(format!(
            "need 2 <= d' <= d, got d' = {block_dim}, d = {d}"
        )));
    }
    if inner.d() != d - block_dim + 1 {
        return Err(argument(format!(
            "inner coloring has dimension {}, expected d - d' + 1 = {}",
            inner.d(),
            d - block_dim + 1
        )));
    }
    require_gate(inner.colors(), block_dim)?;
    let assignment = balanced_assignment(block_dim, inner.colors())?;
    block_reduced_with_assignment(inner, d, assignment)
}

/// [`block_reduced_coloring`] with a caller-supplied simplex assignment on
/// `[n]^d'`, which must give every color the same number of simplices in
/// each dimension.
pub fn block_reduced_with_assignment(
    inner: ProductColoring,
    d: usize,
    assignment: SimplexAssignment,
) -> Result<ProductColoring> {
    let block_dim = assignment.dimension();
    if block_dim < 2 || block_dim > d || inner.d() != d - block_dim + 1 {
        return Err(argument(format!(
            "block dimension {block_dim} and inner dimension {} do not fit d = {d}",
            inner.d()
        )));
    }
    for k in 2..=block_dim {
        if !assignment
            .tally(k)
            .iter()
            .all(|&t| t == assignment.tally(k)[0])
        {
            return Err(Error::Precondition(format!(
                "simplices of dimension {k} are not evenly colored"
            )));
        }
    }
    Ok(ProductColoring::from_kind(
        inner.n(),
        d,
        inner.colors(),
        ColoringKind::BlockReduced {
            block_dim,
            assignment,
            inner: Box::new(inner),
        },
    ))
}

pub(crate) fn eval_block(
    z: &[u32],
    block_dim: usize,
    assignment: &SimplexAssignment,
    inner: &ProductColoring,
) -> u32 {
    let (x, y) = z.split_at(block_dim);
    if x.iter().all(|&v| v == x[0]) {
        let mut reduced = Vec::with_capacity(y.len() + 1);
        reduced.push(x[0]);
        reduced.extend_from_slice(y);
        inner.eval(&reduced)
    } else {
        let (id, _) = classify_point(x).expect("nonempty block");
        assignment.map()[&id]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::{disc_exact, disc_of_coloring, Hypergraph};
    use crate::product::{edge_power_counts_slow, product_disc_of_coloring, DEFAULT_PRODUCT_CAP};

    fn hg(n: usize, edges: &[&[u32]]) -> Hypergraph {
        Hypergraph::new(n, edges.iter().map(|e| e.to_vec()).collect()).unwrap()
    }

    #[test]
    fn gate_examples() {
        let r = divisibility_gate(3, 3).unwrap();
        assert!(r.pass);
        assert_eq!(
            r.rows.iter().map(|x| x.simplices).collect::<Vec<_>>(),
            vec![6, 6]
        );

        let r = divisibility_gate(3, 4).unwrap();
        assert!(!r.pass);
        assert_eq!(r.first_failure().unwrap().k, 2);
        assert_eq!(r.first_failure().unwrap().simplices, 14);

        for d in 2..=12 {
            assert_eq!(
                divisibility_gate(4, d).unwrap().first_failure().unwrap().k,
                2
            );
        }
        assert!(divisibility_gate(7, 1).unwrap().pass);
        assert!(divisibility_gate(6, 3).unwrap().pass);
        assert!(divisibility_gate(1, 3).is_err());
    }

    #[test]
    fn balanced_coloring_uses_two_simplices_per_color() {
        let psi = Coloring::new(3, vec![1, 2]).unwrap();
        let chi = simplex_balanced_coloring(&psi, 3).unwrap();
        let ColoringKind::SimplexAssigned { assignment, .. } = chi.kind() else {
            panic!()
        };
        assert_eq!(assignment.tally(2), &[2, 2, 2]);
        assert_eq!(assignment.tally(3), &[2, 2, 2]);
    }

    #[test]
    fn two_colors_in_the_plane_split_above_and_below() {
        let psi = Coloring::new(2, vec![2, 1, 2]).unwrap();
        let chi = simplex_balanced_coloring(&psi, 2).unwrap();
        for x in 1..=3 {
            for y in 1..=3 {
                let expected = match x.cmp(&y) {
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Greater => 2,
                    std::cmp::Ordering::Equal => psi.color_of(x),
                };
                assert_eq!(chi.evaluate(&[x, y]).unwrap(), expected);
            }
        }
    }

    #[test]
    fn balanced_coloring_transfers_the_base_value() {
        let h = hg(2, &[&[1, 2]]);
        let psi = Coloring::new(3, vec![1, 2]).unwrap();
        let chi = simplex_balanced_coloring(&psi, 3).unwrap();
        let left = product_disc_of_coloring(&h, &chi, DEFAULT_PRODUCT_CAP).unwrap();
        assert_eq!(left.to_string(), "2/3");
        assert_eq!(left, disc_of_coloring(&h, &psi).unwrap());
    }

    #[test]
    fn balanced_coloring_rejects_failing_gate() {
        let psi = Coloring::new(3, vec![1, 2]).unwrap();
        let err = simplex_balanced_coloring(&psi, 2).unwrap_err();
        assert!(
            matches!(err, Error::Precondition(ref m) if m.contains("k = 2")),
            "{err}"
        );
    }

    #[test]
    fn orbit_examples() {
        let o = shift_orbit(&[1, 2, 7], 2).unwrap();
        assert_eq!(
            (o.points, o.period),
            (vec![vec![1, 2, 7], vec![2, 1, 7]], 2)
        );
        let o = shift_orbit(&[3, 3], 2).unwrap();
        assert_eq!((o.points, o.period), (vec![vec![3, 3]], 1));
        let o = shift_orbit(&[1, 2, 1, 2], 4).unwrap();
        assert_eq!((o.points.len(), o.period), (2, 2));
        assert!(shift_orbit(&[1, 2], 3).is_err());
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(6), None);
        assert_eq!(shift_reduced_dimension(4, 4), Some(2));
        assert_eq!(shift_reduced_dimension(4, 3), None);
        assert_eq!(shift_reduced_dimension(3, 5), Some(3));
    }

    #[test]
    fn shift_reduction_in_the_plane() {
        let psi = Coloring::new(2, vec![2, 1, 1]).unwrap();
        let chi = shift_reduced_coloring(ProductColoring::from_base(&psi), 2, 1, 2).unwrap();
        assert_eq!(chi.evaluate(&[1, 2]).unwrap(), 1);
        assert_eq!(chi.evaluate(&[2, 1]).unwrap(), 2);
        assert_eq!(chi.evaluate(&[2, 3]).unwrap(), 1);
        assert_eq!(chi.evaluate(&[3, 2]).unwrap(), 2);
        for v in 1..=3 {
            assert_eq!(chi.evaluate(&[v, v]).unwrap(), psi.color_of(v));
        }
    }

    #[test]
    fn shift_reduction_bounds_base_discrepancy() {
        let h = hg(3, &[&[1, 2, 3], &[1, 2]]);
        let (best, psi) = disc_exact(&h, 2).unwrap();
        let chi = shift_reduced_coloring(ProductColoring::from_base(&psi), 2, 1, 2).unwrap();
        assert!(product_disc_of_coloring(&h, &chi, DEFAULT_PRODUCT_CAP).unwrap() <= best);
    }

    #[test]
    fn rainbow_orbits_are_balanced() {
        let psi = Coloring::new(4, vec![1, 2, 3]).unwrap();
        let inner = simplex_free_inner(&psi, 2);
        let chi = shift_reduced_coloring(inner, 2, 2, 4).unwrap();
        let orbit = shift_orbit(&[1, 2, 3, 3], 4).unwrap();
        let mut colors: Vec<u32> = orbit
            .points
            .iter()
            .map(|x| chi.evaluate(x).unwrap())
            .collect();
        colors.sort_unstable();
        assert_eq!(colors, vec![1, 2, 3, 4]);
    }

    fn simplex_free_inner(psi: &Coloring, s: usize) -> ProductColoring {
        ProductColoring::tabulate(psi.n(), s, psi.colors(), 1000, |x| psi.color_of(x[0])).unwrap()
    }

    #[test]
    fn shift_parameter_validation() {
        let psi = Coloring::new(2, vec![1, 2]).unwrap();
        let base = ProductColoring::from_base(&psi);
        assert!(shift_reduced_coloring(base.clone(), 4, 1, 4).is_err());
        assert!(shift_reduced_coloring(base.clone(), 2, 1, 3).is_err());
        assert!(shift_reduced_coloring(base, 3, 1, 3).is_err());
    }

    #[test]
    fn block_reduction_gate() {
        let psi = Coloring::new(4, vec![1, 2]).unwrap();
        let err = block_reduced_coloring(ProductColoring::from_base(&psi), 3, 3).unwrap_err();
        assert!(
            matches!(err, Error::Precondition(ref m) if m.contains("does not divide") && m.contains("= 6")),
            "{err}"
        );
        let psi = Coloring::new(6, vec![1, 2, 3]).unwrap();
        assert!(block_reduced_coloring(ProductColoring::from_base(&psi), 3, 3).is_ok());
        assert!(block_reduced_coloring(ProductColoring::from_base(&psi), 4, 3).is_err());
    }

    #[test]
    fn block_reduction_singleton_edge_follows_inner() {
        let psi = Coloring::new(6, vec![4, 2, 5]).unwrap();
        let chi = block_reduced_coloring(ProductColoring::from_base(&psi), 3, 3).unwrap();
        for v in 1..=3 {
            let counts = edge_power_counts_slow(&chi, &[v], 100).unwrap();
            assert_eq!(counts.counts[psi.color_of(v) as usize - 1], 1);
        }
    }

    #[test]
    fn block_reduction_bounds_inner() {
        let h = hg(3, &[&[1, 2, 3], &[2, 3], &[1, 3]]);
        let (best, psi) = disc_exact(&h, 6).unwrap();
        let chi = block_reduced_coloring(ProductColoring::from_base(&psi), 3, 3).unwrap();
        assert!(product_disc_of_coloring(&h, &chi, DEFAULT_PRODUCT_CAP).unwrap() <= best);
    }
}
