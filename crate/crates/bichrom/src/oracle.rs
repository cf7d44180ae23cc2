//! Ground-truth counting of bivariate colorings and exact recovery of the
//! chromatic polynomial by interpolation.
//!
//! This module is the trusted slow path: colorings are counted by exhaustive
//! enumeration with pruning, and the polynomial is reconstructed from counts
//! on a triangular grid that stays inside the `1 <= y <= x` regime where the
//! counting definition lives. Everything downstream is checked against it.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bipoly::{interpolate_points, BivariatePolynomial, Rational};
use crate::error::Error;
use crate::mixed_graph::MixedGraph;

/// Default cap on `|V|` for interpolation; grids above this take too long
/// for the exhaustive counter.
pub const DEFAULT_INTERPOLATION_BOUND: usize = 6;

/// Constraint between a vertex being assigned and an already-colored one.
enum Check {
    /// Edge `{v, other}`: colors may not be equal unless above the threshold.
    EdgeWith(usize),
    /// Arc `v -> other`: require `c(v) < c(other)` or `c(v) > y`.
    TailOf(usize),
    /// Arc `other -> v`: require `c(other) < c(v)` or `c(other) > y`.
    HeadOf(usize),
}

/// Count maps `c : V -> {1..x}` such that every edge `{u, v}` satisfies
/// `c(u) != c(v)` or `c(u) > y`, and every arc `u -> v` satisfies
/// `c(u) < c(v)` or `c(u) > y`.
///
/// `y = 0` is permitted: every color exceeds the threshold, so all
/// constraints are vacuous and the count is `x^|V|`.
pub fn count_colorings(g: &MixedGraph, x: u64, y: u64) -> Result<u64, Error> {
    if y > x {
        return Err(Error::ThresholdExceedsPalette { x, y });
    }
    let n = g.vertex_count();

    // Assign the most constrained vertices first so violations prune early.
    let mut degree = vec![0usize; n];
    for (u, v) in g.edges() {
        degree[u] += 1;
        degree[v] += 1;
    }
    for (t, h) in g.arcs() {
        degree[t] += 1;
        degree[h] += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
    let mut rank = vec![0usize; n];
    for (r, &v) in order.iter().enumerate() {
        rank[v] = r;
    }

    // checks[v] = constraints between v and vertices assigned before v.
    let mut checks: Vec<Vec<Check>> = (0..n).map(|_| Vec::new()).collect();
    for (u, v) in g.edges() {
        if rank[u] < rank[v] {
            checks[v].push(Check::EdgeWith(u));
        } else {
            checks[u].push(Check::EdgeWith(v));
        }
    }
    for (t, h) in g.arcs() {
        if rank[t] < rank[h] {
            checks[h].push(Check::HeadOf(t));
        } else {
            checks[t].push(Check::TailOf(h));
        }
    }

    fn rec(
        pos: usize,
        order: &[usize],
        checks: &[Vec<Check>],
        colors: &mut [u64],
        x: u64,
        y: u64,
    ) -> u64 {
        if pos == order.len() {
            return 1;
        }
        let v = order[pos];
        let mut total = 0;
        'color: for c in 1..=x {
            for check in &checks[v] {
                let ok = match *check {
                    Check::EdgeWith(u) => c != colors[u] || c > y,
                    Check::TailOf(h) => c < colors[h] || c > y,
                    Check::HeadOf(t) => colors[t] < c || colors[t] > y,
                };
                if !ok {
                    continue 'color;
                }
            }
            colors[v] = c;
            total += rec(pos + 1, order, checks, colors, x, y);
        }
        total
    }

    let mut colors = vec![0u64; n];
    Ok(rec(0, &order, &checks, &mut colors, x, y))
}

/// Recover the unique polynomial of degree <= `n` in each variable agreeing
/// with `counter` on the triangular grid `y in {1..n+1}`, `x in {y..y+n}`.
///
/// For each fixed `y` the counts determine a degree-`n` interpolant in `x`;
/// each `x`-coefficient is then fitted across the `n + 1` values of `y`.
/// All arithmetic is exact.
pub fn fit_on_grid<F>(n: usize, mut counter: F) -> Result<BivariatePolynomial, Error>
where
    F: FnMut(u64, u64) -> Result<u64, Error>,
{
    fit_on_grid_exact(n, |x, y| counter(x, y).map(|c| Rational::from(BigInt::from(c))))
}

/// As [`fit_on_grid`], but for signed or rational-valued grid functions
/// (alternating flat sums, for instance).
pub fn fit_on_grid_exact<F>(n: usize, mut value: F) -> Result<BivariatePolynomial, Error>
where
    F: FnMut(u64, u64) -> Result<Rational, Error>,
{
    let deg = n as u64;
    // rows[i][k] = coefficient of x^k in the fit at y = i + 1.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    for y in 1..=deg + 1 {
        let mut points = Vec::with_capacity(n + 1);
        for x in y..=y + deg {
            points.push((Rational::from(BigInt::from(x)), value(x, y)?));
        }
        let mut coeffs = interpolate_points(&points);
        coeffs.resize(n + 1, Rational::zero());
        rows.push(coeffs);
    }
    let mut poly = BivariatePolynomial::zero();
    for k in 0..=n {
        let points: Vec<(Rational, Rational)> = rows
            .iter()
            .enumerate()
            .map(|(i, row)| (Rational::from(BigInt::from(i as u64 + 1)), row[k].clone()))
            .collect();
        for (j, c) in interpolate_points(&points).into_iter().enumerate() {
            poly.add_term(k as u32, j as u32, c);
        }
    }
    Ok(poly)
}

/// The bivariate chromatic polynomial of `g`, recovered exactly from
/// brute-force counts. Fails if `|V|` exceeds `bound`.
pub fn interpolate_chi(g: &MixedGraph, bound: usize) -> Result<BivariatePolynomial, Error> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::InterpolationLimit { n, bound });
    }
    fit_on_grid(n, |x, y| count_colorings(g, x, y))
}
