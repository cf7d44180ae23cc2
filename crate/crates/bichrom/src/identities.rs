//! Deletion–contraction identities, the edge-elimination computation path,
//! compatible-pair counting, and the chromatic reciprocity check.
//!
//! The two deletion–contraction relations are verified as exact polynomial
//! identities with every constituent polynomial obtained from the counting
//! oracle. The edge relation also drives `chi_by_delcontr`, a third
//! independent way to compute chi. Reciprocity is checked both pointwise on
//! an integer grid and as an exact polynomial equality after interpolating
//! the alternating flat sum.

use std::collections::BTreeSet;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::bipoly::{BivariatePolynomial, Rational};
use crate::decomposition::chi_by_decomposition;
use crate::error::Error;
use crate::mixed_graph::{enumerate_acyclic_orientations, Flat, MixedGraph};
use crate::oracle::{fit_on_grid_exact, interpolate_chi};
use crate::order_poly::poset_from_orientation;

/// `x - y` as a polynomial, the weight of threshold-escaping merges.
fn x_minus_y() -> BivariatePolynomial {
    &BivariatePolynomial::x() - &BivariatePolynomial::y()
}

/// Both sides of the edge deletion–contraction relation for `e = {u, v}`:
///
/// chi_G  =  chi_{G-e} - chi_{G/e} + (x-y) * chi_{(G/e)-v_e}
///
/// Every chi is computed by the oracle, so a mismatch indicts the identity
/// rather than any single algorithm.
pub fn edge_delcontr_sides(
    g: &MixedGraph,
    u: &str,
    v: &str,
    bound: usize,
) -> Result<(BivariatePolynomial, BivariatePolynomial), Error> {
    let iu = g
        .vertex_index(u)
        .ok_or_else(|| Error::NoSuchVertex(u.to_string()))?;
    let iv = g
        .vertex_index(v)
        .ok_or_else(|| Error::NoSuchVertex(v.to_string()))?;
    let deleted = g.delete_edge(u, v)?;
    let contracted = g.contract_edge(u, v)?;
    let dropped = contracted.delete_vertex_index(iu.min(iv))?;

    let lhs = interpolate_chi(g, bound)?;
    let rhs = &(&interpolate_chi(&deleted, bound)? - &interpolate_chi(&contracted, bound)?)
        + &(&x_minus_y() * &interpolate_chi(&dropped, bound)?);
    Ok((lhs, rhs))
}

/// Check the edge deletion–contraction relation exactly.
pub fn check_edge_delcontr(g: &MixedGraph, u: &str, v: &str, bound: usize) -> Result<bool, Error> {
    let (lhs, rhs) = edge_delcontr_sides(g, u, v, bound)?;
    Ok(lhs == rhs)
}

/// Both sides of the arc relation for `a = u -> v`:
///
/// chi_G + chi_{G_a}  =  chi_{G-a} - chi_{G/a}
///                       + (x-y)(1-x+y) * chi_{(G/a)-v_a}
///                       + (x-y) * (chi_{G-a-v} + chi_{G-a-u})
///
/// where `G_a` reverses the arc. The relation ties the two directions
/// together; it determines their sum, not either alone.
pub fn arc_delcontr_sides(
    g: &MixedGraph,
    u: &str,
    v: &str,
    bound: usize,
) -> Result<(BivariatePolynomial, BivariatePolynomial), Error> {
    let iu = g
        .vertex_index(u)
        .ok_or_else(|| Error::NoSuchVertex(u.to_string()))?;
    let iv = g
        .vertex_index(v)
        .ok_or_else(|| Error::NoSuchVertex(v.to_string()))?;
    let reversed = g.reverse_arc(u, v)?;
    let deleted = g.delete_arc(u, v)?;
    let contracted = g.contract_arc(u, v)?;
    let dropped = contracted.delete_vertex_index(iu.min(iv))?;
    let without_head = deleted.delete_vertex(v)?;
    let without_tail = deleted.delete_vertex(u)?;

    let lhs = &interpolate_chi(g, bound)? + &interpolate_chi(&reversed, bound)?;

    let xy = x_minus_y();
    // (x - y)(1 - x + y) = (x - y) - (x - y)^2
    let escape_weight = &xy - &(&xy * &xy);
    let rhs_main = &interpolate_chi(&deleted, bound)? - &interpolate_chi(&contracted, bound)?;
    let rhs_merge = &escape_weight * &interpolate_chi(&dropped, bound)?;
    let rhs_ends = &xy
        * &(&interpolate_chi(&without_head, bound)? + &interpolate_chi(&without_tail, bound)?);
    let rhs = &(&rhs_main + &rhs_merge) + &rhs_ends;
    Ok((lhs, rhs))
}

/// Check the arc deletion–contraction relation exactly.
pub fn check_arc_delcontr(g: &MixedGraph, u: &str, v: &str, bound: usize) -> Result<bool, Error> {
    let (lhs, rhs) = arc_delcontr_sides(g, u, v, bound)?;
    Ok(lhs == rhs)
}

/// Compute chi by eliminating undirected edges with the edge relation,
/// pivoting on the lexicographically smallest edge (by sorted name pair),
/// and handing edge-free graphs to the decomposition. Intermediate results
/// are memoized on the serialized graph.
///
/// When the pivot pair also carries an arc — which contraction steps create
/// even from inputs that have none — the edge relation does not apply
/// (contraction would silently drop the arc as a loop), but the edge itself
/// is redundant: a violated edge condition means equal colors at most `y`,
/// which violates any arc on the pair too. Such edges are eliminated by
/// plain deletion.
pub fn chi_by_delcontr(g: &MixedGraph, bound: usize) -> Result<BivariatePolynomial, Error> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "graph",
            n,
            bound,
        });
    }
    let mut memo = HashMap::new();
    chi_delcontr_memo(g, bound, &mut memo)
}

fn chi_delcontr_memo(
    g: &MixedGraph,
    bound: usize,
    memo: &mut HashMap<String, BivariatePolynomial>,
) -> Result<BivariatePolynomial, Error> {
    let key = g.to_text();
    if let Some(hit) = memo.get(&key) {
        return Ok(hit.clone());
    }
    let pivot = g.edges().min_by_key(|&(u, v)| {
        let (a, b) = (g.vertex_name(u), g.vertex_name(v));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    });
    let chi = match pivot {
        None => chi_by_decomposition(g, bound)?,
        Some((iu, iv)) => {
            let (u, v) = (g.vertex_name(iu).to_string(), g.vertex_name(iv).to_string());
            let deleted = g.delete_edge(&u, &v)?;
            if g.has_arc(&u, &v) || g.has_arc(&v, &u) {
                // Edge implied by the coexisting arc; drop it.
                chi_delcontr_memo(&deleted, bound, memo)?
            } else {
                let contracted = g.contract_edge(&u, &v)?;
                let dropped = contracted.delete_vertex_index(iu.min(iv))?;
                let a = chi_delcontr_memo(&deleted, bound, memo)?;
                let b = chi_delcontr_memo(&contracted, bound, memo)?;
                let c = chi_delcontr_memo(&dropped, bound, memo)?;
                &(&a - &b) + &(&x_minus_y() * &c)
            }
        }
    };
    memo.insert(key, chi.clone());
    Ok(chi)
}

/// `m_H(x, y)`: the number of compatible pairs `(sigma, c)` on the flat's
/// quotient — `sigma` an acyclic orientation of the underlying graph,
/// `c : V -> {1..x}` weakly monotone along every directed edge, and
/// `c(v) > y` on `C(H) ∪ T(sigma)`.
///
/// Counted by brute force straight from the definition (including an inline
/// recomputation of the opposed tails), so it shares no counting machinery
/// with the order-polynomial route it is checked against.
pub fn count_compatible_pairs(h: &Flat, x: u64, y: u64) -> Result<u64, Error> {
    if y > x {
        return Err(Error::ThresholdExceedsPalette { x, y });
    }
    let quot = h.quotient();
    let n = quot.vertex_count();
    let mut total = 0u64;
    for sigma in enumerate_acyclic_orientations(&quot.underlying()) {
        // c(v) > y is forced on contracted vertices and on tails of arcs
        // directed against sigma.
        let mut above: BTreeSet<usize> = h.contracted().clone();
        for (t, hd) in quot.arcs() {
            if sigma.direction_of(t, hd) == Some((hd, t)) {
                above.insert(t);
            }
        }
        if n == 0 {
            total += 1;
            continue;
        }
        if x == 0 {
            continue;
        }
        let mut c = vec![1u64; n];
        loop {
            let monotone = sigma
                .directed_edges()
                .iter()
                .all(|&(t, hd)| c[t] <= c[hd]);
            if monotone && above.iter().all(|&v| c[v] > y) {
                total += 1;
            }
            let mut pos = 0;
            while pos < n {
                c[pos] += 1;
                if c[pos] <= x {
                    break;
                }
                c[pos] = 1;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    Ok(total)
}

/// The alternating flat sum `Σ_H (-1)^{|V(H)|} m_H(x, y)`.
pub fn compatible_pair_sum(g: &MixedGraph, x: u64, y: u64) -> Result<Rational, Error> {
    let mut acc = BigInt::zero();
    for h in g.enumerate_flats() {
        let m = BigInt::from(count_compatible_pairs(&h, x, y)?);
        if h.vertex_count() % 2 == 0 {
            acc += m;
        } else {
            acc -= m;
        }
    }
    Ok(Rational::from(acc))
}

/// Check chromatic reciprocity: `chi(-x, -y) = Σ_H (-1)^{|V(H)|} m_H(x, y)`.
///
/// Verified two ways: pointwise at every integer `0 <= y <= x <= xmax`, and
/// as an exact polynomial identity after interpolating the right-hand side
/// on the triangular grid.
pub fn check_chromatic_reciprocity(
    g: &MixedGraph,
    xmax: u64,
    bound: usize,
) -> Result<bool, Error> {
    let chi_neg = interpolate_chi(g, bound)?.negate_vars();
    for x in 0..=xmax {
        for y in 0..=x {
            if chi_neg.eval_int(x as i64, y as i64) != compatible_pair_sum(g, x, y)? {
                return Ok(false);
            }
        }
    }
    let rhs = fit_on_grid_exact(g.vertex_count(), |x, y| compatible_pair_sum(g, x, y))?;
    Ok(rhs == chi_neg)
}

/// Check the bridge the reciprocity proof rests on:
/// `m_H(x, y) = Σ_sigma Ω_{sigma, C(H) ∪ T(sigma)}(x, y + 1)`,
/// with the right side going through the bicolored-poset weak counting.
pub fn cross_check_mh(h: &Flat, x: u64, y: u64) -> Result<bool, Error> {
    let direct = count_compatible_pairs(h, x, y)?;
    let mut via_weak = 0u64;
    for sigma in enumerate_acyclic_orientations(&h.quotient().underlying()) {
        via_weak += poset_from_orientation(h, &sigma).count_weak_maps(x, y + 1)?;
    }
    Ok(direct == via_weak)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::DEFAULT_INTERPOLATION_BOUND as BOUND;

    fn single_arc() -> MixedGraph {
        MixedGraph::new(&["u", "v"], &[], &[("u", "v")]).unwrap()
    }

    fn mixed_triangle() -> MixedGraph {
        MixedGraph::new(
            &["v1", "v2", "v3"],
            &[("v1", "v2"), ("v1", "v3")],
            &[("v2", "v3")],
        )
        .unwrap()
    }

    #[test]
    fn edge_relation_on_single_edge() {
        let g = MixedGraph::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let (lhs, rhs) = edge_delcontr_sides(&g, "a", "b", BOUND).unwrap();
        // x^2 - y on both sides: x^2 - x + (x - y) * 1.
        let expected = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 1, -1, 1)]);
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn edge_relation_on_triangle() {
        assert!(check_edge_delcontr(&mixed_triangle(), "v1", "v2", BOUND).unwrap());
        assert!(check_edge_delcontr(&mixed_triangle(), "v1", "v3", BOUND).unwrap());
    }

    #[test]
    fn arc_relation_on_single_arc() {
        let (lhs, rhs) = arc_delcontr_sides(&single_arc(), "u", "v", BOUND).unwrap();
        // chi + chi_reversed = 2x^2 - y^2 - y.
        let expected =
            BivariatePolynomial::from_terms(&[(2, 0, 2, 1), (0, 2, -1, 1), (0, 1, -1, 1)]);
        assert_eq!(lhs, expected);
        assert_eq!(rhs, expected);
    }

    #[test]
    fn arc_relation_on_triangle() {
        assert!(check_arc_delcontr(&mixed_triangle(), "v2", "v3", BOUND).unwrap());
    }

    #[test]
    fn relations_demand_existing_elements() {
        assert!(matches!(
            check_edge_delcontr(&single_arc(), "u", "v", BOUND),
            Err(Error::NoSuchEdge(_, _))
        ));
        assert!(matches!(
            check_arc_delcontr(&mixed_triangle(), "v3", "v2", BOUND),
            Err(Error::NoSuchArc(_, _))
        ));
    }

    #[test]
    fn delcontr_computes_single_edge() {
        let g = MixedGraph::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let expected = BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 1, -1, 1)]);
        assert_eq!(chi_by_delcontr(&g, BOUND).unwrap(), expected);
    }

    #[test]
    fn delcontr_computes_triangle() {
        let expected = BivariatePolynomial::from_terms(&[
            (3, 0, 1, 1),
            (1, 2, -1, 2),
            (1, 1, -5, 2),
            (0, 2, 1, 1),
            (0, 1, 1, 1),
        ]);
        assert_eq!(chi_by_delcontr(&mixed_triangle(), BOUND).unwrap(), expected);
    }

    #[test]
    fn delcontr_delegates_arc_only_graphs() {
        let expected =
            BivariatePolynomial::from_terms(&[(2, 0, 1, 1), (0, 2, -1, 2), (0, 1, -1, 2)]);
        assert_eq!(chi_by_delcontr(&single_arc(), BOUND).unwrap(), expected);
    }

    #[test]
    fn delcontr_matches_oracle() {
        let graphs = [
            mixed_triangle(),
            MixedGraph::new(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("b", "c"), ("c", "d")],
                &[("a", "d"), ("c", "a")],
            )
            .unwrap(),
            MixedGraph::new(&["a", "b"], &[("a", "b")], &[("a", "b"), ("b", "a")]).unwrap(),
        ];
        for g in &graphs {
            assert_eq!(
                chi_by_delcontr(g, BOUND).unwrap(),
                interpolate_chi(g, BOUND).unwrap()
            );
        }
    }

    #[test]
    fn edge_coexisting_with_arc_is_redundant() {
        // Either arc condition failing at equal colors <= y also fails the
        // edge condition, so the edge never cuts anything extra.
        let with_edge =
            MixedGraph::new(&["a", "b", "c"], &[("a", "b")], &[("a", "b"), ("c", "b")]).unwrap();
        let without_edge = with_edge.delete_edge("a", "b").unwrap();
        assert_eq!(
            interpolate_chi(&with_edge, BOUND).unwrap(),
            interpolate_chi(&without_edge, BOUND).unwrap()
        );
        assert_eq!(
            chi_by_delcontr(&with_edge, BOUND).unwrap(),
            interpolate_chi(&with_edge, BOUND).unwrap()
        );
    }

    #[test]
    fn edge_relation_needs_an_arc_free_pivot_pair() {
        // With an arc alongside the pivot edge, contraction drops the arc
        // as a loop and the relation's bookkeeping breaks; the computation
        // path must take the redundancy route instead.
        let g = MixedGraph::new(&["u", "v"], &[("u", "v")], &[("u", "v")]).unwrap();
        assert!(!check_edge_delcontr(&g, "u", "v", BOUND).unwrap());
        assert_eq!(
            chi_by_delcontr(&g, BOUND).unwrap(),
            interpolate_chi(&g, BOUND).unwrap()
        );
    }

    #[test]
    fn delcontr_is_pivot_independent() {
        // Re-run the recursion pivoting on the *largest* edge instead.
        fn chi_alt(g: &MixedGraph, bound: usize) -> BivariatePolynomial {
            let pivot = g.edges().max_by_key(|&(u, v)| {
                let (a, b) = (g.vertex_name(u), g.vertex_name(v));
                if a <= b {
                    (a.to_string(), b.to_string())
                } else {
                    (b.to_string(), a.to_string())
                }
            });
            match pivot {
                None => chi_by_decomposition(g, bound).unwrap(),
                Some((iu, iv)) => {
                    let (u, v) = (g.vertex_name(iu).to_string(), g.vertex_name(iv).to_string());
                    let without = g.delete_edge(&u, &v).unwrap();
                    if g.has_arc(&u, &v) || g.has_arc(&v, &u) {
                        return chi_alt(&without, bound);
                    }
                    let deleted = chi_alt(&without, bound);
                    let contracted = g.contract_edge(&u, &v).unwrap();
                    let dropped =
                        chi_alt(&contracted.delete_vertex_index(iu.min(iv)).unwrap(), bound);
                    let contracted = chi_alt(&contracted, bound);
                    &(&deleted - &contracted) + &(&x_minus_y() * &dropped)
                }
            }
        }
        for g in [
            mixed_triangle(),
            MixedGraph::new(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
                &[("a", "d")],
            )
            .unwrap(),
        ] {
            assert_eq!(chi_by_delcontr(&g, BOUND).unwrap(), chi_alt(&g, BOUND));
        }
    }

    #[test]
    fn compatible_pairs_on_single_vertex_flats() {
        // Trivial flat of a lone vertex: one empty orientation, any color.
        let v = MixedGraph::new(&["v"], &[], &[]).unwrap();
        let trivial = &v.enumerate_flats()[0];
        for x in 0..=5 {
            assert_eq!(count_compatible_pairs(trivial, x, 0).unwrap(), x);
        }
        // Merged flat of a single edge: celeste singleton, colors above y.
        let edge = MixedGraph::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let flats = edge.enumerate_flats();
        let merged = flats.last().unwrap();
        assert_eq!(merged.contracted().len(), 1);
        for x in 0..=5 {
            for y in 0..=x {
                assert_eq!(count_compatible_pairs(merged, x, y).unwrap(), x - y);
            }
        }
    }

    #[test]
    fn compatible_pairs_on_trivial_edge_flat() {
        // Two orientations, each with the 3 weakly monotone maps into {1,2}.
        let edge = MixedGraph::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let trivial = &edge.enumerate_flats()[0];
        assert_eq!(count_compatible_pairs(trivial, 2, 0).unwrap(), 6);
        assert!(matches!(
            count_compatible_pairs(trivial, 2, 3),
            Err(Error::ThresholdExceedsPalette { .. })
        ));
    }

    #[test]
    fn reciprocity_on_small_graphs() {
        let single = MixedGraph::new(&["v"], &[], &[]).unwrap();
        assert!(check_chromatic_reciprocity(&single, 4, BOUND).unwrap());
        assert!(check_chromatic_reciprocity(&single_arc(), 4, BOUND).unwrap());
        assert!(check_chromatic_reciprocity(&mixed_triangle(), 4, BOUND).unwrap());
    }

    #[test]
    fn reciprocity_single_vertex_by_hand() {
        // chi(-x, -y) = -x; the lone flat contributes (-1)^1 * x.
        let single = MixedGraph::new(&["v"], &[], &[]).unwrap();
        let chi_neg = interpolate_chi(&single, BOUND).unwrap().negate_vars();
        for x in 0..=4u64 {
            assert_eq!(
                chi_neg.eval_int(x as i64, 0),
                compatible_pair_sum(&single, x, 0).unwrap()
            );
        }
    }

    #[test]
    fn mh_bridge_examples() {
        let edge = MixedGraph::new(&["a", "b"], &[("a", "b")], &[]).unwrap();
        let flats = edge.enumerate_flats();
        // Single-vertex celeste flat: x - y = Omega(x, y+1).
        assert!(cross_check_mh(flats.last().unwrap(), 4, 2).unwrap());
        // Trivial flat at (3, 1), both sides brute-forced.
        assert!(cross_check_mh(&flats[0], 3, 1).unwrap());

        for flat in mixed_triangle().enumerate_flats() {
            for x in 1..=4 {
                for y in 0..x {
                    assert!(cross_check_mh(&flat, x, y).unwrap());
                }
            }
        }
    }
}
