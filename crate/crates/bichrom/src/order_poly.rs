//! Bicolored posets and their bivariate order polynomials.
//!
//! A bicolored poset splits its elements into *celeste* elements, which are
//! forced above the threshold `y`, and *silver* elements, which are not.
//! Strict order preserving maps use `φ(a) < φ(b)` on relations and
//! `φ(c) > y` on celeste elements; weak maps use `φ(a) <= φ(b)` and
//! `φ(c) >= y`. Counting either kind over the triangular grid recovers the
//! strict and weak bivariate order polynomials, which are tied together by
//! the reciprocity `(-1)^{|P|} Ω°(-x, -y) = Ω(x, y+1)`.

use std::collections::BTreeSet;

use crate::bipoly::{BivariatePolynomial, Rational};
use crate::error::Error;
use crate::mixed_graph::{Flat, Orientation};
use crate::oracle::fit_on_grid;

/// A finite poset with a distinguished celeste subset. The relation is kept
/// as a generating DAG; order preservation along generators implies it along
/// the full transitive closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicoloredPoset {
    names: Vec<String>,
    /// Generating relations `(a, b)` meaning `a ≺ b`, as element indices.
    relations: BTreeSet<(usize, usize)>,
    celeste: BTreeSet<usize>,
    /// A fixed linear extension, computed at construction (also certifies
    /// acyclicity).
    topo: Vec<usize>,
}

impl BicoloredPoset {
    /// Build a poset from element names. Relations `(a, b)` assert `a ≺ b`;
    /// any DAG is accepted, covers are not required. Errors on duplicate or
    /// unknown names, reflexive pairs, and cyclic relation sets.
    pub fn new(
        elements: &[&str],
        relations: &[(&str, &str)],
        celeste: &[&str],
    ) -> Result<Self, Error> {
        let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::InvalidGraph(format!("duplicate element {name:?}")));
            }
        }
        let index = |name: &str| -> Result<usize, Error> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::NoSuchVertex(name.to_string()))
        };
        let mut rel = BTreeSet::new();
        for &(a, b) in relations {
            rel.insert((index(a)?, index(b)?));
        }
        let mut cel = BTreeSet::new();
        for &c in celeste {
            cel.insert(index(c)?);
        }
        Self::from_parts(names, rel, cel)
    }

    /// Index-based constructor. Names are labels only and may repeat.
    pub fn from_parts(
        names: Vec<String>,
        relations: BTreeSet<(usize, usize)>,
        celeste: BTreeSet<usize>,
    ) -> Result<Self, Error> {
        let n = names.len();
        for &(a, b) in &relations {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "relation ({a}, {b}) out of range"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("reflexive relation at {a}")));
            }
        }
        if let Some(&c) = celeste.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidGraph(format!("celeste index {c} out of range")));
        }
        let topo = topological_order(n, &relations)
            .ok_or_else(|| Error::InvalidGraph("relation contains a cycle".into()))?;
        Ok(BicoloredPoset {
            names,
            relations,
            celeste,
            topo,
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn element_names(&self) -> &[String] {
        &self.names
    }

    /// Generating relations as index pairs.
    pub fn relations(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.relations.iter().copied()
    }

    pub fn celeste(&self) -> &BTreeSet<usize> {
        &self.celeste
    }

    pub fn celeste_names(&self) -> Vec<&str> {
        self.celeste.iter().map(|&i| self.names[i].as_str()).collect()
    }

    /// Number of maps `φ : P -> {1..x}` with `φ(a) < φ(b)` for every
    /// relation and `φ(c) > y` for every celeste element.
    pub fn count_strict_maps(&self, x: u64, y: u64) -> Result<u64, Error> {
        if y > x {
            return Err(Error::ThresholdExceedsPalette { x, y });
        }
        Ok(self.count_maps(x, y, true))
    }

    /// Number of maps with `φ(a) <= φ(b)` for every relation and
    /// `φ(c) >= y` for every celeste element. Requires `1 <= y <= x`.
    pub fn count_weak_maps(&self, x: u64, y: u64) -> Result<u64, Error> {
        if y < 1 {
            return Err(Error::WeakThresholdTooSmall(y));
        }
        if y > x {
            return Err(Error::ThresholdExceedsPalette { x, y });
        }
        Ok(self.count_maps(x, y, false))
    }

    /// Count maps along the stored linear extension. Every generator's
    /// source precedes its target there, so each element's admissible colors
    /// form a contiguous range once its predecessors are fixed.
    fn count_maps(&self, x: u64, y: u64, strict: bool) -> u64 {
        let n = self.names.len();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &self.relations {
            preds[b].push(a);
        }
        let bump = u64::from(strict);

        #[allow(clippy::too_many_arguments)]
        fn rec(
            pos: usize,
            topo: &[usize],
            preds: &[Vec<usize>],
            celeste: &BTreeSet<usize>,
            colors: &mut [u64],
            x: u64,
            y: u64,
            bump: u64,
        ) -> u64 {
            if pos == topo.len() {
                return 1;
            }
            let e = topo[pos];
            let mut lo = 1;
            for &p in &preds[e] {
                lo = lo.max(colors[p] + bump);
            }
            if celeste.contains(&e) {
                lo = lo.max(y + bump);
            }
            let mut total = 0;
            for c in lo..=x {
                colors[e] = c;
                total += rec(pos + 1, topo, preds, celeste, colors, x, y, bump);
            }
            total
        }

        let mut colors = vec![0u64; n];
        rec(0, &self.topo, &preds, &self.celeste, &mut colors, x, y, bump)
    }

    /// The strict bivariate order polynomial `Ω°`, recovered by exact
    /// interpolation from `count_strict_maps` on the triangular grid.
    pub fn omega_strict(&self, bound: usize) -> Result<BivariatePolynomial, Error> {
        let n = self.len();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "poset",
                n,
                bound,
            });
        }
        fit_on_grid(n, |x, y| self.count_strict_maps(x, y))
    }

    /// The weak bivariate order polynomial `Ω`; the grid starts at `y = 1`,
    /// which is exactly the weak counting precondition.
    pub fn omega_weak(&self, bound: usize) -> Result<BivariatePolynomial, Error> {
        let n = self.len();
        if n > bound {
            return Err(Error::BoundExceeded {
                what: "poset",
                n,
                bound,
            });
        }
        fit_on_grid(n, |x, y| self.count_weak_maps(x, y))
    }
}

fn topological_order(n: usize, relations: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in relations {
        indegree[b] += 1;
        succ[a].push(b);
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.insert(w);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// The bicolored poset a flat and an orientation of its quotient induce:
/// elements are quotient vertices, `u ≺ v` for every σ-directed edge
/// `u -> v`, and celeste is `C(H) ∪ T(σ)`.
pub fn poset_from_orientation(h: &Flat, sigma: &Orientation) -> BicoloredPoset {
    let names = h.quotient().vertex_names().to_vec();
    let relations: BTreeSet<(usize, usize)> =
        sigma.directed_edges().iter().copied().collect();
    let mut celeste = h.contracted().clone();
    celeste.extend(h.opposed_tails(sigma));
    BicoloredPoset::from_parts(names, relations, celeste)
        .expect("acyclic orientations induce acyclic relations")
}

/// Check Eq. `(-1)^{|P|} Ω°(-x, -y) = Ω(x, y+1)` as exact polynomials.
pub fn check_bop_reciprocity(p: &BicoloredPoset, bound: usize) -> Result<bool, Error> {
    let strict = p.omega_strict(bound)?;
    let weak = p.omega_weak(bound)?;
    let sign = if p.len().is_multiple_of(2) {
        Rational::from_integer(1.into())
    } else {
        Rational::from_integer((-1).into())
    };
    Ok(strict.negate_vars().scale(&sign) == weak.shift_y(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bipoly::int;
    use crate::mixed_graph::{enumerate_acyclic_orientations, MixedGraph};
    use crate::oracle::DEFAULT_INTERPOLATION_BOUND as BOUND;

    fn one_celeste() -> BicoloredPoset {
        BicoloredPoset::new(&["v"], &[], &["v"]).unwrap()
    }

    fn two_chain(celeste: &[&str]) -> BicoloredPoset {
        BicoloredPoset::new(&["a", "b"], &[("a", "b")], celeste).unwrap()
    }

    /// Brute-force map counter straight from the definitions, no pruning.
    fn count_naive(p: &BicoloredPoset, x: u64, y: u64, strict: bool) -> u64 {
        let n = p.len();
        if x == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let mut phi = vec![1u64; n];
        let mut total = 0;
        loop {
            let rel_ok = p.relations().all(|(a, b)| {
                if strict {
                    phi[a] < phi[b]
                } else {
                    phi[a] <= phi[b]
                }
            });
            let cel_ok = p
                .celeste()
                .iter()
                .all(|&c| if strict { phi[c] > y } else { phi[c] >= y });
            if rel_ok && cel_ok {
                total += 1;
            }
            let mut pos = 0;
            while pos < n {
                phi[pos] += 1;
                if phi[pos] <= x {
                    break;
                }
                phi[pos] = 1;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
        total
    }

    #[test]
    fn one_element_celeste_counts() {
        let p = one_celeste();
        for x in 0..=5 {
            for y in 0..=x {
                assert_eq!(p.count_strict_maps(x, y).unwrap(), x - y);
                if y >= 1 {
                    assert_eq!(p.count_weak_maps(x, y).unwrap(), x - y + 1);
                }
            }
        }
    }

    #[test]
    fn two_chain_strict_counts() {
        // Silver 2-chain at x = 3: the 3 strictly increasing pairs out of 9.
        assert_eq!(two_chain(&[]).count_strict_maps(3, 0).unwrap(), 3);
        assert_eq!(count_naive(&two_chain(&[]), 3, 0, true), 3);
        // Celeste {b}: φ(b) ∈ {2, 3} and φ(a) < φ(b).
        assert_eq!(two_chain(&["b"]).count_strict_maps(3, 1).unwrap(), 3);
        assert_eq!(count_naive(&two_chain(&["b"]), 3, 1, true), 3);
    }

    #[test]
    fn weak_counts() {
        // Weakly increasing pairs in {1..3}.
        assert_eq!(two_chain(&[]).count_weak_maps(3, 1).unwrap(), 6);
        // 2-antichain with one celeste element at (3, 2): 2 choices above
        // the threshold times 3 free choices.
        let p = BicoloredPoset::new(&["a", "b"], &[], &["a"]).unwrap();
        assert_eq!(p.count_weak_maps(3, 2).unwrap(), 6);
        assert_eq!(count_naive(&p, 3, 2, false), 6);
    }

    #[test]
    fn count_errors() {
        let p = two_chain(&["b"]);
        assert!(matches!(
            p.count_strict_maps(2, 3),
            Err(Error::ThresholdExceedsPalette { x: 2, y: 3 })
        ));
        assert!(matches!(
            p.count_weak_maps(3, 0),
            Err(Error::WeakThresholdTooSmall(0))
        ));
    }

    #[test]
    fn counts_match_naive_enumeration() {
        let posets = [
            one_celeste(),
            two_chain(&[]),
            two_chain(&["a"]),
            two_chain(&["b"]),
            BicoloredPoset::new(
                &["a", "b", "c", "d"],
                &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
                &["b", "d"],
            )
            .unwrap(),
            // V-shape with a transitive extra generator.
            BicoloredPoset::new(
                &["a", "b", "c"],
                &[("a", "c"), ("b", "c"), ("a", "c")],
                &["c"],
            )
            .unwrap(),
        ];
        for p in &posets {
            for x in 0..=4 {
                for y in 0..=x {
                    assert_eq!(
                        p.count_strict_maps(x, y).unwrap(),
                        count_naive(p, x, y, true)
                    );
                    if y >= 1 {
                        assert_eq!(
                            p.count_weak_maps(x, y).unwrap(),
                            count_naive(p, x, y, false)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn strict_at_most_weak() {
        let p = BicoloredPoset::new(
            &["a", "b", "c"],
            &[("a", "b"), ("a", "c")],
            &["b"],
        )
        .unwrap();
        for x in 1..=5 {
            for y in 1..=x {
                assert!(
                    p.count_strict_maps(x, y).unwrap() <= p.count_weak_maps(x, y).unwrap()
                );
            }
        }
    }

    #[test]
    fn omega_one_element_celeste() {
        let p = one_celeste();
        let x = BivariatePolynomial::x();
        let y = BivariatePolynomial::y();
        assert_eq!(p.omega_strict(BOUND).unwrap(), &x - &y);
        assert_eq!(
            p.omega_weak(BOUND).unwrap(),
            &(&x - &y) + &BivariatePolynomial::one()
        );
    }

    #[test]
    fn omega_silver_two_chain() {
        // Ω° = C(x, 2) = (x^2 - x)/2, no y dependence.
        let p = two_chain(&[]);
        let expected = BivariatePolynomial::from_terms(&[(2, 0, 1, 2), (1, 0, -1, 2)]);
        assert_eq!(p.omega_strict(BOUND).unwrap(), expected);
    }

    #[test]
    fn omega_celeste_two_chain() {
        // Interpolated from counts; rechecked below at held-out points.
        let p = two_chain(&["b"]);
        let omega = p.omega_strict(BOUND).unwrap();
        let expected = BivariatePolynomial::from_terms(&[
            (2, 0, 1, 2),
            (1, 0, -1, 2),
            (0, 2, -1, 2),
            (0, 1, 1, 2),
        ]);
        assert_eq!(omega, expected);
        for (x, y) in [(5, 0), (6, 2), (7, 7), (9, 4), (11, 1)] {
            assert_eq!(
                omega.eval_int(x, y),
                int(p.count_strict_maps(x as u64, y as u64).unwrap() as i64)
            );
        }
    }

    #[test]
    fn omega_matches_counts_off_grid() {
        let p = BicoloredPoset::new(
            &["a", "b", "c"],
            &[("a", "b"), ("b", "c")],
            &["a", "c"],
        )
        .unwrap();
        let strict = p.omega_strict(BOUND).unwrap();
        let weak = p.omega_weak(BOUND).unwrap();
        for (x, y) in [(6, 5), (8, 0), (9, 9), (10, 3), (12, 7)] {
            assert_eq!(
                strict.eval_int(x, y),
                int(p.count_strict_maps(x as u64, y as u64).unwrap() as i64)
            );
            if y >= 1 {
                assert_eq!(
                    weak.eval_int(x, y),
                    int(p.count_weak_maps(x as u64, y as u64).unwrap() as i64)
                );
            }
        }
    }

    #[test]
    fn celeste_free_polynomials_ignore_y() {
        let p = BicoloredPoset::new(
            &["a", "b", "c"],
            &[("a", "c"), ("b", "c")],
            &[],
        )
        .unwrap();
        assert_eq!(p.omega_strict(BOUND).unwrap().degree_y(), 0);
        assert_eq!(p.omega_weak(BOUND).unwrap().degree_y(), 0);
    }

    #[test]
    fn omega_respects_bound() {
        let p = two_chain(&[]);
        assert!(matches!(
            p.omega_strict(1),
            Err(Error::BoundExceeded { n: 2, bound: 1, .. })
        ));
    }

    #[test]
    fn bop_reciprocity_examples() {
        // One-element celeste poset: -Ω°(-x,-y) = x - y = Ω(x, y+1).
        assert!(check_bop_reciprocity(&one_celeste(), BOUND).unwrap());
        // Silver 2-chain: C(-x, 2)-style sign juggling works out.
        assert!(check_bop_reciprocity(&two_chain(&[]), BOUND).unwrap());
        assert!(check_bop_reciprocity(&two_chain(&["a"]), BOUND).unwrap());
        assert!(check_bop_reciprocity(&two_chain(&["b"]), BOUND).unwrap());
        let diamond = BicoloredPoset::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("a", "c"), ("b", "d"), ("c", "d")],
            &["b", "c"],
        )
        .unwrap();
        assert!(check_bop_reciprocity(&diamond, BOUND).unwrap());
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(matches!(
            BicoloredPoset::new(&["a", "a"], &[], &[]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            BicoloredPoset::new(&["a"], &[("a", "b")], &[]),
            Err(Error::NoSuchVertex(_))
        ));
        assert!(matches!(
            BicoloredPoset::new(&["a", "b"], &[("a", "b"), ("b", "a")], &[]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            BicoloredPoset::new(&["a"], &[("a", "a")], &[]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            BicoloredPoset::new(&["a"], &[], &["b"]),
            Err(Error::NoSuchVertex(_))
        ));
    }

    #[test]
    fn poset_from_single_arc_orientations() {
        let g = MixedGraph::new(&["u", "v"], &[], &[("u", "v")]).unwrap();
        let flats = g.enumerate_flats();
        let trivial = &flats[0];
        let sigmas = enumerate_acyclic_orientations(&trivial.quotient().underlying());

        // σ = u -> v: chain u ≺ v, no celeste.
        let p = poset_from_orientation(trivial, &sigmas[0]);
        assert_eq!(p.relations().collect::<Vec<_>>(), vec![(0, 1)]);
        assert!(p.celeste().is_empty());

        // σ = v -> u: chain v ≺ u, celeste {u} from the opposed tail.
        let p = poset_from_orientation(trivial, &sigmas[1]);
        assert_eq!(p.relations().collect::<Vec<_>>(), vec![(1, 0)]);
        assert_eq!(p.celeste_names(), vec!["u"]);
    }

    #[test]
    fn poset_from_merged_triangle_flat() {
        let g = MixedGraph::new(
            &["v1", "v2", "v3"],
            &[("v1", "v2"), ("v1", "v3")],
            &[("v2", "v3")],
        )
        .unwrap();
        let flats = g.enumerate_flats();
        let merged = flats.last().unwrap();
        assert_eq!(merged.vertex_count(), 1);
        let sigmas = enumerate_acyclic_orientations(&merged.quotient().underlying());
        assert_eq!(sigmas.len(), 1);
        let p = poset_from_orientation(merged, &sigmas[0]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.celeste_names(), vec!["v1v2v3"]);
        assert_eq!(p.omega_strict(BOUND).unwrap(), {
            let x = BivariatePolynomial::x();
            let y = BivariatePolynomial::y();
            &x - &y
        });
    }

    #[test]
    fn empty_poset_is_constant_one() {
        let p = BicoloredPoset::new(&[], &[], &[]).unwrap();
        assert_eq!(p.count_strict_maps(3, 1).unwrap(), 1);
        assert_eq!(p.omega_strict(BOUND).unwrap(), BivariatePolynomial::one());
    }
}
