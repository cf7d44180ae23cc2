//! Shared helpers for the integration suites: seeded pseudorandom graphs and
//! posets, an independent classical-chromatic reference, and a falling-
//! factorial binomial builder.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bichrom::bipoly::{frac, int};
use bichrom::{BicoloredPoset, BivariatePolynomial, MixedGraph};

/// Seeded pseudorandom mixed graphs on up to `max_n` vertices.
///
/// Every unordered pair carries at most one of: nothing, an edge, a single
/// arc, or a pair of anti-parallel arcs. An edge never shares its pair with
/// an arc, so every edge of a suite graph is a valid deletion–contraction
/// pivot; an arc is a valid pivot exactly when its reverse is absent.
pub fn suite_graphs(seed: u64, count: usize, max_n: usize) -> Vec<MixedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, max_n)).collect()
}

pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize) -> MixedGraph {
    let n = rng.random_range(1..=max_n);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    let mut arcs: Vec<(&str, &str)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match rng.random_range(0..100u32) {
                0..35 => {}
                35..60 => edges.push((refs[i], refs[j])),
                60..75 => arcs.push((refs[i], refs[j])),
                75..90 => arcs.push((refs[j], refs[i])),
                _ => {
                    arcs.push((refs[i], refs[j]));
                    arcs.push((refs[j], refs[i]));
                }
            }
        }
    }
    MixedGraph::new(&refs, &edges, &arcs).expect("well-formed random graph")
}

/// Seeded random bicolored poset on up to `max_n` elements. Relations point
/// from lower to higher index only, so acyclicity is automatic.
pub fn random_poset(rng: &mut ChaCha8Rng, max_n: usize) -> BicoloredPoset {
    let n = rng.random_range(1..=max_n);
    let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut relations = BTreeSet::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_range(0..100u32) < 40 {
                relations.insert((i, j));
            }
        }
    }
    let celeste: BTreeSet<usize> = (0..n)
        .filter(|_| rng.random_range(0..100u32) < 40)
        .collect();
    BicoloredPoset::from_parts(names, relations, celeste).expect("acyclic by construction")
}

/// Classical (univariate) chromatic polynomial of an arc-free graph, as a
/// polynomial in x, computed by a self-contained undirected
/// deletion–contraction recursion that shares no code with the library's
/// contraction machinery.
pub fn classical_chromatic(g: &MixedGraph) -> BivariatePolynomial {
    assert_eq!(g.arc_count(), 0, "classical reference is for arc-free graphs");
    let edges: BTreeSet<(usize, usize)> = g.edges().collect();
    chromatic_rec(g.vertex_count(), &edges)
}

fn chromatic_rec(n: usize, edges: &BTreeSet<(usize, usize)>) -> BivariatePolynomial {
    let Some(&(a, b)) = edges.iter().next() else {
        return BivariatePolynomial::monomial(n as u32, 0, int(1));
    };
    let mut deleted = edges.clone();
    deleted.remove(&(a, b));
    // Contract b into a: redirect b, then close the index gap it leaves.
    let relabel = |v: usize| {
        let v = if v == b { a } else { v };
        if v > b {
            v - 1
        } else {
            v
        }
    };
    let mut contracted = BTreeSet::new();
    for &(u, v) in &deleted {
        let (u, v) = (relabel(u), relabel(v));
        if u != v {
            contracted.insert((u.min(v), u.max(v)));
        }
    }
    &chromatic_rec(n, &deleted) - &chromatic_rec(n - 1, &contracted)
}

/// Falling-factorial binomial of a polynomial argument:
/// C(p, k) = p (p − 1) ⋯ (p − k + 1) / k!.
pub fn choose_poly(p: &BivariatePolynomial, k: u32) -> BivariatePolynomial {
    let mut out = BivariatePolynomial::one();
    let mut k_factorial = 1i64;
    for i in 0..k {
        out = &out * &(p - &BivariatePolynomial::constant(int(i64::from(i))));
        k_factorial *= i64::from(i + 1);
    }
    out.scale(&frac(1, k_factorial))
}
