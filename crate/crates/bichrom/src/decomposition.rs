//! The flat/orientation decomposition of the bivariate chromatic polynomial:
//!
//! chi_G = sum over flats H, sum over acyclic orientations sigma of the
//! underlying quotient, of the strict order polynomial of the bicolored
//! poset induced by (H, sigma) with celeste C(H) ∪ T(sigma).
//!
//! Alongside the bare polynomial this module produces the per-term report
//! (one row per (flat, orientation) pair) in text and JSON form.

use serde::Serialize;

use crate::bipoly::{BivariatePolynomial, PolyJson};
use crate::error::Error;
use crate::mixed_graph::{enumerate_acyclic_orientations, MixedGraph};
use crate::order_poly::poset_from_orientation;

/// One `(flat, orientation)` term of the decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    /// The flat's partition, rendered as `{a,b}{c}`.
    pub partition: String,
    /// The orientation's directed edges, `u->v` separated by spaces; `-`
    /// for the edgeless quotient.
    pub orientation: String,
    /// Celeste elements `C(H) ∪ T(sigma)`, by quotient vertex name.
    pub celeste: Vec<String>,
    /// The strict order polynomial of this term's bicolored poset.
    pub omega: BivariatePolynomial,
}

/// All decomposition terms, in flat order then orientation order, plus
/// their sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionReport {
    pub rows: Vec<ReportRow>,
    pub total: BivariatePolynomial,
}

fn check_bound(g: &MixedGraph, bound: usize) -> Result<(), Error> {
    let n = g.vertex_count();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "graph",
            n,
            bound,
        });
    }
    Ok(())
}

/// Compute the bivariate chromatic polynomial by the flat/orientation
/// decomposition.
pub fn chi_by_decomposition(g: &MixedGraph, bound: usize) -> Result<BivariatePolynomial, Error> {
    check_bound(g, bound)?;
    let mut total = BivariatePolynomial::zero();
    for flat in g.enumerate_flats() {
        for sigma in enumerate_acyclic_orientations(&flat.quotient().underlying()) {
            let poset = poset_from_orientation(&flat, &sigma);
            total = &total + &poset.omega_strict(bound)?;
        }
    }
    Ok(total)
}

/// The same specialization restricted to arc-free graphs, where every
/// celeste set is just `C(H)`.
pub fn chi_undirected_decomposition(
    g: &MixedGraph,
    bound: usize,
) -> Result<BivariatePolynomial, Error> {
    if g.arc_count() > 0 {
        return Err(Error::HasArcs);
    }
    chi_by_decomposition(g, bound)
}

/// Compute every decomposition term individually.
pub fn decomposition_report(g: &MixedGraph, bound: usize) -> Result<DecompositionReport, Error> {
    check_bound(g, bound)?;
    let mut rows = Vec::new();
    let mut total = BivariatePolynomial::zero();
    for flat in g.enumerate_flats() {
        for sigma in enumerate_acyclic_orientations(&flat.quotient().underlying()) {
            let poset = poset_from_orientation(&flat, &sigma);
            let omega = poset.omega_strict(bound)?;
            total = &total + &omega;
            let orientation = if sigma.directed_edges().is_empty() {
                "-".to_string()
            } else {
                sigma.to_string()
            };
            rows.push(ReportRow {
                partition: flat.partition_string(),
                orientation,
                celeste: poset
                    .celeste_names()
                    .into_iter()
                    .map(str::to_string)
                    .collect(),
                omega,
            });
        }
    }
    Ok(DecompositionReport { rows, total })
}

#[derive(Serialize)]
struct RowJson<'a> {
    partition: &'a str,
    orientation: &'a str,
    celeste: &'a [String],
    omega: PolyJson,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    rows: Vec<RowJson<'a>>,
    total: PolyJson,
}

impl DecompositionReport {
    /// Row counts grouped by flat, in flat order.
    pub fn rows_per_flat(&self) -> Vec<(String, usize)> {
        let mut groups: Vec<(String, usize)> = Vec::new();
        for row in &self.rows {
            match groups.last_mut() {
                Some((partition, count)) if *partition == row.partition => *count += 1,
                _ => groups.push((row.partition.clone(), 1)),
            }
        }
        groups
    }

    /// Human-readable report: rows grouped under their flats, then the sum.
    pub fn render_text(&self) -> String {
        self.render_with(BivariatePolynomial::render_plain)
    }

    /// As [`render_text`](Self::render_text) with a custom polynomial
    /// formatter (e.g. LaTeX).
    pub fn render_with(&self, poly: impl Fn(&BivariatePolynomial) -> String) -> String {
        let mut out = String::new();
        for (partition, count) in self.rows_per_flat() {
            let plural = if count == 1 { "" } else { "s" };
            out.push_str(&format!("flat {partition} ({count} orientation{plural})\n"));
            for row in self.rows.iter().filter(|r| r.partition == partition) {
                out.push_str(&format!(
                    "  sigma: {} | celeste: {{{}}} | omega: {}\n",
                    row.orientation,
                    row.celeste.join(","),
                    poly(&row.omega)
                ));
            }
        }
        out.push_str(&format!("total: {}\n", poly(&self.total)));
        out
    }

    pub fn to_json_string(&self) -> String {
        let json = ReportJson {
            rows: self
                .rows
                .iter()
                .map(|r| RowJson {
                    partition: &r.partition,
                    orientation: &r.orientation,
                    celeste: &r.celeste,
                    omega: PolyJson::from(&r.omega),
                })
                .collect(),
            total: PolyJson::from(&self.total),
        };
        serde_json::to_string_pretty(&json).expect("report serialization")
    }
}
