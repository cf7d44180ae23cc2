//! Command-line interface.
//!
//! Subcommands:
//!
//! * `compute` — the bivariate chromatic polynomial of a graph file,
//! * `eval` — the number of proper colorings at an integer point `(x, y)`,
//! * `verify` — machine-check an identity on the file's graph (plus an
//!   optional seeded random corpus),
//! * `report` — the flat/orientation decomposition with one order
//!   polynomial per row,
//! * `flats` / `orientations` — the raw combinatorial inventories.
//!
//! Exit codes: `0` success, `1` a verified identity failed, `2` parse or
//! usage error, `3` a size bound was exceeded, `4` an internal cross-check
//! disagreed. Stdout carries only the requested artifact; diagnostics go to
//! stderr.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bipoly::BivariatePolynomial;
use crate::decomposition::{chi_by_decomposition, decomposition_report};
use crate::error::Error;
use crate::identities::{
    arc_delcontr_sides, compatible_pair_sum, check_chromatic_reciprocity, edge_delcontr_sides,
};
use crate::mixed_graph::{enumerate_acyclic_orientations, MixedGraph};
use crate::oracle::{count_colorings, interpolate_chi, DEFAULT_INTERPOLATION_BOUND};
use crate::order_poly::{check_bop_reciprocity, poset_from_orientation};

#[derive(Parser)]
#[command(
    name = "bichrom",
    version,
    about = "Bivariate chromatic polynomials of mixed graphs",
    after_help = "Graph files list one item per line: `vertex NAME`, `edge A B`, `arc A B`\n\
                  (tail first). Blank lines and `#` comments are ignored."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Sum order polynomials over flats and acyclic orientations.
    Decomposition,
    /// Count colorings on a grid and interpolate exactly.
    Interpolate,
    /// Deletion–contraction with memoization.
    Delcontr,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Latex,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Identity {
    /// Edge deletion–contraction–correction, checked for every edge whose
    /// endpoint pair carries no arc.
    DelcontrEdge,
    /// Arc deletion–contraction–correction, checked for every arc whose
    /// endpoint pair carries only that arc.
    DelcontrArc,
    /// All three compute methods produce the same polynomial.
    Decomposition,
    /// Combinatorial reciprocity: chi(-x, -y) equals the signed sum of
    /// compatible pairs over all flats.
    Reciprocity,
    /// Order-polynomial reciprocity for every bicolored poset induced by a
    /// flat and an acyclic orientation.
    BopReciprocity,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the bivariate chromatic polynomial of a graph.
    Compute {
        /// Graph file.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Decomposition)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Largest vertex count accepted.
        #[arg(long, default_value_t = DEFAULT_INTERPOLATION_BOUND)]
        bound: usize,
    },
    /// Count proper colorings at an integer point (x, y).
    Eval {
        /// Graph file.
        file: PathBuf,
        /// Palette size.
        #[arg(short)]
        x: u64,
        /// Improper threshold (colors above y are unconstrained).
        #[arg(short)]
        y: u64,
        /// Largest vertex count for the polynomial cross-check.
        #[arg(long, default_value_t = DEFAULT_INTERPOLATION_BOUND)]
        bound: usize,
    },
    /// Machine-check an identity on the graph, plus an optional random corpus.
    Verify {
        /// Graph file.
        file: PathBuf,
        /// Which identity to check.
        #[arg(value_enum)]
        identity: Identity,
        /// Largest x for pointwise reciprocity checks (all 0 <= y <= x <= xmax).
        #[arg(long, default_value_t = 4)]
        xmax: u64,
        /// Also check this many seeded pseudorandom graphs.
        #[arg(long, default_value_t = 0)]
        random: usize,
        /// Seed for the random corpus.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest vertex count accepted.
        #[arg(long, default_value_t = DEFAULT_INTERPOLATION_BOUND)]
        bound: usize,
    },
    /// Print the flat/orientation decomposition, one order polynomial per row.
    Report {
        /// Graph file.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Largest vertex count accepted.
        #[arg(long, default_value_t = DEFAULT_INTERPOLATION_BOUND)]
        bound: usize,
    },
    /// List the flats (connected partitions) of the graph.
    Flats {
        /// Graph file.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// List the acyclic orientations of the underlying undirected graph.
    Orientations {
        /// Graph file.
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
}

/// Entry point; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = err.print();
            return code;
        }
    };
    match cli.command {
        Command::Compute {
            file,
            method,
            format,
            bound,
        } => cmd_compute(&file, method, format, bound),
        Command::Eval { file, x, y, bound } => cmd_eval(&file, x, y, bound),
        Command::Verify {
            file,
            identity,
            xmax,
            random,
            seed,
            bound,
        } => cmd_verify(&file, identity, xmax, random, seed, bound),
        Command::Report {
            file,
            format,
            bound,
        } => cmd_report(&file, format, bound),
        Command::Flats { file, format } => cmd_flats(&file, format),
        Command::Orientations { file, format } => cmd_orientations(&file, format),
    }
}

/// Write the payload to stdout. A closed pipe (e.g. `| head`) is not an
/// error; any other write failure is reported and mapped to exit code 2.
fn emit(text: &str) -> i32 {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|()| out.flush());
    match result {
        Ok(()) => 0,
        Err(err) if err.kind() == ErrorKind::BrokenPipe => 0,
        Err(err) => {
            eprintln!("error: stdout: {err}");
            2
        }
    }
}

fn load_graph(path: &Path) -> Result<MixedGraph, i32> {
    let text = std::fs::read_to_string(path).map_err(|err| {
        eprintln!("error: {}: {err}", path.display());
        2
    })?;
    MixedGraph::parse(&text).map_err(|err| {
        eprintln!("error: {}: {err}", path.display());
        2
    })
}

fn report_error(err: &Error) -> i32 {
    eprintln!("error: {err}");
    match err {
        Error::BoundExceeded { .. } | Error::InterpolationLimit { .. } => 3,
        _ => 2,
    }
}

fn compute_chi(g: &MixedGraph, method: Method, bound: usize) -> Result<BivariatePolynomial, Error> {
    match method {
        Method::Decomposition => chi_by_decomposition(g, bound),
        Method::Interpolate => interpolate_chi(g, bound),
        Method::Delcontr => crate::identities::chi_by_delcontr(g, bound),
    }
}

fn render_poly(p: &BivariatePolynomial, format: Format) -> String {
    match format {
        Format::Plain => p.render_plain(),
        Format::Latex => p.render_latex(),
        Format::Json => p.to_json_string(),
    }
}

fn cmd_compute(file: &Path, method: Method, format: Format, bound: usize) -> i32 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    match compute_chi(&g, method, bound) {
        Ok(chi) => emit(&format!("{}\n", render_poly(&chi, format))),
        Err(err) => report_error(&err),
    }
}

fn cmd_eval(file: &Path, x: u64, y: u64, bound: usize) -> i32 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let count = match count_colorings(&g, x, y) {
        Ok(count) => count,
        Err(err) => return report_error(&err),
    };
    if g.vertex_count() <= bound {
        let chi = match chi_by_decomposition(&g, bound) {
            Ok(chi) => chi,
            Err(err) => return report_error(&err),
        };
        let from_poly = chi.eval_int(x as i64, y as i64);
        let direct = crate::bipoly::Rational::from(num_bigint::BigInt::from(count));
        if from_poly != direct {
            eprintln!(
                "error: internal cross-check failed at ({x}, {y}): \
                 direct count is {count} but the polynomial evaluates to {from_poly}"
            );
            return 4;
        }
    }
    emit(&format!("{count}\n"))
}

fn cmd_report(file: &Path, format: Format, bound: usize) -> i32 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let report = match decomposition_report(&g, bound) {
        Ok(report) => report,
        Err(err) => return report_error(&err),
    };
    match format {
        Format::Plain => emit(&report.render_text()),
        Format::Latex => emit(&report.render_with(BivariatePolynomial::render_latex)),
        Format::Json => emit(&format!("{}\n", report.to_json_string())),
    }
}

fn cmd_flats(file: &Path, format: Format) -> i32 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let flats = g.enumerate_flats();
    match format {
        Format::Plain | Format::Latex => {
            let mut out = String::new();
            for flat in &flats {
                let _ = writeln!(
                    out,
                    "{}  C(H)={{{}}}",
                    flat.partition_string(),
                    flat.contracted_names().join(",")
                );
            }
            emit(&out)
        }
        Format::Json => {
            #[derive(Serialize)]
            struct FlatJson {
                partition: String,
                contracted: Vec<String>,
                quotient: String,
            }
            let rows: Vec<FlatJson> = flats
                .iter()
                .map(|flat| FlatJson {
                    partition: flat.partition_string(),
                    contracted: flat.contracted_names().into_iter().map(String::from).collect(),
                    quotient: flat.quotient().to_text(),
                })
                .collect();
            match serde_json::to_string_pretty(&rows) {
                Ok(text) => emit(&format!("{text}\n")),
                Err(err) => report_error(&Error::PolyJson(err.to_string())),
            }
        }
    }
}

fn cmd_orientations(file: &Path, format: Format) -> i32 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let orientations = enumerate_acyclic_orientations(&g.underlying());
    match format {
        Format::Plain | Format::Latex => {
            let mut out = String::new();
            for sigma in &orientations {
                if sigma.directed_edges().is_empty() {
                    let _ = writeln!(out, "-");
                } else {
                    let _ = writeln!(out, "{sigma}");
                }
            }
            emit(&out)
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = orientations
                .iter()
                .map(|sigma| {
                    sigma
                        .directed_edge_names()
                        .map(|(t, h)| format!("{t}->{h}"))
                        .collect()
                })
                .collect();
            match serde_json::to_string_pretty(&rows) {
                Ok(text) => emit(&format!("{text}\n")),
                Err(err) => report_error(&Error::PolyJson(err.to_string())),
            }
        }
    }
}

// ---------------------------------------------------------------------------
// verify

enum VerifyOutcome {
    Pass(String),
    Fail(String),
}

fn cmd_verify(
    file: &Path,
    identity: Identity,
    xmax: u64,
    random: usize,
    seed: u64,
    bound: usize,
) -> i32 {
    let g = match load_graph(file) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut graphs = vec![(file.display().to_string(), g)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random {
        graphs.push((format!("random#{i}"), random_graph(&mut rng)));
    }
    let outcome = match identity {
        Identity::DelcontrEdge => verify_delcontr_edge(&graphs, bound),
        Identity::DelcontrArc => verify_delcontr_arc(&graphs, bound),
        Identity::Decomposition => verify_three_methods(&graphs, bound),
        Identity::Reciprocity => verify_reciprocity(&graphs, xmax, bound),
        Identity::BopReciprocity => verify_bop_reciprocity(&graphs, bound),
    };
    match outcome {
        Ok(VerifyOutcome::Pass(summary)) => emit(&format!("PASS {summary}\n")),
        Ok(VerifyOutcome::Fail(details)) => {
            emit(&format!("FAIL {details}\n"));
            1
        }
        Err(err) => report_error(&err),
    }
}

/// Pseudorandom mixed graph on up to four vertices. Each unordered pair
/// carries at most one of: nothing, an edge, a single arc, or both arcs.
/// Pairs never mix an edge with an arc, so every edge and every lone arc is
/// a valid deletion–contraction pivot.
fn random_graph(rng: &mut ChaCha8Rng) -> MixedGraph {
    let n = rng.random_range(1..=4usize);
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut edges: Vec<(&str, &str)> = Vec::new();
    let mut arcs: Vec<(&str, &str)> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match rng.random_range(0..100u32) {
                0..40 => {}
                40..60 => edges.push((name_refs[i], name_refs[j])),
                60..75 => arcs.push((name_refs[i], name_refs[j])),
                75..90 => arcs.push((name_refs[j], name_refs[i])),
                _ => {
                    arcs.push((name_refs[i], name_refs[j]));
                    arcs.push((name_refs[j], name_refs[i]));
                }
            }
        }
    }
    MixedGraph::new(&name_refs, &edges, &arcs).expect("generated graph is well formed")
}

fn indented_graph(g: &MixedGraph) -> String {
    let mut out = String::new();
    for line in g.to_text().lines() {
        let _ = writeln!(out, "    {line}");
    }
    out
}

fn verify_delcontr_edge(
    graphs: &[(String, MixedGraph)],
    bound: usize,
) -> Result<VerifyOutcome, Error> {
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for (label, g) in graphs {
        for (u, v) in g.edge_names() {
            if g.has_arc(u, v) || g.has_arc(v, u) {
                // An edge sharing its pair with an arc is not a valid pivot:
                // contraction would drop a color-forcing loop.
                skipped += 1;
                continue;
            }
            let (lhs, rhs) = edge_delcontr_sides(g, u, v, bound)?;
            if lhs != rhs {
                return Ok(VerifyOutcome::Fail(format!(
                    "delcontr-edge: {label}, edge {{{u}, {v}}}\n  lhs: {}\n  rhs: {}\n  graph:\n{}",
                    lhs.render_plain(),
                    rhs.render_plain(),
                    indented_graph(g)
                )));
            }
            checked += 1;
        }
    }
    let note = if skipped > 0 {
        format!(" ({skipped} skipped: pair carries an arc)")
    } else {
        String::new()
    };
    Ok(VerifyOutcome::Pass(format!(
        "delcontr-edge: {checked} edges checked across {} graphs{note}",
        graphs.len()
    )))
}

fn verify_delcontr_arc(
    graphs: &[(String, MixedGraph)],
    bound: usize,
) -> Result<VerifyOutcome, Error> {
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for (label, g) in graphs {
        for (u, v) in g.arc_names() {
            if g.has_edge(u, v) || g.has_arc(v, u) {
                // Contracting this arc would drop a color-forcing loop.
                skipped += 1;
                continue;
            }
            let (lhs, rhs) = arc_delcontr_sides(g, u, v, bound)?;
            if lhs != rhs {
                return Ok(VerifyOutcome::Fail(format!(
                    "delcontr-arc: {label}, arc {u}->{v}\n  lhs: {}\n  rhs: {}\n  graph:\n{}",
                    lhs.render_plain(),
                    rhs.render_plain(),
                    indented_graph(g)
                )));
            }
            checked += 1;
        }
    }
    let note = if skipped > 0 {
        format!(" ({skipped} skipped: pair carries more than the arc)")
    } else {
        String::new()
    };
    Ok(VerifyOutcome::Pass(format!(
        "delcontr-arc: {checked} arcs checked across {} graphs{note}",
        graphs.len()
    )))
}

fn verify_three_methods(
    graphs: &[(String, MixedGraph)],
    bound: usize,
) -> Result<VerifyOutcome, Error> {
    for (label, g) in graphs {
        let by_decomposition = chi_by_decomposition(g, bound)?;
        let by_interpolation = interpolate_chi(g, bound)?;
        let by_delcontr = crate::identities::chi_by_delcontr(g, bound)?;
        if by_decomposition != by_interpolation || by_decomposition != by_delcontr {
            return Ok(VerifyOutcome::Fail(format!(
                "decomposition: {label}\n  decomposition: {}\n  interpolate:   {}\n  delcontr:      {}\n  graph:\n{}",
                by_decomposition.render_plain(),
                by_interpolation.render_plain(),
                by_delcontr.render_plain(),
                indented_graph(g)
            )));
        }
    }
    Ok(VerifyOutcome::Pass(format!(
        "decomposition: 3 methods agree on {} graphs",
        graphs.len()
    )))
}

fn verify_reciprocity(
    graphs: &[(String, MixedGraph)],
    xmax: u64,
    bound: usize,
) -> Result<VerifyOutcome, Error> {
    for (label, g) in graphs {
        if check_chromatic_reciprocity(g, xmax, bound)? {
            continue;
        }
        // Recompute pointwise to describe the first failure.
        let chi_neg = interpolate_chi(g, bound)?.negate_vars();
        for x in 0..=xmax {
            for y in 0..=x {
                let lhs = chi_neg.eval_int(x as i64, y as i64);
                let rhs = compatible_pair_sum(g, x, y)?;
                if lhs != rhs {
                    return Ok(VerifyOutcome::Fail(format!(
                        "reciprocity: {label} at (x, y) = ({x}, {y}): \
                         chi(-x, -y) = {lhs}, signed compatible-pair sum = {rhs}\n  graph:\n{}",
                        indented_graph(g)
                    )));
                }
            }
        }
        return Ok(VerifyOutcome::Fail(format!(
            "reciprocity: {label}: pointwise values agree up to xmax = {xmax} \
             but the interpolated sum differs as a polynomial\n  graph:\n{}",
            indented_graph(g)
        )));
    }
    Ok(VerifyOutcome::Pass(format!(
        "reciprocity: {} graphs checked, 0 <= y <= x <= {xmax} plus interpolation",
        graphs.len()
    )))
}

fn verify_bop_reciprocity(
    graphs: &[(String, MixedGraph)],
    bound: usize,
) -> Result<VerifyOutcome, Error> {
    let mut checked = 0usize;
    for (label, g) in graphs {
        if g.vertex_count() > bound {
            return Err(Error::BoundExceeded {
                what: "graph",
                n: g.vertex_count(),
                bound,
            });
        }
        for flat in g.enumerate_flats() {
            for sigma in enumerate_acyclic_orientations(&flat.quotient().underlying()) {
                let poset = poset_from_orientation(&flat, &sigma);
                if !check_bop_reciprocity(&poset, bound)? {
                    return Ok(VerifyOutcome::Fail(format!(
                        "bop-reciprocity: {label}, flat {}, sigma {}\n  graph:\n{}",
                        flat.partition_string(),
                        sigma,
                        indented_graph(g)
                    )));
                }
                checked += 1;
            }
        }
    }
    Ok(VerifyOutcome::Pass(format!(
        "bop-reciprocity: {checked} posets checked across {} graphs",
        graphs.len()
    )))
}
