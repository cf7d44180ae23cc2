//! Mixed graphs and the combinatorics built on them: deletion, contraction,
//! arc reversal, flat enumeration, underlying-graph extraction, and acyclic
//! orientations.
//!
//! A mixed graph carries a set of undirected edges and a set of directed
//! arcs over the same vertex list. Vertices are identified internally by
//! index; names are display labels. All derived objects (quotients,
//! orientations, flats) are ordered deterministically so that reports are
//! reproducible byte for byte.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, ParseError};

/// A mixed graph `(V, E, A)`: simple undirected edges plus directed arcs.
///
/// No loops, no duplicate edges or arcs. A vertex pair may simultaneously
/// carry an edge, the arc `u -> v`, and the arc `v -> u`; the coloring
/// constraints then apply conjunctively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    names: Vec<String>,
    /// Edges as index pairs with `u < v`.
    edges: BTreeSet<(usize, usize)>,
    /// Arcs as `(tail, head)` index pairs.
    arcs: BTreeSet<(usize, usize)>,
}

/// A simple undirected graph, used for underlying graphs of mixed graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    names: Vec<String>,
    edges: BTreeSet<(usize, usize)>,
}

/// An acyclic orientation of an undirected graph: one directed copy per
/// edge, inducing no directed cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    names: Vec<String>,
    /// `directed[k]` orients the `k`-th edge (in sorted edge order) of the
    /// graph this orientation was enumerated from.
    directed: Vec<(usize, usize)>,
}

/// A flat of a mixed graph: a partition of the vertex set into blocks, each
/// connected in the underlying graph, together with the quotient mixed graph
/// and the set of contracted quotient vertices (blocks of size >= 2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flat {
    /// Parent vertex indices per block, each sorted ascending; blocks are
    /// ordered by their minimal parent index.
    blocks: Vec<Vec<usize>>,
    /// Parent vertex names per block, sorted lexicographically within each
    /// block (the quotient vertex label is their concatenation).
    block_names: Vec<Vec<String>>,
    quotient: MixedGraph,
    /// Quotient vertex indices that arose from contractions.
    contracted: BTreeSet<usize>,
}

fn valid_token(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl MixedGraph {
    /// The graph with no vertices.
    pub fn empty() -> Self {
        MixedGraph {
            names: Vec::new(),
            edges: BTreeSet::new(),
            arcs: BTreeSet::new(),
        }
    }

    /// Build a graph from names. Rejects invalid tokens, duplicate names,
    /// loops, and endpoints that are not declared vertices.
    pub fn new(
        vertices: &[&str],
        edges: &[(&str, &str)],
        arcs: &[(&str, &str)],
    ) -> Result<Self, Error> {
        let mut g = MixedGraph::empty();
        for &v in vertices {
            if !valid_token(v) {
                return Err(Error::InvalidGraph(format!("invalid vertex name {v:?}")));
            }
            if g.vertex_index(v).is_some() {
                return Err(Error::InvalidGraph(format!("duplicate vertex {v:?}")));
            }
            g.names.push(v.to_string());
        }
        for &(u, v) in edges {
            let (iu, iv) = (g.require_vertex(u)?, g.require_vertex(v)?);
            if iu == iv {
                return Err(Error::InvalidGraph(format!("loop edge at {u:?}")));
            }
            g.edges.insert((iu.min(iv), iu.max(iv)));
        }
        for &(t, h) in arcs {
            let (it, ih) = (g.require_vertex(t)?, g.require_vertex(h)?);
            if it == ih {
                return Err(Error::InvalidGraph(format!("loop arc at {t:?}")));
            }
            g.arcs.insert((it, ih));
        }
        Ok(g)
    }

    fn require_vertex(&self, name: &str) -> Result<usize, Error> {
        self.vertex_index(name)
            .ok_or_else(|| Error::NoSuchVertex(name.to_string()))
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Edges as index pairs, `u < v`, in sorted order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Arcs as `(tail, head)` index pairs in sorted order.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn edge_names(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
    }

    pub fn arc_names(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.arcs
            .iter()
            .map(|&(t, h)| (self.names[t].as_str(), self.names[h].as_str()))
    }

    pub fn has_edge(&self, u: &str, v: &str) -> bool {
        match (self.vertex_index(u), self.vertex_index(v)) {
            (Some(iu), Some(iv)) => self.edges.contains(&(iu.min(iv), iu.max(iv))),
            _ => false,
        }
    }

    pub fn has_arc(&self, tail: &str, head: &str) -> bool {
        match (self.vertex_index(tail), self.vertex_index(head)) {
            (Some(it), Some(ih)) => self.arcs.contains(&(it, ih)),
            _ => false,
        }
    }

    /// The underlying simple undirected graph: arcs forgotten into edges,
    /// duplicates merged.
    pub fn underlying(&self) -> UndirectedGraph {
        let mut edges = self.edges.clone();
        for &(t, h) in &self.arcs {
            edges.insert((t.min(h), t.max(h)));
        }
        UndirectedGraph {
            names: self.names.clone(),
            edges,
        }
    }

    /// Contract the edge `{u, v}`: both endpoints are replaced by a merged
    /// vertex named by concatenating the two names in sorted order. Loops
    /// created by the merge are dropped and parallel copies coalesce;
    /// anti-parallel arc pairs survive.
    pub fn contract_edge(&self, u: &str, v: &str) -> Result<Self, Error> {
        let (iu, iv) = (self.require_vertex(u)?, self.require_vertex(v)?);
        if !self.edges.contains(&(iu.min(iv), iu.max(iv))) {
            return Err(Error::NoSuchEdge(u.to_string(), v.to_string()));
        }
        Ok(self.contract_pair(iu, iv))
    }

    /// Contract the arc `tail -> head`; the merge itself is direction-blind.
    pub fn contract_arc(&self, tail: &str, head: &str) -> Result<Self, Error> {
        let (it, ih) = (self.require_vertex(tail)?, self.require_vertex(head)?);
        if !self.arcs.contains(&(it, ih)) {
            return Err(Error::NoSuchArc(tail.to_string(), head.to_string()));
        }
        Ok(self.contract_pair(it, ih))
    }

    fn contract_pair(&self, i: usize, j: usize) -> Self {
        let keep = i.min(j);
        let drop = i.max(j);
        let mut merged: Vec<&str> = vec![&self.names[i], &self.names[j]];
        merged.sort_unstable();
        let merged_name = merged.concat();

        let remap = |k: usize| -> usize {
            if k == drop {
                keep
            } else if k > drop {
                k - 1
            } else {
                k
            }
        };
        let mut names = self.names.clone();
        names.remove(drop);
        names[keep] = merged_name;

        let mut edges = BTreeSet::new();
        for &(a, b) in &self.edges {
            let (a, b) = (remap(a), remap(b));
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        let mut arcs = BTreeSet::new();
        for &(t, h) in &self.arcs {
            let (t, h) = (remap(t), remap(h));
            if t != h {
                arcs.insert((t, h));
            }
        }
        MixedGraph { names, edges, arcs }
    }

    pub fn delete_edge(&self, u: &str, v: &str) -> Result<Self, Error> {
        let (iu, iv) = (self.require_vertex(u)?, self.require_vertex(v)?);
        let key = (iu.min(iv), iu.max(iv));
        if !self.edges.contains(&key) {
            return Err(Error::NoSuchEdge(u.to_string(), v.to_string()));
        }
        let mut g = self.clone();
        g.edges.remove(&key);
        Ok(g)
    }

    pub fn delete_arc(&self, tail: &str, head: &str) -> Result<Self, Error> {
        let (it, ih) = (self.require_vertex(tail)?, self.require_vertex(head)?);
        if !self.arcs.contains(&(it, ih)) {
            return Err(Error::NoSuchArc(tail.to_string(), head.to_string()));
        }
        let mut g = self.clone();
        g.arcs.remove(&(it, ih));
        Ok(g)
    }

    /// Delete a vertex together with all incident edges and arcs.
    pub fn delete_vertex(&self, name: &str) -> Result<Self, Error> {
        self.delete_vertex_index(self.require_vertex(name)?)
    }

    /// Delete the vertex at index `idx`. Unambiguous even if display names
    /// collide (contraction labels are concatenations and may in principle
    /// repeat).
    pub fn delete_vertex_index(&self, idx: usize) -> Result<Self, Error> {
        if idx >= self.names.len() {
            return Err(Error::NoSuchVertex(format!("#{idx}")));
        }
        let remap = |k: usize| if k > idx { k - 1 } else { k };
        let mut names = self.names.clone();
        names.remove(idx);
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| u != idx && v != idx)
            .map(|&(u, v)| (remap(u), remap(v)))
            .collect();
        let arcs = self
            .arcs
            .iter()
            .filter(|&&(t, h)| t != idx && h != idx)
            .map(|&(t, h)| (remap(t), remap(h)))
            .collect();
        Ok(MixedGraph { names, edges, arcs })
    }

    /// Replace the arc `tail -> head` by `head -> tail`.
    pub fn reverse_arc(&self, tail: &str, head: &str) -> Result<Self, Error> {
        let (it, ih) = (self.require_vertex(tail)?, self.require_vertex(head)?);
        if !self.arcs.contains(&(it, ih)) {
            return Err(Error::NoSuchArc(tail.to_string(), head.to_string()));
        }
        let mut g = self.clone();
        g.arcs.remove(&(it, ih));
        g.arcs.insert((ih, it));
        Ok(g)
    }

    /// Whether the arc set alone contains a directed cycle (edges ignored).
    pub fn arc_digraph_has_cycle(&self) -> bool {
        let n = self.names.len();
        let mut succ = vec![Vec::new(); n];
        for &(t, h) in &self.arcs {
            succ[t].push(h);
        }
        // 0 = white, 1 = on stack, 2 = done
        let mut state = vec![0u8; n];
        fn dfs(v: usize, succ: &[Vec<usize>], state: &mut [u8]) -> bool {
            state[v] = 1;
            for &w in &succ[v] {
                if state[w] == 1 || (state[w] == 0 && dfs(w, succ, state)) {
                    return true;
                }
            }
            state[v] = 2;
            false
        }
        (0..n).any(|v| state[v] == 0 && dfs(v, &succ, &mut state))
    }

    /// Enumerate all flats: one per partition of the vertex set into blocks
    /// that are each connected in the underlying graph. The trivial flat
    /// (all singletons) is included. Order: number of blocks descending,
    /// then lexicographic in the partition's restricted-growth encoding.
    pub fn enumerate_flats(&self) -> Vec<Flat> {
        let n = self.names.len();
        if n == 0 {
            // The empty graph has exactly one (empty) flat.
            return vec![Flat {
                blocks: Vec::new(),
                block_names: Vec::new(),
                quotient: self.clone(),
                contracted: BTreeSet::new(),
            }];
        }
        let adj = self.underlying().adjacency();
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        self.flats_rec(1, 1, &mut rgs, &adj, &mut out);
        out.sort_by_key(|f| std::cmp::Reverse(f.blocks.len()));
        out
    }

    fn flats_rec(
        &self,
        pos: usize,
        num_blocks: usize,
        rgs: &mut Vec<usize>,
        adj: &[BTreeSet<usize>],
        out: &mut Vec<Flat>,
    ) {
        let n = self.names.len();
        if pos == n {
            if let Some(flat) = self.flat_from_rgs(rgs, adj) {
                out.push(flat);
            }
            return;
        }
        for b in 0..=num_blocks {
            rgs[pos] = b;
            let next = num_blocks.max(b + 1);
            self.flats_rec(pos + 1, next, rgs, adj, out);
        }
    }

    fn flat_from_rgs(&self, rgs: &[usize], adj: &[BTreeSet<usize>]) -> Option<Flat> {
        let num_blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); num_blocks];
        for (v, &b) in rgs.iter().enumerate() {
            blocks[b].push(v);
        }
        for block in &blocks {
            if !connected_within(block, adj) {
                return None;
            }
        }
        Some(self.flat_from_blocks(rgs, blocks))
    }

    fn flat_from_blocks(&self, rgs: &[usize], blocks: Vec<Vec<usize>>) -> Flat {
        let block_names: Vec<Vec<String>> = blocks
            .iter()
            .map(|block| {
                let mut names: Vec<String> =
                    block.iter().map(|&v| self.names[v].clone()).collect();
                names.sort_unstable();
                names
            })
            .collect();
        let labels: Vec<String> = block_names.iter().map(|ns| ns.concat()).collect();

        let mut q_edges = BTreeSet::new();
        for &(u, v) in &self.edges {
            let (bu, bv) = (rgs[u], rgs[v]);
            if bu != bv {
                q_edges.insert((bu.min(bv), bu.max(bv)));
            }
        }
        let mut q_arcs = BTreeSet::new();
        for &(t, h) in &self.arcs {
            let (bt, bh) = (rgs[t], rgs[h]);
            if bt != bh {
                q_arcs.insert((bt, bh));
            }
        }
        let contracted = blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.len() >= 2)
            .map(|(i, _)| i)
            .collect();
        Flat {
            blocks,
            block_names,
            quotient: MixedGraph {
                names: labels,
                edges: q_edges,
                arcs: q_arcs,
            },
            contracted,
        }
    }

    /// Parse the graph text format: one directive per line, `#` starts a
    /// comment. Directives are `vertex <name>`, `edge <u> <v>`, and
    /// `arc <u> <v>` (tail first).
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut g = MixedGraph::empty();
        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let err = |msg: String| ParseError::new(lineno, msg);
            match tokens[0] {
                "vertex" => {
                    if tokens.len() != 2 {
                        return Err(err("vertex directive takes exactly one name".into()));
                    }
                    let name = tokens[1];
                    if !valid_token(name) {
                        return Err(err(format!(
                            "invalid vertex name {name:?} (ASCII alphanumeric/underscore only)"
                        )));
                    }
                    if g.vertex_index(name).is_some() {
                        return Err(err(format!("duplicate vertex {name:?}")));
                    }
                    g.names.push(name.to_string());
                }
                "edge" | "arc" => {
                    if tokens.len() != 3 {
                        return Err(err(format!(
                            "{} directive takes exactly two endpoints",
                            tokens[0]
                        )));
                    }
                    let (u, v) = (tokens[1], tokens[2]);
                    let iu = g
                        .vertex_index(u)
                        .ok_or_else(|| err(format!("undeclared vertex {u:?}")))?;
                    let iv = g
                        .vertex_index(v)
                        .ok_or_else(|| err(format!("undeclared vertex {v:?}")))?;
                    if iu == iv {
                        return Err(err(format!("loop at vertex {u:?}")));
                    }
                    if tokens[0] == "edge" {
                        if !g.edges.insert((iu.min(iv), iu.max(iv))) {
                            return Err(err(format!("duplicate edge {u} {v}")));
                        }
                    } else if !g.arcs.insert((iu, iv)) {
                        return Err(err(format!("duplicate arc {u} {v}")));
                    }
                }
                other => {
                    return Err(err(format!(
                        "unknown directive {other:?} (expected vertex, edge, or arc)"
                    )));
                }
            }
        }
        Ok(g)
    }

    /// Serialize back to the text format. The output re-parses to an
    /// identical graph.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for name in &self.names {
            out.push_str(&format!("vertex {name}\n"));
        }
        for &(u, v) in &self.edges {
            out.push_str(&format!("edge {} {}\n", self.names[u], self.names[v]));
        }
        for &(t, h) in &self.arcs {
            out.push_str(&format!("arc {} {}\n", self.names[t], self.names[h]));
        }
        out
    }
}

fn connected_within(block: &[usize], adj: &[BTreeSet<usize>]) -> bool {
    if block.len() <= 1 {
        return true;
    }
    let members: BTreeSet<usize> = block.iter().copied().collect();
    let mut seen = BTreeSet::new();
    let mut stack = vec![block[0]];
    seen.insert(block[0]);
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if members.contains(&w) && seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == members.len()
}

impl UndirectedGraph {
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_names(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
    }

    pub fn has_edge_idx(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.names.len()];
        for &(u, v) in &self.edges {
            adj[u].insert(v);
            adj[v].insert(u);
        }
        adj
    }
}

impl Orientation {
    /// Directed edges in the sorted order of the underlying edge list.
    pub fn directed_edges(&self) -> &[(usize, usize)] {
        &self.directed
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// The oriented copy of the edge `{u, v}`, if that edge is oriented here.
    pub fn direction_of(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        self.directed
            .iter()
            .find(|&&(a, b)| (a.min(b), a.max(b)) == (u.min(v), u.max(v)))
            .copied()
    }

    pub fn directed_edge_names(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.directed
            .iter()
            .map(|&(t, h)| (self.names[t].as_str(), self.names[h].as_str()))
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .directed
            .iter()
            .map(|&(t, h)| format!("{}->{}", self.names[t], self.names[h]))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Enumerate all acyclic orientations of a simple undirected graph, in the
/// order induced by trying each edge forward (`u -> v` with `u < v`) before
/// backward. The edgeless graph yields exactly one empty orientation.
pub fn enumerate_acyclic_orientations(g: &UndirectedGraph) -> Vec<Orientation> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let n = g.vertex_count();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut chosen: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
    let mut out = Vec::new();

    fn reachable(from: usize, to: usize, succ: &[BTreeSet<usize>]) -> bool {
        if from == to {
            return true;
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![from];
        seen.insert(from);
        while let Some(v) = stack.pop() {
            for &w in &succ[v] {
                if w == to {
                    return true;
                }
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        false
    }

    fn rec(
        k: usize,
        edges: &[(usize, usize)],
        names: &[String],
        succ: &mut Vec<BTreeSet<usize>>,
        chosen: &mut Vec<(usize, usize)>,
        out: &mut Vec<Orientation>,
    ) {
        if k == edges.len() {
            out.push(Orientation {
                names: names.to_vec(),
                directed: chosen.clone(),
            });
            return;
        }
        let (u, v) = edges[k];
        for (a, b) in [(u, v), (v, u)] {
            // Adding a -> b closes a cycle exactly when b already reaches a.
            if !reachable(b, a, succ) {
                succ[a].insert(b);
                chosen.push((a, b));
                rec(k + 1, edges, names, succ, chosen, out);
                chosen.pop();
                succ[a].remove(&b);
            }
        }
    }

    rec(
        0,
        &edges,
        g.vertex_names(),
        &mut succ,
        &mut chosen,
        &mut out,
    );
    out
}

impl Flat {
    /// Blocks as parent vertex indices, sorted within blocks, blocks ordered
    /// by minimal member.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Blocks as parent vertex names, sorted within blocks.
    pub fn block_names(&self) -> &[Vec<String>] {
        &self.block_names
    }

    pub fn quotient(&self) -> &MixedGraph {
        &self.quotient
    }

    /// Quotient vertex indices that arose from contractions (block size >= 2).
    pub fn contracted(&self) -> &BTreeSet<usize> {
        &self.contracted
    }

    pub fn contracted_names(&self) -> Vec<&str> {
        self.contracted
            .iter()
            .map(|&i| self.quotient.vertex_name(i))
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.quotient.vertex_count()
    }

    /// Tail vertices of quotient arcs whose direction is opposed by the
    /// orientation: `v` such that `v -> w` is an arc and the orientation
    /// directs the edge `{v, w}` as `w -> v`.
    ///
    /// The orientation must orient the underlying graph of this flat's
    /// quotient.
    pub fn opposed_tails(&self, sigma: &Orientation) -> BTreeSet<usize> {
        let mut tails = BTreeSet::new();
        for (t, h) in self.quotient.arcs() {
            let dir = sigma
                .direction_of(t, h)
                .expect("orientation must cover every quotient edge");
            if dir == (h, t) {
                tails.insert(t);
            }
        }
        tails
    }

    /// Render the partition as `{a,b}{c}`.
    pub fn partition_string(&self) -> String {
        self.block_names
            .iter()
            .map(|ns| format!("{{{}}}", ns.join(",")))
            .collect::<Vec<_>>()
            .concat()
    }
}
