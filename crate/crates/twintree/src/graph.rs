//! Core multigraph model: stable edge identities, partitions, quotients,
//! orientations, induced subgraphs, and exact connectivity checks.
//!
//! Design notes:
//!
//! * Vertex ids are dense integers `0..n`; edge ids are input positions.
//!   Both are stable under subgraph and quotient operations (subviews carry
//!   explicit id maps back to their host), which keeps certificates
//!   reproducible and byte-stable.
//! * Loops are rejected; parallel edges are allowed (they matter: a pair of
//!   parallel edges is the smallest graph formed by two edge-disjoint
//!   spanning trees).
//! * Every iteration order is ascending by id, so all derived structures are
//!   deterministic without any seeding.
//! * Values are immutable after construction; all functions here are pure.

use crate::{Error, Result};
use std::fmt;

/// Dense vertex id (`0..n`).
pub type VertexId = usize;
/// Stable edge id (position in the original edge list).
pub type EdgeId = usize;

// ────────────────────────────────────────────────────────────────────────────
// Graph
// ────────────────────────────────────────────────────────────────────────────

/// An undirected loopless multigraph with stable edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(VertexId, VertexId)>,
    /// Adjacency per vertex, sorted by (neighbour, edge id).
    adj: Vec<Vec<(VertexId, EdgeId)>>,
}

/// Builds a graph from a vertex count and an edge list.
///
/// Edge ids are assigned by input position (0-based).  Endpoint order within
/// an edge is preserved as given (it is semantically irrelevant but keeps the
/// text serialisation bit-exact).
pub fn build_graph(vertex_count: usize, edge_list: &[(VertexId, VertexId)]) -> Result<Graph> {
    for (i, &(u, v)) in edge_list.iter().enumerate() {
        if u >= vertex_count || v >= vertex_count {
            return Err(Error::InvalidInput(format!(
                "edge {i} ({u},{v}) has an endpoint out of range 0..{vertex_count}"
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("edge {i} is a loop at vertex {u}")));
        }
    }
    let mut adj = vec![Vec::new(); vertex_count];
    for (id, &(u, v)) in edge_list.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    Ok(Graph { n: vertex_count, edges: edge_list.to_vec(), adj })
}

impl Graph {
    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of edges (with multiplicity).
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Endpoints of an edge, in input order.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    /// All edges as (id, endpoints), ascending by id.
    pub fn edge_records(&self) -> impl Iterator<Item = (EdgeId, (VertexId, VertexId))> + '_ {
        self.edges.iter().copied().enumerate()
    }

    /// The endpoint of `e` different from `v`; panics if `e` is not at `v`.
    pub fn other_endpoint(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.edges[e];
        if v == a {
            b
        } else {
            assert_eq!(v, b, "edge {e} is not incident to vertex {v}");
            a
        }
    }

    /// Adjacency at `v`: (neighbour, edge id), sorted ascending.
    pub fn incidences(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    /// Distinct neighbours of `v`, ascending.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self.adj[v].iter().map(|&(w, _)| w).collect();
        out.dedup();
        out
    }

    /// Edge ids incident to `v`, ascending.
    pub fn edges_at(&self, v: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self.adj[v].iter().map(|&(_, e)| e).collect();
        out.sort_unstable();
        out
    }

    /// Degree of `v` (with multiplicity).
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    /// All edge ids joining `u` and `v`, ascending.
    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> =
            self.adj[u].iter().filter(|&&(w, _)| w == v).map(|&(_, e)| e).collect();
        out.sort_unstable();
        out
    }

    /// Whether `u` and `v` are adjacent.
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].iter().any(|&(w, _)| w == v)
    }

    /// True iff the graph has no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.adj.iter().all(|a| a.windows(2).all(|w| w[0].0 != w[1].0))
    }

    /// Edge ids with both endpoints inside `x` (given as a membership mask),
    /// ascending.
    pub fn induced_edge_ids_mask(&self, mask: &[bool]) -> Vec<EdgeId> {
        self.edge_records()
            .filter(|&(_, (u, v))| mask[u] && mask[v])
            .map(|(e, _)| e)
            .collect()
    }

    /// Number of edges with both endpoints inside `x` (membership mask).
    pub fn count_induced_edges_mask(&self, mask: &[bool]) -> usize {
        self.edges.iter().filter(|&&(u, v)| mask[u] && mask[v]).count()
    }

    /// True iff the graph is connected (vacuously true for n ≤ 1).
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// Vertex sets of the connected components, each ascending, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let mut stack = vec![start];
            comp[start] = next;
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        let mut out = vec![Vec::new(); next];
        for v in 0..self.n {
            out[comp[v]].push(v);
        }
        out
    }

    /// Converts a vertex-id slice into a membership mask, validating range and
    /// absence of duplicates.
    pub fn vertex_mask(&self, x: &[VertexId]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.n];
        for &v in x {
            if v >= self.n {
                return Err(Error::InvalidInput(format!("vertex {v} out of range 0..{}", self.n)));
            }
            if mask[v] {
                return Err(Error::InvalidInput(format!("vertex {v} listed twice")));
            }
            mask[v] = true;
        }
        Ok(mask)
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Text format
// ────────────────────────────────────────────────────────────────────────────

/// Parses the shared text format: first non-comment line `n m`, then `m`
/// lines `u v` (0-based).  Lines starting with `#` and blank lines are
/// ignored.
pub fn from_text(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input: expected header line \"n m\"".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header line {header:?}")))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad header line {header:?}")))?;
    if it.next().is_some() {
        return Err(Error::Parse(format!("trailing tokens in header line {header:?}")));
    }
    let mut edges = Vec::with_capacity(m);
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad edge line {line:?}")))?;
        if it.next().is_some() {
            return Err(Error::Parse(format!("trailing tokens in edge line {line:?}")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!("header announced {m} edges, found {}", edges.len())));
    }
    build_graph(n, &edges)
}

/// Serialises a graph in the shared text format.  `from_text ∘ to_text` is
/// the identity, and `to_text ∘ from_text` is the identity on comment-free
/// canonical text.
pub fn to_text(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n, g.edges.len());
    for &(u, v) in &g.edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_text(self))
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Edge neighbourhoods
// ────────────────────────────────────────────────────────────────────────────

/// Edges with exactly one endpoint in `x`, ascending by id.
///
/// `x` must be a non-empty proper subset of the vertices.
pub fn edge_neighborhood(g: &Graph, x: &[VertexId]) -> Result<Vec<EdgeId>> {
    let mask = g.vertex_mask(x)?;
    let size = mask.iter().filter(|&&b| b).count();
    if size == 0 {
        return Err(Error::InvalidInput("edge_neighborhood: empty vertex set".into()));
    }
    if size == g.vertex_count() {
        return Err(Error::InvalidInput("edge_neighborhood: full vertex set".into()));
    }
    Ok(g.edge_records()
        .filter(|&(_, (u, v))| mask[u] != mask[v])
        .map(|(e, _)| e)
        .collect())
}

/// True iff no two of the given edges share an endpoint.
pub fn is_matching(g: &Graph, edge_ids: &[EdgeId]) -> bool {
    let mut used = vec![false; g.vertex_count()];
    for &e in edge_ids {
        let (u, v) = g.endpoints(e);
        if used[u] || used[v] {
            return false;
        }
        used[u] = true;
        used[v] = true;
    }
    true
}

// ────────────────────────────────────────────────────────────────────────────
// Partitions and quotients
// ────────────────────────────────────────────────────────────────────────────

/// A partition of the vertex set into non-empty blocks.
///
/// Canonical form: each block is sorted ascending; blocks are ordered by
/// their smallest member.  Block indices refer to this canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<VertexId>>,
    block_index: Vec<usize>,
}

impl serde::Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.blocks.serialize(serializer)
    }
}

impl Partition {
    /// Validates and canonicalises a partition of `0..n`.
    pub fn new(n: usize, blocks: Vec<Vec<VertexId>>) -> Result<Partition> {
        let mut block_index = vec![usize::MAX; n];
        let mut canon: Vec<Vec<VertexId>> = Vec::with_capacity(blocks.len());
        for block in blocks {
            if block.is_empty() {
                return Err(Error::InvalidInput("partition contains an empty block".into()));
            }
            let mut b = block;
            b.sort_unstable();
            for &v in &b {
                if v >= n {
                    return Err(Error::InvalidInput(format!("vertex {v} out of range 0..{n}")));
                }
                if block_index[v] != usize::MAX {
                    return Err(Error::InvalidInput(format!("vertex {v} in two blocks")));
                }
                block_index[v] = 0; // placeholder; real index assigned below
            }
            if b.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidInput("block lists a vertex twice".into()));
            }
            canon.push(b);
        }
        if block_index.contains(&usize::MAX) {
            return Err(Error::InvalidInput("partition does not cover all vertices".into()));
        }
        canon.sort_unstable_by_key(|b| b[0]);
        for (i, b) in canon.iter().enumerate() {
            for &v in b {
                block_index[v] = i;
            }
        }
        Ok(Partition { n, blocks: canon, block_index })
    }

    /// The all-singletons partition of `0..n`.
    pub fn singletons(n: usize) -> Partition {
        Partition {
            n,
            blocks: (0..n).map(|v| vec![v]).collect(),
            block_index: (0..n).collect(),
        }
    }

    /// Number of vertices partitioned.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The blocks, canonical order.
    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Index of the block containing `v`.
    pub fn block_of(&self, v: VertexId) -> usize {
        self.block_index[v]
    }
}

/// A quotient of a graph by a vertex partition.  Quotient vertices are block
/// indices; quotient edges are exactly the crossing edges of the base graph
/// and *keep their base edge ids* through [`QuotientGraph::crossing_edges`].
#[derive(Debug, Clone)]
pub struct QuotientGraph {
    base: Graph,
    partition: Partition,
    /// Base edge ids with endpoints in two distinct blocks, ascending.
    crossing: Vec<EdgeId>,
    /// The quotient as a graph on block indices; its edge `i` is base edge
    /// `crossing[i]`.
    quotient: Graph,
}

/// Forms the quotient of `g` by `p`.
pub fn quotient(g: &Graph, p: &Partition) -> Result<QuotientGraph> {
    if p.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidInput(format!(
            "partition covers {} vertices but graph has {}",
            p.vertex_count(),
            g.vertex_count()
        )));
    }
    let mut crossing = Vec::new();
    let mut qedges = Vec::new();
    for (e, (u, v)) in g.edge_records() {
        let (bu, bv) = (p.block_of(u), p.block_of(v));
        if bu != bv {
            crossing.push(e);
            qedges.push((bu, bv));
        }
    }
    let quotient = build_graph(p.block_count(), &qedges)?;
    Ok(QuotientGraph { base: g.clone(), partition: p.clone(), crossing, quotient })
}

impl QuotientGraph {
    /// The base graph.
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// The defining partition.
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    /// Base edge ids of the crossing edges, ascending.  Entry `i` is the base
    /// id of quotient edge `i`.
    pub fn crossing_edges(&self) -> &[EdgeId] {
        &self.crossing
    }

    /// The quotient as a graph on block indices.
    pub fn as_graph(&self) -> &Graph {
        &self.quotient
    }

    /// Maps a quotient edge id back to its base edge id.
    pub fn base_edge(&self, quotient_edge: EdgeId) -> EdgeId {
        self.crossing[quotient_edge]
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Subgraph views
// ────────────────────────────────────────────────────────────────────────────

/// An induced or edge-restricted subgraph together with the maps back to its
/// host's vertex and edge ids.
///
/// The packed [`Subgraph::graph`] uses dense local ids (required by every
/// algorithm in this crate); `vertices[local] = host vertex` and
/// `edge_ids[local] = host edge id` recover the host's stable identities, so
/// certificates computed on the view can always be reported in host terms.
#[derive(Debug, Clone)]
pub struct Subgraph {
    /// The subgraph with dense local ids.
    pub graph: Graph,
    /// Local vertex → host vertex, ascending.
    pub vertices: Vec<VertexId>,
    /// Local edge → host edge id, ascending.
    pub edge_ids: Vec<EdgeId>,
}

impl Subgraph {
    /// Host vertex of a local vertex.
    pub fn host_vertex(&self, local: VertexId) -> VertexId {
        self.vertices[local]
    }

    /// Host edge id of a local edge.
    pub fn host_edge(&self, local: EdgeId) -> EdgeId {
        self.edge_ids[local]
    }

    /// Local id of a host vertex, if present.
    pub fn local_vertex(&self, host: VertexId) -> Option<VertexId> {
        self.vertices.binary_search(&host).ok()
    }

    /// Local id of a host edge, if present.
    pub fn local_edge(&self, host: EdgeId) -> Option<EdgeId> {
        self.edge_ids.binary_search(&host).ok()
    }
}

/// The subgraph induced by vertex set `x`: all edges of `g` internal to `x`,
/// host edge ids retained via the returned map.
pub fn induced_subgraph(g: &Graph, x: &[VertexId]) -> Result<Subgraph> {
    let mask = g.vertex_mask(x)?;
    let vertices: Vec<VertexId> = (0..g.vertex_count()).filter(|&v| mask[v]).collect();
    if vertices.is_empty() {
        return Err(Error::InvalidInput("induced_subgraph: empty vertex set".into()));
    }
    let mut local_of = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in vertices.iter().enumerate() {
        local_of[v] = i;
    }
    let mut edge_ids = Vec::new();
    let mut edges = Vec::new();
    for (e, (u, v)) in g.edge_records() {
        if mask[u] && mask[v] {
            edge_ids.push(e);
            edges.push((local_of[u], local_of[v]));
        }
    }
    Ok(Subgraph { graph: build_graph(vertices.len(), &edges)?, vertices, edge_ids })
}

/// `g` with the given edges removed (vertex set unchanged); host edge ids of
/// the surviving edges retained via the returned map.
pub fn without_edges(g: &Graph, removed: &[EdgeId]) -> Result<Subgraph> {
    let mut drop = vec![false; g.edge_count()];
    for &e in removed {
        if e >= g.edge_count() {
            return Err(Error::InvalidInput(format!("edge id {e} out of range")));
        }
        drop[e] = true;
    }
    let mut edge_ids = Vec::new();
    let mut edges = Vec::new();
    for (e, pair) in g.edge_records() {
        if !drop[e] {
            edge_ids.push(e);
            edges.push(pair);
        }
    }
    Ok(Subgraph {
        graph: build_graph(g.vertex_count(), &edges)?,
        vertices: (0..g.vertex_count()).collect(),
        edge_ids,
    })
}

// ────────────────────────────────────────────────────────────────────────────
// Orientations
// ────────────────────────────────────────────────────────────────────────────

/// An orientation of a graph: each edge is assigned an ordered endpoint pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    n: usize,
    /// `arcs[e] = (tail, head)`.
    arcs: Vec<(VertexId, VertexId)>,
}

impl Orientation {
    /// Wraps explicit arc assignments, checking each is a permutation of that
    /// edge's endpoints.
    pub fn new(g: &Graph, arcs: Vec<(VertexId, VertexId)>) -> Result<Orientation> {
        if arcs.len() != g.edge_count() {
            return Err(Error::InvalidInput(format!(
                "expected {} arcs, got {}",
                g.edge_count(),
                arcs.len()
            )));
        }
        for (e, &(t, h)) in arcs.iter().enumerate() {
            let (u, v) = g.endpoints(e);
            if !((t, h) == (u, v) || (t, h) == (v, u)) {
                return Err(Error::InvalidInput(format!(
                    "arc {e} ({t},{h}) is not an orientation of edge ({u},{v})"
                )));
            }
        }
        Ok(Orientation { n: g.vertex_count(), arcs })
    }

    /// Number of vertices.
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of arcs.
    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// The (tail, head) pair of edge `e`.
    pub fn arc(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.arcs[e]
    }

    /// All arcs as (edge id, tail, head), ascending by edge id.
    pub fn arc_records(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.arcs.iter().enumerate().map(|(e, &(t, h))| (e, t, h))
    }

    /// Out-arcs at `v` as (edge id, head), ascending by edge id.
    pub fn out_arcs(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        self.arcs
            .iter()
            .enumerate()
            .filter(|&(_, &(t, _))| t == v)
            .map(|(e, &(_, h))| (e, h))
            .collect()
    }

    /// In-arcs at `v` as (edge id, tail), ascending by edge id.
    pub fn in_arcs(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        self.arcs
            .iter()
            .enumerate()
            .filter(|&(_, &(_, h))| h == v)
            .map(|(e, &(t, _))| (e, t))
            .collect()
    }

    /// In-degree of `v`.
    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|&&(_, h)| h == v).count()
    }

    /// Out-degree of `v`.
    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arcs.iter().filter(|&&(t, _)| t == v).count()
    }

    /// A topological order of the vertices, or `None` if the orientation has
    /// a directed cycle.  Deterministic: smallest available vertex first.
    pub fn topological_order(&self) -> Option<Vec<VertexId>> {
        let mut indeg = vec![0usize; self.n];
        let mut out = vec![Vec::new(); self.n];
        for &(t, h) in &self.arcs {
            indeg[h] += 1;
            out[t].push(h);
        }
        // Simple ascending scan; n is small throughout this crate.
        let mut order = Vec::with_capacity(self.n);
        let mut placed = vec![false; self.n];
        for _ in 0..self.n {
            let next = (0..self.n).find(|&v| !placed[v] && indeg[v] == 0)?;
            placed[next] = true;
            order.push(next);
            for &h in &out[next] {
                indeg[h] -= 1;
            }
        }
        Some(order)
    }

    /// True iff the orientation is acyclic.
    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }
}

/// Orients every edge of `g` from its earlier to its later endpoint in
/// `order`.  The result is acyclic, with `order` as an acyclic ordering.
pub fn orient_by_ordering(g: &Graph, order: &[VertexId]) -> Result<Orientation> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(Error::InvalidInput(format!(
            "order has {} entries, expected {n}",
            order.len()
        )));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::InvalidInput("order is not a permutation of the vertices".into()));
        }
        position[v] = i;
    }
    let arcs = g
        .edges
        .iter()
        .map(|&(u, v)| if position[u] < position[v] { (u, v) } else { (v, u) })
        .collect();
    Ok(Orientation { n, arcs })
}

// ────────────────────────────────────────────────────────────────────────────
// Connectivity (exact, via unit-capacity max-flow)
// ────────────────────────────────────────────────────────────────────────────

/// Which connectivity notion to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectivityMode {
    Vertex,
    Edge,
}

/// Exact test for k-connectivity (vertex mode) or k-edge-connectivity (edge
/// mode).  Computed by max-flow over all required terminal pairs; inputs here
/// are desk-scale, so this is cheap.
pub fn connectivity_at_least(g: &Graph, k: usize, mode: ConnectivityMode) -> bool {
    match mode {
        ConnectivityMode::Edge => edge_connectivity(g) >= k,
        ConnectivityMode::Vertex => vertex_connectivity(g) >= k,
    }
}

/// Exact edge connectivity; `usize::MAX` for graphs with fewer than 2
/// vertices (no cut exists).
pub fn edge_connectivity(g: &Graph) -> usize {
    min_edge_cut(g).map_or(usize::MAX, |(_, cut)| cut.len())
}

/// A minimum edge cut as (side containing vertex 0, cut edge ids), or `None`
/// if the graph has fewer than 2 vertices.  Deterministic: the first optimal
/// terminal in ascending order wins.
pub fn min_edge_cut(g: &Graph) -> Option<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = g.vertex_count();
    if n < 2 {
        return None;
    }
    if !g.is_connected() {
        let comp = &g.components()[0];
        return Some((comp.clone(), Vec::new()));
    }
    let mut best: Option<(usize, usize)> = None; // (cut size, terminal)
    for t in 1..n {
        let flow = edge_max_flow(g, 0, t, best.map(|(b, _)| b));
        if best.is_none_or(|(b, _)| flow < b) {
            best = Some((flow, t));
        }
    }
    let (_, t) = best.unwrap();
    let (_, side) = edge_max_flow_with_side(g, 0, t);
    let mask = g.vertex_mask(&side).unwrap();
    let cut = g
        .edge_records()
        .filter(|&(_, (u, v))| mask[u] != mask[v])
        .map(|(e, _)| e)
        .collect();
    Some((side, cut))
}

/// Exact vertex connectivity; `n−1` for complete graphs, 0 if disconnected.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.vertex_count();
    if n == 0 {
        return 0;
    }
    if n == 1 {
        return 0;
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = n - 1; // attained by complete graphs
    for u in 0..n {
        for v in (u + 1)..n {
            if !g.has_edge(u, v) {
                best = best.min(vertex_max_flow(g, u, v, best));
            }
        }
    }
    best
}

/// Unit-capacity max-flow between distinct vertices, counting parallel edges.
/// Stops early once the flow reaches `cap_hint` (the current best cut), if
/// given.
fn edge_max_flow(g: &Graph, s: usize, t: usize, cap_hint: Option<usize>) -> usize {
    let (flow, _) = edge_flow_impl(g, s, t, cap_hint);
    flow
}

fn edge_max_flow_with_side(g: &Graph, s: usize, t: usize) -> (usize, Vec<VertexId>) {
    edge_flow_impl(g, s, t, None)
}

fn edge_flow_impl(g: &Graph, s: usize, t: usize, cap_hint: Option<usize>) -> (usize, Vec<VertexId>) {
    // Residual network: arcs 2e (u→v) and 2e+1 (v→u), each capacity 1.
    let m = g.edge_count();
    let mut cap = vec![1u8; 2 * m];
    let mut flow = 0usize;
    loop {
        if let Some(h) = cap_hint {
            if flow >= h {
                return (flow, Vec::new());
            }
        }
        // BFS for an augmenting path.
        let mut prev_arc = vec![usize::MAX; g.vertex_count()];
        let mut seen = vec![false; g.vertex_count()];
        seen[s] = true;
        let mut queue = std::collections::VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for &(w, e) in g.incidences(v) {
                let (eu, _) = g.endpoints(e);
                let arc = if v == eu { 2 * e } else { 2 * e + 1 };
                if cap[arc] > 0 && !seen[w] {
                    seen[w] = true;
                    prev_arc[w] = arc;
                    if w == t {
                        break 'bfs;
                    }
                    queue.push_back(w);
                }
            }
        }
        if !seen[t] {
            let side = (0..g.vertex_count()).filter(|&v| seen[v]).collect();
            return (flow, side);
        }
        // Augment by one unit along the path.
        let mut v = t;
        while v != s {
            let arc = prev_arc[v];
            cap[arc] -= 1;
            cap[arc ^ 1] += 1;
            let e = arc / 2;
            let (eu, ev) = g.endpoints(e);
            v = if arc % 2 == 0 { eu } else { ev };
        }
        flow += 1;
    }
}

/// Vertex-capacity max-flow between non-adjacent `s`, `t` (vertex splitting).
/// Stops early once the flow reaches `cap_hint`.
fn vertex_max_flow(g: &Graph, s: usize, t: usize, cap_hint: usize) -> usize {
    // Node v splits into v_in = 2v, v_out = 2v+1 with an internal capacity-1
    // arc; each undirected edge contributes u_out→v_in and v_out→u_in with
    // effectively unbounded capacity.
    let n = g.vertex_count();
    let big = (n + g.edge_count()) as u32 + 1;
    let mut heads: Vec<usize> = Vec::new();
    let mut caps: Vec<u32> = Vec::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); 2 * n];
    let add_arc = |from: usize, to: usize, c: u32, heads: &mut Vec<usize>, caps: &mut Vec<u32>, adj: &mut Vec<Vec<usize>>| {
        heads.push(to);
        caps.push(c);
        adj[from].push(heads.len() - 1);
        heads.push(from);
        caps.push(0);
        adj[to].push(heads.len() - 1);
    };
    for v in 0..n {
        let c = if v == s || v == t { big } else { 1 };
        add_arc(2 * v, 2 * v + 1, c, &mut heads, &mut caps, &mut adj);
    }
    for (_, (u, v)) in g.edge_records() {
        add_arc(2 * u + 1, 2 * v, big, &mut heads, &mut caps, &mut adj);
        add_arc(2 * v + 1, 2 * u, big, &mut heads, &mut caps, &mut adj);
    }
    let (src, dst) = (2 * s + 1, 2 * t);
    let mut flow = 0usize;
    loop {
        if flow >= cap_hint {
            return flow;
        }
        let mut prev = vec![usize::MAX; 2 * n];
        let mut seen = vec![false; 2 * n];
        seen[src] = true;
        let mut queue = std::collections::VecDeque::from([src]);
        'bfs: while let Some(x) = queue.pop_front() {
            for &a in &adj[x] {
                let y = heads[a];
                if caps[a] > 0 && !seen[y] {
                    seen[y] = true;
                    prev[y] = a;
                    if y == dst {
                        break 'bfs;
                    }
                    queue.push_back(y);
                }
            }
        }
        if !seen[dst] {
            return flow;
        }
        let mut y = dst;
        while y != src {
            let a = prev[y];
            caps[a] -= 1;
            caps[a ^ 1] += 1;
            y = heads[a ^ 1];
        }
        flow += 1;
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Tests
// ────────────────────────────────────────────────────────────────────────────
