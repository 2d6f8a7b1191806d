//! Sparsity counting and two-tree packing.
//!
//! A graph is a *2T-graph* when its edge set splits into two edge-disjoint
//! spanning trees; equivalently (by the forest-packing theorem applied with
//! k = 2), when |E| = 2n−2 and every non-empty vertex set X spans at most
//! 2|X|−2 edges.  A *generic circuit* is an edge-minimal 2T-graph: 2n−2 edges
//! total but every proper subset X with |X| ≥ 2 spans at most 2|X|−3 edges.
//! The smallest examples are a pair of parallel edges and, among simple
//! graphs, K4.
//!
//! This module provides:
//!
//! * a (2,ℓ)-sparsity *pebble game* engine ([`PebbleState`]) for ℓ ∈ {2,3} —
//!   the standard incremental oracle for counting conditions of the form
//!   |E(G[X])| ≤ 2|X|−ℓ, with a tight witness region on rejection;
//! * [`is_forest_cover`] / [`is_2T`] / [`is_generic_circuit`] built on it;
//! * [`two_spanning_trees`]: matroid-union augmentation that either splits
//!   the edges into two spanning trees or returns a [`PartitionCertificate`]
//!   — a vertex partition 𝔉 with fewer than 2(|𝔉|−1) crossing edges, which
//!   is a proof that two disjoint spanning trees cannot exist;
//! * [`generic_circuits`] / [`find_any_circuit`]: locating the vertex sets
//!   that induce generic circuits, via pebble-game rejections shrunk to
//!   inclusion-minimal tight sets.
//!
//! All tie-breaking is by ascending id, so every result is deterministic.

use crate::graph::{induced_subgraph, EdgeId, Graph, Partition, VertexId};
use crate::{Error, Result};
use serde::Serialize;

// ────────────────────────────────────────────────────────────────────────────
// Pebble game
// ────────────────────────────────────────────────────────────────────────────

/// Result of offering one edge to the pebble game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InsertOutcome {
    /// The edge was accepted; the accepted set stays (2,ℓ)-sparse.
    Accepted,
    /// The edge was rejected.  `region` is a vertex set X containing both
    /// endpoints with |E(G[X])| ≥ 2|X|−ℓ+1 once the rejected edge is counted
    /// (ascending order).
    Rejected { region: Vec<VertexId> },
}

/// Incremental (2,ℓ)-sparsity oracle (pebble game), ℓ ∈ {2,3}.
///
/// Every vertex starts with 2 pebbles.  An edge (u,v) is accepted when ℓ+1
/// pebbles can be gathered onto {u,v} by reversing accepted-edge
/// orientations; accepting consumes one pebble and orients the edge away
/// from the consumed pebble's vertex.  The accepted set is always exactly
/// the (2,ℓ)-sparse subset of the offered edges that a greedy independence
/// oracle would keep.
#[derive(Debug, Clone)]
pub struct PebbleState {
    ell: u32,
    pebbles: Vec<u32>,
    /// Accepted-edge orientation: `out[v]` lists (head, edge id) arcs.
    out: Vec<Vec<(VertexId, EdgeId)>>,
}

impl PebbleState {
    /// Fresh game on `n` vertices with parameter ℓ ∈ {2,3}.
    pub fn new(n: usize, ell: u32) -> Result<PebbleState> {
        if !(2..=3).contains(&ell) {
            return Err(Error::Precondition(format!("unsupported pebble parameter ℓ={ell}")));
        }
        Ok(PebbleState { ell, pebbles: vec![2; n], out: vec![Vec::new(); n] })
    }

    /// The tree count parameter k (always 2 here).
    pub fn k(&self) -> u32 {
        2
    }

    /// The sparsity offset ℓ.
    pub fn ell(&self) -> u32 {
        self.ell
    }

    /// Pebbles currently on `v`.
    pub fn pebbles_at(&self, v: VertexId) -> u32 {
        self.pebbles[v]
    }

    /// Ids of all accepted edges, ascending.
    pub fn accepted(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> =
            self.out.iter().flat_map(|a| a.iter().map(|&(_, e)| e)).collect();
        out.sort_unstable();
        out
    }

    /// Offers edge `e` of `g` to the game.
    pub fn try_insert(&mut self, g: &Graph, e: EdgeId) -> InsertOutcome {
        let (u, v) = g.endpoints(e);
        let need = self.ell + 1;
        while self.pebbles[u] + self.pebbles[v] < need {
            // Try to draw one more pebble to u, then to v.  A failed search
            // leaves the game unchanged and yields the visited region.
            let from_u = self.draw_pebble(u, v);
            if from_u.is_ok() {
                continue;
            }
            let from_v = self.draw_pebble(v, u);
            if from_v.is_ok() {
                continue;
            }
            // Both searches failed: the union of the two visited sets is
            // closed under accepted arcs and holds at most ℓ pebbles, so it
            // is the tight witness region.
            let mut region: Vec<VertexId> = Vec::new();
            let mut seen = vec![false; g.vertex_count()];
            for w in from_u.unwrap_err().into_iter().chain(from_v.unwrap_err()) {
                if !seen[w] {
                    seen[w] = true;
                    region.push(w);
                }
            }
            region.sort_unstable();
            return InsertOutcome::Rejected { region };
        }
        // Accept: consume a pebble at u if possible, else at v.
        if self.pebbles[u] > 0 {
            self.pebbles[u] -= 1;
            self.out[u].push((v, e));
        } else {
            self.pebbles[v] -= 1;
            self.out[v].push((u, e));
        }
        InsertOutcome::Accepted
    }

    /// Depth-first search from `root` (never visiting `blocked`) for a vertex
    /// holding a pebble; on success moves one pebble to `root` by reversing
    /// the path.  On failure returns the visited set.
    fn draw_pebble(&mut self, root: VertexId, blocked: VertexId) -> std::result::Result<(), Vec<VertexId>> {
        let n = self.pebbles.len();
        let mut visited = vec![false; n];
        let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
        let mut parent_arc: Vec<Option<(VertexId, EdgeId)>> = vec![None; n];
        visited[root] = true;
        while let Some(&mut (v, ref mut idx)) = stack.last_mut() {
            if *idx >= self.out[v].len() {
                stack.pop();
                continue;
            }
            let (w, e) = self.out[v][*idx];
            *idx += 1;
            if w == blocked || visited[w] {
                continue;
            }
            visited[w] = true;
            parent_arc[w] = Some((v, e));
            if self.pebbles[w] > 0 {
                // Take the pebble and reverse the tree path root → w.
                self.pebbles[w] -= 1;
                self.pebbles[root] += 1;
                let mut cur = w;
                while let Some((p, pe)) = parent_arc[cur] {
                    let pos = self.out[p].iter().position(|&(_, x)| x == pe).unwrap();
                    self.out[p].remove(pos);
                    self.out[cur].push((p, pe));
                    cur = p;
                }
                return Ok(());
            }
            stack.push((w, 0));
        }
        let region = (0..n).filter(|&x| visited[x]).collect();
        Err(region)
    }
}

/// Runs the (2,ℓ)-pebble game over all edges in ascending order and returns
/// the outcome per edge.
fn run_pebble_game(g: &Graph, ell: u32) -> (PebbleState, Vec<(EdgeId, Vec<VertexId>)>) {
    let mut state = PebbleState::new(g.vertex_count(), ell).expect("ℓ is 2 or 3");
    let mut rejections = Vec::new();
    for e in 0..g.edge_count() {
        if let InsertOutcome::Rejected { region } = state.try_insert(g, e) {
            rejections.push((e, region));
        }
    }
    (state, rejections)
}

/// True iff every non-empty vertex set X spans at most 2|X|−2 edges, i.e.
/// the edge set is a union of two forests.
pub fn is_forest_cover(g: &Graph) -> bool {
    let (_, rejections) = run_pebble_game(g, 2);
    rejections.is_empty()
}

/// True iff `g` is a 2T-graph: |E| = 2n−2 and (2,2)-sparse — equivalently,
/// the edge-disjoint union of two spanning trees.
pub fn is_2t(g: &Graph) -> Result<bool> {
    if g.vertex_count() < 2 {
        return Err(Error::Precondition("2T test needs at least 2 vertices".into()));
    }
    Ok(g.edge_count() == 2 * g.vertex_count() - 2 && is_forest_cover(g))
}

/// True iff `g` is a generic circuit: a 2T-graph none of whose proper
/// subgraphs is a 2T-graph.  Equivalently: 2n−2 edges, connected, and g−e is
/// (2,3)-sparse for every edge e.
pub fn is_generic_circuit(g: &Graph) -> bool {
    let n = g.vertex_count();
    if n < 2 || g.edge_count() != 2 * n - 2 || !g.is_connected() {
        return false;
    }
    for skip in 0..g.edge_count() {
        let mut state = PebbleState::new(n, 3).expect("ℓ=3");
        for e in 0..g.edge_count() {
            if e != skip {
                if let InsertOutcome::Rejected { .. } = state.try_insert(g, e) {
                    return false;
                }
            }
        }
    }
    true
}

// ────────────────────────────────────────────────────────────────────────────
// Two spanning trees (matroid union)
// ────────────────────────────────────────────────────────────────────────────

/// Two edge-disjoint spanning trees of the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreePair {
    /// Edge ids of the first tree (the "I" tree in orientation contexts).
    #[serde(rename = "tree-I-edges")]
    pub tree_i: Vec<EdgeId>,
    /// Edge ids of the second tree (the "O" tree).
    #[serde(rename = "tree-O-edges")]
    pub tree_o: Vec<EdgeId>,
}

/// A vertex partition 𝔉 with fewer than 2(|𝔉|−1) crossing edges — a proof
/// (by the tree-packing bound with k = 2) that the host graph has no two
/// edge-disjoint spanning trees.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub partition: Partition,
    /// Number of edges with endpoints in two distinct blocks.
    #[serde(rename = "crossing-count")]
    pub crossing_count: usize,
}

impl PartitionCertificate {
    /// Re-checks the certificate numerically against `g`: the stored
    /// crossing count must match and must be < 2(|𝔉|−1).
    pub fn verify(&self, g: &Graph) -> bool {
        if self.partition.vertex_count() != g.vertex_count() {
            return false;
        }
        let crossing = g
            .edge_records()
            .filter(|&(_, (u, v))| self.partition.block_of(u) != self.partition.block_of(v))
            .count();
        crossing == self.crossing_count
            && self.crossing_count < 2 * (self.partition.block_count() - 1)
    }
}

/// Outcome of [`two_spanning_trees`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoTreeOutcome {
    Trees(TreePair),
    Infeasible(PartitionCertificate),
}

/// True iff the given edges form a spanning tree of `g`.
pub fn is_spanning_tree(g: &Graph, edges: &[EdgeId]) -> bool {
    let n = g.vertex_count();
    if n == 0 || edges.len() != n - 1 {
        return false;
    }
    let mut dsu = Dsu::new(n);
    for &e in edges {
        if e >= g.edge_count() {
            return false;
        }
        let (u, v) = g.endpoints(e);
        if !dsu.union(u, v) {
            return false;
        }
    }
    true
}

/// Splits the edges of `g` into two edge-disjoint spanning trees, or returns
/// a partition certificate proving this impossible.
///
/// Augmentation is breadth-first exchange over the two graphic-matroid
/// copies; edges are offered in ascending id order, so the result is
/// deterministic.  Disconnected input yields the components partition as a
/// trivial certificate.
pub fn two_spanning_trees(g: &Graph) -> Result<TwoTreeOutcome> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Precondition("tree packing needs at least 2 vertices".into()));
    }
    if !g.is_connected() {
        let partition = Partition::new(n, g.components())?;
        let cert = PartitionCertificate { partition, crossing_count: 0 };
        debug_assert!(cert.verify(g));
        return Ok(TwoTreeOutcome::Infeasible(cert));
    }

    let mut forests = ForestPair::new(n);
    let mut failed: Vec<EdgeId> = Vec::new();
    for e in 0..g.edge_count() {
        if !forests.augment(g, e, None) {
            failed.push(e);
        }
    }

    if forests.size(0) == n - 1 && forests.size(1) == n - 1 {
        let pair = TreePair { tree_i: forests.edges(0), tree_o: forests.edges(1) };
        debug_assert!(is_spanning_tree(g, &pair.tree_i));
        debug_assert!(is_spanning_tree(g, &pair.tree_o));
        debug_assert!(failed.is_empty() || g.edge_count() > 2 * n - 2);
        return Ok(TwoTreeOutcome::Trees(pair));
    }

    // Build the certificate: re-run the (now unproductive) exchange search
    // from every failed edge and merge the vertex sets touched by visited
    // forest edges.  Each merged block then carries spanning sub-forests of
    // both trees plus at least one failed edge, which forces the crossing
    // count below the packing bound.
    let mut visited_edges = vec![false; g.edge_count()];
    for &e in &failed {
        let reachable = forests.augment(g, e, Some(&mut visited_edges));
        debug_assert!(!reachable, "a previously spanned edge became augmentable");
    }
    let mut dsu = Dsu::new(n);
    for (e, visited) in visited_edges.iter().enumerate() {
        if *visited && forests.assignment(e).is_some() {
            let (u, v) = g.endpoints(e);
            dsu.union(u, v);
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<VertexId>> = std::collections::BTreeMap::new();
    for v in 0..n {
        groups.entry(dsu.find(v)).or_default().push(v);
    }
    let partition = Partition::new(n, groups.into_values().collect())?;
    let crossing_count = g
        .edge_records()
        .filter(|&(_, (u, v))| partition.block_of(u) != partition.block_of(v))
        .count();
    let cert = PartitionCertificate { partition, crossing_count };
    assert!(cert.verify(g), "internal error: tree-packing certificate failed its own bound");
    Ok(TwoTreeOutcome::Infeasible(cert))
}

/// Disjoint-set union with deterministic roots.
struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Dsu {
        Dsu { parent: (0..n).collect() }
    }

    fn find(&mut self, v: usize) -> usize {
        if self.parent[v] != v {
            let r = self.find(self.parent[v]);
            self.parent[v] = r;
        }
        self.parent[v]
    }

    /// Unions the sets of `u` and `v`; false iff already joined.
    fn union(&mut self, u: usize, v: usize) -> bool {
        let (ru, rv) = (self.find(u), self.find(v));
        if ru == rv {
            return false;
        }
        // Keep the smaller vertex id as root for determinism.
        let (lo, hi) = if ru < rv { (ru, rv) } else { (rv, ru) };
        self.parent[hi] = lo;
        true
    }
}

/// Two edge-disjoint forests under matroid-union augmentation.
struct ForestPair {
    n: usize,
    /// adjacency per forest: vertex → (neighbour, edge id)
    adj: [Vec<Vec<(VertexId, EdgeId)>>; 2],
    /// edge id → forest index, if currently placed
    assigned: Vec<Option<u8>>,
}

impl ForestPair {
    fn new(n: usize) -> ForestPair {
        ForestPair {
            n,
            adj: [vec![Vec::new(); n], vec![Vec::new(); n]],
            assigned: Vec::new(),
        }
    }

    fn size(&self, f: usize) -> usize {
        self.assigned.iter().filter(|a| **a == Some(f as u8)).count()
    }

    fn edges(&self, f: usize) -> Vec<EdgeId> {
        self.assigned
            .iter()
            .enumerate()
            .filter(|(_, a)| **a == Some(f as u8))
            .map(|(e, _)| e)
            .collect()
    }

    fn assignment(&self, e: EdgeId) -> Option<u8> {
        self.assigned.get(e).copied().flatten()
    }

    /// Path between `u` and `v` in forest `f` as edge ids, or None if they
    /// are in different components.
    fn forest_path(&self, f: usize, u: VertexId, v: VertexId) -> Option<Vec<EdgeId>> {
        if u == v {
            return Some(Vec::new());
        }
        let mut prev: Vec<Option<(VertexId, EdgeId)>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        seen[u] = true;
        let mut queue = std::collections::VecDeque::from([u]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &self.adj[f][x] {
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, e));
                    if y == v {
                        let mut path = Vec::new();
                        let mut cur = v;
                        while let Some((p, pe)) = prev[cur] {
                            path.push(pe);
                            cur = p;
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(y);
                }
            }
        }
        None
    }

    fn insert(&mut self, g: &Graph, f: usize, e: EdgeId) {
        let (u, v) = g.endpoints(e);
        self.adj[f][u].push((v, e));
        self.adj[f][v].push((u, e));
        if self.assigned.len() <= e {
            self.assigned.resize(e + 1, None);
        }
        self.assigned[e] = Some(f as u8);
    }

    fn remove(&mut self, g: &Graph, f: usize, e: EdgeId) {
        let (u, v) = g.endpoints(e);
        self.adj[f][u].retain(|&(_, x)| x != e);
        self.adj[f][v].retain(|&(_, x)| x != e);
        self.assigned[e] = None;
    }

    /// Tries to add edge `e0` to the union by breadth-first exchange.
    ///
    /// With `probe` set, runs the same search without mutating anything and
    /// marks every visited edge in the probe mask, returning whether an
    /// augmentation would have been possible.
    fn augment(&mut self, g: &Graph, e0: EdgeId, mut probe: Option<&mut Vec<bool>>) -> bool {
        if self.assigned.len() <= e0 {
            self.assigned.resize(e0 + 1, None);
        }
        let mut visited = vec![false; g.edge_count()];
        let mut parent: Vec<Option<(EdgeId, u8)>> = vec![None; g.edge_count()];
        let mut queue = std::collections::VecDeque::from([e0]);
        visited[e0] = true;
        if let Some(mask) = probe.as_deref_mut() {
            mask[e0] = true;
        }
        while let Some(x) = queue.pop_front() {
            let (xu, xv) = g.endpoints(x);
            for f in 0..2 {
                if self.assignment(x) == Some(f as u8) {
                    continue;
                }
                match self.forest_path(f, xu, xv) {
                    None => {
                        if probe.is_some() {
                            return true;
                        }
                        // Apply the exchange chain ending with x entering f.
                        let mut cur = x;
                        let mut dest = f;
                        loop {
                            let from = self.assignment(cur);
                            if let Some(old) = from {
                                self.remove(g, old as usize, cur);
                            }
                            self.insert(g, dest, cur);
                            match parent[cur] {
                                None => break,
                                Some((p, pf)) => {
                                    debug_assert_eq!(from, Some(pf));
                                    dest = pf as usize;
                                    cur = p;
                                }
                            }
                        }
                        return true;
                    }
                    Some(cycle) => {
                        for y in cycle {
                            if !visited[y] {
                                visited[y] = true;
                                parent[y] = Some((x, f as u8));
                                if let Some(mask) = probe.as_deref_mut() {
                                    mask[y] = true;
                                }
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        false
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Generic-circuit location
// ────────────────────────────────────────────────────────────────────────────

/// The generic-circuit decomposition of a 2T-graph: vertex sets inducing the
/// (pairwise edge-disjoint) generic circuits, plus the vertices covered by
/// none of them.
///
/// For quartic input (degrees 3/4, simple) the circuit blocks are pairwise
/// vertex-disjoint and together with the singletons partition V, and the
/// decomposition is unique.  For general 2T input circuits may share up to
/// one vertex, so `singletons` lists exactly the vertices lying in no
/// circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitDecomposition {
    /// Vertex sets inducing generic circuits, each ascending, ordered by
    /// smallest member.
    pub circuits: Vec<Vec<VertexId>>,
    /// Vertices in no circuit, ascending.
    pub singletons: Vec<VertexId>,
}

/// Shrinks `region` (which must span ≥ 2|X|−2 edges counting `anchor`'s
/// edge) to an inclusion-minimal vertex set with that property, keeping the
/// anchor endpoints.  Lowest-id vertices are discarded first.
fn shrink_to_minimal_tight(g: &Graph, region: &[VertexId], anchor: (VertexId, VertexId)) -> Vec<VertexId> {
    let mut mask = vec![false; g.vertex_count()];
    let mut size = 0usize;
    for &v in region {
        mask[v] = true;
        size += 1;
    }
    debug_assert!(mask[anchor.0] && mask[anchor.1]);
    loop {
        let mut shrunk = false;
        for w in 0..g.vertex_count() {
            if !mask[w] || w == anchor.0 || w == anchor.1 {
                continue;
            }
            mask[w] = false;
            if size > 1 && g.count_induced_edges_mask(&mask) >= 2 * (size - 1) - 2 {
                size -= 1;
                shrunk = true;
                break;
            }
            mask[w] = true;
        }
        if !shrunk {
            break;
        }
    }
    (0..g.vertex_count()).filter(|&v| mask[v]).collect()
}

/// All pebble-game rejections for ℓ=3, shrunk to inclusion-minimal tight
/// sets and filtered to those that verifiably induce generic circuits.
fn circuit_candidates(g: &Graph) -> Vec<Vec<VertexId>> {
    let (_, rejections) = run_pebble_game(g, 3);
    let mut out: Vec<Vec<VertexId>> = Vec::new();
    for (e, region) in rejections {
        let anchor = g.endpoints(e);
        let block = shrink_to_minimal_tight(g, &region, anchor);
        if out.contains(&block) {
            continue;
        }
        let sub = induced_subgraph(g, &block).expect("region vertices are in range");
        if is_generic_circuit(&sub.graph) {
            out.push(block);
        }
    }
    out.sort();
    out
}

/// Finds the vertex sets inducing the generic circuits of a 2T-graph.
///
/// Errors if the input is not 2T.  One pebble-game rejection occurs per
/// circuit (circuits of a 2T-graph are pairwise edge-disjoint, so each
/// contributes exactly one unit of rank deficiency); every reported block is
/// re-verified with [`is_generic_circuit`].
pub fn generic_circuits(g: &Graph) -> Result<CircuitDecomposition> {
    if !is_2t(g)? {
        return Err(Error::Precondition("circuit decomposition requires a 2T-graph".into()));
    }
    let circuits = circuit_candidates(g);
    let mut covered = vec![false; g.vertex_count()];
    for block in &circuits {
        for &v in block {
            covered[v] = true;
        }
    }
    let singletons = (0..g.vertex_count()).filter(|&v| !covered[v]).collect();
    Ok(CircuitDecomposition { circuits, singletons })
}

/// A vertex set of `g` inducing a generic circuit, if any exists.
///
/// Detected through (2,3)-pebble-game rejections: the reachable region of a
/// rejected edge is shrunk to an inclusion-minimal set spanning ≥ 2|X|−2
/// edges, which (verified before returning) induces a generic circuit.
pub fn find_any_circuit(g: &Graph) -> Option<Vec<VertexId>> {
    circuit_candidates(g).into_iter().next()
}

// ────────────────────────────────────────────────────────────────────────────
// Tests
// ────────────────────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn complete(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> =
            (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
        build_graph(n, &edges).unwrap()
    }

    /// Hub vertex n, rim 0..n: the wheel W_n.
    fn wheel(rim: usize) -> Graph {
        let hub = rim;
        let mut edges: Vec<(usize, usize)> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
        edges.extend((0..rim).map(|i| (i, hub)));
        build_graph(rim + 1, &edges).unwrap()
    }

    fn k34() -> Graph {
        let edges: Vec<(usize, usize)> =
            (0..3).flat_map(|u| (3..7).map(move |v| (u, v))).collect();
        build_graph(7, &edges).unwrap()
    }

    fn sum_of_two_k4s() -> Graph {
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)]);
        edges.extend([(0, 4), (1, 5)]);
        build_graph(8, &edges).unwrap()
    }

    /// Exhaustive sparsity oracle: every non-empty X has |E(G[X])| ≤ 2|X|−ℓ
    /// (checking only |X| ≥ 2 for ℓ=3).
    fn sparse_by_enumeration(g: &Graph, ell: usize) -> bool {
        let n = g.vertex_count();
        assert!(n <= 20);
        for bits in 1u32..(1 << n) {
            let mask: Vec<bool> = (0..n).map(|v| bits >> v & 1 == 1).collect();
            let size = mask.iter().filter(|&&b| b).count();
            if ell == 3 && size < 2 {
                continue;
            }
            if g.count_induced_edges_mask(&mask) > 2 * size - ell {
                return false;
            }
        }
        true
    }

    #[test]
    fn forest_cover_examples() {
        assert!(is_forest_cover(&complete(4)));
        assert!(!is_forest_cover(&complete(5)));
        assert!(is_forest_cover(&build_graph(2, &[(0, 1), (0, 1)]).unwrap()));
    }

    #[test]
    fn two_t_examples() {
        assert!(is_2t(&complete(4)).unwrap());
        let c4 = build_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(!is_2t(&c4).unwrap());
        // Two K4s sharing vertex 0: 7 vertices, 12 edges.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(0, 4), (0, 5), (0, 6), (4, 5), (4, 6), (5, 6)]);
        let glued = build_graph(7, &edges).unwrap();
        assert!(is_2t(&glued).unwrap());
        assert!(is_2t(&build_graph(1, &[]).unwrap()).is_err());
    }

    #[test]
    fn pebble_agrees_with_enumeration_on_small_graphs() {
        let mut corpus = vec![
            complete(4),
            complete(5),
            wheel(4),
            wheel(5),
            k34(),
            sum_of_two_k4s(),
            build_graph(2, &[(0, 1), (0, 1)]).unwrap(),
            build_graph(3, &[(0, 1), (0, 1), (1, 2), (1, 2)]).unwrap(),
            build_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap(),
        ];
        corpus.push(build_graph(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3)]).unwrap());
        for g in &corpus {
            assert_eq!(is_forest_cover(g), sparse_by_enumeration(g, 2), "{g}");
            let (_, rejections) = run_pebble_game(g, 3);
            assert_eq!(rejections.is_empty(), sparse_by_enumeration(g, 3), "{g}");
        }
    }

    #[test]
    fn rejected_region_is_numerically_tight() {
        for g in [complete(5), complete(6), sum_of_two_k4s(), wheel(6)] {
            let (_, rejections) = run_pebble_game(&g, 3);
            for (e, region) in rejections {
                let mask = g.vertex_mask(&region).unwrap();
                let (u, v) = g.endpoints(e);
                assert!(mask[u] && mask[v]);
                assert!(g.count_induced_edges_mask(&mask) >= 2 * region.len() - 2);
            }
        }
    }

    #[test]
    fn generic_circuit_examples() {
        assert!(is_generic_circuit(&wheel(4)));
        assert!(is_generic_circuit(&k34()));
        assert!(!is_generic_circuit(&sum_of_two_k4s()));
        assert!(is_generic_circuit(&build_graph(2, &[(0, 1), (0, 1)]).unwrap()));
        assert!(is_generic_circuit(&complete(4)));
        assert!(!is_generic_circuit(&complete(5)));
    }

    #[test]
    fn tree_pair_for_k4_uses_all_edges() {
        match two_spanning_trees(&complete(4)).unwrap() {
            TwoTreeOutcome::Trees(pair) => {
                let g = complete(4);
                assert!(is_spanning_tree(&g, &pair.tree_i));
                assert!(is_spanning_tree(&g, &pair.tree_o));
                let mut all: Vec<EdgeId> = pair.tree_i.iter().chain(&pair.tree_o).copied().collect();
                all.sort_unstable();
                assert_eq!(all, (0..6).collect::<Vec<_>>());
            }
            other => panic!("expected trees, got {other:?}"),
        }
    }

    #[test]
    fn path_yields_singleton_partition_certificate() {
        let p3 = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        match two_spanning_trees(&p3).unwrap() {
            TwoTreeOutcome::Infeasible(cert) => {
                assert!(cert.verify(&p3));
                assert_eq!(cert.partition.block_count(), 3);
                assert_eq!(cert.crossing_count, 2);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn tree_pair_for_k34_uses_all_edges() {
        let g = k34();
        match two_spanning_trees(&g).unwrap() {
            TwoTreeOutcome::Trees(pair) => {
                assert!(is_spanning_tree(&g, &pair.tree_i));
                assert!(is_spanning_tree(&g, &pair.tree_o));
                let mut all: Vec<EdgeId> = pair.tree_i.iter().chain(&pair.tree_o).copied().collect();
                all.sort_unstable();
                assert_eq!(all, (0..12).collect::<Vec<_>>());
            }
            other => panic!("expected trees, got {other:?}"),
        }
    }

    #[test]
    fn dense_graph_with_extra_edges_still_packs_two_trees() {
        // K5 has 10 > 2·5−2 edges; packing succeeds and leaves 2 edges out.
        match two_spanning_trees(&complete(5)).unwrap() {
            TwoTreeOutcome::Trees(pair) => {
                let g = complete(5);
                assert!(is_spanning_tree(&g, &pair.tree_i));
                assert!(is_spanning_tree(&g, &pair.tree_o));
            }
            other => panic!("expected trees, got {other:?}"),
        }
    }

    #[test]
    fn disconnected_input_yields_component_certificate() {
        let g = build_graph(4, &[(0, 1), (0, 1), (2, 3), (2, 3)]).unwrap();
        match two_spanning_trees(&g).unwrap() {
            TwoTreeOutcome::Infeasible(cert) => {
                assert!(cert.verify(&g));
                assert_eq!(cert.crossing_count, 0);
                assert_eq!(cert.partition.block_count(), 2);
            }
            other => panic!("expected certificate, got {other:?}"),
        }
    }

    #[test]
    fn circuits_of_a_sum_are_its_summands() {
        let dec = generic_circuits(&sum_of_two_k4s()).unwrap();
        assert_eq!(dec.circuits, vec![vec![0, 1, 2, 3], vec![4, 5, 6, 7]]);
        assert!(dec.singletons.is_empty());
    }

    #[test]
    fn circuit_of_k34_is_everything() {
        let dec = generic_circuits(&k34()).unwrap();
        assert_eq!(dec.circuits, vec![(0..7).collect::<Vec<_>>()]);
        assert!(dec.singletons.is_empty());
    }

    #[test]
    fn decomposition_rejects_non_2t_input() {
        assert!(generic_circuits(&complete(5)).is_err());
    }

    #[test]
    fn find_circuit_in_dense_and_sparse_hosts() {
        let found = find_any_circuit(&complete(8)).expect("K8 contains a circuit");
        let sub = induced_subgraph(&complete(8), &found).unwrap();
        assert!(is_generic_circuit(&sub.graph));

        let forest = build_graph(5, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(find_any_circuit(&forest), None);

        assert_eq!(find_any_circuit(&wheel(4)), Some(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn shared_vertex_circuits_are_both_found() {
        // Two K4s glued at vertex 0: a 2T-graph whose circuits overlap in
        // exactly one vertex.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(0, 4), (0, 5), (0, 6), (4, 5), (4, 6), (5, 6)]);
        let g = build_graph(7, &edges).unwrap();
        let dec = generic_circuits(&g).unwrap();
        assert_eq!(dec.circuits, vec![vec![0, 1, 2, 3], vec![0, 4, 5, 6]]);
        assert!(dec.singletons.is_empty());
        // Edge-disjoint with ≤ 1 shared vertex.
        let masks: Vec<Vec<bool>> =
            dec.circuits.iter().map(|c| g.vertex_mask(c).unwrap()).collect();
        let shared: Vec<usize> =
            (0..7).filter(|&v| masks[0][v] && masks[1][v]).collect();
        assert_eq!(shared, vec![0]);
        let e0: Vec<EdgeId> = g.induced_edge_ids_mask(&masks[0]);
        let e1: Vec<EdgeId> = g.induced_edge_ids_mask(&masks[1]);
        assert!(e0.iter().all(|e| !e1.contains(e)));
    }

    #[test]
    fn pebble_state_bookkeeping() {
        // K4 under ℓ=3: the first five edges fit (5 = 2·4−3), the sixth is
        // rejected with the whole vertex set as tight region.
        let g = complete(4);
        let mut st = PebbleState::new(4, 3).unwrap();
        for e in 0..5 {
            assert_eq!(st.try_insert(&g, e), InsertOutcome::Accepted);
        }
        assert_eq!(
            st.try_insert(&g, 5),
            InsertOutcome::Rejected { region: vec![0, 1, 2, 3] }
        );
        assert_eq!(st.accepted(), (0..5).collect::<Vec<_>>());
        let total: u32 = (0..4).map(|v| st.pebbles_at(v)).sum();
        assert_eq!(total as usize + 5, 2 * 4);
        assert_eq!(st.k(), 2);
        assert_eq!(st.ell(), 3);

        // Under ℓ=2 all six edges fit: K4 is exactly two spanning trees.
        let mut st2 = PebbleState::new(4, 2).unwrap();
        for e in 0..6 {
            assert_eq!(st2.try_insert(&g, e), InsertOutcome::Accepted);
        }
        assert!(PebbleState::new(4, 4).is_err());
    }
}
