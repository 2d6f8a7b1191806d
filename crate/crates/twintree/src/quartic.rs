//! Quartic graphs: recognition, boundary profiles of sub-blocks, normality
//! testing with certificates, and the coarsification tree.
//!
//! A *quartic* is a simple graph with two edge-disjoint spanning trees whose
//! degrees all lie in {3,4}; counting forces exactly four vertices of degree
//! 3, called *transits*.  A proper vertex subset inducing a quartic is a
//! *subquartic*; its boundary (edge neighborhood) always has 2–4 edges, and
//! it contains exactly `4 − boundary` transits of the host.  A quartic is
//! *normal* when every proper subquartic's boundary is a matching of size 3
//! or 4; violations are reported as re-checkable certificates.
//!
//! Normality is decided by *coarsification*: start from the partition into
//! edge-disjoint generic circuits plus leftover singletons, then repeatedly
//! merge blocks joined by a parallel pair of quotient edges (a sum merge) or
//! blocks forming a generic circuit of the quotient (a circuit merge),
//! checking every freshly created block's boundary.  The merge history forms
//! a tree that later drives triple construction.

use crate::graph::{
    edge_neighborhood, induced_subgraph, is_matching, min_edge_cut, quotient, EdgeId, Graph,
    Partition, VertexId,
};
use crate::sparsity::{generic_circuits, is_2t, is_generic_circuit};
use crate::{Error, Result};
use serde::Serialize;

// ────────────────────────────────────────────────────────────────────────────
// Recognition
// ────────────────────────────────────────────────────────────────────────────

/// A validated quartic together with its four degree-3 vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticInfo {
    pub graph: Graph,
    /// The degree-3 vertices, ascending; always exactly four.
    pub transits: Vec<VertexId>,
}

/// Validates that `g` is a quartic and extracts its transits.
pub fn as_quartic(g: &Graph) -> Result<QuarticInfo> {
    if !g.is_simple() {
        return Err(Error::InvalidInput("not a quartic: graph is not simple".into()));
    }
    let two_t = is_2t(g).map_err(|_| {
        Error::InvalidInput("not a quartic: graph too small for two spanning trees".into())
    })?;
    if !two_t {
        return Err(Error::InvalidInput(
            "not a quartic: no two edge-disjoint spanning trees".into(),
        ));
    }
    let mut transits = Vec::new();
    for v in 0..g.vertex_count() {
        match g.degree(v) {
            3 => transits.push(v),
            4 => {}
            d => {
                return Err(Error::InvalidInput(format!(
                    "not a quartic: vertex {v} has degree {d}"
                )))
            }
        }
    }
    // Degree counting: Σdeg = 2(2n−2) with degrees in {3,4} forces exactly
    // four vertices of degree 3.
    debug_assert_eq!(transits.len(), 4);
    Ok(QuarticInfo { graph: g.clone(), transits })
}

// ────────────────────────────────────────────────────────────────────────────
// Subquartic boundary profiles
// ────────────────────────────────────────────────────────────────────────────

/// Boundary profile of a proper subquartic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SubquarticProfile {
    /// Boundary size |edge neighborhood|, always in {2,3,4}.
    pub d: usize,
    /// Number of host transits inside the subset: exactly `4 − d`.
    #[serde(rename = "transit-count")]
    pub transit_count: usize,
    /// Whether the boundary edges are pairwise disjoint.
    #[serde(rename = "is-matching")]
    pub is_matching: bool,
}

/// Profiles a vertex set that induces a proper subquartic of `q`.
pub fn subquartic_profile(q: &QuarticInfo, x: &[VertexId]) -> Result<SubquarticProfile> {
    let g = &q.graph;
    if x.len() >= g.vertex_count() {
        return Err(Error::Precondition("not a proper subquartic: subset is not proper".into()));
    }
    let sub = induced_subgraph(g, x)?;
    as_quartic(&sub.graph)
        .map_err(|e| Error::Precondition(format!("not a proper subquartic: {e}")))?;
    let boundary = edge_neighborhood(g, x)?;
    let d = boundary.len();
    if !(2..=4).contains(&d) {
        return Err(Error::Precondition(format!(
            "not a proper subquartic: boundary size {d} outside 2..=4"
        )));
    }
    let inside_transits =
        q.transits.iter().filter(|&&v| x.contains(&v)).count();
    debug_assert_eq!(inside_transits, 4 - d, "host transits inside a subquartic must be 4 − d");
    Ok(SubquarticProfile { d, transit_count: 4 - d, is_matching: is_matching(g, &boundary) })
}

// ────────────────────────────────────────────────────────────────────────────
// Certificates
// ────────────────────────────────────────────────────────────────────────────

/// Re-checkable witness that a quartic is not normal (or, for the small-cut
/// kind, not 3-edge-connected).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BadCertificate {
    /// A vertex set with at most two edges leaving it.
    SmallCut {
        q: Vec<VertexId>,
        /// All edges leaving `q`; at most 2.
        cut: Vec<EdgeId>,
    },
    /// A block whose boundary is not a matching: `a, b ∈ q` share the
    /// outside neighbor `c`.
    NonMatching {
        q: Vec<VertexId>,
        /// (a, b, c) with boundary edges a–c and b–c.
        triple: (VertexId, VertexId, VertexId),
        /// The full boundary of `q`.
        neighborhood: Vec<EdgeId>,
    },
}

impl BadCertificate {
    /// Independently re-checks the certificate against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        match self {
            BadCertificate::SmallCut { q, cut } => {
                if q.is_empty() || q.len() >= g.vertex_count() || cut.len() > 2 {
                    return false;
                }
                edge_neighborhood(g, q).map(|nb| nb == *cut).unwrap_or(false)
            }
            BadCertificate::NonMatching { q, triple: (a, b, c), neighborhood } => {
                if q.is_empty() || q.len() >= g.vertex_count() {
                    return false;
                }
                let Ok(mask) = g.vertex_mask(q) else { return false };
                if !mask[*a] || !mask[*b] || mask[*c] || a == b {
                    return false;
                }
                let Ok(nb) = edge_neighborhood(g, q) else { return false };
                if nb != *neighborhood {
                    return false;
                }
                // Two distinct boundary edges realize a–c and b–c.
                let realizes = |x: VertexId| {
                    nb.iter().any(|&e| {
                        let (p, r) = g.endpoints(e);
                        (p, r) == (x, *c) || (p, r) == (*c, x)
                    })
                };
                if !realizes(*a) || !realizes(*b) {
                    return false;
                }
                // The offending block really is a 2T subgraph with quartic
                // degrees (it arose as a circuit or merged quartic).
                let Ok(sub) = induced_subgraph(g, q) else { return false };
                (0..sub.graph.vertex_count()).all(|v| matches!(sub.graph.degree(v), 3 | 4))
                    && is_2t(&sub.graph).unwrap_or(false)
            }
        }
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Coarsification tree
// ────────────────────────────────────────────────────────────────────────────

/// One node of the merge history.  Children indices refer to
/// [`CoarsificationTree::nodes`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TreeNode {
    /// A vertex not covered by any base circuit.
    Singleton { vertex: VertexId },
    /// A base block: a generic circuit of the initial decomposition.
    CircuitLeaf { block: Vec<VertexId> },
    /// A merge of two blocks joined by a parallel pair of quotient edges.
    Sum { children: [usize; 2], bridge: [EdgeId; 2], block: Vec<VertexId> },
    /// A merge of ≥3 blocks forming a generic circuit of the quotient,
    /// with the host ids of that circuit's edges.
    CircuitMerge { children: Vec<usize>, circuit_edges: Vec<EdgeId>, block: Vec<VertexId> },
}

impl TreeNode {
    /// The vertex set this node covers, ascending.
    pub fn block_vertices(&self) -> Vec<VertexId> {
        match self {
            TreeNode::Singleton { vertex } => vec![*vertex],
            TreeNode::CircuitLeaf { block }
            | TreeNode::Sum { block, .. }
            | TreeNode::CircuitMerge { block, .. } => block.clone(),
        }
    }

    fn is_leaf(&self) -> bool {
        matches!(self, TreeNode::Singleton { .. } | TreeNode::CircuitLeaf { .. })
    }
}

/// The full merge history of a coarsification run; `nodes[root]` covers all
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoarsificationTree {
    pub nodes: Vec<TreeNode>,
    pub root: usize,
}

impl CoarsificationTree {
    pub fn root_node(&self) -> &TreeNode {
        &self.nodes[self.root]
    }

    /// The base partition: leaf blocks in canonical order.
    pub fn leaf_partition(&self, n: usize) -> Result<Partition> {
        let blocks: Vec<Vec<VertexId>> = self
            .nodes
            .iter()
            .filter(|nd| nd.is_leaf())
            .map(|nd| nd.block_vertices())
            .collect();
        Partition::new(n, blocks)
    }

    /// Structural well-formedness against the host graph: leaves partition
    /// V, children partition their parent's block, sum bridges are crossing
    /// 2-matchings, circuit merges really store generic circuits of their
    /// local quotient, and every non-singleton block induces a quartic.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = g.vertex_count();
        if self.leaf_partition(n).is_err() {
            return false;
        }
        if self.nodes[self.root].block_vertices() != (0..n).collect::<Vec<_>>() {
            return false;
        }
        for node in &self.nodes {
            let block = node.block_vertices();
            if !node.is_leaf() {
                // Children partition the block.
                let children: Vec<usize> = match node {
                    TreeNode::Sum { children, .. } => children.to_vec(),
                    TreeNode::CircuitMerge { children, .. } => children.clone(),
                    _ => unreachable!(),
                };
                let mut united: Vec<VertexId> =
                    children.iter().flat_map(|&c| self.nodes[c].block_vertices()).collect();
                united.sort_unstable();
                if united != block {
                    return false;
                }
            }
            match node {
                TreeNode::Singleton { vertex } => {
                    if *vertex >= n {
                        return false;
                    }
                }
                TreeNode::CircuitLeaf { block } => {
                    let Ok(sub) = induced_subgraph(g, block) else { return false };
                    if !is_generic_circuit(&sub.graph) {
                        return false;
                    }
                }
                TreeNode::Sum { children, bridge, block } => {
                    // Both children non-singleton; bridge edges cross
                    // between them with 4 distinct endpoints.
                    let b0 = self.nodes[children[0]].block_vertices();
                    let b1 = self.nodes[children[1]].block_vertices();
                    if b0.len() < 2 || b1.len() < 2 {
                        return false;
                    }
                    let mut seen = Vec::new();
                    for &e in bridge {
                        if e >= g.edge_count() {
                            return false;
                        }
                        let (u, v) = g.endpoints(e);
                        let crosses = (b0.contains(&u) && b1.contains(&v))
                            || (b0.contains(&v) && b1.contains(&u));
                        if !crosses {
                            return false;
                        }
                        seen.extend([u, v]);
                    }
                    seen.sort_unstable();
                    seen.dedup();
                    if seen.len() != 4 {
                        return false;
                    }
                    if !self.block_is_quartic(g, block) {
                        return false;
                    }
                }
                TreeNode::CircuitMerge { children, circuit_edges, block } => {
                    if children.len() < 3 {
                        return false;
                    }
                    // Local quotient on the children must be the stored
                    // generic circuit.
                    let owner = |v: VertexId| {
                        children
                            .iter()
                            .position(|&c| self.nodes[c].block_vertices().contains(&v))
                    };
                    let mut local_edges = Vec::new();
                    for &e in circuit_edges {
                        if e >= g.edge_count() {
                            return false;
                        }
                        let (u, v) = g.endpoints(e);
                        let (Some(cu), Some(cv)) = (owner(u), owner(v)) else { return false };
                        if cu == cv {
                            return false;
                        }
                        local_edges.push((cu, cv));
                    }
                    let Ok(local) = crate::graph::build_graph(children.len(), &local_edges)
                    else {
                        return false;
                    };
                    if !is_generic_circuit(&local) {
                        return false;
                    }
                    if !self.block_is_quartic(g, block) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn block_is_quartic(&self, g: &Graph, block: &[VertexId]) -> bool {
        induced_subgraph(g, block)
            .ok()
            .map(|sub| as_quartic(&sub.graph).is_ok())
            .unwrap_or(false)
    }
}

/// Result of [`coarsify`] / [`check_normal`]: the merge tree on success, a
/// certificate on failure.  The certificate is the negative *answer*, not an
/// error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum CoarsifyOutcome {
    Tree(CoarsificationTree),
    Bad(BadCertificate),
}

// ────────────────────────────────────────────────────────────────────────────
// Coarsification
// ────────────────────────────────────────────────────────────────────────────

/// Checks a proper block's boundary: must be a matching of size 3 or 4
/// (plus size 2 when `allow_sums`).
fn check_block(g: &Graph, block: &[VertexId], allow_sums: bool) -> Option<BadCertificate> {
    let nb = edge_neighborhood(g, block).expect("proper nonempty block");
    let min_size = if allow_sums { 2 } else { 3 };
    if nb.len() < min_size {
        return Some(BadCertificate::SmallCut { q: block.to_vec(), cut: nb });
    }
    // Boundary size of a quartic block never exceeds 4 (degree counting);
    // sizes 3 and 4 are fine, so only the matching condition remains.
    assert!(nb.len() <= 4, "quartic block with boundary {} > 4", nb.len());
    if !is_matching(g, &nb) {
        // Two boundary edges share a vertex; for quartic blocks the shared
        // vertex is always outside (an inside vertex would exceed degree 4).
        for (i, &e0) in nb.iter().enumerate() {
            for &e1 in nb.iter().skip(i + 1) {
                let (u0, v0) = g.endpoints(e0);
                let (u1, v1) = g.endpoints(e1);
                for c in [u0, v0] {
                    if c == u1 || c == v1 {
                        let inside = |e: EdgeId| {
                            let (x, y) = g.endpoints(e);
                            if x == c {
                                y
                            } else {
                                x
                            }
                        };
                        let (a, b) = (inside(e0), inside(e1));
                        debug_assert!(block.contains(&a) && block.contains(&b));
                        return Some(BadCertificate::NonMatching {
                            q: block.to_vec(),
                            triple: (a, b, c),
                            neighborhood: nb,
                        });
                    }
                }
            }
        }
        unreachable!("non-matching boundary without a shared vertex");
    }
    None
}

/// Runs the coarsification process on a validated quartic.
///
/// With `allow_sums` every proper block's boundary must be a matching of
/// size 2–4; without, size 2 already yields a small-cut certificate.  Merges
/// are deterministic: all parallel-pair merges (scanning block pairs by
/// ascending minimum vertex) before any circuit merge of the then-simple
/// quotient.
pub fn coarsify(q: &QuarticInfo, allow_sums: bool) -> CoarsifyOutcome {
    let g = &q.graph;
    let n = g.vertex_count();
    let decomposition = generic_circuits(g).expect("validated quartic has two spanning trees");
    let mut nodes: Vec<TreeNode> = Vec::new();
    // Active blocks, kept sorted by minimum vertex.
    let mut active: Vec<usize> = Vec::new();
    for circuit in decomposition.circuits {
        nodes.push(TreeNode::CircuitLeaf { block: circuit });
        active.push(nodes.len() - 1);
    }
    for v in decomposition.singletons {
        nodes.push(TreeNode::Singleton { vertex: v });
        active.push(nodes.len() - 1);
    }
    active.sort_by_key(|&i| nodes[i].block_vertices()[0]);

    // Initial boundary checks on proper non-singleton blocks.
    for &i in &active {
        if let TreeNode::CircuitLeaf { block } = &nodes[i] {
            if block.len() < n {
                if let Some(bad) = check_block(g, block, allow_sums) {
                    debug_assert!(bad.verify(g));
                    return CoarsifyOutcome::Bad(bad);
                }
            }
        }
    }

    while active.len() > 1 {
        let blocks: Vec<Vec<VertexId>> =
            active.iter().map(|&i| nodes[i].block_vertices()).collect();
        let mut owner = vec![usize::MAX; n];
        for (slot, block) in blocks.iter().enumerate() {
            for &v in block {
                owner[v] = slot;
            }
        }
        // Count connecting edges per active pair.
        let k = active.len();
        let mut between = vec![Vec::new(); k * k];
        for (e, (u, v)) in g.edge_records() {
            let (a, b) = (owner[u], owner[v]);
            if a != b {
                between[a.min(b) * k + a.max(b)].push(e);
            }
        }
        let parallel_pair = (0..k)
            .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
            .find(|&(i, j)| between[i * k + j].len() >= 2);

        if let Some((i, j)) = parallel_pair {
            let connecting = &between[i * k + j];
            assert_eq!(connecting.len(), 2, "more than 2 edges between two 2T blocks");
            let (e0, e1) = (connecting[0], connecting[1]);
            // A parallel pair at a singleton means the other block's
            // boundary shares that vertex: certificate, not a merge.
            let singleton_side = [i, j]
                .into_iter()
                .find(|&s| matches!(nodes[active[s]], TreeNode::Singleton { .. }));
            if let Some(s) = singleton_side {
                let o = if s == i { j } else { i };
                let c = blocks[s][0];
                let inside = |e: EdgeId| {
                    let (x, y) = g.endpoints(e);
                    if x == c {
                        y
                    } else {
                        x
                    }
                };
                let bad = BadCertificate::NonMatching {
                    q: blocks[o].clone(),
                    triple: (inside(e0), inside(e1), c),
                    neighborhood: edge_neighborhood(g, &blocks[o]).expect("proper block"),
                };
                debug_assert!(bad.verify(g));
                return CoarsifyOutcome::Bad(bad);
            }
            // Both non-singleton: the pair must be a 2-matching, otherwise
            // the side opposite the shared vertex has a bad boundary.
            let (u0, v0) = g.endpoints(e0);
            let (u1, v1) = g.endpoints(e1);
            let shared = [u0, v0].into_iter().find(|&x| x == u1 || x == v1);
            if let Some(c) = shared {
                let opposite = if blocks[i].contains(&c) { j } else { i };
                let inside = |e: EdgeId| {
                    let (x, y) = g.endpoints(e);
                    if x == c {
                        y
                    } else {
                        x
                    }
                };
                let bad = BadCertificate::NonMatching {
                    q: blocks[opposite].clone(),
                    triple: (inside(e0), inside(e1), c),
                    neighborhood: edge_neighborhood(g, &blocks[opposite]).expect("proper block"),
                };
                debug_assert!(bad.verify(g));
                return CoarsifyOutcome::Bad(bad);
            }
            // Sum merge.
            let mut block: Vec<VertexId> =
                blocks[i].iter().chain(blocks[j].iter()).copied().collect();
            block.sort_unstable();
            nodes.push(TreeNode::Sum {
                children: [active[i], active[j]],
                bridge: [e0, e1],
                block: block.clone(),
            });
            let new_node = nodes.len() - 1;
            active.remove(j);
            active.remove(i);
            active.push(new_node);
            active.sort_by_key(|&x| nodes[x].block_vertices()[0]);
            if block.len() < n {
                if let Some(bad) = check_block(g, &block, allow_sums) {
                    debug_assert!(bad.verify(g));
                    return CoarsifyOutcome::Bad(bad);
                }
            }
            continue;
        }

        // Quotient is simple: merge a generic circuit of it.
        let partition = Partition::new(n, blocks.clone()).expect("active blocks partition V");
        let quot = quotient(g, &partition).expect("valid partition");
        debug_assert!(quot.as_graph().is_simple());
        debug_assert_eq!(is_2t(quot.as_graph()), Ok(true));
        let circuits = generic_circuits(quot.as_graph())
            .expect("quotient of a quartic by 2T blocks is 2T");
        let circuit = circuits
            .circuits
            .first()
            .expect("a simple 2T quotient with ≥2 blocks contains a generic circuit")
            .clone();
        // Partition blocks are sorted by minimum vertex, so quotient vertex
        // ids coincide with active slots.
        let children: Vec<usize> = circuit.iter().map(|&qv| active[qv]).collect();
        let mut circuit_edges: Vec<EdgeId> = Vec::new();
        for (qe, (qu, qv)) in quot.as_graph().edge_records() {
            if circuit.contains(&qu) && circuit.contains(&qv) {
                circuit_edges.push(quot.base_edge(qe));
            }
        }
        circuit_edges.sort_unstable();
        let mut block: Vec<VertexId> =
            circuit.iter().flat_map(|&qv| blocks[qv].iter().copied()).collect();
        block.sort_unstable();
        nodes.push(TreeNode::CircuitMerge {
            children,
            circuit_edges,
            block: block.clone(),
        });
        let new_node = nodes.len() - 1;
        let mut doomed: Vec<usize> = circuit.clone();
        doomed.sort_unstable_by(|a, b| b.cmp(a));
        for slot in doomed {
            active.remove(slot);
        }
        active.push(new_node);
        active.sort_by_key(|&x| nodes[x].block_vertices()[0]);
        if block.len() < n {
            if let Some(bad) = check_block(g, &block, allow_sums) {
                debug_assert!(bad.verify(g));
                return CoarsifyOutcome::Bad(bad);
            }
        }
    }

    let tree = CoarsificationTree { root: active[0], nodes };
    debug_assert!(tree.verify(g));
    CoarsifyOutcome::Tree(tree)
}

/// Decides normality: first the 3-edge-connectivity gate (a ≤2-edge cut is
/// an immediate certificate), then coarsification without sums.
pub fn check_normal(q: &QuarticInfo) -> CoarsifyOutcome {
    if let Some((side, cut)) = min_edge_cut(&q.graph) {
        if cut.len() < 3 {
            let bad = BadCertificate::SmallCut { q: side, cut };
            debug_assert!(bad.verify(&q.graph));
            return CoarsifyOutcome::Bad(bad);
        }
    }
    coarsify(q, false)
}

// ────────────────────────────────────────────────────────────────────────────
// Tests
// ────────────────────────────────────────────────────────────────────────────
