//! Building, validating, and composing (s,t)-triples.
//!
//! An *(s,t)-triple* of a graph is a total vertex order starting at `s` and
//! ending at `t` together with two edge-disjoint spanning trees `I` and `O`
//! such that every vertex except `t` has an `I`-neighbour later in the order
//! and every vertex except `s` has an `O`-neighbour earlier in the order.
//! Orienting every edge from its earlier to its later endpoint then turns
//! `O` into an out-branching rooted at `s` and `I` into an in-branching
//! rooted at `t` — a *good* acyclic orientation.
//!
//! The existence question for a *fixed* order reduces to bipartite matching:
//! demands are "an entering arc for every vertex ≠ s" and "a leaving arc for
//! every vertex ≠ t"; an arc u→v can serve either the entering demand of `v`
//! or the leaving demand of `u`, and any system of distinct representatives
//! automatically assembles into the two branchings (in an acyclic digraph
//! parent chains strictly descend, so they terminate at the unique
//! source/sink).  Failures carry a Hall-violator witness.
//!
//! On top of the matching core this module provides:
//!
//! * [`acyclic_branchings`] — the decision procedure on arbitrary acyclic
//!   orientations;
//! * [`triple_for_order`] — triple existence for one fixed order;
//! * [`circuit_triple`] — backtracking search over orders of a generic
//!   circuit (memoized; existence is guaranteed for genuine circuits);
//! * [`compose_sum`] / [`compose_quotient`] — assembling a triple of a big
//!   graph from triples of its parts;
//! * [`orient_quartic`] / [`orient_4r4c`] — the end-to-end pipelines.

use crate::graph::{
    build_graph, connectivity_at_least, induced_subgraph, orient_by_ordering, without_edges,
    ConnectivityMode, EdgeId, Graph, Orientation, QuotientGraph, Subgraph, VertexId,
};
use crate::quartic::{as_quartic, coarsify, CoarsificationTree, CoarsifyOutcome, QuarticInfo, TreeNode};
use crate::sparsity::is_generic_circuit;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

// ────────────────────────────────────────────────────────────────────────────
// Domain types
// ────────────────────────────────────────────────────────────────────────────

/// A total vertex order plus two edge-disjoint spanning trees realising a
/// good acyclic orientation with source `s` and sink `t`.
///
/// JSON schema: `{"s":int,"t":int,"order":[int],"I":[edge-id],"O":[edge-id]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct STTriple {
    pub s: VertexId,
    pub t: VertexId,
    /// The total order: `order[0] = s`, `order[n−1] = t`.
    pub order: Vec<VertexId>,
    /// Edge ids of the tree that serves every vertex except `t` with a later
    /// neighbour (becomes the in-branching to `t`).
    #[serde(rename = "I")]
    pub i_edges: Vec<EdgeId>,
    /// Edge ids of the tree that serves every vertex except `s` with an
    /// earlier neighbour (becomes the out-branching from `s`).
    #[serde(rename = "O")]
    pub o_edges: Vec<EdgeId>,
}

/// Arc-disjoint out-/in-branching pair in an acyclic orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchingPair {
    /// One entering arc per vertex ≠ s (edge ids): the out-branching from s.
    #[serde(rename = "out-branching")]
    pub out_branching: Vec<EdgeId>,
    /// One leaving arc per vertex ≠ t (edge ids): the in-branching to t.
    #[serde(rename = "in-branching")]
    pub in_branching: Vec<EdgeId>,
}

/// One unit of demand in the matching formulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "vertex", rename_all = "kebab-case")]
pub enum Demand {
    /// Vertex needs an entering arc (it is not the source).
    In(VertexId),
    /// Vertex needs a leaving arc (it is not the sink).
    Out(VertexId),
}

/// A Hall violator: a demand set adjacent to fewer arcs than demands —
/// proof that no branching pair exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingInfeasibility {
    /// The violating demand subset, sorted.
    pub demands: Vec<Demand>,
    /// All arcs (edge ids) able to serve any demand in the subset, sorted;
    /// strictly fewer than `demands`.
    pub arcs: Vec<EdgeId>,
}

impl MatchingInfeasibility {
    /// Re-checks the violator against an orientation: every listed demand's
    /// candidate arcs must lie inside `arcs`, and |arcs| < |demands|.
    pub fn verify(&self, d: &Orientation) -> bool {
        if self.arcs.len() >= self.demands.len() {
            return false;
        }
        self.demands.iter().all(|dem| {
            let candidates: Vec<EdgeId> = match *dem {
                Demand::In(v) => d.in_arcs(v).into_iter().map(|(e, _)| e).collect(),
                Demand::Out(u) => d.out_arcs(u).into_iter().map(|(e, _)| e).collect(),
            };
            candidates.iter().all(|e| self.arcs.binary_search(e).is_ok())
        })
    }
}

/// Outcome of [`acyclic_branchings`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BranchingOutcome {
    Pair(BranchingPair),
    Infeasible(MatchingInfeasibility),
}

// ────────────────────────────────────────────────────────────────────────────
// Triple validation
// ────────────────────────────────────────────────────────────────────────────

/// Explains why `tr` is not a valid triple of `g`, or `None` if it is valid.
pub fn triple_violation(g: &Graph, tr: &STTriple) -> Option<String> {
    triple_violation_on(g, tr, None)
}

/// True iff `tr` satisfies every triple invariant against `g`.
pub fn validate_triple(g: &Graph, tr: &STTriple) -> bool {
    triple_violation(g, tr).is_none()
}

/// Like [`triple_violation`] but judging `tr` as a triple of the subgraph of
/// `g` induced by `vertices` (host ids throughout).
pub(crate) fn triple_violation_on(
    g: &Graph,
    tr: &STTriple,
    vertices: Option<&[VertexId]>,
) -> Option<String> {
    let n = g.vertex_count();
    let mut member = vec![false; n];
    let sub_size = match vertices {
        None => {
            member.fill(true);
            n
        }
        Some(vs) => {
            for &v in vs {
                if v >= n {
                    return Some(format!("vertex {v} out of range"));
                }
                member[v] = true;
            }
            vs.len()
        }
    };
    if tr.order.len() != sub_size {
        return Some(format!("order has {} entries, expected {sub_size}", tr.order.len()));
    }
    let mut position = vec![usize::MAX; n];
    for (i, &v) in tr.order.iter().enumerate() {
        if v >= n || !member[v] {
            return Some(format!("order contains foreign vertex {v}"));
        }
        if position[v] != usize::MAX {
            return Some(format!("order repeats vertex {v}"));
        }
        position[v] = i;
    }
    if sub_size < 2 {
        return Some("a triple needs at least 2 vertices".into());
    }
    if tr.order[0] != tr.s {
        return Some(format!("order starts at {} but s = {}", tr.order[0], tr.s));
    }
    if tr.order[sub_size - 1] != tr.t {
        return Some(format!("order ends at {} but t = {}", tr.order[sub_size - 1], tr.t));
    }
    if tr.s == tr.t {
        return Some("s and t coincide".into());
    }
    // Edge sets: in range, internal to the vertex set, disjoint, no repeats.
    let mut used = vec![0u8; g.edge_count()];
    for (label, edges) in [("I", &tr.i_edges), ("O", &tr.o_edges)] {
        for &e in edges.iter() {
            if e >= g.edge_count() {
                return Some(format!("{label} contains out-of-range edge {e}"));
            }
            let (u, v) = g.endpoints(e);
            if !member[u] || !member[v] {
                return Some(format!("{label} edge {e} leaves the vertex set"));
            }
            if used[e] != 0 {
                return Some(format!("edge {e} used twice across I/O"));
            }
            used[e] = 1;
        }
    }
    // Both spanning trees (of the induced subgraph).
    for (label, edges) in [("I", &tr.i_edges), ("O", &tr.o_edges)] {
        if !is_spanning_tree_on(g, &member, sub_size, edges) {
            return Some(format!("{label} is not a spanning tree of the vertex set"));
        }
    }
    // Order conditions.
    for &v in &tr.order {
        if v != tr.t {
            let ok = tr.i_edges.iter().any(|&e| {
                let (a, b) = g.endpoints(e);
                (a == v && position[b] > position[v]) || (b == v && position[a] > position[v])
            });
            if !ok {
                return Some(format!("vertex {v} has no later I-neighbour"));
            }
        }
        if v != tr.s {
            let ok = tr.o_edges.iter().any(|&e| {
                let (a, b) = g.endpoints(e);
                (a == v && position[b] < position[v]) || (b == v && position[a] < position[v])
            });
            if !ok {
                return Some(format!("vertex {v} has no earlier O-neighbour"));
            }
        }
    }
    None
}

/// Spanning-tree test over a vertex subset given as a mask.
fn is_spanning_tree_on(g: &Graph, member: &[bool], sub_size: usize, edges: &[EdgeId]) -> bool {
    if edges.len() + 1 != sub_size {
        return false;
    }
    // Union-find over member vertices.
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        if parent[v] != v {
            let r = find(parent, parent[v]);
            parent[v] = r;
        }
        parent[v]
    }
    for &e in edges {
        let (u, v) = g.endpoints(e);
        if !member[u] || !member[v] {
            return false;
        }
        let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
        if ru == rv {
            return false;
        }
        parent[ru.max(rv)] = ru.min(rv);
    }
    true
}

/// The restriction of a triple to a vertex subset: the order filtered to the
/// subset and the I/O edges internal to it.  When the subset induces a graph
/// formed by two edge-disjoint spanning trees, the restriction is itself a
/// valid triple of that subgraph (rooted at its first/last surviving
/// vertices).
pub fn restrict_triple(g: &Graph, tr: &STTriple, x: &[VertexId]) -> Result<STTriple> {
    let mask = g.vertex_mask(x)?;
    let order: Vec<VertexId> = tr.order.iter().copied().filter(|&v| mask[v]).collect();
    if order.len() < 2 {
        return Err(Error::Precondition("restriction needs at least 2 vertices".into()));
    }
    let keep = |edges: &[EdgeId]| -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = edges
            .iter()
            .copied()
            .filter(|&e| {
                let (u, v) = g.endpoints(e);
                mask[u] && mask[v]
            })
            .collect();
        out.sort_unstable();
        out
    };
    Ok(STTriple {
        s: order[0],
        t: order[order.len() - 1],
        order: order.clone(),
        i_edges: keep(&tr.i_edges),
        o_edges: keep(&tr.o_edges),
    })
}

// ────────────────────────────────────────────────────────────────────────────
// Bipartite matching core
// ────────────────────────────────────────────────────────────────────────────

/// Kuhn-style bipartite matcher with deterministic ascending scans and
/// support for incremental demand insertion (used by the ordering search).
#[derive(Debug, Clone)]
pub(crate) struct DemandMatcher {
    /// Candidate arcs per demand.
    adj: Vec<Vec<usize>>,
    /// demand → matched arc.
    left_match: Vec<Option<usize>>,
    /// arc → matched demand.
    right_match: Vec<Option<usize>>,
}

impl DemandMatcher {
    pub(crate) fn new(arc_count: usize) -> DemandMatcher {
        DemandMatcher {
            adj: Vec::new(),
            left_match: Vec::new(),
            right_match: vec![None; arc_count],
        }
    }

    /// Adds a demand and immediately tries to match it.  Returns the demand
    /// index and whether matching (still) succeeds.
    pub(crate) fn add_demand(&mut self, candidates: Vec<usize>) -> (usize, bool) {
        let l = self.adj.len();
        self.adj.push(candidates);
        self.left_match.push(None);
        let mut visited = vec![false; self.right_match.len()];
        let ok = self.augment(l, &mut visited);
        (l, ok)
    }

    fn augment(&mut self, l: usize, visited: &mut [bool]) -> bool {
        for idx in 0..self.adj[l].len() {
            let r = self.adj[l][idx];
            if visited[r] {
                continue;
            }
            visited[r] = true;
            match self.right_match[r] {
                None => {
                    self.right_match[r] = Some(l);
                    self.left_match[l] = Some(r);
                    return true;
                }
                Some(owner) => {
                    if self.augment(owner, visited) {
                        self.right_match[r] = Some(l);
                        self.left_match[l] = Some(r);
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Matched arc of a demand.
    pub(crate) fn matched(&self, l: usize) -> Option<usize> {
        self.left_match[l]
    }

    /// Alternating-reachability Hall violator from an unmatched demand:
    /// (demand indices, arc indices) with |arcs| = |demands| − 1.
    pub(crate) fn hall_violator(&self, l0: usize) -> (Vec<usize>, Vec<usize>) {
        let mut lefts = vec![l0];
        let mut seen_left = vec![false; self.adj.len()];
        let mut seen_right = vec![false; self.right_match.len()];
        seen_left[l0] = true;
        let mut queue = std::collections::VecDeque::from([l0]);
        let mut rights = Vec::new();
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                if seen_right[r] {
                    continue;
                }
                seen_right[r] = true;
                rights.push(r);
                let owner = self.right_match[r]
                    .expect("free arc adjacent to the violator would have been matched");
                if !seen_left[owner] {
                    seen_left[owner] = true;
                    lefts.push(owner);
                    queue.push_back(owner);
                }
            }
        }
        lefts.sort_unstable();
        rights.sort_unstable();
        (lefts, rights)
    }

    /// Snapshot of the matching state (for backtracking searches).
    pub(crate) fn save(&self) -> (Vec<Option<usize>>, Vec<Option<usize>>) {
        (self.left_match.clone(), self.right_match.clone())
    }

    /// Restores a snapshot, truncating demands added after it.
    pub(crate) fn restore(&mut self, snap: (Vec<Option<usize>>, Vec<Option<usize>>)) {
        let demand_count = snap.0.len();
        self.adj.truncate(demand_count);
        self.left_match = snap.0;
        self.right_match = snap.1;
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Branchings in acyclic orientations
// ────────────────────────────────────────────────────────────────────────────

/// Decides whether an acyclic orientation contains an out-branching rooted
/// at `s` and an arc-disjoint in-branching rooted at `t`.
///
/// Demands are In(v) for v ≠ s and Out(u) for u ≠ t; the arc u→v can serve
/// In(v) or Out(u).  A perfect matching yields the pair (the In-matched arcs
/// give each non-source vertex one parent, so they form the out-branching;
/// dually for Out).  Infeasibility yields a Hall violator.  Rejection is
/// immediate when some vertex other than s has in-degree 0 or some vertex
/// other than t has out-degree 0 — in particular whenever s is not the
/// unique source or t is not the unique sink.
pub fn acyclic_branchings(d: &Orientation, s: VertexId, t: VertexId) -> Result<BranchingOutcome> {
    let n = d.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::Precondition("s and t must be distinct vertices".into()));
    }
    if !d.is_acyclic() {
        return Err(Error::Precondition("orientation contains a directed cycle".into()));
    }
    // Quick rejections with singleton violators.
    for v in 0..n {
        if v != s && d.in_degree(v) == 0 {
            return Ok(BranchingOutcome::Infeasible(MatchingInfeasibility {
                demands: vec![Demand::In(v)],
                arcs: Vec::new(),
            }));
        }
        if v != t && d.out_degree(v) == 0 {
            return Ok(BranchingOutcome::Infeasible(MatchingInfeasibility {
                demands: vec![Demand::Out(v)],
                arcs: Vec::new(),
            }));
        }
    }

    let mut matcher = DemandMatcher::new(d.arc_count());
    let mut demand_labels: Vec<Demand> = Vec::new();
    let enqueue = |dem: Demand,
                       candidates: Vec<usize>,
                       matcher: &mut DemandMatcher,
                       labels: &mut Vec<Demand>|
     -> Option<usize> {
        labels.push(dem);
        let (l, ok) = matcher.add_demand(candidates);
        if ok {
            None
        } else {
            Some(l)
        }
    };
    let mut failed: Option<usize> = None;
    for v in 0..n {
        if failed.is_some() {
            break;
        }
        if v != s {
            let cands = d.in_arcs(v).into_iter().map(|(e, _)| e).collect();
            failed = enqueue(Demand::In(v), cands, &mut matcher, &mut demand_labels);
        }
    }
    for u in 0..n {
        if failed.is_some() {
            break;
        }
        if u != t {
            let cands = d.out_arcs(u).into_iter().map(|(e, _)| e).collect();
            failed = enqueue(Demand::Out(u), cands, &mut matcher, &mut demand_labels);
        }
    }
    if let Some(l0) = failed {
        let (lefts, rights) = matcher.hall_violator(l0);
        let infeasibility = MatchingInfeasibility {
            demands: lefts.into_iter().map(|l| demand_labels[l]).collect(),
            arcs: rights,
        };
        debug_assert!(infeasibility.verify(d));
        return Ok(BranchingOutcome::Infeasible(infeasibility));
    }
    let mut out_branching = Vec::new();
    let mut in_branching = Vec::new();
    for (l, dem) in demand_labels.iter().enumerate() {
        let arc = matcher.matched(l).expect("all demands matched");
        match dem {
            Demand::In(_) => out_branching.push(arc),
            Demand::Out(_) => in_branching.push(arc),
        }
    }
    out_branching.sort_unstable();
    in_branching.sort_unstable();
    let pair = BranchingPair { out_branching, in_branching };
    debug_assert!(validate_branching_pair(d, s, t, &pair));
    Ok(BranchingOutcome::Pair(pair))
}

/// Full validity check of a branching pair against an orientation.
pub fn validate_branching_pair(d: &Orientation, s: VertexId, t: VertexId, bp: &BranchingPair) -> bool {
    let n = d.vertex_count();
    if bp.out_branching.len() != n - 1 || bp.in_branching.len() != n - 1 {
        return false;
    }
    let mut used = vec![false; d.arc_count()];
    for &e in bp.out_branching.iter().chain(&bp.in_branching) {
        if e >= d.arc_count() || used[e] {
            return false;
        }
        used[e] = true;
    }
    // Out-branching: one entering arc per vertex ≠ s; everything reachable
    // from s.
    let mut parent = vec![usize::MAX; n];
    for &e in &bp.out_branching {
        let (tail, head) = d.arc(e);
        if head == s || parent[head] != usize::MAX {
            return false;
        }
        parent[head] = tail;
    }
    for v in 0..n {
        if v == s {
            continue;
        }
        let (mut cur, mut steps) = (v, 0);
        while cur != s {
            cur = parent[cur];
            steps += 1;
            if cur == usize::MAX || steps > n {
                return false;
            }
        }
    }
    // In-branching: one leaving arc per vertex ≠ t; everything reaches t.
    let mut succ = vec![usize::MAX; n];
    for &e in &bp.in_branching {
        let (tail, head) = d.arc(e);
        if tail == t || succ[tail] != usize::MAX {
            return false;
        }
        succ[tail] = head;
    }
    for v in 0..n {
        if v == t {
            continue;
        }
        let (mut cur, mut steps) = (v, 0);
        while cur != t {
            cur = succ[cur];
            steps += 1;
            if cur == usize::MAX || steps > n {
                return false;
            }
        }
    }
    true
}

// ────────────────────────────────────────────────────────────────────────────
// Triple for a fixed order
// ────────────────────────────────────────────────────────────────────────────

/// Decides whether the graph admits a triple whose order is exactly `order`,
/// and returns it if so.  This is the matching formulation on the
/// order-induced orientation; it underlies both the brute-force oracle and
/// the ordering search on circuits.
pub fn triple_for_order(g: &Graph, order: &[VertexId]) -> Result<Option<STTriple>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Precondition("a triple needs at least 2 vertices".into()));
    }
    let d = orient_by_ordering(g, order)?;
    let (s, t) = (order[0], order[n - 1]);
    match acyclic_branchings(&d, s, t)? {
        BranchingOutcome::Infeasible(_) => Ok(None),
        BranchingOutcome::Pair(pair) => {
            let tr = STTriple {
                s,
                t,
                order: order.to_vec(),
                i_edges: pair.in_branching,
                o_edges: pair.out_branching,
            };
            debug_assert!(validate_triple(g, &tr), "{:?}", triple_violation(g, &tr));
            Ok(Some(tr))
        }
    }
}

// ────────────────────────────────────────────────────────────────────────────
// DOT export
// ────────────────────────────────────────────────────────────────────────────

/// Renders a triple as a Graphviz digraph: every edge oriented by the order,
/// O-edges red, I-edges blue, remaining edges gray; labels carry order
/// positions.
pub fn triple_to_dot(g: &Graph, tr: &STTriple) -> String {
    let mut position = vec![usize::MAX; g.vertex_count()];
    for (i, &v) in tr.order.iter().enumerate() {
        position[v] = i;
    }
    let mut out = String::from("digraph triple {\n  rankdir=LR;\n");
    for &v in &tr.order {
        let (name, shape) = if v == tr.s {
            (format!("s={v}"), ", shape=box")
        } else if v == tr.t {
            (format!("t={v}"), ", shape=box")
        } else {
            (v.to_string(), "")
        };
        out.push_str(&format!("  v{v} [label=\"{name} (#{})\"{shape}];\n", position[v]));
    }
    for (e, (u, v)) in g.edge_records() {
        let (tail, head) = if position[u] < position[v] { (u, v) } else { (v, u) };
        let color = if tr.o_edges.contains(&e) {
            "red"
        } else if tr.i_edges.contains(&e) {
            "blue"
        } else {
            "gray"
        };
        out.push_str(&format!("  v{tail} -> v{head} [color={color}, label=\"e{e}\"];\n"));
    }
    out.push_str("}\n");
    out
}

// ────────────────────────────────────────────────────────────────────────────
// Triples of generic circuits: backtracking over orders
// ────────────────────────────────────────────────────────────────────────────

/// Which spanning tree a constrained edge must land in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TreeClass {
    I,
    O,
}

type CircuitKey = (usize, Vec<(VertexId, VertexId)>, VertexId, VertexId, Option<(EdgeId, TreeClass)>);

fn circuit_memo() -> &'static Mutex<HashMap<CircuitKey, STTriple>> {
    static MEMO: OnceLock<Mutex<HashMap<CircuitKey, STTriple>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Per-attempt node budgets for the restarted order search.  Each attempt
/// relabels the circuit by a fixed pseudorandom permutation (attempt 0:
/// identity) and explores at most this many placements before handing over
/// to the next attempt; the final attempt runs unbounded, so the search as
/// a whole stays exhaustive.  Backtracking runtimes here are heavy-tailed —
/// one labeling can thrash for minutes where almost any other finishes in
/// milliseconds — and restarting under a fresh labeling is the standard,
/// determinism-preserving remedy.
const RESTART_BUDGETS: [u64; 6] = [1_000, 4_000, 16_000, 64_000, 256_000, 1_024_000];

/// Branching-order permutation used by restart `attempt`; identity first,
/// then fixed pseudorandom shuffles, the same for every run.
fn attempt_permutation(n: usize, attempt: usize) -> Vec<VertexId> {
    let mut perm: Vec<VertexId> = (0..n).collect();
    if attempt > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(attempt as u64);
        perm.shuffle(&mut rng);
    }
    perm
}

/// Demand a forced edge must serve.  An I-edge serves someone's
/// later-neighbour demand; with an endpoint at s (always earliest) only
/// Out(s) qualifies, with an endpoint at t (always latest) only the other
/// endpoint's demand.  Dually for O-edges.
fn pin_demand(c: &Graph, s: VertexId, t: VertexId, e: EdgeId, class: TreeClass) -> (Demand, EdgeId) {
    let (u, v) = c.endpoints(e);
    let other = |root: VertexId| if u == root { v } else { u };
    let demand = match class {
        TreeClass::I => {
            if u == s || v == s {
                Demand::Out(s)
            } else {
                Demand::Out(other(t))
            }
        }
        TreeClass::O => {
            if u == t || v == t {
                Demand::In(t)
            } else {
                Demand::In(other(s))
            }
        }
    };
    (demand, e)
}

/// Finds an (s,t)-triple of a generic circuit, optionally forcing one edge
/// incident to `s` or `t` into the I- or O-tree.
///
/// The search enumerates vertex orders (s first, t last) and maintains the
/// demand matching incrementally: placing `v` adds its "earlier
/// O-neighbour" demand (candidates: edges to already placed vertices) and
/// its "later I-neighbour" demand (candidates: edges to still unplaced
/// vertices); both candidate sets are final at placement time, so a
/// matching failure soundly prunes the whole subtree.  Three further
/// devices keep the search tractable: a relaxed matching over every
/// still-unplaced vertex's future demands discards subtrees whose
/// remaining edges cannot cover the remaining needs; orders are explored
/// only in the canonical representative per induced acyclic orientation
/// (the demand system depends on the orientation alone); and the whole
/// search restarts under fresh deterministic relabelings on a geometric
/// node-budget schedule, the last attempt unbounded.  A completed order
/// with all demands matched is exactly a triple.  Results are memoized on
/// (graph, s, t, constraint); every pair of a genuine generic circuit
/// admits a triple, so failure here is reported as an error.
pub fn circuit_triple(
    c: &Graph,
    s: VertexId,
    t: VertexId,
    constraint: Option<(EdgeId, TreeClass)>,
) -> Result<STTriple> {
    let n = c.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::Precondition("s and t must be distinct vertices".into()));
    }
    if !is_generic_circuit(c) {
        return Err(Error::Precondition("input is not a generic circuit".into()));
    }
    if let Some((e, _)) = constraint {
        if e >= c.edge_count() {
            return Err(Error::Precondition(format!("constraint edge {e} out of range")));
        }
        let (u, v) = c.endpoints(e);
        if u != s && v != s && u != t && v != t {
            return Err(Error::Precondition(
                "constraint edge not incident to a root".into(),
            ));
        }
    }

    let key: CircuitKey = (
        n,
        c.edge_records().map(|(_, (u, v))| (u.min(v), u.max(v))).collect(),
        s,
        t,
        constraint,
    );
    if let Some(hit) = circuit_memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }

    let mut found: Option<STTriple> = None;
    for attempt in 0..=RESTART_BUDGETS.len() {
        let budget = RESTART_BUDGETS.get(attempt).copied().unwrap_or(u64::MAX);
        let perm = attempt_permutation(n, attempt);
        // Relabeled copy with identical edge ids: edge k joins the images
        // of edge k's endpoints.
        let edges: Vec<(VertexId, VertexId)> =
            c.edge_records().map(|(_, (u, v))| (perm[u], perm[v])).collect();
        let rc = build_graph(n, &edges).expect("relabeling preserves well-formedness");
        let (rs, rt) = (perm[s], perm[t]);
        let mut search = CircuitSearch {
            graph: &rc,
            t: rt,
            pinned: constraint.map(|(e, class)| pin_demand(&rc, rs, rt, e, class)),
            matcher: DemandMatcher::new(rc.edge_count()),
            demands: Vec::new(),
            order: Vec::with_capacity(n),
            placed: vec![false; n],
            pos: vec![0; n],
            budget,
            nodes: 0,
            out_of_budget: false,
        };
        if let Some(tr) = search.place(rs) {
            let mut inverse = vec![0; n];
            for (v, &img) in perm.iter().enumerate() {
                inverse[img] = v;
            }
            found = Some(STTriple {
                s,
                t,
                order: tr.order.iter().map(|&v| inverse[v]).collect(),
                i_edges: tr.i_edges,
                o_edges: tr.o_edges,
            });
            break;
        }
        if !search.out_of_budget {
            // The attempt ran to completion: absence is proven, retrying
            // under another labeling cannot change the answer.
            break;
        }
    }
    let Some(tr) = found else {
        return Err(Error::SearchFailed(
            "no order admits the required trees; input violates the circuit guarantee".into(),
        ));
    };
    debug_assert!(validate_triple(c, &tr), "{:?}", triple_violation(c, &tr));
    if let Some((e, class)) = constraint {
        let in_class = match class {
            TreeClass::I => tr.i_edges.contains(&e),
            TreeClass::O => tr.o_edges.contains(&e),
        };
        assert!(in_class, "constrained edge not in the requested tree");
    }
    circuit_memo().lock().unwrap().insert(key, tr.clone());
    Ok(tr)
}

struct CircuitSearch<'a> {
    graph: &'a Graph,
    t: VertexId,
    pinned: Option<(Demand, EdgeId)>,
    matcher: DemandMatcher,
    demands: Vec<Demand>,
    order: Vec<VertexId>,
    placed: Vec<bool>,
    /// Position of each placed vertex in `order` (untouched while unplaced).
    pos: Vec<usize>,
    /// Maximum number of placements this attempt may explore.
    budget: u64,
    /// Placements explored so far.
    nodes: u64,
    /// Set once the budget runs out; unwinds the whole search quickly.
    out_of_budget: bool,
}

impl CircuitSearch<'_> {
    /// Candidate edges for a demand, honoring the pinned constraint.
    fn candidates(&self, demand: Demand) -> Vec<EdgeId> {
        let (v, want_placed) = match demand {
            Demand::In(v) => (v, true),
            Demand::Out(v) => (v, false),
        };
        if let Some((pd, pe)) = self.pinned {
            if pd == demand {
                let (a, b) = self.graph.endpoints(pe);
                let other = if a == v { b } else { a };
                // The pinned edge must point the right way for this demand.
                if self.placed[other] == want_placed {
                    return vec![pe];
                }
                return Vec::new();
            }
        }
        self.graph
            .incidences(v)
            .iter()
            .filter(|&&(w, e)| {
                self.placed[w] == want_placed && Some(e) != self.pinned.map(|(_, pe)| pe)
            })
            .map(|&(_, e)| e)
            .collect()
    }

    /// Superset of the candidates `demand` could still have at any future
    /// placement time, honoring the pinned constraint.
    fn relaxed_candidates(&self, demand: Demand) -> Vec<EdgeId> {
        if let Some((pd, pe)) = self.pinned {
            if pd == demand {
                return vec![pe];
            }
        }
        let pinned_edge = self.pinned.map(|(_, pe)| pe);
        let v = match demand {
            Demand::In(v) | Demand::Out(v) => v,
        };
        self.graph
            .incidences(v)
            .iter()
            .filter(|&&(w, e)| {
                let keep = match demand {
                    // The serving edge runs to a vertex placed earlier,
                    // which can turn out to be anyone except t (t is
                    // always placed last).
                    Demand::In(_) => w != self.t || v == self.t,
                    // The serving edge runs to a vertex placed later,
                    // necessarily one that is still unplaced now.
                    Demand::Out(_) => !self.placed[w],
                };
                w != v && keep && Some(e) != pinned_edge
            })
            .map(|&(_, e)| e)
            .collect()
    }

    /// Relaxed whole-future matching test.  Every still-unplaced vertex
    /// will eventually need an earlier O-neighbour and — unless it is t — a
    /// later I-neighbour; extending the current matching with those demands
    /// under the relaxed candidate sets must succeed, because any valid
    /// completion serves each demand by an edge inside its relaxed set.  A
    /// failure therefore prunes the subtree soundly.
    fn future_feasible(&mut self) -> bool {
        let snapshot = self.matcher.save();
        let mut ok = true;
        'vertices: for u in 0..self.graph.vertex_count() {
            if self.placed[u] {
                continue;
            }
            for demand in [Demand::In(u), Demand::Out(u)] {
                if demand == Demand::Out(self.t) {
                    continue;
                }
                let cands = self.relaxed_candidates(demand);
                let (_, fine) = self.matcher.add_demand(cands);
                if !fine {
                    ok = false;
                    break 'vertices;
                }
            }
        }
        self.matcher.restore(snapshot);
        ok
    }

    /// Places `v` next, adds its demands, and recurses; restores all state
    /// before returning None.
    fn place(&mut self, v: VertexId) -> Option<STTriple> {
        if self.out_of_budget {
            return None;
        }
        if self.nodes >= self.budget {
            self.out_of_budget = true;
            return None;
        }
        self.nodes += 1;

        // Orientation-duplicate filter.  An order only determines the
        // demand system through the acyclic orientation it induces (edges
        // point from earlier to later), so among all orders inducing the
        // same orientation it suffices to explore one: the order that
        // always takes the smallest-id vertex none of whose remaining
        // neighbours could still precede it, keeping t for the very end.
        // v has been in that state since its latest placed neighbour went
        // down, so any vertex placed after that point must carry a smaller
        // id — otherwise this prefix replays an orientation reached (or
        // pruned) elsewhere.  t itself is exempt: it is deliberately held
        // back even when it becomes available early.
        if v != self.t {
            let available_since = self
                .graph
                .incidences(v)
                .iter()
                .filter(|&&(w, _)| self.placed[w])
                .map(|&(w, _)| self.pos[w])
                .max();
            if let Some(q) = available_since {
                if self.order[q + 1..].iter().any(|&w| w > v) {
                    return None;
                }
            }
        }

        let snapshot = self.matcher.save();
        let demand_count = self.demands.len();
        self.pos[v] = self.order.len();
        self.order.push(v);
        self.placed[v] = true;

        let n = self.graph.vertex_count();
        let mut feasible = true;
        if self.order.len() > 1 {
            // Everyone but the very first vertex needs an earlier
            // O-neighbour.
            let cands = self.candidates(Demand::In(v));
            self.demands.push(Demand::In(v));
            let (_, ok) = self.matcher.add_demand(cands);
            feasible = ok;
        }
        if feasible && v != self.t {
            let cands = self.candidates(Demand::Out(v));
            self.demands.push(Demand::Out(v));
            let (_, ok) = self.matcher.add_demand(cands);
            feasible = ok;
        }

        if feasible && self.order.len() == n {
            let tr = self.extract();
            // State intentionally not restored: the caller returns
            // immediately on success.
            return Some(tr);
        }
        if feasible && self.future_feasible() {
            let final_slot = self.order.len() == n - 1;
            // Candidates sorted fail-first: scarcest future Out-options
            // (fewest unplaced neighbours) come earliest, ties by id.
            let mut next: Vec<(usize, VertexId)> = Vec::new();
            for u in 0..n {
                if self.placed[u] || (u == self.t) != final_slot {
                    continue;
                }
                // Prune: u needs a placed neighbour now and (except for the
                // final vertex) an unplaced one later.
                let mut has_placed = false;
                let mut unplaced = 0usize;
                for &(w, _) in self.graph.incidences(u) {
                    if self.placed[w] {
                        has_placed = true;
                    } else if w != u {
                        unplaced += 1;
                    }
                }
                if !has_placed || (!final_slot && unplaced == 0) {
                    continue;
                }
                next.push((unplaced, u));
            }
            next.sort_unstable();
            for &(_, u) in &next {
                if let Some(tr) = self.place(u) {
                    return Some(tr);
                }
            }
        }

        self.order.pop();
        self.placed[v] = false;
        self.demands.truncate(demand_count);
        self.matcher.restore(snapshot);
        None
    }

    fn extract(&self) -> STTriple {
        let mut i_edges = Vec::new();
        let mut o_edges = Vec::new();
        for (idx, demand) in self.demands.iter().enumerate() {
            let e = self.matcher.matched(idx).expect("complete matching");
            match demand {
                Demand::In(_) => o_edges.push(e),
                Demand::Out(_) => i_edges.push(e),
            }
        }
        i_edges.sort_unstable();
        o_edges.sort_unstable();
        STTriple {
            s: self.order[0],
            t: self.t,
            order: self.order.clone(),
            i_edges,
            o_edges,
        }
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Composition
// ────────────────────────────────────────────────────────────────────────────

/// Root placement of a sum composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SumCase {
    /// s in one part, t in the other.
    Cross,
    /// s and t in the same part; the other part's order is nested inside.
    SameSide,
}

/// Pure order/edge arithmetic: Q's order followed by R's, bridge edges
/// added.
fn concat_cross(tr_q: &STTriple, tr_r: &STTriple, o_edge: EdgeId, i_edge: EdgeId) -> STTriple {
    let mut order = tr_q.order.clone();
    order.extend_from_slice(&tr_r.order);
    let mut i_edges: Vec<EdgeId> =
        tr_q.i_edges.iter().chain(&tr_r.i_edges).copied().chain([i_edge]).collect();
    let mut o_edges: Vec<EdgeId> =
        tr_q.o_edges.iter().chain(&tr_r.o_edges).copied().chain([o_edge]).collect();
    i_edges.sort_unstable();
    o_edges.sort_unstable();
    STTriple { s: tr_q.s, t: tr_r.t, order, i_edges, o_edges }
}

/// Pure order/edge arithmetic: R's order spliced immediately after `after`
/// inside Q's order, bridge edges added.
fn insert_same_side(
    tr_q: &STTriple,
    tr_r: &STTriple,
    after: VertexId,
    o_edge: EdgeId,
    i_edge: EdgeId,
) -> STTriple {
    let pos = tr_q.order.iter().position(|&v| v == after).expect("anchor in Q's order");
    let mut order = Vec::with_capacity(tr_q.order.len() + tr_r.order.len());
    order.extend_from_slice(&tr_q.order[..=pos]);
    order.extend_from_slice(&tr_r.order);
    order.extend_from_slice(&tr_q.order[pos + 1..]);
    let mut i_edges: Vec<EdgeId> =
        tr_q.i_edges.iter().chain(&tr_r.i_edges).copied().chain([i_edge]).collect();
    let mut o_edges: Vec<EdgeId> =
        tr_q.o_edges.iter().chain(&tr_r.o_edges).copied().chain([o_edge]).collect();
    i_edges.sort_unstable();
    o_edges.sort_unstable();
    STTriple { s: tr_q.s, t: tr_q.t, order, i_edges, o_edges }
}

/// Combines triples of two vertex-disjoint parts joined by two bridge edges
/// into a triple of the combined graph.
///
/// The first bridge edge plays the O role (endpoints `a` in Q, `c` in R),
/// the second the I role (`b` in Q, `d` in R).  Cross case: Q's triple must
/// end at `b` and R's start at `c`; the orders are concatenated.  Same-side
/// case: both roots lie in Q; whichever of `a`, `b` comes first in Q's
/// order anchors the insertion of R immediately after it, and R's triple
/// must run from that bridge edge's R-endpoint to the other one (the bridge
/// roles swap when `b` precedes `a`).
pub fn compose_sum(
    g: &Graph,
    tr_q: &STTriple,
    tr_r: &STTriple,
    bridge: (EdgeId, EdgeId),
    case: SumCase,
) -> Result<STTriple> {
    let (e0, e1) = bridge;
    if e0 >= g.edge_count() || e1 >= g.edge_count() {
        return Err(Error::Precondition("bridge edge out of range".into()));
    }
    let (u0, v0) = g.endpoints(e0);
    let (u1, v1) = g.endpoints(e1);
    let mut ends = vec![u0, v0, u1, v1];
    ends.sort_unstable();
    ends.dedup();
    if e0 == e1 || ends.len() != 4 {
        return Err(Error::Precondition("bridge is not a 2-matching".into()));
    }
    let q_set = g.vertex_mask(&tr_q.order)?;
    let r_set = g.vertex_mask(&tr_r.order)?;
    if tr_q.order.iter().any(|&v| r_set[v]) {
        return Err(Error::Precondition("the two parts share vertices".into()));
    }
    let split = |x: VertexId, y: VertexId| -> Result<(VertexId, VertexId)> {
        if q_set[x] && r_set[y] {
            Ok((x, y))
        } else if q_set[y] && r_set[x] {
            Ok((y, x))
        } else {
            Err(Error::Precondition("bridge edge does not connect the two parts".into()))
        }
    };
    let (a, c) = split(u0, v0)?;
    let (b, d) = split(u1, v1)?;
    for (label, tr) in [("first part", tr_q), ("second part", tr_r)] {
        if let Some(why) = triple_violation_on(g, tr, Some(&tr.order)) {
            return Err(Error::Precondition(format!("{label} triple invalid: {why}")));
        }
    }
    let composed = match case {
        SumCase::Cross => {
            if tr_q.t != b || tr_r.s != c {
                return Err(Error::Precondition(
                    "root placement inconsistent with case: cross composition needs Q to end at the I-bridge and R to start at the O-bridge".into(),
                ));
            }
            concat_cross(tr_q, tr_r, e0, e1)
        }
        SumCase::SameSide => {
            let pos = |v: VertexId| tr_q.order.iter().position(|&x| x == v);
            let (pa, pb) = (pos(a), pos(b));
            let (Some(pa), Some(pb)) = (pa, pb) else {
                return Err(Error::Precondition(
                    "root placement inconsistent with case: bridge endpoints not in the rooted part".into(),
                ));
            };
            let (anchor, o_edge, i_edge, want_s, want_t) = if pa < pb {
                (a, e0, e1, c, d)
            } else {
                (b, e1, e0, d, c)
            };
            if tr_r.s != want_s || tr_r.t != want_t {
                return Err(Error::Precondition(
                    "root placement inconsistent with case: nested part must run between the bridge endpoints".into(),
                ));
            }
            insert_same_side(tr_q, tr_r, anchor, o_edge, i_edge)
        }
    };
    let union: Vec<VertexId> = {
        let mut all = tr_q.order.clone();
        all.extend_from_slice(&tr_r.order);
        all.sort_unstable();
        all
    };
    assert!(
        triple_violation_on(g, &composed, Some(&union)).is_none(),
        "sum composition produced an invalid triple: {:?}",
        triple_violation_on(g, &composed, Some(&union))
    );
    Ok(composed)
}

/// Expands a triple of a quotient graph into a triple of the base graph by
/// substituting a triple for every non-singleton block.
///
/// Each non-singleton block has derived local roots: the base endpoint in
/// the block of the unique quotient O-edge serving the block from an earlier
/// block, and of the unique quotient I-edge serving it towards a later
/// block; the first/last blocks inherit the composed graph's own roots from
/// their triples.  Every supplied block triple must match its derived
/// roots.
pub fn compose_quotient(
    q: &QuotientGraph,
    quotient_triple: &STTriple,
    block_triples: &BTreeMap<usize, STTriple>,
) -> Result<STTriple> {
    let base = q.base();
    let quot = q.as_graph();
    if let Some(why) = triple_violation_on(quot, quotient_triple, None) {
        return Err(Error::Precondition(format!("quotient triple invalid: {why}")));
    }
    let blocks = q.partition().blocks();
    for (&idx, tr) in block_triples {
        if idx >= blocks.len() {
            return Err(Error::Precondition(format!("no block {idx}")));
        }
        if blocks[idx].len() < 2 {
            return Err(Error::Precondition(format!(
                "block {idx} is a singleton and takes no triple"
            )));
        }
        if let Some(why) = triple_violation_on(base, tr, Some(&blocks[idx])) {
            return Err(Error::Precondition(format!("block {idx} triple invalid: {why}")));
        }
    }
    let derived = derived_roots(q, quotient_triple)?;
    let mut order = Vec::with_capacity(base.vertex_count());
    let mut i_edges: Vec<EdgeId> =
        quotient_triple.i_edges.iter().map(|&qe| q.base_edge(qe)).collect();
    let mut o_edges: Vec<EdgeId> =
        quotient_triple.o_edges.iter().map(|&qe| q.base_edge(qe)).collect();
    for &block_idx in &quotient_triple.order {
        let block = &blocks[block_idx];
        if block.len() == 1 {
            order.push(block[0]);
            continue;
        }
        let Some(tr) = block_triples.get(&block_idx) else {
            return Err(Error::Precondition(format!(
                "missing triple for non-singleton block {block_idx}"
            )));
        };
        let (want_s, want_t) = derived[block_idx];
        if let Some(want) = want_s {
            if tr.s != want {
                return Err(Error::Precondition(format!(
                    "local roots of block {block_idx} disagree with the derived ones: s is {} but the entering O-edge demands {want}",
                    tr.s
                )));
            }
        }
        if let Some(want) = want_t {
            if tr.t != want {
                return Err(Error::Precondition(format!(
                    "local roots of block {block_idx} disagree with the derived ones: t is {} but the leaving I-edge demands {want}",
                    tr.t
                )));
            }
        }
        order.extend_from_slice(&tr.order);
        i_edges.extend_from_slice(&tr.i_edges);
        o_edges.extend_from_slice(&tr.o_edges);
    }
    i_edges.sort_unstable();
    o_edges.sort_unstable();
    let s = order[0];
    let t = *order.last().expect("non-empty order");
    let composed = STTriple { s, t, order, i_edges, o_edges };
    assert!(
        triple_violation_on(base, &composed, None).is_none(),
        "quotient composition produced an invalid triple: {:?}",
        triple_violation_on(base, &composed, None)
    );
    Ok(composed)
}

/// For every block: the base endpoints demanded by the quotient triple's
/// entering O-edge and leaving I-edge (None for the quotient's own roots).
fn derived_roots(
    q: &QuotientGraph,
    quotient_triple: &STTriple,
) -> Result<Vec<(Option<VertexId>, Option<VertexId>)>> {
    let quot = q.as_graph();
    let blocks = q.partition().blocks();
    let mut position = vec![usize::MAX; quot.vertex_count()];
    for (i, &x) in quotient_triple.order.iter().enumerate() {
        position[x] = i;
    }
    let mut result: Vec<(Option<VertexId>, Option<VertexId>)> =
        vec![(None, None); blocks.len()];
    let base_end_in = |qe: EdgeId, block_idx: usize| -> VertexId {
        let e = q.base_edge(qe);
        let (u, v) = q.base().endpoints(e);
        if blocks[block_idx].binary_search(&u).is_ok() {
            u
        } else {
            debug_assert!(blocks[block_idx].binary_search(&v).is_ok());
            v
        }
    };
    for &qe in &quotient_triple.o_edges {
        let (x, y) = quot.endpoints(qe);
        // The later endpoint receives its unique entering O-edge.
        let later = if position[x] > position[y] { x } else { y };
        if result[later].0.is_some() {
            return Err(Error::Precondition(
                "quotient O-tree serves a block twice; not a valid branching".into(),
            ));
        }
        result[later].0 = Some(base_end_in(qe, later));
    }
    for &qe in &quotient_triple.i_edges {
        let (x, y) = quot.endpoints(qe);
        let earlier = if position[x] < position[y] { x } else { y };
        if result[earlier].1.is_some() {
            return Err(Error::Precondition(
                "quotient I-tree serves a block twice; not a valid branching".into(),
            ));
        }
        result[earlier].1 = Some(base_end_in(qe, earlier));
    }
    Ok(result)
}

// ────────────────────────────────────────────────────────────────────────────
// End-to-end pipelines
// ────────────────────────────────────────────────────────────────────────────

/// Outcome of [`orient_quartic`]: a triple, or the coarsification
/// certificate showing the input leaves the guaranteed class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OrientOutcome {
    Triple(STTriple),
    Obstruction(crate::quartic::BadCertificate),
}

/// Builds an (s,t)-triple of a quartic for two of its transits by
/// coarsifying it and composing circuit triples bottom-up along the merge
/// tree.
///
/// Circuit-merge nodes take a triple of their quotient circuit and derive
/// each child's local roots from the bridging trees; sum nodes orient their
/// two bridge edges by the root locations (cross case) or by the order
/// positions of the bridge endpoints in the fully processed root-side child
/// (same-side case).  If coarsification reports a bad block instead, that
/// certificate is the (negative) result.
pub fn orient_quartic(q: &QuarticInfo, s: VertexId, t: VertexId) -> Result<OrientOutcome> {
    if s == t || !q.transits.contains(&s) || !q.transits.contains(&t) {
        return Err(Error::Precondition("s and t must be distinct transits".into()));
    }
    let tree = match coarsify(q, true) {
        CoarsifyOutcome::Bad(bad) => return Ok(OrientOutcome::Obstruction(bad)),
        CoarsifyOutcome::Tree(tree) => tree,
    };
    let tr = process_node(&q.graph, &tree, tree.root, s, t)?;
    assert!(
        triple_violation(&q.graph, &tr).is_none(),
        "composed triple invalid: {:?}",
        triple_violation(&q.graph, &tr)
    );
    Ok(OrientOutcome::Triple(tr))
}

fn block_contains(block: &[VertexId], v: VertexId) -> bool {
    block.binary_search(&v).is_ok()
}

/// Maps a triple given in host ids into a subgraph view's local ids.
pub(crate) fn localize_triple(sub: &Subgraph, tr: &STTriple) -> STTriple {
    let v = |x: VertexId| sub.local_vertex(x).expect("vertex inside the view");
    let e = |x: EdgeId| sub.local_edge(x).expect("edge inside the view");
    let mut i_edges: Vec<EdgeId> = tr.i_edges.iter().map(|&x| e(x)).collect();
    let mut o_edges: Vec<EdgeId> = tr.o_edges.iter().map(|&x| e(x)).collect();
    i_edges.sort_unstable();
    o_edges.sort_unstable();
    STTriple {
        s: v(tr.s),
        t: v(tr.t),
        order: tr.order.iter().map(|&x| v(x)).collect(),
        i_edges,
        o_edges,
    }
}

/// Maps a triple on a subgraph view back to host ids.
pub(crate) fn triple_to_host(sub: &Subgraph, tr: &STTriple) -> STTriple {
    STTriple {
        s: sub.host_vertex(tr.s),
        t: sub.host_vertex(tr.t),
        order: tr.order.iter().map(|&v| sub.host_vertex(v)).collect(),
        i_edges: {
            let mut es: Vec<EdgeId> = tr.i_edges.iter().map(|&e| sub.host_edge(e)).collect();
            es.sort_unstable();
            es
        },
        o_edges: {
            let mut es: Vec<EdgeId> = tr.o_edges.iter().map(|&e| sub.host_edge(e)).collect();
            es.sort_unstable();
            es
        },
    }
}

/// Recursively builds an (s,t)-triple of the block covered by `node`.
fn process_node(
    g: &Graph,
    tree: &CoarsificationTree,
    node: usize,
    s: VertexId,
    t: VertexId,
) -> Result<STTriple> {
    match &tree.nodes[node] {
        TreeNode::Singleton { .. } => unreachable!("singleton blocks have no triples"),
        TreeNode::CircuitLeaf { block } => {
            let sub = induced_subgraph(g, block)?;
            let ls = sub.local_vertex(s).expect("root inside the block");
            let lt = sub.local_vertex(t).expect("root inside the block");
            let tr = circuit_triple(&sub.graph, ls, lt, None)?;
            Ok(triple_to_host(&sub, &tr))
        }
        TreeNode::CircuitMerge { children, circuit_edges, .. } => {
            let block = tree.nodes[node].block_vertices();
            let sub = induced_subgraph(g, &block)?;
            // Partition of the block view into the children; quotient it to
            // recover the merge circuit.
            let local_blocks: Vec<Vec<VertexId>> = children
                .iter()
                .map(|&c| {
                    tree.nodes[c]
                        .block_vertices()
                        .iter()
                        .map(|&v| sub.local_vertex(v).expect("child inside block"))
                        .collect()
                })
                .collect();
            let partition = crate::graph::Partition::new(sub.graph.vertex_count(), local_blocks)?;
            let q = crate::graph::quotient(&sub.graph, &partition)?;
            debug_assert!(is_generic_circuit(q.as_graph()));
            debug_assert_eq!(
                {
                    let mut hosts: Vec<EdgeId> =
                        q.crossing_edges().iter().map(|&e| sub.host_edge(e)).collect();
                    hosts.sort_unstable();
                    hosts
                },
                {
                    let mut want = circuit_edges.clone();
                    want.sort_unstable();
                    want
                },
                "quotient edges must be the merge circuit"
            );
            // Which tree child covers each canonical partition block.
            let child_of_block: Vec<usize> = {
                let mut map = vec![usize::MAX; partition.block_count()];
                for &c in children {
                    let host_min = tree.nodes[c].block_vertices()[0];
                    let local = sub.local_vertex(host_min).expect("child inside block");
                    map[partition.block_of(local)] = c;
                }
                map
            };
            let ls = sub.local_vertex(s).expect("root inside the block");
            let lt = sub.local_vertex(t).expect("root inside the block");
            let (sc, tc) = (partition.block_of(ls), partition.block_of(lt));
            // Two block-transits inside one child would force its boundary
            // degree below the circuit minimum of 3.
            assert_ne!(sc, tc, "both roots fell into one merged block");
            let qt = circuit_triple(q.as_graph(), sc, tc, None)?;
            let derived = derived_roots(&q, &qt)?;
            let mut block_triples: BTreeMap<usize, STTriple> = BTreeMap::new();
            for (bx, local_block) in partition.blocks().iter().enumerate() {
                if local_block.len() == 1 {
                    continue;
                }
                let bs = if bx == sc {
                    debug_assert!(derived[bx].0.is_none());
                    ls
                } else {
                    derived[bx].0.expect("every later block has an entering O-edge")
                };
                let bt = if bx == tc {
                    debug_assert!(derived[bx].1.is_none());
                    lt
                } else {
                    derived[bx].1.expect("every earlier block has a leaving I-edge")
                };
                // A shared root would need two boundary edges at one vertex
                // of an internally degree-3 block: impossible in a quartic.
                assert_ne!(bs, bt, "derived roots of a merged block collide");
                let child_tr = process_node(
                    g,
                    tree,
                    child_of_block[bx],
                    sub.host_vertex(bs),
                    sub.host_vertex(bt),
                )?;
                block_triples.insert(bx, localize_triple(&sub, &child_tr));
            }
            let composed = compose_quotient(&q, &qt, &block_triples)?;
            Ok(triple_to_host(&sub, &composed))
        }
        TreeNode::Sum { children, bridge, .. } => {
            let b0 = tree.nodes[children[0]].block_vertices();
            let b1 = tree.nodes[children[1]].block_vertices();
            let (e0, e1) = (bridge[0], bridge[1]);
            let side = |v: VertexId| -> usize {
                if block_contains(&b0, v) {
                    0
                } else {
                    debug_assert!(block_contains(&b1, v));
                    1
                }
            };
            let ends = |e: EdgeId| -> (VertexId, VertexId) {
                // (endpoint in children[0], endpoint in children[1])
                let (u, v) = g.endpoints(e);
                if side(u) == 0 {
                    (u, v)
                } else {
                    (v, u)
                }
            };
            let (a0, c0) = ends(e0);
            let (a1, c1) = ends(e1);
            let (ss, ts) = (side(s), side(t));
            if ss != ts {
                // Cross: the first bridge edge becomes the O-edge from s's
                // side; the other becomes the I-edge.
                let (q_child, r_child) = (children[ss], children[ts]);
                // Bridge endpoints on s's side / t's side.
                let (qa1, rc0) = if ss == 0 { (a1, c0) } else { (c1, a0) };
                // Q runs s → (endpoint of the I-edge), R runs (endpoint of
                // the O-edge) → t.  Roots never collide with bridge
                // endpoints: bridge ends have internal degree 4 in the sum
                // block, roots have 3.
                assert_ne!(s, qa1);
                assert_ne!(t, rc0);
                let tr_q = process_node(g, tree, q_child, s, qa1)?;
                let tr_r = process_node(g, tree, r_child, rc0, t)?;
                compose_sum(g, &tr_q, &tr_r, (e0, e1), SumCase::Cross)
            } else {
                // Same side: process the rooted child first, then orient
                // the bridge by the endpoint positions.
                let p_child = children[ss];
                let r_child = children[1 - ss];
                let (pa0, ra0) = if ss == 0 { (a0, c0) } else { (c0, a0) };
                let (pa1, ra1) = if ss == 0 { (a1, c1) } else { (c1, a1) };
                let tr_p = process_node(g, tree, p_child, s, t)?;
                let pos = |v: VertexId| {
                    tr_p.order.iter().position(|&x| x == v).expect("bridge endpoint in P")
                };
                let tr_r = if pos(pa0) < pos(pa1) {
                    process_node(g, tree, r_child, ra0, ra1)?
                } else {
                    process_node(g, tree, r_child, ra1, ra0)?
                };
                compose_sum(g, &tr_p, &tr_r, (e0, e1), SumCase::SameSide)
            }
        }
    }
}

/// Constructs an (s,t)-triple of a simple 4-regular 4-connected graph by
/// deleting one disjoint edge at each root (first by edge id) and running
/// the quartic pipeline on the remainder, whose transits are exactly the
/// four deleted-edge endpoints.  The guarantee for this class makes a
/// coarsification obstruction an internal error here.
pub fn orient_4r4c(g: &Graph, s: VertexId, t: VertexId) -> Result<STTriple> {
    let n = g.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::Precondition("s and t must be distinct vertices".into()));
    }
    if !g.is_simple() || (0..n).any(|v| g.degree(v) != 4) {
        return Err(Error::Precondition("input is not simple 4-regular".into()));
    }
    if !connectivity_at_least(g, 4, ConnectivityMode::Vertex) {
        return Err(Error::Precondition("input is not 4-connected".into()));
    }
    // First disjoint pair (e at s, f at t) by ascending (e, f).
    let mut pick: Option<(EdgeId, EdgeId)> = None;
    'outer: for &(u, e) in g.incidences(s) {
        if u == t {
            continue;
        }
        for &(v, f) in g.incidences(t) {
            if v == s || v == u {
                continue;
            }
            pick = Some((e, f));
            break 'outer;
        }
    }
    let (e, f) = pick.expect("4-regular graphs always offer disjoint root edges");
    let sub = without_edges(g, &[e, f])?;
    let info = as_quartic(&sub.graph)?;
    let mut expected: Vec<VertexId> = {
        let (a, b) = g.endpoints(e);
        let (c, d) = g.endpoints(f);
        vec![a, b, c, d]
    };
    expected.sort_unstable();
    assert_eq!(info.transits, expected, "transits must be the deleted edges' endpoints");
    match orient_quartic(&info, s, t)? {
        OrientOutcome::Triple(tr) => {
            let host = triple_to_host(&sub, &tr);
            assert!(
                triple_violation(g, &host).is_none(),
                "{:?}",
                triple_violation(g, &host)
            );
            Ok(host)
        }
        OrientOutcome::Obstruction(bad) => Err(Error::SearchFailed(format!(
            "coarsification obstruction on a guaranteed instance: {bad:?}"
        ))),
    }
}

// ────────────────────────────────────────────────────────────────────────────
// Tests (matching core, validation, branchings)
// ────────────────────────────────────────────────────────────────────────────
