//! Rooted tree pairs for dense graphs: grow a spanning subgraph with twin
//! spanning trees by vertex additions and two-edge bridges, then read the
//! requested triple off the growth structure.

use crate::graph::{induced_subgraph, EdgeId, Graph, Subgraph, VertexId};
use crate::oracle::brute_triple;
use crate::orient::{
    circuit_triple, compose_sum, triple_to_host, triple_violation, triple_violation_on, STTriple,
    SumCase,
};
use crate::sparsity::{find_any_circuit, is_generic_circuit};
use crate::{Error, Result};
use serde::Serialize;

// ────────────────────────────────────────────────────────────────────────────
// Growth recipes
// ────────────────────────────────────────────────────────────────────────────

/// A reproducible construction of a connected 2T-subgraph of a host graph:
/// a seed circuit, then vertex additions and two-edge bridges to separately
/// grown components.  Replaying a recipe always yields the same subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthRecipe {
    /// Vertices of the seed, whose induced subgraph must be a generic
    /// circuit.
    pub base: Vec<VertexId>,
    /// The seed's edges (host ids).
    pub base_edges: Vec<EdgeId>,
    pub steps: Vec<GrowthStep>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GrowthStep {
    /// Attach one new vertex by exactly two edges into the grown part.
    AddVertex { x: VertexId, e1: EdgeId, e2: EdgeId },
    /// Connect a separately grown component by two bridge edges.
    BridgeJoin { bridge: (EdgeId, EdgeId), component: GrowthRecipe },
}

/// Replays a recipe against its host, returning the covered vertices and
/// the subgraph's edges (both ascending).  Every structural requirement is
/// re-checked; the result is a connected subgraph with exactly twice as
/// many edges as vertices, minus two.
pub fn replay(g: &Graph, recipe: &GrowthRecipe) -> Result<(Vec<VertexId>, Vec<EdgeId>)> {
    let n = g.vertex_count();
    let mut covered = vec![false; n];
    for &v in &recipe.base {
        if v >= n {
            return Err(Error::InvalidInput(format!("base vertex {v} out of range")));
        }
        if covered[v] {
            return Err(Error::InvalidInput(format!("base vertex {v} repeated")));
        }
        covered[v] = true;
    }
    let base_sub = induced_subgraph(g, &recipe.base)?;
    let mut in_base_edges = vec![false; g.edge_count()];
    for &e in &recipe.base_edges {
        if e >= g.edge_count() {
            return Err(Error::InvalidInput(format!("base edge {e} out of range")));
        }
        in_base_edges[e] = true;
    }
    let local_ids: Vec<EdgeId> = recipe
        .base_edges
        .iter()
        .map(|&e| {
            base_sub
                .local_edge(e)
                .ok_or_else(|| Error::InvalidInput(format!("base edge {e} leaves the base")))
        })
        .collect::<Result<_>>()?;
    let seed = crate::graph::build_graph(
        recipe.base.len(),
        &local_ids
            .iter()
            .map(|&le| base_sub.graph.endpoints(le))
            .collect::<Vec<_>>(),
    )?;
    if !is_generic_circuit(&seed) {
        return Err(Error::InvalidInput("recipe base is not a generic circuit".into()));
    }
    let mut edges: Vec<EdgeId> = recipe.base_edges.clone();
    for step in &recipe.steps {
        match step {
            GrowthStep::AddVertex { x, e1, e2 } => {
                let (x, e1, e2) = (*x, *e1, *e2);
                if x >= n || covered[x] {
                    return Err(Error::InvalidInput(format!(
                        "added vertex {x} is out of range or already covered"
                    )));
                }
                let mut inside_ends = Vec::new();
                for e in [e1, e2] {
                    if e >= g.edge_count() {
                        return Err(Error::InvalidInput(format!("edge {e} out of range")));
                    }
                    let (u, v) = g.endpoints(e);
                    let other = if u == x {
                        v
                    } else if v == x {
                        u
                    } else {
                        return Err(Error::InvalidInput(format!(
                            "edge {e} does not touch the added vertex {x}"
                        )));
                    };
                    if !covered[other] {
                        return Err(Error::InvalidInput(format!(
                            "edge {e} does not land in the grown part"
                        )));
                    }
                    inside_ends.push(other);
                }
                if e1 == e2 || inside_ends[0] == inside_ends[1] {
                    return Err(Error::InvalidInput(
                        "fewer than two attachment edges for the added vertex".into(),
                    ));
                }
                covered[x] = true;
                edges.push(e1);
                edges.push(e2);
            }
            GrowthStep::BridgeJoin { bridge, component } => {
                let (part_vertices, part_edges) = replay(g, component)?;
                for &v in &part_vertices {
                    if covered[v] {
                        return Err(Error::InvalidInput(format!(
                            "bridged component re-covers vertex {v}"
                        )));
                    }
                }
                let in_part = g.vertex_mask(&part_vertices)?;
                let (f0, f1) = *bridge;
                for f in [f0, f1] {
                    if f >= g.edge_count() {
                        return Err(Error::InvalidInput(format!("bridge edge {f} out of range")));
                    }
                    let (u, v) = g.endpoints(f);
                    let crosses = (covered[u] && in_part[v]) || (covered[v] && in_part[u]);
                    if !crosses {
                        return Err(Error::InvalidInput(format!(
                            "bridge edge {f} does not connect the two parts"
                        )));
                    }
                }
                if f0 == f1 {
                    return Err(Error::InvalidInput("bridge uses the same edge twice".into()));
                }
                for &v in &part_vertices {
                    covered[v] = true;
                }
                edges.extend(part_edges);
                edges.push(f0);
                edges.push(f1);
            }
        }
    }
    let vertices: Vec<VertexId> = (0..n).filter(|&v| covered[v]).collect();
    edges.sort_unstable();
    edges.dedup();
    debug_assert_eq!(edges.len(), 2 * vertices.len() - 2, "growth must stay tight");
    Ok((vertices, edges))
}

// ────────────────────────────────────────────────────────────────────────────
// Single growth moves on triples
// ────────────────────────────────────────────────────────────────────────────

/// Where a newly attached vertex should land in the triple's order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrowthRole {
    /// Keep the roots; insert the vertex between its attachments.
    Interior,
    /// The new vertex becomes the first vertex (the source root).
    AsSource,
    /// The new vertex becomes the last vertex (the sink root).
    AsSink,
}

/// Extends a triple by one vertex attached through two edges.
///
/// Interior role: the vertex slots in right after the earlier of its two
/// attachment points; the edge to that point joins the O-tree and the edge
/// to the later point joins the I-tree.  Source/sink roles put the vertex
/// first/last, which works when one attachment point is the root being
/// displaced.  Each primary placement is checked by the validator; if it
/// fails, every insertion position and edge assignment is tried before
/// giving up.
pub fn grow_by_vertex(
    g: &Graph,
    tr: &STTriple,
    x: VertexId,
    e1: EdgeId,
    e2: EdgeId,
    role: GrowthRole,
) -> Result<STTriple> {
    if x >= g.vertex_count() || tr.order.contains(&x) {
        return Err(Error::Precondition(format!(
            "vertex {x} is out of range or already part of the triple"
        )));
    }
    let mut inside = Vec::new();
    for e in [e1, e2] {
        if e >= g.edge_count() {
            return Err(Error::Precondition(format!("edge {e} out of range")));
        }
        let (u, v) = g.endpoints(e);
        let other = if u == x {
            v
        } else if v == x {
            u
        } else {
            return Err(Error::Precondition(
                "fewer than two attachment edges: an edge avoids the new vertex".into(),
            ));
        };
        if !tr.order.contains(&other) {
            return Err(Error::Precondition(
                "fewer than two attachment edges: an edge leaves the triple".into(),
            ));
        }
        inside.push(other);
    }
    if e1 == e2 || inside[0] == inside[1] {
        return Err(Error::Precondition(
            "fewer than two attachment edges: the inside endpoints coincide".into(),
        ));
    }
    let (u1, u2) = (inside[0], inside[1]);
    let pos = |v: VertexId| tr.order.iter().position(|&y| y == v).expect("inside the order");

    let make = |insert_at: usize, s: VertexId, t: VertexId, o_extra: EdgeId, i_extra: EdgeId| {
        let mut order = tr.order.clone();
        order.insert(insert_at, x);
        let mut i_edges = tr.i_edges.clone();
        let mut o_edges = tr.o_edges.clone();
        i_edges.push(i_extra);
        o_edges.push(o_extra);
        i_edges.sort_unstable();
        o_edges.sort_unstable();
        STTriple { s, t, order, i_edges, o_edges }
    };
    let full = |cand: &STTriple| triple_violation_on(g, cand, Some(&cand.order)).is_none();

    let primary = match role {
        GrowthRole::Interior => {
            let ((u, eu), (_, ev)) = if pos(u1) < pos(u2) {
                ((u1, e1), (u2, e2))
            } else {
                ((u2, e2), (u1, e1))
            };
            make(pos(u) + 1, tr.s, tr.t, eu, ev)
        }
        GrowthRole::AsSource => {
            let (eo, ei) = if u1 == tr.s { (e1, e2) } else { (e2, e1) };
            make(0, x, tr.t, eo, ei)
        }
        GrowthRole::AsSink => {
            let (ei, eo) = if u1 == tr.t { (e1, e2) } else { (e2, e1) };
            make(tr.order.len(), tr.s, x, eo, ei)
        }
    };
    if full(&primary) {
        return Ok(primary);
    }
    // Validator-guarded fallback over placements.
    let positions: Vec<usize> = match role {
        GrowthRole::Interior => (1..tr.order.len()).collect(),
        GrowthRole::AsSource => vec![0],
        GrowthRole::AsSink => vec![tr.order.len()],
    };
    for &at in &positions {
        for (eo, ei) in [(e1, e2), (e2, e1)] {
            let (s, t) = match role {
                GrowthRole::Interior => (tr.s, tr.t),
                GrowthRole::AsSource => (x, tr.t),
                GrowthRole::AsSink => (tr.s, x),
            };
            let cand = make(at, s, t, eo, ei);
            if full(&cand) {
                return Ok(cand);
            }
        }
    }
    Err(Error::SearchFailed(
        "no placement of the added vertex passes validation".into(),
    ))
}

/// Joins two component triples across two bridge edges with four distinct
/// endpoints, picking the cross or nested composition from where the roots
/// sit.
pub fn bridge_join(
    g: &Graph,
    tr_g: &STTriple,
    tr_h: &STTriple,
    e0: EdgeId,
    e1: EdgeId,
) -> Result<STTriple> {
    if e0 >= g.edge_count() || e1 >= g.edge_count() {
        return Err(Error::Precondition("bridge edge out of range".into()));
    }
    let (u0, v0) = g.endpoints(e0);
    let (u1, v1) = g.endpoints(e1);
    let mut ends = vec![u0, v0, u1, v1];
    ends.sort_unstable();
    ends.dedup();
    if e0 == e1 || ends.len() != 4 {
        return Err(Error::Precondition("bridge endpoints not distinct".into()));
    }
    let g_set = g.vertex_mask(&tr_g.order)?;
    let h_set = g.vertex_mask(&tr_h.order)?;
    let h_end = |u: VertexId, v: VertexId| -> Result<VertexId> {
        if g_set[u] && h_set[v] {
            Ok(v)
        } else if g_set[v] && h_set[u] {
            Ok(u)
        } else {
            Err(Error::Precondition("bridge edge does not connect the two parts".into()))
        }
    };
    let c = h_end(u0, v0)?;
    let d = h_end(u1, v1)?;
    let h_roots_on_bridge =
        (tr_h.s == c || tr_h.s == d) && (tr_h.t == c || tr_h.t == d);
    let g_roots_on_bridge = {
        let a = u0 + v0 - c;
        let b = u1 + v1 - d;
        (tr_g.s == a || tr_g.s == b) && (tr_g.t == a || tr_g.t == b)
    };
    if h_roots_on_bridge {
        compose_sum(g, tr_g, tr_h, (e0, e1), SumCase::SameSide)
    } else if g_roots_on_bridge {
        compose_sum(g, tr_h, tr_g, (e0, e1), SumCase::SameSide)
    } else if tr_h.s == d {
        // Cross with the bridge roles swapped so the O-edge reaches H's
        // source.
        compose_sum(g, tr_g, tr_h, (e1, e0), SumCase::Cross)
    } else {
        compose_sum(g, tr_g, tr_h, (e0, e1), SumCase::Cross)
    }
}

/// Cross composition that tolerates bridge edges sharing an endpoint on one
/// side, which two-edge cuts through a single articulation-like vertex can
/// force.  The Q triple must end at the I-edge's Q endpoint and the R
/// triple must start at the O-edge's R endpoint.
fn join_cross(
    g: &Graph,
    tr_q: &STTriple,
    tr_r: &STTriple,
    o_edge: EdgeId,
    i_edge: EdgeId,
) -> STTriple {
    debug_assert_ne!(o_edge, i_edge);
    let mut order = tr_q.order.clone();
    order.extend_from_slice(&tr_r.order);
    let mut i_edges: Vec<EdgeId> =
        tr_q.i_edges.iter().chain(&tr_r.i_edges).copied().chain([i_edge]).collect();
    let mut o_edges: Vec<EdgeId> =
        tr_q.o_edges.iter().chain(&tr_r.o_edges).copied().chain([o_edge]).collect();
    i_edges.sort_unstable();
    o_edges.sort_unstable();
    let composed = STTriple { s: tr_q.s, t: tr_r.t, order, i_edges, o_edges };
    assert!(
        triple_violation_on(g, &composed, Some(&composed.order)).is_none(),
        "cross join produced an invalid triple: {:?}",
        triple_violation_on(g, &composed, Some(&composed.order))
    );
    composed
}

// ────────────────────────────────────────────────────────────────────────────
// The dense pipeline
// ────────────────────────────────────────────────────────────────────────────

/// Result of [`dense_triple`]: a spanning tight subgraph with a triple, or
/// the report that the input is the identified-cliques exception.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DenseOutcome {
    Found {
        /// Edges of the spanning 2T-subgraph (the union of the two trees).
        edges: Vec<EdgeId>,
        triple: STTriple,
    },
    Exceptional {
        #[serde(rename = "cut-vertex")]
        cut_vertex: VertexId,
    },
}

/// Detects the one dense exception: two equal cliques identified at a
/// single cut vertex.  Under the half-order degree bound, any cut vertex
/// forces exactly this shape, which is asserted.
fn exceptional_cut(g: &Graph) -> Option<VertexId> {
    let n = g.vertex_count();
    for w in 0..n {
        let mut seen = vec![false; n];
        seen[w] = true;
        let mut comps: Vec<Vec<VertexId>> = Vec::new();
        for v in 0..n {
            if seen[v] {
                continue;
            }
            let mut stack = vec![v];
            let mut comp = Vec::new();
            seen[v] = true;
            while let Some(u) = stack.pop() {
                comp.push(u);
                for x in g.neighbors(u) {
                    if !seen[x] {
                        seen[x] = true;
                        stack.push(x);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        if comps.len() < 2 {
            continue;
        }
        // A cut vertex under the degree bound forces two identified
        // cliques of equal size.
        assert_eq!(comps.len(), 2, "degree bound allows at most two sides");
        assert!(n % 2 == 1, "identified cliques need an odd order");
        for comp in &comps {
            assert_eq!(comp.len(), (n - 1) / 2, "sides must split evenly");
            let mut side = comp.clone();
            side.push(w);
            for i in 0..side.len() {
                for j in i + 1..side.len() {
                    assert!(
                        !g.edges_between(side[i], side[j]).is_empty(),
                        "each side with the cut vertex must be complete"
                    );
                }
            }
        }
        return Some(w);
    }
    None
}

/// The grown core of a region: a seed circuit view plus orderly vertex
/// additions.
struct GrownCore {
    seed: Subgraph,
    additions: Vec<(VertexId, EdgeId, EdgeId)>,
    members: Vec<VertexId>,
}

/// Builds an (a,b)-triple of the grown core by peeling the additions in
/// reverse: the last added vertex is slotted in (or becomes a root, with
/// the previous triple rerooted onto one of its attachment points) and the
/// seed circuit supplies the innermost triple.
fn core_triple(g: &Graph, core: &GrownCore, upto: usize, a: VertexId, b: VertexId) -> Result<STTriple> {
    debug_assert_ne!(a, b);
    if upto == 0 {
        let ls = core.seed.local_vertex(a).expect("root inside the seed");
        let lt = core.seed.local_vertex(b).expect("root inside the seed");
        let tr = circuit_triple(&core.seed.graph, ls, lt, None)?;
        return Ok(triple_to_host(&core.seed, &tr));
    }
    let (x, e1, e2) = core.additions[upto - 1];
    let other = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        if u == x {
            v
        } else {
            u
        }
    };
    if x == a {
        let w = if other(e1) != b { other(e1) } else { other(e2) };
        let tr = core_triple(g, core, upto - 1, w, b)?;
        grow_by_vertex(g, &tr, x, e1, e2, GrowthRole::AsSource)
    } else if x == b {
        let w = if other(e1) != a { other(e1) } else { other(e2) };
        let tr = core_triple(g, core, upto - 1, a, w)?;
        grow_by_vertex(g, &tr, x, e1, e2, GrowthRole::AsSink)
    } else {
        let tr = core_triple(g, core, upto - 1, a, b)?;
        grow_by_vertex(g, &tr, x, e1, e2, GrowthRole::Interior)
    }
}

/// Greedily grows a core inside `region`: seed with a circuit, then
/// repeatedly absorb the lowest-id outside vertex with two attachment
/// edges.
fn grow_core(g: &Graph, region: &[VertexId]) -> Result<GrownCore> {
    let sub = induced_subgraph(g, region)?;
    let Some(local_seed) = find_any_circuit(&sub.graph) else {
        return Err(Error::SearchFailed(
            "no seed circuit found inside a dense region".into(),
        ));
    };
    let seed_vertices: Vec<VertexId> =
        local_seed.iter().map(|&lv| sub.host_vertex(lv)).collect();
    let seed = induced_subgraph(g, &seed_vertices)?;
    let mut in_core = vec![false; g.vertex_count()];
    for &v in &seed_vertices {
        in_core[v] = true;
    }
    let in_region = g.vertex_mask(region)?;
    let mut additions = Vec::new();
    loop {
        let mut grew = false;
        for &x in region {
            if in_core[x] {
                continue;
            }
            let mut attach: Vec<(EdgeId, VertexId)> = g
                .incidences(x)
                .iter()
                .filter(|&&(w, _)| in_core[w] && in_region[w])
                .map(|&(w, e)| (e, w))
                .collect();
            if attach.len() < 2 {
                continue;
            }
            attach.sort_unstable();
            additions.push((x, attach[0].0, attach[1].0));
            in_core[x] = true;
            grew = true;
            break;
        }
        if !grew {
            break;
        }
    }
    let members: Vec<VertexId> =
        region.iter().copied().filter(|&v| in_core[v]).collect();
    Ok(GrownCore { seed, additions, members })
}

/// Builds an (rs,rt)-triple spanning exactly `region`, growing greedily and
/// bridging stuck remainders (brute-force search below eight vertices).
fn region_triple(g: &Graph, region: &[VertexId], rs: VertexId, rt: VertexId) -> Result<STTriple> {
    debug_assert!(region.binary_search(&rs).is_ok() && region.binary_search(&rt).is_ok());
    if region.len() <= 7 {
        let sub = induced_subgraph(g, region)?;
        let ls = sub.local_vertex(rs).expect("root inside the region");
        let lt = sub.local_vertex(rt).expect("root inside the region");
        let report = brute_triple(&sub.graph, ls, lt)?;
        let Some(witness) = report.witness else {
            return Err(Error::SearchFailed(
                "a small region admits no rooted tree pair; the input leaves the guaranteed class"
                    .into(),
            ));
        };
        return Ok(triple_to_host(&sub, &witness));
    }
    let core = grow_core(g, region)?;
    if core.members.len() == region.len() {
        return core_triple(g, &core, core.additions.len(), rs, rt);
    }
    let in_core = g.vertex_mask(&core.members)?;
    let rest: Vec<VertexId> =
        region.iter().copied().filter(|&v| !in_core[v]).collect();
    if rest.len() < 2 {
        return Err(Error::SearchFailed(
            "stuck with a single stranded vertex; the input leaves the guaranteed class".into(),
        ));
    }
    let in_rest = g.vertex_mask(&rest)?;
    let mut crossing: Vec<EdgeId> = g
        .edge_records()
        .filter(|&(_, (u, v))| {
            (in_core[u] && in_rest[v]) || (in_core[v] && in_rest[u])
        })
        .map(|(e, _)| e)
        .collect();
    crossing.sort_unstable();
    if crossing.len() < 2 {
        return Err(Error::SearchFailed(
            "fewer than two edges reach the remainder; the input leaves the guaranteed class"
                .into(),
        ));
    }
    let core_end = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        if in_core[u] {
            u
        } else {
            v
        }
    };
    let rest_end = |e: EdgeId| {
        let (u, v) = g.endpoints(e);
        if in_rest[u] {
            u
        } else {
            v
        }
    };
    match (in_core[rs], in_core[rt]) {
        (true, true) | (false, false) => {
            // Both roots on one side: nest the other side between a
            // four-endpoint bridge pair.
            let pair = {
                let mut found = None;
                'outer: for (i, &e) in crossing.iter().enumerate() {
                    for &f in &crossing[i + 1..] {
                        if core_end(e) != core_end(f) && rest_end(e) != rest_end(f) {
                            found = Some((e, f));
                            break 'outer;
                        }
                    }
                }
                found.ok_or_else(|| {
                    Error::SearchFailed(
                        "all remainder connections pinch through one vertex; the input leaves the guaranteed class".into(),
                    )
                })?
            };
            let (e, f) = pair;
            if in_core[rs] {
                let tr_p = core_triple(g, &core, core.additions.len(), rs, rt)?;
                let pos = |v: VertexId| {
                    tr_p.order.iter().position(|&y| y == v).expect("anchor in the core")
                };
                let tr_r = if pos(core_end(e)) < pos(core_end(f)) {
                    region_triple(g, &rest, rest_end(e), rest_end(f))?
                } else {
                    region_triple(g, &rest, rest_end(f), rest_end(e))?
                };
                compose_sum(g, &tr_p, &tr_r, (e, f), SumCase::SameSide)
            } else {
                let tr_p = region_triple(g, &rest, rs, rt)?;
                let pos = |v: VertexId| {
                    tr_p.order.iter().position(|&y| y == v).expect("anchor in the remainder")
                };
                let tr_r = if pos(rest_end(e)) < pos(rest_end(f)) {
                    core_triple(g, &core, core.additions.len(), core_end(e), core_end(f))?
                } else {
                    core_triple(g, &core, core.additions.len(), core_end(f), core_end(e))?
                };
                compose_sum(g, &tr_p, &tr_r, (e, f), SumCase::SameSide)
            }
        }
        (s_in_core, _) => {
            // Roots split: cross-join, allowing bridge edges that share an
            // endpoint.
            let (q_end, r_end): (&dyn Fn(EdgeId) -> VertexId, &dyn Fn(EdgeId) -> VertexId) =
                if s_in_core {
                    (&core_end, &rest_end)
                } else {
                    (&rest_end, &core_end)
                };
            let mut choice = None;
            'outer: for &oe in &crossing {
                for &ie in &crossing {
                    if oe != ie && q_end(ie) != rs && r_end(oe) != rt {
                        choice = Some((oe, ie));
                        break 'outer;
                    }
                }
            }
            let Some((oe, ie)) = choice else {
                return Err(Error::SearchFailed(
                    "no orientation of the remainder connections fits the roots; the input leaves the guaranteed class".into(),
                ));
            };
            let (tr_q, tr_r) = if s_in_core {
                (
                    core_triple(g, &core, core.additions.len(), rs, q_end(ie))?,
                    region_triple(g, &rest, r_end(oe), rt)?,
                )
            } else {
                (
                    region_triple(g, &rest, rs, q_end(ie))?,
                    core_triple(g, &core, core.additions.len(), r_end(oe), rt)?,
                )
            };
            Ok(join_cross(g, &tr_q, &tr_r, oe, ie))
        }
    }
}

/// Produces a spanning 2T-subgraph of a dense graph together with an
/// (s,t)-triple on it, or reports the identified-cliques exception.
///
/// Requires a simple graph on at least four vertices with minimum degree at
/// least half the order (rounded down).  A cut vertex under that bound can
/// only be the shared vertex of two identical cliques, which is the one
/// graph family the construction cannot serve.  Small inputs (at most 7
/// vertices) go straight to exhaustive search.
pub fn dense_triple(g: &Graph, s: VertexId, t: VertexId) -> Result<DenseOutcome> {
    let n = g.vertex_count();
    if n < 4 {
        return Err(Error::Precondition("need at least 4 vertices".into()));
    }
    if s >= n || t >= n || s == t {
        return Err(Error::Precondition("s and t must be distinct vertices".into()));
    }
    if !g.is_simple() {
        return Err(Error::Precondition("input must be a simple graph".into()));
    }
    let delta = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    if delta < n / 2 {
        return Err(Error::Precondition(format!(
            "minimum degree {delta} is below half the order"
        )));
    }
    if let Some(w) = exceptional_cut(g) {
        return Ok(DenseOutcome::Exceptional { cut_vertex: w });
    }
    let all: Vec<VertexId> = (0..n).collect();
    let triple = if n <= 7 {
        let report = brute_triple(g, s, t)?;
        let Some(witness) = report.witness else {
            return Err(Error::SearchFailed(
                "no spanning tree pair exists at this size; the guarantee starts at eight vertices"
                    .into(),
            ));
        };
        witness
    } else {
        region_triple(g, &all, s, t)?
    };
    assert!(
        triple_violation(g, &triple).is_none(),
        "dense pipeline produced an invalid triple: {:?}",
        triple_violation(g, &triple)
    );
    let mut edges: Vec<EdgeId> =
        triple.i_edges.iter().chain(&triple.o_edges).copied().collect();
    edges.sort_unstable();
    debug_assert_eq!(edges.len(), 2 * n - 2);
    Ok(DenseOutcome::Found { edges, triple })
}

// ────────────────────────────────────────────────────────────────────────────
// Tests
// ────────────────────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, identified_cliques};
    use crate::graph::build_graph;
    use crate::orient::validate_triple;

    fn k4() -> Graph {
        build_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn k4_triple() -> STTriple {
        STTriple {
            s: 0,
            t: 3,
            order: vec![0, 1, 2, 3],
            i_edges: vec![2, 3, 5],
            o_edges: vec![0, 1, 4],
        }
    }

    /// K4 plus a fifth vertex attached to 0 and 1.
    fn k4_plus_leafy() -> Graph {
        build_graph(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)],
        )
        .unwrap()
    }

    fn sum_of_two_k4s() -> Graph {
        build_graph(
            8,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (4, 5),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
                (0, 4),
                (1, 5),
            ],
        )
        .unwrap()
    }

    fn shift_to_second_summand(tr: &STTriple) -> STTriple {
        STTriple {
            s: tr.s + 4,
            t: tr.t + 4,
            order: tr.order.iter().map(|&v| v + 4).collect(),
            i_edges: tr.i_edges.iter().map(|&e| e + 6).collect(),
            o_edges: tr.o_edges.iter().map(|&e| e + 6).collect(),
        }
    }

    #[test]
    fn interior_growth_slots_the_vertex_after_its_earlier_attachment() {
        let g = k4_plus_leafy();
        let tr = grow_by_vertex(&g, &k4_triple(), 4, 6, 7, GrowthRole::Interior).unwrap();
        assert_eq!(tr.order, vec![0, 4, 1, 2, 3]);
        assert!(tr.o_edges.contains(&6));
        assert!(tr.i_edges.contains(&7));
        assert!(validate_triple(&g, &tr));
    }

    #[test]
    fn source_growth_reroots_at_the_new_vertex() {
        let g = k4_plus_leafy();
        // The old source 0 is one of the attachment points.
        let tr = grow_by_vertex(&g, &k4_triple(), 4, 6, 7, GrowthRole::AsSource).unwrap();
        assert_eq!(tr.s, 4);
        assert_eq!(tr.order[0], 4);
        assert!(validate_triple(&g, &tr));
    }

    #[test]
    fn sink_growth_reroots_at_the_new_vertex() {
        let g = k4_plus_leafy();
        // Root the base triple so an attachment point (1) is the sink.
        let base = circuit_triple(&k4(), 0, 1, None).unwrap();
        let tr = grow_by_vertex(&g, &base, 4, 6, 7, GrowthRole::AsSink).unwrap();
        assert_eq!(tr.t, 4);
        assert_eq!(*tr.order.last().unwrap(), 4);
        assert!(validate_triple(&g, &tr));
    }

    #[test]
    fn growth_rejects_a_pinched_attachment() {
        let g = build_graph(
            5,
            &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (0, 4)],
        )
        .unwrap();
        let err = grow_by_vertex(&g, &k4_triple(), 4, 6, 7, GrowthRole::Interior).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("fewer than two")));
    }

    #[test]
    fn bridge_join_dispatches_the_cross_case() {
        let g = sum_of_two_k4s();
        let tr_g = circuit_triple(&k4(), 2, 1, None).unwrap();
        let tr_h = shift_to_second_summand(&circuit_triple(&k4(), 0, 3, None).unwrap());
        let tr = bridge_join(&g, &tr_g, &tr_h, 12, 13).unwrap();
        assert_eq!((tr.s, tr.t), (2, 7));
        assert!(triple_violation(&g, &tr).is_none());
    }

    #[test]
    fn bridge_join_dispatches_the_nested_case() {
        let g = sum_of_two_k4s();
        let tr_g = circuit_triple(&k4(), 2, 3, None).unwrap();
        let pos = |v: VertexId| tr_g.order.iter().position(|&x| x == v).unwrap();
        let tr_h = if pos(0) < pos(1) {
            shift_to_second_summand(&circuit_triple(&k4(), 0, 1, None).unwrap())
        } else {
            shift_to_second_summand(&circuit_triple(&k4(), 1, 0, None).unwrap())
        };
        let tr = bridge_join(&g, &tr_g, &tr_h, 12, 13).unwrap();
        assert_eq!((tr.s, tr.t), (2, 3));
        assert!(triple_violation(&g, &tr).is_none());
    }

    #[test]
    fn bridge_join_rejects_shared_endpoints() {
        let g = sum_of_two_k4s();
        let tr_g = circuit_triple(&k4(), 2, 1, None).unwrap();
        let tr_h = shift_to_second_summand(&circuit_triple(&k4(), 0, 3, None).unwrap());
        let err = bridge_join(&g, &tr_g, &tr_h, 12, 12).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("not distinct")));
    }

    #[test]
    fn cross_join_accepts_bridges_sharing_the_grown_endpoint() {
        // Two K4s with all connections through vertex 8: no disjoint
        // bridge pair reaches the far side.
        let g = build_graph(
            9,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (4, 5),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
                (1, 8),
                (2, 8),
                (5, 8),
                (6, 8),
            ],
        )
        .unwrap();
        // Q side: K4 on {0..3} plus 8 attached at {1,2}, rooted 0 → 8.
        let base = circuit_triple(&k4(), 0, 1, None).unwrap();
        let tr_q = grow_by_vertex(&g, &base, 8, 12, 13, GrowthRole::AsSink).unwrap();
        // R side: the second K4 rooted 5 → 4.
        let tr_r = shift_to_second_summand(&circuit_triple(&k4(), 1, 0, None).unwrap());
        let tr = join_cross(&g, &tr_q, &tr_r, 14, 15);
        assert_eq!((tr.s, tr.t), (0, 4));
        assert!(triple_violation_on(&g, &tr, Some(&tr.order)).is_none());
    }

    #[test]
    fn replay_validates_a_two_stage_recipe() {
        let g = k4_plus_leafy();
        let recipe = GrowthRecipe {
            base: vec![0, 1, 2, 3],
            base_edges: vec![0, 1, 2, 3, 4, 5],
            steps: vec![GrowthStep::AddVertex { x: 4, e1: 6, e2: 7 }],
        };
        let (vertices, edges) = replay(&g, &recipe).unwrap();
        assert_eq!(vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(edges, vec![0, 1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn replay_validates_a_bridged_recipe() {
        let g = sum_of_two_k4s();
        let recipe = GrowthRecipe {
            base: vec![0, 1, 2, 3],
            base_edges: vec![0, 1, 2, 3, 4, 5],
            steps: vec![GrowthStep::BridgeJoin {
                bridge: (12, 13),
                component: GrowthRecipe {
                    base: vec![4, 5, 6, 7],
                    base_edges: vec![6, 7, 8, 9, 10, 11],
                    steps: vec![],
                },
            }],
        };
        let (vertices, edges) = replay(&g, &recipe).unwrap();
        assert_eq!(vertices.len(), 8);
        assert_eq!(edges.len(), 14);
    }

    #[test]
    fn replay_rejects_a_non_circuit_base() {
        let g = k4_plus_leafy();
        let recipe = GrowthRecipe {
            base: vec![0, 1, 2],
            base_edges: vec![0, 1, 3],
            steps: vec![],
        };
        assert!(replay(&g, &recipe).is_err());
    }

    #[test]
    fn dense_covers_the_complete_graph_on_eight() {
        let g = complete(8).unwrap();
        for s in 0..8 {
            for t in 0..8 {
                if s == t {
                    continue;
                }
                match dense_triple(&g, s, t).unwrap() {
                    DenseOutcome::Found { edges, triple } => {
                        assert_eq!((triple.s, triple.t), (s, t));
                        assert!(validate_triple(&g, &triple), "pair ({s},{t})");
                        assert_eq!(edges.len(), 14);
                    }
                    other => panic!("expected a triple for ({s},{t}), got {other:?}"),
                }
            }
        }
        // Spot-check against exhaustive search.
        let report = brute_triple(&g, 0, 5).unwrap();
        assert!(report.verdict);
    }

    #[test]
    fn dense_flags_the_identified_clique_exceptions() {
        for n in [7usize, 9] {
            let g = identified_cliques(n).unwrap();
            match dense_triple(&g, 1, 2).unwrap() {
                DenseOutcome::Exceptional { cut_vertex } => assert_eq!(cut_vertex, 0),
                other => panic!("expected the exception for n={n}, got {other:?}"),
            }
        }
    }

    #[test]
    fn dense_brute_forces_small_orders() {
        let g = complete(6).unwrap();
        match dense_triple(&g, 2, 5).unwrap() {
            DenseOutcome::Found { triple, .. } => {
                assert!(validate_triple(&g, &triple));
            }
            other => panic!("expected a triple, got {other:?}"),
        }
        // The 4-cycle meets the degree bound but has too few edges for two
        // trees.
        let c4 = build_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let err = dense_triple(&c4, 0, 2).unwrap_err();
        assert!(matches!(err, Error::SearchFailed(_)));
    }

    #[test]
    fn dense_rejects_violated_preconditions() {
        let sparse = build_graph(
            10,
            &[
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 7),
                (7, 9),
                (9, 6),
                (6, 8),
                (8, 5),
                (0, 5),
                (1, 6),
                (2, 7),
                (3, 8),
                (4, 9),
            ],
        )
        .unwrap();
        assert!(matches!(
            dense_triple(&sparse, 0, 7).unwrap_err(),
            Error::Precondition(ref m) if m.contains("minimum degree")
        ));
        let g = complete(8).unwrap();
        assert!(dense_triple(&g, 3, 3).is_err());
    }

    #[test]
    fn dense_output_is_deterministic() {
        let g = complete(9).unwrap();
        let a = serde_json::to_string(&dense_triple(&g, 1, 7).unwrap()).unwrap();
        let b = serde_json::to_string(&dense_triple(&g, 1, 7).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
