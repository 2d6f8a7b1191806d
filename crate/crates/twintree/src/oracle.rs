//! Exhaustive ground-truth procedures.
//!
//! Everything here is deliberately brute force: small-graph enumeration with
//! hard size guards, used to anchor the clever implementations elsewhere in
//! the crate.  Oracle verdicts are authoritative in equivalence tests, and
//! every witness an oracle returns is passed through the corresponding
//! validator before being reported.

use crate::graph::{induced_subgraph, is_matching, EdgeId, Graph, Orientation, VertexId};
use crate::orient::{validate_branching_pair, validate_triple, BranchingPair, STTriple};
use crate::quartic::as_quartic;
use crate::sparsity::{is_spanning_tree, TreePair};
use crate::{Error, Result};
use serde::Serialize;

// ────────────────────────────────────────────────────────────────────────────
// Reports
// ────────────────────────────────────────────────────────────────────────────

/// Outcome of one oracle run: what was asked, the verdict, the witness (when
/// one exists) and how many candidates the enumeration examined.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport<W> {
    /// Human-readable description of the query.
    pub query: String,
    /// Positive/negative decision.
    pub verdict: bool,
    /// Validated witness backing a positive verdict (or, for enumerating
    /// oracles, the full list of findings).
    pub witness: Option<W>,
    /// Number of candidates examined.
    pub enumerated: u64,
}

// ────────────────────────────────────────────────────────────────────────────
// Triples by exhaustive order enumeration
// ────────────────────────────────────────────────────────────────────────────

/// Decides whether `g` has an (s,t)-triple by trying every total order with
/// `s` first and `t` last, in lexicographic order of the middle segment.
/// Each order is decided exactly (matching formulation), so a negative
/// verdict is a proof of non-existence.
///
/// Guard: at most 10 vertices.
pub fn brute_triple(g: &Graph, s: VertexId, t: VertexId) -> Result<OracleReport<STTriple>> {
    let n = g.vertex_count();
    if n > 10 {
        return Err(Error::Precondition(format!(
            "exhaustive order enumeration is guarded at n <= 10 (got {n})"
        )));
    }
    if s >= n || t >= n || s == t {
        return Err(Error::Precondition("s and t must be distinct vertices".into()));
    }
    let query = format!("brute-triple n={n} m={} s={s} t={t}", g.edge_count());
    let middle: Vec<VertexId> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut order = Vec::with_capacity(n);
    order.push(s);
    order.extend_from_slice(&middle);
    order.push(t);
    let mut enumerated = 0u64;
    loop {
        enumerated += 1;
        if let Some(tr) = crate::orient::triple_for_order(g, &order)? {
            assert!(validate_triple(g, &tr));
            return Ok(OracleReport { query, verdict: true, witness: Some(tr), enumerated });
        }
        if !next_permutation(&mut order[1..n - 1]) {
            return Ok(OracleReport { query, verdict: false, witness: None, enumerated });
        }
    }
}

/// In-place lexicographic successor; false when the slice was the last
/// permutation.
fn next_permutation(xs: &mut [VertexId]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

// ────────────────────────────────────────────────────────────────────────────
// Subquartic enumeration
// ────────────────────────────────────────────────────────────────────────────

/// One proper vertex subset inducing a quartic, with its boundary profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubquarticRecord {
    /// The subset, ascending.
    pub vertices: Vec<VertexId>,
    /// Edges with exactly one endpoint inside, ascending.
    pub boundary: Vec<EdgeId>,
    /// Whether the boundary edges are pairwise disjoint.
    #[serde(rename = "boundary-is-matching")]
    pub is_matching: bool,
    /// Degree-3 vertices of the induced subgraph, in host ids.
    pub transits: Vec<VertexId>,
}

/// Enumerates every proper vertex subset of `g` that induces a quartic and
/// annotates each with its boundary profile.  Subsets are scanned by
/// ascending bitmask, so the output order is canonical.
///
/// Guard: at most 16 vertices.
pub fn brute_subquartics(g: &Graph) -> Result<OracleReport<Vec<SubquarticRecord>>> {
    let n = g.vertex_count();
    if n > 16 {
        return Err(Error::Precondition(format!(
            "subset enumeration is guarded at n <= 16 (got {n})"
        )));
    }
    let query = format!("brute-subquartics n={n} m={}", g.edge_count());
    let mut records = Vec::new();
    let mut enumerated = 0u64;
    let mut member = vec![false; n];
    for mask in 1u64..(1u64 << n) - 1 {
        let size = mask.count_ones() as usize;
        // A quartic needs at least 4 vertices; the subset must be proper.
        if size < 4 || size == n {
            continue;
        }
        enumerated += 1;
        for (v, m) in member.iter_mut().enumerate() {
            *m = mask >> v & 1 == 1;
        }
        // Cheap filter: a quartic on k vertices has exactly 2k−2 edges.
        if g.count_induced_edges_mask(&member) != 2 * size - 2 {
            continue;
        }
        let vertices: Vec<VertexId> = (0..n).filter(|&v| member[v]).collect();
        let sub = induced_subgraph(g, &vertices)?;
        let Ok(info) = as_quartic(&sub.graph) else { continue };
        let boundary = crate::graph::edge_neighborhood(g, &vertices)?;
        let matching = is_matching(g, &boundary);
        let transits: Vec<VertexId> =
            info.transits.iter().map(|&lv| sub.host_vertex(lv)).collect();
        records.push(SubquarticRecord { vertices, boundary, is_matching: matching, transits });
    }
    Ok(OracleReport {
        query,
        verdict: !records.is_empty(),
        witness: Some(records),
        enumerated,
    })
}

// ────────────────────────────────────────────────────────────────────────────
// Edge-disjoint spanning trees by tree enumeration
// ────────────────────────────────────────────────────────────────────────────

/// Number of spanning trees of `g` (matrix-tree determinant, exact integer
/// arithmetic).  Multigraphs count parallel edges with multiplicity.
pub fn spanning_tree_count(g: &Graph) -> Result<u128> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    // Laplacian minor (drop last row/column), fraction-free elimination.
    let k = n - 1;
    let mut a = vec![vec![0i128; k]; k];
    for (_, (u, v)) in g.edge_records() {
        if u < k {
            a[u][u] += 1;
        }
        if v < k {
            a[v][v] += 1;
        }
        if u < k && v < k {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    let mut prev = 1i128;
    for i in 0..k {
        if a[i][i] == 0 {
            let Some(p) = (i + 1..k).find(|&r| a[r][i] != 0) else { return Ok(0) };
            a.swap(i, p);
            for x in a[i].iter_mut() {
                *x = -*x;
            }
        }
        for r in i + 1..k {
            for c in i + 1..k {
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) / prev;
            }
            a[r][i] = 0;
        }
        prev = a[i][i];
    }
    Ok(a[k - 1][k - 1].unsigned_abs())
}

/// Searches for two edge-disjoint spanning trees by enumerating spanning
/// trees in lexicographic edge order and testing whether the complement
/// still connects all vertices.  The witness pair re-validates.
///
/// Guard: the spanning-tree count must not exceed 250 000.
pub fn brute_two_trees(g: &Graph) -> Result<OracleReport<TreePair>> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::Precondition("need at least 2 vertices".into()));
    }
    let query = format!("brute-two-trees n={n} m={}", g.edge_count());
    let count = spanning_tree_count(g)?;
    if count > 250_000 {
        return Err(Error::Precondition(format!(
            "spanning-tree count {count} exceeds the enumeration guard of 250000"
        )));
    }
    let mut enumerated = 0u64;
    let mut chosen: Vec<EdgeId> = Vec::with_capacity(n - 1);
    let witness = enumerate_trees(g, 0, &mut chosen, &mut enumerated);
    if let Some(ref pair) = witness {
        assert!(is_spanning_tree(g, &pair.tree_i) && is_spanning_tree(g, &pair.tree_o));
        let overlap = pair.tree_i.iter().any(|e| pair.tree_o.contains(e));
        assert!(!overlap);
    }
    Ok(OracleReport { query, verdict: witness.is_some(), witness, enumerated })
}

/// Depth-first spanning-tree enumeration (include/exclude on ascending edge
/// ids); returns the first tree whose complement is connected.
fn enumerate_trees(
    g: &Graph,
    next_edge: EdgeId,
    chosen: &mut Vec<EdgeId>,
    enumerated: &mut u64,
) -> Option<TreePair> {
    let n = g.vertex_count();
    if chosen.len() == n - 1 {
        *enumerated += 1;
        if !is_spanning_tree(g, chosen) {
            return None;
        }
        // Complement connectivity, then a greedy complement tree.
        let complement: Vec<EdgeId> =
            (0..g.edge_count()).filter(|e| !chosen.contains(e)).collect();
        let mut dsu: Vec<usize> = (0..n).collect();
        fn find(dsu: &mut Vec<usize>, v: usize) -> usize {
            if dsu[v] != v {
                let r = find(dsu, dsu[v]);
                dsu[v] = r;
            }
            dsu[v]
        }
        let mut comp_tree = Vec::with_capacity(n - 1);
        for &e in &complement {
            let (u, v) = g.endpoints(e);
            let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
            if ru != rv {
                dsu[ru.max(rv)] = ru.min(rv);
                comp_tree.push(e);
            }
        }
        if comp_tree.len() == n - 1 {
            return Some(TreePair { tree_i: chosen.clone(), tree_o: comp_tree });
        }
        return None;
    }
    if next_edge >= g.edge_count()
        || chosen.len() + (g.edge_count() - next_edge) < n - 1
    {
        return None;
    }
    // Include next_edge if it keeps the selection acyclic.
    let (u, v) = g.endpoints(next_edge);
    let mut dsu: Vec<usize> = (0..n).collect();
    fn find2(dsu: &mut Vec<usize>, v: usize) -> usize {
        if dsu[v] != v {
            let r = find2(dsu, dsu[v]);
            dsu[v] = r;
        }
        dsu[v]
    }
    for &e in chosen.iter() {
        let (a, b) = g.endpoints(e);
        let (ra, rb) = (find2(&mut dsu, a), find2(&mut dsu, b));
        dsu[ra.max(rb)] = ra.min(rb);
    }
    if find2(&mut dsu, u) != find2(&mut dsu, v) {
        chosen.push(next_edge);
        if let Some(pair) = enumerate_trees(g, next_edge + 1, chosen, enumerated) {
            return Some(pair);
        }
        chosen.pop();
    }
    enumerate_trees(g, next_edge + 1, chosen, enumerated)
}

// ────────────────────────────────────────────────────────────────────────────
// Branchings by exhaustive arc selection
// ────────────────────────────────────────────────────────────────────────────

/// Searches for an out-branching from `s` arc-disjoint from an in-branching
/// to `t` by enumerating all selections (one entering arc per vertex ≠ s,
/// one leaving arc per vertex ≠ t, all distinct) in lexicographic order and
/// validating each complete selection.
///
/// Guards: at most 8 vertices, at most 64 arcs.
pub fn brute_branchings(
    d: &Orientation,
    s: VertexId,
    t: VertexId,
) -> Result<OracleReport<BranchingPair>> {
    let n = d.vertex_count();
    if n > 8 {
        return Err(Error::Precondition(format!(
            "selection enumeration is guarded at n <= 8 (got {n})"
        )));
    }
    if d.arc_count() > 64 {
        return Err(Error::Precondition("selection enumeration is guarded at 64 arcs".into()));
    }
    if s >= n || t >= n || s == t {
        return Err(Error::Precondition("s and t must be distinct vertices".into()));
    }
    let query = format!("brute-branchings n={n} arcs={} s={s} t={t}", d.arc_count());
    // One slot per demand: entering arcs for v ≠ s, then leaving arcs for
    // u ≠ t; candidates ascending.
    let mut slots: Vec<Vec<EdgeId>> = Vec::new();
    let mut kinds: Vec<bool> = Vec::new(); // true = entering slot
    for v in 0..n {
        if v != s {
            slots.push(d.in_arcs(v).into_iter().map(|(e, _)| e).collect());
            kinds.push(true);
        }
    }
    for u in 0..n {
        if u != t {
            slots.push(d.out_arcs(u).into_iter().map(|(e, _)| e).collect());
            kinds.push(false);
        }
    }
    let mut picked: Vec<EdgeId> = vec![0; slots.len()];
    let mut enumerated = 0u64;
    let witness = select_arcs(d, s, t, &slots, &kinds, 0, 0u64, &mut picked, &mut enumerated);
    if let Some(ref pair) = witness {
        assert!(validate_branching_pair(d, s, t, pair));
    }
    Ok(OracleReport { query, verdict: witness.is_some(), witness, enumerated })
}

#[allow(clippy::too_many_arguments)]
fn select_arcs(
    d: &Orientation,
    s: VertexId,
    t: VertexId,
    slots: &[Vec<EdgeId>],
    kinds: &[bool],
    depth: usize,
    used: u64,
    picked: &mut Vec<EdgeId>,
    enumerated: &mut u64,
) -> Option<BranchingPair> {
    if depth == slots.len() {
        *enumerated += 1;
        let mut out_branching: Vec<EdgeId> = picked
            .iter()
            .zip(kinds)
            .filter_map(|(&e, &k)| k.then_some(e))
            .collect();
        let mut in_branching: Vec<EdgeId> = picked
            .iter()
            .zip(kinds)
            .filter_map(|(&e, &k)| (!k).then_some(e))
            .collect();
        out_branching.sort_unstable();
        in_branching.sort_unstable();
        let pair = BranchingPair { out_branching, in_branching };
        return validate_branching_pair(d, s, t, &pair).then_some(pair);
    }
    for &e in &slots[depth] {
        if used >> e & 1 == 1 {
            continue;
        }
        picked[depth] = e;
        if let Some(pair) =
            select_arcs(d, s, t, slots, kinds, depth + 1, used | 1 << e, picked, enumerated)
        {
            return Some(pair);
        }
    }
    None
}

// ────────────────────────────────────────────────────────────────────────────
// Tests
// ────────────────────────────────────────────────────────────────────────────

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_graph, orient_by_ordering};

    fn k4() -> Graph {
        build_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Two complete graphs on 4 vertices sharing vertex 0.
    fn glued_k4s() -> Graph {
        build_graph(
            7,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (0, 5),
                (0, 6),
                (4, 5),
                (4, 6),
                (5, 6),
            ],
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

    #[test]
    fn k4_has_a_triple_for_the_first_pair() {
        let report = brute_triple(&k4(), 0, 3).unwrap();
        assert!(report.verdict);
        let tr = report.witness.unwrap();
        assert!(validate_triple(&k4(), &tr));
        // The identity order works, so exactly one order is examined.
        assert_eq!(report.enumerated, 1);
        assert_eq!(tr.order, vec![0, 1, 2, 3]);
    }

    #[test]
    fn k4_has_triples_for_all_ordered_pairs() {
        let g = k4();
        for s in 0..4 {
            for t in 0..4 {
                if s != t {
                    assert!(brute_triple(&g, s, t).unwrap().verdict, "pair ({s},{t})");
                }
            }
        }
    }

    /// Two K4s glued at vertex 0 fail "a triple for every pair": pairs
    /// inside one summand (or touching the glue vertex) have none, because
    /// the other summand would need its first and last vertex to both be
    /// the glue vertex.  Pairs split across the summands do have triples,
    /// assembled from (s,0)- and (0,t)-triples of the two K4s.
    #[test]
    fn glued_k4s_have_triples_exactly_for_cross_summand_pairs() {
        let g = glued_k4s();
        for s in 0..7 {
            for t in 0..7 {
                if s == t {
                    continue;
                }
                let cross = s != 0
                    && t != 0
                    && ((s <= 3) != (t <= 3));
                let report = brute_triple(&g, s, t).unwrap();
                assert_eq!(report.verdict, cross, "pair ({s},{t})");
                if !cross {
                    assert_eq!(report.enumerated, 120);
                }
            }
        }
    }

    #[test]
    fn path_admits_no_triple() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(!brute_triple(&g, 0, 2).unwrap().verdict);
    }

    #[test]
    fn triple_guard_rejects_large_graphs() {
        let edges: Vec<(usize, usize)> =
            (0..11).flat_map(|u| (u + 1..11).map(move |v| (u, v))).collect();
        let g = build_graph(11, &edges).unwrap();
        assert!(brute_triple(&g, 0, 1).is_err());
    }

    #[test]
    fn k5_minus_2matching_has_no_proper_subquartic() {
        let g = build_graph(
            5,
            &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap();
        let report = brute_subquartics(&g).unwrap();
        assert!(!report.verdict);
        assert_eq!(report.witness.unwrap(), vec![]);
    }

    #[test]
    fn sum_of_two_k4s_has_exactly_the_two_summands() {
        let report = brute_subquartics(&sum_of_two_k4s()).unwrap();
        let records = report.witness.unwrap();
        assert_eq!(records.len(), 2);
        assert_eq!(records[0].vertices, vec![0, 1, 2, 3]);
        assert_eq!(records[0].boundary, vec![12, 13]);
        assert!(records[0].is_matching);
        assert_eq!(records[0].transits, vec![0, 1, 2, 3]);
        assert_eq!(records[1].vertices, vec![4, 5, 6, 7]);
        assert_eq!(records[1].boundary, vec![12, 13]);
        assert!(records[1].is_matching);
    }

    #[test]
    fn k4_has_no_proper_subquartic() {
        assert!(!brute_subquartics(&k4()).unwrap().verdict);
    }

    #[test]
    fn subquartic_guard_rejects_large_graphs() {
        let g = build_graph(17, &(0..16).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        assert!(brute_subquartics(&g).is_err());
    }

    #[test]
    fn tree_counts_match_known_values() {
        assert_eq!(spanning_tree_count(&k4()).unwrap(), 16);
        let c4 = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(spanning_tree_count(&c4).unwrap(), 4);
        let two_cycle = build_graph(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(spanning_tree_count(&two_cycle).unwrap(), 2);
        let disconnected = build_graph(3, &[(0, 1)]).unwrap();
        assert_eq!(spanning_tree_count(&disconnected).unwrap(), 0);
    }

    #[test]
    fn k4_splits_into_two_trees() {
        let report = brute_two_trees(&k4()).unwrap();
        assert!(report.verdict);
        let pair = report.witness.unwrap();
        assert_eq!(pair.tree_i, vec![0, 1, 4]);
        assert_eq!(pair.tree_o, vec![2, 3, 5]);
    }

    #[test]
    fn four_cycle_has_no_tree_pair() {
        let c4 = build_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let report = brute_two_trees(&c4).unwrap();
        assert!(!report.verdict);
        assert_eq!(report.enumerated, 4);
    }

    #[test]
    fn parallel_pair_is_two_trees() {
        let g = build_graph(2, &[(0, 1), (0, 1)]).unwrap();
        let pair = brute_two_trees(&g).unwrap().witness.unwrap();
        assert_eq!(pair.tree_i, vec![0]);
        assert_eq!(pair.tree_o, vec![1]);
    }

    #[test]
    fn transitive_tournament_has_branchings() {
        let d = orient_by_ordering(&k4(), &[0, 1, 2, 3]).unwrap();
        let report = brute_branchings(&d, 0, 3).unwrap();
        assert!(report.verdict);
        let pair = report.witness.unwrap();
        assert_eq!(pair.out_branching, vec![0, 1, 4]);
        assert_eq!(pair.in_branching, vec![2, 3, 5]);
    }

    #[test]
    fn directed_path_has_no_branchings() {
        let g = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let d = orient_by_ordering(&g, &[0, 1, 2]).unwrap();
        assert!(!brute_branchings(&d, 0, 2).unwrap().verdict);
    }

    #[test]
    fn wrong_source_has_no_branchings() {
        let d = orient_by_ordering(&k4(), &[0, 1, 2, 3]).unwrap();
        assert!(!brute_branchings(&d, 1, 3).unwrap().verdict);
    }

    #[test]
    fn branchings_guard_rejects_large_digraphs() {
        let g = build_graph(9, &(0..8).map(|i| (i, i + 1)).collect::<Vec<_>>()).unwrap();
        let d = orient_by_ordering(&g, &(0..9).collect::<Vec<_>>()).unwrap();
        assert!(brute_branchings(&d, 0, 8).is_err());
    }
}
