//! Deterministic generators for named graphs, quartic compositions, and
//! seeded random test families.

use crate::graph::{build_graph, connectivity_at_least, ConnectivityMode, Graph, VertexId};
use crate::quartic::{as_quartic, QuarticInfo};
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// A reproducible recipe: family name, integer parameters, and a seed for
/// the random families.  The same spec always yields the identical edge
/// list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: String,
    #[serde(default)]
    pub params: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// The complete graph on `n` vertices.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidInput("complete graph needs at least one vertex".into()));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build_graph(n, &edges)
}

/// The wheel with `k` rim vertices: hub 0 joined to the cycle 1..=k.
pub fn wheel(k: usize) -> Result<Graph> {
    if k < 4 {
        return Err(Error::InvalidInput("wheel needs at least 4 rim vertices".into()));
    }
    let mut edges = Vec::with_capacity(2 * k);
    for i in 1..=k {
        edges.push((0, i));
    }
    for i in 1..k {
        edges.push((i, i + 1));
    }
    edges.push((k, 1));
    build_graph(k + 1, &edges)
}

/// The complete bipartite graph with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidInput("both sides must be non-empty".into()));
    }
    let mut edges = Vec::with_capacity(a * b);
    for u in 0..a {
        for v in 0..b {
            edges.push((u, a + v));
        }
    }
    build_graph(a + b, &edges)
}

/// The circulant graph on `n` vertices with the given step set.
pub fn circulant(n: usize, steps: &[usize]) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidInput("circulant needs at least 3 vertices".into()));
    }
    if steps.is_empty() || steps.iter().any(|&s| s == 0 || s >= n) {
        return Err(Error::InvalidInput("steps must lie in 1..n".into()));
    }
    let mut seen = std::collections::HashSet::new();
    let mut edges = Vec::new();
    for i in 0..n {
        for &s in steps {
            let j = (i + s) % n;
            if i == j {
                continue;
            }
            let key = (i.min(j), i.max(j));
            if seen.insert(key) {
                edges.push(key);
            }
        }
    }
    build_graph(n, &edges)
}

/// Two cliques on ⌈n/2⌉ vertices sharing the single vertex 0: the dense
/// exception family.  `n` must be odd so the halves match up.
pub fn identified_cliques(n: usize) -> Result<Graph> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "identified cliques need an odd vertex count of at least 3".into(),
        ));
    }
    let k = n.div_ceil(2);
    let first: Vec<VertexId> = (0..k).collect();
    let second: Vec<VertexId> = std::iter::once(0).chain(k..n).collect();
    let mut edges = Vec::new();
    for part in [first, second] {
        for i in 0..part.len() {
            for j in i + 1..part.len() {
                edges.push((part[i], part[j]));
            }
        }
    }
    build_graph(n, &edges)
}

/// K5 minus the 2-matching {0−1, 2−3}: the smallest quartic that is not a
/// sum.
pub fn k5_minus_2matching() -> Graph {
    build_graph(
        5,
        &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 4), (3, 4)],
    )
    .expect("fixed edge list")
}

/// Joins two quartics into their sum: disjoint union plus the edges `a`–`c`
/// and `b`–`d`.  All four named vertices must be transits; the result is a
/// quartic whose transits are the four that were left alone.
pub fn sum_graph(
    q: &QuarticInfo,
    r: &QuarticInfo,
    a: VertexId,
    b: VertexId,
    c: VertexId,
    d: VertexId,
) -> Result<Graph> {
    if a == b || c == d {
        return Err(Error::Precondition("join vertices must be distinct transits".into()));
    }
    for (label, info, v) in [("a", q, a), ("b", q, b), ("c", r, c), ("d", r, d)] {
        if !info.transits.contains(&v) {
            return Err(Error::Precondition(format!("{label}={v} is not a transit")));
        }
    }
    let off = q.graph.vertex_count();
    let mut edges: Vec<(VertexId, VertexId)> =
        q.graph.edge_records().map(|(_, e)| e).collect();
    edges.extend(r.graph.edge_records().map(|(_, (u, v))| (u + off, v + off)));
    edges.push((a, c + off));
    edges.push((b, d + off));
    let g = build_graph(off + r.graph.vertex_count(), &edges)?;
    let info = as_quartic(&g)?;
    let mut expected: Vec<VertexId> = q
        .transits
        .iter()
        .filter(|&&v| v != a && v != b)
        .copied()
        .chain(r.transits.iter().filter(|&&v| v != c && v != d).map(|&v| v + off))
        .collect();
    expected.sort_unstable();
    assert_eq!(info.transits, expected, "sum transits must be the untouched four");
    Ok(g)
}

/// Three disjoint copies of a quartic plus four hub vertices, each hub
/// joined to the same-ranked transit of every copy.  The result is a
/// quartic whose transits are the hubs and whose natural quotient is the
/// complete bipartite circuit on 3+4 vertices.
pub fn hub_join(q: &QuarticInfo) -> Result<Graph> {
    let n = q.graph.vertex_count();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for copy in 0..3 {
        let off = copy * n;
        edges.extend(q.graph.edge_records().map(|(_, (u, v))| (u + off, v + off)));
    }
    for (rank, &tr) in q.transits.iter().enumerate() {
        let hub = 3 * n + rank;
        for copy in 0..3 {
            edges.push((hub, copy * n + tr));
        }
    }
    let g = build_graph(3 * n + 4, &edges)?;
    let info = as_quartic(&g)?;
    let hubs: Vec<VertexId> = (3 * n..3 * n + 4).collect();
    assert_eq!(info.transits, hubs, "hub join transits must be the hubs");
    Ok(g)
}

/// Five disjoint copies of a quartic arranged in a ring: the first two
/// transits of copy `i` are joined to the last two of copy `i+1` (mod 5).
/// The result is 4-regular on five times the vertices.
pub fn ring_join(q: &QuarticInfo) -> Result<Graph> {
    let n = q.graph.vertex_count();
    let [a, b, c, d] = q.transits[..] else {
        return Err(Error::Precondition("input must have exactly four transits".into()));
    };
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    for copy in 0..5 {
        let off = copy * n;
        edges.extend(q.graph.edge_records().map(|(_, (u, v))| (u + off, v + off)));
    }
    for copy in 0..5usize {
        let here = copy * n;
        let next = ((copy + 1) % 5) * n;
        edges.push((here + a, next + c));
        edges.push((here + b, next + d));
    }
    let g = build_graph(5 * n, &edges)?;
    debug_assert!((0..g.vertex_count()).all(|v| g.degree(v) == 4));
    Ok(g)
}

/// A seeded random simple 4-regular 4-connected graph on `n` vertices via
/// the pairing model with rejection.  The edge list is sorted, so the
/// output depends only on the accepted pairing, not its discovery order.
pub fn random_4r4c(n: usize, seed: u64) -> Result<Graph> {
    if n < 5 {
        return Err(Error::InvalidInput(
            "no simple 4-regular graph on fewer than 5 vertices".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const ATTEMPTS: usize = 5_000;
    for _ in 0..ATTEMPTS {
        // Four pairing points per vertex, matched up two at a time.
        let mut points: Vec<VertexId> = (0..n).flat_map(|v| [v, v, v, v]).collect();
        points.shuffle(&mut rng);
        let mut edges: Vec<(VertexId, VertexId)> = points
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        edges.sort_unstable();
        let simple = edges.windows(2).all(|w| w[0] != w[1]) && edges.iter().all(|&(u, v)| u != v);
        if !simple {
            continue;
        }
        let g = build_graph(n, &edges)?;
        if connectivity_at_least(&g, 4, ConnectivityMode::Vertex) {
            return Ok(g);
        }
    }
    Err(Error::SearchFailed(format!(
        "no 4-regular 4-connected graph on {n} vertices found in {ATTEMPTS} attempts"
    )))
}

/// Looks up a deterministic named family.
pub fn named(family: &str, params: &[usize]) -> Result<Graph> {
    let want = |count: usize| -> Result<()> {
        if params.len() == count {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "family {family} takes {count} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match family {
        "complete" => {
            want(1)?;
            complete(params[0])
        }
        "wheel" => {
            want(1)?;
            wheel(params[0])
        }
        "complete-bipartite" => {
            want(2)?;
            complete_bipartite(params[0], params[1])
        }
        "circulant" => {
            if params.len() < 2 {
                return Err(Error::InvalidInput(
                    "circulant takes a vertex count and at least one step".into(),
                ));
            }
            circulant(params[0], &params[1..])
        }
        "identified-cliques" => {
            want(1)?;
            identified_cliques(params[0])
        }
        "k5-minus-2matching" => {
            want(0)?;
            Ok(k5_minus_2matching())
        }
        "sum-2k4" => {
            want(0)?;
            let k4 = as_quartic(&complete(4)?)?;
            sum_graph(&k4, &k4, 0, 1, 0, 1)
        }
        "hub-join" => {
            want(0)?;
            hub_join(&as_quartic(&k5_minus_2matching())?)
        }
        "ring-join" => {
            want(0)?;
            ring_join(&as_quartic(&k5_minus_2matching())?)
        }
        other => Err(Error::InvalidInput(format!("unknown family: {other}"))),
    }
}

/// Materialises a [`GeneratorSpec`], covering both the named families and
/// the seeded random ones.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    match spec.family.as_str() {
        "random-4r4c" => {
            if spec.params.len() != 1 {
                return Err(Error::InvalidInput(
                    "random-4r4c takes exactly one parameter (n)".into(),
                ));
            }
            random_4r4c(spec.params[0], spec.seed.unwrap_or(0))
        }
        _ => named(&spec.family, &spec.params),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparsity::is_generic_circuit;

    #[test]
    fn complete_graph_small_cases() {
        assert_eq!(complete(1).unwrap().edge_count(), 0);
        let k4 = complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(
            k4.edge_records().map(|(_, e)| e).collect::<Vec<_>>(),
            vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        );
        assert!(complete(0).is_err());
    }

    #[test]
    fn wheels_are_generic_circuits() {
        let w4 = wheel(4).unwrap();
        assert_eq!(w4.vertex_count(), 5);
        assert_eq!(w4.edge_count(), 8);
        for k in 4..=8 {
            assert!(is_generic_circuit(&wheel(k).unwrap()), "wheel({k})");
        }
        assert!(wheel(3).is_err());
    }

    #[test]
    fn bipartite_3_4_is_a_generic_circuit() {
        let g = complete_bipartite(3, 4).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 12);
        assert!(is_generic_circuit(&g));
        assert!(complete_bipartite(0, 4).is_err());
    }

    #[test]
    fn circulant_with_two_steps_is_4_regular_4_connected() {
        let g = circulant(8, &[1, 2]).unwrap();
        assert!((0..8).all(|v| g.degree(v) == 4));
        assert!(connectivity_at_least(&g, 4, ConnectivityMode::Vertex));
        // Dense degenerate case: steps cover everything.
        let k5 = circulant(5, &[1, 2]).unwrap();
        assert_eq!(k5.edge_count(), 10);
        assert!(circulant(8, &[0]).is_err());
        assert!(circulant(2, &[1]).is_err());
    }

    #[test]
    fn identified_cliques_shapes() {
        let g = identified_cliques(7).unwrap();
        assert_eq!(g.vertex_count(), 7);
        assert_eq!(g.edge_count(), 12);
        assert_eq!(g.degree(0), 6);
        assert!((1..7).all(|v| g.degree(v) == 3));
        let h = identified_cliques(9).unwrap();
        assert_eq!(h.edge_count(), 20);
        assert_eq!(h.degree(0), 8);
        assert!(identified_cliques(4).is_err());
        assert!(identified_cliques(1).is_err());
    }

    #[test]
    fn k5_minus_matching_is_the_expected_quartic() {
        let info = as_quartic(&k5_minus_2matching()).unwrap();
        assert_eq!(info.transits, vec![0, 1, 2, 3]);
    }

    #[test]
    fn sum_of_two_k4s_matches_the_hand_built_graph() {
        let k4 = as_quartic(&complete(4).unwrap()).unwrap();
        let g = sum_graph(&k4, &k4, 0, 1, 0, 1).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 14);
        let info = as_quartic(&g).unwrap();
        assert_eq!(info.transits, vec![2, 3, 6, 7]);
        // The join edges land at the end of the list.
        assert_eq!(g.endpoints(12), (0, 4));
        assert_eq!(g.endpoints(13), (1, 5));
    }

    #[test]
    fn iterated_sums_stay_quartic() {
        let k4 = as_quartic(&complete(4).unwrap()).unwrap();
        let once = as_quartic(&sum_graph(&k4, &k4, 0, 1, 0, 1).unwrap()).unwrap();
        let twice = as_quartic(&sum_graph(&once, &k4, 2, 6, 0, 1).unwrap()).unwrap();
        assert_eq!(twice.graph.vertex_count(), 12);
        assert_eq!(twice.transits, vec![3, 7, 10, 11]);
    }

    #[test]
    fn sum_rejects_bad_join_vertices() {
        let k4 = as_quartic(&complete(4).unwrap()).unwrap();
        assert!(sum_graph(&k4, &k4, 0, 0, 1, 2).is_err());
        let k5m = as_quartic(&k5_minus_2matching()).unwrap();
        // 4 has degree four in K5 minus a matching: not a transit.
        let err = sum_graph(&k5m, &k4, 4, 0, 0, 1).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains("not a transit")));
    }

    #[test]
    fn hub_join_of_the_k5_variant() {
        let q = as_quartic(&k5_minus_2matching()).unwrap();
        let g = hub_join(&q).unwrap();
        assert_eq!(g.vertex_count(), 19);
        let info = as_quartic(&g).unwrap();
        assert_eq!(info.transits, vec![15, 16, 17, 18]);
        // Quotient by copies + hub singletons is the bipartite circuit.
        let mut blocks: Vec<Vec<VertexId>> =
            (0..3).map(|c| (5 * c..5 * (c + 1)).collect()).collect();
        for hub in 15..19 {
            blocks.push(vec![hub]);
        }
        let p = crate::graph::Partition::new(19, blocks).unwrap();
        let quot = crate::graph::quotient(&g, &p).unwrap();
        let qg = quot.as_graph();
        assert_eq!(qg.vertex_count(), 7);
        assert_eq!(qg.edge_count(), 12);
        assert!(is_generic_circuit(qg));
        let mut degrees: Vec<usize> = (0..7).map(|v| qg.degree(v)).collect();
        degrees.sort_unstable();
        assert_eq!(degrees, vec![3, 3, 3, 3, 4, 4, 4]);
    }

    #[test]
    fn ring_join_of_the_k5_variant() {
        let q = as_quartic(&k5_minus_2matching()).unwrap();
        let g = ring_join(&q).unwrap();
        assert_eq!(g.vertex_count(), 25);
        assert_eq!(g.edge_count(), 50);
        assert!((0..25).all(|v| g.degree(v) == 4));
    }

    #[test]
    fn ring_join_survives_any_2_matching_removal() {
        let q = as_quartic(&k5_minus_2matching()).unwrap();
        let g = ring_join(&q).unwrap();
        let copy_of = |v: VertexId| v / 5;
        let mut checked = 0usize;
        for e in 0..g.edge_count() {
            for f in e + 1..g.edge_count() {
                let (a, b) = g.endpoints(e);
                let (c, d) = g.endpoints(f);
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let touched: std::collections::HashSet<usize> =
                    [a, b, c, d].iter().map(|&v| copy_of(v)).collect();
                assert!(touched.len() < 5, "some copy must stay untouched");
                checked += 1;
            }
        }
        assert!(checked > 1000);
    }

    #[test]
    fn random_family_hits_the_unique_5_vertex_graph() {
        for seed in [0u64, 1, 42] {
            let g = random_4r4c(5, seed).unwrap();
            assert_eq!(g.edge_count(), 10);
            assert_eq!(
                g.edge_records().map(|(_, e)| e).collect::<Vec<_>>(),
                complete(5).unwrap().edge_records().map(|(_, e)| e).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn random_family_is_deterministic_and_validated() {
        let a = random_4r4c(12, 1).unwrap();
        let b = random_4r4c(12, 1).unwrap();
        assert_eq!(
            a.edge_records().collect::<Vec<_>>(),
            b.edge_records().collect::<Vec<_>>()
        );
        assert!((0..12).all(|v| a.degree(v) == 4));
        assert!(connectivity_at_least(&a, 4, ConnectivityMode::Vertex));
        assert!(random_4r4c(4, 0).is_err());
    }

    #[test]
    fn named_dispatch_and_spec_round_trip() {
        assert_eq!(named("wheel", &[5]).unwrap().vertex_count(), 6);
        assert!(named("wheel", &[]).is_err());
        assert!(named("mystery", &[3]).is_err());
        let spec = GeneratorSpec {
            family: "random-4r4c".into(),
            params: vec![10],
            seed: Some(7),
        };
        let a = generate(&spec).unwrap();
        let b = generate(&spec).unwrap();
        assert_eq!(
            a.edge_records().collect::<Vec<_>>(),
            b.edge_records().collect::<Vec<_>>()
        );
        let json = serde_json::to_string(&spec).unwrap();
        let back: GeneratorSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
    }
}
