import itertools
import math

import numpy as np
import pytest

from hubdetect.errors import ConvergenceError, DegenerateGraphError
from hubdetect.generate import er_random, star
from hubdetect.metrics import (
    CENTRALITY_IDS,
    METRIC_IDS,
    betweenness,
    closeness,
    clustering,
    compute_metric,
    degree_centrality,
    degrees,
    eigenvector,
    hits,
    metrics_tsv_lines,
    pagerank,
)
from hubdetect.sdg import Corpus, Sdg

# ---------------------------------------------------------------------------
# brute-force oracles (independent of networkx)


def brute_betweenness(g: Sdg) -> dict[str, float]:
    """All-simple-path enumeration betweenness; only viable for tiny graphs."""
    nodes = g.sorted_nodes()
    succ = {n: [] for n in nodes}
    for s, t in g.sorted_edges():
        succ[s].append(t)

    def all_paths(src, dst):
        out = []

        def walk(node, seen, path):
            if node == dst:
                out.append(list(path))
                return
            for nxt in succ[node]:
                if nxt not in seen:
                    walk(nxt, seen | {nxt}, path + [nxt])

        walk(src, {src}, [src])
        return out

    bc = {n: 0.0 for n in nodes}
    for s, t in itertools.permutations(nodes, 2):
        paths = all_paths(s, t)
        if not paths:
            continue
        shortest = min(len(p) for p in paths)
        minimal = [p for p in paths if len(p) == shortest]
        for v in nodes:
            if v in (s, t):
                continue
            through = sum(1 for p in minimal if v in p)
            bc[v] += through / len(minimal)
    n = len(nodes)
    scale = 1.0 / ((n - 1) * (n - 2)) if n > 2 else 1.0
    return {v: bc[v] * scale for v in nodes}


def brute_clustering(g: Sdg) -> dict[str, float]:
    """Directed clustering via adjacency-matrix powers (Fagiolo)."""
    nodes = g.sorted_nodes()
    idx = {n: i for i, n in enumerate(nodes)}
    n = len(nodes)
    a = np.zeros((n, n))
    for s, t in g.sorted_edges():
        a[idx[s], idx[t]] = 1.0
    sym = a + a.T
    tri = np.diagonal(sym @ sym @ sym)  # 2x the directed triangles through i
    d_tot = a.sum(axis=0) + a.sum(axis=1)
    d_bi = np.diagonal(a @ a)
    out = {}
    for v in nodes:
        i = idx[v]
        denom = 2.0 * (d_tot[i] * (d_tot[i] - 1) - 2.0 * d_bi[i])
        out[v] = tri[i] / denom if denom > 0 else 0.0
    return out


def random_small(seed: int, n: int = 7, p: float = 0.35) -> Sdg:
    return er_random(n, p, seed=seed, system_id=f"small{seed}")


# ---------------------------------------------------------------------------
# degrees


def test_degrees_path(path3):
    assert degrees(path3, "total").values["b"] == 2
    assert degrees(path3, "in").values["b"] == 1
    assert degrees(path3, "out").values["b"] == 1


def test_degrees_star(star5):
    d = degrees(star5, "out").values
    center = max(d, key=d.get)
    assert d[center] == 4
    assert degrees(star5, "in").values[center] == 0


def test_degree_centrality_path(path3):
    assert degree_centrality(path3, "total").values["b"] == pytest.approx(1.0)
    assert degree_centrality(path3, "in").values["b"] == pytest.approx(0.5)


def test_degree_centrality_hand_division():
    # degree 8 in a 13-node graph
    nodes = [f"n{i}" for i in range(13)]
    edges = [("n0", f"n{i}") for i in range(1, 9)]
    g = Sdg.from_parts("t", nodes, edges)
    assert degree_centrality(g, "total").values["n0"] == pytest.approx(8 / 12)


def test_degree_centrality_single_node_degenerate():
    g = Sdg.from_parts("one", ["a"], [])
    with pytest.raises(DegenerateGraphError):
        degree_centrality(g, "total")


def test_degree_centrality_exact_ratio():
    g = random_small(3)
    n = g.n_nodes
    for direction in ("in", "out", "total"):
        raw = degrees(g, direction).values
        cent = degree_centrality(g, direction).values
        for node in g.sorted_nodes():
            assert cent[node] == raw[node] / (n - 1)


# ---------------------------------------------------------------------------
# betweenness


def test_betweenness_path(path3):
    assert betweenness(path3).values["b"] == pytest.approx(0.5)
    assert betweenness(path3).values["a"] == 0.0


def test_betweenness_cycle_symmetry(triangle):
    vals = set(betweenness(triangle).values.values())
    assert len(vals) == 1


@pytest.mark.parametrize("seed", range(6))
def test_betweenness_brute_force(seed):
    g = random_small(seed)
    got = betweenness(g).values
    want = brute_betweenness(g)
    for v in g.sorted_nodes():
        assert got[v] == pytest.approx(want[v], abs=1e-9)


# ---------------------------------------------------------------------------
# closeness


def test_closeness_path(path3):
    assert closeness(path3).values["c"] == pytest.approx(2 / 3)
    assert closeness(path3).values["a"] == 0.0  # nothing reaches a


def test_closeness_complete_digraph():
    nodes = list("abcd")
    edges = [(u, v) for u in nodes for v in nodes if u != v]
    g = Sdg.from_parts("k4", nodes, edges)
    assert all(v == pytest.approx(1.0) for v in closeness(g).values.values())


# ---------------------------------------------------------------------------
# eigenvector


def test_eigenvector_cycle(triangle):
    vals = eigenvector(triangle).values
    for v in vals.values():
        assert v == pytest.approx(1 / math.sqrt(3), abs=1e-6)


def test_eigenvector_dense_oracle():
    # strongly connected: ring + random chords
    rng = np.random.default_rng(11)
    n = 20
    nodes = [f"v{i:02d}" for i in range(n)]
    edges = {(nodes[i], nodes[(i + 1) % n]) for i in range(n)}
    while len(edges) < 70:
        i, j = rng.integers(0, n, size=2)
        if i != j:
            edges.add((nodes[i], nodes[j]))
    g = Sdg.from_parts("sc", nodes, sorted(edges))

    got = eigenvector(g, tol=1e-10, max_iter=5000).values
    idx = {v: i for i, v in enumerate(nodes)}
    a = np.zeros((n, n))
    for s, t in g.sorted_edges():
        a[idx[s], idx[t]] = 1.0
    w, vecs = np.linalg.eig(a.T)  # left eigenvector of A
    k = int(np.argmax(w.real))
    vec = np.abs(vecs[:, k].real)
    vec /= np.linalg.norm(vec)
    for v in nodes:
        assert got[v] == pytest.approx(vec[idx[v]], abs=1e-6)


def test_eigenvector_nonconvergence_is_signaled(path3):
    # nilpotent adjacency: power iteration cannot settle
    with pytest.raises(ConvergenceError):
        eigenvector(path3, max_iter=50)


# ---------------------------------------------------------------------------
# pagerank


def test_pagerank_two_cycle(two_cycle):
    vals = pagerank(two_cycle).values
    assert vals["a"] == pytest.approx(0.5)
    assert vals["b"] == pytest.approx(0.5)


def test_pagerank_single_node():
    g = Sdg.from_parts("one", ["a"], [])
    assert pagerank(g).values["a"] == pytest.approx(1.0)


def test_pagerank_sums_to_one():
    g = random_small(4, n=10, p=0.25)
    assert sum(pagerank(g).values.values()) == pytest.approx(1.0, abs=1e-9)


def test_pagerank_dangling_oracle():
    # independent power iteration with uniform dangling redistribution
    g = random_small(8, n=10, p=0.2)
    nodes = g.sorted_nodes()
    idx = {v: i for i, v in enumerate(nodes)}
    n = len(nodes)
    a = np.zeros((n, n))
    for s, t in g.sorted_edges():
        a[idx[s], idx[t]] = 1.0
    out_deg = a.sum(axis=1)
    d = 0.85
    x = np.full(n, 1.0 / n)
    for _ in range(10000):
        flow = np.zeros(n)
        for i in range(n):
            if out_deg[i] > 0:
                flow += d * x[i] * a[i] / out_deg[i]
            else:
                flow += d * x[i] / n
        x_new = flow + (1 - d) / n
        if np.abs(x_new - x).sum() < 1e-13:
            x = x_new
            break
        x = x_new
    got = pagerank(g).values
    for v in nodes:
        assert got[v] == pytest.approx(x[idx[v]], abs=1e-8)


# ---------------------------------------------------------------------------
# HITS


def test_hits_star(star5):
    hub, auth = hits(star5)
    center = max(degrees(star5, "out").values, key=degrees(star5, "out").values.get)
    assert hub.values[center] == pytest.approx(1.0)
    leaves = [n for n in star5.sorted_nodes() if n != center]
    for leaf in leaves:
        assert auth.values[leaf] == pytest.approx(0.25)


def test_hits_two_cycle(two_cycle):
    hub, auth = hits(two_cycle)
    assert hub.values["a"] == pytest.approx(0.5)
    assert auth.values["b"] == pytest.approx(0.5)


def test_hits_complete_bipartite():
    sources, sinks = ["s1", "s2"], ["t1", "t2", "t3"]
    edges = [(s, t) for s in sources for t in sinks]
    g = Sdg.from_parts("bip", sources + sinks, edges)
    hub, auth = hits(g)
    for s in sources:
        assert hub.values[s] == pytest.approx(0.5)
        assert auth.values[s] == pytest.approx(0.0)
    for t in sinks:
        assert auth.values[t] == pytest.approx(1 / 3)
        assert hub.values[t] == pytest.approx(0.0)


def test_hits_sums_to_one():
    g = random_small(9, n=12, p=0.3)
    hub, auth = hits(g)
    assert sum(hub.values.values()) == pytest.approx(1.0, abs=1e-9)
    assert sum(auth.values.values()) == pytest.approx(1.0, abs=1e-9)


def test_hits_zero_edges_degenerate():
    g = Sdg.from_parts("none", ["a", "b"], [])
    with pytest.raises(DegenerateGraphError):
        hits(g)


# ---------------------------------------------------------------------------
# clustering


def test_clustering_star_center(star5):
    vals = clustering(star5).values
    assert all(v == 0.0 for v in vals.values())


def test_clustering_directed_clique(clique3):
    vals = clustering(clique3).values
    assert all(v == pytest.approx(1.0) for v in vals.values())


@pytest.mark.parametrize("seed", range(6))
def test_clustering_brute_force(seed):
    g = random_small(seed, n=8, p=0.4)
    got = clustering(g).values
    want = brute_clustering(g)
    for v in g.sorted_nodes():
        assert got[v] == pytest.approx(want[v], abs=1e-9)


def test_clustering_undirected_projection(clique3):
    vals = clustering(clique3, projection="undirected").values
    assert all(v == pytest.approx(1.0) for v in vals.values())


# ---------------------------------------------------------------------------
# cross-cutting properties


def test_centralities_within_unit_interval():
    g = random_small(12, n=10, p=0.3)
    for mid in CENTRALITY_IDS + ("clustering",):
        mv = compute_metric(g, mid)
        for v in mv.values.values():
            assert -1e-12 <= v <= 1.0 + 1e-12, (mid, v)


def test_metric_vectors_cover_all_nodes():
    g = random_small(13, n=9, p=0.3)
    for mid in METRIC_IDS:
        mv = compute_metric(g, mid)
        assert set(mv.values) == g.nodes


def test_relabeling_invariance():
    g = random_small(14, n=8, p=0.35)
    mapping = {n: f"renamed_{i}" for i, n in enumerate(sorted(g.nodes, reverse=True))}
    g2 = Sdg.from_parts(
        g.system_id, [mapping[n] for n in g.nodes],
        [(mapping[s], mapping[t]) for s, t in g.edges],
    )
    for mid in ("degree", "in_degree_c", "betweenness", "closeness", "pagerank", "clustering"):
        orig = compute_metric(g, mid).values
        perm = compute_metric(g2, mid).values
        for n in g.nodes:
            assert perm[mapping[n]] == pytest.approx(orig[n], abs=1e-12)


def test_compute_metric_unknown_id(path3):
    with pytest.raises(ValueError):
        compute_metric(path3, "nope")


def test_metrics_tsv_roundtrip():
    g = random_small(2, n=8, p=0.4)  # cyclic enough for every metric to converge
    lines = metrics_tsv_lines(Corpus([g]))
    assert lines[0] == "system\tnode\tmetric_id\tvalue"
    assert len(lines) == 1 + len(METRIC_IDS) * g.n_nodes
    # 17 significant digits reparse to the exact double
    want = betweenness(g).values
    rows = [l.split("\t") for l in lines[1:]]
    for _, node, mid, value in rows:
        if mid == "betweenness":
            assert float(value) == want[node]
