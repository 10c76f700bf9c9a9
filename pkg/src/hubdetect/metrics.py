"""Node-level metrics: degree family, centralities, HITS, clustering.

Conventions (chosen to match the standard network-analysis toolkit the
corpus data format comes from):

* closeness uses incoming distances with component scaling — a node's
  score reflects how quickly the rest of the graph reaches it;
* eigenvector centrality is the left principal eigenvector, i.e. a
  node's score is fed by its in-neighbors;
* clustering on directed graphs counts directed triangles against the
  maximum possible given in/out/reciprocal degrees (an undirected
  projection is available for sensitivity checks).

All centrality and clustering values lie in [0, 1]; raw degrees are
non-negative integers.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx

from .errors import ConvergenceError, DegenerateGraphError
from .sdg import Sdg

DEGREE_IDS = ("degree", "in_degree", "out_degree")
DEGREE_C_IDS = ("degree_c", "in_degree_c", "out_degree_c")
CENTRALITY_IDS = DEGREE_C_IDS + (
    "betweenness",
    "closeness",
    "eigenvector",
    "pagerank",
    "hub_score",
    "authority_score",
)
METRIC_IDS = DEGREE_IDS + CENTRALITY_IDS + ("clustering",)

_DIRECTION_TO_DEGREE = {"total": "degree", "in": "in_degree", "out": "out_degree"}
_DIRECTION_TO_DEGREE_C = {"total": "degree_c", "in": "in_degree_c", "out": "out_degree_c"}

DEFAULT_TOL = 1e-8
DEFAULT_MAX_ITER = 1000


@dataclass(frozen=True)
class MetricVector:
    """One named metric evaluated on every node of a graph."""

    metric_id: str
    values: dict[str, float]

    def __getitem__(self, node: str) -> float:
        return self.values[node]


def _degree_maps(g: Sdg) -> tuple[dict[str, int], dict[str, int]]:
    # sorted node order so downstream dict iteration is process-stable
    nodes = g.sorted_nodes()
    indeg = {n: 0 for n in nodes}
    outdeg = {n: 0 for n in nodes}
    for src, dst in g.sorted_edges():
        outdeg[src] += 1
        indeg[dst] += 1
    return indeg, outdeg


def _check_direction(direction: str) -> None:
    if direction not in ("in", "out", "total"):
        raise ValueError(f"direction must be 'in', 'out' or 'total', got {direction!r}")


def degrees(g: Sdg, direction: str = "total") -> MetricVector:
    """Raw connection counts per node for the given direction."""
    _check_direction(direction)
    indeg, outdeg = _degree_maps(g)
    if direction == "in":
        values = dict(indeg)
    elif direction == "out":
        values = dict(outdeg)
    else:
        values = {n: indeg[n] + outdeg[n] for n in indeg}
    return MetricVector(_DIRECTION_TO_DEGREE[direction], values)


def degree_centrality(g: Sdg, direction: str = "total") -> MetricVector:
    """Degree divided by the N-1 possible connections."""
    _check_direction(direction)
    if g.n_nodes < 2:
        raise DegenerateGraphError(
            f"{g.system_id}: degree centrality needs at least 2 nodes"
        )
    raw = degrees(g, direction)
    denom = g.n_nodes - 1
    values = {n: v / denom for n, v in raw.values.items()}
    return MetricVector(_DIRECTION_TO_DEGREE_C[direction], values)


def betweenness(g: Sdg) -> MetricVector:
    """Directed shortest-path betweenness, normalized by (N-1)(N-2)."""
    values = nx.betweenness_centrality(g.to_networkx(), normalized=True)
    return MetricVector("betweenness", dict(values))


def closeness(g: Sdg) -> MetricVector:
    """Incoming-distance closeness with disconnected-component scaling.

    ``closeness(v) = (r / (N-1)) * (r / sum_d)`` where ``r`` counts the
    nodes that reach v and ``sum_d`` is the total distance from them;
    unreachable nodes score 0.
    """
    values = nx.closeness_centrality(g.to_networkx())
    return MetricVector("closeness", dict(values))


def eigenvector(
    g: Sdg, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> MetricVector:
    """Left principal eigenvector by power iteration, unit Euclidean norm."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    try:
        values = nx.eigenvector_centrality(g.to_networkx(), max_iter=max_iter, tol=tol)
    except nx.PowerIterationFailedConvergence as exc:
        raise ConvergenceError(
            f"{g.system_id}: eigenvector centrality did not converge "
            f"within {max_iter} iterations"
        ) from exc
    return MetricVector("eigenvector", dict(values))


def pagerank(
    g: Sdg,
    damping: float = 0.85,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> MetricVector:
    """PageRank with uniform redistribution of dangling-node mass."""
    if not 0.0 < damping < 1.0:
        raise ValueError("damping must be in (0, 1)")
    try:
        values = nx.pagerank(g.to_networkx(), alpha=damping, tol=tol, max_iter=max_iter)
    except nx.PowerIterationFailedConvergence as exc:
        raise ConvergenceError(
            f"{g.system_id}: pagerank did not converge within {max_iter} iterations"
        ) from exc
    return MetricVector("pagerank", dict(values))


def hits(
    g: Sdg, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> tuple[MetricVector, MetricVector]:
    """Coupled hub/authority scores, each vector normalized to sum 1."""
    if g.n_edges == 0:
        raise DegenerateGraphError(f"{g.system_id}: HITS needs at least one edge")
    nodes = g.sorted_nodes()
    preds: dict[str, list[str]] = {n: [] for n in nodes}
    succs: dict[str, list[str]] = {n: [] for n in nodes}
    for src, dst in g.sorted_edges():
        succs[src].append(dst)
        preds[dst].append(src)

    h = {n: 1.0 / len(nodes) for n in nodes}
    for _ in range(max_iter):
        a = {n: sum(h[u] for u in preds[n]) for n in nodes}
        a_sum = sum(a.values())
        a = {n: v / a_sum for n, v in a.items()}
        h_new = {n: sum(a[v] for v in succs[n]) for n in nodes}
        h_sum = sum(h_new.values())
        h_new = {n: v / h_sum for n, v in h_new.items()}
        err = sum(abs(h_new[n] - h[n]) for n in nodes)
        h = h_new
        if err < tol:
            return MetricVector("hub_score", h), MetricVector("authority_score", a)
    raise ConvergenceError(
        f"{g.system_id}: HITS did not converge within {max_iter} iterations"
    )


def clustering(g: Sdg, projection: str = "directed") -> MetricVector:
    """Clustering coefficient per node.

    The directed form divides the directed triangles through a node by
    the maximum possible given its in-, out- and reciprocal degrees;
    ``projection="undirected"`` collapses edge direction first.
    """
    if projection == "directed":
        values = nx.clustering(g.to_networkx())
    elif projection == "undirected":
        values = nx.clustering(g.to_networkx().to_undirected())
    else:
        raise ValueError(f"projection must be 'directed' or 'undirected', got {projection!r}")
    return MetricVector("clustering", {n: float(v) for n, v in values.items()})


def compute_metric(
    g: Sdg,
    metric_id: str,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> MetricVector:
    """Evaluate any metric of the registry by id."""
    if metric_id in DEGREE_IDS:
        direction = {"degree": "total", "in_degree": "in", "out_degree": "out"}[metric_id]
        return degrees(g, direction)
    if metric_id in DEGREE_C_IDS:
        direction = {"degree_c": "total", "in_degree_c": "in", "out_degree_c": "out"}[metric_id]
        return degree_centrality(g, direction)
    if metric_id == "betweenness":
        return betweenness(g)
    if metric_id == "closeness":
        return closeness(g)
    if metric_id == "eigenvector":
        return eigenvector(g, tol=tol, max_iter=max_iter)
    if metric_id == "pagerank":
        return pagerank(g, tol=tol, max_iter=max_iter)
    if metric_id == "hub_score":
        return hits(g, tol=tol, max_iter=max_iter)[0]
    if metric_id == "authority_score":
        return hits(g, tol=tol, max_iter=max_iter)[1]
    if metric_id == "clustering":
        return clustering(g)
    raise ValueError(f"unknown metric id {metric_id!r}")


def metrics_tsv_lines(corpus) -> list[str]:
    """TSV dump of every metric for every node: system, node, metric, value."""
    lines = ["system\tnode\tmetric_id\tvalue"]
    for g in corpus:
        vectors = [compute_metric(g, mid) for mid in METRIC_IDS]
        for mv in vectors:
            for node in g.sorted_nodes():
                lines.append(f"{g.system_id}\t{node}\t{mv.metric_id}\t{mv.values[node]:.17g}")
    return lines
