"""Centrality-minus-clustering "strength" detectors (the Cl.& family).

Strength = centrality - clustering coefficient, computed per node with
both terms in [0, 1], so strength lands in [-1, 1]. High centrality with
low clustering marks a node whose neighborhood depends on it without
being interconnected itself. Classification keeps nodes with strength at
or above a cut ``tau``.

Total degree centrality is rescaled here to degree / (2(N-1)) -- the
count of possible in- plus out-connections -- because the raw metric
tops out at 2 and strength must stay within [-1, 1]. The directional
variants are already bounded by 1.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConfigError, InsufficientDataError
from ..metrics import CENTRALITY_IDS, clustering, compute_metric
from ..sdg import Corpus, NodeKey
from .base import HubDetector, HubSet, as_corpus

#: Stand-in cut for an unpublished calibration; tune per corpus.
DEFAULT_TAU = 0.5

#: centrality metric -> (method id, hub-set direction)
STRENGTH_METHODS = {
    "in_degree_c": ("Cl.&In-degree", "in"),
    "authority_score": ("Cl.&Authority", "in"),
    "eigenvector": ("Cl.&Eigenvector", "in"),
    "out_degree_c": ("Cl.&Out-degree", "out"),
    "hub_score": ("Cl.&Hub", "out"),
    "degree_c": ("Cl.&Degree", "all"),
    "betweenness": ("Cl.&Betweenness", "all"),
    "closeness": ("Cl.&Closeness", "all"),
    "pagerank": ("Cl.&PageRank", "all"),
}


@dataclass(frozen=True)
class StrengthRecord:
    system_id: str
    node_id: str
    centrality_metric_id: str
    centrality: float
    clustering: float
    strength: float

    @property
    def key(self) -> NodeKey:
        return (self.system_id, self.node_id)


def strength_table(
    corpus: Corpus,
    centrality_metric_id: str,
    tol: float = 1e-8,
    max_iter: int = 1000,
) -> list[StrengthRecord]:
    """Per-node strength records, sorted by strength descending.

    Ties break by (system_id, node_id) so the table order is total.
    """
    if centrality_metric_id not in CENTRALITY_IDS:
        raise ConfigError(
            f"unknown centrality metric {centrality_metric_id!r}; "
            f"expected one of {sorted(CENTRALITY_IDS)}"
        )
    records = []
    # total degree centrality spans [0, 2]; halve it so strength stays
    # within [-1, 1]
    scale = 0.5 if centrality_metric_id == "degree_c" else 1.0
    for g in corpus.graphs:
        cent = compute_metric(g, centrality_metric_id, tol=tol, max_iter=max_iter)
        clus = clustering(g)
        for n in g.sorted_nodes():
            c, cc = scale * float(cent.values[n]), float(clus.values[n])
            records.append(
                StrengthRecord(
                    system_id=g.system_id,
                    node_id=n,
                    centrality_metric_id=centrality_metric_id,
                    centrality=c,
                    clustering=cc,
                    strength=c - cc,
                )
            )
    records.sort(key=lambda r: (-r.strength, r.system_id, r.node_id))
    return records


def strength_classify(records: list[StrengthRecord], tau: float = DEFAULT_TAU) -> HubSet:
    """Members are records with strength >= tau (inclusive)."""
    if not -1.0 <= tau <= 1.0:
        raise ConfigError(f"tau must lie in [-1, 1], got {tau}")
    if not records:
        raise InsufficientDataError("no strength records to classify")
    metric_ids = {r.centrality_metric_id for r in records}
    if len(metric_ids) != 1:
        raise ConfigError(f"mixed centrality metrics in records: {sorted(metric_ids)}")
    method_id, direction = STRENGTH_METHODS[metric_ids.pop()]
    chosen = [r for r in records if r.strength >= tau]
    return HubSet(
        method_id,
        direction,
        frozenset(r.key for r in chosen),
        {r.key: r.strength for r in chosen},
    )


def strength_csv_lines(records: list[StrengthRecord]) -> list[str]:
    """Scatter-ready export: one row per node, strength-sorted."""
    lines = ["system,node,centrality,clustering,strength"]
    for r in records:
        lines.append(
            f"{r.system_id},{r.node_id},"
            f"{r.centrality:.17g},{r.clustering:.17g},{r.strength:.17g}"
        )
    return lines


class StrengthDetector(HubDetector):
    """Centrality-minus-clustering detector for one centrality metric.

    After ``fit`` the full table is available as ``records_``.
    """

    def __init__(
        self,
        centrality: str = "eigenvector",
        tau: float = DEFAULT_TAU,
        tol: float = 1e-8,
        max_iter: int = 1000,
    ):
        self.centrality = centrality
        self.tau = tau
        self.tol = tol
        self.max_iter = max_iter

    @property
    def method_id(self) -> str:
        return STRENGTH_METHODS[self.centrality][0]

    @property
    def hub_direction(self) -> str:
        return STRENGTH_METHODS[self.centrality][1]

    def fit(self, X, y=None):
        corpus = as_corpus(X)
        self.records_ = strength_table(
            corpus, self.centrality, tol=self.tol, max_iter=self.max_iter
        )
        hs = strength_classify(self.records_, self.tau)
        self.members_ = hs.members
        self.hub_set_ = hs
        self.n_detected_ = len(hs)
        return self
