"""MDL hub detection with Erdos-Renyi and configuration-model encodings.

A two-part code describes the graph's direction-degree sequence given a
candidate hub count ``h``. Writing ``N`` for nodes, ``E`` for edges,
``E_H`` for the degree mass of the ``h`` highest-degree nodes,
``E_0 = E - E_H`` and ``n_0 = N - h``, the shared part is (natural log):

    L(h) = ln(N+1) + ln C(N, h) + ln(E+1) + ln C(E_H + h - 1, h - 1)

i.e. the hub count, the hub identities, the hub degree mass and its split
among the hubs (weak compositions). The remainder encodes non-hub degrees:

    ER: ln C(E_0 + n_0 - 1, n_0 - 1)            (any split among n_0 nodes)
    CM: ln P(E_0, <= n_0 parts) + ln(n_0! / prod_d c_d!)

where ``P`` counts integer partitions and ``c_d`` is the number of
non-hub nodes with degree ``d``. The CM form prices the degree multiset
as a partition plus a node assignment, which is cheaper exactly when the
non-hub degrees are concentrated on few distinct values.

The optimal hub count ``h*`` minimizes ``L(h)`` over ``h in [0, N]``;
ties resolve to the smaller ``h``. Hubs are the ``h*`` nodes with the
highest direction degree, breaking degree ties by node id. Both
encodings are parameter free. Description lengths are reported in bits.

Partition counts use an exact big-integer DP, O(min(N, E) * E) time and
O(E) memory, which is comfortable at service-dependency-graph scale.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

from scipy.special import gammaln

from ..errors import ConfigError
from ..metrics import degrees
from ..sdg import Corpus, NodeKey, Sdg
from .base import HubDetector

ENCODINGS = ("ER", "CM")

_LN2 = math.log(2.0)


def _ln_choose(n: int, k: int) -> float:
    if k < 0 or k > n:
        return math.inf
    return float(gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1))


def _ln_compositions(total: int, parts: int) -> float:
    """ln of the number of weak compositions of ``total`` into ``parts``."""
    if parts == 0:
        return 0.0 if total == 0 else math.inf
    return _ln_choose(total + parts - 1, parts - 1)


def _partition_lns(queries: list[tuple[int, int]], max_total: int) -> list[float]:
    """ln P(total, <= bound parts) for each query, via one rolled DP.

    Partitions into at most ``b`` parts equal partitions into parts of
    size at most ``b`` (conjugation), so one pass over part sizes with a
    rolling array answers every query at the step j = min(bound, total).
    """
    j_of = [min(b, t) for t, b in queries]
    dp = [0] * (max_total + 1)
    dp[0] = 1
    out = [0.0] * len(queries)
    pending: dict[int, list[int]] = {}
    for i, j in enumerate(j_of):
        pending.setdefault(j, []).append(i)
    max_j = max(j_of, default=0)
    for j in range(0, max_j + 1):
        if j > 0:
            for m in range(j, max_total + 1):
                dp[m] += dp[m - j]
        for i in pending.get(j, ()):
            count = dp[queries[i][0]]
            out[i] = math.log(count) if count > 0 else math.inf
    return out


@dataclass(frozen=True)
class MdlResult:
    """Description-length minimization outcome for one graph."""

    encoding: str
    direction: str
    h_star: int
    members: frozenset[str]
    dl_curve: tuple[tuple[int, float], ...]  # (h, bits), h = 0..N

    @property
    def dl_star(self) -> float:
        return self.dl_curve[self.h_star][1]


def _check_args(encoding: str, direction: str) -> None:
    if encoding not in ENCODINGS:
        raise ConfigError(f"encoding must be one of {ENCODINGS}, got {encoding!r}")
    if direction not in ("in", "out"):
        raise ConfigError(f"direction must be 'in' or 'out', got {direction!r}")


def mdl_hubs(g: Sdg, encoding: str, direction: str) -> MdlResult:
    """Minimize the two-part description length over the hub count."""
    _check_args(encoding, direction)
    degs = degrees(g, direction).values
    order = sorted(g.nodes, key=lambda n: (-degs[n], n))
    k = [degs[n] for n in order]
    n_nodes, n_edges = g.n_nodes, g.n_edges

    # degree mass of the top-h nodes, for every h
    mass = [0] * (n_nodes + 1)
    for h in range(n_nodes):
        mass[h + 1] = mass[h] + k[h]

    base = math.log(n_nodes + 1) + math.log(n_edges + 1)
    curve_nat = []
    if encoding == "CM":
        queries = [(n_edges - mass[h], n_nodes - h) for h in range(n_nodes + 1)]
        part_lns = _partition_lns(queries, n_edges)
        tail = Counter(k)
        assign_sum = float(sum(gammaln(c + 1) for c in tail.values()))
    for h in range(n_nodes + 1):
        e_hub = mass[h]
        e_rest = n_edges - e_hub
        n_rest = n_nodes - h
        ln_l = base + _ln_choose(n_nodes, h) + _ln_compositions(e_hub, h)
        if encoding == "ER":
            ln_l += _ln_compositions(e_rest, n_rest)
        else:
            ln_l += part_lns[h]
            ln_l += float(gammaln(n_rest + 1)) - assign_sum
            if h < n_nodes:  # shift node h from tail to hub side
                c = tail[k[h]]
                assign_sum += float(gammaln(c) - gammaln(c + 1))
                tail[k[h]] = c - 1
        curve_nat.append(ln_l)

    # first argmin; gammaln roundoff can perturb exact ties (e.g. the
    # edgeless graph, where h=0 and h=N cost the same), so ties are
    # resolved toward smaller h up to a relative tolerance
    h_star = 0
    for h in range(1, n_nodes + 1):
        if curve_nat[h] < curve_nat[h_star] - 1e-9 * max(1.0, curve_nat[h_star]):
            h_star = h
    curve_bits = tuple((h, v / _LN2) for h, v in enumerate(curve_nat))
    return MdlResult(
        encoding=encoding,
        direction=direction,
        h_star=h_star,
        members=frozenset(order[:h_star]),
        dl_curve=curve_bits,
    )


def dl_curve(g: Sdg, encoding: str, direction: str) -> list[tuple[int, float]]:
    """Description length in bits at every hub count ``h = 0..N``."""
    return list(mdl_hubs(g, encoding, direction).dl_curve)


def dl_curve_csv_lines(g: Sdg, encoding: str, direction: str) -> list[str]:
    lines = ["h,bits"]
    for h, bits in dl_curve(g, encoding, direction):
        lines.append(f"{h},{bits:.17g}")
    return lines


class MdlDetector(HubDetector):
    """Per-graph MDL minimization pooled over a corpus (ER_* / CM_*).

    After ``fit``, per-system outcomes are in ``results_`` keyed by
    system id.
    """

    def __init__(self, encoding: str = "ER", direction: str = "in"):
        self.encoding = encoding
        self.direction = direction

    @property
    def method_id(self) -> str:
        return f"{self.encoding}_{self.direction}"

    @property
    def hub_direction(self) -> str:
        return self.direction

    def _detect(self, corpus: Corpus):
        _check_args(self.encoding, self.direction)
        members: set[NodeKey] = set()
        scores: dict[NodeKey, float] = {}
        results: dict[str, MdlResult] = {}
        for g in corpus.graphs:
            res = mdl_hubs(g, self.encoding, self.direction)
            results[g.system_id] = res
            degs = degrees(g, self.direction).values
            for n in res.members:
                members.add((g.system_id, n))
                scores[(g.system_id, n)] = float(degs[n])
        self.results_ = results
        return members, scores
