"""Synthetic graph generators used for oracle tests and demo corpora.

Every generator is a pure function of its parameters and, for stochastic
kinds, a mandatory integer seed. Two calls with identical arguments
return identical graphs.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import ConfigError
from .sdg import Sdg
from .scalefree import sample_discrete_powerlaw

STOCHASTIC_KINDS = ("er_random", "planted_hubs", "powerlaw_sequence")
KINDS = ("star", "cycle") + STOCHASTIC_KINDS


def _node_ids(n: int) -> list[str]:
    width = max(3, len(str(n - 1)))
    return [f"n{i:0{width}d}" for i in range(n)]


def star(n_leaves: int, direction: str = "out", system_id: str | None = None) -> Sdg:
    """Star graph: one center connected to ``n_leaves`` leaves.

    ``direction="out"`` points center -> leaf, ``"in"`` points leaf -> center.
    """
    if n_leaves < 1:
        raise ConfigError("star: n_leaves must be >= 1")
    if direction not in ("out", "in"):
        raise ConfigError(f"star: bad direction {direction!r}")
    ids = _node_ids(n_leaves + 1)
    center, leaves = ids[0], ids[1:]
    if direction == "out":
        edges = [(center, leaf) for leaf in leaves]
    else:
        edges = [(leaf, center) for leaf in leaves]
    return Sdg.from_parts(system_id or f"star{n_leaves}", ids, edges)


def cycle(n: int, system_id: str | None = None) -> Sdg:
    """Directed cycle on ``n >= 2`` nodes."""
    if n < 2:
        raise ConfigError("cycle: n must be >= 2")
    ids = _node_ids(n)
    edges = [(ids[i], ids[(i + 1) % n]) for i in range(n)]
    return Sdg.from_parts(system_id or f"cycle{n}", ids, edges)


def er_random(n: int, p: float, seed: int, system_id: str | None = None) -> Sdg:
    """Directed Erdős–Rényi G(n, p): each ordered pair is an edge with prob p."""
    if n < 2:
        raise ConfigError("er_random: n must be >= 2")
    if not 0.0 <= p <= 1.0:
        raise ConfigError("er_random: p must be in [0, 1]")
    rng = np.random.default_rng(seed)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    ids = _node_ids(n)
    edges = [(ids[i], ids[j]) for i, j in np.argwhere(mask)]
    return Sdg.from_parts(system_id or f"er{n}_{seed}", ids, edges)


class PlantedGraph(NamedTuple):
    """A random graph plus the ground-truth hub set planted into it."""

    sdg: Sdg
    hubs: frozenset[str]


def planted_hubs(
    n: int,
    n_hubs: int,
    p: float,
    seed: int,
    direction: str = "in",
    boost: float = 6.0,
    system_id: str | None = None,
) -> PlantedGraph:
    """ER background with ``n_hubs`` nodes forced to anomalously high degree.

    Each planted hub receives at least ``boost * p * (n - 1)`` connections
    in the given direction, and never less than five times the realized
    mean degree of the background nodes, so planted hubs are genuine
    outliers of the degree sequence by construction.
    """
    if n < 4:
        raise ConfigError("planted_hubs: n must be >= 4")
    if not 1 <= n_hubs <= n // 4:
        raise ConfigError("planted_hubs: n_hubs must be in [1, n/4]")
    if direction not in ("in", "out"):
        raise ConfigError(f"planted_hubs: bad direction {direction!r}")
    if not 0.0 < p < 1.0 or boost * p > 0.9:
        raise ConfigError("planted_hubs: need 0 < p < 1 and boost*p <= 0.9")

    rng = np.random.default_rng(seed)
    ids = _node_ids(n)
    mask = rng.random((n, n)) < p
    np.fill_diagonal(mask, False)
    hub_idx = sorted(rng.choice(n, size=n_hubs, replace=False).tolist())
    hub_set = {ids[i] for i in hub_idx}

    # Degree of node j in the planted direction, counting current edges.
    def planted_degree(j: int) -> int:
        return int(mask[:, j].sum()) if direction == "in" else int(mask[j, :].sum())

    def add_edges(j: int, count: int) -> None:
        # attach `count` new distinct partners to node j in the planted direction
        col = mask[:, j] if direction == "in" else mask[j, :]
        free = [i for i in range(n) if i != j and not col[i]]
        chosen = rng.choice(len(free), size=min(count, len(free)), replace=False)
        for c in chosen:
            i = free[int(c)]
            if direction == "in":
                mask[i, j] = True
            else:
                mask[j, i] = True

    target = math.ceil(boost * p * (n - 1))
    for j in hub_idx:
        add_edges(j, max(0, target - planted_degree(j)))

    # Adding edges incident to hubs never changes background degrees in the
    # planted direction, so one top-up pass suffices.
    background = [j for j in range(n) if j not in hub_idx]
    mean_bg = sum(planted_degree(j) for j in background) / len(background)
    floor = math.ceil(5.0 * mean_bg)
    for j in hub_idx:
        add_edges(j, max(0, floor - planted_degree(j)))

    edges = [(ids[i], ids[j]) for i, j in np.argwhere(mask)]
    sdg = Sdg.from_parts(system_id or f"planted{n}_{seed}", ids, edges)
    return PlantedGraph(sdg=sdg, hubs=frozenset(hub_set))


def powerlaw_sequence(alpha: float, xmin: int, n: int, seed: int) -> list[int]:
    """Sample ``n`` degrees from a discrete power law with exponent alpha."""
    if alpha <= 1.0:
        raise ConfigError("powerlaw_sequence: alpha must be > 1")
    if xmin < 1:
        raise ConfigError("powerlaw_sequence: xmin must be >= 1")
    if n < 1:
        raise ConfigError("powerlaw_sequence: n must be >= 1")
    rng = np.random.default_rng(seed)
    return sample_discrete_powerlaw(alpha, xmin, n, rng).tolist()


def gen_synthetic(kind: str, params: dict, seed: int | None = None):
    """Dispatch generator used by the CLI ``gen`` subcommand.

    Returns an :class:`Sdg` (or a degree list for ``powerlaw_sequence``,
    or a :class:`PlantedGraph` for ``planted_hubs``).
    """
    if kind not in KINDS:
        raise ConfigError(f"unknown synthetic kind {kind!r}; choose from {KINDS}")
    if kind in STOCHASTIC_KINDS and seed is None:
        raise ConfigError(f"{kind}: seed is mandatory for stochastic generators")
    params = dict(params)
    try:
        if kind == "star":
            return star(**params)
        if kind == "cycle":
            return cycle(**params)
        if kind == "er_random":
            return er_random(seed=seed, **params)
        if kind == "planted_hubs":
            return planted_hubs(seed=seed, **params)
        return powerlaw_sequence(seed=seed, **params)
    except TypeError as exc:
        raise ConfigError(f"{kind}: bad parameters {sorted(params)}: {exc}") from exc
