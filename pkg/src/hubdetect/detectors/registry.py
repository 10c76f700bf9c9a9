"""The 19-method registry: ids, grouping, directions and factories."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable

from ..errors import ConfigError
from .base import HubDetector
from .mdl import MdlDetector
from .strength import DEFAULT_TAU, StrengthDetector
from .threshold import (
    DEFAULT_CROP_QUANTILE,
    DEFAULT_THRESHOLD_QUANTILE,
    ArcanDetector,
    AvgDegreeDetector,
    LoubarDetector,
)

GROUPS = ("incoming", "outgoing", "all")


@dataclass(frozen=True)
class MethodSpec:
    method_id: str
    group: str
    direction: str
    build: Callable[..., HubDetector] = field(compare=False)


def _spec(method_id, group, direction, build) -> MethodSpec:
    return MethodSpec(method_id, group, direction, build)


_SPECS = (
    # incoming connections
    _spec("Avg_in", "incoming", "in", lambda: AvgDegreeDetector("in")),
    _spec("Loubar_in", "incoming", "in", lambda: LoubarDetector("in")),
    _spec("CM_in", "incoming", "in", lambda: MdlDetector("CM", "in")),
    _spec("ER_in", "incoming", "in", lambda: MdlDetector("ER", "in")),
    _spec("Cl.&In-degree", "incoming", "in", lambda **kw: StrengthDetector("in_degree_c", **kw)),
    _spec("Cl.&Authority", "incoming", "in", lambda **kw: StrengthDetector("authority_score", **kw)),
    _spec("Cl.&Eigenvector", "incoming", "in", lambda **kw: StrengthDetector("eigenvector", **kw)),
    # outgoing connections
    _spec("Avg_out", "outgoing", "out", lambda: AvgDegreeDetector("out")),
    _spec("Loubar_out", "outgoing", "out", lambda: LoubarDetector("out")),
    _spec("CM_out", "outgoing", "out", lambda: MdlDetector("CM", "out")),
    _spec("ER_out", "outgoing", "out", lambda: MdlDetector("ER", "out")),
    _spec("Cl.&Out-degree", "outgoing", "out", lambda **kw: StrengthDetector("out_degree_c", **kw)),
    _spec("Cl.&Hub", "outgoing", "out", lambda **kw: StrengthDetector("hub_score", **kw)),
    # all connections
    _spec("Cl.&Degree", "all", "all", lambda **kw: StrengthDetector("degree_c", **kw)),
    _spec("Arcan_abs", "all", "all", lambda **kw: ArcanDetector("abs", **kw)),
    _spec("Arcan_norm", "all", "all", lambda **kw: ArcanDetector("norm", **kw)),
    _spec("Cl.&Betweenness", "all", "all", lambda **kw: StrengthDetector("betweenness", **kw)),
    _spec("Cl.&Closeness", "all", "all", lambda **kw: StrengthDetector("closeness", **kw)),
    _spec("Cl.&PageRank", "all", "all", lambda **kw: StrengthDetector("pagerank", **kw)),
)

METHODS: dict[str, MethodSpec] = {s.method_id: s for s in _SPECS}
METHOD_ORDER: tuple[str, ...] = tuple(s.method_id for s in _SPECS)
METHOD_GROUPS: dict[str, tuple[str, ...]] = {
    grp: tuple(s.method_id for s in _SPECS if s.group == grp) for grp in GROUPS
}

_STRENGTH_IDS = frozenset(m for m in METHOD_ORDER if m.startswith("Cl.&"))
_ARCAN_IDS = frozenset(("Arcan_abs", "Arcan_norm"))


def method_spec(method_id: str) -> MethodSpec:
    try:
        return METHODS[method_id]
    except KeyError:
        raise ConfigError(f"unknown method id {method_id!r}") from None


def method_direction(method_id: str) -> str:
    return method_spec(method_id).direction


def method_group(method_id: str) -> str:
    return method_spec(method_id).group


def build_detector(
    method_id: str,
    crop_quantile: float = DEFAULT_CROP_QUANTILE,
    threshold_quantile: float = DEFAULT_THRESHOLD_QUANTILE,
    tau: float | dict[str, float] = DEFAULT_TAU,
) -> HubDetector:
    """Instantiate the detector behind a registry id.

    ``tau`` may be a single cut or a map from strength method id to cut.
    """
    spec = method_spec(method_id)
    if method_id in _ARCAN_IDS:
        return spec.build(
            crop_quantile=crop_quantile, threshold_quantile=threshold_quantile
        )
    if method_id in _STRENGTH_IDS:
        if isinstance(tau, dict):
            cut = tau.get(method_id, DEFAULT_TAU)
        else:
            cut = tau
        return spec.build(tau=cut)
    return spec.build()


def slug(method_id: str) -> str:
    """Filename-safe form of a method id (``Cl.&In-degree`` -> ``cl_in_degree``)."""
    s = method_id.replace("&", "_").replace(".", "")
    s = re.sub(r"[^A-Za-z0-9]+", "_", s).strip("_").lower()
    return s
