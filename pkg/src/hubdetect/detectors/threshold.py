"""Quartile/threshold detector family: Avg, Loubar and the Arcan variants.

Avg and Loubar threshold one graph at a time on a direction degree;
Arcan pools a degree metric over the whole corpus, crops the low tail
and thresholds what is left.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DegenerateGraphError, InsufficientDataError
from ..metrics import degree_centrality, degrees
from ..sdg import Corpus, NodeKey, Sdg
from .base import HubDetector, HubSet, as_corpus

#: Crop the bottom quartile before thresholding. Stand-in for a
#: calibrated value; tune against a reference corpus before comparing
#: absolute counts across tools.
DEFAULT_CROP_QUANTILE = 0.25
DEFAULT_THRESHOLD_QUANTILE = 0.75

_ARCAN_METRIC = {"abs": "degree", "norm": "degree_c"}


def _check_direction(direction: str) -> None:
    if direction not in ("in", "out"):
        raise ConfigError(f"direction must be 'in' or 'out', got {direction!r}")


def avg_hubs(g: Sdg, direction: str) -> HubSet:
    """Nodes whose direction degree strictly exceeds the graph mean E/N."""
    _check_direction(direction)
    mean = g.n_edges / g.n_nodes
    degs = degrees(g, direction).values
    members = {(g.system_id, n) for n, d in degs.items() if d > mean}
    scores = {(g.system_id, n): float(degs[n]) for _, n in members}
    return HubSet(f"Avg_{direction}", direction, frozenset(members), scores)


def loubar_hubs(g: Sdg, direction: str) -> HubSet:
    """Loubar threshold: hub iff degree > quantile at 1 - mean/max.

    The quantile uses linear interpolation between order statistics
    (numpy's default), i.e. the value at fractional position q*(n-1).
    """
    _check_direction(direction)
    degs = degrees(g, direction).values
    values = np.array([degs[n] for n in g.sorted_nodes()], dtype=float)
    kmax = values.max()
    if kmax == 0:
        raise DegenerateGraphError(
            f"{g.system_id}: all {direction}-degrees are zero, Loubar undefined"
        )
    q = 1.0 - values.mean() / kmax
    threshold = float(np.quantile(values, q))
    members = {(g.system_id, n) for n, d in degs.items() if d > threshold}
    scores = {(g.system_id, n): float(degs[n]) for _, n in members}
    return HubSet(f"Loubar_{direction}", direction, frozenset(members), scores)


@dataclass(frozen=True)
class ThresholdResult:
    """Arcan-style two-stage threshold over a pooled metric."""

    metric_id: str
    crop_quantile: float
    threshold_quantile: float
    threshold: float
    cropped_count: int  # values discarded by the crop stage


def arcan_threshold(
    values: list[float],
    crop_quantile: float = DEFAULT_CROP_QUANTILE,
    threshold_quantile: float = DEFAULT_THRESHOLD_QUANTILE,
    metric_id: str = "degree",
) -> ThresholdResult:
    """Crop values at or below the crop quantile, threshold the rest.

    The threshold is the ``threshold_quantile`` quantile of the surviving
    values. A constant sequence has no low tail, so it passes through the
    crop untouched and the threshold is that constant. Raises if the crop
    leaves nothing to threshold.
    """
    if not 0.0 <= crop_quantile < threshold_quantile <= 1.0:
        raise ConfigError(
            f"need 0 <= crop_quantile < threshold_quantile <= 1, "
            f"got {crop_quantile} and {threshold_quantile}"
        )
    if not values:
        raise InsufficientDataError("no metric values to threshold")
    arr = np.asarray(values, dtype=float)
    if arr.min() == arr.max():
        return ThresholdResult(
            metric_id=metric_id,
            crop_quantile=crop_quantile,
            threshold_quantile=threshold_quantile,
            threshold=float(arr[0]),
            cropped_count=0,
        )
    cut = float(np.quantile(arr, crop_quantile))
    remainder = arr[arr > cut]
    if remainder.size == 0:
        raise InsufficientDataError(
            f"crop at quantile {crop_quantile} removed all {arr.size} values"
        )
    threshold = float(np.quantile(remainder, threshold_quantile))
    return ThresholdResult(
        metric_id=metric_id,
        crop_quantile=crop_quantile,
        threshold_quantile=threshold_quantile,
        threshold=threshold,
        cropped_count=int(arr.size - remainder.size),
    )


def _arcan_values(corpus: Corpus, mode: str) -> dict[NodeKey, float]:
    if mode not in _ARCAN_METRIC:
        raise ConfigError(f"Arcan mode must be 'abs' or 'norm', got {mode!r}")
    out: dict[NodeKey, float] = {}
    for g in corpus.graphs:
        if mode == "abs":
            mv = degrees(g, "total")
        else:
            mv = degree_centrality(g, "total")
        for n, v in mv.values.items():
            out[(g.system_id, n)] = float(v)
    return out


def arcan_classify(corpus: Corpus, mode: str, th: ThresholdResult) -> HubSet:
    """Nodes whose pooled metric strictly exceeds ``th.threshold``."""
    expected = _ARCAN_METRIC.get(mode)
    if expected is None:
        raise ConfigError(f"Arcan mode must be 'abs' or 'norm', got {mode!r}")
    if th.metric_id != expected:
        raise ConfigError(
            f"threshold computed on {th.metric_id!r} cannot classify mode {mode!r}"
        )
    values = _arcan_values(corpus, mode)
    members = {k for k, v in values.items() if v > th.threshold}
    return HubSet(
        f"Arcan_{mode}", "all", frozenset(members), {k: values[k] for k in members}
    )


class AvgDegreeDetector(HubDetector):
    """Per-graph mean-degree threshold (Avg_in / Avg_out)."""

    def __init__(self, direction: str = "in"):
        self.direction = direction

    @property
    def method_id(self) -> str:
        return f"Avg_{self.direction}"

    @property
    def hub_direction(self) -> str:
        return self.direction

    def _detect(self, corpus: Corpus):
        _check_direction(self.direction)
        members: set[NodeKey] = set()
        scores: dict[NodeKey, float] = {}
        for g in corpus.graphs:
            hs = avg_hubs(g, self.direction)
            members |= hs.members
            scores.update(hs.scores or {})
        return members, scores


class LoubarDetector(HubDetector):
    """Per-graph Loubar threshold (Loubar_in / Loubar_out)."""

    def __init__(self, direction: str = "in"):
        self.direction = direction

    @property
    def method_id(self) -> str:
        return f"Loubar_{self.direction}"

    @property
    def hub_direction(self) -> str:
        return self.direction

    def _detect(self, corpus: Corpus):
        _check_direction(self.direction)
        members: set[NodeKey] = set()
        scores: dict[NodeKey, float] = {}
        for g in corpus.graphs:
            hs = loubar_hubs(g, self.direction)
            members |= hs.members
            scores.update(hs.scores or {})
        return members, scores


class ArcanDetector(HubDetector):
    """Corpus-pooled crop-and-threshold detector (Arcan_abs / Arcan_norm).

    After ``fit`` the two-stage threshold is available as
    ``threshold_result_``.
    """

    def __init__(
        self,
        mode: str = "abs",
        crop_quantile: float = DEFAULT_CROP_QUANTILE,
        threshold_quantile: float = DEFAULT_THRESHOLD_QUANTILE,
    ):
        self.mode = mode
        self.crop_quantile = crop_quantile
        self.threshold_quantile = threshold_quantile

    @property
    def method_id(self) -> str:
        return f"Arcan_{self.mode}"

    @property
    def hub_direction(self) -> str:
        return "all"

    def fit(self, X, y=None):
        corpus = as_corpus(X)
        values = _arcan_values(corpus, self.mode)
        pooled = [values[k] for k in sorted(values)]
        self.threshold_result_ = arcan_threshold(
            pooled,
            crop_quantile=self.crop_quantile,
            threshold_quantile=self.threshold_quantile,
            metric_id=_ARCAN_METRIC[self.mode],
        )
        hs = arcan_classify(corpus, self.mode, self.threshold_result_)
        self.members_ = hs.members
        self.hub_set_ = hs
        self.n_detected_ = len(hs)
        return self
