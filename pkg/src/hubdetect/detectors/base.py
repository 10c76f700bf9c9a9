"""Detector base class and the hub-set result type.

Detectors follow the scikit-learn estimator protocol: construct with
parameters, call ``fit(corpus)``, read fitted attributes (``members_``,
``hub_set_``). ``get_params``/``set_params`` come from
:class:`sklearn.base.BaseEstimator`, so detectors clone and compose with
standard tooling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from ..errors import ParseError
from ..sdg import Corpus, NodeKey, Sdg

DIRECTIONS = ("in", "out", "all")


@dataclass(frozen=True)
class HubSet:
    """Output of one detector over one corpus."""

    method_id: str
    direction: str  # "in", "out" or "all"
    members: frozenset[NodeKey]
    scores: dict[NodeKey, float] | None = None

    def __post_init__(self) -> None:
        if self.direction not in DIRECTIONS:
            raise ValueError(f"bad direction {self.direction!r}")
        if self.scores is not None and set(self.scores) != set(self.members):
            raise ValueError("scores must cover exactly the members")

    def __len__(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[NodeKey]:
        return sorted(self.members)

    def to_json(self) -> str:
        rows = []
        for system, node in self.sorted_members():
            row = {
                "method": self.method_id,
                "direction": self.direction,
                "system": system,
                "node": node,
            }
            if self.scores is not None:
                row["score"] = self.scores[(system, node)]
            rows.append(row)
        return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def save_hubset(hs: HubSet, path: str | Path) -> None:
    Path(path).write_text(hs.to_json(), encoding="utf-8")


def load_hubset(
    path: str | Path,
    method_id: str | None = None,
    direction: str | None = None,
) -> HubSet:
    """Parse a detector output file.

    An empty detection serializes to an empty JSON array, which carries
    no method identity, so ``method_id`` and ``direction`` act both as
    fallback for that case and as a consistency check otherwise.
    """
    path = Path(path)
    try:
        rows = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(rows, list):
        raise ParseError(f"{path}: expected a JSON array")
    if not rows:
        if method_id is None or direction is None:
            raise ParseError(
                f"{path}: empty hub set needs an explicit method_id and direction"
            )
        return HubSet(method_id=method_id, direction=direction, members=frozenset())
    methods = {r.get("method") for r in rows}
    directions = {r.get("direction") for r in rows}
    if len(methods) != 1 or len(directions) != 1:
        raise ParseError(f"{path}: mixed method ids or directions")
    file_method, file_direction = methods.pop(), directions.pop()
    if method_id is not None and file_method != method_id:
        raise ParseError(f"{path}: method {file_method!r}, expected {method_id!r}")
    if direction is not None and file_direction != direction:
        raise ParseError(f"{path}: direction {file_direction!r}, expected {direction!r}")
    members = []
    scores: dict[NodeKey, float] = {}
    has_scores = all("score" in r for r in rows)
    for r in rows:
        key = (str(r["system"]), str(r["node"]))
        members.append(key)
        if has_scores:
            scores[key] = float(r["score"])
    return HubSet(
        method_id=file_method,
        direction=file_direction,
        members=frozenset(members),
        scores=scores if has_scores else None,
    )


def as_corpus(data: Corpus | Sdg) -> Corpus:
    """Accept a single graph anywhere a corpus is expected."""
    if isinstance(data, Sdg):
        return Corpus([data])
    return data


class HubDetector(BaseEstimator):
    """Base class for hub detectors.

    Subclasses implement ``_detect(corpus) -> (members, scores)`` and the
    ``method_id``/``hub_direction`` properties; everything else (the
    sklearn parameter protocol, ``fit``, ``predict``) is shared.
    """

    @property
    def method_id(self) -> str:
        raise NotImplementedError

    @property
    def hub_direction(self) -> str:
        raise NotImplementedError

    def _detect(self, corpus: Corpus) -> tuple[set[NodeKey], dict[NodeKey, float] | None]:
        raise NotImplementedError

    def fit(self, X: Corpus | Sdg, y=None) -> "HubDetector":
        corpus = as_corpus(X)
        members, scores = self._detect(corpus)
        self.members_ = frozenset(members)
        self.hub_set_ = HubSet(
            method_id=self.method_id,
            direction=self.hub_direction,
            members=self.members_,
            scores=scores,
        )
        self.n_detected_ = len(self.members_)
        return self

    def predict(self, X: Corpus | Sdg) -> list[bool]:
        """Hub membership flag per (system, node) in corpus iteration order."""
        check_is_fitted(self, "members_")
        corpus = as_corpus(X)
        return [key in self.members_ for key in corpus.node_keys()]

    def fit_predict(self, X: Corpus | Sdg, y=None) -> list[bool]:
        return self.fit(X).predict(X)
