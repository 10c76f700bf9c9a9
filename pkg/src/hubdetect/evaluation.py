"""Precision evaluation of hub sets against manual labels.

Each (system, node) may carry one of three labels: ``hub``,
``infrastructural`` (an infrastructural hub: genuinely hub-shaped but
part of the platform rather than the business logic) or ``none``.
Precision comes in three flavors differing in how infrastructural hubs
are treated: counted as true positives, ignored, or counted as false
positives. A mode whose denominator is zero is undefined and reported as
``None`` (rendered ``-`` in the TSV).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .detectors.base import HubSet
from .detectors.registry import METHOD_ORDER
from .errors import ConfigError, LabelingError, ParseError
from .sdg import NodeKey

LABELS = ("hub", "infrastructural", "none")
IH_MODES = ("tp", "ignore", "fp")


@dataclass(frozen=True)
class GroundTruth:
    labels: dict[NodeKey, str]

    def __post_init__(self) -> None:
        bad = {v for v in self.labels.values() if v not in LABELS}
        if bad:
            raise LabelingError(f"unknown labels {sorted(bad)}; expected {LABELS}")

    def counts(self) -> dict[str, int]:
        c = Counter(self.labels.values())
        return {label: c.get(label, 0) for label in LABELS}

    def __len__(self) -> int:
        return len(self.labels)


def load_labels(path: str | Path) -> GroundTruth:
    """Read a JSON array of {system, service, label} records."""
    path = Path(path)
    try:
        rows = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(rows, list):
        raise ParseError(f"{path}: expected a JSON array")
    labels: dict[NodeKey, str] = {}
    for i, row in enumerate(rows):
        try:
            key = (str(row["system"]), str(row["service"]))
            label = str(row["label"])
        except (TypeError, KeyError) as exc:
            raise ParseError(f"{path}: row {i} missing field {exc}") from exc
        if key in labels:
            raise LabelingError(f"{path}: duplicate label for {key}")
        labels[key] = label
    return GroundTruth(labels)


def save_labels(gt: GroundTruth, path: str | Path) -> None:
    rows = [
        {"system": s, "service": n, "label": gt.labels[(s, n)]}
        for s, n in sorted(gt.labels)
    ]
    Path(path).write_text(
        json.dumps(rows, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def precision(hs: HubSet, gt: GroundTruth, ih_mode: str) -> float | None:
    """Precision of a hub set under one infrastructural-hub mode.

    Detected members must all be labeled; nodes outside the hub set may
    stay unlabeled. Returns None when the mode's denominator is zero.
    """
    if ih_mode not in IH_MODES:
        raise ConfigError(f"ih_mode must be one of {IH_MODES}, got {ih_mode!r}")
    members = hs.sorted_members()
    if not members:
        return None
    missing = [key for key in members if key not in gt.labels]
    if missing:
        raise LabelingError(
            f"{hs.method_id}: detected members without a label: {missing[:5]}"
        )
    tally = Counter(gt.labels[key] for key in members)
    n = len(members)
    n_hub, n_ih = tally.get("hub", 0), tally.get("infrastructural", 0)
    if ih_mode == "tp":
        return (n_hub + n_ih) / n
    if ih_mode == "fp":
        return n_hub / n
    denom = n - n_ih
    return n_hub / denom if denom else None


@dataclass(frozen=True)
class PrecisionReport:
    method_id: str
    n_detected: int
    precisions: dict[str, float | None]  # ih_mode -> value


def evaluate(hs: HubSet, gt: GroundTruth, ih_modes: Sequence[str] = IH_MODES) -> PrecisionReport:
    return PrecisionReport(
        method_id=hs.method_id,
        n_detected=len(hs),
        precisions={mode: precision(hs, gt, mode) for mode in ih_modes},
    )


def evaluate_all(
    hubsets: Sequence[HubSet],
    gt: GroundTruth,
    ih_modes: Sequence[str] = IH_MODES,
) -> list[PrecisionReport]:
    """One report per hub set, ordered by the method registry."""
    rank = {m: i for i, m in enumerate(METHOD_ORDER)}
    ordered = sorted(
        hubsets, key=lambda hs: (rank.get(hs.method_id, len(rank)), hs.method_id)
    )
    return [evaluate(hs, gt, ih_modes) for hs in ordered]


def report_tsv_lines(
    reports: Sequence[PrecisionReport], ih_modes: Sequence[str] | None = None
) -> list[str]:
    if ih_modes is None:
        present = set().union(*(r.precisions.keys() for r in reports)) if reports else set()
        ih_modes = tuple(m for m in IH_MODES if m in present) or IH_MODES
    header = "method\tn_detected\t" + "\t".join(f"precision_{m}" for m in ih_modes)
    lines = [header]
    for rep in reports:
        cells = [rep.method_id, str(rep.n_detected)]
        for mode in ih_modes:
            v = rep.precisions.get(mode)
            cells.append("-" if v is None else f"{v:.4f}")
        lines.append("\t".join(cells))
    return lines
