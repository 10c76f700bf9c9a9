"""Inter-method agreement: Jaccard overlap and chance-corrected kappa.

Hub sets act as raters assigning each (system, node) of the corpus a
binary label. Fleiss' kappa (pooled marginals) measures agreement across
any number of methods, Cohen's kappa between exactly two.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .detectors.base import HubSet
from .errors import ConfigError, InsufficientDataError
from .sdg import Corpus, NodeKey

KAPPA_BANDS = (
    (0.0, "None"),
    (0.4, "Poor"),
    (0.6, "Discrete"),
    (0.8, "Good"),
    (1.0 + 1e-12, "Excellent"),
)

_EPS = 1e-12


def _as_members(x: HubSet | frozenset | set) -> frozenset:
    if isinstance(x, HubSet):
        return x.members
    return frozenset(x)


def jaccard(a: HubSet | frozenset | set, b: HubSet | frozenset | set) -> float:
    """Intersection over union; two empty sets agree perfectly (1.0)."""
    sa, sb = _as_members(a), _as_members(b)
    if not sa and not sb:
        return 1.0
    union = len(sa | sb)
    return len(sa & sb) / union


@dataclass(frozen=True)
class AgreementMatrix:
    method_ids: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]  # symmetric, unit diagonal

    def value(self, a: str, b: str) -> float:
        i, j = self.method_ids.index(a), self.method_ids.index(b)
        return self.values[i][j]


def jaccard_matrix(hubsets: Sequence[HubSet]) -> AgreementMatrix:
    """Pairwise Jaccard over hub sets, in the order given."""
    if len(hubsets) < 2:
        raise InsufficientDataError("need at least two hub sets to compare")
    ids = tuple(hs.method_id for hs in hubsets)
    if len(set(ids)) != len(ids):
        raise ConfigError(f"duplicate method ids: {ids}")
    n = len(hubsets)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(1.0 if i == j else jaccard(hubsets[i], hubsets[j]))
        rows.append(tuple(row))
    return AgreementMatrix(ids, tuple(rows))


def matrix_csv_lines(matrix: AgreementMatrix) -> list[str]:
    lines = ["method," + ",".join(matrix.method_ids)]
    for mid, row in zip(matrix.method_ids, matrix.values):
        lines.append(mid + "," + ",".join(f"{v:.17g}" for v in row))
    return lines


def interpret_kappa(value: float) -> str:
    """Band label for a kappa value: None/Poor/Discrete/Good/Excellent."""
    if value > 1.0 + _EPS:
        raise ConfigError(f"kappa cannot exceed 1, got {value}")
    if value < 0.0:
        return "None"
    for upper, band in KAPPA_BANDS[1:]:
        if value < upper:
            return band
    return "Excellent"


@dataclass(frozen=True)
class KappaResult:
    kind: str  # "fleiss" or "cohen"
    value: float
    band: str
    n_raters: int
    n_subjects: int


def assignment_matrix(hubsets: Sequence[HubSet], corpus: Corpus) -> list[list[bool]]:
    """Rater-by-subject boolean matrix over corpus.node_keys() order."""
    keys = corpus.node_keys()
    return [[key in hs.members for key in keys] for hs in hubsets]


def fleiss_kappa(assignments: Sequence[Sequence[bool]]) -> KappaResult:
    """Fleiss' kappa for binary assignments, raters-by-subjects.

    Chance agreement uses category proportions pooled over all raters.
    A degenerate case with zero expected disagreement (all raters give
    every subject the same single category) scores 1.0 by convention.
    """
    n_raters = len(assignments)
    if n_raters < 2:
        raise InsufficientDataError("Fleiss' kappa needs at least two raters")
    n_subjects = len(assignments[0])
    if n_subjects == 0:
        raise InsufficientDataError("no subjects to rate")
    if any(len(row) != n_subjects for row in assignments):
        raise ConfigError("ragged assignment matrix")
    counts_pos = [sum(bool(assignments[r][s]) for r in range(n_raters)) for s in range(n_subjects)]
    total = n_raters * n_subjects
    p_pos = sum(counts_pos) / total
    p_e = p_pos**2 + (1.0 - p_pos) ** 2
    p_bar = sum(
        (c * (c - 1) + (n_raters - c) * (n_raters - c - 1)) / (n_raters * (n_raters - 1))
        for c in counts_pos
    ) / n_subjects
    if abs(1.0 - p_e) < _EPS:
        value = 1.0
    else:
        value = (p_bar - p_e) / (1.0 - p_e)
    return KappaResult("fleiss", value, interpret_kappa(value), n_raters, n_subjects)


def cohen_kappa(r1: Sequence, r2: Sequence) -> KappaResult:
    """Cohen's kappa between two raters over arbitrary category labels."""
    if len(r1) != len(r2):
        raise ConfigError(f"rater lengths differ: {len(r1)} vs {len(r2)}")
    n = len(r1)
    if n == 0:
        raise InsufficientDataError("no subjects to rate")
    cats = sorted({*r1, *r2}, key=repr)
    idx = {c: i for i, c in enumerate(cats)}
    p_o = sum(a == b for a, b in zip(r1, r2)) / n
    m1 = [0] * len(cats)
    m2 = [0] * len(cats)
    for a, b in zip(r1, r2):
        m1[idx[a]] += 1
        m2[idx[b]] += 1
    p_e = sum(a * b for a, b in zip(m1, m2)) / (n * n)
    if abs(1.0 - p_e) < _EPS:
        value = 1.0
    else:
        value = (p_o - p_e) / (1.0 - p_e)
    return KappaResult("cohen", value, interpret_kappa(value), 2, n)


def fleiss_for_hubsets(hubsets: Sequence[HubSet], corpus: Corpus) -> KappaResult:
    return fleiss_kappa(assignment_matrix(hubsets, corpus))


def group_fleiss(
    hubsets_by_id: dict[str, HubSet],
    corpus: Corpus,
    groups: dict[str, Iterable[str]],
) -> dict[str, KappaResult]:
    """Fleiss' kappa per method group plus 'overall' across every method."""
    out: dict[str, KappaResult] = {}
    for name, ids in groups.items():
        subset = [hubsets_by_id[m] for m in ids if m in hubsets_by_id]
        if len(subset) >= 2:
            out[name] = fleiss_for_hubsets(subset, corpus)
    all_sets = list(hubsets_by_id.values())
    if len(all_sets) >= 2:
        out["overall"] = fleiss_for_hubsets(all_sets, corpus)
    return out
