import numpy as np
import pytest
from sklearn.metrics import cohen_kappa_score

from hubdetect.agreement import (
    assignment_matrix,
    cohen_kappa,
    fleiss_for_hubsets,
    fleiss_kappa,
    group_fleiss,
    interpret_kappa,
    jaccard,
    jaccard_matrix,
    matrix_csv_lines,
)
from hubdetect.detectors import HubSet
from hubdetect.errors import ConfigError, InsufficientDataError
from hubdetect.generate import star
from hubdetect.sdg import Corpus, Sdg


def _hs(method_id, members, direction="in"):
    return HubSet(method_id, direction, frozenset(members))


def test_jaccard_basic():
    a = {("s", "a"), ("s", "b")}
    b = {("s", "b"), ("s", "c")}
    assert jaccard(a, b) == pytest.approx(1 / 3)
    assert jaccard(a, a) == 1.0
    assert jaccard(set(), set()) == 1.0
    assert jaccard(set(), a) == 0.0
    assert jaccard(a, set()) == 0.0


def test_jaccard_accepts_hubsets():
    a = _hs("Avg_in", {("s", "a"), ("s", "b")})
    b = _hs("ER_in", {("s", "b"), ("s", "c")})
    assert jaccard(a, b) == pytest.approx(1 / 3)


def test_jaccard_matrix_properties():
    sets = [
        _hs("Avg_in", {("s", "a"), ("s", "b")}),
        _hs("ER_in", {("s", "b"), ("s", "c")}),
        _hs("CM_in", set()),
    ]
    m = jaccard_matrix(sets)
    assert m.method_ids == ("Avg_in", "ER_in", "CM_in")
    n = len(m.method_ids)
    for i in range(n):
        assert m.values[i][i] == 1.0
        for j in range(n):
            assert m.values[i][j] == m.values[j][i]
            assert 0.0 <= m.values[i][j] <= 1.0
    assert m.value("Avg_in", "ER_in") == pytest.approx(1 / 3)
    # empty-set row is all zeros off-diagonal against non-empty sets
    assert m.value("CM_in", "Avg_in") == 0.0


def test_jaccard_matrix_validation():
    a = _hs("Avg_in", {("s", "a")})
    with pytest.raises(InsufficientDataError):
        jaccard_matrix([a])
    with pytest.raises(ConfigError):
        jaccard_matrix([a, a])


def test_matrix_csv():
    sets = [_hs("Avg_in", {("s", "a")}), _hs("ER_in", {("s", "a")})]
    lines = matrix_csv_lines(jaccard_matrix(sets))
    assert lines[0] == "method,Avg_in,ER_in"
    assert lines[1].split(",") == ["Avg_in", "1", "1"]


def test_interpret_kappa_bands():
    assert interpret_kappa(-0.2) == "None"
    assert interpret_kappa(0.0) == "Poor"
    assert interpret_kappa(0.39) == "Poor"
    assert interpret_kappa(0.4) == "Discrete"
    assert interpret_kappa(0.59) == "Discrete"
    assert interpret_kappa(0.6) == "Good"
    assert interpret_kappa(0.73) == "Good"
    assert interpret_kappa(0.8) == "Excellent"
    assert interpret_kappa(1.0) == "Excellent"
    with pytest.raises(ConfigError):
        interpret_kappa(1.2)


def test_fleiss_perfect_agreement_two_categories():
    rows = [[True, False, True, False]] * 3
    res = fleiss_kappa(rows)
    assert res.value == pytest.approx(1.0)
    assert res.band == "Excellent"
    assert res.n_raters == 3
    assert res.n_subjects == 4


def test_fleiss_degenerate_single_category():
    rows = [[False] * 6, [False] * 6]
    assert fleiss_kappa(rows).value == 1.0


def test_fleiss_complementary_raters_negative():
    # balanced complementary labels: observed agreement 0, chance 0.5
    rows = [
        [True, True, False, False],
        [False, False, True, True],
    ]
    res = fleiss_kappa(rows)
    assert res.value < 0
    assert res.band == "None"


def test_fleiss_hand_example():
    # 2 raters, 4 subjects, agree on 2: P_bar = 0.5;
    # pooled positives 4/8 -> p_e = 0.5; kappa = 0
    rows = [
        [True, True, True, False],
        [True, False, False, False],
    ]
    res = fleiss_kappa(rows)
    assert res.value == pytest.approx(0.0, abs=1e-12)


def test_fleiss_validation():
    with pytest.raises(InsufficientDataError):
        fleiss_kappa([[True, False]])
    with pytest.raises(InsufficientDataError):
        fleiss_kappa([[], []])
    with pytest.raises(ConfigError):
        fleiss_kappa([[True, False], [True]])


def test_cohen_identical_vectors():
    res = cohen_kappa(["x", "y", "x", "z"], ["x", "y", "x", "z"])
    assert res.value == 1.0
    assert res.kind == "cohen"


def test_cohen_against_sklearn():
    rng = np.random.default_rng(12)
    for _ in range(5):
        r1 = rng.integers(0, 3, size=200).tolist()
        r2 = (np.array(r1) + rng.integers(0, 2, size=200)).tolist()
        ours = cohen_kappa(r1, r2).value
        ref = cohen_kappa_score(r1, r2)
        assert ours == pytest.approx(ref, abs=1e-12)


def test_cohen_independent_raters_near_zero():
    rng = np.random.default_rng(99)
    r1 = rng.integers(0, 2, size=10_000).tolist()
    r2 = rng.integers(0, 2, size=10_000).tolist()
    assert abs(cohen_kappa(r1, r2).value) < 0.05


def test_cohen_validation():
    with pytest.raises(ConfigError):
        cohen_kappa([1, 2], [1])
    with pytest.raises(InsufficientDataError):
        cohen_kappa([], [])


def test_fleiss_equals_cohen_under_equal_marginals():
    # with two raters Fleiss (pooled marginals) is Scott's pi, which
    # coincides with Cohen only when the raters' marginals match
    r1 = [True, True, False, False, True, False]
    r2 = [True, False, True, False, True, False]
    assert sum(r1) == sum(r2)
    f = fleiss_kappa([r1, r2]).value
    c = cohen_kappa(r1, r2).value
    assert f == pytest.approx(c, abs=1e-9)


def test_assignment_matrix_and_group_fleiss():
    g = star(3, direction="in", system_id="g")
    corpus = Corpus([g])
    hs_a = _hs("Avg_in", {("g", "n000")})
    hs_b = _hs("ER_in", {("g", "n000")})
    hs_c = _hs("Avg_out", {("g", "n001")}, direction="out")
    rows = assignment_matrix([hs_a, hs_b], corpus)
    assert rows == [[key == ("g", "n000") for key in corpus.node_keys()]] * 2
    res = fleiss_for_hubsets([hs_a, hs_b], corpus)
    assert res.value == 1.0

    out = group_fleiss(
        {"Avg_in": hs_a, "ER_in": hs_b, "Avg_out": hs_c},
        corpus,
        {"incoming": ["Avg_in", "ER_in"], "outgoing": ["Avg_out"]},
    )
    # single-member group is skipped; overall always present
    assert set(out) == {"incoming", "overall"}
    assert out["incoming"].value == 1.0
    assert out["overall"].n_raters == 3
