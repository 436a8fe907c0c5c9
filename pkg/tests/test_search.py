import numpy as np
import pytest

from bramsey.coloring import Coloring
from bramsey.search import (
    Budget, Status, Thresholds, avoids, compare_with_theorem8, find_avoiding, ramsey_value,
    theorem8_formula,
)
from oracles import brute_has_cm, brute_ramsey

BIG = Budget(nodes=10**9, seconds=600)


def test_thresholds_validation():
    assert Thresholds.of(1, 2, 3) == (1, 2, 3)
    with pytest.raises(ValueError):
        Thresholds.of(0, 1, 1)


def test_avoids_rejects_incomplete():
    with pytest.raises(ValueError):
        avoids(Coloring([[0, -1]]), (1, 1, 1))


@pytest.mark.parametrize("th", [(1, 1, 1), (2, 1, 1), (2, 2, 1), (1, 2, 2), (2, 2, 2), (1, 1, 3), (2, 1, 2)])
def test_ramsey_values_match_plain_enumeration(th):
    expected = brute_ramsey(th, 3)
    got = ramsey_value(th, 6, BIG)
    if expected is not None:
        assert got.value == expected
    else:
        assert got.value > 3


@pytest.mark.parametrize("th", [(2, 2, 2), (3, 2, 2), (1, 3, 3), (2, 2, 3)])
def test_symmetry_breaking_agrees_with_plain_search(th):
    for n in range(1, 6):
        a = find_avoiding(n, th, BIG, symmetry=True).status
        b = find_avoiding(n, th, BIG, symmetry=False).status
        assert a == b, n


def test_witness_really_avoids():
    out = find_avoiding(3, (2, 2, 2), BIG)
    assert out.status is Status.WITNESS_FOUND
    assert not brute_has_cm(out.witness.cells, (2, 2, 2))


def test_threads_agree_with_single_thread():
    one = find_avoiding(5, (3, 2, 2), BIG, threads=1)
    many = find_avoiding(5, (3, 2, 2), BIG, threads=4)
    assert one.status == many.status == Status.REFUTED
    assert one.nodes_explored == many.nodes_explored


def test_budget_exhaustion_leaves_interval_open():
    res = ramsey_value((3, 3, 3), 7, Budget(nodes=1000, seconds=60))
    assert res.value is None
    assert res.outcomes[-1].status is Status.BUDGET_EXHAUSTED
    assert res.upper is None


def test_colour_permutation_invariance():
    vals = {p: ramsey_value(p, 6, BIG).value for p in [(3, 2, 2), (2, 3, 2), (2, 2, 3)]}
    assert len(set(vals.values())) == 1


def test_theorem8_formula_branches():
    assert theorem8_formula(3, 3) == 7
    assert theorem8_formula(2, 2) == 4
    assert theorem8_formula(1, 2) == 3
    assert theorem8_formula(5, 2) == 8   # 2l <= k+1
    assert theorem8_formula(6, 4) == 14  # 3l <= 2k
    assert theorem8_formula(4, 3) == 9   # l < k
    assert theorem8_formula(1, 5) == 9   # l >= k


def test_compare_report_rows():
    rows = compare_with_theorem8([(1, 2), (2, 2)], budget=BIG)
    assert [(r["k"], r["l"], r["searched"], r["match"]) for r in rows] == [(1, 2, 3, True), (2, 2, 4, True)]
