import numpy as np
import pytest

from bramsey.coloring import Color, ColoringError
from bramsey.constructions import (
    claimed_avoidance, example1, lemma6_coloring, lemma6_params, stability_example,
)
from bramsey.search import avoids
from oracles import brute_has_cm, brute_largest_cm


def test_example1_shape_and_colours():
    c = example1(1, 2, 0)
    assert c.shape == (3, 3)
    assert c.cells[0].tolist() == [0, 0, 0]
    assert set(c.cells[1:].ravel().tolist()) == {1}


@pytest.mark.parametrize("a", [(1, 1, 1), (2, 1, 3), (3, 3, 2)])
def test_example1_avoids_by_brute_force(a):
    c = example1(*a)
    th = claimed_avoidance("example1", *a)
    assert not brute_has_cm(c.cells, th)
    # tight: each colour reaches a_i
    assert [brute_largest_cm(c.cells, i) for i in range(3)] == list(a)


def test_lemma6_params_table():
    assert lemma6_params(4, 3) == (1, (3, 2, 3, 2, 1), (4, 4, 3))
    assert lemma6_params(2, 1)[0] == 0
    with pytest.raises(ColoringError):
        lemma6_params(5, 2)


@pytest.mark.parametrize("k,l", [(k, l) for k in range(1, 6) for l in range(1, k + 1) if 2 * l >= k])
def test_lemma6_avoids_by_brute_force(k, l):
    c = lemma6_coloring(k, l)
    t = lemma6_params(k, l)[0]
    assert c.shape == (k + 2 * l + t,) * 2
    assert c.is_complete()
    assert not brute_has_cm(c.cells, (k + 1, l + 1, l + 1))


def test_stability_example_structure(rng):
    k = 3
    pat = [["R", "B"], ["B", "B"]]
    c = stability_example(k, 2, 2, 2, pat)
    assert c.shape == (6, 6) and c.is_complete()
    assert c.cells[4:, 4:].tolist() == [[0, 2], [2, 2]]
    assert avoids(c, claimed_avoidance("stability", k))
    assert not brute_has_cm(c.cells, (k, k, k))


@pytest.mark.parametrize("args", [
    (3, 3, 2, 2, [["R"], ["R"]]),        # b sum wrong
    (3, 1, 2, 3, [["R"] * 3] * 2),       # b3 > k-1
    (3, 2, 2, 2, [["G", "R"], ["R", "R"]]),
    (3, 2, 2, 2, [["R"], ["R"]]),        # wrong pattern shape
])
def test_stability_example_rejects_bad_input(args):
    with pytest.raises(ColoringError):
        stability_example(*args)
