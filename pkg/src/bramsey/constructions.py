"""Extremal colourings and the connected-matching thresholds they avoid.

Block labels in messages are 1-based (``A_1``, ``B_3`` ...); code indexes
blocks from 0.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .coloring import BlockSpec, Color, Coloring, ColoringError, new_from_blocks

RED, GREEN, BLUE = Color.RED, Color.GREEN, Color.BLUE


def example1(a1: int, a2: int, a3: int) -> Coloring:
    """Left side split into A_1, A_2, A_3; every edge at A_i gets colour i.

    The colour-i graph is the complete bipartite graph A_i x Right, so its
    largest connected matching has size a_i.
    """
    sizes = (a1, a2, a3)
    if any(a < 0 for a in sizes):
        raise ColoringError("block sizes must be non-negative")
    n = sum(sizes)
    table = {(i, 0): Color(i) for i in range(3)}
    return new_from_blocks(BlockSpec(sizes, (n,), table))


# (i, j) pairs in 1-based block labels, A_i on the left and B_j on the right.
LEMMA6_TABLE = {
    RED: [(1, 1), (2, 1), (3, 2), (4, 2), (5, 3)],
    BLUE: [(1, 2), (2, 3), (3, 3), (4, 1), (5, 1)],
    GREEN: [(1, 3), (2, 2), (3, 1), (4, 3), (5, 2)],
}


def lemma6_params(k: int, l: int) -> tuple[int, tuple[int, ...], tuple[int, ...]]:
    """Return ``(t, left_block_sizes, right_block_sizes)``."""
    if not (k >= l and 2 * l >= k and l >= 1):
        raise ColoringError(f"need k >= l >= k/2 and l >= 1, got k={k}, l={l}")
    t = min(k - l, 2 * l - k)
    left = (l, k - l + t, l, k - l + t, 2 * l - k - t)
    right = (k, k, 2 * l - k + t)
    return t, left, right


def lemma6_coloring(k: int, l: int) -> Coloring:
    """Colouring of K_{n,n}, n = k + 2l + t, with no red (k+1)-connected
    matching and no green or blue (l+1)-connected matching."""
    _, left, right = lemma6_params(k, l)
    table = {(i - 1, j - 1): col for col, pairs in LEMMA6_TABLE.items() for i, j in pairs}
    return new_from_blocks(BlockSpec(left, right, table))


def stability_example(k: int, b1: int, b2: int, b3: int, rb_pattern: Sequence[Sequence] | np.ndarray) -> Coloring:
    """The N = 3k-3 family with an arbitrary red/blue pattern on A_3 x B_3.

    ``rb_pattern`` has shape ``(k-1, b3)`` with entries red or blue (Color
    values, codes or 'R'/'B').
    """
    n = 3 * k - 3
    if k < 2:
        raise ColoringError("k must be at least 2")
    if min(b1, b2, b3) < 0 or b1 + b2 + b3 != n:
        raise ColoringError(f"need b1 + b2 + b3 = {n} with non-negative parts")
    if b3 > k - 1:
        raise ColoringError(f"need b3 <= k - 1 = {k - 1}")
    a = k - 1
    pat = np.array([[int(Color.parse(x)) for x in row] for row in rb_pattern], dtype=np.int8).reshape(-1, b3) \
        if b3 else np.zeros((a, 0), np.int8)
    if pat.shape != (a, b3):
        raise ColoringError(f"rb_pattern must have shape ({a}, {b3})")
    if not np.isin(pat, (int(RED), int(BLUE))).all():
        raise ColoringError("rb_pattern entries must be red or blue")
    table = {
        (0, 0): RED, (1, 1): RED,
        (0, 1): BLUE, (1, 0): BLUE,
        (2, 0): GREEN, (2, 1): GREEN,
        (0, 2): GREEN, (1, 2): GREEN,
        (2, 2): RED,
    }
    arr = new_from_blocks(BlockSpec((a, a, a), (b1, b2, b3), table)).cells.copy()
    arr[2 * a:, b1 + b2:] = pat
    return Coloring(arr)


def claimed_avoidance(name: str, *params) -> tuple[int, int, int]:
    """Thresholds (red, green, blue) that the named construction avoids."""
    if name == "example1":
        a1, a2, a3 = params
        return a1 + 1, a2 + 1, a3 + 1
    if name == "lemma6":
        k, l = params[:2]
        lemma6_params(k, l)
        return k + 1, l + 1, l + 1
    if name == "stability":
        k = params[0]
        return k, k, k
    raise ValueError(f"unknown construction {name!r}")
