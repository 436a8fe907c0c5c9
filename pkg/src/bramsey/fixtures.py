"""Seeded random colourings for tests and reduction runs."""

from __future__ import annotations

import numpy as np

from .coloring import ABSENT, Coloring

STYLES = ("uniform", "blocks", "stripes", "twoside")


def random_coloring(n_left: int, n_right: int, rng: np.random.Generator, p_absent: float = 0.0) -> Coloring:
    arr = rng.integers(0, 3, size=(n_left, n_right), dtype=np.int8)
    if p_absent:
        arr[rng.random((n_left, n_right)) < p_absent] = ABSENT
    return Coloring(arr)


def _random_blocks(total: int, rng: np.random.Generator, max_blocks: int) -> np.ndarray:
    k = int(rng.integers(1, max_blocks + 1))
    cuts = np.sort(rng.choice(np.arange(1, total), size=min(k - 1, total - 1), replace=False)) if total > 1 else []
    labels = np.zeros(total, np.int64)
    for cut in cuts:
        labels[cut:] += 1
    return labels


def deficient_fixture(N: int, d: int, rng: np.random.Generator, style: str = "uniform") -> Coloring:
    """A colouring of K_{N,N} minus at most ``d`` absent pairs per vertex.

    ``uniform`` colours cells independently; ``blocks`` colours random block
    pairs (many components per colour, uncoloured vertices); ``stripes``
    colours whole rows, like the Example 1 family, with a little noise;
    ``twoside`` colours some rows by a row label and the others by a column
    label, which gives components whose minimum covers use both sides.
    """
    if style == "uniform":
        arr = rng.integers(0, 3, size=(N, N), dtype=np.int8)
    elif style == "blocks":
        lb, rb = _random_blocks(N, rng, 8), _random_blocks(N, rng, 8)
        table = rng.integers(0, 3, size=(lb.max() + 1, rb.max() + 1), dtype=np.int8)
        arr = table[np.ix_(lb, rb)].astype(np.int8)
    elif style == "stripes":
        arr = np.repeat(rng.integers(0, 3, size=(N, 1), dtype=np.int8), N, axis=1)
        noise = rng.random((N, N)) < 0.05
        arr[noise] = rng.integers(0, 3, size=int(noise.sum()), dtype=np.int8)
    elif style == "twoside":
        by_row = rng.random(N) < rng.random()
        row_label = rng.integers(0, 3, N)
        col_label = rng.integers(0, 3, N)
        arr = np.where(by_row[:, None], row_label[:, None], col_label[None, :]).astype(np.int8)
    else:
        raise ValueError(f"unknown style {style!r}")
    # each permutation removes at most one pair per vertex
    for _ in range(d):
        perm = rng.permutation(N)
        drop = rng.random(N) < 0.7
        arr[np.arange(N)[drop], perm[drop]] = ABSENT
    return Coloring(arr)
