"""Coloured bipartite graphs: representation, block construction, vertex
deletion and the JSON interchange format.

A :class:`Coloring` is a dense ``n_left x n_right`` matrix of cell codes.
Codes ``0, 1, 2`` are red, green and blue; ``-1`` marks an absent edge.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

ABSENT = -1


class Color(enum.IntEnum):
    RED = 0
    GREEN = 1
    BLUE = 2

    @property
    def code(self) -> str:
        return self.name[0]

    @classmethod
    def parse(cls, value: "str | int | Color") -> "Color":
        if isinstance(value, Color):
            return value
        if isinstance(value, (int, np.integer)):
            return cls(int(value))
        key = str(value).strip().upper()
        for col in cls:
            if key in (col.code, col.name):
                return col
        raise ValueError(f"unknown colour {value!r}")


class Side(enum.IntEnum):
    LEFT = 0
    RIGHT = 1


class Vertex(NamedTuple):
    side: Side
    index: int

    def __repr__(self) -> str:
        return f"{'LR'[self.side]}{self.index}"

    def to_json(self) -> list:
        return ["L" if self.side == Side.LEFT else "R", int(self.index)]

    @classmethod
    def from_json(cls, obj: Sequence) -> "Vertex":
        side, index = obj
        if side not in ("L", "R"):
            raise ValueError(f"bad vertex side {side!r}")
        return cls(Side.LEFT if side == "L" else Side.RIGHT, int(index))


def L(i: int) -> Vertex:
    return Vertex(Side.LEFT, i)


def R(j: int) -> Vertex:
    return Vertex(Side.RIGHT, j)


class ColoringError(ValueError):
    """Raised for malformed colourings, block specs or documents."""


class Coloring:
    """Immutable 3-edge-coloured subgraph of ``K_{n_left, n_right}``.

    ``cells[u, v]`` is the colour code of the edge between left vertex ``u``
    and right vertex ``v``, or ``ABSENT``.
    """

    __slots__ = ("_cells",)

    def __init__(self, cells: np.ndarray | Sequence[Sequence[int]], n_right: int | None = None):
        arr = np.array(cells, dtype=np.int8, copy=True)
        if arr.size == 0 and arr.ndim != 2:
            arr = np.full((arr.shape[0] if arr.ndim else 0, n_right or 0), ABSENT, dtype=np.int8)
        if arr.ndim != 2:
            raise ColoringError("cells must be a 2-d array")
        if ((arr < ABSENT) | (arr > 2)).any():
            raise ColoringError("cell codes must be in {-1, 0, 1, 2}")
        arr.flags.writeable = False
        self._cells = arr

    @classmethod
    def empty(cls, n_left: int, n_right: int) -> "Coloring":
        return cls(np.full((n_left, n_right), ABSENT, dtype=np.int8))

    @classmethod
    def full(cls, n_left: int, n_right: int, color: Color) -> "Coloring":
        return cls(np.full((n_left, n_right), int(color), dtype=np.int8))

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def n_left(self) -> int:
        return self._cells.shape[0]

    @property
    def n_right(self) -> int:
        return self._cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._cells.shape

    def is_complete(self) -> bool:
        return bool((self._cells != ABSENT).all())

    def color_at(self, u: int, v: int) -> Color | None:
        code = int(self._cells[u, v])
        return None if code == ABSENT else Color(code)

    def edges(self, color: Color | None = None) -> Iterator[tuple[int, int]]:
        """Yield ``(u, v)`` for present edges, optionally of one colour."""
        mask = self._cells != ABSENT if color is None else self._cells == int(color)
        for u, v in zip(*np.nonzero(mask)):
            yield int(u), int(v)

    def n_edges(self, color: Color | None = None) -> int:
        if color is None:
            return int((self._cells != ABSENT).sum())
        return int((self._cells == int(color)).sum())

    def degree(self, vertex: Vertex) -> int:
        line = self._line(vertex)
        return int((line != ABSENT).sum())

    def min_degree(self) -> int:
        present = self._cells != ABSENT
        degs = [*present.sum(axis=1), *present.sum(axis=0)]
        return int(min(degs)) if degs else 0

    def _line(self, vertex: Vertex) -> np.ndarray:
        if vertex.side == Side.LEFT:
            return self._cells[vertex.index, :]
        return self._cells[:, vertex.index]

    def check_vertex(self, vertex: Vertex) -> None:
        size = self.n_left if vertex.side == Side.LEFT else self.n_right
        if not 0 <= vertex.index < size:
            raise ColoringError(f"vertex {vertex!r} out of range for {self.n_left}x{self.n_right} coloring")

    def with_cells(self, updates: Iterable[tuple[int, int, int]]) -> "Coloring":
        arr = self._cells.copy()
        for u, v, code in updates:
            arr[u, v] = code
        return Coloring(arr)

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int]) -> "Coloring":
        return Coloring(self._cells[np.ix_(list(row_perm), list(col_perm))])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self.shape == other.shape and bool(np.array_equal(self._cells, other._cells))

    def __hash__(self) -> int:
        return hash((self.shape, self._cells.tobytes()))

    def __repr__(self) -> str:
        return f"Coloring({self.n_left}x{self.n_right}, complete={self.is_complete()})"

    def pretty(self) -> str:
        glyph = {ABSENT: ".", 0: "R", 1: "G", 2: "B"}
        return "\n".join("".join(glyph[int(x)] for x in row) for row in self._cells)


@dataclass(frozen=True)
class BlockSpec:
    """Block picture of a colouring: consecutive left/right blocks and a colour
    (or ``None`` for absent) per block pair."""

    left_blocks: tuple[int, ...]
    right_blocks: tuple[int, ...]
    color_table: Mapping[tuple[int, int], Color | None] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "left_blocks", tuple(int(s) for s in self.left_blocks))
        object.__setattr__(self, "right_blocks", tuple(int(s) for s in self.right_blocks))

    def validate(self) -> None:
        if any(s < 0 for s in self.left_blocks + self.right_blocks):
            raise ColoringError("block sizes must be non-negative")
        for a in range(len(self.left_blocks)):
            for b in range(len(self.right_blocks)):
                if (a, b) not in self.color_table:
                    raise ColoringError(f"block pair {(a, b)} has no entry")
        for key in self.color_table:
            a, b = key
            if not (0 <= a < len(self.left_blocks) and 0 <= b < len(self.right_blocks)):
                raise ColoringError(f"block pair {key} outside the block grid")


def _offsets(sizes: Sequence[int]) -> list[int]:
    return [0, *np.cumsum(sizes, dtype=int).tolist()]


def new_from_blocks(spec: BlockSpec) -> Coloring:
    spec.validate()
    lo, ro = _offsets(spec.left_blocks), _offsets(spec.right_blocks)
    arr = np.full((lo[-1], ro[-1]), ABSENT, dtype=np.int8)
    for (a, b), col in spec.color_table.items():
        arr[lo[a]:lo[a + 1], ro[b]:ro[b + 1]] = ABSENT if col is None else int(col)
    return Coloring(arr)


def delete_vertex(c: Coloring, v: Vertex) -> Coloring:
    """Drop a row (left vertex) or column (right vertex); later indices shift down by one."""
    c.check_vertex(v)
    axis = 0 if v.side == Side.LEFT else 1
    return Coloring(np.delete(c.cells, v.index, axis=axis))


def delete_vertices(c: Coloring, left: Iterable[int] = (), right: Iterable[int] = ()) -> tuple[Coloring, dict[Vertex, Vertex]]:
    """Remove several vertices at once; returns the new colouring and the
    old -> new index map of the surviving vertices."""
    left, right = set(left), set(right)
    for u in left:
        c.check_vertex(L(u))
    for v in right:
        c.check_vertex(R(v))
    keep_l = [u for u in range(c.n_left) if u not in left]
    keep_r = [v for v in range(c.n_right) if v not in right]
    arr = c.cells[np.ix_(keep_l, keep_r)] if keep_l and keep_r else np.full((len(keep_l), len(keep_r)), ABSENT, np.int8)
    mapping = {L(old): L(new) for new, old in enumerate(keep_l)}
    mapping.update({R(old): R(new) for new, old in enumerate(keep_r)})
    return Coloring(arr), mapping


_CODE_TO_JSON = {ABSENT: None, 0: "R", 1: "G", 2: "B"}
_JSON_TO_CODE = {None: ABSENT, "R": 0, "G": 1, "B": 2}


def coloring_to_obj(c: Coloring) -> dict:
    return {
        "n_left": c.n_left,
        "n_right": c.n_right,
        "cells": [[_CODE_TO_JSON[int(x)] for x in row] for row in c.cells],
    }


def coloring_from_obj(obj: object) -> Coloring:
    if not isinstance(obj, dict):
        raise ColoringError("coloring document must be a JSON object")
    try:
        n_left, n_right, rows = obj["n_left"], obj["n_right"], obj["cells"]
    except KeyError as exc:
        raise ColoringError(f"missing field {exc.args[0]!r}") from None
    if not (isinstance(n_left, int) and isinstance(n_right, int)) or isinstance(n_left, bool) or n_left < 0 or n_right < 0:
        raise ColoringError("n_left and n_right must be non-negative integers")
    if not isinstance(rows, list) or len(rows) != n_left:
        raise ColoringError(f"cells must be a list of {n_left} rows")
    arr = np.full((n_left, n_right), ABSENT, dtype=np.int8)
    for u, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n_right:
            raise ColoringError(f"row {u} must have {n_right} entries")
        for v, entry in enumerate(row):
            if entry not in _JSON_TO_CODE:
                raise ColoringError(f"unknown colour code {entry!r} at ({u}, {v})")
            arr[u, v] = _JSON_TO_CODE[entry]
    return Coloring(arr)


def write_coloring(c: Coloring) -> bytes:
    return json.dumps(coloring_to_obj(c), separators=(",", ":")).encode()


def read_coloring(data: bytes | str) -> Coloring:
    try:
        obj = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ColoringError(f"malformed JSON: {exc}") from None
    return coloring_from_obj(obj)
