"""Exact small-scale Ramsey values r(k, l, m) for connected matchings.

``find_avoiding`` runs a pruned exhaustive search over 3-colourings of
K_{n,n}; ``ramsey_value`` scans n upwards until a full refutation.
"""

from __future__ import annotations

import enum
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Sequence

import numpy as np

from . import _kernel
from .coloring import Color, Coloring
from .matching import meets_thresholds

log = logging.getLogger(__name__)

DEFAULT_BUDGET_NODES = 10**8
DEFAULT_BUDGET_SECONDS = 600.0
BUDGET_ENV = "BRAMSEY_BUDGET_NODES"
_CHUNK = 1 << 18


class Thresholds(NamedTuple):
    """Connected-matching sizes to avoid in red, green and blue."""

    k: int
    l: int
    m: int

    @classmethod
    def of(cls, *values) -> "Thresholds":
        if len(values) == 1 and not isinstance(values[0], int):
            values = tuple(values[0])
        th = cls(*(int(v) for v in values))
        if min(th) < 1:
            raise ValueError(f"thresholds must be >= 1, got {tuple(th)}")
        return th


@dataclass(frozen=True)
class Budget:
    nodes: int = DEFAULT_BUDGET_NODES
    seconds: float = DEFAULT_BUDGET_SECONDS

    @classmethod
    def default(cls) -> "Budget":
        env = os.environ.get(BUDGET_ENV)
        return cls(nodes=int(env)) if env else cls()


class Status(str, enum.Enum):
    WITNESS_FOUND = "witness_found"
    REFUTED = "refuted"
    BUDGET_EXHAUSTED = "budget_exhausted"


@dataclass
class SearchOutcome:
    n: int
    status: Status
    witness: Coloring | None = None
    nodes_explored: int = 0
    elapsed: float = 0.0
    tasks: int = 0

    def to_json(self) -> dict:
        from .coloring import coloring_to_obj

        return {
            "n": self.n,
            "status": self.status.value,
            "nodes_explored": self.nodes_explored,
            "elapsed": round(self.elapsed, 6),
            "tasks": self.tasks,
            "witness": coloring_to_obj(self.witness) if self.witness is not None else None,
        }


def avoids(c: Coloring, th: Sequence[int]) -> bool:
    """True iff the complete colouring has none of the threshold connected matchings."""
    if not c.is_complete():
        raise ValueError("avoids() needs a complete colouring")
    return not meets_thresholds(c, *th)[0]


def _precedence(th: Sequence[int]) -> np.ndarray:
    """For each colour, the previous colour it is interchangeable with (or -1)."""
    prec = np.full(len(th), -1, np.int64)
    for c in range(len(th)):
        for d in range(c - 1, -1, -1):
            if th[d] == th[c]:
                prec[c] = d
                break
    return prec


@dataclass
class _Problem:
    n: int
    ncolors: int
    mode: int
    th: np.ndarray
    prec: np.ndarray
    symmetry: bool

    def fresh(self):
        cells = self.n * self.n
        return (
            np.full(cells, -1, np.int64),
            np.zeros((self.ncolors, self.n), np.int64),
            np.zeros((self.ncolors, self.n), np.int64),
            np.full(self.ncolors, -1, np.int64),
            np.zeros(cells, np.bool_),
            np.zeros(cells, np.bool_),
        )

    def run(self, state, p, floor, target, max_nodes):
        grid, adj_l, adj_r, first_use, row_eq, col_eq = state
        st, p, nodes = _kernel.dfs(
            self.n, self.ncolors, self.mode, self.th, self.prec, self.symmetry,
            grid, adj_l, adj_r, first_use, row_eq, col_eq, p, floor, target, max_nodes,
        )
        return int(st), int(p), int(nodes)


@dataclass
class _Shared:
    budget: Budget
    deadline: float
    lock: threading.Lock = field(default_factory=threading.Lock)
    stop: threading.Event = field(default_factory=threading.Event)
    nodes: int = 0
    witness: np.ndarray | None = None

    def add(self, k: int) -> int:
        with self.lock:
            self.nodes += k
            return self.nodes

    def out_of_budget(self) -> bool:
        return self.nodes >= self.budget.nodes or time.monotonic() >= self.deadline


def _run_task(problem: _Problem, prefix: np.ndarray, shared: _Shared) -> Status:
    state = problem.fresh()
    split = prefix.shape[0]
    _kernel.seed(problem.n, prefix, *state)
    p = split
    target = problem.n * problem.n
    while True:
        if shared.stop.is_set():
            return Status.BUDGET_EXHAUSTED
        remaining = shared.budget.nodes - shared.nodes
        if remaining <= 0 or time.monotonic() >= shared.deadline:
            return Status.BUDGET_EXHAUSTED
        st, p, nodes = problem.run(state, p, split, target, min(_CHUNK, remaining))
        shared.add(nodes)
        if st == _kernel.FOUND:
            with shared.lock:
                if shared.witness is None:
                    shared.witness = state[0].copy()
            shared.stop.set()
            return Status.WITNESS_FOUND
        if st == _kernel.EXHAUSTED:
            return Status.REFUTED


def _split_prefixes(problem: _Problem, split: int, shared: _Shared) -> list[np.ndarray] | None:
    """Enumerate all admissible assignments of the first ``split`` cells.
    Returns None if the budget ran out while enumerating."""
    state = problem.fresh()
    prefixes = []
    p = 0
    while True:
        if shared.out_of_budget():
            return None
        st, p, nodes = problem.run(state, p, 0, split, min(_CHUNK, shared.budget.nodes - shared.nodes))
        shared.add(nodes)
        if st == _kernel.FOUND:
            prefixes.append(state[0][:split].copy())
            p = split - 1
        elif st == _kernel.EXHAUSTED:
            return prefixes


def run_search(
    n: int,
    th: Sequence[int],
    *,
    mode: int = _kernel.MODE_CM,
    budget: Budget | None = None,
    threads: int | None = 1,
    symmetry: bool = True,
    verify: Callable[[Coloring], bool] | None = None,
    colors: Sequence[Color] = tuple(Color),
) -> SearchOutcome:
    """Search colourings of K_{n,n} with ``len(th)`` colours in which colour c
    has no forbidden structure of size ``th[c]``.

    The tree is split after the first full row into independent tasks;
    statuses merge as witness > budget exhausted > refuted.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > 62:
        raise ValueError("bitmask kernel supports n <= 62")
    budget = budget or Budget.default()
    threads = threads or os.cpu_count() or 1
    problem = _Problem(n, len(th), mode, np.asarray(th, np.int64), _precedence(th), symmetry)
    t0 = time.monotonic()
    shared = _Shared(budget, t0 + budget.seconds)
    prefixes = _split_prefixes(problem, n, shared)

    if prefixes is None:
        status = Status.BUDGET_EXHAUSTED
    elif not prefixes:
        status = Status.REFUTED
    else:
        if threads > 1 and len(prefixes) > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(lambda pre: _run_task(problem, pre, shared), prefixes))
        else:
            results = []
            for pre in prefixes:
                results.append(_run_task(problem, pre, shared))
                if results[-1] == Status.WITNESS_FOUND:
                    break
        if Status.WITNESS_FOUND in results:
            status = Status.WITNESS_FOUND
        elif Status.BUDGET_EXHAUSTED in results:
            status = Status.BUDGET_EXHAUSTED
        else:
            status = Status.REFUTED

    witness = None
    if status == Status.WITNESS_FOUND:
        codes = np.array([int(colors[x]) for x in shared.witness], np.int8).reshape(n, n)
        witness = Coloring(codes)
        if verify is not None and not verify(witness):
            raise AssertionError(f"search returned a witness that fails re-verification:\n{witness.pretty()}")
    elapsed = time.monotonic() - t0
    log.debug("n=%d th=%s -> %s (%d nodes, %.3fs)", n, tuple(th), status.value, shared.nodes, elapsed)
    return SearchOutcome(n, status, witness, shared.nodes, elapsed, len(prefixes or ()))


def find_avoiding(
    n: int,
    th: Sequence[int],
    budget: Budget | None = None,
    *,
    threads: int | None = 1,
    symmetry: bool = True,
) -> SearchOutcome:
    """Find a 3-colouring of K_{n,n} with no red k-, green l- or blue
    m-connected matching, or prove none exists."""
    th = Thresholds.of(th)
    return run_search(
        n, th, budget=budget, threads=threads, symmetry=symmetry,
        verify=lambda c: avoids(c, th),
    )


@dataclass
class RamseyResult:
    thresholds: tuple[int, ...]
    value: int | None
    lower: int
    upper: int | None
    outcomes: list[SearchOutcome]

    @property
    def exact(self) -> bool:
        return self.value is not None

    def witness(self) -> Coloring | None:
        """Avoiding colouring at n = value - 1, if any was needed."""
        for o in reversed(self.outcomes):
            if o.status == Status.WITNESS_FOUND:
                return o.witness
        return None

    def to_json(self) -> dict:
        return {
            "thresholds": list(self.thresholds),
            "value": self.value,
            "lower": self.lower,
            "upper": self.upper,
            "outcomes": [o.to_json() for o in self.outcomes],
        }


def scan_ramsey(search: Callable[[int], SearchOutcome], n_max: int, thresholds: tuple[int, ...]) -> RamseyResult:
    """Smallest n <= n_max at which ``search`` refutes; witnesses below it
    raise the lower bound, budget exhaustion leaves the interval open."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    outcomes = []
    lower, upper = 1, None
    for n in range(1, n_max + 1):
        out = search(n)
        outcomes.append(out)
        if out.status == Status.WITNESS_FOUND:
            lower = n + 1
        elif out.status == Status.REFUTED:
            upper = n
            break
    value = upper if upper is not None and upper == lower else None
    return RamseyResult(thresholds, value, lower, upper, outcomes)


def ramsey_value(th: Sequence[int], n_max: int, budget: Budget | None = None, *, threads: int | None = 1) -> RamseyResult:
    th = Thresholds.of(th)
    return scan_ramsey(lambda n: find_avoiding(n, th, budget, threads=threads), n_max, tuple(th))


def theorem8_formula(k: int, l: int) -> int:
    """Closed form for r(k, l, l), branches checked in order with exact
    rational boundaries."""
    if k < 1 or l < 1:
        raise ValueError("k, l must be >= 1")
    if 2 * l <= k + 1:
        return k + 2 * l - 1
    if 3 * l <= 2 * k:
        return 4 * l - 2
    if l < k:
        return 2 * k + l - 2
    return k + 2 * l - 2


def compare_with_theorem8(
    grid: Sequence[tuple[int, int]],
    n_max: int | None = None,
    budget: Budget | None = None,
    *,
    threads: int | None = 1,
) -> list[dict]:
    """Search r(k, l, l) on each grid point and set it beside the closed
    form. Mismatches are recorded, never raised."""
    rows = []
    for k, l in grid:
        formula = theorem8_formula(k, l)
        res = ramsey_value((k, l, l), n_max or formula + 1, budget, threads=threads)
        if res.exact:
            match = res.value == formula
        elif res.upper is not None and not res.lower <= formula <= res.upper:
            match = False
        elif res.upper is None and formula < res.lower:
            match = False
        else:
            match = None
        rows.append({
            "k": k,
            "l": l,
            "searched": res.value,
            "lower": res.lower,
            "upper": res.upper,
            "formula": formula,
            "match": match,
            "nodes": sum(o.nodes_explored for o in res.outcomes),
        })
    return rows
