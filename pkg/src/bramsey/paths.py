"""Exact monochromatic paths and even cycles in small colourings, and the
two-colour bipartite path Ramsey number by exhaustive search."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
from numba import njit

from . import _kernel
from .coloring import Color, Coloring, L, R, Vertex
from .matching import components
from .search import Budget, RamseyResult, run_search, scan_ramsey

MAX_COMPONENT_VERTICES = 24
DEFAULT_CYCLE_NODES = 10**7


class BudgetExceeded(RuntimeError):
    """The instance is too large for the exact search within its budget."""


class PathResult(NamedTuple):
    n_vertices: int
    path: list[Vertex]


class CycleResult(NamedTuple):
    found: bool
    cycle: list[Vertex]


@njit(cache=True)
def _longest_path_dp(adj, bound):
    """Bitmask DP: reach[mask] holds the endpoints of paths covering exactly
    ``mask``. Returns (best_mask, best_end); stops early at ``bound``."""
    nv = adj.shape[0]
    reach = np.zeros(1 << nv, np.int64)
    for v in range(nv):
        reach[1 << v] = np.int64(1) << v
    best_len = 1
    best_mask = 1
    best_end = 0
    for mask in range(1, 1 << nv):
        ends = reach[mask]
        if ends == 0:
            continue
        size = 0
        x = mask
        while x:
            x &= x - 1
            size += 1
        if size > best_len:
            best_len = size
            best_mask = mask
            e = 0
            while not (ends >> e) & 1:
                e += 1
            best_end = e
            if best_len >= bound:
                break
        e = 0
        rest = ends
        while rest:
            if rest & 1:
                nxt = adj[e] & ~mask
                w = 0
                while nxt:
                    if nxt & 1:
                        reach[mask | (1 << w)] |= np.int64(1) << w
                    nxt >>= 1
                    w += 1
            rest >>= 1
            e += 1
    # walk the path back from best_end
    order = np.empty(best_len, np.int64)
    mask = best_mask
    e = best_end
    for pos in range(best_len - 1, -1, -1):
        order[pos] = e
        prev_mask = mask & ~(np.int64(1) << e)
        if prev_mask == 0:
            break
        cand = reach[prev_mask] & adj[e]
        f = 0
        while not (cand >> f) & 1:
            f += 1
        mask = prev_mask
        e = f
    return order


def _labelled(comp) -> tuple[list[Vertex], np.ndarray]:
    # interleave sides so that low masks are balanced
    ls, rs = sorted(comp.left), sorted(comp.right)
    verts: list[Vertex] = []
    for a in range(max(len(ls), len(rs))):
        if a < len(ls):
            verts.append(L(ls[a]))
        if a < len(rs):
            verts.append(R(rs[a]))
    pos = {v: i for i, v in enumerate(verts)}
    adj = np.zeros(len(verts), np.int64)
    for u, v in comp.edges:
        a, b = pos[L(u)], pos[R(v)]
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return verts, adj


def longest_monochromatic_path(c: Coloring, col: Color, max_vertices: int = MAX_COMPONENT_VERTICES) -> PathResult:
    """Longest path (counted in vertices) using only ``col`` edges; 0 if the
    colour is unused."""
    best = PathResult(0, [])
    for comp in sorted(components(c, col), key=lambda k: -k.order):
        bound = min(comp.order, 2 * min(len(comp.left), len(comp.right)) + 1)
        if bound <= best.n_vertices:
            continue
        if comp.order > max_vertices:
            raise BudgetExceeded(f"component with {comp.order} vertices exceeds the exact-path limit {max_vertices}")
        verts, adj = _labelled(comp)
        order = _longest_path_dp(adj, bound)
        if len(order) > best.n_vertices:
            best = PathResult(len(order), [verts[i] for i in order])
    return best


def has_even_cycle(c: Coloring, col: Color, length: int, max_nodes: int = DEFAULT_CYCLE_NODES) -> CycleResult:
    """Decide whether colour ``col`` contains a cycle on ``length`` vertices.

    The witness starts at the cycle's smallest left vertex and alternates
    sides.
    """
    if length < 4 or length % 2:
        raise ValueError("cycle length must be even and at least 4")
    half = length // 2
    nodes = 0
    for comp in components(c, col):
        if len(comp.left) < half or len(comp.right) < half:
            continue
        nbr_l: dict[int, list[int]] = {}
        nbr_r: dict[int, list[int]] = {}
        for u, v in comp.edges:
            nbr_l.setdefault(u, []).append(v)
            nbr_r.setdefault(v, []).append(u)
        for s in sorted(comp.left):
            # left vertices on the cycle other than s must exceed s
            path = [L(s)]
            used_l, used_r = {s}, set()
            stack = [iter(nbr_l[s])]
            while stack:
                nxt = next(stack[-1], None)
                if nxt is None:
                    stack.pop()
                    last = path.pop()
                    (used_l if last.side == 0 else used_r).discard(last.index)
                    if not path:
                        break
                    continue
                nodes += 1
                if nodes > max_nodes:
                    raise BudgetExceeded(f"cycle search exceeded {max_nodes} nodes")
                tail = path[-1]
                if tail.side == 0:
                    if nxt in used_r:
                        continue
                    if len(path) == length - 1:
                        if s in nbr_r[nxt]:
                            return CycleResult(True, path + [R(nxt)])
                        continue
                    used_r.add(nxt)
                    path.append(R(nxt))
                    stack.append(iter(nbr_r[nxt]))
                else:
                    if nxt <= s or nxt in used_l:
                        continue
                    used_l.add(nxt)
                    path.append(L(nxt))
                    stack.append(iter(nbr_l[nxt]))
            used_l.discard(s)
    return CycleResult(False, [])


def _two_colour_verifier(n_path: int):
    def check(c: Coloring) -> bool:
        return all(longest_monochromatic_path(c, col).n_vertices < n_path for col in (Color.RED, Color.BLUE))
    return check


def two_colour_path_ramsey(n_path: int, n_max: int, budget: Budget | None = None, *, threads: int | None = 1) -> RamseyResult:
    """Smallest N <= n_max such that every red/blue colouring of K_{N,N} has a
    monochromatic path on ``n_path`` vertices (interval if the budget runs out)."""
    if n_path < 2:
        raise ValueError("n_path must be >= 2")
    verify = _two_colour_verifier(n_path)

    def search(n):
        return run_search(
            n, (n_path, n_path), mode=_kernel.MODE_PATH, budget=budget, threads=threads,
            verify=verify, colors=(Color.RED, Color.BLUE),
        )

    return scan_ramsey(search, n_max, (n_path, n_path))


def path_ramsey_formula(n_path: int) -> int:
    return n_path - 1 if n_path % 2 == 0 else n_path
