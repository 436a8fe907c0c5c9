"""Per-colour structure of a coloured bipartite graph.

Components of one colour, maximum matchings (augmenting paths), minimum
vertex covers via Konig's construction, cover vertices, component types and
largest monochromatic connected matchings.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

import numpy as np

from .coloring import Color, Coloring, L, R, Side, Vertex


@dataclass(frozen=True)
class Matching:
    color: Color | None
    edges: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    def is_valid(self) -> bool:
        lefts = [u for u, _ in self.edges]
        rights = [v for _, v in self.edges]
        return len(set(lefts)) == len(lefts) and len(set(rights)) == len(rights)

    def to_json(self) -> list:
        return [[u, v] for u, v in self.edges]


@dataclass(frozen=True)
class Component:
    """A maximal connected piece of one colour's subgraph."""

    color: Color
    left: frozenset[int]
    right: frozenset[int]
    edges: tuple[tuple[int, int], ...]

    @property
    def order(self) -> int:
        return len(self.left) + len(self.right)

    @property
    def vertices(self) -> list[Vertex]:
        return [L(u) for u in sorted(self.left)] + [R(v) for v in sorted(self.right)]

    def __contains__(self, vertex: Vertex) -> bool:
        side = self.left if vertex.side == Side.LEFT else self.right
        return vertex.index in side

    def to_json(self) -> dict:
        return {
            "color": self.color.code,
            "left": sorted(self.left),
            "right": sorted(self.right),
            "n_edges": len(self.edges),
        }

    @cached_property
    def nu(self) -> int:
        return len(max_matching(self))


class ComponentType(enum.Enum):
    TYPE_L = "L"
    TYPE_R = "R"
    UNSPECIFIED = "unspecified"
    NOT_CONNECTED_TO_BOTH_SIDES = "none"


# --- generic bipartite routines on edge lists -------------------------------

def _adjacency(edges: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {}
    for u, v in edges:
        adj.setdefault(u, []).append(v)
    for nbrs in adj.values():
        nbrs.sort()
    return adj


def _kuhn(adj: dict[int, list[int]]) -> tuple[dict[int, int], dict[int, int]]:
    """Maximum matching by repeated augmenting-path search, O(V*E).

    Deterministic: roots are tried in increasing order and neighbours in
    increasing order.
    """
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    for root in sorted(adj):
        visited: set[int] = set()
        path: list[int] = []
        stack = [(root, iter(adj[root]))]
        while stack:
            u, it = stack[-1]
            for v in it:
                if v in visited:
                    continue
                visited.add(v)
                w = match_r.get(v)
                if w is None:
                    for (uu, _), vv in zip(stack, path + [v]):
                        match_l[uu] = vv
                        match_r[vv] = uu
                    stack = []
                    break
                path.append(v)
                stack.append((w, iter(adj[w])))
                break
            else:
                stack.pop()
                if path:
                    path.pop()
    return match_l, match_r


def bipartite_max_matching(edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    match_l, _ = _kuhn(_adjacency(edges))
    return sorted(match_l.items())


def bipartite_min_cover(edges: Iterable[tuple[int, int]]) -> tuple[set[int], set[int]]:
    """Minimum vertex cover ``(left, right)`` of a bipartite edge list.

    Konig: let Z be everything reachable from unmatched left vertices by
    alternating paths; the cover is ``(L - Z) | (R & Z)``.
    """
    edges = list(edges)
    adj = _adjacency(edges)
    match_l, match_r = _kuhn(adj)
    z_left = {u for u in adj if u not in match_l}
    z_right: set[int] = set()
    queue = deque(sorted(z_left))
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v in z_right:
                continue
            z_right.add(v)
            w = match_r.get(v)
            if w is not None and w not in z_left:
                z_left.add(w)
                queue.append(w)
    return set(adj) - z_left, z_right


# --- components --------------------------------------------------------------

def components(c: Coloring, col: Color) -> list[Component]:
    """Components of colour ``col``, ordered by their smallest vertex
    (left vertices before right ones). Vertices without a ``col`` edge are skipped."""
    mask = c.cells == int(col)
    nbr_l = [np.flatnonzero(mask[u]).tolist() for u in range(c.n_left)]
    nbr_r = [np.flatnonzero(mask[:, v]).tolist() for v in range(c.n_right)]
    seen_l = [False] * c.n_left
    seen_r = [False] * c.n_right
    out: list[Component] = []
    starts = [(Side.LEFT, u) for u in range(c.n_left)] + [(Side.RIGHT, v) for v in range(c.n_right)]
    for side, s in starts:
        if side == Side.LEFT and (seen_l[s] or not nbr_l[s]):
            continue
        if side == Side.RIGHT and (seen_r[s] or not nbr_r[s]):
            continue
        left, right = set(), set()
        queue = deque([(side, s)])
        if side == Side.LEFT:
            seen_l[s] = True
        else:
            seen_r[s] = True
        while queue:
            sd, x = queue.popleft()
            if sd == Side.LEFT:
                left.add(x)
                for y in nbr_l[x]:
                    if not seen_r[y]:
                        seen_r[y] = True
                        queue.append((Side.RIGHT, y))
            else:
                right.add(x)
                for y in nbr_r[x]:
                    if not seen_l[y]:
                        seen_l[y] = True
                        queue.append((Side.LEFT, y))
        edges = tuple((u, v) for u in sorted(left) for v in nbr_l[u])
        out.append(Component(Color(col), frozenset(left), frozenset(right), edges))
    return out


def component_from_edges(col: Color, edges: Iterable[tuple[int, int]]) -> Component:
    """Wrap an edge list as a Component (connectivity is not checked)."""
    edges = tuple(sorted(set(edges)))
    return Component(Color(col), frozenset(u for u, _ in edges), frozenset(v for _, v in edges), edges)


# --- matchings and covers -----------------------------------------------------

def max_matching(comp: Component) -> Matching:
    return Matching(comp.color, tuple(bipartite_max_matching(comp.edges)))


def min_vertex_cover(comp: Component) -> frozenset[Vertex]:
    left, right = bipartite_min_cover(comp.edges)
    return frozenset([L(u) for u in left] + [R(v) for v in right])


def _edges_without(comp: Component, v: Vertex) -> list[tuple[int, int]]:
    if v.side == Side.LEFT:
        return [e for e in comp.edges if e[0] != v.index]
    return [e for e in comp.edges if e[1] != v.index]


def cover_vertices(comp: Component) -> frozenset[Vertex]:
    """Vertices lying in some minimum cover, found by probing whether deleting
    each vertex lowers the matching number."""
    nu = comp.nu
    return frozenset(
        v for v in comp.vertices if len(bipartite_max_matching(_edges_without(comp, v))) == nu - 1
    )


def type_from_cover_vertices(cover: Iterable[Vertex]) -> ComponentType:
    sides = {v.side for v in cover}
    if sides == {Side.LEFT}:
        return ComponentType.TYPE_L
    if sides == {Side.RIGHT}:
        return ComponentType.TYPE_R
    if sides:
        return ComponentType.UNSPECIFIED
    return ComponentType.NOT_CONNECTED_TO_BOTH_SIDES


def component_type(comp: Component) -> ComponentType:
    return type_from_cover_vertices(cover_vertices(comp))


@dataclass(frozen=True)
class CoverReport:
    component: Component
    matching_number: int
    min_cover: frozenset[Vertex]
    cover_vertices: frozenset[Vertex]
    type: ComponentType

    @property
    def side_cover(self) -> Side | None:
        """The side whose whole vertex set is a minimum cover, if any
        (left preferred when both are)."""
        if len(self.component.left) == self.matching_number:
            return Side.LEFT
        if len(self.component.right) == self.matching_number:
            return Side.RIGHT
        return None

    def to_json(self) -> dict:
        return {
            **self.component.to_json(),
            "nu": self.matching_number,
            "min_cover": [v.to_json() for v in sorted(self.min_cover)],
            "cover_vertices": [v.to_json() for v in sorted(self.cover_vertices)],
            "type": self.type.value,
        }


def analyze(comp: Component) -> CoverReport:
    cov = cover_vertices(comp)
    return CoverReport(comp, comp.nu, min_vertex_cover(comp), cov, type_from_cover_vertices(cov))


def analyze_coloring(c: Coloring, col: Color) -> list[CoverReport]:
    return [analyze(comp) for comp in components(c, col)]


# --- connected matchings --------------------------------------------------------

class ConnectedMatching(NamedTuple):
    size: int
    component: Component | None
    matching: Matching


def largest_connected_matching(c: Coloring, col: Color) -> ConnectedMatching:
    best = ConnectedMatching(0, None, Matching(Color(col)))
    for comp in components(c, col):
        # nu <= min side size; skip components that cannot win
        if min(len(comp.left), len(comp.right)) <= best.size:
            continue
        m = max_matching(comp)
        if len(m) > best.size:
            best = ConnectedMatching(len(m), comp, m)
    return best


def meets_thresholds(c: Coloring, k: int, l: int, m: int) -> tuple[bool, Matching | None]:
    """True (with a witness) iff there is a red k-, green l- or blue m-connected
    matching. A threshold of 0 is met vacuously by the empty matching."""
    for col, t in zip(Color, (k, l, m)):
        if t < 0:
            raise ValueError("thresholds must be non-negative")
        if t == 0:
            return True, Matching(col)
    for col, t in zip(Color, (k, l, m)):
        best = largest_connected_matching(c, col)
        if best.size >= t:
            return True, best.matching
    return False, None
