"""Compiled DFS over colourings of K_{n,n} (numba).

Cells are filled in row-major order. State lives in caller-owned arrays so a
search can be paused after a node quota and resumed. Per-colour adjacency is
kept as bitmasks: ``adj_l[c, u]`` is the set of right neighbours of left
vertex ``u`` in colour ``c``, ``adj_r[c, v]`` the converse. ``n <= 62``.

Pruning is exact: a branch is cut as soon as the colour just placed already
contains a forbidden structure, which is monotone under adding edges.
"""

import numpy as np
from numba import njit

MODE_CM = 0
MODE_PATH = 1

FOUND = 1
EXHAUSTED = 0
PAUSED = 2


@njit(cache=True, nogil=True)
def _component(adj_l, adj_r, c, i, n):
    lm = np.int64(1) << i
    rm = np.int64(0)
    while True:
        nr = rm
        for u in range(n):
            if (lm >> u) & 1:
                nr |= adj_l[c, u]
        nl = lm
        for v in range(n):
            if (nr >> v) & 1:
                nl |= adj_r[c, v]
        if nl == lm and nr == rm:
            return lm, rm
        lm = nl
        rm = nr


@njit(cache=True, nogil=True)
def _popcount(x):
    cnt = 0
    while x:
        x &= x - 1
        cnt += 1
    return cnt


@njit(cache=True, nogil=True)
def matching_at_least(adj_l, adj_r, c, i, n, t):
    """Does the colour-c component of left vertex i have a matching of size t?"""
    lm, rm = _component(adj_l, adj_r, c, i, n)
    if _popcount(lm) < t or _popcount(rm) < t:
        return False
    match_r = np.full(n, -1, np.int64)
    match_l = np.full(n, -1, np.int64)
    stack_u = np.empty(n + 1, np.int64)
    stack_m = np.empty(n + 1, np.int64)
    size = 0
    for s in range(n):
        if not (lm >> s) & 1:
            continue
        visited = np.int64(0)
        sp = 0
        stack_u[0] = s
        stack_m[0] = adj_l[c, s]
        found = -1
        while sp >= 0:
            cand = stack_m[sp] & ~visited
            if cand == 0:
                sp -= 1
                continue
            v = 0
            while not (cand >> v) & 1:
                v += 1
            bit = np.int64(1) << v
            visited |= bit
            stack_m[sp] = cand & ~bit
            if match_r[v] == -1:
                found = v
                break
            sp += 1
            stack_u[sp] = match_r[v]
            stack_m[sp] = adj_l[c, match_r[v]]
        if found >= 0:
            v = found
            k = sp
            while k >= 0:
                u = stack_u[k]
                prev = match_l[u]
                match_l[u] = v
                match_r[v] = u
                v = prev
                k -= 1
            size += 1
            if size >= t:
                return True
    return False


@njit(cache=True, nogil=True)
def path_at_least(adj_l, adj_r, c, i, n, t):
    """Is there a colour-c path on t vertices in the component of left vertex i?"""
    if t <= 1:
        return True
    lm, rm = _component(adj_l, adj_r, c, i, n)
    if _popcount(lm) + _popcount(rm) < t:
        return False
    # frames: vertex id (left u -> u, right v -> n + v), untried neighbour mask
    st_v = np.empty(2 * n + 1, np.int64)
    st_m = np.empty(2 * n + 1, np.int64)
    for start in range(2 * n):
        if start < n:
            if not (lm >> start) & 1:
                continue
            st_m[0] = adj_l[c, start]
        else:
            if not (rm >> (start - n)) & 1:
                continue
            st_m[0] = adj_r[c, start - n]
        st_v[0] = start
        vis_l = np.int64(0)
        vis_r = np.int64(0)
        if start < n:
            vis_l = np.int64(1) << start
        else:
            vis_r = np.int64(1) << (start - n)
        sp = 0
        while sp >= 0:
            x = st_v[sp]
            avail = st_m[sp] & ~(vis_r if x < n else vis_l)
            if avail == 0:
                if x < n:
                    vis_l &= ~(np.int64(1) << x)
                else:
                    vis_r &= ~(np.int64(1) << (x - n))
                sp -= 1
                continue
            y = 0
            while not (avail >> y) & 1:
                y += 1
            bit = np.int64(1) << y
            st_m[sp] &= ~bit
            sp += 1
            if sp + 1 >= t:
                return True
            if x < n:
                vis_r |= bit
                st_v[sp] = n + y
                st_m[sp] = adj_r[c, y]
            else:
                vis_l |= bit
                st_v[sp] = y
                st_m[sp] = adj_l[c, y]
    return False


@njit(cache=True, nogil=True)
def dfs(n, ncolors, mode, th, prec, symmetry, grid, adj_l, adj_r, first_use,
        row_eq, col_eq, p, floor, target, max_nodes):
    """Advance the search from position ``p``.

    A cell ``grid[p] >= 0`` on entry means "that colour was tried last; try
    the next". Returns ``(status, p, nodes)``: FOUND when ``p`` reaches
    ``target``, EXHAUSTED when it backtracks below ``floor``, PAUSED after
    ``max_nodes`` placements/backtracks.
    """
    nodes = 0
    while True:
        if p == target:
            return FOUND, p, nodes
        if p < floor:
            return EXHAUSTED, p, nodes
        if nodes >= max_nodes:
            return PAUSED, p, nodes
        i = p // n
        j = p - i * n
        bi = np.int64(1) << i
        bj = np.int64(1) << j
        old = grid[p]
        if old >= 0:
            adj_l[old, i] &= ~bj
            adj_r[old, j] &= ~bi
            if first_use[old] == p:
                first_use[old] = -1
        need_row = symmetry and i > 0 and (j == 0 or row_eq[p - 1])
        need_col = symmetry and j > 0 and (i == 0 or col_eq[p - n])
        c = old + 1
        placed = False
        while c < ncolors:
            ok = True
            if symmetry and prec[c] >= 0 and first_use[prec[c]] < 0:
                ok = False
            elif need_row and c < grid[p - n]:
                ok = False
            elif need_col and c < grid[p - 1]:
                ok = False
            if ok:
                adj_l[c, i] |= bj
                adj_r[c, j] |= bi
                if mode == MODE_CM:
                    bad = matching_at_least(adj_l, adj_r, c, i, n, th[c])
                else:
                    bad = path_at_least(adj_l, adj_r, c, i, n, th[c])
                if bad:
                    adj_l[c, i] &= ~bj
                    adj_r[c, j] &= ~bi
                else:
                    placed = True
                    grid[p] = c
                    if first_use[c] < 0:
                        first_use[c] = p
                    row_eq[p] = need_row and c == grid[p - n]
                    col_eq[p] = need_col and c == grid[p - 1]
                    break
            c += 1
        nodes += 1
        if placed:
            p += 1
        else:
            grid[p] = -1
            p -= 1


@njit(cache=True, nogil=True)
def seed(n, prefix, grid, adj_l, adj_r, first_use, row_eq, col_eq):
    """Load an already-validated prefix of cells into fresh state arrays."""
    for p in range(prefix.shape[0]):
        c = prefix[p]
        i = p // n
        j = p - i * n
        grid[p] = c
        adj_l[c, i] |= np.int64(1) << j
        adj_r[c, j] |= np.int64(1) << i
        if first_use[c] < 0:
            first_use[c] = p
        need_row = i > 0 and (j == 0 or row_eq[p - 1])
        need_col = j > 0 and (i == 0 or col_eq[p - n])
        row_eq[p] = need_row and c == grid[p - n]
        col_eq[p] = need_col and c == grid[p - 1]
