"""Stand-alone checker for reduction certificates.

Uses only the original colouring and the certificate document; it shares no
code with the matching engine or the reducer, so a bug there cannot hide a
bad certificate.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .coloring import ABSENT, Coloring

_CODES = {"R": 0, "G": 1, "B": 2}


@dataclass
class CertificateCheck:
    ok: bool = True
    problems: list[str] = field(default_factory=list)
    matching_size: int = 0

    def fail(self, msg: str) -> None:
        self.ok = False
        self.problems.append(msg)

    def to_json(self) -> dict:
        return {"ok": self.ok, "matching_size": self.matching_size, "problems": self.problems}


def _colour_component(cells: np.ndarray, code: int, start_left: int) -> tuple[set[int], set[int]]:
    left, right = {start_left}, set()
    queue = deque([(0, start_left)])
    while queue:
        side, x = queue.popleft()
        line = cells[x, :] if side == 0 else cells[:, x]
        for y in np.flatnonzero(line == code).tolist():
            seen = right if side == 0 else left
            if y not in seen:
                seen.add(y)
                queue.append((1 - side, y))
    return left, right


def verify_certificate(c: Coloring, cert: dict) -> CertificateCheck:
    """Check a certificate produced for colouring ``c``.

    Soundness of the final matching: every edge is present in ``c`` with the
    stated colour, edges are disjoint, there are at least ``n`` of them and
    they lie in one connected component of that colour, which equals the
    component named in the certificate. Structural checks: added edges were
    absent in ``c``; ``U`` covers every absent pair of G1, so G2 is complete.
    """
    chk = CertificateCheck()
    try:
        n = int(cert["n"])
        side = int(cert["trimmed_to"])
        status = cert["status"]
    except (KeyError, TypeError, ValueError) as exc:
        chk.fail(f"malformed certificate: {exc!r}")
        return chk
    if side > min(c.shape):
        chk.fail("certificate refers to more vertices than the colouring has")
        return chk
    cells = c.cells[:side, :side]

    g1 = cells.copy()
    for u, v, code in cert.get("added_edges", []):
        if not (0 <= u < side and 0 <= v < side) or code not in _CODES:
            chk.fail(f"bad added edge {[u, v, code]}")
            continue
        if cells[u, v] != ABSENT:
            chk.fail(f"added edge ({u}, {v}) was already present")
        g1[u, v] = _CODES[code]
    u_left = {i for s, i in cert.get("U", []) if s == "L"}
    u_right = {i for s, i in cert.get("U", []) if s == "R"}
    for u, v in zip(*np.nonzero(g1 == ABSENT)):
        if int(u) not in u_left and int(v) not in u_right:
            chk.fail(f"absent pair ({int(u)}, {int(v)}) of G1 is not covered by U")
            break
    g2_shape = (side - len(u_left), side - len(u_right))
    g2 = cert.get("g2") or {}
    if (g2.get("n_left"), g2.get("n_right")) != g2_shape:
        chk.fail(f"G2 shape {g2_shape} disagrees with the certificate")

    final = cert.get("final")
    if status != "certified" or final is None:
        chk.fail(f"certificate status is {status!r}; no matching certified")
        return chk
    code = _CODES.get(final.get("color"))
    edges = [tuple(e) for e in final.get("matching", [])]
    chk.matching_size = len(edges)
    if code is None:
        chk.fail("unknown final colour")
        return chk
    if len(edges) < n:
        chk.fail(f"matching has {len(edges)} edges, fewer than n = {n}")
    if len({u for u, _ in edges}) != len(edges) or len({v for _, v in edges}) != len(edges):
        chk.fail("matching edges are not disjoint")
    for u, v in edges:
        if not (0 <= u < side and 0 <= v < side) or cells[u, v] != code:
            chk.fail(f"edge ({u}, {v}) is not a {final['color']} edge of the original colouring")
            return chk
    if edges:
        left, right = _colour_component(cells, code, edges[0][0])
        if any(u not in left or v not in right for u, v in edges):
            chk.fail("matching is not contained in a single monochromatic component")
        if sorted(left) != sorted(final.get("left", [])) or sorted(right) != sorted(final.get("right", [])):
            chk.fail("named component differs from the actual component")
    return chk
