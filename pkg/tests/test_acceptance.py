"""Acceptance criteria, one test each. Every test records a PASS/FAIL line;
the lines are printed together at the end of the session (see conftest.py).

Run only this file with ``pytest tests/test_acceptance.py -v``.
"""

import json
import time

import numpy as np
import pytest

from bramsey.certificate import verify_certificate
from bramsey.cli import main
from bramsey.coloring import Color, L, R
from bramsey.constructions import example1, lemma6_params
from bramsey.fixtures import STYLES, deficient_fixture
from bramsey.matching import bipartite_max_matching, component_from_edges, cover_vertices
from bramsey.paths import has_even_cycle, longest_monochromatic_path, path_ramsey_formula, two_colour_path_ramsey
from bramsey.reducer import reduce_and_find
from bramsey.search import Budget, Status, compare_with_theorem8, find_avoiding, ramsey_value
from oracles import brute_nu, brute_ramsey, cover_table

RESULTS: dict[int, tuple[bool, str]] = {}
BIG = Budget(nodes=10**10, seconds=3600)


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = (ok, detail)
    assert ok, detail


def cli(*argv) -> int:
    return main([str(a) for a in argv])


def test_criterion_01_smallest_values():
    t0 = time.monotonic()
    r111 = ramsey_value((1, 1, 1), 3, BIG, threads=1)
    r222 = ramsey_value((2, 2, 2), 6, BIG, threads=1)
    dt = time.monotonic() - t0
    refute = r222.outcomes[-1]
    ok = r111.value == 1 and r222.value == 4 and refute.status is Status.REFUTED and dt < 60
    record(1, ok, f"r(1,1,1)={r111.value} r(2,2,2)={r222.value}; n=4 refuted with {refute.nodes_explored} nodes; {dt:.2f}s")


def test_criterion_02_example1_lower_bounds(tmp_path, capsys):
    worst, bad = 0.0, []
    for k in range(2, 9):
        f = tmp_path / f"ex{k}.json"
        t0 = time.monotonic()
        a = cli("construct", "example1", "--a", f"{k - 1},{k - 1},{k - 1}", "--out", f)
        b = cli("verify", f, "--cm", f"{k},{k},{k}")
        worst = max(worst, time.monotonic() - t0)
        if (a, b) != (0, 0):
            bad.append(k)
    capsys.readouterr()
    record(2, not bad and worst < 1.0, f"k=2..8 all exit 0: {not bad} {bad}; slowest {worst:.3f}s")


def test_criterion_03_lemma6_grid(tmp_path, capsys):
    grid = [(k, l) for k in range(1, 9) for l in range(1, k + 1) if 2 * l >= k]
    worst, bad = 0.0, []
    for k, l in grid:
        f = tmp_path / f"l6_{k}_{l}.json"
        t0 = time.monotonic()
        cli("construct", "lemma6", "--k", k, "--l", l, "--out", f)
        code = cli("verify", f, "--cm", f"{k + 1},{l + 1},{l + 1}")
        worst = max(worst, time.monotonic() - t0)
        t = lemma6_params(k, l)[0]
        size = json.loads(f.read_text())["n_left"]
        if code != 0 or size != k + 2 * l + t:
            bad.append((k, l))
    capsys.readouterr()
    record(3, not bad and worst < 1.0, f"{len(grid)} grid points, failures {bad}; slowest {worst:.3f}s")


def test_criterion_04_r122():
    t0 = time.monotonic()
    brute = brute_ramsey((1, 2, 2), 3)
    res = ramsey_value((1, 2, 2), 5, BIG, threads=1)
    dt = time.monotonic() - t0
    formula = 1 + 2 * 2 - 2
    ok = brute == res.value == formula == 3 and dt < 5
    record(4, ok, f"search {res.value}, plain enumeration {brute}, formula {formula}; {dt:.2f}s")


# r(k,l,m) on {1,2}^3: values for n <= 3 come from plain enumeration of all
# 3^(n^2) colourings; r(2,2,2) = 4 was confirmed with symmetry breaking off.
DERIVED_TABLE = {(1, 1, 1): 1, (2, 1, 1): 2, (2, 2, 1): 3, (2, 2, 2): 4}


def test_criterion_05_small_table():
    t0 = time.monotonic()
    table = {}
    for th in np.ndindex(2, 2, 2):
        th = tuple(x + 1 for x in th)
        table[th] = ramsey_value(th, 6, BIG, threads=1).value
    dt = time.monotonic() - t0
    problems = []
    for th, v in table.items():
        if v != DERIVED_TABLE[tuple(sorted(th, reverse=True))]:
            problems.append(f"value {th}")
        for i in range(3):
            if th[i] == 1:
                up = th[:i] + (2,) + th[i + 1:]
                if table[up] < v:
                    problems.append(f"monotonicity {th}->{up}")
    plain = find_avoiding(4, (2, 2, 2), BIG, symmetry=False).status
    if plain is not Status.REFUTED:
        problems.append("r(2,2,2) plain search")
    ok = not problems and dt < 120
    record(5, ok, f"table {dict(sorted(table.items()))}; problems {problems}; {dt:.2f}s")


def test_criterion_06_stability_family(tmp_path, capsys):
    rng = np.random.default_rng(0)
    t0 = time.monotonic()
    runs, bad = 0, []
    for k in (2, 3, 4):
        n = 3 * k - 3
        for _ in range(20):
            b3 = int(rng.integers(0, k))
            b1 = int(rng.integers(0, n - b3 + 1))
            b = (b1, n - b3 - b1, b3)
            for _ in range(20):
                pattern = "".join(rng.choice(["R", "B"], size=(k - 1) * b3))
                f = tmp_path / "s.json"
                argv = ["construct", "stability", "--k", k, "--b", ",".join(map(str, b)), "--out", f]
                if pattern:
                    argv += ["--pattern", pattern]
                code = cli(*argv) or cli("verify", f, "--cm", f"{k},{k},{k}", "--no-components")
                runs += 1
                if code != 0:
                    bad.append((k, b, pattern))
    capsys.readouterr()
    dt = time.monotonic() - t0
    record(6, not bad and dt < 10, f"{runs} colourings, failures {bad[:3]}; {dt:.2f}s")


def _random_bitgraph(rng, max_side):
    nl, nr = int(rng.integers(1, max_side + 1)), int(rng.integers(1, max_side + 1))
    p = rng.random()
    mat = rng.random((nl, nr)) < p
    nbr = [int(sum(1 << v for v in np.flatnonzero(row))) for row in mat]
    edges = [(int(u), int(v)) for u, v in zip(*np.nonzero(mat))]
    return nl, nbr, edges


def test_criterion_07_property_suites():
    rng = np.random.default_rng(0)
    fails = {"a": 0, "b": 0, "c": 0}
    for _ in range(1000):
        nl, nbr, edges = _random_bitgraph(rng, 12)
        tau = cover_table(nl, nbr)[0]
        if len(bipartite_max_matching(edges)) != tau:
            fails["a"] += 1
    for _ in range(200):
        nl, nbr, edges = _random_bitgraph(rng, 8)
        if not edges:
            continue
        tau, left, right = cover_table(nl, nbr)
        expected = {L(u) for u in range(nl) if left >> u & 1} | {R(v) for v in range(64) if right >> v & 1}
        comp = component_from_edges(Color.RED, edges)
        if set(cover_vertices(comp)) != expected:
            fails["b"] += 1
        nu = brute_nu(edges)
        for x in comp.vertices:
            rest = [e for e in edges if (e[0] != x.index if x.side == 0 else e[1] != x.index)]
            drop = nu - brute_nu(rest)
            if drop not in (0, 1) or (drop == 1) != (x in expected):
                fails["c"] += 1
                break
    record(7, not any(fails.values()), f"failures (a) Konig {fails['a']}/1000, (b) cover vertices {fails['b']}/200, (c) decrement {fails['c']}/200")


def test_criterion_08_paths_and_cycles():
    t0 = time.monotonic()
    values = {n: two_colour_path_ramsey(n, 8, BIG, threads=1).value for n in (2, 3, 4, 5)}
    bad = [n for n, v in values.items() if v != path_ramsey_formula(n)]
    for a in range(1, 5):
        c = example1(a, a, a)
        for col in Color:
            if longest_monochromatic_path(c, col).n_vertices != 2 * a + 1:
                bad.append(("path", a, col.code))
            if has_even_cycle(c, col, 2 * (a + 1)).found:
                bad.append(("cycle", a, col.code))
    dt = time.monotonic() - t0
    record(8, not bad and dt < 300, f"path Ramsey {values}; problems {bad}; {dt:.2f}s")


def test_criterion_09_reducer_fixtures():
    rng = np.random.default_rng(0)
    problems, certified, nonempty_u = [], 0, 0
    for i in range(200):
        n = int(rng.integers(1, 11))
        d = int(rng.integers(0, 3))
        style = STYLES[i % len(STYLES)]
        c = deficient_fixture(3 * n + 40 * d, d, rng, style)
        doc = reduce_and_find(c, n, d, mode="relaxed").to_json()
        if not all(x["nu_G"] == x["nu_G1"] for x in doc["nu_checks"]):
            problems.append((i, "nu"))
        chk = verify_certificate(c, doc)
        if not chk.ok:
            problems.append((i, chk.problems[:1]))
        if not doc["note"]:
            problems.append((i, "missing substitution note"))
        certified += doc["status"] == "certified"
        nonempty_u += bool(doc["U"])
    ok = not problems and certified == 200
    record(9, ok, f"{certified}/200 certified and re-verified, {nonempty_u} with non-empty U; problems {problems[:3]}")


def test_criterion_10_theorem8_report():
    rows = compare_with_theorem8([(k, l) for k in (1, 2, 3) for l in (1, 2, 3)], budget=BIG, threads=1)
    by = {(r["k"], r["l"]): r for r in rows}
    required = all(by[p]["match"] is True for p in [(2, 2), (3, 3), (1, 2)])
    mismatches = [(r["k"], r["l"], r["searched"], r["formula"]) for r in rows if r["match"] is False]
    record(10, required, f"exact at (2,2),(3,3),(1,2): {required}; recorded mismatches (k,l,searched,formula) {mismatches}")


def test_criterion_11_stretch_r333():
    out = find_avoiding(7, (3, 3, 3), BIG, threads=None)
    wit = find_avoiding(6, (3, 3, 3), BIG, threads=None)
    ok = out.status is Status.REFUTED and wit.status is Status.WITNESS_FOUND
    detail = f"n=6 {wit.status.value}; n=7 {out.status.value} with {out.nodes_explored} nodes in {out.elapsed:.1f}s"
    if not ok:
        RESULTS[11] = (False, detail + " (stretch, non-blocking)")
        pytest.xfail(detail)
    record(11, ok, detail)
