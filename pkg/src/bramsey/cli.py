"""Command line entry point: ``bramsey <subcommand> ...``.

Exit codes: 0 = threshold avoided / structure not found / success,
1 = structure found (or certificate invalid, reduction inconclusive),
2 = error.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import constructions, fixtures
from .certificate import verify_certificate
from .coloring import Color, ColoringError, read_coloring, write_coloring
from .matching import analyze_coloring, meets_thresholds
from .paths import BudgetExceeded, has_even_cycle, longest_monochromatic_path, path_ramsey_formula, two_colour_path_ramsey
from .reducer import PreconditionError, ReductionError, TypeCoverViolation, VirtualComponentOverflow, reduce_and_find
from .search import Budget, compare_with_theorem8, ramsey_value

log = logging.getLogger("bramsey")

EXIT_OK, EXIT_FOUND, EXIT_ERROR = 0, 1, 2


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _color(text: str) -> Color:
    try:
        return Color.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _budget(args) -> Budget:
    base = Budget.default()
    return Budget(nodes=args.budget if args.budget is not None else base.nodes,
                  seconds=args.seconds if args.seconds is not None else base.seconds)


def _load(path: str):
    return read_coloring(Path(path).read_bytes())


# --- subcommands -----------------------------------------------------------------

def cmd_construct(args) -> int:
    rng = np.random.default_rng(args.seed)
    if args.kind == "example1":
        if not args.a or len(args.a) != 3:
            raise ColoringError("example1 needs --a a1,a2,a3")
        c = constructions.example1(*args.a)
        th = constructions.claimed_avoidance("example1", *args.a)
    elif args.kind == "lemma6":
        if args.k is None or args.l is None:
            raise ColoringError("lemma6 needs --k and --l")
        c = constructions.lemma6_coloring(args.k, args.l)
        th = constructions.claimed_avoidance("lemma6", args.k, args.l)
    elif args.kind == "stability":
        if args.k is None or not args.b or len(args.b) != 3:
            raise ColoringError("stability needs --k and --b b1,b2,b3")
        b3 = args.b[2]
        size = (args.k - 1) * b3
        if args.pattern is None:
            pattern = "".join(rng.choice(["R", "B"], size=size)) if size else ""
        else:
            pattern = args.pattern
        if len(pattern) != size:
            raise ColoringError(f"--pattern must have (k-1)*b3 = {size} characters")
        grid = [list(pattern[i * b3:(i + 1) * b3]) for i in range(args.k - 1)]
        c = constructions.stability_example(args.k, *args.b, grid)
        th = constructions.claimed_avoidance("stability", args.k)
    else:  # deficient
        if args.n is None:
            raise ColoringError("deficient needs --n")
        N = args.N if args.N is not None else 3 * args.n + 40 * args.d
        c = fixtures.deficient_fixture(N, args.d, rng, args.style)
        th = None
    _emit(write_coloring(c).decode(), args.out)
    msg = f"avoids ({th[0]},{th[1]},{th[2]})" if th else f"deficient K_{{{c.n_left},{c.n_right}}}, min degree {c.min_degree()}"
    print(msg, file=sys.stdout if args.out else sys.stderr)
    return EXIT_OK


def _component_table(c) -> dict:
    return {col.code: [rep.to_json() for rep in analyze_coloring(c, col)] for col in Color}


def cmd_verify(args) -> int:
    c = _load(args.input)
    report = {"n_left": c.n_left, "n_right": c.n_right, "complete": c.is_complete()}
    found = False
    if args.cm:
        if len(args.cm) != 3:
            raise ValueError("--cm needs k,l,m")
        hit, witness = meets_thresholds(c, *args.cm)
        found = hit
        report["check"] = {
            "kind": "connected_matching",
            "thresholds": args.cm,
            "found": hit,
            "witness": None if witness is None else {"color": witness.color.code, "edges": witness.to_json()},
        }
    elif args.path is not None:
        res = longest_monochromatic_path(c, args.color)
        found = res.n_vertices >= args.path
        report["check"] = {
            "kind": "path", "color": args.color.code, "length": args.path, "found": found,
            "longest": res.n_vertices, "witness": [v.to_json() for v in res.path] if found else None,
        }
    elif args.cycle is not None:
        res = has_even_cycle(c, args.color, args.cycle)
        found = res.found
        report["check"] = {
            "kind": "cycle", "color": args.color.code, "length": args.cycle, "found": found,
            "witness": [v.to_json() for v in res.cycle] if found else None,
        }
    if not args.no_components:
        report["components"] = _component_table(c)
    print(dumps(report))
    return EXIT_FOUND if found else EXIT_OK


def _search_human(res) -> str:
    lines = [f"thresholds {tuple(res.thresholds)}"]
    for o in res.outcomes:
        lines.append(f"  n={o.n}: {o.status.value} ({o.nodes_explored} nodes, {o.elapsed:.3f}s)")
    if res.value is not None:
        lines.append(f"value {res.value}")
    else:
        lines.append(f"interval [{res.lower}, {res.upper if res.upper is not None else 'unknown'}]")
    return "\n".join(lines)


def _search_json(res, witness_dir: str | None) -> dict:
    outcomes = []
    for o in res.outcomes:
        entry = {k: v for k, v in o.to_json().items() if k != "witness"}
        entry["witness_file"] = None
        if o.witness is not None and witness_dir:
            path = Path(witness_dir) / f"witness_{'_'.join(map(str, res.thresholds))}_n{o.n}.json"
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_bytes(write_coloring(o.witness))
            entry["witness_file"] = str(path)
        outcomes.append(entry)
    return {
        "thresholds": list(res.thresholds),
        "value": res.value,
        "lower": res.lower,
        "upper": res.upper,
        "outcomes": outcomes,
        "elapsed": round(sum(o.elapsed for o in res.outcomes), 6),
    }


def _grid(text: str) -> list[tuple[int, int]]:
    try:
        kmax, lmax = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 3x3, got {text!r}") from None
    return [(k, l) for k in range(1, kmax + 1) for l in range(1, lmax + 1)]


def cmd_search(args) -> int:
    budget = _budget(args)
    if args.compare_theorem8:
        rows = compare_with_theorem8(args.grid, args.n_max, budget, threads=args.threads)
        if args.json:
            print(dumps({"comparison": rows}))
        else:
            print(f"{'k':>3} {'l':>3} {'searched':>9} {'formula':>8}  match")
            for r in rows:
                got = r["searched"] if r["searched"] is not None else f"[{r['lower']},{r['upper']}]"
                print(f"{r['k']:>3} {r['l']:>3} {got!s:>9} {r['formula']:>8}  {r['match']}")
        return EXIT_OK
    th = (args.k, args.l, args.m)
    if None in th:
        raise ValueError("search needs --k, --l and --m (or --compare-theorem8)")
    res = ramsey_value(th, args.n_max, budget, threads=args.threads)
    if args.json:
        print(dumps(_search_json(res, args.witness_dir)))
    else:
        _search_json(res, args.witness_dir)
        print(_search_human(res))
    return EXIT_OK


def cmd_paths(args) -> int:
    if args.ramsey is not None:
        res = two_colour_path_ramsey(args.ramsey, args.n_max, _budget(args), threads=args.threads)
        print(dumps({
            "n_path": args.ramsey,
            "value": res.value,
            "lower": res.lower,
            "upper": res.upper,
            "formula": path_ramsey_formula(args.ramsey),
            "outcomes": [{k: v for k, v in o.to_json().items() if k != "witness"} for o in res.outcomes],
        }))
        return EXIT_OK
    if args.input is None:
        raise ValueError("paths needs an input colouring or --ramsey")
    c = _load(args.input)
    colors = [args.color] if args.color is not None else list(Color)
    out = {}
    found = False
    for col in colors:
        res = longest_monochromatic_path(c, col)
        out[col.code] = {"n_vertices": res.n_vertices, "path": [v.to_json() for v in res.path]}
        found |= args.length is not None and res.n_vertices >= args.length
    print(dumps({"longest_paths": out}))
    return EXIT_FOUND if found else EXIT_OK


def cmd_cycles(args) -> int:
    c = _load(args.input)
    res = has_even_cycle(c, args.color, args.length)
    print(dumps({"color": args.color.code, "length": args.length, "found": res.found,
                 "cycle": [v.to_json() for v in res.cycle]}))
    return EXIT_FOUND if res.found else EXIT_OK


def cmd_reduce(args) -> int:
    c = _load(args.input)
    cert = reduce_and_find(c, args.n, args.eps_n, args.mode)
    _emit(dumps(cert.to_json()), args.out)
    print(f"{cert.status}: final matching size {len(cert.final_matching)}", file=sys.stderr)
    return EXIT_OK if cert.status == "certified" else EXIT_FOUND


def cmd_verify_certificate(args) -> int:
    c = _load(args.coloring)
    cert = json.loads(Path(args.certificate).read_text())
    chk = verify_certificate(c, cert)
    print(dumps(chk.to_json()))
    return EXIT_OK if chk.ok else EXIT_FOUND


# --- parser -----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bramsey", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def budget_flags(p):
        p.add_argument("--budget", type=int, default=None, help="node budget per n (env BRAMSEY_BUDGET_NODES)")
        p.add_argument("--seconds", type=float, default=None, help="wall-clock budget per n")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    p = sub.add_parser("construct", help="write an extremal colouring")
    p.add_argument("kind", choices=["example1", "lemma6", "stability", "deficient"])
    p.add_argument("--a", type=_ints)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--b", type=_ints)
    p.add_argument("--pattern", help="R/B string for A_3 x B_3, row-major")
    p.add_argument("--n", type=int, help="deficient: connected matching size")
    p.add_argument("--d", type=int, default=1, help="deficient: absent pairs per vertex")
    p.add_argument("--N", type=int, help="deficient: side size (default 3n + 40d)")
    p.add_argument("--style", choices=fixtures.STYLES, default="uniform")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="component table and threshold/path/cycle verdicts")
    p.add_argument("input")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--cm", type=_ints, metavar="K,L,M")
    g.add_argument("--path", type=int, metavar="VERTICES")
    g.add_argument("--cycle", type=int, metavar="LENGTH")
    p.add_argument("--color", type=_color, default=Color.RED)
    p.add_argument("--no-components", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("search", help="exact r(k,l,m) by exhaustive search")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--compare-theorem8", action="store_true")
    p.add_argument("--grid", type=_grid, default=_grid("3x3"))
    p.add_argument("--json", action="store_true")
    p.add_argument("--witness-dir")
    p.add_argument("--seed", type=int, default=0, help="accepted for uniformity; the search is deterministic")
    budget_flags(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("paths", help="longest monochromatic paths or the 2-colour path Ramsey number")
    p.add_argument("input", nargs="?")
    p.add_argument("--color", type=_color)
    p.add_argument("--length", type=int, help="exit 1 if a path on this many vertices exists")
    p.add_argument("--ramsey", type=int, metavar="N_PATH")
    p.add_argument("--n-max", type=int, default=8)
    budget_flags(p)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("cycles", help="fixed-length monochromatic even cycle")
    p.add_argument("input")
    p.add_argument("--color", type=_color, required=True)
    p.add_argument("--length", type=int, required=True)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("reduce", help="almost complete -> complete reduction with certificate")
    p.add_argument("input")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--eps-n", type=float, required=True, help="absolute deficiency d = eps * n")
    p.add_argument("--mode", choices=["paper", "relaxed"], default="relaxed")
    p.add_argument("--out")
    p.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify-certificate", help="independent check of a reduction certificate")
    p.add_argument("coloring")
    p.add_argument("certificate")
    p.set_defaults(func=cmd_verify_certificate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (ColoringError, PreconditionError, TypeCoverViolation, VirtualComponentOverflow,
            BudgetExceeded, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ReductionError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
