"""Command line interface.

Subcommands: iota, kappa, kappa-min, eta, family, gamma, verify,
render, bounds. Output is deterministic for a fixed seed and
configuration; the exit code is 0 only when no invariant check failed,
2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import families, render
from .farey import parse_slope
from .ksystem import (
    DEFAULT_MAX_N,
    FrontierExceeded,
    ResultsCache,
    agol_bound,
    eta,
    invert_bound,
    kappa_min,
    kappa_pair,
)
from .numtheory import gamma_graph
from .triangulation import Triangulation, farey_labelling
from .verify import run_suite

CACHE_ENV = "TORUSCURVES_CACHE"
DEFAULT_CACHE = "kappa_cache.jsonl"


def _cache_from(args) -> ResultsCache | None:
    path = args.cache or os.environ.get(CACHE_ENV) or DEFAULT_CACHE
    if path == "-":
        return None
    return ResultsCache(Path(path))


def _load_triangulation(args) -> Triangulation:
    if args.file:
        return Triangulation.from_json(Path(args.file).read_text())
    if args.family:
        spec = families.FamilySpec(args.family, args.param)
        return families.generate(spec)
    raise SystemExit("provide --file or --family/--param")


def _family_rows(kinds_params) -> list[dict[str, object]]:
    rows = []
    for kind, param in kinds_params:
        spec = families.FamilySpec(kind, param)
        exact = families.table_row(spec)
        claim = families.claimed_row(spec)
        rows.append(
            {
                "family": kind,
                "parameter": param,
                "n": exact.n,
                "kappa_exact": exact.kappa,
                "kappa_claim": claim["kappa"],
                "kappa_claim_basis": claim["kappa_basis"],
                "max_width_exact": exact.max_width,
                "max_width_claim": claim["max_width"],
                "height_at_widest_exact": exact.height_at_widest,
                "height_at_widest_claim": claim["height_at_widest"],
            }
        )
    return rows


def cmd_iota(args) -> int:
    from .farey import iota

    print(iota(parse_slope(args.s1), parse_slope(args.s2)))
    return 0


def cmd_kappa(args) -> int:
    t = _load_triangulation(args)
    value, (u, v) = kappa_pair(t)
    labels = farey_labelling(t).labels
    print(f"kappa = {value}")
    print(f"realized by vertices {u} ({labels[u]}) and {v} ({labels[v]})")
    return 0


def cmd_kappa_min(args) -> int:
    cache = _cache_from(args)
    record = kappa_min(
        args.n,
        mode=args.mode,
        max_n=args.max_n,
        cache=cache,
        force=args.force,
        workers=args.workers,
    )
    print(record.to_json())
    return 0


def cmd_eta(args) -> int:
    cache = _cache_from(args)
    try:
        value, witness = eta(args.k, max_n=args.max_n, cache=cache)
    except FrontierExceeded as exc:
        print(f"frontier exceeded: {exc}")
        return 1
    print(f"eta({args.k}) = {value}")
    if witness is not None:
        print(f"witness: {witness.to_json()}")
    return 0


def cmd_family(args) -> int:
    if args.table:
        pairs = (
            [("chain", n) for n in (6, 10, 16)]
            + [("achain", n) for n in (6, 10, 16)]
            + [("regular", r) for r in (2, 3, 4)]
            + [("farey", h) for h in (3, 5, 7)]
        )
    else:
        if not args.kind:
            raise SystemExit("provide --kind/--param or --table")
        pairs = [(args.kind, args.param)]
    rows = _family_rows(pairs)
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]))
        writer.writeheader()
        writer.writerows(rows)
        print(buf.getvalue(), end="")
    return 0


def cmd_gamma(args) -> int:
    graph = gamma_graph(args.h)
    edges = sorted(graph.edges)
    if args.format == "dot":
        lines = [f"graph gamma_{args.h} {{"]
        lines += [f"  {a} -- {b};" for a, b in edges]
        lines.append("}")
        print("\n".join(lines))
    else:
        print(
            json.dumps(
                {
                    "h": args.h,
                    "edges": [list(e) for e in edges],
                    "weight_sum": str(graph.weight_sum()),
                }
            )
        )
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, seed=args.seed)
    failures = 0
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        print(f"[{status}] {r.name} ({r.detail})")
        failures += 0 if r.passed else 1
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 0 if failures == 0 else 1


def cmd_render(args) -> int:
    if args.what == "ford":
        svg = render.ford_circles_svg(max_denominator=args.max_q)
    else:
        t = _load_triangulation(args)
        if args.what == "triangulation":
            labelling = farey_labelling(t) if args.labels else None
            svg = render.triangulation_svg(t, labelling=labelling, highlight=args.highlight)
        else:
            svg = render.midpoint_overlay_svg(t)
    if args.out:
        Path(args.out).write_text(svg)
        print(f"wrote {args.out}")
    else:
        print(svg, end="")
    return 0


def cmd_bounds(args) -> int:
    cache = _cache_from(args)
    try:
        value, _ = eta(args.k, max_n=args.max_n, cache=cache)
        eta_text = str(value)
    except FrontierExceeded:
        eta_text = f"> frontier (n <= {args.max_n})"
    print(f"k = {args.k}")
    print(f"eta(k)          = {eta_text}")
    print(f"prime bound     = {agol_bound(args.k)}  (1 + next prime)")
    print(
        f"inverted bound  = {invert_bound(args.k, args.c)}  "
        f"(max n with n - {args.c}*sqrt(n)*ln(n) <= k)"
    )
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toruscurves",
        description="Exact computations for curves on the torus: slopes, "
        "triangulations, k-systems, Ford circles.",
    )
    parser.add_argument(
        "--cache",
        default=None,
        help=f"kappa-min cache path (JSON lines; '-' disables; env {CACHE_ENV})",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized suites")
    parser.add_argument(
        "--max-n",
        type=int,
        default=DEFAULT_MAX_N,
        help="search frontier for kappa-min/eta; raising it is Catalan-expensive",
    )
    parser.add_argument(
        "--workers", type=int, default=os.cpu_count() or 1, help="search worker processes"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iota", help="intersection number of two slopes")
    p.add_argument("s1")
    p.add_argument("s2")
    p.set_defaults(fn=cmd_iota)

    p = sub.add_parser("kappa", help="max intersection of a triangulation")
    p.add_argument("--file", help="triangulation JSON file")
    p.add_argument("--family", choices=families.FAMILY_KINDS)
    p.add_argument("--param", type=int, default=6)
    p.set_defaults(fn=cmd_kappa)

    p = sub.add_parser("kappa-min", help="minimum of kappa over all triangulations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument(
        "--mode",
        default="branch-and-bound",
        choices=("branch-and-bound", "symmetry-reduced", "naive"),
    )
    p.add_argument("--force", action="store_true", help="recompute even on cache hit")
    p.set_defaults(fn=cmd_kappa_min)

    p = sub.add_parser("eta", help="largest n with kappa_min(n) <= k")
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(fn=cmd_eta)

    p = sub.add_parser("family", help="family members and their exact statistics")
    p.add_argument("--kind", choices=families.FAMILY_KINDS)
    p.add_argument("--param", type=int, default=6)
    p.add_argument("--table", action="store_true", help="emit the full comparison table")
    p.add_argument("--format", default="csv", choices=("csv", "json"))
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("gamma", help="the coprime graph on {1..h}")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--format", default="json", choices=("json", "dot"))
    p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument(
        "--suite",
        default="all",
        choices=("all", "farey", "equivalence", "accounting", "hyperbolic", "gamma"),
    )
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("render", help="emit SVG")
    p.add_argument("--what", default="ford", choices=("ford", "triangulation", "midpoint"))
    p.add_argument("--max-q", type=int, default=8, help="denominator bound for ford")
    p.add_argument("--file", help="triangulation JSON file")
    p.add_argument("--family", choices=families.FAMILY_KINDS)
    p.add_argument("--param", type=int, default=6)
    p.add_argument("--labels", action="store_true", help="annotate slopes")
    p.add_argument("--highlight", type=int, default=None, help="vertex whose fan to shade")
    p.add_argument("--out", help="output path (stdout when omitted)")
    p.set_defaults(fn=cmd_render)

    p = sub.add_parser("bounds", help="eta, the prime bound and the inverted bound")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--c", type=float, default=1.0, help="constant in n - c*sqrt(n)*ln(n)")
    p.set_defaults(fn=cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, AssertionError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
