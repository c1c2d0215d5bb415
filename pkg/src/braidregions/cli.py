"""Command line entry point.

Exit codes: 0 success, 1 methods disagree, 2 usage error or inapplicable
method, 3 size guard refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arrangement import FAMILIES, ArrangementSpec, parse_arrangement, parse_nest, preset
from .boxed import DEFAULT_GUARD
from .contribution import explain
from .errors import GuardError, NotApplicableError
from .ish import (
    broom_to_tree,
    classify_tree,
    demote_lower,
    demote_upper,
    lower_involution,
    promote_lower,
    promote_upper,
    tree_to_broom,
    upper_involution,
)
from .oracle import InterpolationError
from .render import RENDER_MODES, render_dot
from .runner import METHODS, bench, run_count, run_verify
from .trees import decode_tree

EXIT_OK, EXIT_DISAGREE, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3

OPS = ("phi_l", "psi_l", "phi_u", "psi_u", "omega_l", "omega_u", "f", "g")


class UsageError(Exception):
    pass


def _load_spec(args) -> ArrangementSpec:
    if args.spec and args.preset:
        raise UsageError("use either --spec or --preset, not both")
    if args.spec:
        try:
            text = Path(args.spec).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from exc
        return parse_arrangement(text)
    if not args.preset:
        raise UsageError("an arrangement is required: --spec FILE or --preset NAME --n N")
    if args.n is None:
        raise UsageError("--preset needs --n")
    params = parse_nest(args.nest) if args.nest else None
    return preset(args.preset, args.n, params)


def _methods(text: str) -> list[str]:
    names = [m.strip() for m in text.split(",") if m.strip()]
    if not names:
        raise UsageError("--methods is empty")
    for name in names:
        if name not in METHODS:
            raise UsageError(f"unknown method {name!r}; choose from {','.join(METHODS)}")
    return names


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_count(args) -> int:
    spec = _load_spec(args)
    report = run_count(
        spec, _methods(args.methods), guard=args.guard, prime_bound=args.prime_bound, workers=args.workers
    )
    _emit(report.to_json() if args.json else report.to_lines())
    return EXIT_OK if report.agreement else EXIT_DISAGREE


def cmd_verify(args) -> int:
    if args.n < 1 or args.m < 0 or args.samples < 0:
        raise UsageError("need n >= 1, m >= 0 and samples >= 0")
    if not 0.0 <= args.density <= 1.0:
        raise UsageError("--density must lie in [0, 1]")
    agreed = 0
    for result in run_verify(
        args.n, args.m, args.density, args.samples, args.seed, guard=args.guard, prime_bound=args.prime_bound
    ):
        if args.json:
            _emit(json.dumps(result.to_dict(), sort_keys=True))
        else:
            counts = " ".join(f"{k}={v}" for k, v in result.counts.items())
            _emit(f"sample={result.index} {counts} agreement={'true' if result.agreement else 'false'}")
        if not result.agreement:
            if not args.json:
                _emit(f"spec={result.spec.to_json()}")
                if result.failing_tree is not None:
                    _emit(f"failing_tree={result.failing_tree}")
            return EXIT_DISAGREE
        agreed += 1
    summary = {"samples": args.samples, "agreements": agreed, "seed": args.seed}
    _emit(json.dumps(summary, sort_keys=True) if args.json else " ".join(f"{k}={v}" for k, v in summary.items()))
    return EXIT_OK


def cmd_classify(args) -> int:
    spec = _load_spec(args)
    tree = decode_tree(args.tree)
    cls = classify_tree(spec, tree)
    text = "zero-contribution" if cls is None else str(cls)
    if args.json:
        body = {"tree": str(tree), "class": None if cls is None else list(cls)}
        if cls is not None:
            body["sign"] = cls.sign
        _emit(json.dumps(body, sort_keys=True))
    else:
        _emit(text)
    return EXIT_OK


def cmd_render(args) -> int:
    spec = _load_spec(args)
    _emit(render_dot(spec, decode_tree(args.tree), args.what))
    return EXIT_OK


def cmd_explain(args) -> int:
    spec = _load_spec(args)
    data = explain(spec, decode_tree(args.tree))
    if args.json:
        _emit(json.dumps(data, sort_keys=True))
        return EXIT_OK
    lines = [f"tree={data['tree']}"]
    for idx, ch in enumerate(data["chains"]):
        pre = f"chain[{idx}]"
        lines.append(f"{pre}.nodes={','.join(map(str, ch['chain']))}")
        lines.append(f"{pre}.f={','.join(map(str, ch['f']))}")
        lines.append(f"{pre}.g={','.join(map(str, ch['g']))}")
        runs = " ".join("{" + ",".join(map(str, r)) + "}" for r in ch["maximal_runs"])
        lines.append(f"{pre}.maximal_runs={runs}")
        for cdx, comp in enumerate(ch["components"]):
            cp = f"{pre}.component[{cdx}]"
            lines.append(f"{cp}.nodes={','.join(map(str, comp['nodes']))}")
            lines.append(f"{cp}.boxes=" + " ".join("{" + ",".join(map(str, b)) + "}" for b in comp["boxes"]))
            lines.append(f"{cp}.reaches=" + " ".join(f"{i}->{j}" for i, j in comp["reaches"]))
            picked = comp["chain"]
            lines.append(f"{cp}.chain={'none' if picked is None else ','.join(map(str, picked))}")
            lines.append(f"{cp}.contribution={comp['contribution']}")
    lines.append(f"contribution={data['contribution']}")
    _emit("\n".join(lines))
    return EXIT_OK


def cmd_involve(args) -> int:
    spec = _load_spec(args)
    tree = decode_tree(args.tree, uniform=args.op != "g")
    if args.op in ("psi_l", "psi_u"):
        index = 0 if args.index is None else args.index
    elif args.index is not None:
        raise UsageError(f"--index only applies to psi_l and psi_u, not {args.op}")
    op = args.op
    if op == "phi_l":
        out = demote_lower(spec, tree)
    elif op == "psi_l":
        out = promote_lower(spec, tree, index)
    elif op == "phi_u":
        out = demote_upper(spec, tree)
    elif op == "psi_u":
        out = promote_upper(spec, tree, index)
    elif op == "omega_l":
        out = lower_involution(spec, tree)
    elif op == "omega_u":
        out = upper_involution(spec, tree)
    elif op == "f":
        out = tree_to_broom(spec, tree)
    else:
        out = broom_to_tree(spec, tree)
    _emit(str(out))
    return EXIT_OK


def cmd_bench(args) -> int:
    spec = _load_spec(args)
    rows = bench(
        spec,
        _methods(args.methods),
        repeats=args.repeats,
        guard=args.guard,
        prime_bound=args.prime_bound,
        workers=args.workers,
    )
    for row in rows:
        if args.json:
            _emit(json.dumps(row, sort_keys=True))
        else:
            _emit(
                f"method={row['method']} median_ms={row['median_ms']:.3f} min_ms={row['min_ms']:.3f} "
                f"max_ms={row['max_ms']:.3f} repeats={row['repeats']} count={row['count']}"
            )
    return EXIT_OK if len({r["count"] for r in rows}) <= 1 else EXIT_DISAGREE


def _spec_flags(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("arrangement")
    g.add_argument("--spec", metavar="FILE", help="JSON arrangement document")
    g.add_argument("--preset", choices=FAMILIES, help="named family")
    g.add_argument("--n", type=int, help="dimension for --preset")
    g.add_argument("--nest", metavar="RANGES", help="S[1,j] for j=2..n, e.g. '0..0,0..1,-1..2'")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--guard", type=int, default=DEFAULT_GUARD, help="refuse enumerations larger than this")
    p.add_argument("--prime-bound", type=int, default=None, help="oracle primes start above this")
    p.add_argument("--workers", type=int, default=1, help="parallel workers for tree sums and the oracle")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="braidregions", description="Count regions of braid arrangement deformations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", help="count regions with one or more methods")
    _spec_flags(p)
    _common(p)
    p.add_argument("--methods", "--method", default="fast,oracle", help=f"comma list from {','.join(METHODS)}")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="brute vs fast vs oracle on random arrangements")
    _common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--density", type=float, default=0.3)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("classify", help="class quadruple of one tree")
    _spec_flags(p)
    p.add_argument("--tree", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("render", help="DOT drawing of one tree")
    _spec_flags(p)
    p.add_argument("--tree", required=True)
    p.add_argument("--what", choices=RENDER_MODES, default="boxes")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("explain", help="trace the fast algorithm on one tree")
    _spec_flags(p)
    p.add_argument("--tree", required=True)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("involve", help="apply one surgery or bijection to a tree")
    _spec_flags(p)
    p.add_argument("--tree", required=True)
    p.add_argument("--op", choices=OPS, required=True)
    p.add_argument("--index", type=int, default=None, help="which inefficient node for psi_l / psi_u (0 = leftmost)")
    p.set_defaults(func=cmd_involve)

    p = sub.add_parser("bench", help="median wall time per method")
    _spec_flags(p)
    _common(p)
    p.add_argument("--methods", "--method", default="brute,fast")
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GuardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (UsageError, NotApplicableError, ValueError, InterpolationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
