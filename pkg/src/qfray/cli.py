"""Command-line interface.

Exit codes: 0 ok, 1 property violated, 2 usage or parse error,
3 arithmetic overflow, 4 storage failure.  Data goes to stdout, progress
and timing to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import closedform as cf
from .expansion import (
    CoefficientOverflow,
    MonomialSeries,
    ballot_tableaux,
    format_expansion,
    is_q_positive,
    monomial_series,
    q_diff,
    q_expansion,
)
from .letters import format_word, parse_word
from .search import CLASSES, compute_record, run_campaign
from .shapes import (
    ShapeError,
    ShapeKind,
    antipodal,
    classify,
    count_turns,
    enumerate_frayed_ribbons,
    enumerate_shifted_skew_shapes,
    normalize_orientation,
    one_turn_column_height,
    parse_shape,
    staircase_cells,
    two_turn_params,
)
from .tableaux import greedy_filling, render
from .walks import is_ballot, walk

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_OVERFLOW, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _emit(args: argparse.Namespace, text: str, payload: object) -> None:
    if args.json:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        print(text)


def _log(msg: str) -> None:
    print(msg, file=sys.stderr, flush=True)


def format_monomial(key: Sequence[int], coeff: int) -> str:
    factors = [f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(key, start=1) if e]
    return f"{coeff}*" + ("*".join(factors) if factors else "1")


def format_series(series: MonomialSeries) -> str:
    terms = sorted(series.coefficients.items(), reverse=True)
    if not terms:
        return "0"
    return "\n".join(format_monomial(k, c) for k, c in terms)


def _greedy_text(shape) -> tuple[str, dict]:
    g = greedy_filling(shape)
    factors = " ".join(f"x{i}^{m}" if m > 1 else f"x{i}" for i, m in enumerate(g.content, start=1))
    text = f"2^{g.ribbon_count} {factors}"
    return text, {"ribbons": g.ribbon_count, "coefficient": g.coefficient, "content": list(g.content)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_classify(args: argparse.Namespace) -> int:
    shape = parse_shape(args.shape)
    c = classify(shape)
    info: dict = {
        "shape": str(shape),
        "class": c.kind.value,
        "connected": c.connected,
        "staircase": [list(cell) for cell in staircase_cells(shape)],
        "size": shape.size,
    }
    if c.kind is ShapeKind.FRAYED_RIBBON:
        t = count_turns(shape)
        info["turns"] = {"outer": t.outer_turns, "inner": t.inner_turns, "total": t.total}
        # turn parameters are defined from size 4; "2 1" is frayed but too small
        norm = normalize_orientation(shape) if shape.size >= 4 else None
        if norm is not None and t.total == 1:
            info["column_height"] = one_turn_column_height(norm)
        elif norm is not None and t.total == 2:
            p = two_turn_params(norm)
            info["params"] = {"w1": p.w1, "h": p.h, "w2": p.w2}
    lines = [f"{k}: {v}" for k, v in info.items()]
    _emit(args, "\n".join(lines), info)
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    shape = parse_shape(args.shape)
    if args.json:
        print(compute_record(shape).to_json())
    else:
        print(format_expansion(q_expansion(shape, prune=not args.no_prune)))
    if args.show_tableaux:
        exp = q_expansion(shape)
        for nu, _ in exp.items():
            for t in ballot_tableaux(shape, nu):
                print(f"# content {' '.join(map(str, nu))}: {format_word(t.word, '')}", file=sys.stderr)
                print(render(t), file=sys.stderr)
    return EXIT_OK


def cmd_series(args: argparse.Namespace) -> int:
    shape = parse_shape(args.shape)
    series = monomial_series(shape, args.vars)
    if args.leading:
        lead = series.leading_term()
        key, c = lead if lead else ((0,) * args.vars, 0)
        _emit(args, format_monomial(key, c), {"exponents": list(key), "coefficient": c})
        return EXIT_OK
    payload = [[list(k), c] for k, c in sorted(series.coefficients.items(), reverse=True)]
    _emit(args, format_series(series), payload)
    return EXIT_OK


def cmd_walk(args: argparse.Namespace) -> int:
    word = parse_word(args.word)
    levels = [args.level] if args.level else range(1, max(max(((c + 1) // 2 for c in word), default=1), 2))
    payload: dict = {"walks": {}}
    lines = []
    for i in levels:
        trace = walk(word, i)
        payload["walks"][str(i)] = [str(s) for s in trace]
        lines.append(f"# {i}/{i + 1}-walk")
        lines.extend(str(s) for s in trace)
    ballot = is_ballot(word)
    payload["ballot"] = ballot
    lines.append(f"ballot: {'true' if ballot else 'false'}")
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK


def cmd_greedy(args: argparse.Namespace) -> int:
    shape = parse_shape(args.shape)
    text, payload = _greedy_text(shape)
    g = greedy_filling(shape)
    rows = []
    for row in shape.rows:
        if row:
            rows.append("   " * (row[0][1] - 1) + " ".join(f"{g.filling[c]:<2}" for c in row).rstrip())
    _emit(args, "\n".join(rows + [f"monomial: {text}"]), payload)
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    d = q_diff(parse_shape(args.first), parse_shape(args.second))
    positive = is_q_positive(d)
    payload = {"diff": [[" ".join(map(str, k)), c] for k, c in d.items()], "positive": positive, "zero": d.is_zero}
    _emit(args, f"{format_expansion(d)}\npositive: {str(positive).lower()}", payload)
    return EXIT_OK


def cmd_antipodal(args: argparse.Namespace) -> int:
    result = str(antipodal(parse_shape(args.shape)))
    _emit(args, result, {"shape": result})
    return EXIT_OK


def cmd_closedform(args: argparse.Namespace) -> int:
    if args.family == "check":
        report = cf.cross_check(args.max_size)
        lines = [f"{f.value}: {count} checked" for f, count in report.checked.items()]
        lines += [f"MISMATCH {m.shape} {m.query}: formula {m.formula} engine {m.engine}" for m in report.mismatches]
        payload = {"checked": {f.value: c for f, c in report.checked.items()}, "mismatches": len(report.mismatches)}
        _emit(args, "\n".join(lines), payload)
        return EXIT_OK if report.ok else EXIT_VIOLATION
    family = cf.Family(args.family)
    query = cf.CoeffQuery(family, args.n, k=args.k, w1=args.w1, w2=args.w2, h=args.h)
    value = cf.evaluate(query)
    if isinstance(value, int):
        _emit(args, str(value), {"family": family.value, "target": list(query.target()), "value": value})
    else:
        _emit(args, format_expansion(value), {"family": family.value, "expansion": str(value)})
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    if args.kind == "frayed":
        shapes = enumerate_frayed_ribbons(args.n, one_per_antipodal_pair=args.one_per_pair)
    else:
        shapes = enumerate_shifted_skew_shapes(args.n, connected_only=not args.all)
    names = [str(s) for s in shapes]
    _emit(args, "\n".join(names), names)
    return EXIT_OK


def _threads(args: argparse.Namespace) -> int:
    if args.threads is not None:
        return args.threads
    env = os.environ.get("QFRAY_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"QFRAY_THREADS must be an integer, got {env!r}")
    return 1


def _run(args: argparse.Namespace, sizes: range) -> int:
    out = args.out
    if args.resume and not args.out:
        raise UsageError("--resume needs --out")
    summary = run_campaign(sizes, out, resume=args.resume, threads=_threads(args), shape_class=args.shape_class, progress=_log)
    lines = []
    payload = []
    for r in summary.reports:
        lines.append(r.summary_line())
        for v in r.violations:
            lines.append(f"  VIOLATION {v.kind}: {' | '.join(v.members)} {v.detail}".rstrip())
        payload.append(
            {"size": r.size, "class": r.shape_class, "shapes": r.shape_count, "groups": r.group_count,
             "violations": [v.to_dict() for v in r.violations]}
        )
    _emit(args, "\n".join(lines), payload)
    return EXIT_OK if summary.ok else EXIT_VIOLATION


def cmd_verify(args: argparse.Namespace) -> int:
    low = args.min_size if args.min_size is not None else (4 if args.shape_class == "frayed" else 1)
    if args.max_size < low:
        raise UsageError(f"--max-size must be at least {low}")
    return _run(args, range(low, args.max_size + 1))


def _parse_sizes(text: str) -> range:
    try:
        if "-" in text:
            a, b = text.split("-", 1)
            return range(int(a), int(b) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"sizes must look like 4-9 or 7, got {text!r}")


def cmd_campaign(args: argparse.Namespace) -> int:
    return _run(args, args.sizes)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qfray", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="ribbon / near-ribbon / frayed, turns, parameters")
    p.add_argument("shape")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("expand", parents=[common], help="Schur Q expansion of a shape")
    p.add_argument("shape")
    p.add_argument("--show-tableaux", action="store_true", help="list ballot tableaux on stderr")
    p.add_argument("--no-prune", action="store_true", help="disable ballot-tableau pruning")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("series", parents=[common], help="monomial expansion in finitely many variables")
    p.add_argument("shape")
    p.add_argument("--vars", type=int, default=3)
    p.add_argument("--leading", action="store_true", help="only the lexicographically leading term")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("walk", parents=[common], help="lattice walks and ballotness of a word")
    p.add_argument("word", help="letters such as \"2 1 2' 3\"")
    p.add_argument("--level", type=int, help="show only the i/(i+1)-walk")
    p.set_defaults(func=cmd_walk)

    p = sub.add_parser("greedy", parents=[common], help="greedy filling and greedy monomial")
    p.add_argument("shape")
    p.set_defaults(func=cmd_greedy)

    p = sub.add_parser("diff", parents=[common], help="Q_D - Q_E in the Q basis")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("antipodal", parents=[common], help="antipodal reflection of a shape")
    p.add_argument("shape")
    p.set_defaults(func=cmd_antipodal)

    p = sub.add_parser("closedform", parents=[common], help="closed-form frayed-ribbon coefficients")
    p.add_argument("family", choices=[f.value for f in cf.Family] + ["check"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--w1", type=int, default=0)
    p.add_argument("--w2", type=int, default=0)
    p.add_argument("--h", type=int, default=0)
    p.add_argument("--max-size", type=int, default=10, help="for 'check': compare with the engine up to this size")
    p.set_defaults(func=cmd_closedform)

    p = sub.add_parser("enumerate", parents=[common], help="list shapes of a given size")
    p.add_argument("kind", choices=["shapes", "frayed"])
    p.add_argument("n", type=int)
    p.add_argument("--all", action="store_true", help="include disconnected shapes")
    p.add_argument("--one-per-pair", action="store_true", help="one frayed ribbon per antipodal pair")
    p.set_defaults(func=cmd_enumerate)

    def campaign_opts(p: argparse.ArgumentParser) -> None:
        p.add_argument("--class", dest="shape_class", choices=CLASSES, default="frayed")
        p.add_argument("--out", help="JSON-lines record file")
        p.add_argument("--resume", action="store_true", help="skip sizes already complete in --out")
        p.add_argument("--threads", type=int, help="worker processes (default: $QFRAY_THREADS or 1)")

    p = sub.add_parser("verify", parents=[common], help="exhaustive distinctness / closure check")
    campaign_opts(p)
    p.add_argument("--max-size", type=int, required=True)
    p.add_argument("--min-size", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("campaign", parents=[common], help="checkpointed run over a size range")
    campaign_opts(p)
    p.add_argument("--sizes", type=_parse_sizes, required=True, help="e.g. 4-9")
    p.set_defaults(func=cmd_campaign)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CoefficientOverflow as exc:
        _log(f"error: {exc}")
        return EXIT_OVERFLOW
    except (ShapeError, cf.ClosedFormError, UsageError, ValueError) as exc:
        _log(f"error: {exc}")
        return EXIT_USAGE
    except OSError as exc:
        _log(f"error: {exc}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
