"""Command-line entry point.

Exit status: 0 success, 1 a verification failed, 2 usage error,
3 an instance exceeded a configured search bound.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import generators as gen
from .serialize import (
    grid_rows,
    render_grid,
    shape_from_records,
    shape_to_records,
    stats_to_record,
    tiling_to_records,
)
from .shapes import GradedShape, Params, format_compact
from .solver import (
    DEFAULT_CAP,
    DEFAULT_RANK_BOUND,
    BoundExceeded,
    StuckError,
    case1_tiles,
    case2_tiles,
    exhaustive_tilings,
    greedy_peel,
)
from .verify import CHECKS, Limits, Outcome

log = logging.getLogger("artinshape")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BOUND = 0, 1, 2, 3

SHAPES = {
    "proj": gen.projective_space_shape,
    "weil": gen.weil_closed,
    "upper1": gen.upper_case1,
    "upper2": gen.upper_case2,
    "my": lambda N: gen.decomposition_third(N).total,
}

DECOMPOSITIONS = {
    "M": gen.decomposition_M,
    # the line grid of the Weil shape is the same picture as the M decomposition
    "shapeR": gen.decomposition_M,
    "second": gen.decomposition_second,
    "third": gen.decomposition_third,
}

TILE_SETS = {"case1": case1_tiles, "case2": case2_tiles}


class UsageError(Exception):
    pass


def _params(args) -> Params:
    try:
        return Params.validated(args.p, args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _params_record(params: Params) -> dict:
    return {"p": params.p, "n": params.n, "N": params.N}


def _emit(args, record: dict, text: str) -> None:
    if args.format == "structured":
        json.dump(record, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print(text)


def _stats_line(shape: GradedShape) -> str:
    st = stats_to_record(shape.stats())
    return f"rank={st['rank']} countF={st['countF']} countA={st['countA']} ratio={st['ratio']}"


def cmd_shape(args) -> int:
    params = _params(args)
    shape = SHAPES[args.kind](params.N)
    record = {
        "params": _params_record(params),
        "shape": shape_to_records(shape),
        "stats": stats_to_record(shape.stats()),
    }
    _emit(args, record, f"{format_compact(shape)}\n{_stats_line(shape)}")
    return EXIT_OK


def cmd_grid(args) -> int:
    params = _params(args)
    decomp = DECOMPOSITIONS[args.decomposition](params.N)
    rows = grid_rows(decomp)
    record = {"params": _params_record(params), "grid": {"name": args.decomposition, "rows": rows}}
    _emit(args, record, render_grid(rows))
    return EXIT_OK


def _load_target(args, params: Params) -> GradedShape:
    if args.input is None:
        return SHAPES[args.target](params.N)
    raw = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    try:
        data = json.loads(raw)
        if isinstance(data, dict):
            data = data["shape"]
        return shape_from_records(data)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read shape from {args.input}: {exc}") from None


def cmd_decompose(args) -> int:
    params = _params(args)
    target = _load_target(args, params)
    tiles = TILE_SETS[args.tiles](params.N)
    record: dict = {
        "params": _params_record(params),
        "target": shape_to_records(target),
        "tiles": {t.name: shape_to_records(t.shape) for t in tiles},
    }
    try:
        tiling = greedy_peel(target, tiles)
    except StuckError as exc:
        record["tiling"] = None
        record["error"] = str(exc)
        _emit(args, record, f"no tiling: {exc}")
        return EXIT_FAIL
    record["tiling"] = tiling_to_records(tiling.placements)
    lines = [" + ".join(f"{name}{{{s}}}" for name, s in tiling.placements)]
    if args.exhaustive:
        every = exhaustive_tilings(target, tiles, cap=args.cap, rank_bound=args.rank_bound)
        record["tilings_found"] = len(every)
        lines.append(f"tilings found: {len(every)}")
    _emit(args, record, "\n".join(lines))
    return EXIT_OK


def _report_text(rep) -> str:
    extra = ""
    if "divisibility" in rep.details:
        extra = f" ({rep.details['divisibility']})"
    elif "discrepancy" in rep.details:
        extra = f" ({rep.details['discrepancy']})"
    return f"{rep.check} N={rep.params.N}: {rep.verdict}{extra}"


def cmd_verify(args) -> int:
    params = _params(args)
    limits = Limits(cap=args.cap, rank_bound=args.rank_bound)
    rep = CHECKS[args.theorem](params, limits)
    _emit(args, {"params": _params_record(params), "report": rep.to_record()}, _report_text(rep))
    return EXIT_FAIL if rep.verdict is Outcome.FAIL else EXIT_OK


def cmd_sweep(args) -> int:
    limits = Limits(cap=args.cap, rank_bound=args.rank_bound)
    for p in args.p_list:
        try:
            Params.validated(p, 1)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    rows = []
    failed = False
    for p in args.p_list:
        for n in range(1, args.n_max + 1):
            params = Params(p, n)
            if params.N > args.max_N:
                log.warning("skipping p=%d n=%d: N=%d exceeds --max-N %d", p, n, params.N, args.max_N)
                continue
            verdicts = {}
            for name, fn in CHECKS.items():
                try:
                    verdicts[name] = str(fn(params, limits).verdict)
                except BoundExceeded as exc:
                    log.warning("p=%d n=%d %s skipped: %s", p, n, name, exc)
                    verdicts[name] = "skipped"
            failed = failed or Outcome.FAIL.value in verdicts.values()
            rows.append({"p": p, "n": n, "N": params.N, "checks": verdicts})
    text = "\n".join(
        f"p={r['p']} n={r['n']} N={r['N']}: "
        + " ".join(f"{k}={v}" for k, v in r["checks"].items())
        for r in rows
    )
    _emit(args, {"params": {"p_list": args.p_list, "n_max": args.n_max}, "report": rows}, text)
    return EXIT_FAIL if failed else EXIT_OK


def _common(parser: argparse.ArgumentParser, need_params: bool = True) -> None:
    parser.add_argument("--p", type=int, required=need_params, help="odd prime")
    parser.add_argument("--n", type=int, required=need_params, help="exponent, N = p**n")
    parser.add_argument("--format", choices=["text", "structured"], default="text")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="stop exhaustive search after this many tilings")
    parser.add_argument("--rank-bound", type=int, default=DEFAULT_RANK_BOUND,
                        help="largest target rank for exhaustive search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="artinshape",
        description="Graded Artin-Tate shapes of Weil transfers and involution varieties.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shape", help="print a shape and its counts")
    p.add_argument("kind", choices=sorted(SHAPES))
    _common(p)
    p.set_defaults(func=cmd_shape)

    p = sub.add_parser("grid", help="draw a decomposition as shifted rows")
    p.add_argument("decomposition", choices=sorted(DECOMPOSITIONS))
    _common(p)
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("decompose", help="tile a shape by the upper-motive candidates")
    p.add_argument("--target", choices=sorted(SHAPES), default="weil")
    p.add_argument("--input", help="read the target shape from a JSON file ('-' for stdin)")
    p.add_argument("--tiles", choices=sorted(TILE_SETS), default="case1")
    p.add_argument("--exhaustive", action="store_true", help="also count all tilings")
    _common(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verify", help="check one theorem for given (p, n)")
    p.add_argument("theorem", choices=list(CHECKS))
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="run every check over a range of (p, n)")
    p.add_argument("--p-list", type=int, nargs="*", default=[])
    p.add_argument("--n-max", type=int, default=1)
    p.add_argument("--max-N", type=int, default=81, help="skip instances with larger N")
    _common(p, need_params=False)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"artinshape: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BoundExceeded as exc:
        print(f"artinshape: bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND


if __name__ == "__main__":
    sys.exit(main())
