"""Command-line front end: ``parcat <subcommand> [options]``.

Exit status: 0 success, 1 domain error, 2 usage error, 3 failed verification.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from .census import (
    KINDS,
    THEOREMS,
    Limits,
    generate,
    parabolic_catalan,
    total_parabolic_catalan,
    verify,
)
from .errors import DomainError, InternalError
from .maps import (
    RPermutation,
    ceiling_of,
    core,
    floor_of,
    min_lift,
    pi_of,
    platform,
    r_projection,
    rank_tuple,
)
from .polynomials import (
    SparsePoly,
    demazure_poly,
    gv_determinant,
    is_nonpermutable,
    key_poly_dd,
    perm_dot_shape,
    row_bound_sum,
)
from .rtuples import (
    FILL_KINDS,
    LABELS,
    RSet,
    RTuple,
    classify,
    critical_list,
    parse_critical_list,
    parse_rtuple,
    tuple_from_critical,
)
from .scanning import scan
from .tableaux import Partition, Tableau, enumerate_tableaux, key_of, r_of_shape

EXIT_OK, EXIT_DOMAIN, EXIT_USAGE, EXIT_FAILED = 0, 1, 2, 3


class VerificationFailed(Exception):
    """Raised by a subcommand after it has printed its counterexample."""


# Input parsing -------------------------------------------------------------------


def _payload(text: str) -> str:
    """Inline text, or the contents of a file when written as ``@path``."""
    if text.startswith("@"):
        path = Path(text[1:])
        try:
            return path.read_text().strip()
        except OSError as exc:
            raise DomainError(f"cannot read {path}: {exc.strerror}") from None
    return text


def _ints(text: str, what: str) -> tuple[int, ...]:
    body = _payload(text).strip().strip("()")
    if not body:
        return ()
    try:
        return tuple(int(v) for v in body.replace(";", ",").split(","))
    except ValueError:
        raise DomainError(f"cannot parse {what} {text!r}; expected comma-separated integers") from None


def _shape(args: argparse.Namespace) -> Partition:
    return Partition(_ints(args.shape, "shape"))


def _rset(args: argparse.Namespace, n: int | None) -> RSet | None:
    if getattr(args, "r", None) is None:
        return None
    if n is None:
        raise DomainError("--r needs --n or a tuple to fix n")
    return RSet(n, _ints(args.r, "divider set"))


def _tuple(args: argparse.Namespace, rset: RSet | None = None) -> RTuple:
    n = getattr(args, "n", None)
    text = _payload(args.tuple)
    if rset is None and getattr(args, "r", None) is not None:
        size = n if n is not None else len(_ints(text, "tuple"))
        rset = _rset(args, size)
    return parse_rtuple(text, n=n, rset=rset)


def _perm(text: str, rset: RSet) -> RPermutation:
    t = parse_rtuple(_payload(text), rset=rset)
    return RPermutation(rset, t.entries)


def _tableau(text: str, shape: Partition | None) -> Tableau:
    """JSON (inline or ``@file``) or columns like ``1,3/2`` (needs --shape)."""
    body = _payload(text).strip()
    if body.startswith("{"):
        try:
            data = json.loads(body)
        except json.JSONDecodeError as exc:
            raise DomainError(f"tableau JSON is malformed: {exc.msg}") from None
        t = Tableau.from_json(data)
        if shape is not None and t.shape != shape:
            raise DomainError(f"tableau shape {t.shape} differs from --shape {shape}")
        return t
    if shape is None:
        raise DomainError("column-form tableaux need --shape")
    columns = [_ints(col, "tableau column") for col in body.split("/") if col.strip()]
    return Tableau(shape, columns)


# Output --------------------------------------------------------------------------


class Out:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, text: str, data) -> None:
        if self.fmt == "json":
            print(json.dumps(data, sort_keys=True), file=self.stream)
        else:
            print(text, file=self.stream)


def _poly_out(out: Out, poly: SparsePoly, **extra) -> None:
    lines = [str(poly)] + [f"{k}: {_text_value(v)}" for k, v in extra.items()]
    out.emit("\n".join(lines), {"polynomial": poly.to_json(), **extra})


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# Subcommands ---------------------------------------------------------------------


def cmd_classify(args, out: Out) -> None:
    t = _tuple(args)
    labels = [label for label in LABELS if label in classify(t)]
    out.emit(" ".join(labels) if labels else "(none)", {"tuple": str(t), "labels": labels})


def cmd_critical(args, out: Out) -> None:
    if args.list is not None:
        if args.fill is None:
            raise DomainError("--list needs --fill to say which tuple to build")
        if args.n is None:
            raise DomainError("--list needs --n")
        rset = _rset(args, args.n) or RSet.empty(args.n)
        t = tuple_from_critical(parse_critical_list(_payload(args.list), rset), args.fill)
        out.emit(str(t), {"tuple": str(t)})
        return
    if args.tuple is None:
        raise DomainError("critical needs --tuple or --list")
    c = critical_list(_tuple(args))
    out.emit(str(c), {"critical_list": str(c), "pairs": [[x, y] for x, y in sorted(c.as_dict().items())]})


_TUPLE_MAPS: dict[str, Callable[[RTuple], RTuple]] = {
    "core": core,
    "floor": floor_of,
    "ceiling": ceiling_of,
    "platform": platform,
    "rank": rank_tuple,
    "pi": pi_of,
    "lift": min_lift,
}


def cmd_map(args, out: Out) -> None:
    t = _tuple(args)
    if args.name == "project":
        if args.r is None:
            raise DomainError("project needs --r for the target divider set")
        result = r_projection(t.entries, RSet(t.n, _ints(args.r, "divider set")))
    elif args.name in ("rank", "lift"):
        result = _TUPLE_MAPS[args.name](RPermutation(t.rset, t.entries))
    else:
        result = _TUPLE_MAPS[args.name](t)
    out.emit(str(result), {"input": str(t), "map": args.name, "output": str(result)})


def cmd_key(args, out: Out) -> None:
    shape = _shape(args)
    y = key_of(shape, _perm(args.perm, r_of_shape(shape)))
    out.emit(y.render(), y.to_json())


def cmd_scan(args, out: Out) -> None:
    shape = _shape(args) if args.shape else None
    s = scan(_tableau(args.tableau, shape))
    out.emit(s.render(), s.to_json())


def cmd_tableaux(args, out: Out) -> None:
    shape = _shape(args)
    bounds = parse_rtuple(_payload(args.bounds), n=shape.n) if args.bounds else None
    ts = list(enumerate_tableaux(shape, bounds))
    if args.count:
        out.emit(str(len(ts)), {"count": len(ts)})
        return
    text = "\n\n".join(t.render() for t in ts)
    out.emit(text, {"count": len(ts), "tableaux": [t.to_json() for t in ts]})


def cmd_demazure(args, out: Out) -> None:
    shape = _shape(args)
    p = _perm(args.perm, r_of_shape(shape))
    results = {}
    if args.method in ("tableau", "both"):
        results["tableau"] = demazure_poly(shape, p)
    if args.method in ("dd", "both"):
        results["dd"] = key_poly_dd(perm_dot_shape(p, shape))
    polys = list(results.values())
    if any(poly != polys[0] for poly in polys):
        out.emit(
            "\n".join(f"{k}: {v}" for k, v in results.items()),
            {"mismatch": {k: v.to_json() for k, v in results.items()}},
        )
        raise VerificationFailed(f"tableau sum and divided differences disagree for {p} on {shape}")
    _poly_out(out, polys[0])


def cmd_rowsum(args, out: Out) -> None:
    shape = _shape(args)
    beta = parse_rtuple(_payload(args.bounds), n=shape.n)
    _poly_out(out, row_bound_sum(shape, beta))


def cmd_gvdet(args, out: Out) -> None:
    shape = _shape(args)
    beta = parse_rtuple(_payload(args.bounds), n=shape.n)
    _poly_out(out, gv_determinant(shape, beta), nonpermutable=is_nonpermutable(shape, beta))


def cmd_count(args, out: Out) -> None:
    if args.n is None:
        raise DomainError("count needs --n")
    if args.what == "total":
        value = total_parabolic_catalan(args.n)
    else:
        rset = _rset(args, args.n) or RSet.empty(args.n)
        if args.what == "cnr":
            value = parabolic_catalan(args.n, rset)
        else:
            if args.family is None:
                raise DomainError("--what family needs --family")
            value = sum(1 for _ in generate(args.family, args.n, rset))
    out.emit(str(value), {"count": value})


def cmd_verify(args, out: Out) -> None:
    try:
        rows, cols = (int(v) for v in args.box.lower().split("x"))
    except ValueError:
        raise DomainError(f"--box must look like RxC, got {args.box!r}") from None
    limits = Limits(max_n=args.max_n, rows=rows, cols=cols, min_n=args.min_n)
    report = verify(args.theorem, limits, workers=args.threads)
    status = "PASS" if report.passed else "FAIL"
    lines = [f"{report.theorem}: {status} ({report.checked} checks, {len(report.failures)} failures)"]
    lines += [json.dumps(f, sort_keys=True) for f in report.failures[:20]]
    # Timing varies between runs, so it stays out of the text form.
    out.emit("\n".join(lines), report.to_json())
    if not report.passed:
        raise VerificationFailed(f"{len(report.failures)} counterexamples for {report.theorem}")


# Parser --------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="parcat", description="Parabolic Catalan objects, keys and tableau polynomials.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tuple_args(p: argparse.ArgumentParser, required: bool = True) -> None:
        p.add_argument("--tuple", required=required, help="e.g. 2,4,6;1,5,7,8,9;3 or @file")
        p.add_argument("--n", type=int)
        p.add_argument("--r", help="divider set, e.g. 3,8 (empty string for none)")

    p = sub.add_parser("classify", help="list the labels a tuple satisfies")
    tuple_args(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("critical", help="critical list of a tuple, or a tuple built from one")
    tuple_args(p, required=False)
    p.add_argument("--list", help="critical list such as 3:6,2:4;8:9")
    p.add_argument("--fill", choices=FILL_KINDS)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("map", help="apply a tuple or permutation map")
    p.add_argument("--name", required=True, choices=("core", "floor", "ceiling", "platform", "rank", "pi", "project", "lift"))
    tuple_args(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("key", help="the key tableau of a permutation")
    p.add_argument("--shape", required=True)
    p.add_argument("--perm", required=True)
    p.set_defaults(func=cmd_key)

    p = sub.add_parser("scan", help="scanning tableau of a tableau")
    p.add_argument("--shape")
    p.add_argument("--tableau", required=True, help="columns like 1,3/2, or tableau JSON")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("tableaux", help="enumerate tableaux of a shape")
    p.add_argument("--shape", required=True)
    p.add_argument("--bounds")
    p.add_argument("--count", action="store_true", help="print only the number of tableaux")
    p.set_defaults(func=cmd_tableaux)

    p = sub.add_parser("demazure", help="Demazure polynomial of a permutation")
    p.add_argument("--shape", required=True)
    p.add_argument("--perm", required=True)
    p.add_argument("--method", choices=("tableau", "dd", "both"), default="tableau")
    p.set_defaults(func=cmd_demazure)

    p = sub.add_parser("rowsum", help="row bound sum polynomial")
    p.add_argument("--shape", required=True)
    p.add_argument("--bounds", required=True)
    p.set_defaults(func=cmd_rowsum)

    p = sub.add_parser("gvdet", help="lattice path determinant and its applicability")
    p.add_argument("--shape", required=True)
    p.add_argument("--bounds", required=True)
    p.set_defaults(func=cmd_gvdet)

    p = sub.add_parser("count", help="parabolic Catalan numbers and family sizes")
    p.add_argument("--what", choices=("cnr", "total", "family"), default="cnr")
    p.add_argument("--n", type=int)
    p.add_argument("--r")
    p.add_argument("--family", choices=KINDS)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="exhaustive check of a theorem within limits")
    p.add_argument("--theorem", required=True, choices=THEOREMS)
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--box", default="3x3")
    p.add_argument("--threads", type=int, help="defaults to PARCAT_THREADS or 1")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str], stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except _UsageError as exc:
        print(f"parcat: usage error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        args.func(args, Out(args.format, stdout))
    except DomainError as exc:
        print(f"parcat: error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except (VerificationFailed, InternalError) as exc:
        print(f"parcat: verification failed: {exc}", file=stderr)
        return EXIT_FAILED
    return EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
