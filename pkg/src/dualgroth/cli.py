"""Command line entry point (``dualgroth``)."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import bijection, lpp, plancherel, symfunc, verify
from .lpp import BudgetExceeded, GeometricParams
from .textio import (
    format_matrix,
    parse_eval_point,
    parse_int_list,
    parse_matrix,
    parse_partition,
    parse_plane_partition,
    parse_qlist,
    parse_rational,
)

EMIT_KINDS = ("g-value", "joint-dist", "oracle-dist", "mc-dist", "word-dist", "convergence-table")


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def emit(kind: str, params: dict, fmt: str = "json", path: str | None = None) -> str:
    """Compute one artifact and write it as JSON or CSV.

    Returns the serialized text (also written to ``path`` or stdout).
    """
    if kind not in EMIT_KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "g-value":
        pt = params["point"]
        value = symfunc.g_eval(params["shape"], pt.qs, ones=pt.ones, method=params.get("method", "det-h"))
        if fmt == "json":
            text = json.dumps({"shape": list(params["shape"]), "value": str(value)}) + "\n"
        else:
            text = f"{value}\n"
    elif kind == "convergence-table":
        rows = plancherel.plancherel_limit_check(params["m"], params["shape"], params["gamma"],
                                                 params["n_values"])
        text = plancherel.convergence_csv(rows) if fmt == "csv" else json.dumps(rows, indent=2) + "\n"
    else:
        if kind == "word-dist":
            dist = plancherel.word_distribution_exhaustive(params["m"], params["n"],
                                                           workers=params.get("workers", 1))
        else:
            gp = GeometricParams(params["m"], len(params["q"]), tuple(params["q"]))
            if kind == "joint-dist":
                dist = lpp.closed_form_distribution(gp, params["max_part"])
            elif kind == "oracle-dist":
                dist = lpp.oracle_distribution(gp, params["cap"], workers=params.get("workers", 1))
            else:
                dist = lpp.monte_carlo_distribution(gp, params["samples"], seed=params.get("seed", 0),
                                                    workers=params.get("workers", 1))
        text = dist.to_csv() if fmt == "csv" else dist.to_json()
    _write(text, path)
    return text


def _qs(args) -> tuple:
    qs = parse_qlist(args.q)
    if args.n is not None and args.n != len(qs):
        raise ValueError(f"--n {args.n} does not match {len(qs)} parameters in --q")
    return qs


def _cmd_eval_g(args) -> int:
    emit("g-value", {"shape": parse_partition(args.shape), "point": parse_eval_point(args.q),
                     "method": args.method}, args.format or "text", args.output)
    return 0


def _cmd_dist(args) -> int:
    emit("joint-dist", {"m": args.m, "q": _qs(args), "max_part": args.max_part},
         args.format or "json", args.output)
    return 0


def _cmd_oracle(args) -> int:
    emit("oracle-dist", {"m": args.m, "q": _qs(args), "cap": args.cap, "workers": args.workers},
         args.format or "json", args.output)
    return 0


def _cmd_simulate(args) -> int:
    emit("mc-dist", {"m": args.m, "q": _qs(args), "samples": args.samples, "seed": args.seed,
                     "workers": args.workers}, args.format or "json", args.output)
    return 0


def _cmd_words(args) -> int:
    emit("word-dist", {"m": args.m, "n": args.n, "workers": args.workers},
         args.format or "json", args.output)
    return 0


def _cmd_limit(args) -> int:
    emit("convergence-table", {"m": args.m, "shape": parse_partition(args.shape),
                               "gamma": parse_rational(args.gamma),
                               "n_values": parse_int_list(args.n_values)},
         args.format or "csv", args.output)
    return 0


def _cmd_phi(args) -> int:
    pp = parse_plane_partition(args.pp)
    m = args.m if args.m is not None else len(pp)
    n = args.n if args.n is not None else (pp[0][0] if pp else 0)
    _write(format_matrix(bijection.phi(pp, m, n)) + "\n", args.output)
    return 0


def _cmd_phi_inverse(args) -> int:
    pp = bijection.phi_inverse(parse_matrix(args.matrix))
    _write(format_matrix(pp) + "\n" if pp else "0\n", args.output)
    return 0


def _cmd_verify(args) -> int:
    names = [s.strip() for s in args.suite.split(",") if s.strip()]
    if names == ["all"]:
        names = list(verify.SUITES)
    overrides = {k: getattr(args, k) for k in ("seed", "samples", "cap", "workers")
                 if getattr(args, k) is not None}
    config = verify.SuiteConfig.for_size(args.size, **overrides)
    reports = [verify.run_suite(name, config) for name in names]
    fmt = args.format or "text"
    if fmt == "json":
        text = json.dumps([r.to_dict() for r in reports], indent=2, default=str) + "\n"
    elif fmt == "text":
        text = "".join(r.to_text() for r in reports)
    else:
        raise ValueError("verify supports --format json or text")
    _write(text, args.output)
    return 0 if all(r.passed for r in reports) else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"))
    common.add_argument("--output", "-o", help="write to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="dualgroth", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-g", parents=[common], help="evaluate g_lambda exactly")
    p.add_argument("--shape", required=True)
    p.add_argument("--q", required=True, help='point, e.g. "1/2,1/3" or "1^2;1/2,1/3"')
    p.add_argument("--method", choices=("pp", "det-h", "det-e"), default="det-h")
    p.set_defaults(func=_cmd_eval_g)

    for name, func, help_ in [
        ("dist", _cmd_dist, "closed-form joint column distribution"),
        ("oracle", _cmd_oracle, "exhaustive truncated oracle"),
        ("simulate", _cmd_simulate, "Monte Carlo estimate"),
    ]:
        p = sub.add_parser(name, parents=[common], help=help_)
        p.add_argument("--m", type=int, required=True)
        p.add_argument("--n", type=int)
        p.add_argument("--q", required=True)
        if name == "dist":
            p.add_argument("--max-part", type=int, default=4)
        if name == "oracle":
            p.add_argument("--cap", type=int, default=12)
        if name == "simulate":
            p.add_argument("--samples", type=int, default=10**6)
            p.add_argument("--seed", type=int, default=0)
        if name != "dist":
            p.add_argument("--workers", type=int, default=1)
        p.set_defaults(func=func)

    p = sub.add_parser("words", parents=[common], help="exact L-statistics law of random words")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_words)

    p = sub.add_parser("limit", parents=[common], help="Plancherel-limit convergence table")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--shape", required=True)
    p.add_argument("--gamma", default="1")
    p.add_argument("--n-values", default="10,20,40,80")
    p.set_defaults(func=_cmd_limit)

    p = sub.add_parser("phi", parents=[common], help="descent matrix of a plane partition")
    p.add_argument("--pp", required=True, help='rows, e.g. "4,4,2;4,2,1;2,2"')
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("phi-inverse", parents=[common], help="plane partition of a descent matrix")
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_phi_inverse)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", default="all", help=f"comma list of {', '.join(verify.SUITES)} or all")
    p.add_argument("--size", choices=("small", "medium"), default="medium")
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValueError, BudgetExceeded, OSError) as exc:
        print(f"dualgroth: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
