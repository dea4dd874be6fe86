"""Command-line interface: ``hypermatch <command> ...``.

Exit status is 0 on success, 1 on domain errors (bad input file, failed
precondition, exhausted budget, failed verification) and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import shg
from .bounds import erdos_bound, gen_clique_construction, gen_cover_construction, gen_star_families
from .errors import HypermatchError, PreconditionError
from .family import ColoredFamilies, Matching, SetFamily, degree_sequence
from .shifting import ShiftOp, apply_shift, compress_to_target
from .solver import SolverLimits, max_matching_stats, rainbow_search
from .suites import SCHEMA, SUITES, default_cases, run_suite
from .witness import (
    rainbow_by_lemma3,
    rainbow_by_thm2,
    solver_witness,
    t_disjoint_by_cor1,
    t_disjoint_by_thm1,
)


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA, **payload}, sort_keys=True, indent=2))
    else:
        print(text)


def _edges_json(m: Matching | None):
    return [] if m is None else [{"family": idx + 1, "edge": list(e)} for idx, e in m]


def _edges_text(m: Matching, colored: bool) -> str:
    if colored:
        return "\n".join(f"F{idx + 1}: " + " ".join(map(str, e)) for idx, e in m)
    return "\n".join(" ".join(map(str, e)) for e in m.edges)


def _read(path):
    p = Path(path)
    if not p.is_file():
        raise UsageError(f"no such file: {path}")
    return shg.read(p)


def _write_or_print(obj, out):
    text = shg.format_any(obj)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _limits(args) -> SolverLimits:
    kwargs = {}
    if args.max_nodes is not None:
        kwargs["max_nodes"] = args.max_nodes
    if args.max_millis is not None:
        kwargs["max_millis"] = args.max_millis
    return SolverLimits(**kwargs)


# -- commands ----------------------------------------------------------------

def cmd_bound(args):
    report = erdos_bound(args.n, args.k, args.t)
    data = report.to_dict()
    lines = [f"{key}={value}" for key, value in data.items()]
    _emit(args, data, "\n".join(lines))


def cmd_gen(args):
    makers = {"cover": gen_cover_construction, "clique": gen_clique_construction, "stars": gen_star_families}
    _write_or_print(makers[args.kind](args.n, args.k, args.t), args.output)


def cmd_nu(args):
    F = _read(args.file)
    if not isinstance(F, SetFamily):
        raise UsageError("nu expects an SHG file (one family)")
    nu, witness, nodes = max_matching_stats(F, _limits(args))
    _emit(
        args,
        {"found": True, "size": nu, "edges": _edges_json(witness), "nodes": nodes},
        f"nu={nu}\n{_edges_text(witness, False)}".rstrip(),
    )


def cmd_rainbow(args):
    fams = _read(args.file)
    if not isinstance(fams, ColoredFamilies):
        raise UsageError("rainbow expects an SHGM file (several families)")
    res = rainbow_search(fams, _limits(args))
    text = f"found=yes size={fams.t}\n{_edges_text(res.matching, True)}" if res.found else "found=no"
    _emit(
        args,
        {"found": res.found, "size": fams.t if res.found else 0,
         "edges": _edges_json(res.matching), "nodes": res.nodes},
        text,
    )


def _as_colored(obj):
    return obj if isinstance(obj, ColoredFamilies) else ColoredFamilies(obj.n, (obj,))


def _unwrap(obj, like):
    return obj if isinstance(like, ColoredFamilies) else obj[0]


def cmd_shift(args):
    obj = _read(args.file)
    shifted = apply_shift(_as_colored(obj), ShiftOp(args.i, args.j))
    _write_or_print(_unwrap(shifted, obj), args.output)


def cmd_compress(args):
    obj = _read(args.file)
    compressed, trace = compress_to_target(_as_colored(obj))
    result = _unwrap(compressed, obj)
    if args.json:
        _emit(args, {"trace": trace.report(), "result": shg.format_any(result)}, "")
        if args.output:
            Path(args.output).write_text(shg.format_any(result))
        return
    _write_or_print(result, args.output)
    print(f"# {len(trace)} effective shifts", file=sys.stderr)


def _witness_run(obj, mode, t, centers, limits):
    colored = isinstance(obj, ColoredFamilies)
    if mode == "lemma3":
        fams = obj if colored else ColoredFamilies(obj.n, (obj,) * t)
        return rainbow_by_lemma3(fams, limits)
    if mode == "thm2":
        if not colored:
            raise UsageError("mode thm2 expects an SHGM file")
        return rainbow_by_thm2(obj, limits)
    if colored:
        raise UsageError(f"mode {mode} expects an SHG file")
    if mode == "thm1":
        return t_disjoint_by_thm1(obj, t, limits)
    if mode == "cor1":
        if not centers:
            centers = [v for v, _ in degree_sequence(obj)[:t]]
        return t_disjoint_by_cor1(obj, t, centers, limits)
    raise UsageError(f"unknown mode {mode}")


def cmd_witness(args):
    obj = _read(args.file)
    colored = isinstance(obj, ColoredFamilies)
    t = args.t
    if colored:
        if t is not None and t != obj.t:
            raise UsageError(f"--t {t} does not match the file's t={obj.t}")
        t = obj.t
    elif t is None:
        raise UsageError("--t is required for an SHG file")
    centers = [int(c) for c in args.centers.split(",")] if args.centers else None
    limits = _limits(args)

    mode = args.mode
    fallback = None
    report = None
    if mode == "auto":
        mode = "thm2" if colored else "thm1"
        try:
            report = _witness_run(obj, mode, t, centers, limits)
        except PreconditionError as exc:
            fallback = str(exc)
            mode = "solver"
    elif mode != "solver":
        report = _witness_run(obj, mode, t, centers, limits)

    if report is not None:
        payload = {"mode": mode, "found": True, **report.to_dict()}
        text = "\n".join([
            f"mode={mode}",
            _edges_text(report.matching, colored),
            "case_trace=" + ",".join(tag.value for tag in report.case_trace),
            f"recursion_depth={report.recursion_depth}",
        ])
        _emit(args, payload, text)
        return

    m, nodes = solver_witness(obj, t, limits)
    label = "solver" if fallback is None else f"solver (fallback: {fallback})"
    payload = {"mode": "solver", "fallback_reason": fallback, "found": m is not None,
               "matching": _edges_json(m), "nodes": nodes}
    text = f"mode={label}\n" + (_edges_text(m, colored) if m is not None else "found=no")
    _emit(args, payload, text)
    return 0 if m is not None else 1


def cmd_verify(args):
    cases = args.cases if args.cases is not None else default_cases(args.suite)
    report = run_suite(args.suite, args.seed, cases, _limits(args))
    body = report.to_json()
    if args.output:
        Path(args.output).write_text(body)
    if args.json:
        sys.stdout.write(body)
    else:
        print(report.summary())
        for failure in report.failures[:10]:
            print(f"  case {failure['case']}: " + "; ".join(failure["problems"]))
    print(f"# wall time {report.wall_time:.2f}s", file=sys.stderr)
    return 0 if report.ok else 1


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypermatch", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a structured JSON report")
    common.add_argument("--max-nodes", type=int, help="search node budget")
    common.add_argument("--max-millis", type=int, help="search wall-clock budget in ms")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", parents=[common], help="closed-form bounds for (n, k, t)")
    for name in ("n", "k", "t"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("gen", parents=[common], help="write an extremal construction")
    p.add_argument("kind", choices=("cover", "clique", "stars"))
    for name in ("n", "k", "t"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("nu", parents=[common], help="matching number of an SHG family")
    p.add_argument("file")
    p.set_defaults(func=cmd_nu)

    p = sub.add_parser("rainbow", parents=[common], help="rainbow matching of SHGM families")
    p.add_argument("file")
    p.set_defaults(func=cmd_rainbow)

    p = sub.add_parser("shift", parents=[common], help="apply the shift S_ij")
    p.add_argument("file")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_shift)

    p = sub.add_parser("compress", parents=[common], help="compress toward the top vertex")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_compress)

    p = sub.add_parser("witness", parents=[common], help="extract t disjoint edges")
    p.add_argument("file")
    p.add_argument("--t", type=int)
    p.add_argument("--mode", default="auto", choices=("auto", "lemma3", "cor1", "thm1", "thm2", "solver"))
    p.add_argument("--centers", help="comma-separated centers for cor1 (default: top-t degrees)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", parents=[common], help="run a seeded verification suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--cases", type=int)
    p.add_argument("-o", "--output", help="also write the JSON report here")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))  # exits with status 2
    except HypermatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return code or 0


if __name__ == "__main__":
    sys.exit(main())
