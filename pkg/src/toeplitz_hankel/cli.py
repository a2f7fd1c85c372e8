"""Command-line front end (``tph``).

Problem files are JSON objects with keys ``a``, ``b``, ``f`` (symbols in the
``{"num": {...}, "den": {...}}`` format) and an optional ``options`` object.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ToeplitzHankelError
from .oracle import finite_section_oracle
from .solver import SolutionSet, residual_norm, solve
from .symbol import RationalSymbol
from .tolerances import Tolerances, using_tolerances

EXIT_SOLVED = 0
EXIT_NOT_APPLICABLE = 2
EXIT_UNSOLVABLE = 3
EXIT_INVALID = 4

VERDICT_EXIT = {"solved": EXIT_SOLVED, "method_not_applicable": EXIT_NOT_APPLICABLE, "unsolvable": EXIT_UNSOLVABLE}

OPTION_KEYS = {"tolerance", "circle_tolerance", "oracle_order", "format"}

log = logging.getLogger("toeplitz_hankel")


class InvalidInput(ValueError):
    pass


@dataclass
class ProblemFile:
    a: RationalSymbol
    b: RationalSymbol
    f: RationalSymbol
    options: dict = field(default_factory=dict)

    @classmethod
    def from_json(cls, obj) -> ProblemFile:
        if not isinstance(obj, dict):
            raise InvalidInput("problem file must contain a JSON object")
        unknown = set(obj) - {"a", "b", "f", "options"}
        if unknown:
            raise InvalidInput(f"unknown problem keys: {sorted(unknown)}")
        missing = {"a", "b", "f"} - set(obj)
        if missing:
            raise InvalidInput(f"missing problem keys: {sorted(missing)}")
        options = obj.get("options", {})
        if not isinstance(options, dict):
            raise InvalidInput("options must be a JSON object")
        bad = set(options) - OPTION_KEYS
        if bad:
            raise InvalidInput(f"unknown option keys: {sorted(bad)}")
        if options.get("format", "json") not in ("json", "text"):
            raise InvalidInput("format must be 'json' or 'text'")
        return cls(*(RationalSymbol.from_json(obj[k]) for k in "abf"), options=dict(options))

    @classmethod
    def load(cls, path: str) -> ProblemFile:
        return cls.from_json(_read_json(path))


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"{path}: malformed JSON ({exc})") from exc
    except OSError as exc:
        raise InvalidInput(f"{path}: {exc.strerror}") from exc


def _resolve(args: argparse.Namespace, problem: ProblemFile, name: str, default):
    value = getattr(args, name, None)
    if value is not None:
        return value
    return problem.options.get(name, default)


def _overrides(args: argparse.Namespace, problem: ProblemFile) -> dict:
    out = {}
    tol = _resolve(args, problem, "tolerance", None)
    if tol is not None:
        out["solver"] = float(tol)
    circle = _resolve(args, problem, "circle_tolerance", None)
    if circle is not None:
        out["circle"] = float(circle)
    return out


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _solution_text(result: SolutionSet, oracle) -> str:
    lines = [f"case: {result.case_tag}", f"verdict: {result.report.verdict}"]
    if result.inner is not None:
        lines.append(f"shift: n={result.shift} (inner case {result.inner.case_tag})")
    if result.particular is not None:
        lines.append(f"particular: {result.particular}")
        lines.append(f"residual: {result.residual:.3e}")
    lines.append(f"kernel arity: {result.kernel.arity}")
    for k, e in enumerate(result.kernel.elements):
        lines.append(f"  k{k}: {e}")
    for c in result.report.conditions:
        lines.append(f"condition j={c.index}: {c.value.real:+.6e}{c.value.imag:+.6e}i  [{c.description}]")
    lines.extend(f"note: {n}" for n in result.report.notes)
    if oracle is not None:
        lines.extend(_oracle_text(oracle))
    return "\n".join(lines) + "\n"


def _oracle_text(report) -> list[str]:
    dev = "n/a" if report.deviation is None else f"{report.deviation:.3e}"
    return [f"oracle order: {report.order}",
            f"oracle max deviation (degree < {report.compared_degree}, modulo kernel): {dev}",
            f"oracle null-space dimension: {report.null_dimension}"]


def cmd_solve(args: argparse.Namespace) -> int:
    problem = ProblemFile.load(args.input)
    fmt = _resolve(args, problem, "format", "json")
    order = _resolve(args, problem, "oracle_order", None)
    with using_tolerances(**_overrides(args, problem)):
        result = solve(problem.a, problem.b, problem.f)
        oracle = None
        if order:
            oracle = finite_section_oracle(problem.a, problem.b, problem.f, int(order),
                                           result.particular, result.kernel.elements)
    if fmt == "text":
        text = _solution_text(result, oracle)
    else:
        payload = result.to_json()
        if oracle is not None:
            payload["oracle"] = oracle.to_json()
        text = _dump(payload)
    _emit(text, args.output)
    if result.report.verdict != "solved":
        for c in result.report.conditions:
            print(f"condition j={c.index}: |value| = {abs(c.value):.6e}", file=sys.stderr)
    return VERDICT_EXIT[result.report.verdict]


def _load_candidate(path: str) -> RationalSymbol:
    obj = _read_json(path)
    if isinstance(obj, dict) and "phi" in obj:
        obj = obj["phi"]
    elif isinstance(obj, dict) and "particular" in obj:
        obj = obj["particular"]
    if obj is None:
        raise InvalidInput(f"{path}: no candidate solution")
    return RationalSymbol.from_json(obj)


def cmd_verify(args: argparse.Namespace) -> int:
    problem = ProblemFile.load(args.input)
    phi = _load_candidate(args.phi)
    overrides = _overrides(args, problem)
    tolerance = overrides.get("solver", Tolerances().solver)
    with using_tolerances(**overrides):
        res = residual_norm(problem.a, problem.b, phi, problem.f)
    ok = res < tolerance
    _emit(_dump({"residual": res, "tolerance": tolerance, "ok": ok}), args.output)
    return 0 if ok else 1


def cmd_oracle(args: argparse.Namespace) -> int:
    problem = ProblemFile.load(args.input)
    order = args.order if args.order is not None else int(problem.options.get("oracle_order", 32))
    if order < 1:
        raise InvalidInput("oracle order must be positive")
    fmt = _resolve(args, problem, "format", "json")
    with using_tolerances(**_overrides(args, problem)):
        result = solve(problem.a, problem.b, problem.f)
        report = finite_section_oracle(problem.a, problem.b, problem.f, order,
                                       result.particular, result.kernel.elements)
    if fmt == "text":
        text = "\n".join([f"case: {result.case_tag}", f"kernel arity: {result.kernel.arity}",
                          *_oracle_text(report)]) + "\n"
    else:
        text = _dump({"case": result.case_tag, "verdict": result.report.verdict,
                      "kernel_arity": result.kernel.arity, **report.to_json()})
    _emit(text, args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tph",
        description="Solve (T(a) + H(b)) phi = f for matching pairs a a~ = b b~.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", "-i", required=True, help="problem JSON file ('-' for stdin)")
        p.add_argument("--output", "-o", default=None, help="write the report here instead of stdout")
        p.add_argument("--tolerance", type=float, default=None,
                       help=f"residual / condition tolerance (default {Tolerances().solver:g})")
        p.add_argument("--circle-tolerance", dest="circle_tolerance", type=float, default=None,
                       help=f"distance from |z| = 1 treated as on the circle (default {Tolerances().circle:g})")
        p.add_argument("--format", choices=("json", "text"), default=None, help="report format (default json)")

    p = sub.add_parser("solve", help="run the closed-form solver")
    common(p)
    p.add_argument("--oracle", dest="oracle_order", type=int, default=None, metavar="N",
                   help="also compare with the order-N finite section")
    p.set_defaults(handler=cmd_solve)

    p = sub.add_parser("verify", help="residual of a candidate solution")
    common(p)
    p.add_argument("--phi", required=True, help="JSON symbol, or an object with 'phi' or 'particular'")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("oracle", help="finite-section comparison")
    common(p)
    p.add_argument("--order", "-N", type=int, default=None, help="finite-section order (default 32)")
    p.set_defaults(handler=cmd_oracle)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.handler(args)
    except (ToeplitzHankelError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
