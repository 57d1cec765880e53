"""Command-line front end.

Subcommands inspect root data, evaluate curvature, run the Einstein
classification pipelines, and drive the Groebner / root-isolation engine on
polynomial files.  Output is a human table or canonical JSON (sorted keys,
two-space indent), with rationals as 'p/q' strings and floats at 15
significant digits in JSON, 6 decimals in tables.

Exit codes: 0 success, 2 usage, 3 budget exceeded, 4 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from fractions import Fraction

from .curvature import InvariantMetric, einstein_residual, kaehler_einstein_metric, ricci
from .errors import ConfigurationError, DomainError, FlageinError, InternalError, ParseError
from .isotropy import triple_tensor
from .polyalg.groebner import GroebnerBudget, buchberger
from .polyalg.poly import TermOrder, format_polynomial, parse_polynomial_file
from .polyalg.realroots import refine_root, sturm_isolate
from .rootsys import killing_form, long_short_split, positive_roots, root_system
from .solver import (
    BudgetExceededError,
    build_system,
    newton_oracle,
    solution_set_to_dict,
    solve_general_case,
    solve_symmetric_ansatz,
)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4


@dataclass
class RunConfig:
    """Validated knobs shared by the solver subcommands."""

    group: str = "G2"
    format: str = "table"
    precision: float = 1e-10
    seed: int = 0
    starts: int = 100_000
    budget_pairs: int = 100_000
    budget_bits: int = 1_000_000
    output: str | None = None

    def __post_init__(self):
        if not (0 < self.precision < 1):
            raise ConfigurationError("precision must lie in (0, 1)")
        if self.starts < 1:
            raise ConfigurationError("starts must be >= 1")

    @property
    def budget(self) -> GroebnerBudget:
        return GroebnerBudget(max_pairs=self.budget_pairs, max_coeff_bits=self.budget_bits)


def _env_int(name: str, fallback: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return fallback
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"environment variable {name} must be an integer") from None


def _scalar(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return format(float(v), ".15g")


def _table_number(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    return f"{float(v):.6f}"


def emit_json(payload: dict, stream) -> None:
    stream.write(json.dumps(payload, sort_keys=True, indent=2))
    stream.write("\n")


def _parse_metric(text: str, size: int) -> InvariantMetric:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if len(parts) != size:
        raise ConfigurationError(f"metric needs {size} entries, got {len(parts)}")
    values = []
    exact = True
    for p in parts:
        try:
            if "/" in p or p.lstrip("+-").isdigit():
                values.append(Fraction(p))
            else:
                values.append(float(p))
                exact = False
        except (ValueError, ZeroDivisionError):
            raise ConfigurationError(f"bad metric entry {p!r}") from None
    if any((v <= 0) for v in values):
        raise DomainError("metric entries must be positive")
    return InvariantMetric(tuple(values) if not exact else tuple(Fraction(v) for v in values))


def cmd_roots(args, out) -> int:
    spec = root_system(args.group)
    pos = positive_roots(spec)
    form = killing_form(spec)
    long_idx, short_idx = long_short_split(spec)
    if args.format == "json":
        emit_json(
            {
                "group": spec.type_label,
                "rank": spec.rank,
                "positiveRoots": [list(r.coeffs) for r in pos],
                "lengthsSquared": [_scalar(form.length_sq(r)) for r in pos],
                "longIndices": [i + 1 for i in long_idx],
                "shortIndices": [i + 1 for i in short_idx],
                "gram": [[_scalar(v) for v in row] for row in form.gram],
            },
            out,
        )
        return EXIT_OK
    out.write(f"positive roots of {spec.type_label} ({len(pos)}):\n")
    for i, r in enumerate(pos):
        kind = "long" if i in long_idx else "short"
        out.write(f"  m{i + 1}: {r}  (|.|^2 = {form.length_sq(r)}, {kind})\n")
    out.write("Killing gram matrix on simple roots:\n")
    for row in form.gram:
        out.write("  [" + ", ".join(str(v) for v in row) + "]\n")
    return EXIT_OK


def cmd_triples(args, out) -> int:
    spec = root_system(args.group)
    tensor = triple_tensor(spec)
    if args.format == "json":
        emit_json({"group": spec.type_label, "triples": tensor.to_records()}, out)
        return EXIT_OK
    if not tensor.entries:
        out.write(f"{spec.type_label}: no nonzero triples\n")
        return EXIT_OK
    out.write(f"nonzero structure-constant triples of {spec.type_label}/T:\n")
    for (i, j, k), v in tensor.entries:
        out.write(f"  [{k + 1}; {i + 1} {j + 1}] = {v}\n")
    return EXIT_OK


def cmd_ricci(args, out) -> int:
    spec = root_system(args.group)
    size = len(positive_roots(spec))
    metric = _parse_metric(args.metric, size)
    metric.require_positive()
    tensor = triple_tensor(spec)
    components = ricci(metric, tensor)
    k, residual = einstein_residual(metric, tensor)
    if args.format == "json":
        emit_json(
            {
                "group": spec.type_label,
                "metric": [_scalar(v) for v in metric.x],
                "ricci": [_scalar(v) for v in components.r],
                "scalarCurvature": _scalar(components.scalar_curvature),
                "k": _scalar(k),
                "residual": _scalar(residual),
            },
            out,
        )
        return EXIT_OK
    out.write(f"ricci components for {spec.type_label}, x = ({args.metric}):\n")
    for i, v in enumerate(components.r):
        out.write(f"  r{i + 1} = {_table_number(v)}\n")
    out.write(f"scalar curvature = {_table_number(components.scalar_curvature)}\n")
    out.write(f"k estimate = {_table_number(k)}, residual = {_table_number(residual)}\n")
    return EXIT_OK


def cmd_kaehler(args, out) -> int:
    spec = root_system(args.group)
    metric = kaehler_einstein_metric(spec)
    tensor = triple_tensor(spec)
    k, residual = einstein_residual(metric, tensor)
    if residual != 0:
        raise InternalError("Kaehler-Einstein metric failed the exact Einstein check")
    if args.format == "json":
        emit_json(
            {
                "group": spec.type_label,
                "metric": [_scalar(v) for v in metric.x],
                "k": _scalar(k),
                "residual": _scalar(residual),
            },
            out,
        )
        return EXIT_OK
    values = ", ".join(str(v) for v in metric.x)
    out.write(f"Kaehler-Einstein metric of {spec.type_label}/T: ({values})\n")
    out.write(f"Einstein constant k = {k} (exact residual {residual})\n")
    return EXIT_OK


def cmd_einstein(args, out) -> int:
    config = RunConfig(
        group=args.group,
        format=args.format,
        precision=args.precision,
        seed=args.seed,
        starts=args.starts,
        budget_pairs=_env_int("FLAGEIN_GB_MAX_PAIRS", args.budget_pairs),
        budget_bits=_env_int("FLAGEIN_GB_MAX_BITS", args.budget_bits),
        output=args.output,
    )
    spec = root_system(config.group)
    if args.mode == "symmetric":
        result = solve_symmetric_ansatz(spec, config.budget)
    elif args.mode == "general":
        result = solve_general_case(spec, config.budget)
    else:
        system = build_system(spec, normalization={"x1": 1})
        result = newton_oracle(system, starts=config.starts, seed=config.seed, tol=config.precision)
    payload = solution_set_to_dict(result)
    if config.output:
        with open(config.output, "w") as fh:
            emit_json(payload, fh)
    if config.format == "json":
        emit_json(payload, out)
    else:
        out.write(f"group {result.group}, normalization: {result.normalization}\n")
        for case in result.cases:
            out.write(
                f"case [{case.name}] status={case.status}"
                + (f" degree={case.elimination_degree}" if case.elimination_degree else "")
                + (f" realRoots={case.real_roots}" if case.real_roots is not None else "")
                + (f" positiveRoots={case.positive_roots}" if case.positive_roots is not None else "")
                + "\n"
            )
            if case.notes:
                out.write(f"    {case.notes}\n")
        out.write(f"solutions ({len(result.solutions)}):\n")
        for s in result.solutions:
            xs = ", ".join(_table_number(v) for v in s.metric.x)
            out.write(
                f"  x = ({xs})  k = {_table_number(s.k)}  kaehler = {s.kaehler}"
                f"  [{s.provenance}] residual = {_table_number(s.residual)}\n"
            )
    return EXIT_BUDGET if result.status == "budget_exceeded" else EXIT_OK


def cmd_groebner(args, out) -> int:
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read {args.file}: {exc}") from None
    variables = tuple(v.strip() for v in args.vars.split(",")) if args.vars else None
    polys = parse_polynomial_file(text, variables)
    if not polys:
        raise ConfigurationError("empty polynomial file")
    order = TermOrder(args.order, polys[0].vars)
    budget = GroebnerBudget(
        max_pairs=_env_int("FLAGEIN_GB_MAX_PAIRS", args.budget_pairs),
        max_coeff_bits=_env_int("FLAGEIN_GB_MAX_BITS", args.budget_bits),
    )
    basis = buchberger(polys, order, budget)
    isolation = None
    if basis.complete and args.isolate:
        target = None
        for g in basis.generators:
            if g.support_vars() == (args.isolate,):
                target = g
                break
        if target is None:
            raise ConfigurationError(f"basis has no generator univariate in {args.isolate}")
        intervals = sturm_isolate(target, rng=(Fraction(0), None))
        refined = [refine_root(iv, Fraction(1, 10**12)) for iv in intervals]
        isolation = {
            "variable": args.isolate,
            "polynomial": format_polynomial(target, TermOrder("lex", (args.isolate,))),
            "degree": target.degree_in(args.isolate),
            "positiveRoots": [format(float(r.midpoint()), ".15g") for r in refined],
        }
    if args.format == "json":
        payload = {
            "status": basis.status,
            "order": args.order,
            "variables": list(order.variables),
            "generators": [format_polynomial(g, basis.order) for g in basis.generators],
            "pairsProcessed": basis.stats.pairs_processed,
        }
        if isolation:
            payload["isolation"] = isolation
        emit_json(payload, out)
    else:
        out.write(f"status: {basis.status} ({basis.stats.pairs_processed} pairs)\n")
        out.write(f"reduced basis under {args.order} ({len(basis.generators)} generators):\n")
        for g in basis.generators:
            out.write("  " + format_polynomial(g, basis.order) + "\n")
        if isolation:
            out.write(f"univariate in {isolation['variable']} (degree {isolation['degree']}):\n")
            out.write("  " + isolation["polynomial"] + "\n")
            out.write(f"positive real roots ({len(isolation['positiveRoots'])}):\n")
            for r in isolation["positiveRoots"]:
                out.write(f"  {r}\n")
    return EXIT_BUDGET if not basis.complete else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagein",
        description="Invariant Einstein metrics on full flag manifolds K/T",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("roots", help="positive roots, lengths, Killing gram matrix")
    p.add_argument("group")
    add_format(p)
    p.set_defaults(func=cmd_roots)

    p = sub.add_parser("triples", help="nonzero structure-constant triples")
    p.add_argument("group")
    add_format(p)
    p.set_defaults(func=cmd_triples)

    p = sub.add_parser("ricci", help="Ricci components of a given metric")
    p.add_argument("group")
    p.add_argument("--metric", required=True, help="comma-separated positive entries")
    add_format(p)
    p.set_defaults(func=cmd_ricci)

    p = sub.add_parser("kaehler", help="the Kaehler-Einstein metric, integer-normalized")
    p.add_argument("group")
    add_format(p)
    p.set_defaults(func=cmd_kaehler)

    p = sub.add_parser("einstein", help="solve the Einstein system")
    p.add_argument("group")
    p.add_argument("--mode", choices=("symmetric", "general", "oracle"), default="oracle")
    p.add_argument("--starts", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--precision", type=float, default=1e-10)
    p.add_argument("--budget-pairs", type=int, default=100_000)
    p.add_argument("--budget-bits", type=int, default=1_000_000)
    p.add_argument("--output", help="also write the JSON report to this path")
    add_format(p)
    p.set_defaults(func=cmd_einstein)

    p = sub.add_parser("groebner", help="reduced basis of a polynomial file")
    p.add_argument("file")
    p.add_argument("--order", choices=("lex", "grevlex"), default="lex")
    p.add_argument("--vars", help="comma-separated variable priority (highest first)")
    p.add_argument("--isolate", help="isolate positive real roots of the univariate generator")
    p.add_argument("--budget-pairs", type=int, default=100_000)
    p.add_argument("--budget-bits", type=int, default=1_000_000)
    add_format(p)
    p.set_defaults(func=cmd_groebner)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args, sys.stdout)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ConfigurationError, DomainError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except FlageinError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
