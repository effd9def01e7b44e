"""Command line front end.

One JSON object in on stdin, one JSON document out on stdout (DOT or
TSV where the format flag says so), with the field configuration given
by --field.  Errors out of the library produce a structured JSON error
and exit status 1; malformed input of any kind exits with status 2.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable

from . import jsonio
from .errors import BerklineError
from .fields import Polynomial, ValuedField, validate_table
from .points import geodesic, invert, join, norm, tree_distance
from .trees import contract, convex_hull, entry_time, retract
from .tropical import (
    DNF_ATOM_LIMIT,
    decompose_monomial,
    immersion_check,
    is_def_compact,
    newton_breakpoints,
    poly_dimension_report,
    poly_member,
    skeleton_preimage,
    trop_eval,
)


class _BadInput(ValueError):
    """Anything wrong with the invocation or the input document."""


@dataclass
class Output:
    obj: Any
    dot: str | None = None
    tsv: list[list[str]] | None = None
    plot: Callable[[str], None] | None = None


@dataclass
class Context:
    field: ValuedField | None
    payload: Any
    budget: int

    def need_field(self) -> ValuedField:
        if self.field is None:
            raise _BadInput("this command requires --field")
        return self.field

    def arg(self, key: str) -> Any:
        if not isinstance(self.payload, dict) or key not in self.payload:
            raise _BadInput(f"input is missing {key!r}")
        return self.payload[key]


def _fraction_or_inf(x) -> str:
    if x == math.inf:
        return "inf"
    return jsonio.frac_to_str(Fraction(x))


def _parse_poly(field: ValuedField, obj: Any) -> Polynomial:
    if not isinstance(obj, dict) or not isinstance(obj.get("coeffs"), list):
        raise _BadInput("polynomial input needs a coeffs array")
    return Polynomial.from_coeffs(field, [field.parse(c) for c in obj["coeffs"]])


def _parse_terms(obj: Any) -> list[tuple]:
    if not isinstance(obj, list):
        raise _BadInput("terms must be an array")
    out = []
    for row in obj:
        if not isinstance(row, dict) or "coeff" not in row or "exps" not in row:
            raise _BadInput("each term needs coeff and exps")
        exps = row["exps"]
        if not isinstance(exps, list) or not all(
            isinstance(e, int) and not isinstance(e, bool) for e in exps
        ):
            raise _BadInput("term exponents must be integers")
        out.append((jsonio.val_from_json(row["coeff"]), tuple(exps)))
    return out


# --- command implementations, one parse and one run phase each ------------


def parse_point_pair(ctx: Context):
    field = ctx.need_field()
    return (
        jsonio.point_from_json(field, ctx.arg("x")),
        jsonio.point_from_json(field, ctx.arg("y")),
    )


def run_point_eq(ctx, parsed) -> Output:
    x, y = parsed
    return Output({"equal": x == y})


def run_join(ctx, parsed) -> Output:
    x, y = parsed
    return Output(jsonio.point_to_json(ctx.field, join(x, y)))


def run_dist(ctx, parsed) -> Output:
    x, y = parsed
    return Output({"distance": _fraction_or_inf(tree_distance(x, y))})


def run_path(ctx, parsed) -> Output:
    path = geodesic(*parsed)
    from . import plotting

    return Output(
        jsonio.path_to_json(path),
        plot=lambda out: plotting.plot_path(path, out),
    )


def parse_gauss_eval(ctx: Context):
    field = ctx.need_field()
    return (
        jsonio.point_from_json(field, ctx.arg("point")),
        _parse_poly(field, ctx.arg("poly")),
    )


def run_gauss_eval(ctx, parsed) -> Output:
    point, poly = parsed
    return Output(jsonio.val_to_json(norm(point, poly)))


def parse_one_point(ctx: Context):
    return (jsonio.point_from_json(ctx.need_field(), ctx.arg("x")),)


def run_invert(ctx, parsed) -> Output:
    return Output(jsonio.point_to_json(ctx.field, invert(parsed[0])))


def parse_hull(ctx: Context):
    field = ctx.need_field()
    pts = ctx.arg("points")
    if not isinstance(pts, list):
        raise _BadInput("points must be an array")
    include_gauss = ctx.payload.get("include_gauss", False)
    if not isinstance(include_gauss, bool):
        raise _BadInput("include_gauss must be a boolean")
    return [jsonio.point_from_json(field, p) for p in pts], include_gauss


def run_hull(ctx, parsed) -> Output:
    points, include_gauss = parsed
    tree = convex_hull(points, include_gauss=include_gauss)
    from . import plotting

    return Output(
        jsonio.tree_to_json(tree),
        dot=jsonio.tree_to_dot(tree),
        plot=lambda out: plotting.plot_tree(tree, out),
    )


def parse_entry_time(ctx: Context):
    field = ctx.need_field()
    return (
        jsonio.tree_from_json(field, ctx.arg("tree")),
        jsonio.point_from_json(field, ctx.arg("x")),
    )


def run_entry_time(ctx, parsed) -> Output:
    tree, x = parsed
    return Output(jsonio.val_to_json(entry_time(tree, x)))


def parse_retract(ctx: Context):
    field = ctx.need_field()
    return (
        jsonio.tree_from_json(field, ctx.arg("tree")),
        jsonio.val_from_json(ctx.arg("time")),
        jsonio.point_from_json(field, ctx.arg("x")),
    )


def run_retract(ctx, parsed) -> Output:
    tree, time, x = parsed
    return Output(jsonio.point_to_json(ctx.field, retract(tree, time, x)))


def parse_contract(ctx: Context):
    field = ctx.need_field()
    return (
        jsonio.val_from_json(ctx.arg("time")),
        jsonio.point_from_json(field, ctx.arg("x")),
    )


def run_contract(ctx, parsed) -> Output:
    time, x = parsed
    return Output(jsonio.point_to_json(ctx.field, contract(time, x)))


def parse_trop_eval(ctx: Context):
    radii = ctx.arg("radii")
    if not isinstance(radii, list):
        raise _BadInput("radii must be an array")
    return (
        _parse_terms(ctx.arg("terms")),
        [jsonio.val_from_json(r) for r in radii],
    )


def run_trop_eval(ctx, parsed) -> Output:
    terms, radii = parsed
    return Output(jsonio.val_to_json(trop_eval(terms, radii)))


def parse_newton(ctx: Context):
    return (_parse_poly(ctx.need_field(), ctx.arg("poly")),)


def run_newton(ctx, parsed) -> Output:
    poly = parsed[0]
    breaks = newton_breakpoints(poly)
    obj = {
        "breakpoints": [
            {"slope": jsonio.frac_to_str(s), "mult": m} for s, m in breaks
        ]
    }
    tsv = [["slope", "mult"]]
    tsv.extend([jsonio.frac_to_str(s), str(m)] for s, m in breaks)
    field = poly.field
    pts = [
        (i, field.abs(c).exponent)
        for i, c in enumerate(poly.dense_coeffs())
        if not field.is_zero(c)
    ]
    from . import plotting

    return Output(
        obj, tsv=tsv, plot=lambda out: plotting.plot_newton(pts, breaks, out)
    )


def parse_decompose(ctx: Context):
    return (
        jsonio.mono_expr_from_json(ctx.arg("expr")),
        jsonio.interval_from_json(ctx.arg("domain")),
    )


def run_decompose(ctx, parsed) -> Output:
    expr, domain = parsed
    fn = decompose_monomial(expr, domain)
    tsv = [["radius_exponent", "value_exponent", "value_exponent_float_derived"]]
    for b in fn.breakpoints():
        x = "inf" if b.is_zero else jsonio.frac_to_str(b.exponent)
        try:
            v = fn(b)
            y = "inf" if v.is_zero else jsonio.frac_to_str(v.exponent)
            derived = "inf" if v.is_zero else repr(float(v.exponent))
        except BerklineError:
            y = "undefined"
            derived = "undefined"
        tsv.append([x, y, derived])
    from . import plotting

    return Output(
        jsonio.pl_function_to_json(fn),
        tsv=tsv,
        plot=lambda out: plotting.plot_pl_function(fn, out),
    )


def parse_polyhedron(ctx: Context):
    return (jsonio.polyhedron_from_json(ctx.arg("polyhedron")),)


def parse_poly_member(ctx: Context):
    v = ctx.arg("v")
    if not isinstance(v, list):
        raise _BadInput("v must be an array of values")
    return (
        jsonio.polyhedron_from_json(ctx.arg("polyhedron")),
        [jsonio.val_from_json(x) for x in v],
    )


def run_poly_member(ctx, parsed) -> Output:
    poly, v = parsed
    return Output({"member": poly_member(poly, v)})


def run_compactness(ctx, parsed) -> Output:
    return Output({"compact": is_def_compact(parsed[0], cap=ctx.budget)})


def run_dimension(ctx, parsed) -> Output:
    dim, caveats = poly_dimension_report(parsed[0], cap=ctx.budget)
    return Output(
        {"dimension": "-inf" if dim == -math.inf else dim, "caveats": caveats}
    )


def parse_skeleton(ctx: Context):
    field = ctx.need_field()
    zeros, poles = jsonio.divisor_lists_from_json(field, ctx.payload)
    return zeros, poles


def run_skeleton(ctx, parsed) -> Output:
    zeros, poles = parsed
    s = skeleton_preimage(zeros, poles)
    labels = [f"slope {v}" for v in s.edge_slopes]
    from . import plotting

    return Output(
        jsonio.skeleton_to_json(s),
        dot=jsonio.tree_to_dot(s.tree, edge_labels=labels),
        plot=lambda out: plotting.plot_tree(
            s.tree, out, edge_labels=[str(v) for v in s.edge_slopes]
        ),
    )


def parse_immersion(ctx: Context):
    return (jsonio.skeleton_from_json(ctx.need_field(), ctx.payload),)


def run_immersion(ctx, parsed) -> Output:
    return Output({"immersion": immersion_check(parsed[0])})


def parse_validate_table(ctx: Context):
    from .fields import UltrametricTable

    field = ctx.need_field()
    if not isinstance(field, UltrametricTable):
        raise _BadInput("validate-table works on table fields only")
    return (field,)


def run_validate_table(ctx, parsed) -> Output:
    violations = validate_table(parsed[0])
    return Output(
        {
            "violations": [
                {"kind": v.kind, "labels": list(v.labels)} for v in violations
            ]
        }
    )


@dataclass
class Command:
    parse: Callable[[Context], tuple]
    run: Callable[[Context, tuple], Output]
    formats: tuple[str, ...] = ("json",)
    plots: bool = False


COMMANDS: dict[str, Command] = {
    "point-eq": Command(parse_point_pair, run_point_eq),
    "join": Command(parse_point_pair, run_join),
    "dist": Command(parse_point_pair, run_dist),
    "path": Command(parse_point_pair, run_path, plots=True),
    "gauss-eval": Command(parse_gauss_eval, run_gauss_eval),
    "invert": Command(parse_one_point, run_invert),
    "hull": Command(parse_hull, run_hull, formats=("json", "dot"), plots=True),
    "entry-time": Command(parse_entry_time, run_entry_time),
    "retract": Command(parse_retract, run_retract),
    "contract": Command(parse_contract, run_contract),
    "trop-eval": Command(parse_trop_eval, run_trop_eval),
    "newton": Command(parse_newton, run_newton, formats=("json", "tsv"), plots=True),
    "decompose": Command(
        parse_decompose, run_decompose, formats=("json", "tsv"), plots=True
    ),
    "poly-member": Command(parse_poly_member, run_poly_member),
    "compactness": Command(parse_polyhedron, run_compactness),
    "dimension": Command(parse_polyhedron, run_dimension),
    "skeleton": Command(
        parse_skeleton, run_skeleton, formats=("json", "dot"), plots=True
    ),
    "immersion-check": Command(parse_immersion, run_immersion),
    "validate-table": Command(parse_validate_table, run_validate_table),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berkline",
        description="Exact geometry on the projective line over a valued field.",
    )
    parser.add_argument(
        "--field",
        help="field configuration, e.g. '{\"field\":\"padic\",\"p\":3}'",
    )
    parser.add_argument(
        "--format",
        default="json",
        choices=("json", "dot", "tsv"),
        help="output format; dot and tsv exist only where they make sense",
    )
    parser.add_argument(
        "--seed",
        type=int,
        default=0,
        help="reserved for sampling reproducibility; all current commands "
        "are deterministic without it",
    )
    parser.add_argument(
        "--budget",
        type=int,
        default=DNF_ATOM_LIMIT,
        help="atom cap for normal forms in compactness and dimension",
    )
    parser.add_argument(
        "--plot-out",
        help="also render a figure of the result to this image file",
    )
    parser.add_argument("command", choices=sorted(COMMANDS))
    return parser


def _emit(text: str) -> None:
    sys.stdout.write(text)


def _emit_json(obj: Any) -> None:
    _emit(json.dumps(obj, sort_keys=True) + "\n")


def _fail(code: str, message: str, status: int, location: str | None = None) -> int:
    _emit_json({"code": code, "message": message, "location": location})
    return status


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    command = COMMANDS[ns.command]
    if ns.format not in command.formats:
        return _fail(
            "malformed-input",
            f"{ns.command} cannot produce {ns.format} output",
            2,
        )
    if ns.plot_out and not command.plots:
        return _fail(
            "malformed-input", f"{ns.command} has no figure output", 2
        )
    if ns.budget <= 0:
        return _fail("malformed-input", "budget must be positive", 2)
    try:
        field = None
        if ns.field is not None:
            check = ns.command != "validate-table"
            field = jsonio.field_from_json(json.loads(ns.field), check=check)
        data = sys.stdin.read().strip()
        payload = json.loads(data) if data else {}
        ctx = Context(field, payload, ns.budget)
        parsed = command.parse(ctx)
    except json.JSONDecodeError as exc:
        return _fail("malformed-input", f"bad JSON: {exc}", 2)
    except (ValueError, KeyError, TypeError) as exc:
        return _fail("malformed-input", str(exc), 2)
    except BerklineError as exc:
        # the input decoded but named something impossible, such as a
        # center that is not a rational or an interval out of order
        return _fail("malformed-input", str(exc), 2)
    try:
        output = command.run(ctx, parsed)
        if ns.plot_out:
            output.plot(ns.plot_out)
    except BerklineError as exc:
        _emit_json(jsonio.error_to_json(exc))
        return 1
    if ns.format == "dot":
        _emit(output.dot)
    elif ns.format == "tsv":
        _emit("\n".join("\t".join(row) for row in output.tsv) + "\n")
    else:
        _emit_json(output.obj)
    return 0


if __name__ == "__main__":
    sys.exit(main())
