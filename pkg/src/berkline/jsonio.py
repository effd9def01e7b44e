"""JSON and DOT encodings for every value the command line ships.

Parsing raises ValueError on malformed shapes so the CLI can separate
bad input (exit 2) from semantic errors out of the library (exit 1).
All rationals are written as "num/den" strings; the zero value is
{"zero": true}; a finite value is {"e": "num/den"}; the bare string
"inf" is accepted for a value (exponent infinity, the zero value), which
is how the identity time is usually written.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .errors import BerklineError
from .fields import PAdicField, TAdicField, UltrametricTable, ValuedField
from .points import Path, PathLeg, Point, disc, infinity, simple_point
from .trees import Edge, FiniteSubtree
from .tropical import (
    And,
    Atom,
    Divisor,
    MaxExpr,
    MinExpr,
    MonoExpr,
    Monomial,
    Or,
    PLFunction1D,
    SkeletonPreimage,
    TropicalPolyhedron,
)
from .valmonoid import Interval, MonomialMap, Val, ZERO


def frac_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def frac_from_json(obj: Any) -> Fraction:
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise ValueError(f"expected a rational, got {obj!r}")
    try:
        return Fraction(obj)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {obj!r}") from exc


def val_to_json(v: Val) -> dict:
    if v.is_zero:
        return {"zero": True}
    return {"e": frac_to_str(v.exponent)}


def val_from_json(obj: Any) -> Val:
    if obj == "inf":
        return ZERO
    if not isinstance(obj, dict):
        raise ValueError(f"expected a value object, got {obj!r}")
    if obj.get("zero") is True:
        return ZERO
    if "e" in obj:
        return Val.of(frac_from_json(obj["e"]))
    raise ValueError(f"expected a value object, got {obj!r}")


def interval_to_json(iv: Interval) -> list:
    return [val_to_json(iv.lo), val_to_json(iv.hi)]


def interval_from_json(obj: Any) -> Interval:
    if not isinstance(obj, list) or len(obj) != 2:
        raise ValueError(f"expected [lo, hi], got {obj!r}")
    return Interval(val_from_json(obj[0]), val_from_json(obj[1]))


# ---------------------------------------------------------------------------
# Fields and elements


def field_to_json(field: ValuedField) -> dict:
    return field.config()


def field_from_json(obj: Any, check: bool = True) -> ValuedField:
    if not isinstance(obj, dict) or "field" not in obj:
        raise ValueError(f"expected a field config, got {obj!r}")
    kind = obj["field"]
    if kind == "padic":
        p = obj.get("p")
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError("padic config needs an integer p")
        return PAdicField(p)
    if kind == "tadic":
        q = obj.get("q")
        if q is not None and (not isinstance(q, int) or isinstance(q, bool)):
            raise ValueError("tadic config needs an integer q or none")
        return TAdicField(q)
    if kind == "table":
        labels = obj.get("labels")
        dist = obj.get("dist")
        if not isinstance(labels, list) or not isinstance(dist, list):
            raise ValueError("table config needs labels and dist")
        matrix = [[val_from_json(v) for v in row] for row in dist]
        return UltrametricTable(labels, matrix, check=check)
    raise ValueError(f"unknown field kind {kind!r}")


def element_to_json(field: ValuedField, x: Any) -> Any:
    return field.to_json(x)


def element_from_json(field: ValuedField, obj: Any) -> Any:
    return field.parse(obj)


# ---------------------------------------------------------------------------
# Points, paths, trees


def point_to_json(field: ValuedField, p: Point) -> dict:
    if p.infinite:
        return {"inf": True}
    return {
        "center": element_to_json(field, p.center),
        "radius": val_to_json(p.radius),
    }


def point_from_json(field: ValuedField, obj: Any) -> Point:
    if not isinstance(obj, dict):
        raise ValueError(f"expected a point object, got {obj!r}")
    if obj.get("inf") is True:
        return infinity(field)
    if "center" not in obj:
        raise ValueError(f"point needs a center: {obj!r}")
    center = element_from_json(field, obj["center"])
    radius = val_from_json(obj.get("radius", {"zero": True}))
    return disc(field, center, radius)


def path_to_json(path: Path) -> dict:
    return {
        "legs": [
            {
                "center": element_to_json(path.field, leg.center),
                "start": val_to_json(leg.start),
                "end": val_to_json(leg.end),
                "chart": "inverted" if leg.flipped else "unit",
            }
            for leg in path.legs
        ]
    }


def path_from_json(field: ValuedField, obj: Any) -> Path:
    if not isinstance(obj, dict) or not isinstance(obj.get("legs"), list):
        raise ValueError(f"expected a path object, got {obj!r}")
    legs = []
    for row in obj["legs"]:
        if not isinstance(row, dict):
            raise ValueError(f"expected a leg object, got {row!r}")
        legs.append(
            PathLeg(
                element_from_json(field, row["center"]),
                val_from_json(row["start"]),
                val_from_json(row["end"]),
                _chart_from_json(row.get("chart", "unit")),
            )
        )
    return Path(field, tuple(legs))


def _chart_from_json(obj: Any) -> bool:
    if obj == "unit":
        return False
    if obj == "inverted":
        return True
    raise ValueError(f"chart must be 'unit' or 'inverted', got {obj!r}")


def tree_to_json(tree: FiniteSubtree) -> dict:
    return {
        "vertices": [point_to_json(tree.field, v) for v in tree.vertices],
        "edges": [
            {
                "center": element_to_json(tree.field, e.center),
                "rlo": val_to_json(e.lo),
                "rhi": val_to_json(e.hi),
                "chart": "inverted" if e.flipped else "unit",
            }
            for e in tree.edges
        ],
    }


def tree_from_json(field: ValuedField, obj: Any) -> FiniteSubtree:
    if not isinstance(obj, dict):
        raise ValueError(f"expected a tree object, got {obj!r}")
    vertices = obj.get("vertices", [])
    edges = obj.get("edges", [])
    if not isinstance(vertices, list) or not isinstance(edges, list):
        raise ValueError("tree needs vertex and edge arrays")
    vs = tuple(point_from_json(field, v) for v in vertices)
    es = []
    for row in edges:
        if not isinstance(row, dict):
            raise ValueError(f"expected an edge object, got {row!r}")
        es.append(
            Edge(
                element_from_json(field, row["center"]),
                val_from_json(row["rlo"]),
                val_from_json(row["rhi"]),
                _chart_from_json(row.get("chart", "unit")),
            )
        )
    return FiniteSubtree(field, vs, tuple(es))


def _dot_quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _point_label(field: ValuedField, p: Point) -> str:
    if p.infinite:
        return "inf"
    center = element_to_json(field, p.center)
    return f"{center} : {p.radius}"


def tree_to_dot(tree: FiniteSubtree, edge_labels: list[str] | None = None) -> str:
    """DOT graph of a tree: vertices as nodes, edges labeled by radii."""
    lines = ["graph tree {"]
    for i, v in enumerate(tree.vertices):
        lines.append(f"  v{i} [label={_dot_quote(_point_label(tree.field, v))}];")
    for j, e in enumerate(tree.edges):
        ends = []
        for radius in (e.lo, e.hi):
            p = tree.edge_point(e, radius)
            k = next((i for i, v in enumerate(tree.vertices) if v == p), None)
            ends.append(f"v{k}" if k is not None else None)
        a, b = ends
        if a is None or b is None:
            # an edge endpoint that is not a vertex still appears, keyed
            # by its edge index, so no geometry is silently dropped
            if a is None:
                a = f"e{j}lo"
                p = tree.edge_point(e, e.lo)
                lines.append(
                    f"  {a} [shape=point, label={_dot_quote(_point_label(tree.field, p))}];"
                )
            if b is None:
                b = f"e{j}hi"
                p = tree.edge_point(e, e.hi)
                lines.append(
                    f"  {b} [shape=point, label={_dot_quote(_point_label(tree.field, p))}];"
                )
        chart = " (inverted)" if e.flipped else ""
        label = f"[{e.lo}; {e.hi}]{chart}"
        if edge_labels is not None:
            label = f"{label} {edge_labels[j]}"
        lines.append(f"  {a} -- {b} [label={_dot_quote(label)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Monomial expressions and piecewise functions


def mono_map_to_json(m: MonomialMap) -> dict:
    return {"coeff": val_to_json(m.coeff), "exponent": frac_to_str(m.exponent)}


def mono_map_from_json(obj: Any) -> MonomialMap:
    if not isinstance(obj, dict) or "coeff" not in obj or "exponent" not in obj:
        raise ValueError(f"expected a monomial map, got {obj!r}")
    return MonomialMap(val_from_json(obj["coeff"]), frac_from_json(obj["exponent"]))


def mono_expr_from_json(obj: Any) -> MonoExpr:
    if isinstance(obj, dict) and "max" in obj:
        parts = obj["max"]
        if not isinstance(parts, list):
            raise ValueError("max expects an array")
        return MaxExpr(tuple(mono_expr_from_json(p) for p in parts))
    if isinstance(obj, dict) and "min" in obj:
        parts = obj["min"]
        if not isinstance(parts, list):
            raise ValueError("min expects an array")
        return MinExpr(tuple(mono_expr_from_json(p) for p in parts))
    return mono_map_from_json(obj)


def mono_expr_to_json(expr: MonoExpr) -> Any:
    if isinstance(expr, MaxExpr):
        return {"max": [mono_expr_to_json(p) for p in expr.parts]}
    if isinstance(expr, MinExpr):
        return {"min": [mono_expr_to_json(p) for p in expr.parts]}
    return mono_map_to_json(expr)


def pl_function_to_json(fn: PLFunction1D) -> dict:
    return {
        "domain": interval_to_json(fn.domain),
        "cells": [
            {"cell": interval_to_json(cell), **mono_map_to_json(piece)}
            for cell, piece in zip(fn.cells, fn.pieces)
        ],
    }


# ---------------------------------------------------------------------------
# Tropical polyhedra


def _monomial_to_json(m: Monomial) -> dict:
    return {"coeff": val_to_json(m.coeff), "exps": list(m.exps)}


def _monomial_from_json(obj: Any) -> Monomial:
    if not isinstance(obj, dict) or "coeff" not in obj or "exps" not in obj:
        raise ValueError(f"expected a monomial, got {obj!r}")
    exps = obj["exps"]
    if not isinstance(exps, list) or not all(
        isinstance(e, int) and not isinstance(e, bool) for e in exps
    ):
        raise ValueError("monomial exponents must be integers")
    return Monomial(val_from_json(obj["coeff"]), tuple(exps))


def formula_to_json(formula) -> dict:
    if isinstance(formula, Atom):
        return {
            "op": formula.op,
            "left": _monomial_to_json(formula.left),
            "right": _monomial_to_json(formula.right),
        }
    if isinstance(formula, And):
        return {"and": [formula_to_json(p) for p in formula.parts]}
    return {"or": [formula_to_json(p) for p in formula.parts]}


def formula_from_json(obj: Any):
    if not isinstance(obj, dict):
        raise ValueError(f"expected a formula object, got {obj!r}")
    if "and" in obj:
        if not isinstance(obj["and"], list):
            raise ValueError("and expects an array")
        return And(tuple(formula_from_json(p) for p in obj["and"]))
    if "or" in obj:
        if not isinstance(obj["or"], list):
            raise ValueError("or expects an array")
        return Or(tuple(formula_from_json(p) for p in obj["or"]))
    if "op" in obj:
        if obj["op"] not in ("lt", "le", "gt", "ge"):
            raise ValueError(f"unknown comparison {obj['op']!r}")
        return Atom(
            _monomial_from_json(obj["left"]),
            _monomial_from_json(obj["right"]),
            obj["op"],
        )
    raise ValueError(f"expected a formula object, got {obj!r}")


def polyhedron_to_json(poly: TropicalPolyhedron) -> dict:
    return {"arity": poly.arity, "formula": formula_to_json(poly.formula)}


def polyhedron_from_json(obj: Any) -> TropicalPolyhedron:
    if not isinstance(obj, dict) or "arity" not in obj or "formula" not in obj:
        raise ValueError(f"expected a polyhedron object, got {obj!r}")
    arity = obj["arity"]
    if not isinstance(arity, int) or isinstance(arity, bool) or arity < 0:
        raise ValueError("polyhedron arity must be a nonnegative integer")
    return TropicalPolyhedron(arity, formula_from_json(obj["formula"]))


# ---------------------------------------------------------------------------
# Divisors and skeletons


def divisor_entry_from_json(field: ValuedField, obj: Any) -> tuple[Point, int]:
    if not isinstance(obj, dict) or "point" not in obj:
        raise ValueError(f"expected a divisor entry, got {obj!r}")
    mult = obj.get("mult", 1)
    if not isinstance(mult, int) or isinstance(mult, bool):
        raise ValueError("multiplicity must be an integer")
    return point_from_json(field, obj["point"]), mult


def divisor_lists_from_json(
    field: ValuedField, obj: Any
) -> tuple[list[tuple[Point, int]], list[tuple[Point, int]]]:
    if not isinstance(obj, dict):
        raise ValueError(f"expected a divisor object, got {obj!r}")
    zeros = obj.get("zeros", [])
    poles = obj.get("poles", [])
    if not isinstance(zeros, list) or not isinstance(poles, list):
        raise ValueError("divisor zeros and poles must be arrays")
    return (
        [divisor_entry_from_json(field, z) for z in zeros],
        [divisor_entry_from_json(field, p) for p in poles],
    )


def divisor_to_json(div: Divisor) -> dict:
    def rows(entries):
        return [
            {"point": point_to_json(div.field, p), "mult": m} for p, m in entries
        ]

    return {"zeros": rows(div.zeros), "poles": rows(div.poles)}


def skeleton_to_json(s: SkeletonPreimage) -> dict:
    return {"tree": tree_to_json(s.tree), "slopes": list(s.edge_slopes)}


def skeleton_from_json(field: ValuedField, obj: Any) -> SkeletonPreimage:
    if not isinstance(obj, dict) or "tree" not in obj or "slopes" not in obj:
        raise ValueError(f"expected a skeleton object, got {obj!r}")
    slopes = obj["slopes"]
    if not isinstance(slopes, list) or not all(
        isinstance(s, int) and not isinstance(s, bool) for s in slopes
    ):
        raise ValueError("skeleton slopes must be integers")
    return SkeletonPreimage(tree_from_json(field, obj["tree"]), tuple(slopes))


def error_to_json(exc: BerklineError) -> dict:
    return {
        "code": exc.code,
        "message": str(exc),
        "location": exc.location,
    }
