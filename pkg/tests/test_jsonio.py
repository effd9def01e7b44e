from fractions import Fraction

import pytest

from berkline import (
    ONE,
    ZERO,
    And,
    Atom,
    Interval,
    MaxExpr,
    Monomial,
    MonomialMap,
    Or,
    PAdicField,
    TropicalPolyhedron,
    UltrametricTable,
    Val,
    convex_hull,
    disc,
    divisor,
    infinity,
    simple_point,
)
from berkline import jsonio


def test_fraction_codec():
    assert jsonio.frac_to_str(Fraction(5, 2)) == "5/2"
    assert jsonio.frac_from_json("5/2") == Fraction(5, 2)
    assert jsonio.frac_from_json("-3") == Fraction(-3)
    assert jsonio.frac_from_json(4) == Fraction(4)
    with pytest.raises(ValueError):
        jsonio.frac_from_json("x")
    with pytest.raises(ValueError):
        jsonio.frac_from_json(1.5)


def test_val_codec():
    assert jsonio.val_to_json(ZERO) == {"zero": True}
    assert jsonio.val_to_json(Val.of(Fraction(3, 2))) == {"e": "3/2"}
    assert jsonio.val_from_json({"zero": True}) == ZERO
    assert jsonio.val_from_json({"e": "3/2"}) == Val.of(Fraction(3, 2))
    assert jsonio.val_from_json("inf") == ZERO
    for bad in ({}, {"e": "x"}, {"zero": False}, 3, "nope"):
        with pytest.raises(ValueError):
            jsonio.val_from_json(bad)


def test_field_codec_round_trip(q3, qt, f5t):
    for field in (q3, qt, f5t):
        assert jsonio.field_from_json(jsonio.field_to_json(field)) == field
    table = UltrametricTable(
        ("a", "b"),
        ((ZERO, Val.of(1)), (Val.of(1), ZERO)),
    )
    again = jsonio.field_from_json(jsonio.field_to_json(table))
    assert again.labels == table.labels
    assert again.dist("a", "b") == Val.of(1)
    with pytest.raises(ValueError):
        jsonio.field_from_json({"field": "complex"})


def test_point_codec(q3):
    pts = [
        simple_point(q3, Fraction(2, 3)),
        disc(q3, Fraction(4), Val.of(Fraction(5, 2))),
        infinity(q3),
    ]
    for p in pts:
        assert jsonio.point_from_json(q3, jsonio.point_to_json(q3, p)) == p
    assert jsonio.point_to_json(q3, pts[1]) == {"center": "4/1", "radius": {"e": "5/2"}}
    assert jsonio.point_to_json(q3, pts[2]) == {"inf": True}
    # A missing radius means a simple point.
    assert jsonio.point_from_json(q3, {"center": "7"}) == simple_point(q3, Fraction(7))
    with pytest.raises(ValueError):
        jsonio.point_from_json(q3, {"radius": {"zero": True}})


def test_tree_codec(q3):
    tree = convex_hull(
        [simple_point(q3, Fraction(0)), simple_point(q3, Fraction(3)), infinity(q3)]
    )
    blob = jsonio.tree_to_json(tree)
    charts = {e["chart"] for e in blob["edges"]}
    assert charts == {"unit", "inverted"}
    again = jsonio.tree_from_json(q3, blob)
    assert again.validate() == []
    assert len(again.edges) == len(tree.edges)
    assert len(again.vertices) == len(tree.vertices)
    with pytest.raises(ValueError):
        jsonio.tree_from_json(q3, "not a tree")
    with pytest.raises(ValueError):
        jsonio.tree_from_json(q3, {"edges": [7]})


def test_tree_dot_output(q3):
    tree = convex_hull([simple_point(q3, Fraction(0)), infinity(q3)])
    dot = jsonio.tree_to_dot(tree, edge_labels=["a", "b"])
    assert dot.startswith("graph tree {")
    assert dot.rstrip().endswith("}")
    assert "inverted" in dot
    assert 'label="' in dot


def test_mono_expr_codec():
    expr = MaxExpr(
        (MonomialMap(ONE, Fraction(1)), MonomialMap(Val.of(1), Fraction(0)))
    )
    blob = jsonio.mono_expr_to_json(expr)
    assert blob == {
        "max": [
            {"coeff": {"e": "0/1"}, "exponent": "1/1"},
            {"coeff": {"e": "1/1"}, "exponent": "0/1"},
        ]
    }
    again = jsonio.mono_expr_from_json(blob)
    assert again == expr
    with pytest.raises(ValueError):
        jsonio.mono_expr_from_json({"avg": []})


def test_formula_codec():
    x = Monomial(ONE, (1, 0))
    y = Monomial(ONE, (0, 1))
    formula = Or((And((Atom(x, y, "le"),)), Atom(x, y, "gt")))
    poly = TropicalPolyhedron(2, formula)
    blob = jsonio.polyhedron_to_json(poly)
    again = jsonio.polyhedron_from_json(blob)
    assert again == poly
    with pytest.raises(ValueError):
        jsonio.formula_from_json({"op": "xor", "left": {}, "right": {}})


def test_divisor_codec(q3):
    div = divisor(
        q3,
        [(simple_point(q3, Fraction(0)), 2)],
        [(infinity(q3), 1), (simple_point(q3, Fraction(1)), 1)],
    )
    blob = jsonio.divisor_to_json(div)
    zeros, poles = jsonio.divisor_lists_from_json(q3, blob)
    assert list(div.zeros) == zeros
    assert list(div.poles) == poles
    with pytest.raises(ValueError):
        jsonio.divisor_entry_from_json(q3, {"point": {"inf": True}, "mult": "two"})


def test_error_codec():
    from berkline import MalformedTree

    blob = jsonio.error_to_json(MalformedTree("broken", location="x"))
    assert blob == {"code": "malformed-tree", "message": "broken", "location": "x"}
