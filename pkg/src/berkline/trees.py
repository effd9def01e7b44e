"""Finite subtrees of the line: convex hulls, entry times, retractions.

A subtree is stored as vertices plus edges, where an edge is the set
of balls around one center with radii in a closed range.  Edges are
kept chartwise: an edge either lives in the closed unit-disc chart
directly, or is recorded through its image under T -> 1/T (flipped).
Arcs produced by hulls are split at the chart boundary, so a flipped
edge with lower radius zero is exactly an edge reaching infinity.

The standard contraction flows a ball of radius r at time t to the
ball of radius max(t, r) around the same center, inside the point's
own chart; time runs over values from zero (identity) to the unit
value (everything at the Gauss point).  Retraction onto a subtree
follows the contraction until the trajectory first enters the tree,
then freezes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import DomainError, FieldMismatch, MalformedTree, Unsupported
from .fields import ValuedField
from .points import (
    Point,
    disc,
    gauss_point,
    infinity,
    invert,
    join,
    simple_point,
    to_unit_chart,
    unit_abs,
)
from .valmonoid import Val, ZERO, ONE, val_max, val_min


@dataclass(frozen=True)
class Edge:
    """Balls around ``center`` with radii in [lo; hi], possibly flipped.

    A flipped edge denotes the image of that set under T -> 1/T; its
    data lives in the unit chart of the flipped coordinate.
    """

    center: Any
    lo: Val
    hi: Val
    flipped: bool = False

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise DomainError("edge radii out of order")

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def interior_radius(self) -> Val:
        """Some radius strictly between the ends of a nondegenerate edge."""
        if self.is_degenerate:
            raise DomainError("degenerate edge has no interior")
        if self.lo.is_zero:
            return Val.of(self.hi.exponent + 1)
        return Val.of(Fraction(self.lo.exponent + self.hi.exponent, 2))


@dataclass(frozen=True)
class FiniteSubtree:
    """Vertices and chartwise edges of a finite subtree."""

    field: ValuedField
    vertices: tuple[Point, ...]
    edges: tuple[Edge, ...]
    generators: tuple[Point, ...] = ()

    def edge_point(self, edge: Edge, radius: Val) -> Point:
        """The point of an edge at a given chart radius, in direct form."""
        p = disc(self.field, edge.center, radius)
        return invert(p) if edge.flipped else p

    def contains(self, x: Point) -> bool:
        """Membership test: on some edge, or equal to some vertex."""
        if x.field != self.field:
            raise FieldMismatch("point and tree live over different fields")
        for edge in self.edges:
            if edge.flipped:
                z = invert(x)
            else:
                z = x
            if z.infinite:
                continue
            if edge.lo <= z.radius <= edge.hi:
                if self.field.dist(z.center, edge.center) <= z.radius:
                    return True
        return any(v == x for v in self.vertices)

    def validate(self) -> list[str]:
        """Structural checks; returns human-readable problems, [] if clean."""
        problems: list[str] = []
        field = self.field
        for edge in self.edges:
            if edge.is_degenerate:
                problems.append(f"degenerate edge at {edge.center!r}")
            if field.arithmetic:
                top = val_max(field.abs(edge.center), edge.hi)
                if not top <= ONE:
                    problems.append(f"edge at {edge.center!r} leaves its chart")
        for i, e1 in enumerate(self.edges):
            for e2 in self.edges[i + 1 :]:
                bad = self._overlap_problem(e1, e2)
                if bad:
                    problems.append(bad)
        problems.extend(self._connectivity_problems())
        return problems

    def _edges_in_common_chart(self, e1: Edge, e2: Edge) -> tuple[Edge, Edge] | None:
        if e1.flipped == e2.flipped:
            return (e1, e2)
        if not self.field.arithmetic:
            return None
        # An edge whose center has absolute value one reads the same in
        # both charts, with the center inverted.
        for a, b in ((e1, e2), (e2, e1)):
            if self.field.abs(b.center) == ONE:
                moved = Edge(self.field.inv(b.center), b.lo, b.hi, a.flipped)
                return (a, moved) if a is e1 else (moved, a)
        return None

    def _overlap_problem(self, e1: Edge, e2: Edge) -> str | None:
        pair = self._edges_in_common_chart(e1, e2)
        if pair is None:
            return None
        a, b = pair
        d = self.field.dist(a.center, b.center)
        lo = val_max(a.lo, b.lo, d)
        hi = val_min(a.hi, b.hi)
        if hi < lo:
            return None
        if lo != hi:
            return f"edges around {a.center!r} and {b.center!r} overlap in an arc"
        meeting = self.edge_point(a, lo)
        if not any(v == meeting for v in self.vertices):
            return f"edges meet at a non-vertex point ({a.center!r} at {lo})"
        return None

    def _connectivity_problems(self) -> list[str]:
        if not self.vertices:
            return ["tree has no vertices"]
        parent = list(range(len(self.vertices)))

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        def union(i: int, j: int) -> None:
            parent[find(i)] = find(j)

        def vertex_index(p: Point) -> int | None:
            for i, v in enumerate(self.vertices):
                if v == p:
                    return i
            return None

        problems = []
        for edge in self.edges:
            ends = [self.edge_point(edge, edge.lo), self.edge_point(edge, edge.hi)]
            idx = [vertex_index(p) for p in ends]
            if idx[0] is None or idx[1] is None:
                problems.append(f"edge endpoint not a vertex at {edge.center!r}")
                continue
            union(idx[0], idx[1])
        roots = {find(i) for i in range(len(self.vertices))}
        if len(roots) > 1:
            problems.append("tree is not connected")
        return problems


def _val_sort_key(v: Val) -> tuple:
    return (0, Fraction(0)) if v.is_zero else (1, -v.exponent)


def _edge_sort_key(field: ValuedField, edge: Edge) -> tuple:
    import json

    center = json.dumps(field.to_json(edge.center), sort_keys=True)
    return (edge.flipped, center, _val_sort_key(edge.lo), _val_sort_key(edge.hi))


def convex_hull(points: Sequence[Point], include_gauss: bool = False) -> FiniteSubtree:
    """Smallest subtree containing the given points.

    Pairwise joins become vertices; arcs are split at vertices and at
    chart boundaries.  ``include_gauss`` adds the Gauss point to the
    generators (fields with arithmetic only).
    """
    if not points:
        raise DomainError("hull of no points")
    field = points[0].field
    for p in points[1:]:
        if p.field != field:
            raise FieldMismatch("hull generators live over different fields")
    gens: list[Point] = []
    for p in points:
        if not any(q == p for q in gens):
            gens.append(p)
    if include_gauss:
        if not field.arithmetic:
            raise Unsupported("tables have no Gauss point")
        g = gauss_point(field)
        if not any(q == g for q in gens):
            gens.append(g)
    has_inf = any(p.infinite for p in gens)
    if has_inf and not field.arithmetic:
        raise Unsupported("tables have no point at infinity")
    finite = [p for p in gens if not p.infinite]
    if not finite:
        return FiniteSubtree(field, (infinity(field),), (), tuple(gens))

    centers = [p.center for p in finite]
    radii = [p.radius for p in finite]
    n = len(finite)

    def join_radius(i: int, j: int) -> Val:
        return val_max(radii[i], radii[j], field.dist(centers[i], centers[j]))

    # Deduplicated arcs in direct coordinates: (center index, lo, hi),
    # hi None meaning unbounded (a spine reaching infinity).
    arcs: list[tuple[int, Val, Val | None]] = []
    top0: Val | None
    if has_inf:
        top0 = None
    else:
        top0 = radii[0]
        for j in range(n):
            top0 = val_max(top0, join_radius(0, j))
    if top0 is None or radii[0] < top0:
        arcs.append((0, radii[0], top0))
    for i in range(1, n):
        merge = None
        for j in range(i):
            m = val_max(field.dist(centers[i], centers[j]), radii[j])
            merge = m if merge is None else val_min(merge, m)
        if radii[i] < merge:
            arcs.append((i, radii[i], merge))

    # Vertices: generators, pairwise joins, plus chart-split points.
    vertices: list[Point] = []

    def add_vertex(p: Point) -> None:
        if not any(v == p for v in vertices):
            vertices.append(p)

    for p in gens:
        add_vertex(p)
    for i in range(n):
        for j in range(i + 1, n):
            add_vertex(disc(field, centers[i], join_radius(i, j)))

    # Split arcs at every vertex radius they pass through.
    split_arcs: list[tuple[int, Val, Val | None]] = []
    for (i, lo, hi) in arcs:
        cuts = {lo}
        if hi is not None:
            cuts.add(hi)
        for v in vertices:
            if v.infinite:
                continue
            r = v.radius
            if lo < r and (hi is None or r < hi):
                if field.dist(v.center, centers[i]) <= r:
                    cuts.add(r)
        ordered = sorted(cuts, key=_val_sort_key)
        for a, b in zip(ordered, ordered[1:]):
            split_arcs.append((i, a, b))
        if hi is None:
            top = ordered[-1] if ordered else lo
            split_arcs.append((i, top, None))

    # Chartwise conversion.
    edges: list[Edge] = []

    def add_edge(edge: Edge) -> None:
        if not edge.is_degenerate:
            edges.append(edge)

    def unbounded_inv(v: Val | None) -> Val:
        return ZERO if v is None else v ** -1

    for (i, lo, hi) in split_arcs:
        c = centers[i]
        if not field.arithmetic:
            if hi is None:
                raise Unsupported("tables have no point at infinity")
            add_edge(Edge(c, lo, hi))
            continue
        cabs = field.abs(c)
        if cabs <= ONE:
            direct_top = hi if (hi is not None and hi <= ONE) else ONE
            if lo <= ONE:
                if lo < direct_top:
                    add_edge(Edge(c, lo, direct_top))
            if hi is None or ONE < hi:
                start = val_max(lo, ONE)
                add_edge(
                    Edge(field.zero(), unbounded_inv(hi), start ** -1, flipped=True)
                )
                add_vertex(disc(field, c, start) if start != ONE else gauss_point(field))
        else:
            scale = cabs ** -2
            below_top = hi if (hi is not None and hi <= cabs) else cabs
            if lo < below_top:
                add_edge(
                    Edge(field.inv(c), lo * scale, below_top * scale, flipped=True)
                )
            if hi is None or cabs < hi:
                start = val_max(lo, cabs)
                add_edge(
                    Edge(field.zero(), unbounded_inv(hi), start ** -1, flipped=True)
                )
            if lo < cabs and (hi is None or cabs < hi):
                add_vertex(disc(field, c, cabs))

    edges.sort(key=lambda e: _edge_sort_key(field, e))
    return FiniteSubtree(field, tuple(vertices), tuple(edges), tuple(gens))


def contract(time: Val, x: Point) -> Point:
    """The standard contraction toward the Gauss point at a given time.

    Time is a value in [zero; one]: zero is the identity, one sends
    everything to the Gauss point.  Inside the unit chart a ball grows
    to radius max(time, r); other points are handled through T -> 1/T.
    On a table field the growth formula is applied directly.
    """
    _check_time(time)
    field = x.field
    if not field.arithmetic:
        return disc(field, x.center, val_max(time, x.radius))
    center, r, flipped = to_unit_chart(x)
    moved = disc(field, center, val_max(time, r))
    return invert(moved) if flipped else moved


def _check_time(time: Val) -> None:
    if not time <= ONE:
        raise DomainError("time must lie between the zero value and one")


def entry_time(tree: FiniteSubtree, x: Point) -> Val:
    """First radius at which the contraction trajectory of x meets the tree.

    The radius is reported in the chart of x (flipped for points
    outside the unit disc).  Equals radius(x) exactly when x is already
    on the tree.  Raises MalformedTree when the trajectory never meets
    the tree; a tree containing the Gauss point always catches it.
    """
    field = tree.field
    if x.field != field:
        raise FieldMismatch("point and tree live over different fields")
    center, r, flipped = to_unit_chart(x)
    # The trajectory radius is max(time, r) with time <= one, so it
    # sweeps [r; max(r, one)] and nothing beyond.
    cap = val_max(r, ONE)
    candidates: list[Val] = []

    for edge in tree.edges:
        moved = _edge_in_chart(field, edge, flipped)
        if moved is None:
            continue
        cand = val_max(r, moved.lo, field.dist(center, moved.center))
        if cand <= moved.hi and cand <= cap:
            candidates.append(cand)

    for v in tree.vertices:
        if v.infinite:
            continue
        if field.arithmetic:
            w = invert(v) if flipped else v
            if w.infinite or not unit_abs(w) <= ONE:
                continue
        else:
            w = v
        if r <= w.radius <= cap and field.dist(center, w.center) <= w.radius:
            candidates.append(w.radius)

    if field.arithmetic and tree.contains(gauss_point(field)):
        candidates.append(val_max(r, ONE))

    if not candidates:
        raise MalformedTree("the contraction trajectory never meets the tree")
    return val_min(*candidates)


def _edge_in_chart(field: ValuedField, edge: Edge, flipped: bool) -> Edge | None:
    """Rewrite an edge in the requested chart, when it fully converts."""
    if edge.flipped == flipped:
        return edge
    if not field.arithmetic:
        return None
    if field.abs(edge.center) == ONE:
        return Edge(field.inv(edge.center), edge.lo, edge.hi, flipped)
    return None


def retract(tree: FiniteSubtree, time: Val, x: Point) -> Point:
    """Contraction stopped at the tree: flow until entry, then freeze."""
    _check_time(time)
    stop = entry_time(tree, x)
    field = tree.field
    center, r, flipped = to_unit_chart(x)
    radius = val_min(val_max(time, r), stop)
    moved = disc(field, center, radius)
    return invert(moved) if flipped else moved
