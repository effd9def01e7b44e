"""Max-plus analysis of absolute values.

Tropical evaluation of coefficient data, Newton-polygon breakpoints,
decomposition of max/min monomial expressions into piecewise monomial
functions, tropical polyhedra with exact membership, compactness and
dimension, and the skeleton preimage of a rational map on the
projective line described by its divisor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    DomainError,
    FieldMismatch,
    FormulaTooLarge,
    UnbalancedDivisor,
)
from .exactlp import (
    LinearConstraint,
    bounded_below,
    feasible,
    implicit_equality_rows,
    matrix_rank,
)
from .fields import Polynomial, ValuedField
from .points import Point, PointType
from .trees import Edge, FiniteSubtree, convex_hull
from .valmonoid import Interval, MonomialMap, Val, ZERO, val_max

DNF_ATOM_LIMIT = 10**4
STRATUM_ARITY_LIMIT = 16


# ---------------------------------------------------------------------------
# Tropical evaluation and Newton polygons


def trop_eval(
    terms: Iterable[tuple[Val, Sequence[int]]], radii: Sequence[Val]
) -> Val:
    """max over terms of coeff * prod(radii[i] ** exps[i]).

    A term with coefficient zero contributes the zero value without
    touching the radii, so its exponents are never applied to a zero
    base.  A zero radius under a negative exponent raises DomainError.
    """
    radii = tuple(radii)
    best: Val | None = None
    for coeff, exps in terms:
        exps = tuple(exps)
        if len(exps) != len(radii):
            raise DomainError("term arity does not match the radius vector")
        value = coeff
        if not coeff.is_zero:
            for r, e in zip(radii, exps):
                if e:
                    value = value * r**e
        best = value if best is None else val_max(best, value)
    if best is None:
        raise DomainError("tropical evaluation needs at least one term")
    return best


def _lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    hull: list[tuple[int, Fraction]] = []
    for x, y in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (y - y1) <= (y2 - y1) * (x - x1):
                hull.pop()
            else:
                break
        hull.append((x, y))
    return hull


def newton_breakpoints(poly: Polynomial) -> list[tuple[Fraction, int]]:
    """Slope breakpoints of r -> |P| on discs around zero.

    Returns (radius exponent, multiplicity) pairs in decreasing radius
    exponent: the lower convex hull of (index, coefficient valuation),
    one entry per hull segment, multiplicity its horizontal width.
    """
    if poly.arity != 1:
        raise DomainError("newton polygon needs a one-variable polynomial")
    field = poly.field
    pts = [
        (i, field.abs(c).exponent)
        for i, c in enumerate(poly.dense_coeffs())
        if not field.is_zero(c)
    ]
    if not pts:
        raise DomainError("the zero polynomial has no newton polygon")
    hull = _lower_hull(pts)
    out: list[tuple[Fraction, int]] = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        slope = Fraction(y2 - y1, x2 - x1)
        out.append((-slope, x2 - x1))
    return out


# ---------------------------------------------------------------------------
# Piecewise monomial functions of one variable


@dataclass(frozen=True)
class MaxExpr:
    parts: tuple["MonoExpr", ...]


@dataclass(frozen=True)
class MinExpr:
    parts: tuple["MonoExpr", ...]


MonoExpr = Union[MonomialMap, MaxExpr, MinExpr]


def eval_mono_expr(expr: MonoExpr, x: Val) -> Val:
    if isinstance(expr, MonomialMap):
        return expr(x)
    values = [eval_mono_expr(p, x) for p in expr.parts]
    if not values:
        raise DomainError("empty max/min expression")
    return max(values) if isinstance(expr, MaxExpr) else min(values)


def _mono_leaves(expr: MonoExpr) -> list[MonomialMap]:
    if isinstance(expr, MonomialMap):
        return [expr]
    out: list[MonomialMap] = []
    for p in expr.parts:
        for leaf in _mono_leaves(p):
            if leaf not in out:
                out.append(leaf)
    return out


@dataclass(frozen=True)
class PLFunction1D:
    """A piecewise monomial function given by closed cells of an interval.

    Consecutive cells share their boundary point and the adjacent
    pieces must agree there, so evaluation is unambiguous.
    """

    domain: Interval
    cells: tuple[Interval, ...]
    pieces: tuple[MonomialMap, ...]

    def __post_init__(self) -> None:
        if not self.cells or len(self.cells) != len(self.pieces):
            raise DomainError("cells and pieces must align and be nonempty")
        if self.cells[0].lo != self.domain.lo or self.cells[-1].hi != self.domain.hi:
            raise DomainError("cells do not cover the domain")
        for left, right in zip(self.cells, self.cells[1:]):
            if left.hi != right.lo:
                raise DomainError("cells must chain without gaps")
        for i, (left, right) in enumerate(zip(self.pieces, self.pieces[1:])):
            boundary = self.cells[i].hi
            if left(boundary) != right(boundary):
                raise DomainError("pieces disagree at a shared boundary")

    def __call__(self, x: Val) -> Val:
        if not self.domain.contains(x):
            raise DomainError("argument outside the domain")
        for cell, piece in zip(self.cells, self.pieces):
            if cell.contains(x):
                return piece(x)
        raise DomainError("argument outside every cell")

    def breakpoints(self) -> list[Val]:
        """Cell boundaries, ends included."""
        out = [self.cells[0].lo]
        for cell in self.cells:
            out.append(cell.hi)
        return out


def _interior_value(lo: Val, hi: Val) -> Val:
    if lo == hi:
        return lo
    if lo.is_zero:
        return Val.of(hi.exponent + 1)
    return Val.of(Fraction(lo.exponent + hi.exponent, 2))


def decompose_monomial(expr: MonoExpr, domain: Interval) -> PLFunction1D:
    """Split a max/min combination of monomials into monomial cells.

    Cells are cut at the crossing radii of monomial pairs inside the
    domain; on each closed cell the expression coincides with a single
    monomial, found by exact evaluation at an interior sample.
    """
    leaves = _mono_leaves(expr)
    cuts: set[Val] = set()
    for a, b in itertools.combinations(leaves, 2):
        if a.exponent == b.exponent:
            continue
        cross = (b.coeff.exponent - a.coeff.exponent) / (a.exponent - b.exponent)
        v = Val.of(cross)
        if domain.lo < v < domain.hi:
            cuts.add(v)
    bounds = [domain.lo]
    bounds.extend(sorted(cuts, key=lambda v: (0, -v.exponent)))
    bounds.append(domain.hi)
    cells: list[Interval] = []
    pieces: list[MonomialMap] = []
    for lo, hi in zip(bounds, bounds[1:]):
        sample = _interior_value(lo, hi)
        want = eval_mono_expr(expr, sample)
        piece = next(leaf for leaf in leaves if leaf(sample) == want)
        cells.append(
            Interval(
                lo,
                hi,
                lo_closed=domain.lo_closed if lo == domain.lo else True,
                hi_closed=domain.hi_closed if hi == domain.hi else True,
            )
        )
        pieces.append(piece)
    return PLFunction1D(domain, tuple(cells), tuple(pieces))


# ---------------------------------------------------------------------------
# Tropical polyhedra


@dataclass(frozen=True)
class Monomial:
    """coeff * x_1^e_1 ... x_n^e_n over the value monoid."""

    coeff: Val
    exps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "exps", tuple(int(e) for e in self.exps))

    def __call__(self, v: Sequence[Val]) -> Val:
        if self.coeff.is_zero:
            return ZERO
        out = self.coeff
        for x, e in zip(v, self.exps):
            if e:
                out = out * x**e
        return out


_OPS = ("lt", "le", "gt", "ge")


@dataclass(frozen=True)
class Atom:
    left: Monomial
    right: Monomial
    op: str

    def __post_init__(self) -> None:
        if self.op not in _OPS:
            raise DomainError(f"unknown comparison {self.op!r}")
        if len(self.left.exps) != len(self.right.exps):
            raise DomainError("atom sides have different arity")

    @property
    def strict(self) -> bool:
        return self.op in ("lt", "gt")

    def holds(self, v: Sequence[Val]) -> bool:
        a, b = self.left(v), self.right(v)
        if self.op == "lt":
            return a < b
        if self.op == "le":
            return a <= b
        if self.op == "gt":
            return b < a
        return b <= a


@dataclass(frozen=True)
class And:
    parts: tuple["Formula", ...]


@dataclass(frozen=True)
class Or:
    parts: tuple["Formula", ...]


Formula = Union[Atom, And, Or]


def _formula_arity(formula: Formula) -> int | None:
    if isinstance(formula, Atom):
        return len(formula.left.exps)
    for p in formula.parts:
        a = _formula_arity(p)
        if a is not None:
            return a
    return None


@dataclass(frozen=True)
class TropicalPolyhedron:
    """A subset of value-monoid vectors cut out by monomial comparisons."""

    arity: int
    formula: Formula

    def __post_init__(self) -> None:
        a = _formula_arity(self.formula)
        if a is not None and a != self.arity:
            raise DomainError("formula arity does not match the polyhedron")


def poly_member(poly: TropicalPolyhedron, v: Sequence[Val]) -> bool:
    """Exact membership through the boolean structure."""
    v = tuple(v)
    if len(v) != poly.arity:
        raise DomainError("vector arity does not match the polyhedron")

    def walk(node: Formula) -> bool:
        if isinstance(node, Atom):
            return node.holds(v)
        if isinstance(node, And):
            return all(walk(p) for p in node.parts)
        return any(walk(p) for p in node.parts)

    return walk(poly.formula)


def to_dnf(formula: Formula, cap: int = DNF_ATOM_LIMIT) -> list[tuple[Atom, ...]]:
    """Disjunctive normal form as a list of atom conjunctions."""

    def check(disjuncts: list[tuple[Atom, ...]]) -> list[tuple[Atom, ...]]:
        if sum(len(d) for d in disjuncts) > cap:
            raise FormulaTooLarge(
                f"normal form grew past {cap} atoms; raise the budget to proceed"
            )
        return disjuncts

    if isinstance(formula, Atom):
        return [(formula,)]
    if isinstance(formula, Or):
        out: list[tuple[Atom, ...]] = []
        for p in formula.parts:
            out.extend(to_dnf(p, cap))
            check(out)
        return out
    combined: list[tuple[Atom, ...]] = [()]
    for p in formula.parts:
        branch = to_dnf(p, cap)
        merged = []
        for left in combined:
            for right in branch:
                row = list(left)
                for atom in right:
                    if atom not in row:
                        row.append(atom)
                merged.append(tuple(row))
        combined = check(merged)
    return combined


def _monomial_on_stratum(
    mono: Monomial, support: tuple[int, ...]
) -> tuple[Fraction, tuple[int, ...]] | str | None:
    """Restrict a monomial to a support stratum.

    Returns None when the value is identically zero there, the string
    "undefined" when a negative exponent meets a zero coordinate, and
    otherwise (coefficient exponent, exponents over the support).
    """
    if mono.coeff.is_zero:
        return None
    kept = []
    for i, e in enumerate(mono.exps):
        if i in support:
            kept.append(e)
        elif e < 0:
            return "undefined"
        elif e > 0:
            return None
    return (mono.coeff.exponent, tuple(kept))


def _atom_on_stratum(
    atom: Atom, support: tuple[int, ...]
) -> LinearConstraint | bool:
    """Translate an atom into exponent coordinates on one stratum.

    True and False mean the atom holds or fails identically there; a
    negative exponent on a zero coordinate counts as failing, since such
    points are outside the atom's domain.
    """
    left = _monomial_on_stratum(atom.left, support)
    right = _monomial_on_stratum(atom.right, support)
    if left == "undefined" or right == "undefined":
        return False
    if left is None and right is None:
        return not atom.strict
    if left is None:
        return atom.op in ("lt", "le")
    if right is None:
        return atom.op in ("gt", "ge")
    (ea, es), (eb, fs) = left, right
    if atom.op in ("lt", "le"):
        coeffs = tuple(Fraction(e - f) for e, f in zip(es, fs))
        rhs = eb - ea
    else:
        coeffs = tuple(Fraction(f - e) for e, f in zip(es, fs))
        rhs = ea - eb
    return LinearConstraint(coeffs, Fraction(rhs), atom.strict)


def _strata(arity: int) -> Iterable[tuple[int, ...]]:
    if arity > STRATUM_ARITY_LIMIT:
        raise DomainError("polyhedron arity too large for stratification")
    indices = tuple(range(arity))
    for size in range(arity + 1):
        yield from itertools.combinations(indices, size)


def _stratum_rows(
    disjunct: tuple[Atom, ...], support: tuple[int, ...]
) -> list[LinearConstraint] | None:
    """Linear rows of a disjunct on a stratum; None when it dies there."""
    rows: list[LinearConstraint] = []
    for atom in disjunct:
        t = _atom_on_stratum(atom, support)
        if t is False:
            return None
        if t is True:
            continue
        rows.append(t)
    return rows


def is_def_compact(poly: TropicalPolyhedron, cap: int = DNF_ATOM_LIMIT) -> bool:
    """Closed and bounded, read off the normal form.

    Every disjunct must be free of strict comparisons, and on every
    support stratum the feasible exponents must be bounded below in each
    coordinate (values bounded above, so the set fits inside a box).
    """
    for disjunct in to_dnf(poly.formula, cap):
        if any(atom.strict for atom in disjunct):
            return False
        for support in _strata(poly.arity):
            rows = _stratum_rows(disjunct, support)
            if rows is None:
                continue
            m = len(support)
            if not feasible(rows, m):
                continue
            for col in range(m):
                if not bounded_below(rows, m, col):
                    return False
    return True


def poly_dimension_report(
    poly: TropicalPolyhedron, cap: int = DNF_ATOM_LIMIT
) -> tuple[int | float, list[str]]:
    """Dimension plus caveat tags for the pieces attaining it.

    The dimension of a piece on a stratum is the stratum size minus the
    rank of its implicit equalities; the reported caveats flag maxima
    attained only on strict pieces or proper zero strata, where the
    polyhedral count rests on the relative-interior convention.
    """
    best: int | float = -math.inf
    caveats: set[str] = set()
    for disjunct in to_dnf(poly.formula, cap):
        has_strict = any(atom.strict for atom in disjunct)
        for support in _strata(poly.arity):
            rows = _stratum_rows(disjunct, support)
            if rows is None:
                continue
            m = len(support)
            if not feasible(rows, m):
                continue
            eq_rows = implicit_equality_rows(rows, m)
            dim = m - matrix_rank([r.coeffs for r in eq_rows], m)
            tags = set()
            if has_strict:
                tags.add("strict-inequalities")
            if m < poly.arity:
                tags.add("zero-stratum")
            if dim > best:
                best = dim
                caveats = tags
            elif dim == best:
                caveats &= tags
    if best == -math.inf:
        return best, []
    return best, sorted(caveats)


def poly_dimension(poly: TropicalPolyhedron, cap: int = DNF_ATOM_LIMIT) -> int | float:
    """Maximal affine-hull dimension over the nonempty pieces.

    Negative infinity for the empty set.
    """
    return poly_dimension_report(poly, cap)[0]


# ---------------------------------------------------------------------------
# Divisors and skeleton preimages


@dataclass(frozen=True)
class Divisor:
    """Zeros and poles of a rational map, with multiplicities."""

    field: ValuedField
    zeros: tuple[tuple[Point, int], ...]
    poles: tuple[tuple[Point, int], ...]

    def __post_init__(self) -> None:
        for point, mult in self.zeros + self.poles:
            if point.field != self.field:
                raise FieldMismatch("divisor point over a different field")
            if point.point_type is not PointType.TYPE1:
                raise DomainError("divisor points must be simple or infinity")
            if not isinstance(mult, int) or mult <= 0:
                raise DomainError("multiplicities must be positive integers")

    @property
    def is_balanced(self) -> bool:
        return sum(m for _, m in self.zeros) == sum(m for _, m in self.poles)

    def support(self) -> list[Point]:
        return [p for p, _ in self.zeros + self.poles]


def divisor(
    field: ValuedField,
    zeros: Iterable[tuple[Point, int]],
    poles: Iterable[tuple[Point, int]],
) -> Divisor:
    return Divisor(field, tuple(zeros), tuple(poles))


def _in_chart_ball(
    field: ValuedField, point: Point, center, radius: Val, flipped: bool
) -> bool:
    """Whether a type-1 point lies in a closed ball of the given chart."""
    if not flipped:
        if point.infinite:
            return False
        return field.dist(point.center, center) <= radius
    if point.infinite:
        w = field.zero()
    elif field.is_zero(point.center):
        return False
    else:
        w = field.inv(point.center)
    return field.dist(w, center) <= radius


def ball_count(div: Divisor, center, radius: Val, flipped: bool = False) -> int:
    """Zeros minus poles, with multiplicity, inside one chart ball."""
    total = 0
    for sign, entries in ((1, div.zeros), (-1, div.poles)):
        for point, mult in entries:
            if _in_chart_ball(div.field, point, center, radius, flipped):
                total += sign * mult
    return total


def local_constancy(div: Divisor, x: Point) -> int:
    """Slope of |f| in the radius direction at a disc point.

    Zero exactly when |f| is locally constant there.  Simple points and
    infinity have no two-sided radius direction and are rejected.
    """
    if x.field != div.field:
        raise FieldMismatch("point and divisor live over different fields")
    if x.point_type is not PointType.TYPE2:
        raise DomainError("local constancy needs a disc point")
    return ball_count(div, x.center, x.radius)


@dataclass(frozen=True)
class SkeletonPreimage:
    """A subtree with an integer slope of |f| recorded on every edge."""

    tree: FiniteSubtree
    edge_slopes: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.edge_slopes) != len(self.tree.edges):
            raise DomainError("one slope per edge is required")
        for s in self.edge_slopes:
            if not isinstance(s, int):
                raise DomainError("edge slopes must be integers")


def skeleton_preimage(
    zeros: Iterable[tuple[Point, int]], poles: Iterable[tuple[Point, int]]
) -> SkeletonPreimage:
    """Locus where |f| is not locally constant, for f with this divisor.

    The hull of the divisor support carries a slope on every edge: the
    count of zeros minus poles in a ball at an interior radius, taken in
    the edge's own chart.  Edges of slope zero are discarded, so the
    result can be a disconnected union of arcs.
    """
    zeros = tuple(zeros)
    poles = tuple(poles)
    if not zeros and not poles:
        raise DomainError("empty divisor determines no skeleton")
    field = (zeros + poles)[0][0].field
    div = Divisor(field, zeros, poles)
    if not div.is_balanced:
        raise UnbalancedDivisor("zero and pole multiplicities must agree")
    tree = convex_hull(div.support())
    kept_edges: list[Edge] = []
    kept_slopes: list[int] = []
    for edge in tree.edges:
        slope = ball_count(div, edge.center, edge.interior_radius(), edge.flipped)
        if slope != 0:
            kept_edges.append(edge)
            kept_slopes.append(slope)
    probe = FiniteSubtree(field, (), tuple(kept_edges), ())
    kept_vertices = tuple(v for v in tree.vertices if probe.contains(v))
    pruned = FiniteSubtree(field, kept_vertices, tuple(kept_edges), ())
    return SkeletonPreimage(pruned, tuple(kept_slopes))


def immersion_check(skeleton: SkeletonPreimage) -> bool:
    """True when every edge carries a nonzero slope."""
    return all(s != 0 for s in skeleton.edge_slopes)
