"""Points of the projective line over a valued field, in the ball model.

A finite point is a closed ball: a center from the field and a radius
from the value monoid.  Radius zero gives the classical (simple)
points; a nonzero radius gives the generic point of the ball, i.e. the
multiplicative seminorm sending a polynomial sum a_i (T - c)^i to
max |a_i| r^i.  The point at infinity is kept as a separate marker.

Two balls describe the same point exactly when they have equal radius
and the centers differ by at most that radius; all equality here is
this semantic test, never structural comparison.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Sequence

from .errors import (
    DomainError,
    FieldMismatch,
    IndeterminateError,
    PoleError,
    Unsupported,
)
from .fields import Polynomial, ValuedField, taylor_shift
from .valmonoid import (
    GeneralizedSegment,
    Piece,
    Val,
    ZERO,
    ONE,
    val_max,
    val_min,
)


class PointType(enum.Enum):
    TYPE1 = 1
    TYPE2 = 2


@dataclass(frozen=True, eq=False)
class Point:
    """A point of the line: a closed ball, or the point at infinity."""

    field: ValuedField
    center: Any = None
    radius: Val | None = None
    infinite: bool = False

    def __post_init__(self) -> None:
        if self.infinite:
            if self.center is not None or self.radius is not None:
                raise DomainError("the point at infinity carries no ball data")
        elif self.radius is None:
            raise DomainError("a finite point needs a radius")

    # Semantic equality: same ball, or both infinite.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Point):
            return NotImplemented
        return points_equal(self, other)

    @property
    def is_simple(self) -> bool:
        return not self.infinite and self.radius.is_zero

    @property
    def point_type(self) -> PointType:
        if self.infinite or self.radius.is_zero:
            return PointType.TYPE1
        return PointType.TYPE2

    def __str__(self) -> str:
        if self.infinite:
            return "inf"
        c = self.field.to_json(self.center)
        return f"ball({c}; {self.radius})"

    __repr__ = __str__


def disc(field: ValuedField, center: Any, radius: Val) -> Point:
    return Point(field, center, radius)


def simple_point(field: ValuedField, center: Any) -> Point:
    return Point(field, center, ZERO)


def infinity(field: ValuedField) -> Point:
    return Point(field, infinite=True)


def gauss_point(field: ValuedField) -> Point:
    """The unit ball around 0; needs a field with arithmetic."""
    return Point(field, field.zero(), ONE)


def _same_field(x: Point, y: Point) -> ValuedField:
    if x.field != y.field:
        raise FieldMismatch("points live over different fields")
    return x.field


def points_equal(x: Point, y: Point) -> bool:
    _same_field(x, y)
    if x.infinite or y.infinite:
        return x.infinite and y.infinite
    if x.radius != y.radius:
        return False
    return x.field.dist(x.center, y.center) <= x.radius


def point_leq(x: Point, y: Point) -> bool:
    """Ball containment: x <= y iff the ball of x sits inside the ball of y."""
    _same_field(x, y)
    if x.infinite or y.infinite:
        raise DomainError("containment is defined between finite balls only")
    return x.radius <= y.radius and x.field.dist(x.center, y.center) <= y.radius


def join(x: Point, y: Point) -> Point:
    """Least ball containing both; infinity joined with anything is infinity."""
    field = _same_field(x, y)
    if x.infinite or y.infinite:
        return infinity(field)
    r = val_max(x.radius, y.radius, field.dist(x.center, y.center))
    return disc(field, x.center, r)


def tree_distance(x: Point, y: Point) -> Fraction | float:
    """Additive path length between two branch (type 2) points.

    Simple points and infinity sit at infinite distance; math.inf
    signals that.
    """
    _same_field(x, y)
    if x.point_type is not PointType.TYPE2 or y.point_type is not PointType.TYPE2:
        return math.inf
    top = join(x, y)
    j = top.radius.exponent
    return (x.radius.exponent - j) + (y.radius.exponent - j)


def norm(x: Point, poly: Polynomial) -> Val:
    """Seminorm of a one-variable polynomial at a finite point.

    Shifts the polynomial to the center and takes max |b_i| r^i; on the
    zero polynomial the answer is the zero value.
    """
    if x.infinite:
        raise DomainError("polynomial seminorm at infinity needs a rational form")
    field = x.field
    if not field.arithmetic:
        raise Unsupported("Gauss evaluation needs a field with arithmetic")
    if poly.field != field:
        raise FieldMismatch("polynomial is over a different field")
    shifted = taylor_shift(poly, x.center)
    best = ZERO
    power = ONE
    for coeff in shifted:
        term = field.abs(coeff) * power
        if best < term:
            best = term
        power = power * x.radius
        if power.is_zero and x.radius.is_zero:
            # Only the constant term survives at a simple point.
            break
    return best


def norm_multi(field: ValuedField, radii: Sequence[Val], poly: Polynomial) -> Val:
    """Seminorm at the product point with the given nonzero radii.

    Sends sum a_I T^I to max |a_I| * prod radii^I.
    """
    if not field.arithmetic:
        raise Unsupported("Gauss evaluation needs a field with arithmetic")
    if poly.field != field:
        raise FieldMismatch("polynomial is over a different field")
    if len(radii) != poly.arity:
        raise DomainError("radius tuple does not match polynomial arity")
    if any(r.is_zero for r in radii):
        raise DomainError("multivariate Gauss norms need nonzero radii")
    best = ZERO
    for exps, coeff in poly.terms.items():
        term = field.abs(coeff)
        for r, e in zip(radii, exps):
            term = term * (r ** e)
        if best < term:
            best = term
    return best


def _reversed_coeffs(poly: Polynomial, length: int) -> Polynomial:
    """Coefficients read backwards, padded to the given length."""
    coeffs = poly.dense_coeffs()
    coeffs = coeffs + [poly.field.zero()] * (length - len(coeffs))
    return Polynomial.from_coeffs(poly.field, list(reversed(coeffs)))


def norm_rational(x: Point, num: Polynomial, den: Polynomial) -> Val:
    """Value of |num/den| at a point, including the point at infinity.

    Raises PoleError at a pole and IndeterminateError where numerator
    and denominator both vanish (possible only at simple points).
    """
    if num.field != den.field:
        raise FieldMismatch("numerator and denominator over different fields")
    if den.is_zero:
        raise DomainError("zero denominator")
    if x.infinite:
        m = max(num.degree(), den.degree(), 0) + 1
        return norm_rational(
            simple_point(x.field, x.field.zero()),
            _reversed_coeffs(num, m),
            _reversed_coeffs(den, m),
        )
    top = norm(x, num)
    bot = norm(x, den)
    if bot.is_zero:
        if top.is_zero:
            raise IndeterminateError("numerator and denominator both vanish here")
        raise PoleError("the point is a pole of the rational function")
    return top / bot


# The evaluation maps under their classical names: these are the Gauss
# valuations of the ball model, and callers coming from that side of
# the literature expect to find them spelled this way.
gauss_eval = norm
gauss_eval_nd = norm_multi
rational_eval = norm_rational


def unit_abs(x: Point) -> Val | None:
    """|T| at the point: max(|center|, radius); None encodes infinity."""
    if x.infinite:
        return None
    return val_max(x.field.abs(x.center), x.radius)


def invert(x: Point) -> Point:
    """Image of the point under the coordinate flip T -> 1/T.

    An involution on the whole line; needs field arithmetic.
    """
    field = x.field
    if not field.arithmetic:
        raise Unsupported("inversion needs a field with arithmetic")
    if x.infinite:
        return simple_point(field, field.zero())
    center_abs = field.abs(x.center)
    if x.radius.is_zero:
        if field.is_zero(x.center):
            return infinity(field)
        return simple_point(field, field.inv(x.center))
    if center_abs > x.radius:
        # 0 lies outside the ball: balls map to balls.
        new_radius = x.radius * (center_abs ** -2)
        return disc(field, field.inv(x.center), new_radius)
    # 0 lies inside: the generic point flips to radius 1/r around 0.
    return disc(field, field.zero(), x.radius ** -1)


def in_unit_chart(x: Point) -> bool:
    """True when the point belongs to the closed unit-disc chart."""
    t = unit_abs(x)
    return t is not None and t <= ONE


def to_unit_chart(x: Point) -> tuple[Any, Val, bool]:
    """Coordinates (center, radius, flipped) with |T| <= 1 after flipping.

    Points already in the unit chart are returned as they are; all
    others are replaced by their image under T -> 1/T, which lands in
    the unit chart.
    """
    if not x.field.arithmetic:
        if x.infinite:
            raise Unsupported("tables have no point at infinity")
        return (x.center, x.radius, False)
    if in_unit_chart(x):
        return (x.center, x.radius, False)
    y = invert(x)
    return (y.center, y.radius, True)


def from_unit_chart(field: ValuedField, center: Any, radius: Val, flipped: bool) -> Point:
    p = disc(field, center, radius)
    return invert(p) if flipped else p


@dataclass(frozen=True)
class PathLeg:
    """One leg of a geodesic: radii from start to end around a center.

    With flipped=False the leg is s -> ball(center; s); with
    flipped=True it is the image of that ball under T -> 1/T, which is
    how legs reaching infinity are encoded.
    """

    center: Any
    start: Val
    end: Val
    flipped: bool = False

    @property
    def is_point(self) -> bool:
        return self.start == self.end


@dataclass(frozen=True)
class Path:
    """A geodesic between two points, as legs glued end to start."""

    field: ValuedField
    legs: tuple[PathLeg, ...]

    def segment(self) -> GeneralizedSegment:
        return GeneralizedSegment(tuple(Piece(l.start, l.end) for l in self.legs))

    def point_at(self, leg_index: int, value: Val) -> Point:
        leg = self.legs[leg_index]
        lo, hi = val_min(leg.start, leg.end), val_max(leg.start, leg.end)
        if not lo <= value <= hi:
            raise DomainError(f"radius {value} is outside leg {leg_index}")
        p = disc(self.field, leg.center, value)
        return invert(p) if leg.flipped else p

    @property
    def start_point(self) -> Point:
        return self.point_at(0, self.legs[0].start)

    @property
    def end_point(self) -> Point:
        return self.point_at(len(self.legs) - 1, self.legs[-1].end)

    def sample(self, per_leg: int = 3) -> list[Point]:
        """Deterministic sample points along the path, endpoints included."""
        out: list[Point] = []
        for i, leg in enumerate(self.legs):
            for v in _sample_values(leg.start, leg.end, per_leg):
                p = self.point_at(i, v)
                if not out or out[-1] != p:
                    out.append(p)
        return out


def _sample_values(a: Val, b: Val, count: int) -> list[Val]:
    """Values from a to b: endpoints plus rational interior exponents."""
    if a == b or count <= 2:
        return [a, b] if a != b else [a]
    # Pick interior exponents; a zero endpoint has exponent infinity,
    # approached by going one unit deeper per step.
    if a.is_zero and b.is_zero:
        return [a]
    if a.is_zero or b.is_zero:
        finite = b if a.is_zero else a
        interior = [Val.of(finite.exponent + k) for k in range(1, count - 1)]
        interior = interior[::-1] if a.is_zero else interior
        return [a] + interior + [b]
    lo, hi = a.exponent, b.exponent
    interior = [
        Val.of(lo + (hi - lo) * Fraction(k, count - 1)) for k in range(1, count - 1)
    ]
    return [a] + [v for v in interior if v not in (a, b)] + [b]


def geodesic(x: Point, y: Point) -> Path:
    """The unique arc from x to y, as explicit legs.

    Finite points use at most two legs through their join; a leg to
    infinity switches to the flipped chart at radius max(1, |center|).
    """
    field = _same_field(x, y)
    if x == y:
        if x.infinite:
            return Path(field, (PathLeg(field.zero(), ZERO, ZERO, flipped=True),))
        return Path(field, (PathLeg(x.center, x.radius, x.radius),))
    if x.infinite or y.infinite:
        if not field.arithmetic:
            raise Unsupported("tables have no point at infinity")
        if x.infinite:
            legs = _legs_to_infinity(y)
            flipped_legs = tuple(
                PathLeg(l.center, l.end, l.start, l.flipped) for l in reversed(legs)
            )
            return Path(field, flipped_legs)
        return Path(field, _legs_to_infinity(x))
    top = join(x, y)
    legs: list[PathLeg] = []
    if x.radius != top.radius:
        legs.append(PathLeg(x.center, x.radius, top.radius))
    if y.radius != top.radius:
        legs.append(PathLeg(y.center, top.radius, y.radius))
    return Path(field, tuple(legs))


def _legs_to_infinity(x: Point) -> tuple[PathLeg, ...]:
    """Legs from a finite point up to infinity."""
    field = x.field
    switch = val_max(x.radius, field.abs(x.center), ONE)
    legs: list[PathLeg] = []
    if x.radius != switch:
        legs.append(PathLeg(x.center, x.radius, switch))
    # Above the switch radius the ball is centered anywhere inside it;
    # in the flipped chart it is ball(0; 1/s), running down to 0 = inf.
    legs.append(PathLeg(field.zero(), switch ** -1, ZERO, flipped=True))
    return tuple(legs)


# Semantic equality makes structural hashing unsound; Points are
# deliberately unhashable.
Point.__hash__ = None
