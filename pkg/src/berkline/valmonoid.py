"""The value monoid of a rank-one valued field, in exact arithmetic.

A value is either the absorbing zero (the absolute value of 0) or a
rational power of the uniformizer, stored by its exponent.  Writing u
for the uniformizer, ``Val.of(e)`` models the positive real u^e with
0 < u < 1, so the order is *reversed* on exponents:

    Val.of(e1) <= Val.of(e2)  iff  e1 >= e2,

and ``Val.zero()`` is the least element.  Multiplication adds
exponents and zero absorbs.  All I/O talks about exponents, never
about decimal magnitudes.

The module also provides closed intervals of values, oriented
generalized segments (finitely many closed spans glued end to origin),
monomial maps, and the collapse of a segment with nonzero junction
values onto a single interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import DomainError, NotCollapsible

RationalLike = Union[Fraction, int, str]


def _as_fraction(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise DomainError(f"not a rational exponent: {value!r}")


@dataclass(frozen=True)
class Val:
    """One element of the value monoid: zero, or uniformizer^exponent.

    ``exponent`` is None exactly for the absorbing zero.
    """

    exponent: Fraction | None

    @staticmethod
    def zero() -> "Val":
        return Val(None)

    @staticmethod
    def of(exponent: RationalLike) -> "Val":
        return Val(_as_fraction(exponent))

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def __mul__(self, other: "Val") -> "Val":
        if self.is_zero or other.is_zero:
            return Val(None)
        return Val(self.exponent + other.exponent)

    def __truediv__(self, other: "Val") -> "Val":
        if other.is_zero:
            raise DomainError("division by the zero value")
        if self.is_zero:
            return Val(None)
        return Val(self.exponent - other.exponent)

    def __pow__(self, power: RationalLike) -> "Val":
        q = _as_fraction(power)
        if self.is_zero:
            if q > 0:
                return Val(None)
            if q == 0:
                # 0^0 = 1, the convention that keeps monomial maps total.
                return Val(Fraction(0))
            raise DomainError("negative power of the zero value")
        return Val(self.exponent * q)

    # Order: zero is least; among nonzero values a larger exponent
    # means a smaller value.
    def __lt__(self, other: "Val") -> bool:
        if self.is_zero:
            return not other.is_zero
        if other.is_zero:
            return False
        return self.exponent > other.exponent

    def __le__(self, other: "Val") -> bool:
        return self == other or self < other

    def __gt__(self, other: "Val") -> bool:
        return other < self

    def __ge__(self, other: "Val") -> bool:
        return other <= self

    def __str__(self) -> str:
        if self.is_zero:
            return "zero"
        return f"e={self.exponent}"

    __repr__ = __str__


ZERO = Val.zero()
ONE = Val.of(0)


def val_max(*values: Val) -> Val:
    """Largest value (smallest exponent); identity element is ZERO."""
    best = ZERO
    for v in values:
        if best < v:
            best = v
    return best


def val_min(*values: Val) -> Val:
    if not values:
        raise DomainError("min of no values")
    best = values[0]
    for v in values[1:]:
        if v < best:
            best = v
    return best


@dataclass(frozen=True)
class Interval:
    """A subinterval of the value monoid with lo <= hi in the value order."""

    lo: Val
    hi: Val
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self) -> None:
        if not self.lo <= self.hi:
            raise DomainError(f"interval endpoints out of order: {self.lo}, {self.hi}")

    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and not (self.lo_closed and self.hi_closed)

    @property
    def is_closed(self) -> bool:
        return self.lo_closed and self.hi_closed

    def contains(self, v: Val) -> bool:
        if v < self.lo or (v == self.lo and not self.lo_closed):
            return False
        if self.hi < v or (v == self.hi and not self.hi_closed):
            return False
        return True

    def __str__(self) -> str:
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{self.lo}; {self.hi}{right}"


@dataclass(frozen=True)
class Piece:
    """One closed span of a generalized segment, traversed origin -> endpoint.

    The endpoints may appear in either value order; a geodesic leg that
    shrinks its radius is a decreasing piece.
    """

    origin: Val
    endpoint: Val

    @property
    def low(self) -> Val:
        return val_min(self.origin, self.endpoint)

    @property
    def high(self) -> Val:
        return val_max(self.origin, self.endpoint)

    @property
    def is_point(self) -> bool:
        return self.origin == self.endpoint

    @property
    def increasing(self) -> bool:
        return self.origin <= self.endpoint

    def as_interval(self) -> Interval:
        return Interval(self.low, self.high)

    def contains(self, v: Val) -> bool:
        return self.low <= v <= self.high


@dataclass(frozen=True)
class GeneralizedSegment:
    """Closed spans glued in order: piece i's endpoint meets piece i+1's origin.

    The junction values themselves need not be equal; the gluing is the
    identification of those two boundary points.  Points of the segment
    are addressed as (piece index, value); representations at a junction
    are canonicalized to the smaller index.
    """

    pieces: tuple[Piece, ...]

    def __post_init__(self) -> None:
        if not self.pieces:
            raise DomainError("a generalized segment needs at least one piece")

    @property
    def origin(self) -> tuple[int, Val]:
        return (0, self.pieces[0].origin)

    @property
    def endpoint(self) -> tuple[int, Val]:
        last = len(self.pieces) - 1
        return (last, self.pieces[last].endpoint)

    def canonical_point(self, index: int, value: Val) -> tuple[int, Val]:
        if not 0 <= index < len(self.pieces):
            raise DomainError(f"piece index {index} out of range")
        if not self.pieces[index].contains(value):
            raise DomainError(f"value {value} not on piece {index}")
        while index > 0 and value == self.pieces[index].origin:
            index -= 1
            value = self.pieces[index].endpoint
        return (index, value)


def concatenate(parts: Sequence[Piece | Interval | tuple[Val, Val]]) -> GeneralizedSegment:
    """Assemble a generalized segment from oriented closed spans.

    Accepts Piece objects, (origin, endpoint) pairs, or closed
    Interval objects (traversed lo -> hi).
    """
    if not parts:
        raise DomainError("cannot concatenate an empty list of pieces")
    pieces: list[Piece] = []
    for part in parts:
        if isinstance(part, Piece):
            pieces.append(part)
        elif isinstance(part, Interval):
            if not part.is_closed:
                raise DomainError("segment pieces must be closed intervals")
            pieces.append(Piece(part.lo, part.hi))
        else:
            origin, endpoint = part
            pieces.append(Piece(origin, endpoint))
    return GeneralizedSegment(tuple(pieces))


@dataclass(frozen=True)
class MonomialMap:
    """The map x -> coeff * x^exponent on values; coeff is nonzero.

    A nonnegative exponent is required whenever the domain contains the
    zero value; this is enforced at evaluation time through the power
    rules of Val.
    """

    coeff: Val
    exponent: Fraction

    def __post_init__(self) -> None:
        if self.coeff.is_zero:
            raise DomainError("monomial coefficient must be nonzero")
        object.__setattr__(self, "exponent", _as_fraction(self.exponent))

    def __call__(self, x: Val) -> Val:
        return self.coeff * (x ** self.exponent)

    def inverse_at(self, y: Val) -> Val:
        """Solve coeff * x^exponent = y for x (exponent nonzero)."""
        if self.exponent == 0:
            raise DomainError("constant monomial map has no inverse")
        return (y / self.coeff) ** (1 / self.exponent)


@dataclass(frozen=True)
class CollapseMap:
    """Piecewise monomial isomorphism from a segment onto one interval."""

    segment: GeneralizedSegment
    target: Interval
    maps: tuple[MonomialMap, ...]

    def forward(self, index: int, value: Val) -> Val:
        index, value = self.segment.canonical_point(index, value)
        return self.maps[index](value)

    def backward(self, y: Val) -> tuple[int, Val]:
        """Preimage of a target value, canonicalized to the lowest piece."""
        for index, (piece, mono) in enumerate(zip(self.segment.pieces, self.maps)):
            x = mono.inverse_at(y) if mono.exponent != 0 else None
            if x is not None and piece.contains(x):
                return self.segment.canonical_point(index, x)
        raise DomainError(f"{y} is outside the collapsed interval")


def collapse(segment: GeneralizedSegment) -> CollapseMap:
    """Straighten a segment with nonzero junction values onto one interval.

    Every piece origin and endpoint must be nonzero; otherwise no
    injective piecewise monomial reparametrization into a single
    interval exists and NotCollapsible is raised.  Pieces running with
    the overall traversal are rescaled (exponent 1); pieces running
    against it are inverted (exponent -1), which stays within the
    monoid because such pieces avoid zero.
    """
    for piece in segment.pieces:
        if piece.origin.is_zero or piece.endpoint.is_zero:
            raise NotCollapsible(
                "segment has a zero origin or endpoint; it cannot be "
                "straightened into a single interval"
            )
    # Direction of the target traversal: the first piece that moves.
    forward = True
    for piece in segment.pieces:
        if not piece.is_point:
            forward = piece.increasing
            break
    maps: list[MonomialMap] = []
    cursor = segment.pieces[0].origin
    for piece in segment.pieces:
        same_way = piece.is_point or (piece.increasing == forward)
        if same_way:
            mono = MonomialMap(cursor / piece.origin, Fraction(1))
        else:
            mono = MonomialMap(cursor * piece.origin, Fraction(-1))
        maps.append(mono)
        cursor = mono(piece.endpoint)
    start = segment.pieces[0].origin
    lo, hi = (start, cursor) if start <= cursor else (cursor, start)
    return CollapseMap(segment, Interval(lo, hi), tuple(maps))
