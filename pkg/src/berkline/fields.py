"""Exactly-represented valued fields and polynomials over them.

Three backends share one interface:

* ``PAdicField(p)``     -- rationals with the p-adic absolute value,
* ``TAdicField(q)``     -- rational functions in t over Q (q=None) or
                           over the prime field GF(q), with the t-adic
                           absolute value,
* ``UltrametricTable``  -- a finite point cloud given by labels and
                           pairwise distances; no arithmetic, distance
                           queries only.

Absolute values land in the value monoid of valmonoid, normalized so
the uniformizer (p, or t) has value ``Val.of(1)``.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .errors import DomainError, FieldMismatch, Unsupported
from .valmonoid import Val, ZERO, val_max


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class ValuedField(abc.ABC):
    """Common interface of the field backends.

    ``arithmetic`` tells whether ring operations are available; the
    table backend answers distance queries only.
    """

    arithmetic: bool = True

    # -- identification ------------------------------------------------
    @abc.abstractmethod
    def config(self) -> dict:
        """JSON-serializable description of the field."""

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ValuedField) and self.config() == other.config()

    def __hash__(self) -> int:
        return hash(repr(sorted(self.config().items(), key=lambda kv: kv[0])))

    # -- element codecs --------------------------------------------------
    @abc.abstractmethod
    def parse(self, obj: Any) -> Any:
        """Build an element from its JSON form."""

    @abc.abstractmethod
    def to_json(self, x: Any) -> Any:
        """Canonical JSON form of an element (parse round-trips it)."""

    # -- predicates ------------------------------------------------------
    @abc.abstractmethod
    def eq(self, x: Any, y: Any) -> bool: ...

    @abc.abstractmethod
    def is_zero(self, x: Any) -> bool: ...

    # -- valuation ---------------------------------------------------------
    @abc.abstractmethod
    def abs(self, x: Any) -> Val:
        """Absolute value |x| as a monoid value."""

    def dist(self, x: Any, y: Any) -> Val:
        """|x - y|; the only metric query the table backend supports."""
        return self.abs(self.sub(x, y))

    # -- arithmetic (optional) ----------------------------------------------
    def zero(self) -> Any:
        raise Unsupported("this field has no arithmetic")

    def one(self) -> Any:
        raise Unsupported("this field has no arithmetic")

    def add(self, x: Any, y: Any) -> Any:
        raise Unsupported("this field has no arithmetic")

    def neg(self, x: Any) -> Any:
        raise Unsupported("this field has no arithmetic")

    def sub(self, x: Any, y: Any) -> Any:
        return self.add(x, self.neg(y))

    def mul(self, x: Any, y: Any) -> Any:
        raise Unsupported("this field has no arithmetic")

    def inv(self, x: Any) -> Any:
        raise Unsupported("this field has no arithmetic")

    def div(self, x: Any, y: Any) -> Any:
        return self.mul(x, self.inv(y))


class PAdicField(ValuedField):
    """Rational numbers with the p-adic absolute value, |p| = Val.of(1)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise DomainError(f"p must be prime, got {p}")
        self.p = p

    def config(self) -> dict:
        return {"field": "padic", "p": self.p}

    def parse(self, obj: Any) -> Fraction:
        if isinstance(obj, bool):
            raise DomainError(f"not a rational number: {obj!r}")
        if isinstance(obj, (int, str, Fraction)):
            try:
                return Fraction(obj)
            except (ValueError, ZeroDivisionError) as exc:
                raise DomainError(f"not a rational number: {obj!r}") from exc
        raise DomainError(f"not a rational number: {obj!r}")

    def to_json(self, x: Fraction) -> str:
        x = Fraction(x)
        return f"{x.numerator}/{x.denominator}"

    def eq(self, x: Fraction, y: Fraction) -> bool:
        return x == y

    def is_zero(self, x: Fraction) -> bool:
        return x == 0

    def abs(self, x: Fraction) -> Val:
        x = Fraction(x)
        if x == 0:
            return ZERO
        e = 0
        num, den = x.numerator, x.denominator
        while num % self.p == 0:
            num //= self.p
            e += 1
        while den % self.p == 0:
            den //= self.p
            e -= 1
        return Val.of(e)

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def add(self, x: Fraction, y: Fraction) -> Fraction:
        return x + y

    def neg(self, x: Fraction) -> Fraction:
        return -x

    def mul(self, x: Fraction, y: Fraction) -> Fraction:
        return x * y

    def inv(self, x: Fraction) -> Fraction:
        if x == 0:
            raise DomainError("inverse of zero")
        return 1 / Fraction(x)


class _CoeffOps:
    """Coefficient arithmetic for t-adic rational functions.

    Coefficients are Fractions when q is None, otherwise integers
    modulo the prime q.
    """

    def __init__(self, q: int | None):
        self.q = q

    def parse(self, obj: Any) -> Any:
        if isinstance(obj, bool) or not isinstance(obj, (int, str, Fraction)):
            raise DomainError(f"bad coefficient: {obj!r}")
        if self.q is None:
            return Fraction(obj)
        if isinstance(obj, Fraction):
            if obj.denominator != 1:
                raise DomainError(f"bad coefficient for GF({self.q}): {obj!r}")
            obj = obj.numerator
        return int(obj) % self.q

    def show(self, c: Any) -> Any:
        if self.q is not None:
            return int(c)
        c = Fraction(c)
        return f"{c.numerator}/{c.denominator}"

    def is_zero(self, c: Any) -> bool:
        return c == 0

    def add(self, a: Any, b: Any) -> Any:
        return a + b if self.q is None else (a + b) % self.q

    def neg(self, a: Any) -> Any:
        return -a if self.q is None else (-a) % self.q

    def mul(self, a: Any, b: Any) -> Any:
        return a * b if self.q is None else (a * b) % self.q

    def inv(self, a: Any) -> Any:
        if a == 0:
            raise DomainError("inverse of zero coefficient")
        return 1 / Fraction(a) if self.q is None else pow(a, -1, self.q)

    def zero(self) -> Any:
        return Fraction(0) if self.q is None else 0

    def one(self) -> Any:
        return Fraction(1) if self.q is None else 1


def _trim(coeffs: Sequence[Any], ops: _CoeffOps) -> tuple:
    coeffs = list(coeffs)
    while coeffs and ops.is_zero(coeffs[-1]):
        coeffs.pop()
    return tuple(coeffs)


def _poly_add(a: tuple, b: tuple, ops: _CoeffOps) -> tuple:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        ai = a[i] if i < len(a) else ops.zero()
        bi = b[i] if i < len(b) else ops.zero()
        out.append(ops.add(ai, bi))
    return _trim(out, ops)


def _poly_neg(a: tuple, ops: _CoeffOps) -> tuple:
    return tuple(ops.neg(c) for c in a)


def _poly_mul(a: tuple, b: tuple, ops: _CoeffOps) -> tuple:
    if not a or not b:
        return ()
    out = [ops.zero()] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] = ops.add(out[i + j], ops.mul(ca, cb))
    return _trim(out, ops)


def _poly_divmod(a: tuple, b: tuple, ops: _CoeffOps) -> tuple[tuple, tuple]:
    if not b:
        raise DomainError("polynomial division by zero")
    rem = list(a)
    inv_lead = ops.inv(b[-1])
    quot = [ops.zero()] * max(0, len(a) - len(b) + 1)
    while len(rem) >= len(b) and rem:
        factor = ops.mul(rem[-1], inv_lead)
        shift = len(rem) - len(b)
        quot[shift] = factor
        for i, cb in enumerate(b):
            rem[shift + i] = ops.add(rem[shift + i], ops.neg(ops.mul(factor, cb)))
        rem = list(_trim(rem, ops))
    return _trim(quot, ops), _trim(rem, ops)


def _poly_gcd(a: tuple, b: tuple, ops: _CoeffOps) -> tuple:
    while b:
        _, r = _poly_divmod(a, b, ops)
        a, b = b, r
    if a:
        inv_lead = ops.inv(a[-1])
        a = _trim([ops.mul(c, inv_lead) for c in a], ops)
    return a


def _poly_order(a: tuple, ops: _CoeffOps) -> int:
    for i, c in enumerate(a):
        if not ops.is_zero(c):
            return i
    raise DomainError("order of the zero polynomial")


@dataclass(frozen=True)
class RatFunc:
    """A reduced rational function in t: numerator/denominator tuples.

    Normal form: gcd(num, den) = 1 and den is monic; the zero element
    is num=() with den=(1,).  Construct through TAdicField, not
    directly.
    """

    num: tuple
    den: tuple


class TAdicField(ValuedField):
    """Rational functions in t with the t-adic absolute value, |t| = Val.of(1).

    Coefficients are exact rationals by default, or the prime field
    GF(q) when q is given.
    """

    def __init__(self, q: int | None = None):
        if q is not None and not _is_prime(q):
            raise DomainError(f"coefficient characteristic must be prime, got {q}")
        self.q = q
        self.ops = _CoeffOps(q)

    def config(self) -> dict:
        cfg: dict[str, Any] = {"field": "tadic"}
        if self.q is not None:
            cfg["q"] = self.q
        return cfg

    def _make(self, num: Iterable[Any], den: Iterable[Any]) -> RatFunc:
        ops = self.ops
        num = _trim(tuple(num), ops)
        den = _trim(tuple(den), ops)
        if not den:
            raise DomainError("zero denominator")
        if not num:
            return RatFunc((), (ops.one(),))
        g = _poly_gcd(num, den, ops)
        if len(g) > 1:
            num, _ = _poly_divmod(num, g, ops)
            den, _ = _poly_divmod(den, g, ops)
        inv_lead = ops.inv(den[-1])
        num = _trim([ops.mul(c, inv_lead) for c in num], ops)
        den = _trim([ops.mul(c, inv_lead) for c in den], ops)
        return RatFunc(num, den)

    def from_coeffs(self, num: Iterable[Any], den: Iterable[Any] = (1,)) -> RatFunc:
        ops = self.ops
        return self._make([ops.parse(c) for c in num], [ops.parse(c) for c in den])

    def parse(self, obj: Any) -> RatFunc:
        ops = self.ops
        if isinstance(obj, Mapping):
            num = obj.get("num")
            if num is None:
                raise DomainError("rational function needs a 'num' list")
            den = obj.get("den", [1])
            if not isinstance(num, list) or not isinstance(den, list):
                raise DomainError("'num' and 'den' must be coefficient lists")
            return self._make([ops.parse(c) for c in num], [ops.parse(c) for c in den])
        if isinstance(obj, list):
            return self._make([ops.parse(c) for c in obj], [ops.one()])
        if isinstance(obj, (int, str)):
            return self._make([ops.parse(obj)], [ops.one()])
        raise DomainError(f"not a rational function: {obj!r}")

    def to_json(self, x: RatFunc) -> dict:
        ops = self.ops
        return {
            "num": [ops.show(c) for c in x.num],
            "den": [ops.show(c) for c in x.den],
        }

    def eq(self, x: RatFunc, y: RatFunc) -> bool:
        return x.num == y.num and x.den == y.den

    def is_zero(self, x: RatFunc) -> bool:
        return not x.num

    def abs(self, x: RatFunc) -> Val:
        if not x.num:
            return ZERO
        ops = self.ops
        return Val.of(_poly_order(x.num, ops) - _poly_order(x.den, ops))

    def zero(self) -> RatFunc:
        return RatFunc((), (self.ops.one(),))

    def one(self) -> RatFunc:
        return RatFunc((self.ops.one(),), (self.ops.one(),))

    def add(self, x: RatFunc, y: RatFunc) -> RatFunc:
        ops = self.ops
        num = _poly_add(
            _poly_mul(x.num, y.den, ops), _poly_mul(y.num, x.den, ops), ops
        )
        return self._make(num, _poly_mul(x.den, y.den, ops))

    def neg(self, x: RatFunc) -> RatFunc:
        return RatFunc(_poly_neg(x.num, self.ops), x.den)

    def mul(self, x: RatFunc, y: RatFunc) -> RatFunc:
        ops = self.ops
        return self._make(_poly_mul(x.num, y.num, ops), _poly_mul(x.den, y.den, ops))

    def inv(self, x: RatFunc) -> RatFunc:
        if not x.num:
            raise DomainError("inverse of zero")
        return self._make(x.den, x.num)


@dataclass(frozen=True)
class TableViolation:
    kind: str
    labels: tuple[str, ...]


class UltrametricTable(ValuedField):
    """A finite labeled point cloud with exact pairwise distances.

    Supports only distance queries; hulls and retractions run on it,
    Gauss evaluation and inversion do not.
    """

    arithmetic = False

    def __init__(
        self,
        labels: Sequence[str],
        dist_matrix: Sequence[Sequence[Val]],
        check: bool = True,
    ):
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise DomainError("table labels must be distinct")
        n = len(self.labels)
        if len(dist_matrix) != n or any(len(row) != n for row in dist_matrix):
            raise DomainError("distance matrix shape does not match labels")
        self.matrix = tuple(tuple(row) for row in dist_matrix)
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        if check:
            bad = self.violations(limit=1)
            if bad:
                v = bad[0]
                raise DomainError(
                    f"table is not an ultrametric: {v.kind} at {v.labels}"
                )

    def violations(self, limit: int | None = None) -> list[TableViolation]:
        """All witnesses that the table fails to be an ultrametric."""
        out: list[TableViolation] = []
        n = len(self.labels)
        m = self.matrix

        def push(kind: str, *idx: int) -> bool:
            out.append(TableViolation(kind, tuple(self.labels[i] for i in idx)))
            return limit is not None and len(out) >= limit

        for i in range(n):
            if not m[i][i].is_zero:
                if push("nonzero-self-distance", i):
                    return out
        for i in range(n):
            for j in range(i + 1, n):
                if m[i][j] != m[j][i]:
                    if push("asymmetric", i, j):
                        return out
                if m[i][j].is_zero:
                    if push("zero-distance-between-distinct", i, j):
                        return out
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if m[i][k] > val_max(m[i][j], m[j][k]):
                        if push("ultrametric-failure", i, j, k):
                            return out
        return out

    def config(self) -> dict:
        from .jsonio import val_to_json

        return {
            "field": "table",
            "labels": list(self.labels),
            "dist": [[val_to_json(v) for v in row] for row in self.matrix],
        }

    def parse(self, obj: Any) -> str:
        if not isinstance(obj, str) or obj not in self.index:
            raise DomainError(f"unknown table label: {obj!r}")
        return obj

    def to_json(self, x: str) -> str:
        return x

    def eq(self, x: str, y: str) -> bool:
        return x == y

    def is_zero(self, x: str) -> bool:
        raise Unsupported("table points have no additive structure")

    def abs(self, x: str) -> Val:
        raise Unsupported("table points have no absolute value, only distances")

    def dist(self, x: str, y: str) -> Val:
        return self.matrix[self.index[x]][self.index[y]]


def validate_table(table: UltrametricTable) -> list[TableViolation]:
    """Check symmetry, identity, and all ultrametric triangle inequalities.

    Returns the list of violations; an empty list means the table is a
    valid ultrametric.
    """
    return table.violations()


class Polynomial:
    """A sparse polynomial over a valued field, in ``arity`` variables.

    Terms map exponent tuples to nonzero field elements.
    """

    def __init__(self, field: ValuedField, arity: int, terms: Mapping[tuple[int, ...], Any]):
        if not field.arithmetic:
            raise Unsupported("polynomials require a field with arithmetic")
        if arity < 1:
            raise DomainError("arity must be at least 1")
        self.field = field
        self.arity = arity
        clean: dict[tuple[int, ...], Any] = {}
        for exps, coeff in terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != arity:
                raise DomainError(f"exponent tuple {exps} does not match arity {arity}")
            if any(e < 0 for e in exps):
                raise DomainError("polynomial exponents must be nonnegative")
            if not field.is_zero(coeff):
                clean[exps] = coeff
        self.terms = clean

    @classmethod
    def from_coeffs(cls, field: ValuedField, coeffs: Sequence[Any]) -> "Polynomial":
        return cls(field, 1, {(i,): c for i, c in enumerate(coeffs)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def dense_coeffs(self) -> list[Any]:
        """Ascending coefficient list (arity 1 only)."""
        if self.arity != 1:
            raise DomainError("dense coefficients exist only in one variable")
        if not self.terms:
            return []
        top = max(e[0] for e in self.terms)
        zero = self.field.zero()
        out = [zero] * (top + 1)
        for (i,), c in self.terms.items():
            out[i] = c
        return out

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        f = self.field
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = f.add(terms.get(exps, f.zero()), c)
        return Polynomial(f, self.arity, terms)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, self.arity, {e: f.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_compatible(other)
        f = self.field
        terms: dict[tuple[int, ...], Any] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = f.mul(c1, c2)
                terms[e] = f.add(terms.get(e, f.zero()), prod)
        return Polynomial(f, self.arity, terms)

    def eval_at(self, point: Sequence[Any]) -> Any:
        f = self.field
        if len(point) != self.arity:
            raise DomainError("evaluation point arity mismatch")
        total = f.zero()
        for exps, coeff in self.terms.items():
            term = coeff
            for x, e in zip(point, exps):
                for _ in range(e):
                    term = f.mul(term, x)
            total = f.add(total, term)
        return total

    def _check_compatible(self, other: "Polynomial") -> None:
        if self.field != other.field or self.arity != other.arity:
            raise FieldMismatch("polynomials over different fields or arities")


def taylor_shift(poly: Polynomial, center: Any) -> list[Any]:
    """Coefficients b_i with poly = sum b_i (T - center)^i, exactly.

    Computed by repeated synthetic division by (T - center); one
    variable only.
    """
    if poly.arity != 1:
        raise DomainError("taylor shift is defined in one variable")
    f = poly.field
    work = poly.dense_coeffs()
    out: list[Any] = []
    n = len(work)
    for _ in range(n):
        m = len(work)
        quotient = [None] * (m - 1)
        carry = work[m - 1]
        for i in range(m - 2, -1, -1):
            quotient[i] = carry
            carry = f.add(work[i], f.mul(center, carry))
        out.append(carry)
        work = quotient
    return out
