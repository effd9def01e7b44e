"""Exact linear feasibility over the rationals.

A small Fourier-Motzkin kernel used by the tropical module.  Every
constraint has the form ``coeffs . x >= rhs`` (or ``>`` when strict),
with Fraction coefficients, so all answers are exact.  The systems it
sees come from tropical formulas with a handful of variables; it is not
a general purpose LP solver and guards itself with a hard size limit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import Unsupported

ROW_LIMIT = 20000


@dataclass(frozen=True)
class LinearConstraint:
    """The half-space coeffs . x >= rhs, open when strict."""

    coeffs: tuple[Fraction, ...]
    rhs: Fraction
    strict: bool = False

    @staticmethod
    def of(coeffs: Iterable, rhs, strict: bool = False) -> "LinearConstraint":
        return LinearConstraint(
            tuple(Fraction(c) for c in coeffs), Fraction(rhs), strict
        )

    def is_constant(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def constant_holds(self) -> bool:
        return 0 > self.rhs if self.strict else 0 >= self.rhs

    def normalized(self) -> "LinearConstraint":
        pivot = next((abs(c) for c in self.coeffs if c != 0), None)
        if pivot is None or pivot == 1:
            return self
        return LinearConstraint(
            tuple(c / pivot for c in self.coeffs), self.rhs / pivot, self.strict
        )


def _simplify(rows: list[LinearConstraint]) -> list[LinearConstraint] | None:
    """Drop trivial rows and duplicates; None when a row is impossible."""
    seen = set()
    out: list[LinearConstraint] = []
    for row in rows:
        if row.is_constant():
            if row.constant_holds():
                continue
            return None
        row = row.normalized()
        key = (row.coeffs, row.rhs, row.strict)
        if key in seen:
            continue
        # a strict row subsumes its non-strict twin and vice versa: keep
        # both only when the strict one is present (it is the stronger).
        seen.add(key)
        out.append(row)
    return out


def _eliminate(rows: list[LinearConstraint], k: int) -> list[LinearConstraint]:
    """Fourier-Motzkin elimination of coordinate k."""
    lowers = [r for r in rows if r.coeffs[k] > 0]
    uppers = [r for r in rows if r.coeffs[k] < 0]
    out = [r for r in rows if r.coeffs[k] == 0]
    for lo in lowers:
        for up in uppers:
            al, au = lo.coeffs[k], up.coeffs[k]
            coeffs = tuple(
                -au * cl + al * cu for cl, cu in zip(lo.coeffs, up.coeffs)
            )
            rhs = -au * lo.rhs + al * up.rhs
            out.append(LinearConstraint(coeffs, rhs, lo.strict or up.strict))
            if len(out) > ROW_LIMIT:
                raise Unsupported("linear system grew past the row limit")
    return out


def feasible(constraints: Sequence[LinearConstraint], arity: int) -> bool:
    """Exact satisfiability of the system over rational vectors."""
    rows = _simplify(list(constraints))
    if rows is None:
        return False
    for k in range(arity):
        rows = _simplify(_eliminate(rows, k))
        if rows is None:
            return False
    return True


def bounded_below(
    constraints: Sequence[LinearConstraint], arity: int, coord: int
) -> bool:
    """Whether coordinate ``coord`` is bounded below on the feasible set.

    An infeasible system is vacuously bounded.
    """
    rows = _simplify(list(constraints))
    if rows is None:
        return True
    for k in range(arity):
        if k == coord:
            continue
        rows = _simplify(_eliminate(rows, k))
        if rows is None:
            return True
    return any(r.coeffs[coord] > 0 for r in rows)


def implicit_equality_rows(
    constraints: Sequence[LinearConstraint], arity: int
) -> list[LinearConstraint]:
    """Non-strict constraints that hold with equality on every solution.

    The caller is expected to have checked feasibility; on an infeasible
    system the answer is meaningless.
    """
    rows = list(constraints)
    out = []
    for i, row in enumerate(rows):
        if row.strict:
            continue
        probe = LinearConstraint(row.coeffs, row.rhs, strict=True)
        if not feasible(rows[:i] + [probe] + rows[i + 1 :], arity):
            out.append(row)
    return out


def matrix_rank(rows: Sequence[Sequence[Fraction]], arity: int) -> int:
    """Rank over the rationals by Gaussian elimination."""
    work = [list(map(Fraction, r)) for r in rows]
    rank = 0
    for col in range(arity):
        pivot = next(
            (i for i in range(rank, len(work)) if work[i][col] != 0), None
        )
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        lead = work[rank][col]
        for i in range(len(work)):
            if i != rank and work[i][col] != 0:
                factor = work[i][col] / lead
                work[i] = [a - factor * b for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank
