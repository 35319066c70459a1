"""Exact linear solves over the coefficient fields.

Pivoting is by first structurally nonzero entry; there is no notion of
magnitude in exact arithmetic.  The default is plain elimination over the
field.  The fraction-free route clears denominators row by row and runs
Bareiss elimination in ``Z[q, t]`` (or ``Z``); it is much slower on the
interpolation systems, whose reduced Schur complements stay small while the
determinants do not, and is kept as an independent check.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import List, Sequence

from .exactfield import RatFunc
from .qtpoly import ONE, QTPoly, divexact, gcd


class SingularSystem(ArithmeticError):
    """The coefficient matrix has a zero pivot column (rank deficient)."""


class InconsistentSystem(ArithmeticError):
    """An overdetermined system has no solution."""


def gauss_solve(matrix: Sequence[Sequence], rhs: Sequence, zero=0) -> List:
    """Solve ``matrix @ x = rhs`` over any exact field by plain elimination.

    ``matrix`` may have more rows than columns; extra equations must be
    consistent.  Inputs are not modified.
    """
    m = len(matrix)
    ncols = len(matrix[0]) if m else 0
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    for k in range(ncols):
        piv = next((i for i in range(k, m) if rows[i][k]), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {k}")
        rows[k], rows[piv] = rows[piv], rows[k]
        pk = rows[k]
        inv = 1 / pk[k] if not isinstance(pk[k], RatFunc) else pk[k].inverse()
        for i in range(k + 1, m):
            ri = rows[i]
            if not ri[k]:
                continue
            f = ri[k] * inv
            for j in range(k + 1, ncols + 1):
                if pk[j]:
                    ri[j] = ri[j] - f * pk[j]
            ri[k] = zero
    for i in range(ncols, m):
        if rows[i][ncols]:
            raise InconsistentSystem(f"equation {i} is violated")
    x = [zero] * ncols
    for i in range(ncols - 1, -1, -1):
        acc = rows[i][ncols]
        for j in range(i + 1, ncols):
            if rows[i][j] and x[j]:
                acc = acc - rows[i][j] * x[j]
        x[i] = acc / rows[i][i]
    return x


def bareiss_solve(matrix: Sequence[Sequence], rhs: Sequence, exact_div, one=1):
    """Fraction-free elimination over an integral domain.

    Returns ``(y, d)`` with the solution ``x = y / d`` (componentwise), where
    ``d`` is the last pivot, a nonzero multiple of the system determinant.
    """
    m = len(matrix)
    ncols = len(matrix[0]) if m else 0
    rows = [list(r) + [b] for r, b in zip(matrix, rhs)]
    prev = one
    for k in range(ncols):
        piv = next((i for i in range(k, m) if rows[i][k]), None)
        if piv is None:
            raise SingularSystem(f"no pivot in column {k}")
        rows[k], rows[piv] = rows[piv], rows[k]
        pk = rows[k]
        akk = pk[k]
        for i in range(k + 1, m):
            ri = rows[i]
            aik = ri[k]
            for j in range(k + 1, ncols + 1):
                v = akk * ri[j]
                if aik and pk[j]:
                    v = v - aik * pk[j]
                ri[j] = exact_div(v, prev) if v else v
            ri[k] = 0 * akk
        prev = akk
    for i in range(ncols, m):
        if rows[i][ncols]:
            raise InconsistentSystem(f"equation {i} is violated")
    if ncols == 0:
        return [], one
    det = rows[ncols - 1][ncols - 1]
    y = [None] * ncols
    for i in range(ncols - 1, -1, -1):
        acc = det * rows[i][ncols]
        for j in range(i + 1, ncols):
            if rows[i][j] and y[j]:
                acc = acc - rows[i][j] * y[j]
        y[i] = exact_div(acc, rows[i][i]) if acc else acc
    return y, det


def _clear_row_symbolic(row: Sequence[RatFunc], b: RatFunc):
    entries = list(row) + [b]
    den = ONE
    for e in entries:
        if e.den != ONE and e.den != den:
            g = gcd(den, e.den)
            den = den * divexact(e.den, g)
    return [divexact(den, e.den) * e.num if e.num else QTPoly() for e in entries]


def _clear_row_numeric(row: Sequence[Fraction], b: Fraction):
    entries = [Fraction(e) for e in list(row) + [b]]
    den = 1
    for e in entries:
        den = lcm(den, e.denominator)
    return [e.numerator * (den // e.denominator) for e in entries]


def _int_div(a: int, b: int) -> int:
    qv, r = divmod(a, b)
    if r:
        raise ArithmeticError("inexact integer division in Bareiss elimination")
    return qv


def solve(field, matrix: Sequence[Sequence], rhs: Sequence, method: str = "gauss") -> List:
    """Solve an exact (possibly overdetermined, consistent) system over ``field``.

    ``method`` is ``"gauss"`` or ``"bareiss"``.
    """
    if not matrix:
        return []
    if method == "gauss":
        return gauss_solve(matrix, rhs, field.zero)
    if method != "bareiss":
        raise ValueError(f"unknown method {method!r}")
    if field.mode == "symbolic":
        cleared = [_clear_row_symbolic(r, b) for r, b in zip(matrix, rhs)]
        y, d = bareiss_solve([r[:-1] for r in cleared], [r[-1] for r in cleared], divexact, ONE)
        return [RatFunc(v, d) if v else field.zero for v in y]
    cleared = [_clear_row_numeric(r, b) for r, b in zip(matrix, rhs)]
    y, d = bareiss_solve([r[:-1] for r in cleared], [r[-1] for r in cleared], _int_div, 1)
    return [Fraction(v, d) for v in y]
