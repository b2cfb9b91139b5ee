"""Exact rational matrix helpers.

Matrices are tuples of tuples of Fraction (or int).  Heavy lifting
(rank, kernels, inverses) is delegated to sympy's DomainMatrix over QQ.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

Matrix = tuple  # tuple[tuple[Fraction, ...], ...]


def frac(value) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction (floats are refused)."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if hasattr(value, "numerator") and hasattr(value, "denominator") and not isinstance(value, float):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"not an exact rational: {value!r}")


def fmt(q) -> str | int:
    """Serialize a rational: integers stay ints, others become "p/q"."""
    q = frac(q)
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


def mat(rows: Iterable[Iterable]) -> Matrix:
    return tuple(tuple(frac(x) for x in row) for row in rows)


def int_mat(rows: Iterable[Iterable]) -> Matrix:
    out = []
    for row in rows:
        r = []
        for x in row:
            x = frac(x)
            if x.denominator != 1:
                raise ValueError(f"non-integral entry {x}")
            r.append(x.numerator)
        out.append(tuple(r))
    return tuple(out)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def transpose(a: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*a)) if a else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), 0) for col in bt) for row in a)


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum((x * y for x, y in zip(row, v)), 0) for row in a)


def vecmat(v: Sequence, a: Sequence[Sequence]) -> tuple:
    return matvec(transpose(a), v)


def dot(u: Sequence, v: Sequence):
    return sum((x * y for x, y in zip(u, v)), 0)


def _dm(a: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [[QQ(frac(x).numerator, frac(x).denominator) for x in row] for row in a]
    ncols = len(rows[0]) if rows else (ncols or 0)
    return DomainMatrix(rows, (len(rows), ncols), QQ)


def _back(dm: DomainMatrix) -> Matrix:
    return tuple(tuple(Fraction(int(x.numerator), int(x.denominator)) for x in row) for row in dm.to_list())


def rank(a: Sequence[Sequence]) -> int:
    if not a or not a[0]:
        return 0
    return _dm(a).rank()


def nullspace(a: Sequence[Sequence], ncols: int | None = None) -> Matrix:
    """Basis (as rows) of {x : a x = 0}, in reduced echelon form."""
    if not a:
        n = ncols or 0
        return identity(n) if n else ()
    ns = _dm(a).nullspace()
    if ns.shape[0] == 0:
        return ()
    return _back(ns.rref()[0])


def left_nullspace(a: Sequence[Sequence]) -> Matrix:
    return nullspace(transpose(a))


def inverse(a: Sequence[Sequence]) -> Matrix:
    return _back(_dm(a).inv())


def solve(a: Sequence[Sequence], b: Sequence) -> tuple | None:
    """One solution of a x = b (free variables set to zero), or None."""
    n = len(a[0])
    aug = [list(row) + [rhs] for row, rhs in zip(a, b)]
    r, pivots = _dm(aug).rref()
    red = _back(r)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = red[i][n]
    return tuple(x)


def is_zero_vec(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fs = [frac(x) for x in v]
    den = 1
    for x in fs:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fs]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)
