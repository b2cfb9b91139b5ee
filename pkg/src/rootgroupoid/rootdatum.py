"""Root-datum vertices tracked in base-lattice coordinates, reflexions and realizations."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import _linalg as la
from .cartan import CartanDatum, DiagonalScaling, Label, is_reflectable
from .errors import InternalError, NotReflectableError, ParseError


@dataclass(frozen=True)
class RootDatumVertex:
    """b_v(x) rows of B (integer, base root coordinates); a_v(x) rows of Avec (rational, base coroot coordinates)."""

    B: tuple
    Avec: tuple
    parity: tuple
    base: CartanDatum
    word: tuple = field(default=(), compare=False)

    @property
    def n(self) -> int:
        return len(self.parity)

    @cached_property
    def cartan(self) -> CartanDatum:
        a0 = self.base.matrix
        m = la.matmul(la.matmul(self.Avec, a0), la.transpose(self.B))
        return CartanDatum(tuple(tuple(Fraction(x) for x in row) for row in m), self.parity, self.base.labels)

    @property
    def key(self) -> tuple:
        return self.B, self.parity

    def to_json(self) -> dict:
        return {
            "B": [list(row) for row in self.B],
            "Avec": [[la.fmt(x) for x in row] for row in self.Avec],
            "parity": list(self.parity),
            "word_from_base": [self.base.labels[i] for i in self.word],
        }


def vertex_from_json(obj: dict, base: CartanDatum) -> RootDatumVertex:
    try:
        B = la.int_mat(obj["B"])
        Avec = la.mat(obj["Avec"])
        parity = tuple(int(p) for p in obj["parity"])
        word = tuple(base.index(x) for x in obj.get("word_from_base", []))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed vertex: {e}") from None
    return RootDatumVertex(B, Avec, parity, base, word)


def base_vertex(d: CartanDatum) -> RootDatumVertex:
    n = d.n
    eye = la.identity(n)
    return RootDatumVertex(eye, tuple(tuple(Fraction(x) for x in row) for row in eye), d.parity, d, ())


def cartan_matrix(v: RootDatumVertex) -> CartanDatum:
    return v.cartan


def reflect(v: RootDatumVertex, x: Label) -> RootDatumVertex:
    d = v.cartan
    i = d.index(x)
    if not is_reflectable(d, i):
        raise NotReflectableError(d.labels[i])
    axx = d[i, i]
    B, Avec, parity = list(v.B), list(v.Avec), list(v.parity)
    bx, ax = v.B[i], v.Avec[i]
    if axx != 0:
        for y in range(v.n):
            cb = -2 * d[i, y] / axx
            if cb.denominator != 1:
                raise InternalError(f"non-integral root coefficient {cb} at reflexion {d.labels[i]}")
            ca = -2 * d[y, i] / axx
            B[y] = tuple(s + int(cb) * t for s, t in zip(v.B[y], bx))
            Avec[y] = tuple(s + ca * t for s, t in zip(v.Avec[y], ax))
    else:
        for y in range(v.n):
            if y == i:
                B[y] = tuple(-t for t in bx)
                Avec[y] = tuple(-t for t in ax)
            elif d[i, y] != 0:
                c = d[y, i] / d[i, y]
                B[y] = tuple(s + t for s, t in zip(v.B[y], bx))
                Avec[y] = tuple(s + c * t for s, t in zip(v.Avec[y], ax))
                parity[y] = 1 - parity[y]
    return RootDatumVertex(tuple(B), tuple(Avec), tuple(parity), v.base, v.word + (i,))


def apply_word(v: RootDatumVertex, word: Sequence[Label]) -> RootDatumVertex:
    for step, x in enumerate(word):
        try:
            v = reflect(v, x)
        except NotReflectableError as e:
            raise NotReflectableError(e.label, step) from None
    return v


def apply_homothety(v: RootDatumVertex, lam) -> RootDatumVertex:
    if not isinstance(lam, DiagonalScaling):
        lam = DiagonalScaling(tuple(lam))
    if len(lam) != v.n:
        raise ValueError("scaling has the wrong length")
    Avec = tuple(tuple(lam[i] * t for t in row) for i, row in enumerate(v.Avec))
    return RootDatumVertex(v.B, Avec, v.parity, v.base, v.word)


def relabel(d: CartanDatum, perm: Sequence[int]) -> CartanDatum:
    """Datum with new label k playing the role of old label perm[k]."""
    rows = tuple(tuple(d[perm[i], perm[j]] for j in range(d.n)) for i in range(d.n))
    return CartanDatum(rows, tuple(d.parity[p] for p in perm), d.labels)


def isotropic_update(d: CartanDatum, x: int) -> CartanDatum:
    """Closed-form Cartan datum after the isotropic reflexion at x (no vectors involved)."""
    n = d.n
    a = d.matrix
    new = [list(row) for row in a]
    parity = list(d.parity)
    for y in range(n):
        if y == x:
            continue
        new[x][y] = -a[x][y]
        new[y][x] = -a[y][x]
        new[y][y] = a[y][y] + 2 * a[y][x] if a[x][y] != 0 else a[y][y]
        if a[x][y] != 0:
            parity[y] = 1 - parity[y]
        for z in range(n):
            if z in (x, y):
                continue
            if a[x][z] == 0:
                new[y][z] = a[y][z]
            elif a[x][y] == 0:
                new[y][z] = a[y][z] + a[y][x]
            else:
                new[y][z] = a[y][z] + a[y][x] * (1 + a[x][z] / a[x][y])
    new[x][x] = a[x][x]
    return CartanDatum(tuple(tuple(Fraction(t) for t in row) for row in new), tuple(parity), d.labels)


@dataclass(frozen=True)
class Realization:
    """avec rows are a(x) in coordinates of h; bvec rows are b(x) in the dual coordinates."""

    dim: int
    avec: tuple
    bvec: tuple

    def pairing(self) -> tuple:
        return la.matmul(self.avec, la.transpose(self.bvec))

    def check(self, d: CartanDatum) -> None:
        if self.pairing() != d.matrix:
            raise ValueError("realization pairing does not reproduce the Cartan matrix")
        if la.rank(self.avec) != d.n or la.rank(self.bvec) != d.n:
            raise ValueError("realization vectors are not linearly independent")

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "avec": [[la.fmt(t) for t in row] for row in self.avec],
            "bvec": [[la.fmt(t) for t in row] for row in self.bvec],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Realization":
        try:
            avec, bvec = la.mat(obj["avec"]), la.mat(obj["bvec"])
            dim = int(obj.get("dim", len(avec[0])))
        except (KeyError, TypeError, ValueError, IndexError) as e:
            raise ParseError(f"malformed realization: {e}") from None
        if any(len(r) != dim for r in avec + bvec):
            raise ParseError("realization vectors must all have length dim")
        return cls(dim, avec, bvec)


def standard_realization(d: CartanDatum) -> Realization:
    """dim 2n - rank; b(x_i) is the i-th coordinate functional, a(x_i) = (row i of A | kernel filler)."""
    n = d.n
    r = la.rank(d.matrix)
    dim = 2 * n - r
    bvec = tuple(tuple(Fraction(1 if j == i else 0) for j in range(dim)) for i in range(n))
    filler = la.left_nullspace(d.matrix)  # (n - r) rows y with y A = 0
    avec = []
    for i in range(n):
        avec.append(tuple(d.matrix[i]) + tuple(row[i] for row in filler))
    real = Realization(dim, tuple(avec), bvec)
    real.check(d)
    return real


def realize(v: RootDatumVertex, r: Realization) -> tuple[tuple, tuple]:
    """(a_v(x) in h, b_v(x) in h*) for every label."""
    return la.matmul(v.Avec, r.avec), la.matmul(v.B, r.bvec)


def weyl_vector(v: RootDatumVertex, r: Realization) -> tuple:
    """Minimal-norm rho with 2 <rho, a_v(x)> = a_xx at the vertex."""
    a_rows, _ = realize(v, r)
    rhs = tuple(v.cartan[i, i] / 2 for i in range(v.n))
    gram = la.matmul(a_rows, la.transpose(a_rows))
    coeffs = la.solve(gram, rhs)
    if coeffs is None:
        raise InternalError("Weyl vector system is inconsistent")
    return tuple(Fraction(t) for t in la.vecmat(coeffs, a_rows))


def empty_vertex() -> RootDatumVertex:
    return RootDatumVertex((), (), (), CartanDatum((), (), ()), ())


def _block(m1, m2, n1, n2, zero):
    rows = [tuple(row) + (zero,) * n2 for row in m1]
    rows += [(zero,) * n1 + tuple(row) for row in m2]
    return tuple(rows)


def direct_sum(v1: RootDatumVertex, v2: RootDatumVertex) -> RootDatumVertex:
    clash = set(v1.base.labels) & set(v2.base.labels)
    if clash:
        raise ValueError(f"label clash: {sorted(clash)}")
    n1, n2 = v1.n, v2.n
    zero = Fraction(0)
    base = CartanDatum(
        _block(v1.base.matrix, v2.base.matrix, n1, n2, zero),
        v1.base.parity + v2.base.parity,
        v1.base.labels + v2.base.labels,
    )
    return RootDatumVertex(
        _block(v1.B, v2.B, n1, n2, 0),
        _block(v1.Avec, v2.Avec, n1, n2, zero),
        v1.parity + v2.parity,
        base,
        v1.word + tuple(n1 + i for i in v2.word),
    )
