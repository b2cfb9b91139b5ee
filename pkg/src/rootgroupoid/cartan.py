"""Cartan data (A, p) as standalone objects."""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from ._linalg import fmt, frac, mat, primitive
from .errors import DomainError, InternalError, ParseError

Label = Union[int, str]


@dataclass(frozen=True)
class CartanDatum:
    matrix: tuple
    parity: tuple
    labels: tuple

    def __post_init__(self):
        n = len(self.matrix)
        if any(len(row) != n for row in self.matrix):
            raise ValueError("Cartan matrix must be square")
        if len(self.parity) != n or len(self.labels) != n:
            raise ValueError("parity and labels must have one entry per row")
        if any(p not in (0, 1) for p in self.parity):
            raise ValueError("parity values must be 0 or 1")
        if len(set(self.labels)) != n:
            raise ValueError("labels must be distinct")
        for row in self.matrix:
            for x in row:
                if not isinstance(x, Fraction):
                    raise TypeError("Cartan entries must be Fractions")

    @classmethod
    def of(cls, rows, parity, labels=None) -> "CartanDatum":
        m = mat(rows)
        if labels is None:
            labels = tuple(f"x{i + 1}" for i in range(len(m)))
        return cls(m, tuple(int(p) for p in parity), tuple(str(l) for l in labels))

    @property
    def n(self) -> int:
        return len(self.matrix)

    def __getitem__(self, xy):
        x, y = xy
        return self.matrix[x][y]

    def index(self, x: Label) -> int:
        if isinstance(x, bool):
            raise TypeError("label must be an index or a name")
        if isinstance(x, int):
            if not 0 <= x < self.n:
                raise IndexError(f"label index {x} out of range 0..{self.n - 1}")
            return x
        try:
            return self.labels.index(x)
        except ValueError:
            raise KeyError(f"unknown label {x!r}; labels are {list(self.labels)}") from None

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "cartan": [[fmt(x) for x in row] for row in self.matrix],
            "parity": list(self.parity),
        }

    @classmethod
    def from_json(cls, obj) -> "CartanDatum":
        if isinstance(obj, str):
            try:
                obj = json.loads(obj)
            except json.JSONDecodeError as e:
                raise ParseError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
        if not isinstance(obj, dict):
            raise ParseError("Cartan datum must be a JSON object")
        for key in ("cartan", "parity"):
            if key not in obj:
                raise ParseError(f"missing field {key!r}")
        rows = obj["cartan"]
        if not isinstance(rows, list) or not rows:
            raise ParseError("field 'cartan': expected a nonempty list of rows")
        parsed = []
        for i, row in enumerate(rows):
            if not isinstance(row, list):
                raise ParseError(f"field 'cartan'[{i}]: expected a list")
            r = []
            for j, x in enumerate(row):
                if isinstance(x, float):
                    raise ParseError(f"field 'cartan'[{i}][{j}]: floats are not allowed, use \"p/q\"")
                try:
                    r.append(frac(x))
                except (TypeError, ValueError, ZeroDivisionError):
                    raise ParseError(f"field 'cartan'[{i}][{j}]: cannot parse {x!r} as a rational") from None
            parsed.append(tuple(r))
        parity = obj["parity"]
        if not isinstance(parity, list) or any(p not in (0, 1) or isinstance(p, bool) for p in parity):
            raise ParseError("field 'parity': expected a list of 0/1")
        labels = obj.get("labels")
        if labels is None:
            labels = [f"x{i + 1}" for i in range(len(parsed))]
        try:
            return cls(tuple(parsed), tuple(parity), tuple(str(l) for l in labels))
        except (ValueError, TypeError) as e:
            raise ParseError(str(e)) from None


@dataclass(frozen=True)
class DiagonalScaling:
    entries: tuple

    def __post_init__(self):
        if any(frac(x) == 0 for x in self.entries):
            raise ValueError("diagonal scaling entries must be nonzero")
        object.__setattr__(self, "entries", tuple(frac(x) for x in self.entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def apply(self, rows) -> tuple:
        return tuple(tuple(self.entries[i] * x for x in row) for i, row in enumerate(rows))

    def inverse(self) -> "DiagonalScaling":
        return DiagonalScaling(tuple(1 / x for x in self.entries))

    def compose(self, other: "DiagonalScaling") -> "DiagonalScaling":
        return DiagonalScaling(tuple(a * b for a, b in zip(self.entries, other.entries)))


@dataclass(frozen=True)
class Violation:
    x: int
    y: int

    def __bool__(self):
        return False


def is_reflectable(d: CartanDatum, x: Label) -> bool:
    i = d.index(x)
    axx = d[i, i]
    if axx == 0:
        return d.parity[i] == 1
    factor = 2 if d.parity[i] == 0 else 1
    for j in range(d.n):
        if j == i:
            continue
        q = factor * d[i, j] / axx
        if q.denominator != 1 or q > 0:
            return False
    return True


def is_isotropic(d: CartanDatum, x: Label) -> bool:
    i = d.index(x)
    return d[i, i] == 0 and d.parity[i] == 1


def is_locally_weakly_symmetric(d: CartanDatum) -> Union[bool, Violation]:
    for x in range(d.n):
        if not is_reflectable(d, x):
            continue
        for y in range(d.n):
            if y != x and d[x, y] == 0 and d[y, x] != 0:
                return Violation(x, y)
    return True


def d_equivalent(d1: CartanDatum, d2: CartanDatum) -> DiagonalScaling | None:
    """D with d2.A = D d1.A and equal parities, or None."""
    if d1.n != d2.n or d1.parity != d2.parity:
        return None
    entries = []
    for r1, r2 in zip(d1.matrix, d2.matrix):
        nz = next((j for j, x in enumerate(r1) if x != 0), None)
        if nz is None:
            if any(x != 0 for x in r2):
                return None
            entries.append(Fraction(1))
            continue
        ratio = r2[nz] / r1[nz]
        if ratio == 0 or any(b != ratio * a for a, b in zip(r1, r2)):
            return None
        entries.append(ratio)
    return DiagonalScaling(tuple(entries))


def d_class_key(d: CartanDatum) -> tuple:
    """Canonical representative of the D-equivalence class: each row scaled so its first nonzero entry is 1."""
    rows = []
    for row in d.matrix:
        nz = next((x for x in row if x != 0), None)
        rows.append(tuple(row) if nz is None else tuple(x / nz for x in row))
    return tuple(rows), d.parity


def is_symmetrizable(d: CartanDatum) -> DiagonalScaling | None:
    """D with D A symmetric, built along a spanning forest of the nonzero graph."""
    n = d.n
    for x in range(n):
        for y in range(x + 1, n):
            if (d[x, y] == 0) != (d[y, x] == 0):
                return None
    scale: list = [None] * n
    for root in range(n):
        if scale[root] is not None:
            continue
        scale[root] = Fraction(1)
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in range(n):
                if y == x or d[x, y] == 0 or scale[y] is not None:
                    continue
                # d_x a_xy = d_y a_yx
                scale[y] = scale[x] * d[x, y] / d[y, x]
                queue.append(y)
    for x in range(n):
        for y in range(x + 1, n):
            if scale[x] * d[x, y] != scale[y] * d[y, x]:
                return None
    return DiagonalScaling(tuple(scale))


def is_indecomposable(d: CartanDatum) -> bool:
    n = d.n
    if n <= 1:
        return True
    seen = {0}
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for y in range(n):
            if y not in seen and (d[x, y] != 0 or d[y, x] != 0):
                seen.add(y)
                queue.append(y)
    return len(seen) == n


def normalize_gcm(d: CartanDatum) -> tuple:
    """Divide row x by a_xx/2 so the diagonal becomes 2."""
    out = []
    for i, row in enumerate(d.matrix):
        if row[i] == 0:
            raise DomainError(f"row {d.labels[i]} is isotropic; no GCM normalization")
        h = row[i] / 2
        out.append(tuple(x / h for x in row))
    return tuple(out)


@dataclass(frozen=True)
class KacType:
    kind: str  # "FIN" | "AFF" | "IND"
    u: tuple | None = None


def _phase_one(rows, rhs) -> tuple | None:
    """A point x >= 0 with rows x = rhs, or None; two-phase simplex over Fractions, Bland's rule."""
    m, n = len(rows), len(rows[0])
    t = []
    for row, b in zip(rows, rhs):
        sgn = -1 if b < 0 else 1
        t.append([Fraction(sgn * x) for x in row] + [Fraction(int(i == len(t))) for i in range(m)] + [Fraction(sgn * b)])
    basis = list(range(n, n + m))
    # reduced costs of sum(artificials) in terms of the nonbasic columns
    cost = [-sum(r[j] for r in t) for j in range(n)] + [Fraction(0)] * m + [-sum(r[-1] for r in t)]
    while True:
        enter = next((j for j in range(n + m) if cost[j] < 0), None)
        if enter is None:
            break
        ratios = [(r[-1] / r[enter], basis[i], i) for i, r in enumerate(t) if r[enter] > 0]
        _, _, leave = min(ratios)
        piv = t[leave][enter]
        t[leave] = [x / piv for x in t[leave]]
        for i, r in enumerate(t):
            if i != leave and r[enter] != 0:
                f = r[enter]
                t[i] = [x - f * y for x, y in zip(r, t[leave])]
        f = cost[enter]
        cost = [x - f * y for x, y in zip(cost, t[leave])]
        basis[leave] = enter
    if cost[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, j in enumerate(basis):
        if j < n:
            x[j] = t[i][-1]
    return tuple(x)


def _lp_witness(a: Sequence[Sequence], mode: str) -> tuple | None:
    """Exact feasibility: u >= 1 with Au >= 1 ("pos"), Au = 0 ("zero") or Au <= -1 ("neg")."""
    n = len(a)
    # u = 1 + x with x >= 0; inequalities get a surplus or slack column
    rows, rhs = [], []
    for k, row in enumerate(a):
        slack = [0] * n
        if mode != "zero":
            slack[k] = -1 if mode == "pos" else 1
        rows.append(list(row) + slack)
        shift = sum(row)
        rhs.append({"pos": 1, "zero": 0, "neg": -1}[mode] - shift)
    sol = _phase_one(rows, rhs)
    if sol is None:
        return None
    u = tuple(1 + t for t in sol[:n])
    au = [sum(x * y for x, y in zip(row, u)) for row in a]
    ok = all(t >= 1 for t in u) and {
        "pos": all(t >= 1 for t in au),
        "zero": all(t == 0 for t in au),
        "neg": all(t <= -1 for t in au),
    }[mode]
    if not ok:
        raise InternalError(f"simplex returned an invalid witness {u} for mode {mode}")
    return u


def kac_vector_type(d: CartanDatum) -> KacType:
    """FIN / AFF(u) / IND(u) for a purely anisotropic, fully reflectable, indecomposable datum."""
    if any(d[i, i] == 0 for i in range(d.n)):
        raise DomainError("datum is not purely anisotropic")
    if not all(is_reflectable(d, x) for x in range(d.n)):
        raise DomainError("datum is not fully reflectable")
    if not is_indecomposable(d):
        raise DomainError("datum is decomposable")
    a = normalize_gcm(d)
    fin = _lp_witness(a, "pos")
    aff = _lp_witness(a, "zero")
    ind = _lp_witness(a, "neg")
    found = [w is not None for w in (fin, aff, ind)]
    if sum(found) != 1:
        raise DomainError(f"trichotomy failed: feasibility pattern {found}")
    if fin is not None:
        return KacType("FIN", primitive(fin))
    if aff is not None:
        return KacType("AFF", primitive(aff))
    return KacType("IND", primitive(ind))
