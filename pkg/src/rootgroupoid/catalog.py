"""Named root data used as regression corpus and as CLI inputs.

Each expected fact records whether it is a published reference value ("reference") or was obtained
by running an independent computation and freezing the result ("computed").
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Callable

from ._linalg import fmt, frac, mat
from .cartan import CartanDatum
from .rootdatum import Realization


@dataclass(frozen=True)
class Fact:
    value: object
    origin: str  # "reference" | "computed"


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    datum: CartanDatum
    realization: Realization | None = None
    facts: dict = field(default_factory=dict)
    description: str = ""

    @property
    def cartan(self):
        return self.datum.matrix

    def to_json(self) -> dict:
        out = {"name": self.name, "description": self.description, **self.datum.to_json()}
        if self.realization is not None:
            out["realization"] = self.realization.to_json()
        out["facts"] = {k: {"value": f.value, "origin": f.origin} for k, f in sorted(self.facts.items())}
        return out


def _ref(v):
    return Fact(v, "reference")


def _comp(v):
    return Fact(v, "computed")


def gl_form(k: int, l: int) -> tuple:
    """(alpha_i|alpha_j) for eps_1 - eps_2, ..., with (eps_i|eps_i) = +1 for i <= k and -1 after."""
    s = [1] * k + [-1] * l
    n = k + l - 1
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j == i:
                row.append(s[i] + s[i + 1])
            elif j == i + 1:
                row.append(-s[i + 1])
            elif j == i - 1:
                row.append(-s[i])
            else:
                row.append(0)
        rows.append(row)
    parity = tuple(int(s[i] != s[i + 1]) for i in range(n))
    return rows, parity


def affine_gl_form(k: int, l: int) -> tuple:
    """Cyclic version: labels x0..x_{n-1} with x_{n-1} joining eps_n back to eps_1."""
    s = [1] * k + [-1] * l
    n = k + l
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        nxt = (i + 1) % n
        rows[i][i] = s[i] + s[nxt]
        rows[i][nxt] = -s[nxt]
        rows[i][(i - 1) % n] = -s[i]
    parity = tuple(int(s[i] != s[(i + 1) % n]) for i in range(n))
    return rows, parity


def s21_matrix(b) -> tuple:
    b = frac(b)
    return ((0, b, 1 - b), (-b, 0, 1 + b), (-1, -1, 2))


def _gl(k: int, l: int) -> CatalogEntry:
    name = f"gl({k}|{l})"
    if k < 1 or l < 1:
        raise KeyError(f"{name}: both parts must be positive")
    if (k, l) == (1, 1):
        return CatalogEntry(
            name, CartanDatum.of([[0]], [1]), None,
            {"skeleton_size": _comp(2), "uniqueness": _ref("Gl11"), "type": _ref("Fin")},
            "rank-1 isotropic datum",
        )
    if (k, l) == (1, 2):
        d = CartanDatum.of([[0, -1], [-1, 2]], [1, 0], ["1", "2"])
        # h = span(e, h1, h2), h* = span(eps, delta1, delta2)
        r = Realization(3, mat([[-1, -1, 0], [0, 1, -1]]), mat([[1, -1, 0], [0, 1, -1]]))
        facts = {
            "skeleton_size": _comp(6), "spine_size": _ref(3), "weyl_order": _ref(2), "skd_order": _comp(2),
            "type": _comp("Fin"), "uniqueness": _ref("Unique"), "aut": _ref("Aut = W"),
            "v1": _ref({"a": [[1, 1, 0], [-1, 0, -1]], "b": [[-1, 1, 0], [1, 0, -1]], "p": [1, 1]}),
            "v2": _ref({"a": [[0, 1, -1], [1, 0, 1]], "b": [[0, 1, -1], [-1, 0, 1]], "p": [0, 1]}),
        }
        return CatalogEntry(name, d, r, facts, "gl(1|2) with the three-dimensional realization")
    rows, parity = gl_form(k, l)
    skd = math.factorial(k) * math.factorial(l) * (2 if k == l else 1)
    facts = {"skd_order": _ref(skd), "weyl_order": _comp(math.factorial(k) * math.factorial(l)), "type": _comp("Fin")}
    if (k, l) == (2, 2):
        facts.update({"skeleton_size": _comp(24), "spd_order": _comp(2)})
    if (k, l) == (1, 3):
        facts.update({"skeleton_size": _comp(24)})
    return CatalogEntry(name, CartanDatum.of(rows, parity), None, facts, f"A({k - 1}|{l - 1}) from the gl({k}|{l}) form")


def _a(m: int, n: int) -> CatalogEntry:
    e = _gl(m + 1, n + 1)
    return CatalogEntry(f"A({m}|{n})", e.datum, e.realization, e.facts, e.description)


def _sl_affine(k: int, l: int) -> CatalogEntry:
    if k + l < 3 or k < 0 or l < 0:
        raise KeyError(f"sl({k}|{l})-affine needs k + l >= 3")
    rows, parity = affine_gl_form(k, l)
    labels = [f"x{i}" for i in range(k + l)]
    facts = {"type": _ref("Aff"), "delta": _ref([1] * (k + l))}
    if k == l:
        facts["uniqueness"] = _ref("AffKernel")
    return CatalogEntry(
        f"sl({k}|{l})-affine", CartanDatum.of(rows, parity, labels), None, facts,
        "cyclic tridiagonal datum with zero row sums",
    )


def _s21b(b) -> CatalogEntry:
    b = frac(b)
    if b == 0:
        raise KeyError("S21b(b) needs b != 0")
    d = CartanDatum.of(s21_matrix(b), [1, 1, 0], ["x1", "x2", "x0"])
    admissible = b.denominator != 1
    facts = {"admissible": _ref(admissible)}
    if admissible:
        facts.update({"type": _ref("Aff"), "delta": _ref([1, 1, 1]), "uniqueness": _ref("Unique"), "aut": _ref("Aut = W × K")})
    return CatalogEntry(f"S21b({fmt(b)})", d, None, facts, "one-parameter deformation of the affine sl(2|1) datum")


def _nonreflectable(s: int) -> CatalogEntry:
    if s < 0:
        raise KeyError("nonreflectable(s) needs s >= 0")
    d = CartanDatum.of([[0, -s], [-s, 1]], [1, 1], ["x", "y"])
    facts = {"y_reflectable_after_x": _ref(s in (0, 1))}
    return CatalogEntry(f"nonreflectable({s})", d, None, facts, "odd anisotropic y next to an isotropic x")


def _osp(n: int) -> CatalogEntry:
    if n < 1:
        raise KeyError("osp(1|2n) needs n >= 1")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
        if i + 1 < n:
            rows[i][i + 1] = -1
            rows[i + 1][i] = -1
    if n >= 2:
        rows[n - 1][n - 2] = -2
    parity = [0] * (n - 1) + [1]
    return CatalogEntry(
        f"osp(1|{2 * n})", CartanDatum.of(rows, parity), None, {"type": _ref("Fin"), "uniqueness": _ref("Unique")},
        "odd cousin of B_n",
    )


_FIXED: dict[str, Callable[[], CatalogEntry]] = {
    "q3-2": lambda: CatalogEntry(
        "q3-2", CartanDatum.of([[0, -1, 1], [-1, 0, 1], [1, -1, 0]], [1, 1, 1]), None,
        {
            "spine_size": _ref(4), "principal_roots": _ref([[1, 1, 0], [1, 0, 1], [0, 1, 1]]),
            "coxeter_offdiagonal": _ref(3), "aut": _ref("Aut = W × K"), "k_dimension": _ref(1),
            "spd_order": _ref(1), "type": _ref("Aff"), "uniqueness": _ref("AffKernel"),
            "leaves": _ref([
                [[0, -1, 1], [1, -2, 1], [-1, -1, 2]],
                [[-2, 1, 1], [1, 0, -1], [1, 1, -2]],
                [[2, -1, -1], [-1, 2, -1], [-1, 1, 0]],
            ]),
        },
        "twisted affinization of psq(3)",
    ),
    "sl21-affine": lambda: CatalogEntry(
        "sl21-affine", CartanDatum.of([[0, -1, 1], [-1, 0, 1], [-1, -1, 2]], [1, 1, 0], ["x1", "x2", "x0"]), None,
        {"type": _ref("Aff"), "delta": _ref([1, 1, 1]), "uniqueness": _comp("Unique")},
        "affine sl(2|1) datum with zero row sums",
    ),
    "sl21-affine-printed": lambda: CatalogEntry(
        "sl21-affine-printed", CartanDatum.of([[0, -1, -1], [-1, 0, -1], [-1, -1, 2]], [1, 1, 0], ["x1", "x2", "x0"]),
        None, {"skeleton_size": _comp(10)},
        "the sign pattern as typeset; it is not the affine datum (kept to pin its behaviour)",
    ),
    "A2": lambda: CatalogEntry(
        "A2", CartanDatum.of([[2, -1], [-1, 2]], [0, 0]), None,
        {"type": _ref("Fin"), "skeleton_size": _comp(6), "weyl_order": _ref(6), "k_dimension": _ref(0)},
        "finite type A_2",
    ),
    "A1^(1)": lambda: CatalogEntry(
        "A1^(1)", CartanDatum.of([[2, -2], [-2, 2]], [0, 0]), None,
        {"type": _ref("Aff"), "delta": _ref([1, 1]), "k_dimension": _ref(1)},
        "affine type A_1^(1)",
    ),
    "hyperbolic": lambda: CatalogEntry(
        "hyperbolic", CartanDatum.of([[2, -3], [-3, 2]], [0, 0]), None,
        {"type": _ref("Ind"), "k_dimension": _ref(0)},
        "indefinite rank-2 GCM",
    ),
}

_PATTERNS = [
    (re.compile(r"^gl\((\d+)\|(\d+)\)$"), lambda m: _gl(int(m[1]), int(m[2]))),
    (re.compile(r"^A\((\d+)\|(\d+)\)$"), lambda m: _a(int(m[1]), int(m[2]))),
    (re.compile(r"^sl\((\d+)\|(\d+)\)-affine$"), lambda m: _sl_affine(int(m[1]), int(m[2]))),
    (re.compile(r"^S21b\((-?\d+(?:/\d+)?)\)$"), lambda m: _s21b(m[1])),
    (re.compile(r"^nonreflectable\((\d+)\)$"), lambda m: _nonreflectable(int(m[1]))),
    (re.compile(r"^osp\(1\|(\d+)\)$"), lambda m: _osp_even(int(m[1]))),
]


def _osp_even(two_n: int) -> CatalogEntry:
    if two_n % 2:
        raise KeyError("osp(1|m) needs m even")
    return _osp(two_n // 2)


_LISTED = [
    "A(0|1)", "A(1|1)", "A(0|2)", "A1^(1)", "A2", "S21b(1/2)", "S21b(2)", "S21b(-1/3)",
    "gl(1|1)", "gl(1|2)", "gl(1|3)", "gl(2|2)", "hyperbolic", "nonreflectable(0)", "nonreflectable(1)",
    "nonreflectable(2)", "nonreflectable(3)", "osp(1|2)", "osp(1|4)", "osp(1|6)", "q3-2", "sl(2|1)-affine",
    "sl(2|2)-affine", "sl(3|1)-affine", "sl21-affine", "sl21-affine-printed",
]


def get(name: str) -> CatalogEntry:
    name = name.strip()
    if name in _FIXED:
        return _FIXED[name]()
    for pat, make in _PATTERNS:
        m = pat.match(name)
        if m:
            try:
                return make(m)
            except (ValueError, ZeroDivisionError) as e:
                raise KeyError(f"bad parameter in {name!r}: {e}") from None
    raise KeyError(f"unknown catalog entry {name!r}; available: {', '.join(list())}; "
                   "parameterized: gl(k|l), A(m|n), sl(k|l)-affine, S21b(b), nonreflectable(s), osp(1|2n)")


def list() -> list:  # noqa: A001 - the public name is part of the interface
    return sorted(_LISTED)
