"""Groups attached to a component: K(v), Sk^D(v), Sp^D(v) and Aut/K = W ⋊ Sp^D."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from . import _linalg as la
from .cartan import d_equivalent
from .errors import DomainError, InternalError
from .rootdatum import Realization, apply_word, standard_realization
from .skeleton import SkeletonGraph
from .weyl import PrincipalRoots, WeylElement, act, coxeter_matrix, element, principal_roots, reduced_word


@dataclass(frozen=True)
class SkDElement:
    vertex: int
    word: tuple


def skd_elements(g: SkeletonGraph) -> list:
    base = g.base.cartan
    return [SkDElement(i, v.word) for i, v in enumerate(g.vertices) if d_equivalent(base, v.cartan) is not None]


def skd_multiply(g: SkeletonGraph, e1: SkDElement, e2: SkDElement) -> SkDElement:
    """Replay e2's path from the base starting at e1's vertex."""
    try:
        target = apply_word(g.vertices[e1.vertex], e2.word)
    except DomainError as e:
        raise InternalError(f"namesake path failed: {e}") from None
    idx = g.index_of(target)
    if idx is None:
        raise IndexError("product lies outside the explored region")
    if d_equivalent(g.base.cartan, g.vertices[idx].cartan) is None:
        raise InternalError("product of Sk^D elements left Sk^D")
    return SkDElement(idx, g.vertices[idx].word)


def spd_subgroup(g: SkeletonGraph, sp: SkeletonGraph, ps: PrincipalRoots | None = None) -> list:
    """Spine vertices D-equivalent to the base, checked to meet W only in the identity."""
    ps = ps or principal_roots(sp)
    base = sp.base.cartan
    out = []
    for i, v in enumerate(sp.vertices):
        if d_equivalent(base, v.cartan) is None:
            continue
        out.append(SkDElement(i, v.word))
        if i == 0:
            continue
        # v = w(base) would force w = B_v^T; such a w must have a descent path to 1
        m = WeylElement(la.transpose(v.B))
        try:
            reduced_word(m, ps, budget=200)
        except DomainError:
            continue
        raise InternalError(f"spine vertex {i} is a Weyl image of the base")
    return out


def k_dimension(r: Realization) -> int:
    """dim of {(N, mu): b(x) N = 0, N a(x) = mu_x a(x)}; theta = 1 + N."""
    d, n = r.dim, len(r.avec)
    if la.rank(r.avec) != n or la.rank(r.bvec) != n:
        raise ValueError("realization vectors are not linearly independent")
    nvars = d * d + n
    rows = []
    for x in range(n):
        for j in range(d):
            row = [0] * nvars
            for i in range(d):
                row[i * d + j] = r.bvec[x][i]
            rows.append(row)
    for x in range(n):
        a = r.avec[x]
        for i in range(d):
            row = [0] * nvars
            for j in range(d):
                row[i * d + j] = a[j]
            row[d * d + x] = -a[i]
            rows.append(row)
    return nvars - la.rank(rows)


def weyl_elements(ps: PrincipalRoots, cap: int = 5000) -> list | None:
    """All elements (with words) of a finite W, or None once more than cap turn up."""
    n = ps.base.n
    ident = WeylElement.identity(n)
    seen = {ident.matrix: ident}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for i in range(len(ps)):
            nw = w * element(ps, (i,))
            if nw.matrix not in seen:
                if len(seen) >= cap:
                    return None
                seen[nw.matrix] = nw
                queue.append(nw)
    return list(seen.values())


def unipotent_witness(ps: PrincipalRoots, max_len: int = 4) -> tuple | None:
    """A word w != 1 with (w - 1) nilpotent; such an element has infinite order, so W is infinite."""
    n = ps.base.n
    eye = la.identity(n)
    zero = tuple((0,) * n for _ in range(n))
    for k in range(2, max_len + 1):
        for word in product(range(len(ps)), repeat=k):
            m = element(ps, word).matrix
            if m == eye:
                continue
            nil = tuple(tuple(a - b for a, b in zip(r, e)) for r, e in zip(m, eye))
            p = nil
            for _ in range(n - 1):
                p = la.matmul(p, nil)
            if p == zero:
                return word
    return None


@dataclass
class AutReport:
    principal_roots: list
    coxeter: tuple
    weyl_order: int | None
    weyl_certainty: str
    spd_order: int
    spd_certainty: str
    skd_order: int
    skd_certainty: str
    k_dimension: int | None
    k_realization: str
    direct_product_flag: bool
    statement: str
    notes: list

    def _weyl_order_text(self):
        if self.weyl_order is not None:
            return self.weyl_order
        return "infinite" if self.weyl_certainty == "exact" else "infinite or beyond budget"

    @property
    def skd_structure(self) -> str:
        exact = self.skd_certainty == "exact" and self.weyl_order is not None
        if exact:
            return f"W ⋊ Sp^D ({self.skd_order} = {self.weyl_order} * {self.spd_order})"
        return "W ⋊ Sp^D"

    def to_json(self) -> dict:
        skd = self.skd_order if self.skd_certainty == "exact" else f">={self.skd_order} (budget)"
        spd = self.spd_order if self.spd_certainty == "exact" else f">={self.spd_order} (budget)"
        return {
            "statement": self.statement,
            "direct_product_flag": self.direct_product_flag,
            "weyl": {
                "principal_roots": [list(r) for r in self.principal_roots],
                "coxeter_matrix": [list(r) for r in self.coxeter],
                "order": self._weyl_order_text(),
                "certainty": self.weyl_certainty,
            },
            "spD": {"order": spd, "certainty": self.spd_certainty},
            "skD": {"structure": self.skd_structure, "order": skd, "certainty": self.skd_certainty},
            "k_dimension": self.k_dimension,
            "k_realization": self.k_realization,
            "notes": list(self.notes),
        }


def aut_report(g: SkeletonGraph, sp: SkeletonGraph, r: Realization | None = None) -> AutReport:
    ps = principal_roots(sp)
    cm = coxeter_matrix(ps)
    notes = []
    if cm.violations:
        notes.append("coxeter violations: " + "; ".join(cm.violations))
    spd = spd_subgroup(g, sp, ps)
    skd = skd_elements(g)
    spd_cert = "exact" if sp.complete else "budgeted"
    skd_cert = "exact" if g.complete else "budgeted"
    ws = weyl_elements(ps) if ps.complete else None
    w_order = None if ws is None else len(ws)
    w_cert = "exact" if ws is not None else "budgeted"
    if ws is None and ps.complete and (any(0 in row for row in cm.m) or unipotent_witness(ps) is not None):
        w_cert = "exact"  # an element of infinite order is already in hand
    if r is None:
        r = standard_realization(g.datum)
        k_kind = "standard minimal realization"
    else:
        r.check(g.datum)
        k_kind = "supplied realization"
    kdim = k_dimension(r)
    flag = len(spd) == 1
    if flag:
        statement = "Aut = W × K" if kdim > 0 else "Aut = W"
    else:
        statement = "Aut/K = W ⋊ Sp^D"
    if g.complete and w_order is not None and w_order * len(spd) != len(skd):
        raise InternalError(f"|W| |Sp^D| = {w_order} * {len(spd)} differs from |Sk^D| = {len(skd)}")
    if g.datum.n == 1 and g.datum[0, 0] == 0:
        notes.append("rank-1 isotropic: the tautological -1 component of Aut is invisible at lattice level")
    if spd_cert == "budgeted" and flag:
        notes.append("Sp^D triviality holds on the explored spine only")
    return AutReport(
        [r_.vector for r_ in ps.roots], cm.m, w_order, w_cert, len(spd), spd_cert, len(skd), skd_cert,
        kdim, k_kind, flag, statement, notes,
    )


def check_group_structure(g: SkeletonGraph, sp: SkeletonGraph) -> dict:
    """Exhaustive check of the group law on Sk^D and of Sk^D = W x| Sp^D (finite complete skeleta)."""
    if not g.complete or not sp.complete:
        raise DomainError("group-table check needs complete skeleton and spine")
    ps = principal_roots(sp)
    elems = skd_elements(g)
    idx = {e.vertex: e for e in elems}
    table = {}
    for a, b in product(elems, repeat=2):
        c = skd_multiply(g, a, b)
        if c.vertex not in idx:
            raise InternalError("Sk^D is not closed")
        table[a.vertex, b.vertex] = c.vertex
    ident = 0
    for a in elems:
        if table[ident, a.vertex] != a.vertex or table[a.vertex, ident] != a.vertex:
            raise InternalError("base is not an identity")
        if not any(table[a.vertex, b.vertex] == ident for b in elems):
            raise InternalError("missing inverse")
    for a, b, c in product(idx, repeat=3):
        if table[table[a, b], c] != table[a, table[b, c]]:
            raise InternalError("Sk^D law is not associative")
    ws = weyl_elements(ps)
    if ws is None:
        raise DomainError("Weyl group too large for an exhaustive check")
    w_image = {}
    for w in ws:
        u = g.index_of(act(w, ps, g.base))
        if u is None or u not in idx:
            raise InternalError("W(base) is not inside Sk^D")
        if u in w_image:
            raise InternalError("W does not act freely")
        w_image[u] = w
    for w1, w2 in product(ws, repeat=2):
        u1, u2 = g.index_of(act(w1, ps, g.base)), g.index_of(act(w2, ps, g.base))
        if table[u1, u2] != g.index_of(act(w1 * w2, ps, g.base)):
            raise InternalError("W -> Sk^D is not a homomorphism")
    for a in idx:
        inv = next(b for b in idx if table[a, b] == ident)
        for w in w_image:
            if table[table[a, w], inv] not in w_image:
                raise InternalError("W is not normal in Sk^D")
    spine_keys = {v.key for v in sp.vertices}
    spd = [a for a in idx if g.vertices[a].key in spine_keys]
    for a, b in product(spd, repeat=2):
        if table[a, b] not in spd:
            raise InternalError("Sp^D is not closed")
    if set(spd) & set(w_image) != {ident}:
        raise InternalError("W meets Sp^D nontrivially")
    factor = {}
    for w, s in product(w_image, spd):
        prod = table[w, s]
        if prod in factor:
            raise InternalError("factorization w s is not unique")
        factor[prod] = (w, s)
    if set(factor) != set(idx):
        raise InternalError("W Sp^D does not exhaust Sk^D")
    return {"skd": len(elems), "w": len(ws), "spd": len(spd)}
