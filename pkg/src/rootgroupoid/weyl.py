"""Weyl group of a component as integer matrices acting on the base root lattice."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg as la
from .cartan import is_reflectable
from .errors import DomainError, InternalError
from .rootdatum import RootDatumVertex, apply_word, base_vertex, reflect
from .skeleton import SkeletonGraph

ISO, AN, NR = "isotropic", "anisotropic", "nonreflectable"


@dataclass(frozen=True)
class RealRoot:
    vector: tuple
    kind: str
    coroot: tuple | None = None  # base coroot coordinates, anisotropic only
    functional: tuple | None = None  # beta -> <beta, coroot> on base root coordinates
    vertex: int = 0  # witness vertex index in the graph it was read from
    word: tuple = ()  # reflexion word from the base to the witness vertex
    label: int = 0
    certain: bool = True

    def pair(self, beta) -> Fraction:
        return la.dot(self.functional, beta)

    def to_json(self, labels) -> dict:
        out = {
            "vector": list(self.vector),
            "kind": self.kind,
            "witness": {"vertex": self.vertex, "word": [labels[i] for i in self.word], "label": labels[self.label]},
        }
        if self.coroot is not None:
            out["coroot"] = [la.fmt(t) for t in self.coroot]
        if self.kind == NR:
            out["certain"] = self.certain
        return out


def _simple_root(u: RootDatumVertex, idx: int, x: int) -> RealRoot:
    d = u.cartan
    alpha = u.B[x]
    if not is_reflectable(d, x):
        return RealRoot(alpha, NR, vertex=idx, word=u.word, label=x)
    if d[x, x] == 0:
        return RealRoot(alpha, ISO, vertex=idx, word=u.word, label=x)
    coroot = tuple(2 * t / d[x, x] for t in u.Avec[x])
    functional = la.vecmat(coroot, u.base.matrix)
    return RealRoot(alpha, AN, coroot, functional, idx, u.word, x)


def enumerate_real_roots(g: SkeletonGraph) -> list:
    """Simple roots over every explored vertex, deduplicated by vector (discovery order)."""
    found: dict = {}
    for idx, u in enumerate(g.vertices):
        for x in range(u.n):
            r = _simple_root(u, idx, x)
            old = found.get(r.vector)
            if old is None:
                found[r.vector] = r
                continue
            if old.kind != r.kind:
                raise InternalError(f"root {r.vector} has kinds {old.kind} and {r.kind}")
            if r.kind == AN and old.coroot != r.coroot:
                raise InternalError(f"root {r.vector} has two coroots")
    out = []
    for vec, r in found.items():
        if r.kind == NR:
            neg = tuple(-t for t in vec)
            if neg in found:
                raise InternalError(f"nonreflectable simple root {vec} has its negative among real roots")
            r = RealRoot(r.vector, NR, vertex=r.vertex, word=r.word, label=r.label, certain=g.complete)
        out.append(r)
    return out


@dataclass(frozen=True)
class PrincipalRoots:
    roots: tuple
    complete: bool
    base: RootDatumVertex

    def __len__(self):
        return len(self.roots)

    def __getitem__(self, i):
        return self.roots[i]

    def index_of(self, vector) -> int | None:
        for i, r in enumerate(self.roots):
            if r.vector == tuple(vector):
                return i
        return None


def principal_roots(sp: SkeletonGraph) -> PrincipalRoots:
    """Anisotropic simple roots at the explored spine vertices."""
    seen: dict = {}
    for idx, u in enumerate(sp.vertices):
        for x in range(u.n):
            r = _simple_root(u, idx, x)
            if r.kind == AN and r.vector not in seen:
                seen[r.vector] = r
    return PrincipalRoots(tuple(seen.values()), sp.complete, sp.base)


@dataclass(frozen=True)
class WeylElement:
    matrix: tuple
    word: tuple | None = None

    @classmethod
    def identity(cls, n: int) -> "WeylElement":
        return cls(la.identity(n), ())

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        word = None if self.word is None or other.word is None else self.word + other.word
        return WeylElement(la.matmul(self.matrix, other.matrix), word)

    def __call__(self, beta) -> tuple:
        return la.matvec(self.matrix, beta)

    def inverse(self) -> "WeylElement":
        inv = la.inverse(self.matrix)
        m = tuple(tuple(int(t) for t in row) for row in inv)
        return WeylElement(m, None if self.word is None else tuple(reversed(self.word)))

    @property
    def is_identity(self) -> bool:
        return self.matrix == la.identity(len(self.matrix))


def reflection(alpha: RealRoot) -> WeylElement:
    if alpha.kind != AN:
        raise ValueError(f"reflection needs an anisotropic root, got {alpha.kind}")
    n = len(alpha.vector)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            t = (1 if i == j else 0) - alpha.vector[i] * alpha.functional[j]
            if Fraction(t).denominator != 1:
                raise InternalError(f"reflection in {alpha.vector} is not integral")
            row.append(int(t))
        rows.append(tuple(row))
    return WeylElement(tuple(rows))


def generator(ps: PrincipalRoots, i: int) -> WeylElement:
    return WeylElement(reflection(ps[i]).matrix, (i,))


def element(ps: PrincipalRoots, word) -> WeylElement:
    w = WeylElement.identity(ps.base.n)
    for i in word:
        w = w * generator(ps, i)
    return w


@dataclass(frozen=True)
class CoxeterMatrix:
    m: tuple  # 0 stands for infinity
    violations: tuple = ()
    complete: bool = True

    def to_json(self) -> dict:
        return {"matrix": [list(r) for r in self.m], "infinity_sentinel": 0, "complete": self.complete, "violations": list(self.violations)}


def _order(w: WeylElement, cap: int = 12) -> int | None:
    n = len(w.matrix)
    eye = la.identity(n)
    p = w.matrix
    for k in range(1, cap + 1):
        if p == eye:
            return k
        p = la.matmul(p, w.matrix)
    return None


def coxeter_matrix(ps: PrincipalRoots) -> CoxeterMatrix:
    gens = [reflection(r) for r in ps.roots]
    k = len(gens)
    m = [[1] * k for _ in range(k)]
    violations = []
    for i in range(k):
        for j in range(i + 1, k):
            order = _order(gens[i] * gens[j])
            if order is None:
                val = 0
            else:
                val = order
                if order not in (2, 3, 4, 6):
                    violations.append(f"m[{i}][{j}] = {order}")
            m[i][j] = m[j][i] = val
    return CoxeterMatrix(tuple(tuple(r) for r in m), tuple(violations), ps.complete)


def _nonpositive(v) -> bool:
    return all(t <= 0 for t in v) and any(t != 0 for t in v)


def _nonnegative(v) -> bool:
    return all(t >= 0 for t in v) and any(t != 0 for t in v)


def reduced_word(w: WeylElement, ps: PrincipalRoots, budget: int = 10000) -> tuple:
    """Reduced word over principal generators by greedy descent: peel s_i whenever w(alpha_i) < 0."""
    gens = [reflection(r) for r in ps.roots]
    cur = w.matrix
    n = len(cur)
    eye = la.identity(n)
    peeled = []
    while cur != eye:
        if len(peeled) >= budget:
            raise DomainError("descent budget exhausted; element may not lie in the Weyl group")
        for i, r in enumerate(ps.roots):
            if _nonpositive(la.matvec(cur, r.vector)):
                cur = la.matmul(cur, gens[i].matrix)
                peeled.append(i)
                break
        else:
            raise DomainError("no descent found: element is not generated by the principal reflections")
    return tuple(reversed(peeled))


def inversion_roots(word, ps: PrincipalRoots) -> list:
    """Roots s_{i1}...s_{i(m-1)} alpha_im along a word; these are Delta+ minus w(Delta+) when the word is reduced."""
    out = []
    prefix = WeylElement.identity(ps.base.n)
    for i in word:
        out.append(prefix(ps[i].vector))
        prefix = prefix * generator(ps, i)
    return out


def reflect_vertex(alpha: RealRoot, u: RootDatumVertex) -> RootDatumVertex:
    """s_alpha(u) by replaying the path witness -> u from the reflected witness."""
    start = apply_word(base_vertex(u.base), alpha.word)
    moved = reflect(start, alpha.label)
    try:
        return apply_word(moved, tuple(reversed(alpha.word)) + u.word)
    except DomainError as e:
        raise InternalError(f"namesake path is not reflectable: {e}") from None


def act(w: WeylElement, ps: PrincipalRoots, u: RootDatumVertex) -> RootDatumVertex:
    if w.word is None:
        raise ValueError("acting on vertices needs a word in the principal generators")
    out = u
    for i in reversed(w.word):
        out = reflect_vertex(ps[i], out)
    expect = tuple(w(row) for row in u.B)
    if out.B != expect:
        raise InternalError("namesake action disagrees with the matrix action on simple roots")
    return out


def weyl_act_on_skeleton(w: WeylElement, g: SkeletonGraph, u: int, ps: PrincipalRoots) -> int:
    target = act(w, ps, g.vertices[u])
    idx = g.index_of(target)
    if idx is None:
        raise IndexError("image lies outside the explored region")
    return idx


def flips_along(v: RootDatumVertex, word) -> dict:
    """Base-positive real roots turned negative along a path, mapped to their kind."""
    flips: dict = {}
    cur = v
    for x in word:
        kind = ISO if cur.cartan[x, x] == 0 else AN
        nxt = reflect(cur, x)
        alpha = nxt.B[x]
        if alpha in flips:
            del flips[alpha]
        else:
            flips[tuple(-t for t in alpha)] = kind
        cur = nxt
    return flips


def length(w: WeylElement, ps: PrincipalRoots) -> int:
    """Length computed by descent, cross-checked against the anisotropic roots flipped between v and w(v)."""
    word = reduced_word(w, ps)
    inv = inversion_roots(word, ps)
    winv = w.inverse()
    if len(set(inv)) != len(inv) or not all(_nonnegative(b) and _nonpositive(winv(b)) for b in inv):
        raise InternalError("descent produced a non-reduced word")
    wv = act(WeylElement(w.matrix, word), ps, ps.base)
    an_flips = [b for b, k in flips_along(ps.base, wv.word).items() if k == AN]
    if len(an_flips) != len(word):
        raise InternalError(f"length by descent {len(word)} differs from anisotropic flip count {len(an_flips)}")
    return len(word)


def decompose_skeleton_vertex(g: SkeletonGraph, ps: PrincipalRoots, u: int) -> tuple:
    """(w, v'') with v'' on the spine and g.vertices[u] = w(v''), by erasing anisotropic steps."""
    base = g.base
    word = list(g.vertices[u].word)
    gens = []
    while True:
        cur = base
        for i, x in enumerate(word):
            if cur.cartan[x, x] != 0:
                alpha = cur.B[x]
                k = ps.index_of(alpha)
                if k is None:
                    raise DomainError(f"principal root {alpha} not among the explored principal roots")
                gens.append(k)
                del word[i]
                break
            cur = reflect(cur, x)
        else:
            break
    spine_vertex = apply_word(base, word)
    w = element(ps, gens)
    if act(w, ps, spine_vertex).key != g.vertices[u].key:
        raise InternalError("decomposition does not reproduce the vertex")
    return w, spine_vertex
