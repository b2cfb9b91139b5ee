"""Fin / Aff / Ind trichotomy through the Q^{++} cone, and the root-algebra uniqueness table."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import _linalg as la
from .cartan import (
    CartanDatum, d_equivalent, is_indecomposable, is_isotropic, is_reflectable, is_symmetrizable, kac_vector_type,
)
from .errors import DomainError, InternalError
from .rootdatum import Realization, RootDatumVertex, relabel
from .skeleton import ExplorationLimits, Explorer, SkeletonGraph, check_admissibility, explore_spine

FIN, AFF, IND = "Fin", "Aff", "Ind"
CONE_ZERO, POSITIVE_KERNEL, KAC_LP, SIGMA, HEURISTIC = (
    "ConeZero", "PositiveKernel", "KacLP", "SigmaInvariantDelta", "Heuristic",
)


def _ip(h, r) -> Fraction:
    return sum((a * b for a, b in zip(h, r)), Fraction(0))


class ConeOverApprox:
    """{mu : h.mu >= 0 for every recorded h}, kept with its extreme rays by double description."""

    def __init__(self, n: int):
        self.n = n
        self.constraints: list = []
        self._seen: set = set()
        self.rays: list = []
        self.vertices_used = 0
        for i in range(n):
            e = tuple(int(i == j) for j in range(n))
            self._seen.add(e)
            self.constraints.append(e)
            self.rays.append(e)

    def _active(self, r) -> list:
        return [h for h in self.constraints if _ip(h, r) == 0]

    def add_constraint(self, h) -> None:
        if la.is_zero_vec(h):
            return
        h = la.primitive(h)
        if h in self._seen:
            return
        vals = [_ip(h, r) for r in self.rays]
        pos = [r for r, s in zip(self.rays, vals) if s > 0]
        zero = [r for r, s in zip(self.rays, vals) if s == 0]
        neg = [(r, s) for r, s in zip(self.rays, vals) if s < 0]
        new = pos + zero
        if neg:
            active = {r: self._active(r) for r in self.rays}
            for p, sp in zip(self.rays, vals):
                if sp <= 0:
                    continue
                ap = set(active[p])
                for q, sq in neg:
                    common = [c for c in active[q] if c in ap]
                    if len(common) < self.n - 2 or la.rank(common or [[0] * self.n]) != self.n - 2:
                        continue
                    combo = tuple(sp * b - sq * a for a, b in zip(p, q))
                    ray = la.primitive(combo)
                    if ray not in new:
                        new.append(ray)
        self._seen.add(h)
        self.constraints.append(h)
        for r in new:
            if any(_ip(c, r) < 0 for c in self.constraints):
                raise InternalError("double description produced a ray outside the cone")
        self.rays = sorted(set(new))

    def add_vertex(self, v: RootDatumVertex) -> None:
        """Q^+_v: mu = B^T c with c >= 0, i.e. the rows of (B^T)^{-1} are the facet normals."""
        for row in la.inverse(la.transpose(v.B)):
            self.add_constraint(row)
        self.vertices_used += 1

    def contains(self, mu) -> bool:
        return all(_ip(h, mu) >= 0 for h in self.constraints)

    @property
    def dim(self) -> int:
        return la.rank(self.rays) if self.rays else 0

    @property
    def is_zero(self) -> bool:
        return not self.rays

    @property
    def single_ray(self) -> tuple | None:
        return self.rays[0] if len(self.rays) == 1 else None

    def to_json(self) -> dict:
        return {
            "rays": [list(r) for r in self.rays],
            "dimension": self.dim,
            "constraints": len(self.constraints),
            "vertices_used": self.vertices_used,
        }


def compute_cone(g: SkeletonGraph) -> ConeOverApprox:
    cone = ConeOverApprox(g.datum.n)
    for v in g.vertices:
        cone.add_vertex(v)
    return cone


@dataclass
class ClassificationResult:
    type: str
    delta: tuple | None
    certificate: str
    notes: list = field(default_factory=list)
    complete: bool | None = False  # None when no exploration was needed
    cone: dict | None = None

    @property
    def heuristic(self) -> bool:
        return self.certificate == HEURISTIC

    def to_json(self) -> dict:
        out = {"type": self.type, "certificate": self.certificate, "complete": self.complete, "notes": list(self.notes)}
        if self.delta is not None:
            out["delta"] = list(self.delta)
        if self.cone is not None:
            out["cone"] = self.cone
        return out


def aij01_cycle(d: CartanDatum) -> bool:
    """Cyclic tridiagonal shape with a_{i,i+-1} = +-1 and zero row sums, up to row scaling."""
    n = d.n
    if n < 3:
        return False
    for i in range(n):
        prev, nxt = (i - 1) % n, (i + 1) % n
        s = abs(d[i, nxt])
        if s == 0:
            return False
        row = [t / s for t in d.matrix[i]]
        if any(row[j] != 0 for j in range(n) if j not in (i, prev, nxt)):
            return False
        if abs(row[prev]) != 1 or row[prev] + row[i] + row[nxt] != 0:
            return False
        if (d.parity[i] == 1) != (row[i] == 0):
            return False
    return True


def aij01_signature(d: CartanDatum) -> tuple | None:
    """(k, l) for sl(k|l)^(1) read off the odd labels around the cycle; None for q(n)^(2)."""
    signs = [1]
    for p in d.parity[:-1]:
        signs.append(-signs[-1] if p else signs[-1])
    if sum(d.parity) % 2:
        return None
    k = signs.count(1)
    return k, d.n - k


def _s21_matrix(b: Fraction) -> tuple:
    return ((0, b, 1 - b), (-b, 0, 1 + b), (-1, -1, 2))


def s21_parameter(d: CartanDatum) -> Fraction | None:
    """b with d D-equivalent to an even cyclic relabeling of A(b), or None."""
    if d.n != 3:
        return None
    for shift in range(3):
        perm = [(k + shift) % 3 for k in range(3)]
        e = relabel(d, perm)
        if e.parity != (1, 1, 0):
            continue
        d0 = e[0, 1] + e[0, 2]
        if e[0, 0] != 0 or d0 == 0:
            continue
        b = e[0, 1] / d0
        if b == 0:
            continue
        target = CartanDatum.of(_s21_matrix(b), (1, 1, 0), e.labels)
        if d_equivalent(target, e) is not None:
            return b
    return None


def _purely_anisotropic(d: CartanDatum) -> bool:
    return all(d[i, i] != 0 for i in range(d.n)) and all(is_reflectable(d, x) for x in range(d.n))


def classify(v: RootDatumVertex, lim: ExplorationLimits | None = None, window: int = 3) -> ClassificationResult:
    lim = lim or ExplorationLimits(max_vertices=2000)
    d = v.cartan
    if not is_indecomposable(d):
        raise DomainError("datum is decomposable")
    notes = []
    adm = check_admissibility(v, lim)
    if adm.status == "not_admissible":
        raise DomainError(f"not admissible: violation after word {[d.labels[i] for i in adm.word]}")
    if adm.status == "inconclusive":
        notes.append(f"admissibility inconclusive at budget ({len(adm.classes)} D-classes seen)")
    if _purely_anisotropic(d):
        kt = kac_vector_type(d)
        notes.append(f"Kac vector u = {list(kt.u)}")
        kind = {"FIN": FIN, "AFF": AFF, "IND": IND}[kt.kind]
        notes.append("exact LP on the normalized GCM; no exploration needed")
        return ClassificationResult(kind, kt.u if kind == AFF else None, KAC_LP, notes, None)
    return classify_by_cone(v, lim, window, notes)


def _sigma_family(d: CartanDatum) -> str | None:
    if aij01_cycle(d):
        return "cyclic shape with zero row sums: sum of simple roots is edge-invariant"
    b = s21_parameter(d)
    if b is not None and b.denominator != 1:
        return f"S(2|1,b) family with b = {la.fmt(b)}: sum of simple roots is edge-invariant"
    return None


def _positive_kernel_vector(d: CartanDatum) -> tuple | None:
    """Primitive delta > 0 with A delta = 0, when the kernel of A is one-dimensional."""
    ker = la.nullspace(d.matrix)
    if len(ker) != 1:
        return None
    vec = ker[0]
    if all(t < 0 for t in vec):
        vec = tuple(-t for t in vec)
    if not all(t > 0 for t in vec):
        return None
    return la.primitive(vec)


def _positive_kernel(v: RootDatumVertex, delta, lim: ExplorationLimits) -> str | None:
    """delta killed by every coroot and in Q^+ of every spine vertex (hence of the whole skeleton)."""
    if not la.is_zero_vec(la.matvec(v.base.matrix, delta)):
        return None
    sp = explore_spine(v, lim)
    if not sp.complete:
        return None
    for u in sp.vertices:
        c = la.solve(la.transpose(u.B), delta)
        if c is None or any(t < 0 for t in c):
            return None
    return f"A delta = 0 and delta >= 0 on all {len(sp)} spine vertices"


def spread(rays) -> Fraction:
    """Largest l1 distance between a normalized ray and the normalized centroid; 0 for a single ray."""
    if not rays:
        return Fraction(0)
    normed = [tuple(Fraction(t, sum(r)) for t in r) for r in rays]
    c = tuple(sum(col) / len(normed) for col in zip(*normed))
    return max(sum(abs(a - b) for a, b in zip(r, c)) for r in normed)


def _centroid_ray(rays) -> tuple:
    return la.primitive([sum(col) for col in zip(*rays)])


def classify_by_cone(
    v: RootDatumVertex, lim: ExplorationLimits | None = None, window: int = 3, notes=None, tol=Fraction(1, 20),
) -> ClassificationResult:
    """Level-by-level exploration feeding the double-description cone.

    Affine cones only converge to the delta ray, so Aff is certified from a candidate delta that is
    provably in Q^{++} (edge-invariant sum, or positive kernel over a complete spine) and is checked
    against the explored cone; without one the shrinking spread gives a heuristic verdict.
    """
    lim = lim or ExplorationLimits(max_vertices=2000)
    notes = list(notes or [])
    d = v.cartan
    ex = Explorer(v, lim)
    cone = ConeOverApprox(d.n)
    cone.add_vertex(v)
    added = 1
    stable, last_rays = 0, None
    sigma = _sigma_family(d)
    kernel = _positive_kernel_vector(d)
    kernel_why = None
    candidate = tuple([1] * d.n) if sigma is not None else kernel
    levels = 0
    while True:
        more = ex.run_level()
        levels += 1
        old = list(cone.constraints)
        for u in ex.vertices[added:]:
            cone.add_vertex(u)
        added = len(ex.vertices)
        # antitone: the new cone sits inside the previous one
        if any(_ip(h, r) < 0 for r in cone.rays for h in old):
            raise InternalError("cone grew when vertices were added")
        complete = not more and not ex.truncated
        if complete:
            if cone.is_zero:
                return _done(FIN, None, CONE_ZERO, notes, ex, cone)
            notes.append("complete exploration: the cone is exact")
            ray = cone.single_ray
            return _done(AFF if ray is not None else IND, ray, HEURISTIC, notes, ex, cone)
        if candidate is not None and levels >= window:
            if not cone.contains(candidate):
                if sigma is not None:
                    raise InternalError(f"edge-invariant sum {candidate} lies outside the explored cone")
                candidate = None
            elif sigma is not None:
                notes.append(sigma)
                return _done(AFF, candidate, SIGMA, notes, ex, cone)
            else:
                kernel_why = kernel_why or _positive_kernel(v, candidate, lim)
                if kernel_why is None:
                    candidate = None
                else:
                    notes.append(kernel_why)
                    return _done(AFF, candidate, POSITIVE_KERNEL, notes, ex, cone)
        if not more:
            break
        if cone.dim >= 2:
            stable = stable + 1 if cone.rays == last_rays else 0
            if stable >= window:
                notes.append(f"cone of dimension {cone.dim} unchanged for {window} levels")
                return _done(IND, None, HEURISTIC, notes, ex, cone)
        last_rays = cone.rays
    notes.append(f"exploration budget reached at {len(ex.vertices)} vertices")
    if cone.is_zero:
        return _done(FIN, None, HEURISTIC, notes, ex, cone)
    sp_ = spread(cone.rays)
    notes.append(f"cone spread {float(sp_):.4f} (affine threshold {float(tol)})")
    if sp_ <= tol:
        return _done(AFF, _centroid_ray(cone.rays), HEURISTIC, notes, ex, cone)
    return _done(IND, None, HEURISTIC, notes, ex, cone)


def _done(kind, delta, cert, notes, ex: Explorer, cone: ConeOverApprox) -> ClassificationResult:
    g = ex.graph()
    if cert == HEURISTIC:
        notes.append(f"budget used: {g.budget_used}")
    return ClassificationResult(kind, delta, cert, notes, g.complete, cone.to_json())


UNIQUE, GL11, AFF_KERNEL, SYM_AFF_ZERO, IND_NS = (
    "Unique", "Gl11", "AffKernel", "SymmetrizableAffRhoDeltaZero", "IndNonsymmetrizableUnknown",
)
_STATEMENTS = {
    UNIQUE: "g = g^C: the root algebra is unique",
    GL11: "exactly two root algebras",
    AFF_KERNEL: "root algebras ↔ subsets of Z∖{0}",
    SYM_AFF_ZERO: "symmetrizable affine with (ρ|δ) = 0: root algebras are not unique in general",
    IND_NS: "nonsymmetrizable indefinite: uniqueness is not known",
}


@dataclass
class UniquenessReport:
    case: str
    reason: str
    symmetrizable: bool
    type: str
    rho_delta: Fraction | None = None
    identified: str | None = None

    @property
    def statement(self) -> str:
        return _STATEMENTS[self.case]

    def to_json(self) -> dict:
        out = {
            "case": self.case,
            "statement": self.statement,
            "reason": self.reason,
            "inputs": {"symmetrizable": self.symmetrizable, "type": self.type},
        }
        if self.rho_delta is not None:
            out["inputs"]["rho_delta"] = la.fmt(self.rho_delta)
        if self.identified is not None:
            out["identified"] = self.identified
        return out


def rho_delta(d: CartanDatum, delta) -> Fraction | None:
    """(rho|delta) for the invariant form (b(x)|b(y)) = d_x a_xy with D A symmetric; None if not symmetrizable.

    (rho|b(y)) = d_y <rho, a(y)> = d_y a_yy / 2, so no realization is needed; only the sign class of D matters
    for the zero test.
    """
    dd = is_symmetrizable(d)
    if dd is None:
        return None
    return sum((Fraction(c) * dd[y] * d[y, y] / 2 for y, c in enumerate(delta)), Fraction(0))


def identify_affine_kernel_family(d: CartanDatum) -> str | None:
    """Names A(n-1|n-1)^(1) or q(n)^(2) when the base is in the cyclic zero-row-sum shape."""
    if not aij01_cycle(d):
        return None
    sig = aij01_signature(d)
    if sig is None:
        return f"q({d.n})^(2)"
    k, l = sig
    if k == l:
        return f"A({k - 1}|{k - 1})^(1)"
    return None


def uniqueness_report(v: RootDatumVertex, cls: ClassificationResult, r: Realization | None = None) -> UniquenessReport:
    d = v.cartan
    if not is_indecomposable(d):
        raise DomainError("datum is decomposable")
    if not all(is_reflectable(d, x) for x in range(d.n)):
        raise DomainError("datum is not fully reflectable")
    if r is not None:
        r.check(v.base)
    sym = is_symmetrizable(d) is not None
    if d.n == 1 and is_isotropic(d, 0):
        return UniquenessReport(GL11, "rank-1 isotropic datum (gl(1|1))", sym, cls.type)
    if cls.type == FIN:
        return UniquenessReport(UNIQUE, "type Fin, not gl(1|1)", sym, cls.type)
    if cls.type == AFF:
        fam = identify_affine_kernel_family(d)
        if fam is not None:
            return UniquenessReport(AFF_KERNEL, f"identified as {fam}", sym, cls.type, identified=fam)
        delta = cls.delta
        pair = la.matvec(v.base.matrix, delta) if delta is not None else None
        if pair is not None and not la.is_zero_vec(pair):
            x = next(i for i, t in enumerate(pair) if t != 0)
            reason = f"<delta, a({d.labels[x]})> = {la.fmt(pair[x])} != 0"
            return UniquenessReport(UNIQUE, reason, sym, cls.type)
        if sym and delta is not None:
            rd = rho_delta(d, delta)
            if rd == 0:
                return UniquenessReport(SYM_AFF_ZERO, "(rho|delta) = 0", sym, cls.type, rd)
            return UniquenessReport(UNIQUE, f"symmetrizable with (rho|delta) = {la.fmt(rd)} != 0", sym, cls.type, rd)
        return UniquenessReport(UNIQUE, "nonsymmetrizable affine outside the identified families", sym, cls.type)
    if sym:
        return UniquenessReport(UNIQUE, "symmetrizable of type Ind", sym, cls.type)
    return UniquenessReport(IND_NS, "nonsymmetrizable of type Ind", sym, cls.type)
