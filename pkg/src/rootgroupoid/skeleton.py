"""Bounded exploration of the skeleton and spine graphs."""
from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

from . import _linalg as la
from .cartan import CartanDatum, Violation, d_class_key, is_isotropic, is_locally_weakly_symmetric, is_reflectable
from .errors import DomainError, InternalError, ParseError
from .rootdatum import RootDatumVertex, reflect, vertex_from_json


@dataclass(frozen=True)
class ExplorationLimits:
    max_vertices: int = 10000
    max_depth: int = 64
    budget_ms: int | None = None

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_depth < 0:
            raise ValueError("exploration limits must be positive")


@dataclass(frozen=True)
class Edge:
    source: int
    target: int
    label: int
    color: tuple  # b_target(label) = -b_source(label), base coordinates
    isotropic: bool


@dataclass
class SkeletonGraph:
    vertices: list
    depth: list
    edges: list
    complete: bool
    spine: bool = False
    budget_used: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index = {v.key: i for i, v in enumerate(self.vertices)}
        self._adj = [dict() for _ in self.vertices]
        for e in self.edges:
            self._adj[e.source][e.label] = e

    @property
    def base(self) -> RootDatumVertex:
        return self.vertices[0]

    @property
    def datum(self) -> CartanDatum:
        return self.base.base

    def __len__(self):
        return len(self.vertices)

    def index_of(self, v: RootDatumVertex) -> int | None:
        i = self._index.get(v.key)
        if i is not None and self.vertices[i].Avec != v.Avec:
            raise InternalError("two vertices share simple roots but not coroots")
        return i

    def neighbor(self, u: int, x: int) -> int | None:
        e = self._adj[u].get(x)
        return None if e is None else e.target

    def edge(self, u: int, x: int) -> Edge | None:
        return self._adj[u].get(x)

    def out_edges(self, u: int) -> list:
        return [self._adj[u][x] for x in sorted(self._adj[u])]

    def undirected_edges(self) -> list:
        return [e for e in self.edges if e.source < e.target]

    def path_from_base(self, u: int) -> tuple:
        return self.vertices[u].word

    def to_json(self) -> dict:
        labels = self.datum.labels
        return {
            "kind": "spine" if self.spine else "skeleton",
            "base": self.datum.to_json(),
            "complete": self.complete,
            "budget_used": dict(self.budget_used),
            "vertices": [dict(v.to_json(), index=i, depth=self.depth[i]) for i, v in enumerate(self.vertices)],
            "edges": [
                {
                    "source": e.source,
                    "target": e.target,
                    "label": labels[e.label],
                    "color": list(e.color),
                    "isotropic": e.isotropic,
                }
                for e in self.edges
            ],
        }


def graph_from_json(obj: dict) -> SkeletonGraph:
    try:
        base = CartanDatum.from_json(obj["base"])
        vertices = [vertex_from_json(v, base) for v in obj["vertices"]]
        depth = [int(v["depth"]) for v in obj["vertices"]]
        edges = [
            Edge(int(e["source"]), int(e["target"]), base.index(e["label"]), tuple(int(t) for t in e["color"]), bool(e["isotropic"]))
            for e in obj["edges"]
        ]
        return SkeletonGraph(vertices, depth, edges, bool(obj["complete"]), obj.get("kind") == "spine", dict(obj.get("budget_used", {})))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"malformed graph dump: {e}") from None


class Explorer:
    """Breadth-first exploration, one BFS level at a time (labels ascending, FIFO frontier)."""

    def __init__(self, v: RootDatumVertex, lim: ExplorationLimits, isotropic_only: bool = False):
        self.lim = lim
        self.isotropic_only = isotropic_only
        self.vertices = [v]
        self.depth = [0]
        self.edges: list = []
        self.index = {v.key: 0}
        self.has_edge: set = set()
        self.frontier = deque([0])
        self.truncated = False
        self.expanded = 0
        self.deadline = None if lim.budget_ms is None else time.monotonic() + lim.budget_ms / 1000

    @property
    def done(self) -> bool:
        return not self.frontier

    def _labels(self, u: RootDatumVertex) -> Iterable[int]:
        d = u.cartan
        for x in range(u.n):
            if not is_reflectable(d, x):
                continue
            if self.isotropic_only and not is_isotropic(d, x):
                continue
            yield x

    def _expand(self, ui: int) -> None:
        u = self.vertices[ui]
        d = u.cartan
        for x in self._labels(u):
            if (ui, x) in self.has_edge:
                continue
            w = reflect(u, x)
            wi = self.index.get(w.key)
            if wi is None:
                out_of_time = self.deadline is not None and time.monotonic() > self.deadline
                if self.depth[ui] + 1 > self.lim.max_depth or len(self.vertices) >= self.lim.max_vertices or out_of_time:
                    self.truncated = True
                    continue
                wi = len(self.vertices)
                self.vertices.append(w)
                self.depth.append(self.depth[ui] + 1)
                self.index[w.key] = wi
                self.frontier.append(wi)
            elif self.vertices[wi].Avec != w.Avec:
                raise InternalError(f"vertex key collision with different coroots at {self.vertices[wi].word}")
            iso = d[x, x] == 0
            self.edges.append(Edge(ui, wi, x, w.B[x], iso))
            self.edges.append(Edge(wi, ui, x, u.B[x], iso))
            self.has_edge.add((ui, x))
            self.has_edge.add((wi, x))
        self.expanded += 1

    def run_level(self) -> bool:
        """Expand every frontier vertex of the current depth; False once nothing is left."""
        if not self.frontier:
            return False
        level = self.depth[self.frontier[0]]
        while self.frontier and self.depth[self.frontier[0]] == level:
            self._expand(self.frontier.popleft())
        return bool(self.frontier)

    def run(self) -> "Explorer":
        while self.run_level():
            pass
        return self

    def graph(self) -> SkeletonGraph:
        complete = not self.frontier and not self.truncated
        used = {"vertices": len(self.vertices), "expanded": self.expanded, "max_depth_reached": max(self.depth)}
        return SkeletonGraph(list(self.vertices), list(self.depth), list(self.edges), complete, self.isotropic_only, used)


def explore_skeleton(v: RootDatumVertex, lim: ExplorationLimits | None = None) -> SkeletonGraph:
    return Explorer(v, lim or ExplorationLimits()).run().graph()


def explore_spine(v: RootDatumVertex, lim: ExplorationLimits | None = None) -> SkeletonGraph:
    return Explorer(v, lim or ExplorationLimits(), isotropic_only=True).run().graph()


@dataclass(frozen=True)
class AdmissibilityVerdict:
    status: str  # "admissible" | "not_admissible" | "inconclusive"
    word: tuple = ()
    violation: Violation | None = None
    classes: tuple = ()  # Cartan data of the D-classes met, in discovery order

    def to_json(self, labels) -> dict:
        out = {"verdict": self.status, "d_classes_seen": len(self.classes)}
        if self.status == "not_admissible":
            out["word"] = [labels[i] for i in self.word]
            out["violation"] = {"x": labels[self.violation.x], "y": labels[self.violation.y]}
        return out


def check_admissibility(v: RootDatumVertex, lim: ExplorationLimits | None = None) -> AdmissibilityVerdict:
    """Local weak symmetry along the spine, deduplicating vertices up to D-equivalence."""
    lim = lim or ExplorationLimits()
    deadline = None if lim.budget_ms is None else time.monotonic() + lim.budget_ms / 1000
    seen = {d_class_key(v.cartan): 0}
    classes = [v.cartan]
    queue = deque([(v, 0)])
    truncated = False
    while queue:
        u, depth = queue.popleft()
        d = u.cartan
        verdict = is_locally_weakly_symmetric(d)
        if isinstance(verdict, Violation):
            return AdmissibilityVerdict("not_admissible", u.word, verdict, tuple(classes))
        for x in range(u.n):
            if not (is_isotropic(d, x) and is_reflectable(d, x)):
                continue
            w = reflect(u, x)
            key = d_class_key(w.cartan)
            if key in seen:
                continue
            out_of_time = deadline is not None and time.monotonic() > deadline
            if depth + 1 > lim.max_depth or len(classes) >= lim.max_vertices or out_of_time:
                truncated = True
                continue
            seen[key] = len(classes)
            classes.append(w.cartan)
            queue.append((w, depth + 1))
    return AdmissibilityVerdict("inconclusive" if truncated else "admissible", classes=tuple(classes))


def _bfs_dist(g: SkeletonGraph, src: int) -> list:
    dist = [-1] * len(g)
    dist[src] = 0
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for e in g.out_edges(u):
            if dist[e.target] < 0:
                dist[e.target] = dist[u] + 1
                queue.append(e.target)
    return dist


def flipped_roots(g: SkeletonGraph) -> list:
    """For each vertex u, the base-positive real roots that are negative at u (from edge colors)."""
    flips: list = [None] * len(g)
    flips[0] = frozenset()
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for e in g.out_edges(u):
            alpha = e.color
            neg = tuple(-t for t in alpha)
            new = flips[u] - {alpha} if alpha in flips[u] else flips[u] | {neg}
            if flips[e.target] is None:
                flips[e.target] = new
                queue.append(e.target)
            elif flips[e.target] != new:
                raise InternalError(f"positive root bookkeeping is path dependent at vertex {e.target}")
    return flips


def distance(g: SkeletonGraph, u: int, w: int) -> int:
    for t in (u, w):
        if not 0 <= t < len(g):
            raise IndexError(f"vertex {t} is outside the explored region")
    d = _bfs_dist(g, u)[w]
    flips = flipped_roots(g)
    by_roots = len(flips[u] ^ flips[w])
    if d != by_roots:
        if g.complete:
            raise InternalError(f"BFS distance {d} differs from root count {by_roots}")
        if 0 in (u, w):
            raise InternalError(f"BFS distance {d} from the base differs from root count {by_roots}")
        raise DomainError("distance not certain: shortest path may leave the explored region")
    return d


def lambda_embedding(g: SkeletonGraph) -> list:
    n = g.datum.n
    lam: list = [None] * len(g)
    lam[0] = (0,) * n
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for e in g.out_edges(u):
            new = tuple(a + b for a, b in zip(lam[u], e.color))
            if lam[e.target] is None:
                lam[e.target] = new
                queue.append(e.target)
            elif lam[e.target] != new:
                raise InternalError(f"lambda is path dependent at vertex {e.target}")
    if len(set(lam)) != len(lam):
        raise InternalError("lambda embedding is not injective")
    return lam


@dataclass
class CoxeterReport:
    ok: bool
    faces: list  # (labels pair, vertex cycle, m)
    violations: list
    cycle_rank: int | None
    face_rank: int | None
    complete: bool

    def face_parameters(self) -> set:
        return {m for _, _, m in self.faces}

    def to_json(self, labels) -> dict:
        return {
            "ok": self.ok,
            "complete": self.complete,
            "faces": [{"labels": [labels[x], labels[y]], "cycle": list(cyc), "m": m} for (x, y), cyc, m in self.faces],
            "face_parameters": sorted(self.face_parameters()),
            "cycle_rank": self.cycle_rank,
            "face_rank": self.face_rank,
            "violations": list(self.violations),
        }


def _two_letter_component(g: SkeletonGraph, u: int, x: int, y: int) -> tuple[list, bool]:
    """Vertices of the {x,y} component of u in walking order, and whether it closes up."""
    order = [u]
    cur, lab = u, x
    while True:
        nxt = g.neighbor(cur, lab)
        if nxt is None:
            break
        if nxt == u:
            return order, True
        order.append(nxt)
        cur, lab = nxt, (y if lab == x else x)
    # open path: walk the other way from u as well
    back = []
    cur, lab = u, y
    while True:
        nxt = g.neighbor(cur, lab)
        if nxt is None:
            break
        back.append(nxt)
        cur, lab = nxt, (y if lab == x else x)
    return list(reversed(back)) + order, False


def verify_coxeter(g: SkeletonGraph) -> CoxeterReport:
    n = g.datum.n
    faces, violations = [], []
    seen_faces = set()
    for x in range(n):
        for y in range(x + 1, n):
            visited = set()
            for u in range(len(g)):
                if u in visited:
                    continue
                comp, closed = _two_letter_component(g, u, x, y)
                visited.update(comp)
                if not closed:
                    continue
                if len(comp) % 2 or len(set(comp)) != len(comp):
                    violations.append(f"{{{x},{y}}} loop through {u} is not a simple even cycle")
                    continue
                m = len(comp) // 2
                if m not in (2, 3, 4, 6):
                    violations.append(f"{{{x},{y}}} loop through {u} has m={m}")
                key = (x, y, frozenset(comp))
                if key not in seen_faces:
                    seen_faces.add(key)
                    faces.append(((x, y), tuple(comp), m))
    cycle_rank = face_rank = None
    if g.complete:
        und = g.undirected_edges()
        eidx = {(e.source, e.target, e.label): i for i, e in enumerate(und)}
        cycle_rank = len(und) - len(g) + 1
        rows = []
        for (x, y), comp, _ in faces:
            vec = [0] * len(und)
            for i, a in enumerate(comp):
                b = comp[(i + 1) % len(comp)]
                lab = x if i % 2 == 0 else y  # walks start along x
                if a < b:
                    vec[eidx[(a, b, lab)]] += 1
                else:
                    vec[eidx[(b, a, lab)]] -= 1
            rows.append(vec)
        face_rank = la.rank(rows) if rows else 0
        if face_rank != cycle_rank:
            violations.append(f"face cycles span rank {face_rank} of cycle space rank {cycle_rank}")
    return CoxeterReport(not violations, faces, violations, cycle_rank, face_rank, g.complete)


def _fmt_root(alpha) -> str:
    return "(" + ",".join(str(t) for t in alpha) + ")"


def export_dot(g: SkeletonGraph) -> str:
    labels = g.datum.labels
    name = "spine" if g.spine else "skeleton"
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for i in range(len(g)):
        lines.append(f'  v{i} [label="{i}"];')
    for e in g.undirected_edges():
        style = ", style=dashed" if e.isotropic else ""
        lines.append(f'  v{e.source} -- v{e.target} [label="{labels[e.label]} / {_fmt_root(e.color)}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
