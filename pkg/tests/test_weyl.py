import random
from collections import deque

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import complete_catalog_names, skeleton, spine, vertex
from rootgroupoid import _linalg as la
from rootgroupoid import catalog
from rootgroupoid.classify import classify
from rootgroupoid.errors import DomainError
from rootgroupoid.groups import weyl_elements
from rootgroupoid.weyl import (
    AN, ISO, NR, WeylElement, act, coxeter_matrix, decompose_skeleton_vertex, element, enumerate_real_roots,
    flips_along, generator, inversion_roots, length, principal_roots, reduced_word, reflection,
)

FINITE = [n for n in complete_catalog_names() if weyl_elements(principal_roots(spine(n)), cap=500) is not None]


def q3():
    return principal_roots(spine("q3-2"))


def test_q3_principal_roots_and_coxeter():
    ps = q3()
    assert ps.complete
    want = {tuple(r) for r in catalog.get("q3-2").facts["principal_roots"].value}
    assert {r.vector for r in ps.roots} == want
    cm = coxeter_matrix(ps)
    assert all(cm.m[i][j] == 3 for i in range(3) for j in range(3) if i != j)
    assert all(cm.m[i][i] == 1 for i in range(3)) and not cm.violations


def test_gl12_weyl_group():
    ps = principal_roots(spine("gl(1|2)"))
    ws = weyl_elements(ps)
    assert len(ws) == 2
    s = next(w for w in ws if not w.is_identity)
    # in base coordinates delta_1 - delta_2 = b(2) goes to its negative and eps - delta_2 = b(1)+b(2) is fixed
    assert s((0, 1)) == (0, -1) and s((1, 1)) == (1, 0)


def cayley_lengths(ps, radius):
    gens = [generator(ps, i).matrix for i in range(len(ps))]
    start = la.identity(ps.base.n)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        if dist[m] == radius:
            continue
        for g in gens:
            nm = la.matmul(m, g)
            if nm not in dist:
                dist[nm] = dist[m] + 1
                queue.append(nm)
    return dist


def test_q3_length_against_cayley_graph():
    ps = q3()
    oracle = cayley_lengths(ps, 8)
    rng = random.Random(2026)
    for _ in range(200):
        word = tuple(rng.randrange(3) for _ in range(rng.randint(0, 8)))
        w = element(ps, word)
        ell = length(w, ps)
        assert ell == oracle[w.matrix]
        moved = act(WeylElement(w.matrix, reduced_word(w, ps)), ps, ps.base)
        an = [b for b, k in flips_along(ps.base, moved.word).items() if k == AN]
        assert len(an) == ell


@given(st.lists(st.integers(0, 2), max_size=8), st.integers(0, 2))
def test_descent_criterion(word, i):
    ps = q3()
    w = element(ps, word)
    neg = all(t <= 0 for t in w(ps[i].vector))
    assert neg == (length(w * generator(ps, i), ps) < length(w, ps))


@given(st.lists(st.integers(0, 2), max_size=10))
def test_reduced_word_reproduces_element(word):
    ps = q3()
    w = element(ps, word)
    red = reduced_word(w, ps)
    assert element(ps, red).matrix == w.matrix
    assert len(red) <= len(word) and len(red) % 2 == len(word) % 2
    inv = inversion_roots(red, ps)
    assert len(set(inv)) == len(inv)


def test_reduced_word_rejects_non_members():
    ps = q3()
    with pytest.raises(DomainError):
        reduced_word(WeylElement(((0, 1, 0), (1, 0, 0), (0, 0, 1))), ps, budget=50)


@pytest.mark.parametrize("name", complete_catalog_names())
def test_real_root_invariants(name):
    g = skeleton(name)
    roots = enumerate_real_roots(g)
    by_vec = {r.vector: r for r in roots}
    for r in roots:
        if r.kind == AN:
            assert all(t >= 0 for t in r.vector) or all(t <= 0 for t in r.vector)
    ps = principal_roots(spine(name))
    for p in ps.roots:
        s = reflection(p)
        for r in roots:
            img = s(r.vector)
            assert img in by_vec and by_vec[img].kind == r.kind


@pytest.mark.parametrize("name", FINITE)
def test_anisotropic_roots_conjugate_to_principal(name):
    g = skeleton(name)
    ps = principal_roots(spine(name))
    ws = weyl_elements(ps)
    orbit = {w(p.vector) for w in ws for p in ps.roots}
    assert {r.vector for r in enumerate_real_roots(g) if r.kind == AN} <= orbit


@pytest.mark.parametrize("name", FINITE)
def test_decomposition_is_unique(name):
    g, sp = skeleton(name), spine(name)
    ps = principal_roots(sp)
    spine_keys = {v.key for v in sp.vertices}
    ws = weyl_elements(ps)
    for u in range(len(g)):
        w, v2 = decompose_skeleton_vertex(g, ps, u)
        assert v2.key in spine_keys
        hits = [(x, s) for x in ws for s in sp.vertices if act(x, ps, s).key == g.vertices[u].key]
        assert len(hits) == 1


@pytest.mark.parametrize("name", complete_catalog_names())
def test_coxeter_entries(name):
    cm = coxeter_matrix(principal_roots(spine(name)))
    assert {t for row in cm.m for t in row} <= {0, 1, 2, 3, 4, 6}


def test_affine_delta_fixed_by_weyl():
    for name in ("q3-2", "sl21-affine", "S21b(1/2)", "sl(2|2)-affine"):
        v = vertex(name)
        delta = classify(v).delta
        ps = principal_roots(spine(name, 60))
        for word in ([], [0], [0, 1], [1, 0, 1]):
            word = [i % len(ps) for i in word] if len(ps) else []
            assert element(ps, word)(delta) == delta


def test_nonreflectable_roots():
    for s in (2, 3):
        g = skeleton(f"nonreflectable({s})")
        kinds = {r.kind for r in enumerate_real_roots(g)}
        assert NR in kinds and ISO in kinds
        assert all(r.certain for r in enumerate_real_roots(g) if r.kind == NR) == g.complete
    with pytest.raises(ValueError):
        reflection(next(r for r in enumerate_real_roots(skeleton("gl(1|1)")) if r.kind == ISO))
