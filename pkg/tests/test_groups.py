import math

import pytest

from conftest import skeleton, spine
from rootgroupoid import catalog
from rootgroupoid.cartan import CartanDatum
from rootgroupoid.errors import DomainError
from rootgroupoid.groups import (
    aut_report, check_group_structure, k_dimension, skd_elements, skd_multiply, spd_subgroup,
)
from rootgroupoid.rootdatum import Realization, standard_realization
from rootgroupoid._linalg import mat, rank


@pytest.mark.parametrize("k,l", [(1, 2), (2, 2), (1, 3)])
def test_skd_order_for_gl(k, l):
    name = f"gl({k}|{l})"
    out = check_group_structure(skeleton(name), spine(name))
    expect = math.factorial(k) * math.factorial(l) * (2 if k == l else 1)
    assert out["skd"] == expect
    assert out["w"] == math.factorial(k) * math.factorial(l)
    assert out["spd"] == (2 if k == l else 1)


def test_gl22_semidirect():
    rep = aut_report(skeleton("gl(2|2)"), spine("gl(2|2)"))
    assert (rep.skd_order, rep.weyl_order, rep.spd_order) == (8, 4, 2)
    assert rep.statement == "Aut/K = W ⋊ Sp^D" and not rep.direct_product_flag
    assert rep.skd_structure == "W ⋊ Sp^D (8 = 4 * 2)"


def test_gl12_report():
    rep = aut_report(skeleton("gl(1|2)"), spine("gl(1|2)"))
    assert rep.weyl_order == 2 and rep.skd_order == 2 and rep.spd_order == 1
    assert rep.statement == "Aut = W" and rep.k_dimension == 0


def test_gl12_three_dimensional_realization_has_central_k():
    # theta = 1 + phi (x) c with c = e + h1 + h2 orthogonal to both b(x) and phi killing a(1), a(2)
    e = catalog.get("gl(1|2)")
    assert k_dimension(e.realization) == 1
    rep = aut_report(skeleton("gl(1|2)"), spine("gl(1|2)"), e.realization)
    assert rep.statement == "Aut = W × K" and rep.k_realization == "supplied realization"


def test_gl11_report():
    rep = aut_report(skeleton("gl(1|1)"), spine("gl(1|1)"))
    assert rep.k_dimension == 2 and rep.weyl_order == 1 and rep.spd_order == 2
    assert any("rank-1 isotropic" in n for n in rep.notes)


def test_q3_report():
    rep = aut_report(skeleton("q3-2", 200), spine("q3-2"))
    assert rep.statement == "Aut = W × K" and rep.direct_product_flag
    assert rep.k_dimension == 1 and rep.spd_order == 1 and rep.spd_certainty == "exact"
    assert all(rep.coxeter[i][j] == 3 for i in range(3) for j in range(3) if i != j)
    assert rep.weyl_order is None and rep.to_json()["weyl"]["order"] == "infinite"


def test_s21_half_report_is_budgeted():
    rep = aut_report(skeleton("S21b(1/2)", 100), spine("S21b(1/2)", 30))
    assert rep.statement == "Aut = W × K"
    assert rep.spd_certainty == "budgeted"
    assert any("explored spine only" in n for n in rep.notes)
    assert rep.to_json()["skD"]["order"].endswith("(budget)")


def test_group_law_by_hand():
    g = skeleton("gl(2|2)")
    elems = skd_elements(g)
    ident = elems[0]
    for a in elems:
        assert skd_multiply(g, ident, a).vertex == a.vertex
        assert skd_multiply(g, a, ident).vertex == a.vertex
    sq = {skd_multiply(g, a, a).vertex for a in elems}
    assert sq <= {e.vertex for e in elems}


def test_spd_subgroup_contains_base():
    for name in ("gl(1|2)", "gl(2|2)", "q3-2"):
        spd = spd_subgroup(skeleton(name), spine(name))
        assert spd[0].vertex == 0


def test_group_check_needs_complete_data():
    with pytest.raises(DomainError):
        check_group_structure(skeleton("q3-2", 50), spine("q3-2"))


def test_k_dimension_examples():
    a11 = CartanDatum.of([[2, -2], [-2, 2]], [0, 0])
    assert k_dimension(standard_realization(a11)) == 1
    for rows in ([[2, -1], [-1, 2]], [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]):
        d = CartanDatum.of(rows, [0] * len(rows))
        assert k_dimension(standard_realization(d)) == 0
    assert k_dimension(standard_realization(catalog.get("gl(1|1)").datum)) == 2
    assert k_dimension(standard_realization(catalog.get("q3-2").datum)) == 1


def test_k_dimension_rejects_dependent_vectors():
    with pytest.raises(ValueError):
        k_dimension(Realization(2, mat([[1, 0], [2, 0]]), mat([[1, 0], [0, 1]])))


@pytest.mark.parametrize("rows", [
    [[2, -2], [-2, 2]],
    [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
    [[2, -1], [-4, 2]],
    [[2, -3], [-3, 2]],
])
def test_k_dimension_matches_corank_square(rows):
    # minimal realization of a Kac-Moody matrix: K has dimension (n - r)^2
    d = CartanDatum.of(rows, [0] * len(rows))
    c = d.n - rank(d.matrix)
    assert k_dimension(standard_realization(d)) == c * c
