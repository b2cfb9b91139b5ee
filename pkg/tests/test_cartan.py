import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import linprog

from rootgroupoid.cartan import (
    CartanDatum, DiagonalScaling, Violation, d_class_key, d_equivalent, is_indecomposable, is_isotropic,
    is_locally_weakly_symmetric, is_reflectable, is_symmetrizable, kac_vector_type, normalize_gcm,
)
from rootgroupoid.errors import DomainError, ParseError

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=4)
nonzero = rationals.filter(lambda q: q != 0)


@st.composite
def data(draw, n=None):
    n = n or draw(st.integers(1, 4))
    rows = [[draw(rationals) for _ in range(n)] for _ in range(n)]
    parity = [draw(st.integers(0, 1)) for _ in range(n)]
    return CartanDatum.of(rows, parity)


@st.composite
def scalings(draw, n):
    return DiagonalScaling(tuple(draw(nonzero) for _ in range(n)))


def test_json_round_trip():
    d = CartanDatum.of([[0, "1/2", "1/2"], ["-1/2", 0, "3/2"], [-1, -1, 2]], [1, 1, 0], ["x1", "x2", "x0"])
    assert CartanDatum.from_json(json.dumps(d.to_json())) == d


@pytest.mark.parametrize("obj, fragment", [
    ({"parity": [0]}, "missing field 'cartan'"),
    ({"cartan": [[2, 0.5]], "parity": [0]}, "floats are not allowed"),
    ({"cartan": [[2, "x"]], "parity": [0]}, "[0][1]"),
    ({"cartan": [[2]], "parity": [2]}, "field 'parity'"),
    ({"cartan": [[2, 1], [1, 2]], "parity": [0]}, "parity"),
])
def test_from_json_diagnostics(obj, fragment):
    with pytest.raises(ParseError) as e:
        CartanDatum.from_json(obj)
    assert fragment in str(e.value)


def test_from_json_reports_line_and_column():
    with pytest.raises(ParseError, match="line 2 column"):
        CartanDatum.from_json('{"cartan": [[2]],\n "parity": [0,]}')


def test_labels_by_name_and_index():
    d = CartanDatum.of([[2, -1], [-1, 2]], [0, 0], ["a", "b"])
    assert d.index("b") == 1 and d.index(0) == 0
    with pytest.raises(KeyError):
        d.index("c")
    with pytest.raises(IndexError):
        d.index(5)


def test_reflectability_rules():
    d = CartanDatum.of([[0, -1], [-1, 2]], [1, 0])
    assert is_reflectable(d, 0) and is_reflectable(d, 1)
    assert not is_reflectable(CartanDatum.of([[0, 1], [1, 2]], [0, 0]), 0)  # even isotropic
    odd = CartanDatum.of([[2, -1], [-1, 2]], [1, 0])
    assert not is_reflectable(odd, 0)  # odd anisotropic needs an even row ratio 2a_xy/a_xx with factor 1
    assert is_reflectable(CartanDatum.of([[2, -2], [-1, 2]], [1, 0]), 0)
    assert not is_reflectable(CartanDatum.of([[2, 1], [-1, 2]], [0, 0]), 0)  # positive off-diagonal


def test_nonreflectable_scan():
    # after the isotropic reflexion y has row (s, 1 - 2s) with p(y) = 0
    for s in range(11):
        d = CartanDatum.of([[0, s], [s, 1 - 2 * s]], [1, 0])
        assert is_reflectable(d, 1) == (s in (0, 1))


def test_isotropic_and_weak_symmetry():
    d = CartanDatum.of([[0, 0], [-1, 2]], [1, 0])
    assert is_isotropic(d, 0)
    v = is_locally_weakly_symmetric(d)
    assert isinstance(v, Violation) and not v and (v.x, v.y) == (0, 1)
    assert is_locally_weakly_symmetric(CartanDatum.of([[2, -1], [-1, 2]], [0, 0])) is True


@given(data(), st.data())
def test_d_equivalence_is_an_equivalence(d, draw):
    s1 = draw.draw(scalings(d.n))
    s2 = draw.draw(scalings(d.n))
    e = CartanDatum(s1.apply(d.matrix), d.parity, d.labels)
    f = CartanDatum(s2.apply(e.matrix), d.parity, d.labels)
    assert d_equivalent(d, d) is not None
    back = d_equivalent(e, d)
    assert back is not None and d_equivalent(d, e) is not None
    assert d_equivalent(d, f) is not None
    assert d_class_key(d) == d_class_key(e) == d_class_key(f)


@given(data(), st.data())
def test_reflectability_invariant_under_row_scaling(d, draw):
    s = draw.draw(scalings(d.n))
    e = CartanDatum(s.apply(d.matrix), d.parity, d.labels)
    assert [is_reflectable(d, x) for x in range(d.n)] == [is_reflectable(e, x) for x in range(d.n)]


def test_d_equivalence_requires_equal_parity():
    a = CartanDatum.of([[2, -1], [-1, 2]], [0, 0])
    b = CartanDatum.of([[2, -1], [-1, 2]], [0, 1])
    assert d_equivalent(a, b) is None
    assert d_equivalent(a, CartanDatum.of([[4, -2], [1, -2]], [0, 0])).entries == (2, -1)


def test_scaling_algebra():
    s = DiagonalScaling((2, "1/3"))
    assert s.compose(s.inverse()).entries == (1, 1)
    with pytest.raises(ValueError):
        DiagonalScaling((0, 1))


@given(data(), st.data())
def test_symmetrizer_symmetrizes(d, draw):
    # build a symmetrizable matrix as D^{-1} S with S symmetric
    n = d.n
    sym = [[d[min(i, j), max(i, j)] for j in range(n)] for i in range(n)]
    s = draw.draw(scalings(n))
    a = CartanDatum(s.inverse().apply(tuple(tuple(r) for r in sym)), d.parity, d.labels)
    found = is_symmetrizable(a)
    assert found is not None
    da = found.apply(a.matrix)
    assert all(da[i][j] == da[j][i] for i in range(n) for j in range(n))


def test_nonsymmetrizable_cycle():
    d = CartanDatum.of([[2, -1, -1], [-2, 2, -1], [-1, -1, 2]], [0, 0, 0])
    assert is_symmetrizable(d) is None
    assert is_symmetrizable(CartanDatum.of([[2, -1], [0, 2]], [0, 0])) is None


def test_indecomposable():
    assert is_indecomposable(CartanDatum.of([[2, -1], [-1, 2]], [0, 0]))
    assert not is_indecomposable(CartanDatum.of([[2, 0], [0, 2]], [0, 0]))


def test_normalize_gcm():
    d = CartanDatum.of([[4, -2], [-1, 2]], [0, 0])
    assert normalize_gcm(d) == ((2, -1), (-1, 2))
    with pytest.raises(DomainError):
        normalize_gcm(CartanDatum.of([[0, -1], [-1, 2]], [1, 0]))


def _scipy_type(a):
    """Float LP oracle for the three Kac feasibility systems."""
    n = len(a)
    a = np.array(a, dtype=float)
    bounds = [(1, None)] * n
    c = np.ones(n)
    feas = []
    feas.append(linprog(c, A_ub=-a, b_ub=-np.ones(n), bounds=bounds).status == 0)
    feas.append(linprog(c, A_eq=a, b_eq=np.zeros(n), bounds=bounds).status == 0)
    feas.append(linprog(c, A_ub=a, b_ub=-np.ones(n), bounds=bounds).status == 0)
    assert sum(feas) == 1
    return ["FIN", "AFF", "IND"][feas.index(True)]


GCMS = [
    [[2, -1], [-1, 2]], [[2, -2], [-2, 2]], [[2, -3], [-3, 2]], [[2, -1], [-4, 2]], [[2, -1], [-3, 2]],
    [[2, -2], [-1, 2]], [[2, -1, 0], [-1, 2, -1], [0, -2, 2]], [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]],
    [[2, -1, 0], [-1, 2, -1], [0, -1, 2]], [[2, -2, 0], [-1, 2, -1], [0, -2, 2]], [[2, -1, -1], [-2, 2, -1], [-1, -1, 2]],
    [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]], [[2, -2, 0], [-2, 2, -2], [0, -2, 2]],
]


@pytest.mark.parametrize("a", GCMS)
def test_kac_type_matches_float_oracle(a):
    kt = kac_vector_type(CartanDatum.of(a, [0] * len(a)))
    assert kt.kind == _scipy_type(a)


@pytest.mark.parametrize("a, kind, u", [
    ([[2, -1], [-1, 2]], "FIN", (1, 1)),
    ([[2, -2], [-2, 2]], "AFF", (1, 1)),
    ([[2, -3], [-3, 2]], "IND", (1, 1)),
    ([[2, -1], [-4, 2]], "AFF", (1, 2)),
])
def test_kac_type_values(a, kind, u):
    kt = kac_vector_type(CartanDatum.of(a, [0, 0]))
    assert kt.kind == kind and kt.u == u


def test_kac_type_rescales_rows_first():
    kt = kac_vector_type(CartanDatum.of([[4, -4], [-1, 1]], [0, 0]))
    assert kt.kind == "AFF"


def test_kac_type_preconditions():
    with pytest.raises(DomainError):
        kac_vector_type(CartanDatum.of([[0, -1], [-1, 2]], [1, 0]))
    with pytest.raises(DomainError):
        kac_vector_type(CartanDatum.of([[2, 0], [0, 2]], [0, 0]))
