import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from binform.covariants import as_form, generic_form, theta
from binform.forms import Form, transvectant
from binform.linalg import (FormMatrix, Inconsistent, LinearSystem, RankDeficient,
                            covariant_map_matrix, determinant, exact_solve, map_wronskian,
                            monomial_basis, nullspace, rank, scalar_determinant, solve_cofactor,
                            solve_unique, sylvester_resultant, wronskian)
from binform.ring import Poly, Q, parse, proportional, var

from strategies import binary_forms, rationals

x1, x2 = var("x1"), var("x2")


def form(text):
    return Form.make(parse(text))


def test_wronskian_examples():
    assert wronskian([form("x1^2"), form("x1*x2"), form("x2^2")]).body == Poly.const(4)
    assert wronskian([form("x1^2"), form("x1^2"), form("x2^2")]).is_zero()
    with pytest.raises(ValueError):
        wronskian([form("x1^2"), form("x1")])


def test_resultant_examples():
    assert sylvester_resultant(form("x1^2"), form("x2^2")) == Poly.const(1)
    shared = sylvester_resultant(form("x1*(x1+x2)"), form("(x1+x2)*(x1-2*x2)^2"))
    assert shared.is_zero()


def test_alpha_map_kernel():
    fermat = covariant_map_matrix(generic_form(5), 2, 3, as_form("x1^5+x2^5"))
    assert fermat.rational_rank() < 3
    kernel = nullspace([[e.constant_value() for e in row] for row in fermat.entries])
    assert kernel == [[0, 1, 0]]  # spanned by x1*x2
    general = covariant_map_matrix(generic_form(5), 2, 3, as_form("x1^5+x2^5+(x1+x2)^5"))
    assert general.rational_rank() == 3


def test_map_rejects_bad_orders():
    with pytest.raises(ValueError):
        covariant_map_matrix(generic_form(5), 2, 4)


def test_zero_covariant_gives_zero_matrix():
    zero = Form(Poly(), 5, 0)
    m = covariant_map_matrix(zero, 2, 3)
    assert all(e.is_zero() for row in m.entries for e in row)


def test_w1_is_a_multiple_of_theta33():
    w1 = map_wronskian(generic_form(5), 2, 3)
    assert proportional(w1.body, theta(33).form.body) is not None


def test_exact_solve_examples():
    sol = exact_solve(LinearSystem([[1, 0], [0, 1]], [Q(3, 2), -4]))
    assert sol.values == [Q(3, 2), -4] and sol.unique
    assert exact_solve(LinearSystem([[1], [1]], [1, 2])) is None
    free = exact_solve(LinearSystem([[1, 1]], [2]))
    assert free.free == [1]
    with pytest.raises(Inconsistent):
        solve_unique(LinearSystem([[1], [1]], [1, 2]))
    with pytest.raises(RankDeficient):
        solve_unique(LinearSystem([[1, 1]], [2]))


def test_solve_cofactor():
    factor = x1 + x2
    target = factor * (x1 * x1.scale(3) - x2 * x2)
    monos = [x1 * x1, x1 * x2, x2 * x2]
    assert solve_cofactor(target, factor, monos, ("x1", "x2")) == x1 * x1.scale(3) - x2 * x2
    with pytest.raises(Inconsistent):
        solve_cofactor(x1 ** 3 + x2 ** 3 + x1 * x2 * x2, x1, monos, ("x1", "x2"))


@st.composite
def matrices(draw, max_n=4):
    n = draw(st.integers(1, max_n))
    return [[draw(rationals) for _ in range(n)] for _ in range(n)]


@given(matrices())
@settings(max_examples=60)
def test_polynomial_and_scalar_determinants_agree(rows):
    polys = [[Poly.const(c) for c in row] for row in rows]
    assert determinant(polys).constant_value() == scalar_determinant(rows)


@given(matrices())
@settings(max_examples=40)
def test_nullspace_is_annihilated(rows):
    for v in nullspace(rows):
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in rows)
    assert rank(rows) + len(nullspace(rows)) == len(rows[0])


@given(st.integers(2, 4), st.data())
@settings(max_examples=30)
def test_wronskian_orthogonality(m, data):
    forms = [data.draw(binary_forms(order=m)) for _ in range(m)]
    w = wronskian(forms)
    assume(not w.is_zero())
    assert w.order == m
    for f in forms:
        assert transvectant(w, f, m).is_zero()
    # W spans the orthogonal complement of the family
    basis = monomial_basis(m)
    rows = [[transvectant(f, b, m).body.constant_value() for b in basis] for f in forms]
    assert len(nullspace(rows)) == 1


@given(st.integers(2, 4), st.data())
@settings(max_examples=30)
def test_wronskian_is_alternating(m, data):
    forms = [data.draw(binary_forms(order=m + 1)) for _ in range(m)]
    swapped = [forms[1], forms[0]] + forms[2:]
    assert wronskian(swapped).body == -wronskian(forms).body


@given(binary_forms(min_order=1, max_order=3), binary_forms(min_order=1, max_order=3))
@settings(max_examples=40)
def test_resultant_antisymmetry(a, b):
    sign = -1 if (a.order * b.order) % 2 else 1
    assert sylvester_resultant(b, a) == sylvester_resultant(a, b).scale(sign)


def test_linear_system_validates_shape():
    with pytest.raises(ValueError):
        LinearSystem([[1, 2], [3]], [1, 2])
    with pytest.raises(ValueError):
        LinearSystem([[1]], [1, 2])


def test_form_matrix_specialize():
    m = FormMatrix([[var("q0"), Poly.const(1)]])
    assert m.specialize({"q0": 0}).rational_rank() == 1
