import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from binform.forms import (BiForm, Form, bracket, gordan_coefficient, gordan_components,
                           gordan_extract, gordan_rebuild, gordan_series, mu_coefficient,
                           nu_coefficient, omega, pi_r, polarize, transvectant)
from binform.ring import ONE, ZERO, Poly, Q, parse, var

from strategies import binary_forms, rationals

x1, x2, y1, y2 = var("x1"), var("x2"), var("y1"), var("y2")


def form(text):
    return Form.make(parse(text))


def test_transvectant_of_fermat_quintic():
    f = form("x1^5+x2^5")
    assert transvectant(f, f, 4).body == (x1 * x2).scale(2)


def test_out_of_range_transvectant_is_zero():
    f = form("x1^5+x2^5")
    assert transvectant(f, f, 9).is_zero()
    with pytest.raises(ValueError):
        transvectant(f, f, -1)


def test_form_grading_is_checked():
    with pytest.raises(ValueError):
        Form.make(parse("x1^2 + x2"))
    assert Form.make(parse("a0*x1^2")).adeg == 1


def test_omega_examples():
    assert omega(BiForm(x1 * y2, 1, 1)).body == ONE
    assert omega(BiForm(x1 * y1, 1, 1)).body.is_zero()
    assert omega(bracket()).body == Poly.const(2)
    assert bracket().diagonal().is_zero()


def test_pi_r_examples():
    assert pi_r(BiForm(x1 ** 2 * y2, 2, 1), 1).body == x1
    assert pi_r(BiForm(x1 ** 2 * y2, 2, 1), 1).body == transvectant(form("x1^2"), form("x2"), 1).body
    with pytest.raises(ValueError):
        pi_r(BiForm(x1 ** 2 * y2, 2, 1), 2)


def test_polarize_examples():
    assert polarize(form("x1^2"), 1, 1).body == x1 * y1
    cube = Form.make((x1 + x2) ** 3)
    assert polarize(cube, 2, 1).body == (x1 + x2) ** 2 * (y1 + y2)
    assert polarize(cube, 3, 0).body == cube.body
    with pytest.raises(ValueError):
        polarize(cube, 1, 1)


def test_gordan_series_small_example():
    series = gordan_series(form("x1^2"), form("x2"))
    assert [c for c, _ in series] == [1, Q(2, 3)]
    assert series[1][1].body == x1


def test_gordan_extract_concentrates_on_bracket_powers():
    g = bracket() ** 2
    comps = gordan_components(g)
    assert [c.is_zero() for c in comps] == [True, True, False]
    with pytest.raises(ValueError):
        gordan_extract(g, 3)


def test_mu_and_nu_edge_cases():
    assert mu_coefficient(3, 2, 0, 0) == 1
    assert mu_coefficient(3, 2, 1, 2) == 0
    assert nu_coefficient(0, 0, 0, 0, 1) == 0


def test_omega_bracket_commutation():
    g = BiForm(x1 ** 2 * y1 * y2 - x1 * x2 * y2 ** 2, 2, 2)
    lhs = omega(bracket() * g).body
    rhs = g.body.scale(2 + 2 + 2) + bracket().body * omega(g).body
    assert lhs == rhs


@given(binary_forms(max_order=5), binary_forms(max_order=5), st.integers(0, 5))
@settings(max_examples=40)
def test_transvectant_grading_and_symmetry(a, b, r):
    t = transvectant(a, b, r)
    if r <= min(a.order, b.order):
        assert t.order == a.order + b.order - 2 * r
    sign = -1 if r % 2 else 1
    assert transvectant(b, a, r).body == t.body.scale(sign)


@given(binary_forms(max_order=6), st.integers(0, 3))
@settings(max_examples=30)
def test_odd_self_transvectants_vanish(a, k):
    assert transvectant(a, a, 2 * k + 1).is_zero()


@given(binary_forms(order=3), binary_forms(order=3), binary_forms(order=2), rationals,
       st.integers(0, 2))
@settings(max_examples=30)
def test_transvectant_bilinear(a, b, c, s, r):
    lhs = transvectant(a * s + b, c, r).body
    assert lhs == transvectant(a, c, r).body.scale(s) + transvectant(b, c, r).body


@given(binary_forms(max_order=4), binary_forms(max_order=4))
@settings(max_examples=30)
def test_gordan_series_reconstruction(a, b):
    series = gordan_series(a, b)  # verifies the reconstruction itself
    for r, (c, t) in enumerate(series):
        assert c == gordan_coefficient(a.order, b.order, r)
        assert pi_r(BiForm.product(a, b), r).body == t.body


@given(st.integers(0, 4), st.integers(0, 4), st.data())
@settings(max_examples=30)
def test_gordan_extract_round_trip(m, n, data):
    body = ZERO
    for i in range(m + 1):
        for j in range(n + 1):
            c = data.draw(rationals)
            body = body + Poly.monomial({"x1": m - i, "x2": i, "y1": n - j, "y2": j}, c)
    g = BiForm(body, m, n)
    assert gordan_rebuild(gordan_components(g), m, n).body == g.body


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
@settings(max_examples=40)
def test_mu_cancels_bracket_against_omega(p, q, ell, i, a, b):
    assume(ell - i <= min(p, q))
    ax = x1 * a[0] + x2 * a[1]
    by = y1 * b[0] + y2 * b[1]
    base = BiForm(ax ** p * by ** q, p, q)
    lhs = omega(bracket() ** i * base, ell).diagonal().body
    if ell < i:
        # a bracket factor survives and vanishes on the diagonal
        rhs = ZERO
    else:
        rhs = omega(base, ell - i).diagonal().body.scale(mu_coefficient(p, q, ell, i))
    assert lhs == rhs


@pytest.mark.parametrize("m", range(1, 6))
def test_pairing_is_nondegenerate(m):
    from binform.linalg import monomial_basis, rank

    basis = monomial_basis(m)
    rows = [[transvectant(a, b, m).body.constant_value() for b in basis] for a in basis]
    assert rank(rows) == m + 1
