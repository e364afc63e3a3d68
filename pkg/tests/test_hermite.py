import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binform.covariants import as_form, canonical_FQ, generic_catalog, hermite_invariant, theta
from binform.evectants import hermite_evectant
from binform.forms import Form, transvectant
from binform.hermite import (REFERENCE_K_TAU, QPoint, Triple, beta_map_wronskian,
                             evectant_FQ_expected, gamma_tau,
                             involution, jacobian_triple, k_tau, k_tau_raw, morley_mu,
                             reference_k_tau, recovered_gamma_constant, singular_factors,
                             singular_membership, solve_special_triples, sigma_images,
                             syzygy_U, syzygy_V, tangent_vectors, theta51_FQ,
                             theta51_expected, triple_intersection_check)
from binform.ring import Poly, Q, proportional, var

from strategies import rationals

x1, x2 = var("x1"), var("x2")


def lin(a, b):
    return Form(x1.scale(a) + x2.scale(b), 1, 0)


def test_involution_squares_to_minus_q2_cubed():
    p = QPoint.symbolic()
    twice = involution(involution(p))
    assert all(u == -(p.q2 ** 3) * v for u, v in zip(twice.as_tuple(), p.as_tuple()))


@given(rationals, rationals, rationals)
@settings(max_examples=50)
def test_involution_on_rational_points(q0, q1, q2):
    p = QPoint.of(q0, q1, q2)
    twice = involution(involution(p))
    assert all(u == v.scale(-(q2 ** 3)) for u, v in zip(twice.as_tuple(), p.as_tuple()))


def test_singular_membership_examples():
    assert singular_membership(QPoint.of(1, 1, 0))
    assert singular_membership(QPoint.of(-3, 1, 1))
    assert singular_membership(QPoint.of(1, 5, 5))
    assert not singular_membership(QPoint.of(1, 1, 1))


@given(rationals, rationals, rationals)
@settings(max_examples=40, deadline=None)
def test_membership_matches_theta51(q0, q1, q2):
    p = QPoint.of(q0, q1, q2)
    assert singular_membership(p) == theta51_FQ(p).is_zero()


def test_theta51_on_canonical_quintic():
    assert theta51_FQ().body == theta51_expected()


@pytest.mark.parametrize("forms", [
    (lin(1, 0), lin(0, 1), lin(1, 1), lin(1, -1)),
    (lin(1, 0), lin(1, 1), lin(1, 2), lin(1, 3)),
    (lin(1, 0), lin(1, 0), lin(1, 2), lin(1, 3)),
])
def test_triple_intersection(forms):
    assert triple_intersection_check(*forms)


def test_triple_intersection_rejects_nonlinear():
    with pytest.raises(ValueError):
        triple_intersection_check(Form(x1 * x1, 2, 0), lin(1, 0), lin(0, 1), lin(1, 1))


def test_syzygies_have_degree_order():
    u, v = syzygy_U(), syzygy_V()
    assert (u.adeg, u.order) == (5, 5) and (v.adeg, v.order) == (9, 5)
    assert len(sigma_images()) == 5


def test_theta33_annihilates_F():
    cat = generic_catalog()
    assert transvectant(cat["33"], cat.F, 3).is_zero()


def test_w2_is_a_multiple_of_the_catalog_combination():
    cat = generic_catalog()
    combo = (cat["22"] ** 2).body.scale(7) - cat["44"].body.scale(10)
    assert proportional(beta_map_wronskian().body, combo) is not None
    assert transvectant(beta_map_wronskian(), cat.F, 3).is_zero()


def test_k_tau_is_a_multiple_of_the_reference_expression():
    assert len(REFERENCE_K_TAU) == 5
    ratio = proportional(k_tau_raw(), reference_k_tau())
    assert ratio == recovered_gamma_constant()
    assert ratio == Q(-(2 ** 20) * 3 ** 5, 5 ** 15)


def test_special_triples_solve_the_defining_relation():
    a, b, c = singular_factors()
    k = reference_k_tau()
    found = solve_special_triples(k)
    assert [rst for rst, _, _ in found] == [(0, 0, 4), (0, 1, 3), (0, 2, 2)]
    for (r, s, t), tau, delta in found:
        bind = {"alpha": tau.alpha, "beta": tau.beta, "gamma": tau.gamma}
        assert k.substitute(bind) == (a ** r * b ** s * c ** t).scale(delta)


def test_jacobian_triple_and_gamma():
    e = hermite_evectant()
    tau = jacobian_triple(e)
    assert tau == Triple(Q(1, 6), Q(2, 45), Q(-1, 3))
    assert proportional(gamma_tau(tau).form.body, e.form.body) is not None


def test_gamma_nonzero_at_a_general_quintic():
    f = as_form("x1^5+x2^5+(x1+2*x2)^5")
    assert not transvectant(gamma_tau(base=f).form, f, 5).is_zero()


def test_evectant_of_H_is_proportional_to_display():
    got = hermite_evectant().at(canonical_FQ()).form.body
    assert proportional(got, evectant_FQ_expected()) is not None


def test_morley_map_needs_linear_forms():
    with pytest.raises(ValueError):
        morley_mu(as_form("x1^5+x2^5"), Form(x1 * x1, 2, 0))
    image = morley_mu(as_form("x1^5+x2^5+(x1+x2)^5"), lin(1, 0))
    assert image.order == 5


def test_tangent_vectors_are_quintics():
    vecs = tangent_vectors()
    assert len(vecs) == 5 and all(v.order == 5 for v in vecs)
    assert "eps" not in "".join(str(v.body) for v in vecs)


def test_hermite_invariant_shape():
    h = hermite_invariant()
    assert h.degree_order == (18, 0) and h.weight == 45
