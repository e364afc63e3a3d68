import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from binform import cache
from binform.covariants import (BASIS_95_NAMES, THETA_NAMES, Catalog, Covariant, CovariantBasis,
                                as_form, basis_95, canonical_FQ, cayley_form, cayley_sylvester,
                                coefficient_bindings, express_in_basis, generic_form,
                                partitions_bounded, probe_quintics, quartic_T, theta, theta_at)
from binform.forms import Form, transvectant
from binform.linalg import rank
from binform.ring import Poly, Q, parse, var

x1, x2 = var("x1"), var("x2")

DEGREE_ORDERS = {"22": (2, 2), "26": (2, 6), "33": (3, 3), "39": (3, 9), "40": (4, 0),
                 "44": (4, 4), "51": (5, 1), "80": (8, 0), "82": (8, 2)}


def test_generic_forms():
    assert generic_form(1).form.body == var("a0") * x1 + var("a1") * x2
    f5 = generic_form(5)
    assert len(f5.form.body) == 6
    assert f5.weight == 0 and f5.degree_order == (1, 5)
    assert f5.form.body.substitute({"a0": 0, "a1": 0, "a2": 1, "a3": 0, "a4": 0, "a5": 0}) == \
        (x1 ** 3 * x2 ** 2).scale(10)


def test_coefficient_bindings_recover_a_values():
    base = as_form("x1^5 + 10*x1^3*x2^2 - x2^5")
    bind = coefficient_bindings(base)
    assert bind["a0"] == Poly.const(1) and bind["a2"] == Poly.const(1) and bind["a5"] == Poly.const(-1)
    assert generic_form(5).at(base).form.body == base.body


@pytest.mark.parametrize("name", THETA_NAMES)
def test_catalog_degree_orders_and_weights(name):
    c = theta(name)
    assert c.degree_order == DEGREE_ORDERS[name]
    assert c.weight == (5 * c.degree - c.order) // 2 >= 0
    assert not c.form.is_zero()
    assert cayley_sylvester(5, *c.degree_order) >= 1


def test_catalog_examples():
    assert theta_at("22", as_form("x1^5+x2^5")).form.body == (x1 * x2).scale(2)
    got = theta_at("33", as_form("x1^5+2*x2^5+(x1+x2)^5")).form.body
    assert got == (x1 * x2 * (x1 + x2)).scale(-12)
    with pytest.raises(KeyError):
        theta("99")


def test_theta_at_agrees_with_specializing_the_generic_covariant():
    base = as_form("x1^5 - 2*x1^3*x2^2 + 3*x1*x2^4 + x2^5")
    for name in ("22", "33", "44", "51"):
        assert theta_at(name, base).form.body == theta(name).at(base).form.body


def test_covariant_weight_is_validated():
    with pytest.raises(ValueError):
        Covariant(Form(var("a0") * x1 ** 2, 2, 1), 5)
    zero = Covariant(Form(Poly(), 3, 1), 5)
    assert zero.order == 3


def test_partition_pins():
    assert partitions_bounded(45, 5, 18) == 967
    assert partitions_bounded(44, 5, 18) == 966
    assert partitions_bounded(20, 5, 9) == 98
    assert partitions_bounded(19, 5, 9) == 93


@pytest.mark.parametrize("d, m, q, want", [
    (5, 4, 8, 2), (5, 9, 5, 5), (5, 18, 0, 1), (5, 22, 0, 1), (5, 3, 3, 1), (5, 3, 1, 0),
    (4, 3, 6, 1), (5, 1, 5, 1), (5, 2, 1, 0)])
def test_cayley_sylvester_pins(d, m, q, want):
    assert cayley_sylvester(d, m, q) == want


@given(st.integers(0, 30), st.integers(1, 6), st.integers(1, 6))
def test_partition_symmetry(n, k, l):
    # conjugation swaps the bounds on the number and the size of parts
    assert partitions_bounded(n, k, l) == partitions_bounded(n, l, k)
    # complementation inside the k x l box
    assert partitions_bounded(n, k, l) == partitions_bounded(k * l - n, k, l)


def _transvectant_closure(max_degree):
    levels = {1: [generic_form(5).form]}
    for m in range(2, max_degree + 1):
        found = []
        for m1 in range(1, m // 2 + 1):
            for a in levels[m1]:
                for b in levels[m - m1]:
                    for r in range(min(a.order, b.order) + 1):
                        t = transvectant(a, b, r)
                        if not t.is_zero():
                            found.append(t)
        levels[m] = found
    return levels


def _coefficient_rows(forms):
    keys = sorted({k for f in forms for k in f.body.terms})
    return [[f.body.terms.get(k, 0) for k in keys] for f in forms]


def test_cayley_sylvester_matches_spanning_rank():
    levels = _transvectant_closure(4)
    for m, forms in levels.items():
        for q in range(5 * m + 1):
            cell = [f for f in forms if f.order == q]
            got = rank(_coefficient_rows(cell)) if cell else 0
            assert got == cayley_sylvester(5, m, q), (m, q)


def test_express_in_basis_trivial_and_errors():
    basis = CovariantBasis([Covariant(theta(22).form ** 2, 5, "t22^2"), theta(44)])
    assert express_in_basis(basis.entries[0], basis) == [1, 0]
    with pytest.raises(ValueError):
        express_in_basis(theta(33), basis)
    with pytest.raises(ValueError):
        CovariantBasis([theta(22), theta(33)])


def test_theta82_combination_in_degree_nine_basis():
    target = Covariant(transvectant(generic_form(5).form, theta(82).form, 1), 5)
    coeffs = express_in_basis(target, basis_95())
    assert coeffs == [Q(-7, 10), Q(-1, 4), Q(5, 12), Q(-1, 20), Q(-1, 4)]
    assert basis_95().names == list(BASIS_95_NAMES)


def test_probe_quintics_are_deterministic():
    first = probe_quintics(8)
    assert first == probe_quintics(8)
    assert first[0].body == parse("x1^5+x2^5+(x1+x2)^5")
    assert len({str(p.body) for p in first}) == 8


def test_canonical_FQ():
    fq = canonical_FQ()
    assert canonical_FQ(1, 0, 0).body == x1 ** 5
    coeffs = fq.body.coefficients(("x1", "x2"))
    assert coeffs[(3, 2)] == var("q1").scale(2)
    assert fq.body.substitute({"x1": 0}).is_zero()


def test_cayley_form():
    assert cayley_form([1, 2, 3]) == x1 ** 2 + (x1 * x2).scale(4) + (x2 ** 2).scale(3)


def test_quartic_T_double_points():
    assert quartic_T(as_form("x1^2*x2^2", 4)).is_zero()
    assert quartic_T(as_form("(x1^2-x2^2)^2", 4)).is_zero()
    assert not quartic_T(as_form("x1*x2*(x1+x2)*(x1-x2)", 4)).is_zero()
    with pytest.raises(ValueError):
        quartic_T(as_form("x1^5", 5))


def test_cache_round_trip(tmp_path):
    poly = parse("3/7*a0^2*x1 - a5*x2 + 1")
    calls = []

    def compute():
        calls.append(1)
        return poly

    cache.configure(tmp_path)
    try:
        assert cache.cached_poly("demo", "k=1", compute) == poly
        assert cache.cached_poly("demo", "k=1", compute) == poly
        assert len(calls) == 1
        for f in tmp_path.iterdir():
            f.write_text(f.read_text().replace("3/7", "3/8"))
        assert cache.cached_poly("demo", "k=1", compute) == poly  # corrupt entry recomputed
        assert len(calls) == 2
    finally:
        cache.configure(None)


def test_catalog_is_memoized():
    cat = Catalog(as_form("x1^5+x2^5+(x1+x2)^5"))
    assert cat["33"] is cat["33"]
    with pytest.raises(KeyError):
        cat["17"]
