"""Evectants of covariants and their behaviour under transvection."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Dict, List, Optional

from .covariants import Covariant, generic_catalog, generic_form, hermite_invariant
from .forms import (BiForm, Form, _falling, gordan_extract, mu_coefficient, nu_coefficient,
                    transvect_poly, transvectant)
from .ring import ZERO, Poly, Q, a_var


@dataclass
class EvectantSequence:
    """Evectants A_0..A_min(d,n) of ``source``; A_i has degree-order (m-1, d+n-2i)."""

    source: Covariant
    components: List[Covariant]

    @property
    def d(self) -> int:
        return self.source.d

    def __getitem__(self, i: int) -> Covariant:
        return self.components[i]

    def __len__(self) -> int:
        return len(self.components)

    def euler_sum(self) -> Form:
        """sum_i (A_i, F)_(d-i), which must reproduce the source."""
        F = generic_form(self.d).form
        total = ZERO
        for i, a in enumerate(self.components):
            total = total + transvectant(a.form, F, self.d - i).body
        return Form(total, self.source.order, self.source.degree)

    def euler_holds(self) -> bool:
        return self.euler_sum().body == self.source.form.body

    def same_as(self, other: "EvectantSequence") -> bool:
        return (len(self) == len(other)
                and all(a.form.body == b.form.body for a, b in zip(self.components, other)))


def _component(body: Poly, m: int, d: int, n: int, i: int) -> Covariant:
    return Covariant(Form(body, d + n - 2 * i, m - 1), d, f"A{i}", m - 1)


def evectant_operator(phi: Covariant) -> BiForm:
    """Gamma = (1/m) sum_i dPhi(y)/da_i x1^i (-x2)^(d-i), with (Gamma, F)_d = Phi(y)."""
    m, d = phi.degree, phi.d
    if m < 1:
        raise ValueError("the evectant operator needs a covariant of positive degree")
    py = phi.form.to_pair("y").body
    x1, mx2 = Poly.var("x1"), -Poly.var("x2")
    total = ZERO
    for i in range(d + 1):
        da = py.derivative(a_var(i))
        if da:
            total = total + da * (x1 ** i) * (mx2 ** (d - i))
    return BiForm(total.scale(Q(1, m)), d, phi.order, m - 1)


def evectant_sequence(phi: Covariant, check: bool = True) -> EvectantSequence:
    """Evectants by direct Gordan extraction of the evectant operator."""
    gamma = evectant_operator(phi)
    return _sequence_from_gamma(phi, gamma, check)


def _sequence_from_gamma(phi: Covariant, gamma: BiForm, check: bool) -> EvectantSequence:
    d, n, m = phi.d, phi.order, phi.degree
    comps = [_component(gordan_extract(gamma, i).body, m, d, n, i) for i in range(min(d, n) + 1)]
    seq = EvectantSequence(phi, comps)
    if check and not seq.euler_holds():
        raise ArithmeticError("Euler reconstruction failed for the evectant sequence")
    return seq


def power_sequence(phi: Covariant, k: int, check: bool = True) -> EvectantSequence:
    """Evectants of Phi^k from Gamma(Phi^k) = Phi(y)^(k-1) Gamma(Phi)."""
    if k < 1:
        raise ValueError("power must be positive")
    gamma = evectant_operator(phi)
    if k > 1:
        gamma = BiForm(gamma.body * phi.form.to_pair("y").body ** (k - 1),
                       gamma.xorder, gamma.yorder * k, phi.degree * k - 1)
    target = Covariant(phi.form ** k, phi.d, f"{phi.name}^{k}", phi.degree * k)
    return _sequence_from_gamma(target, gamma, check)


def classical_evectant(inv: Covariant) -> Covariant:
    """E_I = (1/m) sum_i dI/da_i (-x2)^(d-i) x1^i for an invariant I."""
    if inv.order != 0:
        raise ValueError("classical evectant needs an invariant (order 0)")
    body = evectant_operator(inv).body
    return Covariant(Form(body, inv.d, inv.degree - 1), inv.d, f"E_{inv.name}", inv.degree - 1)


# -- the transvectant-evectant formula --------------------------------------------

def _lam(i: int, k: int, r: int, n: int, n2: int):
    sign = -1 if k % 2 else 1
    return Q(sign * comb(r, k) * _falling(i, k) * _falling(n - i, r - k) * _falling(n2, r))


def _kappa(d: int, n: int, n2: int, m: int, m2: int, r: int, s: int):
    return Q(factorial(n - r) * factorial(n2 - r) * factorial(d + n + n2 - 2 * r - 2 * s + 1),
             factorial(n) * factorial(n2) * factorial(s) * factorial(d + n + n2 - 2 * r - s + 1) * (m + m2))


def _weight_sum(d, n, n2, r, s, i):
    """sum over k of lambda * mu * nu for component i of the first factor."""
    total = Q(0)
    lo = max(0, r - n + i, i - s)
    for k in range(lo, min(i, r) + 1):
        mu = mu_coefficient(d - i + k, n + n2 - 2 * r - i + k, s, i - k)
        if not mu:
            continue
        nu = nu_coefficient(d - i, n - i - r + k, k, n2 - r, s - i + k)
        if nu:
            total += _lam(i, k, r, n, n2) * mu * nu
    return total


def xi_eta(d: int, m: int, n: int, m2: int, n2: int, r: int, s: int):
    """The weights (xi_i, eta_i) for component s of the evectants of (Phi, Psi)_r."""
    kap = _kappa(d, n, n2, m, m2, r, s)
    xi = [kap * m * _weight_sum(d, n, n2, r, s, i) for i in range(min(d, n) + 1)]
    sign = -1 if r % 2 else 1
    eta = [sign * kap * m2 * _weight_sum(d, n2, n, r, s, i) for i in range(min(d, n2) + 1)]
    return xi, eta


def _tv(a: Form, b: Form, idx: int) -> Poly:
    if idx < 0:
        return ZERO
    return transvect_poly(a.body, a.order, b.body, b.order, idx)


def transvectant_evectants(phi: Covariant, psi: Covariant, seq_phi: EvectantSequence,
                           seq_psi: EvectantSequence, r: int,
                           theta: Optional[Covariant] = None) -> EvectantSequence:
    """Evectants C_s of Theta = (Phi, Psi)_r from those of Phi and Psi."""
    d = phi.d
    m, n, m2, n2 = phi.degree, phi.order, psi.degree, psi.order
    if r < 0 or r > min(n, n2):
        raise ValueError(f"transvectant index {r} out of range for orders {n}, {n2}")
    if theta is None:
        theta = Covariant(transvectant(phi.form, psi.form, r), d, "", m + m2)
    order = n + n2 - 2 * r
    comps = []
    for s in range(min(d, order) + 1):
        xi, eta = xi_eta(d, m, n, m2, n2, r, s)
        total = ZERO
        for i, w in enumerate(xi):
            if w and seq_phi[i].form.body:
                total = total + _tv(seq_phi[i].form, psi.form, r - i + s).scale(w)
        for i, w in enumerate(eta):
            if w and seq_psi[i].form.body:
                total = total + _tv(seq_psi[i].form, phi.form, r - i + s).scale(w)
        comps.append(_component(total, m + m2, d, order, s))
    return EvectantSequence(theta, comps)


def generic_sequence(d: int = 5) -> EvectantSequence:
    """Evectants of F itself: only A_d = 1."""
    F = generic_form(d)
    comps = [_component(ZERO, 1, d, d, i) for i in range(d)]
    comps.append(_component(Poly.const(1), 1, d, d, d))
    return EvectantSequence(F, comps)


# how each catalog entry (and the powers of theta22 it needs) is built
CATALOG_STRUCTURE = {
    "22": ("F", "F", 4),
    "26": ("F", "F", 2),
    "33": ("22", "F", 2),
    "39": ("F", "26", 1),
    "40": ("22", "22", 2),
    "44": ("22", "26", 2),
    "22^2": ("22", "22", 0),
    "51": ("22^2", "F", 4),
    "22^3": ("22^2", "22", 0),
    "80": ("22^3", "26", 6),
    "F*39": ("F", "39", 0),
}


def catalog_covariant(name: str) -> Covariant:
    cat = generic_catalog()
    if name == "F":
        return generic_form(5)
    base, _, power = name.partition("^")
    if power:
        c = cat[base] ** int(power)
    elif name == "F*39":
        c = cat.F * cat["39"]
    else:
        c = cat[name]
    return Covariant(c, 5, name)


class SequenceBuilder:
    """Evectant sequences of catalog covariants, built only by the transvectant formula."""

    def __init__(self):
        self.memo: Dict[str, EvectantSequence] = {"F": generic_sequence(5)}

    def get(self, name: str) -> EvectantSequence:
        hit = self.memo.get(name)
        if hit is not None:
            return hit
        if name.startswith("22^"):
            k = int(name[3:])
            left = "22" if k == 2 else f"22^{k - 1}"
            structure = (left, "22", 0)
        else:
            structure = CATALOG_STRUCTURE[name]
        lname, rname, r = structure
        seq = transvectant_evectants(catalog_covariant(lname), catalog_covariant(rname),
                                     self.get(lname), self.get(rname), r,
                                     catalog_covariant(name))
        self.memo[name] = seq
        return seq


def hermite_evectant_by_transvection(builder: Optional[SequenceBuilder] = None,
                                     power_path: bool = False) -> Covariant:
    """E_H by iterating the transvectant formula along H = (t22^7, F t39)_14."""
    builder = builder or SequenceBuilder()
    t22_7 = catalog_covariant("22^7")
    if power_path:
        seq7 = power_sequence(catalog_covariant("22"), 7, check=False)
    else:
        seq7 = builder.get("22^7")
    right = catalog_covariant("F*39")
    seq = transvectant_evectants(t22_7, right, seq7, builder.get("F*39"), 14, hermite_invariant())
    comp = seq[0]
    return Covariant(comp.form, 5, "E_H", 17)


def hermite_evectant() -> Covariant:
    """E_H by direct differentiation of H."""
    return classical_evectant(hermite_invariant())


# -- identities ---------------------------------------------------------------------

def covariance_pde_check(phi: Covariant) -> bool:
    """The three sl2 differential equations satisfied by every covariant."""
    d = phi.d
    p = phi.form.body
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    da = [p.derivative(a_var(i)) for i in range(d + 1)]
    av = [Poly.var(a_var(i)) for i in range(d + 1)]
    lower = ZERO
    for i in range(d):
        lower = lower + av[i + 1] * da[i] * (d - i)
    raise_ = ZERO
    for i in range(1, d + 1):
        raise_ = raise_ + av[i - 1] * da[i] * i
    torus = ZERO
    for i in range(d + 1):
        torus = torus + av[i] * da[i] * (d - 2 * i)
    dx1, dx2 = p.derivative("x1"), p.derivative("x2")
    return (lower == x1 * dx2 and raise_ == x2 * dx1 and torus == x1 * dx1 - x2 * dx2)


def omega_weight(q: int, i: int, d: int, m: int, n: int):
    if q == 0:
        return Q(d - i)
    if q == 1:
        return Q((d - i) * (2 * i - n), d * (n + 2)) + Q(m * i - n, m * d)
    if q == 2:
        return Q(i * (n - i) * (d - i + n + 1))
    raise ValueError("q must be 0, 1 or 2")


def omega_identity_sums(seq: EvectantSequence) -> List[Poly]:
    """sum_i w_(i,q) (A_i, F)_(d-i-1+q) for q = 0, 1, 2."""
    d, m, n = seq.d, seq.source.degree, seq.source.order
    F = generic_form(d).form
    out = []
    for q in range(3):
        total = ZERO
        for i, a in enumerate(seq.components):
            w = omega_weight(q, i, d, m, n)
            if w and a.form.body:
                total = total + _tv(a.form, F, d - i - 1 + q).scale(w)
        out.append(total)
    return out


def omega_identity_check(seq: EvectantSequence) -> bool:
    return all(s.is_zero() for s in omega_identity_sums(seq))


def phi_diffeq_sides(phi: Covariant, u: Form):
    """Both sides of (([E(x) o Phi(y)], F(x))_(d-1), U(x))_2 = (n/d){(Phi,U)_1}_(x:=y)."""
    if u.order != 2:
        raise ValueError("U must be a quadratic form")
    d, n = phi.d, phi.order
    gamma = evectant_operator(phi).body.scale(phi.degree)
    F = generic_form(d).form
    step = transvect_poly(gamma, d, F.body, d, d - 1)
    lhs = transvect_poly(step, 2, u.body, 2, 2)
    rhs = transvectant(phi.form, u, 1)
    rhs_y = rhs.to_pair("y").body.scale(Q(n, d)) if rhs.body else ZERO
    return lhs, rhs_y


def phi_diffeq_check(phi: Covariant, u: Form) -> bool:
    lhs, rhs = phi_diffeq_sides(phi, u)
    return lhs == rhs
