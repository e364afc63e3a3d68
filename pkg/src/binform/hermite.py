"""Computations around the canonical quintic F_Q and the invariant H."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .covariants import (Catalog, Covariant, as_form, canonical_FQ, coefficient_bindings,
                         generic_catalog, generic_form, hermite_invariant, probe_quintics,
                         quartic_T, theta)
from .forms import Form, transvectant
from .linalg import (Inconsistent, LinearSystem, RankDeficient, coefficient_equations,
                     exact_solve, solve_cofactor, wronskian)
from .ring import ONE, ZERO, Poly, Q, proportional, to_q

Q_NAMES = ("q0", "q1", "q2")
TAU_NAMES = ("alpha", "beta", "gamma")


@dataclass(frozen=True)
class Triple:
    alpha: object
    beta: object
    gamma: object

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma)


@dataclass(frozen=True)
class QPoint:
    q0: Poly
    q1: Poly
    q2: Poly

    @staticmethod
    def symbolic() -> "QPoint":
        return QPoint(Poly.var("q0"), Poly.var("q1"), Poly.var("q2"))

    @staticmethod
    def of(q0, q1, q2) -> "QPoint":
        conv = lambda v: v if isinstance(v, Poly) else Poly.const(to_q(v))
        return QPoint(conv(q0), conv(q1), conv(q2))

    def as_tuple(self):
        return (self.q0, self.q1, self.q2)

    def form(self) -> Form:
        return canonical_FQ(self.q0, self.q1, self.q2)


def _qvars():
    return Poly.var("q0"), Poly.var("q1"), Poly.var("q2")


def singular_factors(point: Optional[QPoint] = None) -> Tuple[Poly, Poly, Poly]:
    """q2, q0 q2 + 3 q1^2 and 5 q0 q2 - q1^2."""
    q0, q1, q2 = (point or QPoint.symbolic()).as_tuple()
    return q2, q0 * q2 + q1 * q1 * 3, q0 * q2 * 5 - q1 * q1


def involution(point: QPoint) -> QPoint:
    """Q -> Q' = [q0 q2 - (6/5) q1^2, q1 q2, -q2^2]."""
    q0, q1, q2 = point.as_tuple()
    return QPoint(q0 * q2 - (q1 * q1).scale(Q(6, 5)), q1 * q2, -(q2 * q2))


def singular_membership(point: QPoint) -> bool:
    """True iff q2 (q0 q2 + 3 q1^2)(5 q0 q2 - q1^2) = 0 at a rational point."""
    value = ONE
    for f in singular_factors(point):
        value = value * f
    return value.constant_value() == 0


def theta51_FQ(point: Optional[QPoint] = None) -> Form:
    base = (point or QPoint.symbolic()).form()
    return Catalog(base)["51"]


def theta51_expected(point: Optional[QPoint] = None) -> Poly:
    a, b, c = singular_factors(point)
    return (a * b * c * Poly.var("x1")).scale(Q(4, 625))


# -- the syzygies U, V and the Wronskian Gamma_tau -----------------------------------

def _param(value, name: str) -> Poly:
    if value is None:
        return Poly.var(name)
    return value if isinstance(value, Poly) else Poly.const(to_q(value))


def syzygy_U(alpha=None, cat: Optional[Catalog] = None) -> Form:
    """U = theta33 theta22 - alpha theta40 F (alpha symbolic by default)."""
    cat = cat or generic_catalog()
    a = _param(alpha, "alpha")
    lead = cat["33"] * cat["22"]
    rest = cat["40"] * cat.F
    return Form(lead.body - a * rest.body, 5, 5)


def syzygy_V(beta=None, gamma=None, cat: Optional[Catalog] = None) -> Form:
    """V = theta51 theta22^2 - beta theta40^2 F - gamma theta80 F."""
    cat = cat or generic_catalog()
    b, g = _param(beta, "beta"), _param(gamma, "gamma")
    lead = cat["51"] * cat["22"] ** 2
    body = lead.body - b * (cat["40"] ** 2 * cat.F).body - g * (cat["80"] * cat.F).body
    return Form(body, 5, 9)


def sigma_images(tau: Optional[Triple] = None, cat: Optional[Catalog] = None) -> List[Form]:
    """(x1^2,F)_1, (x1 x2,F)_1, (x2^2,F)_1, U, V."""
    cat = cat or generic_catalog()
    tau = tau or Triple(None, None, None)
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    quads = [x1 * x1, x1 * x2, x2 * x2]
    images = [transvectant(Form(q, 2, 0), cat.F, 1) for q in quads]
    images.append(syzygy_U(tau.alpha, cat))
    images.append(syzygy_V(tau.beta, tau.gamma, cat))
    return images


def gamma_tau(tau: Optional[Triple] = None, base=None) -> Covariant:
    """Wronskian of sigma_tau(F); degree-order (17, 5).

    Unset triple entries stay symbolic; ``base`` specializes F first.
    """
    cat = generic_catalog() if base is None else Catalog(as_form(base))
    w = wronskian(sigma_images(tau, cat))
    return Covariant(Form(w.body, 5, 17 if base is None else w.adeg), 5, "Gamma_tau", 17)


# reference overall constant of Gamma_tau(F_Q); compare recovered_gamma_constant
GAMMA_SCALE = Q(-(2 ** 6) * 3 ** 2 * 151 * 293, 5 ** 15)

REFERENCE_K_TAU = (
    # coefficient of q0^(4-j) q1^(2j) q2^(4-j): (constant, alpha, beta, gamma)
    (28125, 0, 0, 75000),
    (-22500, 520000, -960000, 42000),
    (6750, 872000, -1344000, 292800),
    (-900, 408000, -576000, 121200),
    (45, 43200, -69120, 12744),
)


def reference_k_tau() -> Poly:
    q0, q1, q2 = _qvars()
    a, b, g = (Poly.var(n) for n in TAU_NAMES)
    total = ZERO
    for j, (c0, ca, cb, cg) in enumerate(REFERENCE_K_TAU):
        coeff = Poly.const(c0) + a.scale(ca) + b.scale(cb) + g.scale(cg)
        total = total + coeff * q0 ** (4 - j) * q1 ** (2 * j) * q2 ** (4 - j)
    return total


def q_monomials(degree: int) -> List[Poly]:
    out = []
    for combo in combinations_with_replacement(Q_NAMES, degree):
        exps: Dict[str, int] = {}
        for name in combo:
            exps[name] = exps.get(name, 0) + 1
        out.append(Poly.monomial(exps))
    return out


def involution_form(point: Optional[QPoint] = None) -> Form:
    return involution(point or QPoint.symbolic()).form()


def gamma_tau_FQ() -> Poly:
    """Gamma_tau(F_Q), symbolic in q and in (alpha, beta, gamma)."""
    return gamma_tau(base=canonical_FQ()).form.body


def k_tau_raw(gamma_fq: Optional[Poly] = None) -> Poly:
    """K with Gamma_tau(F_Q) = q2^3 (q0q2+3q1^2)(5q0q2-q1^2) K F_Q'.

    Gamma_tau is affine in (alpha, beta, gamma), so K is found one part at a
    time by a linear ansatz over the degree-8 monomials in q.
    """
    g = gamma_fq if gamma_fq is not None else gamma_tau_FQ()
    a, b, c = singular_factors()
    factor = a ** 3 * b * c * involution_form().body
    names = Q_NAMES + ("x1", "x2")
    parts = g.coefficients(TAU_NAMES)
    monos = q_monomials(8)
    k = ZERO
    for exps, part in sorted(parts.items()):
        if sum(exps) > 1:
            raise ArithmeticError("Gamma_tau is not affine in the triple")
        tag = ONE
        for name, e in zip(TAU_NAMES, exps):
            if e:
                tag = Poly.var(name)
        k = k + tag * solve_cofactor(part, factor, monos, names)
    return k


def k_tau(gamma_fq: Optional[Poly] = None) -> Poly:
    """K_tau normalized by the display's overall constant."""
    return k_tau_raw(gamma_fq).scale(1 / GAMMA_SCALE)


def recovered_gamma_constant(gamma_fq: Optional[Poly] = None):
    """c with Gamma_tau(F_Q) = c q2^3 (..)(..) K F_Q' when K has the reference coefficients.

    None if the extracted cofactor is not a multiple of the reference K.
    """
    return proportional(k_tau_raw(gamma_fq), reference_k_tau())


def solve_special_triples(k: Optional[Poly] = None):
    """All (r,s,t) with r+2s+2t = 8 for which K_tau = delta q2^r(..)^s(..)^t is solvable.

    Returns [((r,s,t), Triple, delta)], sorted by (r,s,t).
    """
    k = k if k is not None else k_tau()
    a, b, c = singular_factors()
    parts = k.coefficients(TAU_NAMES)
    basis = [parts.get(e, ZERO) for e in ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))]
    out = []
    for r in range(9):
        for s in range(5):
            t2 = 8 - r - 2 * s
            if t2 < 0 or t2 % 2:
                continue
            t = t2 // 2
            shape = a ** r * b ** s * c ** t
            # basis[0] + alpha basis[1] + beta basis[2] + gamma basis[3] - delta shape = 0
            system = coefficient_equations(-basis[0], basis[1:] + [-shape], Q_NAMES)
            sol = exact_solve(system)
            if sol is None or not sol.unique:
                continue
            al, be, ga, delta = sol.values
            if not delta:
                continue
            out.append(((r, s, t), Triple(al, be, ga), delta))
    return out


# -- the Jacobian triple ------------------------------------------------------------

def _general_probes(count: int) -> List[Form]:
    return probe_quintics(count + 1)[1:]


def jacobian_triple(evectant: Covariant, verify: bool = True,
                    probes: Optional[Sequence[Form]] = None) -> Triple:
    """The triple with (E_H, U)_5 = (E_H, V)_5 = 0.

    alpha comes from one probe, (beta, gamma) from a 2x2 system over two
    probes; degenerate probes are skipped.  The result is then checked on the
    generic forms.
    """
    H = hermite_invariant()
    plist = list(probes) if probes is not None else _general_probes(12)
    alpha = None
    rows, rhs = [], []
    for p in plist:
        cat = Catalog(p)
        e = evectant.at(p).form
        h = H.at(p).form.body.constant_value()
        t40 = cat["40"].body.constant_value()
        if alpha is None and h and t40:
            lhs = transvectant(e, cat["33"] * cat["22"], 5).body.constant_value()
            alpha = lhs / (t40 * h)
        if len(rows) < 2 and h:
            lhs = transvectant(e, cat["51"] * cat["22"] ** 2, 5).body.constant_value()
            row = [t40 ** 2 * h, cat["80"].body.constant_value() * h]
            trial = LinearSystem(rows + [row], rhs + [lhs])
            sol = exact_solve(trial)
            if sol is not None and (len(trial.matrix) < 2 or sol.unique):
                rows.append(row)
                rhs.append(lhs)
        if alpha is not None and len(rows) == 2:
            break
    if alpha is None or len(rows) < 2:
        raise RankDeficient("probe quintics did not determine the triple")
    beta, gamma = exact_solve(LinearSystem(rows, rhs)).values
    tau = Triple(alpha, beta, gamma)
    if verify:
        u_res, v_res = syzygy_residuals(evectant, tau)
        if u_res.body or v_res.body:
            raise Inconsistent("the triple does not annihilate E_H symbolically")
    return tau


def syzygy_residuals(evectant: Covariant, tau: Triple):
    """(E_H, U)_5 and (E_H, V)_5 on the generic forms."""
    e = evectant.form
    return (transvectant(e, syzygy_U(tau.alpha), 5),
            transvectant(e, syzygy_V(tau.beta, tau.gamma), 5))


def evectant_FQ_expected() -> Poly:
    a, b, c = singular_factors()
    return (a ** 3 * b ** 2 * c ** 4 * involution_form().body).scale(Q(-(2 ** 6), 3 * 5 ** 14))


# -- the Morley map and Lambda ------------------------------------------------------

def morley_mu(base, a: Form) -> Form:
    """mu_F(A) = (A, (F,theta33)_1)_1 + (1/6) A (F,theta33)_2."""
    if a.order != 1:
        raise ValueError("the Morley map acts on linear forms")
    cat = base if isinstance(base, Catalog) else Catalog(as_form(base))
    f33_1 = transvectant(cat.F, cat["33"], 1)
    f33_2 = transvectant(cat.F, cat["33"], 2)
    return transvectant(a, f33_1, 1) + (a * f33_2) * Q(1, 6)


def lambda_wronskian(base=None) -> Form:
    """W{x1^2 t33, x1x2 t33, x2^2 t33, mu(x1), mu(x2)}."""
    cat = generic_catalog() if base is None else Catalog(as_form(base))
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    t33 = cat["33"]
    rows = [Form(q, 2, 0) * t33 for q in (x1 * x1, x1 * x2, x2 * x2)]
    rows += [morley_mu(cat, Form(x, 1, 0)) for x in (x1, x2)]
    return wronskian(rows)


def lambda_FQ_expected() -> Poly:
    a, b, c = singular_factors()
    return (a ** 3 * b ** 2 * c ** 5 * Poly.var("x1") ** 5).scale(Q(-(2 ** 16) * 3 ** 9, 5 ** 14))


# -- singular-locus geometry ----------------------------------------------------

def tangent_vectors() -> List[Form]:
    """Images of (x1,0,0), (x2,0,0), (0,x1,0), (0,x2,0), (0,0,1) under the
    differential of (l1, l2, xi) -> l1 (l1^4 + 2 xi l1^2 l2^2 + l2^4) at (x1, x2, xi)."""
    x1, x2, xi = Poly.var("x1"), Poly.var("x2"), Poly.var("xi")

    def fhat(l1, l2, s):
        return l1 * (l1 ** 4 + l1 ** 2 * l2 ** 2 * s * 2 + l2 ** 4)

    eps = Poly.var("eps")
    directions = [(x1, ZERO, ZERO), (x2, ZERO, ZERO), (ZERO, x1, ZERO), (ZERO, x2, ZERO),
                  (ZERO, ZERO, ONE)]
    out = []
    for m1, m2, eta in directions:
        moved = fhat(x1 + eps * m1, x2 + eps * m2, xi + eps * eta)
        out.append(Form(moved.derivative("eps").substitute({"eps": 0}), 5, 0))
    return out


def tangent_wronskian() -> Poly:
    return wronskian(tangent_vectors()).body


def tangent_wronskian_expected() -> Poly:
    x1, x2, xi = Poly.var("x1"), Poly.var("x2"), Poly.var("xi")
    from .covariants import cayley_form

    quad = cayley_form([xi * xi * 6 - 5, xi * -5, Poly.const(5)], (x1 * x1, x2 * x2))
    return (x1 * quad).scale(-(2 ** 18) * 3 ** 5 * 5 ** 2)


def triple_intersection_product(a: Form, b: Form, c: Form, d: Form) -> Form:
    """(ab, cd)_1 (ac, bd)_1 (ad, bc)_1 for linear forms a, b, c, d."""
    for f in (a, b, c, d):
        if f.order != 1:
            raise ValueError("expected linear forms")
    return (transvectant(a * b, c * d, 1) * transvectant(a * c, b * d, 1)
            * transvectant(a * d, b * c, 1))


def triple_intersection_check(a: Form, b: Form, c: Form, d: Form) -> bool:
    prod = triple_intersection_product(a, b, c, d)
    t = quartic_T(a * b * c * d)
    if prod.is_zero() or t.is_zero():
        return prod.is_zero() and t.is_zero()
    return proportional(prod.body, t.body) is not None


# -- the maps of the singular strata ---------------------------------------------

def alpha_map_wronskian(base=None) -> Form:
    """W1: Wronskian of G -> (F, G)_2 from quadratics to cubics."""
    return _map_wronskian(2, base)


def beta_map_wronskian(base=None) -> Form:
    """W2: Wronskian of G -> (F, G)_2 from cubics to quartics."""
    return _map_wronskian(3, base)


def _map_wronskian(a: int, base) -> Form:
    F = generic_form(5).form if base is None else as_form(base)
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    images = [transvectant(F, Form(x1 ** (a - j) * x2 ** j, a, 0), 2) for j in range(a + 1)]
    return wronskian(images)
