"""Binary and bihomogeneous forms, transvectants and the Gordan series."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import List, Tuple

from .ring import NUM_A, ONE, ZERO, Poly, Q, mono_exp, slot

PAIRS = {"x": ("x1", "x2"), "y": ("y1", "y2")}
_A_SLOTS = tuple(slot(f"a{i}") for i in range(NUM_A))


def a_degree(p: Poly) -> int:
    """Common degree of p in a0..a11; raises if p is not homogeneous there."""
    degs = {sum(mono_exp(m, s) for s in _A_SLOTS) for m in p.terms}
    if len(degs) > 1:
        raise ValueError("polynomial is not homogeneous in the a-variables")
    return degs.pop() if degs else 0


@dataclass(frozen=True, eq=False)
class Form:
    """A binary form of declared order in x (or y), with a-degree ``adeg``."""

    body: Poly
    order: int
    adeg: int = 0
    var_pair: str = "x"

    @staticmethod
    def make(body, order=None, adeg=None, var_pair="x") -> "Form":
        """Build a Form, inferring or checking the grading."""
        if not isinstance(body, Poly):
            body = Poly.const(body)
        pair = PAIRS[var_pair]
        if order is None:
            if body.is_zero():
                raise ValueError("the zero form needs an explicit order")
            order = body.degree(pair)
        if not body.is_homogeneous(pair, order):
            raise ValueError(f"body is not homogeneous of order {order} in {var_pair}")
        deg = a_degree(body)
        if adeg is None:
            adeg = deg
        elif body and deg != adeg:
            raise ValueError(f"body has a-degree {deg}, declared {adeg}")
        return Form(body, order, adeg, var_pair)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def __add__(self, other: "Form") -> "Form":
        self._same_grading(other)
        return Form(self.body + other.body, self.order, self.adeg, self.var_pair)

    def __sub__(self, other: "Form") -> "Form":
        self._same_grading(other)
        return Form(self.body - other.body, self.order, self.adeg, self.var_pair)

    def __neg__(self) -> "Form":
        return Form(-self.body, self.order, self.adeg, self.var_pair)

    def __mul__(self, other) -> "Form":
        if isinstance(other, Form):
            if other.var_pair != self.var_pair:
                raise ValueError("forms live in different variable pairs")
            return Form(self.body * other.body, self.order + other.order,
                        self.adeg + other.adeg, self.var_pair)
        if isinstance(other, Poly):
            raise TypeError("multiply by a Form or a scalar")
        return Form(self.body.scale(other), self.order, self.adeg, self.var_pair)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Form":
        return Form(self.body ** k, self.order * k, self.adeg * k, self.var_pair)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return (self.order, self.var_pair) == (other.order, other.var_pair) and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.order, self.var_pair, self.body))

    def _same_grading(self, other: "Form") -> None:
        if (self.order, self.var_pair) != (other.order, other.var_pair):
            raise ValueError("forms of different orders cannot be added")
        if self.body and other.body and self.adeg != other.adeg:
            raise ValueError("forms of different a-degrees cannot be added")

    def coefficients(self) -> List[Poly]:
        """[c_0, ..., c_n] with body = sum c_j x1^(n-j) x2^j."""
        v1, v2 = PAIRS[self.var_pair]
        parts = self.body.coefficients((v1, v2))
        return [parts.get((self.order - j, j), ZERO) for j in range(self.order + 1)]

    def substitute(self, bindings) -> "Form":
        """Specialize coefficient variables (never the form's own pair)."""
        pair = PAIRS[self.var_pair]
        if any(k in pair for k in bindings):
            raise ValueError("cannot substitute the form variables themselves")
        body = self.body.substitute(bindings)
        return Form(body, self.order, a_degree(body) if body else self.adeg, self.var_pair)

    def restrict(self, bindings) -> Poly:
        """Substitute anything, including x1/x2, returning a bare Poly."""
        return self.body.substitute(bindings)

    def to_pair(self, var_pair: str) -> "Form":
        if var_pair == self.var_pair:
            return self
        src, dst = PAIRS[self.var_pair], PAIRS[var_pair]
        body = self.body.substitute({src[0]: Poly.var(dst[0]), src[1]: Poly.var(dst[1])})
        return Form(body, self.order, self.adeg, var_pair)

    def __str__(self) -> str:
        return str(self.body)


@dataclass(frozen=True, eq=False)
class BiForm:
    """A form bihomogeneous of orders (xorder, yorder) in x and y."""

    body: Poly
    xorder: int
    yorder: int
    adeg: int = 0

    @staticmethod
    def make(body, xorder, yorder, adeg=None) -> "BiForm":
        if not isinstance(body, Poly):
            body = Poly.const(body)
        if not body.is_homogeneous(PAIRS["x"], xorder) or not body.is_homogeneous(PAIRS["y"], yorder):
            raise ValueError(f"body is not bihomogeneous of orders ({xorder}, {yorder})")
        deg = a_degree(body)
        if adeg is None:
            adeg = deg
        elif body and deg != adeg:
            raise ValueError(f"body has a-degree {deg}, declared {adeg}")
        return BiForm(body, xorder, yorder, adeg)

    @staticmethod
    def product(a: Form, b: Form) -> "BiForm":
        """A(x) * B(y)."""
        return BiForm(a.to_pair("x").body * b.to_pair("y").body, a.order, b.order, a.adeg + b.adeg)

    def is_zero(self) -> bool:
        return self.body.is_zero()

    def __add__(self, other: "BiForm") -> "BiForm":
        if (self.xorder, self.yorder) != (other.xorder, other.yorder):
            raise ValueError("biforms of different orders cannot be added")
        return BiForm(self.body + other.body, self.xorder, self.yorder, max(self.adeg, other.adeg))

    def __sub__(self, other: "BiForm") -> "BiForm":
        return self + (-1) * other

    def __mul__(self, other) -> "BiForm":
        if isinstance(other, BiForm):
            return BiForm(self.body * other.body, self.xorder + other.xorder,
                          self.yorder + other.yorder, self.adeg + other.adeg)
        return BiForm(self.body.scale(other), self.xorder, self.yorder, self.adeg)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiForm":
        return BiForm(self.body ** k, self.xorder * k, self.yorder * k, self.adeg * k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiForm):
            return NotImplemented
        return (self.xorder, self.yorder) == (other.xorder, other.yorder) and self.body == other.body

    def __hash__(self) -> int:
        return hash((self.xorder, self.yorder, self.body))

    def diagonal(self) -> Form:
        """{G}_{y:=x}."""
        body = self.body.substitute({"y1": Poly.var("x1"), "y2": Poly.var("x2")})
        return Form(body, self.xorder + self.yorder, self.adeg, "x")

    def __str__(self) -> str:
        return str(self.body)


# -- transvectants ---------------------------------------------------------

def transvect_poly(a: Poly, m: int, b: Poly, n: int, r: int, pair=("x1", "x2")) -> Poly:
    """(A,B)_r on bare polynomials homogeneous of orders m, n in ``pair``."""
    if r < 0:
        raise ValueError("transvectant index must be nonnegative")
    if r > min(m, n) or a.is_zero() or b.is_zero():
        return ZERO
    v1, v2 = pair
    total = ZERO
    for i in range(r + 1):
        da = a.derivative(v1, r - i).derivative(v2, i)
        db = b.derivative(v1, i).derivative(v2, r - i)
        if da and db:
            term = da * db
            c = comb(r, i)
            total = total + (term.scale(-c) if i % 2 else term.scale(c))
    return total.scale(Q(factorial(m - r) * factorial(n - r), factorial(m) * factorial(n)))


def transvectant(a: Form, b: Form, r: int) -> Form:
    """The r-th transvectant; the zero Form of order m+n-2r when r > min(m, n)."""
    if a.var_pair != b.var_pair:
        raise ValueError("transvectant of forms in different variable pairs")
    m, n = a.order, b.order
    order = m + n - 2 * r
    body = transvect_poly(a.body, m, b.body, n, r, PAIRS[a.var_pair])
    return Form(body, max(order, 0), a.adeg + b.adeg, a.var_pair)


# -- Omega, bracket, polarization -----------------------------------------

def omega_poly(p: Poly, k: int = 1) -> Poly:
    for _ in range(k):
        if p.is_zero():
            break
        p = p.derivative("x1").derivative("y2") - p.derivative("x2").derivative("y1")
    return p


def omega(g: BiForm, k: int = 1) -> BiForm:
    """k-fold Cayley Omega: d2/dx1dy2 - d2/dx2dy1."""
    if k > min(g.xorder, g.yorder):
        return BiForm(ZERO, max(g.xorder - k, 0), max(g.yorder - k, 0), g.adeg)
    return BiForm(omega_poly(g.body, k), g.xorder - k, g.yorder - k, g.adeg)


_BRACKET = Poly.var("x1") * Poly.var("y2") - Poly.var("x2") * Poly.var("y1")


def bracket() -> BiForm:
    """(xy) = x1*y2 - x2*y1."""
    return BiForm(_BRACKET, 1, 1, 0)


def pi_r(g: BiForm, r: int) -> Form:
    m, n = g.xorder, g.yorder
    if r < 0 or r > min(m, n):
        raise ValueError(f"pi_r needs 0 <= r <= {min(m, n)}, got {r}")
    scale = Q(factorial(m - r) * factorial(n - r), factorial(m) * factorial(n))
    return omega(g, r).diagonal() * scale


def _polar_step(p: Poly) -> Poly:
    return Poly.var("y1") * p.derivative("x1") + Poly.var("y2") * p.derivative("x2")


def polarize(theta: Form, s: int, t: int) -> BiForm:
    """Split an order-p form in x into orders (s, t) in (x, y).

    Uses ((p-t)!/p!) (y1 d/dx1 + y2 d/dx2)^t, so l^p goes to l(x)^s l(y)^t.
    """
    theta = theta.to_pair("x")
    p = theta.order
    if s < 0 or t < 0 or s + t != p:
        raise ValueError(f"polarize needs s + t = {p}, got s={s}, t={t}")
    body = theta.body
    for _ in range(t):
        body = _polar_step(body)
    return BiForm(body.scale(Q(factorial(p - t), factorial(p))), s, t, theta.adeg)


def gordan_coefficient(m: int, n: int, r: int):
    return Q(comb(m, r) * comb(n, r), comb(m + n - r + 1, r))


def gordan_series(a: Form, b: Form) -> List[Tuple[object, Form]]:
    """[(c_r, (A,B)_r)] with A(x)B(y) = sum c_r (xy)^r polarize((A,B)_r, m-r, n-r).

    The reconstruction is checked before returning.
    """
    m, n = a.order, b.order
    series = [(gordan_coefficient(m, n, r), transvectant(a, b, r)) for r in range(min(m, n) + 1)]
    rebuilt = BiForm(ZERO, m, n)
    for r, (c, t) in enumerate(series):
        rebuilt = rebuilt + (bracket() ** r) * polarize(t, m - r, n - r) * c
    if rebuilt.body != BiForm.product(a, b).body:
        raise ArithmeticError("Gordan series reconstruction failed")
    return series


def gordan_extract_scale(d: int, n: int, i: int):
    return Q(factorial(d + n - 2 * i + 1), factorial(i) * factorial(d + n - i + 1))


def gordan_extract(g: BiForm, i: int) -> Form:
    """The i-th component A_i of G = sum_i (xy)^i polarize(A_i, d-i, n-i)."""
    d, n = g.xorder, g.yorder
    if i < 0 or i > min(d, n):
        raise ValueError(f"gordan_extract needs 0 <= i <= {min(d, n)}, got {i}")
    return omega(g, i).diagonal() * gordan_extract_scale(d, n, i)


def gordan_components(g: BiForm) -> List[Form]:
    return [gordan_extract(g, i) for i in range(min(g.xorder, g.yorder) + 1)]


def gordan_rebuild(components: List[Form], d: int, n: int) -> BiForm:
    total = BiForm(ZERO, d, n)
    for i, comp in enumerate(components):
        if comp.body:
            total = total + (bracket() ** i) * polarize(comp, d - i, n - i)
    return total


# -- combinatorial coefficients -------------------------------------------

def _falling(a: int, k: int) -> int:
    """a!/(a-k)!"""
    out = 1
    for j in range(a, a - k, -1):
        out *= j
    return out


@lru_cache(maxsize=None)
def mu_coefficient(p: int, q: int, ell: int, i: int):
    """Factor from cancelling (xy)^i against Omega^ell; zero when ell < i."""
    if ell < i:
        return Q(0)
    return Q(_falling(ell, i) * _falling(p + q - ell + 2 * i + 1, i))


@lru_cache(maxsize=None)
def nu_coefficient(p1: int, q1: int, p2: int, q2: int, u: int):
    lo = max(0, u - min(q1, p2))
    hi = min(p1, q2, u)
    total = 0
    for t in range(lo, hi + 1):
        term = (comb(u, t) * _falling(p1, t) * _falling(q1, u - t)
                * _falling(p2, u - t) * _falling(q2, t))
        total += -term if (u - t) % 2 else term
    return Q(total)
