"""The generic d-ic, the quintic catalog, dimension counts and the invariant H."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Callable, Dict, List, Optional, Sequence

from . import cache
from .forms import Form, transvectant
from .linalg import Inconsistent, LinearSystem, RankDeficient, exact_solve, rank
from .ring import ZERO, Poly, Q, a_var, parse, to_q


@dataclass(frozen=True, eq=False)
class Covariant:
    """A covariant of d-ics: a Form with its source order ``d``.

    A nonzero covariant must have a nonnegative integral weight (dm - q)/2.

    ``degree`` defaults to the form's a-degree; a covariant specialized at a
    concrete form keeps the degree of the generic one.
    """

    form: Form
    d: int
    name: str = ""
    degree: Optional[int] = None

    def __post_init__(self):
        if self.degree is None:
            object.__setattr__(self, "degree", self.form.adeg)
        w2 = self.d * self.degree - self.order
        if self.form.body and (w2 % 2 or w2 < 0):
            raise ValueError(f"degree-order ({self.degree},{self.order}) has no integral weight for d={self.d}")

    @property
    def order(self) -> int:
        return self.form.order

    @property
    def weight(self) -> int:
        return (self.d * self.degree - self.order) // 2

    @property
    def degree_order(self):
        return (self.degree, self.order)

    def at(self, base: Form) -> "Covariant":
        """Specialize the coefficients a_i to those of a concrete d-ic."""
        form = self.form.substitute(coefficient_bindings(base, self.d))
        return Covariant(form, self.d, self.name, self.degree)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Covariant):
            return NotImplemented
        return self.d == other.d and self.form == other.form

    def __hash__(self) -> int:
        return hash((self.d, self.form))

    def __str__(self) -> str:
        return str(self.form)


@dataclass
class CovariantBasis:
    entries: List[Covariant]
    names: Optional[List[str]] = None

    def __post_init__(self):
        if not self.entries:
            raise ValueError("empty basis")
        dos = {(c.d, c.degree, c.order) for c in self.entries}
        if len(dos) != 1:
            raise ValueError("basis entries must share one degree-order")
        if self.names is None:
            self.names = [c.name or f"b{i}" for i, c in enumerate(self.entries)]

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)


# -- generic forms and specializations ---------------------------------------

@lru_cache(maxsize=None)
def _generic_form(d: int) -> Form:
    if d < 1:
        raise ValueError("order must be at least 1")
    body = ZERO
    for i in range(d + 1):
        body = body + Poly.monomial({a_var(i): 1, "x1": d - i, "x2": i}, comb(d, i))
    return Form(body, d, 1)


def generic_form(d: int = 5) -> Covariant:
    """F = sum_i C(d,i) a_i x1^(d-i) x2^i."""
    return Covariant(_generic_form(d), d, "F")


def coefficient_bindings(base: Form, d: Optional[int] = None) -> Dict[str, Poly]:
    """{a_i: c_i / C(d,i)} for base = sum c_i x1^(d-i) x2^i."""
    d = base.order if d is None else d
    if base.order != d:
        raise ValueError(f"expected a form of order {d}, got {base.order}")
    if base.adeg:
        raise ValueError("the base form must not involve a0..a11")
    return {a_var(i): c.scale(Q(1, comb(d, i))) for i, c in enumerate(base.coefficients())}


def as_form(spec, d: int = 5) -> Form:
    """Accept a Form, a Poly or a polynomial string as a concrete d-ic."""
    if isinstance(spec, Covariant):
        spec = spec.form
    if isinstance(spec, str):
        spec = parse(spec)
    if isinstance(spec, Poly):
        spec = Form.make(spec, d)
    if spec.order != d:
        raise ValueError(f"expected order {d}, got {spec.order}")
    return spec


def cayley_form(coeffs, var_pair=("x1", "x2")) -> Poly:
    """(c_0, ..., c_n)(u, v)^n = sum C(n,j) c_j u^(n-j) v^j for Poly u, v."""
    coeffs = [c if isinstance(c, Poly) else Poly.const(to_q(c)) for c in coeffs]
    n = len(coeffs) - 1
    u, v = var_pair
    u = u if isinstance(u, Poly) else Poly.var(u)
    v = v if isinstance(v, Poly) else Poly.var(v)
    total = ZERO
    for j, c in enumerate(coeffs):
        total = total + c * (u ** (n - j)) * (v ** j) * comb(n, j)
    return total


# -- dimension counts ---------------------------------------------------------

@lru_cache(maxsize=None)
def partitions_bounded(n: int, k: int, l: int) -> int:
    """Partitions of n into at most k parts, each part at most l."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    if k <= 0 or l <= 0 or n > k * l:
        return 0
    # either fewer than k parts, or exactly k parts (remove one from each)
    return partitions_bounded(n, k - 1, l) + partitions_bounded(n - k, k, l - 1)


def cayley_sylvester(d: int, m: int, q: int) -> int:
    """Dimension of the space of covariants of degree m and order q of d-ics."""
    w2 = d * m - q
    if w2 < 0 or w2 % 2:
        return 0
    w = w2 // 2
    return partitions_bounded(w, d, m) - partitions_bounded(w - 1, d, m)


# -- the quintic catalog ------------------------------------------------------

THETA_NAMES = ("22", "26", "33", "39", "40", "44", "51", "80", "82")

_RECIPES: Dict[str, Callable[["Catalog"], Form]] = {
    "22": lambda c: transvectant(c.F, c.F, 4),
    "26": lambda c: transvectant(c.F, c.F, 2),
    "33": lambda c: transvectant(c["22"], c.F, 2),
    "39": lambda c: transvectant(c.F, c["26"], 1),
    "40": lambda c: transvectant(c["22"], c["22"], 2),
    "44": lambda c: transvectant(c["22"], c["26"], 2),
    "51": lambda c: transvectant(c["22"] ** 2, c.F, 4),
    "80": lambda c: transvectant(c["22"] ** 3, c["26"], 6),
}

# degree-8 order-2 candidates for theta_82, tried in order
THETA82_CANDIDATES = (
    ("(t22^2, t44)_3", lambda c: transvectant(c["22"] ** 2, c["44"], 3)),
    ("(t22^3, t26)_5", lambda c: transvectant(c["22"] ** 3, c["26"], 5)),
    ("(t51, t33)_1", lambda c: transvectant(c["51"], c["33"], 1)),
)

# leading coefficient of (F, theta_82)_1 in BASIS_95_NAMES fixes theta_82's scale
THETA82_LEAD = Q(-7, 10)
BASIS_95_NAMES = ("t51*t22^2", "t51*t44", "t40*t33*t22", "t40^2*F", "t80*F")


class Catalog:
    """Catalog covariants evaluated at one base quintic (generic or concrete).

    Entries are computed on demand and memoized; a lock makes the first
    computation of each entry single-writer.
    """

    def __init__(self, base: Form):
        if base.order != 5:
            raise ValueError("the catalog is for quintics")
        self.F = base
        self._memo: Dict[str, Form] = {}
        self._lock = threading.RLock()

    def __getitem__(self, name: str) -> Form:
        hit = self._memo.get(name)
        if hit is not None:
            return hit
        with self._lock:
            hit = self._memo.get(name)
            if hit is None:
                hit = self._compute(name)
                self._memo[name] = hit
            return hit

    def _compute(self, name: str) -> Form:
        if name == "F":
            return self.F
        if name in _RECIPES:
            return _RECIPES[name](self)
        if name == "82":
            idx, scale = theta82_choice()
            return THETA82_CANDIDATES[idx][1](self) * scale
        if name == "H":
            return hermite_recipe(self)
        raise KeyError(f"unknown catalog entry {name!r}")

    def basis_95(self) -> List[Form]:
        t = self
        return [t["51"] * t["22"] ** 2, t["51"] * t["44"], t["40"] * t["33"] * t["22"],
                t["40"] ** 2 * t.F, t["80"] * t.F]


_generic_lock = threading.Lock()
_generic_catalog: Optional[Catalog] = None


def generic_catalog() -> Catalog:
    global _generic_catalog
    with _generic_lock:
        if _generic_catalog is None:
            _generic_catalog = Catalog(_generic_form(5))
        return _generic_catalog


def _degree_of(name: str) -> int:
    return int(name[0])


def theta(name) -> Covariant:
    """Catalog covariant theta_{mq} of the generic quintic (memoized)."""
    name = str(name)
    if name not in THETA_NAMES:
        raise KeyError(f"unknown catalog entry theta_{name}")
    return Covariant(generic_catalog()[name], 5, f"theta{name}")


def theta_at(name, base) -> Covariant:
    """theta_{mq} evaluated directly at a concrete quintic."""
    name = str(name)
    if name not in THETA_NAMES and name != "F":
        raise KeyError(f"unknown catalog entry theta_{name}")
    degree = 1 if name == "F" else _degree_of(name)
    return Covariant(Catalog(as_form(base))[name], 5, f"theta{name}", degree)


_theta82_lock = threading.Lock()
_theta82: Optional[tuple] = None


def theta82_choice():
    """(candidate index, scale) for theta_82, computed once.

    The first candidate that is not identically zero is taken; it is scaled so
    that (F, theta_82)_1 has leading coefficient -7/10 in the degree-9 basis.
    """
    global _theta82
    with _theta82_lock:
        if _theta82 is not None:
            return _theta82
        cat = generic_catalog()
        F = generic_form(5)
        for idx, (_, recipe) in enumerate(THETA82_CANDIDATES):
            raw = recipe(cat)
            if raw.is_zero():
                continue
            target = Covariant(transvectant(F.form, raw, 1), 5)
            basis = CovariantBasis([Covariant(b, 5, n) for b, n in zip(cat.basis_95(), BASIS_95_NAMES)])
            coeffs = express_in_basis(target, basis)
            if not coeffs[0]:
                continue
            _theta82 = (idx, THETA82_LEAD / coeffs[0])
            return _theta82
        raise ArithmeticError("no nonzero candidate for theta_82")


def basis_95() -> CovariantBasis:
    cat = generic_catalog()
    return CovariantBasis([Covariant(b, 5, n) for b, n in zip(cat.basis_95(), BASIS_95_NAMES)])


# -- the Hermite invariant -----------------------------------------------------

def hermite_recipe(cat: Catalog) -> Form:
    """H = (theta22^7, F theta39)_14 at the catalog's base form."""
    return transvectant(cat["22"] ** 7, cat.F * cat["39"], 14)


_hermite_lock = threading.Lock()
_hermite: Optional[Covariant] = None


def hermite_invariant() -> Covariant:
    """The degree-18 skew invariant H of the generic quintic (disk-cached)."""
    global _hermite
    with _hermite_lock:
        if _hermite is None:
            body = cache.cached_poly("hermite_invariant", "d=5",
                                     lambda: hermite_recipe(generic_catalog()).body)
            _hermite = Covariant(Form(body, 0, 18), 5, "H")
        else:
            cache.ensure("hermite_invariant", "d=5", _hermite.form.body)
        return _hermite


def hermite_at(base) -> Poly:
    """H evaluated at a concrete quintic, by the recipe (no generic H needed)."""
    return hermite_recipe(Catalog(as_form(base))).body


# -- quartics and the canonical quintic ----------------------------------------

def quartic_T(g: Form) -> Form:
    """T(G) = (G, (G,G)_2)_1 for a quartic G."""
    if g.order != 4:
        raise ValueError("quartic_T needs a form of order 4")
    return transvectant(g, transvectant(g, g, 2), 1)


def canonical_FQ(q0=None, q1=None, q2=None) -> Form:
    """F_Q = x1 (q0 x1^4 + 2 q1 x1^2 x2^2 + q2 x2^4), symbolic in q by default."""
    qs = [Poly.var(n) if v is None else (v if isinstance(v, Poly) else Poly.const(to_q(v)))
          for n, v in (("q0", q0), ("q1", q1), ("q2", q2))]
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    body = x1 * (qs[0] * x1 ** 4 + qs[1] * x1 ** 2 * x2 ** 2 * 2 + qs[2] * x2 ** 4)
    return Form(body, 5, 0)


def probe_quintics(count: int) -> List[Form]:
    """Deterministic concrete quintics for specialization tests.

    The first is x1^5 + x2^5 + (x1+x2)^5; the rest have coefficients in -3..3.
    """
    x1, x2 = Poly.var("x1"), Poly.var("x2")
    out = [Form(x1 ** 5 + x2 ** 5 + (x1 + x2) ** 5, 5, 0)]
    k = 0
    while len(out) < count:
        k += 1
        coeffs = [((k * (j + 2) * (j + 3) + 3 * j + k * k) % 7) - 3 for j in range(6)]
        body = ZERO
        for j, c in enumerate(coeffs):
            if c:
                body = body + Poly.monomial({"x1": 5 - j, "x2": j}, c)
        if body and body.degree(("x1",)) >= 1:
            out.append(Form(body, 5, 0))
    return out


def express_in_basis(target: Covariant, basis: CovariantBasis,
                     probes: Optional[Sequence[Form]] = None) -> List[object]:
    """Exact c with target = sum c_i basis_i, found by specialization.

    Without explicit probes, deterministic quintics are added until the
    specialization system has full column rank.  The answer is verified on the
    generic forms before it is returned.
    """
    entries = list(basis)
    for b in entries:
        if (b.d, b.degree, b.order) != (target.d, target.degree, target.order):
            raise ValueError("target and basis must share one degree-order")
    auto = probes is None
    count = len(entries) + 1
    while True:
        plist = probe_quintics(count) if auto else list(probes)
        matrix, rhs = [], []
        for p in plist:
            bind = coefficient_bindings(p, target.d)
            cols = [b.form.substitute(bind).coefficients() for b in entries]
            t = target.form.substitute(bind).coefficients()
            for j in range(target.order + 1):
                matrix.append([c[j].constant_value() for c in cols])
                rhs.append(t[j].constant_value())
        full = rank(matrix) == len(entries)
        if full or not auto:
            break
        if count > 6 * len(entries) + 20:
            break
        count += 2
    if not full:
        raise RankDeficient("probe specializations do not separate the basis")
    sol = exact_solve(LinearSystem(matrix, rhs))
    if sol is None:
        raise Inconsistent("target is not in the span of the basis")
    combo = ZERO
    for c, b in zip(sol.values, entries):
        if c:
            combo = combo + b.form.body.scale(c)
    if combo != target.form.body:
        raise Inconsistent("specialized solution does not hold on the generic forms")
    return sol.values
