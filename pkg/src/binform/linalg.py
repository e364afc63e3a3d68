"""Wronskians, covariant-induced maps, Sylvester resultants and exact solving."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

import gmpy2

from .forms import PAIRS, Form, transvectant
from .ring import ZERO, Poly, Q, to_q


class RankDeficient(ArithmeticError):
    """The linear system does not determine a unique solution."""


class Inconsistent(ArithmeticError):
    """The linear system has no solution."""


# -- determinants ----------------------------------------------------------

def determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials.

    Rows are consumed top to bottom; for each set S of already-used columns we
    keep the minor on the first |S| rows and columns S.  No division occurs,
    and the summation order is fixed, so the result is reproducible.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    if n == 0:
        return Poly.const(1)
    minors: Dict[int, Poly] = {0: Poly.const(1)}
    for row in rows:
        nxt: Dict[int, Poly] = {}
        for used, minor in sorted(minors.items()):
            for j in range(n):
                bit = 1 << j
                if used & bit or not row[j]:
                    continue
                # sign of the entry within the minor: columns of S above j
                above = bin(used >> (j + 1)).count("1")
                term = minor * row[j]
                if above % 2:
                    term = -term
                key = used | bit
                prev = nxt.get(key)
                nxt[key] = term if prev is None else prev + term
        minors = {k: v for k, v in nxt.items() if v}
        if not minors:
            return ZERO
    return minors.get((1 << n) - 1, ZERO)


def scalar_determinant(rows: Sequence[Sequence[object]]):
    """Determinant of a rational matrix (Bareiss on an integer-scaled copy)."""
    n = len(rows)
    m = [[to_q(c) for c in r] for r in rows]
    scale = Q(1)
    ints = []
    for r in m:
        den = 1
        for c in r:
            den = gmpy2.lcm(den, c.denominator)
        scale /= den
        ints.append([gmpy2.mpz(c * den) for c in r])
    sign = 1
    prev = gmpy2.mpz(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if ints[i][k]), None)
        if piv is None:
            return Q(0)
        if piv != k:
            ints[k], ints[piv] = ints[piv], ints[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                ints[i][j] = (ints[i][j] * ints[k][k] - ints[i][k] * ints[k][j]) // prev
            ints[i][k] = 0
        prev = ints[k][k]
    return Q(sign * prev) * scale if n else Q(1)


# -- Wronskians --------------------------------------------------------------

def wronskian_matrix(forms: Sequence[Form]) -> List[List[Poly]]:
    """Entry (i, j) = d^(m-1) A_i / dx1^(m-1-j) dx2^j for j = 0..m-1."""
    if not forms:
        raise ValueError("wronskian of an empty family")
    n = forms[0].order
    pair = PAIRS[forms[0].var_pair]
    if any(f.order != n or f.var_pair != forms[0].var_pair for f in forms):
        raise ValueError("wronskian needs forms of one common order")
    m = len(forms)
    if m > n + 1:
        raise ValueError(f"{m} forms of order {n} are always dependent")
    return [[f.body.derivative(pair[0], m - 1 - j).derivative(pair[1], j) for j in range(m)]
            for f in forms]


def wronskian(forms: Sequence[Form]) -> Form:
    """W(A_1..A_m) of order m(n-m+1); zero iff the forms are dependent."""
    body = determinant(wronskian_matrix(forms))
    m, n = len(forms), forms[0].order
    return Form(body, m * (n - m + 1), sum(f.adeg for f in forms), forms[0].var_pair)


# -- covariant-induced maps ----------------------------------------------------

def monomial_basis(a: int, var_pair: str = "x") -> List[Form]:
    """x1^a, x1^(a-1) x2, ..., x2^a."""
    v1, v2 = PAIRS[var_pair]
    return [Form(Poly.monomial({v1: a - j, v2: j}), a, 0, var_pair) for j in range(a + 1)]


def _specialize(phi, base):
    if base is None:
        return phi.form if hasattr(phi, "form") else phi
    return phi.at(base).form if hasattr(phi, "at") else phi


def map_images(phi, a: int, b: int, base=None) -> List[Form]:
    """Images of the monomial basis of S_a under G -> (Phi_F, G)_r."""
    form = _specialize(phi, base)
    q = form.order
    if a < 0 or b < 0 or (a + q - b) % 2 or a + q < b:
        raise ValueError(f"no transvectant map S_{a} -> S_{b} from an order-{q} covariant")
    r = (a + q - b) // 2
    if r > min(a, q):
        raise ValueError(f"transvectant index {r} exceeds min({a}, {q})")
    return [transvectant(form, g, r) for g in monomial_basis(a, form.var_pair)]


@dataclass
class FormMatrix:
    """A rectangular matrix whose entries are Polys (column j = image of basis j)."""

    entries: List[List[Poly]]

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def specialize(self, bindings) -> "FormMatrix":
        return FormMatrix([[e.substitute(bindings) for e in row] for row in self.entries])

    def rational_rank(self) -> int:
        return rank([[e.constant_value() for e in row] for row in self.entries])


def covariant_map_matrix(phi, a: int, b: int, base=None) -> FormMatrix:
    """The (b+1) x (a+1) matrix of G -> (Phi_F, G)_r over monomial bases."""
    images = map_images(phi, a, b, base)
    cols = [img.coefficients() for img in images]
    return FormMatrix([[cols[j][i] for j in range(a + 1)] for i in range(b + 1)])


def map_wronskian(phi_or_images, a: Optional[int] = None, b: Optional[int] = None, base=None) -> Form:
    """Wronskian of the images of a covariant-induced map (or of given images)."""
    if a is None:
        images = list(phi_or_images)
    else:
        images = map_images(phi_or_images, a, b, base)
    return wronskian(images)


# -- resultants --------------------------------------------------------------

def sylvester_matrix(a: Form, b: Form) -> List[List[Poly]]:
    """n shifted rows of A's coefficients, then m shifted rows of B's."""
    m, n = a.order, b.order
    if m < 1 or n < 1:
        raise ValueError("Sylvester matrix needs forms of positive order")
    ca, cb = a.coefficients(), b.coefficients()
    size = m + n
    rows = []
    for k in range(n):
        rows.append([ZERO] * k + ca + [ZERO] * (size - m - 1 - k))
    for k in range(m):
        rows.append([ZERO] * k + cb + [ZERO] * (size - n - 1 - k))
    return rows


def sylvester_resultant(a: Form, b: Form) -> Poly:
    return determinant(sylvester_matrix(a, b))


# -- exact linear systems ---------------------------------------------------------

@dataclass
class LinearSystem:
    matrix: List[List[object]]
    rhs: List[object]

    def __post_init__(self):
        self.matrix = [[to_q(c) for c in row] for row in self.matrix]
        self.rhs = [to_q(c) for c in self.rhs]
        if len(self.matrix) != len(self.rhs):
            raise ValueError("matrix and right-hand side have different lengths")
        widths = {len(r) for r in self.matrix}
        if len(widths) > 1:
            raise ValueError("ragged matrix")

    @property
    def ncols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


@dataclass
class Solution:
    """A particular solution; ``free`` lists the undetermined unknowns (set to 0)."""

    values: List[object]
    free: List[int] = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return not self.free


def _echelon(rows: List[List[object]], ncols: int):
    """Fraction-free (Bareiss) row echelon form of integer-scaled rows.

    Returns (integer rows, pivot columns).
    """
    ints = []
    for r in rows:
        den = 1
        for c in r:
            den = gmpy2.lcm(den, c.denominator)
        ints.append([gmpy2.mpz(c * den) for c in r])
    pivots = []
    prev = gmpy2.mpz(1)
    top = 0
    width = len(ints[0]) if ints else 0
    for col in range(ncols):
        piv = next((i for i in range(top, len(ints)) if ints[i][col]), None)
        if piv is None:
            continue
        ints[top], ints[piv] = ints[piv], ints[top]
        p = ints[top][col]
        for i in range(top + 1, len(ints)):
            f = ints[i][col]
            row = ints[i]
            prow = ints[top]
            for j in range(col, width):
                row[j] = (row[j] * p - f * prow[j]) // prev
        prev = p
        pivots.append(col)
        top += 1
        if top == len(ints):
            break
    return ints, pivots


def exact_solve(system: LinearSystem) -> Optional[Solution]:
    """Solve exactly; None when inconsistent.  Free unknowns are reported."""
    n = system.ncols
    aug = [row + [b] for row, b in zip(system.matrix, system.rhs)]
    if not aug:
        return Solution([Q(0)] * n, list(range(n)))
    ints, pivots = _echelon(aug, n)
    r = len(pivots)
    for row in ints[r:]:
        if row[n]:
            return None
    values = [Q(0)] * n
    for k in range(r - 1, -1, -1):
        col = pivots[k]
        row = ints[k]
        acc = Q(row[n])
        for j in range(col + 1, n):
            if row[j]:
                acc -= row[j] * values[j]
        values[col] = acc / row[col]
    free = [j for j in range(n) if j not in set(pivots)]
    return Solution(values, free)


def solve_unique(system: LinearSystem) -> List[object]:
    """Like exact_solve, but raise unless the solution exists and is unique."""
    sol = exact_solve(system)
    if sol is None:
        raise Inconsistent("linear system is inconsistent")
    if not sol.unique:
        raise RankDeficient(f"unknowns {sol.free} are undetermined")
    return sol.values


def rank(rows: List[List[object]]) -> int:
    if not rows:
        return 0
    rows = [[to_q(c) for c in r] for r in rows]
    return len(_echelon(rows, len(rows[0]))[1])


def nullspace(rows: List[List[object]]) -> List[List[object]]:
    """A basis of {v : rows . v = 0}."""
    if not rows:
        return []
    n = len(rows[0])
    rows = [[to_q(c) for c in r] for r in rows]
    ints, pivots = _echelon(rows, n)
    basis = []
    pset = set(pivots)
    for f in (j for j in range(n) if j not in pset):
        v = [Q(0)] * n
        v[f] = Q(1)
        for k in range(len(pivots) - 1, -1, -1):
            col = pivots[k]
            row = ints[k]
            acc = Q(0)
            for j in range(col + 1, n):
                if row[j]:
                    acc -= row[j] * v[j]
            v[col] = acc / row[col]
        basis.append(v)
    return basis


def coefficient_equations(target: Poly, unknown_polys: Sequence[Poly],
                          names: Sequence[str]) -> LinearSystem:
    """Match target = sum_k u_k * unknown_polys[k] monomial-by-monomial in ``names``.

    Every other variable must be absent, so each coefficient is rational.
    """
    parts = [p.coefficients(names) for p in unknown_polys]
    tparts = target.coefficients(names)
    keys = sorted(set(tparts).union(*[set(p) for p in parts]))
    matrix = []
    rhs = []
    for key in keys:
        matrix.append([p[key].constant_value() if key in p else Q(0) for p in parts])
        rhs.append(tparts[key].constant_value() if key in tparts else Q(0))
    return LinearSystem(matrix, rhs)


def solve_cofactor(target: Poly, factor: Poly, monomials: Sequence[Poly],
                   names: Sequence[str]) -> Poly:
    """Find K in the span of ``monomials`` with target = factor * K exactly.

    This stands in for exact polynomial division.  Raises Inconsistent when
    no such K exists.
    """
    products = [factor * mon for mon in monomials]
    values = solve_unique(coefficient_equations(target, products, names))
    k = ZERO
    for c, mon in zip(values, monomials):
        if c:
            k = k + mon.scale(c)
    return k
