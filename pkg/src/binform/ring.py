"""Exact rational scalars and sparse multivariate polynomials.

Every polynomial lives in a single, globally ordered variable universe::

    a0 < a1 < ... < a11 < x1 < x2 < y1 < y2 < q0 < q1 < q2
       < alpha < beta < gamma < delta < xi < (parameters registered later)

A monomial is packed into one Python integer: each variable owns a 16-bit
field (15 exponent bits plus a guard bit that catches overflow), and the total
degree sits above all fields.  Comparing two packed monomials as integers is
then exactly the graded-lexicographic order in which the largest variable is
compared first, and multiplying two monomials is a single integer addition.
"""

from __future__ import annotations

import ast
import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union

import gmpy2

Q = gmpy2.mpq
Scalar = Union[int, Fraction, "gmpy2.mpq"]

_FIELD = 16
_EXP_MAX = (1 << (_FIELD - 1)) - 1
_MAX_VARS = 48
_DEG_SHIFT = _FIELD * _MAX_VARS
_GUARD = sum(1 << (_FIELD * i + _FIELD - 1) for i in range(_MAX_VARS))
_ONE = 0

NUM_A = 12
_BASE_NAMES = (
    [f"a{i}" for i in range(NUM_A)]
    + ["x1", "x2", "y1", "y2", "q0", "q1", "q2"]
    + ["alpha", "beta", "gamma", "delta", "xi"]
)

_names: list = []
_slots: Dict[str, int] = {}


def register(name: str) -> int:
    """Return the slot of ``name``, appending it to the universe if new."""
    slot = _slots.get(name)
    if slot is not None:
        return slot
    if not name.isidentifier():
        raise ValueError(f"invalid variable name {name!r}")
    if len(_names) >= _MAX_VARS:
        raise OverflowError("variable universe is full")
    _slots[name] = len(_names)
    _names.append(name)
    return _slots[name]


for _n in _BASE_NAMES:
    register(_n)


def slot(name: str) -> int:
    try:
        return _slots[name]
    except KeyError:
        raise KeyError(f"unknown variable {name!r}") from None


def variable_names() -> Tuple[str, ...]:
    return tuple(_names)


def a_var(i: int) -> str:
    if not 0 <= i < NUM_A:
        raise ValueError(f"coefficient index {i} outside a0..a{NUM_A - 1}")
    return f"a{i}"


def to_q(c) -> "gmpy2.mpq":
    """Coerce ints, Fractions, mpq and 'p/q' strings to an exact rational."""
    if isinstance(c, float):
        raise TypeError("floating-point scalars are not allowed")
    if isinstance(c, str):
        return Q(Fraction(c.strip()))
    return Q(c)


# -- monomials -------------------------------------------------------------

def mono(exps: Mapping[int, int]) -> int:
    m = 0
    deg = 0
    for s, e in exps.items():
        if e < 0:
            raise ValueError("negative exponent")
        if e > _EXP_MAX:
            raise OverflowError("exponent too large")
        m += e << (_FIELD * s)
        deg += e
    return m + (deg << _DEG_SHIFT)


def mono_exp(m: int, s: int) -> int:
    return (m >> (_FIELD * s)) & _EXP_MAX


def mono_deg(m: int) -> int:
    return m >> _DEG_SHIFT


def mono_items(m: int) -> Iterator[Tuple[int, int]]:
    """Yield (slot, exponent) for the nonzero exponents of ``m``."""
    m &= (1 << _DEG_SHIFT) - 1
    s = 0
    while m:
        e = m & _EXP_MAX
        if e:
            yield s, e
        m >>= _FIELD
        s += 1


def mono_unit(s: int, e: int = 1) -> int:
    return (e << (_FIELD * s)) + (e << _DEG_SHIFT)


def _check_overflow(terms) -> None:
    for m in terms:
        if m & _GUARD:
            raise OverflowError("exponent overflow in polynomial product")


# -- polynomials -----------------------------------------------------------

class Poly:
    """Immutable sparse polynomial with exact rational coefficients.

    ``terms`` maps packed monomials to nonzero ``gmpy2.mpq`` coefficients.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Dict[int, "gmpy2.mpq"]] = None):
        self.terms = terms if terms is not None else {}
        self._hash = None

    # construction
    @staticmethod
    def const(c) -> "Poly":
        c = to_q(c)
        return Poly({_ONE: c} if c else {})

    @staticmethod
    def var(name: str, power: int = 1) -> "Poly":
        return Poly({mono_unit(register(name), power): Q(1)})

    @staticmethod
    def monomial(exps: Mapping[str, int], coeff=1) -> "Poly":
        c = to_q(coeff)
        if not c:
            return Poly()
        return Poly({mono({register(k): v for k, v in exps.items() if v}): c})

    @staticmethod
    def _coerce(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    # predicates and access
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _ONE in self.terms)

    def constant_value(self) -> "gmpy2.mpq":
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get(_ONE, Q(0))

    def variables(self) -> Tuple[str, ...]:
        seen = set()
        for m in self.terms:
            seen.update(s for s, _ in mono_items(m))
        return tuple(_names[s] for s in sorted(seen))

    def degree(self, names: Optional[Iterable[str]] = None) -> int:
        """Total degree, or the degree in the given variables; -1 for zero."""
        if not self.terms:
            return -1
        if names is None:
            return max(mono_deg(m) for m in self.terms)
        ss = [slot(n) for n in names]
        return max(sum(mono_exp(m, s) for s in ss) for m in self.terms)

    def is_homogeneous(self, names: Iterable[str], deg: int) -> bool:
        ss = [slot(n) for n in names]
        return all(sum(mono_exp(m, s) for s in ss) == deg for m in self.terms)

    def sorted_terms(self):
        """Terms in canonical (descending graded-lex) order."""
        return sorted(self.terms.items(), reverse=True)

    def leading_coefficient(self) -> "gmpy2.mpq":
        if not self.terms:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.terms[max(self.terms)]

    # ring operations
    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "Poly":
        other = Poly._coerce(other)
        if len(other.terms) > len(self.terms):
            big, small = other.terms, self.terms
        else:
            big, small = self.terms, other.terms
        out = dict(big)
        for m, c in small.items():
            v = out.get(m)
            if v is None:
                out[m] = c
            else:
                v = v + c
                if v:
                    out[m] = v
                else:
                    del out[m]
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        return self + (-Poly._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly._coerce(other) - self

    def scale(self, c) -> "Poly":
        c = to_q(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly({m: v * c for m, v in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return self.scale(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return Poly()
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            out = {m + mb: c * cb for m, c in a.items()}
            if mb:
                _check_overflow(out)
            return Poly(out)
        out: Dict[int, object] = {}
        get = out.get
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        _check_overflow(out)
        return Poly({m: c for m, c in out.items() if c})

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            raise TypeError("polynomial division is not supported")
        c = to_q(other)
        if not c:
            raise ZeroDivisionError("division by zero")
        return self.scale(1 / c)

    def __pow__(self, k: int) -> "Poly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.terms == other.terms
        try:
            return self.terms == Poly.const(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # calculus and substitution
    def derivative(self, name: str, k: int = 1) -> "Poly":
        """k-fold partial derivative with respect to ``name``."""
        if k < 0:
            raise ValueError("derivative order must be nonnegative")
        if k == 0 or not self.terms:
            return self
        s = slot(name)
        shift = _FIELD * s
        drop = (k << shift) + (k << _DEG_SHIFT)
        out = {}
        for m, c in self.terms.items():
            e = (m >> shift) & _EXP_MAX
            if e >= k:
                f = e
                for j in range(e - 1, e - k, -1):
                    f *= j
                out[m - drop] = c * f
        return Poly(out)

    def substitute(self, bindings: Mapping[str, object]) -> "Poly":
        """Simultaneous substitution of polynomials (or scalars) for variables."""
        if not bindings or not self.terms:
            return self
        subs = {slot(k): Poly._coerce(v) for k, v in bindings.items()}
        mask = 0
        for s in subs:
            mask |= _EXP_MAX << (_FIELD * s)
        powers: Dict[Tuple[int, int], Poly] = {}

        def power(s, e):
            key = (s, e)
            p = powers.get(key)
            if p is None:
                p = subs[s] if e == 1 else power(s, e - 1) * subs[s]
                powers[key] = p
            return p

        groups: Dict[int, Dict[int, object]] = {}
        for m, c in self.terms.items():
            bound = m & mask
            rest = m - bound
            if bound:
                rest -= sum(e for _, e in mono_items(bound)) << _DEG_SHIFT
            groups.setdefault(bound, {})[rest] = c
        total = Poly()
        for bound, rest_terms in groups.items():
            factor = Poly.const(1)
            for s, e in mono_items(bound):
                factor = factor * power(s, e)
            total = total + factor * Poly(rest_terms)
        return total

    def evaluate(self, bindings: Mapping[str, object]) -> "gmpy2.mpq":
        return self.substitute(bindings).constant_value()

    def coefficients(self, names: Iterable[str]) -> Dict[Tuple[int, ...], "Poly"]:
        """Split into {exponent tuple in ``names``: coefficient Poly}."""
        ss = [slot(n) for n in names]
        out: Dict[Tuple[int, ...], Dict[int, object]] = {}
        for m, c in self.terms.items():
            exps = tuple(mono_exp(m, s) for s in ss)
            rest = m
            for s, e in zip(ss, exps):
                if e:
                    rest -= (e << (_FIELD * s)) + (e << _DEG_SHIFT)
            out.setdefault(exps, {})[rest] = c
        return {k: Poly(v) for k, v in out.items()}

    def map_coefficients(self, fn) -> "Poly":
        out = {}
        for m, c in self.terms.items():
            v = to_q(fn(c))
            if v:
                out[m] = v
        return Poly(out)

    # serialization
    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = []
            for s, e in mono_items(m):
                factors.append(_names[s] if e == 1 else f"{_names[s]}^{e}")
            neg = c < 0
            a = -c if neg else c
            cs = _fmt_q(a)
            if not factors:
                body = cs
            elif a == 1:
                body = "*".join(factors)
            else:
                body = cs + "*" + "*".join(factors)
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _fmt_q(c) -> str:
    c = Q(c)
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def var(name: str) -> Poly:
    return Poly.var(name)


def const(c) -> Poly:
    return Poly.const(c)


ZERO = Poly()
ONE = Poly.const(1)


# -- parsing ---------------------------------------------------------------

class ParseError(ValueError):
    pass


_FACTOR = r"(?:\d+(?:/\d+)?|[A-Za-z_]\w*(?:\^\d+)?)"
_TERM = rf"{_FACTOR}(?:\*{_FACTOR})*"
_FLAT = re.compile(rf"[+-]?{_TERM}(?:[+-]{_TERM})*")
_SIGNED_TERM = re.compile(rf"([+-]?)({_TERM})")


def _parse_flat(text: str) -> Poly:
    out: Dict[int, object] = {}
    for sign, term in _SIGNED_TERM.findall(text):
        c = Q(-1 if sign == "-" else 1)
        exps: Dict[int, int] = {}
        for factor in term.split("*"):
            if factor[0].isdigit():
                c *= Q(Fraction(factor))
            else:
                name, _, e = factor.partition("^")
                s = register(name)
                exps[s] = exps.get(s, 0) + (int(e) if e else 1)
        m = mono(exps)
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return Poly(out)


def parse(text: str) -> Poly:
    """Parse a polynomial written with + - * / ^ and parentheses.

    Division is allowed only by a constant.  The canonical serialization
    produced by ``str(poly)`` is accepted (and parsed without recursion, so
    very long sums are fine).
    """
    flat = re.sub(r"\s+", "", text)
    if _FLAT.fullmatch(flat):
        return _parse_flat(flat)
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}") from None
    return _eval_node(tree.body, text)


def _eval_node(node, text) -> Poly:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return Poly.const(node.value)
    if isinstance(node, ast.Name):
        return Poly.var(node.id)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        left = _eval_node(node.left, text)
        if isinstance(node.op, ast.Pow):
            right = _eval_node(node.right, text)
            if not right.is_constant() or right.constant_value().denominator != 1 or right.constant_value() < 0:
                raise ParseError(f"exponent must be a nonnegative integer in {text!r}")
            return left ** int(right.constant_value())
        right = _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            if not right.is_constant() or right.is_zero():
                raise ParseError(f"division by a non-constant or zero in {text!r}")
            return left / right.constant_value()
    raise ParseError(f"unsupported syntax in {text!r}")


# -- comparisons modulo scalars -------------------------------------------

def proportional(p: Poly, q: Poly) -> Optional["gmpy2.mpq"]:
    """Return c with p == c*q (c nonzero), or None.  proportional(0, 0) is 1."""
    if p.is_zero() and q.is_zero():
        return Q(1)
    if p.is_zero() or q.is_zero():
        return None
    lp, lq = p.leading_coefficient(), q.leading_coefficient()
    if p.scale(lq) == q.scale(lp):
        return lp / lq
    return None


def content_and_primitive(p: Poly) -> Tuple["gmpy2.mpq", Poly]:
    """Split p = content * primitive with primitive integral, coprime, lc > 0."""
    if p.is_zero():
        raise ValueError("content of the zero polynomial is undefined")
    coeffs = list(p.terms.values())
    num = reduce(gcd, (abs(int(c.numerator)) for c in coeffs))
    den = reduce(lambda x, y: x * y // gcd(x, y), (int(c.denominator) for c in coeffs))
    content = Q(num, den)
    if p.leading_coefficient() < 0:
        content = -content
    return content, p.scale(1 / content)
