"""Exact multiple-angle reduction.

sin(lx) and cos(lx) are rewritten as polynomials in u = sin^2(x) (times one of
1, sin x, cos x, sin x cos x) by iterating integer recurrences with exact
rational arithmetic. The same polynomials assemble the canonical forms of a
chain, which is what the axis searches solve.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import TYPE_CHECKING, Any, Dict, List, Optional, Tuple, Union

import numpy as np
import sympy

from .errors import CurveValidationError, InvariantError, PolynomialDegreeError

if TYPE_CHECKING:
    from .chain import Chain

logger = logging.getLogger(__name__)

MAX_REDUCTION_INDEX = 64

Exact = Union[int, Fraction]

_U = sympy.Symbol("u")
_SUPERSCRIPTS = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with exact rational coefficients, lowest degree first."""

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    # ------------------------------------------------------------ builders --
    @classmethod
    def constant(cls, value: Exact) -> "Polynomial":
        return cls((value,))

    @classmethod
    def variable(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def from_sympy(cls, poly: sympy.Poly) -> "Polynomial":
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return cls(tuple(coeffs))

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Polynomial":
        return cls(tuple(Fraction(str(c)) for c in data["coeffs"]))

    # ---------------------------------------------------------- properties --
    @property
    def degree(self) -> int:
        """Degree in u; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def scale(self) -> float:
        return max((abs(float(c)) for c in self.coeffs), default=0.0)

    def float_coeffs(self) -> np.ndarray:
        return np.array([float(c) for c in self.coeffs], dtype=float)

    # ---------------------------------------------------------- arithmetic --
    def __add__(self, other: Union["Polynomial", Exact]) -> "Polynomial":
        other = _as_poly(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: Union["Polynomial", Exact]) -> "Polynomial":
        return self + (-_as_poly(other))

    def __rsub__(self, other: Union["Polynomial", Exact]) -> "Polynomial":
        return _as_poly(other) - self

    def __mul__(self, other: Union["Polynomial", Exact]) -> "Polynomial":
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """p(inner(u)), expanded exactly by Horner's scheme."""
        result = Polynomial()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def one_minus(self) -> "Polynomial":
        """p(1 - u)."""
        return self.compose(Polynomial((1, -1)))

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k > 0))

    # ---------------------------------------------------------- evaluation --
    def __call__(self, x):
        if isinstance(x, (int, Fraction)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if self.is_zero:
            return np.zeros_like(np.asarray(x, dtype=float)) if np.ndim(x) else 0.0
        return np.polynomial.polynomial.polyval(x, self.float_coeffs())

    # --------------------------------------------------------- exact algebra --
    def to_sympy(self) -> sympy.Poly:
        coeffs = [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)] or [0]
        return sympy.Poly(coeffs, _U, domain=sympy.QQ)

    def gcd(self, other: "Polynomial") -> "Polynomial":
        return Polynomial.from_sympy(sympy.gcd(self.to_sympy(), other.to_sympy()))

    def squarefree_part(self) -> "Polynomial":
        if self.degree < 2:
            return self
        return Polynomial.from_sympy(sympy.sqf_part(self.to_sympy()))

    # ------------------------------------------------------------ formats --
    def to_json(self) -> Dict[str, List[str]]:
        return {"coeffs": [str(c) for c in self.coeffs]}

    def __str__(self) -> str:
        return format_polynomial(self)


def _as_poly(value: Union[Polynomial, Exact]) -> Polynomial:
    if isinstance(value, Polynomial):
        return value
    return Polynomial.constant(value)


def format_polynomial(p: Polynomial, var: str = "u") -> str:
    """Ascending-degree rendering such as ``3 − 4u`` or ``5 − 20u + 16u²``."""
    if p.is_zero:
        return "0"
    parts: List[str] = []
    for k, c in enumerate(p.coeffs):
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = var if k == 1 else f"{var}{str(k).translate(_SUPERSCRIPTS)}"
            body = power if mag == 1 else f"{mag}{power}"
        if not parts:
            parts.append(f"−{body}" if c < 0 else body)
        else:
            parts.append(f" − {body}" if c < 0 else f" + {body}")
    return "".join(parts)


# ------------------------------------------------------------ recurrences --
def _check_index(n: int, lowest: int) -> None:
    if n < lowest:
        raise CurveValidationError(f"Reduction index must be >= {lowest}, got {n}")
    if n > MAX_REDUCTION_INDEX:
        raise PolynomialDegreeError(
            f"Reduction index {n} exceeds the supported maximum {MAX_REDUCTION_INDEX}"
        )


def _check_degree(p: Polynomial, expected: int, name: str) -> None:
    if p.degree != expected:
        raise InvariantError(f"{name} has degree {p.degree}, expected {expected}")


@lru_cache(maxsize=None)
def odd_sin_poly(n: int) -> Polynomial:
    """P_n with sin((2n+1)x) = P_n(sin^2 x) sin x and cos((2n+1)x) = (-1)^n P_n(cos^2 x) cos x."""
    _check_index(n, 0)
    if n == 0:
        return Polynomial.constant(1)
    prev = odd_sin_poly(n - 1)
    k = n - 1
    one_minus_2u = Polynomial((1, -2))
    one_minus_u = Polynomial((1, -1))
    sign = 1 if k % 2 == 0 else -1
    p = prev * one_minus_2u + prev.one_minus() * one_minus_u * (2 * sign)
    _check_degree(p, n, f"P_{n}")
    return p


@lru_cache(maxsize=None)
def even_reduction(n: int) -> Tuple[Polynomial, Polynomial]:
    """(R_n, G_n) with sin(2nx) = R_n(sin^2 x) sin x cos x and cos(2nx) = G_n(cos^2 x)."""
    _check_index(n, 1)
    if n == 1:
        return Polynomial.constant(2), Polynomial((-1, 2))
    r_prev, g_prev = even_reduction(n - 1)
    one_minus_2u = Polynomial((1, -2))
    u_times_one_minus_u = Polynomial((0, 1, -1))
    r = r_prev * one_minus_2u + g_prev.one_minus() * 2
    g = -(g_prev * one_minus_2u) - r_prev.one_minus() * u_times_one_minus_u * 2
    _check_degree(r, n - 1, f"R_{n}")
    _check_degree(g, n, f"G_{n}")
    return r, g


# ------------------------------------------------------------- expansions --
@dataclass(frozen=True)
class TrigExpansion:
    """f(t) = const(u) + sin t·sin_part(u) + cos t·cos_part(u) + sin t cos t·sincos(u), u = sin²t."""

    label: str
    const: Polynomial = Polynomial()
    sin: Polynomial = Polynomial()
    cos: Polynomial = Polynomial()
    sincos: Polynomial = Polynomial()

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in (self.const, self.sin, self.cos, self.sincos))

    def evaluate(self, t):
        s, c = np.sin(t), np.cos(t)
        u = s * s
        return self.const(u) + s * self.sin(u) + c * self.cos(u) + s * c * self.sincos(u)

    def __str__(self) -> str:
        pieces = []
        for poly, factor in (
            (self.const, ""),
            (self.sin, "·sin t"),
            (self.cos, "·cos t"),
            (self.sincos, "·sin t·cos t"),
        ):
            if poly.is_zero:
                continue
            text = str(poly)
            if factor:
                text = f"({text}){factor}" if poly.degree > 0 or poly.coeffs[0] < 0 else f"{text}{factor}"
            pieces.append(text)
        body = " + ".join(pieces) if pieces else "0"
        return f"{self.label} = {body}, u = sin²t"


def reduce_sin(ell: int, nonzero: bool = False) -> TrigExpansion:
    label = f"sin({ell}t)"
    if ell == 0:
        if nonzero:
            raise CurveValidationError("sin(0·t) is identically zero")
        return TrigExpansion(label)
    sign = 1 if ell > 0 else -1
    mag = abs(ell)
    if mag % 2:
        n = (mag - 1) // 2
        _check_index(n, 0)
        return TrigExpansion(label, sin=odd_sin_poly(n) * sign)
    n = mag // 2
    _check_index(n, 1)
    r, _ = even_reduction(n)
    return TrigExpansion(label, sincos=r * sign)


def reduce_cos(ell: int) -> TrigExpansion:
    label = f"cos({ell}t)"
    mag = abs(ell)
    if mag == 0:
        return TrigExpansion(label, const=Polynomial.constant(1))
    if mag % 2:
        n = (mag - 1) // 2
        _check_index(n, 0)
        sign = 1 if n % 2 == 0 else -1
        return TrigExpansion(label, cos=odd_sin_poly(n).one_minus() * sign)
    n = mag // 2
    _check_index(n, 1)
    _, g = even_reduction(n)
    return TrigExpansion(label, const=g.one_minus())


# -------------------------------------------------------- canonical forms --
@dataclass(frozen=True)
class CanonicalForms:
    """Polynomials in u = sin²t with

    phi     = cos t·Q1 + U1
    phi'    = sin t·(Q2 + cos t·U2)
    psi     = sin t·(S1 + cos t·V1)
    psi'    = cos t·S2 + V2
    """

    Q1: Polynomial
    U1: Polynomial
    Q2: Polynomial
    U2: Polynomial
    S1: Polynomial
    V1: Polynomial
    S2: Polynomial
    V2: Polynomial
    all_odd_form: Optional[Tuple[Polynomial, Polynomial, Polynomial, Polynomial]] = None

    def phi(self, t):
        s, c = np.sin(t), np.cos(t)
        u = s * s
        return c * self.Q1(u) + self.U1(u)

    def psi(self, t):
        s, c = np.sin(t), np.cos(t)
        u = s * s
        return s * (self.S1(u) + c * self.V1(u))

    def phi_dot(self, t):
        s, c = np.sin(t), np.cos(t)
        u = s * s
        return s * (self.Q2(u) + c * self.U2(u))

    def psi_dot(self, t):
        s, c = np.sin(t), np.cos(t)
        u = s * s
        return c * self.S2(u) + self.V2(u)

    def to_json(self) -> Dict[str, Any]:
        out = {name: getattr(self, name).to_json() for name in ("Q1", "U1", "Q2", "U2", "S1", "V1", "S2", "V2")}
        out["allOdd"] = self.all_odd_form is not None
        return out


def canonical_forms(chain: "Chain") -> CanonicalForms:
    zero = Polynomial()
    q1 = u1 = q2 = u2 = s1 = v1 = s2 = v2 = zero
    all_odd = True
    for term in chain.terms:
        m = term.m
        c = Fraction(term.c)
        d = Fraction(term.d)
        if c == 0 and d == 0:
            continue
        if m == 0:
            u1 = u1 + c
            all_odd = False
            continue
        sign = 1 if m > 0 else -1
        mag = abs(m)
        if mag % 2:
            n = (mag - 1) // 2
            p = odd_sin_poly(n)
            p_cos = p.one_minus() * (1 if n % 2 == 0 else -1)
            q1 = q1 + p_cos * c
            s1 = s1 + p * (d * sign)
            q2 = q2 + p * (-mag * c)
            s2 = s2 + p_cos * (m * d)
        else:
            all_odd = False
            r, g = even_reduction(mag // 2)
            g_sin = g.one_minus()
            u1 = u1 + g_sin * c
            v1 = v1 + r * (d * sign)
            u2 = u2 + r * (-mag * c)
            v2 = v2 + g_sin * (m * d)
    forms = CanonicalForms(q1, u1, q2, u2, s1, v1, s2, v2, (q1, s1, q2, s2) if all_odd else None)
    logger.debug("canonical forms: deg Q1=%d deg S1=%d all_odd=%s", q1.degree, s1.degree, all_odd)
    return forms

