"""Real roots of exact polynomials on a closed interval."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Tuple

import numpy as np
from scipy import optimize

from .errors import CurveValidationError, NoConvergenceError, ZeroPolynomialError
from .trigpoly import Polynomial

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
MAX_ITERATIONS = 200
SIMPLE = "simple"
SUSPECTED_MULTIPLE = "suspectedMultiple"


@dataclass(frozen=True)
class Root:
    value: float
    multiplicity_hint: str = SIMPLE
    endpoint: bool = False

    @property
    def suspected_multiple(self) -> bool:
        return self.multiplicity_hint == SUSPECTED_MULTIPLE


@dataclass(frozen=True)
class RootSet:
    roots: Tuple[Root, ...]
    interval: Tuple[float, float]
    tolerance: float
    squarefree_degree: int = field(default=0, compare=False)

    @property
    def values(self) -> List[float]:
        return [r.value for r in self.roots]

    def __len__(self) -> int:
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)


def _normalized(p: Polynomial) -> np.ndarray:
    coeffs = p.float_coeffs()
    return coeffs / np.max(np.abs(coeffs))


def _exact_zero_at(p: Polynomial, x: float) -> bool:
    return p(Fraction(x)) == 0


def _polish(coeffs: np.ndarray, dcoeffs: np.ndarray, x: float, a: float, b: float) -> float:
    """A few Newton steps that may only improve the residual and never leave [a, b]."""
    pv = np.polynomial.polynomial.polyval
    best, best_res = x, abs(pv(x, coeffs))
    for _ in range(8):
        slope = pv(best, dcoeffs)
        if slope == 0.0 or best_res == 0.0:
            break
        cand = best - pv(best, coeffs) / slope
        if not (a <= cand <= b):
            break
        res = abs(pv(cand, coeffs))
        if res >= best_res:
            break
        best, best_res = cand, res
    return best


def _eigen_roots(coeffs: np.ndarray, lo: float, hi: float, known: List[float], tol: float) -> List[float]:
    """Companion-matrix roots in [lo, hi] missed by the grid, confirmed by a sign change."""
    if len(coeffs) < 3:
        return []
    f = lambda x: float(np.polynomial.polynomial.polyval(x, coeffs))
    candidates = sorted(
        float(z.real)
        for z in np.polynomial.polynomial.polyroots(coeffs)
        if abs(z.imag) <= 1e-6 and lo < z.real < hi
    )
    extra: List[float] = []
    for i, x in enumerate(candidates):
        if any(abs(x - k) <= 1e-8 for k in known + extra):
            continue
        gaps = [abs(x - y) for j, y in enumerate(candidates) if j != i] + [x - lo, hi - x]
        delta = min(1e-7, 0.5 * min(gaps))
        a, b = x - delta, x + delta
        if delta <= 0 or np.sign(f(a)) == np.sign(f(b)):
            continue
        extra.append(optimize.brentq(f, a, b, xtol=1e-3 * tol, maxiter=MAX_ITERATIONS))
    return extra


def real_roots(p: Polynomial, lo: float, hi: float, tol: float = DEFAULT_TOL) -> RootSet:
    """Every real root of ``p`` in [lo, hi], sorted, to absolute accuracy ``tol``.

    Roots are located on the squarefree part of ``p`` (computed exactly), so
    repeated roots are found as simple sign changes; a root shared with
    gcd(p, p') is flagged ``suspectedMultiple``.
    """
    if p.is_zero:
        raise ZeroPolynomialError("Cannot isolate roots of the zero polynomial")
    if not lo < hi:
        raise CurveValidationError(f"Empty interval [{lo}, {hi}]")
    if tol <= 0:
        raise CurveValidationError(f"Tolerance must be positive, got {tol}")
    if p.degree == 0:
        return RootSet((), (lo, hi), tol)

    sqf = p.squarefree_part()
    repeated = p.gcd(p.derivative())
    coeffs = _normalized(sqf)
    dcoeffs = np.polynomial.polynomial.polyder(coeffs) if len(coeffs) > 1 else np.zeros(1)
    f = lambda x: float(np.polynomial.polynomial.polyval(x, coeffs))

    n_nodes = max(1024, 64 * sqf.degree)
    xs = np.linspace(lo, hi, n_nodes + 1)
    vals = np.polynomial.polynomial.polyval(xs, coeffs)

    found: List[float] = []
    # exact checks at the interval ends
    for end in (lo, hi):
        if _exact_zero_at(sqf, end):
            found.append(float(end))
    lo_hit, hi_hit = bool(found and found[0] == lo), bool(found and found[-1] == hi)
    if lo_hit:
        vals[0] = 0.0
    if hi_hit:
        vals[-1] = 0.0

    for i in range(1, n_nodes):
        if vals[i] == 0.0:
            found.append(float(xs[i]))
    for i in range(n_nodes):
        a, b = xs[i], xs[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0 or fb == 0.0 or np.sign(fa) == np.sign(fb):
            continue
        try:
            root, info = optimize.brentq(
                f, a, b, xtol=1e-3 * tol, maxiter=MAX_ITERATIONS, full_output=True
            )
        except RuntimeError as e:
            raise NoConvergenceError(f"Bracket [{a}, {b}] did not converge: {e}") from e
        if not info.converged:
            raise NoConvergenceError(f"Bracket [{a}, {b}] did not converge in {MAX_ITERATIONS} iterations")
        found.append(_polish(coeffs, dcoeffs, root, a, b))

    # roots closer than the grid spacing cancel out in the sign scan
    found.extend(_eigen_roots(coeffs, lo, hi, found, tol))

    found.sort()
    merged: List[float] = []
    for x in found:
        if merged and abs(x - merged[-1]) <= tol:
            continue
        merged.append(x)

    repeated_coeffs = _normalized(repeated) if repeated.degree >= 1 else None
    roots = []
    for x in merged:
        hint = SIMPLE
        if repeated_coeffs is not None:
            if abs(np.polynomial.polynomial.polyval(x, repeated_coeffs)) < 1e-8:
                hint = SUSPECTED_MULTIPLE
        endpoint = abs(x - lo) <= tol or abs(x - hi) <= tol
        roots.append(Root(min(max(x, lo), hi), hint, endpoint))

    logger.debug("real_roots: deg=%d sqf_deg=%d roots=%s", p.degree, sqf.degree, merged)
    return RootSet(tuple(roots), (lo, hi), tol, sqf.degree)
