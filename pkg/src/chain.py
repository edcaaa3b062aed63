"""The n-member chain x = sum c_k cos(m_k t), y = sum d_k sin(m_k t)."""

from __future__ import annotations

import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from pathlib import Path
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import ChainValidationError

logger = logging.getLogger(__name__)

Number = Union[int, float, Fraction]

FLOAT_EQ_TOL = 1e-9


def to_number(value: Any) -> Number:
    """Parse a coefficient: ints, Fractions and rational strings stay exact; floats stay floats."""
    if isinstance(value, bool):
        raise ChainValidationError(f"Not a coefficient: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            raise ChainValidationError(f"Coefficient must be finite, got {value!r}")
        return float(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ChainValidationError(f"Cannot parse coefficient {value!r}") from e
    raise ChainValidationError(f"Unsupported coefficient type {type(value).__name__}")


def is_exact(value: Number) -> bool:
    return isinstance(value, (int, Fraction))


def numbers_equal(a: Number, b: Number, tol: float = FLOAT_EQ_TOL) -> bool:
    """Exact comparison for rationals, absolute tolerance once a float is involved."""
    if is_exact(a) and is_exact(b):
        return a == b
    return abs(float(a) - float(b)) <= tol


def number_to_json(value: Number) -> Union[str, float]:
    if is_exact(value):
        return str(value)
    return float(value)


@dataclass(frozen=True)
class ChainTerm:
    m: int
    c: Number
    d: Number

    @property
    def is_zero(self) -> bool:
        return float(self.c) == 0.0 and float(self.d) == 0.0


@dataclass(frozen=True)
class SymmetryReport:
    about_x_axis: bool
    about_y_axis: bool


@dataclass(frozen=True)
class Chain:
    terms: Tuple[ChainTerm, ...]

    def __post_init__(self) -> None:
        terms = tuple(
            t if isinstance(t, ChainTerm) else ChainTerm(int(t[0]), to_number(t[1]), to_number(t[2]))
            for t in self.terms
        )
        terms = tuple(ChainTerm(int(t.m), to_number(t.c), to_number(t.d)) for t in terms)
        object.__setattr__(self, "terms", terms)
        if not terms or all(t.is_zero for t in terms):
            raise ChainValidationError("A chain needs at least one term with c != 0 or d != 0")
        ms = [t.m for t in terms]
        if len(set(ms)) != len(ms):
            raise ChainValidationError(f"Exponents must be pairwise distinct, got {ms}")
        g = reduce(math.gcd, (abs(t.m) for t in terms if not t.is_zero), 0)
        if g != 1:
            raise ChainValidationError(
                f"Exponents of nonzero terms must have gcd 1 (got {g}); "
                "use normalize_exponents() to divide them out"
            )

    # ------------------------------------------------------------ builders --
    @classmethod
    def from_terms(cls, terms: Iterable[Sequence[Any]]) -> "Chain":
        return cls(tuple(ChainTerm(int(m), to_number(c), to_number(d)) for m, c, d in terms))

    @classmethod
    def from_complex(cls, coefficients: Sequence[Any], exponents: Sequence[int]) -> "Chain":
        """Subclass-1.1 chain f(t) = sum c_k e^{i m_k t}."""
        if len(coefficients) != len(exponents):
            raise ChainValidationError("coefficients and exponents differ in length")
        return cls.from_terms((m, c, c) for c, m in zip(coefficients, exponents))

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "Chain":
        try:
            raw = data["terms"]
            return cls.from_terms((item["m"], item["c"], item["d"]) for item in raw)
        except (KeyError, TypeError) as e:
            raise ChainValidationError(f"Malformed chain JSON: {e}") from e

    @classmethod
    def load(cls, path: Union[str, Path]) -> "Chain":
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as e:
            raise ChainValidationError(f"Cannot read chain file {path}: {e}") from e
        return cls.from_json(data)

    def to_json(self) -> Dict[str, Any]:
        return {
            "terms": [
                {"m": t.m, "c": number_to_json(t.c), "d": number_to_json(t.d)} for t in self.terms
            ]
        }

    # ----------------------------------------------------------- properties --
    @property
    def active_terms(self) -> Tuple[ChainTerm, ...]:
        return tuple(t for t in self.terms if not t.is_zero)

    @property
    def is_exact(self) -> bool:
        return all(is_exact(t.c) and is_exact(t.d) for t in self.terms)

    def _arrays(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        active = self.active_terms
        m = np.array([t.m for t in active], dtype=float)
        c = np.array([float(t.c) for t in active])
        d = np.array([float(t.d) for t in active])
        return m, c, d

    def scale(self) -> float:
        """sum |m_k| (|c_k| + |d_k|): the reference size of derivative values."""
        return float(sum(abs(t.m) * (abs(float(t.c)) + abs(float(t.d))) for t in self.terms))

    def amplitude(self) -> float:
        return float(sum(abs(float(t.c)) + abs(float(t.d)) for t in self.terms))

    # ------------------------------------------------------------ evaluation --
    def _evaluate(self, t, power: int):
        m, c, d = self._arrays()
        t_arr = np.asarray(t, dtype=float)
        phase = np.multiply.outer(t_arr, m)
        cos_part, sin_part = np.cos(phase), np.sin(phase)
        # derivative k of (c cos, d sin) cycles through (cos, sin) with sign and m^k
        k = power % 4
        mk = m ** power
        if k == 0:
            x, y = cos_part @ (c * mk), sin_part @ (d * mk)
        elif k == 1:
            x, y = -(sin_part @ (c * mk)), cos_part @ (d * mk)
        elif k == 2:
            x, y = -(cos_part @ (c * mk)), -(sin_part @ (d * mk))
        else:
            x, y = sin_part @ (c * mk), -(cos_part @ (d * mk))
        if t_arr.ndim == 0:
            return float(x), float(y)
        return x, y

    def eval(self, t):
        return self._evaluate(t, 0)

    def derivative(self, t):
        return self._evaluate(t, 1)

    def second_derivative(self, t):
        return self._evaluate(t, 2)

    def third_derivative(self, t):
        return self._evaluate(t, 3)

    def complex_eval(self, t):
        x, y = self.eval(t)
        return np.asarray(x) + 1j * np.asarray(y) if np.ndim(x) else complex(x, y)

    # --------------------------------------------------------- predicates --
    def symmetry(self) -> SymmetryReport:
        return SymmetryReport(
            about_x_axis=True,
            about_y_axis=all(t.m % 2 for t in self.active_terms),
        )

    def as_subclass_1_1(self) -> Optional[List[Number]]:
        if all(numbers_equal(t.c, t.d) for t in self.terms):
            return [t.c for t in self.terms]
        return None

    def rotation_symmetry(self) -> Optional[Tuple[int, int]]:
        """(Q, m1) with f(t + 2pi/Q) = e^{2 pi i m1/Q} f(t) for subclass-1.1 chains, Q > 1."""
        if self.as_subclass_1_1() is None:
            return None
        active = self.active_terms
        m1 = active[0].m
        q = reduce(math.gcd, (abs(t.m - m1) for t in active[1:]), 0)
        if q <= 1:
            return None
        return q, m1

    def __str__(self) -> str:
        return " + ".join(f"({t.m}, {t.c}, {t.d})" for t in self.terms)


def normalize_exponents(terms: Iterable[Sequence[Any]]) -> Tuple[Chain, int]:
    """Divide the exponents by their gcd g. The returned chain at t equals the input at t/g."""
    raw = [(int(m), to_number(c), to_number(d)) for m, c, d in terms]
    raw = [(m, c, d) for m, c, d in raw if float(c) != 0.0 or float(d) != 0.0]
    g = reduce(math.gcd, (abs(m) for m, _, _ in raw), 0)
    if g == 0:
        raise ChainValidationError("Constant chain: every nonzero term has m = 0")
    if g > 1:
        logger.info("normalize_exponents: dividing exponents by %d (t -> t/%d)", g, g)
    return Chain.from_terms((m // g, c, d) for m, c, d in raw), g
