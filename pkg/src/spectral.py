"""Boundary chains of the spectrum of S = sum c_k J^{i alpha_k}.

With N the least common denominator of the alphas and m_k = alpha_k N, the
boundary is traced by f1(t) = sum c_k e^{m_k pi/(2N)} e^{i m_k t} and
f2(t) = sum c_k e^{-m_k pi/(2N)} e^{i m_k t}.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Any, Dict, List, Optional, Tuple

from .chain import Chain, Number, to_number
from .errors import ChainValidationError, IdentityOperatorError, NonRationalAlphaError
from .features import CurveFeatureReport, analyze_chain
from .oracle import OracleConfig

logger = logging.getLogger(__name__)


def _alpha(value: Any) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise NonRationalAlphaError(f"alpha must be an exact rational, got {value!r}")
    try:
        number = to_number(value)
    except ChainValidationError as e:
        raise NonRationalAlphaError(f"alpha {value!r} is not an exact rational") from e
    if not isinstance(number, Fraction):
        raise NonRationalAlphaError(f"alpha must be an exact rational, got {value!r}")
    return number


@dataclass(frozen=True)
class OperatorSpec:
    terms: Tuple[Tuple[Number, Fraction], ...]

    def __post_init__(self) -> None:
        terms = tuple((to_number(c), _alpha(alpha)) for c, alpha in self.terms)
        object.__setattr__(self, "terms", terms)
        if not terms:
            raise IdentityOperatorError("An operator needs at least one term")
        alphas = [alpha for _, alpha in terms]
        if len(set(alphas)) != len(alphas):
            raise ChainValidationError(f"alphas must be distinct, got {[str(a) for a in alphas]}")
        if all(float(c) == 0.0 for c, _ in terms):
            raise IdentityOperatorError("All coefficients vanish")

    @classmethod
    def parse(cls, text: str) -> "OperatorSpec":
        """``"2:1,1:2"`` -> 2 J^{i} + J^{2i}."""
        pairs = []
        for item in text.split(","):
            item = item.strip()
            if not item:
                continue
            if ":" not in item:
                raise ChainValidationError(f"term {item!r} is not of the form c:alpha")
            c, alpha = item.split(":", 1)
            pairs.append((c.strip(), alpha.strip()))
        return cls(tuple(pairs))

    @property
    def N(self) -> int:
        return reduce(lambda acc, a: acc * a.denominator // math.gcd(acc, a.denominator), self.alphas, 1)

    @property
    def alphas(self) -> List[Fraction]:
        return [alpha for _, alpha in self.terms]

    @property
    def exponents(self) -> List[int]:
        n = self.N
        return [int(alpha * n) for alpha in self.alphas]

    def to_json(self) -> Dict[str, Any]:
        return {"terms": [{"c": str(c) if isinstance(c, Fraction) else c, "alpha": str(a)} for c, a in self.terms]}


@dataclass(frozen=True)
class BoundaryChains:
    f1: Chain
    f2: Chain
    N: int
    exponent_scale: int = 1


@dataclass
class BoundaryReport:
    spec: OperatorSpec
    chains: BoundaryChains
    reports: Dict[str, CurveFeatureReport] = field(default_factory=dict)

    @property
    def verified(self) -> bool:
        return all(r.verified for r in self.reports.values())

    def to_json(self) -> Dict[str, Any]:
        return {
            "descriptor": {
                "operator": self.spec.to_json(),
                "N": self.chains.N,
                "exponentScale": self.chains.exponent_scale,
            },
            "boundaries": {name: report.to_json() for name, report in self.reports.items()},
        }


def boundary_chains(spec: OperatorSpec) -> BoundaryChains:
    n = spec.N
    ms = spec.exponents
    active = [(float(c), m) for (c, _), m in zip(spec.terms, ms) if float(c) != 0.0]
    g = reduce(math.gcd, (abs(m) for _, m in active), 0)
    if g == 0:
        raise IdentityOperatorError("Only alpha = 0 terms: S is a multiple of the identity")
    if g > 1:
        logger.info("boundary chains: exponents share gcd %d, traversing t -> t/%d", g, g)

    def build(sign: float) -> Chain:
        coeffs = [c * math.exp(sign * m * math.pi / (2 * n)) for c, m in active]
        return Chain.from_complex(coeffs, [m // g for _, m in active])

    return BoundaryChains(build(1.0), build(-1.0), n, g)


def annulus_radii(alpha: Any) -> Tuple[float, float]:
    """Inner and outer radius e^{∓pi|alpha|/2} of the spectrum of J^{i alpha}."""
    a = abs(float(_alpha(alpha)))
    return math.exp(-math.pi * a / 2), math.exp(math.pi * a / 2)


def boundary_analysis(
    spec: OperatorSpec, verify: bool = False, oracle_config: Optional[OracleConfig] = None
) -> BoundaryReport:
    """Planar inventories of f1 and f2; a single-term operator gives two circles and nothing to find."""
    chains = boundary_chains(spec)
    report = BoundaryReport(spec, chains)
    for name, chain in (("f1", chains.f1), ("f2", chains.f2)):
        descriptor = {"chain": chain.to_json()}
        if len(chain.active_terms) == 1:
            report.reports[name] = CurveFeatureReport(descriptor, summary={"family": "circle"})
            continue
        report.reports[name] = analyze_chain(chain, verify=verify, oracle_config=oracle_config, descriptor=descriptor)
    return report
