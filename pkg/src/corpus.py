"""The regression corpus of twelve planar curves used for oracle recall checks."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List

from .chain import Chain
from .errors import CurveValidationError
from .space_curves import TorusKnotSpec, torus_knot_fourier
from .spectral import OperatorSpec, boundary_chains
from .two_chain import TwoChain


@dataclass(frozen=True)
class CorpusCurve:
    name: str
    chain: Chain
    description: str


def _two(c1, c2, m: int, l: int) -> Chain:
    return TwoChain(c1, c2, m, l).to_chain()


@lru_cache(maxsize=1)
def load_corpus() -> List[CorpusCurve]:
    curves = [
        CorpusCurve("unit-circle", Chain.from_terms([(1, 1, 1)]), "e^{it}"),
        CorpusCurve("loop-c-1-3", _two(1, Fraction(1, 3), 2, 3), "e^{2it} + (1/3) e^{3it}"),
        CorpusCurve("loop-c-2-3", _two(1, Fraction(2, 3), 2, 3), "e^{2it} + (2/3) e^{3it}"),
        CorpusCurve("loop-c-minus-2-3", _two(1, Fraction(-2, 3), 2, 3), "e^{2it} - (2/3) e^{3it}, one cusp"),
        CorpusCurve("loop-c-1", _two(1, 1, 2, 3), "e^{2it} + e^{3it}"),
        CorpusCurve("rose-1-6", _two(1, 1, 1, 6), "e^{it} + e^{6it}, classes of five"),
        CorpusCurve("rose-1-7", _two(1, 1, 1, 7), "e^{it} + e^{7it}, classes of six"),
        CorpusCurve("cardioid", _two(2, -1, 1, 2), "epicycloid R = r = 1"),
        CorpusCurve("nephroid", _two(3, -1, 1, 3), "epicycloid R = 2, r = 1"),
        CorpusCurve("astroid", _two(3, 1, -1, 3), "hypocycloid R = 4, r = 1"),
        CorpusCurve("trefoil-projection", torus_knot_fourier(TorusKnotSpec(2, 3, 3.0, 1.0)), "torus knot p=2, q=3"),
        CorpusCurve(
            "spectral-f1",
            boundary_chains(OperatorSpec((("2", "1"), ("1", "2")))).f1,
            "boundary f1 of 2J^{i} + J^{2i}",
        ),
    ]
    return curves


def corpus_by_name() -> Dict[str, CorpusCurve]:
    return {curve.name: curve for curve in load_corpus()}


def get_curve(name: str) -> CorpusCurve:
    try:
        return corpus_by_name()[name]
    except KeyError:
        raise CurveValidationError(f"No corpus curve named {name!r}") from None
