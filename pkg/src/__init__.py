# Chain Curve Analyzer Package
# Exact multiple-angle reduction, feature inventories and numeric cross-checks
# for periodic n-member chain curves

from .chain import Chain, ChainTerm, normalize_exponents
from .classical import RollingSpec, to_two_chain
from .features import CurveFeature, CurveFeatureReport, analyze_chain
from .oracle import OracleConfig, find_self_intersections, find_singular_points, verify_feature_set
from .report_store import ReportStore
from .space_curves import PeriodicHelix, TorusKnotSpec
from .spectral import OperatorSpec, boundary_analysis, boundary_chains
from .trigpoly import Polynomial, canonical_forms, even_reduction, odd_sin_poly, reduce_cos, reduce_sin
from .two_chain import TwoChain, fold_points, self_intersection_classes, singular_points, zeros

__version__ = "1.0.0"
__author__ = "Chain Curve Analyzer Team"

__all__ = [
    "Chain",
    "ChainTerm",
    "CurveFeature",
    "CurveFeatureReport",
    "OperatorSpec",
    "OracleConfig",
    "PeriodicHelix",
    "Polynomial",
    "ReportStore",
    "RollingSpec",
    "TorusKnotSpec",
    "TwoChain",
    "analyze_chain",
    "boundary_analysis",
    "boundary_chains",
    "canonical_forms",
    "even_reduction",
    "find_self_intersections",
    "find_singular_points",
    "fold_points",
    "normalize_exponents",
    "odd_sin_poly",
    "reduce_cos",
    "reduce_sin",
    "self_intersection_classes",
    "singular_points",
    "to_two_chain",
    "verify_feature_set",
    "zeros",
]
