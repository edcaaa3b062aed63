"""Command line entry point: ``python -m src.cli <command> ...``.

Exit codes: 0 success, 2 invalid input or usage, 3 analytic/oracle mismatch,
1 any other analysis failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Dict, Optional, Sequence

from .chain import Chain
from .classical import KINDS, RollingSpec
from .config import configure_logging, get_settings
from .errors import CurveError, CurveValidationError, HelixSpecError, VerificationMismatch
from .exporters import samples_frame, to_json, write_csv, write_json, write_svg
from .features import analyze_chain, classical_report, helix_report, oracle_diff, torus_report
from .oracle import find_singular_points, scan_self_intersections
from .report_store import ReportStore
from .space_curves import PeriodicHelix, TorusKnotSpec, torus_knot_curve
from .spectral import OperatorSpec, boundary_analysis
from .trigpoly import reduce_cos, reduce_sin
from .two_chain import TwoChain

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID = 2
EXIT_MISMATCH = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curve-analyzer", description="Analyse n-member chain curves.")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR (default from CURVE_LOG_LEVEL)")
    parser.add_argument("--oracle-samples", type=int, default=None, help="Oracle grid size (default from CURVE_ORACLE_SAMPLES)")
    sub = parser.add_subparsers(dest="command", required=True)

    reduce_p = sub.add_parser("reduce", help="Print sin(lt)/cos(lt) as polynomials in u = sin²t")
    reduce_p.add_argument("--l", type=int, required=True)
    which = reduce_p.add_mutually_exclusive_group()
    which.add_argument("--sin", action="store_true")
    which.add_argument("--cos", action="store_true")

    analyze_p = sub.add_parser("analyze", help="Full planar feature inventory of a chain")
    analyze_p.add_argument("--chain", required=True, help="Chain JSON file")
    analyze_p.add_argument("--verify", action="store_true", help="Cross-check against the numeric oracle")
    analyze_p.add_argument("--out", default=None, help="Write the report here instead of stdout")
    analyze_p.add_argument("--store", action="store_true", help="Read/write the report cache")
    analyze_p.add_argument("--refresh", action="store_true", help="Recompute even when cached")

    classical_p = sub.add_parser("classical", help="Epicycloids, hypocycloids and trochoids")
    classical_p.add_argument("--kind", required=True, choices=KINDS)
    classical_p.add_argument("--R", required=True, help="Fixed circle radius (rational)")
    classical_p.add_argument("--r", required=True, help="Rolling circle radius (rational)")
    classical_p.add_argument("--d", default=None, help="Pen distance for trochoids (rational)")
    classical_p.add_argument("--verify", action="store_true")
    classical_p.add_argument("--out", default=None)

    torus_p = sub.add_parser("torus", help="Torus knot crossings")
    torus_p.add_argument("--p", type=int, required=True)
    torus_p.add_argument("--q", type=int, required=True)
    torus_p.add_argument("--R", type=float, required=True)
    torus_p.add_argument("--r", type=float, required=True)
    torus_p.add_argument("--a", type=float, default=None, help="Vertical amplitude (S-torus knot)")
    torus_p.add_argument("--csv", default=None, help="Write t,x,y,z samples here")
    torus_p.add_argument("--out", default=None)

    helix_p = sub.add_parser("helix", help="Periodic helix over a two-member chain")
    helix_p.add_argument("--chain", required=True)
    helix_p.add_argument("--a", type=float, required=True)
    helix_p.add_argument("--theta", type=float, default=0.0)
    helix_p.add_argument("--Q", required=True, help="Height frequency (rational)")
    helix_p.add_argument("--csv", default=None)
    helix_p.add_argument("--out", default=None)

    spectrum_p = sub.add_parser("spectrum", help="Boundary chains of sum c_k J^{i alpha_k}")
    spectrum_p.add_argument("--terms", required=True, help='Comma separated "c:alpha" pairs, e.g. "2:1,1:2"')
    spectrum_p.add_argument("--verify", action="store_true")
    spectrum_p.add_argument("--out", default=None)

    oracle_p = sub.add_parser("oracle-check", help="Numeric oracle output and its diff against the analytic inventory")
    oracle_p.add_argument("--chain", required=True)
    oracle_p.add_argument("--out", default=None)

    plot_p = sub.add_parser("plot", help="SVG plot with feature markers")
    plot_p.add_argument("--chain", required=True)
    plot_p.add_argument("--out", required=True)
    plot_p.add_argument("--samples", type=int, default=None)

    sample_p = sub.add_parser("sample", help="CSV samples t,x,y")
    sample_p.add_argument("--chain", required=True)
    sample_p.add_argument("--out", required=True)
    sample_p.add_argument("--samples", type=int, default=None)
    return parser


def _emit(payload: Dict[str, Any], out: Optional[str]) -> None:
    if out:
        write_json(payload, out)
    else:
        print(to_json(payload))


def _check(verified: bool, what: str) -> None:
    if not verified:
        raise VerificationMismatch(f"{what}: analytic features and oracle disagree")


# --------------------------------------------------------------- commands --
def cmd_reduce(args, cfg) -> int:
    expansions = []
    if not args.cos:
        expansions.append(reduce_sin(args.l))
    if not args.sin:
        expansions.append(reduce_cos(args.l))
    for expansion in expansions:
        print(expansion)
    return EXIT_OK


def cmd_analyze(args, cfg) -> int:
    chain = Chain.load(args.chain)
    descriptor = {"chain": chain.to_json(), "verify": bool(args.verify)}
    if args.verify:
        # verified reports depend on the oracle grid
        descriptor["oracle"] = {
            "samples": cfg.n_samples,
            "pairTol": cfg.pair_tol,
            "refineTol": cfg.refine_tol,
            "dedupeRadius": cfg.dedupe_radius,
            "minParamGap": cfg.min_param_gap,
        }
    store = ReportStore(get_settings().report_db) if args.store else None
    payload = None
    if store is not None and not args.refresh:
        payload = store.get_report("analyze", descriptor)
    if payload is None:
        report = analyze_chain(chain, verify=args.verify, oracle_config=cfg, root_tol=get_settings().root_tol)
        payload = report.to_json()
        if store is not None:
            store.save_report("analyze", descriptor, payload)
        verified = report.verified
    else:
        diff = payload.get("oracleDiff")
        verified = diff is None or (not diff["unmatchedAnalytic"] and not diff["unmatchedNumeric"])
    _emit(payload, args.out)
    _check(verified, args.chain)
    return EXIT_OK


def cmd_classical(args, cfg) -> int:
    spec = RollingSpec(args.kind, args.R, args.r, args.d)
    report = classical_report(spec, verify=args.verify, oracle_config=cfg)
    _emit(report.to_json(), args.out)
    _check(report.verified, args.kind)
    return EXIT_OK


def cmd_torus(args, cfg) -> int:
    spec = TorusKnotSpec(args.p, args.q, args.R, args.r, args.a)
    report = torus_report(spec)
    if args.csv:
        write_csv(samples_frame(torus_knot_curve(spec), get_settings().plot_samples), args.csv)
    _emit(report.to_json(), args.out)
    return EXIT_OK


def cmd_helix(args, cfg) -> int:
    tc = TwoChain.from_chain(Chain.load(args.chain))
    if tc is None:
        raise HelixSpecError("A periodic helix needs a two-member chain with c_k = d_k")
    helix = PeriodicHelix(tc, args.a, args.theta, args.Q)
    report = helix_report(helix, oracle_config=cfg)
    if args.csv:
        write_csv(samples_frame(helix.to_space_curve(), get_settings().plot_samples), args.csv)
    _emit(report.to_json(), args.out)
    return EXIT_OK


def cmd_spectrum(args, cfg) -> int:
    result = boundary_analysis(OperatorSpec.parse(args.terms), verify=args.verify, oracle_config=cfg)
    _emit(result.to_json(), args.out)
    _check(result.verified, args.terms)
    return EXIT_OK


def cmd_oracle_check(args, cfg) -> int:
    chain = Chain.load(args.chain)
    scan = scan_self_intersections(chain, cfg)
    singular = find_singular_points(chain, cfg)
    report = analyze_chain(chain, oracle_config=cfg)
    report.oracle_diff = oracle_diff(chain, report.features, cfg, scan=scan, singular=singular).to_json()
    payload = {
        "chain": chain.to_json(),
        "selfIntersections": [
            {"t": h.t, "s": h.s, "point": list(h.point), "tangentAngle": h.tangent_angle, "passes": h.passes}
            for h in scan.points
        ],
        "tangential": [{"t": h.t, "s": h.s, "point": list(h.point)} for h in scan.tangential],
        "singular": [{"t": p.t, "point": list(p.point), "speed": p.speed} for p in singular],
        "oracleDiff": report.oracle_diff,
    }
    _emit(payload, args.out)
    _check(report.verified, args.chain)
    return EXIT_OK


def cmd_plot(args, cfg) -> int:
    chain = Chain.load(args.chain)
    report = analyze_chain(chain, oracle_config=cfg)
    write_svg(chain, report.features, args.out, n=args.samples or get_settings().plot_samples)
    return EXIT_OK


def cmd_sample(args, cfg) -> int:
    chain = Chain.load(args.chain)
    write_csv(samples_frame(chain, args.samples or get_settings().plot_samples), args.out)
    return EXIT_OK


COMMANDS = {
    "reduce": cmd_reduce,
    "analyze": cmd_analyze,
    "classical": cmd_classical,
    "torus": cmd_torus,
    "helix": cmd_helix,
    "spectrum": cmd_spectrum,
    "oracle-check": cmd_oracle_check,
    "plot": cmd_plot,
    "sample": cmd_sample,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse exits 2 on usage errors and 0 after --help
        return int(e.code or 0)

    try:
        configure_logging(args.log_level)
        cfg = get_settings().oracle_config(n_samples=args.oracle_samples)
        return COMMANDS[args.command](args, cfg)
    except VerificationMismatch as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return EXIT_MISMATCH
    except CurveValidationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except CurveError as e:
        logger.error("analysis failed: %s", e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
