import argparse
import json
import logging
import os
import sys
import traceback
from pathlib import Path
from typing import List, Optional

# Add the parent directory to the Python path to enable imports
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
sys.dont_write_bytecode = True  # Prevent __pycache__ creation

from pydantic import ValidationError

from qdcss.config.env import load_environment
from qdcss.config.settings import settings
from qdcss.exceptions import (
    InfeasibleConstructionError,
    IntractableSearchError,
    SpecValidationError,
)
from qdcss.schemas.code_spec import parse_code_spec
from qdcss.services.code_service import BuiltCode, build_code, load_document
from qdcss.services.file_service import FileService
from qdcss.tools.constructions import check_orthogonality
from qdcss.tools.css_code import verify_dpm_automorphisms
from qdcss.tools.cycles import TannerGraph, census_blockwise, girth_bfs
from qdcss.tools.distance import Exhaustive, Probabilistic, min_distance
from qdcss.tools.heuristic import HeuristicConfig, generate_supports, verify_difference_sets
from qdcss.tools.simulation import CSV_HEADER, StopRule, run_sweep

logger = logging.getLogger("qdcss")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_SPEC = 2
EXIT_INFEASIBLE = 3
EXIT_IO = 4


def parse_p_grid(text: str) -> List[float]:
    """Comma-separated probabilities; an empty string is an empty grid."""
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError as e:
        raise SpecValidationError(f"invalid --p-grid {text!r}: {e}") from e


def emit(data) -> None:
    print(json.dumps(data, indent=2, default=str))


def _built(args) -> BuiltCode:
    spec = Path(args.spec) if args.spec else None
    return build_code(load_document(spec, args.code), use_cache=not args.no_cache)


def cmd_construct(args) -> int:
    built = _built(args)
    params = built.parameters()
    if args.save:
        out = FileService.get_output_path(args.save)
        FileService.save_json(out / "spec.json", built.document.model_dump(exclude_none=True))
        FileService.save_matrix_text(out / "H.txt", built.code.h.to_dense())
        FileService.save_json(out / "parameters.json", params.model_dump(mode="json"))
        logger.info("saved %s to %s", built.document.code_id, out)
    emit({"spec": built.document.model_dump(exclude_none=True), "parameters": params.model_dump(mode="json")})
    return EXIT_OK


def cmd_check(args) -> int:
    built = _built(args)
    report = {"parameters": built.parameters().model_dump(mode="json")}
    if built.blocks is not None:
        report["orthogonal_by_signatures"] = check_orthogonality(built.blocks)
        report["dpm_automorphisms"] = verify_dpm_automorphisms(built.code, built.blocks.ell)
    if built.document.construction == "B":
        diff = verify_difference_sets(built.document.supports, built.document.ell)
        report["difference_set_overlaps"] = diff.overlap_count
    emit(report)
    return EXIT_OK


def cmd_cycles(args) -> int:
    built = _built(args)
    report = {}
    if args.method in ("graph", "both"):
        report["graph"] = girth_bfs(TannerGraph.from_matrix(built.code.h), cap=args.cap).model_dump(mode="json")
    if args.method in ("blockwise", "both"):
        if built.blocks is None:
            raise SpecValidationError("blockwise counting needs a quasi-dyadic construction")
        cap = args.cap
        if not built.blocks.is_dpm_array() and cap > 4:
            logger.warning("blockwise counting beyond length 4 needs a DPM array; using cap 4")
            cap = 4
        report["blockwise"] = census_blockwise(built.blocks, cap=cap).model_dump(mode="json")
    emit(report)
    return EXIT_OK


def cmd_distance(args) -> int:
    built = _built(args)
    if args.exhaustive is not None:
        mode = Exhaustive(max_weight=args.exhaustive)
    else:
        mode = Probabilistic(iterations=args.isd, seed=args.seed)
    report = min_distance(built.code, mode, workers=args.workers, progress=args.progress)
    emit(report.model_dump(mode="json"))
    return EXIT_OK


def cmd_simulate(args) -> int:
    built = _built(args)
    results = run_sweep(
        built.code,
        parse_p_grid(args.p_grid),
        stop=StopRule(target_errors=args.target_errors, max_trials=args.max_trials),
        seed=args.seed,
        max_iterations=args.max_iters,
        normalization=args.normalization,
        workers=args.workers,
        progress=args.progress,
        out=FileService.get_output_path(args.output) if args.output else None,
        fmt=args.out,
        accounting=args.accounting,
    )
    if not args.output:
        if args.out == "csv":
            print(",".join(CSV_HEADER))
            for r in results:
                print(",".join(r.csv_row()))
        else:
            emit([r.model_dump(mode="json") for r in results])
    return EXIT_OK


def cmd_heuristic(args) -> int:
    cfg = HeuristicConfig(
        ell=args.ell,
        u=args.u,
        v=args.v,
        max_attempts=args.max_attempts,
        local_threshold=args.local_threshold,
        seed=args.seed,
    )
    search = generate_supports(cfg)
    if not search.found:
        raise InfeasibleConstructionError(
            f"support search failed after {search.attempts} attempts ({search.rows_completed} of {args.u} rows)"
        )
    document = {
        "construction": "B",
        "ell": args.ell,
        "u": args.u,
        "v": args.v,
        "supports": [list(s) for s in search.supports],
    }
    if args.output:
        FileService.save_json(FileService.get_output_path(args.output), document)
    emit(document)
    return EXIT_OK


def cmd_bicycle(args) -> int:
    document = {"construction": "bicycle", "n": args.n, "row_weight": args.row_weight, "k": args.k, "seed": args.seed}
    built = build_code(parse_code_spec(document), use_cache=not args.no_cache)
    if args.save:
        out = FileService.get_output_path(args.save)
        FileService.save_json(out / "spec.json", document)
        FileService.save_matrix_text(out / "H.txt", built.code.h.to_dense())
    emit({"spec": document, "parameters": built.parameters().model_dump(mode="json")})
    return EXIT_OK


def _add_code_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--spec", type=str, help="Code-spec JSON file")
    source.add_argument("--code", type=str, help="Catalog code name")
    parser.add_argument("--no-cache", action="store_true", help="Do not use the matrix cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="Quasi-dyadic dual-containing CSS LDPC codes.")
    parser.add_argument("--log-level", type=str, default=None, help="Logging level (default: settings.LOG_LEVEL)")
    parser.add_argument("--debug", action="store_true", help="Enable debug logging and tracebacks")
    parser.add_argument("--progress", action="store_true", help="Show progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="Build a code and report its parameters")
    _add_code_source(p)
    p.add_argument("--save", type=str, help="Directory for spec.json, H.txt and parameters.json")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="Orthogonality, rank, parameters and automorphisms")
    _add_code_source(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cycles", help="Girth and short-cycle census")
    _add_code_source(p)
    p.add_argument("--cap", type=int, default=settings.CYCLE_CAP, help="Longest cycle length to count")
    p.add_argument("--method", choices=["graph", "blockwise", "both"], default="graph")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("distance", help="Minimum-distance search")
    _add_code_source(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", type=int, metavar="MAX_WEIGHT", help="Exact search up to this weight")
    mode.add_argument("--isd", type=int, metavar="ITERATIONS", help="Information-set search iterations")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=settings.WORKERS)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("simulate", help="Logical error rate under depolarizing noise")
    _add_code_source(p)
    p.add_argument("--p-grid", type=str, required=True, help="Comma-separated depolarizing probabilities")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--target-errors", type=int, default=settings.TARGET_ERRORS)
    p.add_argument("--max-trials", type=int, default=settings.MAX_TRIALS)
    p.add_argument("--max-iters", type=int, default=settings.BP_MAX_ITERATIONS)
    p.add_argument("--normalization", type=float, default=settings.BP_NORMALIZATION)
    p.add_argument("--accounting", choices=["component", "joint"], default=settings.SIM_ACCOUNTING,
                   help="Count X-component failures or trials where either component fails")
    p.add_argument("--workers", type=int, default=settings.WORKERS)
    p.add_argument("--out", choices=["csv", "json"], default="csv", help="Output format")
    p.add_argument("--output", type=str, help="Output file (default: stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("heuristic", help="Search Construction B supports with disjoint difference sets")
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-attempts", type=int, default=settings.HEURISTIC_MAX_ATTEMPTS)
    p.add_argument("--local-threshold", type=int, default=settings.HEURISTIC_LOCAL_THRESHOLD)
    p.add_argument("--output", type=str, help="Write the spec document to this file")
    p.set_defaults(func=cmd_heuristic)

    p = sub.add_parser("baseline-bicycle", help="Build a dual-containing bicycle code")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--row-weight", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--save", type=str, help="Directory for spec.json and H.txt")
    p.add_argument("--no-cache", action="store_true", help="Do not use the matrix cache")
    p.set_defaults(func=cmd_bicycle)
    return parser


def _fail(error: Exception, code: int, debug: bool) -> int:
    print(f"Error: {error}", file=sys.stderr)
    for item in getattr(error, "diagnostics", []):
        print(f"  {item}", file=sys.stderr)
    if debug:
        traceback.print_exc()
    return code


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point; returns the process exit code."""
    overrides = load_environment()
    args = build_parser().parse_args(argv)
    level = "DEBUG" if args.debug else (args.log_level or settings.LOG_LEVEL)
    logging.basicConfig(level=level.upper(), format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    if overrides:
        logger.debug("Environment overrides: %s", ", ".join(sorted(overrides)))

    try:
        return args.func(args)
    except (SpecValidationError, ValidationError) as e:
        return _fail(e, EXIT_SPEC, args.debug)
    except (InfeasibleConstructionError, IntractableSearchError) as e:
        return _fail(e, EXIT_INFEASIBLE, args.debug)
    except OSError as e:
        return _fail(e, EXIT_IO, args.debug)
    except Exception as e:
        return _fail(e, EXIT_FAILURE, args.debug)


if __name__ == "__main__":
    sys.exit(main())
