"""
Command-line front end.

    heatrod simulate  --material copper --bc-right dirichlet:50 --svg out.svg
    heatrod compare   --materials copper,aluminium,mild-steel
    heatrod verify    --seed 42
    heatrod stability --alpha 1 --length 1 --nodes 3 --dt 0.125

Results go to standard output, diagnostics to standard error. Exit codes:
0 success, 1 verification failure, 2 configuration error, 3 divergence detected.
"""
import argparse
import csv
import io
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, ConfigDict, ValidationError

from config.settings import settings
from fileio.config_parser import ConfigDocument, build_config
from fileio.csv_export import format_number, write_frames, write_text, write_timeseries_csv
from fileio.svg_profile import render_svg_heatmap, render_svg_profile
from models.schemas import Grid1D, SimulationResult, SolverConfig, StabilityVerdict
from oracle.convergence import DEFAULT_GRIDS, convergence_study
from oracle.equivalence import DEFAULT_CASE_COUNT, run_equivalence_suite
from solver.materials import builtin_material
from solver.scenarios import scenario_entries, scenario_names
from solver.simulation import simulate
from solver.stability import check_stability, max_stable_dt, mesh_fourier_number
from utils.errors import ConfigurationError, HeatRodError
from utils.logger import logger

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_DIVERGED = 3

ORDER_WINDOW = (1.8, 2.2)

# CLI flag (argparse dest) -> config-file key
FLAG_KEYS: Dict[str, str] = {
    "material": "material",
    "length": "rod.length",
    "nodes": "grid.nodes",
    "dt": "time.dt",
    "t_end": "time.end",
    "sample_every": "time.sample_every",
    "bc_left": "bc.left",
    "bc_right": "bc.right",
    "ic": "ic",
    "steady_eps": "steady.eps",
}


class CompareRow(BaseModel):
    """One material's line in the compare table."""
    model_config = ConfigDict(frozen=True)

    material: str
    alpha: float
    fourier_number: float
    steady_time: Optional[float] = None

    def cells(self) -> List[str]:
        steady = ">t_end" if self.steady_time is None else f"{self.steady_time:.6g}"
        return [self.material, f"{self.alpha:.6g}", f"{self.fourier_number:.6g}", steady]


# ============================================================================
# Configuration assembly: scenario < config file < flags
# ============================================================================

def _flag_name(dest: str) -> str:
    return "--" + dest.replace("_", "-")


def load_config(args: argparse.Namespace, material: Optional[str] = None) -> SolverConfig:
    """
    Build the solver configuration for a run.

    Args:
        args: Parsed command-line arguments
        material: Material name overriding file and flags (used by compare)

    Returns:
        Validated SolverConfig

    Raises:
        ConfigParseError: If any layer is malformed
        ConfigurationError: If the config file cannot be read
    """
    document = ConfigDocument()
    if getattr(args, "scenario", None):
        document = document.overlay(
            ConfigDocument.from_mapping(scenario_entries(args.scenario), "--scenario")
        )
    if getattr(args, "config", None):
        path = Path(args.config)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigurationError(f"cannot read config {path}: {exc.strerror or exc}") from exc
        document = document.overlay(ConfigDocument.from_text(text))

    for dest, key in FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is not None:
            document = document.overlay(
                ConfigDocument.from_mapping({key: value}, _flag_name(dest))
            )
    if getattr(args, "stop_on_steady", False):
        document = document.overlay(
            ConfigDocument.from_mapping({"steady.stop": "true"}, "--stop-on-steady")
        )
    if material is not None:
        document = document.overlay(
            ConfigDocument.from_mapping({"material": material}, "--materials")
        )
    return build_config(document)


# ============================================================================
# Subcommands
# ============================================================================

def _summary(result: SimulationResult) -> str:
    steady = "none" if result.steady_time is None else f"{result.steady_time:.6g}"
    return (
        f"lambda={result.fourier_number:.6g} stability={result.stable.value} "
        f"steady_time={steady}"
    )


def select_frames(count: int, limit: int) -> List[int]:
    """Indices of at most ``limit`` evenly spaced frames, first and last included."""
    if count <= limit:
        return list(range(count))
    if limit <= 1:
        return [count - 1]
    step = (count - 1) / (limit - 1)
    return sorted({round(k * step) for k in range(limit)})


def cmd_simulate(args: argparse.Namespace) -> int:
    """Run one simulation and write the requested outputs."""
    config = load_config(args)
    result = simulate(config)
    print(_summary(result))

    if args.csv:
        write_text(args.csv, write_timeseries_csv(result, config.grid))
    if args.frames:
        write_frames(result.frames, config.grid, args.frames)
    if args.svg:
        chosen = [result.frames[i] for i in select_frames(len(result.frames), args.svg_curves)]
        labels = [f"t={frame.time:.2f}" for frame in chosen]
        title = f"{config.material.name}: temperature profile"
        write_text(args.svg, render_svg_profile(chosen, labels, config.grid, title=title))
    if args.heatmap:
        write_text(args.heatmap, render_svg_heatmap(result.frames, config.grid))

    if result.diverged:
        print(f"error: divergence detected at t={result.diverged_at:.6g}", file=sys.stderr)
        return EXIT_DIVERGED
    return EXIT_OK


def _format_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
             for row in [header, *rows]]
    return "\n".join(lines)


def cmd_compare(args: argparse.Namespace) -> int:
    """Run identical configurations across materials and tabulate steady times."""
    names = [name.strip() for name in (args.materials or "").split(",") if name.strip()]
    if not names:
        raise ConfigurationError("--materials needs at least one material name")

    # Validate every configuration before running any of them
    configs = [load_config(args, material=name) for name in names]
    with ThreadPoolExecutor(max_workers=settings.compare_workers) as pool:
        results = list(pool.map(simulate, configs))

    rows = [
        CompareRow(
            material=config.material.name,
            alpha=config.material.diffusivity,
            fourier_number=result.fourier_number,
            steady_time=result.steady_time,
        )
        for config, result in zip(configs, results)
    ]
    header = ["material", "alpha", "lambda", "steady_time"]
    print(_format_table(header, [row.cells() for row in rows]))

    if args.csv:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            steady = ">t_end" if row.steady_time is None else format_number(row.steady_time)
            writer.writerow(
                [row.material, format_number(row.alpha), format_number(row.fourier_number), steady]
            )
        write_text(args.csv, buffer.getvalue())
    return EXIT_OK


def _parse_grids(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigurationError(
            f"--grids: expected comma-separated integers, got {text!r}"
        ) from exc


def cmd_verify(args: argparse.Namespace) -> int:
    """Check stepping against the closed form and measure the spatial order."""
    grids = _parse_grids(args.grids)
    if len(grids) == 2:
        print("warning: observed order from a two-point fit", file=sys.stderr)

    report = run_equivalence_suite(seed=args.seed, count=args.cases)
    status = "PASS" if report.passed else "FAIL"
    print(
        f"equivalence: {status} (max {report.max_deviation:.1e}, "
        f"{report.case_count} cases, seed {report.seed})"
    )
    if not report.passed and report.worst_case is not None:
        print(f"  offending case (seed {report.seed}): {report.worst_case.model_dump_json()}")

    study = convergence_study(
        alpha=1.0, length=1.0, mode=1, lambda_fixed=0.25, grids=grids, t_target=0.1
    )
    order_ok = ORDER_WINDOW[0] <= study.observed_order <= ORDER_WINDOW[1]
    print(f"convergence: {'PASS' if order_ok else 'FAIL'} (order {study.observed_order:.3f})")
    for point in study.points:
        print(f"  N={point.node_count} dx={point.dx:.6g} l2={point.l2_error:.6e}")
    if not order_ok:
        print(f"  offending grids: {','.join(str(g) for g in grids)} (lambda=0.25, mode=1)")

    return EXIT_OK if report.passed and order_ok else EXIT_VERIFY_FAILED


def cmd_stability(args: argparse.Namespace) -> int:
    """Report the mesh Fourier number and verdict for a step size."""
    alpha = args.alpha if args.alpha is not None else builtin_material(args.material).diffusivity
    grid = Grid1D(length=args.length, node_count=args.nodes)
    lam = mesh_fourier_number(alpha, args.dt, grid.dx)
    verdict = check_stability(lam)
    print(f"lambda={lam:.6g} verdict={verdict.value}")
    if verdict is StabilityVerdict.UNSTABLE:
        print(f"max_stable_dt={max_stable_dt(alpha, grid.dx):.6g}")
    return EXIT_OK


# ============================================================================
# Parser
# ============================================================================

def _add_run_flags(parser: argparse.ArgumentParser, with_material: bool = True) -> None:
    parser.add_argument("--config", help="Config file (key = value lines)")
    parser.add_argument("--scenario", help=f"Named recipe: {', '.join(scenario_names())}")
    if with_material:
        parser.add_argument("--material", help="Catalog material name")
    parser.add_argument("--length", help="Rod length")
    parser.add_argument("--nodes", help="Node count (>= 3)")
    parser.add_argument("--dt", help="Time step; derived from lambda=0.4 when omitted")
    parser.add_argument("--t-end", dest="t_end", help="End time")
    parser.add_argument("--sample-every", dest="sample_every", help="Steps between stored frames")
    bc_help = "dirichlet:<value> or neumann:<gradient>"
    parser.add_argument("--bc-left", dest="bc_left", help=bc_help)
    parser.add_argument("--bc-right", dest="bc_right", help=bc_help)
    parser.add_argument("--ic", help="spike:<v>@mid|<i>, uniform:<v> or sine:<m>,<amplitude>")
    parser.add_argument("--steady-eps", dest="steady_eps", help="Steady-state rate threshold")
    parser.add_argument("--stop-on-steady", dest="stop_on_steady", action="store_true",
                        help="Stop stepping once steady state is detected")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heatrod", description="1-D transient heat conduction with the explicit FTCS scheme"
    )
    parser.add_argument(
        "--log-level",
        dest="log_level",
        type=str.upper,
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Override the configured log level",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    simulate_parser = commands.add_parser("simulate", help="Run one simulation")
    _add_run_flags(simulate_parser)
    simulate_parser.add_argument("--csv", help="Write the t,x,temperature time series")
    simulate_parser.add_argument("--frames", help="Directory for per-frame CSV files")
    simulate_parser.add_argument("--svg", help="Write an SVG of temperature profiles")
    simulate_parser.add_argument("--svg-curves", dest="svg_curves", type=int, default=10,
                                 help="Maximum number of profiles in the SVG")
    simulate_parser.add_argument("--heatmap", help="Write an SVG space-time colour map")
    simulate_parser.set_defaults(handler=cmd_simulate)

    compare_parser = commands.add_parser("compare", help="Compare steady times across materials")
    compare_parser.add_argument("--materials", required=True, help="Comma-separated names")
    _add_run_flags(compare_parser, with_material=False)
    compare_parser.add_argument("--csv", help="Write the comparison table as CSV")
    compare_parser.set_defaults(handler=cmd_compare)

    verify_parser = commands.add_parser("verify", help="Check the scheme against exact solutions")
    verify_parser.add_argument("--seed", type=int, default=0, help="Seed of the random cases")
    verify_parser.add_argument("--cases", type=int, default=DEFAULT_CASE_COUNT,
                               help="Number of random equivalence cases")
    verify_parser.add_argument("--grids", default=",".join(str(n) for n in DEFAULT_GRIDS),
                               help="Comma-separated node counts for the convergence study")
    verify_parser.set_defaults(handler=cmd_verify)

    stability_parser = commands.add_parser("stability", help="Check the explicit stability bound")
    source = stability_parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--material", help="Catalog material name")
    source.add_argument("--alpha", type=float, help="Diffusivity")
    stability_parser.add_argument("--length", type=float, default=100.0, help="Rod length")
    stability_parser.add_argument("--nodes", type=int, default=101, help="Node count")
    stability_parser.add_argument("--dt", type=float, required=True, help="Time step")
    stability_parser.set_defaults(handler=cmd_stability)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, dispatch, and map failures onto exit codes.

    Args:
        argv: Arguments without the program name; defaults to sys.argv[1:]

    Returns:
        Process exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help
        return EXIT_OK if exc.code in (0, None) else EXIT_CONFIG_ERROR

    if args.log_level:
        logger.set_level(args.log_level)

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (HeatRodError, ValidationError) as exc:
        logger.error(
            f"{args.command} aborted: {type(exc).__name__}", exc_info=settings.is_debug_mode()
        )
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except ArithmeticError as exc:
        # Inputs finite on their own can still overflow in combination
        logger.error(f"{args.command} aborted: {type(exc).__name__}", exc_info=True)
        print(f"error: arithmetic failure on the given values: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


def run() -> None:
    """Console-script entry point."""
    sys.exit(main())
