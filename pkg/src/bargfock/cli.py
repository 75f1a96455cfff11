"""
bargfock CLI - transforms, norms and verification suites from the shell.

Every command builds a RunConfig, dispatches to the library and maps
failures to exit codes: 0 success, 1 failed check, 2 invalid configuration,
3 numerical failure.
"""
import logging
from enum import Enum
from pathlib import Path
from typing import Optional

import typer
from pydantic import ValidationError

from bargfock.bargmann import (
    FockFunction,
    TaylorCoeffs,
    bargmann_coefficients,
    bargmann_direct,
    inverse_bargmann,
)
from bargfock.config import DEFAULT_HALF_WIDTH, OUTPUT_DIR_ENV, Command, RunConfig
from bargfock.errors import EXIT_CHECK_FAILED, EXIT_OK, BargfockError, InvalidArgumentError, exit_code_for
from bargfock.fock.covering import build_ball_cover
from bargfock.fock.kernel import plane_points
from bargfock.fock.norms import MixedNormSpec, fock_norm, modulation_norm, norm_phase_grid
from bargfock.fock.weights import WeightSpec, sigma, tabulated_weight
from bargfock.grid import AxisGrid, PhaseGrid, Signal, default_axes, make_phase_grid
from bargfock.hermite import HermiteExpansion, MultiIndex, hermite_expand, hermite_synthesize
from bargfock.io import (
    append_norm_row,
    read_expansion,
    read_phase_field,
    read_signal_csv,
    write_cover,
    write_expansion,
    write_phase_field,
)
from bargfock.stft import Convention, PhaseField, default_stft_grid, gaussian_profile, gaussian_window, stft
from bargfock.util import configure_logging, print_banner, print_error, print_info, print_report_table, print_success
from bargfock.verify import run_suite

logger = logging.getLogger(__name__)

app = typer.Typer(help="Bargmann transform, Gaussian STFT and weighted Fock-space norms", no_args_is_help=True)

# Fock-side output grid: spacing 0.25, so z = 1 + i is a node
FOCK_OUTPUT_HALF_WIDTH = 4.0
FOCK_OUTPUT_N = 33


class TransformKind(str, Enum):
    STFT = "stft"
    BARGMANN = "bargmann"


class NormKind(str, Enum):
    MODULATION = "mod"
    FOCK = "fock"


class InputSource:
    """
    A named builtin or a file, viewable both as a signal and as a Fock function.

    Builtins: gaussian, hermite:k (h_k), taylor:k (z^k / sqrt(k!)). Files:
    *.csv signals (x, re, im) and *.json expansions.
    """

    def __init__(self, spec: str, config: RunConfig):
        self.spec = spec
        self.config = config
        self.signal_value: Signal | None = None
        self.expansion: HermiteExpansion | None = None
        self.taylor: TaylorCoeffs | None = None
        self._parse()

    def _axes(self, dim: int = 1) -> tuple[AxisGrid, ...]:
        return default_axes(dim, self.config.half_width, self.config.n)

    def _parse(self) -> None:
        name, _, arg = self.spec.partition(":")
        if name == "gaussian" and not arg:
            self.signal_value = Signal.from_function(self._axes(), gaussian_profile)
            self.taylor = TaylorCoeffs(1, 0, {MultiIndex.of(0): 1.0})
        elif name in ("hermite", "taylor") and arg:
            try:
                k = int(arg)
            except ValueError:
                raise InvalidArgumentError(f"degree in {self.spec!r} is not an integer")
            if k < 0:
                raise InvalidArgumentError(f"degree in {self.spec!r} must be non-negative")
            self.expansion = HermiteExpansion(1, k, {MultiIndex.of(k): 1.0})
            self.taylor = bargmann_coefficients(self.expansion)
        else:
            path = Path(self.spec)
            if not path.exists():
                raise FileNotFoundError(f"input file not found: {path}")
            if path.suffix == ".json":
                loaded = read_expansion(path)
                if isinstance(loaded, TaylorCoeffs):
                    self.taylor = loaded
                    self.expansion, _ = inverse_bargmann(loaded)
                else:
                    self.expansion = loaded
                    self.taylor = bargmann_coefficients(loaded)
            else:
                self.signal_value = read_signal_csv(path)

    def signal(self) -> Signal:
        if self.signal_value is None:
            self.signal_value = hermite_synthesize(self.expansion, self._axes(self.expansion.dim))
        return self.signal_value

    def fock(self) -> FockFunction:
        if self.taylor is None:
            self.taylor = bargmann_coefficients(hermite_expand(self.signal(), self.config.max_degree))
        return self.taylor


def _parse_points(points: str, dim: int, default: PhaseGrid) -> PhaseGrid:
    """'grid' keeps the default; 'L:n' asks for half width L with n nodes per axis"""
    if points == "grid":
        return default
    half_width, _, n = points.partition(":")
    try:
        return make_phase_grid(dim, float(half_width), int(n))
    except ValueError:
        raise InvalidArgumentError(f"--points must be 'grid' or 'HALF_WIDTH:N', got {points!r}")


def _weight(config: RunConfig) -> WeightSpec:
    if config.weight_table is not None:
        return tabulated_weight(read_phase_field(config.weight_table))
    return sigma(config.weight_s)


def _output(config: RunConfig, name: str) -> Path:
    if config.output is not None:
        return config.output
    directory = config.output_dir()
    directory.mkdir(parents=True, exist_ok=True)
    return directory / name


def _dispatch(action) -> None:
    """Run action, turning library and validation failures into exit codes"""
    try:
        code = action()
    except typer.Exit:
        raise
    except (BargfockError, ValidationError, ValueError, OSError, OverflowError, MemoryError) as e:
        code = exit_code_for(e)
        print_error(str(e) or type(e).__name__)
        logger.debug("command failed", exc_info=True)
    raise typer.Exit(code=code)


def _config(command: Command, **fields) -> RunConfig:
    return RunConfig(command=command, **{k: v for k, v in fields.items() if v is not None})


@app.callback()
def main(log_level: str = typer.Option("WARNING", "--log-level", help="Library log level")):
    configure_logging(log_level)


@app.command()
def transform(
    kind: TransformKind = typer.Argument(..., help="stft or bargmann"),
    input: str = typer.Option(..., "--input", help="gaussian, hermite:k, taylor:k, or a .csv / .json file"),
    points: str = typer.Option("grid", "--points", help="'grid' or 'HALF_WIDTH:N' for the output grid"),
    half_width: float = typer.Option(DEFAULT_HALF_WIDTH, "--half-width", help="Signal grid half width"),
    n: Optional[int] = typer.Option(None, "--n", help="Signal grid node count (odd), default 257 at d = 1, 65 at d = 2"),
    max_degree: int = typer.Option(8, "--max-degree", help="Hermite degree for sampled inputs"),
    output: Optional[Path] = typer.Option(None, "--output", help=f"Output stem, default in ${OUTPUT_DIR_ENV}"),
):
    """Write the STFT or the Bargmann transform of the input as a phase-field JSON/CSV pair"""
    def action() -> int:
        config = _config(Command.TRANSFORM, half_width=half_width, n=n, max_degree=max_degree, output=output)
        source = InputSource(input, config)
        stem = _output(config, kind.value)
        if kind == TransformKind.STFT:
            f = source.signal()
            field = stft(f, gaussian_window(f.dim, f.axes), _parse_points(points, f.dim, default_stft_grid(f)))
        elif source.taylor is not None:
            F = source.taylor
            grid = _parse_points(points, F.dim, make_phase_grid(F.dim, FOCK_OUTPUT_HALF_WIDTH, FOCK_OUTPUT_N))
            write_expansion(F, stem.with_name(stem.name + ".fock.json"))
            field = PhaseField(grid, F.evaluate(plane_points(grid)), Convention.FOCK_PLANE)
        else:
            # sampled signals go through the kernel quadrature directly
            f = source.signal()
            grid = _parse_points(points, f.dim, make_phase_grid(f.dim, FOCK_OUTPUT_HALF_WIDTH, FOCK_OUTPUT_N))
            values = bargmann_direct(f, plane_points(grid).reshape(-1, f.dim)).reshape(grid.shape)
            field = PhaseField(grid, values, Convention.FOCK_PLANE)
        json_path, csv_path = write_phase_field(field, stem)
        print_success(f"wrote {json_path} and {csv_path}")
        return EXIT_OK

    _dispatch(action)


@app.command()
def norm(
    kind: NormKind = typer.Argument(..., help="mod (modulation norm of a signal) or fock (Fock norm)"),
    input: str = typer.Option(..., "--input", help="gaussian, hermite:k, taylor:k, or a .csv / .json file"),
    p: str = typer.Option("2", "--p", help="Inner exponent, 1..inf"),
    q: str = typer.Option("2", "--q", help="Outer exponent, 1..inf"),
    variant: str = typer.Option("x-first", "--variant", help="x-first or xi-first"),
    weight_s: float = typer.Option(0.0, "--weight-s", help="sigma_s weight exponent"),
    weight_table: Optional[Path] = typer.Option(None, "--weight-table", help="Phase-field stem of a tabulated weight"),
    half_width: float = typer.Option(DEFAULT_HALF_WIDTH, "--half-width"),
    n: Optional[int] = typer.Option(None, "--n", help="Signal grid node count (odd)"),
    max_degree: int = typer.Option(8, "--max-degree"),
    output: Optional[Path] = typer.Option(None, "--output", help="CSV file the norm row is appended to"),
):
    """Print a weighted mixed norm with 12 significant digits and append it to a CSV report"""
    def action() -> int:
        config = _config(
            Command.NORM, p=p, q=q, variant=variant, weight_s=weight_s, weight_table=weight_table,
            half_width=half_width, n=n, max_degree=max_degree, output=output,
        )
        spec = MixedNormSpec(config.p, config.q, config.variant)
        weight = _weight(config)
        source = InputSource(input, config)
        if kind == NormKind.MODULATION:
            f = source.signal()
            value = modulation_norm(f, weight, spec, norm_phase_grid(f.dim))
        else:
            F = source.fock()
            value = fock_norm(F, weight, spec, norm_phase_grid(F.dim))
        path = append_norm_row(_output(config, "norms.csv"), f"{kind.value}:{input}", config.p, config.q, weight.label, value)
        print_info(f"appended {spec.label} row to {path}")
        typer.echo(f"{value:.12g}")
        return EXIT_OK

    _dispatch(action)


@app.command()
def verify(
    suite: str = typer.Argument(..., help="Suite name, e.g. isometry or covering"),
    seed: int = typer.Option(7, "--seed", help="Seed of the random families"),
    rmax: float = typer.Option(8.0, "--rmax", help="Outer radius of the ball cover"),
    output: Optional[Path] = typer.Option(None, "--output", help="Report JSON path"),
):
    """Run a verification suite and write its report; exit 1 if any check fails"""
    def action() -> int:
        config = _config(Command.VERIFY, seed=seed, r_max=rmax, output=output)
        print_banner(f"verify {suite}")
        report = run_suite(suite, config)
        path = _output(config, f"verify-{suite}.json")
        path.write_text(report.to_json())
        if suite == "covering":
            cover_path = write_cover(build_ball_cover(config.r_max), path.with_name(path.stem + ".cover.json"))
            print_info(f"wrote cover to {cover_path}")
        print_report_table(suite, report.checks)
        if not report.passed:
            print_error(f"{len(report.failures())} of {len(report.checks)} checks failed; report in {path}")
            return EXIT_CHECK_FAILED
        print_success(f"all {len(report.checks)} checks passed; report in {path}")
        return EXIT_OK

    _dispatch(action)


def run() -> None:
    """Console-script entry point"""
    app()


if __name__ == "__main__":
    run()
