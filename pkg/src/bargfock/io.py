"""
Serialization of expansions, phase fields, signals, covers and norm rows.

JSON goes through pydantic models; tabular data is plain CSV with a header
row, written and read with numpy.
"""
import logging
from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from bargfock.bargmann import TaylorCoeffs
from bargfock.errors import InvalidArgumentError
from bargfock.fock.covering import BallCover
from bargfock.grid import AxisGrid, PhaseGrid, Signal
from bargfock.hermite import CoefficientMap, HermiteExpansion, MultiIndex
from bargfock.stft import Convention, PhaseField

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1


class CoefficientEntry(BaseModel):
    alpha: list[int]
    re: float
    im: float


class ExpansionModel(BaseModel):
    """HermiteExpansion / TaylorCoeffs on disk, graded-lex sorted"""
    dim: int
    max_degree: int
    coeffs: list[CoefficientEntry]
    space: Literal["hermite", "fock"] = "hermite"


def expansion_to_model(e: CoefficientMap) -> ExpansionModel:
    space = "fock" if isinstance(e, TaylorCoeffs) else "hermite"
    entries = [CoefficientEntry(alpha=list(alpha.entries), re=a.real, im=a.imag) for alpha, a in e.items()]
    return ExpansionModel(dim=e.dim, max_degree=e.max_degree, coeffs=entries, space=space)


def model_to_expansion(model: ExpansionModel) -> HermiteExpansion | TaylorCoeffs:
    cls = TaylorCoeffs if model.space == "fock" else HermiteExpansion
    coeffs = {MultiIndex(tuple(c.alpha)): complex(c.re, c.im) for c in model.coeffs}
    return cls(model.dim, model.max_degree, coeffs)


def write_expansion(e: CoefficientMap, path: Path) -> Path:
    path.write_text(expansion_to_model(e).model_dump_json(indent=2))
    return path


def read_expansion(path: Path) -> HermiteExpansion | TaylorCoeffs:
    return model_to_expansion(ExpansionModel.model_validate_json(Path(path).read_text()))


class AxisModel(BaseModel):
    half_width: float
    n: int


class PhaseFieldDescriptor(BaseModel):
    """Grid descriptor written next to a phase-field CSV"""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(SCHEMA_VERSION, alias="schema")
    dim: int
    convention: Convention
    x_axes: list[AxisModel]
    xi_axes: list[AxisModel]

    def grid(self) -> PhaseGrid:
        return PhaseGrid(
            self.dim,
            tuple(AxisGrid(a.half_width, a.n) for a in self.x_axes),
            tuple(AxisGrid(a.half_width, a.n) for a in self.xi_axes),
        )


def _axis_models(axes) -> list[AxisModel]:
    return [AxisModel(half_width=a.half_width, n=a.n) for a in axes]


def _csv_header(names: list[str]) -> str:
    return ",".join(names)


def write_phase_field(field: PhaseField, stem: Path) -> tuple[Path, Path]:
    """
    Write stem.json (grid descriptor) and stem.csv (x.., xi.., re, im), row-major.

    Returns:
        (json path, csv path)
    """
    grid = field.grid
    descriptor = PhaseFieldDescriptor(
        dim=grid.dim,
        convention=field.convention,
        x_axes=_axis_models(grid.x_axes),
        xi_axes=_axis_models(grid.xi_axes),
    )
    json_path = stem.with_suffix(".json")
    csv_path = stem.with_suffix(".csv")
    json_path.write_text(descriptor.model_dump_json(indent=2, by_alias=True))

    x, xi = grid.mesh()
    columns = [c.ravel() for c in (*x, *xi)] + [field.values.real.ravel(), field.values.imag.ravel()]
    names = [f"x{j + 1}" if grid.dim > 1 else "x" for j in range(grid.dim)]
    names += [f"xi{j + 1}" if grid.dim > 1 else "xi" for j in range(grid.dim)] + ["re", "im"]
    np.savetxt(csv_path, np.column_stack(columns), delimiter=",", header=_csv_header(names), comments="", fmt="%.17g")
    logger.debug("wrote phase field %s to %s", grid.shape, csv_path)
    return json_path, csv_path


def read_phase_field(stem: Path) -> PhaseField:
    descriptor = PhaseFieldDescriptor.model_validate_json(stem.with_suffix(".json").read_text())
    grid = descriptor.grid()
    data = np.loadtxt(stem.with_suffix(".csv"), delimiter=",", skiprows=1, ndmin=2)
    if data.shape != (grid.size, 2 * grid.dim + 2):
        raise InvalidArgumentError(f"phase field CSV has shape {data.shape}, descriptor expects {grid.size} rows")
    values = (data[:, -2] + 1j * data[:, -1]).reshape(grid.shape)
    return PhaseField(grid, values, descriptor.convention)


def write_signal_csv(f: Signal, path: Path) -> Path:
    """Columns (x, re, im); d = 1 only"""
    if f.dim != 1:
        raise InvalidArgumentError("signal CSV holds one-dimensional signals")
    data = np.column_stack([f.axes[0].nodes, f.values.real, f.values.imag])
    np.savetxt(path, data, delimiter=",", header="x,re,im", comments="", fmt="%.17g")
    return path


def read_signal_csv(path: Path) -> Signal:
    """
    Read (x, re, im) rows sampled on a symmetric uniform grid with an odd count.

    Raises:
        FileNotFoundError: path does not exist
        InvalidArgumentError: the x column is not such a grid
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    with path.open() as handle:
        first = handle.readline()
    skip = 0 if _is_numeric_row(first) else 1
    data = np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)
    if data.shape[1] != 3:
        raise InvalidArgumentError(f"{path}: expected columns x, re, im, got {data.shape[1]}")
    x = data[:, 0]
    axis = AxisGrid(float(np.max(np.abs(x))), len(x))
    if not np.allclose(x, axis.nodes, rtol=0, atol=1e-9 * max(1.0, axis.half_width)):
        raise InvalidArgumentError(f"{path}: x column is not a symmetric uniform grid")
    return Signal((axis,), data[:, 1] + 1j * data[:, 2])


def _is_numeric_row(line: str) -> bool:
    try:
        [float(cell) for cell in line.strip().split(",")]
    except ValueError:
        return False
    return True


class BallModel(BaseModel):
    center: list[float]
    radius: float


class CoverModel(BaseModel):
    R_max: float
    max_overlap: int
    balls: list[BallModel]


def write_cover(cover: BallCover, path: Path) -> Path:
    model = CoverModel(
        R_max=cover.r_max,
        max_overlap=cover.max_overlap,
        balls=[BallModel(center=[c.real, c.imag], radius=r) for c, r in cover.balls()],
    )
    path.write_text(model.model_dump_json(indent=2))
    return path


NORM_HEADER = "name,p,q,weight,value"


def append_norm_row(path: Path, name: str, p: float, q: float, weight: str, value: float) -> Path:
    """Append one (name, p, q, weight, value) row, writing the header on first use"""
    new = not path.exists() or path.stat().st_size == 0
    with path.open("a") as handle:
        if new:
            handle.write(NORM_HEADER + "\n")
        handle.write(f"{name},{p:g},{q:g},{weight},{value:.12g}\n")
    return path
