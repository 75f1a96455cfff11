"""
Configuration for bargfock runs.

Grid and tolerance defaults are module constants so library calls need no
configuration object; RunConfig validates a single CLI invocation.
"""
import math
import os
from enum import Enum
from pathlib import Path
from typing import Optional

from pydantic import BaseModel, Field, field_validator, model_validator

# Desk-scale grids. Gaussian tails at |x| = 8 are below 1e-14.
DEFAULT_HALF_WIDTH = 8.0
DEFAULT_N_1D = 257
DEFAULT_N_2D = 65
# Phase grids at d = 2 have four axes; norms use a coarser default there.
DEFAULT_PHASE_N_2D = 33
# Norm-equivalence grids reach further out: degree-12 Hermite mass sits near |X| = 5.
EQUIVALENCE_HALF_WIDTH = 10.0
EQUIVALENCE_N = 201

# Fock-plane grid for dμ integrals: covers |w| <= 7, where e^{-|w|^2} < 1e-21.
FOCK_HALF_WIDTH = 7.0
FOCK_N = 141
# At d = 2 the plane has four axes. Spacing 0.5 still leaves the trapezoid
# error of e^{-|w|^2} at about e^{-pi^2 / h^2} ~ 1e-17.
FOCK_HALF_WIDTH_2D = 6.0
FOCK_N_2D = 25

CAUCHY_RADIUS = 1.5
COVER_SAMPLES = 400

OUTPUT_DIR_ENV = "BARGFOCK_OUTPUT_DIR"


class Tolerances(BaseModel):
    """Acceptance tolerances used by the verification suites"""
    hermite_map: float = 1e-6
    isometry: float = 1e-3
    parseval: float = 1e-4
    reproduce: float = 1e-6
    annihilate: float = 1e-6
    idempotence: float = 1e-4
    window_constant: float = 1e-2
    window_constant_drift: float = 1e-2
    toeplitz_spectrum: float = 1e-2
    intertwining: float = 5e-2
    equivalence_band: float = 16.0
    equivalence_drift: float = 0.1
    max_overlap: float = 64.0
    narrow_limit: float = 1e-6
    oscillator: float = 1e-5
    central_difference: float = 1e-3
    cauchy_riemann: float = 1e-4
    round_trip: float = 1e-9
    toeplitz_identity: float = 1e-6
    self_adjoint: float = 1e-6
    conjugation: float = 1e-2


class Command(str, Enum):
    """Top-level CLI commands"""
    TRANSFORM = "transform"
    NORM = "norm"
    VERIFY = "verify"


def parse_exponent(value: str | float) -> float:
    """Parse a Lebesgue exponent; 'inf' and '∞' mean infinity"""
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "∞"):
            return math.inf
        value = float(text)
    return float(value)


class RunConfig(BaseModel):
    """A fully validated CLI invocation"""
    command: Command
    half_width: float = Field(DEFAULT_HALF_WIDTH, gt=0)
    n: Optional[int] = None
    max_degree: int = Field(8, ge=0, le=512)
    weight_s: float = 0.0
    weight_table: Optional[Path] = None
    p: float = 2.0
    q: float = 2.0
    variant: str = "x-first"
    seed: int = Field(7, ge=0, lt=2**64)
    r_max: float = 8.0
    output: Optional[Path] = None
    tolerances: Tolerances = Field(default_factory=Tolerances)

    @field_validator("n")
    @classmethod
    def _odd_grid(cls, n: Optional[int]) -> Optional[int]:
        if n is None:
            return n
        if n < 3 or n % 2 == 0:
            raise ValueError(f"grid size must be odd and >= 3, got {n}")
        return n

    @field_validator("p", "q", mode="before")
    @classmethod
    def _exponent(cls, value) -> float:
        exponent = parse_exponent(value)
        if not (exponent >= 1.0):
            raise ValueError(f"exponent must lie in [1, inf], got {value}")
        return exponent

    @field_validator("variant")
    @classmethod
    def _variant(cls, value: str) -> str:
        if value not in ("x-first", "xi-first"):
            raise ValueError(f"variant must be 'x-first' or 'xi-first', got {value!r}")
        return value

    @model_validator(mode="after")
    def _weight_table_exists(self) -> "RunConfig":
        if self.weight_table is not None and not self.weight_table.with_suffix(".json").exists():
            raise ValueError(f"weight table not found: {self.weight_table.with_suffix('.json')}")
        return self

    def output_dir(self) -> Path:
        """Directory for artifacts: --output parent, else $BARGFOCK_OUTPUT_DIR, else cwd"""
        if self.output is not None:
            return self.output.parent
        return Path(os.environ.get(OUTPUT_DIR_ENV, "."))
