"""
Pydantic models for the solver's domain types.

Provides immutable, validated models for grids, materials, boundary and initial
conditions, temperature fields, solver configurations and results.
"""
import math
from enum import Enum
from typing import Annotated, Any, List, Literal, Optional, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]
PositiveFloat = Annotated[float, Field(gt=0, allow_inf_nan=False)]


def fourier_ratio(alpha: float, dt: float, dx: float) -> float:
    """
    alpha*dt/dx^2 in plain float arithmetic.

    Never raises: the result is inf when dx^2 underflows to zero and 0.0 when it
    overflows, so callers only need a finiteness check.
    """
    dx_squared = dx * dx
    if dx_squared == 0.0:
        return math.inf
    return alpha * dt / dx_squared


class StabilityVerdict(str, Enum):
    """Von Neumann verdict for the explicit scheme."""
    STABLE = "Stable"
    MARGINAL = "Marginal"
    UNSTABLE = "Unstable"


class Grid1D(BaseModel):
    """Uniform grid of ``node_count`` nodes spanning [0, length]."""
    model_config = ConfigDict(frozen=True)

    length: PositiveFloat
    node_count: int = Field(..., ge=3)

    @property
    def dx(self) -> float:
        """Node spacing."""
        return self.length / (self.node_count - 1)

    @property
    def positions(self) -> np.ndarray:
        """Node positions; endpoints are exactly 0 and ``length``."""
        return np.linspace(0.0, self.length, self.node_count)

    @property
    def mid_index(self) -> int:
        """Index of the middle node, floor(N/2)."""
        return self.node_count // 2


class Material(BaseModel):
    """Rod material described by conductivity, density and specific heat."""
    model_config = ConfigDict(frozen=True)

    name: str = Field(..., min_length=1)
    conductivity: PositiveFloat
    density: PositiveFloat
    specific_heat: PositiveFloat

    @property
    def diffusivity(self) -> float:
        """Thermal diffusivity k/(rho*c)."""
        heat_capacity = self.density * self.specific_heat
        if heat_capacity == 0.0:
            return math.inf
        return self.conductivity / heat_capacity

    @model_validator(mode="after")
    def validate_diffusivity(self) -> "Material":
        """Reject property combinations whose diffusivity is not a finite positive float."""
        alpha = self.diffusivity
        if not (math.isfinite(alpha) and alpha > 0):
            raise ValueError(f"diffusivity k/(rho*c) = {alpha!r} is not finite and positive")
        return self


# ============================================================================
# Boundary conditions
# ============================================================================

class Dirichlet(BaseModel):
    """End held at a fixed temperature."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["dirichlet"] = "dirichlet"
    value: FiniteFloat


class Neumann(BaseModel):
    """
    End with a prescribed temperature gradient dT/dx (along +x at both ends).

    A zero gradient is an insulated end.
    """
    model_config = ConfigDict(frozen=True)

    kind: Literal["neumann"] = "neumann"
    gradient: FiniteFloat = 0.0


EndCondition = Annotated[Union[Dirichlet, Neumann], Field(discriminator="kind")]


class BoundaryCondition(BaseModel):
    """Conditions at the left (x=0) and right (x=L) ends."""
    model_config = ConfigDict(frozen=True)

    left: EndCondition
    right: EndCondition

    @property
    def both_dirichlet(self) -> bool:
        return isinstance(self.left, Dirichlet) and isinstance(self.right, Dirichlet)

    @property
    def both_insulated(self) -> bool:
        return all(
            isinstance(end, Neumann) and end.gradient == 0.0
            for end in (self.left, self.right)
        )

    @classmethod
    def dirichlet(cls, left: float, right: float) -> "BoundaryCondition":
        """Shortcut for two fixed-temperature ends."""
        return cls(left=Dirichlet(value=left), right=Dirichlet(value=right))

    @classmethod
    def insulated(cls) -> "BoundaryCondition":
        """Shortcut for two zero-flux ends."""
        return cls(left=Neumann(), right=Neumann())


# ============================================================================
# Initial conditions
# ============================================================================

class Uniform(BaseModel):
    """Same temperature at every node."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["uniform"] = "uniform"
    value: FiniteFloat


class SpikeAtNode(BaseModel):
    """Background temperature with a single hot node; ``None`` index means mid node."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["spike"] = "spike"
    spike_value: FiniteFloat
    node_index: Optional[int] = Field(default=None, ge=0)
    background_value: FiniteFloat = 0.0


class SineMode(BaseModel):
    """T_i = A*sin(m*pi*x_i/L)."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["sine"] = "sine"
    mode: int = Field(..., ge=1)
    amplitude: FiniteFloat = 1.0


class Explicit(BaseModel):
    """Node values given one by one."""
    model_config = ConfigDict(frozen=True)

    kind: Literal["explicit"] = "explicit"
    values: Tuple[FiniteFloat, ...]


InitialCondition = Annotated[
    Union[Uniform, SpikeAtNode, SineMode, Explicit], Field(discriminator="kind")
]


# ============================================================================
# Fields, configuration and results
# ============================================================================

class TemperatureField(BaseModel):
    """Node temperatures at one time instant (read-only array)."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    values: np.ndarray
    time: FiniteFloat = 0.0
    diverged: bool = False

    @field_validator("values", mode="before")
    @classmethod
    def validate_values(cls, v: Any) -> np.ndarray:
        """Copy into a read-only 1-D float64 array."""
        array = np.array(v, dtype=np.float64, copy=True)
        if array.ndim != 1:
            raise ValueError("Temperature values must be one-dimensional")
        array.setflags(write=False)
        return array

    @model_validator(mode="after")
    def validate_finite(self) -> "TemperatureField":
        """Non-finite values are only allowed on a diverged field."""
        if not self.diverged and not np.all(np.isfinite(self.values)):
            raise ValueError("Non-finite temperature in a field not flagged as diverged")
        return self

    def __len__(self) -> int:
        return int(self.values.shape[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TemperatureField):
            return NotImplemented
        return (
            self.time == other.time
            and self.diverged == other.diverged
            and np.array_equal(self.values, other.values, equal_nan=True)
        )

    __hash__ = None  # type: ignore[assignment]


class SolverConfig(BaseModel):
    """Everything a simulation run needs."""
    model_config = ConfigDict(frozen=True)

    grid: Grid1D
    material: Material
    bc: BoundaryCondition
    ic: InitialCondition
    dt: PositiveFloat
    t_end: FiniteFloat
    sample_every: int = Field(default=60, ge=1)
    steady_eps: PositiveFloat = 1e-4
    stop_on_steady: bool = False

    @model_validator(mode="after")
    def validate_consistency(self) -> "SolverConfig":
        """Check cross-field invariants."""
        if not self.t_end > self.dt:
            raise ValueError(f"t_end ({self.t_end:g}) must exceed dt ({self.dt:g})")
        if not math.isfinite(self.t_end / self.dt):
            raise ValueError(f"t_end/dt = {self.t_end:g}/{self.dt:g} is too many steps to count")
        lam = self.fourier_number
        if not (math.isfinite(lam) and lam > 0):
            raise ValueError(f"Mesh Fourier number {lam!r} is not finite and positive")
        count = self.grid.node_count
        if isinstance(self.ic, SpikeAtNode) and self.ic.node_index is not None:
            if self.ic.node_index > count - 1:
                raise ValueError(
                    f"Spike node {self.ic.node_index} outside [0, {count - 1}]"
                )
        if isinstance(self.ic, Explicit) and len(self.ic.values) != count:
            raise ValueError(
                f"Explicit initial condition has {len(self.ic.values)} values, "
                f"grid has {count} nodes"
            )
        return self

    @property
    def fourier_number(self) -> float:
        """Mesh Fourier number alpha*dt/dx^2."""
        return fourier_ratio(self.material.diffusivity, self.dt, self.grid.dx)

    @property
    def step_count(self) -> int:
        """Number of steps needed to reach t_end."""
        return math.ceil(self.t_end / self.dt - 1e-9)


class SimulationResult(BaseModel):
    """Sampled history of a run and its diagnostics."""
    model_config = ConfigDict(frozen=True)

    frames: List[TemperatureField] = Field(..., min_length=1)
    fourier_number: float
    stable: StabilityVerdict
    steady_time: Optional[float] = Field(default=None, gt=0)
    diverged_at: Optional[float] = None

    @field_validator("frames")
    @classmethod
    def validate_frame_times(cls, v: List[TemperatureField]) -> List[TemperatureField]:
        """Frames start at t=0 and are strictly time-ordered."""
        if v[0].time != 0.0:
            raise ValueError("First frame must be the initial condition at t=0")
        times = [frame.time for frame in v]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("Frame times must be strictly increasing")
        return v

    @property
    def final(self) -> TemperatureField:
        """Last stored frame."""
        return self.frames[-1]

    @property
    def diverged(self) -> bool:
        return self.diverged_at is not None


class ErrorReport(BaseModel):
    """Distance between two fields."""
    model_config = ConfigDict(frozen=True)

    max_abs: float = Field(..., ge=0)
    l2: float = Field(..., ge=0)
    observed_order: Optional[float] = None

    @model_validator(mode="after")
    def validate_norm_order(self) -> "ErrorReport":
        if self.l2 > self.max_abs:
            raise ValueError(f"l2 ({self.l2}) cannot exceed max_abs ({self.max_abs})")
        return self


class ConvergencePoint(BaseModel):
    """Error of one grid in a refinement study."""
    model_config = ConfigDict(frozen=True)

    node_count: int
    dx: float
    steps: int
    time: float
    l2_error: float


class ConvergenceReport(BaseModel):
    """Outcome of a grid-refinement study."""
    model_config = ConfigDict(frozen=True)

    points: List[ConvergencePoint]
    observed_order: float

    @property
    def error_ratios(self) -> List[float]:
        """Error ratio between each grid and the next finer one."""
        return [
            coarse.l2_error / fine.l2_error
            for coarse, fine in zip(self.points, self.points[1:])
        ]


class EquivalenceCase(BaseModel):
    """One randomly drawn stable Dirichlet problem."""
    model_config = ConfigDict(frozen=True)

    index: int
    node_count: int
    fourier_number: float
    left: float
    right: float
    steps: int
    initial: Tuple[float, ...]


class EquivalenceReport(BaseModel):
    """Worst disagreement between stepping and the closed form."""
    model_config = ConfigDict(frozen=True)

    seed: int
    case_count: int
    max_deviation: float
    worst_case: Optional[EquivalenceCase] = None
    tolerance: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tolerance
