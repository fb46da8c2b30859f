"""
Line-oriented configuration grammar.

    # comment
    material = aluminium          # or material.k / material.rho / material.c
    rod.length = 100
    grid.nodes = 101
    time.dt = 0.4                 # derived from lambda = 0.4 when absent
    time.end = 6000
    time.sample_every = 60
    bc.left = dirichlet:0         # or neumann:<gradient>
    bc.right = dirichlet:50
    ic = spike:50@mid             # spike:<v>@<index>, uniform:<v>, sine:<m>,<amplitude>
    steady.eps = 1e-4
    steady.stop = false

Every error is reported as a ConfigParseError carrying the line number of the
offending entry, or the flag name when the entry came from the command line.
"""
import math
from typing import Callable, Dict, Mapping, Optional, TypeVar, Union

from pydantic import BaseModel, ConfigDict, ValidationError

from models.schemas import (
    BoundaryCondition,
    Dirichlet,
    EndCondition,
    Grid1D,
    InitialCondition,
    Material,
    Neumann,
    SineMode,
    SolverConfig,
    SpikeAtNode,
    Uniform,
)
from solver.materials import builtin_material, custom_material
from utils.errors import ConfigParseError, HeatRodError

T = TypeVar("T")
Source = Union[int, str]

TARGET_LAMBDA = 0.4

DEFAULTS: Dict[str, str] = {
    "rod.length": "100",
    "grid.nodes": "101",
    "time.end": "6000",
    "time.sample_every": "60",
    "bc.left": "dirichlet:0",
    "bc.right": "dirichlet:0",
    "ic": "spike:50@mid",
    "steady.eps": "1e-4",
    "steady.stop": "false",
}

MATERIAL_TRIPLE = ("material.k", "material.rho", "material.c")

KNOWN_KEYS = frozenset(
    {"material", *MATERIAL_TRIPLE, "time.dt", *DEFAULTS}
)

_TRUE = {"true", "yes", "on", "1"}
_FALSE = {"false", "no", "off", "0"}


class ConfigEntry(BaseModel):
    """One key's raw value and where it came from."""
    model_config = ConfigDict(frozen=True)

    value: str
    source: Source


class ConfigDocument(BaseModel):
    """Validated key-value map of a configuration source."""
    model_config = ConfigDict(frozen=True)

    entries: Dict[str, ConfigEntry] = {}
    last_line: int = 1

    @classmethod
    def from_text(cls, text: str) -> "ConfigDocument":
        """
        Parse configuration text.

        Raises:
            ConfigParseError: On syntax errors, unknown or duplicate keys
        """
        entries: Dict[str, ConfigEntry] = {}
        lines = text.splitlines()
        for number, raw in enumerate(lines, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            key, value = key.strip().lower(), value.strip()
            if not sep:
                raise ConfigParseError(f"expected 'key = value', got {line!r}", number)
            if not key:
                raise ConfigParseError("missing key before '='", number)
            if key not in KNOWN_KEYS:
                raise ConfigParseError(
                    f"unknown key {key!r}; valid keys: {', '.join(sorted(KNOWN_KEYS))}", number
                )
            if not value:
                raise ConfigParseError(f"missing value for {key!r}", number)
            if key in entries:
                raise ConfigParseError(
                    f"duplicate key {key!r} (first set on line {entries[key].source})", number
                )
            entries[key] = ConfigEntry(value=value, source=number)
        _check_material_exclusive(entries)
        return cls(entries=entries, last_line=max(len(lines), 1))

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, str], source: str) -> "ConfigDocument":
        """
        Build a document from flag or scenario values, all attributed to ``source``.

        Raises:
            ConfigParseError: On unknown keys
        """
        entries: Dict[str, ConfigEntry] = {}
        for key, value in mapping.items():
            if key not in KNOWN_KEYS:
                raise ConfigParseError(f"unknown key {key!r}", source)
            entries[key] = ConfigEntry(value=str(value).strip(), source=source)
        return cls(entries=entries)

    def overlay(self, other: "ConfigDocument") -> "ConfigDocument":
        """
        Entries of ``other`` win over this document's.

        Naming a catalog material replaces an explicit property triple and vice versa.
        """
        merged = dict(self.entries)
        if "material" in other.entries:
            for key in MATERIAL_TRIPLE:
                merged.pop(key, None)
        if any(key in other.entries for key in MATERIAL_TRIPLE):
            merged.pop("material", None)
        merged.update(other.entries)
        return ConfigDocument(entries=merged, last_line=max(self.last_line, other.last_line))

    def source_of(self, *keys: str) -> Source:
        """Source of the first present key, else the last line of the document."""
        for key in keys:
            if key in self.entries:
                return self.entries[key].source
        return self.last_line

    def raw(self, key: str) -> Optional[str]:
        entry = self.entries.get(key)
        return entry.value if entry else DEFAULTS.get(key)


def _check_material_exclusive(entries: Mapping[str, ConfigEntry]) -> None:
    triple = [key for key in MATERIAL_TRIPLE if key in entries]
    if "material" in entries and triple:
        later = max([entries["material"], *(entries[k] for k in triple)], key=lambda e: e.source)
        raise ConfigParseError(
            "'material' cannot be combined with material.k/material.rho/material.c",
            later.source,
        )


# ============================================================================
# Value grammar
# ============================================================================

def parse_float(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise ValueError(f"{text!r} is not a finite number")
    return value


def parse_int(text: str) -> int:
    return int(text)


def parse_bool(text: str) -> bool:
    lowered = text.lower()
    if lowered in _TRUE:
        return True
    if lowered in _FALSE:
        return False
    raise ValueError(f"{text!r} is not a boolean")


def parse_end_condition(text: str) -> EndCondition:
    """``dirichlet:<value>`` or ``neumann:<gradient>``."""
    kind, sep, number = text.partition(":")
    kind = kind.strip().lower()
    if not sep:
        raise ValueError(f"expected dirichlet:<value> or neumann:<gradient>, got {text!r}")
    if kind == "dirichlet":
        return Dirichlet(value=parse_float(number))
    if kind == "neumann":
        return Neumann(gradient=parse_float(number))
    raise ValueError(f"unknown boundary kind {kind!r}; use dirichlet or neumann")


def parse_initial_condition(text: str) -> InitialCondition:
    """``spike:<v>@mid``, ``spike:<v>@<index>``, ``uniform:<v>`` or ``sine:<m>,<amplitude>``."""
    kind, sep, rest = text.partition(":")
    kind = kind.strip().lower()
    if not sep:
        raise ValueError(f"malformed initial condition {text!r}")
    if kind == "uniform":
        return Uniform(value=parse_float(rest))
    if kind == "spike":
        value, at, where = rest.partition("@")
        if not at:
            raise ValueError(f"spike needs a position: spike:<value>@mid or @<index>, got {text!r}")
        where = where.strip().lower()
        index = None if where == "mid" else parse_int(where)
        return SpikeAtNode(spike_value=parse_float(value), node_index=index)
    if kind == "sine":
        mode, comma, amplitude = rest.partition(",")
        if not comma:
            raise ValueError(f"sine needs mode and amplitude: sine:<m>,<amplitude>, got {text!r}")
        return SineMode(mode=parse_int(mode), amplitude=parse_float(amplitude))
    raise ValueError(f"unknown initial condition kind {kind!r}")


# ============================================================================
# Document -> SolverConfig
# ============================================================================

def _describe(exc: Exception) -> str:
    if isinstance(exc, ValidationError):
        return "; ".join(error["msg"] for error in exc.errors())
    return str(exc)


def _value(document: ConfigDocument, key: str, parser: Callable[[str], T]) -> T:
    raw = document.raw(key)
    if raw is None:
        raise ConfigParseError(f"missing required key {key!r}", document.last_line)
    try:
        return parser(raw)
    except (ValueError, HeatRodError) as exc:
        raise ConfigParseError(f"{key}: {_describe(exc)}", document.source_of(key)) from exc


def _material(document: ConfigDocument) -> Material:
    if "material" in document.entries:
        return _value(document, "material", builtin_material)
    present = [key for key in MATERIAL_TRIPLE if key in document.entries]
    if not present:
        raise ConfigParseError(
            "missing material: set 'material' or material.k, material.rho and material.c",
            document.last_line,
        )
    missing = [key for key in MATERIAL_TRIPLE if key not in document.entries]
    if missing:
        raise ConfigParseError(
            f"incomplete material properties, missing {', '.join(missing)}",
            document.source_of(*present),
        )
    k, rho, c = (_value(document, key, parse_float) for key in MATERIAL_TRIPLE)
    try:
        return custom_material(k, rho, c)
    except HeatRodError as exc:
        key = f"material.{getattr(exc, 'field', 'k')}"
        raise ConfigParseError(str(exc), document.source_of(key, *MATERIAL_TRIPLE)) from exc


def build_config(document: ConfigDocument) -> SolverConfig:
    """
    Turn a document into a validated solver configuration.

    Raises:
        ConfigParseError: On malformed values or violated configuration invariants
    """
    material = _material(document)
    length = _value(document, "rod.length", parse_float)
    nodes = _value(document, "grid.nodes", parse_int)
    try:
        grid = Grid1D(length=length, node_count=nodes)
    except ValidationError as exc:
        field = exc.errors()[0]["loc"][0]
        key = "grid.nodes" if field == "node_count" else "rod.length"
        raise ConfigParseError(f"{key}: {_describe(exc)}", document.source_of(key)) from exc

    bc = BoundaryCondition(
        left=_value(document, "bc.left", parse_end_condition),
        right=_value(document, "bc.right", parse_end_condition),
    )
    ic = _value(document, "ic", parse_initial_condition)
    if isinstance(ic, SpikeAtNode) and ic.node_index is not None and ic.node_index >= nodes:
        raise ConfigParseError(
            f"ic: spike node {ic.node_index} outside [0, {nodes - 1}]",
            document.source_of("ic", "grid.nodes"),
        )

    if "time.dt" in document.entries:
        dt = _value(document, "time.dt", parse_float)
        if not dt > 0:
            raise ConfigParseError(
                f"time.dt: must be > 0, got {dt:g}", document.source_of("time.dt")
            )
    else:
        dt = TARGET_LAMBDA * (grid.dx * grid.dx) / material.diffusivity
        if not (math.isfinite(dt) and dt > 0):
            raise ConfigParseError(
                f"time.dt: no representable step gives lambda={TARGET_LAMBDA} on this rod "
                f"(derived {dt!r}); set time.dt or change rod.length",
                document.source_of("rod.length", "grid.nodes", "material", *MATERIAL_TRIPLE),
            )

    t_end = _value(document, "time.end", parse_float)
    if not t_end > dt:
        raise ConfigParseError(
            f"time.end ({t_end:g}) must exceed time.dt ({dt:g})",
            document.source_of("time.end", "time.dt"),
        )
    sample_every = _value(document, "time.sample_every", parse_int)
    if sample_every < 1:
        raise ConfigParseError(
            f"time.sample_every: must be >= 1, got {sample_every}",
            document.source_of("time.sample_every"),
        )
    steady_eps = _value(document, "steady.eps", parse_float)
    if not steady_eps > 0:
        raise ConfigParseError(
            f"steady.eps: must be > 0, got {steady_eps:g}", document.source_of("steady.eps")
        )

    try:
        return SolverConfig(
            grid=grid,
            material=material,
            bc=bc,
            ic=ic,
            dt=dt,
            t_end=t_end,
            sample_every=sample_every,
            steady_eps=steady_eps,
            stop_on_steady=_value(document, "steady.stop", parse_bool),
        )
    except ValidationError as exc:
        raise ConfigParseError(_describe(exc), document.source_of("time.dt", "time.end")) from exc


def parse_config(text: str) -> SolverConfig:
    """
    Parse configuration text into a solver configuration, applying defaults.

    Args:
        text: Configuration file contents

    Returns:
        Validated SolverConfig

    Raises:
        ConfigParseError: With the offending line number
    """
    return build_config(ConfigDocument.from_text(text))
