"""
Exception hierarchy for the heat-conduction solver.

Every error raised on purpose by the package derives from ``HeatRodError`` so the
command-line front end can map failures onto exit codes.
"""
from typing import Optional, Sequence, Union


class HeatRodError(Exception):
    """Base class for all solver errors."""


class DomainError(HeatRodError, ValueError):
    """A numeric argument lies outside its mathematical domain."""

    def __init__(self, field: str, value: object, requirement: str):
        """
        Initialize the domain error.

        Args:
            field: Name of the offending argument
            value: Rejected value
            requirement: Human-readable constraint that was violated
        """
        self.field = field
        self.value = value
        super().__init__(f"{field}={value!r} is invalid: {requirement}")


class ConfigurationError(HeatRodError, ValueError):
    """Inputs are individually valid but do not fit together."""


class MaterialLookupError(HeatRodError, LookupError):
    """Requested material is not part of the catalog."""

    def __init__(self, name: str, valid_keys: Sequence[str]):
        self.name = name
        self.valid_keys = tuple(valid_keys)
        super().__init__(
            f"Unknown material {name!r}; valid keys: {', '.join(self.valid_keys)}"
        )

    def __str__(self) -> str:
        # LookupError would otherwise repr() the message
        return self.args[0]


class UnsupportedQueryError(HeatRodError):
    """The query has no well-defined answer for the given boundary conditions."""


class ConfigParseError(ConfigurationError):
    """Configuration text or flags could not be turned into a solver config."""

    def __init__(self, message: str, line_number: Optional[Union[int, str]] = None):
        """
        Initialize the parse error.

        Args:
            message: Description of the problem
            line_number: 1-based line of the config file, or the flag name when the
                offending value came from the command line
        """
        self.line_number = line_number
        self.message = message
        if isinstance(line_number, int):
            prefix = f"line {line_number}: "
        elif line_number:
            prefix = f"{line_number}: "
        else:
            prefix = ""
        super().__init__(f"{prefix}{message}")


class OutputError(HeatRodError, OSError):
    """Writing an output file or directory failed."""

    def __init__(self, path: object, reason: str):
        self.path = path
        super().__init__(f"cannot write {path}: {reason}")

    def __str__(self) -> str:
        return self.args[0]
