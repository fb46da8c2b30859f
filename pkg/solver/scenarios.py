"""
Named reproduction recipes for the classic rod experiments.

Each scenario is a set of config-grammar entries applied before the config file
and command-line flags. The "pinned-ends" recipe is the experiment usually
labelled as the Neumann case even though both ends are held at 0 degrees; the
truly insulated variant is "insulated".
"""
from typing import Dict, Tuple

from utils.errors import ConfigurationError

SCENARIOS: Dict[str, Dict[str, str]] = {
    "pinned-ends": {
        "bc.left": "dirichlet:0",
        "bc.right": "dirichlet:0",
        "ic": "spike:50@mid",
    },
    "hot-end": {
        "bc.left": "dirichlet:0",
        "bc.right": "dirichlet:50",
        "ic": "spike:50@mid",
    },
    "insulated": {
        "bc.left": "neumann:0",
        "bc.right": "neumann:0",
        "ic": "spike:50@mid",
    },
}


def scenario_names() -> Tuple[str, ...]:
    return tuple(SCENARIOS)


def scenario_entries(name: str) -> Dict[str, str]:
    """
    Config entries of a named scenario.

    Raises:
        ConfigurationError: If the scenario is unknown
    """
    try:
        return dict(SCENARIOS[name.strip().lower()])
    except KeyError:
        raise ConfigurationError(
            f"Unknown scenario {name!r}; valid scenarios: {', '.join(scenario_names())}"
        ) from None
