"""
Pytest configuration and fixtures for the heat-conduction solver.

Provides reusable fixtures for materials, grids, boundary conditions, solver
configurations and seeded test data.
"""
from typing import Callable, Generator

import allure
import pytest
from _pytest.nodes import Item
from _pytest.runner import CallInfo

from models.schemas import (
    BoundaryCondition,
    Grid1D,
    InitialCondition,
    Material,
    SolverConfig,
    SpikeAtNode,
    TemperatureField,
)
from solver.ftcs import apply_initial_condition
from solver.materials import builtin_material, custom_material
from utils.logger import logger
from utils.test_data import TestDataGenerator


# ============================================================================
# Material fixtures
# ============================================================================

@pytest.fixture
def aluminium() -> Material:
    """Catalog aluminium."""
    return builtin_material("aluminium")


@pytest.fixture
def copper() -> Material:
    """Catalog copper."""
    return builtin_material("copper")


@pytest.fixture
def mild_steel() -> Material:
    """Catalog mild steel."""
    return builtin_material("mild-steel")


@pytest.fixture
def unit_material() -> Material:
    """
    Material with diffusivity 1.

    Returns:
        Material with k = rho = c = 1
    """
    return custom_material(1.0, 1.0, 1.0, name="unit")


# ============================================================================
# Grid and boundary fixtures
# ============================================================================

@pytest.fixture
def rod_grid() -> Grid1D:
    """Reference rod: 100 long, 101 nodes, dx = 1."""
    return Grid1D(length=100.0, node_count=101)


@pytest.fixture
def desk_grid() -> Grid1D:
    """Short rod for quick runs: 10 long, 21 nodes, dx = 0.5."""
    return Grid1D(length=10.0, node_count=21)


@pytest.fixture
def cold_ends() -> BoundaryCondition:
    """Both ends held at 0."""
    return BoundaryCondition.dirichlet(0.0, 0.0)


@pytest.fixture
def hot_right_end() -> BoundaryCondition:
    """Left end at 0, right end at 50."""
    return BoundaryCondition.dirichlet(0.0, 50.0)


@pytest.fixture
def insulated_ends() -> BoundaryCondition:
    """Zero-flux ends."""
    return BoundaryCondition.insulated()


@pytest.fixture
def spike_field(desk_grid: Grid1D) -> TemperatureField:
    """
    Spike of 50 at the mid node of the desk grid.

    Args:
        desk_grid: Grid the field lives on

    Returns:
        Field at t = 0
    """
    return apply_initial_condition(SpikeAtNode(spike_value=50.0), desk_grid)


# ============================================================================
# Configuration factory
# ============================================================================

@pytest.fixture
def make_config(
    desk_grid: Grid1D, aluminium: Material, cold_ends: BoundaryCondition
) -> Callable[..., SolverConfig]:
    """
    Provide a factory for solver configurations.

    Unspecified arguments default to aluminium on the desk grid with cold ends,
    a mid spike of 50 and lambda = 0.4.

    Returns:
        Function building a SolverConfig from keyword overrides
    """
    def _make_config(**overrides) -> SolverConfig:
        grid: Grid1D = overrides.pop("grid", desk_grid)
        material: Material = overrides.pop("material", aluminium)
        lam = overrides.pop("lam", 0.4)
        ic: InitialCondition = overrides.pop("ic", SpikeAtNode(spike_value=50.0))
        values = {
            "grid": grid,
            "material": material,
            "bc": cold_ends,
            "ic": ic,
            "dt": lam * grid.dx ** 2 / material.diffusivity,
            "t_end": 10.0,
        }
        values.update(overrides)
        return SolverConfig(**values)

    return _make_config


# ============================================================================
# Test data fixtures
# ============================================================================

@pytest.fixture
def test_data() -> TestDataGenerator:
    """
    Provide a freshly seeded data generator so every test sees the same stream.

    Returns:
        TestDataGenerator instance
    """
    return TestDataGenerator()


@pytest.fixture
def output_dir(tmp_path) -> Generator:
    """
    Provide a scratch directory for written files.

    Yields:
        Path of an empty directory
    """
    directory = tmp_path / "out"
    directory.mkdir()
    yield directory


# ============================================================================
# Pytest hooks for logging and reporting
# ============================================================================

@pytest.hookimpl(tryfirst=True, hookwrapper=True)
def pytest_runtest_makereport(item: Item, call: CallInfo) -> Generator:
    """
    Hook to capture test results and attach to Allure report.

    Args:
        item: Test item
        call: Test call info
    """
    outcome = yield
    report = outcome.get_result()

    if report.when == "call":
        test_name = item.nodeid
        if report.passed:
            logger.log_test_end(test_name, "PASSED")
        elif report.failed:
            logger.log_test_end(test_name, "FAILED")

            if hasattr(report, "longreprtext"):
                allure.attach(
                    report.longreprtext,
                    name="Failure Details",
                    attachment_type=allure.attachment_type.TEXT
                )


def pytest_runtest_setup(item: Item) -> None:
    """
    Hook called before each test.

    Args:
        item: Test item
    """
    logger.log_test_start(item.nodeid)

    if hasattr(item, "obj") and getattr(item.obj, "__doc__", None):
        allure.dynamic.description(item.obj.__doc__)


def pytest_collection_modifyitems(items: list) -> None:
    """
    Add markers based on the test path.

    Args:
        items: List of collected test items
    """
    for item in items:
        for layer in ("solver", "oracle", "fileio", "cli", "acceptance", "negative"):
            if f"tests/{layer}/" in item.nodeid:
                item.add_marker(getattr(pytest.mark, layer))

        if "smoke" in [mark.name for mark in item.iter_markers()]:
            allure.dynamic.tag("smoke")
            allure.dynamic.severity(allure.severity_level.CRITICAL)
