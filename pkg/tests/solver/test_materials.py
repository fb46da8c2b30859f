"""
Material catalog and diffusivity tests.
"""
import allure
import pytest

from solver.materials import (
    builtin_material,
    catalog_keys,
    custom_material,
    thermal_diffusivity,
)
from utils.errors import DomainError, MaterialLookupError


@pytest.mark.smoke
@allure.feature("Materials")
@allure.story("Catalog Lookup")
class TestCatalog:
    """Tests for the built-in material catalog."""

    def test_catalog_keys(self):
        """Test the catalog holds the three reference rods in order."""
        assert catalog_keys() == ("aluminium", "copper", "mild-steel")

    @pytest.mark.parametrize("name,alpha", [
        ("aluminium", 0.9581320450885666),
        ("copper", 1.216992781155015),
        ("mild-steel", 0.01598601223929062),
    ])
    def test_catalog_diffusivity(self, name: str, alpha: float):
        """Test catalog diffusivities follow k/(rho*c)."""
        assert builtin_material(name).diffusivity == pytest.approx(alpha, rel=1e-12)

    def test_lookup_is_case_insensitive(self):
        """Test names are matched regardless of case and surrounding blanks."""
        assert builtin_material("  Copper ") == builtin_material("copper")

    def test_diffusivity_ordering(self, copper, aluminium, mild_steel):
        """Test copper diffuses fastest and mild steel slowest."""
        assert copper.diffusivity > aluminium.diffusivity > mild_steel.diffusivity

    def test_unknown_material_names_valid_keys(self):
        """Test an unknown name lists every catalog key."""
        with pytest.raises(MaterialLookupError) as exc_info:
            builtin_material("unknownium")
        message = str(exc_info.value)
        assert "unknownium" in message
        for key in catalog_keys():
            assert key in message


@pytest.mark.regression
@allure.feature("Materials")
@allure.story("Diffusivity")
class TestDiffusivity:
    """Tests for diffusivity arithmetic and custom materials."""

    def test_unit_properties(self):
        """Test k = rho = c = 1 gives diffusivity 1."""
        assert thermal_diffusivity(1.0, 1.0, 1.0) == 1.0

    @pytest.mark.parametrize("k,rho,c,field", [
        (0.0, 1.0, 1.0, "k"),
        (1.0, -2.0, 1.0, "rho"),
        (1.0, 1.0, float("inf"), "c"),
        (float("nan"), 1.0, 1.0, "k"),
    ])
    def test_invalid_properties(self, k: float, rho: float, c: float, field: str):
        """Test non-positive or non-finite properties name the offending field."""
        with pytest.raises(DomainError) as exc_info:
            thermal_diffusivity(k, rho, c)
        assert exc_info.value.field == field

    @pytest.mark.parametrize("k,rho,c", [
        (1.0, 1e-200, 1e-200),
        (1e-300, 1e200, 1e200),
        (1e300, 1e-100, 1e-100),
    ])
    def test_quotient_out_of_range(self, k: float, rho: float, c: float):
        """Test finite properties whose diffusivity overflows or underflows are rejected."""
        with pytest.raises(DomainError) as exc_info:
            thermal_diffusivity(k, rho, c)
        assert exc_info.value.field == "diffusivity"

    def test_custom_material(self):
        """Test a custom material keeps its properties and name."""
        material = custom_material(2.0, 4.0, 0.5, name="sample-rod")
        assert material.name == "sample-rod"
        assert material.diffusivity == 1.0

    def test_custom_material_rejects_bad_input(self):
        """Test custom materials validate like the diffusivity helper."""
        with pytest.raises(DomainError):
            custom_material(1.0, 0.0, 1.0)
