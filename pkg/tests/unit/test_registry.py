"""Unit tests for the registry system."""

import pytest
from unittest.mock import Mock

from photonenv.core.registry import Registry, register_component, registry
from photonenv.channel import MULTIMODE_VACUUM, EnvironmentModel, environment_for
from photonenv.photonics import elements


class TestRegistry:
    """Test cases for the Registry class."""

    def test_init(self):
        """Test registry initialization."""
        reg = Registry()

        assert reg._components == {}
        assert reg._defaults == {}

    def test_register_component(self):
        """Test component registration."""
        reg = Registry()
        mock_component = Mock()

        reg.register(
            component_type="element",
            name="widget",
            component_class=mock_component,
            config={"phi": 0.0},
            is_default=True
        )

        assert "element" in reg._components
        assert reg._components["element"]["widget"]["class"] == mock_component
        assert reg._components["element"]["widget"]["config"] == {"phi": 0.0}
        assert reg._defaults["element"] == "widget"

    def test_register_multiple_components(self):
        """Test registering multiple components of the same type."""
        reg = Registry()

        reg.register("element", "a", Mock())
        reg.register("element", "b", Mock())

        assert set(reg.list_components("element")) == {"a", "b"}

    def test_get_component(self):
        """Test getting a component by name and by default."""
        reg = Registry()
        mock_component = Mock()
        reg.register("element", "widget", mock_component, is_default=True)

        assert reg.get("element", "widget") is mock_component
        assert reg.get("element") is mock_component

    def test_get_nonexistent_component_type(self):
        """Test getting from nonexistent component type."""
        reg = Registry()

        with pytest.raises(KeyError, match="Component type 'nonexistent' not found"):
            reg.get("nonexistent", "component")

    def test_get_nonexistent_component(self):
        """Test getting nonexistent component."""
        reg = Registry()
        reg.register("element", "existing", Mock())

        with pytest.raises(KeyError, match="Component 'nonexistent' not found"):
            reg.get("element", "nonexistent")

    def test_get_without_default(self):
        """Test getting component when no default is set."""
        reg = Registry()
        reg.register("element", "widget", Mock())

        with pytest.raises(KeyError, match="No default component"):
            reg.get("element")

    def test_get_config_is_a_copy(self):
        """Mutating a returned config leaves the registered defaults alone."""
        reg = Registry()
        reg.register("element", "hwp", Mock(), config={"ref": "H"})

        config = reg.get_config("element", "hwp")
        config["theta"] = 10.0

        assert reg.get_config("element", "hwp") == {"ref": "H"}


class TestRegisterComponentDecorator:
    """Test the register_component decorator."""

    def test_register_component_decorator(self):
        """Test the decorator against the global registry."""
        @register_component("test_type", "decorated_component", {"param": "value"}, True)
        class TestComponent:
            pass

        assert registry.get("test_type") is TestComponent
        assert registry.get_config("test_type", "decorated_component") == {"param": "value"}

        # Clean up
        del registry._components["test_type"]
        del registry._defaults["test_type"]

    def test_register_component_decorator_no_config(self):
        """Test decorator without config."""
        @register_component("test_type", "no_config_component")
        class TestComponent:
            pass

        assert registry.get_config("test_type", "no_config_component") == {}
        with pytest.raises(KeyError, match="No default component"):
            registry.get("test_type")

        # Clean up
        del registry._components["test_type"]


class TestBuiltinRegistrations:
    """Element kinds and environment models registered on import."""

    def test_all_element_kinds_registered(self):
        kinds = set(registry.list_components("element"))

        assert kinds == {"source", "detector", "mask", "mirror", "hwp", "dove", "gp", "cnot", "pbs", "bs", "mzim"}

    def test_element_kind_matches_class(self):
        for name in registry.list_components("element"):
            assert registry.get("element", name).kind == name

    def test_element_defaults(self):
        assert registry.get("element", "hwp") is elements.HalfWavePlate
        assert registry.get_config("element", "hwp") == {"ref": "H"}
        assert registry.get_config("element", "gp") == {"phi": 0.0}

    def test_environment_models(self):
        assert registry.get("environment") is EnvironmentModel
        assert environment_for() == MULTIMODE_VACUUM
        assert environment_for(None).parameter == "gammaT"
        assert environment_for("gt").is_cavity
        assert not environment_for("gammaT").is_cavity

    def test_unknown_environment(self):
        with pytest.raises(ValueError, match="unknown time parameter"):
            environment_for("omega")
