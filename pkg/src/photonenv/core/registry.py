"""Component registry for photonenv.

Optical element kinds register themselves here so the netlist parser can
resolve a line's leading keyword to the class that implements it.
"""

from typing import Any, Callable, Dict, List, Optional, Type, TypeVar
import logging

logger = logging.getLogger(__name__)

T = TypeVar('T')


class Registry:
    """Maps (component type, name) to a class plus its default parameters."""

    def __init__(self):
        self._components: Dict[str, Dict[str, Any]] = {}
        self._defaults: Dict[str, str] = {}

    def register(
        self,
        component_type: str,
        name: str,
        component_class: Type[T],
        config: Optional[Dict[str, Any]] = None,
        is_default: bool = False
    ) -> None:
        """Register a component.

        Args:
            component_type: Family of the component (e.g. 'element')
            name: Keyword the component is looked up by (e.g. 'hwp')
            component_class: Class implementing the component
            config: Default parameters, copied out by get_config
            is_default: Whether this name answers lookups without a name
        """
        entries = self._components.setdefault(component_type, {})
        if name in entries and entries[name]['class'] is not component_class:
            logger.debug(f"Replacing {component_type} '{name}'")

        entries[name] = {
            'class': component_class,
            'config': dict(config or {}),
            'name': name
        }

        if is_default:
            self._defaults[component_type] = name

        logger.debug(f"Registered {component_type}: {name}")

    def _resolve(self, component_type: str, name: Optional[str]) -> Dict[str, Any]:
        if component_type not in self._components:
            raise KeyError(f"Component type '{component_type}' not found in registry")

        if name is None:
            if component_type not in self._defaults:
                raise KeyError(f"No default component for type '{component_type}'")
            name = self._defaults[component_type]

        if name not in self._components[component_type]:
            raise KeyError(f"Component '{name}' not found for type '{component_type}'")

        return self._components[component_type][name]

    def get(self, component_type: str, name: Optional[str] = None) -> Type[Any]:
        """Return the class registered under (component_type, name).

        Raises:
            KeyError: If the type or the name is unknown
        """
        return self._resolve(component_type, name)['class']

    def get_config(self, component_type: str, name: Optional[str] = None) -> Dict[str, Any]:
        """Return a copy of the default parameters of a component."""
        return dict(self._resolve(component_type, name)['config'])

    def list_components(self, component_type: Optional[str] = None) -> List[str]:
        """List component types, or the names within one type."""
        if component_type is None:
            return list(self._components.keys())
        return list(self._components.get(component_type, {}).keys())


# Global registry instance
registry = Registry()


def register_component(
    component_type: str,
    name: str,
    config: Optional[Dict[str, Any]] = None,
    is_default: bool = False
) -> Callable[[Type[T]], Type[T]]:
    """Class decorator registering the class in the global registry."""
    def decorator(cls: Type[T]) -> Type[T]:
        registry.register(component_type, name, cls, config, is_default)
        return cls
    return decorator
