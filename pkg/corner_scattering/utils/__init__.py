import importlib
from typing import Any, Dict


def get_hooks(hook: str) -> Dict[str, str]:
	"""Registry declared in corner_scattering/hooks.py, e.g. ``get_hooks("experiments")``."""
	from corner_scattering import hooks

	registry = getattr(hooks, hook, None)
	if registry is None:
		raise KeyError(f"Unknown hook: {hook}")
	return dict(registry)


def get_attr(method_string: str) -> Any:
	"""Resolve a dotted path such as ``package.module.attribute``."""
	module_name, _, attr = method_string.rpartition(".")
	if not module_name:
		raise ImportError(f"Not a dotted path: {method_string}")
	module = importlib.import_module(module_name)
	return getattr(module, attr)
