from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from corner_scattering.exceptions import ConfigurationError, GeometryError, SchemaError
from corner_scattering.geometry.constants import CONTRAST_PROBE_H, DOMAIN_OF_INTEREST_RADIUS
from corner_scattering.geometry.domain import DiskDomain, Domain, PolygonDomain, as_points
from corner_scattering.utils import get_attr, get_hooks


@dataclass(frozen=True, eq=False)
class Contrast:
	"""The function phi in V = chi_Omega * phi: a constant or a registered expression."""

	kind: str = "constant"
	value: complex = 1.0
	name: Optional[str] = None
	params: Dict[str, Any] = field(default_factory=dict)

	def __post_init__(self):
		if self.kind == "constant":
			value = complex(self.value)
			if not np.isfinite(value):
				raise ConfigurationError("Constant contrast must be finite")
			object.__setattr__(self, "value", value)
			object.__setattr__(self, "_func", None)
		elif self.kind == "expression":
			registry = get_hooks("contrast_expressions")
			if self.name not in registry:
				raise ConfigurationError(
					f"Unknown contrast expression {self.name!r}, expected one of {sorted(registry)}"
				)
			object.__setattr__(self, "_func", get_attr(registry[self.name]))
		else:
			raise ConfigurationError(f"Unknown contrast kind {self.kind!r}")

	@classmethod
	def constant(cls, value: complex) -> "Contrast":
		return cls(kind="constant", value=value)

	@classmethod
	def expression(cls, name: str, **params) -> "Contrast":
		return cls(kind="expression", name=name, params=params)

	@property
	def is_constant(self) -> bool:
		return self.kind == "constant"

	def __call__(self, points) -> np.ndarray:
		pts = as_points(points)
		if self.is_constant:
			return np.full(len(pts), self.value, dtype=complex)
		return np.asarray(self._func(pts, **self.params), dtype=complex)

	def as_dict(self) -> Dict[str, Any]:
		if self.is_constant:
			value = self.value.real if self.value.imag == 0 else [self.value.real, self.value.imag]
			return {"kind": "constant", "value": value}
		return {"kind": "expression", "name": self.name, "params": dict(self.params)}


@dataclass(frozen=True, eq=False)
class PotentialSpec:
	domain: Domain
	contrast: Contrast
	hoelder_alpha: float = 1.0

	@property
	def constant_value(self) -> Optional[complex]:
		return self.contrast.value if self.contrast.is_constant else None

	@property
	def is_zero(self) -> bool:
		return self.contrast.is_constant and self.contrast.value == 0

	def contrast_at(self, points) -> np.ndarray:
		return self.contrast(points)

	def potential(self, points) -> np.ndarray:
		"""V = chi_Omega * phi, zero outside the closed domain."""
		pts = as_points(points)
		return np.where(self.domain.contains(pts), self.contrast(pts), 0.0)

	def with_contrast(self, contrast: Contrast) -> "PotentialSpec":
		return PotentialSpec(self.domain, contrast, self.hoelder_alpha)

	def as_dict(self) -> Dict[str, Any]:
		return {
			"domain": self.domain.as_dict(),
			"contrast": self.contrast.as_dict(),
			"hoelder_alpha": self.hoelder_alpha,
		}


@dataclass
class AdmissibilityCondition:
	index: int
	name: str
	passed: bool
	detail: str = ""


@dataclass
class AdmissibilityReport:
	conditions: List[AdmissibilityCondition]
	witnesses: List[int]

	@property
	def admissible(self) -> bool:
		return all(c.passed for c in self.conditions)

	def failed(self) -> List[AdmissibilityCondition]:
		return [c for c in self.conditions if not c.passed]

	def as_dict(self) -> Dict[str, Any]:
		return {
			"admissible": self.admissible,
			"witnesses": list(self.witnesses),
			"conditions": [
				{"index": c.index, "name": c.name, "passed": c.passed, "detail": c.detail}
				for c in self.conditions
			],
		}


def _probe_points(domain: Domain) -> np.ndarray:
	if isinstance(domain, DiskDomain):
		lo = domain.center_point - domain.radius
		hi = domain.center_point + domain.radius
	else:
		lo, hi = domain.points.min(axis=0), domain.points.max(axis=0)
	n = max(2, int(np.ceil(np.max(hi - lo) / (CONTRAST_PROBE_H * domain.diameter))) + 1)
	xs, ys = np.meshgrid(np.linspace(lo[0], hi[0], n), np.linspace(lo[1], hi[1], n))
	grid = np.stack([xs.ravel(), ys.ravel()], axis=1)
	grid = grid[domain.contains(grid)]
	if isinstance(domain, PolygonDomain):
		grid = np.vstack([grid, domain.points])
	return grid


def check_admissibility(
	spec: PotentialSpec, radius: float = DOMAIN_OF_INTEREST_RADIUS, dimension: int = 2
) -> AdmissibilityReport:
	"""Evaluate the four admissibility conditions for V = chi_Omega * phi."""
	conditions = []
	domain = spec.domain

	values = spec.contrast(_probe_points(domain))
	bounded = bool(np.all(np.isfinite(values)))
	sup = float(np.max(np.abs(values))) if len(values) else 0.0
	conditions.append(
		AdmissibilityCondition(
			1, "V = chi_Omega * phi with phi bounded", bounded, f"sampled sup |phi| = {sup:.6g}"
		)
	)

	if isinstance(domain, PolygonDomain):
		try:
			domain.validate(radius)
			conditions.append(AdmissibilityCondition(2, "open convex polygon in B_R", True))
		except GeometryError as e:
			conditions.append(AdmissibilityCondition(2, "open convex polygon in B_R", False, str(e)))
	else:
		conditions.append(
			AdmissibilityCondition(2, "open convex polygon in B_R", False, "domain has no corners")
		)

	threshold = 0.0 if dimension == 2 else 0.25
	conditions.append(
		AdmissibilityCondition(
			3,
			"Hoelder continuity of phi",
			spec.hoelder_alpha > threshold,
			f"alpha = {spec.hoelder_alpha}, required > {threshold}",
		)
	)

	witnesses = []
	if isinstance(domain, PolygonDomain):
		at_vertices = spec.contrast(domain.points)
		floor = 1e-12 * max(1.0, sup)
		witnesses = [int(i) for i in np.flatnonzero(np.abs(at_vertices) > floor)]
	conditions.append(
		AdmissibilityCondition(
			4,
			"phi nonzero at some vertex",
			bool(witnesses),
			f"witness vertices {witnesses}" if witnesses else "phi vanishes at every vertex",
		)
	)
	return AdmissibilityReport(conditions, witnesses)


def _point(value, path) -> tuple:
	if (
		not isinstance(value, (list, tuple))
		or len(value) != 2
		or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
	):
		raise SchemaError(path, "expected [x, y] pair of numbers")
	return float(value[0]), float(value[1])


def _number(value, path, positive=False) -> float:
	if not isinstance(value, (int, float)) or isinstance(value, bool):
		raise SchemaError(path, "expected a number")
	if positive and value <= 0:
		raise SchemaError(path, "expected a positive number")
	return float(value)


def load_domain(document: Any, path: str = "domain") -> Domain:
	if not isinstance(document, dict):
		raise SchemaError(path, "expected an object")
	kind = document.get("kind", "polygon")
	if kind == "polygon":
		vertices = document.get("vertices")
		if not isinstance(vertices, list):
			raise SchemaError(f"{path}.vertices", "expected a list of [x, y] pairs")
		points = [_point(v, f"{path}.vertices[{i}]") for i, v in enumerate(vertices)]
		try:
			return PolygonDomain(tuple(points))
		except GeometryError as e:
			raise SchemaError(f"{path}.vertices", str(e)) from e
	if kind == "disk":
		center = _point(document.get("center", [0.0, 0.0]), f"{path}.center")
		radius = _number(document.get("radius"), f"{path}.radius", positive=True)
		return DiskDomain(center, radius)
	raise SchemaError(f"{path}.kind", f"unknown domain kind {kind!r}")


def load_contrast(document: Any, path: str = "contrast") -> Contrast:
	if isinstance(document, (int, float)) and not isinstance(document, bool):
		return Contrast.constant(document)
	if not isinstance(document, dict):
		raise SchemaError(path, "expected an object or a number")
	kind = document.get("kind")
	if kind == "constant":
		value = document.get("value")
		if isinstance(value, list):
			re, im = _point(value, f"{path}.value")
			return Contrast.constant(complex(re, im))
		return Contrast.constant(_number(value, f"{path}.value"))
	if kind == "expression":
		params = document.get("params", {})
		if not isinstance(params, dict):
			raise SchemaError(f"{path}.params", "expected an object")
		try:
			return Contrast.expression(document.get("name"), **params)
		except ConfigurationError as e:
			raise SchemaError(f"{path}.name", str(e)) from e
	raise SchemaError(f"{path}.kind", f"expected 'constant' or 'expression', got {kind!r}")


def load_potential_spec(document: Any, path: str = "potential") -> PotentialSpec:
	if not isinstance(document, dict):
		raise SchemaError(path, "expected an object")
	if "domain" not in document:
		raise SchemaError(f"{path}.domain", "missing")
	domain = load_domain(document["domain"], f"{path}.domain")
	contrast = load_contrast(document.get("contrast", 1.0), f"{path}.contrast")
	alpha = _number(document.get("hoelder_alpha", 1.0), f"{path}.hoelder_alpha")
	return PotentialSpec(domain, contrast, alpha)
