class LabError(Exception):
	def __init__(self, *args, **kwargs) -> None:
		self.error = kwargs.get("error", "-")
		self.error_description = kwargs.get("error_description", "-")
		super().__init__(*args)


class DomainError(LabError, ValueError):
	"""Argument outside the domain of an operation."""


class SingularityError(DomainError):
	pass


class DegenerateInputError(LabError, ValueError):
	pass


class DimensionError(LabError, ValueError):
	"""Not enough basis functions for the requested constraints."""


class ResourceError(LabError):
	pass


class GeometryError(LabError, ValueError):
	pass


class InvariantViolation(LabError):
	pass


class PreconditionError(LabError, ValueError):
	pass


class NotAnEigenvalueError(PreconditionError):
	pass


class OrderNotFoundError(LabError):
	"""All Taylor orders up to the cap are below tolerance."""


class ConfigurationError(LabError):
	pass


class SchemaError(ConfigurationError):
	def __init__(self, path: str, message: str, **kwargs) -> None:
		self.path = path
		super().__init__(f"{path}: {message}", **kwargs)


class DegenerateMediumWarning(UserWarning):
	"""Contrast-free medium, every wavenumber solves the transmission problem."""
