"""CSV and JSON output shared by every module.

Floats are written with 17 significant digits so doubles survive a round trip, which also makes
repeated runs byte-identical.
"""

import csv
import json
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Tuple, Union

import numpy as np

FLOAT_FORMAT = "%.16e"


def format_value(value: Any) -> str:
	if isinstance(value, (bool, np.bool_)):
		return "PASS" if value else "FAIL"
	if isinstance(value, (int, np.integer)):
		return str(int(value))
	if isinstance(value, (float, np.floating)):
		return FLOAT_FORMAT % float(value)
	return str(value)


def complex_pairs(values: Union[Sequence[complex], np.ndarray]) -> List[List[float]]:
	arr = np.asarray(values, dtype=complex).ravel()
	return [[float(v.real), float(v.imag)] for v in arr]


def complex_columns(*values: complex) -> Tuple[float, ...]:
	"""Real and imaginary parts of each value, flattened for CSV rows."""
	return tuple(part for v in values for part in (float(complex(v).real), float(complex(v).imag)))


def pairs_to_complex(pairs: Iterable[Sequence[float]]) -> np.ndarray:
	return np.array([complex(re, im) for re, im in pairs], dtype=complex)


def _json_default(obj: Any) -> Any:
	if isinstance(obj, (np.bool_,)):
		return bool(obj)
	if isinstance(obj, np.integer):
		return int(obj)
	if isinstance(obj, np.floating):
		return float(obj)
	if isinstance(obj, (complex, np.complexfloating)):
		return [float(obj.real), float(obj.imag)]
	if isinstance(obj, np.ndarray):
		if np.iscomplexobj(obj):
			return complex_pairs(obj)
		return obj.tolist()
	if isinstance(obj, Path):
		return str(obj)
	if hasattr(obj, "as_dict"):
		return obj.as_dict()
	raise TypeError(f"Object of type {type(obj).__name__} is not JSON serializable")


def dumps(data: Any) -> str:
	return json.dumps(data, sort_keys=True, indent=4, default=_json_default)


def write_json(path: Union[str, Path], data: Any) -> Path:
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	path.write_text(dumps(data) + "\n")
	return path


def write_csv(
	path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]
) -> Path:
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	with open(path, "w", newline="") as f:
		writer = csv.writer(f, lineterminator="\n")
		writer.writerow(header)
		for row in rows:
			if len(row) != len(header):
				raise ValueError(f"Row has {len(row)} columns, header has {len(header)}")
			writer.writerow([format_value(v) for v in row])
	return path
