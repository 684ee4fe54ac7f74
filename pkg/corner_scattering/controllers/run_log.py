# Copyright (c) 2024, Corner Scattering contributors
# For license information, please see LICENSE

import json
import logging
import threading
import traceback as tb
from dataclasses import asdict, dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, List, Optional

from corner_scattering.utils.serialization import dumps

logger = logging.getLogger(__name__)

STATUSES = ("Queued", "Success", "Error", "Failure")
LOG_FILE_NAME = "run_log.jsonl"

_STATUS_LEVEL = {
	"Queued": logging.INFO,
	"Success": logging.INFO,
	"Failure": logging.WARNING,
	"Error": logging.ERROR,
}


@dataclass
class RunLogEntry:
	module_def: str
	status: str = "Queued"
	method: Optional[str] = None
	message: Optional[str] = None
	request_data: Optional[str] = None
	response_data: Optional[str] = None
	traceback: Optional[str] = None
	title: Optional[str] = None
	created: Optional[str] = None

	def validate(self):
		if self.status not in STATUSES:
			raise ValueError(f"Invalid run log status: {self.status}")
		self._set_title()

	def _set_title(self):
		title = None
		if self.message and self.message != "None":
			title = self.message

		if not title and self.method:
			method = self.method.split(".")[-1]
			title = method

		if title:
			self.title = title if len(title) < 100 else title[:100] + "..."

	def as_dict(self):
		return asdict(self)


class RunLog:
	"""In-memory list of run records, appended to ``run_log.jsonl`` once a directory is attached."""

	def __init__(self):
		self.entries: List[RunLogEntry] = []
		self.path: Optional[Path] = None
		self._lock = threading.Lock()

	def begin(self):
		"""Start a new run; entries of earlier runs are dropped, the attached file is kept."""
		with self._lock:
			self.entries = []

	def attach(self, directory) -> Path:
		self.begin()
		directory = Path(directory)
		directory.mkdir(parents=True, exist_ok=True)
		self.path = directory / LOG_FILE_NAME
		self.path.write_text("")
		return self.path

	def detach(self):
		self.path = None

	def record(self, entry: RunLogEntry):
		with self._lock:
			if not any(e is entry for e in self.entries):
				self.entries.append(entry)
			if self.path is not None:
				with open(self.path, "a") as f:
					f.write(json.dumps(entry.as_dict(), sort_keys=True) + "\n")


_run_log = RunLog()


def get_run_log() -> RunLog:
	return _run_log


def create_log(
	module_def=None,
	status="Queued",
	response_data=None,
	request_data=None,
	exception=None,
	method=None,
	message=None,
	log: Optional[RunLogEntry] = None,
) -> RunLogEntry:
	"""Create a run record, or update ``log`` when continuing an earlier one."""
	if log is None:
		log = RunLogEntry(
			module_def=str(module_def), created=datetime.now(timezone.utc).isoformat()
		)

	if response_data is not None and not isinstance(response_data, str):
		response_data = dumps(response_data)

	if request_data is not None and not isinstance(request_data, str):
		request_data = dumps(request_data)

	log.message = message or _get_message(exception)
	log.method = log.method or method
	log.response_data = response_data or log.response_data
	log.request_data = request_data or log.request_data
	if exception is not None:
		log.traceback = log.traceback or "".join(
			tb.format_exception(type(exception), exception, exception.__traceback__)
		)
	log.status = status
	log.validate()

	_run_log.record(log)
	logger.log(_STATUS_LEVEL[status], "[%s] %s: %s", log.module_def, status, log.title or "-")

	return log


def _get_message(exception: Any) -> Optional[str]:
	if exception is None:
		return None
	if hasattr(exception, "message"):
		return str(exception.message)
	return str(exception) or type(exception).__name__
