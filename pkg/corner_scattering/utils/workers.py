from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def ordered_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = 1) -> List[R]:
	"""Apply ``func`` to every item, concurrently when ``workers > 1``.

	Results come back in input order regardless of completion order.
	"""
	items = list(items)
	if not workers or workers <= 1 or len(items) <= 1:
		return [func(item) for item in items]

	with ThreadPoolExecutor(max_workers=workers) as executor:
		return list(executor.map(func, items))
