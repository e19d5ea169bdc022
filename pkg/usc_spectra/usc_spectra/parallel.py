"""
Order-preserving map over independent grid points.

One worker runs the builtin map in-process; more workers use a pathos
ProcessPool, whose map returns results in input order.
"""

import logging
import os

from pathos.pools import ProcessPool

logger = logging.getLogger(__name__)


def default_workers():
	return os.cpu_count() or 1


def parallel_map(func, items, workers=1):
	items = list(items)
	if workers is None:
		workers = default_workers()
	workers = max(1, min(int(workers), len(items) or 1))
	if workers == 1:
		return list(map(func, items))

	logger.debug("Dispatching %d grid points to %d workers", len(items), workers)
	pool = ProcessPool(nodes=workers)
	try:
		return list(pool.map(func, items))
	finally:
		pool.close()
		pool.join()
		pool.clear()
