"""
Small helpers shared by the CLI, the config loader and the scripts.
"""

import logging
import math
import sys

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def flt(value, default=0.0):
	"""
	Coerce a config/flag value to float.

	Empty strings and None fall back to ``default``; anything else that
	float() rejects is returned as-is so validation can report it.
	"""
	if value is None or value == "":
		return default
	if isinstance(value, bool):
		return float(value)
	try:
		return float(value)
	except (TypeError, ValueError):
		return value


def cint(value, default=0):
	"""Coerce to int, accepting integral floats such as 51.0."""
	if value is None or value == "":
		return default
	try:
		as_float = float(value)
	except (TypeError, ValueError):
		return value
	if not math.isfinite(as_float) or as_float != int(as_float):
		return value
	return int(as_float)


def cbool(value, default=False):
	if value is None or value == "":
		return default
	if isinstance(value, str):
		return value.strip().lower() in ("1", "true", "yes", "on")
	return bool(value)


def configure_logging(level="INFO", log_file=None):
	"""Set up stderr logging (plus an optional UTF-8 file) for CLI runs."""
	handlers = [logging.StreamHandler(sys.stderr)]
	if log_file:
		handlers.append(logging.FileHandler(log_file, encoding="utf-8"))

	logging.basicConfig(
		level=getattr(logging, str(level).upper(), logging.INFO),
		format=LOG_FORMAT,
		handlers=handlers,
		force=True,
	)


def log_error(message, title="usc-spectra"):
	"""Log an error under a title and return the formatted line."""
	line = f"{title}: {message}"
	logging.getLogger("usc_spectra").error(line)
	return line
