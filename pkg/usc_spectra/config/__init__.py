"""
Run defaults and the JSON config-file loader.

Resolution order for every setting: command-line flag, then the file given
with --config, then DEFAULTS.
"""

import json
import logging
import math

from usc_spectra.usc_spectra.exceptions import ConfigError

logger = logging.getLogger(__name__)

DEFAULTS = {
	"mode": "spectrum",
	"theta": 0.0,
	"omega_over_eq": 4.0,
	"lambda_min": 0.0,
	"lambda_max": 1.0,
	"steps": 51,
	"n_max": 3,
	"n_trunc": 16,
	"tol": 1e-8,
	"n_levels": 8,
	"n_max_cap": 256,
	"paper_constants": False,
	"scheme": "literal",
	"formats": ["csv", "json"],
	"output_dir": "./usc_output",
	"threads": None,
	"seed": 0,
	"x_min": -6.0,
	"x_max": 6.0,
	"x_steps": 241,
	"g_squared": None,
	"wells": ["minus", "zero"],
	"overlap_size": 3,
}


def load_config_file(path):
	"""Read a flat JSON object of settings; unknown keys are rejected."""
	try:
		with open(path, encoding="utf-8") as handle:
			data = json.load(handle)
	except OSError as e:
		raise ConfigError(f"Cannot read config file {path}: {e}") from e
	except json.JSONDecodeError as e:
		raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e

	if not isinstance(data, dict):
		raise ConfigError(f"Config file {path} must contain a JSON object")
	unknown = sorted(set(data) - set(DEFAULTS))
	if unknown:
		raise ConfigError(f"Unknown config keys in {path}: {', '.join(unknown)}")
	for key, value in data.items():
		if isinstance(value, float) and not math.isfinite(value):
			raise ConfigError(f"Config value {key} must be finite")
	logger.debug("Loaded %d settings from %s", len(data), path)
	return data


def resolve_settings(file_settings=None, flag_settings=None):
	"""Merge DEFAULTS, file values and flag values (None means not given)."""
	settings = dict(DEFAULTS)
	for layer in (file_settings or {}, flag_settings or {}):
		for key, value in layer.items():
			if value is not None:
				settings[key] = value
	return settings
