# Copyright (c) 2026, usc-spectra contributors
# For license information, please see license.txt

import math
from dataclasses import dataclass, field

import numpy as np

from usc_spectra.usc_spectra.exceptions import ConfigError, ParameterDomainError
from usc_spectra.usc_spectra.exact_diag import COMPARE_SCHEMES, TruncationConfig
from usc_spectra.usc_spectra.model import WellLabel, operating_point, params_from_g
from usc_spectra.utils import cbool, cint, flt

MODES = ("spectrum", "compare", "potentials", "stability", "overlaps", "exact")
FORMATS = ("csv", "json", "svg")
SPECTRUM_SCHEMES = ("literal", "dressed")
MAX_SWEEP_N = 64
MAX_OVERLAP_SIZE = 513


@dataclass
class RunConfig:
	mode: str = "spectrum"
	theta: float = 0.0
	omega_over_eq: float = 4.0
	lambda_min: float = 0.0
	lambda_max: float = 1.0
	steps: int = 51
	n_max: int = 3
	n_trunc: int = 16
	tol: float = 1e-8
	n_levels: int = 8
	n_max_cap: int = 256
	paper_constants: bool = False
	scheme: str = "literal"
	formats: list = field(default_factory=lambda: ["csv", "json"])
	output_dir: str = "./usc_output"
	threads: int | None = None
	seed: int = 0
	x_min: float = -6.0
	x_max: float = 6.0
	x_steps: int = 241
	g_squared: float | None = None
	wells: list = field(default_factory=lambda: ["minus", "zero"])
	overlap_size: int = 3

	@classmethod
	def from_settings(cls, settings):
		"""Coerce a merged settings dict (see usc_spectra.config) and validate it."""
		g_squared = settings.get("g_squared")
		threads = settings.get("threads")
		cfg = cls(
			mode=str(settings.get("mode", "spectrum")).strip().lower(),
			theta=flt(settings.get("theta")),
			omega_over_eq=flt(settings.get("omega_over_eq"), 4.0),
			lambda_min=flt(settings.get("lambda_min")),
			lambda_max=flt(settings.get("lambda_max"), 1.0),
			steps=cint(settings.get("steps"), 51),
			n_max=cint(settings.get("n_max"), 3),
			n_trunc=cint(settings.get("n_trunc"), 16),
			tol=flt(settings.get("tol"), 1e-8),
			n_levels=cint(settings.get("n_levels"), 8),
			n_max_cap=cint(settings.get("n_max_cap"), 256),
			paper_constants=cbool(settings.get("paper_constants")),
			scheme=str(settings.get("scheme", "literal")).strip().lower(),
			formats=_split(settings.get("formats", ["csv", "json"])),
			output_dir=str(settings.get("output_dir", "./usc_output")),
			threads=None if threads in (None, "") else cint(threads),
			seed=cint(settings.get("seed")),
			x_min=flt(settings.get("x_min"), -6.0),
			x_max=flt(settings.get("x_max"), 6.0),
			x_steps=cint(settings.get("x_steps"), 241),
			g_squared=None if g_squared in (None, "") else flt(g_squared),
			wells=_split(settings.get("wells", ["minus", "zero"])),
			overlap_size=cint(settings.get("overlap_size"), 3),
		)
		cfg.validate()
		return cfg

	def validate(self):
		self.validate_mode()
		self.validate_theta()
		self.validate_lambda_grid()
		self.validate_truncation()
		self.validate_formats()
		self.validate_hf_settings()

	def validate_mode(self):
		if self.mode not in MODES:
			raise ConfigError(f"Unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
		allowed = COMPARE_SCHEMES if self.mode == "compare" else SPECTRUM_SCHEMES
		if self.scheme not in allowed:
			raise ConfigError(f"Scheme {self.scheme!r} is not available in {self.mode} mode")
		if self.threads is not None and (not _is_int(self.threads) or self.threads < 1):
			raise ConfigError(f"threads must be a positive integer, got {self.threads!r}")
		if not _is_int(self.seed):
			raise ConfigError(f"seed must be an integer, got {self.seed!r}")

	def validate_theta(self):
		if not _is_real(self.theta) or not 0.0 <= self.theta < math.pi / 2:
			raise ConfigError(f"theta must lie in [0, pi/2), got {self.theta!r}")
		if not _is_real(self.omega_over_eq) or self.omega_over_eq <= 0:
			raise ConfigError(f"omega_over_eq must be > 0, got {self.omega_over_eq!r}")

	def validate_lambda_grid(self):
		if not (_is_real(self.lambda_min) and _is_real(self.lambda_max)):
			raise ConfigError("lambda_min and lambda_max must be finite numbers")
		if self.lambda_min < 0:
			raise ConfigError(f"lambda_min must be >= 0, got {self.lambda_min}")
		if self.lambda_min > self.lambda_max:
			raise ConfigError("lambda_min must not exceed lambda_max")
		if not _is_int(self.steps) or self.steps < 1:
			raise ConfigError(f"steps must be a positive integer, got {self.steps!r}")
		if self.steps > 1 and self.lambda_min == self.lambda_max:
			raise ConfigError("lambda_min must be below lambda_max when steps > 1")
		if not _is_int(self.n_max) or not 0 <= self.n_max <= MAX_SWEEP_N:
			raise ConfigError(f"n_max must be an integer in [0, {MAX_SWEEP_N}], got {self.n_max!r}")

	def validate_truncation(self):
		if not all(_is_int(value) for value in (self.n_trunc, self.n_levels, self.n_max_cap)):
			raise ConfigError("n_trunc, n_levels and n_max_cap must be integers")
		if not _is_real(self.tol):
			raise ConfigError(f"tol must be a finite number, got {self.tol!r}")
		try:
			self.truncation()
		except ParameterDomainError as e:
			raise ConfigError(f"Invalid truncation settings: {e}") from e

	def validate_formats(self):
		if not self.formats:
			raise ConfigError("At least one output format is required")
		unknown = [fmt for fmt in self.formats if fmt not in FORMATS]
		if unknown:
			raise ConfigError(f"Unknown output formats: {', '.join(unknown)}")

	def validate_hf_settings(self):
		if not (_is_real(self.x_min) and _is_real(self.x_max)) or self.x_min >= self.x_max:
			raise ConfigError("x_min must be below x_max")
		if not _is_int(self.x_steps) or self.x_steps < 2:
			raise ConfigError(f"x_steps must be an integer >= 2, got {self.x_steps!r}")
		if self.g_squared is not None and (not _is_real(self.g_squared) or self.g_squared < 0):
			raise ConfigError(f"g_squared must be >= 0, got {self.g_squared!r}")
		if len(self.wells) != 2:
			raise ConfigError(f"wells takes two well labels, got {self.wells!r}")
		for well in self.wells:
			try:
				WellLabel.parse(well)
			except ValueError as e:
				raise ConfigError(f"Unknown well {well!r}") from e
		if not _is_int(self.overlap_size) or not 1 <= self.overlap_size <= MAX_OVERLAP_SIZE:
			raise ConfigError(f"overlap_size must be in [1, {MAX_OVERLAP_SIZE}], got {self.overlap_size!r}")

	def truncation(self):
		return TruncationConfig(
			n_trunc=self.n_trunc, tol=float(self.tol), n_levels=self.n_levels, n_max_cap=self.n_max_cap
		)

	def lambda_grid(self):
		if self.steps == 1:
			return [float(self.lambda_min)]
		return [float(value) for value in np.linspace(self.lambda_min, self.lambda_max, self.steps)]

	def x_grid(self):
		return [float(value) for value in np.linspace(self.x_min, self.x_max, self.x_steps)]

	def rng(self):
		"""Generator for randomized parameter sampling, seeded from the settings."""
		return np.random.default_rng(self.seed)

	def base_params(self, lambda_over_omega0=0.0):
		return operating_point(self.omega_over_eq, self.theta, lambda_over_omega0)

	def hf_params(self):
		"""Operating point for the potential modes; g^2 defaults to the one implied by lambda_max."""
		base = self.base_params()
		g_squared = self.g_squared if self.g_squared is not None else 2.0 * self.lambda_max**2
		return params_from_g(base.delta, base.epsilon, math.sqrt(g_squared), base.omega0, base.mass)

	def echo(self):
		"""Config as written to run.json; threads is left out so outputs do not depend on it."""
		return {
			"mode": self.mode,
			"theta": self.theta,
			"omega_over_eq": self.omega_over_eq,
			"lambda_min": self.lambda_min,
			"lambda_max": self.lambda_max,
			"steps": self.steps,
			"n_max": self.n_max,
			"truncation": self.truncation().as_dict(),
			"paper_constants": self.paper_constants,
			"scheme": self.scheme,
			"formats": list(self.formats),
			"output_dir": self.output_dir,
			"seed": self.seed,
			"x_min": self.x_min,
			"x_max": self.x_max,
			"x_steps": self.x_steps,
			"g_squared": self.g_squared,
			"wells": list(self.wells),
			"overlap_size": self.overlap_size,
		}


def _split(value):
	if isinstance(value, str):
		return [item.strip().lower() for item in value.split(",") if item.strip()]
	return [str(item).strip().lower() for item in value]


def _is_int(value):
	return isinstance(value, int) and not isinstance(value, bool)


def _is_real(value):
	return isinstance(value, int | float) and not isinstance(value, bool) and math.isfinite(value)
