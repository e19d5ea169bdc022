"""
High-Frequency Qubit Approximation
==================================

When the qubits are fast compared with the oscillator, the qubit energies
at a frozen oscillator position x act as a potential for the oscillator:

	V_+-(x) = 1/2 m w0^2 x^2 +- sqrt(delta^2 + (2 g x - eps)^2)
	V_0(x)  = 1/2 m w0^2 x^2

Near x = 0 the Plus/Minus potentials are harmonic with renormalized
frequencies w~^2 = w0^2 +- 4 g^2 / (m Eq). Once m w0^2 Eq / (4 g^2) drops
below 1 the Minus potential turns into a double well.

Quantities here are in raw units with hbar = 1; with m = w0 = 1 they are
in units of hbar*omega0.
"""

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from usc_spectra.usc_spectra.exceptions import InstabilityError, ParameterDomainError
from usc_spectra.usc_spectra.model import HBAR, params_from_g
from usc_spectra.usc_spectra.numerics import check_index

logger = logging.getLogger(__name__)

SCAN_POINTS = 4001
ROOT_XTOL = 1e-14
MARGINAL_RTOL = 1e-12


class PotentialBranch(enum.Enum):
	MINUS = "minus"
	ZERO = "zero"
	PLUS = "plus"

	@property
	def sign(self):
		return {"minus": -1, "zero": 0, "plus": 1}[self.value]

	@property
	def degeneracy(self):
		"""Zero hosts EG and GE."""
		return 2 if self is PotentialBranch.ZERO else 1

	@classmethod
	def parse(cls, value):
		if isinstance(value, cls):
			return value
		key = str(value).strip().lower()
		aliases = {"-": "minus", "0": "zero", "+": "plus"}
		return cls(aliases.get(key, key))


POTENTIAL_BRANCHES = (PotentialBranch.MINUS, PotentialBranch.ZERO, PotentialBranch.PLUS)


@dataclass(frozen=True)
class RenormalizedFrequencies:
	omega_minus_sq: float
	omega_zero_sq: float
	omega_plus_sq: float

	def for_branch(self, branch):
		branch = PotentialBranch.parse(branch)
		return {
			PotentialBranch.MINUS: self.omega_minus_sq,
			PotentialBranch.ZERO: self.omega_zero_sq,
			PotentialBranch.PLUS: self.omega_plus_sq,
		}[branch]


@dataclass(frozen=True)
class DoubleWellReport:
	"""
	Geometry of the Minus-branch potential.

	minima are ascending positions; barrier_height is measured from the deeper
	minimum and is None for a single well. asymmetry_shift is the position of
	the barrier maximum.
	"""

	stable: bool
	marginal: bool
	ratio: float
	minima: tuple
	minimum_values: tuple
	barrier_height: float | None = None
	asymmetry_shift: float | None = None
	closed_form_x0: float | None = None
	closed_form_barrier: float | None = None

	@property
	def n_minima(self):
		return len(self.minima)

	def as_dict(self):
		return {
			"stable": self.stable,
			"marginal": self.marginal,
			"ratio": self.ratio if math.isfinite(self.ratio) else None,
			"minima": list(self.minima),
			"minimum_values": list(self.minimum_values),
			"n_minima": self.n_minima,
			"barrier_height": self.barrier_height,
			"asymmetry_shift": self.asymmetry_shift,
			"closed_form_x0": self.closed_form_x0,
			"closed_form_barrier": self.closed_form_barrier,
		}


@dataclass(frozen=True)
class PotentialProfile:
	branch: PotentialBranch
	x: np.ndarray
	v_exact: np.ndarray
	v_approx: np.ndarray = field(repr=False)

	@property
	def approx_available(self):
		return bool(np.all(np.isfinite(self.v_approx)))


@dataclass(frozen=True)
class HfLevel:
	n: int
	branch: PotentialBranch
	energy: float
	degeneracy: int = 1


def qubit_energies_at_x(x, p):
	"""Joint qubit energies at frozen x, ascending: (-R, 0, 0, R), R = sqrt(delta^2 + (2gx - eps)^2)."""
	radius = _radius(_finite(x), p)
	return (-radius, 0.0, 0.0, radius)


def effective_potential(x, branch, p):
	x = _finite(x)
	branch = PotentialBranch.parse(branch)
	harmonic = 0.5 * p.mass * p.omega0**2 * x * x
	if branch is PotentialBranch.ZERO:
		return harmonic
	return harmonic + branch.sign * _radius(x, p)


def effective_potential_slope(x, branch, p):
	"""
	dV/dx of effective_potential.

	With delta = 0 the Plus/Minus potentials have a kink at x = eps / 2g; the
	slope there is the mean of the two one-sided slopes, i.e. the harmonic part.
	"""
	branch = PotentialBranch.parse(branch)
	x = float(x)
	slope = p.mass * p.omega0**2 * x
	if branch is PotentialBranch.ZERO:
		return slope
	radius = _radius(x, p)
	if radius == 0.0:
		return slope
	return slope + branch.sign * 2.0 * p.g * (2.0 * p.g * x - p.epsilon) / radius


def renormalized_frequencies(p):
	shift = 4.0 * p.g**2 / (p.mass * p.eq)
	omega_sq = p.omega0**2
	return RenormalizedFrequencies(
		omega_minus_sq=omega_sq - shift, omega_zero_sq=omega_sq, omega_plus_sq=omega_sq + shift
	)


def stability_ratio(p):
	"""m w0^2 Eq / (4 g^2); infinite at g = 0."""
	g_sq = p.g**2
	if g_sq == 0.0:
		return math.inf
	return p.mass * p.omega0**2 * p.eq / (4.0 * g_sq)


def approx_potential(x, branch, p):
	"""
	Harmonic approximation of effective_potential about its minimum.

	1/2 m w~^2 (x -+ 2 eps g / (m w~^2 Eq))^2 +- Eq for Plus/Minus.

	Raises:
		InstabilityError: Minus branch past the stability boundary
	"""
	x = _finite(x)
	branch = PotentialBranch.parse(branch)
	if branch is PotentialBranch.ZERO:
		return 0.5 * p.mass * p.omega0**2 * x * x

	omega_sq = _guarded_omega_sq(branch, p)
	centre = _approx_centre(branch, omega_sq, p)
	return 0.5 * p.mass * omega_sq * (x - centre) ** 2 + branch.sign * p.eq


def hf_adiabatic_energies(n, branch, p):
	"""
	Level n of the approximate potential of a branch.

	(n + 1/2) hbar w~ +- Eq - 2 eps^2 g^2 / (m w~^2 Eq^2) for Plus/Minus and
	(n + 1/2) hbar w0 for Zero.
	"""
	n = check_index(n, "n", None)
	branch = PotentialBranch.parse(branch)
	if branch is PotentialBranch.ZERO:
		return (n + 0.5) * HBAR * p.omega0

	omega_sq = _guarded_omega_sq(branch, p)
	offset = 0.0
	if p.epsilon != 0.0:
		offset = 2.0 * p.epsilon**2 * p.g**2 / (p.mass * omega_sq * p.eq**2)
	return (n + 0.5) * HBAR * math.sqrt(omega_sq) + branch.sign * p.eq - offset


def hf_levels(p, n_max):
	"""Levels n = 0..n_max of every branch; Minus is left out when its approximation does not apply."""
	n_max = check_index(n_max, "n_max", None)
	levels = []
	for branch in POTENTIAL_BRANCHES:
		try:
			for n in range(n_max + 1):
				levels.append(HfLevel(n, branch, hf_adiabatic_energies(n, branch, p), branch.degeneracy))
		except InstabilityError as e:
			logger.info("Skipping %s branch: %s", branch.value, e)
	return levels


def closed_form_x0(p):
	"""x0 = sqrt(4 g^2 / m^2 w0^4 - delta^2 / 4 g^2), or None when there is no double well."""
	if p.g == 0.0:
		return None
	value = 4.0 * p.g**2 / (p.mass**2 * p.omega0**4) - p.delta**2 / (4.0 * p.g**2)
	return math.sqrt(value) if value > 0 else None


def closed_form_barrier(p):
	"""-delta + 2 g^2 / (m w0^2) + m w0^2 delta^2 / (8 g^2), valid at eps = 0 in the double-well regime."""
	if p.g == 0.0:
		return None
	stiffness = p.mass * p.omega0**2
	return -p.delta + 2.0 * p.g**2 / stiffness + stiffness * p.delta**2 / (8.0 * p.g**2)


def stability(p):
	ratio = stability_ratio(p)
	marginal = _is_marginal(ratio)
	stable = ratio >= 1.0 or marginal

	minima, maxima = _stationary_points(p)
	values = tuple(effective_potential(x, PotentialBranch.MINUS, p) for x in minima)
	report = {
		"stable": stable,
		"marginal": marginal,
		"ratio": ratio,
		"minima": tuple(minima),
		"minimum_values": values,
	}

	if len(minima) >= 2 and maxima:
		barrier_x = maxima[0]
		report["asymmetry_shift"] = barrier_x
		report["barrier_height"] = effective_potential(barrier_x, PotentialBranch.MINUS, p) - min(values)
		if p.epsilon == 0.0 and not stable:
			report["closed_form_x0"] = closed_form_x0(p)
			report["closed_form_barrier"] = closed_form_barrier(p)
	return DoubleWellReport(**report)


def sample_potentials(p, x_grid):
	"""Exact and approximate potentials of every branch on x_grid (approx NaN where the guard trips)."""
	x = np.asarray([_finite(value) for value in x_grid], dtype=float)
	profiles = []
	for branch in POTENTIAL_BRANCHES:
		v_exact = np.array([effective_potential(value, branch, p) for value in x])
		try:
			v_approx = np.array([approx_potential(value, branch, p) for value in x])
		except InstabilityError as e:
			logger.info("No harmonic approximation for the %s branch: %s", branch.value, e)
			v_approx = np.full_like(x, np.nan)
		profiles.append(PotentialProfile(branch=branch, x=x, v_exact=v_exact, v_approx=v_approx))
	return profiles


def stability_scan(p_base, g_squared_grid):
	"""DoubleWellReport for each g^2 at fixed delta, eps, m and w0."""
	reports = []
	for g_squared in g_squared_grid:
		g_squared = float(g_squared)
		if not math.isfinite(g_squared) or g_squared < 0:
			raise ParameterDomainError(f"g^2 must be finite and >= 0, got {g_squared!r}")
		p = params_from_g(p_base.delta, p_base.epsilon, math.sqrt(g_squared), p_base.omega0, p_base.mass)
		reports.append(stability(p))
	return reports


def _stationary_points(p):
	"""Minima and maxima of the Minus potential, from sign changes of its slope refined with brentq."""
	stiffness = p.mass * p.omega0**2
	guess = 2.0 * p.g / stiffness
	if guess == 0.0:
		return [0.0], []

	def slope(x):
		return effective_potential_slope(x, PotentialBranch.MINUS, p)

	grid = np.linspace(-3.0 * guess, 3.0 * guess, SCAN_POINTS)
	values = np.array([slope(x) for x in grid])
	minima, maxima = [], []
	for i in range(len(grid) - 1):
		left, right = values[i], values[i + 1]
		if left == 0.0:
			if 0 < i and values[i - 1] < 0 < right:
				minima.append(float(grid[i]))
			elif 0 < i and values[i - 1] > 0 > right:
				maxima.append(float(grid[i]))
			continue
		if left * right < 0:
			root = brentq(slope, grid[i], grid[i + 1], xtol=ROOT_XTOL)
			(minima if left < 0 else maxima).append(float(root))
	return minima, maxima


def _is_marginal(ratio):
	return math.isfinite(ratio) and abs(ratio - 1.0) <= MARGINAL_RTOL


def _guarded_omega_sq(branch, p):
	omega_sq = renormalized_frequencies(p).for_branch(branch)
	if branch is PotentialBranch.MINUS:
		ratio = stability_ratio(p)
		if _is_marginal(ratio):
			omega_sq = max(omega_sq, 0.0)
		elif ratio < 1.0:
			raise InstabilityError(ratio)
		if omega_sq == 0.0 and p.epsilon != 0.0:
			raise InstabilityError(ratio)
	return omega_sq


def _approx_centre(branch, omega_sq, p):
	if p.epsilon == 0.0:
		return 0.0
	return branch.sign * 2.0 * p.epsilon * p.g / (p.mass * omega_sq * p.eq)


def _radius(x, p):
	return math.hypot(p.delta, 2.0 * p.g * x - p.epsilon)


def _finite(x):
	x = float(x)
	if not math.isfinite(x):
		raise ParameterDomainError(f"Position must be finite, got {x!r}")
	return x
