"""
Displaced Oscillator Basis
==========================

Adiabatic levels of the two-qubit/oscillator system in the basis of
displaced Fock states.

Each joint qubit state selects a well: GG sits in the Minus well
(displacement +2 lambda / hbar omega0), EE in the Plus well (-2 lambda),
EG and GE in the undisplaced Zero well. For fixed oscillator index n the
qubits then see a 4x4 Hamiltonian whose off-diagonal tunnelling is
renormalized by the overlap w_n = <n_+|n_0>.

Two composition schemes are offered:

- literal: E = E'(well) + E''(branch), with the closed-form 4x4 eigenvalues
  and eigenvectors;
- dressed: the well energies are added to the diagonal of the 4x4 and the
  triplet sector is diagonalized numerically.

All energies are in units of hbar*omega0.
"""

import enum
import functools
import logging
import math
from dataclasses import dataclass

import numpy as np

from usc_spectra.usc_spectra.exceptions import ParameterDomainError
from usc_spectra.usc_spectra.model import BASIS_ORDER, WellLabel
from usc_spectra.usc_spectra.numerics import (
	LAGUERRE_MAX_N,
	SymmetricMatrix,
	check_index,
	laguerre_assoc,
	log_factorial,
	sym_eigh,
)
from usc_spectra.usc_spectra.parallel import parallel_map

logger = logging.getLogger(__name__)

SWEEP_MAX_N = 64
SCHEMES = ("literal", "dressed")
SINGLET = (0.0, -1.0 / math.sqrt(2.0), 1.0 / math.sqrt(2.0), 0.0)

# EE, (EG + GE)/sqrt2, GG as columns
_TRIPLET = np.array(
	[
		[1.0, 0.0, 0.0],
		[0.0, 1.0 / math.sqrt(2.0), 0.0],
		[0.0, 1.0 / math.sqrt(2.0), 0.0],
		[0.0, 0.0, 1.0],
	]
)


class Branch(enum.Enum):
	MINUS = "minus"
	ZERO1 = "zero1"
	ZERO2 = "zero2"
	PLUS = "plus"

	@property
	def order(self):
		return BRANCH_ORDER.index(self)

	@classmethod
	def parse(cls, value):
		if isinstance(value, cls):
			return value
		return cls(str(value).strip().lower())


BRANCH_ORDER = (Branch.MINUS, Branch.ZERO1, Branch.ZERO2, Branch.PLUS)


@dataclass(frozen=True)
class WellOverlap:
	m: int
	well_m: WellLabel
	n: int
	well_n: WellLabel
	value: float

	def as_dict(self):
		return {
			"m": self.m,
			"well_m": self.well_m.value,
			"n": self.n,
			"well_n": self.well_n.value,
			"value": self.value,
		}


@dataclass(frozen=True)
class AdiabaticLevel:
	"""
	One adiabatic level.

	amplitudes are over (|n_+,EE>, |n_0,EG>, |n_0,GE>, |n_-,GG>) and are
	normalized. energy = oscillator_energy + qubit_energy.
	"""

	n: int
	branch: Branch
	energy: float
	amplitudes: tuple
	oscillator_energy: float
	qubit_energy: float
	scheme: str = "literal"

	@property
	def decoupled(self):
		"""True for the singlet branch, which carries no oscillator displacement."""
		return self.branch is Branch.ZERO2


@dataclass(frozen=True)
class SpectrumTable:
	lambda_grid: tuple
	levels: tuple
	theta: float = 0.0
	scheme: str = "literal"

	def rows(self):
		"""(lambda, n, branch, energy) in grid, n, branch order."""
		for lam, point in zip(self.lambda_grid, self.levels):
			for level in point:
				yield lam, level.n, level.branch, level.energy

	def series(self):
		"""Energy curves keyed by (n, branch)."""
		curves = {}
		for lam, n, branch, energy in self.rows():
			curves.setdefault((n, branch), []).append((lam, energy))
		return curves


def well_displacement(well, p):
	"""Dimensionless displacement of a well's Fock states, +2 lambda / hbar omega0 for Minus."""
	return WellLabel.parse(well).shift_sign * 2.0 * p.lambda_over_omega0


def displacement_overlap(m, n, d):
	"""
	<m| exp(d (a^dag - a)) |n> for real d.

	m >= n: e^{-d^2/2} d^{m-n} sqrt(n!/m!) L_n^{m-n}(d^2)
	m <  n: e^{-d^2/2} (-d)^{n-m} sqrt(m!/n!) L_m^{n-m}(d^2)
	"""
	m = check_index(m, "m", LAGUERRE_MAX_N)
	n = check_index(n, "n", LAGUERRE_MAX_N)
	d = float(d)
	if not math.isfinite(d):
		raise ParameterDomainError(f"Displacement must be finite, got {d!r}")
	if d == 0.0:
		return 1.0 if m == n else 0.0

	low, high = min(m, n), max(m, n)
	k = high - low
	base = d if m >= n else -d
	laguerre = laguerre_assoc(low, k, d * d)
	if laguerre == 0.0:
		return 0.0

	sign = math.copysign(1.0, laguerre)
	if k % 2 and base < 0:
		sign = -sign
	log_magnitude = (
		-0.5 * d * d
		+ k * math.log(abs(d))
		+ 0.5 * (log_factorial(low) - log_factorial(high))
		+ math.log(abs(laguerre))
	)
	return sign * math.exp(log_magnitude)


def well_overlap(m, well_m, n, well_n, p):
	"""<m_{well_m} | n_{well_n}>; adjacent wells differ by 2 lambda, Minus and Plus by 4 lambda."""
	well_m = WellLabel.parse(well_m)
	well_n = WellLabel.parse(well_n)
	if well_m is well_n:
		check_index(m, "m", LAGUERRE_MAX_N)
		check_index(n, "n", LAGUERRE_MAX_N)
		return 1.0 if m == n else 0.0
	d = well_displacement(well_n, p) - well_displacement(well_m, p)
	return displacement_overlap(m, n, d)


def well_overlap_record(m, well_m, n, well_n, p):
	return WellOverlap(
		m=m,
		well_m=WellLabel.parse(well_m),
		n=n,
		well_n=WellLabel.parse(well_n),
		value=well_overlap(m, well_m, n, well_n, p),
	)


def overlap_matrix(well_m, well_n, p, size):
	size = check_index(size, "size", LAGUERRE_MAX_N + 1)
	if size < 1:
		raise ParameterDomainError("Overlap matrix size must be >= 1")
	matrix = np.empty((size, size))
	for m in range(size):
		for n in range(size):
			matrix[m, n] = well_overlap(m, well_m, n, well_n, p)
	return matrix


def diagonal_overlap(n, p):
	"""w_n = e^{-2 (lambda/hbar omega0)^2} L_n(4 (lambda/hbar omega0)^2)."""
	n = check_index(n, "n", LAGUERRE_MAX_N)
	lam = p.lambda_over_omega0
	return math.exp(-2.0 * lam * lam) * laguerre_assoc(n, 0, 4.0 * lam * lam)


def effective_qubit_hamiltonian(n, p):
	"""
	The 4x4 qubit Hamiltonian for oscillator index n, basis (EE, EG, GE, GG).

	Diagonal (-eps, 0, 0, +eps); EE and GG each couple to EG and GE with
	-(delta/2) w_n.
	"""
	hw = p.hbar_omega0
	eps = p.epsilon / hw
	b = 0.5 * (p.delta / hw) * diagonal_overlap(n, p)
	return SymmetricMatrix(
		[
			[-eps, -b, -b, 0.0],
			[-b, 0.0, 0.0, -b],
			[-b, 0.0, 0.0, -b],
			[0.0, -b, -b, eps],
		]
	)


def well_energy(n, well, p, paper_constants=False):
	"""
	Oscillator energy of |n_well>.

	Displaced wells sit 4 lambda^2 / hbar omega0 below the bare oscillator. With
	paper_constants the displaced wells drop the zero-point half quantum.
	"""
	n = check_index(n, "n", None)
	well = WellLabel.parse(well)
	if well is WellLabel.ZERO:
		return n + 0.5
	lam = p.lambda_over_omega0
	zero_point = 0.0 if paper_constants else 0.5
	return n + zero_point - 4.0 * lam * lam


def qubit_energy(n, branch, p):
	"""E'' of a branch: -+sqrt(eps^2 + delta^2 w_n^2) for Minus/Plus, 0 for both Zero branches."""
	branch = Branch.parse(branch)
	if branch in (Branch.ZERO1, Branch.ZERO2):
		return 0.0
	hw = p.hbar_omega0
	radius = math.hypot(p.epsilon / hw, (p.delta / hw) * diagonal_overlap(n, p))
	return -radius if branch is Branch.MINUS else radius


def adiabatic_level(n, branch, p, paper_constants=False):
	"""
	Literal-scheme level: displaced-well energy plus the closed-form E''.

	Zero2 is the singlet and sits in the Zero well; the other branches sit in
	the displaced wells.
	"""
	n = check_index(n, "n", LAGUERRE_MAX_N)
	branch = Branch.parse(branch)
	well = WellLabel.ZERO if branch is Branch.ZERO2 else WellLabel.MINUS
	oscillator = well_energy(n, well, p, paper_constants)
	qubit = qubit_energy(n, branch, p)
	return AdiabaticLevel(
		n=n,
		branch=branch,
		energy=oscillator + qubit,
		amplitudes=_literal_amplitudes(n, branch, p),
		oscillator_energy=oscillator,
		qubit_energy=qubit,
		scheme="literal",
	)


def degeneracy_point_states(n, p, paper_constants=False):
	if p.epsilon != 0:
		raise ParameterDomainError(f"Degeneracy-point states need epsilon = 0, got {p.epsilon!r}")
	return [adiabatic_level(n, branch, p, paper_constants) for branch in BRANCH_ORDER]


def dressed_levels(n, p, paper_constants=False):
	"""
	Dressed-scheme levels for index n.

	The 4x4 of effective_qubit_hamiltonian gets the well energies on its
	diagonal and is diagonalized in the triplet sector; the singlet keeps
	the Zero-well energy.
	"""
	n = check_index(n, "n", LAGUERRE_MAX_N)
	displaced = well_energy(n, WellLabel.MINUS, p, paper_constants)
	undisplaced = well_energy(n, WellLabel.ZERO, p, paper_constants)
	well_energies = np.array([displaced, undisplaced, undisplaced, displaced])

	matrix = np.asarray(effective_qubit_hamiltonian(n, p)) + np.diag(well_energies)
	decomposition = sym_eigh(SymmetricMatrix(_TRIPLET.T @ matrix @ _TRIPLET, symmetrize=True))
	vectors = _TRIPLET @ decomposition.vectors

	levels = []
	for branch, column in zip((Branch.MINUS, Branch.ZERO1, Branch.PLUS), range(3)):
		amplitudes = vectors[:, column] / np.linalg.norm(vectors[:, column])
		energy = float(decomposition.values[column])
		oscillator = float(np.dot(amplitudes**2, well_energies))
		levels.append(
			AdiabaticLevel(
				n=n,
				branch=branch,
				energy=energy,
				amplitudes=tuple(float(a) for a in amplitudes),
				oscillator_energy=oscillator,
				qubit_energy=energy - oscillator,
				scheme="dressed",
			)
		)
	levels.append(
		AdiabaticLevel(
			n=n,
			branch=Branch.ZERO2,
			energy=undisplaced,
			amplitudes=SINGLET,
			oscillator_energy=undisplaced,
			qubit_energy=0.0,
			scheme="dressed",
		)
	)
	return sorted(levels, key=lambda level: level.branch.order)


def adiabatic_levels(p, n_max, scheme="literal", paper_constants=False):
	"""All branches for n = 0..n_max, ordered by (n, branch)."""
	n_max = check_index(n_max, "n_max", LAGUERRE_MAX_N)
	if scheme not in SCHEMES:
		raise ParameterDomainError(f"Unknown adiabatic scheme {scheme!r}; expected one of {SCHEMES}")

	levels = []
	for n in range(n_max + 1):
		if scheme == "dressed":
			levels.extend(dressed_levels(n, p, paper_constants))
		else:
			levels.extend(adiabatic_level(n, branch, p, paper_constants) for branch in BRANCH_ORDER)
	return levels


def spectrum_sweep(
	p_base, theta, lambda_grid, n_max, scheme="literal", paper_constants=False, workers=1
):
	"""
	Adiabatic spectrum over a lambda grid at fixed E_q and mixing angle theta.

	Args:
		p_base: supplies E_q, omega0 and mass
		theta: mixing angle, tan(theta) = epsilon / delta
		lambda_grid: ascending lambda / hbar omega0 values
		n_max: highest oscillator index (<= 64)

	Returns:
		SpectrumTable, one list of levels per grid point in grid order
	"""
	n_max = check_index(n_max, "n_max", SWEEP_MAX_N)
	grid = validate_grid(lambda_grid)
	p_theta = p_base.with_theta(theta)

	logger.info(
		"Adiabatic sweep: %d grid points, n_max=%d, scheme=%s, workers=%s", len(grid), n_max, scheme, workers
	)
	evaluate = functools.partial(
		_sweep_point, p_theta=p_theta, n_max=n_max, scheme=scheme, paper_constants=paper_constants
	)
	levels = parallel_map(evaluate, grid, workers=workers)
	return SpectrumTable(
		lambda_grid=tuple(grid), levels=tuple(tuple(point) for point in levels), theta=theta, scheme=scheme
	)


def well_potential(x_prime, well, p, paper_constants=False):
	"""
	Harmonic well in x' = x sqrt(2 m omega0 / hbar) units, energies in hbar*omega0.

	(1/4)(x' - 2 d)^2 + offset, with d the ladder displacement; the Plus well
	(EE) is centred left of the origin and the Minus well (GG) right. The
	offset puts each well's n = 0 level at well_energy(0, well).
	"""
	well = WellLabel.parse(well)
	centre = 2.0 * well_displacement(well, p)
	offset = well_energy(0, well, p, paper_constants) - 0.5
	return 0.25 * (float(x_prime) - centre) ** 2 + offset


def validate_grid(lambda_grid):
	grid = [float(value) for value in lambda_grid]
	if not grid:
		raise ParameterDomainError("lambda grid is empty")
	for value in grid:
		if not math.isfinite(value) or value < 0:
			raise ParameterDomainError(f"lambda grid values must be finite and >= 0, got {value!r}")
	if any(b <= a for a, b in zip(grid, grid[1:])):
		raise ParameterDomainError("lambda grid must be strictly ascending")
	return grid


def _sweep_point(lam, p_theta, n_max, scheme, paper_constants):
	return adiabatic_levels(p_theta.with_lambda(lam), n_max, scheme, paper_constants)


def _literal_amplitudes(n, branch, p):
	if branch is Branch.ZERO2:
		return SINGLET

	hw = p.hbar_omega0
	eps = p.epsilon / hw
	b = 0.5 * (p.delta / hw) * diagonal_overlap(n, p)
	if b == 0.0:
		logger.debug("Laguerre node at n=%d, lambda=%.6g; using the triplet eigensolve", n, p.lambda_over_omega0)
		return _node_amplitudes(n, branch, p)

	sigma = math.copysign(1.0, b)
	if branch is Branch.ZERO1:
		mixing = eps / (2.0 * b)
		vector = np.array([-1.0, mixing, mixing, 1.0])
		vector = vector / np.max(np.abs(vector))
		return _normalized(vector)

	reduced = eps / (2.0 * abs(b))
	root = math.hypot(1.0, reduced)
	if branch is Branch.MINUS:
		# t = reduced + root, formed without cancellation
		t = reduced + root if reduced >= 0 else 1.0 / (root - reduced)
		if t >= 1.0:
			vector = np.array([1.0, sigma / t, sigma / t, 1.0 / (t * t)])
		else:
			vector = np.array([t * t, sigma * t, sigma * t, 1.0])
		return _normalized(vector)

	u = root - reduced if reduced <= 0 else 1.0 / (root + reduced)
	if u >= 1.0:
		vector = np.array([1.0, -sigma / u, -sigma / u, 1.0 / (u * u)])
	else:
		vector = np.array([u * u, -sigma * u, -sigma * u, 1.0])
	return _normalized(vector)


def _node_amplitudes(n, branch, p):
	matrix = np.asarray(effective_qubit_hamiltonian(n, p))
	decomposition = sym_eigh(SymmetricMatrix(_TRIPLET.T @ matrix @ _TRIPLET, symmetrize=True))
	column = {Branch.MINUS: 0, Branch.ZERO1: 1, Branch.PLUS: 2}[branch]
	return _normalized(_TRIPLET @ decomposition.vectors[:, column])


def _normalized(vector):
	vector = np.asarray(vector, dtype=float)
	return tuple(float(a) for a in vector / np.linalg.norm(vector))


__all__ = [
	"BASIS_ORDER",
	"BRANCH_ORDER",
	"AdiabaticLevel",
	"Branch",
	"SpectrumTable",
	"WellOverlap",
	"adiabatic_level",
	"adiabatic_levels",
	"degeneracy_point_states",
	"diagonal_overlap",
	"displacement_overlap",
	"dressed_levels",
	"effective_qubit_hamiltonian",
	"overlap_matrix",
	"spectrum_sweep",
	"well_energy",
	"well_overlap",
	"well_overlap_record",
	"well_potential",
]
