"""
Exact diagonalization of the full Hamiltonian in a truncated Fock basis.

	H = -(delta/2)(sx1 + sx2) - (eps/2)(sz1 + sz2) + hbar w0 (a^dag a + 1/2)
	    + lambda (a^dag + a)(sz1 + sz2)

Product basis index is 4 k + q: Fock level k major, qubit state q in
(EE, EG, GE, GG) minor. Energies are in units of hbar*omega0.
"""

import functools
import logging
import math
from dataclasses import dataclass

import numpy as np

from usc_spectra.usc_spectra.displaced_basis import adiabatic_levels, validate_grid
from usc_spectra.usc_spectra.exceptions import ParameterDomainError, SizeError
from usc_spectra.usc_spectra.hf_qubit import hf_levels
from usc_spectra.usc_spectra.model import BASIS_ORDER
from usc_spectra.usc_spectra.numerics import LAGUERRE_MAX_N, SymmetricMatrix, check_index, sym_eigh
from usc_spectra.usc_spectra.parallel import parallel_map

logger = logging.getLogger(__name__)

DIMENSION_CEILING = 8192
COMPARE_SCHEMES = ("literal", "dressed", "hf")

_SIGMA_Z_SUM = np.diag([float(state.sigma_z_sum) for state in BASIS_ORDER])
# sx1 + sx2 over (EE, EG, GE, GG)
_SIGMA_X_SUM = np.array(
	[
		[0.0, 1.0, 1.0, 0.0],
		[1.0, 0.0, 0.0, 1.0],
		[1.0, 0.0, 0.0, 1.0],
		[0.0, 1.0, 1.0, 0.0],
	]
)
# sx1 sx2: EE <-> GG, EG <-> GE
_SIGMA_X_PRODUCT = np.fliplr(np.eye(4))


@dataclass(frozen=True)
class TruncationConfig:
	n_trunc: int = 16
	tol: float = 1e-8
	n_levels: int = 8
	n_max_cap: int = 256

	def __post_init__(self):
		self.validate()

	def validate(self):
		for name in ("n_trunc", "n_levels", "n_max_cap"):
			value = getattr(self, name)
			if isinstance(value, bool) or not isinstance(value, int) or value < 1:
				raise ParameterDomainError(f"{name} must be a positive integer, got {value!r}")
		if not (isinstance(self.tol, int | float) and math.isfinite(self.tol) and self.tol > 0):
			raise ParameterDomainError(f"tol must be > 0, got {self.tol!r}")
		if self.n_trunc < 2:
			raise ParameterDomainError(f"n_trunc must be >= 2, got {self.n_trunc}")
		if self.n_trunc < self.n_levels:
			raise ParameterDomainError(f"n_trunc ({self.n_trunc}) must be >= n_levels ({self.n_levels})")
		if self.n_trunc > self.n_max_cap:
			raise ParameterDomainError(f"n_trunc ({self.n_trunc}) exceeds n_max_cap ({self.n_max_cap})")

	def as_dict(self):
		return {"n_trunc": self.n_trunc, "tol": self.tol, "n_levels": self.n_levels, "n_max_cap": self.n_max_cap}


@dataclass(frozen=True)
class ExactSpectrum:
	eigenvalues: np.ndarray
	eigenvectors: np.ndarray
	converged: bool
	n_trunc_used: int
	max_shift: float
	shift_history: tuple = ()

	@property
	def shifts_non_increasing(self):
		"""True when no doubling moved the tracked levels more than the one before it."""
		return all(later <= earlier for earlier, later in zip(self.shift_history, self.shift_history[1:]))

	def convergence(self):
		return {
			"converged": self.converged,
			"n_trunc_used": self.n_trunc_used,
			"max_shift": self.max_shift if math.isfinite(self.max_shift) else None,
		}


def build_full_hamiltonian(p, n_trunc):
	n_trunc = check_index(n_trunc, "n_trunc", None)
	if n_trunc < 2:
		raise ParameterDomainError(f"n_trunc must be >= 2, got {n_trunc}")
	dimension = 4 * n_trunc
	if dimension > DIMENSION_CEILING:
		raise SizeError(dimension, DIMENSION_CEILING)

	hw = p.hbar_omega0
	delta, eps, lam = p.delta / hw, p.epsilon / hw, p.lambda_over_omega0

	ladder = np.diag(np.sqrt(np.arange(1, n_trunc, dtype=float)), k=1)
	position = ladder + ladder.T
	number = np.diag(np.arange(n_trunc, dtype=float) + 0.5)
	qubits = -0.5 * delta * _SIGMA_X_SUM - 0.5 * eps * _SIGMA_Z_SUM

	hamiltonian = (
		np.kron(np.eye(n_trunc), qubits)
		+ np.kron(number, np.eye(4))
		+ lam * np.kron(position, _SIGMA_Z_SUM)
	)
	return SymmetricMatrix(hamiltonian)


def exact_spectrum(p, cfg):
	"""
	Diagonalize with doubling truncation until the lowest cfg.n_levels
	eigenvalues move less than cfg.tol, or the next doubling would pass
	cfg.n_max_cap. Non-convergence is reported, not raised.
	"""
	n_trunc = cfg.n_trunc
	decomposition = sym_eigh(build_full_hamiltonian(p, n_trunc))
	max_shift = math.inf
	converged = False
	history = []

	while 2 * n_trunc <= cfg.n_max_cap:
		doubled = sym_eigh(build_full_hamiltonian(p, 2 * n_trunc))
		levels = min(cfg.n_levels, len(decomposition.values))
		max_shift = float(np.max(np.abs(doubled.values[:levels] - decomposition.values[:levels])))
		if history and max_shift > history[-1]:
			logger.warning(
				"Eigenvalue shift grew at lambda=%.6g: %.3e -> %.3e at n_trunc=%d",
				p.lambda_over_omega0,
				history[-1],
				max_shift,
				2 * n_trunc,
			)
		history.append(max_shift)
		n_trunc, decomposition = 2 * n_trunc, doubled
		logger.debug(
			"lambda=%.6g n_trunc=%d max_shift=%.3e", p.lambda_over_omega0, n_trunc, max_shift
		)
		if max_shift <= cfg.tol:
			converged = True
			break

	if not converged:
		logger.warning(
			"Exact spectrum not converged at lambda=%.6g: n_trunc=%d, max_shift=%s, tol=%g",
			p.lambda_over_omega0,
			n_trunc,
			max_shift,
			cfg.tol,
		)
	return ExactSpectrum(
		eigenvalues=decomposition.values,
		eigenvectors=decomposition.vectors,
		converged=converged,
		n_trunc_used=n_trunc,
		max_shift=max_shift,
		shift_history=tuple(history),
	)


def parity_operator(n_trunc):
	"""sx1 sx2 (-1)^{a^dag a} on the product basis."""
	n_trunc = check_index(n_trunc, "n_trunc", DIMENSION_CEILING // 4)
	signs = np.where(np.arange(n_trunc) % 2 == 0, 1.0, -1.0)
	return np.kron(np.diag(signs), _SIGMA_X_PRODUCT)


def parity_expectation(v, n_trunc):
	v = np.asarray(v, dtype=float)
	n_trunc = check_index(n_trunc, "n_trunc", DIMENSION_CEILING // 4)
	if v.shape != (4 * n_trunc,):
		raise ParameterDomainError(f"Expected a vector of length {4 * n_trunc}, got shape {v.shape}")
	blocks = v.reshape(n_trunc, 4)
	signs = np.where(np.arange(n_trunc) % 2 == 0, 1.0, -1.0)
	flipped = blocks[:, ::-1]
	return float(np.sum(signs * np.sum(blocks * flipped, axis=1)))


def compare_adiabatic_exact(
	p_base,
	theta,
	lambda_grid,
	n_levels,
	scheme="literal",
	paper_constants=False,
	cfg=None,
	workers=1,
):
	"""
	Adiabatic vs exact energies over a lambda grid.

	Levels are matched by sorted order. Each row carries lambda, the level
	index, both energies, abs_dev and rel_dev, and the grid point's
	convergence record. For the hf scheme the adiabatic energy is None at
	grid points where the Minus branch has no harmonic approximation.
	"""
	n_levels = check_index(n_levels, "n_levels", None)
	if n_levels < 1:
		raise ParameterDomainError("n_levels must be >= 1")
	if scheme not in COMPARE_SCHEMES:
		raise ParameterDomainError(f"Unknown scheme {scheme!r}; expected one of {COMPARE_SCHEMES}")
	grid = validate_grid(lambda_grid)
	if cfg is None:
		cfg = TruncationConfig(n_trunc=max(16, n_levels), n_levels=n_levels)

	logger.info("Comparison over %d grid points, scheme=%s, workers=%s", len(grid), scheme, workers)
	evaluate = functools.partial(
		_compare_point,
		p_theta=p_base.with_theta(theta),
		n_levels=n_levels,
		scheme=scheme,
		paper_constants=paper_constants,
		cfg=cfg,
	)
	rows = []
	for point_rows in parallel_map(evaluate, grid, workers=workers):
		rows.extend(point_rows)
	return rows


def adiabatic_energies(p, n_levels, scheme="literal", paper_constants=False):
	"""Lowest n_levels adiabatic energies, ascending; None for hf when the Minus branch is unavailable."""
	if scheme == "hf":
		levels = hf_levels(p, n_levels - 1)
		if not any(level.branch.value == "minus" for level in levels):
			return None
		hw = p.hbar_omega0
		energies = [level.energy / hw for level in levels for _ in range(level.degeneracy)]
		return sorted(energies)[:n_levels]

	# every index above this lies above the lowest n_levels levels
	n_max = min(n_levels + math.ceil(2.0 * p.eq / p.hbar_omega0) + 1, LAGUERRE_MAX_N)
	energies = sorted(level.energy for level in adiabatic_levels(p, n_max, scheme, paper_constants))
	return energies[:n_levels]


def _compare_point(lam, p_theta, n_levels, scheme, paper_constants, cfg):
	p = p_theta.with_lambda(lam)
	exact = exact_spectrum(p, cfg)
	adiabatic = adiabatic_energies(p, n_levels, scheme, paper_constants)
	rows = []
	for level in range(n_levels):
		exact_energy = float(exact.eigenvalues[level])
		approx = None if adiabatic is None else float(adiabatic[level])
		abs_dev = None if approx is None else abs(approx - exact_energy)
		rel_dev = None
		if abs_dev is not None and exact_energy != 0.0:
			rel_dev = abs_dev / abs(exact_energy)
		rows.append(
			{
				"lambda_over_omega0": lam,
				"level": level,
				"adiabatic": approx,
				"exact": exact_energy,
				"abs_dev": abs_dev,
				"rel_dev": rel_dev,
				**exact.convergence(),
			}
		)
	return rows
