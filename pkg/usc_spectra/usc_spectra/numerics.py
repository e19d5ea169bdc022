"""
Numerics
========

Special functions and the dense symmetric eigensolver contract used by
the spectrum modules.

- laguerre_assoc evaluates L_n^k(x) by the upward three-term recurrence; the
  alternating closed sum cancels catastrophically for x > n.
- log_factorial keeps sqrt(n!/m!) ratios in log space.
- sym_eigh wraps scipy.linalg.eigh with a deterministic gauge: degenerate
  clusters get a canonical basis and every vector's leading component is
  positive.
"""

import logging
import re
from dataclasses import dataclass

import numpy as np
from scipy import linalg
from scipy.special import gammaln

from usc_spectra.usc_spectra.exceptions import NumericError, ParameterDomainError

logger = logging.getLogger(__name__)

LAGUERRE_MAX_N = 512
LOG_FACTORIAL_MAX_N = 10**6
DEGENERACY_RTOL = 1e-12
LEADING_COMPONENT_ATOL = 1e-12


class SymmetricMatrix:
	"""Real symmetric matrix; construction enforces entries[i][j] == entries[j][i]."""

	__slots__ = ("entries",)

	def __init__(self, entries, symmetrize=False):
		array = np.array(entries, dtype=float, copy=True)
		if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape[0] < 1:
			raise ParameterDomainError(f"Expected a non-empty square matrix, got shape {array.shape}")
		if not np.all(np.isfinite(array)):
			raise ParameterDomainError("Matrix entries must be finite")
		if symmetrize:
			array = 0.5 * (array + array.T)
		elif not np.array_equal(array, array.T):
			raise ParameterDomainError("Matrix is not exactly symmetric")
		array.setflags(write=False)
		self.entries = array

	@property
	def dimension(self):
		return self.entries.shape[0]

	def __array__(self, dtype=None, copy=None):
		return self.entries if dtype is None else self.entries.astype(dtype)

	def __repr__(self):
		return f"SymmetricMatrix(dimension={self.dimension})"


@dataclass(frozen=True)
class EigDecomposition:
	values: np.ndarray
	vectors: np.ndarray

	def orthonormality_error(self):
		overlap = self.vectors.T @ self.vectors
		return float(np.max(np.abs(overlap - np.eye(overlap.shape[0]))))

	def residual(self, matrix):
		"""Max over columns of |A v_k - values[k] v_k|_inf / (1 + |values[k]|)."""
		a = np.asarray(matrix)
		diff = a @ self.vectors - self.vectors * self.values[np.newaxis, :]
		per_column = np.max(np.abs(diff), axis=0) / (1.0 + np.abs(self.values))
		return float(np.max(per_column))


def laguerre_assoc(n, k, x):
	"""
	Associated Laguerre polynomial L_n^k(x) by upward recurrence.

	L_0 = 1, L_1 = 1 + k - x,
	L_j = ((2j - 1 + k - x) L_{j-1} - (j - 1 + k) L_{j-2}) / j.
	"""
	n = check_index(n, "n", LAGUERRE_MAX_N)
	k = check_index(k, "k", None)
	x = float(x)
	if not np.isfinite(x) or x < 0:
		raise ParameterDomainError(f"Laguerre argument must be finite and >= 0, got {x!r}")

	if n == 0:
		return 1.0
	previous, current = 1.0, 1.0 + k - x
	for j in range(2, n + 1):
		previous, current = current, ((2 * j - 1 + k - x) * current - (j - 1 + k) * previous) / j
	return current


def log_factorial(n):
	n = check_index(n, "n", LOG_FACTORIAL_MAX_N)
	if n < 2:
		return 0.0
	return float(gammaln(n + 1.0))


def sym_eigh(a):
	"""
	Eigen-decomposition of a real symmetric matrix with a fixed gauge.

	Args:
		a: SymmetricMatrix (or anything SymmetricMatrix accepts)

	Returns:
		EigDecomposition with ascending values and orthonormal columns
	"""
	if not isinstance(a, SymmetricMatrix):
		a = SymmetricMatrix(a)
	entries = a.entries
	dimension = a.dimension

	try:
		values, vectors = linalg.eigh(entries, check_finite=False)
	except linalg.LinAlgError as e:
		match = re.search(r"(\d+)", str(e))
		iterations = int(match.group(1)) if match else -1
		raise NumericError(f"Symmetric eigensolver failed to converge: {e}", dimension, iterations)

	vectors = np.array(vectors, copy=True)
	for start, stop in _degenerate_clusters(values):
		if stop - start > 1:
			vectors[:, start:stop] = _canonical_basis(vectors[:, start:stop])
	for column in range(dimension):
		vectors[:, column] = fix_sign(vectors[:, column])

	return EigDecomposition(values=np.asarray(values, dtype=float), vectors=vectors)


def fix_sign(vector, atol=LEADING_COMPONENT_ATOL):
	"""Flip a vector so its first component with |v_i| > atol is positive."""
	vector = np.asarray(vector, dtype=float)
	significant = np.flatnonzero(np.abs(vector) > atol)
	if significant.size and vector[significant[0]] < 0:
		return -vector
	return vector


def _degenerate_clusters(values):
	scale = 1.0 + float(np.max(np.abs(values)))
	tolerance = DEGENERACY_RTOL * scale
	start = 0
	for index in range(1, len(values) + 1):
		if index == len(values) or values[index] - values[index - 1] > tolerance:
			yield start, index
			start = index


def _canonical_basis(block):
	"""Basis of span(block) from Gram-Schmidt on P e_0, P e_1, ... (P the cluster projector)."""
	dimension, rank = block.shape
	basis = []
	for i in range(dimension):
		candidate = block @ block[i, :]
		# two passes keep the basis orthonormal to rounding
		for _ in range(2):
			for existing in basis:
				candidate = candidate - existing * (existing @ candidate)
		norm = np.linalg.norm(candidate)
		if norm > 1e-4:
			basis.append(candidate / norm)
			if len(basis) == rank:
				break
	if len(basis) < rank:
		logger.debug("Canonical basis incomplete (%d of %d); keeping solver vectors", len(basis), rank)
		return block
	return np.column_stack(basis)


def check_index(value, name, ceiling):
	if isinstance(value, bool) or int(value) != value:
		raise ParameterDomainError(f"{name} must be an integer, got {value!r}")
	value = int(value)
	if value < 0:
		raise ParameterDomainError(f"{name} must be >= 0, got {value}")
	if ceiling is not None and value > ceiling:
		raise ParameterDomainError(f"{name} = {value} exceeds the documented ceiling {ceiling}")
	return value
