# Copyright (c) 2026, usc-spectra contributors
# For license information, please see license.txt


class UscSpectraError(Exception):
	"""Base class for every error raised by the package."""


class ParameterDomainError(UscSpectraError, ValueError):
	pass


class ConfigError(UscSpectraError, ValueError):
	pass


class NumericError(UscSpectraError, ArithmeticError):
	"""Eigensolver failure, with the matrix dimension and the count LAPACK reported."""

	def __init__(self, message, dimension, iterations=-1):
		super().__init__(f"{message} (dimension={dimension}, iterations={iterations})")
		self.dimension = dimension
		self.iterations = iterations


class SizeError(UscSpectraError, MemoryError):
	def __init__(self, dimension, ceiling):
		super().__init__(f"Matrix dimension {dimension} exceeds the ceiling of {ceiling}")
		self.dimension = dimension
		self.ceiling = ceiling


class InstabilityError(UscSpectraError, ArithmeticError):
	"""Harmonic approximation requested past the stationary point m w0^2 Eq / 4g^2 = 1."""

	def __init__(self, ratio):
		super().__init__(
			f"Minus-branch potential is a double well (m*w0^2*Eq/(4g^2) = {ratio:.12g} < 1); "
			"the harmonic approximation does not apply"
		)
		self.ratio = ratio
