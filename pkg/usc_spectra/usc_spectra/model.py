"""
Model Parameters and Joint Basis
================================

Canonical parameter record for two identical flux qubits coupled to one
harmonic oscillator, plus the qubit/well labels shared by every other module.

Conventions:
1. Canonical units are hbar = m = omega0 = 1; energies are in units of
   hbar*omega0 unless a caller asks for raw units.
2. The joint qubit basis is ordered (EE, EG, GE, GG) everywhere.
3. |n_plus> = exp(-(2 lambda/hbar omega0)(a^dag - a))|n>, |n_minus> uses +.
"""

import enum
import math
from dataclasses import dataclass, field, replace

from usc_spectra.usc_spectra.exceptions import ParameterDomainError

HBAR = 1.0


class QubitJointState(enum.IntEnum):
	EE = 0
	EG = 1
	GE = 2
	GG = 3

	@property
	def well(self):
		if self is QubitJointState.EE:
			return WellLabel.PLUS
		if self is QubitJointState.GG:
			return WellLabel.MINUS
		return WellLabel.ZERO

	@property
	def sigma_z_sum(self):
		"""Eigenvalue of sigma_z1 + sigma_z2 (e has sigma_z = +1)."""
		return {0: 2, 1: 0, 2: 0, 3: -2}[int(self)]


BASIS_ORDER = (QubitJointState.EE, QubitJointState.EG, QubitJointState.GE, QubitJointState.GG)


class WellLabel(enum.Enum):
	MINUS = "minus"
	ZERO = "zero"
	PLUS = "plus"

	@property
	def shift_sign(self):
		"""Sign s of the displacement s*2*lambda/(hbar omega0) in ladder units."""
		return {"minus": 1, "zero": 0, "plus": -1}[self.value]

	@classmethod
	def parse(cls, value):
		if isinstance(value, cls):
			return value
		key = str(value).strip().lower()
		aliases = {"-": "minus", "0": "zero", "+": "plus"}
		return cls(aliases.get(key, key))


@dataclass(frozen=True)
class ModelParams:
	delta: float
	epsilon: float
	lambda_coupling: float
	omega0: float = 1.0
	mass: float = 1.0
	eq: float = field(init=False)
	theta: float = field(init=False)

	def __post_init__(self):
		self.validate()
		object.__setattr__(self, "eq", math.hypot(self.delta, self.epsilon))
		object.__setattr__(self, "theta", math.atan2(self.epsilon, self.delta))

	def validate(self):
		for name in ("delta", "epsilon", "lambda_coupling", "omega0", "mass"):
			value = getattr(self, name)
			if not math.isfinite(value):
				raise ParameterDomainError(f"{name} must be finite, got {value!r}")
		if self.delta < 0:
			raise ParameterDomainError(f"Qubit gap delta must be >= 0, got {self.delta!r}")
		if self.lambda_coupling < 0:
			raise ParameterDomainError(f"Coupling lambda must be >= 0, got {self.lambda_coupling!r}")
		if self.omega0 <= 0 or self.mass <= 0:
			raise ParameterDomainError("Oscillator frequency and mass must be > 0")
		if self.delta == 0 and self.epsilon == 0:
			raise ParameterDomainError("Degenerate qubit: delta = epsilon = 0 gives Eq = 0")

	@property
	def hbar_omega0(self):
		return HBAR * self.omega0

	@property
	def g_factor(self):
		"""sqrt(2 m omega0 / hbar), the lambda -> g conversion factor."""
		return math.sqrt(2.0 * self.mass * self.omega0 / HBAR)

	@property
	def g(self):
		return self.lambda_coupling * self.g_factor

	@property
	def lambda_over_omega0(self):
		return self.lambda_coupling / self.hbar_omega0

	@property
	def omega_over_eq(self):
		return self.hbar_omega0 / self.eq

	def with_lambda(self, lambda_over_omega0):
		return replace(self, lambda_coupling=lambda_over_omega0 * self.hbar_omega0)

	def with_theta(self, theta):
		"""Same E_q, rotated so that tan(theta) = epsilon / delta."""
		return replace(self, delta=self.eq * math.cos(theta), epsilon=self.eq * math.sin(theta))

	def as_dict(self):
		return {
			"delta": self.delta,
			"epsilon": self.epsilon,
			"omega0": self.omega0,
			"mass": self.mass,
			"lambda_coupling": self.lambda_coupling,
			"eq": self.eq,
			"theta": self.theta,
			"g": self.g,
		}


def make_params(delta, epsilon, lambda_over_omega0, omega0=1.0, mass=1.0):
	"""
	Build a parameter record from the Fock-basis coupling.

	Args:
		delta: qubit gap (>= 0), in units of hbar*omega0
		epsilon: qubit bias, any sign
		lambda_over_omega0: lambda / (hbar omega0), >= 0

	Returns:
		ModelParams with eq, theta and g derived
	"""
	if lambda_over_omega0 < 0:
		raise ParameterDomainError(f"lambda/(hbar omega0) must be >= 0, got {lambda_over_omega0!r}")
	return ModelParams(
		delta=float(delta),
		epsilon=float(epsilon),
		lambda_coupling=float(lambda_over_omega0) * HBAR * omega0,
		omega0=float(omega0),
		mass=float(mass),
	)


def params_from_g(delta, epsilon, g, omega0=1.0, mass=1.0):
	"""Build a parameter record from the position coupling g (H_int = g x (sz1 + sz2))."""
	if g < 0:
		raise ParameterDomainError(f"Coupling g must be >= 0, got {g!r}")
	return ModelParams(
		delta=float(delta),
		epsilon=float(epsilon),
		lambda_coupling=lambda_from_g(g, omega0, mass),
		omega0=omega0,
		mass=mass,
	)


def lambda_from_g(g, omega0=1.0, mass=1.0):
	return g / math.sqrt(2.0 * mass * omega0 / HBAR)


def g_from_lambda(lambda_coupling, omega0=1.0, mass=1.0):
	return lambda_coupling * math.sqrt(2.0 * mass * omega0 / HBAR)


def operating_point(omega_over_eq, theta, lambda_over_omega0=0.0):
	"""Parameters at fixed hbar*omega0/E_q and mixing angle theta (omega0 = 1)."""
	if omega_over_eq <= 0:
		raise ParameterDomainError(f"hbar*omega0/E_q must be > 0, got {omega_over_eq!r}")
	eq = 1.0 / omega_over_eq
	return make_params(eq * math.cos(theta), eq * math.sin(theta), lambda_over_omega0)
