# Copyright (c) 2026, usc-spectra contributors
# See license.txt

import math
import unittest

import numpy as np
from scipy.linalg import eigh_tridiagonal

from usc_spectra.usc_spectra.exact_diag import TruncationConfig, exact_spectrum
from usc_spectra.usc_spectra.exceptions import InstabilityError, ParameterDomainError
from usc_spectra.usc_spectra.hf_qubit import (
	SCAN_POINTS,
	PotentialBranch,
	approx_potential,
	closed_form_barrier,
	closed_form_x0,
	effective_potential,
	effective_potential_slope,
	hf_adiabatic_energies,
	hf_levels,
	qubit_energies_at_x,
	renormalized_frequencies,
	sample_potentials,
	stability,
	stability_ratio,
	stability_scan,
)
from usc_spectra.usc_spectra.model import params_from_g
from usc_spectra.usc_spectra.numerics import sym_eigh

SINGLE_WELL = params_from_g(4.0, 0.0, math.sqrt(0.5))
DOUBLE_WELL = params_from_g(4.0, 0.0, 1.5)


def frozen_qubit_block(x, p):
	"""Qubit part of H at a fixed oscillator position x."""
	bias = p.epsilon - 2.0 * p.g * x
	half_gap = 0.5 * p.delta
	return np.array(
		[
			[-bias, -half_gap, -half_gap, 0.0],
			[-half_gap, 0.0, 0.0, -half_gap],
			[-half_gap, 0.0, 0.0, -half_gap],
			[0.0, -half_gap, -half_gap, bias],
		]
	)


class TestQubitEnergies(unittest.TestCase):
	def test_documented_values(self):
		self.assertEqual(qubit_energies_at_x(0.0, DOUBLE_WELL), (-4.0, 0.0, 0.0, 4.0))
		low, _, _, high = qubit_energies_at_x(1.0, DOUBLE_WELL)
		self.assertAlmostEqual(low, -5.0, places=12)
		self.assertAlmostEqual(high, 5.0, places=12)

	def test_bias_compensated(self):
		p = params_from_g(0.3, 0.8, 0.5)
		x = p.epsilon / (2.0 * p.g)
		low, _, _, high = qubit_energies_at_x(x, p)
		self.assertAlmostEqual(high, 0.3, places=12)
		self.assertAlmostEqual(low, -0.3, places=12)

	def test_matches_frozen_block_spectrum(self):
		rng = np.random.default_rng(23)
		for _ in range(100):
			p = params_from_g(rng.uniform(0.0, 3.0), rng.uniform(-2.0, 2.0), rng.uniform(0.0, 2.0))
			x = rng.uniform(-3.0, 3.0)
			values = sym_eigh(frozen_qubit_block(x, p)).values
			np.testing.assert_allclose(values, qubit_energies_at_x(x, p), atol=1e-10)

	def test_rejects_non_finite_position(self):
		with self.assertRaises(ParameterDomainError):
			qubit_energies_at_x(math.nan, DOUBLE_WELL)


class TestEffectivePotential(unittest.TestCase):
	def test_branches_at_origin(self):
		self.assertEqual(effective_potential(0.0, "minus", DOUBLE_WELL), -4.0)
		self.assertEqual(effective_potential(0.0, "plus", DOUBLE_WELL), 4.0)
		self.assertEqual(effective_potential(2.0, "zero", DOUBLE_WELL), 2.0)

	def test_symmetric_at_zero_bias(self):
		for x in (0.3, 1.0, 2.5):
			for branch in ("minus", "plus"):
				self.assertEqual(
					effective_potential(x, branch, DOUBLE_WELL), effective_potential(-x, branch, DOUBLE_WELL)
				)

	def test_slope_matches_finite_difference(self):
		p = params_from_g(1.0, 0.4, 0.9)
		h = 1e-6
		for branch in ("minus", "zero", "plus"):
			for x in (-1.5, -0.2, 0.7, 2.0):
				numeric = (effective_potential(x + h, branch, p) - effective_potential(x - h, branch, p)) / (2 * h)
				self.assertAlmostEqual(effective_potential_slope(x, branch, p), numeric, places=6)

	def test_branch_parse(self):
		self.assertIs(PotentialBranch.parse("-"), PotentialBranch.MINUS)
		self.assertIs(PotentialBranch.parse("Zero"), PotentialBranch.ZERO)
		self.assertEqual(PotentialBranch.ZERO.degeneracy, 2)
		self.assertEqual(PotentialBranch.PLUS.degeneracy, 1)
		with self.assertRaises(ValueError):
			PotentialBranch.parse("middle")


class TestRenormalizedFrequencies(unittest.TestCase):
	def test_documented_values(self):
		frequencies = renormalized_frequencies(SINGLE_WELL)
		self.assertAlmostEqual(frequencies.omega_minus_sq, 0.5, places=14)
		self.assertEqual(frequencies.omega_zero_sq, 1.0)
		self.assertAlmostEqual(frequencies.omega_plus_sq, 1.5, places=14)
		self.assertEqual(frequencies.for_branch("zero"), 1.0)

	def test_vanishes_at_boundary(self):
		p = params_from_g(4.0, 0.0, 1.0)
		self.assertLess(abs(renormalized_frequencies(p).omega_minus_sq), 1e-14)

	def test_stability_ratio(self):
		self.assertAlmostEqual(stability_ratio(SINGLE_WELL), 2.0, places=14)
		self.assertEqual(stability_ratio(params_from_g(4.0, 0.0, 0.0)), math.inf)


class TestApproxPotential(unittest.TestCase):
	def test_curvature_matches_exact_at_zero_bias(self):
		h = 1e-3
		frequencies = renormalized_frequencies(SINGLE_WELL)
		for branch in ("minus", "plus"):
			exact = [effective_potential(x, branch, SINGLE_WELL) for x in (-h, 0.0, h)]
			curvature = (exact[0] - 2 * exact[1] + exact[2]) / h**2
			self.assertLess(abs(curvature - frequencies.for_branch(branch)), 1e-6)
			self.assertEqual(approx_potential(0.0, branch, SINGLE_WELL), exact[1])

	def test_harmonic_shape(self):
		for x in (-1.0, 0.5, 2.0):
			self.assertAlmostEqual(approx_potential(x, "minus", SINGLE_WELL), 0.25 * x * x - 4.0, places=13)
			self.assertAlmostEqual(approx_potential(x, "plus", SINGLE_WELL), 0.75 * x * x + 4.0, places=13)
			self.assertEqual(approx_potential(x, "zero", SINGLE_WELL), 0.5 * x * x)

	def test_centre_follows_bias(self):
		p = params_from_g(4.0, 0.5, math.sqrt(0.5))
		frequencies = renormalized_frequencies(p)
		centre = 2.0 * p.epsilon * p.g / (frequencies.omega_minus_sq * p.eq)
		self.assertAlmostEqual(approx_potential(-centre, "minus", p), -p.eq, places=13)
		plus_centre = 2.0 * p.epsilon * p.g / (frequencies.omega_plus_sq * p.eq)
		self.assertAlmostEqual(approx_potential(plus_centre, "plus", p), p.eq, places=13)
		# the exact Minus minimum sits on the same side
		self.assertLess(stability(p).minima[0], 0.0)

	def test_minus_raises_past_boundary(self):
		with self.assertRaises(InstabilityError) as ctx:
			approx_potential(0.0, "minus", DOUBLE_WELL)
		self.assertAlmostEqual(ctx.exception.ratio, 4.0 / 9.0, places=14)
		self.assertEqual(approx_potential(0.0, "plus", DOUBLE_WELL), 4.0)

	def test_marginal_point_is_flat(self):
		p = params_from_g(4.0, 0.0, 1.0)
		self.assertAlmostEqual(approx_potential(1.0, "minus", p), -4.0, places=12)
		self.assertAlmostEqual(hf_adiabatic_energies(0, "minus", p), -4.0, places=7)


class TestStability(unittest.TestCase):
	def test_single_well(self):
		report = stability(SINGLE_WELL)
		self.assertTrue(report.stable)
		self.assertFalse(report.marginal)
		self.assertEqual(report.n_minima, 1)
		self.assertLess(abs(report.minima[0]), 1e-10)
		self.assertIsNone(report.barrier_height)

	def test_symmetric_double_well(self):
		report = stability(DOUBLE_WELL)
		self.assertFalse(report.stable)
		self.assertEqual(report.n_minima, 2)
		x0 = math.sqrt(9.0 - 16.0 / 9.0)
		self.assertAlmostEqual(round(x0, 5), 2.68742)
		self.assertAlmostEqual(report.minima[0], -x0, delta=1e-8)
		self.assertAlmostEqual(report.minima[1], x0, delta=1e-8)
		self.assertAlmostEqual(report.minimum_values[0], report.minimum_values[1], places=10)
		self.assertAlmostEqual(report.barrier_height, 1.0 / 2.0 + 8.0 / 9.0, delta=1e-8)
		self.assertLess(abs(report.asymmetry_shift), 1e-10)
		self.assertAlmostEqual(report.closed_form_x0, x0, places=12)
		self.assertAlmostEqual(round(report.closed_form_barrier, 5), 1.38889)

	def test_biased_double_well(self):
		p = params_from_g(4.0, 0.5, 1.5)
		report = stability(p)
		self.assertEqual(report.n_minima, 2)
		deeper = report.minima[int(np.argmin(report.minimum_values))]
		self.assertLess(deeper * p.epsilon, 0.0)
		self.assertNotAlmostEqual(report.minimum_values[0], report.minimum_values[1], places=3)
		self.assertGreater(report.asymmetry_shift, 0.1)
		self.assertIsNone(report.closed_form_x0)
		self.assertIsNone(report.closed_form_barrier)

	def test_barrier_grows_with_coupling(self):
		barriers = []
		for g in np.linspace(1.2, 2.5, 8):
			p = params_from_g(4.0, 0.0, float(g))
			report = stability(p)
			self.assertAlmostEqual(report.barrier_height, closed_form_barrier(p), delta=1e-8)
			barriers.append(report.barrier_height)
		self.assertTrue(all(b > a for a, b in zip(barriers, barriers[1:])))

	def test_closed_forms_without_double_well(self):
		self.assertIsNone(closed_form_x0(SINGLE_WELL))
		self.assertIsNone(closed_form_x0(params_from_g(4.0, 0.0, 0.0)))
		self.assertIsNone(closed_form_barrier(params_from_g(4.0, 0.0, 0.0)))

	def test_scan_crosses_boundary(self):
		reports = stability_scan(params_from_g(4.0, 0.0, 0.0), [0.0, 0.5, 1.0, 2.25])
		self.assertEqual([report.stable for report in reports], [True, True, True, False])
		self.assertEqual([report.marginal for report in reports], [False, False, True, False])
		self.assertIsNone(reports[0].as_dict()["ratio"])
		self.assertEqual(reports[0].minima, (0.0,))
		self.assertEqual(reports[3].as_dict()["n_minima"], 2)

	def test_scan_rejects_negative_coupling(self):
		with self.assertRaises(ParameterDomainError):
			stability_scan(SINGLE_WELL, [0.5, -0.1])

	def test_kink_at_zero_gap(self):
		# delta = 0 leaves a kink at x = eps / 2g; put it on a scan node
		g = params_from_g(0.0, 1.0, 1.0).g
		grid = np.linspace(-6.0 * g, 6.0 * g, SCAN_POINTS)
		kink = float(grid[2100])
		p = params_from_g(0.0, 2.0 * g * kink, 1.0)
		self.assertEqual(effective_potential_slope(kink, "minus", p), kink)
		self.assertEqual(effective_potential_slope(kink, "plus", p), kink)

		report = stability(p)
		self.assertEqual(report.n_minima, 2)
		self.assertAlmostEqual(report.minima[0], -2.0 * g, delta=1e-8)
		self.assertAlmostEqual(report.minima[1], 2.0 * g, delta=1e-8)
		self.assertAlmostEqual(report.asymmetry_shift, kink, delta=1e-10)
		# deeper well at -2g: V = -2g^2 - eps, barrier top V = kink^2 / 2
		barrier = 0.5 * kink**2 + 2.0 * g**2 + p.epsilon
		self.assertAlmostEqual(report.barrier_height, barrier, delta=1e-8)


class TestHfEnergies(unittest.TestCase):
	def test_documented_values(self):
		ground = hf_adiabatic_energies(0, "minus", SINGLE_WELL)
		self.assertAlmostEqual(ground, 0.5 * math.sqrt(0.5) - 4.0, places=13)
		self.assertAlmostEqual(round(ground, 5), -3.64645)
		self.assertEqual(hf_adiabatic_energies(2, "zero", SINGLE_WELL), 2.5)
		self.assertEqual(hf_adiabatic_energies(0, "plus", params_from_g(4.0, 0.0, 0.0)), 4.5)

	def test_bias_offset(self):
		p = params_from_g(4.0, 0.5, math.sqrt(0.5))
		omega_sq = renormalized_frequencies(p).omega_minus_sq
		expected = 1.5 * math.sqrt(omega_sq) - p.eq - 2.0 * 0.25 * 0.5 / (omega_sq * p.eq**2)
		self.assertAlmostEqual(hf_adiabatic_energies(1, "minus", p), expected, places=13)

	def test_ground_close_to_exact(self):
		exact = exact_spectrum(SINGLE_WELL, TruncationConfig(n_trunc=32, n_levels=2))
		self.assertTrue(exact.converged)
		self.assertLess(abs(hf_adiabatic_energies(0, "minus", SINGLE_WELL) - exact.eigenvalues[0]), 0.1)

	def test_ground_close_to_finite_difference_solve(self):
		x = np.linspace(-10.0, 10.0, 2001)
		step = x[1] - x[0]
		for branch in ("minus", "zero", "plus"):
			potential = np.array([effective_potential(value, branch, SINGLE_WELL) for value in x])
			values = eigh_tridiagonal(
				1.0 / step**2 + potential,
				np.full(len(x) - 1, -0.5 / step**2),
				eigvals_only=True,
				select="i",
				select_range=(0, 0),
			)
			approx = hf_adiabatic_energies(0, branch, SINGLE_WELL)
			self.assertLessEqual(abs(approx - values[0]), 0.05 * abs(values[0]), branch)
		self.assertAlmostEqual(round(hf_adiabatic_energies(0, "minus", SINGLE_WELL), 5), -3.64645)

	def test_minus_unavailable_past_boundary(self):
		with self.assertRaises(InstabilityError):
			hf_adiabatic_energies(0, "minus", DOUBLE_WELL)

	def test_levels(self):
		levels = hf_levels(SINGLE_WELL, 2)
		self.assertEqual(len(levels), 9)
		self.assertEqual({level.degeneracy for level in levels if level.branch is PotentialBranch.ZERO}, {2})
		with self.assertLogs("usc_spectra.usc_spectra.hf_qubit", level="INFO"):
			levels = hf_levels(DOUBLE_WELL, 2)
		self.assertEqual(len(levels), 6)
		self.assertNotIn(PotentialBranch.MINUS, {level.branch for level in levels})


class TestSamplePotentials(unittest.TestCase):
	def test_profiles(self):
		x = np.linspace(-2.0, 2.0, 9)
		profiles = {profile.branch: profile for profile in sample_potentials(SINGLE_WELL, x)}
		self.assertEqual(set(profiles), set(PotentialBranch))
		for profile in profiles.values():
			self.assertTrue(profile.approx_available)
		zero = profiles[PotentialBranch.ZERO]
		np.testing.assert_array_equal(zero.v_exact, zero.v_approx)
		# exact Minus lies above its harmonic approximation away from x = 0
		minus = profiles[PotentialBranch.MINUS]
		self.assertTrue(np.all(minus.v_exact >= minus.v_approx - 1e-12))

	def test_approx_guarded_past_boundary(self):
		profiles = {profile.branch: profile for profile in sample_potentials(DOUBLE_WELL, [-1.0, 0.0, 1.0])}
		self.assertFalse(profiles[PotentialBranch.MINUS].approx_available)
		self.assertTrue(np.all(np.isnan(profiles[PotentialBranch.MINUS].v_approx)))
		self.assertTrue(profiles[PotentialBranch.PLUS].approx_available)
		np.testing.assert_allclose(profiles[PotentialBranch.MINUS].v_exact[1], -4.0)
