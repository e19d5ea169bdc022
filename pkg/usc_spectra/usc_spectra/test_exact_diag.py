# Copyright (c) 2026, usc-spectra contributors
# See license.txt

import math
import unittest
from unittest import mock

import numpy as np

from usc_spectra.usc_spectra.exact_diag import (
	ExactSpectrum,
	TruncationConfig,
	adiabatic_energies,
	build_full_hamiltonian,
	compare_adiabatic_exact,
	exact_spectrum,
	parity_expectation,
	parity_operator,
)
from usc_spectra.usc_spectra.exceptions import ParameterDomainError, SizeError
from usc_spectra.usc_spectra.model import make_params, operating_point
from usc_spectra.usc_spectra.numerics import EigDecomposition, sym_eigh


class TestFullHamiltonian(unittest.TestCase):
	def test_symmetric(self):
		matrix = build_full_hamiltonian(make_params(0.3, 0.1, 0.8), 10).entries
		self.assertEqual(matrix.shape, (40, 40))
		np.testing.assert_array_equal(matrix, matrix.T)

	def test_decoupled_spectrum(self):
		values = sym_eigh(build_full_hamiltonian(make_params(0.25, 0.0, 0.0), 2)).values
		np.testing.assert_allclose(values, [0.25, 0.5, 0.5, 0.75, 1.25, 1.5, 1.5, 1.75], atol=1e-14)

	def test_pure_bias(self):
		values = sym_eigh(build_full_hamiltonian(make_params(0.0, 0.2, 0.0), 2)).values
		np.testing.assert_allclose(values, [0.3, 0.5, 0.5, 0.7, 1.3, 1.5, 1.5, 1.7], atol=1e-14)

	def test_coupling_entries(self):
		matrix = build_full_hamiltonian(make_params(0.0, 0.2, 0.5), 3).entries
		# bias only touches the diagonal: 1/2 - (0.2/2) * 2
		self.assertAlmostEqual(matrix[0, 0], 0.3, places=15)
		# <k=1, EE| H |k=0, EE> = lambda * sqrt(1) * 2
		self.assertEqual(matrix[4, 0], 1.0)
		# <k=2, GG| H |k=1, GG> = lambda * sqrt(2) * (-2)
		self.assertAlmostEqual(matrix[11, 7], -math.sqrt(2.0), places=15)
		self.assertEqual(matrix[5, 1], 0.0)

	def test_dimension_limits(self):
		with self.assertRaises(SizeError):
			build_full_hamiltonian(make_params(0.25, 0.0, 0.5), 2049)
		with self.assertRaises(ParameterDomainError):
			build_full_hamiltonian(make_params(0.25, 0.0, 0.5), 1)


class TestTruncationConfig(unittest.TestCase):
	def test_defaults(self):
		cfg = TruncationConfig()
		self.assertEqual(cfg.as_dict(), {"n_trunc": 16, "tol": 1e-8, "n_levels": 8, "n_max_cap": 256})

	def test_rejects_invalid(self):
		for kwargs in (
			{"n_trunc": 1, "n_levels": 1},
			{"tol": 0.0},
			{"tol": math.nan},
			{"n_levels": 0},
			{"n_levels": 20},
			{"n_trunc": 512},
			{"n_trunc": True},
			{"n_trunc": 16.0},
		):
			with self.assertRaises(ParameterDomainError, msg=kwargs):
				TruncationConfig(**kwargs)


class TestExactSpectrum(unittest.TestCase):
	def test_decoupled_converges_at_first_doubling(self):
		p = operating_point(4.0, 0.0, 0.0)
		result = exact_spectrum(p, TruncationConfig())
		self.assertTrue(result.converged)
		self.assertEqual(result.n_trunc_used, 32)
		self.assertLessEqual(result.max_shift, 1e-12)
		self.assertAlmostEqual(result.eigenvalues[0], 0.25, places=12)
		self.assertEqual(result.eigenvectors.shape, (128, 128))

	def test_strong_coupling_converges(self):
		result = exact_spectrum(operating_point(4.0, 0.0, 1.0), TruncationConfig(tol=1e-8, n_levels=8))
		self.assertTrue(result.converged)
		self.assertLessEqual(result.n_trunc_used, 256)
		self.assertLessEqual(result.max_shift, 1e-8)
		self.assertTrue(np.all(np.diff(result.eigenvalues) >= 0))

	def test_reports_non_convergence(self):
		cfg = TruncationConfig(n_trunc=16, n_max_cap=32)
		with self.assertLogs("usc_spectra.usc_spectra.exact_diag", level="WARNING"):
			result = exact_spectrum(operating_point(4.0, 0.0, 3.0), cfg)
		self.assertFalse(result.converged)
		self.assertEqual(result.n_trunc_used, 32)
		self.assertTrue(math.isfinite(result.max_shift))
		self.assertGreater(result.max_shift, cfg.tol)
		self.assertEqual(result.convergence()["converged"], False)

	def test_cap_equal_to_start(self):
		result = exact_spectrum(operating_point(4.0, 0.0, 0.5), TruncationConfig(n_trunc=16, n_max_cap=16))
		self.assertFalse(result.converged)
		self.assertIsNone(result.convergence()["max_shift"])
		self.assertEqual(result.shift_history, ())

	def test_keeps_shift_per_doubling(self):
		result = exact_spectrum(operating_point(4.0, 0.0, 1.0), TruncationConfig(tol=1e-8, n_levels=8))
		doublings = int(round(math.log2(result.n_trunc_used / 16)))
		self.assertEqual(len(result.shift_history), doublings)
		self.assertEqual(result.shift_history[-1], result.max_shift)
		self.assertGreater(result.shift_history[0], 1e-8)

	def test_warns_when_shift_grows(self):
		staged = [
			EigDecomposition(values=np.array([value]), vectors=np.eye(1)) for value in (0.0, 0.1, 0.4, 0.4)
		]
		cfg = TruncationConfig(n_trunc=2, n_levels=1, tol=1e-9, n_max_cap=16)
		with (
			mock.patch("usc_spectra.usc_spectra.exact_diag.sym_eigh", side_effect=staged),
			self.assertLogs("usc_spectra.usc_spectra.exact_diag", level="WARNING") as logs,
		):
			result = exact_spectrum(operating_point(4.0, 0.0, 0.2), cfg)
		self.assertTrue(result.converged)
		self.assertEqual(result.n_trunc_used, 16)
		np.testing.assert_allclose(result.shift_history, [0.1, 0.3, 0.0], atol=1e-15)
		self.assertFalse(result.shifts_non_increasing)
		self.assertEqual(len(logs.records), 1)
		self.assertIn("shift grew", logs.output[0])

	def test_shift_order(self):
		base = {"eigenvalues": np.zeros(1), "eigenvectors": np.eye(1), "converged": True, "n_trunc_used": 64}
		self.assertTrue(ExactSpectrum(**base, max_shift=0.0, shift_history=(0.5, 0.1, 0.0)).shifts_non_increasing)
		self.assertFalse(ExactSpectrum(**base, max_shift=0.2, shift_history=(0.1, 0.2)).shifts_non_increasing)


class TestParity(unittest.TestCase):
	def test_commutes_at_zero_bias(self):
		n_trunc = 8
		matrix = build_full_hamiltonian(make_params(0.3, 0.0, 0.7), n_trunc).entries
		parity = parity_operator(n_trunc)
		self.assertLessEqual(np.max(np.abs(parity @ matrix - matrix @ parity)), 1e-12)
		np.testing.assert_array_equal(parity @ parity, np.eye(4 * n_trunc))

	def test_breaks_with_bias(self):
		n_trunc = 4
		matrix = build_full_hamiltonian(make_params(0.3, 0.2, 0.7), n_trunc).entries
		parity = parity_operator(n_trunc)
		self.assertGreater(np.max(np.abs(parity @ matrix - matrix @ parity)), 0.1)

	def test_decoupled_ground_is_even(self):
		n_trunc = 2
		decomposition = sym_eigh(build_full_hamiltonian(make_params(0.25, 0.0, 0.0), n_trunc))
		self.assertAlmostEqual(parity_expectation(decomposition.vectors[:, 0], n_trunc), 1.0, places=12)

	def test_lowest_states_have_definite_parity(self):
		n_trunc = 64
		for lam in (0.0, 0.3, 0.5):
			decomposition = sym_eigh(build_full_hamiltonian(operating_point(4.0, 0.0, lam), n_trunc))
			parity = parity_expectation(decomposition.vectors[:, 0], n_trunc)
			self.assertAlmostEqual(abs(parity), 1.0, places=8, msg=lam)

	def test_mixed_vector(self):
		v = np.array([1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0]) / math.sqrt(3.0)
		self.assertAlmostEqual(parity_expectation(v, 2), 2.0 / 3.0, places=14)

	def test_matches_operator(self):
		rng = np.random.default_rng(29)
		v = rng.normal(size=24)
		self.assertAlmostEqual(parity_expectation(v, 6), float(v @ parity_operator(6) @ v), places=12)

	def test_rejects_wrong_length(self):
		with self.assertRaises(ParameterDomainError):
			parity_expectation(np.ones(7), 2)


class TestCompare(unittest.TestCase):
	def test_decoupled_point_agrees(self):
		p_base = operating_point(4.0, 0.0, 0.0)
		for scheme in ("literal", "dressed", "hf"):
			rows = compare_adiabatic_exact(p_base, 0.0, [0.0], 8, scheme=scheme)
			self.assertEqual(len(rows), 8)
			self.assertEqual([row["level"] for row in rows], list(range(8)))
			for row in rows:
				self.assertLessEqual(row["abs_dev"], 1e-10, (scheme, row))
				self.assertTrue(row["converged"])
				self.assertEqual(row["lambda_over_omega0"], 0.0)

	def test_row_shape(self):
		rows = compare_adiabatic_exact(operating_point(4.0, 0.0, 0.0), math.pi / 6, [0.0, 0.4], 2)
		self.assertEqual(len(rows), 4)
		self.assertEqual(
			set(rows[0]),
			{
				"lambda_over_omega0",
				"level",
				"adiabatic",
				"exact",
				"abs_dev",
				"rel_dev",
				"converged",
				"n_trunc_used",
				"max_shift",
			},
		)
		self.assertEqual([row["lambda_over_omega0"] for row in rows], [0.0, 0.0, 0.4, 0.4])
		self.assertAlmostEqual(rows[2]["rel_dev"], rows[2]["abs_dev"] / abs(rows[2]["exact"]), places=14)

	def test_hf_unavailable_in_double_well(self):
		rows = compare_adiabatic_exact(operating_point(4.0, 0.0, 0.0), 0.0, [0.5], 2, scheme="hf")
		for row in rows:
			self.assertIsNone(row["adiabatic"])
			self.assertIsNone(row["abs_dev"])
			self.assertIsNotNone(row["exact"])

	def test_dressed_tracks_exact(self):
		rows = compare_adiabatic_exact(operating_point(4.0, 0.0, 0.0), 0.0, [0.25, 0.75, 1.5], 1, scheme="dressed")
		for row in rows:
			self.assertLess(row["abs_dev"], 0.05, row)

	def test_rejects_bad_arguments(self):
		p_base = operating_point(4.0, 0.0, 0.0)
		with self.assertRaises(ParameterDomainError):
			compare_adiabatic_exact(p_base, 0.0, [0.0], 2, scheme="exact")
		with self.assertRaises(ParameterDomainError):
			compare_adiabatic_exact(p_base, 0.0, [0.0], 0)
		with self.assertRaises(ParameterDomainError):
			compare_adiabatic_exact(p_base, 0.0, [0.3, 0.1], 2)

	def test_adiabatic_energies_sorted(self):
		energies = adiabatic_energies(operating_point(4.0, math.pi / 4, 0.8), 6, "literal")
		self.assertEqual(len(energies), 6)
		self.assertEqual(energies, sorted(energies))
