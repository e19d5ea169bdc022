"""
usc-spectra command line.

	usc-spectra <mode> [--theta R] [--omega-over-eq R] [--lambda-min R --lambda-max R --steps N]
	                   [--n-max N] [--tol R] [--paper-constants] [--formats csv,json,svg]
	                   [--out DIR] [--threads N] [--config FILE] ...

Every run_<mode> takes a validated RunConfig, writes its files into
cfg.output_dir and returns a summary dict. Exit codes: 0 success, 2 invalid
configuration or parameters, 3 non-convergence or numeric failure, 4 I/O
failure.
"""

import argparse
import functools
import importlib
import logging
import math
import os
import sys
import time

from usc_spectra import __version__, hooks
from usc_spectra.config import load_config_file, resolve_settings
from usc_spectra.usc_spectra import emit
from usc_spectra.usc_spectra.displaced_basis import (
	overlap_matrix,
	spectrum_sweep,
	well_overlap_record,
	well_potential,
)
from usc_spectra.usc_spectra.exact_diag import compare_adiabatic_exact, exact_spectrum
from usc_spectra.usc_spectra.exceptions import (
	ConfigError,
	InstabilityError,
	NumericError,
	ParameterDomainError,
	SizeError,
)
from usc_spectra.usc_spectra.hf_qubit import (
	renormalized_frequencies,
	sample_potentials,
	stability,
	stability_scan,
)
from usc_spectra.usc_spectra.model import WellLabel, params_from_g
from usc_spectra.usc_spectra.parallel import default_workers, parallel_map
from usc_spectra.usc_spectra.run_config.run_config import MODES, RunConfig
from usc_spectra.utils import configure_logging, log_error

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NOT_CONVERGED = 3
EXIT_IO = 4

SPECTRUM_HEADER = ["lambda_over_omega0", "n", "branch", "energy_over_omega0"]
COMPARE_HEADER = ["lambda_over_omega0", "level", "adiabatic", "exact", "abs_dev"]
POTENTIALS_HEADER = ["x", "branch", "V_exact", "V_approx"]
WELLS_HEADER = ["x_prime", "well", "V"]
STABILITY_SCAN_HEADER = ["g_squared", "ratio", "stable", "n_minima", "barrier_height"]
EXACT_HEADER = ["lambda_over_omega0", "level", "energy_over_omega0"]


def run_spectrum(cfg):
	table = spectrum_sweep(
		cfg.base_params(),
		cfg.theta,
		cfg.lambda_grid(),
		cfg.n_max,
		scheme=cfg.scheme,
		paper_constants=cfg.paper_constants,
		workers=_workers(cfg),
	)
	files = []
	if "csv" in cfg.formats:
		rows = [(lam, n, branch.value, energy) for lam, n, branch, energy in table.rows()]
		files.append(emit.write_csv(_path(cfg, "spectrum.csv"), SPECTRUM_HEADER, rows))
	if "svg" in cfg.formats:
		series = {f"n={n} {branch.value}": data for (n, branch), data in table.series().items()}
		files.append(
			emit.write_svg(
				_path(cfg, "spectrum.svg"), series, "Adiabatic spectrum", "lambda/hbar w0", "E/hbar w0"
			)
		)

	energies = [energy for _, _, _, energy in table.rows()]
	summary = {
		"grid_points": len(table.lambda_grid),
		"levels_per_point": len(table.levels[0]),
		"energy_min": min(energies),
		"energy_max": max(energies),
	}
	return _finish(cfg, files, summary)


def run_compare(cfg):
	rows = compare_adiabatic_exact(
		cfg.base_params(),
		cfg.theta,
		cfg.lambda_grid(),
		cfg.n_levels,
		scheme=cfg.scheme,
		paper_constants=cfg.paper_constants,
		cfg=cfg.truncation(),
		workers=_workers(cfg),
	)
	files = []
	if "csv" in cfg.formats:
		table = [
			(row["lambda_over_omega0"], row["level"], row["adiabatic"], row["exact"], row["abs_dev"])
			for row in rows
		]
		files.append(emit.write_csv(_path(cfg, "compare.csv"), COMPARE_HEADER, table))
	if "svg" in cfg.formats:
		series = {}
		for row in rows:
			lam = row["lambda_over_omega0"]
			series.setdefault(f"exact {row['level']}", []).append((lam, row["exact"]))
			if row["adiabatic"] is not None:
				series.setdefault(f"{cfg.scheme} {row['level']}", []).append((lam, row["adiabatic"]))
		files.append(
			emit.write_svg(
				_path(cfg, "compare.svg"), series, "Adiabatic vs exact", "lambda/hbar w0", "E/hbar w0"
			)
		)

	points = _grid_convergence(rows)
	deviations = [row["abs_dev"] for row in rows if row["abs_dev"] is not None]
	ground = [row["abs_dev"] for row in rows if row["level"] == 0 and row["abs_dev"] is not None]
	summary = {
		"max_abs_dev": max(deviations) if deviations else None,
		"max_abs_dev_ground": max(ground) if ground else None,
		"n_trunc_used": max(point["n_trunc_used"] for point in points),
	}
	print(f"max |adiabatic - exact| = {emit.format_value(summary['max_abs_dev'])} hbar*omega0")
	print(f"n_trunc_used = {summary['n_trunc_used']}")
	return _finish(cfg, files, summary, convergence=_convergence_record(points))


def run_potentials(cfg):
	p = cfg.hf_params()
	x_prime = cfg.x_grid()
	# x' = x sqrt(2 m w0 / hbar)
	scale = math.sqrt(2.0 * p.mass * p.omega0)
	hw = p.hbar_omega0
	profiles = sample_potentials(p, [value / scale for value in x_prime])

	files = []
	if "csv" in cfg.formats:
		rows = []
		for profile in profiles:
			for xp, exact, approx in zip(x_prime, profile.v_exact, profile.v_approx):
				rows.append((xp, profile.branch.value, exact / hw, approx / hw))
		files.append(emit.write_csv(_path(cfg, "potentials.csv"), POTENTIALS_HEADER, rows))

		wells = []
		for well in (WellLabel.MINUS, WellLabel.ZERO, WellLabel.PLUS):
			for xp in x_prime:
				wells.append((xp, well.value, well_potential(xp, well, p, cfg.paper_constants)))
		files.append(emit.write_csv(_path(cfg, "wells.csv"), WELLS_HEADER, wells))
	if "svg" in cfg.formats:
		series = {}
		for profile in profiles:
			series[f"{profile.branch.value} exact"] = list(zip(x_prime, profile.v_exact / hw))
			if profile.approx_available:
				series[f"{profile.branch.value} approx"] = list(zip(x_prime, profile.v_approx / hw))
		files.append(
			emit.write_svg(_path(cfg, "potentials.svg"), series, "Effective potentials", "x'", "V/hbar w0")
		)

	summary = {
		"g": p.g,
		"eq": p.eq,
		"approx_available": {profile.branch.value: profile.approx_available for profile in profiles},
		"double_well": stability(p).as_dict(),
	}
	return _finish(cfg, files, summary)


def run_stability(cfg):
	p = cfg.hf_params()
	report = stability(p)
	frequencies = renormalized_frequencies(p)

	boundary = p.mass * p.omega0**2 * p.eq / 4.0
	g_squared_grid = [2.0 * boundary * k / cfg.steps for k in range(1, cfg.steps + 1)]
	scan = stability_scan(p, g_squared_grid)

	files = []
	if "csv" in cfg.formats:
		rows = [
			(g_squared, item.ratio, item.stable, item.n_minima, item.barrier_height)
			for g_squared, item in zip(g_squared_grid, scan)
		]
		files.append(emit.write_csv(_path(cfg, "stability_scan.csv"), STABILITY_SCAN_HEADER, rows))
	if "svg" in cfg.formats:
		series = {
			"barrier_height": [
				(g_squared, item.barrier_height)
				for g_squared, item in zip(g_squared_grid, scan)
				if item.barrier_height is not None
			],
			"omega_minus_sq": [
				(g_squared, renormalized_frequencies(_with_g_squared(p, g_squared)).omega_minus_sq)
				for g_squared in g_squared_grid
			],
		}
		files.append(emit.write_svg(_path(cfg, "stability.svg"), series, "Stability scan", "g^2", "value"))

	summary = {
		**report.as_dict(),
		"g_squared": p.g**2,
		"omega_minus_sq": frequencies.omega_minus_sq,
		"omega_zero_sq": frequencies.omega_zero_sq,
		"omega_plus_sq": frequencies.omega_plus_sq,
		"boundary_g_squared": boundary,
	}
	return _finish(cfg, files, summary)


def run_overlaps(cfg):
	well_m, well_n = (WellLabel.parse(well) for well in cfg.wells)
	p = cfg.base_params(cfg.lambda_max)
	matrix = overlap_matrix(well_m, well_n, p, cfg.overlap_size)

	files = []
	if "csv" in cfg.formats:
		header = ["m"] + [f"n{n}" for n in range(cfg.overlap_size)]
		rows = [[m, *matrix[m]] for m in range(cfg.overlap_size)]
		files.append(emit.write_csv(_path(cfg, "overlaps.csv"), header, rows))
	if "svg" in cfg.formats:
		series = {f"m={m}": list(enumerate(matrix[m])) for m in range(cfg.overlap_size)}
		files.append(
			emit.write_svg(
				_path(cfg, "overlaps.svg"), series, f"<m_{well_m.value}|n_{well_n.value}>", "n", "overlap"
			)
		)

	summary = {
		"well_m": well_m.value,
		"well_n": well_n.value,
		"lambda_over_omega0": cfg.lambda_max,
		"matrix": matrix.tolist(),
		"diagonal": [
			well_overlap_record(n, well_m, n, well_n, p).as_dict() for n in range(cfg.overlap_size)
		],
	}
	return _finish(cfg, files, summary)


def run_exact(cfg):
	grid = cfg.lambda_grid()
	evaluate = functools.partial(_exact_point, p_theta=cfg.base_params(), truncation=cfg.truncation())
	points = parallel_map(evaluate, grid, workers=_workers(cfg))

	files = []
	if "csv" in cfg.formats:
		rows = [
			(lam, level, energy)
			for lam, (energies, _) in zip(grid, points)
			for level, energy in enumerate(energies)
		]
		files.append(emit.write_csv(_path(cfg, "exact.csv"), EXACT_HEADER, rows))
	if "svg" in cfg.formats:
		series = {}
		for lam, (energies, _) in zip(grid, points):
			for level, energy in enumerate(energies):
				series.setdefault(f"level {level}", []).append((lam, energy))
		files.append(
			emit.write_svg(_path(cfg, "exact.svg"), series, "Exact spectrum", "lambda/hbar w0", "E/hbar w0")
		)

	records = [{"lambda_over_omega0": lam, **record} for lam, (_, record) in zip(grid, points)]
	summary = {
		"eigenvalues": {emit.format_value(lam): energies for lam, (energies, _) in zip(grid, points)},
		"n_trunc_used": max(record["n_trunc_used"] for record in records),
	}
	return _finish(cfg, files, summary, convergence=_convergence_record(records))


def resolve_mode(mode):
	"""Run function registered for a mode in hooks.run_modes."""
	try:
		dotted = hooks.run_modes[mode]
	except KeyError as e:
		raise ConfigError(f"No run function registered for mode {mode!r}") from e
	module_name, _, attr = dotted.rpartition(".")
	return getattr(importlib.import_module(module_name), attr)


def build_parser():
	parser = argparse.ArgumentParser(
		prog="usc-spectra",
		description="Spectra of two flux qubits coupled to a harmonic oscillator.",
	)
	parser.add_argument("mode", choices=MODES)
	parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
	parser.add_argument("--config", help="JSON file of settings; flags override it")
	parser.add_argument("--theta", type=float, help="mixing angle, tan(theta) = eps/delta, in [0, pi/2)")
	parser.add_argument("--omega-over-eq", type=float, help="hbar*omega0 / E_q")
	parser.add_argument("--lambda-min", type=float)
	parser.add_argument("--lambda-max", type=float)
	parser.add_argument("--steps", type=int, help="lambda grid points (g^2 points in stability mode)")
	parser.add_argument("--n-max", type=int, help="highest oscillator index in spectrum mode")
	parser.add_argument("--scheme", help="literal, dressed or hf (compare mode only)")
	parser.add_argument("--paper-constants", action="store_true", default=None)
	parser.add_argument("--n-trunc", type=int, help="initial Fock truncation")
	parser.add_argument("--n-levels", type=int, help="levels tracked for convergence and comparison")
	parser.add_argument("--n-max-cap", type=int, help="largest Fock truncation tried")
	parser.add_argument("--tol", type=float, help="convergence tolerance in hbar*omega0")
	parser.add_argument("--x-min", type=float, help="x' range for potentials mode")
	parser.add_argument("--x-max", type=float)
	parser.add_argument("--x-steps", type=int)
	parser.add_argument("--g-squared", type=float, help="g^2 for potentials and stability modes")
	parser.add_argument("--wells", help="two wells for overlaps mode, e.g. minus,zero")
	parser.add_argument("--overlap-size", type=int)
	parser.add_argument("--formats", help="comma separated subset of csv,json,svg")
	parser.add_argument("--out", dest="output_dir")
	parser.add_argument("--threads", type=int)
	parser.add_argument("--seed", type=int)
	parser.add_argument("--log-level", default="INFO")
	parser.add_argument("--log-file")
	return parser


def main(argv=None):
	args = build_parser().parse_args(argv)
	configure_logging(args.log_level, args.log_file)
	started = time.perf_counter()

	flags = {key: value for key, value in vars(args).items() if key not in ("config", "log_level", "log_file")}
	try:
		file_settings = load_config_file(args.config) if args.config else None
		cfg = RunConfig.from_settings(resolve_settings(file_settings, flags))
		emit.ensure_output_dir(cfg.output_dir)
		result = resolve_mode(cfg.mode)(cfg)
	except (ConfigError, ParameterDomainError, InstabilityError) as e:
		log_error(str(e), "Invalid configuration")
		return EXIT_CONFIG
	except (NumericError, SizeError) as e:
		log_error(str(e), "Numeric failure")
		return EXIT_NOT_CONVERGED
	except OSError as e:
		log_error(str(e), "Output error")
		return EXIT_IO

	logger.info("%s run finished in %.3f s", cfg.mode, time.perf_counter() - started)
	if result.get("converged") is False:
		log_error("exact spectrum did not converge on every grid point", "Not converged")
		return EXIT_NOT_CONVERGED
	return EXIT_OK


def _finish(cfg, files, summary, convergence=None):
	if "json" in cfg.formats:
		sidecar = emit.run_sidecar(cfg.echo(), summary, convergence)
		files.append(emit.write_json(_path(cfg, "run.json"), sidecar))
	result = {"mode": cfg.mode, "files": files, "summary": summary}
	if convergence is not None:
		result["converged"] = convergence["converged"]
	return result


def _exact_point(lam, p_theta, truncation):
	spectrum = exact_spectrum(p_theta.with_lambda(lam), truncation)
	energies = [float(value) for value in spectrum.eigenvalues[: truncation.n_levels]]
	return energies, spectrum.convergence()


def _grid_convergence(rows):
	points = {}
	for row in rows:
		points.setdefault(
			row["lambda_over_omega0"],
			{
				"lambda_over_omega0": row["lambda_over_omega0"],
				"converged": row["converged"],
				"n_trunc_used": row["n_trunc_used"],
				"max_shift": row["max_shift"],
			},
		)
	return list(points.values())


def _convergence_record(points):
	return {"converged": all(point["converged"] for point in points), "grid": points}


def _with_g_squared(p, g_squared):
	return params_from_g(p.delta, p.epsilon, math.sqrt(g_squared), p.omega0, p.mass)


def _workers(cfg):
	return cfg.threads if cfg.threads is not None else default_workers()


def _path(cfg, name):
	return os.path.join(cfg.output_dir, name)


if __name__ == "__main__":
	sys.exit(main())
