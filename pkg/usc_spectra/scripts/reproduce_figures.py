#!/usr/bin/env python3
"""
Regenerate the figure data in one go: the four spectrum panels
(theta = 0, pi/6, pi/4, pi/3 at hbar*omega0/E_q = 4), the adiabatic vs exact
comparison, and the high-frequency potential and stability scans.
Run with: python -m usc_spectra.scripts.reproduce_figures [output_dir]
"""

import math
import os
import sys

from usc_spectra.usc_spectra.cli import run_compare, run_potentials, run_spectrum, run_stability
from usc_spectra.usc_spectra.run_config.run_config import RunConfig
from usc_spectra.utils import configure_logging

PANELS = {
	"theta_0": 0.0,
	"theta_pi_6": math.pi / 6,
	"theta_pi_4": math.pi / 4,
	"theta_pi_3": math.pi / 3,
}


def reproduce_all(output_dir="./figures", threads=1):
	"""Write every figure data set under output_dir; returns {name: summary}."""
	jobs = {}
	for name, theta in PANELS.items():
		jobs[f"spectrum_{name}"] = (
			run_spectrum,
			RunConfig(mode="spectrum", theta=theta, steps=101, n_max=3, formats=["csv", "json", "svg"]),
		)
	jobs["compare_literal"] = (
		run_compare,
		RunConfig(mode="compare", scheme="literal", formats=["csv", "json", "svg"]),
	)
	jobs["compare_dressed"] = (
		run_compare,
		RunConfig(mode="compare", scheme="dressed", formats=["csv", "json", "svg"]),
	)
	jobs["potentials_double_well"] = (
		run_potentials,
		RunConfig(mode="potentials", omega_over_eq=0.25, g_squared=2.25, formats=["csv", "json", "svg"]),
	)
	jobs["potentials_single_well"] = (
		run_potentials,
		RunConfig(mode="potentials", omega_over_eq=0.25, g_squared=0.5, formats=["csv", "json", "svg"]),
	)
	jobs["stability"] = (
		run_stability,
		RunConfig(mode="stability", omega_over_eq=0.25, g_squared=2.25, steps=48, formats=["csv", "json"]),
	)

	print(f"Running {len(jobs)} figure jobs into {output_dir}")
	summaries = {}
	errors = 0
	for name, (run, cfg) in jobs.items():
		cfg.output_dir = os.path.join(output_dir, name)
		cfg.threads = threads
		try:
			cfg.validate()
			os.makedirs(cfg.output_dir, exist_ok=True)
			summaries[name] = run(cfg)
			print(f"  {name}: {len(summaries[name]['files'])} files")
		except Exception as e:
			errors += 1
			print(f"  {name}: failed ({e})")

	print(f"\n{'=' * 60}")
	print("Summary:")
	print(f"  Jobs: {len(jobs)}")
	print(f"  Written: {len(summaries)}")
	print(f"  Errors: {errors}")
	for name in ("compare_literal", "compare_dressed"):
		if name in summaries:
			summary = summaries[name]["summary"]
			print(f"  {name}: max ground deviation {summary['max_abs_dev_ground']:.6g} hbar*omega0")
	return summaries


if __name__ == "__main__":
	configure_logging("WARNING")
	reproduce_all(sys.argv[1] if len(sys.argv) > 1 else "./figures")
