"""
USC Spectra - API Wrapper
=========================

Re-exports the library operations from the nested package so scripts and
notebooks can import them from one place:

	from usc_spectra.api import make_params, spectrum_sweep, exact_spectrum
"""

from usc_spectra.usc_spectra.displaced_basis import (
	AdiabaticLevel,
	Branch,
	SpectrumTable,
	WellOverlap,
	adiabatic_level,
	adiabatic_levels,
	degeneracy_point_states,
	diagonal_overlap,
	displacement_overlap,
	dressed_levels,
	effective_qubit_hamiltonian,
	overlap_matrix,
	spectrum_sweep,
	well_overlap,
	well_overlap_record,
	well_potential,
)
from usc_spectra.usc_spectra.exact_diag import (
	ExactSpectrum,
	TruncationConfig,
	build_full_hamiltonian,
	compare_adiabatic_exact,
	exact_spectrum,
	parity_expectation,
)
from usc_spectra.usc_spectra.hf_qubit import (
	DoubleWellReport,
	PotentialBranch,
	PotentialProfile,
	RenormalizedFrequencies,
	approx_potential,
	effective_potential,
	hf_adiabatic_energies,
	hf_levels,
	qubit_energies_at_x,
	renormalized_frequencies,
	sample_potentials,
	stability,
	stability_scan,
)
from usc_spectra.usc_spectra.model import (
	ModelParams,
	QubitJointState,
	WellLabel,
	make_params,
	operating_point,
	params_from_g,
)
from usc_spectra.usc_spectra.numerics import (
	EigDecomposition,
	SymmetricMatrix,
	laguerre_assoc,
	log_factorial,
	sym_eigh,
)

__all__ = [
	"AdiabaticLevel",
	"Branch",
	"DoubleWellReport",
	"EigDecomposition",
	"ExactSpectrum",
	"ModelParams",
	"PotentialBranch",
	"PotentialProfile",
	"QubitJointState",
	"RenormalizedFrequencies",
	"SpectrumTable",
	"SymmetricMatrix",
	"TruncationConfig",
	"WellLabel",
	"WellOverlap",
	"adiabatic_level",
	"adiabatic_levels",
	"approx_potential",
	"build_full_hamiltonian",
	"compare_adiabatic_exact",
	"degeneracy_point_states",
	"diagonal_overlap",
	"displacement_overlap",
	"dressed_levels",
	"effective_potential",
	"effective_qubit_hamiltonian",
	"exact_spectrum",
	"hf_adiabatic_energies",
	"hf_levels",
	"laguerre_assoc",
	"log_factorial",
	"make_params",
	"operating_point",
	"overlap_matrix",
	"parity_expectation",
	"params_from_g",
	"qubit_energies_at_x",
	"renormalized_frequencies",
	"sample_potentials",
	"spectrum_sweep",
	"stability",
	"stability_scan",
	"sym_eigh",
	"well_overlap",
	"well_overlap_record",
	"well_potential",
]
