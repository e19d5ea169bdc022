app_name = "usc_spectra"
app_title = "USC Spectra"
app_publisher = "usc-spectra contributors"
app_description = "Spectra of two flux qubits ultrastrongly coupled to a harmonic oscillator"
app_license = "mit"

# Run modes
# ---------
# Each CLI mode resolves to a dotted path taking a RunConfig

run_modes = {
	"spectrum": "usc_spectra.usc_spectra.cli.run_spectrum",
	"compare": "usc_spectra.usc_spectra.cli.run_compare",
	"potentials": "usc_spectra.usc_spectra.cli.run_potentials",
	"stability": "usc_spectra.usc_spectra.cli.run_stability",
	"overlaps": "usc_spectra.usc_spectra.cli.run_overlaps",
	"exact": "usc_spectra.usc_spectra.cli.run_exact",
}

# Output files
# ------------
# Files each mode may write (csv/svg depend on --formats; run.json on json)

mode_outputs = {
	"spectrum": ["spectrum.csv", "spectrum.svg", "run.json"],
	"compare": ["compare.csv", "compare.svg", "run.json"],
	"potentials": ["potentials.csv", "wells.csv", "potentials.svg", "run.json"],
	"stability": ["stability_scan.csv", "stability.svg", "run.json"],
	"overlaps": ["overlaps.csv", "overlaps.svg", "run.json"],
	"exact": ["exact.csv", "exact.svg", "run.json"],
}
