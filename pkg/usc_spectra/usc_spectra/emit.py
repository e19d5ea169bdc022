"""
Output writers: CSV tables, the run.json sidecar and SVG line plots.

Numbers are written with 12 significant digits and LF line endings so that
repeated runs give byte-identical files.
"""

import csv
import json
import logging
import math
import os
import xml.etree.ElementTree as ET

import numpy as np

from usc_spectra import __version__

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
SVG_WIDTH = 640
SVG_HEIGHT = 480
SVG_MARGIN = 48
SVG_COLOURS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf")


def build_id():
	return f"v{__version__}"


def format_value(value):
	if value is None:
		return ""
	if isinstance(value, bool | np.bool_):
		return "true" if value else "false"
	if isinstance(value, int | np.integer):
		return str(int(value))
	if isinstance(value, float | np.floating):
		value = float(value)
		if not math.isfinite(value):
			return ""
		if value == 0.0:
			return "0"
		return format(value, ".12g")
	return str(value)


def write_csv(path, header, rows):
	with open(path, "w", encoding="utf-8", newline="") as handle:
		writer = csv.writer(handle, lineterminator="\n")
		writer.writerow(header)
		for row in rows:
			writer.writerow([format_value(value) for value in row])
	logger.info("Wrote %s", path)
	return path


def json_ready(value):
	"""Plain JSON types; non-finite floats become null."""
	if isinstance(value, dict):
		return {str(key): json_ready(item) for key, item in value.items()}
	if isinstance(value, list | tuple | np.ndarray):
		return [json_ready(item) for item in value]
	if isinstance(value, bool | np.bool_):
		return bool(value)
	if isinstance(value, int | np.integer):
		return int(value)
	if isinstance(value, float | np.floating):
		value = float(value)
		return value if math.isfinite(value) else None
	return value


def write_json(path, payload):
	text = json.dumps(json_ready(payload), indent=2, sort_keys=True, allow_nan=False)
	with open(path, "w", encoding="utf-8", newline="\n") as handle:
		handle.write(text + "\n")
	logger.info("Wrote %s", path)
	return path


def run_sidecar(config_echo, results, convergence=None):
	return {
		"schema": SCHEMA_VERSION,
		"build": build_id(),
		"config": config_echo,
		"convergence": convergence,
		"results": results,
	}


def write_svg(path, series, title="", x_label="", y_label=""):
	"""
	One polyline per series.

	Args:
		series: ordered mapping name -> [(x, y), ...]; non-finite points are skipped
	"""
	points = [(x, y) for data in series.values() for x, y in data if _finite(x) and _finite(y)]
	x_low, x_high = _span([x for x, _ in points])
	y_low, y_high = _span([y for _, y in points])

	def to_canvas(x, y):
		cx = SVG_MARGIN + (x - x_low) / (x_high - x_low) * (SVG_WIDTH - 2 * SVG_MARGIN)
		cy = SVG_HEIGHT - SVG_MARGIN - (y - y_low) / (y_high - y_low) * (SVG_HEIGHT - 2 * SVG_MARGIN)
		return f"{cx:.3f},{cy:.3f}"

	root = ET.Element(
		"svg",
		{
			"xmlns": "http://www.w3.org/2000/svg",
			"width": str(SVG_WIDTH),
			"height": str(SVG_HEIGHT),
			"viewBox": f"0 0 {SVG_WIDTH} {SVG_HEIGHT}",
		},
	)
	ET.SubElement(root, "title").text = title
	ET.SubElement(
		root,
		"rect",
		{
			"x": str(SVG_MARGIN),
			"y": str(SVG_MARGIN),
			"width": str(SVG_WIDTH - 2 * SVG_MARGIN),
			"height": str(SVG_HEIGHT - 2 * SVG_MARGIN),
			"fill": "none",
			"stroke": "#444444",
		},
	)
	x_text = ET.SubElement(root, "text", {"x": str(SVG_WIDTH // 2), "y": str(SVG_HEIGHT - 12)})
	x_text.text = f"{x_label} [{format_value(x_low)}, {format_value(x_high)}]"
	y_text = ET.SubElement(root, "text", {"x": "8", "y": str(SVG_MARGIN - 12)})
	y_text.text = f"{y_label} [{format_value(y_low)}, {format_value(y_high)}]"

	for index, (name, data) in enumerate(series.items()):
		coordinates = " ".join(to_canvas(x, y) for x, y in data if _finite(x) and _finite(y))
		ET.SubElement(
			root,
			"polyline",
			{
				"data-series": str(name),
				"points": coordinates,
				"fill": "none",
				"stroke": SVG_COLOURS[index % len(SVG_COLOURS)],
				"stroke-width": "1.5",
			},
		)

	ET.indent(root)
	with open(path, "w", encoding="utf-8", newline="\n") as handle:
		handle.write(ET.tostring(root, encoding="unicode") + "\n")
	logger.info("Wrote %s", path)
	return path


def ensure_output_dir(path):
	os.makedirs(path, exist_ok=True)
	return path


def _span(values):
	if not values:
		return 0.0, 1.0
	low, high = float(min(values)), float(max(values))
	if high == low:
		pad = abs(low) * 0.05 or 1.0
		return low - pad, high + pad
	return low, high


def _finite(value):
	return value is not None and math.isfinite(value)
