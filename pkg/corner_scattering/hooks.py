from . import __version__ as app_version

app_name = "corner_scattering"
app_title = "Corner Scattering"
app_publisher = "Corner Scattering Contributors"
app_description = "Transmission eigenfunctions, Herglotz scattering and corner far-field bounds"
app_license = "GNU GPL v3.0"

# Experiments
# -----------
# experiment id -> controller class, see controllers/experiment.py

experiments = {
	"E1": "corner_scattering.experiments.nonscattering.NonScatteringExperiment",
	"E2": "corner_scattering.experiments.corner_vanishing.CornerVanishingExperiment",
	"E3": "corner_scattering.experiments.farfield_floor.FarFieldFloorExperiment",
	"E4": "corner_scattering.experiments.cone_bound.ConeBoundExperiment",
}

# Contrast expressions
# --------------------
# usable from configuration documents as
# {"kind": "expression", "name": <key>, "params": {...}}

contrast_expressions = {
	"distance_to_point": "corner_scattering.geometry.contrast.distance_to_point",
	"gaussian_bump": "corner_scattering.geometry.contrast.gaussian_bump",
	"linear_ramp": "corner_scattering.geometry.contrast.linear_ramp",
}
