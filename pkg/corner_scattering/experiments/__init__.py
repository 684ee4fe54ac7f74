from corner_scattering.experiments.commands import (
	CommandResult,
	cone_lt,
	fit,
	run_experiment,
	scatter,
	teig_disk,
	teig_scan,
)
from corner_scattering.experiments.cone_bound import ConeBoundExperiment, run_e4_cone_bound
from corner_scattering.experiments.config import ExperimentConfig, load_config
from corner_scattering.experiments.corner_vanishing import (
	CornerVanishingExperiment,
	run_e2_corner_vanishing,
)
from corner_scattering.experiments.farfield_floor import (
	FarFieldFloorExperiment,
	run_e3_farfield_floor,
)
from corner_scattering.experiments.nonscattering import (
	NonScatteringExperiment,
	run_e1_nonscattering,
)
