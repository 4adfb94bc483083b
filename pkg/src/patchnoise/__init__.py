"""patchnoise: surface electric-field noise modelling for trapped-ion data.

Simulate thermally activated fluctuator ensembles, convert sideband
thermometry into field-noise spectral densities, fit the empirical
temperature-scaling laws, evaluate the analytic activated-ensemble model,
and extrapolate across probe systems.
"""

__version__ = "0.1.0"

from .constants import SR88, PhysicalContext
from .dataset import NoiseDataset
from .dutta_horn import (DuttaHornParams, ResistivityCurve,
                         calibrated_spectrum, crossover_temperature,
                         ensemble_expectation_spectrum, johnson_prediction,
                         model_alpha, spectrum_integral)
from .errors import (DegenerateThermometryError, FitConvergenceError,
                     InputError, InsufficientDataError, NumericalError,
                     PatchNoiseError, QuadratureError, RankDeficiencyError,
                     ResourceLimitError)
from .extrapolation import (CantileverConfig, PatchStatistics, ScalingLaw,
                            cantilever_field_noise, dc_field_fluctuation,
                            load_comparison_constants, patch_product,
                            scale_noise)
from .fitting import (ArrheniusFit, FitOptions, TempScalingFit, fit_arrhenius,
                      fit_dataset, fit_temp_scaling, initial_guess)
from .fluctuators import (EnsembleConfig, FluctuatorEnsemble, TelegraphTrace,
                          ensemble_spectrum, sample_ensemble, switching_time,
                          switching_time_saturated, telegraph_trace)
from .reference import (ReferenceRow, ReferenceTable, load_reference_table,
                        synthetic_arrhenius_dataset,
                        synthetic_temp_scaling_dataset)
from .spectral import AlphaFit, PsdEstimate, estimate_psd, fit_alpha
from .thermometry import (SidebandPoint, SidebandSeries,
                          field_noise_from_heating, heating_rate,
                          phonon_number, phonon_number_error,
                          rescale_frequency)

__all__ = [
    "__version__",
    "SR88", "PhysicalContext", "NoiseDataset",
    "DuttaHornParams", "ResistivityCurve", "calibrated_spectrum",
    "crossover_temperature", "ensemble_expectation_spectrum",
    "johnson_prediction", "model_alpha", "spectrum_integral",
    "PatchNoiseError", "InputError", "DegenerateThermometryError",
    "InsufficientDataError", "ResourceLimitError", "NumericalError",
    "QuadratureError", "RankDeficiencyError", "FitConvergenceError",
    "CantileverConfig", "PatchStatistics", "ScalingLaw",
    "cantilever_field_noise", "dc_field_fluctuation",
    "load_comparison_constants", "patch_product", "scale_noise",
    "ArrheniusFit", "FitOptions", "TempScalingFit", "fit_arrhenius",
    "fit_dataset", "fit_temp_scaling", "initial_guess",
    "EnsembleConfig", "FluctuatorEnsemble", "TelegraphTrace",
    "ensemble_spectrum", "sample_ensemble", "switching_time",
    "switching_time_saturated", "telegraph_trace",
    "ReferenceRow", "ReferenceTable", "load_reference_table",
    "synthetic_arrhenius_dataset", "synthetic_temp_scaling_dataset",
    "AlphaFit", "PsdEstimate", "estimate_psd", "fit_alpha",
    "SidebandPoint", "SidebandSeries", "field_noise_from_heating",
    "heating_rate", "phonon_number", "phonon_number_error",
    "rescale_frequency",
]
