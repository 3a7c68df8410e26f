"""Time-allocation planning for two-target sensing on a vector Gaussian channel.

Estimates mutual information and the probability of total correct MAP
detections by Monte Carlo, sweeps time allocations under a fixed budget
t1 + t2 + t3 = T, and locates the information-optimal and
detection-optimal allocations (which need not agree).
"""

from .model import (
    ChannelParams,
    Allocation,
    InputSymbol,
    ScalingMatrix,
    MixtureModel,
    build_scaling_matrix,
    input_symbols,
    conditional_mean,
    build_mixture,
    log_density,
    check_allocation,
)
from .mc import SampleBatch, McEstimate, sample_mixture, entropy_mc, derive_seed
from .infotheory import (
    MiResult,
    conditional_entropy_bits,
    input_entropy_bits,
    mutual_information_vector,
    mutual_information_scalar,
    scalar_mixture,
    entropy_quadrature_1d,
    entropy_quadrature_3d,
    normalization_quadrature_3d,
)
from .detection import (
    ConfusionMatrix,
    PdResult,
    map_decide,
    pd_mc,
    bayes_risk,
    risk_from_confusion,
    scalar_map_pd,
    pd_closed_form_t3zero,
)
from .spectra import (
    SingularValues,
    singular_values_formula,
    singular_values_numeric,
    THIRD_SINGULAR_VALUE,
)
from .sweep import (
    SweepPoint,
    Argmax,
    SweepResult,
    ScanPoint,
    line_sweep,
    simplex_sweep,
    param_scan,
    classify_regime,
    simplex_lattice,
)

__version__ = "0.1.0"
