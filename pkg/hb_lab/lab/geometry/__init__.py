"""Numerical probes of the local geometry around the minimizer set."""

from .probes import (
    RegionSamples,
    eb_constant_estimate,
    hessian_normal_spectrum,
    local_equivalence_report,
    pl_constant_estimate,
    probe_region,
    qg_constant_estimate,
    qsc_constant_estimate,
)
from .sampling import sample_region
