"""Sampled estimates of the PL, quadratic growth, error bound and quasi-strong convexity constants."""

from typing import List, Optional, Sequence

import numpy as np

from ...utils import get_logger
from ..linalg import jacobi_eigh
from ..model import (
    DegenerateRegionError,
    DimensionError,
    GeometryReport,
    NormalSpectrum,
    PreconditionError,
    Region,
)
from ..objectives import Objective
from ..objectives.base import ArrayLike
from .sampling import MIN_SAMPLES, sample_region

logger = get_logger()

GAP_FLOOR = 1e-14
DISTANCE_FLOOR = 1e-9
KERNEL_RTOL = 1e-8
NEAR_MIN_GRAD = 1e-8


class RegionSamples:
    """Oracle values at the samples of a region, evaluated in batch and shared by the estimators."""

    def __init__(self, obj: Objective, region: Region, n_samples: int, seed: int):
        if n_samples < MIN_SAMPLES:
            raise PreconditionError(f'n_samples={n_samples} is below the minimum {MIN_SAMPLES}')
        if region.dim != obj.dim:
            raise DimensionError(f'region has dimension {region.dim}, objective has {obj.dim}')
        self.obj = obj
        self.region = region
        self.seed = seed
        self.x = sample_region(region, n_samples, seed)
        self.gap = obj.value(self.x) - obj.min_value
        self.grad = obj.grad(self.x)
        self._proj = None

    def __len__(self) -> int:
        return len(self.x)

    @property
    def projection(self) -> np.ndarray:
        if self._proj is None:
            self._proj = self.obj.project(self.x)
        return self._proj

    @property
    def offset(self) -> np.ndarray:
        """x - proj_M(x)."""
        return self.x - self.projection

    def pl(self) -> float:
        keep = self.gap >= GAP_FLOOR
        ratio = np.sum(self.grad**2, axis=1) / np.where(keep, 2 * self.gap, 1.0)
        return _infimum(ratio, keep, 'pl')

    def qg(self) -> float:
        d = np.linalg.norm(self.offset, axis=1)
        keep = d >= DISTANCE_FLOOR
        return _infimum(2 * self.gap / np.where(keep, d * d, 1.0), keep, 'qg')

    def eb(self) -> float:
        d = np.linalg.norm(self.offset, axis=1)
        keep = d >= DISTANCE_FLOOR
        return _infimum(np.linalg.norm(self.grad, axis=1) / np.where(keep, d, 1.0), keep, 'eb')

    def qsc(self) -> float:
        diff = self.offset
        d2 = np.sum(diff * diff, axis=1)
        keep = np.sqrt(d2) >= DISTANCE_FLOOR
        f_y = self.obj.value(self.projection) - self.obj.min_value
        numer = 2 * (np.sum(self.grad * diff, axis=1) - self.gap + f_y)
        return _infimum(numer / np.where(keep, d2, 1.0), keep, 'qsc')


def _infimum(ratio: np.ndarray, keep: np.ndarray, name: str) -> float:
    if not np.any(keep):
        raise DegenerateRegionError(f'every sample was skipped by the {name} estimator')
    return float(np.min(ratio[keep]))


def pl_constant_estimate(obj: Objective, region: Region, n_samples: int = 100000, seed: int = 0) -> float:
    """inf |grad f|^2 / (2 (f - f*)) over the samples, skipping gaps below 1e-14."""
    return RegionSamples(obj, region, n_samples, seed).pl()


def qg_constant_estimate(obj: Objective, region: Region, n_samples: int = 100000, seed: int = 0) -> float:
    """inf 2 (f - f*) / d(x, M)^2, skipping d below 1e-9."""
    return RegionSamples(obj, region, n_samples, seed).qg()


def eb_constant_estimate(obj: Objective, region: Region, n_samples: int = 100000, seed: int = 0) -> float:
    """inf |grad f| / d(x, M)."""
    return RegionSamples(obj, region, n_samples, seed).eb()


def qsc_constant_estimate(obj: Objective, region: Region, n_samples: int = 100000, seed: int = 0) -> float:
    """inf 2 (<grad f(x), x - y> - f(x) + f(y)) / |x - y|^2 with y the projection of x."""
    return RegionSamples(obj, region, n_samples, seed).qsc()


def hessian_normal_spectrum(obj: Objective,
                            x_star: ArrayLike,
                            kernel_tol: Optional[float] = None,
                            grad_tol: float = NEAR_MIN_GRAD) -> NormalSpectrum:
    """Hessian eigenvalues at a minimizer split into the nonzero (normal) part and the kernel.

    Eigenvalues with |lambda| <= kernel_tol (default 1e-8 max |lambda|) count as kernel.

    Raises:
        PreconditionError: If |grad f(x_star)| exceeds ``grad_tol``
    """
    x_star = np.asarray(x_star, dtype=float)
    g_norm = float(np.linalg.norm(obj.grad(x_star)))
    if g_norm > grad_tol:
        raise PreconditionError(f'|grad f| = {g_norm:.3g} at the anchor exceeds {grad_tol:.3g}; '
                                f'the point is not near the minimizer set')
    eigs, _ = jacobi_eigh(obj.hess(x_star))
    tol = KERNEL_RTOL * float(np.max(np.abs(eigs))) if kernel_tol is None else kernel_tol
    nonzero = [float(lam) for lam in eigs if abs(lam) > tol]
    return NormalSpectrum(nonzero_eigs=nonzero, kernel_dim=len(eigs) - len(nonzero))


def probe_region(obj: Objective,
                 region: Region,
                 n_samples: int = 100000,
                 seed: int = 0,
                 anchor: Optional[ArrayLike] = None) -> GeometryReport:
    """All four constants on one region plus the Hessian spectrum at ``anchor``.

    The anchor defaults to the projection of the region center onto the minimizer set.
    """
    samples = RegionSamples(obj, region, n_samples, seed)
    anchor = obj.project(region.center) if anchor is None else np.asarray(anchor, dtype=float)
    spectrum = hessian_normal_spectrum(obj, anchor)
    report = GeometryReport(
        pl_const=samples.pl(),
        qg_const=samples.qg(),
        eb_const=samples.eb(),
        qsc_const=samples.qsc(),
        hess_nonzero_eigs=spectrum.nonzero_eigs,
        kernel_dim=spectrum.kernel_dim,
        region=region,
        samples=len(samples),
        seed=seed,
    )
    logger.info(f'{obj.kind.value} probe on {region.describe()}: pl={report.pl_const:.6g} '
                f'qg={report.qg_const:.6g} eb={report.eb_const:.6g} qsc={report.qsc_const:.6g}')
    return report


def local_equivalence_report(obj: Objective,
                             x_star: ArrayLike,
                             radii: Sequence[float] = (0.2, 0.1, 0.05),
                             n_samples: int = 100000,
                             seed: int = 0) -> List[GeometryReport]:
    """Probe balls of decreasing radius around a minimizer.

    Raises:
        PreconditionError: If x_star is not near the minimizer set or radii are not decreasing
    """
    radii = list(radii)
    if not radii or any(b >= a for a, b in zip(radii, radii[1:])):
        raise PreconditionError(f'radii must be a nonempty strictly decreasing list, got {radii}')
    x_star = np.asarray(x_star, dtype=float)
    hessian_normal_spectrum(obj, x_star)
    return [
        probe_region(obj, Region.ball(x_star.tolist(), r), n_samples=n_samples, seed=seed, anchor=x_star)
        for r in radii
    ]
