"""Tail-slope rate estimation with an optional polynomial prefactor."""

import math
from typing import Optional, Sequence, Tuple, Union

import numpy as np

from ..model import (
    GridKind,
    InsufficientDataError,
    InsufficientDecayError,
    InvalidSpecError,
    RateEstimate,
    TailWindow,
    Verdict,
    VerdictStatus,
)

DEFAULT_LO = 1e-11
DEFAULT_HI = 1e-4
MIN_POINTS = 10
PREFACTOR_DEGREES = (0, 1, 2)
TIE_TOLERANCE = 1e-12


def tail_window(series: Sequence[float], lo: float = DEFAULT_LO, hi: float = DEFAULT_HI) -> TailWindow:
    """Longest contiguous index range whose values lie in [lo, hi].

    Ties go to the earliest range.

    Raises:
        InvalidSpecError: If not 0 < lo < hi
        InsufficientDecayError: If no value lies in the band
    """
    if not 0 < lo < hi:
        raise InvalidSpecError(f'need 0 < lo < hi, got lo={lo}, hi={hi}')
    s = np.asarray(series, dtype=float)
    inside = np.concatenate([[False], (s >= lo) & (s <= hi), [False]])
    edges = np.flatnonzero(np.diff(inside.astype(np.int8)))
    if len(edges) == 0:
        raise InsufficientDecayError(f'no value of the series lies in [{lo:.3g}, {hi:.3g}]')
    starts, stops = edges[0::2], edges[1::2]
    best = int(np.argmax(stops - starts))
    return TailWindow(lo=int(starts[best]), hi=int(stops[best]) - 1)


def _fit(grid: np.ndarray, log_s: np.ndarray, log_poly: np.ndarray, degree: int) -> Tuple[float, float, float]:
    """Least squares of log s - p log_poly = c + slope * grid; returns (slope, intercept, r_squared)."""
    target = log_s - degree * log_poly
    design = np.stack([np.ones_like(grid), grid], axis=1)
    (intercept, slope), *_ = np.linalg.lstsq(design, target, rcond=None)
    residual = log_s - (intercept + slope * grid + degree * log_poly)
    total = np.sum((log_s - np.mean(log_s))**2)
    r2 = 1.0 - float(np.sum(residual**2)) / float(total) if total > 0 else 1.0
    return float(slope), float(intercept), min(max(r2, 0.0), 1.0)


def estimate_rate(series: Sequence[float],
                  grid_kind: Union[GridKind, str] = GridKind.PER_ITERATION,
                  step: Optional[float] = None,
                  allow_prefactor: bool = True,
                  lo: float = DEFAULT_LO,
                  hi: float = DEFAULT_HI,
                  window: Optional[Tuple[int, int]] = None) -> RateEstimate:
    """Fit the asymptotic decay rate of a positive series.

    Per iteration the model is log s_n = c + n log(rho) + p log(n + 1); per unit time it is
    log s(t) = c - r t + p log(1 + t) with t = n * step. With ``allow_prefactor`` each
    p in {0, 1, 2} is fitted and the best r^2 wins (smaller p on ties); otherwise p = 0.

    Args:
        series: Decaying positive series (distances or function gaps)
        grid_kind: Per-iteration or per-unit-time sampling
        step: Time step of a per-unit-time series
        allow_prefactor: Fit a polynomial prefactor
        lo: Lower edge of the value band used to locate the tail window
        hi: Upper edge of the value band. A band holding fewer than 10 points is widened upward one decade
            at a time, up to the largest value of the series
        window: Explicit inclusive index range, overrides the band

    Returns:
        RateEstimate with rho (per iteration) or r (per unit time)

    Raises:
        InsufficientDecayError: If no point lies in the band
        InsufficientDataError: If the window holds fewer than 10 points
    """
    grid_kind = GridKind(grid_kind)
    if grid_kind == GridKind.PER_UNIT_TIME and not (step is not None and step > 0):
        raise InvalidSpecError('a per-unit-time series needs a positive step')
    s = np.asarray(series, dtype=float)
    if window is None:
        win = tail_window(s, lo, hi)
        top = float(np.max(s[np.isfinite(s)], initial=hi))
        while win.size < MIN_POINTS and hi < top:
            hi *= 10
            win = tail_window(s, lo, hi)
    else:
        win = TailWindow(lo=int(window[0]), hi=int(window[1]))
        if not 0 <= win.lo <= win.hi < len(s):
            raise InvalidSpecError(f'window [{win.lo}, {win.hi}] is outside the series of length {len(s)}')
    if win.size < MIN_POINTS:
        raise InsufficientDataError(f'tail window [{win.lo}, {win.hi}] holds {win.size} points, '
                                    f'need at least {MIN_POINTS}')
    tail = s[win.lo:win.hi + 1]
    if np.any(~(tail > 0)):
        raise InsufficientDataError('series must be positive inside the tail window')

    n = np.arange(win.lo, win.hi + 1, dtype=float)
    if grid_kind == GridKind.PER_ITERATION:
        grid, log_poly = n, np.log(n + 1)
    else:
        grid = n * step
        log_poly = np.log1p(grid)
    log_s = np.log(tail)

    best = None
    for degree in (PREFACTOR_DEGREES if allow_prefactor else (0, )):
        slope, intercept, r2 = _fit(grid, log_s, log_poly, degree)
        if best is None or r2 > best[3] + TIE_TOLERANCE:
            best = (degree, slope, intercept, r2)
    degree, slope, intercept, r2 = best

    rate = math.exp(slope) if grid_kind == GridKind.PER_ITERATION else -slope
    return RateEstimate(
        rate=rate,
        grid_kind=grid_kind,
        prefactor_degree=degree,
        r_squared=r2,
        window=win,
        step=step if grid_kind == GridKind.PER_UNIT_TIME else None,
        intercept=intercept,
    )


def halve_exponent(estimate: RateEstimate) -> float:
    """Distance-equivalent rate of a function-gap fit: sqrt(rho) per iteration, r / 2 per unit time."""
    if estimate.grid_kind == GridKind.PER_ITERATION:
        return math.sqrt(estimate.rate)
    return 0.5 * estimate.rate


def compare_to_theory(estimate: RateEstimate, theory: float, eps: float = 0.02, min_r_squared: float = 0.99) -> Verdict:
    """Pass iff |rate - theory| <= eps and r^2 >= min_r_squared."""
    if not eps > 0:
        raise InvalidSpecError(f'eps={eps} must be positive')
    deviation = abs(estimate.rate - theory)
    details = (f'fitted {estimate.rate:.6g} vs theory {theory:.6g} (|diff|={deviation:.3g}, eps={eps:.3g}), '
               f'r2={estimate.r_squared:.6f}, p={estimate.prefactor_degree}, '
               f'window=[{estimate.window.lo}, {estimate.window.hi}]')
    problems = []
    if deviation > eps:
        problems.append('rate outside tolerance')
    if estimate.r_squared < min_r_squared:
        problems.append('poor fit')
    if problems:
        return Verdict(status=VerdictStatus.FAIL, details=f'{details}; {", ".join(problems)}')
    return Verdict(status=VerdictStatus.PASS, details=details)
