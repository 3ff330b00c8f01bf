"""Dense eigenvalues of small nonsymmetric matrices.

The matrix is first split into the diagonal blocks of its block-triangular form
(strongly connected components of its nonzero pattern). Blocks of size one and two
are solved in closed form; larger blocks are reduced to Hessenberg form by Householder
reflections and deflated by Wilkinson-shifted complex QR iteration.
"""

import cmath
import math
from typing import List, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from ..model import DimensionError, NumericalFailureError

MAX_DIM = 64
DEFLATION_TOL = 1e-12
ITERATIONS_PER_ROW = 100
EXCEPTIONAL_SHIFT_EVERY = 10


def eig2x2(a: complex, b: complex, c: complex, d: complex) -> Tuple[complex, complex]:
    """Eigenvalues of [[a, b], [c, d]]; exact double roots when the discriminant rounds to 0."""
    half_trace = 0.5 * (a + d)
    p = 0.5 * (a - d)
    disc = p * p + b * c
    if all(isinstance(z, (float, int)) or getattr(z, 'imag', 0.0) == 0.0 for z in (a, b, c, d)):
        half_trace, disc = float(np.real(half_trace)), float(np.real(disc))
        if disc >= 0:
            r = math.sqrt(disc)
            return complex(half_trace + r), complex(half_trace - r)
        r = math.sqrt(-disc)
        return complex(half_trace, r), complex(half_trace, -r)
    r = cmath.sqrt(disc)
    return half_trace + r, half_trace - r


def diagonal_blocks(a: np.ndarray) -> List[np.ndarray]:
    """Index sets of the irreducible diagonal blocks of a square matrix."""
    n_blocks, labels = connected_components(csr_matrix(a != 0), directed=True, connection='strong')
    return [np.flatnonzero(labels == k) for k in range(n_blocks)]


def hessenberg(a: np.ndarray) -> np.ndarray:
    """Unitarily similar upper Hessenberg matrix (complex)."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        h[k + 1:, :] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, :])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def _wilkinson_shift(h: np.ndarray, hi: int) -> complex:
    a, b, c, d = h[hi - 1, hi - 1], h[hi - 1, hi], h[hi, hi - 1], h[hi, hi]
    l1, l2 = eig2x2(complex(a), complex(b), complex(c), complex(d))
    return l1 if abs(l1 - d) <= abs(l2 - d) else l2


def _qr_step(h: np.ndarray, lo: int, hi: int, shift: complex) -> None:
    """One shifted QR step on the active window h[lo:hi+1, lo:hi+1], in place."""
    w = h[lo:hi + 1, lo:hi + 1]
    m = w.shape[0]
    diag = np.arange(m)
    w[diag, diag] -= shift
    rotations = []
    for k in range(m - 1):
        a, b = w[k, k], w[k + 1, k]
        r = math.hypot(abs(a), abs(b))
        c, s = (1.0 + 0j, 0j) if r == 0 else (a / r, b / r)
        g = np.array([[np.conj(c), np.conj(s)], [-s, c]])
        w[k:k + 2, k:] = g @ w[k:k + 2, k:]
        rotations.append(g)
    for k, g in enumerate(rotations):
        w[:k + 2, k:k + 2] = w[:k + 2, k:k + 2] @ g.conj().T
    w[diag, diag] += shift


def shifted_qr_eigvals(a: np.ndarray) -> np.ndarray:
    """Eigenvalues of one irreducible block by Hessenberg reduction and shifted QR."""
    n = a.shape[0]
    h = hessenberg(a)
    tol = DEFLATION_TOL * np.linalg.norm(a)
    eigs = np.empty(n, dtype=complex)
    cap = ITERATIONS_PER_ROW * n
    iterations = 0
    since_deflation = 0
    hi = n - 1

    while hi >= 0:
        if hi == 0:
            eigs[0] = h[0, 0]
            break
        lo = hi
        while lo > 0 and abs(h[lo, lo - 1]) > tol:
            lo -= 1
        if lo > 0:
            h[lo, lo - 1] = 0.0
        if lo == hi:
            eigs[hi] = h[hi, hi]
            hi -= 1
            since_deflation = 0
            continue
        if lo == hi - 1:
            eigs[hi - 1], eigs[hi] = eig2x2(h[lo, lo], h[lo, hi], h[hi, lo], h[hi, hi])
            hi -= 2
            since_deflation = 0
            continue
        if iterations >= cap:
            raise NumericalFailureError(f'QR iteration did not converge within {cap} iterations')
        iterations += 1
        since_deflation += 1
        if since_deflation % EXCEPTIONAL_SHIFT_EVERY == 0:
            shift = h[hi, hi] + 0.75 * abs(h[hi, hi - 1]) * (1 + 1j)
        else:
            shift = _wilkinson_shift(h, hi)
        _qr_step(h, lo, hi, shift)
    return eigs


def eigvals(a) -> np.ndarray:
    """Eigenvalues of a real or complex square matrix of size at most 64.

    Raises:
        DimensionError: If the matrix is not square, empty, too large or not finite
        NumericalFailureError: If the QR iteration hits its cap of 100 * n iterations
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionError(f'matrix must be square and nonempty, got shape {a.shape}')
    if a.shape[0] > MAX_DIM:
        raise DimensionError(f'matrix size {a.shape[0]} exceeds {MAX_DIM}')
    if not np.all(np.isfinite(a)):
        raise DimensionError('matrix has non-finite entries')
    a = a.astype(complex) if np.iscomplexobj(a) else a.astype(float)

    out: List[complex] = []
    for idx in diagonal_blocks(a):
        block = a[np.ix_(idx, idx)]
        if len(idx) == 1:
            out.append(complex(block[0, 0]))
        elif len(idx) == 2:
            out.extend(eig2x2(*(block[i, j].item() for i, j in ((0, 0), (0, 1), (1, 0), (1, 1)))))
        else:
            out.extend(shifted_qr_eigvals(block))
    return np.array(out, dtype=complex)


def spectral_radius(a) -> float:
    """Largest eigenvalue modulus."""
    return float(np.max(np.abs(eigvals(a))))


def spectral_abscissa(a) -> float:
    """Largest eigenvalue real part."""
    return float(np.max(eigvals(a).real))
