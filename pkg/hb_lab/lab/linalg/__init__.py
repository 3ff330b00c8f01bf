"""Self-contained dense eigensolvers for desk-scale matrices."""

from .hessenberg_qr import diagonal_blocks, eig2x2, eigvals, hessenberg, spectral_abscissa, spectral_radius
from .jacobi import jacobi_eigh
