"""Asymptotic rate estimation from trajectory series."""

from .fitting import compare_to_theory, estimate_rate, halve_exponent, tail_window
