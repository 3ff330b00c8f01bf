"""Discrete and continuous-time heavy ball dynamics."""

from .discrete import Trajectory, hb_step, momentum_step, run_discrete, run_gradient_descent
from .flow import FlowTrajectory, default_horizon, integrate_ode, max_stable_step, ode_rhs
from .lyapunov import lyapunov_energy, pl_consistency
