"""Deterministic game engine for capstone-project incentives.

Thin wrapper around the compiled extension: evaluation of the reduced-form
outcome and payoff maps, grid best responses and backward induction,
deviation audits, equilibrium search, Bayesian belief updates and the
welfare-optimal policy search.
"""

from ._capstone import *  # noqa: F401,F403
from ._capstone import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
