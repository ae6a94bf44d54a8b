"""Workbench for multiplicity-constrained rational points: exact
asymptotic-growth invariants (Picard data, Fujita and b-invariants, alpha
constants) and height-counting experiments that check them."""

from .pairspec import (INF, ConfigError, MultiplicityFamily, PairModel,
                       build_pair, generators, membership, reduce_generators)
from .invariants import AdjointReport, pic_presentation, predict

__all__ = [
    "INF", "ConfigError", "MultiplicityFamily", "PairModel", "build_pair",
    "generators", "membership", "reduce_generators",
    "AdjointReport", "pic_presentation", "predict",
]

__version__ = "0.1.0"
