"""Shortest symmetric exchange sequences in elementary split matroids."""

from __future__ import annotations

from .core import (
    BasisPairInstance,
    CapacityError,
    ExchangeStep,
    InfeasibleError,
    InputError,
    InternalError,
    MatroidOracle,
    SplitexError,
    compatible,
    verify_sequence,
)
from .generators import GeneratorConfig, gen_compatible_pairs, generate, k4
from .io import InstanceFile, load_instance, parse_instance, save_instance
from .solver import SolveResult, longest_monotone, solve
from .split import HyperedgeConstraint, SplitRepresentation, validate_representation

__all__ = [
    "BasisPairInstance",
    "CapacityError",
    "ExchangeStep",
    "GeneratorConfig",
    "HyperedgeConstraint",
    "InfeasibleError",
    "InputError",
    "InstanceFile",
    "InternalError",
    "MatroidOracle",
    "SolveResult",
    "SplitRepresentation",
    "SplitexError",
    "compatible",
    "gen_compatible_pairs",
    "generate",
    "k4",
    "load_instance",
    "longest_monotone",
    "parse_instance",
    "save_instance",
    "solve",
    "validate_representation",
    "verify_sequence",
]
