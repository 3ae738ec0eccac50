"""Planner, verifier and simulator for heterogeneous coded shuffle loads."""

from .model import (FileAllocation, SubsetProfile, SystemConfig,
                    derive_profile, double_instance, validate_config)
from .placement_k3 import Regime, build_placement, classify_regime, optimal_load
from .coding_k3 import achievable_load, check_decodable, g, plan_shuffle
from .converse_bounds import bound_corollary1, lower_bound
from .oracle import min_load_bruteforce, verify_theorem

__all__ = [
    "FileAllocation", "SubsetProfile", "SystemConfig",
    "derive_profile", "double_instance", "validate_config",
    "Regime", "build_placement", "classify_regime", "optimal_load",
    "achievable_load", "check_decodable", "g", "plan_shuffle",
    "bound_corollary1", "lower_bound",
    "min_load_bruteforce", "verify_theorem",
]

__version__ = "0.1.0"
