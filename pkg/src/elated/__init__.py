"""Elated and happy digit maps: cycles, heights, preimages, symbolic towers."""

from .cycles import attractor, enumerate_cycles, is_elated, is_happy
from .digitmap import elated_step, happy_step, iterate, power_sum
from .heights import epsilon, epsilon_base2, epsilon_base3, height, sigma
from .preimage import compute_base_constants, reduce_preimages, shortest_fully_basic_preimages
from .towerint import RunSymbolic, equal_mod_primes, eval_exact, eval_mod
from .towers import verify_epsilon_tower

__all__ = [
    "attractor",
    "compute_base_constants",
    "elated_step",
    "enumerate_cycles",
    "epsilon",
    "epsilon_base2",
    "epsilon_base3",
    "equal_mod_primes",
    "eval_exact",
    "eval_mod",
    "happy_step",
    "height",
    "is_elated",
    "is_happy",
    "iterate",
    "power_sum",
    "reduce_preimages",
    "RunSymbolic",
    "shortest_fully_basic_preimages",
    "sigma",
    "verify_epsilon_tower",
]
