"""Exact numerical screens for smooth codimension-two subvarieties of quadrics."""

from .conic_bundle import P, solve_point, superbound, triangle
from .dpf import DpfEquation, preset, preset_catalog, solve_degree
from .enumeration import FilterConfig, run
from .invariants import known_pairs, lookup
from .registry import verify

__version__ = "0.1.0"

__all__ = [
    "DpfEquation", "FilterConfig", "P", "known_pairs", "lookup", "preset",
    "preset_catalog", "run", "solve_degree", "solve_point", "superbound",
    "triangle", "verify",
]
