"""Cluster variables of Dynkin quivers from quiver Grassmannians.

The main entry points are :func:`cc_indecomposable` (the Laurent polynomial
``X_M`` of an indecomposable module), :func:`explore` (all cluster variables
reached by mutation) and the checks in :mod:`clusterhall.bridge` comparing
the two.
"""
from .algebra import LaurentPolynomial, NonExactDivisionError
from .ccmap import cc_all, cc_direct_sum, cc_indecomposable, cc_module
from .frieze import (
    Frieze,
    Triangulation,
    build_frieze,
    compare_friezes,
    frieze_from_ar,
    m_sequence,
    quiver_from_triangulation,
)
from .mfree import MfreeModule, mfree_conjecture, mfree_dynkin
from .mutation import Seed, explore, initial_seed, mutate
from .quiver import Quiver, ar_quiver, parse_quiver, positive_roots, type_a, type_d, type_e
from .repmod import build_indecomposable, count_submodules, grassmannian_chi

__all__ = [
    "LaurentPolynomial",
    "NonExactDivisionError",
    "Quiver",
    "parse_quiver",
    "positive_roots",
    "ar_quiver",
    "type_a",
    "type_d",
    "type_e",
    "build_indecomposable",
    "count_submodules",
    "grassmannian_chi",
    "cc_indecomposable",
    "cc_module",
    "cc_direct_sum",
    "cc_all",
    "Seed",
    "initial_seed",
    "mutate",
    "explore",
    "MfreeModule",
    "mfree_dynkin",
    "mfree_conjecture",
    "Triangulation",
    "Frieze",
    "build_frieze",
    "m_sequence",
    "quiver_from_triangulation",
    "frieze_from_ar",
    "compare_friezes",
]

__version__ = "0.1.0"
