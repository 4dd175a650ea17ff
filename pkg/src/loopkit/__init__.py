"""Finite loops given by Cayley tables.

Identity is always element 0.  Permutations act on the right and compose
left to right: ``x(pq) = (xp)q``.
"""

from .catalog import Catalog, enumerate_loops, load_catalog
from .holomorph import HolomorphTable, aipl_criterion, build_holomorph, classify_holomorph
from .identities import evaluate_identity, parse_identity
from .morphisms import (
    automorphism_group,
    find_isomorphism,
    find_isotopism,
    find_special_isotopism,
    principal_isotope,
    stabilizer_automorphisms,
)
from .properties import CLASS_NAMES, check_class, classify
from .subloops import center, centrum, enumerate_subloops, nucleus, nuclei, smarandache_witness
from .table import LoopError, LoopTable, Permutation, canonical_form, parse_table, relabel, validate_loop
from .theorems import THEOREMS, TheoremReport, run_theorem_suite

__version__ = "0.1.0"

__all__ = [
    "CLASS_NAMES", "THEOREMS", "Catalog", "HolomorphTable", "LoopError", "LoopTable", "Permutation",
    "TheoremReport", "aipl_criterion", "automorphism_group", "build_holomorph", "canonical_form", "center",
    "centrum", "check_class", "classify", "classify_holomorph", "enumerate_loops", "enumerate_subloops",
    "evaluate_identity", "find_isomorphism", "find_isotopism", "find_special_isotopism", "load_catalog",
    "nuclei", "nucleus", "parse_identity", "parse_table", "principal_isotope", "relabel", "run_theorem_suite",
    "smarandache_witness", "stabilizer_automorphisms", "validate_loop",
]
