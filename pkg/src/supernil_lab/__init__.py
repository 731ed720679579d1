"""Commutator theory on finite algebras given by operation tables."""

from .algebra import (Congruence, FiniteAlgebra, Operation, algebra_from_functions,
                      load_algebra, parse_algebra, parse_congruence,
                      serialize_algebra, serialize_congruence)
from .closure import BACKEND, generate_subpower
from .commutator import (centrality_holds, higher_commutator, is_supernilpotent,
                         matrix_set)
from .congruences import all_congruences, congruence_generated
from .snag import find_beta_snags, find_two_snags
from .verifier import check_algebra, fuzz_chain, theorem_chain_report

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Congruence", "FiniteAlgebra", "Operation",
    "algebra_from_functions", "all_congruences", "centrality_holds",
    "check_algebra", "congruence_generated", "find_beta_snags",
    "find_two_snags", "fuzz_chain", "generate_subpower", "higher_commutator",
    "is_supernilpotent", "load_algebra", "matrix_set", "parse_algebra",
    "parse_congruence", "serialize_algebra", "serialize_congruence",
    "theorem_chain_report",
]
