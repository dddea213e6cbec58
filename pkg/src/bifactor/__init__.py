"""Degree-constrained spanning subgraphs of bipartite multigraphs.

Decide whether a bipartite multigraph has a spanning subgraph F with
g(x) <= deg_F(x) <= f(x) on one vertex class and deg_F(y) <= f(y) on the
other; construct the subgraph when it exists, or a violating set-pair
certificate when it does not.  Exhaustive checkers for five classical
feasibility conditions and a brute-force oracle cross-validate the
solver on small instances.
"""

from .core import (BifactorError, Certificate, CertificateReport, Factor,
                   FactorReport, Instance, InvalidInstanceError, SolveOutcome,
                   Violation, edge_count, neighborhood, pair_deficiency,
                   validate_instance, verify_certificate, verify_factor)
from .criteria import (CriterionReport, ExhaustionLimitError, NotApplicableError,
                       Witness, check_cymer_kano, check_hall_condition,
                       check_heinrich, check_new_criterion, check_ore_f_factor)
from .generator import GenParams, SplitMix64, gen_random
from .ioformat import (InstanceDocument, ParseError, emit_instance, emit_outcome,
                       parse_instance, parse_outcome)
from .oracle import BudgetExceededError, OracleBudget, brute_force_factor, count_factors
from .solver import (AugmentState, InternalInvariantError, NicePath, SolveStats,
                     extract_certificate, find_nice_path, flip_path, run_solver,
                     solve)

__version__ = "0.1.0"

__all__ = [
    "AugmentState", "BifactorError", "BudgetExceededError", "Certificate",
    "CertificateReport", "CriterionReport", "ExhaustionLimitError", "Factor",
    "FactorReport", "GenParams", "Instance", "InstanceDocument",
    "InternalInvariantError", "InvalidInstanceError", "NicePath",
    "NotApplicableError", "OracleBudget", "ParseError", "SolveOutcome",
    "SolveStats", "SplitMix64", "Violation", "Witness", "brute_force_factor",
    "check_cymer_kano", "check_hall_condition", "check_heinrich",
    "check_new_criterion", "check_ore_f_factor", "count_factors", "edge_count",
    "emit_instance", "emit_outcome", "extract_certificate", "find_nice_path",
    "flip_path", "gen_random", "neighborhood", "pair_deficiency",
    "parse_instance", "parse_outcome", "run_solver", "solve",
    "validate_instance", "verify_certificate", "verify_factor",
]
