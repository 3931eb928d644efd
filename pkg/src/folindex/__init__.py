"""Exact local invariants of plane foliation singularities.

The combinatorial core turns an ordered blow-up program into its proximity
factorization A = -F^T F and evaluates Milnor numbers, intersection
numbers, GSV, Camacho-Sad, Variation and Baum-Bott indices as exact
pairings against -A^{-1}.  A polynomial front-end derives the blow-up
combinatorics of curve germs and pencils over Q and cross-checks every
derived value against resultant-based oracles.
"""

from .blowup import (BlowUpProgram, CholeskyMatrix, IntersectionMatrix,
                     build_cholesky, build_intersection, dual_graph_dot,
                     intersection_by_steps, proximity_check, valence)
from .divisors import (BalanceReport, BranchAttachment, InvariantMarking,
                       SeparatrixDivisor, bal_pairing_check,
                       enumerate_balanced, is_balanced, require_balanced,
                       total_vector)
from .errors import (CandidateUncertified, ChangeOfCoordinatesFailed,
                     CheckFailed, DimensionMismatch, ExtensionDegreeExceeded,
                     FolindexError, GermSyntaxError, HypothesisMissing,
                     IndexOutOfRange, InputError, InvalidCenter,
                     MissingReducedData, NonIntegerResult, NonPolynomial,
                     NotBalanced, OracleMismatch, PathMismatch,
                     PropertyViolation, SceneParseError, SingularMatrix,
                     UnsupportedGerm)
from .germs import Germ, parse_germ
from .indices import (HypothesisLedger, MilnorDecomposition,
                      ReducedSingularity, bb_total, cs_combinatorial,
                      cs_total, curve_multiplicity_sequence, discrepancies,
                      gsv, gsv_sum_rule_check, intersection_number,
                      milnor_along, milnor_curve, milnor_decomposition,
                      milnor_foliation, quadratic_pairing, var_total,
                      vanishing_orders)
from .oracle import (INFINITE, Candidate, PencilBifurcationData,
                     bifurcation_candidates, oracle_intersection,
                     oracle_milnor, oracle_mu_pair)
from .pencil import (BifurcationRecord, Fiber, PencilModel,
                     bifurcation_formula_check, fiber_balanced_divisor,
                     fiber_gsv_check, semitame_check, unfolding_dimension)
from .report import Report, ReportEntry
from .resolve import (Branch, BranchData, DerivedResolution, branch_analysis,
                      derive_resolution)
from .scenes import (Scene, decode_value, derived_scene, dump_scene,
                     encode_value, load_scene, parse_scene,
                     polynomial_scene)
from .verify import random_program_lists, verify_battery

__version__ = "0.1.0"
