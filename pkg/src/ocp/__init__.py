"""Ordered covering problem: exact and heuristic solvers, certificate
verification, and the 3-Partition reduction."""

from .core import (
    Covering,
    Edge,
    Element,
    OcpInstance,
    Reason,
    ResidualTrace,
    TraceStep,
    Verdict,
    covers,
    normalize_covering,
    residual_trace,
    total_cost,
    verify_certificate,
)
from .cost import BigCost, cost_add, cost_cmp, cost_pow2
from .errors import (
    ConfigurationError,
    InstanceError,
    MalformedCertificateError,
    OcpError,
    ParseError,
    PreconditionError,
    ReductionSoundnessError,
    SolverCapacityError,
)
from .generators import GenParams, gen_random_3p, gen_random_ocp
from .harness import GapReport, GapRow, run_gap_experiment
from .io import load_fixture, parse_instance, serialize_instance
from .reduction import (
    Partition3,
    ReductionMap,
    ThreePartitionInstance,
    canonical_covering,
    enumerate_valid_triplets,
    extract_partition,
    lemma_violations,
    reduce_3p_to_ocp,
    solve_3p_bruteforce,
    validate_3p,
)
from .solvers import SolveResult, solve_bnb, solve_exact_dp, solve_exact_perm, solve_greedy

__version__ = "0.1.0"
