"""Weighted Minkowski gauges, invariant metrics, and certified squeezing /
Fridman lower bounds on a catalog of bounded domains in C^n, with a
verification suite that re-checks every supported identity numerically."""

from .domains import (
    Domain,
    DomainFlags,
    Weights,
    as_point,
    certifies_weights,
    complex_ellipsoid,
    disk,
    domain_from_json,
    domain_to_json,
    ellipsoid_weights,
    halfspace_domain,
    membership,
    membership_many,
    point_from_json,
    point_to_json,
    polydisk,
    product,
    puncture,
    scale,
    unit_ball,
    weighted_action,
)
from .errors import (
    ContractViolation,
    EmptyFamilyError,
    NumericFailure,
    SuiteConfigError,
    UnsupportedDomainError,
)
from .fridman import (
    FridmanCertificate,
    ball_check,
    caratheodory_ball_boundary,
    fridman_lower_bound,
    replay_ball_check,
    sandwich_check_general,
    sandwich_check_origin,
)
from .lab import (
    CHECK_ANCHORS,
    CHECK_IDS,
    CheckResult,
    DomainEntry,
    SuiteConfig,
    SuiteRun,
    default_suite,
    report_traceability,
    run_suite,
)
from .metrics import (
    MetricValue,
    caratheodory_sandwich,
    lempert_lower_check,
    model_distance,
    poincare,
)
from .minkowski import (
    Bracket,
    GaugeSupBound,
    SublevelOutcome,
    gauge,
    gauge_sup_bound,
    sublevel_membership,
    weighted_gauge,
)
from .squeezing import (
    Certificate,
    ExhaustionResult,
    PairContext,
    SampleRecord,
    SearchBudget,
    certify_lower_bound,
    continuity_modulus,
    exhaustion_sweep,
    product_lower_bound,
    punctured_interval,
    replay_certificate,
)

__version__ = "0.1.0"
