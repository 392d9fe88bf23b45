"""Certified evaluation of Minkowski-type gauges by membership bisection.

The weighted gauge of a weighted-balanced domain is

    h(z) = inf { t > 0 : (z_1 / t^{d_1}, ..., z_n / t^{d_n}) in Omega }.

For weighted-balanced domains the scaled point's membership is monotone in
t, so bisection on the exact membership oracle yields a certified bracket
[lo, hi] with the infimum inside and hi - lo <= tol.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .domains import (
    Domain,
    Weights,
    as_point,
    certifies_weights,
    disk_product_radii,
    membership,
    scale,
    _member,
    _validated,
)
from .errors import ContractViolation, NumericFailure
from .sampling import sample_points, seed_chain

__all__ = [
    "DEFAULT_TOL",
    "Bracket",
    "weighted_gauge",
    "gauge",
    "SublevelOutcome",
    "sublevel_membership",
    "GaugeSupBound",
    "gauge_sup_bound",
]

DEFAULT_TOL = 1e-10
_MAX_BISECT = 200
_MAX_GROW = 64


@dataclass(frozen=True)
class Bracket:
    """A scalar certified to lie in [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.lo <= self.hi):
            raise ContractViolation(f"invalid bracket [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def scaled(self, factor: float) -> "Bracket":
        if factor < 0:
            raise ContractViolation("bracket scale factor must be nonnegative")
        return Bracket(self.lo * factor, self.hi * factor)

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= x <= self.hi + slack

    def gap_to(self, other: "Bracket") -> float:
        """Separation between the two intervals (0 when they overlap)."""
        return max(0.0, self.lo - other.hi, other.lo - self.hi)

    def to_json(self) -> dict:
        return {"lo": self.lo, "hi": self.hi}


def _scaled_member(domain: Domain, dvec: np.ndarray, z: np.ndarray, t: float) -> bool:
    return _member(domain, z / t**dvec)


def _require_weighted(domain: Domain, weights, z, tol: float):
    w = Weights.of(weights)
    if tol <= 0:
        raise ContractViolation("tol must be positive")
    if not certifies_weights(domain, w):
        raise ContractViolation(
            "domain is not certified weighted-balanced for these weights"
        )
    return w, _validated(domain, z)


def _bisect(domain: Domain, dvec: np.ndarray, z: np.ndarray, lo: float, hi: float, tol: float) -> Bracket:
    # invariant: scaled point at hi is inside, at lo it is not (lo may be 0)
    iters = 0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if _scaled_member(domain, dvec, z, mid):
            hi = mid
        else:
            lo = mid
        iters += 1
        if iters > _MAX_BISECT:
            raise NumericFailure("bisection iteration cap reached before tolerance")
    if hi - lo > tol:
        raise NumericFailure("bisection stalled before reaching tolerance")
    return Bracket(lo, hi)


def weighted_gauge(domain: Domain, weights, z, tol: float = DEFAULT_TOL) -> Bracket:
    """Certified bracket for the weighted gauge of ``z``.

    Returns [0, 0] exactly at the origin.  The initial upper end is grown
    from the domain's bound radius until the scaled point enters the domain.
    """
    w, zv = _require_weighted(domain, weights, z, tol)
    if not zv.any():
        return Bracket(0.0, 0.0)
    dvec = w.as_array()
    hi = domain.bound_radius ** (1.0 / w.min_weight) + 1.0
    grown = 0
    while not _scaled_member(domain, dvec, zv, hi):
        hi *= 2.0
        grown += 1
        if grown > _MAX_GROW:
            raise NumericFailure("could not establish an upper bracket for the gauge")
    return _bisect(domain, dvec, zv, 0.0, hi, tol)


def gauge(domain: Domain, z, tol: float = DEFAULT_TOL) -> Bracket:
    """Gauge of a balanced domain (all weights equal to one)."""
    if not domain.flags.balanced:
        raise ContractViolation("gauge requires the balanced flag")
    return weighted_gauge(domain, Weights.ones(domain.dim), z, tol)


def gauge_below(domain: Domain, weights, z, level: float) -> bool:
    """Exact strict test gauge(z) < level, one oracle evaluation.

    By monotonicity of the scaled-point membership the oracle at t = level
    answers the strict comparison exactly.
    """
    w, zv = _require_weighted(domain, weights, z, 1.0)
    if level <= 0:
        raise ContractViolation("level must be positive")
    if not zv.any():
        return True
    return _scaled_member(domain, w.as_array(), zv, level)


@dataclass(frozen=True)
class SublevelOutcome:
    """Three-valued answer for membership in a gauge sublevel set."""

    status: str  # "in" | "out" | "undecided"
    margin: float
    bracket: Bracket

    @property
    def decided(self) -> bool:
        return self.status != "undecided"


def sublevel_membership(
    domain: Domain, weights, level: float, z, tol: float = DEFAULT_TOL
) -> SublevelOutcome:
    """Decide whether ``z`` lies in {gauge < level}.

    The scaled-point oracle at t = level is evaluated first: by monotonicity
    it answers the strict comparison exactly, and the bisection bracket is
    seeded with it so the reported bracket is consistent with the decision.
    Points with gauge within ``tol`` below the level come back undecided.
    """
    if not (0.0 < level <= 1.0):
        raise ContractViolation("sublevel parameter must lie in (0, 1]")
    w, zv = _require_weighted(domain, weights, z, tol)
    if not zv.any():
        return SublevelOutcome("in", level, Bracket(0.0, 0.0))
    dvec = w.as_array()
    if not _scaled_member(domain, dvec, zv, level):
        # gauge >= level: refine upward from the level
        hi = max(level * 2.0, domain.bound_radius ** (1.0 / w.min_weight) + 1.0)
        grown = 0
        while not _scaled_member(domain, dvec, zv, hi):
            hi *= 2.0
            grown += 1
            if grown > _MAX_GROW:
                raise NumericFailure("could not establish an upper bracket")
        b = _bisect(domain, dvec, zv, level, hi, tol)
        return SublevelOutcome("out", b.lo - level, b)
    # gauge < level: bisect inside [0, level]
    b = _bisect(domain, dvec, zv, 0.0, level, tol)
    if b.hi < level:
        return SublevelOutcome("in", level - b.hi, b)
    return SublevelOutcome("undecided", 0.0, b)


@dataclass(frozen=True)
class GaugeSupBound:
    """Upper bound for the gauge over the rescaled domain a * Omega."""

    domain_scale: float
    estimate: float
    sample_count: int
    certified: bool


def _power_profile_supported(domain: Domain, w: Weights) -> bool:
    k = domain.kind
    if k == "polydisk":
        return True
    if k == "ball":
        return len(set(w.values)) == 1
    if k == "ellipsoid":
        prods = {int(d) * int(p) for d, p in zip(w.values, domain.p)}
        return len(prods) == 1
    if k == "scaled":
        return _power_profile_supported(domain.inner, w)
    if k == "product":
        off = domain._offsets
        return all(
            _power_profile_supported(f, w.slice(off[i], off[i + 1]))
            for i, f in enumerate(domain.factors)
        )
    return False


def _sup_closed_form(domain: Domain, w: Weights, a: float) -> float | None:
    if abs(a) == 1.0:
        # a * Omega = Omega for the symmetric catalog; the sup over Omega is 1
        return 1.0
    if _power_profile_supported(domain, w):
        if abs(a) >= 1.0:
            return abs(a) ** (1.0 / w.min_weight)
        return abs(a) ** (1.0 / w.max_weight)
    return None


def _ray_exit(scaled_domain: Domain, direction: np.ndarray) -> float:
    """sup { s > 0 : s * direction in a*Omega } via bisection on the oracle."""
    hi = 1.0
    grown = 0
    while membership(scaled_domain, hi * direction):
        hi *= 2.0
        grown += 1
        if grown > _MAX_GROW:
            raise NumericFailure("ray never exits the domain")
    lo = 0.0
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if membership(scaled_domain, mid * direction):
            lo = mid
        else:
            hi = mid
    return lo


def gauge_sup_bound(
    domain: Domain, weights, a: float, samples: int = 256, seed: int = 0
) -> GaugeSupBound:
    """Sup of the weighted gauge over a * Omega.

    Certified (exact) for the closed-form catalog: products of disks, balls
    with uniform weights, ellipsoids with compatible weights, and products
    and real rescalings of those.  Otherwise a seeded ray-sampling maximum,
    flagged uncertified.
    """
    a = float(a)
    if a == 0.0:
        raise ContractViolation("scale factor must be nonzero")
    w = Weights.of(weights)
    if not certifies_weights(domain, w):
        raise ContractViolation("domain is not certified weighted-balanced")
    closed = _sup_closed_form(domain, w, a)
    if closed is not None:
        return GaugeSupBound(a, closed, 0, True)
    from .domains import domain_signature

    rng = seed_chain(seed, "sup-bound", domain_signature(domain), repr(a))
    scaled_domain = scale(a, domain)
    dirs = sample_points(domain, samples, rng)
    best = 0.0
    for row in dirs:
        if not row.any():
            continue
        s_exit = _ray_exit(scaled_domain, row)
        probe = row * (s_exit * (1.0 - 1e-6))
        best = max(best, weighted_gauge(domain, w, probe, 1e-8).hi)
    return GaugeSupBound(a, best, samples, False)
