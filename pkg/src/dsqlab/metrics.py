"""Invariant distances on model domains and the gauge sandwich.

Exact values exist for the disk, polydisks, Euclidean balls, products and
real rescalings of those.  On convex model domains the Caratheodory,
Lempert and Kobayashi distances coincide, so a single number is returned.
Distances are in hyperbolic units (atanh scale).
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
    filled,
    membership,
    scale,
)
from .errors import ContractViolation, UnsupportedDomainError
from .minkowski import Bracket, DEFAULT_TOL, gauge_sup_bound, weighted_gauge

__all__ = [
    "poincare",
    "MetricValue",
    "model_distance",
    "caratheodory_sandwich",
    "lempert_lower_check",
]

_ATANH_CLIP = 1.0 - 1e-15


def poincare(a: complex, b: complex) -> float:
    """Poincare distance atanh |(a - b) / (1 - conj(a) b)| on the unit disk."""
    a = complex(a)
    b = complex(b)
    if abs(a) >= 1.0 or abs(b) >= 1.0:
        raise ContractViolation("poincare distance needs points in the open unit disk")
    num = abs(a - b)
    den = abs(1.0 - a.conjugate() * b)
    return math.atanh(min(num / den, _ATANH_CLIP))


@dataclass(frozen=True)
class MetricValue:
    distance: float
    exact: bool
    bracket: Bracket | None = None


def _ball_distance(z: np.ndarray, w: np.ndarray) -> float:
    # atanh of the Moebius-invariant expression on the unit ball
    inner = complex(np.sum(z * np.conjugate(w)))
    nz = float(np.sum(np.abs(z) ** 2))
    nw = float(np.sum(np.abs(w) ** 2))
    val = 1.0 - (1.0 - nz) * (1.0 - nw) / abs(1.0 - inner) ** 2
    val = min(max(val, 0.0), _ATANH_CLIP**2)
    return math.atanh(math.sqrt(val))


def _model_dist(domain: Domain, z: np.ndarray, w: np.ndarray) -> float | None:
    k = domain.kind
    if k == "polydisk":
        return max(poincare(z[i], w[i]) for i in range(domain.dim))
    if k == "ball":
        return _ball_distance(z, w)
    if k == "ellipsoid" and domain.dim == 1:
        return poincare(z[0], w[0])
    if k == "scaled":
        return _model_dist(domain.inner, z / domain.scale_by, w / domain.scale_by)
    if k == "product":
        off = domain._offsets
        vals = []
        for i, f in enumerate(domain.factors):
            v = _model_dist(f, z[off[i] : off[i + 1]], w[off[i] : off[i + 1]])
            if v is None:
                return None
            vals.append(v)
        return max(vals)
    return None


def model_distance(domain: Domain, z, w) -> MetricValue:
    """Exact invariant distance between two points of a model domain.

    For punctured models the value of the filled domain is returned; this
    equals the Caratheodory distance of the punctured domain, since bounded
    holomorphic functions extend across the puncture.
    """
    zv = as_point(z)
    wv = as_point(w)
    if not membership(domain, zv) or not membership(domain, wv):
        raise ContractViolation("model distance requires both points inside the domain")
    val = _model_dist(filled(domain), zv, wv)
    if val is None:
        raise UnsupportedDomainError(
            f"no exact model distance for domain kind {domain.kind!r}"
        )
    return MetricValue(val, True)


def caratheodory_sandwich(
    domain: Domain, weights, z, tol: float = DEFAULT_TOL
) -> Bracket:
    """Bracket for the invariant distance from the origin via the gauge.

    On a bounded convex weighted-balanced domain the distance lies between
    atanh(h^L) and atanh(h), where L is the largest weight.  The bracket is
    built from the certified gauge bracket, rounded outward.
    """
    w = Weights.of(weights)
    if not domain.flags.convex:
        raise ContractViolation("sandwich requires a convex domain")
    if not certifies_weights(domain, w):
        raise ContractViolation("sandwich requires certified weights")
    zv = as_point(z)
    if not membership(domain, zv):
        raise ContractViolation("sandwich point must lie inside the domain")
    h = weighted_gauge(domain, w, zv, tol)
    L = w.max_weight
    lo = math.atanh(min(max(h.lo, 0.0), _ATANH_CLIP) ** L)
    hi = math.atanh(min(h.hi, _ATANH_CLIP))
    return Bracket(lo, max(lo, hi))


def lempert_lower_check(
    domain: Domain, weights, a: float, z, kval: float | None, tol: float = 1e-9
) -> bool | None:
    """Check gauge(z) <= B_a * tanh(kval)^(1/L) for z in a * Omega.

    ``kval`` is the Lempert/Kobayashi distance from 0 to z inside the
    rescaled domain; when unavailable (None) the check is skipped and None
    is returned.  This is a theorem check, not a distance computation.
    """
    if kval is None:
        return None
    if kval < 0:
        raise ContractViolation("distance must be nonnegative")
    w = Weights.of(weights)
    zv = as_point(z)
    if not membership(scale(a, domain), zv):
        raise ContractViolation("point must lie in the rescaled domain")
    h = weighted_gauge(domain, w, zv)
    bound = gauge_sup_bound(domain, w, a)
    rhs = bound.estimate * math.tanh(kval) ** (1.0 / w.max_weight)
    return h.lo <= rhs + tol
