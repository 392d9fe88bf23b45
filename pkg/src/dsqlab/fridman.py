"""Lower bounds for the Fridman-type invariant via Caratheodory balls.

A certificate is an injective holomorphic map g from a homogeneous model
domain into D together with a hyperbolic radius r such that the sampled
boundary of the Caratheodory ball B(center, r) lies inside g's image
(membership decided through the exact inverse).  The reported quantity is
tanh(r).  Caratheodory balls of punctured model domains are the filled
balls intersected with the domain, since bounded holomorphic candidates
extend across the puncture.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .domains import (
    Domain,
    Weights,
    as_point,
    ball_like_radius,
    certifies_weights,
    disk_product_radii,
    domain_signature,
    filled,
    membership,
    membership_many,
    point_from_json,
    point_to_json,
)
from .errors import (
    ContractViolation,
    EmptyFamilyError,
    NumericFailure,
    UnsupportedDomainError,
)
from .maps import (
    BallMoebius,
    Compose,
    DiagScale,
    DPower,
    MoebiusPerCoord,
    apply_map,
    invert,
    map_from_json,
    map_to_json,
)
from .minkowski import Bracket
from .sampling import chain_string, sample_points, sample_unit_sphere, seed_chain
from .squeezing import PairContext, SampleRecord, SearchBudget

__all__ = [
    "FridmanCertificate",
    "fridman_lower_bound",
    "caratheodory_ball_boundary",
    "ball_check",
    "SandwichReport",
    "sandwich_check_general",
    "sandwich_check_origin",
    "replay_ball_check",
]

_TANH_CAP = 1.0 - 1e-9
_TANH_TOL = 1e-8


@dataclass(frozen=True)
class FridmanCertificate:
    holo_map: object
    center: np.ndarray
    radius: float  # hyperbolic units
    tanh_radius: float
    ball_check: SampleRecord
    family: str
    params: tuple
    pair: PairContext

    def to_json(self) -> dict:
        return {
            "schema": "dsqlab.certificate/1",
            "kind": "fridman",
            "map": map_to_json(self.holo_map),
            "center": point_to_json(self.center),
            "radius": self.radius,
            "tanh_radius": self.tanh_radius,
            "ball_check": self.ball_check.to_json(),
            "family": self.family,
            "params": list(self.params),
            "pair": self.pair.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "FridmanCertificate":
        return cls(
            map_from_json(data["map"]),
            point_from_json(data["center"]),
            float(data["radius"]),
            float(data["tanh_radius"]),
            SampleRecord.from_json(data["ball_check"]),
            str(data["family"]),
            tuple(data["params"]),
            PairContext.from_json(data["pair"]),
        )


def _moebius_scalar(c: np.ndarray, pts: np.ndarray) -> np.ndarray:
    return (c - pts) / (1.0 - np.conjugate(c) * pts)


def caratheodory_ball_boundary(
    D: Domain, center, tanh_radius: float, count: int, rng: np.random.Generator
) -> np.ndarray:
    """Sample the boundary of the Caratheodory ball of a model domain.

    Disk products get per-face samples (one coordinate on the boundary
    circle, the others strictly inside); balls get sphere samples pushed
    through the ball automorphism.  Points are returned in the filled
    domain; exact puncture hits are dropped by the caller.
    """
    c = as_point(center)
    if not (0.0 < tanh_radius < 1.0):
        raise ContractViolation("tanh radius must lie in (0, 1)")
    fD = filled(D)
    radii = disk_product_radii(fD)
    if radii is not None:
        n = fD.dim
        centers = c / radii
        per_face = max(count // n, 8)
        faces = []
        for i in range(n):
            theta = np.linspace(0.0, 2.0 * np.pi, per_face, endpoint=False)
            w = np.empty((per_face, n), dtype=complex)
            w[:, i] = _moebius_scalar(centers[i], tanh_radius * np.exp(1j * theta))
            for j in range(n):
                if j == i:
                    continue
                s = rng.random(per_face)
                phi = rng.random(per_face) * 2.0 * np.pi
                w[:, j] = _moebius_scalar(
                    centers[j], tanh_radius * s * np.exp(1j * phi)
                )
            faces.append(w)
        return np.vstack(faces) * radii
    s_ball = ball_like_radius(fD)
    if s_ball is not None:
        n = fD.dim
        cn = c / s_ball
        u = sample_unit_sphere(rng, count, n)
        pts = apply_map(BallMoebius(cn), tanh_radius * u)
        return s_ball * pts
    raise UnsupportedDomainError(
        f"no Caratheodory ball model for domain kind {D.kind!r}"
    )


def ball_check(
    D: Domain,
    omega: Domain,
    holo,
    center,
    tanh_radius: float,
    count: int,
    rng: np.random.Generator,
    label: str,
) -> SampleRecord:
    """Record of boundary samples of the c-ball checked against the image."""
    pts = caratheodory_ball_boundary(D, center, tanh_radius, count, rng)
    keep = membership_many(D, pts)  # drops exact puncture hits
    pts = pts[keep]
    pre = apply_map(invert(holo), pts)
    ok = membership_many(omega, pre)
    return SampleRecord(int(pts.shape[0]), label, int((~ok).sum()))


def _check_passes(D, omega, holo, center, tau, count, rng) -> bool:
    rec = ball_check(D, omega, holo, center, tau, count, rng, "probe")
    return rec.failures == 0


def _max_tanh_radius(D, omega, holo, center, count, rng) -> float:
    """Largest tanh radius whose boundary check passes, by bisection."""
    if _check_passes(D, omega, holo, center, _TANH_CAP, count, rng):
        return _TANH_CAP
    lo = 1e-6
    if not _check_passes(D, omega, holo, center, lo, count, rng):
        return 0.0
    hi = _TANH_CAP
    while hi - lo > _TANH_TOL:
        mid = 0.5 * (lo + hi)
        if _check_passes(D, omega, holo, center, mid, count, rng):
            lo = mid
        else:
            hi = mid
    return lo


@dataclass
class _FridmanCandidate:
    family: str
    params: tuple
    holo: object


def _puncture_free(D: Domain, omega: Domain, holo) -> bool:
    """True when no puncture of D is hit by the image (exact inverse test)."""
    from .domains import puncture_pins

    for pin in puncture_pins(D):
        if len(pin) != D.dim:
            return False  # slice punctures cannot be handled exactly here
        z = np.zeros(D.dim, dtype=complex)
        for i, v in pin:
            z[i] = v
        pre = apply_map(invert(holo), z[None, :])[0]
        if membership_many(omega, pre[None, :])[0]:
            return False
    return True


def _max_puncture_free(D, omega, build, r_start: float) -> float:
    """Largest ratio in (0, r_start] whose image avoids the punctures.

    Avoidance is monotone (smaller ratios shrink the image), so bisection
    on the exact inverse test applies.
    """
    if _puncture_free(D, omega, build(r_start)):
        return r_start
    lo = 1e-9
    if not _puncture_free(D, omega, build(lo)):
        return 0.0
    hi = r_start
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _puncture_free(D, omega, build(mid)):
            lo = mid
        else:
            hi = mid
    return lo


def _scale_moebius_candidates(D, omega, w, center, budget):
    radii_D = disk_product_radii(D)
    radii_O = disk_product_radii(omega)
    if radii_D is None or radii_O is None:
        return []
    centers = center / radii_D
    if np.any(np.abs(centers) >= 1.0):
        return []

    def build(r: float):
        steps = [DiagScale(1.0 / radii_O)]
        if r < 1.0:
            steps.append(DPower(r, w))
        steps += [MoebiusPerCoord(centers), DiagScale(radii_D.astype(complex))]
        return Compose(tuple(steps))

    r_max = _max_puncture_free(D, omega, build, 1.0)
    if r_max <= 0.0:
        return []
    out = [_FridmanCandidate("scale-moebius", (float(r_max),), build(r_max))]
    if r_max > 0.2:
        out.append(
            _FridmanCandidate("scale-moebius", (float(0.9 * r_max),), build(0.9 * r_max))
        )
    return out


def _ball_moebius_candidates(D, omega, w, center, budget):
    sD = ball_like_radius(D)
    sO = ball_like_radius(omega)
    if sD is None or sO is None:
        return []
    cn = center / sD
    norm = float(np.linalg.norm(cn))
    if norm >= 1.0:
        return []
    n = D.dim

    def build(r: float):
        return Compose(
            (
                DiagScale(np.full(n, r / sO, dtype=complex)),
                BallMoebius(cn),
                DiagScale(np.full(n, sD, dtype=complex)),
            )
        )

    r_max = _max_puncture_free(D, omega, build, 1.0)
    if r_max <= 0.0:
        return []
    return [_FridmanCandidate("ball-moebius", (float(r_max),), build(r_max))]


def _diagscale_candidates(D, omega, w, center, budget, seed):
    if center.any():
        return []
    n = omega.dim
    rng = seed_chain(seed, "fridman", "diagscale", domain_signature(D))
    base = sample_points(omega, budget.image_samples, rng)

    def build(c: float):
        return DiagScale(np.full(n, c, dtype=complex))

    def valid(c: float) -> bool:
        img = apply_map(build(c), base)
        return bool(membership_many(D, img).all()) and _puncture_free(D, omega, build(c))

    c = 1.0
    for _ in range(60):
        if valid(c):
            break
        c *= 0.5
    else:
        return []
    for _ in range(40):
        if not valid(2.0 * c):
            break
        c *= 2.0
    lo, hi = c, 2.0 * c
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if valid(mid):
            lo = mid
        else:
            hi = mid
    return [_FridmanCandidate("diagscale", (float(lo),), build(lo))]


def fridman_lower_bound(
    D: Domain,
    omega: Domain,
    center,
    weights=None,
    family: str = "auto",
    budget=None,
    seed: int = 0,
) -> FridmanCertificate:
    """Best certified Fridman lower bound over a family of maps Omega -> D.

    The source must be a homogeneous model domain; Caratheodory balls of D
    must be computable (disk-product or ball models, punctured or not).
    The ball radius per map is maximised by bisection with the boundary
    sample check as predicate.
    """
    center = as_point(center)
    if not membership(D, center):
        raise ContractViolation("center must lie in the domain")
    if not omega.flags.homogeneous:
        raise ContractViolation("the model source domain must be homogeneous")
    w = Weights.of(weights) if weights is not None else Weights.ones(omega.dim)
    if len(w) != omega.dim:
        raise ContractViolation("weights dimension mismatch")
    fD = filled(D)
    if disk_product_radii(fD) is None and ball_like_radius(fD) is None:
        raise UnsupportedDomainError(
            "Caratheodory balls are only computable on model domains"
        )
    budget = SearchBudget.of(budget)
    count = budget.boundary_samples if D.dim == 1 else budget.boundary_samples_nd

    fams: tuple[str, ...]
    if family == "auto":
        fams = ("scale-moebius", "ball-moebius", "diagscale")
    elif family in ("scale-moebius", "ball-moebius", "diagscale"):
        fams = (family,)
    else:
        raise ContractViolation(f"unknown Fridman family {family!r}")

    candidates: list[_FridmanCandidate] = []
    for fam in fams:
        if fam == "scale-moebius":
            candidates += _scale_moebius_candidates(D, omega, w, center, budget)
        elif fam == "ball-moebius":
            candidates += _ball_moebius_candidates(D, omega, w, center, budget)
        elif fam == "diagscale":
            candidates += _diagscale_candidates(D, omega, w, center, budget, seed)
    if not candidates:
        raise EmptyFamilyError("no applicable Fridman map family for this pair")

    sig = domain_signature(D)
    best: tuple[float, _FridmanCandidate] | None = None
    for cand in candidates:
        pre_center = apply_map(invert(cand.holo), center[None, :])[0]
        if not membership_many(omega, pre_center[None, :])[0]:
            continue
        if not _puncture_free(D, omega, cand.holo):
            continue
        rng_img = seed_chain(seed, "fridman", "image", sig, cand.family, cand.params)
        img_pts = sample_points(omega, budget.image_samples, rng_img)
        img = apply_map(cand.holo, img_pts)
        if not membership_many(D, img).all():
            continue
        rng = seed_chain(seed, "fridman", "ball", sig, cand.family, cand.params)
        tau = _max_tanh_radius(D, omega, cand.holo, center, count, rng)
        if tau <= 0.0:
            continue
        if best is None or tau > best[0] or (tau == best[0] and cand.params < best[1].params):
            best = (tau, cand)
    if best is None:
        raise EmptyFamilyError("no Fridman candidate passed its ball check")
    tau, cand = best
    rng_final = seed_chain(seed, "fridman", "record", sig, cand.family, cand.params)
    record = ball_check(
        D,
        omega,
        cand.holo,
        center,
        tau,
        count,
        rng_final,
        chain_string(seed, "fridman", "record", cand.family),
    )
    if record.failures:
        raise NumericFailure("final ball check failed at the certified radius")
    return FridmanCertificate(
        cand.holo,
        center,
        math.atanh(tau),
        tau,
        record,
        cand.family,
        cand.params,
        PairContext(D, omega, w),
    )


@dataclass(frozen=True)
class SandwichReport:
    status: str  # "confirmed" | "inconclusive" | "fail"
    margin: float
    detail: str = ""


def sandwich_check_general(
    squeeze: Bracket, frid: FridmanCertificate, weights, tol: float = 1e-9
) -> SandwichReport:
    """Consistency of squeeze^L <= Fridman quantity, one-sided.

    A certified Fridman lower bound can confirm the inequality but never
    refute it, so the outcome is confirmed or inconclusive.
    """
    w = Weights.of(weights)
    need = squeeze.lo ** w.max_weight
    margin = frid.tanh_radius - need
    if frid.tanh_radius >= need - tol:
        return SandwichReport("confirmed", margin)
    return SandwichReport(
        "inconclusive",
        margin,
        "certified Fridman bound too weak to witness the squeezing power",
    )


def sandwich_check_origin(
    D: Domain,
    omega: Domain,
    weights,
    frid: FridmanCertificate,
    squeeze: Bracket,
    tol: float = 1e-9,
) -> SandwichReport:
    """Origin-pair consistency: Fridman^L must not exceed the squeeze upper end.

    Both domains must be convex and certified weighted-balanced and the
    certificate centered at 0.  A violation beyond tolerance signals an
    implementation bug, not a refutation, and is reported as ``fail``.
    """
    w = Weights.of(weights)
    if frid.center.any():
        raise ContractViolation("origin check requires a certificate centered at 0")
    for dom in (D, omega):
        if not dom.flags.convex or not certifies_weights(dom, w):
            raise ContractViolation(
                "origin check needs convex weighted-balanced domains"
            )
    lhs = frid.tanh_radius ** w.max_weight
    margin = squeeze.hi + tol - lhs
    if lhs <= squeeze.hi + tol:
        return SandwichReport("confirmed", margin)
    return SandwichReport("fail", margin, "certified bounds crossed: implementation bug")


def replay_ball_check(cert: FridmanCertificate, seed: int, budget=None) -> FridmanCertificate:
    """Re-run the boundary check of a certificate with a fresh seed."""
    budget = SearchBudget.of(budget)
    D = cert.pair.domain
    omega = cert.pair.target
    count = budget.boundary_samples if D.dim == 1 else budget.boundary_samples_nd
    rng = seed_chain(seed, "fridman-replay", domain_signature(D), cert.family)
    record = ball_check(
        D,
        omega,
        cert.holo_map,
        cert.center,
        cert.tanh_radius,
        count,
        rng,
        chain_string(seed, "fridman-replay", cert.family),
    )
    return replace(cert, ball_check=record)
