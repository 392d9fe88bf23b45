"""Certified lower bounds for squeezing-type coverage radii.

A certificate packages an explicit injective holomorphic map f : D -> Omega
with f(anchor) = 0, a radius r, and sample records witnessing that the
gauge sublevel {h < r} of the target lies inside f(D).  Radii are exact for
map families whose image is known in closed form (coordinatewise
automorphisms, diagonal rescalings of same-shape pairs); otherwise a
sampled infimum shrunk by a safety margin and re-verified by coverage
sampling.
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
    domain_from_json,
    domain_signature,
    domain_to_json,
    filled,
    membership,
    membership_many,
    point_from_json,
    point_to_json,
    product,
    puncture_pins,
    scale,
)
from .errors import ContractViolation, EmptyFamilyError, NumericFailure
from .maps import (
    BallMoebius,
    BlockDiag,
    Compose,
    DiagScale,
    DPower,
    MoebiusPerCoord,
    ShiftShrink,
    Translate,
    apply_map,
    invert,
    map_from_json,
    map_to_json,
)
from .minkowski import Bracket, DEFAULT_TOL, GaugeSupBound, gauge_below, weighted_gauge
from .sampling import chain_string, sample_points, seed_chain

__all__ = [
    "SampleRecord",
    "PairContext",
    "Certificate",
    "SearchBudget",
    "certify_lower_bound",
    "punctured_interval",
    "product_lower_bound",
    "continuity_modulus",
    "ExhaustionResult",
    "exhaustion_sweep",
    "replay_certificate",
]

_COARSE_TOL = 1e-7


@dataclass(frozen=True)
class SampleRecord:
    count: int
    seed: str
    failures: int

    def to_json(self) -> dict:
        return {"count": self.count, "seed": self.seed, "failures": self.failures}

    @classmethod
    def from_json(cls, data: dict) -> "SampleRecord":
        return cls(int(data["count"]), str(data["seed"]), int(data["failures"]))


@dataclass(frozen=True)
class PairContext:
    """The (source domain, target domain, weights) triple a certificate is for."""

    domain: Domain
    target: Domain
    weights: Weights

    def to_json(self) -> dict:
        return {
            "D": domain_to_json(self.domain),
            "Omega": domain_to_json(self.target),
            "d": list(self.weights),
        }

    @classmethod
    def from_json(cls, data: dict) -> "PairContext":
        return cls(
            domain_from_json(data["D"]),
            domain_from_json(data["Omega"]),
            Weights.of(data["d"]),
        )


@dataclass(frozen=True)
class Certificate:
    holo_map: object
    anchor: np.ndarray
    radius: float
    image_check: SampleRecord
    coverage_check: SampleRecord
    family: str
    params: tuple
    exact: bool
    pair: PairContext

    def to_json(self) -> dict:
        return {
            "schema": "dsqlab.certificate/1",
            "kind": "squeezing",
            "map": map_to_json(self.holo_map),
            "anchor": point_to_json(self.anchor),
            "radius": self.radius,
            "image_check": self.image_check.to_json(),
            "coverage_check": self.coverage_check.to_json(),
            "family": self.family,
            "params": list(self.params),
            "exact": self.exact,
            "pair": self.pair.to_json(),
        }

    @classmethod
    def from_json(cls, data: dict) -> "Certificate":
        return cls(
            map_from_json(data["map"]),
            point_from_json(data["anchor"]),
            float(data["radius"]),
            SampleRecord.from_json(data["image_check"]),
            SampleRecord.from_json(data["coverage_check"]),
            str(data["family"]),
            tuple(data["params"]),
            bool(data["exact"]),
            PairContext.from_json(data["pair"]),
        )


@dataclass(frozen=True)
class SearchBudget:
    grid: int = 12
    golden_iters: int = 24
    image_samples: int = 256
    coverage_samples: int = 256
    complement_samples: int = 512
    boundary_samples: int = 720
    boundary_samples_nd: int = 2000
    coverage_margin: float = 1e-3

    @classmethod
    def of(cls, value) -> "SearchBudget":
        if value is None:
            return cls()
        if isinstance(value, SearchBudget):
            return value
        if isinstance(value, dict):
            return cls(**value)
        # scalar budget: rescale the sample counts around the 1e4 default
        factor = max(float(value) / 1e4, 0.05)
        base = cls()
        return cls(
            grid=max(4, int(base.grid * factor)),
            golden_iters=max(8, int(base.golden_iters * min(factor, 4.0))),
            image_samples=max(32, int(base.image_samples * factor)),
            coverage_samples=max(32, int(base.coverage_samples * factor)),
            complement_samples=max(64, int(base.complement_samples * factor)),
            boundary_samples=max(90, int(base.boundary_samples * factor)),
            boundary_samples_nd=max(200, int(base.boundary_samples_nd * factor)),
        )


@dataclass
class _Candidate:
    family: str
    params: tuple
    holo: object
    box_radii: np.ndarray | None  # coordinatewise image radii, None if not box-shaped
    pins: tuple | None  # excluded slices; None means the image is only known by sampling
    scaled_copy: float | None = None  # sigma when the image is sigma * Omega

    @property
    def exact(self) -> bool:
        return self.pins is not None


def _golden_max(f, lo: float, hi: float, iters: int):
    """Deterministic golden-section maximisation; endpoints included."""
    gr = (math.sqrt(5.0) - 1.0) / 2.0
    best_x, best_v = hi, f(hi)
    v_lo = f(lo)
    if v_lo > best_v:
        best_x, best_v = lo, v_lo
    c = hi - (hi - lo) * gr
    d = lo + (hi - lo) * gr
    fc, fd = f(c), f(d)
    for _ in range(max(0, iters)):
        if fc > fd:
            hi, d, fd = d, c, fc
            c = hi - (hi - lo) * gr
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + (hi - lo) * gr
            fd = f(d)
        if fc > best_v:
            best_x, best_v = c, fc
        if fd > best_v:
            best_x, best_v = d, fd
    return best_x, best_v


def _transform_pins(holo, pins, n: int):
    """Push pinned slices through a map that acts per pinned coordinate.

    Valid for coordinatewise maps (any pins) and for maps applied to fully
    pinned points.
    """
    out = []
    for pin in pins:
        z = np.zeros(n, dtype=complex)
        for i, v in pin:
            z[i] = v
        img = apply_map(holo, z)
        out.append(tuple((i, complex(img[i])) for i, _ in pin))
    return tuple(out)


def _exact_radius(omega: Domain, w: Weights, cand: _Candidate, tol: float) -> float:
    """Largest certified level r with {h < r} inside the candidate's image.

    Contributions: the gauge infimum over the part of the target outside the
    image box (attained on coordinate axes), the scaled-copy formula
    sigma^(1/min weight), and the gauge at each excluded slice (evaluated at
    the slice point with free coordinates zeroed).
    """
    vals: list[float] = []
    if cand.scaled_copy is not None:
        sigma = min(abs(cand.scaled_copy), 1.0)
        if sigma < 1.0 - 1e-15:
            vals.append(sigma ** (1.0 / w.min_weight))
    elif cand.box_radii is not None:
        r_omega = disk_product_radii(omega)
        if r_omega is None:
            raise NumericFailure("box image requires a disk-product target")
        for i in range(len(r_omega)):
            if cand.box_radii[i] < r_omega[i] * (1.0 - 1e-14):
                probe = np.zeros(omega.dim, dtype=complex)
                probe[i] = cand.box_radii[i]
                vals.append(weighted_gauge(omega, w, probe, tol).lo)
    for pin in cand.pins or ():
        z = np.zeros(omega.dim, dtype=complex)
        for i, v in pin:
            z[i] = v
        vals.append(weighted_gauge(omega, w, z, tol).lo)
    return min(1.0, min(vals)) if vals else 1.0


def _in_image(D: Domain, inv, pts: np.ndarray) -> np.ndarray:
    return membership_many(D, apply_map(inv, pts))


def _sampled_radius(
    D: Domain,
    omega: Domain,
    w: Weights,
    holo,
    omega_pts: np.ndarray,
    ray_count: int = 48,
) -> float:
    """Sampled infimum of the gauge over the part of the target not covered.

    Uniform samples are complemented by weighted-ray bisection: along the
    ray c -> (c^{d_i} v_i) the gauge equals c * h(v), so locating the first
    exit from the image per direction finds thin uncovered regions that
    uniform sampling misses.  Any located complement point can only lower
    the estimate, keeping it conservative.
    """
    inv = invert(holo)
    covered = _in_image(D, inv, omega_pts)
    outside = omega_pts[~covered]
    best = 1.0
    for row in outside:
        if not gauge_below(omega, w, row, best):
            continue  # cannot improve the running minimum
        b = weighted_gauge(omega, w, row, _COARSE_TOL)
        if b.lo < best:
            best = b.lo
    dvec = w.as_array()
    for row in omega_pts[: min(ray_count, omega_pts.shape[0])]:
        if not row.any():
            continue
        h_row = weighted_gauge(omega, w, row, _COARSE_TOL).mid
        if h_row <= 0.0:
            continue
        # normalise the direction to gauge about 1, then walk the ray
        v = row / (h_row**dvec)

        def on_ray(c: float) -> np.ndarray:
            return (c**dvec * v)[None, :]

        if _in_image(D, inv, on_ray(1.0))[0]:
            continue  # ray stays covered up to the boundary
        lo_c, hi_c = 0.0, 1.0
        for _ in range(25):
            mid = 0.5 * (lo_c + hi_c)
            if _in_image(D, inv, on_ray(mid))[0]:
                lo_c = mid
            else:
                hi_c = mid
        probe = on_ray(hi_c)[0]
        b = weighted_gauge(omega, w, probe, _COARSE_TOL)
        if b.lo < best:
            best = b.lo
    return best


def _coordinatewise(holo) -> bool:
    if isinstance(holo, (Translate, DiagScale, MoebiusPerCoord, DPower, ShiftShrink)):
        return True
    if isinstance(holo, Compose):
        return all(_coordinatewise(s) for s in holo.steps)
    return False


def _pin_cap(D: Domain, omega: Domain, w: Weights, holo, tol: float) -> float | None:
    """Exact radius cap from the images of the removed slices of the source.

    Sampling cannot see measure-zero exclusions, so the gauge at each
    transformed pin bounds every sampled radius.  Returns None when the pins
    cannot be pushed through the map exactly (partial slice under a map that
    mixes coordinates).
    """
    pins = puncture_pins(D)
    if not pins:
        return 1.0
    if not _coordinatewise(holo) and any(len(pin) != D.dim for pin in pins):
        return None
    cap = 1.0
    for pin in _transform_pins(holo, pins, omega.dim):
        z = np.zeros(omega.dim, dtype=complex)
        for i, v in pin:
            z[i] = v
        cap = min(cap, weighted_gauge(omega, w, z, tol).lo)
    return cap


def _image_record(D, omega, holo, count, rng, label) -> SampleRecord:
    pts = sample_points(D, count, rng)
    img = apply_map(holo, pts)
    ok = membership_many(omega, img)
    return SampleRecord(count, label, int((~ok).sum()))


def _coverage_record(D, omega, w, holo, radius, count, rng, label) -> SampleRecord:
    inv = invert(holo)
    found = 0
    failures = 0
    for _ in range(12):
        if found >= count:
            break
        pts = sample_points(omega, count, rng)
        decided = [row for row in pts if gauge_below(omega, w, row, radius)]
        if not decided:
            continue
        batch = np.asarray(decided)
        pre = apply_map(inv, batch)
        ok = membership_many(D, pre)
        take = min(len(decided), count - found)
        found += take
        failures += int((~ok[:take]).sum())
    return SampleRecord(found, label, failures)


def _unwrap_scale(domain: Domain):
    s = 1.0
    while domain.kind == "scaled":
        s *= domain.scale_by
        domain = domain.inner
    return s, domain


def _moebius_candidates(D, omega, w, anchor, with_dpower, budget, tol):
    rD = disk_product_radii(D)
    rO = disk_product_radii(omega)
    if rD is None or rO is None:
        return []
    centers = anchor / rD
    if np.any(np.abs(centers) >= 1.0):
        return []
    pins = puncture_pins(D)
    family = "dpower-moebius" if with_dpower else "moebius"

    def build(rho: float) -> _Candidate:
        steps = [DiagScale(1.0 / rD), MoebiusPerCoord(centers)]
        params: tuple = ()
        if with_dpower:
            params = (float(rho),)
            if rho < 1.0:
                steps.append(DPower(rho, w))
        steps.append(DiagScale(rO.astype(complex)))
        holo = Compose(tuple(steps))
        box = rO * np.asarray([rho**d for d in w])
        new_pins = _transform_pins(holo, pins, omega.dim)
        return _Candidate(family, params, holo, box, new_pins)

    if not with_dpower:
        return [build(1.0)]

    def objective(rho: float) -> float:
        return _exact_radius(omega, w, build(rho), _COARSE_TOL)

    rho_best, _ = _golden_max(objective, 0.5, 1.0, budget.golden_iters)
    cands = [build(1.0)]
    if rho_best < 1.0:
        cands.append(build(rho_best))
    return cands


def _ball_moebius_candidates(D, omega, w, anchor, budget, tol):
    sD = ball_like_radius(D)
    sO = ball_like_radius(omega)
    if sD is None or sO is None:
        return []
    pins = puncture_pins(D)
    if any(len(pin) != D.dim for pin in pins):
        return []
    n = D.dim
    center = anchor / sD
    if float(np.linalg.norm(center)) >= 1.0:
        return []
    holo = Compose(
        (
            DiagScale(np.full(n, 1.0 / sD, dtype=complex)),
            BallMoebius(center),
            DiagScale(np.full(n, sO, dtype=complex)),
        )
    )
    new_pins = _transform_pins(holo, pins, n)
    return [_Candidate("ball-moebius", (), holo, None, new_pins)]


def _diagscale_candidates(D, omega, w, anchor, budget, seed, tol):
    cands: list[_Candidate] = []
    n = omega.dim
    fD = filled(D)
    if not anchor.any():
        sD, coreD = _unwrap_scale(fD)
        sO, coreO = _unwrap_scale(omega)
        if domain_signature(coreD) == domain_signature(coreO):
            c_max = abs(sO / sD)
            rD = disk_product_radii(D)
            rO = disk_product_radii(omega)
            pins = puncture_pins(D)

            def build(c: float) -> _Candidate:
                holo = DiagScale(np.full(n, c, dtype=complex))
                new_pins = _transform_pins(holo, pins, n)
                if rD is not None and rO is not None:
                    return _Candidate("diagscale", (float(c),), holo, c * rD, new_pins)
                sigma = abs(c * sD / sO)
                return _Candidate(
                    "diagscale", (float(c),), holo, None, new_pins, scaled_copy=sigma
                )

            def objective(c: float) -> float:
                return _exact_radius(omega, w, build(c), _COARSE_TOL)

            c_best, _ = _golden_max(objective, 0.25 * c_max, c_max, budget.golden_iters)
            cands.append(build(c_max))
            if c_best < c_max:
                cands.append(build(c_best))
            return cands

    # generic sampled path: f(z) = c * (z - anchor)
    rng = seed_chain(seed, "squeeze", "diagscale", domain_signature(D), domain_signature(omega))
    base = sample_points(D, budget.image_samples, rng)
    omega_pts = sample_points(omega, budget.complement_samples, rng)

    def build_gen(c: float):
        steps = []
        if anchor.any():
            steps.append(Translate(-anchor))
        steps.append(DiagScale(np.full(n, c, dtype=complex)))
        return Compose(tuple(steps)) if len(steps) > 1 else steps[0]

    def image_ok(c: float) -> bool:
        img = apply_map(build_gen(c), base)
        return bool(membership_many(omega, img).all())

    c_hi = 1.0
    for _ in range(60):
        if image_ok(c_hi):
            break
        c_hi *= 0.5
    else:
        return cands
    for _ in range(40):
        if not image_ok(c_hi * 2.0):
            break
        c_hi *= 2.0
    lo, hi = c_hi, c_hi * 2.0
    for _ in range(30):
        mid = 0.5 * (lo + hi)
        if image_ok(mid):
            lo = mid
        else:
            hi = mid
    c_max = lo

    def objective_gen(c: float) -> float:
        if not image_ok(c):
            return -1.0
        # cheap profile during the search; the winner is re-scored accurately
        return _sampled_radius(D, omega, w, build_gen(c), omega_pts, ray_count=12)

    c_best, r_best = _golden_max(objective_gen, 0.25 * c_max, c_max, budget.golden_iters)
    if r_best > 0:
        cands.append(_Candidate("diagscale", (float(c_best),), build_gen(c_best), None, None))
    return cands


def _shiftshrink_candidates(D, omega, w, anchor, budget, seed, tol):
    rng = seed_chain(
        seed, "squeeze", "shiftshrink", domain_signature(D), domain_signature(omega)
    )
    base = sample_points(D, budget.image_samples, rng)

    def build(k: float):
        return ShiftShrink(anchor, k, w)

    def image_ok(k: float) -> bool:
        img = apply_map(build(k), base)
        return bool(membership_many(omega, img).all())

    k = 0.0
    if not image_ok(k):
        k = 1.0
        for _ in range(60):
            if image_ok(k):
                break
            k *= 2.0
        else:
            return []
        lo, hi = k / 2.0, k
        for _ in range(30):
            mid = 0.5 * (lo + hi)
            if image_ok(mid):
                hi = mid
            else:
                lo = mid
        k = hi
    return [_Candidate("shiftshrink", (float(k),), build(k), None, None)]


_FAMILIES = ("moebius", "dpower-moebius", "ball-moebius", "diagscale", "shiftshrink")


def _resolve_families(family: str) -> tuple[str, ...]:
    if family == "auto":
        return ("moebius", "ball-moebius", "diagscale", "shiftshrink")
    if family not in _FAMILIES:
        raise ContractViolation(f"unknown map family {family!r}")
    return (family,)


def certify_lower_bound(
    D: Domain,
    omega: Domain,
    weights,
    anchor,
    family: str = "auto",
    budget=None,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> Certificate:
    """Best certified squeezing lower bound over a family of injective maps.

    The target must be convex and certified weighted-balanced; the anchor
    must lie in the source domain.  Raises ``EmptyFamilyError`` when no
    family member passes the image check with a positive radius.
    """
    w = Weights.of(weights)
    anchor = as_point(anchor)
    if D.dim != omega.dim or len(w) != omega.dim:
        raise ContractViolation("domain, target and weights dimensions must agree")
    if not membership(D, anchor):
        raise ContractViolation("anchor must lie in the source domain")
    if not omega.flags.convex:
        raise ContractViolation("target domain must be convex")
    if not certifies_weights(omega, w):
        raise ContractViolation("target domain is not certified weighted-balanced")
    budget = SearchBudget.of(budget)
    sig_d = domain_signature(D)
    sig_o = domain_signature(omega)

    candidates: list[_Candidate] = []
    for fam in _resolve_families(family):
        if fam == "moebius":
            candidates += _moebius_candidates(D, omega, w, anchor, False, budget, tol)
        elif fam == "dpower-moebius":
            candidates += _moebius_candidates(D, omega, w, anchor, True, budget, tol)
        elif fam == "ball-moebius":
            candidates += _ball_moebius_candidates(D, omega, w, anchor, budget, tol)
        elif fam == "diagscale":
            candidates += _diagscale_candidates(D, omega, w, anchor, budget, seed, tol)
        elif fam == "shiftshrink":
            candidates += _shiftshrink_candidates(D, omega, w, anchor, budget, seed, tol)
    if not candidates:
        raise EmptyFamilyError("no applicable map family for this domain pair")

    rng_obj = seed_chain(seed, "squeeze", "objective", sig_d, sig_o)
    omega_pts = sample_points(omega, budget.complement_samples, rng_obj)
    scored: list[tuple[float, _Candidate]] = []
    for cand in candidates:
        if cand.exact:
            r = _exact_radius(omega, w, cand, tol)
        else:
            cap = _pin_cap(D, omega, w, cand.holo, tol)
            if cap is None:
                continue  # exclusions not representable: candidate unusable
            raw = _sampled_radius(D, omega, w, cand.holo, omega_pts)
            r = min(raw * (1.0 - budget.coverage_margin), cap)
        scored.append((r, cand))
    scored.sort(key=lambda item: (-item[0], item[1].params))

    last_error = None
    for r, cand in scored:
        if r <= 0.0:
            continue
        img_label = chain_string(seed, "squeeze", "image", cand.family)
        rng_img = seed_chain(seed, "squeeze", "image", cand.family, sig_d, sig_o)
        image_rec = _image_record(D, omega, cand.holo, budget.image_samples, rng_img, img_label)
        if image_rec.failures:
            last_error = NumericFailure(
                f"image check failed for family {cand.family} ({image_rec.failures} escapes)"
            )
            continue
        radius = min(r, 1.0)
        for attempt in range(4):
            cov_label = chain_string(seed, "squeeze", "coverage", cand.family, attempt)
            rng_cov = seed_chain(
                seed, "squeeze", "coverage", cand.family, sig_d, sig_o, attempt
            )
            cov_rec = _coverage_record(
                D, omega, w, cand.holo, radius, budget.coverage_samples, rng_cov, cov_label
            )
            if cov_rec.failures == 0:
                return Certificate(
                    cand.holo,
                    anchor,
                    radius,
                    image_rec,
                    cov_rec,
                    cand.family,
                    cand.params,
                    cand.exact,
                    PairContext(D, omega, w),
                )
            if cand.exact:
                raise NumericFailure(
                    "coverage check contradicted an exact-image certificate"
                )
            radius *= 1.0 - budget.coverage_margin
        last_error = NumericFailure("coverage verification kept failing")
    if last_error is not None:
        raise last_error
    raise EmptyFamilyError("no family member achieved a positive certified radius")


def punctured_interval(omega: Domain, weights, z, tol: float = DEFAULT_TOL) -> Bracket:
    """Two-sided squeezing interval on the punctured domain Omega \\ {0}.

    For maximum weight L the value lies in [h^L, h^(1/L)]; at L = 1 this is
    the exact value h itself.
    """
    w = Weights.of(weights)
    if not omega.flags.convex or not certifies_weights(omega, w):
        raise ContractViolation("punctured interval needs a convex weighted-balanced target")
    zv = as_point(z)
    if not zv.any():
        raise ContractViolation("the puncture itself is outside the punctured domain")
    if not membership(omega, zv):
        raise ContractViolation("point must lie inside the filled domain")
    h = weighted_gauge(omega, w, zv, tol)
    L = w.max_weight
    if L == 1:
        return h
    return Bracket(h.lo**L, min(h.hi ** (1.0 / L), 1.0))


def product_lower_bound(
    certificates, budget=None, seed: int = 0, tol: float = DEFAULT_TOL
) -> Certificate:
    """Assemble factor certificates into a product-pair certificate.

    The product map applies each factor map on its block; the certified
    radius is exactly the minimum of the factor radii.  Fresh image and
    coverage records are produced for the assembled pair.
    """
    certs = list(certificates)
    if not certs:
        raise ContractViolation("need at least one factor certificate")
    if len(certs) == 1:
        return certs[0]
    budget = SearchBudget.of(budget)
    doms = [c.pair.domain for c in certs]
    targets = [c.pair.target for c in certs]
    dims = tuple(d.dim for d in doms)
    for c, d in zip(certs, dims):
        if c.anchor.shape != (d,):
            raise ContractViolation("factor anchor dimensions do not line up")
    D = product(doms)
    omega = product(targets)
    vals: tuple[int, ...] = ()
    for c in certs:
        vals = vals + c.pair.weights.values
    w = Weights(vals)
    anchor = np.concatenate([c.anchor for c in certs])
    holo = BlockDiag(tuple(c.holo_map for c in certs), dims)
    radius = min(c.radius for c in certs)
    sig = domain_signature(D)
    rng_img = seed_chain(seed, "squeeze-product", "image", sig)
    image_rec = _image_record(
        D, omega, holo, budget.image_samples, rng_img, chain_string(seed, "product", "image")
    )
    rng_cov = seed_chain(seed, "squeeze-product", "coverage", sig)
    cov_rec = _coverage_record(
        D,
        omega,
        w,
        holo,
        radius,
        budget.coverage_samples,
        rng_cov,
        chain_string(seed, "product", "coverage"),
    )
    if image_rec.failures or cov_rec.failures:
        raise NumericFailure("product certificate failed re-verification")
    return Certificate(
        holo,
        anchor,
        radius,
        image_rec,
        cov_rec,
        "product",
        tuple(c.radius for c in certs),
        all(c.exact for c in certs),
        PairContext(D, omega, w),
    )


def continuity_modulus(
    omega: Domain,
    weights,
    k_dist: float,
    bound_neg: GaugeSupBound,
    bound_double: GaugeSupBound,
) -> float:
    """Uniform-continuity modulus (B_{-1} + B_{2}) * tanh(k)^(1/L)."""
    w = Weights.of(weights)
    if k_dist < 0:
        raise ContractViolation("distance must be nonnegative")
    if bound_neg.domain_scale != -1.0 or bound_double.domain_scale != 2.0:
        raise ContractViolation("modulus needs sup bounds at scales -1 and 2")
    amplitude = bound_neg.estimate + bound_double.estimate
    return amplitude * math.tanh(k_dist) ** (1.0 / w.max_weight)


@dataclass(frozen=True)
class ExhaustionResult:
    levels: tuple[float, ...]
    steps: tuple[Bracket, ...]
    limit: Bracket


def exhaustion_sweep(
    omega: Domain, weights, z, radii, tol: float = DEFAULT_TOL
) -> ExhaustionResult:
    """Squeezing intervals along the punctured exhaustion r_k * Omega \\ {0}.

    Each subdomain is identified with the punctured target through w -> w/r_k,
    so the step value is the punctured interval at z / r_k; the limit entry
    is the interval at z itself.
    """
    levels = tuple(float(r) for r in radii)
    if not levels or any(not (0.0 < r <= 1.0) for r in levels):
        raise ContractViolation("exhaustion radii must lie in (0, 1]")
    if any(b < a for a, b in zip(levels, levels[1:])):
        raise ContractViolation("exhaustion radii must be nondecreasing")
    zv = as_point(z)
    if not zv.any():
        raise ContractViolation("anchor must avoid the puncture")
    if not membership(scale(levels[0], omega), zv):
        raise ContractViolation("anchor must lie in the smallest subdomain")
    steps = tuple(punctured_interval(omega, weights, zv / r, tol) for r in levels)
    limit = punctured_interval(omega, weights, zv, tol)
    return ExhaustionResult(levels, steps, limit)


def replay_certificate(cert: Certificate, seed: int, budget=None) -> Certificate:
    """Re-run the image and coverage checks with a fresh seed chain."""
    budget = SearchBudget.of(budget)
    D, omega, w = cert.pair.domain, cert.pair.target, cert.pair.weights
    sig = domain_signature(D)
    rng_img = seed_chain(seed, "replay", "image", sig, cert.family)
    image_rec = _image_record(
        D,
        omega,
        cert.holo_map,
        budget.image_samples,
        rng_img,
        chain_string(seed, "replay", "image", cert.family),
    )
    rng_cov = seed_chain(seed, "replay", "coverage", sig, cert.family)
    cov_rec = _coverage_record(
        D,
        omega,
        w,
        cert.holo_map,
        cert.radius,
        budget.coverage_samples,
        rng_cov,
        chain_string(seed, "replay", "coverage", cert.family),
    )
    return replace(cert, image_check=image_rec, coverage_check=cov_rec)
