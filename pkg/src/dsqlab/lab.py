"""Suite orchestration: configs, check runners, CSV/JSON reports.

Each check identifier is anchored at one library operation and runs over
the configured domain entries.  Sampling inside a check is seeded by the
chain (seed, domainId, checkId), so results are independent of execution
order and identical configurations produce byte-identical data rows.
"""
from __future__ import annotations

import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .domains import (
    Domain,
    Weights,
    certifies_weights,
    disk_product_radii,
    ball_like_radius,
    domain_from_json,
    domain_to_json,
    membership,
    puncture,
    scale,
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
    fridman_lower_bound,
    replay_ball_check,
    sandwich_check_general,
    sandwich_check_origin,
)
from .metrics import caratheodory_sandwich, lempert_lower_check, model_distance
from .minkowski import (
    Bracket,
    gauge_sup_bound,
    sublevel_membership,
    weighted_gauge,
)
from .sampling import chain_string, sample_closed_disk_scalars, sample_points, seed_chain
from .squeezing import (
    SearchBudget,
    certify_lower_bound,
    continuity_modulus,
    exhaustion_sweep,
    product_lower_bound,
    punctured_interval,
    replay_certificate,
)

__all__ = [
    "CHECK_IDS",
    "CHECK_ANCHORS",
    "DomainEntry",
    "SuiteConfig",
    "CheckResult",
    "SuiteRun",
    "run_suite",
    "default_suite",
    "TraceRow",
    "TraceMatrix",
    "report_traceability",
]

CHECK_IDS = (
    "homogeneity",
    "triangle",
    "sandwich-metric",
    "sublevel-limit",
    "product-lower-bound",
    "continuity",
    "exhaustion",
    "fridman-squeeze",
)

# each check id is anchored at exactly one library operation
CHECK_ANCHORS = {
    "homogeneity": "minkowski.weighted_gauge",
    "triangle": "minkowski.weighted_gauge",
    "sandwich-metric": "metrics.caratheodory_sandwich",
    "sublevel-limit": "minkowski.sublevel_membership",
    "product-lower-bound": "squeezing.product_lower_bound",
    "continuity": "squeezing.continuity_modulus",
    "exhaustion": "squeezing.exhaustion_sweep",
    "fridman-squeeze": "fridman.sandwich_check_general",
}

RESULT_SCHEMA = "dsqlab.results/1"
CERT_SCHEMA = "dsqlab.certificates/1"
RUN_SCHEMA = "dsqlab.run/1"
CSV_COLUMNS = ("checkId", "domainId", "status", "worstMargin", "samples", "seedChain")


@dataclass(frozen=True)
class DomainEntry:
    entry_id: str
    domain: Domain
    weights: Weights

    def to_json(self) -> dict:
        return {
            "id": self.entry_id,
            "domain": domain_to_json(self.domain),
            "d": list(self.weights),
        }

    @classmethod
    def from_json(cls, data: dict) -> "DomainEntry":
        try:
            domain = domain_from_json(data["domain"])
            w = Weights.of(data.get("d", [1] * domain.dim))
        except (KeyError, TypeError, ValueError) as exc:
            raise SuiteConfigError(f"bad domain entry: {exc}") from exc
        if len(w) != domain.dim:
            raise SuiteConfigError(f"entry {data.get('id')}: weights do not match dimension")
        return cls(str(data.get("id", "domain")), domain, w)


@dataclass(frozen=True)
class SuiteConfig:
    entries: tuple[DomainEntry, ...]
    checks: tuple[str, ...]
    samples: int = 250
    seed: int = 0
    tol: float = 1e-10
    budget: SearchBudget = field(default_factory=SearchBudget)
    out_dir: str = "dsqlab-out"

    def to_json(self) -> dict:
        return {
            "schema": "dsqlab.suite/1",
            "domains": [e.to_json() for e in self.entries],
            "checks": list(self.checks),
            "samples": self.samples,
            "seed": self.seed,
            "tol": self.tol,
            "budget": {
                "grid": self.budget.grid,
                "golden_iters": self.budget.golden_iters,
                "image_samples": self.budget.image_samples,
                "coverage_samples": self.budget.coverage_samples,
                "complement_samples": self.budget.complement_samples,
                "boundary_samples": self.budget.boundary_samples,
                "boundary_samples_nd": self.budget.boundary_samples_nd,
                "coverage_margin": self.budget.coverage_margin,
            },
            "output": {"dir": self.out_dir},
        }

    @classmethod
    def from_json(cls, data: dict) -> "SuiteConfig":
        if not isinstance(data, dict):
            raise SuiteConfigError("suite config must be a JSON object")
        try:
            entries = tuple(DomainEntry.from_json(d) for d in data["domains"])
            checks = tuple(str(c) for c in data["checks"])
        except KeyError as exc:
            raise SuiteConfigError(f"missing config field: {exc}") from exc
        for c in checks:
            if c not in CHECK_IDS:
                raise SuiteConfigError(f"unknown check id {c!r}")
        ids = [e.entry_id for e in entries]
        if len(set(ids)) != len(ids):
            raise SuiteConfigError("domain ids must be unique")
        budget = data.get("budget")
        try:
            return cls(
                entries,
                checks,
                samples=int(data.get("samples", 250)),
                seed=int(data.get("seed", 0)),
                tol=float(data.get("tol", 1e-10)),
                budget=SearchBudget.of(budget),
                out_dir=str(data.get("output", {}).get("dir", "dsqlab-out")),
            )
        except (TypeError, ValueError) as exc:
            raise SuiteConfigError(f"bad config value: {exc}") from exc

    @classmethod
    def from_file(cls, path) -> "SuiteConfig":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise SuiteConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_json(data)


@dataclass
class CheckResult:
    check_id: str
    domain_id: str
    status: str  # pass | confirmed | inconclusive | fail | skipped
    worst_margin: float
    samples: int
    seed_chain: str
    elapsed: float = 0.0
    detail: str = ""

    def csv_row(self) -> tuple:
        return (
            self.check_id,
            self.domain_id,
            self.status,
            repr(self.worst_margin),
            str(self.samples),
            self.seed_chain,
        )


@dataclass
class SuiteRun:
    config: SuiteConfig
    results: list[CheckResult]
    certificates: list[dict]
    out_files: dict

    @property
    def failed(self) -> bool:
        return any(r.status == "fail" for r in self.results)


def _skip(check_id, entry, chain, why) -> CheckResult:
    return CheckResult(check_id, entry.entry_id, "skipped", 0.0, 0, chain, detail=why)


def _run_homogeneity(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "homogeneity")
    rng = seed_chain(cfg.seed, entry.entry_id, "homogeneity")
    dom, w = entry.domain, entry.weights
    if not certifies_weights(dom, w):
        return _skip("homogeneity", entry, chain, "weights not certified")
    pts = sample_points(dom, cfg.samples, rng)
    lams = sample_closed_disk_scalars(
        rng, cfg.samples, radius=1.25, boundary_fraction=0.1, real_fraction=0.25
    )
    worst = 0.0
    for z, lam in zip(pts, lams):
        b = weighted_gauge(dom, w, z, cfg.tol)
        moved = weighted_gauge(dom, w, weighted_action(lam, w, z), cfg.tol)
        worst = max(worst, moved.gap_to(b.scaled(abs(lam))))
    # stability spot check: tiny perturbations cannot push the gauge up by more
    # than the bracket slack (the catalog gauges are continuous)
    for z in pts[: max(1, cfg.samples // 10)]:
        b = weighted_gauge(dom, w, z, cfg.tol)
        shifted = weighted_gauge(dom, w, z + 1e-9, cfg.tol)
        worst = max(worst, shifted.lo - b.hi - 1e-6)
    status = "pass" if worst <= 2.0 * cfg.tol else "fail"
    return CheckResult("homogeneity", entry.entry_id, status, worst, cfg.samples, chain)


def _run_triangle(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "triangle")
    rng = seed_chain(cfg.seed, entry.entry_id, "triangle")
    dom, w = entry.domain, entry.weights
    if not dom.flags.convex or not certifies_weights(dom, w):
        return _skip("triangle", entry, chain, "needs a convex weighted-balanced domain")
    zs = sample_points(dom, cfg.samples, rng)
    ws_ = sample_points(dom, cfg.samples, rng)
    stretch = 1.0 + 0.5 * rng.random(cfg.samples)  # some points outside the domain
    alphas = rng.random(cfg.samples)
    worst = -math.inf
    for z, wpt, s, al in zip(zs, ws_, stretch, alphas):
        z = z * s
        lhs = weighted_gauge(dom, w, al * z + (1.0 - al) * wpt, cfg.tol).lo
        rhs = weighted_gauge(dom, w, z, cfg.tol).hi + weighted_gauge(dom, w, wpt, cfg.tol).hi
        worst = max(worst, lhs - rhs)
    status = "pass" if worst <= 2.0 * cfg.tol else "fail"
    return CheckResult("triangle", entry.entry_id, status, worst, cfg.samples, chain)


def _run_sandwich_metric(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "sandwich-metric")
    rng = seed_chain(cfg.seed, entry.entry_id, "sandwich-metric")
    dom, w = entry.domain, entry.weights
    if not dom.flags.convex or not certifies_weights(dom, w):
        return _skip("sandwich-metric", entry, chain, "needs convex certified weights")
    origin = np.zeros(dom.dim, dtype=complex)
    try:
        model_distance(dom, origin, origin)
    except UnsupportedDomainError:
        return _skip("sandwich-metric", entry, chain, "no exact model distance")
    pts = sample_points(dom, cfg.samples, rng)
    worst = -math.inf
    L = w.max_weight
    for a_scale in (1.0, 2.0):
        bound = gauge_sup_bound(dom, w, a_scale)
        scaled_dom = scale(a_scale, dom)
        for z in pts:
            za = z * a_scale
            kval = model_distance(scaled_dom, origin, za).distance
            h = weighted_gauge(dom, w, za, cfg.tol)
            worst = max(
                worst, h.lo - bound.estimate * math.tanh(kval) ** (1.0 / L)
            )
    for z in pts:
        exact = model_distance(dom, origin, z).distance
        bracket = caratheodory_sandwich(dom, w, z, cfg.tol)
        worst = max(worst, bracket.lo - exact, exact - bracket.hi)
    status = "pass" if worst <= 2.0 * cfg.tol else "fail"
    return CheckResult(
        "sandwich-metric", entry.entry_id, status, worst, 3 * cfg.samples, chain
    )


def _run_sublevel_limit(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "sublevel-limit")
    rng = seed_chain(cfg.seed, entry.entry_id, "sublevel-limit")
    dom, w = entry.domain, entry.weights
    if not certifies_weights(dom, w):
        return _skip("sublevel-limit", entry, chain, "weights not certified")
    level = 0.75
    pts = sample_points(dom, cfg.samples, rng)
    worst = -math.inf
    ok = True
    for z in pts:
        # the unit sublevel recovers the domain
        unit = sublevel_membership(dom, w, 1.0, z, cfg.tol)
        if unit.status == "out":
            ok = False
        res = sublevel_membership(dom, w, level, z, cfg.tol)
        if res.status != "in":
            continue
        # absorption: a decided member of the limit sublevel is a decided
        # member of some earlier sublevel along levels rising to the limit
        gap = level - res.bracket.hi
        k_star = max(1, math.ceil(math.log2(level / gap))) + 1
        earlier = level * (1.0 - 0.5**k_star)
        absorbed = sublevel_membership(dom, w, earlier, z, cfg.tol)
        if absorbed.status != "in":
            ok = False
        worst = max(worst, res.bracket.hi - earlier)
    if not ok:
        worst = max(worst, 1.0)
    status = "pass" if ok else "fail"
    return CheckResult("sublevel-limit", entry.entry_id, status, worst, cfg.samples, chain)


def _run_product_lower_bound(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "product-lower-bound")
    rng = seed_chain(cfg.seed, entry.entry_id, "product-lower-bound")
    dom, w = entry.domain, entry.weights
    if dom.kind != "product":
        return _skip("product-lower-bound", entry, chain, "needs a product domain")
    if not dom.flags.convex or not certifies_weights(dom, w):
        return _skip("product-lower-bound", entry, chain, "needs convex certified factors")
    repeats = max(1, min(10, cfg.samples // 40))
    worst = -math.inf
    off = 0
    offsets = []
    for f in dom.factors:
        offsets.append((off, off + f.dim))
        off += f.dim
    for rep in range(repeats):
        factor_certs = []
        try:
            for f, (lo, hi) in zip(dom.factors, offsets):
                anchor = sample_points(puncture(f), 1, rng)[0]
                factor_certs.append(
                    certify_lower_bound(
                        puncture(f),
                        f,
                        w.slice(lo, hi),
                        anchor,
                        budget=cfg.budget,
                        seed=cfg.seed + rep,
                        tol=cfg.tol,
                    )
                )
            combined = product_lower_bound(
                factor_certs, budget=cfg.budget, seed=cfg.seed + rep, tol=cfg.tol
            )
        except (EmptyFamilyError, NumericFailure, UnsupportedDomainError) as exc:
            return _skip("product-lower-bound", entry, chain, str(exc))
        expected = min(c.radius for c in factor_certs)
        worst = max(worst, abs(combined.radius - expected))
        fresh = replay_certificate(combined, cfg.seed + 1000 + rep, cfg.budget)
        if fresh.image_check.failures or fresh.coverage_check.failures:
            worst = max(worst, 1.0)
        certs.append(combined.to_json() | {"checkId": "product-lower-bound", "domainId": entry.entry_id})
    status = "pass" if worst <= 1e-12 else "fail"
    return CheckResult(
        "product-lower-bound", entry.entry_id, status, worst, repeats, chain
    )


def _run_continuity(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "continuity")
    rng = seed_chain(cfg.seed, entry.entry_id, "continuity")
    dom, w = entry.domain, entry.weights
    if not dom.flags.convex or not certifies_weights(dom, w):
        return _skip("continuity", entry, chain, "needs convex certified weights")
    try:
        b_neg = gauge_sup_bound(dom, w, -1.0)
        b_two = gauge_sup_bound(dom, w, 2.0)
    except ContractViolation as exc:
        return _skip("continuity", entry, chain, str(exc))
    if not (b_neg.certified and b_two.certified):
        return _skip("continuity", entry, chain, "sup bounds not certified")
    origin = np.zeros(dom.dim, dtype=complex)
    try:
        model_distance(dom, origin, origin)
    except UnsupportedDomainError:
        return _skip("continuity", entry, chain, "no exact model distance")
    z1s = sample_points(puncture(dom), cfg.samples, rng)
    z2s = sample_points(puncture(dom), cfg.samples, rng)
    worst = -math.inf
    for z1, z2 in zip(z1s, z2s):
        i1 = punctured_interval(dom, w, z1, cfg.tol)
        i2 = punctured_interval(dom, w, z2, cfg.tol)
        # the filled-domain distance is a lower bound for the punctured
        # distance, so this check is conservative
        kd = model_distance(dom, z1, z2).distance
        modulus = continuity_modulus(dom, w, kd, b_neg, b_two)
        worst = max(worst, i1.gap_to(i2) - modulus - i1.width - i2.width)
    status = "pass" if worst <= 1e-9 else "fail"
    return CheckResult("continuity", entry.entry_id, status, worst, cfg.samples, chain)


def _run_exhaustion(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "exhaustion")
    rng = seed_chain(cfg.seed, entry.entry_id, "exhaustion")
    dom, w = entry.domain, entry.weights
    if not dom.flags.convex or not certifies_weights(dom, w):
        return _skip("exhaustion", entry, chain, "needs convex certified weights")
    kmax = 50
    levels = [1.0 - 1.0 / k for k in range(2, kmax + 1)]
    anchor = 0.4 * sample_points(puncture(dom), 1, rng)[0]
    if not anchor.any():
        return _skip("exhaustion", entry, chain, "degenerate anchor draw")
    sweep = exhaustion_sweep(dom, w, anchor, levels, cfg.tol)
    worst = -math.inf
    for prev, nxt in zip(sweep.steps, sweep.steps[1:]):
        worst = max(worst, nxt.lo - prev.hi)  # values must decrease
    final = sweep.steps[-1]
    worst = max(worst, sweep.limit.lo - final.hi)  # approach from above
    shrink = 1.0 / levels[-1] - 1.0
    worst = max(worst, (final.hi - sweep.limit.hi) - 2.0 * shrink - 2.0 * cfg.tol)
    status = "pass" if worst <= 2.0 * cfg.tol else "fail"
    return CheckResult(
        "exhaustion", entry.entry_id, status, worst, len(levels), chain
    )


def _run_fridman_squeeze(entry: DomainEntry, cfg: SuiteConfig, certs: list) -> CheckResult:
    chain = chain_string(cfg.seed, entry.entry_id, "fridman-squeeze")
    rng = seed_chain(cfg.seed, entry.entry_id, "fridman-squeeze")
    dom, w = entry.domain, entry.weights
    if not dom.flags.convex or not certifies_weights(dom, w):
        return _skip("fridman-squeeze", entry, chain, "needs convex certified weights")
    if not dom.flags.homogeneous:
        return _skip("fridman-squeeze", entry, chain, "model domain must be homogeneous")
    if disk_product_radii(dom) is None and ball_like_radius(dom) is None:
        return _skip("fridman-squeeze", entry, chain, "no Caratheodory ball model")
    worst = -math.inf
    statuses = []
    try:
        # punctured pair at a sampled anchor
        punct = puncture(dom)
        anchor = sample_points(punct, 1, rng)[0]
        cert = certify_lower_bound(
            punct, dom, w, anchor, budget=cfg.budget, seed=cfg.seed, tol=cfg.tol
        )
        interval = punctured_interval(dom, w, anchor, cfg.tol)
        if cert.radius > interval.hi + 1e-6:
            statuses.append("fail")
            worst = max(worst, cert.radius - interval.hi)
        frid = fridman_lower_bound(
            punct, dom, anchor, weights=w, budget=cfg.budget, seed=cfg.seed
        )
        # tolerance commensurate with the ball-search resolution
        rep = sandwich_check_general(interval, frid, w, tol=1e-6)
        statuses.append(rep.status)
        worst = max(worst, -rep.margin)
        if w.max_weight == 1:
            corridor = abs(frid.tanh_radius - interval.mid)
            statuses.append("confirmed" if corridor <= 1e-3 else "inconclusive")
        certs.append(cert.to_json() | {"checkId": "fridman-squeeze", "domainId": entry.entry_id})
        certs.append(frid.to_json() | {"checkId": "fridman-squeeze", "domainId": entry.entry_id})
        # origin pair on a rescaled copy
        half = scale(0.5, dom)
        origin = np.zeros(dom.dim, dtype=complex)
        cert0 = certify_lower_bound(
            half, dom, w, origin, budget=cfg.budget, seed=cfg.seed, tol=cfg.tol
        )
        frid0 = fridman_lower_bound(
            half, dom, origin, weights=w, budget=cfg.budget, seed=cfg.seed
        )
        rep0 = sandwich_check_origin(half, dom, w, frid0, Bracket(cert0.radius, 1.0), tol=1e-6)
        statuses.append(rep0.status)
        worst = max(worst, -rep0.margin)
    except (EmptyFamilyError, NumericFailure, UnsupportedDomainError) as exc:
        return _skip("fridman-squeeze", entry, chain, str(exc))
    if "fail" in statuses:
        status = "fail"
    elif "inconclusive" in statuses:
        status = "inconclusive"
    else:
        status = "confirmed"
    return CheckResult("fridman-squeeze", entry.entry_id, status, worst, 2, chain)


_RUNNERS = {
    "homogeneity": _run_homogeneity,
    "triangle": _run_triangle,
    "sandwich-metric": _run_sandwich_metric,
    "sublevel-limit": _run_sublevel_limit,
    "product-lower-bound": _run_product_lower_bound,
    "continuity": _run_continuity,
    "exhaustion": _run_exhaustion,
    "fridman-squeeze": _run_fridman_squeeze,
}


def run_suite(config: SuiteConfig, write: bool = True, workers: int = 1) -> SuiteRun:
    """Run every configured (domain, check) pair and write the reports.

    Pairs are independent (their sampling seeds are derived per pair), so
    they may run on several workers without changing any result.
    """
    pairs = [(entry, check) for entry in config.entries for check in config.checks]

    def job(pair):
        entry, check = pair
        certs: list[dict] = []
        start = time.perf_counter()
        try:
            result = _RUNNERS[check](entry, config, certs)
        except Exception as exc:  # a crash is a failed check, not a crashed suite
            result = CheckResult(
                check,
                entry.entry_id,
                "fail",
                math.inf,
                0,
                chain_string(config.seed, entry.entry_id, check),
                detail=f"{type(exc).__name__}: {exc}",
            )
        result.elapsed = time.perf_counter() - start
        return result, certs

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(job, pairs))
    else:
        outcomes = [job(p) for p in pairs]

    results = [r for r, _ in outcomes]
    certificates = [c for _, cs in outcomes for c in cs]
    out_files: dict = {}
    if write:
        out_files = _write_reports(config, results, certificates)
    return SuiteRun(config, results, certificates, out_files)


def _write_reports(config: SuiteConfig, results, certificates) -> dict:
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path = out / "results.csv"
    lines = [f"# schema: {RESULT_SCHEMA}", ",".join(CSV_COLUMNS)]
    lines += [",".join(r.csv_row()) for r in results]
    csv_path.write_text("\n".join(lines) + "\n")
    cert_path = out / "certificates.json"
    cert_path.write_text(
        json.dumps({"schema": CERT_SCHEMA, "items": certificates}, indent=2) + "\n"
    )
    meta_path = out / "run_meta.json"
    meta = {
        "schema": RUN_SCHEMA,
        "config": config.to_json(),
        "finished": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "timings": [
            {"checkId": r.check_id, "domainId": r.domain_id, "elapsed": r.elapsed}
            for r in results
        ],
    }
    meta_path.write_text(json.dumps(meta, indent=2) + "\n")
    return {"csv": csv_path, "certificates": cert_path, "meta": meta_path}


def default_suite(out_dir: str = "dsqlab-out") -> SuiteConfig:
    """The stock desk-scale suite over the whole domain catalog."""
    from .domains import complex_ellipsoid, disk, halfspace_domain, polydisk, product, unit_ball

    hexagon = halfspace_domain(
        [[1.0, 0.0], [0.0, 1.0], [2.0**-0.5, 2.0**-0.5]], [1.0, 1.0, 1.0]
    )
    entries = (
        DomainEntry("disk", disk(), Weights.ones(1)),
        DomainEntry("polydisk2-d12", polydisk(2), Weights.of((1, 2))),
        DomainEntry("polydisk2-d23", polydisk(2), Weights.of((2, 3))),
        DomainEntry("ball2", unit_ball(2), Weights.ones(2)),
        DomainEntry("ellipsoid-12", complex_ellipsoid((1, 2)), Weights.of((2, 1))),
        DomainEntry("bidisk-product", product([disk(), disk()]), Weights.ones(2)),
        DomainEntry("hexagon", hexagon, Weights.ones(2)),
    )
    return SuiteConfig(entries, CHECK_IDS, samples=250, seed=20240801, out_dir=out_dir)


@dataclass(frozen=True)
class TraceRow:
    statement: str
    summary: str
    check_id: str | None
    note: str
    status: str  # mapped | out-of-scope | missing


_TRACE_BASE: tuple[tuple[str, str, str | None, str], ...] = (
    (
        "balanced-sublevel-scaling",
        "gauge sublevels of a balanced domain scale linearly with the level",
        "homogeneity",
        "",
    ),
    (
        "weighted-homogeneity",
        "the weighted gauge is degree-one homogeneous along the weighted disk action",
        "homogeneity",
        "",
    ),
    (
        "gauge-upper-semicontinuity",
        "the weighted gauge is upper semicontinuous (continuous on the catalog)",
        "homogeneity",
        "checked via bracket stability under small perturbations",
    ),
    (
        "unit-sublevel-recovers-domain",
        "the open unit sublevel of the weighted gauge equals the domain",
        "sublevel-limit",
        "",
    ),
    (
        "weighted-triangle-bound",
        "on convex weighted-balanced domains the gauge of a convex combination is bounded by the sum of gauges",
        "triangle",
        "",
    ),
    (
        "product-sublevel-factorization",
        "sublevel sets of a product domain factor into equal-level factor sublevels",
        "sublevel-limit",
        "equal-level reading; exercised on product catalog entries",
    ),
    (
        "sublevel-absorption-limit",
        "a set absorbing every sublevel along levels rising to r absorbs the level-r sublevel",
        "sublevel-limit",
        "",
    ),
    (
        "convex-model-distances-coincide",
        "Caratheodory, Lempert and Kobayashi distances agree on convex model domains",
        "sandwich-metric",
        "model identities are used wherever an exact distance is needed",
    ),
    (
        "metric-gauge-sandwich",
        "the invariant distance from the origin is pinched between atanh of gauge powers",
        "sandwich-metric",
        "",
    ),
    (
        "gauge-distance-sup-bound",
        "the gauge is bounded by the rescaled-domain sup bound times a tanh power of the distance",
        "sandwich-metric",
        "",
    ),
    (
        "extremal-coverage-lower-bounds",
        "injective maps whose images cover gauge sublevels certify squeezing lower bounds",
        "fridman-squeeze",
        "exercised by every certificate-producing check",
    ),
    (
        "product-min-lower-bound",
        "the squeezing value of a product pair is at least the minimum factor value",
        "product-lower-bound",
        "",
    ),
    (
        "continuity-modulus",
        "squeezing values are uniformly continuous with modulus from certified sup bounds",
        "continuity",
        "",
    ),
    (
        "exhaustion-convergence",
        "squeezing values along an exhausting sequence converge to the limit value",
        "exhaustion",
        "",
    ),
    (
        "squeeze-dominates-fridman",
        "the max-weight power of the squeezing value bounds the Fridman quantity from below",
        "fridman-squeeze",
        "",
    ),
    (
        "fridman-dominates-squeeze-at-origin",
        "at the origin the max-weight power of the Fridman quantity bounds the squeezing value",
        "fridman-squeeze",
        "",
    ),
    (
        "origin-equality-corridor",
        "at the origin the Fridman quantity is pinched between powers of the squeezing value",
        "fridman-squeeze",
        "",
    ),
    (
        "punctured-weighted-sandwich",
        "on a punctured weighted-balanced convex domain the gauge is pinched between squeezing powers",
        "fridman-squeeze",
        "",
    ),
    (
        "punctured-balanced-exactness",
        "on a punctured balanced convex domain the squeezing value equals the gauge",
        "fridman-squeeze",
        "",
    ),
    (
        "normal-family-extremal-existence",
        "existence of extremal maps through normal families",
        None,
        "out of scope: non-constructive compactness argument; only lower bounds are certified",
    ),
    (
        "locally-uniform-limit-injectivity",
        "injectivity of locally uniform limits of injective maps",
        None,
        "out of scope: cited compactness ingredient with no finite check",
    ),
    (
        "subharmonic-extension-step",
        "subharmonic extension inside the sup-bound proof",
        None,
        "out of scope: only the resulting inequality is checked",
    ),
    (
        "general-upper-bound-certification",
        "upper bounds over all injective holomorphic maps",
        None,
        "out of scope: the supremum is not computable; sandwiches give upper information",
    ),
    (
        "homogeneous-regularity-classification",
        "classifying which domains are holomorphic homogeneous regular",
        None,
        "out of scope: only lower-bound evidence is produced",
    ),
)


@dataclass(frozen=True)
class TraceMatrix:
    rows: tuple[TraceRow, ...]

    @property
    def mapped(self) -> int:
        return sum(1 for r in self.rows if r.status == "mapped")

    @property
    def missing(self) -> tuple[TraceRow, ...]:
        return tuple(r for r in self.rows if r.status == "missing")

    @property
    def unmapped(self) -> tuple[TraceRow, ...]:
        return tuple(
            r for r in self.rows if r.check_id is None and r.status != "out-of-scope"
        )

    def to_json(self) -> dict:
        return {
            "schema": "dsqlab.trace/1",
            "rows": [
                {
                    "statement": r.statement,
                    "summary": r.summary,
                    "checkId": r.check_id,
                    "note": r.note,
                    "status": r.status,
                }
                for r in self.rows
            ],
        }

    def render_text(self) -> str:
        width = max(len(r.statement) for r in self.rows) + 2
        lines = [f"{'statement'.ljust(width)}check            status"]
        for r in self.rows:
            check = r.check_id or "-"
            lines.append(f"{r.statement.ljust(width)}{check.ljust(17)}{r.status}")
        return "\n".join(lines)


def report_traceability(available_checks=None) -> TraceMatrix:
    """Statement-to-check matrix; rows with unavailable checks are flagged."""
    avail = set(CHECK_IDS if available_checks is None else available_checks)
    rows = []
    for statement, summary, check_id, note in _TRACE_BASE:
        if check_id is None:
            status = "out-of-scope"
        elif check_id in avail:
            status = "mapped"
        else:
            status = "missing"
        rows.append(TraceRow(statement, summary, check_id, note, status))
    return TraceMatrix(tuple(rows))
