"""Catalog of bounded domains in C^n with exact membership oracles.

Each domain is an immutable symbolic description whose membership test is a
closed-form strict inequality (open-set semantics: boundary points are
outside).  Structural flags certify the properties downstream solvers rely
on: balanced, weighted-balanced (closure under the weighted disk action
``z -> (lambda^{d_1} z_1, ..., lambda^{d_n} z_n)``), convex, homogeneous.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractViolation

__all__ = [
    "Weights",
    "ellipsoid_weights",
    "DomainFlags",
    "Domain",
    "unit_ball",
    "polydisk",
    "disk",
    "complex_ellipsoid",
    "halfspace_domain",
    "product",
    "scale",
    "puncture",
    "membership",
    "membership_many",
    "certifies_weights",
    "weighted_action",
    "filled",
    "puncture_pins",
    "disk_product_radii",
    "ball_like_radius",
    "as_point",
    "point_to_json",
    "point_from_json",
    "domain_to_json",
    "domain_from_json",
    "domain_signature",
]


@dataclass(frozen=True)
class Weights:
    """Positive integer exponent vector of the weighted disk action."""

    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) == 0:
            raise ContractViolation("weights need at least one entry")
        clean = []
        for v in self.values:
            if int(v) != v or int(v) < 1:
                raise ContractViolation(f"weights must be positive integers, got {v!r}")
            clean.append(int(v))
        object.__setattr__(self, "values", tuple(clean))

    @classmethod
    def of(cls, values) -> "Weights":
        if isinstance(values, Weights):
            return values
        if isinstance(values, (int, np.integer)):
            return cls((int(values),))
        return cls(tuple(values))

    @classmethod
    def ones(cls, n: int) -> "Weights":
        return cls((1,) * n)

    @property
    def max_weight(self) -> int:
        return max(self.values)

    @property
    def min_weight(self) -> int:
        return min(self.values)

    def slice(self, start: int, stop: int) -> "Weights":
        return Weights(self.values[start:stop])

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def ellipsoid_weights(p: Sequence[int]) -> Weights:
    """Canonical weights making the ellipsoid with exponents ``p`` weighted-balanced.

    Entry j is lcm(p)/p_j, so every product d_j * p_j equals the lcm.
    """
    pv = tuple(int(x) for x in p)
    if not pv or any(x < 1 for x in pv):
        raise ContractViolation("ellipsoid exponents must be positive integers")
    m = math.lcm(*pv)
    return Weights(tuple(m // x for x in pv))


def as_point(value) -> np.ndarray:
    """Coerce scalars / sequences / [re, im] pair lists to a complex vector."""
    if isinstance(value, np.ndarray) and value.dtype == complex and value.ndim == 1:
        return value
    if isinstance(value, (int, float, complex)):
        return np.asarray([complex(value)])
    seq = list(value)
    coords = []
    for item in seq:
        if isinstance(item, (list, tuple)) and len(item) == 2:
            coords.append(complex(float(item[0]), float(item[1])))
        else:
            coords.append(complex(item))
    return np.asarray(coords, dtype=complex)


def point_to_json(z) -> list:
    z = as_point(z)
    return [[float(c.real), float(c.imag)] for c in z]


def point_from_json(data) -> np.ndarray:
    return as_point(data)


@dataclass(frozen=True)
class DomainFlags:
    balanced: bool
    convex: bool
    homogeneous: bool
    complete_reinhardt: bool
    canonical_weights: Weights | None


@dataclass(frozen=True, eq=False)
class Domain:
    kind: str
    dim: int
    bound_radius: float
    flags: DomainFlags
    p: tuple[int, ...] = ()
    factors: tuple["Domain", ...] = ()
    scale_by: float = 1.0
    inner: "Domain | None" = None
    functionals: tuple[tuple[complex, ...], ...] = ()
    functional_bounds: tuple[float, ...] = ()
    _p2: np.ndarray | None = field(default=None, repr=False, compare=False)
    _A: np.ndarray | None = field(default=None, repr=False, compare=False)
    _c: np.ndarray | None = field(default=None, repr=False, compare=False)
    _offsets: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind == "ellipsoid":
            object.__setattr__(self, "_p2", 2.0 * np.asarray(self.p, dtype=float))
        elif self.kind == "halfspaces":
            A = np.asarray(self.functionals, dtype=complex)
            c = np.asarray(self.functional_bounds, dtype=float)
            A.flags.writeable = False
            c.flags.writeable = False
            object.__setattr__(self, "_A", A)
            object.__setattr__(self, "_c", c)
        elif self.kind == "product":
            offs = [0]
            for f in self.factors:
                offs.append(offs[-1] + f.dim)
            object.__setattr__(self, "_offsets", tuple(offs))


def unit_ball(n: int) -> Domain:
    if n < 1:
        raise ContractViolation("dimension must be >= 1")
    flags = DomainFlags(True, True, True, True, Weights.ones(n))
    return Domain("ball", n, 1.0, flags)


def polydisk(n: int) -> Domain:
    if n < 1:
        raise ContractViolation("dimension must be >= 1")
    flags = DomainFlags(True, True, True, True, Weights.ones(n))
    return Domain("polydisk", n, math.sqrt(n), flags)


def disk() -> Domain:
    return polydisk(1)


def complex_ellipsoid(p: Sequence[int]) -> Domain:
    pv = tuple(int(x) for x in p)
    w = ellipsoid_weights(pv)
    n = len(pv)
    ball_case = all(x == 1 for x in pv)
    flags = DomainFlags(ball_case, True, ball_case, True, w)
    return Domain("ellipsoid", n, math.sqrt(n), flags, p=pv)


def halfspace_domain(functionals: Iterable[Sequence[complex]], bounds: Sequence[float]) -> Domain:
    """Balanced convex domain {z : |l_i(z)| < c_i} cut by complex-linear functionals.

    The functional matrix must have full column rank; that certifies
    boundedness and yields the stored bound radius.
    """
    A = np.asarray([[complex(v) for v in row] for row in functionals], dtype=complex)
    c = np.asarray([float(b) for b in bounds], dtype=float)
    if A.ndim != 2 or A.shape[0] != c.shape[0]:
        raise ContractViolation("functional rows and bounds must align")
    if np.any(c <= 0):
        raise ContractViolation("bounds must be positive")
    n = A.shape[1]
    sigma_min = float(np.linalg.svd(A, compute_uv=False)[-1])
    if sigma_min <= 1e-12:
        raise ContractViolation("functionals must have full rank (bounded domain)")
    radius = float(np.linalg.norm(c) / sigma_min)
    flags = DomainFlags(True, True, False, False, Weights.ones(n))
    return Domain(
        "halfspaces",
        n,
        radius,
        flags,
        functionals=tuple(tuple(row) for row in A),
        functional_bounds=tuple(float(b) for b in c),
    )


def product(domains: Sequence[Domain]) -> Domain:
    doms = tuple(domains)
    if not doms:
        raise ContractViolation("product needs at least one factor")
    if len(doms) == 1:
        return doms[0]
    n = sum(d.dim for d in doms)
    radius = math.sqrt(sum(d.bound_radius**2 for d in doms))
    canon = None
    if all(d.flags.canonical_weights is not None for d in doms):
        vals: tuple[int, ...] = ()
        for d in doms:
            vals = vals + d.flags.canonical_weights.values  # type: ignore[union-attr]
        canon = Weights(vals)
    flags = DomainFlags(
        all(d.flags.balanced for d in doms),
        all(d.flags.convex for d in doms),
        all(d.flags.homogeneous for d in doms),
        all(d.flags.complete_reinhardt for d in doms),
        canon,
    )
    return Domain("product", n, radius, flags, factors=doms)


def scale(a: float, domain: Domain) -> Domain:
    a = float(a)
    if a == 0.0:
        raise ContractViolation("scale factor must be nonzero")
    return Domain(
        "scaled",
        domain.dim,
        abs(a) * domain.bound_radius,
        domain.flags,
        scale_by=a,
        inner=domain,
    )


def puncture(domain: Domain) -> Domain:
    """Remove the origin.  The origin must belong to the inner domain."""
    origin = np.zeros(domain.dim, dtype=complex)
    if not membership(domain, origin):
        raise ContractViolation("puncture requires the origin inside the domain")
    flags = DomainFlags(False, False, False, False, None)
    return Domain("punctured", domain.dim, domain.bound_radius, flags, inner=domain)


def _validated(domain: Domain, z) -> np.ndarray:
    z = as_point(z)
    if z.shape != (domain.dim,):
        raise ContractViolation(
            f"point dimension {z.shape} does not match domain dimension {domain.dim}"
        )
    if not (np.isfinite(z.real).all() and np.isfinite(z.imag).all()):
        raise ContractViolation("point coordinates must be finite")
    return z


def _member(domain: Domain, z: np.ndarray) -> bool:
    k = domain.kind
    if k == "polydisk":
        return bool(np.abs(z).max() < 1.0)
    if k == "ball":
        return bool((z.real**2 + z.imag**2).sum() < 1.0)
    if k == "ellipsoid":
        return bool((np.abs(z) ** domain._p2).sum() < 1.0)
    if k == "product":
        off = domain._offsets
        return all(
            _member(f, z[off[i] : off[i + 1]]) for i, f in enumerate(domain.factors)
        )
    if k == "scaled":
        return _member(domain.inner, z / domain.scale_by)
    if k == "punctured":
        return bool(z.any()) and _member(domain.inner, z)
    if k == "halfspaces":
        return bool((np.abs(domain._A @ z) < domain._c).all())
    raise ContractViolation(f"unknown domain kind {k!r}")


def membership(domain: Domain, z) -> bool:
    """Exact strict membership test for the open domain."""
    return _member(domain, _validated(domain, z))


def _member_many(domain: Domain, pts: np.ndarray) -> np.ndarray:
    k = domain.kind
    if k == "polydisk":
        return np.abs(pts).max(axis=1) < 1.0
    if k == "ball":
        return (pts.real**2 + pts.imag**2).sum(axis=1) < 1.0
    if k == "ellipsoid":
        return (np.abs(pts) ** domain._p2[None, :]).sum(axis=1) < 1.0
    if k == "product":
        off = domain._offsets
        out = np.ones(pts.shape[0], dtype=bool)
        for i, f in enumerate(domain.factors):
            out &= _member_many(f, pts[:, off[i] : off[i + 1]])
        return out
    if k == "scaled":
        return _member_many(domain.inner, pts / domain.scale_by)
    if k == "punctured":
        return pts.any(axis=1) & _member_many(domain.inner, pts)
    if k == "halfspaces":
        return (np.abs(pts @ domain._A.T) < domain._c[None, :]).all(axis=1)
    raise ContractViolation(f"unknown domain kind {k!r}")


def membership_many(domain: Domain, pts) -> np.ndarray:
    """Vectorised membership over rows of ``pts`` (shape (m, dim))."""
    pts = np.asarray(pts, dtype=complex)
    if pts.ndim == 1:
        pts = pts[None, :]
    if pts.shape[1] != domain.dim:
        raise ContractViolation("point dimension mismatch")
    finite = np.isfinite(pts.real).all(axis=1) & np.isfinite(pts.imag).all(axis=1)
    out = np.zeros(pts.shape[0], dtype=bool)
    if finite.any():
        out[finite] = _member_many(domain, pts[finite])
    return out


def certifies_weights(domain: Domain, weights: Weights) -> bool:
    """True when the structure guarantees closure under the weighted action.

    Complete Reinhardt domains are closed under every coordinatewise shrink,
    hence weighted-balanced for all weight vectors.  Otherwise only the
    canonical weights (and the balanced case) are certified.
    """
    if len(weights) != domain.dim:
        return False
    if domain.kind == "punctured":
        return False
    if domain.flags.complete_reinhardt:
        return True
    if domain.kind == "product":
        off = domain._offsets
        return all(
            certifies_weights(f, weights.slice(off[i], off[i + 1]))
            for i, f in enumerate(domain.factors)
        )
    if domain.kind == "scaled":
        return certifies_weights(domain.inner, weights)
    if domain.flags.balanced and all(v == 1 for v in weights):
        return True
    canon = domain.flags.canonical_weights
    return canon is not None and canon.values == weights.values


def weighted_action(lam: complex, weights: Weights, z) -> np.ndarray:
    """Apply the weighted disk action (lambda^{d_i} z_i)."""
    z = as_point(z)
    lam = complex(lam)
    return np.asarray([lam**d for d in weights], dtype=complex) * z


def filled(domain: Domain) -> Domain:
    """The domain with every puncture removed (recursively)."""
    if domain.kind == "punctured":
        return filled(domain.inner)
    if domain.kind == "scaled":
        inner = filled(domain.inner)
        return domain if inner is domain.inner else scale(domain.scale_by, inner)
    if domain.kind == "product":
        fs = tuple(filled(f) for f in domain.factors)
        if all(a is b for a, b in zip(fs, domain.factors)):
            return domain
        return product(fs)
    return domain


Pin = tuple[tuple[int, complex], ...]


def puncture_pins(domain: Domain) -> tuple[Pin, ...]:
    """Removed slices as pinned-coordinate sets.

    A pin ``((i, v), ...)`` denotes the slice {z : z_i = v for each entry};
    remaining coordinates are free.  A puncture of an n-dimensional domain
    pins all n coordinates at 0.
    """
    k = domain.kind
    if k == "punctured":
        return (tuple((i, 0j) for i in range(domain.dim)),)
    if k == "scaled":
        return tuple(
            tuple((i, v * domain.scale_by) for i, v in pin)
            for pin in puncture_pins(domain.inner)
        )
    if k == "product":
        pins: list[Pin] = []
        off = domain._offsets
        for idx, f in enumerate(domain.factors):
            for pin in puncture_pins(f):
                pins.append(tuple((i + off[idx], v) for i, v in pin))
        return tuple(pins)
    return ()


def disk_product_radii(domain: Domain) -> np.ndarray | None:
    """Per-coordinate radii when the filled domain is a product of disks."""
    k = domain.kind
    if k == "polydisk":
        return np.ones(domain.dim)
    if k in ("ball", "ellipsoid") and domain.dim == 1:
        return np.ones(1)
    if k == "scaled":
        inner = disk_product_radii(domain.inner)
        return None if inner is None else abs(domain.scale_by) * inner
    if k == "punctured":
        return disk_product_radii(domain.inner)
    if k == "product":
        parts = [disk_product_radii(f) for f in domain.factors]
        if any(p is None for p in parts):
            return None
        return np.concatenate(parts)  # type: ignore[arg-type]
    return None


def ball_like_radius(domain: Domain) -> float | None:
    """Radius when the filled domain is a Euclidean ball, else None."""
    k = domain.kind
    if k == "ball":
        return 1.0
    if k == "ellipsoid" and all(x == 1 for x in domain.p):
        return 1.0
    if k == "scaled":
        inner = ball_like_radius(domain.inner)
        return None if inner is None else abs(domain.scale_by) * inner
    if k == "punctured":
        return ball_like_radius(domain.inner)
    return None


def domain_to_json(domain: Domain) -> dict:
    k = domain.kind
    if k == "ball":
        return {"kind": "ball", "n": domain.dim}
    if k == "polydisk":
        return {"kind": "polydisk", "n": domain.dim}
    if k == "ellipsoid":
        return {"kind": "ellipsoid", "p": list(domain.p)}
    if k == "product":
        return {"kind": "product", "factors": [domain_to_json(f) for f in domain.factors]}
    if k == "scaled":
        return {"kind": "scaled", "a": domain.scale_by, "inner": domain_to_json(domain.inner)}
    if k == "punctured":
        return {"kind": "punctured", "inner": domain_to_json(domain.inner)}
    if k == "halfspaces":
        return {
            "kind": "halfspaces",
            "functionals": [
                [[v.real, v.imag] for v in row] for row in domain.functionals
            ],
            "bounds": list(domain.functional_bounds),
        }
    raise ContractViolation(f"unknown domain kind {k!r}")


def domain_from_json(data: dict) -> Domain:
    if not isinstance(data, dict) or "kind" not in data:
        raise ContractViolation("domain description must be an object with a 'kind'")
    k = data["kind"]
    if k == "ball":
        return unit_ball(int(data["n"]))
    if k == "disk":
        return disk()
    if k == "polydisk":
        return polydisk(int(data["n"]))
    if k == "ellipsoid":
        return complex_ellipsoid([int(x) for x in data["p"]])
    if k == "product":
        return product([domain_from_json(f) for f in data["factors"]])
    if k == "scaled":
        return scale(float(data["a"]), domain_from_json(data["inner"]))
    if k == "punctured":
        return puncture(domain_from_json(data["inner"]))
    if k == "halfspaces":
        rows = [[complex(v[0], v[1]) for v in row] for row in data["functionals"]]
        return halfspace_domain(rows, [float(b) for b in data["bounds"]])
    raise ContractViolation(f"unknown domain kind {k!r}")


def domain_signature(domain: Domain) -> str:
    """Stable textual signature, used for seed chains and shape comparison."""
    import json as _json

    return _json.dumps(domain_to_json(domain), sort_keys=True, separators=(",", ":"))
