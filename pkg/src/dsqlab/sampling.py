"""Deterministic seeded sampling.

Every random draw in the library flows through a seed chain derived from
(seed, label, label, ...), so identical configurations reproduce identical
samples regardless of evaluation order or parallelism.
"""
from __future__ import annotations

import zlib

import numpy as np

from .domains import Domain, membership_many
from .errors import NumericFailure

__all__ = [
    "seed_chain",
    "chain_string",
    "sample_unit_disk",
    "sample_closed_disk_scalars",
    "sample_unit_sphere",
    "sample_points",
]

_REJECTION_ROUNDS = 500


def chain_string(seed: int, *labels) -> str:
    return "/".join([str(int(seed))] + [str(x) for x in labels])


def seed_chain(seed: int, *labels) -> np.random.Generator:
    """Generator keyed by the seed plus a tuple of stable string labels."""
    key = tuple(zlib.crc32(str(x).encode("utf8")) for x in labels)
    entropy = int(seed) % (2**63)
    return np.random.default_rng(np.random.SeedSequence(entropy=entropy, spawn_key=key))


def sample_unit_disk(rng: np.random.Generator, count: int) -> np.ndarray:
    """Uniform draws from the open unit disk in C."""
    r = np.sqrt(rng.random(count))
    theta = rng.random(count) * (2.0 * np.pi)
    return r * np.exp(1j * theta)


def sample_closed_disk_scalars(
    rng: np.random.Generator,
    count: int,
    radius: float = 1.0,
    boundary_fraction: float = 0.1,
    real_fraction: float = 0.0,
) -> np.ndarray:
    """Scalars from the closed disk, mixing in exact-modulus and real draws."""
    vals = radius * sample_unit_disk(rng, count)
    n_boundary = int(count * boundary_fraction)
    if n_boundary:
        theta = rng.random(n_boundary) * (2.0 * np.pi)
        vals[:n_boundary] = radius * np.exp(1j * theta)
    n_real = int(count * real_fraction)
    if n_real:
        vals[count - n_real :] = radius * (2.0 * rng.random(n_real) - 1.0)
    return vals


def _gaussian_complex(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    return rng.standard_normal((count, n)) + 1j * rng.standard_normal((count, n))


def sample_unit_sphere(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    """Uniform points on the unit sphere of C^n."""
    g = _gaussian_complex(rng, count, n)
    norms = np.linalg.norm(g, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return g / norms


def _rejection(domain: Domain, count: int, rng: np.random.Generator, proposal) -> np.ndarray:
    out = np.empty((0, domain.dim), dtype=complex)
    for _ in range(_REJECTION_ROUNDS):
        batch = proposal(max(4 * count, 64))
        keep = batch[membership_many(domain, batch)]
        out = np.vstack([out, keep])
        if out.shape[0] >= count:
            return out[:count]
    raise NumericFailure(f"rejection sampling failed for domain kind {domain.kind!r}")


def sample_points(domain: Domain, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` interior points, shape (count, dim)."""
    k = domain.kind
    n = domain.dim
    if count == 0:
        return np.empty((0, n), dtype=complex)
    if k == "polydisk":
        return np.stack([sample_unit_disk(rng, count) for _ in range(n)], axis=1)
    if k == "ball":
        u = sample_unit_sphere(rng, count, n)
        r = rng.random(count) ** (1.0 / (2.0 * n))
        return u * r[:, None]
    if k == "ellipsoid":
        pd = np.stack([sample_unit_disk(rng, count) for _ in range(n)], axis=1)

        def proposal(m):
            return np.stack([sample_unit_disk(rng, m) for _ in range(n)], axis=1)

        keep = membership_many(domain, pd)
        if keep.all():
            return pd
        return np.vstack([pd[keep], _rejection(domain, count - int(keep.sum()), rng, proposal)])
    if k == "product":
        parts = [sample_points(f, count, rng) for f in domain.factors]
        return np.concatenate(parts, axis=1)
    if k == "scaled":
        return domain.scale_by * sample_points(domain.inner, count, rng)
    if k == "punctured":
        pts = sample_points(domain.inner, count, rng)
        bad = ~pts.any(axis=1)
        while bad.any():
            pts[bad] = sample_points(domain.inner, int(bad.sum()), rng)
            bad = ~pts.any(axis=1)
        return pts
    if k == "halfspaces":
        R = domain.bound_radius

        def proposal(m):
            u = sample_unit_sphere(rng, m, n)
            r = rng.random(m) ** (1.0 / (2.0 * n))
            return R * u * r[:, None]

        return _rejection(domain, count, rng, proposal)
    raise NumericFailure(f"no sampler for domain kind {k!r}")
