"""Composable injective holomorphic maps with exact inverses.

Nodes apply to complex arrays of shape (..., n) so image and coverage
checks can run on whole sample batches.  Every node carries a closed-form
inverse; ``invert`` builds the inverse tree explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .domains import Weights, as_point, point_from_json, point_to_json
from .errors import ContractViolation

__all__ = [
    "Translate",
    "DiagScale",
    "MoebiusPerCoord",
    "DPower",
    "ShiftShrink",
    "BallMoebius",
    "BlockDiag",
    "Compose",
    "InverseOf",
    "apply_map",
    "invert",
    "map_to_json",
    "map_from_json",
]


def _vec(values, n: int | None = None) -> np.ndarray:
    v = as_point(values)
    if n is not None and v.shape != (n,):
        raise ContractViolation("parameter vector has wrong length")
    v = v.copy()
    v.flags.writeable = False
    return v


@dataclass(frozen=True, eq=False)
class Translate:
    offset: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "offset", _vec(self.offset))

    def apply(self, pts: np.ndarray) -> np.ndarray:
        return pts + self.offset

    def inverse(self) -> "Translate":
        return Translate(-self.offset)


@dataclass(frozen=True, eq=False)
class DiagScale:
    factors: np.ndarray

    def __post_init__(self):
        f = _vec(self.factors)
        if np.any(f == 0):
            raise ContractViolation("diagonal factors must be nonzero")
        object.__setattr__(self, "factors", f)

    def apply(self, pts: np.ndarray) -> np.ndarray:
        return pts * self.factors

    def inverse(self) -> "DiagScale":
        return DiagScale(1.0 / self.factors)


@dataclass(frozen=True, eq=False)
class MoebiusPerCoord:
    """Coordinatewise disk automorphism z_i -> (c_i - z_i) / (1 - conj(c_i) z_i)."""

    centers: np.ndarray

    def __post_init__(self):
        c = _vec(self.centers)
        if np.any(np.abs(c) >= 1.0):
            raise ContractViolation("Moebius centers must lie in the open unit disk")
        object.__setattr__(self, "centers", c)

    def apply(self, pts: np.ndarray) -> np.ndarray:
        c = self.centers
        return (c - pts) / (1.0 - np.conjugate(c) * pts)

    def inverse(self) -> "MoebiusPerCoord":
        # the coordinatewise automorphism is an involution
        return MoebiusPerCoord(self.centers)


@dataclass(frozen=True, eq=False)
class DPower:
    """z -> (ratio^{d_1} z_1, ..., ratio^{d_n} z_n) for ratio in (0, 1]."""

    ratio: float
    weights: Weights

    def __post_init__(self):
        if not (0.0 < self.ratio <= 1.0):
            raise ContractViolation("ratio must lie in (0, 1]")
        object.__setattr__(self, "weights", Weights.of(self.weights))

    def _factors(self) -> np.ndarray:
        return np.asarray([self.ratio**d for d in self.weights], dtype=complex)

    def apply(self, pts: np.ndarray) -> np.ndarray:
        return pts * self._factors()

    def inverse(self) -> "DiagScale":
        return DiagScale(1.0 / self._factors())


@dataclass(frozen=True, eq=False)
class ShiftShrink:
    """z -> ((z_i - shift_i) / (2 (1 + stiffness)^{d_i}))."""

    shift: np.ndarray
    stiffness: float
    weights: Weights

    def __post_init__(self):
        object.__setattr__(self, "shift", _vec(self.shift))
        if self.stiffness < 0:
            raise ContractViolation("stiffness must be nonnegative")
        object.__setattr__(self, "weights", Weights.of(self.weights))

    def _den(self) -> np.ndarray:
        return np.asarray(
            [2.0 * (1.0 + self.stiffness) ** d for d in self.weights], dtype=complex
        )

    def apply(self, pts: np.ndarray) -> np.ndarray:
        return (pts - self.shift) / self._den()

    def inverse(self) -> "Compose":
        return Compose((DiagScale(self._den()), Translate(self.shift)))


@dataclass(frozen=True, eq=False)
class BallMoebius:
    """Automorphism of the unit ball of C^n swapping 0 and ``center``."""

    center: np.ndarray

    def __post_init__(self):
        c = _vec(self.center)
        if float(np.linalg.norm(c)) >= 1.0:
            raise ContractViolation("ball Moebius center must lie in the open ball")
        object.__setattr__(self, "center", c)

    def apply(self, pts: np.ndarray) -> np.ndarray:
        a = self.center
        na2 = float(np.sum(np.abs(a) ** 2))
        if na2 == 0.0:
            return -pts
        s = np.sqrt(1.0 - na2)
        inner = pts @ np.conjugate(a)  # (...,)
        proj = (inner / na2)[..., None] * a
        ortho = pts - proj
        return (a - proj - s * ortho) / (1.0 - inner)[..., None]

    def inverse(self) -> "BallMoebius":
        return BallMoebius(self.center)


@dataclass(frozen=True, eq=False)
class BlockDiag:
    """Apply one map per coordinate block: the product-map construction."""

    blocks: tuple
    dims: tuple[int, ...]

    def __post_init__(self):
        if len(self.blocks) != len(self.dims) or not self.blocks:
            raise ContractViolation("blocks and dims must align and be nonempty")
        object.__setattr__(self, "blocks", tuple(self.blocks))
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    def apply(self, pts: np.ndarray) -> np.ndarray:
        out = []
        off = 0
        for blk, d in zip(self.blocks, self.dims):
            out.append(apply_map(blk, pts[..., off : off + d]))
            off += d
        return np.concatenate(out, axis=-1)

    def inverse(self) -> "BlockDiag":
        return BlockDiag(tuple(invert(b) for b in self.blocks), self.dims)


@dataclass(frozen=True, eq=False)
class Compose:
    """Apply ``steps`` left to right: steps[0] first."""

    steps: tuple

    def __post_init__(self):
        if not self.steps:
            raise ContractViolation("composition needs at least one step")
        object.__setattr__(self, "steps", tuple(self.steps))

    def apply(self, pts: np.ndarray) -> np.ndarray:
        for step in self.steps:
            pts = apply_map(step, pts)
        return pts

    def inverse(self) -> "Compose":
        return Compose(tuple(invert(s) for s in reversed(self.steps)))


@dataclass(frozen=True, eq=False)
class InverseOf:
    of: object

    def apply(self, pts: np.ndarray) -> np.ndarray:
        return apply_map(invert(self.of), pts)

    def inverse(self):
        return self.of


def apply_map(m, pts) -> np.ndarray:
    pts = np.asarray(pts, dtype=complex)
    return m.apply(pts)


def invert(m):
    return m.inverse()


def map_to_json(m) -> dict:
    if isinstance(m, Translate):
        return {"node": "translate", "offset": point_to_json(m.offset)}
    if isinstance(m, DiagScale):
        return {"node": "diag", "factors": point_to_json(m.factors)}
    if isinstance(m, MoebiusPerCoord):
        return {"node": "moebius", "centers": point_to_json(m.centers)}
    if isinstance(m, DPower):
        return {"node": "dpower", "ratio": m.ratio, "weights": list(m.weights)}
    if isinstance(m, ShiftShrink):
        return {
            "node": "shiftshrink",
            "shift": point_to_json(m.shift),
            "stiffness": m.stiffness,
            "weights": list(m.weights),
        }
    if isinstance(m, BallMoebius):
        return {"node": "ballmoebius", "center": point_to_json(m.center)}
    if isinstance(m, BlockDiag):
        return {
            "node": "blockdiag",
            "blocks": [map_to_json(b) for b in m.blocks],
            "dims": list(m.dims),
        }
    if isinstance(m, Compose):
        return {"node": "compose", "steps": [map_to_json(s) for s in m.steps]}
    if isinstance(m, InverseOf):
        return {"node": "inverse", "of": map_to_json(m.of)}
    raise ContractViolation(f"unknown map node {type(m).__name__}")


def map_from_json(data: dict):
    node = data.get("node")
    if node == "translate":
        return Translate(point_from_json(data["offset"]))
    if node == "diag":
        return DiagScale(point_from_json(data["factors"]))
    if node == "moebius":
        return MoebiusPerCoord(point_from_json(data["centers"]))
    if node == "dpower":
        return DPower(float(data["ratio"]), Weights.of(data["weights"]))
    if node == "shiftshrink":
        return ShiftShrink(
            point_from_json(data["shift"]),
            float(data["stiffness"]),
            Weights.of(data["weights"]),
        )
    if node == "ballmoebius":
        return BallMoebius(point_from_json(data["center"]))
    if node == "blockdiag":
        return BlockDiag(
            tuple(map_from_json(b) for b in data["blocks"]),
            tuple(int(d) for d in data["dims"]),
        )
    if node == "compose":
        return Compose(tuple(map_from_json(s) for s in data["steps"]))
    if node == "inverse":
        return InverseOf(map_from_json(data["of"]))
    raise ContractViolation(f"unknown map node {node!r}")
