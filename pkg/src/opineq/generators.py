"""Seeded operator ensembles and unit-vector samples.

Randomness comes from SplitMix64 used as a counter-based generator: the
``i``-th 64-bit output of the stream seeded with ``s`` is
``mix(s + (i + 1) * 0x9E3779B97F4A7C15 mod 2**64)`` where ``mix`` is the
SplitMix64 finalizer.  Uniform doubles are ``(x >> 11) * 2**-53``; normals
come from Box-Muller on consecutive uniform pairs ``(u1, u2)`` as
``sqrt(-2 ln(1 - u1)) * (cos 2 pi u2, sin 2 pi u2)``.  A standard complex
normal entry is ``(z0 + i z1) / sqrt(2)``.  Matrix item ``k`` of an ensemble
uses its own stream seeded with output ``k`` of the ensemble-seed stream,
so items can be produced independently and in any order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import BadSpec

__all__ = [
    "GOLDEN_GAMMA",
    "splitmix64",
    "SplitMix64Stream",
    "EnsembleKind",
    "EnsembleSpec",
    "generate",
    "generate_one",
    "random_unit_vectors",
    "haar_unitary",
]

GOLDEN_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def splitmix64(seed: int, start: int, count: int) -> np.ndarray:
    """Outputs ``start .. start+count-1`` of the SplitMix64 stream for ``seed``."""
    counters = np.arange(start + 1, start + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = np.uint64(seed & _MASK) + counters * GOLDEN_GAMMA
        return _mix(state)


class SplitMix64Stream:
    """Sequential reader over one SplitMix64 stream."""

    def __init__(self, seed: int):
        self.seed = int(seed) & _MASK
        self.position = 0

    def uint64(self, count: int) -> np.ndarray:
        out = splitmix64(self.seed, self.position, count)
        self.position += count
        return out

    def uniform(self, count: int) -> np.ndarray:
        return (self.uint64(count) >> np.uint64(11)).astype(np.float64) * 2.0**-53

    def normal(self, count: int) -> np.ndarray:
        pairs = (count + 1) // 2
        u = self.uniform(2 * pairs).reshape(pairs, 2)
        radius = np.sqrt(-2.0 * np.log1p(-u[:, 0]))
        angle = 2.0 * np.pi * u[:, 1]
        z = np.stack([radius * np.cos(angle), radius * np.sin(angle)], axis=1).ravel()
        return z[:count]

    def complex_normal(self, shape) -> np.ndarray:
        size = int(np.prod(shape))
        z = self.normal(2 * size).reshape(size, 2)
        return ((z[:, 0] + 1j * z[:, 1]) / np.sqrt(2.0)).reshape(shape)


class EnsembleKind(str, enum.Enum):
    GAUSSIAN_DENSE = "GaussianDense"
    NORMAL = "Normal"
    UNITARY = "Unitary"
    INVERTIBLE = "Invertible"
    RANK_DEFICIENT_EQUAL_KERNELS = "RankDeficientEqualKernels"
    DIAGONAL = "Diagonal"

    @classmethod
    def parse(cls, name: str) -> "EnsembleKind":
        key = name.replace("-", "").replace("_", "").lower()
        for kind in cls:
            if kind.value.lower() == key:
                return kind
        raise BadSpec(f"unknown ensemble kind {name!r}; choose from {[k.value for k in cls]}")


@dataclass(frozen=True)
class EnsembleSpec:
    kind: EnsembleKind
    dim: int
    count: int
    seed: int
    scale: float = 1.0

    def __post_init__(self):
        if not isinstance(self.kind, EnsembleKind):
            object.__setattr__(self, "kind", EnsembleKind.parse(str(self.kind)))
        if int(self.dim) < 1:
            raise BadSpec(f"dim must be >= 1, got {self.dim}")
        if int(self.count) < 1:
            raise BadSpec(f"count must be >= 1, got {self.count}")
        if not 0 <= int(self.seed) <= _MASK:
            raise BadSpec(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise BadSpec(f"scale must be positive, got {self.scale}")
        if self.kind is EnsembleKind.RANK_DEFICIENT_EQUAL_KERNELS and self.dim < 2:
            raise BadSpec("RankDeficientEqualKernels needs dim >= 2")

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "dim": int(self.dim),
            "count": int(self.count),
            "seed": int(self.seed),
            "scale": float(self.scale),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EnsembleSpec":
        return cls(EnsembleKind.parse(d["kind"]), int(d["dim"]), int(d["count"]), int(d["seed"]), float(d["scale"]))


def haar_unitary(stream: SplitMix64Stream, n: int) -> np.ndarray:
    """QR of a complex Gaussian with the phases of diag(R) moved into Q."""
    q, r = np.linalg.qr(stream.complex_normal((n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))


def _invertible(stream: SplitMix64Stream, n: int) -> np.ndarray:
    while True:
        g = stream.complex_normal((n, n))
        s = np.linalg.svd(g, compute_uv=False)
        if s[-1] > 1e-3 * s[0]:
            return g


def generate_one(spec: EnsembleSpec, index: int) -> np.ndarray:
    if not 0 <= index < spec.count:
        raise IndexError(index)
    stream = SplitMix64Stream(int(splitmix64(spec.seed, index, 1)[0]))
    n = spec.dim
    kind = spec.kind
    if kind is EnsembleKind.GAUSSIAN_DENSE:
        t = stream.complex_normal((n, n))
    elif kind is EnsembleKind.NORMAL:
        u = haar_unitary(stream, n)
        d = stream.complex_normal(n)
        t = (u * d) @ u.conj().T
    elif kind is EnsembleKind.UNITARY:
        t = haar_unitary(stream, n)
    elif kind is EnsembleKind.INVERTIBLE:
        t = _invertible(stream, n)
    elif kind is EnsembleKind.RANK_DEFICIENT_EQUAL_KERNELS:
        k = 1 + int(stream.uint64(1)[0] % np.uint64(n - 1))
        u = haar_unitary(stream, n)
        block = np.zeros((n, n), dtype=np.complex128)
        block[:k, :k] = _invertible(stream, k)
        t = u @ block @ u.conj().T
    elif kind is EnsembleKind.DIAGONAL:
        t = np.diag(stream.complex_normal(n))
    else:  # pragma: no cover
        raise BadSpec(f"unhandled kind {kind}")
    return spec.scale * t


def generate(spec: EnsembleSpec) -> list[np.ndarray]:
    return [generate_one(spec, k) for k in range(spec.count)]


def random_unit_vectors(dim: int, count: int, seed: int) -> np.ndarray:
    """``count`` complex unit vectors in C^dim as the rows of an array."""
    if dim < 1:
        raise BadSpec(f"dim must be >= 1, got {dim}")
    stream = SplitMix64Stream(seed)
    x = stream.complex_normal((count, dim))
    norms = np.linalg.norm(x, axis=1, keepdims=True)
    # Box-Muller never returns an exact zero vector in practice; guard anyway
    norms[norms == 0] = 1.0
    x = x / norms
    # one refinement pass keeps |norm - 1| at the ulp level
    return x / np.linalg.norm(x, axis=1, keepdims=True)
