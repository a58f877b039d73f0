"""One step of the global walk on the full edge state.

The step is a gather over arrival vertices: the output amplitude on edge
|y; b> reads the d amplitudes entering y (those are |y ^ mask(a); a> for
a = 1..d) and combines them with the vertex matrix, reflection r on the
matching direction and transmission t on the rest.  Summation over incoming
directions is in fixed ascending order, so results are reproducible to the
bit.  Per-vertex coefficient overrides serve the marked-vertex search
without a second evolution path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

import numpy as np
from numpy.typing import NDArray

from .errors import ValidationError
from .hypercube import (
    initial_symmetric_state,
    state_dimension,
    vertex_weights,
)
from .multiport import MultiportCoeffs, grover_coeffs, require_valid

__all__ = [
    "EvolutionConfig",
    "step",
    "evolve",
    "gather_incoming",
    "layer_distribution_full",
    "layer_probability",
    "vertex_probability",
    "quantum_hitting_probability",
    "dense_operator",
]


@dataclass(frozen=True)
class EvolutionConfig:
    """Dimension, vertex coefficients, and optional per-vertex overrides."""

    dim: int
    coeffs: MultiportCoeffs
    overrides: Mapping[int, MultiportCoeffs] | None = None

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValidationError(f"dimension must be >= 1 (got {self.dim})")
        require_valid(self.coeffs)
        if self.coeffs.degree != self.dim:
            raise ValidationError(
                f"coefficient degree {self.coeffs.degree} != dimension {self.dim}"
            )
        if self.overrides:
            n = 1 << self.dim
            for vertex, c in self.overrides.items():
                if not 0 <= vertex < n:
                    raise ValidationError(f"override vertex {vertex} out of range for d={self.dim}")
                require_valid(c)
                if c.degree != self.dim:
                    raise ValidationError(
                        f"override degree {c.degree} at vertex {vertex} != dimension {self.dim}"
                    )


def gather_incoming(state: NDArray[np.complex128]) -> NDArray[np.complex128]:
    """Amplitudes entering each vertex: out[y, a-1] = state[y ^ mask(a), a-1]."""
    d = state_dimension(state)
    cube = state.reshape((2,) * d + (d,))
    incoming = np.empty_like(state)
    inc_cube = incoming.reshape((2,) * d + (d,))
    for j in range(d):
        inc_cube[..., j] = np.flip(cube[..., j], axis=j)
    return incoming


def step(state: NDArray[np.complex128], cfg: EvolutionConfig) -> NDArray[np.complex128]:
    """Scatter every edge amplitude at its arrival vertex; norm preserving."""
    d = state_dimension(state)
    if d != cfg.dim:
        raise ValidationError(f"state dimension {d} != config dimension {cfg.dim}")
    incoming = gather_incoming(state)
    totals = incoming.sum(axis=1)
    r, t = cfg.coeffs.r, cfg.coeffs.t
    out = (r - t) * incoming + t * totals[:, None]
    if cfg.overrides:
        for vertex, c in cfg.overrides.items():
            out[vertex, :] = (c.r - c.t) * incoming[vertex, :] + c.t * totals[vertex]
    return out


def evolve(state: NDArray[np.complex128], cfg: EvolutionConfig, n: int) -> NDArray[np.complex128]:
    """Apply ``step`` n times (n = 0 returns a copy)."""
    if n < 0:
        raise ValidationError(f"step count must be >= 0 (got {n})")
    out = state.copy()
    for _ in range(n):
        out = step(out, cfg)
    return out


def layer_distribution_full(state: NDArray[np.complex128]) -> NDArray[np.float64]:
    """Probability per Hamming layer, summed over all edges leaving that layer."""
    d = state_dimension(state)
    per_vertex = np.abs(state) ** 2
    return np.bincount(
        vertex_weights(d), weights=per_vertex.sum(axis=1), minlength=d + 1
    )


def layer_probability(state: NDArray[np.complex128], w: int) -> float:
    d = state_dimension(state)
    if not 0 <= w <= d:
        raise ValidationError(f"layer must be in 0..{d} (got {w})")
    return float(layer_distribution_full(state)[w])


def vertex_probability(state: NDArray[np.complex128], x: int) -> float:
    """Probability on the d edges leaving vertex x."""
    d = state_dimension(state)
    if not 0 <= x < (1 << d):
        raise ValidationError(f"vertex {x} out of range for d={d}")
    return float(np.sum(np.abs(state[x, :]) ** 2))


def quantum_hitting_probability(d: int, coeffs: MultiportCoeffs | None = None) -> float:
    """Squared per-edge amplitude at the far corner after d steps from the origin state.

    Simulated with the full walk; equals the squared closed-form hitting
    amplitude of the layer-reduced picture.
    """
    cfg = EvolutionConfig(d, coeffs if coeffs is not None else grover_coeffs(d))
    state = evolve(initial_symmetric_state(d), cfg, d)
    far = (1 << d) - 1
    return vertex_probability(state, far) / d


def dense_operator(cfg: EvolutionConfig, cap: int = 8) -> NDArray[np.complex128]:
    """Materialize the step as a dense matrix in the flat |x; a> layout.

    Dimension is capped (default d <= 8, matrix side 2048); beyond that
    only state-vector application is sensible.
    """
    if cfg.dim > cap:
        raise ValidationError(f"dense operator requested for d={cfg.dim}, cap is {cap}")
    d = cfg.dim
    n = d * (1 << d)
    op = np.empty((n, n), dtype=np.complex128)
    basis = np.zeros((1 << d, d), dtype=np.complex128)
    flat = basis.ravel()
    for i in range(n):
        flat[i] = 1.0
        op[:, i] = step(basis, cfg).ravel()
        flat[i] = 0.0
    return op
