"""Marked-vertex search: one vertex reflects with a phase, the rest diffuse.

The marked vertex carries a purely reflecting multiport (t = 0, |r| = 1,
default r = -1) while every other vertex keeps the diffusion coefficients.
The oracle ancilla is folded into this vertex-conditional coin by the usual
phase-kickback identity, so the walk runs on the plain edge space.  Starting
from the uniform superposition over all d * 2**d edges, probability builds
up on the edges around the marked vertex over roughly sqrt(2**d) steps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .errors import ValidationError
from .evolution import EvolutionConfig, step, vertex_probability
from .hypercube import direction_mask, ensure_full_state_fits
from .multiport import MultiportCoeffs, grover_coeffs, phase_coeffs, require_valid

__all__ = [
    "SearchConfig",
    "SearchResult",
    "uniform_edge_state",
    "oracle_marked_step",
    "success_probability",
    "run_search",
]


@dataclass(frozen=True)
class SearchConfig:
    """Search run parameters.

    ``metric`` selects the success reading: probability on the edges
    leaving the marked vertex ("out", default) or on the edges entering it
    ("in"); a hit query may be considered answered by either endpoint of
    the occupied edge.
    """

    dim: int
    marked: int
    steps: int
    marked_coeffs: MultiportCoeffs | None = None
    coeffs: MultiportCoeffs | None = None
    metric: str = "out"

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValidationError(f"dimension must be >= 1 (got {self.dim})")
        if not 0 <= self.marked < (1 << self.dim):
            raise ValidationError(f"marked vertex {self.marked} out of range for d={self.dim}")
        if self.steps < 0:
            raise ValidationError(f"step count must be >= 0 (got {self.steps})")
        if self.marked_coeffs is None:
            object.__setattr__(self, "marked_coeffs", phase_coeffs(self.dim))
        if self.coeffs is None:
            object.__setattr__(self, "coeffs", grover_coeffs(self.dim))
        require_valid(self.marked_coeffs)
        require_valid(self.coeffs)
        if self.marked_coeffs.degree != self.dim or self.coeffs.degree != self.dim:
            raise ValidationError("coefficient degrees must match the dimension")
        if self.metric not in ("out", "in"):
            raise ValidationError(f"metric must be 'out' or 'in' (got {self.metric!r})")

    def evolution_config(self) -> EvolutionConfig:
        return EvolutionConfig(self.dim, self.coeffs, overrides={self.marked: self.marked_coeffs})


@dataclass(frozen=True)
class SearchResult:
    probabilities: NDArray[np.float64]
    peak_step: int
    peak_probability: float


def uniform_edge_state(d: int) -> NDArray[np.complex128]:
    """Equal amplitude on every directed edge."""
    ensure_full_state_fits(d)
    amp = 1.0 / math.sqrt(d * (1 << d))
    return np.full(((1 << d), d), amp, dtype=np.complex128)


def oracle_marked_step(state: NDArray[np.complex128], cfg: SearchConfig) -> NDArray[np.complex128]:
    """One step of the walk with the marked-vertex override in place."""
    return step(state, cfg.evolution_config())


def success_probability(state: NDArray[np.complex128], cfg: SearchConfig) -> float:
    """Probability on the marked vertex's out-edges (or in-edges, per the metric)."""
    if cfg.metric == "out":
        return vertex_probability(state, cfg.marked)
    d = cfg.dim
    total = 0.0
    for a in range(1, d + 1):
        total += abs(state[cfg.marked ^ direction_mask(d, a), a - 1]) ** 2
    return total


def run_search(cfg: SearchConfig) -> SearchResult:
    """Walk from the uniform state, tracking success probability per step."""
    evo = cfg.evolution_config()
    state = uniform_edge_state(cfg.dim)
    series = np.empty(cfg.steps + 1, dtype=np.float64)
    series[0] = success_probability(state, cfg)
    for n in range(1, cfg.steps + 1):
        state = step(state, evo)
        series[n] = success_probability(state, cfg)
    peak_step = int(np.argmax(series))
    return SearchResult(series, peak_step, float(series[peak_step]))
