"""Shared test utilities: random states and independent brute-force oracles."""

from __future__ import annotations

import numpy as np

from sqrw.multiport import MultiportCoeffs


def random_unit_state(d: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    state = rng.normal(size=(1 << d, d)) + 1j * rng.normal(size=(1 << d, d))
    return (state / np.linalg.norm(state)).astype(np.complex128)


def random_layer_coeffs(d: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(seed)
    up = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
    down = rng.normal(size=d + 1) + 1j * rng.normal(size=d + 1)
    up[d] = 0.0
    down[0] = 0.0
    return up, down


def brute_force_first_detection(d: int, c: MultiportCoeffs, b: MultiportCoeffs) -> complex:
    """Amplitude on the detector edge after d + 1 steps, by walking every path.

    Works on an explicit adjacency representation of the cube with one tail
    vertex on each side, scattering edge by edge with the port-level
    amplitudes r (same edge back) and t (every other edge).  Independent of
    the production step implementations.
    """
    n = 1 << d
    far = n - 1
    left, right = "L1", "R1"

    def neighbors(v):
        if v == left:
            return [0]
        if v == right:
            return [far]
        out = [v ^ (1 << (d - 1 - j)) for j in range(d)]
        if v == 0:
            out.append(left)
        if v == far:
            out.append(right)
        return out

    def coeffs_at(v):
        if v in (left, right):
            return MultiportCoeffs(0.0, 1.0, 2)
        if v in (0, far):
            return b
        return c

    target = (far, right)
    total = 0.0 + 0.0j

    def walk(edge, amp, steps_left):
        nonlocal total
        if steps_left == 0:
            if edge == target:
                total += amp
            return
        src, dst = edge
        cf = coeffs_at(dst)
        for nxt in neighbors(dst):
            factor = cf.r if nxt == src else cf.t
            if factor != 0:
                walk((dst, nxt), amp * factor, steps_left - 1)

    walk((left, 0), 1.0 + 0.0j, d + 1)
    return total
