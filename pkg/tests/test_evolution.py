"""Full edge-state step: scattering rule, unitarity, symmetry, reductions."""

import math

import numpy as np
import pytest

from helpers import random_unit_state

from sqrw.errors import ValidationError
from sqrw.evolution import (
    EvolutionConfig,
    dense_operator,
    evolve,
    layer_distribution_full,
    layer_probability,
    quantum_hitting_probability,
    step,
    vertex_probability,
)
from sqrw.hypercube import (
    direction_mask,
    embed_layer_state,
    extract_layer_state,
    initial_symmetric_state,
    parse_vertex,
    state_norm,
    zero_full_state,
)
from sqrw.layers import (
    corner_pair_state,
    layer_distribution,
    middle_state,
    origin_state,
    reduced_step,
)
from sqrw.multiport import MultiportCoeffs, grover_coeffs
from sqrw.spectral import translation_apply


def test_step_d2_transmit_only():
    d = 2
    state = zero_full_state(d)
    state[parse_vertex(d, "00"), 0] = 1.0  # |00; 1>
    out = step(state, EvolutionConfig(d, grover_coeffs(d)))
    expected = zero_full_state(d)
    expected[parse_vertex(d, "10"), 1] = 1.0  # |10; 2>
    assert np.allclose(out, expected, atol=1e-15)


def test_step_d3_scattering_amplitudes():
    d = 3
    state = zero_full_state(d)
    state[parse_vertex(d, "000"), 0] = 1.0
    out = step(state, EvolutionConfig(d, grover_coeffs(d)))
    row = parse_vertex(d, "100")
    assert out[row, 0] == pytest.approx(-1 / 3, abs=1e-15)
    assert out[row, 1] == pytest.approx(2 / 3, abs=1e-15)
    assert out[row, 2] == pytest.approx(2 / 3, abs=1e-15)
    out[row, :] = 0.0
    assert not np.any(out)


def test_step_identity_multiport_is_shift():
    d = 2
    cfg = EvolutionConfig(d, MultiportCoeffs(1.0, 0.0, d))
    state = zero_full_state(d)
    state[parse_vertex(d, "00"), 0] = 1.0
    out = step(state, cfg)
    assert out[parse_vertex(d, "10"), 0] == 1.0
    assert np.count_nonzero(out) == 1


def test_evolve_zero_steps_is_copy():
    s = random_unit_state(4, 0)
    out = evolve(s, EvolutionConfig(4, grover_coeffs(4)), 0)
    assert np.array_equal(out, s)
    assert out is not s


def test_two_steps_d2_all_on_far_corner():
    d = 2
    out = evolve(initial_symmetric_state(d), EvolutionConfig(d, grover_coeffs(d)), 2)
    assert layer_probability(out, 2) == pytest.approx(1.0, abs=1e-12)


def test_norm_conserved_100_steps():
    s = random_unit_state(8, 1)
    out = evolve(s, EvolutionConfig(8, grover_coeffs(8)), 100)
    assert abs(state_norm(out) - 1.0) <= 1e-10


def test_step_is_linear():
    d = 5
    cfg = EvolutionConfig(d, grover_coeffs(d))
    a = random_unit_state(d, 2)
    b = random_unit_state(d, 3)
    alpha, beta = 0.3 - 0.7j, 1.1 + 0.2j
    lhs = step(alpha * a + beta * b, cfg)
    rhs = alpha * step(a, cfg) + beta * step(b, cfg)
    assert np.max(np.abs(lhs - rhs)) <= 1e-12


def test_block_structure_single_arrival_vertex():
    d = 4
    cfg = EvolutionConfig(d, grover_coeffs(d))
    y = 9
    state = zero_full_state(d)
    for a in range(1, d + 1):
        state[y ^ direction_mask(d, a), a - 1] = 0.5  # every edge entering y
    out = step(state, cfg)
    support = np.nonzero(np.any(out != 0, axis=1))[0]
    assert list(support) == [y]


@pytest.mark.parametrize("d", [2, 4, 6])
def test_translations_commute_with_step(d):
    cfg = EvolutionConfig(d, grover_coeffs(d))
    s = random_unit_state(d, d)
    for b in range(1 << d):
        lhs = step(translation_apply(s, b), cfg)
        rhs = translation_apply(step(s, cfg), b)
        assert np.array_equal(lhs, rhs)


def test_layer_probability_initial_and_after_one_step():
    d = 2
    s = initial_symmetric_state(d)
    assert layer_probability(s, 0) == pytest.approx(1.0, abs=1e-15)
    assert layer_probability(s, 1) == 0.0
    out = step(s, EvolutionConfig(d, grover_coeffs(d)))
    assert layer_probability(out, 1) == pytest.approx(1.0, abs=1e-12)


def test_layer_distribution_sums_to_norm():
    s = random_unit_state(6, 5)
    assert layer_distribution_full(s).sum() == pytest.approx(1.0, abs=1e-12)


def test_vertex_probability_values():
    d = 4
    s = initial_symmetric_state(d)
    assert vertex_probability(s, 0) == pytest.approx(1.0, abs=1e-12)
    assert vertex_probability(s, 3) == 0.0
    uniform = np.full((1 << d, d), 1 / math.sqrt(d * (1 << d)), dtype=np.complex128)
    assert vertex_probability(uniform, 11) == pytest.approx(1 / (1 << d), abs=1e-12)


@pytest.mark.parametrize("d,value", [(2, 0.5), (3, 64 / 243), (4, 9 / 64)])
def test_quantum_hitting_reference_values(d, value):
    assert quantum_hitting_probability(d) == pytest.approx(value, abs=1e-12)


@pytest.mark.parametrize("d", [2, 4, 6, 8, 10])
@pytest.mark.parametrize("init", ["origin", "corners", "middle"])
def test_reduced_walk_matches_full_walk(d, init):
    make = {"origin": origin_state, "corners": corner_pair_state, "middle": middle_state}[init]
    c = grover_coeffs(d)
    cfg = EvolutionConfig(d, c)
    layer = make(d)
    full = embed_layer_state(layer)
    for _ in range(min(30, 2 * d + 5)):
        layer = reduced_step(layer, c)
        full = step(full, cfg)
    assert np.max(np.abs(layer_distribution(layer) - layer_distribution_full(full))) <= 1e-10
    recovered, deviation = extract_layer_state(full)
    assert deviation <= 1e-12
    assert np.max(np.abs(recovered.up - layer.up)) <= 1e-12
    assert np.max(np.abs(recovered.down - layer.down)) <= 1e-12


def test_override_changes_only_marked_vertex_row():
    d = 4
    marked = 6
    cfg_plain = EvolutionConfig(d, grover_coeffs(d))
    cfg_marked = EvolutionConfig(
        d, grover_coeffs(d), overrides={marked: MultiportCoeffs(-1.0, 0.0, d)}
    )
    s = random_unit_state(d, 8)
    plain = step(s, cfg_plain)
    with_mark = step(s, cfg_marked)
    diff_rows = np.nonzero(np.any(plain != with_mark, axis=1))[0]
    assert list(diff_rows) == [marked]


def test_dense_operator_is_unitary_and_capped():
    d = 3
    u = dense_operator(EvolutionConfig(d, grover_coeffs(d)))
    n = d * (1 << d)
    assert np.max(np.abs(u.conj().T @ u - np.eye(n))) <= 1e-12
    with pytest.raises(ValidationError):
        dense_operator(EvolutionConfig(9, grover_coeffs(9)), cap=8)


def test_config_validation():
    with pytest.raises(ValidationError):
        EvolutionConfig(3, grover_coeffs(4))
    with pytest.raises(ValidationError):
        EvolutionConfig(3, MultiportCoeffs(0.5, 0.5, 3))
    with pytest.raises(ValidationError):
        EvolutionConfig(3, grover_coeffs(3), overrides={99: grover_coeffs(3)})


def test_step_rejects_mismatched_state():
    with pytest.raises(ValidationError):
        step(zero_full_state(3), EvolutionConfig(4, grover_coeffs(4)))
