"""Marked-vertex walk: stationarity, covariance, amplification."""

import numpy as np
import pytest

from sqrw.errors import ValidationError
from sqrw.evolution import EvolutionConfig, step, vertex_probability
from sqrw.hypercube import direction_mask, state_norm, zero_full_state
from sqrw.multiport import grover_coeffs, phase_coeffs
from sqrw.search import (
    SearchConfig,
    oracle_marked_step,
    run_search,
    success_probability,
    uniform_edge_state,
)


def test_uniform_state_is_normalized():
    assert abs(state_norm(uniform_edge_state(6)) - 1.0) <= 1e-12


def test_marked_vertex_reflects_with_phase():
    d = 4
    marked = 5
    cfg = SearchConfig(dim=d, marked=marked, steps=0)
    state = zero_full_state(d)
    entering = marked ^ direction_mask(d, 2)
    state[entering, 1] = 1.0  # edge entering the marked vertex along direction 2
    out = oracle_marked_step(state, cfg)
    assert out[marked, 1] == pytest.approx(-1.0, abs=1e-15)
    assert np.count_nonzero(out) == 1


def test_without_override_matches_plain_step():
    d = 5
    cfg = SearchConfig(dim=d, marked=3, steps=0)
    plain = EvolutionConfig(d, grover_coeffs(d))
    s = uniform_edge_state(d)
    marked_off = step(s, plain)
    # the uniform state is stationary for the unperturbed walk
    assert np.max(np.abs(marked_off - s)) <= 1e-12


def test_unperturbed_walk_keeps_uniform_success():
    d = 6
    n = 1 << d
    cfg = EvolutionConfig(d, grover_coeffs(d))
    s = uniform_edge_state(d)
    for _ in range(20):
        s = step(s, cfg)
        assert vertex_probability(s, 17) == pytest.approx(1 / n, abs=1e-12)


def test_symmetry_breaking_onset():
    # A phase-only marked vertex leaves every probability at the uniform
    # baseline until the flipped amplitudes interfere at the diffusing
    # neighbours: the in-edges deviate at step 2, the out-edges at step 3.
    d = 4
    cfg_out = SearchConfig(dim=d, marked=0, steps=0)
    cfg_in = SearchConfig(dim=d, marked=0, steps=0, metric="in")
    baseline = 1 / (1 << d)
    s = uniform_edge_state(d)
    s = oracle_marked_step(s, cfg_out)
    assert success_probability(s, cfg_out) == pytest.approx(baseline, abs=1e-12)
    assert success_probability(s, cfg_in) == pytest.approx(baseline, abs=1e-12)
    s = oracle_marked_step(s, cfg_out)
    assert success_probability(s, cfg_out) == pytest.approx(baseline, abs=1e-12)
    assert abs(success_probability(s, cfg_in) - baseline) > 1e-3
    s = oracle_marked_step(s, cfg_out)
    assert abs(success_probability(s, cfg_out) - baseline) > 1e-3


def test_run_search_starts_at_baseline_and_amplifies():
    d = 6
    res = run_search(SearchConfig(dim=d, marked=9, steps=32))
    assert res.probabilities[0] == pytest.approx(1 / (1 << d), abs=1e-12)
    assert res.peak_probability > 25 / (1 << d)
    assert res.peak_step > 0


def test_translation_covariance_of_success_series():
    d = 5
    a = run_search(SearchConfig(dim=d, marked=0, steps=24))
    b = run_search(SearchConfig(dim=d, marked=19, steps=24))
    assert np.max(np.abs(a.probabilities - b.probabilities)) <= 1e-12


def test_norm_conserved_with_marked_vertex():
    d = 5
    cfg = SearchConfig(dim=d, marked=7, steps=0)
    s = uniform_edge_state(d)
    for _ in range(50):
        s = oracle_marked_step(s, cfg)
    assert abs(state_norm(s) - 1.0) <= 1e-12


def test_in_metric_counts_entering_edges():
    d = 3
    marked = 2
    cfg_in = SearchConfig(dim=d, marked=marked, steps=0, metric="in")
    state = zero_full_state(d)
    state[marked ^ direction_mask(d, 1), 0] = 1.0
    assert success_probability(state, cfg_in) == pytest.approx(1.0, abs=1e-15)
    cfg_out = SearchConfig(dim=d, marked=marked, steps=0, metric="out")
    assert success_probability(state, cfg_out) == 0.0


def test_custom_marked_phase():
    d = 4
    cfg = SearchConfig(dim=d, marked=1, steps=8, marked_coeffs=phase_coeffs(d, 1j))
    res = run_search(cfg)
    assert res.probabilities.shape == (9,)
    assert np.all(res.probabilities >= 0)


def test_config_validation():
    with pytest.raises(ValidationError):
        SearchConfig(dim=3, marked=8, steps=5)
    with pytest.raises(ValidationError):
        SearchConfig(dim=3, marked=0, steps=-1)
    with pytest.raises(ValidationError):
        SearchConfig(dim=3, marked=0, steps=5, metric="sideways")
