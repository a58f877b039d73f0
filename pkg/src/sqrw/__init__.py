"""Scattering quantum walk on the d-dimensional hypercube.

Photon amplitudes live on directed edges and evolve by local scattering at
the vertices.  The package provides the full exponential-state walk, the
O(d) layer-reduced walk for symmetric states, scattering through attached
semi-infinite tails, the equivalent gate cascade plus coin circuit, a
marked-vertex search driver, and the Fourier block diagonalization of the
step operator, together with a CSV-emitting command line frontend (see the
``sqrw`` entry point).
"""

from .errors import MemoryCapError, SqrwError, TruncationError, ValidationError
from .multiport import (
    MultiportCoeffs,
    UnitarityCheck,
    custom_coeffs,
    grover_coeffs,
    multiport_matrix,
    phase_coeffs,
    pseudo_eigensystem,
    symmetric_coeffs,
    validate_unitarity,
)
from .hypercube import (
    embed_layer_state,
    extract_layer_state,
    flat_index,
    hamming_layer,
    initial_symmetric_state,
    read_state_csv,
    state_norm,
    write_state_csv,
)
from .layers import (
    LayerState,
    classical_hitting_probability,
    classical_walk_step,
    corner_pair_state,
    edge_counting_norm,
    hitting_amplitude_closed_form,
    hitting_ratio_table,
    layer_distribution_series,
    middle_state,
    origin_state,
    reduced_step,
)
from .evolution import (
    EvolutionConfig,
    evolve,
    layer_distribution_full,
    layer_probability,
    quantum_hitting_probability,
    step,
    vertex_probability,
)
from .scattering import (
    ScatterState,
    boundary_coeffs,
    detection_probability_series,
    interferometer_amplitude,
    scatter_step,
    simulate_interferometer_amplitude,
)
from .circuit import apply_coin, apply_phicnot, circuit_step, coin_eigensystem, coin_matrix
from .search import SearchConfig, SearchResult, run_search, uniform_edge_state
from .spectral import (
    block_matrix,
    fourier_basis_state,
    full_spectrum_via_blocks,
    rotation_apply,
    rotation_apply_about,
    translation_apply,
)

__version__ = "0.1.0"
