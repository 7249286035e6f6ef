"""Quantum annealing with per-spin longitudinal bias fields.

Simulator and benchmark harness for standard, biased, iterative, and
accumulative-antibias annealing protocols on random exact-cover instances
with unique satisfying assignments.
"""

__version__ = "0.1.0"

from .annealing import RunRecord, Schedule, dense_propagator_oracle, evolve, run_once
from .errors import CapabilityError, InputError
from .exact_cover import (
    Clause,
    Instance,
    brute_force_minima,
    cost_of_config,
    flip_d_spins,
    generate_instance,
    hamming,
    load_instance,
    save_instance,
)
from .protocols import (
    EnsembleStats,
    ProtocolResult,
    metrics,
    run_antibias,
    run_biased,
    run_iterative,
    run_standard,
)
from .statevector import (
    StateVector,
    build_diagonal,
    initial_state,
    magnetization,
    overlap_probability,
    sample_config,
)
