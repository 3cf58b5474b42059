"""Numerical core of spin-maxent."""

from spin_maxent.core.closed_forms import (
    ghz_b3_gcdo,
    ghz_c3_gcdo,
    og_entropy,
    og_gcdo,
    og_multipliers,
    oh_gcdo,
    single_spin_gcdo,
    try_closed_form,
)
from spin_maxent.core.density import (
    entropy_report,
    fidelity,
    is_physical,
    linear_entropy,
    trace_distance,
    validate,
    von_neumann_entropy,
)
from spin_maxent.core.obslevel import (
    constraints_from_state,
    custom_level,
    extend,
    named_level,
    registered_levels,
    resolve_level,
)
from spin_maxent.core.oracle import oracle_maxent
from spin_maxent.core.pauli_algebra import (
    bloch_compose,
    bloch_decompose,
    expectation,
    multiply,
    string_matrix,
)
from spin_maxent.core.solver import reconstruct, solve_dual, solve_primal_scan
from spin_maxent.core.states import bell, ghz, phase_averaged_ghz, single_spin
from spin_maxent.core.verify import Suite, run_suite

__all__ = [
    "Suite",
    "bell",
    "bloch_compose",
    "bloch_decompose",
    "constraints_from_state",
    "custom_level",
    "entropy_report",
    "expectation",
    "extend",
    "fidelity",
    "ghz",
    "ghz_b3_gcdo",
    "ghz_c3_gcdo",
    "is_physical",
    "linear_entropy",
    "multiply",
    "named_level",
    "og_entropy",
    "og_gcdo",
    "og_multipliers",
    "oh_gcdo",
    "oracle_maxent",
    "phase_averaged_ghz",
    "reconstruct",
    "registered_levels",
    "resolve_level",
    "run_suite",
    "single_spin",
    "single_spin_gcdo",
    "solve_dual",
    "solve_primal_scan",
    "string_matrix",
    "trace_distance",
    "try_closed_form",
    "validate",
    "von_neumann_entropy",
]
