"""Spin squeezing of the OH ground-state Lambda doublet in crossed static fields.

The package simulates a single trapped OH molecule whose low-field physics
reduces to a pseudo-spin-1/2 (the two Lambda-doublet parity components)
coupled to the J = 3/2 angular momentum by a static electric field, with a
magnetic field at an angle theta to it.  Adiabatic elimination of the
pseudo-spin yields one-axis-twisting dynamics of the J = 3/2 manifold, and
the package provides both the exact eight-level evolution and the reduced
four-level closed forms, squeezing-parameter series, and the optimization
of the Zeeman-to-twisting ratio.
"""

from .units import FieldParams, LabParams, adiabaticity_ratio, to_reduced
from .spin import SpinOps, embed_initial_state, make_spin_ops, rotation, stretched_state
from .hamiltonians import (
    AdiabaticRegimeWarning,
    EquivalenceReport,
    HamiltonianKind,
    build_adiabatic,
    build_full,
    build_named,
    full_matrix_tabulated,
    verify_equivalence,
)
from .dynamics import (
    MomentRecord,
    SqueezeSeries,
    evolve,
    max_heisenberg_violation,
    reduce,
    resolve_twist_sign,
    rotated_moments,
    run_series,
    xi_wineland,
)
from . import analytic, linalg, optimize

__version__ = "0.1.0"

__all__ = [
    "AdiabaticRegimeWarning",
    "EquivalenceReport",
    "FieldParams",
    "HamiltonianKind",
    "LabParams",
    "MomentRecord",
    "SpinOps",
    "SqueezeSeries",
    "adiabaticity_ratio",
    "analytic",
    "build_adiabatic",
    "build_full",
    "build_named",
    "embed_initial_state",
    "evolve",
    "full_matrix_tabulated",
    "linalg",
    "make_spin_ops",
    "max_heisenberg_violation",
    "optimize",
    "reduce",
    "resolve_twist_sign",
    "rotated_moments",
    "rotation",
    "run_series",
    "stretched_state",
    "to_reduced",
    "verify_equivalence",
    "xi_wineland",
]
