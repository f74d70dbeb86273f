"""Builders for the eight-level field Hamiltonian and its four-level reductions.

The eight-level operator couples the pseudo-spin-1/2 Lambda-doublet degree
of freedom (slow tensor factor) to the J = 3/2 angular momentum (fast
factor).  Adiabatic elimination of the pseudo-spin produces a family of
four-level one-axis-twisting forms; each named reduction used in the
analysis is available from :func:`build_named`.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .linalg import kron
from .spin import make_spin_ops
from .units import FieldParams

_HALF = make_spin_ops(0.5)
_J = make_spin_ops(1.5)
_PAULI_X = 2.0 * _HALF.jx
_PAULI_Z = 2.0 * _HALF.jz
_I2 = _HALF.identity
_I4 = _J.identity

_ANGLE_TOL = 1e-12


class HamiltonianKind(enum.Enum):
    """Named Hamiltonians of the model family."""

    FULL = "full"
    ADIABATIC = "adiabatic"
    KITAGAWA_UEDA = "kitagawa_ueda"
    LAW_NG_LEUNG = "law_ng_leung"
    GENERAL_THETA = "general_theta"
    AGARWAL_PURI_ROTATED = "agarwal_puri_rotated"


class AdiabaticRegimeWarning(UserWarning):
    """A reduced Hamiltonian was built outside its validity regime."""


def _cos_sin(theta: float) -> tuple[float, float]:
    # Exact values at the quadrant angles keep the reduced forms exact
    # (e.g. the general-angle builder collapses to the uniform-field one
    # entrywise at theta = pi/2, with no 1e-17 cosine residue).
    if theta == 0.0:
        return 1.0, 0.0
    if theta == 0.5 * math.pi:
        return 0.0, 1.0
    if theta == math.pi:
        return -1.0, 0.0
    return math.cos(theta), math.sin(theta)


def twist_axis(theta: float) -> np.ndarray:
    """The Stark coupling direction ``jz*cos(theta) - jx*sin(theta)`` (4x4)."""
    c, s = _cos_sin(theta)
    return c * _J.jz - s * _J.jx


def build_full(params: FieldParams) -> np.ndarray:
    """Eight-level Hamiltonian in tensor form.

    ``-delta_t (sigma_z x I) - b_t (I x Jz) + e_t (sigma_x x axis)`` with
    ``axis = Jz cos(theta) - Jx sin(theta)``.  The first four basis states
    carry the ``-delta_t`` diagonal, the last four ``+delta_t``.
    """
    axis = twist_axis(params.theta)
    return (
        -params.delta_t * kron(_PAULI_Z, _I4)
        - params.b_t * kron(_I2, _J.jz)
        + params.e_t * kron(_PAULI_X, axis)
    )


def full_matrix_tabulated(params: FieldParams) -> np.ndarray:
    """Entry-by-entry tabulated form of the eight-level Hamiltonian.

    Written out one matrix element at a time in terms of the raw Zeeman and
    Stark rates (``mu_B B`` and ``mu_e E``), deliberately independent of the
    tensor-product construction in :func:`build_full` so the two can be
    cross-checked against each other.
    """
    d = params.delta_t  # half the Lambda-doubling
    zeeman = 1.25 * params.b_t  # mu_B * B, undoing the 4/5 reduction
    stark = 2.5 * params.e_t  # mu_e * E, undoing the 2/5 reduction
    c, s = _cos_sin(params.theta)
    ec = stark * c
    es = stark * s
    rt3 = math.sqrt(3.0)

    h = np.zeros((8, 8), dtype=complex)
    # diagonal: -d block then +d block, Zeeman ladder -6/5 .. +6/5
    h[0, 0] = -d - (6.0 / 5.0) * zeeman
    h[1, 1] = -d - (2.0 / 5.0) * zeeman
    h[2, 2] = -d + (2.0 / 5.0) * zeeman
    h[3, 3] = -d + (6.0 / 5.0) * zeeman
    h[4, 4] = d - (6.0 / 5.0) * zeeman
    h[5, 5] = d - (2.0 / 5.0) * zeeman
    h[6, 6] = d + (2.0 / 5.0) * zeeman
    h[7, 7] = d + (6.0 / 5.0) * zeeman
    # Stark block, upper-right: diagonal-in-m cosine couplings ...
    h[0, 4] = (3.0 / 5.0) * ec
    h[1, 5] = (1.0 / 5.0) * ec
    h[2, 6] = -(1.0 / 5.0) * ec
    h[3, 7] = -(3.0 / 5.0) * ec
    # ... and m -> m+-1 sine couplings, all with a minus sign
    h[0, 5] = -(rt3 / 5.0) * es
    h[1, 4] = -(rt3 / 5.0) * es
    h[1, 6] = -(2.0 / 5.0) * es
    h[2, 5] = -(2.0 / 5.0) * es
    h[2, 7] = -(rt3 / 5.0) * es
    h[3, 6] = -(rt3 / 5.0) * es
    # mirror block, lower-left
    h[4, 0] = (3.0 / 5.0) * ec
    h[5, 1] = (1.0 / 5.0) * ec
    h[6, 2] = -(1.0 / 5.0) * ec
    h[7, 3] = -(3.0 / 5.0) * ec
    h[5, 0] = -(rt3 / 5.0) * es
    h[4, 1] = -(rt3 / 5.0) * es
    h[6, 1] = -(2.0 / 5.0) * es
    h[5, 2] = -(2.0 / 5.0) * es
    h[7, 2] = -(rt3 / 5.0) * es
    h[6, 3] = -(rt3 / 5.0) * es
    return h


@dataclass(frozen=True)
class EquivalenceReport:
    """Outcome of the tensor-vs-tabulated cross-check."""

    max_abs_diff: float
    matrix_scale: float
    tol: float
    passed: bool


def verify_equivalence(params: FieldParams, rtol: float = 1e-12) -> EquivalenceReport:
    """Compare :func:`build_full` against :func:`full_matrix_tabulated`.

    Passes when the largest entrywise difference is at most ``rtol`` times
    the largest entry magnitude.  Failure detail rides in the report; no
    exception is raised.
    """
    tensor = build_full(params)
    tabulated = full_matrix_tabulated(params)
    diff = float(np.max(np.abs(tensor - tabulated)))
    scale = float(np.max(np.abs(tensor)))
    tol = rtol * scale
    return EquivalenceReport(
        max_abs_diff=diff, matrix_scale=scale, tol=tol, passed=diff <= tol
    )


def build_adiabatic(params: FieldParams) -> np.ndarray:
    """Four-level reduction after adiabatic elimination of the pseudo-spin.

    ``-b_t Jz + kappa_t * axis**2`` with ``kappa_t = -c_const e_t^2/delta_t``
    and ``axis = Jz cos(theta) - Jx sin(theta)``.  Valid when ``delta_t``
    dominates both field rates; built anyway outside that regime, with an
    :class:`AdiabaticRegimeWarning`.
    """
    if params.delta_t == 0:
        raise ValueError("adiabatic reduction requires delta_t != 0")
    if not params.is_adiabatic:
        warnings.warn(
            "adiabatic reduction outside its validity regime: "
            f"delta_t={params.delta_t!r} does not dominate "
            f"e_t={params.e_t!r}, b_t={params.b_t!r}",
            AdiabaticRegimeWarning,
            stacklevel=2,
        )
    axis = twist_axis(params.theta)
    return -params.b_t * _J.jz + params.kappa_t * (axis @ axis)


def build_named(kind: HamiltonianKind, params: FieldParams) -> np.ndarray:
    """Build one of the named model Hamiltonians from reduced parameters.

    The twisting kinds enforce their defining constraints: the pure-twisting
    form requires ``b_t = 0`` and ``theta = 0``; the uniform-field form
    requires ``theta = pi/2``.
    """
    kind = HamiltonianKind(kind)
    if kind is HamiltonianKind.FULL:
        return build_full(params)
    if kind is HamiltonianKind.ADIABATIC:
        return build_adiabatic(params)
    if kind is HamiltonianKind.KITAGAWA_UEDA:
        if params.b_t != 0.0:
            raise ValueError("pure twisting requires b_t = 0")
        if abs(params.theta) > _ANGLE_TOL:
            raise ValueError("pure twisting requires theta = 0")
        return params.kappa_t * (_J.jz @ _J.jz)
    if kind is HamiltonianKind.LAW_NG_LEUNG:
        if abs(params.theta - 0.5 * math.pi) > _ANGLE_TOL:
            raise ValueError("uniform-field form requires theta = pi/2")
        return -params.b_t * _J.jz + params.kappa_t * (_J.jx @ _J.jx)
    if kind is HamiltonianKind.GENERAL_THETA:
        axis = twist_axis(params.theta)
        return -params.b_t * _J.jz + params.kappa_t * (axis @ axis)
    if kind is HamiltonianKind.AGARWAL_PURI_ROTATED:
        # Frame-rotated partner of the general-angle form: the twisting is
        # carried by Jz^2 and the Zeeman term points along the tilted axis.
        # Unitarily equivalent to GENERAL_THETA (same spectrum).
        axis = twist_axis(params.theta)
        return -params.b_t * axis + params.kappa_t * (_J.jz @ _J.jz)
    raise ValueError(f"unhandled kind {kind!r}")  # pragma: no cover
