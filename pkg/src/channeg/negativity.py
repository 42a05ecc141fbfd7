"""Channel negativity and the distances built on it.

The negativity of a channel with Choi matrix ``C`` is the weight of the
negative part of its spectrum,

    eta = sum_{lambda_i < 0} |lambda_i| / sum_j |lambda_j|
        = (1 - Tr C / ||C||_1) / 2,

which vanishes exactly when the channel is completely positive and is always
below 1/2 for a trace-preserving channel.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .cmatrix import eigvalsh, trace_norm
from .choi import ChoiMatrix, validate_choi
from .errors import DimensionError, DomainError

ETA_TOL = 1e-10


@dataclass(frozen=True)
class NegativityReport:
    """Spectrum of a Choi matrix and the negativity computed from it.

    ``eta`` comes from the eigenvalue sums; ``trace_norm`` is computed
    independently from the singular values, so ``formula_eta`` is a second
    route to the same number.
    """

    eigenvalues: tuple
    trace: float
    trace_norm: float
    eta: float
    neg_eigenvalue_sum: float

    @property
    def formula_eta(self):
        return 0.5 * (1.0 - self.trace / self.trace_norm)

    @property
    def positivity(self):
        return positivity_from_negativity(self.eta)

    @property
    def is_completely_positive(self):
        return self.eta == 0.0

    def to_dict(self):
        return {
            "eigenvalues": list(self.eigenvalues),
            "trace": self.trace,
            "trace_norm": self.trace_norm,
            "eta": self.eta,
            "positivity": self.positivity,
        }


@dataclass(frozen=True)
class DistanceReport:
    eta_expected: float
    eta_implemented: float
    delta: float
    trace_distance: Optional[float] = None

    def to_dict(self):
        return {
            "eta_expected": self.eta_expected,
            "eta_implemented": self.eta_implemented,
            "delta": self.delta,
            "trace_distance": self.trace_distance,
        }


def _as_choi(c):
    return c if isinstance(c, ChoiMatrix) else validate_choi(c)


def _eta(eigenvalues, norm, tol=ETA_TOL):
    mask = eigenvalues < -tol * norm[..., None]
    neg = np.where(mask, -eigenvalues, 0.0).sum(axis=-1)
    return neg / np.abs(eigenvalues).sum(axis=-1), neg


def negativity(c, eta_tol=ETA_TOL):
    """Negativity report for a Choi matrix (a ``ChoiMatrix`` or a raw 4x4 array)."""
    c = _as_choi(c)
    w = eigvalsh(c.matrix)
    tn = float(trace_norm(c.matrix))
    eta, neg = _eta(w, np.asarray(tn), eta_tol)
    return NegativityReport(
        eigenvalues=tuple(float(x) for x in w),
        trace=c.trace,
        trace_norm=tn,
        eta=float(eta),
        neg_eigenvalue_sum=float(neg),
    )


def negativity_values(choi_stack, eta_tol=ETA_TOL):
    """Negativities of a stack of Choi matrices ``(..., 4, 4)``; returns ``(...)``.

    The classification threshold uses ``sum |lambda|`` as the norm, which equals
    the trace norm for Hermitian input.
    """
    w = eigvalsh(choi_stack)
    eta, _ = _eta(w, np.abs(w).sum(axis=-1), eta_tol)
    return eta


def negativity_from_positivity(positivity):
    """``eta = (1 - p) / (2 - p)`` for a positivity ``p`` in ``[0, 1]``.

    Evaluated exactly on the binary value of ``p`` and rounded once.
    """
    if not 0.0 <= positivity <= 1.0:
        raise DomainError(f"positivity must lie in [0, 1], got {positivity}")
    p = Fraction(positivity)
    return float((1 - p) / (2 - p))


def positivity_from_negativity(eta):
    """Inverse of :func:`negativity_from_positivity`: ``p = (1 - 2 eta) / (1 - eta)``."""
    if not 0.0 <= eta <= 0.5:
        raise DomainError(f"negativity must lie in [0, 1/2], got {eta}")
    e = Fraction(eta)
    return float((1 - 2 * e) / (1 - e))


def trace_distance(m, n):
    """``||m - n||_1``."""
    m = np.asarray(m, dtype=complex)
    n = np.asarray(n, dtype=complex)
    if m.shape != n.shape:
        raise DimensionError(f"shape mismatch: {m.shape} vs {n.shape}")
    return float(trace_norm(m - n))


def negativity_distance(expected, implemented, expected_unitary=None, implemented_unitary=None):
    """``|eta(expected) - eta(implemented)|``.

    When both coupling unitaries are supplied, their trace distance is reported
    alongside for comparison.
    """
    eta_e = negativity(expected).eta
    eta_i = negativity(implemented).eta
    td = None
    if expected_unitary is not None and implemented_unitary is not None:
        td = trace_distance(expected_unitary, implemented_unitary)
    return DistanceReport(eta_e, eta_i, abs(eta_e - eta_i), td)
