"""Single-qubit tomography states and the matrix-unit expansion in that basis."""
from dataclasses import dataclass

import numpy as np

from .cmatrix import as_matrix, dagger
from .errors import DimensionError, RankError

PURE_TOL = 1e-12


def ket_to_projector(ket):
    ket = np.asarray(ket, dtype=complex)
    return np.outer(ket, ket.conj())


KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)
KET_PLUS = (KET0 + KET1) / np.sqrt(2)
KET_MINUS = (KET0 - KET1) / np.sqrt(2)
KET_PLUS_I = (KET0 + 1j * KET1) / np.sqrt(2)
KET_MINUS_I = (KET0 - 1j * KET1) / np.sqrt(2)


def matrix_unit(i, j, dim=2):
    """``E_ij``: a 1 at position ``(i, j)``, zeros elsewhere."""
    e = np.zeros((dim, dim), dtype=complex)
    e[i, j] = 1.0
    return e


@dataclass(frozen=True)
class TomographyVector:
    """Four single-qubit input states spanning the 2x2 operator space.

    ``states`` has shape ``(4, 2, 2)``.
    """

    states: np.ndarray

    def __post_init__(self):
        states = as_matrix(self.states)
        if states.shape != (4, 2, 2):
            raise DimensionError(f"tomography vector needs four 2x2 states, got {states.shape}")
        states = states.copy()
        states.flags.writeable = False
        object.__setattr__(self, "states", states)

    def __len__(self):
        return 4

    def __getitem__(self, k):
        return self.states[k]

    def __iter__(self):
        return iter(self.states)

    def is_pure(self, tol=PURE_TOL):
        """True if every state is a Hermitian, unit-trace, idempotent projector."""
        s = self.states
        herm = np.abs(s - dagger(s)).max() <= tol
        trace = np.abs(np.trace(s, axis1=1, axis2=2) - 1).max() <= tol
        idem = np.abs(s @ s - s).max() <= tol
        return bool(herm and trace and idem)


def canonical_tomography_vector():
    """The states ``|0><0|, |+><+|, |+i><+i|, |1><1|`` in that order."""
    kets = (KET0, KET_PLUS, KET_PLUS_I, KET1)
    return TomographyVector(np.stack([ket_to_projector(k) for k in kets]))


@dataclass(frozen=True)
class MatrixUnitDecomposition:
    """``coefficients[i, j]`` expands ``E_ij`` over the tomography states.

    Shape ``(2, 2, 4)``: ``sum_k coefficients[i, j, k] * tv[k] == E_ij``.
    """

    coefficients: np.ndarray
    tomography: TomographyVector

    def reconstruct(self, i, j):
        return np.tensordot(self.coefficients[i, j], self.tomography.states, axes=1)


def decompose_matrix_units(tv=None):
    """Solve for the coefficients expressing each ``E_ij`` in the basis ``tv``.

    Each state is vectorized row-major and used as a column of a 4x4 system;
    the coefficients are never taken from a table.
    """
    if tv is None:
        tv = canonical_tomography_vector()
    basis = tv.states.reshape(4, 4).T
    if np.linalg.matrix_rank(basis, tol=1e-10) < 4:
        raise RankError("tomography states are linearly dependent")
    targets = np.stack([matrix_unit(i, j).reshape(4) for i in range(2) for j in range(2)], axis=1)
    coeffs = np.linalg.solve(basis, targets)
    return MatrixUnitDecomposition(coeffs.T.reshape(2, 2, 4), tv)
