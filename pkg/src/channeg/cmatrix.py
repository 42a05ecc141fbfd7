"""Small dense complex linear algebra for one- and two-qubit operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Every routine
accepts a single matrix of shape ``(n, n)`` or a stack of shape ``(..., n, n)``,
so parameter sweeps can push thousands of 4x4 problems through one call.

Tensor ordering is fixed: the reduced system is the first (slow) factor and
the bath is the second (fast) factor.
"""
from typing import NamedTuple

import numpy as np

from .errors import ConvergenceError, DimensionError, PreconditionError

HERMITIAN_TOL = 1e-10
OFFDIAG_TOL = 1e-13
ORTHOGONALITY_TOL = 1e-15
# Columns with squared norm below this fraction of ||m||_F^2 are rounding noise.
NEGLIGIBLE_COLUMN = 1e-28
MAX_SWEEPS = 100

IDENTITY2 = np.eye(2, dtype=complex)
IDENTITY4 = np.eye(4, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)


class EigenDecomposition(NamedTuple):
    """Ascending real eigenvalues and the unitary whose columns are eigenvectors."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(m):
    """Return ``m`` as a complex array of square matrices, raising on bad shapes."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise DimensionError(f"expected square matrix, got shape {a.shape}")
    return a


def dagger(m):
    """Conjugate transpose over the last two axes."""
    return np.conj(np.swapaxes(m, -1, -2))


def kron(a, b):
    """Kronecker product ``a (x) b``; ``a`` indexes the slow (leftmost) factor.

    Stacks broadcast over leading axes.
    """
    a = as_matrix(a)
    b = as_matrix(b)
    n, m = a.shape[-1], b.shape[-1]
    out = np.einsum("...ij,...kl->...ikjl", a, b)
    return out.reshape(out.shape[:-4] + (n * m, n * m))


def partial_trace_bath(m):
    """Trace out the second qubit of a two-qubit operator.

    Entry ``(i, j)`` of the result is ``sum_k m[2i+k, 2j+k]``.
    """
    m = as_matrix(m)
    if m.shape[-1] != 4:
        raise DimensionError(f"partial_trace_bath needs a 4x4 operator, got {m.shape[-2:]}")
    return np.einsum("...ikjk->...ij", m.reshape(m.shape[:-2] + (2, 2, 2, 2)))


def hermiticity_residual(m):
    """Largest entrywise modulus of ``m - m^dagger`` (per matrix for stacks)."""
    m = as_matrix(m)
    return np.abs(m - dagger(m)).max(axis=(-2, -1))


def _significant(app, aqq, apq):
    """Entries this small cannot move the spectrum; rotating them risks overflow."""
    return np.abs(apq) > np.maximum(1e-300, 1e-18 * (np.abs(app) + np.abs(aqq)))


def _rotation(app, aqq, apq):
    """Complex Jacobi rotation ``G`` that zeroes ``apq`` in ``G^dagger A G``.

    ``app`` and ``aqq`` are real, ``apq`` complex; all are 1-D arrays. Returns
    the four entries ``(gpp, gpq, gqp, gqq)`` of the 2x2 plane rotation.
    """
    r = np.abs(apq)
    active = _significant(app, aqq, apq)
    safe_r = np.where(active, r, 1.0)
    phase = np.where(active, apq.real / safe_r + 1j * (apq.imag / safe_r), 1.0)
    theta = np.where(active, (aqq - app) / (2.0 * safe_r), 0.0)
    sign = np.where(theta >= 0.0, 1.0, -1.0)
    t = np.where(active, sign / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    back = np.conj(phase)
    return c + 0j, s + 0j, -s * back, c * back


def _rotate_columns(a, p, q, g):
    gpp, gpq, gqp, gqq = (x[:, None] for x in g)
    ap = a[:, :, p].copy()
    aq = a[:, :, q]
    a[:, :, p] = ap * gpp + aq * gqp
    a[:, :, q] = ap * gpq + aq * gqq


def _rotate_rows(a, p, q, g):
    gpp, gpq, gqp, gqq = (np.conj(x)[:, None] for x in g)
    ap = a[:, p, :].copy()
    aq = a[:, q, :]
    a[:, p, :] = gpp * ap + gqp * aq
    a[:, q, :] = gpq * ap + gqq * aq


def _off_norm(a):
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt((np.abs(a[:, mask]) ** 2).sum(axis=-1))


def hermitian_eig(m):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    The input is symmetrized as ``(m + m^dagger)/2`` first. Sweeps stop once the
    off-diagonal Frobenius norm drops to ``1e-13`` (relative to the matrix norm
    when that exceeds one) and give up after 100 sweeps.

    :param m: Hermitian matrix or stack of Hermitian matrices.
    :return: ``EigenDecomposition`` with ascending eigenvalues.
    :raises PreconditionError: if ``max|m - m^dagger| > 1e-10``.
    :raises ConvergenceError: if the sweep cap is reached.
    """
    m = as_matrix(m)
    asym = np.max(hermiticity_residual(m), initial=0.0)
    if asym > HERMITIAN_TOL:
        raise PreconditionError(f"matrix is not Hermitian (residual {asym:.3e})")
    batch, n = m.shape[:-2], m.shape[-1]
    a = (0.5 * (m + dagger(m))).reshape(-1, n, n).copy()
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    limit = OFFDIAG_TOL * np.maximum(1.0, np.sqrt((np.abs(a) ** 2).sum(axis=(-2, -1))))

    for _ in range(MAX_SWEEPS):
        off = _off_norm(a)
        if np.all(off <= limit):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = _rotation(a[:, p, p].real, a[:, q, q].real, a[:, p, q])
                _rotate_columns(a, p, q, g)
                _rotate_rows(a, p, q, g)
                _rotate_columns(v, p, q, g)
                a[:, p, q] = 0.0
                a[:, q, p] = 0.0
    else:
        off = _off_norm(a)
        if not np.all(off <= limit):
            raise ConvergenceError(
                f"Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps", float(off.max())
            )

    w = np.einsum("...ii->...i", a).real
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return EigenDecomposition(w.reshape(batch + (n,)), v.reshape(batch + (n, n)))


def eigvalsh(m):
    """Ascending eigenvalues of a Hermitian matrix (or stack)."""
    return hermitian_eig(m).eigenvalues


def expm_unitary(h, t):
    """``exp(-i t h)`` for Hermitian ``h`` via its eigendecomposition (hbar = 1).

    ``t`` may be an array broadcasting against the leading axes of ``h``.
    """
    evals, evecs = hermitian_eig(h)
    phases = np.exp(-1j * np.asarray(t, dtype=float)[..., None] * evals)
    return (evecs * phases[..., None, :]) @ dagger(evecs)


def singular_values(m):
    """Singular values by one-sided (Hestenes) Jacobi orthogonalization.

    Column pairs of ``m`` are rotated until mutually orthogonal; this
    diagonalizes ``m^dagger m`` implicitly, without forming the product, so
    small singular values keep full absolute precision.
    """
    m = as_matrix(m)
    batch, n = m.shape[:-2], m.shape[-1]
    a = m.reshape(-1, n, n).copy()
    floor = NEGLIGIBLE_COLUMN * (np.abs(a) ** 2).sum(axis=(-2, -1))
    for _ in range(MAX_SWEEPS):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                cp, cq = a[:, :, p], a[:, :, q]
                alpha = (np.abs(cp) ** 2).sum(axis=-1)
                beta = (np.abs(cq) ** 2).sum(axis=-1)
                gamma = (np.conj(cp) * cq).sum(axis=-1)
                active = (
                    (np.abs(gamma) > ORTHOGONALITY_TOL * np.sqrt(alpha * beta))
                    & (np.minimum(alpha, beta) > floor)
                    & _significant(alpha, beta, gamma)
                )
                if not active.any():
                    continue
                rotated = True
                gamma = np.where(active, gamma, 0.0)
                _rotate_columns(a, p, q, _rotation(alpha, beta, gamma))
        if not rotated:
            break
    else:
        raise ConvergenceError(
            f"one-sided Jacobi did not converge in {MAX_SWEEPS} sweeps", float("nan")
        )
    sv = np.sqrt((np.abs(a) ** 2).sum(axis=-2))
    return np.sort(sv, axis=-1)[..., ::-1].reshape(batch + (n,))


def trace_norm(m):
    """Trace norm ``Tr sqrt(m^dagger m)``: the sum of singular values."""
    return singular_values(m).sum(axis=-1)
