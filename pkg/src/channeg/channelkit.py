"""Assignment (sharp) maps, system-bath coupling unitaries and the reduced channel.

The reduced dynamics of a tomography state ``tau`` are
``eps(tau) = Tr_B(U sharp(tau) U^dagger)``: ``sharp`` injects the system state
into a correlated two-qubit state, ``U`` evolves the pair, and the bath (second
qubit) is traced out.

The module-level array functions (``rotation_theta_matrix``, ``rabi_unitary``,
``conjugation_sharp_states``, ``evolve`` ...) broadcast over parameter arrays
and are what the sweep engine uses. The dataclasses wrap them for single
evaluations.
"""
from dataclasses import dataclass, field, fields

import numpy as np

from .cmatrix import (
    HADAMARD,
    IDENTITY2,
    PAULI_X,
    PAULI_Z,
    as_matrix,
    dagger,
    eigvalsh,
    expm_unitary,
    kron,
    partial_trace_bath,
)
from .errors import DimensionError, DomainError, ValidationError
from .qstates import canonical_tomography_vector

UNITARY_TOL = 1e-10
STATE_TOL = 1e-10


def unitarity_residual(u):
    u = as_matrix(u)
    eye = np.eye(u.shape[-1])
    return np.abs(dagger(u) @ u - eye).max(axis=(-2, -1))


def check_pure_state(tau, tol=STATE_TOL):
    """Raise ``DomainError`` unless ``tau`` is a Hermitian, unit-trace 2x2 projector."""
    tau = as_matrix(tau)
    if tau.shape != (2, 2):
        raise DimensionError(f"sharp maps act on 2x2 states, got {tau.shape}")
    if np.abs(tau - dagger(tau)).max() > tol:
        raise DomainError("sharp map undefined: state is not Hermitian")
    if abs(np.trace(tau) - 1) > tol:
        raise DomainError("sharp map undefined: state trace is not 1")
    if np.abs(tau @ tau - tau).max() > tol:
        raise DomainError("sharp map undefined off the tomography vector: state is not pure")
    return tau


def check_density_matrix(rho, tol=STATE_TOL):
    rho = as_matrix(rho)
    if np.abs(rho - dagger(rho)).max() > tol:
        raise ValidationError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise ValidationError("density matrix trace is not 1")
    if eigvalsh(rho)[0] < -tol:
        raise ValidationError("density matrix is not positive semidefinite")
    return rho


# --- broadcasting primitives ---------------------------------------------------


def rotation_matrix(phi):
    """Real rotation ``R(phi) = [[cos, -sin], [sin, cos]]``."""
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(phi), np.sin(phi)
    return np.stack([np.stack([c, -s], -1), np.stack([s, c], -1)], -2).astype(complex)


def alpha_unitary(alpha):
    """``alpha * X + sqrt(1 - alpha^2) * Z``; equals the Hadamard gate at alpha = 2^-1/2."""
    alpha = np.asarray(alpha, dtype=float)
    if np.any((alpha < 0) | (alpha > 1)):
        raise DomainError("alpha must lie in [0, 1]")
    beta = np.sqrt(1.0 - alpha * alpha)
    return alpha[..., None, None] * PAULI_X + beta[..., None, None] * PAULI_Z


def conjugation_sharp_states(u, tomography=None):
    """``tau_k (x) (u tau_k u^dagger)`` for every tomography state; shape ``(..., 4, 4, 4)``."""
    tv = canonical_tomography_vector() if tomography is None else tomography
    u = as_matrix(u)[..., None, :, :]
    bath = u @ tv.states @ dagger(u)
    return kron(np.broadcast_to(tv.states, bath.shape), bath)


def product_sharp_states(bath_state, tomography=None):
    tv = canonical_tomography_vector() if tomography is None else tomography
    return kron(tv.states, np.broadcast_to(as_matrix(bath_state), tv.states.shape))


def root_swap_matrix():
    r = 1 / np.sqrt(2)
    return np.array(
        [[1, 0, 0, 0], [0, r, 1j * r, 0], [0, 1j * r, r, 0], [0, 0, 0, 1]], dtype=complex
    )


def cz_matrix():
    return np.diag([1, 1, 1, -1]).astype(complex)


def cz_double_prime_matrix(delta, xi):
    """``diag(1, 1, e^{-i xi}, e^{-i delta})``."""
    delta, xi = np.broadcast_arrays(np.asarray(delta, float), np.asarray(xi, float))
    one = np.ones_like(delta)
    diag = np.stack([one, one, np.exp(-1j * xi), np.exp(-1j * delta)], -1)
    return diag[..., None] * np.eye(4)


def cz_prime_matrix(delta):
    """``diag(1, 1, 1, e^{-i delta})``; equals CZ at delta = pi."""
    return cz_double_prime_matrix(delta, 0.0)


def rotation_theta_matrix(theta):
    """Rotation by ``theta`` in the ``{|01>, |10>}`` plane."""
    theta = np.asarray(theta, dtype=float)
    c, s = np.cos(theta), np.sin(theta)
    u = np.zeros(theta.shape + (4, 4), dtype=complex)
    u[..., 0, 0] = 1
    u[..., 3, 3] = 1
    u[..., 1, 1] = c
    u[..., 1, 2] = s
    u[..., 2, 1] = -s
    u[..., 2, 2] = c
    return u


def qubit_hamiltonian(nu=0.0, omega=1.0):
    """Driven two-level Hamiltonian ``(1/2) [[-nu, omega], [omega, nu]]``."""
    nu, omega = np.broadcast_arrays(np.asarray(nu, float), np.asarray(omega, float))
    h = np.zeros(nu.shape + (2, 2), dtype=complex)
    h[..., 0, 0] = -nu / 2
    h[..., 1, 1] = nu / 2
    h[..., 0, 1] = omega / 2
    h[..., 1, 0] = omega / 2
    return h


def rabi_hamiltonian(kz, nu=0.0, omega=1.0):
    """Two identical driven atoms with ``kz Z(x)Z`` coupling, in the bare basis."""
    kz, nu, omega = np.broadcast_arrays(*(np.asarray(x, float) for x in (kz, nu, omega)))
    hq = qubit_hamiltonian(nu, omega)
    eye = np.broadcast_to(IDENTITY2, hq.shape)
    zz = kron(PAULI_Z, PAULI_Z)
    return kron(hq, eye) + kron(eye, hq) + kz[..., None, None] * zz


def rabi_unitary(kz, t, nu=0.0, omega=1.0):
    kz, t, nu, omega = np.broadcast_arrays(*(np.asarray(x, float) for x in (kz, t, nu, omega)))
    return expm_unitary(rabi_hamiltonian(kz, nu, omega), t)


def evolve(unitaries, sharp_states):
    """``Tr_B(U S_k U^dagger)`` for each composite state ``S_k``.

    ``unitaries`` is ``(..., 4, 4)``, ``sharp_states`` is ``(..., K, 4, 4)``;
    the result is ``(..., K, 2, 2)``.
    """
    u = as_matrix(unitaries)[..., None, :, :]
    return partial_trace_bath(u @ sharp_states @ dagger(u))


# --- assignment maps -----------------------------------------------------------


def _describe(obj):
    parts = []
    for f in fields(obj):
        value = getattr(obj, f.name)
        if isinstance(value, (int, float)):
            parts.append(f"{f.name}={value!r}")
    return f"{obj.name}({', '.join(parts)})"


class AssignmentMap:
    """Base class for sharp operators ``tau -> tau (x) bath(tau)``."""

    name = "sharp"

    def bath(self, tau):
        raise NotImplementedError

    def apply(self, tau):
        tau = check_pure_state(tau)
        return kron(tau, self.bath(tau))

    def states(self, tomography=None):
        """Composite states for the whole tomography vector, shape ``(4, 4, 4)``."""
        tv = canonical_tomography_vector() if tomography is None else tomography
        return np.stack([self.apply(t) for t in tv])

    def describe(self):
        return _describe(self)


class _Conjugation(AssignmentMap):
    def unitary(self):
        raise NotImplementedError

    def bath(self, tau):
        u = self.unitary()
        return u @ tau @ dagger(u)

    def states(self, tomography=None):
        return conjugation_sharp_states(self.unitary(), tomography)


@dataclass(frozen=True)
class Rotation(_Conjugation):
    """Bath copy rotated by the real rotation ``R(phi)``."""

    phi: float
    name = "rotation"

    def unitary(self):
        return rotation_matrix(self.phi)


@dataclass(frozen=True, eq=False)
class UnitaryConjugation(_Conjugation):
    u: np.ndarray = field(repr=False)
    name = "unitary"

    def __post_init__(self):
        u = as_matrix(self.u)
        if u.shape != (2, 2):
            raise DimensionError(f"conjugation unitary must be 2x2, got {u.shape}")
        if unitarity_residual(u) > UNITARY_TOL:
            raise ValidationError("conjugation matrix is not unitary")
        object.__setattr__(self, "u", u)

    def unitary(self):
        return self.u


@dataclass(frozen=True)
class Hadamard(_Conjugation):
    """Bath copy conjugated by the Hadamard gate (not a member of the ``R(phi)`` family)."""

    name = "hadamard"

    def unitary(self):
        return HADAMARD


@dataclass(frozen=True)
class Alpha(_Conjugation):
    """Bath copy conjugated by ``alpha X + sqrt(1 - alpha^2) Z``."""

    alpha: float
    name = "alpha"

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {self.alpha}")

    def unitary(self):
        return alpha_unitary(self.alpha)


@dataclass(frozen=True, eq=False)
class Product(AssignmentMap):
    """Uncorrelated assignment ``tau -> tau (x) bath_state``."""

    bath_state: np.ndarray = field(repr=False)
    name = "product"

    def __post_init__(self):
        rho = as_matrix(self.bath_state)
        if rho.shape != (2, 2):
            raise DimensionError(f"bath state must be 2x2, got {rho.shape}")
        object.__setattr__(self, "bath_state", check_density_matrix(rho))

    def bath(self, tau):
        return self.bath_state

    def states(self, tomography=None):
        return product_sharp_states(self.bath_state, tomography)


def apply_sharp(sharp, tau):
    """Composite two-qubit state assigned to the single-qubit state ``tau``."""
    return sharp.apply(tau)


# --- couplings -----------------------------------------------------------------


class CouplingSpec:
    """Base class for composite system-bath unitaries."""

    name = "coupling"

    def matrix(self):
        raise NotImplementedError

    def describe(self):
        return _describe(self)


@dataclass(frozen=True)
class RootSwap(CouplingSpec):
    name = "rootswap"

    def matrix(self):
        return root_swap_matrix()


@dataclass(frozen=True)
class CZ(CouplingSpec):
    name = "cz"

    def matrix(self):
        return cz_matrix()


@dataclass(frozen=True)
class CZPrime(CouplingSpec):
    delta: float
    name = "czprime"

    def matrix(self):
        return cz_prime_matrix(self.delta)


@dataclass(frozen=True)
class CZDoublePrime(CouplingSpec):
    delta: float
    xi: float
    name = "czdoubleprime"

    def matrix(self):
        return cz_double_prime_matrix(self.delta, self.xi)


@dataclass(frozen=True)
class RotationTheta(CouplingSpec):
    theta: float
    name = "utheta"

    def matrix(self):
        return rotation_theta_matrix(self.theta)


@dataclass(frozen=True)
class Rabi(CouplingSpec):
    """``exp(-i t H)`` for two resonantly driven atoms with ``kz Z(x)Z`` coupling."""

    kz: float
    t: float
    nu: float = 0.0
    omega: float = 1.0
    name = "rabi"

    def matrix(self):
        return rabi_unitary(self.kz, self.t, self.nu, self.omega)


@dataclass(frozen=True, eq=False)
class Custom(CouplingSpec):
    u: np.ndarray = field(repr=False)
    name = "custom"

    def __post_init__(self):
        u = as_matrix(self.u)
        if u.shape != (4, 4):
            raise DimensionError(f"custom coupling must be 4x4, got {u.shape}")
        residual = unitarity_residual(u)
        if residual > UNITARY_TOL:
            raise ValidationError(f"custom coupling is not unitary (residual {residual:.3e})")
        object.__setattr__(self, "u", u)

    def matrix(self):
        return self.u


def realize_coupling(spec):
    """The 4x4 unitary of a coupling, in the computational (bare) basis."""
    u = spec.matrix()
    if not np.all(np.isfinite(u)):
        raise DomainError(f"non-finite coupling parameters in {spec.describe()}")
    return u


def apply_channel(spec, sharp, tau):
    """Reduced output ``Tr_B(U sharp(tau) U^dagger)`` for one input state."""
    u = realize_coupling(spec)
    rho = sharp.apply(tau)
    return partial_trace_bath(u @ rho @ dagger(u))
