"""Negativity over parameter grids, and mapping of completely positive regions."""
import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone

import numpy as np

from .channelkit import (
    alpha_unitary,
    conjugation_sharp_states,
    cz_double_prime_matrix,
    cz_matrix,
    cz_prime_matrix,
    rabi_unitary,
    rotation_matrix,
    rotation_theta_matrix,
)
from .cmatrix import HADAMARD
from .choi import choi_batch
from .errors import ConfigurationError
from .negativity import negativity_values

CP_TOL = 1e-9
# Fixed so that results never depend on the worker count.
CHUNK = 2048
THREADS_ENV = "NEGATIVITY_THREADS"


def _rabi(p):
    u = rabi_unitary(p["kz"], p["t"], p["nu"], p["omega"])
    phi = p["phi"]
    sharp_u = HADAMARD if phi is None else rotation_matrix(phi)
    return u, sharp_u


@dataclass(frozen=True)
class Family:
    name: str
    required: tuple
    optional: dict
    build: object
    bounds: dict = field(default_factory=dict)

    @property
    def parameters(self):
        return self.required + tuple(self.optional)


FAMILIES = {
    f.name: f
    for f in (
        Family("rabi", ("kz", "t"), {"nu": 0.0, "omega": 1.0, "phi": None}, _rabi),
        Family("utheta", ("theta",), {}, lambda p: (rotation_theta_matrix(p["theta"]), HADAMARD)),
        Family(
            "alpha",
            ("alpha",),
            {},
            lambda p: (cz_matrix(), alpha_unitary(p["alpha"])),
            {"alpha": (0.0, 1.0)},
        ),
        Family(
            "theta_alpha",
            ("theta", "alpha"),
            {},
            lambda p: (rotation_theta_matrix(p["theta"]), alpha_unitary(p["alpha"])),
            {"alpha": (0.0, 1.0)},
        ),
        Family("czprime", ("delta",), {}, lambda p: (cz_prime_matrix(p["delta"]), HADAMARD)),
        Family(
            "czdoubleprime",
            ("delta", "xi"),
            {},
            lambda p: (cz_double_prime_matrix(p["delta"], p["xi"]), HADAMARD),
        ),
    )
}


@dataclass(frozen=True)
class Axis:
    name: str
    start: float
    stop: float
    count: int

    def values(self):
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class SweepGrid:
    """Channel family plus swept axes and fixed parameter values."""

    family: str
    axes: tuple
    fixed: dict = field(default_factory=dict)

    def validate(self):
        if self.family not in FAMILIES:
            raise ConfigurationError(
                f"unknown family '{self.family}' (choose from {', '.join(FAMILIES)})"
            )
        fam = FAMILIES[self.family]
        if not self.axes:
            raise ConfigurationError("a sweep needs at least one axis")
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigurationError(f"duplicate axis names in {names}")
        overlap = set(names) & set(self.fixed)
        if overlap:
            raise ConfigurationError(f"parameters both swept and fixed: {sorted(overlap)}")
        for name in list(names) + list(self.fixed):
            if name not in fam.parameters:
                raise ConfigurationError(
                    f"family '{fam.name}' has no parameter '{name}' "
                    f"(expects {', '.join(fam.parameters)})"
                )
        missing = [p for p in fam.required if p not in names and p not in self.fixed]
        if missing:
            raise ConfigurationError(f"family '{fam.name}' missing parameters: {missing}")
        for a in self.axes:
            if int(a.count) != a.count or a.count < 2:
                raise ConfigurationError(f"axis '{a.name}' needs an integer count >= 2")
            if not (np.isfinite(a.start) and np.isfinite(a.stop)) or not a.start < a.stop:
                raise ConfigurationError(f"axis '{a.name}' needs finite start < stop")
        for name, (lo, hi) in fam.bounds.items():
            for a in self.axes:
                if a.name == name and (a.start < lo or a.stop > hi):
                    raise ConfigurationError(f"axis '{name}' must stay within [{lo}, {hi}]")
            if name in self.fixed and not lo <= self.fixed[name] <= hi:
                raise ConfigurationError(f"parameter '{name}' must lie in [{lo}, {hi}]")
        return fam

    def points(self):
        """Grid points in row-major order (last axis varies fastest), shape ``(N, k)``."""
        mesh = np.meshgrid(*(a.values() for a in self.axes), indexing="ij")
        return np.stack([m.reshape(-1) for m in mesh], axis=-1)


@dataclass(frozen=True, eq=False)
class SweepResult:
    names: tuple
    points: np.ndarray
    eta: np.ndarray
    family: str
    grid: SweepGrid
    timestamp: str

    def __len__(self):
        return len(self.eta)

    @property
    def rows(self):
        return [(tuple(float(v) for v in p), float(e)) for p, e in zip(self.points, self.eta)]

    def select(self, mask):
        return SweepResult(
            self.names, self.points[mask], self.eta[mask], self.family, self.grid, self.timestamp
        )

    def argmax(self):
        """Parameter tuple and value of the largest negativity on the grid."""
        k = int(np.argmax(self.eta))
        return tuple(float(v) for v in self.points[k]), float(self.eta[k])

    def to_csv(self):
        out = io.StringIO()
        out.write(",".join(self.names + ("eta",)) + "\n")
        for p, e in zip(self.points, self.eta):
            out.write(",".join(f"{v:.17g}" for v in (*p, e)) + "\n")
        return out.getvalue()

    def to_dict(self):
        return {
            "family": self.family,
            "axes": [
                {"name": a.name, "start": a.start, "stop": a.stop, "count": a.count}
                for a in self.grid.axes
            ],
            "fixed": dict(self.grid.fixed),
            "columns": list(self.names) + ["eta"],
            "rows": [list(p) + [e] for p, e in self.rows],
        }


def _threads(threads):
    if threads is not None:
        return max(1, int(threads))
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigurationError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ConfigurationError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def evaluate_family(family, params):
    """Negativity for arrays of parameter values of one family.

    ``params`` maps parameter names to equal-length 1-D arrays (or scalars);
    optional parameters fall back to the family defaults.
    """
    fam = FAMILIES[family]
    p = dict(fam.optional)
    p.update(params)
    u, sharp_u = fam.build(p)
    return negativity_values(choi_batch(u, conjugation_sharp_states(sharp_u)))


def run_sweep(grid, threads=None):
    """Negativity at every grid point, rows in row-major axis order."""
    grid.validate()
    nthreads = _threads(threads)
    pts = grid.points()
    names = tuple(a.name for a in grid.axes)

    def chunk(lo):
        sl = slice(lo, lo + CHUNK)
        params = {n: pts[sl, k] for k, n in enumerate(names)}
        params.update({n: np.full(len(pts[sl]), v, dtype=float) for n, v in grid.fixed.items()})
        return evaluate_family(grid.family, params)

    starts = range(0, len(pts), CHUNK)
    if nthreads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            parts = list(pool.map(chunk, starts))
    else:
        parts = [chunk(lo) for lo in starts]
    eta = np.concatenate(parts)
    stamp = datetime.now(timezone.utc).isoformat()
    return SweepResult(names, pts, eta, grid.family, grid, stamp)


def cp_map(grid, eta_tol=CP_TOL, exclude_trivial=False, threads=None):
    """Grid points whose channel is completely positive (``eta < eta_tol``).

    With ``exclude_trivial`` the swept ``kz = 0`` and ``t = 0`` planes of the
    Rabi family are dropped: zero coupling gives local unitary dynamics and
    zero time gives the identity, both trivially completely positive.
    """
    if not eta_tol > 0:
        raise ConfigurationError("eta_tol must be positive")
    result = run_sweep(grid, threads)
    mask = result.eta < eta_tol
    if exclude_trivial and grid.family == "rabi":
        for k, name in enumerate(result.names):
            if name in ("kz", "t"):
                mask &= result.points[:, k] != 0.0
    return result.select(mask)


def xform_spectrum(x, y):
    """Spectrum of the X-shaped Choi matrix with corner entry ``x`` and inner entry ``y``.

    Returned in the order ``(1 - |x|, 1 + |x|, -|y|, |y|)``.
    """
    ax, ay = abs(x), abs(y)
    return (1.0 - ax, 1.0 + ax, -ay, ay)
