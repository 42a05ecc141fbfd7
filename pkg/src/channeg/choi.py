"""Simulated single-qubit process tomography and the Choi matrix.

The channel is evaluated on the four tomography states only. Its action on the
matrix units ``E_ij`` follows by linearity from the expansion computed in
:mod:`channeg.qstates`, and ``C = sum_ij E_ij (x) eps(E_ij)``, i.e. block
``(i, j)`` of ``C`` (rows ``2i..2i+1``, columns ``2j..2j+1``) is ``eps(E_ij)``.
"""
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cmatrix import as_matrix, dagger, hermiticity_residual
from .channelkit import evolve, realize_coupling
from .errors import DimensionError, DomainError, ValidationError
from .qstates import decompose_matrix_units

PIPELINE_TOL = 1e-10
EXTERNAL_TOL = 1e-8
CHOI_TRACE = 2.0


def choi_from_outputs(outputs, decomposition=None):
    """Assemble Choi matrices from channel outputs on the tomography states.

    :param outputs: ``(..., 4, 2, 2)`` array, ``outputs[..., k]`` = ``eps(tau_k)``.
    :param decomposition: matrix-unit expansion matching the tomography vector.
    :return: ``(..., 4, 4)`` symmetrized Choi matrices.
    """
    if decomposition is None:
        decomposition = decompose_matrix_units()
    outputs = np.asarray(outputs, dtype=complex)
    # blocks[..., i, j, a, b] = eps(E_ij)[a, b]
    blocks = np.einsum("ijk,...kab->...ijab", decomposition.coefficients, outputs)
    c = np.swapaxes(blocks, -3, -2).reshape(outputs.shape[:-3] + (4, 4))
    return 0.5 * (c + dagger(c))


def choi_batch(unitaries, sharp_states, decomposition=None):
    """Choi matrices for stacks of couplings and sharp-state sets (see ``evolve``)."""
    return choi_from_outputs(evolve(unitaries, sharp_states), decomposition)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    """A validated 4x4 Choi matrix of a trace-preserving qubit channel.

    ``coupling`` and ``sharp`` record the pair that produced the matrix; both
    are ``None`` for matrices loaded from outside the pipeline.
    """

    matrix: np.ndarray = field(repr=False)
    source: str = "external"
    coupling: object = None
    sharp: object = None

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (4, 4):
            raise DimensionError(f"Choi matrix must be 4x4, got {m.shape}")
        m = 0.5 * (m + dagger(m))
        m.flags.writeable = False
        object.__setattr__(self, "matrix", m)

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)

    def block(self, i, j):
        """``eps(E_ij)``: the 2x2 block in rows ``2i..`` and columns ``2j..``."""
        return self.matrix[2 * i : 2 * i + 2, 2 * j : 2 * j + 2]

    def to_dict(self):
        entries = [[float(z.real), float(z.imag)] for z in self.matrix.reshape(-1)]
        return {"dim": 4, "entries": entries, "source": self.source}

    def to_json(self):
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, doc, tol=EXTERNAL_TOL):
        return validate_choi(_entries_from_doc(doc), tol=tol, source=doc.get("source", "external"))


def validate_choi(c, tol=EXTERNAL_TOL, source="external"):
    """Check Hermiticity and ``Tr = 2`` and wrap ``c`` as a ``ChoiMatrix``.

    :raises ValidationError: naming the failed check and its residual.
    """
    try:
        m = as_matrix(c)
    except DimensionError as exc:
        raise ValidationError(str(exc)) from None
    if m.shape != (4, 4):
        raise ValidationError(f"dimension violation: Choi matrix must be 4x4, got {m.shape}")
    if not np.all(np.isfinite(m)):
        bad = int(np.flatnonzero(~np.isfinite(m.reshape(-1)))[0])
        raise ValidationError(f"non-finite entry at index {bad}")
    herm = float(hermiticity_residual(m))
    if herm > tol:
        raise ValidationError(f"Hermiticity violation {herm:.17g}")
    trace_dev = abs(np.trace(m) - CHOI_TRACE)
    if trace_dev > tol:
        raise ValidationError(f"trace violation {trace_dev:.17g}")
    return ChoiMatrix(m, source)


def assemble_choi(spec, sharp, tomography=None):
    """Choi matrix of ``rho -> Tr_B(U sharp(rho) U^dagger)`` by simulated tomography."""
    decomposition = decompose_matrix_units(tomography)
    u = realize_coupling(spec)
    c = choi_batch(u, sharp.states(decomposition.tomography), decomposition)
    checked = validate_choi(c, tol=PIPELINE_TOL)
    return ChoiMatrix(checked.matrix, f"{spec.describe()} + {sharp.describe()}", spec, sharp)


def x_form_matrix(x, y):
    """``[[1,0,0,x],[0,0,y,0],[0,y*,0,0],[x*,0,0,1]]``."""
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = m[3, 3] = 1.0
    m[0, 3], m[3, 0] = x, np.conj(x)
    m[1, 2], m[2, 1] = y, np.conj(y)
    return m


def analytic_choi_alpha(alpha):
    """Closed-form Choi matrix of the CZ coupling with the ``alpha`` sharp map."""
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    x = alpha * math.sqrt(1.0 - alpha * alpha)
    return ChoiMatrix(x_form_matrix(x, x), source=f"analytic alpha={alpha!r}")


def _entries_from_doc(doc):
    if not isinstance(doc, dict):
        raise ValidationError("Choi document must be a JSON object")
    for key in ("dim", "entries"):
        if key not in doc:
            raise ValidationError(f"missing field '{key}'")
    if doc["dim"] != 4:
        raise ValidationError(f"field 'dim': expected 4, got {doc['dim']!r}")
    entries = doc["entries"]
    if not isinstance(entries, list) or len(entries) != 16:
        raise ValidationError("field 'entries': expected a list of 16 [re, im] pairs")
    values = []
    for k, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in pair)
        ):
            raise ValidationError(f"field 'entries[{k}]': expected [re, im] numbers")
        if not all(math.isfinite(v) for v in pair):
            raise ValidationError(f"non-finite entry at index {k}")
        values.append(complex(pair[0], pair[1]))
    return np.array(values, dtype=complex).reshape(4, 4)


def load_choi(path, tol=EXTERNAL_TOL):
    """Read and validate a Choi matrix JSON file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(
            f"JSON parse error at line {exc.lineno} column {exc.colno}: {exc.msg}"
        ) from None
    return ChoiMatrix.from_dict(doc, tol=tol)


def save_choi(choi, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(choi.to_json() + "\n")
