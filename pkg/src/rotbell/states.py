"""N-qubit states, white-noise mixtures, and Pauli expectation values.

All types are immutable after construction and all operations are pure,
so they are safe to evaluate concurrently without coordination.  Local
measurement frames are identified with the global Pauli x, y, z axes for
every party.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import reduce
from typing import Sequence, Union

import numpy as np

from .errors import DomainError, InvalidSizeError, ShapeError

# Memory caps (overridable per call): a state vector has 2^N amplitudes,
# a dense density matrix 4^N entries.
MAX_STATE_PARTIES = 14
MAX_DENSE_PARTIES = 10

_NORM_TOL = 1e-12
_HERMITIAN_TOL = 1e-12
_TRACE_TOL = 1e-12
_EIGENVALUE_FLOOR = -1e-10


class PauliAxis(Enum):
    """One of the three local measurement axes."""

    X = "x"
    Y = "y"
    Z = "z"

    @property
    def index(self) -> int:
        """Conventional 1-based axis index (x=1, y=2, z=3)."""
        return {"x": 1, "y": 2, "z": 3}[self.value]

    @property
    def matrix(self) -> np.ndarray:
        """The 2x2 Pauli matrix for this axis (fresh copy)."""
        return _PAULI[self].copy()


_PAULI = {
    PauliAxis.X: np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    PauliAxis.Y: np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    PauliAxis.Z: np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

AxisLike = Union[PauliAxis, str]


def _as_axis(axis: AxisLike) -> PauliAxis:
    if isinstance(axis, PauliAxis):
        return axis
    try:
        return PauliAxis(str(axis).lower())
    except ValueError:
        raise DomainError(f"unknown Pauli axis {axis!r}; expected one of x, y, z") from None


def _check_party_count(n_parties: int, cap: int) -> None:
    if n_parties < 1:
        raise InvalidSizeError(f"n_parties must be >= 1, got {n_parties}")
    if n_parties > cap:
        raise InvalidSizeError(
            f"n_parties={n_parties} exceeds the configured cap of {cap}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """Pure N-qubit state: 2^N complex amplitudes, unit norm.

    The basis is the z-eigenbasis with party 1 as the most significant
    qubit; index 0 is the all-|+> state, index 2^N - 1 the all-|->.
    """

    n_parties: int
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.n_parties < 1:
            raise InvalidSizeError(f"n_parties must be >= 1, got {self.n_parties}")
        amp = np.asarray(self.amplitudes, dtype=complex)
        if amp.shape != (2**self.n_parties,):
            raise ShapeError(
                f"expected {2**self.n_parties} amplitudes for {self.n_parties} parties, "
                f"got shape {amp.shape}"
            )
        norm_sq = float(np.sum(np.abs(amp) ** 2))
        if abs(norm_sq - 1.0) > _NORM_TOL:
            raise DomainError(f"squared-amplitude sum {norm_sq} differs from 1")
        amp = amp.copy()
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)

    def as_qubit_tensor(self) -> np.ndarray:
        """Amplitudes reshaped to (2,)*N with axis j-1 indexing party j."""
        return self.amplitudes.reshape((2,) * self.n_parties)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Mixed N-qubit state as a dense 2^N x 2^N matrix.

    When produced by :func:`mix_with_white_noise`, ``pure_state`` and
    ``visibility`` record the decomposition V|psi><psi| + (1-V) 1/2^N so
    that full-correlation expectations can be taken on the pure state and
    scaled by V instead of tracing against the dense matrix.
    """

    n_parties: int
    entries: np.ndarray
    pure_state: StateVector | None = None
    visibility: float | None = None

    def __post_init__(self):
        if self.n_parties < 1:
            raise InvalidSizeError(f"n_parties must be >= 1, got {self.n_parties}")
        dim = 2**self.n_parties
        mat = np.asarray(self.entries, dtype=complex)
        if mat.shape != (dim, dim):
            raise ShapeError(f"expected a {dim}x{dim} matrix, got shape {mat.shape}")
        if np.max(np.abs(mat - mat.conj().T)) > _HERMITIAN_TOL:
            raise DomainError("density matrix is not Hermitian")
        tr = complex(np.trace(mat))
        if abs(tr - 1.0) > _TRACE_TOL:
            raise DomainError(f"trace {tr} differs from 1")
        lowest = float(np.linalg.eigvalsh(mat)[0])
        if lowest < _EIGENVALUE_FLOOR:
            raise DomainError(f"negative eigenvalue {lowest}")
        mat = mat.copy()
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)


def build_ghz(n_parties: int, max_parties: int = MAX_STATE_PARTIES) -> StateVector:
    """Equal superposition of the all-|+> and all-|-> z-basis states."""
    _check_party_count(n_parties, max_parties)
    amp = np.zeros(2**n_parties, dtype=complex)
    amp[0] = amp[-1] = 1.0 / math.sqrt(2.0)
    return StateVector(n_parties, amp)


def mix_with_white_noise(
    state: StateVector,
    visibility: float,
    max_parties: int = MAX_DENSE_PARTIES,
) -> DensityMatrix:
    """Mixture V|psi><psi| + (1-V) 1/2^N of a pure state with white noise."""
    if not 0.0 <= visibility <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {visibility}")
    _check_party_count(state.n_parties, max_parties)
    dim = 2**state.n_parties
    mat = visibility * np.outer(state.amplitudes, state.amplitudes.conj())
    mat += (1.0 - visibility) / dim * np.eye(dim)
    return DensityMatrix(state.n_parties, mat, pure_state=state, visibility=visibility)


def _apply_pauli(axis: PauliAxis, qubit_tensor: np.ndarray, party: int) -> np.ndarray:
    out = np.tensordot(_PAULI[axis], qubit_tensor, axes=([1], [party]))
    return np.moveaxis(out, 0, party)


def _pure_expectation(state: StateVector, axes: Sequence[PauliAxis]) -> float:
    phi = state.as_qubit_tensor()
    for party, axis in enumerate(axes):
        phi = _apply_pauli(axis, phi, party)
    return float(np.vdot(state.as_qubit_tensor(), phi).real)


def pauli_expectation(rho: DensityMatrix, axes: Sequence[AxisLike]) -> float:
    """Expectation of the N-fold Pauli product sigma_a1 x ... x sigma_aN.

    For white-noise mixtures the value is taken on the pure part and
    scaled by the visibility; every full Pauli product is traceless, so
    the noise term contributes exactly zero.
    """
    resolved = [_as_axis(a) for a in axes]
    if len(resolved) != rho.n_parties:
        raise ShapeError(
            f"got {len(resolved)} axes for a {rho.n_parties}-party state"
        )
    if rho.pure_state is not None and rho.visibility is not None:
        return rho.visibility * _pure_expectation(rho.pure_state, resolved)
    product = reduce(np.kron, [_PAULI[a] for a in resolved])
    return float(np.sum(rho.entries * product.T).real)
