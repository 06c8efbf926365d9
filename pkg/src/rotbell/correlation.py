"""Planar correlation tensors and the rotationally invariant correlation function.

A planar tensor holds the 2^N full-correlation values measured along the
local x (index 1) and y (index 2) axes.  Contracting it with per-party
unit vectors (cos a_j, sin a_j) evaluates the correlation function for
arbitrary settings in the x-y planes, which is exactly the content of
rotational invariance: the value depends only on the directions, not on
the frames used to express them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import DomainError, InvalidSizeError, ShapeError
from .states import DensityMatrix, PauliAxis, pauli_expectation

_ENTRY_BOUND = 1.0 + 1e-9

#: Planar axis for each tensor index value (index 1 -> x, index 2 -> y).
PLANAR_AXES = (PauliAxis.X, PauliAxis.Y)


@dataclass(frozen=True, eq=False)
class CorrelationTensor:
    """Real tensor with one binary index per party (1 <-> x, 2 <-> y).

    ``values`` has shape (2,)*N with axis j-1 belonging to party j and
    position 0/1 standing for planar index 1/2.  The serialized flat
    layout packs the multi-index little-endian into an integer key in
    [0, 2^N): bit j-1 is party j, bit value 0 <-> index 1, 1 <-> index 2.
    """

    n_parties: int
    values: np.ndarray

    def __post_init__(self):
        if self.n_parties < 1:
            raise InvalidSizeError(f"n_parties must be >= 1, got {self.n_parties}")
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (2,) * self.n_parties:
            raise ShapeError(
                f"expected shape {(2,) * self.n_parties}, got {vals.shape}"
            )
        peak = float(np.max(np.abs(vals))) if vals.size else 0.0
        if peak > _ENTRY_BOUND:
            raise DomainError(f"tensor entry magnitude {peak} exceeds 1")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def flat(self) -> np.ndarray:
        """Entries in the little-endian packed order (bit 0 = party 1)."""
        return self.values.reshape(-1, order="F")

    @classmethod
    def from_flat(cls, n_parties: int, flat: Sequence[float]) -> "CorrelationTensor":
        arr = np.asarray(flat, dtype=float)
        if arr.shape != (2**n_parties,):
            raise ShapeError(
                f"expected {2**n_parties} entries for {n_parties} parties, "
                f"got shape {arr.shape}"
            )
        return cls(n_parties, arr.reshape((2,) * n_parties, order="F"))

    def entry(self, multi_index: Sequence[int]) -> float:
        """Entry for a multi-index of planar indices, each 1 or 2."""
        if len(multi_index) != self.n_parties:
            raise ShapeError(
                f"multi-index length {len(multi_index)} != n_parties {self.n_parties}"
            )
        if any(i not in (1, 2) for i in multi_index):
            raise DomainError(f"planar indices must be 1 or 2, got {tuple(multi_index)}")
        return float(self.values[tuple(i - 1 for i in multi_index)])

    def to_json_dict(self) -> dict:
        """JSON form: {"n": N, "entries": {"1122": value, ...}}, zeros omitted."""
        entries = {}
        for idx in np.ndindex(*self.values.shape):
            v = float(self.values[idx])
            if v != 0.0:
                entries["".join(str(i + 1) for i in idx)] = v
        return {"n": self.n_parties, "entries": entries}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CorrelationTensor":
        try:
            n = int(data["n"])
            raw = data.get("entries", {})
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed tensor document: {exc}") from None
        if n < 1:
            raise InvalidSizeError(f"n must be >= 1, got {n}")
        vals = np.zeros((2,) * n)
        for key, value in raw.items():
            if len(key) != n or any(c not in "12" for c in key):
                raise DomainError(
                    f"entry key {key!r} is not a length-{n} string over digits 1 and 2"
                )
            vals[tuple(int(c) - 1 for c in key)] = float(value)
        return cls(n, vals)


@dataclass(frozen=True)
class AngleSettings:
    """One planar measurement angle per party, in radians.

    Angles are stored exactly as given; they parameterize the unit
    direction (cos a_j, sin a_j) in party j's x-y plane, so any two
    settings congruent mod 2*pi describe the same measurement.
    """

    angles: tuple[float, ...]

    def __init__(self, angles: Iterable[float]):
        object.__setattr__(self, "angles", tuple(float(a) for a in angles))

    @property
    def n_parties(self) -> int:
        return len(self.angles)

    def direction_vectors(self) -> np.ndarray:
        """(N, 2) array of the per-party unit vectors (cos a, sin a)."""
        arr = np.asarray(self.angles)
        return np.stack([np.cos(arr), np.sin(arr)], axis=1)


def product_contraction(values: np.ndarray, vectors: Sequence[np.ndarray]) -> float:
    """Contract a (2,)*N tensor with one 2-vector per party."""
    out = values
    for vec in reversed(list(vectors)):
        out = out @ np.asarray(vec, dtype=float)
    return float(out)


def tensor_from_state(rho: DensityMatrix) -> CorrelationTensor:
    """Measure all 2^N planar full-correlation values of a state."""
    n = rho.n_parties
    vals = np.empty((2,) * n)
    for idx in np.ndindex(*vals.shape):
        axes = [PLANAR_AXES[i] for i in idx]
        vals[idx] = pauli_expectation(rho, axes)
    return CorrelationTensor(n, vals)


def ghz_planar_tensor(n_parties: int, visibility: float) -> CorrelationTensor:
    """Closed-form planar tensor of the noisy GHZ state.

    Entries with an even count k of index-2 positions equal
    V * (-1)^(k/2); entries with odd k vanish.  Exactly 2^(N-1) entries
    are nonzero, all of magnitude V.
    """
    if n_parties < 1:
        raise InvalidSizeError(f"n_parties must be >= 1, got {n_parties}")
    if not 0.0 <= visibility <= 1.0:
        raise DomainError(f"visibility must lie in [0, 1], got {visibility}")
    flat = np.zeros(2**n_parties)
    for key in range(2**n_parties):
        k = key.bit_count()
        if k % 2 == 0:
            flat[key] = visibility * (-1.0) ** (k // 2)
    return CorrelationTensor.from_flat(n_parties, flat)


def correlation_value(tensor: CorrelationTensor, settings: AngleSettings) -> float:
    """Correlation function at the given planar angles.

    Multilinear in the per-party direction vectors: the sum over all
    multi-indices of the tensor entry times the product of cos/sin
    factors chosen by the index.
    """
    if settings.n_parties != tensor.n_parties:
        raise ShapeError(
            f"{settings.n_parties} angles for a {tensor.n_parties}-party tensor"
        )
    return product_contraction(tensor.values, settings.direction_vectors())


def correlation_function(tensor: CorrelationTensor) -> Callable[..., np.ndarray]:
    """Callable E(a_1, ..., a_N) that broadcasts over numpy angle arrays.

    Useful for evaluating the correlation function on quadrature grids;
    scalar angles give a 0-d array.
    """
    terms = [
        (idx, float(tensor.values[idx]))
        for idx in np.ndindex(*tensor.values.shape)
        if tensor.values[idx] != 0.0
    ]
    n = tensor.n_parties

    def evaluate(*angles):
        if len(angles) != n:
            raise ShapeError(f"expected {n} angle arguments, got {len(angles)}")
        cos_sin = [(np.cos(a), np.sin(a)) for a in angles]
        total = np.zeros(np.broadcast_shapes(*(np.shape(a) for a in angles)))
        for idx, coeff in terms:
            term = coeff
            for j, bit in enumerate(idx):
                term = term * cos_sin[j][bit]
            total = total + term
        return total

    return evaluate


def rotate_frames(tensor: CorrelationTensor, deltas: Sequence[float]) -> CorrelationTensor:
    """Re-express the tensor in per-party frames rotated by the given angles.

    Contracting the result with directions at angles (a_j - d_j)
    reproduces the original correlation values at angles a_j.
    """
    if len(deltas) != tensor.n_parties:
        raise ShapeError(
            f"{len(deltas)} rotation angles for a {tensor.n_parties}-party tensor"
        )
    out = np.asarray(tensor.values)
    for party, delta in enumerate(deltas):
        c, s = math.cos(delta), math.sin(delta)
        rot = np.array([[c, -s], [s, c]])
        out = np.moveaxis(np.tensordot(rot, out, axes=([0], [party])), 0, party)
    return CorrelationTensor(tensor.n_parties, out)
