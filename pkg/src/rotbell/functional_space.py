"""Deterministic response functions and their two-dimensional Fourier content.

A response function is a periodic sign function on [0, 2*pi): one party's
predetermined +/-1 answer as a function of its setting angle.  Only its
overlaps with cos and sin matter for correlation inner products, so the
projection onto the span of cos(a)/sqrt(pi) and sin(a)/sqrt(pi) is the
whole story; it is computed in closed form.  A trapezoid rule on uniform
periodic nodes provides an independent numerical route to the same inner
products, exact for trigonometric polynomials of low per-axis degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce
from typing import Callable, Sequence, Union

import numpy as np

from .errors import BudgetError, DomainError

_TWO_PI = 2.0 * math.pi

#: Largest possible projection norm of a +/-1-valued response.
PROJECTION_NORM_BOUND = 4.0 / math.sqrt(math.pi)


@dataclass(frozen=True)
class ResponseFunction:
    """Piecewise-constant sign function on [0, 2*pi).

    The value on [0, first breakpoint) is ``leading_sign`` and flips at
    every breakpoint; an even breakpoint count keeps the periodic
    extension consistent.  A breakpoint at exactly 0 means the flip
    happens at the start of the period, i.e. ``leading_sign`` is the
    left-limit value there.
    """

    breakpoints: tuple[float, ...]
    leading_sign: int

    def __init__(self, breakpoints: Sequence[float] = (), leading_sign: int = 1):
        bps = tuple(float(b) for b in breakpoints)
        if len(bps) % 2 != 0:
            raise DomainError(f"breakpoint count must be even, got {len(bps)}")
        if any(not 0.0 <= b < _TWO_PI for b in bps):
            raise DomainError("breakpoints must lie in [0, 2*pi)")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise DomainError("breakpoints must be strictly increasing")
        sign = int(leading_sign)
        if sign not in (1, -1):
            raise DomainError(f"leading_sign must be +1 or -1, got {leading_sign}")
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "leading_sign", sign)

    def __call__(self, alpha):
        """Evaluate at one angle or a numpy array of angles; returns +/-1."""
        a = np.asarray(alpha, dtype=float) % _TWO_PI
        crossings = np.searchsorted(self.breakpoints, a, side="right")
        out = self.leading_sign * np.where(crossings % 2 == 0, 1.0, -1.0)
        return out if out.ndim else float(out)

    def negated(self) -> "ResponseFunction":
        return ResponseFunction(self.breakpoints, -self.leading_sign)


@dataclass(frozen=True)
class FourierProjection:
    """Overlaps of a response with cos and sin over one period.

    ``a`` and ``b`` are the plain integrals against cos and sin; ``norm``
    is the length of the projection onto the orthonormal pair
    cos/sqrt(pi), sin/sqrt(pi), so (a, b) = sqrt(pi) * norm * (cos beta,
    sin beta).  ``beta`` is reported in [0, 2*pi) and is meaningful only
    when ``beta_defined`` (nonzero projection).
    """

    a: float
    b: float
    norm: float
    beta: float
    beta_defined: bool


def project(response: ResponseFunction) -> FourierProjection:
    """Closed-form cos/sin overlaps of a sign function.

    Integrating piecewise and telescoping leaves only the breakpoint
    terms, so constants project to exactly zero.
    """
    bps = np.asarray(response.breakpoints)
    s = float(response.leading_sign)
    if bps.size:
        alt = np.where(np.arange(bps.size) % 2 == 0, 1.0, -1.0)
        a = 2.0 * s * float(np.sum(alt * np.sin(bps)))
        b = -2.0 * s * float(np.sum(alt * np.cos(bps)))
    else:
        a = 0.0
        b = 0.0
    norm = math.hypot(a, b) / math.sqrt(math.pi)
    if norm > 0.0:
        beta = math.atan2(b, a) % _TWO_PI
        return FourierProjection(a, b, norm, beta, True)
    return FourierProjection(a, b, 0.0, 0.0, False)


def saturating_response(psi: float) -> ResponseFunction:
    """The sign function aligned with direction ``psi``: sgn(cos(a - psi)).

    Its projection norm attains the bound 4/sqrt(pi), with beta = psi.
    """
    b1 = float(psi + math.pi / 2.0) % _TWO_PI
    b2 = float(psi + 3.0 * math.pi / 2.0) % _TWO_PI
    lo, hi = sorted((b1, b2))
    mid = 0.5 * (lo + hi)
    inside = 1 if math.cos(mid - psi) > 0.0 else -1  # value on [lo, hi)
    return ResponseFunction((lo, hi), -inside)


FactoredCallable = Sequence[Callable[[np.ndarray], np.ndarray]]
IntegrandLike = Union[Callable[..., np.ndarray], FactoredCallable]


def _is_factored(f: IntegrandLike) -> bool:
    return isinstance(f, (list, tuple))


def quadrature_inner_product(
    f: IntegrandLike,
    g: IntegrandLike,
    n_parties: int,
    nodes_per_axis: int = 64,
    *,
    max_evaluations: int = 10**8,
) -> float:
    """Trapezoid approximation of the integral of f*g over [0, 2*pi]^N.

    Uniform periodic nodes make the rule exact (up to roundoff) for
    trigonometric-polynomial integrands of per-axis degree below
    ``nodes_per_axis`` / 2.  Each integrand is either a callable taking N
    broadcastable angle arrays, or a sequence of N single-axis callables
    declaring the per-party factorization f(a_1..a_N) = prod f_j(a_j).
    When both integrands are factored the integral splits into per-axis
    1-D quadratures; otherwise the full grid is used, guarded by
    ``max_evaluations``.
    """
    if n_parties < 1:
        raise DomainError(f"n_parties must be >= 1, got {n_parties}")
    if nodes_per_axis < 8:
        raise DomainError(f"nodes_per_axis must be >= 8, got {nodes_per_axis}")
    for name, fn in (("f", f), ("g", g)):
        if _is_factored(fn) and len(fn) != n_parties:
            raise DomainError(
                f"factored integrand {name} has {len(fn)} factors for {n_parties} parties"
            )

    nodes = _TWO_PI * np.arange(nodes_per_axis) / nodes_per_axis
    weight = _TWO_PI / nodes_per_axis

    if _is_factored(f) and _is_factored(g):
        result = 1.0
        for fj, gj in zip(f, g):
            result *= weight * float(np.sum(np.asarray(fj(nodes)) * np.asarray(gj(nodes))))
        return result

    if nodes_per_axis**n_parties > max_evaluations:
        raise BudgetError(
            f"{nodes_per_axis}^{n_parties} grid nodes exceed the budget of "
            f"{max_evaluations}; pass factored integrands or raise max_evaluations"
        )
    grids = np.meshgrid(*([nodes] * n_parties), indexing="ij", sparse=True)

    def on_grid(fn: IntegrandLike) -> np.ndarray:
        if _is_factored(fn):
            return reduce(np.multiply, (np.asarray(fj(gj)) for fj, gj in zip(fn, grids)))
        return np.asarray(fn(*grids))

    return weight**n_parties * float(np.sum(on_grid(f) * on_grid(g)))
