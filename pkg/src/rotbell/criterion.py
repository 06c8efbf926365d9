"""Top-level criterion: when rotational invariance excludes local models.

A measured planar tensor admits a local realistic explanation of its
full rotationally invariant correlation function only if the function's
squared norm pi^N * sum(T^2) stays within the generalized Bell bound
4^N * T_max.  For noisy GHZ states both sides are closed-form in the
visibility, giving an exclusion threshold that, from four parties on,
drops below the two-setting modelability threshold: a window where the
measured data alone is locally modelable but no single model covers all
settings.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .correlation import CorrelationTensor, ghz_planar_tensor
from .errors import DomainError
from .lhv import two_setting_model_exists
from .tensor_analysis import OptimizerConfig, analytic_inner_product, sum_of_squares, t_max

REGION_LOCAL = "LOCAL"
REGION_PARADOX = "PARADOX"
REGION_NONLOCAL = "NONLOCAL"


@dataclass(frozen=True)
class CriterionReport:
    """Both sides of the exclusion test for one tensor.

    ``lhs`` is the squared norm of the correlation function, ``rhs`` the
    generalized Bell bound; ``violated`` means no local realistic model
    can reproduce the full correlation function.  ``two_setting_model``
    reports whether the measured values alone are modelable, and
    ``certified`` carries the optimizer's certification flag.
    """

    n_parties: int
    lhs: float
    rhs: float
    violated: bool
    two_setting_model: bool
    margin: float
    sum_sq: float
    certified: bool


@dataclass(frozen=True)
class GhzThresholds:
    """Visibility thresholds for the noisy GHZ family.

    ``v_ri`` = 2*(2/pi)^N is the exclusion onset under rotational
    invariance; ``v_two_setting`` = 2^(-(N-1)/2) bounds two-setting
    modelability.  A nonempty gap (v_ri < v_two_setting) is the window
    where models of the measured data exist but cannot be consistent.
    """

    n_parties: int
    v_ri: float
    v_two_setting: float
    gap_nonempty: bool


@dataclass(frozen=True)
class ScanPoint:
    """One visibility on a scan grid with its report and region label."""

    visibility: float
    report: CriterionReport
    region: str


def ri_criterion(
    tensor: CorrelationTensor, config: OptimizerConfig | None = None
) -> CriterionReport:
    """Evaluate the rotational-invariance exclusion test for a tensor."""
    top = t_max(tensor, config)
    lhs = analytic_inner_product(tensor, tensor)
    rhs = 4.0**tensor.n_parties * top.value
    sum_sq = sum_of_squares(tensor)
    return CriterionReport(
        n_parties=tensor.n_parties,
        lhs=lhs,
        rhs=rhs,
        violated=lhs > rhs,
        two_setting_model=two_setting_model_exists(tensor),
        margin=lhs - rhs,
        sum_sq=sum_sq,
        certified=top.certified,
    )


def ghz_thresholds(n_parties: int) -> GhzThresholds:
    """Closed-form visibility thresholds for N-party noisy GHZ states."""
    if n_parties < 1:
        raise DomainError(f"n_parties must be >= 1, got {n_parties}")
    v_ri = 2.0 * (2.0 / np.pi) ** n_parties
    v_two_setting = 2.0 ** (-(n_parties - 1) / 2.0)
    return GhzThresholds(n_parties, v_ri, v_two_setting, v_ri < v_two_setting)


def classify(report: CriterionReport) -> str:
    """Region label: LOCAL if not violated, else PARADOX when the
    measured data is still two-setting modelable, else NONLOCAL."""
    if not report.violated:
        return REGION_LOCAL
    return REGION_PARADOX if report.two_setting_model else REGION_NONLOCAL


def ghz_scan(
    n_parties: int,
    v_min: float,
    v_max: float,
    steps: int,
    config: OptimizerConfig | None = None,
) -> list[ScanPoint]:
    """Evaluate the criterion on a uniform visibility grid.

    ``steps`` is the number of grid points (numpy.linspace semantics:
    both endpoints included for steps >= 2, just v_min for steps = 1).
    Points are independent; rows are returned in grid order.
    """
    if not 0.0 <= v_min <= v_max <= 1.0:
        raise DomainError(
            f"need 0 <= v_min <= v_max <= 1, got v_min={v_min}, v_max={v_max}"
        )
    if steps < 1:
        raise DomainError(f"steps must be >= 1, got {steps}")
    points = []
    for v in np.linspace(v_min, v_max, steps):
        report = ri_criterion(ghz_planar_tensor(n_parties, float(v)), config)
        points.append(ScanPoint(float(v), report, classify(report)))
    return points
