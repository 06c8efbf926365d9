"""Local realistic models as ensembles of deterministic strategies.

A deterministic strategy assigns each party a response function; a model
is a probability-weighted mixture of such strategies.  The functional
inner product of any model's correlation function with a tensor-form one
collapses, party by party, to the tensor contracted with the per-party
cos/sin overlaps, which caps it at 4^N times the maximal tensor
component.  The constructions here evaluate that inner product in closed
form, build the strategy that attains the cap, and stress-test the bound
with random ensembles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .correlation import CorrelationTensor, product_contraction
from .errors import DomainError, ShapeError
from .functional_space import ResponseFunction, project, saturating_response
from .tensor_analysis import OptimizerConfig, sum_of_squares, t_max

_TWO_PI = 2.0 * math.pi
_WEIGHT_SUM_TOL = 1e-12

#: Slack added to the bound when counting violations (optimizer accuracy).
BOUND_TOLERANCE = 1e-8


@dataclass(frozen=True)
class DeterministicStrategy:
    """One response function per party: a single hidden-variable value."""

    responses: tuple[ResponseFunction, ...]

    def __init__(self, responses):
        resp = tuple(responses)
        if not all(isinstance(r, ResponseFunction) for r in resp):
            raise DomainError("responses must be ResponseFunction instances")
        object.__setattr__(self, "responses", resp)

    @property
    def n_parties(self) -> int:
        return len(self.responses)


@dataclass(frozen=True, eq=False)
class LhvEnsemble:
    """Probability-weighted mixture of deterministic strategies."""

    strategies: tuple[DeterministicStrategy, ...]
    weights: np.ndarray

    def __init__(self, strategies, weights):
        strat = tuple(strategies)
        w = np.asarray(weights, dtype=float)
        if len(strat) == 0:
            raise DomainError("ensemble needs at least one strategy")
        if w.shape != (len(strat),):
            raise ShapeError(
                f"{w.shape} weights for {len(strat)} strategies"
            )
        if len({s.n_parties for s in strat}) != 1:
            raise ShapeError("strategies have differing party counts")
        if np.any(w < 0.0):
            raise DomainError("weights must be nonnegative")
        if abs(float(np.sum(w)) - 1.0) > _WEIGHT_SUM_TOL:
            raise DomainError(f"weights sum to {float(np.sum(w))}, expected 1")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "strategies", strat)
        object.__setattr__(self, "weights", w)

    @property
    def n_parties(self) -> int:
        return self.strategies[0].n_parties


@dataclass(frozen=True)
class BoundVerification:
    """Result of stress-testing the generalized Bell bound."""

    n_parties: int
    trials: int
    bound: float
    max_found: float
    ratio_to_bound: float
    violations: int
    includes_optimal: bool
    certified: bool
    seed: int


def lr_inner_product(strategy: DeterministicStrategy, tensor: CorrelationTensor) -> float:
    """Inner product of a deterministic model's correlation function with E_T.

    Integrating party by party replaces each index-1/index-2 factor with
    the response's cos/sin overlap, so the N-fold integral is just the
    tensor contracted with the per-party overlap vectors (a_j, b_j).
    """
    if strategy.n_parties != tensor.n_parties:
        raise ShapeError(
            f"{strategy.n_parties}-party strategy against "
            f"{tensor.n_parties}-party tensor"
        )
    overlaps = []
    for response in strategy.responses:
        p = project(response)
        overlaps.append(np.array([p.a, p.b]))
    return product_contraction(tensor.values, overlaps)


def ensemble_inner_product(ensemble: LhvEnsemble, tensor: CorrelationTensor) -> float:
    """Weighted average of the strategy inner products."""
    return math.fsum(
        float(w) * lr_inner_product(s, tensor)
        for s, w in zip(ensemble.strategies, ensemble.weights)
    )


def _saturating_strategy(maximizer: np.ndarray) -> DeterministicStrategy:
    responses = []
    for dx, dy in maximizer:
        responses.append(saturating_response(math.atan2(dy, dx) % _TWO_PI))
    return DeterministicStrategy(responses)


def optimal_strategy(
    tensor: CorrelationTensor, config: OptimizerConfig | None = None
) -> tuple[DeterministicStrategy, float]:
    """The deterministic strategy attaining the generalized Bell bound.

    Aligning each party's saturating response with the maximizing
    direction gives overlap vectors 4*(cos psi_j, sin psi_j), so the
    inner product is exactly 4^N times the maximal tensor component.
    """
    result = t_max(tensor, config)
    strategy = _saturating_strategy(result.maximizer)
    return strategy, lr_inner_product(strategy, tensor)


def two_setting_model_exists(tensor: CorrelationTensor) -> bool:
    """Sufficient condition for a local model of the 2^N measured values.

    Holds iff the squared entries sum to at most 1; the comparison
    carries a 1e-12 roundoff guard so the boundary case classifies
    non-strictly.
    """
    return sum_of_squares(tensor) <= 1.0 + 1e-12


def random_response(rng: np.random.Generator, max_flips: int = 8) -> ResponseFunction:
    """Sample a response: flip count uniform over {0, 2, ..., max_flips},
    flip positions uniform, leading sign uniform."""
    flips = int(rng.choice(np.arange(0, max_flips + 1, 2)))
    while True:
        points = np.sort(rng.uniform(0.0, _TWO_PI, flips))
        if flips == 0 or np.all(np.diff(points) > 0.0):
            break
    leading = 1 if rng.random() < 0.5 else -1
    return ResponseFunction(tuple(points), leading)


def random_strategy(rng: np.random.Generator, n_parties: int) -> DeterministicStrategy:
    return DeterministicStrategy(random_response(rng) for _ in range(n_parties))


def random_ensemble(
    rng: np.random.Generator, n_parties: int, max_strategies: int = 4
) -> LhvEnsemble:
    """Sample an ensemble: strategy count uniform in 1..max_strategies,
    weights uniform on the simplex."""
    count = int(rng.integers(1, max_strategies + 1))
    strategies = [random_strategy(rng, n_parties) for _ in range(count)]
    weights = rng.dirichlet(np.ones(count))
    return LhvEnsemble(strategies, weights)


def verify_bound(
    tensor: CorrelationTensor,
    trial_count: int,
    seed: int = 0,
    include_optimal: bool = True,
    config: OptimizerConfig | None = None,
) -> BoundVerification:
    """Check random ensembles against the generalized Bell bound.

    A trial exceeding 4^N * t_max by more than ``BOUND_TOLERANCE`` counts
    as a violation (reported, not raised).  With ``include_optimal`` the
    saturating strategy joins the comparison so ``max_found`` approaches
    the bound.  The optimizer's certification flag is carried through.
    """
    if trial_count < 1:
        raise DomainError(f"trial_count must be >= 1, got {trial_count}")
    top = t_max(tensor, config)
    bound = 4.0**tensor.n_parties * top.value

    rng = np.random.default_rng(seed)
    max_found = -math.inf
    violations = 0
    for _ in range(trial_count):
        value = ensemble_inner_product(random_ensemble(rng, tensor.n_parties), tensor)
        max_found = max(max_found, value)
        if value > bound + BOUND_TOLERANCE:
            violations += 1
    if include_optimal:
        value = lr_inner_product(_saturating_strategy(top.maximizer), tensor)
        max_found = max(max_found, value)
        if value > bound + BOUND_TOLERANCE:
            violations += 1

    ratio = max_found / bound if bound != 0.0 else 0.0
    return BoundVerification(
        n_parties=tensor.n_parties,
        trials=trial_count,
        bound=bound,
        max_found=max_found,
        ratio_to_bound=ratio,
        violations=violations,
        includes_optimal=include_optimal,
        certified=top.certified,
        seed=seed,
    )
