"""Smoothing-coefficient selection by in-sample one-step error.

The objective replays the training window: after initialization, every
observation is forecast one day ahead before being consumed, and the
forecasts made once the first two seasons have passed are scored against
the actuals. Coefficients are picked by exhaustive grid evaluation
followed by a few rounds of local re-gridding around the incumbent.

Grid points are independent of one another, so the sweep is evaluated as
one vectorized pass over the window with all candidate triples in
lockstep; the reduction to a winner is deterministic regardless of how
the evaluations would be scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooShortError
from .models import SmoothingParams, _initial_components, _train_values


@dataclass(frozen=True)
class GridSpec:
    """Candidate values per coefficient axis, plus refinement policy.

    After the full grid is scored, each refinement round lays a grid of
    the same per-axis cardinality across ±(axis spacing × refine_shrink)
    around the incumbent, clipped to [0, 1]; duplicate points collapse.
    """

    alpha_grid: tuple[float, ...]
    beta_grid: tuple[float, ...]
    gamma_grid: tuple[float, ...]
    refine_rounds: int = 0
    refine_shrink: float = 0.5

    def __post_init__(self):
        for name in ("alpha_grid", "beta_grid", "gamma_grid"):
            axis = tuple(float(v) for v in getattr(self, name))
            object.__setattr__(self, name, axis)
            if not axis:
                raise ValueError(f"{name} is empty")
            if any(not 0.0 <= v <= 1.0 for v in axis):
                raise ValueError(f"{name} values must lie in [0, 1]")
            if any(b <= a for a, b in zip(axis, axis[1:])):
                raise ValueError(f"{name} must be strictly increasing")
        if self.refine_rounds < 0:
            raise ValueError("refine_rounds must be non-negative")
        if not 0.0 < self.refine_shrink < 1.0:
            raise ValueError("refine_shrink must lie strictly in (0, 1)")

    @classmethod
    def default(cls) -> "GridSpec":
        """Eleven points per axis (step 0.1), two refinement rounds."""
        axis = tuple(round(0.1 * i, 1) for i in range(11))
        return cls(axis, axis, axis, refine_rounds=2, refine_shrink=0.5)

    @classmethod
    def coarse(cls) -> "GridSpec":
        """Six points per axis (step 0.2), one refinement round."""
        axis = tuple(round(0.2 * i, 1) for i in range(6))
        return cls(axis, axis, axis, refine_rounds=1, refine_shrink=0.5)

    @classmethod
    def fine(cls) -> "GridSpec":
        """Twenty-one points per axis (step 0.05), three refinement rounds."""
        axis = tuple(round(0.05 * i, 2) for i in range(21))
        return cls(axis, axis, axis, refine_rounds=3, refine_shrink=0.5)


@dataclass(frozen=True)
class FitResult:
    """Winning coefficients with their objective value and search cost."""

    params: SmoothingParams
    in_sample_rmse: float
    evaluations: int

    def __post_init__(self):
        if self.in_sample_rmse < 0.0:
            raise ValueError("in_sample_rmse cannot be negative")
        if self.evaluations < 1:
            raise ValueError("at least one evaluation is required")


def _require_scorable(n: int, season_length: int) -> None:
    needed = 2 * season_length + 1
    if n < needed:
        raise TooShortError(
            f"need at least {needed} observations to score one-step "
            f"forecasts (two seasons of warm-up plus one), got {n}"
        )


def _one_step_errors_batch(
    values: np.ndarray,
    season_length: int,
    alphas: np.ndarray,
    betas: np.ndarray,
    gammas: np.ndarray,
) -> np.ndarray:
    """One-step RMSE for many coefficient triples in one window sweep.

    Per triple this performs bit-for-bit the same arithmetic as folding
    ``hw_update`` one observation at a time and scoring each pre-update
    lead-1 forecast from the third season onward.
    """
    L = season_length
    n = values.size
    level0, trend0, seasonal0 = _initial_components(values, L)
    width = alphas.size

    level = np.full(width, level0)
    trend = np.full(width, trend0)
    ring = np.tile(seasonal0[:, None], (1, width))  # (L, width) phase rows

    one_m_alpha = 1.0 - alphas
    one_m_beta = 1.0 - betas
    one_m_gamma = 1.0 - gammas

    warmup = 2 * L
    sq_sum = np.zeros(width)
    obs_list = values.tolist()
    for t in range(n):
        obs = obs_list[t]
        row = ring[t % L]
        if t >= warmup:
            err = level + trend + row - obs
            sq_sum += err * err
        new_level = alphas * (obs - row) + one_m_alpha * (level + trend)
        trend = betas * (new_level - level) + one_m_beta * trend
        ring[t % L] = gammas * (obs - new_level) + one_m_gamma * row
        level = new_level
    return np.sqrt(sq_sum / (n - warmup))


def one_step_rmse(train, params: SmoothingParams) -> float:
    """In-sample one-step error of the smoother under ``params``.

    The first two seasons only warm the state up, so the window must
    extend at least one observation past the initialization span.
    """
    values = _train_values(train)
    _require_scorable(values.size, params.season_length)
    scores = _one_step_errors_batch(
        values,
        params.season_length,
        np.array([params.alpha]),
        np.array([params.beta]),
        np.array([params.gamma]),
    )
    return float(scores[0])


def _axis_spacing(axis: np.ndarray) -> float:
    if axis.size < 2:
        return 0.0
    return float(axis[-1] - axis[0]) / (axis.size - 1)


def _best_of_batch(
    scores: np.ndarray, a: np.ndarray, b: np.ndarray, g: np.ndarray
) -> tuple[float, float, float, float]:
    """Lowest score; exact ties go to the smallest (alpha, beta, gamma)."""
    minimum = scores.min()
    tied = np.flatnonzero(scores == minimum)
    order = np.lexsort((g[tied], b[tied], a[tied]))
    i = int(tied[order[0]])
    return float(scores[i]), float(a[i]), float(b[i]), float(g[i])


def grid_search(train, spec: GridSpec, season_length: int = 365) -> FitResult:
    """Pick the coefficient triple with the lowest in-sample one-step
    error over the grid, then refine locally.

    Deterministic: identical inputs give identical results, including
    the evaluation count. Refinement rounds never worsen the incumbent
    (its point stays in every refined grid, or it simply keeps the
    title). Non-uniform axes refine by their average spacing.
    """
    values = _train_values(train)
    _require_scorable(values.size, season_length)

    axes = [
        np.asarray(spec.alpha_grid, dtype=np.float64),
        np.asarray(spec.beta_grid, dtype=np.float64),
        np.asarray(spec.gamma_grid, dtype=np.float64),
    ]
    cardinalities = [axis.size for axis in axes]
    spacings = [_axis_spacing(axis) for axis in axes]

    evaluations = 0
    best: tuple[float, float, float, float] | None = None

    def sweep(axis_a, axis_b, axis_g):
        nonlocal evaluations, best
        mesh = np.meshgrid(axis_a, axis_b, axis_g, indexing="ij")
        a, b, g = (m.ravel() for m in mesh)
        scores = _one_step_errors_batch(values, season_length, a, b, g)
        evaluations += scores.size
        candidate = _best_of_batch(scores, a, b, g)
        if (
            best is None
            or candidate[0] < best[0]
            or (candidate[0] == best[0] and candidate[1:] < best[1:])
        ):
            best = candidate

    sweep(*axes)
    for _ in range(spec.refine_rounds):
        refined = []
        next_spacings = []
        for axis_index in range(3):
            center = best[1 + axis_index]
            n_points = cardinalities[axis_index]
            half = spacings[axis_index] * spec.refine_shrink
            if n_points == 1 or half == 0.0:
                refined.append(np.array([center]))
                next_spacings.append(0.0)
                continue
            points = np.linspace(center - half, center + half, n_points)
            refined.append(np.unique(np.clip(points, 0.0, 1.0)))
            next_spacings.append(2.0 * half / (n_points - 1))
        sweep(*refined)
        spacings = next_spacings

    value, alpha, beta, gamma = best
    params = SmoothingParams(alpha, beta, gamma, season_length=season_length)
    return FitResult(params=params, in_sample_rmse=value, evaluations=evaluations)
