"""Spectral estimates for weighted graph Laplacians under adapted metrics."""

import json
from typing import Optional, Sequence

from . import _core
from ._core import (
    BallCapExceeded,
    DimensionCapExceeded,
    UsageError,
    degenerate_bound,
    growth_bound_bounded,
    growth_bound_general,
    scalar_I,
)

__all__ = [
    "BallCapExceeded",
    "DimensionCapExceeded",
    "UsageError",
    "analyze",
    "ball",
    "bounds",
    "degenerate_bound",
    "explosion",
    "growth",
    "growth_bound_bounded",
    "growth_bound_general",
    "heat_kernel",
    "lambda0",
    "lambda_ess",
    "reproduce",
    "scalar_I",
]

_TRIDIAGONAL_CAP = 1_000_000
_SPARSE_CAP = 100_000


def _load(text: str):
    # Non-finite numbers are exported as strings.
    def fix(v):
        if isinstance(v, dict):
            return {k: fix(x) for k, x in v.items()}
        if isinstance(v, list):
            return [fix(x) for x in v]
        if v in ("inf", "-inf", "nan"):
            return float(v)
        return v

    return fix(json.loads(text))


def ball(family: str, r: float, metric: str = "graph", theta: str = "pi", cap: int = 2_000_000) -> dict:
    """Closed ball around the root: vertex ids and distances, sorted by distance."""
    return _load(_core.ball_json(family, metric, theta, r, cap))


def growth(family: str, metric: str = "graph", theta: str = "pi", cap: int = 2_000_000) -> dict:
    """Volume profile up to the cap with the growth classification and mu estimate."""
    return _load(_core.growth_json(family, metric, theta, cap))


def lambda0(
    family: str,
    radii: Sequence[float],
    metric: str = "graph",
    theta: str = "pi",
    cap: int = 2_000_000,
    tol: float = 1e-8,
    tridiagonal_cap: int = _TRIDIAGONAL_CAP,
    sparse_cap: int = _SPARSE_CAP,
) -> dict:
    return _load(
        _core.lambda0_json(family, metric, theta, list(radii), cap, tol, tridiagonal_cap, sparse_cap)
    )


def lambda_ess(
    family: str,
    k_grid: Sequence[float],
    outer_radii: Sequence[float],
    metric: str = "graph",
    theta: str = "pi",
    cap: int = 2_000_000,
    tol: float = 1e-8,
    tridiagonal_cap: int = _TRIDIAGONAL_CAP,
    sparse_cap: int = _SPARSE_CAP,
) -> dict:
    return _load(
        _core.lambda_ess_json(
            family, metric, theta, list(k_grid), list(outer_radii), cap, tol, tridiagonal_cap, sparse_cap
        )
    )


def bounds(mu: float, m: Optional[float] = None, M: Optional[float] = None) -> dict:
    """Bound report; pass mu=math.inf with m for the degenerate case."""
    return _load(_core.bounds_json(float(mu), m, M))


def analyze(
    family: str = "tree:k=3",
    theta: str = "pi",
    metric: str = "graph",
    rmax: float = 0.0,
    cap: int = 2_000_000,
    tol: float = 1e-8,
    tridiagonal_cap: int = _TRIDIAGONAL_CAP,
    sparse_cap: int = _SPARSE_CAP,
    out: str = "",
) -> dict:
    """Full pipeline. The result carries "exit_code" as the CLI would report it."""
    return _load(_core.analyze_json(family, theta, metric, rmax, cap, tol, tridiagonal_cap, sparse_cap, out))


def reproduce(example: int) -> dict:
    return _load(_core.reproduce_json(example))


def heat_kernel(
    family: str, x: int, y: int, t_grid: Sequence[float], theta: str = "one", paths: int = 10_000, seed: int = 1
) -> list:
    """Monte Carlo p_t(x, y) at each t."""
    return _load(_core.heat_kernel_json(family, theta, x, y, list(t_grid), paths, seed))


def explosion(family: str, horizon: float = 10.0, jump_cap: int = 1_000_000, paths: int = 1000, seed: int = 1) -> dict:
    return _load(_core.explosion_json(family, horizon, jump_cap, paths, seed))

