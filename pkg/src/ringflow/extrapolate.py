"""Extrapolation of the truncated smallest eigenvalue to infinite truncation.

lambda_min(N) is fitted by a0 + a1/N + a2/N^2 in the least-squares sense and
a0 taken as the infinite-N estimate.  The fit is done in x = 1/N after
centering/scaling x to [-1, 1]; naive normal equations in raw x lose digits
because x spans [1e-4, 1e-3].
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .eigen import EigenResult, min_eigen
from .kernel import RingConfig, build_kernel

# Truncation schedule used for the reference high-accuracy table.
REFERENCE_SCHEDULE = (
    800, 1000, 1200, 1400, 1600, 1800, 2000, 2200, 2400,
    3000, 4000, 5000, 6000, 8000, 10000,
)

# Cheaper default for parameter sweeps, where 1e-6 accuracy is plenty.
DEFAULT_SWEEP_SCHEDULE = (400, 600, 800, 1200, 1600)


class ExtrapolationError(RuntimeError):
    """Eigensolve failed inside an extrapolation run; carries the offending N."""

    def __init__(self, n_trunc: int, cause: Exception):
        super().__init__(f"solver failed at N={n_trunc}: {cause}")
        self.n_trunc = n_trunc


@dataclass(frozen=True)
class ExtrapolationFit:
    a0: float
    a1: float
    a2: float
    residual: float
    n_values: tuple[int, ...]
    lambda_values: tuple[float, ...]
    band_ok: bool = field(default=True, compare=False)

    def evaluate(self, n: float) -> float:
        return self.a0 + self.a1 / n + self.a2 / n**2

    def to_record(self) -> dict:
        return {
            "schedule": list(self.n_values),
            "lambdas": list(self.lambda_values),
            "a0": self.a0,
            "a1": self.a1,
            "a2": self.a2,
            "residual": self.residual,
        }


def fit_quadratic(points) -> ExtrapolationFit:
    """Ordinary least squares of lambda on {1, 1/N, 1/N^2}.

    points: iterable of (N, lambda) pairs, at least 4 distinct N.
    residual is the sum of squared fit errors.
    """
    pts = sorted((int(n), float(lam)) for n, lam in points)
    ns = np.array([p[0] for p in pts], dtype=float)
    lams = np.array([p[1] for p in pts])
    if len(ns) < 4:
        raise ValueError(f"need at least 4 points for a quadratic fit, got {len(ns)}")
    if len(set(ns)) != len(ns):
        raise ValueError("duplicate N values make the design matrix rank-deficient")

    x = 1.0 / ns
    xm = 0.5 * (x.max() + x.min())
    xr = 0.5 * (x.max() - x.min())
    t = (x - xm) / xr
    design = np.vander(t, 3, increasing=True)
    coeffs, *_ = np.linalg.lstsq(design, lams, rcond=None)
    c0, c1, c2 = coeffs
    # expand c0 + c1*(x-xm)/xr + c2*((x-xm)/xr)^2 back to powers of x
    a0 = c0 - c1 * xm / xr + c2 * (xm / xr) ** 2
    a1 = c1 / xr - 2.0 * c2 * xm / xr**2
    a2 = c2 / xr**2
    fitted = a0 + a1 * x + a2 * x * x
    residual = float(np.sum((fitted - lams) ** 2))

    # sanity band: a0 should not stray far beyond the last increment; the
    # absolute floor keeps eigensolver-level noise near zero from flagging
    band_ok = True
    if len(lams) >= 2:
        last, prev = lams[-1], lams[-2]
        band_ok = abs(a0 - last) <= 10.0 * abs(last - prev) + 1e-12
        if not band_ok:
            warnings.warn(
                f"extrapolated a0={a0!r} is outside the sanity band around "
                f"lambda({int(ns[-1])})={last!r}",
                stacklevel=2,
            )
    return ExtrapolationFit(
        a0=float(a0),
        a1=float(a1),
        a2=float(a2),
        residual=residual,
        n_values=tuple(int(n) for n in ns),
        lambda_values=tuple(float(v) for v in lams),
        band_ok=band_ok,
    )


def extrapolated_infimum(
    alpha: float,
    beta: float,
    schedule=DEFAULT_SWEEP_SCHEDULE,
    method: str = "auto",
    eigen_cache: dict | None = None,
) -> tuple[float, ExtrapolationFit]:
    """Estimate inf_Psi P at (alpha, beta) by solving along a truncation schedule.

    Runs min_eigen at each N in the schedule, fits the quadratic in 1/N and
    returns (a0, fit).  eigen_cache, if given, maps N -> EigenResult and is
    filled as solves complete (lets callers share solves between schedules).
    """
    schedule = sorted(int(n) for n in schedule)
    if len(schedule) < 4:
        raise ValueError("schedule must contain at least 4 truncation sizes")
    points = []
    for n in schedule:
        cached = eigen_cache.get(n) if eigen_cache is not None else None
        if cached is None:
            try:
                cached = min_eigen(build_kernel(RingConfig(alpha, beta, n)), method)
            except Exception as exc:
                raise ExtrapolationError(n, exc) from exc
            if eigen_cache is not None:
                eigen_cache[n] = cached
        points.append((n, cached.lambda_min))
    fit = fit_quadratic(points)
    return fit.a0, fit
