"""Backflow-maximizing states and time-resolved probability currents.

Everything is dimensionless: time enters as tau = t/T, currents are reported
as T*J, and mode m evolves with phase 2*alpha*(m - beta)^2 * tau.  The current
at angle theta is evaluated through the O(N)-per-sample reduction

    T*J(theta, tau) = (2*alpha/pi) * Re{ conj(z) * w },
    z = sum_m c_m e^{i m theta} e^{-i 2 alpha (m-beta)^2 tau},
    w = sum_m (m - beta) c_m e^{i m theta} e^{-i 2 alpha (m-beta)^2 tau},

algebraically identical to the double sum over (m, n).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .eigen import EigenResult, min_eigen
from .kernel import RingConfig, build_kernel

_CHUNK = 512


@dataclass(frozen=True)
class ModeAmplitudes:
    """Normalized mode coefficients of a nonnegative-angular-momentum state."""

    coeffs: np.ndarray
    alpha: float
    beta: float
    lambda_min: float | None = None

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        norm_sq = float(np.sum(np.abs(c) ** 2))
        if abs(norm_sq - 1.0) > 1e-12:
            raise ValueError(f"coefficients not normalized: sum |c_m|^2 = {norm_sq!r}")
        c = _phase_normalize(c)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def n_trunc(self) -> int:
        return len(self.coeffs) - 1


@dataclass(frozen=True)
class CurrentSeries:
    tau_samples: np.ndarray
    tj_values: np.ndarray
    theta: float


def _phase_normalize(c: np.ndarray) -> np.ndarray:
    for x in c:
        if abs(x) > 1e-12:
            return c * (np.conj(x) / abs(x))
    return c.copy()


def make_state(coeffs, alpha: float, beta: float) -> ModeAmplitudes:
    """Normalize raw coefficients (norm and overall phase) into a state."""
    c = np.asarray(coeffs, dtype=complex)
    n = np.linalg.norm(c)
    if n == 0:
        raise ValueError("zero coefficient vector")
    from .kernel import canonicalize

    beta, _ = canonicalize(beta)
    return ModeAmplitudes(coeffs=c / n, alpha=alpha, beta=beta)


def maximizing_state(
    alpha: float, beta: float, n_trunc: int, method: str = "auto"
) -> ModeAmplitudes:
    """Eigenvector of the smallest kernel eigenvalue as a mode-amplitude state.

    The kernel is real symmetric, so the coefficients come out real.
    """
    config = RingConfig(alpha, beta, n_trunc)
    result = min_eigen(build_kernel(config), method)
    return ModeAmplitudes(
        coeffs=result.eigenvector.astype(complex),
        alpha=config.alpha,
        beta=config.beta,
        lambda_min=result.lambda_min,
    )


def mean_energy(state: ModeAmplitudes) -> float:
    """Dimensionless mean energy <E>T/hbar = 2 alpha sum_m |c_m|^2 (m - beta)^2."""
    m = np.arange(len(state.coeffs))
    return float(2.0 * state.alpha * np.sum(np.abs(state.coeffs) ** 2 * (m - state.beta) ** 2))


def current_series(
    state: ModeAmplitudes,
    theta: float,
    tau_range: tuple[float, float],
    n_samples: int,
) -> CurrentSeries:
    """Sample T*J(theta, tau) on an evenly spaced tau grid."""
    lo, hi = tau_range
    if not (hi > lo):
        raise ValueError(f"empty tau range ({lo}, {hi})")
    if n_samples < 2:
        raise ValueError("need at least 2 samples")
    tau = np.linspace(lo, hi, n_samples)
    tj = np.empty(n_samples)
    m = np.arange(len(state.coeffs))
    phase_rate = 2.0 * state.alpha * (m - state.beta) ** 2
    c_theta = state.coeffs * np.exp(1j * m * theta)
    w_coeff = (m - state.beta) * c_theta
    for start in range(0, n_samples, _CHUNK):
        chunk = tau[start : start + _CHUNK]
        evol = np.exp(-1j * np.outer(chunk, phase_rate))
        z = evol @ c_theta
        w = evol @ w_coeff
        tj[start : start + len(chunk)] = (2.0 * state.alpha / np.pi) * np.real(
            np.conj(z) * w
        )
    return CurrentSeries(tau_samples=tau, tj_values=tj, theta=theta)


def time_quadrature_p(state: ModeAmplitudes, n_samples: int) -> float:
    """Composite-Simpson integral of T*J(0, tau) over tau in [-1/2, 1/2].

    Independent quadrature oracle for the kernel quadratic form; n_samples
    must be odd.
    """
    if n_samples < 3 or n_samples % 2 == 0:
        raise ValueError(f"composite Simpson needs an odd n_samples >= 3, got {n_samples}")
    series = current_series(state, 0.0, (-0.5, 0.5), n_samples)
    h = 1.0 / (n_samples - 1)
    weights = np.ones(n_samples)
    weights[1:-1:2] = 4.0
    weights[2:-1:2] = 2.0
    return float(h / 3.0 * np.dot(weights, series.tj_values))


def write_state_csv(state: ModeAmplitudes, path) -> None:
    lam = "" if state.lambda_min is None else f" lambda_min={state.lambda_min:.17g}"
    with open(path, "w") as fh:
        fh.write(
            f"# alpha={state.alpha:.17g} beta={state.beta:.17g} "
            f"n_trunc={state.n_trunc}{lam}\n"
        )
        fh.write("m,re_c,im_c\n")
        for m, c in enumerate(state.coeffs):
            fh.write(f"{m},{c.real:.17g},{c.imag:.17g}\n")


def write_series_csv(series: CurrentSeries, path) -> None:
    with open(path, "w") as fh:
        fh.write(f"# theta={series.theta:.17g} window=(-0.5,0.5)\n")
        fh.write("tau,tj\n")
        for t, j in zip(series.tau_samples, series.tj_values):
            fh.write(f"{t:.17g},{j:.17g}\n")
