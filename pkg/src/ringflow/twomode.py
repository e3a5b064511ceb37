"""Closed-form analysis of two-eigenstate superpositions.

A state built from ring eigenstates m1 < m2 with mixing angle phi and relative
phase gamma has integrated current

    P(phi, gamma) = (alpha/pi) * [A - B*cos(phi) + A*sinc(alpha*A*B)*cos(gamma)*sin(phi)]

with A = m1 + m2 - 2*beta and B = m2 - m1.  The minimum over (phi, gamma) has
a closed form; minimizing that over (alpha, beta) already beats the line bound
by a factor of about 2.6.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import canonicalize, sinc


def _check_pair(m1: int, m2: int) -> None:
    if not (0 <= m1 < m2):
        raise ValueError(f"need 0 <= m1 < m2, got ({m1}, {m2})")


@dataclass(frozen=True)
class TwoModeResult:
    p_min: float
    phi_star: float
    gamma_star: float
    a_val: float
    b_val: float
    degenerate: bool = False


def two_mode_p(m1, m2, alpha, beta, phi, gamma):
    """Integrated current of the (m1, m2) superposition at given (phi, gamma)."""
    _check_pair(m1, m2)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    beta, _ = canonicalize(beta)
    a = m1 + m2 - 2.0 * beta
    b = float(m2 - m1)
    return (alpha / np.pi) * (
        a - b * np.cos(phi) + a * sinc(alpha * a * b) * np.cos(gamma) * np.sin(phi)
    )


def two_mode_p_min(m1, m2, alpha, beta):
    """Closed-form min over (phi, gamma): (alpha/pi)(A - sqrt(B^2 + A^2 sinc^2(alpha A B))).

    Vectorized over alpha/beta; beta is assumed already in (-1, 0].
    """
    a = m1 + m2 - 2.0 * np.asarray(beta, dtype=float)
    b = float(m2 - m1)
    alpha = np.asarray(alpha, dtype=float)
    return (alpha / np.pi) * (a - np.sqrt(b * b + a * a * sinc(alpha * a * b) ** 2))


def minimize_two_mode(m1, m2, alpha, beta) -> TwoModeResult:
    """Closed-form minimizer over the superposition parameters (phi, gamma)."""
    _check_pair(m1, m2)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    beta, _ = canonicalize(beta)
    a = m1 + m2 - 2.0 * beta
    b = float(m2 - m1)
    coupling = a * sinc(alpha * a * b)
    p_min = (alpha / np.pi) * (a - np.sqrt(b * b + coupling * coupling))
    degenerate = coupling == 0.0
    phi_star = float(np.arctan2(abs(coupling), b))
    # the gamma term enters as +coupling*cos(gamma); pick the sign that lowers P
    gamma_star = np.pi if coupling > 0 else 0.0
    return TwoModeResult(
        p_min=float(p_min),
        phi_star=phi_star,
        gamma_star=float(gamma_star),
        a_val=float(a),
        b_val=b,
        degenerate=degenerate,
    )


def global_two_mode_min(
    m1: int,
    m2: int,
    alpha_over_pi_max: float = 2.0,
    beta_range: tuple[float, float] = (-0.999999999, 0.0),
) -> tuple[float, float, float]:
    """Minimize the closed-form two-mode bound over alpha and beta.

    Coarse grid over alpha/pi in (0, alpha_over_pi_max] and beta in (-1, 0],
    then staged local grid refinement.  Returns (alpha_star, beta_star, p_star)
    with p_star resolved to well below 1e-6.
    """
    _check_pair(m1, m2)
    ap = np.linspace(1e-4, alpha_over_pi_max, 4001)
    bs = np.linspace(beta_range[0], beta_range[1], 801)
    da, db = ap[1] - ap[0], bs[1] - bs[0]

    def grid_min(ap_grid, b_grid):
        aa, bb = np.meshgrid(ap_grid * np.pi, b_grid, indexing="ij")
        p = two_mode_p_min(m1, m2, aa, bb)
        i, j = np.unravel_index(np.argmin(p), p.shape)
        return ap_grid[i], b_grid[j], float(p[i, j])

    a0, b0, p0 = grid_min(ap, bs)
    for stage in range(7):
        span_a = 2.0 * da / 10**stage
        span_b = 2.0 * db / 10**stage
        ap_local = np.linspace(
            max(a0 - span_a, 1e-9), min(a0 + span_a, alpha_over_pi_max), 41
        )
        b_local = np.linspace(
            max(b0 - span_b, beta_range[0]), min(b0 + span_b, beta_range[1]), 41
        )
        a0, b0, p0 = grid_min(ap_local, b_local)
    return a0 * np.pi, b0, p0


def two_mode_curve(m1, m2, alpha_over_pi_grid, betas=(0.0, -0.25, -0.5, -0.75, -0.999)):
    """Rows (alpha/pi, beta, p_min) over an alpha grid for several beta values.

    The default beta set is a plotting choice.
    """
    rows = []
    for b in betas:
        bc, _ = canonicalize(b)
        for aop in alpha_over_pi_grid:
            rows.append((float(aop), float(b), float(two_mode_p_min(m1, m2, aop * np.pi, bc))))
    return rows
