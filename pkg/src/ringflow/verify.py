"""Fast self-verification: oracles and invariants runnable from the CLI.

Each check is small enough to finish in seconds; the heavyweight golden
reproductions live in the test suite.
"""

from __future__ import annotations

import numpy as np

from .eigen import min_eigen
from .extrapolate import fit_quadratic
from .kernel import RingConfig, build_kernel, canonicalize, integrated_current
from .state import make_state, time_quadrature_p
from .twomode import minimize_two_mode, two_mode_p, two_mode_p_min


def _random_state(rng, n_modes):
    c = rng.standard_normal(n_modes) + 1j * rng.standard_normal(n_modes)
    return c / np.linalg.norm(c)


def check_canonicalize():
    assert canonicalize(0.0) == (0.0, 0)
    assert canonicalize(-0.5) == (-0.5, 0)
    beta, shift = canonicalize(1.75)
    assert shift == 2 and abs(beta + 0.25) < 1e-15
    return "beta canonicalization"


def check_kernel_entries():
    k = build_kernel(RingConfig(np.pi, 0.0, 4)).entries
    assert k[0, 0] == 0.0
    assert abs(k[0, 1]) < 1e-12
    assert abs(k[1, 1] - 2.0) < 1e-14
    k2 = build_kernel(RingConfig(np.pi / 2, -0.5, 2)).entries
    assert abs(k2[0, 0] - 0.5) < 1e-15
    return "kernel entries at reference points"


def check_kernel_symmetry():
    rng = np.random.default_rng(7)
    for _ in range(5):
        cfg = RingConfig(float(rng.uniform(0.1, 6)), float(rng.uniform(-0.99, 0)), 40)
        k = build_kernel(cfg).entries
        assert np.array_equal(k, k.T)
    return "kernel symmetry (bitwise)"


def check_single_mode_unboundedness():
    alpha, beta = 1.3, -0.25
    for m1 in (0, 10, 100):
        cfg = RingConfig(alpha, beta, max(m1, 1) + 1)
        kern = build_kernel(cfg)
        c = np.zeros(kern.size, dtype=complex)
        c[m1] = 1.0
        p = integrated_current(c, kern)
        assert abs(p - 2 * alpha * (m1 - beta) / np.pi) < 1e-12
    return "single-mode current 2*alpha*(m-beta)/pi"


def check_beta_shift_invariance():
    rng = np.random.default_rng(11)
    alpha, beta, n = 1.7, -0.4, 12
    c = _random_state(rng, n + 1)
    p0 = integrated_current(c, build_kernel(RingConfig(alpha, beta, n)))
    shifted = build_kernel(RingConfig(alpha, beta + 1.0, n + 1))
    # RingConfig canonicalizes, so rebuild the raw-beta kernel by hand
    m = np.arange(n + 2.0)
    s = m[:, None] + m[None, :] - 2.0 * (beta + 1.0)
    d = m[:, None] - m[None, :]
    from .kernel import sinc

    raw = (alpha / np.pi) * s * sinc(alpha * s * d)
    c_shift = np.concatenate([[0.0], c])
    p1 = (np.conj(c_shift) @ raw @ c_shift).real
    assert abs(p0 - p1) <= 1e-12 * max(1.0, abs(p0))
    assert shifted.config.beta_shift == 1
    return "beta -> beta + 1 index-shift invariance"


def check_quadrature_oracle():
    rng = np.random.default_rng(3)
    for _ in range(3):
        alpha = float(rng.uniform(0.3, 4.0))
        beta = float(rng.uniform(-0.9, 0.0))
        state = make_state(_random_state(rng, 8), alpha, beta)
        kern = build_kernel(RingConfig(alpha, beta, 7))
        p_form = integrated_current(state.coeffs, kern)
        p_quad = time_quadrature_p(state, 16385)
        assert abs(p_form - p_quad) < 1e-8
    return "quadratic form vs Simpson time quadrature"


def check_two_mode():
    assert abs(two_mode_p(0, 1, np.pi, 0.0, np.pi / 2, 0.0) - 1.0) < 1e-12
    res = minimize_two_mode(0, 1, np.pi, 0.0)
    assert abs(res.p_min) < 1e-12
    rng = np.random.default_rng(5)
    for _ in range(20):
        alpha = float(rng.uniform(0.1, 5.0))
        beta = float(rng.uniform(-0.99, 0.0))
        m1 = int(rng.integers(0, 4))
        m2 = m1 + int(rng.integers(1, 4))
        lhs = two_mode_p_min(m1, m2, alpha, beta)
        b = m2 - m1
        rhs = two_mode_p_min(0, 1, alpha * b * b, (beta - m1) / b) / b
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(lhs))
    return "two-mode closed form and scaling relation"


def check_zero_at_pi():
    res = min_eigen(build_kernel(RingConfig(np.pi, 0.0, 200)))
    assert abs(res.lambda_min) < 1e-12
    return "lambda_min = 0 at alpha = pi, beta = 0"


def check_fit_roundtrip():
    ns = [100, 200, 400, 800]
    fit = fit_quadratic([(n, 2.0 + 3.0 / n - 1.0 / n**2) for n in ns])
    assert abs(fit.a0 - 2) < 1e-10 and abs(fit.a1 - 3) < 1e-8 and abs(fit.a2 + 1) < 1e-6
    assert fit.residual < 1e-24
    return "quadratic fit recovers exact data"


ALL_CHECKS = [
    check_canonicalize,
    check_kernel_entries,
    check_kernel_symmetry,
    check_single_mode_unboundedness,
    check_beta_shift_invariance,
    check_quadrature_oracle,
    check_two_mode,
    check_zero_at_pi,
    check_fit_roundtrip,
]


def run_all(out=print) -> int:
    """Run every check; returns the number of failures."""
    failures = 0
    for check in ALL_CHECKS:
        try:
            label = check()
            out(f"PASS {label}")
        except Exception as exc:
            failures += 1
            out(f"FAIL {check.__name__}: {exc}")
    return failures
