"""Smallest eigenpair of a truncated backflow kernel.

Two paths: a dense symmetric solver (LAPACK, the workhorse for N up to a few
thousand) and an iterative Lanczos path (ARPACK, smallest-algebraic mode) for
larger truncations.  Both certify the result by an explicit residual instead
of trusting backend defaults.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .kernel import BackflowKernel

# Dense above this size gets slow and memory-hungry; switch to Lanczos.
_AUTO_ITERATIVE_THRESHOLD = 4000

_RESIDUAL_FACTOR = 1e-10


class EigenSolveError(RuntimeError):
    """Eigensolver failed to produce a certified smallest eigenpair."""


@dataclass(frozen=True)
class EigenResult:
    lambda_min: float
    eigenvector: np.ndarray
    n_trunc: int
    residual_norm: float
    method: str
    iterations: int | None = None

    def to_record(self) -> dict:
        return {
            "lambda_min": self.lambda_min,
            "n_trunc": self.n_trunc,
            "residual_norm": self.residual_norm,
            "method": self.method,
            "iterations": self.iterations,
        }


def _sign_normalize(v: np.ndarray) -> np.ndarray:
    for x in v:
        if abs(x) > 1e-12:
            if x < 0:
                v = -v
            break
    return v


def min_eigen(kernel: BackflowKernel, method: str = "auto") -> EigenResult:
    """Smallest eigenvalue and eigenvector of the kernel.

    method: "dense", "iterative", or "auto" (dense up to N = 4000).
    The eigenvector is unit-norm with its first nonzero component positive.
    """
    if method == "auto":
        method = "dense" if kernel.size <= _AUTO_ITERATIVE_THRESHOLD else "iterative"
    if method not in ("dense", "iterative"):
        raise ValueError(f"unknown method {method!r}")

    k = kernel.entries
    iterations = None
    if method == "dense":
        vals, vecs = scipy.linalg.eigh(k, subset_by_index=(0, 0))
        lam = float(vals[0])
        vec = vecs[:, 0]
    else:
        n = kernel.size
        v0 = np.full(n, 1.0 / np.sqrt(n))
        try:
            vals, vecs = scipy.sparse.linalg.eigsh(
                k, k=1, which="SA", v0=v0, maxiter=50 * n
            )
        except scipy.sparse.linalg.ArpackNoConvergence as exc:
            raise EigenSolveError(
                f"Lanczos did not converge at N={kernel.config.n_trunc}: {exc}; "
                "fall back to method='dense'"
            ) from exc
        lam = float(vals[0])
        vec = vecs[:, 0]
        iterations = -1  # ARPACK does not expose its iteration count

    vec = _sign_normalize(np.ascontiguousarray(vec))
    vec = vec / np.linalg.norm(vec)
    residual = float(np.linalg.norm(k @ vec - lam * vec))
    scale = float(np.max(np.abs(kernel.diagonal()))) or 1.0
    if residual > _RESIDUAL_FACTOR * scale:
        raise EigenSolveError(
            f"residual {residual:.3e} exceeds {_RESIDUAL_FACTOR:.0e} * {scale:.3e} "
            f"(method={method}, N={kernel.config.n_trunc})"
        )
    vec.setflags(write=False)
    return EigenResult(
        lambda_min=lam,
        eigenvector=vec,
        n_trunc=kernel.config.n_trunc,
        residual_norm=residual,
        method=method,
        iterations=iterations,
    )
