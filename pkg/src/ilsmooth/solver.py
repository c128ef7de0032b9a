"""Periodic gradients and the closed-form least-squares step.

Each smoothing iteration solves

    (I + (c*lam/2) * (Dx^T Dx + Dy^T Dy)) u = f + (lam/2) * (Dx^T mx + Dy^T my)

where Dx, Dy are forward differences with periodic wrap. Both operators
diagonalize under the 2-D DFT, so the solve is two transforms and a
pointwise divide. dense_oracle_solve assembles the same normal equations
as an explicit matrix and factors it directly; it exists to cross-check
the spectral path and deliberately shares none of its code.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.fft as _sfft
import scipy.sparse as sp

from .errors import NumericalError

# FFTs go through these wrappers so tests can count transform calls.
def _fft2(a, workers: int = 1):
    return _sfft.fft2(a, workers=workers)


def _ifft2(a, workers: int = 1):
    return _sfft.ifft2(a, workers=workers)


def grad_x(u: np.ndarray) -> np.ndarray:
    """Forward difference along axis 1, wrapping at the right edge."""
    return np.roll(u, -1, axis=1) - u


def grad_y(u: np.ndarray) -> np.ndarray:
    """Forward difference along axis 0, wrapping at the bottom edge."""
    return np.roll(u, -1, axis=0) - u


def adjoint_accumulate(mu_x: np.ndarray, mu_y: np.ndarray) -> np.ndarray:
    """Sum of the adjoints of grad_x and grad_y applied to a field pair."""
    if mu_x.shape != mu_y.shape:
        raise ValueError(f"field shapes differ: {mu_x.shape} vs {mu_y.shape}")
    return (
        np.roll(mu_x, 1, axis=1) - mu_x + np.roll(mu_y, 1, axis=0) - mu_y
    )


@dataclass(frozen=True, eq=False)
class SolverPlan:
    """Precomputed per-(shape, lam, c) state for solve_ls.

    denom is the real spectral denominator; f_hat optionally caches the
    transform of the data term so repeated solves against the same f spend
    exactly one forward and one inverse FFT each.
    """

    height: int
    width: int
    lam: float
    c: float
    denom: np.ndarray
    f_hat: np.ndarray | None = None
    workers: int = 1

    def with_data(self, f: np.ndarray) -> "SolverPlan":
        """Return a copy of the plan with f's transform cached."""
        if f.shape != (self.height, self.width):
            raise ValueError(
                f"plan is {self.height}x{self.width}, data is {f.shape}"
            )
        return replace(self, f_hat=_fft2(f, self.workers))


def make_plan(
    height: int,
    width: int,
    lam: float,
    c: float,
    f: np.ndarray | None = None,
    workers: int = 1,
) -> SolverPlan:
    """Build the spectral denominator for the normal equations.

    The eigenvalues of D^T D for a periodic forward difference of length n
    are 2 - 2*cos(2*pi*k/n), k = 0..n-1, so the denominator is assembled
    analytically with no transforms of operator kernels.
    """
    if height < 1 or width < 1:
        raise ValueError(f"invalid plan size {height}x{width}")
    if not (lam > 0.0 and np.isfinite(lam)):
        raise ValueError(f"lam must be finite and positive, got {lam}")
    if not (c > 0.0 and np.isfinite(c)):
        raise ValueError(f"c must be finite and positive, got {c}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    wx = 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(width) / width)
    wy = 2.0 - 2.0 * np.cos(2.0 * np.pi * np.arange(height) / height)
    denom = 1.0 + (c * lam / 2.0) * (wy[:, None] + wx[None, :])
    plan = SolverPlan(height, width, lam, c, denom, None, workers)
    if f is not None:
        plan = plan.with_data(f)
    return plan


def solve_ls(
    plan: SolverPlan, f: np.ndarray, mu_x: np.ndarray, mu_y: np.ndarray
) -> np.ndarray:
    """Minimize sum (u-f)^2 + (lam/2) * sum_d (sqrt(c) grad_d u - mu_d/sqrt(c))^2.

    If plan.f_hat is set it must be the transform of this same f. The
    imaginary residue of the inverse transform is asserted tiny and
    discarded; real input guarantees a real solution.
    """
    shape = (plan.height, plan.width)
    for name, a in (("f", f), ("mu_x", mu_x), ("mu_y", mu_y)):
        if a.shape != shape:
            raise ValueError(
                f"{name} has shape {a.shape}, plan expects {shape}"
            )
        if not np.all(np.isfinite(a)):
            raise NumericalError(f"non-finite values in {name}")
    f_hat = plan.f_hat if plan.f_hat is not None else _fft2(f, plan.workers)
    rhs_hat = f_hat + (plan.lam / 2.0) * _fft2(
        adjoint_accumulate(mu_x, mu_y), plan.workers
    )
    u = _ifft2(rhs_hat / plan.denom, plan.workers)
    residue = float(np.max(np.abs(u.imag)))
    if not residue < 1e-8:
        raise NumericalError(f"imaginary residue {residue:g} exceeds 1e-8")
    return np.ascontiguousarray(u.real)


def periodic_difference_matrices(height: int, width: int):
    """Explicit sparse Dx, Dy acting on row-major raveled planes."""

    def cyclic_diff(n: int):
        rows = np.arange(n)
        shift = sp.csr_matrix(
            (np.ones(n), (rows, (rows + 1) % n)), shape=(n, n)
        )
        return shift - sp.identity(n, format="csr")

    dx = sp.kron(sp.identity(height, format="csr"), cyclic_diff(width), "csr")
    dy = sp.kron(cyclic_diff(height), sp.identity(width, format="csr"), "csr")
    return dx, dy


def dense_oracle_solve(
    f: np.ndarray, mu_x: np.ndarray, mu_y: np.ndarray, lam: float, c: float
) -> np.ndarray:
    """Solve the same normal equations by direct dense factorization.

    Independent of the spectral path: the operators are materialized as
    sparse matrices and the system is solved densely. Refuses planes over
    4096 pixels; this is a correctness oracle, not a production solver.
    """
    if f.shape != mu_x.shape or f.shape != mu_y.shape:
        raise ValueError(
            f"shapes differ: f {f.shape}, mu_x {mu_x.shape}, mu_y {mu_y.shape}"
        )
    h, w = f.shape
    n = h * w
    if n > 4096:
        raise ValueError(f"refusing a dense solve on {n} pixels (max 4096)")
    if not (lam > 0.0 and c > 0.0):
        raise ValueError(f"lam and c must be positive, got lam={lam} c={c}")
    dx, dy = periodic_difference_matrices(h, w)
    a = sp.identity(n, format="csr") + (c * lam / 2.0) * (
        dx.T @ dx + dy.T @ dy
    )
    rhs = f.ravel() + (lam / 2.0) * (
        dx.T @ mu_x.ravel() + dy.T @ mu_y.ravel()
    )
    u = np.linalg.solve(a.toarray(), rhs)
    return u.reshape(h, w)
