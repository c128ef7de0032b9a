"""Robust gradient penalties and their half-quadratic machinery.

A penalty phi is a symmetric scalar function applied to image gradients.
Both families here admit a quadratic upper bound with fixed curvature c:

    phi(x) <= 0.5 * (sqrt(c) * x - mu / sqrt(c))**2 + remainder(mu)

with equality at the auxiliary value mu = c * x - phi'(x). Minimizing the
bound in u is a least-squares problem, which is what makes the smoother's
iterations closed-form. The bound holds whenever c is at least the family's
minimal curvature, i.e. whenever g(x) = c/2 * x**2 - phi(x) is convex.

Charbonnier penalty (p in (0, 1], eps > 0):

    value(x)      = (x**2 + eps)**(p/2)
    derivative(x) = p * x * (x**2 + eps)**(p/2 - 1)
    edge_stop(x)  = (p/2) * (x**2 + eps)**(p/2 - 1)
    min curvature = p * eps**(p/2 - 1)

Welsch penalty (gamma > 0):

    value(x)      = 2 * gamma**2 * (1 - exp(-x**2 / (2 * gamma**2)))
    derivative(x) = 2 * x * exp(-x**2 / (2 * gamma**2))
    edge_stop(x)  = exp(-x**2 / (2 * gamma**2))
    min curvature = 2

edge_stop is derivative(x) / (2 x) continuously extended through x = 0; it
decays on large gradients, which is what preserves edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import NumericalError

DEFAULT_EPS = 1e-4

# Relative slack on the c >= min_curvature check, so a c that round-tripped
# through text (CLI flags, configs) is not rejected over one ulp.
_CURVATURE_SLACK = 1e-12


@dataclass(frozen=True)
class Charbonnier:
    """Generalized Charbonnier penalty (x**2 + eps)**(p/2)."""

    p: float = 0.8
    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not (0.0 < self.p <= 1.0):
            raise ValueError("p must be in (0,1]")
        if not (self.eps > 0.0):
            raise ValueError(f"eps must be positive, got {self.eps}")

    def value(self, x):
        x = np.asarray(x, dtype=np.float64)
        return (x * x + self.eps) ** (self.p / 2.0)

    def derivative(self, x):
        x = np.asarray(x, dtype=np.float64)
        return self.p * x * (x * x + self.eps) ** (self.p / 2.0 - 1.0)

    def edge_stop(self, x):
        x = np.asarray(x, dtype=np.float64)
        return (self.p / 2.0) * (x * x + self.eps) ** (self.p / 2.0 - 1.0)

    @property
    def min_curvature(self) -> float:
        # Second derivative of the penalty is maximal at x = 0.
        return self.p * self.eps ** (self.p / 2.0 - 1.0)


@dataclass(frozen=True)
class Welsch:
    """Welsch penalty 2*gamma**2*(1 - exp(-x**2/(2 gamma**2))), bounded above."""

    gamma: float

    def __post_init__(self):
        if not (self.gamma > 0.0):
            raise ValueError(f"gamma must be positive, got {self.gamma}")

    def value(self, x):
        x = np.asarray(x, dtype=np.float64)
        g2 = self.gamma * self.gamma
        return 2.0 * g2 * (1.0 - np.exp(-x * x / (2.0 * g2)))

    def derivative(self, x):
        x = np.asarray(x, dtype=np.float64)
        g2 = self.gamma * self.gamma
        return 2.0 * x * np.exp(-x * x / (2.0 * g2))

    def edge_stop(self, x):
        x = np.asarray(x, dtype=np.float64)
        g2 = self.gamma * self.gamma
        return np.exp(-x * x / (2.0 * g2))

    @property
    def min_curvature(self) -> float:
        return 2.0


def _check_curvature(spec, c: float) -> None:
    c0 = spec.min_curvature
    if not np.isfinite(c) or c < c0 * (1.0 - _CURVATURE_SLACK):
        raise ValueError(
            f"curvature c={c} is below the minimum {c0} required for a "
            f"convex bound with {type(spec).__name__}"
        )


def aux_update(spec, c: float, x):
    """Optimal auxiliary variable of the quadratic bound at gradient value x.

    Returns c * x - derivative(x), elementwise. This is where the bound
    touches the penalty; it is also the derivative of g(x) = c/2 x^2 - phi(x),
    strictly increasing when c exceeds the minimal curvature.
    """
    _check_curvature(spec, c)
    x = np.asarray(x, dtype=np.float64)
    return c * x - spec.derivative(x)


def bound_remainder(spec, c: float, mu: float) -> float:
    """Additive remainder of the quadratic bound at auxiliary value mu.

    With g(x) = c/2 x^2 - value(x) and y the unique solution of g'(y) = mu,

        remainder(mu) = -mu^2 / (2 c) - g(y) + mu * y

    so that 0.5*(sqrt(c) x - mu/sqrt(c))^2 + remainder(mu) >= value(x) for
    every x, with equality at mu = aux_update(spec, c, x). Scalar-only; this
    is a verification oracle, not a hot path. The inversion of g' uses a
    bracketed root-find tightened to 1e-12.
    """
    _check_curvature(spec, c)
    mu = float(mu)

    def resid(y):
        return c * y - float(spec.derivative(y)) - mu

    center = mu / c
    step = max(1.0, abs(center))
    lo, hi = center - step, center + step
    for _ in range(64):
        if resid(lo) <= 0.0 <= resid(hi):
            break
        step *= 2.0
        lo, hi = center - step, center + step
    else:
        raise NumericalError(
            f"could not bracket the bound-remainder inversion at mu={mu}"
        )
    y, info = brentq(resid, lo, hi, xtol=1e-12, maxiter=200, full_output=True)
    if not info.converged:
        raise NumericalError(
            f"bound-remainder inversion did not converge at mu={mu}"
        )
    g_y = 0.5 * c * y * y - float(spec.value(y))
    return -mu * mu / (2.0 * c) - g_y + mu * y


def soft_threshold(x, alpha: float):
    """Shrink x toward zero by alpha, exact zero inside [-alpha, alpha].

    Minimizer of 0.5*(x - m)^2 + alpha*|m| over m; the closed form behind
    the L1 half of the splitting baseline.
    """
    if not (alpha >= 0.0 and np.isfinite(alpha)):
        raise ValueError(f"alpha must be finite and >= 0, got {alpha}")
    x = np.asarray(x, dtype=np.float64)
    return np.where(np.abs(x) <= alpha, 0.0, x - alpha * np.sign(x))


def huber(x, alpha: float):
    """Huber function: x^2/(2 alpha) inside [-alpha, alpha], |x| - alpha/2 outside.

    Equals min over m of (x - m)^2/(2 alpha) + |m|, attained at
    m = soft_threshold(x, alpha).
    """
    if not (alpha > 0.0 and np.isfinite(alpha)):
        raise ValueError(f"alpha must be finite and > 0, got {alpha}")
    x = np.asarray(x, dtype=np.float64)
    return np.where(
        np.abs(x) <= alpha, x * x / (2.0 * alpha), np.abs(x) - alpha / 2.0
    )
