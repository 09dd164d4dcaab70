"""Attainable correlation ranges for marginal pairs.

The maximum (minimum) correlation between marginals F and G is reached by
the comonotone (countermonotone) coupling, and equals the normalized cross
moment

    c(F, G; coupling) = (E[F^{-1}(U) G^{-1}(U')] - m_F m_G) / (sigma_F sigma_G)

with U' = U for the shared-source coupling and U' = 1 - U for the
antithetic one.  Closed forms exist for several families; everything else
is handled by adaptive quadrature of the quantile product on (0, 1).

Erlang pairs with a common shape are special: generators realize them as
sums of coupled exponential pairs, so their attainable range is the
exponential one, [1 - pi^2/6, 1], independent of shape and rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NumericalAccuracyError, ParameterDomainError
from .marginals import Arcsine, BetaPow, Erlang, Exponential, Gaussian, Marginal, Uniform01

__all__ = [
    "EXP_MIN_CORR",
    "CorrRange",
    "c_coeff",
    "corr_range",
    "beta_recip_min_corr",
    "exp_min_corr_series",
    "reciprocal_binomial_sum",
    "adaptive_unit_integral",
]

# Minimum correlation attainable by a coupled exponential (hence Erlang) pair.
EXP_MIN_CORR = 1.0 - math.pi**2 / 6.0

_COUPLINGS = ("same_source", "antithetic", "independent")

QUAD_TOL = 1e-10
QUAD_MAX_DEPTH = 60

_GL_LO = np.polynomial.legendre.leggauss(7)
_GL_HI = np.polynomial.legendre.leggauss(15)

# Deep panels hugging an endpoint can round their nodes onto 0.0 or 1.0,
# where singular integrands produce inf/nan; nodes are clipped just inside.
_U_LO = np.finfo(float).tiny
_U_HI = np.nextafter(1.0, 0.0)


@dataclass(frozen=True)
class CorrRange:
    """Attainable correlation interval [rho_min, rho_max] for a pair."""

    rho_min: float
    rho_max: float
    method: str  # closed_form | quadrature | monte_carlo
    abs_error_bound: float = 0.0

    def __post_init__(self):
        if not (-1.0 <= self.rho_min < 0.0 < self.rho_max <= 1.0):
            raise ValueError(
                f"invalid correlation range [{self.rho_min}, {self.rho_max}]; "
                "expected -1 <= rho_min < 0 < rho_max <= 1"
            )

    def contains(self, rho: float, tol: float = 1e-12) -> bool:
        return self.rho_min - tol <= rho <= self.rho_max + tol

    def to_dict(self) -> dict:
        return {
            "rho_min": self.rho_min,
            "rho_max": self.rho_max,
            "method": self.method,
            "abs_error_bound": self.abs_error_bound,
        }


def adaptive_unit_integral(func, tol: float = QUAD_TOL, max_depth: int = QUAD_MAX_DEPTH):
    """Integrate ``func`` over (0, 1) by adaptive Gauss-Legendre bisection.

    ``func`` must accept an ndarray of interior points, so integrable
    endpoint singularities (log-type blowup of quantile products) are never
    evaluated at 0 or 1.  Each panel gets an error budget proportional to
    its width; panels failing the budget are bisected, which concentrates
    dyadic subdivision around the endpoints, up to ``max_depth`` levels.

    Returns ``(value, error_bound)``.  Raises NumericalAccuracyError if the
    accumulated error bound exceeds ``tol`` after full refinement.
    """
    xs_lo, ws_lo = _GL_LO
    xs_hi, ws_hi = _GL_HI
    total = 0.0
    err_total = 0.0
    stack = [(0.0, 1.0, 0)]
    while stack:
        a, b, depth = stack.pop()
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        hi = half * float(np.dot(ws_hi, func(np.clip(mid + half * xs_hi, _U_LO, _U_HI))))
        lo = half * float(np.dot(ws_lo, func(np.clip(mid + half * xs_lo, _U_LO, _U_HI))))
        err = abs(hi - lo)
        if err <= tol * (b - a) or depth >= max_depth:
            total += hi
            err_total += err
        else:
            stack.append((a, mid, depth + 1))
            stack.append((mid, b, depth + 1))
    if not math.isfinite(total) or err_total > tol:
        raise NumericalAccuracyError(
            f"quadrature did not converge to {tol:g} (error bound {err_total:g})",
            estimate=total,
            error_bound=err_total,
        )
    return total, err_total


def _moments(m: Marginal) -> tuple[float, float]:
    mean, sd = m.mean_sd()
    return mean, sd


def _quantile_product_c(f: Marginal, g: Marginal, antithetic: bool):
    """Normalized cross moment of the quantile coupling, by quadrature."""
    mf, sf = _moments(f)
    mg, sg = _moments(g)
    if antithetic:
        integrand = lambda u: f._quantile(u) * g._quantile(1.0 - u)
    else:
        integrand = lambda u: f._quantile(u) * g._quantile(u)
    try:
        raw, raw_err = adaptive_unit_integral(integrand)
    except NumericalAccuracyError as exc:
        value = (exc.estimate - mf * mg) / (sf * sg)
        raise NumericalAccuracyError(
            str(exc), estimate=value, error_bound=exc.error_bound / (sf * sg)
        ) from None
    return (raw - mf * mg) / (sf * sg), raw_err / (sf * sg)


def _is_symmetric_linear(m: Marginal) -> bool:
    """Families whose quantile satisfies q(1-u) = const - q(u)."""
    return isinstance(m, (Uniform01, Arcsine, Gaussian))


def _comonotone_one(f: Marginal, g: Marginal) -> bool:
    """True when G^{-1} is a positive linear transform of F^{-1}."""
    if type(f) is not type(g):
        return False
    if isinstance(f, (Uniform01, Arcsine, Gaussian, Exponential)):
        return True
    if isinstance(f, Erlang):
        return f.n == g.n
    return f == g


def _closed_antithetic(f: Marginal, g: Marginal) -> float | None:
    if type(f) is not type(g):
        return None
    if _is_symmetric_linear(f):
        return -1.0
    if isinstance(f, Exponential):
        return EXP_MIN_CORR
    if isinstance(f, Erlang) and f.n == g.n:
        return EXP_MIN_CORR
    if isinstance(f, BetaPow) and f.a == g.a:
        inv = 1.0 / f.a
        n = round(inv)
        if n >= 1 and abs(inv - n) <= 1e-12:
            return beta_recip_min_corr(n)
    return None


def c_coeff(f: Marginal, g: Marginal, coupling: str) -> float:
    """Normalized cross-moment coefficient of a coupled pair.

    ``same_source`` couples both quantiles to one uniform (value 1 for any
    pair related by a positive linear transform), ``antithetic`` couples
    them to complementary uniforms, and ``independent`` is exactly 0.
    """
    if coupling not in _COUPLINGS:
        raise ValueError(f"coupling must be one of {_COUPLINGS}, got {coupling!r}")
    if coupling == "independent":
        return 0.0
    if coupling == "same_source":
        if _comonotone_one(f, g):
            return 1.0
        value, _ = _quantile_product_c(f, g, antithetic=False)
        return min(value, 1.0)
    closed = _closed_antithetic(f, g)
    if closed is not None:
        return closed
    value, _ = _quantile_product_c(f, g, antithetic=True)
    return max(value, -1.0)


def corr_range(f: Marginal, g: Marginal) -> CorrRange:
    """Attainable correlation interval for marginals ``f`` and ``g``."""
    err = 0.0
    quadrature_used = False

    if _comonotone_one(f, g):
        rho_max = 1.0
    else:
        rho_max, e = _quantile_product_c(f, g, antithetic=False)
        rho_max = min(rho_max, 1.0)
        err = max(err, e)
        quadrature_used = True

    closed_min = _closed_antithetic(f, g)
    if closed_min is not None:
        rho_min = closed_min
    else:
        rho_min, e = _quantile_product_c(f, g, antithetic=True)
        rho_min = max(rho_min, -1.0)
        err = max(err, e)
        quadrature_used = True

    method = "quadrature" if quadrature_used else "closed_form"
    return CorrRange(rho_min=rho_min, rho_max=rho_max, method=method, abs_error_bound=err)


def beta_recip_min_corr(n: int) -> float:
    """Exact minimum correlation for a Beta(1/n, 1) pair, integer n >= 1.

    Evaluates ((n+1)!^2 - (2n+1)!) / (n^2 (2n)!) with exact integer
    arithmetic, so the value stays finite and correctly rounded far past
    n = 50 where naive floating-point factorials overflow.
    """
    if not isinstance(n, int) or n < 1:
        raise ParameterDomainError(f"n must be a positive integer, got {n}")
    num = math.factorial(n + 1) ** 2 - math.factorial(2 * n + 1)
    den = n * n * math.factorial(2 * n)
    return num / den


def exp_min_corr_series(terms: int) -> float:
    """Partial sum of sum_i 1/(i (i+1)^2), which converges to 2 - pi^2/6."""
    if terms < 1:
        raise ParameterDomainError(f"terms must be >= 1, got {terms}")
    i = np.arange(1, terms + 1, dtype=float)
    return float(np.sum(1.0 / (i * (i + 1.0) ** 2)))


def reciprocal_binomial_sum(n: int, terms: int) -> float:
    """Partial sum of sum_k 1/C(n+k, k), which converges to n/(n-1)."""
    if n < 2:
        raise ParameterDomainError(f"n must be >= 2, got {n}")
    if terms < 1:
        raise ParameterDomainError(f"terms must be >= 1, got {terms}")
    return sum(1.0 / math.comb(n + k, k) for k in range(terms))
