"""Marginal distribution families: quantile transforms and exact moments.

Every family exposes a true (non-decreasing) quantile function on (0, 1),
the analytic CDF, and closed-form first/second moments.  Generators feed
uniform variates through ``quantile``; goodness-of-fit checks compare
samples against ``cdf``.

Quantiles are monotone by construction even where a distribution also has a
cheaper non-monotone uniform transform (e.g. ``cos(pi*u)`` for the arcsine
law): exactness of the joint-distribution mixture requires the generalized
inverse, and the two choices agree in distribution.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy import special

from .errors import ParameterDomainError, QuantileDomainError

__all__ = [
    "Marginal",
    "Uniform01",
    "Arcsine",
    "Exponential",
    "Weibull",
    "Erlang",
    "BetaPow",
    "BetaInt",
    "Gaussian",
    "marginal_from_config",
    "FAMILIES",
]


def _check_u(u):
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0.0) or np.any(arr >= 1.0):
        raise QuantileDomainError("quantile argument must lie strictly in (0, 1)")
    return arr


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ParameterDomainError(msg)


class Marginal(ABC):
    """A distribution family instance with finite positive variance."""

    family: str = ""

    @abstractmethod
    def _quantile(self, u: np.ndarray) -> np.ndarray:
        """Quantile on pre-validated u in (0, 1)."""

    @abstractmethod
    def cdf(self, x) -> np.ndarray | float:
        """Analytic CDF, vectorized."""

    @abstractmethod
    def mean_sd(self) -> tuple[float, float]:
        """Exact closed-form (mean, standard deviation)."""

    def quantile(self, u):
        """Generalized inverse CDF; raises if u is outside (0, 1)."""
        arr = _check_u(u)
        out = self._quantile(arr)
        return float(out) if np.isscalar(u) or np.ndim(u) == 0 else out

    @property
    def mean(self) -> float:
        return self.mean_sd()[0]

    @property
    def sd(self) -> float:
        return self.mean_sd()[1]

    @abstractmethod
    def params(self) -> dict:
        """Family-specific parameters, JSON-ready."""

    def to_config(self) -> dict:
        return {"family": self.family, **self.params()}


@dataclass(frozen=True)
class Uniform01(Marginal):
    """Uniform distribution on [0, 1]."""

    family = "uniform01"

    def _quantile(self, u):
        return u

    def cdf(self, x):
        return np.clip(np.asarray(x, dtype=float), 0.0, 1.0)

    def mean_sd(self):
        return 0.5, math.sqrt(1.0 / 12.0)

    def params(self):
        return {}


@dataclass(frozen=True)
class Arcsine(Marginal):
    """Arcsine law on [-1, 1], density 1 / (pi * sqrt(1 - x^2))."""

    family = "arcsine"

    def _quantile(self, u):
        return -np.cos(np.pi * u)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), -1.0, 1.0)
        return np.arccos(-x) / np.pi

    def mean_sd(self):
        return 0.0, math.sqrt(0.5)

    def params(self):
        return {}


@dataclass(frozen=True)
class Exponential(Marginal):
    """Exponential with rate lam, density lam * exp(-lam * x)."""

    lam: float = 1.0
    family = "exponential"

    def __post_init__(self):
        _require(self.lam > 0, f"exponential rate must be positive, got {self.lam}")

    def _quantile(self, u):
        return -np.log1p(-u) / self.lam

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-self.lam * x), 0.0)

    def mean_sd(self):
        return 1.0 / self.lam, 1.0 / self.lam

    def params(self):
        return {"lambda": self.lam}


@dataclass(frozen=True)
class Weibull(Marginal):
    """Weibull with shape k and unit scale, density k x^(k-1) exp(-x^k)."""

    k: float
    family = "weibull"

    def __post_init__(self):
        _require(self.k > 0, f"weibull shape must be positive, got {self.k}")

    def _quantile(self, u):
        return (-np.log1p(-u)) ** (1.0 / self.k)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return np.where(x > 0, -np.expm1(-(np.maximum(x, 0.0) ** self.k)), 0.0)

    def mean_sd(self):
        m = special.gamma(1.0 + 1.0 / self.k)
        var = special.gamma(1.0 + 2.0 / self.k) - m * m
        return float(m), float(math.sqrt(var))

    def params(self):
        return {"k": self.k}


@dataclass(frozen=True)
class Erlang(Marginal):
    """Erlang: Gamma with integer shape n and rate lam.

    Equals the sum of n independent Exponential(lam) variables, which is
    how pair and multivariate generators realize it.  The CDF uses the
    finite Poisson sum for the regularized incomplete gamma at integer
    shape; the quantile (used only for goodness-of-fit and diagnostics)
    inverts the regularized incomplete gamma.
    """

    n: int
    lam: float = 1.0
    family = "erlang"

    def __post_init__(self):
        _require(isinstance(self.n, int) and self.n >= 1, f"erlang shape must be a positive integer, got {self.n}")
        _require(self.lam > 0, f"erlang rate must be positive, got {self.lam}")

    def _quantile(self, u):
        return special.gammaincinv(self.n, u) / self.lam

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        t = self.lam * np.maximum(x, 0.0)
        # P(n, t) = 1 - exp(-t) * sum_{j<n} t^j / j!
        term = np.ones_like(t)
        acc = np.ones_like(t)
        for j in range(1, self.n):
            term = term * t / j
            acc += term
        return np.where(x > 0, 1.0 - np.exp(-t) * acc, 0.0)

    def mean_sd(self):
        return self.n / self.lam, math.sqrt(self.n) / self.lam

    def params(self):
        return {"n": self.n, "lambda": self.lam}


@dataclass(frozen=True)
class BetaPow(Marginal):
    """Beta(a, 1) on [0, 1], density a x^(a-1); sampled as U^(1/a)."""

    a: float
    family = "beta_pow"

    def __post_init__(self):
        _require(self.a > 0, f"beta_pow exponent must be positive, got {self.a}")

    def _quantile(self, u):
        return u ** (1.0 / self.a)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return x**self.a

    def mean_sd(self):
        a = self.a
        var = a / ((a + 2.0) * (a + 1.0) ** 2)
        return a / (a + 1.0), math.sqrt(var)

    def params(self):
        return {"a": self.a}


@dataclass(frozen=True)
class BetaInt(Marginal):
    """Beta(nu1, nu2) with positive integer shape parameters."""

    nu1: int
    nu2: int
    family = "beta_int"

    def __post_init__(self):
        for name, v in (("nu1", self.nu1), ("nu2", self.nu2)):
            _require(isinstance(v, int) and v >= 1, f"{name} must be a positive integer, got {v}")

    def _quantile(self, u):
        return special.betaincinv(self.nu1, self.nu2, u)

    def cdf(self, x):
        x = np.clip(np.asarray(x, dtype=float), 0.0, 1.0)
        return special.betainc(self.nu1, self.nu2, x)

    def mean_sd(self):
        s = self.nu1 + self.nu2
        var = self.nu1 * self.nu2 / (s * s * (s + 1.0))
        return self.nu1 / s, math.sqrt(var)

    def params(self):
        return {"nu1": self.nu1, "nu2": self.nu2}


@dataclass(frozen=True)
class Gaussian(Marginal):
    """Normal with mean mu and standard deviation sigma."""

    mu: float = 0.0
    sigma: float = 1.0
    family = "gaussian"

    def __post_init__(self):
        _require(self.sigma > 0, f"gaussian sigma must be positive, got {self.sigma}")

    def _quantile(self, u):
        return self.mu + self.sigma * special.ndtri(u)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return special.ndtr((x - self.mu) / self.sigma)

    def mean_sd(self):
        return self.mu, self.sigma

    def params(self):
        return {"mu": self.mu, "sigma": self.sigma}


FAMILIES: dict[str, type[Marginal]] = {
    "uniform01": Uniform01,
    "uniform": Uniform01,
    "arcsine": Arcsine,
    "exponential": Exponential,
    "weibull": Weibull,
    "erlang": Erlang,
    "beta_pow": BetaPow,
    "beta_int": BetaInt,
    "gaussian": Gaussian,
}

# JSON parameter key -> dataclass field (and required integrality)
_PARAM_SPECS: dict[str, list[tuple[str, str, bool]]] = {
    "uniform01": [],
    "arcsine": [],
    "exponential": [("lambda", "lam", False)],
    "weibull": [("k", "k", False)],
    "erlang": [("n", "n", True), ("lambda", "lam", False)],
    "beta_pow": [("a", "a", False)],
    "beta_int": [("nu1", "nu1", True), ("nu2", "nu2", True)],
    "gaussian": [("mu", "mu", False), ("sigma", "sigma", False)],
}


def marginal_from_config(spec: dict) -> Marginal:
    """Build a marginal from a ``{"family": ..., <params>}`` mapping."""
    if not isinstance(spec, dict) or "family" not in spec:
        raise ParameterDomainError("marginal spec must be a mapping with a 'family' key")
    name = str(spec["family"]).lower()
    if name not in FAMILIES:
        raise ParameterDomainError(f"unknown family {name!r}; known: {sorted(set(FAMILIES))}")
    cls = FAMILIES[name]
    kwargs = {}
    for key, field, integral in _PARAM_SPECS[cls.family]:
        if key in spec:
            raw = spec[key]
            if integral:
                if not float(raw).is_integer():
                    raise ParameterDomainError(f"parameter {key!r} of {name} must be an integer, got {raw}")
                kwargs[field] = int(raw)
            else:
                kwargs[field] = float(raw)
    known = {"family"} | {key for key, _, _ in _PARAM_SPECS[cls.family]}
    extra = set(spec) - known
    if extra:
        raise ParameterDomainError(f"unknown parameter(s) for {name}: {sorted(extra)}")
    try:
        return cls(**kwargs)
    except TypeError as exc:  # missing required parameter
        raise ParameterDomainError(f"bad parameters for {name}: {exc}") from exc
