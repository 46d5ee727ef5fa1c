"""Closed-form densities, distribution functions, and characteristic functions.

The chain, in the order the limiting argument builds it:

* standard Cauchy (median 0, quartile deviation 1),
* its square,
* the alpha = 1/2 stable law that the scaled sum of squares converges to,
* the half-normal law of the reciprocal square-root normalizer,
* the product of two independent standard Cauchys,
* the asymptotic law of the scaled centralized correlation, with the
  finite-sample correction factor a(n) = 1 - ln(pi)/ln(n).

Branch convention used throughout for complex CFs: the principal root
sqrt(-i t) = sqrt(|t|) * exp(-i pi/4 * sign t), which keeps |cf| <= 1.

Scalar functions raise SingularPointError exactly at non-removable singular
points (s = 0 of the product density, r = 0 of the correlation density) so
grid evaluators can skip them deliberately.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import cfnum, specfun
from .exceptions import DomainError, NotAvailableError, SingularPointError

__all__ = [
    "cauchy_pdf", "cauchy_cdf", "cauchy_cf",
    "cauchy_sq_pdf", "cauchy_sq_cdf", "cauchy_sq_cf",
    "sum_sq_limit_pdf", "sum_sq_limit_cdf", "sum_sq_limit_cf",
    "half_normal_pdf", "half_normal_cdf", "half_normal_pdf_unnormalized",
    "product_pdf", "product_cf",
    "CorrectionFactor", "correction_factor",
    "corr_limit_pdf", "corr_limit_cdf", "corr_limit_cf", "corr_limit_cdf_sorted",
    "ModelName", "DistributionModel", "make_model",
]

_PI = math.pi
_PI2 = math.pi ** 2


def _principal_root_neg_it(t: float) -> complex:
    """sqrt(-i t) on the principal branch: sqrt(|t|) e^{-i pi/4 sign t}."""
    r = math.sqrt(abs(t) / 2.0)
    return complex(r, -math.copysign(r, t))


# ---------------------------------------------------------------------------
# standard Cauchy
# ---------------------------------------------------------------------------

def cauchy_pdf(x: float) -> float:
    return 1.0 / (_PI * (1.0 + x * x))


def cauchy_cdf(x: float) -> float:
    return 0.5 + math.atan(x) / _PI


def cauchy_cf(t: float) -> float:
    return math.exp(-abs(t))


# ---------------------------------------------------------------------------
# square of a standard Cauchy
# ---------------------------------------------------------------------------

def cauchy_sq_pdf(z: float) -> float:
    if z <= 0.0:
        return 0.0
    return 1.0 / (_PI * math.sqrt(z) * (z + 1.0))


def cauchy_sq_cdf(z: float) -> float:
    if z <= 0.0:
        return 0.0
    return 2.0 / _PI * math.atan(math.sqrt(z))


def cauchy_sq_cf(t: float) -> complex:
    """exp(-i t) * [1 - erf(sqrt(-i t))]; equals 1 at t = 0, |cf| <= 1."""
    t = float(t)
    if t == 0.0:
        return 1.0 + 0.0j
    root = _principal_root_neg_it(t)
    return np.exp(-1j * t) * (1.0 - specfun.erf_complex(root))


# ---------------------------------------------------------------------------
# alpha = 1/2 stable limit of sum(X_i^2)/n^2
# ---------------------------------------------------------------------------

def sum_sq_limit_pdf(w: float) -> float:
    if w <= 0.0:
        return 0.0
    return math.exp(-1.0 / (_PI * w)) / (_PI * w ** 1.5)


def sum_sq_limit_cdf(w: float) -> float:
    if w <= 0.0:
        return 0.0
    return math.erfc(1.0 / math.sqrt(_PI * w))


def sum_sq_limit_cf(t: float) -> complex:
    """exp(-2 sqrt(-i t / pi)) with the principal root."""
    t = float(t)
    if t == 0.0:
        return 1.0 + 0.0j
    return np.exp(-2.0 * _principal_root_neg_it(t) / math.sqrt(_PI))


# ---------------------------------------------------------------------------
# half-normal limit of n / sqrt(sum X_i^2)
# ---------------------------------------------------------------------------

def half_normal_pdf(u: float) -> float:
    """(2/pi) exp(-u^2/pi) on u > 0 (the half-line normalization carries a 2)."""
    if u <= 0.0:
        return 0.0
    return 2.0 / _PI * math.exp(-u * u / _PI)


def half_normal_pdf_unnormalized(u: float) -> float:
    """Density kernel exp(-u^2/pi)/pi without the half-line factor 2.

    Integrates to 1/2, not 1.  Retained as a regression guard for the
    normalizing constant of ``half_normal_pdf``.
    """
    if u <= 0.0:
        return 0.0
    return math.exp(-u * u / _PI) / _PI


def half_normal_cdf(u: float) -> float:
    if u <= 0.0:
        return 0.0
    return math.erf(u / math.sqrt(_PI))


# ---------------------------------------------------------------------------
# product of two independent standard Cauchys
# ---------------------------------------------------------------------------

_PRODUCT_REMOVABLE_BAND = 1e-6


def product_pdf(s: float) -> float:
    """ln(s^2) / (pi^2 (s^2 - 1)); 1/pi^2 at s = +-1 (removable).

    Raises SingularPointError at s = 0, where the density has an integrable
    logarithmic singularity.
    """
    s = float(s)
    if s == 0.0:
        raise SingularPointError("product density has a logarithmic singularity at s = 0")
    y = s * s - 1.0
    if abs(y) < _PRODUCT_REMOVABLE_BAND:
        # ln(1+y)/y = 1 - y/2 + y^2/3 - ... keeps the removable point finite
        return (1.0 - y / 2.0 + y * y / 3.0) / _PI2
    return math.log(s * s) / (_PI2 * y)


def product_cf(t: float) -> float:
    """(2/pi)(sin|t| Ci|t| - cos|t| Si|t|) + cos|t|; even, real, 1 at t = 0."""
    t = abs(float(t))
    if t == 0.0:
        return 1.0
    si = specfun.sin_integral(t)
    ci = specfun.cos_integral(t)
    return 2.0 / _PI * (math.sin(t) * ci - math.cos(t) * si) + math.cos(t)


# ---------------------------------------------------------------------------
# finite-sample correction factor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorrectionFactor:
    """a(n) = 1 - ln(pi)/ln(n), the partial recovery of the 1/ln(n) error."""

    n: int
    a: float

    def __float__(self) -> float:
        return self.a


def correction_factor(n: int) -> CorrectionFactor:
    """Correction factor for sample size n; requires n >= 4 so that a > 0."""
    n = int(n)
    if n <= 3:
        raise DomainError(f"correction factor nonpositive or undefined for n = {n}")
    return CorrectionFactor(n=n, a=1.0 - math.log(_PI) / math.log(n))


def _as_a(a: float | CorrectionFactor) -> float:
    value = float(a)
    if not 0.0 < value <= 1.0:
        raise DomainError(f"correction factor must lie in (0, 1], got {value!r}")
    return value


# ---------------------------------------------------------------------------
# asymptotic law of the scaled centralized correlation
# ---------------------------------------------------------------------------

def corr_limit_pdf(r: float, a: float | CorrectionFactor = 1.0) -> float:
    """[2 ln(a + sqrt(a^2 + r^2)) - ln(r^2)] / (pi^2 sqrt(a^2 + r^2)).

    Even in r (ln r^2 is read as 2 ln|r|, which the symmetric CF forces).
    Raises SingularPointError at r = 0.
    """
    a = _as_a(a)
    r = float(r)
    if r == 0.0:
        raise SingularPointError("correlation-limit density has a logarithmic singularity at r = 0")
    h = math.hypot(a, abs(r))
    return (2.0 * math.log(a + h) - 2.0 * math.log(abs(r))) / (_PI2 * h)


def corr_limit_cf(t: float, a: float | CorrectionFactor = 1.0) -> float:
    """I0(a|t|) - L0(a|t|): real, even, 1 at t = 0, decaying like 2/(pi a t)."""
    a = _as_a(a)
    return specfun.i0_minus_l0(a * abs(float(t)))


def _corr_limit_pdf_abs(r: np.ndarray, a: float) -> np.ndarray:
    """Vectorized density at strictly positive |r| (no singular-point checks)."""
    h = np.hypot(a, r)
    return (2.0 * np.log(a + h) - 2.0 * np.log(r)) / (_PI2 * h)


def _half_mass_above(r: float, a: float, spec: cfnum.QuadratureSpec) -> float:
    """integral_0^r of the density; the log endpoint is mapped by r = e^{-v}."""
    if r <= 0.0:
        return 0.0

    def integrand(v: float) -> float:
        if v <= -30.0:
            # x = e^{-v} huge: the bracket collapses to 2a/x up to O(x^-3)
            return 2.0 * a * math.exp(v) / _PI2
        x = math.exp(-v)
        h = math.hypot(a, x)
        return (2.0 * math.log(a + h) + 2.0 * v) * x / (_PI2 * h)

    # beyond v = 60 the integrand is ~ v * e^{-v} < 1e-24: quadrature-exact zero
    result = cfnum.integrate(integrand, -math.log(r), 60.0, spec)
    return result.value


def corr_limit_cdf(
    r: float,
    a: float | CorrectionFactor = 1.0,
    spec: cfnum.QuadratureSpec = cfnum.DEFAULT_SPEC,
) -> float:
    """Distribution function by adaptive quadrature of the even density.

    The integral is split at 0 and the integrable log endpoint handled by
    the substitution r = e^{-v}; corr_limit_cdf(0) = 1/2 exactly.
    """
    a = _as_a(a)
    r = float(r)
    if r == 0.0:
        return 0.5
    half = _half_mass_above(abs(r), a, spec)
    return 0.5 + math.copysign(half, r)


def corr_limit_cdf_sorted(values: np.ndarray, a: float | CorrectionFactor = 1.0) -> np.ndarray:
    """Distribution function at an ascending array of points.

    Bulk path for goodness-of-fit over large samples: one quadrature anchors
    the smallest |value| on each side of 0, then cumulative Gauss-Legendre
    panels between consecutive points advance the CDF.  Agrees with
    corr_limit_cdf to well below 1e-9.
    """
    a = _as_a(a)
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0:
        raise DomainError("corr_limit_cdf_sorted expects a nonempty 1-d array")
    if np.any(np.diff(values) < 0.0):
        raise DomainError("corr_limit_cdf_sorted expects ascending values")
    out = np.empty_like(values)
    negatives = -values[values < 0.0][::-1]
    positives = values[values > 0.0]
    out[values == 0.0] = 0.5
    if negatives.size:
        out[: negatives.size] = (1.0 - _cumulative_cdf_positive(negatives, a))[::-1]
    if positives.size:
        out[values.size - positives.size:] = _cumulative_cdf_positive(positives, a)
    return out


_CUM_NODES, _CUM_WEIGHTS = np.polynomial.legendre.leggauss(8)


def _cumulative_cdf_positive(r_sorted: np.ndarray, a: float) -> np.ndarray:
    anchor = corr_limit_cdf(float(r_sorted[0]), a)
    if r_sorted.size == 1:
        return np.array([anchor])
    lo = r_sorted[:-1]
    hi = r_sorted[1:]
    mid = 0.5 * (lo + hi)[:, None]
    half = 0.5 * (hi - lo)[:, None]
    nodes = mid + half * _CUM_NODES[None, :]
    increments = half[:, 0] * (_corr_limit_pdf_abs(nodes, a) @ _CUM_WEIGHTS)
    return anchor + np.concatenate([[0.0], np.cumsum(increments)])


# ---------------------------------------------------------------------------
# uniform model interface
# ---------------------------------------------------------------------------

class ModelName(enum.Enum):
    CAUCHY_STD = "CauchyStd"
    CAUCHY_SQUARED = "CauchySquared"
    LIMIT_W = "LimitW"
    HALF_NORMAL_U = "HalfNormalU"
    PRODUCT_S = "ProductS"
    ASYMPTOTIC_RC = "AsymptoticRc"


_PDFS = {
    ModelName.CAUCHY_STD: lambda x: cauchy_pdf(x),
    ModelName.CAUCHY_SQUARED: lambda x: cauchy_sq_pdf(x),
    ModelName.LIMIT_W: lambda x: sum_sq_limit_pdf(x),
    ModelName.HALF_NORMAL_U: lambda x: half_normal_pdf(x),
    ModelName.PRODUCT_S: lambda x: product_pdf(x),
}

_CDFS = {
    ModelName.CAUCHY_STD: lambda x: cauchy_cdf(x),
    ModelName.CAUCHY_SQUARED: lambda x: cauchy_sq_cdf(x),
    ModelName.LIMIT_W: lambda x: sum_sq_limit_cdf(x),
    ModelName.HALF_NORMAL_U: lambda x: half_normal_cdf(x),
}

_CFS = {
    ModelName.CAUCHY_STD: lambda t: cauchy_cf(t),
    ModelName.CAUCHY_SQUARED: lambda t: cauchy_sq_cf(t),
    ModelName.LIMIT_W: lambda t: sum_sq_limit_cf(t),
    ModelName.PRODUCT_S: lambda t: product_cf(t),
}


@dataclass(frozen=True)
class DistributionModel:
    """A named closed-form distribution exposing pdf / cdf / cf.

    ``params`` is empty except for the correlation-limit model, which
    carries the correction factor a.  Instances are immutable and freely
    shareable across threads.
    """

    name: ModelName
    params: tuple[float, ...] = ()

    def _a(self) -> float:
        return self.params[0]

    @property
    def has_cdf(self) -> bool:
        return self.name is not ModelName.PRODUCT_S

    @property
    def has_cf(self) -> bool:
        return self.name is not ModelName.HALF_NORMAL_U

    def pdf(self, x: float) -> float:
        if self.name is ModelName.ASYMPTOTIC_RC:
            return corr_limit_pdf(x, self._a())
        return _PDFS[self.name](x)

    def cdf(self, x: float) -> float:
        if self.name is ModelName.ASYMPTOTIC_RC:
            return corr_limit_cdf(x, self._a())
        if self.name in _CDFS:
            return _CDFS[self.name](x)
        raise NotAvailableError(f"cdf not available for model {self.name.value}")

    def cf(self, t: float) -> float | complex:
        if self.name is ModelName.ASYMPTOTIC_RC:
            return corr_limit_cf(t, self._a())
        if self.name in _CFS:
            return _CFS[self.name](t)
        raise NotAvailableError(f"cf not available for model {self.name.value}")

    def label(self) -> str:
        if self.name is ModelName.ASYMPTOTIC_RC:
            return f"{self.name.value}(a={self._a():.6g})"
        return self.name.value


def make_model(
    name: str | ModelName,
    *,
    a: float | None = None,
    n: int | None = None,
) -> DistributionModel:
    """Build a model by name; AsymptoticRc requires either ``a`` or ``n``."""
    model_name = name if isinstance(name, ModelName) else ModelName(str(name))
    if model_name is ModelName.ASYMPTOTIC_RC:
        if a is not None and n is not None:
            raise DomainError("give either a or n for AsymptoticRc, not both")
        if a is None:
            if n is None:
                raise DomainError("AsymptoticRc requires a correction factor: pass a or n")
            a = float(correction_factor(n))
        return DistributionModel(model_name, (_as_a(a),))
    if a is not None or n is not None:
        raise DomainError(f"model {model_name.value} takes no parameters")
    return DistributionModel(model_name)
