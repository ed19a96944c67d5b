"""Binomial tail bounds: the Chernoff rate function and its standard chains.

For X binomial with mean lambda, the upper tail P(X >= E(X) + t) is at most
exp(-lambda * rate(t/lambda)) <= exp(-t^2 / (2(lambda + t/3))), and the lower
tail P(X <= E(X) - t) is at most exp(-lambda * rate(-t/lambda)) <=
exp(-t^2 / (2*lambda)), where rate(x) = (1+x)log(1+x) - x for x >= -1 and
+infinity below -1. The symmetric corollary bounds P(|X - E(X)| >= eps E(X))
by 2 exp(-rate(eps) E(X)), which simplifies to 2 exp(-eps^2 E(X) / 3) for
eps <= 3/2.

All outputs are clamped to [0, 1]: they bound probabilities, and the raw
expressions can exceed 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

_SMALL_X = 1e-4
SIMPLIFIED_EPS_MAX = 1.5


def chernoff_rate(x: float) -> float:
    """(1+x)log(1+x) - x, with the conventions rate(-1) = 1, rate(x<-1) = inf.

    Evaluated by series for |x| < 1e-4 to dodge the catastrophic cancellation
    of the direct form near 0 (the leading behavior is x^2/2).
    """
    if x < -1.0:
        return math.inf
    if x == -1.0:
        return 1.0  # 0*log(0) - (-1), with 0*log(0) = 0
    if abs(x) < _SMALL_X:
        return x * x / 2.0 - x**3 / 6.0 + x**4 / 12.0
    return (1.0 + x) * math.log1p(x) - x


def _clamp(p: float) -> float:
    return min(1.0, max(0.0, p))


@dataclass(frozen=True, slots=True)
class TailBound:
    """One tail's bounds: the rate-function form and both quadratic forms.

    ``rate_bound`` is exp(-lambda * rate(+-t/lambda)). ``quadratic_upper``
    is the upper-tail companion exp(-t^2/(2(lambda+t/3))) and
    ``quadratic_lower`` the lower-tail companion exp(-t^2/(2 lambda));
    the rate bound never exceeds the quadratic form on its matching side.
    """

    rate_bound: float
    quadratic_upper: float
    quadratic_lower: float


def _quadratics(lam: float, t: float) -> tuple[float, float]:
    q_upper = _clamp(math.exp(-(t * t) / (2.0 * (lam + t / 3.0))) if t > 0 else 1.0)
    q_lower = _clamp(math.exp(-(t * t) / (2.0 * lam)))
    return q_upper, q_lower


def _check_tail_args(lam: float, t: float) -> None:
    if lam <= 0:
        raise ValueError(f"mean must be positive, got {lam}")
    if t < 0:
        raise ValueError(f"deviation must be nonnegative, got {t}")


def chernoff_upper(lam: float, t: float) -> TailBound:
    """Bounds on the upper tail P(X >= E(X) + t) for mean lam, deviation t."""
    _check_tail_args(lam, t)
    rate = _clamp(math.exp(-lam * chernoff_rate(t / lam)))
    q_upper, q_lower = _quadratics(lam, t)
    return TailBound(rate, q_upper, q_lower)


def chernoff_lower(lam: float, t: float) -> TailBound:
    """Bounds on the lower tail P(X <= E(X) - t).

    For t > lam the rate argument drops below -1, the rate is infinite, and
    the bound is exactly 0: X cannot sit below a negative threshold.
    """
    _check_tail_args(lam, t)
    r = chernoff_rate(-t / lam)
    rate = 0.0 if math.isinf(r) else _clamp(math.exp(-lam * r))
    q_upper, q_lower = _quadratics(lam, t)
    return TailBound(rate, q_upper, q_lower)


@dataclass(frozen=True, slots=True)
class CorollaryBound:
    """Two-sided relative-deviation bounds; ``simplified`` only for eps <= 3/2."""

    general: float
    simplified: float | None


def corollary_bound(eps: float, mean: float) -> CorollaryBound:
    """Bound P(|X - E(X)| >= eps * E(X)) by 2 exp(-rate(eps) * E(X)).

    Also returns the simplified form 2 exp(-eps^2 E(X) / 3) when eps <= 3/2.
    Raw values above 1 are clamped at this API surface.
    """
    if eps <= 0:
        raise ValueError(f"relative deviation must be positive, got {eps}")
    if mean <= 0:
        raise ValueError(f"mean must be positive, got {mean}")
    general = _clamp(2.0 * math.exp(-chernoff_rate(eps) * mean))
    simplified: float | None = None
    if eps <= SIMPLIFIED_EPS_MAX:
        simplified = _clamp(2.0 * math.exp(-(eps * eps) * mean / 3.0))
    return CorollaryBound(general, simplified)
