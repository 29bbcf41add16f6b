"""Closed-form coefficient and delay profiles with certified bounds.

Stability tests for delay equations consume a handful of scalar quantities of
the coefficient functions: essential sup/inf over ``[t0, inf)``, exact
antiderivatives, the supremum of moving-window integrals ``sup_t
int_{h(t)}^t f``, and sup norms of ratios ``||f/g||``.  Every profile here is
closed form, so these quantities are computed exactly wherever a formula
exists and by dense sampling otherwise.  Results are returned as
:class:`BoundCertificate` values that record whether the number is exact, and
whether it is a one-sided (conservative) bound.

Conservatism is always one-sided in the safe direction for sup-type queries:
a returned bound is an upper bound on the true supremum, and sampled suprema
(which can only undershoot) are flagged ``exact=False`` so callers can refuse
to certify razor-thin margins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Constant",
    "Sinusoid",
    "PiecewisePeriodic",
    "Reciprocal",
    "Coefficient",
    "ConstantLag",
    "Proportional",
    "SinusoidLag",
    "Delay",
    "BoundCertificate",
    "sup_norm",
    "inf_bound",
    "integral",
    "sup_window_integral",
    "inf_window_integral",
    "ratio_sup_norm",
]

# Default sampling budget for quantities without a closed form.
SAMPLE_COUNT = 100_000
UNBOUNDED_HORIZON = 2500.0


@dataclass(frozen=True)
class BoundCertificate:
    """A scalar bound plus provenance.

    ``exact`` means the value is the true supremum/infimum up to roundoff.
    ``conservative`` marks certified one-sided bounds (still safe to use on
    the large side of a "<" test).  Sampled values carry the grid horizon and
    sample count used.
    """

    value: float
    exact: bool = True
    conservative: bool = False
    horizon: float | None = None
    samples: int | None = None


def _cert(value, exact=True, conservative=False, horizon=None, samples=None):
    return BoundCertificate(float(value), exact, conservative, horizon, samples)


# ---------------------------------------------------------------------------
# coefficient profiles


@dataclass(frozen=True)
class Constant:
    c: float

    def __call__(self, t):
        if np.ndim(t):
            return np.full(np.shape(t), float(self.c))
        return float(self.c)

    def antiderivative(self, t):
        return self.c * np.asarray(t, dtype=float) if np.ndim(t) else self.c * t

    def mean_level(self):
        return self.c

    def is_constant(self):
        return True


@dataclass(frozen=True)
class Sinusoid:
    """``f(t) = c + amp * sin(omega t + phase)``."""

    c: float
    amp: float
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        if self.amp != 0.0 and self.omega == 0.0:
            raise ValueError("Sinusoid with amp != 0 requires omega != 0")

    def __call__(self, t):
        if self.amp == 0.0:
            return Constant(self.c)(t)
        return self.c + self.amp * np.sin(self.omega * t + self.phase)

    def antiderivative(self, t):
        if self.amp == 0.0:
            return self.c * t
        return self.c * t - (self.amp / self.omega) * np.cos(self.omega * t + self.phase)

    def mean_level(self):
        return self.c

    def is_constant(self):
        return self.amp == 0.0


@dataclass(frozen=True)
class PiecewisePeriodic:
    """Periodic step function, right-continuous at breakpoints.

    ``breaks`` are offsets in ``[0, period)`` starting at 0; ``values[j]``
    holds on ``[breaks[j], breaks[j+1])`` within each period.
    """

    period: float
    breaks: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "breaks", tuple(float(b) for b in self.breaks))
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if self.period <= 0:
            raise ValueError("period must be positive")
        if len(self.breaks) != len(self.values) or not self.breaks:
            raise ValueError("breaks and values must have equal nonzero length")
        if self.breaks[0] != 0.0:
            raise ValueError("first break must be 0")
        if any(b2 <= b1 for b1, b2 in zip(self.breaks, self.breaks[1:])):
            raise ValueError("breaks must be strictly increasing")
        if self.breaks[-1] >= self.period:
            raise ValueError("breaks must lie inside [0, period)")

    def _piece_index(self, u):
        return np.searchsorted(np.asarray(self.breaks), u, side="right") - 1

    def __call__(self, t):
        u = np.mod(t, self.period)
        idx = self._piece_index(u)
        vals = np.asarray(self.values)[idx]
        return vals if np.ndim(t) else float(vals)

    def _cumulative(self):
        # integral of one period up to each break, plus the period total
        edges = self.breaks + (self.period,)
        widths = [b2 - b1 for b1, b2 in zip(edges, edges[1:])]
        cum = [0.0]
        for w, v in zip(widths, self.values):
            cum.append(cum[-1] + w * v)
        return np.asarray(cum[:-1]), cum[-1]

    def antiderivative(self, t):
        cum, total = self._cumulative()
        t = np.asarray(t, dtype=float)
        n = np.floor(t / self.period)
        u = t - n * self.period
        idx = self._piece_index(u)
        part = cum[idx] + np.asarray(self.values)[idx] * (u - np.asarray(self.breaks)[idx])
        out = n * total + part
        return out if out.ndim else float(out)

    def mean_level(self):
        _, total = self._cumulative()
        return total / self.period

    def is_constant(self):
        return len(set(self.values)) == 1


@dataclass(frozen=True)
class Reciprocal:
    """``f(t) = c / t``, defined for ``t > 0``."""

    c: float

    def __call__(self, t):
        t = np.asarray(t, dtype=float) if np.ndim(t) else t
        return self.c / t

    def antiderivative(self, t):
        t_arr = np.asarray(t, dtype=float)
        if np.any(t_arr <= 0.0):
            raise ValueError("Reciprocal profile is defined only for t > 0")
        out = self.c * np.log(t_arr)
        return out if out.ndim else float(out)

    def mean_level(self):
        return None

    def is_constant(self):
        return False


Coefficient = Constant | Sinusoid | PiecewisePeriodic | Reciprocal


# ---------------------------------------------------------------------------
# delay profiles


@dataclass(frozen=True)
class ConstantLag:
    tau: float

    def __post_init__(self):
        if self.tau < 0:
            raise ValueError("lag must be nonnegative")

    def position(self, t):
        return t - self.tau

    def lag(self, t):
        if np.ndim(t):
            return np.full(np.shape(t), float(self.tau))
        return float(self.tau)

    def lag_bounds(self, t0):
        return self.tau, self.tau

    @property
    def bounded(self):
        return True


@dataclass(frozen=True)
class Proportional:
    """``g(t) = lam * t`` with ``lam in (0, 1)``; the lag grows without bound."""

    lam: float

    def __post_init__(self):
        if not 0.0 < self.lam < 1.0:
            raise ValueError("proportional factor must lie in (0, 1)")

    def position(self, t):
        return self.lam * t

    def lag(self, t):
        return (1.0 - self.lam) * t

    def lag_bounds(self, t0):
        return (1.0 - self.lam) * t0, math.inf

    @property
    def bounded(self):
        return False


@dataclass(frozen=True)
class SinusoidLag:
    """``g(t) = t - (tau + amp * sin(omega t))``; requires ``tau >= |amp|``."""

    tau: float
    amp: float
    omega: float

    def __post_init__(self):
        if self.tau - abs(self.amp) < 0:
            raise ValueError("oscillating lag must stay nonnegative (tau >= |amp|)")
        if self.amp != 0.0 and self.omega == 0.0:
            raise ValueError("SinusoidLag with amp != 0 requires omega != 0")

    def position(self, t):
        return t - self.lag(t)

    def lag(self, t):
        return self.tau + self.amp * np.sin(self.omega * t)

    def lag_bounds(self, t0):
        return self.tau - abs(self.amp), self.tau + abs(self.amp)

    @property
    def bounded(self):
        return True


Delay = ConstantLag | Proportional | SinusoidLag


# ---------------------------------------------------------------------------
# certified scalar queries


def sup_norm(f: Coefficient, t0: float) -> BoundCertificate:
    """Essential supremum of ``|f|`` over ``[t0, inf)``.  Exact for all profiles."""
    if isinstance(f, Constant):
        return _cert(abs(f.c))
    if isinstance(f, Sinusoid):
        return _cert(abs(f.c) + abs(f.amp))
    if isinstance(f, PiecewisePeriodic):
        return _cert(max(abs(v) for v in f.values))
    if isinstance(f, Reciprocal):
        if t0 <= 0:
            raise ValueError("Reciprocal profile needs t0 > 0")
        return _cert(abs(f.c) / t0)
    raise TypeError(f"not a coefficient profile: {f!r}")


def inf_bound(f: Coefficient, t0: float) -> BoundCertificate:
    """Essential infimum of ``f`` (signed) over ``[t0, inf)``."""
    if isinstance(f, Constant):
        return _cert(f.c)
    if isinstance(f, Sinusoid):
        return _cert(f.c - abs(f.amp))
    if isinstance(f, PiecewisePeriodic):
        return _cert(min(f.values))
    if isinstance(f, Reciprocal):
        if t0 <= 0:
            raise ValueError("Reciprocal profile needs t0 > 0")
        # c/t decreases to 0 for c > 0 and increases to 0 for c < 0
        return _cert(0.0 if f.c >= 0 else f.c / t0)
    raise TypeError(f"not a coefficient profile: {f!r}")


def _inf_abs(f: Coefficient, t0: float) -> BoundCertificate:
    """Essential infimum of ``|f|``; used for denominators."""
    if isinstance(f, Constant):
        return _cert(abs(f.c))
    if isinstance(f, Sinusoid):
        return _cert(max(abs(f.c) - abs(f.amp), 0.0))
    if isinstance(f, PiecewisePeriodic):
        return _cert(min(abs(v) for v in f.values))
    if isinstance(f, Reciprocal):
        return _cert(0.0)
    raise TypeError(f"not a coefficient profile: {f!r}")


def integral(f: Coefficient, t_from: float, t_to: float) -> float:
    """Exact ``int_{t_from}^{t_to} f(s) ds`` from the antiderivative."""
    return float(f.antiderivative(t_to) - f.antiderivative(t_from))


def diverges(f: Coefficient) -> bool:
    """Whether ``int^inf f = +inf`` (for profiles that are >= 0)."""
    if isinstance(f, Reciprocal):
        return f.c > 0
    mean = f.mean_level()
    return mean is not None and mean > 0


def nonzero_ae(f: Coefficient) -> bool:
    if isinstance(f, Constant):
        return f.c != 0
    if isinstance(f, Sinusoid):
        return f.c != 0 or f.amp != 0
    if isinstance(f, PiecewisePeriodic):
        return all(v != 0 for v in f.values)
    if isinstance(f, Reciprocal):
        return f.c != 0
    raise TypeError(f"not a coefficient profile: {f!r}")


def _window_grid(f, h, t0, horizon, samples, reduce_fn):
    sup_lag = h.lag_bounds(t0)[1]
    if horizon is None:
        horizon = 50.0 * sup_lag if math.isfinite(sup_lag) and sup_lag > 0 else UNBOUNDED_HORIZON
        horizon = max(horizon, 1.0)
    ts = np.linspace(t0, t0 + horizon, samples)
    lo = h.position(ts)
    if isinstance(f, Reciprocal) and np.any(lo <= 0):
        raise ValueError("window extends to t <= 0 for a Reciprocal profile")
    vals = f.antiderivative(ts) - f.antiderivative(lo)
    return float(reduce_fn(vals)), horizon


def sup_window_integral(
    f: Coefficient,
    h: Delay,
    t0: float,
    horizon: float | None = None,
    samples: int = SAMPLE_COUNT,
) -> BoundCertificate:
    """``sup_{t >= t0} int_{h(t)}^t f(s) ds`` for nonnegative ``f``.

    Exact for (Constant, ConstantLag), (Constant, SinusoidLag) and
    (Reciprocal, Proportional); combinations whose windows grow without bound
    return ``inf`` exactly; everything else is sampled on a dense grid (a
    sampled supremum can only undershoot, hence ``exact=False``).
    """
    if inf_bound(f, t0).value < 0:
        raise ValueError("window integral requires f >= 0 on [t0, inf)")
    if isinstance(h, ConstantLag):
        if isinstance(f, Constant):
            return _cert(f.c * h.tau)
    if isinstance(h, SinusoidLag) and isinstance(f, Constant):
        return _cert(f.c * (h.tau + abs(h.amp)))
    if isinstance(h, Proportional):
        if isinstance(f, Reciprocal):
            return _cert(f.c * math.log(1.0 / h.lam))
        # nonnegative with positive mean over ever-growing windows
        return _cert(math.inf if diverges(f) else 0.0)
    val, used = _window_grid(f, h, t0, horizon, samples, np.max)
    return _cert(val, exact=False, horizon=used, samples=samples)


def inf_window_integral(
    f: Coefficient,
    h: Delay,
    t0: float,
    horizon: float | None = None,
    samples: int = SAMPLE_COUNT,
) -> BoundCertificate:
    """``inf_{t >= t0} int_{h(t)}^t f(s) ds``; mirror of the sup query."""
    if inf_bound(f, t0).value < 0:
        raise ValueError("window integral requires f >= 0 on [t0, inf)")
    if isinstance(h, ConstantLag) and isinstance(f, Constant):
        return _cert(f.c * h.tau)
    if isinstance(h, SinusoidLag) and isinstance(f, Constant):
        return _cert(f.c * (h.tau - abs(h.amp)))
    if isinstance(h, Proportional) and isinstance(f, Reciprocal):
        return _cert(f.c * math.log(1.0 / h.lam))
    val, used = _window_grid(f, h, t0, horizon, samples, np.min)
    return _cert(val, exact=False, horizon=used, samples=samples)


def ratio_sup_norm(num: Coefficient, den: Coefficient, t0: float) -> BoundCertificate:
    """``sup_{t >= t0} |num(t) / den(t)|``.

    Exact when both are Constant, both Reciprocal, or both Sinusoid sharing
    frequency and phase with a nonvanishing denominator (the ratio is then a
    Moebius function of ``sin``, so its extrema sit at the endpoints).  A
    Reciprocal over a Constant peaks at ``t0``.  Otherwise the certified
    upper bound ``sup|num| / inf|den|`` is returned with
    ``conservative=True``; a vanishing denominator bound raises.
    """
    if isinstance(num, Constant) and isinstance(den, Constant):
        if den.c == 0:
            raise ValueError("ratio denominator is zero")
        return _cert(abs(num.c / den.c))
    if isinstance(num, Reciprocal) and isinstance(den, Reciprocal):
        if den.c == 0:
            raise ValueError("ratio denominator is zero")
        return _cert(abs(num.c / den.c))
    if isinstance(num, Reciprocal) and isinstance(den, Constant):
        if den.c == 0 or t0 <= 0:
            raise ValueError("ratio denominator is zero" if den.c == 0 else "Reciprocal needs t0 > 0")
        return _cert(abs(num.c) / (t0 * abs(den.c)))
    if (
        isinstance(num, Sinusoid)
        and isinstance(den, Sinusoid)
        and num.omega == den.omega
        and num.phase == den.phase
        and abs(den.c) > abs(den.amp)
    ):
        hi = abs((num.c + num.amp) / (den.c + den.amp))
        lo = abs((num.c - num.amp) / (den.c - den.amp))
        return _cert(max(hi, lo))
    top = sup_norm(num, t0)
    bot = _inf_abs(den, t0)
    if bot.value <= 0.0:
        raise ValueError("ratio denominator gets arbitrarily close to zero")
    return _cert(
        top.value / bot.value,
        exact=top.exact and bot.exact,
        conservative=True,
    )
