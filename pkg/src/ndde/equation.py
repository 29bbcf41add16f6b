"""Scalar linear neutral delay differential equations.

The model is

    x'(t) - sum_k a_k(t) x'(g_k(t)) + sum_k b_k(t) x(h_k(t))
          + int_{h(t)}^t K(t, s) x(s) ds  =  f(t),    t >= t0,

with x = phi and x' = psi on (-inf, t0].  Coefficients and delays are the
closed-form profiles from :mod:`ndde.expressions`; the optional distributed
term uses a stationary kernel over a moving window.  Well-posedness of the
neutral part needs ``sum_k sup|a_k| < 1``.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .expressions import (
    BoundCertificate,
    Coefficient,
    Constant,
    ConstantLag,
    Delay,
    inf_bound,
    sup_norm,
)

__all__ = [
    "Term",
    "ExponentialKernel",
    "UniformKernel",
    "HistorySpec",
    "NeutralEquation",
    "Finding",
    "validate",
]


@dataclass(frozen=True)
class Term:
    """One delayed term: coefficient profile times a delayed evaluation."""

    coeff: Coefficient
    delay: Delay


@dataclass(frozen=True)
class ExponentialKernel:
    """``K(t, s) = c * exp(-d (t - s))`` over the window ``[h(t), t]``."""

    c: float
    d: float
    window: Delay

    def density(self, u):
        return self.c * np.exp(-self.d * u)

    def mass(self, lag):
        if self.d == 0.0:
            return self.c * lag
        return (self.c / self.d) * (1.0 - math.exp(-self.d * lag))


@dataclass(frozen=True)
class UniformKernel:
    """``K(t, s) = c`` over the window ``[h(t), t]``."""

    c: float
    window: Delay

    def density(self, u):
        if np.ndim(u):
            return np.full(np.shape(u), self.c, dtype=float)
        return self.c

    def mass(self, lag):
        return self.c * lag


Kernel = ExponentialKernel | UniformKernel


@dataclass(frozen=True)
class HistorySpec:
    """Initial data on (-inf, t0]: value profile phi and derivative profile psi."""

    phi: Coefficient = field(default_factory=lambda: Constant(1.0))
    psi: Coefficient = field(default_factory=lambda: Constant(0.0))
    consistent: bool = False


@dataclass(frozen=True)
class NeutralEquation:
    t0: float = 0.0
    neutral: tuple[Term, ...] = ()
    delay: tuple[Term, ...] = ()
    kernel: Kernel | None = None
    history: HistorySpec = field(default_factory=HistorySpec)
    forcing: Coefficient | None = None

    def __post_init__(self):
        object.__setattr__(self, "neutral", tuple(self.neutral))
        object.__setattr__(self, "delay", tuple(self.delay))

    # -- structural queries ------------------------------------------------

    def neutral_norm_sum(self) -> float:
        return sum(sup_norm(term.coeff, self.t0).value for term in self.neutral)

    @property
    def well_posed(self) -> bool:
        return self.neutral_norm_sum() < 1.0

    def _all_delays(self):
        out = [t.delay for t in self.neutral] + [t.delay for t in self.delay]
        if self.kernel is not None:
            out.append(self.kernel.window)
        return out

    @property
    def has_unbounded_delay(self) -> bool:
        return any(not d.bounded for d in self._all_delays())

    def max_lag(self) -> float:
        """Largest lag bound over every term; ``inf`` if any delay is unbounded."""
        lags = [d.lag_bounds(self.t0)[1] for d in self._all_delays()]
        return max(lags, default=0.0)

    def min_positive_lag(self) -> float | None:
        lags = [d.lag_bounds(self.t0)[0] for d in self._all_delays()]
        lags = [L for L in lags if L > 0 and math.isfinite(L)]
        return min(lags) if lags else None

    # -- distributed term --------------------------------------------------

    def induced_b(self):
        """Pointwise coefficient of the distributed term seen as a delay term.

        Returns ``(callable, sup certificate, inf certificate)`` for
        ``b(t) = int_{h(t)}^t K(t, s) ds``; the kernel is stationary so the
        mass depends on the window length only (monotonically).
        """
        k = self.kernel
        if k is None:
            raise ValueError("equation has no distributed term")

        def b_of_t(t):
            return k.mass(k.window.lag(t))

        lo, hi = k.window.lag_bounds(self.t0)
        masses = [k.mass(lo)]
        if math.isfinite(hi):
            masses.append(k.mass(hi))
            sup = BoundCertificate(max(masses))
            inf = BoundCertificate(min(masses))
        else:
            # exponential kernels saturate at total mass c/d; uniform ones grow
            if isinstance(k, ExponentialKernel) and k.d > 0:
                limit = k.c / k.d
            else:
                limit = math.inf
            sup = BoundCertificate(max(masses[0], limit))
            inf = BoundCertificate(min(masses[0], limit))
        return b_of_t, sup, inf

    # -- identity ----------------------------------------------------------

    def fingerprint(self) -> str:
        from .specio import dump_equation

        canon = json.dumps(dump_equation(self), sort_keys=True)
        return hashlib.sha256(canon.encode()).hexdigest()[:12]


@dataclass(frozen=True)
class Finding:
    code: str
    ok: bool
    message: str
    value: float | None = None


def validate(eq: NeutralEquation) -> list[Finding]:
    """Structural report: never raises, one finding per checked property."""
    out = []
    s = eq.neutral_norm_sum()
    out.append(
        Finding(
            "neutral_norm_sum",
            s < 1.0,
            f"sum of neutral sup-norms is {s:.6g} ({'OK' if s < 1 else 'ill-posed, must be < 1'})",
            s,
        )
    )
    for i, term in enumerate(eq.neutral):
        lo, hi = term.delay.lag_bounds(eq.t0)
        out.append(
            Finding(
                f"neutral[{i}].delay_bounded",
                math.isfinite(hi),
                f"neutral lag {i} in [{lo:.6g}, {hi:.6g}]",
                hi if math.isfinite(hi) else None,
            )
        )
    for i, term in enumerate(eq.delay):
        lo, hi = term.delay.lag_bounds(eq.t0)
        out.append(
            Finding(
                f"delay[{i}].delay_bounded",
                math.isfinite(hi),
                f"delay lag {i} in [{lo:.6g}, {hi:.6g}]",
                hi if math.isfinite(hi) else None,
            )
        )
        try:
            binf = inf_bound(term.coeff, eq.t0).value
        except ValueError:
            binf = math.nan
        out.append(
            Finding(
                f"delay[{i}].sign",
                not math.isnan(binf) and binf >= 0.0,
                f"delay coefficient {i} essential inf {binf:.6g}"
                + ("" if binf >= 0 else " (negative values restrict applicable tests)"),
                binf,
            )
        )
    if eq.has_unbounded_delay:
        out.append(
            Finding(
                "unbounded_delay",
                True,
                "equation has proportional delays; only the unbounded-delay tests apply",
            )
        )
    if eq.kernel is not None:
        _, sup, inf = eq.induced_b()
        out.append(
            Finding(
                "kernel.induced_b",
                math.isfinite(sup.value),
                f"distributed term induces b(t) in [{inf.value:.6g}, {sup.value:.6g}]",
                sup.value if math.isfinite(sup.value) else None,
            )
        )
    return out
