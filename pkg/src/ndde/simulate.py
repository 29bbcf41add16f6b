"""Numerical integration of neutral delay equations and the decay oracle.

Method of steps on a fixed grid: delayed state reads use linear interpolation
of stored ``x`` and piecewise-constant lookup of stored ``xdot`` (solutions
are absolutely continuous while the derivative is only measurable, so
higher-order derivative interpolation is unjustified); ``x`` advances by the
trapezoidal rule.  When a read lands in the current step the node equation is
affine in the unknown derivative and is solved exactly, which meets the
residual target in one evaluation.  The distributed term uses trapezoidal
quadrature over the grid with the partial first cell and any pre-history
segment handled separately.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .equation import HistorySpec, NeutralEquation
from .expressions import Constant

__all__ = [
    "Trajectory",
    "DecayEstimate",
    "integrate",
    "fundamental",
    "representation_check",
    "estimate_decay",
    "classify",
    "bisect_threshold",
    "default_dt",
    "default_t_end",
]

_trapz = getattr(np, "trapezoid", None) or np.trapz

RESIDUAL_TOL = 1e-10
GAMMA_MIN = 1e-3
R2_MIN = 0.9


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    x: np.ndarray
    xdot: np.ndarray
    dt: float | None
    method: str
    fingerprint: str
    max_residual: float


@dataclass(frozen=True)
class DecayEstimate:
    gamma_hat: float
    M_hat: float
    r2: float
    classification: str  # "Decaying" | "Growing" | "Inconclusive"


def default_dt(eq: NeutralEquation) -> float:
    """``min(1e-3, min positive lag / 100)``; resolves the shortest delay."""
    lag = eq.min_positive_lag()
    if lag is None or not math.isfinite(lag):
        return 1e-3
    return min(1e-3, lag / 100.0)


def default_t_end(eq: NeutralEquation) -> float:
    lag = eq.max_lag()
    if not math.isfinite(lag):
        lag = 1.0
    return eq.t0 + 200.0 * max(1.0, lag)


def _build_read(coeff, delay, deriv, ts, t0, snap, phi, psi, arange_n):
    """Precompute one delayed read: coefficient values, history flags and
    values, containing-node indices, and interpolation weights."""
    n = len(ts)
    pos = np.minimum(np.asarray(delay.position(ts), dtype=float), ts)
    coefv = np.asarray(coeff(ts), dtype=float)
    if coefv.ndim == 0:
        coefv = np.full(n, float(coefv))
    hist = pos < (t0 - snap)
    j = np.searchsorted(ts, pos + snap, side="right") - 1
    j = np.clip(j, 0, n - 1)
    if deriv:
        j = np.minimum(j, arange_n)
        w = np.zeros(n)
    else:
        j = np.minimum(j, np.maximum(arange_n - 1, 0))
        denom = ts[np.minimum(j + 1, n - 1)] - ts[j]
        denom[denom == 0.0] = 1.0
        w = np.clip((pos - ts[j]) / denom, 0.0, 1.0)
        w[w < 1e-12] = 0.0
        w[hist] = 0.0
    hv = np.zeros(n)
    if hist.any():
        src = psi if deriv else phi
        hv[hist] = np.asarray(src(pos[hist]), dtype=float)
    return (
        deriv,
        coefv.tolist(),
        hist.tolist(),
        hv.tolist(),
        j.tolist(),
        w.tolist(),
    )


def integrate(
    eq: NeutralEquation,
    t_end: float,
    dt: float | None = None,
    *,
    x0: float | None = None,
    grid: str = "uniform",
    eta: float = 1e-3,
) -> Trajectory:
    """Integrate ``eq`` from ``eq.t0`` to ``t_end``.

    ``grid="geometric"`` uses steps ``t_{i+1} = t_i (1 + eta)`` (requires
    ``t0 > 0``), which keeps proportional-delay lookups resolved over long
    horizons.  ``x0`` overrides the starting value ``phi(t0)``; the
    fundamental function uses this with zero history.
    """
    if not eq.well_posed:
        raise ValueError(
            f"ill-posed equation: sum of neutral sup-norms is "
            f"{eq.neutral_norm_sum():.6g}, must be < 1"
        )
    t0 = eq.t0
    if t_end <= t0:
        raise ValueError("t_end must exceed t0")

    if grid == "uniform":
        if dt is None:
            dt = default_dt(eq)
        if dt <= 0:
            raise ValueError("dt must be positive")
        n = max(2, int(round((t_end - t0) / dt)) + 1)
        ts = t0 + dt * np.arange(n)
        method = "steps-trapezoid"
    elif grid == "geometric":
        if t0 <= 0:
            raise ValueError("geometric grid requires t0 > 0")
        if eta <= 0:
            raise ValueError("eta must be positive")
        n = max(2, int(math.ceil(math.log(t_end / t0) / math.log1p(eta))) + 1)
        ts = t0 * np.exp(math.log1p(eta) * np.arange(n))
        dt = None
        method = "steps-trapezoid-geometric"
    else:
        raise ValueError(f"unknown grid {grid!r}")

    cells = np.diff(ts)
    snap = 1e-9 * float(cells.min())
    phi, psi = eq.history.phi, eq.history.psi
    arange_n = np.arange(n)

    reads = []
    for term in eq.neutral:
        reads.append(_build_read(term.coeff, term.delay, True, ts, t0, snap, phi, psi, arange_n))
    for term in eq.delay:
        reads.append(_build_read(term.coeff, term.delay, False, ts, t0, snap, phi, psi, arange_n))

    if eq.forcing is not None:
        fv = np.asarray(eq.forcing(ts), dtype=float)
        if fv.ndim == 0:
            fv = np.full(n, float(fv))
        fv = fv.tolist()
    else:
        fv = [0.0] * n

    kern = eq.kernel
    kern_lags = kern.window.lag(ts) if kern is not None else None
    ts_list = ts.tolist()
    cell_list = cells.tolist()

    def kernel_parts(i, x):
        """Quadrature of int_{h(t_i)}^{t_i} K(t_i,s)x(s)ds split into the part
        using known values and the coefficient of the still-unknown x[i]."""
        ti = ts_list[i]
        lag = float(kern_lags[i])
        if lag <= snap:
            return 0.0, 0.0
        lo = ti - lag
        fixed = 0.0
        if lo < ts[0] - snap:
            hi_end = ts_list[0]
            m = max(2, int(math.ceil((hi_end - lo) / max(lag / 50.0, snap))) + 1)
            ss = np.linspace(lo, hi_end, m)
            fixed += float(_trapz(kern.density(ti - ss) * np.asarray(phi(ss), dtype=float), ss))
            j0 = 0
        else:
            j0 = int(np.searchsorted(ts, lo - snap, side="left"))
            if j0 > i:
                j0 = i
        if j0 == i:
            # window shorter than one cell: single trapezoid on [lo, t_i]
            pw = ti - max(lo, ts_list[0])
            if pw <= snap:
                return fixed, 0.0
            jlo = max(0, min(i - 1, int(np.searchsorted(ts, lo + snap, side="right")) - 1))
            wlo = (lo - ts_list[jlo]) / cell_list[jlo] if i > 0 else 0.0
            if jlo + 1 <= i - 1 and wlo > 0.0:
                xlo = x[jlo] + wlo * (x[jlo + 1] - x[jlo])
            else:
                xlo = x[jlo]
            fixed += 0.5 * pw * float(kern.density(lag)) * xlo
            return fixed, 0.5 * pw * float(kern.density(0.0))
        tseg = ts[j0 : i + 1]
        cseg = np.diff(tseg)
        wseg = np.zeros(len(tseg))
        wseg[:-1] += 0.5 * cseg
        wseg[1:] += 0.5 * cseg
        kv = kern.density(ti - tseg)
        fixed += float(np.dot(wseg[:-1] * kv[:-1], np.asarray(x[j0:i], dtype=float)))
        live = float(wseg[-1] * kv[-1])
        pw = ts_list[j0] - lo
        if pw > snap and lo >= ts[0] - snap:
            jlo = max(0, int(np.searchsorted(ts, lo + snap, side="right")) - 1)
            wlo = (lo - ts_list[jlo]) / cell_list[jlo] if jlo < len(cell_list) else 0.0
            xlo = x[jlo] if wlo <= 0.0 else x[jlo] + wlo * (x[jlo + 1] - x[jlo])
            fixed += 0.5 * pw * (
                float(kern.density(lag)) * xlo + float(kern.density(ti - ts_list[j0])) * x[j0]
            )
        return fixed, live

    x0v = float(phi(t0)) if x0 is None else float(x0)
    x = [x0v]
    xd = []
    has_kernel = kern is not None
    max_res = 0.0

    for i in range(n):
        if i == 0:
            half = 0.0
            xbase = x0v
        else:
            half = 0.5 * cell_list[i - 1]
            xbase = x[i - 1] + half * xd[i - 1]
        tot = fv[i]
        a_coef = 0.0
        c_coef = 0.0
        for deriv, coefl, histl, hvl, jl, wl in reads:
            c = coefl[i]
            if c == 0.0:
                continue
            if histl[i]:
                tot += c * hvl[i] if deriv else -c * hvl[i]
                continue
            j = jl[i]
            if deriv:
                if j == i:
                    a_coef += c
                else:
                    tot += c * xd[j]
            else:
                w = wl[i]
                if w == 0.0:
                    tot -= c * x[j]
                elif j + 1 == i:
                    tot -= c * (1.0 - w) * x[j]
                    c_coef -= c * w
                else:
                    tot -= c * (x[j] + w * (x[j + 1] - x[j]))
        if has_kernel:
            fixed, live = kernel_parts(i, x)
            tot -= fixed
            c_coef -= live
        A = a_coef + c_coef * half
        denom = 1.0 - A
        if abs(denom) < 1e-8:
            raise ArithmeticError("node equation degenerate; refine dt")
        rhs0 = tot + c_coef * xbase
        xdi = rhs0 / denom
        res = abs(rhs0 + A * xdi - xdi)
        if res > max_res:
            max_res = res
        xd.append(xdi)
        if i > 0:
            x.append(xbase + half * xdi)

    if max_res > RESIDUAL_TOL * max(1.0, max(abs(v) for v in xd)):
        raise ArithmeticError(f"node residual {max_res:.3g} exceeds tolerance")

    return Trajectory(
        t=ts,
        x=np.asarray(x),
        xdot=np.asarray(xd),
        dt=dt,
        method=method,
        fingerprint=eq.fingerprint(),
        max_residual=max_res,
    )


def fundamental(eq: NeutralEquation, s: float, t_end: float, dt: float) -> Trajectory:
    """Fundamental function X(., s): zero history and derivative before ``s``,
    unit value at ``s``, homogeneous equation afterwards."""
    if s < eq.t0:
        raise ValueError("s must not precede t0")
    shifted = dataclasses.replace(
        eq,
        t0=s,
        history=HistorySpec(phi=Constant(0.0), psi=Constant(0.0)),
        forcing=None,
    )
    return integrate(shifted, t_end, dt, x0=1.0)


def representation_check(b, h, f, t_end, dt, ds=1e-2, t0=0.0):
    """Max deviation between direct integration of ``x' + b x(h) = f`` (zero
    history) and the assembled integral of the fundamental function against
    ``f`` on an s-grid of spacing ``ds``.  Expected O(dt + ds^2)."""
    from .equation import Term

    eq = NeutralEquation(
        t0=t0,
        delay=(Term(b, h),),
        history=HistorySpec(phi=Constant(0.0), psi=Constant(0.0)),
        forcing=f,
    )
    direct = integrate(eq, t_end, dt)
    stride = max(1, int(round(ds / dt)))
    s_idx = list(range(0, len(direct.t), stride))
    s_vals = [float(direct.t[k]) for k in s_idx]
    runs = []
    for s in s_vals:
        # the final grid point would start a zero-length run; the only value
        # ever read from it is X(t_end, t_end) = 1
        runs.append(None if s >= t_end - 0.5 * dt else fundamental(eq, s, t_end, dt))
    fs = [float(np.asarray(f(s), dtype=float)) for s in s_vals]

    dev = 0.0
    for pi, k in enumerate(s_idx):
        tp = s_vals[pi]
        if pi == 0:
            continue
        # X(tp, s_j) for j <= pi: run j starts at s_j, node offset k - s_idx[j]
        vals = np.array(
            [
                (1.0 if runs[j] is None else runs[j].x[k - s_idx[j]]) * fs[j]
                for j in range(pi + 1)
            ]
        )
        rep = float(_trapz(vals, np.asarray(s_vals[: pi + 1])))
        dev = max(dev, abs(float(direct.x[k]) - rep))
    return dev


def estimate_decay(traj: Trajectory) -> DecayEstimate:
    """Fit an exponential envelope to the tail of a trajectory.

    Uses per-window maxima of |x| over 20 windows spanning the last 75% of
    the horizon; the log-maxima are fitted by least squares against window
    midpoints.  Positive fitted rate means decay.
    """
    t = np.asarray(traj.t, dtype=float)
    ax = np.abs(np.asarray(traj.x, dtype=float))
    t_lo = t[0] + 0.25 * (t[-1] - t[0])
    mask = t >= t_lo
    tt, xx = t[mask], ax[mask]
    edges = np.linspace(tt[0], tt[-1], 21)
    mids, maxes = [], []
    for k in range(20):
        sel = (tt >= edges[k]) & (tt <= edges[k + 1])
        if not sel.any():
            continue
        mids.append(0.5 * (edges[k] + edges[k + 1]))
        maxes.append(float(xx[sel].max()))
    mids = np.asarray(mids)
    maxes = np.asarray(maxes)
    if len(mids) < 3:
        return DecayEstimate(0.0, 0.0, 0.0, "Inconclusive")
    if np.all(maxes == 0.0):
        return DecayEstimate(math.inf, 0.0, 1.0, "Decaying")
    logs = np.log(np.maximum(maxes, 1e-300))
    slope, intercept = np.polyfit(mids, logs, 1)
    pred = slope * mids + intercept
    ss_res = float(np.sum((logs - pred) ** 2))
    ss_tot = float(np.sum((logs - logs.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 0.0
    gamma = -float(slope)
    m_hat = float(np.exp(intercept + slope * t[0]))
    if gamma >= GAMMA_MIN and r2 >= R2_MIN:
        cls = "Decaying"
    elif gamma <= -GAMMA_MIN and r2 >= R2_MIN:
        cls = "Growing"
    else:
        cls = "Inconclusive"
    return DecayEstimate(gamma, m_hat, r2, cls)


def classify(eq: NeutralEquation, t_end=None, dt=None, grid="uniform", eta=1e-3) -> DecayEstimate:
    if t_end is None:
        t_end = default_t_end(eq)
    traj = integrate(eq, t_end, dt, grid=grid, eta=eta)
    return estimate_decay(traj)


def bisect_threshold(family, lo, hi, oracle, tol=1e-2):
    """Bisect the boolean ``oracle(family(p))`` over ``[lo, hi]``.

    ``oracle`` must hold at ``lo`` and fail at ``hi`` (checked); returns the
    midpoint of the final bracket of width <= ``tol``.
    """
    if hi <= lo:
        raise ValueError("range must satisfy lo < hi")
    ok_lo = bool(oracle(family(lo)))
    ok_hi = bool(oracle(family(hi)))
    if not ok_lo or ok_hi:
        raise ValueError(
            f"endpoints do not bracket a threshold: oracle({lo:.6g})={ok_lo}, "
            f"oracle({hi:.6g})={ok_hi}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if oracle(family(mid)):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
