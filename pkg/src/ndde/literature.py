"""Stability tests collected from earlier work on neutral equations.

These complement the primary tests and make the comparison tables possible.
Most are stated for equations built from constant coefficients and constant
lags; the shape gates reflect that, and variable coefficients are admitted
only where the original statement allows them (then interval bounds replace
the constants).  Conclusions differ per test: some give exponential
stability, some only convergence to zero or an L2 bound, and the claim field
records which.

Two numeric helpers live here as well: ``compute_sigma``, the integral of
the absolute value of the fundamental solution of x'(t) + x(t-omega) = 0,
and ``char_root_positive``, a scan-plus-bisection certificate for a positive
root of lambda = a lambda e^{sigma lambda} + b e^{tau lambda}.
"""

from __future__ import annotations

import math

import numpy as np

from .equation import NeutralEquation, Term
from .expressions import (
    Constant,
    ConstantLag,
    PiecewisePeriodic,
    diverges,
    inf_bound,
    sup_norm,
    sup_window_integral,
)
from .verdicts import (
    Claim,
    CriterionVerdict,
    Witness,
    combine_branches,
    not_applicable,
)

__all__ = ["LITERATURE", "compute_sigma", "char_root_positive"]

_INV_E = 1.0 / math.e
_OMEGA_MAX = math.pi / 2 - 0.01
_SCAN_POINTS = 200

_sigma_cache: dict[float, float] = {}


def _sigma_profile(omega: float, dt: float, t_end: float) -> np.ndarray:
    """Node values of x'(t) = -x(t - omega) from x(0)=1 with zero history,
    same trapezoid-plus-linear-interpolation scheme as the general
    integrator.  The lag spans hundreds of grid cells for every omega > 1/e,
    so advancing in chunks shorter than the lag keeps each delayed read
    strictly behind the values being written and the whole chunk vectorizes.
    """
    n = max(2, int(round(t_end / dt)) + 1)
    m = int(math.floor(omega / dt))
    start = min(n, int(math.ceil(omega / dt - 1e-9)))
    x = np.empty(n)
    x[:start] = 1.0
    half = 0.5 * dt
    xd_prev = 0.0
    i = start
    while i < n:
        hi = min(n, i + max(1, m - 1))
        pos = np.arange(i, hi) * dt - omega
        jj = np.clip(np.floor(pos / dt).astype(np.int64), 0, i - 2)
        ww = np.clip(pos / dt - jj, 0.0, 1.0)
        xd = -(x[jj] * (1.0 - ww) + x[jj + 1] * ww)
        inc = np.empty_like(xd)
        inc[0] = half * (xd_prev + xd[0])
        inc[1:] = half * (xd[:-1] + xd[1:])
        x[i:hi] = x[i - 1] + np.cumsum(inc)
        xd_prev = float(xd[-1])
        i = hi
    return x


def compute_sigma(omega: float) -> float:
    """Integral over [0, inf) of |x_omega| for x'(t) + x(t-omega) = 0 started
    from the fundamental initial data x(0)=1, x=0 before 0.

    Equals 1 exactly for omega <= 1/e (the fundamental solution stays
    positive and integrates to 1); grows without bound as omega approaches
    pi/2, which is outside the domain.
    """
    if not 0.0 <= omega:
        raise ValueError("omega must be nonnegative")
    if omega >= math.pi / 2:
        raise ValueError("sigma(omega) diverges for omega >= pi/2")
    if omega <= _INV_E:
        return 1.0
    key = round(omega, 12)
    hit = _sigma_cache.get(key)
    if hit is not None:
        return hit

    dt = 2.5e-3
    t_end = 64.0
    while True:
        ax = np.abs(_sigma_profile(omega, dt, t_end))
        total = dt * (float(ax.sum()) - 0.5 * (ax[0] + ax[-1]))
        cut = 3 * len(ax) // 4
        tail = dt * (float(ax[cut:].sum()) - 0.5 * (ax[cut] + ax[-1]))
        if tail <= 1e-8 * total or t_end > 1e5:
            break
        t_end *= 2.0
    # the signed integral is exactly 1, so the absolute one is at least 1
    val = max(total, 1.0)
    _sigma_cache[key] = val
    return val


def _char_scan(a, b, sigma, tau):
    """Largest scanned value of F(lam) = lam - a lam e^{sigma lam}
    - b e^{tau lam} on (0, Lam], with the first sign change bisected."""

    def f(lam):
        ea = sigma * lam
        eb = tau * lam
        if max(ea, eb) > 700.0:
            return -math.inf
        return lam - a * lam * math.exp(ea) - b * math.exp(eb)

    lam_hi = 10.0 * max(1.0, 1.0 / sigma if sigma > 0 else 1.0)
    grid = np.geomspace(lam_hi * 1e-8, lam_hi, 10_000)
    best = -math.inf
    prev = 0.0
    for lam in grid:
        v = f(lam)
        best = max(best, v)
        if v > 0.0:
            lo, hi = prev, lam
            while hi - lo > 1e-10:
                mid = 0.5 * (lo + hi)
                if f(mid) > 0.0:
                    hi = mid
                else:
                    lo = mid
            break
        prev = lam
    return best


def char_root_positive(a: float, b: float, sigma: float, tau: float) -> bool:
    """True when lam - a lam e^{sigma lam} - b e^{tau lam} has a positive
    root, certified by a positive value on a log-spaced scan (the function
    is -b < 0 at zero).  A root beyond the scan ceiling is missed."""
    return _char_scan(a, b, sigma, tau) > 0.0


# ---------------------------------------------------------------------------
# shape helpers

def _const_terms(terms):
    """[(coeff, lag)] when every term is constant-coefficient constant-lag,
    else None."""
    out = []
    for term in terms:
        if not (isinstance(term.coeff, Constant) and isinstance(term.delay, ConstantLag)):
            return None
        out.append((term.coeff.c, term.delay.tau))
    return out


def _gate_common(eq, cid, claim, allow_kernel=False):
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if eq.kernel is not None and not allow_kernel:
        return not_applicable(cid, claim, "distributed term present")
    return None


def _autonomous_pair(eq, cid, claim):
    """(a, sigma, b, tau) for constant one-neutral/one-delay equations."""
    na = _gate_common(eq, cid, claim)
    if na:
        return na
    if len(eq.neutral) != 1 or len(eq.delay) != 1:
        return not_applicable(cid, claim, "requires exactly one neutral and one delay term")
    nt = _const_terms(eq.neutral)
    dt_ = _const_terms(eq.delay)
    if nt is None or dt_ is None:
        return not_applicable(cid, claim, "stated for constant coefficients and constant lags")
    return nt[0][0], nt[0][1], dt_[0][0], dt_[0][1]


def _split_lag0(terms):
    """Split constant-lag delay terms into the undelayed ones and the rest."""
    zero, pos = [], []
    for term in terms:
        if not isinstance(term.delay, ConstantLag):
            return None
        (zero if term.delay.tau == 0 else pos).append(term)
    return zero, pos


# ---------------------------------------------------------------------------
# literature checkers

def check_p1(eq: NeutralEquation) -> CriterionVerdict:
    """(x + c x(t-tau))' + p x + q x(t-sigma) = 0 with nonnegative data."""
    cid, claim = "p1", Claim.TENDS_TO_ZERO
    na = _gate_common(eq, cid, claim)
    if na:
        return na
    if len(eq.neutral) != 1 or len(eq.delay) != 2:
        return not_applicable(cid, claim, "requires one neutral and two delay terms")
    a, g = eq.neutral[0].coeff, eq.neutral[0].delay
    if not (isinstance(a, Constant) and isinstance(g, ConstantLag)):
        return not_applicable(cid, claim, "stated for a constant neutral coefficient and lag")
    c = -a.c
    if c < 0:
        return not_applicable(cid, claim, "neutral coefficient has the wrong sign for the"
                                          " (x + c x(t-tau))' form")
    split = _split_lag0(eq.delay)
    if split is None:
        return not_applicable(cid, claim, "stated for constant lags")
    zero, pos = split
    if len(zero) != 1 or len(pos) != 1:
        return not_applicable(cid, claim, "requires one undelayed and one delayed term")
    p_expr, q_expr = zero[0].coeff, pos[0].coeff
    sigma = pos[0].delay.tau
    if sigma < g.tau:
        return not_applicable(cid, claim, "requires the delay lag to dominate the neutral lag")
    t0 = eq.t0
    p_lo, p_hi = inf_bound(p_expr, t0), sup_norm(p_expr, t0)
    q_lo, q_hi = inf_bound(q_expr, t0), sup_norm(q_expr, t0)
    if p_lo.value < 0 or q_lo.value < 0:
        return not_applicable(cid, claim, "requires nonnegative coefficients")
    ex = all(cert.exact for cert in (p_lo, p_hi, q_lo, q_hi))
    lo_sum = p_lo.value + q_lo.value
    hi_sum = p_hi.value + q_hi.value
    return combine_branches(cid, claim, [
        ("sum", [Witness("inf p + inf q > (sup p + sup q)(c + sigma sup q)",
                         lo_sum, hi_sum * (c + q_hi.value * sigma), ">", ex)]),
        ("pointwise", [Witness("inf p > sup q + c (sup p + sup q)",
                               p_lo.value, q_hi.value + c * hi_sum, ">", ex)]),
    ])


def _p2_prep(eq, cid, claim):
    """Shared gate for the (x - P x(t-tau))' + Q x(t-sigma) = 0 tests."""
    na = _gate_common(eq, cid, claim)
    if na:
        return na
    if len(eq.neutral) != 1 or len(eq.delay) != 1:
        return not_applicable(cid, claim, "requires exactly one neutral and one delay term")
    a, g = eq.neutral[0].coeff, eq.neutral[0].delay
    b, h = eq.delay[0].coeff, eq.delay[0].delay
    if not (isinstance(a, Constant) and isinstance(g, ConstantLag)
            and isinstance(h, ConstantLag)):
        return not_applicable(cid, claim, "stated for a constant neutral part and constant lags")
    if inf_bound(b, eq.t0).value < 0:
        return not_applicable(cid, claim, "delay coefficient may be negative")
    if not diverges(b):
        return not_applicable(cid, claim, "requires a divergent integral of the delay coefficient")
    win = sup_window_integral(b, h, eq.t0)
    return abs(a.c), win


def check_p2(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "p2", Claim.ASYMPTOTIC
    prep = _p2_prep(eq, cid, claim)
    if isinstance(prep, CriterionVerdict):
        return prep
    p, win = prep
    ex = win.exact and not win.conservative
    return combine_branches(cid, claim, [
        ("main", [
            Witness("|P| < 1", p, 1.0, "<"),
            Witness("sup window integral < 3/2 - 2p(2-p)",
                    win.value, 1.5 - 2.0 * p * (2.0 - p), "<", ex),
        ]),
    ])


def check_p2a(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "p2a", Claim.ASYMPTOTIC
    prep = _p2_prep(eq, cid, claim)
    if isinstance(prep, CriterionVerdict):
        return prep
    p, win = prep
    ex = win.exact and not win.conservative
    root = math.sqrt(max(2.0 * (1.0 - 2.0 * p), 0.0))
    return combine_branches(cid, claim, [
        ("small-p", [
            Witness("p < 1/4", p, 0.25, "<"),
            Witness("sup window integral < 3/2 - 2p", win.value, 1.5 - 2.0 * p, "<", ex),
        ]),
        ("mid-p", [
            Witness("1/4 <= p", 0.25, p, "<="),
            Witness("p < 1/2", p, 0.5, "<"),
            Witness("sup window integral < sqrt(2(1-2p))", win.value, root, "<", ex),
        ]),
    ])


def check_p3(eq: NeutralEquation) -> CriterionVerdict:
    """Autonomous test requiring an undelayed term; lag-weighted norm sum < 1."""
    cid, claim = "p3", Claim.TENDS_TO_ZERO
    na = _gate_common(eq, cid, claim, allow_kernel=True)
    if na:
        return na
    nt = _const_terms(eq.neutral)
    dt_ = _const_terms(eq.delay)
    if nt is None or dt_ is None:
        return not_applicable(cid, claim, "stated for constant coefficients and constant lags")
    if any(tau <= 0 for _c, tau in nt):
        return not_applicable(cid, claim, "neutral lags must be positive")
    mass = 0.0
    if eq.kernel is not None:
        if not isinstance(eq.kernel.window, ConstantLag):
            return not_applicable(cid, claim, "stated for a constant distributed window")
        mass = eq.kernel.mass(eq.kernel.window.tau)
    a0 = sum(c for c, tau in dt_ if tau == 0)
    if a0 <= 0:
        return not_applicable(cid, claim, "requires a positive undelayed coefficient")
    total = sum(c for c, _tau in dt_) + mass
    weighted = sum(abs(c) * tau for c, tau in dt_ if tau > 0)
    neutral_abs = sum(abs(c) for c, _tau in nt)
    return combine_branches(cid, claim, [
        ("main", [
            Witness("sum of coefficients + kernel mass > 0", total, 0.0, ">"),
            Witness("sum|a_neutral| + sum|b_k| tau_k + |kernel mass| < 1",
                    neutral_abs + weighted + abs(mass), 1.0, "<"),
        ]),
    ])


def check_p4(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "p4", Claim.TENDS_TO_ZERO
    got = _autonomous_pair(eq, cid, claim)
    if isinstance(got, CriterionVerdict):
        return got
    a, _sigma, b, tau = got
    if b <= 0:
        return not_applicable(cid, claim, "requires a positive delay coefficient")
    v = abs(a)
    return combine_branches(cid, claim, [
        ("main", [
            Witness("2 b tau + |a|/b + |a| tau + 4|a| b < 2",
                    2.0 * b * tau + v / b + v * tau + 4.0 * v * b, 2.0, "<"),
            Witness("4 a^2 + b tau < 1", 4.0 * v * v + b * tau, 1.0, "<"),
        ]),
    ])


def check_p5(eq: NeutralEquation) -> CriterionVerdict:
    """x' = -a(t) x + b(t) x(t-tau) + c(t) x'(t-sigma) with |b| below inf a."""
    cid, claim = "p5", Claim.ASYMPTOTIC
    na = _gate_common(eq, cid, claim)
    if na:
        return na
    if len(eq.neutral) != 1 or len(eq.delay) != 2:
        return not_applicable(cid, claim, "requires one neutral and two delay terms")
    if not isinstance(eq.neutral[0].delay, ConstantLag):
        return not_applicable(cid, claim, "stated for constant lags")
    if isinstance(eq.neutral[0].coeff, PiecewisePeriodic):
        return not_applicable(cid, claim, "neutral coefficient must be continuously differentiable")
    split = _split_lag0(eq.delay)
    if split is None:
        return not_applicable(cid, claim, "stated for constant lags")
    zero, pos = split
    if len(zero) != 1 or len(pos) != 1:
        return not_applicable(cid, claim, "requires one undelayed and one delayed term")
    t0 = eq.t0
    a_lo = inf_bound(zero[0].coeff, t0)
    b_hi = sup_norm(pos[0].coeff, t0)
    c_hi = sup_norm(eq.neutral[0].coeff, t0)
    return combine_branches(cid, claim, [
        ("main", [
            Witness("inf a > 0", a_lo.value, 0.0, ">", a_lo.exact),
            Witness("sup|c| < 1", c_hi.value, 1.0, "<", c_hi.exact),
            Witness("sup|b| < inf a", b_hi.value, a_lo.value, "<",
                    b_hi.exact and a_lo.exact),
        ]),
    ])


def check_p6(eq: NeutralEquation) -> CriterionVerdict:
    """Fixed-point test with a common lag in the delayed and neutral terms."""
    cid, claim = "p6", Claim.TENDS_TO_ZERO
    na = _gate_common(eq, cid, claim)
    if na:
        return na
    if len(eq.neutral) != 1 or len(eq.delay) != 2:
        return not_applicable(cid, claim, "requires one neutral and two delay terms")
    nt = _const_terms(eq.neutral)
    dt_ = _const_terms(eq.delay)
    if nt is None or dt_ is None:
        return not_applicable(cid, claim, "stated for constant coefficients and constant lags")
    zero = [(c, tau) for c, tau in dt_ if tau == 0]
    pos = [(c, tau) for c, tau in dt_ if tau > 0]
    if len(zero) != 1 or len(pos) != 1:
        return not_applicable(cid, claim, "requires one undelayed and one delayed term")
    a = zero[0][0]
    b, tau = pos[0]
    c, tau_n = nt[0]
    if tau_n != tau:
        return not_applicable(cid, claim, "stated for a common lag in the delayed"
                                          " and neutral terms")
    if a <= 0:
        return not_applicable(cid, claim, "requires a positive undelayed coefficient")
    return combine_branches(cid, claim, [
        ("main", [
            Witness("|c| + |b + a c|/a < 1", abs(c) + abs(b + a * c) / a, 1.0, "<"),
        ]),
    ])


def check_p7(eq: NeutralEquation) -> CriterionVerdict:
    """L2 boundedness from a positive characteristic root."""
    cid, claim = "p7", Claim.L2
    got = _autonomous_pair(eq, cid, claim)
    if isinstance(got, CriterionVerdict):
        return got
    a, sigma, b, tau = got
    if a <= 0 or b <= 0:
        return not_applicable(cid, claim, "requires positive constant coefficients")
    fmax = _char_scan(a, b, sigma, tau)
    return combine_branches(cid, claim, [
        ("main", [
            Witness("max F(lambda) > 0 over the root scan", fmax, 0.0, ">", False),
        ]),
    ])


def check_p8(eq: NeutralEquation) -> CriterionVerdict:
    """Sum of delay coefficients within 1/(tau e) and small neutral sum."""
    cid, claim = "p8", Claim.EXPONENTIAL
    na = _gate_common(eq, cid, claim)
    if na:
        return na
    if len(eq.delay) < 1:
        return not_applicable(cid, claim, "requires at least one delay term")
    if eq.has_unbounded_delay:
        return not_applicable(cid, claim, "requires bounded delays")
    t0 = eq.t0
    tau = max(t.delay.lag_bounds(t0)[1] for t in eq.delay)
    p_los = [inf_bound(t.coeff, t0) for t in eq.delay]
    p_his = [sup_norm(t.coeff, t0) for t in eq.delay]
    all_const = all(isinstance(t.coeff, Constant) for t in eq.delay)
    inf_p = sum(c.value for c in p_los)
    sup_p = sum(c.value for c in p_his)
    sum_ex = all_const or len(eq.delay) == 1
    ex_p = sum_ex and all(c.exact for c in p_los) and all(c.exact for c in p_his)
    ceiling = math.inf if tau <= 0 else 1.0 / (tau * math.e)

    ws = [
        Witness("inf sum p_k > 0", inf_p, 0.0, ">", ex_p),
        Witness("sup sum p_k <= 1/(tau e)", sup_p, ceiling, "<=", ex_p),
    ]
    if all(c.value >= 0 for c in p_los):
        ratio = (1.0, True)
    elif inf_p > 0:
        ratio = (sup_p / inf_p, False)
    else:
        ratio = None
    q_lo = sum(inf_bound(t.coeff, t0).value for t in eq.neutral)
    q_hi = sum(sup_norm(t.coeff, t0).value for t in eq.neutral)
    q_ex = all(isinstance(t.coeff, Constant) for t in eq.neutral) or len(eq.neutral) <= 1
    ws.append(Witness("inf sum q_i >= 0", q_lo, 0.0, ">=", q_ex))
    if ratio is not None:
        ws.append(Witness("sup sum q_i <= 1/(1 + sup sum|p_k|/sum p_k)",
                          q_hi, 1.0 / (1.0 + ratio[0]), "<=", q_ex and ratio[1]))
    return combine_branches(cid, claim, [("main", ws)])


def _omega_scan(lhs_fn, rhs_scale, w_hi):
    """Best (slack, omega, lhs, rhs) over the omega grid, computing the
    expensive sigma quadrature lazily under the sigma >= 1 prefilter."""
    grid = np.linspace(0.0, w_hi, _SCAN_POINTS)
    lhs = [lhs_fn(w) for w in grid]
    order = sorted(range(len(grid)), key=lambda i: lhs[i])
    known: list[tuple[float, float]] = []

    def sigma_floor(w):
        out = 1.0
        for wo, so in known:
            if wo <= w:
                out = max(out, so)
        return out

    best = None
    for i in order:
        w = float(grid[i])
        if lhs[i] >= rhs_scale / sigma_floor(w):
            continue
        s = compute_sigma(w)
        known.append((w, s))
        rec = (rhs_scale / s - lhs[i], w, lhs[i], rhs_scale / s)
        if best is None or rec[0] > best[0]:
            best = rec
        if rec[0] > 0.0:
            return rec
    if best is None:
        i = order[0]
        w = float(grid[i])
        s = compute_sigma(w)
        best = (rhs_scale / s - lhs[i], w, lhs[i], rhs_scale / s)
    return best


def check_p9(eq: NeutralEquation) -> CriterionVerdict:
    """Multi-term test with an omega-tuned comparison against sigma(omega)."""
    cid, claim = "p9", Claim.EXPONENTIAL
    na = _gate_common(eq, cid, claim)
    if na:
        return na
    if len(eq.delay) < 1:
        return not_applicable(cid, claim, "requires at least one delay term")
    nt = _const_terms(eq.neutral)
    dt_ = _const_terms(eq.delay)
    if nt is None or dt_ is None:
        return not_applicable(cid, claim, "constant-coefficient instantiation only")
    p_total = sum(c for c, _tau in dt_)
    q_total = sum(c for c, _tau in nt)
    s_p = sum(abs(c) for c, _tau in dt_)
    s_q = sum(abs(c) for c, _tau in nt)
    r = p_total / (1.0 - q_total)
    ws = [
        Witness("p/(1-q) > 0", r, 0.0, ">"),
        Witness("sum|q_j| < 1", s_q, 1.0, "<"),
    ]
    if r <= 0:
        return combine_branches(cid, claim, [("main", ws)])

    neutral_load = sum(abs(c) * r * tau for c, tau in nt)

    def lhs_fn(w):
        inner = sum(abs(c) * abs(r * tau - w) for c, tau in dt_) / r + neutral_load
        return s_p / (1.0 - s_q) / r * inner

    tau_max = max(tau for _c, tau in dt_)
    w_hi = min(_OMEGA_MAX, max(_INV_E, r * tau_max))
    _, w_star, lhs_v, rhs_v = _omega_scan(lhs_fn, 1.0 - s_q, w_hi)
    ws.append(Witness("omega-tuned bound below (1 - sum|q_j|)/sigma(omega)",
                      lhs_v, rhs_v, "<", w_star <= _INV_E))
    return combine_branches(cid, claim, [("main", ws)], omega=w_star)


def check_c01(eq: NeutralEquation) -> CriterionVerdict:
    """Autonomous one-term specialization with an omega scan."""
    cid, claim = "c01", Claim.EXPONENTIAL
    got = _autonomous_pair(eq, cid, claim)
    if isinstance(got, CriterionVerdict):
        return got
    q, delta, p, tau = got
    if p <= 0:
        return not_applicable(cid, claim, "requires a positive delay coefficient")
    fixed = p * abs(q) * delta + abs(q) * (1.0 - abs(q))

    def lhs_fn(w):
        return (1.0 - q) * abs(p * tau + q * w - w) + fixed

    w_hi = min(_OMEGA_MAX, max(_INV_E, p * tau / (1.0 - q)))
    _, w_star, lhs_v, rhs_v = _omega_scan(lhs_fn, (1.0 - abs(q)) ** 2, w_hi)
    ws = [Witness("(1-q)|p tau + (q-1) omega| + p|q|delta + |q|(1-|q|)"
                  " < (1-|q|)^2/sigma(omega)",
                  lhs_v, rhs_v, "<", w_star <= _INV_E)]
    return combine_branches(cid, claim, [("main", ws)], omega=w_star)


def check_c01star(eq: NeutralEquation) -> CriterionVerdict:
    """Closed form of the omega scan frozen at omega = 1/e."""
    cid, claim = "c01star", Claim.EXPONENTIAL
    got = _autonomous_pair(eq, cid, claim)
    if isinstance(got, CriterionVerdict):
        return got
    q, delta, p, tau = got
    if p <= 0:
        return not_applicable(cid, claim, "requires a positive delay coefficient")
    aq = abs(q)
    lhs = (1.0 - q) / (1.0 - aq) * abs(p * tau - (1.0 - q) * _INV_E)
    rhs = 1.0 - 2.0 * aq - p * aq * delta / (1.0 - aq)
    ws = [Witness("(1-q)/(1-|q|)|p tau - (1-q)/e| < 1 - 2|q| - p|q|delta/(1-|q|)",
                  lhs, rhs, "<")]
    return combine_branches(cid, claim, [("main", ws)], omega=_INV_E)


LITERATURE = {
    "p1": check_p1,
    "p2": check_p2,
    "p2a": check_p2a,
    "p3": check_p3,
    "p4": check_p4,
    "p5": check_p5,
    "p6": check_p6,
    "p8": check_p8,
    "p9": check_p9,
    "c01": check_c01,
    "c01star": check_c01star,
    "p7": check_p7,
}
