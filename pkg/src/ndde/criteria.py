"""Stability tests for neutral equations with bounded-norm coefficients.

Every checker is a pure function of the equation returning a
:class:`~ndde.verdicts.CriterionVerdict`.  Numeric hypotheses become
witnesses; structural hypotheses (term counts, coefficient shapes, sign and
boundedness requirements) gate to NotApplicable with the failing hypothesis
named.  The single-delay tests share one branch engine: a 1/e-window branch,
a clipped-coefficient branch (``b0 = min(b, 1/(tau e))``), and a
delay-deviation branch; the multi-delay tests reduce to it or enumerate
index subsets.
"""

from __future__ import annotations

import math

from .equation import NeutralEquation
from .expressions import (
    Constant,
    ConstantLag,
    Proportional,
    Reciprocal,
    SinusoidLag,
    _inf_abs,
    diverges,
    inf_bound,
    inf_window_integral,
    nonzero_ae,
    ratio_sup_norm,
    sup_norm,
    sup_window_integral,
)
from .verdicts import (
    Claim,
    CriterionVerdict,
    Verdict,
    Witness,
    _branch_state,
    combine_branches,
    not_applicable,
)

__all__ = ["CRITERIA", "evaluate_all", "criterion_ids"]

_INV_E = 1.0 / math.e


# ---------------------------------------------------------------------------
# certified scalar quantities: (value, exact) pairs

def _qc(cert):
    return cert.value, (cert.exact and not cert.conservative)


def _lag_range(delay, t0):
    lo, hi = delay.lag_bounds(t0)
    return lo, hi


def _gate_single(eq, cid, claim, need_bounded=True):
    """Common structural gate for the one-neutral/one-delay tests.

    Returns ((a_coeff, g), (b_coeff, h)) or a NotApplicable verdict.
    """
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if eq.kernel is not None:
        return not_applicable(cid, claim, "distributed term present")
    if len(eq.neutral) != 1 or len(eq.delay) != 1:
        return not_applicable(cid, claim, "requires exactly one neutral and one delay term")
    if need_bounded and eq.has_unbounded_delay:
        return not_applicable(cid, claim, "requires bounded delays")
    nt, dt_ = eq.neutral[0], eq.delay[0]
    return (nt.coeff, nt.delay), (dt_.coeff, dt_.delay)


def _nonneg_gate(b, t0, cid, claim):
    binf = inf_bound(b, t0)
    if binf.value < 0:
        return not_applicable(cid, claim, "delay coefficient may be negative")
    return None


# ---------------------------------------------------------------------------
# shared branch engine (window / clipped-b0 / delay-deviation)

def _branch_window(norm_a, sup_b, inf_b, win_sup, ratio_ab):
    ws = [
        Witness("inf b > 0", inf_b[0], 0.0, ">", inf_b[1]),
        Witness("sup window integral <= 1/e", win_sup[0], _INV_E, "<=", win_sup[1]),
    ]
    if ratio_ab is not None:
        val = norm_a[0] + sup_b[0] * ratio_ab[0]
        ex = norm_a[1] and sup_b[1] and ratio_ab[1]
        ws.append(Witness("||a|| + ||b||*||a/b|| < 1", val, 1.0, "<", ex))
    return ws


def _branch_b0(norm_a, sup_b, inf_b, ratio_ab0, ratio_bb0):
    ws = [Witness("inf b > 0", inf_b[0], 0.0, ">", inf_b[1])]
    if inf_b[0] > 0 and ratio_ab0 is not None and ratio_bb0 is not None:
        val = ratio_ab0[0] * sup_b[0] / (1.0 - norm_a[0]) + ratio_bb0[0]
        ex = norm_a[1] and sup_b[1] and ratio_ab0[1] and ratio_bb0[1]
        ws.append(Witness("||a/b0||*||b||/(1-||a||) + ||(b-b0)/b0|| < 1", val, 1.0, "<", ex))
    return ws


def _branch_deviation(norm_a, sup_b, inf_b, ratio_ab, plus_norm):
    ws = [Witness("inf b > 0", inf_b[0], 0.0, ">", inf_b[1])]
    if inf_b[0] > 0 and ratio_ab is not None and plus_norm is not None:
        val = sup_b[0] * (ratio_ab[0] + plus_norm[0])
        ex = norm_a[1] and sup_b[1] and ratio_ab[1] and plus_norm[1]
        ws.append(
            Witness("||b||*(||a/b|| + ||(lag - 1/(||b||e))+||) < 1 - ||a||",
                    val, 1.0 - norm_a[0], "<", ex)
        )
    return ws


def _b0_ratios(a_coeffs, b, t0, tau, sup_b, inf_b):
    """||a/b0|| summed over a_coeffs and ||(b-b0)/b0|| for b0 = min(b, 1/(tau e)).

    Returns (ratio_ab0, ratio_bb0) as (value, exact) pairs, or (None, None)
    when not boundable.
    """
    c0 = math.inf if tau <= 0 else 1.0 / (tau * math.e)
    if inf_b[0] <= 0:
        return None, None
    if sup_b[0] <= c0:
        # b0 coincides with b
        total, ex = 0.0, True
        for a in a_coeffs:
            try:
                r = _qc(ratio_sup_norm(a, b, t0))
            except ValueError:
                return None, None
            total += r[0]
            ex = ex and r[1]
        return (total, ex), (0.0, True)
    if c0 <= inf_b[0]:
        # b0 is the constant 1/(tau e)
        sa = sum(sup_norm(a, t0).value for a in a_coeffs)
        ex = all(_qc(sup_norm(a, t0))[1] for a in a_coeffs)
        return (sa * tau * math.e, ex), ((sup_b[0] - c0) / c0, sup_b[1])
    # mixed regime: bound via the pointwise floor of b0
    floor = min(inf_b[0], c0)
    sa = sum(sup_norm(a, t0).value for a in a_coeffs)
    return (sa / floor, False), ((sup_b[0] - c0) / floor, False)


def _plus_norm(tau_sup, sup_b, lag_exact):
    if sup_b[0] <= 0:
        return None
    s = 1.0 / (sup_b[0] * math.e)
    return (max(tau_sup - s, 0.0), lag_exact and sup_b[1])


def _t12_verdict(cid, claim, eq, a_coeffs, b, h, include):
    """Run the requested branches on a single-b reduction with profile ``b``
    read through delay ``h`` and neutral coefficients ``a_coeffs``."""
    t0 = eq.t0
    norm_a_v = sum(sup_norm(a, t0).value for a in a_coeffs)
    norm_a = (norm_a_v, all(_qc(sup_norm(a, t0))[1] for a in a_coeffs))
    sup_b = _qc(sup_norm(b, t0))
    inf_b = _qc(inf_bound(b, t0))
    lag_hi = _lag_range(h, t0)[1]
    try:
        ratio_ab_total, ratio_ex = 0.0, True
        for a in a_coeffs:
            r = _qc(ratio_sup_norm(a, b, t0))
            ratio_ab_total += r[0]
            ratio_ex = ratio_ex and r[1]
        ratio_ab = (ratio_ab_total, ratio_ex)
    except ValueError:
        ratio_ab = None

    branches = []
    if "window" in include:
        win_sup = _qc(sup_window_integral(b, h, t0))
        branches.append(("window", _branch_window(norm_a, sup_b, inf_b, win_sup, ratio_ab)))
    if "b0" in include:
        ratio_ab0, ratio_bb0 = _b0_ratios(a_coeffs, b, t0, lag_hi, sup_b, inf_b)
        branches.append(("b0", _branch_b0(norm_a, sup_b, inf_b, ratio_ab0, ratio_bb0)))
    if "deviation" in include:
        plus = _plus_norm(lag_hi, sup_b, True)
        branches.append(("deviation", _branch_deviation(norm_a, sup_b, inf_b, ratio_ab, plus)))
    return combine_branches(cid, claim, branches)


# ---------------------------------------------------------------------------
# single-delay window tests

def check_t1(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "t1", Claim.EXPONENTIAL
    gate = _gate_single(eq, cid, claim)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, _g), (b, h) = gate
    na = _nonneg_gate(b, eq.t0, cid, claim)
    if na:
        return na
    return _t12_verdict(cid, claim, eq, [a], b, h, include=("window",))


def check_t2(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "t2", Claim.EXPONENTIAL
    gate = _gate_single(eq, cid, claim)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, _g), (b, h) = gate
    if inf_bound(b, eq.t0).value <= 0:
        return not_applicable(cid, claim, "b must have a positive essential infimum")
    return _t12_verdict(cid, claim, eq, [a], b, h, include=("b0", "deviation"))


def check_t3(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "t3", Claim.EXPONENTIAL
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if eq.kernel is not None:
        return not_applicable(cid, claim, "distributed term present")
    if len(eq.delay) != 1 or len(eq.neutral) < 1:
        return not_applicable(cid, claim, "requires one delay term and at least one neutral term")
    if eq.has_unbounded_delay:
        return not_applicable(cid, claim, "requires bounded delays")
    b, h = eq.delay[0].coeff, eq.delay[0].delay
    na = _nonneg_gate(b, eq.t0, cid, claim)
    if na:
        return na
    a_coeffs = [t.coeff for t in eq.neutral]
    return _t12_verdict(cid, claim, eq, a_coeffs, b, h, include=("window", "b0", "deviation"))


def check_t4(eq: NeutralEquation) -> CriterionVerdict:
    """Several delay terms folded into one: summed coefficient, worst lag."""
    cid, claim = "t4", Claim.EXPONENTIAL
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if eq.kernel is not None:
        return not_applicable(cid, claim, "distributed term present")
    if len(eq.neutral) != 1 or len(eq.delay) < 1:
        return not_applicable(cid, claim, "requires one neutral term and delay terms")
    if eq.has_unbounded_delay:
        return not_applicable(cid, claim, "requires bounded delays")
    t0 = eq.t0
    for term in eq.delay:
        if inf_bound(term.coeff, t0).value < 0:
            return not_applicable(cid, claim, "every delay coefficient must be nonnegative")
    a = eq.neutral[0].coeff
    bs = [t.coeff for t in eq.delay]
    tau_bar = max(_lag_range(t.delay, t0)[1] for t in eq.delay)

    all_const = all(isinstance(b, Constant) for b in bs)
    if all_const:
        bbar = Constant(sum(b.c for b in bs))
        return _t12_verdict(
            cid, claim, eq, [a], bbar, ConstantLag(tau_bar),
            include=("window", "b0", "deviation"),
        )

    # conservative scalar reduction for non-constant summands
    sup_b = (sum(sup_norm(b, t0).value for b in bs), False)
    inf_b = (sum(inf_bound(b, t0).value for b in bs), False)
    norm_a = _qc(sup_norm(a, t0))
    win = sum(sup_window_integral(b, ConstantLag(tau_bar), t0).value for b in bs)
    win_sup = (win, False)
    ratio_ab = (norm_a[0] / inf_b[0], False) if inf_b[0] > 0 else None
    c0 = math.inf if tau_bar <= 0 else 1.0 / (tau_bar * math.e)
    if inf_b[0] > 0:
        floor = min(inf_b[0], c0)
        ratio_ab0 = (norm_a[0] / floor, False)
        ratio_bb0 = (max(sup_b[0] - c0, 0.0) / floor, False)
    else:
        ratio_ab0 = ratio_bb0 = None
    branches = [
        ("window", _branch_window(norm_a, sup_b, inf_b, win_sup, ratio_ab)),
        ("b0", _branch_b0(norm_a, sup_b, inf_b, ratio_ab0, ratio_bb0)),
        ("deviation", _branch_deviation(norm_a, sup_b, inf_b, ratio_ab,
                                        _plus_norm(tau_bar, sup_b, False))),
    ]
    return combine_branches(cid, claim, branches)


# ---------------------------------------------------------------------------
# constant-coefficient specializations (constant or bounded-below b)

def _const_b(b):
    if isinstance(b, Constant):
        return b.c
    return None


def check_cor1(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "cor1", Claim.EXPONENTIAL
    gate = _gate_single(eq, cid, claim)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, _g), (b, h) = gate
    bc = _const_b(b)
    if bc is None or bc <= 0:
        return not_applicable(cid, claim, "requires a positive constant delay coefficient")
    tau = _lag_range(h, eq.t0)[1]
    na = _qc(sup_norm(a, eq.t0))
    return combine_branches(cid, claim, [
        ("main", [
            Witness("b*tau <= 1/e", bc * tau, _INV_E, "<="),
            Witness("||a|| < 1/2", na[0], 0.5, "<", na[1]),
        ]),
    ])


def check_cor2a_low(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "cor2a-a", Claim.EXPONENTIAL
    gate = _gate_single(eq, cid, claim)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, _g), (b, h) = gate
    na_v = _nonneg_gate(b, eq.t0, cid, claim)
    if na_v:
        return na_v
    tau = _lag_range(h, eq.t0)[1]
    floor = math.inf if tau <= 0 else 1.0 / (tau * math.e)
    na = _qc(sup_norm(a, eq.t0))
    ib = _qc(inf_bound(b, eq.t0))
    sb = _qc(sup_norm(b, eq.t0))
    return combine_branches(cid, claim, [
        ("main", [
            Witness("b >= 1/(tau*e)", ib[0], floor, ">=", ib[1]),
            Witness("tau*||b|| < (2/e)(1-||a||)",
                    tau * sb[0], (2.0 / math.e) * (1.0 - na[0]), "<", sb[1] and na[1]),
        ]),
    ])


def check_cor2a_sep(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "cor2a-b", Claim.EXPONENTIAL
    gate = _gate_single(eq, cid, claim)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, _g), (b, h) = gate
    if inf_bound(b, eq.t0).value <= 0:
        return not_applicable(cid, claim, "b must have a positive essential infimum")
    lag_lo, tau = _lag_range(h, eq.t0)
    na = _qc(sup_norm(a, eq.t0))
    sb = _qc(sup_norm(b, eq.t0))
    try:
        rab = _qc(ratio_sup_norm(a, b, eq.t0))
    except ValueError:
        return not_applicable(cid, claim, "cannot bound ||a/b||")
    return combine_branches(cid, claim, [
        ("main", [
            Witness("lag >= 1/(||b||e)", lag_lo, 1.0 / (sb[0] * math.e), ">=", sb[1]),
            Witness("||a/b||*||b|| + tau*||b|| < 1 + 1/e - ||a||",
                    rab[0] * sb[0] + tau * sb[0], 1.0 + _INV_E - na[0], "<",
                    rab[1] and sb[1] and na[1]),
        ]),
    ])


def check_cor2b_twosided(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "cor2b-a", Claim.EXPONENTIAL
    gate = _gate_single(eq, cid, claim)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, _g), (b, h) = gate
    bc = _const_b(b)
    if bc is None or bc <= 0:
        return not_applicable(cid, claim, "requires a positive constant delay coefficient")
    tau = _lag_range(h, eq.t0)[1]
    na = _qc(sup_norm(a, eq.t0))
    return combine_branches(cid, claim, [
        ("main", [
            Witness("1/e <= b*tau", _INV_E, bc * tau, "<="),
            Witness("b*tau < (2/e)(1-||a||)",
                    bc * tau, (2.0 / math.e) * (1.0 - na[0]), "<", na[1]),
        ]),
    ])


def check_cor2b_wide(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "cor2b-b", Claim.EXPONENTIAL
    gate = _gate_single(eq, cid, claim)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, _g), (b, h) = gate
    bc = _const_b(b)
    if bc is None or bc <= 0:
        return not_applicable(cid, claim, "requires a positive constant delay coefficient")
    lag_lo, tau = _lag_range(h, eq.t0)
    na = _qc(sup_norm(a, eq.t0))
    return combine_branches(cid, claim, [
        ("main", [
            Witness("1/e <= b*inf lag", _INV_E, bc * lag_lo, "<="),
            Witness("b*tau < 1 + 1/e - 2||a||",
                    bc * tau, 1.0 + _INV_E - 2.0 * na[0], "<", na[1]),
        ]),
    ])


# ---------------------------------------------------------------------------
# unbounded delays

def check_t2u(eq: NeutralEquation) -> CriterionVerdict:
    """Unbounded-delay variant; the neutral influence enters through
    A(t) = a(t) b(g(t)) / b(t)."""
    cid, claim = "t2u", Claim.ASYMPTOTIC
    gate = _gate_single(eq, cid, claim, need_bounded=False)
    if isinstance(gate, CriterionVerdict):
        return gate
    (a, g), (b, h) = gate
    if not eq.has_unbounded_delay:
        return not_applicable(cid, claim, "bounded delays are covered by the bounded-delay tests")
    t0 = eq.t0
    if inf_bound(b, t0).value < 0:
        return not_applicable(cid, claim, "delay coefficient may be negative")
    if not nonzero_ae(b):
        return not_applicable(cid, claim, "b must be nonzero almost everywhere")
    if not diverges(b):
        return not_applicable(cid, claim, "b must have a divergent integral")
    try:
        win_g = sup_window_integral(b, g, t0)
    except ValueError as exc:
        return not_applicable(cid, claim, f"neutral-window integral unavailable: {exc}")
    if not math.isfinite(win_g.value):
        return not_applicable(cid, claim, "integral of b over the neutral window is unbounded")

    if isinstance(b, Constant):
        norm_A = _qc(sup_norm(a, t0))
    elif isinstance(a, Constant) and isinstance(b, Reciprocal) and isinstance(g, Proportional):
        norm_A = (abs(a.c) / g.lam, True)
    else:
        sup_a = sup_norm(a, t0).value
        sup_b = sup_norm(b, t0).value
        floor = _inf_abs(b, t0).value
        if floor <= 0:
            return not_applicable(cid, claim, "cannot bound A(t) = a b(g)/b")
        norm_A = (sup_a * sup_b / floor, False)

    try:
        wh_sup = _qc(sup_window_integral(b, h, t0))
        wh_inf = _qc(inf_window_integral(b, h, t0))
    except ValueError as exc:
        return not_applicable(cid, claim, f"delay-window integral unavailable: {exc}")
    return combine_branches(cid, claim, [
        ("window", [
            Witness("sup window integral <= 1/e", wh_sup[0], _INV_E, "<=", wh_sup[1]),
            Witness("||A|| < 1/2", norm_A[0], 0.5, "<", norm_A[1]),
        ]),
        ("interval", [
            Witness("1/e < inf window integral", _INV_E, wh_inf[0], "<", wh_inf[1]),
            Witness("sup window integral < 1 + 1/e - 2||A||",
                    wh_sup[0], 1.0 + _INV_E - 2.0 * norm_A[0], "<",
                    wh_sup[1] and norm_A[1]),
        ]),
    ])


def check_cor3(eq: NeutralEquation) -> CriterionVerdict:
    """Proportional-delay equation with a 1/t coefficient on [1, inf)."""
    cid, claim = "cor3", Claim.ASYMPTOTIC
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if eq.kernel is not None or len(eq.neutral) != 1 or len(eq.delay) != 1:
        return not_applicable(cid, claim, "requires exactly one neutral and one delay term")
    a, g = eq.neutral[0].coeff, eq.neutral[0].delay
    b, h = eq.delay[0].coeff, eq.delay[0].delay
    if not (isinstance(a, Constant) and isinstance(g, Proportional)
            and isinstance(b, Reciprocal) and isinstance(h, Proportional)):
        return not_applicable(
            cid, claim,
            "requires constant neutral coefficient and c/t delay coefficient "
            "with proportional delays",
        )
    if eq.t0 < 1.0:
        return not_applicable(cid, claim, "requires t0 >= 1")
    if b.c <= 0:
        return not_applicable(cid, claim, "requires a positive delay coefficient")
    bln = b.c * math.log(1.0 / h.lam)
    aa = abs(a.c)
    return combine_branches(cid, claim, [
        ("window", [
            Witness("b*ln(1/lambda) <= 1/e", bln, _INV_E, "<="),
            Witness("|a| < 1/2", aa, 0.5, "<"),
        ]),
        ("interval", [
            Witness("1/e < b*ln(1/lambda)", _INV_E, bln, "<"),
            Witness("b*ln(1/lambda) < 1 + 1/e - 2|a|", bln, 1.0 + _INV_E - 2.0 * aa, "<"),
        ]),
    ])


# ---------------------------------------------------------------------------
# subset tests over several delay terms

_SUBSET_LIMIT = 16


class _DelayItem:
    """Certified scalars for one delay term (or the distributed term folded
    into an equivalent delay term)."""

    __slots__ = ("sup", "inf", "tau", "lag_lo", "const_c", "dev_exact")

    def __init__(self, sup, inf, tau, lag_lo, const_c, dev_exact):
        self.sup = sup
        self.inf = inf
        self.tau = tau
        self.lag_lo = lag_lo
        self.const_c = const_c
        self.dev_exact = dev_exact


def _delay_items(eq):
    t0 = eq.t0
    items = []
    for term in eq.delay:
        lo, hi = _lag_range(term.delay, t0)
        items.append(_DelayItem(
            _qc(sup_norm(term.coeff, t0)),
            _qc(inf_bound(term.coeff, t0)),
            hi, lo,
            term.coeff.c if isinstance(term.coeff, Constant) else None,
            isinstance(term.delay, (ConstantLag, SinusoidLag)),
        ))
    if eq.kernel is not None:
        k = eq.kernel
        lo, hi = _lag_range(k.window, t0)
        if not math.isfinite(hi):
            return None
        masses = sorted([k.mass(lo), k.mass(hi)])
        exact_window = isinstance(k.window, ConstantLag)
        items.append(_DelayItem(
            (masses[1], exact_window),
            (masses[0], exact_window),
            hi, lo,
            masses[1] if exact_window else None,
            isinstance(k.window, (ConstantLag, SinusoidLag)),
        ))
    return items


def _abs_dev(item, s):
    """sup over t of |lag_k(t) - s| from the certified lag range."""
    val = max(abs(item.tau - s), abs(item.lag_lo - s))
    return val, item.dev_exact


def _ratio_to_sum(item, j_items, inf_sum):
    """||b_k / sum_{J} b|| with exact constant path."""
    if item.const_c is not None and all(it.const_c is not None for it in j_items):
        total = sum(it.const_c for it in j_items)
        return (abs(item.const_c) / total, True) if total > 0 else None
    if inf_sum[0] <= 0:
        return None
    return (item.sup[0] / inf_sum[0], False)


def _ratio_a_to_sum(a, t0, j_items, inf_sum):
    if all(it.const_c is not None for it in j_items):
        total = sum(it.const_c for it in j_items)
        if total > 0:
            try:
                return _qc(ratio_sup_norm(a, Constant(total), t0))
            except ValueError:
                return None
    if inf_sum[0] <= 0:
        return None
    return (sup_norm(a, t0).value / inf_sum[0], False)


def _subset_verdict(eq, cid, subsets, deviation):
    """Engine for the subset tests; ``deviation`` switches the per-term lag
    weight from the plain lag bound to the |lag - 1/(Be)| deviation."""
    claim = Claim.EXPONENTIAL
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if len(eq.neutral) != 1:
        return not_applicable(cid, claim, "requires exactly one neutral term")
    if len(eq.delay) + (1 if eq.kernel is not None else 0) < 1:
        return not_applicable(cid, claim, "requires at least one delay term")
    if eq.has_unbounded_delay:
        return not_applicable(cid, claim, "requires bounded delays")
    items = _delay_items(eq)
    if items is None:
        return not_applicable(cid, claim, "distributed window is unbounded")
    m = len(items)
    if m > _SUBSET_LIMIT:
        return not_applicable(
            cid, claim,
            f"{m} delay terms exceed the subset enumeration limit {_SUBSET_LIMIT}; "
            "use the full-set or single-term variants directly",
        )
    t0 = eq.t0
    a = eq.neutral[0].coeff
    norm_a = _qc(sup_norm(a, t0))
    s_total = sum(it.sup[0] for it in items)
    s_exact = all(it.sup[1] for it in items)

    if subsets == "full":
        index_sets = [tuple(range(m))]
    elif subsets == "singletons":
        index_sets = [(k,) for k in range(m)]
    else:
        index_sets = [
            tuple(k for k in range(m) if mask >> k & 1)
            for mask in range(1, 1 << m)
        ]

    branches = []
    for J in index_sets:
        j_items = [items[k] for k in J]
        inf_sum = (sum(it.inf[0] for it in j_items), all(it.inf[1] for it in j_items))
        ws = [Witness("inf of combined coefficient > 0", inf_sum[0], 0.0, ">", inf_sum[1])]
        if inf_sum[0] > 0:
            ra = _ratio_a_to_sum(a, t0, j_items, inf_sum)
            b_big = sum(it.sup[0] for it in j_items)
            ratios = [_ratio_to_sum(it, j_items, inf_sum) for it in items]
            if ra is not None and all(r is not None for r in ratios):
                acc = ra[0]
                ex = ra[1] and norm_a[1] and s_exact
                for k in J:
                    if deviation:
                        w_k = _abs_dev(items[k], 1.0 / (b_big * math.e))
                    else:
                        w_k = (items[k].tau, True)
                    acc += w_k[0] * ratios[k][0]
                    ex = ex and w_k[1] and ratios[k][1]
                val = acc * s_total / (1.0 - norm_a[0])
                for k in range(m):
                    if k not in J:
                        val += ratios[k][0]
                        ex = ex and ratios[k][1]
                label = ("subset bound with lag deviations < 1" if deviation
                         else "subset bound with lag spans < 1")
                ws.append(Witness(label, val, 1.0, "<", ex))
        branches.append((f"J={{{','.join(str(k + 1) for k in J)}}}", ws))

    # prefer holding subsets, then the widest margin on the main inequality
    def margin(ws):
        main = [w for w in ws if w.op == "<"]
        return (main[-1].rhs - main[-1].lhs) if main else -math.inf

    order = sorted(
        range(len(branches)),
        key=lambda i: (-_branch_state(branches[i][1]), -margin(branches[i][1])),
    )
    ordered = [branches[i] for i in order]
    out = combine_branches(cid, claim, ordered)
    if out.verdict is not Verdict.SATISFIED:
        # keep only the closest subset rather than every enumerated one
        name, ws = ordered[0]
        out = CriterionVerdict(cid, out.verdict, claim, tuple(ws), branch=name)
    chosen = tuple(int(s) for s in out.branch.strip("J={}").split(",") if s)
    return CriterionVerdict(
        out.criterion, out.verdict, out.claim, out.witnesses,
        subset=chosen, branch=out.branch,
    )


def check_t5(eq: NeutralEquation) -> CriterionVerdict:
    return _subset_verdict(eq, "t5", "all", deviation=False)


def check_t6(eq: NeutralEquation) -> CriterionVerdict:
    return _subset_verdict(eq, "t6", "all", deviation=True)


def check_cor4(eq: NeutralEquation) -> CriterionVerdict:
    return _subset_verdict(eq, "cor4", "full", deviation=False)


def check_cor5(eq: NeutralEquation) -> CriterionVerdict:
    return _subset_verdict(eq, "cor5", "singletons", deviation=False)


def check_cor6(eq: NeutralEquation) -> CriterionVerdict:
    return _subset_verdict(eq, "cor6", "full", deviation=True)


def check_cor7(eq: NeutralEquation) -> CriterionVerdict:
    return _subset_verdict(eq, "cor7", "singletons", deviation=True)


def check_cor8(eq: NeutralEquation) -> CriterionVerdict:
    """Full-set variant with every lag bounded below by 1/(sum||b||e)."""
    cid, claim = "cor8", Claim.EXPONENTIAL
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if len(eq.neutral) != 1:
        return not_applicable(cid, claim, "requires exactly one neutral term")
    if len(eq.delay) + (1 if eq.kernel is not None else 0) < 1:
        return not_applicable(cid, claim, "requires at least one delay term")
    if eq.has_unbounded_delay:
        return not_applicable(cid, claim, "requires bounded delays")
    items = _delay_items(eq)
    if items is None:
        return not_applicable(cid, claim, "distributed window is unbounded")
    t0 = eq.t0
    a = eq.neutral[0].coeff
    norm_a = _qc(sup_norm(a, t0))
    s_total = sum(it.sup[0] for it in items)
    s_exact = all(it.sup[1] for it in items)
    inf_sum = (sum(it.inf[0] for it in items), all(it.inf[1] for it in items))
    ws = [Witness("inf of combined coefficient > 0", inf_sum[0], 0.0, ">", inf_sum[1])]
    if inf_sum[0] > 0 and s_total > 0:
        ra = _ratio_a_to_sum(a, t0, items, inf_sum)
        ratios = [_ratio_to_sum(it, items, inf_sum) for it in items]
        if ra is not None and all(r is not None for r in ratios):
            min_lag = min(it.lag_lo for it in items)
            ws.append(Witness("every lag >= 1/(sum||b||e)",
                              min_lag, 1.0 / (s_total * math.e), ">=", s_exact))
            lhs = ra[0]
            ex = ra[1] and norm_a[1] and s_exact
            ratio_sum = 0.0
            for k, it in enumerate(items):
                lhs += it.tau * ratios[k][0]
                ratio_sum += ratios[k][0]
                ex = ex and ratios[k][1] and it.dev_exact
            lhs *= s_total
            rhs = 1.0 + _INV_E * ratio_sum - norm_a[0]
            ws.append(Witness("(||a/b|| + sum tau_k||b_k/b||)*sum||b_j|| "
                              "< 1 + (1/e)sum||b_k/b|| - ||a||", lhs, rhs, "<", ex))
    return combine_branches(cid, claim, [("main", ws)])


# ---------------------------------------------------------------------------
# distributed term as the sole delayed-state channel

def check_t7(eq: NeutralEquation) -> CriterionVerdict:
    cid, claim = "t7", Claim.EXPONENTIAL
    if not eq.well_posed:
        return not_applicable(cid, claim, "ill-posed: sum of neutral sup-norms is not < 1")
    if eq.kernel is None:
        return not_applicable(cid, claim, "requires a distributed term")
    if eq.delay:
        return not_applicable(
            cid, claim, "mixed delay and distributed terms are covered by the subset tests"
        )
    if len(eq.neutral) > 1:
        return not_applicable(cid, claim, "requires at most one neutral term")
    if eq.has_unbounded_delay:
        return not_applicable(cid, claim, "requires a bounded window")
    t0 = eq.t0
    k = eq.kernel
    a_coeffs = [t.coeff for t in eq.neutral] or [Constant(0.0)]
    lo, hi = _lag_range(k.window, t0)
    masses = sorted([k.mass(lo), k.mass(hi)])
    if masses[0] < 0:
        return not_applicable(cid, claim, "induced coefficient may be negative")
    if isinstance(k.window, ConstantLag):
        b_eff = Constant(masses[1])
        return _t12_verdict(cid, claim, eq, a_coeffs, b_eff, k.window,
                            include=("window", "b0", "deviation"))
    norm_a_v = sum(sup_norm(a, t0).value for a in a_coeffs)
    norm_a = (norm_a_v, all(_qc(sup_norm(a, t0))[1] for a in a_coeffs))
    sup_b = (masses[1], False)
    inf_b = (masses[0], False)
    win_sup = (masses[1] * hi, False)
    ratio_ab = (norm_a_v / inf_b[0], False) if inf_b[0] > 0 else None
    c0 = math.inf if hi <= 0 else 1.0 / (hi * math.e)
    if inf_b[0] > 0:
        floor = min(inf_b[0], c0)
        ratio_ab0 = (norm_a_v / floor, False)
        ratio_bb0 = (max(sup_b[0] - c0, 0.0) / floor, False)
    else:
        ratio_ab0 = ratio_bb0 = None
    branches = [
        ("window", _branch_window(norm_a, sup_b, inf_b, win_sup, ratio_ab)),
        ("b0", _branch_b0(norm_a, sup_b, inf_b, ratio_ab0, ratio_bb0)),
        ("deviation", _branch_deviation(norm_a, sup_b, inf_b, ratio_ab,
                                        _plus_norm(hi, sup_b, False))),
    ]
    return combine_branches(cid, claim, branches)


# ---------------------------------------------------------------------------
# registry

def _make_registry():
    from . import literature

    reg = {
        "t1": check_t1,
        "t2": check_t2,
        "t3": check_t3,
        "t4": check_t4,
        "t5": check_t5,
        "t6": check_t6,
        "t7": check_t7,
        "t2u": check_t2u,
        "cor1": check_cor1,
        "cor2a-a": check_cor2a_low,
        "cor2a-b": check_cor2a_sep,
        "cor2b-a": check_cor2b_twosided,
        "cor2b-b": check_cor2b_wide,
        "cor3": check_cor3,
        "cor4": check_cor4,
        "cor5": check_cor5,
        "cor6": check_cor6,
        "cor7": check_cor7,
        "cor8": check_cor8,
    }
    reg.update(literature.LITERATURE)
    return reg


CRITERIA = _make_registry()


def criterion_ids():
    return list(CRITERIA)


def evaluate_all(eq: NeutralEquation, ids=None) -> list[CriterionVerdict]:
    """Run every (or the selected) criteria; sorted by claim strength, then
    Satisfied first, then id."""
    selected = list(CRITERIA) if ids is None else list(ids)
    out = []
    for cid in selected:
        if cid not in CRITERIA:
            raise KeyError(f"unknown criterion {cid!r}")
        out.append(CRITERIA[cid](eq))
    out.sort(key=lambda v: v.sort_key())
    return out
