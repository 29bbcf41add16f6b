"""Verdicts for the comparison catalog of published tests (positivity,
window-integral, fixed-point, characteristic-root and omega-tuned families)
and the two numeric helpers behind them: the absolute-integral constant
sigma(omega) and the positive-root certificate for the characteristic
function."""

import math

import pytest

from ndde import (
    Constant,
    ConstantLag,
    NeutralEquation,
    PiecewisePeriodic,
    Proportional,
    Sinusoid,
    Term,
    UniformKernel,
    two_delay_benchmark,
)
from ndde.benchmarks import CLOSED_FORM_THRESHOLDS, c01star_interval
from ndde.literature import (
    LITERATURE,
    char_root_positive,
    check_c01,
    check_c01star,
    check_p1,
    check_p2,
    check_p2a,
    check_p3,
    check_p4,
    check_p5,
    check_p6,
    check_p7,
    check_p8,
    check_p9,
    compute_sigma,
)
from ndde.verdicts import Claim, Verdict

E = math.e
C, L = Constant, ConstantLag


def wit(v, label):
    for w in v.witnesses:
        if w.label == label:
            return w
    raise AssertionError(f"no witness {label!r} in {[w.label for w in v.witnesses]}")


# ---------------------------------------------------------------------------
# sigma(omega)


def test_sigma_is_one_up_to_the_critical_lag():
    assert compute_sigma(0.0) == 1.0
    assert compute_sigma(0.25) == 1.0
    assert compute_sigma(1.0 / E) == 1.0


def test_sigma_quadrature_beyond_the_critical_lag():
    s_half = compute_sigma(0.5)
    assert s_half == pytest.approx(1.08309612, abs=1e-6)
    assert compute_sigma(0.8) > s_half
    assert compute_sigma(1.5) > 10.0


def test_sigma_domain_errors():
    with pytest.raises(ValueError, match="nonnegative"):
        compute_sigma(-0.1)
    with pytest.raises(ValueError, match="diverges"):
        compute_sigma(math.pi / 2)
    with pytest.raises(ValueError, match="diverges"):
        compute_sigma(2.0)


# ---------------------------------------------------------------------------
# characteristic-root certificate


def test_char_root_certificate():
    assert char_root_positive(0.1, 0.01, 0.1, 0.1)
    assert not char_root_positive(0.9, 1.0, 1.0, 1.0)
    # degenerate exponent-free case: F(lam) = lam - 0.5 has the root 0.5
    assert char_root_positive(0.0, 0.5, 0.0, 0.0)


# ---------------------------------------------------------------------------
# p1: nonnegative-data positivity test


def test_p1_satisfied_via_the_sum_branch():
    eq = NeutralEquation(
        neutral=(Term(C(-0.2), L(1.0)),),
        delay=(Term(C(1.0), L(0.0)), Term(C(0.1), L(1.0))),
    )
    v = check_p1(eq)
    assert v.verdict is Verdict.SATISFIED
    assert v.claim is Claim.TENDS_TO_ZERO
    assert v.branch == "sum"
    w = wit(v, "inf p + inf q > (sup p + sup q)(c + sigma sup q)")
    assert w.lhs == pytest.approx(1.1)
    assert w.rhs == pytest.approx(0.33)


def test_p1_shape_gates():
    v = check_p1(two_delay_benchmark(1.0, 1.0))
    assert v.verdict is Verdict.NOT_APPLICABLE
    assert "two delay terms" in v.reason

    flipped = NeutralEquation(
        neutral=(Term(C(0.2), L(1.0)),),
        delay=(Term(C(1.0), L(0.0)), Term(C(0.1), L(1.0))),
    )
    v = check_p1(flipped)
    assert v.verdict is Verdict.NOT_APPLICABLE
    assert "wrong sign" in v.reason


# ---------------------------------------------------------------------------
# p2 / p2a: window-integral tests


def test_p2_window_threshold():
    sat = check_p2(two_delay_benchmark(1.0, 1.0))
    assert sat.verdict is Verdict.SATISFIED
    assert sat.claim is Claim.ASYMPTOTIC
    w = wit(sat, "sup window integral < 3/2 - 2p(2-p)")
    assert w.lhs == pytest.approx(1.0 / 3.0)
    assert w.rhs == pytest.approx(7.0 / 18.0)
    assert w.exact

    # strict inequality fails at the exact threshold
    assert check_p2(two_delay_benchmark(7.0 / 6.0, 1.0)).verdict is Verdict.VIOLATED
    assert check_p2(two_delay_benchmark(1.2, 1.0)).verdict is Verdict.VIOLATED


def test_p2_rejects_a_negative_delay_coefficient():
    eq = NeutralEquation(
        neutral=(Term(C(1.0 / 3.0), L(1.0)),),
        delay=(Term(C(-0.5), L(1.0)),),
    )
    v = check_p2(eq)
    assert v.verdict is Verdict.NOT_APPLICABLE
    assert "negative" in v.reason


def test_p2a_branches():
    mid = check_p2a(two_delay_benchmark(2.4, 1.0))
    assert mid.verdict is Verdict.SATISFIED
    assert mid.branch == "mid-p"
    w = wit(mid, "sup window integral < sqrt(2(1-2p))")
    assert w.lhs == pytest.approx(0.8)
    assert w.rhs == pytest.approx(math.sqrt(2.0 / 3.0))
    assert check_p2a(two_delay_benchmark(2.5, 1.0)).verdict is Verdict.VIOLATED

    small = check_p2a(
        NeutralEquation(
            neutral=(Term(C(0.2), L(1.0)),), delay=(Term(C(0.5), L(2.0)),)
        )
    )
    assert small.verdict is Verdict.SATISFIED
    assert small.branch == "small-p"


# ---------------------------------------------------------------------------
# p3: lag-weighted norm sum with an undelayed anchor


def _p3_eq(b=0.3, kernel=None):
    return NeutralEquation(
        neutral=(Term(C(0.2), L(1.0)),),
        delay=(Term(C(1.0), L(0.0)), Term(C(b), L(1.0))),
        kernel=kernel,
    )


def test_p3_norm_sum():
    label = "sum|a_neutral| + sum|b_k| tau_k + |kernel mass| < 1"
    v = check_p3(_p3_eq())
    assert v.verdict is Verdict.SATISFIED
    assert wit(v, label).lhs == pytest.approx(0.5)

    with_kernel = check_p3(_p3_eq(kernel=UniformKernel(0.1, L(1.0))))
    assert with_kernel.verdict is Verdict.SATISFIED
    assert wit(with_kernel, label).lhs == pytest.approx(0.6)

    heavy = check_p3(_p3_eq(b=0.9))
    assert heavy.verdict is Verdict.VIOLATED
    assert wit(heavy, label).lhs == pytest.approx(1.1)


# ---------------------------------------------------------------------------
# p4: small products of coefficients and lags


def test_p4_flips_at_its_closed_form_threshold():
    thr = CLOSED_FORM_THRESHOLDS["p4"]
    assert thr == pytest.approx(5.0 / 9.0)
    assert check_p4(two_delay_benchmark(thr - 1e-6, 1.0)).verdict is Verdict.SATISFIED
    assert check_p4(two_delay_benchmark(thr + 1e-6, 1.0)).verdict is Verdict.VIOLATED


# ---------------------------------------------------------------------------
# p5: dominant undelayed damping


def _p5_eq(b=0.5, neutral_coeff=None):
    return NeutralEquation(
        neutral=(Term(neutral_coeff or C(0.3), L(1.0)),),
        delay=(Term(Sinusoid(1.0, 0.2, 1.0), L(0.0)), Term(C(b), L(1.0))),
    )


def test_p5_dominant_damping():
    v = check_p5(_p5_eq())
    assert v.verdict is Verdict.SATISFIED
    assert v.claim is Claim.ASYMPTOTIC
    w = wit(v, "sup|b| < inf a")
    assert w.lhs == pytest.approx(0.5)
    assert w.rhs == pytest.approx(0.8)
    assert w.exact

    assert check_p5(_p5_eq(b=0.9)).verdict is Verdict.VIOLATED

    jumpy = check_p5(
        _p5_eq(neutral_coeff=PiecewisePeriodic(2.0, (0.0, 1.0), (0.1, 0.2)))
    )
    assert jumpy.verdict is Verdict.NOT_APPLICABLE
    assert "differentiable" in jumpy.reason


# ---------------------------------------------------------------------------
# p6: common-lag fixed-point contraction


def _p6_eq(b):
    return NeutralEquation(
        neutral=(Term(C(0.3), L(1.0)),),
        delay=(Term(C(1.0), L(0.0)), Term(C(b), L(1.0))),
    )


def test_p6_contraction():
    label = "|c| + |b + a c|/a < 1"
    v = check_p6(_p6_eq(0.2))
    assert v.verdict is Verdict.SATISFIED
    assert wit(v, label).lhs == pytest.approx(0.8)

    v = check_p6(_p6_eq(0.5))
    assert v.verdict is Verdict.VIOLATED
    assert wit(v, label).lhs == pytest.approx(1.1)


# ---------------------------------------------------------------------------
# p7: characteristic-root certificate, L2 claim


def test_p7_root_certificate():
    eq = NeutralEquation(
        neutral=(Term(C(0.1), L(0.1)),), delay=(Term(C(0.01), L(0.1)),)
    )
    v = check_p7(eq)
    assert v.verdict is Verdict.SATISFIED
    assert v.claim is Claim.L2
    w = wit(v, "max F(lambda) > 0 over the root scan")
    assert w.lhs > 0.0
    assert not w.exact

    rootless = NeutralEquation(
        neutral=(Term(C(0.9), L(1.0)),), delay=(Term(C(1.0), L(1.0)),)
    )
    v = check_p7(rootless)
    assert v.verdict is Verdict.VIOLATED
    assert wit(v, "max F(lambda) > 0 over the root scan").lhs == pytest.approx(
        -1.0, abs=1e-6
    )

    negative = NeutralEquation(
        neutral=(Term(C(-0.1), L(0.1)),), delay=(Term(C(0.01), L(0.1)),)
    )
    assert check_p7(negative).verdict is Verdict.NOT_APPLICABLE


# ---------------------------------------------------------------------------
# p8: coefficient sum within the 1/(tau e) ceiling


def test_p8_ceiling_is_non_strict():
    thr = CLOSED_FORM_THRESHOLDS["p8"]
    assert thr == pytest.approx(3.0 / E)
    at = check_p8(two_delay_benchmark(thr, 1.0))
    assert at.verdict is Verdict.SATISFIED
    w = wit(at, "sup sum p_k <= 1/(tau e)")
    assert w.lhs == pytest.approx(w.rhs)
    assert check_p8(two_delay_benchmark(thr + 1e-6, 1.0)).verdict is Verdict.VIOLATED


def test_p8_requires_bounded_delays():
    eq = NeutralEquation(
        neutral=(Term(C(0.2), L(1.0)),),
        delay=(Term(C(0.5), Proportional(0.5)),),
        t0=1.0,
    )
    v = check_p8(eq)
    assert v.verdict is Verdict.NOT_APPLICABLE
    assert "bounded" in v.reason


# ---------------------------------------------------------------------------
# p9 / c01 / c01star: omega-tuned family


def test_p9_records_the_tuned_omega():
    v = check_p9(two_delay_benchmark(1.0, 2.0))
    assert v.verdict is Verdict.SATISFIED
    assert v.claim is Claim.EXPONENTIAL
    assert v.omega == pytest.approx(0.5)
    assert wit(v, "p/(1-q) > 0").lhs == pytest.approx(0.5)
    assert wit(v, "sum|q_j| < 1").lhs == pytest.approx(1.0 / 3.0)
    w = wit(v, "omega-tuned bound below (1 - sum|q_j|)/sigma(omega)")
    assert w.lhs == pytest.approx(1.0 / 3.0)
    assert w.rhs == pytest.approx(0.6155189, abs=1e-6)
    # the tuned omega exceeds 1/e, so sigma came from quadrature
    assert not w.exact


def test_p9_requires_constant_coefficients():
    eq = NeutralEquation(
        neutral=(Term(C(1.0 / 3.0), L(1.0)),),
        delay=(Term(Sinusoid(0.4, 0.1, 1.0), L(1.0)),),
    )
    v = check_p9(eq)
    assert v.verdict is Verdict.NOT_APPLICABLE
    assert "constant-coefficient" in v.reason


def test_c01_tunes_omega_to_the_kink():
    v = check_c01(two_delay_benchmark(0.9, 0.5))
    assert v.verdict is Verdict.SATISFIED
    assert v.omega == pytest.approx(0.45)

    negative = NeutralEquation(
        neutral=(Term(C(1.0 / 3.0), L(0.5)),), delay=(Term(C(-1.0 / 3.0), L(0.9)),)
    )
    assert check_c01(negative).verdict is Verdict.NOT_APPLICABLE


def test_c01star_matches_its_interval():
    lo, hi = c01star_interval(1.0)
    assert lo == pytest.approx(2.0 / E - 0.5)
    assert hi == pytest.approx(2.0 / E + 0.5)
    for tau, want in [
        (lo + 1e-6, Verdict.SATISFIED),
        (lo - 1e-6, Verdict.VIOLATED),
        (hi - 1e-6, Verdict.SATISFIED),
        (hi + 1e-6, Verdict.VIOLATED),
    ]:
        v = check_c01star(two_delay_benchmark(tau, 1.0))
        assert v.verdict is want, (tau, v)
        assert v.omega == pytest.approx(1.0 / E)


def test_c01star_interval_shrinks_with_the_neutral_lag():
    lo0, hi0 = c01star_interval(0.0)
    lo1, hi1 = c01star_interval(1.0)
    assert lo0 < lo1 < hi1 < hi0
    mid = 0.5 * (lo1 + hi1)
    assert check_c01star(two_delay_benchmark(mid, 0.5)).verdict is Verdict.SATISFIED


# ---------------------------------------------------------------------------
# catalog shape


def test_catalog_ids_and_claims():
    claims = {
        "p1": Claim.TENDS_TO_ZERO,
        "p2": Claim.ASYMPTOTIC,
        "p2a": Claim.ASYMPTOTIC,
        "p3": Claim.TENDS_TO_ZERO,
        "p4": Claim.TENDS_TO_ZERO,
        "p5": Claim.ASYMPTOTIC,
        "p6": Claim.TENDS_TO_ZERO,
        "p7": Claim.L2,
        "p8": Claim.EXPONENTIAL,
        "p9": Claim.EXPONENTIAL,
        "c01": Claim.EXPONENTIAL,
        "c01star": Claim.EXPONENTIAL,
    }
    assert set(LITERATURE) == set(claims)
    eq = two_delay_benchmark(1.0, 1.0)
    for cid, fn in LITERATURE.items():
        v = fn(eq)
        assert v.criterion == cid
        assert v.claim is claims[cid]
        assert isinstance(v.verdict, Verdict)


def test_closed_form_threshold_table():
    assert CLOSED_FORM_THRESHOLDS == pytest.approx(
        {
            "p2": 7.0 / 6.0,
            "p2a": math.sqrt(6.0),
            "p4": 5.0 / 9.0,
            "p8": 3.0 / E,
            "cor1+cor2b-b": 1.0 + 3.0 / E,
        }
    )


@pytest.mark.parametrize("cid", ["p2", "p2a", "p4", "p8"])
def test_catalog_thresholds_flip_the_verdict(cid):
    thr = CLOSED_FORM_THRESHOLDS[cid]
    fn = LITERATURE[cid]
    assert fn(two_delay_benchmark(thr - 1e-4, 1.0)).verdict is Verdict.SATISFIED
    assert fn(two_delay_benchmark(thr + 1e-4, 1.0)).verdict is Verdict.VIOLATED
