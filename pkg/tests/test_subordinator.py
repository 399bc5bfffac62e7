import json
import math
import threading

import pytest

from pickforge import levy, subordinator as S
from pickforge.errors import (DivergentMoment, DomainError, ExtrapolationUnstable,
                              RegimePreconditionFailed, UnknownFunction)
from pickforge.levy import BernsteinTriple, LevyExponent
from pickforge.measures import MeasureModel


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.8])
@pytest.mark.parametrize("p", [-0.2, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("t", [0.5, 2.0])
def test_stable_moments(alpha, p, t):
    if p <= -alpha:
        pytest.skip("moment infinite")
    sp = S.stable_spec(alpha)
    want = t ** (-p / alpha) * math.gamma(1 + p / alpha) / math.gamma(1 + p)
    assert S.negative_moment(sp, S.MomentQuery(p, t)) == pytest.approx(want, rel=1e-10)


def test_stable_moment_frozen_value():
    # alpha = 1/2, p = 1, t = 1: Gamma(3)/Gamma(2) = 2
    assert S.negative_moment(S.stable_spec(0.5), (1.0, 1.0)) == pytest.approx(2.0, rel=1e-13)


@pytest.mark.parametrize("p,t", [(0.5, 2.0), (1.0, 2.0), (1.0, 5.0), (-0.5, 0.7)])
def test_lambert_moments(p, t):
    assert S.negative_moment(S.lambert_spec(), (p, t)) == pytest.approx(
        t / (t - p) ** (p + 1), rel=1e-10)


def test_lambert_divergence():
    with pytest.raises(DivergentMoment):
        S.negative_moment(S.lambert_spec(), (1.0, 1.0))
    with pytest.raises(DivergentMoment):
        S.closed_moment(S.lambert_spec(), 1.0, 0.5)


def test_trivial_moment():
    assert S.negative_moment(S.trivial_spec(), (1.5, 3.0)) == pytest.approx(3.0**-1.5, rel=1e-12)


def test_p_zero_is_one():
    assert S.negative_moment(S.lambert_spec(), (0.0, 0.1)) == 1.0


def test_near_zero_divergence():
    with pytest.raises(DivergentMoment):
        S.negative_moment(S.stable_spec(0.5), (-0.6, 1.0))


def test_query_validation():
    with pytest.raises(DomainError):
        S.MomentQuery(-1.0, 1.0)
    with pytest.raises(DomainError):
        S.MomentQuery(0.5, 0.0)


def test_ratio_log_refused():
    sp = S.ratio_log_spec()
    with pytest.raises(DomainError):
        S.negative_moment(sp, (0.5, 1.0))
    assert sp.psi(sp.phi(3.0)) == pytest.approx(3.0, rel=1e-12)
    with pytest.raises(DomainError):
        sp.psi(0.5)


def test_killed_subordinator():
    # phi(lam) = lam/(1+lam): compound Poisson, l_phi = 1, xi_t = 0 with prob e^-t
    T = BernsteinTriple(0.0, 0.0, MeasureModel.from_density("exp"))
    sp = S.triple_spec(T)
    assert sp.l_phi == pytest.approx(1.0)
    with pytest.raises(DivergentMoment):
        S.negative_moment(sp, (0.5, 1.0))
    # Psi(x) = x/(1-x); E[xi^(1/2)] = t int_0^1 e^-tx (x/(1-x))^(-1/2) dx / Gamma(1/2)
    from scipy.integrate import quad
    t = 1.3
    want = t * quad(lambda x: math.exp(-t * x) * math.sqrt((1 - x) / x), 0, 1,
                    epsabs=1e-13, epsrel=1e-13)[0] / math.gamma(0.5)
    assert S.negative_moment(sp, (-0.5, t)) == pytest.approx(want, rel=1e-8)
    with pytest.raises(DomainError):
        sp.psi(1.5)


def test_numeric_inverse_memo_is_thread_safe():
    T = BernsteinTriple(0.0, 1.0, MeasureModel.from_density("exp"))
    sp = S.triple_spec(T)
    xs = [0.5 + 0.25 * k for k in range(20)]
    out = {}

    def work(i):
        out[i] = [sp.psi(x) for x in xs]

    threads = [threading.Thread(target=work, args=(i,)) for i in range(4)]
    for th in threads:
        th.start()
    for th in threads:
        th.join()
    assert all(out[i] == out[0] for i in out)
    assert all(abs(sp.phi(l) - x) < 1e-9 for l, x in zip(out[0], xs))


def test_mellin_agrees():
    sp = S.stable_spec(0.5)
    for p in (-0.3, 1.0, 2.0):
        assert S.mellin_moment(sp, p, 1.7) == pytest.approx(
            math.gamma(p + 1) * S.closed_moment(sp, p, 1.7), rel=1e-10)


def test_psi_p_derivatives_lambert():
    sp = S.lambert_spec()
    # Psi = x e^x: (Psi^2)' = 2 x e^{2x}(1+x), (Psi^2)'' = 2 e^{2x}(1 + 4x + 2x^2)
    x = 0.6
    d1, d2 = S.psi_p_derivatives(sp, 2.0, x)
    assert d1 == pytest.approx(2 * x * math.exp(2 * x) * (1 + x), rel=1e-12)
    assert d2 == pytest.approx(2 * math.exp(2 * x) * (1 + 4 * x + 2 * x * x), rel=1e-12)


@pytest.mark.parametrize("p,regime", [(-0.25, "bernstein"), (0.5, "cm"), (2.0, "t_cm")])
def test_temporal_regimes_stable(p, regime):
    v = S.temporal_representation(S.stable_spec(0.5), p)
    assert v.regime == regime
    assert v.passed
    assert max(r for _, r in v.residuals) < 1e-8


def test_temporal_precondition_lambert():
    with pytest.raises(RegimePreconditionFailed) as info:
        S.temporal_representation(S.lambert_spec(), 0.5)
    assert "infinity" in info.value.condition


def test_temporal_lambert_negative_p():
    v = S.temporal_representation(S.lambert_spec(), -0.5)
    assert v.regime == "bernstein" and v.passed


@pytest.mark.parametrize("alpha,p", [(0.8, 0.5), (0.5, 0.3)])
def test_bernstein_form_for_t_times_moment(alpha, p):
    sp = S.stable_spec(alpha)
    for t in (0.5, 2.0):
        want = t * S.closed_moment(sp, p, t)
        assert S.representation_value(sp, p, t, "bernstein_te") == pytest.approx(want, rel=1e-8)


@pytest.mark.parametrize("alpha", [0.35, 0.65])
@pytest.mark.parametrize("p", [0.3, 0.5, 0.9])
def test_item2_boundary(alpha, p):
    screen, holds = S.item2_bernstein(S.stable_spec(alpha), p)
    assert holds == (p <= alpha)
    assert screen.passed == (p <= alpha)


@pytest.mark.parametrize("alpha,p,verdict", [
    (0.5, 1.0, "pass"), (2 / 3, 4 / 3, "pass"), (0.5, 3.0, "fail"), (2 / 3, 1.5, "fail")])
def test_classifier_stable(alpha, p, verdict):
    rep = S.classify_inverse_time(S.stable_spec(alpha), p)
    assert rep.verdict == verdict
    assert rep.certificate == "analytic-catalog"
    assert rep.numeric_st.verdict == rep.st.verdict
    assert rep.screens_agree


def test_classifier_lambert_divergent():
    rep = S.classify_inverse_time(S.lambert_spec(), 1.0)
    assert rep.verdict == "fail"
    assert rep.note.startswith("DivergentMoment")


def test_classifier_needs_p_at_least_one():
    with pytest.raises(RegimePreconditionFailed):
        S.classify_inverse_time(S.stable_spec(0.5), 0.5)


def test_stieltjes_form_gaussian_quadruple():
    # alpha = 1/2, p = 1: Psi^p = lam^2 = (0, 0, sqrt 2, 0)
    chk = S.stieltjes_form_check(S.stable_spec(0.5), 1.0, LevyExponent(0.0, 0.0, math.sqrt(2)))
    assert chk.passed


def test_stieltjes_form_stable_quadruple():
    # alpha = 2/3, p = 1: Psi^p = lam^(3/2) with its stable quadruple
    chk = S.stieltjes_form_check(S.stable_spec(2 / 3), 1.0, levy.stable_exponent(1.5))
    assert chk.passed
    assert chk.drift_at_zero == pytest.approx(0.0, abs=1e-8)


def test_stieltjes_form_rejects_cubic():
    with pytest.raises(RegimePreconditionFailed):
        S.stieltjes_form_check(S.stable_spec(0.5), 1.5, LevyExponent(0.0, 0.0, 1.0))


def test_stieltjes_form_rejects_wrong_quadruple():
    with pytest.raises(RegimePreconditionFailed):
        S.stieltjes_form_check(S.stable_spec(0.5), 1.0, LevyExponent(0.0, 0.0, 1.0))


def test_drift_limit():
    assert S.drift_limit(S.stable_spec(0.5)) == 0.0
    assert S.drift_limit(S.lambert_spec()) == 0.0
    sp = S.triple_spec(BernsteinTriple(0.0, 2.0, MeasureModel.dirac(1.0)))
    assert S.drift_limit(sp) == pytest.approx(2.0, abs=1e-9)


def test_drift_limit_unstable():
    sp = S.SubordinatorSpec("osc", {}, phi=lambda l: l, phi_prime=lambda l: 2 + math.sin(l))
    with pytest.raises(ExtrapolationUnstable):
        S.drift_limit(sp)


def test_spec_from_dict():
    sp = S.spec_from_dict(json.loads('{"phi": {"name": "stable", "params": {"alpha": 0.5}}}'))
    assert sp.to_dict() == {"phi": {"name": "stable", "params": {"alpha": 0.5}}}
    doc = {"phi": {"name": "custom_triple",
                   "params": {"d": 1.0, "Pi": {"atoms": [[1.0, 2.0]]}}}}
    sp = S.spec_from_dict(doc)
    assert sp.phi(1.0) == pytest.approx(1.0 + 2 * (1 - math.exp(-1.0)), rel=1e-12)
    with pytest.raises(UnknownFunction):
        S.spec_from_dict({"phi": {"name": "nope"}})
    with pytest.raises(ValueError):
        S.spec_from_dict({"phi": {"name": "stable", "params": {"alpha": 0.5}}, "x": 1})
