"""Special functions against frozen mpmath values (30-digit working precision)."""
import cmath
import math

import pytest

from pickforge import specfun
from pickforge.errors import DomainError, UnknownFunction

DIGAMMA = [(0.5, -1.9635100260214234794), (3.7, 1.1671535393615114409),
           (0.1, -10.423754940411076232)]
BETA = [(1.0, 0.69314718055994530942), (0.3, 2.8253219418828678026),
        (2.5, 0.2374629934615632859)]
EI = [(1.0, 1.8951178163559367555), (-2.5, -0.024914917870269735496),
      (10.0, 2492.2289762418777591), (50.0, 1.0585636897131690963e+20)]
EI_SYM = [(0.5, -0.32370616696623010335), (3.0, 0.11624633054666136942),
          (45.0, 0.0004953051143715044318)]
ZETA = [(2.0, 0.25, 17.197329154507110739), (3.5, 2.2, 0.095181863542496886745)]
POLYLOG = [(2, 0.5, 0.58224052646501250590), (2, -3.0, -1.93937542076670895308),
           (2, 2j, complex(-0.592484949249591458, 1.57601540344632342236)),
           (3, complex(-0.9, 0.4), complex(-0.829460210811859701, 0.333535587897482455)),
           (2.5, -4.0, -2.6918348869610312860)]


@pytest.mark.parametrize("x,want", DIGAMMA)
def test_digamma(x, want):
    assert specfun.digamma(x) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("method", ["digamma", "series", "integral"])
@pytest.mark.parametrize("x,want", BETA)
def test_beta_methods(x, want, method):
    assert specfun.beta_fn(x, method) == pytest.approx(want, rel=1e-10)


@pytest.mark.parametrize("x,want", EI)
def test_expint_ei(x, want):
    assert specfun.expint_ei(x) == pytest.approx(want, rel=1e-13)


@pytest.mark.parametrize("x,want", EI_SYM)
def test_ei_symmetric(x, want):
    assert specfun.ei_symmetric(x) == pytest.approx(want, rel=1e-12)
    assert specfun.ei_symmetric(-x) == specfun.ei_symmetric(x)


@pytest.mark.parametrize("x", [0.5, 3.0])
def test_ei_symmetric_integral_oracle(x):
    assert specfun.ei_symmetric_integral(x) == pytest.approx(specfun.ei_symmetric(x), rel=1e-9)


def test_ei_symmetric_zero_rejected():
    with pytest.raises(DomainError):
        specfun.ei_symmetric(0.0)


@pytest.mark.parametrize("s,a,want", ZETA)
def test_hurwitz_zeta(s, a, want):
    assert specfun.hurwitz_zeta(s, a) == pytest.approx(want, rel=1e-13)
    assert specfun.hurwitz_zeta(s, a, "integral") == pytest.approx(want, rel=1e-9)


@pytest.mark.parametrize("s,z,want", POLYLOG)
def test_polylog(s, z, want):
    got = specfun.polylog(s, z)
    assert abs(got - want) <= 1e-12 * abs(want)


def test_polylog_cut_rejected():
    with pytest.raises(DomainError):
        specfun.polylog(2, 3.0)


def test_catalan_three_ways():
    K = 0.91596559417721901505
    assert specfun.catalan_K() == pytest.approx(K, rel=1e-15)
    assert ((specfun.polylog(2, 1j) - specfun.polylog(2, -1j)) / 2j).real == pytest.approx(K, rel=1e-13)
    assert specfun.dilog_tangent_integral(60.0) == pytest.approx(2 * K, rel=1e-14)


@pytest.mark.parametrize("s", [0.3, 1.0, 2.5])
def test_dilog_tangent_combination(s):
    # equals i (2K - int_0^s x sech x dx)
    want = 1j * (2 * specfun.CATALAN - specfun.dilog_tangent_integral(s))
    assert abs(specfun.dilog_tangent_combination(s) - want) < 1e-12


@pytest.mark.parametrize("s,want", [(0.5, 1.7142394280433129283), (1.0, 1.4302265443987157812),
                                    (3.0, 0.39802269380921411343)])
def test_sech_moment_tail(s, want):
    assert specfun.sech_moment_tail(s) == pytest.approx(want, rel=1e-13)


def test_alternating_sum_log2():
    assert specfun.alternating_sum(lambda k: 1.0 / (k + 1)) == pytest.approx(math.log(2), rel=1e-14)


def test_registry():
    v = specfun.special_value("digamma", 0.5)
    assert v.value == pytest.approx(DIGAMMA[0][1], rel=1e-14)
    assert "digamma" in specfun.registered()
    with pytest.raises(UnknownFunction):
        specfun.special_value("nope", 1.0)


def test_gamma_complex():
    assert specfun.gamma_fn(2.3) == pytest.approx(1.1667119051981602207, rel=1e-14)
    z = specfun.gamma_fn(complex(1, 1))
    assert abs(z - complex(0.49801566811835604271, -0.15494982830181068512)) < 1e-14
    assert cmath.isfinite(z)
