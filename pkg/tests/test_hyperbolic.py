"""Hyperbolic models: closed forms against frozen mpmath quadrature values."""
import math

import pytest

from pickforge import hyperbolic as H
from pickforge import specfun
from pickforge.errors import DomainError, UnknownFunction

# 2 int_0^inf cos(s x) rho(x) dx by mpmath.quadosc at 25 digits
FOURIER = {
    ("C", 0.5): 0.520946398960126063, ("C", 2.0): 0.18834014892683336,
    ("S", 0.5): 0.262670870303500969, ("S", 2.0): 0.179178947294404792,
    ("T", 0.5): 0.258275528656625094, ("T", 2.0): 0.00916120163242856775,
    ("YC", 0.5): 0.701962311012170003, ("YC", 2.0): 0.112533762390389077,
}
MASSES = {"C": 0.570796326794896619, "S": 0.27036284546147817,
          "T": 0.300433481333418449, "YC": 0.83193118835443803}


@pytest.mark.parametrize("kind,s", sorted(FOURIER))
def test_fourier_closed_frozen(kind, s):
    assert H.fourier_rho_closed(kind, s) == pytest.approx(FOURIER[kind, s], rel=1e-13)


@pytest.mark.parametrize("kind", H.KINDS)
@pytest.mark.parametrize("s", [0.25, 1.0, 4.0, 9.0])
def test_closed_vs_quadrature(kind, s):
    assert abs(H.fourier_rho_closed(kind, s) - H.fourier_rho_integral(kind, s)) < 1e-9


@pytest.mark.parametrize("kind", H.KINDS)
def test_masses(kind):
    assert H.MASSES[kind] == pytest.approx(MASSES[kind], rel=1e-15)
    assert H.model(kind).measure().mass() == pytest.approx(MASSES[kind], abs=1e-10)


@pytest.mark.parametrize("kind", H.KINDS)
@pytest.mark.parametrize("s", [1e-2, 1e-4, 1e-8, 0.0])
def test_small_s_limit(kind, s):
    # even and smooth, so the error is O(s^2)
    assert abs(H.fourier_rho_closed(kind, s) - MASSES[kind]) < 2 * s * s + 1e-12


@pytest.mark.parametrize("s", [0.999, 1.0, 1.001])
@pytest.mark.parametrize("kind", ["S", "T"])
def test_branch_switch_is_seamless(kind, s):
    assert abs(H.fourier_rho_closed(kind, s) - H.fourier_rho_integral(kind, s)) < 1e-10


@pytest.mark.parametrize("s", [0.3, 2.0])
def test_c_equals_s_plus_t(s):
    assert H.fourier_rho_closed("C", s) == pytest.approx(
        H.fourier_rho_closed("S", s) + H.fourier_rho_closed("T", s), abs=1e-14)


def test_voiculescu_c_at_two():
    # i (1 - 2 beta(1)) = i (1 - 2 log 2)
    assert abs(H.voiculescu("C", 2.0) - 1j * (1 - 2 * math.log(2))) < 1e-14


@pytest.mark.parametrize("kind", H.KINDS)
@pytest.mark.parametrize("w", [0.5, 2.0, 7.0])
def test_pick_matches_canonical_form(kind, w):
    m = H.model(kind)
    closed = m.pick()(1j * w)
    from pickforge.nevanlinna import eval_pick
    assert abs(closed - eval_pick(m.triple(), 1j * w)) < 1e-9


@pytest.mark.parametrize("kind", H.KINDS)
def test_value_at_i_is_i_mass(kind):
    assert abs(H.model(kind).pick()(1j) - 1j * MASSES[kind]) < 1e-13


@pytest.mark.parametrize("s", [0.0, 0.5, 1.0, 2.5])
def test_bdlp_identity(s):
    lhs, rhs = H.bdlp_identity(s)
    assert abs(lhs - rhs) < 1e-9


def test_h_c_prime_matches_difference():
    x, h = 0.8, 1e-6
    fd = (H.h_C(x + h) - H.h_C(x - h)) / (2 * h)
    assert H.h_C_prime(x) == pytest.approx(fd, rel=1e-8)
    with pytest.raises(DomainError):
        H.h_C(0.0)


@pytest.mark.parametrize("kind,s,want", [
    ("C", 1.0, 1 / math.cosh(1.0)), ("S", 2.0, 2 / math.sinh(2.0)),
    ("T", 0.5, math.tanh(0.5) / 0.5), ("T", 0.0, 1.0)])
def test_charfn(kind, s, want):
    assert H.charfn(kind, s) == pytest.approx(want, rel=1e-15)
    assert H.model(kind).log_charfn(s) == pytest.approx(math.log(want), abs=1e-15)


def test_log_charfn_large_s_no_overflow():
    assert H.model("C").log_charfn(800.0) == pytest.approx(-800.0 + math.log(2), rel=1e-15)


def test_densities_even_and_finite_at_zero():
    for k in H.KINDS:
        assert H.rho_density(k, 0.7) == H.rho_density(k, -0.7)
        assert math.isfinite(H.rho_density(k, 0.0))
        assert H.rho_density(k, 900.0) >= 0.0


def test_unknown_model():
    with pytest.raises(UnknownFunction):
        H.model("Q")


def test_yc_mass_is_two_catalan_minus_one():
    assert H.MASSES["YC"] == pytest.approx(2 * specfun.catalan_K() - 1, rel=1e-15)
