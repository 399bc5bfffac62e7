"""Structural invariants checked on random inputs."""
import math

import numpy as np
from hypothesis import given, settings, strategies as st

from pickforge import hyperbolic as H
from pickforge import specfun, subordinator as S
from pickforge.levy import BernsteinTriple, eval_bernstein
from pickforge.measures import MeasureModel
from pickforge.nevanlinna import NevanlinnaTriple, eval_pick

FAST = settings(max_examples=40, deadline=None)

atoms = st.lists(st.tuples(st.floats(-20, 20), st.floats(0.01, 5.0)), min_size=1, max_size=4)
upper = st.tuples(st.floats(-30, 30), st.floats(1e-3, 30)).map(lambda t: complex(*t))


@FAST
@given(st.floats(-5, 5), st.floats(0, 3), atoms, upper)
def test_pick_maps_upper_half_plane_to_itself(a, b, at, z):
    F = NevanlinnaTriple(a, b, MeasureModel(tuple(at)))
    assert eval_pick(F, z).imag >= -1e-12


@FAST
@given(st.floats(-5, 5), st.floats(0, 3), atoms, upper)
def test_pick_conjugate_symmetry(a, b, at, z):
    F = NevanlinnaTriple(a, b, MeasureModel(tuple(at)))
    v, w = eval_pick(F, z), eval_pick(F, z.conjugate())
    assert abs(v - w.conjugate()) <= 1e-12 * max(1.0, abs(v))


@FAST
@given(st.sampled_from(H.KINDS), upper)
def test_hyperbolic_pick_upper(kind, z):
    assert H.model(kind).pick()(z).imag >= -1e-12


@FAST
@given(st.floats(0.05, 50))
def test_digamma_recurrence(x):
    lhs = specfun.digamma(x + 1) - specfun.digamma(x)
    assert math.isclose(lhs, 1 / x, rel_tol=1e-12, abs_tol=1e-13)


@FAST
@given(st.floats(0.05, 30))
def test_beta_functional_equation(x):
    # beta(x) + beta(x + 1) = 1/x
    assert math.isclose(specfun.beta_fn(x) + specfun.beta_fn(x + 1), 1 / x, rel_tol=1e-12)


@FAST
@given(st.sampled_from(H.KINDS), st.floats(0.05, 6))
def test_fourier_even_and_bounded_by_mass(kind, s):
    v = H.fourier_rho_closed(kind, s)
    assert v == H.fourier_rho_closed(kind, -s)
    assert abs(v) <= H.MASSES[kind] + 1e-14


@FAST
@given(st.floats(0.2, 0.9), st.floats(-0.15, 2.5), st.floats(0.1, 10), st.floats(1.01, 3))
def test_moment_monotone_in_t(alpha, p, t, k):
    sp = S.stable_spec(alpha)
    m1 = S.closed_moment(sp, p, t)
    m2 = S.closed_moment(sp, p, k * t)
    if p > 1e-3:
        assert m2 < m1
    elif p < -1e-3:
        assert m2 > m1
    else:
        assert math.isclose(m1, m2, rel_tol=1e-2)


@FAST
@given(st.floats(0.25, 0.9), st.floats(0.1, 3), st.floats(0.3, 5))
def test_quadrature_matches_closed(alpha, p, t):
    sp = S.stable_spec(alpha)
    got = S.negative_moment(sp, (p, t))
    assert math.isclose(got, S.closed_moment(sp, p, t), rel_tol=1e-8)


@FAST
@given(st.floats(1e-3, 200))
def test_lambert_invert_round_trip(x):
    sp = S.lambert_spec()
    assert math.isclose(sp.phi(sp.psi(x)), x, rel_tol=1e-13)


@FAST
@given(st.floats(1.001, 60))
def test_ratio_log_invert_round_trip(x):
    sp = S.ratio_log_spec()
    assert math.isclose(sp.phi(sp.psi(x)), x, rel_tol=1e-9)


@FAST
@given(st.lists(st.tuples(st.floats(0.05, 10), st.floats(0.05, 3)), min_size=1, max_size=3),
       st.floats(0, 2), st.floats(0.01, 30), st.floats(0.01, 30))
def test_bernstein_monotone_concave(at, d, l1, l2):
    T = BernsteinTriple(0.0, d, MeasureModel(tuple(at)))
    lo, hi = sorted((l1, l2))
    a, b, m = eval_bernstein(T, lo), eval_bernstein(T, hi), eval_bernstein(T, (lo + hi) / 2)
    assert b >= a - 1e-12
    assert m >= (a + b) / 2 - 1e-12


@FAST
@given(st.floats(0.1, 0.9), st.floats(0.05, 4.0))
def test_exp_density_bernstein_closed(d, lam):
    # Pi(dx) = e^-x dx gives lam/(1+lam)
    T = BernsteinTriple(0.0, d, MeasureModel.from_density("exp"))
    assert math.isclose(eval_bernstein(T, lam), d * lam + lam / (1 + lam), rel_tol=1e-12)


@FAST
@given(st.floats(-3, 3), st.floats(0.1, 3))
def test_polylog_real_on_real_axis_below_one(x, s):
    z = min(x, 0.99)
    v = specfun.polylog(s + 1, z)
    assert abs(np.imag(v)) < 1e-14
