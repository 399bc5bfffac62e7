import cmath
import math

import pytest

from pickforge import levy, nevanlinna
from pickforge.errors import DomainError, IntegrabilityError, UnknownFunction
from pickforge.levy import BernsteinTriple, LevyExponent
from pickforge.measures import MeasureModel

THETAS = (1.25, 1.5, 1.75)


@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("lam", [0.3, 1.0, 7.0, complex(1.0, 2.0), complex(0.0, 3.0)])
def test_stable_exponent_is_power(theta, lam):
    E = levy.stable_exponent(theta)
    got = levy.eval_levy_exponent(E, lam)
    want = complex(lam) ** theta
    assert abs(got - want) <= 1e-10 * abs(want)


def test_stable_constants_frozen():
    # c_theta = theta(theta-1)/Gamma(2-theta), beta_theta from the Gamma ratio
    assert levy.c_theta(1.5) == pytest.approx(0.42314218766081724, rel=1e-14)
    assert levy.beta_theta(1.5) == pytest.approx(1.5 * math.gamma(1.25) * math.gamma(0.75)
                                                 / math.gamma(0.5), rel=1e-14)


def test_gaussian_exponent():
    E = levy.gaussian_exponent(2.0)
    assert levy.eval_levy_exponent(E, 1.5) == pytest.approx(0.5 * 4.0 * 2.25)


def test_exponent_domain_and_validation():
    with pytest.raises(DomainError):
        levy.eval_levy_exponent(levy.stable_exponent(1.5), -1.0)
    with pytest.raises(IntegrabilityError):
        LevyExponent(nu=MeasureModel.from_density("power", coeff=1.0, exponent=-3.5))


def test_exponent_sum():
    E = levy.stable_exponent(1.5) + levy.gaussian_exponent(1.0)
    assert E(2.0) == pytest.approx(2.0**1.5 + 2.0, rel=1e-10)


@pytest.mark.parametrize("lam", [0.5, complex(2, 1)])
def test_kernel_split_is_continuous(lam):
    a = levy.levy_kernel(lam, 1.0 - 1e-12)
    b = levy.levy_kernel(lam, 1.0 + 1e-12)
    assert abs(a - b) < 1e-10


@pytest.mark.parametrize("theta", THETAS)
@pytest.mark.parametrize("z", [1 + 1j, 2j, 0.5 + 2j, -1 + 0.5j, 3 - 1j])
def test_theta_transform_stable(theta, z):
    F, triple = levy.theta_transform(0.0, levy.catalog("stable", theta=theta))
    want = -math.gamma(theta + 1) * z ** (1 - theta)
    assert abs(F(z) - want) <= 1e-8 * abs(want)
    assert abs(nevanlinna.eval_pick(triple, z) - want) <= 1e-8 * abs(want)


def test_theta_of_square_and_drift():
    # Psi(u) = u^2 (gamma = sqrt 2) maps to -2/z; a drift b adds b z
    F, triple = levy.theta_transform(0.5, levy.gaussian_exponent(math.sqrt(2)))
    z = 0.7 + 1.1j
    assert abs(F(z) - (-2 / z + 0.5 * z)) < 1e-10
    assert abs(nevanlinna.eval_pick(triple, z) - (-2 / z + 0.5 * z)) < 1e-12


def test_theta_needs_positive_support():
    nu = MeasureModel.from_density("uniform", lo=-1.0, hi=-0.5)
    with pytest.raises(DomainError):
        levy.theta_triple(0.0, LevyExponent(nu=nu))


def test_stable_pick_triple_agrees():
    F = levy.stable_pick(1.5)
    assert abs(F(2 + 1j) - nevanlinna.eval_pick(F.triple, 2 + 1j)) < 1e-9


@pytest.mark.parametrize("w", [2.0, 3.0])
def test_free_analog_literal_sign(w):
    # literal evaluation gives the negative of the Pick function with the FL characteristics
    g = 1.3
    E = levy.gaussian_exponent(g)
    lit = levy.free_analog_FL(lambda u: -0.5 * g * g * u * u, w)
    assert abs(lit - (-1j * g * g / w)) < 1e-10
    F = nevanlinna.eval_pick(levy.fl_triple(E), 1j * w)
    assert abs(lit + F) < 1e-10


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.9])
@pytest.mark.parametrize("lam", [0.1, 1.0, 20.0])
def test_bernstein_stable(alpha, lam):
    T = levy.stable_bernstein(alpha)
    assert levy.eval_bernstein(T, lam) == pytest.approx(lam**alpha, rel=1e-9)
    assert T.derivative(lam) == pytest.approx(alpha * lam ** (alpha - 1), rel=1e-8)
    assert T.limit == math.inf


def test_bernstein_killed_compound_poisson():
    T = BernsteinTriple(0.5, 0.0, MeasureModel.from_density("exp"))
    assert levy.eval_bernstein(T, 2.0) == pytest.approx(0.5 + 2.0 / 3.0, rel=1e-12)
    assert levy.eval_bernstein(T, math.inf) == pytest.approx(1.5, rel=1e-12)
    z = complex(1.0, 2.0)
    assert abs(levy.eval_bernstein(T, z) - (0.5 + z / (1 + z))) < 1e-12


def test_bernstein_validation():
    with pytest.raises(DomainError):
        BernsteinTriple(-1.0)
    with pytest.raises(DomainError):
        BernsteinTriple(0.0, -1.0)


@pytest.mark.parametrize("alpha", [0.25, 0.5])
@pytest.mark.parametrize("z", [2.0, 1 + 1j, -1 + 1j])
def test_cbf_lift_of_power(alpha, z):
    f = levy.cbf_lift(lambda x: x**alpha if isinstance(x, float) else complex(x) ** alpha)
    want = math.gamma(1 + alpha) * complex(z) ** (1 - alpha)
    assert abs(f(z) - want) <= 1e-9 * abs(want)


def test_stieltjes_eval_exp_measure_is_ei():
    ei = levy.catalog("ei")
    for z in (0.5, 3.0):
        assert levy.stieltjes_eval(0.0, 0.0, MeasureModel.from_density("exp"), z) == \
            pytest.approx(ei(z), rel=1e-11)
    with pytest.raises(DomainError):
        levy.stieltjes_eval(0.0, 1.0, MeasureModel(), -1.0)


@pytest.mark.parametrize("name,params,target,verdict", [
    ("power", {"s": 0.5}, "CBF", "pass"),
    ("power", {"s": -0.5}, "ST", "pass"),
    ("power", {"s": 1.5}, "BF", "fail"),
    ("ei", {}, "CM", "pass"),
    ("li", {"s": 2.0}, "TBF", "pass"),
    ("ratio_log", {}, "CBF", "pass"),
    ("lle_example", {}, "Lle", "pass"),
    ("lle_example", {}, "CBF", "fail"),
])
def test_catalog_tags(name, params, target, verdict):
    tag = levy.class_screen(levy.catalog(name, **params), target)
    assert tag.certificate == "analytic-catalog"
    assert tag.verdict == verdict


@pytest.mark.parametrize("name,params,target", [
    ("ei", {}, "ST"), ("frak_S", {}, "ST"), ("li", {"s": 2.0}, "CBF"),
    ("ratio_log", {}, "BF"), ("one_minus_exp", {}, "BF"), ("exp_decay", {}, "CM"),
])
def test_numeric_screens_agree_with_tags(name, params, target):
    tag = levy.class_screen(levy.catalog(name, **params), target, use_catalog=False)
    assert tag.certificate == "numeric-screen"
    assert tag.verdict == "pass"


def test_numeric_screen_rejects_square():
    assert levy.class_screen(lambda t: t * t, "BF").verdict == "fail"


def test_catalog_unknown():
    with pytest.raises(UnknownFunction):
        levy.catalog("nope")
