import math

import pytest

from pickforge import nevanlinna as N
from pickforge.errors import (DivergentTransform, DomainError, ExtrapolationUnstable,
                              PoleError)
from pickforge.measures import MeasureModel
from pickforge.nevanlinna import NevanlinnaTriple, PickFunction


def exp_triple(a=0.3, b=0.7):
    return NevanlinnaTriple(a, b, MeasureModel.from_density("exp"))


def test_eval_pick_maps_upper_half_plane_into_itself():
    T = exp_triple()
    for z in (1j, 2 + 0.1j, -3 + 5j):
        assert N.eval_pick(T, z).imag > 0
    assert N.eval_pick(T, -1j) == N.eval_pick(T, 1j).conjugate()


def test_eval_pick_dirac_closed_form():
    # rho = delta_2 gives (2z - 1)/(z + 2)
    T = NevanlinnaTriple(0.0, 0.0, MeasureModel.dirac(2.0))
    z = 0.4 + 1.3j
    assert abs(N.eval_pick(T, z) - (2 * z - 1) / (z + 2)) < 1e-15


def test_real_argument_rejected():
    with pytest.raises(DomainError):
        N.eval_pick(exp_triple(), 1.0)
    with pytest.raises(PoleError):
        N.mobius_kernel(2.0, -2.0)


def test_triple_validation():
    with pytest.raises(DomainError):
        NevanlinnaTriple(0.0, -1.0)
    with pytest.raises(DomainError):
        NevanlinnaTriple(0.0, 0.0, MeasureModel.dirac(-1.0), (0.0, math.inf))


def test_pick_function_consistency_check():
    T = NevanlinnaTriple(0.0, 0.0, MeasureModel.dirac(2.0))
    PickFunction(T, lambda z: (2 * z - 1) / (z + 2))
    with pytest.raises(DomainError):
        PickFunction(T, lambda z: (2 * z - 1) / (z + 2) + 1.0)


def test_characteristics_at_i():
    T = exp_triple(0.3, 0.7)
    a, b, m = N.characteristics_at_i(PickFunction(T))
    assert a == pytest.approx(0.3, abs=1e-12)
    assert b == pytest.approx(0.7, abs=1e-6)
    assert m == pytest.approx(1.0, abs=1e-6)


def test_characteristics_unstable_drift():
    F = PickFunction(evaluator=lambda z: 1j * (1 + math.log(1 + abs(z))) * z, check=False)
    with pytest.raises(ExtrapolationUnstable):
        N.characteristics_at_i(F, tol=1e-10)


def test_pick_to_cauchy_is_cauchy_transform_of_rho():
    T = exp_triple()
    G = N.pick_to_cauchy(PickFunction(T))
    C = N.CauchyTransform(0.0, T.rho)
    for z in (2j, 1 + 1j, 1j):
        assert abs(G(z) - C(z)) < 1e-8


def test_cauchy_eval_real_point_outside_support():
    C = N.CauchyTransform(0.5, MeasureModel.from_density("exp"))
    # int_0^inf e^-x/(1 + x) dx = e E1(1)
    assert C(1.0).real == pytest.approx(0.5 + 0.5963473623231940743, rel=1e-12)
    with pytest.raises(PoleError):
        C(-1.0)


@pytest.mark.parametrize("w", [1.5, 2.0, 4.0])
def test_jj_identity_exp_measure(w):
    T = exp_triple(0.3, 0.0)
    F = PickFunction(T)
    lhs = N.jj_lhs(F, w)
    # int e^-x/(w - i x) dx in closed form via E1
    rhs = N.jj_rhs(T.rho, F(1j), w)
    assert abs(lhs - rhs) < 1e-9


def test_jj_combined_form():
    T = exp_triple(0.3, 0.0)
    F = PickFunction(T)
    w = 2.5
    assert abs(N.jj_lhs(F, w, form="combined")
               - N.jj_rhs(T.rho, F(1j), w, form="combined")) < 1e-9


def test_jj_at_one_uses_derivative():
    T = exp_triple(0.3, 0.0)
    closed = N.jj_lhs(PickFunction(T), 1.0)
    numeric = N.jj_lhs(PickFunction(evaluator=lambda z: N.eval_pick(T, z)), 1.0)
    assert abs(closed - numeric) < 1e-9


def test_jj_rhs_needs_w_above_one():
    with pytest.raises(DivergentTransform):
        N.jj_rhs(MeasureModel.dirac(0.0), 1j, 0.8)


def test_stieltjes_perron_single_pole():
    # F = -1/(z+1) has rho = delta_1 with weight 1/(1+1) ... recovered (1+x^2) rho
    F = PickFunction(evaluator=lambda z: -1.0 / (complex(z) + 1.0), check=False)
    assert N.stieltjes_perron(F, (0.0, 2.0), points=(1.0,)) == pytest.approx(1.0, abs=1e-3)
    assert N.stieltjes_perron(F, (-2.0, 0.0)) == pytest.approx(0.0, abs=1e-3)


def test_triple_dict_round_trip():
    T = exp_triple()
    assert NevanlinnaTriple.from_dict(T.to_dict()) == T
