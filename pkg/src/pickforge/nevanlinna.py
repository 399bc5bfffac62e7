"""Nevanlinna-Pick functions: evaluation, characteristics and inversion.

A Pick function has the canonical form

    F(z) = a + b z + int (z x - 1)/(z + x) rho(dx),   z not real,

with ``a`` real, ``b >= 0`` and ``rho`` a finite measure.  The kernel is the
Moebius map ``f(x, z) = (x z - 1)/(z + x)``; note the ``z + x`` denominator, so
mass of ``rho`` near ``x0`` shows up as boundary behaviour near ``-x0``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import numerics
from .errors import (DivergentTransform, DomainError, ExtrapolationUnstable,
                     PoleError)
from .measures import MeasureModel

_INF = math.inf


@dataclass(frozen=True)
class NevanlinnaTriple:
    """Characteristics ``(a, b, rho)`` of a Pick function.

    ``support_class`` optionally names the closed set ``A`` with
    ``support(rho)`` inside ``A``; it is checked against the measure.
    """

    a: float
    b: float
    rho: MeasureModel = field(default_factory=MeasureModel)
    support_class: Optional[tuple] = None

    def __post_init__(self):
        if not self.b >= 0:
            raise DomainError(f"drift b must be nonnegative, got {self.b}")
        if self.support_class is not None and not self.rho.is_zero:
            lo, hi = self.rho.support
            alo, ahi = self.support_class
            if lo < alo or hi > ahi:
                raise DomainError(f"support {self.rho.support} not inside {self.support_class}")

    def __add__(self, other: "NevanlinnaTriple") -> "NevanlinnaTriple":
        return NevanlinnaTriple(self.a + other.a, self.b + other.b, self.rho + other.rho)

    def to_dict(self) -> dict:
        doc = {"a": self.a, "b": self.b}
        doc.update(self.rho.to_dict())
        return doc

    @classmethod
    def from_dict(cls, doc) -> "NevanlinnaTriple":
        doc = dict(doc)
        a = float(doc.pop("a", 0.0))
        b = float(doc.pop("b", 0.0))
        return cls(a, b, MeasureModel.from_dict(doc))


@dataclass(frozen=True)
class PickFunction:
    """A Pick function given by its triple, a closed-form evaluator, or both.

    When both are given they must agree at ``z = i`` to within ``1e-9``.
    """

    triple: Optional[NevanlinnaTriple] = None
    evaluator: Optional[Callable[[complex], complex]] = None
    name: str = ""
    check: bool = True

    def __post_init__(self):
        if self.triple is None and self.evaluator is None:
            raise ValueError("a PickFunction needs a triple or an evaluator")
        if self.check and self.triple is not None and self.evaluator is not None:
            lhs = complex(self.evaluator(1j))
            rhs = eval_pick(self.triple, 1j)
            if abs(lhs - rhs) > 1e-9 * max(1.0, abs(lhs)):
                raise DomainError(f"triple and evaluator disagree at i: {lhs} vs {rhs}")

    def __call__(self, z) -> complex:
        if self.evaluator is not None:
            return complex(self.evaluator(z))
        return eval_pick(self.triple, z)


@dataclass(frozen=True)
class CauchyTransform:
    """``G(z) = c + int mu(dx)/(z + x)``."""

    c: float
    mu: MeasureModel

    def __call__(self, z) -> complex:
        return cauchy_eval(self, z)


# ---------------------------------------------------------------------------
# kernel and evaluation

def mobius_kernel(x: float, z: complex) -> complex:
    """``(x z - 1)/(z + x)``; raises :class:`PoleError` at ``z = -x``."""
    den = z + x
    if den == 0:
        raise PoleError(f"Moebius kernel has a pole at z = -x = {-x}")
    return (x * z - 1) / den


def _require_nonreal(z) -> complex:
    z = complex(z)
    if z.imag == 0:
        raise DomainError(f"z={z} must lie off the real axis")
    return z


def _near_pole_points(z: complex) -> tuple:
    # the kernel peaks at x = -Re z with width |Im z|; ladder out from there
    c, h = -z.real, abs(z.imag)
    reach = max(1.0, abs(c))
    pts = [c]
    while h < reach:
        pts += [c - h, c + h]
        h *= 10.0
    return tuple(pts)


def eval_pick(triple: NevanlinnaTriple, z) -> complex:
    """Evaluate the canonical form at a non-real ``z``."""
    z = _require_nonreal(z)
    val = triple.a + triple.b * z
    if not triple.rho.is_zero:
        val += complex(triple.rho.integrate(lambda x: (x * z - 1) / (z + x),
                                            points=_near_pole_points(z)))
    return complex(val)


def _derivative_at(F: Callable[[complex], complex], z0: complex, radius: float,
                   n: int = 64) -> complex:
    # Cauchy integral formula on a circle; trapezoid converges geometrically
    k = np.arange(n)
    nodes = np.exp(2j * np.pi * k / n)
    vals = np.array([complex(F(z0 + radius * e)) for e in nodes])
    return complex(np.mean(vals / nodes) / radius)


def characteristics_at_i(F: PickFunction, u_max: float = 1e6, levels: int = 5,
                         tol: float = 1e-6) -> tuple:
    """Recover ``(a, b, rho(R))`` from values on the imaginary axis.

    ``a = Re F(i)``, ``b = lim F(iu)/(iu)`` (Richardson in ``1/u`` over
    ``u = u_max 2^-k``) and ``rho(R) = Im F(i) - b``.

    Raises
    ------
    ExtrapolationUnstable
        The last two extrapolated drifts differ by more than ``tol``.
    """
    Fi = complex(F(1j))
    us = [u_max * 2.0**-k for k in range(levels)][::-1]
    hs = [1.0 / u for u in us]
    vals = [complex(F(1j * u)) / (1j * u) for u in us]
    b, err = numerics.richardson(hs, vals)
    b = b.real
    if err > tol * max(1.0, abs(b)):
        raise ExtrapolationUnstable(f"drift estimates disagree by {err:.3e}")
    if -tol < b < 0:
        b = 0.0
    return Fi.real, b, Fi.imag - b


def cauchy_eval(G: CauchyTransform, z) -> complex:
    """``c + int mu(dx)/(z+x)``.

    A real ``z`` is accepted when ``-z`` lies outside the closed support of
    ``mu`` (the boundary value is then an ordinary integral).
    """
    z = complex(z)
    if z.imag == 0:
        lo, hi = G.mu.support
        if not G.mu.is_zero and lo <= -z.real <= hi:
            raise PoleError(f"-z={-z.real} lies in the support of mu")
        zr = z.real
        return complex(G.c + G.mu.integrate(lambda x: 1.0 / (zr + x)))
    return complex(G.c + G.mu.integrate(lambda x: 1.0 / (z + x), points=_near_pole_points(z)))


@dataclass(frozen=True)
class PickCauchy:
    """``G(z) = (Re F(i) + Im F(i) z - F(z)) / (1 + z^2)`` built from ``F``.

    For ``F`` with triple ``(a, b, rho)`` this is ``int rho(dx)/(z + x)``.
    The removable singularities at ``z = +-i`` use ``F'(i)``.
    """

    F: PickFunction
    Fi: complex

    def __call__(self, z) -> complex:
        z = complex(z)
        a, m = self.Fi.real, self.Fi.imag
        if z == 1j or z == -1j:
            g = (m - _derivative_at(self.F, 1j, 0.5)) / 2j
            return g if z == 1j else g.conjugate()
        return (a + m * z - complex(self.F(z))) / (1 + z * z)


def pick_to_cauchy(F: PickFunction) -> PickCauchy:
    return PickCauchy(F, complex(F(1j)))


# ---------------------------------------------------------------------------
# Fourier / Laplace inversion

def fourier_of_measure(rho: MeasureModel, s: float) -> complex:
    """``int exp(i s x) rho(dx)``."""
    return rho.fourier(s)


def jj_lhs(F: PickFunction, w: float, *, form: str = "fourier") -> complex:
    """Imaginary-axis side of the Laplace-Fourier inversion identity.

    ``form='fourier'`` returns
    ``[i F(iw) - i Re F(i) + w Im F(i)] / (w^2 - 1)``, which equals
    ``int rho(dx)/(w - i x)``, the Laplace transform of ``Fou[rho; .]``.
    At ``w = 1`` the removable singularity is resolved with ``F'(i)``
    (or by direct integration when the triple is known).

    ``form='combined'`` returns ``i F(iw)/(w^2 - 1)``, the Laplace transform
    of ``Fou[rho] + i Re F(i) sinh - Im F(i) cosh``.
    """
    w = float(w)
    if not w > 0:
        raise DomainError(f"w must be positive, got {w}")
    Fi = complex(F(1j))
    if form == "combined":
        if w == 1.0:
            raise DomainError("the combined form has a pole at w = 1")
        return 1j * complex(F(1j * w)) / (w * w - 1)
    if form != "fourier":
        raise ValueError(f"unknown form {form!r}")
    if w == 1.0:
        if F.triple is not None:
            return complex(F.triple.rho.integrate(lambda x: (1 + 1j * x) / (1 + x * x)))
        return (Fi.imag - _derivative_at(F, 1j, 0.5)) / 2
    return (1j * complex(F(1j * w)) - 1j * Fi.real + w * Fi.imag) / (w * w - 1)


def jj_rhs(rho: MeasureModel, F_at_i: complex, w: float, *, form: str = "fourier",
           fourier: Optional[Callable[[float], complex]] = None) -> complex:
    """Laplace side of the inversion identity, by quadrature.

    Computes ``L[Fou[rho; s]; w]`` by numerical Laplace transform of the
    numerically evaluated Fourier transform.  With ``form='combined'`` the
    Laplace transforms of ``i Re F(i) sinh`` and ``-Im F(i) cosh`` (also by
    quadrature) are added.

    Parameters
    ----------
    fourier : callable, optional
        Replacement for ``s -> Fou[rho; s]`` (e.g. a closed form).
    """
    w = float(w)
    if not w > 1:
        raise DivergentTransform(f"the sinh/cosh transforms need w > 1, got {w}")
    fou = fourier if fourier is not None else (lambda s: fourier_of_measure(rho, s))
    f = numerics.ScalarFunction(fou, (0.0, _INF), "exponential", 0.0)
    val = numerics.laplace_transform(f, w, epsabs=1e-11, epsrel=1e-11)
    if form == "fourier":
        return val
    if form != "combined":
        raise ValueError(f"unknown form {form!r}")
    F_at_i = complex(F_at_i)
    sinh = numerics.ScalarFunction(math.sinh, (0.0, _INF), "exponential", -1.0)
    cosh = numerics.ScalarFunction(math.cosh, (0.0, _INF), "exponential", -1.0)
    return (val + 1j * F_at_i.real * numerics.laplace_transform(sinh, w)
            - F_at_i.imag * numerics.laplace_transform(cosh, w))


def stieltjes_perron(F: PickFunction, interval: Sequence[float],
                     eps_schedule: Sequence[float] = (1e-1, 1e-2, 1e-3, 1e-4), *,
                     points: Sequence[float] = (), tol: float = 1e-3) -> float:
    """Recover ``int_(u,v] (1 + x^2) rho(dx)`` from boundary values of ``F``.

    Evaluates ``(1/pi) int_u^v Im F(-x + i eps) dx`` along ``eps_schedule``
    and extrapolates linearly in ``eps`` from the two smallest values.

    Raises
    ------
    ExtrapolationUnstable
        Extrapolations from the last two pairs of ``eps`` differ by more than
        ``tol`` (relative to ``max(1, |value|)``).
    """
    u, v = map(float, interval)
    eps = sorted((float(e) for e in eps_schedule), reverse=True)
    if len(eps) < 2:
        raise ValueError("need at least two eps values")
    vals = []
    for e in eps:
        g = lambda x, e=e: complex(F(complex(-x, e))).imag
        res = numerics.integrate_interval(g, u, v, points, epsabs=1e-12, epsrel=1e-10)
        vals.append(float(res.value) / math.pi)

    def lin(i):
        e1, e2 = eps[i], eps[i + 1]
        return (e1 * vals[i + 1] - e2 * vals[i]) / (e1 - e2)

    est = lin(len(eps) - 2)
    if len(eps) >= 3:
        prev = lin(len(eps) - 3)
        if abs(est - prev) > tol * max(1.0, abs(est)):
            raise ExtrapolationUnstable(
                f"eps-extrapolation unstable: {prev!r} then {est!r}")
    return est
