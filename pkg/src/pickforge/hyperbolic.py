"""Free analogs of the hyperbolic laws C, S, T and the BDLP law Y_C.

The characteristic functions are ``1/cosh(s)`` (C), ``s/sinh(s)`` (S) and
``tanh(s)/s`` (T), with ``C = S + T`` in law for independent summands.  Each
model carries its Voiculescu transform on the imaginary axis, the even density
of its Nevanlinna measure, and a closed form for the Fourier transform of that
measure.  ``Y_C`` is the background driving law of ``C``.

All densities are evaluated at ``|x|`` in exponentially damped form so they
never overflow, with the analytic limit at ``x = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import numerics, specfun
from .errors import DomainError, UnknownFunction
from .measures import Density, MeasureModel, register_density
from .nevanlinna import NevanlinnaTriple, PickFunction, eval_pick

PI = math.pi
KINDS = ("C", "S", "T", "YC")

MASSES = {
    "C": PI / 2 - 1,
    "S": specfun.EULER_GAMMA + specfun.LOG2 - 1,
    "T": PI / 2 - specfun.EULER_GAMMA - specfun.LOG2,
    "YC": 2 * specfun.CATALAN - 1,
}


# ---------------------------------------------------------------------------
# densities

def _rho_C(x: float) -> float:
    x = abs(x)
    if x < 1e-8:
        # x/(2 sinh a) = (1 - a^2/6 + ...)/pi with a = pi x/2
        return 1.0 / (PI * (1 + x * x))
    a = 0.5 * PI * x
    return x * math.exp(-a) / ((1 + x * x) * -math.expm1(-2 * a))


def _rho_S(x: float) -> float:
    x = abs(x)
    if x < 1e-8:
        # x/(e^{pi x} - 1) = (1 - pi x/2 + ...)/pi
        return (1 - 0.5 * PI * x) / PI
    return x * math.exp(-PI * x) / ((1 + x * x) * -math.expm1(-PI * x))


def _rho_T(x: float) -> float:
    x = abs(x)
    e = math.exp(-0.5 * PI * x)
    return x * e / ((1 + x * x) * (1 + e))


def _rho_YC(x: float) -> float:
    x = abs(x)
    if x == 0.0:
        return 1.0 / PI
    a = 0.5 * PI * x
    if a < 1e-4:
        # x^2 cosh(a)/sinh(a)^2 = (x/a)^2 (1 + a^2/6 + O(a^4)); avoids underflow
        return (1 + a * a / 6) / (PI * (1 + x * x))
    e2 = math.exp(-2 * a)
    # cosh(a)/sinh(a)^2 = 2 e^-a (1 + e^-2a)/(1 - e^-2a)^2
    ratio = 2 * math.exp(-a) * (1 + e2) / math.expm1(-2 * a) ** 2
    return 0.25 * PI * x * x / (1 + x * x) * ratio


_DENSITIES = {"C": _rho_C, "S": _rho_S, "T": _rho_T, "YC": _rho_YC}


def _register(kind):
    @register_density(f"rho_{kind}")
    def build() -> Density:
        return Density(f"rho_{kind}", {}, _DENSITIES[kind], (-math.inf, math.inf),
                       (0.0,), symmetric=True)
    return build


for _k in KINDS:
    _register(_k)


def h_C(x: float) -> float:
    """``1/(2 x sinh(pi x/2))``, the Levy density of the law C (``x != 0``)."""
    if x == 0:
        raise DomainError("h_C is singular at 0")
    return 1.0 / (2 * x * math.sinh(0.5 * PI * x))


def h_C_prime(x: float) -> float:
    """Analytic derivative ``-(sinh a + a cosh a)/(2 x^2 sinh^2 a)``, ``a = pi x/2``."""
    if x == 0:
        raise DomainError("h_C is singular at 0")
    a = 0.5 * PI * x
    return -(math.sinh(a) + a * math.cosh(a)) / (2 * x * x * math.sinh(a) ** 2)


def _bdlp_integrand(x: float) -> float:
    # x^3/(1+x^2) * (-h_C'(x)), damped; limit 2/pi at 0
    x = abs(x)
    if x == 0.0:
        return 2.0 / PI
    a = 0.5 * PI * x
    e2 = math.exp(-2 * a)
    num = -math.expm1(-2 * a) + a * (1 + e2)
    return x * math.exp(-a) * num / ((1 + x * x) * math.expm1(-2 * a) ** 2)


# ---------------------------------------------------------------------------
# characteristic functions and Voiculescu transforms

def _charfn(kind: str, s: float) -> float:
    s = abs(float(s))
    if kind == "C":
        return 1.0 / math.cosh(s)
    if s == 0.0:
        return 1.0
    if kind == "S":
        return s / math.sinh(s)
    if kind == "T":
        return math.tanh(s) / s
    raise DomainError(f"no characteristic function stored for {kind!r}")


def _log_charfn(kind: str, s: float) -> float:
    s = abs(float(s))
    # log cosh s = s + log1p(e^-2s) - log 2, and similarly for sinh
    lc = s + math.log1p(math.exp(-2 * s)) - specfun.LOG2
    if kind == "C":
        return -lc
    if s == 0.0:
        return 0.0
    if s < 1e-4:
        ls = s * s / 6.0
    else:
        ls = s + math.log(-math.expm1(-2 * s)) - specfun.LOG2 - math.log(s)
    if kind == "S":
        return -ls
    if kind == "T":
        return ls - lc
    raise DomainError(f"no characteristic function stored for {kind!r}")


def _voiculescu(kind: str, w: float) -> complex:
    w = float(w)
    if not w > 0:
        raise DomainError(f"w must be positive, got {w}")
    h = 0.5 * w
    if kind == "C":
        return 1j * (1 - w * specfun.beta_fn(h))
    if kind == "S":
        return 1j * (w * specfun.digamma(h) - w * math.log(h) + 1)
    if kind == "T":
        return 1j * w * (math.log(h) - specfun.beta_fn(h) - specfun.digamma(h))
    if kind == "YC":
        return 1j * (1 + 0.5 * w * w * specfun.hurwitz_zeta(2, h)
                     - 0.25 * w * w * specfun.hurwitz_zeta(2, 0.5 * h))
    raise UnknownFunction(f"unknown hyperbolic model {kind!r}")


# ---------------------------------------------------------------------------
# closed Fourier forms of the Nevanlinna measures

def _ei_sym_regular(s: float) -> float:
    # ei_symmetric(s) - cosh(s) log s, analytic at 0
    ap = specfun.ei_regular(s) - specfun.EULER_GAMMA
    am = specfun.ei_regular(-s) - specfun.EULER_GAMMA
    return (math.cosh(s) * specfun.EULER_GAMMA
            + 0.5 * (math.exp(-s) * ap + math.exp(s) * am))


def _fourier_C(s: float) -> float:
    s = abs(s)
    e = math.exp(-s)
    return 2 * math.sinh(s) * math.atan(e) + 0.5 * PI * e - 1


def _fourier_S(s: float) -> float:
    s = abs(s)
    e = math.exp(-s)
    if s < 1.0:
        # log singularities of Ei and of log(1 - e^-s) cancelled analytically
        if s == 0.0:
            return MASSES["S"]
        return (_ei_sym_regular(s)
                + math.cosh(s) * (math.log1p(e) - math.log(-math.expm1(-s) / s)) - 1)
    return specfun.ei_symmetric(s) + math.cosh(s) * (math.log1p(e) - math.log1p(-e)) - 1


def _fourier_T(s: float) -> float:
    s = abs(s)
    if s < 1.0:
        return _fourier_C(s) - _fourier_S(s)
    e = math.exp(-s)
    return (0.5 * PI * e + 2 * math.sinh(s) * math.atan(e)
            + math.cosh(s) * (math.log1p(-e) - math.log1p(e)) - specfun.ei_symmetric(s))


def _fourier_YC(s: float) -> float:
    s = abs(s)
    return math.cosh(s) * specfun.sech_moment_tail(s) - s * math.tanh(s) - 1


_FOURIER = {"C": _fourier_C, "S": _fourier_S, "T": _fourier_T, "YC": _fourier_YC}

IDENTITY_TAGS = {"C": "fourier_rho_C", "S": "fourier_rho_S", "T": "fourier_rho_T", "YC": "fourier_rho_YC"}


# ---------------------------------------------------------------------------
# model type

@dataclass(frozen=True)
class HyperbolicModel:
    """One of the four hyperbolic free analogs.

    Parameters
    ----------
    kind : {'C', 'S', 'T', 'YC'}
    """

    kind: str

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnknownFunction(f"unknown hyperbolic model {self.kind!r}; choose from {KINDS}")

    @property
    def mass(self) -> float:
        return MASSES[self.kind]

    @property
    def identity_tag(self) -> str:
        return IDENTITY_TAGS[self.kind]

    def charfn(self, s: float) -> float:
        return _charfn(self.kind, s)

    def log_charfn(self, s: float) -> float:
        return _log_charfn(self.kind, s)

    def voiculescu(self, w: float) -> complex:
        return _voiculescu(self.kind, w)

    def rho_density(self, x: float) -> float:
        return _DENSITIES[self.kind](x)

    def measure(self) -> MeasureModel:
        return MeasureModel.from_density(f"rho_{self.kind}")

    def triple(self) -> NevanlinnaTriple:
        return NevanlinnaTriple(0.0, 0.0, self.measure())

    def pick(self) -> PickFunction:
        """``F = -V``: closed form on the imaginary axis, canonical form elsewhere."""
        triple = self.triple()

        def F(z):
            z = complex(z)
            if z.real == 0.0 and z.imag != 0.0:
                val = -self.voiculescu(abs(z.imag))
                return val if z.imag > 0 else val.conjugate()
            return eval_pick(triple, z)

        return PickFunction(triple, F, f"hyperbolic_{self.kind}", check=False)

    def fourier_closed(self, s: float) -> float:
        return _FOURIER[self.kind](float(s))

    def fourier_integral(self, s: float) -> float:
        return 2.0 * numerics.fourier_cosine(_DENSITIES[self.kind], s)


def model(kind) -> HyperbolicModel:
    return kind if isinstance(kind, HyperbolicModel) else HyperbolicModel(str(kind))


# ---------------------------------------------------------------------------
# functional surface

def voiculescu(m, w: float) -> complex:
    """``V(iw)`` in closed form (purely imaginary)."""
    return model(m).voiculescu(w)


def rho_density(m, x: float) -> float:
    """Even density of the Nevanlinna measure."""
    return model(m).rho_density(x)


def fourier_rho_closed(m, s: float) -> float:
    """Closed form of ``Fou[rho; s]``; equals the mass at ``s = 0``."""
    return model(m).fourier_closed(s)


def fourier_rho_integral(m, s: float) -> float:
    """``2 int_0^inf cos(s x) rho(x) dx`` by oscillatory quadrature."""
    return model(m).fourier_integral(s)


def charfn(m, s: float) -> float:
    return model(m).charfn(s)


def bdlp_identity(s: float) -> tuple:
    """Both sides of ``Fou[rho_YC] + Fou[rho_C] = 2 int cos(s x) x^3/(1+x^2) (-h_C'(x)) dx``.

    The left side comes from the closed forms, the right side from quadrature
    with the analytic derivative of ``h_C``.
    """
    lhs = _fourier_YC(s) + _fourier_C(s)
    rhs = 2.0 * numerics.fourier_cosine(_bdlp_integrand, s)
    return lhs, rhs
