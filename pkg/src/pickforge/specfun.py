"""Special functions used by the closed-form transforms.

Each public function returns a plain float or complex.  The same computation is
available through :func:`special_value`, which also reports the evaluation path
(``series``, ``asymptotic``, ``continued-fraction``, ``recurrence``,
``integral``, ``closed-form``) so that accuracy claims can be traced.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy import special as _sp

from . import numerics
from .errors import DomainError, UnknownFunction

# -psi(1); 20 digits from the defining limit sum_{k<=n} 1/k - log n
EULER_GAMMA = 0.57721566490153286061
# sum_{k>=0} (-1)^k / (2k+1)^2, checked against catalan_K() in the tests
CATALAN = 0.91596559417721901505
PI = math.pi
LOG2 = math.log(2.0)


@dataclass(frozen=True)
class SpecialValue:
    """A special-function value tagged with the evaluation path used."""

    value: complex
    method: str


# ---------------------------------------------------------------------------
# acceleration

def alternating_sum(term: Callable[[int], float], n: int = 40) -> float:
    """``sum_{k>=0} (-1)^k a_k`` by the Cohen-Villegas-Zagier transform.

    Exact up to ``~5.8**-n`` when ``a_k`` is a moment sequence
    ``int_0^1 t^k dmu(t)`` of a positive measure (true for ``1/(x+k)`` and
    ``1/(2k+1)**2``).
    """
    d = (3.0 + math.sqrt(8.0)) ** n
    d = 0.5 * (d + 1.0 / d)
    b, c, s = -1.0, -d, 0.0
    for k in range(n):
        c = b - c
        s += c * term(k)
        b *= (k + n) * (k - n) / ((k + 0.5) * (k + 1.0))
    return s / d


# ---------------------------------------------------------------------------
# Gamma, digamma, beta

def _gamma(p):
    if np.iscomplexobj(p):
        p = complex(p)
        if p.real <= 0:
            raise DomainError(f"gamma_fn needs Re(p) > 0, got {p}")
        return complex(_sp.gamma(p)), "scipy"
    p = float(p)
    if not p > 0:
        raise DomainError(f"gamma_fn needs p > 0, got {p}")
    return float(_sp.gamma(p)), "scipy"


def gamma_fn(p):
    """Euler's Gamma function for ``Re(p) > 0``."""
    return _gamma(p)[0]


# B_{2k}/(2k) for k = 1..7
_DIGAMMA_COEFFS = (1 / 12, -1 / 120, 1 / 252, -1 / 240, 1 / 132, -691 / 32760, 1 / 12)


def _digamma(p):
    x = float(p)
    if not x > 0:
        raise DomainError(f"digamma needs p > 0, got {p}")
    acc = 0.0
    while x < 8.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series, powx = 0.0, inv2
    for c in _DIGAMMA_COEFFS:
        series += c * powx
        powx *= inv2
    return acc + math.log(x) - 0.5 / x - series, "recurrence"


def digamma(p: float) -> float:
    """Digamma function ``psi = Gamma'/Gamma`` for ``p > 0``.

    Upward recurrence to ``x >= 8`` followed by the Bernoulli asymptotic series.
    """
    return _digamma(p)[0]


def _beta(x, method="digamma"):
    x = float(x)
    if not x > 0:
        raise DomainError(f"beta_fn needs x > 0, got {x}")
    if method == "digamma":
        return 0.5 * (digamma(0.5 * (x + 1.0)) - digamma(0.5 * x)), "recurrence"
    if method == "series":
        return alternating_sum(lambda k: 1.0 / (x + k), 48), "series"
    if method == "integral":
        f = numerics.ScalarFunction(lambda t: math.exp(-x * t) / (1.0 + math.exp(-t)),
                                    (0.0, math.inf), "exponential", x)
        return float(numerics.integrate_semi_infinite(f, 0.0, epsabs=1e-14,
                                                      epsrel=1e-14).value), "integral"
    raise ValueError(f"unknown method {method!r}")


def beta_fn(x: float, method: str = "digamma") -> float:
    """``beta(x) = int_0^inf exp(-x t) / (1 + exp(-t)) dt``.

    Parameters
    ----------
    method : {'digamma', 'series', 'integral'}
        ``'digamma'`` uses ``(psi((x+1)/2) - psi(x/2)) / 2``, ``'series'`` the
        accelerated alternating sum ``sum (-1)^k/(x+k)``, ``'integral'`` direct
        quadrature.
    """
    return _beta(x, method)[0]


# ---------------------------------------------------------------------------
# exponential integrals

def _ein_series(x):
    # sum_{k>=1} x^k/(k k!)
    term, total, k = 1.0, 0.0, 0
    while True:
        k += 1
        term *= x / k
        add = term / k
        total += add
        if abs(add) <= 1e-17 * abs(total) or k > 500:
            return total


def _scaled_e1(y):
    """``exp(y) * E1(y)`` for ``y > 1`` by a modified Lentz continued fraction."""
    tiny = 1e-300
    b = y + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 10000):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            return h
    raise numerics.NonConvergence("E1 continued fraction did not converge")


def _scaled_ei_asymptotic(x):
    # exp(-x) Ei(x) ~ sum k!/x^(k+1), truncated at the smallest term
    term, total, k = 1.0 / x, 0.0, 0
    while True:
        total += term
        nxt = term * (k + 1) / x
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-17 * total:
            return total
        term, k = nxt, k + 1


def _ei(x):
    x = float(x)
    if x == 0.0:
        raise DomainError("Ei is singular at 0")
    if x > 0:
        if x <= 40.0:
            return EULER_GAMMA + math.log(x) + _ein_series(x), "series"
        return math.exp(x) * _scaled_ei_asymptotic(x), "asymptotic"
    y = -x
    if y <= 1.0:
        return EULER_GAMMA + math.log(y) + _ein_series(x), "series"
    return -math.exp(-y) * _scaled_e1(y), "continued-fraction"


def expint_ei(x: float) -> float:
    """Exponential integral ``Ei(x)`` (principal value for ``x > 0``)."""
    return _ei(x)[0]


def ei_regular(x: float) -> float:
    """``Ei(x) - log|x|``, the part of ``Ei`` that is analytic at 0."""
    x = float(x)
    if x == 0.0:
        return EULER_GAMMA
    if abs(x) <= 1.0:
        return EULER_GAMMA + _ein_series(x)
    return expint_ei(x) - math.log(abs(x))


def _ei_symmetric(x):
    ax = abs(float(x))
    if ax == 0.0:
        raise DomainError("ei_symmetric diverges logarithmically at 0")
    if ax > 40.0:
        # sum_{j>=1} (2j-1)!/x^(2j)
        term, total, j = 1.0 / ax**2, 0.0, 1
        while True:
            total += term
            nxt = term * (2 * j) * (2 * j + 1) / ax**2
            if nxt >= term or nxt < 1e-17 * total:
                return total, "asymptotic"
            term, j = nxt, j + 1
    pos = math.exp(-ax) * expint_ei(ax)
    neg = -_scaled_e1(ax) if ax > 1.0 else math.exp(ax) * expint_ei(-ax)
    return 0.5 * (pos + neg), "series"


def ei_symmetric(x: float) -> float:
    """``(exp(-x) Ei(x) + exp(x) Ei(-x)) / 2``, an even function of ``x``.

    Equal to ``-int_0^inf t cos(x t)/(1+t^2) dt``.  It diverges like
    ``log|x|`` at 0, where a :class:`DomainError` is raised.
    """
    return _ei_symmetric(x)[0]


def ei_symmetric_integral(x: float) -> float:
    """Cosine-integral side ``-int_0^inf t cos(x t)/(1+t^2) dt`` (oracle)."""
    if x == 0.0:
        raise DomainError("ei_symmetric diverges logarithmically at 0")
    return -numerics.fourier_cosine(lambda t: t / (1.0 + t * t), x)


# ---------------------------------------------------------------------------
# zeta and polylogarithms

# B_{2j}/(2j)! for j = 1..9
_EM_COEFFS = (1 / 12, -1 / 720, 1 / 30240, -1 / 1209600, 1 / 47900160,
              -691 / 1307674368000, 1 / 74724249600, -3617 / 10670622842880000,
              43867 / 5109094217170944000)


def _hurwitz(s, a, method="series"):
    s, a = float(s), float(a)
    if not (s > 1 and a > 0):
        raise DomainError(f"hurwitz_zeta needs s > 1 and a > 0, got s={s}, a={a}")
    if method == "integral":
        g = lambda x: x ** (s - 1) * math.exp(-a * x) / (-math.expm1(-x))
        f = numerics.ScalarFunction(g, (0.0, math.inf), "exponential", a)
        val = numerics.integrate_semi_infinite(f, 0.0, epsabs=1e-14, epsrel=1e-13).value
        return float(val) / gamma_fn(s), "integral"
    if method != "series":
        raise ValueError(f"unknown method {method!r}")
    # Euler-Maclaurin tail after N direct terms
    n = max(0, int(math.ceil(16.0 - a)))
    head = sum((k + a) ** -s for k in range(n))
    x = n + a
    tail = x ** (1 - s) / (s - 1) + 0.5 * x**-s
    rising = s  # s(s+1)...(s+2j-2)
    power = x ** (-s - 1)
    for j, c in enumerate(_EM_COEFFS, start=1):
        tail += c * rising * power
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        power /= x * x
    return head + tail, "series"


def hurwitz_zeta(s: float, a: float, method: str = "series") -> float:
    """Hurwitz zeta ``sum_{k>=0} (k+a)^(-s)`` for ``s > 1``, ``a > 0``.

    ``method='series'`` sums directly and closes with Euler-Maclaurin;
    ``method='integral'`` uses the Mellin form
    ``Gamma(s)^-1 int_0^inf x^(s-1) exp(-a x)/(1 - exp(-x)) dx``.
    """
    return _hurwitz(s, a, method)[0]


def _on_cut(z: complex) -> bool:
    return z.imag == 0.0 and z.real >= 1.0


def _polylog(s, z, method=None):
    s = float(s)
    z = complex(z)
    if not s > 0:
        raise DomainError(f"polylog needs s > 0, got {s}")
    if _on_cut(z):
        raise DomainError(f"z={z} lies on the branch cut [1, inf)")
    if method is None:
        if s == 1.0:
            method = "closed-form"
        elif abs(z) <= 0.75:
            method = "series"
        else:
            method = "integral"
    if method == "closed-form":
        if s != 1.0:
            raise ValueError("closed form only for s=1")
        return -cmath.log(1.0 - z), method
    if method == "series":
        if abs(z) >= 1.0:
            raise DomainError("the power series needs |z| < 1")
        total, zk, k = 0j, 1.0 + 0j, 0
        while True:
            k += 1
            zk *= z
            add = zk / k**s
            total += add
            if abs(add) <= 1e-17 * max(abs(total), 1e-300) or k > 20000:
                return total, method
    if method == "integral":
        # z/Gamma(s) int_0^inf u^(s-1)/(e^u - z) du
        def g(u):
            e = math.exp(-u)
            return u ** (s - 1) * e / (1.0 - z * e)

        pts = (math.log(abs(z)),) if abs(z) > 1.0 else ()
        f = numerics.ScalarFunction(g, (0.0, math.inf), "exponential", 1.0)
        val = numerics.integrate_interval(f, 0.0, math.inf, pts, epsabs=1e-15,
                                          epsrel=1e-13).value
        return z * complex(val) / gamma_fn(s), method
    raise ValueError(f"unknown method {method!r}")


def polylog(s: float, z: complex, method: str | None = None) -> complex:
    """Polylogarithm ``Li_s(z)`` on ``C`` minus the cut ``[1, inf)``.

    The default path is the closed form for ``s = 1``, the power series for
    ``|z| <= 0.75`` and otherwise the Bose-Einstein integral
    ``z/Gamma(s) int_0^inf u^(s-1)/(e^u - z) du`` (equivalently
    ``int_1^inf log^(s-1)(x) / (x (x - z)) dx`` after ``x = e^u``).
    """
    return _polylog(s, z, method)[0]


# ---------------------------------------------------------------------------
# Catalan constant and the sech moment

def catalan_K() -> float:
    """Catalan's constant via the accelerated series ``sum (-1)^k/(2k+1)^2``."""
    return alternating_sum(lambda k: 1.0 / (2 * k + 1) ** 2, 40)


def sech_moment_tail(s: float) -> float:
    """``int_s^inf x/cosh(x) dx`` for ``s >= 0``.

    Uses ``2 sum_k (-1)^k exp(-(2k+1)s) ((2k+1)s + 1)/(2k+1)^2`` for ``s >= 1``
    and ``2K - int_0^s`` below.
    """
    s = float(s)
    if s < 0:
        raise DomainError("sech_moment_tail needs s >= 0")
    if s < 1.0:
        return 2.0 * CATALAN - dilog_tangent_integral(s)
    total, k = 0.0, 0
    while True:
        m = 2 * k + 1
        add = math.exp(-m * s) * (m * s + 1.0) / (m * m)
        total += add if k % 2 == 0 else -add
        if add < 1e-18 * total:
            return 2.0 * total
        k += 1


def dilog_tangent_integral(s: float) -> float:
    """``int_0^s x/cosh(x) dx`` (an odd function of ``s``; tends to ``2K``)."""
    s = float(s)
    if s == 0.0:
        return 0.0
    a = abs(s)
    if a <= 1.0:
        val = float(numerics.integrate_interval(lambda x: x / math.cosh(x), 0.0, a,
                                                epsabs=1e-15, epsrel=1e-14).value)
    else:
        val = 2.0 * CATALAN - sech_moment_tail(a)
    return math.copysign(val, s)


def dilog_tangent_combination(s: float) -> complex:
    """``Li2(i e^s) - Li2(-i e^s) + s log((1 - i e^s)/(1 + i e^s))``.

    Evaluated from :func:`polylog`; it equals
    ``i (2K - int_0^s x/cosh(x) dx)``.
    """
    e = math.exp(s)
    return (polylog(2, 1j * e) - polylog(2, -1j * e)
            + s * cmath.log((1 - 1j * e) / (1 + 1j * e)))


# ---------------------------------------------------------------------------
# registry

def _wrap(fn):
    return lambda *args: (fn(*args), "closed-form")


_REGISTRY = {
    "gamma": _gamma,
    "digamma": _digamma,
    "beta": _beta,
    "ei": _ei,
    "ei_symmetric": _ei_symmetric,
    "hurwitz_zeta": _hurwitz,
    "polylog": _polylog,
    "catalan": lambda: (catalan_K(), "series"),
    "sech_integral": lambda s: (dilog_tangent_integral(s), "integral"),
}


def special_value(name: str, *args) -> SpecialValue:
    """Evaluate a registered special function and report its method tag."""
    try:
        fn = _REGISTRY[name]
    except KeyError:
        raise UnknownFunction(f"unknown special function {name!r}; "
                              f"known: {sorted(_REGISTRY)}") from None
    value, method = fn(*args)
    return SpecialValue(value, method)


def registered() -> list[str]:
    return sorted(_REGISTRY)
