"""Levy-Laplace exponents, Bernstein-type function classes and the Theta map.

A Levy-Laplace exponent is

    Psi(lam) = alpha + beta lam + gamma^2 lam^2 / 2
               + int (exp(-lam x) - 1 + lam x/(1+x^2)) nu(dx),

and the Theta map sends ``(b, Psi)`` with ``nu`` on ``(0, inf)`` to the Pick
function ``F(z) = z^2 int_0^inf exp(-z u) (b + Psi(0) - Psi(u)) du`` whose
characteristics are ``a = -beta``, drift ``b`` and
``rho = gamma^2 delta_0 + x^2/(1+x^2) nu``.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

from . import numerics, specfun
from .errors import DomainError, IntegrabilityError, NonConvergence, UnknownFunction
from .measures import Density, MeasureModel, make_density, register_density
from .nevanlinna import NevanlinnaTriple, PickFunction
from .numerics import ScalarFunction, ScreenVerdict

_INF = math.inf
CLASSES = ("BF", "CBF", "TBF", "ST", "CM", "CBe", "Lle", "unknown")


# ---------------------------------------------------------------------------
# stable family constants and densities

def c_theta(theta: float) -> float:
    """Levy density constant ``theta (theta-1)/Gamma(2-theta)`` of ``lam**theta``."""
    return theta * (theta - 1) / specfun.gamma_fn(2 - theta)


def beta_theta(theta: float) -> float:
    """Drift making the stable representation reproduce ``lam**theta``."""
    g = specfun.gamma_fn
    return theta * g(0.5 * (theta + 1)) * g(0.5 * (3 - theta)) / g(2 - theta)


def _check_theta(theta):
    if not 1 < theta < 2:
        raise DomainError(f"theta must lie in (1, 2), got {theta}")


@register_density("stable_levy")
def _stable_levy(theta: float) -> Density:
    _check_theta(theta)
    c = c_theta(theta)
    return Density("stable_levy", {"theta": theta},
                   lambda x: c * x ** (-theta - 1) if x > 0 else _INF, (0.0, _INF), (1.0,))


@register_density("stable_theta")
def _stable_theta(theta: float) -> Density:
    _check_theta(theta)
    c = c_theta(theta)
    return Density("stable_theta", {"theta": theta},
                   lambda x: c * x ** (1 - theta) / (1 + x * x) if x > 0 else _INF,
                   (0.0, _INF), (1.0,))


@register_density("bernstein_stable")
def _bernstein_stable(alpha: float) -> Density:
    if not 0 < alpha < 1:
        raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
    c = alpha / specfun.gamma_fn(1 - alpha)
    return Density("bernstein_stable", {"alpha": alpha}, lambda x: c * x ** (-alpha - 1),
                   (0.0, _INF), (1.0,))


@register_density("inv1p")
def _inv1p(scale: float = 1.0) -> Density:
    return Density("inv1p", {"scale": scale}, lambda x: scale / (1 + x), (0.0, _INF))


@register_density("li_sigma")
def _li_sigma(s: float) -> Density:
    """``log(x)**(s-1) / (x Gamma(s))`` on ``(1, inf)``."""
    g = specfun.gamma_fn(s)
    return Density("li_sigma", {"s": s}, lambda x: math.log(x) ** (s - 1) / (x * g),
                   (1.0, _INF))


# ---------------------------------------------------------------------------
# exponents

@dataclass(frozen=True)
class LevyExponent:
    """Quadruple ``(alpha, beta, gamma, nu)`` of a Levy-Laplace exponent.

    ``nu`` must integrate ``x^2 ∧ 1``; this is checked on construction
    unless ``validate=False``.
    """

    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    nu: MeasureModel = field(default_factory=MeasureModel)
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.alpha < 0 or self.gamma < 0:
            raise DomainError("alpha and gamma must be nonnegative")
        if self.validate and not self.nu.is_zero:
            self.nu.check_integrable(lambda x: min(x * x, 1.0), "x^2 ∧ 1")
            try:
                val = self.nu.integrate(lambda x: min(x * x, 1.0), points=(-1.0, 1.0))
            except NonConvergence as exc:
                raise IntegrabilityError(f"nu does not integrate x^2 ∧ 1: {exc}") from None
            if not math.isfinite(abs(val)):
                raise IntegrabilityError("nu does not integrate x^2 ∧ 1")

    def __add__(self, other: "LevyExponent") -> "LevyExponent":
        return LevyExponent(self.alpha + other.alpha, self.beta + other.beta,
                            math.hypot(self.gamma, other.gamma), self.nu + other.nu)

    def __call__(self, lam):
        return eval_levy_exponent(self, lam)


def _taylor_kernel(y: complex) -> complex:
    """``exp(-y) - 1 + y`` without cancellation for small ``|y|``."""
    if abs(y) < 0.1:
        term, total = y * y / 2, 0j
        k = 2
        while True:
            total += term
            k += 1
            term *= -y / k
            if abs(term) < 1e-18 * abs(total):
                return total + term
    return cmath.exp(-y) - 1 + y


def levy_kernel(lam: complex, x: float) -> complex:
    """``exp(-lam x) - 1 + lam x/(1+x^2)``, split at ``|x| = 1``.

    Inner part: ``(exp(-lam x) - 1 + lam x) - lam x^3/(1+x^2)``.
    Outer part: ``(exp(-lam x) - 1) + lam x/(1+x^2)``.
    """
    y = lam * x
    if abs(x) <= 1.0:
        return _taylor_kernel(y) - lam * x**3 / (1 + x * x)
    return cmath.exp(-y) - 1 + lam * x / (1 + x * x)


def eval_levy_exponent(E: LevyExponent, lam) -> complex:
    """Evaluate ``Psi(lam)`` for ``Re(lam) >= 0``.

    Returns a float for real ``lam`` and a complex number otherwise.
    """
    lam_c = complex(lam)
    if lam_c.real < 0:
        raise DomainError(f"Re(lam) must be nonnegative, got {lam}")
    val = E.alpha + E.beta * lam_c + 0.5 * E.gamma**2 * lam_c * lam_c
    if not E.nu.is_zero:
        real = lam_c.imag == 0
        if real:
            lr = lam_c.real
            k = lambda x: levy_kernel(lr, x).real
            val += E.nu.integrate(k, points=_decade_points(lr, True), epsabs=1e-13,
                                  epsrel=1e-12)
        elif lam_c.real == 0 and E.nu.density is not None:
            val += _imaginary_axis_integral(E.nu, lam_c)
        else:
            k = lambda x: levy_kernel(lam_c, x)
            val += E.nu.integrate(k, points=_decade_points(lam_c, True), epsabs=1e-13,
                                  epsrel=1e-12)
    return val.real if lam_c.imag == 0 and isinstance(lam, (int, float)) else complex(val)


def _imaginary_axis_integral(nu: MeasureModel, lam: complex) -> complex:
    # On lam = i b the tails |x| > 1 oscillate with only algebraic decay: the
    # exp(-i b x) part goes to the oscillatory integrator, the rest to plain quadrature.
    b = lam.imag
    total = sum(m * levy_kernel(lam, x) for x, m in nu.atoms)
    d = nu.density
    lo, hi = d.support
    f = d.func
    ilo, ihi = max(lo, -1.0), min(hi, 1.0)
    if ilo < ihi:
        pts = tuple(p for p in (0.0,) + d.breakpoints if ilo < p < ihi)
        total += numerics.integrate_interval(lambda x: levy_kernel(lam, x) * f(x), ilo, ihi,
                                             pts, epsabs=1e-13, epsrel=1e-12).value
    for a, c in ((max(lo, 1.0), hi), (lo, min(hi, -1.0))):
        if not a < c:
            continue
        osc = complex(numerics.oscillatory_integral(f, a, c, b, "cos"),
                      -numerics.oscillatory_integral(f, a, c, b, "sin"))
        rest = numerics.integrate_interval(lambda x: (-1 + lam * x / (1 + x * x)) * f(x), a, c,
                                           tuple(p for p in d.breakpoints if a < p < c),
                                           epsabs=1e-13, epsrel=1e-12).value
        total += osc + rest
    return complex(total)


def stable_exponent(theta: float) -> LevyExponent:
    """``lam**theta`` as ``(0, beta_theta, 0, c_theta x^(-theta-1) dx)``."""
    _check_theta(theta)
    return LevyExponent(0.0, beta_theta(theta), 0.0,
                        MeasureModel.from_density("stable_levy", theta=theta))


def gaussian_exponent(gamma: float) -> LevyExponent:
    return LevyExponent(0.0, 0.0, gamma)


# ---------------------------------------------------------------------------
# Theta map and free analog

def theta_triple(b: float, E: LevyExponent) -> NevanlinnaTriple:
    """``(-beta, b, gamma^2 delta_0 + x^2/(1+x^2) nu)``."""
    if not E.nu.is_zero and E.nu.support[0] < 0:
        raise DomainError("the Theta map needs nu supported by (0, inf)")
    rho = MeasureModel(((0.0, E.gamma**2),) if E.gamma else ())
    if E.nu.density is not None:
        rho = rho + MeasureModel((), make_density("nevanlinna_of_levy",
                                                  {"base": E.nu.density.spec()}))
    atoms = tuple((x, x * x / (1 + x * x) * m) for x, m in E.nu.atoms)
    if atoms:
        rho = rho + MeasureModel(atoms)
    return NevanlinnaTriple(-E.beta, b, rho, (0.0, _INF))


def theta_integral(b: float, psi: Callable, z) -> complex:
    """``z^2 int_0^inf exp(-z u) (b + Psi(0) - Psi(u)) du`` for non-real ``z``.

    ``psi`` must accept complex arguments with nonnegative real part.  The
    transform is continued to ``Re(z) <= 0`` by rotating the integration ray.
    """
    z = complex(z)
    if z.imag == 0 and z.real <= 0:
        raise DomainError(f"z={z} must lie off the negative real axis")
    if z.imag < 0:
        return theta_integral(b, psi, z.conjugate()).conjugate()
    psi0 = complex(psi(0.0))
    g = lambda u: b + psi0 - complex(psi(u))
    return z * z * numerics.laplace_transform_ray(g, z)


def theta_transform(b: float, Psi, psi_closed: Optional[Callable] = None) -> tuple:
    """Theta map of ``(b, Psi)``.

    Parameters
    ----------
    b : float
        Nonnegative drift of the image.
    Psi : LevyExponent or CatalogFunction
        The exponent; catalog entries supply both a closed form and their
        quadruple.
    psi_closed : callable, optional
        Closed form used by the integral evaluator instead of the quadrature
        of ``Psi``'s representation.

    Returns
    -------
    (PickFunction, NevanlinnaTriple)
        The integral-form evaluator (with the triple attached, unchecked) and
        the mapped triple.
    """
    if b < 0:
        raise DomainError("b must be nonnegative")
    if isinstance(Psi, CatalogFunction):
        if Psi.exponent is None:
            raise DomainError(f"{Psi.name} has no Levy-Laplace quadruple")
        psi_closed = psi_closed or Psi.func
        E = Psi.exponent
    else:
        E = Psi
    triple = theta_triple(b, E)
    psi = psi_closed if psi_closed is not None else (lambda u: eval_levy_exponent(E, complex(u)))
    F = PickFunction(triple, lambda z: theta_integral(b, psi, z), "theta", check=False)
    return F, triple


def stable_pick(theta: float) -> PickFunction:
    """``F_theta(z) = -Gamma(theta+1) z^(1-theta)``, the Theta image of ``lam**theta``.

    Closed-form evaluator (principal branch) with the triple
    ``(-beta_theta, 0, c_theta x^(1-theta)/(1+x^2) dx)`` attached.
    """
    _check_theta(theta)
    g = specfun.gamma_fn(theta + 1)
    triple = NevanlinnaTriple(-beta_theta(theta), 0.0,
                              MeasureModel.from_density("stable_theta", theta=theta),
                              (0.0, _INF))
    return PickFunction(triple, lambda z: -g * complex(z) ** (1 - theta), f"F_theta={theta}")


def fl_triple(E: LevyExponent) -> NevanlinnaTriple:
    """Characteristics ``(beta, alpha, gamma^2 delta_0 + x^2/(1+x^2) nu)``."""
    rho = MeasureModel(((0.0, E.gamma**2),) if E.gamma else ())
    if E.nu.density is not None:
        rho = rho + MeasureModel((), make_density("nevanlinna_of_levy",
                                                  {"base": E.nu.density.spec()}))
    return NevanlinnaTriple(E.beta, E.alpha, rho)


def free_analog_FL(psi_on_imag: Callable[[float], complex], w: float) -> complex:
    """``i w^2 int_0^inf exp(-w u) Psi(-i u) du``.

    ``psi_on_imag`` maps ``u`` to ``Psi(-i u)``.  For a symmetric law with
    characteristic function ``phi`` this is ``log phi(u)``.  Note that for the
    Gaussian exponent the value is ``-i gamma^2/w``, the negative of the Pick
    function with characteristics :func:`fl_triple`.
    """
    w = float(w)
    if not w > 0:
        raise DomainError("w must be positive")
    f = ScalarFunction(psi_on_imag, (0.0, _INF), "polynomial", -2.0)
    return 1j * w * w * numerics.laplace_transform(f, w, epsabs=1e-13, epsrel=1e-12)


# ---------------------------------------------------------------------------
# Bernstein and Stieltjes functions

@dataclass(frozen=True)
class BernsteinTriple:
    """``(q, d, Pi)`` of ``phi(lam) = q + d lam + int (1 - exp(-lam x)) Pi(dx)``."""

    q: float = 0.0
    d: float = 0.0
    Pi: MeasureModel = field(default_factory=MeasureModel)
    validate: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        if self.q < 0:
            raise DomainError("killing rate q must be nonnegative")
        if self.d < 0:
            raise DomainError("drift d must be nonnegative for a Bernstein function")
        if not self.Pi.is_zero:
            if self.Pi.support[0] < 0:
                raise DomainError("Pi must live on (0, inf)")
            if self.validate:
                self.Pi.check_integrable(lambda x: min(x, 1.0), "x ∧ 1")
                try:
                    self.Pi.integrate(lambda x: min(x, 1.0), points=(1.0,))
                except NonConvergence as exc:
                    raise IntegrabilityError(f"Pi does not integrate x ∧ 1: {exc}") from None

    def __call__(self, lam):
        return eval_bernstein(self, lam)

    def derivative(self, lam: float) -> float:
        """``phi'(lam) = d + int x exp(-lam x) Pi(dx)`` for ``lam > 0``."""
        val = self.d
        if not self.Pi.is_zero:
            val += float(self.Pi.integrate(lambda x: x * math.exp(-lam * x),
                                           points=_decade_points(lam)).real)
        return val

    def second_derivative(self, lam: float) -> float:
        if self.Pi.is_zero:
            return 0.0
        return -float(self.Pi.integrate(lambda x: x * x * math.exp(-lam * x),
                                        points=_decade_points(lam)).real)

    @property
    def limit(self) -> float:
        """``lim_{lam -> inf} phi(lam)``."""
        if self.d > 0:
            return _INF
        try:
            return self.q + self.Pi.mass()
        except IntegrabilityError:
            return _INF


def _decade_points(lam, signed: bool = False) -> tuple:
    # exp(-lam x) turns over at x ~ 1/|lam|; a decade ladder down to that
    # scale keeps Gauss-Kronrod from stepping over the layer
    pts = [1.0]
    x = 1.0 / abs(lam) if lam != 0 else 1.0
    while x < 1.0:
        pts.append(x)
        x *= 10.0
    if signed:
        pts += [-p for p in pts]
    return tuple(pts)


def eval_bernstein(T: BernsteinTriple, lam) -> complex:
    """Evaluate ``q + d lam + int (1 - exp(-lam x)) Pi(dx)``; ``lam = inf`` allowed."""
    if lam == _INF:
        return T.limit
    lam_c = complex(lam)
    if lam_c.real < 0:
        raise DomainError(f"Re(lam) must be nonnegative, got {lam}")
    val = T.q + T.d * lam_c
    if not T.Pi.is_zero:
        if lam_c.imag == 0:
            lr = lam_c.real
            k = lambda x: -math.expm1(-lr * x)
        else:
            k = lambda x: 1 - cmath.exp(-lam_c * x)
        val += T.Pi.integrate(k, points=_decade_points(lam_c), epsabs=1e-13, epsrel=1e-12)
    if lam_c.imag == 0:
        return float(val.real)
    return complex(val)


def stable_bernstein(alpha: float) -> BernsteinTriple:
    """``lam**alpha`` with ``Pi(dx) = alpha x^(-alpha-1)/Gamma(1-alpha) dx``."""
    return BernsteinTriple(0.0, 0.0, MeasureModel.from_density("bernstein_stable", alpha=alpha))


@dataclass(frozen=True)
class CBFLift:
    """``f(z) = z^2 int_0^inf exp(-z x) phi(x) dx`` for a Bernstein ``phi``."""

    phi: Callable

    def __call__(self, z):
        z = complex(z)
        if z.imag == 0:
            if z.real <= 0:
                raise DomainError("the lift is evaluated on (0, inf) and off the real axis")
            zr = z.real
            f = ScalarFunction(lambda x: float(self.phi(x)), (0.0, _INF), "exponential", 0.0)
            val = zr * zr * numerics.laplace_transform(f, zr).real
            return float(val)
        if z.imag < 0:
            return self(z.conjugate()).conjugate()
        return z * z * numerics.laplace_transform_ray(lambda u: complex(self.phi(u)), z)


def cbf_lift(phi) -> CBFLift:
    """CBF image ``z^2 L[phi; z]`` of a Bernstein function (triple or callable)."""
    if isinstance(phi, CatalogFunction):
        phi = phi.func
    return CBFLift(phi)


def stieltjes_eval(d: float, q: float, Delta: MeasureModel, z) -> complex:
    """``d + q/z + int Delta(du)/(z + u)`` for ``z`` off ``(-inf, 0]``."""
    if d < 0 or q < 0:
        raise DomainError("d and q must be nonnegative")
    z = complex(z)
    if z.imag == 0 and z.real <= 0:
        raise DomainError(f"z={z} lies on the cut (-inf, 0]")
    val = d + q / z
    if not Delta.is_zero:
        if Delta.support[0] < 0:
            raise DomainError("Delta must live on [0, inf)")
        try:
            Delta.integrate(lambda u: 1.0 / (1 + u))
        except NonConvergence as exc:
            raise IntegrabilityError(f"Delta does not integrate 1/(1+u): {exc}") from None
        if z.imag == 0:
            zr = z.real
            val += Delta.integrate(lambda u: 1.0 / (zr + u))
        else:
            val += Delta.integrate(lambda u: 1.0 / (z + u))
    if z.imag == 0:
        return float(complex(val).real)
    return complex(val)


# ---------------------------------------------------------------------------
# catalog with exact class tags

@dataclass(frozen=True)
class FunctionClassTag:
    """Class verdict for a function.

    ``klass`` is the tested class, ``certificate`` either ``'analytic-catalog'``
    or ``'numeric-screen'``, ``verdict`` pass/fail/inconclusive.
    """

    klass: str
    certificate: str
    verdict: str = "pass"
    screens: tuple = ()

    def __post_init__(self):
        if self.klass not in CLASSES:
            raise ValueError(f"unknown class {self.klass!r}")
        if self.certificate not in ("analytic-catalog", "numeric-screen"):
            raise ValueError(f"unknown certificate {self.certificate!r}")

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _close_classes(classes) -> frozenset:
    out = set(classes)
    if "TBF" in out:
        out.add("CBF")
    if "CBF" in out:
        out.add("BF")
    if "ST" in out:
        out.add("CM")
    return frozenset(out)


@dataclass(frozen=True)
class CatalogFunction:
    """A named closed-form function with its exact class memberships."""

    name: str
    params: dict
    func: Callable
    classes: frozenset
    exponent: Optional[LevyExponent] = field(default=None, compare=False)

    def __call__(self, z):
        return self.func(z)


def _power(z, s):
    if isinstance(z, complex):
        return z**s if z != 0 else 0j
    return z**s if z > 0 else (1.0 if s == 0 else 0.0)


def _ei_fn(z):
    if isinstance(z, complex) and z.imag != 0:
        return stieltjes_eval(0.0, 0.0, MeasureModel.from_density("exp"), z)
    z = float(z)
    if not z > 0:
        raise DomainError("ei is evaluated on (0, inf) here")
    if z > 1:
        return specfun._scaled_e1(z)
    return -math.exp(z) * specfun.expint_ei(-z)


def _frak_S(z):
    if isinstance(z, complex) and z.imag != 0:
        return cmath.log(z) / (z - 1)
    z = float(z)
    if not z > 0:
        raise DomainError("log z/(z-1) is evaluated on (0, inf) here")
    if abs(z - 1) < 1e-6:
        u = z - 1
        return 1 - u / 2 + u * u / 3
    return math.log(z) / (z - 1)


def _li(z, s):
    if isinstance(z, complex) and z.imag != 0:
        return -specfun.polylog(s, -z)
    z = float(z)
    if z < 0:
        raise DomainError("li_s is evaluated on [0, inf) here")
    return -specfun.polylog(s, -z).real


def _ratio_log(z):
    if isinstance(z, complex) and z.imag != 0:
        return z / cmath.log(1 + z)
    z = float(z)
    if z == 0:
        return 1.0
    return z / math.log1p(z)


def _lle_example(z):
    if isinstance(z, complex) and z.imag != 0:
        return z / ((1 + z) * cmath.log(1 + 1 / z))
    z = float(z)
    if z == 0:
        return 0.0
    return z / ((1 + z) * math.log1p(1 / z))


def catalog(name: str, **params) -> CatalogFunction:
    """Closed-form families with known classes.

    ``power(s)``, ``stable(theta)``, ``gaussian(gamma)``, ``ei``, ``frak_S``
    (``log z/(z-1)``), ``li(s)`` (``-Li_s(-z)``), ``ratio_log``
    (``lam/log(1+lam)``), ``lle_example`` (``lam/((1+lam) log(1+1/lam))``),
    ``exp_decay`` (``exp(-lam)``) and ``one_minus_exp`` (``1 - exp(-lam)``).
    """
    if name == "power":
        s = float(params["s"])
        cls = set()
        if 0 <= s <= 1:
            cls |= {"TBF"}
        if -1 <= s <= 0:
            cls |= {"ST"}
        if s <= 0:
            cls |= {"CM"}
        return CatalogFunction(name, {"s": s}, lambda z: _power(z, s), _close_classes(cls))
    if name == "stable":
        th = float(params["theta"])
        return CatalogFunction(name, {"theta": th}, lambda z: _power(z, th),
                               frozenset({"Lle"}), stable_exponent(th))
    if name == "gaussian":
        g = float(params.get("gamma", 1.0))
        return CatalogFunction(name, {"gamma": g}, lambda z: 0.5 * g * g * z * z,
                               frozenset({"Lle"}), gaussian_exponent(g))
    if name == "ei":
        return CatalogFunction(name, {}, _ei_fn, _close_classes({"ST"}))
    if name == "frak_S":
        return CatalogFunction(name, {}, _frak_S, _close_classes({"ST"}))
    if name == "li":
        s = float(params["s"])
        cls = {"TBF"} if s >= 1 else {"CBF"}
        return CatalogFunction(name, {"s": s}, lambda z: _li(z, s), _close_classes(cls))
    if name == "ratio_log":
        return CatalogFunction(name, {}, _ratio_log, _close_classes({"CBF"}))
    if name == "lle_example":
        return CatalogFunction(name, {}, _lle_example, frozenset({"Lle"}))
    if name == "exp_decay":
        return CatalogFunction(name, {}, lambda z: cmath.exp(-z) if isinstance(z, complex)
                               else math.exp(-z), frozenset({"CM"}))
    if name == "one_minus_exp":
        return CatalogFunction(name, {}, lambda z: 1 - (cmath.exp(-z) if isinstance(z, complex)
                                                        else math.exp(-z)),
                               frozenset({"BF"}))
    raise UnknownFunction(f"unknown catalog function {name!r}")


CATALOG_NAMES = ("power", "stable", "gaussian", "ei", "frak_S", "li", "ratio_log",
                 "lle_example", "exp_decay", "one_minus_exp")


# ---------------------------------------------------------------------------
# class screens

def _st_screen(f, **kw) -> tuple:
    a = numerics.cm_screen(f, **kw)
    b = numerics.bernstein_screen(lambda t: t * f(t), **kw)
    return a, b


def _numeric_screens(f, target: str, **kw) -> tuple:
    if target == "CM":
        return (numerics.cm_screen(f, **kw),)
    if target == "BF":
        return (numerics.bernstein_screen(f, **kw),)
    if target == "ST":
        return _st_screen(f, **kw)
    if target == "CBF":
        return (numerics.bernstein_screen(f, **kw),) + _st_screen(lambda t: f(t) / t, **kw)
    return ()


def _combine(screens) -> str:
    if not screens:
        return "inconclusive"
    if any(s.verdict == "fail" for s in screens):
        return "fail"
    if any(s.verdict == "inconclusive" for s in screens):
        return "inconclusive"
    return "pass"


def class_screen(f, target: str, *, use_catalog: bool = True, **screen_kw) -> FunctionClassTag:
    """Test membership of ``f`` in ``target`` (BF, CBF, TBF, ST, CM, CBe, Lle).

    Catalog functions are decided from their exact tags; anything else goes
    through the finite-difference screens:

    * BF: Bernstein screen of ``f``;
    * ST: CM screen of ``f`` and Bernstein screen of ``lam f(lam)``;
    * CBF: Bernstein screen of ``f`` and the ST screen of ``f(lam)/lam``.

    The numeric verdicts are necessary conditions only.  Classes without a
    numeric screen come back ``inconclusive``.
    """
    if target not in CLASSES:
        raise UnknownFunction(f"unknown class {target!r}")
    if use_catalog and isinstance(f, CatalogFunction):
        verdict = "pass" if target in f.classes else "fail"
        return FunctionClassTag(target, "analytic-catalog", verdict)
    fn = f.func if isinstance(f, CatalogFunction) else f
    screens = _numeric_screens(lambda t: float(fn(t)), target, **screen_kw)
    return FunctionClassTag(target, "numeric-screen", _combine(screens), screens)
