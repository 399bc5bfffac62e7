"""Negative moments of subordinators and their behaviour in time.

For a subordinator with Laplace exponent ``phi`` (a Bernstein function with
``phi(0) = 0``) and inverse ``Psi = phi^-1``,

    E[xi_t^-p] = t/Gamma(p+1) int_0^inf exp(-t x) Psi(x)^p dx,   p > -1,

and, depending on ``p``, ``t -> E[xi_t^-p]`` or ``t -> t E[xi_t^-p]`` is
Bernstein, completely monotone or a Stieltjes function.  This module evaluates
the moments, the alternative representations through ``(Psi^p)'`` and
``(Psi^p)''``, and screens/certifies the resulting time profiles.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional, Sequence

import numpy as np
from scipy.special import lambertw

from . import levy, numerics, specfun
from .errors import (DivergentMoment, DomainError, ExtrapolationUnstable,
                     NonConvergence, RegimePreconditionFailed, UnknownFunction)
from .levy import BernsteinTriple, FunctionClassTag, LevyExponent
from .measures import MeasureModel
from .numerics import ScalarFunction, ScreenVerdict

_INF = math.inf
DEFAULT_TIMES = (0.5, 1.0, 2.0, 5.0)


# ---------------------------------------------------------------------------
# specs

@dataclass(eq=False)
class SubordinatorSpec:
    """A Bernstein function ``phi`` with its inverse and limit ``l_phi``.

    Closed forms are used where the catalog has them; otherwise ``phi'`` and
    ``phi''`` come from the triple or from central differences, and ``Psi``
    from bracketed root finding with a thread-safe memo.
    """

    name: str
    params: dict
    phi: Callable[[float], float]
    l_phi: float = _INF
    phi_prime: Optional[Callable[[float], float]] = None
    phi_second: Optional[Callable[[float], float]] = None
    psi_closed: Optional[Callable[[float], float]] = None
    log_psi_closed: Optional[Callable[[float], float]] = None
    triple: Optional[BernsteinTriple] = None
    _memo: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def phi0(self) -> float:
        return float(self.phi(0.0))

    def psi(self, x: float) -> float:
        return inverse_exponent(self)(x)

    def dphi(self, lam: float) -> float:
        if self.phi_prime is not None:
            return float(self.phi_prime(lam))
        if self.triple is not None:
            return self.triple.derivative(lam)
        h = 1e-5 * max(1.0, lam)
        lo = max(lam - h, 0.0)
        return (self.phi(lam + h) - self.phi(lo)) / (lam + h - lo)

    def d2phi(self, lam: float) -> float:
        if self.phi_second is not None:
            return float(self.phi_second(lam))
        if self.triple is not None:
            return self.triple.second_derivative(lam)
        h = 1e-4 * max(1.0, lam)
        if lam - h <= 0:
            return (self.dphi(lam + h) - self.dphi(lam)) / h
        return (self.phi(lam + h) - 2 * self.phi(lam) + self.phi(lam - h)) / (h * h)

    def to_dict(self) -> dict:
        return {"phi": {"name": self.name, "params": self.params}}


def stable_spec(alpha: float) -> SubordinatorSpec:
    """``phi(lam) = lam**alpha``, ``Psi(x) = x**(1/alpha)``."""
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise DomainError(f"alpha must lie in (0, 1], got {alpha}")
    a = alpha
    return SubordinatorSpec(
        "stable", {"alpha": a},
        phi=lambda lam: lam**a,
        phi_prime=lambda lam: a * lam ** (a - 1),
        phi_second=lambda lam: a * (a - 1) * lam ** (a - 2),
        psi_closed=lambda x: x ** (1 / a),
        log_psi_closed=lambda x: math.log(x) / a)


def _lambert_phi(lam: float) -> float:
    return float(lambertw(lam).real)


def _lambert_dphi(lam: float) -> float:
    if lam == 0:
        return 1.0
    w = _lambert_phi(lam)
    return w / (lam * (1 + w))


def _lambert_d2phi(lam: float) -> float:
    w = _lambert_phi(lam)
    d = _lambert_dphi(lam)
    return -d * d * (2 + w) / (1 + w)


def lambert_spec() -> SubordinatorSpec:
    """Principal Lambert function ``phi_L``: ``lam = phi e^phi``, ``Psi(x) = x e^x``."""
    return SubordinatorSpec(
        "lambert", {}, phi=_lambert_phi, phi_prime=_lambert_dphi, phi_second=_lambert_d2phi,
        psi_closed=lambda x: x * math.exp(x) if x < 700.0 else math.inf,
        log_psi_closed=lambda x: math.log(x) + x)


def trivial_spec() -> SubordinatorSpec:
    """``phi(lam) = lam``: the deterministic subordinator ``xi_t = t``."""
    return SubordinatorSpec(
        "trivial", {}, phi=lambda lam: lam, phi_prime=lambda lam: 1.0,
        phi_second=lambda lam: 0.0, psi_closed=lambda x: x, log_psi_closed=math.log)


def _ratio_log(lam):
    return 1.0 if lam == 0 else lam / math.log1p(lam)


def _ratio_log_d(lam):
    if lam == 0:
        return 0.5
    L = math.log1p(lam)
    return 1 / L - lam / ((1 + lam) * L * L)


def _ratio_log_d2(lam):
    if lam < 1e-4:
        return -1.0 / 6.0 + lam / 6.0
    L = math.log1p(lam)
    return -1 / ((1 + lam) * L * L) - (L - 2 * lam) / ((1 + lam) ** 2 * L**3)


def ratio_log_spec() -> SubordinatorSpec:
    """``phi(lam) = lam/log(1+lam)``.

    Note ``phi(0+) = 1``: this Bernstein function has killing rate 1, so the
    moment formulas (which need ``phi(0) = 0``) refuse it.  Its inverse is
    computed numerically on ``[1, inf)``.
    """
    return SubordinatorSpec("ratio_log", {}, phi=_ratio_log, phi_prime=_ratio_log_d,
                            phi_second=_ratio_log_d2)


def triple_spec(triple: BernsteinTriple, params: Optional[dict] = None) -> SubordinatorSpec:
    """Spec from ``(q, d, Pi)``; ``phi``, ``phi'`` and ``phi''`` by quadrature."""
    return SubordinatorSpec("custom_triple", params or {},
                            phi=lambda lam: float(levy.eval_bernstein(triple, lam)),
                            l_phi=triple.limit, triple=triple)


def spec_from_dict(doc: Mapping) -> SubordinatorSpec:
    """Build a spec from ``{"phi": {"name": ..., "params": {...}}}``."""
    if set(doc) - {"phi"}:
        raise ValueError(f"unknown spec keys {sorted(set(doc) - {'phi'})}")
    phi = doc["phi"]
    name, params = phi["name"], dict(phi.get("params", {}))
    if name == "stable":
        return stable_spec(params["alpha"])
    if name == "lambert":
        return lambert_spec()
    if name == "trivial":
        return trivial_spec()
    if name == "ratio_log":
        return ratio_log_spec()
    if name == "custom_triple":
        extra = set(params) - {"q", "d", "Pi"}
        if extra:
            raise ValueError(f"unknown custom_triple params {sorted(extra)}")
        Pi = MeasureModel.from_dict(params.get("Pi", {}))
        return triple_spec(BernsteinTriple(float(params.get("q", 0.0)),
                                           float(params.get("d", 0.0)), Pi), params)
    raise UnknownFunction(f"unknown subordinator {name!r}")


@dataclass(frozen=True)
class MomentQuery:
    p: float
    t: float

    def __post_init__(self):
        if not self.p > -1:
            raise DomainError(f"p must exceed -1, got {self.p}")
        if not self.t > 0:
            raise DomainError(f"t must be positive, got {self.t}")


@dataclass(frozen=True)
class TemporalVerdict:
    """Result of :func:`temporal_representation`.

    ``regime`` is ``'bernstein'`` (``-1 < p < 0``), ``'cm'`` (``0 <= p < 1``)
    or ``'t_cm'`` (``p >= 1``).  ``residuals`` maps each test time to the
    relative gap between the direct moment and the regime representation.
    """

    regime: str
    representation_used: str
    screen: ScreenVerdict
    residuals: tuple = ()
    passed: bool = False

    def __post_init__(self):
        if self.regime not in ("bernstein", "cm", "t_cm"):
            raise ValueError(f"bad regime {self.regime!r}")


def regime_of(p: float) -> str:
    if -1 < p < 0:
        return "bernstein"
    if 0 <= p < 1:
        return "cm"
    if p >= 1:
        return "t_cm"
    raise DomainError(f"p must exceed -1, got {p}")


# ---------------------------------------------------------------------------
# inverse exponent

def inverse_exponent(spec: SubordinatorSpec) -> Callable[[float], float]:
    """``Psi = phi^-1`` on ``[phi(0), l_phi)``.

    Closed forms for the catalog; otherwise Brent's method on an expanding
    bracket, memoised under a lock so the spec can be shared across threads.
    """
    lo_val = spec.phi0

    def check(x):
        if x < lo_val or x >= spec.l_phi:
            raise DomainError(f"Psi is defined on [{lo_val}, {spec.l_phi}), got x={x}")

    if spec.psi_closed is not None:
        def psi(x):
            check(x)
            return spec.psi_closed(x)
        return psi

    def psi(x):
        x = float(x)
        check(x)
        if x == lo_val:
            return 0.0
        with spec._lock:
            hit = spec._memo.get(x)
        if hit is not None:
            return hit
        hi = 1.0
        while spec.phi(hi) < x:
            hi *= 2.0
            if hi > 1e300:
                raise NonConvergence(f"no bracket found for Psi({x})")
        lam = numerics.invert_monotone(spec.phi, x, (0.0, hi), tol_x=1e-15 * max(1.0, hi),
                                       tol_f=1e-9 * max(1.0, x))
        with spec._lock:
            spec._memo[x] = lam
        return lam
    return psi


def _log_psi(spec, x):
    if spec.log_psi_closed is not None:
        return spec.log_psi_closed(x)
    return math.log(spec.psi(x))


def _require_standard(spec):
    if spec.phi0 != 0.0:
        raise DomainError(f"{spec.name}: phi(0) = {spec.phi0} != 0, moment formulas need phi(0) = 0")


# ---------------------------------------------------------------------------
# integrability diagnostics

def tail_decay_rate(spec: SubordinatorSpec, p: float, t: float) -> float:
    """Estimated slope of ``p log Psi(x) - t x`` far out (negative means decay)."""
    x0 = 40.0 / t
    xs = [x0 * 2.0**k for k in range(6)]
    g = [p * _log_psi(spec, x) - t * x for x in xs]
    return (g[-1] - g[-2]) / (xs[-1] - xs[-2])


def local_exponent(spec: SubordinatorSpec) -> float:
    """``d log Psi / d log x`` near 0, from two small abscissae."""
    x1, x2 = 1e-9, 1e-7
    return (_log_psi(spec, x2) - _log_psi(spec, x1)) / (math.log(x2) - math.log(x1))


def check_integrability(spec: SubordinatorSpec, p: float, t: float) -> float:
    """Raise :class:`DivergentMoment` unless ``exp(-t x) Psi^p`` is integrable.

    Returns the estimated exponential decay rate of the integrand.
    """
    rate = t
    if math.isinf(spec.l_phi):
        slope = tail_decay_rate(spec, p, t)
        if not slope < -1e-12:
            raise DivergentMoment(
                f"exp(-t x) Psi^p(x) is not integrable at infinity (t={t}, p={p})")
        rate = -slope
    if p < 0:
        kappa = local_exponent(spec)
        if p * kappa <= -1 + 1e-9:
            raise DivergentMoment(
                f"Psi^p(x) ~ x^{p * kappa:.6g} is not integrable at 0 (p={p})")
    return rate


# ---------------------------------------------------------------------------
# moments

def _weighted_power(spec, p, t):
    # exp(-t x) Psi(x)^p, assembled in log space so x e^x style inverses never overflow
    def g(x):
        if x <= 0:
            return 0.0 if p > 0 else math.inf
        return math.exp(p * _log_psi(spec, x) - t * x)
    return g


def closed_moment(spec: SubordinatorSpec, p: float, t: float) -> float:
    """Catalog closed forms of ``E[xi_t^-p]``."""
    q = MomentQuery(p, t)
    p, t = q.p, q.t
    if p == 0:
        return 1.0
    if spec.name == "stable":
        a = spec.params["alpha"]
        if p <= -a:
            raise DivergentMoment(f"E[xi_t^-p] is infinite for p <= -alpha ({p} <= {-a})")
        return t ** (-p / a) * specfun.gamma_fn(1 + p / a) / specfun.gamma_fn(1 + p)
    if spec.name == "lambert":
        if not t > p:
            raise DivergentMoment(f"the Lambert moment needs t > p, got t={t}, p={p}")
        return t / (t - p) ** (p + 1)
    if spec.name == "trivial":
        return t ** (-p)
    raise DomainError(f"no closed form for {spec.name!r}")


def has_closed_moment(spec: SubordinatorSpec) -> bool:
    return spec.name in ("stable", "lambert", "trivial")


def negative_moment(spec: SubordinatorSpec, q, method: str = "quadrature") -> float:
    """``E[xi_t^-p] = t/Gamma(p+1) int_0^l exp(-t x) Psi^p(x) dx`` (+ atom).

    Parameters
    ----------
    q : MomentQuery or (p, t)
    method : {'quadrature', 'closed'}

    Raises
    ------
    DivergentMoment
        The integrand is not integrable, or ``xi_t`` has an atom at 0 while
        ``p > 0``.
    """
    if not isinstance(q, MomentQuery):
        q = MomentQuery(*q)
    p, t = q.p, q.t
    if p == 0:
        return 1.0
    _require_standard(spec)
    if method == "closed":
        return closed_moment(spec, p, t)
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    killed = math.isfinite(spec.l_phi)
    if killed and p > 0:
        raise DivergentMoment("xi_t = 0 with positive probability, so E[xi_t^-p] = inf for p > 0")
    rate = check_integrability(spec, p, t)
    g = _weighted_power(spec, p, t)
    if killed:
        val = numerics.integrate_interval(g, 0.0, spec.l_phi, epsabs=0.0, epsrel=1e-12).value
    else:
        f = ScalarFunction(g, (0.0, _INF), "exponential", rate)
        val = numerics.integrate_semi_infinite(f, 0.0, epsabs=0.0, epsrel=1e-12).value
    # the atom term exp(-t l) Psi^p(l) vanishes for p < 0 since Psi(l-) = inf
    return t * float(val) / specfun.gamma_fn(p + 1)


def mellin_moment(spec: SubordinatorSpec, p: float, t: float) -> float:
    """``E[Psi_t(E)^p]`` for ``E ~ Exp(1)`` and ``Psi_t = (t phi)^-1``.

    Equals ``Gamma(p+1) E[xi_t^-p]``; evaluated on the ``y = t x`` scale as
    an independent check of :func:`negative_moment`.
    """
    if p == 0:
        return 1.0
    _require_standard(spec)
    if math.isfinite(spec.l_phi) and p > 0:
        raise DivergentMoment("atom at 0 makes the moment infinite")
    check_integrability(spec, p, t)
    h = _weighted_power(spec, p, t)
    g = lambda y: h(y / t)
    if math.isfinite(spec.l_phi):
        val = numerics.integrate_interval(g, 0.0, t * spec.l_phi, epsabs=0.0, epsrel=1e-12).value
    else:
        val = numerics.integrate_semi_infinite(g, 0.0, epsabs=0.0, epsrel=1e-12).value
    return float(val)


def psi_p_derivatives(spec: SubordinatorSpec, p: float, x: float) -> tuple:
    """``((Psi^p)'(x), (Psi^p)''(x))`` by the chain rule through ``phi``.

    ``(Psi^p)' = p Psi^(p-1)/phi'(Psi)`` and
    ``(Psi^p)'' = p Psi^(p-2)/phi'(Psi)^3 [(p-1) phi'(Psi) - Psi phi''(Psi)]``.
    """
    if not (spec.phi0 < x < spec.l_phi):
        raise DomainError(f"x={x} must lie in ({spec.phi0}, {spec.l_phi})")
    lam = spec.psi(x)
    d1 = spec.dphi(lam)
    d2 = spec.d2phi(lam)
    if not math.isfinite(lam) or d1 == 0.0:
        # Psi has overflowed; phi' is non-increasing, so Psi^(p-1)/phi'(Psi)
        # is of order Psi^p there and only vanishes for p < 0
        if p < 0:
            return 0.0, 0.0
        raise NonConvergence(f"Psi({x}) overflows; (Psi^p)' is not representable")
    # log form: lam ** (p-1) and d1 ** 3 under/overflow separately for fast phi'
    first = p * math.exp((p - 1) * math.log(lam) - math.log(d1))
    second = first * ((p - 1) - lam * d2 / d1) / (lam * d1)
    return first, second


def psi_p_prime_at_zero(spec: SubordinatorSpec, p: float) -> float:
    """``(Psi^p)'(0+)`` by Richardson extrapolation of the chain-rule value."""
    est, _ = numerics.one_sided_limit(lambda x: psi_p_derivatives(spec, p, x)[0], 0.0,
                                      side=1, h0=1e-3, n=5)
    return float(np.real(est))


def psi_p_prime_at_infinity(spec: SubordinatorSpec, p: float) -> float:
    """``lim_{x -> inf} (Psi^p)'(x)`` by Aitken extrapolation on a geometric grid."""
    vals = [psi_p_derivatives(spec, p, 10.0 * 4.0**k)[0] for k in range(8)]
    return _aitken_tail(vals)


def _aitken_tail(vals, tol: float = 1e-6) -> float:
    def aitken(v0, v1, v2):
        den = (v2 - v1) - (v1 - v0)
        if den == 0:
            return v2
        return v2 - (v2 - v1) ** 2 / den

    a1 = aitken(*vals[-4:-1])
    a2 = aitken(*vals[-3:])
    if abs(a2 - a1) > tol * max(1.0, abs(a2)):
        raise ExtrapolationUnstable(f"Aitken estimates disagree: {a1!r} vs {a2!r}")
    return a2


def drift_limit(spec: SubordinatorSpec, tol: float = 1e-6) -> float:
    """``lim_{x -> inf} phi'(x)``, the drift of the subordinator."""
    vals = [spec.dphi(10.0 * 4.0**k) for k in range(8)]
    d = _aitken_tail(vals, tol)
    return 0.0 if -tol < d < 0 else d


# ---------------------------------------------------------------------------
# temporal representations

def _rep_integral(g, epsrel=1e-11):
    f = ScalarFunction(g, (0.0, _INF))
    return float(numerics.integrate_interval(f, 0.0, _INF, (1.0,), epsabs=1e-14,
                                             epsrel=epsrel).value)


def representation_value(spec: SubordinatorSpec, p: float, t: float, form: str) -> float:
    """Evaluate one of the regime representations at time ``t``.

    ``form`` is one of

    * ``'bernstein_e'``: ``E = int (1 - e^{-tx}) (-(Psi^p)') dx / Gamma(p+1)`` (``-1 < p < 0``);
    * ``'laplace_e'``: ``E = int e^{-tx} (Psi^p)' dx / Gamma(p+1)`` (``p > 0``);
    * ``'bernstein_te'``: ``tE = [(Psi^p)'(inf) + int (1 - e^{-tx}) (-(Psi^p)'') dx] / Gamma(p+1)``
      (``0 < p < 1``);
    * ``'laplace_te'``: ``tE = [(Psi^p)'(0+) + int e^{-tx} (Psi^p)'' dx] / Gamma(p+1)`` (``p >= 1``).

    The returned value is ``E`` for the first two forms and ``t E`` otherwise.
    """
    gp = specfun.gamma_fn(p + 1)
    d = lambda x: psi_p_derivatives(spec, p, x)
    if form == "bernstein_e":
        return _rep_integral(lambda x: -math.expm1(-t * x) * -d(x)[0] if x > 0 else 0.0) / gp
    if form == "laplace_e":
        return _rep_integral(lambda x: math.exp(-t * x) * d(x)[0] if x > 0 else 0.0) / gp
    if form == "bernstein_te":
        tail = psi_p_prime_at_infinity(spec, p)
        body = _rep_integral(lambda x: -math.expm1(-t * x) * -d(x)[1] if x > 0 else 0.0)
        return (tail + body) / gp
    if form == "laplace_te":
        head = psi_p_prime_at_zero(spec, p)
        body = _rep_integral(lambda x: math.exp(-t * x) * d(x)[1] if x > 0 else 0.0)
        return (head + body) / gp
    raise ValueError(f"unknown representation {form!r}")


def moment_profile(spec: SubordinatorSpec, p: float, power: int = 0) -> Callable[[float], float]:
    """``t -> t^power E[xi_t^-p]``, closed form when the catalog has one."""
    method = "closed" if has_closed_moment(spec) else "quadrature"
    return lambda t: t**power * negative_moment(spec, MomentQuery(p, t), method)


def temporal_representation(spec: SubordinatorSpec, p: float,
                            times: Sequence[float] = DEFAULT_TIMES,
                            rtol: float = 1e-6) -> TemporalVerdict:
    """Cross-check the direct moment against the regime representation.

    The regime is picked from ``p``; its hypotheses (integrability of
    ``Psi^p`` near 0 for ``p < 0``, of ``exp(-tx) Psi^p`` near infinity for
    every ``t`` when ``p >= 0``) are checked numerically first.  The verdict
    passes when the two routes agree to ``rtol`` at every time and the
    regime's screen (Bernstein for ``E``, CM for ``E``, CM for ``t E``) passes.
    """
    regime = regime_of(p)
    _require_standard(spec)
    probe_t = min(times) / 10.0
    try:
        check_integrability(spec, p, probe_t)
    except DivergentMoment as exc:
        cond = ("Psi^p integrable near 0" if regime == "bernstein"
                else "exp(-t x) Psi^p(x) integrable near infinity for all t > 0")
        raise RegimePreconditionFailed(cond, f"{cond}: {exc}") from None
    if regime == "bernstein":
        form, power, screen_fn = "bernstein_e", 0, numerics.bernstein_screen
    elif regime == "cm":
        form, power, screen_fn = "laplace_e", 0, numerics.cm_screen
    else:
        form, power, screen_fn = "laplace_te", 1, numerics.cm_screen
    residuals = []
    for t in times:
        direct = t**power * negative_moment(spec, MomentQuery(p, t))
        rep = representation_value(spec, p, t, form)
        residuals.append((t, abs(direct - rep) / abs(direct)))
    screen = screen_fn(moment_profile(spec, p, power))
    ok = all(r <= rtol for _, r in residuals) and screen.passed
    return TemporalVerdict(regime, form, screen, tuple(residuals), ok)


def item2_bernstein(spec: SubordinatorSpec, p: float, grid=None) -> tuple:
    """For ``0 <= p < 1``: screen ``t -> t E`` as Bernstein and compare with
    the criterion "``lam^(1-p) phi'(lam)`` is non-decreasing".

    Returns ``(screen_verdict, criterion_holds)``.
    """
    if not 0 <= p < 1:
        raise RegimePreconditionFailed("0 <= p < 1")
    screen = numerics.bernstein_screen(moment_profile(spec, p, 1), grid=grid)
    lams = numerics.log_grid(1e-3, 1e3, 200) if grid is None else np.asarray(grid)
    vals = np.array([lam ** (1 - p) * spec.dphi(lam) for lam in lams])
    holds = bool(np.all(np.diff(vals) >= -1e-10 * np.maximum(1.0, np.abs(vals[1:]))))
    return screen, holds


# ---------------------------------------------------------------------------
# inverse-time classification

@dataclass(frozen=True)
class ClassifierReport:
    """ST screen of ``t E``, CBF screen of ``t^2 E`` and the overall verdict."""

    p: float
    verdict: str
    certificate: str
    st: Optional[FunctionClassTag] = None
    cbf: Optional[FunctionClassTag] = None
    numeric_st: Optional[FunctionClassTag] = None
    numeric_cbf: Optional[FunctionClassTag] = None
    note: str = ""

    @property
    def screens_agree(self) -> bool:
        pairs = [(self.st, self.cbf), (self.numeric_st, self.numeric_cbf)]
        return all(a is None or b is None or a.verdict == b.verdict for a, b in pairs)


def classify_inverse_time(spec: SubordinatorSpec, p: float) -> ClassifierReport:
    """Decide whether ``t -> t E[xi_t^-p]`` is Stieltjes (equivalently
    ``t -> t^2 E[xi_t^-p]`` is complete Bernstein), which characterises
    inverse-time subordinators.

    Stable specs are certified analytically (``t E`` is a power
    ``c t^(1 - p/alpha)``); numeric screens always run alongside.  A moment
    that is infinite for some ``t > 0`` yields a ``fail`` verdict carrying a
    ``DivergentMoment`` note.
    """
    if not p >= 1:
        raise RegimePreconditionFailed("p >= 1", f"classification needs p >= 1, got {p}")
    _require_standard(spec)
    try:
        check_integrability(spec, p, 1e-3)
    except DivergentMoment as exc:
        return ClassifierReport(p, "fail", "analytic-catalog" if has_closed_moment(spec)
                                else "numeric-screen", note=f"DivergentMoment: {exc}")
    tE = moment_profile(spec, p, 1)
    t2E = moment_profile(spec, p, 2)
    num_st = levy.class_screen(tE, "ST")
    num_cbf = levy.class_screen(t2E, "CBF")
    if spec.name == "stable":
        e = 1 - p / spec.params["alpha"]
        st = levy.class_screen(levy.catalog("power", s=e), "ST")
        cbf = levy.class_screen(levy.catalog("power", s=e + 1), "CBF")
        verdict = "pass" if st.passed and cbf.passed else "fail"
        return ClassifierReport(p, verdict, "analytic-catalog", st, cbf, num_st, num_cbf)
    verdicts = {num_st.verdict, num_cbf.verdict}
    verdict = "fail" if "fail" in verdicts else ("pass" if verdicts == {"pass"} else "inconclusive")
    return ClassifierReport(p, verdict, "numeric-screen", None, None, num_st, num_cbf)


# ---------------------------------------------------------------------------
# Stieltjes form check

@dataclass(frozen=True)
class StieltjesCheck:
    passed: bool
    residuals: tuple
    drift_at_zero: float


def stieltjes_form_check(spec: SubordinatorSpec, p: float, quadruple: Optional[LevyExponent],
                         times: Sequence[float] = DEFAULT_TIMES,
                         rtol: float = 1e-6) -> StieltjesCheck:
    """Compare ``t E[xi_t^-p]`` with the Stieltjes form built from a quadruple
    ``(0, beta_p, gamma_p, nu_p)`` claimed for ``Psi^p``:

        [(Psi^p)'(0+) + gamma_p^2/t + int u^2/(t+u) nu_p(du)] / Gamma(p+1),

    with ``(Psi^p)'(0+) = beta_p - int x^3/(1+x^2) nu_p(dx)``.

    Raises
    ------
    RegimePreconditionFailed
        No quadruple was given, ``Psi^p`` grows faster than quadratically, or
        the quadruple does not reproduce ``Psi^p``.
    """
    if p < 1:
        raise RegimePreconditionFailed("p >= 1")
    _require_standard(spec)
    psi = inverse_exponent(spec)
    growth = [psi(x) ** p / x**2 for x in (1e2, 1e4, 1e6)]
    if growth[2] > 10 * max(growth[1], 1e-300) and growth[2] > growth[1] > growth[0]:
        raise RegimePreconditionFailed("Psi^p in Lle(0,inf)",
                                       "Psi^p grows faster than lam^2, so it has no quadruple")
    if quadruple is None:
        raise RegimePreconditionFailed("Psi^p in Lle(0,inf)", "no quadruple supplied")
    if quadruple.alpha != 0 or (not quadruple.nu.is_zero and quadruple.nu.support[0] < 0):
        raise RegimePreconditionFailed("quadruple of the form (0, beta, gamma, nu on (0,inf))")
    for x in (0.25, 1.0, 4.0):
        want = psi(x) ** p
        got = float(np.real(levy.eval_levy_exponent(quadruple, x)))
        if abs(got - want) > 1e-6 * max(1.0, abs(want)):
            raise RegimePreconditionFailed(
                "quadruple represents Psi^p", f"quadruple gives {got} at x={x}, Psi^p = {want}")
    nu = quadruple.nu
    drift0 = quadruple.beta
    if not nu.is_zero:
        drift0 -= float(np.real(nu.integrate(lambda x: x**3 / (1 + x * x), points=(1.0,))))
    gp = specfun.gamma_fn(p + 1)
    residuals = []
    for t in times:
        rhs = drift0 + quadruple.gamma**2 / t
        if not nu.is_zero:
            rhs += float(np.real(nu.integrate(lambda u: u * u / (t + u), points=(1.0,))))
        rhs /= gp
        lhs = t * negative_moment(spec, MomentQuery(p, t))
        residuals.append((t, abs(lhs - rhs) / abs(lhs)))
    return StieltjesCheck(all(r <= rtol for _, r in residuals), tuple(residuals), drift0)
