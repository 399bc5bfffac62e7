"""Verification suites: each row pits a closed form against an independent route.

A suite is a list of row builders.  Builders may run concurrently; rows are
always returned in builder order, so reports are reproducible byte for byte.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import hyperbolic, levy, nevanlinna, specfun, subordinator
from .errors import PickforgeError

SUITES = ("hyperbolic", "inversion", "theta", "moments", "classifier", "specfun")

# default tolerances per row family
TOL = {
    "fourier": 1e-8, "mass": 1e-9, "limit": 1e-7, "bdlp": 1e-7, "sum": 1e-12,
    "jj": 1e-7, "perron": 1e-3, "theta": 1e-6, "free_analog": 1e-6,
    "moment": 1e-8, "temporal": 1e-6, "screen": 0.5, "specfun": 1e-10,
}


@dataclass(frozen=True)
class ReportRow:
    """One checked identity.

    ``abs_err`` is ``|lhs - rhs|`` and ``passed`` holds iff
    ``abs_err <= tolerance``.  For relative checks ``tolerance`` is already
    scaled by ``|rhs|``.  Verdict rows encode pass/fail as 1/0.
    """

    identity_tag: str
    s_or_w_or_t: float
    lhs: complex
    rhs: complex
    abs_err: float
    passed: bool
    tolerance: float

    FIELDS = ("identity_tag", "s_or_w_or_t", "lhs", "rhs", "abs_err", "pass", "tolerance")


def make_row(tag: str, x: float, lhs, rhs, tol: float, *, relative: bool = False) -> ReportRow:
    lhs = complex(lhs) if isinstance(lhs, complex) else float(lhs)
    rhs = complex(rhs) if isinstance(rhs, complex) else float(rhs)
    err = abs(lhs - rhs)
    scaled = tol * abs(rhs) if relative else tol
    ok = bool(err <= scaled)  # nan compares false
    return ReportRow(tag, float(x), lhs, rhs, float(err), ok, float(scaled))


def failed_row(tag: str, x: float, exc: Exception) -> ReportRow:
    return ReportRow(f"{tag} [{type(exc).__name__}]", float(x), math.nan, math.nan,
                     math.inf, False, math.nan)


def _tol(key, override):
    return TOL[key] if override is None else override


Builder = Callable[[], ReportRow]


def _guard(tag, x, fn) -> Builder:
    def run():
        try:
            return fn()
        except PickforgeError as exc:
            return failed_row(tag, x, exc)
    return run


# ---------------------------------------------------------------------------
# suites

def _hyperbolic(tol, seed) -> list:
    rows = []
    for k in hyperbolic.KINDS:
        m = hyperbolic.model(k)
        for s in (0.25, 0.5, 1.0, 2.0, 4.0):
            rows.append(_guard(m.identity_tag, s, lambda m=m, s=s: make_row(
                m.identity_tag, s, m.fourier_closed(s), m.fourier_integral(s),
                _tol("fourier", tol))))
        rows.append(_guard(f"mass_{k}", 0.0, lambda m=m, k=k: make_row(
            f"mass_{k}", 0.0, m.measure().mass(), hyperbolic.MASSES[k], _tol("mass", tol))))
        for s in (1e-5, 1e-7, 1e-9):
            rows.append(_guard(f"limit_{k}", s, lambda m=m, k=k, s=s: make_row(
                f"limit_{k}", s, m.fourier_closed(s), hyperbolic.MASSES[k],
                _tol("limit", tol))))
    for s in (0.0, 0.5, 1.0):
        rows.append(_guard("bdlp_C", s, lambda s=s: make_row(
            "bdlp_C", s, *hyperbolic.bdlp_identity(s), _tol("bdlp", tol))))
    for s in (0.1, 0.5, 1.0, 3.0):
        rows.append(_guard("sum_C_eq_S_plus_T", s, lambda s=s: make_row(
            "sum_C_eq_S_plus_T", s, hyperbolic.fourier_rho_closed("C", s),
            hyperbolic.fourier_rho_closed("S", s) + hyperbolic.fourier_rho_closed("T", s),
            _tol("sum", tol))))
    return rows


def _inversion(tol, seed) -> list:
    rows = []
    targets = [(f"jj_{k}", hyperbolic.model(k).pick(), hyperbolic.model(k).measure())
               for k in hyperbolic.KINDS]
    for th in (1.25, 1.5, 1.75):
        F = levy.stable_pick(th)
        targets.append((f"jj_F_theta={th}", F, F.triple.rho))
    for tag, F, rho in targets:
        for w in (1.5, 2.0, 3.0, 5.0):
            rows.append(_guard(tag, w, lambda tag=tag, F=F, rho=rho, w=w: make_row(
                tag, w, nevanlinna.jj_lhs(F, w), nevanlinna.jj_rhs(rho, F(1j), w),
                _tol("jj", tol))))
    th = 1.5

    def perron():
        F = levy.stable_pick(th)
        got = nevanlinna.stieltjes_perron(F, (1.0, 2.0))
        want = 2 * levy.c_theta(th) * (math.sqrt(2) - 1)
        return make_row("perron_F_theta=1.5_(1,2]", th, got, want, _tol("perron", tol))

    rows.append(_guard("perron_F_theta=1.5_(1,2]", th, perron))
    return rows


def _theta(tol, seed) -> list:
    rows = []
    for th in (1.25, 1.5, 1.75):
        g = specfun.gamma_fn(th + 1)
        F_int, triple = levy.theta_transform(0.0, levy.catalog("stable", theta=th))
        for z in (1 + 1j, 2j, 0.5 + 2j):
            want = -g * z ** (1 - th)
            tag = f"theta_integral[z={z}]"
            rows.append(_guard(tag, th, lambda F=F_int, z=z, want=want, tag=tag: make_row(
                tag, th, F(z), want, _tol("theta", tol), relative=True)))
            tag = f"theta_triple[z={z}]"
            rows.append(_guard(tag, th, lambda tr=triple, z=z, want=want, tag=tag: make_row(
                tag, th, nevanlinna.eval_pick(tr, z), want, _tol("theta", tol), relative=True)))
    for k in ("C", "S"):
        m = hyperbolic.model(k)
        for w in (2.0, 3.0):
            tag = f"free_analog_{k}"
            rows.append(_guard(tag, w, lambda m=m, w=w, tag=tag: make_row(
                tag, w, levy.free_analog_FL(m.log_charfn, w), m.pick()(1j * w),
                _tol("free_analog", tol))))
    return rows


def _moments(tol, seed) -> list:
    rows = []
    for a in (0.3, 0.5, 0.8):
        sp = subordinator.stable_spec(a)
        for p in (-0.2, 0.5, 1.0, 2.0):
            if p <= -a:
                continue
            for t in (0.5, 1.0, 2.0):
                tag = f"moment_stable[alpha={a},p={p}]"
                rows.append(_guard(tag, t, lambda sp=sp, p=p, t=t, tag=tag: make_row(
                    tag, t, subordinator.negative_moment(sp, (p, t)),
                    subordinator.closed_moment(sp, p, t), _tol("moment", tol), relative=True)))
    lam = subordinator.lambert_spec()
    for p, t in ((0.5, 2.0), (1.0, 2.0), (1.0, 5.0)):
        tag = f"moment_lambert[p={p}]"
        rows.append(_guard(tag, t, lambda p=p, t=t, tag=tag: make_row(
            tag, t, subordinator.negative_moment(lam, (p, t)), t / (t - p) ** (p + 1),
            _tol("moment", tol), relative=True)))
    for a in (0.3, 0.5, 0.8):
        sp = subordinator.stable_spec(a)
        for p in (-0.25, 0.5, 2.0):
            tag = f"regime_stable[alpha={a},p={p}]"

            def regime(sp=sp, p=p, tag=tag):
                v = subordinator.temporal_representation(sp, p)
                worst = max(r for _, r in v.residuals)
                return make_row(f"{tag}:{v.regime}", p, worst, 0.0, _tol("temporal", tol))

            def screen(sp=sp, p=p, tag=tag):
                v = subordinator.temporal_representation(sp, p)
                return make_row(f"{tag}:screen", p, float(v.screen.passed), 1.0, TOL["screen"])

            rows.append(_guard(tag, p, regime))
            rows.append(_guard(tag, p, screen))
    for a in (0.2, 0.35, 0.5, 0.65, 0.8):
        sp = subordinator.stable_spec(a)
        for p in (0.1, 0.3, 0.5, 0.7, 0.9):
            tag = f"tE_bernstein[alpha={a},p={p}]"

            def boundary(sp=sp, a=a, p=p, tag=tag):
                screen, holds = subordinator.item2_bernstein(sp, p)
                predicted = p <= a
                if holds != predicted:
                    return make_row(tag + ":criterion", p, float(holds), float(predicted),
                                    TOL["screen"])
                return make_row(tag, p, float(screen.passed), float(predicted), TOL["screen"])

            rows.append(_guard(tag, p, boundary))
    sp = subordinator.stable_spec(0.5)
    for t in (0.5, 2.0):
        tag = "mellin_stable[alpha=0.5,p=1]"
        rows.append(_guard(tag, t, lambda t=t: make_row(
            tag, t, subordinator.mellin_moment(sp, 1.0, t),
            specfun.gamma_fn(2.0) * subordinator.closed_moment(sp, 1.0, t),
            _tol("moment", tol), relative=True)))
    return rows


def _classifier(tol, seed) -> list:
    cases = [("stable", 0.5, 1.0, "pass"), ("stable", 2 / 3, 4 / 3, "pass"),
             ("stable", 0.5, 3.0, "fail"), ("stable", 2 / 3, 1.5, "fail"),
             ("lambert", None, 1.0, "fail")]
    rows = []
    for name, a, p, expected in cases:
        sp = subordinator.stable_spec(a) if name == "stable" else subordinator.lambert_spec()
        tag = f"classify_{name}" + (f"[alpha={a:.6g}]" if a else "")

        def run(sp=sp, p=p, expected=expected, tag=tag, name=name):
            rep = subordinator.classify_inverse_time(sp, p)
            ok = rep.verdict == expected and rep.screens_agree
            if name == "lambert":
                ok = ok and rep.note.startswith("DivergentMoment")
            return make_row(f"{tag}:{rep.verdict}", p, float(ok), 1.0, TOL["screen"])

        rows.append(_guard(tag, p, run))
    return rows


def _specfun(tol, seed) -> list:
    t = _tol("specfun", tol)
    K = specfun.CATALAN
    rows = [
        _guard("digamma_half", 0.5, lambda: make_row(
            "digamma_half", 0.5, specfun.digamma(0.5),
            -specfun.EULER_GAMMA - 2 * specfun.LOG2, t)),
        _guard("beta_half", 0.5, lambda: make_row(
            "beta_half", 0.5, specfun.beta_fn(0.5), math.pi / 2, t)),
        _guard("catalan_dilog", 1.0, lambda: make_row(
            "catalan_dilog", 1.0,
            ((specfun.polylog(2, 1j) - specfun.polylog(2, -1j)) / 2j).real, K, t)),
        _guard("zeta_2_1", 2.0, lambda: make_row(
            "zeta_2_1", 2.0, specfun.hurwitz_zeta(2, 1), math.pi**2 / 6, t)),
        _guard("beta_one", 1.0, lambda: make_row(
            "beta_one", 1.0, specfun.beta_fn(1.0), specfun.LOG2, t)),
    ]
    rng = np.random.default_rng(seed)
    for x in np.round(rng.uniform(0.2, 6.0, size=4), 12):
        x = float(x)
        rows.append(_guard("digamma_recurrence", x, lambda x=x: make_row(
            "digamma_recurrence", x, specfun.digamma(x + 1), specfun.digamma(x) + 1 / x, t)))
        rows.append(_guard("beta_series_vs_integral", x, lambda x=x: make_row(
            "beta_series_vs_integral", x, specfun.beta_fn(x, "series"),
            specfun.beta_fn(x, "integral"), 1e-9)))
        rows.append(_guard("ei_symmetric_vs_integral", x, lambda x=x: make_row(
            "ei_symmetric_vs_integral", x, specfun.ei_symmetric(x),
            specfun.ei_symmetric_integral(x), 1e-8 * max(1.0, abs(specfun.ei_symmetric(x))))))
    return rows


_BUILDERS = {"hyperbolic": _hyperbolic, "inversion": _inversion, "theta": _theta,
             "moments": _moments, "classifier": _classifier, "specfun": _specfun}


def run_suite(name: str, tol: Optional[float] = None, seed: int = 0,
              workers: int = 1) -> list:
    """Run one suite (or ``'all'``) and return its rows in deterministic order.

    Parameters
    ----------
    tol : float, optional
        Overrides every numeric tolerance of the suite (verdict rows keep 0.5).
    seed : int
        Seeds the randomly drawn spot checks of the ``specfun`` suite.
    workers : int
        Threads used to evaluate rows; output order does not depend on it.
    """
    if tol is not None and not tol > 0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    names = SUITES if name == "all" else (name,)
    builders = []
    for n in names:
        if n not in _BUILDERS:
            raise ValueError(f"unknown suite {n!r}; choose from {SUITES + ('all',)}")
        builders.extend(_BUILDERS[n](tol, seed))
    if workers <= 1:
        return [b() for b in builders]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda b: b(), builders))
