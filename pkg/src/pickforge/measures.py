"""Measures as atoms plus a catalog density, with JSON round-tripping.

A density is identified by a catalog name and a parameter dictionary, so a
measure can be written to JSON and rebuilt exactly.  Modules that own a
family of densities register a builder with :func:`register_density`.
"""
from __future__ import annotations

import importlib
import json
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Optional

from . import numerics
from .errors import DomainError, IntegrabilityError, UnknownFunction
from .numerics import ScalarFunction

_INF = math.inf

_BUILDERS: dict[str, Callable[..., "Density"]] = {}
# modules that register further densities on import
_PROVIDERS = ("pickforge.hyperbolic", "pickforge.levy")


def register_density(name: str):
    def deco(builder):
        _BUILDERS[name] = builder
        return builder
    return deco


def _load_providers():
    for mod in _PROVIDERS:
        importlib.import_module(mod)


@dataclass(frozen=True, eq=False)
class Density:
    """A catalog density ``x -> func(x)`` on ``support``.

    ``breakpoints`` are points where quadrature should split (kinks, peaks,
    integrable singularities).  ``symmetric`` flags an even density on the
    whole line, which lets Fourier transforms use a cosine integral.
    """

    name: str
    params: Mapping
    func: Callable[[float], float]
    support: tuple = (0.0, _INF)
    breakpoints: tuple = ()
    symmetric: bool = False

    def __call__(self, x):
        lo, hi = self.support
        if x < lo or x > hi:
            return 0.0
        return self.func(x)

    def spec(self) -> dict:
        return {"name": self.name, "params": _encode(dict(self.params))}

    def __eq__(self, other):
        return isinstance(other, Density) and self.spec() == other.spec()

    def __hash__(self):
        return hash(json.dumps(self.spec(), sort_keys=True))


def make_density(name: str, params: Optional[Mapping] = None) -> Density:
    """Build a catalog density by name."""
    if name not in _BUILDERS:
        _load_providers()
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownFunction(f"unknown density {name!r}; known: {sorted(_BUILDERS)}") from None
    return builder(**_decode(dict(params or {})))


def density_names() -> list[str]:
    _load_providers()
    return sorted(_BUILDERS)


# ---------------------------------------------------------------------------
# generic catalog entries

@register_density("exp")
def _exp(scale: float = 1.0, rate: float = 1.0) -> Density:
    return Density("exp", {"scale": scale, "rate": rate},
                   lambda x: scale * math.exp(-rate * x), (0.0, _INF))


@register_density("uniform")
def _uniform(lo: float = 0.0, hi: float = 1.0, height: float = 1.0) -> Density:
    return Density("uniform", {"lo": lo, "hi": hi, "height": height},
                   lambda x: height, (lo, hi))


@register_density("power")
def _power(coeff: float, exponent: float, lo: float = 0.0, hi: float = _INF) -> Density:
    """``coeff * x**exponent`` on ``(lo, hi)``."""
    return Density("power", {"coeff": coeff, "exponent": exponent, "lo": lo, "hi": hi},
                   lambda x: coeff * x**exponent, (lo, hi), (1.0,))


@register_density("cauchy_weighted_power")
def _cwp(coeff: float, exponent: float) -> Density:
    """``coeff * x**exponent / (1 + x**2)`` on ``(0, inf)``."""
    return Density("cauchy_weighted_power", {"coeff": coeff, "exponent": exponent},
                   lambda x: coeff * x**exponent / (1.0 + x * x), (0.0, _INF), (1.0,))


@register_density("scaled")
def _scaled(factor: float, base: Mapping) -> Density:
    inner = make_density(base["name"], base.get("params"))
    return Density("scaled", {"factor": factor, "base": inner.spec()},
                   lambda x: factor * inner(x), inner.support, inner.breakpoints,
                   inner.symmetric)


@register_density("sum")
def _sum(terms: list) -> Density:
    parts = [make_density(t["name"], t.get("params")) for t in terms]
    lo = min(p.support[0] for p in parts)
    hi = max(p.support[1] for p in parts)
    bps = set()
    for p in parts:
        bps.update(p.breakpoints)
        bps.update(e for e in p.support if math.isfinite(e))
    return Density("sum", {"terms": [p.spec() for p in parts]},
                   lambda x: sum(p(x) for p in parts), (lo, hi),
                   tuple(sorted(bps)), all(p.symmetric for p in parts))


@register_density("nevanlinna_of_levy")
def _nev_of_levy(base: Mapping) -> Density:
    """``x**2/(1+x**2) * nu(x)`` for a Levy density ``nu``."""
    inner = make_density(base["name"], base.get("params"))
    return Density("nevanlinna_of_levy", {"base": inner.spec()},
                   lambda x: x * x / (1.0 + x * x) * inner(x), inner.support,
                   inner.breakpoints, inner.symmetric)


# ---------------------------------------------------------------------------
# measure model

@dataclass(frozen=True)
class MeasureModel:
    """A Borel measure ``sum_j m_j delta_{x_j} + density(x) dx``.

    Finite measures are the norm; Levy measures (infinite near 0) use the same
    container, in which case :meth:`mass` raises :class:`IntegrabilityError`.
    """

    atoms: tuple = ()
    density: Optional[Density] = None

    def __post_init__(self):
        atoms = tuple((float(x), float(m)) for x, m in self.atoms)
        for x, m in atoms:
            if not m >= 0 or not math.isfinite(x):
                raise DomainError(f"atom ({x}, {m}) must have finite location and mass >= 0")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def zero(cls) -> "MeasureModel":
        return cls()

    @classmethod
    def dirac(cls, x: float, mass: float = 1.0) -> "MeasureModel":
        return cls(((x, mass),))

    @classmethod
    def from_density(cls, name: str, **params) -> "MeasureModel":
        return cls((), make_density(name, params))

    @property
    def support(self) -> tuple:
        los, his = [], []
        if self.density is not None:
            los.append(self.density.support[0])
            his.append(self.density.support[1])
        for x, _ in self.atoms:
            los.append(x)
            his.append(x)
        if not los:
            return (0.0, 0.0)
        return (min(los), max(his))

    @property
    def is_zero(self) -> bool:
        return self.density is None and all(m == 0 for _, m in self.atoms)

    def _density_points(self):
        d = self.density
        lo, hi = d.support
        pts = set(d.breakpoints)
        if lo < 0 < hi:
            pts.add(0.0)
        return lo, hi, tuple(sorted(pts))

    def integrate(self, kernel: Callable[[float], complex], *, epsabs: float = 1e-12,
                  epsrel: float = 1e-11, points=()) -> complex:
        """``int kernel(x) mu(dx)``: atoms exactly, density by quadrature."""
        total = sum(m * kernel(x) for x, m in self.atoms)
        if self.density is not None:
            lo, hi, pts = self._density_points()
            dens = self.density.func
            res = numerics.integrate_interval(lambda x: kernel(x) * dens(x), lo, hi,
                                              pts + tuple(points), epsabs=epsabs,
                                              epsrel=epsrel)
            total = total + res.value
        return total

    def check_integrable(self, kernel: Callable[[float], complex], what: str) -> None:
        """Raise :class:`IntegrabilityError` if ``kernel * density`` has a
        non-integrable power-law singularity at an end of the support (or at 0).

        Extrapolating quadrature can return finite nonsense for such integrals,
        so this probe runs before trusting the value.
        """
        if self.density is None:
            return
        g = lambda x: kernel(x) * self.density.func(x)
        lo, hi, pts = self._density_points()
        ends = [(lo, 1), (hi, -1)] + [(p, s) for p in pts if lo < p < hi for s in (1, -1)]
        for x0, side in ends:
            if not numerics.integrable_at(g, x0, side):
                where = "infinity" if math.isinf(x0) else f"x={x0}"
                raise IntegrabilityError(f"measure does not integrate {what} near {where}")

    def mass(self) -> float:
        self.check_integrable(lambda x: 1.0, "1")
        try:
            return float(self.integrate(lambda x: 1.0, epsabs=1e-13, epsrel=1e-12).real)
        except numerics.NonConvergence as exc:
            raise IntegrabilityError(f"measure has no finite total mass: {exc}") from None

    def fourier(self, s: float) -> complex:
        """``int exp(i s x) mu(dx)``."""
        s = float(s)
        total = sum(m * complex(math.cos(s * x), math.sin(s * x)) for x, m in self.atoms)
        d = self.density
        if d is None:
            return complex(total)
        if s == 0.0:
            return complex(total + self.integrate(lambda x: 1.0) - sum(m for _, m in self.atoms))
        lo, hi = d.support
        if d.symmetric and lo == -_INF and hi == _INF:
            re = 2.0 * numerics.fourier_cosine(d.func, s)
            return complex(total) + re
        _, _, pts = self._density_points()
        edges = [lo, *(p for p in pts if lo < p < hi), hi]
        re = im = 0.0
        for a, b in zip(edges[:-1], edges[1:]):
            re += numerics.oscillatory_integral(d.func, a, b, s, "cos")
            im += numerics.oscillatory_integral(d.func, a, b, s, "sin")
        return complex(total) + complex(re, im)

    def weighted(self, weight: Callable[[float], float], name: str) -> "WeightedMeasure":
        return WeightedMeasure(self, weight, name)

    def __add__(self, other: "MeasureModel") -> "MeasureModel":
        if not isinstance(other, MeasureModel):
            return NotImplemented
        atoms = _merge_atoms(self.atoms + other.atoms)
        if self.density is None:
            dens = other.density
        elif other.density is None:
            dens = self.density
        else:
            dens = make_density("sum", {"terms": [self.density.spec(), other.density.spec()]})
        return MeasureModel(atoms, dens)

    def scaled(self, factor: float) -> "MeasureModel":
        if factor < 0:
            raise DomainError("measures scale by nonnegative factors only")
        atoms = tuple((x, factor * m) for x, m in self.atoms)
        dens = None
        if self.density is not None:
            dens = make_density("scaled", {"factor": factor, "base": self.density.spec()})
        return MeasureModel(atoms, dens)

    # serialization
    def to_dict(self) -> dict:
        return {"atoms": [[x, m] for x, m in self.atoms],
                "density": None if self.density is None else self.density.spec(),
                "support": _encode(list(self.support))}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "MeasureModel":
        extra = set(doc) - {"atoms", "density", "support"}
        if extra:
            raise ValueError(f"unknown measure keys {sorted(extra)}")
        dens = doc.get("density")
        density = None if dens is None else make_density(dens["name"], dens.get("params"))
        return cls(tuple(tuple(a) for a in doc.get("atoms", [])), density)


@dataclass(frozen=True)
class WeightedMeasure:
    """``weight(x) * base(dx)``; used for quantities like ``(1+x^2) rho``."""

    base: MeasureModel
    weight: Callable[[float], float]
    name: str

    def integrate(self, kernel, **kw):
        return self.base.integrate(lambda x: kernel(x) * self.weight(x), **kw)

    def mass(self) -> float:
        return float(self.integrate(lambda x: 1.0).real)


def _merge_atoms(atoms):
    merged: dict[float, float] = {}
    for x, m in atoms:
        merged[x] = merged.get(x, 0.0) + m
    return tuple(sorted(merged.items()))


def _encode(obj):
    if isinstance(obj, float):
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def _decode(obj):
    if obj == "inf":
        return _INF
    if obj == "-inf":
        return -_INF
    if isinstance(obj, dict):
        return {k: _decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_decode(v) for v in obj]
    return obj
