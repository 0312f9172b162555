"""Brute-force quadrature of the defining momentum integrals.

Everything here integrates the original propagator products numerically, so
the closed forms elsewhere in the package can be checked against it.  The only
closed form used is the D = 1 inner integral (or D = 2, 3 for the m = 1
oracle), each of which is itself confirmed by ``quad_jd``.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .errors import DomainError, QuadratureError
from .feynman import MassPair, _masses, inner_j1, inner_j2, inner_j3
from .hyper_core import EPS, SeriesResult


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    max_subdivisions: int = 2000
    radial_cutoff_strategy: str = "variable-transform"

    def __post_init__(self):
        if self.radial_cutoff_strategy not in ("variable-transform", "explicit-cutoff"):
            raise DomainError(f"unknown cutoff strategy {self.radial_cutoff_strategy!r}")
        if self.abs_tol < 0 or self.rel_tol < 0 or self.max_subdivisions < 1:
            raise DomainError("tolerances must be non-negative and subdivisions positive")


DEFAULT_SPEC = QuadratureSpec()

# explicit-cutoff radius in units of the problem scale
_CUTOFF = 1e4


class _Tracker:
    """Collects the worst relative error reported by inner integrations."""

    def __init__(self):
        self.worst = 0.0

    def note(self, val, err):
        if val != 0:
            self.worst = max(self.worst, abs(err / val))
        elif err > 0:
            self.worst = math.inf


def _quad(f, a, b, spec, points=None, inner=False, **kw):
    epsabs = 0.0 if inner else spec.abs_tol
    epsrel = min(spec.rel_tol, 1e-10) if inner else spec.rel_tol
    if points is not None:
        points = [x for x in points if a < x < b] or None
    with np.errstate(all="ignore"), warnings.catch_warnings():
        # inner failures surface through the reported error, which is tracked
        warnings.simplefilter("ignore" if inner else "error", integrate.IntegrationWarning)
        try:
            return integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel,
                                  limit=spec.max_subdivisions, points=points, **kw)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"adaptive quadrature failed: {exc}") from None


def _radial(f: Callable[[float], float], scale: float, spec: QuadratureSpec,
            breaks: Sequence[float] = ()):
    """Integrate f over [0, inf) using the chosen infinite-range strategy."""
    if spec.radial_cutoff_strategy == "variable-transform":
        # r = scale t/(1-t), dr = scale dt/(1-t)^2
        def g(t):
            if t >= 1.0:
                return 0.0
            s = 1.0 - t
            return f(scale * t / s) * scale / (s * s)

        tb = [b / (b + scale) for b in breaks]
        return _quad(g, 0.0, 1.0, spec, points=tb or None)
    R = _CUTOFF * scale
    val, err = _quad(f, 0.0, R, spec, points=list(breaks) or None)
    # power-law tail bound from the last decade
    f1, f2 = abs(f(R / 10)), abs(f(R))
    if f2 > 0 and f1 > 0:
        slope = math.log(f2 / f1) / math.log(10)
        tail = f2 * R / (-slope - 1) if slope < -1 else math.inf
    else:
        tail = 0.0
    return val, err + tail


def _finish(val, err, tracker, spec, route):
    err = err + tracker.worst * abs(val) + 8 * EPS * abs(val)
    bound = max(spec.abs_tol, spec.rel_tol * abs(val))
    if not math.isfinite(err) or err > 10 * bound:
        raise QuadratureError(f"{route}: error estimate {err:.3g} exceeds tolerance {bound:.3g}")
    return SeriesResult(complex(val), err, 0, True, route)


def quad_jd(D: int, p: float, masses, spec: QuadratureSpec = DEFAULT_SPEC) -> SeriesResult:
    """J_D(p; k1, k2) = int d^D x/(2 pi)^D 1/((x^2 + k1^2)((x+p)^2 + k2^2)), D in {1, 2, 3}."""
    k1, k2 = _masses(masses)
    if D not in (1, 2, 3):
        raise DomainError("quad_jd supports D = 1, 2, 3")
    if D < 3 and k1 * k2 == 0:
        raise DomainError("D = 1, 2 need both masses positive")
    if D == 3 and k1 + k2 == 0:
        raise DomainError("D = 3 needs k1 + k2 > 0")
    a1, a2 = k1 * k1, k2 * k2
    tr = _Tracker()

    if D == 1:
        scale = max(k1, k2, p)

        def f(u):
            x = scale * math.tan(u)
            jac = scale / math.cos(u) ** 2
            return jac / ((x * x + a1) * ((x + p) ** 2 + a2))

        mid = math.atan(-p / scale)
        val, err = _quad(f, -math.pi / 2, math.pi / 2, spec, points=[mid])
        return _finish(val / (2 * math.pi), err / (2 * math.pi), tr, spec, "quad_1d")

    scale = max(k1, k2, p)
    if D == 2:
        def shell(r):
            def g(phi):
                return 1.0 / ((r * r + 2 * r * p * math.cos(phi) + p * p + a2))
            v, e = _quad(g, 0.0, math.pi, spec, inner=True)
            tr.note(v, e)
            return 2 * v * r / (r * r + a1)

        val, err = _radial(shell, scale, spec, breaks=[p] if p > 0 else ())
        norm = (2 * math.pi) ** 2
        return _finish(val / norm, err / norm, tr, spec, "quad_2d")

    def shell3(r):
        def g(c):
            return 1.0 / (r * r + 2 * r * p * c + p * p + a2)
        v, e = _quad(g, -1.0, 1.0, spec, inner=True)
        tr.note(v, e)
        return 2 * math.pi * v * r * r / (r * r + a1)

    val, err = _radial(shell3, scale, spec, breaks=[p] if p > 0 else ())
    norm = (2 * math.pi) ** 3
    return _finish(val / norm, err / norm, tr, spec, "quad_3d")


def sphere_factor(m: int) -> float:
    """Area of the unit (m-2)-sphere times the azimuthal normalisation: 2 pi^((m-1)/2)/Gamma((m-1)/2)/(2 pi)^m."""
    return 2 * math.pi ** ((m - 1) / 2) / math.gamma((m - 1) / 2) / (2 * math.pi) ** m


def quad_i1m(m: int, p: float, q: float, spec: QuadratureSpec = DEFAULT_SPEC) -> SeriesResult:
    """I_{1,m}(p, q) by integrating the exact D = 1 inner integral over y in R^m, m in {3, 4, 5}.

    With c = cos(theta) between y and q the masses are |y -+ q/2|^2; the
    c-integral carries the weight (1 - c^2)^((m-3)/2).  Swapping c -> -c swaps
    the masses, under which J_1 is symmetric, so only c in [0, 1] is needed.
    """
    if m not in (3, 4, 5):
        raise DomainError("quad_i1m supports m = 3, 4, 5")
    if p <= 0 or q <= 0:
        raise DomainError("quad_i1m needs p > 0 and q > 0")
    beta = (m - 3) / 2
    h = q / 2
    tr = _Tracker()

    def shell(y):
        if y == 0:
            return 0.0
        gap = (y - h) ** 2
        yq = y * q

        # c = 1 - s^2 turns the peak at c = 1 into a Lorentzian of width sqrt(gap/yq)
        # and the weight (1 - c^2)^beta into the smooth (s^2 (2 - s^2))^beta
        def g(s):
            s2 = s * s
            k1 = gap + yq * s2
            k2 = gap + yq * (2 - s2)
            return inner_j1(p, (k1, k2)) * (s2 * (2 - s2)) ** beta * 2 * s

        width = math.sqrt(gap / yq)
        pts = [w for w in (width, 10 * width) if w < 1] or None
        v, e = _quad(g, 0.0, 1.0, spec, points=pts, inner=True)
        tr.note(v, e)
        return 2 * v * y ** (m - 1)

    scale = max(h, math.sqrt(p))
    val, err = _radial(shell, scale, spec, breaks=[h])
    S = sphere_factor(m)
    return _finish(S * val, S * err, tr, spec, f"quad_i1{m}")


def quad_idm_m1(D: int, p: float, q: float, spec: QuadratureSpec = DEFAULT_SPEC) -> SeriesResult:
    """I_{D,1}(p, q) = int dy/(2 pi) J_D(p; (y - q/2)^2, (y + q/2)^2), D in {2, 3}."""
    if D not in (2, 3):
        raise DomainError("quad_idm_m1 supports D = 2, 3")
    if p <= 0 or q < 0:
        raise DomainError("quad_idm_m1 needs p > 0 and q >= 0")
    inner = inner_j2 if D == 2 else inner_j3
    h = q / 2
    tr = _Tracker()

    def f(y):
        k1, k2 = (y - h) ** 2, (y + h) ** 2
        if k1 == 0 or k2 == 0:
            if D == 2:
                return 0.0  # integrable log point, never hit by Gauss-Kronrod nodes
        return inner(p, MassPair(k1, k2))

    # y -> -y swaps the masses, under which J_D is symmetric
    scale = max(h, math.sqrt(p))
    val, err = _radial(f, scale, spec, breaks=[h] if h > 0 else ())
    return _finish(val / math.pi, err / math.pi, tr, spec, f"quad_i{D}1")
